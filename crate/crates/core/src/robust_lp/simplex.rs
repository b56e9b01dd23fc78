//! Self-contained dense two-phase simplex with Bland's rule.
//!
//! One implementation, two scalar types: `f64` with a pivot tolerance for
//! the randomized property suites, and `BigRational` for exact fixtures.
//! Models here are tiny (hundreds of rows/columns), so a dense tableau is
//! the simplest thing that is obviously correct.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arithmetic needed by the tableau.
pub trait LpScalar: Clone + PartialOrd + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn neg(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    /// Slack used in sign decisions; exact types return zero.
    fn pivot_tol() -> Self;

    fn is_pos(&self) -> bool {
        *self > Self::pivot_tol()
    }
    fn is_neg(&self) -> bool {
        *self < Self::pivot_tol().neg()
    }
    fn is_zeroish(&self) -> bool {
        !self.is_pos() && !self.is_neg()
    }
}

impl LpScalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn pivot_tol() -> Self {
        1e-9
    }
}

impl LpScalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).expect("rational fits in f64")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn pivot_tol() -> Self {
        Zero::zero()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<T>,
    pub rel: Relation,
    pub rhs: T,
}

/// `maximize objective · x` subject to the constraints and `x >= 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub objective: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

impl<T: LpScalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![T::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn set_objective(&mut self, var: usize, coeff: T) {
        self.objective[var] = coeff;
    }

    pub fn add_constraint(&mut self, coeffs: Vec<T>, rel: Relation, rhs: T) {
        debug_assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }
}

#[derive(Clone, Debug)]
pub struct LpSolution<T> {
    pub objective: T,
    pub x: Vec<T>,
    pub pivots: usize,
}

struct Tableau<T> {
    rows: Vec<Vec<T>>, // m x (total_cols + 1), last entry is rhs
    reduced: Vec<T>,   // total_cols reduced costs (maximization)
    basis: Vec<usize>,
    total_cols: usize,
    num_structural: usize,
    artificial_start: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn rhs(&self, row: usize) -> &T {
        &self.rows[row][self.total_cols]
    }

    fn pivot(&mut self, p_row: usize, p_col: usize) {
        let pivot_val = self.rows[p_row][p_col].clone();
        for v in self.rows[p_row].iter_mut() {
            *v = v.div(&pivot_val);
        }
        let pivot_row = self.rows[p_row].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == p_row {
                continue;
            }
            let factor = row[p_col].clone();
            if factor.is_zeroish() {
                continue;
            }
            for (v, pv) in row.iter_mut().zip(pivot_row.iter()) {
                *v = v.sub(&factor.mul(pv));
            }
        }
        let factor = self.reduced[p_col].clone();
        if !factor.is_zeroish() {
            for (v, pv) in self.reduced.iter_mut().zip(pivot_row.iter()) {
                *v = v.sub(&factor.mul(pv));
            }
        }
        self.basis[p_row] = p_col;
    }

    /// Runs Bland-rule pivots until no reduced cost is positive.
    fn optimize(&mut self, allow: impl Fn(usize) -> bool) -> Result<usize> {
        let mut pivots = 0usize;
        let max_pivots = 200_000usize;
        loop {
            let entering = (0..self.total_cols)
                .find(|&j| allow(j) && self.reduced[j].is_pos());
            let Some(q) = entering else {
                return Ok(pivots);
            };
            // ratio test, ties broken toward the smallest basis column
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][q];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rhs(i).div(a);
                match &best {
                    None => best = Some((i, ratio)),
                    Some((bi, br)) => {
                        if ratio < *br
                            || (!(ratio.clone().sub(br)).is_pos()
                                && !(br.clone().sub(&ratio)).is_pos()
                                && self.basis[i] < self.basis[*bi])
                        {
                            best = Some((i, ratio));
                        }
                    }
                }
            }
            let Some((p, _)) = best else {
                return Err(Error::Unbounded(format!("column {q} has no blocking row")));
            };
            self.pivot(p, q);
            pivots += 1;
            if pivots > max_pivots {
                return Err(Error::Contract(
                    "simplex exceeded its pivot budget".into(),
                ));
            }
        }
    }
}

/// Solves the program, returning the optimum and a maximizer.
pub fn solve<T: LpScalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    let n = lp.num_vars;
    let m = lp.constraints.len();

    // Column layout: structural | slack/surplus | artificial.
    let mut num_slack = 0usize;
    for c in &lp.constraints {
        if c.rel != Relation::Eq {
            num_slack += 1;
        }
    }

    // Normalize rows to non-negative rhs, then count artificials.
    struct Row<T> {
        coeffs: Vec<T>,
        rel: Relation,
        rhs: T,
    }
    let rows_in: Vec<Row<T>> = lp
        .constraints
        .iter()
        .map(|c| {
            if c.rhs.is_neg() {
                Row {
                    coeffs: c.coeffs.iter().map(|v| v.neg()).collect(),
                    rel: match c.rel {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    },
                    rhs: c.rhs.neg(),
                }
            } else {
                Row {
                    coeffs: c.coeffs.clone(),
                    rel: c.rel,
                    rhs: c.rhs.clone(),
                }
            }
        })
        .collect();

    let num_artificial = rows_in
        .iter()
        .filter(|r| r.rel != Relation::Le)
        .count();
    let artificial_start = n + num_slack;
    let total_cols = n + num_slack + num_artificial;

    let mut rows: Vec<Vec<T>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    let mut slack_idx = n;
    let mut art_idx = artificial_start;
    for (i, r) in rows_in.iter().enumerate() {
        let mut row = vec![T::zero(); total_cols + 1];
        row[..n].clone_from_slice(&r.coeffs);
        row[total_cols] = r.rhs.clone();
        match r.rel {
            Relation::Le => {
                row[slack_idx] = T::one();
                basis[i] = slack_idx;
                slack_idx += 1;
            }
            Relation::Ge => {
                row[slack_idx] = T::one().neg();
                slack_idx += 1;
                row[art_idx] = T::one();
                basis[i] = art_idx;
                art_idx += 1;
            }
            Relation::Eq => {
                row[art_idx] = T::one();
                basis[i] = art_idx;
                art_idx += 1;
            }
        }
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        reduced: vec![T::zero(); total_cols],
        basis,
        total_cols,
        num_structural: n,
        artificial_start,
    };
    let mut pivots = 0usize;

    // Phase 1: maximize -sum(artificials); feasible iff the optimum is 0.
    if num_artificial > 0 {
        for j in artificial_start..total_cols {
            tab.reduced[j] = T::one().neg();
        }
        // Price out the artificial basic columns.
        for i in 0..m {
            if tab.basis[i] >= artificial_start {
                let row = tab.rows[i].clone();
                for (v, rv) in tab.reduced.iter_mut().zip(row.iter()) {
                    *v = v.add(rv);
                }
            }
        }
        pivots += tab.optimize(|_| true)?;
        let infeas: T = (0..m)
            .filter(|&i| tab.basis[i] >= artificial_start)
            .fold(T::zero(), |acc, i| acc.add(tab.rhs(i)));
        if infeas.is_pos() {
            return Err(Error::Infeasible(format!(
                "phase 1 residual {:?}",
                infeas
            )));
        }
        // Pivot lingering zero-valued artificials out of the basis.
        for i in 0..m {
            if tab.basis[i] >= artificial_start {
                let col = (0..artificial_start).find(|&j| !tab.rows[i][j].is_zeroish());
                if let Some(j) = col {
                    tab.pivot(i, j);
                    pivots += 1;
                }
                // An all-zero row is redundant; the artificial stays basic
                // at value zero and can never re-enter the objective.
            }
        }
    }

    // Phase 2: restore the real objective and price out the current basis.
    tab.reduced = vec![T::zero(); total_cols];
    tab.reduced[..n].clone_from_slice(&lp.objective);
    for i in 0..m {
        let b = tab.basis[i];
        if b < n && !lp.objective[b].is_zeroish() {
            let factor = lp.objective[b].clone();
            let row = tab.rows[i].clone();
            for (v, rv) in tab.reduced.iter_mut().zip(row.iter()) {
                *v = v.sub(&factor.mul(rv));
            }
        }
    }
    let art_start = tab.artificial_start;
    pivots += tab.optimize(|j| j < art_start)?;

    let mut x = vec![T::zero(); n];
    for i in 0..m {
        if tab.basis[i] < tab.num_structural {
            x[tab.basis[i]] = tab.rhs(i).clone();
        }
    }
    let objective = lp
        .objective
        .iter()
        .zip(x.iter())
        .fold(T::zero(), |acc, (c, v)| acc.add(&c.mul(v)));
    Ok(LpSolution {
        objective,
        x,
        pivots,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::ratio;

    fn le(coeffs: Vec<f64>, rhs: f64) -> Constraint<f64> {
        Constraint {
            coeffs,
            rel: Relation::Le,
            rhs,
        }
    }

    #[test]
    fn box_maximum() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.constraints.push(le(vec![1.0, 0.0], 2.0));
        lp.constraints.push(le(vec![0.0, 1.0], 3.0));
        let sol = solve(&lp).unwrap();
        assert!((sol.objective - 5.0).abs() < 1e-9);
        assert!((sol.x[0] - 2.0).abs() < 1e-9);
    }

    #[test]
    fn phase_one_with_lower_bounds() {
        // maximize -x subject to x >= 1, x <= 3: optimum -1 at x = 1.
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![-1.0];
        lp.add_constraint(vec![1.0], Relation::Ge, 1.0);
        lp.add_constraint(vec![1.0], Relation::Le, 3.0);
        let sol = solve(&lp).unwrap();
        assert!((sol.objective + 1.0).abs() < 1e-9);
    }

    #[test]
    fn equality_constraint() {
        // maximize x + 2y subject to x + y = 1: optimum 2 at y = 1.
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 2.0];
        lp.add_constraint(vec![1.0, 1.0], Relation::Eq, 1.0);
        let sol = solve(&lp).unwrap();
        assert!((sol.objective - 2.0).abs() < 1e-9);
        assert!((sol.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn detects_infeasible() {
        let mut lp = LinearProgram::new(1);
        lp.objective = vec![1.0];
        lp.add_constraint(vec![1.0], Relation::Le, 1.0);
        lp.add_constraint(vec![1.0], Relation::Ge, 2.0);
        assert!(matches!(solve(&lp), Err(Error::Infeasible(_))));
    }

    #[test]
    fn detects_unbounded() {
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 0.0];
        lp.add_constraint(vec![0.0, 1.0], Relation::Le, 1.0);
        assert!(matches!(solve(&lp), Err(Error::Unbounded(_))));
    }

    #[test]
    fn negative_rhs_is_normalized() {
        // x - y <= -1 with x, y <= 5: max x + y = 9 at (4, 5).
        let mut lp = LinearProgram::new(2);
        lp.objective = vec![1.0, 1.0];
        lp.add_constraint(vec![1.0, -1.0], Relation::Le, -1.0);
        lp.add_constraint(vec![1.0, 0.0], Relation::Le, 5.0);
        lp.add_constraint(vec![0.0, 1.0], Relation::Le, 5.0);
        let sol = solve(&lp).unwrap();
        assert!((sol.objective - 9.0).abs() < 1e-9);
    }

    #[test]
    fn exact_rational_agrees_with_float() {
        // Seeded random integer programs, both scalar types.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.random_range(1..4usize);
            let m = rng.random_range(1..5usize);
            let mut lpf = LinearProgram::new(n);
            let mut lpr = LinearProgram::<BigRational>::new(n);
            for j in 0..n {
                let c = rng.random_range(-3..4i64);
                lpf.objective[j] = c as f64;
                lpr.objective[j] = ratio(c, 1);
            }
            for _ in 0..m {
                let coeffs: Vec<i64> = (0..n).map(|_| rng.random_range(-2..4i64)).collect();
                let rhs = rng.random_range(0..6i64);
                lpf.add_constraint(
                    coeffs.iter().map(|&c| c as f64).collect(),
                    Relation::Le,
                    rhs as f64,
                );
                lpr.add_constraint(
                    coeffs.iter().map(|&c| ratio(c, 1)).collect(),
                    Relation::Le,
                    ratio(rhs, 1),
                );
            }
            // Keep it bounded.
            lpf.add_constraint(vec![1.0; n], Relation::Le, 10.0);
            lpr.add_constraint(vec![ratio(1, 1); n], Relation::Le, ratio(10, 1));
            let f = solve(&lpf).unwrap();
            let r = solve(&lpr).unwrap();
            assert!(
                (f.objective - r.objective.to_f64()).abs() < 1e-6,
                "float {} vs exact {}",
                f.objective,
                r.objective.to_f64()
            );
        }
    }
}
