//! Set-function oracles: explicit tables, coverage functions, multilinear
//! lifts, and exhaustive monotonicity/submodularity validators.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::set::{submasks, ElementSet};

/// Tolerance for float-mode equality and inequality slack.
pub const VALUE_TOL: f64 = 1e-9;

/// Explicit tables are capped at this many elements (2^24 entries).
pub const TABLE_MAX_N: usize = 24;

/// Exhaustive validators are capped at this many elements.
pub const VALIDATOR_MAX_N: usize = 20;

/// A non-negative set function over a ground set of `n` indexed elements,
/// accessed through a value oracle.
///
/// Implementations must be deterministic and safe to share across threads;
/// nothing here mutates after construction.
pub trait SetFunction: Sync {
    /// Number of ground-set elements.
    fn n(&self) -> usize;

    /// Value oracle: returns `f(s)`.
    ///
    /// Panics if `s` contains an index `>= n`; loaders validate untrusted
    /// input before it gets here.
    fn eval(&self, s: ElementSet) -> f64;

    /// Marginal gain `f(x | s) = f(s + x) - f(s)`; zero when `x` is in `s`.
    fn marginal(&self, x: usize, s: ElementSet) -> f64 {
        if s.contains(x) {
            0.0
        } else {
            self.eval(s.insert(x)) - self.eval(s)
        }
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn eval(&self, s: ElementSet) -> f64 {
        (**self).eval(s)
    }
}

fn check_index_range(s: ElementSet, n: usize, what: &str) {
    assert!(
        s.is_subset_of(ElementSet::full(n)),
        "{what}: set {s} has elements outside ground set of size {n}"
    );
}

/// A set function given by one stored value per subset.
#[derive(Clone, Debug)]
pub struct TableFunction {
    n: usize,
    values: Vec<f64>,
}

impl TableFunction {
    /// `values[mask]` is the value of the subset with that bitmask; the
    /// vector must cover all `2^n` subsets with non-negative entries.
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        if n > TABLE_MAX_N {
            return Err(Error::Capacity(format!(
                "table functions are capped at n <= {TABLE_MAX_N}, got {n}"
            )));
        }
        if values.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "table for n={n} needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        if let Some(mask) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidInput(format!(
                "table value for mask {mask} is negative or non-finite"
            )));
        }
        Ok(TableFunction { n, values })
    }

    /// Tabulates any oracle into an explicit table.
    pub fn tabulate<F: SetFunction + ?Sized>(f: &F) -> Result<Self> {
        let n = f.n();
        if n > TABLE_MAX_N {
            return Err(Error::Capacity(format!(
                "cannot tabulate a function on {n} > {TABLE_MAX_N} elements"
            )));
        }
        let values = (0..1usize << n)
            .map(|mask| f.eval(ElementSet(mask as u128)))
            .collect();
        TableFunction::new(n, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

impl SetFunction for TableFunction {
    fn n(&self) -> usize {
        self.n
    }

    fn eval(&self, s: ElementSet) -> f64 {
        check_index_range(s, self.n, "table eval");
        self.values[s.0 as usize]
    }
}

/// Exact-rational counterpart of [`TableFunction`], used by the LP
/// cross-checks where values like 4/3 must not be rounded.
#[derive(Clone, Debug)]
pub struct RationalTable {
    n: usize,
    values: Vec<BigRational>,
}

impl RationalTable {
    pub fn new(n: usize, values: Vec<BigRational>) -> Result<Self> {
        if values.len() != 1usize << n {
            return Err(Error::InvalidInput(format!(
                "rational table for n={n} needs {} values, got {}",
                1usize << n,
                values.len()
            )));
        }
        Ok(RationalTable { n, values })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn value(&self, s: ElementSet) -> &BigRational {
        check_index_range(s, self.n, "rational table eval");
        &self.values[s.0 as usize]
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Float view of the same table.
    pub fn to_table(&self) -> TableFunction {
        TableFunction {
            n: self.n,
            values: self.values.iter().map(|v| v.to_f64().unwrap()).collect(),
        }
    }
}

/// Converts a float to the exact rational it represents.
pub fn rational_from_f64(v: f64) -> BigRational {
    BigRational::from_float(v).expect("finite float")
}

pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// A coverage instance: each domain element is a subset of a universe
/// `{0..universe_size-1}` and `f(S)` is the size of the union.
#[derive(Clone, Debug)]
pub struct CoverageInstance {
    universe_size: usize,
    sets: Vec<ElementSet>,
}

impl CoverageInstance {
    pub fn new(universe_size: usize, sets: Vec<ElementSet>) -> Result<Self> {
        if universe_size > crate::set::MAX_GROUND {
            return Err(Error::Capacity(format!(
                "coverage universe capped at {}, got {universe_size}",
                crate::set::MAX_GROUND
            )));
        }
        let universe = ElementSet::full(universe_size);
        for (i, s) in sets.iter().enumerate() {
            if !s.is_subset_of(universe) {
                return Err(Error::InvalidInput(format!(
                    "coverage set {i} = {s} is not a subset of the universe"
                )));
            }
        }
        Ok(CoverageInstance {
            universe_size,
            sets,
        })
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    /// Union of the universe subsets selected by `s`.
    pub fn cover(&self, s: ElementSet) -> ElementSet {
        let mut acc = ElementSet::EMPTY;
        for i in s.iter() {
            acc = acc.union(self.sets[i]);
        }
        acc
    }
}

impl SetFunction for CoverageInstance {
    fn n(&self) -> usize {
        self.sets.len()
    }

    fn eval(&self, s: ElementSet) -> f64 {
        check_index_range(s, self.sets.len(), "coverage eval");
        self.cover(s).len() as f64
    }
}

/// Multilinear extension of a table function, evaluated exactly.
///
/// `y` holds one inclusion probability per base element; the result is the
/// expectation of `base` under independent sampling, computed by full
/// enumeration of the `2^n` subsets.
pub fn multilinear_eval(base: &TableFunction, y: &[f64]) -> Result<f64> {
    let n = base.n();
    if y.len() != n {
        return Err(Error::Domain(format!(
            "multilinear point has dimension {}, function has {n}",
            y.len()
        )));
    }
    for (i, &p) in y.iter().enumerate() {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Domain(format!(
                "coordinate {i} = {p} outside [0,1]"
            )));
        }
    }
    let mut total = 0.0;
    for mask in 0..1u64 << n {
        let mut w = 1.0;
        for (i, &p) in y.iter().enumerate() {
            w *= if mask >> i & 1 == 1 { p } else { 1.0 - p };
            if w == 0.0 {
                break;
            }
        }
        if w != 0.0 {
            total += w * base.values()[mask as usize];
        }
    }
    Ok(total)
}

/// A function obtained by splitting each of `m` base elements into `k`
/// copies and adding one indivisible element.
///
/// The lifted ground set has `m*k + 1` elements: group `i` occupies indices
/// `i*k .. (i+1)*k` and the indivisible element sits at index `m*k`. The
/// value of a lifted set is the multilinear extension of the base table at
/// the fractional occupancy of each group.
#[derive(Clone, Debug)]
pub struct LiftedFunction {
    base: TableFunction,
    m: usize,
    k: usize,
}

impl LiftedFunction {
    /// `base` must be a table on `m + 1` elements; its last element is the
    /// one kept indivisible by the lift.
    pub fn new(base: TableFunction, k: usize) -> Result<Self> {
        if base.n() < 2 {
            return Err(Error::Domain(
                "lift needs a base with at least one group element".into(),
            ));
        }
        if k == 0 {
            return Err(Error::Domain("lift granularity k must be >= 1".into()));
        }
        let m = base.n() - 1;
        if m * k + 1 > crate::set::MAX_GROUND {
            return Err(Error::Capacity(format!(
                "lifted ground set {} exceeds {}",
                m * k + 1,
                crate::set::MAX_GROUND
            )));
        }
        Ok(LiftedFunction { base, m, k })
    }

    pub fn base(&self) -> &TableFunction {
        &self.base
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Indices of group `i`.
    pub fn group(&self, i: usize) -> ElementSet {
        debug_assert!(i < self.m);
        ElementSet::from_indices(i * self.k..(i + 1) * self.k)
    }

    /// Index of the indivisible element.
    pub fn special_index(&self) -> usize {
        self.m * self.k
    }

    /// Fractional occupancy vector of `s`, the point where the base's
    /// multilinear extension is evaluated.
    pub fn occupancy(&self, s: ElementSet) -> Vec<f64> {
        let mut y = Vec::with_capacity(self.m + 1);
        for i in 0..self.m {
            y.push(s.intersection(self.group(i)).len() as f64 / self.k as f64);
        }
        y.push(if s.contains(self.special_index()) {
            1.0
        } else {
            0.0
        });
        y
    }
}

impl SetFunction for LiftedFunction {
    fn n(&self) -> usize {
        self.m * self.k + 1
    }

    fn eval(&self, s: ElementSet) -> f64 {
        check_index_range(s, self.n(), "lifted eval");
        multilinear_eval(&self.base, &self.occupancy(s)).expect("occupancy is a valid point")
    }
}

/// Outcome of the exhaustive monotone/submodular check.
#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub monotone: bool,
    pub submodular: bool,
    /// `(x, t)` with `f(x | t) < 0`.
    pub monotone_witness: Option<(usize, ElementSet)>,
    /// `(s, t, x)` with `s ⊆ t`, `x ∉ t`, and `f(x | s) < f(x | t)`.
    pub submodular_witness: Option<(ElementSet, ElementSet, usize)>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.monotone && self.submodular
    }
}

/// Exhaustively verifies monotonicity and submodularity on all subsets.
///
/// Monotonicity checks `f(x | t) >= 0` for every `t` and `x ∉ t`;
/// submodularity checks the exchange form `f(x | s) >= f(x | s + y)`, which
/// is equivalent to the pairwise definition. Violations beyond [`VALUE_TOL`]
/// are reported with a witness.
pub fn validate_monotone_submodular<F: SetFunction + ?Sized>(f: &F) -> Result<ValidationReport> {
    let n = f.n();
    if n > VALIDATOR_MAX_N {
        return Err(Error::Capacity(format!(
            "exhaustive validation capped at n <= {VALIDATOR_MAX_N}, got {n}"
        )));
    }
    let table = TableFunction::tabulate(f)?;
    let vals = table.values();
    let mut report = ValidationReport {
        monotone: true,
        submodular: true,
        monotone_witness: None,
        submodular_witness: None,
    };
    'mono: for mask in 0..1usize << n {
        let t = ElementSet(mask as u128);
        for x in 0..n {
            if t.contains(x) {
                continue;
            }
            if vals[mask | 1 << x] - vals[mask] < -VALUE_TOL {
                report.monotone = false;
                report.monotone_witness = Some((x, t));
                break 'mono;
            }
        }
    }
    'sub: for mask in 0..1usize << n {
        let s = ElementSet(mask as u128);
        for x in 0..n {
            if s.contains(x) {
                continue;
            }
            let gain_s = vals[mask | 1 << x] - vals[mask];
            for y in 0..n {
                if y == x || s.contains(y) {
                    continue;
                }
                let bigger = mask | 1 << y;
                let gain_t = vals[bigger | 1 << x] - vals[bigger];
                if gain_s < gain_t - VALUE_TOL {
                    report.submodular = false;
                    report.submodular_witness = Some((s, s.insert(y), x));
                    break 'sub;
                }
            }
        }
    }
    Ok(report)
}
