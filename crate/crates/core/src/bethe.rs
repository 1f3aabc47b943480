//! Initial data, T-polynomials and exact verification of the Bethe systems.
//!
//! A candidate critical point is a projective tuple of monic polynomials;
//! the criticality test is a divisibility check, never a root extraction:
//! the tuple passes iff each `A_i(x) y_i(x+h) + C_i(x) y_i(x-h)` is exactly
//! divisible by `y_i(x)` and the tuple is generic. For the B and C root
//! systems the tuple is folded into a type-A tuple of twice the length and
//! the same test is applied to the lift.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactalg::{all_rational_roots, rational_roots, Poly, Rational};
use crate::repcount::RootSystem;
use crate::selfdual;
use crate::wronskian::FrameSeq;

/// Root-system tag of the initial data.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum RootKind {
    A,
    B,
    C,
}

impl fmt::Display for RootKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootKind::A => write!(f, "A"),
            RootKind::B => write!(f, "B"),
            RootKind::C => write!(f, "C"),
        }
    }
}

/// Ramification points, Dynkin-label weights, relative shifts and the step.
///
/// `lambda[s][i]` is the label of the weight at `z[s]` against the `i`-th
/// simple coroot; `b[s][i]` is the relative shift (dimensionless: it enters
/// the T-polynomials multiplied by `h`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InitialData {
    pub kind: RootKind,
    pub rank: usize,
    pub h: Rational,
    pub z: Vec<Rational>,
    pub lambda: Vec<Vec<u32>>,
    pub b: Vec<Vec<Rational>>,
}

#[derive(Deserialize)]
struct InitialDataRaw {
    kind: RootKind,
    #[serde(default)]
    rank: Option<usize>,
    h: Rational,
    #[serde(default)]
    z: Vec<Rational>,
    #[serde(default)]
    lambda: Vec<Vec<u32>>,
    #[serde(default)]
    b: Vec<Vec<Rational>>,
}

impl<'de> Deserialize<'de> for InitialData {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = InitialDataRaw::deserialize(deserializer)?;
        let rank = match raw.rank {
            Some(r) => r,
            None => raw
                .lambda
                .first()
                .map(Vec::len)
                .ok_or_else(|| serde::de::Error::custom("rank is required when n = 0"))?,
        };
        let b = if raw.b.is_empty() && !raw.z.is_empty() {
            vec![vec![Rational::zero(); rank]; raw.z.len()]
        } else {
            raw.b
        };
        InitialData::new(raw.kind, rank, raw.h, raw.z, raw.lambda, b)
            .map_err(serde::de::Error::custom)
    }
}

impl InitialData {
    pub fn new(
        kind: RootKind,
        rank: usize,
        h: Rational,
        z: Vec<Rational>,
        lambda: Vec<Vec<u32>>,
        b: Vec<Vec<Rational>>,
    ) -> Result<Self, Error> {
        if h.is_zero() {
            return Err(Error::ZeroStep);
        }
        if rank == 0 {
            return Err(Error::InvalidData("rank must be at least 1".into()));
        }
        let n = z.len();
        if lambda.len() != n || b.len() != n {
            return Err(Error::InvalidData(
                "lambda and b must have one row per ramification point".into(),
            ));
        }
        if lambda.iter().any(|row| row.len() != rank) || b.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidData(
                "lambda and b rows must have one entry per simple root".into(),
            ));
        }
        for (s, zs) in z.iter().enumerate() {
            for zr in &z[..s] {
                if zs == zr {
                    return Err(Error::InvalidData(
                        "ramification points must be pairwise distinct".into(),
                    ));
                }
            }
        }
        Ok(InitialData {
            kind,
            rank,
            h,
            z,
            lambda,
            b,
        })
    }

    /// Type-A data with no ramification points.
    pub fn trivial(kind: RootKind, rank: usize, h: Rational) -> Self {
        InitialData::new(kind, rank, h, vec![], vec![], vec![]).expect("trivial data")
    }

    pub fn n(&self) -> usize {
        self.z.len()
    }

    /// Total label sum `sum_s Lambda_s^{(i)}` over all points, per direction.
    pub fn lambda_column_sum(&self, i: usize) -> i64 {
        self.lambda.iter().map(|row| row[i - 1] as i64).sum()
    }

    /// The special shifts `b_s^{(j)} = -sum_{i<=j} Lambda_s^{(i)}`.
    pub fn with_special_shifts(mut self) -> Self {
        for s in 0..self.n() {
            let mut acc = 0i64;
            for j in 0..self.rank {
                acc += self.lambda[s][j] as i64;
                self.b[s][j] = Rational::from(-acc);
            }
        }
        self
    }

    /// True iff the shifts satisfy `b_s^{(j)} = -sum_{i<=j} Lambda_s^{(i)}`.
    pub fn has_special_shifts(&self) -> bool {
        (0..self.n()).all(|s| {
            let mut acc = 0i64;
            (0..self.rank).all(|j| {
                acc += self.lambda[s][j] as i64;
                self.b[s][j] == Rational::from(-acc)
            })
        })
    }
}

/// Projective tuple `(y_1, ..., y_N)` of monic polynomials; the implicit
/// boundary entries `y_0 = y_{N+1} = 1` are not stored.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyTuple {
    entries: Vec<Poly>,
}

#[derive(Serialize, Deserialize)]
struct PolyTupleRepr {
    tuple: Vec<Poly>,
}

impl PolyTuple {
    /// Builds a tuple, normalizing each entry monic. Zero entries are
    /// rejected.
    pub fn new(entries: Vec<Poly>) -> Result<Self, Error> {
        if entries.is_empty() {
            return Err(Error::InvalidData("empty tuple".into()));
        }
        if entries.iter().any(Poly::is_zero) {
            return Err(Error::InvalidData("tuple entries must be non-zero".into()));
        }
        Ok(PolyTuple {
            entries: entries.iter().map(Poly::monic).collect(),
        })
    }

    /// The all-ones tuple of the given length.
    pub fn ones(len: usize) -> Self {
        PolyTuple {
            entries: vec![Poly::one(); len],
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// `y_i` with the convention `y_0 = y_{N+1} = 1`.
    pub fn entry_or_one(&self, i: usize) -> Poly {
        if i == 0 || i > self.entries.len() {
            Poly::one()
        } else {
            self.entries[i - 1].clone()
        }
    }

    /// Replaces `y_i` (1-based) by the monic normalization of `p`.
    pub fn with_entry(&self, i: usize, p: Poly) -> Result<Self, Error> {
        if p.is_zero() {
            return Err(Error::InvalidData("tuple entries must be non-zero".into()));
        }
        let mut entries = self.entries.clone();
        entries[i - 1] = p.monic();
        Ok(PolyTuple { entries })
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.entries
            .iter()
            .map(|p| p.degree().expect("entries are non-zero"))
            .collect()
    }

    /// Canonical serialization used for deterministic tie-breaks.
    pub fn canonical_string(&self) -> String {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|p| {
                let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                format!("[{}]", coeffs.join(","))
            })
            .collect();
        parts.join(";")
    }
}

impl fmt::Debug for PolyTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for PolyTuple {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        PolyTupleRepr {
            tuple: self.entries.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PolyTuple {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = PolyTupleRepr::deserialize(deserializer)?;
        PolyTuple::new(repr.tuple).map_err(serde::de::Error::custom)
    }
}

/// A weight in Dynkin labels with respect to the root system of the data.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&l| l >= 0)
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }
}

/// The frame polynomials
/// `T_i(x) = prod_s prod_{j=1}^{Lambda_s^{(i)}} (x - z_s + b_s^{(i)} h + j h)`.
pub fn t_polynomials(data: &InitialData) -> FrameSeq {
    let mut entries = Vec::with_capacity(data.rank);
    for i in 0..data.rank {
        let mut t = Poly::one();
        for s in 0..data.n() {
            for j in 1..=data.lambda[s][i] {
                let root = &data.z[s]
                    - &(&data.b[s][i] * &data.h)
                    - &(&data.h * &Rational::from(j as i64));
                t = &t * &Poly::from_roots(&[root]);
            }
        }
        entries.push(t);
    }
    FrameSeq::new(entries, data.h.clone()).expect("valid frame")
}

/// The boundary coefficients of the second-order difference equation in
/// direction `i` (1-based):
/// `A_i = prod_s (x - z_s + b_s^{(i)} h) * y_{i-1}(x) * y_{i+1}(x - h)` and
/// `C_i = prod_s (x - z_s + b_s^{(i)} h + Lambda_s^{(i)} h) * y_{i-1}(x+h) * y_{i+1}(x)`.
pub fn abc_coefficients(data: &InitialData, tuple: &PolyTuple, i: usize) -> (Poly, Poly) {
    assert!(i >= 1 && i <= tuple.len(), "direction out of range");
    let mut a = Poly::one();
    let mut c = Poly::one();
    for s in 0..data.n() {
        let base = &data.z[s] - &(&data.b[s][i - 1] * &data.h);
        a = &a * &Poly::from_roots(&[base.clone()]);
        let c_root = base - &data.h * &Rational::from(data.lambda[s][i - 1] as i64);
        c = &c * &Poly::from_roots(&[c_root]);
    }
    let prev = tuple.entry_or_one(i - 1);
    let next = tuple.entry_or_one(i + 1);
    let a = &(&a * &prev) * &next.shift(&-&data.h);
    let c = &(&c * &prev.shift(&data.h)) * &next;
    (a, c)
}

/// Genericity of the tuple with respect to the initial data: every `y_i` has
/// no multiple roots and no common roots with `y_i(x+h)`, `y_{i-1}(x+h)`,
/// `y_{i+1}(x)` or `T_i(x)`. B/C tuples are folded first.
pub fn is_generic(data: &InitialData, tuple: &PolyTuple) -> Result<bool, Error> {
    match data.kind {
        RootKind::A => {
            let frame = t_polynomials(data);
            Ok(is_generic_a(&frame, tuple, &data.h))
        }
        RootKind::B | RootKind::C => {
            let folded = fold_tuple(data, tuple)?;
            let lifted = selfdual::lift_data(data)?;
            is_generic(&lifted, &folded)
        }
    }
}

fn is_generic_a(frame: &FrameSeq, tuple: &PolyTuple, h: &Rational) -> bool {
    let coprime = |a: &Poly, b: &Poly| -> bool {
        a.gcd(b).map(|g| g == Poly::one()).unwrap_or(false)
    };
    for i in 1..=tuple.len() {
        let y = tuple.entry_or_one(i);
        if !y.is_constant() && !coprime(&y, &y.derivative()) {
            return false;
        }
        if !coprime(&y, &y.shift(h)) {
            return false;
        }
        if !coprime(&y, &tuple.entry_or_one(i - 1).shift(h)) {
            return false;
        }
        if !coprime(&y, &tuple.entry_or_one(i + 1)) {
            return false;
        }
        if !coprime(&y, frame.entry(i)) {
            return false;
        }
    }
    true
}

/// Outcome of the criticality test.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub enum Criticality {
    Critical,
    /// The tuple fails the genericity battery; the divisibility test does
    /// not apply to it.
    NonGeneric,
    /// Genericity holds but the divisibility test fails in this direction.
    NotDivisible { direction: usize },
}

impl Criticality {
    pub fn is_critical(&self) -> bool {
        matches!(self, Criticality::Critical)
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            Criticality::Critical => None,
            Criticality::NonGeneric => Some("non-generic".into()),
            Criticality::NotDivisible { direction } => {
                Some(format!("not-divisible:{direction}"))
            }
        }
    }
}

/// Exact criticality test.
///
/// Type A: genericity plus, for every direction, divisibility of
/// `A_i y_i(x+h) + C_i y_i(x-h)` by `y_i`. Types B and C: the tuple is
/// folded and the data lifted, and the type-A test is applied.
pub fn verify_critical(data: &InitialData, tuple: &PolyTuple) -> Result<Criticality, Error> {
    match data.kind {
        RootKind::A => {
            if tuple.len() != data.rank {
                return Err(Error::DimensionMismatch(format!(
                    "tuple length {} does not match rank {}",
                    tuple.len(),
                    data.rank
                )));
            }
            if !is_generic(data, tuple)? {
                return Ok(Criticality::NonGeneric);
            }
            for i in 1..=data.rank {
                let y = tuple.entry_or_one(i);
                let (a, c) = abc_coefficients(data, tuple, i);
                let num = &(&a * &y.shift(&data.h)) + &(&c * &y.shift(&-&data.h));
                if num.exact_div(&y).is_none() {
                    return Ok(Criticality::NotDivisible { direction: i });
                }
            }
            Ok(Criticality::Critical)
        }
        RootKind::B | RootKind::C => {
            let folded = fold_tuple(data, tuple)?;
            let lifted = selfdual::lift_data(data)?;
            verify_critical(&lifted, &folded)
        }
    }
}

/// Folds a B/C tuple into its type-A mirror image.
pub fn fold_tuple(data: &InitialData, tuple: &PolyTuple) -> Result<PolyTuple, Error> {
    if tuple.len() != data.rank {
        return Err(Error::DimensionMismatch(format!(
            "tuple length {} does not match rank {}",
            tuple.len(),
            data.rank
        )));
    }
    match data.kind {
        RootKind::A => Ok(tuple.clone()),
        RootKind::B => Ok(selfdual::fold_bn(tuple, &data.h)),
        RootKind::C => selfdual::fold_cn(tuple, &data.h),
    }
}

/// The weight at infinity `Lambda_inf = sum_s Lambda_s - sum_i l_i alpha_i`,
/// in Dynkin labels. `degrees` are the polynomial degrees of the tuple; for
/// type C the last degree must be even (it counts `2 l_N` roots).
pub fn weight_at_infinity(data: &InitialData, degrees: &[usize]) -> Result<Weight, Error> {
    if degrees.len() != data.rank {
        return Err(Error::DimensionMismatch(format!(
            "expected {} degrees, got {}",
            data.rank,
            degrees.len()
        )));
    }
    let mut l: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    if data.kind == RootKind::C {
        if degrees[data.rank - 1] % 2 != 0 {
            return Err(Error::OddSymplecticDegree);
        }
        l[data.rank - 1] /= 2;
    }
    let rs = RootSystem::new(data.kind, data.rank);
    let mut labels = Vec::with_capacity(data.rank);
    for j in 1..=data.rank {
        let mut v = data.lambda_column_sum(j);
        for (i, li) in l.iter().enumerate() {
            v -= li * rs.cartan_entry(j, i + 1);
        }
        labels.push(v);
    }
    Ok(Weight(labels))
}

/// Exact root data for the rank-one system with a single variable: the
/// roots of `A(x) - C(x)` (rational ones listed with multiplicity, total
/// count over the complex numbers given by the degree).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sl2Roots {
    pub rational_roots: Vec<Rational>,
    pub total_count: usize,
}

/// Solves the rank-one single-root reduction `A(t) = C(t)` exactly.
pub fn solve_sl2_l1(data: &InitialData) -> Result<Sl2Roots, Error> {
    if data.rank != 1 {
        return Err(Error::DimensionMismatch("solver needs rank 1".into()));
    }
    let tuple = PolyTuple::ones(1);
    let (a, c) = abc_coefficients(data, &tuple, 1);
    let p = &a - &c;
    if p.is_zero() {
        return Err(Error::DegenerateSl2);
    }
    let total_count = p.degree().unwrap_or(0);
    let mut rational = Vec::new();
    if total_count > 0 {
        for (root, mult) in rational_roots(&p) {
            for _ in 0..mult {
                rational.push(root.clone());
            }
        }
    }
    Ok(Sl2Roots {
        rational_roots: rational,
        total_count,
    })
}

/// Evaluates the displayed Bethe product at every root of the tuple, over
/// the rationals. All entries must split over Q; the tuple must be generic
/// (otherwise a denominator vanishes and an error is reported).
///
/// This is the direct-substitution cross-check for the divisibility-based
/// [`verify_critical`]; the two must agree on generic rational-rooted tuples.
pub fn bethe_system_holds(data: &InitialData, tuple: &PolyTuple) -> Result<bool, Error> {
    let roots = tuple_roots(tuple)?;
    match data.kind {
        RootKind::A => bethe_system_holds_at(data, &roots),
        RootKind::B => bethe_system_holds_b(data, &roots),
        RootKind::C => bethe_system_holds_c(data, &roots),
    }
}

fn tuple_roots(tuple: &PolyTuple) -> Result<Vec<Vec<Rational>>, Error> {
    tuple
        .entries()
        .iter()
        .map(|y| {
            all_rational_roots(y).ok_or_else(|| {
                Error::Precondition("tuple entry does not split over the rationals".into())
            })
        })
        .collect()
}

/// Exact product of Bethe factors with cleared denominators: the equation
/// `prod num_k / den_k = 1` holds iff `prod num_k = prod den_k` with a
/// non-vanishing denominator. A vanishing denominator against a non-zero
/// numerator makes the point a non-solution; both vanishing at once is
/// indeterminate and reported as a precondition failure.
struct ClearedProduct {
    num: Rational,
    den: Rational,
}

impl ClearedProduct {
    fn new() -> Self {
        ClearedProduct {
            num: Rational::one(),
            den: Rational::one(),
        }
    }

    fn push(&mut self, num: Rational, den: Rational) {
        self.num *= &num;
        self.den *= &den;
    }

    fn holds(&self) -> Result<bool, Error> {
        if self.den.is_zero() {
            if self.num.is_zero() {
                return Err(Error::Precondition(
                    "Bethe product is indeterminate at a root".into(),
                ));
            }
            return Ok(false);
        }
        Ok(self.num == self.den)
    }
}

/// One type-A Bethe equation for variable `t_j` in direction `i`.
fn bethe_equation_a(
    data: &InitialData,
    roots: &[Vec<Rational>],
    i: usize,
    j: usize,
) -> Result<bool, Error> {
    let h = &data.h;
    let t = &roots[i - 1][j];
    let mut prod = ClearedProduct::new();
    for s in 0..data.n() {
        let base = t - &data.z[s] + &data.b[s][i - 1] * h;
        let lam = Rational::from(data.lambda[s][i - 1] as i64);
        prod.push(&base + &(&lam * h), base);
    }
    if i >= 2 {
        for tk in &roots[i - 2] {
            prod.push(t - tk + h, t - tk);
        }
    }
    for (k, tk) in roots[i - 1].iter().enumerate() {
        if k != j {
            prod.push(t - tk - h, t - tk + h);
        }
    }
    if i < roots.len() {
        for tk in &roots[i] {
            prod.push(t - tk, t - tk - h);
        }
    }
    prod.holds()
}

fn bethe_system_holds_at(data: &InitialData, roots: &[Vec<Rational>]) -> Result<bool, Error> {
    for i in 1..=roots.len() {
        for j in 0..roots[i - 1].len() {
            if !bethe_equation_a(data, roots, i, j)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The displayed B-type system: type-A equations for `i < N` and a squared
/// neighbour factor in the last direction.
fn bethe_system_holds_b(data: &InitialData, roots: &[Vec<Rational>]) -> Result<bool, Error> {
    let n_dir = data.rank;
    let h = &data.h;
    for i in 1..n_dir {
        for j in 0..roots[i - 1].len() {
            if !bethe_equation_a(data, roots, i, j)? {
                return Ok(false);
            }
        }
    }
    for (j, t) in roots[n_dir - 1].iter().enumerate() {
        let mut prod = ClearedProduct::new();
        for s in 0..data.n() {
            let base = t - &data.z[s] + &data.b[s][n_dir - 1] * h;
            let lam = Rational::from(data.lambda[s][n_dir - 1] as i64);
            prod.push(&base + &(&lam * h), base);
        }
        if n_dir >= 2 {
            for tk in &roots[n_dir - 2] {
                let num = t - tk + h;
                let den = t - tk;
                prod.push(&num * &num, &den * &den);
            }
        }
        for (k, tk) in roots[n_dir - 1].iter().enumerate() {
            if k != j {
                prod.push(t - tk - h, t - tk + h);
            }
        }
        if !prod.holds()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The displayed C-type system: type-A equations for `i < N` plus half-step
/// self-interaction factors in the last direction.
fn bethe_system_holds_c(data: &InitialData, roots: &[Vec<Rational>]) -> Result<bool, Error> {
    let n_dir = data.rank;
    let h = &data.h;
    let half = h * &Rational::new(1, 2);
    for i in 1..n_dir {
        for j in 0..roots[i - 1].len() {
            if !bethe_equation_a(data, roots, i, j)? {
                return Ok(false);
            }
        }
    }
    for (j, t) in roots[n_dir - 1].iter().enumerate() {
        let mut prod = ClearedProduct::new();
        for s in 0..data.n() {
            let base = t - &data.z[s] + &data.b[s][n_dir - 1] * h;
            let lam = Rational::from(data.lambda[s][n_dir - 1] as i64);
            prod.push(&base + &(&lam * h), base);
        }
        if n_dir >= 2 {
            for tk in &roots[n_dir - 2] {
                prod.push(t - tk + h, t - tk);
            }
        }
        for (k, tk) in roots[n_dir - 1].iter().enumerate() {
            if k != j {
                prod.push(t - tk - h, t - tk + h);
            }
        }
        for tk in roots[n_dir - 1].iter() {
            prod.push(t - tk + &half, t - tk - &half);
        }
        if !prod.holds()? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn poly(coeffs: &[(i64, i64)]) -> Poly {
        Poly::from_coeffs(coeffs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn sl2_data(z: &[i64], lambda: &[u32]) -> InitialData {
        InitialData::new(
            RootKind::A,
            1,
            Rational::one(),
            z.iter().map(|&v| Rational::from(v)).collect(),
            lambda.iter().map(|&l| vec![l]).collect(),
            vec![vec![Rational::zero()]; z.len()],
        )
        .unwrap()
    }

    #[test]
    fn t_polynomial_examples() {
        // n = 0: all T_i = 1.
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let frame = t_polynomials(&data);
        assert_eq!(frame.entry(1), &Poly::one());
        assert_eq!(frame.entry(2), &Poly::one());

        // N=1, n=1, z=0, Lambda=2, b=0, h=1: T = (x+1)(x+2).
        let data = sl2_data(&[0], &[2]);
        let frame = t_polynomials(&data);
        assert_eq!(frame.entry(1), &poly(&[(2, 1), (3, 1), (1, 1)]));

        // N=1, n=2, z=(0,3), Lambda=(1,1), b=0, h=1: T = (x+1)(x-2).
        let data = sl2_data(&[0, 3], &[1, 1]);
        let frame = t_polynomials(&data);
        assert_eq!(frame.entry(1), &poly(&[(-2, 1), (-1, 1), (1, 1)]));
    }

    #[test]
    fn abc_examples() {
        // sl_2, n = 0: A = C = 1.
        let data = InitialData::trivial(RootKind::A, 1, Rational::one());
        let (a, c) = abc_coefficients(&data, &PolyTuple::ones(1), 1);
        assert_eq!(a, Poly::one());
        assert_eq!(c, Poly::one());

        // sl_3, n = 0, tuple (1, x+a), i = 1: A_1 = y_2(x-h) = x+a-1, C_1 = y_2 = x+a.
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let a_val = q(5, 1);
        let tuple = PolyTuple::new(vec![
            Poly::one(),
            Poly::from_coeffs(vec![a_val.clone(), Rational::one()]),
        ])
        .unwrap();
        let (a, c) = abc_coefficients(&data, &tuple, 1);
        assert_eq!(a, poly(&[(4, 1), (1, 1)]));
        assert_eq!(c, poly(&[(5, 1), (1, 1)]));

        // N=1, n=2 data: A = x(x-3), C = (x+1)(x-2).
        let data = sl2_data(&[0, 3], &[1, 1]);
        let (a, c) = abc_coefficients(&data, &PolyTuple::ones(1), 1);
        assert_eq!(a, poly(&[(0, 1), (-3, 1), (1, 1)]));
        assert_eq!(c, poly(&[(-2, 1), (-1, 1), (1, 1)]));
    }

    #[test]
    fn genericity_examples() {
        let data = InitialData::trivial(RootKind::A, 3, Rational::one());
        assert!(is_generic(&data, &PolyTuple::ones(3)).unwrap());

        // u = x(x-1) collides with its own shift.
        let data1 = InitialData::trivial(RootKind::A, 1, Rational::one());
        let u = Poly::from_roots(&[q(0, 1), q(1, 1)]);
        assert!(!is_generic(&data1, &PolyTuple::new(vec![u]).unwrap()).unwrap());

        // (x^2 + 9x + 1, x + 5) is generic.
        let data2 = InitialData::trivial(RootKind::A, 2, Rational::one());
        let tuple = PolyTuple::new(vec![
            poly(&[(1, 1), (9, 1), (1, 1)]),
            poly(&[(5, 1), (1, 1)]),
        ])
        .unwrap();
        assert!(is_generic(&data2, &tuple).unwrap());
    }

    #[test]
    fn criticality_examples() {
        // (1, 1) with n = 0 is critical.
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        assert!(verify_critical(&data, &PolyTuple::ones(2))
            .unwrap()
            .is_critical());

        // The degree-(2,1) family member with a=5, b=1.
        let tuple = PolyTuple::new(vec![
            poly(&[(1, 1), (9, 1), (1, 1)]),
            poly(&[(5, 1), (1, 1)]),
        ])
        .unwrap();
        assert!(verify_critical(&data, &tuple).unwrap().is_critical());

        // sl_2 with z=(0,3), Lambda=(1,1): u = x-1 is critical.
        let data = sl2_data(&[0, 3], &[1, 1]);
        let u = PolyTuple::new(vec![poly(&[(-1, 1), (1, 1)])]).unwrap();
        assert!(verify_critical(&data, &u).unwrap().is_critical());
        // ... and u = x - 2 is not (generic but not a Bethe root).
        let bad = PolyTuple::new(vec![poly(&[(-5, 1), (1, 1)])]).unwrap();
        let verdict = verify_critical(&data, &bad).unwrap();
        assert_eq!(verdict, Criticality::NotDivisible { direction: 1 });

        // Non-generic reason code.
        let data1 = InitialData::trivial(RootKind::A, 1, Rational::one());
        let non_generic = PolyTuple::new(vec![Poly::from_roots(&[q(0, 1), q(1, 1)])]).unwrap();
        let verdict = verify_critical(&data1, &non_generic).unwrap();
        assert_eq!(verdict.reason().as_deref(), Some("non-generic"));
    }

    #[test]
    fn ones_tuple_is_critical_for_any_type_a_data() {
        let data = InitialData::new(
            RootKind::A,
            2,
            q(1, 2),
            vec![q(0, 1), q(7, 3)],
            vec![vec![2, 1], vec![1, 3]],
            vec![vec![q(1, 1), q(-2, 1)], vec![q(0, 1), q(1, 3)]],
        )
        .unwrap();
        assert!(verify_critical(&data, &PolyTuple::ones(2))
            .unwrap()
            .is_critical());
    }

    #[test]
    fn weight_at_infinity_examples() {
        let data = InitialData::trivial(RootKind::A, 3, Rational::one());
        assert_eq!(
            weight_at_infinity(&data, &[0, 0, 0]).unwrap(),
            Weight::zero(3)
        );

        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        assert_eq!(
            weight_at_infinity(&data, &[1, 0]).unwrap(),
            Weight(vec![-2, 1])
        );
        assert_eq!(
            weight_at_infinity(&data, &[2, 2]).unwrap(),
            Weight(vec![-2, -2])
        );

        // C-type data rejects odd last degree.
        let data = InitialData::trivial(RootKind::C, 1, Rational::one());
        assert!(weight_at_infinity(&data, &[1]).is_err());
        assert!(weight_at_infinity(&data, &[2]).is_ok());
    }

    #[test]
    fn sl2_solver_examples() {
        // z=(0,3): A - C = -2x + 2, root 1, count 1.
        let data = sl2_data(&[0, 3], &[1, 1]);
        let sol = solve_sl2_l1(&data).unwrap();
        assert_eq!(sol.rational_roots, vec![q(1, 1)]);
        assert_eq!(sol.total_count, 1);

        // z=(0): A - C = -1, no roots.
        let data = sl2_data(&[0], &[1]);
        let sol = solve_sl2_l1(&data).unwrap();
        assert!(sol.rational_roots.is_empty());
        assert_eq!(sol.total_count, 0);

        // z=(0,1): degree 1.
        let data = sl2_data(&[0, 1], &[1, 1]);
        assert_eq!(solve_sl2_l1(&data).unwrap().total_count, 1);
    }

    #[test]
    fn sl2_count_is_n_minus_one_for_zero_shifts() {
        for (z, lambda) in [
            (vec![0i64, 3], vec![1u32, 1]),
            (vec![0, 3, 7], vec![1, 1, 1]),
            (vec![0, 2, 5, 11], vec![2, 1, 3, 1]),
        ] {
            let data = sl2_data(&z, &lambda);
            let sol = solve_sl2_l1(&data).unwrap();
            assert_eq!(sol.total_count, z.len() - 1);
        }
    }

    #[test]
    fn direct_substitution_agrees_with_divisibility() {
        // u = x - 1 for z = (0,3): both routes say critical.
        let data = sl2_data(&[0, 3], &[1, 1]);
        let good = PolyTuple::new(vec![poly(&[(-1, 1), (1, 1)])]).unwrap();
        assert!(bethe_system_holds(&data, &good).unwrap());
        assert!(verify_critical(&data, &good).unwrap().is_critical());

        // u = x - 5: both say not critical.
        let bad = PolyTuple::new(vec![poly(&[(-5, 1), (1, 1)])]).unwrap();
        assert!(!bethe_system_holds(&data, &bad).unwrap());
        assert!(!verify_critical(&data, &bad).unwrap().is_critical());
    }

    #[test]
    fn special_shifts() {
        let data = InitialData::new(
            RootKind::A,
            2,
            Rational::one(),
            vec![q(0, 1)],
            vec![vec![2, 1]],
            vec![vec![q(0, 1), q(0, 1)]],
        )
        .unwrap()
        .with_special_shifts();
        assert_eq!(data.b[0], vec![q(-2, 1), q(-3, 1)]);
        assert!(data.has_special_shifts());
    }

    #[test]
    fn initial_data_json_round_trip() {
        let json = r#"{"kind":"A","h":"1","z":["0","3"],"lambda":[[1],[1]],"b":[["0"],["0"]]}"#;
        let data: InitialData = serde_json::from_str(json).unwrap();
        assert_eq!(data.rank, 1);
        assert_eq!(data.n(), 2);
        let back = serde_json::to_string(&data).unwrap();
        let again: InitialData = serde_json::from_str(&back).unwrap();
        assert_eq!(again, data);

        // n = 0 requires an explicit rank.
        let json = r#"{"kind":"A","h":"1","rank":2}"#;
        let data: InitialData = serde_json::from_str(json).unwrap();
        assert_eq!(data.rank, 2);
        assert!(serde_json::from_str::<InitialData>(r#"{"kind":"A","h":"1"}"#).is_err());
    }

    #[test]
    fn tuple_json_round_trip() {
        let json = r#"{"tuple":[["1","9","1"],["5","1"]]}"#;
        let tuple: PolyTuple = serde_json::from_str(json).unwrap();
        assert_eq!(tuple.degrees(), vec![2, 1]);
        let back = serde_json::to_string(&tuple).unwrap();
        assert_eq!(back, json);
    }
}
