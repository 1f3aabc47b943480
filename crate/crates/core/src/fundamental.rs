//! Fundamental spaces, frames, difference operators, generating morphisms
//! and Schubert/Bruhat bookkeeping.
//!
//! The fundamental space of a population is the `(N+1)`-dimensional space of
//! polynomial solutions of the order-`(N+1)` factored difference operator.
//! It is built constructively here by chained fertility solves, and every
//! postcondition (the divided-Wronskian ladder, the frame, the kernel) is
//! verified exactly rather than assumed.

use std::fmt;

use serde::Serialize;

use crate::bethe::{t_polynomials, verify_critical, InitialData, PolyTuple, RootKind, Weight};
use crate::error::Error;
use crate::exactalg::{rank_of, solve_linear, Matrix, Poly, Rational, RationalFunction};
use crate::reproduction::{fertility_solve, retry_schedule};
use crate::rng::SplitMix64;
use crate::wronskian::{divided_wronskian, wronskian, FrameSeq};

/// A finite-dimensional space of polynomials with a distinguished ordered
/// basis and a step.
#[derive(Clone, Debug)]
pub struct PolySpace {
    basis: Vec<Poly>,
    h: Rational,
}

impl PolySpace {
    pub fn new(basis: Vec<Poly>, h: Rational) -> Result<Self, Error> {
        if h.is_zero() {
            return Err(Error::ZeroStep);
        }
        if basis.is_empty() || basis.iter().any(Poly::is_zero) {
            return Err(Error::InvalidData("basis must be non-empty, non-zero".into()));
        }
        let rows: Vec<Vec<Rational>> = coefficient_rows(&basis);
        if rank_of(&rows) != basis.len() {
            return Err(Error::InvalidData("basis is linearly dependent".into()));
        }
        Ok(PolySpace { basis, h })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn max_degree(&self) -> usize {
        self.basis
            .iter()
            .map(|p| p.degree().expect("non-zero"))
            .max()
            .unwrap_or(0)
    }

    /// The canonical reduced-echelon basis ordered by increasing degree with
    /// monic pivots. Span-equal spaces produce identical echelon bases.
    pub fn echelon_basis(&self) -> Vec<Poly> {
        let width = self.max_degree() + 1;
        // Columns reversed so the leading (highest-degree) coefficient is
        // eliminated first.
        let rows: Vec<Vec<Rational>> = self
            .basis
            .iter()
            .map(|p| (0..width).rev().map(|j| p.coeff(j)).collect())
            .collect();
        let mut m = Matrix::from_rows(rows);
        m.rref();
        let mut polys: Vec<Poly> = (0..self.dim())
            .map(|r| {
                let coeffs: Vec<Rational> =
                    (0..width).map(|j| m.get(r, width - 1 - j).clone()).collect();
                Poly::from_coeffs(coeffs)
            })
            .collect();
        polys.reverse(); // increasing degree
        polys
    }

    /// Exact span equality.
    pub fn eq_span(&self, other: &PolySpace) -> bool {
        self.dim() == other.dim() && self.echelon_basis() == other.echelon_basis()
    }

    /// The space `{u(x + a) : u in V}`.
    pub fn shift(&self, a: &Rational) -> PolySpace {
        PolySpace {
            basis: self.basis.iter().map(|p| p.shift(a)).collect(),
            h: self.h.clone(),
        }
    }

    pub fn contains(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return true;
        }
        let mut with = self.basis.clone();
        with.push(p.clone());
        rank_of(&coefficient_rows(&with)) == self.dim()
    }
}

fn coefficient_rows(polys: &[Poly]) -> Vec<Vec<Rational>> {
    let width = polys
        .iter()
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(1)
        .max(1);
    polys
        .iter()
        .map(|p| (0..width).map(|j| p.coeff(j)).collect())
        .collect()
}

/// A full flag presented by an adjusted basis: prefix spans are the flag.
#[derive(Clone, Debug)]
pub struct Flag {
    space: PolySpace,
    basis: Vec<Poly>,
}

impl Flag {
    /// Builds the flag generated by an adjusted basis.
    pub fn from_adjusted_basis(basis: Vec<Poly>, h: Rational) -> Result<Self, Error> {
        let space = PolySpace::new(basis.clone(), h)?;
        Ok(Flag { space, basis })
    }

    pub fn space(&self) -> &PolySpace {
        &self.space
    }

    pub fn basis(&self) -> &[Poly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// An ordered product of first-order factors `(∂ - f_1)(∂ - f_2)...(∂ - f_k)`
/// with rational-function coefficients.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceOperator {
    factors: Vec<RationalFunction>,
    h: Rational,
}

impl DifferenceOperator {
    pub fn new(factors: Vec<RationalFunction>, h: Rational) -> Result<Self, Error> {
        if h.is_zero() {
            return Err(Error::ZeroStep);
        }
        Ok(DifferenceOperator { factors, h })
    }

    pub fn order(&self) -> usize {
        self.factors.len()
    }

    pub fn factors(&self) -> &[RationalFunction] {
        &self.factors
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    /// Applies the operator to a polynomial, right factor first:
    /// `(∂ - f) g = g(x+h) - f(x) g(x)` in rational-function arithmetic.
    pub fn apply(&self, p: &Poly) -> RationalFunction {
        self.apply_rf(&RationalFunction::from_poly(p.clone()))
    }

    pub fn apply_rf(&self, g: &RationalFunction) -> RationalFunction {
        let mut acc = g.clone();
        for f in self.factors.iter().rev() {
            acc = &acc.shift(&self.h) - &(f * &acc);
        }
        acc
    }

    /// Expanded coefficients of `∂^k` for `k = order .. 0` (leading first).
    ///
    /// The expansion uses `(∂ - f)(a ∂^k) = a(x+h) ∂^{k+1} - f a ∂^k`; the
    /// leading coefficient is identically 1, so equal normal forms mean
    /// equal operators.
    pub fn normal_form(&self) -> Vec<RationalFunction> {
        // ascending[k] = coefficient of ∂^k
        let mut ascending = vec![RationalFunction::one()];
        for f in self.factors.iter().rev() {
            let mut next = vec![RationalFunction::zero(); ascending.len() + 1];
            for (k, a) in ascending.iter().enumerate() {
                next[k + 1] = &next[k + 1] + &a.shift(&self.h);
                next[k] = &next[k] - &(f * a);
            }
            ascending = next;
        }
        ascending.reverse();
        ascending
    }
}

impl fmt::Display for DifferenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for factor in &self.factors {
            if factor.is_zero() {
                write!(f, "(∂)")?;
            } else {
                write!(f, "(∂ - {factor})")?;
            }
        }
        Ok(())
    }
}

/// Schubert-cell profile of a space against the flag at one point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchubertPosition {
    /// Non-increasing, `d - N >= a_1 >= ... >= a_{N+1} >= 0`.
    pub a: Vec<usize>,
    /// `None` encodes the point at infinity.
    pub point: Option<Rational>,
    pub ambient_degree: usize,
}

impl SchubertPosition {
    pub fn codimension(&self) -> usize {
        self.a.iter().sum()
    }
}

/// Builds a basis `u_1, ..., u_{N+1}` of the fundamental space by chained
/// fertility solves: `u_1 = y_1` and each next element solves
/// `W(y_1, u_{i+1}) = T_1 * (cascaded partner)`, the cascade replacing one
/// coordinate at a time from direction `i` down to 1.
///
/// The divided-Wronskian ladder `W(u_1,...,u_i) / U_i = y_i` is verified
/// exactly before returning (with a sign fix per level, since fertility
/// representatives are determined only up to the pencil).
pub fn fundamental_basis(data: &InitialData, tuple: &PolyTuple) -> Result<PolySpace, Error> {
    let (data_a, tuple_a) = match data.kind {
        RootKind::A => (data.clone(), tuple.clone()),
        RootKind::B | RootKind::C => {
            let folded = crate::bethe::fold_tuple(data, tuple)?;
            (crate::selfdual::lift_data(data)?, folded)
        }
    };
    if !verify_critical(&data_a, &tuple_a)?.is_critical() {
        return Err(Error::Precondition(
            "fundamental space needs a verified critical point".into(),
        ));
    }
    let frame = t_polynomials(&data_a);
    let h = data_a.h.clone();
    let n = data_a.rank;
    let mut basis: Vec<Poly> = vec![tuple_a.entry_or_one(1)];
    for i in 1..=n {
        basis.push(cascade_solution(&data_a, &frame, &tuple_a, i)?);
    }
    // Verify (and sign-fix) the ladder W(u_1..u_i) = y_i U_i.
    for i in 1..=n + 1 {
        let expected = tuple_a.entry_or_one(i);
        match divided_wronskian(&basis[..i], &frame) {
            Some(w) if w == expected => {}
            Some(w) if w == -&expected => {
                basis[i - 1] = -&basis[i - 1];
            }
            _ => return Err(Error::GenericityRetriesExhausted),
        }
    }
    PolySpace::new(basis, h)
}

/// The cascade producing `u_{i+1}`: starting from the fertility partner in
/// direction `i`, each lower direction `k` is solved against the previous
/// partner, with the deterministic retry schedule steering every
/// intermediate tuple to a generic representative.
fn cascade_solution(
    data: &InitialData,
    frame: &FrameSeq,
    tuple: &PolyTuple,
    i: usize,
) -> Result<Poly, Error> {
    let h = &data.h;
    let mut working = tuple.clone();
    let mut exact_partner = Poly::zero();
    for k in (1..=i).rev() {
        let next = if k == i {
            tuple.entry_or_one(i + 1)
        } else {
            exact_partner.clone()
        };
        let rhs = &(frame.entry(k) * &tuple.entry_or_one(k - 1).shift(h)) * &next;
        let y_k = tuple.entry_or_one(k);
        let base = fertility_solve(&y_k, &rhs, h).ok_or(Error::Infertile { direction: k })?;
        if k == 1 {
            // The bottom level is the produced basis vector itself; no
            // further fertility is solved against it, so the canonical
            // representative is used without a genericity constraint.
            if base.is_zero() {
                return Err(Error::GenericityRetriesExhausted);
            }
            return Ok(base);
        }
        let mut chosen = None;
        for c in retry_schedule() {
            let cand = &base + &y_k.scale(&c);
            if cand.is_zero() {
                continue;
            }
            let probe = working.with_entry(k, cand.clone())?;
            if crate::bethe::is_generic(data, &probe)? {
                working = probe;
                chosen = Some(cand);
                break;
            }
        }
        // Fall back to the canonical representative; the ladder check in the
        // caller still guards exactness.
        exact_partner = match chosen {
            Some(c) => c,
            None => {
                if base.is_zero() {
                    return Err(Error::GenericityRetriesExhausted);
                }
                working = working.with_entry(k, base.clone())?;
                base
            }
        };
    }
    Ok(exact_partner)
}

/// Recovers the frame of a space: `U_i` is the monic gcd of the Wronskians
/// of all `i`-subsets of the basis plus `samples` random sampled subsets,
/// and the `T_i` are peeled off recursively.
///
/// Sampling failure (a division with remainder) is reported, not silently
/// accepted; callers may raise `samples`.
pub fn frame_of_space(space: &PolySpace, samples: usize, seed: u64) -> Result<FrameSeq, Error> {
    let dim = space.dim();
    if dim < 2 {
        return Err(Error::DimensionMismatch(
            "frames need spaces of dimension at least 2".into(),
        ));
    }
    // Base points: a common root of all basis elements.
    let mut g = space.basis()[0].clone();
    for p in &space.basis()[1..] {
        g = g.gcd(p)?;
    }
    if g != Poly::one() {
        return Err(Error::BasePoint);
    }
    let h = space.h().clone();
    let mut rng = SplitMix64::new(seed);
    let mut u = vec![Poly::one(); dim + 1]; // u[i] = U_i, u[0] unused
    for i in 2..=dim {
        let mut acc: Option<Poly> = None;
        let fold = |w: Poly, acc: &mut Option<Poly>| {
            if w.is_zero() {
                return;
            }
            *acc = Some(match acc.take() {
                None => w.monic(),
                Some(g) => g.gcd(&w).expect("nonzero gcd"),
            });
        };
        for subset in combinations(dim, i) {
            let gs: Vec<Poly> = subset.iter().map(|&j| space.basis()[j].clone()).collect();
            fold(wronskian(&gs, &h), &mut acc);
        }
        if i < dim {
            for _ in 0..samples {
                let gs: Vec<Poly> = (0..i)
                    .map(|_| {
                        let mut v = Poly::zero();
                        for b in space.basis() {
                            v = &v + &b.scale(&rng.small_rational());
                        }
                        v
                    })
                    .collect();
                if gs.iter().any(Poly::is_zero) {
                    continue;
                }
                fold(wronskian(&gs, &h), &mut acc);
            }
        }
        u[i] = acc.ok_or(Error::FrameSampling)?;
    }
    // Peel T_i out of the divisors: U_{i0} = S * T_{i0-1} with
    // S = prod_{k=1}^{i0-2} prod_{j=1}^{i0-k} T_k(x+(j-1)h).
    let mut entries = vec![u[2].clone()];
    for i0 in 3..=dim {
        let mut s = Poly::one();
        for (k0, t) in entries.iter().enumerate().take(i0 - 2) {
            for j in 1..=(i0 - (k0 + 1)) {
                s = &s * &t.shift(&(&h * &Rational::from((j - 1) as i64)));
            }
        }
        let t_next = u[i0].exact_div(&s).ok_or(Error::FrameSampling)?;
        entries.push(t_next);
    }
    FrameSeq::new(entries, h)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for j in start..n {
            current.push(j);
            rec(j + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// The ordered factor list of the fundamental operator. For types B and C
/// the folded tuple and lifted data are used, giving the order-2N or
/// order-(2N+1) folded operator.
pub fn fundamental_operator(
    data: &InitialData,
    tuple: &PolyTuple,
) -> Result<DifferenceOperator, Error> {
    let (data_a, tuple_a) = match data.kind {
        RootKind::A => (data.clone(), tuple.clone()),
        RootKind::B | RootKind::C => {
            let folded = crate::bethe::fold_tuple(data, tuple)?;
            (crate::selfdual::lift_data(data)?, folded)
        }
    };
    let frame = t_polynomials(&data_a);
    let h = &data_a.h;
    let n = data_a.rank;
    let mut factors = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let top = tuple_a.entry_or_one(n + 1 - i);
        let bottom = tuple_a.entry_or_one(n - i);
        let mut f = RationalFunction::new(top.shift(h), top.clone());
        f = &f * &RationalFunction::new(bottom.clone(), bottom.shift(h));
        for s in 1..=(n - i) {
            let t = frame.entry(s);
            let up = t.shift(&(h * &Rational::from((n - i - s + 1) as i64)));
            let down = t.shift(&(h * &Rational::from((n - i - s) as i64)));
            f = &f * &RationalFunction::new(up, down);
        }
        factors.push(f);
    }
    DifferenceOperator::new(factors, h.clone())
}

/// The generating morphism: `y_i = W(u_1, ..., u_i) / U_i`, monic-normalized,
/// for an adjusted basis of a flag.
pub fn generating_morphism(flag: &Flag, frame: &FrameSeq) -> Result<PolyTuple, Error> {
    let n = flag.dim().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
        Error::DimensionMismatch("flags need dimension at least 2".into())
    })?;
    if frame.len() != n {
        return Err(Error::DimensionMismatch(
            "frame length must be one less than the flag dimension".into(),
        ));
    }
    let mut entries = Vec::with_capacity(n);
    for i in 1..=n {
        let y = divided_wronskian(&flag.basis()[..i], frame)
            .ok_or(Error::FlagFrameIncompatible)?;
        if y.is_zero() {
            return Err(Error::FlagFrameIncompatible);
        }
        entries.push(y);
    }
    PolyTuple::new(entries)
}

/// The Bruhat position of `flag` against `reference`: the permutation built
/// by greedily choosing, for each flag step, the smallest reference level
/// that accommodates an adjusted basis vector.
pub fn bruhat_position(flag: &Flag, reference: &Flag) -> Result<Vec<usize>, Error> {
    if !flag.space().eq_span(reference.space()) {
        return Err(Error::DimensionMismatch(
            "flags must live in the same ambient space".into(),
        ));
    }
    let dim = flag.dim();
    let mut word = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut found = None;
        for i in 1..=dim {
            // F_{j+1} inside F_j + Fref_i?
            let mut span: Vec<Poly> = flag.basis()[..j].to_vec();
            span.extend_from_slice(&reference.basis()[..i]);
            let base_rank = rank_of(&coefficient_rows(&span));
            span.push(flag.basis()[j].clone());
            if rank_of(&coefficient_rows(&span)) == base_rank {
                found = Some(i);
                break;
            }
        }
        word.push(found.expect("flag is contained in the full reference space"));
    }
    let mut seen = vec![false; dim + 1];
    for &w in &word {
        if seen[w] {
            return Err(Error::InvalidData(
                "Bruhat procedure did not produce a permutation".into(),
            ));
        }
        seen[w] = true;
    }
    Ok(word)
}

/// Measures the Schubert position of a space inside `C_d[x]` at a finite
/// point (divisibility flag) or at infinity (degree flag).
pub fn schubert_position(
    space: &PolySpace,
    point: Option<&Rational>,
    d: usize,
) -> Result<SchubertPosition, Error> {
    let dim = space.dim();
    if space.max_degree() > d || dim > d + 1 {
        return Err(Error::DimensionMismatch(
            "space does not fit in the requested ambient degree".into(),
        ));
    }
    let h = space.h().clone();
    // phi[j] = dim(V ∩ F_j), 1-based j up to d+1.
    let mut phi = vec![0usize; d + 2];
    match point {
        None => {
            let degrees: Vec<usize> = space
                .echelon_basis()
                .iter()
                .map(|p| p.degree().expect("non-zero"))
                .collect();
            for j in 1..=d + 1 {
                phi[j] = degrees.iter().filter(|&&e| e < j).count();
            }
        }
        Some(z) => {
            for j in 1..=d + 1 {
                let mut modulus = Poly::one();
                for r in 1..=(d + 1 - j) {
                    let root = z + &(&h * &Rational::from((r - 1) as i64));
                    modulus = &modulus * &Poly::from_roots(&[root]);
                }
                if modulus == Poly::one() {
                    phi[j] = dim;
                    continue;
                }
                let remainders: Vec<Poly> = space
                    .basis()
                    .iter()
                    .map(|p| p.div_rem(&modulus).1)
                    .collect();
                phi[j] = dim - rank_of(&coefficient_rows(&remainders));
            }
        }
    }
    let n = dim - 1;
    let mut a = Vec::with_capacity(dim);
    for i in 1..=dim {
        let j_i = (1..=d + 1)
            .find(|&j| phi[j] >= i)
            .expect("space has full dimension in the ambient");
        let value = (d - n + i) as i64 - j_i as i64;
        if value < 0 {
            return Err(Error::InvalidData("negative Schubert index".into()));
        }
        a.push(value as usize);
    }
    for w in a.windows(2) {
        if w[0] < w[1] {
            return Err(Error::InvalidData("Schubert indices not monotone".into()));
        }
    }
    if a[0] > d - n {
        return Err(Error::InvalidData("Schubert index exceeds the cell bound".into()));
    }
    Ok(SchubertPosition {
        a,
        point: point.cloned(),
        ambient_degree: d,
    })
}

/// The ramification conditions predicted for a fundamental space built from
/// data with the special shifts: at each finite point
/// `a_i(z_s) = sum_{j <= N+1-i} Lambda_s^{(j)}`, and at infinity
/// `a_i(inf) = d - N - l_1 - sum_{j < i} Lambda_inf^{(j)}` with the dominant
/// representative of the weight at infinity.
pub fn expected_ramification(
    data: &InitialData,
    degrees: &[usize],
    d: usize,
) -> Result<(Vec<SchubertPosition>, SchubertPosition), Error> {
    if data.kind != RootKind::A {
        return Err(Error::TheoremHypotheses(
            "ramification formulas are stated for type A".into(),
        ));
    }
    if !data.has_special_shifts() {
        return Err(Error::TheoremHypotheses(
            "the special shifts are required".into(),
        ));
    }
    for s in 0..data.n() {
        for r in 0..s {
            let diff = (&data.z[s] - &data.z[r]) / &data.h;
            if diff.is_integer() {
                return Err(Error::TheoremHypotheses(
                    "ramification points must not differ by step multiples".into(),
                ));
            }
        }
    }
    let n = data.rank;
    let lambda_inf = crate::bethe::weight_at_infinity(data, degrees)?;
    let rs = crate::repcount::RootSystem::new(RootKind::A, n);
    let dominant = crate::repcount::shifted_dominant_representative(&rs, &lambda_inf)
        .ok_or_else(|| {
            Error::TheoremHypotheses("weight at infinity lies on a shifted wall".into())
        })?;
    let l = degrees_for_weight(data, &rs, &dominant).ok_or_else(|| {
        Error::TheoremHypotheses("dominant weight is not reachable by degrees".into())
    })?;
    let l1 = l[0] as i64;

    let mut finite = Vec::with_capacity(data.n());
    for s in 0..data.n() {
        let mut a = Vec::with_capacity(n + 1);
        for i in 1..=n + 1 {
            let total: i64 = (1..=(n + 1 - i))
                .map(|j| data.lambda[s][j - 1] as i64)
                .sum();
            a.push(total as usize);
        }
        if a[0] > d - n {
            return Err(Error::TheoremHypotheses("ambient degree too small".into()));
        }
        finite.push(SchubertPosition {
            a,
            point: Some(data.z[s].clone()),
            ambient_degree: d,
        });
    }
    let mut at_inf = Vec::with_capacity(n + 1);
    for i in 1..=n + 1 {
        let head: i64 = dominant.0[..i - 1].iter().sum();
        let value = d as i64 - n as i64 - l1 - head;
        if value < 0 {
            return Err(Error::TheoremHypotheses("ambient degree too small".into()));
        }
        at_inf.push(value as usize);
    }
    Ok((
        finite,
        SchubertPosition {
            a: at_inf,
            point: None,
            ambient_degree: d,
        },
    ))
}

/// Solves the weight-at-infinity formula for the degree vector of a given
/// weight; `None` when the solution is not a non-negative integer vector.
fn degrees_for_weight(
    data: &InitialData,
    rs: &crate::repcount::RootSystem,
    wt: &Weight,
) -> Option<Vec<usize>> {
    let n = data.rank;
    let mut m = Matrix::zero(n, n);
    let mut rhs = Vec::with_capacity(n);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, Rational::from(rs.cartan_entry(r + 1, c + 1)));
        }
        rhs.push(Rational::from(data.lambda_column_sum(r + 1) - wt.0[r]));
    }
    let sol = solve_linear(&m, &rhs)?;
    if !sol.null_basis.is_empty() {
        return None;
    }
    sol.particular
        .iter()
        .map(|v| v.to_i64().filter(|&x| x >= 0).map(|x| x as usize))
        .collect()
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

    fn c2x(h: i64) -> PolySpace {
        PolySpace::new(
            vec![Poly::one(), Poly::x(), Poly::monomial(2, Rational::one())],
            Rational::from(h),
        )
        .unwrap()
    }

    #[test]
    fn echelon_and_span_equality() {
        let a = PolySpace::new(
            vec![poly(&[(1, 1), (1, 1)]), poly(&[(1, 1), (-1, 1)])],
            Rational::one(),
        )
        .unwrap();
        let b = PolySpace::new(vec![Poly::one(), Poly::x()], Rational::one()).unwrap();
        assert!(a.eq_span(&b));
        assert!(a.contains(&poly(&[(7, 2), (5, 1)])));
        assert!(!a.contains(&Poly::monomial(2, Rational::one())));
    }

    #[test]
    fn fundamental_basis_examples() {
        // sl_3, seed (1,1): the basis spans C_2[x].
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let space = fundamental_basis(&data, &PolyTuple::ones(2)).unwrap();
        assert!(space.eq_span(&c2x(1)));

        // sl_2, seed (1): span{1, x}.
        let data = InitialData::trivial(RootKind::A, 1, Rational::one());
        let space = fundamental_basis(&data, &PolyTuple::ones(1)).unwrap();
        assert_eq!(space.basis(), &[Poly::one(), Poly::x()]);

        // sl_2 with T = (x+1)(x+2): u_2 = x^3/3 + x^2 + 2x/3.
        let data = InitialData::new(
            RootKind::A,
            1,
            Rational::one(),
            vec![q(0, 1)],
            vec![vec![2]],
            vec![vec![q(0, 1)]],
        )
        .unwrap();
        let space = fundamental_basis(&data, &PolyTuple::ones(1)).unwrap();
        assert_eq!(
            space.basis()[1],
            poly(&[(0, 1), (2, 3), (1, 1), (1, 3)])
        );
    }

    #[test]
    fn frame_recovery() {
        // C_2[x] has the trivial frame.
        let frame = frame_of_space(&c2x(1), 5, 0).unwrap();
        assert_eq!(frame.entries(), &[Poly::one(), Poly::one()]);

        // span{1, x^2}: W(1, x^2) = 2x + 1, frame (x + 1/2).
        let space =
            PolySpace::new(vec![Poly::one(), Poly::monomial(2, Rational::one())], Rational::one())
                .unwrap();
        let frame = frame_of_space(&space, 5, 0).unwrap();
        assert_eq!(frame.entries(), &[poly(&[(1, 2), (1, 1)])]);

        // Base point detection: span{x, x^2}.
        let space =
            PolySpace::new(vec![Poly::x(), Poly::monomial(2, Rational::one())], Rational::one())
                .unwrap();
        assert!(matches!(frame_of_space(&space, 5, 0), Err(Error::BasePoint)));
    }

    #[test]
    fn frame_matches_t_polynomials_on_fundamental_spaces() {
        // N=1, n=2, z=(0,3), Lambda=(1,1): frame is (x+1)(x-2).
        let data = InitialData::new(
            RootKind::A,
            1,
            Rational::one(),
            vec![q(0, 1), q(3, 1)],
            vec![vec![1], vec![1]],
            vec![vec![q(0, 1)]; 2],
        )
        .unwrap();
        let seed = PolyTuple::new(vec![poly(&[(-1, 1), (1, 1)])]).unwrap();
        let space = fundamental_basis(&data, &seed).unwrap();
        let frame = frame_of_space(&space, 5, 0).unwrap();
        assert_eq!(frame.entries(), t_polynomials(&data).entries());
    }

    #[test]
    fn operator_examples() {
        // sl_2 trivial: (∂ - 1)(∂ - 1).
        let data = InitialData::trivial(RootKind::A, 1, Rational::one());
        let op = fundamental_operator(&data, &PolyTuple::ones(1)).unwrap();
        assert_eq!(op.order(), 2);
        assert!(op.factors().iter().all(RationalFunction::is_one));
        let nf = op.normal_form();
        assert_eq!(nf.len(), 3);
        assert!(nf[0].is_one());
        assert_eq!(nf[1], RationalFunction::constant(q(-2, 1)));
        assert!(nf[2].is_one());

        // Kernel: 1, x, x^2 for the A_2 trivial operator.
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let op = fundamental_operator(&data, &PolyTuple::ones(2)).unwrap();
        for p in [Poly::one(), Poly::x(), Poly::monomial(2, Rational::one())] {
            assert!(op.apply(&p).is_zero());
        }

        // y_1 = 1 is annihilated by the operator of (1, x + a).
        let tuple = PolyTuple::new(vec![Poly::one(), poly(&[(5, 1), (1, 1)])]).unwrap();
        let op = fundamental_operator(&data, &tuple).unwrap();
        assert!(op.apply(&Poly::one()).is_zero());
    }

    #[test]
    fn operator_application_rules() {
        let h = Rational::one();
        let d_minus_one =
            DifferenceOperator::new(vec![RationalFunction::one()], h.clone()).unwrap();
        assert!(d_minus_one.apply(&Poly::one()).is_zero());
        assert_eq!(
            d_minus_one.apply(&Poly::x()),
            RationalFunction::from_poly(Poly::one())
        );
        // f = p(x+h)/p(x) annihilates p.
        let p = Poly::x();
        let f = RationalFunction::new(p.shift(&h), p.clone());
        let op = DifferenceOperator::new(vec![f], h.clone()).unwrap();
        assert!(op.apply(&p).is_zero());
        // (∂ - x)(∂ - 1) = ∂^2 - (1+x)∂ + x.
        let op = DifferenceOperator::new(
            vec![
                RationalFunction::from_poly(Poly::x()),
                RationalFunction::one(),
            ],
            h,
        )
        .unwrap();
        let nf = op.normal_form();
        assert!(nf[0].is_one());
        assert_eq!(nf[1], RationalFunction::from_poly(poly(&[(-1, 1), (-1, 1)])));
        assert_eq!(nf[2], RationalFunction::from_poly(Poly::x()));
    }

    #[test]
    fn operator_is_population_invariant() {
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let atlas =
            crate::reproduction::population_atlas(&data, &PolyTuple::ones(2), None).unwrap();
        let forms: Vec<_> = atlas
            .representatives
            .values()
            .map(|t| fundamental_operator(&data, t).unwrap().normal_form())
            .collect();
        assert!(forms.len() >= 5);
        for f in &forms[1..] {
            assert_eq!(f, &forms[0]);
        }
    }

    #[test]
    fn generating_morphism_round_trip() {
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let tuple = PolyTuple::new(vec![
            poly(&[(1, 1), (9, 1), (1, 1)]),
            poly(&[(5, 1), (1, 1)]),
        ])
        .unwrap();
        let space = fundamental_basis(&data, &tuple).unwrap();
        let frame = t_polynomials(&data);
        let flag = Flag::from_adjusted_basis(space.basis().to_vec(), Rational::one()).unwrap();
        let recovered = generating_morphism(&flag, &frame).unwrap();
        assert_eq!(&recovered, &tuple);

        // The flag (1 ⊂ span{1,x}) of C_2[x] maps to (1, 1).
        let flag = Flag::from_adjusted_basis(
            vec![Poly::one(), Poly::x(), Poly::monomial(2, Rational::one())],
            Rational::one(),
        )
        .unwrap();
        let tuple = generating_morphism(&flag, &FrameSeq::trivial(2, Rational::one())).unwrap();
        assert_eq!(tuple, PolyTuple::ones(2));
    }

    #[test]
    fn bruhat_positions() {
        let h = Rational::one();
        let basis = vec![Poly::one(), Poly::x(), Poly::monomial(2, Rational::one())];
        let reference = Flag::from_adjusted_basis(basis.clone(), h.clone()).unwrap();
        let id = bruhat_position(&reference, &reference).unwrap();
        assert_eq!(id, vec![1, 2, 3]);
        let reversed = Flag::from_adjusted_basis(
            vec![basis[2].clone(), basis[1].clone(), basis[0].clone()],
            h.clone(),
        )
        .unwrap();
        assert_eq!(bruhat_position(&reversed, &reference).unwrap(), vec![3, 2, 1]);
        // Degree-(1,0) member of the trivial population against the degree flag.
        let member = Flag::from_adjusted_basis(
            vec![Poly::x(), Poly::one(), Poly::monomial(2, Rational::one())],
            h,
        )
        .unwrap();
        assert_eq!(bruhat_position(&member, &reference).unwrap(), vec![2, 1, 3]);
    }

    #[test]
    fn schubert_positions_of_low_degree_space() {
        for d in [4usize, 6] {
            let space = c2x(1);
            let at_inf = schubert_position(&space, None, d).unwrap();
            assert_eq!(at_inf.a, vec![d - 2, d - 2, d - 2]);
            let at_zero = schubert_position(&space, Some(&q(0, 1)), d).unwrap();
            assert_eq!(at_zero.a, vec![0, 0, 0]);
            // dim Gr(3, C_d[x]) = 3(d - 2).
            assert_eq!(at_inf.codimension() + at_zero.codimension(), 3 * (d - 2));
        }
    }

    #[test]
    fn expected_ramification_examples() {
        // n=0 sl_3 degrees (0,0): at infinity (d-2, d-2, d-2).
        let data = InitialData::trivial(RootKind::A, 2, Rational::one());
        let (finite, at_inf) = expected_ramification(&data, &[0, 0], 5).unwrap();
        assert!(finite.is_empty());
        assert_eq!(at_inf.a, vec![3, 3, 3]);

        // n=1 sl_2, Lambda=(2), special shifts b=(-2): a(z_1) = (2, 0).
        let data = InitialData::new(
            RootKind::A,
            1,
            Rational::one(),
            vec![q(0, 1)],
            vec![vec![2]],
            vec![vec![q(0, 1)]],
        )
        .unwrap()
        .with_special_shifts();
        let (finite, at_inf) = expected_ramification(&data, &[0], 3).unwrap();
        assert_eq!(finite[0].a, vec![2, 0]);
        assert_eq!(at_inf.a, vec![2, 0]);
    }

    #[test]
    fn measured_ramification_matches_predicted() {
        // sl_2 with Lambda = (2) and special shifts: build the fundamental
        // space and compare measured against predicted positions.
        let data = InitialData::new(
            RootKind::A,
            1,
            Rational::one(),
            vec![q(0, 1)],
            vec![vec![2]],
            vec![vec![q(0, 1)]],
        )
        .unwrap()
        .with_special_shifts();
        let space = fundamental_basis(&data, &PolyTuple::ones(1)).unwrap();
        let d = 3;
        let (finite, at_inf) = expected_ramification(&data, &[0], d).unwrap();
        let measured_inf = schubert_position(&space, None, d).unwrap();
        assert_eq!(measured_inf.a, at_inf.a);
        let measured_zero = schubert_position(&space, Some(&data.z[0]), d).unwrap();
        assert_eq!(measured_zero.a, finite[0].a);
    }
}
