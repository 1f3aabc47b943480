//! Fertility as an exact linear problem, immediate descendants, population
//! atlases, and the rank-one symplectic populations.
//!
//! Fertility of `y` against a right-hand side `r` means solvability of
//! `W(y, v) = r` for a polynomial `v`; this is a finite linear system over
//! the rationals and is decided exactly, with a canonical representative
//! (zero coefficient in degree `deg y`) picked from the solution coset.

use std::collections::{BTreeMap, VecDeque};

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::bethe::{
    verify_critical, weight_at_infinity, InitialData, PolyTuple, RootKind, Weight,
};
use crate::error::Error;
use crate::exactalg::{solve_linear, Matrix, Poly, Rational};
use crate::repcount::{shifted_orbit, RootSystem};
use crate::wronskian::pairwise_w;

/// A point of the descendant pencil: a finite parameter or the identity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum PencilParam {
    Finite(Rational),
    Infinity,
}

/// The deterministic retry schedule `0, 1, -1, 2, -2, ..., 8, -8`.
pub(crate) fn retry_schedule() -> impl Iterator<Item = Rational> {
    std::iter::once(0i64)
        .chain((1..=8).flat_map(|k| [k, -k]))
        .map(Rational::from)
}

/// Solves `W(y, v)(x) = rhs(x)` for a polynomial `v`, exactly.
///
/// Returns the canonical representative of the solution coset: the unique
/// solution whose coefficient in degree `deg y` vanishes. `None` means the
/// tuple is infertile against this right-hand side.
pub fn fertility_solve(y: &Poly, rhs: &Poly, h: &Rational) -> Option<Poly> {
    assert!(!y.is_zero(), "fertility needs a non-zero polynomial");
    assert!(!h.is_zero(), "fertility needs a non-zero step");
    let ly = y.degree().expect("non-zero");
    if rhs.is_zero() {
        return Some(Poly::zero());
    }
    let target = rhs.degree().expect("non-zero") as i64 + 1 - ly as i64;
    if target < 0 {
        return None;
    }
    // Any solution has degree at most max(target, deg y): degrees above
    // deg y are pinned by the degree law, the rest lie in the coset of y.
    let bound = (target as usize).max(ly);
    let rows = ly + bound + 1;
    let mut matrix = Matrix::zero(rows, bound + 1);
    for j in 0..=bound {
        let image = pairwise_w(y, &Poly::monomial(j, Rational::one()), h);
        for r in 0..rows {
            matrix.set(r, j, image.coeff(r));
        }
    }
    let b: Vec<Rational> = (0..rows).map(|r| rhs.coeff(r)).collect();
    let solution = solve_linear(&matrix, &b)?;
    let mut v = Poly::from_coeffs(solution.particular);
    // Canonicalize: remove the y-component so the deg-y coefficient is zero.
    let top = v.coeff(ly);
    if !top.is_zero() {
        v = &v - &y.scale(&(top / y.leading()));
    }
    debug_assert_eq!(&pairwise_w(y, &v, h), rhs);
    Some(v)
}

/// The fertility right-hand side in direction `i` (1-based), kind-aware.
///
/// Type A and the first `N-1` directions of B/C use
/// `T_i(x) y_{i-1}(x+h) y_{i+1}(x)`; the last direction is
/// `T_N(x) y_{N-1}(x+h)^2` for B and `T_N(x) y_{N-1}(x+h) y_N(x+h/2)` for C.
pub fn fertility_rhs(data: &InitialData, tuple: &PolyTuple, i: usize) -> Poly {
    let frame = crate::bethe::t_polynomials(data);
    let t = frame.entry(i).clone();
    let h = &data.h;
    let n = data.rank;
    let prev_shifted = tuple.entry_or_one(i - 1).shift(h);
    match (data.kind, i == n) {
        (RootKind::A, _) | (RootKind::B, false) | (RootKind::C, false) => {
            &(&t * &prev_shifted) * &tuple.entry_or_one(i + 1)
        }
        (RootKind::B, true) => &(&t * &prev_shifted) * &prev_shifted,
        (RootKind::C, true) => {
            let half = h * &Rational::new(1, 2);
            &(&t * &prev_shifted) * &tuple.entry_or_one(n).shift(&half)
        }
    }
}

/// One solved fertility problem: base tuple, direction, canonical partner,
/// and the right-hand side the pair satisfies.
#[derive(Clone, Debug)]
pub struct DescendantFamily {
    pub base: PolyTuple,
    pub direction: usize,
    pub partner: Poly,
    pub rhs: Poly,
}

/// Solves the fertility problem of `tuple` in direction `i`.
pub fn descendant_family(
    data: &InitialData,
    tuple: &PolyTuple,
    i: usize,
) -> Result<DescendantFamily, Error> {
    if i == 0 || i > data.rank || tuple.len() != data.rank {
        return Err(Error::DimensionMismatch(format!(
            "direction {i} out of range for rank {}",
            data.rank
        )));
    }
    let rhs = fertility_rhs(data, tuple, i);
    let partner = fertility_solve(&tuple.entry_or_one(i), &rhs, &data.h)
        .ok_or(Error::Infertile { direction: i })?;
    Ok(DescendantFamily {
        base: tuple.clone(),
        direction: i,
        partner,
        rhs,
    })
}

/// The immediate descendant of `tuple` in direction `i` with pencil
/// parameter `c`.
///
/// `c = Infinity` is the identity descendant for every kind. In the generic
/// directions the new coordinate is the monic normalization of
/// `partner + c * y_i`. In the last direction of type C the pencil is the
/// rank-one symplectic family: `c^2 u_1 + c u_2 + u_3 / 2`, which degenerates
/// to the third basis vector at `c = 0` and back to `y_N` at infinity.
pub fn immediate_descendant(
    data: &InitialData,
    tuple: &PolyTuple,
    i: usize,
    c: &PencilParam,
) -> Result<PolyTuple, Error> {
    if let PencilParam::Infinity = c {
        return Ok(tuple.clone());
    }
    let PencilParam::Finite(c) = c else { unreachable!() };
    if data.kind == RootKind::C && i == data.rank {
        let t = crate::bethe::t_polynomials(data).entry(data.rank)
            * &tuple.entry_or_one(data.rank - 1).shift(&data.h);
        let triple = c1_population(&t, &tuple.entry_or_one(data.rank), &data.h)?;
        let member = &(&triple.u1.scale(&(c * c)) + &triple.u2.scale(c))
            + &triple.u3.scale(&Rational::new(1, 2));
        if member.is_zero() {
            return Err(Error::Infertile { direction: i });
        }
        return tuple.with_entry(i, member);
    }
    let family = descendant_family(data, tuple, i)?;
    let new_entry = &family.partner + &tuple.entry_or_one(i).scale(c);
    if new_entry.is_zero() {
        return Err(Error::Infertile { direction: i });
    }
    tuple.with_entry(i, new_entry)
}

/// The finitely-presented population: one representative per degree vector,
/// with the Weyl word attached to each reached degree vector and the list of
/// shifted-orbit degree vectors the exploration did not reach.
#[derive(Clone, Debug)]
pub struct PopulationAtlas {
    pub data: InitialData,
    pub representatives: BTreeMap<Vec<usize>, PolyTuple>,
    pub weyl_labels: BTreeMap<Vec<usize>, Vec<usize>>,
    pub unreached_orbit_degrees: Vec<Vec<usize>>,
}

impl Serialize for PopulationAtlas {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        fn key(dv: &[usize]) -> String {
            dv.iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(",")
        }
        let reps: BTreeMap<String, &PolyTuple> = self
            .representatives
            .iter()
            .map(|(dv, t)| (key(dv), t))
            .collect();
        let labels: BTreeMap<String, &Vec<usize>> = self
            .weyl_labels
            .iter()
            .map(|(dv, w)| (key(dv), w))
            .collect();
        let unreached: Vec<String> = self.unreached_orbit_degrees.iter().map(|d| key(d)).collect();
        let mut s = serializer.serialize_struct("PopulationAtlas", 3)?;
        s.serialize_field("representatives", &reps)?;
        s.serialize_field("weylLabels", &labels)?;
        s.serialize_field("unreached", &unreached)?;
        s.end()
    }
}

/// Default exploration bound: total label weight plus rank times the largest
/// seed degree, plus slack.
pub fn default_max_degree(data: &InitialData, seed: &PolyTuple) -> usize {
    let total: i64 = (1..=data.rank).map(|i| data.lambda_column_sum(i)).sum();
    let seed_max = seed.degrees().into_iter().max().unwrap_or(0);
    total as usize + data.rank * seed_max + 8
}

/// Breadth-first closure of the reproduction procedure over degree vectors.
///
/// From each stored representative every direction is descended with the
/// canonical parameter `c = 0`; if the canonical partner does not change the
/// degree, the deterministic retry schedule is walked until it does (or the
/// direction is abandoned after 16 attempts). One representative is stored
/// per degree vector; when two explorations meet, the lexicographically
/// smallest serialization wins.
pub fn population_atlas(
    data: &InitialData,
    seed: &PolyTuple,
    max_degree: Option<usize>,
) -> Result<PopulationAtlas, Error> {
    if !verify_critical(data, seed)?.is_critical() {
        return Err(Error::Precondition(
            "population seed must verify as a critical point".into(),
        ));
    }
    let bound = max_degree.unwrap_or_else(|| default_max_degree(data, seed));
    let mut representatives: BTreeMap<Vec<usize>, PolyTuple> = BTreeMap::new();
    let mut queue: VecDeque<PolyTuple> = VecDeque::new();
    representatives.insert(seed.degrees(), seed.clone());
    queue.push_back(seed.clone());
    while let Some(tuple) = queue.pop_front() {
        for i in 1..=data.rank {
            let mut chosen: Option<PolyTuple> = None;
            let old_degree = tuple.degrees()[i - 1];
            for (attempt, c) in retry_schedule().enumerate() {
                if attempt > 16 {
                    break;
                }
                let desc = immediate_descendant(data, &tuple, i, &PencilParam::Finite(c))?;
                if desc.degrees()[i - 1] != old_degree {
                    chosen = Some(desc);
                    break;
                }
            }
            let Some(desc) = chosen else { continue };
            let degrees = desc.degrees();
            if degrees.iter().any(|&d| d > bound) {
                return Err(Error::MaxDegreeExceeded);
            }
            match representatives.get(&degrees) {
                None => {
                    representatives.insert(degrees, desc.clone());
                    queue.push_back(desc);
                }
                Some(existing) => {
                    if desc.canonical_string() < existing.canonical_string() {
                        representatives.insert(degrees, desc);
                    }
                }
            }
        }
    }

    // Independent bookkeeping: match reached degree vectors against the
    // shifted Weyl orbit of the seed's weight at infinity.
    let mut weyl_labels = BTreeMap::new();
    let mut unreached = Vec::new();
    let rs = RootSystem::new(data.kind, data.rank);
    let lambda_inf = weight_at_infinity(data, &seed.degrees())?;
    for (w, wt) in shifted_orbit(&rs, &lambda_inf) {
        match orbit_weight_degrees(data, &rs, &wt) {
            Some(dv) => {
                if representatives.contains_key(&dv) {
                    weyl_labels.insert(dv, w.word);
                } else {
                    unreached.push(dv);
                }
            }
            None => {}
        }
    }
    unreached.sort();
    Ok(PopulationAtlas {
        data: data.clone(),
        representatives,
        weyl_labels,
        unreached_orbit_degrees: unreached,
    })
}

/// Inverts the weight-at-infinity formula: the degree vector whose weight is
/// `wt`, if it exists with non-negative entries.
fn orbit_weight_degrees(data: &InitialData, rs: &RootSystem, wt: &Weight) -> Option<Vec<usize>> {
    let n = data.rank;
    let mut m = Matrix::zero(n, n + 1);
    for r in 0..n {
        for c in 0..n {
            m.set(r, c, Rational::from(rs.cartan_entry(r + 1, c + 1)));
        }
        let rhs = data.lambda_column_sum(r + 1) - wt.0[r];
        m.set(r, n, Rational::from(rhs));
    }
    m.rref();
    let mut degrees = Vec::with_capacity(n);
    for r in 0..n {
        let v = m.get(r, n).to_i64()?;
        if v < 0 {
            return None;
        }
        let mut d = v as usize;
        if data.kind == RootKind::C && r == n - 1 {
            d *= 2;
        }
        degrees.push(d);
    }
    Some(degrees)
}

/// A rank-one symplectic (Witt) triple: `u1` is the seed, and the three
/// pairwise Wronskian relations
/// `W(u1,u2) = u1(x+h/2) T`, `W(u1,u3) = u2(x+h/2) T`,
/// `W(u2,u3) = u3(x+h/2) T` all hold exactly.
#[derive(Clone, Debug)]
pub struct C1Triple {
    pub u1: Poly,
    pub u2: Poly,
    pub u3: Poly,
    pub weight: Poly,
    pub h: Rational,
}

impl C1Triple {
    /// The member `u1 + alpha u2 + alpha^2 u3 / 2` of the population.
    pub fn member(&self, alpha: &Rational) -> Poly {
        &(&self.u1 + &self.u2.scale(alpha))
            + &self.u3.scale(&(&(alpha * alpha) * &Rational::new(1, 2)))
    }

    /// The member at `alpha = infinity`.
    pub fn infinity_member(&self) -> &Poly {
        &self.u3
    }

    /// The Witt basis of the associated 3-dimensional space, with the frame
    /// `(t(x), t(x+h/2))`. The weight must be monic for the frame to be
    /// well-formed.
    pub fn to_witt(&self) -> Result<crate::selfdual::WittBasis, Error> {
        if !self.weight.is_monic() {
            return Err(Error::InvalidData(
                "the weight of a symplectic triple must be monic".into(),
            ));
        }
        let half = &self.h * &Rational::new(1, 2);
        let frame = crate::wronskian::FrameSeq::new(
            vec![self.weight.clone(), self.weight.shift(&half)],
            self.h.clone(),
        )?;
        crate::selfdual::WittBasis::new(
            vec![self.u1.clone(), self.u2.clone(), self.u3.clone()],
            frame,
        )
    }

    /// Projective membership test against the quadratic family.
    pub fn contains(&self, v: &Poly) -> bool {
        if v.is_zero() {
            return false;
        }
        let vm = v.monic();
        if vm == self.u3.monic() {
            return true;
        }
        // Solve v ~ u1 + alpha u2 + alpha^2 u3 / 2 by matching the scale on
        // u1 and scanning the resulting quadratic constraint coefficientwise.
        // Since members are determined by alpha, compare against the member
        // built from each root of the degree-matching equation; exact and
        // small, so a direct scan over candidate alphas from solving two
        // linear coefficient equations suffices.
        let basis = [self.u1.clone(), self.u2.clone(), self.u3.clone()];
        let max_len = basis
            .iter()
            .chain(std::iter::once(&vm))
            .map(|p| p.coeffs().len())
            .max()
            .unwrap_or(1);
        let mut m = Matrix::zero(max_len, 3);
        for (j, b) in basis.iter().enumerate() {
            for r in 0..max_len {
                m.set(r, j, b.coeff(r));
            }
        }
        let rhs: Vec<Rational> = (0..max_len).map(|r| vm.coeff(r)).collect();
        let Some(sol) = solve_linear(&m, &rhs) else {
            return false;
        };
        if !sol.null_basis.is_empty() {
            return false;
        }
        let (c1, c2, c3) = (
            sol.particular[0].clone(),
            sol.particular[1].clone(),
            sol.particular[2].clone(),
        );
        if c1.is_zero() {
            return c2.is_zero(); // scalar multiple of u3 only
        }
        let alpha = &c2 / &c1;
        let expected = &(&alpha * &alpha) * &Rational::new(1, 2) * &c1;
        c3 == expected
    }
}

/// Builds the rank-one symplectic triple over the weight polynomial `t`.
///
/// The seed `y` must be fertile in both directions of the associated
/// rank-two system (the pair `(y(x), y(x+h/2))` with weights
/// `(t(x), t(x+h/2))`) and that pair must be generic; this is the exact
/// criterion for the pair to be a critical point, checked without any root
/// extraction.
pub fn c1_population(t: &Poly, y: &Poly, h: &Rational) -> Result<C1Triple, Error> {
    if h.is_zero() {
        return Err(Error::ZeroStep);
    }
    if t.is_zero() || y.is_zero() {
        return Err(Error::Precondition("weight and seed must be non-zero".into()));
    }
    let half = h * &Rational::new(1, 2);
    let y2 = y.shift(&half);
    let t2 = t.shift(&half);

    // Genericity of the pair (y, y(x+h/2)) for the frame (t, t(x+h/2)).
    let coprime = |a: &Poly, b: &Poly| a.gcd(b).map(|g| g == Poly::one()).unwrap_or(false);
    let generic = (y.is_constant() || coprime(y, &y.derivative()))
        && coprime(y, &y.shift(h))
        && coprime(y, &y2)
        && coprime(y, t)
        && coprime(&y2, &y.shift(h))
        && coprime(&y2, &y2.shift(h))
        && coprime(&y2, &t2);
    if !generic {
        return Err(Error::Precondition(
            "the associated rank-two pair is not generic".into(),
        ));
    }
    // Fertility in both directions of the associated rank-two system.
    let u1 = y.clone();
    let rhs1 = &u1.shift(&half) * t;
    let u2 = fertility_solve(&u1, &rhs1, h).ok_or(Error::Infertile { direction: 1 })?;
    let second_rhs = &t2 * &y.shift(h);
    if fertility_solve(&y2, &second_rhs, h).is_none() {
        return Err(Error::Infertile { direction: 2 });
    }

    let rhs2 = &u2.shift(&half) * t;
    let mut u3 = fertility_solve(&u1, &rhs2, h).ok_or(Error::Infertile { direction: 1 })?;

    // The third relation pins the residual freedom u3 -> u3 + mu/2 * u1.
    let defect = &pairwise_w(&u2, &u3, h) - &(&u3.shift(&half) * t);
    if !defect.is_zero() {
        let scale_poly = &u1.shift(&half) * t;
        let mu = defect
            .exact_div(&scale_poly)
            .filter(Poly::is_constant)
            .ok_or(Error::NotC1Consistent)?;
        let mu = mu.coeff(0);
        u3 = &u3 + &u1.scale(&(&mu * &Rational::new(1, 2)));
    }
    // Full verification of the three relations.
    let ok = pairwise_w(&u1, &u2, h) == &u1.shift(&half) * t
        && pairwise_w(&u1, &u3, h) == &u2.shift(&half) * t
        && pairwise_w(&u2, &u3, h) == &u3.shift(&half) * t;
    if !ok {
        return Err(Error::NotC1Consistent);
    }
    Ok(C1Triple {
        u1,
        u2,
        u3,
        weight: t.clone(),
        h: h.clone(),
    })
}
