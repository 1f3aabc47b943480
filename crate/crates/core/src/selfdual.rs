//! h-dual spaces, selfduality, the canonical bilinear form, Witt bases,
//! isotropic flags, B/C folding and the one-parameter symmetry actions.
//!
//! The dual of an `(N+1)`-dimensional space is spanned by the divided
//! Wronskians of its `N`-subsets; a space is h-selfdual when its dual is its
//! own shift by `-(N-1)h/2`. Selfdual spaces carry a canonical bilinear
//! form, symmetric in odd dimension and skew in even dimension, and admit
//! Witt bases pinned by the mirrored divided-Wronskian identities.

use serde::Serialize;

use crate::bethe::{InitialData, PolyTuple, RootKind};
use crate::error::Error;
use crate::exactalg::{solve_linear, Matrix, Poly, Rational};
use crate::fundamental::{Flag, PolySpace};
use crate::reproduction::PencilParam;
use crate::wronskian::{divided_wronskian, FrameSeq};

/// The dual frame `T†_i(x) = T_{N+1-i}(x + (i-1)h)`.
pub fn dual_frame(frame: &FrameSeq) -> FrameSeq {
    let n = frame.len();
    let h = frame.h().clone();
    let entries: Vec<Poly> = (1..=n)
        .map(|i| {
            frame
                .entry(n + 1 - i)
                .shift(&(&h * &Rational::from((i - 1) as i64)))
        })
        .collect();
    FrameSeq::new(entries, h).expect("dual frame entries stay monic")
}

/// The h-dual space: the span of the divided Wronskians of all `N`-subsets
/// of the basis. Errors if the frame does not divide or the dual dimension
/// collapses.
pub fn dual_space(space: &PolySpace, frame: &FrameSeq) -> Result<PolySpace, Error> {
    let dim = space.dim();
    if dim < 2 {
        return Err(Error::DimensionMismatch(
            "duals need dimension at least 2".into(),
        ));
    }
    if frame.len() + 1 != dim {
        return Err(Error::DimensionMismatch(
            "frame length must be one less than the dimension".into(),
        ));
    }
    let mut duals = Vec::with_capacity(dim);
    for omit in 0..dim {
        let subset: Vec<Poly> = space
            .basis()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != omit)
            .map(|(_, p)| p.clone())
            .collect();
        let w = divided_wronskian(&subset, frame).ok_or_else(|| {
            Error::Precondition("frame does not divide the subset Wronskians".into())
        })?;
        duals.push(w);
    }
    PolySpace::new(duals, space.h().clone()).map_err(|_| Error::DualDimensionDefect)
}

/// Whether `V† = V(x - (N-1)h/2)`, checked by exact span comparison after a
/// fast frame-constraint test.
pub fn is_selfdual(space: &PolySpace, frame: &FrameSeq) -> Result<bool, Error> {
    let dim = space.dim();
    if frame.len() + 1 != dim {
        return Err(Error::DimensionMismatch(
            "frame length must be one less than the dimension".into(),
        ));
    }
    let n = dim - 1;
    let h = space.h();
    let half_span = Rational::new((n as i64) - 1, 2);
    // Frame constraint: T_i(x) = T_{N+1-i}(x + (i-1)h - (N-1)h/2).
    for i in 1..=n {
        let shift = h * &(Rational::from((i as i64) - 1) - &half_span);
        if frame.entry(i) != &frame.entry(n + 1 - i).shift(&shift) {
            return Ok(false);
        }
    }
    let dual = dual_space(space, frame)?;
    let shifted = space.shift(&-(h * &half_span));
    Ok(dual.eq_span(&shifted))
}

/// The canonical bilinear form of a selfdual space, as a Gram matrix in the
/// space's own basis order.
#[derive(Clone, Debug, Serialize)]
pub struct BilinearForm {
    pub gram: Matrix,
}

impl BilinearForm {
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// Equality up to one global non-zero rational scalar.
    pub fn eq_up_to_scalar(&self, other: &Matrix) -> bool {
        if self.gram.nrows() != other.nrows() || self.gram.ncols() != other.ncols() {
            return false;
        }
        let dim = self.dim();
        let mut scale: Option<Rational> = None;
        for i in 0..dim {
            for j in 0..dim {
                let a = self.gram.get(i, j);
                let b = other.get(i, j);
                match (a.is_zero(), b.is_zero()) {
                    (true, true) => continue,
                    (true, false) | (false, true) => return false,
                    (false, false) => {
                        let r = b / a;
                        match &scale {
                            None => scale = Some(r),
                            Some(s) => {
                                if *s != r {
                                    return false;
                                }
                            }
                        }
                    }
                }
            }
        }
        scale.is_some()
    }
}

/// Gram matrix and the full divided Wronskian constant of a basis, with the
/// pairing evaluated through the dual decomposition. The selfduality of the
/// span is assumed, not re-checked.
fn gram_in_basis(basis: &[Poly], frame: &FrameSeq) -> Result<(Matrix, Rational), Error> {
    let dim = basis.len();
    let n = dim - 1;
    let h = frame.h();
    let omega_poly = divided_wronskian(basis, frame).ok_or_else(|| {
        Error::Precondition("frame does not divide the full Wronskian".into())
    })?;
    if !omega_poly.is_constant() || omega_poly.is_zero() {
        return Err(Error::Precondition(
            "full divided Wronskian must be a non-zero constant".into(),
        ));
    }
    let omega = omega_poly.coeff(0);
    let back_shift = -(h * &Rational::new((n as i64) - 1, 2));
    // v_k = W†(basis minus k-th)(x - (N-1)h/2)
    let mut dual_vectors = Vec::with_capacity(dim);
    for omit in 0..dim {
        let subset: Vec<Poly> = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != omit)
            .map(|(_, p)| p.clone())
            .collect();
        let w = divided_wronskian(&subset, frame).ok_or_else(|| {
            Error::Precondition("frame does not divide the subset Wronskians".into())
        })?;
        dual_vectors.push(w.shift(&back_shift));
    }
    // Express each basis vector in the dual vectors.
    let width = dual_vectors
        .iter()
        .chain(basis.iter())
        .map(|p| p.coeffs().len())
        .max()
        .unwrap_or(1);
    let mut m = Matrix::zero(width, dim);
    for (k, v) in dual_vectors.iter().enumerate() {
        for r in 0..width {
            m.set(r, k, v.coeff(r));
        }
    }
    let mut coords = Vec::with_capacity(dim);
    for b in basis {
        let rhs: Vec<Rational> = (0..width).map(|r| b.coeff(r)).collect();
        let sol = solve_linear(&m, &rhs).ok_or(Error::NotSelfdual)?;
        if !sol.null_basis.is_empty() {
            return Err(Error::DualDimensionDefect);
        }
        coords.push(sol.particular);
    }
    // (b_j, b_m) = c_{m,j} * (-1)^{j-1} * omega.
    let mut gram = Matrix::zero(dim, dim);
    for j in 0..dim {
        let sign = if j % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        let factor = &sign * &omega;
        for mcol in 0..dim {
            gram.set(j, mcol, &coords[mcol][j] * &factor);
        }
    }
    Ok((gram, omega))
}

/// The canonical bilinear form. The space must be h-selfdual; the parity law
/// (symmetric in odd dimension, skew in even) is asserted on the result.
pub fn canonical_form(space: &PolySpace, frame: &FrameSeq) -> Result<BilinearForm, Error> {
    if !is_selfdual(space, frame)? {
        return Err(Error::NotSelfdual);
    }
    let (gram, _) = gram_in_basis(space.basis(), frame)?;
    let odd = space.dim() % 2 == 1;
    if odd && !gram.is_symmetric() {
        return Err(Error::Precondition(
            "canonical form violates the odd-dimension symmetry law".into(),
        ));
    }
    if !odd && !gram.is_skew_symmetric() {
        return Err(Error::Precondition(
            "canonical form violates the even-dimension skew law".into(),
        ));
    }
    Ok(BilinearForm { gram })
}

/// Witt condition: `u_i(x) = W†(u_1,...,omit u_{N+2-i},...,u_{N+1})(x - (N-1)h/2)`
/// for every `i`, exactly.
pub fn check_witt(basis: &[Poly], frame: &FrameSeq) -> bool {
    let dim = basis.len();
    if dim < 2 || frame.len() + 1 != dim {
        return false;
    }
    let n = dim - 1;
    let back_shift = -(frame.h() * &Rational::new((n as i64) - 1, 2));
    for i in 1..=dim {
        let omit = dim - i; // 0-based index of u_{N+2-i}
        let subset: Vec<Poly> = basis
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != omit)
            .map(|(_, p)| p.clone())
            .collect();
        let Some(w) = divided_wronskian(&subset, frame) else {
            return false;
        };
        if w.shift(&back_shift) != basis[i - 1] {
            return false;
        }
    }
    true
}

/// A basis satisfying the Witt identities, together with its frame.
#[derive(Clone, Debug, Serialize)]
pub struct WittBasis {
    pub basis: Vec<Poly>,
    pub frame: FrameSeq,
}

impl WittBasis {
    pub fn new(basis: Vec<Poly>, frame: FrameSeq) -> Result<Self, Error> {
        if !check_witt(&basis, &frame) {
            return Err(Error::WittNormalizationFailed);
        }
        Ok(WittBasis { basis, frame })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn h(&self) -> &Rational {
        self.frame.h()
    }
}

/// Rescales a flag-adjusted basis with exactly antidiagonal Gram into a Witt
/// basis. The scalar system has a finite set of solutions over the
/// rationals; the candidate with the lexicographically least serialization
/// that passes the Witt check is returned.
fn witt_scalar_normalize(basis: &[Poly], frame: &FrameSeq) -> Result<Vec<Poly>, Error> {
    let dim = basis.len();
    let (gram, omega) = gram_in_basis(basis, frame)?;
    for j in 0..dim {
        for k in 0..dim {
            let anti = j + k == dim - 1;
            if anti && gram.get(j, k).is_zero() {
                return Err(Error::WittNormalizationFailed);
            }
            if !anti && !gram.get(j, k).is_zero() {
                return Err(Error::WittNormalizationFailed);
            }
        }
    }
    // d_i = (-1)^(dim - i) * omega / g_i with g_i the antidiagonal entry in
    // column i; a rescaling u_i = gamma_i w_i is Witt iff
    // gamma_i gamma_{dim+1-i} = P d_i with P the product of all gammas.
    let d: Vec<Rational> = (1..=dim)
        .map(|i| {
            let g = gram.get(dim - i, i - 1).clone();
            let sign = if (dim - i) % 2 == 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            &(&sign * &omega) / &g
        })
        .collect();
    let pairs = dim / 2;
    let mut p_candidates: Vec<Rational> = Vec::new();
    if dim % 2 == 0 {
        let prod_inv = d[..pairs]
            .iter()
            .fold(Rational::one(), |acc, v| acc / v);
        if pairs == 1 {
            if d[0].is_one() {
                p_candidates.push(Rational::one());
            }
        } else {
            let exponent = (pairs - 1) as u32;
            if let Some(root) = prod_inv.nth_root_exact(exponent) {
                p_candidates.push(root.clone());
                if exponent % 2 == 0 {
                    p_candidates.push(-root);
                }
            }
        }
    } else {
        let m = pairs; // 0-based middle index
        let prod: Rational = d[..pairs]
            .iter()
            .fold(Rational::one(), |acc, v| acc * v);
        let val = Rational::one() / (&d[m] * &(&prod * &prod));
        let exponent = (2 * pairs - 1) as u32;
        if let Some(root) = val.nth_root_exact(exponent) {
            p_candidates.push(root);
        }
    }
    let mut best: Option<Vec<Poly>> = None;
    for p in p_candidates {
        let mut gamma = vec![Rational::one(); dim];
        for i in 0..pairs {
            gamma[dim - 1 - i] = &p * &d[i];
        }
        if dim % 2 == 1 {
            let m = pairs;
            let head = d[..pairs].iter().fold(Rational::one(), |acc, v| acc / v);
            let gm = p.pow(1 - pairs as i32) * head;
            // Consistency with the middle equation.
            if &gm * &gm != &p * &d[m] {
                continue;
            }
            gamma[m] = gm;
        }
        let candidate: Vec<Poly> = basis
            .iter()
            .zip(gamma.iter())
            .map(|(w, g)| w.scale(g))
            .collect();
        if check_witt(&candidate, frame) {
            let better = match &best {
                None => true,
                Some(b) => {
                    key_string(&candidate) < key_string(b)
                }
            };
            if better {
                best = Some(candidate);
            }
        }
    }
    best.ok_or(Error::WittNormalizationFailed)
}

fn key_string(basis: &[Poly]) -> String {
    basis
        .iter()
        .map(|p| {
            let coeffs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
            format!("[{}]", coeffs.join(","))
        })
        .collect::<Vec<_>>()
        .join(";")
}

/// Constructs a Witt basis of a selfdual space: the degree-echelon flag is
/// taken (it is isotropic for the spaces produced by the pipeline), its Gram
/// is reduced to exact antidiagonal form by unipotent triangular moves, and
/// the remaining scalar normalization is solved exactly.
pub fn witt_basis(space: &PolySpace, frame: &FrameSeq) -> Result<WittBasis, Error> {
    if !is_selfdual(space, frame)? {
        return Err(Error::NotSelfdual);
    }
    let dim = space.dim();
    let mut basis = space.echelon_basis();
    let (mut gram, _) = gram_in_basis(&basis, frame)?;
    // The zero region above the antidiagonal is the isotropy of the degree
    // flag; without it no triangular reduction can succeed.
    for j in 0..dim {
        for k in 0..dim {
            if j + k < dim - 1 && !gram.get(j, k).is_zero() {
                return Err(Error::WittNormalizationFailed);
            }
        }
    }
    // Clear everything below the antidiagonal by congruence with unipotent
    // lower-triangular moves (which keep the flag and omega fixed).
    for _sweep in 0..dim * dim {
        let mut dirty = false;
        for i in 1..=dim {
            for j in 1..=i {
                if j + i < dim + 2 {
                    continue;
                }
                let e = gram.get(j - 1, i - 1).clone();
                if e.is_zero() {
                    continue;
                }
                dirty = true;
                let k = dim + 1 - j; // correction index, k < i
                let anti = gram.get(j - 1, k - 1).clone();
                let lambda = if j == i {
                    &e / &(&anti * &Rational::from(2))
                } else {
                    &e / &anti
                };
                // Congruence update: column i -= lambda column k, then row.
                for r in 0..dim {
                    let v = gram.get(r, i - 1) - &(gram.get(r, k - 1) * &lambda);
                    gram.set(r, i - 1, v);
                }
                for c in 0..dim {
                    let v = gram.get(i - 1, c) - &(gram.get(k - 1, c) * &lambda);
                    gram.set(i - 1, c, v);
                }
                basis[i - 1] = &basis[i - 1] - &basis[k - 1].scale(&lambda);
            }
        }
        if !dirty {
            break;
        }
    }
    let final_basis = witt_scalar_normalize(&basis, frame)?;
    WittBasis::new(final_basis, frame.clone())
}

/// Isotropy of a flag in a selfdual space, decided by two independent
/// routes that must agree: the mirrored prefix-Wronskian proportionality,
/// and the orthogonality pattern of the Gram matrix.
pub fn is_isotropic_flag(flag: &Flag, frame: &FrameSeq) -> Result<bool, Error> {
    let dim = flag.dim();
    if dim < 2 || frame.len() + 1 != dim {
        return Err(Error::DimensionMismatch(
            "flag and frame dimensions are inconsistent".into(),
        ));
    }
    let n = dim - 1;
    let h = frame.h();
    let mut proportional = true;
    for i in 1..=n {
        let lhs = divided_wronskian(&flag.basis()[..i], frame)
            .ok_or(Error::FlagFrameIncompatible)?;
        let rhs = divided_wronskian(&flag.basis()[..dim - i], frame)
            .ok_or(Error::FlagFrameIncompatible)?;
        let shift = h * &(Rational::from((i as i64) - 1) - &Rational::new((n as i64) - 1, 2));
        let rhs = rhs.shift(&shift);
        if lhs.is_zero() || rhs.is_zero() {
            return Err(Error::FlagFrameIncompatible);
        }
        let scale = &lhs.leading() / &rhs.leading();
        if lhs != rhs.scale(&scale) {
            proportional = false;
            break;
        }
    }
    let (gram, _) = gram_in_basis(flag.basis(), frame)?;
    let mut orthogonal = true;
    'outer: for j in 0..dim {
        for k in 0..dim {
            if j + k < dim - 1 && !gram.get(j, k).is_zero() {
                orthogonal = false;
                break 'outer;
            }
        }
    }
    if proportional != orthogonal {
        return Err(Error::InvalidData(
            "isotropy criteria disagree; inputs violate a precondition".into(),
        ));
    }
    Ok(proportional)
}

/// `(y_1, ..., y_N) -> (y_1, ..., y_N, y_{N-1}(x+h), ..., y_1(x+(N-1)h))`.
pub fn fold_bn(tuple: &PolyTuple, h: &Rational) -> PolyTuple {
    let n = tuple.len();
    let mut entries: Vec<Poly> = tuple.entries().to_vec();
    for i in 1..n {
        entries.push(
            tuple
                .entry_or_one(n - i)
                .shift(&(h * &Rational::from(i as i64))),
        );
    }
    PolyTuple::new(entries).expect("folded entries stay non-zero")
}

/// `(y_1, ..., y_N) -> (y_1, ..., y_N, y_N(x+h/2), ..., y_1(x+(N-1/2)h))`.
/// The last entry of the input must have even degree.
pub fn fold_cn(tuple: &PolyTuple, h: &Rational) -> Result<PolyTuple, Error> {
    let n = tuple.len();
    if tuple.degrees()[n - 1] % 2 != 0 {
        return Err(Error::OddSymplecticDegree);
    }
    let mut entries: Vec<Poly> = tuple.entries().to_vec();
    for i in 1..=n {
        let shift = h * &(Rational::from(i as i64) - Rational::new(1, 2));
        entries.push(tuple.entry_or_one(n + 1 - i).shift(&shift));
    }
    Ok(PolyTuple::new(entries).expect("folded entries stay non-zero"))
}

/// Lifts B/C initial data to the type-A data of the folded system: labels
/// are mirrored and the shifts satisfy the selfduality frame constraint
/// (`b^{(2N-i),A} = b^{(i)} + (N-i)` for B, with an extra half step for C).
pub fn lift_data(data: &InitialData) -> Result<InitialData, Error> {
    let n = data.rank;
    match data.kind {
        RootKind::A => Err(Error::InvalidData("data is already of type A".into())),
        RootKind::B => {
            let rank_a = 2 * n - 1;
            let lambda = data
                .z
                .iter()
                .enumerate()
                .map(|(s, _)| {
                    (1..=rank_a)
                        .map(|i| data.lambda[s][i.min(2 * n - i) - 1])
                        .collect()
                })
                .collect();
            let b = data
                .z
                .iter()
                .enumerate()
                .map(|(s, _)| {
                    (1..=rank_a)
                        .map(|i| {
                            if i <= n {
                                data.b[s][i - 1].clone()
                            } else {
                                let k = 2 * n - i;
                                &data.b[s][k - 1] + &Rational::from((n - k) as i64)
                            }
                        })
                        .collect()
                })
                .collect();
            InitialData::new(RootKind::A, rank_a, data.h.clone(), data.z.clone(), lambda, b)
        }
        RootKind::C => {
            let rank_a = 2 * n;
            let lambda = data
                .z
                .iter()
                .enumerate()
                .map(|(s, _)| {
                    (1..=rank_a)
                        .map(|i| {
                            let idx = if i <= n { i } else { 2 * n + 1 - i };
                            data.lambda[s][idx - 1]
                        })
                        .collect()
                })
                .collect();
            let b = data
                .z
                .iter()
                .enumerate()
                .map(|(s, _)| {
                    (1..=rank_a)
                        .map(|i| {
                            if i <= n {
                                data.b[s][i - 1].clone()
                            } else {
                                let k = 2 * n + 1 - i;
                                &data.b[s][k - 1]
                                    + &(Rational::from((n - k) as i64) + Rational::new(1, 2))
                            }
                        })
                        .collect()
                })
                .collect();
            InitialData::new(RootKind::A, rank_a, data.h.clone(), data.z.clone(), lambda, b)
        }
    }
}

/// The one-parameter symmetry action on a Witt basis in direction `i`.
///
/// Finite parameters add multiples of neighbours at the mirrored positions
/// (with the quadratic middle term in the C case); infinity swaps them. The
/// displayed transformation keeps the Gram antidiagonal, and the exact Witt
/// normalization is restored by the scalar solve when needed; the output is
/// always verified.
pub fn one_param_action(
    witt: &WittBasis,
    i: usize,
    c: &PencilParam,
    kind: RootKind,
) -> Result<WittBasis, Error> {
    let dim = witt.dim();
    let n = match kind {
        RootKind::B => {
            if dim % 2 != 0 {
                return Err(Error::DimensionMismatch(
                    "B-type actions need even dimension".into(),
                ));
            }
            dim / 2
        }
        RootKind::C => {
            if dim % 2 != 1 {
                return Err(Error::DimensionMismatch(
                    "C-type actions need odd dimension".into(),
                ));
            }
            (dim - 1) / 2
        }
        RootKind::A => {
            return Err(Error::InvalidData(
                "the symmetry actions are defined for B and C".into(),
            ))
        }
    };
    if i == 0 || i > n {
        return Err(Error::DimensionMismatch(format!(
            "direction {i} out of range for {n} symmetry directions"
        )));
    }
    let u = &witt.basis;
    let mut out = u.clone();
    match (kind, c) {
        (RootKind::B, PencilParam::Finite(c)) => {
            out[i - 1] = &u[i - 1] + &u[i].scale(c);
            if i < n {
                // positions 2N+1-i and 2N+2-i (1-based)
                out[2 * n - i] = &u[2 * n - i] + &u[2 * n + 1 - i].scale(c);
            }
        }
        (RootKind::B, PencilParam::Infinity) => {
            out.swap(i - 1, i);
            if i < n {
                out.swap(2 * n - i, 2 * n + 1 - i);
            }
        }
        (RootKind::C, PencilParam::Finite(c)) => {
            if i < n {
                out[i - 1] = &u[i - 1] + &u[i].scale(c);
                // positions 2N+2-i and 2N+3-i (1-based)
                out[2 * n + 1 - i] = &u[2 * n + 1 - i] + &u[2 * n + 2 - i].scale(c);
            } else {
                let half_sq = &(c * c) * &Rational::new(1, 2);
                out[n - 1] = &(&u[n - 1] + &u[n].scale(c)) + &u[n + 1].scale(&half_sq);
                out[n] = &u[n] + &u[n + 1].scale(c);
            }
        }
        (RootKind::C, PencilParam::Infinity) => {
            if i < n {
                out.swap(i - 1, i);
                out.swap(2 * n + 1 - i, 2 * n + 2 - i);
            } else {
                out.swap(n - 1, n + 1);
            }
        }
        (RootKind::A, _) => unreachable!(),
    }
    if check_witt(&out, &witt.frame) {
        return WittBasis::new(out, witt.frame.clone());
    }
    let renormalized = witt_scalar_normalize(&out, &witt.frame)?;
    WittBasis::new(renormalized, witt.frame.clone())
}

/// The generating morphism of a B/C population: the tuple of divided
/// Wronskians of basis prefixes, monic-normalized.
pub fn bc_generating_morphism(witt: &WittBasis, kind: RootKind) -> Result<PolyTuple, Error> {
    let dim = witt.dim();
    let n = match kind {
        RootKind::B => dim / 2,
        RootKind::C => (dim - 1) / 2,
        RootKind::A => {
            return Err(Error::InvalidData(
                "the folded morphism is defined for B and C".into(),
            ))
        }
    };
    if n == 0 {
        return Err(Error::DimensionMismatch("empty folded tuple".into()));
    }
    let mut entries = Vec::with_capacity(n);
    for i in 1..=n {
        let w = divided_wronskian(&witt.basis[..i], &witt.frame)
            .ok_or(Error::FlagFrameIncompatible)?;
        if w.is_zero() {
            return Err(Error::FlagFrameIncompatible);
        }
        entries.push(w);
    }
    PolyTuple::new(entries)
}
