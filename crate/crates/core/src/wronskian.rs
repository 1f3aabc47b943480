//! Discrete and divided Wronskians.
//!
//! The discrete Wronskian of `g_1, ..., g_s` with step `h` is
//! `det(g_i(x + (j-1)h))`, with the empty Wronskian defined to be 1. The
//! 2x2 case is `W(u, v) = u(x)v(x+h) - u(x+h)v(x)`; that determinant sign
//! convention is used consistently everywhere in this crate.
//!
//! Also here: the frame sequence type (the monic `T_1, ..., T_N` attached to
//! a space of polynomials), divided Wronskians, and an executable suite of
//! Wronskian identities used by the tests and the CLI.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::exactalg::{Poly, Rational};

/// An ordered sequence of monic polynomials `T_1, ..., T_N` with a step.
///
/// Divided Wronskians of `i` functions are divided by the product
/// `U_i(x) = prod_{k=1}^{i-1} prod_{j=1}^{i-k} T_k(x + (j-1)h)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameSeq {
    entries: Vec<Poly>,
    h: Rational,
}

impl FrameSeq {
    pub fn new(entries: Vec<Poly>, h: Rational) -> Result<Self, Error> {
        if h.is_zero() {
            return Err(Error::ZeroStep);
        }
        for t in &entries {
            if t.is_zero() || !t.is_monic() {
                return Err(Error::InvalidData(
                    "frame entries must be monic and non-zero".into(),
                ));
            }
        }
        Ok(FrameSeq { entries, h })
    }

    /// The all-ones frame of the given length.
    pub fn trivial(len: usize, h: Rational) -> Self {
        FrameSeq::new(vec![Poly::one(); len], h).expect("trivial frame")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    /// `T_i`, 1-based.
    pub fn entry(&self, i: usize) -> &Poly {
        &self.entries[i - 1]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    /// The divisor `U_i(x) = prod_{k<i} prod_{j=1}^{i-k} T_k(x+(j-1)h)`.
    pub fn divisor(&self, i: usize) -> Poly {
        let mut u = Poly::one();
        for k in 1..i {
            let t = self.entry(k);
            for j in 1..=(i - k) {
                let shift = &self.h * &Rational::from((j - 1) as i64);
                u = &u * &t.shift(&shift);
            }
        }
        u
    }
}

/// Determinant of a square polynomial matrix by fraction-free (Bareiss)
/// elimination; all divisions are exact.
pub(crate) fn poly_determinant(mut m: Vec<Vec<Poly>>) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut sign_flip = false;
    let mut prev_pivot = Poly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Poly::zero();
            };
            m.swap(k, swap);
            sign_flip = !sign_flip;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev_pivot).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero();
        }
        prev_pivot = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        -det
    } else {
        det
    }
}

/// Discrete Wronskian `W(g_1, ..., g_s)(x) = det(g_i(x + (j-1)h))`.
///
/// The empty Wronskian is 1.
pub fn wronskian(gs: &[Poly], h: &Rational) -> Poly {
    assert!(!h.is_zero(), "wronskian needs a non-zero step");
    let s = gs.len();
    if s == 0 {
        return Poly::one();
    }
    let matrix: Vec<Vec<Poly>> = gs
        .iter()
        .map(|g| {
            (0..s)
                .map(|j| g.shift(&(h * &Rational::from(j as i64))))
                .collect()
        })
        .collect();
    poly_determinant(matrix)
}

/// `W(u, v)(x) = u(x)v(x+h) - u(x+h)v(x)`.
pub fn pairwise_w(u: &Poly, v: &Poly, h: &Rational) -> Poly {
    assert!(!h.is_zero(), "wronskian needs a non-zero step");
    &(u * &v.shift(h)) - &(&u.shift(h) * v)
}

/// Discrete Wronskian divided exactly by the frame divisor `U_i`.
///
/// Returns `None` when the division leaves a remainder, which signals that
/// the inputs do not come from a space with this frame.
pub fn divided_wronskian(gs: &[Poly], frame: &FrameSeq) -> Option<Poly> {
    let w = wronskian(gs, frame.h());
    let u = frame.divisor(gs.len());
    w.exact_div(&u)
}

/// The executable Wronskian identities.
///
/// Each variant evaluates both sides of one identity exactly and reports
/// equality. `ConstantReduction` strips a leading constant 1 into difference
/// quotients; `DeltaExpansion` expands a Wronskian of differences into signed
/// shift products; `CommonFactor` pulls a shared factor out of every slot;
/// `NestedWronskians` and `ComplementaryMinors` are the two composition laws
/// for Wronskians of Wronskians.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum WronskianIdentity {
    ConstantReduction,
    DeltaExpansion,
    CommonFactor,
    NestedWronskians,
    ComplementaryMinors,
}

impl WronskianIdentity {
    pub const ALL: [WronskianIdentity; 5] = [
        WronskianIdentity::ConstantReduction,
        WronskianIdentity::DeltaExpansion,
        WronskianIdentity::CommonFactor,
        WronskianIdentity::NestedWronskians,
        WronskianIdentity::ComplementaryMinors,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            WronskianIdentity::ConstantReduction => "constant-reduction",
            WronskianIdentity::DeltaExpansion => "delta-expansion",
            WronskianIdentity::CommonFactor => "common-factor",
            WronskianIdentity::NestedWronskians => "nested-wronskians",
            WronskianIdentity::ComplementaryMinors => "complementary-minors",
        }
    }
}

fn delta(g: &Poly, h: &Rational) -> Poly {
    &g.shift(h) - g
}

/// Evaluates one Wronskian identity on concrete inputs, exactly.
///
/// `f` is only used by `CommonFactor`; `k` only by the two composition laws
/// (which also require at least one function so that `k <= s`).
pub fn check_identity(
    id: WronskianIdentity,
    gs: &[Poly],
    f: Option<&Poly>,
    k: Option<usize>,
    h: &Rational,
) -> Result<bool, Error> {
    if h.is_zero() {
        return Err(Error::ZeroStep);
    }
    match id {
        WronskianIdentity::ConstantReduction => {
            let mut with_one = vec![Poly::one()];
            with_one.extend_from_slice(gs);
            let lhs = wronskian(&with_one, h);
            let deltas: Vec<Poly> = gs.iter().map(|g| delta(g, h)).collect();
            Ok(lhs == wronskian(&deltas, h))
        }
        WronskianIdentity::DeltaExpansion => {
            let deltas: Vec<Poly> = gs.iter().map(|g| delta(g, h)).collect();
            Ok(wronskian(&deltas, h) == delta_expansion(gs, h))
        }
        WronskianIdentity::CommonFactor => {
            let f = f.ok_or_else(|| {
                Error::DimensionMismatch("common-factor identity needs the factor f".into())
            })?;
            let scaled: Vec<Poly> = gs.iter().map(|g| g * f).collect();
            let mut rhs = wronskian(gs, h);
            for j in 0..gs.len() {
                rhs = &rhs * &f.shift(&(h * &Rational::from(j as i64)));
            }
            Ok(wronskian(&scaled, h) == rhs)
        }
        WronskianIdentity::NestedWronskians => {
            let (s, k) = composition_dims(gs, k)?;
            // V_{s-k+1}(i) = W(g_1, ..., g_{s-k}, g_i)
            let nested: Vec<Poly> = (s - k..=s)
                .map(|i| {
                    let mut args = gs[..s - k].to_vec();
                    args.push(gs[i].clone());
                    wronskian(&args, h)
                })
                .collect();
            let lhs = wronskian(&nested, h);
            let mut rhs = wronskian(gs, h);
            let prefix = wronskian(&gs[..s - k], h);
            for j in 1..=k {
                rhs = &rhs * &prefix.shift(&(h * &Rational::from(j as i64)));
            }
            Ok(lhs == rhs)
        }
        WronskianIdentity::ComplementaryMinors => {
            let (s, k) = composition_dims(gs, k)?;
            // W_s(i) = W(all of gs except g_i); the outer Wronskian runs over
            // the omitted index i = s+1 down to s-k+1 (1-based).
            let minors: Vec<Poly> = (0..=k)
                .map(|t| {
                    let omit = s - t; // 0-based index of g_{s+1-t}
                    let args: Vec<Poly> = gs
                        .iter()
                        .enumerate()
                        .filter(|(idx, _)| *idx != omit)
                        .map(|(_, g)| g.clone())
                        .collect();
                    wronskian(&args, h)
                })
                .collect();
            let lhs = wronskian(&minors, h);
            let prefix = wronskian(&gs[..s - k], h);
            let mut rhs = prefix.shift(&(h * &Rational::from(k as i64)));
            let full = wronskian(gs, h);
            for j in 1..=k {
                rhs = &rhs * &full.shift(&(h * &Rational::from((j - 1) as i64)));
            }
            Ok(lhs == rhs)
        }
    }
}

/// Result of running one identity over a batch of random instances.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: &'static str,
    pub trials: usize,
    pub failures: usize,
}

/// Deterministic randomized battery over all five identities.
///
/// The reduction and common-factor identities run `trials` instances with
/// `s <= max_s` and degrees up to 4; the delta expansion and the two
/// composition laws run 50 instances per shape with `s <= min(3, max_s)`.
/// Steps cycle through `1, 1/2, -2/3`. Everything is exact; any failure is
/// a bug, not a tolerance issue.
pub fn identity_battery(trials: usize, max_s: usize, seed: u64) -> Vec<IdentityReport> {
    let steps = [
        Rational::one(),
        Rational::new(1, 2),
        Rational::new(-2, 3),
    ];
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut reports = Vec::new();

    let mut run = |id: WronskianIdentity,
                   rng: &mut crate::rng::SplitMix64,
                   instances: &mut dyn FnMut(&mut crate::rng::SplitMix64, &Rational) -> bool,
                   count: usize| {
        let mut failures = 0;
        for trial in 0..count {
            let h = &steps[trial % steps.len()];
            if !instances(rng, h) {
                failures += 1;
            }
        }
        reports.push(IdentityReport {
            identity: id.name(),
            trials: count,
            failures,
        });
    };

    let s_cap = max_s.max(1);
    run(
        WronskianIdentity::ConstantReduction,
        &mut rng,
        &mut |rng, h| {
            let s = (rng.next_u64() as usize) % s_cap + 1;
            let gs: Vec<Poly> = (0..s).map(|_| rng.poly(4)).collect();
            check_identity(WronskianIdentity::ConstantReduction, &gs, None, None, h)
                .unwrap_or(false)
        },
        trials,
    );
    run(
        WronskianIdentity::CommonFactor,
        &mut rng,
        &mut |rng, h| {
            let s = (rng.next_u64() as usize) % s_cap + 1;
            let gs: Vec<Poly> = (0..s).map(|_| rng.poly(4)).collect();
            let f = rng.poly(3);
            check_identity(WronskianIdentity::CommonFactor, &gs, Some(&f), None, h)
                .unwrap_or(false)
        },
        trials,
    );
    let small_cap = s_cap.min(3);
    run(
        WronskianIdentity::DeltaExpansion,
        &mut rng,
        &mut |rng, h| {
            let s = (rng.next_u64() as usize) % small_cap + 1;
            let gs: Vec<Poly> = (0..s).map(|_| rng.poly(3)).collect();
            check_identity(WronskianIdentity::DeltaExpansion, &gs, None, None, h)
                .unwrap_or(false)
        },
        50,
    );
    for id in [
        WronskianIdentity::NestedWronskians,
        WronskianIdentity::ComplementaryMinors,
    ] {
        let mut failures = 0;
        let mut count = 0;
        for s in 1..=small_cap {
            for k in 0..=s {
                for trial in 0..50 {
                    let h = &steps[trial % steps.len()];
                    let gs: Vec<Poly> = (0..=s).map(|_| rng.poly(3)).collect();
                    count += 1;
                    if !check_identity(id, &gs, None, Some(k), h).unwrap_or(false) {
                        failures += 1;
                    }
                }
            }
        }
        reports.push(IdentityReport {
            identity: id.name(),
            trials: count,
            failures,
        });
    }
    reports
}

/// Shared dimension check for the two composition identities: `gs` holds
/// `s + 1` functions and `0 <= k <= s`.
fn composition_dims(gs: &[Poly], k: Option<usize>) -> Result<(usize, usize), Error> {
    let k = k.ok_or_else(|| {
        Error::DimensionMismatch("composition identity needs the order k".into())
    })?;
    if gs.is_empty() {
        return Err(Error::DimensionMismatch(
            "composition identity needs at least one function".into(),
        ));
    }
    let s = gs.len() - 1;
    if k > s {
        return Err(Error::DimensionMismatch(format!(
            "composition identity needs k <= s, got k={k}, s={s}"
        )));
    }
    Ok((s, k))
}

/// The signed shift-product expansion of `W(Δg_1, ..., Δg_s)`: an alternating
/// sum of `(s+1)!` terms `prod_i g_i(x + ω_i h)` where `ω` enumerates the
/// bijections onto `{0, ..., s}` minus one omitted value `j`, each term signed
/// by `(-1)^j sgn(ω)`.
fn delta_expansion(gs: &[Poly], h: &Rational) -> Poly {
    let s = gs.len();
    let mut total = Poly::zero();
    for omitted in 0..=s {
        let values: Vec<usize> = (0..=s).filter(|&v| v != omitted).collect();
        for (perm, perm_sign) in permutations_with_sign(&values) {
            let mut term = Poly::one();
            for (g, &offset) in gs.iter().zip(perm.iter()) {
                term = &term * &g.shift(&(h * &Rational::from(offset as i64)));
            }
            let negative = (omitted % 2 == 1) ^ (perm_sign < 0);
            if negative {
                total = &total - &term;
            } else {
                total = &total + &term;
            }
        }
    }
    total
}

/// All orderings of `values` together with the permutation sign relative to
/// the given (sorted) order.
fn permutations_with_sign(values: &[usize]) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut current = values.to_vec();
    permute_rec(&mut current, 0, &mut out);
    out
}

fn permute_rec(current: &mut Vec<usize>, start: usize, out: &mut Vec<(Vec<usize>, i32)>) {
    if start == current.len() {
        let mut inversions = 0;
        for i in 0..current.len() {
            for j in i + 1..current.len() {
                if current[i] > current[j] {
                    inversions += 1;
                }
            }
        }
        out.push((current.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
        return;
    }
    for i in start..current.len() {
        current.swap(start, i);
        permute_rec(current, start + 1, out);
        current.swap(start, i);
    }
}
