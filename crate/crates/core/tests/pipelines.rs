//! Cross-module integration: flags to tuples and back, Bruhat/degree
//! correspondence, the folded-operator factor displays, and the
//! representation-theoretic duality bridge.

use bethe_core::bethe::{
    t_polynomials, verify_critical, InitialData, PolyTuple, RootKind, Weight,
};
use bethe_core::exactalg::{Poly, Rational, RationalFunction};
use bethe_core::fundamental::{
    bruhat_position, fundamental_basis, fundamental_operator, generating_morphism, Flag,
};
use bethe_core::repcount::{partition_to_labels, tensor_multiplicity_many, RootSystem};
use bethe_core::reproduction::population_atlas;
use bethe_core::selfdual::lift_data;
use bethe_core::wronskian::FrameSeq;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn poly(coeffs: &[(i64, i64)]) -> Poly {
    Poly::from_coeffs(coeffs.iter().map(|&(n, d)| q(n, d)).collect())
}

/// One generic member per degree vector: population members need not be
/// generic (coordinates may share roots), so the stored representatives are
/// refined by scanning their descendant pencils.
fn generic_members(
    data: &InitialData,
    atlas: &bethe_core::reproduction::PopulationAtlas,
) -> std::collections::BTreeMap<Vec<usize>, PolyTuple> {
    use bethe_core::reproduction::{immediate_descendant, PencilParam};
    let mut out = std::collections::BTreeMap::new();
    let consider = |tuple: &PolyTuple, out: &mut std::collections::BTreeMap<_, _>| {
        if bethe_core::bethe::is_generic(data, tuple).unwrap() {
            out.entry(tuple.degrees()).or_insert_with(|| tuple.clone());
        }
    };
    let mut frontier: Vec<PolyTuple> = atlas.representatives.values().cloned().collect();
    for _depth in 0..3 {
        let mut next = Vec::new();
        for tuple in &frontier {
            consider(tuple, &mut out);
            for i in 1..=data.rank {
                for c in [0i64, 1, -1, 2, -2, 3, -3] {
                    if let Ok(desc) = immediate_descendant(
                        data,
                        tuple,
                        i,
                        &PencilParam::Finite(Rational::from(c)),
                    ) {
                        consider(&desc, &mut out);
                        next.push(desc);
                    }
                }
            }
        }
        if out.len() == atlas.representatives.len() {
            break;
        }
        frontier = next;
    }
    out
}

#[test]
fn atlas_degrees_match_bruhat_positions() {
    // The six members of the trivial rank-two population land in the six
    // Bruhat cells against the degree flag, bijectively, with cell
    // dimensions (inversion counts) 0, 1, 1, 2, 2, 3.
    let data = InitialData::trivial(RootKind::A, 2, Rational::one());
    let atlas = population_atlas(&data, &PolyTuple::ones(2), None).unwrap();
    let members = generic_members(&data, &atlas);
    assert_eq!(members.len(), 6, "a generic member per degree vector");
    let reference = Flag::from_adjusted_basis(
        vec![Poly::one(), Poly::x(), Poly::monomial(2, Rational::one())],
        Rational::one(),
    )
    .unwrap();
    let mut words = Vec::new();
    for tuple in members.values() {
        let space = fundamental_basis(&data, tuple).unwrap();
        let flag =
            Flag::from_adjusted_basis(space.basis().to_vec(), Rational::one()).unwrap();
        words.push(bruhat_position(&flag, &reference).unwrap());
    }
    words.sort();
    words.dedup();
    assert_eq!(words.len(), 6, "six distinct Bruhat cells expected");
    let mut inversions: Vec<usize> = words
        .iter()
        .map(|w| {
            let mut count = 0;
            for i in 0..w.len() {
                for j in i + 1..w.len() {
                    if w[i] > w[j] {
                        count += 1;
                    }
                }
            }
            count
        })
        .collect();
    inversions.sort();
    assert_eq!(inversions, vec![0, 1, 1, 2, 2, 3]);
}

#[test]
fn flags_generate_critical_points() {
    // Spot check of the flag-to-population isomorphism: flags of C_2[x]
    // produce tuples that verify as critical points whenever generic.
    let data = InitialData::trivial(RootKind::A, 2, Rational::one());
    let frame = t_polynomials(&data);
    let bases = [
        vec![Poly::one(), Poly::x(), Poly::monomial(2, Rational::one())],
        vec![
            poly(&[(1, 1), (9, 1), (1, 1)]),
            poly(&[(0, 1), (7, 2), (1, 2)]),
            poly(&[(3, 1), (0, 1), (1, 1)]),
        ],
        vec![
            poly(&[(5, 1), (1, 1)]),
            poly(&[(2, 1), (0, 1), (1, 1)]),
            Poly::one(),
        ],
    ];
    let mut verified = 0;
    for basis in bases {
        let flag = Flag::from_adjusted_basis(basis, Rational::one()).unwrap();
        let tuple = generating_morphism(&flag, &frame).unwrap();
        let verdict = verify_critical(&data, &tuple).unwrap();
        if bethe_core::bethe::is_generic(&data, &tuple).unwrap() {
            assert!(verdict.is_critical(), "generic image not critical: {tuple:?}");
            verified += 1;
        }
    }
    assert!(verified >= 2);
}

#[test]
fn round_trip_through_the_generating_morphism() {
    // tuple -> adjusted basis -> tuple, exactly, over a generic member of
    // every degree vector.
    let data = InitialData::trivial(RootKind::A, 2, Rational::one());
    let frame = t_polynomials(&data);
    let atlas = population_atlas(&data, &PolyTuple::ones(2), None).unwrap();
    for tuple in generic_members(&data, &atlas).values() {
        let space = fundamental_basis(&data, tuple).unwrap();
        let flag = Flag::from_adjusted_basis(space.basis().to_vec(), Rational::one()).unwrap();
        let recovered = generating_morphism(&flag, &frame).unwrap();
        assert_eq!(&recovered, tuple);
    }
}

/// The displayed factored form of the folded B-type operator, transcribed
/// literally, for data without ramification points (all T_i = 1).
fn b_display_factors(tuple: &PolyTuple, h: &Rational) -> Vec<RationalFunction> {
    let n = tuple.len();
    let at = |i: usize, mult: i64| -> Poly {
        tuple.entry_or_one(i).shift(&(h * &Rational::from(mult)))
    };
    let mut factors = Vec::new();
    for i in (1..=n).rev() {
        let f = RationalFunction::new(at(n - i, i as i64 + 1), at(n - i, i as i64))
            * RationalFunction::new(at(n + 1 - i, i as i64 - 1), at(n + 1 - i, i as i64));
        factors.push(f);
    }
    for i in 1..=n {
        let f = RationalFunction::new(at(n + 1 - i, 1), at(n + 1 - i, 0))
            * RationalFunction::new(at(n - i, 0), at(n - i, 1));
        factors.push(f);
    }
    factors
}

/// The displayed factored form of the folded C-type operator, transcribed
/// literally, for data without ramification points.
fn c_display_factors(tuple: &PolyTuple, h: &Rational) -> Vec<RationalFunction> {
    let n = tuple.len();
    let at_half = |i: usize, twice_mult: i64| -> Poly {
        tuple
            .entry_or_one(i)
            .shift(&(h * &Rational::new(twice_mult, 2)))
    };
    let mut factors = Vec::new();
    for i in (1..=n).rev() {
        let f = RationalFunction::new(
            at_half(n - i, 2 * i as i64 + 3),
            at_half(n - i, 2 * i as i64 + 1),
        ) * RationalFunction::new(
            at_half(n + 1 - i, 2 * i as i64 - 1),
            at_half(n + 1 - i, 2 * i as i64 + 1),
        );
        factors.push(f);
    }
    factors.push(
        RationalFunction::new(at_half(n, 3), at_half(n, 1))
            * RationalFunction::new(at_half(n, 0), at_half(n, 2)),
    );
    for i in 1..=n {
        let f = RationalFunction::new(at_half(n + 1 - i, 2), at_half(n + 1 - i, 0))
            * RationalFunction::new(at_half(n - i, 0), at_half(n - i, 2));
        factors.push(f);
    }
    factors
}

#[test]
fn folded_operator_matches_the_displayed_factors() {
    let h = Rational::one();
    // B_2 instance with rational roots.
    let bdata = InitialData::trivial(RootKind::B, 2, h.clone());
    let tuple = PolyTuple::new(vec![
        Poly::from_roots(&[q(2, 1), q(-1, 1)]),
        Poly::x(),
    ])
    .unwrap();
    let op = fundamental_operator(&bdata, &tuple).unwrap();
    assert_eq!(op.order(), 4);
    assert_eq!(op.factors(), b_display_factors(&tuple, &h).as_slice());

    // C_1 member.
    let cdata = InitialData::trivial(RootKind::C, 1, h.clone());
    let tuple = PolyTuple::new(vec![poly(&[(1, 8), (-1, 1), (1, 1)])]).unwrap();
    let op = fundamental_operator(&cdata, &tuple).unwrap();
    assert_eq!(op.order(), 3);
    assert_eq!(op.factors(), c_display_factors(&tuple, &h).as_slice());

    // The folded operator annihilates the folded fundamental basis.
    let space = fundamental_basis(&cdata, &tuple).unwrap();
    assert_eq!(space.dim(), 3);
    for u in space.basis() {
        assert!(op.apply(u).is_zero());
    }
}

#[test]
fn folded_frames_are_selfdual() {
    // The lift of B/C data satisfies the mirrored frame constraint, so the
    // fundamental space of a folded tuple is h-selfdual.
    let h = Rational::one();
    let cdata = InitialData::trivial(RootKind::C, 1, h.clone());
    let member = PolyTuple::new(vec![poly(&[(1, 8), (-1, 1), (1, 1)])]).unwrap();
    let space = fundamental_basis(&cdata, &member).unwrap();
    let lifted = lift_data(&cdata).unwrap();
    let frame = t_polynomials(&lifted);
    assert!(bethe_core::selfdual::is_selfdual(&space, &frame).unwrap());
    let witt = bethe_core::selfdual::witt_basis(&space, &frame).unwrap();
    assert!(bethe_core::selfdual::check_witt(&witt.basis, &frame));
}

#[test]
fn duality_bridge_between_ramification_and_weights() {
    // Multiplicity of the trivial module in the product over the
    // ramification partitions equals the multiplicity of the weight at
    // infinity in the product of the local weights.
    let a1 = RootSystem::new(RootKind::A, 1);

    // Two points with labels (1, 1), degree 1: lambda_inf = 0, l_1 = 1.
    // Partitions: a(z_s) = (1, 0); a(inf) = (d-1-1, d-1-1) for d = 3.
    let left = tensor_multiplicity_many(
        &a1,
        &[
            partition_to_labels(&[1, 0]),
            partition_to_labels(&[1, 0]),
            partition_to_labels(&[1, 1]),
        ],
        &Weight(vec![0]),
    )
    .unwrap();
    let right = tensor_multiplicity_many(
        &a1,
        &[Weight(vec![1]), Weight(vec![1])],
        &Weight(vec![0]),
    )
    .unwrap();
    assert_eq!(left, right);
    assert_eq!(left, 1);

    // Three points with labels (1, 1, 1), degree 1: lambda_inf = 1, and the
    // degree-flag partition contributes one more copy of L_1.
    let left = tensor_multiplicity_many(
        &a1,
        &[
            partition_to_labels(&[1, 0]),
            partition_to_labels(&[1, 0]),
            partition_to_labels(&[1, 0]),
            partition_to_labels(&[2, 1]),
        ],
        &Weight(vec![0]),
    )
    .unwrap();
    let right = tensor_multiplicity_many(
        &a1,
        &[Weight(vec![1]), Weight(vec![1]), Weight(vec![1])],
        &Weight(vec![1]),
    )
    .unwrap();
    assert_eq!(left, right);
    assert_eq!(left, 2);
}

#[test]
fn lifted_frames_satisfy_the_mirror_constraint_with_points() {
    // A B_2 data set with a ramification point: the lifted frame satisfies
    // T_i(x) = T_{N+1-i}(x + (i-1)h - (N-1)h/2) exactly.
    let data = InitialData::new(
        RootKind::B,
        2,
        q(1, 2),
        vec![q(1, 3)],
        vec![vec![2, 1]],
        vec![vec![q(1, 1), q(-1, 2)]],
    )
    .unwrap();
    let lifted = lift_data(&data).unwrap();
    let frame = t_polynomials(&lifted);
    let n = lifted.rank;
    let h = &lifted.h;
    for i in 1..=n {
        let shift = h * &(Rational::from(i as i64 - 1) - Rational::new(n as i64 - 1, 2));
        assert_eq!(frame.entry(i), &frame.entry(n + 1 - i).shift(&shift));
    }
    let frame_b = t_polynomials(&data);
    for i in 1..=data.rank {
        assert_eq!(frame.entry(i), frame_b.entry(i));
    }
}

#[test]
fn b_population_explores_the_weyl_orbit() {
    // B_2 population from the trivial seed: the shifted orbit of the zero
    // weight under the rank-two hyperoctahedral group has eight elements.
    let data = InitialData::trivial(RootKind::B, 2, Rational::one());
    let atlas = population_atlas(&data, &PolyTuple::ones(2), None).unwrap();
    assert_eq!(atlas.weyl_labels.len() + atlas.unreached_orbit_degrees.len(), 8);
    assert!(atlas.representatives.len() >= atlas.weyl_labels.len());
    for tuple in atlas.representatives.values() {
        let verdict = verify_critical(&data, tuple).unwrap();
        if bethe_core::bethe::is_generic(&data, tuple).unwrap() {
            assert!(verdict.is_critical());
        }
    }
}

#[test]
fn c_population_uses_the_symplectic_pencil() {
    // C_1 population from the trivial seed: degrees move along 2 l_N.
    let data = InitialData::trivial(RootKind::C, 1, Rational::one());
    let atlas = population_atlas(&data, &PolyTuple::ones(1), None).unwrap();
    let degrees: Vec<Vec<usize>> = atlas.representatives.keys().cloned().collect();
    assert_eq!(degrees, vec![vec![0], vec![2]]);
    for tuple in atlas.representatives.values() {
        assert!(verify_critical(&data, tuple).unwrap().is_critical());
    }
}
