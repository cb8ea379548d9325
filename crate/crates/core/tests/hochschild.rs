use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minop::hochschild::{
    algebras, bracket, circle, hochschild_differential, is_maurer_cartan, random_homogeneous, AInfinityStructure,
    Cochain, GradedSpace, Status,
};
use minop::homology::dense_rank;
use minop::{scalar, Scalar};

type Table = BTreeMap<(Vec<usize>, usize), Scalar>;

fn ordinary(c: &Cochain, k: usize) -> Table {
    c.entries().into_iter().filter(|(ins, _, _)| ins.len() == k).map(|(i, o, q)| ((i, o), q)).collect()
}

/// Classical ungraded composition `Σ_i (-1)^{(i-1)(q-1)} f(…, g(…), …)` on ordinary coefficients.
fn classical_circle(f: &Table, p: usize, g: &Table, q: usize) -> Table {
    let mut out = Table::new();
    for ((fin, fo), fq) in f {
        for i in 0..p {
            for ((gin, go), gq) in g {
                if *go != fin[i] {
                    continue;
                }
                let mut ins = fin[..i].to_vec();
                ins.extend_from_slice(gin);
                ins.extend_from_slice(&fin[i + 1..]);
                let s = scalar::parity((i * (q + 1)) as i64);
                *out.entry((ins, *fo)).or_insert_with(Scalar::zero) += s * fq * gq;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn random_arity(rng: &mut ChaCha8Rng, space: &Arc<GradedSpace>, k: usize, cap: usize) -> Cochain {
    let mut c = Cochain::zero(space, cap, true);
    for _ in 0..3 {
        let ins: Vec<usize> = (0..k).map(|_| rng.gen_range(0..space.dim())).collect();
        c.add_entry(ins, rng.gen_range(0..space.dim()), &scalar::int(rng.gen_range(-2..=2)));
    }
    c
}

#[test]
fn circle_matches_classical_formula_on_ungraded_algebra() {
    let space = algebras::dual_numbers().space().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut signs: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for _ in 0..200 {
        let (p, q) = (rng.gen_range(1..=3), rng.gen_range(0..=3));
        let f = random_arity(&mut rng, &space, p, 6);
        let g = random_arity(&mut rng, &space, q, 6);
        let ours = ordinary(&circle(&f, &g).unwrap(), p + q - 1);
        let theirs = classical_circle(&ordinary(&f, p), p, &ordinary(&g, q), q);
        if theirs.is_empty() {
            assert!(ours.is_empty());
            continue;
        }
        let s = if ours == theirs {
            1
        } else {
            let neg: Table = theirs.iter().map(|(k, v)| (k.clone(), -v.clone())).collect();
            assert_eq!(ours, neg, "p = {p}, q = {q}");
            -1
        };
        assert_eq!(*signs.entry((p, q)).or_insert(s), s, "inconsistent sign for p = {p}, q = {q}");
    }
    // the suspended convention differs from the classical one by (-1)^{(p-1)(q-1)}
    for (&(p, q), &s) in &signs {
        assert_eq!(s, if (p + 1) * (q + 1) % 2 == 0 { 1 } else { -1 }, "p = {p}, q = {q}");
    }
}

#[test]
fn associator_detects_associativity() {
    let mm = circle(&algebras::dual_numbers().m, &algebras::dual_numbers().m).unwrap();
    assert!(mm.is_zero());
    let bad = algebras::non_associative().m;
    let mm = circle(&bad, &bad).unwrap();
    assert_eq!(mm.status(3), Status::Nonzero);
    let z = Cochain::zero(bad.space(), 4, true);
    assert!(circle(&bad, &z).unwrap().is_zero());
    assert!(is_maurer_cartan(&z).holds);
}

#[test]
fn bracket_of_m_with_itself() {
    for m in [algebras::dual_numbers(), algebras::ternary()] {
        assert!(bracket(&m.m, &m.m).unwrap().is_zero());
        // m has total degree 2, so [m, m] = 2 m ∘ m
        let twice = circle(&m.m, &m.m).unwrap().scaled(&scalar::int(2));
        assert!(bracket(&m.m, &m.m).unwrap().agrees_with(&twice));
    }
}

fn sampled_triples(m: &AInfinityStructure, seed: u64, count: usize) -> Vec<(Cochain, Cochain, Cochain)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = m.space().clone();
    let mut out = Vec::new();
    while out.len() < count {
        let mut gen = || {
            let d = rng.gen_range(-1..=3);
            random_homogeneous(&mut rng, &s, 5, &[0, 1, 2, 3], d, 0.5)
        };
        let t = (gen(), gen(), gen());
        if t.0.degree().is_some() && t.1.degree().is_some() && t.2.degree().is_some() {
            out.push(t);
        }
    }
    out
}

#[test]
fn gerstenhaber_identities_on_sampled_triples() {
    for (k, m) in [algebras::dual_numbers(), algebras::ternary()].iter().enumerate() {
        for (f, g, h) in sampled_triples(m, 100 + k as u64, 100) {
            let (df, dg) = (f.degree().unwrap(), g.degree().unwrap());
            let s = scalar::parity((df + 1) * (dg + 1));
            let fg = bracket(&f, &g).unwrap();
            assert_eq!(fg.degree().unwrap_or(df + dg - 1), df + dg - 1);
            let gf = bracket(&g, &f).unwrap();
            assert!(fg.agrees_with(&gf.scaled(&-s.clone())), "antisymmetry");
            let lhs = bracket(&f, &bracket(&g, &h).unwrap()).unwrap();
            let rhs = bracket(&fg, &h).unwrap().add_scaled(&bracket(&g, &bracket(&f, &h).unwrap()).unwrap(), &s).unwrap();
            assert!(lhs.agrees_with(&rhs), "Jacobi");
            let dd = hochschild_differential(m, &hochschild_differential(m, &f).unwrap()).unwrap();
            assert!(dd.is_zero(), "d_m² ≠ 0");
        }
    }
}

#[test]
fn differential_of_m_vanishes_and_zero_m_is_trivial() {
    for m in [algebras::dual_numbers(), algebras::ternary()] {
        assert!(hochschild_differential(&m, &m.m).unwrap().is_zero());
        let zero = AInfinityStructure::zero(m.space(), 4);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = random_homogeneous(&mut rng, m.space(), 4, &[0, 1, 2], 1, 0.6);
        assert!(hochschild_differential(&zero, &g).unwrap().is_zero());
    }
}

#[test]
fn truncation_never_changes_computed_components() {
    let m = algebras::ternary();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let f = random_homogeneous(&mut rng, m.space(), 6, &[1, 2, 3], 1, 0.5);
        let g = random_homogeneous(&mut rng, m.space(), 6, &[1, 2, 3], 2, 0.5);
        let full = bracket(&f, &g).unwrap();
        let small = bracket(&f.truncated(4), &g.truncated(4)).unwrap();
        for k in 0..=small.cap() {
            if small.status(k) != Status::Unknown {
                assert_eq!(small.component(k), full.component(k), "arity {k}");
            }
        }
    }
}

/// Over the ground field every cochain space is one-dimensional and `d_m` alternates
/// between zero and an isomorphism.
#[test]
fn ground_field_complex() {
    let m = algebras::ground_field();
    let s = m.space().clone();
    let mut ranks = Vec::new();
    for k in 0..=4 {
        let mut e = Cochain::zero(&s, 6, true);
        e.add_entry(vec![0; k], 0, &Scalar::one());
        let d = hochschild_differential(&m, &e).unwrap();
        let row: Vec<Scalar> = vec![d.entries().into_iter().map(|x| x.2).next().unwrap_or_else(Scalar::zero)];
        ranks.push(dense_rank(&[row]));
    }
    assert_eq!(ranks, vec![0, 1, 0, 1, 0]);
}

#[test]
fn a_infinity_structure_validation_and_json() {
    let space = Arc::new(GradedSpace::new(vec!["a".into(), "b".into()], vec![0, 0]).unwrap());
    let mut wrong = Cochain::zero(&space, 3, true);
    wrong.add_entry(vec![0, 0, 0], 1, &Scalar::one());
    assert!(AInfinityStructure::new(wrong, false).is_err());
    let t = algebras::ternary();
    let back = AInfinityStructure::from_json(&serde_json::from_str(&serde_json::to_string(&t.to_json()).unwrap()).unwrap());
    assert_eq!(back.unwrap(), t);
    assert!(GradedSpace::new(vec![], vec![]).is_err());
    assert!(GradedSpace::new(vec!["x".into(), "x".into()], vec![0, 1]).is_err());
}
