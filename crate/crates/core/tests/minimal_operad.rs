use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use minop::minimal_operad::{self as mo, coefficient_of};
use minop::scalar;
use minop::trees::{angles, permutations, PlanarTree};
use minop::Chain;

fn tree(s: &str) -> PlanarTree {
    PlanarTree::decode(s).unwrap()
}

fn binom(a: usize, b: usize) -> usize {
    (0..b).fold(1, |r, k| r * (a - k) / (k + 1))
}

#[test]
fn degree_formulas_agree_and_stay_in_range() {
    for n in 1..=4 {
        for t in mo::basis(n) {
            let d = mo::degree(&t);
            assert_eq!(d, mo::line_degree(&t), "{t}");
            let by_valency: i64 = t
                .vertices()
                .iter()
                .map(|v| if v.label.is_some() { -(v.children.len() as i64) } else { 2 - v.children.len() as i64 })
                .sum();
            assert_eq!(d, by_valency, "{t}");
            assert!((-(n as i64 - 1)..=0).contains(&d), "{t}");
        }
    }
    assert_eq!(mo::degree(&PlanarTree::unit()), 0);
    assert_eq!(mo::degree(&tree("1(2)")), -1);
    assert_eq!(mo::degree(&tree("*(1,2)")), 0);
}

#[test]
fn small_differentials() {
    assert!(mo::differential(&PlanarTree::unit()).is_zero());
    assert!(mo::differential(&tree("*(1,2)")).is_zero());
    let d = mo::differential(&tree("1(2)"));
    let (p12, p21) = (tree("*(1,2)"), tree("*(2,1)"));
    assert_eq!(d.len(), 2);
    let c = coefficient_of(&d, &p12);
    assert!(scalar::is_unit(&c));
    assert_eq!(coefficient_of(&d, &p21), -c.clone());
    // frozen orientation
    assert_eq!(c, scalar::int(1));
}

#[test]
fn d_squared_and_degree_shift_exhaustive() {
    for n in 1..=4 {
        for t in mo::basis(n) {
            let d = mo::differential(&t);
            for (s, q) in d.iter() {
                assert_eq!(mo::degree(s), mo::degree(&t) + 1, "{t} -> {s}");
                assert!(scalar::is_unit(q));
            }
            assert!(mo::differential_chain(&d).is_zero(), "d² ≠ 0 on {t}");
        }
    }
}

#[test]
fn composition_counts_and_degrees() {
    for n1 in 1..=3 {
        for n2 in 1..=4 - n1 {
            for a in mo::basis(n1) {
                for b in mo::basis(n2) {
                    let m = angles(&b).len();
                    for i in 1..=n1 {
                        let v = a.vertices().into_iter().find(|v| v.label == Some(i)).unwrap();
                        let c = mo::compose(&a, i, &b).unwrap();
                        let k = v.children.len();
                        assert_eq!(c.len(), binom(m + k - 1, k), "{a} ∘_{i} {b}");
                        for (s, q) in c.iter() {
                            assert_eq!(s.arity(), n1 + n2 - 1);
                            assert_eq!(mo::degree(s), mo::degree(&a) + mo::degree(&b));
                            assert!(scalar::is_unit(q));
                        }
                    }
                }
            }
        }
    }
    assert_eq!(mo::compose(&tree("1(2)"), 1, &tree("1(2)")).unwrap().len(), 3);
    assert!(mo::compose(&tree("1(2)"), 3, &tree("1")).is_err());
}

fn leibniz_holds(a: &PlanarTree, i: usize, b: &PlanarTree) -> bool {
    let lhs = mo::differential_chain(&mo::compose(a, i, b).unwrap());
    let mut rhs = mo::compose_chains(&mo::differential(a), i, &Chain::basis(b.clone())).unwrap();
    let second = mo::compose_chains(&Chain::basis(a.clone()), i, &mo::differential(b)).unwrap();
    rhs.add_scaled(&second, &scalar::parity(mo::degree(a)));
    lhs == rhs
}

#[test]
fn leibniz_exhaustive_up_to_three_labels() {
    let mut cases = 0;
    for n1 in 1..=3 {
        for n2 in 1..=4 - n1 {
            for a in mo::basis(n1) {
                for b in mo::basis(n2) {
                    for i in 1..=n1 {
                        assert!(leibniz_holds(&a, i, &b), "{a} ∘_{i} {b}");
                        cases += 1;
                    }
                }
            }
        }
    }
    assert_eq!(cases, 237);
}

#[test]
fn leibniz_sampled_at_four_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let bases: Vec<Vec<PlanarTree>> = (0..=4).map(mo::basis).collect();
    for _ in 0..200 {
        let n1 = rng.gen_range(1..=4);
        let n2 = 5 - n1;
        let a = &bases[n1][rng.gen_range(0..bases[n1].len())];
        let b = &bases[n2][rng.gen_range(0..bases[n2].len())];
        let i = rng.gen_range(1..=n1);
        assert!(leibniz_holds(a, i, b), "{a} ∘_{i} {b}");
    }
}

#[test]
fn unit_laws_up_to_four() {
    let e = PlanarTree::unit();
    for n in 1..=4 {
        for t in mo::basis(n) {
            assert_eq!(mo::compose(&e, 1, &t).unwrap(), Chain::basis(t.clone()));
            for i in 1..=n {
                assert_eq!(mo::compose(&t, i, &e).unwrap(), Chain::basis(t.clone()));
            }
        }
    }
}

fn comp(a: &Chain<PlanarTree>, i: usize, b: &Chain<PlanarTree>) -> Chain<PlanarTree> {
    mo::compose_chains(a, i, b).unwrap()
}

#[test]
fn associativity_up_to_four_labels() {
    for (n1, n2, n3) in [(2, 2, 2), (2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 1, 3)] {
        for x in mo::basis(n1) {
            for y in mo::basis(n2) {
                for z in mo::basis(n3) {
                    let (cx, cy, cz) = (Chain::basis(x.clone()), Chain::basis(y.clone()), Chain::basis(z.clone()));
                    let sign = scalar::parity(mo::degree(&y) * mo::degree(&z));
                    for i in 1..=n1 {
                        let xy = comp(&cx, i, &cy);
                        for j in 1..=n1 + n2 - 1 {
                            let lhs = comp(&xy, j, &cz);
                            let rhs = if j < i {
                                comp(&comp(&cx, j, &cz), i + n3 - 1, &cy).scaled(&sign)
                            } else if j < i + n2 {
                                comp(&cx, i, &comp(&cy, j - i + 1, &cz))
                            } else {
                                comp(&comp(&cx, j - n2 + 1, &cz), i, &cy).scaled(&sign)
                            };
                            assert_eq!(lhs, rhs, "({x} ∘_{i} {y}) ∘_{j} {z}");
                        }
                    }
                }
            }
        }
    }
}

/// Where the labels of `x ∘_i y` go when `x` is relabeled by `s` and `y` by `t`.
fn induced(s: &[usize], i: usize, t: &[usize]) -> Vec<usize> {
    let n2 = t.len();
    let lift = |l: usize| if s[l - 1] < s[i - 1] { s[l - 1] } else { s[l - 1] + n2 - 1 };
    let mut out: Vec<usize> = (1..i).map(lift).collect();
    out.extend(t.iter().map(|&j| s[i - 1] + j - 1));
    out.extend((i + 1..=s.len()).map(lift));
    out
}

#[test]
fn equivariance_without_signs() {
    for n1 in 1..=3 {
        for n2 in 1..=4 - n1 {
            for x in mo::basis(n1) {
                for y in mo::basis(n2) {
                    for i in 1..=n1 {
                        let c = mo::compose(&x, i, &y).unwrap();
                        for s in permutations(n1) {
                            for t in permutations(n2) {
                                let lhs = mo::relabel_chain(&c, &induced(&s, i, &t));
                                let rhs =
                                    mo::compose(&x.relabel(&s).unwrap(), s[i - 1], &y.relabel(&t).unwrap()).unwrap();
                                assert_eq!(lhs, rhs, "{x} ∘_{i} {y} under {s:?}, {t:?}");
                            }
                        }
                    }
                }
            }
        }
    }
    for t in mo::basis(3) {
        for s in permutations(3) {
            let r = mo::relabel_chain(&Chain::basis(t.clone()), &s);
            assert_eq!(r, Chain::basis(t.relabel(&s).unwrap()));
        }
    }
}

#[test]
fn chain_json_round_trip() {
    let d = mo::differential(&tree("1(2(3))"));
    let j = serde_json::to_string(&mo::chain_to_json(&d)).unwrap();
    let back: Vec<mo::TermJson> = serde_json::from_str(&j).unwrap();
    assert_eq!(mo::chain_from_json(&back).unwrap(), d);
}
