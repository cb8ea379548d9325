use std::collections::BTreeSet;

use minop::minimal_operad::MinimalOperad;
use minop::orders::{combined_orders, meta_tree_poset, minimal_element, reconstruct, tail_orders, OrderPair};
use minop::resolution::{basis_p, d_p, degree, generators, psi};
use minop::trees::PlanarTree;

fn single(s: &str) -> OrderPair {
    tail_orders(&psi(&MinimalOperad, &PlanarTree::decode(s).unwrap())).unwrap()
}

#[test]
fn corolla_examples() {
    let p = single("*(1,2)");
    assert_eq!(p.horizontal, [(1, 2)].into());
    assert!(p.vertical.is_empty());
    let q = single("1(2)");
    assert!(q.horizontal.is_empty());
    assert_eq!(q.vertical.len(), 1);
    // the lower tail is below: 2 <_v 1
    assert_eq!(q.vertical, [(2, 1)].into());
    assert_eq!(combined_orders(&p).unwrap(), (vec![1, 2], vec![1, 2]));
}

#[test]
fn order_properties_for_every_generator_up_to_four() {
    for n in 2..=4 {
        for t in generators(&MinimalOperad, n) {
            let p = tail_orders(&t).unwrap();
            p.validate().unwrap_or_else(|e| panic!("{t}: {e}"));
            assert_eq!(p.horizontal.len() + p.vertical.len(), n * (n - 1) / 2, "{t}");
            let (plus, minus) = combined_orders(&p).unwrap();
            for seq in [&plus, &minus] {
                let set: BTreeSet<usize> = seq.iter().copied().collect();
                assert_eq!(set, (1..=n).collect(), "{t}");
            }
            for a in 0..n {
                for b in a + 1..n {
                    let (x, y) = (plus[a], plus[b]);
                    assert!(p.horizontal.contains(&(x, y)) || p.vertical.contains(&(x, y)), "{t}");
                    let (x, y) = (minus[a], minus[b]);
                    assert!(p.horizontal.contains(&(x, y)) || p.vertical.contains(&(y, x)), "{t}");
                }
            }
            assert_eq!(reconstruct(&plus, &minus), p, "{t}");
            let s0 = minimal_element(&p).unwrap();
            assert_eq!(s0, plus[0], "{t}");
            let below_all: Vec<usize> = (1..=n)
                .filter(|&s| (1..=n).all(|u| u == s || p.horizontal.contains(&(s, u)) || p.vertical.contains(&(s, u))))
                .collect();
            assert_eq!(below_all, vec![s0], "{t}");
        }
    }
}

#[test]
fn non_complementary_pairs_are_rejected() {
    let both = OrderPair { n: 2, horizontal: [(1, 2)].into(), vertical: [(1, 2)].into() };
    assert!(both.validate().is_err());
    assert!(combined_orders(&both).is_err());
    let neither = OrderPair { n: 2, horizontal: BTreeSet::new(), vertical: BTreeSet::new() };
    assert!(minimal_element(&neither).is_err());
}

#[test]
fn poset_of_two_tails() {
    let p = meta_tree_poset(2, (i64::MIN, i64::MAX)).unwrap();
    assert_eq!(p.elements.len(), 4);
    // covers frozen from the d_P expansion: each nesting covers both products
    let r = MinimalOperad;
    let all = basis_p(&r, 2);
    let mut expected = Vec::new();
    for (b, t) in all.iter().enumerate() {
        for (s, _) in d_p(&r, t).iter() {
            expected.push((all.iter().position(|x| x == s).unwrap(), b));
        }
    }
    expected.sort_unstable();
    assert_eq!(p.covers, expected);
    assert_eq!(p.covers.len(), 4);
    assert_eq!(p.per_degree, [(0, 2), (-1, 2)].into());
}

#[test]
fn poset_is_graded_and_closed_elements_are_minimal() {
    let p = meta_tree_poset(3, (i64::MIN, i64::MAX)).unwrap();
    let r = MinimalOperad;
    let all = basis_p(&r, 3);
    for &(a, b) in &p.covers {
        assert_eq!(p.degrees[a], p.degrees[b] + 1);
    }
    for (b, t) in all.iter().enumerate() {
        if d_p(&r, t).is_zero() {
            assert!(!p.covers.iter().any(|&(_, y)| y == b), "{t}");
        }
        assert_eq!(p.degrees[b], degree(&r, t));
    }
    let closure = p.closure();
    assert!(closure.iter().all(|&(a, b)| !closure.contains(&(b, a))));
    assert_eq!(closure.len(), p.relation_size);
    let window = meta_tree_poset(3, (-1, 0)).unwrap();
    assert_eq!(window.elements.len(), 24 + 60);
}
