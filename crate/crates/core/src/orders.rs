//! Horizontal and vertical orders on the tails of a generator of `P_M`, the complete
//! orders they combine into, and the poset of meta-trees generated by `d_P`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::minimal_operad::MinimalOperad;
use crate::resolution::{basis_p, d_p, degree, MetaChild, MetaNode, MetaTree};
use crate::trees::{Node, PlanarTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("not a generator: meta-tree has an infinite edge")]
    NotGenerator,
    #[error("pair ({0}, {1}) is comparable in {2} of the two orders")]
    NotComplementary(usize, usize, usize),
    #[error("relation is not a strict partial order: {0}")]
    NotPartialOrder(String),
    #[error("no unique minimal element")]
    NoMinimum,
    #[error("window holds {0} meta-trees, above the limit {1}")]
    WindowTooLarge(usize, usize),
}

/// Two strict relations on `1..=n`; `(a, b)` means `a < b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderPair {
    pub n: usize,
    pub horizontal: BTreeSet<(usize, usize)>,
    pub vertical: BTreeSet<(usize, usize)>,
}

fn check_strict_order(rel: &BTreeSet<(usize, usize)>, name: &str) -> Result<(), OrderError> {
    for &(a, b) in rel {
        if a == b {
            return Err(OrderError::NotPartialOrder(format!("{name} is reflexive at {a}")));
        }
        for &(c, d) in rel.range((b, 0)..(b + 1, 0)) {
            debug_assert_eq!(c, b);
            if !rel.contains(&(a, d)) {
                return Err(OrderError::NotPartialOrder(format!("{name}: {a}<{b}<{d} but not {a}<{d}")));
            }
        }
    }
    Ok(())
}

impl OrderPair {
    /// Both relations are strict partial orders and every pair is comparable in exactly one.
    pub fn validate(&self) -> Result<(), OrderError> {
        check_strict_order(&self.horizontal, "horizontal")?;
        check_strict_order(&self.vertical, "vertical")?;
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                let hits = [(a, b), (b, a)]
                    .iter()
                    .map(|p| usize::from(self.horizontal.contains(p)) + usize::from(self.vertical.contains(p)))
                    .sum();
                if hits != 1 {
                    return Err(OrderError::NotComplementary(a, b, hits));
                }
            }
        }
        Ok(())
    }
}

/// Vertex path (child positions from the top) of the vertex labeled `l`.
fn label_path(t: &Node, l: usize, path: &mut Vec<usize>) -> bool {
    if t.label == Some(l) {
        return true;
    }
    for (k, c) in t.children.iter().enumerate() {
        path.push(k);
        if label_path(c, l, path) {
            return true;
        }
        path.pop();
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Relation {
    /// `x` is left of `y`
    Left,
    /// `y` is left of `x`
    Right,
    /// `x` is above `y`
    Above,
    /// `y` is above `x`
    Below,
}

fn relate(t: &PlanarTree, a: usize, b: usize) -> Relation {
    let (mut px, mut py) = (Vec::new(), Vec::new());
    label_path(t.top(), a, &mut px);
    label_path(t.top(), b, &mut py);
    let common = px.iter().zip(&py).take_while(|(x, y)| x == y).count();
    if common == px.len() {
        Relation::Above
    } else if common == py.len() {
        Relation::Below
    } else if px[common] < py[common] {
        Relation::Left
    } else {
        Relation::Right
    }
}

fn tails_below(v: &MetaChild<PlanarTree>) -> BTreeSet<usize> {
    match v {
        MetaChild::Tail(t) => [*t].into(),
        MetaChild::Vertex(_, w) => w.children.iter().flat_map(tails_below).collect(),
    }
}

/// Horizontal and vertical orders carried by a generator of `P_M`.
///
/// For tails `i, j` meeting first at vertex `v`, let `x, y` be the vertices of the
/// inscribed tree `T_v` labeled by the children of `v` containing `i` and `j`. Then
/// `i <_h j` if `x` is left of `y`, and `i <_v j` if `y` is above `x`.
pub fn tail_orders(t: &MetaTree<PlanarTree>) -> Result<OrderPair, OrderError> {
    if !t.is_generator() {
        return Err(OrderError::NotGenerator);
    }
    let mut pair = OrderPair { n: t.tails, horizontal: BTreeSet::new(), vertical: BTreeSet::new() };
    fn walk(v: &MetaNode<PlanarTree>, pair: &mut OrderPair) {
        let blocks: Vec<BTreeSet<usize>> = v.children.iter().map(tails_below).collect();
        for (ca, ba) in blocks.iter().enumerate() {
            for (cb, bb) in blocks.iter().enumerate() {
                if ca == cb {
                    continue;
                }
                let rel = relate(&v.inscription, ca + 1, cb + 1);
                for &i in ba {
                    for &j in bb {
                        match rel {
                            Relation::Left => {
                                pair.horizontal.insert((i, j));
                            }
                            Relation::Below => {
                                pair.vertical.insert((i, j));
                            }
                            Relation::Right | Relation::Above => {}
                        }
                    }
                }
            }
        }
        for c in &v.children {
            if let MetaChild::Vertex(_, w) = c {
                walk(w, pair);
            }
        }
    }
    walk(&t.top, &mut pair);
    Ok(pair)
}

fn total_order(n: usize, less: impl Fn(usize, usize) -> bool) -> Result<Vec<usize>, OrderError> {
    let mut seq: Vec<usize> = (1..=n).collect();
    seq.sort_by(|&a, &b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if less(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    for (k, &a) in seq.iter().enumerate() {
        for &b in &seq[k + 1..] {
            if !less(a, b) || less(b, a) {
                return Err(OrderError::NotPartialOrder(format!("combined order fails on {a}, {b}")));
            }
        }
    }
    Ok(seq)
}

/// The complete orders `<_{1+2}` and `<_{1-2}`, listed from least to greatest.
pub fn combined_orders(p: &OrderPair) -> Result<(Vec<usize>, Vec<usize>), OrderError> {
    p.validate()?;
    let plus = total_order(p.n, |a, b| p.horizontal.contains(&(a, b)) || p.vertical.contains(&(a, b)))?;
    let minus = total_order(p.n, |a, b| p.horizontal.contains(&(a, b)) || p.vertical.contains(&(b, a)))?;
    Ok((plus, minus))
}

/// Recovers the pair: `<_h` is the intersection of the two complete orders, `<_v` the
/// part of `<_{1+2}` reversed by `<_{1-2}`.
pub fn reconstruct(plus: &[usize], minus: &[usize]) -> OrderPair {
    let pos = |s: &[usize]| -> BTreeMap<usize, usize> { s.iter().enumerate().map(|(k, &x)| (x, k)).collect() };
    let (pp, pm) = (pos(plus), pos(minus));
    let n = plus.len();
    let mut out = OrderPair { n, horizontal: BTreeSet::new(), vertical: BTreeSet::new() };
    for a in 1..=n {
        for b in 1..=n {
            if a != b && pp[&a] < pp[&b] {
                if pm[&a] < pm[&b] {
                    out.horizontal.insert((a, b));
                } else {
                    out.vertical.insert((a, b));
                }
            }
        }
    }
    out
}

/// The unique element below every other one in `<_h` or `<_v`.
pub fn minimal_element(p: &OrderPair) -> Result<usize, OrderError> {
    p.validate()?;
    let below_all = |s: usize| {
        (1..=p.n).all(|t| t == s || p.horizontal.contains(&(s, t)) || p.vertical.contains(&(s, t)))
    };
    let found: Vec<usize> = (1..=p.n).filter(|&s| below_all(s)).collect();
    match found.as_slice() {
        [s] => Ok(*s),
        _ => Err(OrderError::NoMinimum),
    }
}

/// The poset on meta-trees of `P_M(n)` generated by "appears in `d_P` of".
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetaTreePoset {
    pub n: usize,
    pub window: (i64, i64),
    pub elements: Vec<String>,
    pub degrees: Vec<i64>,
    /// `(a, b)`: element `a` appears in `d_P` of element `b`, so `a < b`.
    pub covers: Vec<(usize, usize)>,
    pub relation_size: usize,
    pub per_degree: BTreeMap<i64, usize>,
}

impl MetaTreePoset {
    /// The transitive closure, as a list of pairs `a < b`.
    pub fn closure(&self) -> BTreeSet<(usize, usize)> {
        closure(self.elements.len(), &self.covers)
    }
}

fn closure(n: usize, covers: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
    let mut up: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in covers {
        up[a].push(b);
    }
    let mut out = BTreeSet::new();
    for s in 0..n {
        let mut stack = up[s].clone();
        let mut seen = BTreeSet::new();
        while let Some(x) = stack.pop() {
            if seen.insert(x) {
                out.insert((s, x));
                stack.extend(up[x].iter().copied());
            }
        }
    }
    out
}

pub const POSET_LIMIT: usize = 200_000;

pub fn meta_tree_poset(n: usize, window: (i64, i64)) -> Result<MetaTreePoset, OrderError> {
    let r = MinimalOperad;
    let all = basis_p(&r, n);
    let inside: Vec<&MetaTree<PlanarTree>> =
        all.iter().filter(|t| (window.0..=window.1).contains(&degree(&r, t))).collect();
    if inside.len() > POSET_LIMIT {
        return Err(OrderError::WindowTooLarge(inside.len(), POSET_LIMIT));
    }
    let index: BTreeMap<&MetaTree<PlanarTree>, usize> = inside.iter().enumerate().map(|(k, t)| (*t, k)).collect();
    let mut covers = Vec::new();
    for (b, t) in inside.iter().enumerate() {
        for (s, _) in d_p(&r, t).iter() {
            if let Some(&a) = index.get(s) {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    let degrees: Vec<i64> = inside.iter().map(|t| degree(&r, t)).collect();
    let mut per_degree = BTreeMap::new();
    for &d in &degrees {
        *per_degree.entry(d).or_insert(0) += 1;
    }
    let relation_size = closure(inside.len(), &covers).len();
    Ok(MetaTreePoset {
        n,
        window,
        elements: inside.iter().map(|t| t.to_string()).collect(),
        degrees,
        covers,
        relation_size,
        per_degree,
    })
}
