//! The minimal operad `M`: basis, degrees, partial compositions and the differential.
//!
//! A basis tree carries the orientation word `L₂* ⊗ (L₁*)^{E_i} ⊗ L₂^{labels}`. Only the
//! edge factors are odd, so a sign is the parity of the reordering that takes the edge
//! factors produced by an operation to depth-first order of the result. Edges are
//! identified with their lower vertex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::Chain;
use crate::operad::DgOperad;
use crate::scalar::{self, Scalar};
use crate::signs::reorder_sign;
use crate::trees::{enumerate_admissible, monotone_maps, Node, PlanarTree, TreeArena, TreeError, TreeJson};

/// A formal rational combination of basis trees of one arity.
pub type MChainElement = Chain<PlanarTree>;

#[derive(Debug, Error)]
pub enum ComposeError {
    #[error("label {0} does not occur in a tree of arity {1}")]
    NoSuchLabel(usize, usize),
}

/// `Σ_lab (-|v|) + Σ_nonl (2 - |v|)`.
pub fn degree(t: &PlanarTree) -> i64 {
    t.vertices()
        .iter()
        .map(|v| {
            let k = v.children.len() as i64;
            if v.label.is_some() {
                -k
            } else {
                2 - k
            }
        })
        .sum()
}

/// Degree read off the orientation word: `|E_i| + 2 - 2 |V_lab|`.
pub fn line_degree(t: &PlanarTree) -> i64 {
    crate::signs::OrientationWord::for_tree(t).total_degree() as i64
}

/// The homogeneous degree of a chain, `None` if it is zero or mixes degrees.
pub fn homogeneous_degree(c: &MChainElement) -> Option<i64> {
    let mut it = c.basis_elements().map(degree);
    let d = it.next()?;
    it.all(|e| e == d).then_some(d)
}

pub fn basis(n: usize) -> Vec<PlanarTree> {
    enumerate_admissible(n)
}

fn preorder_label_index(t: &TreeArena, label: usize) -> Option<usize> {
    t.nodes.iter().position(|n| n.label == Some(label))
}

/// `T1 ∘_i T2` where `i` is a label of `T1`: sum over non-decreasing maps from the children
/// of the vertex labeled `i` to the angles of `T2`.
pub fn compose(t1: &PlanarTree, i: usize, t2: &PlanarTree) -> Result<MChainElement, ComposeError> {
    let n1 = t1.arity();
    let n2 = t2.arity();
    if i == 0 || i > n1 {
        return Err(ComposeError::NoSuchLabel(i, n1));
    }
    let v1 = t1.vertex_count();
    let base = TreeArena::from_tree(t1, 0);
    let v = preorder_label_index(&base, i).expect("label present");

    // edge word before regluing
    let top2_tag = v1;
    let mut word: Vec<usize> = (1..v1).map(|tag| if tag == v { top2_tag } else { tag }).collect();
    word.extend(v1 + 1..v1 + t2.vertex_count());

    let relabel1 = |l: usize| if l > i { l + n2 - 1 } else { l };
    let orphans = base.nodes[v].children.clone();
    let k = orphans.len();

    let mut template = base.clone();
    for node in &mut template.nodes {
        node.label = node.label.map(relabel1);
    }
    let top2 = template.append(t2.top(), v1);
    let inserted: Vec<usize> = (top2..template.nodes.len()).collect();
    for &u in &inserted {
        template.nodes[u].label = template.nodes[u].label.map(|j| i + j - 1);
    }
    // splice T2 in place of v
    match base.parent_of(v) {
        Some(p) => {
            let slot = template.nodes[p].children.iter().position(|&c| c == v).unwrap();
            template.nodes[p].children[slot] = top2;
        }
        None => template.top = top2,
    }
    let angle_list = template.angles_below(top2);

    let mut out = Chain::zero();
    for beta in monotone_maps(k, angle_list.len()) {
        let mut arena = template.clone();
        for &u in &inserted {
            let old = template.nodes[u].children.clone();
            let mut kids = Vec::with_capacity(old.len() + k);
            for p in 0..=old.len() {
                for (c, &b) in beta.iter().enumerate() {
                    if angle_list[b] == (u, p) {
                        kids.push(orphans[c]);
                    }
                }
                if p < old.len() {
                    kids.push(old[p]);
                }
            }
            arena.nodes[u].children = kids;
        }
        let (tree, tags) = arena.to_tree(n1 + n2 - 1);
        let sign = reorder_sign(&word, &tags[1..]);
        out.add_term(tree, scalar::int(sign as i64));
    }
    Ok(out)
}

/// Splitting a vertex into an upper and a lower one along a new internal edge.
pub fn differential(t: &PlanarTree) -> MChainElement {
    let base = TreeArena::from_tree(t, 0);
    let old_word: Vec<usize> = (1..base.nodes.len()).collect();
    let new_tag = base.nodes.len();
    let mut out = Chain::zero();
    for v in 0..base.nodes.len() {
        let kids = base.nodes[v].children.clone();
        let k = kids.len();
        let label = base.nodes[v].label;
        for a in 0..=k {
            for b in a..=k {
                let inner = b - a;
                let outer = k - inner;
                // (label of upper, label of lower)
                let mut splits: Vec<(Option<usize>, Option<usize>)> = Vec::new();
                match label {
                    None => {
                        if inner >= 2 && outer >= 1 {
                            splits.push((None, None));
                        }
                    }
                    Some(l) => {
                        if outer >= 1 {
                            splits.push((None, Some(l)));
                        }
                        if inner >= 2 {
                            splits.push((Some(l), None));
                        }
                    }
                }
                for (up, down) in splits {
                    let mut arena = base.clone();
                    let d = arena.nodes.len();
                    arena.nodes.push(crate::trees::ArenaNode {
                        label: down,
                        children: kids[a..b].to_vec(),
                        tag: new_tag,
                    });
                    let mut up_kids = kids[..a].to_vec();
                    up_kids.push(d);
                    up_kids.extend_from_slice(&kids[b..]);
                    arena.nodes[v].label = up;
                    arena.nodes[v].children = up_kids;
                    let (tree, tags) = arena.to_tree(t.arity());
                    let mut word = vec![new_tag];
                    word.extend_from_slice(&old_word);
                    let sign = reorder_sign(&word, &tags[1..]);
                    out.add_term(tree, scalar::int(sign as i64));
                }
            }
        }
    }
    out
}

pub fn differential_chain(c: &MChainElement) -> MChainElement {
    c.map_linear(differential)
}

pub fn compose_chains(a: &MChainElement, i: usize, b: &MChainElement) -> Result<MChainElement, ComposeError> {
    let mut out = Chain::zero();
    for (x, p) in a.iter() {
        for (y, q) in b.iter() {
            out.add_scaled(&compose(x, i, y)?, &(p * q));
        }
    }
    Ok(out)
}

pub fn relabel_chain(c: &MChainElement, sigma: &[usize]) -> MChainElement {
    c.iter().map(|(t, q)| (t.relabel_unchecked(sigma), q.clone())).collect()
}

/// The operad `M` as a [`DgOperad`].
#[derive(Clone, Copy, Debug, Default)]
pub struct MinimalOperad;

impl DgOperad for MinimalOperad {
    type Elem = PlanarTree;

    fn name(&self) -> &'static str {
        "M"
    }
    fn basis(&self, n: usize) -> Vec<PlanarTree> {
        basis(n)
    }
    fn arity(&self, x: &PlanarTree) -> usize {
        x.arity()
    }
    fn degree(&self, x: &PlanarTree) -> i64 {
        degree(x)
    }
    fn differential(&self, x: &PlanarTree) -> Chain<PlanarTree> {
        differential(x)
    }
    fn compose(&self, x: &PlanarTree, i: usize, y: &PlanarTree) -> Chain<PlanarTree> {
        compose(x, i, y).expect("label in range")
    }
    fn relabel(&self, x: &PlanarTree, sigma: &[usize]) -> PlanarTree {
        x.relabel_unchecked(sigma)
    }
    fn is_unit(&self, x: &PlanarTree) -> bool {
        *x == PlanarTree::unit()
    }
    fn complexity(&self, x: &PlanarTree) -> usize {
        x.internal_edge_count()
    }
    fn elem_to_json(&self, x: &PlanarTree) -> serde_json::Value {
        serde_json::to_value(x.to_json()).expect("tree json")
    }
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<PlanarTree, String> {
        let j: TreeJson = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        PlanarTree::from_json(&j).map_err(|e| e.to_string())
    }
}

/// One term of the JSON form of an [`MChainElement`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub tree: TreeJson,
}

#[derive(Debug, Error)]
pub enum ChainJsonError {
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Scalar(#[from] scalar::ParseScalarError),
    #[error("terms have different arities ({0} and {1})")]
    MixedArity(usize, usize),
}

pub fn chain_to_json(c: &MChainElement) -> Vec<TermJson> {
    c.iter()
        .map(|(t, q)| TermJson { coeff: scalar::format(q), tree: t.to_json() })
        .collect()
}

pub fn chain_from_json(terms: &[TermJson]) -> Result<MChainElement, ChainJsonError> {
    let mut out = Chain::zero();
    let mut arity = None;
    for term in terms {
        let t = PlanarTree::from_json(&term.tree)?;
        match arity {
            Some(a) if a != t.arity() => return Err(ChainJsonError::MixedArity(a, t.arity())),
            _ => arity = Some(t.arity()),
        }
        out.add_term(t, scalar::parse(&term.coeff)?);
    }
    Ok(out)
}

/// `product(order)` and `label-over-label` shorthands used throughout the tests.
pub fn nesting(upper: usize, lower: usize) -> PlanarTree {
    PlanarTree::new(Node::labeled(upper, vec![Node::leaf(lower)])).expect("two distinct labels")
}

pub fn coefficient_of(c: &MChainElement, t: &PlanarTree) -> Scalar {
    c.coefficient(t)
}
