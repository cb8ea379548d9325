//! The free resolution `P_R` of a dg-operad `R` by meta-trees.
//!
//! A meta-tree has numbered tails, internal vertices of valency at least two, a mark
//! (finite or infinite) on every internal edge, and an element of `R` inscribed at each
//! vertex. Children are kept sorted by their smallest tail and the inscription's label
//! `c` refers to the `c`-th child, which makes the representation canonical.
//!
//! The orientation word lists, in depth-first order, one odd token (degree `-1`) for the
//! finite edge above a vertex followed by the inscription's token. The differential acts
//! as a derivation on this word: inscriptions get `d_R`, and a finite edge `e` becomes
//! `[e infinite] - [e contracted]`.

use std::collections::BTreeMap;
use std::fmt::{self, Debug, Display};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::Chain;
use crate::operad::DgOperad;
use crate::scalar::{self, Scalar};
use crate::signs::koszul_sort_sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mark {
    Finite,
    Infinite,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MetaChild<E> {
    Tail(usize),
    Vertex(Mark, MetaNode<E>),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetaNode<E> {
    pub inscription: E,
    pub children: Vec<MetaChild<E>>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetaTree<E> {
    pub tails: usize,
    pub top: MetaNode<E>,
}

pub type PChainElement<E> = Chain<MetaTree<E>>;

impl<E> MetaChild<E> {
    fn min_tail(&self) -> usize {
        match self {
            MetaChild::Tail(t) => *t,
            MetaChild::Vertex(_, v) => v.min_tail(),
        }
    }
}

impl<E> MetaNode<E> {
    fn min_tail(&self) -> usize {
        self.children.iter().map(MetaChild::min_tail).min().expect("valency ≥ 2")
    }

    fn visit<'a>(&'a self, mark: Option<Mark>, f: &mut impl FnMut(&'a MetaNode<E>, Option<Mark>)) {
        f(self, mark);
        for c in &self.children {
            if let MetaChild::Vertex(m, v) = c {
                v.visit(Some(*m), f);
            }
        }
    }
}

impl<E> MetaTree<E> {
    /// Vertices in depth-first order with the mark of the edge above (`None` at the top).
    pub fn vertices(&self) -> Vec<(&MetaNode<E>, Option<Mark>)> {
        let mut out = Vec::new();
        self.top.visit(None, &mut |v, m| out.push((v, m)));
        out
    }

    pub fn finite_edges(&self) -> usize {
        self.vertices().iter().filter(|(_, m)| *m == Some(Mark::Finite)).count()
    }

    pub fn internal_edges(&self) -> usize {
        self.vertices().len() - 1
    }

    pub fn is_generator(&self) -> bool {
        self.vertices().iter().all(|(_, m)| *m != Some(Mark::Infinite))
    }
}

impl<E: Debug> MetaNode<E> {
    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{:?}}}(", self.inscription)?;
        for (k, c) in self.children.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match c {
                MetaChild::Tail(t) => write!(f, "{t}")?,
                MetaChild::Vertex(m, v) => {
                    f.write_str(if *m == Mark::Finite { "f" } else { "i" })?;
                    v.write(f)?;
                }
            }
        }
        f.write_str(")")
    }
}

impl<E: Debug> Display for MetaTree<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.top.write(f)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetaTreeError {
    #[error("vertex with {0} children; valency must be at least 2")]
    Valency(usize),
    #[error("tails are not exactly 1..={0}")]
    Tails(usize),
    #[error("inscription has arity {0} at a vertex with {1} children")]
    InscriptionArity(usize, usize),
    #[error("bad inscription: {0}")]
    Inscription(String),
    #[error("internal edge without a mark")]
    MissingMark,
}

// ---------------------------------------------------------------------------
// working representation

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Token {
    Edge(usize),
    Insc(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kid {
    Tail(usize),
    Node(usize),
}

#[derive(Clone, Debug)]
struct WNode<E> {
    insc: E,
    kids: Vec<Kid>,
    mark: Option<Mark>,
}

/// Mutable meta-tree with stable vertex ids; vertex 0 is the top.
#[derive(Clone, Debug)]
struct Work<E> {
    tails: usize,
    nodes: Vec<Option<WNode<E>>>,
}

impl<E: Clone> Work<E> {
    fn from_tree(t: &MetaTree<E>) -> Self {
        fn go<E: Clone>(v: &MetaNode<E>, mark: Option<Mark>, nodes: &mut Vec<Option<WNode<E>>>) -> usize {
            let id = nodes.len();
            nodes.push(None);
            let kids = v
                .children
                .iter()
                .map(|c| match c {
                    MetaChild::Tail(t) => Kid::Tail(*t),
                    MetaChild::Vertex(m, w) => Kid::Node(go(w, Some(*m), nodes)),
                })
                .collect();
            nodes[id] = Some(WNode { insc: v.inscription.clone(), kids, mark });
            id
        }
        let mut nodes = Vec::new();
        go(&t.top, None, &mut nodes);
        Self { tails: t.tails, nodes }
    }

    fn node(&self, id: usize) -> &WNode<E> {
        self.nodes[id].as_ref().expect("live vertex")
    }

    fn node_mut(&mut self, id: usize) -> &mut WNode<E> {
        self.nodes[id].as_mut().expect("live vertex")
    }

    fn min_tail(&self, k: Kid) -> usize {
        match k {
            Kid::Tail(t) => t,
            Kid::Node(id) => self.node(id).kids.iter().map(|&c| self.min_tail(c)).min().unwrap(),
        }
    }

    fn parent(&self, id: usize) -> Option<(usize, usize)> {
        self.nodes.iter().enumerate().find_map(|(p, n)| {
            n.as_ref()
                .and_then(|n| n.kids.iter().position(|&k| k == Kid::Node(id)).map(|c| (p, c)))
        })
    }

    /// Word of tokens in depth-first order.
    fn word(&self) -> Vec<Token> {
        fn go<E: Clone>(w: &Work<E>, id: usize, out: &mut Vec<Token>) {
            let n = w.node(id);
            if n.mark == Some(Mark::Finite) {
                out.push(Token::Edge(id));
            }
            out.push(Token::Insc(id));
            for &k in &n.kids {
                if let Kid::Node(c) = k {
                    go(w, c, out);
                }
            }
        }
        let mut out = Vec::new();
        go(self, 0, &mut out);
        out
    }

    /// Sorts children by smallest tail everywhere, relabeling inscriptions to match.
    fn canonicalize<R: DgOperad<Elem = E>>(&mut self, r: &R) {
        for id in 0..self.nodes.len() {
            if self.nodes[id].is_none() {
                continue;
            }
            let kids = self.node(id).kids.clone();
            let mut order: Vec<usize> = (0..kids.len()).collect();
            order.sort_by_key(|&p| self.min_tail(kids[p]));
            if order.iter().enumerate().all(|(a, &b)| a == b) {
                continue;
            }
            // old position p moves to rank[p]
            let mut sigma = vec![0; kids.len()];
            for (rank, &p) in order.iter().enumerate() {
                sigma[p] = rank + 1;
            }
            let n = self.node_mut(id);
            n.insc = r.relabel(&n.insc, &sigma);
            n.kids = order.iter().map(|&p| kids[p]).collect();
        }
    }

    fn to_tree(&self) -> MetaTree<E> {
        fn go<E: Clone>(w: &Work<E>, id: usize) -> MetaNode<E> {
            let n = w.node(id);
            MetaNode {
                inscription: n.insc.clone(),
                children: n
                    .kids
                    .iter()
                    .map(|&k| match k {
                        Kid::Tail(t) => MetaChild::Tail(t),
                        Kid::Node(c) => MetaChild::Vertex(w.node(c).mark.expect("marked edge"), go(w, c)),
                    })
                    .collect(),
            }
        }
        MetaTree { tails: self.tails, top: go(self, 0) }
    }

    fn token_degree<R: DgOperad<Elem = E>>(&self, r: &R, t: Token) -> i64 {
        match t {
            Token::Edge(_) => -1,
            Token::Insc(id) => r.degree(&self.node(id).insc),
        }
    }
}

/// Sign of reordering the tokens `from` (of the given degrees) into the order `to`.
fn reorder<R: DgOperad>(r: &R, w: &Work<R::Elem>, from: &[Token], to: &[Token]) -> i64 {
    debug_assert_eq!(from.len(), to.len());
    let pos: BTreeMap<Token, usize> = to.iter().enumerate().map(|(k, &t)| (t, k)).collect();
    let degrees: Vec<i32> = from.iter().map(|&t| w.token_degree(r, t) as i32).collect();
    let keys: Vec<usize> = from.iter().map(|t| pos[t]).collect();
    koszul_sort_sign(&degrees, &keys) as i64
}

/// Contracts the edge above `w` in `work`, whose current token word (without that edge's
/// token) is `word`. Returns the resulting trees with signs.
fn contract<R: DgOperad>(r: &R, work: &Work<R::Elem>, word: &[Token], w: usize) -> Vec<(MetaTree<R::Elem>, Scalar)> {
    let (u, c) = work.parent(w).expect("non-top vertex");
    let pu = word.iter().position(|&t| t == Token::Insc(u)).unwrap();
    let pw = word.iter().position(|&t| t == Token::Insc(w)).unwrap();
    let between: i64 = word[pu + 1..pw].iter().map(|&t| work.token_degree(r, t)).sum();
    let dw = r.degree(&work.node(w).insc);
    let move_sign = scalar::parity(dw * between);
    let rest: Vec<Token> = word.iter().copied().filter(|&t| t != Token::Insc(w)).collect();

    let xu = work.node(u).insc.clone();
    let xw = work.node(w).insc.clone();
    let mut out = Vec::new();
    for (y, q) in r.compose(&xu, c + 1, &xw).iter() {
        let mut next = work.clone();
        let wkids = next.node(w).kids.clone();
        let un = next.node_mut(u);
        un.insc = y.clone();
        un.kids.splice(c..c + 1, wkids);
        next.nodes[w] = None;
        next.canonicalize(r);
        let sign = reorder(r, &next, &rest, &next.word());
        out.push((next.to_tree(), q * &move_sign * scalar::int(sign)));
    }
    out
}

/// The differential `d_P`.
pub fn d_p<R: DgOperad>(r: &R, t: &MetaTree<R::Elem>) -> PChainElement<R::Elem> {
    let work = Work::from_tree(t);
    let word = work.word();
    let mut out = Chain::zero();
    let mut prefix = 0i64;
    for (pos, &tok) in word.iter().enumerate() {
        let pre = scalar::parity(prefix);
        match tok {
            Token::Insc(id) => {
                for (y, q) in r.differential(&work.node(id).insc).iter() {
                    let mut next = work.clone();
                    next.node_mut(id).insc = y.clone();
                    out.add_term(next.to_tree(), q * &pre);
                }
            }
            Token::Edge(id) => {
                let mut rest = word.clone();
                rest.remove(pos);
                let mut inf = work.clone();
                inf.node_mut(id).mark = Some(Mark::Infinite);
                out.add_term(inf.to_tree(), pre.clone());
                for (tree, q) in contract(r, &work, &rest, id) {
                    out.add_term(tree, -(q * &pre));
                }
            }
        }
        prefix += work.token_degree(r, tok);
    }
    out
}

pub fn d_p_chain<R: DgOperad>(r: &R, c: &PChainElement<R::Elem>) -> PChainElement<R::Elem> {
    c.map_linear(|t| d_p(r, t))
}

/// `Σ_v deg(x_v) - #finite edges`.
pub fn degree<R: DgOperad>(r: &R, t: &MetaTree<R::Elem>) -> i64 {
    t.vertices()
        .iter()
        .map(|(v, m)| r.degree(&v.inscription) - i64::from(*m == Some(Mark::Finite)))
        .sum()
}

/// `φ`: zero on meta-trees with a finite edge, composition of inscriptions otherwise.
pub fn phi<R: DgOperad>(r: &R, t: &MetaTree<R::Elem>) -> Chain<R::Elem> {
    if t.finite_edges() > 0 {
        return Chain::zero();
    }
    let mut current: Chain<MetaTree<R::Elem>> = Chain::basis(t.clone());
    loop {
        let mut next = Chain::zero();
        let mut done = Chain::zero();
        for (tree, q) in current.iter() {
            let work = Work::from_tree(tree);
            if work.nodes.len() == 1 {
                done.add_term(tree.top.inscription.clone(), q.clone());
                continue;
            }
            // contract the last vertex in depth-first order
            let w = work.nodes.len() - 1;
            for (tr, p) in contract(r, &work, &work.word(), w) {
                next.add_term(tr, p * q);
            }
        }
        if next.is_zero() {
            return done;
        }
        // all trees in `current` have the same vertex count, so `done` is empty here
        debug_assert!(done.is_zero());
        current = next;
    }
}

pub fn phi_chain<R: DgOperad>(r: &R, c: &PChainElement<R::Elem>) -> Chain<R::Elem> {
    c.map_linear(|t| phi(r, t))
}

/// `ψ`: the single-vertex meta-tree carrying `x`.
pub fn psi<R: DgOperad>(r: &R, x: &R::Elem) -> MetaTree<R::Elem> {
    let n = r.arity(x);
    MetaTree {
        tails: n,
        top: MetaNode { inscription: x.clone(), children: (1..=n).map(MetaChild::Tail).collect() },
    }
}

/// Projection of a generator onto `R`: the inscription of a single-vertex meta-tree,
/// zero when the meta-tree has internal edges.
pub fn pr<R: DgOperad>(t: &MetaTree<R::Elem>) -> Option<R::Elem> {
    (t.internal_edges() == 0).then(|| t.top.inscription.clone())
}

// ---------------------------------------------------------------------------
// enumeration

/// Unlabeled shape: a vertex is a list of children, each a tail or a sub-vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ShapeNode {
    Tail(usize),
    Vertex(Vec<ShapeNode>),
}

fn set_partitions(items: &[usize]) -> Vec<Vec<Vec<usize>>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let first = items[0];
    let mut out = Vec::new();
    for p in set_partitions(&items[1..]) {
        for k in 0..p.len() {
            let mut q = p.clone();
            q[k].insert(0, first);
            out.push(q);
        }
        let mut q = p.clone();
        q.insert(0, vec![first]);
        out.push(q);
    }
    out
}

fn shapes_on(items: &[usize]) -> Vec<ShapeNode> {
    if items.len() == 1 {
        return vec![ShapeNode::Tail(items[0])];
    }
    let mut out = Vec::new();
    for mut blocks in set_partitions(items) {
        if blocks.len() < 2 {
            continue;
        }
        blocks.sort_by_key(|b| b[0]);
        let options: Vec<Vec<ShapeNode>> = blocks.iter().map(|b| shapes_on(b)).collect();
        let mut acc: Vec<Vec<ShapeNode>> = vec![vec![]];
        for opts in &options {
            acc = acc
                .iter()
                .flat_map(|prefix| {
                    opts.iter().map(move |o| {
                        let mut v = prefix.clone();
                        v.push(o.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(ShapeNode::Vertex));
    }
    out.sort();
    out
}

/// Trees with tails `1..=n` whose internal vertices all have at least two children.
pub fn shapes(n: usize) -> Vec<ShapeNode> {
    if n < 2 {
        return Vec::new();
    }
    shapes_on(&(1..=n).collect::<Vec<_>>())
}

fn decorate<R: DgOperad>(r: &R, s: &ShapeNode, marks: &[Mark]) -> Vec<MetaNode<R::Elem>> {
    let ShapeNode::Vertex(kids) = s else { unreachable!("decorate a vertex") };
    let mut acc: Vec<Vec<MetaChild<R::Elem>>> = vec![vec![]];
    for k in kids {
        let opts: Vec<MetaChild<R::Elem>> = match k {
            ShapeNode::Tail(t) => vec![MetaChild::Tail(*t)],
            v => decorate(r, v, marks)
                .into_iter()
                .flat_map(|node| marks.iter().map(move |&m| MetaChild::Vertex(m, node.clone())))
                .collect(),
        };
        acc = acc
            .iter()
            .flat_map(|prefix| {
                opts.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect();
    }
    let inscriptions: Vec<R::Elem> = r.basis(kids.len()).into_iter().filter(|x| !r.is_unit(x)).collect();
    let mut out = Vec::new();
    for children in acc {
        for x in &inscriptions {
            out.push(MetaNode { inscription: x.clone(), children: children.clone() });
        }
    }
    out
}

/// All meta-trees with `n` tails and both edge marks.
pub fn basis_p<R: DgOperad>(r: &R, n: usize) -> Vec<MetaTree<R::Elem>> {
    enumerate(r, n, &[Mark::Finite, Mark::Infinite])
}

/// Generators of `P`: meta-trees with all internal edges finite.
pub fn generators<R: DgOperad>(r: &R, n: usize) -> Vec<MetaTree<R::Elem>> {
    enumerate(r, n, &[Mark::Finite])
}

fn enumerate<R: DgOperad>(r: &R, n: usize, marks: &[Mark]) -> Vec<MetaTree<R::Elem>> {
    let mut out: Vec<MetaTree<R::Elem>> = shapes(n)
        .iter()
        .flat_map(|s| decorate(r, s, marks))
        .map(|top| MetaTree { tails: n, top })
        .collect();
    out.sort();
    out
}

/// Splits a meta-tree at its infinite edges into generators, each with its own tails
/// renumbered `1..`.
pub fn generator_components<R: DgOperad>(r: &R, t: &MetaTree<R::Elem>) -> Vec<MetaTree<R::Elem>> {
    fn cut<E: Clone>(v: &MetaNode<E>, out: &mut Vec<MetaNode<E>>) -> MetaNode<E> {
        let children = v
            .children
            .iter()
            .map(|c| match c {
                MetaChild::Tail(t) => MetaChild::Tail(*t),
                MetaChild::Vertex(Mark::Finite, w) => MetaChild::Vertex(Mark::Finite, cut(w, out)),
                MetaChild::Vertex(Mark::Infinite, w) => {
                    let comp = cut(w, out);
                    let m = comp.min_tail();
                    out.push(comp);
                    MetaChild::Tail(m)
                }
            })
            .collect();
        MetaNode { inscription: v.inscription.clone(), children }
    }
    let mut pieces = Vec::new();
    let top = cut(&t.top, &mut pieces);
    pieces.push(top);
    pieces
        .into_iter()
        .map(|node| {
            let mut tails = Vec::new();
            node.visit(None, &mut |v, _| {
                for c in &v.children {
                    if let MetaChild::Tail(x) = c {
                        tails.push(*x);
                    }
                }
            });
            tails.sort_unstable();
            let tree = MetaTree { tails: tails.len(), top: node };
            let renumbered = renumber(&tree, &tails);
            let mut w = Work::from_tree(&renumbered);
            w.canonicalize(r);
            w.to_tree()
        })
        .collect()
}

fn renumber<E: Clone>(t: &MetaTree<E>, sorted_tails: &[usize]) -> MetaTree<E> {
    fn go<E: Clone>(v: &MetaNode<E>, f: &impl Fn(usize) -> usize) -> MetaNode<E> {
        MetaNode {
            inscription: v.inscription.clone(),
            children: v
                .children
                .iter()
                .map(|c| match c {
                    MetaChild::Tail(x) => MetaChild::Tail(f(*x)),
                    MetaChild::Vertex(m, w) => MetaChild::Vertex(*m, go(w, f)),
                })
                .collect(),
        }
    }
    let f = |x: usize| sorted_tails.iter().position(|&y| y == x).unwrap() + 1;
    MetaTree { tails: t.tails, top: go(&t.top, &f) }
}

/// Planar order of the tails of an `As` meta-tree, read through the inscriptions.
pub fn leaf_order(t: &MetaTree<Vec<usize>>) -> Vec<usize> {
    fn walk(v: &MetaNode<Vec<usize>>, out: &mut Vec<usize>) {
        for &c in &v.inscription {
            match &v.children[c - 1] {
                MetaChild::Tail(t) => out.push(*t),
                MetaChild::Vertex(_, w) => walk(w, out),
            }
        }
    }
    let mut out = Vec::with_capacity(t.tails);
    walk(&t.top, &mut out);
    out
}

/// Filtration weight of a generator: finite edges, then minus the total complexity of
/// the inscriptions.
pub fn weight<R: DgOperad>(r: &R, t: &MetaTree<R::Elem>) -> (usize, i64) {
    let c: usize = t.vertices().iter().map(|(v, _)| r.complexity(&v.inscription)).sum();
    (t.finite_edges(), -(c as i64))
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetaChildJson {
    Tail { tail: usize },
    Vertex(MetaNodeJson),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetaNodeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mark: Option<Mark>,
    pub inscription: serde_json::Value,
    pub children: Vec<MetaChildJson>,
}

pub fn meta_tree_to_json<R: DgOperad>(r: &R, t: &MetaTree<R::Elem>) -> MetaNodeJson {
    fn go<R: DgOperad>(r: &R, v: &MetaNode<R::Elem>, mark: Option<Mark>) -> MetaNodeJson {
        MetaNodeJson {
            mark,
            inscription: r.elem_to_json(&v.inscription),
            children: v
                .children
                .iter()
                .map(|c| match c {
                    MetaChild::Tail(t) => MetaChildJson::Tail { tail: *t },
                    MetaChild::Vertex(m, w) => MetaChildJson::Vertex(go(r, w, Some(*m))),
                })
                .collect(),
        }
    }
    go(r, &t.top, None)
}

pub fn meta_tree_from_json<R: DgOperad>(r: &R, j: &MetaNodeJson) -> Result<MetaTree<R::Elem>, MetaTreeError> {
    fn go<R: DgOperad>(r: &R, j: &MetaNodeJson, tails: &mut Vec<usize>) -> Result<MetaNode<R::Elem>, MetaTreeError> {
        if j.children.len() < 2 {
            return Err(MetaTreeError::Valency(j.children.len()));
        }
        let inscription = r.elem_from_json(&j.inscription).map_err(MetaTreeError::Inscription)?;
        if r.arity(&inscription) != j.children.len() {
            return Err(MetaTreeError::InscriptionArity(r.arity(&inscription), j.children.len()));
        }
        let mut children = Vec::new();
        for c in &j.children {
            children.push(match c {
                MetaChildJson::Tail { tail } => {
                    tails.push(*tail);
                    MetaChild::Tail(*tail)
                }
                MetaChildJson::Vertex(v) => {
                    MetaChild::Vertex(v.mark.ok_or(MetaTreeError::MissingMark)?, go(r, v, tails)?)
                }
            });
        }
        Ok(MetaNode { inscription, children })
    }
    let mut tails = Vec::new();
    let top = go(r, j, &mut tails)?;
    let n = tails.len();
    tails.sort_unstable();
    if tails != (1..=n).collect::<Vec<_>>() {
        return Err(MetaTreeError::Tails(n));
    }
    let mut w = Work::from_tree(&MetaTree { tails: n, top });
    w.canonicalize(r);
    Ok(w.to_tree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minimal_operad::MinimalOperad;
    use crate::operad::Associative;

    #[test]
    fn shape_counts() {
        // total partition trees: 1, 4, 26
        assert_eq!(shapes(2).len(), 1);
        assert_eq!(shapes(3).len(), 4);
        assert_eq!(shapes(4).len(), 26);
    }

    #[test]
    fn generator_counts() {
        assert_eq!(generators(&MinimalOperad, 2).len(), 4);
        assert_eq!(generators(&Associative, 2).len(), 2);
        assert_eq!(basis_p(&MinimalOperad, 2).len(), 4);
        // corolla 3! + three two-vertex shapes × 2 × 2 × 2 marks
        assert_eq!(basis_p(&Associative, 3).len(), 6 + 3 * 2 * 2 * 2);
    }

    #[test]
    fn left_comb_differential() {
        let a = Associative;
        let t = MetaTree {
            tails: 3,
            top: MetaNode {
                inscription: vec![1, 2],
                children: vec![
                    MetaChild::Vertex(
                        Mark::Finite,
                        MetaNode { inscription: vec![1, 2], children: vec![MetaChild::Tail(1), MetaChild::Tail(2)] },
                    ),
                    MetaChild::Tail(3),
                ],
            },
        };
        let d = d_p(&a, &t);
        assert_eq!(d.len(), 2);
        let mut inf = t.clone();
        if let MetaChild::Vertex(m, _) = &mut inf.top.children[0] {
            *m = Mark::Infinite;
        }
        let corolla = psi(&a, &vec![1, 2, 3]);
        assert_eq!(d.coefficient(&inf), -d.coefficient(&corolla));
        assert!(scalar::is_unit(&d.coefficient(&inf)));
    }

    #[test]
    fn phi_psi() {
        for x in crate::minimal_operad::basis(3) {
            assert_eq!(phi(&MinimalOperad, &psi(&MinimalOperad, &x)), Chain::basis(x.clone()));
        }
    }

    #[test]
    fn json_round_trip() {
        let r = MinimalOperad;
        for t in basis_p(&r, 3) {
            let j = meta_tree_to_json(&r, &t);
            assert_eq!(meta_tree_from_json(&r, &j).unwrap(), t);
        }
    }
}
