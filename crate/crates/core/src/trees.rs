//! Rooted trees: the raw parent-map form, admissible labeled planar trees, their
//! enumeration, angles and relabeling.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// First violated axiom of a candidate [`AbstractTree`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeViolation {
    #[error("vertex partition broken: {0}")]
    PartitionBroken(String),
    #[error("root is not a fixed point of the parent map")]
    RootNotFixed,
    #[error("no cycles violated: vertex {0} never reaches the root")]
    Cycle(usize),
    #[error("tail vertex {0} has a preimage")]
    TailHasPreimage(usize),
    #[error("root must have exactly one child, found {0}")]
    RootChildren(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("label {0} is out of range for arity {1}")]
    LabelOutOfRange(usize, usize),
    #[error("label {0} used more than once")]
    DuplicateLabel(usize),
    #[error("label {0} missing")]
    MissingLabel(usize),
    #[error("not admissible: non-labeled vertex with {0} children")]
    NotAdmissible(usize),
    #[error("cannot parse tree encoding `{0}` at byte {1}")]
    Parse(String, usize),
    #[error("not a permutation of 1..={0}: {1:?}")]
    BadPermutation(usize, Vec<usize>),
}

/// A tree given by a parent map `N` on a finite vertex set.
///
/// Vertices are `0..parent.len()`. `internal` and `tails` must partition the non-root
/// vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractTree {
    pub root: usize,
    pub internal: BTreeSet<usize>,
    pub tails: BTreeSet<usize>,
    pub parent: Vec<usize>,
}

impl AbstractTree {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    /// `|v|`: the number of vertices mapped to `v`, excluding the root's self loop.
    pub fn valency(&self, v: usize) -> usize {
        (0..self.parent.len())
            .filter(|&w| w != self.root && self.parent[w] == v)
            .count()
    }

    pub fn validate(&self) -> Result<(), TreeViolation> {
        let n = self.parent.len();
        if self.root >= n {
            return Err(TreeViolation::PartitionBroken(format!("root {} is not a vertex", self.root)));
        }
        for &v in self.internal.iter().chain(&self.tails) {
            if v >= n {
                return Err(TreeViolation::PartitionBroken(format!("{v} is not a vertex")));
            }
            if v == self.root {
                return Err(TreeViolation::PartitionBroken("root listed as internal or tail".into()));
            }
        }
        if let Some(v) = self.internal.intersection(&self.tails).next() {
            return Err(TreeViolation::PartitionBroken(format!("{v} is both internal and tail")));
        }
        if self.internal.len() + self.tails.len() + 1 != n {
            return Err(TreeViolation::PartitionBroken("some vertex is unclassified".into()));
        }
        if self.parent.iter().any(|&p| p >= n) {
            return Err(TreeViolation::PartitionBroken("parent map leaves the vertex set".into()));
        }
        if self.parent[self.root] != self.root {
            return Err(TreeViolation::RootNotFixed);
        }
        for v in 0..n {
            let mut w = v;
            let mut steps = 0;
            while w != self.root {
                w = self.parent[w];
                steps += 1;
                if steps > n {
                    return Err(TreeViolation::Cycle(v));
                }
            }
        }
        for v in 0..n {
            if v != self.root && self.tails.contains(&self.parent[v]) {
                return Err(TreeViolation::TailHasPreimage(self.parent[v]));
            }
        }
        let root_children = (0..n).filter(|&v| v != self.root && self.parent[v] == self.root).count();
        if root_children != 1 {
            return Err(TreeViolation::RootChildren(root_children));
        }
        Ok(())
    }

    /// Internal edges `(v, N(v))` with both ends internal, keyed by the lower end.
    pub fn internal_edges(&self) -> Vec<(usize, usize)> {
        self.internal
            .iter()
            .filter(|&&v| self.internal.contains(&self.parent[v]))
            .map(|&v| (v, self.parent[v]))
            .collect()
    }

    pub fn tail_edges(&self) -> Vec<(usize, usize)> {
        self.tails.iter().map(|&v| (v, self.parent[v])).collect()
    }

    pub fn root_edge(&self) -> Option<(usize, usize)> {
        (0..self.parent.len())
            .find(|&v| v != self.root && self.parent[v] == self.root)
            .map(|v| (v, self.root))
    }
}

/// A vertex of a planar tree together with its ordered children.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Node {
    pub label: Option<usize>,
    pub children: Vec<Node>,
}

impl Node {
    pub fn labeled(label: usize, children: Vec<Node>) -> Self {
        Self { label: Some(label), children }
    }

    pub fn unlabeled(children: Vec<Node>) -> Self {
        Self { label: None, children }
    }

    pub fn leaf(label: usize) -> Self {
        Self::labeled(label, vec![])
    }

    fn encode_into(&self, out: &mut String) {
        match self.label {
            Some(l) => out.push_str(&l.to_string()),
            None => out.push('*'),
        }
        if !self.children.is_empty() {
            out.push('(');
            for (k, c) in self.children.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                c.encode_into(out);
            }
            out.push(')');
        }
    }

    fn size(&self) -> usize {
        1 + self.children.iter().map(Node::size).sum::<usize>()
    }

    fn preorder<'a>(&'a self, out: &mut Vec<&'a Node>) {
        out.push(self);
        for c in &self.children {
            c.preorder(out);
        }
    }
}

/// An admissible labeled planar tree with labels `1..=arity`.
///
/// The root vertex and its edge are implicit: `top` is the unique child of the root.
/// Equality, ordering and hashing go through the canonical encoding.
#[derive(Clone)]
pub struct PlanarTree {
    top: Node,
    arity: usize,
    encoding: String,
}

impl PartialEq for PlanarTree {
    fn eq(&self, other: &Self) -> bool {
        self.encoding == other.encoding
    }
}
impl Eq for PlanarTree {}
impl PartialOrd for PlanarTree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PlanarTree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.encoding.cmp(&other.encoding)
    }
}
impl Hash for PlanarTree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.encoding.hash(state)
    }
}
impl fmt::Debug for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.encoding)
    }
}
impl fmt::Display for PlanarTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.encoding)
    }
}

impl PlanarTree {
    /// Builds a tree, checking labels are exactly `1..=n` and admissibility.
    pub fn new(top: Node) -> Result<Self, TreeError> {
        let mut labels = Vec::new();
        let mut stack = vec![&top];
        while let Some(v) = stack.pop() {
            match v.label {
                Some(l) => labels.push(l),
                None if v.children.len() < 2 => return Err(TreeError::NotAdmissible(v.children.len())),
                None => {}
            }
            stack.extend(v.children.iter());
        }
        let n = labels.len();
        let mut seen = vec![false; n + 1];
        for &l in &labels {
            if l == 0 || l > n {
                return Err(TreeError::LabelOutOfRange(l, n));
            }
            if seen[l] {
                return Err(TreeError::DuplicateLabel(l));
            }
            seen[l] = true;
        }
        Ok(Self::new_unchecked(top, n))
    }

    pub(crate) fn new_unchecked(top: Node, arity: usize) -> Self {
        let mut encoding = String::new();
        top.encode_into(&mut encoding);
        Self { top, arity, encoding }
    }

    /// `T_e`: one labeled vertex, the unit of the operad.
    pub fn unit() -> Self {
        Self::new_unchecked(Node::leaf(1), 1)
    }

    /// Non-labeled vertex over the labeled leaves in the given order.
    pub fn product(order: &[usize]) -> Self {
        Self::new(Node::unlabeled(order.iter().map(|&l| Node::leaf(l)).collect()))
            .expect("product of a permutation is admissible")
    }

    pub fn top(&self) -> &Node {
        &self.top
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn encoding(&self) -> &str {
        &self.encoding
    }

    pub fn vertex_count(&self) -> usize {
        self.top.size()
    }

    pub fn internal_edge_count(&self) -> usize {
        self.vertex_count() - 1
    }

    /// Internal vertices in depth-first (pre)order; the index in this list is the vertex id
    /// used by [`AngleList`] and by edge orientation factors.
    pub fn vertices(&self) -> Vec<&Node> {
        let mut out = Vec::new();
        self.top.preorder(&mut out);
        out
    }

    pub fn decode(s: &str) -> Result<Self, TreeError> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let node = parse_node(s, bytes, &mut pos)?;
        if pos != bytes.len() {
            return Err(TreeError::Parse(s.to_string(), pos));
        }
        Self::new(node)
    }

    /// Converts to parent-map form. Vertex 0 is the root, vertex `k + 1` is the
    /// `k`-th internal vertex in preorder. Also returns the labeling (label to vertex)
    /// and the children orders.
    pub fn to_abstract(&self) -> (AbstractTree, BTreeMap<usize, usize>, BTreeMap<usize, Vec<usize>>) {
        let verts = self.vertices();
        let index: HashMap<*const Node, usize> =
            verts.iter().enumerate().map(|(k, v)| (*v as *const Node, k + 1)).collect();
        let mut parent = vec![0; verts.len() + 1];
        let mut labels = BTreeMap::new();
        let mut orders = BTreeMap::new();
        for v in &verts {
            let id = index[&(*v as *const Node)];
            let kids: Vec<usize> = v.children.iter().map(|c| index[&(c as *const Node)]).collect();
            for &c in &kids {
                parent[c] = id;
            }
            if let Some(l) = v.label {
                labels.insert(l, id);
            }
            orders.insert(id, kids);
        }
        let tree = AbstractTree {
            root: 0,
            internal: (1..=verts.len()).collect(),
            tails: BTreeSet::new(),
            parent,
        };
        (tree, labels, orders)
    }

    /// Relabels by `sigma`, given in one-line form: the vertex labeled `l` gets label
    /// `sigma[l - 1]`.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Self, TreeError> {
        check_perm(sigma, self.arity)?;
        Ok(self.relabel_unchecked(sigma))
    }

    pub(crate) fn relabel_unchecked(&self, sigma: &[usize]) -> Self {
        fn go(v: &Node, sigma: &[usize]) -> Node {
            Node {
                label: v.label.map(|l| sigma[l - 1]),
                children: v.children.iter().map(|c| go(c, sigma)).collect(),
            }
        }
        Self::new_unchecked(go(&self.top, sigma), self.arity)
    }

    pub fn to_json(&self) -> TreeJson {
        TreeJson::from_node(&self.top)
    }

    pub fn from_json(j: &TreeJson) -> Result<Self, TreeError> {
        Self::new(j.to_node())
    }
}

fn check_perm(sigma: &[usize], n: usize) -> Result<(), TreeError> {
    let mut seen = vec![false; n + 1];
    if sigma.len() != n {
        return Err(TreeError::BadPermutation(n, sigma.to_vec()));
    }
    for &s in sigma {
        if s == 0 || s > n || seen[s] {
            return Err(TreeError::BadPermutation(n, sigma.to_vec()));
        }
        seen[s] = true;
    }
    Ok(())
}

fn parse_node(src: &str, b: &[u8], pos: &mut usize) -> Result<Node, TreeError> {
    let err = |p: usize| TreeError::Parse(src.to_string(), p);
    let label = if *pos < b.len() && b[*pos] == b'*' {
        *pos += 1;
        None
    } else {
        let start = *pos;
        while *pos < b.len() && b[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if start == *pos {
            return Err(err(start));
        }
        Some(src[start..*pos].parse().map_err(|_| err(start))?)
    };
    let mut children = Vec::new();
    if *pos < b.len() && b[*pos] == b'(' {
        *pos += 1;
        loop {
            children.push(parse_node(src, b, pos)?);
            match b.get(*pos) {
                Some(b',') => *pos += 1,
                Some(b')') => {
                    *pos += 1;
                    break;
                }
                _ => return Err(err(*pos)),
            }
        }
    }
    Ok(Node { label, children })
}

/// JSON form of a planar tree: `{"label": 1 | null, "children": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeJson {
    pub label: Option<usize>,
    #[serde(default)]
    pub children: Vec<TreeJson>,
}

impl TreeJson {
    fn from_node(v: &Node) -> Self {
        Self {
            label: v.label,
            children: v.children.iter().map(Self::from_node).collect(),
        }
    }

    fn to_node(&self) -> Node {
        Node {
            label: self.label,
            children: self.children.iter().map(Self::to_node).collect(),
        }
    }
}

/// One angle: the gap number `index` (in `0..=|v|`) at vertex `vertex` (preorder id).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle {
    pub vertex: usize,
    pub index: usize,
}

/// The angles of a tree in the order met by a left-to-right walk around its boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngleList {
    pub angles: Vec<Angle>,
}

impl AngleList {
    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    /// The map κ from angles to vertices.
    pub fn vertex_of(&self, k: usize) -> usize {
        self.angles[k].vertex
    }
}

pub fn angles(t: &PlanarTree) -> AngleList {
    fn walk(v: &Node, next_id: &mut usize, out: &mut Vec<Angle>) {
        let id = *next_id;
        *next_id += 1;
        out.push(Angle { vertex: id, index: 0 });
        for (k, c) in v.children.iter().enumerate() {
            walk(c, next_id, out);
            out.push(Angle { vertex: id, index: k + 1 });
        }
    }
    let mut out = Vec::new();
    let mut next = 0;
    walk(t.top(), &mut next, &mut out);
    AngleList { angles: out }
}

/// Every admissible planar tree with labels `1..=n`, sorted by canonical encoding.
///
/// Each non-labeled vertex has at least two children and every leaf is labeled, so a
/// tree with `n` labels has fewer than `n` non-labeled vertices; the recursion below
/// only ever splits label sets, which makes termination evident.
pub fn enumerate_admissible(n: usize) -> Vec<PlanarTree> {
    if n == 0 {
        return Vec::new();
    }
    let full = (1u32 << n) - 1;
    let mut memo = Enumerator::default();
    let mut trees: Vec<PlanarTree> = memo
        .trees(full)
        .iter()
        .map(|node| PlanarTree::new_unchecked(node.clone(), n))
        .collect();
    trees.sort();
    trees.dedup();
    trees
}

#[derive(Default)]
struct Enumerator {
    trees: HashMap<u32, Vec<Node>>,
    forests: HashMap<u32, Vec<Vec<Node>>>,
}

impl Enumerator {
    /// Trees whose label set is `mask` (bit `l - 1` for label `l`).
    fn trees(&mut self, mask: u32) -> Vec<Node> {
        if let Some(v) = self.trees.get(&mask) {
            return v.clone();
        }
        let mut out = Vec::new();
        for l in 0..32 {
            if mask >> l & 1 == 1 {
                for f in self.forests(mask & !(1 << l)) {
                    out.push(Node::labeled(l as usize + 1, f));
                }
            }
        }
        // non-labeled top: the first child takes a proper part of the labels
        let mut sub = (mask - 1) & mask;
        while sub != 0 {
            let firsts = self.trees(sub);
            let rests = self.forests(mask & !sub);
            for t in &firsts {
                for r in &rests {
                    let mut f = Vec::with_capacity(r.len() + 1);
                    f.push(t.clone());
                    f.extend(r.iter().cloned());
                    out.push(Node::unlabeled(f));
                }
            }
            sub = (sub - 1) & mask;
        }
        self.trees.insert(mask, out.clone());
        out
    }

    /// Ordered sequences of trees whose label sets partition `mask`.
    fn forests(&mut self, mask: u32) -> Vec<Vec<Node>> {
        if mask == 0 {
            return vec![vec![]];
        }
        if let Some(v) = self.forests.get(&mask) {
            return v.clone();
        }
        let mut out = Vec::new();
        // first block: any non-empty submask
        let mut sub = mask;
        while sub != 0 {
            let firsts = self.trees(sub);
            let rests = self.forests(mask & !sub);
            for t in &firsts {
                for r in &rests {
                    let mut f = Vec::with_capacity(r.len() + 1);
                    f.push(t.clone());
                    f.extend(r.iter().cloned());
                    out.push(f);
                }
            }
            sub = (sub - 1) & mask;
        }
        self.forests.insert(mask, out.clone());
        out
    }
}

/// Mutable index-based copy of a planar tree; used by the operad operations, which need
/// to cut and graft while tracking vertex identities (`tag`).
#[derive(Clone, Debug)]
pub(crate) struct TreeArena {
    pub nodes: Vec<ArenaNode>,
    pub top: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct ArenaNode {
    pub label: Option<usize>,
    pub children: Vec<usize>,
    pub tag: usize,
}

impl TreeArena {
    /// Arena with vertices stored in preorder and tagged `tag_offset + preorder index`.
    pub fn from_tree(t: &PlanarTree, tag_offset: usize) -> Self {
        let mut arena = Self { nodes: Vec::new(), top: 0 };
        arena.top = arena.append(t.top(), tag_offset);
        arena
    }

    /// Appends a copy of `v`'s subtree (tags `tag_offset + preorder index`); returns its index.
    pub fn append(&mut self, v: &Node, tag_offset: usize) -> usize {
        fn go(a: &mut TreeArena, v: &Node, next: &mut usize) -> usize {
            let idx = a.nodes.len();
            a.nodes.push(ArenaNode { label: v.label, children: Vec::new(), tag: *next });
            *next += 1;
            let kids: Vec<usize> = v.children.iter().map(|c| go(a, c, next)).collect();
            a.nodes[idx].children = kids;
            idx
        }
        let mut next = tag_offset;
        go(self, v, &mut next)
    }

    pub fn parent_of(&self, idx: usize) -> Option<usize> {
        self.nodes.iter().position(|n| n.children.contains(&idx))
    }

    /// Builds the planar tree of the vertices reachable from `top`; returns it together
    /// with the tags in preorder.
    pub fn to_tree(&self, arity: usize) -> (PlanarTree, Vec<usize>) {
        fn go(a: &TreeArena, idx: usize, tags: &mut Vec<usize>) -> Node {
            tags.push(a.nodes[idx].tag);
            let n = &a.nodes[idx];
            Node {
                label: n.label,
                children: n.children.iter().map(|&c| go(a, c, tags)).collect(),
            }
        }
        let mut tags = Vec::new();
        let top = go(self, self.top, &mut tags);
        (PlanarTree::new_unchecked(top, arity), tags)
    }

    /// Angle list of the subtree hanging at `idx`, as `(arena index, gap)` in boundary order.
    pub fn angles_below(&self, idx: usize) -> Vec<(usize, usize)> {
        fn go(a: &TreeArena, idx: usize, out: &mut Vec<(usize, usize)>) {
            out.push((idx, 0));
            for (k, &c) in a.nodes[idx].children.iter().enumerate() {
                go(a, c, out);
                out.push((idx, k + 1));
            }
        }
        let mut out = Vec::new();
        go(self, idx, &mut out);
        out
    }
}

/// All non-decreasing maps `{0..k} -> {0..m}`, i.e. multisets of size `k` from `m` slots.
pub fn monotone_maps(k: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, m: usize, lo: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for a in lo..m {
            cur.push(a);
            go(k, m, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 && m == 0 {
        return out;
    }
    go(k, m, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// All permutations of `1..=n` in one-line form, lexicographic.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(avail: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if avail.is_empty() {
            out.push(cur.clone());
            return;
        }
        for k in 0..avail.len() {
            let x = avail.remove(k);
            cur.push(x);
            go(avail, cur, out);
            cur.pop();
            avail.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n).collect(), &mut Vec::new(), &mut out);
    out
}
