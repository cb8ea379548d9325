//! The action of `M` on Hochschild cochains of an A∞-algebra.
//!
//! `act(T)(γ_1, …, γ_n)` in output arity `k` sums over non-decreasing insertions of `k`
//! tails into the angles of `T`. A vertex labeled `j` with `r` inputs carries the arity-`r`
//! component of `γ_j`, a non-labeled vertex carries `m_r`, and the decorated tree is
//! evaluated as a composite of maps on the suspension.
//!
//! Signs come from a word of graded tokens: one odd edge factor per internal edge, and for
//! each cochain an odd desuspension `σ_j` followed by its suspended map. Edge factors above
//! labeled vertices are contracted against the matching `σ_j`, edge factors above
//! non-labeled vertices become the corresponding `m`, and the remaining maps are brought
//! to depth-first order with Koszul signs.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::hochschild::{homogeneous_parts, AInfinityStructure, Cochain, Component, GradedSpace, HochschildError, Status};
use crate::minimal_operad::{self, MChainElement};
use crate::scalar::{self, Scalar};
use crate::signs::koszul_sort_sign;
use crate::trees::{angles, monotone_maps, PlanarTree};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("tree has {0} labels but {1} cochains were given")]
    ArityMismatch(usize, usize),
    #[error(transparent)]
    Hochschild(#[from] HochschildError),
    #[error("arity cap exhausted: output arity 0 needs unknown components")]
    CapExhausted,
}

/// The corolla `T_(k)`: one labeled vertex with `k` ordered tails.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corolla {
    pub tails: usize,
}

impl Corolla {
    /// The planar tree obtained by inserting the `k` tails into `T` along `beta`
    /// (as valencies per vertex in preorder).
    pub fn insertion_valencies(&self, t: &PlanarTree, beta: &[usize]) -> Vec<usize> {
        let shape = Shape::of(t);
        let alist = angles(t);
        let mut r: Vec<usize> = shape.children.iter().map(Vec::len).collect();
        for &b in beta {
            r[alist.vertex_of(b)] += 1;
        }
        r
    }
}

/// Flattened shape of a planar tree: preorder vertex ids, children and labels.
#[derive(Clone, Debug)]
struct Shape {
    labels: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl Shape {
    fn of(t: &PlanarTree) -> Self {
        let verts = t.vertices();
        let index: HashMap<*const crate::trees::Node, usize> =
            verts.iter().enumerate().map(|(k, v)| (*v as *const _, k)).collect();
        Self {
            labels: verts.iter().map(|v| v.label).collect(),
            children: verts
                .iter()
                .map(|v| v.children.iter().map(|c| index[&(c as *const _)]).collect())
                .collect(),
        }
    }

    fn vertex_of_label(&self, j: usize) -> usize {
        self.labels.iter().position(|&l| l == Some(j)).expect("label present")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Token {
    Edge(usize),
    Desusp(usize),
    Map(usize),
    Out,
}

/// Sign of bringing the token word of `T` with cochains of suspended degrees `g` into
/// the form `σ_out ⊗ (maps in preorder)`.
fn word_sign(shape: &Shape, g: &[i64]) -> i64 {
    let n = g.len();
    let parity = |tok: &Token| -> i64 {
        match *tok {
            Token::Edge(_) | Token::Desusp(_) | Token::Out => 1,
            Token::Map(v) => match shape.labels[v] {
                Some(j) => g[j - 1].rem_euclid(2),
                None => 1,
            },
        }
    };
    let mut word: Vec<Token> = (1..shape.labels.len()).map(Token::Edge).collect();
    for j in 1..=n {
        word.push(Token::Desusp(j));
        word.push(Token::Map(shape.vertex_of_label(j)));
    }
    let mut sign = 1i64;
    let mut move_to = |word: &mut Vec<Token>, from: usize, to: usize| {
        let tok = word.remove(from);
        let (lo, hi) = if from < to { (from, to) } else { (to, from) };
        let passed: i64 = word[lo..hi].iter().map(&parity).sum();
        if parity(&tok) * passed % 2 == 1 {
            sign = -sign;
        }
        word.insert(to, tok);
    };
    for u in 1..shape.labels.len() {
        let e = word.iter().position(|&t| t == Token::Edge(u)).unwrap();
        match shape.labels[u] {
            Some(j) => {
                let s = word.iter().position(|&t| t == Token::Desusp(j)).unwrap();
                move_to(&mut word, s, e + 1);
                word.drain(e..e + 2);
            }
            None => word[e] = Token::Map(u),
        }
    }
    match shape.labels[0] {
        Some(j) => {
            let s = word.iter().position(|&t| t == Token::Desusp(j)).unwrap();
            move_to(&mut word, s, 0);
            word[0] = Token::Out;
        }
        None => {
            word.insert(0, Token::Map(0));
            word.insert(0, Token::Out);
        }
    }
    let rest = &word[1..];
    let degrees: Vec<i32> = rest.iter().map(|t| parity(t) as i32).collect();
    let keys: Vec<usize> = rest
        .iter()
        .map(|t| match *t {
            Token::Map(v) => v,
            _ => unreachable!("only maps remain"),
        })
        .collect();
    sign * koszul_sort_sign(&degrees, &keys) as i64
}

type Entries = Vec<(Vec<usize>, usize, Scalar)>;
/// Partial evaluations grouped by output: (tails, coefficient, suspended degree).
type ByOutput = HashMap<usize, Vec<(Vec<usize>, Scalar, i64)>>;

/// Evaluates the composite below vertex `u`; `slots[u]` lists `None` for a tail and
/// `Some(w)` for the child `w`.
fn evaluate(u: usize, slots: &[Vec<Option<usize>>], maps: &[&Component], space: &GradedSpace) -> Entries {
    let mut below: HashMap<usize, ByOutput> = HashMap::new();
    for w in slots[u].iter().flatten() {
        let mut by_out: ByOutput = HashMap::new();
        for (tails, o, q) in evaluate(*w, slots, maps, space) {
            let deg = space.shifted(o) - tails.iter().map(|&x| space.shifted(x)).sum::<i64>();
            by_out.entry(o).or_default().push((tails, q, deg));
        }
        below.insert(*w, by_out);
    }
    let mut out = Vec::new();
    for ((ins, o), q) in maps[u] {
        let mut partial: Vec<(Vec<usize>, Scalar, i64)> = vec![(Vec::new(), q.clone(), 0)];
        for (s, slot) in slots[u].iter().enumerate() {
            let x = ins[s];
            match slot {
                None => {
                    for p in &mut partial {
                        p.0.push(x);
                        p.2 += space.shifted(x);
                    }
                }
                Some(w) => {
                    let Some(options) = below[w].get(&x) else {
                        partial.clear();
                        break;
                    };
                    let mut next = Vec::with_capacity(partial.len() * options.len());
                    for (tails, c, left) in &partial {
                        for (wt, wq, wdeg) in options {
                            let mut t = tails.clone();
                            t.extend_from_slice(wt);
                            let inner: i64 = wt.iter().map(|&y| space.shifted(y)).sum();
                            let mut coeff = c * wq;
                            if (wdeg * left).rem_euclid(2) == 1 {
                                coeff = -coeff;
                            }
                            next.push((t, coeff, left + inner));
                        }
                    }
                    partial = next;
                }
            }
            if partial.is_empty() {
                break;
            }
        }
        out.extend(partial.into_iter().map(|(t, c, _)| (t, *o, c)));
    }
    out
}

/// Statuses needed for one insertion pattern: `Zero` if some factor vanishes,
/// `Unknown` if some factor is unknown, `Nonzero` otherwise.
fn pattern_status(shape: &Shape, r: &[usize], gammas: &[Cochain], m: &Cochain) -> Status {
    let mut unknown = false;
    for (u, &ru) in r.iter().enumerate() {
        let s = match shape.labels[u] {
            Some(j) => gammas[j - 1].status(ru),
            None => m.status(ru),
        };
        match s {
            Status::Zero => return Status::Zero,
            Status::Unknown => unknown = true,
            Status::Nonzero => {}
        }
    }
    if unknown {
        Status::Unknown
    } else {
        Status::Nonzero
    }
}

/// Upper bound on nonzero output arities when all inputs are complete.
fn arity_bound(shape: &Shape, gammas: &[Cochain], m: &Cochain) -> Option<usize> {
    let mut total = 0usize;
    for l in &shape.labels {
        let a = match l {
            Some(j) => gammas[j - 1].max_arity()?,
            None => m.max_arity()?,
        };
        total += a;
    }
    Some(total.saturating_sub(shape.labels.len() - 1))
}

fn check_inputs(t: &PlanarTree, gammas: &[Cochain], m: &AInfinityStructure) -> Result<(), ActionError> {
    if gammas.len() != t.arity() {
        return Err(ActionError::ArityMismatch(t.arity(), gammas.len()));
    }
    for g in gammas {
        if g.space() != m.space() {
            return Err(HochschildError::SpaceMismatch.into());
        }
    }
    Ok(())
}

/// `act(T)(γ_1, …, γ_n)` computed on every output arity `≤ cap` that is determined by the
/// known components of the inputs.
pub fn act(t: &PlanarTree, gammas: &[Cochain], m: &AInfinityStructure, cap: usize) -> Result<Cochain, ActionError> {
    check_inputs(t, gammas, m)?;
    let shape = Shape::of(t);
    let alist = angles(t);
    let space: &Arc<GradedSpace> = m.space();
    let complete = gammas.iter().all(Cochain::is_complete) && m.m.is_complete();
    let bound = if complete { arity_bound(&shape, gammas, &m.m) } else { None };
    if complete && bound.is_none() {
        return Ok(Cochain::zero(space, cap, true));
    }
    let top = match bound {
        Some(b) => b.min(cap),
        None => cap,
    };

    // patterns per output arity, stopping at the first undetermined arity
    let mut patterns: Vec<Vec<Vec<usize>>> = Vec::new();
    for k in 0..=top {
        let mut live = Vec::new();
        let mut determined = true;
        for beta in monotone_maps(k, alist.len()) {
            let mut r: Vec<usize> = shape.children.iter().map(Vec::len).collect();
            for &b in &beta {
                r[alist.vertex_of(b)] += 1;
            }
            match pattern_status(&shape, &r, gammas, &m.m) {
                Status::Zero => {}
                Status::Unknown => {
                    determined = false;
                    break;
                }
                Status::Nonzero => live.push(beta),
            }
        }
        if !determined {
            break;
        }
        patterns.push(live);
    }
    if patterns.is_empty() {
        return Err(ActionError::CapExhausted);
    }
    let out_cap = patterns.len() - 1;
    let out_complete = complete && bound.is_some_and(|b| b <= cap);
    let mut out = Cochain::zero(space, if out_complete { top.max(out_cap) } else { out_cap }, out_complete);

    let parts: Vec<Vec<(i64, Cochain)>> =
        gammas.iter().map(|g| homogeneous_parts(g).into_iter().collect()).collect();
    // one factor -1 per non-labeled vertex, so that m_2 acts as the product tree
    let twist = if shape.labels.iter().filter(|l| l.is_none()).count() % 2 == 0 { 1 } else { -1 };
    let mut choice = vec![0usize; gammas.len()];
    if parts.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let chosen: Vec<&Cochain> = choice.iter().enumerate().map(|(j, &c)| &parts[j][c].1).collect();
        let g: Vec<i64> = choice.iter().enumerate().map(|(j, &c)| parts[j][c].0 - 1).collect();
        let ws = scalar::int(word_sign(&shape, &g) * twist);
        for live in &patterns {
            for beta in live {
                accumulate(&shape, &alist, beta, &chosen, &m.m, space, &ws, &mut out);
            }
        }
        // next combination of homogeneous parts
        let mut j = 0;
        loop {
            if j == choice.len() {
                return Ok(out);
            }
            choice[j] += 1;
            if choice[j] < parts[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn accumulate(
    shape: &Shape,
    alist: &crate::trees::AngleList,
    beta: &[usize],
    gammas: &[&Cochain],
    m: &Cochain,
    space: &GradedSpace,
    sign: &Scalar,
    out: &mut Cochain,
) {
    let nv = shape.labels.len();
    let mut slots: Vec<Vec<Option<usize>>> = vec![Vec::new(); nv];
    for (u, kids) in shape.children.iter().enumerate() {
        for gap in 0..=kids.len() {
            for &b in beta {
                if alist.angles[b].vertex == u && alist.angles[b].index == gap {
                    slots[u].push(None);
                }
            }
            if gap < kids.len() {
                slots[u].push(Some(kids[gap]));
            }
        }
    }
    let mut maps: Vec<&Component> = Vec::with_capacity(nv);
    for (slot, label) in slots.iter().zip(&shape.labels) {
        let r = slot.len();
        let c = match label {
            Some(j) => gammas[j - 1].component(r),
            None => m.component(r),
        };
        match c {
            Some(c) if !c.is_empty() => maps.push(c),
            _ => return,
        }
    }
    for (tails, o, q) in evaluate(0, &slots, &maps, space) {
        out.add_suspended(tails, o, &(q * sign));
    }
}

/// Extends [`act`] linearly over a chain of trees.
pub fn act_chain(c: &MChainElement, gammas: &[Cochain], m: &AInfinityStructure, cap: usize) -> Result<Option<Cochain>, ActionError> {
    let mut acc: Option<Cochain> = None;
    for (t, q) in c.iter() {
        let v = act(t, gammas, m, cap)?.scaled(q);
        acc = Some(match acc {
            None => v,
            Some(a) => a.add(&v)?,
        });
    }
    Ok(acc)
}

/// Outcome of an identity check between two cochains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    pub differing_arities: Vec<usize>,
    pub compared_up_to: usize,
}

fn compare(lhs: &Cochain, rhs: &Cochain) -> IdentityCheck {
    let differing = lhs.differing_arities(rhs);
    IdentityCheck {
        holds: differing.is_empty(),
        differing_arities: differing,
        compared_up_to: lhs.cap().min(rhs.cap()),
    }
}

/// Total degree of a homogeneous cochain, with zero cochains treated as even.
fn deg_or_zero(c: &Cochain) -> i64 {
    c.degree().unwrap_or(0)
}

/// `act(T1 ∘_i T2)(γ) = (-1)^{deg T2 (|γ_1| + … + |γ_{i-1}|)} act(T1)(…, act(T2)(γ_i, …), …)`.
pub fn check_composition(
    t1: &PlanarTree,
    i: usize,
    t2: &PlanarTree,
    gammas: &[Cochain],
    m: &AInfinityStructure,
    cap: usize,
) -> Result<IdentityCheck, ActionError> {
    let composite = minimal_operad::compose(t1, i, t2).expect("label in range");
    let n2 = t2.arity();
    let lhs = match act_chain(&composite, gammas, m, cap)? {
        Some(c) => c,
        None => Cochain::zero(m.space(), cap, true),
    };
    let inner = act(t2, &gammas[i - 1..i - 1 + n2], m, cap)?;
    let mut outer_args: Vec<Cochain> = gammas[..i - 1].to_vec();
    outer_args.push(inner);
    outer_args.extend_from_slice(&gammas[i - 1 + n2..]);
    let before: i64 = gammas[..i - 1].iter().map(deg_or_zero).sum();
    let rhs = act(t1, &outer_args, m, cap)?.scaled(&scalar::parity(minimal_operad::degree(t2) * before));
    Ok(compare(&lhs, &rhs))
}

/// The sign `c` in `d_m act(T)(γ) = c · act(d_M T)(γ) + (-1)^{deg T} Σ_i ± act(T)(…, d_m γ_i, …)`.
pub const DIFFERENTIAL_SIGN: i64 = 1;

/// Checks the dg-compatibility identity on every arity determined by the inputs.
pub fn check_dg_compatibility(t: &PlanarTree, gammas: &[Cochain], m: &AInfinityStructure, cap: usize) -> Result<IdentityCheck, ActionError> {
    let psi = act(t, gammas, m, cap)?;
    let lhs = crate::hochschild::hochschild_differential(m, &psi)?;
    let dt = minimal_operad::differential(t);
    let mut rhs = match act_chain(&dt, gammas, m, cap)? {
        Some(c) => c.scaled(&scalar::int(DIFFERENTIAL_SIGN)),
        None => Cochain::zero(m.space(), cap, true),
    };
    let deg_t = minimal_operad::degree(t);
    let mut before = 0i64;
    for i in 0..gammas.len() {
        let mut args = gammas.to_vec();
        args[i] = crate::hochschild::hochschild_differential(m, &gammas[i])?;
        let term = act(t, &args, m, cap)?;
        rhs = rhs.add_scaled(&term, &scalar::parity(deg_t + before))?;
        before += deg_or_zero(&gammas[i]);
    }
    Ok(compare(&lhs, &rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hochschild::algebras;
    use crate::minimal_operad::nesting;

    fn constant(space: &Arc<GradedSpace>, out: usize) -> Cochain {
        let mut c = Cochain::zero(space, 0, true);
        c.add_entry(vec![], out, &Scalar::from_integer(1.into()));
        c
    }

    #[test]
    fn unit_acts_as_identity() {
        let m = algebras::dual_numbers();
        let s = m.space().clone();
        let mut g = Cochain::zero(&s, 2, true);
        g.add_entry(vec![1, 0], 1, &scalar::int(3));
        g.add_entry(vec![1], 0, &scalar::int(-1));
        assert_eq!(act(&PlanarTree::unit(), &[g.clone()], &m, 4).unwrap(), g);
    }

    #[test]
    fn zero_m_kills_non_labeled_vertices() {
        let m = algebras::dual_numbers();
        let z = AInfinityStructure::zero(m.space(), 3);
        let s = m.space().clone();
        let g = constant(&s, 1);
        let r = act(&PlanarTree::product(&[1, 2]), &[g.clone(), g], &z, 4).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn product_of_constants() {
        let m = algebras::dual_numbers();
        let s = m.space().clone();
        let one = constant(&s, 0);
        let x = constant(&s, 1);
        let r = act(&PlanarTree::product(&[1, 2]), &[one, x], &m, 4).unwrap();
        // arity 0 part is m_2(1, x) = x
        assert_eq!(r.entries().into_iter().filter(|e| e.0.is_empty()).collect::<Vec<_>>(), vec![(vec![], 1, scalar::int(1))]);
    }

    #[test]
    fn nesting_of_constants_vanishes() {
        // an arity-0 cochain at the upper vertex has no input to receive the lower one
        let m = algebras::dual_numbers();
        let s = m.space().clone();
        let r = act(&nesting(1, 2), &[constant(&s, 0), constant(&s, 1)], &m, 4).unwrap();
        assert!(r.is_zero());
    }
}
