//! The dg-operad interface shared by `M` and `As`, and the associative operad itself.

use std::fmt::Debug;
use std::hash::Hash;

use crate::chain::Chain;
use crate::scalar;

/// A dg-operad with a distinguished finite basis in each arity.
///
/// `compose(x, i, y)` is the partial composition `x ∘_i y` with standard index shifting:
/// labels `l < i` of `x` stay, labels `l > i` move up by `arity(y) - 1`, and label `j` of
/// `y` becomes `i + j - 1`.
pub trait DgOperad: Sync {
    type Elem: Clone + Ord + Hash + Debug + Send + Sync;

    fn name(&self) -> &'static str;
    fn basis(&self, n: usize) -> Vec<Self::Elem>;
    fn arity(&self, x: &Self::Elem) -> usize;
    fn degree(&self, x: &Self::Elem) -> i64;
    fn differential(&self, x: &Self::Elem) -> Chain<Self::Elem>;
    fn compose(&self, x: &Self::Elem, i: usize, y: &Self::Elem) -> Chain<Self::Elem>;
    /// Relabel in one-line form: label `l` becomes `sigma[l - 1]`. Never introduces a sign.
    fn relabel(&self, x: &Self::Elem, sigma: &[usize]) -> Self::Elem;
    fn is_unit(&self, x: &Self::Elem) -> bool {
        self.arity(x) == 1 && self.degree(x) == 0
    }
    /// Size measure used by the generator filtration (internal edges of a tree in `M`).
    fn complexity(&self, _x: &Self::Elem) -> usize {
        0
    }
    fn elem_to_json(&self, x: &Self::Elem) -> serde_json::Value;
    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Self::Elem, String>;

    fn differential_chain(&self, c: &Chain<Self::Elem>) -> Chain<Self::Elem> {
        c.map_linear(|x| self.differential(x))
    }

    fn compose_chains(&self, a: &Chain<Self::Elem>, i: usize, b: &Chain<Self::Elem>) -> Chain<Self::Elem> {
        let mut out = Chain::zero();
        for (x, p) in a.iter() {
            for (y, q) in b.iter() {
                out.add_scaled(&self.compose(x, i, y), &(p * q));
            }
        }
        out
    }
}

/// The associative operad: `As_n` is the regular representation of `S_n`, spanned by
/// planar orders of `1..=n` (one-line form), all in degree 0 with zero differential.
#[derive(Clone, Copy, Debug, Default)]
pub struct Associative;

impl DgOperad for Associative {
    type Elem = Vec<usize>;

    fn name(&self) -> &'static str {
        "As"
    }

    fn basis(&self, n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return Vec::new();
        }
        crate::trees::permutations(n)
    }

    fn arity(&self, x: &Vec<usize>) -> usize {
        x.len()
    }

    fn degree(&self, _x: &Vec<usize>) -> i64 {
        0
    }

    fn differential(&self, _x: &Vec<usize>) -> Chain<Vec<usize>> {
        Chain::zero()
    }

    fn compose(&self, x: &Vec<usize>, i: usize, y: &Vec<usize>) -> Chain<Vec<usize>> {
        let shift = y.len() - 1;
        let mut out = Vec::with_capacity(x.len() + shift);
        for &l in x {
            if l == i {
                out.extend(y.iter().map(|&j| i + j - 1));
            } else if l > i {
                out.push(l + shift);
            } else {
                out.push(l);
            }
        }
        Chain::from_terms([(out, scalar::int(1))])
    }

    fn relabel(&self, x: &Vec<usize>, sigma: &[usize]) -> Vec<usize> {
        x.iter().map(|&l| sigma[l - 1]).collect()
    }

    fn elem_to_json(&self, x: &Vec<usize>) -> serde_json::Value {
        serde_json::json!(x)
    }

    fn elem_from_json(&self, v: &serde_json::Value) -> Result<Vec<usize>, String> {
        let order: Vec<usize> = serde_json::from_value(v.clone()).map_err(|e| e.to_string())?;
        let mut sorted = order.clone();
        sorted.sort_unstable();
        if sorted != (1..=order.len()).collect::<Vec<_>>() {
            return Err(format!("{order:?} is not a planar order of 1..={}", order.len()));
        }
        Ok(order)
    }
}
