//! Koszul sign bookkeeping for words of one-dimensional graded lines.
//!
//! An orientation of a basis element is a tensor word whose factors are copies of
//! `L1` (degree -1), `L2` (degree -2) and their duals. Only the odd factors (the `L1`
//! type ones) contribute signs when the word is rearranged.

use thiserror::Error;

use crate::trees::PlanarTree;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SignError {
    #[error("permutation of length {perm} does not match word of length {word}")]
    LengthMismatch { word: usize, perm: usize },
    #[error("not a permutation: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("factors at {0} and {1} are not dual to each other")]
    NotDual(usize, usize),
    #[error("position {0} out of range")]
    OutOfRange(usize),
}

/// What a factor of an orientation word stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorId {
    /// The single `L2*` factor attached to a whole tree.
    Global,
    /// An internal edge, identified by its lower endpoint.
    Edge(usize),
    /// A labeled vertex.
    Label(usize),
    /// Anything else (scratch factors, shifts).
    Aux(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Factor {
    pub id: FactorId,
    pub degree: i32,
}

impl Factor {
    pub fn l1_dual(id: FactorId) -> Self {
        Self { id, degree: 1 }
    }
    pub fn l1(id: FactorId) -> Self {
        Self { id, degree: -1 }
    }
    pub fn l2_dual(id: FactorId) -> Self {
        Self { id, degree: 2 }
    }
    pub fn l2(id: FactorId) -> Self {
        Self { id, degree: -2 }
    }
    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OrientationWord {
    pub factors: Vec<Factor>,
}

impl OrientationWord {
    pub fn new(factors: Vec<Factor>) -> Self {
        Self { factors }
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_degree(&self) -> i32 {
        self.factors.iter().map(|f| f.degree).sum()
    }

    /// The canonical word `L2* ⊗ (L1*)^{edges} ⊗ L2^{labels}` of a basis tree: edges in
    /// depth-first discovery order, labels increasing.
    pub fn for_tree(tree: &PlanarTree) -> Self {
        let mut factors = vec![Factor::l2_dual(FactorId::Global)];
        for e in 0..tree.internal_edge_count() {
            factors.push(Factor::l1_dual(FactorId::Edge(e)));
        }
        for l in 1..=tree.arity() {
            factors.push(Factor::l2(FactorId::Label(l)));
        }
        Self { factors }
    }

    /// The word `[w[perm[0]], w[perm[1]], ...]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self, SignError> {
        check_permutation(perm, self.len())?;
        Ok(Self {
            factors: perm.iter().map(|&p| self.factors[p]).collect(),
        })
    }
}

fn check_permutation(perm: &[usize], n: usize) -> Result<(), SignError> {
    if perm.len() != n {
        return Err(SignError::LengthMismatch { word: n, perm: perm.len() });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(SignError::NotAPermutation(perm.to_vec()));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Sign of rearranging `word` into `[word[perm[0]], word[perm[1]], ...]`: `-1` for every
/// pair of odd factors whose relative order is reversed.
pub fn koszul_sign(word: &OrientationWord, perm: &[usize]) -> Result<i8, SignError> {
    check_permutation(perm, word.len())?;
    let odd: Vec<bool> = perm.iter().map(|&p| word.factors[p].is_odd()).collect();
    let mut neg = false;
    for a in 0..perm.len() {
        if !odd[a] {
            continue;
        }
        for b in a + 1..perm.len() {
            if odd[b] && perm[a] > perm[b] {
                neg = !neg;
            }
        }
    }
    Ok(if neg { -1 } else { 1 })
}

/// Moves the factor at `j` next to its dual partner at `i` and removes both.
///
/// Returns the sign of the move (the later factor travels left until it sits right
/// after the earlier one) and the contracted word.
pub fn pair(word: &OrientationWord, i: usize, j: usize) -> Result<(i8, OrientationWord), SignError> {
    let n = word.len();
    if i >= n {
        return Err(SignError::OutOfRange(i));
    }
    if j >= n {
        return Err(SignError::OutOfRange(j));
    }
    let (a, b) = (word.factors[i], word.factors[j]);
    if i == j || a.degree + b.degree != 0 || a.degree == 0 {
        return Err(SignError::NotDual(i, j));
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let between: i32 = word.factors[lo + 1..hi].iter().map(|f| f.degree).sum();
    let moved = word.factors[hi].degree;
    let sign = if (between * moved).rem_euclid(2) == 1 { -1 } else { 1 };
    let factors = word
        .factors
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != lo && k != hi)
        .map(|(_, f)| *f)
        .collect();
    Ok((sign, OrientationWord { factors }))
}

/// Sign of stably sorting a word of graded tokens by `keys`; only odd-odd inversions count.
pub fn koszul_sort_sign<K: Ord>(degrees: &[i32], keys: &[K]) -> i8 {
    debug_assert_eq!(degrees.len(), keys.len());
    let mut neg = false;
    for a in 0..keys.len() {
        if degrees[a].rem_euclid(2) == 0 {
            continue;
        }
        for b in a + 1..keys.len() {
            if degrees[b].rem_euclid(2) == 1 && keys[a] > keys[b] {
                neg = !neg;
            }
        }
    }
    if neg {
        -1
    } else {
        1
    }
}

/// Parity of the permutation taking the sequence `from` to the sequence `to`
/// (both listing the same distinct items): `+1` even, `-1` odd.
pub fn reorder_sign<T: PartialEq>(from: &[T], to: &[T]) -> i8 {
    let pos: Vec<usize> = from
        .iter()
        .map(|x| to.iter().position(|y| y == x).expect("reorder_sign: item missing"))
        .collect();
    let mut neg = false;
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if pos[a] > pos[b] {
                neg = !neg;
            }
        }
    }
    if neg {
        -1
    } else {
        1
    }
}

/// Sign of a permutation given in one-line notation.
pub fn permutation_sign(perm: &[usize]) -> i8 {
    let mut neg = false;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                neg = !neg;
            }
        }
    }
    if neg {
        -1
    } else {
        1
    }
}
