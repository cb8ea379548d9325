//! Exact cochain complexes over the rationals and their Betti numbers.
//!
//! Differentials raise degree by one. Columns of each matrix follow the canonical basis
//! order of the source degree.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Display;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chain::Chain;
use crate::scalar::{self, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("d² ≠ 0 on basis element {0}")]
    DSquaredNonzero(String),
    #[error("differential of {element} has a term {term} outside the basis of degree {degree}")]
    TermOutsideBasis { element: String, term: String, degree: i64 },
}

/// Sparse matrix stored by columns: `columns[c]` lists `(row, entry)` with nonzero entries.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<Vec<(usize, Scalar)>>,
}

impl SparseMatrix {
    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    /// Rank by incremental exact elimination, processing columns as vectors.
    pub fn rank(&self) -> usize {
        let mut pivots: HashMap<usize, BTreeMap<usize, Scalar>> = HashMap::new();
        let mut rank = 0;
        let mut order: Vec<&Vec<(usize, Scalar)>> = self.columns.iter().collect();
        order.sort_by_key(|c| c.len());
        for col in order {
            let mut v: BTreeMap<usize, Scalar> = col.iter().cloned().collect();
            loop {
                let (lead, coeff) = match v.iter().next() {
                    None => break,
                    Some((&k, q)) => (k, q.clone()),
                };
                match pivots.get(&lead) {
                    Some(p) => {
                        for (k, q) in p {
                            let e = v.entry(*k).or_insert_with(Scalar::zero);
                            *e -= &coeff * q;
                            if e.is_zero() {
                                v.remove(k);
                            }
                        }
                    }
                    None => {
                        let inv = Scalar::one() / &coeff;
                        for q in v.values_mut() {
                            *q *= &inv;
                        }
                        pivots.insert(lead, v);
                        rank += 1;
                        break;
                    }
                }
            }
        }
        rank
    }
}

/// A finite cochain complex: an ordered basis per degree and `d: C^k -> C^{k+1}`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ChainComplexData {
    pub basis: BTreeMap<i64, Vec<String>>,
    pub differentials: BTreeMap<i64, SparseMatrix>,
}

impl ChainComplexData {
    pub fn dimensions(&self) -> BTreeMap<i64, usize> {
        self.basis.iter().map(|(&d, b)| (d, b.len())).collect()
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis.get(&d).map_or(0, Vec::len)
    }

    /// Basis per degree and each differential as `[row, column, "p/q"]` triples.
    pub fn to_json(&self) -> serde_json::Value {
        let differentials: serde_json::Map<String, serde_json::Value> = self
            .differentials
            .iter()
            .map(|(d, m)| {
                let entries: Vec<serde_json::Value> = m
                    .columns
                    .iter()
                    .enumerate()
                    .flat_map(|(c, col)| col.iter().map(move |(r, q)| serde_json::json!([r, c, scalar::format(q)])))
                    .collect();
                (d.to_string(), serde_json::json!({ "rows": m.rows, "columns": m.cols(), "entries": entries }))
            })
            .collect();
        serde_json::json!({
            "basis": self.basis.iter().map(|(d, b)| (d.to_string(), b.clone())).collect::<BTreeMap<_, _>>(),
            "differentials": differentials,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub betti: BTreeMap<i64, usize>,
    pub euler: i64,
}

impl BettiTable {
    /// Betti numbers listed from degree 0 downwards to degree `-(len - 1)`.
    pub fn descending(&self, len: usize) -> Vec<usize> {
        (0..len as i64).map(|k| self.betti.get(&-k).copied().unwrap_or(0)).collect()
    }
}

/// Builds the complex spanned by `basis`, checking `d ∘ d = 0` on every element.
pub fn assemble<B>(
    basis: &[B],
    degree: impl Fn(&B) -> i64 + Sync,
    differential: impl Fn(&B) -> Chain<B> + Sync,
) -> Result<ChainComplexData, HomologyError>
where
    B: Ord + Clone + Display + Send + Sync,
{
    let mut by_degree: BTreeMap<i64, Vec<B>> = BTreeMap::new();
    for b in basis {
        by_degree.entry(degree(b)).or_default().push(b.clone());
    }
    for v in by_degree.values_mut() {
        v.sort();
    }
    let index: BTreeMap<&B, (i64, usize)> = by_degree
        .iter()
        .flat_map(|(&d, v)| v.iter().enumerate().map(move |(k, b)| (b, (d, k))))
        .collect();

    let images: Vec<(B, Chain<B>)> = basis.par_iter().map(|b| (b.clone(), differential(b))).collect();
    let image_of: BTreeMap<&B, &Chain<B>> = images.iter().map(|(b, c)| (b, c)).collect();

    for (b, db) in &images {
        let mut dd: Chain<B> = Chain::zero();
        for (x, q) in db.iter() {
            match image_of.get(x) {
                Some(dx) => dd.add_scaled(dx, q),
                None => {
                    return Err(HomologyError::TermOutsideBasis {
                        element: b.to_string(),
                        term: x.to_string(),
                        degree: degree(b) + 1,
                    })
                }
            }
        }
        if !dd.is_zero() {
            return Err(HomologyError::DSquaredNonzero(b.to_string()));
        }
    }

    let mut out = ChainComplexData::default();
    for (&d, elems) in &by_degree {
        out.basis.insert(d, elems.iter().map(|b| b.to_string()).collect());
        let rows = by_degree.get(&(d + 1)).map_or(0, Vec::len);
        let mut columns = Vec::with_capacity(elems.len());
        for b in elems {
            let mut col = Vec::new();
            for (x, q) in image_of[b].iter() {
                let (dx, row) = index[x];
                if dx != d + 1 {
                    return Err(HomologyError::TermOutsideBasis {
                        element: b.to_string(),
                        term: x.to_string(),
                        degree: d + 1,
                    });
                }
                col.push((row, q.clone()));
            }
            col.sort_by_key(|e| e.0);
            columns.push(col);
        }
        out.differentials.insert(d, SparseMatrix { rows, columns });
    }
    Ok(out)
}

pub fn euler(c: &ChainComplexData) -> i64 {
    c.basis
        .iter()
        .map(|(&d, b)| if d.rem_euclid(2) == 0 { b.len() as i64 } else { -(b.len() as i64) })
        .sum()
}

pub fn betti(c: &ChainComplexData) -> BettiTable {
    let ranks: BTreeMap<i64, usize> = c
        .differentials
        .par_iter()
        .map(|(&d, m)| (d, m.rank()))
        .collect();
    let betti = c
        .basis
        .iter()
        .map(|(&d, b)| {
            let out = ranks.get(&d).copied().unwrap_or(0);
            let inc = ranks.get(&(d - 1)).copied().unwrap_or(0);
            (d, b.len() - out - inc)
        })
        .collect();
    BettiTable { betti, euler: euler(c) }
}

/// Coefficients of `∏_{k=1}^{n-1} (1 + k t)`, lowest power first.
pub fn braid_poincare(n: usize) -> Vec<usize> {
    let mut p = vec![1usize];
    for k in 1..n {
        let mut q = vec![0; p.len() + 1];
        for (i, &c) in p.iter().enumerate() {
            q[i] += c;
            q[i + 1] += k * c;
        }
        p = q;
    }
    p
}

/// Convenience: rank of a dense matrix given row by row.
pub fn dense_rank(rows: &[Vec<Scalar>]) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let columns = (0..ncols)
        .map(|c| {
            rows.iter()
                .enumerate()
                .filter(|(_, r)| !r[c].is_zero())
                .map(|(k, r)| (k, r[c].clone()))
                .collect()
        })
        .collect();
    SparseMatrix { rows: rows.len(), columns }.rank()
}

pub fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
    rows.iter().map(|r| r.iter().map(|&x| scalar::int(x)).collect()).collect()
}
