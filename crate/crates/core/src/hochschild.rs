//! Hochschild cochains of a finite dimensional graded space, the Gerstenhaber
//! pre-Lie product and bracket, and A∞-structures as Maurer–Cartan elements.
//!
//! Internally a cochain is stored on the suspension `V = sA` (basis degree `|e| - 1`):
//! the arity-`k` component is a map `V^{⊗k} -> V` of degree `deg - 1`, where `deg` is the
//! total degree `map_degree + k` of the unsuspended cochain. In this form the bracket is
//! the commutator of the pre-Lie product with plain Koszul signs. Conversion to ordinary
//! coefficients happens only at the JSON boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::{self, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HochschildError {
    #[error("graded space has no basis elements")]
    EmptySpace,
    #[error("duplicate basis name `{0}`")]
    DuplicateName(String),
    #[error("unknown basis name `{0}`")]
    UnknownName(String),
    #[error("cochains live on different graded spaces")]
    SpaceMismatch,
    #[error("arity cap exhausted: no output component is computable")]
    CapExhausted,
    #[error("term has arity {arity} but {inputs} inputs")]
    ArityMismatch { arity: usize, inputs: usize },
    #[error("term arity {0} exceeds the cap {1}")]
    AboveCap(usize, usize),
    #[error("not an A∞-structure: {0}")]
    NotAInfinity(String),
    #[error("bad coefficient: {0}")]
    Coefficient(String),
}

/// A finite graded basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpace {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElementJson {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedSpaceJson {
    pub basis: Vec<BasisElementJson>,
}

impl GradedSpace {
    pub fn new(names: Vec<String>, degrees: Vec<i64>) -> Result<Self, HochschildError> {
        assert_eq!(names.len(), degrees.len());
        if names.is_empty() {
            return Err(HochschildError::EmptySpace);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n) {
                return Err(HochschildError::DuplicateName(n.clone()));
            }
        }
        Ok(Self { names, degrees })
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    /// Degree of `s e_i` in the suspension.
    pub fn shifted(&self, i: usize) -> i64 {
        self.degrees[i] - 1
    }

    pub fn index(&self, name: &str) -> Result<usize, HochschildError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| HochschildError::UnknownName(name.to_string()))
    }

    pub fn to_json(&self) -> GradedSpaceJson {
        GradedSpaceJson {
            basis: self
                .names
                .iter()
                .zip(&self.degrees)
                .map(|(name, &degree)| BasisElementJson { name: name.clone(), degree })
                .collect(),
        }
    }

    pub fn from_json(j: &GradedSpaceJson) -> Result<Self, HochschildError> {
        Self::new(
            j.basis.iter().map(|b| b.name.clone()).collect(),
            j.basis.iter().map(|b| b.degree).collect(),
        )
    }
}

/// Sparse arity-`k` component on `V`: `(inputs, output) -> coefficient`.
pub type Component = BTreeMap<(Vec<usize>, usize), Scalar>;

/// Status of one arity component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Zero,
    Nonzero,
    Unknown,
}

/// A Hochschild cochain truncated at arity `cap`.
///
/// Components of arity `≤ cap` are stored. Above the cap they are zero when `complete`
/// and unknown otherwise.
#[derive(Clone, Debug)]
pub struct Cochain {
    space: Arc<GradedSpace>,
    cap: usize,
    complete: bool,
    comps: Vec<Component>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Self) -> bool {
        if self.space != other.space || self.complete != other.complete {
            return false;
        }
        if !self.complete && self.cap != other.cap {
            return false;
        }
        let top = self.cap.max(other.cap);
        (0..=top).all(|k| self.comp_or_empty(k) == other.comp_or_empty(k))
    }
}

static EMPTY: std::sync::OnceLock<Component> = std::sync::OnceLock::new();

fn empty() -> &'static Component {
    EMPTY.get_or_init(Component::new)
}

/// `(-1)^e` as a boolean flag: true means negative.
fn odd(e: i64) -> bool {
    e.rem_euclid(2) == 1
}

impl Cochain {
    pub fn zero(space: &Arc<GradedSpace>, cap: usize, complete: bool) -> Self {
        Self { space: space.clone(), cap, complete, comps: vec![Component::new(); cap + 1] }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn status(&self, k: usize) -> Status {
        if k > self.cap {
            return if self.complete { Status::Zero } else { Status::Unknown };
        }
        if self.comps[k].is_empty() {
            Status::Zero
        } else {
            Status::Nonzero
        }
    }

    pub fn component(&self, k: usize) -> Option<&Component> {
        match self.status(k) {
            Status::Unknown => None,
            _ => Some(self.comp_or_empty(k)),
        }
    }

    fn comp_or_empty(&self, k: usize) -> &Component {
        self.comps.get(k).unwrap_or_else(|| empty())
    }

    /// Largest arity with a nonzero component, if any.
    pub fn max_arity(&self) -> Option<usize> {
        (0..=self.cap).rev().find(|&k| !self.comps[k].is_empty())
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Component::is_empty)
    }

    /// Adds `q` times the suspended entry `(inputs -> output)`.
    pub fn add_suspended(&mut self, inputs: Vec<usize>, output: usize, q: &Scalar) {
        let k = inputs.len();
        assert!(k <= self.cap, "arity {k} above cap {}", self.cap);
        if q.is_zero() {
            return;
        }
        let comp = &mut self.comps[k];
        let key = (inputs, output);
        let e = comp.entry(key.clone()).or_insert_with(Scalar::zero);
        *e += q;
        if e.is_zero() {
            comp.remove(&key);
        }
    }

    /// Adds `q` times the ordinary (unsuspended) entry `γ(e_{i_1}, …, e_{i_k}) ∋ e_o`.
    pub fn add_entry(&mut self, inputs: Vec<usize>, output: usize, q: &Scalar) {
        let s = self.suspension_sign(&inputs);
        let q = if s { -q.clone() } else { q.clone() };
        self.add_suspended(inputs, output, &q);
    }

    /// Sign relating ordinary and suspended coefficients: `Σ_l (k - l)(|a_l| - 1)`.
    fn suspension_sign(&self, inputs: &[usize]) -> bool {
        let k = inputs.len() as i64;
        let e: i64 = inputs
            .iter()
            .enumerate()
            .map(|(l, &i)| (k - 1 - l as i64) * self.space.shifted(i))
            .sum();
        odd(e)
    }

    /// Ordinary coefficients of the known components.
    pub fn entries(&self) -> Vec<(Vec<usize>, usize, Scalar)> {
        let mut out = Vec::new();
        for comp in &self.comps {
            for ((ins, o), q) in comp {
                let q = if self.suspension_sign(ins) { -q.clone() } else { q.clone() };
                out.push((ins.clone(), *o, q));
            }
        }
        out
    }

    /// Total degree `map_degree + arity` of one entry.
    pub fn entry_degree(&self, inputs: &[usize], output: usize) -> i64 {
        self.space.degrees[output] - inputs.iter().map(|&i| self.space.degrees[i]).sum::<i64>()
            + inputs.len() as i64
    }

    /// Total degree if the cochain is homogeneous and nonzero.
    pub fn degree(&self) -> Option<i64> {
        let mut degs = self
            .comps
            .iter()
            .flat_map(|c| c.keys())
            .map(|(ins, o)| self.entry_degree(ins, *o));
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn scaled(&self, q: &Scalar) -> Self {
        let mut out = Self::zero(&self.space, self.cap, self.complete);
        if !q.is_zero() {
            for (k, c) in self.comps.iter().enumerate() {
                out.comps[k] = c.iter().map(|(key, v)| (key.clone(), v * q)).collect();
            }
        }
        out
    }

    /// Forgets everything above arity `cap`.
    pub fn truncated(&self, cap: usize) -> Self {
        let mut out = self.with_cap(cap);
        if cap < self.cap || !self.complete {
            out.complete = false;
        }
        out
    }

    fn with_cap(&self, cap: usize) -> Self {
        let mut out = Self::zero(&self.space, cap, self.complete);
        for k in 0..=cap.min(self.cap) {
            out.comps[k] = self.comps[k].clone();
        }
        if cap > self.cap && !self.complete {
            // components between the old and new cap stay unknown
            out.cap = self.cap;
            out.comps.truncate(self.cap + 1);
        }
        out
    }

    /// `self + q * other` on the arities known for both.
    pub fn add_scaled(&self, other: &Cochain, q: &Scalar) -> Result<Self, HochschildError> {
        if self.space != other.space {
            return Err(HochschildError::SpaceMismatch);
        }
        let complete = self.complete && other.complete;
        let cap = match (self.complete, other.complete) {
            (true, true) => self.cap.max(other.cap),
            (true, false) => other.cap,
            (false, true) => self.cap,
            (false, false) => self.cap.min(other.cap),
        };
        let mut out = Self::zero(&self.space, cap, complete);
        for k in 0..=cap {
            let mut c = self.comp_or_empty(k).clone();
            for (key, v) in other.comp_or_empty(k) {
                let e = c.entry(key.clone()).or_insert_with(Scalar::zero);
                *e += v * q;
                if e.is_zero() {
                    c.remove(key);
                }
            }
            out.comps[k] = c;
        }
        Ok(out)
    }

    pub fn add(&self, other: &Cochain) -> Result<Self, HochschildError> {
        self.add_scaled(other, &Scalar::one())
    }

    pub fn sub(&self, other: &Cochain) -> Result<Self, HochschildError> {
        self.add_scaled(other, &-Scalar::one())
    }

    /// Agreement on every arity known for both.
    pub fn agrees_with(&self, other: &Cochain) -> bool {
        let top = self.cap.max(other.cap);
        (0..=top).all(|k| match (self.component(k), other.component(k)) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        })
    }

    /// Arities at which `self` and `other` are both known and differ.
    pub fn differing_arities(&self, other: &Cochain) -> Vec<usize> {
        let top = self.cap.max(other.cap);
        (0..=top)
            .filter(|&k| matches!((self.component(k), other.component(k)), (Some(a), Some(b)) if a != b))
            .collect()
    }

    pub fn to_json(&self) -> CochainJson {
        CochainJson {
            cap: self.cap,
            complete: self.complete,
            terms: self
                .entries()
                .into_iter()
                .map(|(ins, o, q)| CochainTermJson {
                    arity: ins.len(),
                    inputs: ins.iter().map(|&i| self.space.names[i].clone()).collect(),
                    output: self.space.names[o].clone(),
                    coeff: scalar::format(&q),
                })
                .collect(),
        }
    }

    pub fn from_json(space: &Arc<GradedSpace>, j: &CochainJson) -> Result<Self, HochschildError> {
        let mut out = Self::zero(space, j.cap, j.complete);
        for t in &j.terms {
            if t.arity != t.inputs.len() {
                return Err(HochschildError::ArityMismatch { arity: t.arity, inputs: t.inputs.len() });
            }
            if t.arity > j.cap {
                return Err(HochschildError::AboveCap(t.arity, j.cap));
            }
            let ins = t.inputs.iter().map(|n| space.index(n)).collect::<Result<Vec<_>, _>>()?;
            let o = space.index(&t.output)?;
            let q = scalar::parse(&t.coeff).map_err(|e| HochschildError::Coefficient(e.to_string()))?;
            out.add_entry(ins, o, &q);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainTermJson {
    pub arity: usize,
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub cap: usize,
    #[serde(default = "default_true")]
    pub complete: bool,
    pub terms: Vec<CochainTermJson>,
}

fn default_true() -> bool {
    true
}

fn known_term(f: &Cochain, k: usize, g: &Cochain, l: usize) -> bool {
    let (a, b) = (f.status(k), g.status(l));
    a == Status::Zero || b == Status::Zero || (a != Status::Unknown && b != Status::Unknown)
}

/// The pre-Lie product `f ∘ g = Σ_i f ∘_i g`, where
/// `(f ∘_i g)(x_1, …) = (-1)^{|g|(|x_1| + … + |x_{i-1}|)} f(x_1, …, g(x_i, …), …)` on `V`.
pub fn circle(f: &Cochain, g: &Cochain) -> Result<Cochain, HochschildError> {
    if f.space != g.space {
        return Err(HochschildError::SpaceMismatch);
    }
    let space = &f.space;
    let complete = f.complete && g.complete;
    let top = if complete {
        match (f.max_arity(), g.max_arity()) {
            (Some(a), Some(b)) if a >= 1 => a + b - 1,
            _ => 0,
        }
    } else {
        f.cap.max(g.cap)
    };
    let mut cap = None;
    for n in 0..=top {
        if (0..=n).all(|l| known_term(f, n - l + 1, g, l)) {
            cap = Some(n);
        } else {
            break;
        }
    }
    let cap = cap.ok_or(HochschildError::CapExhausted)?;
    let mut out = Cochain::zero(space, cap, complete);
    for n in 0..=cap {
        for l in 0..=n {
            let k = n - l + 1;
            let (Some(fk), Some(gl)) = (f.component(k), g.component(l)) else {
                continue;
            };
            for ((fin, fo), fq) in fk {
                for i in 0..k {
                    let p = fin[i];
                    let prefix: i64 = fin[..i].iter().map(|&x| space.shifted(x)).sum();
                    for ((gin, go), gq) in gl {
                        if *go != p {
                            continue;
                        }
                        let gdeg = space.shifted(*go) - gin.iter().map(|&x| space.shifted(x)).sum::<i64>();
                        let mut ins = Vec::with_capacity(n);
                        ins.extend_from_slice(&fin[..i]);
                        ins.extend_from_slice(gin);
                        ins.extend_from_slice(&fin[i + 1..]);
                        let q = fq * gq;
                        let q = if odd(gdeg * prefix) { -q } else { q };
                        out.add_suspended(ins, *fo, &q);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Splits a cochain into pieces of constant suspended degree.
pub fn homogeneous_parts(c: &Cochain) -> BTreeMap<i64, Cochain> {
    let mut out: BTreeMap<i64, Cochain> = BTreeMap::new();
    for (k, comp) in c.comps.iter().enumerate() {
        for ((ins, o), q) in comp {
            let d = c.entry_degree(ins, *o);
            out.entry(d)
                .or_insert_with(|| Cochain::zero(&c.space, c.cap, c.complete))
                .comps[k]
                .insert((ins.clone(), *o), q.clone());
        }
    }
    out
}

/// `[f, g] = f ∘ g - (-1)^{(deg f + 1)(deg g + 1)} g ∘ f`, extended bilinearly over
/// homogeneous parts.
pub fn bracket(f: &Cochain, g: &Cochain) -> Result<Cochain, HochschildError> {
    let mut out = circle(f, g)?;
    for (&df, fp) in &homogeneous_parts(f) {
        for (&dg, gp) in &homogeneous_parts(g) {
            let s = -scalar::parity((df + 1) * (dg + 1));
            out = out.add_scaled(&circle(gp, fp)?, &s)?;
        }
    }
    // keep the truncation of g ∘ f even when one side vanishes
    let gf = circle(g, f)?.scaled(&Scalar::zero());
    out.add(&gf)
}

/// An A∞-structure: a Maurer–Cartan element of suspended degree 1 (total degree 2).
#[derive(Clone, Debug, PartialEq)]
pub struct AInfinityStructure {
    pub m: Cochain,
    /// Whether an arity-0 component (curvature) is permitted.
    pub curved: bool,
}

impl AInfinityStructure {
    pub fn new(m: Cochain, curved: bool) -> Result<Self, HochschildError> {
        if let Some(d) = homogeneous_parts(&m).keys().find(|&&d| d != 2) {
            return Err(HochschildError::NotAInfinity(format!("component of total degree {d}")));
        }
        if !curved && m.status(0) == Status::Nonzero {
            return Err(HochschildError::NotAInfinity("nonzero m_0 in the truncated complex".into()));
        }
        Ok(Self { m, curved })
    }

    pub fn zero(space: &Arc<GradedSpace>, cap: usize) -> Self {
        Self { m: Cochain::zero(space, cap, true), curved: false }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.m.space()
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson { space: self.space().to_json(), m: self.m.to_json(), curved: self.curved }
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self, HochschildError> {
        let space = Arc::new(GradedSpace::from_json(&j.space)?);
        Self::new(Cochain::from_json(&space, &j.m)?, j.curved)
    }

    /// The component `m_k` as a cochain concentrated in arity `k`.
    pub fn m_component(&self, k: usize) -> Option<&Component> {
        self.m.component(k)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub space: GradedSpaceJson,
    pub m: CochainJson,
    #[serde(default)]
    pub curved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McVerdict {
    pub holds: bool,
    /// Highest arity of `m ∘ m` that was checked.
    pub verified_up_to: usize,
    pub first_failure: Option<usize>,
    pub complete: bool,
}

/// Checks `[m, m] = 2 m ∘ m = 0` on every computable arity.
pub fn is_maurer_cartan(m: &Cochain) -> McVerdict {
    match circle(m, m) {
        Ok(mm) => {
            let first_failure = (0..=mm.cap()).find(|&k| mm.status(k) == Status::Nonzero);
            McVerdict {
                holds: first_failure.is_none(),
                verified_up_to: mm.cap(),
                first_failure,
                complete: mm.is_complete(),
            }
        }
        Err(_) => McVerdict { holds: true, verified_up_to: 0, first_failure: None, complete: false },
    }
}

/// `d_m γ = [m, γ]`.
pub fn hochschild_differential(m: &AInfinityStructure, g: &Cochain) -> Result<Cochain, HochschildError> {
    bracket(&m.m, g)
}

/// Standard test algebras.
pub mod algebras {
    use super::*;

    fn space(names: &[&str], degrees: &[i64]) -> Arc<GradedSpace> {
        Arc::new(GradedSpace::new(names.iter().map(|s| s.to_string()).collect(), degrees.to_vec()).unwrap())
    }

    fn product(space: &Arc<GradedSpace>, table: &[(usize, usize, usize)]) -> Cochain {
        let mut m = Cochain::zero(space, 2, true);
        for &(a, b, c) in table {
            m.add_entry(vec![a, b], c, &Scalar::one());
        }
        m
    }

    /// `k[x]/x²` with basis `1, x` in degree 0.
    pub fn dual_numbers() -> AInfinityStructure {
        let s = space(&["1", "x"], &[0, 0]);
        let m = product(&s, &[(0, 0, 0), (0, 1, 1), (1, 0, 1)]);
        AInfinityStructure::new(m, false).unwrap()
    }

    /// Two basis vectors `a` (degree 0), `b` (degree -1) with `m_3(a, a, a) = b` only.
    pub fn ternary() -> AInfinityStructure {
        let s = space(&["a", "b"], &[0, -1]);
        let mut m = Cochain::zero(&s, 3, true);
        m.add_entry(vec![0, 0, 0], 1, &Scalar::one());
        AInfinityStructure::new(m, false).unwrap()
    }

    /// A product that fails associativity: `u·u = v`, `v·u = u`.
    pub fn non_associative() -> AInfinityStructure {
        let s = space(&["u", "v"], &[0, 0]);
        let m = product(&s, &[(0, 0, 1), (1, 0, 0)]);
        AInfinityStructure { m, curved: false }
    }

    /// The ground field in degree 0.
    pub fn ground_field() -> AInfinityStructure {
        let s = space(&["1"], &[0]);
        AInfinityStructure::new(product(&s, &[(0, 0, 0)]), false).unwrap()
    }
}

/// A random cochain with entries of total degree `degree` in arities `arities`, integer
/// coefficients in `-2..=2`, each entry present with probability `density`.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    space: &Arc<GradedSpace>,
    cap: usize,
    arities: &[usize],
    degree: i64,
    density: f64,
) -> Cochain {
    let mut out = Cochain::zero(space, cap, true);
    let d = space.dim();
    for &k in arities {
        for idx in 0..d.pow(k as u32) {
            let mut ins = Vec::with_capacity(k);
            let mut r = idx;
            for _ in 0..k {
                ins.push(r % d);
                r /= d;
            }
            ins.reverse();
            for o in 0..d {
                if out.entry_degree(&ins, o) != degree || !rng.gen_bool(density) {
                    continue;
                }
                let q: i64 = rng.gen_range(-2..=2);
                out.add_suspended(ins.clone(), o, &scalar::int(q));
            }
        }
    }
    out
}
