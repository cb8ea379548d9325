//! Verification suites: each check runs a property over a family of inputs and records
//! the number of cases and failures. Sampled checks draw from a ChaCha stream keyed by
//! the seed and the check identifier, so a report depends only on its configuration.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action::{check_composition, check_dg_compatibility};
use crate::chain::Chain;
use crate::hochschild::{self, algebras, bracket, hochschild_differential, is_maurer_cartan, AInfinityStructure, Cochain};
use crate::minimal_operad::{self as mo, MinimalOperad};
use crate::operad::{Associative, DgOperad};
use crate::orders;
use crate::resolution;
use crate::scalar;
use crate::trees::{permutations, PlanarTree};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl CheckResult {
    fn from_cases(id: impl Into<String>, results: Vec<Result<(), String>>) -> Self {
        let cases = results.len();
        let failures: Vec<String> = results.into_iter().filter_map(Result::err).collect();
        Self {
            id: id.into(),
            passed: failures.is_empty(),
            cases,
            failures: failures.len(),
            first_failure: failures.into_iter().next(),
        }
    }

    /// A check that passes iff the property fails at least once (negative control).
    fn expecting_failure(id: impl Into<String>, results: Vec<Result<(), String>>) -> Self {
        let cases = results.len();
        let failures = results.iter().filter(|r| r.is_err()).count();
        Self {
            id: id.into(),
            passed: failures > 0,
            cases,
            failures,
            first_failure: (failures == 0).then(|| "no failure detected".to_string()),
        }
    }
}

fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OperadKind {
    #[serde(rename = "M")]
    M,
    #[serde(rename = "As")]
    As,
    #[serde(rename = "P-M")]
    PM,
    #[serde(rename = "P-As")]
    PAs,
}

impl std::fmt::Display for OperadKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OperadKind::M => "M",
            OperadKind::As => "As",
            OperadKind::PM => "P-M",
            OperadKind::PAs => "P-As",
        })
    }
}

/// Number of admissible trees with `n` labels, by counting (no enumeration).
pub fn count_admissible(n: usize) -> u128 {
    if n == 0 {
        return 0;
    }
    let binom = |a: usize, b: usize| -> u128 {
        let mut r: u128 = 1;
        for k in 0..b {
            r = r * (a - k) as u128 / (k + 1) as u128;
        }
        r
    };
    // t[k]: trees on k labels, f[k]: ordered forests on k labels
    let mut t = vec![0u128; n + 1];
    let mut f = vec![0u128; n + 1];
    f[0] = 1;
    for k in 1..=n {
        let several: u128 = (1..k).map(|j| binom(k, j) * t[j] * f[k - j]).sum();
        t[k] = k as u128 * f[k - 1] + several;
        f[k] = t[k] + several;
    }
    t[n]
}

// ---------------------------------------------------------------------------
// d² = 0

pub fn d_squared(kind: OperadKind, max_arity: usize) -> Vec<CheckResult> {
    (1..=max_arity)
        .map(|n| match kind {
            OperadKind::M => {
                let res = mo::basis(n)
                    .par_iter()
                    .map(|t| {
                        let dd = mo::differential_chain(&mo::differential(t));
                        if dd.is_zero() {
                            Ok(())
                        } else {
                            Err(format!("d²({t}) ≠ 0"))
                        }
                    })
                    .collect();
                CheckResult::from_cases(format!("d-squared/M/{n}"), res)
            }
            OperadKind::As => CheckResult::from_cases(format!("d-squared/As/{n}"), vec![Ok(())]),
            OperadKind::PM => p_d_squared(&MinimalOperad, "P-M", n),
            OperadKind::PAs => p_d_squared(&Associative, "P-As", n),
        })
        .collect()
}

fn p_d_squared<R: DgOperad>(r: &R, name: &str, n: usize) -> CheckResult {
    let res = resolution::basis_p(r, n)
        .par_iter()
        .map(|t| {
            let d = resolution::d_p(r, t);
            if !resolution::d_p_chain(r, &d).is_zero() {
                return Err(format!("d_P²({t}) ≠ 0"));
            }
            if resolution::phi_chain(r, &d) != r.differential_chain(&resolution::phi(r, t)) {
                return Err(format!("φ d_P ≠ d φ on {t}"));
            }
            if t.is_generator() {
                let w = resolution::weight(r, t);
                for (s, _) in d.iter() {
                    for c in resolution::generator_components(r, s) {
                        if resolution::weight(r, &c) >= w {
                            return Err(format!("filtration: {c} in d_P({t})"));
                        }
                    }
                }
            }
            Ok(())
        })
        .collect();
    CheckResult::from_cases(format!("d-squared/{name}/{n}"), res)
}

// ---------------------------------------------------------------------------
// Leibniz

fn leibniz_case(a: &PlanarTree, i: usize, b: &PlanarTree) -> Result<(), String> {
    let lhs = mo::differential_chain(&mo::compose(a, i, b).map_err(|e| e.to_string())?);
    let mut rhs = mo::compose_chains(&mo::differential(a), i, &Chain::basis(b.clone())).map_err(|e| e.to_string())?;
    let right = mo::compose_chains(&Chain::basis(a.clone()), i, &mo::differential(b)).map_err(|e| e.to_string())?;
    rhs.add_scaled(&right, &scalar::parity(mo::degree(a)));
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!("Leibniz fails for {a} ∘_{i} {b}"))
    }
}

pub fn leibniz(exhaustive_up_to: usize, samples_at: Option<(usize, usize)>, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut cases = Vec::new();
    for n1 in 1..=exhaustive_up_to {
        for n2 in 1..=exhaustive_up_to + 1 - n1 {
            for a in mo::basis(n1) {
                for b in mo::basis(n2) {
                    for i in 1..=n1 {
                        cases.push((a.clone(), i, b.clone()));
                    }
                }
            }
        }
    }
    let res = cases.par_iter().map(|(a, i, b)| leibniz_case(a, *i, b)).collect();
    out.push(CheckResult::from_cases(format!("leibniz/exhaustive/{exhaustive_up_to}"), res));
    if let Some((total, count)) = samples_at {
        let id = format!("leibniz/sampled/{total}");
        let mut rng = rng_for(seed, &id);
        let bases: Vec<Vec<PlanarTree>> = (0..=total).map(mo::basis).collect();
        let sampled: Vec<(PlanarTree, usize, PlanarTree)> = (0..count)
            .map(|_| {
                let n1 = rng.gen_range(1..=total);
                let n2 = total + 1 - n1;
                let a = bases[n1][rng.gen_range(0..bases[n1].len())].clone();
                let b = bases[n2][rng.gen_range(0..bases[n2].len())].clone();
                (a, rng.gen_range(1..=n1), b)
            })
            .collect();
        let res = sampled.par_iter().map(|(a, i, b)| leibniz_case(a, *i, b)).collect();
        out.push(CheckResult::from_cases(id, res));
    }
    out
}

// ---------------------------------------------------------------------------
// operad axioms

fn compose_c(a: &Chain<PlanarTree>, i: usize, b: &Chain<PlanarTree>) -> Chain<PlanarTree> {
    mo::compose_chains(a, i, b).expect("label in range")
}

/// Sequential and parallel associativity for one triple; `Err` on the first mismatch.
pub fn associativity_case(x: &PlanarTree, y: &PlanarTree, z: &PlanarTree) -> Result<(), String> {
    let (n1, n2, n3) = (x.arity(), y.arity(), z.arity());
    let (cx, cy, cz) = (Chain::basis(x.clone()), Chain::basis(y.clone()), Chain::basis(z.clone()));
    let koszul = scalar::parity(mo::degree(y) * mo::degree(z));
    for i in 1..=n1 {
        let xy = compose_c(&cx, i, &cy);
        for j in 1..=n1 + n2 - 1 {
            let lhs = compose_c(&xy, j, &cz);
            let rhs = if j < i {
                compose_c(&compose_c(&cx, j, &cz), i + n3 - 1, &cy).scaled(&koszul)
            } else if j < i + n2 {
                compose_c(&cx, i, &compose_c(&cy, j - i + 1, &cz))
            } else {
                compose_c(&compose_c(&cx, j - n2 + 1, &cz), i, &cy).scaled(&koszul)
            };
            if lhs != rhs {
                return Err(format!("({x} ∘_{i} {y}) ∘_{j} {z}"));
            }
        }
    }
    Ok(())
}

/// Block permutation induced on `x ∘_i y` by `σ` on `x` and `τ` on `y`.
pub fn block_permutation(sigma: &[usize], i: usize, tau: &[usize]) -> Vec<usize> {
    let n2 = tau.len();
    let si = sigma[i - 1];
    let outer = |l: usize| {
        let s = sigma[l - 1];
        if s < si {
            s
        } else {
            s + n2 - 1
        }
    };
    let mut out = Vec::new();
    for l in 1..i {
        out.push(outer(l));
    }
    for &t in tau {
        out.push(si + t - 1);
    }
    for l in i + 1..=sigma.len() {
        out.push(outer(l));
    }
    out
}

pub fn operad_axioms(unit_up_to: usize, assoc_total: usize, equivariance_up_to: usize) -> Vec<CheckResult> {
    let e = PlanarTree::unit();
    let mut unit = Vec::new();
    for n in 1..=unit_up_to {
        for x in mo::basis(n) {
            let id = Chain::basis(x.clone());
            unit.push(if mo::compose(&e, 1, &x).ok() == Some(id.clone()) {
                Ok(())
            } else {
                Err(format!("left unit on {x}"))
            });
            for i in 1..=n {
                unit.push(if mo::compose(&x, i, &e).ok() == Some(id.clone()) {
                    Ok(())
                } else {
                    Err(format!("right unit at {i} on {x}"))
                });
            }
        }
    }

    let mut triples = Vec::new();
    for n1 in 1..=assoc_total {
        for n2 in 1..=assoc_total {
            for n3 in 1..=assoc_total {
                if n1 + n2 + n3 > assoc_total + 2 {
                    continue;
                }
                for x in mo::basis(n1) {
                    for y in mo::basis(n2) {
                        for z in mo::basis(n3) {
                            triples.push((x.clone(), y.clone(), z.clone()));
                        }
                    }
                }
            }
        }
    }
    let assoc = triples.par_iter().map(|(x, y, z)| associativity_case(x, y, z)).collect();

    let mut equi = Vec::new();
    for n1 in 1..=equivariance_up_to {
        for n2 in 1..=equivariance_up_to + 1 - n1 {
            for x in mo::basis(n1) {
                for y in mo::basis(n2) {
                    for i in 1..=n1 {
                        let c = mo::compose(&x, i, &y).expect("label");
                        for sigma in permutations(n1) {
                            for tau in permutations(n2) {
                                let lhs = mo::relabel_chain(&c, &block_permutation(&sigma, i, &tau));
                                let rhs = mo::compose(&x.relabel_unchecked(&sigma), sigma[i - 1], &y.relabel_unchecked(&tau))
                                    .expect("label");
                                equi.push(if lhs == rhs {
                                    Ok(())
                                } else {
                                    Err(format!("equivariance: {x} ∘_{i} {y}, σ={sigma:?}, τ={tau:?}"))
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    vec![
        CheckResult::from_cases(format!("operad-axioms/associativity/{assoc_total}"), assoc),
        CheckResult::from_cases(format!("operad-axioms/equivariance/{equivariance_up_to}"), equi),
        CheckResult::from_cases(format!("operad-axioms/unit/{unit_up_to}"), unit),
    ]
}

// ---------------------------------------------------------------------------
// Hochschild and the action

/// Random homogeneous cochain on the algebra's space, of arity at most 2.
pub fn random_cochain<R: Rng>(rng: &mut R, m: &AInfinityStructure) -> Cochain {
    let degree = rng.gen_range(-1..=2);
    hochschild::random_homogeneous(rng, m.space(), 2, &[0, 1, 2], degree, 0.7)
}

pub fn test_algebras() -> Vec<(&'static str, AInfinityStructure)> {
    vec![("dual-numbers", algebras::dual_numbers()), ("ternary", algebras::ternary())]
}

pub fn gerstenhaber(samples: usize, cap: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, m) in test_algebras() {
        let id = format!("gerstenhaber/{name}");
        let mut rng = rng_for(seed, &id);
        let s = m.space().clone();
        let mut anti = Vec::new();
        let mut jacobi = Vec::new();
        let mut dd = Vec::new();
        let arities: Vec<usize> = (0..=cap.min(3)).collect();
        while anti.len() < samples {
            let gen = |rng: &mut ChaCha8Rng| {
                let d = rng.gen_range(-1..=3);
                hochschild::random_homogeneous(rng, &s, cap, &arities, d, 0.5)
            };
            let (f, g, h) = (gen(&mut rng), gen(&mut rng), gen(&mut rng));
            let (Some(df), Some(dg), Some(_)) = (f.degree(), g.degree(), h.degree()) else {
                continue;
            };
            let sfg = scalar::parity((df + 1) * (dg + 1));
            let fg = bracket(&f, &g).unwrap();
            let gf = bracket(&g, &f).unwrap().scaled(&-sfg.clone());
            anti.push(if fg.differing_arities(&gf).is_empty() { Ok(()) } else { Err("antisymmetry".into()) });
            let lhs = bracket(&f, &bracket(&g, &h).unwrap()).unwrap();
            let rhs = bracket(&fg, &h).unwrap().add_scaled(&bracket(&g, &bracket(&f, &h).unwrap()).unwrap(), &sfg).unwrap();
            jacobi.push(if lhs.differing_arities(&rhs).is_empty() { Ok(()) } else { Err("Jacobi".into()) });
            if is_maurer_cartan(&m.m).holds {
                let x = hochschild_differential(&m, &hochschild_differential(&m, &f).unwrap()).unwrap();
                dd.push(if x.is_zero() { Ok(()) } else { Err("d_m² ≠ 0".into()) });
            }
        }
        out.push(CheckResult::from_cases(format!("{id}/antisymmetry"), anti));
        out.push(CheckResult::from_cases(format!("{id}/d-squared"), dd));
        out.push(CheckResult::from_cases(format!("{id}/jacobi"), jacobi));
    }
    out
}

pub fn action_axioms(n_max: usize, cap: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, m) in test_algebras() {
        let id = format!("action-axioms/{name}/{n_max}");
        let mut rng = rng_for(seed, &id);
        let mut cases = Vec::new();
        for n1 in 1..=n_max {
            for n2 in 1..=n_max + 1 - n1 {
                for a in mo::basis(n1) {
                    for b in mo::basis(n2) {
                        for i in 1..=n1 {
                            let g: Vec<Cochain> = (0..n1 + n2 - 1).map(|_| random_cochain(&mut rng, &m)).collect();
                            cases.push((a.clone(), i, b.clone(), g));
                        }
                    }
                }
            }
        }
        let res = cases
            .par_iter()
            .map(|(a, i, b, g)| match check_composition(a, *i, b, g, &m, cap) {
                Ok(c) if c.holds => Ok(()),
                Ok(c) => Err(format!("{a} ∘_{i} {b}: arities {:?}", c.differing_arities)),
                Err(e) => Err(e.to_string()),
            })
            .collect();
        out.push(CheckResult::from_cases(id, res));
    }
    out
}

fn dg_cases(m: &AInfinityStructure, n_max: usize, per_tree: usize, cap: usize, rng: &mut ChaCha8Rng) -> Vec<Result<(), String>> {
    let mut cases = Vec::new();
    for n in 1..=n_max {
        for t in mo::basis(n) {
            for _ in 0..per_tree {
                let g: Vec<Cochain> = (0..n).map(|_| random_cochain(rng, m)).collect();
                cases.push((t.clone(), g));
            }
        }
    }
    cases
        .par_iter()
        .map(|(t, g)| match check_dg_compatibility(t, g, m, cap) {
            Ok(c) if c.holds => Ok(()),
            Ok(c) => Err(format!("{t}: arities {:?}", c.differing_arities)),
            Err(e) => Err(e.to_string()),
        })
        .collect()
}

pub fn dg_compat(n_max: usize, per_tree: usize, cap: usize, seed: u64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for (name, m) in test_algebras() {
        let id = format!("dg-compat/{name}/{n_max}");
        let mut rng = rng_for(seed, &id);
        out.push(CheckResult::from_cases(id, dg_cases(&m, n_max, per_tree, cap, &mut rng)));
    }
    let id = format!("dg-compat/negative-control/{n_max}");
    let mut rng = rng_for(seed, &id);
    out.push(CheckResult::expecting_failure(id, dg_cases(&algebras::non_associative(), n_max, per_tree, cap, &mut rng)));
    out
}

// ---------------------------------------------------------------------------
// orders

pub fn order_properties(max_arity: usize) -> Vec<CheckResult> {
    (2..=max_arity)
        .map(|n| {
            let res = resolution::generators(&MinimalOperad, n)
                .par_iter()
                .map(|t| {
                    let p = orders::tail_orders(t).map_err(|e| e.to_string())?;
                    p.validate().map_err(|e| format!("{t}: {e}"))?;
                    let (plus, minus) = orders::combined_orders(&p).map_err(|e| format!("{t}: {e}"))?;
                    if orders::reconstruct(&plus, &minus) != p {
                        return Err(format!("{t}: reconstruction"));
                    }
                    let s0 = orders::minimal_element(&p).map_err(|e| format!("{t}: {e}"))?;
                    if s0 != plus[0] {
                        return Err(format!("{t}: s0 = {s0} but min <_(1+2) = {}", plus[0]));
                    }
                    Ok(())
                })
                .collect();
            CheckResult::from_cases(format!("orders/{n}"), res)
        })
        .collect()
}
