//! One line per acceptance criterion; exits nonzero if any criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use minop::action::check_dg_compatibility;
use minop::hochschild::{algebras, bracket, hochschild_differential, is_maurer_cartan, random_homogeneous, Cochain};
use minop::homology::{assemble, betti, euler, ChainComplexData};
use minop::minimal_operad::{self as mo, MinimalOperad};
use minop::operad::{Associative, DgOperad};
use minop::orders::{combined_orders, minimal_element, reconstruct, tail_orders};
use minop::resolution::{self as res, basis_p, leaf_order};
use minop::trees::{permutations, PlanarTree};
use minop::{scalar, Chain};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn m_complex(n: usize) -> ChainComplexData {
    assemble(&mo::basis(n), mo::degree, mo::differential).expect("d² = 0")
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for n in 1..=4 {
        let basis = mo::basis(n);
        total += basis.len();
        let bad: Vec<String> = basis
            .par_iter()
            .filter(|t| !mo::differential_chain(&mo::differential(t)).is_zero())
            .map(|t| t.to_string())
            .collect();
        ensure(bad.is_empty(), || format!("d² ≠ 0 on {}", bad[0]))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} basis trees, {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let expected = [vec![1, 1], vec![1, 3, 2], vec![1, 6, 11, 6]];
    for n in 2..=4 {
        let b = betti(&m_complex(n)).descending(n);
        ensure(b == expected[n - 2], || format!("Betti(M_{n}) = {b:?}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(600), || format!("took {elapsed:?}"))?;
    Ok(format!("(1,1), (1,3,2), (1,6,11,6), {:.1}s", elapsed.as_secs_f64()))
}

fn criterion_3() -> Outcome {
    for n in 2..=4 {
        let e = euler(&m_complex(n));
        ensure(e == 0, || format!("χ(M_{n}) = {e}"))?;
    }
    let cells: Vec<_> = basis_p(&Associative, 4).into_iter().filter(|t| leaf_order(t) == vec![1, 2, 3, 4]).collect();
    let k4 = assemble(&cells, |t| res::degree(&Associative, t), |t| res::d_p(&Associative, t)).map_err(|e| e.to_string())?;
    let dims = [k4.dim(0), k4.dim(-1), k4.dim(-2)];
    ensure(dims == [11, 15, 5], || format!("K4 dimensions {dims:?}"))?;
    let e = euler(&k4);
    ensure(e == 1, || format!("χ(K4) = {e}"))?;
    Ok("χ(M_2..4) = 0, K4 dims (11,15,5), χ(K4) = 1".into())
}

fn leibniz(a: &PlanarTree, i: usize, b: &PlanarTree) -> bool {
    let lhs = mo::differential_chain(&mo::compose(a, i, b).unwrap());
    let mut rhs = mo::compose_chains(&mo::differential(a), i, &Chain::basis(b.clone())).unwrap();
    rhs.add_scaled(
        &mo::compose_chains(&Chain::basis(a.clone()), i, &mo::differential(b)).unwrap(),
        &scalar::parity(mo::degree(a)),
    );
    lhs == rhs
}

fn criterion_4() -> Outcome {
    let mut exhaustive = 0;
    for n1 in 1..=3 {
        for n2 in 1..=4 - n1 {
            for a in mo::basis(n1) {
                for b in mo::basis(n2) {
                    for i in 1..=n1 {
                        ensure(leibniz(&a, i, &b), || format!("{a} ∘_{i} {b}"))?;
                        exhaustive += 1;
                    }
                }
            }
        }
    }
    let bases: Vec<Vec<PlanarTree>> = (0..=4).map(mo::basis).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let samples: Vec<(PlanarTree, usize, PlanarTree)> = (0..200)
        .map(|_| {
            let n1 = rng.gen_range(1..=4);
            let a = bases[n1][rng.gen_range(0..bases[n1].len())].clone();
            let b = bases[5 - n1][rng.gen_range(0..bases[5 - n1].len())].clone();
            (a, rng.gen_range(1..=n1), b)
        })
        .collect();
    let bad = samples.par_iter().filter(|(a, i, b)| !leibniz(a, *i, b)).count();
    ensure(bad == 0, || format!("{bad} sampled failures at 4 labels"))?;
    Ok(format!("{exhaustive} exhaustive cases, 200 samples at 4 labels"))
}

fn comp(a: &Chain<PlanarTree>, i: usize, b: &Chain<PlanarTree>) -> Chain<PlanarTree> {
    mo::compose_chains(a, i, b).unwrap()
}

fn associative(x: &PlanarTree, y: &PlanarTree, z: &PlanarTree) -> bool {
    let (n1, n2, n3) = (x.arity(), y.arity(), z.arity());
    let (cx, cy, cz) = (Chain::basis(x.clone()), Chain::basis(y.clone()), Chain::basis(z.clone()));
    let sign = scalar::parity(mo::degree(y) * mo::degree(z));
    (1..=n1).all(|i| {
        let xy = comp(&cx, i, &cy);
        (1..n1 + n2).all(|j| {
            let lhs = comp(&xy, j, &cz);
            let rhs = if j < i {
                comp(&comp(&cx, j, &cz), i + n3 - 1, &cy).scaled(&sign)
            } else if j < i + n2 {
                comp(&cx, i, &comp(&cy, j - i + 1, &cz))
            } else {
                comp(&comp(&cx, j - n2 + 1, &cz), i, &cy).scaled(&sign)
            };
            lhs == rhs
        })
    })
}

fn criterion_5() -> Outcome {
    let e = PlanarTree::unit();
    let mut units = 0;
    for n in 1..=5 {
        for t in mo::basis(n) {
            let id = Chain::basis(t.clone());
            ensure(mo::compose(&e, 1, &t).unwrap() == id, || format!("left unit on {t}"))?;
            for i in 1..=n {
                ensure(mo::compose(&t, i, &e).unwrap() == id, || format!("right unit on {t} at {i}"))?;
            }
            units += 1;
        }
    }
    let mut triples = Vec::new();
    for n1 in 1..=5 {
        for n2 in 1..=5 {
            for n3 in 1..=5 {
                if n1 + n2 + n3 <= 7 {
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
    }
    let bad: Vec<String> = triples
        .par_iter()
        .filter(|(x, y, z)| !associative(x, y, z))
        .map(|(x, y, z)| format!("{x}, {y}, {z}"))
        .collect();
    ensure(bad.is_empty(), || format!("associativity fails on {}", bad[0]))?;
    let mut equi = 0;
    for n1 in 1..=3 {
        for n2 in 1..=4 - n1 {
            for x in mo::basis(n1) {
                for y in mo::basis(n2) {
                    for i in 1..=n1 {
                        let c = mo::compose(&x, i, &y).unwrap();
                        for s in permutations(n1) {
                            for t in permutations(n2) {
                                let lift = |l: usize| if s[l - 1] < s[i - 1] { s[l - 1] } else { s[l - 1] + n2 - 1 };
                                let mut rho: Vec<usize> = (1..i).map(lift).collect();
                                rho.extend(t.iter().map(|&j| s[i - 1] + j - 1));
                                rho.extend((i + 1..=n1).map(lift));
                                let rhs = mo::compose(&x.relabel(&s).unwrap(), s[i - 1], &y.relabel(&t).unwrap()).unwrap();
                                ensure(mo::relabel_chain(&c, &rho) == rhs, || format!("equivariance on {x} ∘_{i} {y}"))?;
                                equi += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(format!("unit on {units} trees, associativity on {} triples, equivariance on {equi} cases", triples.len()))
}

fn check_p<R: DgOperad>(r: &R, n: usize) -> Result<usize, String> {
    let basis = basis_p(r, n);
    let bad: Vec<String> = basis
        .par_iter()
        .filter(|t| {
            let d = res::d_p(r, t);
            !res::d_p_chain(r, &d).is_zero() || res::phi_chain(r, &d) != r.differential_chain(&res::phi(r, t))
        })
        .map(|t| t.to_string())
        .collect();
    ensure(bad.is_empty(), || format!("{} n={n}: fails on {}", r.name(), bad[0]))?;
    Ok(basis.len())
}

fn p_betti<R: DgOperad>(r: &R, n: usize) -> Vec<usize> {
    let c = assemble(&basis_p(r, n), |t| res::degree(r, t), |t| res::d_p(r, t)).expect("d_P² = 0");
    betti(&c).descending(n + 1)
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    for n in 1..=4 {
        checked += check_p(&Associative, n)?;
    }
    for n in 1..=3 {
        checked += check_p(&MinimalOperad, n)?;
    }
    for n in 2..=4 {
        let b = p_betti(&Associative, n);
        let fact: usize = (1..=n).product();
        let mut expected = vec![0; n + 1];
        expected[0] = fact;
        ensure(b == expected, || format!("Betti(P_As,{n}) = {b:?}"))?;
    }
    for n in 2..=3 {
        let b = p_betti(&MinimalOperad, n);
        let m = betti(&m_complex(n)).descending(n + 1);
        ensure(b == m, || format!("Betti(P_M,{n}) = {b:?} vs {m:?}"))?;
    }
    Ok(format!("{checked} meta-trees; Betti(P_As,n) = (n!,0,…), Betti(P_M,n) = Betti(M_n)"))
}

fn criterion_7() -> Outcome {
    let mut total = 0;
    for (k, m) in [algebras::dual_numbers(), algebras::ternary()].iter().enumerate() {
        let mc = is_maurer_cartan(&m.m).holds;
        ensure(mc, || "test algebra is not Maurer–Cartan".into())?;
        let mut rng = ChaCha8Rng::seed_from_u64(700 + k as u64);
        let s = m.space().clone();
        let mut done = 0;
        while done < 100 {
            let mut gen = || {
                let d = rng.gen_range(-1..=3);
                random_homogeneous(&mut rng, &s, 5, &[0, 1, 2, 3], d, 0.5)
            };
            let (f, g, h): (Cochain, Cochain, Cochain) = (gen(), gen(), gen());
            let (Some(df), Some(dg), Some(_)) = (f.degree(), g.degree(), h.degree()) else {
                continue;
            };
            let sign = scalar::parity((df + 1) * (dg + 1));
            let fg = bracket(&f, &g).unwrap();
            ensure(fg.agrees_with(&bracket(&g, &f).unwrap().scaled(&-sign.clone())), || "antisymmetry".into())?;
            let lhs = bracket(&f, &bracket(&g, &h).unwrap()).unwrap();
            let rhs = bracket(&fg, &h).unwrap().add_scaled(&bracket(&g, &bracket(&f, &h).unwrap()).unwrap(), &sign).unwrap();
            ensure(lhs.agrees_with(&rhs), || "Jacobi".into())?;
            let dd = hochschild_differential(m, &hochschild_differential(m, &f).unwrap()).unwrap();
            ensure(dd.is_zero(), || "d_m² ≠ 0".into())?;
            done += 1;
        }
        total += done;
    }
    Ok(format!("{total} triples over k[x]/x² and the m_3 algebra, cap 5"))
}

fn dg_failures(m: &minop::hochschild::AInfinityStructure, seed: u64) -> (usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for n in 1..=3 {
        for t in mo::basis(n) {
            let g: Vec<Cochain> = (0..n)
                .map(|_| {
                    let d = rng.gen_range(-1..=2);
                    random_homogeneous(&mut rng, m.space(), 2, &[0, 1, 2], d, 0.7)
                })
                .collect();
            cases.push((t, g));
        }
    }
    let bad = cases.par_iter().filter(|(t, g)| !check_dg_compatibility(t, g, m, 5).unwrap().holds).count();
    (cases.len(), bad)
}

fn criterion_8() -> Outcome {
    let mut cases = 0;
    for (k, m) in [algebras::dual_numbers(), algebras::ternary()].iter().enumerate() {
        let (c, bad) = dg_failures(m, 800 + k as u64);
        ensure(bad == 0, || format!("{bad} of {c} trees fail"))?;
        cases += c;
    }
    let (c, bad) = dg_failures(&algebras::non_associative(), 899);
    ensure(bad > 0, || "negative control passed".into())?;
    Ok(format!("{cases} trees pass; non-MC control fails on {bad} of {c}"))
}

fn criterion_9() -> Outcome {
    let mut total = 0;
    for n in 2..=4 {
        for t in res::generators(&MinimalOperad, n) {
            let p = tail_orders(&t).map_err(|e| format!("{t}: {e}"))?;
            p.validate().map_err(|e| format!("{t}: {e}"))?;
            let (plus, minus) = combined_orders(&p).map_err(|e| format!("{t}: {e}"))?;
            ensure(reconstruct(&plus, &minus) == p, || format!("{t}: reconstruction"))?;
            let s0 = minimal_element(&p).map_err(|e| format!("{t}: {e}"))?;
            ensure(s0 == plus[0], || format!("{t}: s0"))?;
            total += 1;
        }
    }
    Ok(format!("{total} generators"))
}

fn criterion_10() -> Outcome {
    let args = ["verify", "--suite", "all", "--arity", "3", "--samples", "40", "--seed", "10"];
    let run = || Command::new(env!("CARGO_BIN_EXE_minop")).args(args).output().map_err(|e| e.to_string());
    let (a, b) = (run()?, run()?);
    ensure(a.status.success() && b.status.success(), || "verify battery failed".into())?;
    ensure(a.stdout == b.stdout, || "reports differ".into())?;
    Ok(format!("two runs, {} identical bytes", a.stdout.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("d_M² = 0 on M_n, n ≤ 4", criterion_1),
        ("Betti numbers of M_2, M_3, M_4", criterion_2),
        ("Euler characteristics of M_n and K4", criterion_3),
        ("graded Leibniz rule", criterion_4),
        ("operad axioms for M", criterion_5),
        ("resolution: d_P² = 0, φ chain map, quasi-isomorphism", criterion_6),
        ("Gerstenhaber structure", criterion_7),
        ("dg-compatibility of the action", criterion_8),
        ("order properties", criterion_9),
        ("determinism of CLI reports", criterion_10),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({detail})", k + 1)
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
