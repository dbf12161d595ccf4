//! Acceptance harness: prints one `criterion N: PASS/FAIL` line per
//! criterion and exits nonzero if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::*;
use picardkit::abelian::{smith_normal_form, FgAbGroup, GroupElement, IntMatrix};
use picardkit::cocycle::{cocycle_space, enumerate_h3_sym, h_mu_pair, SymCocycle3};
use picardkit::cokernel::{
    build_cokernel, cok_homotopy_groups, double_category_check, enumerate_homotopy, long_exact_sequence,
    postnikov_tower,
};
use picardkit::picard::{strictify, PicFunctor, WitnessSearch};
use picardkit::sphere::{all_permutations, free_map, ring_cells, xi, Permutation};
use picardkit::DEFAULT_BUDGET;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn validator_accepts(s: &SymCocycle3) -> bool {
    s.validate().map(|r| r.is_valid()).unwrap_or(false)
}

/// Valid `(h_μ, ρ_a)` pairs are exactly the admissible ones, and single
/// entry mutations of them are rejected.
fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut admissible = Vec::new();
    for n in [2u64, 3, 4, 6] {
        let gi = FgAbGroup::cyclic(n).index().unwrap();
        for m in [group(&[2]), group(&[3]), group(&[4]), group(&[2, 2])] {
            let mi = m.index().unwrap();
            for mu in m.elements().unwrap() {
                for a in m.elements().unwrap() {
                    // h_μ needs n·μ = 0 to be defined; for odd n this forces a = 0.
                    let expected = m.scale(n as i64, &mu).is_zero()
                        && mu == m.scale(n as i64, &a)
                        && m.scale(2, &a).is_zero();
                    let built = h_mu_pair(n, &m, &mu, &a);
                    let accepted = built.as_ref().map(validator_accepts).unwrap_or(false);
                    ensure(accepted == expected, || {
                        format!("n={n} M={m} mu={mu} a={a}: accepted={accepted}, admissible={expected}")
                    })?;
                    if let Ok(s) = built {
                        let oracle = naive_is_cocycle(&gi, &mi, &raw_of(&s));
                        ensure(oracle == expected, || format!("oracle disagrees at n={n} M={m} mu={mu} a={a}"))?;
                        if expected {
                            admissible.push(s);
                        }
                    }
                }
            }
        }
    }
    let mut r = rng(11);
    for i in 0..20 {
        let s = admissible.choose(&mut r).unwrap();
        let (g, m) = (s.g().clone(), s.m().clone());
        let n = g.order().unwrap() as usize;
        let (mut h, mut c) = {
            let (h, c) = s.tables().unwrap();
            (h.clone(), c.clone())
        };
        let nonzero: Vec<GroupElement> = m.elements().unwrap().into_iter().filter(|e| !e.is_zero()).collect();
        let delta = nonzero.choose(&mut r).unwrap();
        let what;
        if i % 2 == 0 {
            let idx = [r.gen_range(0..n), r.gen_range(1..n), r.gen_range(0..n)];
            h.set(&idx, m.add(h.get(&idx), delta));
            what = format!("h{idx:?}");
        } else {
            let idx = [r.gen_range(0..n), r.gen_range(0..n)];
            c.set(&idx, m.add(c.get(&idx), delta));
            what = format!("c{idx:?}");
        }
        let mutated = SymCocycle3::from_tables(g.clone(), m.clone(), h, c).unwrap();
        ensure(!validator_accepts(&mutated), || format!("mutation {i} ({what} on {g}, {m}) accepted"))?;
        let oracle = naive_is_cocycle(&g.index().unwrap(), &m.index().unwrap(), &raw_of(&mutated));
        ensure(!oracle, || format!("mutation {i} ({what}) is a cocycle by the oracle"))?;
    }
    within(start, Duration::from_secs(5))
}

/// `n·c(1, 1) = 0` on every symmetric cocycle over `Z/n`.
fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 1u64..=4 {
        let g = if n == 1 { FgAbGroup::trivial() } else { FgAbGroup::cyclic(n) };
        for m in small_groups(4) {
            let mi = m.index().unwrap();
            let all = brute_force_cocycles(&g, &m);
            let expected = cocycle_space(&g, &m).unwrap().order().unwrap();
            ensure(all.len() as u128 == expected, || {
                format!("Z/{n}, {m}: search found {} cocycles, solver counts {expected}", all.len())
            })?;
            if n == 1 {
                continue;
            }
            let one_one = n as usize + 1;
            for s in &all {
                let v = s.c[one_one];
                let total = (0..n).fold(0, |acc, _| mi.add(acc, v));
                ensure(total == 0, || format!("Z/{n}, {m}: c(1,1) = {} has n·c(1,1) ≠ 0", mi.element(v)))?;
            }
        }
    }
    within(start, Duration::from_secs(60))
}

/// Strictification on the whole corpus.
fn criterion_3() -> Outcome {
    for p in corpus_models() {
        let (g, m) = (p.g().clone(), p.m().clone());
        let (gi, mi) = (g.index().unwrap(), m.index().unwrap());
        let n = gi.len();
        let s = strictify(&p, DEFAULT_BUDGET).map_err(|e| format!("{g}, {m}: {e}"))?;
        let out = raw_of(s.groupoid.cocycle());
        let input = raw_of(p.cocycle());
        let c = |x: usize, y: usize| out.c[x * n + y];
        ensure(out.h.iter().all(|&v| v == 0), || format!("{g}, {m}: strict h is nonzero"))?;
        for x in 0..n {
            for y in 0..n {
                ensure(c(x, y) == mi.neg(c(y, x)), || format!("{g}, {m}: c′ not antisymmetric"))?;
                for z in 0..n {
                    ensure(c(gi.add(x, y), z) == mi.add(c(x, z), c(y, z)), || {
                        format!("{g}, {m}: c′ not additive")
                    })?;
                }
            }
            ensure(c(x, x) == input.c[x * n + x], || format!("{g}, {m}: quadratic maps differ at {x}"))?;
        }
        let WitnessSearch::Found(k) = &s.witness else {
            return Err(format!("{g}, {m}: no cohomologous witness ({:?})", s.witness));
        };
        let kk: Vec<usize> = k.table().values().iter().map(|v| mi.index_of(v)).collect();
        let d = naive_coboundary(&gi, &mi, &kk);
        for i in 0..input.h.len() {
            ensure(mi.sub(input.h[i], out.h[i]) == d.h[i], || format!("{g}, {m}: witness fails on h"))?;
        }
        for i in 0..input.c.len() {
            ensure(mi.sub(input.c[i], out.c[i]) == d.c[i], || format!("{g}, {m}: witness fails on c"))?;
        }
        ensure(s.equivalence.validate().unwrap().is_valid(), || format!("{g}, {m}: equivalence incoherent"))?;
    }
    Ok(())
}

fn describe(f: &PicFunctor) -> String {
    format!(
        "({}, {}) -> ({}, {})",
        f.source().g(),
        f.source().m(),
        f.target().g(),
        f.target().m()
    )
}

/// Exactness and formula-versus-enumeration agreement on random functors.
fn criterion_4() -> Outcome {
    let start = Instant::now();
    let functors = random_functors(50, 10, 2024);
    let nonzero = functors
        .iter()
        .filter(|f| matches!(f.constraint(), picardkit::picard::Constraint::Table(t) if !t.is_zero()))
        .count();
    ensure(functors.len() >= 50 && nonzero >= 10, || format!("corpus has {} functors, {nonzero} with φ ≠ 0", functors.len()))?;
    for f in &functors {
        let k = build_cokernel(f).map_err(|e| e.to_string())?;
        let les = long_exact_sequence(&k).map_err(|e| e.to_string())?;
        ensure(les.exactness.len() == 7 && les.is_exact(), || {
            format!("{}: not exact: {:?}", describe(f), les.exactness)
        })?;
        let h = cok_homotopy_groups(&k).map_err(|e| e.to_string())?;
        let e = enumerate_homotopy(&k).map_err(|e| e.to_string())?;
        ensure(e.pi1.abelian, || format!("{}: enumerated π₁ is not abelian", describe(f)))?;
        ensure(
            e.pi0.is_isomorphic_to(&h.pi0) && e.pi1.is_isomorphic_to(&h.pi1.group) && e.pi2.is_isomorphic_to(&h.pi2),
            || format!("{}: formula and enumeration disagree", describe(f)),
        )?;
        ensure(h.pi1.extension().map(|x| x.2).unwrap_or(false), || {
            format!("{}: π₁ extension not exact", describe(f))
        })?;
    }
    within(start, Duration::from_secs(120))
}

/// Postnikov tower on every corpus groupoid.
fn criterion_5() -> Outcome {
    for p in corpus_models() {
        let t = postnikov_tower(&p, DEFAULT_BUDGET).map_err(|e| format!("{}, {}: {e}", p.g(), p.m()))?;
        ensure(t.report.holds(), || format!("{}, {}: report fails", p.g(), p.m()))?;
        let e = enumerate_homotopy(&t.cokernel).map_err(|e| e.to_string())?;
        ensure(e.pi0.order == 1 && e.pi1.order == 1, || format!("{}, {}: π₀ or π₁ nontrivial", p.g(), p.m()))?;
        ensure(e.pi2.is_isomorphic_to(p.m()), || format!("{}, {}: π₂ ≇ π₁", p.g(), p.m()))?;
        // The witness u ↦ α = u is a bijection M → π₂.
        let w = &t.report.witness;
        let images: std::collections::HashSet<GroupElement> =
            p.m().elements().unwrap().iter().map(|u| w.apply(u)).collect();
        ensure(images.len() as u64 == p.m().order().unwrap() && images.len() as u64 == e.pi2.order, || {
            format!("{}, {}: witness is not bijective", p.g(), p.m())
        })?;
    }
    Ok(())
}

/// The double-category suite on one valid functor per choice of the four
/// groups of order at most 4. The largest cases need about 1.7·10⁷
/// instances, just over the default budget.
fn criterion_6() -> Outcome {
    const BUDGET: u64 = 1 << 25;
    let start = Instant::now();
    let groups = small_groups(4);
    let mut r = rng(6);
    let mut count = 0;
    for gc in &groups {
        for mc in &groups {
            for gd in &groups {
                for md in &groups {
                    let f = functor_between(gc, mc, gd, md, &mut r);
                    let report = double_category_check(&f, BUDGET).map_err(|e| format!("{}: {e}", describe(&f)))?;
                    ensure(report.is_valid(), || format!("{}: {}", describe(&f), report.violations[0]))?;
                    count += 1;
                }
            }
        }
    }
    ensure(count == 625, || format!("checked {count} functors"))?;
    within(start, Duration::from_secs(120))
}

fn functor_between(
    gc: &FgAbGroup,
    mc: &FgAbGroup,
    gd: &FgAbGroup,
    md: &FgAbGroup,
    r: &mut rand_chacha::ChaCha8Rng,
) -> PicFunctor {
    let source = random_permutative(gc, mc, r);
    let target = random_permutative(gd, md, r);
    for _ in 0..20 {
        let f0 = random_hom(gc, gd, r);
        let f1 = random_hom(mc, md, r);
        if let Some(f) = PicFunctor::solve(source.clone(), target.clone(), f0, f1).unwrap() {
            return f;
        }
    }
    // The zero functor is always coherent.
    let f0 = picardkit::abelian::GroupHom::zero(gc, gd);
    let f1 = picardkit::abelian::GroupHom::zero(mc, md);
    PicFunctor::solve(source, target, f0, f1).unwrap().unwrap()
}

/// The sphere model: signs, symmetries and the free property.
fn criterion_7() -> Outcome {
    for n in 1..=4 {
        for p in all_permutations(n) {
            let line = p.one_line();
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| line[i] > line[j]).count();
            let x = xi(&p);
            ensure(x.at.coords() == [n as i64] && x.label.coords() == [(inversions % 2) as i64], || {
                format!("ξ{line:?} = {x}")
            })?;
        }
    }
    let sphere = SymCocycle3::sphere();
    for m in 0..=6usize {
        for n in 0..=(6 - m) {
            let block: Vec<usize> = (1..=m + n).map(|i| if i <= m { i + n } else { i - m }).collect();
            let x = xi(&Permutation::new(block).unwrap());
            let expected = ((m * n) % 2) as i64;
            let c = sphere.c(&FgAbGroup::integers().reduce(&[m as i64]).unwrap(), &FgAbGroup::integers().reduce(&[n as i64]).unwrap());
            ensure(x.label.coords() == [expected] && c.coords() == [expected], || format!("block swap {m},{n}"))?;
        }
    }
    for m in -10i64..=10 {
        for n in -10i64..=10 {
            let cm = (m * (m - 1) / 2).rem_euclid(2);
            let cn = (n * (n - 1) / 2).rem_euclid(2);
            let r = ring_cells(m, n);
            ensure(r.product == m * n && r.symmetry.at.coords() == [m * n], || format!("ring cells at {m},{n}"))?;
            ensure(r.symmetry.label.coords() == [cm * cn], || format!("c⊗({m},{n}) = {}", r.symmetry))?;
        }
    }
    let mut pairs = 0;
    for p in corpus_models() {
        let Ok(s) = strictify(&p, DEFAULT_BUDGET) else { continue };
        let q = s.groupoid;
        let n = q.g().order().unwrap() as usize;
        let raw = raw_of(q.cocycle());
        let mi = q.m().index().unwrap();
        for (i, x) in q.g().elements().unwrap().iter().enumerate() {
            let f = free_map(&q, x).map_err(|e| e.to_string())?;
            ensure(f.validate().unwrap().is_valid(), || format!("free map to {x} in ({}, {})", q.g(), q.m()))?;
            let eta = FgAbGroup::cyclic(2).reduce(&[1]).unwrap();
            ensure(mi.index_of(&f.f1().apply(&eta)) == raw.c[i * n + i], || format!("f1(η) ≠ c(x,x) at {x}"))?;
            pairs += 1;
        }
    }
    ensure(pairs >= 10, || format!("only {pairs} free-map pairs"))
}

/// `|H³_sym|` by the solver, by brute force and by `|Hom(G/2G, M)|`.
fn criterion_8() -> Outcome {
    let start = Instant::now();
    for (g, m, expected) in [(2u64, 2u64, 2usize), (3, 3, 1), (4, 2, 2), (2, 4, 2)] {
        let (g, m) = (FgAbGroup::cyclic(g), FgAbGroup::cyclic(m));
        let solver = enumerate_h3_sym(&g, &m, DEFAULT_BUDGET).map_err(|e| e.to_string())?.class_count();
        let z = brute_force_cocycles(&g, &m).len();
        let b = brute_force_coboundaries(&g, &m).len();
        let homs = naive_hom_count(&mod_two(&g), &m) as usize;
        ensure(z % b == 0 && z / b == expected && solver == expected && homs == expected, || {
            format!("({g}; {m}): solver {solver}, brute force {z}/{b}, Hom {homs}, expected {expected}")
        })?;
    }
    within(start, Duration::from_secs(300))
}

fn det(m: &[Vec<i128>]) -> i128 {
    if m.is_empty() {
        return 1;
    }
    let n = m.len();
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..].iter().map(|row| [&row[..j], &row[j + 1..]].concat()).collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|v| v.to_i128().unwrap()).collect()).collect()
}

fn matmul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

/// Smith normal form on random matrices, checked with exact arithmetic.
fn criterion_9() -> Outcome {
    let mut r = rng(9);
    for t in 0..200 {
        let (rows, cols) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let a: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-20..=20)).collect()).collect();
        let s = smith_normal_form(&IntMatrix::from_rows(&a));
        let a128: Vec<Vec<i128>> = a.iter().map(|row| row.iter().map(|&v| v as i128).collect()).collect();
        let (u, v, d) = (to_i128(&s.u), to_i128(&s.v), to_i128(&s.d));
        ensure(matmul(&matmul(&u, &a128), &v) == d, || format!("matrix {t}: U·A·V ≠ D"))?;
        ensure(det(&u).abs() == 1 && det(&v).abs() == 1, || format!("matrix {t}: U or V not unimodular"))?;
        let diag: Vec<i128> = (0..rows.min(cols)).map(|i| d[i][i]).collect();
        for i in 0..rows {
            for j in 0..cols {
                ensure(i == j || d[i][j] == 0, || format!("matrix {t}: D not diagonal"))?;
            }
        }
        for i in 0..diag.len() {
            ensure(diag[i] >= 0, || format!("matrix {t}: negative invariant factor"))?;
            if i + 1 < diag.len() {
                let ok = if diag[i] == 0 { diag[i + 1] == 0 } else { diag[i + 1] % diag[i] == 0 };
                ensure(ok, || format!("matrix {t}: divisibility chain broken: {diag:?}"))?;
            }
        }
        // d₁⋯d_k is the gcd of the k × k minors.
        for k in 1..=diag.len() {
            let mut g = 0i128;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a128[i][j]).collect()).collect();
                    g = gcd(g, det(&minor));
                }
            }
            let prod: i128 = diag[..k].iter().product();
            ensure(g == prod, || format!("matrix {t}: gcd of {k}-minors {g} ≠ {prod}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 9] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(()) => {
                println!("criterion {n}: PASS");
                eprintln!("  criterion {n} took {:.2?}", start.elapsed());
            }
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({why})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
