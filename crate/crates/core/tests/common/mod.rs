//! Shared corpus and brute-force oracles for the integration tests.
//!
//! The oracles here work on raw element indices and never call the library's
//! validators or solvers.
#![allow(dead_code)]

use std::collections::HashSet;

use picardkit::abelian::{FgAbGroup, GroupElement, GroupHom, GroupIndex};
use picardkit::cocycle::{coboundary_of, enumerate_h3_sym, Cochain2, CochainTable, SymCocycle3};
use picardkit::picard::{solve_constraint, Constraint, PicFunctor, PicGroupoid};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn group(factors: &[u64]) -> FgAbGroup {
    FgAbGroup::new(factors.to_vec()).unwrap()
}

/// Every finite abelian group of order at most `max`, one per isomorphism
/// class, in invariant-factor form.
pub fn small_groups(max: u64) -> Vec<FgAbGroup> {
    let all: &[&[u64]] = &[
        &[],
        &[2],
        &[3],
        &[4],
        &[2, 2],
        &[5],
        &[6],
        &[7],
        &[8],
        &[2, 4],
        &[2, 2, 2],
    ];
    all.iter()
        .map(|f| group(f))
        .filter(|g| g.order().unwrap() <= max)
        .collect()
}

/// Tables of `(h, c)` as element indices, `h` keyed by `(x·n + y)·n + z`
/// and `c` by `x·n + y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RawCocycle {
    pub h: Vec<usize>,
    pub c: Vec<usize>,
}

pub fn raw_of(s: &SymCocycle3) -> RawCocycle {
    let mi = s.m().index().unwrap();
    let (h, c) = s.tables().expect("finite cocycle");
    RawCocycle {
        h: h.values().iter().map(|v| mi.index_of(v)).collect(),
        c: c.values().iter().map(|v| mi.index_of(v)).collect(),
    }
}

/// Direct check of the four axioms as written: normalization, the
/// pentagon, the hexagon and antisymmetry.
pub fn naive_is_cocycle(gi: &GroupIndex, mi: &GroupIndex, s: &RawCocycle) -> bool {
    let n = gi.len();
    let h = |x: usize, y: usize, z: usize| s.h[(x * n + y) * n + z];
    let c = |x: usize, y: usize| s.c[x * n + y];
    let sum = |v: &[usize]| v.iter().fold(0, |a, &b| mi.add(a, b));
    for x in 0..n {
        for z in 0..n {
            if h(x, 0, z) != 0 {
                return false;
            }
        }
    }
    for u in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = sum(&[h(x, y, z), h(u, gi.add(x, y), z), h(u, x, y)]);
                    let rhs = sum(&[h(u, x, gi.add(y, z)), h(gi.add(u, x), y, z)]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = sum(&[h(y, z, x), c(x, gi.add(y, z)), h(x, y, z)]);
                let rhs = sum(&[c(x, z), h(y, x, z), c(x, y)]);
                if lhs != rhs {
                    return false;
                }
            }
            if c(x, y) != mi.neg(c(y, x)) {
                return false;
            }
        }
    }
    true
}

/// Every symmetric 3-cocycle on `(g, m)` with `h(x, 0, z) = 0`, found by
/// depth-first search over the table entries. Each axiom instance is tested
/// once all the entries it reads are assigned.
pub fn brute_force_cocycles(g: &FgAbGroup, m: &FgAbGroup) -> Vec<RawCocycle> {
    let gi = g.index().unwrap();
    let mi = m.index().unwrap();
    let n = gi.len();
    let h_len = n * n * n;
    // Variable v < h_len is h at key v; the rest are c entries.
    let free: Vec<usize> = (0..h_len)
        .filter(|&k| (k / n) % n != 0)
        .chain(h_len..h_len + n * n)
        .collect();
    let mut position = vec![usize::MAX; h_len + n * n];
    for (i, &v) in free.iter().enumerate() {
        position[v] = i;
    }
    let hk = |x: usize, y: usize, z: usize| (x * n + y) * n + z;
    let ck = |x: usize, y: usize| h_len + x * n + y;

    // An equation: sum of `plus` keys minus sum of `minus` keys is zero.
    type Eq = (Vec<usize>, Vec<usize>);
    let mut buckets: Vec<Vec<Eq>> = vec![Vec::new(); free.len()];
    let mut file = |plus: Vec<usize>, minus: Vec<usize>| {
        let last = plus
            .iter()
            .chain(&minus)
            .map(|&k| position[k])
            .filter(|&p| p != usize::MAX)
            .max();
        if let Some(p) = last {
            buckets[p].push((plus, minus));
        }
    };
    for u in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    file(
                        vec![hk(x, y, z), hk(u, gi.add(x, y), z), hk(u, x, y)],
                        vec![hk(u, x, gi.add(y, z)), hk(gi.add(u, x), y, z)],
                    );
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                file(
                    vec![hk(y, z, x), ck(x, gi.add(y, z)), hk(x, y, z)],
                    vec![ck(x, z), hk(y, x, z), ck(x, y)],
                );
            }
            file(vec![ck(x, y), ck(y, x)], vec![]);
        }
    }

    let mut values = vec![0usize; h_len + n * n];
    let mut out = Vec::new();
    fn go(
        depth: usize,
        free: &[usize],
        buckets: &[Vec<(Vec<usize>, Vec<usize>)>],
        values: &mut Vec<usize>,
        mi: &GroupIndex,
        h_len: usize,
        out: &mut Vec<RawCocycle>,
    ) {
        if depth == free.len() {
            out.push(RawCocycle {
                h: values[..h_len].to_vec(),
                c: values[h_len..].to_vec(),
            });
            return;
        }
        for v in 0..mi.len() {
            values[free[depth]] = v;
            let holds = buckets[depth].iter().all(|(plus, minus)| {
                let p = plus.iter().fold(0, |a, &k| mi.add(a, values[k]));
                let q = minus.iter().fold(0, |a, &k| mi.add(a, values[k]));
                p == q
            });
            if holds {
                go(depth + 1, free, buckets, values, mi, h_len, out);
            }
        }
        values[free[depth]] = 0;
    }
    go(0, &free, &buckets, &mut values, &mi, h_len, &mut out);
    out
}

/// `δk` for a normalized 2-cochain given as indices.
pub fn naive_coboundary(gi: &GroupIndex, mi: &GroupIndex, k: &[usize]) -> RawCocycle {
    let n = gi.len();
    let kk = |x: usize, y: usize| k[x * n + y];
    let mut h = vec![0; n * n * n];
    let mut c = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let plus = mi.add(kk(y, z), kk(x, gi.add(y, z)));
                let minus = mi.add(kk(gi.add(x, y), z), kk(x, y));
                h[(x * n + y) * n + z] = mi.sub(plus, minus);
            }
            c[x * n + y] = mi.sub(kk(y, x), kk(x, y));
        }
    }
    RawCocycle { h, c }
}

/// All coboundaries of normalized 2-cochains, by enumerating every cochain.
pub fn brute_force_coboundaries(g: &FgAbGroup, m: &FgAbGroup) -> HashSet<RawCocycle> {
    let gi = g.index().unwrap();
    let mi = m.index().unwrap();
    let n = gi.len();
    let inner: Vec<usize> = (1..n).flat_map(|x| (1..n).map(move |y| x * n + y)).collect();
    let total = (mi.len() as u64).pow(inner.len() as u32);
    let mut out = HashSet::new();
    let mut k = vec![0usize; n * n];
    for mut idx in 0..total {
        for &key in &inner {
            k[key] = (idx % mi.len() as u64) as usize;
            idx /= mi.len() as u64;
        }
        out.insert(naive_coboundary(&gi, &mi, &k));
    }
    out
}

/// `|Hom(s, t)|` by testing every assignment of generator images against
/// the relations `dᵢ·eᵢ = 0`.
pub fn naive_hom_count(s: &FgAbGroup, t: &FgAbGroup) -> u64 {
    let ti = t.index().unwrap();
    s.factors()
        .iter()
        .map(|&d| {
            (0..ti.len())
                .filter(|&a| ti.element(a).coords().is_empty() || t.scale(d as i64, ti.element(a)).is_zero())
                .count() as u64
        })
        .product()
}

/// `G/2G` for a finite group in invariant-factor form.
pub fn mod_two(g: &FgAbGroup) -> FgAbGroup {
    let f: Vec<u64> = g.factors().iter().filter(|&&d| d % 2 == 0).map(|_| 2).collect();
    group(&f)
}

/// A random normalized 2-cochain on `(g, m)`.
pub fn random_cochain(g: &FgAbGroup, m: &FgAbGroup, rng: &mut ChaCha8Rng) -> Cochain2 {
    let ms = m.elements().unwrap();
    let t = CochainTable::from_fn(g, 2, |a| {
        if a[0].is_zero() || a[1].is_zero() {
            m.zero()
        } else {
            ms.choose(rng).unwrap().clone()
        }
    })
    .unwrap();
    Cochain2::new(g.clone(), m.clone(), t).unwrap()
}

/// `s − δk` for a random normalized `k`; usually not permutative.
pub fn twist(s: &SymCocycle3, rng: &mut ChaCha8Rng) -> SymCocycle3 {
    let k = random_cochain(s.g(), s.m(), rng);
    let (dh, dc) = coboundary_of(&k);
    s.minus(&dh, &dc).unwrap()
}

/// The corpus of models with `|G|, |M| ≤ 4`: one representative per class
/// of `H³_sym` for each pair of groups, plus a coboundary twist of each.
pub fn corpus_models() -> Vec<PicGroupoid> {
    let mut r = rng(7);
    let mut out = Vec::new();
    for g in small_groups(4) {
        for m in small_groups(4) {
            let h3 = enumerate_h3_sym(&g, &m, picardkit::DEFAULT_BUDGET).unwrap();
            for s in h3.representatives {
                out.push(PicGroupoid::new(twist(&s, &mut r)).unwrap());
                out.push(PicGroupoid::new(s).unwrap());
            }
        }
    }
    out
}

/// A random permutative model `(0, c)` with `c` bilinear and antisymmetric.
pub fn random_permutative(g: &FgAbGroup, m: &FgAbGroup, rng: &mut ChaCha8Rng) -> PicGroupoid {
    let r = g.rank();
    let ms = m.elements().unwrap();
    let killed = |d: u64| -> Vec<GroupElement> { ms.iter().filter(|a| m.scale(d as i64, a).is_zero()).cloned().collect() };
    let f = g.factors();
    let mut b = vec![vec![m.zero(); r]; r];
    for i in 0..r {
        b[i][i] = killed(num_gcd(2, f[i])).choose(rng).unwrap().clone();
        for j in i + 1..r {
            let v = killed(num_gcd(f[i], f[j])).choose(rng).unwrap().clone();
            b[j][i] = m.neg(&v);
            b[i][j] = v;
        }
    }
    let c = CochainTable::from_fn(g, 2, |a| {
        let mut acc = m.zero();
        for i in 0..r {
            for j in 0..r {
                acc = m.add(&acc, &m.scale(a[0].coords()[i] * a[1].coords()[j], &b[i][j]));
            }
        }
        acc
    })
    .unwrap();
    let h = CochainTable::zero(g, m, 3).unwrap();
    PicGroupoid::new(SymCocycle3::from_tables(g.clone(), m.clone(), h, c).unwrap()).unwrap()
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

pub fn random_hom(s: &FgAbGroup, t: &FgAbGroup, rng: &mut ChaCha8Rng) -> GroupHom {
    let ts = t.elements().unwrap();
    loop {
        let images: Vec<GroupElement> = (0..s.rank()).map(|_| ts.choose(rng).unwrap().clone()).collect();
        if let Ok(h) = GroupHom::from_images(s.clone(), t.clone(), &images) {
            return h;
        }
    }
}

/// Valid functors between random permutative models on groups of order at
/// most 8, with the constraint drawn at random from the solution space.
/// Returns at least `count` functors, `min_nonzero` of them with `φ ≠ 0`.
pub fn random_functors(count: usize, min_nonzero: usize, seed: u64) -> Vec<PicFunctor> {
    let mut r = rng(seed);
    let groups = small_groups(8);
    let coefficients = small_groups(4);
    let mut out = Vec::new();
    let mut nonzero = 0;
    while out.len() < count || nonzero < min_nonzero {
        let (gc, gd) = (groups.choose(&mut r).unwrap(), groups.choose(&mut r).unwrap());
        let (mc, md) = (coefficients.choose(&mut r).unwrap(), coefficients.choose(&mut r).unwrap());
        let source = random_permutative(gc, mc, &mut r);
        let target = random_permutative(gd, md, &mut r);
        let f0 = random_hom(gc, gd, &mut r);
        let f1 = random_hom(mc, md, &mut r);
        let shell = PicFunctor::new(source, target, f0, f1, Constraint::Zero).unwrap();
        let Some(sol) = solve_constraint(&shell).unwrap() else {
            continue;
        };
        let mut phi = sol.particular.clone();
        for (b, order) in &sol.basis {
            let k = r.gen_range(0..(*order).max(1)) as i64;
            phi = phi.zip_with(b, |x, y| md.add(x, &md.scale(k, y)));
        }
        let is_zero = phi.is_zero();
        if is_zero && out.len() >= count {
            continue;
        }
        let f = shell.with_constraint(Constraint::Table(phi)).unwrap();
        assert!(f.validate().unwrap().is_valid(), "solved constraint fails coherence");
        nonzero += usize::from(!is_zero);
        out.push(f);
    }
    out
}
