//! Coboundaries, the cohomologous-pair search and `H³_sym(G; M)`.
//!
//! Sign convention: `δc(x, y) = k(y, x) − k(x, y)`. With it, the pair
//! `(h − δh k, c − δc k)` satisfies the hexagon whenever `(h, c)` does, and a
//! witness `k` for `a ∼ b` is exactly the monoidal constraint of an identity
//! functor from `a` to `b`. The opposite sign breaks the hexagon as soon as
//! `M` has elements of order greater than 2.

use std::collections::HashSet;

use crate::abelian::{solve_linear, FgAbGroup, GroupElement, GroupIndex};
use crate::error::{Error, Result};

use super::symmetric::SymCocycle3;
use super::table::CochainTable;

/// A normalized 2-cochain `k: G² → M`, `k(x, 0) = k(0, y) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain2 {
    g: FgAbGroup,
    m: FgAbGroup,
    k: CochainTable,
}

impl Cochain2 {
    pub fn new(g: FgAbGroup, m: FgAbGroup, k: CochainTable) -> Result<Self> {
        let order = g.require_finite()? as usize;
        if k.arity() != 2 || k.group_order() != order {
            return Err(Error::LengthMismatch {
                expected: order * order,
                actual: k.values().len(),
            });
        }
        for i in 0..order {
            for (a, b) in [(i, 0), (0, i)] {
                let v = k.get(&[a, b]);
                if !v.is_zero() {
                    return Err(Error::NotNormalized(format!(
                        "k({}, {}) = {v}",
                        g.element_at(a),
                        g.element_at(b)
                    )));
                }
            }
        }
        Ok(Cochain2 { g, m, k })
    }

    pub fn zero(g: FgAbGroup, m: FgAbGroup) -> Result<Self> {
        let k = CochainTable::zero(&g, &m, 2)?;
        Self::new(g, m, k)
    }

    pub fn g(&self) -> &FgAbGroup {
        &self.g
    }

    pub fn m(&self) -> &FgAbGroup {
        &self.m
    }

    pub fn table(&self) -> &CochainTable {
        &self.k
    }

    pub fn at(&self, x: &GroupElement, y: &GroupElement) -> &GroupElement {
        self.k.at(&self.g, &[x, y])
    }

    pub fn is_zero(&self) -> bool {
        self.k.is_zero()
    }
}

/// `δh(x,y,z) = k(y,z) − k(x+y,z) + k(x,y+z) − k(x,y)` and
/// `δc(x,y) = k(y,x) − k(x,y)`.
pub fn coboundary_of(k: &Cochain2) -> (CochainTable, CochainTable) {
    let (g, m) = (&k.g, &k.m);
    let dh = CochainTable::from_fn(g, 3, |a| {
        let (x, y, z) = (a[0], a[1], a[2]);
        let plus = m.add(k.at(y, z), k.at(x, &g.add(y, z)));
        let minus = m.add(k.at(&g.add(x, y), z), k.at(x, y));
        m.sub(&plus, &minus)
    })
    .expect("cochain group is finite");
    let dc = CochainTable::from_fn(g, 2, |a| m.sub(k.at(a[1], a[0]), k.at(a[0], a[1])))
        .expect("cochain group is finite");
    (dh, dc)
}

fn nominal_space(base: u64, exp: usize, budget: u64) -> Result<u64> {
    match u32::try_from(exp).ok().and_then(|e| base.checked_pow(e)) {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::SearchTooLarge {
            space: format!("{base}^{exp}"),
            budget,
        }),
    }
}

/// One linear condition `Σ ±k(var) = target` on M-indexed unknowns.
struct Constraint {
    terms: Vec<(bool, usize)>,
    target: usize,
}

/// Searches for a normalized `k` with `h_a − h_b = δh k` and
/// `c_a − c_b = δc k`, returning the lexicographically first witness.
///
/// Unknowns `k(x, y)` with `x, y ≠ 0` are assigned in key order, and every
/// equation is checked as soon as its last unknown is set.
pub fn are_cohomologous(a: &SymCocycle3, b: &SymCocycle3, budget: u64) -> Result<Option<Cochain2>> {
    if a.g() != b.g() || a.m() != b.m() {
        return Err(Error::Mismatch(format!(
            "cocycles on ({}, {}) and ({}, {})",
            a.g(),
            a.m(),
            b.g(),
            b.m()
        )));
    }
    let (ha, ca) = a.require_tables()?;
    let (hb, cb) = b.require_tables()?;
    let (g, m) = (a.g(), a.m());
    let mi = m.index()?;
    let gi = g.index()?;
    let n = gi.len();
    let n_vars = (n - 1) * (n - 1);
    nominal_space(mi.len() as u64, n_vars, budget)?;

    let var = |x: usize, y: usize| -> Option<usize> {
        (x != 0 && y != 0).then(|| (x - 1) * (n - 1) + (y - 1))
    };
    let diff = |p: &GroupElement, q: &GroupElement| mi.index_of(&m.sub(p, q));

    let mut buckets: Vec<Vec<Constraint>> = (0..=n_vars).map(|_| Vec::new()).collect();
    let mut push = |terms: Vec<(bool, Option<usize>)>, target: usize| {
        let terms: Vec<(bool, usize)> = terms
            .into_iter()
            .filter_map(|(neg, v)| v.map(|v| (neg, v)))
            .collect();
        // Equations without unknowns land in the last bucket and are checked first.
        let slot = terms.iter().map(|t| t.1).max().unwrap_or(n_vars);
        buckets[slot].push(Constraint { terms, target });
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let t = diff(ha.get(&[x, y, z]), hb.get(&[x, y, z]));
                push(
                    vec![
                        (false, var(y, z)),
                        (true, var(gi.add(x, y), z)),
                        (false, var(x, gi.add(y, z))),
                        (true, var(x, y)),
                    ],
                    t,
                );
            }
            let t = diff(ca.get(&[x, y]), cb.get(&[x, y]));
            push(vec![(false, var(y, x)), (true, var(x, y))], t);
        }
    }

    let holds = |c: &Constraint, assign: &[usize]| {
        let v = c.terms.iter().fold(0, |acc, &(neg, var)| {
            if neg {
                mi.sub(acc, assign[var])
            } else {
                mi.add(acc, assign[var])
            }
        });
        v == c.target
    };
    let mut assign = vec![0usize; n_vars];
    if !buckets[n_vars].iter().all(|c| holds(c, &assign)) {
        return Ok(None);
    }
    if !search(0, &mut assign, &buckets, mi.len(), &holds) {
        return Ok(None);
    }

    let mut k = CochainTable::zero(g, m, 2)?;
    for x in 1..n {
        for y in 1..n {
            k.set(&[x, y], mi.element(assign[var(x, y).unwrap()]).clone());
        }
    }
    Cochain2::new(g.clone(), m.clone(), k).map(Some)
}

fn search(
    pos: usize,
    assign: &mut [usize],
    buckets: &[Vec<Constraint>],
    m_order: usize,
    holds: &impl Fn(&Constraint, &[usize]) -> bool,
) -> bool {
    if pos == assign.len() {
        return true;
    }
    for v in 0..m_order {
        assign[pos] = v;
        if buckets[pos].iter().all(|c| holds(c, assign))
            && search(pos + 1, assign, buckets, m_order, holds)
        {
            return true;
        }
    }
    false
}

/// Unknown layout for cocycle tables as a linear system: `h(x, y, z)` for
/// `y ≠ 0` followed by every `c(x, y)`.
struct Layout {
    n: usize,
    h_len: usize,
}

impl Layout {
    fn new(n: usize) -> Self {
        Layout {
            n,
            h_len: n * n.saturating_sub(1) * n,
        }
    }

    fn len(&self) -> usize {
        self.h_len + self.n * self.n
    }

    fn h(&self, x: usize, y: usize, z: usize) -> Option<usize> {
        (y != 0).then(|| (x * (self.n - 1) + (y - 1)) * self.n + z)
    }

    fn c(&self, x: usize, y: usize) -> usize {
        self.h_len + x * self.n + y
    }
}

/// The group `Z³_sym(G; M)` of symmetric 3-cocycles, as generators with
/// their orders. Every cocycle is a unique combination `Σ aᵢ gᵢ` with
/// `0 ≤ aᵢ < ord(gᵢ)`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub g: FgAbGroup,
    pub m: FgAbGroup,
    pub generators: Vec<(SymCocycle3, u64)>,
}

impl CocycleSpace {
    /// `|Z³_sym|`, or `None` if infinite.
    pub fn order(&self) -> Option<u128> {
        self.generators
            .iter()
            .try_fold(1u128, |acc, (_, o)| (*o != 0).then(|| acc * *o as u128))
    }
}

/// Solves the cocycle axioms as a linear system, one coordinate of `M` at a
/// time.
pub fn cocycle_space(g: &FgAbGroup, m: &FgAbGroup) -> Result<CocycleSpace> {
    let gi = g.index()?;
    let n = gi.len();
    let layout = Layout::new(n);
    let n_vars = layout.len();
    let mut rows: HashSet<Vec<i64>> = HashSet::new();
    let mut add_row = |terms: &[(i64, Option<usize>)]| {
        let mut row = vec![0i64; n_vars];
        for &(coef, v) in terms {
            if let Some(v) = v {
                row[v] += coef;
            }
        }
        if row.iter().any(|&x| x != 0) {
            rows.insert(row);
        }
    };
    for u in 0..n {
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    add_row(&[
                        (1, layout.h(x, y, z)),
                        (1, layout.h(u, gi.add(x, y), z)),
                        (1, layout.h(u, x, y)),
                        (-1, layout.h(u, x, gi.add(y, z))),
                        (-1, layout.h(gi.add(u, x), y, z)),
                    ]);
                }
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                add_row(&[
                    (1, layout.h(y, z, x)),
                    (1, Some(layout.c(x, gi.add(y, z)))),
                    (1, layout.h(x, y, z)),
                    (-1, Some(layout.c(x, z))),
                    (-1, layout.h(y, x, z)),
                    (-1, Some(layout.c(x, y))),
                ]);
            }
            add_row(&[(1, Some(layout.c(x, y))), (1, Some(layout.c(y, x)))]);
        }
    }
    let mut rows: Vec<Vec<i64>> = rows.into_iter().collect();
    rows.sort();
    let rhs = vec![0; rows.len()];

    let mut generators = Vec::new();
    for (j, &modulus) in m.factors().iter().enumerate() {
        let sol = solve_linear(&rows, &rhs, n_vars, modulus).expect("homogeneous system");
        for (vec, order) in sol.basis {
            let coord = |v: Option<usize>| {
                let mut coords = vec![0i64; m.rank()];
                if let Some(v) = v {
                    coords[j] = vec[v];
                }
                m.reduce(&coords).expect("rank matches")
            };
            let h = CochainTable::from_fn(g, 3, |a| {
                coord(layout.h(gi.index_of(a[0]), gi.index_of(a[1]), gi.index_of(a[2])))
            })?;
            let c = CochainTable::from_fn(g, 2, |a| {
                coord(Some(layout.c(gi.index_of(a[0]), gi.index_of(a[1]))))
            })?;
            let s = SymCocycle3::from_tables(g.clone(), m.clone(), h, c)?;
            assert!(s.validate()?.is_valid(), "cocycle space generator fails the axioms");
            generators.push((s, order));
        }
    }
    Ok(CocycleSpace {
        g: g.clone(),
        m: m.clone(),
        generators,
    })
}

/// Cohomology classes of symmetric 3-cocycles.
#[derive(Clone, Debug)]
pub struct H3Sym {
    /// One representative per class, the first met in enumeration order.
    pub representatives: Vec<SymCocycle3>,
    /// `|Z³_sym(G; M)|`.
    pub cocycle_count: u64,
    /// `|B³_sym(G; M)|`, the number of distinct coboundaries.
    pub coboundary_count: u64,
}

impl H3Sym {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }
}

/// A cocycle as the M-indices of its unknowns in [`Layout`] order.
type Flat = Vec<u32>;

fn flatten(s: &SymCocycle3, layout: &Layout, mi: &GroupIndex) -> Flat {
    let (h, c) = s.tables().expect("finite cocycle");
    let n = layout.n;
    let mut out = vec![0u32; layout.len()];
    for x in 0..n {
        for y in 1..n {
            for z in 0..n {
                out[layout.h(x, y, z).unwrap()] = mi.index_of(h.get(&[x, y, z])) as u32;
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            out[layout.c(x, y)] = mi.index_of(c.get(&[x, y])) as u32;
        }
    }
    out
}

fn unflatten(flat: &Flat, g: &FgAbGroup, m: &FgAbGroup, layout: &Layout, mi: &GroupIndex) -> Result<SymCocycle3> {
    let gi = g.index()?;
    let value = |v: Option<usize>| v.map_or_else(|| m.zero(), |v| mi.element(flat[v] as usize).clone());
    let h = CochainTable::from_fn(g, 3, |a| {
        value(layout.h(gi.index_of(a[0]), gi.index_of(a[1]), gi.index_of(a[2])))
    })?;
    let c = CochainTable::from_fn(g, 2, |a| {
        value(Some(layout.c(gi.index_of(a[0]), gi.index_of(a[1]))))
    })?;
    SymCocycle3::from_tables(g.clone(), m.clone(), h, c)
}

/// Enumerates `H³_sym(G; M)`: every symmetric 3-cocycle, partitioned into
/// cosets of the coboundary group.
///
/// Fails with [`Error::SearchTooLarge`] when either the cocycle group or the
/// space of normalized 2-cochains exceeds `budget`.
pub fn enumerate_h3_sym(g: &FgAbGroup, m: &FgAbGroup, budget: u64) -> Result<H3Sym> {
    let gi = g.index()?;
    let mi = m.index()?;
    let n = gi.len();
    let layout = Layout::new(n);
    let k_space = nominal_space(mi.len() as u64, (n - 1) * (n - 1), budget)?;

    let space = cocycle_space(g, m)?;
    let z_order = space.order().expect("M is finite");
    if z_order > budget as u128 {
        return Err(Error::SearchTooLarge {
            space: format!("{z_order} symmetric cocycles"),
            budget,
        });
    }

    // Coboundary group: δ of every normalized k, deduplicated.
    let mut boundaries: HashSet<Flat> = HashSet::new();
    let mut k = vec![0usize; n * n];
    let inner: Vec<(usize, usize)> = (1..n).flat_map(|x| (1..n).map(move |y| (x, y))).collect();
    for idx in 0..k_space {
        let mut rest = idx;
        for &(x, y) in inner.iter().rev() {
            k[x * n + y] = (rest % mi.len() as u64) as usize;
            rest /= mi.len() as u64;
        }
        let kk = |x: usize, y: usize| k[x * n + y];
        let mut flat = vec![0u32; layout.len()];
        for x in 0..n {
            for y in 1..n {
                for z in 0..n {
                    let plus = mi.add(kk(y, z), kk(x, gi.add(y, z)));
                    let minus = mi.add(kk(gi.add(x, y), z), kk(x, y));
                    flat[layout.h(x, y, z).unwrap()] = mi.sub(plus, minus) as u32;
                }
            }
            for y in 0..n {
                flat[layout.c(x, y)] = mi.sub(kk(y, x), kk(x, y)) as u32;
            }
        }
        boundaries.insert(flat);
    }
    let boundaries: Vec<Flat> = {
        let mut b: Vec<Flat> = boundaries.into_iter().collect();
        b.sort();
        b
    };

    // Walk Z³_sym as a mixed-radix counter over the generators; adding a
    // generator ord(g) times returns it to zero, so one add per step suffices.
    let gens: Vec<(Flat, u64)> = space
        .generators
        .iter()
        .map(|(s, o)| (flatten(s, &layout, &mi), *o))
        .collect();
    let add = |a: &Flat, b: &Flat| -> Flat {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| mi.add(x as usize, y as usize) as u32)
            .collect()
    };
    let mut digits = vec![0u64; gens.len()];
    let mut current: Flat = vec![0; layout.len()];
    let mut seen: HashSet<Flat> = HashSet::new();
    let mut reps = Vec::new();
    for step in 0..z_order {
        if !seen.contains(&current) {
            for b in &boundaries {
                seen.insert(add(&current, b));
            }
            reps.push(current.clone());
        }
        if step + 1 == z_order {
            break;
        }
        for (i, (gen, order)) in gens.iter().enumerate() {
            current = add(&current, gen);
            digits[i] += 1;
            if digits[i] < *order {
                break;
            }
            digits[i] = 0;
        }
    }

    let representatives = reps
        .iter()
        .map(|f| unflatten(f, g, m, &layout, &mi))
        .collect::<Result<Vec<_>>>()?;
    Ok(H3Sym {
        representatives,
        cocycle_count: z_order as u64,
        coboundary_count: boundaries.len() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    fn e(v: i64) -> GroupElement {
        GroupElement::from_reduced(vec![v])
    }

    #[test]
    fn coboundary_of_zero() {
        let k = Cochain2::zero(z(3), z(3)).unwrap();
        let (dh, dc) = coboundary_of(&k);
        assert!(dh.is_zero() && dc.is_zero());
    }

    #[test]
    fn coboundary_on_z2() {
        let g = z(2);
        let mut t = CochainTable::zero(&g, &g, 2).unwrap();
        t.set(&[1, 1], e(1));
        let k = Cochain2::new(g.clone(), g.clone(), t).unwrap();
        let (dh, dc) = coboundary_of(&k);
        assert!(dc.is_zero());
        // Direct evaluation over all 8 triples.
        for x in 0..2 {
            for y in 0..2 {
                for zz in 0..2 {
                    let kk = |a: usize, b: usize| (a * b) as i64;
                    let want = (kk(y, zz) - kk((x + y) % 2, zz) + kk(x, (y + zz) % 2) - kk(x, y))
                        .rem_euclid(2);
                    assert_eq!(dh.get(&[x, y, zz]), &e(want));
                }
            }
        }
    }

    #[test]
    fn non_normalized_cochain_is_rejected() {
        let g = z(2);
        let mut t = CochainTable::zero(&g, &g, 2).unwrap();
        t.set(&[1, 0], e(1));
        assert!(matches!(
            Cochain2::new(g.clone(), g, t),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn cohomologous_search_examples() {
        let g = z(2);
        let zero = SymCocycle3::zero(g.clone(), g.clone()).unwrap();
        let m = g.clone();
        let xy = SymCocycle3::from_fns(
            g.clone(),
            g.clone(),
            |_, _, _| m.zero(),
            |a, b| e(a.coords()[0] * b.coords()[0]),
        )
        .unwrap();
        let w = are_cohomologous(&zero, &zero, 1 << 10).unwrap().unwrap();
        assert!(w.is_zero());
        assert!(are_cohomologous(&zero, &xy, 1 << 10).unwrap().is_none());
    }

    #[test]
    fn search_budget_and_infinite_groups() {
        let s = SymCocycle3::zero(z(4), z(4)).unwrap();
        assert!(matches!(
            are_cohomologous(&s, &s, 1000),
            Err(Error::SearchTooLarge { .. })
        ));
        let sp = SymCocycle3::sphere();
        assert!(matches!(
            are_cohomologous(&sp, &sp, 1000),
            Err(Error::InfiniteGroup(_))
        ));
    }

    #[test]
    fn twisted_cocycle_is_cohomologous() {
        // Z/3 with M = Z/3: a nonsymmetric k produces both δh and δc.
        let g = z(3);
        let base = SymCocycle3::zero(g.clone(), g.clone()).unwrap();
        let mut t = CochainTable::zero(&g, &g, 2).unwrap();
        t.set(&[1, 2], e(1));
        t.set(&[2, 2], e(2));
        let k = Cochain2::new(g.clone(), g.clone(), t).unwrap();
        let (dh, dc) = coboundary_of(&k);
        let twisted = base.minus(&dh, &dc).unwrap();
        assert!(twisted.validate().unwrap().is_valid());
        let w = are_cohomologous(&base, &twisted, 1 << 20).unwrap().unwrap();
        let (wh, wc) = coboundary_of(&w);
        let back = base.minus(&wh, &wc).unwrap();
        assert_eq!(back, twisted);
    }

    #[test]
    fn h3_small_cases() {
        assert_eq!(enumerate_h3_sym(&z(2), &z(2), 1 << 20).unwrap().class_count(), 2);
        assert_eq!(enumerate_h3_sym(&z(3), &z(3), 1 << 20).unwrap().class_count(), 1);
        let t = enumerate_h3_sym(&FgAbGroup::trivial(), &z(4), 1 << 20).unwrap();
        assert_eq!(t.class_count(), 1);
        assert_eq!(t.cocycle_count, 1);
    }
}
