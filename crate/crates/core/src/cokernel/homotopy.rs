use std::collections::HashMap;

use crate::abelian::{is_exact_at, present_quotient, FgAbGroup, GroupElement, GroupHom, QuotientPresentation};
use crate::error::{Error, Result};

use super::bigroupoid::CokBigroupoid;

/// `π₁` of the cokernel: loops `(n, u)` at the unit with `f₀(n) = 0`,
/// modulo `(n, u) ∼ (n, u + f₁α)`, under
/// `(n, u)·(n̄, ū) = (n + n̄, u + ū + φ(n̄, n))`.
///
/// It is presented on generators `sᵢ = (kᵢ, 0)` for the invariant generators
/// `kᵢ` of `ker f₀` and `tⱼ = (0, cⱼ)` for lifts of the generators of
/// `coker f₁`. The relations are `ord(tⱼ)·tⱼ = 0` and `dᵢ·sᵢ = s_i^{dᵢ}`,
/// where the power is evaluated with the group law and lies over `n = 0`.
#[derive(Clone, Debug)]
pub struct Pi1 {
    pub group: FgAbGroup,
    cok: CokBigroupoid,
    kernel_inclusion: GroupHom,
    coker_projection: GroupHom,
    coker_lifts: Vec<GroupElement>,
    presentation: QuotientPresentation,
}

impl Pi1 {
    fn new(cok: &CokBigroupoid) -> Result<Self> {
        let f = cok.functor();
        let k0 = f.f0().subquotients();
        let k1 = f.f1().subquotients();
        let kernel_inclusion = k0.kernel_inclusion;
        let coker_projection = k1.cokernel_projection;
        let coker = k1.cokernel;
        let coker_lifts: Vec<GroupElement> = (0..coker.rank())
            .map(|j| {
                coker_projection
                    .preimage(&coker.generator(j))
                    .expect("cokernel projection is onto")
            })
            .collect();
        let (r, s) = (k0.kernel.rank(), coker.rank());
        let mut relations = Vec::new();
        for (j, &d) in coker.factors().iter().enumerate() {
            if d != 0 {
                let mut row = vec![0; r + s];
                row[r + j] = d as i64;
                relations.push(row);
            }
        }
        let mut pi = Pi1 {
            group: FgAbGroup::trivial(),
            cok: cok.clone(),
            kernel_inclusion,
            coker_projection,
            coker_lifts,
            presentation: present_quotient(0, &[]),
        };
        for (i, &d) in k0.kernel.factors().iter().enumerate() {
            if d == 0 {
                continue;
            }
            let s_i = (pi.kernel_inclusion.apply(&k0.kernel.generator(i)), cok.md().zero());
            let (n, w) = pi.power(&s_i, d as i64);
            debug_assert!(n.is_zero());
            let mut row = vec![0; r + s];
            row[i] = d as i64;
            for (j, b) in pi.coker_projection.apply(&w).coords().iter().enumerate() {
                row[r + j] = -b;
            }
            relations.push(row);
        }
        pi.presentation = present_quotient(r + s, &relations);
        pi.group = pi.presentation.group.clone();
        Ok(pi)
    }

    /// `(n, u)·(n̄, ū)`.
    pub fn product(&self, a: &(GroupElement, GroupElement), b: &(GroupElement, GroupElement)) -> (GroupElement, GroupElement) {
        let md = self.cok.md();
        (
            self.cok.gc().add(&a.0, &b.0),
            md.sum([&a.1, &b.1, &self.cok.phi(&b.0, &a.0)]),
        )
    }

    pub fn inverse(&self, a: &(GroupElement, GroupElement)) -> (GroupElement, GroupElement) {
        let md = self.cok.md();
        let neg = self.cok.gc().neg(&a.0);
        let label = md.neg(&md.add(&a.1, &self.cok.phi(&neg, &a.0)));
        (neg, label)
    }

    pub fn power(&self, a: &(GroupElement, GroupElement), k: i64) -> (GroupElement, GroupElement) {
        let mut base = if k < 0 { self.inverse(a) } else { a.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = (self.cok.gc().zero(), self.cok.md().zero());
        while k > 0 {
            if k & 1 == 1 {
                acc = self.product(&acc, &base);
            }
            base = self.product(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Invariant coordinates of the class of the loop `(n, u)`.
    pub fn to_invariant(&self, n: &GroupElement, u: &GroupElement) -> Result<GroupElement> {
        let a = self
            .kernel_inclusion
            .preimage(n)
            .ok_or_else(|| Error::Mismatch(format!("{n} is not in the kernel of f0")))?;
        let prefix = self.s_product(a.coords());
        let w = self.cok.md().sub(u, &prefix.1);
        let mut v: Vec<i64> = a.coords().to_vec();
        v.extend_from_slice(self.coker_projection.apply(&w).coords());
        Ok(self.presentation.project(&v))
    }

    /// A loop representing the class with the given invariant coordinates.
    pub fn from_invariant(&self, e: &GroupElement) -> (GroupElement, GroupElement) {
        let v = self.presentation.lift(e);
        let r = self.kernel_inclusion.source().rank();
        let (n, mut u) = self.s_product(&v[..r]);
        let md = self.cok.md();
        for (c, lift) in v[r..].iter().zip(&self.coker_lifts) {
            u = md.add(&u, &md.scale(*c, lift));
        }
        (n, u)
    }

    /// `Π sᵢ^{aᵢ}` in the loop group.
    fn s_product(&self, a: &[i64]) -> (GroupElement, GroupElement) {
        let k = self.kernel_inclusion.source();
        let mut acc = (self.cok.gc().zero(), self.cok.md().zero());
        for (i, &ai) in a.iter().enumerate() {
            let s_i = (self.kernel_inclusion.apply(&k.generator(i)), self.cok.md().zero());
            acc = self.product(&acc, &self.power(&s_i, ai));
        }
        acc
    }

    /// `u ↦ [(0, u)]`.
    pub fn from_morphisms(&self) -> Result<GroupHom> {
        let md = self.cok.md();
        let zero = self.cok.gc().zero();
        let images = (0..md.rank())
            .map(|j| self.to_invariant(&zero, &md.generator(j)))
            .collect::<Result<Vec<_>>>()?;
        GroupHom::from_images(md.clone(), self.group.clone(), &images)
    }

    /// `[(n, u)] ↦ n`.
    pub fn to_objects(&self) -> Result<GroupHom> {
        let images: Vec<GroupElement> = (0..self.group.rank())
            .map(|i| self.from_invariant(&self.group.generator(i)).0)
            .collect();
        GroupHom::from_images(self.group.clone(), self.cok.gc().clone(), &images)
    }

    /// `0 → coker f₁ → π₁ → ker f₀ → 0`, with its exactness verdict.
    pub fn extension(&self) -> Result<(GroupHom, GroupHom, bool)> {
        let zero = self.cok.gc().zero();
        let coker = self.coker_projection.target();
        let images = self
            .coker_lifts
            .iter()
            .map(|c| self.to_invariant(&zero, c))
            .collect::<Result<Vec<_>>>()?;
        let into = GroupHom::from_images(coker.clone(), self.group.clone(), &images)?;
        let kernel = self.kernel_inclusion.source();
        let images: Vec<GroupElement> = (0..self.group.rank())
            .map(|i| {
                let n = self.from_invariant(&self.group.generator(i)).0;
                self.kernel_inclusion.preimage(&n).expect("loops lie over ker f0")
            })
            .collect();
        let onto = GroupHom::from_images(self.group.clone(), kernel.clone(), &images)?;
        let exact = is_exact_at(&GroupHom::zero(&FgAbGroup::trivial(), coker), &into)?
            && is_exact_at(&into, &onto)?
            && is_exact_at(&onto, &GroupHom::zero(kernel, &FgAbGroup::trivial()))?;
        Ok((into, onto, exact))
    }
}

/// `π₀ = coker f₀`, `π₁` as above, `π₂ = ker f₁`, with their structure maps.
#[derive(Clone, Debug)]
pub struct CokHomotopy {
    pub pi0: FgAbGroup,
    /// `G_D → π₀`.
    pub pi0_projection: GroupHom,
    pub pi1: Pi1,
    pub pi2: FgAbGroup,
    /// `π₂ → M_C`: a 2-endomorphism of the identity is a label `α` with `f₁α = 0`.
    pub pi2_inclusion: GroupHom,
}

pub fn cok_homotopy_groups(k: &CokBigroupoid) -> Result<CokHomotopy> {
    let f = k.functor();
    let s0 = f.f0().subquotients();
    let s1 = f.f1().subquotients();
    Ok(CokHomotopy {
        pi0: s0.cokernel,
        pi0_projection: s0.cokernel_projection,
        pi1: Pi1::new(k)?,
        pi2: s1.kernel,
        pi2_inclusion: s1.kernel_inclusion,
    })
}

/// A finite group known only through a multiplication table, summarized by
/// how many elements each `k` kills.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    pub order: u64,
    pub abelian: bool,
    /// Entry `k − 1` counts elements with `x^k = e`, for `k = 1..=order`.
    pub killed: Vec<u64>,
}

impl FiniteGroupTable {
    fn from_table(order: usize, identity: usize, mul: impl Fn(usize, usize) -> usize) -> Self {
        let mut abelian = true;
        for a in 0..order {
            for b in 0..a {
                if mul(a, b) != mul(b, a) {
                    abelian = false;
                }
            }
        }
        let orders: Vec<usize> = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != identity {
                    x = mul(x, a);
                    k += 1;
                }
                k
            })
            .collect();
        let killed = (1..=order)
            .map(|k| orders.iter().filter(|&&o| k % o == 0).count() as u64)
            .collect();
        FiniteGroupTable {
            order: order as u64,
            abelian,
            killed,
        }
    }

    /// Abelian and with the same kill counts as `g`, hence isomorphic to it.
    pub fn is_isomorphic_to(&self, g: &FgAbGroup) -> bool {
        if !self.abelian || g.order() != Some(self.order) {
            return false;
        }
        self.killed
            .iter()
            .enumerate()
            .all(|(i, &c)| g.count_killed_by(i as u64 + 1).ok() == Some(c))
    }
}

/// Homotopy groups read off the cells directly.
#[derive(Clone, Debug)]
pub struct EnumeratedHomotopy {
    pub pi0: FiniteGroupTable,
    pub pi1: FiniteGroupTable,
    pub pi2: FiniteGroupTable,
    /// Loops `(n, u)` at the unit, one per class.
    pub pi1_representatives: Vec<(GroupElement, GroupElement)>,
}

/// Brute-force backend: classes of objects under 1-cells, classes of
/// 1-cells `I → I` under 2-cells with composition, and 2-cells of the
/// identity 1-cell.
pub fn enumerate_homotopy(k: &CokBigroupoid) -> Result<EnumeratedHomotopy> {
    let (gd, gc, md, mc) = (k.objects(), k.gc(), k.md(), k.mc());
    let ixd = gd.index()?;
    let ixc = gc.index()?;
    let ixm = md.index()?;
    let mc_elements = mc.elements()?;
    let f = k.functor();

    // π₀: x ∼ y when some 1-cell x → y exists.
    let reach: Vec<usize> = ixc.elements().iter().map(|n| ixd.index_of(&f.f0().apply(n))).collect();
    let class_of_object: Vec<usize> = (0..ixd.len())
        .map(|x| reach.iter().map(|&r| ixd.sub(x, r)).min().expect("nonempty"))
        .collect();
    let mut reps0: Vec<usize> = class_of_object.clone();
    reps0.sort_unstable();
    reps0.dedup();
    let pos0: HashMap<usize, usize> = reps0.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let pi0 = FiniteGroupTable::from_table(reps0.len(), pos0[&class_of_object[0]], |a, b| {
        pos0[&class_of_object[ixd.add(reps0[a], reps0[b])]]
    });

    // π₁: loops (u, n) with f₀(n) = 0 up to 2-cells, composed as 1-cells.
    let image1: Vec<usize> = mc_elements.iter().map(|a| ixm.index_of(&f.f1().apply(a))).collect();
    let canon = |u: usize| image1.iter().map(|&v| ixm.add(u, v)).min().expect("nonempty");
    let zero_d = gd.zero();
    let mut reps1: Vec<(usize, usize)> = Vec::new();
    for (ni, n) in ixc.elements().iter().enumerate() {
        if f.f0().apply(n) != zero_d {
            continue;
        }
        for u in 0..ixm.len() {
            if canon(u) == u {
                reps1.push((ni, u));
            }
        }
    }
    let pos1: HashMap<(usize, usize), usize> = reps1.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut table = vec![0usize; reps1.len() * reps1.len()];
    for (i, &(n, u)) in reps1.iter().enumerate() {
        let a = k.one_cell(&zero_d, ixc.element(n), ixm.element(u));
        for (j, &(nb, ub)) in reps1.iter().enumerate() {
            let b = k.one_cell(&zero_d, ixc.element(nb), ixm.element(ub));
            let ab = k.compose(&a, &b)?;
            let key = (ixc.index_of(&ab.n), canon(ixm.index_of(&ab.label)));
            table[i * reps1.len() + j] = pos1[&key];
        }
    }
    let len1 = reps1.len();
    let pi1 = FiniteGroupTable::from_table(len1, pos1[&(0, 0)], |a, b| table[a * len1 + b]);
    let pi1_representatives = reps1
        .iter()
        .map(|&(n, u)| (ixc.element(n).clone(), ixm.element(u).clone()))
        .collect();

    // π₂: 2-cells α of the identity 1-cell on the unit, composed vertically.
    let identity = k.identity_one_cell(&zero_d);
    let loops2: Vec<GroupElement> = mc_elements
        .iter()
        .filter(|a| k.two_cell(&identity, a).to == identity)
        .cloned()
        .collect();
    let pos2: HashMap<&GroupElement, usize> = loops2.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let pi2 = FiniteGroupTable::from_table(loops2.len(), pos2[&mc.zero()], |a, b| {
        pos2[&mc.add(&loops2[a], &loops2[b])]
    });

    Ok(EnumeratedHomotopy {
        pi0,
        pi1,
        pi2,
        pi1_representatives,
    })
}

/// The sequence
/// `0 → π₂Cok → π₁C → π₁D → π₁Cok → π₀C → π₀D → π₀Cok → 0`
/// with its eight maps and the exactness verdict at each of the seven
/// inner groups.
#[derive(Clone, Debug)]
pub struct LesReport {
    /// `(name, group)` for the seven inner groups, in order.
    pub groups: Vec<(&'static str, FgAbGroup)>,
    /// `(name, map)` for all eight maps, starting at the leading zero.
    pub maps: Vec<(&'static str, GroupHom)>,
    /// `(name, exact)` at each inner group.
    pub exactness: Vec<(&'static str, bool)>,
}

impl LesReport {
    pub fn is_exact(&self) -> bool {
        self.exactness.iter().all(|(_, b)| *b)
    }
}

pub fn long_exact_sequence(k: &CokBigroupoid) -> Result<LesReport> {
    let f = k.functor();
    let h = cok_homotopy_groups(k)?;
    let trivial = FgAbGroup::trivial();
    let names = ["pi2 Coker", "pi1 C", "pi1 D", "pi1 Coker", "pi0 C", "pi0 D", "pi0 Coker"];
    let groups = vec![
        h.pi2.clone(),
        k.mc().clone(),
        k.md().clone(),
        h.pi1.group.clone(),
        k.gc().clone(),
        k.objects().clone(),
        h.pi0.clone(),
    ];
    let maps = vec![
        ("zero in", GroupHom::zero(&trivial, &h.pi2)),
        ("inclusion", h.pi2_inclusion.clone()),
        ("f1", f.f1().clone()),
        ("loop of a morphism", h.pi1.from_morphisms()?),
        ("object of a loop", h.pi1.to_objects()?),
        ("f0", f.f0().clone()),
        ("projection", h.pi0_projection.clone()),
        ("zero out", GroupHom::zero(&h.pi0, &trivial)),
    ];
    let mut exactness = Vec::new();
    for (i, name) in names.iter().enumerate() {
        exactness.push((*name, is_exact_at(&maps[i].1, &maps[i + 1].1)?));
    }
    Ok(LesReport {
        groups: names.into_iter().zip(groups).collect(),
        maps,
        exactness,
    })
}
