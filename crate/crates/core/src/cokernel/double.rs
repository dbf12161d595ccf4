//! The double category `CCoker(F)`.
//!
//! Objects are objects of `D`, vertical morphisms are morphisms of `D`, and
//! horizontal 1-cells are the 1-cells `(x, y, f, n)` of the cokernel. A
//! square `(a, b, α)` from `(x, y, f, n)` to `(x, y, g, n)` has `a` on the
//! left, `b` on the right and `α: n → n` in `C`, subject to
//! `g + a = b + f₁(α) + f`.

use crate::abelian::{GroupElement, GroupIndex};
use crate::error::{Error, Result};
use crate::picard::PicFunctor;
use crate::report::{ValidationReport, Violation};

use super::bigroupoid::{CokBigroupoid, CokOneCell};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleCell {
    pub from: CokOneCell,
    pub to: CokOneCell,
    pub a: GroupElement,
    pub b: GroupElement,
    pub alpha: GroupElement,
}

/// A companion or conjoint of a vertical morphism together with its two
/// defining squares.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transport {
    pub cell: CokOneCell,
    /// The square into the horizontal unit.
    pub to_unit: DoubleCell,
    /// The square out of the horizontal unit.
    pub from_unit: DoubleCell,
}

impl CokBigroupoid {
    /// The square `(a, b, α)` out of `from`; its target label is forced.
    pub fn double_cell(
        &self,
        from: &CokOneCell,
        a: &GroupElement,
        b: &GroupElement,
        alpha: &GroupElement,
    ) -> DoubleCell {
        let md = self.md();
        let label = md.sub(
            &md.sum([b, &self.functor().f1().apply(alpha), &from.label]),
            a,
        );
        DoubleCell {
            from: from.clone(),
            to: CokOneCell {
                label,
                ..from.clone()
            },
            a: a.clone(),
            b: b.clone(),
            alpha: alpha.clone(),
        }
    }

    pub fn is_double_cell(&self, s: &DoubleCell) -> bool {
        let md = self.md();
        s.from.src == s.to.src
            && s.from.tgt == s.to.tgt
            && s.from.n == s.to.n
            && self.check_one_cell(&s.from).is_ok()
            && self.check_one_cell(&s.to).is_ok()
            && md.add(&s.to.label, &s.a) == md.sum([&s.b, &self.functor().f1().apply(&s.alpha), &s.from.label])
    }

    /// `U(x) = (x, x, 0, 0)`.
    pub fn horizontal_unit(&self, x: &GroupElement) -> CokOneCell {
        self.identity_one_cell(x)
    }

    /// `U(a) = (a, a, 0)` on `U(x)`.
    pub fn unit_square(&self, x: &GroupElement, a: &GroupElement) -> DoubleCell {
        self.double_cell(&self.horizontal_unit(x), a, a, &self.mc().zero())
    }

    /// `s` then `t`, componentwise.
    pub fn square_compose(&self, s: &DoubleCell, t: &DoubleCell) -> Result<DoubleCell> {
        if s.to != t.from {
            return Err(Error::CompositionMismatch("squares are not vertically composable".into()));
        }
        let md = self.md();
        Ok(DoubleCell {
            from: s.from.clone(),
            to: t.to.clone(),
            a: md.add(&s.a, &t.a),
            b: md.add(&s.b, &t.b),
            alpha: self.mc().add(&s.alpha, &t.alpha),
        })
    }

    /// `s ⊙ t = (a, c, β + α)` for `s = (a, b, α)` and `t = (b, c, β)`.
    pub fn square_hcompose(&self, s: &DoubleCell, t: &DoubleCell) -> Result<DoubleCell> {
        if s.b != t.a {
            return Err(Error::CompositionMismatch("squares are not horizontally composable".into()));
        }
        Ok(DoubleCell {
            from: self.compose(&s.from, &t.from)?,
            to: self.compose(&s.to, &t.to)?,
            a: s.a.clone(),
            b: t.b.clone(),
            alpha: self.mc().add(&t.alpha, &s.alpha),
        })
    }

    pub fn square_tensor(&self, s: &DoubleCell, t: &DoubleCell) -> Result<DoubleCell> {
        let md = self.md();
        Ok(DoubleCell {
            from: self.tensor_one_cells(&s.from, &t.from)?,
            to: self.tensor_one_cells(&s.to, &t.to)?,
            a: md.add(&s.a, &t.a),
            b: md.add(&s.b, &t.b),
            alpha: self.mc().add(&s.alpha, &t.alpha),
        })
    }

    /// `𝔵: (A ⊕ A′) ⊙ (B ⊕ B′) → (A ⊙ B) ⊕ (A′ ⊙ B′)`. Its `C`-component
    /// is the reordering `(m ⊕ m′) ⊕ (n ⊕ n′) → (m ⊕ n) ⊕ (m′ ⊕ n′)`, which
    /// in a permutative `C` is the symmetry `c_C(m′, n)`.
    pub fn interchanger(
        &self,
        a: &CokOneCell,
        b: &CokOneCell,
        a2: &CokOneCell,
        b2: &CokOneCell,
    ) -> Result<DoubleCell> {
        let from = self.compose(&self.tensor_one_cells(a, a2)?, &self.tensor_one_cells(b, b2)?)?;
        let to = self.tensor_one_cells(&self.compose(a, b)?, &self.compose(a2, b2)?)?;
        Ok(DoubleCell {
            from,
            to,
            a: self.md().zero(),
            b: self.md().zero(),
            alpha: self.source().cocycle().c(&b2.n, &a.n),
        })
    }

    /// `𝔲: U(x ⊕ y) → U(x) ⊕ U(y)`.
    pub fn unitor(&self, x: &GroupElement, y: &GroupElement) -> Result<DoubleCell> {
        let md = self.md();
        Ok(DoubleCell {
            from: self.horizontal_unit(&self.objects().add(x, y)),
            to: self.tensor_one_cells(&self.horizontal_unit(x), &self.horizontal_unit(y))?,
            a: md.zero(),
            b: md.zero(),
            alpha: self.mc().zero(),
        })
    }

    /// Companion of `a: x → x`: the 1-cell `(x, x, a, 0)` with squares
    /// `(a, 1, 0)` into `U(x)` and `(1, a, 0)` out of `U(x)`.
    pub fn companion(&self, x: &GroupElement, a: &GroupElement) -> Transport {
        let zero = self.md().zero();
        let cell = CokOneCell {
            label: a.clone(),
            ..self.horizontal_unit(x)
        };
        Transport {
            to_unit: self.double_cell(&cell, a, &zero, &self.mc().zero()),
            from_unit: self.double_cell(&self.horizontal_unit(x), &zero, a, &self.mc().zero()),
            cell,
        }
    }

    /// Conjoint of `a: x → x`: the 1-cell `(x, x, −a, 0)` with squares
    /// `(1, a, 0)` into `U(x)` and `(a, 1, 0)` out of `U(x)`.
    pub fn conjoint(&self, x: &GroupElement, a: &GroupElement) -> Transport {
        let md = self.md();
        let zero = md.zero();
        let cell = CokOneCell {
            label: md.neg(a),
            ..self.horizontal_unit(x)
        };
        Transport {
            to_unit: self.double_cell(&cell, &zero, a, &self.mc().zero()),
            from_unit: self.double_cell(&self.horizontal_unit(x), a, &zero, &self.mc().zero()),
            cell,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct H {
    x: usize,
    y: usize,
    f: usize,
    n: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Sq {
    from: H,
    to: H,
    a: usize,
    b: usize,
    al: usize,
}

/// Index tables for the exhaustive checks. Element `0` of every index is
/// the zero element.
struct Engine {
    gd: GroupIndex,
    gc: GroupIndex,
    md: GroupIndex,
    mc: GroupIndex,
    f0: Vec<usize>,
    f1: Vec<usize>,
    phi: Vec<usize>,
    cd: Vec<usize>,
    cc: Vec<usize>,
}

impl Engine {
    fn new(k: &CokBigroupoid) -> Result<Self> {
        let (gd, gc) = (k.objects().index()?, k.gc().index()?);
        let (md, mc) = (k.md().index()?, k.mc().index()?);
        let f = k.functor();
        let f0 = gc.elements().iter().map(|n| gd.index_of(&f.f0().apply(n))).collect();
        let f1 = mc.elements().iter().map(|a| md.index_of(&f.f1().apply(a))).collect();
        let mut phi = Vec::with_capacity(gc.len() * gc.len());
        let mut cc = Vec::with_capacity(gc.len() * gc.len());
        for x in gc.elements() {
            for y in gc.elements() {
                phi.push(md.index_of(&f.phi(x, y)));
                cc.push(mc.index_of(&k.source().cocycle().c(x, y)));
            }
        }
        let mut cd = Vec::with_capacity(gd.len() * gd.len());
        for x in gd.elements() {
            for y in gd.elements() {
                cd.push(md.index_of(&k.target().cocycle().c(x, y)));
            }
        }
        Ok(Engine {
            gd,
            gc,
            md,
            mc,
            f0,
            f1,
            phi,
            cd,
            cc,
        })
    }

    fn cell(&self, x: usize, n: usize, f: usize) -> H {
        H {
            x,
            y: self.gd.sub(x, self.f0[n]),
            f,
            n,
        }
    }

    fn unit(&self, x: usize) -> H {
        H { x, y: x, f: 0, n: 0 }
    }

    fn cells(&self) -> Vec<H> {
        let mut out = Vec::with_capacity(self.gd.len() * self.gc.len() * self.md.len());
        for x in 0..self.gd.len() {
            for n in 0..self.gc.len() {
                for f in 0..self.md.len() {
                    out.push(self.cell(x, n, f));
                }
            }
        }
        out
    }

    fn compose(&self, p: H, q: H) -> H {
        let nc = self.gc.len();
        H {
            x: p.x,
            y: q.y,
            f: self.md.add(self.md.add(p.f, q.f), self.phi[q.n * nc + p.n]),
            n: self.gc.add(q.n, p.n),
        }
    }

    fn tensor(&self, p: H, q: H) -> H {
        let (nc, nd) = (self.gc.len(), self.gd.len());
        let swap = self.cd[self.f0[p.n] * nd + q.y];
        let f = self.md.add(self.md.add(p.f, q.f), self.md.add(swap, self.phi[p.n * nc + q.n]));
        H {
            x: self.gd.add(p.x, q.x),
            y: self.gd.add(p.y, q.y),
            f,
            n: self.gc.add(p.n, q.n),
        }
    }

    fn square(&self, from: H, a: usize, b: usize, al: usize) -> Sq {
        let md = &self.md;
        let f = md.sub(md.add(md.add(b, self.f1[al]), from.f), a);
        Sq {
            from,
            to: H { f, ..from },
            a,
            b,
            al,
        }
    }

    fn identity(&self, h: H) -> Sq {
        Sq {
            from: h,
            to: h,
            a: 0,
            b: 0,
            al: 0,
        }
    }

    /// Left and right sides of the square equation `g + a = b + f₁α + f`.
    fn sides(&self, s: Sq) -> (usize, usize) {
        let md = &self.md;
        (md.add(s.to.f, s.a), md.add(md.add(s.b, self.f1[s.al]), s.from.f))
    }

    fn is_cell(&self, h: H) -> bool {
        h.x == self.gd.add(h.y, self.f0[h.n])
    }

    fn is_square(&self, s: Sq) -> bool {
        let (l, r) = self.sides(s);
        s.from.x == s.to.x
            && s.from.y == s.to.y
            && s.from.n == s.to.n
            && self.is_cell(s.from)
            && self.is_cell(s.to)
            && l == r
    }

    fn vcompose(&self, s: Sq, t: Sq) -> Sq {
        debug_assert_eq!(s.to, t.from);
        Sq {
            from: s.from,
            to: t.to,
            a: self.md.add(s.a, t.a),
            b: self.md.add(s.b, t.b),
            al: self.mc.add(s.al, t.al),
        }
    }

    fn hcompose(&self, s: Sq, t: Sq) -> Sq {
        debug_assert_eq!(s.b, t.a);
        Sq {
            from: self.compose(s.from, t.from),
            to: self.compose(s.to, t.to),
            a: s.a,
            b: t.b,
            al: self.mc.add(t.al, s.al),
        }
    }

    fn tensor_sq(&self, s: Sq, t: Sq) -> Sq {
        Sq {
            from: self.tensor(s.from, t.from),
            to: self.tensor(s.to, t.to),
            a: self.md.add(s.a, t.a),
            b: self.md.add(s.b, t.b),
            al: self.mc.add(s.al, t.al),
        }
    }

    fn interchanger(&self, a: H, b: H, a2: H, b2: H) -> Sq {
        Sq {
            from: self.compose(self.tensor(a, a2), self.tensor(b, b2)),
            to: self.tensor(self.compose(a, b), self.compose(a2, b2)),
            a: 0,
            b: 0,
            al: self.cc[b2.n * self.gc.len() + a.n],
        }
    }

    /// Indices of the generators of a group, one per cyclic factor.
    fn generators(ix: &GroupIndex) -> Vec<usize> {
        let g = ix.group();
        (0..g.rank()).map(|i| ix.index_of(&g.generator(i))).collect()
    }

    fn cell_args(&self, h: H) -> [GroupElement; 4] {
        [
            self.gd.element(h.x).clone(),
            self.gd.element(h.y).clone(),
            self.md.element(h.f).clone(),
            self.gc.element(h.n).clone(),
        ]
    }

    fn encode(&self, s: Sq) -> GroupElement {
        let mut v = Vec::new();
        for h in [s.from, s.to] {
            for e in self.cell_args(h) {
                v.extend_from_slice(e.coords());
            }
        }
        for e in [self.md.element(s.a), self.md.element(s.b), self.mc.element(s.al)] {
            v.extend_from_slice(e.coords());
        }
        GroupElement::from_reduced(v)
    }
}

/// Collects check outcomes; violations carry the instantiating cells.
struct Tally<'a> {
    engine: &'a Engine,
    report: ValidationReport,
}

impl Tally<'_> {
    fn args(&self, cells: &[H], labels: &[GroupElement]) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = cells.iter().flat_map(|&h| self.engine.cell_args(h)).collect();
        out.extend_from_slice(labels);
        out
    }

    /// Records that `s` is a valid square.
    fn square(&mut self, axiom: &'static str, s: Sq, cells: &[H]) {
        self.report.checked += 1;
        if !self.engine.is_square(s) {
            let (l, r) = self.engine.sides(s);
            let args = self.args(&[s.from, s.to], &[]);
            let mut all = self.args(cells, &[]);
            all.extend(args);
            self.report.violations.push(Violation {
                axiom,
                args: all,
                lhs: self.engine.md.element(l).clone(),
                rhs: self.engine.md.element(r).clone(),
            });
        }
    }

    /// Records that two squares coincide.
    fn equal(&mut self, axiom: &'static str, lhs: Sq, rhs: Sq, cells: &[H]) {
        self.report.checked += 1;
        if lhs != rhs {
            let args = self.args(cells, &[]);
            self.report.violations.push(Violation {
                axiom,
                args,
                lhs: self.engine.encode(lhs),
                rhs: self.engine.encode(rhs),
            });
        }
    }

    fn same_cell(&mut self, axiom: &'static str, lhs: H, rhs: H) {
        let (l, r) = (self.engine.identity(lhs), self.engine.identity(rhs));
        self.equal(axiom, l, r, &[lhs, rhs]);
    }

    /// Records that two labels of `M_D` coincide.
    fn label(&mut self, axiom: &'static str, lhs: usize, rhs: usize, cells: &[H]) {
        self.report.checked += 1;
        if lhs != rhs {
            let args = self.args(cells, &[]);
            self.report.violations.push(Violation {
                axiom,
                args,
                lhs: self.engine.md.element(lhs).clone(),
                rhs: self.engine.md.element(rhs).clone(),
            });
        }
    }
}

/// Number of equation instances [`double_category_check`] evaluates.
pub fn double_check_size(k: &CokBigroupoid) -> Result<u64> {
    let order = |g: &crate::abelian::FgAbGroup| g.require_finite();
    let (d, c, p, q) = (order(k.objects())?, order(k.gc())?, order(k.md())?, order(k.mc())?);
    let (rp, rq) = (k.md().rank() as u64, k.mc().rank() as u64);
    let objects = d * c * p;
    let moves = p * p * q;
    let pairs = objects * c * p;
    let hmoves = p * p * p * q * q;
    let parts = [
        d * p * (1 + p),
        objects * (2 + 2 * moves * moves),
        pairs * (1 + hmoves * (3 + 3 * rp + 2 * rq)),
        objects * objects * moves * (1 + 2 * rp + rq),
        pairs * pairs + d * d,
        d * p * 10,
    ];
    parts
        .iter()
        .try_fold(0u64, |acc, &x| acc.checked_add(x))
        .ok_or(Error::BudgetExceeded {
            needed: u64::MAX,
            budget: 0,
        })
}

/// Exhaustive checks of the double category `CCoker(F)` and its monoidal
/// structure:
///
/// - `unit`: `U` is a functor and each `U(a)` is a square.
/// - `source`, `target`: `S` and `T` preserve identities and composites.
/// - `horizontal composition`: `⊙` lands in squares, preserves identities,
///   and commutes with vertical composition. The second vertical factor
///   runs over one generator step per cyclic factor of the square labels,
///   which with the identity case determines every composite.
/// - `tensor`: `⊕` of squares lands in squares, with the second factor
///   ranging over identities and generator steps.
/// - `interchange`, `unitor`: `𝔵` and `𝔲` are squares.
/// - `companion`, `conjoint`: the two defining squares and both composite
///   equations, for every vertical morphism.
///
/// Fails with `BudgetExceeded` before doing any work when the instance
/// count exceeds `budget`.
pub fn double_category_check(f: &PicFunctor, budget: u64) -> Result<ValidationReport> {
    let k = CokBigroupoid::new(f.clone())?;
    let needed = double_check_size(&k)?;
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let e = Engine::new(&k)?;
    let mut t = Tally {
        engine: &e,
        report: ValidationReport::default(),
    };
    let (nd, nc, np, nq) = (e.gd.len(), e.gc.len(), e.md.len(), e.mc.len());
    let cells = e.cells();

    for x in 0..nd {
        let u = e.unit(x);
        for a in 0..np {
            let ua = e.square(u, a, a, 0);
            t.square("unit", ua, &[u]);
            for a2 in 0..np {
                let ua2 = e.square(u, a2, a2, 0);
                let sum = e.md.add(a, a2);
                t.equal("unit", e.vcompose(ua, ua2), e.square(u, sum, sum, 0), &[u]);
            }
        }
    }

    for &h in &cells {
        let id = e.identity(h);
        t.label("source", id.a, 0, &[h]);
        t.label("target", id.b, 0, &[h]);
        for a in 0..np {
            for b in 0..np {
                for al in 0..nq {
                    let s = e.square(h, a, b, al);
                    for a2 in 0..np {
                        for b2 in 0..np {
                            for al2 in 0..nq {
                                let s2 = e.square(s.to, a2, b2, al2);
                                let v = e.vcompose(s, s2);
                                t.label("source", v.a, e.md.add(a, a2), &[h, s.to, s2.to]);
                                t.label("target", v.b, e.md.add(b, b2), &[h, s.to, s2.to]);
                            }
                        }
                    }
                }
            }
        }
    }

    // Generator steps (Δa, Δb, Δc, Δα, Δβ) for a composable pair of squares.
    let gens_d = Engine::generators(&e.md);
    let gens_c = Engine::generators(&e.mc);
    let mut steps: Vec<[usize; 5]> = Vec::new();
    for &g in &gens_d {
        steps.extend([[g, 0, 0, 0, 0], [0, g, 0, 0, 0], [0, 0, g, 0, 0]]);
    }
    for &g in &gens_c {
        steps.extend([[0, 0, 0, g, 0], [0, 0, 0, 0, g]]);
    }
    for &p in &cells {
        for n in 0..nc {
            for g in 0..np {
                let q = e.cell(p.y, n, g);
                let pq = e.compose(p, q);
                t.equal(
                    "horizontal composition",
                    e.hcompose(e.identity(p), e.identity(q)),
                    e.identity(pq),
                    &[p, q],
                );
                for a in 0..np {
                    for b in 0..np {
                        for c in 0..np {
                            for al in 0..nq {
                                for be in 0..nq {
                                    let s = e.square(p, a, b, al);
                                    let r = e.square(q, b, c, be);
                                    let sr = e.hcompose(s, r);
                                    t.square("horizontal composition", sr, &[p, q]);
                                    t.label("horizontal composition", sr.a, s.a, &[p, q]);
                                    t.label("horizontal composition", sr.b, r.b, &[p, q]);
                                    for st in &steps {
                                        let s2 = e.square(s.to, st[0], st[1], st[3]);
                                        let r2 = e.square(r.to, st[1], st[2], st[4]);
                                        let lhs = e.hcompose(e.vcompose(s, s2), e.vcompose(r, r2));
                                        let rhs = e.vcompose(sr, e.hcompose(s2, r2));
                                        t.equal("horizontal composition", lhs, rhs, &[p, q]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mut tensor_steps: Vec<[usize; 3]> = vec![[0, 0, 0]];
    for &g in &gens_d {
        tensor_steps.extend([[g, 0, 0], [0, g, 0]]);
    }
    for &g in &gens_c {
        tensor_steps.push([0, 0, g]);
    }
    for &p in &cells {
        for &p2 in &cells {
            for a in 0..np {
                for b in 0..np {
                    for al in 0..nq {
                        let s = e.square(p, a, b, al);
                        for st in &tensor_steps {
                            let s2 = e.square(p2, st[0], st[1], st[2]);
                            t.square("tensor", e.tensor_sq(s, s2), &[p, p2]);
                        }
                    }
                }
            }
        }
    }

    let mut composable: Vec<(H, H)> = Vec::with_capacity(cells.len() * nc * np);
    for &p in &cells {
        for n in 0..nc {
            for g in 0..np {
                composable.push((p, e.cell(p.y, n, g)));
            }
        }
    }
    for &(a, b) in &composable {
        for &(a2, b2) in &composable {
            t.square("interchange", e.interchanger(a, b, a2, b2), &[a, b, a2, b2]);
        }
    }
    for x in 0..nd {
        for y in 0..nd {
            let s = Sq {
                from: e.unit(e.gd.add(x, y)),
                to: e.tensor(e.unit(x), e.unit(y)),
                a: 0,
                b: 0,
                al: 0,
            };
            t.square("unitor", s, &[e.unit(x), e.unit(y)]);
        }
    }

    for x in 0..nd {
        let u = e.unit(x);
        for a in 0..np {
            let ua = e.square(u, a, a, 0);
            let companion = H { f: a, ..u };
            let into = e.square(companion, a, 0, 0);
            let out = e.square(u, 0, a, 0);
            t.square("companion", into, &[companion]);
            t.square("companion", out, &[companion]);
            t.same_cell("companion", into.to, u);
            t.equal("companion", e.vcompose(out, into), ua, &[companion]);
            t.equal("companion", e.hcompose(out, into), e.identity(companion), &[companion]);

            let conjoint = H { f: e.md.neg(a), ..u };
            let into = e.square(conjoint, 0, a, 0);
            let out = e.square(u, a, 0, 0);
            t.square("conjoint", into, &[conjoint]);
            t.square("conjoint", out, &[conjoint]);
            t.same_cell("conjoint", into.to, u);
            t.equal("conjoint", e.vcompose(out, into), ua, &[conjoint]);
            t.equal("conjoint", e.hcompose(into, out), e.identity(conjoint), &[conjoint]);
        }
    }

    Ok(t.report)
}
