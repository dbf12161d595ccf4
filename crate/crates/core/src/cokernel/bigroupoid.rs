use std::fmt;

use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::picard::{PicFunctor, PicGroupoid, PicMorphism};

/// The cokernel bigroupoid of a functor `F: C → D` of permutative models.
///
/// Objects are the objects of `D`. A 1-cell `x → y` is a pair `(f, n)` with
/// `n` an object of `C` and `f: x → y ⊕ F(n)`; in the skeletal model this
/// forces `x = y + f₀(n)` and `f` is a label in `M_D`. A 2-cell
/// `(f, n) ⇒ (f′, n)` is a label `α ∈ M_C` with `f′ = f + f₁(α)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokBigroupoid {
    functor: PicFunctor,
}

/// A 1-cell `src → tgt` given by `label: src → tgt ⊕ F(n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CokOneCell {
    pub src: GroupElement,
    pub tgt: GroupElement,
    pub n: GroupElement,
    pub label: GroupElement,
}

impl fmt::Display for CokOneCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}): {} -> {}", self.label, self.n, self.src, self.tgt)
    }
}

/// A 2-cell between parallel 1-cells with the same `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CokTwoCell {
    pub from: CokOneCell,
    pub to: CokOneCell,
    pub alpha: GroupElement,
}

impl CokBigroupoid {
    /// Requires both sides permutative and `F` coherent.
    pub fn new(functor: PicFunctor) -> Result<Self> {
        if !functor.source().is_permutative() || !functor.target().is_permutative() {
            return Err(Error::NotPermutative);
        }
        let report = functor.validate()?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidFunctor(format!(
                "{v} ({} violations)",
                report.violations.len()
            )));
        }
        Ok(CokBigroupoid { functor })
    }

    pub fn functor(&self) -> &PicFunctor {
        &self.functor
    }

    pub fn source(&self) -> &PicGroupoid {
        self.functor.source()
    }

    pub fn target(&self) -> &PicGroupoid {
        self.functor.target()
    }

    /// `G_D`, the objects.
    pub fn objects(&self) -> &FgAbGroup {
        self.target().g()
    }

    pub(crate) fn gc(&self) -> &FgAbGroup {
        self.source().g()
    }

    pub(crate) fn mc(&self) -> &FgAbGroup {
        self.source().m()
    }

    pub(crate) fn md(&self) -> &FgAbGroup {
        self.target().m()
    }

    pub(crate) fn phi(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.functor.phi(x, y)
    }

    /// The 1-cell `(label, n)` out of `src`; its target is `src − f₀(n)`.
    pub fn one_cell(&self, src: &GroupElement, n: &GroupElement, label: &GroupElement) -> CokOneCell {
        let tgt = self.objects().sub(src, &self.functor.f0().apply(n));
        CokOneCell {
            src: src.clone(),
            tgt,
            n: n.clone(),
            label: label.clone(),
        }
    }

    /// Checks `src = tgt + f₀(n)` and the group memberships.
    pub fn check_one_cell(&self, a: &CokOneCell) -> Result<()> {
        let gd = self.objects();
        let fits = gd.contains(&a.src)
            && gd.contains(&a.tgt)
            && self.gc().contains(&a.n)
            && self.md().contains(&a.label);
        if !fits || a.src != gd.add(&a.tgt, &self.functor.f0().apply(&a.n)) {
            return Err(Error::Mismatch(format!("{a} is not a 1-cell of this cokernel")));
        }
        Ok(())
    }

    pub fn identity_one_cell(&self, x: &GroupElement) -> CokOneCell {
        CokOneCell {
            src: x.clone(),
            tgt: x.clone(),
            n: self.gc().zero(),
            label: self.md().zero(),
        }
    }

    /// `a` followed by `b`: label `f + g + φ(m, n)`, component `m ⊕ n`.
    pub fn compose(&self, a: &CokOneCell, b: &CokOneCell) -> Result<CokOneCell> {
        if a.tgt != b.src {
            return Err(Error::CompositionMismatch(format!("{a} then {b}")));
        }
        let md = self.md();
        Ok(CokOneCell {
            src: a.src.clone(),
            tgt: b.tgt.clone(),
            n: self.gc().add(&b.n, &a.n),
            label: md.sum([&a.label, &b.label, &self.phi(&b.n, &a.n)]),
        })
    }

    /// The 2-cell `α` out of `from`.
    pub fn two_cell(&self, from: &CokOneCell, alpha: &GroupElement) -> CokTwoCell {
        let to = CokOneCell {
            label: self.md().add(&from.label, &self.functor.f1().apply(alpha)),
            ..from.clone()
        };
        CokTwoCell {
            from: from.clone(),
            to,
            alpha: alpha.clone(),
        }
    }

    pub fn is_two_cell(&self, t: &CokTwoCell) -> bool {
        t.from.src == t.to.src
            && t.from.tgt == t.to.tgt
            && t.from.n == t.to.n
            && t.to.label == self.md().add(&t.from.label, &self.functor.f1().apply(&t.alpha))
    }

    pub fn identity_two_cell(&self, a: &CokOneCell) -> CokTwoCell {
        self.two_cell(a, &self.mc().zero())
    }

    /// `s` then `t`.
    pub fn vertical_compose(&self, s: &CokTwoCell, t: &CokTwoCell) -> Result<CokTwoCell> {
        if s.to != t.from {
            return Err(Error::CompositionMismatch("2-cells are not composable".into()));
        }
        Ok(CokTwoCell {
            from: s.from.clone(),
            to: t.to.clone(),
            alpha: self.mc().add(&s.alpha, &t.alpha),
        })
    }

    /// Horizontal composite of `s: a ⇒ a′` and `t: b ⇒ b′` along a shared
    /// object.
    pub fn horizontal_compose(&self, s: &CokTwoCell, t: &CokTwoCell) -> Result<CokTwoCell> {
        Ok(CokTwoCell {
            from: self.compose(&s.from, &t.from)?,
            to: self.compose(&s.to, &t.to)?,
            alpha: self.mc().add(&t.alpha, &s.alpha),
        })
    }

    /// `C_F`: a morphism `u` at `x` becomes the 1-cell `(u, 0): x → x`.
    pub fn embed(&self, f: &PicMorphism) -> CokOneCell {
        CokOneCell {
            src: f.at.clone(),
            tgt: f.at.clone(),
            n: self.gc().zero(),
            label: f.label.clone(),
        }
    }

    /// `(x, y, f, n) ⊕ (z, v, g, m) = (x + z, y + v, f + g + c_D(f₀n, v) + φ(n, m), n + m)`.
    ///
    /// The correction comes from reordering `(y ⊕ F(n)) ⊕ (v ⊕ F(m))` into
    /// `(y ⊕ v) ⊕ (F(n) ⊕ F(m))`, which moves `F(n)` past `v`.
    pub fn tensor_one_cells(&self, a: &CokOneCell, b: &CokOneCell) -> Result<CokOneCell> {
        self.check_one_cell(a)?;
        self.check_one_cell(b)?;
        let (gd, md) = (self.objects(), self.md());
        let swap = self
            .target()
            .cocycle()
            .c(&self.functor.f0().apply(&a.n), &b.tgt);
        Ok(CokOneCell {
            src: gd.add(&a.src, &b.src),
            tgt: gd.add(&a.tgt, &b.tgt),
            n: self.gc().add(&a.n, &b.n),
            label: md.sum([&a.label, &b.label, &swap, &self.phi(&a.n, &b.n)]),
        })
    }

    /// Tensor of 2-cells: the labels add.
    pub fn tensor_two_cells(&self, s: &CokTwoCell, t: &CokTwoCell) -> Result<CokTwoCell> {
        Ok(CokTwoCell {
            from: self.tensor_one_cells(&s.from, &t.from)?,
            to: self.tensor_one_cells(&s.to, &t.to)?,
            alpha: self.mc().add(&s.alpha, &t.alpha),
        })
    }

    /// The braiding `x ⊕ z → z ⊕ x`, the image of `c_D(x, z)` under `C_F`.
    pub fn braiding(&self, x: &GroupElement, z: &GroupElement) -> CokOneCell {
        let at = self.objects().add(x, z);
        let label = self.target().cocycle().c(x, z);
        self.embed(&PicMorphism { at, label })
    }

    /// Naturality of the braiding at `a: x → y` and `b: z → v`: the 2-cell
    /// `c_C(n_a, n_b)` from `(a ⊕ b)` then `braiding(y, v)` to
    /// `braiding(x, z)` then `(b ⊕ a)`.
    pub fn braiding_naturality(&self, a: &CokOneCell, b: &CokOneCell) -> Result<CokTwoCell> {
        let from = self.compose(&self.tensor_one_cells(a, b)?, &self.braiding(&a.tgt, &b.tgt))?;
        let to = self.compose(&self.braiding(&a.src, &b.src), &self.tensor_one_cells(b, a)?)?;
        Ok(CokTwoCell {
            from,
            to,
            alpha: self.source().cocycle().c(&a.n, &b.n),
        })
    }

    /// An inverse of `a` up to the identity 2-cell: `(−f − φ(−n, n), −n)`.
    pub fn inverse_one_cell(&self, a: &CokOneCell) -> CokOneCell {
        let (gc, md) = (self.gc(), self.md());
        let neg_n = gc.neg(&a.n);
        let label = md.neg(&md.add(&a.label, &self.phi(&neg_n, &a.n)));
        CokOneCell {
            src: a.tgt.clone(),
            tgt: a.src.clone(),
            n: neg_n,
            label,
        }
    }
}

/// Free-function constructor.
pub fn build_cokernel(f: &PicFunctor) -> Result<CokBigroupoid> {
    CokBigroupoid::new(f.clone())
}

/// `C_F` on a single morphism of `D`.
pub fn c_f_embed(k: &CokBigroupoid, f: &PicMorphism) -> CokOneCell {
    k.embed(f)
}

/// Free-function form of [`CokBigroupoid::tensor_one_cells`].
pub fn tensor_one_cells(k: &CokBigroupoid, a: &CokOneCell, b: &CokOneCell) -> Result<CokOneCell> {
    k.tensor_one_cells(a, b)
}
