use std::fmt;

use crate::abelian::{FgAbGroup, GroupElement};
use crate::cocycle::{quadratic_of, QuadraticMap, SymCocycle3};
use crate::error::{Error, Result};

/// The skeletal Picard groupoid `T(G, M, (h, c))`: objects are elements of
/// `G`, every object has endomorphism group `M`, and there are no other
/// morphisms. Tensor is addition in `G` and in `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicGroupoid {
    cocycle: SymCocycle3,
}

/// A morphism `at → at` with the given label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PicMorphism {
    pub at: GroupElement,
    pub label: GroupElement,
}

impl fmt::Display for PicMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {}", self.label, self.at)
    }
}

/// The associator `(x ⊕ y) ⊕ z → x ⊕ (y ⊕ z)` and symmetry `x ⊕ y → y ⊕ x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructuralCells {
    pub associator: PicMorphism,
    pub symmetry: PicMorphism,
}

impl PicGroupoid {
    /// Wraps a cocycle, rejecting it with its first violated axiom.
    pub fn new(cocycle: SymCocycle3) -> Result<Self> {
        let report = cocycle.validate()?;
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidCocycle(format!(
                "{v} ({} violations)",
                report.violations.len()
            )));
        }
        Ok(PicGroupoid { cocycle })
    }

    /// The truncated sphere: objects `Z`, endomorphisms `Z/2`.
    pub fn sphere() -> Self {
        PicGroupoid {
            cocycle: SymCocycle3::sphere(),
        }
    }

    /// `T(G, 0, 0)`, the discrete model on `g`.
    pub fn discrete(g: &FgAbGroup) -> Self {
        PicGroupoid {
            cocycle: SymCocycle3::zero_closed(g.clone(), FgAbGroup::trivial()),
        }
    }

    pub fn g(&self) -> &FgAbGroup {
        self.cocycle.g()
    }

    pub fn m(&self) -> &FgAbGroup {
        self.cocycle.m()
    }

    pub fn cocycle(&self) -> &SymCocycle3 {
        &self.cocycle
    }

    pub fn is_permutative(&self) -> bool {
        self.cocycle.is_permutative()
    }

    pub fn unit(&self) -> GroupElement {
        self.g().zero()
    }

    pub fn identity(&self, x: &GroupElement) -> PicMorphism {
        PicMorphism {
            at: x.clone(),
            label: self.m().zero(),
        }
    }

    /// Composition adds labels; both morphisms must live at the same object.
    pub fn compose(&self, f: &PicMorphism, g: &PicMorphism) -> Result<PicMorphism> {
        if f.at != g.at {
            return Err(Error::CompositionMismatch(format!(
                "morphisms at {} and {}",
                f.at, g.at
            )));
        }
        Ok(PicMorphism {
            at: f.at.clone(),
            label: self.m().add(&f.label, &g.label),
        })
    }

    pub fn tensor(&self, f: &PicMorphism, g: &PicMorphism) -> PicMorphism {
        PicMorphism {
            at: self.g().add(&f.at, &g.at),
            label: self.m().add(&f.label, &g.label),
        }
    }

    pub fn structural_cells(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> StructuralCells {
        let g = self.g();
        StructuralCells {
            associator: PicMorphism {
                at: g.sum([x, y, z]),
                label: self.cocycle.h(x, y, z),
            },
            symmetry: PicMorphism {
                at: g.add(x, y),
                label: self.cocycle.c(x, y),
            },
        }
    }

    /// The inverse object `−x` with its evaluation `(−x) ⊕ x → I`, which in
    /// the skeletal model is the identity of the unit.
    pub fn inverse_of(&self, x: &GroupElement) -> (GroupElement, PicMorphism) {
        (self.g().neg(x), self.identity(&self.unit()))
    }

    /// `(π₀, π₁) = (G, M)`.
    pub fn homotopy_groups(&self) -> (FgAbGroup, FgAbGroup) {
        (self.g().clone(), self.m().clone())
    }

    pub fn quadratic(&self) -> QuadraticMap {
        quadratic_of(&self.cocycle)
    }
}

/// Builds `T(g, m, cocycle)` after checking that the cocycle lives on
/// `(g, m)` and satisfies the axioms.
pub fn make_picard(g: &FgAbGroup, m: &FgAbGroup, cocycle: SymCocycle3) -> Result<PicGroupoid> {
    if cocycle.g() != g || cocycle.m() != m {
        return Err(Error::Mismatch(format!(
            "cocycle on ({}, {}) does not live on ({g}, {m})",
            cocycle.g(),
            cocycle.m()
        )));
    }
    PicGroupoid::new(cocycle)
}
