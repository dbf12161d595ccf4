//! The truncated sphere `𝕊`, its bipermutative structure, the sign functor
//! from finite sets, and the action of `𝕊` on a permutative model.
//!
//! `𝕊` has the integers as objects and `Z/2 = {0, η}` as every endomorphism
//! group, with symmetry `c(m, n) = η` exactly when `mn` is odd.

mod permutation;

pub use permutation::{all_permutations, Permutation};

use crate::abelian::{FgAbGroup, GroupElement, GroupHom};
use crate::error::{Error, Result};
use crate::picard::{Constraint, PicFunctor, PicGroupoid, PicMorphism};

pub fn sphere() -> PicGroupoid {
    PicGroupoid::sphere()
}

fn z(n: i64) -> GroupElement {
    FgAbGroup::integers().reduce(&[n]).expect("rank 1")
}

fn z2(b: i64) -> GroupElement {
    FgAbGroup::cyclic(2).reduce(&[b]).expect("rank 1")
}

/// A morphism of `𝕊`: `label ∈ {0, 1}` at object `n`.
pub fn sphere_morphism(n: i64, label: i64) -> PicMorphism {
    PicMorphism {
        at: z(n),
        label: z2(label),
    }
}

/// `C(m, 2) = m(m − 1)/2`, also for negative `m`.
pub fn binom2(m: i64) -> i64 {
    m * (m - 1) / 2
}

/// Cells of the multiplicative structure on `𝕊` at a pair of objects.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingCells {
    /// `mn`.
    pub product: i64,
    /// The multiplicative symmetry `m ⊗ n → n ⊗ m`, an endomorphism of `mn`.
    pub symmetry: PicMorphism,
}

/// Object product and multiplicative symmetry: `c⊗(m, n) = η` exactly when
/// `C(m, 2)·C(n, 2)` is odd.
pub fn ring_cells(m: i64, n: i64) -> RingCells {
    let odd = binom2(m).rem_euclid(2) * binom2(n).rem_euclid(2);
    RingCells {
        product: m * n,
        symmetry: sphere_morphism(m * n, odd),
    }
}

/// `f ⊗ g` for `f` at `m` and `g` at `n`: the label `n·f + m·g` at `mn`.
pub fn ring_tensor(f: &PicMorphism, g: &PicMorphism) -> PicMorphism {
    let (m, n) = (f.at.coords()[0], g.at.coords()[0]);
    let label = n * f.label.coords()[0] + m * g.label.coords()[0];
    sphere_morphism(m * n, label)
}

/// `ξ(σ)`: the sign of `σ ∈ Σₙ` as an endomorphism of `n` in `𝕊`.
pub fn xi(p: &Permutation) -> PicMorphism {
    sphere_morphism(p.len() as i64, p.parity() as i64)
}

/// The functor `𝕊 → c` sending `1` to `x`: `f₀(n) = n·x`, `f₁(η) = c(x, x)`
/// and trivial constraint.
pub fn free_map(c: &PicGroupoid, x: &GroupElement) -> Result<PicFunctor> {
    if !c.is_permutative() {
        return Err(Error::NotPermutative);
    }
    let s = sphere();
    let f0 = GroupHom::from_images(s.g().clone(), c.g().clone(), std::slice::from_ref(x))?;
    let q = c.cocycle().c(x, x);
    let f1 = GroupHom::from_images(s.m().clone(), c.m().clone(), &[q])?;
    PicFunctor::new(s, c.clone(), f0, f1, Constraint::Zero)
}

/// Every coherent functor `𝕊 → c` with `f₀(1) = x` and trivial constraint,
/// found by trying each `f₁(η)` of order at most 2. The free property
/// predicts exactly one.
pub fn free_map_candidates(c: &PicGroupoid, x: &GroupElement) -> Result<Vec<PicFunctor>> {
    if !c.is_permutative() {
        return Err(Error::NotPermutative);
    }
    let s = sphere();
    let f0 = GroupHom::from_images(s.g().clone(), c.g().clone(), std::slice::from_ref(x))?;
    let mut out = Vec::new();
    for a in c.m().elements()? {
        let Ok(f1) = GroupHom::from_images(s.m().clone(), c.m().clone(), &[a]) else {
            continue;
        };
        let f = PicFunctor::new(s.clone(), c.clone(), f0.clone(), f1, Constraint::Zero)?;
        if f.validate()?.is_valid() {
            out.push(f);
        }
    }
    Ok(out)
}

/// The action `𝕊 × c → c` on a permutative model.
///
/// Objects: `n × x ↦ n·x`. Morphisms: `(ε at n) × (u at x)` goes to the
/// label `ε·c(x, x) + n·u` at `n·x`. On generators this is the displayed
/// rule `η × 1_x ↦ c(x, x) ⊕ 1`; on `η₀` and `η₁` it is fixed by
/// translation from `η₂`, and it is extended additively to all cells.
#[derive(Clone, Debug)]
pub struct SphereAction {
    target: PicGroupoid,
}

impl SphereAction {
    pub fn new(target: &PicGroupoid) -> Result<Self> {
        if !target.is_permutative() {
            return Err(Error::NotPermutative);
        }
        Ok(SphereAction {
            target: target.clone(),
        })
    }

    pub fn target(&self) -> &PicGroupoid {
        &self.target
    }

    /// `n·x`; negative `n` acts as `|n|·(−x)`.
    pub fn act_object(&self, n: i64, x: &GroupElement) -> GroupElement {
        let g = self.target.g();
        if n < 0 {
            g.scale(-n, &g.neg(x))
        } else {
            g.scale(n, x)
        }
    }

    /// Image of `(ε at n) × f`.
    pub fn act_morphism(&self, n: i64, eta: &GroupElement, f: &PicMorphism) -> PicMorphism {
        let m = self.target.m();
        let q = self.target.cocycle().c(&f.at, &f.at);
        PicMorphism {
            at: self.act_object(n, &f.at),
            label: m.add(&m.scale(eta.coords()[0], &q), &m.scale(n, &f.label)),
        }
    }
}
