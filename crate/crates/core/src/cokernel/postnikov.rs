use crate::abelian::{GroupElement, GroupHom};
use crate::cocycle::QuadraticMap;
use crate::error::Result;
use crate::picard::{alpha0, Alpha0, PicGroupoid};

use super::bigroupoid::CokBigroupoid;
use super::homotopy::{cok_homotopy_groups, CokHomotopy};

/// The last stage `k₀ = C_{α₀}`: objects of the discrete model go to
/// themselves in the cokernel, and the class is recorded by the quadratic
/// map of the (strictified) source.
#[derive(Clone, Debug)]
pub struct K0 {
    /// Objects of `C₀ = T(G, 0, 0)` into objects of the cokernel.
    pub objects: GroupHom,
    pub quadratic: QuadraticMap,
}

#[derive(Clone, Debug)]
pub struct PostnikovReport {
    pub pi0_trivial: bool,
    pub pi1_trivial: bool,
    /// `u ↦ α = u`, from `π₁(p) = M` to `π₂` of the cokernel.
    pub witness: GroupHom,
    /// The witness is bijective and is inverse to the inclusion of `π₂`.
    pub pi2_isomorphic: bool,
}

impl PostnikovReport {
    pub fn holds(&self) -> bool {
        self.pi0_trivial && self.pi1_trivial && self.pi2_isomorphic
    }
}

#[derive(Clone, Debug)]
pub struct PostnikovTower {
    pub alpha0: Alpha0,
    pub k0: K0,
    pub cokernel: CokBigroupoid,
    pub homotopy: CokHomotopy,
    pub report: PostnikovReport,
}

/// `C → C₀ → Coker(α₀)`, strictifying first when `h ≠ 0`.
pub fn postnikov_tower(p: &PicGroupoid, budget: u64) -> Result<PostnikovTower> {
    let a = alpha0(p, budget)?;
    let source = a.functor.source().clone();
    let cokernel = CokBigroupoid::new(a.functor.clone())?;
    let homotopy = cok_homotopy_groups(&cokernel)?;

    let m = source.m();
    let inclusion = &homotopy.pi2_inclusion;
    let images: Vec<GroupElement> = (0..m.rank())
        .map(|i| inclusion.preimage(&m.generator(i)).expect("f1 = 0 kills every label"))
        .collect();
    let witness = GroupHom::from_images(m.clone(), homotopy.pi2.clone(), &images)?;
    let sq = witness.subquotients();
    let round_trip = inclusion.after(&witness)? == GroupHom::identity(m);
    let report = PostnikovReport {
        pi0_trivial: homotopy.pi0.is_trivial(),
        pi1_trivial: homotopy.pi1.group.is_trivial(),
        pi2_isomorphic: sq.kernel.is_trivial() && sq.cokernel.is_trivial() && round_trip,
        witness,
    };
    let k0 = K0 {
        objects: GroupHom::identity(source.g()),
        quadratic: source.quadratic(),
    };
    Ok(PostnikovTower {
        alpha0: a,
        k0,
        cokernel,
        homotopy,
        report,
    })
}
