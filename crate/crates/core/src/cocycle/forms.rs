use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::{Error, Result};

use super::symmetric::SymCocycle3;
use super::table::CochainTable;

fn cyclic_group(n: u64) -> Result<FgAbGroup> {
    if n == 0 {
        return Err(Error::InfiniteGroup("Z".into()));
    }
    Ok(FgAbGroup::cyclic(n))
}

fn rep(x: &GroupElement) -> i64 {
    x.coords().first().copied().unwrap_or(0)
}

/// `h_μ(x, y, z) = x·μ` if `y + z ≥ n` and 0 otherwise, on `G = Z/n` with
/// representatives in `0..n`.
pub fn standard_h_mu(n: u64, m: &FgAbGroup, mu: &GroupElement) -> Result<CochainTable> {
    let g = cyclic_group(n)?;
    if !m.scale(n as i64, mu).is_zero() {
        return Err(Error::TorsionViolation(format!("{n}·{mu} is nonzero in {m}")));
    }
    CochainTable::from_fn(&g, 3, |a| {
        if rep(a[1]) + rep(a[2]) >= n as i64 {
            m.scale(rep(a[0]), mu)
        } else {
            m.zero()
        }
    })
}

/// `ρ_a(x, y) = xy·a` on `G = Z/n`, with the integer product of
/// representatives.
pub fn rho_cyclic(n: u64, m: &FgAbGroup, a: &GroupElement) -> Result<CochainTable> {
    let g = cyclic_group(n)?;
    CochainTable::from_fn(&g, 2, |p| m.scale(rep(p[0]) * rep(p[1]), a))
}

/// The biadditive form `c(x, y) = Σᵢ xᵢ yᵢ aᵢ` determined by values on the
/// generators. Each `aᵢ` must satisfy `2aᵢ = 0` and be killed by the order
/// of its generator, so that the form is well defined and antisymmetric.
pub fn rho_biadditive(g: &FgAbGroup, m: &FgAbGroup, values: &[GroupElement]) -> Result<CochainTable> {
    if values.len() != g.rank() {
        return Err(Error::LengthMismatch {
            expected: g.rank(),
            actual: values.len(),
        });
    }
    for (i, a) in values.iter().enumerate() {
        if !m.contains(a) {
            return Err(Error::Mismatch(format!("{a} is not a reduced element of {m}")));
        }
        if !m.scale(2, a).is_zero() {
            return Err(Error::TorsionViolation(format!("2·{a} is nonzero in {m}")));
        }
        let d = g.factors()[i];
        if !m.scale(d as i64, a).is_zero() {
            return Err(Error::TorsionViolation(format!(
                "generator {i} has order {d} but {d}·{a} is nonzero"
            )));
        }
    }
    CochainTable::from_fn(g, 2, |p| {
        let terms: Vec<GroupElement> = values
            .iter()
            .enumerate()
            .map(|(i, a)| m.scale(p[0].coords()[i] * p[1].coords()[i], a))
            .collect();
        m.sum(&terms)
    })
}

/// The pair `(h_μ, ρ_a)` on `Z/n`, defined when `n·μ = 0`. It satisfies the
/// hexagon exactly when `μ = n·a`, and antisymmetry exactly when `2a = 0`.
pub fn h_mu_pair(n: u64, m: &FgAbGroup, mu: &GroupElement, a: &GroupElement) -> Result<SymCocycle3> {
    let h = standard_h_mu(n, m, mu)?;
    let c = rho_cyclic(n, m, a)?;
    SymCocycle3::from_tables(FgAbGroup::cyclic(n), m.clone(), h, c)
}

/// Replaces a cocycle on `Z/n` by `(h_{n·c(1,1)}, ρ_{c(1,1)})`.
///
/// For a valid input `n·c(1,1) = 0`, so the output is permutative.
pub fn reduce_cyclic(s: &SymCocycle3) -> Result<SymCocycle3> {
    let g = s.g();
    s.require_tables()?;
    match g.factors() {
        [] => SymCocycle3::zero(g.clone(), s.m().clone()),
        [n] => {
            let m = s.m();
            let one = g.generator(0);
            let c11 = s.c(&one, &one);
            let mu = m.scale(*n as i64, &c11);
            h_mu_pair(*n, m, &mu, &c11)
        }
        _ => Err(Error::Mismatch(format!("{g} is not cyclic"))),
    }
}
