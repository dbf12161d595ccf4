//! Strictification and equivalence of skeletal models.
//!
//! Every valid cocycle is cohomologous to the permutative one
//! `(0, c′)` with `c′(x, y) = Σᵢ xᵢ yᵢ c(eᵢ, eᵢ)` over the generators `eᵢ` of
//! `G`. Classes are detected by the quadratic map `q(x) = c(x, x)`.

use crate::abelian::{GroupElement, GroupHom};
use crate::cocycle::{are_cohomologous, rho_biadditive, Cochain2, CochainTable, SymCocycle3};
use crate::error::{Error, Result};

use super::functor::{solve_constraint, Constraint, PicFunctor};
use super::groupoid::PicGroupoid;

/// Outcome of the exhaustive cohomologous-pair search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessSearch {
    Found(Cochain2),
    NotFound,
    /// The search space exceeded the budget.
    Skipped(String),
}

/// A permutative model together with the evidence that it is equivalent to
/// the input.
#[derive(Clone, Debug)]
pub struct Strictification {
    pub groupoid: PicGroupoid,
    /// `c(eᵢ, eᵢ)` for each generator of `G`.
    pub generator_values: Vec<GroupElement>,
    /// Whether the quadratic maps of input and output agree everywhere.
    pub quadratic_match: bool,
    pub witness: WitnessSearch,
    /// The functor `(id, id, φ)` from the input to the output, with `φ`
    /// solved from the coherence equations.
    pub equivalence: PicFunctor,
}

pub fn strictify(p: &PicGroupoid, budget: u64) -> Result<Strictification> {
    let (g, m) = (p.g(), p.m());
    g.require_finite()?;
    let generator_values: Vec<GroupElement> = (0..g.rank())
        .map(|i| {
            let e = g.generator(i);
            p.cocycle().c(&e, &e)
        })
        .collect();
    let c = rho_biadditive(g, m, &generator_values)?;
    let h = CochainTable::zero(g, m, 3)?;
    let strict = PicGroupoid::new(SymCocycle3::from_tables(g.clone(), m.clone(), h, c)?)?;

    let quadratic_match = p.quadratic().agrees_with(&strict.quadratic());
    let witness = match are_cohomologous(p.cocycle(), strict.cocycle(), budget) {
        Ok(Some(k)) => WitnessSearch::Found(k),
        Ok(None) => WitnessSearch::NotFound,
        Err(Error::SearchTooLarge { space, .. }) => WitnessSearch::Skipped(space),
        Err(e) => return Err(e),
    };
    let equivalence = equivalence_functor(p, &strict)?.ok_or_else(|| {
        Error::InvalidFunctor("no identity-on-objects equivalence to the strict model".into())
    })?;
    Ok(Strictification {
        groupoid: strict,
        generator_values,
        quadratic_match,
        witness,
        equivalence,
    })
}

fn same_presentation(p: &PicGroupoid, q: &PicGroupoid) -> Result<()> {
    if p.g() != q.g() || p.m() != q.m() {
        return Err(Error::PresentationMismatch(format!(
            "({}, {}) versus ({}, {})",
            p.g(),
            p.m(),
            q.g(),
            q.m()
        )));
    }
    Ok(())
}

/// Whether two models on the same `(G, M)` are equivalent, decided by
/// comparing quadratic maps.
pub fn are_equivalent(p: &PicGroupoid, q: &PicGroupoid) -> Result<bool> {
    same_presentation(p, q)?;
    Ok(p.quadratic().agrees_with(&q.quadratic()))
}

/// A functor `(id, id, φ)` from `p` to `q` if one exists. Its constraint is
/// a cochain exhibiting the two cocycles as cohomologous.
pub fn equivalence_functor(p: &PicGroupoid, q: &PicGroupoid) -> Result<Option<PicFunctor>> {
    same_presentation(p, q)?;
    if p.cocycle() == q.cocycle() {
        return Ok(Some(PicFunctor::identity(p)));
    }
    let shell = PicFunctor::new(
        p.clone(),
        q.clone(),
        GroupHom::identity(p.g()),
        GroupHom::identity(p.m()),
        Constraint::Zero,
    )?;
    match solve_constraint(&shell)? {
        None => Ok(None),
        Some(sol) => shell.with_constraint(Constraint::Table(sol.particular)).map(Some),
    }
}

/// The functor to the discrete model `T(G, 0, 0)` sending each object to
/// its class and every morphism to an identity.
#[derive(Clone, Debug)]
pub struct Alpha0 {
    pub functor: PicFunctor,
    /// Present when the input had `h ≠ 0`; the functor then starts at the
    /// strictified model.
    pub strictification: Option<Strictification>,
}

pub fn alpha0(p: &PicGroupoid, budget: u64) -> Result<Alpha0> {
    let (source, strictification) = if p.is_permutative() {
        (p.clone(), None)
    } else {
        let s = strictify(p, budget)?;
        (s.groupoid.clone(), Some(s))
    };
    let target = PicGroupoid::discrete(source.g());
    let functor = PicFunctor::new(
        source.clone(),
        target.clone(),
        GroupHom::identity(source.g()),
        GroupHom::zero(source.m(), target.m()),
        Constraint::Zero,
    )?;
    Ok(Alpha0 {
        functor,
        strictification,
    })
}
