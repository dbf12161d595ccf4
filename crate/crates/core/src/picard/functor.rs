use std::collections::HashSet;

use num_integer::Integer;

use crate::abelian::{solve_linear, GroupElement, GroupHom};
use crate::cocycle::{periodic_sample, CochainTable};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

use super::groupoid::{PicGroupoid, PicMorphism};

/// The monoidal constraint `φ(x, y): F(x) ⊕ F(y) → F(x ⊕ y)`, as a label in
/// the target's endomorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Constraint {
    /// `φ = 0`, usable over infinite sources.
    Zero,
    /// A normalized table over a finite source.
    Table(CochainTable),
}

/// A strong symmetric monoidal functor between skeletal models, given by
/// `f₀` on objects, `f₁` on every endomorphism group and the constraint `φ`.
///
/// Coherence is checked by [`PicFunctor::validate`]:
///
/// ```text
/// φ(x+y, z) + φ(x, y) + f₁ h(x, y, z) = h′(f₀x, f₀y, f₀z) + φ(x, y+z) + φ(y, z)
/// φ(x, y) + f₁ c(x, y) = c′(f₀x, f₀y) + φ(y, x)
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicFunctor {
    source: PicGroupoid,
    target: PicGroupoid,
    f0: GroupHom,
    f1: GroupHom,
    phi: Constraint,
}

impl PicFunctor {
    /// Checks shapes and normalization of `φ`; coherence is left to
    /// [`PicFunctor::validate`].
    pub fn new(
        source: PicGroupoid,
        target: PicGroupoid,
        f0: GroupHom,
        f1: GroupHom,
        phi: Constraint,
    ) -> Result<Self> {
        if f0.source() != source.g() || f0.target() != target.g() {
            return Err(Error::Mismatch(format!(
                "f0 maps {} to {}, expected {} to {}",
                f0.source(),
                f0.target(),
                source.g(),
                target.g()
            )));
        }
        if f1.source() != source.m() || f1.target() != target.m() {
            return Err(Error::Mismatch(format!(
                "f1 maps {} to {}, expected {} to {}",
                f1.source(),
                f1.target(),
                source.m(),
                target.m()
            )));
        }
        if let Constraint::Table(t) = &phi {
            let g = source.g();
            let n = g.require_finite()? as usize;
            if t.arity() != 2 || t.group_order() != n {
                return Err(Error::LengthMismatch {
                    expected: n * n,
                    actual: t.values().len(),
                });
            }
            if let Some(bad) = t.values().iter().find(|v| !target.m().contains(v)) {
                return Err(Error::Mismatch(format!(
                    "{bad} is not a reduced element of {}",
                    target.m()
                )));
            }
            for i in 0..n {
                for (a, b) in [(i, 0), (0, i)] {
                    if !t.get(&[a, b]).is_zero() {
                        return Err(Error::NotNormalized(format!(
                            "phi({}, {}) = {}",
                            g.element_at(a),
                            g.element_at(b),
                            t.get(&[a, b])
                        )));
                    }
                }
            }
        }
        Ok(PicFunctor {
            source,
            target,
            f0,
            f1,
            phi,
        })
    }

    pub fn identity(p: &PicGroupoid) -> Self {
        PicFunctor {
            source: p.clone(),
            target: p.clone(),
            f0: GroupHom::identity(p.g()),
            f1: GroupHom::identity(p.m()),
            phi: Constraint::Zero,
        }
    }

    /// Builds the functor with the constraint solved from the coherence
    /// equations, or `None` when `(f₀, f₁)` admits no constraint.
    pub fn solve(source: PicGroupoid, target: PicGroupoid, f0: GroupHom, f1: GroupHom) -> Result<Option<Self>> {
        let shell = PicFunctor::new(source, target, f0, f1, Constraint::Zero)?;
        match solve_constraint(&shell)? {
            None => Ok(None),
            Some(sol) => {
                let phi = if sol.particular.is_zero() {
                    Constraint::Zero
                } else {
                    Constraint::Table(sol.particular)
                };
                Ok(Some(PicFunctor { phi, ..shell }))
            }
        }
    }

    pub fn source(&self) -> &PicGroupoid {
        &self.source
    }

    pub fn target(&self) -> &PicGroupoid {
        &self.target
    }

    pub fn f0(&self) -> &GroupHom {
        &self.f0
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn constraint(&self) -> &Constraint {
        &self.phi
    }

    /// Replaces the constraint, rechecking its shape.
    pub fn with_constraint(&self, phi: Constraint) -> Result<Self> {
        PicFunctor::new(
            self.source.clone(),
            self.target.clone(),
            self.f0.clone(),
            self.f1.clone(),
            phi,
        )
    }

    pub fn phi(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match &self.phi {
            Constraint::Zero => self.target.m().zero(),
            Constraint::Table(t) => t.at(self.source.g(), &[x, y]).clone(),
        }
    }

    pub fn map_object(&self, x: &GroupElement) -> GroupElement {
        self.f0.apply(x)
    }

    pub fn map_morphism(&self, f: &PicMorphism) -> PicMorphism {
        PicMorphism {
            at: self.f0.apply(&f.at),
            label: self.f1.apply(&f.label),
        }
    }

    /// Source elements on which coherence is checked. Infinite sources
    /// carry closed-form data that, after `f₀`, depends only on residues
    /// modulo `lcm(2, exp G′)`, or on parities when `G′` is infinite.
    fn sample(&self) -> Vec<GroupElement> {
        let g = self.source.g();
        if let Ok(all) = g.elements() {
            return all;
        }
        let period = self.target.g().exponent().map_or(2, |e| e.lcm(&2));
        periodic_sample(g, period)
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        let (g, m2) = (self.source.g(), self.target.m());
        let (s, t) = (self.source.cocycle(), self.target.cocycle());
        let elements = self.sample();
        let images: Vec<GroupElement> = elements.iter().map(|x| self.f0.apply(x)).collect();
        let mut report = ValidationReport::default();
        for (x, fx) in elements.iter().zip(&images) {
            for (y, fy) in elements.iter().zip(&images) {
                let xy = g.add(x, y);
                let phi_xy = self.phi(x, y);
                for (z, fz) in elements.iter().zip(&images) {
                    let yz = g.add(y, z);
                    let lhs = m2.sum([&self.phi(&xy, z), &phi_xy, &self.f1.apply(&s.h(x, y, z))]);
                    let rhs = m2.sum([&t.h(fx, fy, fz), &self.phi(x, &yz), &self.phi(y, z)]);
                    report.record("associativity", &[x, y, z], lhs, rhs);
                }
                let lhs = m2.add(&phi_xy, &self.f1.apply(&s.c(x, y)));
                let rhs = m2.add(&t.c(fx, fy), &self.phi(y, x));
                report.record("symmetry", &[x, y], lhs, rhs);
            }
        }
        Ok(report)
    }
}

/// Free-function form of [`PicFunctor::validate`].
pub fn validate_functor(f: &PicFunctor) -> Result<ValidationReport> {
    f.validate()
}

/// `second ∘ first`, with constraint `φ₂(f₀x, f₀y) + g₁ φ₁(x, y)`.
pub fn compose_functors(first: &PicFunctor, second: &PicFunctor) -> Result<PicFunctor> {
    if first.target != second.source {
        return Err(Error::Mismatch(
            "target of the first functor is not the source of the second".into(),
        ));
    }
    let f0 = second.f0.after(&first.f0)?;
    let f1 = second.f1.after(&first.f1)?;
    let phi = match (&first.phi, &second.phi) {
        (Constraint::Zero, Constraint::Zero) => Constraint::Zero,
        _ => {
            let g = first.source.g();
            if !g.is_finite() {
                return Err(Error::InfiniteGroup(format!(
                    "composite constraint over {g} has no closed form"
                )));
            }
            let m = second.target.m();
            let table = CochainTable::from_fn(g, 2, |a| {
                let outer = second.phi(&first.f0.apply(a[0]), &first.f0.apply(a[1]));
                m.add(&outer, &second.f1.apply(&first.phi(a[0], a[1])))
            })?;
            if table.is_zero() {
                Constraint::Zero
            } else {
                Constraint::Table(table)
            }
        }
    };
    PicFunctor::new(first.source.clone(), second.target.clone(), f0, f1, phi)
}

/// All constraints compatible with a given `(f₀, f₁)`: a particular table
/// plus generators of the homogeneous solutions with their orders (0 for
/// infinite order).
#[derive(Clone, Debug)]
pub struct ConstraintSolution {
    pub particular: CochainTable,
    pub basis: Vec<(CochainTable, u64)>,
}

/// Solves the coherence equations of `f`, which are linear in `φ`, ignoring
/// the constraint `f` currently carries.
pub fn solve_constraint(f: &PicFunctor) -> Result<Option<ConstraintSolution>> {
    let g = f.source.g();
    let gi = g.index()?;
    let n = gi.len();
    let (s, t) = (f.source.cocycle(), f.target.cocycle());
    let m2 = f.target.m();
    let n_vars = (n - 1) * (n - 1);
    let var = |x: usize, y: usize| (x != 0 && y != 0).then(|| (x - 1) * (n - 1) + (y - 1));
    let images: Vec<GroupElement> = gi.elements().iter().map(|x| f.f0.apply(x)).collect();
    let el = |i: usize| gi.element(i);

    let mut seen: HashSet<(Vec<i64>, Vec<i64>)> = HashSet::new();
    let mut equations: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
    let mut push = |terms: &[(i64, Option<usize>)], rhs: GroupElement| {
        let mut row = vec![0i64; n_vars];
        for &(coef, v) in terms {
            if let Some(v) = v {
                row[v] += coef;
            }
        }
        let key = (row, rhs.into_coords());
        if seen.insert(key.clone()) {
            equations.push(key);
        }
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let rhs = m2.sub(
                    &t.h(&images[x], &images[y], &images[z]),
                    &f.f1.apply(&s.h(el(x), el(y), el(z))),
                );
                push(
                    &[
                        (1, var(gi.add(x, y), z)),
                        (1, var(x, y)),
                        (-1, var(x, gi.add(y, z))),
                        (-1, var(y, z)),
                    ],
                    rhs,
                );
            }
            let rhs = m2.sub(&t.c(&images[x], &images[y]), &f.f1.apply(&s.c(el(x), el(y))));
            push(&[(1, var(x, y)), (-1, var(y, x))], rhs);
        }
    }
    let rows: Vec<Vec<i64>> = equations.iter().map(|(r, _)| r.clone()).collect();

    let mut particular = vec![vec![0i64; m2.rank()]; n_vars];
    let mut basis_flat: Vec<(Vec<Vec<i64>>, u64)> = Vec::new();
    for (j, &modulus) in m2.factors().iter().enumerate() {
        let rhs: Vec<i64> = equations.iter().map(|(_, b)| b[j]).collect();
        let Some(sol) = solve_linear(&rows, &rhs, n_vars, modulus) else {
            return Ok(None);
        };
        for (v, p) in sol.particular.iter().enumerate() {
            particular[v][j] = *p;
        }
        for (vec, order) in sol.basis {
            let mut flat = vec![vec![0i64; m2.rank()]; n_vars];
            for (v, x) in vec.iter().enumerate() {
                flat[v][j] = *x;
            }
            basis_flat.push((flat, order));
        }
    }
    let to_table = |flat: &[Vec<i64>]| -> Result<CochainTable> {
        CochainTable::from_fn(g, 2, |a| {
            match var(gi.index_of(a[0]), gi.index_of(a[1])) {
                Some(v) => m2.reduce(&flat[v]).expect("rank matches"),
                None => m2.zero(),
            }
        })
    };
    Ok(Some(ConstraintSolution {
        particular: to_table(&particular)?,
        basis: basis_flat
            .iter()
            .map(|(flat, o)| Ok((to_table(flat)?, *o)))
            .collect::<Result<Vec<_>>>()?,
    }))
}
