use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

use super::symmetric::{periodic_sample, CocycleForm, SymCocycle3};

#[derive(Clone, Debug, PartialEq, Eq)]
enum QuadraticForm {
    Table(Vec<GroupElement>),
    /// `q(m) = m mod 2` on `Z`.
    Sphere,
    Zero,
}

/// A map `q: G → M`, tested against the quadratic-map axioms by
/// [`QuadraticMap::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticMap {
    g: FgAbGroup,
    m: FgAbGroup,
    form: QuadraticForm,
}

impl QuadraticMap {
    /// Values in the element order of `g`.
    pub fn from_values(g: FgAbGroup, m: FgAbGroup, values: Vec<GroupElement>) -> Result<Self> {
        let order = g.require_finite()? as usize;
        if values.len() != order {
            return Err(Error::LengthMismatch {
                expected: order,
                actual: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !m.contains(v)) {
            return Err(Error::Mismatch(format!("{bad} is not a reduced element of {m}")));
        }
        Ok(QuadraticMap {
            g,
            m,
            form: QuadraticForm::Table(values),
        })
    }

    pub fn g(&self) -> &FgAbGroup {
        &self.g
    }

    pub fn m(&self) -> &FgAbGroup {
        &self.m
    }

    /// The value table, absent for the sphere closed form.
    pub fn values(&self) -> Option<&[GroupElement]> {
        match &self.form {
            QuadraticForm::Table(v) => Some(v),
            QuadraticForm::Sphere | QuadraticForm::Zero => None,
        }
    }

    pub fn eval(&self, x: &GroupElement) -> GroupElement {
        match &self.form {
            QuadraticForm::Table(v) => v[self.g.index_of(x)].clone(),
            QuadraticForm::Sphere => GroupElement::from_reduced(vec![x.coords()[0].rem_euclid(2)]),
            QuadraticForm::Zero => self.m.zero(),
        }
    }

    fn sample(&self) -> Result<Vec<GroupElement>> {
        match &self.form {
            QuadraticForm::Table(_) => self.g.elements(),
            // Closed forms factor through parity.
            QuadraticForm::Sphere | QuadraticForm::Zero => Ok(periodic_sample(&self.g, 2)),
        }
    }

    /// Checks `q(x) = q(−x)` and
    /// `q(x+y+z) + q(x) + q(y) + q(z) = q(y+z) + q(z+x) + q(x+y)`.
    pub fn validate(&self) -> Result<ValidationReport> {
        let (g, m) = (&self.g, &self.m);
        let elements = self.sample()?;
        let mut report = ValidationReport::default();
        for x in &elements {
            report.record("evenness", &[x], self.eval(x), self.eval(&g.neg(x)));
        }
        for x in &elements {
            for y in &elements {
                for z in &elements {
                    let xyz = g.sum([x, y, z]);
                    let lhs = m.sum([&self.eval(&xyz), &self.eval(x), &self.eval(y), &self.eval(z)]);
                    let rhs = m.sum([
                        &self.eval(&g.add(y, z)),
                        &self.eval(&g.add(z, x)),
                        &self.eval(&g.add(x, y)),
                    ]);
                    report.record("quadratic", &[x, y, z], lhs, rhs);
                }
            }
        }
        Ok(report)
    }

    /// Pointwise equality on a common domain, independent of representation.
    pub fn agrees_with(&self, other: &QuadraticMap) -> bool {
        if self.g != other.g || self.m != other.m {
            return false;
        }
        let sample = match (self.sample(), other.sample()) {
            (Ok(a), Ok(b)) => if a.len() >= b.len() { a } else { b },
            _ => return false,
        };
        sample.iter().all(|x| self.eval(x) == other.eval(x))
    }

    /// Whether `2q(x) = 0` everywhere, the extra condition satisfied by maps
    /// that come from symmetric cocycles.
    pub fn is_two_torsion(&self) -> Result<bool> {
        Ok(self
            .sample()?
            .iter()
            .all(|x| self.m.scale(2, &self.eval(x)).is_zero()))
    }
}

/// `q(x) = c(x, x)`.
pub fn quadratic_of(s: &SymCocycle3) -> QuadraticMap {
    let form = match s.form() {
        CocycleForm::Tables { .. } => {
            let elements = s.g().elements().expect("tables imply a finite group");
            QuadraticForm::Table(elements.iter().map(|x| s.c(x, x)).collect())
        }
        CocycleForm::Sphere => QuadraticForm::Sphere,
        CocycleForm::Zero => QuadraticForm::Zero,
    };
    QuadraticMap {
        g: s.g().clone(),
        m: s.m().clone(),
        form,
    }
}

/// Free-function form of [`QuadraticMap::validate`].
pub fn validate_quadratic(q: &QuadraticMap) -> Result<ValidationReport> {
    q.validate()
}
