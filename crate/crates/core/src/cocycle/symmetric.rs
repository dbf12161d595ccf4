use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::{Error, Result};
use crate::report::ValidationReport;

use super::table::CochainTable;

/// How the tables of a [`SymCocycle3`] are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleForm {
    /// Dense tables over a finite group.
    Tables { h: CochainTable, c: CochainTable },
    /// The sphere cocycle on `G = Z`, `M = Z/2`: `h = 0`, `c(m, n) = mn mod 2`.
    Sphere,
    /// `h = 0`, `c = 0` on any group, finite or not.
    Zero,
}

/// A symmetric 3-cocycle `(h, c)` on `G` with values in `M`.
///
/// Construction only checks shapes; use [`SymCocycle3::validate`] for the
/// axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymCocycle3 {
    g: FgAbGroup,
    m: FgAbGroup,
    form: CocycleForm,
}

impl SymCocycle3 {
    pub fn from_tables(g: FgAbGroup, m: FgAbGroup, h: CochainTable, c: CochainTable) -> Result<Self> {
        let order = g.require_finite()? as usize;
        for (t, arity) in [(&h, 3), (&c, 2)] {
            if t.arity() != arity || t.group_order() != order {
                return Err(Error::LengthMismatch {
                    expected: order.pow(arity as u32),
                    actual: t.values().len(),
                });
            }
            if let Some(bad) = t.values().iter().find(|v| !m.contains(v)) {
                return Err(Error::Mismatch(format!("{bad} is not a reduced element of {m}")));
            }
        }
        Ok(SymCocycle3 {
            g,
            m,
            form: CocycleForm::Tables { h, c },
        })
    }

    /// Tabulates closed-form `h` and `c` over a finite `g`.
    pub fn from_fns(
        g: FgAbGroup,
        m: FgAbGroup,
        mut h: impl FnMut(&GroupElement, &GroupElement, &GroupElement) -> GroupElement,
        mut c: impl FnMut(&GroupElement, &GroupElement) -> GroupElement,
    ) -> Result<Self> {
        let ht = CochainTable::from_fn(&g, 3, |a| h(a[0], a[1], a[2]))?;
        let ct = CochainTable::from_fn(&g, 2, |a| c(a[0], a[1]))?;
        Self::from_tables(g, m, ht, ct)
    }

    /// The zero cocycle.
    pub fn zero(g: FgAbGroup, m: FgAbGroup) -> Result<Self> {
        let h = CochainTable::zero(&g, &m, 3)?;
        let c = CochainTable::zero(&g, &m, 2)?;
        Self::from_tables(g, m, h, c)
    }

    /// The zero cocycle as a closed form, available for infinite `g`.
    pub fn zero_closed(g: FgAbGroup, m: FgAbGroup) -> Self {
        SymCocycle3 {
            g,
            m,
            form: CocycleForm::Zero,
        }
    }

    pub fn sphere() -> Self {
        SymCocycle3 {
            g: FgAbGroup::integers(),
            m: FgAbGroup::cyclic(2),
            form: CocycleForm::Sphere,
        }
    }

    pub fn g(&self) -> &FgAbGroup {
        &self.g
    }

    pub fn m(&self) -> &FgAbGroup {
        &self.m
    }

    pub fn form(&self) -> &CocycleForm {
        &self.form
    }

    /// The dense tables, if this is not a closed form.
    pub fn tables(&self) -> Option<(&CochainTable, &CochainTable)> {
        match &self.form {
            CocycleForm::Tables { h, c } => Some((h, c)),
            CocycleForm::Sphere | CocycleForm::Zero => None,
        }
    }

    pub(crate) fn require_tables(&self) -> Result<(&CochainTable, &CochainTable)> {
        self.tables()
            .ok_or_else(|| Error::InfiniteGroup(self.g.to_string()))
    }

    pub fn h(&self, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> GroupElement {
        match &self.form {
            CocycleForm::Tables { h, .. } => h.at(&self.g, &[x, y, z]).clone(),
            CocycleForm::Sphere | CocycleForm::Zero => self.m.zero(),
        }
    }

    pub fn c(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match &self.form {
            CocycleForm::Tables { c, .. } => c.at(&self.g, &[x, y]).clone(),
            CocycleForm::Sphere => {
                let p = (x.coords()[0] * y.coords()[0]).rem_euclid(2);
                GroupElement::from_reduced(vec![p])
            }
            CocycleForm::Zero => self.m.zero(),
        }
    }

    /// True when `h` vanishes identically.
    pub fn is_permutative(&self) -> bool {
        match &self.form {
            CocycleForm::Tables { h, .. } => h.is_zero(),
            CocycleForm::Sphere | CocycleForm::Zero => true,
        }
    }

    /// Checks normalization `h(x,0,z) = 0`, the 3-cocycle identity, the
    /// hexagon compatibility and antisymmetry of `c`, over every tuple.
    ///
    /// Closed forms depend only on parities of infinite coordinates, so they
    /// are checked on the elements with those coordinates in `{0, 1}`.
    pub fn validate(&self) -> Result<ValidationReport> {
        let elements = match &self.form {
            CocycleForm::Tables { .. } => self.g.elements()?,
            CocycleForm::Sphere | CocycleForm::Zero => periodic_sample(&self.g, 2),
        };
        Ok(self.check_axioms(&elements))
    }

    fn check_axioms(&self, elements: &[GroupElement]) -> ValidationReport {
        let (g, m) = (&self.g, &self.m);
        let zero = g.zero();
        let mut report = ValidationReport::default();
        for x in elements {
            for z in elements {
                report.record("normalization", &[x, &zero, z], self.h(x, &zero, z), m.zero());
            }
        }
        for u in elements {
            for x in elements {
                let ux = g.add(u, x);
                for y in elements {
                    let xy = g.add(x, y);
                    let h_uxy = self.h(u, x, y);
                    for z in elements {
                        let yz = g.add(y, z);
                        let lhs = m.sum([&self.h(x, y, z), &self.h(u, &xy, z), &h_uxy]);
                        let rhs = m.add(&self.h(u, x, &yz), &self.h(&ux, y, z));
                        report.record("cocycle", &[u, x, y, z], lhs, rhs);
                    }
                }
            }
        }
        for x in elements {
            for y in elements {
                for z in elements {
                    let yz = g.add(y, z);
                    let lhs = m.sum([&self.h(y, z, x), &self.c(x, &yz), &self.h(x, y, z)]);
                    let rhs = m.sum([&self.c(x, z), &self.h(y, x, z), &self.c(x, y)]);
                    report.record("hexagon", &[x, y, z], lhs, rhs);
                }
            }
        }
        for x in elements {
            for y in elements {
                report.record("antisymmetry", &[x, y], self.c(x, y), m.neg(&self.c(y, x)));
            }
        }
        report
    }

    /// `(h − δh, c − δc)` for tables of matching shape.
    pub fn minus(&self, dh: &CochainTable, dc: &CochainTable) -> Result<SymCocycle3> {
        let (h, c) = self.require_tables()?;
        let m = &self.m;
        SymCocycle3::from_tables(
            self.g.clone(),
            self.m.clone(),
            h.zip_with(dh, |a, b| m.sub(a, b)),
            c.zip_with(dc, |a, b| m.sub(a, b)),
        )
    }
}

/// Elements of `g` whose finite coordinates range over all residues and
/// whose infinite coordinates range over `0..period`.
pub fn periodic_sample(g: &FgAbGroup, period: u64) -> Vec<GroupElement> {
    let sizes: Vec<u64> = g
        .factors()
        .iter()
        .map(|&d| if d == 0 { period } else { d })
        .collect();
    let total: u64 = sizes.iter().product();
    (0..total)
        .map(|mut idx| {
            let mut coords = vec![0i64; sizes.len()];
            for (slot, &s) in coords.iter_mut().zip(&sizes).rev() {
                *slot = (idx % s) as i64;
                idx /= s;
            }
            GroupElement::from_reduced(coords)
        })
        .collect()
}

/// Free-function form of [`SymCocycle3::validate`].
pub fn validate_symmetric_cocycle(s: &SymCocycle3) -> Result<ValidationReport> {
    s.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    fn xy(g: &FgAbGroup, m: &FgAbGroup) -> SymCocycle3 {
        let m2 = m.clone();
        SymCocycle3::from_fns(
            g.clone(),
            m.clone(),
            |_, _, _| m2.zero(),
            |a, b| m2.reduce(&[a.coords()[0] * b.coords()[0]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn xy_on_z2_is_valid() {
        let r = xy(&z(2), &z(2)).validate().unwrap();
        assert!(r.is_valid());
        // 4 normalization + 16 cocycle + 8 hexagon + 4 antisymmetry instances.
        assert_eq!(r.checked, 4 + 16 + 8 + 4);
    }

    #[test]
    fn zero_cocycle_is_valid() {
        assert!(SymCocycle3::zero(z(2), z(2)).unwrap().validate().unwrap().is_valid());
        assert!(SymCocycle3::zero(FgAbGroup::trivial(), z(3))
            .unwrap()
            .validate()
            .unwrap()
            .is_valid());
    }

    #[test]
    fn antisymmetry_failure_is_reported() {
        let r = xy(&z(2), &z(4)).validate().unwrap();
        assert!(!r.is_valid());
        let anti: Vec<_> = r.violations_of("antisymmetry").collect();
        assert_eq!(anti.len(), 1);
        assert_eq!(anti[0].args, vec![GroupElement::from_reduced(vec![1]); 2]);
    }

    #[test]
    fn sphere_form() {
        let s = SymCocycle3::sphere();
        assert!(s.validate().unwrap().is_valid());
        let e = |n| GroupElement::from_reduced(vec![n]);
        assert_eq!(s.c(&e(1), &e(1)), e(1));
        assert_eq!(s.c(&e(2), &e(3)), e(0));
        assert_eq!(s.c(&e(-3), &e(5)), e(1));
        assert!(s.is_permutative());
    }

    #[test]
    fn infinite_tables_are_rejected() {
        let err = SymCocycle3::zero(FgAbGroup::integers(), z(2)).unwrap_err();
        assert!(matches!(err, Error::InfiniteGroup(_)));
    }
}
