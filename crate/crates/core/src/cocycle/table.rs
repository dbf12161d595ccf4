use crate::abelian::{FgAbGroup, GroupElement};
use crate::error::{Error, Result};

/// A dense function `Gᵏ → M` on a finite group, keyed by the lexicographic
/// order of argument tuples (each argument in the element order of
/// [`FgAbGroup::elements`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CochainTable {
    order: usize,
    arity: usize,
    values: Vec<GroupElement>,
}

impl CochainTable {
    /// Tabulates `f` over all argument tuples of `g`.
    pub fn from_fn(
        g: &FgAbGroup,
        arity: usize,
        mut f: impl FnMut(&[&GroupElement]) -> GroupElement,
    ) -> Result<Self> {
        let elements = g.elements()?;
        let order = elements.len();
        let len = order.pow(arity as u32);
        let mut values = Vec::with_capacity(len);
        let mut args: Vec<&GroupElement> = Vec::with_capacity(arity);
        for key in 0..len {
            args.clear();
            let mut k = key;
            let mut idx = vec![0; arity];
            for slot in idx.iter_mut().rev() {
                *slot = k % order;
                k /= order;
            }
            args.extend(idx.iter().map(|&i| &elements[i]));
            values.push(f(&args));
        }
        Ok(CochainTable {
            order,
            arity,
            values,
        })
    }

    /// The zero function.
    pub fn zero(g: &FgAbGroup, m: &FgAbGroup, arity: usize) -> Result<Self> {
        let zero = m.zero();
        Self::from_fn(g, arity, |_| zero.clone())
    }

    /// Wraps a flat value list; every value must be a reduced element of `m`.
    pub fn from_values(
        g: &FgAbGroup,
        m: &FgAbGroup,
        arity: usize,
        values: Vec<GroupElement>,
    ) -> Result<Self> {
        let order = g.require_finite()? as usize;
        let len = order.pow(arity as u32);
        if values.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                actual: values.len(),
            });
        }
        if let Some(bad) = values.iter().find(|v| !m.contains(v)) {
            return Err(Error::Mismatch(format!("{bad} is not a reduced element of {m}")));
        }
        Ok(CochainTable {
            order,
            arity,
            values,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Order of the group the table is keyed by.
    pub fn group_order(&self) -> usize {
        self.order
    }

    pub fn values(&self) -> &[GroupElement] {
        &self.values
    }

    pub fn key(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.arity);
        idx.iter().fold(0, |acc, &i| acc * self.order + i)
    }

    /// Value at a tuple of element indices.
    pub fn get(&self, idx: &[usize]) -> &GroupElement {
        &self.values[self.key(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: GroupElement) {
        let k = self.key(idx);
        self.values[k] = value;
    }

    /// Value at a tuple of elements of `g`.
    pub fn at(&self, g: &FgAbGroup, args: &[&GroupElement]) -> &GroupElement {
        let key = args
            .iter()
            .fold(0, |acc, a| acc * self.order + g.index_of(a));
        &self.values[key]
    }

    /// Pointwise combination of two tables of the same shape.
    pub fn zip_with(
        &self,
        other: &CochainTable,
        mut f: impl FnMut(&GroupElement, &GroupElement) -> GroupElement,
    ) -> CochainTable {
        assert_eq!(self.order, other.order);
        assert_eq!(self.arity, other.arity);
        CochainTable {
            order: self.order,
            arity: self.arity,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn map(&self, f: impl FnMut(&GroupElement) -> GroupElement) -> CochainTable {
        CochainTable {
            order: self.order,
            arity: self.arity,
            values: self.values.iter().map(f).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(GroupElement::is_zero)
    }
}
