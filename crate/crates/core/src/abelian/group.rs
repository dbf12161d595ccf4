use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A finitely generated abelian group presented as a direct sum of cyclic
/// groups `Z/d₁ ⊕ … ⊕ Z/d_r`.
///
/// A factor `0` stands for an infinite cyclic summand. Groups produced by
/// kernel, image and cokernel computations come out in invariant-factor
/// order (`d₁ | d₂ | …`, infinite factors last); groups built directly from a
/// factor list keep the summands they were given.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    factors: Vec<u64>,
}

/// Coordinates of an element with respect to the cyclic summands of its group.
///
/// Coordinates on finite summands are kept in `0..d`; coordinates on infinite
/// summands are arbitrary integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Wraps raw coordinates without reducing them. Callers must pass
    /// coordinates that are already reduced for the intended group.
    pub(crate) fn from_reduced(coords: Vec<i64>) -> Self {
        GroupElement(coords)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn reduce_coord(c: i64, d: u64) -> i64 {
    if d == 0 {
        c
    } else {
        c.rem_euclid(d as i64)
    }
}

impl FgAbGroup {
    /// Builds `⊕ Z/dᵢ` from the given factors; `0` is an infinite cyclic
    /// factor and `1` is rejected.
    pub fn new(factors: Vec<u64>) -> Result<Self> {
        if factors.contains(&1) {
            return Err(Error::FactorOne);
        }
        Ok(FgAbGroup { factors })
    }

    pub fn trivial() -> Self {
        FgAbGroup { factors: vec![] }
    }

    /// `Z/n`, or `Z` when `n == 0`, or the trivial group when `n == 1`.
    pub fn cyclic(n: u64) -> Self {
        if n == 1 {
            Self::trivial()
        } else {
            FgAbGroup { factors: vec![n] }
        }
    }

    pub fn integers() -> Self {
        FgAbGroup { factors: vec![0] }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|&d| d >= 2)
    }

    /// Order of the group, `None` when it is infinite.
    pub fn order(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().product())
    }

    pub(crate) fn require_finite(&self) -> Result<u64> {
        self.order().ok_or_else(|| Error::InfiniteGroup(self.to_string()))
    }

    /// Least common multiple of the factors, `None` for infinite groups.
    pub fn exponent(&self) -> Option<u64> {
        if !self.is_finite() {
            return None;
        }
        Some(self.factors.iter().fold(1, |acc, &d| acc.lcm(&d)))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// The element with a `1` in summand `i`.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = vec![0; self.rank()];
        coords[i] = reduce_coord(1, self.factors[i]);
        GroupElement(coords)
    }

    /// Reduces an integer tuple into the canonical coordinates of this group.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        Ok(GroupElement(
            coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &d)| reduce_coord(c, d))
                .collect(),
        ))
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                actual: len,
            });
        }
        Ok(())
    }

    /// True when `a` has the right length and is in reduced form.
    pub fn contains(&self, a: &GroupElement) -> bool {
        a.len() == self.rank()
            && a
                .coords()
                .iter()
                .zip(&self.factors)
                .all(|(&c, &d)| d == 0 || (0..d as i64).contains(&c))
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        debug_assert_eq!(a.len(), self.rank());
        debug_assert_eq!(b.len(), self.rank());
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.factors)
                .map(|((&x, &y), &d)| reduce_coord(x + y, d))
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| reduce_coord(-x, d))
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.factors)
                .map(|(&x, &d)| {
                    if d == 0 {
                        k * x
                    } else {
                        ((k as i128 * x as i128).rem_euclid(d as i128)) as i64
                    }
                })
                .collect(),
        )
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Order of an element; `None` if it has infinite order.
    pub fn element_order(&self, a: &GroupElement) -> Option<u64> {
        let mut order = 1u64;
        for (&c, &d) in a.0.iter().zip(&self.factors) {
            if d == 0 {
                if c != 0 {
                    return None;
                }
            } else {
                let o = d / (c as u64).gcd(&d);
                order = order.lcm(&o);
            }
        }
        Some(order)
    }

    /// Lexicographic index of an element of a finite group (last coordinate
    /// varies fastest).
    pub fn index_of(&self, a: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&c, &d) in a.0.iter().zip(&self.factors) {
            idx = idx * d as usize + c as usize;
        }
        idx
    }

    /// Inverse of [`FgAbGroup::index_of`].
    pub fn element_at(&self, mut idx: usize) -> GroupElement {
        let mut coords = vec![0i64; self.rank()];
        for (slot, &d) in coords.iter_mut().zip(&self.factors).rev() {
            *slot = (idx % d as usize) as i64;
            idx /= d as usize;
        }
        GroupElement(coords)
    }

    /// Every element, each exactly once, in lexicographic coordinate order.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let n = self.require_finite()? as usize;
        Ok((0..n).map(|i| self.element_at(i)).collect())
    }

    /// Precomputed addition and negation tables keyed by element index.
    pub fn index(&self) -> Result<GroupIndex> {
        GroupIndex::new(self)
    }

    /// Direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        FgAbGroup { factors }
    }

    /// Number of elements killed by multiplication by `k`. Two finite abelian
    /// groups are isomorphic exactly when these counts agree for every `k`.
    pub fn count_killed_by(&self, k: u64) -> Result<u64> {
        self.require_finite()?;
        Ok(self.factors.iter().map(|&d| d.gcd(&k)).product())
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *d == 0 {
                write!(f, "Z")?;
            } else {
                write!(f, "Z/{d}")?;
            }
        }
        Ok(())
    }
}

/// Cayley tables of a finite group, indexed by lexicographic element order.
#[derive(Clone, Debug)]
pub struct GroupIndex {
    group: FgAbGroup,
    elements: Vec<GroupElement>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl GroupIndex {
    fn new(group: &FgAbGroup) -> Result<Self> {
        let elements = group.elements()?;
        let n = elements.len();
        let mut add = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                add.push(group.index_of(&group.add(a, b)) as u32);
            }
        }
        let neg = elements
            .iter()
            .map(|a| group.index_of(&group.neg(a)) as u32)
            .collect();
        Ok(GroupIndex {
            group: group.clone(),
            elements,
            add,
            neg,
        })
    }

    pub fn group(&self) -> &FgAbGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.elements.len() + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn index_of(&self, a: &GroupElement) -> usize {
        self.group.index_of(a)
    }
}
