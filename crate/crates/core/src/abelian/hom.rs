use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::group::{FgAbGroup, GroupElement};
use super::snf::{smith_normal_form, solve_integer, to_i64, to_u64, IntMatrix};
use crate::error::{Error, Result};

/// A homomorphism between cyclic decompositions, stored as an integer matrix
/// with one row per target summand and one column per source summand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    /// Row-major, `target.rank() × source.rank()`, rows reduced modulo the
    /// corresponding target factor.
    matrix: Vec<i64>,
}

impl GroupHom {
    /// Builds a homomorphism from row-major entries and checks that it is
    /// well defined: `dᵢ · column i` must vanish in the target for every
    /// finite source factor `dᵢ`.
    pub fn new(source: FgAbGroup, target: FgAbGroup, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != target.rank() || rows.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::IllDefinedHom(format!(
                "matrix shape does not match {} -> {}",
                source, target
            )));
        }
        let mut matrix = Vec::with_capacity(target.rank() * source.rank());
        for (row, &e) in rows.iter().zip(target.factors()) {
            for &x in row {
                matrix.push(if e == 0 { x } else { x.rem_euclid(e as i64) });
            }
        }
        let hom = GroupHom {
            source,
            target,
            matrix,
        };
        hom.check_well_defined()?;
        Ok(hom)
    }

    /// The homomorphism sending generator `i` of the source to `images[i]`.
    pub fn from_images(
        source: FgAbGroup,
        target: FgAbGroup,
        images: &[GroupElement],
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::LengthMismatch {
                expected: source.rank(),
                actual: images.len(),
            });
        }
        let rows = (0..target.rank())
            .map(|j| images.iter().map(|img| img.coords()[j]).collect())
            .collect();
        Self::new(source, target, rows)
    }

    pub fn identity(group: &FgAbGroup) -> Self {
        let r = group.rank();
        let rows = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        Self::new(group.clone(), group.clone(), rows).expect("identity is well defined")
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            matrix: vec![0; source.rank() * target.rank()],
        }
    }

    /// Multiplication by `k` on a group.
    pub fn scalar(group: &FgAbGroup, k: i64) -> Self {
        let r = group.rank();
        let rows = (0..r)
            .map(|i| (0..r).map(|j| if i == j { k } else { 0 }).collect())
            .collect();
        Self::new(group.clone(), group.clone(), rows).expect("scalar maps are well defined")
    }

    fn check_well_defined(&self) -> Result<()> {
        for (i, &d) in self.source.factors().iter().enumerate() {
            if d == 0 {
                continue;
            }
            for (j, &e) in self.target.factors().iter().enumerate() {
                let x = self.entry(j, i) as i128 * d as i128;
                let ok = if e == 0 { x == 0 } else { x % e as i128 == 0 };
                if !ok {
                    return Err(Error::IllDefinedHom(format!(
                        "{d} * column {i} does not vanish in {}",
                        self.target
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.matrix[row * self.source.rank() + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.target.rank())
            .map(|j| (0..self.source.rank()).map(|i| self.entry(j, i)).collect())
            .collect()
    }

    pub fn apply(&self, a: &GroupElement) -> GroupElement {
        debug_assert!(self.source.contains(a), "{a} is not in {}", self.source);
        let cols = self.source.rank();
        let mut out = vec![0i64; self.target.rank()];
        for (j, slot) in out.iter_mut().enumerate() {
            let e = self.target.factors()[j];
            let mut acc: i128 = 0;
            for (i, &x) in a.coords().iter().enumerate() {
                acc += self.matrix[j * cols + i] as i128 * x as i128;
                if e != 0 {
                    acc %= e as i128;
                }
            }
            *slot = if e == 0 {
                i64::try_from(acc).expect("coordinate overflow")
            } else {
                acc.rem_euclid(e as i128) as i64
            };
        }
        GroupElement::from_reduced(out)
    }

    /// `self ∘ first`, i.e. apply `first` and then `self`.
    pub fn after(&self, first: &GroupHom) -> Result<GroupHom> {
        if first.target != self.source {
            return Err(Error::CompositionMismatch(format!(
                "{} is not {}",
                first.target, self.source
            )));
        }
        let images: Vec<GroupElement> = (0..first.source.rank())
            .map(|i| self.apply(&first.apply(&first.source.generator(i))))
            .collect();
        GroupHom::from_images(first.source.clone(), self.target.clone(), &images)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().all(|&x| x == 0)
    }

    /// Integer matrix of the map on the free covers `Z^n → Z^m`.
    fn int_matrix(&self) -> IntMatrix {
        IntMatrix::from_i64(self.target.rank(), self.source.rank(), &self.matrix)
    }

    /// Kernel, image and cokernel in invariant-factor form, each with its
    /// structure map.
    pub fn subquotients(&self) -> Subquotients {
        let n = self.source.rank();
        let phi = self.int_matrix();
        let target_rel = relation_matrix(&self.target);

        // Lattice L = {x ∈ Z^n : φx ∈ bZ^m}; the kernel is L / aZ^n and the
        // image is Z^n / L.
        let lattice = lattice_preimage(&phi, &target_rel, n);

        let (image, image_gens) = quotient_presentation(&IntMatrix::identity(n), &lattice);
        let image_inclusion = GroupHom::from_images(
            image.clone(),
            self.target.clone(),
            &image_gens
                .iter()
                .map(|v| self.apply(&self.source.reduce(v).expect("length")))
                .collect::<Vec<_>>(),
        )
        .expect("image inclusion is well defined");

        let source_rel = relation_matrix(&self.source);
        let (kernel, kernel_gens) = quotient_presentation(&lattice, &source_rel);
        let kernel_inclusion = GroupHom::from_images(
            kernel.clone(),
            self.source.clone(),
            &kernel_gens
                .iter()
                .map(|v| self.source.reduce(v).expect("length"))
                .collect::<Vec<_>>(),
        )
        .expect("kernel inclusion is well defined");

        let (cokernel, projection_rows) = cokernel_presentation(&phi.hconcat(&target_rel));
        let cokernel_projection =
            GroupHom::new(self.target.clone(), cokernel.clone(), projection_rows)
                .expect("cokernel projection is well defined");

        Subquotients {
            kernel,
            kernel_inclusion,
            image,
            image_inclusion,
            cokernel,
            cokernel_projection,
        }
    }

    /// Some `x` with `self(x) = b`, if `b` lies in the image.
    pub fn preimage(&self, b: &GroupElement) -> Option<GroupElement> {
        let n = self.source.rank();
        let system = self.int_matrix().hconcat(&relation_matrix(&self.target));
        let rhs: Vec<BigInt> = b.coords().iter().map(|&x| BigInt::from(x)).collect();
        let sol = solve_integer(&system, &rhs)?;
        let coords: Vec<i64> = sol[..n].iter().map(to_i64).collect();
        Some(self.source.reduce(&coords).expect("length"))
    }
}

impl fmt::Display for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} {:?}", self.source, self.target, self.rows())
    }
}

/// Kernel, image and cokernel of a homomorphism with witnesses.
#[derive(Clone, Debug)]
pub struct Subquotients {
    pub kernel: FgAbGroup,
    pub kernel_inclusion: GroupHom,
    pub image: FgAbGroup,
    pub image_inclusion: GroupHom,
    pub cokernel: FgAbGroup,
    pub cokernel_projection: GroupHom,
}

/// `diag(d₁, …, d_r)`, the relations of a cyclic decomposition.
fn relation_matrix(g: &FgAbGroup) -> IntMatrix {
    let r = g.rank();
    let mut m = IntMatrix::zeros(r, r);
    for (i, &d) in g.factors().iter().enumerate() {
        m[(i, i)] = BigInt::from(d);
    }
    m
}

/// Generators (as columns) of `{x ∈ Z^n : A x ∈ col(B)}`.
fn lattice_preimage(a: &IntMatrix, b: &IntMatrix, n: usize) -> IntMatrix {
    let system = a.hconcat(b);
    let snf = smith_normal_form(&system);
    let cols: Vec<usize> = (snf.rank..system.cols()).collect();
    let rows: Vec<usize> = (0..n).collect();
    snf.v.select(&rows, &cols)
}

/// Presents `col(outer) / col(inner)` where `col(inner) ⊆ col(outer) ⊆ Z^n`.
/// Returns the group in invariant-factor form and, for each of its
/// generators, a representative vector in `Z^n`.
fn quotient_presentation(outer: &IntMatrix, inner: &IntMatrix) -> (FgAbGroup, Vec<Vec<i64>>) {
    let k = outer.cols();
    // Relations among the generators of `outer`: s with outer·s ∈ col(inner),
    // together with the dependencies of `outer` itself.
    let rel = lattice_preimage(outer, inner, k);
    let snf = smith_normal_form(&rel);
    let mut factors = Vec::new();
    let mut gens = Vec::new();
    for i in 0..k {
        let d = if i < snf.rank {
            snf.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_one() {
            continue;
        }
        factors.push(to_u64(&d));
        let basis = snf.u_inv.column(i);
        let v = outer.mul_vec(&basis);
        gens.push(v.iter().map(|x| reduce_repr(x, None)).collect());
    }
    (
        FgAbGroup::new(factors).expect("unit factors were dropped"),
        gens,
    )
}

/// Presents `Z^m / col(rel)` and the projection rows from `Z^m`.
fn cokernel_presentation(rel: &IntMatrix) -> (FgAbGroup, Vec<Vec<i64>>) {
    let m = rel.rows();
    let snf = smith_normal_form(rel);
    let mut factors = Vec::new();
    let mut rows = Vec::new();
    for i in 0..m {
        let d = if i < snf.rank {
            snf.d[(i, i)].clone()
        } else {
            BigInt::zero()
        };
        if d.is_one() {
            continue;
        }
        let modulus = if d.is_zero() { None } else { Some(&d) };
        rows.push(
            snf.u
                .row(i)
                .iter()
                .map(|x| reduce_repr(x, modulus))
                .collect(),
        );
        factors.push(to_u64(&d));
    }
    (
        FgAbGroup::new(factors).expect("unit factors were dropped"),
        rows,
    )
}

/// `Z^g` modulo the span of a list of relation rows, in invariant-factor
/// form, with the coordinate change in both directions.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub group: FgAbGroup,
    /// One row per invariant factor: `x ↦ (row · x) mod dᵢ`.
    pub projection: Vec<Vec<i64>>,
    /// A vector of `Z^g` representing each invariant generator.
    pub lifts: Vec<Vec<i64>>,
}

impl QuotientPresentation {
    pub fn project(&self, x: &[i64]) -> GroupElement {
        let coords: Vec<i64> = self
            .projection
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect();
        self.group.reduce(&coords).expect("length")
    }

    pub fn lift(&self, e: &GroupElement) -> Vec<i64> {
        let g = self.lifts.first().map_or(0, Vec::len);
        let mut out = vec![0i64; g];
        for (c, v) in e.coords().iter().zip(&self.lifts) {
            for (o, x) in out.iter_mut().zip(v) {
                *o += c * x;
            }
        }
        out
    }
}

/// Presents `Z^generators / ⟨relations⟩`.
pub fn present_quotient(generators: usize, relations: &[Vec<i64>]) -> QuotientPresentation {
    let mut a = IntMatrix::zeros(generators, relations.len());
    for (j, r) in relations.iter().enumerate() {
        assert_eq!(r.len(), generators, "relation length");
        for (i, &x) in r.iter().enumerate() {
            a[(i, j)] = BigInt::from(x);
        }
    }
    let snf = smith_normal_form(&a);
    let (group, projection) = cokernel_presentation(&a);
    let lifts = (0..generators)
        .filter(|&i| i >= snf.rank || !snf.d[(i, i)].is_one())
        .map(|i| snf.u_inv.column(i).iter().map(to_i64).collect())
        .collect();
    QuotientPresentation {
        group,
        projection,
        lifts,
    }
}

fn reduce_repr(x: &BigInt, modulus: Option<&BigInt>) -> i64 {
    match modulus {
        Some(d) => to_i64(&x.mod_floor(d)),
        None => to_i64(x),
    }
}

/// True iff `image(f) = kernel(g)` for `f: A → B`, `g: B → C`.
pub fn is_exact_at(f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if f.target() != g.source() {
        return Err(Error::CompositionMismatch(format!(
            "{} is not {}",
            f.target(),
            g.source()
        )));
    }
    if !g.after(f)?.is_zero() {
        return Ok(false);
    }
    let sq = g.subquotients();
    let kernel_gens = (0..sq.kernel.rank()).map(|i| sq.kernel_inclusion.apply(&sq.kernel.generator(i)));
    for k in kernel_gens {
        if f.preimage(&k).is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of homomorphisms between two finite cyclic decompositions,
/// `∏ gcd(aᵢ, bⱼ)`.
pub fn hom_count(source: &FgAbGroup, target: &FgAbGroup) -> Result<u64> {
    source.require_finite()?;
    target.require_finite()?;
    Ok(source
        .factors()
        .iter()
        .flat_map(|&a| target.factors().iter().map(move |&b| a.gcd(&b)))
        .product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn g(f: &[u64]) -> FgAbGroup {
        FgAbGroup::new(f.to_vec()).unwrap()
    }

    fn hom(s: &[u64], t: &[u64], rows: Vec<Vec<i64>>) -> GroupHom {
        GroupHom::new(g(s), g(t), rows).unwrap()
    }

    #[test]
    fn apply_examples() {
        let f = hom(&[2], &[4], vec![vec![2]]);
        assert_eq!(f.apply(&g(&[2]).reduce(&[1]).unwrap()).coords(), &[2]);
        let id = GroupHom::identity(&g(&[2, 4]));
        let x = g(&[2, 4]).reduce(&[1, 3]).unwrap();
        assert_eq!(id.apply(&x), x);
        let z = hom(&[2], &[2], vec![vec![0]]);
        assert_eq!(z.apply(&g(&[2]).reduce(&[1]).unwrap()).coords(), &[0]);
    }

    #[test]
    fn ill_defined_rejected() {
        assert!(matches!(
            GroupHom::new(g(&[2]), g(&[4]), vec![vec![1]]),
            Err(Error::IllDefinedHom(_))
        ));
        assert!(matches!(
            GroupHom::new(g(&[2]), g(&[0]), vec![vec![1]]),
            Err(Error::IllDefinedHom(_))
        ));
        assert!(GroupHom::new(g(&[0]), g(&[4]), vec![vec![1]]).is_ok());
    }

    #[test]
    fn subquotient_examples() {
        let f = hom(&[2], &[4], vec![vec![2]]);
        let sq = f.subquotients();
        assert!(sq.kernel.is_trivial());
        assert_eq!(sq.image, g(&[2]));
        assert_eq!(sq.cokernel, g(&[2]));

        let z = hom(&[2], &[2], vec![vec![0]]);
        let sq = z.subquotients();
        assert_eq!(sq.kernel, g(&[2]));
        assert!(sq.image.is_trivial());
        assert_eq!(sq.cokernel, g(&[2]));

        let id = GroupHom::identity(&g(&[6]));
        let sq = id.subquotients();
        assert!(sq.kernel.is_trivial());
        assert!(sq.cokernel.is_trivial());
    }

    #[test]
    fn subquotients_on_infinite_groups() {
        // Z --2--> Z: kernel 0, image Z, cokernel Z/2
        let f = hom(&[0], &[0], vec![vec![2]]);
        let sq = f.subquotients();
        assert!(sq.kernel.is_trivial());
        assert_eq!(sq.image, g(&[0]));
        assert_eq!(sq.cokernel, g(&[2]));
        // Z -> Z/4, 1 ↦ 1: kernel Z (generated by 4)
        let f = hom(&[0], &[4], vec![vec![1]]);
        let sq = f.subquotients();
        assert_eq!(sq.kernel, g(&[0]));
        let gen = sq.kernel_inclusion.apply(&sq.kernel.generator(0));
        assert_eq!(gen.coords()[0].abs(), 4);
        assert!(sq.cokernel.is_trivial());
    }

    fn set_of(els: impl IntoIterator<Item = GroupElement>) -> BTreeSet<GroupElement> {
        els.into_iter().collect()
    }

    #[test]
    fn witnesses_match_enumeration() {
        let f = hom(&[2, 4], &[4, 4], vec![vec![2, 1], vec![0, 2]]);
        let sq = f.subquotients();
        let src = f.source().elements().unwrap();
        let kernel_enum = set_of(src.iter().filter(|x| f.apply(x).is_zero()).cloned());
        let kernel_wit = set_of(
            sq.kernel
                .elements()
                .unwrap()
                .iter()
                .map(|x| sq.kernel_inclusion.apply(x)),
        );
        assert_eq!(kernel_enum, kernel_wit);
        let image_enum = set_of(src.iter().map(|x| f.apply(x)));
        let image_wit = set_of(
            sq.image
                .elements()
                .unwrap()
                .iter()
                .map(|x| sq.image_inclusion.apply(x)),
        );
        assert_eq!(image_enum, image_wit);
        assert!(sq.cokernel_projection.after(&f).unwrap().is_zero());
        assert_eq!(
            sq.image.order().unwrap() * sq.cokernel.order().unwrap(),
            f.target().order().unwrap()
        );
    }

    #[test]
    fn exactness_examples() {
        let zero = g(&[]);
        let z2 = g(&[2]);
        let into = GroupHom::zero(&zero, &z2);
        let id = GroupHom::identity(&z2);
        assert!(is_exact_at(&into, &id).unwrap());
        assert!(!is_exact_at(&id, &id).unwrap());
        let two = hom(&[4], &[4], vec![vec![2]]);
        assert!(is_exact_at(&two, &two).unwrap());
        assert!(matches!(
            is_exact_at(&two, &id),
            Err(Error::CompositionMismatch(_))
        ));
    }

    #[test]
    fn composition_and_preimage() {
        let f = hom(&[2], &[4], vec![vec![2]]);
        let h = hom(&[4], &[2], vec![vec![1]]);
        assert!(h.after(&f).unwrap().is_zero());
        let b = g(&[4]).reduce(&[2]).unwrap();
        let x = f.preimage(&b).unwrap();
        assert_eq!(f.apply(&x), b);
        assert!(f.preimage(&g(&[4]).reduce(&[1]).unwrap()).is_none());
    }

    #[test]
    fn hom_counts() {
        assert_eq!(hom_count(&g(&[2]), &g(&[4])).unwrap(), 2);
        assert_eq!(hom_count(&g(&[2, 2]), &g(&[2, 2])).unwrap(), 16);
        assert_eq!(hom_count(&g(&[]), &g(&[3])).unwrap(), 1);
    }

    #[test]
    fn quotient_presentations() {
        let q = present_quotient(2, &[vec![2, 0], vec![0, 3]]);
        assert_eq!(q.group, g(&[6]));
        let q = present_quotient(2, &[vec![2, -1]]);
        assert_eq!(q.group, g(&[0]));
        assert!(q.project(&[2, -1]).is_zero());
        let q = present_quotient(3, &[vec![4, 0, 0], vec![2, 2, 0]]);
        assert_eq!(q.group.factors(), &[2, 4, 0]);
        for r in [[4, 0, 0], [2, 2, 0]] {
            assert!(q.project(&r).is_zero());
        }
        for e in [q.group.reduce(&[1, 3, -2]).unwrap(), q.group.generator(1)] {
            assert_eq!(q.project(&q.lift(&e)), e);
        }
        let free = present_quotient(2, &[]);
        assert_eq!(free.group, g(&[0, 0]));
    }
}
