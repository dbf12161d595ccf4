use std::fmt;

use crate::error::{Error, Result};

/// A bijection of `{1, …, n}` in one-line notation: `image[i - 1] = p(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n];
        for &v in &one_line {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::NotAPermutation(format!("{one_line:?}")));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { image: one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// The transposition of `i` and `j` in `Σₙ`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::NotAPermutation(format!("({i} {j}) in S{n}")));
        }
        image.swap(i - 1, j - 1);
        Ok(Permutation { image })
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, i: usize) -> usize {
        self.image[i - 1]
    }

    /// `self ∘ other`, applying `other` first.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(Error::CompositionMismatch(format!(
                "S{} and S{}",
                self.len(),
                other.len()
            )));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&i| self.image[i - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.len()];
        for (i, &v) in self.image.iter().enumerate() {
            image[v - 1] = i + 1;
        }
        Permutation { image }
    }

    /// Cycle lengths, including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.image[i] - 1;
                len += 1;
            }
            out.push(len);
        }
        out
    }

    /// 0 for even permutations, 1 for odd ones. A cycle of length `l` is a
    /// product of `l − 1` transpositions.
    pub fn parity(&self) -> u8 {
        (self.cycle_type().iter().map(|l| l - 1).sum::<usize>() % 2) as u8
    }

    /// `+1` or `−1`.
    pub fn sign(&self) -> i8 {
        1 - 2 * self.parity() as i8
    }

    /// `self ⊕ other` acting on `{1..m} ⊔ {m+1..m+n}`.
    pub fn block_sum(&self, other: &Permutation) -> Permutation {
        let m = self.len();
        let mut image = self.image.clone();
        image.extend(other.image.iter().map(|v| v + m));
        Permutation { image }
    }

    /// The symmetry of `{1..m} ⊔ {1..n}`: moves the first block past the
    /// second, so `i ↦ i + n` for `i ≤ m` and `m + j ↦ j`.
    pub fn block_swap(m: usize, n: usize) -> Permutation {
        let image = (1..=m).map(|i| i + n).chain(1..=n).collect();
        Permutation { image }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// All permutations of `{1..n}` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        out.push(Permutation {
            image: current.clone(),
        });
        // Next lexicographic permutation.
        let Some(i) = (1..n).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}
