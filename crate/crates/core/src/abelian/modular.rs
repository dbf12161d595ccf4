//! Linear systems over `Z/m`.
//!
//! Diagonalizes the coefficient matrix with unimodular row and column
//! operations whose entries are reduced modulo `m` after every step, so the
//! working values stay below `m`. This is the workhorse for cocycle spaces
//! and monoidal-constraint solving, where the systems have hundreds of rows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::snf::{smith_normal_form, to_i64, IntMatrix};

/// Solution set of `A x ≡ b (mod m)` (over `Z` when `m = 0`): a particular solution plus a basis of
/// the homogeneous solutions, each basis vector paired with its additive
/// order. The homogeneous solution group is the internal direct sum of the
/// cyclic subgroups generated by the basis.
#[derive(Clone, Debug)]
pub struct ModularSolution {
    pub modulus: u64,
    pub particular: Vec<i64>,
    pub basis: Vec<(Vec<i64>, u64)>,
}

impl ModularSolution {
    /// Number of solutions, or `None` when infinitely many.
    pub fn count(&self) -> Option<u128> {
        self.basis
            .iter()
            .try_fold(1u128, |acc, (_, o)| (*o != 0).then(|| acc * *o as u128))
    }
}

/// Solves `rows · x = rhs` over `Z/modulus`, or over `Z` when `modulus` is 0.
/// Basis vectors of infinite order carry order 0.
pub fn solve_linear(
    rows: &[Vec<i64>],
    rhs: &[i64],
    n_vars: usize,
    modulus: u64,
) -> Option<ModularSolution> {
    if modulus != 0 {
        return solve_mod(rows, rhs, n_vars, modulus);
    }
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    let a = IntMatrix::from_i64(rows.len(), n_vars, &flat);
    let snf = smith_normal_form(&a);
    let b: Vec<BigInt> = rhs.iter().map(|&x| BigInt::from(x)).collect();
    let ub = snf.u.mul_vec(&b);
    let mut y = vec![BigInt::zero(); n_vars];
    for (i, r) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, rem) = r.div_rem(&snf.d[(i, i)]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !r.is_zero() {
            return None;
        }
    }
    let particular = snf.v.mul_vec(&y).iter().map(to_i64).collect();
    let basis = (snf.rank..n_vars)
        .map(|j| (snf.v.column(j).iter().map(to_i64).collect(), 0))
        .collect();
    Some(ModularSolution {
        modulus: 0,
        particular,
        basis,
    })
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

/// Solves `rows · x ≡ rhs (mod modulus)` for `x ∈ (Z/modulus)^n_vars`.
/// `modulus` must be at least 2. Returns `None` when there is no solution.
pub fn solve_mod(
    rows: &[Vec<i64>],
    rhs: &[i64],
    n_vars: usize,
    modulus: u64,
) -> Option<ModularSolution> {
    assert!(modulus >= 2, "modulus must be at least 2");
    assert_eq!(rows.len(), rhs.len());
    let m = modulus as i64;
    let red = |x: i128| x.rem_euclid(m as i128) as i64;

    let mut a: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n_vars);
            r.iter().map(|&x| x.rem_euclid(m)).collect()
        })
        .collect();
    let mut b: Vec<i64> = rhs.iter().map(|&x| x.rem_euclid(m)).collect();
    // Column transform, x = V y.
    let mut v: Vec<Vec<i64>> = (0..n_vars)
        .map(|i| (0..n_vars).map(|j| i64::from(i == j)).collect())
        .collect();

    let n_rows = a.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < n_rows.min(n_vars) {
        // Pivot: any nonzero entry in the trailing block, preferring small values.
        let mut best: Option<(usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x < a[bi][bj]) {
                    best = Some((i, j));
                    if x == 1 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        b.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
        }

        loop {
            let mut changed = false;
            for i in t + 1..n_rows {
                let e = a[i][t];
                if e == 0 {
                    continue;
                }
                let p = a[t][t];
                if e % p == 0 {
                    let q = e / p;
                    for j in t..n_vars {
                        a[i][j] = red(a[i][j] as i128 - q as i128 * a[t][j] as i128);
                    }
                    b[i] = red(b[i] as i128 - q as i128 * b[t] as i128);
                } else {
                    // [[s, u], [-e/g, p/g]] has determinant 1 and replaces the
                    // pivot by gcd(p, e).
                    let (g, s, u) = ext_gcd(p, e);
                    let (pg, eg) = (p / g, e / g);
                    for j in t..n_vars {
                        let (x, y) = (a[t][j] as i128, a[i][j] as i128);
                        a[t][j] = red(s as i128 * x + u as i128 * y);
                        a[i][j] = red(-(eg as i128) * x + pg as i128 * y);
                    }
                    let (x, y) = (b[t] as i128, b[i] as i128);
                    b[t] = red(s as i128 * x + u as i128 * y);
                    b[i] = red(-(eg as i128) * x + pg as i128 * y);
                    changed = true;
                }
            }
            for j in t + 1..n_vars {
                let e = a[t][j];
                if e == 0 {
                    continue;
                }
                let p = a[t][t];
                if e % p == 0 {
                    let q = e / p;
                    for row in a.iter_mut().skip(t) {
                        row[j] = red(row[j] as i128 - q as i128 * row[t] as i128);
                    }
                    for row in v.iter_mut() {
                        row[j] = red(row[j] as i128 - q as i128 * row[t] as i128);
                    }
                } else {
                    let (g, s, u) = ext_gcd(p, e);
                    let (pg, eg) = (p / g, e / g);
                    for row in a.iter_mut().skip(t) {
                        let (x, y) = (row[t] as i128, row[j] as i128);
                        row[t] = red(s as i128 * x + u as i128 * y);
                        row[j] = red(-(eg as i128) * x + pg as i128 * y);
                    }
                    for row in v.iter_mut() {
                        let (x, y) = (row[t] as i128, row[j] as i128);
                        row[t] = red(s as i128 * x + u as i128 * y);
                        row[j] = red(-(eg as i128) * x + pg as i128 * y);
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }

    // Rows past the diagonal are zero; their right-hand sides must vanish.
    if b.iter().skip(diag.len()).any(|&x| x != 0) {
        return None;
    }

    let mut y = vec![0i64; n_vars];
    let mut basis_y: Vec<(usize, i64, u64)> = Vec::new();
    for (i, &d) in diag.iter().enumerate() {
        let g = (d as u64).gcd(&modulus) as i64;
        if b[i] % g != 0 {
            return None;
        }
        let step = m / g;
        // d/g is invertible modulo m/g.
        let inv = if step == 1 {
            0
        } else {
            let e = (d / g).extended_gcd(&step);
            e.x.rem_euclid(step)
        };
        y[i] = red((b[i] / g) as i128 * inv as i128 % step as i128);
        if g > 1 {
            basis_y.push((i, step, g as u64));
        }
    }
    for i in diag.len()..n_vars {
        basis_y.push((i, 1, modulus));
    }

    let apply_v = |yv: &dyn Fn(usize) -> i64| -> Vec<i64> {
        (0..n_vars)
            .map(|r| {
                let acc: i128 = v[r]
                    .iter()
                    .enumerate()
                    .map(|(c, &x)| x as i128 * yv(c) as i128)
                    .sum();
                red(acc)
            })
            .collect()
    };
    let particular = apply_v(&|c| y[c]);
    let basis = basis_y
        .into_iter()
        .map(|(i, step, order)| {
            let vec = apply_v(&|c| if c == i { step } else { 0 });
            (vec, order)
        })
        .collect();
    Some(ModularSolution {
        modulus,
        particular,
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(rows: &[Vec<i64>], rhs: &[i64], n: usize, m: i64) -> Vec<Vec<i64>> {
        let total = (m as usize).pow(n as u32);
        let mut out = Vec::new();
        for idx in 0..total {
            let mut x = vec![0i64; n];
            let mut k = idx;
            for slot in x.iter_mut().rev() {
                *slot = (k % m as usize) as i64;
                k /= m as usize;
            }
            let ok = rows.iter().zip(rhs).all(|(r, &c)| {
                (r.iter().zip(&x).map(|(a, b)| a * b).sum::<i64>() - c).rem_euclid(m) == 0
            });
            if ok {
                out.push(x);
            }
        }
        out
    }

    fn satisfies(rows: &[Vec<i64>], rhs: &[i64], x: &[i64], m: i64) -> bool {
        rows.iter().zip(rhs).all(|(r, &c)| {
            (r.iter().zip(x).map(|(a, b)| a * b).sum::<i64>() - c).rem_euclid(m) == 0
        })
    }

    #[test]
    fn agrees_with_brute_force() {
        let cases: Vec<(Vec<Vec<i64>>, Vec<i64>, usize, u64)> = vec![
            (vec![vec![2, 4], vec![6, 8]], vec![2, 6], 2, 12),
            (vec![vec![1, 1, 1]], vec![0], 3, 4),
            (vec![vec![2, 0, 0], vec![0, 3, 0]], vec![0, 0], 3, 6),
            (vec![vec![4, 6, 2], vec![2, 2, 2]], vec![2, 4], 3, 8),
            (vec![vec![2, 2]], vec![1], 2, 4),
            (vec![], vec![], 2, 3),
        ];
        for (rows, rhs, n, m) in cases {
            let all = brute(&rows, &rhs, n, m as i64);
            match solve_mod(&rows, &rhs, n, m) {
                None => assert!(all.is_empty()),
                Some(sol) => {
                    assert_eq!(sol.count(), Some(all.len() as u128));
                    assert!(satisfies(&rows, &rhs, &sol.particular, m as i64));
                    let zeros = vec![0; rows.len()];
                    for (vec, order) in &sol.basis {
                        assert!(satisfies(&rows, &zeros, vec, m as i64));
                        let scaled: Vec<i64> = vec.iter().map(|x| x * *order as i64).collect();
                        assert!(scaled.iter().all(|x| x.rem_euclid(m as i64) == 0));
                    }
                }
            }
        }
    }

    #[test]
    fn integer_solutions() {
        // 2x + 4y = 6 over Z: particular plus one free direction.
        let sol = solve_linear(&[vec![2, 4]], &[6], 2, 0).unwrap();
        let [x, y] = sol.particular[..] else { panic!() };
        assert_eq!(2 * x + 4 * y, 6);
        assert_eq!(sol.basis.len(), 1);
        let (v, order) = &sol.basis[0];
        assert_eq!(*order, 0);
        assert_eq!(2 * v[0] + 4 * v[1], 0);
        assert!(v.iter().any(|&t| t != 0));
        assert_eq!(sol.count(), None);
        assert!(solve_linear(&[vec![2, 4]], &[3], 2, 0).is_none());
    }
}
