//! Small square matrices over Z[ζ_L] and exact eigenvalue extraction.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cyclotomic::{Cyclotomic, Reducer, RootSum};
use crate::error::{internal, Result};

/// A square matrix whose entries are algebraic integers of Q(ζ_order), stored canonically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootMatrix {
    order: u32,
    n: usize,
    entries: Vec<Vec<Vec<i64>>>,
}

fn reducer_poly(order: u32) -> (usize, Vec<(usize, i64)>) {
    let r = Reducer::new(order);
    let poly = crate::cyclotomic::cyclotomic_polynomial(order as u64);
    let sparse = poly[..r.degree()]
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (j, c))
        .collect();
    (r.degree(), sparse)
}

impl RootMatrix {
    pub fn zero(n: usize, order: u32) -> Self {
        let phi = Reducer::new(order).degree();
        RootMatrix {
            order,
            n,
            entries: vec![vec![vec![0; phi]; n]; n],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zero(n, order);
        for i in 0..n {
            m.entries[i][i][0] = 1;
        }
        m
    }

    /// Builds a matrix from root sums: entry (i, j) is Σ c·ζ_order^u over the listed (u, c).
    pub fn from_root_sums(order: u32, rows: &[Vec<Vec<(i64, i64)>>]) -> Self {
        let n = rows.len();
        let red = Reducer::new(order);
        let entries = rows
            .iter()
            .map(|row| {
                assert_eq!(row.len(), n, "matrix must be square");
                row.iter()
                    .map(|terms| {
                        let mut s = RootSum::new(order);
                        for &(u, c) in terms {
                            s.add_root(u, c as i128);
                        }
                        red.reduce(s.counts())
                            .into_iter()
                            .map(|x| x as i64)
                            .collect()
                    })
                    .collect()
            })
            .collect();
        RootMatrix { order, n, entries }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> Cyclotomic {
        let coeffs: Vec<i128> = self.entries[i][j].iter().map(|&c| c as i128).collect();
        Reducer::new(self.order).to_cyclotomic(&coeffs)
    }

    pub fn to_cyclotomic(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    fn is_zero_entry(v: &[i64]) -> bool {
        v.iter().all(|&c| c == 0)
    }

    pub fn mul(&self, other: &RootMatrix) -> RootMatrix {
        assert_eq!(self.order, other.order);
        assert_eq!(self.n, other.n);
        let (phi, sparse) = reducer_poly(self.order);
        let n = self.n;
        let mut out = Self::zero(n, self.order);
        let mut buf = vec![0i64; 2 * phi];
        for i in 0..n {
            for j in 0..n {
                buf.iter_mut().for_each(|x| *x = 0);
                let mut any = false;
                for k in 0..n {
                    let a = &self.entries[i][k];
                    let b = &other.entries[k][j];
                    if Self::is_zero_entry(a) || Self::is_zero_entry(b) {
                        continue;
                    }
                    any = true;
                    for (x, &ca) in a.iter().enumerate().filter(|(_, &c)| c != 0) {
                        for (y, &cb) in b.iter().enumerate().filter(|(_, &c)| c != 0) {
                            buf[x + y] += ca * cb;
                        }
                    }
                }
                if !any {
                    continue;
                }
                for d in (phi..2 * phi).rev() {
                    let c = buf[d];
                    if c != 0 {
                        for &(j2, p) in &sparse {
                            buf[d - phi + j2] -= c * p;
                        }
                        buf[d] = 0;
                    }
                }
                out.entries[i][j].copy_from_slice(&buf[..phi]);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> RootMatrix {
        let mut acc = Self::identity(self.n, self.order);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies every entry by ζ_order^u.
    pub fn scale_root(&self, u: i64) -> RootMatrix {
        let s = Self::from_root_sums(
            self.order,
            &(0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| if i == j { vec![(u, 1)] } else { vec![] })
                        .collect()
                })
                .collect::<Vec<_>>(),
        );
        s.mul(self)
    }

    pub fn add(&self, other: &RootMatrix) -> RootMatrix {
        assert_eq!((self.order, self.n), (other.order, other.n));
        let mut out = self.clone();
        for (ra, rb) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in ra.iter_mut().zip(rb) {
                for (x, &y) in a.iter_mut().zip(b) {
                    *x += y;
                }
            }
        }
        out
    }

    pub fn scale_int(&self, c: i64) -> RootMatrix {
        let mut out = self.clone();
        out.entries
            .iter_mut()
            .flatten()
            .flatten()
            .for_each(|x| *x *= c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries
            .iter()
            .flatten()
            .all(|v| Self::is_zero_entry(v))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !self.nonzero(i, j)))
    }

    pub fn trace(&self) -> Cyclotomic {
        let mut acc = vec![0i128; self.entries[0][0].len()];
        for i in 0..self.n {
            for (a, &c) in acc.iter_mut().zip(&self.entries[i][i]) {
                *a += c as i128;
            }
        }
        Reducer::new(self.order).to_cyclotomic(&acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n, self.order)
    }

    fn nonzero(&self, i: usize, j: usize) -> bool {
        !Self::is_zero_entry(&self.entries[i][j])
    }

    fn mul_entries(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let (phi, sparse) = reducer_poly(self.order);
        let mut buf = vec![0i64; 2 * phi];
        for (x, &ca) in a.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (y, &cb) in b.iter().enumerate().filter(|(_, &c)| c != 0) {
                buf[x + y] += ca * cb;
            }
        }
        for d in (phi..2 * phi).rev() {
            let c = buf[d];
            if c != 0 {
                for &(j, p) in &sparse {
                    buf[d - phi + j] -= c * p;
                }
                buf[d] = 0;
            }
        }
        buf.truncate(phi);
        buf
    }

    /// All roots of unity of Q(ζ_order) as l-th roots, l = lcm(2, order), keyed by coordinates.
    fn roots_of_unity(&self) -> Arc<(u32, HashMap<Vec<i64>, u32>)> {
        type Table = Arc<(u32, HashMap<Vec<i64>, u32>)>;
        static CACHE: OnceLock<Mutex<HashMap<u32, Table>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.lock().unwrap().get(&self.order) {
            return t.clone();
        }
        let t = Arc::new(self.build_roots_of_unity());
        cache.lock().unwrap().insert(self.order, t.clone());
        t
    }

    fn build_roots_of_unity(&self) -> (u32, HashMap<Vec<i64>, u32>) {
        let n = self.order as i64;
        let red = Reducer::new(self.order);
        let l = if n % 2 == 0 { n } else { 2 * n };
        let map = (0..l)
            .map(|k| {
                // ζ_{2n} = −ζ_n^{(n+1)/2} when n is odd.
                let (e, sign) = if l == n {
                    (k, 1)
                } else {
                    (k * (n + 1) / 2, if k % 2 == 0 { 1 } else { -1 })
                };
                let mut s = RootSum::new(self.order);
                s.add_root(e, sign);
                let v = red
                    .reduce(s.counts())
                    .into_iter()
                    .map(|c| c as i64)
                    .collect();
                (v, k as u32)
            })
            .collect();
        (l as u32, map)
    }

    /// Exact eigenvalue counts for a matrix of finite order dividing m, as multiplicities of ζ_m^α.
    pub fn eigenvalue_counts(&self, m: u32) -> Result<Vec<u32>> {
        let mut counts = vec![0u32; m as usize];
        let n = self.n;
        let monomial = (0..n).all(|i| (0..n).filter(|&j| self.nonzero(i, j)).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| self.nonzero(i, j)).count() == 1);
        let upper = (0..n).all(|i| (0..i).all(|j| !self.nonzero(i, j)));
        let lower = (0..n).all(|i| (i + 1..n).all(|j| !self.nonzero(i, j)));
        if monomial || upper || lower {
            let table = self.roots_of_unity();
            let (l, roots) = (&table.0, &table.1);
            let (l, m64) = (*l as u64, m as u64);
            let mut add = |prod: &[i64], len: u64| -> Result<()> {
                let k = *roots
                    .get(prod)
                    .ok_or_else(|| internal("matrix entry is not a root of unity"))?
                    as u64;
                // ζ_m^{α·len} = ζ_l^k  ⇔  α·len·l ≡ k·m (mod m·l).
                let hits: Vec<u64> = (0..m64)
                    .filter(|&a| (a * len * l) % (m64 * l) == (k * m64) % (m64 * l))
                    .collect();
                if hits.len() as u64 != len {
                    return Err(internal("matrix is not of the stated finite order"));
                }
                for a in hits {
                    counts[a as usize] += 1;
                }
                Ok(())
            };
            if monomial {
                // Each cycle of length ℓ with entry product c contributes the ℓ-th roots of c.
                let col_of: Vec<usize> = (0..n)
                    .map(|i| (0..n).find(|&j| self.nonzero(i, j)).unwrap())
                    .collect();
                let mut seen = vec![false; n];
                for start in 0..n {
                    if seen[start] {
                        continue;
                    }
                    let mut prod = self.entries[start][col_of[start]].clone();
                    let mut len = 1;
                    seen[start] = true;
                    let mut i = col_of[start];
                    while !seen[i] {
                        seen[i] = true;
                        prod = self.mul_entries(&prod, &self.entries[i][col_of[i]]);
                        i = col_of[i];
                        len += 1;
                    }
                    add(&prod, len)?;
                }
            } else {
                for i in 0..n {
                    add(&self.entries[i][i], 1)?;
                }
            }
            return Ok(counts);
        }
        // Characteristic polynomial and root multiplicities by synthetic division.
        let mut poly = self.charpoly();
        for alpha in 0..m {
            let lambda = Cyclotomic::root_of_unity(m, alpha as i64);
            loop {
                let (q, r) = synthetic_division(&poly, &lambda);
                if !r.is_zero() {
                    break;
                }
                counts[alpha as usize] += 1;
                poly = q;
            }
        }
        if counts.iter().sum::<u32>() as usize != n {
            return Err(internal(
                "matrix eigenvalues are not all m-th roots of unity",
            ));
        }
        Ok(counts)
    }

    /// Characteristic polynomial det(xI − M), low to high, by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> Vec<Cyclotomic> {
        let n = self.n;
        let m = self.to_cyclotomic();
        let mut coeffs = vec![Cyclotomic::zero(); n + 1];
        coeffs[n] = Cyclotomic::one();
        let mut mk: Vec<Vec<Cyclotomic>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Cyclotomic::one()
                        } else {
                            Cyclotomic::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut c_prev = Cyclotomic::one();
        for k in 1..=n {
            if k > 1 {
                for i in 0..n {
                    mk[i][i] = &mk[i][i] + &c_prev;
                }
            }
            let prod: Vec<Vec<Cyclotomic>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut s = Cyclotomic::zero();
                            for l in 0..n {
                                if !m[i][l].is_zero() && !mk[l][j].is_zero() {
                                    s = &s + &(&m[i][l] * &mk[l][j]);
                                }
                            }
                            s
                        })
                        .collect()
                })
                .collect();
            mk = prod;
            let mut tr = Cyclotomic::zero();
            for i in 0..n {
                tr = &tr + &mk[i][i];
            }
            let c = &(-&tr) / &Cyclotomic::from_int(k as i64);
            coeffs[n - k] = c.clone();
            c_prev = c;
        }
        coeffs
    }
}

fn synthetic_division(poly: &[Cyclotomic], lambda: &Cyclotomic) -> (Vec<Cyclotomic>, Cyclotomic) {
    let n = poly.len() - 1;
    let mut q = vec![Cyclotomic::zero(); n];
    let mut acc = poly[n].clone();
    for i in (0..n).rev() {
        q[i] = acc.clone();
        acc = &poly[i] + &(&acc * lambda);
    }
    (q, acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_and_diagonal_eigenvalues() {
        // 3-cycle permutation: eigenvalues are the three cube roots of unity.
        let p = RootMatrix::from_root_sums(
            1,
            &[
                vec![vec![], vec![], vec![(0, 1)]],
                vec![vec![(0, 1)], vec![], vec![]],
                vec![vec![], vec![(0, 1)], vec![]],
            ],
        );
        assert_eq!(p.eigenvalue_counts(3).unwrap(), vec![1, 1, 1]);
        assert!(p.pow(3).is_identity());
        let d = RootMatrix::from_root_sums(
            7,
            &[vec![vec![(1, 1)], vec![]], vec![vec![], vec![(3, 1)]]],
        );
        assert_eq!(d.eigenvalue_counts(7).unwrap(), vec![0, 1, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn two_by_two_charpoly() {
        // [[0, 1], [−1, ζ₅ + ζ₅⁻¹]] has eigenvalues ζ₅^{±1}.
        let a = RootMatrix::from_root_sums(
            5,
            &[
                vec![vec![], vec![(0, 1)]],
                vec![vec![(0, -1)], vec![(1, 1), (4, 1)]],
            ],
        );
        assert_eq!(a.eigenvalue_counts(5).unwrap(), vec![0, 1, 0, 0, 1]);
        assert!(a.pow(5).is_identity());
        let cp = a.charpoly();
        assert_eq!(cp[0], Cyclotomic::one());
    }
}
