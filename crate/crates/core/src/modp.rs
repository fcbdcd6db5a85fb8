//! Prime-field helpers for the modular character-table method.

use rand::Rng;

pub(crate) use crate::cyclotomic::{inv_mod, mul_mod, pow_mod};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least prime p ≡ 1 (mod m) with p > bound.
pub fn prime_one_mod(m: u64, bound: u64) -> u64 {
    let mut t = bound / m + 1;
    loop {
        let p = m * t + 1;
        if is_prime(p) {
            return p;
        }
        t += 1;
    }
}

/// Least primitive root modulo the prime p.
pub fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = prime_factors(p - 1);
    (2..p)
        .find(|&g| factors.iter().all(|&f| pow_mod(g, (p - 1) / f, p) != 1))
        .expect("a prime has a primitive root")
}

/// Solves the square system A x = b over F_p; `None` if A is singular.
pub fn solve(mut a: Vec<Vec<u64>>, mut b: Vec<u64>, p: u64) -> Option<Vec<u64>> {
    let n = a.len();
    for c in 0..n {
        let r = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, r);
        b.swap(c, r);
        let inv = inv_mod(a[c][c], p);
        for x in a[c].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        b[c] = mul_mod(b[c], inv, p);
        for r in 0..n {
            if r != c && a[r][c] != 0 {
                let f = a[r][c];
                let (pivot, row) = if r < c {
                    let (lo, hi) = a.split_at_mut(c);
                    (&hi[0], &mut lo[r])
                } else {
                    let (lo, hi) = a.split_at_mut(r);
                    (&lo[c], &mut hi[0])
                };
                let fs = shoup(f, p);
                for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = sub_mod(*x, mul_shoup(y, f, fs, p), p);
                }
                let t = mul_mod(f, b[c], p);
                b[r] = (b[r] + p - t) % p;
            }
        }
    }
    Some(b)
}

/// ⌊f·2^64/p⌋, for repeated multiplication by a fixed f < p.
fn shoup(f: u64, p: u64) -> u64 {
    (((f as u128) << 64) / p as u128) as u64
}

/// y·f mod p for y < p < 2^63, given fs = shoup(f, p).
fn mul_shoup(y: u64, f: u64, fs: u64, p: u64) -> u64 {
    let q = ((fs as u128 * y as u128) >> 64) as u64;
    let r = f.wrapping_mul(y).wrapping_sub(q.wrapping_mul(p));
    if r >= p {
        r - p
    } else {
        r
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Σ a_i b_i mod p with a single reduction.
pub(crate) fn dot_mod(a: &[u64], b: &[u64], p: u64) -> u64 {
    let acc: u128 = a.iter().zip(b).map(|(&x, &y)| x as u128 * y as u128).sum();
    (acc % p as u128) as u64
}

fn trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn make_monic(f: &mut [u64], p: u64) {
    if let Some(&lead) = f.last() {
        let inv = inv_mod(lead, p);
        for c in f.iter_mut() {
            *c = mul_mod(*c, inv, p);
        }
    }
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if p < 1 << 40 {
        return poly_rem_wide(a.iter().map(|&x| x as u128).collect(), m, p);
    }
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mul_mod(*r.last().unwrap(), inv, p);
        for (j, &mj) in m.iter().enumerate() {
            let t = mul_mod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_rem_narrow(mut r: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    if r.len() > dm {
        for x in r.iter_mut() {
            *x %= p;
        }
    }
    while r.len() > dm {
        let top = r.pop().unwrap() % p;
        if top == 0 {
            continue;
        }
        let neg = p - mul_mod(top, inv, p);
        let shift = r.len() - dm;
        for (x, &mj) in r[shift..].iter_mut().zip(m) {
            *x += neg * mj;
        }
    }
    let mut out: Vec<u64> = r.into_iter().map(|x| x % p).collect();
    trim(&mut out);
    out
}

/// Remainder of an unreduced coefficient vector; needs p < 2^40 so sums of p² terms fit in u128.
fn poly_rem_wide(mut r: Vec<u128>, m: &[u64], p: u64) -> Vec<u64> {
    let pw = p as u128;
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = (r.pop().unwrap() % pw) as u64;
        if top == 0 {
            continue;
        }
        let neg = (p - mul_mod(top, inv, p)) as u128;
        let shift = r.len() - dm;
        for (x, &mj) in r[shift..].iter_mut().zip(m) {
            *x += neg * mj as u128;
        }
    }
    let mut out: Vec<u64> = r.into_iter().map(|x| (x % pw) as u64).collect();
    trim(&mut out);
    out
}

fn poly_div_exact(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let inv = inv_mod(m[dm], p);
    let mut q = vec![0; r.len() - dm];
    for shift in (0..q.len()).rev() {
        let c = mul_mod(r[shift + dm], inv, p);
        q[shift] = c;
        for (j, &mj) in m.iter().enumerate() {
            let t = mul_mod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
    }
    q
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let pp = (p as u128) * (p as u128);
    if pp
        .checked_mul((a.len() + b.len()) as u128)
        .is_some_and(|s| s <= u64::MAX as u128)
    {
        // Every coefficient stays below (len a + len b)·p² throughout.
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x != 0 {
                for (z, &y) in prod[i..].iter_mut().zip(b) {
                    *z += x * y;
                }
            }
        }
        return poly_rem_narrow(prod, m, p);
    }
    let mut prod = vec![0u128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            let s = prod[i + j] + x as u128 * y as u128;
            prod[i + j] = if s >= pp { s - pp } else { s };
        }
    }
    if p < 1 << 40 {
        return poly_rem_wide(prod, m, p);
    }
    let prod: Vec<u64> = prod.into_iter().map(|v| (v % p as u128) as u64).collect();
    poly_rem(&prod, m, p)
}

fn poly_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, m, p);
        }
        b = poly_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    make_monic(&mut a, p);
    a
}

/// All roots in F_p of a monic polynomial, provided it splits into distinct linear factors.
pub fn distinct_roots<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Option<Vec<u64>> {
    let mut f = f.to_vec();
    trim(&mut f);
    make_monic(&mut f, p);
    let deg = f.len() - 1;
    // The split part is gcd(f, x^p − x).
    let mut xp = poly_powmod(&[0, 1], p, &f, p);
    xp.resize(xp.len().max(2), 0);
    xp[1] = (xp[1] + p - 1) % p;
    trim(&mut xp);
    if !xp.is_empty() {
        return None;
    }
    let mut roots = Vec::with_capacity(deg);
    let mut stack = vec![f];
    while let Some(g) = stack.pop() {
        match g.len() - 1 {
            0 => {}
            1 => roots.push((p - g[0]) % p),
            _ => loop {
                let a = rng.gen_range(0..p);
                let mut h = poly_powmod(&[a, 1], (p - 1) / 2, &g, p);
                if h.is_empty() {
                    h.push(0);
                }
                h[0] = (h[0] + p - 1) % p;
                let d = poly_gcd(&g, &h, p);
                if d.len() > 1 && d.len() < g.len() {
                    stack.push(poly_div_exact(&g, &d, p));
                    stack.push(d);
                    break;
                }
            },
        }
    }
    roots.sort_unstable();
    if roots.windows(2).any(|w| w[0] == w[1]) || roots.len() != deg {
        return None;
    }
    Some(roots)
}
