//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Elements are stored in the power basis {1, ζ, …, ζ^{φ(n)−1}} modulo the
//! n-th cyclotomic polynomial, so equal values of equal order have identical
//! coefficient vectors.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default cap on the order of the common field used for mixed-order arithmetic.
pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// An element of Q(ζ_order).
#[derive(Debug, Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

pub fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut phi = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

fn mobius(n: u64) -> i32 {
    let mut m = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if m > 1 {
        sign = -sign;
    }
    sign
}

/// Coefficients (low to high) of the n-th cyclotomic polynomial.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    let mut poly: Vec<i128> = vec![1];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let d = d as usize;
            let mut next = vec![0i128; poly.len() + d];
            for (i, &c) in poly.iter().enumerate() {
                next[i + d] += c;
                next[i] -= c;
            }
            poly = next;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let deg = poly.len() - 1;
            let mut q = vec![0i128; deg - d + 1];
            for k in (d..=deg).rev() {
                let carry = if k <= deg - d { q[k] } else { 0 };
                q[k - d] = poly[k] + carry;
            }
            poly = q;
        }
    }
    poly.into_iter().map(|c| c as i64).collect()
}

/// Reduces integer vectors in Z[x] modulo Φ_n; reusable across many values of one order.
#[derive(Debug, Clone)]
pub struct Reducer {
    n: u32,
    phi: usize,
    /// Nonzero low coefficients of Φ_n as (index, coefficient).
    sparse: Vec<(usize, i128)>,
}

impl Reducer {
    pub fn new(n: u32) -> Self {
        let poly = cyclotomic_polynomial(n as u64);
        let phi = poly.len() - 1;
        let sparse = poly[..phi]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c as i128))
            .collect();
        Reducer { n, phi, sparse }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    /// Canonical power-basis coordinates of Σ v_j ζ^j for v indexed mod n.
    pub fn reduce(&self, v: &[i128]) -> Vec<i128> {
        let n = self.n as usize;
        let mut w = vec![0i128; n.max(self.phi + 1)];
        for (j, &c) in v.iter().enumerate() {
            w[j % n] += c;
        }
        for i in (self.phi..w.len()).rev() {
            let c = w[i];
            if c != 0 {
                let base = i - self.phi;
                for &(j, p) in &self.sparse {
                    w[base + j] -= c * p;
                }
                w[i] = 0;
            }
        }
        w.truncate(self.phi);
        w
    }

    pub fn to_cyclotomic(&self, v: &[i128]) -> Cyclotomic {
        let coeffs = self
            .reduce(v)
            .into_iter()
            .map(|c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Cyclotomic {
            order: self.n,
            coeffs,
        }
    }
}

/// A formal integer combination of n-th roots of unity, Σ c_j ζ_n^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSum {
    order: u32,
    counts: Vec<i128>,
}

impl RootSum {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        RootSum {
            order,
            counts: vec![0; order as usize],
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn counts(&self) -> &[i128] {
        &self.counts
    }

    pub fn add_root(&mut self, k: i64, mult: i128) {
        let idx = k.rem_euclid(self.order as i64) as usize;
        self.counts[idx] += mult;
    }

    /// Re-expresses the sum over a smaller order m; every occurring root must lie in μ_m.
    pub fn to_order(&self, m: u32) -> Option<RootSum> {
        let n = self.order as u64;
        let mut out = RootSum::new(m);
        for (j, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let scaled = j as u64 * m as u64;
            if scaled % n != 0 {
                return None;
            }
            out.add_root((scaled / n) as i64, c);
        }
        Some(out)
    }

    pub fn to_cyclotomic(&self) -> Cyclotomic {
        Reducer::new(self.order).to_cyclotomic(&self.counts)
    }
}

fn big_rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// x − floor(x), always in [0, 1).
pub fn fractional_part(x: &BigRational) -> BigRational {
    x - x.floor()
}

fn reduce_rational(mut w: Vec<BigRational>, poly: &[i64]) -> Vec<BigRational> {
    let phi = poly.len() - 1;
    if w.len() < phi {
        w.resize(phi, BigRational::zero());
    }
    for i in (phi..w.len()).rev() {
        if w[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut w[i], BigRational::zero());
        let base = i - phi;
        for (j, &p) in poly[..phi].iter().enumerate() {
            if p != 0 {
                w[base + j] -= &c * big_rat(p);
            }
        }
    }
    w.truncate(phi);
    w
}

fn checked_lcm(a: u32, b: u32, cap: u64) -> Result<u32> {
    let l = (a as u64).lcm(&(b as u64));
    if l > cap || l > u32::MAX as u64 {
        return Err(Error::Resource(format!(
            "common cyclotomic order lcm({a}, {b}) = {l} exceeds the bound {cap}"
        )));
    }
    Ok(l as u32)
}

fn poly_trim(p: &mut Vec<BigRational>) {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= &c * bj;
        }
        q[shift] = c;
        r.pop();
        poly_trim(&mut r);
    }
    (q, r)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    poly_trim(&mut out);
    out
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(big_rat(n))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic {
            order: 1,
            coeffs: vec![r],
        }
    }

    /// Builds a value from power-basis coordinates; `coeffs` must have length φ(order).
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("cyclotomic order must be positive".into()));
        }
        let phi = euler_phi(order as u64) as usize;
        if coeffs.len() != phi {
            return Err(Error::Invalid(format!(
                "order {order} needs {phi} coefficients, got {}",
                coeffs.len()
            )));
        }
        Ok(Cyclotomic { order, coeffs })
    }

    /// Σ c_j ζ^j for an arbitrary-length coefficient list, reduced to canonical form.
    pub fn from_expansion(order: u32, expansion: Vec<BigRational>) -> Self {
        let n = order as usize;
        let mut folded = vec![BigRational::zero(); n];
        for (j, c) in expansion.into_iter().enumerate() {
            folded[j % n] += c;
        }
        let poly = cyclotomic_polynomial(order as u64);
        Cyclotomic {
            order,
            coeffs: reduce_rational(folded, &poly),
        }
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1, "root_of_unity needs n >= 1");
        let mut s = RootSum::new(n);
        s.add_root(k, 1);
        s.to_cyclotomic()
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// Embeds into Q(ζ_m); `m` must be a multiple of the current order.
    pub fn lift(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return Err(Error::Invalid(format!(
                "cannot lift order {} to {m}",
                self.order
            )));
        }
        if m == self.order {
            return Ok(self.clone());
        }
        let step = (m / self.order) as usize;
        let mut w = vec![BigRational::zero(); m as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            w[j * step] = c.clone();
        }
        let poly = cyclotomic_polynomial(m as u64);
        Ok(Cyclotomic {
            order: m,
            coeffs: reduce_rational(w, &poly),
        })
    }

    /// Expresses the value inside the subfield Q(ζ_d), if it lies there.
    pub fn reduce_to(&self, d: u32) -> Option<Self> {
        let l = (self.order as u64).lcm(&(d as u64)) as u32;
        let target = self.lift(l).ok()?;
        let phi_d = euler_phi(d as u64) as usize;
        let cols: Vec<Vec<BigRational>> = (0..phi_d)
            .map(|j| {
                Cyclotomic::root_of_unity(d, j as i64)
                    .lift(l)
                    .unwrap()
                    .coeffs
            })
            .collect();
        let rows = target.coeffs.len();
        // Gaussian elimination on the augmented system [cols | target].
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(target.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..phi_d {
            let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][c].is_zero() {
                    let f = m[i][c].clone();
                    for j in c..=phi_d {
                        let t = &f * &m[r][j];
                        m[i][j] -= t;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if m[r..].iter().any(|row| !row[phi_d].is_zero()) {
            return None;
        }
        let mut coeffs = vec![BigRational::zero(); phi_d];
        for (i, &c) in pivots.iter().enumerate() {
            coeffs[c] = m[i][phi_d].clone();
        }
        Some(Cyclotomic { order: d, coeffs })
    }

    /// σ_t : ζ ↦ ζ^t.
    pub fn galois_apply(&self, t: i64) -> Result<Self> {
        let n = self.order as i64;
        if t.gcd(&n) != 1 {
            return Err(Error::Invalid(format!(
                "{t} is not coprime to the order {n}"
            )));
        }
        let mut w = vec![BigRational::zero(); n as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                w[(j as i64 * t).rem_euclid(n) as usize] += c;
            }
        }
        Ok(Self::from_expansion(self.order, w))
    }

    /// Complex conjugation, σ_{−1}.
    pub fn conjugate(&self) -> Self {
        self.galois_apply(-1).expect("-1 is a unit")
    }

    pub fn arith(a: &Self, b: &Self, op: ArithOp) -> Result<Self> {
        Self::arith_with_cap(a, b, op, DEFAULT_MAX_ORDER)
    }

    /// Field arithmetic in Q(ζ_lcm), refusing common orders above `cap`.
    pub fn arith_with_cap(a: &Self, b: &Self, op: ArithOp, cap: u64) -> Result<Self> {
        let l = checked_lcm(a.order, b.order, cap)?;
        let a = a.lift(l)?;
        let b = b.lift(l)?;
        match op {
            ArithOp::Add => Ok(Cyclotomic {
                order: l,
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
            }),
            ArithOp::Sub => Ok(Cyclotomic {
                order: l,
                coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
            }),
            ArithOp::Mul => Ok(a.mul_same(&b)),
            ArithOp::Div => Ok(a.mul_same(&b.inverse()?)),
        }
    }

    fn mul_same(&self, other: &Self) -> Self {
        let poly = cyclotomic_polynomial(self.order as u64);
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        Cyclotomic {
            order: self.order,
            coeffs: reduce_rational(prod, &poly),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(Self::from_rational(self.coeffs[0].recip()).lift(self.order)?);
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order as u64)
            .into_iter()
            .map(big_rat)
            .collect();
        let mut r0 = modulus.clone();
        let mut r1 = self.coeffs.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<BigRational> = vec![];
        let mut s1 = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant because Φ_n is irreducible.
        let c = r0[0].recip();
        let scaled: Vec<BigRational> = s0.iter().map(|x| x * &c).collect();
        let (_, rem) = poly_divmod(&scaled, &modulus);
        let mut coeffs = rem;
        coeffs.resize(modulus.len() - 1, BigRational::zero());
        Ok(Cyclotomic {
            order: self.order,
            coeffs,
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one().lift(self.order).unwrap();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_same(&base);
            }
            base = base.mul_same(&base);
            e >>= 1;
        }
        acc
    }

    /// Image under the ring map Z[ζ_n] → F_p with ζ_n ↦ `z`; `z` must be a primitive n-th root mod p.
    pub fn eval_mod(&self, p: u64, z: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let mut acc = 0u64;
        let mut zp = 1u64;
        for c in &self.coeffs {
            if !c.is_zero() {
                let num = c.numer().mod_floor(&pb).to_u64()?;
                let den = c.denom().mod_floor(&pb).to_u64()?;
                if den == 0 {
                    return None;
                }
                let term = mul_mod(num, inv_mod(den, p), p);
                acc = (acc + mul_mod(term, zp, p)) % p;
            }
            zp = mul_mod(zp, z, p);
        }
        Some(acc)
    }

    /// Renders as "c0 + c1*z + ... (z = zeta_n)", listing nonzero terms only.
    pub fn render(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => c.to_string(),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{j}"),
            })
            .collect();
        let body = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        format!("{body} (z = zeta_{})", self.order)
    }

    /// Inverse of [`Cyclotomic::render`].
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.rfind("(z = zeta_").ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "missing \"(z = zeta_n)\" suffix".into(),
        })?;
        let tail = &s[open + "(z = zeta_".len()..];
        let digits = tail.strip_suffix(')').ok_or_else(|| Error::Parse {
            pos: s.len(),
            msg: "unterminated order suffix".into(),
        })?;
        let order: u32 = digits.parse().map_err(|_| Error::Parse {
            pos: open,
            msg: format!("bad order {digits:?}"),
        })?;
        if order == 0 {
            return Err(Error::Parse {
                pos: open,
                msg: "order must be positive".into(),
            });
        }
        let body = s[..open].trim();
        let mut expansion: Vec<BigRational> = vec![];
        let mut offset = 0;
        for term in body.split(" + ") {
            let pos = offset;
            offset += term.len() + 3;
            let term = term.trim();
            let (coef, power) = match term.find('z') {
                None => (term, 0usize),
                Some(zpos) => {
                    let coef = term[..zpos].strip_suffix('*').unwrap_or(&term[..zpos]);
                    let rest = &term[zpos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::Parse {
                                pos: pos + zpos,
                                msg: format!("bad exponent in {term:?}"),
                            })?
                    };
                    (coef, power)
                }
            };
            let c = match coef {
                "" => BigRational::one(),
                "-" => -BigRational::one(),
                _ => parse_rational(coef).ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("bad coefficient {coef:?}"),
                })?,
            };
            if expansion.len() <= power {
                expansion.resize(power + 1, BigRational::zero());
            }
            expansion[power] += c;
        }
        Ok(Self::from_expansion(order, expansion))
    }

    /// JSON form {order, coeffs: [[num, den], ...]}.
    pub fn to_json(&self) -> Value {
        json!({
            "order": self.order,
            "coeffs": self.coeffs.iter().map(rational_to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Invalid(format!("cyclotomic JSON: {m}"));
        let order = v
            .get("order")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing order"))?;
        let coeffs = v
            .get("coeffs")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing coeffs"))?
            .iter()
            .map(|c| rational_from_json(c).ok_or_else(|| bad("bad rational")))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(
            u32::try_from(order).map_err(|_| bad("order too large"))?,
            coeffs,
        )
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

fn bigint_to_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

fn bigint_from_json(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => n.as_i64().map(BigInt::from),
        Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Exact rational as the JSON pair [num, den]; oversized integers become decimal strings.
pub fn rational_to_json(r: &BigRational) -> Value {
    json!([bigint_to_json(r.numer()), bigint_to_json(r.denom())])
}

pub fn rational_from_json(v: &Value) -> Option<BigRational> {
    let pair = v.as_array()?;
    if pair.len() != 2 {
        return None;
    }
    let den = bigint_from_json(&pair[1])?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(bigint_from_json(&pair[0])?, den))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if (a | b) >> 32 == 0 {
        a * b % p
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let l = (self.order as u64).lcm(&(other.order as u64)) as u32;
        match (self.lift(l), other.lift(l)) {
            (Ok(a), Ok(b)) => a.coeffs == b.coeffs,
            _ => false,
        }
    }
}

impl Eq for Cyclotomic {}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl serde::Serialize for Cyclotomic {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for Cyclotomic {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(d)?;
        Cyclotomic::from_json(&v).map_err(serde::de::Error::custom)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $op:expr) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            /// Panics if the common order exceeds the default cap (or on division by zero).
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::arith(self, rhs, $op).unwrap_or_else(|e| panic!("{e}"))
            }
        }
    };
}

binop!(Add, add, ArithOp::Add);
binop!(Sub, sub, ArithOp::Sub);
binop!(Mul, mul, ArithOp::Mul);
binop!(Div, div, ArithOp::Div);
