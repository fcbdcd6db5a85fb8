//! The group families: faithful metacyclic G_{q,n}, dicyclic Dic_q, Q8 and cyclic C_n.
//!
//! Elements are enumerated as a^ν b^μ with ν major, so a^ν b^μ has index ν·ord(b) + μ.
//! Q8 is enumerated as 1, −1, i, −i, j, −j, k, −k.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::Serialize;

use crate::chartable::CharacterTable;
use crate::cyclotomic::RootSum;
use crate::error::{invalid, Error, Result};
use crate::group::FiniteGroup;
use crate::matrix::RootMatrix;
use crate::modp::is_prime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Metacyclic,
    Dicyclic,
    Quaternion8,
    Cyclic,
}

/// A member of one of the supported families, with all parameters fixed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Metacyclic { q: u32, n: u32, k: u32 },
    Dicyclic { q: u32 },
    Quaternion8,
    Cyclic { n: u32 },
}

fn mult_order(k: u64, q: u64) -> u64 {
    let mut x = k % q;
    let mut m = 1;
    while x != 1 {
        x = x * k % q;
        m += 1;
        if m > q {
            return 0;
        }
    }
    m
}

/// Least residue of multiplicative order exactly n modulo q.
pub fn least_multiplier(q: u32, n: u32) -> Option<u32> {
    (2..q).find(|&k| mult_order(k as u64, q as u64) == n as u64)
}

impl FamilySpec {
    pub fn metacyclic(q: u32, n: u32, k: Option<u32>) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(invalid(format!("metacyclic: q = {q} is not prime")));
        }
        if n < 2 {
            return Err(invalid(format!("metacyclic: n = {n} must exceed 1")));
        }
        if (q - 1) % n != 0 {
            return Err(invalid(format!(
                "metacyclic: n = {n} does not divide q - 1 = {}",
                q - 1
            )));
        }
        let k = match k {
            Some(k) => {
                if k == 0 || k >= q || mult_order(k as u64, q as u64) != n as u64 {
                    return Err(invalid(format!(
                        "metacyclic: k = {k} does not have multiplicative order {n} mod {q}"
                    )));
                }
                k
            }
            None => least_multiplier(q, n).expect("(Z/q)* is cyclic, so every n | q - 1 occurs"),
        };
        Ok(FamilySpec::Metacyclic { q, n, k })
    }

    pub fn dicyclic(q: u32) -> Result<Self> {
        if q % 2 == 0 || !is_prime(q as u64) {
            return Err(invalid(format!("dicyclic: q = {q} is not an odd prime")));
        }
        Ok(FamilySpec::Dicyclic { q })
    }

    pub fn cyclic(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(invalid(format!("cyclic: n = {n} must exceed 1")));
        }
        Ok(FamilySpec::Cyclic { n })
    }

    pub fn kind(&self) -> FamilyKind {
        match self {
            FamilySpec::Metacyclic { .. } => FamilyKind::Metacyclic,
            FamilySpec::Dicyclic { .. } => FamilyKind::Dicyclic,
            FamilySpec::Quaternion8 => FamilyKind::Quaternion8,
            FamilySpec::Cyclic { .. } => FamilyKind::Cyclic,
        }
    }

    pub fn group_order(&self) -> usize {
        match *self {
            FamilySpec::Metacyclic { q, n, .. } => (q * n) as usize,
            FamilySpec::Dicyclic { q } => 4 * q as usize,
            FamilySpec::Quaternion8 => 8,
            FamilySpec::Cyclic { n } => n as usize,
        }
    }

    /// Order of b (or 1 when the family has a single generator a).
    fn b_order(&self) -> u32 {
        match *self {
            FamilySpec::Metacyclic { n, .. } => n,
            FamilySpec::Dicyclic { .. } => 4,
            _ => 1,
        }
    }

    /// (ν, μ) with x = a^ν b^μ.
    pub fn decompose(&self, x: usize) -> (u32, u32) {
        let nb = self.b_order() as usize;
        ((x / nb) as u32, (x % nb) as u32)
    }

    pub fn compose(&self, nu: i64, mu: i64) -> usize {
        let (qa, nb) = match *self {
            FamilySpec::Metacyclic { q, n, .. } => (q as i64, n as i64),
            FamilySpec::Dicyclic { q } => (q as i64, 4),
            FamilySpec::Cyclic { n } => (n as i64, 1),
            FamilySpec::Quaternion8 => panic!("Q8 elements are not words in a, b"),
        };
        (nu.rem_euclid(qa) * nb + mu.rem_euclid(nb)) as usize
    }

    /// Symbols available in datum literals.
    pub fn symbols(&self) -> Vec<(&'static str, usize)> {
        match self {
            FamilySpec::Quaternion8 => vec![("-1", 1), ("i", 2), ("j", 4), ("k", 6)],
            FamilySpec::Cyclic { .. } => vec![("a", 1)],
            _ => vec![("a", self.compose(1, 0)), ("b", self.compose(0, 1))],
        }
    }

    pub fn parse_element(&self, g: &FiniteGroup, word: &str) -> Result<usize> {
        g.eval_word(word, &self.symbols())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Metacyclic { q, n, k } => write!(f, "metacyclic:q={q},n={n},k={k}"),
            FamilySpec::Dicyclic { q } => write!(f, "dicyclic:q={q}"),
            FamilySpec::Quaternion8 => write!(f, "quaternion8"),
            FamilySpec::Cyclic { n } => write!(f, "cyclic:n={n}"),
        }
    }
}

impl Serialize for FamilySpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Grammar: "metacyclic:q=7,n=3[,k=2]", "dicyclic:q=5", "quaternion8", "cyclic:n=9".
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (kind, params) = match s.split_once(':') {
            Some((k, p)) => (k, Some(p)),
            None => (s, None),
        };
        let base = kind.len() + 1;
        let mut q = None;
        let mut n = None;
        let mut k = None;
        if let Some(params) = params {
            let mut pos = base;
            for item in params.split(',') {
                let (key, val) = item.split_once('=').ok_or_else(|| Error::Parse {
                    pos,
                    msg: format!("expected key=value, found {item:?}"),
                })?;
                let v: u32 = val.trim().parse().map_err(|_| Error::Parse {
                    pos: pos + key.len() + 1,
                    msg: format!("{val:?} is not a nonnegative integer"),
                })?;
                let slot = match key.trim() {
                    "q" => &mut q,
                    "n" => &mut n,
                    "k" => &mut k,
                    other => {
                        return Err(Error::Parse {
                            pos,
                            msg: format!("unknown parameter {other:?}"),
                        })
                    }
                };
                if slot.replace(v).is_some() {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("parameter {key:?} given twice"),
                    });
                }
                pos += item.len() + 1;
            }
        }
        let need = |v: Option<u32>, name: &str| {
            v.ok_or_else(|| Error::Parse {
                pos: s.len(),
                msg: format!("{kind} needs parameter {name}"),
            })
        };
        let reject = |present: bool, name: &str| -> Result<()> {
            if present {
                Err(Error::Parse {
                    pos: base,
                    msg: format!("{kind} does not take parameter {name}"),
                })
            } else {
                Ok(())
            }
        };
        match kind {
            "metacyclic" => FamilySpec::metacyclic(need(q, "q")?, need(n, "n")?, k),
            "dicyclic" => {
                reject(n.is_some(), "n")?;
                reject(k.is_some(), "k")?;
                FamilySpec::dicyclic(need(q, "q")?)
            }
            "quaternion8" => {
                reject(q.is_some() || n.is_some() || k.is_some(), "any")?;
                Ok(FamilySpec::Quaternion8)
            }
            "cyclic" => {
                reject(q.is_some(), "q")?;
                reject(k.is_some(), "k")?;
                FamilySpec::cyclic(need(n, "n")?)
            }
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown family {other:?}"),
            }),
        }
    }
}

fn word_label(nu: u32, mu: u32, a: &str, b: &str) -> String {
    let part = |name: &str, e: u32| match e {
        0 => None,
        1 => Some(name.to_string()),
        _ => Some(format!("{name}^{e}")),
    };
    let parts: Vec<String> = [part(a, nu), part(b, mu)].into_iter().flatten().collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn pow_mod_u32(base: u32, e: u32, m: u32) -> u32 {
    let mut acc = 1u64 % m as u64;
    for _ in 0..e {
        acc = acc * base as u64 % m as u64;
    }
    acc as u32
}

const Q8_LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

/// Unit quaternion product: units 0..4 = 1, i, j, k; returns (sign flip, unit).
fn quaternion_unit_mul(x: usize, y: usize) -> (bool, usize) {
    match (x, y) {
        (0, u) | (u, 0) => (false, u),
        (a, b) if a == b => (true, 0),
        (1, 2) => (false, 3),
        (2, 1) => (true, 3),
        (2, 3) => (false, 1),
        (3, 2) => (true, 1),
        (3, 1) => (false, 2),
        (1, 3) => (true, 2),
        _ => unreachable!(),
    }
}

/// Multiplication table realizing the family presentation.
pub fn build_group(spec: &FamilySpec) -> Result<FiniteGroup> {
    match *spec {
        FamilySpec::Metacyclic { q, n, k } => {
            // b^μ a^x b^{−μ} = a^{x·k^{−μ}}.
            let kinv = pow_mod_u32(k, n - 1, q);
            let order = (q * n) as usize;
            let labels = (0..order)
                .map(|x| {
                    let (nu, mu) = spec.decompose(x);
                    word_label(nu, mu, "a", "b")
                })
                .collect();
            FiniteGroup::from_fn(
                order,
                |x, y| {
                    let (n1, m1) = spec.decompose(x);
                    let (n2, m2) = spec.decompose(y);
                    let twist = pow_mod_u32(kinv, m1, q) as u64;
                    let nu = (n1 as u64 + n2 as u64 * twist) % q as u64;
                    spec.compose(nu as i64, (m1 + m2) as i64)
                },
                Some(labels),
            )
        }
        FamilySpec::Dicyclic { q } => {
            let order = 4 * q as usize;
            let labels = (0..order)
                .map(|x| {
                    let (nu, mu) = spec.decompose(x);
                    word_label(nu, mu, "a", "b")
                })
                .collect();
            FiniteGroup::from_fn(
                order,
                |x, y| {
                    let (n1, m1) = spec.decompose(x);
                    let (n2, m2) = spec.decompose(y);
                    let nu = if m1 % 2 == 0 {
                        n1 as i64 + n2 as i64
                    } else {
                        n1 as i64 - n2 as i64
                    };
                    spec.compose(nu, (m1 + m2) as i64)
                },
                Some(labels),
            )
        }
        FamilySpec::Quaternion8 => FiniteGroup::from_fn(
            8,
            |x, y| {
                let (flip, unit) = quaternion_unit_mul(x / 2, y / 2);
                let negative = (x % 2 == 1) ^ (y % 2 == 1) ^ flip;
                2 * unit + usize::from(negative)
            },
            Some(Q8_LABELS.iter().map(|s| s.to_string()).collect()),
        ),
        FamilySpec::Cyclic { n } => {
            let order = n as usize;
            let labels = (0..order)
                .map(|x| word_label(x as u32, 0, "a", "b"))
                .collect();
            FiniteGroup::from_fn(order, |x, y| (x + y) % order, Some(labels))
        }
    }
}

/// Dic_n = ⟨x, y | x^{2n} = 1, x^n = y², y⁻¹xy = x⁻¹⟩ for any n ≥ 2, elements x^i y^j (index 2i + j).
pub fn dicyclic_general(n: u32) -> Result<FiniteGroup> {
    if n < 2 {
        return Err(invalid("Dic_n needs n >= 2"));
    }
    let two_n = 2 * n as i64;
    let order = 4 * n as usize;
    let labels = (0..order)
        .map(|x| word_label((x / 2) as u32, (x % 2) as u32, "x", "y"))
        .collect();
    FiniteGroup::from_fn(
        order,
        |a, b| {
            let (i1, j1) = ((a / 2) as i64, (a % 2) as i64);
            let (i2, j2) = ((b / 2) as i64, (b % 2) as i64);
            let mut i = if j1 == 0 { i1 + i2 } else { i1 - i2 };
            let mut j = j1 + j2;
            if j == 2 {
                j = 0;
                i += n as i64;
            }
            (2 * i.rem_euclid(two_n) + j) as usize
        },
        Some(labels),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KOrbit {
    /// Representative t_i; the orbit is listed as t_i, k t_i, k² t_i, … mod q.
    pub rep: u32,
    pub elements: Vec<u32>,
    pub sum: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KOrbits {
    pub q: u32,
    pub n: u32,
    pub k: u32,
    pub orbits: Vec<KOrbit>,
}

impl KOrbits {
    pub fn orbit_of(&self, l: u32) -> Option<&KOrbit> {
        self.orbits
            .iter()
            .find(|o| o.elements.contains(&(l % self.q)))
    }
}

fn make_orbit(q: u32, k: u32, rep: u32, n: u32) -> KOrbit {
    let mut elements = Vec::with_capacity(n as usize);
    let mut x = rep as u64;
    for _ in 0..n {
        elements.push(x as u32);
        x = x * k as u64 % q as u64;
    }
    let sum = elements.iter().map(|&e| e as u64).sum();
    KOrbit { rep, elements, sum }
}

/// Partition of {1, …, q−1} into ⟨k⟩-orbits, ordered by the pairing conventions.
///
/// For odd n the orbits come in pairs O, −O and are listed so that t_i + t_{i+s/2} = q;
/// for n = 3 the first half consists of the orbits with sum q.
pub fn k_orbit_data(q: u32, n: u32, k: u32) -> Result<KOrbits> {
    if !is_prime(q as u64) || (q - 1) % n != 0 || mult_order(k as u64, q as u64) != n as u64 {
        return Err(invalid(format!(
            "k = {k} does not have order {n} modulo the prime {q}"
        )));
    }
    let mut least: Vec<KOrbit> = vec![];
    let mut seen = vec![false; q as usize];
    for l in 1..q {
        if !seen[l as usize] {
            let o = make_orbit(q, k, l, n);
            for &e in &o.elements {
                seen[e as usize] = true;
            }
            least.push(o);
        }
    }
    let orbits = if n % 2 == 0 {
        least
    } else {
        let mut first = vec![];
        let mut second = vec![];
        let mut placed = vec![false; q as usize];
        for o in &least {
            if placed[o.rep as usize] {
                continue;
            }
            let neg = make_orbit(q, k, q - o.rep, n);
            let (mut a, mut b) = (o.clone(), neg);
            if n == 3 && a.sum != q as u64 {
                let least_b = *b.elements.iter().min().unwrap();
                a = make_orbit(q, k, least_b, n);
                b = make_orbit(q, k, q - least_b, n);
            }
            for &e in a.elements.iter().chain(&b.elements) {
                placed[e as usize] = true;
            }
            first.push(a);
            second.push(b);
        }
        if n == 3 {
            let mut pairs: Vec<(KOrbit, KOrbit)> = first.into_iter().zip(second).collect();
            pairs.sort_by_key(|(a, _)| a.rep);
            let (f, s): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
            f.into_iter().chain(s).collect()
        } else {
            first.into_iter().chain(second).collect()
        }
    };
    Ok(KOrbits { q, n, k, orbits })
}

/// Closed-form complex character table of a family instance, on the classes of `group`.
pub fn family_character_table(
    spec: &FamilySpec,
    group: &Arc<FiniteGroup>,
) -> Result<CharacterTable> {
    let cl = group.classes();
    let reps = &cl.representatives;
    let value = |x: usize, s: RootSum| -> Result<RootSum> {
        let m = group.element_order(x) as u32;
        s.to_order(m)
            .ok_or_else(|| crate::error::internal("closed-form value outside Q(ζ_m)"))
    };
    let mut rows: Vec<(String, Vec<RootSum>)> = vec![];
    match *spec {
        FamilySpec::Metacyclic { q, n, k } => {
            for j in 0..n {
                let vals = reps
                    .iter()
                    .map(|&x| {
                        let (_, mu) = spec.decompose(x);
                        let mut s = RootSum::new(n);
                        s.add_root((j * mu) as i64, 1);
                        value(x, s)
                    })
                    .collect::<Result<_>>()?;
                rows.push((format!("psi_{j}"), vals));
            }
            let orbits = k_orbit_data(q, n, k)?;
            for (i, o) in orbits.orbits.iter().enumerate() {
                let vals = reps
                    .iter()
                    .map(|&x| {
                        let (nu, mu) = spec.decompose(x);
                        let mut s = RootSum::new(q);
                        if mu == 0 {
                            for &t in &o.elements {
                                s.add_root(nu as i64 * t as i64, 1);
                            }
                        }
                        value(x, s)
                    })
                    .collect::<Result<_>>()?;
                rows.push((format!("chi_{}", i + 1), vals));
            }
        }
        FamilySpec::Dicyclic { q } => {
            for j in 0..4u32 {
                let vals = reps
                    .iter()
                    .map(|&x| {
                        let (_, mu) = spec.decompose(x);
                        let mut s = RootSum::new(4);
                        s.add_root((j * mu) as i64, 1);
                        value(x, s)
                    })
                    .collect::<Result<_>>()?;
                rows.push((format!("psi_{j}"), vals));
            }
            let s_count = (q - 1) / 2;
            for twist in [false, true] {
                for i in 1..=s_count {
                    let vals = reps
                        .iter()
                        .map(|&x| {
                            let (nu, mu) = spec.decompose(x);
                            let l = 4 * q;
                            let mut s = RootSum::new(l);
                            if mu % 2 == 0 {
                                let shift = if twist { (q * mu) as i64 } else { 0 };
                                let u = 4 * (i as i64) * nu as i64;
                                s.add_root(shift + u, 1);
                                s.add_root(shift - u, 1);
                            }
                            value(x, s)
                        })
                        .collect::<Result<_>>()?;
                    let label = if twist {
                        format!("psi_1*chi_{i}")
                    } else {
                        format!("chi_{i}")
                    };
                    rows.push((label, vals));
                }
            }
        }
        FamilySpec::Quaternion8 => {
            // ψ sends i ↦ ε_i, j ↦ ε_j, and ±1 ↦ 1.
            for (idx, (ei, ej)) in [(1i64, 1i64), (1, -1), (-1, 1), (-1, -1)]
                .into_iter()
                .enumerate()
            {
                let vals = reps
                    .iter()
                    .map(|&x| {
                        let sign = match x / 2 {
                            0 => 1,
                            1 => ei,
                            2 => ej,
                            _ => ei * ej,
                        };
                        let mut s = RootSum::new(2);
                        s.add_root(if sign == 1 { 0 } else { 1 }, 1);
                        value(x, s)
                    })
                    .collect::<Result<_>>()?;
                rows.push((format!("psi_{idx}"), vals));
            }
            let vals = reps
                .iter()
                .map(|&x| {
                    let mut s = RootSum::new(2);
                    if x < 2 {
                        s.add_root(x as i64, 2);
                    }
                    value(x, s)
                })
                .collect::<Result<_>>()?;
            rows.push(("chi".into(), vals));
        }
        FamilySpec::Cyclic { n } => {
            // ζ_n^{jx} is built directly over the order of x; rows are consumed one at a time.
            let rows = (0..n).map(|j| {
                let vals = reps
                    .iter()
                    .map(|&x| {
                        let m = group.element_order(x) as u32;
                        let mut s = RootSum::new(m);
                        s.add_root(
                            (j as u64 * x as u64 * m as u64 / n as u64 % m as u64) as i64,
                            1,
                        );
                        s
                    })
                    .collect();
                Ok((format!("psi_{j}"), vals))
            });
            return CharacterTable::from_exact_rows(group.clone(), rows, Some(spec.clone()));
        }
    }
    CharacterTable::from_exact_rows(group.clone(), rows.into_iter().map(Ok), Some(spec.clone()))
}

/// Builds the group and its closed-form table together.
pub fn family_instance(spec: &FamilySpec) -> Result<(Arc<FiniteGroup>, CharacterTable)> {
    let g = Arc::new(build_group(spec)?);
    let t = family_character_table(spec, &g)?;
    Ok((g, t))
}

/// An explicit matrix representation given by the images of the family generators.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub degree: usize,
    pub char_index: usize,
    pub char_label: String,
    pub images: Vec<(String, RootMatrix)>,
}

impl MatrixRep {
    pub fn generator(&self, name: &str) -> Option<&RootMatrix> {
        self.images.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    /// Image of an arbitrary group element via its normal form.
    pub fn image(&self, spec: &FamilySpec, x: usize) -> RootMatrix {
        match spec {
            FamilySpec::Quaternion8 => {
                let unit = match x / 2 {
                    0 => RootMatrix::identity(self.degree, self.generator("i").unwrap().order()),
                    1 => self.generator("i").unwrap().clone(),
                    2 => self.generator("j").unwrap().clone(),
                    _ => self.generator("k").unwrap().clone(),
                };
                if x % 2 == 1 {
                    unit.pow(1).mul(&self.generator("i").unwrap().pow(2))
                } else {
                    unit
                }
            }
            _ => {
                let (nu, mu) = spec.decompose(x);
                let a = self.generator("a").unwrap().pow(nu as u64);
                match self.generator("b") {
                    Some(b) => a.mul(&b.pow(mu as u64)),
                    None => a,
                }
            }
        }
    }

    /// Checks every defining relation of the family presentation.
    pub fn satisfies_relations(&self, spec: &FamilySpec) -> bool {
        let g = |n: &str| self.generator(n).unwrap();
        match *spec {
            FamilySpec::Metacyclic { q, n, k } => {
                let (a, b) = (g("a"), g("b"));
                a.pow(q as u64).is_identity()
                    && b.pow(n as u64).is_identity()
                    && b.mul(&a.pow(k as u64)) == a.mul(b)
            }
            FamilySpec::Dicyclic { q } => {
                let (a, b) = (g("a"), g("b"));
                a.pow(q as u64).is_identity() && b.pow(4).is_identity() && a.mul(b).mul(a) == *b
            }
            FamilySpec::Quaternion8 => {
                let (i, j, k) = (g("i"), g("j"), g("k"));
                let minus = i.pow(2);
                minus == j.pow(2)
                    && i.mul(j) == *k
                    && i.mul(j).mul(i) == *j
                    && minus.pow(2).is_identity()
            }
            FamilySpec::Cyclic { n } => g("a").pow(n as u64).is_identity(),
        }
    }
}

fn diag(order: u32, exps: &[i64]) -> RootMatrix {
    let n = exps.len();
    let rows: Vec<Vec<Vec<(i64, i64)>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { vec![(exps[i], 1)] } else { vec![] })
                .collect()
        })
        .collect();
    RootMatrix::from_root_sums(order, &rows)
}

/// The explicit realization of a closed-form character of the family.
pub fn matrix_rep(spec: &FamilySpec, table: &CharacterTable, c: usize) -> Result<MatrixRep> {
    if table.family() != Some(spec) || c >= table.len() {
        return Err(invalid(
            "matrix representations need the closed-form table of the same family",
        ));
    }
    let ch = table.character(c);
    let label = ch.label.clone();
    let unknown = || {
        invalid(format!(
            "no explicit representation for character {label:?}"
        ))
    };
    let images: Vec<(String, RootMatrix)> = match *spec {
        FamilySpec::Metacyclic { q, n, k } => {
            let l = q * n;
            if let Some(j) = label.strip_prefix("psi_") {
                let j: i64 = j.parse().map_err(|_| unknown())?;
                vec![
                    ("a".into(), diag(l, &[0])),
                    ("b".into(), diag(l, &[j * q as i64])),
                ]
            } else {
                let i: usize = label
                    .strip_prefix("chi_")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(unknown)?;
                let orbits = k_orbit_data(q, n, k)?;
                let o = orbits.orbits.get(i - 1).ok_or_else(unknown)?;
                let a_exps: Vec<i64> = o.elements.iter().map(|&e| e as i64 * n as i64).collect();
                let nn = n as usize;
                // b sends e_r to e_{r+1}: entries (r+1, r) and (0, n−1).
                let rows: Vec<Vec<Vec<(i64, i64)>>> = (0..nn)
                    .map(|r| {
                        (0..nn)
                            .map(|s| {
                                if r == (s + 1) % nn {
                                    vec![(0, 1)]
                                } else {
                                    vec![]
                                }
                            })
                            .collect()
                    })
                    .collect();
                vec![
                    ("a".into(), diag(l, &a_exps)),
                    ("b".into(), RootMatrix::from_root_sums(l, &rows)),
                ]
            }
        }
        FamilySpec::Dicyclic { q } => {
            let l = 4 * q;
            let ql = q as i64;
            if let Some(j) = label.strip_prefix("psi_").filter(|s| !s.contains('*')) {
                let j: i64 = j.parse().map_err(|_| unknown())?;
                vec![
                    ("a".into(), diag(l, &[0])),
                    ("b".into(), diag(l, &[j * ql])),
                ]
            } else {
                let (twist, rest) = match label.strip_prefix("psi_1*") {
                    Some(r) => (true, r),
                    None => (false, label.as_str()),
                };
                let i: i64 = rest
                    .strip_prefix("chi_")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(unknown)?;
                // c = ζ_q^i + ζ_q^{−i}; a ↦ [[0, 1], [−1, c]], b ↦ s·[[1, −c], [0, −1]] with s = 1 or ζ₄.
                let c = vec![(4 * i, 1), (-4 * i, 1)];
                let neg_c = vec![(4 * i, -1), (-4 * i, -1)];
                let a = RootMatrix::from_root_sums(
                    l,
                    &[vec![vec![], vec![(0, 1)]], vec![vec![(0, -1)], c]],
                );
                let b = RootMatrix::from_root_sums(
                    l,
                    &[vec![vec![(0, 1)], neg_c], vec![vec![], vec![(0, -1)]]],
                );
                let b = if twist { b.scale_root(ql) } else { b };
                vec![("a".into(), a), ("b".into(), b)]
            }
        }
        FamilySpec::Quaternion8 => {
            if label == "chi" {
                // i ↦ [[0, −1], [1, 0]], j ↦ [[0, −ζ₄], [−ζ₄, 0]], k ↦ diag(ζ₄, −ζ₄).
                let i = RootMatrix::from_root_sums(
                    4,
                    &[vec![vec![], vec![(0, -1)]], vec![vec![(0, 1)], vec![]]],
                );
                let j = RootMatrix::from_root_sums(
                    4,
                    &[vec![vec![], vec![(1, -1)]], vec![vec![(1, -1)], vec![]]],
                );
                let k = diag(4, &[1, 3]);
                vec![("i".into(), i), ("j".into(), j), ("k".into(), k)]
            } else {
                let idx: usize = label
                    .strip_prefix("psi_")
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(unknown)?;
                let (ei, ej) = [(0, 0), (0, 2), (2, 0), (2, 2)][idx];
                vec![
                    ("i".into(), diag(4, &[ei])),
                    ("j".into(), diag(4, &[ej])),
                    ("k".into(), diag(4, &[ei + ej])),
                ]
            }
        }
        FamilySpec::Cyclic { n } => {
            let j: i64 = label
                .strip_prefix("psi_")
                .and_then(|s| s.parse().ok())
                .ok_or_else(unknown)?;
            vec![("a".into(), diag(n, &[j]))]
        }
    };
    let degree = images[0].1.dim();
    Ok(MatrixRep {
        degree,
        char_index: c,
        char_label: label,
        images,
    })
}

/// Generator names of the family presentation.
pub fn generator_names(spec: &FamilySpec) -> &'static [&'static str] {
    match spec {
        FamilySpec::Quaternion8 => &["i", "j"],
        FamilySpec::Cyclic { .. } => &["a"],
        _ => &["a", "b"],
    }
}

/// Group element corresponding to a generator name.
pub fn generator_element(spec: &FamilySpec, name: &str) -> Option<usize> {
    spec.symbols()
        .into_iter()
        .find(|(s, _)| *s == name)
        .map(|(_, x)| x)
}

/// Every family instance of order at most `max_order` (metacyclic with the least multiplier).
pub fn instances_up_to(max_order: usize) -> Vec<FamilySpec> {
    let mut out = vec![];
    for q in (3..=max_order as u32).filter(|&q| is_prime(q as u64)) {
        for n in (2..q).filter(|n| (q - 1) % n == 0) {
            if (q * n) as usize <= max_order {
                out.push(FamilySpec::metacyclic(q, n, None).unwrap());
            }
        }
        if 4 * q as usize <= max_order {
            out.push(FamilySpec::Dicyclic { q });
        }
    }
    if max_order >= 8 {
        out.push(FamilySpec::Quaternion8);
    }
    for n in 2..=max_order as u32 {
        out.push(FamilySpec::Cyclic { n });
    }
    out
}

/// gcd helper exposed for reports.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}
