//! Exact character tables, Frobenius–Schur indicators, duals, Galois orbits and Schur data.

use std::collections::HashMap;
use std::sync::Arc;

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cyclotomic::{Cyclotomic, Reducer, RootSum};
use crate::dixon;
use crate::error::{internal, Error, Result};
use crate::families::{FamilyKind, FamilySpec};
use crate::group::FiniteGroup;
use crate::modp::{inv_mod, mul_mod, pow_mod, prime_one_mod, primitive_root};

/// Prime-field image of Q(ζ_e): a prime p ≡ 1 (mod e) and a fixed primitive e-th root z.
#[derive(Debug, Clone)]
pub struct ModContext {
    pub p: u64,
    pub e: u32,
    pub z: u64,
    dlog: HashMap<u64, u32>,
}

impl ModContext {
    pub fn new(exponent: u32, group_order: usize) -> Self {
        let e = exponent as u64;
        let bound = ((2.0 * (group_order as f64).sqrt() * e as f64).ceil() as u64).max(1 << 24);
        let p = prime_one_mod(e, bound);
        let z = pow_mod(primitive_root(p), (p - 1) / e, p);
        let mut dlog = HashMap::with_capacity(exponent as usize);
        let mut w = 1;
        for k in 0..exponent {
            dlog.insert(w, k);
            w = mul_mod(w, z, p);
        }
        ModContext {
            p,
            e: exponent,
            z,
            dlog,
        }
    }

    /// The image of ζ_m for m dividing e.
    pub fn root(&self, m: u32) -> u64 {
        pow_mod(self.z, (self.e / m) as u64, self.p)
    }

    /// k with z^k = v, if v is an e-th root of unity.
    pub fn dlog(&self, v: u64) -> Option<u32> {
        self.dlog.get(&v).copied()
    }
}

/// Recovers eigenvalue counts E_α (α mod m) from the images of χ(x^j), j = 0..m−1.
pub fn dft_counts(ctx: &ModContext, values: &[u64], degree: u32) -> Result<Vec<u32>> {
    let m = values.len() as u32;
    if ctx.e % m != 0 {
        return Err(internal(format!(
            "element order {m} does not divide the exponent {}",
            ctx.e
        )));
    }
    let p = ctx.p;
    let mut counts = vec![0u32; m as usize];
    if degree == 1 && m > 1 {
        let k = ctx
            .dlog(values[1])
            .ok_or_else(|| internal("linear character value is not a root of unity"))?;
        let step = ctx.e / m;
        if k % step != 0 {
            return Err(internal("linear character value has the wrong order"));
        }
        counts[(k / step) as usize] = 1;
        return Ok(counts);
    }
    let zm = ctx.root(m);
    let mut pw = vec![1u64; m as usize];
    for k in 1..m as usize {
        pw[k] = mul_mod(pw[k - 1], zm, p);
    }
    let inv_m = inv_mod(m as u64 % p, p);
    let mut total = 0u64;
    for alpha in 0..m as u64 {
        let mut s = 0u64;
        for (j, &v) in values.iter().enumerate() {
            if v != 0 {
                let idx = (m as u64 - (alpha * j as u64) % m as u64) % m as u64;
                s = (s + mul_mod(v, pw[idx as usize], p)) % p;
            }
        }
        let ea = mul_mod(s, inv_m, p);
        if ea > degree as u64 {
            return Err(internal(format!(
                "eigenvalue count is not an integer in [0, {degree}]; corrupt character or wrong order"
            )));
        }
        counts[alpha as usize] = ea as u32;
        total += ea;
    }
    if total != degree as u64 {
        return Err(internal("eigenvalue counts do not sum to the degree"));
    }
    Ok(counts)
}

/// Σ_α E_α ζ_m^α as an exact value of order m.
pub fn synthesize(counts: &[u32], reducer: &Reducer) -> Cyclotomic {
    let v: Vec<i128> = counts.iter().map(|&c| c as i128).collect();
    reducer.to_cyclotomic(&v)
}

#[derive(Debug, Clone)]
pub struct Character {
    pub label: String,
    pub degree: u32,
    /// Eigenvalue counts of a representing matrix on each class representative.
    pub counts: Vec<Vec<u32>>,
    support: Vec<Vec<(u32, u32)>>,
    values_mod_p: Vec<u64>,
}

impl Character {
    fn new(label: String, degree: u32, counts: Vec<Vec<u32>>, values_mod_p: Vec<u64>) -> Self {
        let support = counts
            .iter()
            .map(|cnt| {
                cnt.iter()
                    .enumerate()
                    .filter(|(_, &n)| n > 0)
                    .map(|(a, &n)| (a as u32, n))
                    .collect()
            })
            .collect();
        Character {
            label,
            degree,
            counts,
            support,
            values_mod_p,
        }
    }

    /// Value on class c, in Q(ζ_m) with m the order of the class representative.
    pub fn value(&self, c: usize) -> Cyclotomic {
        let cnt = &self.counts[c];
        synthesize(cnt, &Reducer::new(cnt.len() as u32))
    }

    pub fn values(&self) -> Vec<Cyclotomic> {
        (0..self.counts.len()).map(|c| self.value(c)).collect()
    }

    /// Nonzero (α, E_α) pairs on class c.
    pub fn eigen_support(&self, c: usize) -> &[(u32, u32)] {
        &self.support[c]
    }

    pub fn values_mod_p(&self) -> &[u64] {
        &self.values_mod_p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SchurIndex {
    One,
    Two,
    Unknown,
}

impl SchurIndex {
    pub fn value(self) -> Option<u32> {
        match self {
            SchurIndex::One => Some(1),
            SchurIndex::Two => Some(2),
            SchurIndex::Unknown => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SchurData {
    pub indicator: i8,
    pub char_field_degree_q: usize,
    pub m_q: SchurIndex,
    pub m_qi4: SchurIndex,
}

#[derive(Debug, Clone)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    chars: Vec<Character>,
    class_orders: Vec<u32>,
    power_maps: Vec<Vec<usize>>,
    ctx: ModContext,
    duals: Vec<usize>,
    indicators: Vec<i8>,
    orbits_q: Vec<Vec<usize>>,
    orbits_qi4: Vec<Vec<usize>>,
    family: Option<FamilySpec>,
}

/// Generic table by the modular eigenvector method.
pub fn character_table(group: &Arc<FiniteGroup>, max_order: usize) -> Result<CharacterTable> {
    if group.order() > max_order {
        return Err(Error::Resource(format!(
            "character table of a group of order {} exceeds the bound {max_order}",
            group.order()
        )));
    }
    let ctx = ModContext::new(group.exponent() as u32, group.order());
    let power_maps = power_maps(group);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    let rows = dixon::character_values_mod_p(group, &ctx, &mut rng)?;
    let mut chars = Vec::with_capacity(rows.len());
    for (degree, vals) in rows {
        let counts = counts_from_mod_p(group, &ctx, &power_maps, &vals, degree)?;
        chars.push(Character::new(String::new(), degree, counts, vals));
    }
    let trivial = |c: &Character| c.degree == 1 && c.values_mod_p.iter().all(|&v| v == 1);
    chars.sort_by(|a, b| {
        (a.degree, !trivial(a))
            .cmp(&(b.degree, !trivial(b)))
            .then_with(|| b.counts.cmp(&a.counts))
    });
    for (i, c) in chars.iter_mut().enumerate() {
        c.label = format!("X{}", i + 1);
    }
    CharacterTable::finish(group.clone(), chars, power_maps, ctx, None)
}

fn class_order(group: &FiniteGroup, c: usize) -> u32 {
    group.element_order(group.classes().representatives[c]) as u32
}

fn power_maps(group: &FiniteGroup) -> Vec<Vec<usize>> {
    group
        .classes()
        .representatives
        .iter()
        .map(|&x| {
            let m = group.element_order(x);
            let mut out = Vec::with_capacity(m);
            let mut y = group.identity();
            for _ in 0..m {
                out.push(group.class_of(y));
                y = group.mul(y, x);
            }
            out
        })
        .collect()
}

fn reducers_for(group: &FiniteGroup) -> HashMap<u32, Reducer> {
    let mut map = HashMap::new();
    for c in 0..group.classes().len() {
        let m = class_order(group, c);
        map.entry(m).or_insert_with(|| Reducer::new(m));
    }
    map
}

fn counts_from_mod_p(
    group: &FiniteGroup,
    ctx: &ModContext,
    power_maps: &[Vec<usize>],
    vals: &[u64],
    degree: u32,
) -> Result<Vec<Vec<u32>>> {
    (0..group.classes().len())
        .map(|c| {
            let powers: Vec<u64> = power_maps[c].iter().map(|&k| vals[k]).collect();
            dft_counts(ctx, &powers, degree)
        })
        .collect()
}

impl CharacterTable {
    /// Assembles a table from closed-form rows of root sums, recovering and verifying eigenvalue counts.
    ///
    /// The value on class c must be given over the order of the class representative.
    pub fn from_exact_rows(
        group: Arc<FiniteGroup>,
        rows: impl IntoIterator<Item = Result<(String, Vec<RootSum>)>>,
        family: Option<FamilySpec>,
    ) -> Result<Self> {
        let ctx = ModContext::new(group.exponent() as u32, group.order());
        let power_maps = power_maps(&group);
        let reducers = reducers_for(&group);
        let h = group.classes().len();
        let id_class = group.class_of(group.identity());
        let mut root_powers: HashMap<u32, Vec<u64>> = HashMap::new();
        for c in 0..h {
            let m = class_order(&group, c);
            root_powers.entry(m).or_insert_with(|| {
                let z = ctx.root(m);
                std::iter::successors(Some(1u64), |&w| Some(mul_mod(w, z, ctx.p)))
                    .take(m as usize)
                    .collect()
            });
        }
        let mut chars = Vec::with_capacity(h);
        for row in rows {
            let (label, values) = row?;
            if values.len() != h {
                return Err(internal(format!(
                    "character {label} has {} values for {h} classes",
                    values.len()
                )));
            }
            for (c, v) in values.iter().enumerate() {
                let m = class_order(&group, c);
                if v.order() != m {
                    return Err(internal(format!(
                        "value of {label} on class {c} is not given over order {m}"
                    )));
                }
            }
            let reduce = |c: usize| reducers[&values[c].order()].reduce(values[c].counts());
            let degree = match reduce(id_class).as_slice() {
                [d] if *d > 0 => u32::try_from(*d).ok(),
                _ => None,
            }
            .ok_or_else(|| internal(format!("character {label} has no positive integer degree")))?;
            let p = ctx.p as i128;
            let vals_mod_p: Vec<u64> = values
                .iter()
                .map(|v| {
                    let pw = &root_powers[&v.order()];
                    v.counts().iter().enumerate().filter(|(_, &n)| n != 0).fold(
                        0u64,
                        |acc, (k, &n)| {
                            (acc + mul_mod(n.rem_euclid(p) as u64, pw[k], ctx.p)) % ctx.p
                        },
                    )
                })
                .collect();
            let counts = counts_from_mod_p(&group, &ctx, &power_maps, &vals_mod_p, degree)?;
            for (c, cnt) in counts.iter().enumerate() {
                let given = values[c].counts();
                if cnt.len() == given.len() && cnt.iter().zip(given).all(|(&a, &b)| a as i128 == b)
                {
                    continue;
                }
                let m = class_order(&group, c);
                let v: Vec<i128> = cnt.iter().map(|&n| n as i128).collect();
                if reducers[&m].reduce(&v) != reduce(c) {
                    return Err(internal(format!(
                        "eigenvalue counts of {label} on class {c} do not reproduce its value"
                    )));
                }
            }
            chars.push(Character::new(label, degree, counts, vals_mod_p));
        }
        Self::finish(group, chars, power_maps, ctx, family)
    }

    fn finish(
        group: Arc<FiniteGroup>,
        chars: Vec<Character>,
        power_maps: Vec<Vec<usize>>,
        ctx: ModContext,
        family: Option<FamilySpec>,
    ) -> Result<Self> {
        let h = group.classes().len();
        if chars.len() != h {
            return Err(internal(format!(
                "{} characters for {h} classes",
                chars.len()
            )));
        }
        let class_orders = (0..h).map(|c| class_order(&group, c)).collect();
        let mut t = CharacterTable {
            group,
            chars,
            class_orders,
            power_maps,
            ctx,
            duals: vec![],
            indicators: vec![],
            orbits_q: vec![],
            orbits_qi4: vec![],
            family,
        };
        // Columns that separate all rows; images are located on these and then compared in full.
        let mut keys: Vec<Vec<u64>> = vec![vec![]; h];
        let mut key_cols = vec![];
        let mut distinct = 1;
        for c in 0..h {
            if distinct == h {
                break;
            }
            let mut trial: Vec<Vec<u64>> = keys.clone();
            for (k, ch) in trial.iter_mut().zip(&t.chars) {
                k.push(ch.values_mod_p[c]);
            }
            let n = trial.iter().collect::<std::collections::HashSet<_>>().len();
            if n > distinct {
                distinct = n;
                keys = trial;
                key_cols.push(c);
            }
        }
        if distinct != h {
            return Err(internal("character table has repeated rows"));
        }
        let index: HashMap<Vec<u64>, usize> =
            keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let e = t.ctx.e as i64;
        let galois_images = |t: &CharacterTable, s: i64| -> Result<Vec<usize>> {
            let pm = t.group.power_class_map(s);
            (0..h)
                .map(|i| {
                    let row = &t.chars[i].values_mod_p;
                    let key: Vec<u64> = key_cols.iter().map(|&c| row[pm[c]]).collect();
                    index
                        .get(&key)
                        .copied()
                        .filter(|&j| {
                            let other = &t.chars[j].values_mod_p;
                            pm.iter().enumerate().all(|(c, &d)| other[c] == row[d])
                        })
                        .ok_or_else(|| internal("Galois image of a character is missing"))
                })
                .collect()
        };
        t.duals = galois_images(&t, -1)?;
        let units_q: Vec<i64> = (1..=e.max(1)).filter(|s| s.gcd(&e) == 1).collect();
        let l = e.lcm(&4);
        let units_qi4: Vec<i64> = (1..=l)
            .filter(|s| s.gcd(&l) == 1 && s % 4 == 1)
            .map(|s| s % e.max(1))
            .collect();
        let mut images = HashMap::new();
        for &s in units_q.iter().chain(&units_qi4) {
            if images.contains_key(&s) {
                continue;
            }
            images.insert(s, galois_images(&t, s)?);
        }
        t.orbits_q = orbits(h, units_q.iter().map(|s| &images[s]));
        t.orbits_qi4 = orbits(h, units_qi4.iter().map(|s| &images[s]));
        let sq = t.group.square_class_map();
        let red = Reducer::new(t.ctx.e);
        t.indicators = (0..h)
            .map(|i| t.compute_indicator(i, &sq, &red))
            .collect::<Result<_>>()?;
        Ok(t)
    }

    fn compute_indicator(&self, i: usize, sq: &[usize], red: &Reducer) -> Result<i8> {
        let g = &self.group;
        let e = self.ctx.e;
        let mut acc = RootSum::new(e);
        for (c, &s) in sq.iter().enumerate() {
            let size = g.classes().sizes[c] as i128;
            let step = (e / self.class_orders[s]) as i64;
            for &(alpha, n) in self.chars[i].eigen_support(s) {
                acc.add_root(alpha as i64 * step, size * n as i128);
            }
        }
        let v = red.reduce(acc.counts());
        let n = g.order() as i128;
        if v.iter().skip(1).any(|&x| x != 0) || v[0] % n != 0 || !(-1..=1).contains(&(v[0] / n)) {
            return Err(internal(format!(
                "Frobenius-Schur sum of {} is not in {{-1, 0, 1}}; corrupt table",
                self.chars[i].label
            )));
        }
        Ok((v[0] / n) as i8)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn family(&self) -> Option<&FamilySpec> {
        self.family.as_ref()
    }

    pub fn chars(&self) -> &[Character] {
        &self.chars
    }

    pub fn character(&self, i: usize) -> &Character {
        &self.chars[i]
    }

    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn class_orders(&self) -> &[u32] {
        &self.class_orders
    }

    /// Class of g_c^j for 0 ≤ j < ord(g_c).
    pub fn power_map(&self, c: usize) -> &[usize] {
        &self.power_maps[c]
    }

    pub fn mod_context(&self) -> &ModContext {
        &self.ctx
    }

    pub fn exponent(&self) -> u32 {
        self.ctx.e
    }

    pub fn trivial_index(&self) -> usize {
        self.chars
            .iter()
            .position(|c| c.degree == 1 && c.values_mod_p.iter().all(|&v| v == 1))
            .expect("every table contains the trivial character")
    }

    pub fn duals(&self) -> &[usize] {
        &self.duals
    }

    pub fn dual(&self, i: usize) -> usize {
        self.duals[i]
    }

    pub fn indicator(&self, i: usize) -> i8 {
        self.indicators[i]
    }

    pub fn galois_orbits_q(&self) -> &[Vec<usize>] {
        &self.orbits_q
    }

    pub fn galois_orbits_qi4(&self) -> &[Vec<usize>] {
        &self.orbits_qi4
    }

    pub fn orbit_q_of(&self, i: usize) -> &[usize] {
        self.orbits_q
            .iter()
            .find(|o| o.contains(&i))
            .expect("orbits partition the characters")
    }

    pub fn orbit_qi4_of(&self, i: usize) -> &[usize] {
        self.orbits_qi4
            .iter()
            .find(|o| o.contains(&i))
            .expect("orbits partition the characters")
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.chars.iter().position(|c| c.label == label)
    }

    /// Index of the row equal to the given mod-p value vector.
    pub fn index_of_values(&self, vals: &[u64]) -> Option<usize> {
        self.chars.iter().position(|c| c.values_mod_p == vals)
    }

    /// Exact ⟨χ_i, χ_j⟩·#G, via eigenvalue counts.
    pub fn inner_product_times_order(&self, i: usize, j: usize) -> Result<i128> {
        let e = self.ctx.e;
        let mut acc = RootSum::new(e);
        for c in 0..self.class_orders.len() {
            let size = self.group.classes().sizes[c] as i128;
            let step = (e / self.class_orders[c]) as i64;
            let a = &self.chars[i].counts[c];
            let b = &self.chars[j].counts[c];
            for (x, &na) in a.iter().enumerate().filter(|(_, &n)| n > 0) {
                for (y, &nb) in b.iter().enumerate().filter(|(_, &n)| n > 0) {
                    acc.add_root((x as i64 - y as i64) * step, size * (na * nb) as i128);
                }
            }
        }
        rational_integer(&Reducer::new(e).reduce(acc.counts()))
    }

    /// Exact Σ_χ χ(g_c)·conj χ(g_d).
    pub fn column_product(&self, c: usize, d: usize) -> Result<i128> {
        let e = self.ctx.e;
        let mut acc = RootSum::new(e);
        let sc = (e / self.class_orders[c]) as i64;
        let sd = (e / self.class_orders[d]) as i64;
        for ch in &self.chars {
            for (x, &na) in ch.counts[c].iter().enumerate().filter(|(_, &n)| n > 0) {
                for (y, &nb) in ch.counts[d].iter().enumerate().filter(|(_, &n)| n > 0) {
                    acc.add_root(x as i64 * sc - y as i64 * sd, (na * nb) as i128);
                }
            }
        }
        rational_integer(&Reducer::new(e).reduce(acc.counts()))
    }

    /// Exact check of row and column orthogonality.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let n = self.group.order() as i128;
        let h = self.len();
        for i in 0..h {
            for j in i..h {
                let ip = self.inner_product_times_order(i, j)?;
                if ip != if i == j { n } else { 0 } {
                    return Err(internal(format!("row orthogonality fails for ({i}, {j})")));
                }
            }
        }
        let sizes = &self.group.classes().sizes;
        for c in 0..h {
            for d in c..h {
                let v = self.column_product(c, d)?;
                let want = if c == d { n / sizes[c] as i128 } else { 0 };
                if v != want {
                    return Err(internal(format!(
                        "column orthogonality fails for ({c}, {d})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The character m·Σ_{σ} σ∘χ over the Q-Galois orbit of χ, as exact class-function values.
    pub fn rational_character(&self, i: usize, m: u32) -> Vec<Cyclotomic> {
        let orbit = self.orbit_q_of(i);
        (0..self.class_orders.len())
            .map(|c| {
                let mut acc = RootSum::new(self.class_orders[c]);
                for &j in orbit {
                    for (a, &n) in self.chars[j].counts[c].iter().enumerate() {
                        acc.add_root(a as i64, (n * m) as i128);
                    }
                }
                acc.to_cyclotomic()
            })
            .collect()
    }

    /// Table export: class data and exact values.
    pub fn to_json(&self) -> Value {
        let g = &self.group;
        let cl = g.classes();
        json!({
            "classes": (0..self.len()).map(|c| json!({
                "representative": g.label(cl.representatives[c]),
                "size": cl.sizes[c],
                "order": self.class_orders[c],
            })).collect::<Vec<_>>(),
            "characters": self.chars.iter().enumerate().map(|(i, ch)| json!({
                "index": i,
                "label": ch.label,
                "degree": ch.degree,
                "indicator": self.indicators[i],
                "dual": self.duals[i],
                "values": ch.values().iter().map(Cyclotomic::to_json).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

fn rational_integer(v: &[i128]) -> Result<i128> {
    if v.iter().skip(1).any(|&x| x != 0) {
        return Err(internal("expected a rational integer"));
    }
    Ok(v.first().copied().unwrap_or(0))
}

fn orbits<'a>(h: usize, perms: impl Iterator<Item = &'a Vec<usize>>) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..h).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for perm in perms {
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = vec![];
    let mut slot = HashMap::new();
    for i in 0..h {
        let r = find(&mut parent, i);
        let k = *slot.entry(r).or_insert_with(|| {
            groups.push(vec![]);
            groups.len() - 1
        });
        groups[k].push(i);
    }
    groups
}

pub fn frobenius_schur(table: &CharacterTable, c: usize) -> i8 {
    table.indicator(c)
}

pub fn dual_character(table: &CharacterTable, c: usize) -> usize {
    table.dual(c)
}

/// Indicator, character-field degree and the Schur indices the family data can certify.
pub fn schur_data(table: &CharacterTable, c: usize, family_hint: Option<&FamilySpec>) -> SchurData {
    let indicator = table.indicator(c);
    let degree = table.character(c).degree;
    let hint = family_hint.or(table.family());
    let m_q = if indicator == -1 {
        SchurIndex::Two
    } else if degree == 1 {
        SchurIndex::One
    } else {
        match hint.map(|f| f.kind()) {
            Some(FamilyKind::Metacyclic | FamilyKind::Dicyclic | FamilyKind::Cyclic) => {
                SchurIndex::One
            }
            _ => SchurIndex::Unknown,
        }
    };
    let m_qi4 = match (m_q, hint) {
        (SchurIndex::One, _) => SchurIndex::One,
        (_, Some(f)) if matches!(f.kind(), FamilyKind::Dicyclic | FamilyKind::Quaternion8) => {
            SchurIndex::One
        }
        _ => SchurIndex::Unknown,
    };
    SchurData {
        indicator,
        char_field_degree_q: table.orbit_q_of(c).len(),
        m_q,
        m_qi4,
    }
}

/// (n_i, [Q(χ):Q]) for the Wedderburn component M_{n_i}(Δ_i) housing χ.
pub fn rational_component_dims(
    table: &CharacterTable,
    c: usize,
    family_hint: Option<&FamilySpec>,
) -> Result<(u32, usize)> {
    let s = schur_data(table, c, family_hint);
    let m = s.m_q.value().ok_or_else(|| {
        Error::Unsupported(format!(
            "Schur index of {} over Q is unknown",
            table.character(c).label
        ))
    })?;
    Ok((table.character(c).degree / m, s.char_field_degree_q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build_group, family_character_table};

    fn cyclic(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_fn(n, |a, b| (a + b) % n, None).unwrap())
    }

    #[test]
    fn cyclic_four() {
        let g = cyclic(4);
        let t = character_table(&g, 256).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.trivial_index(), 0);
        for ch in t.chars() {
            assert_eq!(ch.degree, 1);
        }
        // Some character sends the generator to ζ₄.
        assert!(t
            .chars()
            .iter()
            .any(|ch| ch.value(1) == Cyclotomic::root_of_unity(4, 1)));
        t.verify_orthogonality().unwrap();
        let real: Vec<i8> = (0..4).map(|i| t.indicator(i)).collect();
        assert_eq!(real.iter().filter(|&&x| x == 0).count(), 2);
    }

    #[test]
    fn generic_matches_closed_form_for_small_families() {
        for s in [
            "quaternion8",
            "dicyclic:q=5",
            "metacyclic:q=7,n=3",
            "cyclic:n=6",
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            let g = Arc::new(build_group(&spec).unwrap());
            let closed = family_character_table(&spec, &g).unwrap();
            let generic = character_table(&g, 256).unwrap();
            assert_eq!(closed.len(), generic.len());
            for ch in closed.chars() {
                let j = generic.index_of_values(ch.values_mod_p()).unwrap();
                assert_eq!(generic.character(j).values(), ch.values(), "{s}");
            }
        }
    }

    #[test]
    fn dicyclic_five_degrees_and_indicators() {
        let spec: FamilySpec = "dicyclic:q=5".parse().unwrap();
        let g = Arc::new(build_group(&spec).unwrap());
        let t = character_table(&g, 256).unwrap();
        let degrees: Vec<u32> = t.chars().iter().map(|c| c.degree).collect();
        assert_eq!(degrees, vec![1, 1, 1, 1, 2, 2, 2, 2]);
        let mut ind: Vec<i8> = (0..8).map(|i| t.indicator(i)).collect();
        ind.sort();
        assert_eq!(ind, vec![-1, -1, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn order_bound() {
        let g = cyclic(10);
        assert!(matches!(character_table(&g, 8), Err(Error::Resource(_))));
    }
}
