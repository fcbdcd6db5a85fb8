//! Eigenvalue profiles, Chevalley–Weil multiplicities, the specialness invariant N and the
//! isotypic bookkeeping behind the CM criteria.

use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::chartable::{dft_counts, schur_data, CharacterTable, SchurIndex};
use crate::cyclotomic::Cyclotomic;
use crate::error::{internal, Result};
use crate::monodromy::MonodromyDatum;

/// E_α = (1/m) Σ_j χ(x^j) ζ_m^{−αj}.
///
/// The sum is evaluated in the prime-field image of Z[ζ_e]; it is the integer m·E_α, so the
/// result is exact once p exceeds m·χ(1). Otherwise the transform runs in Q(ζ_m).
pub fn eigen_counts(table: &CharacterTable, c: usize, x: usize) -> Result<Vec<u32>> {
    let g = table.group();
    let m = g.element_order(x) as u32;
    let ch = table.character(c);
    let ctx = table.mod_context();
    if ctx.p > m as u64 * ch.degree as u64 {
        let vals: Vec<u64> = (0..m)
            .map(|j| ch.values_mod_p()[g.class_of(g.pow(x, j as i64))])
            .collect();
        return dft_counts(ctx, &vals, ch.degree);
    }
    let vals: Vec<Cyclotomic> = (0..m)
        .map(|j| ch.value(g.class_of(g.pow(x, j as i64))).lift(m))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(m as usize);
    for alpha in 0..m as i64 {
        let mut acc = Cyclotomic::zero();
        for (j, v) in vals.iter().enumerate() {
            if !v.is_zero() {
                acc = &acc + &(v * &Cyclotomic::root_of_unity(m, -alpha * j as i64));
            }
        }
        let e = acc
            .to_rational()
            .map(|r| r / num_rational::BigRational::from_integer((m as i64).into()))
            .filter(|r| r.is_integer())
            .and_then(|r| num_traits::ToPrimitive::to_u32(&r.to_integer()))
            .ok_or_else(|| {
                internal(format!(
                    "eigenvalue count of {} at order {m} is not a nonnegative integer",
                    ch.label
                ))
            })?;
        out.push(e);
    }
    Ok(out)
}

/// Eigenvalue profile of χ along the datum, read from the table's cached counts.
pub fn eigen_profile(table: &CharacterTable, c: usize, d: &MonodromyDatum) -> [Vec<u32>; 3] {
    let g = table.group();
    d.x.map(|x| table.character(c).counts[g.class_of(x)].clone())
}

fn multiplicities_for_classes(table: &CharacterTable, classes: [usize; 3]) -> Result<Vec<u32>> {
    let m = classes.map(|c| table.class_orders()[c] as i64);
    let l = m[0].lcm(&m[1]).lcm(&m[2]);
    let w = m.map(|mk| l / mk);
    let trivial = table.trivial_index();
    table
        .chars()
        .iter()
        .enumerate()
        .map(|(i, ch)| {
            // L·Σ_i Σ_α E_{i,α} ⟨−α/m_i⟩
            let mut num: i64 = 0;
            for (k, &c) in classes.iter().enumerate() {
                for &(alpha, e) in ch.eigen_support(c) {
                    if alpha > 0 {
                        num += e as i64 * (m[k] - alpha as i64) * w[k];
                    }
                }
            }
            if num % l != 0 {
                return Err(internal(format!(
                    "Chevalley–Weil sum of {} is not integral",
                    ch.label
                )));
            }
            let eps = i64::from(i == trivial);
            let mu = -(ch.degree as i64) + num / l + eps;
            u32::try_from(mu)
                .map_err(|_| internal(format!("negative multiplicity for {}", ch.label)))
        })
        .collect()
}

/// Multiplicity of every irreducible in H⁰(C, ω_C), with the dimension and trivial-character checks.
pub fn chevalley_weil(d: &MonodromyDatum, table: &CharacterTable) -> Result<Vec<u32>> {
    let g = table.group();
    let mu = multiplicities_for_classes(table, d.x.map(|x| g.class_of(x)))?;
    check_multiplicities(&mu, table, d.genus(g)?)?;
    Ok(mu)
}

fn check_multiplicities(mu: &[u32], table: &CharacterTable, genus: u64) -> Result<()> {
    let total: u64 = mu
        .iter()
        .zip(table.chars())
        .map(|(&m, c)| m as u64 * c.degree as u64)
        .sum();
    if total != genus {
        return Err(internal(format!(
            "Σ μ_χ χ(1) = {total} but the genus is {genus}"
        )));
    }
    if mu[table.trivial_index()] != 0 {
        return Err(internal("the trivial character occurs in H⁰"));
    }
    Ok(())
}

/// Chevalley–Weil evaluation memoized on the unordered class triple.
pub struct MultiplicityCache<'a> {
    table: &'a CharacterTable,
    cache: HashMap<[usize; 3], Vec<u32>>,
}

impl<'a> MultiplicityCache<'a> {
    pub fn new(table: &'a CharacterTable) -> Self {
        MultiplicityCache {
            table,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, d: &MonodromyDatum) -> Result<&[u32]> {
        let g = self.table.group();
        let mut key = d.x.map(|x| g.class_of(x));
        key.sort_unstable();
        if !self.cache.contains_key(&key) {
            let mu = multiplicities_for_classes(self.table, key)?;
            check_multiplicities(&mu, self.table, d.genus(g)?)?;
            self.cache.insert(key, mu);
        }
        Ok(&self.cache[&key])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharMultiplicity {
    pub index: usize,
    pub label: String,
    pub degree: u32,
    pub mu: u32,
    pub indicator: i8,
    pub dual: usize,
}

/// A clause of the N = 0 characterization that fails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "kebab-case")]
pub enum Violation {
    /// An orthogonal character occurs in H⁰.
    OrthogonalPositive {
        index: usize,
        label: String,
        mu: u32,
    },
    /// A complex character and its dual both occur.
    ComplexPairPositive {
        index: usize,
        dual: usize,
        label: String,
        mu: u32,
        mu_dual: u32,
    },
    /// A symplectic character occurs more than once.
    SymplecticMultiple {
        index: usize,
        label: String,
        mu: u32,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialReport {
    #[serde(rename = "N")]
    pub n: u64,
    pub special: bool,
    pub chars: Vec<CharMultiplicity>,
    pub violated: Vec<Violation>,
}

/// N = ½ Σ μ_χ (μ_χ* + ι_χ), with the failing clauses itemized.
pub fn specialness(mu: &[u32], table: &CharacterTable) -> Result<SpecialReport> {
    let mut twice: i64 = 0;
    let mut chars = vec![];
    let mut violated = vec![];
    for (i, ch) in table.chars().iter().enumerate() {
        let dual = table.dual(i);
        let ind = table.indicator(i);
        twice += mu[i] as i64 * (mu[dual] as i64 + ind as i64);
        chars.push(CharMultiplicity {
            index: i,
            label: ch.label.clone(),
            degree: ch.degree,
            mu: mu[i],
            indicator: ind,
            dual,
        });
        if mu[i] == 0 {
            continue;
        }
        match ind {
            1 => violated.push(Violation::OrthogonalPositive {
                index: i,
                label: ch.label.clone(),
                mu: mu[i],
            }),
            0 if mu[dual] > 0 && i < dual => violated.push(Violation::ComplexPairPositive {
                index: i,
                dual,
                label: ch.label.clone(),
                mu: mu[i],
                mu_dual: mu[dual],
            }),
            -1 if mu[i] >= 2 => violated.push(Violation::SymplecticMultiple {
                index: i,
                label: ch.label.clone(),
                mu: mu[i],
            }),
            _ => {}
        }
    }
    if twice < 0 || twice % 2 != 0 {
        return Err(internal(format!(
            "2N = {twice} is not a nonnegative even integer"
        )));
    }
    let n = (twice / 2) as u64;
    if (n == 0) != violated.is_empty() {
        return Err(internal("N and the clause test disagree"));
    }
    Ok(SpecialReport {
        n,
        special: n == 0,
        chars,
        violated,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CmCriterion {
    CmComplex,
    CmSymplectic,
    NotCmCriterion,
    ZeroComponent,
}

/// One rational Wedderburn component, indexed by a Q-Galois orbit of characters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub orbit: Vec<usize>,
    pub labels: Vec<String>,
    pub degree: u32,
    pub indicator: i8,
    pub field_degree_q: usize,
    pub m_q: SchurIndex,
    pub m_qi4: SchurIndex,
    /// ½ Σ_orbit (μ_σχ + μ_σχ*)·χ(1).
    pub dim_a: u64,
    /// χ(1)/m_Q, when the Schur index is known.
    pub n_i: Option<u32>,
    /// (μ_χ + μ_χ*)/m_Q for the first character of the orbit.
    pub w_multiplicity: Option<u32>,
    /// dim A / n_i.
    pub dim_b: Option<u64>,
    pub criterion: CmCriterion,
    /// True when the component is live but its Schur index is unknown.
    pub undetermined: bool,
}

/// The CM criteria for the component of the Q-Galois orbit `orbit`.
pub fn cm_criterion(mu: &[u32], table: &CharacterTable, orbit: &[usize]) -> CmCriterion {
    let c = orbit[0];
    let ch = table.character(c);
    let two_dim_a: u64 = orbit
        .iter()
        .map(|&i| (mu[i] + mu[table.dual(i)]) as u64 * table.character(i).degree as u64)
        .sum();
    if two_dim_a == 0 {
        return CmCriterion::ZeroComponent;
    }
    let s = schur_data(table, c, None);
    if table.indicator(c) == -1 {
        if s.m_qi4 == SchurIndex::One {
            // d₁ = 2·n_i·[K(χ):Q] with K = Q(ζ₄).
            let n_i = (ch.degree / 2) as u64;
            let k_degree = 2 * table.orbit_qi4_of(c).len() as u64;
            if 2 * n_i * k_degree == two_dim_a {
                return CmCriterion::CmSymplectic;
            }
        }
        return CmCriterion::NotCmCriterion;
    }
    match s.m_q.value() {
        Some(m) => {
            // d₀ = n_i·m_Q·[Q(χ):Q].
            let d0 = (ch.degree / m) as u64 * m as u64 * orbit.len() as u64;
            if d0 == two_dim_a {
                CmCriterion::CmComplex
            } else {
                CmCriterion::NotCmCriterion
            }
        }
        None => CmCriterion::NotCmCriterion,
    }
}

/// Dimension accounting for every rational component.
pub fn isotypic_dims(mu: &[u32], table: &CharacterTable) -> Result<Vec<Component>> {
    let mut out = vec![];
    for orbit in table.galois_orbits_q() {
        let c = orbit[0];
        let ch = table.character(c);
        let s = schur_data(table, c, None);
        let two_dim_a: u64 = orbit
            .iter()
            .map(|&i| (mu[i] + mu[table.dual(i)]) as u64 * table.character(i).degree as u64)
            .sum();
        if two_dim_a % 2 != 0 {
            return Err(internal(format!(
                "odd 2·dim A on the component of {}",
                ch.label
            )));
        }
        let dim_a = two_dim_a / 2;
        let n_i = s.m_q.value().map(|m| ch.degree / m);
        let pair = mu[c] + mu[table.dual(c)];
        let w_multiplicity = s
            .m_q
            .value()
            .and_then(|m| (pair % m == 0).then_some(pair / m));
        let dim_b = n_i.and_then(|n| (dim_a % n as u64 == 0).then_some(dim_a / n as u64));
        out.push(Component {
            orbit: orbit.clone(),
            labels: orbit
                .iter()
                .map(|&i| table.character(i).label.clone())
                .collect(),
            degree: ch.degree,
            indicator: table.indicator(c),
            field_degree_q: orbit.len(),
            m_q: s.m_q,
            m_qi4: s.m_qi4,
            dim_a,
            n_i,
            w_multiplicity,
            dim_b,
            criterion: cm_criterion(mu, table, orbit),
            undetermined: dim_a > 0 && s.m_q == SchurIndex::Unknown,
        });
    }
    Ok(out)
}
