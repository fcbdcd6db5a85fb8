//! Central idempotents, closed-form CM types of the families and their matrix verification.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chartable::CharacterTable;
use crate::cyclotomic::{cyclotomic_polynomial, euler_phi, Cyclotomic, Reducer, RootSum};
use crate::error::{internal, invalid, Result};
use crate::families::{k_orbit_data, matrix_rep, FamilySpec};
use crate::group::FiniteGroup;
use crate::matrix::RootMatrix;
use crate::monodromy::{position_of_order, MonodromyDatum, MonodromyTag};

/// Σ_x c_x x with c_x ∈ Q(ζ_base), stored as integer power-basis vectors over a common denominator.
#[derive(Debug, Clone)]
pub struct GroupAlgebraElement {
    group: Arc<FiniteGroup>,
    base_order: u32,
    denom: i128,
    coeffs: Vec<Vec<i128>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BaseField {
    Q,
    Qi4,
}

fn phi_sparse(order: u32) -> (usize, Vec<(usize, i128)>) {
    let poly = cyclotomic_polynomial(order as u64);
    let d = poly.len() - 1;
    (
        d,
        poly[..d]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, c as i128))
            .collect(),
    )
}

impl GroupAlgebraElement {
    pub fn zero(group: Arc<FiniteGroup>, base_order: u32) -> Self {
        let phi = euler_phi(base_order as u64) as usize;
        let n = group.order();
        GroupAlgebraElement {
            group,
            base_order,
            denom: 1,
            coeffs: vec![vec![0; phi]; n],
        }
    }

    pub fn basis(group: Arc<FiniteGroup>, base_order: u32, x: usize) -> Self {
        let mut e = Self::zero(group, base_order);
        e.coeffs[x][0] = 1;
        e
    }

    pub fn one(group: Arc<FiniteGroup>, base_order: u32) -> Self {
        let id = group.identity();
        Self::basis(group, base_order, id)
    }

    /// (1/denom)·Σ_x sums[x]·x, each sum a combination of roots of unity of order `base_order`.
    pub fn from_root_sums(
        group: Arc<FiniteGroup>,
        base_order: u32,
        denom: i128,
        sums: &[RootSum],
    ) -> Self {
        let red = Reducer::new(base_order);
        let coeffs = sums.iter().map(|s| red.reduce(s.counts())).collect();
        let mut e = GroupAlgebraElement {
            group,
            base_order,
            denom,
            coeffs,
        };
        e.normalize();
        e
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn base_order(&self) -> u32 {
        self.base_order
    }

    pub fn denominator(&self) -> i128 {
        self.denom
    }

    /// Numerator coefficient vector of x in the power basis of Q(ζ_base).
    pub fn numerator(&self, x: usize) -> &[i128] {
        &self.coeffs[x]
    }

    pub fn coeff(&self, x: usize) -> Cyclotomic {
        let v = Reducer::new(self.base_order).to_cyclotomic(&self.coeffs[x]);
        &v / &Cyclotomic::from_int(self.denom as i64)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len())
            .filter(|&x| self.coeffs[x].iter().any(|&c| c != 0))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|&c| c == 0)
    }

    fn normalize(&mut self) {
        let mut g = self.denom.abs();
        for &c in self.coeffs.iter().flatten() {
            g = g.gcd(&c);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            self.denom /= g;
            self.coeffs.iter_mut().flatten().for_each(|c| *c /= g);
        }
        if self.denom < 0 {
            self.denom = -self.denom;
            self.coeffs.iter_mut().flatten().for_each(|c| *c = -*c);
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.group, &other.group) || self.group.order() == other.group.order()
        );
        assert_eq!(
            self.base_order, other.base_order,
            "coefficient fields differ"
        );
    }

    fn combine(&self, other: &Self, sign: i128) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        out.denom = self.denom * other.denom;
        for (a, b) in out.coeffs.iter_mut().zip(&other.coeffs) {
            for (x, &y) in a.iter_mut().zip(b) {
                *x = *x * other.denom + sign * y * self.denom;
            }
        }
        out.normalize();
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, -1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let g = &self.group;
        let (phi, sparse) = phi_sparse(self.base_order);
        let mut acc = vec![vec![0i128; 2 * phi]; g.order()];
        let sa = self.support();
        let sb = other.support();
        for &x in &sa {
            let a: Vec<(usize, i128)> = self.coeffs[x]
                .iter()
                .copied()
                .enumerate()
                .filter(|&(_, c)| c != 0)
                .collect();
            for &y in &sb {
                let buf = &mut acc[g.mul(x, y)];
                for (j, &cb) in other.coeffs[y].iter().enumerate().filter(|(_, &c)| c != 0) {
                    for &(i, ca) in &a {
                        buf[i + j] += ca * cb;
                    }
                }
            }
        }
        let coeffs = acc
            .into_iter()
            .map(|mut buf| {
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
            })
            .collect();
        let mut out = GroupAlgebraElement {
            group: self.group.clone(),
            base_order: self.base_order,
            denom: self.denom * other.denom,
            coeffs,
        };
        out.normalize();
        out
    }

    /// x·self, a permutation of coefficients.
    pub fn left_mul_element(&self, x: usize) -> Self {
        let mut out = self.clone();
        for y in 0..self.coeffs.len() {
            out.coeffs[self.group.mul(x, y)] = self.coeffs[y].clone();
        }
        out
    }

    pub fn right_mul_element(&self, x: usize) -> Self {
        let mut out = self.clone();
        for y in 0..self.coeffs.len() {
            out.coeffs[self.group.mul(y, x)] = self.coeffs[y].clone();
        }
        out
    }

    pub fn is_central(&self) -> bool {
        (0..self.group.order()).all(|x| self.left_mul_element(x) == self.right_mul_element(x))
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    /// Image D·ρ(self) under a matrix representation, where D is the denominator.
    pub fn image_times_denominator(&self, images: &[RootMatrix]) -> Result<RootMatrix> {
        let l = images[0].order();
        if l % self.base_order != 0 {
            return Err(internal(
                "representation field does not contain the coefficient field",
            ));
        }
        let step = (l / self.base_order) as i64;
        let n = images[0].dim();
        let mut acc = RootMatrix::zero(n, l);
        for x in self.support() {
            for (t, &c) in self.coeffs[x].iter().enumerate().filter(|(_, &c)| c != 0) {
                let c =
                    i64::try_from(c).map_err(|_| internal("group algebra coefficient overflow"))?;
                acc = acc.add(&images[x].scale_root(t as i64 * step).scale_int(c));
            }
        }
        Ok(acc)
    }
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.base_order == other.base_order
            && self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| {
                a.iter()
                    .zip(b)
                    .all(|(&x, &y)| x * other.denom == y * self.denom)
            })
    }
}

/// e_K(χ) = Σ_{σ} e(σ∘χ) over the K-Galois orbit, with e(ψ) = (ψ(1)/#G) Σ_x ψ(x⁻¹) x.
pub fn central_idempotent(
    table: &CharacterTable,
    c: usize,
    base: BaseField,
) -> GroupAlgebraElement {
    let g = table.group();
    let e = table.exponent();
    let (orbit, b) = match base {
        BaseField::Q => (table.orbit_q_of(c), e),
        BaseField::Qi4 => (table.orbit_qi4_of(c), (e as u64).lcm(&4) as u32),
    };
    let sums: Vec<RootSum> = (0..g.order())
        .map(|x| {
            let cls = g.class_of(x);
            let m = table.class_orders()[cls];
            let step = (b / m) as i64;
            let mut s = RootSum::new(b);
            for &psi in orbit {
                let ch = table.character(psi);
                for (alpha, &n) in ch.counts[cls].iter().enumerate().filter(|(_, &n)| n > 0) {
                    s.add_root(-(alpha as i64) * step, (ch.degree * n) as i128);
                }
            }
            s
        })
        .collect();
    GroupAlgebraElement::from_root_sums(g.clone(), b, g.order() as i128, &sums)
}

/// (1/m) Σ_j ζ_m^{−sj} x^j for x of order m: the idempotent of the character x ↦ ζ_m^s of ⟨x⟩.
pub fn cyclic_averaging_idempotent(
    group: &Arc<FiniteGroup>,
    x: usize,
    s: i64,
    base_order: u32,
) -> Result<GroupAlgebraElement> {
    let m = group.element_order(x) as u32;
    if base_order % m != 0 {
        return Err(invalid(
            "coefficient field too small for the averaging idempotent",
        ));
    }
    let step = (base_order / m) as i64;
    let mut sums: Vec<RootSum> = (0..group.order())
        .map(|_| RootSum::new(base_order))
        .collect();
    for j in 0..m as i64 {
        sums[group.pow(x, j)].add_root(-s * j * step, 1);
    }
    Ok(GroupAlgebraElement::from_root_sums(
        group.clone(),
        base_order,
        m as i128,
        &sums,
    ))
}

/// Q8 idempotents e₀, e₁ of the characters k ↦ ζ₄ and k ↦ −ζ₄ of ⟨k⟩.
pub fn quaternion_idempotents(
    group: &Arc<FiniteGroup>,
) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    let k = group
        .find_label("k")
        .ok_or_else(|| invalid("group has no element labelled k"))?;
    Ok((
        cyclic_averaging_idempotent(group, k, 1, 4)?,
        cyclic_averaging_idempotent(group, k, 3, 4)?,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Embedding {
    pub factor: usize,
    /// ζ_N ↦ ζ_N^exponent on the factor of conductor N.
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CmType {
    pub conductors: Vec<u32>,
    pub embeddings: Vec<Embedding>,
}

impl CmType {
    fn new(conductors: Vec<u32>, mut embeddings: Vec<Embedding>) -> Self {
        embeddings.sort();
        CmType {
            conductors,
            embeddings,
        }
    }

    pub fn field_kind(&self) -> &'static str {
        if self.conductors.len() == 1 {
            "cyclotomic"
        } else {
            "product"
        }
    }

    pub fn exponents(&self, factor: usize) -> Vec<u32> {
        self.embeddings
            .iter()
            .filter(|e| e.factor == factor)
            .map(|e| e.exponent)
            .collect()
    }

    /// The complex-conjugate type.
    pub fn conjugate(&self) -> CmType {
        let emb = self
            .embeddings
            .iter()
            .map(|e| {
                let n = self.conductors[e.factor];
                Embedding {
                    factor: e.factor,
                    exponent: (n - e.exponent % n) % n,
                }
            })
            .collect();
        CmType::new(self.conductors.clone(), emb)
    }

    /// One embedding from each conjugate pair of every factor.
    pub fn is_well_formed(&self) -> bool {
        self.conductors.iter().enumerate().all(|(f, &n)| {
            let ex = self.exponents(f);
            let units = ex
                .iter()
                .all(|&u| (u as u64).gcd(&(n as u64)) == 1 && u < n);
            let no_pair = ex.iter().all(|&u| !ex.contains(&((n - u) % n)));
            let mut dedup = ex.clone();
            dedup.dedup();
            units
                && no_pair
                && dedup.len() == ex.len()
                && ex.len() as u64 * 2 == euler_phi(n as u64)
        })
    }

    pub fn dimension(&self) -> usize {
        self.embeddings.len()
    }
}

fn single(conductor: u32, exps: impl IntoIterator<Item = u32>) -> CmType {
    CmType::new(
        vec![conductor],
        exps.into_iter()
            .map(|u| Embedding {
                factor: 0,
                exponent: u,
            })
            .collect(),
    )
}

/// Union of the k-orbits with orbit sum q, as exponents of ζ_q.
pub fn metacyclic_cm_type(spec: &FamilySpec, tag: MonodromyTag) -> Result<CmType> {
    let FamilySpec::Metacyclic { q, n, k } = *spec else {
        return Err(invalid(format!("{spec} is not metacyclic")));
    };
    if n != 3 {
        return Err(invalid(format!(
            "closed-form CM type needs n = 3; n = {n} is not special by the N = 0 criterion or is trivial"
        )));
    }
    if tag != MonodromyTag::MetacyclicMain {
        return Err(invalid(format!(
            "datum tagged {} is not on the (q, n, n) branch",
            tag.as_str()
        )));
    }
    let orbits = k_orbit_data(q, n, k)?;
    let exps = orbits
        .orbits
        .iter()
        .filter(|o| o.sum == q as u64)
        .flat_map(|o| o.elements.iter().copied());
    Ok(single(q, exps))
}

/// ζ_{4q} ↦ ζ₄·ζ_q^j for 1 ≤ j < q, i.e. exponents q + 4j mod 4q.
fn dicyclic_main_exponents(q: u32) -> impl Iterator<Item = u32> {
    (1..q).map(move |j| (q + 4 * j) % (4 * q))
}

/// Closed-form type for Dic_q; the (2q, 4, 4) case adds the Q(ζ₄) factor fixed by μ_{ψ₁}.
pub fn dicyclic_cm_type(
    spec: &FamilySpec,
    tag: MonodromyTag,
    table: &CharacterTable,
    mu: &[u32],
) -> Result<CmType> {
    let FamilySpec::Dicyclic { q } = *spec else {
        return Err(invalid(format!("{spec} is not dicyclic")));
    };
    match tag {
        MonodromyTag::DicyclicQ44 => Ok(single(4 * q, dicyclic_main_exponents(q))),
        MonodromyTag::Dicyclic2Q44 => {
            let psi1 = table
                .find_label("psi_1")
                .ok_or_else(|| internal("table lacks psi_1"))?;
            let psi3 = table
                .find_label("psi_3")
                .ok_or_else(|| internal("table lacks psi_3"))?;
            let u0 = match (mu[psi1], mu[psi3]) {
                (1, 0) => 1,
                (0, 1) => 3,
                other => {
                    return Err(internal(format!(
                        "(μ_ψ1, μ_ψ3) = {other:?} on a (2q, 4, 4) datum"
                    )))
                }
            };
            let mut emb = vec![Embedding {
                factor: 0,
                exponent: u0,
            }];
            emb.extend(dicyclic_main_exponents(q).map(|u| Embedding {
                factor: 1,
                exponent: u,
            }));
            Ok(CmType::new(vec![4, 4 * q], emb))
        }
        other => Err(invalid(format!(
            "datum tagged {} is not a dicyclic datum",
            other.as_str()
        ))),
    }
}

/// (Q(ζ₄), {ζ₄ ↦ ζ₄}) ⊔ (Q(ζ₄), {ζ₄ ↦ −ζ₄}).
pub fn quaternion_cm_type() -> CmType {
    CmType::new(
        vec![4, 4],
        vec![
            Embedding {
                factor: 0,
                exponent: 1,
            },
            Embedding {
                factor: 1,
                exponent: 3,
            },
        ],
    )
}

/// For C_n: each live component Q(ζ_d) contributes the u ∈ (Z/d)* with μ(ψ_{u·n/d}) = 1.
pub fn cyclic_cm_type(spec: &FamilySpec, table: &CharacterTable, mu: &[u32]) -> Result<CmType> {
    let FamilySpec::Cyclic { n } = *spec else {
        return Err(invalid(format!("{spec} is not cyclic")));
    };
    let mut conductors = vec![];
    let mut emb = vec![];
    for orbit in table.galois_orbits_q() {
        if orbit.iter().all(|&i| mu[i] == 0) {
            continue;
        }
        let j0 = character_exponent(table, orbit[0])?;
        let d = n / (j0 as u64).gcd(&(n as u64)) as u32;
        let f = conductors.len();
        conductors.push(d);
        for &i in orbit {
            if mu[i] > 1 {
                return Err(invalid(
                    "cyclic component with multiplicity above one has no CM type",
                ));
            }
            if mu[i] == 1 {
                let j = character_exponent(table, i)?;
                emb.push(Embedding {
                    factor: f,
                    exponent: j / (n / d),
                });
            }
        }
    }
    Ok(CmType::new(conductors, emb))
}

fn character_exponent(table: &CharacterTable, i: usize) -> Result<u32> {
    table
        .character(i)
        .label
        .strip_prefix("psi_")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| internal("cyclic character label"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixCheck {
    pub verified: bool,
    /// Power of ζ₄ used as the K-scalar, when the factor needs one.
    pub scalar: Option<u32>,
    pub conjugated: bool,
    pub observed: Vec<Vec<u32>>,
    pub claimed: Vec<Vec<u32>>,
}

/// A designated operator s·g·e whose eigenvalues on H⁰ give the embeddings of one factor.
struct FactorOperator {
    conductor: u32,
    element: usize,
    needs_scalar: bool,
    idempotent: GroupAlgebraElement,
}

fn factor_operators(
    spec: &FamilySpec,
    table: &CharacterTable,
    d: &MonodromyDatum,
    tag: MonodromyTag,
    mu: &[u32],
) -> Result<Vec<FactorOperator>> {
    let g = table.group();
    let entry_of_order = |m: u32| -> Result<usize> {
        position_of_order(g, d, m)
            .map(|i| d.x[i])
            .ok_or_else(|| invalid(format!("datum has no entry of order {m}")))
    };
    let idem = |label: &str| -> Result<GroupAlgebraElement> {
        let c = table
            .find_label(label)
            .ok_or_else(|| internal(format!("table lacks {label}")))?;
        Ok(central_idempotent(table, c, BaseField::Q))
    };
    let b = spec
        .symbols()
        .iter()
        .find(|(s, _)| *s == "b")
        .map(|&(_, x)| x);
    Ok(match (*spec, tag) {
        (FamilySpec::Metacyclic { q, .. }, MonodromyTag::MetacyclicMain) => vec![FactorOperator {
            conductor: q,
            element: entry_of_order(q)?,
            needs_scalar: false,
            idempotent: idem("chi_1")?,
        }],
        (FamilySpec::Dicyclic { q }, MonodromyTag::DicyclicQ44) => {
            let b2 = g.pow(b.unwrap(), 2);
            vec![FactorOperator {
                conductor: 4 * q,
                element: g.mul(b2, entry_of_order(q)?),
                needs_scalar: true,
                idempotent: idem("psi_1*chi_1")?,
            }]
        }
        (FamilySpec::Dicyclic { q }, MonodromyTag::Dicyclic2Q44) => vec![
            FactorOperator {
                conductor: 4,
                element: b.unwrap(),
                needs_scalar: false,
                idempotent: idem("psi_1")?,
            },
            FactorOperator {
                conductor: 4 * q,
                element: entry_of_order(2 * q)?,
                needs_scalar: true,
                idempotent: idem("psi_1*chi_1")?,
            },
        ],
        (FamilySpec::Quaternion8, MonodromyTag::Quaternion) => {
            let (e0, e1) = quaternion_idempotents(g)?;
            let k = g.find_label("k").unwrap();
            vec![
                FactorOperator {
                    conductor: 4,
                    element: k,
                    needs_scalar: false,
                    idempotent: e0,
                },
                FactorOperator {
                    conductor: 4,
                    element: k,
                    needs_scalar: false,
                    idempotent: e1,
                },
            ]
        }
        (FamilySpec::Cyclic { n }, MonodromyTag::Cyclic) => {
            let mut ops = vec![];
            for orbit in table.galois_orbits_q() {
                if orbit.iter().any(|&i| mu[i] > 0) {
                    let j0 = character_exponent(table, orbit[0])?;
                    ops.push(FactorOperator {
                        conductor: n / (j0 as u64).gcd(&(n as u64)) as u32,
                        element: 1 % n as usize,
                        needs_scalar: false,
                        idempotent: central_idempotent(table, orbit[0], BaseField::Q),
                    });
                }
            }
            ops
        }
        _ => {
            return Err(invalid(format!(
                "no matrix verification for {spec} with tag {}",
                tag.as_str()
            )))
        }
    })
}

/// Root-of-unity exponent u with v = D·ζ_N^u.
fn scaled_root_exponent(v: &Cyclotomic, denom: i128, n: u32) -> Option<u32> {
    let d = Cyclotomic::from_int(denom as i64);
    (0..n).find(|&u| &d * &Cyclotomic::root_of_unity(n, u as i64) == *v)
}

/// Eigenvalue exponents of every factor operator on the model ⊕_χ ρ_χ^{μ_χ} of H⁰.
fn observed_exponents(
    spec: &FamilySpec,
    table: &CharacterTable,
    ops: &[FactorOperator],
    mu: &[u32],
    scalar: u32,
) -> Result<Vec<Vec<u32>>> {
    let g = table.group();
    let mut out = vec![vec![]; ops.len()];
    for c in (0..table.len()).filter(|&c| mu[c] > 0) {
        let rep = matrix_rep(spec, table, c)?;
        let images: Vec<RootMatrix> = (0..g.order()).map(|x| rep.image(spec, x)).collect();
        let l = images[0].order();
        let dim = rep.degree;
        for (f, op) in ops.iter().enumerate() {
            let denom = op.idempotent.denominator();
            let p = op.idempotent.image_times_denominator(&images)?;
            if p.is_zero() {
                continue;
            }
            let mut m = images[op.element].clone();
            if op.needs_scalar {
                if l % 4 != 0 {
                    return Err(internal("representation field lacks ζ₄"));
                }
                m = m.scale_root(scalar as i64 * (l / 4) as i64);
            }
            let mut exps = vec![];
            if p == RootMatrix::identity(dim, l).scale_int(denom as i64) {
                let counts = m.eigenvalue_counts(op.conductor)?;
                for (u, &k) in counts.iter().enumerate() {
                    exps.extend(std::iter::repeat(u as u32).take(k as usize));
                }
            } else {
                let prod = m.mul(&p);
                if !prod.is_diagonal() {
                    return Err(internal(
                        "non-central idempotent image is not diagonal in the model basis",
                    ));
                }
                for i in 0..dim {
                    let v = prod.entry(i, i);
                    if v.is_zero() {
                        continue;
                    }
                    let u = scaled_root_exponent(&v, denom, op.conductor)
                        .ok_or_else(|| internal("diagonal entry is not a scaled root of unity"))?;
                    exps.push(u);
                }
            }
            for _ in 0..mu[c] {
                out[f].extend(&exps);
            }
        }
    }
    for v in &mut out {
        v.sort_unstable();
    }
    Ok(out)
}

/// Compares the claimed type with the eigenvalues of the designated operators on H⁰,
/// accepting the claim or its complex conjugate and either K-scalar ζ₄^{±1}.
pub fn verify_cm_type_via_matrices(
    spec: &FamilySpec,
    table: &CharacterTable,
    d: &MonodromyDatum,
    tag: MonodromyTag,
    mu: &[u32],
    claimed: &CmType,
) -> Result<MatrixCheck> {
    let ops = factor_operators(spec, table, d, tag, mu)?;
    if ops.len() != claimed.conductors.len()
        || ops
            .iter()
            .zip(&claimed.conductors)
            .any(|(o, &n)| o.conductor != n)
    {
        return Err(internal(
            "claimed type and designated operators have different factors",
        ));
    }
    let needs_scalar = ops.iter().any(|o| o.needs_scalar);
    let claim: Vec<Vec<u32>> = (0..ops.len()).map(|f| claimed.exponents(f)).collect();
    let conj = claimed.conjugate();
    let conj_claim: Vec<Vec<u32>> = (0..ops.len()).map(|f| conj.exponents(f)).collect();
    let scalars: &[u32] = if needs_scalar { &[1, 3] } else { &[0] };
    let mut first = None;
    for &s in scalars {
        let observed = observed_exponents(spec, table, &ops, mu, s)?;
        let scalar = needs_scalar.then_some(s);
        for (conjugated, target) in [(false, &claim), (true, &conj_claim)] {
            if observed == *target {
                return Ok(MatrixCheck {
                    verified: true,
                    scalar,
                    conjugated,
                    observed,
                    claimed: claim.clone(),
                });
            }
        }
        first.get_or_insert(MatrixCheck {
            verified: false,
            scalar,
            conjugated: false,
            observed,
            claimed: claim.clone(),
        });
    }
    Ok(first.expect("at least one scalar is tried"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureCheck {
    pub q: u32,
    pub k: u32,
    /// 𝔣(τ_u) for u = 1, …, q − 1.
    pub signature: Vec<i64>,
    pub signature_one: Vec<u32>,
    pub metacyclic_type: Vec<u32>,
    pub complementary: bool,
    pub agrees: bool,
}

/// Signature of the Z/q cover with datum (1, k, k²) against the metacyclic CM type.
pub fn cyclic_signature_crosscheck(q: u32, k: u32) -> Result<SignatureCheck> {
    let spec = FamilySpec::metacyclic(q, 3, Some(k))?;
    let q64 = q as i64;
    let ks = [1, k as i64, (k as i64 * k as i64) % q64];
    let signature: Vec<i64> = (1..q64)
        .map(|u| {
            let num: i64 = ks.iter().map(|&kv| (-kv * u).rem_euclid(q64)).sum();
            if num % q64 != 0 {
                return Err(internal("cyclic Chevalley–Weil sum is not integral"));
            }
            Ok(num / q64 - 1)
        })
        .collect::<Result<_>>()?;
    let signature_one: Vec<u32> = (1..q).filter(|&u| signature[u as usize - 1] == 1).collect();
    let complementary =
        (1..q as usize).all(|u| signature[u - 1] + signature[q as usize - u - 1] == 1);
    let mut metacyclic_type = metacyclic_cm_type(&spec, MonodromyTag::MetacyclicMain)?.exponents(0);
    metacyclic_type.sort_unstable();
    let agrees = signature_one == metacyclic_type;
    Ok(SignatureCheck {
        q,
        k,
        signature,
        signature_one,
        metacyclic_type,
        complementary,
        agrees,
    })
}

/// Exponent multiset of a type keyed by factor, for reporting.
pub fn exponents_by_factor(t: &CmType) -> BTreeMap<usize, Vec<u32>> {
    let mut m: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
    for e in &t.embeddings {
        m.entry(e.factor).or_default().push(e.exponent);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::family_instance;
    use crate::hodge::chevalley_weil;
    use crate::monodromy::validate_family_monodromy;

    fn rat(n: i64, d: i64) -> num_rational::BigRational {
        num_rational::BigRational::new(n.into(), d.into())
    }

    #[test]
    fn trivial_idempotent_is_average() {
        let (g, t) = family_instance(&"metacyclic:q=7,n=3".parse().unwrap()).unwrap();
        let e = central_idempotent(&t, t.trivial_index(), BaseField::Q);
        assert_eq!(e.denominator(), 21);
        for x in 0..g.order() {
            assert_eq!(e.coeff(x), Cyclotomic::from_rational(rat(1, 21)));
        }
        assert!(e.is_idempotent() && e.is_central());
    }

    #[test]
    fn metacyclic_idempotent_display() {
        let spec: FamilySpec = "metacyclic:q=7,n=3".parse().unwrap();
        let (g, t) = family_instance(&spec).unwrap();
        let e = central_idempotent(&t, t.find_label("chi_1").unwrap(), BaseField::Q);
        for x in 0..g.order() {
            let (nu, mu) = spec.decompose(x);
            let want = match (nu, mu) {
                (0, 0) => Cyclotomic::from_rational(rat(6, 7)),
                (_, 0) => Cyclotomic::from_rational(rat(-1, 7)),
                _ => Cyclotomic::zero(),
            };
            assert_eq!(e.coeff(x), want);
        }
    }

    #[test]
    fn dicyclic_symplectic_idempotent() {
        for q in [3u32, 5, 7] {
            let spec = FamilySpec::Dicyclic { q };
            let (g, t) = family_instance(&spec).unwrap();
            let e = central_idempotent(&t, t.find_label("psi_1*chi_1").unwrap(), BaseField::Q);
            assert!(e.is_idempotent() && e.is_central());
            let a = crate::families::generator_element(&spec, "a").unwrap();
            let b = crate::families::generator_element(&spec, "b").unwrap();
            let (b2, y) = (g.pow(b, 2), g.mul(g.pow(b, 2), a));
            let two_q = 2 * q as i64;
            // Coefficient on (b²a)^ν is (−1)^{ν+1}/(2q); `sign` = −1 gives the printed (−1)^ν.
            let expansion = |sign: i64| {
                let mut c = vec![0i128; g.order()];
                c[g.identity()] = q as i128 - 1;
                c[b2] = 1 - q as i128;
                for nu in (1..two_q).filter(|&nu| nu != q as i64) {
                    c[g.pow(y, nu)] = (sign * if nu % 2 == 0 { -1 } else { 1 }) as i128;
                }
                let sums: Vec<RootSum> = c
                    .iter()
                    .map(|&n| {
                        let mut s = RootSum::new(1);
                        s.add_root(0, n);
                        s
                    })
                    .collect();
                GroupAlgebraElement::from_root_sums(g.clone(), 1, two_q as i128, &sums)
            };
            for x in 0..g.order() {
                assert_eq!(
                    e.coeff(x),
                    expansion(1).coeff(x),
                    "q = {q}, x = {}",
                    g.label(x)
                );
            }
            assert!(!expansion(-1).is_idempotent());
        }
    }

    #[test]
    fn quaternion_idempotents_sum() {
        let (g, t) = family_instance(&FamilySpec::Quaternion8).unwrap();
        let (e0, e1) = quaternion_idempotents(&g).unwrap();
        let chi = central_idempotent(&t, t.find_label("chi").unwrap(), BaseField::Q);
        let chi4 = GroupAlgebraElement::from_root_sums(
            g.clone(),
            4,
            chi.denominator(),
            &(0..8)
                .map(|x| {
                    let mut s = RootSum::new(4);
                    s.add_root(0, chi.numerator(x)[0]);
                    s
                })
                .collect::<Vec<_>>(),
        );
        assert_eq!(e0.add(&e1), chi4);
        assert!(e0.is_idempotent() && e1.is_idempotent());
        assert!(e0.mul(&e1).is_zero());
        assert!(!e0.is_central());
    }

    #[test]
    fn types_and_verification() {
        for (s, lit) in [
            ("metacyclic:q=7,n=3", "a,b"),
            ("dicyclic:q=3", "a,b"),
            ("dicyclic:q=3", "a*b^2,b"),
            ("quaternion8", "i,j"),
        ] {
            let spec: FamilySpec = s.parse().unwrap();
            let (g, t) = family_instance(&spec).unwrap();
            let d = MonodromyDatum::parse(&g, Some(&spec), lit).unwrap();
            let tag = validate_family_monodromy(&spec, &g, &d).unwrap();
            let mu = chevalley_weil(&d, &t).unwrap();
            let ty = match spec {
                FamilySpec::Metacyclic { .. } => metacyclic_cm_type(&spec, tag).unwrap(),
                FamilySpec::Dicyclic { .. } => dicyclic_cm_type(&spec, tag, &t, &mu).unwrap(),
                _ => quaternion_cm_type(),
            };
            assert!(ty.is_well_formed(), "{s}");
            assert_eq!(ty.dimension() as u64, d.genus(&g).unwrap(), "{s}");
            let check = verify_cm_type_via_matrices(&spec, &t, &d, tag, &mu, &ty).unwrap();
            assert!(check.verified, "{s} {lit}: {check:?}");
        }
    }

    #[test]
    fn metacyclic_thirteen_type() {
        let spec: FamilySpec = "metacyclic:q=13,n=3".parse().unwrap();
        let ty = metacyclic_cm_type(&spec, MonodromyTag::MetacyclicMain).unwrap();
        let mut ex = ty.exponents(0);
        ex.sort();
        assert_eq!(ex, vec![1, 2, 3, 5, 6, 9]);
    }

    #[test]
    fn signature_check() {
        let r = cyclic_signature_crosscheck(7, 2).unwrap();
        assert_eq!(r.signature_one, vec![1, 2, 4]);
        assert!(r.agrees && r.complementary);
    }
}
