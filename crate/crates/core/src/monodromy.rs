//! Spherical systems of three generators, Riemann–Hurwitz genus and Hurwitz equivalence.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{internal, invalid, Error, Result};
use crate::families::FamilySpec;
use crate::group::FiniteGroup;

/// An ordered triple (x₁, x₂, x₃) of element indices with x₁x₂x₃ = 1 generating the group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MonodromyDatum {
    pub x: [usize; 3],
}

impl MonodromyDatum {
    /// Completes (x₁, x₂) to (x₁, x₂, (x₁x₂)⁻¹) and validates.
    pub fn complete(g: &FiniteGroup, x1: usize, x2: usize) -> Result<Self> {
        let x3 = g.inv(g.mul(x1, x2));
        Self::from_triple(g, [x1, x2, x3])
    }

    pub fn from_triple(g: &FiniteGroup, x: [usize; 3]) -> Result<Self> {
        if x.iter().any(|&e| e >= g.order()) {
            return Err(invalid("datum entry is not a group element"));
        }
        if g.mul(g.mul(x[0], x[1]), x[2]) != g.identity() {
            return Err(invalid("datum entries do not multiply to the identity"));
        }
        if x.iter().any(|&e| e == g.identity()) {
            return Err(invalid("datum contains the identity"));
        }
        if !g.generates(&x) {
            return Err(invalid("datum entries do not generate the group"));
        }
        Ok(MonodromyDatum { x })
    }

    /// Parses "x1,x2[,x3]" with words in the family symbols or element labels.
    pub fn parse(g: &FiniteGroup, spec: Option<&FamilySpec>, literal: &str) -> Result<Self> {
        let parts: Vec<&str> = literal.split(',').collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(Error::Parse {
                pos: 0,
                msg: "expected two or three comma-separated elements".into(),
            });
        }
        let symbols = spec.map(|s| s.symbols()).unwrap_or_default();
        let mut xs = vec![];
        let mut pos = 0;
        for p in &parts {
            let x = g.eval_word(p, &symbols).map_err(|e| match e {
                Error::Parse { pos: inner, msg } => Error::Parse {
                    pos: pos + inner,
                    msg,
                },
                other => other,
            })?;
            xs.push(x);
            pos += p.len() + 1;
        }
        match xs.len() {
            2 => Self::complete(g, xs[0], xs[1]),
            _ => Self::from_triple(g, [xs[0], xs[1], xs[2]]),
        }
    }

    pub fn local_monodromy(&self, g: &FiniteGroup) -> [u32; 3] {
        self.x.map(|e| g.element_order(e) as u32)
    }

    pub fn genus(&self, g: &FiniteGroup) -> Result<u64> {
        genus_from_orders(g.order(), self.local_monodromy(g))
    }

    pub fn labels(&self, g: &FiniteGroup) -> [String; 3] {
        self.x.map(|e| g.label(e))
    }

    /// Index in enumeration order.
    fn key(&self, n: usize) -> usize {
        self.x[0] * n + self.x[1]
    }
}

/// g = 1 − #G + ½ Σ (#G/m_i)(m_i − 1).
pub fn genus_from_orders(order: usize, m: [u32; 3]) -> Result<u64> {
    let mut twice: i128 = 2 - 2 * order as i128;
    for &mi in &m {
        if mi == 0 || order % mi as usize != 0 {
            return Err(internal(format!(
                "branch order {mi} does not divide {order}"
            )));
        }
        twice += (order / mi as usize) as i128 * (mi as i128 - 1);
    }
    if twice < 0 || twice % 2 != 0 {
        return Err(internal(format!("Riemann–Hurwitz gives 2g = {twice}")));
    }
    Ok((twice / 2) as u64)
}

/// Every spherical system of three generators, ordered by x₁ then x₂.
pub fn enumerate_ssg(g: &FiniteGroup) -> Vec<MonodromyDatum> {
    let n = g.order();
    let e = g.identity();
    let mut out = vec![];
    for x1 in (0..n).filter(|&x| x != e) {
        for x2 in (0..n).filter(|&x| x != e) {
            let x3 = g.inv(g.mul(x1, x2));
            if x3 != e && g.generates(&[x1, x2]) {
                out.push(MonodromyDatum { x: [x1, x2, x3] });
            }
        }
    }
    out
}

/// σ₁: (x₁, x₂, x₃) ↦ (x₁x₂x₁⁻¹, x₁, x₃).
pub fn sigma1(g: &FiniteGroup, d: &MonodromyDatum) -> MonodromyDatum {
    let [x1, x2, x3] = d.x;
    MonodromyDatum {
        x: [g.mul(g.mul(x1, x2), g.inv(x1)), x1, x3],
    }
}

/// σ₂: (x₁, x₂, x₃) ↦ (x₁, x₂x₃x₂⁻¹, x₂).
pub fn sigma2(g: &FiniteGroup, d: &MonodromyDatum) -> MonodromyDatum {
    let [x1, x2, x3] = d.x;
    MonodromyDatum {
        x: [x1, g.mul(g.mul(x2, x3), g.inv(x2)), x2],
    }
}

pub fn sigma1_inv(g: &FiniteGroup, d: &MonodromyDatum) -> MonodromyDatum {
    let [x1, x2, x3] = d.x;
    MonodromyDatum {
        x: [x2, g.mul(g.mul(g.inv(x2), x1), x2), x3],
    }
}

pub fn sigma2_inv(g: &FiniteGroup, d: &MonodromyDatum) -> MonodromyDatum {
    let [x1, x2, x3] = d.x;
    MonodromyDatum {
        x: [x1, x3, g.mul(g.mul(g.inv(x3), x2), x3)],
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HurwitzClass {
    pub id: usize,
    pub representative: MonodromyDatum,
    pub orbit_size: usize,
    pub local_monodromy_multiset: [u32; 3],
    pub genus: u64,
}

fn sorted(mut m: [u32; 3]) -> [u32; 3] {
    m.sort_unstable();
    m
}

/// Orbits of the braid moves and Aut(G) on all spherical systems, ordered by representative.
pub fn hurwitz_orbits(g: &FiniteGroup, max_order: usize) -> Result<Vec<HurwitzClass>> {
    Ok(hurwitz_partition(g, max_order)?.0)
}

/// Classes together with the class id of every datum of `enumerate_ssg`.
pub fn hurwitz_partition(
    g: &FiniteGroup,
    max_order: usize,
) -> Result<(Vec<HurwitzClass>, Vec<(MonodromyDatum, usize)>)> {
    if g.order() > max_order {
        return Err(Error::Resource(format!(
            "Hurwitz classification of a group of order {} exceeds the bound {max_order}",
            g.order()
        )));
    }
    let n = g.order();
    let auts = g.automorphism_generators(max_order)?;
    let data = enumerate_ssg(g);
    const UNSEEN: usize = usize::MAX;
    let mut class_of = vec![UNSEEN; n * n];
    let mut classes = vec![];
    for d in &data {
        if class_of[d.key(n)] != UNSEEN {
            continue;
        }
        let id = classes.len();
        class_of[d.key(n)] = id;
        let mut queue = VecDeque::from([*d]);
        let mut size = 0;
        while let Some(y) = queue.pop_front() {
            size += 1;
            let moves = [
                sigma1(g, &y),
                sigma2(g, &y),
                sigma1_inv(g, &y),
                sigma2_inv(g, &y),
            ];
            let images = auts.iter().map(|a| MonodromyDatum {
                x: y.x.map(|e| a.apply(e)),
            });
            for z in moves.into_iter().chain(images) {
                let k = z.key(n);
                if class_of[k] == UNSEEN {
                    class_of[k] = id;
                    queue.push_back(z);
                } else if class_of[k] != id {
                    return Err(internal("Hurwitz orbits overlap"));
                }
            }
        }
        // The first datum reached in enumeration order is the least element of its orbit.
        classes.push(HurwitzClass {
            id,
            representative: *d,
            orbit_size: size,
            local_monodromy_multiset: sorted(d.local_monodromy(g)),
            genus: d.genus(g)?,
        });
    }
    let labelled = data.iter().map(|d| (*d, class_of[d.key(n)])).collect();
    Ok((classes, labelled))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonodromyTag {
    MetacyclicMain,
    MetacyclicCyclicShadow,
    DicyclicQ44,
    Dicyclic2Q44,
    Quaternion,
    Cyclic,
}

impl MonodromyTag {
    pub fn as_str(self) -> &'static str {
        match self {
            MonodromyTag::MetacyclicMain => "metacyclic-main",
            MonodromyTag::MetacyclicCyclicShadow => "metacyclic-cyclic-shadow",
            MonodromyTag::DicyclicQ44 => "dicyclic-q44",
            MonodromyTag::Dicyclic2Q44 => "dicyclic-2q44",
            MonodromyTag::Quaternion => "quaternion",
            MonodromyTag::Cyclic => "cyclic",
        }
    }
}

/// Sorts a datum of a family group into the cases allowed for that family.
pub fn validate_family_monodromy(
    spec: &FamilySpec,
    g: &FiniteGroup,
    d: &MonodromyDatum,
) -> Result<MonodromyTag> {
    let m = sorted(d.local_monodromy(g));
    let tag = match *spec {
        FamilySpec::Metacyclic { q, n, .. } => {
            if m == sorted([q, n, n]) {
                Some(MonodromyTag::MetacyclicMain)
            } else if m.iter().all(|&mi| n % mi == 0) {
                Some(MonodromyTag::MetacyclicCyclicShadow)
            } else {
                None
            }
        }
        FamilySpec::Dicyclic { q } => {
            if m == sorted([q, 4, 4]) {
                Some(MonodromyTag::DicyclicQ44)
            } else if m == sorted([2 * q, 4, 4]) {
                Some(MonodromyTag::Dicyclic2Q44)
            } else {
                None
            }
        }
        FamilySpec::Quaternion8 => (m == [4, 4, 4]).then_some(MonodromyTag::Quaternion),
        FamilySpec::Cyclic { .. } => Some(MonodromyTag::Cyclic),
    };
    tag.ok_or_else(|| {
        internal(format!(
            "{spec}: local monodromy {m:?} falls outside the known dichotomy"
        ))
    })
}

/// Position of the first entry whose order equals `m`.
pub fn position_of_order(g: &FiniteGroup, d: &MonodromyDatum, m: u32) -> Option<usize> {
    d.x.iter().position(|&e| g.element_order(e) as u32 == m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::build_group;

    fn group(s: &str) -> (FamilySpec, FiniteGroup) {
        let spec: FamilySpec = s.parse().unwrap();
        let g = build_group(&spec).unwrap();
        (spec, g)
    }

    #[test]
    fn quaternion_counts() {
        let (_, g) = group("quaternion8");
        assert_eq!(enumerate_ssg(&g).len(), 24);
        let classes = hurwitz_orbits(&g, 256).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].genus, 2);
        let d = MonodromyDatum::parse(&g, Some(&FamilySpec::Quaternion8), "i,j,k").unwrap_err();
        // i·j·k = −1, so (i, j, k) is not a datum in this orientation; (i, j) completes to −k.
        assert!(matches!(d, Error::Invalid(_)));
        let d = MonodromyDatum::parse(&g, Some(&FamilySpec::Quaternion8), "i,j").unwrap();
        assert_eq!(d.labels(&g)[2], "-k");
        assert_eq!(d.local_monodromy(&g), [4, 4, 4]);
    }

    #[test]
    fn dicyclic_five_has_two_classes() {
        let (spec, g) = group("dicyclic:q=5");
        let classes = hurwitz_orbits(&g, 256).unwrap();
        let ms: Vec<[u32; 3]> = classes.iter().map(|c| c.local_monodromy_multiset).collect();
        assert_eq!(ms.len(), 2);
        assert!(ms.contains(&[4, 4, 5]) && ms.contains(&[4, 4, 10]));
        let total: usize = classes.iter().map(|c| c.orbit_size).sum();
        assert_eq!(total, enumerate_ssg(&g).len());
        let d = MonodromyDatum::parse(&g, Some(&spec), "a,b,b^3*a^-1").unwrap();
        assert_eq!(d.local_monodromy(&g), [5, 4, 4]);
        assert_eq!(d.genus(&g).unwrap(), 4);
        assert_eq!(
            validate_family_monodromy(&spec, &g, &d).unwrap(),
            MonodromyTag::DicyclicQ44
        );
        let d = MonodromyDatum::parse(&g, Some(&spec), "a*b^2,b,b*a^-1").unwrap();
        assert_eq!(d.local_monodromy(&g), [10, 4, 4]);
        assert_eq!(d.genus(&g).unwrap(), 5);
        assert_eq!(
            validate_family_monodromy(&spec, &g, &d).unwrap(),
            MonodromyTag::Dicyclic2Q44
        );
    }

    #[test]
    fn metacyclic_unique_main_class() {
        for q in [7, 13] {
            let (spec, g) = group(&format!("metacyclic:q={q},n=3"));
            let classes = hurwitz_orbits(&g, 256).unwrap();
            let main: Vec<_> = classes
                .iter()
                .filter(|c| {
                    validate_family_monodromy(&spec, &g, &c.representative).unwrap()
                        == MonodromyTag::MetacyclicMain
                })
                .collect();
            assert_eq!(main.len(), 1);
            assert_eq!(main[0].local_monodromy_multiset, [3, 3, q]);
            assert_eq!(main[0].genus, (q as u64 - 1) / 2);
        }
    }

    #[test]
    fn dihedral_data_have_genus_zero() {
        let (_, g) = group("metacyclic:q=7,n=2");
        for d in enumerate_ssg(&g) {
            assert_eq!(d.genus(&g).unwrap(), 0);
        }
    }

    #[test]
    fn braid_moves_preserve_data() {
        let (_, g) = group("metacyclic:q=7,n=3");
        for d in enumerate_ssg(&g).into_iter().take(200) {
            for e in [
                sigma1(&g, &d),
                sigma2(&g, &d),
                sigma1_inv(&g, &d),
                sigma2_inv(&g, &d),
            ] {
                assert!(MonodromyDatum::from_triple(&g, e.x).is_ok());
                assert_eq!(sorted(e.local_monodromy(&g)), sorted(d.local_monodromy(&g)));
            }
            assert_eq!(sigma1_inv(&g, &sigma1(&g, &d)), d);
            assert_eq!(sigma2_inv(&g, &sigma2(&g, &d)), d);
        }
    }

    #[test]
    fn genus_formula() {
        assert_eq!(genus_from_orders(21, [7, 3, 3]).unwrap(), 3);
        assert_eq!(genus_from_orders(155, [31, 5, 5]).unwrap(), 45);
        assert!(genus_from_orders(12, [5, 4, 4]).is_err());
    }
}
