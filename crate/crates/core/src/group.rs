//! Finite groups as explicit multiplication tables.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Default bound on group orders accepted by the expensive operations.
pub const DEFAULT_MAX_ORDER: usize = 256;

/// Partition of a group into conjugacy classes, ordered by least element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    pub class_of: Vec<usize>,
    pub representatives: Vec<usize>,
    pub sizes: Vec<usize>,
    pub members: Vec<Vec<usize>>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub image: Vec<usize>,
}

impl Automorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            image: other.image.iter().map(|&y| self.image[y]).collect(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
    orders: Vec<usize>,
    classes: ConjugacyClasses,
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    order: usize,
    mul: Vec<Vec<usize>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Builds a group from a full multiplication table, checking every group axiom.
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(invalid("group table is empty"));
        }
        if let Some(r) = rows.iter().position(|r| r.len() != n) {
            return Err(invalid(format!(
                "row {r} of the multiplication table has the wrong length"
            )));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(invalid("multiplication table entry out of range"));
        }
        let mul: Vec<usize> = rows.into_iter().flatten().collect();
        let g = Self::assemble(n, mul, labels)?;
        for a in 0..n {
            for b in 0..n {
                let ab = g.mul(a, b);
                for c in 0..n {
                    if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                        return Err(invalid(format!("associativity fails for ({a}, {b}, {c})")));
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds a group from a table known to be associative; identity and inverses are still checked.
    pub fn from_fn(
        n: usize,
        f: impl Fn(usize, usize) -> usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(f(a, b));
            }
        }
        Self::assemble(n, mul, labels)
    }

    fn assemble(n: usize, mul: Vec<usize>, labels: Option<Vec<String>>) -> Result<Self> {
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(invalid(format!("expected {n} labels, got {}", l.len())));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x && mul[x * n + e] == x))
            .ok_or_else(|| invalid("no identity element"))?;
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[x] = (0..n)
                .find(|&y| mul[x * n + y] == identity && mul[y * n + x] == identity)
                .ok_or_else(|| invalid(format!("element {x} has no inverse")))?;
        }
        let mut g = FiniteGroup {
            order: n,
            mul,
            identity,
            inv,
            labels,
            orders: vec![],
            classes: ConjugacyClasses {
                class_of: vec![],
                representatives: vec![],
                sizes: vec![],
                members: vec![],
            },
        };
        g.orders = (0..n).map(|x| g.compute_order(x)).collect();
        g.classes = g.compute_classes();
        Ok(g)
    }

    /// Loads a JSON table file {order, mul, labels}.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let file: TableFile =
            serde_json::from_str(s).map_err(|e| invalid(format!("group table JSON: {e}")))?;
        if file.mul.len() != file.order {
            return Err(invalid(format!(
                "declared order {} but table has {} rows",
                file.order,
                file.mul.len()
            )));
        }
        Self::from_table(file.mul, file.labels)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let n = self.order;
        serde_json::json!({
            "order": n,
            "mul": (0..n).map(|a| self.mul[a * n..(a + 1) * n].to_vec()).collect::<Vec<_>>(),
            "labels": (0..n).map(|x| self.label(x)).collect::<Vec<_>>(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// g·x·g⁻¹.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv[g])
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let m = self.orders[x] as i64;
        let mut e = k.rem_euclid(m);
        let mut acc = self.identity;
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn compute_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut m = 1;
        while y != self.identity {
            y = self.mul(y, x);
            m += 1;
        }
        m
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn exponent(&self) -> usize {
        self.orders
            .iter()
            .fold(1, |acc, &m| num_integer::lcm(acc, m))
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => format!("g{x}"),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        (0..self.order).find(|&x| self.label(x) == label)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn compute_classes(&self) -> ConjugacyClasses {
        let n = self.order;
        let mut class_of = vec![usize::MAX; n];
        let mut representatives = vec![];
        let mut members = vec![];
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            let mut cls = vec![];
            for g in 0..n {
                let y = self.conjugate(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = c;
                    cls.push(y);
                }
            }
            cls.sort_unstable();
            representatives.push(x);
            members.push(cls);
        }
        let sizes = members.iter().map(Vec::len).collect();
        ConjugacyClasses {
            class_of,
            representatives,
            sizes,
            members,
        }
    }

    pub fn classes(&self) -> &ConjugacyClasses {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.classes.class_of[x]
    }

    /// Class of x^k for each class representative x.
    pub fn power_class_map(&self, k: i64) -> Vec<usize> {
        self.classes
            .representatives
            .iter()
            .map(|&x| self.class_of(self.pow(x, k)))
            .collect()
    }

    pub fn square_class_map(&self) -> Vec<usize> {
        self.power_class_map(2)
    }

    /// Elements of the subgroup generated by `xs`, as a membership mask.
    pub fn closure(&self, xs: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(y) = queue.pop_front() {
            for &s in xs {
                let z = self.mul(y, s);
                if !seen[z] {
                    seen[z] = true;
                    queue.push_back(z);
                }
            }
        }
        seen
    }

    pub fn subgroup_order(&self, xs: &[usize]) -> usize {
        self.closure(xs).iter().filter(|&&b| b).count()
    }

    pub fn generates(&self, xs: &[usize]) -> bool {
        // Element orders divide the subgroup order.
        let l = xs
            .iter()
            .fold(1usize, |a, &x| num_integer::lcm(a, self.orders[x]));
        l == self.order || self.subgroup_order(xs) == self.order
    }

    fn automorphism_candidates(&self, x: usize) -> Vec<usize> {
        let size = self.classes.sizes[self.class_of(x)];
        (0..self.order)
            .filter(|&y| {
                self.orders[y] == self.orders[x] && self.classes.sizes[self.class_of(y)] == size
            })
            .collect()
    }

    /// A small generating set chosen greedily; the choice is deterministic.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = vec![];
        let mut size = 1;
        while size < self.order {
            let inside = self.closure(&gens);
            let mut best: Option<(usize, usize, usize)> = None;
            for x in (0..self.order).filter(|&x| !inside[x]) {
                let mut trial = gens.clone();
                trial.push(x);
                let s = self.subgroup_order(&trial);
                let cands = self.automorphism_candidates(x).len();
                let better = match best {
                    None => true,
                    Some((bs, bc, _)) => s > bs || (s == bs && cands < bc),
                };
                if better {
                    best = Some((s, cands, x));
                }
            }
            let (s, _, x) = best.expect("a proper subgroup misses some element");
            gens.push(x);
            size = s;
        }
        gens
    }

    /// Extends gens[i] ↦ images[i] to the generated subgroup, failing on any contradiction.
    fn extend_map(&self, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
        const NONE: usize = usize::MAX;
        let mut map = vec![NONE; self.order];
        let mut used = vec![false; self.order];
        map[self.identity] = self.identity;
        used[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(y) = queue.pop_front() {
            for (&s, &t) in gens.iter().zip(images) {
                let z = self.mul(y, s);
                let fz = self.mul(map[y], t);
                if map[z] == NONE {
                    if used[fz] {
                        return None;
                    }
                    map[z] = fz;
                    used[fz] = true;
                    queue.push_back(z);
                } else if map[z] != fz {
                    return None;
                }
            }
        }
        Some(map)
    }

    /// The full automorphism group, enumerated by images of a fixed generating set.
    pub fn automorphisms(&self, max_order: usize) -> Result<Vec<Automorphism>> {
        if self.order > max_order {
            return Err(Error::Resource(format!(
                "automorphism search on a group of order {} exceeds the bound {max_order}",
                self.order
            )));
        }
        let gens = self.generating_set();
        let cands: Vec<Vec<usize>> = gens
            .iter()
            .map(|&g| self.automorphism_candidates(g))
            .collect();
        let mut out = vec![];
        let mut images = vec![];
        self.search_automorphisms(&gens, &cands, &mut images, &mut out);
        Ok(out)
    }

    fn search_automorphisms(
        &self,
        gens: &[usize],
        cands: &[Vec<usize>],
        images: &mut Vec<usize>,
        out: &mut Vec<Automorphism>,
    ) {
        let depth = images.len();
        if depth == gens.len() {
            if let Some(map) = self.extend_map(gens, images) {
                if map.iter().all(|&y| y != usize::MAX) {
                    out.push(Automorphism { image: map });
                }
            }
            return;
        }
        for &c in &cands[depth] {
            images.push(c);
            if depth + 1 == gens.len() || self.extend_map(&gens[..=depth], images).is_some() {
                self.search_automorphisms(gens, cands, images, out);
            }
            images.pop();
        }
    }

    /// A generating set of Aut(G), extracted greedily from the full enumeration.
    pub fn automorphism_generators(&self, max_order: usize) -> Result<Vec<Automorphism>> {
        let all = self.automorphisms(max_order)?;
        let identity = Automorphism {
            image: (0..self.order).collect(),
        };
        let mut group: HashSet<Automorphism> = HashSet::from([identity.clone()]);
        let mut gens: Vec<Automorphism> = vec![];
        for a in all {
            if group.contains(&a) {
                continue;
            }
            gens.push(a);
            let mut queue: VecDeque<Automorphism> = group.iter().cloned().collect();
            while let Some(x) = queue.pop_front() {
                for g in &gens {
                    let y = g.compose(&x);
                    if group.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(gens)
    }

    /// Evaluates a word such as "b^3*a^-1" given the meaning of each symbol.
    pub fn eval_word(&self, word: &str, symbols: &[(&str, usize)]) -> Result<usize> {
        let word = word.trim();
        if let Some(x) = self.find_label(word) {
            return Ok(x);
        }
        let (negate, body) = match word.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, word),
        };
        let mut acc = self.identity;
        if negate {
            let minus = symbols
                .iter()
                .find(|(s, _)| *s == "-1")
                .map(|&(_, x)| x)
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: "leading '-' not supported here".into(),
                })?;
            acc = minus;
        }
        let mut pos = usize::from(negate);
        for factor in body.split('*') {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e.trim().parse().map_err(|_| Error::Parse {
                        pos,
                        msg: format!("bad exponent in {factor:?}"),
                    })?;
                    (n.trim(), e)
                }
                None => (factor.trim(), 1),
            };
            let base = if name == "1" {
                self.identity
            } else {
                symbols
                    .iter()
                    .find(|(s, _)| *s == name)
                    .map(|&(_, x)| x)
                    .ok_or_else(|| Error::Parse {
                        pos,
                        msg: format!("unknown symbol {name:?}"),
                    })?
            };
            acc = self.mul(acc, self.pow(base, exp));
            pos += factor.len() + 1;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> FiniteGroup {
        FiniteGroup::from_fn(n, |a, b| (a + b) % n, None).unwrap()
    }

    #[test]
    fn cyclic_basics() {
        let g = cyclic(6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.classes().len(), 6);
        assert!(g.generates(&[1]));
        assert!(!g.generates(&[2]));
        assert!(!g.generates(&[0]));
        assert_eq!(g.pow(5, -1), 1);
    }

    #[test]
    fn automorphisms_of_z5() {
        let g = cyclic(5);
        assert_eq!(g.automorphisms(DEFAULT_MAX_ORDER).unwrap().len(), 4);
        assert!(matches!(g.automorphisms(4), Err(Error::Resource(_))));
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1]], None).is_err());
        // A Latin square with identity that is not associative.
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5, None).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = cyclic(4);
        let text = g.to_json_value().to_string();
        let h = FiniteGroup::from_json_str(&text).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.label(3), "g3");
        assert!(FiniteGroup::from_json_str(r#"{"order": 3, "mul": [[0]]}"#).is_err());
    }

    #[test]
    fn words() {
        let g = cyclic(7);
        let syms = [("a", 1usize)];
        assert_eq!(g.eval_word("a^3*a^-1", &syms).unwrap(), 2);
        assert_eq!(g.eval_word("1", &syms).unwrap(), 0);
        assert!(g.eval_word("c", &syms).is_err());
    }
}
