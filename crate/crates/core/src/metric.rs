//! Finite abelian groups with `Z_n`-valued quadratic forms (additive convention).

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::zn;

/// Finite abelian group `⊕ Z/n_i` with a quadratic form `q` and its polar form `b`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MetricGroup {
    modulus: u64,
    orders: Vec<u64>,
    q_gen: Vec<u64>,
    b_gram: Vec<Vec<u64>>,
}

/// Subgroup given by a generating set and its full element list (sorted).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgroup {
    pub generators: Vec<Vec<u64>>,
    pub elements: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &[u64]) -> bool {
        self.elements.binary_search_by(|e| e.as_slice().cmp(a)).is_ok()
    }
}

/// Result of an exhaustive Lagrangian search.
#[derive(Clone, Debug, Serialize)]
pub struct LagrangianSearch {
    pub lagrangians: Vec<Subgroup>,
    /// Set when the subgroup budget ran out before the search finished.
    pub partial: bool,
}

/// Default budget on subgroups visited by searches.
pub const SUBGROUP_BUDGET: usize = 1 << 20;

impl MetricGroup {
    /// Validates that `q` and `b` are well defined on `⊕ Z/orders[i]`.
    pub fn new(modulus: u64, orders: Vec<u64>, q_gen: Vec<u64>, b_gram: Vec<Vec<u64>>) -> Result<Self> {
        let k = orders.len();
        if q_gen.len() != k || b_gram.len() != k || b_gram.iter().any(|r| r.len() != k) {
            return Err(Error::Shape("metric group data has inconsistent sizes".into()));
        }
        let n = modulus;
        let q_gen: Vec<u64> = q_gen.into_iter().map(|v| v % n).collect();
        let b_gram: Vec<Vec<u64>> = b_gram.into_iter().map(|r| r.into_iter().map(|v| v % n).collect()).collect();
        for i in 0..k {
            if orders[i] < 2 {
                return Err(Error::Invalid(format!("generator {i} has order {}", orders[i])));
            }
            if b_gram[i][i] != zn::mul(2, q_gen[i], n) {
                return Err(Error::Invalid(format!("b({i},{i}) differs from 2q({i})")));
            }
            let oi = orders[i] % n;
            if zn::mul(zn::mul(oi, oi, n), q_gen[i], n) != 0 {
                return Err(Error::Invalid(format!("q not defined modulo the order of generator {i}")));
            }
            for j in 0..k {
                if b_gram[i][j] != b_gram[j][i] {
                    return Err(Error::Invalid(format!("b not symmetric at ({i},{j})")));
                }
                if zn::mul(oi, b_gram[i][j], n) != 0 {
                    return Err(Error::Invalid(format!("b not defined modulo the order of generator {i}")));
                }
            }
        }
        Ok(MetricGroup { modulus, orders, q_gen, b_gram })
    }

    pub fn trivial(modulus: u64) -> Self {
        MetricGroup { modulus, orders: Vec::new(), q_gen: Vec::new(), b_gram: Vec::new() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.orders
    }

    pub fn q_generators(&self) -> &[u64] {
        &self.q_gen
    }

    pub fn b_gram(&self) -> &[Vec<u64>] {
        &self.b_gram
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &o)| x % o).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((&x, &y), &o)| (x + y) % o).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &o)| (o - x % o) % o).collect()
    }

    pub fn scale(&self, c: u64, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(&x, &o)| ((c % o) * (x % o)) % o).collect()
    }

    pub fn q_eval(&self, a: &[u64]) -> u64 {
        let n = self.modulus;
        let a = self.reduce(a);
        let mut s = 0;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] % n;
            s = zn::add(s, zn::mul(zn::mul(ai, ai, n), self.q_gen[i], n), n);
            for j in i + 1..a.len() {
                s = zn::add(s, zn::mul(zn::mul(ai, a[j] % n, n), self.b_gram[i][j], n), n);
            }
        }
        s
    }

    pub fn b_eval(&self, a: &[u64], b: &[u64]) -> u64 {
        let n = self.modulus;
        let mut s = 0;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                if y != 0 {
                    s = zn::add(s, zn::mul(zn::mul(x % n, y % n, n), self.b_gram[i][j], n), n);
                }
            }
        }
        s
    }

    /// Additive order of an element.
    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.orders)
            .map(|(&x, &o)| o / zn::gcd(x % o, o))
            .fold(1, |acc, v| acc / zn::gcd(acc, v) * v)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &o in &self.orders {
            out = out
                .into_iter()
                .flat_map(|p| {
                    (0..o).map(move |c| {
                        let mut v = p.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }

    fn index_of(&self, a: &[u64]) -> usize {
        a.iter().zip(&self.orders).fold(0, |acc, (&x, &o)| acc * o as usize + x as usize)
    }

    pub fn is_nondegenerate(&self) -> bool {
        let gens: Vec<Vec<u64>> = (0..self.rank()).map(|i| unit(self.rank(), i)).collect();
        self.elements()
            .iter()
            .filter(|a| a.iter().any(|&x| x != 0))
            .all(|a| gens.iter().any(|g| self.b_eval(a, g) != 0))
    }

    /// Orthogonal complement of a subgroup with respect to `b`.
    pub fn perp(&self, s: &Subgroup) -> Subgroup {
        let elems: Vec<Vec<u64>> = self
            .elements()
            .into_iter()
            .filter(|a| s.generators.iter().all(|g| self.b_eval(a, g) == 0))
            .collect();
        Subgroup { generators: elems.clone(), elements: elems }
    }

    pub fn subgroup_generated(&self, gens: &[Vec<u64>]) -> Subgroup {
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let zero = vec![0u64; self.rank()];
        let mut stack = vec![zero.clone()];
        seen.insert(zero);
        while let Some(a) = stack.pop() {
            for g in gens {
                let b = self.add(&a, g);
                if seen.insert(b.clone()) {
                    stack.push(b);
                }
            }
        }
        let mut elements: Vec<Vec<u64>> = seen.into_iter().collect();
        elements.sort();
        let mut generators: Vec<Vec<u64>> = gens.iter().map(|g| self.reduce(g)).collect();
        generators.retain(|g| g.iter().any(|&x| x != 0));
        Subgroup { generators, elements }
    }

    pub fn is_isotropic(&self, s: &Subgroup) -> bool {
        s.elements.iter().all(|a| self.q_eval(a) == 0)
    }

    pub fn is_lagrangian(&self, s: &Subgroup) -> bool {
        self.is_isotropic(s) && s.order() * s.order() == self.order() && self.perp(s).elements == s.elements
    }

    /// All isotropic subgroups (`q|_T = 0`), each listed once.
    pub fn isotropic_subgroups(&self, budget: usize) -> (Vec<Subgroup>, bool) {
        let zeros: Vec<Vec<u64>> = self
            .elements()
            .into_iter()
            .filter(|a| a.iter().any(|&x| x != 0) && self.q_eval(a) == 0)
            .collect();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut out: Vec<Subgroup> = Vec::new();
        let mut partial = false;
        let trivial = self.subgroup_generated(&[]);
        let mut stack: Vec<Subgroup> = vec![trivial];
        while let Some(s) = stack.pop() {
            let key: Vec<u64> = s.elements.iter().map(|e| self.index_of(e) as u64).collect();
            if !seen.insert(key) {
                continue;
            }
            if seen.len() > budget {
                partial = true;
                break;
            }
            for a in &zeros {
                if s.contains(a) || s.generators.iter().any(|g| self.b_eval(a, g) != 0) {
                    continue;
                }
                let mut gens = s.generators.clone();
                gens.push(a.clone());
                stack.push(self.subgroup_generated(&gens));
            }
            out.push(s);
        }
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        (out, partial)
    }

    /// Every Lagrangian subgroup, each rechecked.
    pub fn lagrangian_search(&self) -> LagrangianSearch {
        self.lagrangian_search_with(SUBGROUP_BUDGET, &[])
    }

    /// Lagrangians invariant under the given coordinate automorphisms (columns = images of generators).
    pub fn lagrangian_search_with(&self, budget: usize, stable_under: &[Vec<Vec<u64>>]) -> LagrangianSearch {
        let (iso, partial) = self.isotropic_subgroups(budget);
        let lagrangians = iso
            .into_iter()
            .filter(|s| s.order() * s.order() == self.order())
            .filter(|s| self.is_lagrangian(s))
            .filter(|s| stable_under.iter().all(|m| self.is_stable(s, m)))
            .collect();
        LagrangianSearch { lagrangians, partial }
    }

    pub fn apply(&self, m: &[Vec<u64>], a: &[u64]) -> Vec<u64> {
        let k = self.rank();
        let out: Vec<u64> = (0..k)
            .map(|i| (0..k).fold(0u64, |acc, j| (acc + m[i][j] * a[j]) % self.orders[i]))
            .collect();
        out
    }

    pub fn is_stable(&self, s: &Subgroup, m: &[Vec<u64>]) -> bool {
        s.generators.iter().all(|g| s.contains(&self.apply(m, g)))
    }

    pub fn is_metabolic(&self) -> bool {
        !self.lagrangian_search().lagrangians.is_empty()
    }

    pub fn direct_sum(&self, other: &MetricGroup) -> Result<MetricGroup> {
        if self.modulus != other.modulus {
            return Err(Error::Invalid(format!("moduli {} and {} differ", self.modulus, other.modulus)));
        }
        let (k, l) = (self.rank(), other.rank());
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let mut q = self.q_gen.clone();
        q.extend(&other.q_gen);
        let mut b = vec![vec![0u64; k + l]; k + l];
        for i in 0..k {
            for j in 0..k {
                b[i][j] = self.b_gram[i][j];
            }
        }
        for i in 0..l {
            for j in 0..l {
                b[k + i][k + j] = other.b_gram[i][j];
            }
        }
        MetricGroup::new(self.modulus, orders, q, b)
    }

    pub fn opposite(&self) -> MetricGroup {
        let n = self.modulus;
        MetricGroup {
            modulus: n,
            orders: self.orders.clone(),
            q_gen: self.q_gen.iter().map(|&v| zn::neg(v, n)).collect(),
            b_gram: self.b_gram.iter().map(|r| r.iter().map(|&v| zn::neg(v, n)).collect()).collect(),
        }
    }

    /// Multiset of `(order, q)` over all elements.
    pub fn value_profile(&self) -> BTreeMap<(u64, u64), usize> {
        let mut m = BTreeMap::new();
        for a in self.elements() {
            *m.entry((self.element_order(&a), self.q_eval(&a))).or_insert(0) += 1;
        }
        m
    }

    /// An isometry `self → other` as images of the generators, if one exists.
    pub fn iso_check(&self, other: &MetricGroup) -> Result<Option<Vec<Vec<u64>>>> {
        if self.modulus != other.modulus || self.order() != other.order() {
            return Ok(None);
        }
        if self.order() > 1 << 16 {
            return Err(Error::Budget(format!("isometry search on a group of order {}", self.order())));
        }
        if self.value_profile() != other.value_profile() {
            return Ok(None);
        }
        let targets = other.elements();
        let mut images: Vec<Vec<u64>> = Vec::new();
        if self.extend_iso(other, &targets, &mut images) {
            Ok(Some(images))
        } else {
            Ok(None)
        }
    }

    fn extend_iso(&self, other: &MetricGroup, targets: &[Vec<u64>], images: &mut Vec<Vec<u64>>) -> bool {
        let i = images.len();
        if i == self.rank() {
            let img: HashSet<Vec<u64>> = self.elements().iter().map(|a| self.map_elem(other, images, a)).collect();
            return img.len() == other.order();
        }
        for h in targets {
            let o = self.orders[i];
            if other.scale(o, h).iter().any(|&x| x != 0) {
                continue;
            }
            if other.q_eval(h) != self.q_gen[i] {
                continue;
            }
            if (0..i).any(|j| other.b_eval(h, &images[j]) != self.b_gram[i][j]) {
                continue;
            }
            images.push(h.clone());
            if self.extend_iso(other, targets, images) {
                return true;
            }
            images.pop();
        }
        false
    }

    fn map_elem(&self, other: &MetricGroup, images: &[Vec<u64>], a: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; other.rank()];
        for (c, img) in a.iter().zip(images) {
            out = other.add(&out, &other.scale(*c, img));
        }
        out
    }

    /// Combines coprime prime-power components into one group over `Z_n`.
    pub fn crt_product(parts: &[MetricGroup]) -> Result<MetricGroup> {
        let n: u64 = parts.iter().map(|g| g.modulus).product();
        let moduli: Vec<u64> = parts.iter().map(|g| g.modulus).collect();
        for (i, &a) in moduli.iter().enumerate() {
            for &b in &moduli[i + 1..] {
                if zn::gcd(a, b) != 1 {
                    return Err(Error::Invalid("CRT components must have coprime moduli".into()));
                }
            }
        }
        let k = parts.iter().map(MetricGroup::rank).max().unwrap_or(0);
        // Align each component's invariant factors at the top end.
        let pad = |g: &MetricGroup| k - g.rank();
        let idem: Vec<u64> = moduli
            .iter()
            .map(|&q| {
                let m = n / q;
                zn::mul(m, zn::inv(m % q, q).expect("coprime"), n)
            })
            .collect();
        let lift = |vals: Vec<u64>| -> u64 {
            vals.iter().zip(&idem).fold(0, |acc, (&v, &e)| zn::add(acc, zn::mul(v, e, n), n))
        };
        let comp = |g: &MetricGroup, i: usize| -> Option<usize> { i.checked_sub(pad(g)) };
        let orders: Vec<u64> = (0..k)
            .map(|i| parts.iter().map(|g| comp(g, i).map_or(1, |t| g.orders[t])).product())
            .collect();
        let q: Vec<u64> = (0..k)
            .map(|i| lift(parts.iter().map(|g| comp(g, i).map_or(0, |t| g.q_gen[t])).collect()))
            .collect();
        let b: Vec<Vec<u64>> = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| {
                        lift(
                            parts
                                .iter()
                                .map(|g| match (comp(g, i), comp(g, j)) {
                                    (Some(s), Some(t)) => g.b_gram[s][t],
                                    _ => 0,
                                })
                                .collect(),
                        )
                    })
                    .collect()
            })
            .collect();
        MetricGroup::new(n, orders, q, b)
    }
}

fn unit(k: usize, i: usize) -> Vec<u64> {
    let mut v = vec![0u64; k];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn toric() -> MetricGroup {
        MetricGroup::new(2, vec![2, 2], vec![0, 0], vec![vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn toric_values() {
        let g = toric();
        assert_eq!(g.q_eval(&[1, 0]), 0);
        assert_eq!(g.q_eval(&[0, 1]), 0);
        assert_eq!(g.q_eval(&[1, 1]), 1);
        assert!(g.is_nondegenerate());
    }

    #[test]
    fn toric_has_two_lagrangians() {
        let s = toric().lagrangian_search();
        assert!(!s.partial);
        assert_eq!(s.lagrangians.len(), 2);
    }

    #[test]
    fn semion_pair_without_isotropic_line() {
        // q = 1 on both generators and on their sum: no order-2 element with q = 0
        let g = MetricGroup::new(2, vec![2, 2], vec![1, 1], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert!(g.lagrangian_search().lagrangians.is_empty());
    }

    #[test]
    fn degenerate_line() {
        let g = MetricGroup::new(2, vec![2], vec![0], vec![vec![0]]).unwrap();
        assert!(!g.is_nondegenerate());
    }

    #[test]
    fn sum_with_opposite_is_metabolic() {
        let g = toric();
        let s = g.direct_sum(&g.opposite()).unwrap();
        assert!(s.is_metabolic());
        assert_eq!(g.opposite().opposite(), g);
    }

    #[test]
    fn iso_detects_q_distribution() {
        let g = toric();
        let flat = MetricGroup::new(2, vec![2, 2], vec![0, 0], vec![vec![0, 0], vec![0, 0]]).unwrap();
        assert!(g.iso_check(&g).unwrap().is_some());
        assert!(g.iso_check(&flat).unwrap().is_none());
    }

    #[test]
    fn crt_product_of_toric_components() {
        let g2 = toric();
        let g3 = MetricGroup::new(3, vec![3, 3], vec![0, 0], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let g6 = MetricGroup::crt_product(&[g2, g3]).unwrap();
        assert_eq!(g6.invariant_factors(), &[6, 6]);
        assert_eq!(g6.order(), 36);
        assert!(g6.is_nondegenerate());
    }
}
