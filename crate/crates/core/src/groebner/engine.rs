//! Buchberger's algorithm for submodules of `A^k`, `A = Z_{p^r}[y_1, ..., y_v]`,
//! under a position-over-term order with degree-lexicographic terms.
//!
//! For `r > 1` the basis is a strong Gröbner basis: S-vectors are formed with
//! `p`-power cofactors and every element whose leading coefficient is `p^s u`
//! also contributes its annihilator multiple `p^{r-s}·g`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::ring::zn;

pub(crate) const MAXV: usize = 8;

/// Monomial in at most [`MAXV`] variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Mono {
    pub deg: u32,
    pub e: [u16; MAXV],
}

impl Mono {
    pub fn one() -> Self {
        Mono { deg: 0, e: [0; MAXV] }
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        let mut e = [0u16; MAXV];
        let mut deg = 0;
        for (i, &x) in exps.iter().enumerate() {
            e[i] = u16::try_from(x).expect("exponent exceeds engine range");
            deg += x;
        }
        Mono { deg, e }
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.deg <= other.deg && self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0u16; MAXV];
        for i in 0..MAXV {
            e[i] = self.e[i] + other.e[i];
        }
        Mono { deg: self.deg + other.deg, e }
    }

    /// `self / other`, assuming `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Mono {
        let mut e = [0u16; MAXV];
        for i in 0..MAXV {
            e[i] = self.e[i] - other.e[i];
        }
        Mono { deg: self.deg - other.deg, e }
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut e = [0u16; MAXV];
        let mut deg = 0;
        for i in 0..MAXV {
            e[i] = self.e[i].max(other.e[i]);
            deg += e[i] as u32;
        }
        Mono { deg, e }
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg.cmp(&other.deg).then_with(|| self.e.cmp(&other.e))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Module term `m·e_pos`. Lower positions dominate (position over term).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Term {
    pub pos: u32,
    pub m: Mono,
}

impl Ord for Term {
    fn cmp(&self, other: &Self) -> Ordering {
        other.pos.cmp(&self.pos).then_with(|| self.m.cmp(&other.m))
    }
}

impl PartialOrd for Term {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Vector of polynomials stored as terms in ascending order; the leading term is last.
pub(crate) type VPoly = Vec<(Term, u64)>;

/// Coefficient ring `Z_{p^r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Zpr {
    pub p: u64,
    pub r: u32,
    pub n: u64,
}

impl Zpr {
    pub fn new(p: u64, r: u32) -> Self {
        Zpr { p, r, n: p.pow(r) }
    }

    pub fn is_field(&self) -> bool {
        self.r == 1
    }

    pub fn val(&self, c: u64) -> u32 {
        zn::valuation(c, self.p, self.r)
    }

    /// Inverse of the unit part `u` of `c = p^v u`.
    pub fn unit_inv(&self, c: u64) -> u64 {
        let v = self.val(c);
        let u = c / self.p.pow(v);
        zn::inv(u, self.n).expect("unit part is invertible")
    }
}

pub(crate) fn lead(f: &VPoly) -> Option<&(Term, u64)> {
    f.last()
}

/// `f - q·x^s·g` with both inputs ascending.
pub(crate) fn sub_mul(f: &VPoly, q: u64, s: &Mono, g: &VPoly, zr: Zpr) -> VPoly {
    let n = zr.n;
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut j = 0;
    let gterm = |k: usize| -> (Term, u64) {
        let (t, c) = g[k];
        (Term { pos: t.pos, m: t.m.mul(s) }, zn::mul(c, q, n))
    };
    while i < f.len() || j < g.len() {
        if j >= g.len() {
            out.extend_from_slice(&f[i..]);
            break;
        }
        let (gt, gc) = gterm(j);
        if gc == 0 {
            j += 1;
            continue;
        }
        if i >= f.len() {
            out.push((gt, zn::neg(gc, n)));
            j += 1;
            continue;
        }
        match f[i].0.cmp(&gt) {
            Ordering::Less => {
                out.push(f[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push((gt, zn::neg(gc, n)));
                j += 1;
            }
            Ordering::Equal => {
                let c = zn::sub(f[i].1, gc, n);
                if c != 0 {
                    out.push((gt, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

pub(crate) fn scale(f: &VPoly, c: u64, zr: Zpr) -> VPoly {
    f.iter()
        .filter_map(|&(t, a)| {
            let v = zn::mul(a, c, zr.n);
            (v != 0).then_some((t, v))
        })
        .collect()
}

/// Makes the leading coefficient a power of `p`.
pub(crate) fn normalize(f: VPoly, zr: Zpr) -> VPoly {
    match lead(&f) {
        None => f,
        Some(&(_, c)) => {
            let u = zr.unit_inv(c);
            if u == 1 {
                f
            } else {
                scale(&f, u, zr)
            }
        }
    }
}

/// A basis with per-position index for reducer lookup.
#[derive(Clone, Debug)]
pub(crate) struct Basis {
    pub zr: Zpr,
    pub elems: Vec<VPoly>,
    by_pos: Vec<Vec<usize>>,
}

impl Basis {
    pub fn new(zr: Zpr) -> Self {
        Basis { zr, elems: Vec::new(), by_pos: Vec::new() }
    }

    pub fn from_elems(zr: Zpr, elems: Vec<VPoly>) -> Self {
        let mut b = Basis::new(zr);
        for e in elems {
            b.push(e);
        }
        b
    }

    pub fn push(&mut self, f: VPoly) -> usize {
        let pos = lead(&f).expect("nonzero basis element").0.pos as usize;
        if self.by_pos.len() <= pos {
            self.by_pos.resize(pos + 1, Vec::new());
        }
        let idx = self.elems.len();
        self.by_pos[pos].push(idx);
        self.elems.push(f);
        idx
    }

    /// Basis element whose leading term strongly divides `c·t`, preferring small valuation.
    pub fn reducer(&self, t: &Term, c: u64) -> Option<usize> {
        let list = self.by_pos.get(t.pos as usize)?;
        let vc = self.zr.val(c);
        let mut best: Option<(u32, usize)> = None;
        for &i in list {
            let &(lt, lc) = lead(&self.elems[i]).expect("nonzero");
            if lt.m.divides(&t.m) {
                let v = self.zr.val(lc);
                if v <= vc && best.map_or(true, |(bv, _)| v < bv) {
                    best = Some((v, i));
                    if v == 0 {
                        break;
                    }
                }
            }
        }
        best.map(|(_, i)| i)
    }

    /// Smallest valuation among leading coefficients whose monomial divides `t`
    /// (`r` when none does).
    pub fn min_val_dividing(&self, t: &Term) -> u32 {
        let mut best = self.zr.r;
        if let Some(list) = self.by_pos.get(t.pos as usize) {
            for &i in list {
                let &(lt, lc) = lead(&self.elems[i]).expect("nonzero");
                if lt.m.divides(&t.m) {
                    best = best.min(self.zr.val(lc));
                }
            }
        }
        best
    }

    fn cofactor(&self, i: usize, c: u64) -> u64 {
        let lc = lead(&self.elems[i]).expect("nonzero").1;
        let v = self.zr.val(lc);
        // c = p^v·w; lc = p^v·u  =>  q = w·u^{-1}
        let w = c / self.zr.p.pow(v);
        zn::mul(w % self.zr.n, self.zr.unit_inv(lc), self.zr.n)
    }

    /// Full reduction: every remaining term is irreducible.
    pub fn reduce(&self, f: &VPoly) -> VPoly {
        let mut f = f.clone();
        let mut rest: VPoly = Vec::new();
        while let Some(&(t, c)) = lead(&f) {
            match self.reducer(&t, c) {
                Some(i) => {
                    let g = &self.elems[i];
                    let q = self.cofactor(i, c);
                    let s = t.m.div(&lead(g).expect("nonzero").0.m);
                    f = sub_mul(&f, q, &s, g, self.zr);
                }
                None => {
                    rest.push(f.pop().expect("nonempty"));
                }
            }
        }
        rest.reverse();
        rest
    }

    /// Reduction that stops as soon as the leading term lies at a position `>= stop_pos`;
    /// returns the remainder (used for lifting through extended modules).
    pub fn reduce_above(&self, f: &VPoly, stop_pos: u32) -> VPoly {
        let mut f = f.clone();
        while let Some(&(t, c)) = lead(&f) {
            if t.pos >= stop_pos {
                break;
            }
            match self.reducer(&t, c) {
                Some(i) => {
                    let g = &self.elems[i];
                    let q = self.cofactor(i, c);
                    let s = t.m.div(&lead(g).expect("nonzero").0.m);
                    f = sub_mul(&f, q, &s, g, self.zr);
                }
                None => break,
            }
        }
        f
    }
}

/// Limits for a Gröbner run.
#[derive(Clone, Copy, Debug)]
pub struct GbLimits {
    pub max_basis: usize,
    pub max_pairs: usize,
}

impl Default for GbLimits {
    fn default() -> Self {
        GbLimits { max_basis: 20_000, max_pairs: 2_000_000 }
    }
}

#[derive(PartialEq, Eq, Debug)]
struct PairKey {
    deg: u32,
    lcm: Term,
    i: usize,
    j: usize,
}

impl Ord for PairKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.deg
            .cmp(&other.deg)
            .then_with(|| self.lcm.cmp(&other.lcm))
            .then_with(|| self.i.cmp(&other.i))
            .then_with(|| self.j.cmp(&other.j))
    }
}

impl PartialOrd for PairKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

const APOLY: usize = usize::MAX;

fn spoly(f: &VPoly, g: &VPoly, zr: Zpr) -> VPoly {
    let &(tf, cf) = lead(f).expect("nonzero");
    let &(tg, cg) = lead(g).expect("nonzero");
    let l = tf.m.lcm(&tg.m);
    let (vf, vg) = (zr.val(cf), zr.val(cg));
    // Leading coefficients are normalized to p^vf, p^vg.
    let (a, b) = if vf <= vg {
        (zr.p.pow(vg - vf) % zr.n, 1)
    } else {
        (1, zr.p.pow(vf - vg) % zr.n)
    };
    let left = scale(&shift(f, &l.div(&tf.m)), a, zr);
    sub_mul(&left, b, &l.div(&tg.m), g, zr)
}

fn shift(f: &VPoly, s: &Mono) -> VPoly {
    f.iter()
        .map(|&(t, c)| (Term { pos: t.pos, m: t.m.mul(s) }, c))
        .collect()
}

/// Computes a reduced (strong) Gröbner basis of the module generated by `gens`.
pub(crate) fn groebner(gens: &[VPoly], zr: Zpr, limits: GbLimits) -> Result<Vec<VPoly>> {
    let mut basis = Basis::new(zr);
    let mut live: Vec<bool> = Vec::new();
    let mut pairs: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
    let mut processed = 0usize;

    let add_elem = |h: VPoly,
                        basis: &mut Basis,
                        live: &mut Vec<bool>,
                        pairs: &mut BinaryHeap<Reverse<PairKey>>|
     -> Result<()> {
        let h = normalize(h, zr);
        let &(th, ch) = lead(&h).expect("nonzero");
        if basis.elems.len() >= limits.max_basis {
            return Err(Error::Budget(format!(
                "Gröbner basis exceeded {} elements",
                limits.max_basis
            )));
        }
        let k = basis.push(h);
        live.push(true);
        let mut new_pairs: Vec<PairKey> = Vec::new();
        for (i, g) in basis.elems.iter().enumerate().take(k) {
            if !live[i] {
                continue;
            }
            let &(tg, _) = lead(g).expect("nonzero");
            if tg.pos != th.pos {
                continue;
            }
            let l = Term { pos: th.pos, m: tg.m.lcm(&th.m) };
            new_pairs.push(PairKey { deg: l.m.deg, lcm: l, i, j: k });
        }
        if zr.is_field() {
            // Gebauer–Möller style pruning (valid over fields).
            let old: Vec<PairKey> = std::mem::take(pairs).into_iter().map(|Reverse(p)| p).collect();
            let lead_of = |i: usize| lead(&basis.elems[i]).expect("nonzero").0;
            for p in old {
                if p.j == APOLY {
                    pairs.push(Reverse(p));
                    continue;
                }
                let keep = !(p.lcm.pos == th.pos && th.m.divides(&p.lcm.m) && {
                    let li = lead_of(p.i).m.lcm(&th.m);
                    let lj = lead_of(p.j).m.lcm(&th.m);
                    li != p.lcm.m && lj != p.lcm.m
                });
                if keep {
                    pairs.push(Reverse(p));
                }
            }
            new_pairs.sort();
            let mut kept: Vec<PairKey> = Vec::new();
            for p in new_pairs {
                if kept.iter().any(|q| q.lcm.m.divides(&p.lcm.m)) {
                    continue;
                }
                kept.push(p);
            }
            for p in kept {
                pairs.push(Reverse(p));
            }
        } else {
            for p in new_pairs {
                pairs.push(Reverse(p));
            }
            if zr.val(ch) > 0 {
                pairs.push(Reverse(PairKey { deg: th.m.deg, lcm: th, i: k, j: APOLY }));
            }
        }
        Ok(())
    };

    for g in gens {
        let h = basis.reduce(g);
        if !h.is_empty() {
            add_elem(h, &mut basis, &mut live, &mut pairs)?;
        }
    }

    while let Some(Reverse(p)) = pairs.pop() {
        processed += 1;
        if processed > limits.max_pairs {
            return Err(Error::Budget(format!(
                "Gröbner run exceeded {} pair reductions",
                limits.max_pairs
            )));
        }
        let s = if p.j == APOLY {
            let f = &basis.elems[p.i];
            let v = zr.val(lead(f).expect("nonzero").1);
            scale(f, zr.p.pow(zr.r - v), zr)
        } else {
            spoly(&basis.elems[p.i], &basis.elems[p.j], zr)
        };
        let h = basis.reduce(&s);
        if !h.is_empty() {
            add_elem(h, &mut basis, &mut live, &mut pairs)?;
        }
    }
    Ok(interreduce(basis.elems, zr))
}

/// Minimal, tail-reduced, normalized basis sorted by leading term.
pub(crate) fn interreduce(elems: Vec<VPoly>, zr: Zpr) -> Vec<VPoly> {
    let mut elems: Vec<VPoly> = elems.into_iter().filter(|f| !f.is_empty()).map(|f| normalize(f, zr)).collect();
    elems.sort_by(|a, b| {
        let (ta, ca) = *lead(a).expect("nonzero");
        let (tb, cb) = *lead(b).expect("nonzero");
        ta.cmp(&tb).then_with(|| zr.val(ca).cmp(&zr.val(cb)))
    });
    let mut minimal: Vec<VPoly> = Vec::new();
    for (idx, f) in elems.iter().enumerate() {
        let &(tf, cf) = lead(f).expect("nonzero");
        let vf = zr.val(cf);
        let redundant = elems.iter().enumerate().any(|(jdx, g)| {
            if jdx == idx {
                return false;
            }
            let &(tg, cg) = lead(g).expect("nonzero");
            let vg = zr.val(cg);
            if tg.pos != tf.pos || !tg.m.divides(&tf.m) || vg > vf {
                return false;
            }
            // Ties (same term, same valuation) keep the earlier element.
            !(tg == tf && vg == vf && jdx > idx)
        });
        if !redundant {
            minimal.push(f.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<VPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let b = Basis::from_elems(zr, others);
        let mut f = minimal[i].clone();
        let top = f.pop().expect("nonzero");
        let mut tail = b.reduce(&f);
        tail.push(top);
        out.push(normalize(tail, zr));
    }
    out.sort_by(|a, b| lead(a).expect("nonzero").0.cmp(&lead(b).expect("nonzero").0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Mono {
        Mono::from_exps(e)
    }

    fn poly(terms: &[(u32, &[u32], u64)]) -> VPoly {
        let mut v: VPoly = terms
            .iter()
            .map(|&(pos, e, c)| (Term { pos, m: mono(e) }, c))
            .collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }

    #[test]
    fn term_order_is_position_over_term() {
        let a = Term { pos: 0, m: mono(&[0]) };
        let b = Term { pos: 1, m: mono(&[5]) };
        assert!(a > b);
        let c = Term { pos: 0, m: mono(&[1, 0]) };
        let d = Term { pos: 0, m: mono(&[0, 1]) };
        assert!(c > d);
    }

    #[test]
    fn univariate_gcd_over_f2() {
        let zr = Zpr::new(2, 1);
        // (1 + x), (x + x^2) -> {1 + x}
        let f = poly(&[(0, &[0], 1), (0, &[1], 1)]);
        let g = poly(&[(0, &[1], 1), (0, &[2], 1)]);
        let gb = groebner(&[f.clone(), g], zr, GbLimits::default()).unwrap();
        assert_eq!(gb, vec![f]);
    }

    #[test]
    fn chain_ring_annihilator() {
        let zr = Zpr::new(2, 2);
        let f = poly(&[(0, &[0], 2)]);
        let g = poly(&[(0, &[1], 2), (0, &[0], 1)]);
        let gb = groebner(&[f, g], zr, GbLimits::default()).unwrap();
        // (1 + 2x)(1 - 2x) = 1 over Z_4, so the ideal is the unit ideal.
        assert_eq!(gb, vec![poly(&[(0, &[0], 1)])]);
    }
}
