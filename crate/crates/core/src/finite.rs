//! Finite quotients `R^k / M` as explicit finite abelian groups.
//!
//! The standard terms of a Gröbner basis span the quotient additively. A standard
//! term `m` has additive order dividing `p^{s_m}`, where `p^{s_m}` is the smallest
//! leading coefficient among basis elements whose leading monomial divides `m`, and
//! `p^{s_m}·m` rewrites to its normal form. Smith form over `Z_{p^r}` of these
//! relations gives canonical cyclic coordinates.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::groebner::engine::{lead, Mono, Term, MAXV};
use crate::groebner::{groebner, kernel, quotient_presentation, GroebnerBasis, ImageSolver, QuotientPresentation};
use crate::linalg::{FreeVector, Matrix, SubmodulePresentation};
use crate::ring::{zn, LaurentPoly, Ring};
use crate::smith::{local_smith, LocalSmith};

/// Budget on the number of standard terms enumerated.
pub const DEFAULT_TERM_BUDGET: usize = 1 << 16;

/// A finite quotient `R^k / M` over `Z_{p^r}` with canonical coordinates.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    rank: usize,
    gb: GroebnerBasis,
    terms: Vec<Term>,
    index: HashMap<Term, usize>,
    snf: LocalSmith,
    /// Smith rows carrying nontrivial cyclic factors, sorted by order.
    kept: Vec<usize>,
    orders: Vec<u64>,
}

impl FiniteModule {
    /// Returns `Ok(None)` when the quotient is infinite.
    pub fn new(m: &SubmodulePresentation) -> Result<Option<Self>> {
        Self::with_budget(m, DEFAULT_TERM_BUDGET)
    }

    pub fn with_budget(m: &SubmodulePresentation, budget: usize) -> Result<Option<Self>> {
        let gb = groebner(m)?;
        let zr = gb.emb.zr;
        let nv = gb.emb.ring.nvars + 1;
        let basis = &gb.inner;
        let s_of = |t: &Term| basis.min_val_dividing(t);

        // Finiteness: every live position needs a pure power of every variable with unit lead.
        for pos in 0..m.rank() as u32 {
            let one = Term { pos, m: Mono::one() };
            if s_of(&one) == 0 {
                continue;
            }
            for var in 0..nv {
                let bounded = basis.elems.iter().any(|f| {
                    let &(t, c) = lead(f).expect("nonzero");
                    t.pos == pos
                        && zr.val(c) == 0
                        && (0..MAXV).all(|i| i == var || t.m.e[i] == 0)
                });
                if !bounded {
                    return Ok(None);
                }
            }
        }

        let mut terms: Vec<Term> = Vec::new();
        let mut index: HashMap<Term, usize> = HashMap::new();
        let mut queue: VecDeque<Term> = VecDeque::new();
        for pos in 0..m.rank() as u32 {
            let one = Term { pos, m: Mono::one() };
            if s_of(&one) > 0 {
                index.insert(one, terms.len());
                terms.push(one);
                queue.push_back(one);
            }
        }
        while let Some(t) = queue.pop_front() {
            for var in 0..nv {
                let mut e = [0u32; MAXV];
                e[var] = 1;
                let next = Term { pos: t.pos, m: t.m.mul(&Mono::from_exps(&e[..nv])) };
                if index.contains_key(&next) || s_of(&next) == 0 {
                    continue;
                }
                if terms.len() >= budget {
                    return Err(Error::Budget(format!("finite quotient exceeds {budget} standard terms")));
                }
                index.insert(next, terms.len());
                terms.push(next);
                queue.push_back(next);
            }
        }

        let n_terms = terms.len();
        let mut rel_cols: Vec<Vec<u64>> = Vec::new();
        for (k, t) in terms.iter().enumerate() {
            let s = s_of(t);
            if s >= zr.r {
                continue;
            }
            let ps = zr.p.pow(s);
            let nf = basis.reduce(&vec![(*t, ps % zr.n)]);
            let mut col = vec![0u64; n_terms];
            col[k] = ps % zr.n;
            for (u, c) in nf {
                let j = index[&u];
                col[j] = zn::sub(col[j], c, zr.n);
            }
            rel_cols.push(col);
        }
        let mat: Vec<Vec<u64>> = (0..n_terms).map(|i| rel_cols.iter().map(|c| c[i]).collect()).collect();
        let snf = local_smith(&mat, n_terms, zr.p, zr.r);
        let mut kept: Vec<usize> = (0..n_terms).filter(|&k| snf.exps[k] > 0).collect();
        kept.sort_by_key(|&k| (snf.exps[k], k));
        let orders = kept.iter().map(|&k| zr.p.pow(snf.exps[k])).collect();
        Ok(Some(FiniteModule { rank: m.rank(), gb, terms, index, snf, kept, orders }))
    }

    pub fn ring(&self) -> Ring {
        self.gb.emb.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Orders of the cyclic factors, each dividing the next.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.orders
    }

    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.is_empty()
    }

    /// Dimension over `Z_p` of the quotient when `p` kills it (number of standard terms).
    pub fn standard_term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    /// Canonical coordinates of the class of `v`.
    pub fn coords(&self, v: &FreeVector) -> Vec<u64> {
        let nf = self.gb.inner.reduce(&self.gb.emb.vec(v, 0));
        let mut x = vec![0u64; self.terms.len()];
        for (t, c) in nf {
            x[self.index[&t]] = c;
        }
        let y = self.snf.coords(&x);
        self.kept.iter().map(|&k| y[k]).collect()
    }

    pub fn is_zero(&self, v: &FreeVector) -> bool {
        self.coords(v).iter().all(|&c| c == 0)
    }

    /// A representative of the class with the given coordinates.
    pub fn element(&self, coords: &[u64]) -> FreeVector {
        let n = self.snf.n;
        let mut x = vec![0u64; self.terms.len()];
        for (&k, &c) in self.kept.iter().zip(coords) {
            for (i, xi) in x.iter_mut().enumerate() {
                *xi = zn::add(*xi, zn::mul(self.snf.uinv[i][k], c, n), n);
            }
        }
        let ring = self.ring();
        let mut entries = vec![ring.zero(); self.rank];
        for (t, &c) in self.terms.iter().zip(&x) {
            if c != 0 {
                entries[t.pos as usize].add_term(self.gb.emb.unmono(&t.m), c);
            }
        }
        FreeVector::new(ring, entries)
    }

    pub fn generator(&self, k: usize) -> FreeVector {
        let mut c = vec![0u64; self.orders.len()];
        c[k] = 1;
        self.element(&c)
    }

    /// Matrix of multiplication by `f` in canonical coordinates (column `j` is the image of generator `j`).
    pub fn action(&self, f: &LaurentPoly) -> Vec<Vec<u64>> {
        let cols: Vec<Vec<u64>> = (0..self.orders.len())
            .map(|j| self.coords(&self.generator(j).scale(f)))
            .collect();
        (0..self.orders.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }

    /// Adds two coordinate vectors.
    pub fn add_coords(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((&x, &y), &o)| (x + y) % o).collect()
    }

    /// Every element, in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &o in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..o).map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// `ker(K^†) / im(G)` inside `R^k`: functionals given by their values on `k` generators,
/// modulo an image. Used for `E_P` and for the charge module.
pub struct DualQuotient {
    ring: Ring,
    rank: usize,
    dual_gens: Option<Matrix>,
    dual_solver: Option<ImageSolver>,
    image_solver: Option<ImageSolver>,
    presentation: QuotientPresentation,
    finite: Option<FiniteModule>,
    finiteness_known: bool,
    /// Prime-power components when the modulus is composite.
    components: Vec<DualQuotient>,
}

impl DualQuotient {
    /// `relations` are the columns of `K`; `image` has `k` rows.
    pub fn new(relations: &SubmodulePresentation, image: &Matrix) -> Result<Self> {
        let ring = image.ring();
        let k = image.rows();
        if relations.rank() != k {
            return Err(Error::Shape("relations and image live in different free modules".into()));
        }
        let (dual_gens, dual_solver, t) = if relations.is_empty() {
            (None, None, k)
        } else {
            let d = kernel(&relations.to_matrix().adjoint())?.to_matrix();
            let t = d.cols();
            (Some(d.clone()), Some(ImageSolver::new(&d)?), t)
        };
        let image_solver = if image.cols() == 0 || k == 0 { None } else { Some(ImageSolver::new(image)?) };
        let mut rels: Vec<FreeVector> = Vec::new();
        for col in image.columns() {
            let v = match &dual_solver {
                None => col,
                Some(s) => s
                    .solve(&col)
                    .ok_or_else(|| Error::Inconsistent("image does not consist of functionals".into()))?,
            };
            rels.push(v);
        }
        if let Some(s) = &dual_solver {
            rels.extend(s.kernel());
        }
        let rel = SubmodulePresentation::new(ring, t, rels)?;
        let presentation = quotient_presentation(t, &rel)?;
        let (finite, finiteness_known) = if t == 0 {
            (None, true)
        } else if ring.modulus().prime_power().is_some() {
            (FiniteModule::new(&rel)?, true)
        } else {
            (None, false)
        };
        let components = if finiteness_known {
            Vec::new()
        } else {
            ring.modulus()
                .components()
                .into_iter()
                .map(|q| {
                    let rels = relations.generators().iter().map(|g| g.reduce_mod(q)).collect();
                    DualQuotient::new(&SubmodulePresentation::new(ring.with_modulus(q), k, rels)?, &image.reduce_mod(q))
                })
                .collect::<Result<_>>()?
        };
        Ok(DualQuotient { ring, rank: k, dual_gens, dual_solver, image_solver, presentation, finite, finiteness_known, components })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Number of values describing a functional.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Presentation as a quotient of the free module on the functional generators.
    pub fn presentation(&self) -> &QuotientPresentation {
        &self.presentation
    }

    /// Generators of the functionals (columns), `None` when every value tuple is allowed.
    pub fn functional_generators(&self) -> Option<&Matrix> {
        self.dual_gens.as_ref()
    }

    /// `Some(true)` when finite, `Some(false)` when infinite, `None` when undecided.
    /// Composite moduli are decided on their prime-power components.
    pub fn is_finite(&self) -> Option<bool> {
        if self.presentation.rank == 0 {
            return Some(true);
        }
        if !self.components.is_empty() {
            let parts: Option<Vec<bool>> = self.components.iter().map(DualQuotient::is_finite).collect();
            return parts.map(|p| p.into_iter().all(|f| f));
        }
        self.finiteness_known.then_some(self.finite.is_some())
    }

    /// Prime-power components of a quotient over a composite modulus.
    pub fn components(&self) -> &[DualQuotient] {
        &self.components
    }

    pub fn finite(&self) -> Option<&FiniteModule> {
        self.finite.as_ref()
    }

    /// Ascending invariant factors; components of a composite modulus are merged at the top end.
    pub fn invariant_factors(&self) -> Vec<u64> {
        if self.components.is_empty() {
            return self.finite.as_ref().map_or_else(Vec::new, |f| f.invariant_factors().to_vec());
        }
        if self.is_finite() != Some(true) {
            return Vec::new();
        }
        let parts: Vec<Vec<u64>> = self.components.iter().map(DualQuotient::invariant_factors).collect();
        let k = parts.iter().map(Vec::len).max().unwrap_or(0);
        (0..k)
            .map(|i| parts.iter().map(|p| (i + p.len()).checked_sub(k).map_or(1, |t| p[t])).product())
            .collect()
    }

    pub fn order(&self) -> Option<u128> {
        match self.is_finite() {
            Some(true) if !self.components.is_empty() => self.components.iter().map(DualQuotient::order).product(),
            Some(true) => Some(self.finite.as_ref().map_or(1, FiniteModule::order)),
            _ => None,
        }
    }

    pub fn is_functional(&self, h: &FreeVector) -> bool {
        match &self.dual_solver {
            None => true,
            Some(s) => s.contains(h),
        }
    }

    /// Whether the functional `h` lies in the image.
    pub fn is_zero_class(&self, h: &FreeVector) -> bool {
        match &self.image_solver {
            None => h.is_zero(),
            Some(s) => s.contains(h),
        }
    }

    /// Canonical coordinates of the class of `h` (finite case).
    pub fn class_of(&self, h: &FreeVector) -> Result<Vec<u64>> {
        let v = match &self.dual_solver {
            None => h.clone(),
            Some(s) => s.solve(h).ok_or_else(|| Error::Invalid("values do not define a functional".into()))?,
        };
        match &self.finite {
            Some(fm) => Ok(fm.coords(&v)),
            None if self.is_finite() == Some(true) => Ok(Vec::new()),
            None => Err(Error::Unsupported("class coordinates need a finite prime-power quotient".into())),
        }
    }

    /// Values of a representative functional for canonical coordinates.
    pub fn representative(&self, coords: &[u64]) -> FreeVector {
        let Some(fm) = &self.finite else { return FreeVector::zero(self.ring, self.rank) };
        let v = fm.element(coords);
        match &self.dual_gens {
            None => v,
            Some(d) => d.apply(&v),
        }
    }

    /// Matrix of multiplication by `f` on canonical coordinates.
    pub fn action(&self, f: &LaurentPoly) -> Vec<Vec<u64>> {
        self.finite.as_ref().map_or_else(Vec::new, |fm| fm.action(f))
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.finite.as_ref().map_or_else(|| vec![Vec::new()], FiniteModule::elements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec1(r: Ring, s: &[&str]) -> FreeVector {
        FreeVector::new(r, s.iter().map(|x| r.parse(x).unwrap()).collect())
    }

    #[test]
    fn cyclic_quotient_over_f2() {
        let r = Ring::new(1, 2).unwrap();
        let m = SubmodulePresentation::new(r, 1, vec![vec1(r, &["1 + x^2"])]).unwrap();
        let f = FiniteModule::new(&m).unwrap().unwrap();
        assert_eq!(f.invariant_factors(), &[2, 2]);
        assert!(f.is_zero(&vec1(r, &["x^-1 + x"])));
        assert!(!f.is_zero(&vec1(r, &["x^-1"])));
    }

    #[test]
    fn free_quotient_is_infinite() {
        let r = Ring::new(1, 3).unwrap();
        let m = SubmodulePresentation::zero(r, 1);
        assert!(FiniteModule::new(&m).unwrap().is_none());
    }

    #[test]
    fn chain_ring_quotient() {
        // Z_4[x^±]/(x - 1) = Z_4
        let r = Ring::new(1, 4).unwrap();
        let m = SubmodulePresentation::new(r, 1, vec![vec1(r, &["x - 1"])]).unwrap();
        let f = FiniteModule::new(&m).unwrap().unwrap();
        assert_eq!(f.invariant_factors(), &[4]);
        assert_eq!(f.coords(&vec1(r, &["x^5 + x^-2"])), vec![2]);
    }

    #[test]
    fn representatives_roundtrip() {
        let r = Ring::new(2, 2).unwrap();
        let m = SubmodulePresentation::new(
            r,
            2,
            vec![vec1(r, &["1 + x", "0"]), vec1(r, &["1 + y", "0"]), vec1(r, &["0", "1 + x*y"]), vec1(r, &["0", "1 + y"])],
        )
        .unwrap();
        let f = FiniteModule::new(&m).unwrap().unwrap();
        assert_eq!(f.order(), 4);
        for c in f.elements() {
            assert_eq!(f.coords(&f.element(&c)), c);
        }
    }
}
