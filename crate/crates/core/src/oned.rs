//! Quasi-symplectic modules over `Z_n[x^±]`: the finite group `E_P = P*/P`, its
//! quadratic form `q` and bilinear form `b`, Witt reduction to prime coefficients,
//! extension by isotropic subgroups and the metabolicity decision.
//!
//! A module is given by generators `g_i` and the Gram matrix `G_ij = Ω(g_i, g_j)`;
//! relations default to `ker G`, which is exact because the form has zero radical.
//! A functional `α ∈ P*` is stored by its values `a_i = α(g_i)`; the element
//! `p = Σ c_j g_j` maps to `a = G c`.
//!
//! For `α` with `(1 - x^N)α = Ω(·, p)` the two series representatives are
//! `α_→ = Σ_{k≥0} x^{Nk} p` and `α_← = -Σ_{k≥1} x^{-Nk} p`, so
//! `q(α) = -Σ_{s≥1} s·[x^{Ns}] Ω(p, p)` and `b` is the polarization of the same sum.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::DualQuotient;
use crate::groebner::{kernel, ImageSolver};
use crate::linalg::{FreeVector, Matrix, SubmodulePresentation};
use crate::metric::{MetricGroup, Subgroup};
use crate::ring::{zn, ExponentVector, LaurentPoly, Ring};

/// Quasi-symplectic module over `Z_n[x^±]`.
#[derive(Clone, Debug)]
pub struct QuasiSymplectic1D {
    gram: Matrix,
    relations: SubmodulePresentation,
}

/// Outcome of [`QuasiSymplectic1D::validate`].
#[derive(Clone, Debug, Default, Serialize)]
pub struct Validation {
    pub anti_hermitian: bool,
    pub zero_constant_diagonal: bool,
    pub relations_in_radical: bool,
    pub radical_zero: bool,
    pub symplectic: Option<bool>,
    pub violations: Vec<String>,
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        self.anti_hermitian && self.zero_constant_diagonal && self.relations_in_radical && self.radical_zero
    }
}

fn x_power(ring: Ring, e: i32) -> LaurentPoly {
    LaurentPoly::monomial(ring, ExponentVector(vec![e]), 1)
}

impl QuasiSymplectic1D {
    /// Module presented as `R^k / ker G`.
    pub fn new(gram: Matrix) -> Result<Self> {
        Self::check_shape(&gram)?;
        let relations = if gram.rows() == 0 {
            SubmodulePresentation::zero(gram.ring(), 0)
        } else {
            kernel(&gram)?
        };
        Ok(QuasiSymplectic1D { gram, relations })
    }

    pub fn with_relations(gram: Matrix, relations: SubmodulePresentation) -> Result<Self> {
        Self::check_shape(&gram)?;
        if relations.rank() != gram.rows() {
            return Err(Error::Shape("relations live in the wrong free module".into()));
        }
        Ok(QuasiSymplectic1D { gram, relations })
    }

    fn check_shape(gram: &Matrix) -> Result<()> {
        if gram.rows() != gram.cols() {
            return Err(Error::Shape("Gram matrix must be square".into()));
        }
        if gram.ring().nvars != 1 {
            return Err(Error::Invalid(format!(
                "one-dimensional theory needs one variable, got {}",
                gram.ring().nvars
            )));
        }
        Ok(())
    }

    /// Standard symplectic module of rank `2m`.
    pub fn standard(ring: Ring, m: usize) -> Self {
        let mut g = Matrix::zeros(ring, 2 * m, 2 * m);
        for j in 0..m {
            g.set(j, m + j, ring.constant(-1));
            g.set(m + j, j, ring.one());
        }
        QuasiSymplectic1D { relations: SubmodulePresentation::zero(ring, 2 * m), gram: g }
    }

    pub fn zero(ring: Ring) -> Self {
        QuasiSymplectic1D { gram: Matrix::zeros(ring, 0, 0), relations: SubmodulePresentation::zero(ring, 0) }
    }

    pub fn ring(&self) -> Ring {
        self.gram.ring()
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn relations(&self) -> &SubmodulePresentation {
        &self.relations
    }

    /// `Ω(Σ c_i g_i, Σ d_j g_j) = c^† G d`.
    pub fn pairing(&self, c: &FreeVector, d: &FreeVector) -> LaurentPoly {
        c.involution().dot(&self.gram.apply(d))
    }

    pub fn validate(&self) -> Result<Validation> {
        let mut v = Validation { anti_hermitian: true, zero_constant_diagonal: true, ..Default::default() };
        let k = self.rank();
        for i in 0..k {
            if self.gram.get(i, i).constant_term() != 0 {
                v.zero_constant_diagonal = false;
                v.violations.push(format!("Ω(g{i}, g{i}) has nonzero constant term"));
            }
            for j in 0..k {
                if *self.gram.get(j, i) != -self.gram.get(i, j).involution() {
                    v.anti_hermitian = false;
                    v.violations.push(format!("Ω(g{j}, g{i}) is not -conj Ω(g{i}, g{j})"));
                }
            }
        }
        v.relations_in_radical = self.relations.generators().iter().all(|r| self.gram.apply(r).is_zero());
        if !v.relations_in_radical {
            v.violations.push("a relation pairs nontrivially with the generators".into());
        }
        v.radical_zero = if k == 0 {
            true
        } else {
            let rad = kernel(&self.gram)?;
            let rel = ImageSolver::new(&self.relations.to_matrix())?;
            let ok = rad.generators().iter().all(|r| rel.contains(r));
            if !ok {
                v.violations.push("Ω(·, p) = 0 for some nonzero p".into());
            }
            ok
        };
        if v.is_valid() && self.ring().modulus().prime_power().is_some() {
            v.symplectic = Some(self.e_module()?.order() == 1);
        }
        Ok(v)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (k, l) = (self.rank(), other.rank());
        let ring = self.ring();
        let mut g = Matrix::zeros(ring, k + l, k + l);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, self.gram.get(i, j).clone());
            }
        }
        for i in 0..l {
            for j in 0..l {
                g.set(k + i, k + j, other.gram.get(i, j).clone());
            }
        }
        let pad = |v: &FreeVector, before: usize, after: usize| {
            FreeVector::zero(ring, before).concat(v).concat(&FreeVector::zero(ring, after))
        };
        let mut rels: Vec<FreeVector> = self.relations.generators().iter().map(|r| pad(r, 0, l)).collect();
        rels.extend(other.relations.generators().iter().map(|r| pad(r, k, 0)));
        let relations = SubmodulePresentation::new(ring, k + l, rels).expect("padded ranks");
        QuasiSymplectic1D { gram: g, relations }
    }

    pub fn opposite(&self) -> Self {
        QuasiSymplectic1D { gram: self.gram.map(|f| -f), relations: self.relations.clone() }
    }

    /// Restriction of scalars to `Z_n[y^±]`, `y = x^k`, on generators `x^j g_i` (`0 ≤ j < k`).
    pub fn coarse_grain(&self, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::Invalid("coarse-graining factor must be positive".into()));
        }
        let ring = self.ring();
        let rank = self.rank();
        let n = rank * k as usize;
        let mut g = Matrix::zeros(ring, n, n);
        for a in 0..k as i32 {
            for i in 0..rank {
                for b in 0..k as i32 {
                    for j in 0..rank {
                        let full = self.gram.get(i, j).shift(&ExponentVector(vec![b - a]));
                        let sliced = LaurentPoly::from_terms(
                            ring,
                            full.terms()
                                .filter(|(e, _)| e.0[0].rem_euclid(k as i32) == 0)
                                .map(|(e, c)| (ExponentVector(vec![e.0[0] / k as i32]), c as i64)),
                        );
                        g.set(a as usize * rank + i, b as usize * rank + j, sliced);
                    }
                }
            }
        }
        Self::new(g)
    }

    /// Computes `E_P` with its forms; requires a prime-power modulus.
    pub fn e_module(&self) -> Result<EModule> {
        EModule::new(self)
    }

    /// `(E_P, q, b)`, splitting composite moduli by the CRT.
    pub fn metric_group(&self) -> Result<MetricGroup> {
        let m = self.ring().modulus();
        if m.prime_power().is_some() {
            return self.e_module()?.metric_group();
        }
        let parts = self
            .crt_split()
            .iter()
            .map(|p| p.e_module()?.metric_group())
            .collect::<Result<Vec<_>>>()?;
        MetricGroup::crt_product(&parts)
    }

    pub fn crt_split(&self) -> Vec<QuasiSymplectic1D> {
        self.ring()
            .modulus()
            .components()
            .into_iter()
            .map(|q| {
                let rels = self.relations.generators().iter().map(|r| r.reduce_mod(q)).collect();
                QuasiSymplectic1D {
                    gram: self.gram.reduce_mod(q),
                    relations: SubmodulePresentation::new(self.ring().with_modulus(q), self.rank(), rels)
                        .expect("same shape"),
                }
            })
            .collect()
    }

    /// Witt reduction to a module over `F_p` (the last step rescales the form by `p^{-(r-1)}`).
    pub fn witt_reduce(&self) -> Result<WittReduction> {
        let (p, r) = self.ring().modulus().prime_power().ok_or_else(|| {
            Error::Unsupported("Witt reduction needs a prime-power modulus".into())
        })?;
        let mut cur = self.clone();
        let mut steps = Vec::new();
        loop {
            let s = annihilator_exponent(&cur.gram, p, r);
            if s <= 1 {
                break;
            }
            let t = s.div_ceil(2);
            let pt = p.pow(t);
            let scaled = cur.gram.map(|f| f.scale(pt));
            let perp = kernel(&scaled)?;
            if perp.is_empty() {
                cur = QuasiSymplectic1D::zero(self.ring());
                steps.push(WittStep { exponent: s, t, rank_after: 0 });
                break;
            }
            let c = perp.to_matrix();
            let g1 = c.adjoint().mul(&cur.gram).mul(&c);
            cur = if g1.is_zero() { QuasiSymplectic1D::zero(self.ring()) } else { QuasiSymplectic1D::new(g1)? };
            steps.push(WittStep { exponent: s, t, rank_after: cur.rank() });
        }
        let ring_p = self.ring().with_modulus(p);
        let lowered = if cur.rank() == 0 {
            QuasiSymplectic1D::zero(ring_p)
        } else {
            let unit = p.pow(r - 1);
            let k = cur.rank();
            let rows = (0..k)
                .map(|i| {
                    (0..k)
                        .map(|j| {
                            let f = cur.gram.get(i, j);
                            LaurentPoly::from_terms(ring_p, f.terms().map(|(e, c)| (e.clone(), (c / unit) as i64)))
                        })
                        .collect()
                })
                .collect();
            let g = Matrix::from_rows(ring_p, rows)?;
            QuasiSymplectic1D::new(g)?
        };
        Ok(WittReduction { steps, reduced: cur, over_prime_field: lowered })
    }

    /// Decides whether `P` has a Lagrangian submodule through x-stable Lagrangians of `E_P`.
    pub fn is_metabolic(&self) -> Result<Metabolicity> {
        let e = self.e_module()?;
        let g = e.metric_group()?;
        let search = g.lagrangian_search_with(crate::metric::SUBGROUP_BUDGET, &[e.action().to_vec()]);
        Ok(Metabolicity { metabolic: !search.lagrangians.is_empty(), witnesses: search.lagrangians, exhaustive: !search.partial })
    }
}

fn annihilator_exponent(gram: &Matrix, p: u64, r: u32) -> u32 {
    (0..=r)
        .find(|&s| {
            let ps = p.pow(s);
            gram.entries().iter().all(|f| f.terms().all(|(_, c)| zn::mul(c, ps, p.pow(r)) == 0))
        })
        .unwrap_or(r)
}

#[derive(Clone, Debug, Serialize)]
pub struct WittStep {
    /// Smallest `s` with `p^s P = 0` before the step.
    pub exponent: u32,
    pub t: u32,
    pub rank_after: usize,
}

#[derive(Clone, Debug)]
pub struct WittReduction {
    pub steps: Vec<WittStep>,
    /// Result over `Z_{p^r}`, annihilated by `p`.
    pub reduced: QuasiSymplectic1D,
    /// The same module over `F_p` with the form divided by `p^{r-1}`.
    pub over_prime_field: QuasiSymplectic1D,
}

#[derive(Clone, Debug, Serialize)]
pub struct Metabolicity {
    pub metabolic: bool,
    /// x-stable Lagrangian subgroups of `E_P` (coordinates in its canonical basis).
    pub witnesses: Vec<Subgroup>,
    pub exhaustive: bool,
}

/// Direction of a one-sided series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    Right,
    Left,
}

/// `±Σ x^{±Nk} p` over a half-line of `k`, stored exactly by its seed and period.
#[derive(Clone, Debug, Serialize)]
pub struct SeriesVector {
    pub direction: Direction,
    pub period: u32,
    /// Generator coefficients of `p`.
    pub seed: FreeVector,
}

impl SeriesVector {
    /// Exponent beyond which coefficients repeat with the period (upward for `Right`, downward for `Left`).
    pub fn stable_from(&self) -> i32 {
        let (lo, hi) = seed_range(&self.seed);
        match self.direction {
            Direction::Right => hi,
            Direction::Left => lo,
        }
    }

    /// Coefficient of `x^e`, as a vector of generator coefficients in `Z_n`.
    pub fn coefficient(&self, e: i32) -> Vec<u64> {
        let ring = self.seed.ring();
        let n = ring.n;
        let (lo, hi) = seed_range(&self.seed);
        let nper = self.period as i32;
        let mut out = vec![0u64; self.seed.rank()];
        if self.seed.is_zero() {
            return out;
        }
        let ks: Vec<i32> = match self.direction {
            Direction::Right => (0..).take_while(|k| e - nper * k >= lo).collect(),
            Direction::Left => (1..).take_while(|k| e + nper * k <= hi).collect(),
        };
        for k in ks {
            let shift = match self.direction {
                Direction::Right => e - nper * k,
                Direction::Left => e + nper * k,
            };
            for (i, f) in self.seed.entries().iter().enumerate() {
                let c = f.coeff(&ExponentVector(vec![shift]));
                out[i] = match self.direction {
                    Direction::Right => zn::add(out[i], c, n),
                    Direction::Left => zn::sub(out[i], c, n),
                };
            }
        }
        out
    }

    /// Truncation to exponents in `[lo, hi]`.
    pub fn window(&self, lo: i32, hi: i32) -> FreeVector {
        let ring = self.seed.ring();
        let mut entries = vec![ring.zero(); self.seed.rank()];
        for e in lo..=hi {
            for (i, c) in self.coefficient(e).into_iter().enumerate() {
                entries[i].add_term(ExponentVector(vec![e]), c);
            }
        }
        FreeVector::new(ring, entries)
    }
}

fn seed_range(v: &FreeVector) -> (i32, i32) {
    v.entries()
        .iter()
        .filter_map(|f| f.var_range(0))
        .fold((i32::MAX, i32::MIN), |(a, b), (l, h)| (a.min(l), b.max(h)))
}

/// `E_P` as a finite group with canonical coordinates.
pub struct EModule {
    qs: QuasiSymplectic1D,
    dual: Option<DualQuotient>,
    gram_solver: ImageSolver,
    period: u32,
    action: Vec<Vec<u64>>,
}

impl EModule {
    fn new(qs: &QuasiSymplectic1D) -> Result<Self> {
        let ring = qs.ring();
        if ring.modulus().prime_power().is_none() {
            return Err(Error::Unsupported("E_P needs a prime-power modulus; use metric_group".into()));
        }
        let gram_solver = ImageSolver::new(&qs.gram)?;
        if qs.rank() == 0 {
            return Ok(EModule { qs: qs.clone(), dual: None, gram_solver, period: 1, action: Vec::new() });
        }
        let dual = DualQuotient::new(&qs.relations, &qs.gram)?;
        if dual.is_finite() != Some(true) {
            return Err(Error::Inconsistent("E_P is infinite; the form is degenerate".into()));
        }
        let action = dual.action(&x_power(ring, 1));
        let period = action_order(&action, &dual.invariant_factors())?;
        Ok(EModule { qs: qs.clone(), dual: Some(dual), gram_solver, period, action })
    }

    pub fn module(&self) -> &QuasiSymplectic1D {
        &self.qs
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.dual.as_ref().map_or_else(Vec::new, DualQuotient::invariant_factors)
    }

    pub fn order(&self) -> u128 {
        self.dual.as_ref().and_then(DualQuotient::order).unwrap_or(1)
    }

    /// Smallest `N ≥ 1` with `x^N` acting trivially.
    pub fn period(&self) -> u32 {
        self.period
    }

    /// Matrix of the translation `x` on canonical coordinates.
    pub fn action(&self) -> &[Vec<u64>] {
        &self.action
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.dual.as_ref().map_or_else(|| vec![Vec::new()], DualQuotient::elements)
    }

    /// Canonical coordinates of the functional with values `a`.
    pub fn class_of(&self, a: &FreeVector) -> Result<Vec<u64>> {
        self.dual.as_ref().map_or(Ok(Vec::new()), |d| d.class_of(a))
    }

    /// Values of a representative functional.
    pub fn representative(&self, coords: &[u64]) -> FreeVector {
        match &self.dual {
            None => FreeVector::zero(self.qs.ring(), self.qs.rank()),
            Some(d) => d.representative(coords),
        }
    }

    /// `p` (as generator coefficients) with `Ω(·, p) = (1 - x^N)·α`.
    pub fn witness_for(&self, a: &FreeVector) -> Result<FreeVector> {
        let ring = self.qs.ring();
        let factor = ring.one() - x_power(ring, self.period as i32);
        self.gram_solver
            .solve(&a.scale(&factor))
            .ok_or_else(|| Error::Inconsistent("(1 - x^N)α is not in the image of P".into()))
    }

    pub fn arrows_of(&self, a: &FreeVector) -> Result<(SeriesVector, SeriesVector)> {
        let p = self.witness_for(a)?;
        Ok((
            SeriesVector { direction: Direction::Right, period: self.period, seed: p.clone() },
            SeriesVector { direction: Direction::Left, period: self.period, seed: p },
        ))
    }

    pub fn arrows(&self, coords: &[u64]) -> Result<(SeriesVector, SeriesVector)> {
        self.arrows_of(&self.representative(coords))
    }

    /// `-Σ_{s≥1} s·[x^{Ns}] f`
    fn weighted_tail(&self, f: &LaurentPoly) -> u64 {
        let n = f.modulus();
        let nper = self.period as i32;
        f.terms()
            .filter(|(e, _)| e.0[0] > 0 && e.0[0] % nper == 0)
            .fold(0u64, |acc, (e, c)| {
                let s = (e.0[0] / nper) as u64;
                zn::sub(acc, zn::mul(s % n, c, n), n)
            })
    }

    pub fn q_of(&self, a: &FreeVector) -> Result<u64> {
        let p = self.witness_for(a)?;
        Ok(self.weighted_tail(&self.qs.pairing(&p, &p)))
    }

    pub fn b_of(&self, a: &FreeVector, b: &FreeVector) -> Result<u64> {
        let p = self.witness_for(a)?;
        let p2 = self.witness_for(b)?;
        let n = self.qs.ring().n;
        Ok(zn::add(
            self.weighted_tail(&self.qs.pairing(&p, &p2)),
            self.weighted_tail(&self.qs.pairing(&p2, &p)),
            n,
        ))
    }

    pub fn q(&self, coords: &[u64]) -> Result<u64> {
        self.q_of(&self.representative(coords))
    }

    pub fn b(&self, x: &[u64], y: &[u64]) -> Result<u64> {
        self.b_of(&self.representative(x), &self.representative(y))
    }

    pub fn metric_group(&self) -> Result<MetricGroup> {
        let n = self.qs.ring().n;
        let orders = self.invariant_factors();
        let k = orders.len();
        let unit = |i: usize| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        };
        let q: Vec<u64> = (0..k).map(|i| self.q(&unit(i))).collect::<Result<_>>()?;
        let mut b = vec![vec![0u64; k]; k];
        for i in 0..k {
            for j in i..k {
                let v = self.b(&unit(i), &unit(j))?;
                b[i][j] = v;
                b[j][i] = v;
            }
        }
        MetricGroup::new(n, orders, q, b)
            .map_err(|e| Error::Inconsistent(format!("forms on E_P are not a metric group: {e}")))
    }

    /// Classes with a representative vanishing on `M` (generator coefficient columns).
    pub fn ker_rho(&self, m: &SubmodulePresentation) -> Result<Subgroup> {
        let g = self.metric_group()?;
        if m.is_empty() {
            return Ok(g.subgroup_generated(&[]));
        }
        let mm = m.to_matrix();
        let restrict = mm.adjoint();
        let solver = ImageSolver::new(&restrict.mul(&self.qs.gram))?;
        let mut members = Vec::new();
        for c in self.elements() {
            let a = self.representative(&c);
            if solver.contains(&restrict.apply(&a)) {
                members.push(c);
            }
        }
        Ok(g.subgroup_generated(&members))
    }

    /// `P^T` for an x-stable isotropic subgroup `T ⊆ E_P`.
    pub fn extend_by_isotropic(&self, t: &Subgroup) -> Result<QuasiSymplectic1D> {
        let g = self.metric_group()?;
        if !g.is_isotropic(t) {
            return Err(Error::Invalid("subgroup is not isotropic for q".into()));
        }
        if !g.is_stable(t, &self.action) {
            return Err(Error::Invalid("subgroup is not stable under translation".into()));
        }
        let ring = self.qs.ring();
        let k = self.qs.rank();
        let reps: Vec<FreeVector> = t.generators.iter().map(|c| self.representative(c)).collect();
        let ps: Vec<FreeVector> = reps.iter().map(|a| self.witness_for(a)).collect::<Result<_>>()?;
        let l = reps.len();
        let mut gram = Matrix::zeros(ring, k + l, k + l);
        for i in 0..k {
            for j in 0..k {
                gram.set(i, j, self.qs.gram.get(i, j).clone());
            }
        }
        for (s, a) in reps.iter().enumerate() {
            for i in 0..k {
                gram.set(i, k + s, a.get(i).clone());
                gram.set(k + s, i, -a.get(i).involution());
            }
        }
        let nper = self.period as i32;
        let denom = (ring.one() - x_power(ring, -nper)) * (ring.one() - x_power(ring, nper));
        let div = ImageSolver::new(&Matrix::from_rows(ring, vec![vec![denom]])?)?;
        for s in 0..l {
            for u in 0..l {
                let num = self.qs.pairing(&ps[s], &ps[u]);
                let val = div
                    .solve(&FreeVector::new(ring, vec![num]))
                    .ok_or_else(|| Error::Inconsistent("extended form is not Laurent".into()))?;
                gram.set(k + s, k + u, val.get(0).clone());
            }
        }
        // Relations: kernel of the value map into P*.
        let mut values = self.qs.gram.clone();
        for a in &reps {
            values = values.hstack(&Matrix::from_cols(ring, k, std::slice::from_ref(a)));
        }
        let relations = kernel(&values)?;
        QuasiSymplectic1D::with_relations(gram, relations)
    }
}

fn action_order(action: &[Vec<u64>], orders: &[u64]) -> Result<u32> {
    let k = orders.len();
    let mul = |a: &[Vec<u64>], b: &[Vec<u64>]| -> Vec<Vec<u64>> {
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).fold(0u64, |s, l| (s + a[i][l] * b[l][j]) % orders[i])).collect())
            .collect()
    };
    let id: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
    let mut cur = action.to_vec();
    for n in 1..=1_000_000u32 {
        if cur == id {
            return Ok(n);
        }
        cur = mul(&cur, action);
    }
    Err(Error::Budget("translation action has order above 10^6".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: u64) -> Ring {
        Ring::new(1, n).unwrap()
    }

    pub(crate) fn boundary_example() -> QuasiSymplectic1D {
        let ring = r(2);
        let g = Matrix::from_rows(
            ring,
            vec![
                vec![ring.zero(), ring.parse("1 + x^-1").unwrap()],
                vec![ring.parse("1 + x").unwrap(), ring.zero()],
            ],
        )
        .unwrap();
        QuasiSymplectic1D::new(g).unwrap()
    }

    #[test]
    fn standard_is_symplectic() {
        let p = QuasiSymplectic1D::standard(r(3), 2);
        let v = p.validate().unwrap();
        assert!(v.is_valid());
        assert_eq!(v.symplectic, Some(true));
    }

    #[test]
    fn boundary_example_forms() {
        let p = boundary_example();
        assert!(p.validate().unwrap().is_valid());
        let e = p.e_module().unwrap();
        assert_eq!(e.invariant_factors(), vec![2, 2]);
        let g = e.metric_group().unwrap();
        let ones = g.elements().iter().filter(|a| g.q_eval(a) == 1).count();
        assert_eq!(ones, 1);
        assert!(g.is_nondegenerate());
    }

    #[test]
    fn dual_basis_values() {
        let p = boundary_example();
        let ring = p.ring();
        let e = p.e_module().unwrap();
        let e1 = FreeVector::new(ring, vec![ring.one(), ring.zero()]);
        let e2 = FreeVector::new(ring, vec![ring.zero(), ring.one()]);
        assert_eq!(e.q_of(&e1).unwrap(), 0);
        assert_eq!(e.q_of(&e2).unwrap(), 0);
        assert_eq!(e.q_of(&e1.add(&e2)).unwrap(), 1);
        assert_eq!(e.b_of(&e1, &e2).unwrap(), 1);
    }

    #[test]
    fn invalid_diagonal_is_reported() {
        let ring = r(2);
        let g = Matrix::from_rows(ring, vec![vec![ring.one()]]).unwrap();
        let v = QuasiSymplectic1D::new(g).unwrap().validate().unwrap();
        assert!(!v.zero_constant_diagonal);
    }

    #[test]
    fn z3_example_group() {
        let ring = r(3);
        let g = Matrix::from_rows(
            ring,
            vec![
                vec![ring.zero(), ring.parse("1 - x").unwrap()],
                vec![ring.parse("-1 + x^-1").unwrap(), ring.zero()],
            ],
        )
        .unwrap();
        let p = QuasiSymplectic1D::new(g).unwrap();
        assert!(p.validate().unwrap().is_valid());
        assert_eq!(p.e_module().unwrap().invariant_factors(), vec![3, 3]);
    }

    #[test]
    fn extension_by_lagrangian_is_symplectic() {
        let p = boundary_example();
        let e = p.e_module().unwrap();
        let g = e.metric_group().unwrap();
        for lag in g.lagrangian_search().lagrangians {
            let pt = e.extend_by_isotropic(&lag).unwrap();
            assert!(pt.validate().unwrap().is_valid());
            assert_eq!(pt.e_module().unwrap().order(), 1);
        }
    }

    #[test]
    fn arrows_agree_with_functional() {
        let p = boundary_example();
        let e = p.e_module().unwrap();
        let (right, left) = e.arrows(&[1, 0]).unwrap();
        let a = e.representative(&[1, 0]);
        // Ω(g_i, α_→ window) reproduces α(g_i) near the origin.
        let w = right.window(-4, 12);
        for i in 0..2 {
            let gi = FreeVector::unit(p.ring(), 2, i);
            let val = p.pairing(&gi, &w);
            for ex in -2..=2 {
                assert_eq!(val.coeff(&ExponentVector(vec![ex])), a.get(i).coeff(&ExponentVector(vec![ex])));
            }
        }
        assert_eq!(left.direction, Direction::Left);
    }

    #[test]
    fn witt_reduction_of_z4_form() {
        let ring = r(4);
        let g = Matrix::from_rows(ring, vec![vec![ring.zero(), ring.constant(2)], vec![ring.constant(-2), ring.zero()]])
            .unwrap();
        let p = QuasiSymplectic1D::new(g).unwrap();
        let before = p.is_metabolic().unwrap().metabolic;
        let red = p.witt_reduce().unwrap();
        let after = red.over_prime_field.is_metabolic().unwrap().metabolic;
        assert_eq!(before, after);
    }

    #[test]
    fn witt_reduction_of_lifted_example() {
        let ring = r(4);
        let g = Matrix::from_rows(
            ring,
            vec![
                vec![ring.zero(), ring.parse("1 + x^-1").unwrap()],
                vec![ring.parse("-1 - x").unwrap(), ring.zero()],
            ],
        )
        .unwrap();
        let p = QuasiSymplectic1D::new(g).unwrap();
        assert!(p.validate().unwrap().is_valid());
        let e = p.e_module().unwrap();
        assert_eq!(e.invariant_factors(), vec![4, 4]);
        let red = p.witt_reduce().unwrap();
        assert_eq!(red.steps.len(), 1);
        let low = &red.over_prime_field;
        assert!(low.validate().unwrap().is_valid());
        assert_eq!(p.is_metabolic().unwrap().metabolic, low.is_metabolic().unwrap().metabolic);
    }

    #[test]
    fn standard_over_z4_reduces_to_zero() {
        let p = QuasiSymplectic1D::standard(r(4), 1);
        let red = p.witt_reduce().unwrap();
        assert_eq!(red.over_prime_field.rank(), 0);
    }
}
