//! Pauli modules `P = R^{2m}` with the standard form, stabilizer codes as submodules,
//! their charge modules, coarse-graining and finite-torus counting.
//!
//! Vectors list the `m` X-components before the `m` Z-components, and
//! `Ω(p, p') = Σ_j conj(p_{m+j}) p'_j - conj(p_j) p'_{m+j}`, i.e. `Ω(p, p') = p^† J p'`
//! with `J = [[0, -I], [I, 0]]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite::DualQuotient;
use crate::groebner::{ext1, kernel, quotient_presentation, ImageSolver, QuotientPresentation};
use crate::lattice::{self, IntMatrix};
use crate::linalg::{FreeVector, Matrix, SubmodulePresentation};
use crate::ring::{zn, ExponentVector, LaurentPoly, Ring};

/// `P = R^{2m}` over `Z_n[x_1^±, …, x_d^±]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymplecticSpace {
    ring: Ring,
    sites: usize,
}

impl SymplecticSpace {
    pub fn new(ring: Ring, sites: usize) -> Result<Self> {
        if sites == 0 {
            return Err(Error::Invalid("a Pauli module needs at least one site".into()));
        }
        if ring.nvars == 0 {
            return Err(Error::Invalid("a Pauli module needs at least one lattice direction".into()));
        }
        Ok(SymplecticSpace { ring, sites })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dimension(&self) -> usize {
        self.ring.nvars
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn rank(&self) -> usize {
        2 * self.sites
    }

    /// The matrix `J` of the form.
    pub fn form_matrix(&self) -> Matrix {
        let m = self.sites;
        let mut j = Matrix::zeros(self.ring, 2 * m, 2 * m);
        for i in 0..m {
            j.set(i, m + i, self.ring.constant(-1));
            j.set(m + i, i, self.ring.one());
        }
        j
    }

    pub fn omega(&self, p: &FreeVector, q: &FreeVector) -> Result<LaurentPoly> {
        if p.rank() != self.rank() || q.rank() != self.rank() {
            return Err(Error::Shape(format!("vectors of rank {} and {} in P of rank {}", p.rank(), q.rank(), self.rank())));
        }
        Ok(omega_raw(self.sites, p, q))
    }

    /// `M^⊥ = {p : Ω(m_i, p) = 0}`.
    pub fn orthogonal_complement(&self, m: &SubmodulePresentation) -> Result<SubmodulePresentation> {
        if m.is_empty() {
            return Ok(SubmodulePresentation::full(self.ring, self.rank()));
        }
        kernel(&m.to_matrix().adjoint().mul(&self.form_matrix()))
    }

    pub fn with_ring(&self, ring: Ring) -> Self {
        SymplecticSpace { ring, sites: self.sites }
    }
}

pub(crate) fn omega_raw(m: usize, p: &FreeVector, q: &FreeVector) -> LaurentPoly {
    let ring = p.ring();
    let mut acc = ring.zero();
    for j in 0..m {
        acc = acc + p.get(m + j).involution() * q.get(j).clone() - p.get(j).involution() * q.get(m + j).clone();
    }
    acc
}

/// A translation-invariant stabilizer code: the columns of `sigma` generate `L ⊆ P`.
#[derive(Clone, Debug)]
pub struct StabilizerCode {
    space: SymplecticSpace,
    sigma: Matrix,
}

/// Values of a functional on the generators of `L`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyndromeFunctional {
    pub values: FreeVector,
}

#[derive(Clone, Debug, Serialize)]
pub struct LagrangianCertificate {
    pub isotropic: bool,
    /// `None` when the ring is outside exact support.
    pub complement_equals_code: Option<bool>,
    /// A generator of `L^⊥` outside `L`, when one exists.
    pub complement_witness: Option<FreeVector>,
    /// Necessary-condition battery used when the exact test is unavailable.
    pub torus_battery: Vec<TorusData>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorusData {
    pub sides: Vec<u32>,
    /// `|L_T|`
    pub image_order: u128,
    /// `n^{m·ΠT} / |L_T|`
    pub stabilized_dimension: u128,
    /// `|L_T^⊥ / L_T| = |P_T| / |L_T|^2`
    pub logical_order: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct SplitCertificate {
    /// `P/L` certified free by eliminating coordinates against unit entries.
    pub quotient_free: bool,
    pub charges_vanish: bool,
    /// Some generating subset of the columns is linearly independent.
    pub code_free: bool,
    /// The three flags agree as the splitting criteria require.
    pub consistent: bool,
}

impl StabilizerCode {
    /// Checks shape and isotropy, naming the first non-commuting pair.
    pub fn new(space: SymplecticSpace, sigma: Matrix) -> Result<Self> {
        if sigma.rows() != space.rank() {
            return Err(Error::Shape(format!("sigma has {} rows, P has rank {}", sigma.rows(), space.rank())));
        }
        if sigma.ring() != space.ring() {
            return Err(Error::Shape("sigma and P use different rings".into()));
        }
        let code = StabilizerCode { space, sigma };
        if let Some((i, j)) = code.non_commuting_pair() {
            return Err(Error::Invalid(format!("generators {i} and {j} do not commute: Ω(σ{i}, σ{j}) ≠ 0")));
        }
        Ok(code)
    }

    pub fn from_columns(ring: Ring, sites: usize, columns: &[FreeVector]) -> Result<Self> {
        let space = SymplecticSpace::new(ring, sites)?;
        Self::new(space, Matrix::from_cols(ring, 2 * sites, columns))
    }

    fn non_commuting_pair(&self) -> Option<(usize, usize)> {
        let cols = self.sigma.columns();
        for i in 0..cols.len() {
            for j in i..cols.len() {
                if !omega_raw(self.space.sites, &cols[i], &cols[j]).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn space(&self) -> SymplecticSpace {
        self.space
    }

    pub fn ring(&self) -> Ring {
        self.space.ring
    }

    pub fn sites(&self) -> usize {
        self.space.sites
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn generators(&self) -> Vec<FreeVector> {
        self.sigma.columns()
    }

    pub fn generator_count(&self) -> usize {
        self.sigma.cols()
    }

    pub fn submodule(&self) -> SubmodulePresentation {
        SubmodulePresentation::from_matrix(&self.sigma)
    }

    /// `σ^† J`: the map `p ↦ (Ω(σ_j, p))_j`.
    pub fn syndrome_matrix(&self) -> Matrix {
        self.sigma.adjoint().mul(&self.space.form_matrix())
    }

    pub fn syndrome_of(&self, p: &FreeVector) -> Result<SyndromeFunctional> {
        if p.rank() != self.space.rank() {
            return Err(Error::Shape("operator lives outside P".into()));
        }
        Ok(SyndromeFunctional { values: self.syndrome_matrix().apply(p) })
    }

    pub fn lagrangian_certificate(&self) -> LagrangianCertificate {
        let mut cert = LagrangianCertificate {
            isotropic: self.non_commuting_pair().is_none(),
            complement_equals_code: None,
            complement_witness: None,
            torus_battery: Vec::new(),
        };
        let exact = (|| -> Result<Option<FreeVector>> {
            let perp = self.space.orthogonal_complement(&self.submodule())?;
            let solver = ImageSolver::new(&self.sigma)?;
            Ok(perp.generators().iter().find(|g| !solver.contains(g)).cloned())
        })();
        match exact {
            Ok(witness) => {
                cert.complement_equals_code = Some(witness.is_none() && cert.isotropic);
                cert.complement_witness = witness;
            }
            Err(_) => {
                let d = self.space.dimension();
                for side in 2..=3u32 {
                    if let Ok(t) = self.torus(&vec![side; d]) {
                        cert.torus_battery.push(t);
                    }
                }
            }
        }
        cert
    }

    /// `Q_L = L^* / (P/L)` with `L^*` given by values on the generators.
    pub fn charge_module(&self) -> Result<ChargeModule> {
        let syz = kernel(&self.sigma)?;
        let quotient = DualQuotient::new(&syz, &self.syndrome_matrix())?;
        Ok(ChargeModule { quotient, syzygies: syz })
    }

    /// `Ext^1(P/L, R)` through a free resolution, for cross-checking the charge module.
    pub fn ext1_presentation(&self) -> Result<QuotientPresentation> {
        let pl = quotient_presentation(self.space.rank(), &self.submodule())?;
        ext1(&pl)
    }

    /// Rewrites exponents by `λ ↦ U λ`.
    pub fn transformed(&self, u: &IntMatrix) -> Self {
        let ring = self.ring();
        let map = |e: &ExponentVector| {
            let v: Vec<i64> = e.0.iter().map(|&x| i64::from(x)).collect();
            ExponentVector(lattice::mat_vec(u, &v).into_iter().map(|x| x as i32).collect())
        };
        StabilizerCode { space: self.space, sigma: self.sigma.map(|f| f.map_exponents(ring, map)) }
    }

    /// Restriction of scalars to the sublattice spanned by the columns of `lambda`.
    pub fn coarse_grain(&self, lambda: &IntMatrix) -> Result<Self> {
        let d = self.space.dimension();
        if lambda.len() != d || lambda.iter().any(|r| r.len() != d) {
            return Err(Error::Shape(format!("coarse-graining matrix must be {d}×{d}")));
        }
        let det = lattice::determinant(lambda);
        if det == 0 {
            return Err(Error::Invalid("coarse-graining matrix is singular".into()));
        }
        let h = lattice::hermite_columns(lambda)?;
        let adj = lattice::adjugate(lambda);
        let reps = lattice::coset_representatives(lambda)?;
        let k = reps.len();
        let m = self.sites();
        let m2 = m * k;
        let ring = self.ring();
        let index_of = |c: &[i64]| reps.iter().position(|r| r == c).expect("coset representative");
        let mut columns = Vec::with_capacity(k * self.generator_count());
        for shift in &reps {
            for g in self.generators() {
                let mut entries = vec![ring.zero(); 2 * m2];
                for (comp, f) in g.entries().iter().enumerate() {
                    let (part, site) = (comp / m, comp % m);
                    for (e, c) in f.terms() {
                        let lam: Vec<i64> = e.0.iter().zip(shift).map(|(&x, &s)| i64::from(x) + s).collect();
                        let (mu, rep) = lattice::reduce_to_coset(&h, &adj, det, &lam);
                        let slot = part * m2 + index_of(&rep) * m + site;
                        entries[slot].add_term(ExponentVector(mu.into_iter().map(|x| x as i32).collect()), c);
                    }
                }
                columns.push(FreeVector::new(ring, entries));
            }
        }
        StabilizerCode::from_columns(ring, m2, &columns)
    }

    pub fn crt_split(&self) -> Vec<StabilizerCode> {
        self.ring()
            .modulus()
            .components()
            .into_iter()
            .map(|q| StabilizerCode {
                space: self.space.with_ring(self.ring().with_modulus(q)),
                sigma: self.sigma.reduce_mod(q),
            })
            .collect()
    }

    /// Image of `L` on the periodic torus with the given sides.
    pub fn torus(&self, sides: &[u32]) -> Result<TorusData> {
        let d = self.space.dimension();
        if sides.len() != d || sides.contains(&0) {
            return Err(Error::Shape(format!("torus needs {d} positive sides")));
        }
        let volume: usize = sides.iter().map(|&t| t as usize).product();
        let m = self.sites();
        let n = self.ring().n;
        let width = 2 * m * volume;
        let cells = volume * self.generator_count();
        if width.saturating_mul(cells) > 1 << 24 {
            return Err(Error::Budget(format!("torus {sides:?} needs a {cells}×{width} matrix")));
        }
        let site_index = |lam: &[i64]| -> usize {
            lam.iter().zip(sides).fold(0usize, |acc, (&x, &t)| acc * t as usize + x.rem_euclid(i64::from(t)) as usize)
        };
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(cells);
        for cell in 0..volume {
            let mut offset = vec![0i64; d];
            let mut rest = cell;
            for i in (0..d).rev() {
                offset[i] = (rest % sides[i] as usize) as i64;
                rest /= sides[i] as usize;
            }
            for g in self.generators() {
                let mut row = vec![0u64; width];
                for (comp, f) in g.entries().iter().enumerate() {
                    for (e, c) in f.terms() {
                        let lam: Vec<i64> = e.0.iter().zip(&offset).map(|(&x, &o)| i64::from(x) + o).collect();
                        let slot = comp * volume + site_index(&lam);
                        row[slot] = zn::add(row[slot], c, n);
                    }
                }
                rows.push(row);
            }
        }
        let image_order = lattice::span_order(&rows, n);
        let total = checked_pow(n, (m * volume) as u32)?;
        let full = checked_pow(n, (2 * m * volume) as u32)?;
        Ok(TorusData {
            sides: sides.to_vec(),
            image_order,
            stabilized_dimension: total / image_order,
            logical_order: full / image_order / image_order,
        })
    }

    /// Splitting criteria; the free-quotient flag is a sufficient certificate only.
    pub fn split_check(&self) -> Result<SplitCertificate> {
        let quotient_free = eliminates_to_free(&self.generators());
        let q = self.charge_module()?;
        let charges_vanish = q.quotient.order() == Some(1);
        let code_free = independent_subset(self)?;
        let consistent = quotient_free == (charges_vanish && code_free) || (!quotient_free && charges_vanish && code_free);
        Ok(SplitCertificate { quotient_free, charges_vanish, code_free, consistent })
    }
}

fn checked_pow(n: u64, e: u32) -> Result<u128> {
    (n as u128).checked_pow(e).ok_or_else(|| Error::Budget(format!("{n}^{e} exceeds 128 bits")))
}

/// Greedy elimination: a generator with a monomial entry of unit coefficient removes that coordinate.
fn eliminates_to_free(gens: &[FreeVector]) -> bool {
    let mut gens: Vec<FreeVector> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    while let Some(g) = gens.first().cloned() {
        let n = g.ring().n;
        let found = g.entries().iter().enumerate().find_map(|(i, f)| {
            let mut terms = f.terms();
            match (terms.next(), terms.next()) {
                (Some((e, c)), None) if zn::inv(c, n).is_some() => Some((i, e.clone(), c)),
                _ => None,
            }
        });
        let Some((pos, e, c)) = found else {
            // try another generator first
            match gens.iter().position(|h| has_unit_entry(h)) {
                Some(k) => {
                    gens.swap(0, k);
                    continue;
                }
                None => return false,
            }
        };
        let ring = g.ring();
        let inv = LaurentPoly::monomial(ring, e.negated(), zn::inv(c, n).expect("unit"));
        let pivot = g.scale(&inv);
        gens = gens[1..]
            .iter()
            .map(|h| {
                let r = h.sub(&pivot.scale(h.get(pos)));
                let mut entries = r.into_entries();
                entries.remove(pos);
                FreeVector::new(ring, entries)
            })
            .filter(|h| !h.is_zero())
            .collect();
    }
    true
}

fn has_unit_entry(g: &FreeVector) -> bool {
    let n = g.ring().n;
    g.entries().iter().any(|f| {
        let mut t = f.terms();
        matches!((t.next(), t.next()), (Some((_, c)), None) if zn::inv(c, n).is_some())
    })
}

fn independent_subset(code: &StabilizerCode) -> Result<bool> {
    let mut cols = code.generators();
    loop {
        if cols.is_empty() {
            return Ok(true);
        }
        let m = Matrix::from_cols(code.ring(), code.space.rank(), &cols);
        let syz = kernel(&m)?;
        if syz.is_empty() {
            return Ok(true);
        }
        // Drop a generator that lies in the span of the others.
        let redundant = (0..cols.len()).find(|&i| {
            let others: Vec<FreeVector> = cols.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c.clone()).collect();
            if others.is_empty() {
                return cols[i].is_zero();
            }
            ImageSolver::new(&Matrix::from_cols(code.ring(), code.space.rank(), &others))
                .map(|s| s.contains(&cols[i]))
                .unwrap_or(false)
        });
        match redundant {
            Some(i) => {
                cols.remove(i);
            }
            None => return Ok(false),
        }
    }
}

/// `Q_L` with its functional presentation.
pub struct ChargeModule {
    pub quotient: DualQuotient,
    /// Relations among the generators of `L`.
    pub syzygies: SubmodulePresentation,
}

impl ChargeModule {
    pub fn is_finite(&self) -> Option<bool> {
        self.quotient.is_finite()
    }

    pub fn order(&self) -> Option<u128> {
        self.quotient.order()
    }

    pub fn invariant_factors(&self) -> Vec<u64> {
        self.quotient.invariant_factors()
    }

    pub fn presentation(&self) -> &QuotientPresentation {
        self.quotient.presentation()
    }

    /// The `Z_n`-dual `D_0`: one character per cyclic factor, `χ_i(e_j) = δ_ij · n / n_i`.
    pub fn detectors(&self) -> Result<Vec<Vec<u64>>> {
        if self.is_finite() != Some(true) {
            return Err(Error::Invalid("detectors need a finite charge module".into()));
        }
        let n = self.quotient.ring().n;
        let f = self.invariant_factors();
        Ok((0..f.len()).map(|i| (0..f.len()).map(|j| if i == j { n / f[i] } else { 0 }).collect()).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;
    use std::collections::HashSet;

    #[test]
    fn toric_vertex_and_plaquette_commute() {
        let code = zoo::toric(2).unwrap();
        let g = code.generators();
        assert!(code.space().omega(&g[0], &g[1]).unwrap().is_zero());
    }

    #[test]
    fn lagrangian_checks() {
        let toric = zoo::toric(2).unwrap().lagrangian_certificate();
        assert_eq!((toric.isotropic, toric.complement_equals_code), (true, Some(true)));
        let trivial = zoo::trivial(1, 2).unwrap().lagrangian_certificate();
        assert_eq!(trivial.complement_equals_code, Some(true));
        let ring = Ring::new(1, 2).unwrap();
        let half = StabilizerCode::from_columns(ring, 1, &[FreeVector::new(ring, vec![ring.parse("1 + x").unwrap(), ring.zero()])])
            .unwrap()
            .lagrangian_certificate();
        assert_eq!(half.complement_equals_code, Some(false));
        assert!(half.complement_witness.is_some());
    }

    #[test]
    fn toric_charges() {
        let q = zoo::toric(2).unwrap().charge_module().unwrap();
        assert_eq!(q.order(), Some(4));
        assert_eq!(q.invariant_factors(), vec![2, 2]);
        assert_eq!(q.detectors().unwrap().len(), 2);
        let t = zoo::trivial(2, 2).unwrap().charge_module().unwrap();
        assert_eq!(t.order(), Some(1));
    }

    #[test]
    fn toric_z3_charges() {
        let q = zoo::toric(3).unwrap().charge_module().unwrap();
        assert_eq!(q.invariant_factors(), vec![3, 3]);
    }

    /// Counts the stabilizer group by closure over the finite torus.
    fn closure_order(code: &StabilizerCode, t: u32) -> u128 {
        let ring = code.ring();
        let n = ring.n;
        let m = code.sites();
        let vol = (t * t) as usize;
        let mut gens: Vec<Vec<u64>> = Vec::new();
        for a in 0..t as i32 {
            for b in 0..t as i32 {
                for g in code.generators() {
                    let mut v = vec![0u64; 2 * m * vol];
                    for (comp, f) in g.entries().iter().enumerate() {
                        for (e, c) in f.terms() {
                            let x = (e.0[0] + a).rem_euclid(t as i32) as usize;
                            let y = (e.0[1] + b).rem_euclid(t as i32) as usize;
                            let s = comp * vol + x * t as usize + y;
                            v[s] = (v[s] + c) % n;
                        }
                    }
                    gens.push(v);
                }
            }
        }
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let zero = vec![0u64; 2 * m * vol];
        let mut stack = vec![zero.clone()];
        seen.insert(zero);
        while let Some(x) = stack.pop() {
            for g in &gens {
                let y: Vec<u64> = x.iter().zip(g).map(|(a, b)| (a + b) % n).collect();
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len() as u128
    }

    #[test]
    fn torus_counts_match_closure() {
        let toric = zoo::toric(2).unwrap();
        let data = toric.torus(&[2, 2]).unwrap();
        assert_eq!(data.image_order, closure_order(&toric, 2));
        assert_eq!(data.stabilized_dimension, 4);
        assert_eq!(data.stabilized_dimension * data.image_order, 1 << 8);
        let t3 = toric.torus(&[3, 3]).unwrap();
        assert_eq!(t3.image_order, closure_order(&toric, 3));
        assert_eq!(t3.stabilized_dimension, 4);
        assert_eq!(zoo::trivial(2, 2).unwrap().torus(&[3, 2]).unwrap().stabilized_dimension, 1);
    }

    #[test]
    fn non_lagrangian_logicals_grow() {
        // the second site is left free
        let ring = Ring::new(1, 2).unwrap();
        let code = StabilizerCode::from_columns(ring, 2, &[FreeVector::unit(ring, 4, 0)]).unwrap();
        let a = code.torus(&[2]).unwrap().logical_order;
        let b = code.torus(&[4]).unwrap().logical_order;
        assert!(b > a);
    }

    #[test]
    fn broken_code_names_the_pair() {
        let ring = Ring::new(2, 2).unwrap();
        let v = |s: [&str; 4]| FreeVector::new(ring, s.iter().map(|x| ring.parse(x).unwrap()).collect());
        let err = StabilizerCode::from_columns(ring, 2, &[v(["1 + x^-1", "1 + y^-1", "0", "0"]), v(["0", "0", "1 + y", "0"])]).unwrap_err();
        assert!(err.to_string().contains("0 and 1"), "{err}");
    }

    #[test]
    fn coarse_graining_keeps_charges() {
        let toric = zoo::toric(2).unwrap();
        let cg = toric.coarse_grain(&vec![vec![2, 0], vec![0, 1]]).unwrap();
        assert_eq!(cg.sites(), 4);
        assert_eq!(cg.charge_module().unwrap().invariant_factors(), vec![2, 2]);
        let skew = toric.coarse_grain(&vec![vec![1, 1], vec![-1, 1]]).unwrap();
        assert_eq!(skew.charge_module().unwrap().invariant_factors(), vec![2, 2]);
    }

    #[test]
    fn ext1_agrees_with_charges() {
        let toric = zoo::toric(2).unwrap();
        let e = toric.ext1_presentation().unwrap();
        let fm = crate::finite::FiniteModule::new(&e.relations).unwrap().unwrap();
        assert_eq!(fm.order(), 4);
    }

    #[test]
    fn split_criteria() {
        let t = zoo::trivial(2, 2).unwrap().split_check().unwrap();
        assert!(t.quotient_free && t.charges_vanish && t.code_free && t.consistent);
        let p = zoo::split_example().unwrap().split_check().unwrap();
        assert!(p.quotient_free && p.charges_vanish && p.code_free);
        let toric = zoo::toric(2).unwrap().split_check().unwrap();
        assert!(!toric.quotient_free && !toric.charges_vanish);
    }

    #[test]
    fn syndromes_are_local() {
        let code = zoo::toric(2).unwrap();
        let ring = code.ring();
        let mut e = vec![ring.zero(); 4];
        e[0] = ring.one();
        let s = code.syndrome_of(&FreeVector::new(ring, e)).unwrap();
        assert!(s.values.get(0).is_zero());
        assert_eq!(s.values.get(1).len(), 2);
    }
}

#[cfg(test)]
mod xcube_tests {
    use crate::zoo;

    #[test]
    fn xcube_first_summand() {
        let code = zoo::xcube().unwrap();
        let q = code.charge_module().unwrap();
        assert_eq!(q.is_finite(), Some(false));
        let ring = code.ring();
        let class = |r: &str| crate::FreeVector::new(ring, vec![ring.parse(r).unwrap(), ring.zero(), ring.zero()]);
        assert!(q.quotient.is_zero_class(&class("1 + x + y + x*y")));
        assert!(q.quotient.is_zero_class(&class("z + y*z + z^2 + y*z^2")));
        assert!(!q.quotient.is_zero_class(&class("z")));
        assert!(!q.quotient.is_zero_class(&class("1 + x")));
    }
}
