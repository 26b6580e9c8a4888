//! Boundary operator modules of half-space codes.
//!
//! After a unimodular change of lattice basis the half-space is `x_d ≥ 0`. Vectors supported
//! in a band of heights `[lo, hi]` are stored as slab vectors over the boundary ring
//! `R_∂ = Z_n[x_1^±, …, x_{d-1}^±]`, with the component `c` at height `h` in slot
//! `(h - lo)·2m + c`. The boundary form `Ω_∂` is the `x_d^0` part of `Ω`, which on slabs is the
//! sum of the single-height forms.

mod qca;
mod vmap;

pub use qca::{qca_boundary_algebra, qca_vs_boundary_check, QcaAlgebra, QcaAutomaton, QcaComparison};
pub use vmap::{
    lift_check, mobility, upper_pairing, LiftCheck, MobilityReport, MobilityStatus, GeneratorMobility, UpperPairing,
    VMap,
};

use serde::Serialize;

use crate::bulk::{omega_raw, StabilizerCode};
use crate::error::{Error, Result};
use crate::groebner::{kernel, ImageSolver};
use crate::lattice::{self, IntMatrix};
use crate::linalg::{FreeVector, Matrix, SubmodulePresentation};
use crate::metric::MetricGroup;
use crate::oned::QuasiSymplectic1D;
use crate::ring::{ExponentVector, LaurentPoly, Ring};

/// `{a : v·a ≥ 0}` with a basis adapted to it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSpace {
    normal: Vec<i64>,
    /// Unimodular; the last row is `normal`, so `λ ↦ Uλ` sends the half-space to `λ_d ≥ 0`.
    basis: IntMatrix,
    inverse: IntMatrix,
}

impl HalfSpace {
    pub fn new(normal: &[i64]) -> Result<Self> {
        let (basis, inverse) = lattice::complete_basis(normal)?;
        Ok(HalfSpace { normal: lattice::primitive(normal)?, basis, inverse })
    }

    pub fn standard(d: usize) -> Self {
        let mut v = vec![0; d];
        v[d - 1] = 1;
        Self::new(&v).expect("unit normal")
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.normal.len()
    }
}

/// Which of the two complementary half-spaces `v·a ≥ 0` and `v·a < 0` is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Upper,
    Lower,
}

/// The code and vectors in adapted coordinates, split into heights.
///
/// For the lower side the exponent map is followed by `λ_d ↦ -λ_d - 1`, which turns
/// `{λ_d ≤ -1}` into `{λ_d ≥ 0}` and respects the form.
#[derive(Clone, Debug)]
pub(crate) struct Frame {
    pub half_space: HalfSpace,
    pub side: Side,
    pub code: StabilizerCode,
    pub ring_b: Ring,
    pub m: usize,
    /// Height range of each generator.
    pub ranges: Vec<(i32, i32)>,
    pub width: i32,
}

impl Frame {
    pub fn new(code: &StabilizerCode, hs: &HalfSpace, side: Side) -> Result<Self> {
        let d = code.space().dimension();
        if hs.dimension() != d {
            return Err(Error::Shape(format!("normal has {} entries, lattice has dimension {d}", hs.dimension())));
        }
        if d < 2 {
            return Err(Error::Unsupported("half-space boundaries need d ≥ 2".into()));
        }
        let mut frame = Frame {
            half_space: hs.clone(),
            side,
            code: code.clone(),
            ring_b: code.ring().with_nvars(d - 1),
            m: code.sites(),
            ranges: Vec::new(),
            width: 0,
        };
        let cols: Vec<FreeVector> = code.generators().iter().map(|g| frame.to_frame(g)).collect();
        frame.code = StabilizerCode::from_columns(code.ring(), code.sites(), &cols)?;
        frame.ranges = cols.iter().map(|c| height_range(c).unwrap_or((0, 0))).collect();
        frame.width = frame.ranges.iter().map(|(lo, hi)| hi - lo).max().unwrap_or(0);
        Ok(frame)
    }

    fn map_exponent(&self, e: &ExponentVector) -> ExponentVector {
        let v: Vec<i64> = e.0.iter().map(|&x| i64::from(x)).collect();
        let mut out: Vec<i32> = lattice::mat_vec(&self.half_space.basis, &v).into_iter().map(|x| x as i32).collect();
        if self.side == Side::Lower {
            let last = out.len() - 1;
            out[last] = -out[last] - 1;
        }
        ExponentVector(out)
    }

    /// Functional values transform without the shift used for vectors.
    fn map_value_exponent(&self, e: &ExponentVector, inverse: bool) -> ExponentVector {
        let mut v: Vec<i64> = e.0.iter().map(|&x| i64::from(x)).collect();
        let last = v.len() - 1;
        if inverse && self.side == Side::Lower {
            v[last] = -v[last];
        }
        let u = if inverse { &self.half_space.inverse } else { &self.half_space.basis };
        let mut out = lattice::mat_vec(u, &v);
        if !inverse && self.side == Side::Lower {
            out[last] = -out[last];
        }
        ExponentVector(out.into_iter().map(|x| x as i32).collect())
    }

    pub fn to_frame(&self, v: &FreeVector) -> FreeVector {
        let ring = v.ring();
        v.map(|f| f.map_exponents(ring, |e| self.map_exponent(e)))
    }

    pub fn value_to_frame(&self, f: &LaurentPoly) -> LaurentPoly {
        f.map_exponents(f.ring(), |e| self.map_value_exponent(e, false))
    }

    pub fn value_from_frame(&self, f: &LaurentPoly) -> LaurentPoly {
        f.map_exponents(f.ring(), |e| self.map_value_exponent(e, true))
    }

    pub fn slab_rank(&self, lo: i32, hi: i32) -> usize {
        2 * self.m * (hi - lo + 1).max(0) as usize
    }

    /// Part of a frame vector at heights `[lo, hi]`.
    pub fn to_slab(&self, v: &FreeVector, lo: i32, hi: i32) -> FreeVector {
        let d = self.ring_b.nvars + 1;
        let mut entries = vec![self.ring_b.zero(); self.slab_rank(lo, hi)];
        for (c, f) in v.entries().iter().enumerate() {
            for (e, coeff) in f.terms() {
                let h = e.0[d - 1];
                if (lo..=hi).contains(&h) {
                    let slot = (h - lo) as usize * 2 * self.m + c;
                    entries[slot].add_term(ExponentVector(e.0[..d - 1].to_vec()), coeff);
                }
            }
        }
        FreeVector::new(self.ring_b, entries)
    }

    pub fn from_slab(&self, s: &FreeVector, lo: i32) -> FreeVector {
        let ring = self.code.ring();
        let mut entries = vec![ring.zero(); 2 * self.m];
        for (slot, f) in s.entries().iter().enumerate() {
            let h = lo + (slot / (2 * self.m)) as i32;
            for (e, coeff) in f.terms() {
                let mut full = e.0.clone();
                full.push(h);
                entries[slot % (2 * self.m)].add_term(ExponentVector(full), coeff);
            }
        }
        FreeVector::new(ring, entries)
    }

    /// Generator `j` shifted by `x_d^k`, restricted to `[lo, hi]`.
    pub fn translate(&self, j: usize, k: i32, lo: i32, hi: i32) -> FreeVector {
        let col = self.code.sigma().col(j);
        let shift = {
            let mut e = vec![0; self.ring_b.nvars];
            e.push(k);
            ExponentVector(e)
        };
        self.to_slab(&col.shift(&shift), lo, hi)
    }

    pub fn overlapping(&self, lo: i32, hi: i32) -> Vec<(usize, i32)> {
        let mut out = Vec::new();
        for (j, &(a, b)) in self.ranges.iter().enumerate() {
            for k in (lo - b)..=(hi - a) {
                out.push((j, k));
            }
        }
        out
    }

    /// Translates `x_d^k σ_j` with support on both sides of the cut.
    pub fn straddling(&self) -> Vec<(usize, i32)> {
        let mut out = Vec::new();
        for (j, &(a, b)) in self.ranges.iter().enumerate() {
            for k in (-b)..=(-a - 1) {
                out.push((j, k));
            }
        }
        out
    }

    pub fn slab_omega(&self, a: &FreeVector, b: &FreeVector) -> LaurentPoly {
        let block = 2 * self.m;
        let mut acc = self.ring_b.zero();
        for start in (0..a.rank().min(b.rank())).step_by(block) {
            acc = acc + omega_raw(self.m, &a.slice(start..start + block), &b.slice(start..start + block));
        }
        acc
    }

    pub fn slab_form_matrix(&self, rank: usize) -> Matrix {
        let mut j = Matrix::zeros(self.ring_b, rank, rank);
        let m = self.m;
        for start in (0..rank).step_by(2 * m) {
            for i in 0..m {
                j.set(start + i, start + m + i, self.ring_b.constant(-1));
                j.set(start + m + i, start + i, self.ring_b.one());
            }
        }
        j
    }

    /// `{x ∈ slab : Ω_∂(c, x) = 0 for every constraint c}`.
    pub fn annihilated(&self, constraints: &[FreeVector], rank: usize) -> Result<Vec<FreeVector>> {
        let constraints: Vec<&FreeVector> = constraints.iter().filter(|c| !c.is_zero()).collect();
        if constraints.is_empty() {
            return Ok((0..rank).map(|i| FreeVector::unit(self.ring_b, rank, i)).collect());
        }
        let cols: Vec<FreeVector> = constraints.into_iter().cloned().collect();
        let a = Matrix::from_cols(self.ring_b, rank, &cols).adjoint().mul(&self.slab_form_matrix(rank));
        Ok(kernel(&a)?.generators().iter().filter(|g| !g.is_zero()).cloned().collect())
    }

    /// `L ∩ P_[lo, hi]`, using `L = L^⊥`.
    pub fn code_in_slab(&self, lo: i32, hi: i32) -> Result<Vec<FreeVector>> {
        let cons: Vec<FreeVector> = self.overlapping(lo, hi).into_iter().map(|(j, k)| self.translate(j, k, lo, hi)).collect();
        self.annihilated(&cons, self.slab_rank(lo, hi))
    }

    /// Slab vectors in `P_[0, h]` orthogonal to `L ∩ P_[0, k]`.
    fn orthogonal_in_slab(&self, h: i32, k: i32) -> Result<(Vec<FreeVector>, Vec<FreeVector>)> {
        let tk = self.code_in_slab(0, k)?;
        let rank = self.slab_rank(0, h);
        let restricted: Vec<FreeVector> = tk.iter().map(|t| t.slice(0..rank)).collect();
        Ok((self.annihilated(&restricted, rank)?, tk))
    }
}

fn height_range(v: &FreeVector) -> Option<(i32, i32)> {
    let d = v.ring().nvars;
    v.entries().iter().filter_map(|f| f.var_range(d - 1)).reduce(|(a, b), (c, e)| (a.min(c), b.max(e)))
}

pub(crate) fn pad(v: &FreeVector, rank: usize) -> FreeVector {
    let mut e = v.entries().to_vec();
    e.resize(rank, v.ring().zero());
    FreeVector::new(v.ring(), e)
}

pub(crate) fn in_span(ring: Ring, rank: usize, gens: &[FreeVector], v: &FreeVector) -> Result<bool> {
    if v.is_zero() {
        return Ok(true);
    }
    if gens.is_empty() {
        return Ok(false);
    }
    Ok(ImageSolver::new(&Matrix::from_cols(ring, rank, gens))?.contains(v))
}

/// Budgets for [`BoundaryModule::compute`].
#[derive(Clone, Copy, Debug, Serialize)]
pub struct BoundaryOptions {
    pub max_height: i32,
    pub start_height: Option<i32>,
}

impl Default for BoundaryOptions {
    fn default() -> Self {
        BoundaryOptions { max_height: 12, start_height: None }
    }
}

/// Evidence that the slab window is large enough.
#[derive(Clone, Debug, Serialize)]
pub struct WidthCertificate {
    /// Representatives live in `P_[0, height]`.
    pub height: i32,
    /// Orthogonality is imposed against `L ∩ P_[0, window]`.
    pub window: i32,
    /// Widening the window by one generator width changes nothing.
    pub window_stable: bool,
    /// Every representative in `P_[0, height+1]` is already accounted for.
    pub height_stable: bool,
    /// `E` invariant factors at `height` and `height + 1` (one-dimensional boundaries only).
    pub e_factors: Option<(Vec<u64>, Vec<u64>)>,
}

/// `P_∂ = (L_{≥0}^⊥ ∩ P_{≥0}) / L_{≥0}` as a quasi-symplectic `R_∂`-module.
pub struct BoundaryModule {
    pub(crate) frame: Frame,
    height: i32,
    generators: Vec<FreeVector>,
    straddling: Vec<(usize, i32)>,
    gram: Matrix,
    relations: SubmodulePresentation,
    stabilizers: Vec<FreeVector>,
    coordinates: Option<ImageSolver>,
    certificate: WidthCertificate,
    lagrangian: Option<bool>,
}

struct Stage {
    generators: Vec<FreeVector>,
    primary: usize,
    stabilizers: Vec<FreeVector>,
    all: Vec<FreeVector>,
}

impl BoundaryModule {
    pub fn compute(code: &StabilizerCode, hs: &HalfSpace, side: Side, opts: BoundaryOptions) -> Result<Self> {
        let lagrangian = code.lagrangian_certificate().complement_equals_code;
        if lagrangian == Some(false) {
            return Err(Error::Invalid("boundary modules need a Lagrangian code".into()));
        }
        let frame = Frame::new(code, hs, side)?;
        let w = frame.width.max(1);
        let straddling = frame.straddling();
        let mut h = opts.start_height.unwrap_or(w).max(w - 1).max(0);
        let mut current = Self::stage(&frame, &straddling, h, h + 2 * w)?;
        loop {
            if h > opts.max_height {
                return Err(Error::Budget(format!(
                    "boundary representatives did not stabilize below height {}",
                    opts.max_height
                )));
            }
            let next = Self::stage(&frame, &straddling, h + 1, h + 1 + 2 * w)?;
            let rank = frame.slab_rank(0, h + 1);
            let mut span: Vec<FreeVector> = current.all.iter().map(|g| pad(g, rank)).collect();
            span.extend(next.stabilizers.iter().cloned());
            let mut stable = true;
            for s in &next.all {
                if !in_span(frame.ring_b, rank, &span, s)? {
                    stable = false;
                    break;
                }
            }
            if stable {
                let module = Self::assemble(&frame, &straddling, h, current, lagrangian)?;
                let upper = Self::assemble(&frame, &straddling, h + 1, next, lagrangian)?;
                let factors = match (module.e_factors(), upper.e_factors()) {
                    (Some(a), Some(b)) => Some((a, b)),
                    _ => None,
                };
                if factors.as_ref().is_none_or(|(a, b)| a == b) {
                    let mut module = module;
                    module.certificate.height_stable = true;
                    module.certificate.e_factors = factors;
                    module.certificate.window_stable = module.window_stable(w)?;
                    return Ok(module);
                }
                current = Self::stage(&frame, &straddling, h + 1, h + 1 + 2 * w)?;
            } else {
                current = next;
            }
            h += 1;
        }
    }

    fn stage(frame: &Frame, straddling: &[(usize, i32)], h: i32, k: i32) -> Result<Stage> {
        let (all, _) = frame.orthogonal_in_slab(h, k)?;
        let stabilizers = frame.code_in_slab(0, h)?;
        let rank = frame.slab_rank(0, h);
        let mut generators: Vec<FreeVector> =
            straddling.iter().map(|&(j, s)| frame.translate(j, s, 0, h)).collect();
        let primary = generators.len();
        for s in &all {
            let mut span = generators.clone();
            span.extend(stabilizers.iter().cloned());
            if !in_span(frame.ring_b, rank, &span, s)? {
                generators.push(s.clone());
            }
        }
        Ok(Stage { generators, primary, stabilizers, all })
    }

    fn assemble(frame: &Frame, straddling: &[(usize, i32)], h: i32, stage: Stage, lagrangian: Option<bool>) -> Result<Self> {
        let ring = frame.ring_b;
        let rank = frame.slab_rank(0, h);
        let k = stage.generators.len();
        let mut gram = Matrix::zeros(ring, k, k);
        for (i, a) in stage.generators.iter().enumerate() {
            for (j, b) in stage.generators.iter().enumerate() {
                gram.set(i, j, frame.slab_omega(a, b));
            }
        }
        let mut cols = stage.generators.clone();
        cols.extend(stage.stabilizers.iter().cloned());
        let (relations, coordinates) = if cols.is_empty() {
            (SubmodulePresentation::zero(ring, k), None)
        } else {
            let solver = ImageSolver::new(&Matrix::from_cols(ring, rank, &cols))?;
            let rels: Vec<FreeVector> = solver
                .kernel()
                .into_iter()
                .map(|v| v.slice(0..k))
                .filter(|v| !v.is_zero())
                .collect();
            (SubmodulePresentation::new(ring, k, rels)?, Some(solver))
        };
        debug_assert_eq!(stage.primary, straddling.len());
        Ok(BoundaryModule {
            frame: frame.clone(),
            height: h,
            generators: stage.generators,
            straddling: straddling.to_vec(),
            gram,
            relations,
            stabilizers: stage.stabilizers,
            coordinates,
            certificate: WidthCertificate {
                height: h,
                window: h + 2 * frame.width.max(1),
                window_stable: false,
                height_stable: false,
                e_factors: None,
            },
            lagrangian,
        })
    }

    fn window_stable(&self, w: i32) -> Result<bool> {
        let wider = self.frame.code_in_slab(0, self.certificate.window + w)?;
        let rank = self.frame.slab_rank(0, self.height);
        Ok(self.generators.iter().all(|g| wider.iter().all(|t| self.frame.slab_omega(g, &t.slice(0..rank)).is_zero())))
    }

    fn e_factors(&self) -> Option<Vec<u64>> {
        let qs = self.quasi_symplectic().ok()?;
        let e = qs.e_module().ok()?;
        Some(e.invariant_factors())
    }

    pub fn ring(&self) -> Ring {
        self.frame.ring_b
    }

    pub fn side(&self) -> Side {
        self.frame.side
    }

    pub fn half_space(&self) -> &HalfSpace {
        &self.frame.half_space
    }

    pub fn height(&self) -> i32 {
        self.height
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Generators as slab vectors in `P_[0, height]`; the primary ones come first.
    pub fn generators(&self) -> &[FreeVector] {
        &self.generators
    }

    pub fn primary_count(&self) -> usize {
        self.straddling.len()
    }

    /// `(j, k)` such that primary generator `i` is the truncation of `x_d^k σ_j`.
    pub fn straddling(&self) -> &[(usize, i32)] {
        &self.straddling
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn relations(&self) -> &SubmodulePresentation {
        &self.relations
    }

    pub fn stabilizers(&self) -> &[FreeVector] {
        &self.stabilizers
    }

    pub fn certificate(&self) -> &WidthCertificate {
        &self.certificate
    }

    /// `None` when the code could only be checked on finite tori.
    pub fn lagrangian_checked(&self) -> Option<bool> {
        self.lagrangian
    }

    /// A generator as a vector of the full module in adapted coordinates.
    pub fn generator_in_frame(&self, i: usize) -> FreeVector {
        self.frame.from_slab(&self.generators[i], 0)
    }

    pub fn quasi_symplectic(&self) -> Result<QuasiSymplectic1D> {
        if self.ring().nvars != 1 {
            return Err(Error::Unsupported("one-dimensional theory applies to d = 2 only".into()));
        }
        if self.rank() == 0 {
            return Ok(QuasiSymplectic1D::zero(self.ring()));
        }
        QuasiSymplectic1D::with_relations(self.gram.clone(), self.relations.clone())
    }

    /// The form restricted to the primary generators.
    pub fn primary_module(&self) -> Result<QuasiSymplectic1D> {
        let k = self.primary_count();
        let ring = self.ring();
        let mut g = Matrix::zeros(ring, k, k);
        for i in 0..k {
            for j in 0..k {
                g.set(i, j, self.gram.get(i, j).clone());
            }
        }
        if k == 0 {
            return Ok(QuasiSymplectic1D::zero(ring));
        }
        QuasiSymplectic1D::new(g)
    }

    pub fn metric_group(&self) -> Result<MetricGroup> {
        self.quasi_symplectic()?.metric_group()
    }

    pub fn has_secondaries(&self) -> bool {
        self.rank() > self.primary_count()
    }

    /// Coordinates `c` with `y ≡ Σ c_i g_i` modulo `L_{≥0}`, for a slab vector in `P_[0, height]`.
    pub fn coordinates(&self, y: &FreeVector) -> Option<FreeVector> {
        let k = self.rank();
        if y.is_zero() {
            return Some(FreeVector::zero(self.ring(), k));
        }
        let c = self.coordinates.as_ref()?.solve(&pad(y, self.frame.slab_rank(0, self.height)))?;
        Some(c.slice(0..k))
    }

    /// Whether a slab vector in `P_[0, height]` lies in `L_{≥0}^⊥`, checked against the window.
    pub fn is_boundary_operator(&self, y: &FreeVector) -> Result<bool> {
        let t = self.frame.code_in_slab(0, self.certificate.window)?;
        let y = pad(y, self.frame.slab_rank(0, self.height));
        let rank = y.rank();
        Ok(t.iter().all(|t| self.frame.slab_omega(&y, &t.slice(0..rank.min(t.rank()))).is_zero()))
    }

    /// Solves `f·y ≡ target` in `P_∂` for `y`; returns the coordinates of `y`.
    pub fn divide(&self, f: &LaurentPoly, target: &FreeVector) -> Result<Option<FreeVector>> {
        let k = self.rank();
        let ring = self.ring();
        let mut cols: Vec<FreeVector> = (0..k).map(|i| FreeVector::unit(ring, k, i).scale(f)).collect();
        cols.extend(self.relations.generators().iter().cloned());
        if cols.is_empty() {
            return Ok(target.is_zero().then(|| FreeVector::zero(ring, 0)));
        }
        let s = ImageSolver::new(&Matrix::from_cols(ring, k, &cols))?;
        Ok(s.solve(target).map(|c| c.slice(0..k)))
    }

    /// Whether two coordinate vectors name the same element of `P_∂`.
    pub fn same_class(&self, a: &FreeVector, b: &FreeVector) -> Result<bool> {
        in_span(self.ring(), self.rank(), self.relations.generators(), &a.sub(b))
    }

    /// Whether coordinates lie in the span of the primary generators modulo relations.
    pub fn is_primary(&self, c: &FreeVector) -> Result<bool> {
        let k = self.rank();
        let ring = self.ring();
        let mut cols: Vec<FreeVector> = (0..self.primary_count()).map(|i| FreeVector::unit(ring, k, i)).collect();
        cols.extend(self.relations.generators().iter().cloned());
        in_span(ring, k, &cols, c)
    }
}

/// Lagrangian test for the image of `ℓ ↦ (q₊ℓ, q₋ℓ)` in `P_∂^+ ⊕ P_∂^-`.
#[derive(Clone, Debug, Serialize)]
pub struct OppositePairCertificate {
    pub upper_rank: usize,
    pub lower_rank: usize,
    pub diagonal_generators: usize,
    pub isotropic: bool,
    /// `M^⊥ ⊆ M` (d = 2, exact).
    pub coisotropic: Option<bool>,
    /// `E_{P_∂^+} ⊕ E_{P_∂^-}` has a Lagrangian subgroup (d = 2).
    pub e_metabolic: Option<bool>,
    pub e_orders: Option<(u128, u128)>,
}

impl OppositePairCertificate {
    pub fn holds(&self) -> bool {
        self.isotropic && self.coisotropic != Some(false) && self.e_metabolic != Some(false)
    }
}

pub fn opposite_pair_check(code: &StabilizerCode, hs: &HalfSpace, opts: BoundaryOptions) -> Result<OppositePairCertificate> {
    let upper = BoundaryModule::compute(code, hs, Side::Upper, opts)?;
    let lower = BoundaryModule::compute(code, hs, Side::Lower, opts)?;
    let ring = upper.ring();
    let (ku, kl) = (upper.rank(), lower.rank());
    // Translates cut by the plane, written in the upper frame: heights from -w to w.
    let mut diag: Vec<FreeVector> = Vec::new();
    let fu = &upper.frame;
    let fl = &lower.frame;
    for &(j, k) in &fu.straddling() {
        let top = fu.translate(j, k, 0, upper.height);
        let cu = upper.coordinates(&top).ok_or_else(|| Error::Inconsistent("truncation outside P_∂".into()))?;
        // The lower frame reflects heights, so the same translate sits at shift -k.
        let bottom = fl.translate(j, -k, 0, lower.height);
        let cl = lower.coordinates(&bottom).ok_or_else(|| Error::Inconsistent("truncation outside P_∂".into()))?;
        diag.push(cu.concat(&cl));
    }
    let total = ku + kl;
    let mut gram = Matrix::zeros(ring, total, total);
    for i in 0..ku {
        for j in 0..ku {
            gram.set(i, j, upper.gram.get(i, j).clone());
        }
    }
    for i in 0..kl {
        for j in 0..kl {
            gram.set(ku + i, ku + j, lower.gram.get(i, j).clone());
        }
    }
    let pair = |a: &FreeVector, b: &FreeVector| a.involution().dot(&gram.apply(b));
    let isotropic = diag.iter().all(|a| diag.iter().all(|b| pair(a, b).is_zero()));
    let mut relations: Vec<FreeVector> = upper.relations.generators().iter().map(|r| pad(r, total)).collect();
    relations.extend(lower.relations.generators().iter().map(|r| FreeVector::zero(ring, ku).concat(r)));
    let (coisotropic, e_metabolic, e_orders) = if ring.nvars == 1 && total > 0 {
        let perp = if diag.is_empty() {
            (0..total).map(|i| FreeVector::unit(ring, total, i)).collect()
        } else {
            let m = Matrix::from_cols(ring, total, &diag);
            kernel(&m.adjoint().mul(&gram))?.generators().to_vec()
        };
        let mut span = diag.clone();
        span.extend(relations.iter().cloned());
        let mut co = true;
        for p in &perp {
            if !in_span(ring, total, &span, p)? {
                co = false;
                break;
            }
        }
        let qu = upper.quasi_symplectic()?;
        let ql = lower.quasi_symplectic()?;
        let sum = qu.direct_sum(&ql).metric_group()?;
        let orders = (qu.e_module()?.order(), ql.e_module()?.order());
        (Some(co), Some(sum.is_metabolic()), Some(orders))
    } else if ring.nvars == 1 {
        (Some(true), Some(true), Some((1, 1)))
    } else {
        (None, None, None)
    };
    Ok(OppositePairCertificate {
        upper_rank: ku,
        lower_rank: kl,
        diagonal_generators: diag.len(),
        isotropic,
        coisotropic,
        e_metabolic,
        e_orders,
    })
}

/// Maps coordinates of the coarse boundary ring back to the boundary of a coarse-grained code.
pub fn boundary_of_coarse(code: &StabilizerCode, hs: &HalfSpace, factor: i64, opts: BoundaryOptions) -> Result<BoundaryModule> {
    let d = code.space().dimension();
    let mut lambda = lattice::identity(d);
    // Stretch the first direction inside the boundary plane.
    let inv = &hs.inverse;
    for (r, row) in lambda.iter_mut().enumerate() {
        for (c, x) in row.iter_mut().enumerate() {
            *x = if c == 0 { inv[r][0] * factor } else { inv[r][c] };
        }
    }
    let coarse = code.coarse_grain(&lambda)?;
    // In the coarse lattice the normal becomes the last basis vector.
    let normal_coarse: Vec<i64> = (0..d).map(|i| i64::from(i + 1 == d)).collect();
    BoundaryModule::compute(&coarse, &HalfSpace::new(&normal_coarse)?, Side::Upper, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zoo;

    fn standard() -> HalfSpace {
        HalfSpace::standard(2)
    }

    #[test]
    fn trivial_code_has_no_boundary() {
        let b = BoundaryModule::compute(&zoo::trivial(2, 2).unwrap(), &standard(), Side::Upper, Default::default()).unwrap();
        assert_eq!(b.rank(), 0);
        assert!(!b.has_secondaries());
    }

    #[test]
    fn split_example_boundary() {
        let b = BoundaryModule::compute(&zoo::split_example().unwrap(), &standard(), Side::Upper, Default::default()).unwrap();
        let ring = b.ring();
        assert_eq!(b.primary_count(), 2);
        let g = b.primary_module().unwrap();
        let entries: Vec<String> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| g.gram().get(i, j).to_string()).collect();
        let one_plus_xbar = ring.parse("1 + x^-1").unwrap();
        let pos = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).find(|&(i, j)| g.gram().get(i, j) == &one_plus_xbar);
        assert!(pos.is_some(), "{entries:?}");
        assert_eq!(g.e_module().unwrap().invariant_factors(), vec![2, 2]);
        assert!(b.has_secondaries());
        assert_eq!(b.quasi_symplectic().unwrap().e_module().unwrap().order(), 1);
        assert!(b.certificate().height_stable && b.certificate().window_stable);
    }

    #[test]
    fn toric_boundary_group() {
        for v in [[0, 1], [1, 0], [1, 1]] {
            let b = BoundaryModule::compute(&zoo::toric(2).unwrap(), &HalfSpace::new(&v).unwrap(), Side::Upper, Default::default()).unwrap();
            let mg = b.metric_group().unwrap();
            assert_eq!(mg.order(), 4, "{v:?}");
            assert!(mg.is_nondegenerate());
            assert_eq!(mg.lagrangian_search().lagrangians.len(), 2);
        }
    }

    #[test]
    fn opposite_sides_pair_up() {
        for code in [zoo::toric(2).unwrap(), zoo::wen().unwrap(), zoo::trivial(2, 2).unwrap(), zoo::split_example().unwrap()] {
            let c = opposite_pair_check(&code, &standard(), Default::default()).unwrap();
            assert!(c.holds(), "{c:?}");
        }
    }
}
