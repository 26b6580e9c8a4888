//! Gröbner bases, syzygies and derived constructions over Laurent rings.
//!
//! Laurent modules are handled by adjoining a variable `t` with `t·x_1⋯x_d = 1`:
//! a monomial `x^λ` is embedded as `t^s x^{λ + s·1}` with `s = max(0, -min λ)`, and
//! `(t·x_1⋯x_d - 1)·e_i` is added to every module. The polynomial module obtained this
//! way is the full preimage of the Laurent module, so normal forms decide membership.
//!
//! Over `F_p[x^±]` kernels and solving go through the column echelon form instead,
//! which is much faster for the wide matrices that come up in slab computations.

pub(crate) mod engine;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FreeVector, Matrix, SubmodulePresentation};
use crate::error::RingError;
use crate::ring::{ExponentVector, LaurentPoly, Ring};
use crate::smith::{smith_form, ColumnEchelon};

pub use engine::GbLimits;
use engine::{Basis, Mono, Term, VPoly, Zpr, MAXV};

/// Coefficient ring of a Gröbner computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CoefficientRing {
    Field { p: u64 },
    ChainRing { p: u64, r: u32 },
}

/// Module order used by every basis in this crate.
pub const ORDER_TAG: &str = "position-over-term, graded lex, t-saturated";

pub(crate) fn check_supported(ring: Ring) -> Result<()> {
    if ring.nvars + 1 > MAXV {
        return Err(Error::Unsupported(format!("at most {} variables are supported", MAXV - 1)));
    }
    let m = ring.modulus();
    if ring.nvars >= 2 && m.factors().iter().any(|&(_, r)| r > 1) {
        return Err(Error::Unsupported(format!(
            "Gröbner bases over Z_{} in {} variables (non-squarefree modulus needs d = 1)",
            ring.n, ring.nvars
        )));
    }
    Ok(())
}

fn prime_power(ring: Ring) -> Result<Zpr> {
    check_supported(ring)?;
    let (p, r) = ring.modulus().prime_power().ok_or_else(|| {
        Error::Unsupported(format!("Z_{} is not a prime power; split with the CRT first", ring.n))
    })?;
    Ok(Zpr::new(p, r))
}

/// Translation between Laurent vectors and the engine's polynomial vectors.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Embedding {
    pub ring: Ring,
    pub zr: Zpr,
}

impl Embedding {
    pub fn new(ring: Ring) -> Result<Self> {
        Ok(Embedding { ring, zr: prime_power(ring)? })
    }

    fn t_index(&self) -> usize {
        self.ring.nvars
    }

    pub fn mono(&self, e: &ExponentVector) -> Mono {
        let s = e.0.iter().copied().min().unwrap_or(0).min(0).unsigned_abs();
        let mut exps: Vec<u32> = e.0.iter().map(|&x| (x + s as i32) as u32).collect();
        exps.push(s);
        Mono::from_exps(&exps)
    }

    pub fn unmono(&self, m: &Mono) -> ExponentVector {
        let s = m.e[self.t_index()] as i32;
        ExponentVector((0..self.ring.nvars).map(|i| m.e[i] as i32 - s).collect())
    }

    pub fn vec(&self, v: &FreeVector, offset: u32) -> VPoly {
        let mut out: VPoly = Vec::new();
        for (i, f) in v.entries().iter().enumerate() {
            for (e, c) in f.terms() {
                out.push((Term { pos: offset + i as u32, m: self.mono(e) }, c % self.zr.n));
            }
        }
        out.retain(|&(_, c)| c != 0);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn unvec(&self, f: &VPoly, offset: u32, rank: usize) -> FreeVector {
        let mut entries = vec![self.ring.zero(); rank];
        for &(t, c) in f {
            if t.pos < offset || t.pos >= offset + rank as u32 {
                continue;
            }
            entries[(t.pos - offset) as usize].add_term(self.unmono(&t.m), c);
        }
        FreeVector::new(self.ring, entries)
    }

    pub fn rho(&self, pos: u32) -> VPoly {
        let all = vec![1u32; self.ring.nvars + 1];
        let mut v = vec![
            (Term { pos, m: Mono::one() }, self.zr.n - 1),
            (Term { pos, m: Mono::from_exps(&all) }, 1),
        ];
        v.sort_by(|a, b| a.0.cmp(&b.0));
        v
    }
}

/// Reduced Gröbner basis of a Laurent submodule.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    source: SubmodulePresentation,
    coefficients: CoefficientRing,
    basis: Vec<FreeVector>,
    pub(crate) emb: Embedding,
    pub(crate) inner: Basis,
}

impl GroebnerBasis {
    pub fn source(&self) -> &SubmodulePresentation {
        &self.source
    }

    /// Basis vectors mapped back to Laurent form (zero images of `t`-relations omitted).
    pub fn basis(&self) -> &[FreeVector] {
        &self.basis
    }

    pub fn order_tag(&self) -> &'static str {
        ORDER_TAG
    }

    pub fn coefficient_ring(&self) -> CoefficientRing {
        self.coefficients
    }

    pub fn rank(&self) -> usize {
        self.source.rank()
    }

    pub fn normal_form(&self, v: &FreeVector) -> Result<FreeVector> {
        self.check(v)?;
        let r = self.inner.reduce(&self.emb.vec(v, 0));
        Ok(self.emb.unvec(&r, 0, self.rank()))
    }

    pub fn contains(&self, v: &FreeVector) -> Result<bool> {
        self.check(v)?;
        Ok(self.inner.reduce(&self.emb.vec(v, 0)).is_empty())
    }

    fn check(&self, v: &FreeVector) -> Result<()> {
        if v.ring() != self.emb.ring {
            return Err(RingError::MismatchedRing { left: v.ring(), right: self.emb.ring }.into());
        }
        if v.rank() != self.rank() {
            return Err(Error::Shape(format!("vector rank {} vs module rank {}", v.rank(), self.rank())));
        }
        Ok(())
    }
}

pub(crate) fn groebner_with(m: &SubmodulePresentation, limits: GbLimits) -> Result<GroebnerBasis> {
    let emb = Embedding::new(m.ring())?;
    let mut gens: Vec<VPoly> = m.generators().iter().map(|g| emb.vec(g, 0)).collect();
    gens.extend((0..m.rank()).map(|i| emb.rho(i as u32)));
    let elems = engine::groebner(&gens, emb.zr, limits)?;
    let mut basis: Vec<FreeVector> = Vec::new();
    for f in &elems {
        let v = monomial_normalized(&emb.unvec(f, 0, m.rank()));
        if !v.is_zero() && !basis.contains(&v) {
            basis.push(v);
        }
    }
    let coefficients = if emb.zr.r == 1 {
        CoefficientRing::Field { p: emb.zr.p }
    } else {
        CoefficientRing::ChainRing { p: emb.zr.p, r: emb.zr.r }
    };
    Ok(GroebnerBasis {
        source: m.clone(),
        coefficients,
        basis,
        emb,
        inner: Basis::from_elems(emb.zr, elems),
    })
}

/// Shifts a vector by a monomial so that every exponent is nonnegative and minimal.
fn monomial_normalized(v: &FreeVector) -> FreeVector {
    let d = v.ring().nvars;
    let mut low = vec![i32::MAX; d];
    for f in v.entries() {
        for (e, _) in f.terms() {
            for (l, &x) in low.iter_mut().zip(&e.0) {
                *l = (*l).min(x);
            }
        }
    }
    if low.iter().any(|&l| l == i32::MAX) {
        return v.clone();
    }
    v.shift(&ExponentVector(low.iter().map(|&l| -l).collect()))
}

/// Reduced (strong) Gröbner basis of `m`.
pub fn groebner(m: &SubmodulePresentation) -> Result<GroebnerBasis> {
    groebner_with(m, GbLimits::default())
}

fn crt_split_vec(v: &FreeVector) -> Vec<FreeVector> {
    v.ring()
        .modulus()
        .components()
        .into_iter()
        .map(|q| v.reduce_mod(q))
        .collect()
}

fn crt_split_pres(m: &SubmodulePresentation) -> Vec<SubmodulePresentation> {
    m.ring()
        .modulus()
        .components()
        .into_iter()
        .map(|q| {
            let gens = m.generators().iter().map(|g| g.reduce_mod(q)).collect();
            SubmodulePresentation::new(m.ring().with_modulus(q), m.rank(), gens).expect("same shape")
        })
        .collect()
}

fn crt_combine_vec(parts: &[FreeVector], ring: Ring) -> FreeVector {
    let rank = parts[0].rank();
    let entries = (0..rank)
        .map(|i| {
            let polys: Vec<LaurentPoly> = parts.iter().map(|p| p.get(i).clone()).collect();
            LaurentPoly::crt_combine(&polys, ring).expect("component rings match")
        })
        .collect();
    FreeVector::new(ring, entries)
}

/// Embeds a vector over `Z_q` (a CRT component) into `Z_n` via the idempotent for `q`.
fn crt_lift_component(v: &FreeVector, ring: Ring) -> FreeVector {
    let comps = ring.modulus().components();
    let parts: Vec<FreeVector> = comps
        .iter()
        .map(|&q| {
            if q == v.ring().n {
                v.clone()
            } else {
                FreeVector::zero(ring.with_modulus(q), v.rank())
            }
        })
        .collect();
    crt_combine_vec(&parts, ring)
}

/// Decides `v ∈ m`.
pub fn contains(m: &SubmodulePresentation, v: &FreeVector) -> Result<bool> {
    if v.ring() != m.ring() {
        return Err(RingError::MismatchedRing { left: v.ring(), right: m.ring() }.into());
    }
    if v.is_zero() {
        return Ok(true);
    }
    if m.ring().modulus().prime_power().is_none() {
        check_supported(m.ring())?;
        for (mc, vc) in crt_split_pres(m).iter().zip(crt_split_vec(v)) {
            if !contains(mc, &vc)? {
                return Ok(false);
            }
        }
        return Ok(true);
    }
    Ok(ImageSolver::new(&m.to_matrix())?.contains(v))
}

enum Route {
    Pid(ColumnEchelon),
    Gb { emb: Embedding, basis: Basis },
    Crt(Vec<ImageSolver>),
}

/// Kernel, image membership and solving for a fixed matrix `A: R^a → R^b`.
pub struct ImageSolver {
    ring: Ring,
    rows: usize,
    cols: usize,
    route: Route,
}

impl ImageSolver {
    pub fn new(a: &Matrix) -> Result<Self> {
        Self::with_limits(a, GbLimits::default())
    }

    pub fn with_limits(a: &Matrix, limits: GbLimits) -> Result<Self> {
        let ring = a.ring();
        check_supported(ring)?;
        let (rows, cols) = (a.rows(), a.cols());
        let modulus = ring.modulus();
        let route = if modulus.prime_power().is_none() {
            let parts = modulus
                .components()
                .into_iter()
                .map(|q| ImageSolver::with_limits(&a.reduce_mod(q), limits))
                .collect::<Result<Vec<_>>>()?;
            Route::Crt(parts)
        } else if ring.nvars <= 1 && modulus.is_prime() {
            Route::Pid(ColumnEchelon::new(a)?)
        } else {
            let emb = Embedding::new(ring)?;
            let b = rows as u32;
            let mut gens: Vec<VPoly> = Vec::with_capacity(cols + rows + cols);
            for j in 0..cols {
                let mut v = emb.vec(&a.col(j), 0);
                v.push((Term { pos: b + j as u32, m: Mono::one() }, 1));
                v.sort_by(|x, y| x.0.cmp(&y.0));
                gens.push(v);
            }
            gens.extend((0..(rows + cols) as u32).map(|i| emb.rho(i)));
            let elems = engine::groebner(&gens, emb.zr, limits)?;
            Route::Gb { emb, basis: Basis::from_elems(emb.zr, elems) }
        };
        Ok(ImageSolver { ring, rows, cols, route })
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Generators of `{c : A c = 0}`.
    pub fn kernel(&self) -> Vec<FreeVector> {
        match &self.route {
            Route::Pid(e) => e.kernel(),
            Route::Gb { emb, basis } => basis
                .elems
                .iter()
                .filter(|f| engine::lead(f).map_or(false, |&(t, _)| t.pos >= self.rows as u32))
                .map(|f| emb.unvec(f, self.rows as u32, self.cols))
                .filter(|v| !v.is_zero())
                .collect(),
            Route::Crt(parts) => parts
                .iter()
                .flat_map(|s| s.kernel().into_iter().map(|v| crt_lift_component(&v, self.ring)))
                .filter(|v| !v.is_zero())
                .collect(),
        }
    }

    /// Some `c` with `A c = b`.
    pub fn solve(&self, b: &FreeVector) -> Option<FreeVector> {
        assert_eq!(b.rank(), self.rows, "right-hand side rank");
        if b.is_zero() {
            return Some(FreeVector::zero(self.ring, self.cols));
        }
        match &self.route {
            Route::Pid(e) => e.solve(b),
            Route::Gb { emb, basis } => {
                let rem = basis.reduce_above(&emb.vec(b, 0), self.rows as u32);
                match engine::lead(&rem) {
                    Some(&(t, _)) if t.pos < self.rows as u32 => None,
                    _ => Some(emb.unvec(&rem, self.rows as u32, self.cols).neg()),
                }
            }
            Route::Crt(parts) => {
                let sols = parts
                    .iter()
                    .zip(crt_split_vec(b))
                    .map(|(s, bc)| s.solve(&bc))
                    .collect::<Option<Vec<_>>>()?;
                Some(crt_combine_vec(&sols, self.ring))
            }
        }
    }

    pub fn contains(&self, b: &FreeVector) -> bool {
        self.solve(b).is_some()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

/// Generators of `{v ∈ R^a : A v = 0}`.
pub fn kernel(a: &Matrix) -> Result<SubmodulePresentation> {
    let k = ImageSolver::new(a)?.kernel();
    SubmodulePresentation::new(a.ring(), a.cols(), k)
}

/// Cokernel `R^k / M`, with invariant factors when the ring is `F_p[x^±]`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientPresentation {
    pub rank: usize,
    pub relations: SubmodulePresentation,
    /// Non-unit invariant factors in the univariate field case; `0` marks a free summand.
    pub invariant_factors: Option<Vec<LaurentPoly>>,
}

impl QuotientPresentation {
    pub fn ring(&self) -> Ring {
        self.relations.ring()
    }
}

/// Presentation of `R^k / M`.
pub fn quotient_presentation(rank: usize, m: &SubmodulePresentation) -> Result<QuotientPresentation> {
    if m.rank() != rank {
        return Err(Error::Shape(format!("submodule of rank {} in R^{rank}", m.rank())));
    }
    check_supported(m.ring())?;
    let ring = m.ring();
    let invariant_factors = if ring.nvars == 1 && ring.modulus().is_prime() {
        let mut factors: Vec<LaurentPoly> = if m.is_empty() {
            Vec::new()
        } else {
            smith_form(&m.to_matrix())?.invariant_factors
        };
        let nonzero = factors.len();
        factors.retain(|f| !f.is_one());
        factors.extend((nonzero..rank).map(|_| ring.zero()));
        Some(factors)
    } else {
        None
    };
    Ok(QuotientPresentation { rank, relations: m.clone(), invariant_factors })
}

/// `Hom(conj M, R)` for `M = R^k / im A`: values on the generators, i.e. `ker A^†`.
pub fn dual_presentation(m: &QuotientPresentation) -> Result<SubmodulePresentation> {
    let ring = m.ring();
    if m.relations.is_empty() {
        return Ok(SubmodulePresentation::full(ring, m.rank));
    }
    kernel(&m.relations.to_matrix().adjoint())
}

/// `ker(K) / im(F)` as a quotient of a free module, where `im F ⊆ ker K`.
///
/// `k_map` has `a` columns (or is `None` for `ker = R^a`) and `f_map` maps into `R^a`.
pub fn subquotient(k_map: Option<&Matrix>, f_map: &Matrix) -> Result<QuotientPresentation> {
    let ring = f_map.ring();
    let a = f_map.rows();
    let Some(k_map) = k_map.filter(|k| !k.is_zero()) else {
        return quotient_presentation(a, &SubmodulePresentation::from_matrix(f_map));
    };
    let gens = kernel(k_map)?;
    let kmat = gens.to_matrix();
    let solver = ImageSolver::new(&kmat)?;
    let mut rels: Vec<FreeVector> = solver.kernel();
    for col in f_map.columns() {
        let c = solver.solve(&col).ok_or_else(|| {
            Error::Inconsistent("image is not contained in the kernel".into())
        })?;
        rels.push(c);
    }
    let t = gens.len();
    quotient_presentation(t, &SubmodulePresentation::new(ring, t, rels)?)
}

/// `Ext^1(conj M, R)` for `M = R^k / im A`, from `R^s → R^a → R^k → M → 0`.
pub fn ext1(m: &QuotientPresentation) -> Result<QuotientPresentation> {
    let ring = m.ring();
    if m.relations.is_empty() {
        return quotient_presentation(0, &SubmodulePresentation::zero(ring, 0));
    }
    let a = m.relations.to_matrix();
    let syz = kernel(&a)?;
    let f_map = a.adjoint();
    if syz.is_empty() {
        return subquotient(None, &f_map);
    }
    subquotient(Some(&syz.to_matrix().adjoint()), &f_map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r1(n: u64) -> Ring {
        Ring::new(1, n).unwrap()
    }

    fn v(ring: Ring, s: &[&str]) -> FreeVector {
        FreeVector::new(ring, s.iter().map(|x| ring.parse(x).unwrap()).collect())
    }

    #[test]
    fn principal_ideal_basis() {
        let r = r1(2);
        let m = SubmodulePresentation::new(r, 1, vec![v(r, &["1 + x"]), v(r, &["x + x^2"])]).unwrap();
        let gb = groebner(&m).unwrap();
        assert!(gb.contains(&v(r, &["x^-3 + x^-2"])).unwrap());
        assert!(!gb.contains(&v(r, &["1"])).unwrap());
        assert_eq!(gb.basis().len(), 1);
    }

    #[test]
    fn kernel_over_z4() {
        let r = r1(4);
        let a = Matrix::from_rows(r, vec![vec![r.constant(2)]]).unwrap();
        let k = kernel(&a).unwrap();
        assert_eq!(k.len(), 1);
        assert!(contains(&k, &v(r, &["2"])).unwrap());
        assert!(!contains(&k, &v(r, &["1"])).unwrap());
    }

    #[test]
    fn gb_and_pid_routes_agree() {
        let r = r1(3);
        let a = Matrix::from_rows(
            r,
            vec![
                vec![r.parse("1 + x").unwrap(), r.parse("x^-1").unwrap(), r.zero()],
                vec![r.zero(), r.parse("1 + 2*x").unwrap(), r.parse("x^2").unwrap()],
            ],
        )
        .unwrap();
        let pid = ImageSolver::new(&a).unwrap();
        for k in pid.kernel() {
            assert!(a.apply(&k).is_zero());
        }
        let b = v(r, &["x^5", "2"]);
        let y = pid.solve(&b).unwrap();
        assert_eq!(a.apply(&y), b);
    }

    #[test]
    fn multivariate_chain_ring_is_unsupported() {
        let r = Ring::new(2, 4).unwrap();
        let m = SubmodulePresentation::full(r, 1);
        assert!(matches!(groebner(&m), Err(Error::Unsupported(_))));
    }
}
