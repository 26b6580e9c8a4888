//! Clifford QCAs as symplectic automorphisms, their boundary algebras, and the comparison
//! with the boundary module of the code they create.

use serde::Serialize;

use super::{in_span, pad, BoundaryModule, BoundaryOptions, Frame, HalfSpace, Side};
use crate::bulk::{StabilizerCode, SymplecticSpace};
use crate::error::{Error, Result};
use crate::groebner::{kernel, ImageSolver};
use crate::linalg::{FreeVector, Matrix};
use crate::oned::QuasiSymplectic1D;

/// A symplectic automorphism of `P`.
#[derive(Clone, Debug)]
pub struct QcaAutomaton {
    space: SymplecticSpace,
    matrix: Matrix,
}

impl QcaAutomaton {
    pub fn new(space: SymplecticSpace, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != space.rank() || matrix.cols() != space.rank() {
            return Err(Error::Shape(format!("automorphism must be {0}×{0}", space.rank())));
        }
        let j = space.form_matrix();
        if matrix.adjoint().mul(&j).mul(&matrix) != j {
            return Err(Error::Invalid("matrix does not preserve the symplectic form".into()));
        }
        Ok(QcaAutomaton { space, matrix })
    }

    pub fn identity(space: SymplecticSpace) -> Self {
        QcaAutomaton { space, matrix: Matrix::identity(space.ring(), space.rank()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `J^{-1} α^† J`.
    pub fn inverse(&self) -> Matrix {
        let j = self.space.form_matrix();
        let neg_j = j.map(|f| -f.clone());
        neg_j.mul(&self.matrix.adjoint()).mul(&j)
    }

    /// The code `α(𝒵)`, where `𝒵` is spanned by the Z-type unit vectors.
    pub fn created_code(&self) -> Result<StabilizerCode> {
        let m = self.space.sites();
        let cols: Vec<FreeVector> = (m..2 * m).map(|c| self.matrix.col(c)).collect();
        StabilizerCode::from_columns(self.space.ring(), m, &cols)
    }

    /// Whether `α(𝒵) = L`.
    pub fn creates(&self, code: &StabilizerCode) -> Result<bool> {
        let created = self.created_code()?;
        let a = ImageSolver::new(created.sigma())?;
        let b = ImageSolver::new(code.sigma())?;
        Ok(code.generators().iter().all(|g| a.contains(g)) && created.generators().iter().all(|g| b.contains(g)))
    }

    fn spread_in(&self, frame: &Frame) -> i32 {
        let d = frame.ring_b.nvars;
        let mut l = 0;
        for m in [self.matrix.clone(), self.inverse()] {
            for c in m.columns() {
                for f in frame.to_frame(&c).entries() {
                    if let Some((lo, hi)) = f.var_range(d) {
                        l = l.max(lo.abs()).max(hi.abs());
                    }
                }
            }
        }
        l
    }
}

/// `B^r = α(P_{≤r}) ∩ P_[0, r+l]` and `D^r = α(P_{>r}) ∩ P_[0, r+l]`.
#[derive(Clone, Debug, Serialize)]
pub struct QcaAlgebra {
    pub spread: i32,
    pub r: i32,
    pub b_rank: usize,
    pub d_rank: usize,
    pub b_symplectic: Option<bool>,
    pub d_symplectic: Option<bool>,
    pub orthogonal: bool,
    pub spanning: bool,
    /// `B^{r+1} = B^r ⊕ α(layer r+1)` with the added layer standard.
    pub next_layer_split: bool,
    #[serde(skip)]
    pub b_generators: Vec<FreeVector>,
}

struct QcaFrame<'a> {
    frame: Frame,
    alpha: &'a QcaAutomaton,
    forward: Matrix,
    backward: Matrix,
    spread: i32,
}

impl<'a> QcaFrame<'a> {
    fn new(alpha: &'a QcaAutomaton, hs: &HalfSpace) -> Result<Self> {
        let frame = Frame::new(&alpha.created_code()?, hs, Side::Upper)?;
        let ring = alpha.space.ring();
        let n = alpha.space.rank();
        let fwd: Vec<FreeVector> = alpha.matrix.columns().iter().map(|c| frame.to_frame(c)).collect();
        let bwd: Vec<FreeVector> = alpha.inverse().columns().iter().map(|c| frame.to_frame(c)).collect();
        let spread = alpha.spread_in(&frame);
        Ok(QcaFrame {
            forward: Matrix::from_cols(ring, n, &fwd),
            backward: Matrix::from_cols(ring, n, &bwd),
            frame,
            alpha,
            spread,
        })
    }

    fn unit_at(&self, h: i32, c: usize) -> FreeVector {
        let ring = self.alpha.space.ring();
        let mut e = vec![0; ring.nvars];
        e[ring.nvars - 1] = h;
        FreeVector::unit(ring, self.alpha.space.rank(), c).shift(&crate::ring::ExponentVector(e))
    }

    /// Slab vectors `y ∈ P_[0, top]` with `α^{-1} y` vanishing at heights `[lo, hi]`.
    fn preimage_avoiding(&self, top: i32, lo: i32, hi: i32) -> Result<Vec<FreeVector>> {
        let f = &self.frame;
        let rank = f.slab_rank(0, top);
        let out_rank = f.slab_rank(lo, hi);
        if out_rank == 0 {
            return Ok((0..rank).map(|i| FreeVector::unit(f.ring_b, rank, i)).collect());
        }
        let mut cols = Vec::with_capacity(rank);
        for h in 0..=top {
            for c in 0..2 * f.m {
                cols.push(f.to_slab(&self.backward.apply(&self.unit_at(h, c)), lo, hi));
            }
        }
        let m = Matrix::from_cols(f.ring_b, out_rank, &cols);
        if m.is_zero() {
            return Ok((0..rank).map(|i| FreeVector::unit(f.ring_b, rank, i)).collect());
        }
        Ok(kernel(&m)?.generators().iter().filter(|g| !g.is_zero()).cloned().collect())
    }

    fn b_part(&self, r: i32) -> Result<Vec<FreeVector>> {
        let l = self.spread;
        self.preimage_avoiding(r + l, r + 1, r + 2 * l)
    }

    fn d_part(&self, r: i32) -> Result<Vec<FreeVector>> {
        let l = self.spread;
        self.preimage_avoiding(r + l, -l, r)
    }

    fn gram(&self, a: &[FreeVector], b: &[FreeVector]) -> Matrix {
        let mut g = Matrix::zeros(self.frame.ring_b, a.len(), b.len());
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                g.set(i, j, self.frame.slab_omega(x, y));
            }
        }
        g
    }

    fn symplectic(&self, gens: &[FreeVector]) -> Result<Option<bool>> {
        if self.frame.ring_b.nvars != 1 {
            return Ok(None);
        }
        if gens.is_empty() {
            return Ok(Some(true));
        }
        let qs = QuasiSymplectic1D::new(self.gram(gens, gens))?;
        let v = qs.validate()?;
        Ok(Some(v.is_valid() && qs.e_module()?.order() == 1))
    }
}

pub fn qca_boundary_algebra(alpha: &QcaAutomaton, hs: &HalfSpace, r: i32) -> Result<QcaAlgebra> {
    let q = QcaFrame::new(alpha, hs)?;
    let l = q.spread;
    if r < l {
        return Err(Error::Invalid(format!("boundary algebra needs r ≥ spread {l}")));
    }
    let f = &q.frame;
    let b = q.b_part(r)?;
    let d = q.d_part(r)?;
    let rank = f.slab_rank(0, r + l);
    let orthogonal = b.iter().all(|x| d.iter().all(|y| f.slab_omega(x, y).is_zero()));
    let mut both = b.clone();
    both.extend(d.iter().cloned());
    let mut spanning = true;
    for i in 0..rank {
        if !in_span(f.ring_b, rank, &both, &FreeVector::unit(f.ring_b, rank, i))? {
            spanning = false;
            break;
        }
    }
    // Next layer: B^{r+1} = B^r ⊕ α(P_{r+1}).
    let b1 = q.b_part(r + 1)?;
    let rank1 = f.slab_rank(0, r + 1 + l);
    let layer: Vec<FreeVector> =
        (0..2 * f.m).map(|c| f.to_slab(&q.forward.apply(&q.unit_at(r + 1, c)), 0, r + 1 + l)).collect();
    let padded: Vec<FreeVector> = b.iter().map(|x| pad(x, rank1)).collect();
    let mut split = true;
    for v in padded.iter().chain(&layer) {
        split &= in_span(f.ring_b, rank1, &b1, v)?;
    }
    let mut sum = padded.clone();
    sum.extend(layer.iter().cloned());
    for v in &b1 {
        split &= in_span(f.ring_b, rank1, &sum, v)?;
    }
    split &= padded.iter().all(|x| layer.iter().all(|y| f.slab_omega(x, y).is_zero()));
    let z_layer = &layer[f.m..];
    split &= z_layer.iter().all(|x| z_layer.iter().all(|y| f.slab_omega(x, y).is_zero()));
    Ok(QcaAlgebra {
        spread: l,
        r,
        b_rank: b.len(),
        d_rank: d.len(),
        b_symplectic: q.symplectic(&b)?,
        d_symplectic: q.symplectic(&d)?,
        orthogonal,
        spanning,
        next_layer_split: split,
        b_generators: b,
    })
}

/// `(L_B^⊥ ∩ B)/L_B → P_∂`, `b ↦ b + L_{≥0}`, with `B = B^{M+l}` and `M = 2l - 1`.
#[derive(Clone, Debug, Serialize)]
pub struct QcaComparison {
    pub spread: i32,
    pub r: i32,
    pub creates_code: bool,
    pub algebra_generators: usize,
    pub boundary_rank: usize,
    pub gram_match: bool,
    /// The algebra side has zero radical, so the form-preserving map is injective.
    pub injective: bool,
    pub surjective: bool,
}

impl QcaComparison {
    pub fn isomorphic(&self) -> bool {
        self.creates_code && self.gram_match && self.injective && self.surjective
    }
}

pub fn qca_vs_boundary_check(
    alpha: &QcaAutomaton,
    code: &StabilizerCode,
    hs: &HalfSpace,
    opts: BoundaryOptions,
) -> Result<QcaComparison> {
    let creates_code = alpha.creates(code)?;
    if !creates_code {
        return Err(Error::Invalid("the automorphism does not create this code".into()));
    }
    let q = QcaFrame::new(alpha, hs)?;
    let l = q.spread;
    let r = (2 * l - 1).max(0) + l;
    let f = &q.frame;
    let ring = f.ring_b;
    let top = r + l;
    let rank = f.slab_rank(0, top);
    let b = q.b_part(r)?;
    let boundary = BoundaryModule::compute(code, hs, Side::Upper, opts)?;
    let t = f.code_in_slab(0, top)?;
    // L_B = L ∩ B: elements of T whose preimage avoids heights above r.
    let l_b: Vec<FreeVector> = if t.is_empty() {
        Vec::new()
    } else {
        let tm = Matrix::from_cols(ring, rank, &t);
        let cons: Vec<FreeVector> = t
            .iter()
            .map(|v| f.to_slab(&q.backward.apply(&f.from_slab(v, 0)), r + 1, r + 2 * l))
            .collect();
        let cm = Matrix::from_cols(ring, f.slab_rank(r + 1, r + 2 * l), &cons);
        if cm.rows() == 0 || cm.is_zero() {
            t.clone()
        } else {
            kernel(&cm)?.generators().iter().map(|c| tm.apply(c)).filter(|v| !v.is_zero()).collect()
        }
    };
    // Y = L_B^⊥ ∩ B.
    let y: Vec<FreeVector> = if b.is_empty() {
        Vec::new()
    } else if l_b.is_empty() {
        b.clone()
    } else {
        let bm = Matrix::from_cols(ring, rank, &b);
        let pairing = q.gram(&l_b, &b);
        kernel(&pairing)?.generators().iter().map(|c| bm.apply(c)).filter(|v| !v.is_zero()).collect()
    };
    // Coordinates in P_∂.
    let hq = top.max(boundary.height());
    let rank_q = f.slab_rank(0, hq);
    let k = boundary.rank();
    let mut cols: Vec<FreeVector> = boundary.generators().iter().map(|g| pad(g, rank_q)).collect();
    cols.extend(f.code_in_slab(0, hq)?);
    let solver = if cols.is_empty() { None } else { Some(ImageSolver::new(&Matrix::from_cols(ring, rank_q, &cols))?) };
    let mut phi = Vec::with_capacity(y.len());
    for v in &y {
        let c = match &solver {
            Some(s) => s.solve(&pad(v, rank_q)),
            None => v.is_zero().then(|| FreeVector::zero(ring, 0)),
        }
        .ok_or_else(|| Error::Inconsistent("algebra element is not a boundary operator".into()))?;
        phi.push(c.slice(0..k));
    }
    let gy = q.gram(&y, &y);
    let gram_match = phi.iter().enumerate().all(|(i, a)| {
        phi.iter().enumerate().all(|(j, b)| a.involution().dot(&boundary.gram().apply(b)) == *gy.get(i, j))
    });
    // Radical of the algebra side lies in L_B.
    let injective = if y.is_empty() {
        true
    } else {
        let rad = kernel(&gy)?;
        let mut ok = true;
        for c in rad.generators() {
            let v = Matrix::from_cols(ring, rank, &y).apply(c);
            if !in_span(ring, rank, &l_b, &v)? {
                ok = false;
                break;
            }
        }
        ok
    };
    let mut span = phi.clone();
    span.extend(boundary.relations().generators().iter().cloned());
    let mut surjective = true;
    for i in 0..k {
        if !in_span(ring, k, &span, &FreeVector::unit(ring, k, i))? {
            surjective = false;
            break;
        }
    }
    Ok(QcaComparison {
        spread: l,
        r,
        creates_code,
        algebra_generators: y.len(),
        boundary_rank: k,
        gram_match,
        injective,
        surjective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use crate::zoo;

    fn split_qca() -> QcaAutomaton {
        let ring = Ring::new(2, 2).unwrap();
        let space = SymplecticSpace::new(ring, 1).unwrap();
        let f = ring.parse("x^-1*y^-1 + y^-1 + y + x*y").unwrap();
        let m = Matrix::from_rows(ring, vec![vec![ring.one(), f], vec![ring.zero(), ring.one()]]).unwrap();
        QcaAutomaton::new(space, m).unwrap()
    }

    #[test]
    fn identity_algebra_is_standard() {
        let space = SymplecticSpace::new(Ring::new(2, 2).unwrap(), 1).unwrap();
        let a = qca_boundary_algebra(&QcaAutomaton::identity(space), &HalfSpace::standard(2), 0).unwrap();
        assert_eq!((a.b_rank, a.spread), (2, 0));
        assert!(a.orthogonal && a.spanning && a.next_layer_split);
        assert_eq!(a.b_symplectic, Some(true));
    }

    #[test]
    fn shear_algebra() {
        let alpha = split_qca();
        assert!(alpha.creates(&zoo::split_example().unwrap()).unwrap());
        for r in [1, 2] {
            let a = qca_boundary_algebra(&alpha, &HalfSpace::standard(2), r).unwrap();
            assert!(a.orthogonal && a.spanning && a.next_layer_split, "{a:?}");
            assert_eq!((a.b_symplectic, a.d_symplectic), (Some(true), Some(true)));
        }
    }

    #[test]
    fn algebra_matches_boundary() {
        let c = qca_vs_boundary_check(&split_qca(), &zoo::split_example().unwrap(), &HalfSpace::standard(2), Default::default()).unwrap();
        assert!(c.isomorphic(), "{c:?}");
        let trivial = zoo::trivial(2, 2).unwrap();
        let id = QcaAutomaton::identity(trivial.space());
        let c = qca_vs_boundary_check(&id, &trivial, &HalfSpace::standard(2), Default::default()).unwrap();
        assert!(c.isomorphic(), "{c:?}");
    }
}
