//! The maps `q : L → P_∂` and `V : E_L → Q_L`, and mobility of charges through the boundary.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{pad, BoundaryModule, Frame, HalfSpace, Side};
use crate::bulk::StabilizerCode;
use crate::error::{Error, Result};
use crate::groebner::{groebner, ImageSolver};
use crate::linalg::{FreeVector, Matrix, SubmodulePresentation};
use crate::ring::{zn, ExponentVector, LaurentPoly, Ring};

impl BoundaryModule {
    /// Class of `π_{≥0}(ℓ)` in `P_∂`, as coordinates on the generators. `ℓ` is in the code's own coordinates.
    pub fn q_map(&self, ell: &FreeVector) -> Result<FreeVector> {
        let frame = &self.frame;
        let v = frame.to_frame(ell);
        match ImageSolver::new(frame.code.sigma()) {
            Ok(s) if !s.contains(&v) => return Err(Error::Invalid("operator is not in the code".into())),
            Ok(_) | Err(Error::Unsupported(_)) => {}
            Err(e) => return Err(e),
        }
        let d = frame.ring_b.nvars;
        let top = v.entries().iter().filter_map(|f| f.var_range(d)).map(|r| r.1).max();
        let Some(top) = top.filter(|&t| t >= 0) else {
            return Ok(FreeVector::zero(self.ring(), self.rank()));
        };
        if top <= self.height {
            let y = frame.to_slab(&v, 0, self.height);
            return self.coordinates(&y).ok_or_else(|| Error::Inconsistent("truncation is not a boundary operator".into()));
        }
        let k = self.rank();
        let rank = frame.slab_rank(0, top);
        let mut cols: Vec<FreeVector> = self.generators().iter().map(|g| pad(g, rank)).collect();
        cols.extend(frame.code_in_slab(0, top)?);
        let s = ImageSolver::new(&Matrix::from_cols(frame.ring_b, rank, &cols))?;
        let c = s
            .solve(&frame.to_slab(&v, 0, top))
            .ok_or_else(|| Error::Inconsistent("truncation is not a boundary operator".into()))?;
        Ok(c.slice(0..k))
    }

    /// `ĥ(σ_j) = Σ_n α(q(x_d^n σ_j)) x_d^n` for `α` given by its values on the generators.
    pub fn v_functional(&self, alpha: &FreeVector) -> Result<FreeVector> {
        if self.side() != Side::Upper {
            return Err(Error::Invalid("the boundary-to-bulk map is defined for the upper side".into()));
        }
        if alpha.rank() != self.rank() {
            return Err(Error::Shape("functional has the wrong number of values".into()));
        }
        let ring = self.frame.code.ring();
        let mut values = vec![ring.zero(); self.frame.code.generator_count()];
        for (i, &(j, k)) in self.straddling().iter().enumerate() {
            for (e, c) in alpha.get(i).terms() {
                let mut full = e.0.clone();
                full.push(k);
                values[j].add_term(ExponentVector(full), c);
            }
        }
        Ok(FreeVector::new(ring, values.iter().map(|f| self.frame.value_from_frame(f)).collect()))
    }

    /// `V` on every element of `E_L`, compared with the charge module of `code`.
    pub fn v_map(&self, code: &StabilizerCode) -> Result<VMap> {
        let e = self.quasi_symplectic()?.e_module()?;
        let q = code.charge_module()?;
        if q.is_finite() != Some(true) {
            return Err(Error::Unsupported("V is compared against finite charge modules only".into()));
        }
        let mut images = Vec::new();
        for a in e.elements() {
            let h = self.v_functional(&e.representative(&a))?;
            images.push((a, q.quotient.class_of(&h)?));
        }
        let mut distinct: Vec<&Vec<u64>> = images.iter().map(|(_, b)| b).collect();
        distinct.sort();
        distinct.dedup();
        let e_order = e.order();
        let q_order = q.order().unwrap_or(0);
        Ok(VMap {
            injective: distinct.len() as u128 == e_order,
            surjective: distinct.len() as u128 == q_order,
            e_order,
            q_order,
            images,
        })
    }
}

/// `V : E_L → Q_L` tabulated on all of `E_L`.
#[derive(Clone, Debug, Serialize)]
pub struct VMap {
    pub images: Vec<(Vec<u64>, Vec<u64>)>,
    pub injective: bool,
    pub surjective: bool,
    pub e_order: u128,
    pub q_order: u128,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MobilityStatus {
    /// Every generator has both annihilators.
    Found,
    /// Some generator has no annihilator within the degree budget; this is not a proof of absence.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorMobility {
    /// `f` with `v·λ > 0` on its support and `(1 - f)` annihilating the class.
    pub upward: Option<LaurentPoly>,
    /// `g` with `v·λ < 0` on its support and `(1 - g)` annihilating the class.
    pub downward: Option<LaurentPoly>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MobilityReport {
    pub normal: Vec<i64>,
    pub degree: u32,
    pub generators: Vec<GeneratorMobility>,
    pub status: MobilityStatus,
    /// `1 - Π(1 - f_i)` and `1 - Π(1 - g_i)`, checked against every generator.
    pub combined: Option<(LaurentPoly, LaurentPoly)>,
}

fn monomials(d: usize, degree: u32, normal: &[i64], sign: i64) -> Vec<ExponentVector> {
    let deg = degree as i32;
    let mut out = Vec::new();
    let mut cur = vec![-deg; d];
    loop {
        let l1: i32 = cur.iter().map(|x| x.abs()).sum();
        let dot: i64 = cur.iter().zip(normal).map(|(&x, &v)| i64::from(x) * v).sum();
        if l1 <= deg && dot.signum() == sign {
            out.push(ExponentVector(cur.clone()));
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            cur[i] += 1;
            if cur[i] <= deg {
                break;
            }
            cur[i] = -deg;
            i += 1;
        }
    }
}

type Key = (usize, ExponentVector);

fn flatten(v: &FreeVector) -> BTreeMap<Key, u64> {
    let mut out = BTreeMap::new();
    for (i, f) in v.entries().iter().enumerate() {
        for (e, c) in f.terms() {
            out.insert((i, e.clone()), c);
        }
    }
    out
}

/// Solves `Σ c_i col_i = target` over `F_p` by elimination on sparse columns.
fn solve_prime(cols: &[BTreeMap<Key, u64>], target: &BTreeMap<Key, u64>, p: u64) -> Option<Vec<u64>> {
    let keys: Vec<&Key> = {
        let mut k: Vec<&Key> = cols.iter().flat_map(|c| c.keys()).chain(target.keys()).collect();
        k.sort();
        k.dedup();
        k
    };
    let index: BTreeMap<&Key, usize> = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
    let n = cols.len();
    // Rows are keys; augmented column n is the target.
    let mut rows: Vec<Vec<u64>> = vec![vec![0; n + 1]; keys.len()];
    for (j, c) in cols.iter().enumerate() {
        for (k, &v) in c {
            rows[index[k]][j] = v;
        }
    }
    for (k, &v) in target {
        rows[index[k]][n] = v;
    }
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, pr);
        let inv = zn::inv(rows[r][col], p)?;
        for x in rows[r].iter_mut() {
            *x = zn::mul(*x, inv, p);
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = zn::sub(*x, zn::mul(f, y, p), p);
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[n] != 0) {
        return None;
    }
    let mut sol = vec![0; n];
    for (i, &col) in pivots.iter().enumerate() {
        sol[col] = rows[i][n];
    }
    Some(sol)
}

/// Searches annihilators `1 - f`, `1 - g` of each charge-module generator with `|λ|_1 ≤ degree`.
pub fn mobility(code: &StabilizerCode, normal: &[i64], degree: u32) -> Result<MobilityReport> {
    let ring = code.ring();
    let p = ring.n;
    if !ring.modulus().is_prime() {
        return Err(Error::Unsupported("mobility search needs a prime modulus".into()));
    }
    if normal.len() != ring.nvars {
        return Err(Error::Shape("normal has the wrong dimension".into()));
    }
    let q = code.charge_module()?;
    let g = code.generator_count();
    let gens: Vec<FreeVector> = match q.quotient.functional_generators() {
        Some(m) => m.columns(),
        None => (0..g).map(|i| FreeVector::unit(ring, g, i)).collect(),
    };
    let image = SubmodulePresentation::from_matrix(&code.syndrome_matrix());
    let gb = groebner(&image)?;
    let up = monomials(ring.nvars, degree, normal, 1);
    let down = monomials(ring.nvars, degree, normal, -1);
    let search = |h: &FreeVector, mons: &[ExponentVector]| -> Result<Option<LaurentPoly>> {
        let target = flatten(&gb.normal_form(h)?);
        if target.is_empty() {
            return Ok(Some(ring.zero()));
        }
        let cols = mons.iter().map(|e| gb.normal_form(&h.shift(e)).map(|v| flatten(&v))).collect::<Result<Vec<_>>>()?;
        Ok(solve_prime(&cols, &target, p).map(|c| {
            LaurentPoly::from_terms(ring, mons.iter().cloned().zip(c).filter(|(_, c)| *c != 0).map(|(e, c)| (e, c as i64)))
        }))
    };
    let mut generators = Vec::new();
    for h in &gens {
        let upward = search(h, &up)?;
        let downward = search(h, &down)?;
        for f in upward.iter().chain(downward.iter()) {
            if !gb.contains(&h.scale(&(ring.one() - f.clone())))? {
                return Err(Error::Inconsistent("annihilator failed verification".into()));
            }
        }
        generators.push(GeneratorMobility { upward, downward });
    }
    let all_found = generators.iter().all(|m| m.upward.is_some() && m.downward.is_some());
    let combined = if all_found {
        let prod = |sel: &dyn Fn(&GeneratorMobility) -> LaurentPoly| {
            generators.iter().fold(ring.one(), |acc, m| acc * (ring.one() - sel(m)))
        };
        let pu = prod(&|m| m.upward.clone().unwrap());
        let pd = prod(&|m| m.downward.clone().unwrap());
        for h in &gens {
            if !gb.contains(&h.scale(&pu))? || !gb.contains(&h.scale(&pd))? {
                return Err(Error::Inconsistent("combined annihilator failed verification".into()));
            }
        }
        Some((ring.one() - pu, ring.one() - pd))
    } else {
        None
    };
    Ok(MobilityReport {
        normal: normal.to_vec(),
        degree,
        generators,
        status: if all_found { MobilityStatus::Found } else { MobilityStatus::Inconclusive },
        combined,
    })
}

/// `h(ℓ)` at the origin for `ℓ = σc`, with the position of `ℓ` relative to the half-space.
#[derive(Clone, Debug, Serialize)]
pub struct UpperPairing {
    pub value: u64,
    pub in_upper_half: bool,
    pub class_nonzero: bool,
}

pub fn upper_pairing(code: &StabilizerCode, normal: &[i64], h: &FreeVector, c: &FreeVector) -> Result<UpperPairing> {
    if h.rank() != code.generator_count() || c.rank() != code.generator_count() {
        return Err(Error::Shape("functional and coefficients need one entry per generator".into()));
    }
    let ell = code.sigma().apply(c);
    let in_upper_half = ell.entries().iter().all(|f| {
        f.terms().all(|(e, _)| e.0.iter().zip(normal).map(|(&x, &v)| i64::from(x) * v).sum::<i64>() >= 0)
    });
    let value = c.involution().dot(h).constant_term();
    let q = code.charge_module()?;
    Ok(UpperPairing { value, in_upper_half, class_nonzero: !q.quotient.is_zero_class(h) })
}

/// For each generator with a downward annihilator `1 - g`, the least `N` with `(g^N h)` vanishing
/// at the origin on `L ∩ P_[0, window]` and its upward translates.
#[derive(Clone, Debug, Serialize)]
pub struct LiftCheck {
    pub window: i32,
    pub powers: Vec<Option<u32>>,
}

impl LiftCheck {
    pub fn all_lifted(&self) -> bool {
        self.powers.iter().all(Option::is_some)
    }
}

pub fn lift_check(code: &StabilizerCode, hs: &HalfSpace, report: &MobilityReport, window: i32, max_power: u32) -> Result<LiftCheck> {
    let frame = Frame::new(code, hs, Side::Upper)?;
    let ring: Ring = code.ring();
    let d = ring.nvars;
    let q = code.charge_module()?;
    let g = code.generator_count();
    let gens: Vec<FreeVector> = match q.quotient.functional_generators() {
        Some(m) => m.columns(),
        None => (0..g).map(|i| FreeVector::unit(ring, g, i)).collect(),
    };
    let solver = ImageSolver::new(frame.code.sigma())?;
    let coeffs: Vec<FreeVector> = frame
        .code_in_slab(0, window)?
        .iter()
        .map(|t| {
            solver
                .solve(&frame.from_slab(t, 0))
                .ok_or_else(|| Error::Inconsistent("slab element outside the code".into()))
        })
        .collect::<Result<_>>()?;
    let mut powers = Vec::new();
    for (h, m) in gens.iter().zip(&report.generators) {
        let Some(down) = &m.downward else {
            powers.push(None);
            continue;
        };
        let gf = frame.value_to_frame(down);
        let mut hf = FreeVector::new(ring, h.entries().iter().map(|f| frame.value_to_frame(f)).collect());
        let mut found = None;
        for n in 0..=max_power {
            let vanishes = coeffs.iter().all(|c| {
                let val = c.involution().dot(&hf);
                let ok = val.terms().all(|(e, _)| e.0[d - 1] < 0);
                ok
            });
            if vanishes {
                found = Some(n);
                break;
            }
            hf = hf.scale(&gf);
        }
        powers.push(found);
    }
    Ok(LiftCheck { window, powers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::BoundaryOptions;
    use crate::zoo;

    #[test]
    fn toric_v_is_bijective() {
        let code = zoo::toric(2).unwrap();
        for v in [[0, 1], [1, 0], [1, 1]] {
            let b = BoundaryModule::compute(&code, &HalfSpace::new(&v).unwrap(), Side::Upper, BoundaryOptions::default()).unwrap();
            let map = b.v_map(&code).unwrap();
            assert!(map.injective && map.surjective, "{v:?}: {map:?}");
        }
    }

    #[test]
    fn q_kills_far_translates() {
        let code = zoo::split_example().unwrap();
        let b = BoundaryModule::compute(&code, &HalfSpace::standard(2), Side::Upper, BoundaryOptions::default()).unwrap();
        let sigma = code.sigma().col(0);
        let ring = code.ring();
        for k in [-6, -3, 3, 6] {
            let c = b.q_map(&sigma.shift(&ExponentVector(vec![0, k]))).unwrap();
            assert!(c.is_zero(), "{k}");
        }
        let c0 = b.q_map(&sigma).unwrap();
        assert!(b.same_class(&c0, &FreeVector::unit(ring.with_nvars(1), b.rank(), 1)).unwrap());
    }

    #[test]
    fn mobility_of_finite_charges() {
        let code = zoo::toric(2).unwrap();
        let r = mobility(&code, &[0, 1], 2).unwrap();
        assert_eq!(r.status, MobilityStatus::Found);
    }

    #[test]
    fn xcube_mobility_depends_on_direction() {
        let code = zoo::xcube().unwrap();
        let axis = mobility(&code, &[0, 0, 1], 3).unwrap();
        assert_eq!(axis.status, MobilityStatus::Inconclusive);
        let slanted = mobility(&code, &[1, 1, 1], 3).unwrap();
        assert_eq!(slanted.status, MobilityStatus::Found);
    }
}
