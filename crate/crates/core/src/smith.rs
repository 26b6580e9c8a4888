//! Normal forms over principal rings: Smith form over `F_p[x^±]`, a column echelon
//! form used for kernels and solving over the same ring, and the Smith form over
//! the local ring `Z_{p^r}` used to read off finite abelian groups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{FreeVector, Matrix};
use crate::ring::{zn, LaurentPoly, Ring};
use crate::upoly::UPoly;

type UMat = Vec<Vec<UPoly>>;

fn check_pid(ring: Ring) -> Result<u64> {
    if ring.nvars > 1 || !ring.modulus().is_prime() {
        return Err(Error::Unsupported(format!(
            "principal-ideal routines need F_p[x^±]; got {} variables over Z_{}",
            ring.nvars, ring.n
        )));
    }
    Ok(ring.n)
}

fn to_umat(a: &Matrix) -> UMat {
    (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| UPoly::from_laurent(a.get(i, j))).collect())
        .collect()
}

fn from_umat(ring: Ring, m: &UMat, cols: usize) -> Matrix {
    let rows = m
        .iter()
        .map(|row| row.iter().map(|e| e.to_laurent(ring)).collect())
        .collect::<Vec<_>>();
    if rows.is_empty() {
        return Matrix::zeros(ring, 0, cols);
    }
    Matrix::from_rows(ring, rows).expect("rectangular")
}

fn identity(k: usize) -> UMat {
    (0..k)
        .map(|i| (0..k).map(|j| if i == j { UPoly::constant(1) } else { UPoly::zero() }).collect())
        .collect()
}

/// `row_dst -= q·row_src`
fn row_axpy(m: &mut UMat, dst: usize, src: usize, q: &UPoly, p: u64) {
    if q.is_zero() {
        return;
    }
    let src_row = m[src].clone();
    for (d, s) in m[dst].iter_mut().zip(&src_row) {
        if !s.is_zero() {
            *d = d.sub(&q.mul(s, p), p);
        }
    }
}

/// `col_dst -= q·col_src`
fn col_axpy(m: &mut UMat, dst: usize, src: usize, q: &UPoly, p: u64) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let t = q.mul(&row[src], p);
            row[dst] = row[dst].sub(&t, p);
        }
    }
}

fn swap_cols(m: &mut UMat, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

/// Smith normal form `U·A·V = D` over `F_p[x^±]`.
#[derive(Clone, Debug, Serialize)]
pub struct SmithForm {
    /// Nonzero diagonal entries, monic with lowest exponent 0, each dividing the next.
    pub invariant_factors: Vec<LaurentPoly>,
    pub u: Matrix,
    pub v: Matrix,
    pub diagonal: Matrix,
}

impl SmithForm {
    /// Recomputes `U·A·V` and compares with the stored diagonal.
    pub fn verify(&self, a: &Matrix) -> bool {
        self.u.mul(a).mul(&self.v) == self.diagonal
    }
}

/// Smith normal form with unimodular certificates over `F_p[x^±]`.
pub fn smith_form(a: &Matrix) -> Result<SmithForm> {
    let p = check_pid(a.ring())?;
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = to_umat(a);
    let mut u = identity(rows);
    let mut v = identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut found = true;
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !m[i][j].is_zero())
                .min_by_key(|&(i, j)| (m[i][j].span(), i, j));
            let Some((pi, pj)) = pivot else {
                found = false;
                break;
            };
            m.swap(t, pi);
            u.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);
            let mut dirty = false;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].divrem(&m[t][t], p);
                row_axpy(&mut m, i, t, &q, p);
                row_axpy(&mut u, i, t, &q, p);
                dirty |= !r.is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].divrem(&m[t][t], p);
                col_axpy(&mut m, j, t, &q, p);
                col_axpy(&mut v, j, t, &q, p);
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !m[i][j].is_zero() && !m[i][j].divrem(&m[t][t], p).1.is_zero())
            });
            match bad {
                Some(i) => {
                    let one = UPoly::constant(p - 1);
                    row_axpy(&mut m, t, i, &one, p);
                    row_axpy(&mut u, t, i, &one, p);
                }
                None => break,
            }
        }
        if !found {
            break;
        }
        let (c, k) = (*m[t][t].c.last().expect("nonzero"), m[t][t].low);
        let unit_inv = UPoly::monomial(-k, zn::inv(c, p).expect("prime"));
        for e in m[t].iter_mut() {
            *e = e.mul(&unit_inv, p);
        }
        for e in u[t].iter_mut() {
            *e = e.mul(&unit_inv, p);
        }
        t += 1;
    }
    let ring = a.ring();
    let invariant_factors = (0..t).map(|i| m[i][i].to_laurent(ring)).collect();
    Ok(SmithForm {
        invariant_factors,
        u: from_umat(ring, &u, rows),
        v: from_umat(ring, &v, cols),
        diagonal: from_umat(ring, &m, cols),
    })
}

/// Column echelon form `A·V = H` over `F_p[x^±]` (or `F_p`), with `V` unimodular.
#[derive(Clone, Debug)]
pub(crate) struct ColumnEchelon {
    ring: Ring,
    p: u64,
    rows: usize,
    cols: usize,
    h: UMat,
    v: UMat,
    pivots: Vec<(usize, usize)>,
}

impl ColumnEchelon {
    pub fn new(a: &Matrix) -> Result<Self> {
        let p = check_pid(a.ring())?;
        let (rows, cols) = (a.rows(), a.cols());
        let mut h = to_umat(a);
        let mut v = identity(cols);
        let mut pivots = Vec::new();
        let mut c = 0;
        for i in 0..rows {
            if c == cols {
                break;
            }
            loop {
                let best = (c..cols).filter(|&j| !h[i][j].is_zero()).min_by_key(|&j| (h[i][j].span(), j));
                let Some(k) = best else { break };
                swap_cols(&mut h, c, k);
                swap_cols(&mut v, c, k);
                let mut clean = true;
                for j in c + 1..cols {
                    if h[i][j].is_zero() {
                        continue;
                    }
                    let (q, r) = h[i][j].divrem(&h[i][c], p);
                    col_axpy(&mut h, j, c, &q, p);
                    col_axpy(&mut v, j, c, &q, p);
                    clean &= r.is_zero();
                }
                if clean {
                    pivots.push((i, c));
                    c += 1;
                    break;
                }
            }
        }
        Ok(ColumnEchelon { ring: a.ring(), p, rows, cols, h, v, pivots })
    }

    /// Basis of the kernel (free, since the ring is a PID).
    pub fn kernel(&self) -> Vec<FreeVector> {
        (self.pivots.len()..self.cols)
            .map(|j| FreeVector::new(self.ring, self.v.iter().map(|row| row[j].to_laurent(self.ring)).collect()))
            .collect()
    }

    /// Some `y` with `A y = b`, if one exists.
    pub fn solve(&self, b: &FreeVector) -> Option<FreeVector> {
        let p = self.p;
        let mut r: Vec<UPoly> = b.entries().iter().map(UPoly::from_laurent).collect();
        let mut z = vec![UPoly::zero(); self.cols];
        for &(i, k) in &self.pivots {
            if r[i].is_zero() {
                continue;
            }
            let (q, rem) = r[i].divrem(&self.h[i][k], p);
            if !rem.is_zero() {
                return None;
            }
            for (row, ri) in r.iter_mut().enumerate().take(self.rows) {
                if !self.h[row][k].is_zero() {
                    *ri = ri.sub(&q.mul(&self.h[row][k], p), p);
                }
            }
            z[k] = q;
        }
        if r.iter().any(|e| !e.is_zero()) {
            return None;
        }
        let y = (0..self.cols)
            .map(|i| {
                let mut acc = UPoly::zero();
                for (k, zk) in z.iter().enumerate() {
                    if !zk.is_zero() && !self.v[i][k].is_zero() {
                        acc = acc.add(&self.v[i][k].mul(zk, p), p);
                    }
                }
                acc.to_laurent(self.ring)
            })
            .collect();
        Some(FreeVector::new(self.ring, y))
    }
}

/// Smith form over `Z_{p^r}` of an integer relation matrix, tracking the row transform.
///
/// The cokernel of the `rows x cols` matrix is `⊕_k Z/p^{exps[k]}`, with coordinates
/// `(U x)_k mod p^{exps[k]}` and generators the columns of `U^{-1}`.
#[derive(Clone, Debug)]
pub(crate) struct LocalSmith {
    pub n: u64,
    pub p: u64,
    pub exps: Vec<u32>,
    pub u: Vec<Vec<u64>>,
    pub uinv: Vec<Vec<u64>>,
}

pub(crate) fn local_smith(mat: &[Vec<u64>], rows: usize, p: u64, r: u32) -> LocalSmith {
    let n = p.pow(r);
    let mut a: Vec<Vec<u64>> = mat.iter().map(|row| row.iter().map(|&x| x % n).collect()).collect();
    let cols = a.first().map_or(0, Vec::len);
    let mut u: Vec<Vec<u64>> = (0..rows).map(|i| (0..rows).map(|j| u64::from(i == j)).collect()).collect();
    let mut uinv = u.clone();
    let mut exps = vec![r; rows];
    let val = |x: u64| zn::valuation(x, p, r);
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = val(x);
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                        if v == 0 {
                            break 'search;
                        }
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in uinv.iter_mut() {
            row.swap(t, pi);
        }
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        let pv = p.pow(v);
        let w = a[t][t] / pv;
        let winv = zn::inv(w, n).expect("unit part");
        for x in a[t].iter_mut() {
            *x = zn::mul(*x, winv, n);
        }
        for x in u[t].iter_mut() {
            *x = zn::mul(*x, winv, n);
        }
        for row in uinv.iter_mut() {
            row[t] = zn::mul(row[t], w, n);
        }
        for i in t + 1..rows {
            if a[i][t] == 0 {
                continue;
            }
            let f = a[i][t] / pv;
            let (rt, ut) = (a[t].clone(), u[t].clone());
            for (x, y) in a[i].iter_mut().zip(&rt) {
                *x = zn::sub(*x, zn::mul(f, *y, n), n);
            }
            for (x, y) in u[i].iter_mut().zip(&ut) {
                *x = zn::sub(*x, zn::mul(f, *y, n), n);
            }
            for row in uinv.iter_mut() {
                row[t] = zn::add(row[t], zn::mul(f, row[i], n), n);
            }
        }
        for j in t + 1..cols {
            if a[t][j] == 0 {
                continue;
            }
            let f = a[t][j] / pv;
            for row in a.iter_mut() {
                let y = row[t];
                row[j] = zn::sub(row[j], zn::mul(f, y, n), n);
            }
        }
        exps[t] = v;
        t += 1;
    }
    LocalSmith { n, p, exps, u, uinv }
}

impl LocalSmith {
    pub fn coords(&self, x: &[u64]) -> Vec<u64> {
        self.u
            .iter()
            .zip(&self.exps)
            .map(|(row, &e)| {
                let s = row.iter().zip(x).fold(0u64, |acc, (&a, &b)| zn::add(acc, zn::mul(a, b % self.n, self.n), self.n));
                s % self.p.pow(e)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: u64) -> Ring {
        Ring::new(1, n).unwrap()
    }

    #[test]
    fn smith_of_boundary_gram() {
        let r = ring(2);
        let a = Matrix::from_rows(
            r,
            vec![
                vec![r.zero(), r.parse("1 + x^-1").unwrap()],
                vec![r.parse("1 + x").unwrap(), r.zero()],
            ],
        )
        .unwrap();
        let s = smith_form(&a).unwrap();
        assert!(s.verify(&a));
        let f = r.parse("1 + x").unwrap();
        assert_eq!(s.invariant_factors, vec![f.clone(), f]);
    }

    #[test]
    fn smith_divisibility_chain() {
        let r = ring(2);
        let a = Matrix::from_rows(
            r,
            vec![vec![r.parse("1 + x").unwrap(), r.zero()], vec![r.zero(), r.parse("x").unwrap()]],
        )
        .unwrap();
        let s = smith_form(&a).unwrap();
        assert!(s.verify(&a));
        assert_eq!(s.invariant_factors, vec![r.one(), r.parse("1 + x").unwrap()]);
    }

    #[test]
    fn echelon_kernel_and_solve() {
        let r = ring(3);
        let a = Matrix::from_rows(
            r,
            vec![vec![r.parse("1 + x").unwrap(), r.parse("x + x^2").unwrap(), r.one()]],
        )
        .unwrap();
        let e = ColumnEchelon::new(&a).unwrap();
        let ker = e.kernel();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            assert!(a.apply(k).is_zero());
        }
        let b = FreeVector::new(r, vec![r.parse("2*x^-3").unwrap()]);
        let y = e.solve(&b).unwrap();
        assert_eq!(a.apply(&y), b);
    }

    #[test]
    fn local_smith_z4() {
        // Z_4^2 / <(2, 0), (0, 1)> = Z_2
        let s = local_smith(&[vec![2, 0], vec![0, 1]], 2, 2, 2);
        let mut e = s.exps.clone();
        e.sort();
        assert_eq!(e, vec![0, 1]);
    }
}
