//! Small integer-lattice routines: unimodular completion, Hermite normal form,
//! coset representatives, and orders of subgroups of `Z_n^k`.

use crate::error::{Error, Result};
use crate::ring::zn;

pub type IntMatrix = Vec<Vec<i64>>;

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

pub fn identity(d: usize) -> IntMatrix {
    (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (r, k, c) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..r).map(|i| (0..c).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect()).collect()
}

pub fn mat_vec(a: &IntMatrix, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn determinant(a: &IntMatrix) -> i64 {
    let d = a.len();
    match d {
        0 => 1,
        1 => a[0][0],
        _ => (0..d)
            .map(|j| {
                let minor: IntMatrix =
                    a[1..].iter().map(|row| row.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * determinant(&minor)
            })
            .sum(),
    }
}

/// `adj(A)` with `A · adj(A) = det(A) · I`.
pub fn adjugate(a: &IntMatrix) -> IntMatrix {
    let d = a.len();
    if d == 1 {
        return vec![vec![1]];
    }
    let mut out = vec![vec![0; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: IntMatrix = a
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                .collect();
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            out[j][i] = sign * determinant(&minor);
        }
    }
    out
}

/// `v / gcd(v)`.
pub fn primitive(v: &[i64]) -> Result<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| ext_gcd(g, x).0);
    if g == 0 {
        return Err(Error::Invalid("zero normal vector".into()));
    }
    Ok(v.iter().map(|x| x / g).collect())
}

/// Unimodular `U` whose last row is the primitive vector `v`; `U = I` when `v = e_d`.
///
/// Returns `(U, U^{-1})`; the first `d-1` columns of `U^{-1}` span `v^⊥`.
pub fn complete_basis(v: &[i64]) -> Result<(IntMatrix, IntMatrix)> {
    let v = primitive(v)?;
    let d = v.len();
    if v.iter().enumerate().all(|(i, &x)| x == i64::from(i + 1 == d)) {
        return Ok((identity(d), identity(d)));
    }
    // Column operations W with v·W = e_1, tracked with their inverse.
    let mut row = v.clone();
    let mut w = identity(d);
    let mut winv = identity(d);
    for i in 1..d {
        let (a, b) = (row[0], row[i]);
        if b == 0 {
            continue;
        }
        let (g, s, t) = ext_gcd(a, b);
        let (ag, bg) = (a / g, b / g);
        // [c0, ci] <- [c0, ci] · [[s, -bg], [t, ag]]
        for r in 0..d {
            let (x, y) = (w[r][0], w[r][i]);
            w[r][0] = x * s + y * t;
            w[r][i] = -x * bg + y * ag;
        }
        // rows of the inverse: [[ag, bg], [-t, s]]
        let (r0, ri) = (winv[0].clone(), winv[i].clone());
        for c in 0..d {
            winv[0][c] = ag * r0[c] + bg * ri[c];
            winv[i][c] = -t * r0[c] + s * ri[c];
        }
        row[0] = g;
        row[i] = 0;
    }
    if row[0] < 0 {
        for r in w.iter_mut() {
            r[0] = -r[0];
        }
        for c in winv[0].iter_mut() {
            *c = -*c;
        }
    }
    let basis: IntMatrix = (0..d).map(|r| (1..d).chain([0]).map(|c| w[r][c]).collect()).collect();
    let u: IntMatrix = (1..d).chain([0]).map(|r| winv[r].clone()).collect();
    debug_assert_eq!(mat_mul(&u, &basis), identity(d));
    debug_assert_eq!(u[d - 1], v);
    Ok((u, basis))
}

/// Lower-triangular column Hermite form of a nonsingular `A`: same column lattice,
/// positive diagonal, entries left of the diagonal reduced into `[0, h_ii)`.
pub fn hermite_columns(a: &IntMatrix) -> Result<IntMatrix> {
    let d = a.len();
    if determinant(a) == 0 {
        return Err(Error::Invalid("singular lattice matrix".into()));
    }
    let mut h = a.clone();
    for i in 0..d {
        for j in (i + 1)..d {
            let (x, y) = (h[i][i], h[i][j]);
            if y == 0 {
                continue;
            }
            let (g, s, t) = ext_gcd(x, y);
            let (xg, yg) = (x / g, y / g);
            for r in 0..d {
                let (p, q) = (h[r][i], h[r][j]);
                h[r][i] = p * s + q * t;
                h[r][j] = -p * yg + q * xg;
            }
        }
        if h[i][i] < 0 {
            for r in h.iter_mut() {
                r[i] = -r[i];
            }
        }
    }
    for i in 0..d {
        for j in 0..i {
            let q = h[i][j].div_euclid(h[i][i]);
            if q != 0 {
                for r in 0..d {
                    h[r][j] -= q * h[r][i];
                }
            }
        }
    }
    Ok(h)
}

/// Representatives of `Z^d / A Z^d`, the box `∏ [0, h_ii)` of the Hermite form.
pub fn coset_representatives(a: &IntMatrix) -> Result<Vec<Vec<i64>>> {
    let h = hermite_columns(a)?;
    let mut reps = vec![Vec::new()];
    for row in &h {
        let bound = row[reps[0].len()];
        reps = reps
            .into_iter()
            .flat_map(|p| {
                (0..bound).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    Ok(reps)
}

/// Splits `λ = A μ + c` with `c` a coset representative.
pub fn reduce_to_coset(h: &IntMatrix, a_adj: &IntMatrix, det: i64, lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let d = lambda.len();
    let mut c = lambda.to_vec();
    for i in 0..d {
        let q = c[i].div_euclid(h[i][i]);
        if q != 0 {
            for (r, ci) in c.iter_mut().enumerate() {
                *ci -= q * h[r][i];
            }
        }
    }
    let diff: Vec<i64> = lambda.iter().zip(&c).map(|(x, y)| x - y).collect();
    let mu: Vec<i64> = mat_vec(a_adj, &diff).into_iter().map(|x| x / det).collect();
    (mu, c)
}

/// Order of the subgroup of `Z_n^k` spanned by `rows`, by Howell-style elimination.
pub fn span_order(rows: &[Vec<u64>], n: u64) -> u128 {
    let k = rows.first().map_or(0, Vec::len);
    let mut pool: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|&x| x % n).collect()).collect();
    let mut order: u128 = 1;
    for col in 0..k {
        let mut pivot: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(pool.len());
        for r in pool.into_iter() {
            if r[col] == 0 {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let (a, b) = (p[col] as i64, r[col] as i64);
                    let (g, s, t) = ext_gcd(a, b);
                    let (ag, bg) = ((a / g).rem_euclid(n as i64) as u64, (b / g).rem_euclid(n as i64) as u64);
                    let (s, t) = (s.rem_euclid(n as i64) as u64, t.rem_euclid(n as i64) as u64);
                    let combo = |x: u64, xc: &[u64], y: u64, yc: &[u64]| -> Vec<u64> {
                        xc.iter().zip(yc).map(|(&u, &v)| zn::add(zn::mul(x, u, n), zn::mul(y, v, n), n)).collect()
                    };
                    let newp = combo(s, &p, t, &r);
                    // ag·r - bg·p has a zero in this column
                    let elim = combo(ag, &r, zn::neg(bg, n), &p);
                    rest.push(elim);
                    pivot = Some(newp);
                }
            }
        }
        if let Some(p) = pivot {
            let g = zn::gcd(p[col], n);
            order *= (n / g) as u128;
            let ann = n / g;
            rest.push(p.iter().map(|&x| zn::mul(x, ann, n)).collect());
        }
        pool = rest.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn completion_has_v_as_last_row() {
        for v in [vec![1, 1, 1], vec![2, 4], vec![1, 0], vec![3, -5, 7], vec![0, 0, 1]] {
            let (u, b) = complete_basis(&v).unwrap();
            assert_eq!(determinant(&u).abs(), 1);
            assert_eq!(mat_mul(&u, &b), identity(v.len()));
            assert_eq!(u[v.len() - 1], primitive(&v).unwrap());
        }
        assert_eq!(complete_basis(&[0, 1]).unwrap().0, identity(2));
        assert!(complete_basis(&[0, 0]).is_err());
    }

    #[test]
    fn coset_count_is_determinant() {
        let a = vec![vec![2, 1], vec![0, 3]];
        let reps = coset_representatives(&a).unwrap();
        assert_eq!(reps.len(), 6);
        let h = hermite_columns(&a).unwrap();
        let adj = adjugate(&a);
        let det = determinant(&a);
        for lam in [[5i64, -7], [0, 0], [-3, 11]] {
            let (mu, c) = reduce_to_coset(&h, &adj, det, &lam);
            assert!(reps.contains(&c));
            let back: Vec<i64> = mat_vec(&a, &mu).iter().zip(&c).map(|(x, y)| x + y).collect();
            assert_eq!(back, lam.to_vec());
        }
    }

    fn brute_span(rows: &[Vec<u64>], n: u64) -> usize {
        let k = rows[0].len();
        let mut seen: HashSet<Vec<u64>> = HashSet::new();
        let mut frontier = vec![vec![0u64; k]];
        seen.insert(vec![0; k]);
        while let Some(x) = frontier.pop() {
            for r in rows {
                let y: Vec<u64> = x.iter().zip(r).map(|(a, b)| (a + b) % n).collect();
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn span_order_matches_enumeration() {
        let cases: Vec<(Vec<Vec<u64>>, u64)> = vec![
            (vec![vec![2, 1, 0], vec![0, 2, 2]], 4),
            (vec![vec![3, 2], vec![2, 0], vec![1, 1]], 6),
            (vec![vec![2, 2, 0, 1], vec![0, 0, 2, 2]], 4),
            (vec![vec![0, 0]], 9),
            (vec![vec![3, 6, 0], vec![0, 3, 3]], 9),
        ];
        for (rows, n) in cases {
            assert_eq!(span_order(&rows, n) as usize, brute_span(&rows, n), "{rows:?} mod {n}");
        }
    }
}
