//! Dense univariate Laurent polynomials over `Z_n`, used by the PID routines.

use crate::ring::{zn, ExponentVector, LaurentPoly, Ring};

/// `x^low · (c[0] + c[1] x + ...)`, trimmed so that `c` is empty or has nonzero ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct UPoly {
    pub low: i32,
    pub c: Vec<u64>,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { low: 0, c: Vec::new() }
    }

    pub fn constant(v: u64) -> Self {
        UPoly { low: 0, c: vec![v] }.trimmed()
    }

    pub fn monomial(e: i32, v: u64) -> Self {
        UPoly { low: e, c: vec![v] }.trimmed()
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Width of the support; the Euclidean degree of `F_p[x^±]`.
    pub fn span(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn high(&self) -> i32 {
        self.low + self.span() as i32
    }

    fn trimmed(mut self) -> Self {
        while self.c.last() == Some(&0) {
            self.c.pop();
        }
        let lead_zeros = self.c.iter().take_while(|&&v| v == 0).count();
        if lead_zeros > 0 {
            self.c.drain(..lead_zeros);
            self.low += lead_zeros as i32;
        }
        if self.c.is_empty() {
            self.low = 0;
        }
        self
    }

    pub fn from_laurent(f: &LaurentPoly) -> Self {
        assert!(f.nvars() <= 1, "UPoly needs at most one variable");
        if f.is_zero() {
            return Self::zero();
        }
        let exp = |e: &ExponentVector| if e.0.is_empty() { 0 } else { e.0[0] };
        let lo = f.terms().map(|(e, _)| exp(e)).min().expect("nonzero");
        let hi = f.terms().map(|(e, _)| exp(e)).max().expect("nonzero");
        let mut c = vec![0u64; (hi - lo + 1) as usize];
        for (e, v) in f.terms() {
            c[(exp(e) - lo) as usize] = v;
        }
        UPoly { low: lo, c }.trimmed()
    }

    pub fn to_laurent(&self, ring: Ring) -> LaurentPoly {
        LaurentPoly::from_terms(
            ring,
            self.c.iter().enumerate().filter(|(_, &v)| v != 0).map(|(k, &v)| {
                let e = self.low + k as i32;
                let ev = if ring.nvars == 0 {
                    ExponentVector(Vec::new())
                } else {
                    ExponentVector(vec![e])
                };
                (ev, v as i64)
            }),
        )
    }

    pub fn add(&self, o: &Self, n: u64) -> Self {
        self.combine(o, n, false)
    }

    pub fn sub(&self, o: &Self, n: u64) -> Self {
        self.combine(o, n, true)
    }

    fn combine(&self, o: &Self, n: u64, negate: bool) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { o.neg(n) } else { o.clone() };
        }
        let lo = self.low.min(o.low);
        let hi = self.high().max(o.high());
        let mut c = vec![0u64; (hi - lo + 1) as usize];
        for (k, &v) in self.c.iter().enumerate() {
            c[(self.low - lo) as usize + k] = v;
        }
        for (k, &v) in o.c.iter().enumerate() {
            let slot = &mut c[(o.low - lo) as usize + k];
            *slot = if negate { zn::sub(*slot, v, n) } else { zn::add(*slot, v, n) };
        }
        UPoly { low: lo, c }.trimmed()
    }

    pub fn neg(&self, n: u64) -> Self {
        UPoly { low: self.low, c: self.c.iter().map(|&v| zn::neg(v, n)).collect() }
    }

    pub fn mul(&self, o: &Self, n: u64) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = zn::add(c[i + j], zn::mul(a, b, n), n);
            }
        }
        UPoly { low: self.low + o.low, c }.trimmed()
    }

    pub fn divrem(&self, d: &Self, p: u64) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let dl = d.c.len();
        let inv = zn::inv(*d.c.last().expect("nonzero"), p).expect("prime modulus");
        let mut r = self.c.clone();
        if r.len() < dl {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let top = r[k + dl - 1];
            if top == 0 {
                continue;
            }
            let f = zn::mul(top, inv, p);
            q[k] = f;
            for (j, &dv) in d.c.iter().enumerate() {
                r[k + j] = zn::sub(r[k + j], zn::mul(f, dv, p), p);
            }
        }
        let quo = UPoly { low: self.low - d.low, c: q }.trimmed();
        let rem = UPoly { low: self.low, c: r }.trimmed();
        (quo, rem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let p = 5;
        let a = UPoly { low: -2, c: vec![1, 2, 3, 4, 1] };
        let d = UPoly { low: 1, c: vec![2, 0, 1] };
        let (q, r) = a.divrem(&d, p);
        assert!(r.span() < d.span() || r.is_zero());
        assert_eq!(q.mul(&d, p).add(&r, p), a);
    }
}
