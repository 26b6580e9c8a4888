//! Laurent polynomial rings `Z_n[x_1^{±1}, ..., x_d^{±1}]` with the involution
//! `x^λ ↦ x^{-λ}` and a CRT split of the coefficient ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::RingError;

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = 1 << 32;

/// Coefficient modulus with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self, RingError> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(RingError::InvalidModulus(n));
        }
        let mut factors = Vec::new();
        let mut m = n;
        let mut p = 2u64;
        while p * p <= m {
            if m % p == 0 {
                let mut r = 0;
                while m % p == 0 {
                    m /= p;
                    r += 1;
                }
                factors.push((p, r));
            }
            p += 1;
        }
        if m > 1 {
            factors.push((m, 1));
        }
        Ok(Modulus { n, factors })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Prime factors `(p_i, r_i)` in ascending order of `p_i`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn prime_power(&self) -> Option<(u64, u32)> {
        (self.factors.len() == 1).then(|| self.factors[0])
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, r)| r == 1)
    }

    /// The prime-power moduli `p_i^{r_i}`.
    pub fn components(&self) -> Vec<u64> {
        self.factors.iter().map(|&(p, r)| p.pow(r)).collect()
    }
}

/// Arithmetic helpers in `Z_n`, `n <= 2^32`.
pub mod zn {
    pub fn reduce(a: i64, n: u64) -> u64 {
        a.rem_euclid(n as i64) as u64
    }

    pub fn add(a: u64, b: u64, n: u64) -> u64 {
        let s = a + b;
        if s >= n {
            s - n
        } else {
            s
        }
    }

    pub fn sub(a: u64, b: u64, n: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + n - b
        }
    }

    pub fn neg(a: u64, n: u64) -> u64 {
        if a == 0 {
            0
        } else {
            n - a
        }
    }

    pub fn mul(a: u64, b: u64, n: u64) -> u64 {
        ((a as u128 * b as u128) % n as u128) as u64
    }

    pub fn gcd(a: u64, b: u64) -> u64 {
        let (mut a, mut b) = (a, b);
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    /// Inverse of a unit of `Z_n`.
    pub fn inv(a: u64, n: u64) -> Option<u64> {
        let (mut r0, mut r1) = (n as i128, (a % n) as i128);
        let (mut s0, mut s1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        (r0 == 1).then(|| s0.rem_euclid(n as i128) as u64)
    }

    pub fn pow(a: u64, mut e: u64, n: u64) -> u64 {
        let mut base = a % n;
        let mut acc = 1 % n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base, n);
            }
            base = mul(base, base, n);
            e >>= 1;
        }
        acc
    }

    /// `p`-adic valuation of `a` in `Z_{p^r}`; zero has valuation `r`.
    pub fn valuation(a: u64, p: u64, r: u32) -> u32 {
        if a == 0 {
            return r;
        }
        let mut v = 0;
        let mut a = a;
        while a % p == 0 && v < r {
            a /= p;
            v += 1;
        }
        v
    }
}

/// Exponent vector `λ ∈ Z^d` of a monomial `x^λ`.
///
/// Ordered by total degree, ties broken lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExponentVector(pub Vec<i32>);

impl ExponentVector {
    pub fn zero(d: usize) -> Self {
        ExponentVector(vec![0; d])
    }

    pub fn unit(d: usize, i: usize) -> Self {
        let mut v = vec![0; d];
        v[i] = 1;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn negated(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn dot(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(&a, &b)| a as i64 * b).sum()
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ring context: number of variables and modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Ring {
    pub nvars: usize,
    pub n: u64,
}

impl Ring {
    pub fn new(nvars: usize, n: u64) -> Result<Self, RingError> {
        Modulus::new(n)?;
        Ok(Ring { nvars, n })
    }

    pub fn modulus(&self) -> Modulus {
        Modulus::new(self.n).expect("ring modulus validated at construction")
    }

    pub fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero(*self)
    }

    pub fn one(&self) -> LaurentPoly {
        LaurentPoly::constant(*self, 1)
    }

    pub fn constant(&self, c: i64) -> LaurentPoly {
        LaurentPoly::constant(*self, zn::reduce(c, self.n))
    }

    /// The variable `x_i` (zero-based index).
    pub fn var(&self, i: usize) -> LaurentPoly {
        LaurentPoly::monomial(*self, ExponentVector::unit(self.nvars, i), 1)
    }

    pub fn mono(&self, exps: &[i32], c: i64) -> LaurentPoly {
        assert_eq!(exps.len(), self.nvars, "exponent length must match ring");
        LaurentPoly::monomial(*self, ExponentVector(exps.to_vec()), zn::reduce(c, self.n))
    }

    pub fn with_modulus(&self, n: u64) -> Ring {
        Ring { nvars: self.nvars, n }
    }

    pub fn with_nvars(&self, nvars: usize) -> Ring {
        Ring { nvars, n: self.n }
    }

    pub fn parse(&self, s: &str) -> Result<LaurentPoly, RingError> {
        LaurentPoly::parse(*self, s)
    }
}

/// Sparse Laurent polynomial with coefficients in `Z_n`.
///
/// Coefficients are least nonnegative residues; zero coefficients are never stored,
/// so the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    ring: Ring,
    terms: BTreeMap<ExponentVector, u64>,
}

impl LaurentPoly {
    pub fn zero(ring: Ring) -> Self {
        LaurentPoly { ring, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, c: u64) -> Self {
        Self::monomial(ring, ExponentVector::zero(ring.nvars), c)
    }

    pub fn monomial(ring: Ring, e: ExponentVector, c: u64) -> Self {
        let mut p = Self::zero(ring);
        let c = c % ring.n;
        if c != 0 {
            p.terms.insert(e, c);
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I>(ring: Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, i64)>,
    {
        let mut p = Self::zero(ring);
        for (e, c) in terms {
            p.add_term(e, zn::reduce(c, ring.n));
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars
    }

    pub fn modulus(&self) -> u64 {
        self.ring.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.constant_term() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, u64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, e: &ExponentVector) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn constant_term(&self) -> u64 {
        self.coeff(&ExponentVector::zero(self.ring.nvars))
    }

    /// Adds `c·x^e` in place.
    pub fn add_term(&mut self, e: ExponentVector, c: u64) {
        let n = self.ring.n;
        let c = c % n;
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = zn::add(*v, c, n);
                if *v == 0 {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.ring != other.ring {
            return Err(RingError::MismatchedRing {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, RingError> {
        self.try_add(&other.neg_ref())
    }

    /// Exact product with coefficients reduced mod `n`.
    pub fn try_mul(&self, other: &Self) -> Result<Self, RingError> {
        self.check_ring(other)?;
        let n = self.ring.n;
        let mut out = Self::zero(self.ring);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                out.add_term(ea.add(eb), zn::mul(ca, cb, n));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> Self {
        let n = self.ring.n;
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, &c)| (e.clone(), zn::neg(c, n))).collect(),
        }
    }

    pub fn scale(&self, c: u64) -> Self {
        let n = self.ring.n;
        let mut out = Self::zero(self.ring);
        for (e, &v) in &self.terms {
            out.add_term(e.clone(), zn::mul(v, c % n, n));
        }
        out
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &ExponentVector) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(k, &c)| (k.add(e), c)).collect(),
        }
    }

    /// The involution `x^λ ↦ x^{-λ}`.
    pub fn involution(&self) -> Self {
        LaurentPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(e, &c)| (e.negated(), c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.ring.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Reduces coefficients modulo a divisor `m` of `n`, giving a polynomial over `Z_m`.
    pub fn reduce_mod(&self, m: u64) -> Self {
        assert!(self.ring.n % m == 0, "modulus {m} must divide {}", self.ring.n);
        let ring = self.ring.with_modulus(m);
        let mut out = Self::zero(ring);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c % m);
        }
        out
    }

    /// Reinterprets the coefficients as residues modulo another modulus `m`
    /// (used for lifting from `Z_{n}` to `Z_m` with `n | m`, or for scaling maps).
    pub fn with_modulus_lifted(&self, m: u64) -> Self {
        let ring = self.ring.with_modulus(m);
        let mut out = Self::zero(ring);
        for (e, &c) in &self.terms {
            out.add_term(e.clone(), c % m);
        }
        out
    }

    /// Applies `λ ↦ f(λ)` to every exponent (the map must be injective).
    pub fn map_exponents<F>(&self, ring: Ring, f: F) -> Self
    where
        F: Fn(&ExponentVector) -> ExponentVector,
    {
        let mut out = Self::zero(ring);
        for (e, &c) in &self.terms {
            out.add_term(f(e), c);
        }
        out
    }

    /// Terms whose exponent satisfies `keep`.
    pub fn filter_terms<F>(&self, keep: F) -> Self
    where
        F: Fn(&ExponentVector) -> bool,
    {
        LaurentPoly {
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, &c)| (e.clone(), c))
                .collect(),
        }
    }

    /// Range `[min, max]` of the exponent of variable `i`, if nonzero.
    pub fn var_range(&self, i: usize) -> Option<(i32, i32)> {
        let mut it = self.terms.keys().map(|e| e.0[i]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), v| (lo.min(v), hi.max(v))))
    }

    /// Componentwise bounding box of the exponent support.
    pub fn support_box(&self) -> Result<(ExponentVector, ExponentVector), RingError> {
        support_box(std::iter::once(self))
    }

    /// Splits along the prime-power factors of the modulus.
    pub fn crt_split(&self) -> Vec<LaurentPoly> {
        self.ring
            .modulus()
            .components()
            .into_iter()
            .map(|q| self.reduce_mod(q))
            .collect()
    }

    /// Inverse of [`crt_split`](Self::crt_split).
    pub fn crt_combine(parts: &[LaurentPoly], ring: Ring) -> Result<Self, RingError> {
        let comps = ring.modulus().components();
        if comps.len() != parts.len() {
            return Err(RingError::CrtArity {
                expected: comps.len(),
                found: parts.len(),
            });
        }
        let n = ring.n;
        let mut out = Self::zero(ring);
        for (part, &q) in parts.iter().zip(&comps) {
            if part.ring.n != q || part.ring.nvars != ring.nvars {
                return Err(RingError::MismatchedRing { left: part.ring, right: ring.with_modulus(q) });
            }
            // Idempotent e_q: e_q ≡ 1 mod q, e_q ≡ 0 mod n/q.
            let m = n / q;
            let inv = zn::inv(m % q, q).expect("coprime CRT factors");
            let idem = zn::mul(m, inv, n);
            for (e, &c) in &part.terms {
                out.add_term(e.clone(), zn::mul(c, idem, n));
            }
        }
        Ok(out)
    }

    /// Parses the text syntax `c*x1^e1*...*xd^ed + ...`.
    ///
    /// Variables are `x1..xd`; for `d <= 4` the aliases `x, y, z, w` are accepted.
    /// A bare term without coefficient has coefficient 1, and `-` between terms negates.
    pub fn parse(ring: Ring, s: &str) -> Result<Self, RingError> {
        Parser { ring, src: s, pos: 0 }.poly()
    }
}

/// Componentwise bounding box of the supports of several polynomials.
pub fn support_box<'a, I>(polys: I) -> Result<(ExponentVector, ExponentVector), RingError>
where
    I: IntoIterator<Item = &'a LaurentPoly>,
{
    let mut bounds: Option<(Vec<i32>, Vec<i32>)> = None;
    for p in polys {
        for e in p.terms.keys() {
            match &mut bounds {
                None => bounds = Some((e.0.clone(), e.0.clone())),
                Some((lo, hi)) => {
                    for (i, &v) in e.0.iter().enumerate() {
                        lo[i] = lo[i].min(v);
                        hi[i] = hi[i].max(v);
                    }
                }
            }
        }
    }
    bounds
        .map(|(lo, hi)| (ExponentVector(lo), ExponentVector(hi)))
        .ok_or(RingError::ZeroPolynomial)
}

struct Parser<'a> {
    ring: Ring,
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> RingError {
        RingError::Parse {
            input: self.src.to_string(),
            column: self.pos + 1,
            message: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn integer(&mut self) -> Result<i64, RingError> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text = &self.src[start..self.pos];
        text.parse::<i64>().map_err(|_| {
            self.pos = start;
            self.err("expected integer")
        })
    }

    fn exponent(&mut self) -> Result<i64, RingError> {
        self.skip_ws();
        if self.peek() == Some('(') {
            self.pos += 1;
            let v = self.integer()?;
            self.skip_ws();
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
            Ok(v)
        } else {
            self.integer()
        }
    }

    fn variable(&mut self) -> Result<usize, RingError> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let d = self.ring.nvars;
        if let Some(tail) = rest.strip_prefix('x') {
            let digits: String = tail.chars().take_while(|c| c.is_ascii_digit()).collect();
            if !digits.is_empty() {
                let i: usize = digits.parse().map_err(|_| self.err("bad variable index"))?;
                if i == 0 || i > d {
                    return Err(self.err("variable index out of range"));
                }
                self.pos += 1 + digits.len();
                return Ok(i - 1);
            }
        }
        let alias = ['x', 'y', 'z', 'w'];
        if let Some(c) = rest.chars().next() {
            if let Some(i) = alias.iter().position(|&a| a == c) {
                if d <= 4 && i < d {
                    self.pos += 1;
                    return Ok(i);
                }
            }
        }
        Err(self.err("expected variable"))
    }

    fn factor(&mut self, exps: &mut [i32], coeff: &mut i64) -> Result<(), RingError> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                *coeff = coeff.wrapping_mul(self.integer()?);
                Ok(())
            }
            Some(_) => {
                let i = self.variable()?;
                self.skip_ws();
                let e = if self.peek() == Some('^') {
                    self.pos += 1;
                    self.exponent()?
                } else {
                    1
                };
                exps[i] += i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
                Ok(())
            }
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn term(&mut self) -> Result<(ExponentVector, i64), RingError> {
        let mut exps = vec![0i32; self.ring.nvars];
        let mut coeff = 1i64;
        self.factor(&mut exps, &mut coeff)?;
        loop {
            self.skip_ws();
            if self.peek() == Some('*') {
                self.pos += 1;
                self.factor(&mut exps, &mut coeff)?;
            } else {
                break;
            }
        }
        Ok((ExponentVector(exps), coeff.rem_euclid(self.ring.n as i64)))
    }

    fn poly(&mut self) -> Result<LaurentPoly, RingError> {
        let mut out = LaurentPoly::zero(self.ring);
        self.skip_ws();
        let mut sign = 1i64;
        if self.peek() == Some('-') {
            sign = -1;
            self.pos += 1;
        }
        loop {
            let (e, c) = self.term()?;
            out.add_term(e, zn::reduce(sign * c as i64, self.ring.n));
            self.skip_ws();
            match self.peek() {
                Some('+') => {
                    sign = 1;
                    self.pos += 1;
                }
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                None => break,
                Some(_) => return Err(self.err("expected '+', '-' or end of input")),
            }
        }
        Ok(out)
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders in the parseable text syntax, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, &c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, &k) in e.0.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, k)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[Z_{}; {}]({})", self.ring.n, self.ring.nvars, self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("ring mismatch in addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r2() -> Ring {
        Ring::new(1, 2).unwrap()
    }

    #[test]
    fn modulus_factorization() {
        let m = Modulus::new(360).unwrap();
        assert_eq!(m.factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert!(Modulus::new(1).is_err());
        assert!(Modulus::new(7).unwrap().is_prime());
        assert_eq!(Modulus::new(9).unwrap().prime_power(), Some((3, 2)));
        assert_eq!(Modulus::new(6).unwrap().components(), vec![2, 3]);
    }

    #[test]
    fn square_in_characteristic_two() {
        let r = r2();
        let f = r.parse("1 + x1").unwrap();
        assert_eq!(&f * &f, r.parse("1 + x1^2").unwrap());
    }

    #[test]
    fn multiplicative_identity() {
        let r = Ring::new(2, 5).unwrap();
        let f = r.parse("3*x1^-2*x2 + 4 + x2^3").unwrap();
        assert_eq!(&f * &r.one(), f);
    }

    #[test]
    fn cross_terms_cancel() {
        let r = r2();
        let a = r.parse("1 + x1^-1").unwrap();
        let b = r.parse("1 + x1").unwrap();
        assert_eq!(&a * &b, r.parse("x1^-1 + x1").unwrap());
    }

    #[test]
    fn involution_example() {
        let r = Ring::new(3, 5).unwrap();
        let f = r.parse("x1 + 2*x2^-1*x3").unwrap();
        assert_eq!(f.involution(), r.parse("x1^-1 + 2*x2*x3^-1").unwrap());
        assert_eq!(r.constant(4).involution(), r.constant(4));
    }

    #[test]
    fn crt_split_example() {
        let r = Ring::new(1, 6).unwrap();
        let f = r.parse("3 + 4*x1").unwrap();
        let parts = f.crt_split();
        assert_eq!(parts[0], Ring::new(1, 2).unwrap().parse("1").unwrap());
        assert_eq!(parts[1], Ring::new(1, 3).unwrap().parse("x1").unwrap());
        assert_eq!(LaurentPoly::crt_combine(&parts, r).unwrap(), f);
        let z = r.zero().crt_split();
        assert!(z.iter().all(|p| p.is_zero()));
        let p7 = Ring::new(2, 7).unwrap().parse("3*x1 + x2^-1").unwrap();
        assert_eq!(p7.crt_split(), vec![p7.clone()]);
    }

    #[test]
    fn support_boxes() {
        let r = r2();
        let (lo, hi) = r.parse("x1^-1 + x1").unwrap().support_box().unwrap();
        assert_eq!((lo.0, hi.0), (vec![-1], vec![1]));
        let m = Ring::new(2, 3).unwrap().mono(&[2, -5], 1);
        let (lo, hi) = m.support_box().unwrap();
        assert_eq!((lo.0.clone(), hi.0.clone()), (vec![2, -5], vec![2, -5]));
        assert_eq!(r.zero().support_box(), Err(RingError::ZeroPolynomial));
    }

    #[test]
    fn parse_and_render_roundtrip() {
        let r = Ring::new(2, 4).unwrap();
        for s in ["0", "1 + 1*x1^-1*x2^-1", "3*x1*x2^2 - x2 + 2", "x^2*y^-1 + 2"] {
            let p = r.parse(s).unwrap();
            assert_eq!(r.parse(&p.to_string()).unwrap(), p, "{s}");
        }
        assert_eq!(r.parse("x1 - x1").unwrap(), r.zero());
        assert_eq!(r.parse("-1").unwrap(), r.constant(3));
        assert!(r.parse("x3").is_err());
        assert!(r.parse("1 +").is_err());
        assert!(r.parse("x1^(-2)").unwrap() == r.mono(&[-2, 0], 1));
    }

    #[test]
    fn mismatched_contexts_rejected() {
        let a = Ring::new(1, 2).unwrap().one();
        let b = Ring::new(1, 3).unwrap().one();
        assert!(matches!(a.try_mul(&b), Err(RingError::MismatchedRing { .. })));
    }

    #[test]
    fn zn_helpers() {
        assert_eq!(zn::inv(3, 8), Some(3));
        assert_eq!(zn::inv(2, 8), None);
        assert_eq!(zn::valuation(12, 2, 5), 2);
        assert_eq!(zn::valuation(0, 3, 2), 2);
        assert_eq!(zn::pow(3, 4, 7), 4);
    }
}
