//! Exact arithmetic in cyclotomic fields `Q(zeta_M)`.
//!
//! Elements are stored in canonical form: a vector of `phi(M)` rationals
//! giving the residue modulo the M-th cyclotomic polynomial in the power
//! basis `1, zeta, ..., zeta^{phi(M)-1}`. Canonicality makes structural
//! equality coincide with field equality, which is what the braid-relation
//! checks lean on.
//!
//! Numeric questions (sign decisions only) go through [`CycNum::embed`],
//! which returns a rigorous complex enclosure; nothing in the exact paths
//! ever touches floating point.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::{Error, Result};

/// Euler totient of `n`.
pub fn euler_phi(n: u32) -> u32 {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as u32
}

fn divisors(n: u32) -> Vec<u32> {
    let mut divs = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            divs.push(i);
            if i != n / i {
                divs.push(n / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    divs
}

/// Integer polynomials, dense little-endian. Only what cyclotomic
/// polynomial computation needs.
fn poly_mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// Exact division of integer polynomials (monic divisor).
fn poly_div_exact_int(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    if nd < dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (j, dj) in den.iter().enumerate() {
                let t = &c * dj;
                rem[k + j] -= t;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// The n-th cyclotomic polynomial, via recursive division of x^n - 1 by
/// Phi_d for the proper divisors d | n.
fn cyclotomic_poly(n: u32) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in divisors(n) {
        if d < n {
            den = poly_mul_int(&den, &cyclotomic_poly(d));
        }
    }
    poly_div_exact_int(&num, &den)
}

/// Per-modulus context: the cyclotomic polynomial and reductions of the
/// powers of zeta needed by multiplication, Galois maps and lifting.
pub struct CycCtx {
    pub modulus: u32,
    pub degree: usize,
    /// Phi_M, monic, integer coefficients, little-endian.
    phi_poly: Vec<BigInt>,
    /// x^k mod Phi_M for 0 <= k <= max(M-1, 2*degree-2), each of length `degree`.
    pow_table: Vec<Vec<BigRational>>,
}

impl CycCtx {
    fn new(modulus: u32) -> Self {
        assert!(modulus >= 1);
        let degree = euler_phi(modulus) as usize;
        let phi_poly = cyclotomic_poly(modulus);
        debug_assert_eq!(phi_poly.len(), degree + 1);
        let max_pow = std::cmp::max(modulus as usize - 1, 2 * degree.max(1) - 2);
        let mut pow_table: Vec<Vec<BigRational>> = Vec::with_capacity(max_pow + 1);
        let mut cur = vec![BigRational::zero(); degree];
        cur[0] = BigRational::one();
        pow_table.push(cur.clone());
        for _ in 1..=max_pow {
            // multiply by x, then reduce the single overflowing term
            let top = cur[degree - 1].clone();
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1].clone();
            }
            cur[0] = BigRational::zero();
            if !top.is_zero() {
                // x^degree = -(phi_poly[0] + ... + phi_poly[degree-1] x^{degree-1})
                for i in 0..degree {
                    let c = BigRational::from(phi_poly[i].clone());
                    cur[i] -= &top * c;
                }
            }
            pow_table.push(cur.clone());
        }
        CycCtx {
            modulus,
            degree,
            phi_poly,
            pow_table,
        }
    }

    fn reduce_pow(&self, k: usize) -> &[BigRational] {
        &self.pow_table[k]
    }
}

static CTX_CACHE: Lazy<Mutex<HashMap<u32, Arc<CycCtx>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

thread_local! {
    static CTX_LAST: std::cell::RefCell<Option<(u32, Arc<CycCtx>)>> =
        const { std::cell::RefCell::new(None) };
}

/// Fetch (and cache) the context for modulus `m`.
pub fn ctx(m: u32) -> Arc<CycCtx> {
    let hit = CTX_LAST.with(|c| {
        c.borrow()
            .as_ref()
            .and_then(|(k, v)| (*k == m).then(|| v.clone()))
    });
    if let Some(c) = hit {
        return c;
    }
    let mut cache = CTX_CACHE.lock().unwrap();
    let c = cache
        .entry(m)
        .or_insert_with(|| Arc::new(CycCtx::new(m)))
        .clone();
    drop(cache);
    CTX_LAST.with(|slot| *slot.borrow_mut() = Some((m, c.clone())));
    c
}

/// An exact element of `Q(zeta_M)` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    modulus: u32,
    coeffs: Vec<BigRational>,
}

impl CycNum {
    pub fn zero(m: u32) -> Self {
        let d = euler_phi(m) as usize;
        CycNum {
            modulus: m,
            coeffs: vec![BigRational::zero(); d],
        }
    }

    pub fn one(m: u32) -> Self {
        Self::from_rational(m, BigRational::one())
    }

    pub fn from_rational(m: u32, r: BigRational) -> Self {
        let mut v = Self::zero(m);
        v.coeffs[0] = r;
        v
    }

    pub fn from_integer(m: u32, n: i64) -> Self {
        Self::from_rational(m, BigRational::from(BigInt::from(n)))
    }

    /// `zeta_M^k` (k taken mod M, negatives allowed).
    pub fn root_of_unity(m: u32, k: i64) -> Self {
        let c = ctx(m);
        let k = k.rem_euclid(m as i64) as usize;
        CycNum {
            modulus: m,
            coeffs: c.reduce_pow(k).to_vec(),
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// If the element is `s * zeta_M^k` for a sign `s`, return `(s, k)`.
    pub fn as_signed_root(&self) -> Option<(i8, u32)> {
        let c = ctx(self.modulus);
        for k in 0..self.modulus {
            let pow = c.reduce_pow(k as usize);
            if self.coeffs == pow {
                return Some((1, k));
            }
            if self
                .coeffs
                .iter()
                .zip(pow.iter())
                .all(|(a, b)| (a.clone() + b).is_zero())
            {
                return Some((-1, k));
            }
        }
        None
    }

    fn check_same(&self, other: &Self) -> Result<(Self, Self)> {
        if self.modulus == other.modulus {
            return Ok((self.clone(), other.clone()));
        }
        if other.modulus % self.modulus == 0 {
            return Ok((self.lift(other.modulus)?, other.clone()));
        }
        if self.modulus % other.modulus == 0 {
            return Ok((self.clone(), other.lift(self.modulus)?));
        }
        Err(Error::IncompatibleModuli(self.modulus, other.modulus))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.check_same(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        Ok(a)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.check_same(other)?;
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        Ok(a)
    }

    pub fn neg(&self) -> Self {
        CycNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.check_same(other)?;
        let c = ctx(a.modulus);
        let d = c.degree;
        let mut conv = vec![BigRational::zero(); 2 * d - 1];
        for (i, ai) in a.coeffs.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coeffs.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                conv[i + j] += ai * bj;
            }
        }
        let mut out = vec![BigRational::zero(); d];
        for (k, ck) in conv.into_iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            if k < d {
                out[k] += ck;
            } else {
                for (i, ri) in c.reduce_pow(k).iter().enumerate() {
                    if !ri.is_zero() {
                        out[i] += &ck * ri;
                    }
                }
            }
        }
        Ok(CycNum {
            modulus: a.modulus,
            coeffs: out,
        })
    }

    /// Multiply by `zeta_M^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        self.mul(&Self::root_of_unity(self.modulus, k)).unwrap()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        CycNum {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero(self.modulus));
        }
        let c = ctx(self.modulus);
        let phi: Vec<BigRational> = c
            .phi_poly
            .iter()
            .map(|z| BigRational::from(z.clone()))
            .collect();
        // extended Euclid in Q[x]: s*a + t*Phi = gcd; Phi irreducible so gcd
        // is a nonzero constant.
        let (g, s) = poly_ext_gcd(&self.coeffs, &phi);
        debug_assert!(poly_deg(&g) == Some(0));
        let ginv = g[0].recip();
        let mut inv_poly: Vec<BigRational> = s.iter().map(|x| x * &ginv).collect();
        // reduce mod Phi (degree of s is < deg Phi already, but normalize length)
        inv_poly.resize(c.degree, BigRational::zero());
        Ok(CycNum {
            modulus: self.modulus,
            coeffs: inv_poly,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.check_same(other)?;
        a.mul(&b.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Result<Self> {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Galois action `zeta -> zeta^s`, requires `gcd(s, M) = 1`.
    pub fn galois(&self, s: i64) -> Result<Self> {
        let m = self.modulus;
        let sm = s.rem_euclid(m as i64) as u64;
        if (sm as u32).gcd(&m) != 1 {
            return Err(Error::NotCoprime(s, m));
        }
        let c = ctx(m);
        let mut out = vec![BigRational::zero(); c.degree];
        for (k, ck) in self.coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let target = ((k as u64 * sm) % m as u64) as usize;
            for (i, ri) in c.reduce_pow(target).iter().enumerate() {
                if !ri.is_zero() {
                    out[i] += ck * ri;
                }
            }
        }
        Ok(CycNum {
            modulus: m,
            coeffs: out,
        })
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self {
        if self.modulus <= 2 {
            return self.clone();
        }
        self.galois(-1).unwrap()
    }

    /// Re-express in `Q(zeta_{m2})` where `M | m2`.
    pub fn lift(&self, m2: u32) -> Result<Self> {
        if m2 % self.modulus != 0 {
            return Err(Error::NotDivisor(self.modulus, m2));
        }
        if m2 == self.modulus {
            return Ok(self.clone());
        }
        let step = (m2 / self.modulus) as usize;
        let c2 = ctx(m2);
        let mut out = vec![BigRational::zero(); c2.degree];
        for (k, ck) in self.coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (i, ri) in c2.reduce_pow(k * step).iter().enumerate() {
                if !ri.is_zero() {
                    out[i] += ck * ri;
                }
            }
        }
        Ok(CycNum {
            modulus: m2,
            coeffs: out,
        })
    }

    /// Rigorous complex enclosure of the image under `zeta_M -> exp(2 pi i / M)`,
    /// accurate to roughly `digits` decimal digits.
    pub fn embed(&self, digits: u32) -> ComplexBall {
        let eps = pow10_inv(digits + 5);
        let m = self.modulus as i64;
        let mut re = BigRational::zero();
        let mut im = BigRational::zero();
        let mut rad = BigRational::zero();
        for (k, ck) in self.coeffs.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let (c, s, e) = unit_root_enclosure(k as i64, m, &eps);
            re += ck * c;
            im += ck * s;
            rad += ck.abs() * e;
        }
        ComplexBall { re, im, rad }
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", c)?;
            } else if k == 1 {
                write!(f, "({})z", c)?;
            } else {
                write!(f, "({})z^{}", c, k)?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        write!(f, " [m={}]", self.modulus)
    }
}

fn poly_deg(p: &[BigRational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)` and `g = gcd(a, b)`.
fn poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0: Vec<BigRational> = b.to_vec();
    let mut r1: Vec<BigRational> = a.to_vec();
    let mut s0: Vec<BigRational> = vec![BigRational::zero()];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while poly_deg(&r1).is_some() {
        // r0 = q*r1 + r2
        let d1 = poly_deg(&r1).unwrap();
        let lead = r1[d1].clone();
        let mut q = vec![BigRational::zero(); poly_deg(&r0).map(|d| d.saturating_sub(d1)).unwrap_or(0) + 1];
        let mut rem = r0.clone();
        while let Some(d0) = poly_deg(&rem) {
            if d0 < d1 {
                break;
            }
            let c = &rem[d0] / &lead;
            q[d0 - d1] = c.clone();
            for j in 0..=d1 {
                let t = &c * &r1[j];
                rem[d0 - d1 + j] -= t;
            }
        }
        // s2 = s0 - q*s1
        let mut s2 = s0.clone();
        let qs = poly_mul_rat(&q, &s1);
        if s2.len() < qs.len() {
            s2.resize(qs.len(), BigRational::zero());
        }
        for (i, v) in qs.into_iter().enumerate() {
            s2[i] -= v;
        }
        r0 = r1;
        r1 = rem;
        s0 = s1;
        s1 = s2;
    }
    (r0, s0)
}

fn poly_mul_rat(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// A complex ball: center `re + i*im` with radius `rad`, all exact rationals.
#[derive(Clone, Debug)]
pub struct ComplexBall {
    pub re: BigRational,
    pub im: BigRational,
    pub rad: BigRational,
}

impl ComplexBall {
    /// True if every point of the ball has positive real part and the
    /// imaginary part cannot be distinguished from zero elsewhere; used for
    /// positivity decisions on provably-real values.
    pub fn is_positive_real(&self) -> bool {
        self.re > self.rad
    }

    pub fn contains_zero(&self) -> bool {
        let n2 = &self.re * &self.re + &self.im * &self.im;
        n2 <= &self.rad * &self.rad
    }

    /// Fixed-point decimal rendering of the center, `digits` places.
    pub fn to_decimal_string(&self, digits: u32) -> String {
        format!(
            "{} + {}i (+/- {})",
            decimal_of(&self.re, digits),
            decimal_of(&self.im, digits),
            decimal_of(&self.rad, digits)
        )
    }
}

fn decimal_of(x: &BigRational, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x * BigRational::from(scale.clone())).round();
    let v = scaled.to_integer();
    let neg = v.is_negative();
    let v = v.abs();
    let (int, frac) = v.div_rem(&scale);
    let f = format!("{:0>width$}", frac.to_string(), width = digits as usize);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, f)
}

fn pow10_inv(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u32).pow(digits))
}

/// Enclosure of pi via Machin's formula; error bounded by `eps`.
fn pi_enclosure(eps: &BigRational) -> (BigRational, BigRational) {
    // pi = 16 atan(1/5) - 4 atan(1/239); each series alternating, so the
    // truncation error is at most the first omitted term.
    let sub_eps = eps / BigRational::from(BigInt::from(64));
    let (a5, e5) = atan_inv(5, &sub_eps);
    let (a239, e239) = atan_inv(239, &sub_eps);
    let sixteen = BigRational::from(BigInt::from(16));
    let four = BigRational::from(BigInt::from(4));
    let val = &sixteen * &a5 - &four * &a239;
    let err = sixteen * e5 + four * e239;
    (val, err)
}

/// Alternating series for atan(1/x), with tail bound.
fn atan_inv(x: u64, eps: &BigRational) -> (BigRational, BigRational) {
    let x2 = BigRational::from(BigInt::from(x * x));
    let mut term = BigRational::new(BigInt::one(), BigInt::from(x));
    let mut sum = BigRational::zero();
    let mut k = 0u64;
    loop {
        let contrib = &term / BigRational::from(BigInt::from(2 * k + 1));
        if contrib < *eps {
            return (sum, contrib);
        }
        if k % 2 == 0 {
            sum += contrib;
        } else {
            sum -= contrib;
        }
        term = term / &x2;
        k += 1;
    }
}

/// (cos, sin, err) enclosure of exp(2 pi i k / m).
fn unit_root_enclosure(k: i64, m: i64, eps: &BigRational) -> (BigRational, BigRational, BigRational) {
    let k = k.rem_euclid(m);
    let (pi, pi_err) = pi_enclosure(eps);
    let two_k_over_m = BigRational::new(BigInt::from(2 * k), BigInt::from(m));
    let theta = &pi * &two_k_over_m;
    let theta_err = pi_err * &two_k_over_m;
    // shrink the rational before powering it in the series
    let (theta_r, round_err) = round_to(&theta, eps);
    let arg_err = theta_err + round_err;
    let (c, ce) = cos_series(&theta_r, eps);
    let (s, se) = sin_series(&theta_r, eps);
    // |cos'| <= 1 and |sin'| <= 1, so the argument error propagates linearly
    let err = ce.max(se) + arg_err;
    (c, s, err)
}

fn round_to(x: &BigRational, eps: &BigRational) -> (BigRational, BigRational) {
    let denom = eps.denom().clone();
    let scaled = (x * BigRational::from(denom.clone())).round();
    let r = BigRational::new(scaled.to_integer(), denom);
    let e = (x - &r).abs();
    (r, e)
}

fn cos_series(x: &BigRational, eps: &BigRational) -> (BigRational, BigRational) {
    // sum (-1)^j x^{2j} / (2j)!; |x| < 7 so terms eventually shrink fast.
    let x2 = x * x;
    let mut term = BigRational::one();
    let mut sum = BigRational::zero();
    let mut j = 0u64;
    loop {
        if j > 2 && term.abs() < *eps {
            return (sum, term.abs());
        }
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        j += 1;
        term = term * &x2
            / BigRational::from(BigInt::from((2 * j - 1) * (2 * j)));
        let (t, e) = round_to(&term, &(eps / BigRational::from(BigInt::from(1000))));
        // keep numerators small; fold rounding slack into the tail bound
        term = t + e;
    }
}

fn sin_series(x: &BigRational, eps: &BigRational) -> (BigRational, BigRational) {
    let x2 = x * x;
    let mut term = x.clone();
    let mut sum = BigRational::zero();
    let mut j = 0u64;
    loop {
        if j > 2 && term.abs() < *eps {
            return (sum, term.abs());
        }
        if j % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        j += 1;
        term = term * &x2
            / BigRational::from(BigInt::from((2 * j) * (2 * j + 1)));
        let (t, e) = round_to(&term, &(eps / BigRational::from(BigInt::from(1000))));
        term = t + e;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn cyclotomic_polys() {
        // Phi_1 = x - 1, Phi_4 = x^2 + 1, Phi_12 = x^4 - x^2 + 1
        assert_eq!(cyclotomic_poly(1), vec![BigInt::from(-1), BigInt::from(1)]);
        assert_eq!(
            cyclotomic_poly(4),
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)]
        );
        assert_eq!(
            cyclotomic_poly(12),
            vec![
                BigInt::from(1),
                BigInt::from(0),
                BigInt::from(-1),
                BigInt::from(0),
                BigInt::from(1)
            ]
        );
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = CycNum::root_of_unity(4, 1);
        let m1 = CycNum::from_integer(4, -1);
        assert_eq!(i.mul(&i).unwrap(), m1);
    }

    #[test]
    fn zeta3_plus_zeta3_sq_is_minus_one() {
        let z = CycNum::root_of_unity(3, 1);
        let z2 = CycNum::root_of_unity(3, 2);
        assert_eq!(z.add(&z2).unwrap(), CycNum::from_integer(3, -1));
    }

    #[test]
    fn derived_product_is_three() {
        // (1 + 2 zeta_3)(1 + 2 zeta_3^2) = 3, by direct expansion:
        // 1 + 2z + 2z^2 + 4z^3 = 1 + 2(z + z^2) + 4 = 5 - 2 = 3.
        let one = CycNum::one(3);
        let a = one.add(&CycNum::root_of_unity(3, 1).scale(&rat(2, 1))).unwrap();
        let b = one.add(&CycNum::root_of_unity(3, 2).scale(&rat(2, 1))).unwrap();
        assert_eq!(a.mul(&b).unwrap(), CycNum::from_integer(3, 3));
    }

    #[test]
    fn galois_conjugation() {
        let z = CycNum::root_of_unity(3, 1);
        assert_eq!(z.galois(-1).unwrap(), CycNum::root_of_unity(3, 2));
        let a = CycNum::one(3)
            .add(&CycNum::root_of_unity(3, 1).scale(&rat(2, 1)))
            .unwrap();
        assert_eq!(a.galois(1).unwrap(), a);
        // norm: conj(1+2z)(1+2z) = 3
        assert_eq!(
            a.conj().mul(&a).unwrap(),
            CycNum::from_integer(3, 3)
        );
        assert!(CycNum::root_of_unity(6, 1).galois(2).is_err());
    }

    #[test]
    fn galois_composes_multiplicatively() {
        let a = CycNum::root_of_unity(5, 1)
            .add(&CycNum::root_of_unity(5, 3).scale(&rat(7, 2)))
            .unwrap();
        let g2 = a.galois(2).unwrap().galois(3).unwrap();
        assert_eq!(g2, a.galois(6).unwrap());
    }

    #[test]
    fn lift_examples() {
        // -1 in Q(zeta_2) lifts to zeta_4^2
        let m1 = CycNum::root_of_unity(2, 1);
        assert_eq!(m1.lift(4).unwrap(), CycNum::root_of_unity(4, 2));
        // zeta_3 lifts to zeta_12^4
        let z3 = CycNum::root_of_unity(3, 1);
        assert_eq!(z3.lift(12).unwrap(), CycNum::root_of_unity(12, 4));
        // lift to the same modulus is the identity
        assert_eq!(z3.lift(3).unwrap(), z3);
        assert!(z3.lift(5).is_err());
    }

    #[test]
    fn mixed_modulus_arithmetic_lifts() {
        let z3 = CycNum::root_of_unity(3, 1);
        let z12 = CycNum::root_of_unity(12, 1);
        let p = z3.mul(&z12).unwrap();
        assert_eq!(p, CycNum::root_of_unity(12, 5));
        let z5 = CycNum::root_of_unity(5, 1);
        assert!(z3.mul(&z5).is_err());
    }

    #[test]
    fn division_and_inverse() {
        let a = CycNum::one(5)
            .add(&CycNum::root_of_unity(5, 1).scale(&rat(2, 3)))
            .unwrap();
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).unwrap().is_one());
        assert!(CycNum::zero(5).inv().is_err());
    }

    #[test]
    fn embed_zeta3() {
        let z = CycNum::root_of_unity(3, 1);
        let b = z.embed(30);
        assert!((b.re.clone() + rat(1, 2)).abs() < rat(1, 1_000_000_000));
        // sin(2pi/3) = 0.86602540...
        assert!((b.im.clone() - rat(866_025_403, 1_000_000_000)).abs() < rat(1, 1_000_000));
        assert!(b.rad < rat(1, 1_000_000_000_000));
    }

    #[test]
    fn embed_gauss_sum_value() {
        // 1 + 2 zeta_3 = i sqrt(3)
        let a = CycNum::one(3)
            .add(&CycNum::root_of_unity(3, 1).scale(&rat(2, 1)))
            .unwrap();
        let b = a.embed(30);
        assert!(b.re.abs() < rat(1, 1_000_000_000));
        assert!((b.im.clone() - rat(1_732_050_807, 1_000_000_000)).abs() < rat(1, 100_000_000));
        let z = CycNum::zero(7).embed(10);
        assert!(z.contains_zero());
    }

    #[test]
    fn embed_product_in_interval_product() {
        let a = CycNum::root_of_unity(12, 5)
            .scale(&rat(3, 7))
            .add(&CycNum::one(12))
            .unwrap();
        let b = CycNum::root_of_unity(12, 7).sub(&CycNum::from_integer(12, 2)).unwrap();
        let ab = a.mul(&b).unwrap();
        let ea = a.embed(25);
        let eb = b.embed(25);
        let eab = ab.embed(25);
        // product of centers must land inside the combined enclosure
        let pre = &ea.re * &eb.re - &ea.im * &eb.im;
        let pim = &ea.re * &eb.im + &ea.im * &eb.re;
        let slack = rat(1, 1_000_000_000);
        assert!((pre - eab.re).abs() < slack);
        assert!((pim - eab.im).abs() < slack);
    }

    #[test]
    fn signed_root_detection() {
        let x = CycNum::root_of_unity(5, 3);
        assert_eq!(x.as_signed_root(), Some((1, 3)));
        assert_eq!(x.neg().as_signed_root(), Some((-1, 3)));
        // zeta_12^7 = -zeta_12, and the smaller exponent wins the scan
        let z = CycNum::root_of_unity(12, 7);
        assert_eq!(z.as_signed_root(), Some((-1, 1)));
        let y = CycNum::from_integer(12, 2);
        assert_eq!(y.as_signed_root(), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms_hold(
            an in -6i64..6, bn in -6i64..6, cn in -6i64..6,
            ka in 0i64..5, kb in 0i64..5, kc in 0i64..5,
        ) {
            let m = 5;
            let a = CycNum::root_of_unity(m, ka).scale(&rat(an, 1)).add(&CycNum::one(m)).unwrap();
            let b = CycNum::root_of_unity(m, kb).scale(&rat(bn, 1)).add(&CycNum::root_of_unity(m, 2)).unwrap();
            let c = CycNum::root_of_unity(m, kc).scale(&rat(cn, 1)).add(&CycNum::from_integer(m, 2)).unwrap();
            // associativity
            prop_assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
            // distributivity
            prop_assert_eq!(
                a.mul(&b.add(&c).unwrap()).unwrap(),
                a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
            );
            // inverses
            if !a.is_zero() {
                prop_assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }

        #[test]
        fn galois_action_composes(s in prop::sample::select(vec![1i64, 2, 3, 4]), t in prop::sample::select(vec![1i64, 2, 3, 4])) {
            let a = CycNum::root_of_unity(5, 1)
                .add(&CycNum::root_of_unity(5, 2).scale(&rat(3, 4))).unwrap();
            let lhs = a.galois(s).unwrap().galois(t).unwrap();
            let rhs = a.galois((s * t).rem_euclid(5)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
