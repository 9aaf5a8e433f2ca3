//! Univariate polynomials over the rationals.

mod factor;
mod modp;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{rat, Rat};

pub use factor::{factor_rational, Factorization};

/// Polynomial with rational coefficients in ascending degree order.
/// Trailing zero coefficients are never stored; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rat>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `t − a`
    pub fn linear_root(a: &Rat) -> Self {
        Self::new(vec![-a.clone(), Rat::one()])
    }

    pub fn monomial(c: Rat, degree: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &QPoly) -> (QPoly, QPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(n) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if n < dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let c = &rem[k + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &QPoly) -> QPoly {
        self.div_rem(d).1
    }

    /// Quotient when `d` divides `self` exactly.
    pub fn div_exact(&self, d: &QPoly) -> Option<QPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    pub fn divides(&self, other: &QPoly) -> bool {
        other.rem(self).is_zero()
    }

    /// Extended gcd: returns monic `g` and `s, t` with `s·a + t·b = g`.
    /// Requires not both zero.
    pub fn ext_gcd(a: &QPoly, b: &QPoly) -> (QPoly, QPoly, QPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        let lc = r0.leading();
        if lc.is_zero() {
            return (r0, s0, t0);
        }
        let inv = lc.recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Monic lcm; zero if either input is zero.
    pub fn lcm(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let g = poly_gcd(self, other).expect("nonzero inputs");
        (self * &other.div_exact(&g).expect("gcd divides")).monic()
    }

    /// `self(q)`
    pub fn compose(&self, q: &QPoly) -> QPoly {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * q) + &Self::constant(c.clone()))
    }

    /// `self(q) mod m`
    pub fn compose_mod(&self, q: &QPoly, m: &QPoly) -> QPoly {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            (&(&acc * q) + &Self::constant(c.clone())).rem(m)
        })
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients of `self` scaled by the lcm of its denominators.
    pub fn cleared_denominators(&self) -> Vec<BigInt> {
        let l = crate::ratlin::denominator_lcm(&self.coeffs);
        self.coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect()
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, o: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, o: &QPoly) -> QPoly {
        if self.is_zero() || o.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        QPoly::new(out)
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = *c < Rat::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}t^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

/// Monic greatest common divisor.
pub fn poly_gcd(a: &QPoly, b: &QPoly) -> Result<QPoly> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(QPoly::ext_gcd(a, b).0)
}

/// `p / gcd(p, p')`, made monic.
pub fn squarefree_part(p: &QPoly) -> Result<QPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = p.derivative();
    if d.is_zero() {
        return Ok(QPoly::one());
    }
    let g = poly_gcd(p, &d)?;
    Ok(p.div_exact(&g).expect("gcd divides").monic())
}

/// Yun's squarefree decomposition of a nonzero polynomial: monic squarefree,
/// pairwise coprime `a_i` with `p = lc · Π a_i^i`. Entries with `a_i = 1`
/// are omitted.
pub fn squarefree_decomposition(p: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    if p.degree() == Some(0) {
        return Ok(out);
    }
    let f = p.monic();
    let fp = f.derivative();
    let a0 = poly_gcd(&f, &fp)?;
    let mut b = f.div_exact(&a0).expect("gcd divides");
    let mut c = fp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative();
    let mut i = 1;
    loop {
        let a = poly_gcd(&b, &d)?;
        if a.degree() != Some(0) {
            out.push((a.clone(), i));
        }
        b = b.div_exact(&a).expect("gcd divides");
        if b.degree() == Some(0) {
            break;
        }
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative();
        i += 1;
    }
    Ok(out)
}

/// Inverse of `a` in `Q[t]/(modulus)`, or `None` when `gcd(a, modulus) ≠ 1`.
pub fn modinv_in_quotient(a: &QPoly, modulus: &QPoly) -> Result<Option<QPoly>> {
    match modulus.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => {
            return Err(Error::Precondition(
                "modulus must have degree at least 1".into(),
            ))
        }
        Some(_) => {}
    }
    let a = a.rem(modulus);
    if a.is_zero() {
        return Ok(None);
    }
    let (g, s, _) = QPoly::ext_gcd(&a, modulus);
    if !g.is_one() {
        return Ok(None);
    }
    Ok(Some(s.rem(modulus)))
}
