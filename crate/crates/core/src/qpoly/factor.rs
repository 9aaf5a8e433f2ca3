//! Factorization over the rationals: squarefree decomposition, modular
//! factorization at a small prime, quadratic Hensel lifting and subset
//! recombination (Zassenhaus).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, ModPoly};
use super::{squarefree_decomposition, QPoly};
use crate::error::{Error, Result};
use crate::ratlin::Rat;

/// `unit · Π factor^multiplicity`, factors monic, irreducible and distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(QPoly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> QPoly {
        self.factors
            .iter()
            .fold(QPoly::constant(self.unit.clone()), |acc, (f, k)| {
                &acc * &f.pow(*k)
            })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

/// Integer polynomial, coefficients ascending.
type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    ztrim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|x| {
                let r = x.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    let mut r = zmod(a, m);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(db);
    (ztrim(q), ztrim(r))
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.sign() == Sign::Minus) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    out
}

/// Exact division over `Z`, `None` when `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    let lc = &b[db];
    let mut r = a.to_vec();
    if r.len() <= db {
        return r.iter().all(Zero::is_zero).then(Vec::new);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rm) = r[k + db].div_rem(lc);
        if !rm.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.iter().all(Zero::is_zero).then(|| ztrim(q))
}

fn to_modp(a: &[BigInt], p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    modp::trim(
        a.iter()
            .map(|x| x.mod_floor(&pb).to_u64().expect("reduced"))
            .collect(),
    )
}

fn from_modp(a: &ModPoly) -> ZPoly {
    a.iter().map(|&x| BigInt::from(x)).collect()
}

fn is_small_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime `p ≥ 3` not dividing the leading coefficient for which
/// `f mod p` stays squarefree.
fn choose_prime(f: &[BigInt]) -> u64 {
    let lc = f.last().expect("nonzero");
    (3u64..)
        .filter(|&p| is_small_prime(p))
        .find(|&p| {
            if (lc % BigInt::from(p)).is_zero() {
                return false;
            }
            let fp = to_modp(f, p);
            let d = modp::derivative(&fp, p);
            !d.is_empty() && modp::gcd(&fp, &d, p).len() == 1
        })
        .expect("some prime works for a squarefree polynomial")
}

/// Seed derived from the coefficients, so the modular splitting is
/// reproducible for a given polynomial.
fn content_seed(f: &[BigInt]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for c in f {
        for b in c.to_signed_bytes_le() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
        h ^= 0xff;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// One quadratic Hensel step: given `f ≡ g·h (mod m)` with `h` monic and
/// `s·g + t·h ≡ 1 (mod m)`, returns the same data modulo `m²`.
fn hensel_step(
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
    m: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g1 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h1 = zmod(&zadd(h, &r), &m2);
    let b = zmod(
        &zsub(&zadd(&zmul(s, &g1), &zmul(t, &h1)), &[BigInt::one()]),
        &m2,
    );
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h1, &m2);
    let s1 = zmod(&zsub(s, &d), &m2);
    let t1 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g1)), &m2);
    (g1, h1, s1, t1)
}

/// Lifts `f ≡ lc(f)·Π factors (mod p)` to monic factors modulo
/// `p^(2^steps)`. `f` only needs to be known modulo that final power.
fn multifactor_lift(f: &[BigInt], factors: &[ModPoly], p: u64, steps: u32) -> Vec<ZPoly> {
    let pb = BigInt::from(p);
    let modulus = num_traits::pow(pb.clone(), 1usize << steps);
    let lc = f.last().expect("nonzero").mod_floor(&modulus);
    if factors.len() == 1 {
        let inv = lc.modinv(&modulus).expect("lc is a unit");
        return vec![zmod(&f.iter().map(|x| x * &inv).collect::<Vec<_>>(), &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let lc_p = (&lc % &pb).to_u64().expect("reduced");
    let g0 = modp::scale(
        &left
            .iter()
            .fold(vec![1u64], |acc, x| modp::mul(&acc, x, p)),
        lc_p,
        p,
    );
    let h0 = right
        .iter()
        .fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (
        from_modp(&g0),
        from_modp(&h0),
        from_modp(&s0),
        from_modp(&t0),
    );
    let mut m = pb;
    for _ in 0..steps {
        let fm = zmod(f, &(&m * &m));
        (g, h, s, t) = hensel_step(&fm, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multifactor_lift(&g, left, p, steps);
    out.extend(multifactor_lift(&h, right, p, steps));
    out
}

fn for_each_subset(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if visit(&idx) {
            return;
        }
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a primitive squarefree integer polynomial with
/// positive leading coefficient.
fn factor_squarefree_integer(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let p = choose_prime(f);
    let fp = modp::monic(&to_modp(f, p), p);
    let mut rng = ChaCha8Rng::seed_from_u64(content_seed(f));
    let modular = modp::factor_squarefree(&fp, p, &mut rng);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }

    // coefficient bound for any factor, times the leading coefficient
    let lc = f.last().expect("nonzero").abs();
    let max = f.iter().map(Signed::abs).max().expect("nonzero");
    let bound = (BigInt::one() << n) * BigInt::from(n + 1) * max * &lc * 2;
    let pb = BigInt::from(p);
    let mut steps = 0u32;
    let mut modulus = pb.clone();
    while modulus <= bound {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let mut lifted = multifactor_lift(f, &modular, p, steps);

    let mut result = Vec::new();
    let mut rest = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let a = rest.last().expect("nonzero").clone();
        let mut found: Option<(Vec<usize>, ZPoly, ZPoly)> = None;
        for_each_subset(lifted.len(), size, |subset| {
            let prod = subset
                .iter()
                .fold(vec![a.clone()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), &modulus));
            let candidate = primitive(&symmetric(&prod, &modulus));
            if let Some(q) = zdiv_exact(&rest, &candidate) {
                found = Some((subset.to_vec(), candidate, q));
                return true;
            }
            false
        });
        match found {
            Some((subset, g, q)) => {
                result.push(g);
                rest = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        result.push(primitive(&rest));
    }
    result
}

fn cmp_poly(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.degree()
        .cmp(&b.degree())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Complete factorization over `Q` into monic irreducibles.
pub fn factor_rational(p: &QPoly) -> Result<Factorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let unit = p.leading();
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(p)? {
        let f = primitive(&part.cleared_denominators());
        for g in factor_squarefree_integer(&f) {
            let q = QPoly::new(g.into_iter().map(Rat::from_integer).collect()).monic();
            factors.push((q, mult));
        }
    }
    factors.sort_by(|(a, i), (b, j)| cmp_poly(a, b).then(i.cmp(j)));
    Ok(Factorization { unit, factors })
}
