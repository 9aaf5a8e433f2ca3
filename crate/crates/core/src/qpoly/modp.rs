//! Dense polynomials over `Z/pZ` for small odd primes, with distinct-degree
//! and equal-degree (Cantor–Zassenhaus) factorization.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Coefficients ascending, reduced into `[0, p)`, no trailing zeros.
pub(crate) type ModPoly = Vec<u64>;

pub(crate) fn trim(mut a: ModPoly) -> ModPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn deg(a: &ModPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

pub(crate) fn sub(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub(crate) fn mul(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn monic(a: &ModPoly, p: u64) -> ModPoly {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale(a, inv_mod(lc, p), p),
    }
}

pub(crate) fn div_rem(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly) {
    let db = deg(b).expect("division by zero polynomial");
    let Some(da) = deg(a) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), a.clone());
    }
    let inv = inv_mod(b[db], p);
    let mut r = a.clone();
    let mut q = vec![0u64; da - db + 1];
    for k in (0..=da - db).rev() {
        let c = r[k + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * bj % p) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    div_rem(a, b, p).1
}

pub(crate) fn gcd(a: &ModPoly, b: &ModPoly, p: u64) -> ModPoly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    monic(&x, p)
}

/// Returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
pub(crate) fn ext_gcd(a: &ModPoly, b: &ModPoly, p: u64) -> (ModPoly, ModPoly, ModPoly) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (ModPoly, ModPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (ModPoly, ModPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().expect("not both zero"), p);
    (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
}

pub(crate) fn derivative(a: &ModPoly, p: u64) -> ModPoly {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| (i as u64 % p) * c % p)
            .collect(),
    )
}

fn powmod_poly(base: &ModPoly, mut e: u64, m: &ModPoly, p: u64) -> ModPoly {
    let mut result: ModPoly = vec![1];
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
        e >>= 1;
    }
    result
}

/// Distinct-degree factorization of a monic squarefree polynomial: pairs
/// `(product of all irreducible factors of degree d, d)`.
pub(crate) fn distinct_degree(f: &ModPoly, p: u64) -> Vec<(ModPoly, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: ModPoly = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&rest).is_some_and(|n| n >= 2 * (d + 1)) {
        d += 1;
        h = powmod_poly(&h, p, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if deg(&g) != Some(0) {
            out.push((g.clone(), d));
            rest = div_rem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
        }
    }
    if deg(&rest).is_some_and(|n| n > 0) {
        let n = deg(&rest).unwrap();
        out.push((rest, n));
    }
    out
}

/// Splits a monic product of irreducibles all of degree `d` (p odd).
pub(crate) fn equal_degree(f: &ModPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let n = deg(f).expect("nonzero");
    if n == d {
        return vec![f.clone()];
    }
    loop {
        let a: ModPoly = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a).is_none_or(|k| k == 0) {
            continue;
        }
        let g = gcd(&a, f, p);
        let split = if deg(&g) != Some(0) {
            g
        } else {
            // a^((p^d - 1)/2) = (a · a^p · … · a^(p^(d-1)))^((p-1)/2)
            let mut frob = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                frob = powmod_poly(&frob, p, f, p);
                norm = rem(&mul(&norm, &frob, p), f, p);
            }
            let b = powmod_poly(&norm, (p - 1) / 2, f, p);
            gcd(&sub(&b, &vec![1], p), f, p)
        };
        let k = deg(&split).unwrap_or(0);
        if k > 0 && k < n {
            let other = div_rem(f, &split, p).0;
            let mut out = equal_degree(&split, d, p, rng);
            out.extend(equal_degree(&other, d, p, rng));
            return out;
        }
    }
}

/// Full factorization of a monic squarefree polynomial into monic
/// irreducibles, sorted for reproducibility.
pub(crate) fn factor_squarefree(f: &ModPoly, p: u64, rng: &mut ChaCha8Rng) -> Vec<ModPoly> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn factors_mod_seven() {
        // (x+1)(x+2)(x^2+1) mod 7; x^2+1 is irreducible mod 7
        let p = 7;
        let f = mul(&mul(&vec![1, 1], &vec![2, 1], p), &vec![1, 0, 1], p);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let fs = factor_squarefree(&f, p, &mut rng);
        assert_eq!(fs, vec![vec![1, 1], vec![2, 1], vec![1, 0, 1]]);
    }

    #[test]
    fn ext_gcd_identity() {
        let p = 11;
        let a = vec![3, 0, 1];
        let b = vec![5, 1];
        let (g, s, t) = ext_gcd(&a, &b, p);
        assert_eq!(g, vec![1]);
        let lhs = trim(
            (0..4)
                .map(|i| {
                    let x = mul(&s, &a, p).get(i).copied().unwrap_or(0);
                    let y = mul(&t, &b, p).get(i).copied().unwrap_or(0);
                    (x + y) % p
                })
                .collect(),
        );
        assert_eq!(lhs, vec![1]);
    }
}
