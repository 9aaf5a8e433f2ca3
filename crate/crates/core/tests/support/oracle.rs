//! Brute-force oracles for the radical, central idempotents and rational
//! factorization, shared by the core tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeSet;

use endosplit_core::algebra::constructions::*;
use endosplit_core::algebra::{central_idempotents, radical, StructureAlgebra, Subalgebra, Subspace};
use endosplit_core::groups::Group;
use endosplit_core::qpoly::{factor_rational, QPoly};
use endosplit_core::ratlin::{rat, QMatrix, QVector, Rat};
use num_integer::Roots;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn upper_triangular() -> StructureAlgebra {
    let m2 = matrix_algebra(2);
    let gens = vec![m2.basis_element(0), m2.basis_element(1), m2.basis_element(3)];
    Subalgebra::from_spanning(&m2, &gens, None).unwrap().induced().clone()
}

pub fn truncated(p: &[i64]) -> StructureAlgebra {
    number_field(&QPoly::from_i64(p)).unwrap()
}

/// Span of all products `x·y`, `x ∈ s`, `y ∈ t`.
pub fn product_span(a: &StructureAlgebra, s: &Subspace, t: &Subspace) -> Subspace {
    let mut v = Vec::new();
    for x in s.basis_vectors() {
        for y in t.basis_vectors() {
            v.push(a.mul(&x, &y).unwrap());
        }
    }
    Subspace::from_spanning(a.dim(), &v)
}

/// The two-sided ideal generated by `x` is nilpotent.
pub fn generates_nilpotent_ideal(a: &StructureAlgebra, x: &QVector) -> bool {
    let n = a.dim();
    let mut gens = vec![x.clone()];
    for i in 0..n {
        let b = a.basis_element(i);
        gens.push(a.mul(&b, x).unwrap());
        gens.push(a.mul(x, &b).unwrap());
        for j in 0..n {
            gens.push(a.mul(&a.mul(&b, x).unwrap(), &a.basis_element(j)).unwrap());
        }
    }
    let ideal = Subspace::from_spanning(n, &gens);
    let mut power = ideal.clone();
    for _ in 0..=n {
        if power.dim() == 0 {
            return true;
        }
        power = product_span(a, &power, &ideal);
    }
    power.dim() == 0
}

pub fn grid(n: usize, lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (lo..=hi).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// All central idempotents of `Q[G]` by search over class functions with
/// coefficients `k/|G|`, `|k| ≤ |G|`; every central idempotent is
/// self-adjoint so its coefficients are bounded by its value at 1 ≤ 1.
pub fn group_central_idempotents(g: &Group) -> BTreeSet<Vec<i64>> {
    let n = g.order();
    let d = n as i64;
    let classes = g.conjugacy_classes();
    let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| g.mul(i, j)).collect()).collect();
    let mut out = BTreeSet::new();
    let mut c = vec![-d; classes.len()];
    let mut e = vec![0i64; n];
    let mut sq = vec![0i64; n];
    loop {
        for (k, class) in classes.iter().enumerate() {
            for &x in class {
                e[x] = c[k];
            }
        }
        // (e/d)^2 = e/d  ⇔  e*e = d·e
        sq.iter_mut().for_each(|s| *s = 0);
        for i in (0..n).filter(|&i| e[i] != 0) {
            for j in 0..n {
                sq[table[i][j]] += e[i] * e[j];
            }
        }
        if sq.iter().zip(&e).all(|(s, x)| *s == d * x) {
            out.insert(e.clone());
        }
        // odometer step
        let mut k = 0;
        while k < c.len() && c[k] == d {
            c[k] = -d;
            k += 1;
        }
        if k == c.len() {
            return out;
        }
        c[k] += 1;
    }
}

pub fn subset_sums(es: &[QVector], scale: i64) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << es.len()) {
        let mut s = vec![Rat::zero(); es[0].len()];
        for (i, e) in es.iter().enumerate() {
            if mask & (1 << i) != 0 {
                for (a, b) in s.iter_mut().zip(e) {
                    *a += b;
                }
            }
        }
        let v: Vec<i64> = s
            .iter()
            .map(|c| {
                let x = c * rat(scale);
                assert!(x.is_integer());
                i64::try_from(x.to_integer()).unwrap()
            })
            .collect();
        out.insert(v);
    }
    out
}

pub fn binom(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn divisors(n: i64) -> Vec<i64> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).flat_map(|d| [d, -d]).collect()
}

pub fn to_q(c: &[i64]) -> QPoly {
    QPoly::from_i64(c)
}

/// Smallest-degree nontrivial integer factor of a primitive `p`, searching
/// every candidate within the coefficient bound for factors of `p`.
pub fn smallest_factor(p: &[i64]) -> Option<Vec<i64>> {
    let n = p.len() - 1;
    let norm2: i64 = p.iter().map(|c| c * c).sum();
    let bound = norm2.sqrt() + 1;
    let pq = to_q(p);
    for k in 1..=n / 2 {
        let lead = divisors(p[n]).into_iter().filter(|d| *d > 0).collect::<Vec<_>>();
        let consts = if p[0] == 0 { vec![0] } else { divisors(p[0]) };
        let ranges: Vec<i64> = (1..k).map(|i| binom(k, i) * bound).collect();
        let mut middle = vec![vec![]];
        for r in &ranges {
            middle = middle
                .into_iter()
                .flat_map(|v: Vec<i64>| {
                    (-r..=*r).map(move |c| {
                        let mut w = v.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
        }
        for &l in &lead {
            for &c0 in &consts {
                for mid in &middle {
                    let mut q = vec![c0];
                    q.extend(mid);
                    q.push(l);
                    if pq.rem(&to_q(&q)).is_zero() {
                        return Some(q);
                    }
                }
            }
        }
    }
    None
}

/// Factorization into monic irreducibles with multiplicities, by repeated
/// brute-force division.
pub fn brute_factor(p: &[i64]) -> Vec<(QPoly, usize)> {
    let mut rest = p.to_vec();
    let mut found: Vec<QPoly> = Vec::new();
    loop {
        while rest.len() > 1 && rest[0] == 0 {
            found.push(QPoly::t());
            rest.remove(0);
        }
        if rest.len() <= 1 {
            break;
        }
        let g = rest.iter().fold(0i64, |a, &b| num_integer::gcd(a, b));
        rest.iter_mut().for_each(|c| *c /= g);
        match smallest_factor(&rest) {
            None => {
                found.push(to_q(&rest).monic());
                break;
            }
            Some(q) => {
                found.push(to_q(&q).monic());
                let quot = to_q(&rest).div_exact(&to_q(&q)).unwrap();
                rest = quot
                    .coeffs()
                    .iter()
                    .map(|c| {
                        assert!(c.is_integer());
                        i64::try_from(c.to_integer()).unwrap()
                    })
                    .collect();
            }
        }
    }
    let mut out: Vec<(QPoly, usize)> = Vec::new();
    for f in found {
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k += 1,
            None => out.push((f, 1)),
        }
    }
    out
}

pub fn normalize(mut v: Vec<(QPoly, usize)>) -> Vec<(String, usize)> {
    let mut out: Vec<(String, usize)> = v.drain(..).map(|(f, k)| (format!("{f:?}"), k)).collect();
    out.sort();
    out
}

/// Algebras of dimension at most 6 with their radical dimensions.
pub fn radical_cases() -> Vec<(&'static str, StructureAlgebra, usize)> {
    let mut p = QMatrix::identity(4);
    p[(0, 2)] = rat(1);
    p[(3, 1)] = rat(-2);
    vec![
        ("Q", matrix_algebra(1), 0),
        ("Q[t]/t^2", truncated(&[0, 0, 1]), 1),
        ("Q[t]/t^3", truncated(&[0, 0, 0, 1]), 2),
        ("Q[t]/t^2(t-1)", truncated(&[0, 0, -1, 1]), 1),
        ("T2", upper_triangular(), 1),
        ("T2+Q", direct_sum(&[upper_triangular(), matrix_algebra(1)]), 1),
        ("T2+Q[t]/t^2", direct_sum(&[upper_triangular(), truncated(&[0, 0, 1])]), 2),
        ("dual x dual", tensor_product(&truncated(&[0, 0, 1]), &truncated(&[0, 0, 1])), 3),
        ("Mat2", matrix_algebra(2), 0),
        ("Mat2 conj", conjugate(&matrix_algebra(2), &p).unwrap(), 0),
        ("H(-1,-1)", quaternion_algebra(&rat(-1), &rat(-1)), 0),
        ("Q[C3]", group_algebra(&Group::cyclic(3)), 0),
        ("Q[S3]", group_algebra(&Group::symmetric3()), 0),
        ("Q[t]/(t^2+1)^2", truncated(&[1, 0, 2, 0, 1]), 2),
    ]
}

/// Radical membership agrees with the nilpotent-ideal test on the whole
/// `{-1,0,1}` grid, and the grid hits span the radical. Returns the number
/// of grid points examined.
pub fn check_radicals() -> Result<usize, String> {
    let mut count = 0;
    for (name, a, want) in radical_cases() {
        let r = radical(&a);
        if r.dim() != want {
            return Err(format!("{name}: radical dimension {} expected {want}", r.dim()));
        }
        let mut hits = Vec::new();
        for c in grid(a.dim(), -1, 1) {
            let x: QVector = c.iter().map(|&v| rat(v)).collect();
            let oracle = generates_nilpotent_ideal(&a, &x);
            if r.contains(&x) != oracle {
                return Err(format!("{name}: disagreement at {c:?}"));
            }
            if oracle {
                hits.push(x);
            }
            count += 1;
        }
        if Subspace::from_spanning(a.dim(), &hits).dim() != want {
            return Err(format!("{name}: nilpotent grid points do not span the radical"));
        }
    }
    Ok(count)
}

/// Central idempotents of every group algebra of order at most 6 are
/// exactly the subset sums of the primitive ones. Returns the number of
/// algebras checked.
pub fn check_group_idempotents() -> Result<usize, String> {
    let mut count = 0;
    for g in Group::all_small().into_iter().filter(|g| g.order() <= 6) {
        let a = group_algebra(&g);
        let prim = central_idempotents(&a).map_err(|e| e.to_string())?;
        let oracle = group_central_idempotents(&g);
        if oracle.len() != 1 << prim.len() || subset_sums(&prim, g.order() as i64) != oracle {
            return Err(format!("{}: central idempotents disagree", g.name()));
        }
        count += 1;
    }
    Ok(count)
}

pub fn idempotent_sum_cases() -> Vec<StructureAlgebra> {
    // coordinates of every central idempotent here lie in {-1, 0, 1}
    vec![
        direct_sum(&[matrix_algebra(2), matrix_algebra(1)]),
        direct_sum(&[matrix_algebra(1), matrix_algebra(1), matrix_algebra(1)]),
        direct_sum(&[truncated(&[1, 0, 1]), matrix_algebra(1)]),
        quaternion_algebra(&rat(-1), &rat(-3)),
        matrix_algebra(2),
        direct_sum(&[quaternion_algebra(&rat(2), &rat(5)), matrix_algebra(1), matrix_algebra(1)]),
    ]
}

pub fn check_sum_idempotents() -> Result<usize, String> {
    let cases = idempotent_sum_cases();
    for (k, a) in cases.iter().enumerate() {
        let prim = central_idempotents(a).map_err(|e| e.to_string())?;
        let mut oracle = BTreeSet::new();
        for c in grid(a.dim(), -1, 1) {
            let x: QVector = c.iter().map(|&v| rat(v)).collect();
            if a.mul(&x, &x).unwrap() != x {
                continue;
            }
            let central = (0..a.dim()).all(|i| {
                let b = a.basis_element(i);
                a.mul(&x, &b).unwrap() == a.mul(&b, &x).unwrap()
            });
            if central {
                oracle.insert(c);
            }
        }
        if subset_sums(&prim, 1) != oracle {
            return Err(format!("case {k}: central idempotents disagree"));
        }
    }
    Ok(cases.len())
}

pub fn test_polys() -> Vec<Vec<i64>> {
    let mut polys: Vec<Vec<i64>> = vec![
        vec![1, 0, 0, 0, 1],
        vec![-1, 0, 0, 0, 0, 0, 1],
        vec![-2, 0, -1, 0, 1],
        vec![4, 0, 0, 0, 1],
        vec![1, 1, 1, 1, 1, 1, 1],
        vec![0, 0, 1, 2, 1],
        vec![-6, 1, 1],
        vec![2, -3, 0, 0, 0, 0, 6],
        vec![1, 0, -10, 0, 1],
        vec![9, 0, 6, 0, 1],
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    while polys.len() < 60 {
        let deg = rng.gen_range(1..=6);
        let mut c: Vec<i64> = (0..=deg).map(|_| rng.gen_range(-3..=3)).collect();
        if c[deg] == 0 {
            c[deg] = 1;
        }
        polys.push(c);
    }
    polys
}

/// `factor_rational` agrees with the bounded search. Returns the number of
/// polynomials checked.
pub fn check_factorizations() -> Result<usize, String> {
    let polys = test_polys();
    for p in &polys {
        let ours = factor_rational(&to_q(p)).map_err(|e| e.to_string())?;
        if ours.expand() != to_q(p) {
            return Err(format!("{p:?}: factors do not multiply back"));
        }
        if normalize(ours.factors) != normalize(brute_factor(p)) {
            return Err(format!("{p:?}: factorization disagrees with the search"));
        }
    }
    Ok(polys.len())
}
