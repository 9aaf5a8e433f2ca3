//! Generated algebra documents: matrix algebras, group algebras, quaternion
//! algebras, number fields, direct sums, and seeded changes of basis.
//!
//! Kinds are written `matrix:N`, `group:NAME`, `quaternion:A,B`,
//! `field:c0,c1,...` (coefficients ascending) and `sum:K1+K2+...`.

use endosplit_core::algebra::constructions::*;
use endosplit_core::algebra::StructureAlgebra;
use endosplit_core::groups::Group;
use endosplit_core::qpoly::QPoly;
use endosplit_core::ratlin::{self, rat, QMatrix, QVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::doc::{fracs, parse_frac, AlgebraDocument, NamedElement};
use crate::CliError;

/// An algebra with names for some of its elements.
pub struct Generated {
    pub name: String,
    pub algebra: StructureAlgebra,
    pub elements: Vec<(String, QVector)>,
}

fn bad(kind: &str, why: &str) -> CliError {
    CliError::Input(format!("bad kind \"{kind}\": {why}"))
}

/// Cycle notation on points `1..`, `()` for the identity.
fn cycle_name(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push((x + 1).to_string());
            x = p[x];
        }
        out.push_str(&format!("({})", cycle.join(" ")));
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub fn build(kind: &str) -> Result<Generated, CliError> {
    let (head, arg) = kind.split_once(':').unwrap_or((kind, ""));
    match head {
        "matrix" => {
            let n: usize = arg.parse().map_err(|_| bad(kind, "expected matrix:N"))?;
            if n == 0 {
                return Err(bad(kind, "size must be positive"));
            }
            let a = matrix_algebra(n);
            let elements = (0..n * n)
                .map(|x| (format!("E{}{}", x / n + 1, x % n + 1), a.basis_element(x)))
                .collect();
            Ok(Generated {
                name: format!("Mat{n}(Q)"),
                algebra: a,
                elements,
            })
        }
        "group" => {
            let g = Group::all_small()
                .into_iter()
                .find(|g| g.name() == arg)
                .ok_or_else(|| bad(kind, "unknown group; orders up to 12 are available"))?;
            let a = group_algebra(&g);
            let elements = g
                .elements()
                .iter()
                .enumerate()
                .map(|(i, p)| (cycle_name(p), a.basis_element(i)))
                .collect();
            Ok(Generated {
                name: format!("Q[{}]", g.name()),
                algebra: a,
                elements,
            })
        }
        "quaternion" => {
            let (x, y) = arg.split_once(',').ok_or_else(|| bad(kind, "expected quaternion:A,B"))?;
            let (x, y) = (
                parse_frac(x).map_err(|e| bad(kind, &e))?.0,
                parse_frac(y).map_err(|e| bad(kind, &e))?.0,
            );
            if x == rat(0) || y == rat(0) {
                return Err(bad(kind, "parameters must be nonzero"));
            }
            let a = quaternion_algebra(&x, &y);
            let elements = ["1", "i", "j", "k"]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.to_string(), a.basis_element(i)))
                .collect();
            Ok(Generated {
                name: format!("({x},{y})_Q"),
                algebra: a,
                elements,
            })
        }
        "field" => {
            let coeffs = arg
                .split(',')
                .map(|c| parse_frac(c).map(|f| f.0))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| bad(kind, &e))?;
            let p = QPoly::new(coeffs);
            let a = number_field(&p).map_err(|e| bad(kind, &e.to_string()))?;
            let elements = (0..a.dim())
                .map(|i| (if i == 0 { "1".into() } else { format!("t{i}") }, a.basis_element(i)))
                .collect();
            Ok(Generated {
                name: format!("Q[t]/({p})"),
                algebra: a,
                elements,
            })
        }
        "sum" => {
            let parts = arg
                .split('+')
                .map(build)
                .collect::<Result<Vec<_>, _>>()?;
            if parts.is_empty() {
                return Err(bad(kind, "empty sum"));
            }
            let algebras: Vec<StructureAlgebra> = parts.iter().map(|p| p.algebra.clone()).collect();
            let a = direct_sum(&algebras);
            let mut elements = Vec::new();
            let mut off = 0;
            for (k, p) in parts.iter().enumerate() {
                for (name, v) in &p.elements {
                    let mut w = ratlin::zero_vec(a.dim());
                    w[off..off + v.len()].clone_from_slice(v);
                    elements.push((format!("{}.{name}", k + 1), w));
                }
                let mut e = ratlin::zero_vec(a.dim());
                e[off..off + p.algebra.dim()].clone_from_slice(p.algebra.unit());
                elements.push((format!("e{}", k + 1), e));
                off += p.algebra.dim();
            }
            let names: Vec<&str> = parts.iter().map(|p| p.name.as_str()).collect();
            Ok(Generated {
                name: names.join(" + "),
                algebra: a,
                elements,
            })
        }
        _ => Err(bad(kind, "unknown kind; use matrix, group, quaternion, field or sum")),
    }
}

/// `L·U` with unit diagonals and off-diagonal entries in `-2..=2`, so the
/// determinant is 1.
pub fn random_unimodular(n: usize, rng: &mut ChaCha8Rng) -> QMatrix {
    let mut l = QMatrix::identity(n);
    let mut u = QMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = rat(rng.gen_range(-2..=2));
            u[(j, i)] = rat(rng.gen_range(-2..=2));
        }
    }
    l.mul(&u).expect("square")
}

pub fn random_element(n: usize, rng: &mut ChaCha8Rng) -> QVector {
    (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect()
}

/// Rewrites `g` in a random basis; named elements keep their meaning.
pub fn conjugated(g: Generated, rng: &mut ChaCha8Rng) -> Generated {
    let n = g.algebra.dim();
    let p = random_unimodular(n, rng);
    let pinv = ratlin::inverse(&p)
        .expect("square")
        .expect("unimodular matrices are invertible");
    let algebra = conjugate(&g.algebra, &p).expect("invertible change of basis");
    let elements = g
        .elements
        .into_iter()
        .map(|(s, v)| (s, pinv.mul_vec(&v).expect("shape")))
        .collect();
    Generated {
        name: format!("{} (conjugated)", g.name),
        algebra,
        elements,
    }
}

/// The document for `kind`, optionally in a random basis, with `random`
/// extra elements `f0, f1, …` whose coordinates lie in `-3..=3`.
pub fn generate(kind: &str, conjugate: bool, random: usize, seed: u64) -> Result<AlgebraDocument, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = build(kind)?;
    if conjugate {
        g = conjugated(g, &mut rng);
    }
    let n = g.algebra.dim();
    let mut doc = AlgebraDocument::from_algebra(&g.algebra, Some(g.name));
    doc.elements = g
        .elements
        .into_iter()
        .map(|(name, v)| NamedElement { name, coords: fracs(&v) })
        .collect();
    for i in 0..random {
        doc.elements.push(NamedElement {
            name: format!("f{i}"),
            coords: fracs(&random_element(n, &mut rng)),
        });
    }
    if !doc.elements.iter().any(|e| e.name == "1") && n > 0 {
        let coords = doc.unit.clone();
        doc.elements.insert(0, NamedElement { name: "1".into(), coords });
    }
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds() {
        let m = build("matrix:2").unwrap();
        assert_eq!(m.algebra, matrix_algebra(2));
        assert_eq!(m.elements[1].0, "E12");
        let s3 = build("group:S3").unwrap();
        assert_eq!(s3.algebra.dim(), 6);
        assert!(s3.elements.iter().any(|(n, _)| n == "(1 2)"));
        let h = build("quaternion:-1,-1").unwrap();
        let (i, j) = (h.algebra.basis_element(1), h.algebra.basis_element(2));
        let a = &h.algebra;
        assert_eq!(a.mul(&i, &i).unwrap(), a.scalar(&rat(-1)));
        assert_eq!(a.mul(&j, &j).unwrap(), a.scalar(&rat(-1)));
        assert_eq!(a.mul(&i, &j).unwrap(), ratlin::vec_scale(&a.mul(&j, &i).unwrap(), &rat(-1)));
        let s = build("sum:matrix:2+quaternion:-1,-3+group:C2").unwrap();
        assert_eq!(s.algebra.dim(), 10);
        assert_eq!(build("field:1,0,1").unwrap().algebra.dim(), 2);
        for k in ["cube:3", "matrix:x", "matrix:0", "group:M11", "quaternion:1", "quaternion:0,1", "field:", "field:3"] {
            assert!(build(k).is_err(), "{k}");
        }
    }

    #[test]
    fn conjugation_is_seeded() {
        let a = generate("group:S3", true, 2, 9).unwrap();
        let b = generate("group:S3", true, 2, 9).unwrap();
        let c = generate("group:S3", true, 2, 10).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let alg = a.algebra().unwrap();
        assert_eq!(alg.check_axioms(), None);
        let e = a.element("(1 2)").unwrap();
        assert_eq!(alg.mul(&e, &e).unwrap(), *alg.unit());
    }
}
