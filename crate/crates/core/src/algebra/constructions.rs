//! Standard algebras: matrix algebras, quaternion algebras, group algebras,
//! number fields, direct sums, tensor products, and changes of basis.

use num_traits::{One, Zero};

use super::StructureAlgebra;
use crate::error::{Error, Result};
use crate::groups::Group;
use crate::qpoly::QPoly;
use crate::ratlin::{self, rat, unit_vec, zero_vec, QMatrix, QVector, Rat};

/// `Mat_n(Q)` with basis `E_ij` in row-major order (index `i·n + j`).
pub fn matrix_algebra(n: usize) -> StructureAlgebra {
    let d = n * n;
    let mut c = vec![Rat::zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                // E_ij E_jl = E_il
                let (x, y, z) = (i * n + j, j * n + l, i * n + l);
                c[(x * d + y) * d + z] = Rat::one();
            }
        }
    }
    let mut unit = zero_vec(d);
    for i in 0..n {
        unit[i * n + i] = Rat::one();
    }
    StructureAlgebra::from_flat(d, c, unit)
}

/// Quaternion algebra `(a, b)` with basis `1, i, j, k`, `i² = a`, `j² = b`,
/// `k = ij = −ji`.
pub fn quaternion_algebra(a: &Rat, b: &Rat) -> StructureAlgebra {
    let one = Rat::one();
    let ab = a * b;
    // (coefficient, basis index) for each product of basis elements
    let table: [[(Rat, usize); 4]; 4] = [
        [(one.clone(), 0), (one.clone(), 1), (one.clone(), 2), (one.clone(), 3)],
        [(one.clone(), 1), (a.clone(), 0), (one.clone(), 3), (a.clone(), 2)],
        [(one.clone(), 2), (-&one, 3), (b.clone(), 0), (-b.clone(), 1)],
        [(one.clone(), 3), (-a.clone(), 2), (b.clone(), 1), (-ab, 0)],
    ];
    let mut c = vec![Rat::zero(); 64];
    for (x, row) in table.iter().enumerate() {
        for (y, (coef, z)) in row.iter().enumerate() {
            c[(x * 4 + y) * 4 + z] = coef.clone();
        }
    }
    StructureAlgebra::from_flat(4, c, unit_vec(4, 0))
}

/// `Q[G]` with the group elements as basis, identity first.
pub fn group_algebra(g: &Group) -> StructureAlgebra {
    let n = g.order();
    let mut c = vec![Rat::zero(); n * n * n];
    for i in 0..n {
        for j in 0..n {
            c[(i * n + j) * n + g.mul(i, j)] = Rat::one();
        }
    }
    StructureAlgebra::from_flat(n, c, unit_vec(n, 0))
}

/// `Q[t]/(p)` with basis `1, t, …, t^(d−1)`.
pub fn number_field(p: &QPoly) -> Result<StructureAlgebra> {
    let d = match p.degree() {
        None => return Err(Error::ZeroPolynomial),
        Some(0) => return Err(Error::Precondition("modulus must be nonconstant".into())),
        Some(d) => d,
    };
    let p = p.monic();
    let mut c = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let r = QPoly::monomial(Rat::one(), i + j).rem(&p);
            c.extend((0..d).map(|k| r.coeff(k)));
        }
    }
    Ok(StructureAlgebra::from_flat(d, c, unit_vec(d, 0)))
}

/// Direct product of algebras, bases concatenated.
pub fn direct_sum(parts: &[StructureAlgebra]) -> StructureAlgebra {
    let d: usize = parts.iter().map(|a| a.dim()).sum();
    let mut c = vec![Rat::zero(); d * d * d];
    let mut unit = zero_vec(d);
    let mut off = 0;
    for a in parts {
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                for (k, v) in a.product_of_basis(i, j).iter().enumerate() {
                    c[((off + i) * d + off + j) * d + off + k] = v.clone();
                }
            }
            unit[off + i] = a.unit()[i].clone();
        }
        off += n;
    }
    StructureAlgebra::from_flat(d, c, unit)
}

/// `A ⊗ B` with basis `a_i ⊗ b_j` at index `i·dim B + j`.
pub fn tensor_product(a: &StructureAlgebra, b: &StructureAlgebra) -> StructureAlgebra {
    let (na, nb) = (a.dim(), b.dim());
    let d = na * nb;
    let mut c = vec![Rat::zero(); d * d * d];
    for i in 0..na {
        for k in 0..na {
            let pa = a.product_of_basis(i, k);
            for j in 0..nb {
                for l in 0..nb {
                    let pb = b.product_of_basis(j, l);
                    let base = ((i * nb + j) * d + k * nb + l) * d;
                    for (x, u) in pa.iter().enumerate().filter(|(_, u)| !u.is_zero()) {
                        for (y, v) in pb.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            c[base + x * nb + y] = u * v;
                        }
                    }
                }
            }
        }
    }
    let mut unit = zero_vec(d);
    for (x, u) in a.unit().iter().enumerate() {
        for (y, v) in b.unit().iter().enumerate() {
            unit[x * nb + y] = u * v;
        }
    }
    StructureAlgebra::from_flat(d, c, unit)
}

/// `Mat_m(K)` as `Mat_m(Q) ⊗ K`.
pub fn matrix_algebra_over(k: &StructureAlgebra, m: usize) -> StructureAlgebra {
    tensor_product(&matrix_algebra(m), k)
}

/// Rewrites `a` in the basis given by the columns of the invertible `p`
/// (`b'_i = Σ_j p_ji b_j`).
pub fn conjugate(a: &StructureAlgebra, p: &QMatrix) -> Result<StructureAlgebra> {
    let n = a.dim();
    if p.rows() != n || p.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "change of basis is {}x{} for an algebra of dimension {n}",
            p.rows(),
            p.cols()
        )));
    }
    let pinv = ratlin::inverse(p)?
        .ok_or_else(|| Error::Precondition("change of basis is singular".into()))?;
    let cols = p.columns();
    let mut c = Vec::with_capacity(n * n * n);
    for x in &cols {
        for y in &cols {
            c.extend(pinv.mul_vec(&a.mul_unchecked(x, y))?);
        }
    }
    let unit = pinv.mul_vec(a.unit())?;
    Ok(StructureAlgebra::from_flat(n, c, unit))
}

/// Integer matrix helper for building changes of basis in tests and corpora.
pub fn int_matrix(rows: &[&[i64]]) -> QMatrix {
    QMatrix::from_i64(rows)
}

/// The element `Σ coeffs[i] b_i` from small integers.
pub fn int_element(coeffs: &[i64]) -> QVector {
    coeffs.iter().map(|&c| rat(c)).collect()
}
