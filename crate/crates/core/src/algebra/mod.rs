//! Finite-dimensional unital algebras over the rationals presented by
//! structure constants, their subalgebras, and the Wedderburn layer
//! (radical, center, central idempotents, simple factors).

pub mod constructions;
mod wedderburn;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::ratlin::{
    self, is_zero_vec, krylov_minpoly, unit_vec, vec_axpy, zero_vec, QMatrix, QVector, Rat,
};

pub use wedderburn::{
    central_idempotents, field_certify, is_field, radical, simple_factors, split_commutative,
    BaseFieldTag,
};

/// Coordinates of an element with respect to an algebra's basis.
pub type AlgebraElement = QVector;

/// A unital algebra `Q^n` with multiplication `b_i · b_j = Σ_k c_ijk b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureAlgebra {
    dim: usize,
    /// `constants[(i * dim + j) * dim + k] = c_ijk`
    constants: Vec<Rat>,
    unit: QVector,
    scaled: ScaledTable,
}

/// The constants times their common denominator, so products can be
/// accumulated over Z and reduced once per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ScaledTable {
    denom: BigInt,
    entries: Vec<BigInt>,
}

impl ScaledTable {
    fn new(constants: &[Rat]) -> Self {
        let denom = ratlin::denominator_lcm(constants);
        let entries = constants
            .iter()
            .map(|c| c.numer() * (&denom / c.denom()))
            .collect();
        ScaledTable { denom, entries }
    }
}

/// Integer numerators over a common denominator.
fn clear_denominators(x: &[Rat]) -> (Vec<BigInt>, BigInt) {
    let d = ratlin::denominator_lcm(x);
    let v = x.iter().map(|c| c.numer() * (&d / c.denom())).collect();
    (v, d)
}

/// Where a structure-constant table fails the algebra axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomFailure {
    /// `(b_i b_j) b_k ≠ b_i (b_j b_k)`
    Associativity { i: usize, j: usize, k: usize },
    /// `1 · b_i ≠ b_i` or `b_i · 1 ≠ b_i`
    Unit { i: usize },
}

impl StructureAlgebra {
    /// Builds an algebra from its products table; `products[i][j]` holds the
    /// coordinates of `b_i b_j`. Only shapes are checked here; see
    /// [`StructureAlgebra::new_checked`].
    pub fn new(dim: usize, products: Vec<Vec<QVector>>, unit: QVector) -> Result<Self> {
        if products.len() != dim || unit.len() != dim {
            return Err(Error::DimensionMismatch(format!(
                "structure constants for dimension {dim} have {} rows and unit length {}",
                products.len(),
                unit.len()
            )));
        }
        let mut constants = Vec::with_capacity(dim * dim * dim);
        for (i, row) in products.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} of the structure constants has {} entries",
                    row.len()
                )));
            }
            for (j, v) in row.into_iter().enumerate() {
                if v.len() != dim {
                    return Err(Error::DimensionMismatch(format!(
                        "product b_{i} b_{j} has {} coordinates",
                        v.len()
                    )));
                }
                constants.extend(v);
            }
        }
        Ok(Self::from_flat(dim, constants, unit))
    }

    /// Like [`StructureAlgebra::new`] but also enforces associativity and the
    /// unit law.
    pub fn new_checked(dim: usize, products: Vec<Vec<QVector>>, unit: QVector) -> Result<Self> {
        let a = Self::new(dim, products, unit)?;
        match a.check_axioms() {
            None => Ok(a),
            Some(fail) => Err(Error::InvalidAlgebra(format!("{fail:?}"))),
        }
    }

    pub(crate) fn from_flat(dim: usize, constants: Vec<Rat>, unit: QVector) -> Self {
        debug_assert_eq!(constants.len(), dim * dim * dim);
        debug_assert_eq!(unit.len(), dim);
        let scaled = ScaledTable::new(&constants);
        StructureAlgebra {
            dim,
            constants,
            unit,
            scaled,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &AlgebraElement {
        &self.unit
    }

    /// Coordinates of `b_i b_j`.
    pub fn product_of_basis(&self, i: usize, j: usize) -> &[Rat] {
        let n = self.dim;
        &self.constants[(i * n + j) * n..(i * n + j + 1) * n]
    }

    pub fn products_table(&self) -> Vec<Vec<QVector>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.product_of_basis(i, j).to_vec())
                    .collect()
            })
            .collect()
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        unit_vec(self.dim, i)
    }

    pub fn zero(&self) -> AlgebraElement {
        zero_vec(self.dim)
    }

    pub fn scalar(&self, c: &Rat) -> AlgebraElement {
        ratlin::vec_scale(&self.unit, c)
    }

    fn check_len(&self, x: &[Rat]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element of length {} in an algebra of dimension {}",
                x.len(),
                self.dim
            )));
        }
        Ok(())
    }

    /// Product `x·y`.
    pub fn mul(&self, x: &[Rat], y: &[Rat]) -> Result<AlgebraElement> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &[Rat], y: &[Rat]) -> AlgebraElement {
        let n = self.dim;
        let (xs, dx) = clear_denominators(x);
        let (ys, dy) = clear_denominators(y);
        let c = &self.scaled.entries;
        let mut acc = vec![BigInt::zero(); n];
        for (i, xi) in xs.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in ys.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                let row = &c[(i * n + j) * n..(i * n + j + 1) * n];
                for (out, cijk) in acc.iter_mut().zip(row) {
                    if !cijk.is_zero() {
                        *out += &w * cijk;
                    }
                }
            }
        }
        let denom = dx * dy * &self.scaled.denom;
        acc.into_iter().map(|v| Rat::new(v, denom.clone())).collect()
    }

    /// `xy − yx`
    pub fn bracket(&self, x: &[Rat], y: &[Rat]) -> AlgebraElement {
        ratlin::vec_sub(&self.mul_unchecked(x, y), &self.mul_unchecked(y, x))
    }

    /// Matrix of `z ↦ x·z`.
    pub fn left_regular(&self, x: &[Rat]) -> Result<QMatrix> {
        self.check_len(x)?;
        let n = self.dim;
        let mut m = QMatrix::zeros(n, n);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.product_of_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, j)] += xi * c;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `z ↦ z·x`.
    pub fn right_regular(&self, x: &[Rat]) -> Result<QMatrix> {
        self.check_len(x)?;
        let n = self.dim;
        let mut m = QMatrix::zeros(n, n);
        for (j, xj) in x.iter().enumerate() {
            if xj.is_zero() {
                continue;
            }
            for i in 0..n {
                for (k, c) in self.product_of_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        m[(k, i)] += xj * c;
                    }
                }
            }
        }
        Ok(m)
    }

    /// Evaluates `p(x)` with `x^0 = 1`.
    pub fn eval_poly(&self, p: &QPoly, x: &[Rat]) -> AlgebraElement {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul_unchecked(&acc, x);
            vec_axpy(&mut acc, c, &self.unit);
        }
        acc
    }

    pub fn pow(&self, x: &[Rat], k: usize) -> AlgebraElement {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul_unchecked(&acc, x);
        }
        acc
    }

    /// Monic minimal polynomial of `x`: the annihilator of `1` under left
    /// multiplication by `x`.
    pub fn minpoly_element(&self, x: &[Rat]) -> Result<QPoly> {
        self.check_len(x)?;
        Ok(krylov_minpoly(&self.unit, |v| self.mul_unchecked(x, v)))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| {
            (i + 1..self.dim).all(|j| self.product_of_basis(i, j) == self.product_of_basis(j, i))
        })
    }

    /// First failing associativity triple or unit index, if any.
    pub fn check_axioms(&self) -> Option<AxiomFailure> {
        let n = self.dim;
        for i in 0..n {
            let b = self.basis_element(i);
            if self.mul_unchecked(&self.unit, &b) != b || self.mul_unchecked(&b, &self.unit) != b {
                return Some(AxiomFailure::Unit { i });
            }
        }
        // Scaling every constant by the common denominator D scales both
        // sides of each triple by D², so the comparison runs over Z.
        let c = &self.scaled.entries;
        let at = |i: usize, j: usize, l: usize| &c[(i * n + j) * n + l];
        let mut lhs = vec![BigInt::zero(); n];
        let mut rhs = vec![BigInt::zero(); n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    lhs.iter_mut().chain(rhs.iter_mut()).for_each(|x| x.set_zero());
                    for l in 0..n {
                        let (a, b) = (at(i, j, l), at(j, k, l));
                        if !a.is_zero() {
                            for (m, out) in lhs.iter_mut().enumerate() {
                                let x = at(l, k, m);
                                if !x.is_zero() {
                                    *out += a * x;
                                }
                            }
                        }
                        if !b.is_zero() {
                            for (m, out) in rhs.iter_mut().enumerate() {
                                let x = at(i, l, m);
                                if !x.is_zero() {
                                    *out += b * x;
                                }
                            }
                        }
                    }
                    if lhs != rhs {
                        return Some(AxiomFailure::Associativity { i, j, k });
                    }
                }
            }
        }
        None
    }

    /// `Tr(L_{b_k})` for every basis element.
    pub fn regular_traces(&self) -> Vec<Rat> {
        let n = self.dim;
        (0..n)
            .map(|k| (0..n).map(|j| self.product_of_basis(k, j)[j].clone()).sum())
            .collect()
    }

    /// `Tr(L_x)`
    pub fn regular_trace(&self, x: &[Rat]) -> Rat {
        self.regular_traces()
            .iter()
            .zip(x)
            .map(|(t, c)| t * c)
            .sum()
    }

    /// Gram matrix `Tr(L_{b_i} L_{b_j}) = Tr(L_{b_i b_j})` of the trace form.
    pub fn trace_form(&self) -> QMatrix {
        let n = self.dim;
        let t = self.regular_traces();
        let mut g = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = self
                    .product_of_basis(i, j)
                    .iter()
                    .zip(&t)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, tk)| c * tk)
                    .sum();
            }
        }
        g
    }

    /// Centralizer of a set of elements, as a unital subalgebra.
    pub fn centralizer(&self, s: &[AlgebraElement]) -> Result<Subalgebra> {
        let n = self.dim;
        let mut eqs = QMatrix::zeros(0, n);
        for g in s {
            self.check_len(g)?;
            let d = self.left_regular(g)?.sub(&self.right_regular(g)?)?;
            eqs = eqs.vstack(&d)?;
        }
        let k = ratlin::kernel_basis(&eqs);
        Subalgebra::from_spanning(self, &k.columns(), Some(self.unit.clone()))
    }

    /// Center: the centralizer of the whole basis.
    pub fn center(&self) -> Result<Subalgebra> {
        let basis: Vec<_> = (0..self.dim).map(|i| self.basis_element(i)).collect();
        self.centralizer(&basis)
    }

    /// Smallest subalgebra containing `gens` (and `1` when `include_unit`).
    /// Without the unit the result must still have an identity element of
    /// its own, otherwise `Error::NotUnital` is returned.
    pub fn subalgebra_generated(
        &self,
        gens: &[AlgebraElement],
        include_unit: bool,
    ) -> Result<Subalgebra> {
        let n = self.dim;
        for g in gens {
            self.check_len(g)?;
        }
        let mut span = ratlin::EchelonBasis::new(n);
        let mut basis: Vec<QVector> = Vec::new();
        let mut queue: Vec<QVector> = Vec::new();
        let seeds = include_unit
            .then(|| self.unit.clone())
            .into_iter()
            .chain(gens.iter().cloned());
        for v in seeds {
            if span.insert(&v) {
                basis.push(v.clone());
                queue.push(v);
            }
        }
        while let Some(w) = queue.pop() {
            for g in gens {
                let p = self.mul_unchecked(g, &w);
                if span.insert(&p) {
                    basis.push(p.clone());
                    queue.push(p);
                }
            }
        }
        let unit = include_unit.then(|| self.unit.clone());
        Subalgebra::from_spanning(self, &basis, unit)
    }
}

/// A subspace of an algebra stored by a canonical basis (rows of the rref).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    /// Columns are basis vectors in ambient coordinates.
    basis: QMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(ambient_dim: usize, vectors: &[QVector]) -> Self {
        let rows = if vectors.is_empty() {
            QMatrix::zeros(0, ambient_dim)
        } else {
            QMatrix::from_rows(vectors.to_vec())
        };
        let (canon, pivots) = ratlin::row_space_canonical(&rows);
        Subspace {
            basis: canon.transpose(),
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the canonical basis, `None` if `v` is outside.
    pub fn coords_of(&self, v: &[Rat]) -> Option<QVector> {
        let c: QVector = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&c).expect("shape");
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.coords_of(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_vectors().iter().all(|v| self.contains(v))
    }
}

/// A unital subalgebra together with its induced structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    space: Subspace,
    induced: StructureAlgebra,
}

impl Subalgebra {
    /// Span of `vectors` as a subalgebra of `parent`. The identity element is
    /// `unit` when given, otherwise it is solved for.
    pub fn from_spanning(
        parent: &StructureAlgebra,
        vectors: &[QVector],
        unit: Option<AlgebraElement>,
    ) -> Result<Self> {
        let n = parent.dim();
        let space = Subspace::from_spanning(n, vectors);
        let basis = space.basis_vectors();
        let d = basis.len();
        let mut constants = Vec::with_capacity(d * d * d);
        let mut products = Vec::with_capacity(d * d);
        for x in &basis {
            for y in &basis {
                let p = parent.mul_unchecked(x, y);
                let c = space.coords_of(&p).ok_or_else(|| {
                    Error::NotUnital("span is not closed under multiplication".into())
                })?;
                constants.extend(c);
                products.push(p);
            }
        }
        let unit_coords = match unit {
            Some(u) => space.coords_of(&u).ok_or_else(|| {
                Error::NotUnital("declared identity lies outside the span".into())
            })?,
            None => solve_identity(d, &products, &basis)?,
        };
        let induced = StructureAlgebra::from_flat(d, constants, unit_coords);
        if let Some(u) = induced.unit_failure() {
            return Err(Error::NotUnital(format!(
                "declared identity fails on basis element {u}"
            )));
        }
        Ok(Subalgebra { space, induced })
    }

    /// The whole algebra as a subalgebra of itself.
    pub fn whole(a: &StructureAlgebra) -> Self {
        Subalgebra {
            space: Subspace::from_spanning(
                a.dim(),
                &(0..a.dim()).map(|i| a.basis_element(i)).collect::<Vec<_>>(),
            ),
            induced: a.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Columns are basis elements in parent coordinates.
    pub fn basis(&self) -> &QMatrix {
        self.space.basis()
    }

    pub fn basis_vectors(&self) -> Vec<QVector> {
        self.space.basis_vectors()
    }

    pub fn induced(&self) -> &StructureAlgebra {
        &self.induced
    }

    /// Identity element in parent coordinates.
    pub fn unit_in_parent(&self) -> QVector {
        self.to_parent(self.induced.unit())
    }

    pub fn coords_of(&self, v: &[Rat]) -> Option<QVector> {
        self.space.coords_of(v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.space.contains(v)
    }

    pub fn to_parent(&self, coords: &[Rat]) -> QVector {
        self.space.basis.mul_vec(coords).expect("shape")
    }
}

impl StructureAlgebra {
    fn unit_failure(&self) -> Option<usize> {
        (0..self.dim).find(|&i| {
            let b = self.basis_element(i);
            self.mul_unchecked(&self.unit, &b) != b || self.mul_unchecked(&b, &self.unit) != b
        })
    }
}

/// Finds `u = Σ u_a v_a` with `u·v_j = v_j = v_j·u` for every basis vector.
fn solve_identity(d: usize, products: &[QVector], basis: &[QVector]) -> Result<QVector> {
    if d == 0 {
        return Err(Error::NotUnital("zero subspace".into()));
    }
    let n = basis[0].len();
    // unknown u_a; equations: Σ_a u_a (v_a v_j) = v_j and Σ_a u_a (v_j v_a) = v_j
    let mut rows: Vec<QVector> = Vec::with_capacity(2 * d * n);
    let mut rhs: QVector = Vec::with_capacity(2 * d * n);
    for j in 0..d {
        for k in 0..n {
            rows.push((0..d).map(|a| products[a * d + j][k].clone()).collect());
            rhs.push(basis[j][k].clone());
            rows.push((0..d).map(|a| products[j * d + a][k].clone()).collect());
            rhs.push(basis[j][k].clone());
        }
    }
    let sys = QMatrix::from_rows(rows);
    ratlin::solve(&sys, &rhs)?
        .ok_or_else(|| Error::NotUnital("no identity element in the span".into()))
}

/// True when `x` is a scalar multiple of the identity.
pub fn is_scalar(a: &StructureAlgebra, x: &[Rat]) -> bool {
    let Some(p) = a.unit().iter().position(|c| !c.is_zero()) else {
        return is_zero_vec(x);
    };
    let c = &x[p] / &a.unit()[p];
    ratlin::vec_scale(a.unit(), &c).as_slice() == x
}

#[cfg(test)]
mod tests {
    use super::constructions::*;
    use super::*;
    use crate::ratlin::{frac, rat};

    fn e(m: &StructureAlgebra, i: usize) -> QVector {
        m.basis_element(i)
    }

    #[test]
    fn mul_examples() {
        let m2 = matrix_algebra(2);
        // basis E11, E12, E21, E22
        assert_eq!(m2.mul(&e(&m2, 1), &e(&m2, 2)).unwrap(), e(&m2, 0));
        let x = vec![rat(1), rat(2), rat(3), rat(4)];
        assert_eq!(m2.mul(&x, m2.unit()).unwrap(), x);
        let c2 = group_algebra(&crate::groups::Group::cyclic(2));
        assert_eq!(c2.mul(&e(&c2, 1), &e(&c2, 1)).unwrap(), e(&c2, 0));
        assert!(m2.mul(&[rat(1)], &x).is_err());
    }

    #[test]
    fn left_regular_examples() {
        let c2 = group_algebra(&crate::groups::Group::cyclic(2));
        assert!(c2.left_regular(c2.unit()).unwrap().is_identity());
        assert!(c2.left_regular(&c2.zero()).unwrap().is_zero());
        assert_eq!(
            c2.left_regular(&e(&c2, 1)).unwrap(),
            QMatrix::from_i64(&[&[0, 1], &[1, 0]])
        );
    }

    #[test]
    fn minpoly_examples() {
        let h = quaternion_algebra(&rat(-1), &rat(-1));
        assert_eq!(h.minpoly_element(h.unit()).unwrap(), QPoly::from_i64(&[-1, 1]));
        assert_eq!(h.minpoly_element(&e(&h, 1)).unwrap(), QPoly::from_i64(&[1, 0, 1]));
        let m2 = matrix_algebra(2);
        assert_eq!(m2.minpoly_element(&e(&m2, 1)).unwrap(), QPoly::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn minpoly_matches_regular_representation() {
        let m2 = matrix_algebra(2);
        let x = vec![rat(1), rat(-2), frac(1, 3), rat(0)];
        let via_matrix = ratlin::minpoly_matrix(&m2.left_regular(&x).unwrap()).unwrap();
        assert_eq!(m2.minpoly_element(&x).unwrap(), via_matrix);
    }

    #[test]
    fn generated_subalgebras() {
        let m2 = matrix_algebra(2);
        assert_eq!(m2.subalgebra_generated(&[m2.unit().clone()], true).unwrap().dim(), 1);
        let s = m2.subalgebra_generated(&[e(&m2, 1), e(&m2, 2)], true).unwrap();
        assert_eq!(s.dim(), 4);
        let s = m2.subalgebra_generated(&[e(&m2, 1), e(&m2, 2)], false).unwrap();
        assert_eq!(s.dim(), 4);
        let d12 = vec![rat(1), rat(0), rat(0), rat(2)];
        let s = m2.subalgebra_generated(&[d12], true).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&e(&m2, 0)) && s.contains(&e(&m2, 3)));
        // E12 alone spans a non-unital (nilpotent) subalgebra
        assert!(matches!(
            m2.subalgebra_generated(&[e(&m2, 1)], false),
            Err(Error::NotUnital(_))
        ));
    }

    #[test]
    fn centralizer_examples() {
        let m2 = matrix_algebra(2);
        assert_eq!(m2.centralizer(&[m2.unit().clone()]).unwrap().dim(), 4);
        let d12 = vec![rat(1), rat(0), rat(0), rat(2)];
        let z = m2.centralizer(&[d12]).unwrap();
        assert_eq!(z.dim(), 2);
        assert!(z.contains(&e(&m2, 0)) && z.contains(&e(&m2, 3)));
        let h = quaternion_algebra(&rat(-1), &rat(-1));
        let z = h.centralizer(&[e(&h, 1)]).unwrap();
        assert_eq!(z.dim(), 2);
        assert!(z.contains(&e(&h, 0)) && z.contains(&e(&h, 1)));
    }

    #[test]
    fn center_examples() {
        assert_eq!(matrix_algebra(2).center().unwrap().dim(), 1);
        let c2 = group_algebra(&crate::groups::Group::cyclic(2));
        assert_eq!(c2.center().unwrap().dim(), 2);
        let s = direct_sum(&[matrix_algebra(2), matrix_algebra(1)]);
        assert_eq!(s.center().unwrap().dim(), 2);
    }

    #[test]
    fn axioms_detect_corruption() {
        let m2 = matrix_algebra(2);
        assert_eq!(m2.check_axioms(), None);
        let mut table = m2.products_table();
        table[1][2][0] = rat(2);
        let bad = StructureAlgebra::new(4, table, m2.unit().clone()).unwrap();
        assert!(bad.check_axioms().is_some());
        assert!(StructureAlgebra::new_checked(4, bad.products_table(), m2.unit().clone()).is_err());
    }

    #[test]
    fn scalar_detection() {
        let m2 = matrix_algebra(2);
        assert!(is_scalar(&m2, &m2.scalar(&frac(3, 4))));
        assert!(is_scalar(&m2, &m2.zero()));
        assert!(!is_scalar(&m2, &e(&m2, 0)));
    }
}
