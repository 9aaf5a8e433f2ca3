//! Rational matrix models of algebra actions on `Q^(2g)`: the matrices
//! `M(u)` built from a splittable decomposition, and exact checks of the
//! splitting and isogeny constructions on a linear representation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{field_certify, AlgebraElement, StructureAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::qpoly::QPoly;
use crate::ratlin::{self, charpoly, is_zero_vec, vec_sub, zero_vec, QMatrix, QVector, Rat};
use crate::splittable::{Factor, SplittableCertificate};

/// A commutative algebra certified to be a field, with its basis order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    algebra: StructureAlgebra,
}

impl NumberField {
    pub fn new(algebra: StructureAlgebra) -> Result<Self> {
        let tag = field_certify(&Subalgebra::whole(&algebra))?;
        if !tag.certified {
            return Err(Error::Precondition("algebra is not a field".into()));
        }
        Ok(NumberField { algebra })
    }

    /// `Q` itself.
    pub fn rationals() -> Self {
        NumberField {
            algebra: crate::algebra::constructions::matrix_algebra(1),
        }
    }

    /// The field spanned by `basis` inside `a`, with `unit` as identity;
    /// structure constants are taken relative to `basis` in the given order.
    pub fn from_elements(a: &StructureAlgebra, basis: &[AlgebraElement], unit: &[Rat]) -> Result<Self> {
        let d = basis.len();
        let cols = QMatrix::from_columns(a.dim(), basis);
        let coords = |v: &QVector| -> Result<QVector> {
            ratlin::solve(&cols, v)?
                .ok_or_else(|| Error::Precondition("field span is not closed".into()))
        };
        let mut products = Vec::with_capacity(d);
        for x in basis {
            let row = basis
                .iter()
                .map(|y| coords(&a.mul_unchecked(x, y)))
                .collect::<Result<Vec<_>>>()?;
            products.push(row);
        }
        let alg = StructureAlgebra::new(d, products, coords(&unit.to_vec())?)?;
        if let Some(fail) = alg.check_axioms() {
            return Err(Error::Precondition(format!("field span is not an algebra: {fail:?}")));
        }
        Self::new(alg)
    }

    pub fn degree(&self) -> usize {
        self.algebra.dim()
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }
}

/// Matrix of `w ↦ u·w` on the field's basis.
pub fn regular_matrix(k: &NumberField, u: &[Rat]) -> Result<QMatrix> {
    k.algebra.left_regular(u)
}

/// Matrix of `w ↦ u·w` in another basis of the field (columns of `basis`,
/// in the field's coordinates).
pub fn regular_matrix_in_basis(k: &NumberField, basis: &QMatrix, u: &[Rat]) -> Result<QMatrix> {
    let inv = ratlin::inverse(basis)?
        .ok_or_else(|| Error::Precondition("basis of the field is singular".into()))?;
    inv.mul(&k.algebra.left_regular(u)?)?.mul(basis)
}

/// A square rational matrix of size `2g` together with its characteristic
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateMatrix {
    pub matrix: QMatrix,
    pub charpoly: QPoly,
}

impl TateMatrix {
    pub fn new(matrix: QMatrix) -> Result<Self> {
        let charpoly = charpoly(&matrix)?;
        Ok(TateMatrix { matrix, charpoly })
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }
}

fn field_blocks(k: &NumberField, copies: usize, u: &[Rat]) -> Result<QMatrix> {
    let m0 = regular_matrix(k, u)?;
    Ok(QMatrix::block_diagonal(&vec![m0; copies]))
}

/// `M(u)` for `u` in a field `K` of degree `d` acting on `Q^(2g)`: `2g/d`
/// diagonal copies of the regular matrix.
pub fn tate_matrix_field(k: &NumberField, g: usize, u: &[Rat]) -> Result<TateMatrix> {
    let d = k.degree();
    if g == 0 || !(2 * g).is_multiple_of(d) {
        return Err(Error::Divisibility(format!("field degree {d} does not divide 2g = {}", 2 * g)));
    }
    TateMatrix::new(field_blocks(k, 2 * g / d, u)?)
}

/// Block matrix `(M(u_jl))` for `U ∈ Mat_m(K)` acting on `Q^(2g)`; each of
/// the `m` copies has dimension `2g/m`.
pub fn tate_matrix_matrixalg(
    k: &NumberField,
    m: usize,
    g: usize,
    table: &[Vec<QVector>],
) -> Result<TateMatrix> {
    let d = k.degree();
    if g == 0 || m == 0 || !(2 * g).is_multiple_of(m) || !(2 * g / m).is_multiple_of(d) {
        return Err(Error::Divisibility(format!(
            "m·d = {} does not divide 2g = {} copy-wise",
            m * d,
            2 * g
        )));
    }
    TateMatrix::new(matrixalg_blocks(k, m, 2 * g / (m * d), table)?)
}

fn matrixalg_blocks(k: &NumberField, m: usize, copies: usize, table: &[Vec<QVector>]) -> Result<QMatrix> {
    if table.len() != m || table.iter().any(|r| r.len() != m) {
        return Err(Error::DimensionMismatch(format!("expected an {m}x{m} table")));
    }
    let s = copies * k.degree();
    let mut out = QMatrix::zeros(m * s, m * s);
    for (j, row) in table.iter().enumerate() {
        for (l, u) in row.iter().enumerate() {
            if u.len() != k.degree() {
                return Err(Error::DimensionMismatch("table entry of the wrong length".into()));
            }
            if !is_zero_vec(u) {
                out.set_block(j * s, l * s, &field_blocks(k, copies, u)?);
            }
        }
    }
    Ok(out)
}

/// How many copies of the standard module `K_i^(m_i)` each factor of a
/// certificate contributes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityPlan {
    pub copies: Vec<usize>,
}

impl MultiplicityPlan {
    /// Dimension `Σ n_i·m_i·d_i` of the modelled space.
    pub fn dimension(&self, cert: &SplittableCertificate) -> Result<usize> {
        if self.copies.len() != cert.factors.len() {
            return Err(Error::DimensionMismatch(format!(
                "plan has {} entries for {} factors",
                self.copies.len(),
                cert.factors.len()
            )));
        }
        if self.copies.contains(&0) {
            return Err(Error::Precondition("every factor needs at least one copy".into()));
        }
        Ok(self
            .copies
            .iter()
            .zip(&cert.factors)
            .map(|(n, f)| n * f.size() * f.field_degree())
            .sum())
    }

    pub fn check(&self, cert: &SplittableCertificate, g: usize) -> Result<()> {
        let dim = self.dimension(cert)?;
        if dim != 2 * g {
            return Err(Error::Precondition(format!(
                "plan models dimension {dim}, expected 2g = {}",
                2 * g
            )));
        }
        Ok(())
    }
}

/// Coordinates of `x = Σ κ_a E_jl` as a table `U[j][l] ∈ K`.
fn factor_table(a: &StructureAlgebra, fac: &Factor, x: &[Rat]) -> Result<Vec<Vec<QVector>>> {
    let m = fac.size();
    let d = fac.field_degree();
    let span = fac.spanning_set(a);
    let cols = QMatrix::from_columns(a.dim(), &span);
    let c = ratlin::solve(&cols, x)?
        .ok_or_else(|| Error::Precondition("element is not in the factor".into()))?;
    // spanning order: field index outermost, then (j, l)
    Ok((0..m)
        .map(|j| {
            (0..m)
                .map(|l| (0..d).map(|i| c[i * m * m + j * m + l].clone()).collect())
                .collect()
        })
        .collect())
}

/// `M(u)` for `u ∈ C`: block diagonal over factors, each factor contributing
/// `n_i` copies of its standard module.
pub fn tate_matrix_semisimple(
    cert: &SplittableCertificate,
    plan: &MultiplicityPlan,
    u: &[Rat],
) -> Result<TateMatrix> {
    plan.dimension(cert)?;
    let a = &cert.ambient;
    if u.len() != a.dim() {
        return Err(Error::DimensionMismatch("element of the wrong length".into()));
    }
    let mut rest = u.to_vec();
    let mut blocks = Vec::with_capacity(cert.factors.len());
    for (fac, &n) in cert.factors.iter().zip(&plan.copies) {
        let p = fac.identity();
        let ui = a.mul_unchecked(&a.mul_unchecked(&p, u), &p);
        rest = vec_sub(&rest, &ui);
        let k = NumberField::from_elements(a, &fac.field_basis, &p)?;
        let table = factor_table(a, fac, &ui)?;
        blocks.push(matrixalg_blocks(&k, fac.size(), n, &table)?);
    }
    if !is_zero_vec(&rest) {
        return Err(Error::Precondition("element is not in the certified subalgebra".into()));
    }
    TateMatrix::new(QMatrix::block_diagonal(&blocks))
}

/// Outcome of [`weil_integrality_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub matrix_integral: bool,
    pub charpoly_integral: bool,
    pub claimed: bool,
}

impl IntegralityReport {
    /// False when integrality was claimed or the entries are integers, but
    /// the characteristic polynomial is not in `Z[t]`.
    pub fn passed(&self) -> bool {
        !(self.claimed || self.matrix_integral) || self.charpoly_integral
    }
}

pub fn weil_integrality_check(t: &TateMatrix, integral: bool) -> IntegralityReport {
    IntegralityReport {
        matrix_integral: t.matrix.is_integral(),
        charpoly_integral: t.charpoly.is_integral(),
        claimed: integral,
    }
}

/// A faithful unital representation of an algebra on `Q^(2g)`, given by
/// the images of the basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TateRepModel {
    algebra: StructureAlgebra,
    g: usize,
    rho: Vec<QMatrix>,
}

impl TateRepModel {
    pub fn new(algebra: StructureAlgebra, g: usize, rho: Vec<QMatrix>) -> Result<Self> {
        let n = algebra.dim();
        let size = 2 * g;
        if g == 0 || rho.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "{} matrices for an algebra of dimension {n}, g = {g}",
                rho.len()
            )));
        }
        if let Some(i) = rho.iter().position(|m| m.rows() != size || m.cols() != size) {
            return Err(Error::DimensionMismatch(format!("image of basis element {i} is not {size}x{size}")));
        }
        let model = TateRepModel { algebra, g, rho };
        if !model.rho(model.algebra.unit())?.is_identity() {
            return Err(Error::Precondition("identity is not sent to the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let lhs = model.rho[i].mul(&model.rho[j])?;
                let rhs = model.rho(model.algebra.product_of_basis(i, j))?;
                if lhs != rhs {
                    return Err(Error::Precondition(format!(
                        "representation is not multiplicative on basis pair ({i},{j})"
                    )));
                }
            }
        }
        let flat: Vec<QVector> = model.rho.iter().map(|m| m.entries().to_vec()).collect();
        if ratlin::rank(&QMatrix::from_columns(size * size, &flat)) != n {
            return Err(Error::Precondition("representation is not injective".into()));
        }
        Ok(model)
    }

    pub fn algebra(&self) -> &StructureAlgebra {
        &self.algebra
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn basis_images(&self) -> &[QMatrix] {
        &self.rho
    }

    /// `ρ(u) = Σ u_i ρ(b_i)`
    pub fn rho(&self, u: &[Rat]) -> Result<QMatrix> {
        if u.len() != self.algebra.dim() {
            return Err(Error::DimensionMismatch("element of the wrong length".into()));
        }
        let size = 2 * self.g;
        let mut out = QMatrix::zeros(size, size);
        for (c, m) in u.iter().zip(&self.rho) {
            if !c.is_zero() {
                out.axpy(c, m);
            }
        }
        Ok(out)
    }
}

/// One named exact identity and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: Option<String>,
}

fn check(name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) -> CheckResult {
    CheckResult {
        name: name.into(),
        passed,
        detail: (!passed).then(detail),
    }
}

fn all_passed(checks: &[CheckResult]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn fmt_checks(f: &mut fmt::Formatter<'_>, checks: &[CheckResult]) -> fmt::Result {
    for c in checks {
        write!(f, "{} {}", if c.passed { "pass" } else { "FAIL" }, c.name)?;
        if let Some(d) = &c.detail {
            write!(f, ": {d}")?;
        }
        writeln!(f)?;
    }
    Ok(())
}

/// The smallest positive integer clearing every denominator of the matrices.
pub fn clearing_integer<'a>(ms: impl IntoIterator<Item = &'a QMatrix>) -> BigInt {
    ms.into_iter()
        .fold(BigInt::one(), |acc, m| acc.lcm(&m.denominator_lcm()))
}

fn resolve_n(given: Option<BigInt>, ms: &[QMatrix]) -> Result<BigInt> {
    match given {
        None => Ok(clearing_integer(ms)),
        Some(n) if n <= BigInt::zero() => Err(Error::Precondition("N must be positive".into())),
        Some(n) => {
            let nr = Rat::from_integer(n.clone());
            if ms.iter().any(|m| !m.scale(&nr).is_integral()) {
                return Err(Error::Precondition(format!("N = {n} does not clear the denominators")));
            }
            Ok(n)
        }
    }
}

fn check_idempotents(a: &StructureAlgebra, es: &[AlgebraElement]) -> Result<()> {
    let mut total = zero_vec(a.dim());
    for (i, e) in es.iter().enumerate() {
        if e.len() != a.dim() {
            return Err(Error::DimensionMismatch(format!("idempotent {i} has the wrong length")));
        }
        if is_zero_vec(e) || &a.mul_unchecked(e, e) != e {
            return Err(Error::Precondition(format!("element {i} is not a nonzero idempotent")));
        }
        for j in 0..a.dim() {
            let b = a.basis_element(j);
            if a.mul_unchecked(e, &b) != a.mul_unchecked(&b, e) {
                return Err(Error::Precondition(format!("idempotent {i} is not central")));
            }
        }
        for (j, f) in es.iter().enumerate().skip(i + 1) {
            if !is_zero_vec(&a.mul_unchecked(e, f)) {
                return Err(Error::Precondition(format!("idempotents {i} and {j} are not orthogonal")));
            }
        }
        total = ratlin::vec_add(&total, e);
    }
    if &total != a.unit() {
        return Err(Error::Precondition("idempotents do not sum to 1".into()));
    }
    Ok(())
}

/// Matrices and checks of the splitting along central idempotents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitReport {
    pub n: BigInt,
    /// Columns: bases of the images `W_i`, concatenated.
    pub s: QMatrix,
    /// Rows: coordinates of `ρ(N e_i) w` in the basis of `W_i`.
    pub p: QMatrix,
    pub block_dims: Vec<usize>,
    pub checks: Vec<CheckResult>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

impl fmt::Display for SplitReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N = {}, blocks {:?}", self.n, self.block_dims)?;
        fmt_checks(f, &self.checks)
    }
}

/// Splits the representation along complete orthogonal central idempotents
/// and checks `S·P = N = P·S` and the block form of every basis element.
pub fn split_representation(
    model: &TateRepModel,
    idempotents: &[AlgebraElement],
    n: Option<BigInt>,
) -> Result<SplitReport> {
    let a = model.algebra();
    check_idempotents(a, idempotents)?;
    let images = idempotents
        .iter()
        .map(|e| model.rho(e))
        .collect::<Result<Vec<_>>>()?;
    let n = resolve_n(n, &images)?;
    let nr = Rat::from_integer(n.clone());
    let size = 2 * model.g();
    let mut w = Vec::with_capacity(idempotents.len());
    let mut coords = Vec::with_capacity(idempotents.len());
    for img in &images {
        let q = img.scale(&nr);
        let wi = ratlin::column_space(&q);
        let ci = ratlin::solve_matrix(&wi, &q)?.expect("image lies in its column space");
        w.push(wi);
        coords.push(ci);
    }
    let block_dims: Vec<usize> = w.iter().map(QMatrix::cols).collect();
    let s = w
        .iter()
        .skip(1)
        .try_fold(w[0].clone(), |acc, wi| acc.hstack(wi))?;
    let p = coords
        .iter()
        .skip(1)
        .try_fold(coords[0].clone(), |acc, ci| acc.vstack(ci))?;
    let nid = QMatrix::scalar(size, &nr);
    let mut checks = Vec::new();
    let square = s.cols() == size;
    checks.push(check("images fill the space", square, || {
        format!("block dimensions {block_dims:?} sum to {}, expected {size}", s.cols())
    }));
    let sinv = if square { ratlin::inverse(&s)? } else { None };
    checks.push(check("S invertible", sinv.is_some(), || "S is singular".into()));
    if square {
        checks.push(check("S·P = N", s.mul(&p)? == nid, || "S·P differs from N·Id".into()));
        checks.push(check("P·S = N", p.mul(&s)? == nid, || "P·S differs from N·Id".into()));
    }
    if let Some(sinv) = sinv {
        let offsets: Vec<usize> = block_dims
            .iter()
            .scan(0, |acc, d| {
                let o = *acc;
                *acc += d;
                Some(o)
            })
            .collect();
        for b in 0..a.dim() {
            let u = a.basis_element(b);
            let conj = sinv.mul(&model.rho(&u)?)?.mul(&s)?;
            let mut expected = QMatrix::zeros(size, size);
            for (i, e) in idempotents.iter().enumerate() {
                let ui = model.rho(&a.mul_unchecked(e, &u))?;
                let tau = ratlin::solve_matrix(&w[i], &ui.mul(&w[i])?)?;
                match tau {
                    Some(t) => expected.set_block(offsets[i], offsets[i], &t),
                    None => {
                        checks.push(check(format!("component {i} of basis element {b} preserves W_{i}"), false, || {
                            "image leaves the subspace".into()
                        }));
                    }
                }
            }
            checks.push(check(format!("S^-1 ρ(b_{b}) S block diagonal"), conj == expected, || {
                "conjugate differs from the block matrix of the components".into()
            }));
        }
    }
    Ok(SplitReport {
        n,
        s,
        p,
        block_dims,
        checks,
    })
}

/// For `u2 = s u1 s^-1`: `ρ(Ns)` maps the image of `ρ(N u1)` onto the image
/// of `ρ(N u2)` injectively.
pub fn conj_isogeny_check(
    model: &TateRepModel,
    u1: &[Rat],
    u2: &[Rat],
    s: &[Rat],
    n: Option<BigInt>,
) -> Result<bool> {
    let a = model.algebra();
    a.mul(u1, u2)?;
    a.mul(s, s)?;
    if ratlin::inverse(&a.left_regular(s)?)?.is_none() {
        return Err(Error::Precondition("conjugating element is not invertible".into()));
    }
    if a.mul_unchecked(u2, s) != a.mul_unchecked(s, u1) {
        return Err(Error::Precondition("elements are not conjugate by s".into()));
    }
    let (r1, r2, rs) = (model.rho(u1)?, model.rho(u2)?, model.rho(s)?);
    let n = resolve_n(n, &[r1.clone(), r2.clone(), rs.clone()])?;
    let nr = Rat::from_integer(n);
    let w1 = ratlin::column_space(&r1.scale(&nr));
    let w2 = ratlin::column_space(&r2.scale(&nr));
    let image = rs.scale(&nr).mul(&w1)?;
    let inside = image.cols() == 0 || ratlin::rank(&w2.hstack(&image)?) == w2.cols();
    let injective = ratlin::rank(&image) == w1.cols();
    Ok(inside && injective && w1.cols() == w2.cols())
}

/// `Mat_m(K)` inside an algebra: matrix units and a field basis, all as
/// elements of that algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixPresentation {
    pub units: Vec<Vec<AlgebraElement>>,
    pub field_basis: Vec<AlgebraElement>,
}

impl MatrixPresentation {
    /// The presentation of `matrix_algebra_over(k, m)`: units `E_jl ⊗ 1`,
    /// field elements `1 ⊗ κ`.
    pub fn standard(k: &StructureAlgebra, m: usize) -> Self {
        let d = k.dim();
        let n = m * m * d;
        let embed = |j: usize, l: usize, kv: &[Rat]| {
            let mut v = zero_vec(n);
            for (i, c) in kv.iter().enumerate() {
                v[(j * m + l) * d + i] = c.clone();
            }
            v
        };
        let units = (0..m)
            .map(|j| (0..m).map(|l| embed(j, l, k.unit())).collect())
            .collect();
        let field_basis = (0..d)
            .map(|i| {
                let kv = k.basis_element(i);
                (0..m).fold(zero_vec(n), |acc, j| ratlin::vec_add(&acc, &embed(j, j, &kv)))
            })
            .collect();
        MatrixPresentation { units, field_basis }
    }

    /// The presentation given by a single certificate factor.
    pub fn from_factor(f: &Factor) -> Self {
        MatrixPresentation {
            units: f.units.clone(),
            field_basis: f.field_basis.clone(),
        }
    }

    pub fn size(&self) -> usize {
        self.units.len()
    }

    fn validate(&self, a: &StructureAlgebra) -> Result<()> {
        let m = self.size();
        let d = self.field_basis.len();
        if m == 0 || d == 0 || self.units.iter().any(|r| r.len() != m) {
            return Err(Error::Precondition("presentation must have a square unit table and a field".into()));
        }
        for j in 0..m {
            for l in 0..m {
                for p in 0..m {
                    for q in 0..m {
                        let prod = a.mul(&self.units[j][l], &self.units[p][q])?;
                        let ok = if l == p { prod == self.units[j][q] } else { is_zero_vec(&prod) };
                        if !ok {
                            return Err(Error::Precondition(format!(
                                "unit relation fails for ({j},{l},{p},{q})"
                            )));
                        }
                    }
                }
            }
        }
        if (0..m).fold(zero_vec(a.dim()), |acc, j| ratlin::vec_add(&acc, &self.units[j][j])) != *a.unit() {
            return Err(Error::Precondition("diagonal units do not sum to 1".into()));
        }
        NumberField::from_elements(a, &self.field_basis, a.unit())?;
        for k in &self.field_basis {
            for u in self.units.iter().flatten() {
                if a.mul_unchecked(k, u) != a.mul_unchecked(u, k) {
                    return Err(Error::Precondition("field does not commute with the units".into()));
                }
            }
        }
        let span: Vec<QVector> = self
            .field_basis
            .iter()
            .flat_map(|k| self.units.iter().flatten().map(move |u| (k, u)))
            .map(|(k, u)| a.mul_unchecked(k, u))
            .collect();
        if span.len() != a.dim() || ratlin::rank(&QMatrix::from_columns(a.dim(), &span)) != a.dim() {
            return Err(Error::Precondition("presentation does not span the algebra".into()));
        }
        Ok(())
    }
}

/// `ψ` and the checks of `ρ(u) = ψ · Mat_m(κ)(u) · ψ^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixEReport {
    pub n: BigInt,
    pub psi: QMatrix,
    /// `κ(a)` on the image of `ρ(N E_11)`, for each field basis element.
    pub kappa: Vec<QMatrix>,
    pub checks: Vec<CheckResult>,
}

impl MatrixEReport {
    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }
}

impl fmt::Display for MatrixEReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "N = {}, psi {}x{}", self.n, self.psi.rows(), self.psi.cols())?;
        fmt_checks(f, &self.checks)
    }
}

/// Builds `ψ` from the image of `ρ(N E_11)` and the transposition elements
/// `s_1i`, then checks the conjugation identity on every `κ_a·E_jl`.
pub fn matrix_e_model(
    model: &TateRepModel,
    pres: &MatrixPresentation,
    n: Option<BigInt>,
) -> Result<MatrixEReport> {
    let a = model.algebra();
    pres.validate(a)?;
    let m = pres.size();
    let unit_images: Vec<QMatrix> = pres
        .units
        .iter()
        .flatten()
        .map(|u| model.rho(u))
        .collect::<Result<_>>()?;
    let n = resolve_n(n, &unit_images)?;
    let nr = Rat::from_integer(n.clone());
    let size = 2 * model.g();
    let e = &pres.units;
    let z1 = ratlin::column_space(&model.rho(&e[0][0])?.scale(&nr));
    let r = z1.cols();
    let mut checks = Vec::new();
    checks.push(check("copies fill the space", r * m == size, || {
        format!("{m} copies of dimension {r} for a space of dimension {size}")
    }));

    // s_1i = 1 − (e_11 + e_ii) + (e_1i + e_i1), s_11 = 1
    let mut psi = QMatrix::zeros(size, 0);
    for i in 0..m {
        let s1i = if i == 0 {
            a.unit().clone()
        } else {
            let mut v = a.unit().clone();
            v = vec_sub(&v, &e[0][0]);
            v = vec_sub(&v, &e[i][i]);
            v = ratlin::vec_add(&v, &e[0][i]);
            ratlin::vec_add(&v, &e[i][0])
        };
        let block = model.rho(&s1i)?.scale(&nr).mul(&z1)?;
        psi = psi.hstack(&block)?;
    }
    let psi_inv = if psi.cols() == size { ratlin::inverse(&psi)? } else { None };
    checks.push(check("psi invertible", psi_inv.is_some(), || "psi is singular".into()));

    let mut kappa = Vec::with_capacity(pres.field_basis.len());
    for (ai, k) in pres.field_basis.iter().enumerate() {
        let t = ratlin::solve_matrix(&z1, &model.rho(k)?.mul(&z1)?)?;
        checks.push(check(format!("field element {ai} preserves Z_1"), t.is_some(), || {
            "image leaves Z_1".into()
        }));
        kappa.push(t.unwrap_or_else(|| QMatrix::zeros(r, r)));
    }
    if psi_inv.is_some() {
        for (ai, k) in pres.field_basis.iter().enumerate() {
            for (j, row) in e.iter().enumerate() {
                for (l, ejl) in row.iter().enumerate() {
                    let u = a.mul_unchecked(k, ejl);
                    let mut mat_u = QMatrix::zeros(size, size);
                    mat_u.set_block(j * r, l * r, &kappa[ai]);
                    let lhs = model.rho(&u)?.mul(&psi)?;
                    let rhs = psi.mul(&mat_u)?;
                    checks.push(check(
                        format!("ρ(κ_{ai} E_{j}{l}) ψ = ψ Mat(κ)(κ_{ai} E_{j}{l})"),
                        lhs == rhs,
                        || "conjugation identity fails".into(),
                    ));
                }
            }
        }
    }
    Ok(MatrixEReport {
        n,
        psi,
        kappa,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constructions::*;
    use crate::ratlin::{frac, rat};
    use crate::splittable::{splittable_subalgebra, verify_certificate};

    fn qi() -> NumberField {
        NumberField::new(number_field(&QPoly::from_i64(&[1, 0, 1])).unwrap()).unwrap()
    }

    #[test]
    fn regular_matrix_examples() {
        let k = qi();
        assert!(regular_matrix(&k, k.algebra().unit()).unwrap().is_identity());
        assert_eq!(
            regular_matrix(&k, &[rat(0), rat(1)]).unwrap(),
            QMatrix::from_i64(&[&[0, -1], &[1, 0]])
        );
        let r2 = NumberField::new(number_field(&QPoly::from_i64(&[-2, 0, 1])).unwrap()).unwrap();
        assert_eq!(
            regular_matrix(&r2, &[rat(0), rat(1)]).unwrap(),
            QMatrix::from_i64(&[&[0, 2], &[1, 0]])
        );
        assert!(regular_matrix(&k, &[rat(1)]).is_err());
        assert!(NumberField::new(number_field(&QPoly::from_i64(&[-1, 0, 1])).unwrap()).is_err());
    }

    #[test]
    fn field_case() {
        let k = qi();
        let t = tate_matrix_field(&k, 1, &[rat(0), rat(1)]).unwrap();
        assert_eq!(t.matrix, QMatrix::from_i64(&[&[0, -1], &[1, 0]]));
        assert_eq!(t.charpoly, QPoly::from_i64(&[1, 0, 1]));
        let q = NumberField::rationals();
        let t = tate_matrix_field(&q, 2, &[rat(3)]).unwrap();
        assert_eq!(t.matrix, QMatrix::scalar(4, &rat(3)));
        assert_eq!(t.charpoly, QPoly::from_i64(&[-3, 1]).pow(4));
        let t = tate_matrix_field(&k, 3, &[rat(0), rat(1)]).unwrap();
        assert_eq!(t.size(), 6);
        assert_eq!(t.charpoly, QPoly::from_i64(&[1, 0, 1]).pow(3));
        let cubic = NumberField::new(number_field(&QPoly::from_i64(&[-2, 0, 0, 1])).unwrap()).unwrap();
        assert!(tate_matrix_field(&cubic, 1, &[rat(1), rat(0), rat(0)]).is_err());
    }

    #[test]
    fn matrix_algebra_case() {
        let q = NumberField::rationals();
        let e = |c: i64| vec![rat(c)];
        let t = tate_matrix_matrixalg(&q, 2, 2, &[vec![e(0), e(1)], vec![e(0), e(0)]]).unwrap();
        let mut want = QMatrix::zeros(4, 4);
        want.set_block(0, 2, &QMatrix::identity(2));
        assert_eq!(t.matrix, want);
        let id = tate_matrix_matrixalg(&q, 2, 2, &[vec![e(1), e(0)], vec![e(0), e(1)]]).unwrap();
        assert!(id.matrix.is_identity());
        let k = qi();
        let u = vec![rat(2), rat(-1)];
        let z = vec![rat(0), rat(0)];
        let t = tate_matrix_matrixalg(&k, 2, 2, &[vec![u.clone(), z.clone()], vec![z, u.clone()]]).unwrap();
        let m0 = regular_matrix(&k, &u).unwrap();
        assert_eq!(t.matrix, QMatrix::block_diagonal(&[m0.clone(), m0]));
        assert!(tate_matrix_matrixalg(&k, 2, 1, &[vec![u.clone(), u.clone()], vec![u.clone(), u]]).is_err());
    }

    #[test]
    fn semisimple_case() {
        // scalars
        let m2 = matrix_algebra(2);
        let cert = splittable_subalgebra(&m2, &m2.zero()).unwrap();
        let plan = MultiplicityPlan { copies: vec![3] };
        let t = tate_matrix_semisimple(&cert, &plan, &m2.scalar(&frac(2, 3))).unwrap();
        assert_eq!(t.matrix, QMatrix::scalar(3, &frac(2, 3)));

        // Mat_2(Q) on its standard module
        let f = m2.basis_element(1);
        let cert = splittable_subalgebra(&m2, &f).unwrap();
        let plan = MultiplicityPlan { copies: vec![1] };
        plan.check(&cert, 1).unwrap();
        let t = tate_matrix_semisimple(&cert, &plan, &f).unwrap();
        // conjugate to E_12: nilpotent of rank one
        assert_eq!(t.charpoly, QPoly::from_i64(&[0, 0, 1]));
        assert_eq!(ratlin::rank(&t.matrix), 1);
    }

    #[test]
    fn two_field_blocks() {
        let k = number_field(&QPoly::from_i64(&[1, 0, 1])).unwrap();
        let a = direct_sum(&[k.clone(), k]);
        let u = vec![rat(0), rat(1), rat(0), rat(-1)];
        let cert = splittable_subalgebra(&a, &u).unwrap();
        assert!(verify_certificate(&cert, &u).ok());
        let plan = MultiplicityPlan { copies: vec![1, 1] };
        plan.check(&cert, 2).unwrap();
        let t = tate_matrix_semisimple(&cert, &plan, &u).unwrap();
        assert_eq!(t.charpoly, QPoly::from_i64(&[1, 0, 1]).pow(2));
        assert_eq!(t.matrix.mul(&t.matrix).unwrap(), QMatrix::scalar(4, &rat(-1)));
    }

    #[test]
    fn homomorphism_law() {
        let a = crate::algebra::constructions::group_algebra(&crate::groups::Group::symmetric3());
        let f = int_element(&[1, 2, 0, -1, 0, 1]);
        let cert = splittable_subalgebra(&a, &f).unwrap();
        let plan = MultiplicityPlan {
            copies: vec![1; cert.factors.len()],
        };
        let basis = cert.sub_basis.columns();
        let mats: Vec<QMatrix> = basis
            .iter()
            .map(|x| tate_matrix_semisimple(&cert, &plan, x).unwrap().matrix)
            .collect();
        for (i, x) in basis.iter().enumerate() {
            for (j, y) in basis.iter().enumerate() {
                let xy = tate_matrix_semisimple(&cert, &plan, &a.mul(x, y).unwrap()).unwrap();
                assert_eq!(xy.matrix, mats[i].mul(&mats[j]).unwrap());
            }
        }
        assert!(tate_matrix_semisimple(&cert, &plan, a.unit()).unwrap().matrix.is_identity());
    }

    #[test]
    fn integrality() {
        let t = TateMatrix::new(QMatrix::from_i64(&[&[0, -1], &[1, 0]])).unwrap();
        assert!(weil_integrality_check(&t, true).passed());
        let half = TateMatrix::new(QMatrix::scalar(2, &frac(1, 2))).unwrap();
        let r = weil_integrality_check(&half, true);
        assert!(!r.passed() && !r.charpoly_integral);
        let z = TateMatrix::new(QMatrix::zeros(4, 4)).unwrap();
        assert_eq!(z.charpoly, QPoly::monomial(rat(1), 4));
        assert!(weil_integrality_check(&z, true).passed());
    }

    fn qq_model() -> TateRepModel {
        let a = direct_sum(&[matrix_algebra(1), matrix_algebra(1)]);
        let rho = vec![QMatrix::from_i64(&[&[1, 0], &[0, 0]]), QMatrix::from_i64(&[&[0, 0], &[0, 1]])];
        TateRepModel::new(a, 1, rho).unwrap()
    }

    #[test]
    fn split_trivial() {
        let model = qq_model();
        let es = vec![int_element(&[1, 0]), int_element(&[0, 1])];
        let rep = split_representation(&model, &es, None).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.n, BigInt::one());
        assert!(rep.s.is_identity());
        let bad = vec![int_element(&[1, 0]), int_element(&[0, 0])];
        assert!(split_representation(&model, &bad, None).is_err());
    }

    /// `Mat_2(Q) ⊕ Q` on `Q^4 ⊕ Q^2`, conjugated by a rational matrix so
    /// that denominators appear.
    fn mixed_model() -> TateRepModel {
        let a = direct_sum(&[matrix_algebra(2), matrix_algebra(1)]);
        let mut rho = Vec::new();
        for i in 0..4 {
            let x = crate::decomp::element_to_matrix(&matrix_algebra(2).basis_element(i), 2);
            rho.push(QMatrix::block_diagonal(&[x.clone(), x, QMatrix::zeros(2, 2)]));
        }
        rho.push(QMatrix::block_diagonal(&[QMatrix::zeros(4, 4), QMatrix::identity(2)]));
        let mut g = QMatrix::identity(6);
        g[(0, 5)] = frac(1, 2);
        g[(4, 1)] = rat(3);
        let gi = ratlin::inverse(&g).unwrap().unwrap();
        let rho = rho
            .iter()
            .map(|m| g.mul(m).unwrap().mul(&gi).unwrap())
            .collect();
        TateRepModel::new(a, 3, rho).unwrap()
    }

    #[test]
    fn split_mixed() {
        let model = mixed_model();
        let es = crate::algebra::central_idempotents(model.algebra()).unwrap();
        let rep = split_representation(&model, &es, None).unwrap();
        assert!(rep.passed(), "{rep}");
        let mut dims = rep.block_dims.clone();
        dims.sort();
        assert_eq!(dims, vec![2, 4]);
        assert!(split_representation(&model, &es, Some(BigInt::from(3))).is_err());
        let rep = split_representation(&model, &es, Some(BigInt::from(4))).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn model_invariants() {
        let a = direct_sum(&[matrix_algebra(1), matrix_algebra(1)]);
        // not injective: both summands act by the identity on one line
        let rho = vec![QMatrix::identity(2), QMatrix::zeros(2, 2)];
        assert!(TateRepModel::new(a.clone(), 1, rho).is_err());
        let rho = vec![QMatrix::identity(2), QMatrix::identity(2)];
        assert!(TateRepModel::new(a, 1, rho).is_err());
    }

    fn mat2_model() -> TateRepModel {
        let m2 = matrix_algebra(2);
        let rho = (0..4)
            .map(|i| {
                let x = crate::decomp::element_to_matrix(&m2.basis_element(i), 2);
                QMatrix::block_diagonal(&[x.clone(), x])
            })
            .collect();
        TateRepModel::new(m2, 2, rho).unwrap()
    }

    #[test]
    fn conjugate_images() {
        let model = mat2_model();
        let a = model.algebra().clone();
        let swap = int_element(&[0, 1, 1, 0]);
        assert!(conj_isogeny_check(&model, &a.basis_element(0), &a.basis_element(3), &swap, None).unwrap());
        assert!(conj_isogeny_check(&model, a.unit(), a.unit(), a.unit(), None).unwrap());
        assert!(conj_isogeny_check(&model, &a.basis_element(0), &a.basis_element(3), &a.basis_element(1), None).is_err());
        assert!(conj_isogeny_check(&model, &a.basis_element(0), &a.basis_element(0), &swap, None).is_err());
    }

    #[test]
    fn matrix_e_on_two_copies() {
        let model = mat2_model();
        let pres = MatrixPresentation::standard(&matrix_algebra(1), 2);
        let rep = matrix_e_model(&model, &pres, None).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks.len(), 2 + 1 + 4);
    }

    #[test]
    fn matrix_e_over_a_field() {
        // Mat_2(Q(i)) acting on Q^8 through its own left regular action
        let k = number_field(&QPoly::from_i64(&[1, 0, 1])).unwrap();
        let a = matrix_algebra_over(&k, 2);
        let rho = (0..8).map(|i| a.left_regular(&a.basis_element(i)).unwrap()).collect();
        let model = TateRepModel::new(a.clone(), 4, rho).unwrap();
        let pres = MatrixPresentation::standard(&k, 2);
        let rep = matrix_e_model(&model, &pres, None).unwrap();
        assert!(rep.passed(), "{rep}");
        // m = 1 reduces to a change of basis
        let model1 = TateRepModel::new(k.clone(), 1, (0..2).map(|i| k.left_regular(&k.basis_element(i)).unwrap()).collect()).unwrap();
        let rep = matrix_e_model(&model1, &MatrixPresentation::standard(&k, 1), None).unwrap();
        assert!(rep.passed(), "{rep}");
    }
}
