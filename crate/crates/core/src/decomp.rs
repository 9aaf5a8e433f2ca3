//! Element-level decompositions: reduced trace, Jordan–Chevalley,
//! Jacobson–Morozov triples, sl(2)-module structure, and matrix units.

use num_integer::Roots;
use num_traits::One;

use crate::algebra::constructions::matrix_algebra;
use crate::algebra::{AlgebraElement, BaseFieldTag, StructureAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::qpoly::{modinv_in_quotient, squarefree_part, QPoly};
use crate::ratlin::{
    self, is_zero_vec, vec_axpy, vec_scale, vec_sub, zero_vec, QMatrix, QVector, Rat,
};

/// `f = s + n` with `s = witness_poly(f)` semisimple and `n` nilpotent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanPair {
    pub semisimple_part: AlgebraElement,
    pub nilpotent_part: AlgebraElement,
    pub witness_poly: QPoly,
}

/// Elements with `[h,e] = 2e`, `[h,y] = −2y`, `[e,y] = h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: AlgebraElement,
    pub h: AlgebraElement,
    pub y: AlgebraElement,
}

/// One isotypic component: `multiplicity` strands of highest weight
/// `highest_weight`. Columns of `adapted_basis` are `v, Yv, …, Y^n v` for
/// each highest-weight vector `v` in turn.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotypicBlock {
    pub highest_weight: usize,
    pub multiplicity: usize,
    pub adapted_basis: QMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2ModuleDecomposition {
    pub dim: usize,
    /// Ordered by decreasing highest weight.
    pub blocks: Vec<IsotypicBlock>,
}

/// Matrix units `units[j][l]` for one isotypic block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixUnitTable {
    pub highest_weight: usize,
    pub units: Vec<Vec<AlgebraElement>>,
}

impl MatrixUnitTable {
    pub fn size(&self) -> usize {
        self.units.len()
    }

    /// `Σ_j E_jj`
    pub fn identity(&self) -> AlgebraElement {
        let mut acc = zero_vec(self.units[0][0].len());
        for j in 0..self.size() {
            vec_axpy(&mut acc, &Rat::one(), &self.units[j][j]);
        }
        acc
    }
}

fn check_center(a: &StructureAlgebra, k: &BaseFieldTag) -> Result<usize> {
    let z = a.center()?;
    if z.space() != k.field.space() {
        return Err(Error::CenterMismatch(format!(
            "center has dimension {}, base field has dimension {}",
            z.dim(),
            k.field.dim()
        )));
    }
    let (n, d) = (a.dim(), k.field.dim());
    let m2 = n / d;
    let m = m2.sqrt();
    if n % d != 0 || m * m != m2 {
        return Err(Error::NotSquareDimension { dim: m2 });
    }
    Ok(m)
}

/// Reduced trace of `x` over the central field `k`, in `k`'s coordinates.
pub fn reduced_trace(a: &StructureAlgebra, k: &BaseFieldTag, x: &[Rat]) -> Result<QVector> {
    let m = check_center(a, k)?;
    let _ = a.mul(x, a.unit())?;
    let kb = k.field.basis_vectors();
    let kalg = k.field.induced();
    let d = kb.len();
    // Tr_{A/Q}(x κ_j) = Tr_{k/Q}(κ_j · T) with T the k-linear trace of L_x
    let gram = kalg.trace_form();
    let rhs: QVector = kb
        .iter()
        .map(|kj| a.regular_trace(&a.mul_unchecked(x, kj)))
        .collect();
    let t = ratlin::solve(&gram, &rhs)?.ok_or_else(|| {
        Error::Precondition("trace form of the base field is degenerate".into())
    })?;
    debug_assert_eq!(t.len(), d);
    Ok(vec_scale(&t, &(Rat::one() / Rat::from_integer(m.into()))))
}

/// `f − (tr(f)/m)·1`, which has reduced trace zero.
pub fn project_to_sl(a: &StructureAlgebra, k: &BaseFieldTag, f: &[Rat]) -> Result<AlgebraElement> {
    let m = check_center(a, k)?;
    let tr = reduced_trace(a, k, f)?;
    let central = k.field.to_parent(&tr);
    let scale = Rat::one() / Rat::from_integer(m.into());
    Ok(vec_sub(f, &vec_scale(&central, &scale)))
}

/// Jordan–Chevalley decomposition via Newton iteration in `Q[t]/(μ_f)`.
pub fn jordan_chevalley(a: &StructureAlgebra, f: &[Rat]) -> Result<JordanPair> {
    let mu = a.minpoly_element(f)?;
    let g = squarefree_part(&mu)?;
    let dg = g.derivative();
    let deg = mu.degree().unwrap_or(0).max(1);
    let rounds = usize::BITS as usize - (deg - 1).leading_zeros() as usize + 1;
    let mut z = QPoly::t().rem(&mu);
    for _ in 0..rounds {
        let gz = g.compose_mod(&z, &mu);
        if gz.is_zero() {
            break;
        }
        let inv = modinv_in_quotient(&dg.compose_mod(&z, &mu), &mu)?
            .ok_or_else(|| Error::Precondition("derivative not invertible".into()))?;
        z = (&z - &(&gz * &inv)).rem(&mu);
    }
    let s = a.eval_poly(&z, f);
    let n = vec_sub(f, &s);
    Ok(JordanPair {
        semisimple_part: s,
        nilpotent_part: n,
        witness_poly: z,
    })
}

fn ad(a: &StructureAlgebra, x: &[Rat]) -> Result<QMatrix> {
    a.left_regular(x)?.sub(&a.right_regular(x)?)
}

/// Completes a nilpotent `e` to an sl(2)-triple commuting with `k`.
pub fn jacobson_morozov(a: &StructureAlgebra, k: &BaseFieldTag, e: &[Rat]) -> Result<Sl2Triple> {
    let n = a.dim();
    if is_zero_vec(e) {
        return Err(Error::Precondition("nilpotent element is zero".into()));
    }
    let mu = a.minpoly_element(e)?;
    let r = mu.degree().unwrap_or(0);
    if mu != QPoly::monomial(Rat::one(), r) {
        return Err(Error::Precondition(format!("element is not nilpotent: minpoly {mu}")));
    }
    let ad_e = ad(a, e)?;
    let mut commute = QMatrix::zeros(0, n);
    for kappa in k.field.basis_vectors() {
        commute = commute.vstack(&ad(a, &kappa)?)?;
    }
    let zeros = |len: usize| zero_vec(len);

    // h = [e, z] with [e, [e, z]] = −2e
    let sys = ad_e.mul(&ad_e)?.vstack(&commute)?;
    let mut rhs = vec_scale(e, &Rat::from_integer((-2).into()));
    rhs.extend(zeros(commute.rows()));
    let z = ratlin::solve(&sys, &rhs)?
        .ok_or_else(|| Error::Infeasible("no neutral element for the nilpotent".into()))?;
    let h = ad_e.mul_vec(&z)?;

    // [e, y] = h and [h, y] = −2y
    let ad_h2 = ad(a, &h)?.add(&QMatrix::scalar(n, &Rat::from_integer(2.into())))?;
    let sys = ad_e.vstack(&ad_h2)?.vstack(&commute)?;
    let mut rhs = h.clone();
    rhs.extend(zeros(n + commute.rows()));
    let y = ratlin::solve(&sys, &rhs)?
        .ok_or_else(|| Error::Infeasible("no opposite nilpotent for the triple".into()))?;
    let triple = Sl2Triple {
        e: e.to_vec(),
        h,
        y,
    };
    check_triple(a, &triple)?;
    Ok(triple)
}

/// Checks the three bracket relations of a triple exactly.
pub fn check_triple(a: &StructureAlgebra, t: &Sl2Triple) -> Result<()> {
    let two = Rat::from_integer(2.into());
    if a.bracket(&t.h, &t.e) != vec_scale(&t.e, &two) {
        return Err(Error::Sl2Relations("[h,e] != 2e".into()));
    }
    if a.bracket(&t.h, &t.y) != vec_scale(&t.y, &-two) {
        return Err(Error::Sl2Relations("[h,y] != -2y".into()));
    }
    if a.bracket(&t.e, &t.y) != t.h {
        return Err(Error::Sl2Relations("[e,y] != h".into()));
    }
    Ok(())
}

/// Isotypic decomposition of a finite-dimensional sl(2)-module given by the
/// operators of `e`, `h`, `y`.
pub fn sl2_decompose(e: &QMatrix, h: &QMatrix, y: &QMatrix) -> Result<Sl2ModuleDecomposition> {
    let dim = e.rows();
    for m in [e, h, y] {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::DimensionMismatch("sl2 operators must share one square shape".into()));
        }
    }
    let two = Rat::from_integer(2.into());
    if h.bracket(e)? != e.scale(&two) {
        return Err(Error::Sl2Relations("[H,E] != 2E".into()));
    }
    if h.bracket(y)? != y.scale(&-two.clone()) {
        return Err(Error::Sl2Relations("[H,Y] != -2Y".into()));
    }
    if &e.bracket(y)? != h {
        return Err(Error::Sl2Relations("[E,Y] != H".into()));
    }
    let mut blocks = Vec::new();
    let mut total = 0;
    for n in (0..dim).rev() {
        let shifted = h.sub(&QMatrix::scalar(dim, &Rat::from_integer((n as i64).into())))?;
        let tops = ratlin::kernel_basis(&e.vstack(&shifted)?).columns();
        if tops.is_empty() {
            continue;
        }
        let mut cols = Vec::with_capacity(tops.len() * (n + 1));
        for v in &tops {
            let mut w = v.clone();
            for _ in 0..=n {
                let next = y.mul_vec(&w)?;
                cols.push(w);
                w = next;
            }
            if !is_zero_vec(&w) {
                return Err(Error::Sl2Relations(format!(
                    "strand of highest weight {n} does not terminate"
                )));
            }
        }
        total += (n + 1) * tops.len();
        blocks.push(IsotypicBlock {
            highest_weight: n,
            multiplicity: tops.len(),
            adapted_basis: QMatrix::from_columns(dim, &cols),
        });
    }
    if total != dim {
        return Err(Error::Sl2Relations(format!(
            "strands span {total} of {dim} dimensions"
        )));
    }
    Ok(Sl2ModuleDecomposition { dim, blocks })
}

/// Matrix units of `c` read off the adapted basis of its faithful module
/// `A` (left multiplication). `d` must decompose `A` under the triple that
/// generates `c`.
pub fn matrix_units_from_sl2(
    a: &StructureAlgebra,
    c: &Subalgebra,
    d: &Sl2ModuleDecomposition,
) -> Result<Vec<MatrixUnitTable>> {
    let n = a.dim();
    if d.dim != n {
        return Err(Error::DimensionMismatch(format!(
            "module of dimension {} for an algebra of dimension {n}",
            d.dim
        )));
    }
    let all_cols: Vec<QVector> = d
        .blocks
        .iter()
        .flat_map(|b| b.adapted_basis.columns())
        .collect();
    let w = QMatrix::from_columns(n, &all_cols);
    let winv = ratlin::inverse(&w)?
        .ok_or_else(|| Error::Sl2Relations("adapted bases are not independent".into()))?;
    let mut out = Vec::with_capacity(d.blocks.len());
    let mut offset = 0;
    for b in &d.blocks {
        let size = b.highest_weight + 1;
        let mut units = vec![Vec::with_capacity(size); size];
        for (j, row) in units.iter_mut().enumerate() {
            for l in 0..size {
                // diagonal pattern sending strand position l to position j
                let mut diag = QMatrix::zeros(n, n);
                for r in 0..b.multiplicity {
                    diag[(offset + r * size + j, offset + r * size + l)] = Rat::one();
                }
                let t = w.mul(&diag)?.mul(&winv)?;
                let elem = t.mul_vec(a.unit())?;
                if !c.contains(&elem) || a.left_regular(&elem)? != t {
                    return Err(Error::Sl2Relations(format!(
                        "unit ({j},{l}) of the weight-{} block is not in the subalgebra",
                        b.highest_weight
                    )));
                }
                row.push(elem);
            }
        }
        offset += b.multiplicity * size;
        out.push(MatrixUnitTable {
            highest_weight: b.highest_weight,
            units,
        });
    }
    Ok(out)
}

/// Row-major vectorisation of a square matrix as an element of `Mat_d(Q)`.
pub fn matrix_to_element(m: &QMatrix) -> AlgebraElement {
    m.entries().to_vec()
}

pub fn element_to_matrix(x: &[Rat], d: usize) -> QMatrix {
    QMatrix::from_vec(d, d, x.to_vec()).expect("square element")
}

/// Commutant of a family of operators, as a subalgebra of
/// `Mat_d(Q) = matrix_algebra(d)`.
pub fn commutant(action: &[QMatrix], d: usize) -> Result<Subalgebra> {
    let big = matrix_algebra(d);
    let dd = d * d;
    let mut eqs = QMatrix::zeros(0, dd);
    for m in action {
        if m.rows() != d || m.cols() != d {
            return Err(Error::DimensionMismatch("operator of the wrong size".into()));
        }
        let me = matrix_to_element(m);
        // X ↦ XM − MX, written on the row-major coordinates of X
        let op = big.right_regular(&me)?.sub(&big.left_regular(&me)?)?;
        eqs = eqs.vstack(&op)?;
    }
    let k = ratlin::kernel_basis(&eqs);
    Subalgebra::from_spanning(&big, &k.columns(), Some(big.unit().clone()))
}
