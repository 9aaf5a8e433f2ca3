//! Construction of a splittable subalgebra containing `1` and a given
//! element, with a certificate (explicit matrix units over number fields)
//! and an independent verifier.

use std::fmt;

use num_traits::One;
use rayon::prelude::*;

use crate::algebra::{
    central_idempotents, field_certify, AlgebraElement, BaseFieldTag, StructureAlgebra,
    Subalgebra, Subspace,
};
use crate::decomp::{
    jacobson_morozov, jordan_chevalley, matrix_units_from_sl2, project_to_sl, sl2_decompose,
    MatrixUnitTable, Sl2ModuleDecomposition,
};
use crate::error::{Error, Result};
use crate::ratlin::{self, is_zero_vec, vec_add, vec_axpy, zero_vec, QMatrix, QVector, Rat};

/// One simple summand `Mat_m(K)` of the certified subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Basis of the field `K`, as elements of the ambient algebra.
    pub field_basis: Vec<AlgebraElement>,
    /// `units[j][l] = E_jl`
    pub units: Vec<Vec<AlgebraElement>>,
}

impl Factor {
    pub fn size(&self) -> usize {
        self.units.len()
    }

    pub fn field_degree(&self) -> usize {
        self.field_basis.len()
    }

    /// `Σ_j E_jj`
    pub fn identity(&self) -> AlgebraElement {
        let len = self.units.first().and_then(|r| r.first()).map_or(0, Vec::len);
        let mut acc = zero_vec(len);
        for j in 0..self.size() {
            vec_axpy(&mut acc, &Rat::one(), &self.units[j][j]);
        }
        acc
    }

    /// `{κ·E_jl}`, which spans the factor.
    pub fn spanning_set(&self, a: &StructureAlgebra) -> Vec<QVector> {
        let mut out = Vec::with_capacity(self.field_degree() * self.size() * self.size());
        for k in &self.field_basis {
            for u in self.units.iter().flatten() {
                out.push(a.mul_unchecked(k, u));
            }
        }
        out
    }

    fn sort_key(&self) -> Vec<Rat> {
        self.units
            .iter()
            .flatten()
            .chain(&self.field_basis)
            .flatten()
            .cloned()
            .collect()
    }

    fn map(&self, emb: &QMatrix) -> Result<Factor> {
        let m = |v: &QVector| emb.mul_vec(v);
        Ok(Factor {
            field_basis: self.field_basis.iter().map(m).collect::<Result<_>>()?,
            units: self
                .units
                .iter()
                .map(|row| row.iter().map(m).collect::<Result<_>>())
                .collect::<Result<_>>()?,
        })
    }
}

/// A subalgebra `C` of `ambient` with its decomposition into factors and
/// the coordinates of `1` and `f` in the basis of `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplittableCertificate {
    pub ambient: StructureAlgebra,
    /// Columns span `C`, in canonical reduced form.
    pub sub_basis: QMatrix,
    pub factors: Vec<Factor>,
    pub witness_unit: Option<QVector>,
    pub witness_f: Option<QVector>,
}

impl SplittableCertificate {
    pub fn dim(&self) -> usize {
        self.sub_basis.cols()
    }

    /// `(m_i, dim_Q K_i)` for every factor, in certificate order.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.factors
            .iter()
            .map(|f| (f.size(), f.field_degree()))
            .collect()
    }

    /// Assembles a certificate from factors; `target` is the element whose
    /// coordinates become `witness_f`, `unit` the one for `witness_unit`.
    pub fn from_factors(
        ambient: &StructureAlgebra,
        mut factors: Vec<Factor>,
        unit: &[Rat],
        target: &[Rat],
    ) -> SplittableCertificate {
        sort_factors(&mut factors);
        let spanning: Vec<QVector> = factors
            .iter()
            .flat_map(|f| f.spanning_set(ambient))
            .collect();
        let space = Subspace::from_spanning(ambient.dim(), &spanning);
        SplittableCertificate {
            ambient: ambient.clone(),
            sub_basis: space.basis().clone(),
            witness_unit: space.coords_of(unit),
            witness_f: space.coords_of(target),
            factors,
        }
    }

    /// Transports a certificate for a subalgebra `B` (with `B`'s basis given
    /// by the columns of `emb`) into the ambient algebra `a ⊇ B`.
    pub fn embed(&self, a: &StructureAlgebra, emb: &QMatrix) -> Result<SplittableCertificate> {
        if emb.rows() != a.dim() || emb.cols() != self.ambient.dim() {
            return Err(Error::DimensionMismatch("embedding has the wrong shape".into()));
        }
        let factors = self
            .factors
            .iter()
            .map(|f| f.map(emb))
            .collect::<Result<Vec<_>>>()?;
        let back = |w: &Option<QVector>| -> Result<Option<QVector>> {
            w.as_ref()
                .map(|c| emb.mul_vec(&self.sub_basis.mul_vec(c)?))
                .transpose()
        };
        let unit = back(&self.witness_unit)?.unwrap_or_else(|| zero_vec(a.dim()));
        let target = back(&self.witness_f)?.unwrap_or_else(|| zero_vec(a.dim()));
        let mut cert = Self::from_factors(a, factors, &unit, &target);
        if self.witness_unit.is_none() {
            cert.witness_unit = None;
        }
        if self.witness_f.is_none() {
            cert.witness_f = None;
        }
        Ok(cert)
    }

    fn witness_element(&self, w: &Option<QVector>) -> Option<QVector> {
        w.as_ref().and_then(|c| self.sub_basis.mul_vec(c).ok())
    }
}

fn sort_factors(factors: &mut [Factor]) {
    factors.sort_by(|a, b| {
        (a.size(), a.field_degree())
            .cmp(&(b.size(), b.field_degree()))
            .then_with(|| a.sort_key().cmp(&b.sort_key()))
    });
}

/// Which branch of the recursion produced a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    /// dimension one over the base field
    BaseCase,
    /// split along central idempotents
    Decompose,
    /// pass to the center as the new base field
    Rebase,
    /// the element is a scalar over the base field
    Scalar,
    /// recurse into the centralizer of the semisimple part
    Centralize,
    /// nilpotent case: sl(2)-triple and matrix units
    Nilpotent,
}

/// One call of the recursion: its branch, dimension over its base field,
/// and the index of the calling node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceNode {
    pub step: Step,
    pub dim_over_base: usize,
    pub parent: Option<usize>,
    /// Present on nilpotent-case nodes.
    pub sl2: Option<Box<Sl2Record>>,
}

/// What the nilpotent case computed: the action of `h` on the local algebra,
/// its sl(2) decomposition, and the matrix units (in ambient coordinates).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Record {
    pub h_action: QMatrix,
    pub decomposition: Sl2ModuleDecomposition,
    pub tables: Vec<MatrixUnitTable>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SplitOptions {
    /// Run the branches of a decomposition on the rayon pool.
    pub parallel: bool,
}

/// A splittable subalgebra of `a` containing `1` and `f`, with certificate.
pub fn splittable_subalgebra(a: &StructureAlgebra, f: &[Rat]) -> Result<SplittableCertificate> {
    splittable_subalgebra_with(a, f, SplitOptions::default()).map(|(c, _)| c)
}

/// As [`splittable_subalgebra`], also returning the recursion trace.
pub fn splittable_subalgebra_with(
    a: &StructureAlgebra,
    f: &[Rat],
    opts: SplitOptions,
) -> Result<(SplittableCertificate, Vec<TraceNode>)> {
    if a.dim() == 0 {
        return Err(Error::Precondition("the algebra is zero".into()));
    }
    a.mul(f, a.unit())?;
    let node = Node {
        alg: a.clone(),
        emb: QMatrix::identity(a.dim()),
        base: vec![a.unit().clone()],
        f: f.to_vec(),
    };
    let (factors, trace) = node.split(opts)?;
    let cert = SplittableCertificate::from_factors(a, factors, a.unit(), f);
    if cert.witness_unit.is_none() || cert.witness_f.is_none() {
        return Err(Error::Infeasible(
            "constructed subalgebra misses the identity or the element".into(),
        ));
    }
    Ok((cert, trace))
}

/// A recursion state: an algebra with its embedding into the ambient one,
/// a central base field (basis in local coordinates), and the element.
struct Node {
    alg: StructureAlgebra,
    emb: QMatrix,
    base: Vec<QVector>,
    f: QVector,
}

type Split = (Vec<Factor>, Vec<TraceNode>);

impl Node {
    fn dim_over_base(&self) -> Result<usize> {
        let (n, d) = (self.alg.dim(), self.base.len());
        if d == 0 || n % d != 0 {
            return Err(Error::Divisibility(format!(
                "dimension {n} is not a multiple of the base field degree {d}"
            )));
        }
        Ok(n / d)
    }

    fn to_ambient(&self, v: &[Rat]) -> Result<QVector> {
        self.emb.mul_vec(v)
    }

    fn leaf(&self, step: Step, factors: Vec<Factor>) -> Result<Split> {
        Ok((
            factors,
            vec![TraceNode {
                step,
                dim_over_base: self.dim_over_base()?,
                parent: None,
                sl2: None,
            }],
        ))
    }

    /// The factor `K·1` for the current base field.
    fn scalar_factor(&self) -> Result<Factor> {
        Ok(Factor {
            field_basis: self
                .base
                .iter()
                .map(|k| self.to_ambient(k))
                .collect::<Result<_>>()?,
            units: vec![vec![self.to_ambient(self.alg.unit())?]],
        })
    }

    fn child(&self, sub: &Subalgebra, base: Vec<QVector>, f: QVector) -> Result<Node> {
        let coords = |v: &QVector| {
            sub.coords_of(v)
                .ok_or_else(|| Error::Infeasible("element escapes the subalgebra".into()))
        };
        Ok(Node {
            alg: sub.induced().clone(),
            emb: self.emb.mul(sub.basis())?,
            base: base.iter().map(coords).collect::<Result<_>>()?,
            f: coords(&f)?,
        })
    }

    fn descend(&self, step: Step, child: Node, opts: SplitOptions) -> Result<Split> {
        let (_, mut trace) = self.leaf(step, Vec::new())?;
        let (factors, sub) = child.split(opts)?;
        append_trace(&mut trace, sub, 0);
        Ok((factors, trace))
    }

    fn split(&self, opts: SplitOptions) -> Result<Split> {
        let a = &self.alg;
        if self.dim_over_base()? == 1 {
            return self.leaf(Step::BaseCase, vec![self.scalar_factor()?]);
        }

        let idem = central_idempotents(a)?;
        if idem.len() > 1 {
            let (_, mut trace) = self.leaf(Step::Decompose, Vec::new())?;
            let branch = |e: &QVector| -> Result<Split> {
                let image = ratlin::column_space(&a.left_regular(e)?).columns();
                let sub = Subalgebra::from_spanning(a, &image, Some(e.clone()))?;
                let base = self.base.iter().map(|k| a.mul_unchecked(e, k)).collect();
                let child = self.child(&sub, base, a.mul_unchecked(e, &self.f))?;
                child.split(opts)
            };
            let results: Vec<Result<Split>> = if opts.parallel {
                idem.par_iter().map(branch).collect()
            } else {
                idem.iter().map(branch).collect()
            };
            let mut factors = Vec::new();
            for r in results {
                let (fs, sub) = r?;
                factors.extend(fs);
                append_trace(&mut trace, sub, 0);
            }
            return Ok((factors, trace));
        }

        let center = a.center()?;
        if center.dim() > self.base.len() {
            let child = Node {
                alg: a.clone(),
                emb: self.emb.clone(),
                base: center.basis_vectors(),
                f: self.f.clone(),
            };
            return self.descend(Step::Rebase, child, opts);
        }

        let field = Subalgebra::from_spanning(a, &self.base, Some(a.unit().clone()))?;
        let tag = BaseFieldTag {
            field,
            certified: true,
        };
        let f0 = project_to_sl(a, &tag, &self.f)?;
        if is_zero_vec(&f0) {
            return self.leaf(Step::Scalar, vec![self.scalar_factor()?]);
        }

        let jp = jordan_chevalley(a, &f0)?;
        if !is_zero_vec(&jp.semisimple_part) {
            let z = a.centralizer(std::slice::from_ref(&jp.semisimple_part))?;
            if z.dim() >= a.dim() {
                return Err(Error::Infeasible(
                    "centralizer of a noncentral element is the whole algebra".into(),
                ));
            }
            let child = self.child(&z, self.base.clone(), self.f.clone())?;
            return self.descend(Step::Centralize, child, opts);
        }

        let triple = jacobson_morozov(a, &tag, &f0)?;
        let mut gens = vec![triple.e.clone(), triple.h.clone(), triple.y.clone()];
        gens.extend(self.base.iter().cloned());
        let c = a.subalgebra_generated(&gens, true)?;
        let h_action = a.left_regular(&triple.h)?;
        let d = sl2_decompose(&a.left_regular(&triple.e)?, &h_action, &a.left_regular(&triple.y)?)?;
        let tables = matrix_units_from_sl2(a, &c, &d)?;
        let expected: usize = tables
            .iter()
            .map(|t| t.size() * t.size() * self.base.len())
            .sum();
        if expected != c.dim() {
            return Err(Error::Infeasible(format!(
                "matrix units account for {expected} of {} dimensions",
                c.dim()
            )));
        }
        let mut factors = Vec::with_capacity(tables.len());
        let mut ambient_tables = Vec::with_capacity(tables.len());
        for t in tables {
            let p = t.identity();
            factors.push(Factor {
                field_basis: self
                    .base
                    .iter()
                    .map(|k| self.to_ambient(&a.mul_unchecked(k, &p)))
                    .collect::<Result<_>>()?,
                units: t
                    .units
                    .iter()
                    .map(|row| row.iter().map(|u| self.to_ambient(u)).collect())
                    .collect::<Result<_>>()?,
            });
            ambient_tables.push(MatrixUnitTable {
                highest_weight: t.highest_weight,
                units: factors.last().expect("just pushed").units.clone(),
            });
        }
        let (factors, mut trace) = self.leaf(Step::Nilpotent, factors)?;
        trace[0].sl2 = Some(Box::new(Sl2Record {
            h_action,
            decomposition: d,
            tables: ambient_tables,
        }));
        Ok((factors, trace))
    }
}

/// Appends a child trace, attaching its root to `parent`.
fn append_trace(trace: &mut Vec<TraceNode>, sub: Vec<TraceNode>, parent: usize) {
    let offset = trace.len();
    for mut n in sub {
        n.parent = Some(n.parent.map_or(parent, |p| p + offset));
        trace.push(n);
    }
}

/// Outcome of [`verify_certificate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: usize,
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failure.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "certificate verified ({} checks)", self.checks),
            Some(msg) => write!(f, "certificate rejected: {msg}"),
        }
    }
}

struct Checker {
    checks: usize,
}

impl Checker {
    fn check(&mut self, cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
        self.checks += 1;
        if cond {
            Ok(())
        } else {
            Err(msg())
        }
    }
}

/// Checks every relation of the certificate exactly and that `1` and `f`
/// are reproduced by the witnesses.
pub fn verify_certificate(cert: &SplittableCertificate, f: &[Rat]) -> VerificationReport {
    let mut ck = Checker { checks: 0 };
    let failure = verify_inner(cert, f, &mut ck).err();
    VerificationReport {
        checks: ck.checks,
        failure,
    }
}

fn verify_inner(
    cert: &SplittableCertificate,
    f: &[Rat],
    ck: &mut Checker,
) -> std::result::Result<(), String> {
    let a = &cert.ambient;
    let n = a.dim();
    ck.check(a.check_axioms().is_none(), || "ambient algebra violates the axioms".into())?;
    ck.check(f.len() == n, || format!("element has {} coordinates, expected {n}", f.len()))?;
    ck.check(cert.sub_basis.rows() == n, || "subalgebra basis has the wrong height".into())?;
    let d = cert.dim();
    ck.check(ratlin::rank(&cert.sub_basis) == d, || "subalgebra basis is dependent".into())?;
    let space = Subspace::from_spanning(n, &cert.sub_basis.columns());
    let basis = space.basis_vectors();
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            ck.check(space.contains(&a.mul_unchecked(x, y)), || {
                format!("subalgebra not closed: product of basis elements {i} and {j}")
            })?;
        }
    }

    let mut idents = Vec::with_capacity(cert.factors.len());
    let mut spanning = Vec::new();
    for (fi, fac) in cert.factors.iter().enumerate() {
        let m = fac.size();
        ck.check(m > 0 && fac.units.iter().all(|r| r.len() == m), || {
            format!("factor {fi}: unit table is not square")
        })?;
        ck.check(
            fac.units.iter().flatten().chain(&fac.field_basis).all(|v| v.len() == n),
            || format!("factor {fi}: element of the wrong length"),
        )?;
        for j in 0..m {
            for l in 0..m {
                for p in 0..m {
                    for q in 0..m {
                        let prod = a.mul_unchecked(&fac.units[j][l], &fac.units[p][q]);
                        let ok = if l == p { prod == fac.units[j][q] } else { is_zero_vec(&prod) };
                        ck.check(ok, || {
                            format!("factor {fi}: unit relation fails for (j,l,p,q) = ({j},{l},{p},{q})")
                        })?;
                    }
                }
            }
        }
        let p = fac.identity();
        ck.check(!fac.field_basis.is_empty(), || format!("factor {fi}: empty field basis"))?;
        let field = Subalgebra::from_spanning(a, &fac.field_basis, Some(p.clone()))
            .map_err(|e| format!("factor {fi}: field span is not a unital subalgebra: {e}"))?;
        ck.check(field.dim() == fac.field_degree(), || {
            format!("factor {fi}: field basis is dependent")
        })?;
        let certified = field_certify(&field).map(|t| t.certified).unwrap_or(false);
        ck.check(certified, || format!("factor {fi}: field span is not a field"))?;
        for (ki, k) in fac.field_basis.iter().enumerate() {
            for (j, row) in fac.units.iter().enumerate() {
                for (l, u) in row.iter().enumerate() {
                    ck.check(a.mul_unchecked(k, u) == a.mul_unchecked(u, k), || {
                        format!("factor {fi}: field element {ki} does not commute with unit ({j},{l})")
                    })?;
                }
            }
        }
        let span = fac.spanning_set(a);
        let expected = fac.field_degree() * m * m;
        ck.check(ratlin::rank(&QMatrix::from_columns(n, &span)) == expected, || {
            format!("factor {fi}: field multiples of the units are dependent")
        })?;
        for (xi, x) in span.iter().enumerate() {
            ck.check(space.contains(x), || format!("factor {fi}: element {xi} lies outside C"))?;
        }
        for (xi, x) in basis.iter().enumerate() {
            ck.check(a.mul_unchecked(&p, x) == a.mul_unchecked(x, &p), || {
                format!("factor {fi}: identity does not commute with basis element {xi} of C")
            })?;
        }
        spanning.extend(span);
        idents.push(p);
    }
    for (i, p) in idents.iter().enumerate() {
        for (j, q) in idents.iter().enumerate() {
            if i != j {
                ck.check(is_zero_vec(&a.mul_unchecked(p, q)), || {
                    format!("factors {i} and {j} do not annihilate each other")
                })?;
            }
        }
    }
    let total: usize = cert
        .factors
        .iter()
        .map(|x| x.size() * x.size() * x.field_degree())
        .sum();
    ck.check(total == d, || format!("factors account for {total} of {d} dimensions"))?;
    ck.check(
        spanning.is_empty() && d == 0 || ratlin::rank(&QMatrix::from_columns(n, &spanning)) == d,
        || "factor spans do not fill C".into(),
    )?;

    let unit = cert.witness_element(&cert.witness_unit);
    ck.check(cert.witness_unit.as_ref().is_some_and(|w| w.len() == d), || {
        "identity witness missing".into()
    })?;
    ck.check(unit.as_deref() == Some(a.unit().as_slice()), || {
        "identity witness does not reproduce 1".into()
    })?;
    let fw = cert.witness_element(&cert.witness_f);
    ck.check(cert.witness_f.as_ref().is_some_and(|w| w.len() == d), || {
        "element witness missing".into()
    })?;
    ck.check(fw.as_deref() == Some(f), || "element witness does not reproduce f".into())?;
    Ok(())
}

/// Direct sum of certificates living in orthogonal ideals of one algebra.
pub fn cert_direct_sum(
    c1: &SplittableCertificate,
    c2: &SplittableCertificate,
) -> Result<SplittableCertificate> {
    if c1.ambient != c2.ambient {
        return Err(Error::Precondition("certificates have different ambient algebras".into()));
    }
    let a = &c1.ambient;
    let b1 = c1.sub_basis.columns();
    let b2 = c2.sub_basis.columns();
    for x in &b1 {
        for y in &b2 {
            if !is_zero_vec(&a.mul_unchecked(x, y)) || !is_zero_vec(&a.mul_unchecked(y, x)) {
                return Err(Error::Precondition("ideals are not orthogonal".into()));
            }
        }
    }
    let sum = |u: Option<QVector>, v: Option<QVector>| u.zip(v).map(|(u, v)| vec_add(&u, &v));
    let unit = sum(c1.witness_element(&c1.witness_unit), c2.witness_element(&c2.witness_unit));
    let target = sum(c1.witness_element(&c1.witness_f), c2.witness_element(&c2.witness_f));
    let factors = c1.factors.iter().chain(&c2.factors).cloned().collect();
    let zero = zero_vec(a.dim());
    let mut cert = SplittableCertificate::from_factors(
        a,
        factors,
        unit.as_deref().unwrap_or(&zero),
        target.as_deref().unwrap_or(&zero),
    );
    if unit.is_none() {
        cert.witness_unit = None;
    }
    if target.is_none() {
        cert.witness_f = None;
    }
    Ok(cert)
}
