use std::time::Instant;

use endosplit_core::algebra::{central_idempotents, radical, AxiomFailure, StructureAlgebra};
use endosplit_core::ratlin::QVector;
use endosplit_core::splittable::{
    splittable_subalgebra_with, verify_certificate, SplitOptions, SplittableCertificate, Step, TraceNode,
};
use endosplit_core::tatemodel::{
    split_representation, tate_matrix_semisimple, weil_integrality_check, MultiplicityPlan, TateRepModel,
};
use serde_json::{json, Value};

use crate::doc::{fracs, matrix_from_rows, matrix_rows, sha256_hex, AlgebraDocument, CertificateDocument, NamedElement};
use crate::report::Outcome;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    /// Worker threads for independent factors; 0 or 1 runs sequentially.
    pub parallel: usize,
    pub max_dim: usize,
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 0,
            parallel: 0,
            max_dim: 64,
            timing: false,
        }
    }
}

type Verdict = Result<(bool, Value), CliError>;

fn timed(command: &str, digest: String, opts: &Options, f: impl FnOnce() -> Verdict) -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new(command, digest, opts.seed, f());
    if opts.timing {
        out.report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    out
}

fn parse_doc(text: &str, opts: &Options) -> Result<AlgebraDocument, CliError> {
    let doc = AlgebraDocument::parse(text)?;
    if doc.dim > opts.max_dim {
        return Err(CliError::Input(format!(
            "dimension {} exceeds --max-dim {}",
            doc.dim, opts.max_dim
        )));
    }
    Ok(doc)
}

fn axiom_json(f: &Option<AxiomFailure>) -> Value {
    match f {
        None => json!({ "passed": true }),
        Some(AxiomFailure::Associativity { i, j, k }) => {
            json!({ "passed": false, "failure": "associativity", "triple": [i, j, k] })
        }
        Some(AxiomFailure::Unit { i }) => json!({ "passed": false, "failure": "unit", "index": i }),
    }
}

/// The algebra of a document that passes the axioms and has zero radical.
fn semisimple_algebra(doc: &AlgebraDocument) -> Result<StructureAlgebra, CliError> {
    let a = doc.algebra()?;
    if let Some(f) = a.check_axioms() {
        return Err(CliError::Input(format!("algebra fails its axioms: {f:?}")));
    }
    let r = radical(&a).dim();
    if r > 0 {
        return Err(CliError::Input(format!("algebra is not semisimple: radical has dimension {r}")));
    }
    Ok(a)
}

/// Associativity, unit and semisimplicity diagnostics.
pub fn run_check(text: &str, opts: &Options) -> Outcome {
    timed("check", sha256_hex(text.as_bytes()), opts, || {
        let doc = parse_doc(text, opts)?;
        let a = doc.algebra()?;
        for e in &doc.elements {
            doc.element(&e.name)?;
        }
        let fail = a.check_axioms();
        let mut out = json!({
            "dim": a.dim(),
            "algebra_digest": doc.digest(),
            "axioms": axiom_json(&fail),
        });
        if fail.is_some() {
            return Ok((false, out));
        }
        let r = radical(&a).dim();
        out["semisimple"] = json!({ "passed": r == 0, "radical_dim": r });
        out["commutative"] = json!(a.is_commutative());
        out["center_dim"] = json!(a.center()?.dim());
        Ok((r == 0, out))
    })
}

fn split(a: &StructureAlgebra, f: &QVector, opts: &Options) -> Result<(SplittableCertificate, Vec<TraceNode>), CliError> {
    let run = |parallel| splittable_subalgebra_with(a, f, SplitOptions { parallel });
    let result = if opts.parallel > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.parallel)
            .build()
            .map_err(|e| CliError::Input(format!("cannot start worker threads: {e}")))?;
        pool.install(|| run(true))
    } else {
        run(false)
    };
    Ok(result?)
}

fn step_name(s: Step) -> &'static str {
    match s {
        Step::BaseCase => "base",
        Step::Decompose => "decompose",
        Step::Rebase => "rebase",
        Step::Scalar => "scalar",
        Step::Centralize => "centralize",
        Step::Nilpotent => "nilpotent",
    }
}

fn shape_json(cert: &SplittableCertificate) -> Value {
    json!(cert.shape().iter().map(|(m, d)| json!([m, d])).collect::<Vec<_>>())
}

/// A splittable subalgebra containing 1 and the named element, with its
/// certificate checked before it is reported.
pub fn run_split(text: &str, element: &str, opts: &Options) -> Outcome {
    timed("split", sha256_hex(text.as_bytes()), opts, || {
        let doc = parse_doc(text, opts)?;
        let a = semisimple_algebra(&doc)?;
        let f = doc.element(element)?;
        let (cert, trace) = split(&a, &f, opts)?;
        let verdict = verify_certificate(&cert, &f);
        let named = NamedElement {
            name: element.into(),
            coords: fracs(&f),
        };
        let cdoc = CertificateDocument::new(&cert, doc.digest(), named);
        let out = json!({
            "dim": cert.dim(),
            "shape": shape_json(&cert),
            "steps": trace.iter().map(|t| step_name(t.step)).collect::<Vec<_>>(),
            "verification": {
                "passed": verdict.ok(),
                "checks": verdict.checks,
                "failure": verdict.failure,
            },
            "certificate": cdoc,
        });
        Ok((verdict.ok(), out))
    })
}

fn default_plan(cert: &SplittableCertificate, g: usize) -> Result<MultiplicityPlan, CliError> {
    if cert.factors.len() != 1 {
        return Err(CliError::Input(format!(
            "a plan is required: the subalgebra has {} factors",
            cert.factors.len()
        )));
    }
    let (m, d) = cert.shape()[0];
    if !(2 * g).is_multiple_of(m * d) {
        let what = if m == 1 {
            format!("field degree {d}")
        } else {
            format!("m·d = {}", m * d)
        };
        return Err(CliError::Input(format!("{what} does not divide 2g = {}", 2 * g)));
    }
    Ok(MultiplicityPlan {
        copies: vec![2 * g / (m * d)],
    })
}

fn representation_json(doc: &AlgebraDocument, a: &StructureAlgebra) -> Result<(bool, Value), CliError> {
    let t = doc.tate.as_ref().expect("checked by caller");
    let size = 2 * t.g;
    let rho = t
        .rho
        .iter()
        .enumerate()
        .map(|(i, m)| matrix_from_rows(m, size, &format!("rho[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let model = TateRepModel::new(a.clone(), t.g, rho)?;
    let es = central_idempotents(a)?;
    let rep = split_representation(&model, &es, None)?;
    let failed: Vec<Value> = rep
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| json!({ "check": c.name, "detail": c.detail }))
        .collect();
    Ok((
        rep.passed(),
        json!({
            "passed": rep.passed(),
            "n": rep.n.to_string(),
            "block_dims": rep.block_dims,
            "checks": rep.checks.len(),
            "failures": failed,
        }),
    ))
}

/// `M(u)` and its characteristic polynomial for the named element acting on
/// `Q^(2g)` according to `plan`.
pub fn run_tate(
    text: &str,
    element: &str,
    g: Option<usize>,
    plan: Option<Vec<usize>>,
    integral: bool,
    opts: &Options,
) -> Outcome {
    timed("tate", sha256_hex(text.as_bytes()), opts, || {
        let doc = parse_doc(text, opts)?;
        let a = semisimple_algebra(&doc)?;
        let u = doc.element(element)?;
        let g = g
            .or(doc.tate.as_ref().map(|t| t.g))
            .ok_or_else(|| CliError::Input("g is required".into()))?;
        if g == 0 {
            return Err(CliError::Input("g must be positive".into()));
        }
        let (cert, _) = split(&a, &u, opts)?;
        let plan = match plan {
            Some(copies) => MultiplicityPlan { copies },
            None => default_plan(&cert, g)?,
        };
        plan.check(&cert, g)
            .map_err(|e| CliError::Input(format!("plan inconsistent: {e}")))?;
        let t = tate_matrix_semisimple(&cert, &plan, &u)?;
        let weil = weil_integrality_check(&t, integral);
        let mut out = json!({
            "g": g,
            "plan": plan.copies,
            "shape": shape_json(&cert),
            "matrix": matrix_rows(&t.matrix),
            "charpoly": fracs(t.charpoly.coeffs()),
            "charpoly_text": t.charpoly.to_string(),
            "weil": {
                "passed": weil.passed(),
                "claimed_integral": weil.claimed,
                "matrix_integral": weil.matrix_integral,
                "charpoly_integral": weil.charpoly_integral,
            },
        });
        let mut passed = weil.passed();
        if doc.tate.as_ref().is_some_and(|t| t.g == g) {
            let (ok, rep) = representation_json(&doc, &a)?;
            out["representation"] = rep;
            passed &= ok;
        }
        Ok((passed, out))
    })
}

/// Rechecks a certificate against the algebra it claims to be about.
pub fn run_verify(cert_text: &str, algebra_text: &str, opts: &Options) -> Outcome {
    let digest = sha256_hex(format!("{cert_text}\u{0}{algebra_text}").as_bytes());
    timed("verify", digest, opts, || {
        let doc = parse_doc(algebra_text, opts)?;
        let cdoc = CertificateDocument::parse(cert_text)?;
        if cdoc.algebra_digest != doc.digest() {
            return Err(CliError::Input(format!(
                "algebra digest mismatch: certificate is for {}, file has {}",
                cdoc.algebra_digest,
                doc.digest()
            )));
        }
        let a = doc.algebra()?;
        let cert = cdoc.certificate(&a)?;
        let f: QVector = cdoc.element.coords.iter().map(|c| c.0.clone()).collect();
        let verdict = verify_certificate(&cert, &f);
        Ok((
            verdict.ok(),
            json!({
                "element": cdoc.element.name,
                "passed": verdict.ok(),
                "checks": verdict.checks,
                "failure": verdict.failure,
            }),
        ))
    })
}
