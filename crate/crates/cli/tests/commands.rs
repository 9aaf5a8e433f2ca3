use std::process::Command;

use endosplit_cli::corpus::generate;
use endosplit_cli::doc::{AlgebraDocument, CertificateDocument, Frac, NamedElement};
use endosplit_cli::{run_check, run_split, run_tate, run_verify, Exit, Options};
use endosplit_core::algebra::constructions::matrix_algebra;
use endosplit_core::ratlin::rat;
use serde_json::{json, Value};

fn opts() -> Options {
    Options::default()
}

fn doc(kind: &str) -> AlgebraDocument {
    generate(kind, false, 0, 0).unwrap()
}

fn with_element(mut d: AlgebraDocument, name: &str, coords: &[i64]) -> AlgebraDocument {
    d.elements.push(NamedElement {
        name: name.into(),
        coords: coords.iter().map(|&c| Frac(rat(c))).collect(),
    });
    d
}

fn fracs(v: &Value) -> Vec<String> {
    v.as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect()
}

#[test]
fn check_mat2_passes() {
    let out = run_check(&doc("matrix:2").to_json(), &opts());
    assert_eq!(out.exit, Exit::Ok);
    let o = &out.report.outputs;
    assert_eq!(o["axioms"]["passed"], json!(true));
    assert_eq!(o["semisimple"]["radical_dim"], json!(0));
}

#[test]
fn check_reports_failing_triple() {
    let mut d = doc("matrix:2");
    // E12·E21 = 2·E11; the unit products are untouched
    d.structure_constants[1][2][0] = Frac(rat(2));
    let out = run_check(&d.to_json(), &opts());
    assert_eq!(out.exit, Exit::Failed);
    let o = &out.report.outputs;
    assert_eq!(o["axioms"]["failure"], json!("associativity"));
    let t: Vec<usize> = o["axioms"]["triple"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_u64().unwrap() as usize)
        .collect();
    let a = d.algebra().unwrap();
    let (x, y, z) = (a.basis_element(t[0]), a.basis_element(t[1]), a.basis_element(t[2]));
    let lhs = a.mul(&a.mul(&x, &y).unwrap(), &z).unwrap();
    let rhs = a.mul(&x, &a.mul(&y, &z).unwrap()).unwrap();
    assert_ne!(lhs, rhs);
}

#[test]
fn check_upper_triangular_is_not_semisimple() {
    // basis E11, E12, E22
    let text = json!({
        "schema_version": 1,
        "dim": 3,
        "structure_constants": [
            [["1","0","0"], ["0","1","0"], ["0","0","0"]],
            [["0","0","0"], ["0","0","0"], ["0","1","0"]],
            [["0","0","0"], ["0","0","0"], ["0","0","1"]]
        ],
        "unit": ["1", "0", "1"]
    })
    .to_string();
    let out = run_check(&text, &opts());
    assert_eq!(out.exit, Exit::Failed);
    assert_eq!(out.report.outputs["axioms"]["passed"], json!(true));
    assert_eq!(out.report.outputs["semisimple"]["radical_dim"], json!(1));
    let out = run_split(&text, "x", &opts());
    assert_eq!(out.exit, Exit::Input);
}

#[test]
fn check_rejects_malformed_input() {
    let d = doc("matrix:1");
    let floats = d.to_json().replace("\"1\"", "1.0");
    let out = run_check(&floats, &opts());
    assert_eq!(out.exit, Exit::Input);
    assert!(out.report.outputs["error"].as_str().unwrap().contains("floating-point"));
    assert_eq!(run_check("{\"schema_version\": 1", &opts()).exit, Exit::Input);
    let big = doc("matrix:3");
    let small = Options { max_dim: 4, ..opts() };
    let out = run_check(&big.to_json(), &small);
    assert_eq!(out.exit, Exit::Input);
    assert!(out.report.outputs["error"].as_str().unwrap().contains("--max-dim"));
}

#[test]
fn split_s3_transposition() {
    let out = run_split(&doc("group:S3").to_json(), "(1 2)", &opts());
    assert_eq!(out.exit, Exit::Ok);
    let o = &out.report.outputs;
    assert_eq!(o["verification"]["passed"], json!(true));
    let total: u64 = o["shape"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| {
            let (m, d) = (s[0].as_u64().unwrap(), s[1].as_u64().unwrap());
            m * m * d
        })
        .sum();
    assert_eq!(json!(total), o["dim"]);
}

#[test]
fn split_mat2_e12_is_whole_algebra() {
    let out = run_split(&doc("matrix:2").to_json(), "E12", &opts());
    assert_eq!(out.exit, Exit::Ok);
    assert_eq!(out.report.outputs["dim"], json!(4));
    assert_eq!(out.report.outputs["shape"], json!([[2, 1]]));
}

#[test]
fn split_dimension_one() {
    let d = with_element(doc("matrix:1"), "five", &[5]);
    let out = run_split(&d.to_json(), "five", &opts());
    assert_eq!(out.exit, Exit::Ok);
    assert_eq!(out.report.outputs["dim"], json!(1));
    assert_eq!(out.report.outputs["shape"], json!([[1, 1]]));
}

#[test]
fn split_unknown_element() {
    let out = run_split(&doc("matrix:2").to_json(), "nope", &opts());
    assert_eq!(out.exit, Exit::Input);
    assert!(out.report.outputs["error"].as_str().unwrap().contains("unknown element"));
}

#[test]
fn tate_examples() {
    let out = run_tate(&doc("field:1,0,1").to_json(), "t1", Some(1), None, true, &opts());
    assert_eq!(out.exit, Exit::Ok);
    let o = &out.report.outputs;
    assert_eq!(o["matrix"], json!([["0", "-1"], ["1", "0"]]));
    assert_eq!(fracs(&o["charpoly"]), ["1", "0", "1"]);

    let d = with_element(doc("matrix:1"), "three", &[3]);
    let out = run_tate(&d.to_json(), "three", Some(2), None, true, &opts());
    assert_eq!(out.exit, Exit::Ok);
    let o = &out.report.outputs;
    let m: Vec<Vec<String>> = o["matrix"].as_array().unwrap().iter().map(fracs).collect();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            assert_eq!(c, if i == j { "3" } else { "0" });
        }
    }
    // (t − 3)^4
    assert_eq!(fracs(&o["charpoly"]), ["81", "-108", "54", "-12", "1"]);

    let out = run_tate(&doc("field:-2,0,0,1").to_json(), "t1", Some(1), None, false, &opts());
    assert_eq!(out.exit, Exit::Input);
    assert!(out.report.outputs["error"].as_str().unwrap().contains("does not divide"));
}

#[test]
fn tate_plans() {
    // f = (1, -1) in Q ⊕ Q: two rational factors
    let d = with_element(doc("sum:matrix:1+matrix:1"), "f", &[1, -1]);
    let text = d.to_json();
    let out = run_tate(&text, "f", Some(2), None, false, &opts());
    assert_eq!(out.exit, Exit::Input);
    let out = run_tate(&text, "f", Some(2), Some(vec![1, 3]), false, &opts());
    assert_eq!(out.exit, Exit::Ok);
    let out = run_tate(&text, "f", Some(2), Some(vec![1, 1]), false, &opts());
    assert_eq!(out.exit, Exit::Input);
    assert!(out.report.outputs["error"].as_str().unwrap().contains("plan inconsistent"));
    let half = with_element(doc("matrix:1"), "half", &[0]);
    let mut half = half;
    half.elements.last_mut().unwrap().coords[0] = Frac(endosplit_core::ratlin::frac(1, 2));
    let out = run_tate(&half.to_json(), "half", Some(1), None, true, &opts());
    assert_eq!(out.exit, Exit::Failed);
    assert_eq!(out.report.outputs["weil"]["charpoly_integral"], json!(false));
}

#[test]
fn tate_checks_attached_representation() {
    // Q ⊕ Q acting diagonally on Q^2
    let mut d = doc("sum:matrix:1+matrix:1");
    let s = |x: &str| Frac(endosplit_cli::doc::parse_frac(x).unwrap().0);
    d.tate = Some(endosplit_cli::doc::TateSection {
        g: 1,
        rho: vec![
            vec![vec![s("1"), s("0")], vec![s("0"), s("0")]],
            vec![vec![s("0"), s("0")], vec![s("0"), s("1")]],
        ],
    });
    let out = run_tate(&d.to_json(), "e1", None, Some(vec![1, 1]), false, &opts());
    assert_eq!(out.exit, Exit::Ok, "{}", out.report.to_json());
    assert_eq!(out.report.outputs["representation"]["passed"], json!(true));
}

#[test]
fn gen_examples() {
    let m = doc("matrix:2");
    assert_eq!(m.algebra().unwrap(), matrix_algebra(2));
    assert_eq!(run_check(&m.to_json(), &opts()).exit, Exit::Ok);
    let s3 = doc("group:S3");
    assert_eq!(s3.dim, 6);
    assert_eq!(run_check(&s3.to_json(), &opts()).exit, Exit::Ok);
    let h = doc("quaternion:-1,-1");
    let a = h.algebra().unwrap();
    let (i, j) = (h.element("i").unwrap(), h.element("j").unwrap());
    assert_eq!(a.mul(&i, &i).unwrap(), a.scalar(&rat(-1)));
    assert_eq!(a.mul(&j, &j).unwrap(), a.scalar(&rat(-1)));
    let ji = a.mul(&j, &i).unwrap();
    assert_eq!(a.mul(&i, &j).unwrap(), ji.iter().map(|c| -c).collect::<Vec<_>>());
    assert!(generate("octonion:1", false, 0, 0).is_err());
    for kind in ["matrix:3", "group:Q8", "quaternion:2,5", "sum:matrix:2+group:C3"] {
        let d = generate(kind, true, 2, 5).unwrap();
        assert_eq!(run_check(&d.to_json(), &opts()).exit, Exit::Ok, "{kind}");
    }
}

#[test]
fn verify_round_trip_and_tampering() {
    let alg = doc("matrix:2").to_json();
    let split = run_split(&alg, "E12", &opts());
    let report = split.report.to_json();
    assert_eq!(run_verify(&report, &alg, &opts()).exit, Exit::Ok);
    let cert = split.report.outputs["certificate"].to_string();
    assert_eq!(run_verify(&cert, &alg, &opts()).exit, Exit::Ok);

    let mut c = CertificateDocument::parse(&cert).unwrap();
    let e = c.factors[0].units[0][1].clone();
    c.factors[0].units[0][1] = c.factors[0].units[1][0].clone();
    c.factors[0].units[1][0] = e;
    let out = run_verify(&c.to_json(), &alg, &opts());
    assert_eq!(out.exit, Exit::Failed);
    let why = out.report.outputs["failure"].as_str().unwrap();
    assert!(why.contains("unit relation fails"), "{why}");

    let other = doc("group:C4").to_json();
    let out = run_verify(&cert, &other, &opts());
    assert_eq!(out.exit, Exit::Input);
    assert!(out.report.outputs["error"].as_str().unwrap().contains("digest mismatch"));
}

#[test]
fn documents_round_trip() {
    for kind in ["matrix:3", "group:D6", "quaternion:-1,-3", "field:1,1,1", "sum:matrix:1+quaternion:2,5"] {
        let d = generate(kind, true, 3, 11).unwrap();
        let text = d.to_json();
        assert_eq!(AlgebraDocument::parse(&text).unwrap().to_json(), text);
    }
    let alg = doc("group:S3").to_json();
    let cert = run_split(&alg, "(1 2 3)", &opts()).report.outputs["certificate"].to_string();
    let c = CertificateDocument::parse(&cert).unwrap();
    assert_eq!(CertificateDocument::parse(&c.to_json()).unwrap(), c);
}

#[test]
fn reports_are_deterministic() {
    let alg = generate("sum:group:S3+quaternion:-1,-1", true, 1, 3).unwrap().to_json();
    let a = run_split(&alg, "f0", &opts()).report.to_json();
    let b = run_split(&alg, "f0", &opts()).report.to_json();
    let par = Options { parallel: 4, ..opts() };
    let c = run_split(&alg, "f0", &par).report.to_json();
    assert_eq!(a, b);
    assert_eq!(a, c);
    let timed = Options { timing: true, ..opts() };
    assert!(run_split(&alg, "f0", &timed).report.timing_ms.is_some());
}

#[test]
fn golden_split_report() {
    let alg = doc("matrix:2").to_json();
    let got = run_split(&alg, "E12", &opts()).report.to_json();
    let want = include_str!("golden/split_mat2_e12.json");
    assert_eq!(got, want);
    let got = run_tate(&doc("field:1,0,1").to_json(), "t1", Some(2), None, true, &opts()).report.to_text();
    assert_eq!(got, include_str!("golden/tate_qi_g2.txt"));
}

#[test]
fn schemas_are_valid_json() {
    for s in [
        include_str!("../schemas/algebra.schema.json"),
        include_str!("../schemas/certificate.schema.json"),
        include_str!("../schemas/report.schema.json"),
    ] {
        let v: Value = serde_json::from_str(s).unwrap();
        assert!(v["required"].is_array());
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_endosplit"))
}

#[test]
fn binary_end_to_end() {
    let dir = std::env::temp_dir().join(format!("endosplit-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let alg = dir.join("q8.json");
    let cert = dir.join("cert.json");
    let out = bin()
        .args(["gen", "group:Q8", "--conjugate", "--elements", "1"])
        .env("ENDOSPLIT_SEED", "17")
        .output()
        .unwrap();
    assert!(out.status.success());
    std::fs::write(&alg, &out.stdout).unwrap();
    let again = bin()
        .args(["gen", "group:Q8", "--conjugate", "--elements", "1", "--seed", "17"])
        .output()
        .unwrap();
    assert_eq!(out.stdout, again.stdout);

    let split = bin()
        .args(["split", alg.to_str().unwrap(), "--element", "f0", "--cert-out", cert.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(split.status.code(), Some(0));
    let verify = bin()
        .args(["verify", cert.to_str().unwrap(), alg.to_str().unwrap(), "--output", "text"])
        .output()
        .unwrap();
    assert_eq!(verify.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&verify.stdout).contains("passed: true"));

    let missing = bin().args(["check", dir.join("none.json").to_str().unwrap()]).output().unwrap();
    assert_eq!(missing.status.code(), Some(2));
    let bad = bin().args(["gen", "cube:3"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}
