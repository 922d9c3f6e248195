//! `parse_problem ∘ serialize_problem` on builtins and shipped files, and
//! parser diagnostics.

use std::path::PathBuf;

use frobex::cli::{builtin_problem, parse_problem, serialize_problem};
use frobex::Error;

const BUILTINS: &[(&str, &str)] = &[
    ("nilcoxeter:2", "q"),
    ("nilcoxeter:3", "q"),
    ("nilcoxeter:4", "q"),
    ("nilcoxeter:5", "q"),
    ("groupring:Z2:trivial", "q"),
    ("groupring:Z2:Z2", "q"),
    ("groupring:Z3:trivial", "q"),
    ("groupring:Z4:Z2", "q"),
    ("groupring:S3:A3", "q"),
    ("groupring:S3:Z2", "q"),
    ("groupring:S3:{e,c13}", "q"),
    ("groupring:A3:A3", "q"),
    ("groupring:Z4:Z2", "ext:1"),
    ("groupring:S3:A3", "ext:2"),
];

fn problems_dir() -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "examples", "problems"].iter().collect()
}

#[test]
fn builtins_round_trip() {
    for &(spec, base) in BUILTINS {
        let p = builtin_problem(spec, base).unwrap();
        let text = serialize_problem(&p);
        let back = parse_problem(&text).unwrap().into_problem().unwrap();
        assert_eq!(back, p, "{spec} over {base}");
        assert_eq!(serialize_problem(&back), text, "byte-stable: {spec}");
    }
}

#[test]
fn shipped_files_round_trip() {
    let mut seen = 0;
    for entry in std::fs::read_dir(problems_dir()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("frob") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = match parse_problem(&text) {
            Ok(f) => f,
            // files that are meant to be rejected at load time
            Err(_) if path.ends_with("grading_violation.frob") => continue,
            Err(e) => panic!("{}: {e}", path.display()),
        };
        let p = parsed.into_problem().unwrap();
        let again = parse_problem(&serialize_problem(&p)).unwrap().into_problem().unwrap();
        assert_eq!(again, p, "{}", path.display());
        seen += 1;
    }
    assert!(seen >= 7, "expected the shipped problem files, saw {seen}");
}

#[test]
fn shipped_nilcoxeter3_equals_builtin() {
    let text = std::fs::read_to_string(problems_dir().join("nilcoxeter3.frob")).unwrap();
    let from_file = parse_problem(&text).unwrap().into_problem().unwrap();
    assert_eq!(from_file, builtin_problem("nilcoxeter:3", "q").unwrap());
}

fn parse_err(text: &str) -> Error {
    parse_problem(text).expect_err("should be rejected")
}

const N2: &str = "\
lambda_rank 1
algebra Q
  basis 1
  deg 1 = (0|even)
  unit = 1
  mul 1 * 1 = 1
algebra N2
  basis 1 u1
  deg 1 = (0|even)
  deg u1 = (1 | odd)
  unit = 1
  mul 1 * 1 = 1
  mul 1 * u1 = u1
  mul u1 * 1 = u1
  mul u1 * u1 = 0
";

#[test]
fn diagnostics_are_distinguishable() {
    assert!(matches!(parse_err(""), Error::Syntax { line: 1, .. }));
    assert!(matches!(parse_err("   \n# only a comment\n"), Error::Syntax { line: 1, .. }));

    // dense file with a missing product
    let missing = N2.replace("  mul u1 * u1 = 0\n", "");
    match parse_err(&missing) {
        Error::Syntax { line, message, .. } => {
            assert_eq!(line, 7);
            assert!(message.contains("u1 * u1"), "{message}");
        }
        e => panic!("unexpected {e:?}"),
    }
    let sparse = format!("sparse = true\n{missing}");
    assert!(parse_problem(&sparse).is_ok());

    let bad_grading = N2.replace("  mul u1 * u1 = 0\n", "  mul u1 * u1 = u1\n");
    match parse_err(&bad_grading) {
        Error::Structural { line, object, report } => {
            assert_eq!((line, object.as_str()), (7, "N2"));
            assert!(report.contains("grading FAIL"), "{report}");
        }
        e => panic!("unexpected {e:?}"),
    }

    let undefined = format!("{N2}embed Q -> N3\n  map 1 = 1\n");
    assert!(matches!(parse_err(&undefined), Error::Undefined { line: 16, .. }));

    let typo = N2.replace("  mul u1 * 1 = u1\n", "  mul u1 * 1 = u2\n");
    assert!(matches!(parse_err(&typo), Error::Undefined { line: 14, .. }));

    let column = N2.replace("  deg u1 = (1 | odd)", "  deg u1 = (1 | od)");
    match parse_err(&column) {
        Error::Syntax { line, column, .. } => assert_eq!((line, column), (10, 12)),
        e => panic!("unexpected {e:?}"),
    }

    let no_tower = parse_problem(N2).unwrap();
    assert!(no_tower.problem().is_err());
    assert_eq!(no_tower.algebras.len(), 2);
}

#[test]
fn lincomb_coefficients() {
    let text = format!(
        "{N2}embed Q -> N2\n  map 1 = 1\naut flip on N2\n  map 1 = 1\n  map u1 = -3/2*u1\n"
    );
    let f = parse_problem(&text).unwrap();
    let (_, _, m) = &f.auts[0];
    assert_eq!(frobex::linalg::format_scalar(m.get(1, 1)), "-3/2");
    let bad = text.replace("-3/2*u1", "-3/0*u1");
    assert!(matches!(parse_err(&bad), Error::Syntax { line: 20, .. }));
}

#[test]
fn trace_twists_must_be_automorphisms() {
    let text = format!(
        "sparse = true\n{N2}embed Q -> N2\n  map 1 = 1\naut kill on N2\n  map 1 = 1\n"
    );
    match parse_err(&text) {
        Error::Structural { object, .. } => assert_eq!(object, "kill"),
        e => panic!("unexpected {e:?}"),
    }
}
