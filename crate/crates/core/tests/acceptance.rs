//! Acceptance criteria 1–11, exact arithmetic throughout. Prints one
//! `CRITERION <n> PASS|FAIL <detail>` line each and exits non-zero if any
//! criterion fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;

use frobex::algebra::check_algebra;
use frobex::cli::{builtin_problem, parse_problem, serialize_problem};
use frobex::constructions::{group_ring, nilcoxeter, GroupTable};
use frobex::frobenius::{compute_nakayama, verify_dual_generators};
use frobex::grading::koszul_sign;
use frobex::{verify_main_theorem, AlgebraSpec, Element, Parity, Sign, SparseVec};

type Outcome = Result<String, String>;

const GROUP_RINGS: &[(&str, &str)] = &[
    ("groupring:Z2:trivial", "q"),
    ("groupring:Z2:Z2", "q"),
    ("groupring:Z3:trivial", "q"),
    ("groupring:Z4:trivial", "q"),
    ("groupring:Z4:Z2", "q"),
    ("groupring:S3:trivial", "q"),
    ("groupring:S3:Z2", "q"),
    ("groupring:S3:A3", "q"),
    ("groupring:A3:trivial", "q"),
    ("groupring:Z4:Z2", "ext:1"),
    ("groupring:S3:A3", "ext:2"),
];

fn builtins() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = (2..=5).map(|n| (format!("nilcoxeter:{n}"), "q".to_string())).collect();
    out.extend(GROUP_RINGS.iter().map(|(s, b)| (s.to_string(), b.to_string())));
    out
}

fn frobex(args: &[&str]) -> (i32, String, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_frobex"))
        .args(args)
        .output()
        .expect("frobex binary runs");
    (
        o.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&o.stdout).into_owned(),
        String::from_utf8_lossy(&o.stderr).into_owned(),
    )
}

fn problem_file(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "problems", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for n in 2..=5i64 {
        let (code, out, _) = frobex(&["verify", "--builtin", &format!("nilcoxeter:{n}")]);
        let weight = choose2(n - 1) - choose2(n);
        let parity = if (choose2(n) + choose2(n - 1)) % 2 == 0 { "even" } else { "odd" };
        let expected = format!("CERTIFICATE VALID degree=({weight}|{parity}) twists=(");
        let summary = out.lines().last().unwrap_or("");
        ensure(code == 0 && summary.starts_with(&expected), || {
            format!("n={n}: exit {code}, got `{summary}`, expected prefix `{expected}`")
        })?;
        seen.push(format!("n={n} ({weight}|{parity})"));
    }
    let concrete = [(3, "(-2|even)"), (4, "(-3|odd)"), (5, "(-4|even)")];
    for (n, d) in concrete {
        let (_, out, _) = frobex(&["verify", "--builtin", &format!("nilcoxeter:{n}")]);
        ensure(out.contains(&format!("degree={d}")), || format!("n={n}: expected {d}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} in {secs:.2}s", seen.join(", ")))
}

fn criterion_2() -> Outcome {
    let mut mismatches = Vec::new();
    for n in 2..=5 {
        let nc = nilcoxeter(n).map_err(err)?;
        let psi = compute_nakayama(&nc.trace).map_err(err)?;
        let a = &nc.algebra;
        for i in 1..n {
            let u = |k: usize| a.index_of(&format!("u{k}")).expect("generator");
            let image = psi.apply(&SparseVec::unit(u(i)));
            if image != SparseVec::unit(u(n - i)) {
                mismatches.push(format!("psi_{n}(u{i}) = {} (expected u{})", a.format(&image), n - i));
            }
        }
    }
    let q = std::sync::Arc::new(AlgebraSpec::rationals(1));
    for g in ["Z2", "Z3", "Z4", "S3"] {
        let group = match g {
            "S3" => GroupTable::symmetric(3).map_err(err)?,
            _ => GroupTable::cyclic(g[1..].parse().unwrap()),
        };
        for base in [q.clone(), std::sync::Arc::new(frobex::constructions::exterior_base(1, 1).map_err(err)?)] {
            let rg = group_ring(&group, &base).map_err(err)?;
            let psi = compute_nakayama(&rg.trace).map_err(err)?;
            if !psi.is_identity() {
                mismatches.push(format!("{}: Nakayama map is not the identity", rg.algebra.name()));
            }
        }
    }
    ensure(mismatches.is_empty(), || mismatches.join("; "))?;
    Ok("nilcoxeter n=2..5 and group rings".into())
}

fn criterion_3() -> Outcome {
    for spec in ["nilcoxeter:3", "nilcoxeter:4"] {
        let cert = verify_main_theorem(&builtin_problem(spec, "q").map_err(err)?).map_err(err)?;
        let scan = cert.twist_scan.ok_or(format!("{spec}: no twist scan"))?;
        let twisted = scan.find("psi_A,psi_B").ok_or("missing scan entry")?;
        let plain = scan.find("id,id").ok_or("missing scan entry")?;
        ensure(twisted.passed, || format!("{spec}: (psi_A,psi_B) failed: {}", twisted.detail))?;
        ensure(!plain.passed && plain.detail.contains("bimodule"), || {
            format!("{spec}: (id,id) should fail the bimodule check, got `{}`", plain.detail)
        })?;
    }
    let cert = verify_main_theorem(&builtin_problem("groupring:S3:A3", "q").map_err(err)?).map_err(err)?;
    let scan = cert.twist_scan.ok_or("S3/A3: no twist scan")?;
    ensure(scan.checks.len() == 4 && scan.passed(), || format!("S3/A3 scan:\n{scan}"))?;
    Ok("N3, N4 need (psi_A,psi_B); S3/A3 passes all four".into())
}

fn criterion_4() -> Outcome {
    let p = builtin_problem("nilcoxeter:3", "q").map_err(err)?;
    let td = p.nested_trace().map_err(err)?;
    let (a, b) = (&p.tower.a, &p.tower.b);
    let top = td.apply(&SparseVec::unit(a.index_of("u121").ok_or("no u121")?));
    ensure(top == SparseVec::unit(b.index_of("u1").ok_or("no u1")?), || {
        format!("tr(u121) = {}", b.format(&top))
    })?;
    for label in ["1", "u1", "u2"] {
        let v = td.apply(&SparseVec::unit(a.index_of(label).unwrap()));
        ensure(v.is_zero(), || format!("tr({label}) = {}", b.format(&v)))?;
    }
    let mut checked = 0;
    for &(spec, base) in GROUP_RINGS {
        let p = builtin_problem(spec, base).map_err(err)?;
        let td = p.nested_trace().map_err(err)?;
        let (a, b) = (&p.tower.a, &p.tower.b);
        for i in 0..a.dim() {
            let expected = b.index_of(a.label(i)).map(SparseVec::unit).unwrap_or_default();
            let got = td.apply(&SparseVec::unit(i));
            ensure(got == expected, || format!("{spec}/{base}: tr({}) = {}", a.label(i), b.format(&got)))?;
        }
        checked += 1;
    }
    Ok(format!("N3 values; projection onto H on {checked} group-ring towers"))
}

fn criterion_5() -> Outcome {
    let mut n = 0;
    for (spec, base) in builtins() {
        let p = builtin_problem(&spec, &base).map_err(err)?;
        let d = p.duality().map_err(err)?;
        let route = d
            .kappa(&d.phi_a(&Element::unit(p.tower.a.clone())).map_err(err)?)
            .map_err(err)?;
        let formula = p.nested_trace().map_err(err)?;
        ensure(route.matrix == formula.matrix, || format!("{spec}/{base}: routes differ"))?;
        n += 1;
    }
    Ok(format!("{n} towers"))
}

fn criterion_6() -> Outcome {
    let mut detail = Vec::new();
    for (spec, base) in [("nilcoxeter:3", "q"), ("groupring:Z4:Z2", "q")] {
        let d = builtin_problem(spec, base).map_err(err)?.duality().map_err(err)?;
        let homs = d.iso.hom_basis().map_err(err)?;
        for f in &homs {
            let back = d.iso.inverse(&d.iso.forward(f).map_err(err)?).map_err(err)?;
            ensure(&back == f, || format!("{spec}: inverse∘forward ≠ id"))?;
        }
        let duals = d.iso.dual_basis().map_err(err)?;
        for theta in &duals {
            let back = d.iso.forward(&d.iso.inverse(theta).map_err(err)?).map_err(err)?;
            ensure(&back == theta, || format!("{spec}: forward∘inverse ≠ id"))?;
        }
        ensure(homs.len() == duals.len() && !homs.is_empty(), || format!("{spec}: dimensions differ"))?;
        detail.push(format!("{spec} dim {}", homs.len()));
    }
    Ok(detail.join(", "))
}

fn criterion_7() -> Outcome {
    let mut n = 0;
    for (spec, base) in builtins() {
        let p = builtin_problem(&spec, &base).map_err(err)?;
        let rank = p.duality().map_err(err)?.phi_a_rank().map_err(err)?;
        ensure(rank == p.tower.a.dim(), || format!("{spec}/{base}: rank {rank} < {}", p.tower.a.dim()))?;
        n += 1;
    }
    Ok(format!("{n} towers at full rank"))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (spec, base) in builtins() {
        let p = builtin_problem(&spec, &base).map_err(err)?;
        let cert = verify_main_theorem(&p).map_err(err)?;
        if !cert.valid {
            continue;
        }
        let t = &p.tower;
        let (psi_a, psi_b) = (cert.psi_a.as_ref().unwrap(), cert.psi_b.as_ref().unwrap());
        let td = cert.nested_trace.as_ref().unwrap();
        for r in 0..t.r.dim() {
            let in_a = t.iota_ra.image(r);
            let in_b = t.iota_rb.image(r);
            ensure(psi_a.apply(&in_a) == in_a, || format!("{spec}/{base}: psi_A moves R"))?;
            ensure(psi_b.apply(&in_b) == in_b, || format!("{spec}/{base}: psi_B moves R"))?;
            let alpha = td.right_twist.mul_sparse(&in_a);
            let beta = t.iota_ba.apply(&td.left_twist.mul_sparse(&in_b));
            ensure(alpha == beta, || format!("{spec}/{base}: alpha|R ≠ beta"))?;
        }
        n += 1;
    }
    Ok(format!("{n} valid certificates"))
}

fn criterion_9() -> Outcome {
    let (code, out, _) = frobex(&["verify", "--builtin", "groupring:Z4:Z2", "--base", "ext:1"]);
    let summary = out.lines().last().unwrap_or("");
    ensure(code == 0 && summary == "CERTIFICATE VALID degree=(0|even) twists=(id,id)", || {
        format!("exit {code}: `{summary}`")
    })?;
    let p = builtin_problem("groupring:Z4:Z2", "ext:1").map_err(err)?;
    ensure(p.tower.r.name() == "ext1" && p.tower.r.dim() == 2, || "base is not ext1".into())?;
    Ok(summary.into())
}

fn criterion_10() -> Outcome {
    for (file, line) in [
        ("zero_trace.frob", "CHECK inputs.trA.T1 FAIL"),
        ("coefficient_of_one.frob", "CHECK inputs.trA.T1 FAIL"),
    ] {
        let (code, out, _) = frobex(&["verify", &problem_file(file)]);
        ensure(code == 1 && out.contains(line), || format!("{file}: exit {code}"))?;
    }

    // corrupted dual generator: perturb y_0 and re-verify
    let p = builtin_problem("nilcoxeter:3", "q").map_err(err)?;
    let mut dg = p.dual_generators().map_err(err)?;
    dg.y[0] = dg.y[0].add(&Element::unit(p.tower.b.clone())).map_err(err)?;
    let rep = verify_dual_generators(&dg, &p.tr_b);
    let witness = rep.find("dual_bases_first").map(|c| (c.passed, c.detail.clone()));
    ensure(matches!(&witness, Some((false, d)) if !d.is_empty()), || {
        format!("corrupted y_0 not caught: {witness:?}")
    })?;
    let (code, out, _) = frobex(&["verify", &problem_file("bad_rbasis.frob")]);
    ensure(code == 1 && out.contains("CHECK dual."), || format!("bad_rbasis.frob: exit {code}"))?;

    let (code, _, stderr) = frobex(&["verify", "--builtin", "groupring:S3:{e,c12,c23}"]);
    ensure(code == 2 && stderr.contains("not in it"), || format!("non-subgroup: exit {code}"))?;
    let s3 = GroupTable::symmetric(3).map_err(err)?;
    let members: Vec<usize> = ["e", "c12", "c23"].iter().map(|l| s3.index_of(l).unwrap()).collect();
    ensure(s3.subgroup("H", &members).is_err(), || "subgroup() accepted a non-subgroup".into())?;
    Ok("T1 x2 at inputs, dual-bases witness, non-subgroup exit 2".into())
}

fn criterion_11() -> Outcome {
    let mut algebras = 0;
    for (spec, base) in builtins() {
        let p = builtin_problem(&spec, &base).map_err(err)?;
        for alg in [&p.tower.r, &p.tower.b, &p.tower.a] {
            let rep = check_algebra(alg);
            ensure(rep.passed(), || format!("{}: {rep}", alg.name()))?;
            algebras += 1;
        }
    }
    for p in [Parity::Even, Parity::Odd] {
        ensure(koszul_sign(p, Parity::Even) == Sign::Plus, || "koszul(p, even) ≠ +".into())?;
        for q in [Parity::Even, Parity::Odd] {
            ensure(koszul_sign(p, q) == koszul_sign(q, p), || "koszul not symmetric".into())?;
            for r in [Parity::Even, Parity::Odd] {
                ensure(koszul_sign(p, q + r) == koszul_sign(p, q) * koszul_sign(p, r), || {
                    "koszul not bilinear".into()
                })?;
            }
        }
    }
    ensure(koszul_sign(Parity::Odd, Parity::Odd) == Sign::Minus, || "koszul(odd, odd) ≠ −".into())?;

    let dir: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "problems"].iter().collect();
    let mut files = 0;
    for entry in std::fs::read_dir(&dir).map_err(err)? {
        let path = entry.map_err(err)?.path();
        if path.extension().and_then(|e| e.to_str()) != Some("frob") {
            continue;
        }
        let text = std::fs::read_to_string(&path).map_err(err)?;
        let Ok(parsed) = parse_problem(&text) else {
            // rejected at load by design; still must not parse
            ensure(path.ends_with("grading_violation.frob"), || format!("{} fails to parse", path.display()))?;
            continue;
        };
        let p = parsed.into_problem().map_err(err)?;
        let text2 = serialize_problem(&p);
        let again = parse_problem(&text2).map_err(err)?.into_problem().map_err(err)?;
        ensure(again == p && serialize_problem(&again) == text2, || {
            format!("{}: round trip differs", path.display())
        })?;
        files += 1;
    }
    Ok(format!("{algebras} algebras, koszul laws, {files} files round-trip"))
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 11] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
        (11, criterion_11),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        match run() {
            Ok(detail) => println!("CRITERION {n} PASS {detail}"),
            Err(detail) => {
                failed += 1;
                println!("CRITERION {n} FAIL {detail}");
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
