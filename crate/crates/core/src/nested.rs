//! The nested trace of a tower `R ⊆ B ⊆ A` of Frobenius extensions of a
//! central base, and the pipeline certifying `A` as a twisted Frobenius
//! extension of `B`.

use std::fmt;

use crate::algebra::{Element, Tower};
use crate::error::{Error, Result};
use crate::frobenius::{
    check_ar_identities, check_automorphism, compute_dual_generators, compute_nakayama, freeness_probe,
    verify_dual_generators, verify_nakayama, verify_t1, verify_t2, verify_trace_bimodule, DualGenerators, Freeness,
    NakayamaMap, TraceData,
};
use crate::grading::{koszul_sign, Degree};
use crate::homspace::TowerDuality;
use crate::linalg::{Matrix, SparseVec};
use crate::report::Report;

/// A tower with untwisted traces `tr_A: A → R`, `tr_B: B → R` and an
/// `R`-basis of `B` (indices into the basis of `B`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NestedProblem {
    pub tower: Tower,
    pub tr_a: TraceData,
    pub tr_b: TraceData,
    pub r_basis: Vec<usize>,
}

impl NestedProblem {
    /// Checks that the traces sit on the tower's algebras and embeddings.
    pub fn new(tower: Tower, tr_a: TraceData, tr_b: TraceData, r_basis: Vec<usize>) -> Result<Self> {
        if tr_a.embedding != tower.iota_ra {
            return Err(Error::rejected(format!(
                "trace `{}` is not a map {} -> {} over the tower's embedding",
                tr_a.name,
                tower.a.name(),
                tower.r.name()
            )));
        }
        if tr_b.embedding != tower.iota_rb {
            return Err(Error::rejected(format!(
                "trace `{}` is not a map {} -> {} over the tower's embedding",
                tr_b.name,
                tower.b.name(),
                tower.r.name()
            )));
        }
        if let Some(&bad) = r_basis.iter().find(|&&i| i >= tower.b.dim()) {
            return Err(Error::rejected(format!("R-basis index {bad} out of range")));
        }
        Ok(NestedProblem {
            tower,
            tr_a,
            tr_b,
            r_basis,
        })
    }

    /// Both Nakayama maps, `(ψ_A, ψ_B)`.
    pub fn nakayama_maps(&self) -> Result<(NakayamaMap, NakayamaMap)> {
        Ok((compute_nakayama(&self.tr_a)?, compute_nakayama(&self.tr_b)?))
    }

    /// Dual generators of `B` over `R` on `r_basis`.
    pub fn dual_generators(&self) -> Result<DualGenerators> {
        compute_dual_generators(&self.tr_b, &self.r_basis)
    }

    /// The duality `HOM_B(^{ψ_B}A^{ψ_A}, B) ≅ A^∨` used by the `κ ∘ φ_A` route.
    pub fn duality(&self) -> Result<TowerDuality> {
        let (psi_a, psi_b) = self.nakayama_maps()?;
        TowerDuality::new(
            &self.tower.iota_ba,
            self.tr_a.clone(),
            psi_a,
            self.tr_b.clone(),
            psi_b,
            self.dual_generators()?,
        )
    }

    /// The nested trace `A → B`, built from freshly computed twists and
    /// dual generators.
    pub fn nested_trace(&self) -> Result<TraceData> {
        let (psi_a, psi_b) = self.nakayama_maps()?;
        build_nested_trace(self, &self.dual_generators()?, &psi_a, &psi_b)
    }
}

/// `tr(a) = (-1)^{π_B(π_A+ā)} Σ_i (-1)^{ȳ_i(π_B+ā)} tr_A(y_i a) x_i`, with left
/// twist `ψ_B` and right twist `ψ_A`.
pub fn build_nested_trace(
    p: &NestedProblem,
    dg: &DualGenerators,
    psi_a: &NakayamaMap,
    psi_b: &NakayamaMap,
) -> Result<TraceData> {
    let t = &p.tower;
    if psi_a.algebra != t.a || psi_b.algebra != t.b {
        return Err(Error::rejected("Nakayama maps do not match the tower"));
    }
    let (a, b) = (&t.a, &t.b);
    let pi_a = p.tr_a.degree.parity();
    let pi_b = p.tr_b.degree.parity();
    let xs: Vec<SparseVec> = dg.x.iter().map(Element::to_sparse).collect();
    let ys: Vec<SparseVec> = dg.y.iter().map(|y| t.iota_ba.apply(&y.to_sparse())).collect();
    let mut columns = Vec::with_capacity(a.dim());
    for ai in 0..a.dim() {
        let ea = SparseVec::unit(ai);
        let abar = a.parity(ai);
        let outer = koszul_sign(pi_b, pi_a + abar);
        let mut col = SparseVec::new();
        for (i, (x, y)) in xs.iter().zip(&ys).enumerate() {
            let r = p.tr_a.apply(&a.mul_sparse(y, &ea));
            if r.is_zero() {
                continue;
            }
            let sign = outer * koszul_sign(dg.y_parity(i), pi_b + abar);
            let term = b.mul_sparse(&t.iota_rb.apply(&r), x).scaled(&sign.to_scalar());
            col = crate::frobenius::add_sparse(&col, &term);
        }
        columns.push(col.to_dense(b.dim()));
    }
    let matrix = Matrix::from_columns(b.dim(), &columns)?;
    let degree = p.tr_a.degree.sub(&p.tr_b.degree)?.with_parity(pi_a + pi_b);
    TraceData::new(
        format!("tr_{}_{}", a.name(), b.name()),
        t.iota_ba.clone(),
        matrix,
        degree,
        psi_b.matrix.clone(),
        psi_a.matrix.clone(),
    )
}

/// Compares `κ(φ_A(1_A))` with the nested trace entry for entry.
pub fn verify_kappa_phi_route(duality: &TowerDuality, td: &TraceData) -> Result<Report> {
    let one = Element::unit(duality.tr_a.big().clone());
    let route = duality.kappa(&duality.phi_a(&one)?)?;
    let mut rep = Report::new();
    if route.matrix == td.matrix {
        rep.pass("kappa_phi", format!("{} entries agree", td.matrix.rows() * td.matrix.cols()));
    } else {
        let mut first = None;
        'outer: for s in 0..td.matrix.cols() {
            for t in 0..td.matrix.rows() {
                if route.matrix.get(t, s) != td.matrix.get(t, s) {
                    first = Some((t, s));
                    break 'outer;
                }
            }
        }
        let (t, s) = first.expect("matrices differ");
        rep.fail(
            "kappa_phi",
            format!(
                "entry ({}, {}): route {} vs formula {}",
                td.sub().label(t),
                td.big().label(s),
                crate::linalg::format_scalar(route.matrix.get(t, s)),
                crate::linalg::format_scalar(td.matrix.get(t, s))
            ),
        );
    }
    Ok(rep)
}

/// Re-runs the bimodule check on `td` with twists from `{id, ψ_A} × {id, ψ_B}`.
/// Check names are `psi_A,psi_B`, `psi_A,id`, `id,psi_B` and `id,id`.
pub fn twist_necessity(td: &TraceData, psi_a: &NakayamaMap, psi_b: &NakayamaMap) -> Result<Report> {
    let id_a = Matrix::identity(td.big().dim());
    let id_b = Matrix::identity(td.sub().dim());
    let combos = [
        ("psi_A,psi_B", &psi_a.matrix, &psi_b.matrix),
        ("psi_A,id", &psi_a.matrix, &id_b),
        ("id,psi_B", &id_a, &psi_b.matrix),
        ("id,id", &id_a, &id_b),
    ];
    let mut rep = Report::new();
    for (name, right, left) in combos {
        let r = verify_trace_bimodule(&td.with_twists(left.clone(), right.clone())?);
        let failed: Vec<&str> = r.failures().map(|c| c.name.as_str()).collect();
        if failed.is_empty() {
            rep.pass(name, "");
        } else {
            rep.fail(name, format!("fails {}", failed.join(",")));
        }
    }
    Ok(rep)
}

/// The output of [`verify_main_theorem`]. Fields are filled in as stages
/// complete; `failed_stage` names the first stage that did not pass.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub nested_trace: Option<TraceData>,
    pub psi_a: Option<NakayamaMap>,
    pub psi_b: Option<NakayamaMap>,
    pub dual_gens: Option<DualGenerators>,
    pub freeness: Option<Freeness>,
    pub twist_scan: Option<Report>,
    pub checks: Vec<(&'static str, Report)>,
    pub extension_degree: Option<Degree>,
    pub valid: bool,
    pub failed_stage: Option<&'static str>,
    pub warnings: Vec<String>,
}

/// Stage names in pipeline order.
pub const STAGES: [&str; 9] = [
    "tower",
    "inputs",
    "nakayama",
    "central",
    "dual",
    "nested",
    "extension",
    "freeness",
    "routes",
];

impl Certificate {
    fn empty() -> Self {
        Certificate {
            nested_trace: None,
            psi_a: None,
            psi_b: None,
            dual_gens: None,
            freeness: None,
            twist_scan: None,
            checks: Vec::new(),
            extension_degree: None,
            valid: false,
            failed_stage: None,
            warnings: Vec::new(),
        }
    }

    /// All checks with `<stage>.` prefixed names.
    pub fn report(&self) -> Report {
        let mut rep = Report::new();
        for (stage, r) in &self.checks {
            rep.extend(r.clone().prefixed(stage));
        }
        rep
    }

    pub fn stage(&self, name: &str) -> Option<&Report> {
        self.checks.iter().find(|(s, _)| *s == name).map(|(_, r)| r)
    }

    /// `id,id` when both Nakayama maps are identities, `psi_A,psi_B` when
    /// either is not, `undetermined` before they are computed.
    pub fn twists_label(&self) -> &'static str {
        match (&self.psi_a, &self.psi_b) {
            (Some(a), Some(b)) if a.is_identity() && b.is_identity() => "id,id",
            (Some(_), Some(_)) => "psi_A,psi_B",
            _ => "undetermined",
        }
    }

    pub fn summary(&self) -> String {
        let status = if self.valid { "VALID" } else { "INVALID" };
        let degree = match &self.extension_degree {
            Some(d) => d.to_string(),
            None => "undetermined".into(),
        };
        format!("CERTIFICATE {status} degree={degree} twists=({})", self.twists_label())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.report())?;
        for w in &self.warnings {
            writeln!(f, "WARNING {w}")?;
        }
        writeln!(f, "{}", self.summary())
    }
}

fn stage_error(stage: &'static str, e: Error) -> Error {
    Error::Pipeline {
        stage,
        source: Box::new(e),
    }
}

/// Runs the full pipeline. Stages fail fast; checks within a stage all run.
/// Errors are reserved for malformed input; failed identities produce an
/// invalid certificate.
pub fn verify_main_theorem(p: &NestedProblem) -> Result<Certificate> {
    let mut cert = Certificate::empty();
    let t = &p.tower;

    let rep = t.check();
    if !push_stage(&mut cert, "tower", rep) {
        return Ok(cert);
    }

    let mut rep = Report::new();
    for (label, td) in [("trA", &p.tr_a), ("trB", &p.tr_b)] {
        if !td.is_untwisted() {
            rep.fail(format!("{label}.untwisted"), "input traces must be untwisted");
        }
        rep.extend(verify_trace_bimodule(td).prefixed(label));
        rep.extend(verify_t1(td).prefixed(label));
        rep.extend(verify_t2(td).map_err(|e| stage_error("inputs", e))?.prefixed(label));
    }
    if !push_stage(&mut cert, "inputs", rep) {
        return Ok(cert);
    }

    // a trace without a Nakayama automorphism is a failed identity, not bad input
    let (psi_a, psi_b) = match (compute_nakayama(&p.tr_a), compute_nakayama(&p.tr_b)) {
        (Ok(a), Ok(b)) => (a, b),
        (ra, rb) => {
            let mut rep = Report::new();
            for (label, r) in [("psi_A", ra.err()), ("psi_B", rb.err())] {
                if let Some(e) = r {
                    rep.fail(format!("{label}.solve"), e.to_string());
                }
            }
            push_stage(&mut cert, "nakayama", rep);
            return Ok(cert);
        }
    };
    let mut rep = Report::new();
    rep.extend(check_automorphism(&psi_a).prefixed("psi_A"));
    rep.extend(verify_nakayama(&p.tr_a, &psi_a).prefixed("psi_A"));
    rep.extend(check_automorphism(&psi_b).prefixed("psi_B"));
    rep.extend(verify_nakayama(&p.tr_b, &psi_b).prefixed("psi_B"));
    cert.psi_a = Some(psi_a.clone());
    cert.psi_b = Some(psi_b.clone());
    if !push_stage(&mut cert, "nakayama", rep) {
        return Ok(cert);
    }

    let id_r = crate::algebra::Embedding::identity(t.r.clone());
    let mut rep = Report::new();
    rep.extend(check_ar_identities(&p.tr_a, Some(&psi_a), &id_r).prefixed("trA"));
    rep.extend(check_ar_identities(&p.tr_b, Some(&psi_b), &id_r).prefixed("trB"));
    if !push_stage(&mut cert, "central", rep) {
        return Ok(cert);
    }

    let dg = match compute_dual_generators(&p.tr_b, &p.r_basis) {
        Ok(dg) => dg,
        Err(e) => {
            let mut rep = Report::new();
            rep.fail("solve", e.to_string());
            push_stage(&mut cert, "dual", rep);
            return Ok(cert);
        }
    };
    let rep = verify_dual_generators(&dg, &p.tr_b);
    cert.dual_gens = Some(dg.clone());
    if !push_stage(&mut cert, "dual", rep) {
        return Ok(cert);
    }

    let td = build_nested_trace(p, &dg, &psi_a, &psi_b).map_err(|e| stage_error("nested", e))?;
    let mut rep = Report::new();
    let expected = p.tr_a.degree.sub(&p.tr_b.degree)?.with_parity(p.tr_a.degree.parity() + p.tr_b.degree.parity());
    rep.push(
        "degree",
        td.degree == expected,
        format!("homogeneity degree {}", td.degree),
    );
    cert.extension_degree = Some(td.degree.clone());
    cert.nested_trace = Some(td.clone());
    if !push_stage(&mut cert, "nested", rep) {
        return Ok(cert);
    }

    let mut rep = verify_trace_bimodule(&td);
    rep.extend(verify_t1(&td));
    rep.extend(verify_t2(&td).map_err(|e| stage_error("extension", e))?);
    rep.extend(check_ar_identities(&td, Some(&psi_a), &t.iota_rb));
    cert.twist_scan = Some(twist_necessity(&td, &psi_a, &psi_b)?);
    if !push_stage(&mut cert, "extension", rep) {
        return Ok(cert);
    }

    let free = freeness_probe(&t.iota_ba);
    let mut rep = Report::new();
    match &free {
        Freeness::Free { rank, basis } => {
            let labels: Vec<&str> = basis.iter().map(|&i| t.a.label(i)).collect();
            rep.pass("probe", format!("free of rank {rank} on {{{}}}", labels.join(",")));
        }
        Freeness::Inconclusive => {
            rep.pass("probe", "inconclusive");
            cert.warnings
                .push(format!("freeness probe inconclusive for {} over {}", t.a.name(), t.b.name()));
        }
    }
    cert.freeness = Some(free);
    cert.checks.push(("freeness", rep));

    let duality = TowerDuality::new(&t.iota_ba, p.tr_a.clone(), psi_a, p.tr_b.clone(), psi_b, dg)
        .map_err(|e| stage_error("routes", e))?;
    let mut rep = verify_kappa_phi_route(&duality, &td).map_err(|e| stage_error("routes", e))?;
    let rank = duality.phi_a_rank().map_err(|e| stage_error("routes", e))?;
    rep.push("phi_A_rank", rank == t.a.dim(), format!("rank {rank} = dim {}", t.a.dim()));
    if !push_stage(&mut cert, "routes", rep) {
        return Ok(cert);
    }

    cert.valid = true;
    Ok(cert)
}

fn push_stage(cert: &mut Certificate, stage: &'static str, rep: Report) -> bool {
    let ok = rep.passed();
    cert.checks.push((stage, rep));
    if !ok {
        cert.failed_stage = Some(stage);
    }
    ok
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_ring_tower, nilcoxeter_tower, GroupTable};
    use crate::algebra::AlgebraSpec;
    use std::sync::Arc;

    #[test]
    fn nilcoxeter3_certificate() {
        let p = nilcoxeter_tower(3).unwrap();
        let cert = verify_main_theorem(&p).unwrap();
        assert!(cert.valid, "{cert}");
        assert_eq!(cert.summary(), "CERTIFICATE VALID degree=(-2|even) twists=(psi_A,psi_B)");
    }

    #[test]
    fn nested_trace_n3_values() {
        let p = nilcoxeter_tower(3).unwrap();
        let cert = verify_main_theorem(&p).unwrap();
        let td = cert.nested_trace.unwrap();
        let a = &p.tower.a;
        let b = &p.tower.b;
        let w0 = a.index_of("u121").unwrap();
        assert_eq!(td.apply(&SparseVec::unit(w0)), SparseVec::unit(b.index_of("u1").unwrap()));
    }

    #[test]
    fn s3_over_a3_is_untwisted() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let a3: Vec<usize> = ["e", "c123", "c132"].iter().map(|l| s3.index_of(l).unwrap()).collect();
        let p = group_ring_tower(&s3, &a3, &Arc::new(AlgebraSpec::rationals(1))).unwrap();
        let cert = verify_main_theorem(&p).unwrap();
        assert!(cert.valid, "{cert}");
        assert_eq!(cert.summary(), "CERTIFICATE VALID degree=(0|even) twists=(id,id)");
        assert!(cert.twist_scan.unwrap().passed());
    }

    #[test]
    fn zero_trace_fails_inputs() {
        let mut p = nilcoxeter_tower(3).unwrap();
        p.tr_a.matrix = Matrix::zeros(1, 6);
        let cert = verify_main_theorem(&p).unwrap();
        assert!(!cert.valid);
        assert_eq!(cert.failed_stage, Some("inputs"));
        assert!(cert.report().failures().any(|c| c.name == "inputs.trA.T1"));
    }
}
