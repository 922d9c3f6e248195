//! Trace maps of (twisted) Frobenius extensions: the bimodule property,
//! axioms T1 and T2, Nakayama automorphisms, dual generator sets and a
//! freeness probe.

use std::sync::Arc;

use num::{One, Zero};

use crate::algebra::{AlgebraSpec, Element, Embedding};
use crate::error::{Error, Result};
use crate::grading::{koszul_sign, Degree, Parity};
use crate::homspace::{hom_space, Action, ModuleSpec};
use crate::linalg::{kernel_of_rows, solve_sparse, subspace_equal, Echelon, Matrix, Scalar, SparseVec, Subspace};
use crate::report::{Report, Witnesses};

/// A trace `tr: ^β_B A^α_B → {λ,π} B` for an extension `B ⊆ A`.
///
/// `matrix` is `dim B × dim A`; `degree` is the homogeneity degree `(-λ, π)`
/// of `tr` as a linear map. `left_twist` (β) is an automorphism of `B`,
/// `right_twist` (α) one of `A`. Twists are not validated here; see
/// [`check_automorphism`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceData {
    pub name: String,
    pub embedding: Embedding,
    pub matrix: Matrix,
    pub degree: Degree,
    pub left_twist: Matrix,
    pub right_twist: Matrix,
}

impl TraceData {
    pub fn new(
        name: impl Into<String>,
        embedding: Embedding,
        matrix: Matrix,
        degree: Degree,
        left_twist: Matrix,
        right_twist: Matrix,
    ) -> Result<Self> {
        let (s, b) = (embedding.source().dim(), embedding.target().dim());
        let shape_ok = matrix.rows() == s
            && matrix.cols() == b
            && left_twist.rows() == s
            && left_twist.cols() == s
            && right_twist.rows() == b
            && right_twist.cols() == b;
        if !shape_ok {
            return Err(Error::rejected("trace or twist matrix has the wrong shape"));
        }
        if degree.arity() != embedding.source().arity() {
            return Err(Error::ArityMismatch {
                expected: embedding.source().arity(),
                found: degree.arity(),
            });
        }
        Ok(TraceData {
            name: name.into(),
            embedding,
            matrix,
            degree,
            left_twist,
            right_twist,
        })
    }

    pub fn untwisted(name: impl Into<String>, embedding: Embedding, matrix: Matrix, degree: Degree) -> Result<Self> {
        let (s, b) = (embedding.source().dim(), embedding.target().dim());
        TraceData::new(name, embedding, matrix, degree, Matrix::identity(s), Matrix::identity(b))
    }

    pub fn sub(&self) -> &Arc<AlgebraSpec> {
        self.embedding.source()
    }

    pub fn big(&self) -> &Arc<AlgebraSpec> {
        self.embedding.target()
    }

    pub fn is_untwisted(&self) -> bool {
        self.left_twist.is_identity() && self.right_twist.is_identity()
    }

    /// The same map with other twists.
    pub fn with_twists(&self, left: Matrix, right: Matrix) -> Result<TraceData> {
        TraceData::new(
            self.name.clone(),
            self.embedding.clone(),
            self.matrix.clone(),
            self.degree.clone(),
            left,
            right,
        )
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.matrix.mul_sparse(x)
    }

    /// The shift `{λ,π}` making the trace an even degree-zero map.
    pub fn shift(&self) -> Degree {
        self.degree.negate()
    }

    /// `λ` and `π` read off the homogeneity degree.
    pub fn lambda_pi(&self) -> Degree {
        self.degree.negate()
    }

    /// `B` as a left module over itself, shifted by `{λ,π}`.
    pub fn target_module(&self) -> ModuleSpec {
        ModuleSpec::new(self.sub().clone(), Some(Action::regular(self.sub().clone())), None, self.shift())
    }

    /// `^β A` as a left `B`-module.
    pub fn source_module(&self) -> Result<ModuleSpec> {
        let left = Action::new(
            self.sub().clone(),
            self.big(),
            self.embedding.matrix().mul(&self.left_twist)?,
        )?;
        Ok(ModuleSpec::new(self.big().clone(), Some(left), None, Degree::zero(self.big().arity())))
    }

    /// `tr ∘ ρ_a` for basis `a`, as a `dim B × dim A` matrix flattened row-major.
    fn trace_times(&self, a: usize) -> SparseVec {
        let big = self.big();
        let n = big.dim();
        let ea = SparseVec::unit(a);
        let mut entries = Vec::new();
        for s in 0..n {
            let sign = koszul_sign(big.parity(a), big.parity(s));
            let prod = big.mul_sparse(&SparseVec::unit(s), &ea);
            if prod.is_zero() {
                continue;
            }
            for (t, x) in self.apply(&prod).iter() {
                entries.push((t * n + s, sign.apply(x.clone())));
            }
        }
        SparseVec::from_entries(entries)
    }
}

/// `tr(β(b) a) = (-1)^{π b̄} b tr(a)`, `tr(a α(b)) = tr(a) b` on basis pairs,
/// and homogeneity of the stated degree.
pub fn verify_trace_bimodule(td: &TraceData) -> Report {
    let sub = td.sub();
    let big = td.big();
    let pi = td.degree.parity();
    let mut rep = Report::new();
    let tr_cols: Vec<SparseVec> = (0..big.dim()).map(|a| td.apply(&SparseVec::unit(a))).collect();
    let beta: Vec<SparseVec> = (0..sub.dim())
        .map(|b| td.embedding.apply(&td.left_twist.sparse_column(b)))
        .collect();
    let alpha: Vec<SparseVec> = (0..sub.dim())
        .map(|b| td.right_twist.mul_sparse(&td.embedding.image(b)))
        .collect();

    let mut left = Witnesses::default();
    let mut right = Witnesses::default();
    for b in 0..sub.dim() {
        let eb = SparseVec::unit(b);
        let sign = koszul_sign(pi, sub.parity(b)).to_scalar();
        for (a, tr_a) in tr_cols.iter().enumerate() {
            let ea = SparseVec::unit(a);
            let lhs = td.apply(&big.mul_sparse(&beta[b], &ea));
            let rhs = sub.mul_sparse(&eb, tr_a).scaled(&sign);
            if lhs != rhs {
                left.record(|| {
                    format!(
                        "b={} a={}: tr(beta(b)a) = {} but sign*b*tr(a) = {}",
                        sub.label(b),
                        big.label(a),
                        sub.format(&lhs),
                        sub.format(&rhs)
                    )
                });
            }
            let lhs = td.apply(&big.mul_sparse(&ea, &alpha[b]));
            let rhs = sub.mul_sparse(&tr_cols[a], &eb);
            if lhs != rhs {
                right.record(|| {
                    format!(
                        "b={} a={}: tr(a alpha(b)) = {} but tr(a)*b = {}",
                        sub.label(b),
                        big.label(a),
                        sub.format(&lhs),
                        sub.format(&rhs)
                    )
                });
            }
        }
    }
    rep.witnesses("bimodule_left", left, "");
    rep.witnesses("bimodule_right", right, "");
    rep.extend(check_homogeneity(td));
    rep
}

fn check_homogeneity(td: &TraceData) -> Report {
    let sub = td.sub();
    let big = td.big();
    let mut w = Witnesses::default();
    for a in 0..big.dim() {
        let expect = big.degree(a).add(&td.degree).expect("uniform arity");
        for (t, _) in td.apply(&SparseVec::unit(a)).iter() {
            if sub.degree(t) != &expect {
                w.record(|| {
                    format!(
                        "tr({}) has component {} of degree {} (expected {})",
                        big.label(a),
                        sub.label(t),
                        sub.degree(t),
                        expect
                    )
                });
            }
        }
    }
    let mut rep = Report::new();
    rep.witnesses("homogeneity", w, &format!("degree {}", td.degree));
    rep
}

/// T1: the only `a` with `tr(e_i a) = 0` for all basis `e_i` is zero.
pub fn verify_t1(td: &TraceData) -> Report {
    let sub = td.sub();
    let big = td.big();
    let (n, d) = (big.dim(), sub.dim());
    let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * d];
    for i in 0..n {
        let ei = SparseVec::unit(i);
        for a in 0..n {
            let v = td.apply(&big.mul_sparse(&ei, &SparseVec::unit(a)));
            for (r, x) in v.iter() {
                rows[i * d + r].push((a, x.clone()));
            }
        }
    }
    let ker = kernel_of_rows(n, rows.into_iter().map(SparseVec::from_entries));
    let mut rep = Report::new();
    match ker.basis().first() {
        None => rep.pass("T1", format!("pairing rank {n} = dim {n}")),
        Some(v) => rep.fail(
            "T1",
            format!(
                "pairing rank {} < dim {n}; tr(A a) = 0 for a = {}",
                n - ker.dim(),
                big.format(v)
            ),
        ),
    }
    rep
}

/// T2: `HOM_B(^β A, {λ,π}B)` equals the span of the maps `tr ∘ ρ_a`.
pub fn verify_t2(td: &TraceData) -> Result<Report> {
    let source = td.source_module()?;
    let target = td.target_module();
    let hom = hom_space(&source, &target)?;
    let n = td.big().dim();
    let image = Subspace::span(n * td.sub().dim(), (0..n).map(|a| td.trace_times(a)));
    let mut rep = Report::new();
    let equal = subspace_equal(&hom, &image)?;
    let detail = format!("dim HOM = {}, dim image = {}", hom.dim(), image.dim());
    rep.push("T2", equal, detail);
    Ok(rep)
}

/// An automorphism of `algebra`; column `j` is the image of basis `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaMap {
    pub algebra: Arc<AlgebraSpec>,
    pub matrix: Matrix,
    pub trace: String,
}

impl NakayamaMap {
    pub fn identity(algebra: Arc<AlgebraSpec>, trace: impl Into<String>) -> Self {
        let n = algebra.dim();
        NakayamaMap {
            algebra,
            matrix: Matrix::identity(n),
            trace: trace.into(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.matrix.mul_sparse(x)
    }

    pub fn image_of(&self, label: &str) -> Option<SparseVec> {
        self.algebra.index_of(label).map(|i| self.matrix.sparse_column(i))
    }
}

/// Solves `tr(c a) = (-1)^{ā c̄} tr(a ψ(c))` for every basis `c`, with `ψ(c)`
/// restricted to the component of degree `|c|`.
pub fn compute_nakayama(td: &TraceData) -> Result<NakayamaMap> {
    let big = td.big();
    let sub = td.sub();
    let n = big.dim();
    let mut columns = Vec::with_capacity(n);
    for c in 0..n {
        let ec = SparseVec::unit(c);
        let candidates = big.basis_of_degree(big.degree(c));
        let mut eqs = Vec::new();
        for a in 0..n {
            let ea = SparseVec::unit(a);
            let sign = koszul_sign(big.parity(a), big.parity(c)).to_scalar();
            let rhs = td.apply(&big.mul_sparse(&ec, &ea));
            let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); sub.dim()];
            for (k, &cand) in candidates.iter().enumerate() {
                for (r, x) in td.apply(big.product(a, cand)).iter() {
                    rows[r].push((k, x * &sign));
                }
            }
            for (r, row) in rows.into_iter().enumerate() {
                let b = rhs.get(r).cloned().unwrap_or_else(Scalar::zero);
                if row.is_empty() && b.is_zero() {
                    continue;
                }
                eqs.push((SparseVec::from_entries(row), b));
            }
        }
        let sol = solve_sparse(candidates.len(), eqs).ok_or_else(|| {
            Error::Singular(format!(
                "{}: no psi({}) satisfies the Nakayama equation",
                td.name,
                big.label(c)
            ))
        })?;
        if !sol.is_unique() {
            return Err(Error::Singular(format!(
                "{}: psi({}) is not unique (trace degenerate)",
                td.name,
                big.label(c)
            )));
        }
        let mut col = vec![Scalar::zero(); n];
        for (k, &cand) in candidates.iter().enumerate() {
            col[cand] = sol.solution[k].clone();
        }
        columns.push(col);
    }
    Ok(NakayamaMap {
        algebra: big.clone(),
        matrix: Matrix::from_columns(n, &columns)?,
        trace: td.name.clone(),
    })
}

/// Re-checks the Nakayama equation on all basis pairs `(c, a)`.
pub fn verify_nakayama(td: &TraceData, psi: &NakayamaMap) -> Report {
    let big = td.big();
    let sub = td.sub();
    let mut w = Witnesses::default();
    for c in 0..big.dim() {
        let pc = psi.matrix.sparse_column(c);
        let ec = SparseVec::unit(c);
        for a in 0..big.dim() {
            let ea = SparseVec::unit(a);
            let lhs = td.apply(&big.mul_sparse(&ec, &ea));
            let rhs = td
                .apply(&big.mul_sparse(&ea, &pc))
                .scaled(&koszul_sign(big.parity(a), big.parity(c)).to_scalar());
            if lhs != rhs {
                w.record(|| {
                    format!(
                        "c={} a={}: tr(ca) = {} but sign*tr(a psi(c)) = {}",
                        big.label(c),
                        big.label(a),
                        sub.format(&lhs),
                        sub.format(&rhs)
                    )
                });
            }
        }
    }
    let mut rep = Report::new();
    rep.witnesses("nakayama_equation", w, "");
    rep
}

/// Unital, multiplicative on basis pairs, degree-preserving and invertible.
pub fn check_automorphism(psi: &NakayamaMap) -> Report {
    check_automorphism_matrix(&psi.algebra, &psi.matrix)
}

pub fn check_automorphism_matrix(alg: &AlgebraSpec, m: &Matrix) -> Report {
    let n = alg.dim();
    let mut rep = Report::new();
    if m.rows() != n || m.cols() != n {
        rep.fail("shape", format!("{}x{} for dim {n}", m.rows(), m.cols()));
        return rep;
    }
    let unit = alg.unit_sparse();
    let image = m.mul_sparse(&unit);
    if image == unit {
        rep.pass("unital", "");
    } else {
        rep.fail("unital", format!("1 maps to {}", alg.format(&image)));
    }
    let cols: Vec<SparseVec> = (0..n).map(|j| m.sparse_column(j)).collect();
    let mut w = Witnesses::default();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.mul_sparse(alg.product(i, j));
            let rhs = alg.mul_sparse(&cols[i], &cols[j]);
            if lhs != rhs {
                w.record(|| {
                    format!(
                        "psi({}*{}) = {} but psi({})psi({}) = {}",
                        alg.label(i),
                        alg.label(j),
                        alg.format(&lhs),
                        alg.label(i),
                        alg.label(j),
                        alg.format(&rhs)
                    )
                });
            }
        }
    }
    rep.witnesses("multiplicative", w, "");
    let mut w = Witnesses::default();
    for (j, col) in cols.iter().enumerate() {
        for (k, _) in col.iter() {
            if alg.degree(k) != alg.degree(j) {
                w.record(|| format!("{} maps onto {} of degree {}", alg.label(j), alg.label(k), alg.degree(k)));
            }
        }
    }
    rep.witnesses("degree", w, "");
    let rank = m.rank();
    rep.push("invertible", rank == n, format!("rank={rank}/{n}"));
    rep
}

/// Families `{x_i}`, `{y_i}` in `B` with `b = Σ y_i tr(x_i b)` and its signed
/// mirror; `lambda_pi` is `(λ, π)` for the trace of degree `(-λ, π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGenerators {
    pub x: Vec<Element>,
    pub y: Vec<Element>,
    pub lambda_pi: Degree,
}

impl DualGenerators {
    /// The degree `(λ - |x_i|, π - x̄_i)` required of `y_i`.
    pub fn expected_degree(&self, i: usize) -> Option<Degree> {
        let d = self.x[i].degree()?;
        self.lambda_pi.sub(&d).ok()
    }

    /// Parity of `y_i`, taken from the degree condition.
    pub(crate) fn y_parity(&self, i: usize) -> Parity {
        match self.y[i].degree() {
            Some(d) => d.parity(),
            None => self.expected_degree(i).map(|d| d.parity()).unwrap_or(Parity::Even),
        }
    }
}

/// Both reconstruction sums for basis `b`: `(-1)^{π b̄} Σ (-1)^{π x̄_i} tr(b y_i) x_i`
/// and `Σ y_i tr(x_i b)`.
fn reconstruction(td: &TraceData, x: &[SparseVec], y: &[SparseVec], b: usize) -> (SparseVec, SparseVec) {
    let big = td.big();
    let r_emb = &td.embedding;
    let pi = td.degree.parity();
    let eb = SparseVec::unit(b);
    let mut first = SparseVec::new();
    let mut second = SparseVec::new();
    for (xi, yi) in x.iter().zip(y) {
        let xpar = big.homogeneous_degree(xi).map(Degree::parity).unwrap_or(Parity::Even);
        let t = r_emb.apply(&td.apply(&big.mul_sparse(&eb, yi)));
        let term = big
            .mul_sparse(&t, xi)
            .scaled(&koszul_sign(pi, xpar).to_scalar());
        first = add_sparse(&first, &term);
        let t = r_emb.apply(&td.apply(&big.mul_sparse(xi, &eb)));
        second = add_sparse(&second, &big.mul_sparse(yi, &t));
    }
    let first = first.scaled(&koszul_sign(pi, big.parity(b)).to_scalar());
    (first, second)
}

pub(crate) fn add_sparse(x: &SparseVec, y: &SparseVec) -> SparseVec {
    SparseVec::from_entries(x.iter().chain(y.iter()).map(|(i, c)| (i, c.clone())))
}

/// Solves for `y` given an `R`-basis `x` of `B` (basis indices of `td.big()`),
/// imposing both reconstruction identities and the degree condition.
pub fn compute_dual_generators(td: &TraceData, x: &[usize]) -> Result<DualGenerators> {
    let big = td.big();
    let n = big.dim();
    let lambda_pi = td.lambda_pi();
    if !td.is_untwisted() {
        return Err(Error::rejected("dual generators need an untwisted trace"));
    }
    // unknown (i, k): coefficient of basis k in y_i, k of degree λ - |x_i|
    let mut offsets = Vec::with_capacity(x.len());
    let mut blocks = Vec::with_capacity(x.len());
    let mut total = 0;
    for &xi in x {
        if xi >= n {
            return Err(Error::rejected(format!("R-basis index {xi} out of range")));
        }
        let want = lambda_pi.sub(big.degree(xi))?;
        let block = big.basis_of_degree(&want);
        offsets.push(total);
        total += block.len();
        blocks.push(block);
    }
    let pi = td.degree.parity();
    let r_emb = &td.embedding;
    let mut eqs = Vec::new();
    for b in 0..n {
        let outer = koszul_sign(pi, big.parity(b));
        let mut first: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        let mut second: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
        for (i, &xi) in x.iter().enumerate() {
            let ex = SparseVec::unit(xi);
            let inner = outer * koszul_sign(pi, big.parity(xi));
            let t2 = r_emb.apply(&td.apply(big.product(xi, b)));
            for (k, &cand) in blocks[i].iter().enumerate() {
                let var = offsets[i] + k;
                let ek = SparseVec::unit(cand);
                let t1 = r_emb.apply(&td.apply(big.product(b, cand)));
                if !t1.is_zero() {
                    for (row, c) in big.mul_sparse(&t1, &ex).iter() {
                        first[row].push((var, inner.apply(c.clone())));
                    }
                }
                if !t2.is_zero() {
                    for (row, c) in big.mul_sparse(&ek, &t2).iter() {
                        second[row].push((var, c.clone()));
                    }
                }
            }
        }
        for side in [first, second] {
            for (row, entries) in side.into_iter().enumerate() {
                let rhs = if row == b { Scalar::one() } else { Scalar::zero() };
                if entries.is_empty() && rhs.is_zero() {
                    continue;
                }
                eqs.push((SparseVec::from_entries(entries), rhs));
            }
        }
    }
    let sol = solve_sparse(total, eqs).ok_or_else(|| {
        Error::Singular(format!(
            "{}: no dual generators exist for the given basis (Gram system inconsistent)",
            td.name
        ))
    })?;
    if !sol.is_unique() {
        return Err(Error::Singular(format!(
            "{}: dual generators are not unique for the given basis",
            td.name
        )));
    }
    let xs = x.iter().map(|&i| Element::basis(big.clone(), i)).collect();
    let ys = blocks
        .iter()
        .enumerate()
        .map(|(i, block)| {
            let v = SparseVec::from_entries(
                block
                    .iter()
                    .enumerate()
                    .map(|(k, &cand)| (cand, sol.solution[offsets[i] + k].clone())),
            );
            Element::from_sparse(big.clone(), &v)
        })
        .collect();
    Ok(DualGenerators {
        x: xs,
        y: ys,
        lambda_pi,
    })
}

/// Both reconstruction identities on every basis `b`, plus the degree condition.
pub fn verify_dual_generators(dg: &DualGenerators, td: &TraceData) -> Report {
    let big = td.big();
    let x: Vec<SparseVec> = dg.x.iter().map(Element::to_sparse).collect();
    let y: Vec<SparseVec> = dg.y.iter().map(Element::to_sparse).collect();
    let mut rep = Report::new();
    if x.len() != y.len() {
        rep.fail("dual_bases", format!("{} x_i but {} y_i", x.len(), y.len()));
        return rep;
    }
    let mut w1 = Witnesses::default();
    let mut w2 = Witnesses::default();
    for b in 0..big.dim() {
        let eb = SparseVec::unit(b);
        let (first, second) = reconstruction(td, &x, &y, b);
        if first != eb {
            w1.record(|| format!("b={}: signed sum gives {}", big.label(b), big.format(&first)));
        }
        if second != eb {
            w2.record(|| format!("b={}: sum y_i tr(x_i b) gives {}", big.label(b), big.format(&second)));
        }
    }
    rep.witnesses("dual_bases_first", w1, "");
    rep.witnesses("dual_bases_second", w2, "");
    let mut w = Witnesses::default();
    for i in 0..x.len() {
        let want = dg.expected_degree(i);
        if dg.y[i].is_zero() {
            continue;
        }
        let got = dg.y[i].degree();
        if want.is_none() || got != want {
            w.record(|| {
                format!(
                    "y_{} = {} has degree {} (expected {})",
                    i + 1,
                    dg.y[i],
                    got.map(|d| d.to_string()).unwrap_or_else(|| "inhomogeneous".into()),
                    want.map(|d| d.to_string()).unwrap_or_else(|| "undefined".into())
                )
            });
        }
    }
    rep.witnesses("dual_degrees", w, "");
    rep
}

/// `α ∘ ι = ι ∘ β` on the image of `R`, and `ψ ∘ ι = ι` for a Nakayama map on
/// `td.big()`. `r_into_sub` embeds `R` into `td.sub()`.
pub fn check_ar_identities(td: &TraceData, psi: Option<&NakayamaMap>, r_into_sub: &Embedding) -> Report {
    let big = td.big();
    let mut rep = Report::new();
    let mut w = Witnesses::default();
    let r = r_into_sub.source();
    for ri in 0..r.dim() {
        let in_sub = r_into_sub.image(ri);
        let in_big = td.embedding.apply(&in_sub);
        let lhs = td.right_twist.mul_sparse(&in_big);
        let rhs = td.embedding.apply(&td.left_twist.mul_sparse(&in_sub));
        if lhs != rhs {
            w.record(|| {
                format!(
                    "r={}: alpha(r) = {} but beta(r) = {}",
                    r.label(ri),
                    big.format(&lhs),
                    big.format(&rhs)
                )
            });
        }
    }
    rep.witnesses("alpha_eq_beta_on_R", w, "");
    if let Some(psi) = psi {
        let mut w = Witnesses::default();
        for ri in 0..r.dim() {
            let img = td.embedding.apply(&r_into_sub.image(ri));
            let moved = psi.apply(&img);
            if moved != img {
                w.record(|| format!("psi({}) = {}", r.label(ri), big.format(&moved)));
            }
        }
        rep.witnesses("psi_fixes_R", w, "");
    }
    rep
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Freeness {
    /// Free of the given rank on the listed basis elements of the big algebra.
    Free { rank: usize, basis: Vec<usize> },
    Inconclusive,
}

/// Greedy search for a left `B`-basis of `A` among the basis elements of `A`.
pub fn freeness_probe(embedding: &Embedding) -> Freeness {
    let big = embedding.target();
    let sub = embedding.source();
    let images: Vec<SparseVec> = (0..sub.dim()).map(|b| embedding.image(b)).collect();
    let mut span = Echelon::new(big.dim());
    let mut chosen = Vec::new();
    for g in 0..big.dim() {
        let eg = SparseVec::unit(g);
        let mut grew = false;
        let mut trial = span.clone();
        let mut independent = true;
        for img in &images {
            if trial.insert(big.mul_sparse(img, &eg)) {
                grew = true;
            } else {
                independent = false;
            }
        }
        if grew {
            chosen.push(g);
            span = trial;
            if !independent {
                return Freeness::Inconclusive;
            }
        }
        if span.rank() == big.dim() {
            break;
        }
    }
    if span.rank() == big.dim() && chosen.len() * sub.dim() == big.dim() {
        Freeness::Free {
            rank: chosen.len(),
            basis: chosen,
        }
    } else {
        Freeness::Inconclusive
    }
}
