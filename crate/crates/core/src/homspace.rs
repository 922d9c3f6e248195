//! Graded HOM-spaces between twisted, shifted modules carried by tower
//! algebras, and the bimodule isomorphisms between `HOM_B(^{ψ_B}M, B)`,
//! `M^∨ = HOM_R(M, R)` and `A`.

use std::sync::Arc;

use num::Zero;

use crate::algebra::{AlgebraSpec, Element, Embedding};
use crate::error::{Error, Result};
use crate::frobenius::{DualGenerators, NakayamaMap, TraceData};
use crate::grading::{koszul_sign, Degree, Parity};
use crate::linalg::{kernel_of_rows, Matrix, Scalar, SparseVec, Subspace};

/// An algebra acting on a carrier through `map` (`dim carrier × dim actor`).
///
/// Twists are folded into `map`. `multiplicative` records whether `map`
/// respects products and the unit; constraints then only need generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Action {
    actor: Arc<AlgebraSpec>,
    map: Matrix,
    multiplicative: bool,
}

impl Action {
    pub fn new(actor: Arc<AlgebraSpec>, carrier: &AlgebraSpec, map: Matrix) -> Result<Self> {
        if map.rows() != carrier.dim() || map.cols() != actor.dim() {
            return Err(Error::DimensionMismatch {
                expected: carrier.dim() * actor.dim(),
                found: map.rows() * map.cols(),
            });
        }
        let multiplicative = is_unital_homomorphism(&actor, carrier, &map);
        Ok(Action {
            actor,
            map,
            multiplicative,
        })
    }

    /// The algebra acting on itself.
    pub fn regular(alg: Arc<AlgebraSpec>) -> Self {
        let n = alg.dim();
        Action {
            actor: alg,
            map: Matrix::identity(n),
            multiplicative: true,
        }
    }

    pub fn from_embedding(e: &Embedding) -> Result<Self> {
        Action::new(e.source().clone(), e.target(), e.matrix().clone())
    }

    /// `x ↦ ι(τ(x))` for an automorphism `τ` of the actor.
    pub fn twisted(e: &Embedding, twist: &Matrix) -> Result<Self> {
        Action::new(e.source().clone(), e.target(), e.matrix().mul(twist)?)
    }

    pub fn actor(&self) -> &Arc<AlgebraSpec> {
        &self.actor
    }

    pub fn map(&self) -> &Matrix {
        &self.map
    }

    pub fn image(&self, s: usize) -> SparseVec {
        self.map.sparse_column(s)
    }

    /// Actor basis elements whose action determines all others.
    fn generators(&self) -> Vec<usize> {
        if self.multiplicative {
            algebra_generators(&self.actor)
        } else {
            (0..self.actor.dim()).collect()
        }
    }
}

fn is_unital_homomorphism(actor: &AlgebraSpec, carrier: &AlgebraSpec, map: &Matrix) -> bool {
    if map.mul_sparse(&actor.unit_sparse()) != carrier.unit_sparse() {
        return false;
    }
    let cols: Vec<SparseVec> = (0..actor.dim()).map(|j| map.sparse_column(j)).collect();
    (0..actor.dim()).all(|i| {
        (0..actor.dim()).all(|j| map.mul_sparse(actor.product(i, j)) == carrier.mul_sparse(&cols[i], &cols[j]))
    })
}

/// Greedy homogeneous generating set: basis elements in order, skipping
/// those already in the subalgebra generated by earlier choices.
pub fn algebra_generators(alg: &AlgebraSpec) -> Vec<usize> {
    let n = alg.dim();
    let mut span = crate::linalg::Echelon::new(n);
    let mut members: Vec<SparseVec> = Vec::new();
    let unit = alg.unit_sparse();
    span.insert(unit.clone());
    members.push(unit);
    let mut gens = Vec::new();
    for i in 0..n {
        let e = SparseVec::unit(i);
        if span.contains(&e) {
            continue;
        }
        gens.push(i);
        // close under left multiplication by all generators
        let mut frontier: Vec<SparseVec> = members.clone();
        while let Some(v) = frontier.pop() {
            for &g in &gens {
                let p = alg.mul_sparse(&SparseVec::unit(g), &v);
                if span.insert(p.clone()) {
                    members.push(p.clone());
                    frontier.push(p);
                }
            }
        }
        if span.rank() == n {
            break;
        }
    }
    gens
}

/// A graded vector space carried by an algebra, with optional left and right
/// actions and a shift `{λ,π}`.
///
/// Shifted degrees are `deg + shift`; the left action on the shifted module
/// is `s · m = (-1)^{π s̄} map(s) m`, the right action `m · s = m map(s)`.
/// HOM constraints use `left`. `outer_left` is a larger left action kept for
/// [`act_on_hom`] when `left` is its restriction to a subalgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub carrier: Arc<AlgebraSpec>,
    pub left: Option<Action>,
    pub right: Option<Action>,
    pub outer_left: Option<Action>,
    pub shift: Degree,
}

impl ModuleSpec {
    pub fn new(carrier: Arc<AlgebraSpec>, left: Option<Action>, right: Option<Action>, shift: Degree) -> Self {
        ModuleSpec {
            carrier,
            left,
            right,
            outer_left: None,
            shift,
        }
    }

    pub fn with_outer_left(mut self, action: Action) -> Self {
        self.outer_left = Some(action);
        self
    }

    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    pub fn degree(&self, i: usize) -> Degree {
        self.carrier.degree(i).add(&self.shift).expect("uniform arity")
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.carrier.parity(i) + self.shift.parity()
    }

    pub fn left_act(&self, s: usize, m: &SparseVec) -> SparseVec {
        let act = self.left.as_ref().expect("module has a left action");
        let sign = koszul_sign(self.shift.parity(), act.actor.parity(s));
        self.carrier.mul_sparse(&act.image(s), m).scaled(&sign.to_scalar())
    }

    pub fn right_act(&self, m: &SparseVec, s: usize) -> SparseVec {
        let act = self.right.as_ref().expect("module has a right action");
        self.carrier.mul_sparse(m, &act.image(s))
    }

    fn outer_act(&self, s: usize, m: &SparseVec) -> SparseVec {
        match &self.outer_left {
            Some(act) => {
                let sign = koszul_sign(self.shift.parity(), act.actor.parity(s));
                self.carrier.mul_sparse(&act.image(s), m).scaled(&sign.to_scalar())
            }
            None => self.left_act(s, m),
        }
    }

    pub fn left_act_element(&self, b: &SparseVec, m: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (s, c) in b.iter() {
            out = crate::frobenius::add_sparse(&out, &self.left_act(s, m).scaled(c));
        }
        out
    }
}

/// A homogeneous linear map between modules; column `s` of `matrix` is the
/// image of source basis `s`. `degree` is relative to the shifted gradings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomElement {
    pub source: Arc<ModuleSpec>,
    pub target: Arc<ModuleSpec>,
    pub matrix: Matrix,
    pub degree: Degree,
}

impl HomElement {
    /// Infers the degree; rejects inhomogeneous matrices. The zero map gets
    /// degree zero.
    pub fn new(source: Arc<ModuleSpec>, target: Arc<ModuleSpec>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        let degree = infer_degree(&source, &target, &matrix)?;
        Ok(HomElement {
            source,
            target,
            matrix,
            degree,
        })
    }

    pub fn zero(source: Arc<ModuleSpec>, target: Arc<ModuleSpec>) -> Self {
        let matrix = Matrix::zeros(target.dim(), source.dim());
        let degree = Degree::zero(source.carrier.arity());
        HomElement {
            source,
            target,
            matrix,
            degree,
        }
    }

    pub fn parity(&self) -> Parity {
        self.degree.parity()
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, m: &SparseVec) -> SparseVec {
        self.matrix.mul_sparse(m)
    }

    /// Row-major flattening, index `t * dim(source) + s`.
    pub fn flatten(&self) -> SparseVec {
        flatten(&self.matrix)
    }
}

pub(crate) fn flatten(m: &Matrix) -> SparseVec {
    let n = m.cols();
    SparseVec::from_entries(
        (0..m.rows()).flat_map(|t| {
            m.row(t)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(move |(s, x)| (t * n + s, x.clone()))
        }),
    )
}

fn infer_degree(source: &ModuleSpec, target: &ModuleSpec, m: &Matrix) -> Result<Degree> {
    let mut found: Option<Degree> = None;
    for t in 0..m.rows() {
        for s in 0..m.cols() {
            if m.get(t, s).is_zero() {
                continue;
            }
            let d = target.degree(t).sub(&source.degree(s))?;
            match &found {
                None => found = Some(d),
                Some(f) if *f == d => {}
                Some(f) => {
                    return Err(Error::rejected(format!(
                        "map is not homogeneous: degrees {f} and {d} both occur"
                    )))
                }
            }
        }
    }
    Ok(found.unwrap_or_else(|| Degree::zero(source.carrier.arity())))
}

/// Basis of the parity-`sector` part of `HOM(source, target)`: linear maps `f`
/// with `f(s · m) = (-1)^{σ s̄} s · f(m)` for the left actions.
pub fn hom_basis(source: &ModuleSpec, target: &ModuleSpec, sector: Parity) -> Result<Vec<HomElement>> {
    let (ns, nt) = (source.dim(), target.dim());
    // unknowns: entries (t, s) whose shifted parities differ by σ
    let mut var_of = vec![None; nt * ns];
    let mut entries = Vec::new();
    for t in 0..nt {
        for s in 0..ns {
            if target.parity(t) + source.parity(s) == sector {
                var_of[t * ns + s] = Some(entries.len());
                entries.push((t, s));
            }
        }
    }
    let mut rows = Vec::new();
    match (&source.left, &target.left) {
        (None, None) => {}
        (Some(la), Some(lb)) => {
            if la.actor != lb.actor {
                return Err(Error::rejected(format!(
                    "left actors differ: `{}` vs `{}`",
                    la.actor.name(),
                    lb.actor.name()
                )));
            }
            let mut gens = la.generators();
            if !lb.multiplicative {
                gens = (0..la.actor.dim()).collect();
            }
            for &g in &gens {
                let sigma = koszul_sign(sector, la.actor.parity(g)).to_scalar();
                let tgt_action: Vec<SparseVec> = (0..nt).map(|t| target.left_act(g, &SparseVec::unit(t))).collect();
                for s in 0..ns {
                    let gs = source.left_act(g, &SparseVec::unit(s));
                    // coordinate u of f(g·s) - sign · g·f(s)
                    let mut eq: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nt];
                    for (u, eq_u) in eq.iter_mut().enumerate() {
                        for (k, c) in gs.iter() {
                            if let Some(v) = var_of[u * ns + k] {
                                eq_u.push((v, c.clone()));
                            }
                        }
                    }
                    for (t, img) in tgt_action.iter().enumerate() {
                        let Some(v) = var_of[t * ns + s] else { continue };
                        for (u, d) in img.iter() {
                            eq[u].push((v, -(d * &sigma)));
                        }
                    }
                    rows.extend(eq.into_iter().filter(|e| !e.is_empty()).map(SparseVec::from_entries));
                }
            }
        }
        _ => return Err(Error::rejected("only one of the two modules has a left action")),
    }
    let ker = kernel_of_rows(entries.len(), rows);
    let source = Arc::new(source.clone());
    let target = Arc::new(target.clone());
    ker.basis()
        .iter()
        .map(|v| {
            let mut m = Matrix::zeros(nt, ns);
            for (k, x) in v.iter() {
                let (t, s) = entries[k];
                m.set(t, s, x.clone());
            }
            HomElement::new(source.clone(), target.clone(), m)
        })
        .collect()
}

/// Both parity sectors of `HOM(source, target)` as a subspace of flattened maps.
pub fn hom_space(source: &ModuleSpec, target: &ModuleSpec) -> Result<Subspace> {
    let mut vecs = Vec::new();
    for p in [Parity::Even, Parity::Odd] {
        vecs.extend(hom_basis(source, target, p)?.iter().map(HomElement::flatten));
    }
    Ok(Subspace::span(source.dim() * target.dim(), vecs))
}

/// Re-checks the left-linearity constraint over every actor and source basis pair.
pub fn satisfies_hom_constraint(f: &HomElement) -> bool {
    let (Some(la), Some(_)) = (&f.source.left, &f.target.left) else {
        return f.source.left.is_none() && f.target.left.is_none();
    };
    (0..la.actor.dim()).all(|g| {
        let sign = koszul_sign(f.parity(), la.actor.parity(g)).to_scalar();
        (0..f.source.dim()).all(|s| {
            let es = SparseVec::unit(s);
            let lhs = f.apply(&f.source.left_act(g, &es));
            let rhs = f.target.left_act(g, &f.apply(&es)).scaled(&sign);
            lhs == rhs
        })
    })
}

/// `a · f · b = (-1)^{ā f̄} f ∘ ρ_a ∘ λ_b` with `ρ_a(m) = (-1)^{ā m̄} m · a`
/// and `λ_b(m) = b · m`, using the source module's actions (`outer_left`
/// when present).
pub fn act_on_hom(a: &Element, f: &HomElement, b: &Element) -> Result<HomElement> {
    let src = &f.source;
    let (Some(right), Some(left)) = (&src.right, src.outer_left.as_ref().or(src.left.as_ref())) else {
        return Err(Error::rejected("source module needs both a left and a right action"));
    };
    if a.algebra() != right.actor() {
        return Err(Error::rejected(format!(
            "`{a}` is not in `{}`, the algebra acting on the right",
            right.actor().name()
        )));
    }
    if b.algebra() != left.actor() {
        return Err(Error::rejected(format!(
            "`{b}` is not in `{}`, the algebra acting on the left",
            left.actor().name()
        )));
    }
    let ra = right.actor();
    let fpar = f.parity();
    let mut m = Matrix::zeros(f.target.dim(), src.dim());
    for s in 0..src.dim() {
        let es = SparseVec::unit(s);
        let mut col = SparseVec::new();
        for (j, cb) in b.to_sparse().iter() {
            let bm = src.outer_act(j, &es).scaled(cb);
            let bm_par = src.parity(s) + left.actor().parity(j);
            for (k, ca) in a.to_sparse().iter() {
                let apar = ra.parity(k);
                let sign = koszul_sign(apar, fpar) * koszul_sign(apar, bm_par);
                let v = f.apply(&src.right_act(&bm, k)).scaled(&(ca * sign.to_scalar()));
                col = crate::frobenius::add_sparse(&col, &v);
            }
        }
        for (t, x) in col.iter() {
            m.set(t, s, x.clone());
        }
    }
    HomElement::new(f.source.clone(), f.target.clone(), m)
}

/// The isomorphism `HOM_B(^{ψ_B}M, B) ≅ M^∨` for a module `M` carrying an
/// untwisted left `B`-action, given `tr_B: B → R` and dual generators.
#[derive(Clone, Debug)]
pub struct DualIsomorphism {
    pub tr_b: TraceData,
    pub psi_b: NakayamaMap,
    pub dual: DualGenerators,
    pub module: ModuleSpec,
    twisted_source: Arc<ModuleSpec>,
    b_module: Arc<ModuleSpec>,
    dual_source: Arc<ModuleSpec>,
    r_module: Arc<ModuleSpec>,
}

impl DualIsomorphism {
    pub fn new(tr_b: TraceData, psi_b: NakayamaMap, dual: DualGenerators, module: ModuleSpec) -> Result<Self> {
        let b = tr_b.big().clone();
        let r = tr_b.sub().clone();
        let left = module
            .left
            .as_ref()
            .ok_or_else(|| Error::rejected("module needs a left B-action"))?;
        if left.actor() != &b || psi_b.algebra != b {
            return Err(Error::rejected(format!(
                "module, trace and Nakayama map disagree on `{}`",
                b.name()
            )));
        }
        let twisted_left = Action::new(b.clone(), &module.carrier, left.map().mul(&psi_b.matrix)?)?;
        let twisted_source = ModuleSpec::new(
            module.carrier.clone(),
            Some(twisted_left),
            module.right.clone(),
            module.shift.clone(),
        );
        let r_left = Action::new(r.clone(), &module.carrier, left.map().mul(tr_b.embedding.matrix())?)?;
        let mut dual_source = ModuleSpec::new(module.carrier.clone(), Some(r_left), module.right.clone(), module.shift.clone());
        dual_source.outer_left = Some(left.clone());
        let arity = b.arity();
        let b_module = ModuleSpec::new(b.clone(), Some(Action::regular(b)), None, Degree::zero(arity));
        let r_module = ModuleSpec::new(r.clone(), Some(Action::regular(r)), None, Degree::zero(arity));
        Ok(DualIsomorphism {
            tr_b,
            psi_b,
            dual,
            module,
            twisted_source: Arc::new(twisted_source),
            b_module: Arc::new(b_module),
            dual_source: Arc::new(dual_source),
            r_module: Arc::new(r_module),
        })
    }

    /// `^{ψ_B}M`.
    pub fn twisted_source(&self) -> &Arc<ModuleSpec> {
        &self.twisted_source
    }

    /// `M` as a left `R`-module, the source of `M^∨`.
    pub fn dual_source(&self) -> &Arc<ModuleSpec> {
        &self.dual_source
    }

    pub fn b_module(&self) -> &Arc<ModuleSpec> {
        &self.b_module
    }

    pub fn r_module(&self) -> &Arc<ModuleSpec> {
        &self.r_module
    }

    /// A basis of `HOM_B(^{ψ_B}M, B)`, even sector first.
    pub fn hom_basis(&self) -> Result<Vec<HomElement>> {
        let mut out = hom_basis(&self.twisted_source, &self.b_module, Parity::Even)?;
        out.extend(hom_basis(&self.twisted_source, &self.b_module, Parity::Odd)?);
        Ok(out)
    }

    /// A basis of `M^∨`, even sector first.
    pub fn dual_basis(&self) -> Result<Vec<HomElement>> {
        let mut out = hom_basis(&self.dual_source, &self.r_module, Parity::Even)?;
        out.extend(hom_basis(&self.dual_source, &self.r_module, Parity::Odd)?);
        Ok(out)
    }

    /// `f ↦ tr_B ∘ f`.
    pub fn forward(&self, f: &HomElement) -> Result<HomElement> {
        if f.target.carrier != *self.tr_b.big() || f.source.carrier != self.module.carrier {
            return Err(Error::rejected("map is not in HOM_B(M, B)"));
        }
        let m = self.tr_b.matrix.mul(&f.matrix)?;
        HomElement::new(self.dual_source.clone(), self.r_module.clone(), m)
    }

    /// `θ ↦ (m ↦ (-1)^{π_B(θ̄+m̄)} Σ_i (-1)^{ȳ_i(π_B+m̄)} θ(y_i m) x_i)`,
    /// applied to each parity part of `θ`.
    pub fn inverse(&self, theta: &HomElement) -> Result<HomElement> {
        HomElement::new(
            self.twisted_source.clone(),
            self.b_module.clone(),
            self.inverse_matrix(&theta.matrix)?,
        )
    }

    pub(crate) fn inverse_matrix(&self, theta: &Matrix) -> Result<Matrix> {
        let r = self.tr_b.sub();
        let b = self.tr_b.big();
        let m_mod = &self.module;
        if theta.rows() != r.dim() || theta.cols() != m_mod.dim() {
            return Err(Error::rejected("functional has the wrong shape for M^∨"));
        }
        let pi_b = self.tr_b.degree.parity();
        let xs: Vec<SparseVec> = self.dual.x.iter().map(Element::to_sparse).collect();
        let ys: Vec<SparseVec> = self.dual.y.iter().map(Element::to_sparse).collect();
        let y_par: Vec<Parity> = (0..ys.len()).map(|i| self.dual.y_parity(i)).collect();
        let mut out = Matrix::zeros(b.dim(), m_mod.dim());
        for s in 0..m_mod.dim() {
            let es = SparseVec::unit(s);
            let mbar = m_mod.parity(s);
            let mut col = SparseVec::new();
            for ((x, y), &yp) in xs.iter().zip(&ys).zip(&y_par) {
                let ym = m_mod.left_act_element(y, &es);
                if ym.is_zero() {
                    continue;
                }
                let val = theta.mul_sparse(&ym);
                // split θ(y m) by the parity of θ
                for (ri, c) in val.iter() {
                    let ym_par = yp + mbar;
                    let theta_par = r.parity(ri) + ym_par;
                    let sign = koszul_sign(pi_b, theta_par + mbar) * koszul_sign(yp, pi_b + mbar);
                    let rx = b.mul_sparse(&self.tr_b.embedding.image(ri), x);
                    col = crate::frobenius::add_sparse(&col, &rx.scaled(&(c * sign.to_scalar())));
                }
            }
            for (t, v) in col.iter() {
                out.set(t, s, v.clone());
            }
        }
        Ok(out)
    }
}

/// `κ` and `φ_A` for a tower: the isomorphism for `M = _B A^{ψ_A}_A`
/// together with `tr_A` and `ψ_A`.
#[derive(Clone, Debug)]
pub struct TowerDuality {
    pub iso: DualIsomorphism,
    pub tr_a: TraceData,
    pub psi_a: NakayamaMap,
}

impl TowerDuality {
    /// `iota_ba` embeds `B` into `A = tr_a.big()`.
    pub fn new(
        iota_ba: &Embedding,
        tr_a: TraceData,
        psi_a: NakayamaMap,
        tr_b: TraceData,
        psi_b: NakayamaMap,
        dual: DualGenerators,
    ) -> Result<Self> {
        let a = tr_a.big().clone();
        let left = Action::from_embedding(iota_ba)?;
        let right = Action::new(a.clone(), &a, psi_a.matrix.clone())?;
        let module = ModuleSpec::new(a.clone(), Some(left), Some(right), Degree::zero(a.arity()));
        let iso = DualIsomorphism::new(tr_b, psi_b, dual, module)?;
        Ok(TowerDuality { iso, tr_a, psi_a })
    }

    /// `tr_A ∘ ρ_{ψ_A(a)}` as an element of `(_B A^{ψ_A}_A)^∨`.
    pub fn phi_a(&self, a: &Element) -> Result<HomElement> {
        let alg = self.tr_a.big();
        if a.algebra() != alg {
            return Err(Error::rejected(format!("`{a}` is not in `{}`", alg.name())));
        }
        let c = self.psi_a.apply(&a.to_sparse());
        let n = alg.dim();
        let mut m = Matrix::zeros(self.tr_a.sub().dim(), n);
        for s in 0..n {
            let es = SparseVec::unit(s);
            let mut col = SparseVec::new();
            for (k, ck) in c.iter() {
                let sign = koszul_sign(alg.parity(k), alg.parity(s)).to_scalar();
                let prod = alg.mul_sparse(&es, &SparseVec::unit(k));
                col = crate::frobenius::add_sparse(&col, &self.tr_a.apply(&prod).scaled(&(ck * sign)));
            }
            for (t, v) in col.iter() {
                m.set(t, s, v.clone());
            }
        }
        HomElement::new(self.iso.dual_source().clone(), self.iso.r_module().clone(), m)
    }

    pub fn kappa(&self, theta: &HomElement) -> Result<HomElement> {
        self.iso.inverse(theta)
    }

    /// Rank of `a ↦ φ_A(a)` over the basis of `A`.
    pub fn phi_a_rank(&self) -> Result<usize> {
        let alg = self.tr_a.big().clone();
        let mut vecs = Vec::with_capacity(alg.dim());
        for i in 0..alg.dim() {
            vecs.push(self.phi_a(&Element::basis(alg.clone(), i))?.flatten());
        }
        Ok(Subspace::span(alg.dim() * self.tr_a.sub().dim(), vecs).dim())
    }
}

pub fn dual_isom_forward(iso: &DualIsomorphism, f: &HomElement) -> Result<HomElement> {
    iso.forward(f)
}

pub fn dual_isom_inverse(iso: &DualIsomorphism, theta: &HomElement) -> Result<HomElement> {
    iso.inverse(theta)
}

pub fn phi_a(td: &TowerDuality, a: &Element) -> Result<HomElement> {
    td.phi_a(a)
}

pub fn kappa(td: &TowerDuality, theta: &HomElement) -> Result<HomElement> {
    td.kappa(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{group_ring, nilcoxeter, nilcoxeter_tower, GroupTable};
    use crate::frobenius::{compute_dual_generators, compute_nakayama};

    fn q() -> Arc<AlgebraSpec> {
        Arc::new(AlgebraSpec::rationals(1))
    }

    fn duality(n: usize) -> TowerDuality {
        let p = nilcoxeter_tower(n).unwrap();
        let psi_a = compute_nakayama(&p.tr_a).unwrap();
        let psi_b = compute_nakayama(&p.tr_b).unwrap();
        let dg = compute_dual_generators(&p.tr_b, &p.r_basis).unwrap();
        TowerDuality::new(&p.tower.iota_ba, p.tr_a.clone(), psi_a, p.tr_b.clone(), psi_b, dg).unwrap()
    }

    #[test]
    fn hom_over_rationals_is_all_maps() {
        let gr = group_ring(&GroupTable::cyclic(2), &q()).unwrap();
        let src = ModuleSpec::new(
            gr.algebra.clone(),
            Some(Action::from_embedding(&gr.base_embedding).unwrap()),
            None,
            Degree::zero(1),
        );
        let tgt = ModuleSpec::new(q(), Some(Action::regular(q())), None, Degree::zero(1));
        let dim: usize = [Parity::Even, Parity::Odd]
            .iter()
            .map(|&p| hom_basis(&src, &tgt, p).unwrap().len())
            .sum();
        assert_eq!(dim, 2);
    }

    #[test]
    fn identity_is_in_untwisted_endomorphisms() {
        let n2 = nilcoxeter(2).unwrap().algebra;
        let m = ModuleSpec::new(n2.clone(), Some(Action::regular(n2.clone())), None, Degree::zero(1));
        let s = hom_space(&m, &m).unwrap();
        let id = HomElement::new(Arc::new(m.clone()), Arc::new(m.clone()), Matrix::identity(2)).unwrap();
        assert!(s.contains(&id.flatten()));
        assert!(satisfies_hom_constraint(&id));
    }

    #[test]
    fn hom_n3_to_n2_has_dimension_six() {
        let nc = nilcoxeter(3).unwrap();
        let emb = nc.sub_embedding.unwrap();
        let n2 = emb.source().clone();
        let src = ModuleSpec::new(nc.algebra.clone(), Some(Action::from_embedding(&emb).unwrap()), None, Degree::zero(1));
        let tgt = ModuleSpec::new(n2.clone(), Some(Action::regular(n2)), None, Degree::zero(1));
        let mut total = 0;
        for p in [Parity::Even, Parity::Odd] {
            let basis = hom_basis(&src, &tgt, p).unwrap();
            for f in &basis {
                assert!(satisfies_hom_constraint(f));
                assert_eq!(f.parity(), p);
            }
            total += basis.len();
        }
        assert_eq!(total, 6);
    }

    #[test]
    fn mismatched_actors_are_rejected() {
        let n2 = nilcoxeter(2).unwrap().algebra;
        let m = ModuleSpec::new(n2.clone(), Some(Action::regular(n2)), None, Degree::zero(1));
        let r = ModuleSpec::new(q(), Some(Action::regular(q())), None, Degree::zero(1));
        assert!(hom_basis(&m, &r, Parity::Even).is_err());
    }

    #[test]
    fn forward_of_identity_on_n2_is_trace() {
        let nc = nilcoxeter(2).unwrap();
        let psi = compute_nakayama(&nc.trace).unwrap();
        let dg = compute_dual_generators(&nc.trace, &[0, 1]).unwrap();
        let b = nc.algebra.clone();
        let m = ModuleSpec::new(b.clone(), Some(Action::regular(b.clone())), None, Degree::zero(1));
        let iso = DualIsomorphism::new(nc.trace.clone(), psi, dg, m).unwrap();
        let id = HomElement::new(iso.twisted_source().clone(), iso.b_module().clone(), Matrix::identity(2)).unwrap();
        let tr = iso.forward(&id).unwrap();
        assert_eq!(tr.matrix, nc.trace.matrix);
        assert_eq!(tr.degree, nc.trace.degree);
        let zero = HomElement::zero(iso.twisted_source().clone(), iso.b_module().clone());
        assert!(iso.forward(&zero).unwrap().is_zero());
        assert_eq!(iso.inverse(&tr).unwrap(), id);
    }

    #[test]
    fn round_trips_n3() {
        let d = duality(3);
        let homs = d.iso.hom_basis().unwrap();
        assert_eq!(homs.len(), 6);
        for f in &homs {
            let back = d.iso.inverse(&d.iso.forward(f).unwrap()).unwrap();
            assert_eq!(&back, f);
        }
        let duals = d.iso.dual_basis().unwrap();
        assert_eq!(duals.len(), 6);
        for theta in &duals {
            let g = d.iso.inverse(theta).unwrap();
            assert!(satisfies_hom_constraint(&g));
            assert_eq!(&d.iso.forward(&g).unwrap(), theta);
        }
    }

    #[test]
    fn phi_a_properties() {
        let d = duality(3);
        let a = d.tr_a.big().clone();
        let one = d.phi_a(&Element::unit(a.clone())).unwrap();
        assert_eq!(one.matrix, d.tr_a.matrix);
        assert!(d.phi_a(&Element::zero(a.clone())).unwrap().is_zero());
        assert_eq!(d.phi_a_rank().unwrap(), 6);
        assert!(d.kappa(&HomElement::zero(d.iso.dual_source().clone(), d.iso.r_module().clone()))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn act_on_hom_identity_and_associativity() {
        let d = duality(3);
        let a = d.tr_a.big().clone();
        let b = d.iso.tr_b.big().clone();
        let f = d.phi_a(&Element::named(&a, "u2").unwrap()).unwrap();
        let one_a = Element::unit(a.clone());
        let one_b = Element::unit(b.clone());
        assert_eq!(act_on_hom(&one_a, &f, &one_b).unwrap(), f);

        let a1 = Element::named(&a, "u1").unwrap();
        let a2 = Element::named(&a, "u2").unwrap();
        let a1a2 = a1.multiply(&a2).unwrap();
        let lhs = act_on_hom(&a1, &act_on_hom(&a2, &f, &one_b).unwrap(), &one_b).unwrap();
        let rhs = act_on_hom(&a1a2, &f, &one_b).unwrap();
        assert_eq!(lhs, rhs);
    }
}
