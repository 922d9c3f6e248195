//! Graded superalgebras presented by structure constants, their embeddings,
//! and the tower `R ⊆ B ⊆ A`.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::{koszul_sign, Degree, Parity};
use crate::linalg::{accumulate, format_scalar, is_negative, Matrix, Scalar, SparseVec};
use crate::report::{Report, Witnesses};

/// A finite-rank Λ×ℤ₂-graded algebra over the rationals.
///
/// Basis element `i` is homogeneous of degree `degrees[i]`; the product
/// `e_i e_j` is the sparse vector `products[i * dim + j]`. Axioms (unit,
/// associativity, grading) are not enforced here; see [`check_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    name: String,
    arity: usize,
    basis: Vec<String>,
    degrees: Vec<Degree>,
    unit: Vec<Scalar>,
    products: Vec<SparseVec>,
}

impl AlgebraSpec {
    pub fn new(
        name: impl Into<String>,
        arity: usize,
        basis: Vec<String>,
        degrees: Vec<Degree>,
        unit: Vec<Scalar>,
        products: Vec<SparseVec>,
    ) -> Result<Self> {
        let name = name.into();
        let n = basis.len();
        if n == 0 {
            return Err(Error::rejected(format!(
                "algebra `{name}` has an empty basis (no unit)"
            )));
        }
        let mut seen = HashSet::new();
        for b in &basis {
            if !seen.insert(b.as_str()) {
                return Err(Error::rejected(format!(
                    "algebra `{name}`: duplicate basis label `{b}`"
                )));
            }
        }
        if degrees.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: degrees.len(),
            });
        }
        if let Some(d) = degrees.iter().find(|d| d.arity() != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: d.arity(),
            });
        }
        if unit.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: unit.len(),
            });
        }
        if products.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: products.len(),
            });
        }
        if products.iter().any(|p| p.max_index().is_some_and(|m| m >= n)) {
            return Err(Error::rejected(format!(
                "algebra `{name}`: product refers to a basis index out of range"
            )));
        }
        Ok(AlgebraSpec {
            name,
            arity,
            basis,
            degrees,
            unit,
            products,
        })
    }

    /// The rank-one algebra `Q` in degree zero.
    pub fn rationals(arity: usize) -> Self {
        AlgebraSpec {
            name: "Q".into(),
            arity,
            basis: vec!["1".into()],
            degrees: vec![Degree::zero(arity)],
            unit: vec![Scalar::one()],
            products: vec![SparseVec::unit(0)],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn degree(&self, i: usize) -> &Degree {
        &self.degrees[i]
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.degrees[i].parity()
    }

    pub fn degrees(&self) -> &[Degree] {
        &self.degrees
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn unit_sparse(&self) -> SparseVec {
        SparseVec::from_dense(&self.unit)
    }

    /// `e_i e_j`.
    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.products[i * self.dim() + j]
    }

    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut map = BTreeMap::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let p = self.product(i, j);
                if p.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in p.iter() {
                    accumulate(&mut map, k, &ab * c);
                }
            }
        }
        SparseVec::from_map(map)
    }

    pub fn mul_dense(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.mul_sparse(&SparseVec::from_dense(x), &SparseVec::from_dense(y))
            .to_dense(self.dim())
    }

    /// The common degree of all components, or `None` for zero or
    /// inhomogeneous vectors.
    pub fn homogeneous_degree(&self, x: &SparseVec) -> Option<&Degree> {
        let mut it = x.iter().map(|(i, _)| &self.degrees[i]);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Splits `x` into its even and odd parts.
    pub fn parity_parts(&self, x: &SparseVec) -> [SparseVec; 2] {
        let (even, odd): (Vec<_>, Vec<_>) = x
            .iter()
            .map(|(i, c)| (i, c.clone()))
            .partition(|(i, _)| !self.parity(*i).is_odd());
        [
            SparseVec::from_entries(even),
            SparseVec::from_entries(odd),
        ]
    }

    /// Indices of basis elements of degree `d`.
    pub fn basis_of_degree(&self, d: &Degree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.degrees[i] == d).collect()
    }

    pub fn format(&self, x: &SparseVec) -> String {
        format_lincomb(&self.basis, x)
    }
}

/// Renders `Σ c_i b_i` as `b1 - 3/2*b2`; zero renders as `0`.
pub fn format_lincomb(labels: &[String], x: &SparseVec) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (i, c)) in x.iter().enumerate() {
        let neg = is_negative(c);
        let abs = if neg { -c.clone() } else { c.clone() };
        if k == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            out.push_str(&format_scalar(&abs));
            out.push('*');
        }
        out.push_str(&labels[i]);
    }
    out
}

/// An element of a particular algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    algebra: Arc<AlgebraSpec>,
    coeffs: Vec<Scalar>,
}

impl Element {
    pub fn new(algebra: Arc<AlgebraSpec>, coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.len() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: coeffs.len(),
            });
        }
        Ok(Element { algebra, coeffs })
    }

    pub fn from_sparse(algebra: Arc<AlgebraSpec>, x: &SparseVec) -> Self {
        let coeffs = x.to_dense(algebra.dim());
        Element { algebra, coeffs }
    }

    pub fn zero(algebra: Arc<AlgebraSpec>) -> Self {
        let coeffs = vec![Scalar::zero(); algebra.dim()];
        Element { algebra, coeffs }
    }

    pub fn unit(algebra: Arc<AlgebraSpec>) -> Self {
        let coeffs = algebra.unit().to_vec();
        Element { algebra, coeffs }
    }

    pub fn basis(algebra: Arc<AlgebraSpec>, i: usize) -> Self {
        let mut e = Element::zero(algebra);
        e.coeffs[i] = Scalar::one();
        e
    }

    /// Looks a basis element up by label.
    pub fn named(algebra: &Arc<AlgebraSpec>, label: &str) -> Result<Self> {
        let i = algebra
            .index_of(label)
            .ok_or_else(|| Error::rejected(format!("`{label}` is not a basis label of `{}`", algebra.name())))?;
        Ok(Element::basis(algebra.clone(), i))
    }

    pub fn algebra(&self) -> &Arc<AlgebraSpec> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn to_sparse(&self) -> SparseVec {
        SparseVec::from_dense(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn degree(&self) -> Option<Degree> {
        self.algebra.homogeneous_degree(&self.to_sparse()).cloned()
    }

    fn same_algebra(&self, other: &Element) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::rejected(format!(
                "elements of different algebras `{}` and `{}`",
                self.algebra.name(),
                other.algebra.name()
            )))
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element {
            algebra: self.algebra.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn multiply(&self, other: &Element) -> Result<Element> {
        self.same_algebra(other)?;
        Ok(Element {
            algebra: self.algebra.clone(),
            coeffs: self.algebra.mul_dense(&self.coeffs, &other.coeffs),
        })
    }
}

/// Free-function form of [`Element::multiply`].
pub fn multiply(x: &Element, y: &Element) -> Result<Element> {
    x.multiply(y)
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebra.format(&self.to_sparse()))
    }
}

/// A linear map `source → target` given by its matrix in the two bases
/// (column `j` is the image of source basis element `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    source: Arc<AlgebraSpec>,
    target: Arc<AlgebraSpec>,
    matrix: Matrix,
}

impl Embedding {
    pub fn new(source: Arc<AlgebraSpec>, target: Arc<AlgebraSpec>, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != target.dim() || matrix.cols() != source.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim() * source.dim(),
                found: matrix.rows() * matrix.cols(),
            });
        }
        Ok(Embedding {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(alg: Arc<AlgebraSpec>) -> Self {
        let n = alg.dim();
        Embedding {
            source: alg.clone(),
            target: alg,
            matrix: Matrix::identity(n),
        }
    }

    /// The embedding sending source basis `i` to target basis `images[i]`.
    pub fn from_basis_map(
        source: Arc<AlgebraSpec>,
        target: Arc<AlgebraSpec>,
        images: &[usize],
    ) -> Result<Self> {
        let mut m = Matrix::zeros(target.dim(), source.dim());
        for (j, &i) in images.iter().enumerate() {
            m.set(i, j, Scalar::one());
        }
        Embedding::new(source, target, m)
    }

    pub fn source(&self) -> &Arc<AlgebraSpec> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraSpec> {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn image(&self, j: usize) -> SparseVec {
        self.matrix.sparse_column(j)
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.matrix.mul_sparse(x)
    }

    pub fn apply_element(&self, x: &Element) -> Result<Element> {
        if x.algebra() != &self.source {
            return Err(Error::rejected("element is not in the embedding's source"));
        }
        Element::new(self.target.clone(), self.matrix.mul_vec(x.coeffs()))
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Embedding) -> Result<Embedding> {
        if inner.target != self.source {
            return Err(Error::rejected(format!(
                "cannot compose: `{}` is not `{}`",
                inner.target.name(),
                self.source.name()
            )));
        }
        Ok(Embedding {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }
}

/// `R ⊆ B ⊆ A` with unital multiplicative embeddings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    pub r: Arc<AlgebraSpec>,
    pub b: Arc<AlgebraSpec>,
    pub a: Arc<AlgebraSpec>,
    pub iota_rb: Embedding,
    pub iota_ba: Embedding,
    pub iota_ra: Embedding,
}

impl Tower {
    pub fn new(iota_rb: Embedding, iota_ba: Embedding) -> Result<Self> {
        let iota_ra = iota_ba.after(&iota_rb)?;
        Ok(Tower {
            r: iota_rb.source.clone(),
            b: iota_rb.target.clone(),
            a: iota_ba.target.clone(),
            iota_rb,
            iota_ba,
            iota_ra,
        })
    }

    /// Structural checks on all three algebras and both embeddings, plus
    /// supercommutativity of `R` and `C_A(R) = A`.
    pub fn check(&self) -> Report {
        let mut rep = Report::new();
        rep.extend(check_algebra(&self.r).prefixed("R"));
        rep.extend(check_algebra(&self.b).prefixed("B"));
        rep.extend(check_algebra(&self.a).prefixed("A"));
        rep.extend(check_supercommutative(&self.r).prefixed("R"));
        rep.extend(check_embedding(&self.iota_rb).prefixed("iota_RB"));
        rep.extend(check_embedding(&self.iota_ba).prefixed("iota_BA"));
        rep.extend(check_centralizer_full(self));
        rep
    }
}

/// Unit law, associativity on all basis triples, and grading compatibility.
pub fn check_algebra(a: &AlgebraSpec) -> Report {
    let n = a.dim();
    let mut rep = Report::new();
    let unit = a.unit_sparse();

    let mut w = Witnesses::default();
    for i in 0..n {
        let e = SparseVec::unit(i);
        let left = a.mul_sparse(&unit, &e);
        let right = a.mul_sparse(&e, &unit);
        if left != e {
            w.record(|| format!("1*{} = {}", a.label(i), a.format(&left)));
        }
        if right != e {
            w.record(|| format!("{}*1 = {}", a.label(i), a.format(&right)));
        }
    }
    rep.witnesses("unit", w, "");

    let mut w = Witnesses::default();
    for i in 0..n {
        for j in 0..n {
            let ij = a.product(i, j);
            for k in 0..n {
                let jk = a.product(j, k);
                if ij.is_zero() && jk.is_zero() {
                    continue;
                }
                let lhs = a.mul_sparse(ij, &SparseVec::unit(k));
                let rhs = a.mul_sparse(&SparseVec::unit(i), jk);
                if lhs != rhs {
                    w.record(|| {
                        format!(
                            "({}*{})*{} = {} but {}*({}*{}) = {}",
                            a.label(i),
                            a.label(j),
                            a.label(k),
                            a.format(&lhs),
                            a.label(i),
                            a.label(j),
                            a.label(k),
                            a.format(&rhs)
                        )
                    });
                }
            }
        }
    }
    rep.witnesses("associativity", w, &format!("{} triples", n * n * n));

    let mut w = Witnesses::default();
    if let Some(bad) = unit.iter().find(|(i, _)| !a.degree(*i).is_zero()) {
        w.record(|| format!("unit has a component {} of degree {}", a.label(bad.0), a.degree(bad.0)));
    }
    for i in 0..n {
        for j in 0..n {
            let p = a.product(i, j);
            if p.is_zero() {
                continue;
            }
            let expect = a.degree(i).add(a.degree(j)).expect("uniform arity");
            for (k, _) in p.iter() {
                if a.degree(k) != &expect {
                    w.record(|| {
                        format!(
                            "{}*{} has component {} of degree {} (expected {})",
                            a.label(i),
                            a.label(j),
                            a.label(k),
                            a.degree(k),
                            expect
                        )
                    });
                }
            }
        }
    }
    rep.witnesses("grading", w, "");
    rep
}

/// `e_i e_j = (-1)^{ē_i ē_j} e_j e_i` for all basis pairs.
pub fn check_supercommutative(r: &AlgebraSpec) -> Report {
    let mut rep = Report::new();
    let mut w = Witnesses::default();
    let n = r.dim();
    for i in 0..n {
        for j in i..n {
            let ij = r.product(i, j);
            let ji = r.product(j, i);
            let s = koszul_sign(r.parity(i), r.parity(j));
            if ij != &ji.scaled(&s.to_scalar()) {
                w.record(|| {
                    format!(
                        "{}*{} = {} vs {}*{} = {}",
                        r.label(i),
                        r.label(j),
                        r.format(ij),
                        r.label(j),
                        r.label(i),
                        r.format(ji)
                    )
                });
            }
        }
    }
    rep.witnesses("supercommutative", w, "");
    rep
}

/// Injectivity, unit preservation, multiplicativity and degree preservation.
pub fn check_embedding(e: &Embedding) -> Report {
    let src = &e.source;
    let tgt = &e.target;
    let mut rep = Report::new();

    let rank = e.matrix.rank();
    rep.push(
        "injective",
        rank == src.dim(),
        format!("rank={rank}/{}", src.dim()),
    );

    let unit_image = e.apply(&src.unit_sparse());
    if unit_image == tgt.unit_sparse() {
        rep.pass("unit", "");
    } else {
        rep.fail("unit", format!("1 maps to {}", tgt.format(&unit_image)));
    }

    let images: Vec<SparseVec> = (0..src.dim()).map(|j| e.image(j)).collect();
    let mut w = Witnesses::default();
    for i in 0..src.dim() {
        for j in 0..src.dim() {
            let lhs = e.apply(src.product(i, j));
            let rhs = tgt.mul_sparse(&images[i], &images[j]);
            if lhs != rhs {
                w.record(|| {
                    format!(
                        "iota({}*{}) = {} but iota({})*iota({}) = {}",
                        src.label(i),
                        src.label(j),
                        tgt.format(&lhs),
                        src.label(i),
                        src.label(j),
                        tgt.format(&rhs)
                    )
                });
            }
        }
    }
    rep.witnesses("multiplicative", w, "");

    let mut w = Witnesses::default();
    for (j, img) in images.iter().enumerate() {
        for (k, _) in img.iter() {
            if tgt.degree(k) != src.degree(j) {
                w.record(|| {
                    format!(
                        "{} (degree {}) maps onto {} (degree {})",
                        src.label(j),
                        src.degree(j),
                        tgt.label(k),
                        tgt.degree(k)
                    )
                });
            }
        }
    }
    rep.witnesses("degree", w, "");
    rep
}

/// `ι(r) a = (-1)^{r̄ ā} a ι(r)` for basis `r ∈ R`, `a ∈ A`, i.e. `C_A(R) = A`.
pub fn check_centralizer_full(t: &Tower) -> Report {
    let a = &t.a;
    let r = &t.r;
    let mut rep = Report::new();
    let mut w = Witnesses::default();
    for ri in 0..r.dim() {
        let img = t.iota_ra.image(ri);
        for ai in 0..a.dim() {
            let e = SparseVec::unit(ai);
            let lhs = a.mul_sparse(&img, &e);
            let rhs = a
                .mul_sparse(&e, &img)
                .scaled(&koszul_sign(r.parity(ri), a.parity(ai)).to_scalar());
            if lhs != rhs {
                w.record(|| {
                    format!(
                        "r={} a={}: ra = {} but sign*ar = {}",
                        r.label(ri),
                        a.label(ai),
                        a.format(&lhs),
                        a.format(&rhs)
                    )
                });
            }
        }
    }
    rep.witnesses("centralizer", w, "C_A(R) = A");
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{exterior_base, group_ring, nilcoxeter, GroupTable};
    use crate::linalg::scalar;

    fn n(k: usize) -> Arc<AlgebraSpec> {
        nilcoxeter(k).unwrap().algebra
    }

    #[test]
    fn unit_times_x_is_x() {
        let a = n(3);
        let x = Element::named(&a, "u12").unwrap().add(&Element::named(&a, "u2").unwrap()).unwrap();
        let one = Element::unit(a.clone());
        assert_eq!(one.multiply(&x).unwrap(), x);
        assert_eq!(x.multiply(&one).unwrap(), x);
    }

    #[test]
    fn nilcoxeter_products() {
        let n2 = n(2);
        let u1 = Element::named(&n2, "u1").unwrap();
        assert!(u1.multiply(&u1).unwrap().is_zero());

        let n3 = n(3);
        let u1 = Element::named(&n3, "u1").unwrap();
        let u2 = Element::named(&n3, "u2").unwrap();
        let p = multiply(&u1, &u2).unwrap();
        assert_eq!(p, Element::named(&n3, "u12").unwrap());
        assert_eq!(p.degree().unwrap(), Degree::new(vec![2], Parity::Even));
    }

    #[test]
    fn multiply_rejects_mixed_algebras() {
        let x = Element::unit(n(2));
        let y = Element::unit(n(3));
        assert!(x.multiply(&y).is_err());
    }

    #[test]
    fn check_algebra_passes_on_builtins() {
        assert!(check_algebra(&n(3)).passed());
        let z2 = GroupTable::cyclic(2);
        let q = Arc::new(AlgebraSpec::rationals(1));
        assert!(check_algebra(&group_ring(&z2, &q).unwrap().algebra).passed());
    }

    #[test]
    fn bad_unit_is_reported() {
        let a = AlgebraSpec::new(
            "bad",
            1,
            vec!["e".into()],
            vec![Degree::zero(1)],
            vec![scalar(1)],
            vec![SparseVec::unit(0).scaled(&scalar(2))],
        )
        .unwrap();
        let rep = check_algebra(&a);
        assert!(!rep.find("unit").unwrap().passed);
    }

    #[test]
    fn empty_algebra_is_rejected() {
        assert!(AlgebraSpec::new("empty", 1, vec![], vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn supercommutativity() {
        assert!(check_supercommutative(&AlgebraSpec::rationals(1)).passed());
        assert!(check_supercommutative(&exterior_base(1, 1).unwrap()).passed());
        assert!(check_supercommutative(&exterior_base(2, 1).unwrap()).passed());
        let rep = check_supercommutative(&n(3));
        assert!(!rep.passed());
    }

    #[test]
    fn embeddings() {
        let a = n(3);
        assert!(check_embedding(&Embedding::identity(a.clone())).passed());
        let sub = nilcoxeter(3).unwrap().sub_embedding.unwrap();
        assert!(check_embedding(&sub).passed());
        let doubled = Embedding::new(a.clone(), a.clone(), Matrix::identity(6).scaled(&scalar(2))).unwrap();
        let rep = check_embedding(&doubled);
        assert!(!rep.find("unit").unwrap().passed);
    }

    #[test]
    fn centralizer_checks() {
        let q = Arc::new(AlgebraSpec::rationals(1));
        let nc = nilcoxeter(3).unwrap();
        let rb = nilcoxeter(2).unwrap().base_embedding;
        let t = Tower::new(rb, nc.sub_embedding.unwrap()).unwrap();
        assert_eq!(t.r, q);
        assert!(check_centralizer_full(&t).passed());

        // N_2 ⊆ N_2 ⊆ N_3: u1 is not central in N_3.
        let n2 = n(2);
        let t = Tower::new(
            Embedding::identity(n2.clone()),
            nilcoxeter(3).unwrap().sub_embedding.unwrap(),
        )
        .unwrap();
        let rep = check_centralizer_full(&t);
        assert!(!rep.passed());
        assert!(rep.checks[0].detail.contains("r=u1"));
    }

    #[test]
    fn exterior_group_ring_tower_is_central() {
        let base = Arc::new(exterior_base(1, 1).unwrap());
        let p = crate::constructions::group_ring_tower(&GroupTable::cyclic(4), &[0, 2], &base).unwrap();
        assert!(check_centralizer_full(&p.tower).passed());
        assert!(p.tower.check().passed());
    }

    #[test]
    fn lincomb_formatting() {
        let labels: Vec<String> = vec!["a".into(), "b".into(), "c".into()];
        let x = SparseVec::from_dense(&[scalar(1), scalar(-1), crate::linalg::ratio(3, 2)]);
        assert_eq!(format_lincomb(&labels, &x), "a - b + 3/2*c");
        assert_eq!(format_lincomb(&labels, &SparseVec::new()), "0");
        let y = SparseVec::from_dense(&[scalar(-2), scalar(0), scalar(0)]);
        assert_eq!(format_lincomb(&labels, &y), "-2*a");
    }
}
