//! Builtin examples: symmetric groups, nilcoxeter rings, exterior base
//! rings and group rings over a supercommutative base.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num::One;

use crate::algebra::{check_supercommutative, AlgebraSpec, Embedding, Tower};
use crate::error::{Error, Result};
use crate::frobenius::TraceData;
use crate::grading::{Degree, Parity};
use crate::linalg::{scalar, Matrix, Scalar, SparseVec};
use crate::nested::NestedProblem;

/// A permutation of `{1..n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    one_line: Vec<usize>,
}

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &x in &one_line {
            if x == 0 || x > n || seen[x] {
                return Err(Error::rejected(format!(
                    "{one_line:?} is not a permutation of 1..{n}"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation { one_line })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).collect(),
        }
    }

    /// The longest element `i ↦ n+1-i`.
    pub fn longest(n: usize) -> Self {
        Permutation {
            one_line: (1..=n).rev().collect(),
        }
    }

    /// The simple transposition `s_i = (i, i+1)`.
    pub fn simple(n: usize, i: usize) -> Self {
        let mut p = Permutation::identity(n);
        p.one_line.swap(i - 1, i);
        p
    }

    pub fn size(&self) -> usize {
        self.one_line.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.one_line
    }

    pub fn apply(&self, i: usize) -> usize {
        self.one_line[i - 1]
    }

    /// `(self ∘ w)(i) = self(w(i))`.
    pub fn compose(&self, w: &Permutation) -> Permutation {
        assert_eq!(self.size(), w.size());
        Permutation {
            one_line: w.one_line.iter().map(|&i| self.apply(i)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &x) in self.one_line.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { one_line: inv }
    }

    /// Coxeter length: the number of inversions.
    pub fn length(&self) -> usize {
        let p = &self.one_line;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    /// The lexicographically first reduced word `i_1 … i_l` with
    /// `self = s_{i_1} ⋯ s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let n = self.size();
        let mut w = self.clone();
        let mut word = Vec::new();
        while w.length() > 0 {
            let inv = w.inverse();
            // s_i is a left descent iff w^{-1}(i) > w^{-1}(i+1)
            let i = (1..n).find(|&i| inv.apply(i) > inv.apply(i + 1)).unwrap();
            word.push(i);
            w = Permutation::simple(n, i).compose(&w);
        }
        word
    }

    /// Cycle notation label, e.g. `e`, `c12`, `c123`, `c12_34`.
    pub fn cycle_label(&self) -> String {
        let n = self.size();
        let mut seen = vec![false; n + 1];
        let mut cycles = Vec::new();
        for start in 1..=n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut c = String::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                c.push_str(&i.to_string());
                i = self.apply(i);
            }
            cycles.push(c);
        }
        if cycles.is_empty() {
            "e".into()
        } else {
            format!("c{}", cycles.join("_"))
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_line.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// All of `S_n`, ordered by length and then lexicographically by one-line notation.
pub fn symmetric_group(n: usize) -> Result<Vec<Permutation>> {
    if n < 1 {
        return Err(Error::rejected("symmetric group needs n >= 1"));
    }
    let mut all = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    permutations_rec(&mut current, 0, &mut all);
    let mut perms: Vec<Permutation> = all
        .into_iter()
        .map(|one_line| Permutation { one_line })
        .collect();
    perms.sort_by_cached_key(|p| (p.length(), p.one_line.clone()));
    Ok(perms)
}

fn permutations_rec(v: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == v.len() {
        out.push(v.clone());
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations_rec(v, k + 1, out);
        v.swap(k, i);
    }
}

fn binom2(n: usize) -> i64 {
    (n * n.saturating_sub(1) / 2) as i64
}

fn nilcoxeter_label(w: &Permutation) -> String {
    let word = w.reduced_word();
    if word.is_empty() {
        return "1".into();
    }
    let sep = if w.size() > 10 { "_" } else { "" };
    let parts: Vec<String> = word.iter().map(ToString::to_string).collect();
    format!("u{}", parts.join(sep))
}

/// Structure constants of the nilcoxeter ring `N_n` over `Q`, basis ordered as
/// [`symmetric_group`].
pub fn nilcoxeter_algebra(n: usize) -> Result<AlgebraSpec> {
    let perms = symmetric_group(n)?;
    let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let lengths: Vec<usize> = perms.iter().map(Permutation::length).collect();
    let dim = perms.len();
    let mut products = Vec::with_capacity(dim * dim);
    for (i, v) in perms.iter().enumerate() {
        for (j, w) in perms.iter().enumerate() {
            let vw = v.compose(w);
            let k = index[&vw];
            if lengths[k] == lengths[i] + lengths[j] {
                products.push(SparseVec::unit(k));
            } else {
                products.push(SparseVec::new());
            }
        }
    }
    let degrees = lengths
        .iter()
        .map(|&l| Degree::new(vec![l as i64], Parity::from_int(l as i64)))
        .collect();
    let mut unit = vec![Scalar::from_integer(0.into()); dim];
    unit[0] = Scalar::one();
    AlgebraSpec::new(
        format!("N{n}"),
        1,
        perms.iter().map(nilcoxeter_label).collect(),
        degrees,
        unit,
        products,
    )
}

/// `tr_n`: the coefficient of `u_{w_0}`, of degree `(-(n choose 2), (n choose 2))`.
pub fn nilcoxeter_trace(alg: &Arc<AlgebraSpec>, base: &Arc<AlgebraSpec>, n: usize) -> Result<TraceData> {
    let w0 = alg.dim() - 1;
    let mut m = Matrix::zeros(1, alg.dim());
    m.set(0, w0, Scalar::one());
    let embedding = Embedding::from_basis_map(base.clone(), alg.clone(), &[0])?;
    let l = binom2(n);
    TraceData::untwisted(
        format!("tr{n}"),
        embedding,
        m,
        Degree::new(vec![-l], Parity::from_int(l)),
    )
}

/// `N_{n-1} ↪ N_n` onto the permutations fixing `n`.
pub fn nilcoxeter_inclusion(sub: &Arc<AlgebraSpec>, big: &Arc<AlgebraSpec>, n: usize) -> Result<Embedding> {
    let small = symmetric_group(n - 1)?;
    let large = symmetric_group(n)?;
    let index: HashMap<&Permutation, usize> = large.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let images: Vec<usize> = small
        .iter()
        .map(|w| {
            let mut one_line = w.one_line.clone();
            one_line.push(n);
            index[&Permutation { one_line }]
        })
        .collect();
    Embedding::from_basis_map(sub.clone(), big.clone(), &images)
}

pub struct Nilcoxeter {
    pub algebra: Arc<AlgebraSpec>,
    pub trace: TraceData,
    /// `Q ↪ N_n`.
    pub base_embedding: Embedding,
    /// `N_{n-1} ↪ N_n`; absent for `n = 1`.
    pub sub_embedding: Option<Embedding>,
}

pub fn nilcoxeter(n: usize) -> Result<Nilcoxeter> {
    if n < 1 {
        return Err(Error::rejected("nilcoxeter ring needs n >= 1"));
    }
    let base = Arc::new(AlgebraSpec::rationals(1));
    let algebra = Arc::new(nilcoxeter_algebra(n)?);
    let trace = nilcoxeter_trace(&algebra, &base, n)?;
    let base_embedding = trace.embedding.clone();
    let sub_embedding = if n > 1 {
        let sub = Arc::new(nilcoxeter_algebra(n - 1)?);
        Some(nilcoxeter_inclusion(&sub, &algebra, n)?)
    } else {
        None
    };
    Ok(Nilcoxeter {
        algebra,
        trace,
        base_embedding,
        sub_embedding,
    })
}

/// The tower `Q ⊆ N_{n-1} ⊆ N_n` with both nilcoxeter traces.
pub fn nilcoxeter_tower(n: usize) -> Result<NestedProblem> {
    if n < 2 {
        return Err(Error::rejected("nilcoxeter tower needs n >= 2"));
    }
    let q = Arc::new(AlgebraSpec::rationals(1));
    let b = Arc::new(nilcoxeter_algebra(n - 1)?);
    let a = Arc::new(nilcoxeter_algebra(n)?);
    let tr_b = nilcoxeter_trace(&b, &q, n - 1)?;
    let tr_a = nilcoxeter_trace(&a, &q, n)?;
    let tower = Tower::new(tr_b.embedding.clone(), nilcoxeter_inclusion(&b, &a, n)?)?;
    NestedProblem::new(tower, tr_a, tr_b, (0..b.dim()).collect())
}

/// Exterior algebra on `m` odd generators of weight zero over `Q`.
pub fn exterior_base(m: usize, arity: usize) -> Result<AlgebraSpec> {
    if m > 16 {
        return Err(Error::rejected("exterior base limited to 16 generators"));
    }
    let dim = 1usize << m;
    let label = |mask: usize| -> String {
        if mask == 0 {
            return "1".into();
        }
        (0..m)
            .filter(|b| mask & (1 << b) != 0)
            .map(|b| format!("th{}", b + 1))
            .collect::<Vec<_>>()
            .join("")
    };
    let mut products = Vec::with_capacity(dim * dim);
    for s in 0..dim {
        for t in 0..dim {
            if s & t != 0 {
                products.push(SparseVec::new());
                continue;
            }
            // sign of sorting θ_S θ_T: pairs (i in S, j in T) with i > j
            let swaps: u32 = (0..m)
                .filter(|i| s & (1 << i) != 0)
                .map(|i| (t & ((1 << i) - 1)).count_ones())
                .sum();
            let c = if swaps.is_multiple_of(2) { scalar(1) } else { scalar(-1) };
            products.push(SparseVec::unit(s | t).scaled(&c));
        }
    }
    let degrees = (0..dim)
        .map(|s| Degree::new(vec![0; arity], Parity::from_int(s.count_ones() as i64)))
        .collect();
    let mut unit = vec![scalar(0); dim];
    unit[0] = scalar(1);
    let name = if m == 0 { "Q".to_string() } else { format!("ext{m}") };
    AlgebraSpec::new(name, arity, (0..dim).map(label).collect(), degrees, unit, products)
}

/// A finite group by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    elements: Vec<String>,
    table: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Validates associativity, the identity and inverses.
    pub fn new(name: impl Into<String>, elements: Vec<String>, table: Vec<usize>) -> Result<Self> {
        let name = name.into();
        let n = elements.len();
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(Error::rejected(format!("group `{name}`: malformed table")));
        }
        let mul = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| mul(e, g) == g && mul(g, e) == g))
            .ok_or_else(|| Error::rejected(format!("group `{name}`: no identity")))?;
        for a in 0..n {
            if !(0..n).any(|b| mul(a, b) == identity && mul(b, a) == identity) {
                return Err(Error::rejected(format!(
                    "group `{name}`: `{}` has no inverse",
                    elements[a]
                )));
            }
            for b in 0..n {
                for c in 0..n {
                    if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                        return Err(Error::rejected(format!(
                            "group `{name}`: not associative on ({}, {}, {})",
                            elements[a], elements[b], elements[c]
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            name,
            elements,
            table,
            identity,
        })
    }

    /// `Z/n` with elements `e, g, g2, …`.
    pub fn cyclic(n: usize) -> Self {
        let elements = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                _ => format!("g{k}"),
            })
            .collect();
        let table = (0..n * n).map(|ij| (ij / n + ij % n) % n).collect();
        GroupTable::new(format!("Z{n}"), elements, table).expect("cyclic group table")
    }

    /// `S_n` with cycle-notation labels, ordered as [`symmetric_group`].
    pub fn symmetric(n: usize) -> Result<Self> {
        let perms = symmetric_group(n)?;
        let index: HashMap<&Permutation, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut table = Vec::with_capacity(perms.len() * perms.len());
        for v in &perms {
            for w in &perms {
                table.push(index[&v.compose(w)]);
            }
        }
        GroupTable::new(
            format!("S{n}"),
            perms.iter().map(Permutation::cycle_label).collect(),
            table,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order())
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("validated group")
    }

    /// The subgroup on `members` (indices into this group, in the given
    /// order); rejected with a witness unless closed under products and
    /// inverses.
    pub fn subgroup(&self, name: impl Into<String>, members: &[usize]) -> Result<GroupTable> {
        let name = name.into();
        let pos = |g: usize| members.iter().position(|&m| m == g);
        if let Some(&bad) = members.iter().find(|&&m| m >= self.order()) {
            return Err(Error::rejected(format!("index {bad} out of range")));
        }
        if pos(self.identity).is_none() {
            return Err(Error::rejected(format!(
                "subset of {} does not contain the identity `{}`",
                self.name, self.elements[self.identity]
            )));
        }
        let mut table = Vec::with_capacity(members.len() * members.len());
        for &a in members {
            for &b in members {
                let ab = self.mul(a, b);
                match pos(ab) {
                    Some(k) => table.push(k),
                    None => {
                        return Err(Error::rejected(format!(
                            "subset of {} is not a subgroup: {}*{} = {} is not in it",
                            self.name, self.elements[a], self.elements[b], self.elements[ab]
                        )))
                    }
                }
            }
            if pos(self.inverse(a)).is_none() {
                return Err(Error::rejected(format!(
                    "subset of {} is not a subgroup: inverse of {} is missing",
                    self.name, self.elements[a]
                )));
            }
        }
        GroupTable::new(
            name,
            members.iter().map(|&m| self.elements[m].clone()).collect(),
            table,
        )
    }
}

pub struct GroupRing {
    pub algebra: Arc<AlgebraSpec>,
    /// `Σ r_g g ↦ r_e`.
    pub trace: TraceData,
    /// `R ↪ R[G]`, `r ↦ r e`.
    pub base_embedding: Embedding,
}

fn group_ring_index(base_dim: usize, g: usize, r: usize) -> usize {
    g * base_dim + r
}

/// `R[G]` with group elements in degree zero.
pub fn group_ring(g: &GroupTable, base: &Arc<AlgebraSpec>) -> Result<GroupRing> {
    let sc = check_supercommutative(base);
    if !sc.passed() {
        return Err(Error::rejected(format!(
            "group ring base `{}` is not supercommutative: {}",
            base.name(),
            sc.checks[0].detail
        )));
    }
    let rd = base.dim();
    let n = g.order() * rd;
    let mut labels = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for gl in g.elements() {
        for ri in 0..rd {
            let rl = base.label(ri);
            labels.push(if rl == "1" { gl.clone() } else { format!("{rl}.{gl}") });
            degrees.push(base.degree(ri).clone());
        }
    }
    let mut products = Vec::with_capacity(n * n);
    for g1 in 0..g.order() {
        for r1 in 0..rd {
            for g2 in 0..g.order() {
                for r2 in 0..rd {
                    let h = g.mul(g1, g2);
                    products.push(SparseVec::from_entries(
                        base.product(r1, r2)
                            .iter()
                            .map(|(k, c)| (group_ring_index(rd, h, k), c.clone())),
                    ));
                }
            }
        }
    }
    let mut unit = vec![scalar(0); n];
    for (ri, c) in base.unit().iter().enumerate() {
        unit[group_ring_index(rd, g.identity(), ri)] = c.clone();
    }
    let algebra = Arc::new(AlgebraSpec::new(
        format!("{}[{}]", base.name(), g.name()),
        base.arity(),
        labels,
        degrees,
        unit,
        products,
    )?);
    let images: Vec<usize> = (0..rd).map(|ri| group_ring_index(rd, g.identity(), ri)).collect();
    let base_embedding = Embedding::from_basis_map(base.clone(), algebra.clone(), &images)?;
    let mut m = Matrix::zeros(rd, n);
    for ri in 0..rd {
        m.set(ri, group_ring_index(rd, g.identity(), ri), Scalar::one());
    }
    let trace = TraceData::untwisted(
        format!("tr_{}", g.name()),
        base_embedding.clone(),
        m,
        Degree::zero(base.arity()),
    )?;
    Ok(GroupRing {
        algebra,
        trace,
        base_embedding,
    })
}

/// `R ⊆ R[H] ⊆ R[G]` for `H` given by element indices of `g`.
pub fn group_ring_tower(g: &GroupTable, h: &[usize], base: &Arc<AlgebraSpec>) -> Result<NestedProblem> {
    group_ring_tower_named(g, h, base, None)
}

pub fn group_ring_tower_named(
    g: &GroupTable,
    h: &[usize],
    base: &Arc<AlgebraSpec>,
    h_name: Option<&str>,
) -> Result<NestedProblem> {
    let h_name = match h_name {
        Some(n) => n.to_string(),
        None if h.len() == 1 => "trivial".into(),
        None if h.len() == g.order() => format!("{}'", g.name()),
        None => format!("H{}", h.len()),
    };
    let h_name = if h_name == g.name() { format!("{h_name}'") } else { h_name };
    let sub = g.subgroup(h_name, h)?;
    let rg = group_ring(g, base)?;
    let rh = group_ring(&sub, base)?;
    let rd = base.dim();
    let unit_index = base
        .unit_sparse()
        .iter()
        .next()
        .filter(|_| base.unit_sparse().nnz() == 1)
        .map(|(i, _)| i)
        .ok_or_else(|| Error::rejected("base unit must be a basis element"))?;
    let mut images = Vec::with_capacity(rh.algebra.dim());
    for &hg in h {
        for ri in 0..rd {
            images.push(group_ring_index(rd, hg, ri));
        }
    }
    let iota_ba = Embedding::from_basis_map(rh.algebra.clone(), rg.algebra.clone(), &images)?;
    let tower = Tower::new(rh.base_embedding.clone(), iota_ba)?;
    let r_basis = (0..h.len()).map(|k| group_ring_index(rd, k, unit_index)).collect();
    NestedProblem::new(tower, rg.trace, rh.trace, r_basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_algebra, check_embedding, Element};

    #[test]
    fn s3_lengths() {
        let s3 = symmetric_group(3).unwrap();
        assert_eq!(s3.len(), 6);
        assert_eq!(Permutation::longest(3).length(), 3);
        assert_eq!(Permutation::identity(3).length(), 0);
        assert_eq!(s3.last().unwrap(), &Permutation::longest(3));
        assert_eq!(Permutation::longest(4).length(), 6);
        assert!(symmetric_group(0).is_err());
    }

    #[test]
    fn composition_convention() {
        let s1 = Permutation::simple(3, 1);
        let s2 = Permutation::simple(3, 2);
        // (s1 s2)(1) = s1(s2(1)) = s1(1) = 2
        assert_eq!(s1.compose(&s2).apply(1), 2);
        assert_eq!(s1.compose(&s2).compose(&s1), s2.compose(&s1).compose(&s2));
        let w = s1.compose(&s2);
        assert_eq!(w.compose(&w.inverse()), Permutation::identity(3));
        assert_eq!(w.reduced_word(), vec![1, 2]);
        assert_eq!(Permutation::longest(3).reduced_word(), vec![1, 2, 1]);
    }

    #[test]
    fn permutation_validation() {
        assert!(Permutation::new(vec![1, 1]).is_err());
        assert!(Permutation::new(vec![2, 3]).is_err());
        assert_eq!(Permutation::new(vec![2, 3, 1]).unwrap().cycle_label(), "c123");
    }

    #[test]
    fn nilcoxeter_small_cases() {
        let n1 = nilcoxeter(1).unwrap();
        assert_eq!(n1.algebra.dim(), 1);
        assert_eq!(n1.trace.degree, Degree::zero(1));
        assert!(n1.trace.matrix.is_identity());
        assert!(n1.sub_embedding.is_none());

        let n3 = nilcoxeter(3).unwrap();
        assert_eq!(n3.algebra.dim(), 6);
        assert_eq!(
            n3.algebra.basis(),
            &["1", "u2", "u1", "u12", "u21", "u121"].map(String::from)
        );
        let w0 = n3.algebra.index_of("u121").unwrap();
        for i in 0..6 {
            let v = n3.trace.apply(&SparseVec::unit(i));
            assert_eq!(v.is_zero(), i != w0);
        }
        assert_eq!(n3.trace.degree, Degree::new(vec![-3], Parity::Odd));
    }

    #[test]
    fn nilcoxeter_relations_hold() {
        for n in 2..=5 {
            let a = nilcoxeter(n).unwrap().algebra;
            let u: Vec<Element> = (1..n).map(|i| Element::named(&a, &format!("u{i}")).unwrap()).collect();
            for i in 0..n - 1 {
                assert!(u[i].multiply(&u[i]).unwrap().is_zero());
                for j in 0..n - 1 {
                    if i.abs_diff(j) > 1 {
                        assert_eq!(u[i].multiply(&u[j]).unwrap(), u[j].multiply(&u[i]).unwrap());
                    }
                }
                if i + 1 < n - 1 {
                    let lhs = u[i].multiply(&u[i + 1]).unwrap().multiply(&u[i]).unwrap();
                    let rhs = u[i + 1].multiply(&u[i]).unwrap().multiply(&u[i + 1]).unwrap();
                    assert_eq!(lhs, rhs);
                    assert!(!lhs.is_zero());
                }
            }
        }
        let a = nilcoxeter(3).unwrap().algebra;
        let u1 = Element::named(&a, "u1").unwrap();
        let u2 = Element::named(&a, "u2").unwrap();
        let w0 = u1.multiply(&u2).unwrap().multiply(&u1).unwrap();
        assert_eq!(w0, Element::named(&a, "u121").unwrap());
    }

    #[test]
    fn nilcoxeter_algebras_are_valid() {
        for n in 1..=4 {
            let nc = nilcoxeter(n).unwrap();
            assert!(check_algebra(&nc.algebra).passed(), "N{n}");
            if let Some(e) = &nc.sub_embedding {
                assert!(check_embedding(e).passed(), "N{} -> N{n}", n - 1);
            }
        }
    }

    #[test]
    fn group_ring_examples() {
        let q = Arc::new(AlgebraSpec::rationals(1));
        let z2 = group_ring(&GroupTable::cyclic(2), &q).unwrap();
        assert_eq!(z2.algebra.dim(), 2);
        let x = SparseVec::from_dense(&[scalar(3), scalar(5)]);
        assert_eq!(z2.trace.apply(&x), SparseVec::from_dense(&[scalar(3)]));

        let s3 = group_ring(&GroupTable::symmetric(3).unwrap(), &q).unwrap();
        assert_eq!(s3.algebra.dim(), 6);
        assert!(check_algebra(&s3.algebra).passed());

        let ext = Arc::new(exterior_base(1, 1).unwrap());
        let r = group_ring(&GroupTable::cyclic(2), &ext).unwrap();
        assert_eq!(r.algebra.dim(), 4);
        let tg = r.algebra.index_of("th1.g").unwrap();
        assert_eq!(r.algebra.degree(tg), &Degree::new(vec![0], Parity::Odd));
        assert!(check_algebra(&r.algebra).passed());
    }

    #[test]
    fn group_ring_rejects_noncommutative_base() {
        let n3 = Arc::new(nilcoxeter_algebra(3).unwrap());
        assert!(group_ring(&GroupTable::cyclic(2), &n3).is_err());
    }

    #[test]
    fn subgroup_selection() {
        let s3 = GroupTable::symmetric(3).unwrap();
        let q = Arc::new(AlgebraSpec::rationals(1));
        let a3: Vec<usize> = ["e", "c123", "c132"].iter().map(|l| s3.index_of(l).unwrap()).collect();
        assert!(group_ring_tower(&s3, &a3, &q).is_ok());

        let p = group_ring_tower(&s3, &[s3.identity()], &q).unwrap();
        assert_eq!(p.tower.b.dim(), 1);

        let bad: Vec<usize> = ["e", "c12", "c13"].iter().map(|l| s3.index_of(l).unwrap()).collect();
        let err = group_ring_tower(&s3, &bad, &q).unwrap_err().to_string();
        assert!(err.contains("c12*c13"), "{err}");
    }

    #[test]
    fn exterior_bases() {
        let e0 = exterior_base(0, 1).unwrap();
        assert_eq!(e0, AlgebraSpec::rationals(1));
        let e1 = exterior_base(1, 1).unwrap();
        let th = SparseVec::unit(1);
        assert!(e1.mul_sparse(&th, &th).is_zero());
        let e2 = exterior_base(2, 1).unwrap();
        assert_eq!(e2.dim(), 4);
        let (t1, t2) = (SparseVec::unit(1), SparseVec::unit(2));
        assert_eq!(e2.mul_sparse(&t1, &t2), e2.mul_sparse(&t2, &t1).scaled(&scalar(-1)));
        assert!(check_algebra(&e2).passed());
    }
}
