//! Exact rational linear algebra.
//!
//! Everything here is exact: no tolerances, no floating point. The public
//! [`Matrix`] is dense; elimination runs on sparse rows through [`Echelon`],
//! which is what the larger hom-space systems are fed into directly.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient, always in lowest terms with positive denominator.
pub type Scalar = BigRational;

pub fn scalar(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `[-|+]digits[/digits]`.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::rejected(format!("malformed rational `{s}`"));
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (t, None),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = match den {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad());
            }
            d.parse().map_err(|_| bad())?
        }
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Scalar::new(num, den))
}

/// A sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec::default()
    }

    pub fn unit(i: usize) -> Self {
        SparseVec {
            entries: vec![(i, Scalar::one())],
        }
    }

    pub fn from_dense(v: &[Scalar]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn from_map(map: BTreeMap<usize, Scalar>) -> Self {
        SparseVec {
            entries: map.into_iter().filter(|(_, x)| !x.is_zero()).collect(),
        }
    }

    /// Builds from unsorted, possibly repeated entries, summing duplicates.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, x) in entries {
            accumulate(&mut map, i, x);
        }
        SparseVec::from_map(map)
    }

    pub fn to_dense(&self, len: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, x)| (*i, x))
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |(j, _)| *j)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<usize> {
        self.entries.first().map(|(i, _)| *i)
    }

    pub fn scaled(&self, c: &Scalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, x)| (*i, x * c)).collect(),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }
}

pub(crate) fn accumulate(map: &mut BTreeMap<usize, Scalar>, i: usize, x: Scalar) {
    if x.is_zero() {
        return;
    }
    match map.entry(i) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(x);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += x;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Dense row-major matrix over [`Scalar`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            entries,
        })
    }

    /// Shorthand for integer test data.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar(x)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    /// `columns[j]` becomes column `j`.
    pub fn from_columns(rows: usize, columns: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Matrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: Scalar) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn sparse_column(&self, c: usize) -> SparseVec {
        SparseVec {
            entries: (0..self.rows)
                .filter(|&r| !self.get(r, c).is_zero())
                .map(|r| (r, self.get(r, c).clone()))
                .collect(),
        }
    }

    pub fn sparse_rows(&self) -> Vec<SparseVec> {
        (0..self.rows)
            .map(|r| SparseVec::from_dense(self.row(r)))
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product. Panics on a length mismatch.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "matrix-vector length mismatch");
        let mut out = vec![Scalar::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Product with a sparse vector, returned sparse.
    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut map = BTreeMap::new();
        for (c, x) in v.iter() {
            for r in 0..self.rows {
                let a = self.get(r, c);
                if !a.is_zero() {
                    accumulate(&mut map, r, a * x);
                }
            }
        }
        SparseVec::from_map(map)
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                found: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scaled(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        for r in self.sparse_rows() {
            e.insert(r);
        }
        e.rank()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Incremental sparse row-echelon form.
///
/// Invariant: every stored row has leading entry 1 in its pivot column and
/// no entries left of it.
#[derive(Clone, Debug)]
pub struct Echelon {
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(cols: usize) -> Self {
        Echelon {
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Scalar> = v.entries.iter().cloned().collect();
        let mut cursor = 0;
        loop {
            let hit = work
                .range(cursor..)
                .find(|(c, _)| self.pivot_row[**c].is_some())
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            let row = &self.rows[self.pivot_row[c].unwrap()];
            for (j, rv) in row.iter() {
                accumulate(&mut work, j, -(&x * rv));
            }
            cursor = c + 1;
        }
        SparseVec::from_map(work)
    }

    /// Adds `v` to the row space; returns whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.max_index().is_none_or(|m| m < self.cols));
        let r = self.reduce(&v);
        let Some(lead) = r.leading() else {
            return false;
        };
        let inv = r.get(lead).unwrap().recip();
        let r = r.scaled(&inv);
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_row[c].is_some()
    }

    /// Fully reduced rows sorted by pivot: the canonical RREF basis.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.leading().unwrap());
        let mut pivot_index = vec![None; self.cols];
        for (k, r) in rows.iter().enumerate() {
            pivot_index[r.leading().unwrap()] = Some(k);
        }
        for i in (0..rows.len()).rev() {
            let own = rows[i].leading().unwrap();
            let targets: Vec<(usize, Scalar)> = rows[i]
                .iter()
                .filter(|(c, _)| *c != own && pivot_index[*c].is_some())
                .map(|(c, x)| (pivot_index[c].unwrap(), x.clone()))
                .collect();
            if targets.is_empty() {
                continue;
            }
            let mut work: BTreeMap<usize, Scalar> = rows[i].entries.iter().cloned().collect();
            for (k, x) in targets {
                for (j, rv) in rows[k].iter() {
                    accumulate(&mut work, j, -(&x * rv));
                }
            }
            rows[i] = SparseVec::from_map(work);
        }
        rows
    }
}

/// Reduced row-echelon form and rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut e = Echelon::new(m.cols);
    for r in m.sparse_rows() {
        e.insert(r);
    }
    let rank = e.rank();
    let mut out = Matrix::zeros(m.rows, m.cols);
    for (i, r) in e.into_rref().into_iter().enumerate() {
        for (c, x) in r.iter() {
            out.set(i, c, x.clone());
        }
    }
    (out, rank)
}

/// A linear subspace of `Q^n`, stored by its canonical RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<SparseVec>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: (0..ambient_dim).map(SparseVec::unit).collect(),
        }
    }

    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut e = Echelon::new(ambient_dim);
        for v in vectors {
            e.insert(v);
        }
        Subspace {
            ambient_dim,
            basis: e.into_rref(),
        }
    }

    pub fn span_dense(ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Self {
        Subspace::span(ambient_dim, vectors.iter().map(|v| SparseVec::from_dense(v)))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_dense(&self) -> Vec<Vec<Scalar>> {
        self.basis
            .iter()
            .map(|v| v.to_dense(self.ambient_dim))
            .collect()
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut e = Echelon::new(self.ambient_dim);
        for b in &self.basis {
            e.insert(b.clone());
        }
        e.contains(v)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::ArityMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }
}

/// Right null space of `m`.
pub fn kernel(m: &Matrix) -> Subspace {
    kernel_of_rows(m.cols, m.sparse_rows())
}

/// Right null space of the system whose equations are `rows` (each of width `cols`).
pub fn kernel_of_rows(cols: usize, rows: impl IntoIterator<Item = SparseVec>) -> Subspace {
    let mut e = Echelon::new(cols);
    for r in rows {
        e.insert(r);
    }
    let reduced = e.into_rref();
    let mut is_pivot = vec![false; cols];
    // column -> entries (pivot column, value) of the reduced rows
    let mut by_column: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); cols];
    for r in &reduced {
        let p = r.leading().unwrap();
        is_pivot[p] = true;
        for (c, x) in r.iter() {
            if c != p {
                by_column[c].push((p, x.clone()));
            }
        }
    }
    let vectors = (0..cols).filter(|&c| !is_pivot[c]).map(|free| {
        SparseVec::from_entries(
            std::iter::once((free, Scalar::one()))
                .chain(by_column[free].iter().map(|(p, x)| (*p, -x))),
        )
    });
    Subspace::span(cols, vectors)
}

/// One solution of `m x = v` with free variables set to zero, or `None`.
pub fn solve(m: &Matrix, v: &[Scalar]) -> Option<Vec<Scalar>> {
    assert_eq!(v.len(), m.rows, "right-hand side length mismatch");
    let eqs = m
        .sparse_rows()
        .into_iter()
        .zip(v.iter().cloned())
        .collect::<Vec<_>>();
    solve_sparse(m.cols, eqs).map(|s| s.solution)
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub solution: Vec<Scalar>,
    pub rank: usize,
}

impl Solution {
    pub fn is_unique(&self) -> bool {
        self.rank == self.solution.len()
    }
}

/// Solves `Σ_j row_j x_j = rhs` for each `(row, rhs)` over `unknowns` columns.
pub fn solve_sparse(
    unknowns: usize,
    equations: impl IntoIterator<Item = (SparseVec, Scalar)>,
) -> Option<Solution> {
    let mut e = Echelon::new(unknowns + 1);
    for (row, rhs) in equations {
        let mut entries = row.entries;
        if !rhs.is_zero() {
            entries.push((unknowns, rhs));
        }
        e.insert(SparseVec { entries });
    }
    if e.is_pivot(unknowns) {
        return None;
    }
    let rows = e.into_rref();
    let rank = rows.len();
    let mut x = vec![Scalar::zero(); unknowns];
    for r in rows {
        let p = r.leading().unwrap();
        if let Some(val) = r.get(unknowns) {
            x[p] = val.clone();
        }
    }
    Some(Solution { solution: x, rank })
}

/// True iff both subspaces have identical canonical bases.
pub fn subspace_equal(s1: &Subspace, s2: &Subspace) -> Result<bool> {
    if s1.ambient_dim != s2.ambient_dim {
        return Err(Error::ArityMismatch {
            expected: s1.ambient_dim,
            found: s2.ambient_dim,
        });
    }
    Ok(s1.basis == s2.basis)
}

/// Formats a scalar as `n` or `n/d`.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub(crate) fn is_negative(x: &Scalar) -> bool {
    x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| scalar(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(2);
        assert_eq!(rref(&id), (id.clone(), 2));

        let m = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(rref(&m), (Matrix::from_int_rows(&[&[1, 2], &[0, 0]]), 1));

        let z = Matrix::zeros(3, 2);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn rref_uses_exact_fractions() {
        let m = Matrix::from_int_rows(&[&[2, 1], &[4, 3]]);
        let (r, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert!(r.is_identity());
        let m = Matrix::from_int_rows(&[&[3, 1, 2]]);
        let (r, _) = rref(&m);
        assert_eq!(r.row(0), &[scalar(1), ratio(1, 3), ratio(2, 3)]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::identity(3)).dim(), 0);
        assert_eq!(kernel(&Matrix::zeros(3, 3)), Subspace::full(3));
        // x + y = 0 has solution (1, -1); the echelon form scales it to lead with 1.
        let k = kernel(&Matrix::from_int_rows(&[&[1, 1]]));
        assert_eq!(k.basis_dense(), vec![v(&[1, -1])]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(3);
        assert_eq!(solve(&id, &v(&[4, 5, 6])), Some(v(&[4, 5, 6])));
        assert_eq!(solve(&Matrix::from_int_rows(&[&[1, 1]]), &v(&[2])), Some(v(&[2, 0])));
        assert_eq!(solve(&Matrix::from_int_rows(&[&[1], &[1]]), &v(&[1, 2])), None);
    }

    #[test]
    fn subspace_equality_examples() {
        let a = Subspace::span_dense(2, &[v(&[1, 0])]);
        let b = Subspace::span_dense(2, &[v(&[2, 0])]);
        let c = Subspace::span_dense(2, &[v(&[0, 1])]);
        assert!(subspace_equal(&a, &b).unwrap());
        assert!(!subspace_equal(&a, &c).unwrap());
        let f1 = Subspace::span_dense(2, &[v(&[1, 0]), v(&[0, 1])]);
        let f2 = Subspace::span_dense(2, &[v(&[0, 3]), v(&[1, 1])]);
        assert!(subspace_equal(&f1, &f2).unwrap());
        assert!(subspace_equal(&a, &Subspace::zero(3)).is_err());
    }

    #[test]
    fn scalar_text() {
        assert_eq!(parse_scalar("-3/2").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar("4/2").unwrap(), scalar(2));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("1/-2").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(format_scalar(&ratio(-3, 2)), "-3/2");
        assert_eq!(format_scalar(&scalar(7)), "7");
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-3i64..4, r * c).prop_map(move |xs| {
                Matrix::from_rows(xs.chunks(c).map(v).collect()).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let (_, rank) = rref(&m);
            prop_assert_eq!(rank + kernel(&m).dim(), m.cols());
            for k in kernel(&m).basis_dense() {
                prop_assert!(m.mul_vec(&k).iter().all(Zero::is_zero));
            }
        }

        #[test]
        fn rref_is_idempotent(m in small_matrix()) {
            let (r, rank) = rref(&m);
            prop_assert_eq!(rref(&r), (r.clone(), rank));
        }

        #[test]
        fn solutions_satisfy_system(m in small_matrix(), seed in prop::collection::vec(-3i64..4, 6)) {
            let x: Vec<Scalar> = (0..m.cols()).map(|i| scalar(seed[i])).collect();
            let b = m.mul_vec(&x);
            let sol = solve(&m, &b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&sol), b);
        }
    }
}
