//! Dense square matrices over the supertropical semifield.
//!
//! Determinant-like quantities (permanent, adjoint, characteristic
//! polynomial, rank) are computed by exhaustive enumeration so that ties
//! between maximal terms ghost the result exactly. Enumeration is guarded by
//! a size cap.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::poly::Poly;

pub const DEFAULT_MAX_N: usize = 8;

/// Column vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Vector(pub Vec<Element>);

impl Vector {
    pub fn zeros(n: usize) -> Self {
        Vector(vec![Element::Zero; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Vector::zeros(n);
        v.0[i] = Element::one();
        v
    }

    pub fn from_ints(vals: &[i64]) -> Self {
        Vector(vals.iter().map(|&v| Element::tangible(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Element] {
        &self.0
    }

    /// Entries in 𝒯₀ with at least one non-zero.
    pub fn is_tangible(&self) -> bool {
        self.0.iter().all(Element::is_tangible_or_zero) && self.0.iter().any(|e| !e.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Element::is_zero)
    }

    /// Every entry in 𝒢₀.
    pub fn is_ghost(&self) -> bool {
        self.0.iter().all(Element::in_ghost_ideal)
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a.add(b)).collect())
    }

    pub fn scale(&self, c: &Element) -> Vector {
        Vector(self.0.iter().map(|a| c.mul(a)).collect())
    }

    pub fn hat(&self) -> Vector {
        Vector(self.0.iter().map(Element::hat).collect())
    }

    /// Entrywise ghost-surpassing.
    pub fn ghost_surpasses(&self, other: &Vector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a.ghost_surpasses(b))
    }

    pub fn tokens(&self) -> Vec<String> {
        self.0.iter().map(Element::to_string).collect()
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.tokens().join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    n: usize,
    entries: Vec<Element>,
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Element>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::Precondition("matrix must have n >= 1".into()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(n, r.len()));
        }
        Ok(Matrix { n, entries: rows.into_iter().flatten().collect() })
    }

    /// Rows of tokens, e.g. `&[&["0", "-inf"], &["1v", "2"]]`.
    pub fn parse_rows(rows: &[&[&str]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|t| t.parse()).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Element) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn zero(n: usize) -> Self {
        Matrix::from_fn(n, |_, _| Element::Zero)
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { Element::one() } else { Element::Zero })
    }

    pub fn diagonal(d: &[Element]) -> Self {
        Matrix::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { Element::Zero })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Element) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Element] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> Vector {
        Vector((0..self.n).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn from_columns(cols: &[Vector]) -> Result<Self> {
        let n = cols.len();
        if let Some(c) = cols.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch(n, c.len()));
        }
        Ok(Matrix::from_fn(n, |i, j| cols[j].0[i].clone()))
    }

    fn check_dim(&self, other: &Matrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        Ok(Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_dim(other)?;
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let prod = a.mul(other.get(k, j));
                    let cur = &mut out.entries[i * n + j];
                    *cur = cur.add(&prod);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Element) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(|a| c.mul(a)).collect() }
    }

    pub fn apply(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch(self.n, v.len()));
        }
        Ok(Vector(
            (0..self.n)
                .map(|i| {
                    self.row(i)
                        .iter()
                        .zip(&v.0)
                        .fold(Element::Zero, |acc, (a, x)| acc.add(&a.mul(x)))
                })
                .collect(),
        ))
    }

    pub fn pow(&self, m: usize) -> Matrix {
        let mut result = Matrix::identity(self.n);
        let mut base = self.clone();
        let mut e = m;
        // Square-and-multiply is exact: matrix multiplication is associative.
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    /// Successive powers `A, A², ..., A^m`.
    pub fn powers(&self, m: usize) -> Vec<Matrix> {
        let mut out: Vec<Matrix> = Vec::with_capacity(m);
        for k in 0..m {
            let next = match k {
                0 => self.clone(),
                _ => out[k - 1].mul(self).expect("same dimension"),
            };
            out.push(next);
        }
        out
    }

    pub fn nu(&self) -> Matrix {
        Matrix { n: self.n, entries: self.entries.iter().map(Element::nu).collect() }
    }

    /// Every entry in 𝒢₀.
    pub fn is_ghost(&self) -> bool {
        self.entries.iter().all(Element::in_ghost_ideal)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }

    pub fn ghost_surpasses(&self, other: &Matrix) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a.ghost_surpasses(b))
    }

    pub fn nu_eq(&self, other: &Matrix) -> bool {
        self.n == other.n && self.entries.iter().zip(&other.entries).all(|(a, b)| a.nu_eq(b))
    }

    pub fn trace(&self) -> Element {
        Element::sum((0..self.n).map(|i| self.get(i, i)))
    }

    /// Square submatrix on the given index list (rows and columns alike).
    pub fn principal(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(idx.len(), |i, j| self.get(idx[i], idx[j]).clone())
    }

    /// `P A Pᵀ` where row `i` of the result is row `perm[i]` of `A`.
    pub fn permuted(&self, perm: &[usize]) -> Matrix {
        self.principal(perm)
    }

    fn check_cap(&self, max_n: usize) -> Result<()> {
        if self.n > max_n {
            return Err(Error::SizeCap { n: self.n, max: max_n });
        }
        Ok(())
    }

    pub fn permanent(&self) -> Result<Element> {
        self.permanent_capped(DEFAULT_MAX_N)
    }

    /// The supertropical determinant `|A|`.
    pub fn permanent_capped(&self, max_n: usize) -> Result<Element> {
        self.check_cap(max_n)?;
        let rows: Vec<usize> = (0..self.n).collect();
        Ok(self.sub_permanent(&rows, &rows))
    }

    /// Permanent of the submatrix on `rows × cols`. Dynamic programming over
    /// the set of columns already matched to the leading rows; exact because
    /// the element operations form a semiring, so ties still ghost.
    pub fn sub_permanent(&self, rows: &[usize], cols: &[usize]) -> Element {
        debug_assert_eq!(rows.len(), cols.len());
        let k = cols.len();
        let mut dp = vec![Element::Zero; 1 << k];
        dp[0] = Element::one();
        for mask in 0usize..(1 << k) - 1 {
            if dp[mask].is_zero() {
                continue;
            }
            let r = rows[mask.count_ones() as usize];
            for (ci, &c) in cols.iter().enumerate() {
                let w = self.get(r, c);
                if mask & (1 << ci) != 0 || w.is_zero() {
                    continue;
                }
                let t = dp[mask].mul(w);
                let next = mask | (1 << ci);
                dp[next] = dp[next].add(&t);
            }
        }
        dp.pop().expect("non-empty table")
    }

    pub fn is_nonsingular(&self) -> Result<bool> {
        Ok(self.permanent()?.is_tangible())
    }

    pub fn is_nonsingular_capped(&self, max_n: usize) -> Result<bool> {
        Ok(self.permanent_capped(max_n)?.is_tangible())
    }

    pub fn adjoint(&self) -> Result<Matrix> {
        self.adjoint_capped(DEFAULT_MAX_N)
    }

    /// `adj(A)_{i,j}` is the permanent of `A` without row `j` and column `i`.
    pub fn adjoint_capped(&self, max_n: usize) -> Result<Matrix> {
        self.check_cap(max_n)?;
        let n = self.n;
        Ok(Matrix::from_fn(n, |i, j| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            self.sub_permanent(&rows, &cols)
        }))
    }

    pub fn char_poly(&self) -> Result<Poly> {
        self.char_poly_capped(DEFAULT_MAX_N)
    }

    /// `f_A = λⁿ + Σ α_k λ^{n-k}`, with `α_k` the sum of the permanents of
    /// all principal `k × k` submatrices (the `k`-multicycles).
    pub fn char_poly_capped(&self, max_n: usize) -> Result<Poly> {
        self.check_cap(max_n)?;
        let n = self.n;
        let mut coeffs = vec![Element::Zero; n + 1];
        coeffs[n] = Element::one();
        for k in 1..=n {
            let mut alpha = Element::Zero;
            for_each_subset(n, k, |s| {
                alpha = alpha.add(&self.sub_permanent(s, s));
            });
            coeffs[n - k] = alpha;
        }
        Ok(Poly::new(coeffs))
    }

    /// The coefficients `α_1..α_n` of the characteristic polynomial, indexed
    /// by multicycle length (entry 0 is unused and holds the unit).
    pub fn char_coefficients(&self, max_n: usize) -> Result<Vec<Element>> {
        let f = self.char_poly_capped(max_n)?;
        Ok((0..=self.n).map(|k| f.coeff(self.n - k)).collect())
    }

    /// `Σ α_i A^i` with `A⁰ = I`.
    pub fn eval_poly(&self, f: &Poly) -> Matrix {
        let mut acc = Matrix::zero(self.n);
        let mut power = Matrix::identity(self.n);
        for (i, c) in f.coeffs().iter().enumerate() {
            if i > 0 {
                power = power.mul(self).expect("same dimension");
            }
            if !c.is_zero() {
                acc = acc.add(&power.scale(c)).expect("same dimension");
            }
        }
        acc
    }

    pub fn rank(&self) -> Result<usize> {
        self.rank_capped(DEFAULT_MAX_N)
    }

    /// Largest `k` with a nonsingular `k × k` submatrix.
    pub fn rank_capped(&self, max_n: usize) -> Result<usize> {
        self.check_cap(max_n)?;
        let n = self.n;
        for k in (1..=n).rev() {
            let mut rows_sets = Vec::new();
            for_each_subset(n, k, |s| rows_sets.push(s.to_vec()));
            for rows in &rows_sets {
                let mut found = false;
                for_each_subset(n, k, |cols| {
                    if !found && self.sub_permanent(rows, cols).is_tangible() {
                        found = true;
                    }
                });
                if found {
                    return Ok(k);
                }
            }
        }
        Ok(0)
    }

    /// Rank of the `n × k` matrix with the given columns: the largest size
    /// of a nonsingular square submatrix.
    pub fn rank_of_columns(cols: &[Vector], max_n: usize) -> Result<usize> {
        let rows = cols.first().map_or(0, Vector::len);
        if let Some(c) = cols.iter().find(|c| c.len() != rows) {
            return Err(Error::DimensionMismatch(rows, c.len()));
        }
        let size = rows.max(cols.len());
        if size == 0 {
            return Ok(0);
        }
        // zero padding to a square matrix leaves the rank unchanged
        let padded = Matrix::from_fn(size, |i, j| {
            if i < rows && j < cols.len() {
                cols[j].0[i].clone()
            } else {
                Element::Zero
            }
        });
        padded.rank_capped(max_n)
    }

    pub fn to_tokens(&self) -> Vec<Vec<String>> {
        (0..self.n).map(|i| self.row(i).iter().map(Element::to_string).collect()).collect()
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile { n: self.n, entries: self.to_tokens() }
    }

    pub fn from_file(file: &MatrixFile) -> Result<Matrix> {
        if file.entries.len() != file.n {
            return Err(Error::Parse(format!("expected {} rows, found {}", file.n, file.entries.len())));
        }
        let rows = file
            .entries
            .iter()
            .map(|r| {
                if r.len() != file.n {
                    return Err(Error::Parse(format!("expected {} columns, found {}", file.n, r.len())));
                }
                r.iter().map(|t| t.parse()).collect::<Result<Vec<Element>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(rows).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Matrix> {
        let file: MatrixFile = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Matrix::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }
}

/// On-disk matrix: `{"n": k, "entries": [[token, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<String>>,
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let toks = self.to_tokens();
        let width = toks.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in toks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|t| format!("{t:>width$}")).collect();
            write!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Calls `f` on every increasing `k`-subset of `0..n`, in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    go(0, n, k, &mut cur, &mut f);
}

#[cfg(test)]
pub(crate) fn m(rows: &[&[&str]]) -> Matrix {
    Matrix::parse_rows(rows).unwrap()
}
