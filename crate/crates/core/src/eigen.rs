//! Supertropical eigenvalues and eigenvectors, ghost kernels, generalized
//! and weak generalized eigenvectors, and eigenspace decompositions of
//! stable powers.

use crate::digraph::{cores_capped, is_irreducible};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector, DEFAULT_MAX_N};
use crate::poly::CornerRoot;
use crate::stability::{semi_idempotent_coeff, stability_index, StableForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenKind {
    /// `A v = β v`.
    Strict,
    /// `A v ⊨ β v`.
    Supertropical,
    /// `A^m v ⊨ β^m v`.
    Generalized(usize),
    /// `(A^m ⊕ β^m I)^k v` ghost.
    Weak { m: usize, k: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenPair {
    pub beta: Element,
    pub v: Vector,
    pub kind: EigenKind,
}

/// `A v` lies in the ghost ideal.
pub fn g_kernel_member(a: &Matrix, v: &Vector) -> Result<bool> {
    Ok(a.apply(v)?.is_ghost())
}

fn push_unique(out: &mut Vec<Vector>, v: Vector) {
    if !out.contains(&v) {
        out.push(v);
    }
}

/// Hatted adjoint columns that are tangible g-annihilators of a singular `A`.
pub fn g_annihilators_from_adjoint(a: &Matrix) -> Result<Vec<Vector>> {
    g_annihilators_from_adjoint_capped(a, DEFAULT_MAX_N)
}

pub fn g_annihilators_from_adjoint_capped(a: &Matrix, max_n: usize) -> Result<Vec<Vector>> {
    if a.permanent_capped(max_n)?.is_tangible() {
        return Err(Error::Nonsingular);
    }
    let adj = a.adjoint_capped(max_n)?;
    let mut out = Vec::new();
    for j in 0..a.n() {
        let v = adj.column(j).hat();
        if v.is_tangible() && g_kernel_member(a, &v)? {
            push_unique(&mut out, v);
        }
    }
    Ok(out)
}

/// Corner roots of the characteristic polynomial.
pub fn eigenvalues(a: &Matrix) -> Result<Vec<CornerRoot>> {
    eigenvalues_capped(a, DEFAULT_MAX_N)
}

pub fn eigenvalues_capped(a: &Matrix, max_n: usize) -> Result<Vec<CornerRoot>> {
    a.char_poly_capped(max_n)?.corner_roots()
}

/// Strict if `A v = β v`; supertropical if `v` is tangible and `A v ⊨ β v`.
pub fn classify(a: &Matrix, v: &Vector, beta: &Element) -> Result<Option<EigenKind>> {
    if v.is_zero() {
        return Ok(None);
    }
    let av = a.apply(v)?;
    let bv = v.scale(beta);
    Ok(if av == bv {
        Some(EigenKind::Strict)
    } else if v.is_tangible() && av.ghost_surpasses(&bv) {
        Some(EigenKind::Supertropical)
    } else {
        None
    })
}

/// Eigenvectors for `β` from two candidate sources, each verified: the
/// columns of `A` (kept only when strict), then the hatted columns of
/// `adj(A ⊕ βI)`.
pub fn eigenvector_for(a: &Matrix, beta: &Element) -> Result<Vec<EigenPair>> {
    eigenvector_for_capped(a, beta, DEFAULT_MAX_N)
}

pub fn eigenvector_for_capped(a: &Matrix, beta: &Element, max_n: usize) -> Result<Vec<EigenPair>> {
    if beta.is_ghost() {
        return Err(Error::Precondition("eigenvalue must be tangible or -inf".into()));
    }
    let n = a.n();
    let shifted = a.add(&Matrix::identity(n).scale(beta))?;
    let adj = shifted.adjoint_capped(max_n)?;
    let mut out: Vec<EigenPair> = Vec::new();
    let consider = |v: Vector, strict_only: bool, out: &mut Vec<EigenPair>| -> Result<()> {
        if out.iter().any(|p| p.v == v) {
            return Ok(());
        }
        match classify(a, &v, beta)? {
            Some(EigenKind::Strict) => out.push(EigenPair { beta: beta.clone(), v, kind: EigenKind::Strict }),
            Some(kind) if !strict_only => out.push(EigenPair { beta: beta.clone(), v, kind }),
            _ => {}
        }
        Ok(())
    };
    for j in 0..n {
        consider(a.column(j), true, &mut out)?;
    }
    for j in 0..n {
        consider(adj.column(j).hat(), false, &mut out)?;
    }
    Ok(out)
}

/// `A^m v ⊨ β^m v`, or `A^m v ⊕ β^m v` ghost, for tangible `v`.
pub fn is_generalized_eigenvector(a: &Matrix, v: &Vector, beta: &Element, m: usize) -> Result<bool> {
    if !v.is_tangible() || m == 0 {
        return Ok(false);
    }
    let amv = a.pow(m).apply(v)?;
    let bmv = v.scale(&beta.pow(m as u64));
    Ok(amv.ghost_surpasses(&bmv) || amv.add(&bmv).is_ghost())
}

/// Least `m ≤ m_max` with `v` a generalized eigenvector of multiplicity `m`.
pub fn generalized_multiplicity(a: &Matrix, v: &Vector, beta: &Element, m_max: usize) -> Result<Option<usize>> {
    for m in 1..=m_max {
        if is_generalized_eigenvector(a, v, beta, m)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Least `k ≤ k_max` with `(A^m ⊕ β^m I)^k v` ghost.
pub fn weak_membership(a: &Matrix, v: &Vector, beta: &Element, m: usize, k_max: usize) -> Result<Option<usize>> {
    if v.is_zero() {
        return Ok(None);
    }
    let shifted = a.pow(m).add(&Matrix::identity(a.n()).scale(&beta.pow(m as u64)))?;
    let mut w = v.clone();
    for k in 1..=k_max {
        w = shifted.apply(&w)?;
        if w.is_ghost() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakReport {
    pub stability_index: usize,
    /// `Σ_{j=0}^{2m'} (A ⊕ βI)^j v`.
    pub sum: Vector,
    pub sum_is_ghost: bool,
    /// The same sum without the `j = 0` term.
    pub tail_sum_is_ghost: bool,
    /// Multiplicity of `β^{m'}` as a generalized eigenvalue of `A^{m'}` on
    /// `v`, searched up to `k_max`.
    pub power_multiplicity: Option<usize>,
}

impl WeakReport {
    pub fn confirmed(&self) -> bool {
        self.sum_is_ghost && self.power_multiplicity.is_some()
    }
}

pub fn weak_to_generalized(a: &Matrix, v: &Vector, beta: &Element, m_max: usize, k_max: usize) -> Result<WeakReport> {
    let (mp, _) = stability_index(a, m_max)?;
    weak_to_generalized_at(a, v, beta, mp, k_max)
}

/// As [`weak_to_generalized`] with the stability index `mp` supplied.
pub fn weak_to_generalized_at(a: &Matrix, v: &Vector, beta: &Element, mp: usize, k_max: usize) -> Result<WeakReport> {
    let shifted = a.add(&Matrix::identity(a.n()).scale(beta))?;
    let mut term = v.clone();
    let mut tail = Vector::zeros(a.n());
    for _ in 1..=2 * mp {
        term = shifted.apply(&term)?;
        tail = tail.add(&term);
    }
    let sum = tail.add(v);
    let power = a.pow(mp);
    let power_multiplicity = generalized_multiplicity(&power, v, &beta.pow(mp as u64), k_max)?;
    Ok(WeakReport { stability_index: mp, sum_is_ghost: sum.is_ghost(), tail_sum_is_ghost: tail.is_ghost(), sum, power_multiplicity })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompVector {
    pub block: usize,
    /// `-inf` for g-annihilators.
    pub beta: Element,
    pub v: Vector,
    pub kind: EigenKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EigenDecomposition {
    /// Stable power used.
    pub m: usize,
    pub power: Matrix,
    pub stable: StableForm,
    pub vectors: Vec<DecompVector>,
    /// Rank of the matrix whose columns are `vectors`.
    pub rank: usize,
    /// Components that failed verification.
    pub failures: Vec<String>,
}

impl EigenDecomposition {
    pub fn eigenvector_count(&self) -> usize {
        self.vectors.iter().filter(|d| !d.beta.is_zero()).count()
    }

    pub fn annihilator_count(&self) -> usize {
        self.vectors.len() - self.eigenvector_count()
    }
}

/// Extends a seed living on block `j` to the blocks above it:
/// `ṽ_i = max(β_i, β)^{-1} ⊗ Σ_{k=i+1..j} B_{i,k} ṽ_k`, hatted.
fn extend_seed(p: &Matrix, stable: &StableForm, j: usize, seed: &[Element], beta: &Element) -> Vector {
    let bf = &stable.block_form;
    let mut v = Vector::zeros(p.n());
    for (t, &r) in bf.blocks[j].iter().enumerate() {
        v.0[r] = seed[t].clone();
    }
    for i in (0..j).rev() {
        let scale = match beta.cmp_nu(&stable.betas[i]) {
            std::cmp::Ordering::Greater => beta,
            _ => &stable.betas[i],
        };
        let inv = scale.inv().unwrap_or_else(Element::one);
        let rows = &bf.blocks[i];
        let later: Vec<usize> = bf.blocks[i + 1..=j].iter().flatten().copied().collect();
        for &r in rows {
            let x = Element::sum(later.iter().map(|&c| p.get(r, c).mul(&v.0[c])).collect::<Vec<_>>().iter());
            v.0[r] = inv.mul(&x).hat();
        }
    }
    v
}

/// Generalized eigenspace decomposition of the first tangibly stable power
/// `A^s`: per diagonal block, eigenvectors seeded by columns of the block on
/// its tangible core, and g-annihilators for singular blocks, each extended
/// to the earlier blocks and verified on `A^s`.
pub fn eigendecomposition(a: &Matrix, m_max: usize) -> Result<EigenDecomposition> {
    eigendecomposition_capped(a, m_max, DEFAULT_MAX_N)
}

pub fn eigendecomposition_capped(a: &Matrix, m_max: usize, max_n: usize) -> Result<EigenDecomposition> {
    if a.n() > max_n {
        return Err(Error::SizeCap { n: a.n(), max: max_n });
    }
    let (m, stable) = stability_index(a, m_max)?;
    let p = a.pow(m);
    let bf = stable.block_form.clone();
    let mut vectors: Vec<DecompVector> = Vec::new();
    let mut failures = Vec::new();
    for j in 0..bf.eta() {
        let block = bf.diagonal_block(&p, j);
        let beta = stable.betas[j].clone();
        let tcore = match cores_capped(&block, max_n) {
            Ok(c) => c.tcore_vertices,
            Err(Error::NoCycles) => Vec::new(),
            Err(e) => return Err(e),
        };
        let inv = beta.inv().unwrap_or_else(Element::one);
        for &c in &tcore {
            let col = block.column(c).scale(&inv);
            let full: Vec<Element> = col.hat().0;
            let restricted: Vec<Element> = (0..block.n())
                .map(|r| if tcore.contains(&r) { col.0[r].hat() } else { Element::Zero })
                .collect();
            let mut found = false;
            for seed in [full, restricted] {
                let v = extend_seed(&p, &stable, j, &seed, &beta);
                if let Some(kind) = classify(&p, &v, &beta)? {
                    if !vectors.iter().any(|d| d.v == v) {
                        vectors.push(DecompVector { block: j, beta: beta.clone(), v, kind });
                    }
                    found = true;
                    break;
                }
            }
            if !found {
                failures.push(format!(
                    "block {} column {}: no verified eigenvector for beta = {beta}",
                    j + 1,
                    bf.blocks[j][c] + 1
                ));
            }
        }
        if !block.permanent_capped(max_n)?.is_tangible() {
            for w in g_annihilators_from_adjoint_capped(&block, max_n)? {
                let v = extend_seed(&p, &stable, j, &w.0, &Element::Zero);
                if v.is_tangible() && p.apply(&v)?.is_ghost() {
                    if !vectors.iter().any(|d| d.v == v) {
                        vectors.push(DecompVector { block: j, beta: Element::Zero, v, kind: EigenKind::Supertropical });
                    }
                } else {
                    failures.push(format!("block {}: g-annihilator {w} does not extend", j + 1));
                }
            }
        }
    }
    let cols: Vec<Vector> = vectors.iter().map(|d| d.v.clone()).collect();
    let rank = if cols.is_empty() { 0 } else { Matrix::rank_of_columns(&cols, max_n.max(cols.len()))? };
    Ok(EigenDecomposition { m, power: p, stable, vectors, rank, failures })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThickSet {
    pub beta: Element,
    pub tcore: Vec<usize>,
    /// Columns of `(A)_tcore` as eigenpairs of `(A)_tcore`.
    pub block_pairs: Vec<EigenPair>,
    /// Columns of `A` on the tangible core as eigenpairs of `A`.
    pub pairs: Vec<EigenPair>,
    pub annihilators: Vec<Vector>,
    /// Rank of the columns `pairs ∪ annihilators`.
    pub rank: usize,
}

/// For irreducible semi-idempotent `A` with non-empty tangible core: the
/// tangible-core columns as eigenvectors, greedily extended by tangible
/// g-annihilators towards rank `n`.
pub fn tcore_strict_eigenvectors(a: &Matrix) -> Result<ThickSet> {
    let n = a.n();
    if !is_irreducible(a) {
        return Err(Error::Precondition("matrix is not irreducible".into()));
    }
    let beta = semi_idempotent_coeff(a).ok_or_else(|| Error::Precondition("matrix is not semi-idempotent".into()))?;
    let tcore = cores_capped(a, DEFAULT_MAX_N)?.tcore_vertices;
    if tcore.is_empty() {
        return Err(Error::EmptyCore("tcore"));
    }
    let sub = a.principal(&tcore);
    let mut block_pairs = Vec::new();
    for c in 0..tcore.len() {
        let v = sub.column(c);
        if let Some(kind) = classify(&sub, &v, &beta)? {
            block_pairs.push(EigenPair { beta: beta.clone(), v, kind });
        }
    }
    let mut pairs = Vec::new();
    for &c in &tcore {
        let raw = a.column(c);
        let v = if classify(a, &raw, &beta)? == Some(EigenKind::Strict) { raw } else { raw.hat() };
        if let Some(kind) = classify(a, &v, &beta)? {
            pairs.push(EigenPair { beta: beta.clone(), v, kind });
        }
    }
    let mut cols: Vec<Vector> = pairs.iter().map(|p| p.v.clone()).collect();
    let mut rank = if cols.is_empty() { 0 } else { Matrix::rank_of_columns(&cols, DEFAULT_MAX_N)? };
    let mut candidates: Vec<Vector> = (0..n).filter(|u| !tcore.contains(u)).map(|u| Vector::unit(n, u)).collect();
    if !a.permanent()?.is_tangible() {
        candidates.extend(g_annihilators_from_adjoint(a)?);
    }
    let mut annihilators = Vec::new();
    for w in candidates {
        if rank == n {
            break;
        }
        if !w.is_tangible() || !g_kernel_member(a, &w)? || cols.contains(&w) {
            continue;
        }
        cols.push(w.clone());
        let r = Matrix::rank_of_columns(&cols, DEFAULT_MAX_N.max(cols.len()))?;
        if r > rank {
            rank = r;
            annihilators.push(w);
        } else {
            cols.pop();
        }
    }
    Ok(ThickSet { beta, tcore, block_pairs, pairs, annihilators, rank })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::m;
    use crate::poly::Poly;
    use crate::testutil::{arb_matrix, matrix_from_seed, random_quasi_identity, rng, SEED};
    use proptest::prelude::*;

    fn e(s: &str) -> Element {
        s.parse().unwrap()
    }

    fn v(toks: &[&str]) -> Vector {
        Vector(toks.iter().map(|t| e(t)).collect())
    }

    fn badex() -> Matrix {
        m(&[&["0", "0"], &["1", "2"]])
    }

    #[test]
    fn ghost_kernels() {
        let a2 = badex().pow(2);
        assert!(g_kernel_member(&a2, &v(&["2", "1"])).unwrap());
        assert_eq!(a2.apply(&v(&["2", "1"])).unwrap(), v(&["3v", "5v"]));
        assert!(!g_kernel_member(&Matrix::identity(2), &v(&["0", "0"])).unwrap());
        assert!(g_kernel_member(&m(&[&["1v", "0v"], &["2v", "-inf"]]), &v(&["4", "-3"])).unwrap());
    }

    #[test]
    fn annihilators_from_adjoint() {
        assert!(g_annihilators_from_adjoint(&m(&[&["1", "2"], &["3", "4"]])).unwrap().contains(&v(&["2", "1"])));
        assert!(g_annihilators_from_adjoint(&m(&[&["0v", "0"], &["1", "2"]])).unwrap().contains(&v(&["2", "1"])));
        assert_eq!(g_annihilators_from_adjoint(&m(&[&["1v", "0v"], &["2v", "3v"]])).unwrap().len(), 2);
        assert_eq!(g_annihilators_from_adjoint(&badex()), Err(Error::Nonsingular));
    }

    #[test]
    fn eigenvalue_lists() {
        let vals = |a: &Matrix| -> Vec<(String, usize)> {
            eigenvalues(a).unwrap().into_iter().map(|r| (r.value.to_string(), r.multiplicity)).collect()
        };
        assert_eq!(vals(&badex()), vec![("2".into(), 1), ("0".into(), 1)]);
        assert_eq!(vals(&m(&[&["1", "2"], &["3", "4"]])), vec![("4".into(), 1), ("1".into(), 1)]);
        let q = m(&[&["0", "-1v", "-2v"], &["-1v", "0", "-1v"], &["-3v", "-2v", "0"]]);
        assert_eq!(vals(&q), vec![("0".into(), 3)]);
    }

    #[test]
    fn eigenvectors_from_adjoint() {
        let p = eigenvector_for(&badex(), &e("0")).unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!((p[0].v.clone(), p[0].kind), (v(&["2", "1"]), EigenKind::Supertropical));
        assert_eq!(badex().apply(&p[0].v).unwrap(), v(&["2", "3v"]));
        let p = eigenvector_for(&badex(), &e("2")).unwrap();
        assert_eq!((p[0].v.clone(), p[0].kind), (v(&["0", "2"]), EigenKind::Strict));
        let q = m(&[&["0", "-1v", "-2v"], &["-1v", "0", "-1v"], &["-3v", "-2v", "0"]]);
        let p = eigenvector_for(&q, &Element::one()).unwrap();
        let strict: Vec<Vector> = p.iter().filter(|x| x.kind == EigenKind::Strict).map(|x| x.v.clone()).collect();
        assert_eq!(strict, (0..3).map(|j| q.column(j)).collect::<Vec<_>>());
        assert!(eigenvector_for(&badex(), &e("1v")).is_err());
    }

    #[test]
    fn generalized_eigenvectors() {
        assert!(is_generalized_eigenvector(&badex(), &v(&["2", "1"]), &Element::Zero, 2).unwrap());
        assert!(!is_generalized_eigenvector(&badex(), &v(&["2", "1"]), &Element::Zero, 1).unwrap());
        assert!(is_generalized_eigenvector(&badex(), &v(&["0", "2"]), &e("2"), 1).unwrap());
        assert!(!is_generalized_eigenvector(&badex(), &v(&["0", "2"]), &e("0"), 1).unwrap());
    }

    #[test]
    fn weak_eigenvectors() {
        let a2 = badex().pow(2);
        for b in ["0", "-1", "1/2", "-7/3"] {
            assert_eq!(weak_membership(&a2, &v(&["2", "1"]), &e(b), 1, 16).unwrap(), Some(1));
        }
        assert_eq!(weak_membership(&Matrix::identity(2), &v(&["0", "1"]), &e("5"), 1, 16).unwrap(), None);
        // a strict eigenvector is ghosted at the first step
        assert_eq!(weak_membership(&badex(), &v(&["0", "2"]), &e("2"), 1, 16).unwrap(), Some(1));
    }

    #[test]
    fn weak_to_generalized_examples() {
        let a = m(&[&["2", "0"], &["-inf", "0"]]);
        let r = weak_to_generalized(&a, &v(&["-2", "0"]), &e("0"), 64, 16).unwrap();
        assert_eq!(r.stability_index, 1);
        assert_eq!(r.sum, v(&["2v", "0v"]));
        assert!(r.confirmed());
        let r = weak_to_generalized(&a, &v(&["0", "-inf"]), &e("2"), 64, 16).unwrap();
        assert!(r.confirmed());
        let r = weak_to_generalized(&a, &v(&["-2", "0"]), &e("1"), 64, 16).unwrap();
        assert_eq!(r.sum, v(&["2v", "2"]));
        assert!(!r.sum_is_ghost);
    }

    #[test]
    fn ghost_sum_keeps_the_starting_vector_for_small_eigenvalues() {
        // strict eigenpair with β below 𝟙: the j = 0 term dominates the sum
        let a = m(&[&["-1"]]);
        let x = v(&["0"]);
        assert_eq!(classify(&a, &x, &e("-1")).unwrap(), Some(EigenKind::Strict));
        assert_eq!(weak_membership(&a, &x, &e("-1"), 1, 4).unwrap(), Some(1));
        let r = weak_to_generalized(&a, &x, &e("-1"), 64, 16).unwrap();
        assert_eq!(r.sum, v(&["0"]));
        assert!(!r.sum_is_ghost);
        assert!(r.tail_sum_is_ghost);
        assert_eq!(r.power_multiplicity, Some(1));
    }

    #[test]
    fn decompositions() {
        let a = m(&[&["2", "0"], &["-inf", "0"]]);
        let d = eigendecomposition(&a, 64).unwrap();
        assert_eq!(d.m, 1);
        assert!(d.failures.is_empty());
        let got: Vec<(String, Vector, EigenKind)> = d.vectors.iter().map(|x| (x.beta.to_string(), x.v.clone(), x.kind)).collect();
        assert_eq!(
            got,
            vec![
                ("2".into(), v(&["0", "-inf"]), EigenKind::Strict),
                ("0".into(), v(&["-2", "0"]), EigenKind::Supertropical),
            ]
        );
        assert_eq!(a.apply(&v(&["-2", "0"])).unwrap(), v(&["0v", "0"]));
        assert_eq!(d.rank, 2);

        // larger eigenvalue in the later block
        let b = m(&[&["0", "0"], &["-inf", "2"]]);
        let d = eigendecomposition(&b, 64).unwrap();
        assert!(d.vectors.iter().any(|x| x.v == v(&["-2", "0"]) && x.beta == e("2")));
        assert_eq!(d.rank, 2);

        let q = m(&[&["0", "-1v", "-2v"], &["-1v", "0", "-1v"], &["-3v", "-2v", "0"]]);
        let d = eigendecomposition(&q, 64).unwrap();
        assert_eq!((d.eigenvector_count(), d.rank), (3, 3));

        let s = q.scale(&e("3"));
        let d = eigendecomposition(&s, 64).unwrap();
        assert!(d.vectors.iter().all(|x| x.beta == e("3")));
        assert_eq!((d.eigenvector_count(), d.rank), (3, 3));
    }

    #[test]
    fn singular_decomposition_has_annihilators() {
        let d = eigendecomposition(&m(&[&["1", "2"], &["3", "4"]]), 64).unwrap();
        assert_eq!(d.eigenvector_count(), 1);
        assert!(d.annihilator_count() >= 1);
        assert_eq!(d.rank, 2);
    }

    #[test]
    fn tcore_columns() {
        let q = m(&[&["0", "-1v", "-2v"], &["-1v", "0", "-1v"], &["-3v", "-2v", "0"]]);
        let t = tcore_strict_eigenvectors(&q).unwrap();
        assert_eq!(t.tcore, vec![0, 1, 2]);
        assert!(t.pairs.iter().all(|p| p.kind == EigenKind::Strict));
        assert_eq!((t.pairs.len(), t.rank), (3, 3));

        let a = m(&[&["0", "2", "4"], &["4", "0", "-1"], &["1", "0", "3v"]]);
        let j = a.pow(4).scale(&e("-12"));
        let t = tcore_strict_eigenvectors(&j).unwrap();
        assert_eq!(t.tcore, vec![0, 1]);
        assert_eq!(t.block_pairs.len(), 2);
        assert!(t.block_pairs.iter().all(|p| p.kind == EigenKind::Strict));
        for p in &t.pairs {
            assert!(j.apply(&p.v).unwrap().ghost_surpasses(&p.v.scale(&t.beta)));
        }

        let t = tcore_strict_eigenvectors(&m(&[&["1", "2"], &["3", "4"]])).unwrap();
        assert_eq!((t.beta.clone(), t.tcore.clone()), (e("4"), vec![1]));
        assert_eq!(t.block_pairs[0].kind, EigenKind::Strict);
        assert_eq!(t.rank, 2);

        assert!(matches!(tcore_strict_eigenvectors(&badex()), Err(Error::Precondition(_))));
    }

    #[test]
    fn primary_factor_columns_are_weak_eigenvectors() {
        let mut checked = 0;
        for seed in 0..200u64 {
            let a = matrix_from_seed(3, SEED + seed);
            let Ok(roots) = eigenvalues(&a) else { continue };
            let factors: Vec<(Element, usize)> = roots.iter().map(|r| (r.value.clone(), r.multiplicity)).collect();
            let f = factors.iter().fold(Poly::new(vec![Element::one()]), |acc, (b, k)| acc.mul(&Poly::linear(b.clone()).pow(*k)));
            if !a.eval_poly(&f).is_ghost() {
                continue;
            }
            for j in 0..factors.len() {
                let g = factors
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != j)
                    .fold(Poly::new(vec![Element::one()]), |acc, (_, (b, k))| acc.mul(&Poly::linear(b.clone()).pow(*k)));
                let gm = a.eval_poly(&g);
                let (bj, nj) = &factors[j];
                let shifted = a.add(&Matrix::identity(3).scale(bj)).unwrap().pow(*nj);
                for c in 0..3 {
                    assert!(shifted.apply(&gm.column(c)).unwrap().is_ghost(), "{a}");
                }
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn quasi_identities_have_full_strict_sets() {
        let mut r = rng(SEED);
        for n in 1..=5 {
            let q = random_quasi_identity(&mut r, n);
            let pairs = eigenvector_for(&q, &Element::one()).unwrap();
            assert_eq!(pairs.iter().filter(|p| p.kind == EigenKind::Strict).count(), n);
            let cols: Vec<Vector> = (0..n).map(|j| q.column(j)).collect();
            assert_eq!(Matrix::rank_of_columns(&cols, 8).unwrap(), n);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn found_pairs_are_generalized(a in arb_matrix(1..5)) {
            for root in eigenvalues(&a).unwrap_or_default() {
                for p in eigenvector_for(&a, &root.value).unwrap() {
                    prop_assert!(a.apply(&p.v).unwrap().ghost_surpasses(&p.v.scale(&p.beta)));
                    if p.v.is_tangible() {
                        prop_assert!(is_generalized_eigenvector(&a, &p.v, &p.beta, 1).unwrap());
                        for k in 2..=3 {
                            prop_assert!(is_generalized_eigenvector(&a, &p.v, &p.beta, k).unwrap());
                        }
                        prop_assert!(weak_membership(&a, &p.v, &p.beta, 1, 16).unwrap().is_some());
                    }
                }
            }
        }

        #[test]
        fn generalized_eigenvectors_form_a_subspace(a in arb_matrix(2..5), c in -3i64..=3) {
            for root in eigenvalues(&a).unwrap_or_default() {
                let pairs: Vec<EigenPair> = eigenvector_for(&a, &root.value).unwrap().into_iter().filter(|p| p.v.is_tangible()).collect();
                let c = Element::tangible(c);
                for p in &pairs {
                    prop_assert!(is_generalized_eigenvector(&a, &p.v.scale(&c), &p.beta, 1).unwrap());
                    let av = a.apply(&p.v).unwrap();
                    if av.is_tangible() {
                        prop_assert!(is_generalized_eigenvector(&a, &av, &p.beta, 1).unwrap());
                    }
                    for q in &pairs {
                        let s = p.v.add(&q.v);
                        if s.is_tangible() {
                            prop_assert!(is_generalized_eigenvector(&a, &s, &p.beta, 1).unwrap());
                        }
                    }
                }
            }
        }

        #[test]
        fn weak_eigenvalues_pass_to_divisors(a in arb_matrix(1..4), seed in any::<u64>(), m in 1usize..=6) {
            let x = crate::testutil::random_matrix(&mut rng(seed), a.n()).column(0).hat();
            prop_assume!(x.is_tangible());
            let beta = a.get(0, 0).hat();
            if weak_membership(&a, &x, &beta, m, 16).unwrap().is_some() {
                for d in (1..=m).filter(|d| m % d == 0) {
                    prop_assert!(weak_membership(&a, &x, &beta, d, 16 * m).unwrap().is_some());
                }
            }
        }
    }
}
