//! Weighted digraph of a matrix: strongly connected components, block
//! triangular form, simple cycles, leading cycles and cores.
//!
//! Vertices are 0-based here; reports convert to 1-based.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;

use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, DEFAULT_MAX_N};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    n: usize,
    succ: Vec<Vec<(usize, Element)>>,
}

impl Digraph {
    pub fn from_matrix(a: &Matrix) -> Self {
        let n = a.n();
        let succ = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !a.get(i, j).is_zero())
                    .map(|j| (j, a.get(i, j).clone()))
                    .collect()
            })
            .collect();
        Digraph { n, succ }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn successors(&self, i: usize) -> &[(usize, Element)] {
        &self.succ[i]
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, &Element)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(i, s)| s.iter().map(move |(j, w)| (i, *j, w)))
    }

    /// Strongly connected components (Tarjan), each sorted ascending.
    pub fn components(&self) -> Vec<Vec<usize>> {
        struct State {
            index: Vec<Option<usize>>,
            low: Vec<usize>,
            on_stack: Vec<bool>,
            stack: Vec<usize>,
            next: usize,
            out: Vec<Vec<usize>>,
        }
        fn visit(g: &Digraph, v: usize, st: &mut State) {
            st.index[v] = Some(st.next);
            st.low[v] = st.next;
            st.next += 1;
            st.stack.push(v);
            st.on_stack[v] = true;
            for &(w, _) in &g.succ[v] {
                match st.index[w] {
                    None => {
                        visit(g, w, st);
                        st.low[v] = st.low[v].min(st.low[w]);
                    }
                    Some(iw) if st.on_stack[w] => st.low[v] = st.low[v].min(iw),
                    Some(_) => {}
                }
            }
            if Some(st.low[v]) == st.index[v] {
                let mut comp = Vec::new();
                while let Some(w) = st.stack.pop() {
                    st.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                st.out.push(comp);
            }
        }
        let mut st = State {
            index: vec![None; self.n],
            low: vec![0; self.n],
            on_stack: vec![false; self.n],
            stack: Vec::new(),
            next: 0,
            out: Vec::new(),
        };
        for v in 0..self.n {
            if st.index[v].is_none() {
                visit(self, v, &mut st);
            }
        }
        st.out
    }

    /// All simple cycles, each rotated to start at its least vertex.
    pub fn simple_cycles(&self) -> Vec<Cycle> {
        fn go(g: &Digraph, start: usize, path: &mut Vec<usize>, w: &Element, on: &mut [bool], out: &mut Vec<Cycle>) {
            let v = *path.last().expect("non-empty path");
            for (u, e) in &g.succ[v] {
                let u = *u;
                if u == start {
                    out.push(Cycle { vertices: path.clone(), weight: w.mul(e) });
                } else if u > start && !on[u] {
                    on[u] = true;
                    path.push(u);
                    go(g, start, path, &w.mul(e), on, out);
                    path.pop();
                    on[u] = false;
                }
            }
        }
        let mut out = Vec::new();
        let mut on = vec![false; self.n];
        for s in 0..self.n {
            let mut path = vec![s];
            on[s] = true;
            go(self, s, &mut path, &Element::one(), &mut on, &mut out);
            on[s] = false;
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cycle {
    /// Visiting order, starting at the least vertex.
    pub vertices: Vec<usize>,
    pub weight: Element,
}

impl Cycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn average(&self) -> BigRational {
        let w = self.weight.value().expect("cycle weights are non-zero");
        w / BigRational::from_integer(self.len().into())
    }

    pub fn is_tangible(&self) -> bool {
        self.weight.is_tangible()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

pub fn simple_cycles(a: &Matrix) -> Result<Vec<Cycle>> {
    simple_cycles_capped(a, DEFAULT_MAX_N)
}

pub fn simple_cycles_capped(a: &Matrix, max_n: usize) -> Result<Vec<Cycle>> {
    if a.n() > max_n {
        return Err(Error::SizeCap { n: a.n(), max: max_n });
    }
    Ok(Digraph::from_matrix(a).simple_cycles())
}

/// Upper block triangular arrangement: blocks are strongly connected
/// components listed so that every edge between blocks goes from an earlier
/// block to a later one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockForm {
    /// `perm[k]` is the original index placed at position `k`.
    pub perm: Vec<usize>,
    /// Original indices of each block, ascending within a block.
    pub blocks: Vec<Vec<usize>>,
}

impl BlockForm {
    pub fn eta(&self) -> usize {
        self.blocks.len()
    }

    /// Position range of block `i` in the permuted matrix.
    pub fn range(&self, i: usize) -> std::ops::Range<usize> {
        let start: usize = self.blocks[..i].iter().map(Vec::len).sum();
        start..start + self.blocks[i].len()
    }

    pub fn block_of(&self, v: usize) -> usize {
        self.blocks.iter().position(|b| b.contains(&v)).expect("vertex in some block")
    }

    pub fn diagonal_block(&self, a: &Matrix, i: usize) -> Matrix {
        a.principal(&self.blocks[i])
    }

    /// Entries of `a` in rows of block `i` and columns of block `j`.
    pub fn off_block(&self, a: &Matrix, i: usize, j: usize) -> Vec<Vec<Element>> {
        self.blocks[i]
            .iter()
            .map(|&r| self.blocks[j].iter().map(|&c| a.get(r, c).clone()).collect())
            .collect()
    }

    pub fn permuted(&self, a: &Matrix) -> Matrix {
        a.permuted(&self.perm)
    }
}

/// Components in topological order of the component digraph; among ready
/// components the one with the least vertex goes first.
pub fn scc_block_form(a: &Matrix) -> BlockForm {
    let g = Digraph::from_matrix(a);
    let mut comps = g.components();
    comps.sort_by_key(|c| c[0]);
    let k = comps.len();
    let mut comp_of = vec![0; a.n()];
    for (ci, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = ci;
        }
    }
    let mut indeg = vec![0usize; k];
    let mut succ = vec![std::collections::BTreeSet::new(); k];
    for (i, j, _) in g.edges() {
        let (ci, cj) = (comp_of[i], comp_of[j]);
        if ci != cj && succ[ci].insert(cj) {
            indeg[cj] += 1;
        }
    }
    let mut ready: std::collections::BTreeSet<usize> = (0..k).filter(|&c| indeg[c] == 0).collect();
    let mut blocks = Vec::with_capacity(k);
    while let Some(c) = ready.pop_first() {
        for &d in &succ[c] {
            indeg[d] -= 1;
            if indeg[d] == 0 {
                ready.insert(d);
            }
        }
        blocks.push(comps[c].clone());
    }
    let perm = blocks.iter().flatten().copied().collect();
    BlockForm { perm, blocks }
}

pub fn is_irreducible(a: &Matrix) -> bool {
    scc_block_form(a).eta() == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingData {
    pub mu: usize,
    pub alpha_mu: Element,
    pub omega: BigRational,
    pub mu_tilde: usize,
    /// `L(A)`, ascending.
    pub lengths: Vec<usize>,
    pub leading_cycles: Vec<Cycle>,
    /// Number of leading cycles per length.
    pub tau: BTreeMap<usize, usize>,
    /// Number of leading cycles through each vertex.
    pub depth: Vec<usize>,
}

pub fn leading_data(a: &Matrix) -> Result<LeadingData> {
    leading_data_capped(a, DEFAULT_MAX_N)
}

pub fn leading_data_capped(a: &Matrix, max_n: usize) -> Result<LeadingData> {
    let alphas = a.char_coefficients(max_n)?;
    let n = a.n();
    let averages: Vec<(usize, BigRational)> = (1..=n)
        .filter_map(|k| alphas[k].value().map(|v| (k, v / BigRational::from_integer(k.into()))))
        .collect();
    let omega = averages.iter().map(|(_, r)| r).max().cloned().ok_or(Error::NoCycles)?;
    let lengths: Vec<usize> = averages.iter().filter(|(_, r)| *r == omega).map(|(k, _)| *k).collect();
    let mu = lengths[0];
    let leading_cycles: Vec<Cycle> = simple_cycles_capped(a, max_n)?
        .into_iter()
        .filter(|c| c.average() == omega)
        .collect();
    let mu_tilde = leading_cycles.iter().fold(1, |acc, c| acc.lcm(&c.len()));
    let mut tau = BTreeMap::new();
    let mut depth = vec![0; n];
    for c in &leading_cycles {
        *tau.entry(c.len()).or_insert(0) += 1;
        for &v in &c.vertices {
            depth[v] += 1;
        }
    }
    Ok(LeadingData { mu, alpha_mu: alphas[mu].clone(), omega, mu_tilde, lengths, leading_cycles, tau, depth })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreData {
    pub core: Vec<Cycle>,
    pub tcore: Vec<Cycle>,
    pub anti_tcore: Vec<Cycle>,
    pub core_vertices: Vec<usize>,
    pub tcore_vertices: Vec<usize>,
    pub anti_tcore_vertices: Vec<usize>,
}

fn vertex_set(cycles: &[Cycle]) -> Vec<usize> {
    let mut v: Vec<usize> = cycles.iter().flat_map(|c| c.vertices.iter().copied()).collect();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn cores_from(data: &LeadingData) -> CoreData {
    let (core, rest): (Vec<Cycle>, Vec<Cycle>) = data
        .leading_cycles
        .iter()
        .cloned()
        .partition(|c| c.vertices.iter().all(|&v| data.depth[v] == 1));
    let tcore: Vec<Cycle> = core.iter().filter(|c| c.is_tangible()).cloned().collect();
    let mut anti_tcore: Vec<Cycle> = rest;
    anti_tcore.extend(core.iter().filter(|c| !c.is_tangible()).cloned());
    anti_tcore.sort_by(|a, b| a.vertices.cmp(&b.vertices));
    CoreData {
        core_vertices: vertex_set(&core),
        tcore_vertices: vertex_set(&tcore),
        anti_tcore_vertices: vertex_set(&anti_tcore),
        core,
        tcore,
        anti_tcore,
    }
}

pub fn cores(a: &Matrix) -> Result<CoreData> {
    Ok(cores_from(&leading_data(a)?))
}

pub fn cores_capped(a: &Matrix, max_n: usize) -> Result<CoreData> {
    Ok(cores_from(&leading_data_capped(a, max_n)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreKind {
    Core,
    Tcore,
    AntiTcore,
}

impl CoreKind {
    fn name(self) -> &'static str {
        match self {
            CoreKind::Core => "core",
            CoreKind::Tcore => "tcore",
            CoreKind::AntiTcore => "anti-tcore",
        }
    }
}

/// Induced submatrix on the selected vertex set, with its index list.
pub fn core_submatrix(a: &Matrix, which: CoreKind) -> Result<(Matrix, Vec<usize>)> {
    let c = cores(a)?;
    let idx = match which {
        CoreKind::Core => c.core_vertices,
        CoreKind::Tcore => c.tcore_vertices,
        CoreKind::AntiTcore => c.anti_tcore_vertices,
    };
    if idx.is_empty() {
        return Err(Error::EmptyCore(which.name()));
    }
    Ok((a.principal(&idx), idx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::m;
    use crate::testutil::arb_matrix;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn r(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    fn cycle_set(cs: &[Cycle]) -> Vec<(Vec<usize>, String)> {
        let mut v: Vec<_> = cs.iter().map(|c| (c.vertices.clone(), c.weight.to_string())).collect();
        v.sort();
        v
    }

    pub(crate) fn core3() -> Matrix {
        m(&[&["0", "2", "4"], &["4", "0", "-1"], &["1", "0", "3v"]])
    }

    pub(crate) fn core5() -> Matrix {
        m(&[
            &["-inf", "-inf", "0", "0", "-inf"],
            &["-inf", "-inf", "-inf", "-inf", "0"],
            &["-inf", "0", "-inf", "-inf", "-inf"],
            &["-inf", "0", "-inf", "-inf", "-inf"],
            &["0", "-inf", "-inf", "-inf", "-inf"],
        ])
    }

    #[test]
    fn edges() {
        assert_eq!(Digraph::from_matrix(&m(&[&["0", "0"], &["1", "2"]])).edge_count(), 4);
        assert_eq!(Digraph::from_matrix(&m(&[&["-inf", "0"], &["0", "0"]])).edge_count(), 3);
        assert_eq!(Digraph::from_matrix(&Matrix::zero(3)).edge_count(), 0);
    }

    #[test]
    fn block_forms() {
        assert_eq!(scc_block_form(&m(&[&["0", "0"], &["1", "2"]])).eta(), 1);
        let bf = scc_block_form(&m(&[&["1", "0"], &["-inf", "2"]]));
        assert_eq!(bf.blocks, vec![vec![0], vec![1]]);
        let bf = scc_block_form(&m(&[&["1", "-inf"], &["0", "2"]]));
        assert_eq!(bf.blocks, vec![vec![1], vec![0]]);
        assert_eq!(bf.permuted(&m(&[&["1", "-inf"], &["0", "2"]])), m(&[&["2", "0"], &["-inf", "1"]]));
        assert_eq!(scc_block_form(&core5()).eta(), 1);
        assert_eq!(scc_block_form(&Matrix::zero(3)).blocks, vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cycles() {
        let g = simple_cycles(&m(&[&["-inf", "0"], &["0", "0"]])).unwrap();
        assert_eq!(cycle_set(&g), vec![(vec![0, 1], "0".into()), (vec![1], "0".into())]);
        let b = simple_cycles(&m(&[&["0", "0"], &["1", "2"]])).unwrap();
        assert_eq!(cycle_set(&b), vec![(vec![0], "0".into()), (vec![0, 1], "1".into()), (vec![1], "2".into())]);
        let t = simple_cycles(&m(&[&["1", "5", "3"], &["-inf", "-inf", "2"], &["-inf", "-inf", "-inf"]])).unwrap();
        assert_eq!(cycle_set(&t), vec![(vec![0], "1".into())]);
        assert!(simple_cycles(&Matrix::identity(9)).is_err());
    }

    #[test]
    fn leading_statistics() {
        let d = leading_data(&core3()).unwrap();
        assert_eq!((d.mu, d.alpha_mu.to_string(), d.omega.clone(), d.mu_tilde), (1, "3v".into(), r(3), 2));
        let d = leading_data(&m(&[&["0", "0"], &["1", "2"]])).unwrap();
        assert_eq!((d.mu, d.omega.clone()), (1, r(2)));
        assert_eq!(cycle_set(&d.leading_cycles), vec![(vec![1], "2".into())]);
        let d = leading_data(&m(&[&["-inf", "0"], &["0", "0"]])).unwrap();
        assert_eq!((d.mu, d.omega.clone(), d.mu_tilde), (1, r(0), 2));
        assert_eq!(d.lengths, vec![1, 2]);
        assert_eq!(d.depth, vec![1, 2]);
        assert_eq!(leading_data(&Matrix::zero(2)), Err(Error::NoCycles));
        let q = leading_data(&Matrix::identity(3)).unwrap();
        assert_eq!(q.tau[&1], 3);
        assert!(q.omega.is_zero());
    }

    #[test]
    fn core_sets() {
        let a = core5();
        assert!(cores(&a).unwrap().core_vertices.is_empty());
        let c2 = cores(&a.pow(2)).unwrap();
        assert_eq!(c2.core_vertices, vec![0, 1]);
        assert!(c2.tcore_vertices.is_empty());
        let b = cores(&m(&[&["0", "0"], &["1", "2"]])).unwrap();
        assert_eq!(b.tcore_vertices, vec![1]);
        let g = cores(&m(&[&["-inf", "0"], &["0", "0"]])).unwrap();
        assert!(g.tcore.is_empty());
        assert_eq!(g.anti_tcore.len(), 2);
        // the ghost loop at vertex 3 is leading and core-admissible but not tangible
        let c3 = cores(&core3()).unwrap();
        assert_eq!(c3.core_vertices, vec![0, 1, 2]);
        assert_eq!(c3.tcore_vertices, vec![0, 1]);
        assert_eq!(c3.anti_tcore_vertices, vec![2]);
    }

    #[test]
    fn core_submatrices() {
        let (s, idx) = core_submatrix(&m(&[&["0", "0"], &["1", "2"]]), CoreKind::Tcore).unwrap();
        assert_eq!((s, idx), (m(&[&["2"]]), vec![1]));
        let (s, _) = core_submatrix(&core3(), CoreKind::Core).unwrap();
        assert_eq!(s, core3());
        assert_eq!(
            core_submatrix(&m(&[&["-inf", "0"], &["0", "0"]]), CoreKind::Tcore),
            Err(Error::EmptyCore("tcore"))
        );
    }

    /// Best weight of a length-`m` walk `i -> j` assembled from a simple path
    /// plus simple cycles each meeting the vertices already used.
    fn walk_value_from_cycles(a: &Matrix, i: usize, j: usize, len: usize) -> Option<BigRational> {
        let n = a.n();
        let cycles = simple_cycles(a).unwrap();
        let mut paths = Vec::new();
        fn dfs(a: &Matrix, v: usize, j: usize, mask: u32, l: usize, w: BigRational, out: &mut Vec<(u32, usize, BigRational)>) {
            if v == j {
                out.push((mask, l, w.clone()));
            }
            for u in 0..a.n() {
                if mask & (1 << u) != 0 {
                    continue;
                }
                if let Some(e) = a.get(v, u).value() {
                    dfs(a, u, j, mask | (1 << u), l + 1, &w + e, out);
                }
            }
        }
        dfs(a, i, j, 1 << i, 0, BigRational::zero(), &mut paths);
        // best[mask][l]
        let mut best: Vec<Vec<Option<BigRational>>> = vec![vec![None; len + 1]; 1 << n];
        for (mask, l, w) in paths {
            if l <= len && best[mask as usize][l].as_ref().is_none_or(|b| *b < w) {
                best[mask as usize][l] = Some(w);
            }
        }
        for l in 0..=len {
            for mask in 0..(1usize << n) {
                let Some(w) = best[mask][l].clone() else { continue };
                for c in &cycles {
                    let cm: usize = c.vertices.iter().map(|v| 1 << v).sum();
                    let nl = l + c.len();
                    if cm & mask == 0 || nl > len {
                        continue;
                    }
                    let nw = &w + c.weight.value().unwrap();
                    let slot = &mut best[mask | cm][nl];
                    if slot.as_ref().is_none_or(|b| *b < nw) {
                        *slot = Some(nw);
                    }
                }
            }
        }
        (0..(1 << n)).filter_map(|mask| best[mask][len].clone()).max()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn leading_cycles_attain_omega(a in arb_matrix(1..6)) {
            if let Ok(d) = leading_data(&a) {
                prop_assert!(!d.leading_cycles.is_empty());
                prop_assert!(d.leading_cycles.iter().any(|c| c.len() == d.mu));
                for c in simple_cycles(&a).unwrap() {
                    prop_assert!(c.average() <= d.omega);
                }
            } else {
                prop_assert!(simple_cycles(&a).unwrap().is_empty());
            }
        }

        #[test]
        fn block_form_is_upper_triangular(a in arb_matrix(1..7)) {
            let bf = scc_block_form(&a);
            let p = bf.permuted(&a);
            for bi in 0..bf.eta() {
                for bj in 0..bi {
                    for r in bf.range(bi) {
                        for c in bf.range(bj) {
                            prop_assert!(p.get(r, c).is_zero());
                        }
                    }
                }
                prop_assert_eq!(bf.diagonal_block(&a, bi).n(), bf.blocks[bi].len());
                if bf.blocks[bi].len() > 1 {
                    prop_assert!(is_irreducible(&bf.diagonal_block(&a, bi)));
                }
            }
        }

        #[test]
        fn power_entries_decompose_into_path_and_cycles(a in arb_matrix(1..5), m in 1usize..7) {
            let p = a.pow(m);
            for i in 0..a.n() {
                for j in 0..a.n() {
                    prop_assert_eq!(p.get(i, j).value().cloned(), walk_value_from_cycles(&a, i, j, m));
                }
            }
        }
    }
}
