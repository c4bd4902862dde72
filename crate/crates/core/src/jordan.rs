//! Jordan decomposition `A = S ⊕ N` with `S` semisimple and `N`
//! ghostpotent, found by trying candidate splittings and verifying each.

use std::fmt;

use crate::digraph::{cores_capped, scc_block_form};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, DEFAULT_MAX_N};
use crate::stability::{ghostpotence_with, semisimple_witness, GhostVerdict, SemisimpleWitness, DEFAULT_M_MAX};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanBounds {
    pub max_n: usize,
    /// Largest `k` tried for the semisimplicity witness.
    pub k_max: usize,
    /// User cap on the ghost-index iteration.
    pub ghost_cap: usize,
}

impl Default for JordanBounds {
    fn default() -> Self {
        JordanBounds { max_n: DEFAULT_MAX_N, k_max: DEFAULT_M_MAX, ghost_cap: DEFAULT_M_MAX }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// `S = A`, `N = 0`.
    Whole,
    /// `S` the diagonal blocks, `N` the off-diagonal blocks.
    Blockwise,
    /// Per diagonal block: keep it whole if semisimple, otherwise move the
    /// entries induced by successive tangible cores into `S`.
    TcorePeeling,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Whole, Strategy::Blockwise, Strategy::TcorePeeling];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::Whole => "whole",
            Strategy::Blockwise => "blockwise",
            Strategy::TcorePeeling => "tcore-peeling",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanPair {
    pub s: Matrix,
    pub n: Matrix,
    pub strategy: Strategy,
    pub witness: SemisimpleWitness,
    pub verdict: GhostVerdict,
    pub det: Element,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub strategy: Strategy,
    /// Failed checks; empty when the candidate was accepted.
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JordanOutcome {
    pub pair: Option<JordanPair>,
    pub attempts: Vec<Attempt>,
}

/// Each non-zero entry of `A` sits in exactly one of `S`, `N`.
pub fn is_entry_partition(a: &Matrix, s: &Matrix, n: &Matrix) -> bool {
    a.n() == s.n()
        && a.n() == n.n()
        && a.entries().iter().zip(s.entries()).zip(n.entries()).all(|((x, y), z)| {
            (y == x && z.is_zero()) || (z == x && y.is_zero())
        })
}

/// Runs every check, returning the accepted pair or the list of failures.
pub fn verify(a: &Matrix, s: &Matrix, n: &Matrix, strategy: Strategy, bounds: &JordanBounds) -> Result<std::result::Result<JordanPair, Vec<String>>> {
    let mut failures = Vec::new();
    if !is_entry_partition(a, s, n) {
        failures.push("entry partition: S and N do not split the entries of A".to_string());
    }
    let witness = semisimple_witness(s, bounds.k_max);
    if witness.is_none() {
        failures.push(format!("semisimple: no k <= {} with S^(2k) = D S^k", bounds.k_max));
    }
    let verdict = ghostpotence_with(n, bounds.max_n, bounds.ghost_cap)?;
    if !verdict.ghostpotent {
        failures.push("ghostpotent: some component of N has a non-empty tangible core".to_string());
    } else if verdict.ghost_index.is_none() {
        failures.push(format!("ghostpotent: no ghost power of N within {}", verdict.iteration_cap));
    }
    let det_a = a.permanent_capped(bounds.max_n)?;
    let det_s = s.permanent_capped(bounds.max_n)?;
    if det_a != det_s {
        failures.push(format!("determinant: |A| = {det_a} but |S| = {det_s}"));
    }
    Ok(match witness {
        Some(witness) if failures.is_empty() => Ok(JordanPair { s: s.clone(), n: n.clone(), strategy, witness, verdict, det: det_a }),
        _ => Err(failures),
    })
}

fn split_by(a: &Matrix, keep: impl Fn(usize, usize) -> bool) -> (Matrix, Matrix) {
    let s = Matrix::from_fn(a.n(), |i, j| if keep(i, j) { a.get(i, j).clone() } else { Element::Zero });
    let n = Matrix::from_fn(a.n(), |i, j| if keep(i, j) { Element::Zero } else { a.get(i, j).clone() });
    (s, n)
}

/// `S` = diagonal blocks of the block triangular form, `N` = the rest.
pub fn blockwise_candidate(a: &Matrix) -> (Matrix, Matrix) {
    let bf = scc_block_form(a);
    let mut block = vec![0; a.n()];
    for (b, vs) in bf.blocks.iter().enumerate() {
        for &v in vs {
            block[v] = b;
        }
    }
    split_by(a, |i, j| block[i] == block[j])
}

/// Positions of `b` moved into the semisimple part by repeatedly taking the
/// tangible core of each strongly connected component of the residual.
fn peel(b: &Matrix, max_n: usize) -> Result<Vec<(usize, usize)>> {
    let mut residual = b.clone();
    let mut moved = Vec::new();
    loop {
        let bf = scc_block_form(&residual);
        let mut changed = false;
        for vs in &bf.blocks {
            let sub = residual.principal(vs);
            let tcore = match cores_capped(&sub, max_n) {
                Ok(c) => c.tcore_vertices,
                Err(Error::NoCycles) => continue,
                Err(e) => return Err(e),
            };
            for &u in &tcore {
                for &v in &tcore {
                    let (gu, gv) = (vs[u], vs[v]);
                    if !residual.get(gu, gv).is_zero() {
                        residual.set(gu, gv, Element::Zero);
                        moved.push((gu, gv));
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(moved);
        }
    }
}

pub fn peeling_candidate(a: &Matrix, bounds: &JordanBounds) -> Result<(Matrix, Matrix)> {
    let bf = scc_block_form(a);
    let mut keep = vec![false; a.n() * a.n()];
    for vs in &bf.blocks {
        let b = a.principal(vs);
        if semisimple_witness(&b, bounds.k_max).is_some() {
            for &u in vs {
                for &v in vs {
                    keep[u * a.n() + v] = true;
                }
            }
        } else {
            for (u, v) in peel(&b, bounds.max_n)? {
                keep[vs[u] * a.n() + vs[v]] = true;
            }
        }
    }
    Ok(split_by(a, |i, j| keep[i * a.n() + j]))
}

pub fn candidate(a: &Matrix, strategy: Strategy, bounds: &JordanBounds) -> Result<(Matrix, Matrix)> {
    Ok(match strategy {
        Strategy::Whole => (a.clone(), Matrix::zero(a.n())),
        Strategy::Blockwise => blockwise_candidate(a),
        Strategy::TcorePeeling => peeling_candidate(a, bounds)?,
    })
}

/// Tries the strategies in order and returns the first verified pair,
/// together with the diagnostics of every attempt made.
pub fn jordan_decompose(a: &Matrix, bounds: &JordanBounds) -> Result<JordanOutcome> {
    if a.n() > bounds.max_n {
        return Err(Error::SizeCap { n: a.n(), max: bounds.max_n });
    }
    let mut attempts = Vec::new();
    for strategy in Strategy::ALL {
        let (s, n) = candidate(a, strategy, bounds)?;
        match verify(a, &s, &n, strategy, bounds)? {
            Ok(pair) => {
                attempts.push(Attempt { strategy, failures: Vec::new() });
                return Ok(JordanOutcome { pair: Some(pair), attempts });
            }
            Err(failures) => attempts.push(Attempt { strategy, failures }),
        }
    }
    Ok(JordanOutcome { pair: None, attempts })
}
