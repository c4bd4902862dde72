//! Semi-idempotence, stable block triangular form, ghostpotence,
//! semisimplicity and core powers.

use num_rational::BigRational;

use crate::digraph::{cores_capped, is_irreducible, leading_data_capped, scc_block_form, BlockForm};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, DEFAULT_MAX_N};

pub const DEFAULT_M_MAX: usize = 64;
pub const DEFAULT_K_MAX: usize = 16;

/// Tangible `β` with `b = β ⊗ a` when `a` is non-zero, ignoring tags.
fn ratio(b: &Element, a: &Element) -> Option<Element> {
    match (b.value(), a.value()) {
        (Some(x), Some(y)) => Some(Element::Tangible(x - y)),
        _ => None,
    }
}

/// `β` with `A² = β A`, if one exists. The zero matrix gets `𝟙`.
pub fn semi_idempotent_coeff(a: &Matrix) -> Option<Element> {
    let sq = a.mul(a).expect("square");
    let beta = match a.entries().iter().position(|e| !e.is_zero()) {
        None => return Some(Element::one()),
        Some(p) => ratio(&sq.entries()[p], &a.entries()[p])?,
    };
    (a.scale(&beta) == sq).then_some(beta)
}

pub fn is_semi_idempotent(a: &Matrix) -> bool {
    semi_idempotent_coeff(a).is_some()
}

/// Nonsingular idempotent with `𝟙` diagonal and off-diagonal entries in the
/// ghost ideal.
pub fn is_quasi_identity(a: &Matrix) -> bool {
    let n = a.n();
    (0..n).all(|i| *a.get(i, i) == Element::one())
        && (0..n).all(|i| (0..n).all(|j| i == j || a.get(i, j).in_ghost_ideal()))
        && a.mul(a).expect("square") == *a
        && a.permanent_capped(usize::MAX).map(|d| d.is_tangible()).unwrap_or(false)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableForm {
    pub block_form: BlockForm,
    /// Semi-idempotent coefficient of each diagonal block.
    pub betas: Vec<Element>,
    /// `off[i][j]` for `i < j`; `None` when the block is zero.
    pub off: Vec<Vec<Option<Element>>>,
    pub tangibly_stable: bool,
}

/// Checks the stable block triangular shape: semi-idempotent diagonal
/// blocks, and every off-diagonal block of `A²` a multiple `β_{i,j} B_{i,j}`
/// with `β_{i,j}` ν-equal to one of `β_i, ..., β_j`.
pub fn is_stable_block_form(a: &Matrix) -> Option<StableForm> {
    let bf = scc_block_form(a);
    let eta = bf.eta();
    let sq = a.mul(a).expect("square");
    let betas: Vec<Element> = (0..eta)
        .map(|i| semi_idempotent_coeff(&bf.diagonal_block(a, i)))
        .collect::<Option<_>>()?;
    let mut off = vec![vec![None; eta]; eta];
    let mut tangibly_stable = true;
    for i in 0..eta {
        for j in i + 1..eta {
            let b = bf.off_block(a, i, j);
            let c = bf.off_block(&sq, i, j);
            let flat_b: Vec<&Element> = b.iter().flatten().collect();
            let flat_c: Vec<&Element> = c.iter().flatten().collect();
            let Some(p) = flat_b.iter().position(|e| !e.is_zero()) else {
                if flat_c.iter().all(|e| e.is_zero()) {
                    continue;
                }
                return None;
            };
            let t = ratio(flat_c[p], flat_b[p])?;
            let beta = [t.clone(), t.nu()]
                .into_iter()
                .find(|beta| flat_b.iter().zip(&flat_c).all(|(x, y)| beta.mul(x) == **y))?;
            if !betas[i..=j].iter().any(|bk| bk.nu_eq(&beta)) {
                return None;
            }
            tangibly_stable &= beta.is_tangible();
            off[i][j] = Some(beta);
        }
    }
    Some(StableForm { block_form: bf, betas, off, tangibly_stable })
}

/// Least `m ≤ m_max` with `A^m` in tangibly stable block triangular form.
pub fn stability_index(a: &Matrix, m_max: usize) -> Result<(usize, StableForm)> {
    let mut p = a.clone();
    for m in 1..=m_max {
        if m > 1 {
            p = p.mul(a)?;
        }
        if let Some(sf) = is_stable_block_form(&p) {
            if sf.tangibly_stable {
                return Ok((m, sf));
            }
        }
    }
    Err(Error::BoundExhausted { what: "stability index", bound: m_max })
}

/// Least `m ≤ cap` with `A^m` in the ghost ideal.
pub fn ghost_index(a: &Matrix, cap: usize) -> Option<usize> {
    let mut p = a.clone();
    for m in 1..=cap {
        if m > 1 {
            p = p.mul(a).expect("square");
        }
        if p.is_ghost() {
            return Some(m);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockVerdict {
    /// Original indices of the strongly connected component.
    pub vertices: Vec<usize>,
    pub has_cycles: bool,
    pub tcore_empty: bool,
    pub ghost_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhostVerdict {
    pub ghostpotent: bool,
    pub ghost_index: Option<usize>,
    pub blocks: Vec<BlockVerdict>,
    /// Number of blocks times the largest block ghost index.
    pub bound: Option<usize>,
    pub bound_holds: Option<bool>,
    pub iteration_cap: usize,
}

pub fn ghostpotence(a: &Matrix) -> Result<GhostVerdict> {
    ghostpotence_with(a, DEFAULT_MAX_N, DEFAULT_M_MAX)
}

/// Criterion: every strongly connected component has an empty tangible core.
/// The ghost index is found by iterating powers up to `max(4n², user_cap)`.
pub fn ghostpotence_with(a: &Matrix, max_n: usize, user_cap: usize) -> Result<GhostVerdict> {
    let n = a.n();
    if n > max_n {
        return Err(Error::SizeCap { n, max: max_n });
    }
    let cap = (4 * n * n).max(user_cap);
    let bf = scc_block_form(a);
    let mut blocks = Vec::with_capacity(bf.eta());
    for i in 0..bf.eta() {
        let b = bf.diagonal_block(a, i);
        let (has_cycles, tcore_empty) = match cores_capped(&b, max_n) {
            Ok(c) => (true, c.tcore.is_empty()),
            Err(Error::NoCycles) => (false, true),
            Err(e) => return Err(e),
        };
        let ghost_index = if tcore_empty { ghost_index(&b, cap) } else { None };
        blocks.push(BlockVerdict { vertices: bf.blocks[i].clone(), has_cycles, tcore_empty, ghost_index });
    }
    let ghostpotent = blocks.iter().all(|b| b.tcore_empty);
    let (ghost_index, bound, bound_holds) = if ghostpotent {
        let gi = ghost_index(a, cap);
        let bound = blocks
            .iter()
            .map(|b| b.ghost_index)
            .collect::<Option<Vec<_>>>()
            .map(|v| bf.eta() * v.into_iter().max().unwrap_or(1));
        let holds = match (gi, bound) {
            (Some(g), Some(b)) => Some(g <= b),
            _ => None,
        };
        (gi, bound, holds)
    } else {
        (None, None, None)
    };
    Ok(GhostVerdict { ghostpotent, ghost_index, blocks, bound, bound_holds, iteration_cap: cap })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleWitness {
    pub k: usize,
    /// Diagonal of the tangible diagonal matrix `D` with `S^{2k} = D S^k`.
    pub d: Vec<Element>,
}

/// Smallest `k ≤ k_max` with `S^{2k} = D S^k` for a tangible diagonal `D`.
pub fn semisimple_witness(s: &Matrix, k_max: usize) -> Option<SemisimpleWitness> {
    let n = s.n();
    let mut sk = s.clone();
    for k in 1..=k_max {
        if k > 1 {
            sk = sk.mul(s).expect("square");
        }
        let s2k = sk.mul(&sk).expect("square");
        let d: Option<Vec<Element>> = (0..n)
            .map(|i| match sk.row(i).iter().position(|e| !e.is_zero()) {
                None => Some(Element::one()),
                Some(j) => ratio(s2k.get(i, j), sk.get(i, j)),
            })
            .collect();
        if let Some(d) = d {
            if Matrix::diagonal(&d).mul(&sk).expect("square") == s2k {
                return Some(SemisimpleWitness { k, d });
            }
        }
    }
    None
}

/// Default power cap for core-power searches:
/// `(C(n+1,2) − μ)(μ − 1) + 2(n − 1) + 1`.
pub fn core_power_bound(n: usize, mu: usize) -> usize {
    (n * (n + 1) / 2 - mu) * (mu - 1) + 2 * (n - 1) + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibleCheck {
    /// Whether `A^{mμ̃+1}` is ν-equal to `ω^{mμ̃} A` entrywise.
    pub nu_relation: bool,
    /// `A^{kmμ̃+1} = ω^{(k−1)mμ̃} A^{mμ̃+1}` for `k = 2, 3`.
    pub periodic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorepowerReport {
    pub m: usize,
    pub mu_tilde: usize,
    pub omega: BigRational,
    /// `ω^{mμ̃}`.
    pub beta: Element,
    pub core_vertices: Vec<usize>,
    pub tcore_vertices: Vec<usize>,
    /// `(A^{mμ̃})_core` semi-idempotent with coefficient `β`; `None` for an
    /// empty core.
    pub core_semi_idempotent: Option<bool>,
    /// `β^{-1} (A^{mμ̃})_tcore` a quasi-identity; `None` for an empty tcore.
    pub tcore_quasi_identity: Option<bool>,
    pub irreducible: Option<IrreducibleCheck>,
}

fn corepower_at(a: &Matrix, m: usize, mu_tilde: usize, omega: &BigRational, core: &[usize], tcore: &[usize], irreducible: bool) -> CorepowerReport {
    let e = m * mu_tilde;
    let beta = Element::Tangible(omega * BigRational::from_integer(e.into()));
    let p = a.pow(e);
    let core_semi_idempotent = (!core.is_empty()).then(|| {
        let c = p.principal(core);
        c.mul(&c).expect("square") == c.scale(&beta)
    });
    let inv = beta.inv().expect("tangible");
    let tcore_quasi_identity = (!tcore.is_empty()).then(|| is_quasi_identity(&p.principal(tcore).scale(&inv)));
    let irreducible = irreducible.then(|| {
        let next = p.mul(a).expect("square");
        let nu_relation = next.nu_eq(&a.scale(&beta));
        let periodic = (2..=3u64).all(|k| {
            let lhs = a.pow(k as usize * e + 1);
            lhs == next.scale(&beta.pow(k - 1))
        });
        IrreducibleCheck { nu_relation, periodic }
    });
    CorepowerReport {
        m,
        mu_tilde,
        omega: omega.clone(),
        beta,
        core_vertices: core.to_vec(),
        tcore_vertices: tcore.to_vec(),
        core_semi_idempotent,
        tcore_quasi_identity,
        irreducible,
    }
}

/// Least `m ≤ m_max` for which every applicable exact check on
/// `A^{mμ̃}` passes: core semi-idempotence, tcore quasi-identity after
/// scaling, and (for irreducible `A`) periodicity. The ν-relation
/// `A^{mμ̃+1} ≅ν ω^{mμ̃}A` is reported, not required.
pub fn verify_corepower(a: &Matrix, m_max: usize) -> Result<CorepowerReport> {
    let data = leading_data_capped(a, DEFAULT_MAX_N)?;
    let cores = crate::digraph::cores_from(&data);
    let irreducible = is_irreducible(a);
    if cores.core_vertices.is_empty() && !irreducible {
        return Err(Error::EmptyCore("core"));
    }
    for m in 1..=m_max {
        let r = corepower_at(a, m, data.mu_tilde, &data.omega, &cores.core_vertices, &cores.tcore_vertices, irreducible);
        let ok = r.core_semi_idempotent != Some(false)
            && r.tcore_quasi_identity != Some(false)
            && r.irreducible.as_ref().is_none_or(|c| c.periodic);
        if ok {
            return Ok(r);
        }
    }
    Err(Error::BoundExhausted { what: "core power", bound: m_max })
}
