//! Ground-truth domination checks.
//!
//! Everything else in the crate leans on this module as its oracle, so the
//! checks here scan vertices exhaustively instead of trusting size shortcuts.

use crate::codeset::CodeSet;
use crate::error::Result;
use crate::torus::TorusPoint;

/// Outcome of a perfect-domination check.
///
/// `perfect` is true iff `witness` is absent; the witness is the
/// lexicographically first vertex whose domination count differs from 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationReport {
    pub perfect: bool,
    pub witness: Option<DominationWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub vertex: TorusPoint,
    pub count: usize,
}

/// Outcome of the axis-line check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineReport {
    pub holds: bool,
    pub witness: Option<LineWitness>,
}

/// A violating axis-parallel line: the `p` points obtained from `base` by
/// letting coordinate `axis` (0-based) run over `Z_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineWitness {
    pub axis: usize,
    pub base: TorusPoint,
    pub count: usize,
}

/// Number of codewords dominating `v`: `|closed_ball(v) ∩ code|`.
pub fn domination_count(code: &CodeSet, v: &TorusPoint) -> Result<usize> {
    let params = code.params();
    let ball = params.closed_ball(v)?;
    let mut count = 0;
    for w in &ball {
        if code.contains(w)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Full perfect-domination check: every vertex dominated exactly once.
///
/// Implemented by accumulating per-vertex counts from the codewords' balls,
/// then scanning for the first count different from 1. When the set is
/// perfect, the cardinality identity `|code| = p^(n−1)` is asserted as a
/// consistency check.
pub fn is_perfect(code: &CodeSet) -> DominationReport {
    let params = code.params();
    let size = params
        .vertex_count_usize()
        .expect("CodeSet construction already bounded p^n");
    let weights = params.weights();
    let mut counts = vec![0u32; size];
    let mut ball = Vec::with_capacity(2 * params.n() + 1);
    for c in code.indices() {
        params.ball_indices_into(c, &weights, &mut ball);
        for &v in &ball {
            counts[v] += 1;
        }
    }
    match counts.iter().position(|&c| c != 1) {
        None => {
            let expected = size / params.p() as usize;
            debug_assert_eq!(code.len(), expected, "perfect code has p^(n-1) members");
            DominationReport {
                perfect: true,
                witness: None,
            }
        }
        Some(idx) => DominationReport {
            perfect: false,
            witness: Some(DominationWitness {
                vertex: params.point_of(idx).expect("index within range"),
                count: counts[idx] as usize,
            }),
        },
    }
}

/// Checks that every axis-parallel line contains exactly one codeword.
///
/// Lines are scanned axis-first, then by base point ascending, so a reported
/// witness is the first violation in that order. The base point is the line's
/// representative with coordinate `axis` set to 0.
pub fn check_line_property(code: &CodeSet) -> LineReport {
    let params = code.params();
    let p = params.p() as u64;
    let size = params
        .vertex_count_usize()
        .expect("CodeSet construction already bounded p^n");
    let weights = params.weights();
    for axis in 0..params.n() {
        let w = weights[axis];
        // Indices split as hi·(w·p) + digit·w + lo; base points of this axis
        // have digit = 0, and (hi, lo) ascending matches index order.
        let block = w * p;
        for hi in 0..size as u64 / block {
            for lo in 0..w {
                let base = hi * block + lo;
                let mut count = 0;
                for t in 0..p {
                    if code.contains_index((base + t * w) as usize) {
                        count += 1;
                    }
                }
                if count != 1 {
                    return LineReport {
                        holds: false,
                        witness: Some(LineWitness {
                            axis,
                            base: params.point_of(base as usize).expect("index within range"),
                            count,
                        }),
                    };
                }
            }
        }
    }
    LineReport {
        holds: true,
        witness: None,
    }
}
