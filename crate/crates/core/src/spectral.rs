//! Eigenvalues of the closed-neighborhood operator, the kernel frequency
//! set, exact rank, and Fourier support of codes.
//!
//! Characters of `Z_p^n` diagonalize the adjacency operator, so the
//! eigenvalue of `A + I` at frequency `y` is `1 + Σ ω^(y_i) + Σ ω^(−y_i)`,
//! held exactly as a power-basis tally. A frequency is in the kernel iff
//! those `2n+1` powers hit every residue exactly once, which for prime `p`
//! happens exactly when the canonical absolute values of the entries are a
//! permutation of `{1, …, n}`. Both tests are implemented and every call
//! cross-checks one against the other.

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::torus::{TorusParams, TorusPoint};
use crate::CyclotomicElement;
use crate::codeset::CodeSet;
use num_bigint::BigInt;

/// A character index: an element of `Z_p^n` in its role as a frequency.
pub type FrequencyVector = TorusPoint;

/// The frequencies whose `A + I` eigenvalue vanishes, sorted by vertex
/// index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelSet {
    params: TorusParams,
    members: Vec<FrequencyVector>,
}

impl KernelSet {
    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    pub fn members(&self) -> &[FrequencyVector] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, y: &FrequencyVector) -> bool {
        self.members.iter().any(|m| m == y)
    }
}

/// The eigenvalue of `A + I` at frequency `y` as an exact tally:
/// one unit at `ω^0` and one at each of `ω^(±y_i)`.
pub fn eigenvalue_factor(y: &FrequencyVector, params: &TorusParams) -> Result<CyclotomicElement> {
    if y.coords().len() != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: y.coords().len(),
        });
    }
    let mut e = CyclotomicElement::zero(params.p())?;
    e.add_root_power(0);
    for &c in y.coords() {
        e.add_root_power(c as i64);
        e.add_root_power(-(c as i64));
    }
    Ok(e)
}

/// Combinatorial kernel test: the canonical absolute values of the entries
/// are a permutation of `{1, …, n}`, i.e. `{±y_i}` covers every nonzero
/// residue exactly once.
pub fn covers_nonzero_residues(y: &FrequencyVector, params: &TorusParams) -> Result<bool> {
    if y.coords().len() != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: y.coords().len(),
        });
    }
    let n = params.n();
    let mut seen = vec![false; n + 1];
    for &c in y.coords() {
        let v = params.abs(c) as usize;
        if v == 0 || v > n || seen[v] {
            return Ok(false);
        }
        seen[v] = true;
    }
    Ok(true)
}

/// Whether the eigenvalue of `A + I` at `y` is zero.
///
/// Computes the cyclotomic zero test and the residue-covering test and
/// asserts they agree; the two are independent routes to the same set.
pub fn is_kernel(y: &FrequencyVector, params: &TorusParams) -> Result<bool> {
    params.require_prime()?;
    let via_tally = eigenvalue_factor(y, params)?.is_zero_assuming_prime_order();
    let via_cover = covers_nonzero_residues(y, params)?;
    assert_eq!(
        via_tally, via_cover,
        "kernel routes disagree at y = {:?}",
        y.coords()
    );
    Ok(via_tally)
}

/// Builds the kernel set constructively from signed permutations of
/// `{1, …, n}`, verifying each member, then sorts by vertex index.
pub fn enumerate_kernel(params: &TorusParams) -> Result<KernelSet> {
    use itertools::Itertools;
    params.require_prime()?;
    let n = params.n();
    let p = params.p();
    let mut members = Vec::new();
    for perm in (1..=n as u32).permutations(n) {
        for pattern in 0u32..(1 << n) {
            let coords: Vec<u32> = perm
                .iter()
                .enumerate()
                .map(|(i, &v)| if pattern >> i & 1 == 0 { v } else { p - v })
                .collect();
            let y = TorusPoint::new(coords, params)?;
            if !is_kernel(&y, params)? {
                return Err(Error::invalid(
                    "signed permutation failed the kernel test; construction is wrong",
                ));
            }
            members.push(y);
        }
    }
    members.sort_by_key(|y| params.index_of(y).expect("member has valid arity"));
    let expected: usize = (1..=n).product::<usize>() << n;
    assert_eq!(members.len(), expected, "kernel size must be n!·2^n");
    Ok(KernelSet {
        params: *params,
        members,
    })
}

/// Default cap on the matrix dimension `p^n` accepted by [`rank_a_plus_i`].
pub const DEFAULT_RANK_LIMIT: usize = 500;

/// Exact rank of `A + I` over the rationals by fraction-free integer
/// elimination on the dense 0/1 matrix. `limit` overrides the default
/// dimension guard.
pub fn rank_a_plus_i(params: &TorusParams, limit: Option<usize>) -> Result<usize> {
    let size = params.vertex_count_usize()?;
    let cap = limit.unwrap_or(DEFAULT_RANK_LIMIT);
    if size > cap {
        return Err(Error::resource(format!(
            "A + I is {size}×{size}; the dense-elimination guard is {cap}"
        )));
    }
    let mut m = Matrix::<BigInt>::zeros(size, size);
    let weights = params.weights();
    let mut ball = Vec::new();
    for v in 0..size {
        params.ball_indices_into(v, &weights, &mut ball);
        for &w in &ball {
            m.set(v, w, BigInt::from(1));
        }
    }
    Ok(m.rank())
}

/// Default cap on `|code| · p^n` tally operations in [`fourier_support`].
pub const DEFAULT_FOURIER_LIMIT: u64 = 100_000_000;

/// The frequencies at which the code's indicator has a nonzero Fourier
/// coefficient: `y` such that `Σ_(x ∈ code) ω^(−x·y) ≠ 0`, each sum held
/// as an exact tally. Sorted by vertex index. `limit` overrides the default
/// work guard.
pub fn fourier_support(code: &CodeSet, limit: Option<u64>) -> Result<Vec<FrequencyVector>> {
    let params = *code.params();
    params.require_prime()?;
    let size = params.vertex_count_usize()?;
    let work = code.len() as u64 * size as u64;
    let cap = limit.unwrap_or(DEFAULT_FOURIER_LIMIT);
    if work > cap {
        return Err(Error::resource(format!(
            "Fourier support needs {work} tally steps; the guard is {cap}"
        )));
    }
    let p = params.p() as u64;
    let codewords: Vec<Vec<u32>> = code.points().map(|pt| pt.coords().to_vec()).collect();
    let mut support = Vec::new();
    for idx in 0..size {
        let y = params.point_of(idx)?;
        let mut tally = CyclotomicElement::zero(params.p())?;
        for x in &codewords {
            let mut dot: u64 = 0;
            for (&xi, &yi) in x.iter().zip(y.coords()) {
                dot = (dot + xi as u64 * yi as u64) % p;
            }
            tally.add_root_power(-(dot as i64));
        }
        if !tally.is_zero_assuming_prime_order() {
            support.push(y);
        }
    }
    Ok(support)
}
