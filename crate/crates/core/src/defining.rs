//! Defining sets: subsets of a code that pin it down uniquely within a
//! reference family, found greedily, exhaustively, or by an explicit
//! signed-binary construction for graph-type codes.
//!
//! The greedy route tracks `dim V_D`, the rank of the characteristic
//! vectors of the family members containing `D`, and grows `D` by the
//! smallest vertex that strictly drops it; each drop removes at least one
//! dimension, which bounds the result. The explicit route covers the
//! `n−1` signs in blocks of `m = ⌊log₂ p⌋`: block entries `α` satisfy
//! `(i+j+1)·α ≡ 2^j`, so a block codeword's last coordinate reveals
//! `Σ ε_(i+j)·2^j`, and a signed sum of distinct powers of two determines
//! its signs uniquely modulo p.

use crate::codeset::CodeSet;
use crate::enumerator::{CodeFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::linear::{build_eq1, Eq1Spec};
use crate::torus::{TorusParams, TorusPoint};
use itertools::Itertools;
use num_bigint::BigInt;

/// A subset of a target code, claimed to identify it within one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSet {
    points: Vec<TorusPoint>,
    target: CodeSet,
    family: FamilyKind,
}

impl DefiningSet {
    fn new(mut points: Vec<TorusPoint>, target: CodeSet, family: FamilyKind) -> Self {
        let params = *target.params();
        points.sort_by_key(|pt| params.index_of(pt).expect("point arity checked by caller"));
        DefiningSet {
            points,
            target,
            family,
        }
    }

    /// The points, ascending by vertex index.
    pub fn points(&self) -> &[TorusPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn target(&self) -> &CodeSet {
        &self.target
    }

    /// Which family the uniqueness claim is relative to.
    pub fn family_kind(&self) -> FamilyKind {
        self.family
    }
}

/// Whether no family member other than `target` contains every point of
/// `points`. The points must lie in `target`, and `target` in the family.
pub fn is_defining(points: &[TorusPoint], target: &CodeSet, family: &CodeFamily) -> Result<bool> {
    for pt in points {
        if !target.contains(pt)? {
            return Err(Error::invalid(
                "a defining-set candidate must be a subset of its target",
            ));
        }
    }
    let pos = family
        .position(target)
        .ok_or_else(|| Error::invalid("target code is not a member of the family"))?;
    let params = family.params();
    let indices: Vec<usize> = points
        .iter()
        .map(|pt| params.index_of(pt))
        .collect::<Result<_>>()?;
    for (i, member) in family.codes().iter().enumerate() {
        if i == pos {
            continue;
        }
        if indices.iter().all(|&v| member.contains_index(v)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `dim V_D`: the rank of the 0/1 characteristic vectors of the family
/// members containing every given point.
pub fn span_dimension(family: &CodeFamily, points: &[TorusPoint]) -> Result<usize> {
    let params = family.params();
    let indices: Vec<usize> = points
        .iter()
        .map(|pt| params.index_of(pt))
        .collect::<Result<_>>()?;
    let members: Vec<&CodeSet> = family
        .codes()
        .iter()
        .filter(|m| indices.iter().all(|&v| m.contains_index(v)))
        .collect();
    rank_of_members(params, &members)
}

fn rank_of_members(params: &TorusParams, members: &[&CodeSet]) -> Result<usize> {
    if members.is_empty() {
        return Ok(0);
    }
    let size = params.vertex_count_usize()?;
    let rows: Vec<Vec<BigInt>> = members
        .iter()
        .map(|m| {
            let mut row = vec![BigInt::from(0); size];
            for idx in m.indices() {
                row[idx] = BigInt::from(1);
            }
            row
        })
        .collect();
    Ok(Matrix::from_rows(rows)?.rank())
}

/// Grows a defining set from the empty set, always adding the smallest
/// vertex of the target that strictly drops `dim V_D`.
pub fn greedy_defining(target: &CodeSet, family: &CodeFamily) -> Result<DefiningSet> {
    if !family.complete() {
        return Err(Error::invalid("greedy construction needs a complete family"));
    }
    let pos = family
        .position(target)
        .ok_or_else(|| Error::invalid("target code is not a member of the family"))?;
    let params = *family.params();
    let target_indices: Vec<usize> = target.indices().collect();

    let mut chosen: Vec<usize> = Vec::new();
    loop {
        let members: Vec<&CodeSet> = family
            .codes()
            .iter()
            .filter(|m| chosen.iter().all(|&v| m.contains_index(v)))
            .collect();
        // Defining exactly when the target is the only member left.
        if members.len() == 1 {
            break;
        }
        let current = rank_of_members(&params, &members)?;
        let mut added = false;
        for &v in &target_indices {
            if chosen.contains(&v) {
                continue;
            }
            let sub: Vec<&CodeSet> = members
                .iter()
                .copied()
                .filter(|m| m.contains_index(v))
                .collect();
            if sub.len() == members.len() {
                continue; // same member set, same span
            }
            // A strictly smaller row count below the current dimension
            // already forces a drop; otherwise compute the rank.
            let drops = sub.len() < current || rank_of_members(&params, &sub)? < current;
            if drops {
                chosen.push(v);
                added = true;
                break;
            }
        }
        if !added {
            return Err(Error::invalid(
                "no vertex drops the span dimension; the family does not support the greedy argument",
            ));
        }
    }
    debug_assert!(family.codes()[pos] == *target);
    let points: Vec<TorusPoint> = chosen
        .iter()
        .map(|&v| params.point_of(v))
        .collect::<Result<_>>()?;
    Ok(DefiningSet::new(points, target.clone(), family.kind()))
}

/// Default size cap for [`min_defining`]'s exhaustive search.
pub const DEFAULT_MIN_DEFINING_CAP: usize = 4;

/// Outcome of the exhaustive minimum search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinDefining {
    Found(DefiningSet),
    /// No defining subset exists up to the cap.
    ExceedsCap(usize),
}

/// Smallest defining subset of the target, searching size by size up to
/// `cap` (default [`DEFAULT_MIN_DEFINING_CAP`]); ties broken by ascending
/// vertex indices.
pub fn min_defining(
    target: &CodeSet,
    family: &CodeFamily,
    cap: Option<usize>,
) -> Result<MinDefining> {
    family
        .position(target)
        .ok_or_else(|| Error::invalid("target code is not a member of the family"))?;
    let cap = cap.unwrap_or(DEFAULT_MIN_DEFINING_CAP);
    let params = *family.params();
    let target_indices: Vec<usize> = target.indices().collect();
    for size in 0..=cap.min(target_indices.len()) {
        for combo in target_indices.iter().copied().combinations(size) {
            let points: Vec<TorusPoint> = combo
                .iter()
                .map(|&v| params.point_of(v))
                .collect::<Result<_>>()?;
            if is_defining(&points, target, family)? {
                return Ok(MinDefining::Found(DefiningSet::new(
                    points,
                    target.clone(),
                    family.kind(),
                )));
            }
        }
    }
    Ok(MinDefining::ExceedsCap(cap))
}

/// `⌊log₂ p⌋`, the block width for the signed-binary construction.
pub fn floor_log2(p: u32) -> u32 {
    31 - p.leading_zeros()
}

/// A vector of signs `ε ∈ {−1,+1}^m` representing `Σ ε_j·2^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedBinary {
    eps: Vec<i8>,
}

impl SignedBinary {
    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn len(&self) -> usize {
        self.eps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eps.is_empty()
    }

    /// `Σ ε_j·2^j` reduced modulo p.
    pub fn value(&self, params: &TorusParams) -> u32 {
        let sum: i64 = self
            .eps
            .iter()
            .enumerate()
            .map(|(j, &e)| e as i64 * (1i64 << j))
            .sum();
        params.reduce(sum)
    }
}

/// The unique sign vector of length `m` whose signed power sum is `c`
/// modulo p, or `None` when `c` is not one of the `2^m` attainable values.
/// Requires `m ≤ ⌊log₂ p⌋`, which is what makes the solution unique.
pub fn signed_binary_solve(c: u32, m: usize, params: &TorusParams) -> Result<Option<SignedBinary>> {
    if m as u32 > floor_log2(params.p()) {
        return Err(Error::invalid(format!(
            "block width {m} exceeds ⌊log₂ {}⌋; signed sums would collide",
            params.p()
        )));
    }
    if c >= params.p() {
        return Err(Error::invalid("residue not reduced modulo p"));
    }
    let mut found: Option<SignedBinary> = None;
    for pattern in 0u32..(1 << m) {
        let eps: Vec<i8> = (0..m)
            .map(|j| if pattern >> j & 1 == 0 { 1 } else { -1 })
            .collect();
        let candidate = SignedBinary { eps };
        if candidate.value(params) == c {
            assert!(
                found.is_none(),
                "two sign vectors reach the same residue; width bound violated"
            );
            found = Some(candidate);
        }
    }
    Ok(found)
}

/// Layout of the sign blocks for given parameters: (start, width) pairs
/// with 1-based starts `1, m+1, 2m+1, …` covering indices `1..=n−1`.
fn block_layout(params: &TorusParams) -> Vec<(usize, usize)> {
    let n = params.n();
    let m = floor_log2(params.p()) as usize;
    let mut blocks = Vec::new();
    let mut i = 1usize;
    while i <= n - 1 {
        let width = m.min(n - i);
        blocks.push((i, width));
        i += m;
    }
    blocks
}

/// The explicit defining set of a graph-type code relative to the family
/// of all graph-type codes: the zero-prefix codeword plus one codeword per
/// sign block, of size `1 + ⌈(n−1)/⌊log₂ p⌋⌉`.
pub fn proposition_defining(spec: &Eq1Spec, params: &TorusParams) -> Result<DefiningSet> {
    params.require_prime()?;
    let target = build_eq1(spec, params)?;
    let n = params.n();
    let p = params.p();
    let mut points = Vec::new();

    let mut zero_prefix = vec![0u32; n];
    zero_prefix[n - 1] = spec.k();
    points.push(TorusPoint::new(zero_prefix, params)?);

    for (start, width) in block_layout(params) {
        let mut coords = vec![0u32; n];
        let mut last: i64 = spec.k() as i64;
        for j in 0..width {
            let coeff = (start + j + 1) as u32;
            let alpha = (1u64 << j) % p as u64 * params.inverse(coeff)? as u64 % p as u64;
            coords[start + j - 1] = alpha as u32;
            // (start+j+1)·α ≡ 2^j, so this block contributes Σ ε·2^j.
            last += spec.eps()[start + j - 1] as i64 * (1i64 << j);
        }
        coords[n - 1] = params.reduce(last);
        let pt = TorusPoint::new(coords, params)?;
        debug_assert!(target.contains(&pt)?);
        points.push(pt);
    }

    let m = floor_log2(p) as usize;
    debug_assert_eq!(points.len(), 1 + (n - 1).div_ceil(m));
    Ok(DefiningSet::new(points, target, FamilyKind::Eq1Codes))
}

/// Inverts [`proposition_defining`]: reads the offset from the zero-prefix
/// point and each sign block from its codeword's last coordinate.
pub fn recover_eq1_spec(points: &[TorusPoint], params: &TorusParams) -> Result<Eq1Spec> {
    params.require_prime()?;
    let n = params.n();
    let blocks = block_layout(params);
    if points.len() != 1 + blocks.len() {
        return Err(Error::invalid(format!(
            "expected {} points for recovery, got {}",
            1 + blocks.len(),
            points.len()
        )));
    }
    let mut base: Option<u32> = None;
    let mut by_start: Vec<Option<&TorusPoint>> = vec![None; n];
    for pt in points {
        if pt.coords().len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: pt.coords().len(),
            });
        }
        match pt.coords()[..n - 1].iter().position(|&c| c != 0) {
            None => {
                if base.replace(pt.coords()[n - 1]).is_some() {
                    return Err(Error::invalid("two zero-prefix points"));
                }
            }
            Some(first) => {
                let start = first + 1; // 1-based sign index
                if by_start[start].replace(pt).is_some() {
                    return Err(Error::invalid("two points open the same block"));
                }
            }
        }
    }
    let k = base.ok_or_else(|| Error::invalid("no zero-prefix point"))?;
    let mut eps = vec![0i8; n - 1];
    for &(start, width) in &blocks {
        let pt = by_start[start]
            .ok_or_else(|| Error::invalid(format!("no point opens the block at {start}")))?;
        let c = params.reduce(pt.coords()[n - 1] as i64 - k as i64);
        let sb = signed_binary_solve(c, width, params)?.ok_or_else(|| {
            Error::invalid(format!(
                "block at {start}: residue {c} has no signed-binary decomposition"
            ))
        })?;
        for (j, &e) in sb.eps().iter().enumerate() {
            eps[start + j - 1] = e;
        }
    }
    Eq1Spec::new(eps, k, params)
}
