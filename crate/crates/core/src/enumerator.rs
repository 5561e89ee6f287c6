//! Exhaustive enumeration of perfect dominating sets by exact cover, orbit
//! decomposition under the torus symmetries, and a family cache.
//!
//! A perfect dominating set is exactly a partition of the vertex set into
//! closed balls, so enumeration is exact cover: the universe is `Z_p^n`,
//! rows are the `p^n` closed balls, and every solution is the set of chosen
//! centers. The search branches on the uncovered vertex with the fewest
//! remaining candidate balls. For prime `p` an optional prune rejects any
//! two centers sharing an axis line; that is sound because every perfect
//! code then meets each line exactly once, and it is refused for composite
//! `p` where no such theorem holds.

use crate::codeset::CodeSet;
use crate::error::{Error, Result};
use crate::linear::{build_eq1, Eq1Spec};
use crate::torus::{TorusParams, TorusPoint};
use crate::verify;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::path::{Path, PathBuf};

/// Which reference family a collection of codes represents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// Every perfect dominating set (the enumerator's output).
    AllPerfect,
    /// The sign-and-offset (graph-type) codes only.
    Eq1Codes,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::AllPerfect => "all-perfect",
            FamilyKind::Eq1Codes => "eq1",
        })
    }
}

/// A sorted, duplicate-free list of verified perfect codes over one torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFamily {
    params: TorusParams,
    kind: FamilyKind,
    complete: bool,
    codes: Vec<CodeSet>,
}

impl CodeFamily {
    /// Sorts, rejects duplicates, and verifies every member is perfect.
    pub fn new(
        params: TorusParams,
        kind: FamilyKind,
        complete: bool,
        mut codes: Vec<CodeSet>,
    ) -> Result<Self> {
        for code in &codes {
            if code.params() != &params {
                return Err(Error::invalid("family member built over different parameters"));
            }
            if !verify::is_perfect(code).perfect {
                return Err(Error::invalid("family member is not a perfect dominating set"));
            }
        }
        codes.sort_by(|a, b| a.canonical_cmp(b));
        if codes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate family member"));
        }
        Ok(CodeFamily {
            params,
            kind,
            complete,
            codes,
        })
    }

    fn from_cache_parts(params: TorusParams, codes: Vec<CodeSet>) -> Result<Self> {
        let mut codes = codes;
        codes.sort_by(|a, b| a.canonical_cmp(b));
        if codes.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::invalid("duplicate family member in cache"));
        }
        Ok(CodeFamily {
            params,
            kind: FamilyKind::AllPerfect,
            complete: true,
            codes,
        })
    }

    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn codes(&self) -> &[CodeSet] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Binary search by canonical order.
    pub fn position(&self, code: &CodeSet) -> Option<usize> {
        self.codes
            .binary_search_by(|c| c.canonical_cmp(code))
            .ok()
    }

    pub fn contains(&self, code: &CodeSet) -> bool {
        self.position(code).is_some()
    }
}

/// Default cap on the universe size `p^n` accepted by [`enumerate_all`].
pub const DEFAULT_ENUMERATION_LIMIT: usize = 343;

/// Search options for [`enumerate_all`].
#[derive(Debug, Clone)]
pub struct EnumerateOptions {
    /// Reject branches placing two centers on a common axis line. Sound
    /// only for prime `p`; refused otherwise.
    pub prune: bool,
    /// Override for the universe-size guard.
    pub limit: Option<usize>,
    /// Upper bound on worker threads for the top-level branch split.
    pub threads: usize,
}

impl EnumerateOptions {
    /// Pruning on exactly when `p` is prime, default guard, single thread.
    pub fn for_params(params: &TorusParams) -> Self {
        EnumerateOptions {
            prune: params.is_prime(),
            limit: None,
            threads: 1,
        }
    }
}

struct SearchSpace {
    size: usize,
    /// Ball membership by index; symmetric, so `balls[v]` is also the set
    /// of centers whose ball covers `v`.
    balls: Vec<Vec<usize>>,
    /// Axis-line ids per center, present only when pruning.
    lines: Option<Vec<Vec<usize>>>,
}

#[derive(Clone)]
struct SearchState {
    covered: Vec<bool>,
    line_used: Vec<bool>,
    chosen: Vec<usize>,
    solutions: Vec<Vec<usize>>,
}

impl SearchSpace {
    fn available(&self, st: &SearchState, center: usize) -> bool {
        if self.balls[center].iter().any(|&u| st.covered[u]) {
            return false;
        }
        match &self.lines {
            Some(lines) => lines[center].iter().all(|&l| !st.line_used[l]),
            None => true,
        }
    }

    /// The uncovered vertex with the fewest available covering balls, with
    /// its candidate centers; `None` once everything is covered.
    fn best_cell(&self, st: &SearchState) -> Option<(usize, Vec<usize>)> {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for cell in 0..self.size {
            if st.covered[cell] {
                continue;
            }
            let cands: Vec<usize> = self.balls[cell]
                .iter()
                .copied()
                .filter(|&c| self.available(st, c))
                .collect();
            if cands.is_empty() {
                return Some((cell, cands));
            }
            let better = best.as_ref().map_or(true, |(_, b)| cands.len() < b.len());
            if better {
                let single = cands.len() == 1;
                best = Some((cell, cands));
                if single {
                    break;
                }
            }
        }
        best
    }

    fn select(&self, st: &mut SearchState, center: usize) {
        for &u in &self.balls[center] {
            st.covered[u] = true;
        }
        if let Some(lines) = &self.lines {
            for &l in &lines[center] {
                st.line_used[l] = true;
            }
        }
        st.chosen.push(center);
    }

    fn unselect(&self, st: &mut SearchState, center: usize) {
        for &u in &self.balls[center] {
            st.covered[u] = false;
        }
        if let Some(lines) = &self.lines {
            for &l in &lines[center] {
                st.line_used[l] = false;
            }
        }
        st.chosen.pop();
    }

    fn dfs(&self, st: &mut SearchState) {
        let Some((_, cands)) = self.best_cell(st) else {
            st.solutions.push(st.chosen.clone());
            return;
        };
        for c in cands {
            self.select(st, c);
            self.dfs(st);
            self.unselect(st, c);
        }
    }
}

/// Enumerates every perfect dominating set by exact cover over closed
/// balls. The output is sorted canonically and is independent of the
/// search order and thread count.
pub fn enumerate_all(params: &TorusParams, options: &EnumerateOptions) -> Result<CodeFamily> {
    if options.prune {
        params.require_prime().map_err(|_| {
            Error::unsupported(format!(
                "line pruning is unsound for composite p = {}",
                params.p()
            ))
        })?;
    }
    let size = params.vertex_count_usize()?;
    let cap = options.limit.unwrap_or(DEFAULT_ENUMERATION_LIMIT);
    if size > cap {
        return Err(Error::resource(format!(
            "enumeration universe has {size} vertices; the guard is {cap}"
        )));
    }

    let mut balls = Vec::with_capacity(size);
    let weights = params.weights();
    let mut ball = Vec::new();
    for v in 0..size {
        params.ball_indices_into(v, &weights, &mut ball);
        balls.push(ball.clone());
    }
    let lines = options.prune.then(|| {
        (0..size)
            .map(|v| line_ids(params, v))
            .collect::<Vec<_>>()
    });
    let line_count = params.n() * size / params.p() as usize;
    let space = SearchSpace { size, balls, lines };
    let fresh = SearchState {
        covered: vec![false; size],
        line_used: vec![false; if options.prune { line_count } else { 0 }],
        chosen: Vec::new(),
        solutions: Vec::new(),
    };

    let solutions = run_search(&space, fresh, options.threads.max(1));

    let mut codes = Vec::with_capacity(solutions.len());
    for chosen in solutions {
        codes.push(CodeSet::from_indices(*params, chosen)?);
    }
    CodeFamily::new(*params, FamilyKind::AllPerfect, true, codes)
}

/// Runs the exact-cover search, splitting the root branches over up to
/// `threads` workers.
fn run_search(space: &SearchSpace, mut state: SearchState, threads: usize) -> Vec<Vec<usize>> {
    let Some((_, cands)) = space.best_cell(&state) else {
        // Zero-dimensional corner: the empty universe is covered by the
        // empty code. Unreachable for any real torus.
        return vec![Vec::new()];
    };
    if threads <= 1 || cands.len() <= 1 {
        space.dfs(&mut state);
        return state.solutions;
    }
    let workers = threads.min(cands.len());
    let chunk = cands.len().div_ceil(workers);
    let mut out = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for group in cands.chunks(chunk) {
            let mut st = state.clone();
            handles.push(scope.spawn(move || {
                for &c in group {
                    space.select(&mut st, c);
                    space.dfs(&mut st);
                    space.unselect(&mut st, c);
                }
                st.solutions
            }));
        }
        for h in handles {
            out.extend(h.join().expect("search worker panicked"));
        }
    });
    out
}

/// Ids of the `n` axis lines through vertex `v`: for axis `a`, the line is
/// identified by `a` and the other `n−1` digits of `v`.
fn line_ids(params: &TorusParams, v: usize) -> Vec<usize> {
    let n = params.n();
    let p = params.p() as usize;
    let per_axis = params
        .vertex_count_usize()
        .expect("guarded earlier")
        / p;
    let pt = params.point_of(v).expect("index within range");
    let mut ids = Vec::with_capacity(n);
    for axis in 0..n {
        let mut rest = 0usize;
        for (a, &c) in pt.coords().iter().enumerate() {
            if a != axis {
                rest = rest * p + c as usize;
            }
        }
        ids.push(axis * per_axis + rest);
    }
    ids
}

/// The complete family of sign-and-offset codes: `2^(n−1) · p` members.
pub fn eq1_family(params: &TorusParams) -> Result<CodeFamily> {
    params.require_prime()?;
    let mut codes = Vec::new();
    for spec in Eq1Spec::all(params) {
        codes.push(build_eq1(&spec, params)?);
    }
    CodeFamily::new(*params, FamilyKind::Eq1Codes, true, codes)
}

/// Symmetry group used by [`orbit_decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryGroup {
    /// Translations `x ↦ x + g` only.
    Translations,
    /// Translations, coordinate permutations, and coordinate negations.
    Full,
}

/// Orbits of a complete family under a symmetry group, in order of each
/// orbit's least member index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitReport {
    pub group: SymmetryGroup,
    pub orbit_count: usize,
    /// Orbit sizes, ordered by least member.
    pub sizes: Vec<usize>,
    /// Index of the least member of each orbit.
    pub representatives: Vec<usize>,
}

/// Groups the family under the chosen symmetries. The family must be
/// complete and closed under the group; a generator image outside the
/// family is an error, not a new discovery.
pub fn orbit_decomposition(family: &CodeFamily, group: SymmetryGroup) -> Result<OrbitReport> {
    if !family.complete() {
        return Err(Error::invalid(
            "orbit decomposition needs a complete family",
        ));
    }
    let params = family.params();
    let n = params.n();

    let mut generators: Vec<Box<dyn Fn(&CodeSet) -> Result<CodeSet>>> = Vec::new();
    for axis in 0..n {
        let params = *params;
        generators.push(Box::new(move |c: &CodeSet| {
            let mut coords = vec![0u32; params.n()];
            coords[axis] = 1;
            c.translate(&TorusPoint::new(coords, &params)?)
        }));
    }
    if group == SymmetryGroup::Full {
        for a in 0..n.saturating_sub(1) {
            generators.push(Box::new(move |c: &CodeSet| {
                let mut perm: Vec<usize> = (0..c.params().n()).collect();
                perm.swap(a, a + 1);
                c.permute_coords(&perm)
            }));
        }
        generators.push(Box::new(|c: &CodeSet| c.negate_coord(0)));
    }

    let index_of: HashMap<String, usize> = family
        .codes()
        .iter()
        .enumerate()
        .map(|(i, c)| (c.to_canonical_string(), i))
        .collect();

    let mut orbit_of = vec![usize::MAX; family.len()];
    let mut sizes = Vec::new();
    let mut representatives = Vec::new();
    for start in 0..family.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let orbit = sizes.len();
        orbit_of[start] = orbit;
        representatives.push(start);
        let mut size = 1usize;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let image = g(&family.codes()[i])?;
                let Some(&j) = index_of.get(&image.to_canonical_string()) else {
                    return Err(Error::invalid(
                        "family is not closed under the symmetry group",
                    ));
                };
                if orbit_of[j] == usize::MAX {
                    orbit_of[j] = orbit;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        sizes.push(size);
    }
    Ok(OrbitReport {
        group,
        orbit_count: sizes.len(),
        sizes,
        representatives,
    })
}

/// Cache file name for a complete enumeration, keyed by parameters.
pub fn cache_file_name(params: &TorusParams) -> String {
    format!("p{}n{}.family", params.p(), params.n())
}

const CACHE_FORMAT_LINE: &str = "family-format 1";

/// Persists a complete enumeration in the canonical code format, one block
/// per member, behind a format-version header.
pub fn write_cache(family: &CodeFamily, dir: &Path) -> Result<PathBuf> {
    if !family.complete() || family.kind() != FamilyKind::AllPerfect {
        return Err(Error::invalid(
            "only complete all-perfect families are cached",
        ));
    }
    let params = family.params();
    let mut text = String::new();
    text.push_str(CACHE_FORMAT_LINE);
    text.push('\n');
    text.push_str(&format!(
        "p={} n={} codes={}\n",
        params.p(),
        params.n(),
        family.len()
    ));
    for code in family.codes() {
        text.push_str(&code.to_canonical_string());
    }
    std::fs::create_dir_all(dir)?;
    let path = dir.join(cache_file_name(params));
    std::fs::write(&path, text)?;
    Ok(path)
}

/// Loads a cached enumeration if present, re-verifying a fixed-seed sample
/// of three members before trusting it.
pub fn read_cache(params: &TorusParams, dir: &Path) -> Result<Option<CodeFamily>> {
    let path = dir.join(cache_file_name(params));
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(e.into()),
    };
    let lines: Vec<&str> = text.lines().collect();
    if lines.first() != Some(&CACHE_FORMAT_LINE) {
        return Err(Error::parse(1, "missing or unsupported format header"));
    }
    let meta = lines
        .get(1)
        .ok_or_else(|| Error::parse(2, "missing family metadata line"))?;
    let expected_meta_prefix = format!("p={} n={} codes=", params.p(), params.n());
    let count: usize = meta
        .strip_prefix(&expected_meta_prefix)
        .and_then(|c| c.parse().ok())
        .ok_or_else(|| {
            Error::parse(
                2,
                format!("metadata `{meta}` does not match requested parameters"),
            )
        })?;
    let block_len = 1 + params
        .vertex_count_usize()?
        / params.p() as usize;
    let body = &lines[2..];
    if body.len() != count * block_len {
        return Err(Error::parse(
            body.len() + 2,
            format!(
                "expected {count} blocks of {block_len} lines, found {} lines",
                body.len()
            ),
        ));
    }
    let mut codes = Vec::with_capacity(count);
    for (b, block) in body.chunks(block_len).enumerate() {
        let mut blob = block.join("\n");
        blob.push('\n');
        let code = CodeSet::read_canonical(blob.as_bytes()).map_err(|e| match e {
            Error::Parse { line, message } => Error::Parse {
                line: line + 2 + b * block_len,
                message,
            },
            other => other,
        })?;
        if code.params() != params {
            return Err(Error::parse(
                3 + b * block_len,
                "block parameters disagree with the family header",
            ));
        }
        codes.push(code);
    }
    let family = CodeFamily::from_cache_parts(*params, codes)?;
    for idx in cache_sample_indices(params, family.len()) {
        if !verify::is_perfect(&family.codes()[idx]).perfect {
            return Err(Error::invalid(format!(
                "cached family member {idx} failed re-verification"
            )));
        }
    }
    Ok(Some(family))
}

/// Deterministic member sample for cache re-verification: three distinct
/// indices from a generator seeded by (p, n), or everything when the
/// family is that small.
pub(crate) fn cache_sample_indices(params: &TorusParams, len: usize) -> Vec<usize> {
    if len <= 3 {
        return (0..len).collect();
    }
    let seed = (params.p() as u64) << 32 | params.n() as u64;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < 3 {
        picked.insert(rng.random_range(0..len));
    }
    picked.into_iter().collect()
}
