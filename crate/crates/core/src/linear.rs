//! The graph-of-a-linear-map family of perfect codes, its hyperplane
//! generalization, dominator lookup, and hyperplane classification.
//!
//! The base family fixes signs `ε_1, …, ε_(n−1)` and an offset `k` and takes
//! the graph of `x ↦ k + Σ ε_i·(i+1)·x_i` as the last coordinate (indices here
//! are 1-based to keep the coefficient pattern `2, 3, …, n` visible; storage is
//! 0-based). Such a set is the hyperplane `{x : a·x = k}` with normal
//! `a = (−2ε_1, …, −n·ε_(n−1), 1)`, and a hyperplane is a perfect dominating
//! set exactly when the canonical absolute values of its normal entries are a
//! permutation of `{1, …, n}`, for then the ball offsets `{0, ±a_i}` exhaust
//! `Z_p`.

use crate::codeset::CodeSet;
use crate::error::{Error, Result};
use crate::torus::{TorusParams, TorusPoint};
use crate::verify;

/// Sign-and-offset description of a graph-type code: `n−1` signs and a
/// residue offset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Eq1Spec {
    eps: Vec<i8>,
    k: u32,
}

impl Eq1Spec {
    pub fn new(eps: Vec<i8>, k: u32, params: &TorusParams) -> Result<Self> {
        if eps.len() + 1 != params.n() {
            return Err(Error::DimensionMismatch {
                expected: params.n() - 1,
                got: eps.len(),
            });
        }
        if eps.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::invalid("signs must be +1 or -1"));
        }
        if k >= params.p() {
            return Err(Error::invalid(format!(
                "offset {k} not reduced modulo p = {}",
                params.p()
            )));
        }
        Ok(Eq1Spec { eps, k })
    }

    pub fn eps(&self) -> &[i8] {
        &self.eps
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// CLI serialization, e.g. `eps=+-+ k=3`.
    pub fn display(&self) -> String {
        let signs: String = self
            .eps
            .iter()
            .map(|&e| if e > 0 { '+' } else { '-' })
            .collect();
        format!("eps={signs} k={}", self.k)
    }

    /// Parses the sign string used by the CLI (`+-+`; empty for n = 1).
    pub fn parse_signs(s: &str) -> Result<Vec<i8>> {
        s.chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                other => Err(Error::invalid(format!("bad sign character `{other}`"))),
            })
            .collect()
    }

    /// All `2^(n−1) · p` specs, sign patterns outer (binary counting order,
    /// `+` for unset bits), offsets inner.
    pub fn all(params: &TorusParams) -> Vec<Eq1Spec> {
        let n = params.n();
        let mut out = Vec::with_capacity((1usize << (n - 1)) * params.p() as usize);
        for pattern in 0u32..(1 << (n - 1)) {
            let eps: Vec<i8> = (0..n - 1)
                .map(|i| if pattern >> i & 1 == 0 { 1 } else { -1 })
                .collect();
            for k in 0..params.p() {
                out.push(Eq1Spec { eps: eps.clone(), k });
            }
        }
        out
    }
}

/// A hyperplane `{x : a·x ≡ k (mod p)}` whose normal's canonical absolute
/// values are a permutation of `{1, …, n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperplaneSpec {
    normal: Vec<u32>,
    k: u32,
}

impl HyperplaneSpec {
    pub fn new(normal: Vec<u32>, k: u32, params: &TorusParams) -> Result<Self> {
        let n = params.n();
        if normal.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: normal.len(),
            });
        }
        if normal.iter().any(|&a| a >= params.p()) || k >= params.p() {
            return Err(Error::invalid("normal and offset must be reduced modulo p"));
        }
        let mut seen = vec![false; n + 1];
        for &a in &normal {
            let v = params.abs(a) as usize;
            if v == 0 || v > n || seen[v] {
                return Err(Error::invalid(format!(
                    "normal {normal:?} is invalid: absolute values must be a permutation of 1..={n}"
                )));
            }
            seen[v] = true;
        }
        Ok(HyperplaneSpec { normal, k })
    }

    pub fn normal(&self) -> &[u32] {
        &self.normal
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// CLI serialization, e.g. `a=1,3,2 k=3`.
    pub fn display(&self) -> String {
        let a: Vec<String> = self.normal.iter().map(|v| v.to_string()).collect();
        format!("a={} k={}", a.join(","), self.k)
    }

    /// Lexicographically least representative of the scaling orbit
    /// `{(t·a, t·k) : t ∈ Z_p^*}`.
    pub fn canonicalize(&self, params: &TorusParams) -> HyperplaneSpec {
        let p = params.p() as u64;
        let mut best: Option<(Vec<u32>, u32)> = None;
        for t in 1..p {
            let a: Vec<u32> = self
                .normal
                .iter()
                .map(|&v| ((v as u64 * t) % p) as u32)
                .collect();
            let k = ((self.k as u64 * t) % p) as u32;
            if best.as_ref().map_or(true, |(ba, _)| a < *ba) {
                best = Some((a, k));
            }
        }
        let (normal, k) = best.expect("p >= 3 gives a nonempty orbit");
        HyperplaneSpec { normal, k }
    }

    /// All valid normals: signed permutations of `{1, …, n}`, deterministic
    /// order (permutations lexicographic, then sign patterns counting up).
    pub fn all_normals(params: &TorusParams) -> Vec<Vec<u32>> {
        use itertools::Itertools;
        let n = params.n();
        let p = params.p();
        let mut out = Vec::new();
        for perm in (1..=n as u32).permutations(n) {
            for pattern in 0u32..(1 << n) {
                let normal: Vec<u32> = perm
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if pattern >> i & 1 == 0 { v } else { p - v })
                    .collect();
                out.push(normal);
            }
        }
        out
    }
}

/// Builds the graph-type code of `spec`: `p^(n−1)` points, one per prefix.
pub fn build_eq1(spec: &Eq1Spec, params: &TorusParams) -> Result<CodeSet> {
    params.require_prime()?;
    if spec.eps.len() + 1 != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n() - 1,
            got: spec.eps.len(),
        });
    }
    let n = params.n();
    let p = params.p();
    let prefix_count = params
        .vertex_count_usize()
        .map(|c| c / p as usize)
        .expect("bounded above by vertex count");
    let mut code = CodeSet::empty(*params)?;
    let mut prefix = vec![0u32; n - 1];
    for _ in 0..prefix_count {
        let mut last: i64 = spec.k as i64;
        for (i, (&x, &e)) in prefix.iter().zip(&spec.eps).enumerate() {
            last += e as i64 * (i as i64 + 2) * x as i64;
        }
        let mut coords = prefix.clone();
        coords.push(params.reduce(last));
        code.insert(&TorusPoint::new(coords, params)?)?;
        // Next prefix, least-significant coordinate last.
        for a in (0..n - 1).rev() {
            prefix[a] += 1;
            if prefix[a] == p {
                prefix[a] = 0;
            } else {
                break;
            }
        }
    }
    Ok(code)
}

/// Builds the hyperplane code `{x : a·x ≡ k}`.
pub fn build_hyperplane(spec: &HyperplaneSpec, params: &TorusParams) -> Result<CodeSet> {
    params.require_prime()?;
    if spec.normal.len() != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: spec.normal.len(),
        });
    }
    let p = params.p() as u64;
    let size = params.vertex_count_usize()?;
    let mut code = CodeSet::empty(*params)?;
    // Walk indices in order, maintaining the dot product incrementally: any
    // bump of coordinate a adds a_a modulo p, since the wrap p−1 → 0 changes
    // the contribution by −(p−1)·a_a ≡ a_a.
    let mut digits = vec![0u32; params.n()];
    let mut dot: u64 = 0;
    for idx in 0..size {
        if dot == spec.k as u64 {
            code.insert_index(idx)?;
        }
        for a in (0..params.n()).rev() {
            dot = (dot + spec.normal[a] as u64) % p;
            digits[a] += 1;
            if digits[a] == params.p() {
                digits[a] = 0;
            } else {
                break;
            }
        }
    }
    Ok(code)
}

/// The unique codeword of `spec`'s code dominating `y`.
///
/// With `t = k + Σ ε_i·(i+1)·y_i` and `Δ = t − y_n` centered into `[−n, n]`:
/// if `Δ ∈ {−1,0,1}` the dominator is `(y_1, …, y_(n−1), t)`; otherwise the
/// sign `ε_j` at `j = |Δ| − 1` absorbs the gap one step along axis `j`.
pub fn dominator_of(spec: &Eq1Spec, y: &TorusPoint, params: &TorusParams) -> Result<TorusPoint> {
    params.require_prime()?;
    if y.coords().len() != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            got: y.coords().len(),
        });
    }
    let n = params.n();
    let mut t: i64 = spec.k as i64;
    for (i, (&x, &e)) in y.coords()[..n - 1].iter().zip(&spec.eps).enumerate() {
        t += e as i64 * (i as i64 + 2) * x as i64;
    }
    let t = params.reduce(t);
    let delta = params.centered(params.reduce(t as i64 - y.coords()[n - 1] as i64));
    if delta.abs() <= 1 {
        let mut coords = y.coords().to_vec();
        coords[n - 1] = t;
        return TorusPoint::new(coords, params);
    }
    let j = delta.unsigned_abs() as usize - 1; // 1-based sign index, in [1, n−1]
    let sign = delta.signum();
    let mut coords = y.coords().to_vec();
    let stepped = coords[j - 1] as i64 - spec.eps[j - 1] as i64 * sign;
    coords[j - 1] = params.reduce(stepped);
    TorusPoint::new(coords, params)
}

/// Result of hyperplane classification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Hyperplane(HyperplaneSpec),
    NotHyperplane,
}

/// Largest dimension classify will brute-force (`n!·2^n·p` candidates).
pub const CLASSIFY_MAX_N: usize = 6;

/// Decides whether a verified perfect code is a hyperplane code, returning
/// the canonical (lexicographically least) normal in its scaling orbit.
pub fn classify(code: &CodeSet) -> Result<Classification> {
    let params = *code.params();
    params.require_prime()?;
    if params.n() > CLASSIFY_MAX_N {
        return Err(Error::resource(format!(
            "classification enumerates n!·2^n·p normals; n = {} exceeds the n <= {} guard",
            params.n(),
            CLASSIFY_MAX_N
        )));
    }
    if !verify::is_perfect(code).perfect {
        return Err(Error::invalid(
            "classification expects a verified perfect dominating set",
        ));
    }
    let p = params.p() as u64;
    let points: Vec<TorusPoint> = code.points().collect();
    let first = &points[0];
    for normal in HyperplaneSpec::all_normals(&params) {
        let dot = |pt: &TorusPoint| -> u32 {
            let mut acc: u64 = 0;
            for (&a, &x) in normal.iter().zip(pt.coords()) {
                acc = (acc + a as u64 * x as u64) % p;
            }
            acc as u32
        };
        let k = dot(first);
        if points.iter().skip(1).all(|pt| dot(pt) == k) {
            // |code| = p^(n−1) = |hyperplane|, so containment is equality.
            let spec = HyperplaneSpec::new(normal, k, &params)?;
            return Ok(Classification::Hyperplane(spec.canonicalize(&params)));
        }
    }
    Ok(Classification::NotHyperplane)
}

/// The hyperplane normal equivalent to an [`Eq1Spec`]:
/// `(2ε_1, 3ε_2, …, n·ε_(n−1), −1)` with offset `−k`.
pub fn eq1_normal(spec: &Eq1Spec, params: &TorusParams) -> Result<HyperplaneSpec> {
    let p = params.p();
    let mut normal: Vec<u32> = spec
        .eps
        .iter()
        .enumerate()
        .map(|(i, &e)| {
            let coeff = (i + 2) as u32;
            if e > 0 {
                coeff
            } else {
                p - coeff
            }
        })
        .collect();
    normal.push(p - 1);
    let k = if spec.k == 0 { 0 } else { p - spec.k };
    HyperplaneSpec::new(normal, k, params)
}

/// Recognizes a literal graph-type code, recovering its spec.
///
/// Returns `None` when the code is not exactly `build_eq1` of some spec.
pub fn recover_eq1(code: &CodeSet) -> Option<Eq1Spec> {
    let params = *code.params();
    if !params.is_prime() {
        return None;
    }
    let n = params.n();
    let points: Vec<TorusPoint> = code.points().collect();
    // Offset: the codeword whose prefix is all zeros.
    let k = unique_with_prefix(&points, &vec![0u32; n - 1])?.coords()[n - 1];
    let mut eps = Vec::with_capacity(n - 1);
    for i in 0..n - 1 {
        let mut prefix = vec![0u32; n - 1];
        prefix[i] = 1;
        let last = unique_with_prefix(&points, &prefix)?.coords()[n - 1];
        let diff = params.reduce(last as i64 - k as i64);
        let coeff = (i + 2) as u32;
        if diff == coeff {
            eps.push(1);
        } else if diff == params.p() - coeff {
            eps.push(-1);
        } else {
            return None;
        }
    }
    let spec = Eq1Spec::new(eps, k, &params).ok()?;
    let rebuilt = build_eq1(&spec, &params).ok()?;
    (&rebuilt == code).then_some(spec)
}

fn unique_with_prefix<'a>(points: &'a [TorusPoint], prefix: &[u32]) -> Option<&'a TorusPoint> {
    let mut found = None;
    for pt in points {
        if &pt.coords()[..prefix.len()] == prefix {
            if found.is_some() {
                return None;
            }
            found = Some(pt);
        }
    }
    found
}
