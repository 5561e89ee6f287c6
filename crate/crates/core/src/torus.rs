//! Vertex arithmetic for the torus graph on `Z_p^n` with generators `±e_1, …, ±e_n`.
//!
//! Throughout the crate, coordinates are stored 0-based (`coords[0]` is the
//! first coordinate, the most significant digit of the vertex index); prose
//! and CLI output follow the same 0-based convention. Residues live in
//! `{0, …, p−1}`; the canonical absolute value of a residue is
//! `|r| = min(r, p−r)`, centralized in [`TorusParams::abs`].

use crate::error::{Error, Result};

/// Graph parameters: the pair `(p, n)` with `p = 2n + 1`.
///
/// Composite odd `p` is representable (`is_prime` false) so that prime-only
/// statements can be probed for necessity; operations that are only sound for
/// prime `p` reject composite parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TorusParams {
    p: u32,
    n: usize,
    prime: bool,
}

fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl TorusParams {
    /// Builds parameters, checking `p = 2n + 1` and `p ≥ 3`.
    pub fn new(p: u32, n: usize) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::invalid(format!("p must be an odd integer >= 3, got {p}")));
        }
        if (p as u64) != 2 * (n as u64) + 1 {
            return Err(Error::invalid(format!(
                "p must equal 2n + 1 (p = {p}, n = {n})"
            )));
        }
        Ok(TorusParams {
            p,
            n,
            prime: is_prime_u32(p),
        })
    }

    /// Builds parameters from the cycle length alone, with `n = (p − 1) / 2`.
    pub fn from_p(p: u32) -> Result<Self> {
        if p < 3 || p % 2 == 0 {
            return Err(Error::invalid(format!("p must be an odd integer >= 3, got {p}")));
        }
        Self::new(p, ((p - 1) / 2) as usize)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_prime(&self) -> bool {
        self.prime
    }

    /// Returns an error unless `p` is prime.
    pub fn require_prime(&self) -> Result<()> {
        if self.prime {
            Ok(())
        } else {
            Err(Error::unsupported(format!(
                "operation requires prime cycle length, but p = {} is composite",
                self.p
            )))
        }
    }

    /// Number of vertices `p^n`, or `None` on u64 overflow.
    pub fn vertex_count(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for _ in 0..self.n {
            acc = acc.checked_mul(self.p as u64)?;
        }
        Some(acc)
    }

    /// Number of vertices as `usize`, for dense indexing.
    pub fn vertex_count_usize(&self) -> Result<usize> {
        self.vertex_count()
            .and_then(|c| usize::try_from(c).ok())
            .ok_or_else(|| {
                Error::resource(format!(
                    "p^n overflows the address space (p = {}, n = {})",
                    self.p, self.n
                ))
            })
    }

    /// Canonical absolute value of a residue: `min(r, p − r)`.
    pub fn abs(&self, r: u32) -> u32 {
        debug_assert!(r < self.p);
        r.min(self.p - r)
    }

    /// Centered representative of a residue, in `[−n, n]`.
    pub fn centered(&self, r: u32) -> i64 {
        debug_assert!(r < self.p);
        if r <= self.n as u32 {
            r as i64
        } else {
            r as i64 - self.p as i64
        }
    }

    /// Reduces an integer into `{0, …, p−1}`.
    pub fn reduce(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }

    /// Multiplicative inverse of a nonzero residue; requires prime `p`.
    pub fn inverse(&self, r: u32) -> Result<u32> {
        self.require_prime()?;
        if r == 0 {
            return Err(Error::invalid("0 has no multiplicative inverse"));
        }
        // p is small; a scan beats carrying an extended-gcd here.
        let p = self.p as u64;
        let r = r as u64;
        for t in 1..p {
            if (r * t) % p == 1 {
                return Ok(t as u32);
            }
        }
        unreachable!("prime modulus guarantees an inverse")
    }

    /// Positional weights of the mixed-radix vertex encoding:
    /// `weights()[a] = p^(n−1−a)`, so coordinate 0 is most significant.
    pub fn weights(&self) -> Vec<u64> {
        let mut w = vec![1u64; self.n];
        for a in (0..self.n.saturating_sub(1)).rev() {
            w[a] = w[a + 1] * self.p as u64;
        }
        w
    }

    fn check_point(&self, pt: &TorusPoint) -> Result<()> {
        if pt.coords.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: pt.coords.len(),
            });
        }
        if let Some(&c) = pt.coords.iter().find(|&&c| c >= self.p) {
            return Err(Error::invalid(format!(
                "coordinate {c} is not reduced modulo p = {}",
                self.p
            )));
        }
        Ok(())
    }

    /// Mixed-radix index of a point: `Σ coords[a] · p^(n−1−a)`.
    pub fn index_of(&self, pt: &TorusPoint) -> Result<usize> {
        self.check_point(pt)?;
        let mut idx: u64 = 0;
        for &c in &pt.coords {
            idx = idx * self.p as u64 + c as u64;
        }
        usize::try_from(idx).map_err(|_| Error::resource("vertex index overflows usize"))
    }

    /// Inverse of [`TorusParams::index_of`].
    pub fn point_of(&self, index: usize) -> Result<TorusPoint> {
        let size = self.vertex_count().unwrap_or(u64::MAX);
        if (index as u64) >= size {
            return Err(Error::IndexOutOfRange {
                index: index as u64,
                size,
            });
        }
        let mut coords = vec![0u32; self.n];
        let mut rest = index as u64;
        for a in (0..self.n).rev() {
            coords[a] = (rest % self.p as u64) as u32;
            rest /= self.p as u64;
        }
        Ok(TorusPoint { coords })
    }

    /// The closed radius-1 ball `{pt} ∪ {pt ± e_a}`: exactly `2n + 1` points.
    pub fn closed_ball(&self, pt: &TorusPoint) -> Result<Vec<TorusPoint>> {
        self.check_point(pt)?;
        let mut ball = Vec::with_capacity(2 * self.n + 1);
        ball.push(pt.clone());
        for a in 0..self.n {
            let mut up = pt.clone();
            up.coords[a] = if pt.coords[a] + 1 == self.p { 0 } else { pt.coords[a] + 1 };
            let mut down = pt.clone();
            down.coords[a] = if pt.coords[a] == 0 { self.p - 1 } else { pt.coords[a] - 1 };
            ball.push(up);
            ball.push(down);
        }
        Ok(ball)
    }

    /// Index-space closed ball; `out` is overwritten with `2n + 1` indices.
    ///
    /// `weights` must come from [`TorusParams::weights`]. This is the hot-loop
    /// variant used by scans over all vertices.
    pub fn ball_indices_into(&self, index: usize, weights: &[u64], out: &mut Vec<usize>) {
        out.clear();
        out.push(index);
        let p = self.p as u64;
        let mut rest = index as u64;
        for a in (0..self.n).rev() {
            let w = weights[a];
            let digit = rest % p;
            rest /= p;
            let up = if digit + 1 == p {
                index as u64 - digit * w
            } else {
                index as u64 + w
            };
            let down = if digit == 0 {
                index as u64 + (p - 1) * w
            } else {
                index as u64 - w
            };
            out.push(up as usize);
            out.push(down as usize);
        }
    }

    /// Componentwise sum of two points.
    pub fn add(&self, a: &TorusPoint, b: &TorusPoint) -> Result<TorusPoint> {
        self.check_point(a)?;
        self.check_point(b)?;
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        Ok(TorusPoint { coords })
    }

    /// Componentwise negation of a point.
    pub fn neg(&self, a: &TorusPoint) -> Result<TorusPoint> {
        self.check_point(a)?;
        let coords = a
            .coords
            .iter()
            .map(|&x| if x == 0 { 0 } else { self.p - x })
            .collect();
        Ok(TorusPoint { coords })
    }
}

/// A vertex of the torus: `n` residues modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<u32>,
}

impl TorusPoint {
    /// Builds a point, validating length and residue ranges against `params`.
    pub fn new(coords: Vec<u32>, params: &TorusParams) -> Result<Self> {
        let pt = TorusPoint { coords };
        params.check_point(&pt)?;
        Ok(pt)
    }

    /// The all-zero point.
    pub fn zero(params: &TorusParams) -> Self {
        TorusPoint {
            coords: vec![0; params.n()],
        }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    /// Comma-separated residues, e.g. `1,2`.
    pub fn to_line(&self) -> String {
        self.coords
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
