//! Vertex subsets of the torus and their canonical text format.
//!
//! Canonical code file format: line 1 is `p=<p> n=<n>`; every following line
//! is one codeword as comma-separated residues, sorted ascending by vertex
//! index. The format is bit-exact: the reader rejects anything the writer
//! would not produce.

use std::cmp::Ordering;
use std::io::{BufRead, Write};

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::torus::{TorusParams, TorusPoint};

/// A subset of `Z_p^n`, stored as a bit-vector over vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSet {
    params: TorusParams,
    bits: BitSet,
}

impl CodeSet {
    pub fn empty(params: TorusParams) -> Result<Self> {
        let size = params.vertex_count_usize()?;
        Ok(CodeSet {
            params,
            bits: BitSet::new(size),
        })
    }

    /// The full vertex set.
    pub fn full(params: TorusParams) -> Result<Self> {
        let mut code = CodeSet::empty(params)?;
        for i in 0..code.bits.len() {
            code.bits.insert(i);
        }
        Ok(code)
    }

    pub fn from_points<I>(params: TorusParams, points: I) -> Result<Self>
    where
        I: IntoIterator<Item = TorusPoint>,
    {
        let mut code = CodeSet::empty(params)?;
        for pt in points {
            let idx = params.index_of(&pt)?;
            code.bits.insert(idx);
        }
        Ok(code)
    }

    pub fn from_indices<I>(params: TorusParams, indices: I) -> Result<Self>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut code = CodeSet::empty(params)?;
        for idx in indices {
            code.insert_index(idx)?;
        }
        Ok(code)
    }

    pub fn params(&self) -> &TorusParams {
        &self.params
    }

    /// Cardinality of the set.
    pub fn len(&self) -> usize {
        self.bits.count()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn insert_index(&mut self, idx: usize) -> Result<bool> {
        if idx >= self.bits.len() {
            return Err(Error::IndexOutOfRange {
                index: idx as u64,
                size: self.bits.len() as u64,
            });
        }
        Ok(self.bits.insert(idx))
    }

    pub fn remove_index(&mut self, idx: usize) -> Result<bool> {
        if idx >= self.bits.len() {
            return Err(Error::IndexOutOfRange {
                index: idx as u64,
                size: self.bits.len() as u64,
            });
        }
        Ok(self.bits.remove(idx))
    }

    pub fn insert(&mut self, pt: &TorusPoint) -> Result<bool> {
        let idx = self.params.index_of(pt)?;
        Ok(self.bits.insert(idx))
    }

    #[inline]
    pub fn contains_index(&self, idx: usize) -> bool {
        self.bits.contains(idx)
    }

    pub fn contains(&self, pt: &TorusPoint) -> Result<bool> {
        Ok(self.bits.contains(self.params.index_of(pt)?))
    }

    /// Ascending iterator over member indices.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter_ones()
    }

    /// Members as points, ascending by index.
    pub fn points(&self) -> impl Iterator<Item = TorusPoint> + '_ {
        self.bits
            .iter_ones()
            .map(move |i| self.params.point_of(i).expect("stored index in range"))
    }

    /// The translate `{x + g : x ∈ self}`.
    pub fn translate(&self, g: &TorusPoint) -> Result<CodeSet> {
        let mut out = CodeSet::empty(self.params)?;
        for pt in self.points() {
            let moved = self.params.add(&pt, g)?;
            out.insert(&moved)?;
        }
        Ok(out)
    }

    /// Applies a coordinate permutation: output coordinate `a` reads input
    /// coordinate `perm[a]`.
    pub fn permute_coords(&self, perm: &[usize]) -> Result<CodeSet> {
        let n = self.params.n();
        if perm.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: perm.len(),
            });
        }
        let mut seen = vec![false; n];
        for &a in perm {
            if a >= n || seen[a] {
                return Err(Error::invalid("not a permutation of coordinate axes"));
            }
            seen[a] = true;
        }
        let mut out = CodeSet::empty(self.params)?;
        for pt in self.points() {
            let coords: Vec<u32> = perm.iter().map(|&a| pt.coords()[a]).collect();
            out.insert(&TorusPoint::new(coords, &self.params)?)?;
        }
        Ok(out)
    }

    /// Negates one coordinate: `x_axis → −x_axis`.
    pub fn negate_coord(&self, axis: usize) -> Result<CodeSet> {
        let n = self.params.n();
        if axis >= n {
            return Err(Error::invalid(format!("axis {axis} out of range for n = {n}")));
        }
        let p = self.params.p();
        let mut out = CodeSet::empty(self.params)?;
        for pt in self.points() {
            let mut coords = pt.coords().to_vec();
            coords[axis] = if coords[axis] == 0 { 0 } else { p - coords[axis] };
            out.insert(&TorusPoint::new(coords, &self.params)?)?;
        }
        Ok(out)
    }

    /// Canonical ordering used to sort families: by the ascending member
    /// index sequence.
    pub fn canonical_cmp(&self, other: &CodeSet) -> Ordering {
        debug_assert_eq!(self.params, other.params);
        self.bits.seq_cmp(&other.bits)
    }

    /// Writes the canonical code file.
    pub fn write_canonical<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "p={} n={}", self.params.p(), self.params.n())?;
        for pt in self.points() {
            writeln!(w, "{}", pt.to_line())?;
        }
        Ok(())
    }

    pub fn to_canonical_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_canonical(&mut buf).expect("write to Vec cannot fail");
        String::from_utf8(buf).expect("canonical format is ASCII")
    }

    /// Parses the canonical code file, rejecting non-canonical input
    /// (bad header, unreduced residues, unsorted or duplicate codewords).
    pub fn read_canonical<R: BufRead>(r: R) -> Result<CodeSet> {
        let mut lines = r.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty file, expected `p=<p> n=<n>` header"))?;
        let header = header?;
        let params = parse_header(&header).ok_or_else(|| {
            Error::parse(1, format!("malformed header `{header}`, expected `p=<p> n=<n>`"))
        })??;
        let mut code = CodeSet::empty(params)?;
        let mut prev: Option<usize> = None;
        for (lineno, line) in lines {
            let line = line?;
            let pt = parse_codeword(&line, &params)
                .map_err(|msg| Error::parse(lineno + 1, msg))?;
            let idx = params.index_of(&pt)?;
            if let Some(prev) = prev {
                if idx <= prev {
                    return Err(Error::parse(
                        lineno + 1,
                        "codewords must be strictly ascending by vertex index",
                    ));
                }
            }
            prev = Some(idx);
            code.bits.insert(idx);
        }
        Ok(code)
    }
}

fn parse_header(line: &str) -> Option<Result<TorusParams>> {
    let mut it = line.split(' ');
    let p = it.next()?.strip_prefix("p=")?.parse::<u32>().ok()?;
    let n = it.next()?.strip_prefix("n=")?.parse::<usize>().ok()?;
    if it.next().is_some() {
        return None;
    }
    Some(TorusParams::new(p, n))
}

fn parse_codeword(line: &str, params: &TorusParams) -> std::result::Result<TorusPoint, String> {
    if line.is_empty() {
        return Err("empty codeword line".to_string());
    }
    let mut coords = Vec::with_capacity(params.n());
    for tok in line.split(',') {
        let c: u32 = tok
            .parse()
            .map_err(|_| format!("`{tok}` is not a residue"))?;
        if c >= params.p() {
            return Err(format!("residue {c} not reduced modulo p = {}", params.p()));
        }
        coords.push(c);
    }
    if coords.len() != params.n() {
        return Err(format!(
            "expected {} coordinates, got {}",
            params.n(),
            coords.len()
        ));
    }
    TorusPoint::new(coords, params).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32) -> TorusParams {
        TorusParams::from_p(p).unwrap()
    }

    fn point(params: &TorusParams, coords: &[u32]) -> TorusPoint {
        TorusPoint::new(coords.to_vec(), params).unwrap()
    }

    #[test]
    fn cardinality_and_membership() {
        let pr = params(5);
        let mut code = CodeSet::empty(pr).unwrap();
        assert!(code.is_empty());
        assert!(code.insert(&point(&pr, &[1, 2])).unwrap());
        assert!(!code.insert(&point(&pr, &[1, 2])).unwrap());
        assert_eq!(code.len(), 1);
        assert!(code.contains(&point(&pr, &[1, 2])).unwrap());
        assert!(!code.contains(&point(&pr, &[0, 0])).unwrap());
        assert_eq!(CodeSet::full(pr).unwrap().len(), 25);
    }

    #[test]
    fn canonical_round_trip() {
        let pr = params(5);
        let code = CodeSet::from_points(
            pr,
            [[0u32, 0], [1, 2], [2, 4], [3, 1], [4, 3]]
                .iter()
                .map(|c| point(&pr, c)),
        )
        .unwrap();
        let text = code.to_canonical_string();
        assert_eq!(text, "p=5 n=2\n0,0\n1,2\n2,4\n3,1\n4,3\n");
        let back = CodeSet::read_canonical(text.as_bytes()).unwrap();
        assert_eq!(back, code);
    }

    #[test]
    fn reader_rejects_non_canonical_input() {
        let unsorted = "p=5 n=2\n1,2\n0,0\n";
        let err = CodeSet::read_canonical(unsorted.as_bytes()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");

        let dup = "p=5 n=2\n1,2\n1,2\n";
        assert!(CodeSet::read_canonical(dup.as_bytes()).is_err());

        let bad_header = "p=5, n=2\n";
        assert!(matches!(
            CodeSet::read_canonical(bad_header.as_bytes()),
            Err(Error::Parse { line: 1, .. })
        ));

        let unreduced = "p=5 n=2\n5,0\n";
        assert!(matches!(
            CodeSet::read_canonical(unreduced.as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));

        let wrong_arity = "p=5 n=2\n1,2,3\n";
        assert!(CodeSet::read_canonical(wrong_arity.as_bytes()).is_err());

        let bad_shape = "p=6 n=3\n";
        assert!(CodeSet::read_canonical(bad_shape.as_bytes()).is_err());
    }

    #[test]
    fn translate_preserves_cardinality() {
        let pr = params(5);
        let code = CodeSet::from_points(
            pr,
            [[0u32, 0], [1, 2], [2, 4], [3, 1], [4, 3]]
                .iter()
                .map(|c| point(&pr, c)),
        )
        .unwrap();
        let g = point(&pr, &[1, 1]);
        let moved = code.translate(&g).unwrap();
        assert_eq!(moved.len(), code.len());
        assert!(moved.contains(&point(&pr, &[1, 1])).unwrap());
    }

    #[test]
    fn permute_and_negate() {
        let pr = params(5);
        let code = CodeSet::from_points(pr, [point(&pr, &[1, 2])]).unwrap();
        let swapped = code.permute_coords(&[1, 0]).unwrap();
        assert!(swapped.contains(&point(&pr, &[2, 1])).unwrap());
        let negated = code.negate_coord(1).unwrap();
        assert!(negated.contains(&point(&pr, &[1, 3])).unwrap());
        assert!(code.permute_coords(&[0, 0]).is_err());
        assert!(code.negate_coord(2).is_err());
    }

    #[test]
    fn canonical_order_is_by_member_sequence() {
        let pr = params(5);
        let a = CodeSet::from_indices(pr, [0usize, 9]).unwrap();
        let b = CodeSet::from_indices(pr, [1usize, 2]).unwrap();
        assert_eq!(a.canonical_cmp(&b), Ordering::Less);
        assert_eq!(b.canonical_cmp(&a), Ordering::Greater);
    }
}
