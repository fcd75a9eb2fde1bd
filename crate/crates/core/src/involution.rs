//! Fixed-point-free involutions and their partial permutation matrices.
//!
//! An [`Involution`] on `{1..N}` (N even) is a product of `N/2` disjoint
//! transpositions, stored as `(min, max)` pairs sorted by minimum. It is in
//! bijection with the full-rank strictly upper triangular square-zero 0/1
//! matrices: entry `(i, j)` is 1 exactly when the involution swaps `i < j`.
//!
//! Textual format used everywhere: comma-separated pairs `a-b` with `a < b`,
//! 1-based, e.g. `1-8,2-7,3-6,4-5`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A fixed-point-free involution on `{1..N}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct Involution {
    n_points: usize,
    pairs: Vec<(usize, usize)>,
}

impl Involution {
    /// Builds from transposition pairs; canonicalizes order and validates
    /// that the pairs are disjoint and cover `{1..N}`.
    pub fn new(n_points: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        if n_points == 0 || !n_points.is_multiple_of(2) {
            return Err(Error::input(format!(
                "point count must be a positive even integer, got {n_points}"
            )));
        }
        let mut canonical: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| if a < b { (a, b) } else { (b, a) })
            .collect();
        canonical.sort_unstable();
        let mut seen = vec![false; n_points + 1];
        for &(a, b) in &canonical {
            if a == b {
                return Err(Error::input(format!("pair {a}-{b} is not a transposition")));
            }
            for x in [a, b] {
                if x == 0 || x > n_points {
                    return Err(Error::input(format!(
                        "index {x} out of range 1..={n_points}"
                    )));
                }
                if seen[x] {
                    return Err(Error::input(format!("index {x} used more than once")));
                }
                seen[x] = true;
            }
        }
        if let Some(unused) = (1..=n_points).find(|&x| !seen[x]) {
            return Err(Error::input(format!(
                "not full rank: index {unused} unmatched"
            )));
        }
        Ok(Involution {
            n_points,
            pairs: canonical,
        })
    }

    /// Parses the `a-b,c-d,...` format against an explicit point count.
    pub fn parse(n_points: usize, text: &str) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        Involution::new(n_points, &pairs)
    }

    /// Parses the `a-b,c-d,...` format, inferring `N` as twice the number of
    /// pairs (the pairs must then cover `{1..N}` exactly).
    pub fn parse_full_rank(text: &str) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        Involution::new(2 * pairs.len(), &pairs)
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Number of transpositions, `N/2`.
    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Image of a point under the involution.
    pub fn apply(&self, x: usize) -> usize {
        for &(a, b) in &self.pairs {
            if a == x {
                return b;
            }
            if b == x {
                return a;
            }
        }
        x
    }

    pub fn to_matrix(&self) -> PartialPermutationMatrix {
        PartialPermutationMatrix {
            n: self.n_points,
            ones: self.pairs.iter().copied().collect(),
        }
    }

    /// Conjugate by the transposition `(p, q)`.
    pub fn conjugate_by_transposition(&self, p: usize, q: usize) -> Result<Self> {
        let map = |x: usize| {
            if x == p {
                q
            } else if x == q {
                p
            } else {
                x
            }
        };
        let pairs: Vec<(usize, usize)> =
            self.pairs.iter().map(|&(a, b)| (map(a), map(b))).collect();
        Involution::new(self.n_points, &pairs)
    }

    /// Drops the transposition containing `a` and `b`, leaving both unmatched.
    pub fn remove_pair(&self, a: usize, b: usize) -> Result<PartialInvolution> {
        let key = if a < b { (a, b) } else { (b, a) };
        if !self.pairs.contains(&key) {
            return Err(Error::input(format!(
                "pair {}-{} is not a transposition of this involution",
                key.0, key.1
            )));
        }
        Ok(PartialInvolution {
            n_points: self.n_points,
            pairs: self.pairs.iter().copied().filter(|&p| p != key).collect(),
        })
    }

    /// The flip across the anti-diagonal: each pair `(a, b)` maps to
    /// `(N+1-b, N+1-a)`. Reverses block types, and is itself an involution.
    pub fn anti_diagonal_dual(&self) -> Self {
        let n = self.n_points;
        let pairs: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(a, b)| (n + 1 - b, n + 1 - a))
            .collect();
        Involution::new(n, &pairs).expect("dual of a valid involution is valid")
    }

    /// Block composition of the matrix zero pattern: a block boundary sits
    /// after index `k` exactly when `k` is the min of its pair and `k + 1`
    /// is the max of its pair.
    ///
    /// Each block is then a run of pair-maxima followed by a run of
    /// pair-minima (block 0 is the leading minima run, the last block the
    /// trailing maxima run), which makes the first and last part equal the
    /// boundary zero counts and the whole type reverse under the
    /// anti-diagonal dual.
    pub fn block_type(&self) -> BlockType {
        let n = self.n_points;
        let mut is_min = vec![false; n + 1];
        for &(a, _) in &self.pairs {
            is_min[a] = true;
        }
        let mut parts = Vec::new();
        let mut block_start = 1usize;
        for k in 1..n {
            if is_min[k] && !is_min[k + 1] {
                parts.push(k + 1 - block_start);
                block_start = k + 1;
            }
        }
        parts.push(n + 1 - block_start);
        BlockType(parts)
    }

    /// `(C, R)`: leading zero columns and trailing zero rows of the matrix.
    /// These equal the first and last part of [`Self::block_type`].
    pub fn boundary_counts(&self) -> (usize, usize) {
        let min_max = self.pairs.iter().map(|&(_, b)| b).min().expect("nonempty");
        let max_min = self.pairs.iter().map(|&(a, _)| a).max().expect("nonempty");
        (min_max - 1, self.n_points - max_min)
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>> {
    let mut pairs = Vec::new();
    for chunk in text.split(',') {
        let chunk = chunk.trim();
        let (a, b) = chunk
            .split_once('-')
            .ok_or_else(|| Error::input(format!("bad pair '{chunk}', expected 'a-b'")))?;
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad index '{a}'")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("bad index '{b}'")))?;
        if a >= b {
            return Err(Error::input(format!("pair '{chunk}' must satisfy a < b")));
        }
        pairs.push((a, b));
    }
    Ok(pairs)
}

/// An involution that may leave points unmatched (rank below `N/2`).
/// Produced transiently by rank-dropping moves; never enumerated.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PartialInvolution {
    n_points: usize,
    pairs: Vec<(usize, usize)>,
}

impl PartialInvolution {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn rank(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

impl fmt::Display for PartialInvolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(a, b)| format!("{a}-{b}"))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// A 0/1 strictly upper triangular square-zero matrix with at most one entry
/// per row and per column, stored as its set of 1-positions (1-based).
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PartialPermutationMatrix {
    pub n: usize,
    pub ones: BTreeSet<(usize, usize)>,
}

impl PartialPermutationMatrix {
    pub fn new(n: usize, ones: BTreeSet<(usize, usize)>) -> Result<Self> {
        let mut rows = BTreeSet::new();
        let mut cols = BTreeSet::new();
        for &(r, c) in &ones {
            if r == 0 || c == 0 || r > n || c > n {
                return Err(Error::input(format!("position ({r},{c}) out of range")));
            }
            if r >= c {
                return Err(Error::input(format!(
                    "position ({r},{c}) is not strictly upper triangular"
                )));
            }
            if !rows.insert(r) {
                return Err(Error::input(format!("row {r} has more than one entry")));
            }
            if !cols.insert(c) {
                return Err(Error::input(format!("column {c} has more than one entry")));
            }
        }
        if let Some(j) = rows.intersection(&cols).next() {
            return Err(Error::input(format!(
                "square is nonzero: index {j} is both a row and a column of an entry"
            )));
        }
        Ok(PartialPermutationMatrix { n, ones })
    }

    /// Inverse of [`Involution::to_matrix`]; requires every index matched.
    pub fn to_involution(&self) -> Result<Involution> {
        let pairs: Vec<(usize, usize)> = self.ones.iter().copied().collect();
        Involution::new(self.n, &pairs)
    }
}

/// The composition `(t_0, ..., t_l)` of `N` recording the zero diagonal
/// block sizes of a nilpotent upper triangular block matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct BlockType(pub Vec<usize>);

impl BlockType {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// `l`: one less than the number of parts.
    pub fn fold_count(&self) -> usize {
        self.0.len() - 1
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn reversed(&self) -> BlockType {
        BlockType(self.0.iter().rev().copied().collect())
    }
}

impl fmt::Display for BlockType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|t| t.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// All fixed-point-free involutions on `{1..N}`, in lexicographic pair
/// order. Guarded to `N <= 12`; the count is `(N-1)!! = 1, 3, 15, 105, ...`.
pub fn enumerate_rp(n_points: usize) -> Result<Vec<Involution>> {
    if !n_points.is_multiple_of(2) || !(2..=12).contains(&n_points) {
        return Err(Error::input(format!(
            "enumeration requires an even N with 2 <= N <= 12, got {n_points}"
        )));
    }
    let mut out = Vec::new();
    let unmatched: Vec<usize> = (1..=n_points).collect();
    let mut pairs = Vec::with_capacity(n_points / 2);
    fn recurse(
        n_points: usize,
        unmatched: &[usize],
        pairs: &mut Vec<(usize, usize)>,
        out: &mut Vec<Involution>,
    ) {
        if unmatched.is_empty() {
            out.push(Involution::new(n_points, pairs).expect("matching is valid"));
            return;
        }
        let a = unmatched[0];
        for idx in 1..unmatched.len() {
            let b = unmatched[idx];
            let rest: Vec<usize> = unmatched[1..].iter().copied().filter(|&x| x != b).collect();
            pairs.push((a, b));
            recurse(n_points, &rest, pairs, out);
            pairs.pop();
        }
    }
    recurse(n_points, &unmatched, &mut pairs, &mut out);
    out.sort();
    Ok(out)
}

/// `(N-1)!!`, the size of the enumeration.
pub fn double_factorial_odd(n_points: usize) -> u64 {
    let mut acc = 1u64;
    let mut k = n_points as u64 - 1;
    while k > 1 {
        acc *= k;
        k -= 2;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(text: &str) -> Involution {
        Involution::parse_full_rank(text).unwrap()
    }

    #[test]
    fn enumeration_small_cases() {
        let rp2 = enumerate_rp(2).unwrap();
        assert_eq!(rp2, vec![inv("1-2")]);

        let rp4 = enumerate_rp(4).unwrap();
        assert_eq!(rp4, vec![inv("1-2,3-4"), inv("1-3,2-4"), inv("1-4,2-3")]);

        assert_eq!(enumerate_rp(8).unwrap().len(), 105);
        for n in [2usize, 4, 6, 8] {
            assert_eq!(
                enumerate_rp(n).unwrap().len() as u64,
                double_factorial_odd(n)
            );
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(enumerate_rp(7).is_err());
        assert!(enumerate_rp(0).is_err());
        assert!(enumerate_rp(14).is_err());
    }

    #[test]
    fn matrix_correspondence() {
        let m = inv("1-2,3-4").to_matrix();
        assert_eq!(m.ones, BTreeSet::from([(1, 2), (3, 4)]));
        let m = inv("1-8,2-7,3-6,4-5").to_matrix();
        assert_eq!(m.ones, BTreeSet::from([(1, 8), (2, 7), (3, 6), (4, 5)]));
    }

    #[test]
    fn matrix_round_trip_rp6() {
        for sigma in enumerate_rp(6).unwrap() {
            assert_eq!(sigma.to_matrix().to_involution().unwrap(), sigma);
        }
    }

    #[test]
    fn from_matrix_requires_full_rank() {
        let m = PartialPermutationMatrix::new(4, BTreeSet::from([(1, 2)])).unwrap();
        let err = m.to_involution().unwrap_err().to_string();
        assert!(err.contains("index 3 unmatched"), "got: {err}");

        let m = PartialPermutationMatrix::new(4, BTreeSet::from([(1, 4), (2, 3)])).unwrap();
        assert_eq!(m.to_involution().unwrap(), inv("1-4,2-3"));
    }

    #[test]
    fn matrix_validation() {
        // (1,2),(2,3) squares to a nonzero matrix
        assert!(PartialPermutationMatrix::new(3, BTreeSet::from([(1, 2), (2, 3)])).is_err());
        assert!(PartialPermutationMatrix::new(3, BTreeSet::from([(2, 2)])).is_err());
        assert!(PartialPermutationMatrix::new(3, BTreeSet::from([(3, 1)])).is_err());
    }

    #[test]
    fn block_types() {
        assert_eq!(
            inv("1-2,3-4,5-6,7-8").block_type().parts(),
            &[1, 2, 2, 2, 1]
        );
        assert_eq!(inv("1-2,3-8,4-7,5-6").block_type().parts(), &[1, 4, 3]);
        assert_eq!(inv("1-4,2-3,5-8,6-7").block_type().parts(), &[2, 4, 2]);
        assert_eq!(inv("1-8,2-7,3-6,4-5").block_type().parts(), &[4, 4]);
        assert_eq!(inv("1-6,2-3,4-5,7-8").block_type().parts(), &[2, 2, 3, 1]);
        assert_eq!(inv("1-2,3-8,4-5,6-7").block_type().parts(), &[1, 3, 2, 2]);
        assert_eq!(inv("1-2,3-6,4-5,7-8").block_type().parts(), &[1, 3, 3, 1]);
        assert_eq!(inv("1-8,2-3,4-5,6-7").block_type().parts(), &[2, 2, 2, 2]);
    }

    #[test]
    fn boundary_count_examples() {
        assert_eq!(inv("1-2,3-8,4-7,5-6").boundary_counts(), (1, 3));
        assert_eq!(inv("1-8,2-7,3-6,4-5").boundary_counts(), (4, 4));
        assert_eq!(inv("1-2,3-4").boundary_counts(), (1, 1));
    }

    #[test]
    fn boundary_counts_match_block_type_ends() {
        for sigma in enumerate_rp(8).unwrap() {
            let t = sigma.block_type();
            let (c, r) = sigma.boundary_counts();
            assert_eq!(c, t.parts()[0], "{sigma}");
            assert_eq!(r, *t.parts().last().unwrap(), "{sigma}");
        }
    }

    #[test]
    fn dual_examples() {
        assert_eq!(
            inv("1-6,2-3,4-5,7-8").anti_diagonal_dual(),
            inv("1-2,3-8,4-5,6-7")
        );
        let self_dual = inv("1-2,3-4,5-6,7-8");
        assert_eq!(self_dual.anti_diagonal_dual(), self_dual);
    }

    #[test]
    fn dual_is_involutive_and_reverses_types() {
        for sigma in enumerate_rp(8).unwrap() {
            let dual = sigma.anti_diagonal_dual();
            assert_eq!(dual.anti_diagonal_dual(), sigma);
            assert_eq!(dual.block_type(), sigma.block_type().reversed());
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let text = "1-8,2-7,3-6,4-5";
        assert_eq!(inv(text).to_string(), text);
        // canonicalization sorts pairs by minimum
        assert_eq!(
            Involution::parse(4, "3-4,1-2").unwrap().to_string(),
            "1-2,3-4"
        );
        assert!(Involution::parse(4, "1-2").is_err());
        assert!(Involution::parse(4, "2-1,3-4").is_err());
        assert!(Involution::parse(4, "1-2,2-4").is_err());
        assert!(Involution::parse(3, "1-2,3-4").is_err());
    }

    #[test]
    fn interior_parts_at_least_two_on_rp8() {
        for sigma in enumerate_rp(8).unwrap() {
            let t = sigma.block_type();
            let parts = t.parts();
            assert!(parts[0] >= 1 && *parts.last().unwrap() >= 1);
            for &p in &parts[1..parts.len() - 1] {
                assert!(p >= 2, "interior part below 2 for {sigma}: {t}");
            }
        }
    }
}
