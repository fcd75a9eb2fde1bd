//! The five moves generating the closure order on Borel orbits.
//!
//! With `(p, q)` stored so that `p < q`, the guards are:
//!
//! - type I:   `sigma(p) = q`; multiplies by the transposition, dropping rank
//! - type II:  `sigma(p) = p < q < sigma(q)`; conjugation
//! - type III: `sigma(q) < sigma(p) < p < q`; conjugation
//! - type IV:  `sigma(p) < p < q = sigma(q)`; conjugation
//! - type V:   `p < sigma(p) < sigma(q) < q`; conjugation
//!
//! Types II and IV require a fixed point, so they never apply to the
//! full-rank involutions handled here; types III and V preserve full rank,
//! and type I leaves two points unmatched.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::involution::{Involution, PartialInvolution};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum MoveKind {
    I,
    II,
    III,
    IV,
    V,
}

impl MoveKind {
    pub const ALL: [MoveKind; 5] = [
        MoveKind::I,
        MoveKind::II,
        MoveKind::III,
        MoveKind::IV,
        MoveKind::V,
    ];

    /// Whether the move keeps the result inside the full-rank involutions.
    pub fn preserves_rank(&self) -> bool {
        matches!(self, MoveKind::III | MoveKind::V)
    }
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            MoveKind::I => "I",
            MoveKind::II => "II",
            MoveKind::III => "III",
            MoveKind::IV => "IV",
            MoveKind::V => "V",
        };
        write!(f, "{s}")
    }
}

/// A move instance: the kind plus the transposition it multiplies by
/// (type I) or conjugates by (types II-V), stored with `p < q`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Move {
    pub kind: MoveKind,
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{})", self.kind, self.p, self.q)
    }
}

/// Result of a move: either another full-rank involution, or a rank-dropped
/// partial involution (type I only).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum MoveOutcome {
    Involution(Involution),
    RankDropped(PartialInvolution),
}

/// Every legal `(move, result)` pair for the requested kinds, ordered by
/// kind then by `(p, q)`.
pub fn applicable_moves(
    sigma: &Involution,
    kinds: &BTreeSet<MoveKind>,
) -> Vec<(Move, MoveOutcome)> {
    let n = sigma.n_points();
    let mut out = Vec::new();
    for &kind in kinds {
        match kind {
            MoveKind::I => {
                for &(a, b) in sigma.pairs() {
                    let dropped = sigma.remove_pair(a, b).expect("pair exists");
                    out.push((Move { kind, p: a, q: b }, MoveOutcome::RankDropped(dropped)));
                }
            }
            // types II and IV need a fixed point; full-rank involutions have none
            MoveKind::II | MoveKind::IV => {}
            MoveKind::III => {
                for p in 1..=n {
                    for q in (p + 1)..=n {
                        if sigma.apply(q) < sigma.apply(p) && sigma.apply(p) < p {
                            let conj = sigma
                                .conjugate_by_transposition(p, q)
                                .expect("conjugation preserves validity");
                            out.push((Move { kind, p, q }, MoveOutcome::Involution(conj)));
                        }
                    }
                }
            }
            MoveKind::V => {
                for p in 1..=n {
                    for q in (p + 1)..=n {
                        if p < sigma.apply(p)
                            && sigma.apply(p) < sigma.apply(q)
                            && sigma.apply(q) < q
                        {
                            let conj = sigma
                                .conjugate_by_transposition(p, q)
                                .expect("conjugation preserves validity");
                            out.push((Move { kind, p, q }, MoveOutcome::Involution(conj)));
                        }
                    }
                }
            }
        }
    }
    out
}

/// Applies a single move, checking its guard. The error names the violated
/// inequality chain.
pub fn apply_move(sigma: &Involution, mv: Move) -> Result<MoveOutcome> {
    let Move { kind, p, q } = mv;
    if p >= q || q > sigma.n_points() || p == 0 {
        return Err(Error::input(format!(
            "move parameters must satisfy 1 <= p < q <= {}, got ({p},{q})",
            sigma.n_points()
        )));
    }
    let sp = sigma.apply(p);
    let sq = sigma.apply(q);
    match kind {
        MoveKind::I => {
            if sp != q {
                return Err(Error::input(format!(
                    "type I requires sigma(p) = q; got sigma({p})={sp}, q={q}"
                )));
            }
            Ok(MoveOutcome::RankDropped(sigma.remove_pair(p, q)?))
        }
        MoveKind::II => {
            if !(sp == p && p < q && q < sq) {
                return Err(Error::input(format!(
                    "type II requires sigma(p) = p < q < sigma(q); \
                     got sigma({p})={sp}, sigma({q})={sq}"
                )));
            }
            Ok(MoveOutcome::Involution(
                sigma.conjugate_by_transposition(p, q)?,
            ))
        }
        MoveKind::III => {
            if !(sq < sp && sp < p) {
                return Err(Error::input(format!(
                    "type III requires sigma(q) < sigma(p) < p < q; \
                     got sigma({q})={sq}, sigma({p})={sp}, p={p}, q={q}"
                )));
            }
            Ok(MoveOutcome::Involution(
                sigma.conjugate_by_transposition(p, q)?,
            ))
        }
        MoveKind::IV => {
            if !(sp < p && sq == q) {
                return Err(Error::input(format!(
                    "type IV requires sigma(p) < p < q = sigma(q); \
                     got sigma({p})={sp}, sigma({q})={sq}"
                )));
            }
            Ok(MoveOutcome::Involution(
                sigma.conjugate_by_transposition(p, q)?,
            ))
        }
        MoveKind::V => {
            if !(p < sp && sp < sq && sq < q) {
                return Err(Error::input(format!(
                    "type V requires p < sigma(p) < sigma(q) < q; \
                     got p={p}, sigma({p})={sp}, sigma({q})={sq}, q={q}"
                )));
            }
            Ok(MoveOutcome::Involution(
                sigma.conjugate_by_transposition(p, q)?,
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::involution::enumerate_rp;

    fn inv(text: &str) -> Involution {
        Involution::parse_full_rank(text).unwrap()
    }

    fn kinds(list: &[MoveKind]) -> BTreeSet<MoveKind> {
        list.iter().copied().collect()
    }

    #[test]
    fn type_iii_example() {
        let sigma = inv("1-2,3-4,5-8,6-7");
        let moves = applicable_moves(&sigma, &kinds(&[MoveKind::III]));
        let expected = (
            Move {
                kind: MoveKind::III,
                p: 7,
                q: 8,
            },
            MoveOutcome::Involution(inv("1-2,3-4,5-7,6-8")),
        );
        assert!(moves.contains(&expected), "moves: {moves:?}");
    }

    #[test]
    fn type_v_example() {
        let sigma = inv("1-2,3-4");
        let moves = applicable_moves(&sigma, &kinds(&[MoveKind::V]));
        assert_eq!(
            moves,
            vec![(
                Move {
                    kind: MoveKind::V,
                    p: 1,
                    q: 4,
                },
                MoveOutcome::Involution(inv("1-3,2-4")),
            )]
        );
    }

    #[test]
    fn apply_move_examples() {
        let result = apply_move(
            &inv("1-4,2-3"),
            Move {
                kind: MoveKind::III,
                p: 3,
                q: 4,
            },
        )
        .unwrap();
        assert_eq!(result, MoveOutcome::Involution(inv("1-3,2-4")));

        let result = apply_move(
            &inv("1-2,3-4"),
            Move {
                kind: MoveKind::V,
                p: 1,
                q: 4,
            },
        )
        .unwrap();
        assert_eq!(result, MoveOutcome::Involution(inv("1-3,2-4")));
    }

    #[test]
    fn apply_move_guard_failure() {
        let err = apply_move(
            &inv("1-2,3-4"),
            Move {
                kind: MoveKind::III,
                p: 3,
                q: 4,
            },
        )
        .unwrap_err()
        .to_string();
        assert!(err.contains("type III requires"), "got: {err}");
        assert!(err.contains("sigma(4)=3"), "got: {err}");
    }

    #[test]
    fn fixed_point_moves_always_rejected() {
        let sigma = inv("1-2,3-4");
        for kind in [MoveKind::II, MoveKind::IV] {
            let err = apply_move(&sigma, Move { kind, p: 1, q: 3 })
                .unwrap_err()
                .to_string();
            assert!(err.contains("requires"), "got: {err}");
        }
    }

    #[test]
    fn type_i_drops_rank() {
        let sigma = inv("1-2,3-4");
        let moves = applicable_moves(&sigma, &kinds(&[MoveKind::I]));
        assert_eq!(moves.len(), 2);
        for (mv, outcome) in moves {
            assert_eq!(mv.kind, MoveKind::I);
            match outcome {
                MoveOutcome::RankDropped(partial) => assert_eq!(partial.rank(), 1),
                other => panic!("expected rank drop, got {other:?}"),
            }
        }
    }

    #[test]
    fn types_ii_and_iv_never_apply_to_full_rank() {
        for n in [4usize, 6, 8] {
            for sigma in enumerate_rp(n).unwrap() {
                assert!(applicable_moves(&sigma, &kinds(&[MoveKind::II, MoveKind::IV])).is_empty());
            }
        }
    }

    #[test]
    fn rank_preservation_on_rp8() {
        let all = kinds(&MoveKind::ALL);
        for sigma in enumerate_rp(8).unwrap() {
            for (mv, outcome) in applicable_moves(&sigma, &all) {
                match (mv.kind.preserves_rank(), outcome) {
                    (true, MoveOutcome::Involution(tau)) => {
                        assert_eq!(tau.rank(), sigma.rank());
                        assert_eq!(tau.n_points(), sigma.n_points());
                    }
                    (false, MoveOutcome::RankDropped(partial)) => {
                        assert_eq!(partial.rank(), sigma.rank() - 1);
                    }
                    (expected, got) => {
                        panic!(
                            "kind {} gave unexpected outcome {got:?} (rank-preserving: {expected})",
                            mv.kind
                        )
                    }
                }
            }
        }
    }
}
