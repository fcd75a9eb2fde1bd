//! Verification of the six conditions on a polynomial matrix instance.
//!
//! For an `N x N` matrix `D` over `K[x1..xr]` with `N = 2n` the conditions
//! are: strictly upper triangular; `D^2 = 0`; zero constant terms; rank `n`
//! at every nonzero point; a nonincreasing degree tuple `d` with
//! `deg p_ij = d_i - d_j + 1` on nonzero entries; and `C` leading zero
//! columns with `R` trailing zero rows. The report then evaluates the
//! inequality `N >= 2^(r-1) * (R + C)` and classifies the instance.
//!
//! Condition 4 quantifies over all nonzero points of an algebraically closed
//! field, which no finite computation can decide. Verdicts are therefore
//! three-tiered: `EXHAUSTIVE_PASS` (every point of `F_p^r`), `SAMPLED_PASS(k)`,
//! or `FAIL` with a witness point.

use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::involution::BlockType;
use crate::poly::{Homogeneity, Poly};
use crate::polymatrix::{matrix_to_file, PolyMatrix};

/// A candidate matrix together with an optional declared degree tuple.
pub struct ConjectureInstance<K: Field> {
    matrix: PolyMatrix<K>,
    degree_tuple: Option<Vec<i64>>,
}

impl<K: Field> ConjectureInstance<K> {
    pub fn new(matrix: PolyMatrix<K>, degree_tuple: Option<Vec<i64>>) -> Result<Self> {
        if !matrix.n().is_multiple_of(2) {
            return Err(Error::input(format!(
                "instance dimension must be even, got {}",
                matrix.n()
            )));
        }
        if matrix.n_vars() == 0 {
            return Err(Error::input("instance needs at least one variable"));
        }
        if let Some(d) = &degree_tuple {
            if d.len() != matrix.n() {
                return Err(Error::input(format!(
                    "degree tuple has {} entries, expected {}",
                    d.len(),
                    matrix.n()
                )));
            }
            if d.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::input("degree tuple must be nonincreasing"));
            }
        }
        Ok(ConjectureInstance {
            matrix,
            degree_tuple,
        })
    }

    pub fn matrix(&self) -> &PolyMatrix<K> {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.n()
    }

    pub fn rank_target(&self) -> usize {
        self.matrix.n() / 2
    }

    pub fn degree_tuple(&self) -> Option<&[i64]> {
        self.degree_tuple.as_deref()
    }
}

/// How condition 4 is checked.
#[derive(Clone, Copy, Debug)]
pub enum Mode {
    /// Every nonzero point of `F_p^r`; requires `p^r <= 10^7`.
    Exhaustive,
    /// `points` random nonzero points drawn from a seeded generator.
    Sample { points: usize, seed: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    ExhaustivePass { points: u64 },
    SampledPass { points: u64 },
    Fail { witness: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        !matches!(self, Verdict::Fail { .. })
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Verdict::Pass => json!({"verdict": "PASS"}),
            Verdict::ExhaustivePass { points } => {
                json!({"verdict": "EXHAUSTIVE_PASS", "points": points})
            }
            Verdict::SampledPass { points } => {
                json!({"verdict": "SAMPLED_PASS", "points": points})
            }
            Verdict::Fail { witness } => json!({"verdict": "FAIL", "witness": witness}),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Classification {
    Consistent,
    CounterexampleCandidate,
    InvalidInstance,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::Consistent => "consistent",
            Classification::CounterexampleCandidate => "counterexample-candidate",
            Classification::InvalidInstance => "invalid-instance",
        }
    }
}

#[derive(Clone, Debug)]
pub struct InequalityReport {
    pub lhs: usize,
    pub rhs: BigInt,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct ConditionReport {
    pub c1_strictly_upper: Verdict,
    pub c2_square_zero: Verdict,
    pub c3_zero_constant_terms: Verdict,
    pub c4_rank_at_points: Verdict,
    pub c5_degree_tuple: Verdict,
    pub c6_boundary_zeros: Verdict,
    /// Maximal number of leading identically-zero columns.
    pub col_zero_prefix: usize,
    /// Maximal number of trailing identically-zero rows.
    pub row_zero_suffix: usize,
    /// Declared or inferred degree tuple, when available.
    pub degree_tuple: Option<Vec<i64>>,
    pub inequality: InequalityReport,
    pub classification: Classification,
}

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        [
            &self.c1_strictly_upper,
            &self.c2_square_zero,
            &self.c3_zero_constant_terms,
            &self.c4_rank_at_points,
            &self.c5_degree_tuple,
            &self.c6_boundary_zeros,
        ]
        .iter()
        .all(|v| v.passed())
    }

    pub fn conditions_json(&self) -> serde_json::Value {
        json!({
            "c1": self.c1_strictly_upper.to_json(),
            "c2": self.c2_square_zero.to_json(),
            "c3": self.c3_zero_constant_terms.to_json(),
            "c4": self.c4_rank_at_points.to_json(),
            "c5": self.c5_degree_tuple.to_json(),
            "c6": self.c6_boundary_zeros.to_json(),
        })
    }
}

/// Truth of `N >= 2^(r-1) * (R + C)` in unbounded integers.
/// All four arguments must be positive.
pub fn conjecture_inequality(n: usize, r: usize, row_count: usize, col_count: usize) -> bool {
    assert!(
        n >= 1 && r >= 1 && row_count >= 1 && col_count >= 1,
        "inequality arguments must be positive"
    );
    BigInt::from(n) >= inequality_rhs(r, row_count, col_count)
}

fn inequality_rhs(r: usize, row_count: usize, col_count: usize) -> BigInt {
    (BigInt::from(1) << (r - 1)) * BigInt::from(row_count + col_count)
}

/// Runs the six-condition check.
pub fn check_conditions<K: Field>(
    inst: &ConjectureInstance<K>,
    mode: Mode,
) -> Result<ConditionReport> {
    let m = inst.matrix();
    let field = m.field().clone();
    let n = m.n();

    let c1 = match m.nonzero_positions().find(|&(r, c, _)| r >= c) {
        None => Verdict::Pass,
        Some((r, c, p)) => Verdict::Fail {
            witness: format!(
                "entry ({r},{c}) = {} is not strictly above the diagonal",
                p.render(&field)
            ),
        },
    };

    let c2 = match m.square_zero_witness()? {
        None => Verdict::Pass,
        Some((r, c, p)) => Verdict::Fail {
            witness: format!("D^2 has entry ({r},{c}) = {}", p.render(&field)),
        },
    };

    let c3 = match m
        .nonzero_positions()
        .find(|(_, _, p)| !field.is_zero(&p.constant_term(&field)))
    {
        None => Verdict::Pass,
        Some((r, c, p)) => Verdict::Fail {
            witness: format!(
                "entry ({r},{c}) has constant term {}",
                field.format_elem(&p.constant_term(&field))
            ),
        },
    };

    let c4 = check_rank_condition(inst, mode)?;

    let (c5, tuple) = check_degree_tuple(inst);

    let col_zero_prefix = (1..=n)
        .take_while(|&j| (1..=n).all(|i| m.get(i, j).is_none()))
        .count();
    let row_zero_suffix = (1..=n)
        .rev()
        .take_while(|&i| (1..=n).all(|j| m.get(i, j).is_none()))
        .count();
    let c6 = if col_zero_prefix >= 1 && row_zero_suffix >= 1 {
        Verdict::Pass
    } else {
        Verdict::Fail {
            witness: format!(
                "boundary zero counts C={col_zero_prefix}, R={row_zero_suffix} must both be positive"
            ),
        }
    };

    let r = m.n_vars();
    // the inequality is evaluated with C, R clamped to 1 so a degenerate
    // instance still yields a well-defined report; c6 records the failure
    let c_eff = col_zero_prefix.max(1);
    let r_eff = row_zero_suffix.max(1);
    let rhs = inequality_rhs(r, r_eff, c_eff);
    let holds = BigInt::from(n) >= rhs;
    let inequality = InequalityReport { lhs: n, rhs, holds };

    let mut report = ConditionReport {
        c1_strictly_upper: c1,
        c2_square_zero: c2,
        c3_zero_constant_terms: c3,
        c4_rank_at_points: c4,
        c5_degree_tuple: c5,
        c6_boundary_zeros: c6,
        col_zero_prefix,
        row_zero_suffix,
        degree_tuple: tuple,
        inequality,
        classification: Classification::InvalidInstance,
    };
    report.classification = if report.all_passed() {
        if report.inequality.holds {
            Classification::Consistent
        } else {
            Classification::CounterexampleCandidate
        }
    } else {
        Classification::InvalidInstance
    };
    Ok(report)
}

fn check_rank_condition<K: Field>(inst: &ConjectureInstance<K>, mode: Mode) -> Result<Verdict> {
    let m = inst.matrix();
    let field = m.field().clone();
    let r = m.n_vars();
    let target = inst.rank_target();
    match mode {
        Mode::Exhaustive => {
            let FieldSpec::Fp { p } = field.spec() else {
                return Err(Error::unsupported(
                    "exhaustive rank checks need a prime field; no finite enumeration over Q",
                ));
            };
            let total = (p as u128).checked_pow(r as u32).ok_or_else(|| {
                Error::input("point count overflow in exhaustive mode".to_string())
            })?;
            if total > 10_000_000 {
                return Err(Error::input(format!(
                    "exhaustive mode requires p^r <= 10^7, got {total}"
                )));
            }
            let mut point = vec![field.zero(); r];
            let mut counter = vec![0u64; r];
            let mut checked = 0u64;
            loop {
                // odometer, last coordinate fastest
                let mut k = r;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    counter[k] += 1;
                    if counter[k] < p {
                        break;
                    }
                    counter[k] = 0;
                    if k == 0 {
                        break;
                    }
                }
                if counter.iter().all(|&v| v == 0) {
                    break;
                }
                for (dst, &src) in point.iter_mut().zip(counter.iter()) {
                    *dst = field.from_i64(src as i64);
                }
                let rank = m.rank_at_point(&point)?;
                checked += 1;
                if rank != target {
                    return Ok(Verdict::Fail {
                        witness: witness_point(&field, &point, rank, target),
                    });
                }
            }
            Ok(Verdict::ExhaustivePass { points: checked })
        }
        Mode::Sample { points, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut checked = 0u64;
            while checked < points as u64 {
                let point: Vec<K::Elem> = (0..r).map(|_| field.sample_elem(&mut rng)).collect();
                if point.iter().all(|c| field.is_zero(c)) {
                    continue;
                }
                let rank = m.rank_at_point(&point)?;
                checked += 1;
                if rank != target {
                    return Ok(Verdict::Fail {
                        witness: witness_point(&field, &point, rank, target),
                    });
                }
            }
            Ok(Verdict::SampledPass { points: checked })
        }
    }
}

fn witness_point<K: Field>(field: &K, point: &[K::Elem], rank: usize, target: usize) -> String {
    let coords: Vec<String> = point.iter().map(|c| field.format_elem(c)).collect();
    format!(
        "rank at ({}) is {rank}, expected {target}",
        coords.join(",")
    )
}

fn check_degree_tuple<K: Field>(inst: &ConjectureInstance<K>) -> (Verdict, Option<Vec<i64>>) {
    let m = inst.matrix();
    // condition 5 needs every nonzero entry homogeneous regardless of d
    for (r, c, p) in m.nonzero_positions() {
        if p.homogeneity() == Homogeneity::Inhomogeneous {
            return (
                Verdict::Fail {
                    witness: format!("entry ({r},{c}) is not homogeneous"),
                },
                None,
            );
        }
    }
    match inst.degree_tuple() {
        Some(d) => {
            for (r, c, p) in m.nonzero_positions() {
                let expected = d[r - 1] - d[c - 1] + 1;
                let actual = p.total_degree().expect("nonzero entry") as i64;
                if actual != expected {
                    return (
                        Verdict::Fail {
                            witness: format!(
                                "entry ({r},{c}) has degree {actual}, tuple requires {expected}"
                            ),
                        },
                        Some(d.to_vec()),
                    );
                }
            }
            (Verdict::Pass, Some(d.to_vec()))
        }
        None => match infer_degree_tuple(m) {
            Ok(Some(d)) => (Verdict::Pass, Some(d)),
            Ok(None) => (
                Verdict::Fail {
                    witness: "no nonincreasing degree tuple is compatible with the entry degrees"
                        .to_string(),
                },
                None,
            ),
            Err(e) => (
                Verdict::Fail {
                    witness: e.to_string(),
                },
                None,
            ),
        },
    }
}

/// Finds a nonincreasing tuple `d` with `d_i - d_j = deg(p_ij) - 1` on every
/// nonzero entry, or `None` when no such tuple exists.
///
/// Per-component values are fixed by propagation over the entry constraints
/// (cycle conflicts abort); the shifts between components are then solved as
/// a difference-constraint system over the consecutive-index inequalities,
/// and the final tuple is shifted so its minimum is zero.
pub fn infer_degree_tuple<K: Field>(m: &PolyMatrix<K>) -> Result<Option<Vec<i64>>> {
    let n = m.n();
    let mut edges: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n + 1];
    for (r, c, p) in m.nonzero_positions() {
        if p.homogeneity() == Homogeneity::Inhomogeneous {
            return Err(Error::input(format!("entry ({r},{c}) is not homogeneous")));
        }
        let diff = p.total_degree().expect("nonzero") as i64 - 1; // d_r - d_c
        edges[r].push((c, diff));
        edges[c].push((r, -diff));
    }

    // per-component propagation
    let mut base = vec![0i64; n + 1];
    let mut component = vec![usize::MAX; n + 1];
    let mut n_components = 0usize;
    for start in 1..=n {
        if component[start] != usize::MAX {
            continue;
        }
        let id = n_components;
        n_components += 1;
        component[start] = id;
        base[start] = 0;
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &(v, diff) in &edges[u] {
                // diff = d_u - d_v
                let expected = base[u] - diff;
                if component[v] == usize::MAX {
                    component[v] = id;
                    base[v] = expected;
                    stack.push(v);
                } else if base[v] != expected {
                    return Ok(None); // inconsistent cycle
                }
            }
        }
    }

    // inter-component shifts: for consecutive indices k, k+1 we need
    // base_k + s_{c(k)} >= base_{k+1} + s_{c(k+1)}
    let mut constraint_edges: Vec<(usize, usize, i64)> = Vec::new(); // s_to <= s_from + w
    for k in 1..n {
        let from = component[k];
        let to = component[k + 1];
        let w = base[k] - base[k + 1];
        if from == to {
            if w < 0 {
                return Ok(None);
            }
        } else {
            constraint_edges.push((from, to, w));
        }
    }
    let source = component[1];
    let mut shift = vec![i64::MAX; n_components];
    shift[source] = 0;
    // Bellman-Ford; at most n_components - 1 relaxation rounds
    for _ in 0..n_components {
        let mut changed = false;
        for &(from, to, w) in &constraint_edges {
            if shift[from] != i64::MAX && shift[from] + w < shift[to] {
                shift[to] = shift[from] + w;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    for &(from, to, w) in &constraint_edges {
        if shift[from] != i64::MAX && shift[from] + w < shift[to] {
            return Ok(None); // negative cycle: constraints unsatisfiable
        }
    }
    if shift.contains(&i64::MAX) {
        return Err(Error::invariant(
            "degree component unreachable from index 1".to_string(),
        ));
    }

    let mut d: Vec<i64> = (1..=n).map(|k| base[k] + shift[component[k]]).collect();
    if d.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::invariant(
            "difference-constraint solution is not nonincreasing".to_string(),
        ));
    }
    let min = *d.iter().min().expect("nonempty");
    for v in &mut d {
        *v -= min;
    }
    Ok(Some(d))
}

/// Block structure of the zero pattern plus flag bounds.
#[derive(Clone, Debug)]
pub struct FlagReport {
    pub block_type: BlockType,
    /// `l`: one less than the number of blocks.
    pub fold_count: usize,
    /// `t_0, t_l >= 1`, interior parts `>= 2`, and `N >= 2l`.
    pub bounds_ok: bool,
    /// Each block after the first has a column with a nonzero row in the
    /// immediately preceding block.
    pub adjacency_ok: bool,
    /// Upper bound on the admissible variable count when the homology
    /// hypotheses hold.
    pub freeclass_note: String,
}

/// Block decomposition of the zero pattern.
///
/// For a partial-permutation pattern (at most one nonzero entry per row and
/// per column, no index both a nonzero row and a nonzero column) the block
/// boundaries sit after each index whose row is nonzero and whose successor
/// has a nonzero column, matching [`crate::involution::Involution::block_type`].
/// For every other pattern the scan is greedy: block 0 is the longest prefix
/// of identically-zero columns, and block `m+1` the longest following run of
/// columns whose nonzero entries lie in rows of blocks `<= m`.
pub fn matrix_block_type<K: Field>(m: &PolyMatrix<K>) -> Result<FlagReport> {
    if !m.is_strictly_upper_triangular() {
        return Err(Error::input(
            "block type needs a strictly upper triangular matrix",
        ));
    }
    let n = m.n();
    let nonzero_rows_of_col: Vec<Vec<usize>> = (0..=n)
        .map(|j| {
            (1..=n)
                .filter(|&i| j >= 1 && m.get(i, j).is_some())
                .collect()
        })
        .collect();
    let row_active: Vec<bool> = (0..=n)
        .map(|i| i >= 1 && (1..=n).any(|j| m.get(i, j).is_some()))
        .collect();
    let col_active: Vec<bool> = (0..=n)
        .map(|j| !nonzero_rows_of_col[j].is_empty())
        .collect();

    let partial_permutation_pattern = {
        let rows_ok = (1..=n).all(|i| (1..=n).filter(|&j| m.get(i, j).is_some()).count() <= 1);
        let cols_ok = (1..=n).all(|j| nonzero_rows_of_col[j].len() <= 1);
        let disjoint = (1..=n).all(|k| !(row_active[k] && col_active[k]));
        rows_ok && cols_ok && disjoint
    };

    let mut parts: Vec<usize> = Vec::new();
    let mut start = 1usize;
    #[allow(clippy::needless_range_loop)]
    if partial_permutation_pattern {
        for k in 1..n {
            if row_active[k] && col_active[k + 1] {
                parts.push(k + 1 - start);
                start = k + 1;
            }
        }
    } else {
        let mut covered = 0usize; // rows covered by blocks before the current one
        for col in 1..=n {
            // a column extends the current block while its nonzero rows stay
            // within the rows already covered; the first offending column
            // closes the block and starts the next
            if col > start && !nonzero_rows_of_col[col].iter().all(|&i| i <= covered) {
                parts.push(col - start);
                covered = col - 1;
                start = col;
            }
        }
    }
    parts.push(n + 1 - start);

    let block_type = BlockType(parts.clone());
    let l = block_type.fold_count();
    let interior_ok = parts.len() < 3 || parts[1..parts.len() - 1].iter().all(|&t| t >= 2);
    let bounds_ok = parts[0] >= 1 && *parts.last().unwrap() >= 1 && interior_ok && n >= 2 * l;

    // block boundaries for the adjacency check
    let mut boundaries = Vec::new(); // (first_col, last_col) per block
    let mut acc = 0usize;
    for &t in &parts {
        boundaries.push((acc + 1, acc + t));
        acc += t;
    }
    let adjacency_ok = boundaries.windows(2).all(|w| {
        let (prev_first, prev_last) = w[0];
        let (first, last) = w[1];
        (first..=last).any(|j| {
            nonzero_rows_of_col[j]
                .iter()
                .any(|&i| i >= prev_first && i <= prev_last)
        })
    });

    Ok(FlagReport {
        block_type,
        fold_count: l,
        bounds_ok,
        adjacency_ok,
        freeclass_note: format!(
            "a free flag with {} folds bounds the admissible variable count at r <= {l}",
            l + 1
        ),
    })
}

/// All compositions `(t_0, ..., t_l)` of `n` with `t_0, t_l >= 1` and
/// interior parts `>= 2`, in lexicographic order.
pub fn compositions_with_bounds(n: usize, l: usize) -> Result<Vec<BlockType>> {
    if n < 2 || l < 1 {
        return Err(Error::input(format!(
            "compositions need n >= 2 and l >= 1, got n={n}, l={l}"
        )));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(l + 1);
    fn recurse(
        remaining: usize,
        position: usize,
        l: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<BlockType>,
    ) {
        if position == l {
            if remaining >= 1 {
                current.push(remaining);
                out.push(BlockType(current.clone()));
                current.pop();
            }
            return;
        }
        let lower = if position == 0 { 1 } else { 2 };
        // leave room: interior slots after this need 2 each, the tail needs 1
        let slots_after = l - position - 1;
        let reserve = 2 * slots_after + 1;
        let mut t = lower;
        while t + reserve <= remaining {
            current.push(t);
            recurse(remaining - t, position + 1, l, current, out);
            current.pop();
            t += 1;
        }
    }
    recurse(n, 0, l, &mut current, &mut out);
    Ok(out)
}

/// The consolidated verdict: conditions, block structure, and, for
/// counterexample candidates, a replay bundle echoing the instance.
pub struct VerifyReport {
    pub conditions: ConditionReport,
    pub flag: Option<FlagReport>,
    pub replay: Option<serde_json::Value>,
}

pub fn verify_instance<K: Field>(inst: &ConjectureInstance<K>, mode: Mode) -> Result<VerifyReport> {
    let conditions = check_conditions(inst, mode)?;
    let flag = matrix_block_type(inst.matrix()).ok();
    let replay =
        (conditions.classification == Classification::CounterexampleCandidate).then(|| {
            let file = matrix_to_file(inst.matrix(), inst.degree_tuple());
            json!({
                "matrix": serde_json::to_value(&file).expect("serializable"),
                "N": inst.n(),
                "r": inst.matrix().n_vars(),
                "C": conditions.col_zero_prefix,
                "R": conditions.row_zero_suffix,
            })
        });
    Ok(VerifyReport {
        conditions,
        flag,
        replay,
    })
}

impl VerifyReport {
    pub fn to_json(&self) -> serde_json::Value {
        let c = &self.conditions;
        let rhs_json = match u64::try_from(&c.inequality.rhs) {
            Ok(v) => json!(v),
            Err(_) => json!(c.inequality.rhs.to_string()),
        };
        let mut value = json!({
            "conditions": c.conditions_json(),
            "C": c.col_zero_prefix,
            "R": c.row_zero_suffix,
            "d": c.degree_tuple,
            "type": self.flag.as_ref().map(|f| f.block_type.parts().to_vec()),
            "l": self.flag.as_ref().map(|f| f.fold_count),
            "flag": self.flag.as_ref().map(|f| json!({
                "bounds_ok": f.bounds_ok,
                "adjacency_ok": f.adjacency_ok,
                "freeclass_note": f.freeclass_note,
            })),
            "inequality": {
                "lhs": c.inequality.lhs,
                "rhs": rhs_json,
                "holds": c.inequality.holds,
            },
            "classification": c.classification.as_str(),
        });
        if let Some(replay) = &self.replay {
            value["replay"] = replay.clone();
        }
        value
    }
}

/// The 4x4 differential of two exterior variables: the standard square-zero
/// example instance over any field.
pub fn koszul_4x4<K: Field>(field: K) -> PolyMatrix<K> {
    let mut m = PolyMatrix::new(field.clone(), 4, 2).expect("valid shape");
    let x1 = Poly::variable(&field, 2, 1).expect("x1");
    let x2 = Poly::variable(&field, 2, 2).expect("x2");
    m.set(1, 2, x1.clone()).expect("in range");
    m.set(1, 3, x2.clone()).expect("in range");
    m.set(2, 4, x2).expect("in range");
    m.set(3, 4, x1.neg(&field)).expect("in range");
    m
}

/// Map from each involution to its block-type report, for pattern matrices.
pub fn pattern_matrix<K: Field>(
    field: K,
    m: &crate::involution::PartialPermutationMatrix,
    n_vars: usize,
) -> Result<PolyMatrix<K>> {
    let mut out = PolyMatrix::new(field.clone(), m.n, n_vars)?;
    for &(r, c) in &m.ones {
        out.set(r, c, Poly::constant(&field, n_vars, field.one()))?;
    }
    Ok(out)
}
