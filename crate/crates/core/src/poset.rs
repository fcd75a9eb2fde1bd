//! The move-generated order on full-rank involutions and its Hasse diagram.
//!
//! `sigma' <= sigma` when `sigma'` is obtained from `sigma` by a sequence of
//! rank-preserving moves. The DAG stores one-step successors, the strict
//! reachability closure, the cover relation (transitive reduction), and a
//! level function: maximal nodes have level 1 and every other node sits one
//! past its deepest cover-parent.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::involution::{enumerate_rp, Involution};
use crate::moves::{applicable_moves, MoveKind, MoveOutcome};

/// Dense bit matrix used for reachability; rows are nodes.
struct BitRows {
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitRows {
    fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64);
        BitRows {
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    fn set(&mut self, row: usize, col: usize) {
        self.bits[row * self.words_per_row + col / 64] |= 1u64 << (col % 64);
    }

    fn get(&self, row: usize, col: usize) -> bool {
        self.bits[row * self.words_per_row + col / 64] & (1u64 << (col % 64)) != 0
    }

    fn or_row_into(&mut self, src: usize, dst: usize) {
        let w = self.words_per_row;
        let src_copy: Vec<u64> = self.bits[src * w..(src + 1) * w].to_vec();
        for (k, v) in src_copy.into_iter().enumerate() {
            self.bits[dst * w + k] |= v;
        }
    }

    fn row_equals(&self, row: usize, other: &BitRows, other_row: usize) -> bool {
        let w = self.words_per_row;
        self.bits[row * w..(row + 1) * w] == other.bits[other_row * w..(other_row + 1) * w]
    }
}

/// Requested output of [`PosetDag::export_hasse`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ExportFormat {
    Dot,
    Json,
}

pub struct PosetDag {
    n_points: usize,
    move_kinds: BTreeSet<MoveKind>,
    nodes: Vec<Involution>,
    node_strings: Vec<String>,
    index: BTreeMap<Involution, usize>,
    reach: BitRows,
    covers: Vec<(usize, usize)>,
    levels: Vec<usize>,
}

/// Builds the order on the full-rank involutions of `{1..N}` generated by
/// the given rank-preserving move kinds.
pub fn build_order(n_points: usize, kinds: &BTreeSet<MoveKind>) -> Result<PosetDag> {
    for k in kinds {
        if !k.preserves_rank() {
            return Err(Error::input(format!(
                "order leaves RP(N): move kind {k} drops rank or needs fixed points"
            )));
        }
    }
    let mut nodes = enumerate_rp(n_points)?;
    // node order for all exports: lexicographic in the pair notation
    nodes.sort_by_key(|s| s.to_string());
    let node_strings: Vec<String> = nodes.iter().map(|s| s.to_string()).collect();
    let index: BTreeMap<Involution, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();

    let n = nodes.len();
    let mut successors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (u, sigma) in nodes.iter().enumerate() {
        for (_, outcome) in applicable_moves(sigma, kinds) {
            match outcome {
                MoveOutcome::Involution(tau) => {
                    let v = *index.get(&tau).expect("move result stays in RP(N)");
                    successors[u].insert(v);
                }
                MoveOutcome::RankDropped(_) => unreachable!("kinds preserve rank"),
            }
        }
    }

    let topo = topological_order(&successors)
        .ok_or_else(|| Error::invariant("move graph contains a cycle"))?;

    // strict reachability, filled sinks-first
    let mut reach = BitRows::new(n);
    for &u in topo.iter().rev() {
        let succ: Vec<usize> = successors[u].iter().copied().collect();
        for v in succ {
            reach.set(u, v);
            reach.or_row_into(v, u);
        }
    }
    for u in 0..n {
        if reach.get(u, u) {
            return Err(Error::invariant("order is not acyclic"));
        }
    }

    // covers: a one-step edge u -> v survives unless some other successor w
    // of u already reaches v
    let mut covers = Vec::new();
    #[allow(clippy::needless_range_loop)]
    for u in 0..n {
        for &v in &successors[u] {
            let redundant = successors[u].iter().any(|&w| w != v && reach.get(w, v));
            if !redundant {
                covers.push((u, v));
            }
        }
    }
    covers.sort_unstable();

    // levels: 1 on maximal nodes, else 1 + deepest cover-parent
    let mut parents: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in &covers {
        parents[v].push(u);
    }
    let mut levels = vec![0usize; n];
    for &u in &topo {
        levels[u] = 1 + parents[u].iter().map(|&p| levels[p]).max().unwrap_or(0);
    }

    Ok(PosetDag {
        n_points,
        move_kinds: kinds.clone(),
        nodes,
        node_strings,
        index,
        reach,
        covers,
        levels,
    })
}

fn topological_order(successors: &[BTreeSet<usize>]) -> Option<Vec<usize>> {
    let n = successors.len();
    let mut indegree = vec![0usize; n];
    for succ in successors {
        for &v in succ {
            indegree[v] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&u| indegree[u] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(u) = queue.pop() {
        order.push(u);
        for &v in &successors[u] {
            indegree[v] -= 1;
            if indegree[v] == 0 {
                queue.push(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

impl PosetDag {
    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn move_kinds(&self) -> &BTreeSet<MoveKind> {
        &self.move_kinds
    }

    pub fn nodes(&self) -> &[Involution] {
        &self.nodes
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn contains(&self, sigma: &Involution) -> bool {
        self.index.contains_key(sigma)
    }

    pub fn level_of(&self, sigma: &Involution) -> Option<usize> {
        self.index.get(sigma).map(|&i| self.levels[i])
    }

    /// Nodes grouped by level (index 0 holds level 1), each group in node order.
    pub fn level_partition(&self) -> Vec<Vec<Involution>> {
        let max_level = self.levels.iter().copied().max().unwrap_or(0);
        let mut out = vec![Vec::new(); max_level];
        for (i, &lvl) in self.levels.iter().enumerate() {
            out[lvl - 1].push(self.nodes[i].clone());
        }
        out
    }

    pub fn levels_map(&self) -> BTreeMap<Involution, usize> {
        self.nodes
            .iter()
            .cloned()
            .zip(self.levels.iter().copied())
            .collect()
    }

    /// Nodes with no incoming cover edge.
    pub fn maximal_elements(&self) -> BTreeSet<Involution> {
        let mut has_parent = vec![false; self.nodes.len()];
        for &(_, v) in &self.covers {
            has_parent[v] = true;
        }
        (0..self.nodes.len())
            .filter(|&i| !has_parent[i])
            .map(|i| self.nodes[i].clone())
            .collect()
    }

    /// Whether `lower <= upper` in the order (reflexive).
    pub fn leq(&self, lower: &Involution, upper: &Involution) -> Option<bool> {
        let l = *self.index.get(lower)?;
        let u = *self.index.get(upper)?;
        Some(l == u || self.reach.get(u, l))
    }

    /// Cover pairs as `(parent, child)` in node order.
    pub fn cover_pairs(&self) -> Vec<(&Involution, &Involution)> {
        self.covers
            .iter()
            .map(|&(u, v)| (&self.nodes[u], &self.nodes[v]))
            .collect()
    }

    pub fn cover_count(&self) -> usize {
        self.covers.len()
    }

    /// For every node the unique maximal node above it; errors with a
    /// violation report if some node has zero or several maximal ancestors.
    pub fn unique_maximal_ancestor(&self) -> Result<BTreeMap<Involution, Involution>> {
        if self.move_kinds.iter().ne([MoveKind::III].iter()) {
            return Err(Error::input(
                "unique maximal ancestors are defined for the type-III order",
            ));
        }
        let maximal: Vec<usize> = {
            let max_set = self.maximal_elements();
            max_set.iter().map(|m| self.index[m]).collect()
        };
        let mut map = BTreeMap::new();
        let mut violations = Vec::new();
        for (v, node) in self.nodes.iter().enumerate() {
            let ancestors: Vec<usize> = maximal
                .iter()
                .copied()
                .filter(|&m| m == v || self.reach.get(m, v))
                .collect();
            if ancestors.len() == 1 {
                map.insert(node.clone(), self.nodes[ancestors[0]].clone());
            } else {
                let list: Vec<&str> = ancestors
                    .iter()
                    .map(|&m| self.node_strings[m].as_str())
                    .collect();
                violations.push(format!(
                    "{} has {} maximal ancestors [{}]",
                    self.node_strings[v],
                    ancestors.len(),
                    list.join(", ")
                ));
            }
        }
        if violations.is_empty() {
            Ok(map)
        } else {
            Err(Error::invariant(format!(
                "maximal ancestor not unique: {}",
                violations.join("; ")
            )))
        }
    }

    pub fn export_hasse(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => {
                let mut out = String::from("digraph poset {\n");
                for (i, s) in self.node_strings.iter().enumerate() {
                    out.push_str(&format!(
                        "  \"{s}\" [label=\"{s}\\nL{}\"];\n",
                        self.levels[i]
                    ));
                }
                for &(u, v) in &self.covers {
                    out.push_str(&format!(
                        "  \"{}\" -> \"{}\";\n",
                        self.node_strings[u], self.node_strings[v]
                    ));
                }
                out.push('}');
                out
            }
            ExportFormat::Json => {
                let edges: Vec<(&str, &str)> = self
                    .covers
                    .iter()
                    .map(|&(u, v)| (self.node_strings[u].as_str(), self.node_strings[v].as_str()))
                    .collect();
                let levels: BTreeMap<&str, usize> = self
                    .node_strings
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.as_str(), self.levels[i]))
                    .collect();
                let value = serde_json::json!({
                    "nodes": self.node_strings,
                    "edges": edges,
                    "levels": levels,
                });
                serde_json::to_string(&value).expect("serializable")
            }
        }
    }

    /// Closure of the cover relation, for consistency checks against the
    /// stored reachability.
    fn cover_closure_matches_reach(&self) -> bool {
        let n = self.nodes.len();
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(u, v) in &self.covers {
            succ[u].insert(v);
        }
        let topo = topological_order(&succ).expect("covers are acyclic");
        let mut closure = BitRows::new(n);
        for &u in topo.iter().rev() {
            let list: Vec<usize> = succ[u].iter().copied().collect();
            for v in list {
                closure.set(u, v);
                closure.or_row_into(v, u);
            }
        }
        (0..n).all(|u| closure.row_equals(u, &self.reach, u))
    }

    /// Runs the internal consistency check; exposed for tests and audits.
    pub fn verify_reduction(&self) -> bool {
        self.cover_closure_matches_reach()
    }
}

/// Orbits of the anti-diagonal dual on a set of involutions; classes are
/// returned sorted by their smallest member.
pub fn duality_classes(set: &BTreeSet<Involution>) -> Vec<BTreeSet<Involution>> {
    let mut classes = Vec::new();
    let mut seen = BTreeSet::new();
    for sigma in set {
        if seen.contains(sigma) {
            continue;
        }
        let mut class = BTreeSet::new();
        class.insert(sigma.clone());
        seen.insert(sigma.clone());
        let dual = sigma.anti_diagonal_dual();
        if set.contains(&dual) && !seen.contains(&dual) {
            seen.insert(dual.clone());
            class.insert(dual);
        }
        classes.push(class);
    }
    classes
}

/// Reference data for the N = 8 type-III order: nodes grouped by level, and
/// adjacent-level edges as `(parent, child)` pair strings.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct GoldenFigure {
    pub levels: Vec<Vec<String>>,
    pub edges: Vec<(String, String)>,
}

impl GoldenFigure {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("bad golden file: {e}")))
    }
}

/// Outcome of comparing a computed DAG against [`GoldenFigure`].
///
/// Level sets, the maximal set, and totality of the unique-maximal-ancestor
/// map are hard checks; the edge comparison is diagnostic because the
/// reference edge list only spans adjacent levels.
#[derive(Debug)]
pub struct FigureComparison {
    pub computed_level_sizes: Vec<usize>,
    pub golden_level_sizes: Vec<usize>,
    pub level_sets_match: bool,
    pub level_mismatches: Vec<String>,
    pub maximal_matches: bool,
    pub ancestor_map_total: bool,
    pub ancestor_error: Option<String>,
    pub edges_only_computed: Vec<(String, String)>,
    pub edges_only_golden: Vec<(String, String)>,
}

impl FigureComparison {
    pub fn hard_pass(&self) -> bool {
        self.level_sets_match && self.maximal_matches && self.ancestor_map_total
    }
}

pub fn compare_with_golden(dag: &PosetDag, golden: &GoldenFigure) -> Result<FigureComparison> {
    let n = dag.n_points();
    let mut golden_levels: Vec<BTreeSet<Involution>> = Vec::new();
    for level in &golden.levels {
        let mut set = BTreeSet::new();
        for text in level {
            set.insert(Involution::parse(n, text)?);
        }
        golden_levels.push(set);
    }

    let computed = dag.level_partition();
    let computed_sets: Vec<BTreeSet<Involution>> = computed
        .iter()
        .map(|lvl| lvl.iter().cloned().collect())
        .collect();

    let mut level_mismatches = Vec::new();
    if computed_sets.len() != golden_levels.len() {
        level_mismatches.push(format!(
            "level count differs: computed {}, golden {}",
            computed_sets.len(),
            golden_levels.len()
        ));
    }
    for k in 0..computed_sets.len().max(golden_levels.len()) {
        let empty = BTreeSet::new();
        let comp = computed_sets.get(k).unwrap_or(&empty);
        let gold = golden_levels.get(k).unwrap_or(&empty);
        for extra in comp.difference(gold) {
            level_mismatches.push(format!("level {}: {} only in computed", k + 1, extra));
        }
        for missing in gold.difference(comp) {
            level_mismatches.push(format!("level {}: {} only in golden", k + 1, missing));
        }
    }
    let level_sets_match = level_mismatches.is_empty();

    let maximal = dag.maximal_elements();
    let maximal_matches = !golden_levels.is_empty() && maximal == golden_levels[0];

    let (ancestor_map_total, ancestor_error) = match dag.unique_maximal_ancestor() {
        Ok(_) => (true, None),
        Err(e) => (false, Some(e.to_string())),
    };

    let computed_edges: BTreeSet<(String, String)> = dag
        .cover_pairs()
        .iter()
        .map(|(u, v)| (u.to_string(), v.to_string()))
        .collect();
    let golden_edges: BTreeSet<(String, String)> = golden
        .edges
        .iter()
        .map(|(a, b)| {
            // normalize through parsing so formatting variations cannot
            // produce spurious diffs
            let pa = Involution::parse(n, a)?.to_string();
            let pb = Involution::parse(n, b)?.to_string();
            Ok((pa, pb))
        })
        .collect::<Result<_>>()?;

    Ok(FigureComparison {
        computed_level_sizes: computed.iter().map(|l| l.len()).collect(),
        golden_level_sizes: golden.levels.iter().map(|l| l.len()).collect(),
        level_sets_match,
        level_mismatches,
        maximal_matches,
        ancestor_map_total,
        ancestor_error,
        edges_only_computed: computed_edges.difference(&golden_edges).cloned().collect(),
        edges_only_golden: golden_edges.difference(&computed_edges).cloned().collect(),
    })
}
