//! Exact search for good pairs on small digraphs.
//!
//! For each admissible out-root the out-branching is grown one arc at a
//! time by include/exclude branching on the lowest arc leaving the tree, so
//! every out-branching is met at most once. A branch is cut as soon as the
//! arcs not yet in the tree no longer admit an in-branching (the set of
//! in-generators only shrinks as the tree grows) or the arcs not yet
//! excluded no longer let the root reach every vertex. A completed
//! out-branching succeeds exactly when the remaining arcs have a unique
//! terminal strong component.

use crate::branching::{bfs_parents, Branching, BranchingKind, GoodPairCert};
use crate::digraph::{reach_rows, transpose_rows, Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::scc::strong_decomposition;

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub root_out: Option<usize>,
    pub root_in: Option<usize>,
    pub node_budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            root_out: None,
            root_in: None,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

impl SearchOptions {
    pub fn with_roots(root_out: usize, root_in: usize) -> Self {
        SearchOptions {
            root_out: Some(root_out),
            root_in: Some(root_in),
            ..Default::default()
        }
    }

    pub fn budget(mut self, nodes: u64) -> Self {
        self.node_budget = nodes;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactOutcome {
    Found(GoodPairCert),
    /// The search space was exhausted.
    NoneExists,
    /// The node budget ran out first.
    Inconclusive,
}

impl ExactOutcome {
    pub fn cert(&self) -> Option<&GoodPairCert> {
        match self {
            ExactOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn into_cert(self) -> Option<GoodPairCert> {
        match self {
            ExactOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, ExactOutcome::Found(_))
    }
}

#[derive(Clone, Debug)]
pub struct ExactSearch {
    pub outcome: ExactOutcome,
    pub nodes: u64,
}

/// Decides whether `d` has a good pair, honouring optional root constraints.
pub fn find_good_pair_exact(d: &Digraph, opts: SearchOptions) -> Result<ExactSearch> {
    let n = d.order();
    for r in [opts.root_out, opts.root_in].into_iter().flatten() {
        if r >= n {
            return Err(Error::VertexOutOfRange { vertex: r, n });
        }
    }
    if opts.node_budget == 0 {
        return Err(Error::precondition("node budget must be positive"));
    }
    let none = |nodes| ExactSearch {
        outcome: ExactOutcome::NoneExists,
        nodes,
    };
    if n == 1 {
        let trivial = |kind| Branching::new(kind, 0, vec![None]);
        return Ok(ExactSearch {
            outcome: ExactOutcome::Found(GoodPairCert {
                out_branching: trivial(BranchingKind::Out),
                in_branching: trivial(BranchingKind::In),
            }),
            nodes: 0,
        });
    }
    if d.arc_count() < 2 * (n - 1) {
        return Ok(none(0));
    }
    let rows = d.rows();
    let full = VertexSet::full(n).bits();
    let in_mask = opts.root_in.map_or(full, |r| 1u64 << r);
    let mut out_roots = out_roots_rows(&rows);
    if let Some(r) = opts.root_out {
        out_roots &= 1 << r;
    }
    if out_roots == 0 || in_roots_rows(&rows, &transpose_rows(&rows)) & in_mask == 0 {
        return Ok(none(0));
    }

    let mut search = Search::new(&rows, in_mask, opts.node_budget);
    for root in VertexSet::from_bits(out_roots).iter() {
        search.reset(root);
        match search.dfs() {
            Step::Found(in_root) => {
                let cert = search.certificate(in_root);
                return Ok(ExactSearch {
                    outcome: ExactOutcome::Found(cert),
                    nodes: search.nodes,
                });
            }
            Step::OutOfBudget => {
                return Ok(ExactSearch {
                    outcome: ExactOutcome::Inconclusive,
                    nodes: search.nodes,
                })
            }
            Step::Dead => {}
        }
    }
    Ok(none(search.nodes))
}

enum Step {
    Found(usize),
    Dead,
    OutOfBudget,
}

struct Search<'a> {
    rows: &'a [u64],
    full: u64,
    in_mask: u64,
    budget: u64,
    nodes: u64,
    root: usize,
    reached: u64,
    parent: Vec<Option<usize>>,
    // arcs not in the out-tree
    residual: Vec<u64>,
    residual_t: Vec<u64>,
    // arcs not excluded from the out-tree
    allowed: Vec<u64>,
}

impl<'a> Search<'a> {
    fn new(rows: &'a [u64], in_mask: u64, budget: u64) -> Self {
        let n = rows.len();
        Search {
            rows,
            full: VertexSet::full(n).bits(),
            in_mask,
            budget,
            nodes: 0,
            root: 0,
            reached: 0,
            parent: vec![None; n],
            residual: rows.to_vec(),
            residual_t: transpose_rows(rows),
            allowed: rows.to_vec(),
        }
    }

    fn reset(&mut self, root: usize) {
        self.root = root;
        self.reached = 1 << root;
        self.parent.iter_mut().for_each(|p| *p = None);
        self.residual.copy_from_slice(self.rows);
        self.residual_t = transpose_rows(self.rows);
        self.allowed.copy_from_slice(self.rows);
    }

    /// Lowest unreached head with an allowed in-arc from the tree, and its
    /// lowest such tail.
    fn frontier_arc(&self) -> Option<(usize, usize)> {
        let mut heads = 0u64;
        let mut r = self.reached;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            heads |= self.allowed[u];
        }
        heads &= !self.reached;
        if heads == 0 {
            return None;
        }
        let v = heads.trailing_zeros() as usize;
        let mut r = self.reached;
        while r != 0 {
            let u = r.trailing_zeros() as usize;
            r &= r - 1;
            if self.allowed[u] >> v & 1 == 1 {
                return Some((u, v));
            }
        }
        None
    }

    fn residual_in_roots(&self) -> u64 {
        in_roots_rows(&self.residual, &self.residual_t) & self.in_mask
    }

    fn dfs(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Step::OutOfBudget;
        }
        if self.reached == self.full {
            let roots = self.residual_in_roots();
            return match roots {
                0 => Step::Dead,
                r => Step::Found(r.trailing_zeros() as usize),
            };
        }
        let Some((u, v)) = self.frontier_arc() else {
            return Step::Dead;
        };

        // include u -> v in the out-tree
        self.residual[u] &= !(1 << v);
        self.residual_t[v] &= !(1 << u);
        self.reached |= 1 << v;
        self.parent[v] = Some(u);
        if self.residual_in_roots() != 0 {
            match self.dfs() {
                Step::Dead => {}
                other => return other,
            }
        }
        self.parent[v] = None;
        self.reached &= !(1 << v);
        self.residual[u] |= 1 << v;
        self.residual_t[v] |= 1 << u;

        // exclude u -> v from the out-tree
        self.allowed[u] &= !(1 << v);
        let step = if reach_rows(&self.allowed, 1 << self.root) == self.full {
            self.dfs()
        } else {
            Step::Dead
        };
        self.allowed[u] |= 1 << v;
        step
    }

    fn certificate(&self, in_root: usize) -> GoodPairCert {
        let out_branching = Branching::from_parent_vertices(BranchingKind::Out, self.root, &self.parent);
        let in_parents = bfs_parents(&self.residual_t, in_root, self.full)
            .expect("in-root reaches every vertex backwards");
        let in_branching = Branching::from_parent_vertices(BranchingKind::In, in_root, &in_parents);
        GoodPairCert {
            out_branching,
            in_branching,
        }
    }
}

/// `In(D)` from out-rows and their transpose: vertices every vertex can
/// reach.
pub(crate) fn in_roots_rows(rows: &[u64], rows_t: &[u64]) -> u64 {
    let n = rows.len();
    let full = VertexSet::full(n).bits();
    // a vertex with the smallest reach set lies in a terminal component
    let mut best = (u32::MAX, 0usize, 0u64);
    for v in 0..n {
        let r = reach_rows(rows, 1 << v);
        let size = r.count_ones();
        if size < best.0 {
            best = (size, v, r);
        }
        if size == 1 {
            break;
        }
    }
    let (_, t, reach_t) = best;
    if reach_rows(rows_t, 1 << t) == full {
        reach_t
    } else {
        0
    }
}

/// `Out(D)`: vertices that reach every vertex.
pub(crate) fn out_roots_rows(rows: &[u64]) -> u64 {
    let rows_t = transpose_rows(rows);
    in_roots_rows(&rows_t, rows)
}

/// The exhaustive cross-product check: some out-branching and in-branching
/// (over all roots) are arc-disjoint. Exponential; for tiny digraphs.
pub fn good_pair_by_enumeration(d: &Digraph) -> Result<Option<GoodPairCert>> {
    use crate::branching::enumerate_branchings;
    let n = d.order();
    let sd = strong_decomposition(d);
    if sd.initial_components().count() != 1 || sd.terminal_components().count() != 1 {
        return Ok(None);
    }
    let outs: Vec<Branching> = (0..n)
        .map(|r| enumerate_branchings(d, BranchingKind::Out, r, usize::MAX))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let ins: Vec<Branching> = (0..n)
        .map(|r| enumerate_branchings(d, BranchingKind::In, r, usize::MAX))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    for o in &outs {
        let used: Vec<(usize, usize)> = o.arcs().collect();
        for i in &ins {
            if i.arcs().all(|a| !used.contains(&a)) {
                return Ok(Some(GoodPairCert {
                    out_branching: o.clone(),
                    in_branching: i.clone(),
                }));
            }
        }
    }
    Ok(None)
}
