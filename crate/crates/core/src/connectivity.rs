//! Cuts, unit-capacity flows, arc-connectivity and arc-disjoint
//! out-branching packing.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::branching::{verify_branching, Branching, BranchingKind};
use crate::digraph::{Arc, Digraph, Dipath, VertexSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutDirection {
    /// Arcs leaving the set.
    Out,
    /// Arcs entering the set.
    In,
}

/// A vertex set together with the number of arcs crossing it in one
/// direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CutWitness {
    pub set: VertexSet,
    pub direction: CutDirection,
    pub value: usize,
}

impl CutWitness {
    /// Recounts the crossing arcs in `d`.
    pub fn recompute(&self, d: &Digraph) -> Result<usize> {
        cut_degree(d, self.set, self.direction)
    }

    /// The same cut read in `D^rev`.
    pub fn reversed(&self) -> CutWitness {
        CutWitness {
            direction: match self.direction {
                CutDirection::Out => CutDirection::In,
                CutDirection::In => CutDirection::Out,
            },
            ..*self
        }
    }
}

impl fmt::Display for CutWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            CutDirection::Out => '+',
            CutDirection::In => '-',
        };
        write!(f, "X={} d{}(X)={}", self.set, sign, self.value)
    }
}

impl Serialize for CutWitness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CutWitness", 3)?;
        st.serialize_field("set", &self.set.iter().collect::<Vec<_>>())?;
        st.serialize_field("direction", &self.direction)?;
        st.serialize_field("value", &self.value)?;
        st.end()
    }
}

/// `d^+(X)` or `d^-(X)` for a proper nonempty subset `X`.
pub fn cut_degree(d: &Digraph, x: VertexSet, direction: CutDirection) -> Result<usize> {
    let all = d.vertices();
    if x.is_empty() || !x.is_subset(all) || x == all {
        return Err(Error::ImproperSet);
    }
    Ok(crossing(d, x, direction))
}

fn crossing(d: &Digraph, x: VertexSet, direction: CutDirection) -> usize {
    let outside = d.vertices().difference(x);
    let (from, to) = match direction {
        CutDirection::Out => (x, outside),
        CutDirection::In => (outside, x),
    };
    from.iter()
        .map(|u| d.out_neighbours(u).intersection(to).len())
        .sum()
}

/// Unit-capacity flow state over bitset rows.
struct UnitFlow<'a> {
    cap: &'a [u64],
    flow: Vec<u64>,
    value: usize,
}

impl<'a> UnitFlow<'a> {
    fn new(cap: &'a [u64]) -> Self {
        UnitFlow {
            cap,
            flow: vec![0; cap.len()],
            value: 0,
        }
    }

    /// Vertices `w` with flow on `(w, u)`.
    fn flow_into(&self, u: usize) -> u64 {
        self.flow
            .iter()
            .enumerate()
            .filter(|(_, row)| *row >> u & 1 == 1)
            .fold(0, |acc, (w, _)| acc | 1 << w)
    }

    /// Residual out-neighbours of `u`: (unused forward arcs, cancellable arcs).
    fn residual_out(&self, u: usize) -> (u64, u64) {
        (self.cap[u] & !self.flow[u], self.flow_into(u))
    }

    /// One BFS augmentation; false when `t` is unreachable.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let n = self.cap.len();
        // (previous vertex, via forward arc)
        let mut prev: Vec<Option<(usize, bool)>> = vec![None; n];
        let mut seen = 1u64 << s;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let (fwd, back) = self.residual_out(u);
            let mut fresh = (fwd | back) & !seen;
            seen |= fresh;
            while fresh != 0 {
                let v = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                prev[v] = Some((u, fwd >> v & 1 == 1));
                queue.push_back(v);
            }
            if seen >> t & 1 == 1 {
                break;
            }
        }
        if seen >> t & 1 == 0 {
            return false;
        }
        let mut v = t;
        while v != s {
            let (u, forward) = prev[v].expect("BFS tree reaches t");
            if forward {
                self.flow[u] |= 1 << v;
            } else {
                self.flow[v] &= !(1 << u);
            }
            v = u;
        }
        self.value += 1;
        true
    }

    fn run(&mut self, s: usize, t: usize, limit: usize) {
        while self.value < limit && self.augment(s, t) {}
    }

    /// Vertices reachable from `s` in the residual digraph.
    fn source_side(&self, s: usize) -> VertexSet {
        let mut seen = 1u64 << s;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let (fwd, back) = self.residual_out(u);
            let mut fresh = (fwd | back) & !seen;
            seen |= fresh;
            while fresh != 0 {
                let v = fresh.trailing_zeros() as usize;
                fresh &= fresh - 1;
                stack.push(v);
            }
        }
        VertexSet::from_bits(seen)
    }

    /// Vertices that reach `t` in the residual digraph.
    fn sink_side(&self, t: usize) -> VertexSet {
        let n = self.cap.len();
        let mut seen = 1u64 << t;
        let mut stack = vec![t];
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if seen >> w & 1 == 1 {
                    continue;
                }
                let forward = self.cap[w] >> v & 1 == 1 && self.flow[w] >> v & 1 == 0;
                let cancel = self.flow[v] >> w & 1 == 1;
                if forward || cancel {
                    seen |= 1 << w;
                    stack.push(w);
                }
            }
        }
        VertexSet::from_bits(seen)
    }

    /// Splits the flow into `value` arc-disjoint simple `s`-`t` paths,
    /// discarding circulations.
    fn into_paths(mut self, s: usize, t: usize) -> Vec<Vec<usize>> {
        let mut paths = Vec::with_capacity(self.value);
        for _ in 0..self.value {
            let mut path = vec![s];
            let mut cur = s;
            while cur != t {
                let row = self.flow[cur];
                debug_assert!(row != 0, "flow conservation");
                let v = row.trailing_zeros() as usize;
                self.flow[cur] &= !(1 << v);
                if let Some(pos) = path.iter().position(|&w| w == v) {
                    path.truncate(pos + 1);
                } else {
                    path.push(v);
                }
                cur = v;
            }
            paths.push(path);
        }
        paths
    }
}

fn max_flow_value(rows: &[u64], s: usize, t: usize, limit: usize) -> usize {
    let mut f = UnitFlow::new(rows);
    f.run(s, t, limit);
    f.value
}

/// A maximum family of arc-disjoint `source`-`sink` dipaths with the
/// residual sides of a minimum cut.
#[derive(Clone, Debug)]
pub struct PathPacking {
    pub source: usize,
    pub sink: usize,
    pub paths: Vec<Dipath>,
    pub value: usize,
    /// Residual-reachable from the source; `d^+` of this set is `value`.
    pub source_side: VertexSet,
    /// Residual-coreachable to the sink; `d^-` of this set is `value`.
    pub sink_side: VertexSet,
}

pub fn max_arc_disjoint_paths(d: &Digraph, s: usize, t: usize) -> Result<PathPacking> {
    let n = d.order();
    for v in [s, t] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    if s == t {
        return Err(Error::SameEndpoints(s));
    }
    let rows = d.rows();
    let mut f = UnitFlow::new(&rows);
    f.run(s, t, usize::MAX);
    let value = f.value;
    let source_side = f.source_side(s);
    let sink_side = f.sink_side(t);
    let paths = f
        .into_paths(s, t)
        .into_iter()
        .map(Dipath::new_unchecked)
        .collect();
    Ok(PathPacking {
        source: s,
        sink: t,
        paths,
        value,
        source_side,
        sink_side,
    })
}

/// `λ(D)` with a set `X` achieving `d^+(X) = λ(D)`.
///
/// Minimum over `t ≠ 0` of the flows `0 → t` and `t → 0`.
pub fn arc_connectivity(d: &Digraph) -> Result<(usize, CutWitness)> {
    let n = d.order();
    if n < 2 {
        return Err(Error::precondition("arc-connectivity needs at least 2 vertices"));
    }
    let rows = d.rows();
    let mut best: Option<CutWitness> = None;
    for t in 1..n {
        for (s, sink) in [(0, t), (t, 0)] {
            let limit = best.map_or(usize::MAX, |b| b.value);
            let mut f = UnitFlow::new(&rows);
            f.run(s, sink, limit);
            if best.is_none_or(|b| f.value < b.value) {
                best = Some(CutWitness {
                    set: f.source_side(s),
                    direction: CutDirection::Out,
                    value: f.value,
                });
                if f.value == 0 {
                    let w = best.unwrap();
                    return Ok((0, w));
                }
            }
        }
    }
    let w = best.expect("n >= 2");
    Ok((w.value, w))
}

/// True when `λ(D) ≥ k`, stopping early at the first deficient pair.
pub fn is_k_arc_strong(d: &Digraph, k: usize) -> bool {
    let n = d.order();
    if n < 2 || k == 0 {
        return true;
    }
    let rows = d.rows();
    (1..n).all(|t| max_flow_value(&rows, 0, t, k) >= k && max_flow_value(&rows, t, 0, k) >= k)
}

/// Outcome of [`edmonds_branchings`].
#[derive(Clone, Debug)]
pub enum BranchingPacking {
    /// `k` pairwise arc-disjoint out-branchings rooted at `z`.
    Branchings(Vec<Branching>),
    /// A set `X ⊆ V - z` with `d^-(X) < k`.
    Cut(CutWitness),
}

/// Smallest `t ≠ z` whose `z → t` flow stays below `k`, as an in-cut on the
/// sink side.
fn deficient_in_cut(rows: &[u64], z: usize, k: usize) -> Option<CutWitness> {
    (0..rows.len()).filter(|&t| t != z).find_map(|t| {
        let mut f = UnitFlow::new(rows);
        f.run(z, t, k);
        (f.value < k).then(|| CutWitness {
            set: f.sink_side(t),
            direction: CutDirection::In,
            value: f.value,
        })
    })
}

/// `k` arc-disjoint out-branchings rooted at `z`, or a set violating the
/// in-degree condition.
///
/// Branchings are grown one at a time. An arc leaving the current tree is
/// kept only if the remaining arcs still satisfy the cut condition for the
/// branchings not yet built; arcs are tried in lexicographic order.
pub fn edmonds_branchings(d: &Digraph, z: usize, k: usize) -> Result<BranchingPacking> {
    let n = d.order();
    if z >= n {
        return Err(Error::VertexOutOfRange { vertex: z, n });
    }
    if k == 0 {
        return Err(Error::precondition("k must be at least 1"));
    }
    if let Some(cut) = deficient_in_cut(&d.rows(), z, k) {
        return Ok(BranchingPacking::Cut(cut));
    }
    let mut rest = d.clone();
    let mut packing = Vec::with_capacity(k);
    for built in 0..k {
        let still_needed = k - built - 1;
        let b = grow_safe_branching(&rest, z, still_needed)?;
        rest = rest.without_arcs(b.arcs().collect::<Vec<_>>().iter());
        packing.push(b);
    }
    debug_assert!(packing.iter().all(|b| verify_branching(d, b).is_ok()));
    Ok(BranchingPacking::Branchings(packing))
}

fn grow_safe_branching(d: &Digraph, z: usize, still_needed: usize) -> Result<Branching> {
    let n = d.order();
    let mut rows = d.rows();
    let mut parent: Vec<Option<Arc>> = vec![None; n];
    let mut reached = VertexSet::singleton(z);
    while reached.len() < n {
        let mut accepted = None;
        'candidates: for u in reached.iter() {
            for v in VertexSet::from_bits(rows[u]).difference(reached).iter() {
                rows[u] &= !(1 << v);
                let safe = still_needed == 0
                    || (0..n)
                        .filter(|&t| t != z)
                        .all(|t| max_flow_value(&rows, z, t, still_needed) >= still_needed);
                if safe {
                    accepted = Some((u, v));
                    break 'candidates;
                }
                rows[u] |= 1 << v;
            }
        }
        let (u, v) = accepted.ok_or_else(|| {
            Error::precondition(format!(
                "no safe arc leaves {reached} while {still_needed} further branchings are required"
            ))
        })?;
        parent[v] = Some((u, v));
        reached.insert(v);
    }
    Ok(Branching::new(BranchingKind::Out, z, parent))
}
