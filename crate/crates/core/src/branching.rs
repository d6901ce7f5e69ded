//! Out-/in-branching certificates, good pairs, and their verification.
//!
//! A branching is stored as a parent map: for an out-branching each non-root
//! vertex records its unique in-arc, for an in-branching its unique out-arc.
//! Verification walks the parent map once per vertex.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{transpose_rows, Arc, Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::scc::strong_decomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchingKind {
    Out,
    In,
}

impl BranchingKind {
    pub fn dual(self) -> Self {
        match self {
            BranchingKind::Out => BranchingKind::In,
            BranchingKind::In => BranchingKind::Out,
        }
    }
}

impl fmt::Display for BranchingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchingKind::Out => "out",
            BranchingKind::In => "in",
        })
    }
}

/// A spanning out- or in-branching given by its root and parent arcs.
///
/// Nothing is checked on construction; use [`verify_branching`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Branching {
    kind: BranchingKind,
    root: usize,
    parent: Vec<Option<Arc>>,
}

impl Branching {
    pub fn new(kind: BranchingKind, root: usize, parent: Vec<Option<Arc>>) -> Self {
        Branching { kind, root, parent }
    }

    /// Builds the parent arcs from parent vertices.
    pub fn from_parent_vertices(kind: BranchingKind, root: usize, parents: &[Option<usize>]) -> Self {
        let parent = parents
            .iter()
            .enumerate()
            .map(|(v, p)| {
                p.map(|p| match kind {
                    BranchingKind::Out => (p, v),
                    BranchingKind::In => (v, p),
                })
            })
            .collect();
        Branching { kind, root, parent }
    }

    pub fn kind(&self) -> BranchingKind {
        self.kind
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn parent_arc(&self, v: usize) -> Option<Arc> {
        self.parent.get(v).copied().flatten()
    }

    pub fn parent_arcs(&self) -> &[Option<Arc>] {
        &self.parent
    }

    /// The vertex a parent arc leads to from `v`.
    pub fn parent_vertex(&self, v: usize) -> Option<usize> {
        self.parent_arc(v).map(|(t, h)| match self.kind {
            BranchingKind::Out => t,
            BranchingKind::In => h,
        })
    }

    /// Arcs in ascending order of the vertex that owns them.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.parent.iter().filter_map(|a| *a)
    }

    /// The same arcs reversed; an out-branching of `D` becomes an
    /// in-branching of `D^rev` and vice versa.
    pub fn reversed(&self) -> Branching {
        Branching {
            kind: self.kind.dual(),
            root: self.root,
            parent: self.parent.iter().map(|a| a.map(|(u, v)| (v, u))).collect(),
        }
    }

    /// Renumbers vertices through `map` (new index -> host vertex) into a
    /// parent vector of length `n`; entries outside the image stay empty.
    pub(crate) fn lift(&self, map: &[usize], n: usize) -> Vec<Option<Arc>> {
        let mut parent = vec![None; n];
        for (v, arc) in self.parent.iter().enumerate() {
            parent[map[v]] = arc.map(|(a, b)| (map[a], map[b]));
        }
        parent
    }

    #[cfg(test)]
    pub(crate) fn set_parent(&mut self, v: usize, arc: Option<Arc>) {
        self.parent[v] = arc;
    }

    #[cfg(test)]
    pub(crate) fn set_root(&mut self, root: usize) {
        self.root = root;
    }
}

impl fmt::Display for Branching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-branching rooted at {}:", self.kind, self.root)?;
        for (u, v) in self.arcs() {
            write!(f, " {u}->{v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BranchingViolation {
    #[error("branching covers {found} vertices, digraph has {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("expected an {expected}-branching, found an {found}-branching")]
    KindMismatch {
        expected: BranchingKind,
        found: BranchingKind,
    },
    #[error("root {0} out of range")]
    RootOutOfRange(usize),
    #[error("root {0} has a parent arc")]
    RootHasParent(usize),
    #[error("vertex {0} has no parent arc")]
    MissingParent(usize),
    #[error("parent arc ({},{}) is not incident to vertex {vertex} on the correct side", .arc.0, .arc.1)]
    NotIncident { vertex: usize, arc: Arc },
    #[error("arc absent: ({},{}) is not an arc of the digraph", .0.0, .0.1)]
    ArcAbsent(Arc),
    #[error("parent arcs from vertex {0} do not reach the root (cycle)")]
    Cycle(usize),
}

/// Checks every branching invariant against `d`, reporting the first failure.
pub fn verify_branching(d: &Digraph, b: &Branching) -> Result<(), BranchingViolation> {
    let n = d.order();
    if b.order() != n {
        return Err(BranchingViolation::OrderMismatch {
            expected: n,
            found: b.order(),
        });
    }
    if b.root >= n {
        return Err(BranchingViolation::RootOutOfRange(b.root));
    }
    if b.parent[b.root].is_some() {
        return Err(BranchingViolation::RootHasParent(b.root));
    }
    for v in (0..n).filter(|&v| v != b.root) {
        let arc = b.parent[v].ok_or(BranchingViolation::MissingParent(v))?;
        let owner = match b.kind {
            BranchingKind::Out => arc.1,
            BranchingKind::In => arc.0,
        };
        if owner != v {
            return Err(BranchingViolation::NotIncident { vertex: v, arc });
        }
        if !d.has_arc(arc.0, arc.1) {
            return Err(BranchingViolation::ArcAbsent(arc));
        }
    }
    // every vertex reaches the root along parent arcs; memoise settled ones
    let mut settled = VertexSet::singleton(b.root);
    for start in 0..n {
        let mut trail = VertexSet::EMPTY;
        let mut v = start;
        while !settled.contains(v) {
            if trail.contains(v) {
                return Err(BranchingViolation::Cycle(start));
            }
            trail.insert(v);
            v = b.parent_vertex(v).expect("non-root parents checked above");
        }
        settled = settled.union(trail);
    }
    Ok(())
}

/// An out-branching and an in-branching claimed to be arc-disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoodPairCert {
    pub out_branching: Branching,
    pub in_branching: Branching,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum PairViolation {
    #[error("out-branching: {0}")]
    Out(BranchingViolation),
    #[error("in-branching: {0}")]
    In(BranchingViolation),
    #[error("arc ({},{}) is shared by both branchings", .0.0, .0.1)]
    SharedArc(Arc),
}

pub fn verify_good_pair(d: &Digraph, cert: &GoodPairCert) -> Result<(), PairViolation> {
    let check = |b: &Branching, kind| {
        if b.kind != kind {
            return Err(BranchingViolation::KindMismatch {
                expected: kind,
                found: b.kind,
            });
        }
        verify_branching(d, b)
    };
    check(&cert.out_branching, BranchingKind::Out).map_err(PairViolation::Out)?;
    check(&cert.in_branching, BranchingKind::In).map_err(PairViolation::In)?;
    let mut used = vec![0u64; d.order()];
    for (u, v) in cert.out_branching.arcs() {
        used[u] |= 1 << v;
    }
    match cert.in_branching.arcs().find(|&(u, v)| used[u] >> v & 1 == 1) {
        Some(arc) => Err(PairViolation::SharedArc(arc)),
        None => Ok(()),
    }
}

impl GoodPairCert {
    pub fn order(&self) -> usize {
        self.out_branching.order()
    }

    pub fn roots(&self) -> (usize, usize) {
        (self.out_branching.root, self.in_branching.root)
    }

    /// The certificate of `D^rev` obtained by reversing every arc.
    pub fn reversed(&self) -> GoodPairCert {
        GoodPairCert {
            out_branching: self.in_branching.reversed(),
            in_branching: self.out_branching.reversed(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization is infallible")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization is infallible")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawCert = serde_json::from_str(text)?;
        raw.into_cert()
    }
}

struct ParentMap<'a>(&'a [Option<Arc>]);

impl Serialize for ParentMap<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.iter().flatten().count()))?;
        for (v, arc) in self.0.iter().enumerate() {
            if let Some((a, b)) = arc {
                map.serialize_entry(&v, &[a, b])?;
            }
        }
        map.end()
    }
}

struct RootedParents<'a>(&'a Branching);

impl Serialize for RootedParents<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Branching", 2)?;
        st.serialize_field("root", &self.0.root)?;
        st.serialize_field("parent", &ParentMap(&self.0.parent))?;
        st.end()
    }
}

impl Serialize for GoodPairCert {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GoodPairCert", 3)?;
        st.serialize_field("n", &self.order())?;
        st.serialize_field("out", &RootedParents(&self.out_branching))?;
        st.serialize_field("in", &RootedParents(&self.in_branching))?;
        st.end()
    }
}

/// Standalone form: `{"kind": .., "root": .., "parent": {..}}`.
impl Serialize for Branching {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Branching", 3)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("root", &self.root)?;
        st.serialize_field("parent", &ParentMap(&self.parent))?;
        st.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBranching {
    root: usize,
    parent: BTreeMap<usize, [usize; 2]>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCert {
    n: usize,
    out: RawBranching,
    #[serde(rename = "in")]
    in_: RawBranching,
}

impl RawBranching {
    fn into_branching(self, kind: BranchingKind, n: usize) -> Result<Branching> {
        let mut parent = vec![None; n];
        for (v, [a, b]) in self.parent {
            if v >= n {
                return Err(Error::Certificate(format!(
                    "{kind}-branching lists vertex {v} but n = {n}"
                )));
            }
            parent[v] = Some((a, b));
        }
        Ok(Branching::new(kind, self.root, parent))
    }
}

impl RawCert {
    fn into_cert(self) -> Result<GoodPairCert> {
        if self.n == 0 || self.n > crate::MAX_VERTICES {
            return Err(Error::Certificate(format!("n = {} out of range", self.n)));
        }
        Ok(GoodPairCert {
            out_branching: self.out.into_branching(BranchingKind::Out, self.n)?,
            in_branching: self.in_.into_branching(BranchingKind::In, self.n)?,
        })
    }
}

/// `Out(D)` or `In(D)`: the vertices that can root a spanning branching of
/// the given kind. Nonempty exactly when the digraph has a unique initial
/// (resp. terminal) strong component, and then equal to it.
pub fn branching_roots(d: &Digraph, kind: BranchingKind) -> VertexSet {
    let sd = strong_decomposition(d);
    let mut candidates: Vec<VertexSet> = match kind {
        BranchingKind::Out => sd.initial_components().collect(),
        BranchingKind::In => sd.terminal_components().collect(),
    };
    if candidates.len() == 1 {
        candidates.pop().unwrap_or_default()
    } else {
        VertexSet::EMPTY
    }
}

/// Breadth-first spanning branching from `root` with lowest-index
/// tie-breaking, or `None` when `root` cannot reach (resp. be reached from)
/// every vertex.
pub fn bfs_branching(d: &Digraph, root: usize, kind: BranchingKind) -> Option<Branching> {
    let rows = match kind {
        BranchingKind::Out => d.rows(),
        BranchingKind::In => transpose_rows(&d.rows()),
    };
    let parents = bfs_parents(&rows, root, VertexSet::full(d.order()).bits())?;
    Some(Branching::from_parent_vertices(kind, root, &parents))
}

/// BFS tree of `root` inside `within` over `rows`; `None` if it does not
/// span `within`.
pub(crate) fn bfs_parents(rows: &[u64], root: usize, within: u64) -> Option<Vec<Option<usize>>> {
    let mut parents = vec![None; rows.len()];
    let mut seen = 1u64 << root;
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        let mut fresh = rows[u] & within & !seen;
        seen |= fresh;
        while fresh != 0 {
            let v = fresh.trailing_zeros() as usize;
            fresh &= fresh - 1;
            parents[v] = Some(u);
            queue.push_back(v);
        }
    }
    (seen & within == within).then_some(parents)
}

const ENUMERATION_MAX: usize = 8;

/// Every spanning branching of `kind` rooted at `root`, each exactly once,
/// at most `limit` of them.
///
/// Brute force over parent choices; meant as an independent oracle for
/// tiny digraphs.
pub fn enumerate_branchings(
    d: &Digraph,
    kind: BranchingKind,
    root: usize,
    limit: usize,
) -> Result<BranchingEnumerator> {
    let n = d.order();
    if n > ENUMERATION_MAX {
        return Err(Error::TooLarge {
            what: "branching enumeration",
            n,
            max: ENUMERATION_MAX,
        });
    }
    if limit == 0 {
        return Err(Error::precondition("enumeration limit must be positive"));
    }
    if root >= n {
        return Err(Error::VertexOutOfRange { vertex: root, n });
    }
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            if v == root {
                return vec![];
            }
            let nbrs = match kind {
                BranchingKind::Out => d.in_neighbours(v),
                BranchingKind::In => d.out_neighbours(v),
            };
            nbrs.iter().collect()
        })
        .collect();
    let exhausted = (0..n).any(|v| v != root && choices[v].is_empty());
    Ok(BranchingEnumerator {
        kind,
        root,
        cursor: vec![0; n],
        choices,
        exhausted,
        remaining: limit,
    })
}

pub struct BranchingEnumerator {
    kind: BranchingKind,
    root: usize,
    choices: Vec<Vec<usize>>,
    cursor: Vec<usize>,
    exhausted: bool,
    remaining: usize,
}

impl BranchingEnumerator {
    fn current(&self) -> Vec<Option<usize>> {
        (0..self.choices.len())
            .map(|v| (v != self.root).then(|| self.choices[v][self.cursor[v]]))
            .collect()
    }

    fn advance(&mut self) {
        for v in 0..self.choices.len() {
            if v == self.root {
                continue;
            }
            self.cursor[v] += 1;
            if self.cursor[v] < self.choices[v].len() {
                return;
            }
            self.cursor[v] = 0;
        }
        self.exhausted = true;
    }

    fn acyclic(&self, parents: &[Option<usize>]) -> bool {
        let n = parents.len();
        (0..n).all(|start| {
            let mut v = start;
            for _ in 0..n {
                match parents[v] {
                    None => return true,
                    Some(p) => v = p,
                }
            }
            false
        })
    }
}

impl Iterator for BranchingEnumerator {
    type Item = Branching;

    fn next(&mut self) -> Option<Branching> {
        while !self.exhausted && self.remaining > 0 {
            let parents = self.current();
            self.advance();
            if self.acyclic(&parents) {
                self.remaining -= 1;
                return Some(Branching::from_parent_vertices(self.kind, self.root, &parents));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c3() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn bidirected(n: usize) -> Digraph {
        let arcs = (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)));
        Digraph::from_arcs(n, arcs).unwrap()
    }

    fn out_c3() -> Branching {
        Branching::new(BranchingKind::Out, 0, vec![None, Some((0, 1)), Some((1, 2))])
    }

    #[test]
    fn verify_examples() {
        let d = c3();
        assert_eq!(verify_branching(&d, &out_c3()), Ok(()));
        let bad = Branching::new(BranchingKind::Out, 0, vec![None, Some((0, 1)), Some((2, 1))]);
        assert!(matches!(
            verify_branching(&d, &bad),
            Err(BranchingViolation::NotIncident { vertex: 2, .. })
        ));
        let absent = Branching::new(BranchingKind::Out, 1, vec![Some((2, 0)), None, Some((1, 2))]);
        assert_eq!(verify_branching(&d, &absent), Ok(()));
        let absent = Branching::new(BranchingKind::Out, 0, vec![None, Some((2, 1)), Some((1, 2))]);
        assert_eq!(verify_branching(&d, &absent), Err(BranchingViolation::ArcAbsent((2, 1))));
        let d2 = Digraph::from_arcs(3, [(1, 2), (2, 1), (0, 1)]).unwrap();
        let cyc = Branching::new(BranchingKind::Out, 0, vec![None, Some((2, 1)), Some((1, 2))]);
        assert!(matches!(verify_branching(&d2, &cyc), Err(BranchingViolation::Cycle(_))));
    }

    #[test]
    fn violation_message_names_absent_arc() {
        let bad = Branching::new(BranchingKind::Out, 0, vec![None, Some((0, 1)), Some((0, 2))]);
        let msg = verify_branching(&c3(), &bad).unwrap_err().to_string();
        assert!(msg.starts_with("arc absent"), "{msg}");
    }

    #[test]
    fn good_pair_examples() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let cert = GoodPairCert {
            out_branching: Branching::new(BranchingKind::Out, 0, vec![None, Some((0, 1))]),
            in_branching: Branching::new(BranchingKind::In, 0, vec![None, Some((1, 0))]),
        };
        assert_eq!(verify_good_pair(&digon, &cert), Ok(()));

        // any out- and in-branching of C3 share an arc
        let d = c3();
        for r_out in 0..3 {
            for r_in in 0..3 {
                for o in enumerate_branchings(&d, BranchingKind::Out, r_out, 100).unwrap() {
                    for i in enumerate_branchings(&d, BranchingKind::In, r_in, 100).unwrap() {
                        let cert = GoodPairCert { out_branching: o.clone(), in_branching: i };
                        assert!(matches!(
                            verify_good_pair(&d, &cert),
                            Err(PairViolation::SharedArc(_))
                        ));
                    }
                }
            }
        }
    }

    #[test]
    fn wrong_kind_is_rejected() {
        let digon = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        let o = Branching::new(BranchingKind::Out, 0, vec![None, Some((0, 1))]);
        let cert = GoodPairCert { out_branching: o.clone(), in_branching: o };
        assert!(matches!(
            verify_good_pair(&digon, &cert),
            Err(PairViolation::In(BranchingViolation::KindMismatch { .. }))
        ));
    }

    #[test]
    fn json_schema_field_order() {
        let cert = GoodPairCert {
            out_branching: Branching::new(BranchingKind::Out, 0, vec![None, Some((0, 1))]),
            in_branching: Branching::new(BranchingKind::In, 0, vec![None, Some((1, 0))]),
        };
        let json = cert.to_json();
        assert_eq!(
            json,
            r#"{"n":2,"out":{"root":0,"parent":{"1":[0,1]}},"in":{"root":0,"parent":{"1":[1,0]}}}"#
        );
        assert_eq!(GoodPairCert::from_json(&json).unwrap(), cert);
    }

    #[test]
    fn json_keys_in_numeric_order() {
        let mut parent = vec![None; 12];
        for (v, slot) in parent.iter_mut().enumerate().skip(1) {
            *slot = Some((0, v));
        }
        let b = Branching::new(BranchingKind::Out, 0, parent);
        let json = serde_json::to_string(&b).unwrap();
        let two = json.find("\"2\"").unwrap();
        let ten = json.find("\"10\"").unwrap();
        assert!(two < ten, "{json}");
    }

    #[test]
    fn json_rejects_out_of_range_vertex() {
        let text = r#"{"n":2,"out":{"root":0,"parent":{"5":[0,1]}},"in":{"root":0,"parent":{}}}"#;
        assert!(matches!(GoodPairCert::from_json(text), Err(Error::Certificate(_))));
        assert!(GoodPairCert::from_json("{\"n\":2}").is_err());
    }

    #[test]
    fn roots_examples() {
        let full3 = VertexSet::full(3);
        assert_eq!(branching_roots(&c3(), BranchingKind::Out), full3);
        assert_eq!(branching_roots(&c3(), BranchingKind::In), full3);
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(branching_roots(&path, BranchingKind::Out), VertexSet::singleton(0));
        assert_eq!(branching_roots(&path, BranchingKind::In), VertexSet::singleton(2));
        let digons = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 3), (3, 2)]).unwrap();
        assert!(branching_roots(&digons, BranchingKind::Out).is_empty());
    }

    #[test]
    fn bfs_branching_spans() {
        let d = bidirected(5);
        for kind in [BranchingKind::Out, BranchingKind::In] {
            let b = bfs_branching(&d, 3, kind).unwrap();
            assert_eq!(verify_branching(&d, &b), Ok(()));
        }
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert!(bfs_branching(&path, 1, BranchingKind::Out).is_none());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_branchings(&c3(), BranchingKind::Out, 0, 100).unwrap().count(), 1);
        assert_eq!(enumerate_branchings(&bidirected(3), BranchingKind::Out, 0, 100).unwrap().count(), 3);
        // Cayley: n^(n-2) spanning trees, each orients uniquely from a root
        assert_eq!(enumerate_branchings(&bidirected(5), BranchingKind::In, 2, 1000).unwrap().count(), 125);
        assert_eq!(enumerate_branchings(&bidirected(5), BranchingKind::Out, 0, 7).unwrap().count(), 7);
        assert!(enumerate_branchings(&c3(), BranchingKind::Out, 0, 0).is_err());
        assert!(enumerate_branchings(&bidirected(9), BranchingKind::Out, 0, 1).is_err());
    }

    /// Number of out-branchings rooted at `root`: determinant of the
    /// in-degree Laplacian with the root's row and column removed.
    fn matrix_tree_count(d: &Digraph, root: usize) -> i128 {
        let n = d.order();
        let idx: Vec<usize> = (0..n).filter(|&v| v != root).collect();
        let m = idx.len();
        let mut a = vec![vec![0i128; m]; m];
        for (i, &u) in idx.iter().enumerate() {
            for (j, &v) in idx.iter().enumerate() {
                a[i][j] = if u == v {
                    d.in_degree(v) as i128
                } else if d.has_arc(u, v) {
                    -1
                } else {
                    0
                };
            }
        }
        // Bareiss fraction-free elimination
        let mut sign = 1;
        let mut prev = 1i128;
        for k in 0..m {
            if a[k][k] == 0 {
                match (k + 1..m).find(|&r| a[r][k] != 0) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..m {
                for j in k + 1..m {
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
                }
            }
            prev = a[k][k];
        }
        if m == 0 {
            1
        } else {
            sign * a[m - 1][m - 1]
        }
    }

    #[test]
    fn enumeration_matches_matrix_tree() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = 5;
            let p = rng.gen_range(0.2..0.9);
            let arcs: Vec<_> = (0..n)
                .flat_map(|u| (0..n).map(move |v| (u, v)))
                .filter(|&(u, v)| u != v)
                .filter(|_| rng.gen_bool(p))
                .collect();
            let d = Digraph::from_arcs(n, arcs).unwrap();
            let root = rng.gen_range(0..n);
            let listed: Vec<Branching> = enumerate_branchings(&d, BranchingKind::Out, root, usize::MAX)
                .unwrap()
                .collect();
            assert_eq!(listed.len() as i128, matrix_tree_count(&d, root));
            for b in &listed {
                assert_eq!(verify_branching(&d, b), Ok(()));
            }
            let mut dedup = listed.clone();
            dedup.sort_by(|a, b| a.parent_arcs().cmp(b.parent_arcs()));
            dedup.dedup();
            assert_eq!(dedup.len(), listed.len());
        }
    }

    #[test]
    fn corrupted_certificates_are_rejected() {
        // one field of a valid branching is changed in a way that must break it
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut trials = 0;
        while trials < 10_000 {
            let n = rng.gen_range(3..9);
            let d = bidirected(n);
            let kind = if rng.gen_bool(0.5) { BranchingKind::Out } else { BranchingKind::In };
            let root = rng.gen_range(0..n);
            let b = bfs_branching(&d, root, kind).unwrap();
            let mut bad = b.clone();
            let v = (root + rng.gen_range(1..n)) % n;
            match rng.gen_range(0..5) {
                // drop a parent arc
                0 => bad.set_parent(v, None),
                // give the root a parent
                1 => bad.set_parent(root, b.parent_arc(v).map(|_| match kind {
                    BranchingKind::Out => (v, root),
                    BranchingKind::In => (root, v),
                })),
                // move the root
                2 => bad.set_root(v),
                // detach the arc from its owner
                3 => {
                    let w = (v + rng.gen_range(1..n)) % n;
                    let (t, h) = b.parent_arc(v).unwrap();
                    let arc = match kind {
                        BranchingKind::Out if w != t => (t, w),
                        BranchingKind::In if w != h => (w, h),
                        _ => continue,
                    };
                    bad.set_parent(v, Some(arc));
                }
                // point at a descendant, closing a cycle
                _ => {
                    let child = (0..n).find(|&c| b.parent_vertex(c) == Some(v));
                    let Some(c) = child else { continue };
                    let arc = match kind {
                        BranchingKind::Out => (c, v),
                        BranchingKind::In => (v, c),
                    };
                    bad.set_parent(v, Some(arc));
                }
            }
            trials += 1;
            assert!(verify_branching(&d, &bad).is_err(), "{b} corrupted to {bad}");
        }
    }
}
