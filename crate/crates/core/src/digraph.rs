//! Loop-free simple digraphs on at most [`MAX_VERTICES`] vertices.
//!
//! Each vertex owns one `u64` row of out-neighbours, so vertex sets and
//! adjacency rows share the [`VertexSet`] representation. In-neighbourhoods
//! are recomputed from the rows when asked for.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_VERTICES: usize = 62;

/// An arc `(tail, head)`.
pub type Arc = (usize, usize);

/// A set of vertex indices packed into one machine word.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        VertexSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, 1, ..., n-1}`.
    pub const fn full(n: usize) -> Self {
        if n >= 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub const fn singleton(v: usize) -> Self {
        VertexSet(1u64 << v)
    }

    pub const fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn union(self, other: Self) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: Self) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub const fn difference(self, other: Self) -> Self {
        VertexSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> VertexIter {
        VertexIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = VertexIter;

    fn into_iter(self) -> VertexIter {
        self.iter()
    }
}

/// Ascending iterator over the members of a [`VertexSet`].
#[derive(Clone)]
pub struct VertexIter(u64);

impl Iterator for VertexIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for VertexIter {}

/// A loop-free digraph without parallel arcs. Equality compares order and
/// arc sets; the label is ignored.
#[derive(Clone)]
pub struct Digraph {
    out: Vec<VertexSet>,
    label: Option<String>,
}

impl PartialEq for Digraph {
    fn eq(&self, other: &Self) -> bool {
        self.out == other.out
    }
}

impl Eq for Digraph {}

impl std::hash::Hash for Digraph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.out.hash(state);
    }
}

impl Digraph {
    /// Arcless digraph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::VertexCount(n));
        }
        Ok(Digraph {
            out: vec![VertexSet::EMPTY; n],
            label: None,
        })
    }

    /// Builds a digraph from an arc list; repeated arcs collapse.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = Arc>,
    {
        let mut d = Digraph::empty(n)?;
        for (u, v) in arcs {
            d.add_arc(u, v)?;
        }
        Ok(d)
    }

    /// Builds a digraph from raw out-adjacency rows. Bits at or beyond `n`
    /// and diagonal bits are rejected.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        let mut d = Digraph::empty(n)?;
        let full = VertexSet::full(n).bits();
        for (u, &row) in rows.iter().enumerate() {
            if row & !full != 0 {
                let v = (row & !full).trailing_zeros() as usize;
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            if row >> u & 1 == 1 {
                return Err(Error::Loop(u));
            }
            d.out[u] = VertexSet::from_bits(row);
        }
        Ok(d)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    /// The order `|D|`.
    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order())
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Loop(u));
        }
        let fresh = !self.out[u].contains(v);
        self.out[u].insert(v);
        Ok(fresh)
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) -> bool {
        let present = self.has_arc(u, v);
        if present {
            self.out[u].remove(v);
        }
        present
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.out[u].contains(v)
    }

    pub fn out_neighbours(&self, v: usize) -> VertexSet {
        self.out[v]
    }

    pub fn in_neighbours(&self, v: usize) -> VertexSet {
        self.out
            .iter()
            .enumerate()
            .filter(|(_, row)| row.contains(v))
            .map(|(u, _)| u)
            .collect()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.out.iter().filter(|row| row.contains(v)).count()
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(|r| r.len()).sum()
    }

    /// Out-adjacency rows as raw words.
    pub fn rows(&self) -> Vec<u64> {
        self.out.iter().map(|r| r.bits()).collect()
    }

    /// Arcs in lexicographic `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |v| (u, v)))
    }

    /// `N^+(S)`: vertices outside `S` with an in-neighbour in `S`.
    pub fn out_neighbourhood(&self, s: VertexSet) -> VertexSet {
        let reach = s
            .iter()
            .fold(VertexSet::EMPTY, |acc, u| acc.union(self.out[u]));
        reach.difference(s)
    }

    /// `N^-(S)`: vertices outside `S` with an out-neighbour in `S`.
    pub fn in_neighbourhood(&self, s: VertexSet) -> VertexSet {
        self.vertices()
            .difference(s)
            .iter()
            .filter(|&u| !self.out[u].intersection(s).is_empty())
            .collect()
    }

    /// Arcs with tail in `from` and head in `to`, in lexicographic order.
    pub fn arcs_between(&self, from: VertexSet, to: VertexSet) -> Vec<Arc> {
        from.iter()
            .flat_map(|u| self.out[u].intersection(to).iter().map(move |v| (u, v)))
            .collect()
    }

    /// Arc-reversed digraph `D^rev`.
    pub fn reverse(&self) -> Digraph {
        let n = self.order();
        let mut out = vec![VertexSet::EMPTY; n];
        for (u, v) in self.arcs() {
            out[v].insert(u);
        }
        Digraph {
            out,
            label: self.label.clone(),
        }
    }

    /// `D[X]` with vertices renumbered densely in ascending order. The
    /// returned map sends each new index to its original vertex.
    pub fn induced_subdigraph(&self, x: VertexSet) -> Result<(Digraph, Vec<usize>)> {
        if x.is_empty() {
            return Err(Error::EmptySet);
        }
        if !x.is_subset(self.vertices()) {
            let v = x.difference(self.vertices()).first().unwrap_or(0);
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            });
        }
        let map: Vec<usize> = x.iter().collect();
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let out = map
            .iter()
            .map(|&v| {
                self.out[v]
                    .intersection(x)
                    .iter()
                    .map(|w| index[w])
                    .collect()
            })
            .collect();
        Ok((Digraph { out, label: None }, map))
    }

    /// Spanning subdigraph with the given arcs deleted.
    pub fn without_arcs<'a, I>(&self, arcs: I) -> Digraph
    where
        I: IntoIterator<Item = &'a Arc>,
    {
        let mut d = self.clone();
        for &(u, v) in arcs {
            d.remove_arc(u, v);
        }
        d
    }

    pub fn is_digon(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) && self.has_arc(v, u)
    }

    /// Lowest digon `{u, v}` with `u < v`, if any.
    pub fn first_digon(&self) -> Option<(usize, usize)> {
        self.arcs().find(|&(u, v)| u < v && self.has_arc(v, u))
    }

    /// True when the digraph has no digon.
    pub fn is_oriented(&self) -> bool {
        self.first_digon().is_none()
    }

    /// Every pair of distinct vertices is joined by at least one arc.
    pub fn is_semicomplete(&self) -> bool {
        let n = self.order();
        (0..n).all(|u| (u + 1..n).all(|v| self.has_arc(u, v) || self.has_arc(v, u)))
    }

    /// `δ^0(D)`, the minimum over all in- and out-degrees.
    pub fn min_semi_degree(&self) -> usize {
        (0..self.order())
            .map(|v| self.out_degree(v).min(self.in_degree(v)))
            .min()
            .unwrap_or(0)
    }

    /// Vertices reachable from `start` (including `start`).
    pub fn reachable_from(&self, start: VertexSet) -> VertexSet {
        VertexSet::from_bits(reach_rows(&self.rows(), start.bits()))
    }

    /// Size of a largest independent vertex set, by exhaustive search.
    pub fn independence_number(&self) -> Result<usize> {
        const MAX: usize = 32;
        let n = self.order();
        if n > MAX {
            return Err(Error::TooLarge {
                what: "independence number",
                n,
                max: MAX,
            });
        }
        // symmetric closure of the arc relation
        let adj: Vec<u64> = (0..n)
            .map(|v| self.out[v].union(self.in_neighbours(v)).bits())
            .collect();
        Ok(max_independent(&adj, VertexSet::full(n).bits(), 0))
    }
}

// Branch on the lowest candidate: either it joins the set or it is dropped.
fn max_independent(adj: &[u64], candidates: u64, size: usize) -> usize {
    if candidates == 0 {
        return size;
    }
    let v = candidates.trailing_zeros() as usize;
    let rest = candidates & !(1u64 << v);
    let with = max_independent(adj, rest & !adj[v], size + 1);
    if with >= size + rest.count_ones() as usize {
        return with;
    }
    with.max(max_independent(adj, rest, size))
}

/// Closure of `start` under the out-adjacency `rows`.
pub(crate) fn reach_rows(rows: &[u64], start: u64) -> u64 {
    let mut seen = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= rows[u];
        }
        frontier = next & !seen;
        seen |= next;
    }
    seen
}

/// Transposed adjacency rows.
pub(crate) fn transpose_rows(rows: &[u64]) -> Vec<u64> {
    let mut t = vec![0u64; rows.len()];
    for (u, &row) in rows.iter().enumerate() {
        let mut r = row;
        while r != 0 {
            let v = r.trailing_zeros() as usize;
            r &= r - 1;
            t[v] |= 1u64 << u;
        }
    }
    t
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcs: Vec<Arc> = self.arcs().collect();
        f.debug_struct("Digraph")
            .field("n", &self.order())
            .field("arcs", &arcs)
            .finish()
    }
}

/// A directed path or, when `closed`, a directed cycle through its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dipath {
    vertices: Vec<usize>,
    closed: bool,
}

impl Dipath {
    /// Checks the vertices are distinct and consecutive ones are joined by
    /// arcs of `d` (plus the closing arc for a cycle).
    pub fn new(d: &Digraph, vertices: Vec<usize>, closed: bool) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut seen = VertexSet::EMPTY;
        for &v in &vertices {
            d.check_vertex(v)?;
            if seen.contains(v) {
                return Err(Error::precondition(format!("vertex {v} repeats on the dipath")));
            }
            seen.insert(v);
        }
        let p = Dipath { vertices, closed };
        if let Some((u, v)) = p.arcs().find(|&(u, v)| !d.has_arc(u, v)) {
            return Err(Error::precondition(format!("arc ({u},{v}) of the dipath is absent")));
        }
        Ok(p)
    }

    pub(crate) fn new_unchecked(vertices: Vec<usize>) -> Self {
        Dipath {
            vertices,
            closed: false,
        }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().copied().collect()
    }

    pub fn first(&self) -> usize {
        self.vertices[0]
    }

    pub fn last(&self) -> usize {
        self.vertices[self.vertices.len() - 1]
    }

    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        let closing = (self.closed && self.vertices.len() > 1)
            .then(|| (self.last(), self.first()));
        self.vertices
            .windows(2)
            .map(|w| (w[0], w[1]))
            .chain(closing)
    }
}

impl fmt::Display for Dipath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{v}")?;
        }
        if self.closed {
            write!(f, " -> {}", self.first())?;
        }
        Ok(())
    }
}
