//! Hamilton and longest dipaths by dynamic programming over vertex
//! subsets, and good pairs assembled from a Hamilton dipath.

use crate::branching::{bfs_parents, Branching, BranchingKind, GoodPairCert};
use crate::digraph::{transpose_rows, Arc, Digraph, Dipath, VertexSet};
use crate::error::{Error, Result};
use crate::scc::strong_decomposition;

use super::checked;

pub const MAX_HAMILTON_ORDER: usize = 20;

fn check_order(d: &Digraph, what: &'static str) -> Result<()> {
    if d.order() > MAX_HAMILTON_ORDER {
        return Err(Error::TooLarge {
            what,
            n: d.order(),
            max: MAX_HAMILTON_ORDER,
        });
    }
    Ok(())
}

/// `ends[S]`: the vertices at which some dipath with vertex set exactly
/// `S` ends.
fn path_ends(rows: &[u64]) -> Vec<u64> {
    let n = rows.len();
    let mut ends = vec![0u64; 1 << n];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..ends.len() {
        let mut e = ends[mask];
        if e == 0 {
            continue;
        }
        let mut next = 0u64;
        while e != 0 {
            next |= rows[e.trailing_zeros() as usize];
            e &= e - 1;
        }
        next &= !(mask as u64);
        while next != 0 {
            let w = next.trailing_zeros();
            next &= next - 1;
            ends[mask | 1 << w] |= 1 << w;
        }
    }
    ends
}

/// Recovers a dipath on `mask` ending at `end`, choosing the lowest
/// predecessor at each step.
fn trace_back(rows: &[u64], ends: &[u64], mut mask: usize, end: usize) -> Vec<usize> {
    let mut path = vec![end];
    let mut cur = end;
    while mask.count_ones() > 1 {
        mask &= !(1 << cur);
        let mut cands = ends[mask];
        while cands != 0 {
            let u = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if rows[u] >> cur & 1 == 1 {
                cur = u;
                break;
            }
        }
        path.push(cur);
    }
    path.reverse();
    path
}

/// A spanning dipath, or `None` when there is none.
pub fn hamilton_dipath(d: &Digraph) -> Result<Option<Dipath>> {
    check_order(d, "hamilton_dipath")?;
    let rows = d.rows();
    let ends = path_ends(&rows);
    let full = ends.len() - 1;
    Ok(VertexSet::from_bits(ends[full])
        .first()
        .map(|end| Dipath::new_unchecked(trace_back(&rows, &ends, full, end))))
}

/// A dipath with the largest number of vertices.
pub fn longest_dipath(d: &Digraph) -> Result<Dipath> {
    check_order(d, "longest_dipath")?;
    let rows = d.rows();
    let ends = path_ends(&rows);
    let (mask, e) = ends
        .iter()
        .enumerate()
        .filter(|(_, &e)| e != 0)
        .max_by_key(|&(m, _)| (m.count_ones(), std::cmp::Reverse(m)))
        .expect("single vertices are dipaths");
    Ok(Dipath::new_unchecked(trace_back(&rows, &ends, mask, e.trailing_zeros() as usize)))
}

/// Up to `limit` Hamilton dipaths in lexicographic order of their vertex
/// sequences.
pub fn hamilton_dipaths(d: &Digraph, limit: usize) -> Result<Vec<Dipath>> {
    check_order(d, "hamilton_dipaths")?;
    let rows = d.rows();
    // starts[S]: first vertices of dipaths with vertex set exactly S
    let starts = path_ends(&transpose_rows(&rows));
    let full = starts.len() - 1;
    let mut found = Vec::new();
    let mut path = Vec::with_capacity(d.order());

    fn extend(rows: &[u64], starts: &[u64], full: usize, path: &mut Vec<usize>, found: &mut Vec<Dipath>, limit: usize) {
        let mask = path.iter().fold(0usize, |m, &v| m | 1 << v);
        let rest = full & !mask;
        if rest == 0 {
            found.push(Dipath::new_unchecked(path.clone()));
            return;
        }
        let last = *path.last().expect("nonempty");
        let mut next = rows[last] & starts[rest];
        while next != 0 && found.len() < limit {
            let w = next.trailing_zeros() as usize;
            next &= next - 1;
            path.push(w);
            extend(rows, starts, full, path, found, limit);
            path.pop();
        }
    }

    let mut first = starts[full];
    while first != 0 && found.len() < limit {
        let s = first.trailing_zeros() as usize;
        first &= first - 1;
        path.push(s);
        extend(&rows, &starts, full, &mut path, &mut found, limit);
        path.pop();
    }
    Ok(found)
}

/// Builds a good pair of an oriented graph from a Hamilton dipath `P`
/// when `D - A(P)` splits into exactly two strong components with no arc
/// between them, and for some `q ∈ {2, 3, n-1, n}` the vertices `x_{q-1}`
/// and `x_q` lie in different components.
pub fn pair_from_hamilton(d: &Digraph, p: &Dipath) -> Result<Option<GoodPairCert>> {
    let n = d.order();
    if p.is_closed() || p.len() != n {
        return Err(Error::precondition(format!(
            "dipath has {} vertices, a Hamilton dipath needs {n}",
            p.len()
        )));
    }
    let p = Dipath::new(d, p.vertices().to_vec(), false)?;
    if let Some((u, v)) = d.first_digon() {
        return Err(Error::precondition(format!("digraph has the digon {{{u},{v}}}")));
    }
    if n < 2 {
        return Ok(None);
    }
    let path_arcs: Vec<Arc> = p.arcs().collect();
    let rest = d.without_arcs(&path_arcs);
    let sd = strong_decomposition(&rest);
    if sd.len() != 2 || !sd.condensation_arcs(&rest).is_empty() {
        return Ok(None);
    }
    let xs = p.vertices();
    let mut qs = vec![2, 3, n - 1, n];
    qs.retain(|&q| q >= 2 && q <= n);
    qs.sort_unstable();
    qs.dedup();
    for q in qs {
        let (a, b) = (xs[q - 2], xs[q - 1]);
        if sd.component_of(a) == sd.component_of(b) {
            continue;
        }
        let i1 = sd.components()[sd.component_of(a)];
        let i2 = sd.components()[sd.component_of(b)];
        let built = if q >= n - 1 { late_split(&rest, xs, a, b, i1, i2) } else { None };
        let built = built.or_else(|| if q <= 3 { early_split(&rest, xs, a, b, i1, i2) } else { None });
        if let Some(cert) = built.and_then(|c| checked(d, c)) {
            return Ok(Some(cert));
        }
    }
    Ok(None)
}

fn path_parents(xs: &[usize], kind: BranchingKind) -> Vec<Option<Arc>> {
    let mut parent = vec![None; xs.len()];
    for w in xs.windows(2) {
        match kind {
            BranchingKind::Out => parent[w[1]] = Some((w[0], w[1])),
            BranchingKind::In => parent[w[0]] = Some((w[0], w[1])),
        }
    }
    parent
}

/// Copies BFS parents inside `within` into `parent` as arcs of `kind`.
fn graft(parent: &mut [Option<Arc>], rows: &[u64], root: usize, within: VertexSet, kind: BranchingKind) -> Option<()> {
    let tree = bfs_parents(rows, root, within.bits())?;
    for v in within.iter().filter(|&v| v != root) {
        let u = tree[v]?;
        parent[v] = Some(match kind {
            BranchingKind::Out => (u, v),
            BranchingKind::In => (v, u),
        });
    }
    Some(())
}

/// `q ∈ {n-1, n}`: the out-branching is `P` with `x_q` re-hung on an
/// in-neighbour `x` inside its component; the in-branching, rooted at `x`,
/// uses `x_{q-1} x_q`.
fn late_split(rest: &Digraph, xs: &[usize], a: usize, b: usize, i1: VertexSet, i2: VertexSet) -> Option<GoodPairCert> {
    let x = rest.in_neighbours(b).intersection(i2).first()?;
    let mut out = path_parents(xs, BranchingKind::Out);
    out[b] = Some((x, b));

    let mut inner = rest.clone();
    inner.remove_arc(x, b);
    let back = transpose_rows(&inner.rows());
    let mut inn = vec![None; xs.len()];
    graft(&mut inn, &back, x, i2, BranchingKind::In)?;
    graft(&mut inn, &back, a, i1, BranchingKind::In)?;
    inn[a] = Some((a, b));
    Some(GoodPairCert {
        out_branching: Branching::new(BranchingKind::Out, xs[0], out),
        in_branching: Branching::new(BranchingKind::In, x, inn),
    })
}

/// `q ∈ {2, 3}`: the in-branching is `P` with `x_{q-1}` re-hung on an
/// out-neighbour `y` inside its component; the out-branching, rooted at
/// `y`, uses `x_{q-1} x_q`.
fn early_split(rest: &Digraph, xs: &[usize], a: usize, b: usize, i1: VertexSet, i2: VertexSet) -> Option<GoodPairCert> {
    let y = rest.out_neighbours(a).intersection(i1).first()?;
    let mut inn = path_parents(xs, BranchingKind::In);
    inn[a] = Some((a, y));

    let mut inner = rest.clone();
    inner.remove_arc(a, y);
    let fwd = inner.rows();
    let mut out = vec![None; xs.len()];
    graft(&mut out, &fwd, y, i1, BranchingKind::Out)?;
    graft(&mut out, &fwd, b, i2, BranchingKind::Out)?;
    out[b] = Some((a, b));
    Some(GoodPairCert {
        out_branching: Branching::new(BranchingKind::Out, y, out),
        in_branching: Branching::new(BranchingKind::In, *xs.last().expect("n >= 2"), inn),
    })
}
