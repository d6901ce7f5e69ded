//! Growing a good pair of `D[Q]` to all of `D` through the in- and
//! out-neighbourhoods `X = N^-(Q)` and `Y = N^+(Q)`.
//!
//! The out-branching reaches `Y` straight from `Q`, enters the initial
//! strong components of `D[X]` through arcs `P_X` from `Y`, and spreads
//! inside `X` along an out-forest `T_X`. Dually the in-branching leaves
//! `X` straight into `Q`, leaves the terminal strong components of `D[Y]`
//! through arcs `P_Y` into `X`, and gathers `Y` along an in-forest `T_Y`.
//! Only `P_X` and `P_Y` can collide, so they are chosen disjoint.
//!
//! Component conditions count arcs: `d_Y^-(X_i)` is the number of arcs
//! from `Y` into `X_i` and `d_X^+(Y_j)` the number from `Y_j` into `X`.

use serde::Serialize;

use super::{checked, lift_checked, PartialPair};
use crate::branching::GoodPairCert;
use crate::connectivity::arc_connectivity;
use crate::digraph::{Arc, Digraph, VertexSet};
use crate::error::{Error, Result};
use crate::scc::strong_decomposition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

/// The arc sets of a component pairing, in host numbering.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairingArtifacts {
    /// The out-branching of `Q` plus one in-arc from `Q` per vertex of `Y`.
    pub b_plus: Vec<Arc>,
    /// The in-branching of `Q` plus one out-arc into `Q` per vertex of `X`.
    pub b_minus: Vec<Arc>,
    pub p_x: Vec<Arc>,
    pub p_y: Vec<Arc>,
    pub t_x: Vec<Arc>,
    pub t_y: Vec<Arc>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairingOutcome {
    Paired {
        cert: GoodPairCert,
        artifacts: PairingArtifacts,
    },
    /// Neither condition holds; `component` is a strong component on
    /// `side` whose crossing-arc count `arcs` is too small.
    ConditionNotMet {
        side: Side,
        component: VertexSet,
        arcs: usize,
    },
}

impl PairingOutcome {
    pub fn cert(&self) -> Option<&GoodPairCert> {
        match self {
            PairingOutcome::Paired { cert, .. } => Some(cert),
            PairingOutcome::ConditionNotMet { .. } => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct NotMet {
    pub side: Side,
    pub component: VertexSet,
    pub arcs: usize,
}

#[derive(Clone, Debug, Default)]
pub(crate) struct CrossArcs {
    pub p_x: Vec<Arc>,
    pub p_y: Vec<Arc>,
    pub t_x: Vec<Arc>,
    pub t_y: Vec<Arc>,
}

impl CrossArcs {
    fn reversed(self) -> CrossArcs {
        let flip = |v: Vec<Arc>| v.into_iter().map(|(a, b)| (b, a)).collect();
        CrossArcs {
            p_x: flip(self.p_y),
            p_y: flip(self.p_x),
            t_x: flip(self.t_y),
            t_y: flip(self.t_x),
        }
    }
}

/// Initial (or terminal) strong components of `D[set]`, in host numbering.
fn end_components(d: &Digraph, set: VertexSet, initial: bool) -> Vec<VertexSet> {
    if set.is_empty() {
        return Vec::new();
    }
    let (sub, map) = d.induced_subdigraph(set).expect("nonempty subset");
    let sd = strong_decomposition(&sub);
    let comps: Vec<VertexSet> = if initial {
        sd.initial_components().collect()
    } else {
        sd.terminal_components().collect()
    };
    comps
        .into_iter()
        .map(|c| c.iter().map(|v| map[v]).collect())
        .collect()
}

/// Chooses `P_X`, `P_Y`, `T_X`, `T_Y` for disjoint `x` and `y` when
/// condition 1 or condition 2 holds.
pub(crate) fn cross_selection(d: &Digraph, x: VertexSet, y: VertexSet) -> std::result::Result<CrossArcs, NotMet> {
    let xs = end_components(d, x, true);
    let ys = end_components(d, y, false);
    let cx: Vec<usize> = xs.iter().map(|&c| d.arcs_between(y, c).len()).collect();
    let cy: Vec<usize> = ys.iter().map(|&c| d.arcs_between(c, x).len()).collect();

    let strict = |counts: &[usize]| counts.iter().all(|&c| c >= 2);
    // Some(weak component) when at most one component has a single arc
    let relaxed = |counts: &[usize]| -> Option<Option<usize>> {
        if counts.contains(&0) {
            return None;
        }
        let mut weak = counts.iter().enumerate().filter(|(_, &c)| c == 1).map(|(i, _)| i);
        let first = weak.next();
        weak.next().is_none().then_some(first)
    };

    if strict(&cy) {
        if let Some(weak) = relaxed(&cx) {
            return select(d, x, y, &xs, &ys, weak);
        }
    }
    if strict(&cx) {
        if let Some(weak) = relaxed(&cy) {
            let r = d.reverse();
            return select(&r, y, x, &ys, &xs, weak)
                .map(CrossArcs::reversed)
                .map_err(|nm| NotMet {
                    side: match nm.side {
                        Side::X => Side::Y,
                        Side::Y => Side::X,
                    },
                    ..nm
                });
        }
    }

    let fail = |side, comps: &[VertexSet], counts: &[usize], i: usize| NotMet {
        side,
        component: comps[i],
        arcs: counts[i],
    };
    if let Some(i) = cx.iter().position(|&c| c == 0) {
        return Err(fail(Side::X, &xs, &cx, i));
    }
    if let Some(i) = cy.iter().position(|&c| c == 0) {
        return Err(fail(Side::Y, &ys, &cy, i));
    }
    let weak_x: Vec<usize> = (0..cx.len()).filter(|&i| cx[i] == 1).collect();
    let weak_y: Vec<usize> = (0..cy.len()).filter(|&j| cy[j] == 1).collect();
    Err(match (weak_x.get(1), weak_y.get(1)) {
        (Some(&i), _) => fail(Side::X, &xs, &cx, i),
        (None, Some(&j)) => fail(Side::Y, &ys, &cy, j),
        _ => fail(Side::Y, &ys, &cy, weak_y[0]),
    })
}

/// The alternating choice under condition 1, starting from the weak
/// component of `D[X]` if there is one.
fn select(
    d: &Digraph,
    x: VertexSet,
    y: VertexSet,
    xs: &[VertexSet],
    ys: &[VertexSet],
    weak: Option<usize>,
) -> std::result::Result<CrossArcs, NotMet> {
    let comp_of = |comps: &[VertexSet], v: usize| comps.iter().position(|c| c.contains(v));
    let uncovered = |cov: &[bool]| cov.iter().position(|&c| !c);
    let mut cov_x = vec![false; xs.len()];
    let mut cov_y = vec![false; ys.len()];
    let mut arcs = CrossArcs::default();
    let used = |arcs: &CrossArcs, a: &Arc| arcs.p_x.contains(a) || arcs.p_y.contains(a);

    let mut next_x = (!xs.is_empty()).then(|| weak.unwrap_or(0));
    loop {
        let next_y = match next_x {
            Some(i) => {
                let cands: Vec<Arc> = d.arcs_between(y, xs[i]).into_iter().filter(|a| !used(&arcs, a)).collect();
                let preferred = cands
                    .iter()
                    .find(|&&(u, _)| comp_of(ys, u).is_some_and(|j| !cov_y[j]));
                let Some(&arc) = preferred.or(cands.first()) else {
                    return Err(NotMet {
                        side: Side::X,
                        component: xs[i],
                        arcs: d.arcs_between(y, xs[i]).len(),
                    });
                };
                arcs.p_x.push(arc);
                cov_x[i] = true;
                comp_of(ys, arc.0)
                    .filter(|&j| !cov_y[j])
                    .or_else(|| uncovered(&cov_y))
            }
            None => uncovered(&cov_y),
        };
        next_x = match next_y {
            Some(j) => {
                let cands: Vec<Arc> = d.arcs_between(ys[j], x).into_iter().filter(|a| !used(&arcs, a)).collect();
                let preferred = cands
                    .iter()
                    .find(|&&(_, v)| comp_of(xs, v).is_some_and(|i| !cov_x[i]));
                let Some(&arc) = preferred.or(cands.first()) else {
                    return Err(NotMet {
                        side: Side::Y,
                        component: ys[j],
                        arcs: d.arcs_between(ys[j], x).len(),
                    });
                };
                arcs.p_y.push(arc);
                cov_y[j] = true;
                comp_of(xs, arc.1)
                    .filter(|&i| !cov_x[i])
                    .or_else(|| uncovered(&cov_x))
            }
            None => uncovered(&cov_x),
        };
        if next_x.is_none() && uncovered(&cov_y).is_none() {
            break;
        }
    }

    let heads: VertexSet = arcs.p_x.iter().map(|&(_, v)| v).collect();
    let tails: VertexSet = arcs.p_y.iter().map(|&(u, _)| u).collect();
    arcs.t_x = forest(d, x, heads, false);
    arcs.t_y = forest(d, y, tails, true);
    Ok(arcs)
}

/// BFS forest inside `set` from `sources`: out-forest, or in-forest when
/// `backward`.
fn forest(d: &Digraph, set: VertexSet, sources: VertexSet, backward: bool) -> Vec<Arc> {
    let mut reached = sources;
    let mut queue: Vec<usize> = sources.iter().collect();
    let mut arcs = Vec::new();
    let mut k = 0;
    while k < queue.len() {
        let u = queue[k];
        k += 1;
        let next = if backward { d.in_neighbours(u) } else { d.out_neighbours(u) };
        for v in next.intersection(set).difference(reached).iter() {
            reached.insert(v);
            queue.push(v);
            arcs.push(if backward { (v, u) } else { (u, v) });
        }
    }
    arcs
}

/// Hangs `x_hang` and `y_hang` directly on the covered set `q`, then adds
/// the cross arcs. Returns the `b_plus` and `b_minus` arc lists.
fn assemble(
    d: &Digraph,
    pair: &mut PartialPair,
    x_hang: VertexSet,
    y_hang: VertexSet,
    cross: &CrossArcs,
) -> Option<(Vec<Arc>, Vec<Arc>)> {
    let q = pair.set;
    let mut b_plus: Vec<Arc> = pair.out_parent.iter().flatten().copied().collect();
    let mut b_minus: Vec<Arc> = pair.in_parent.iter().flatten().copied().collect();
    for v in y_hang.iter() {
        let u = d.in_neighbours(v).intersection(q).first()?;
        pair.add_out((u, v));
        b_plus.push((u, v));
    }
    for v in x_hang.iter() {
        let u = d.out_neighbours(v).intersection(q).first()?;
        pair.add_in((v, u));
        b_minus.push((v, u));
    }
    for &a in cross.p_x.iter().chain(&cross.t_x) {
        pair.add_out(a);
    }
    for &a in cross.p_y.iter().chain(&cross.t_y) {
        pair.add_in(a);
    }
    Some((b_plus, b_minus))
}

fn neighbourhoods(d: &Digraph, q: VertexSet) -> Result<(VertexSet, VertexSet)> {
    let x = d.in_neighbourhood(q);
    let y = d.out_neighbourhood(q);
    let both = x.intersection(y);
    if !both.is_empty() {
        return Err(Error::precondition(format!(
            "N^-(Q) and N^+(Q) share {both}; absorb those vertices first"
        )));
    }
    Ok((x, y))
}

/// Builds a good pair of `D` from a good pair of `D[Q]` when the
/// neighbourhoods of `Q` cover the rest of `D` and one of the component
/// conditions holds (always the case when `λ(D) ≥ 2`).
pub fn component_pairing(d: &Digraph, q: VertexSet, cert_q: &GoodPairCert) -> Result<PairingOutcome> {
    let pair = lift_checked(d, q, cert_q)?;
    let (x, y) = neighbourhoods(d, q)?;
    let rest = d.vertices().difference(q).difference(x.union(y));
    if !rest.is_empty() {
        return Err(Error::precondition(format!(
            "{rest} lie outside Q and its neighbourhoods; use the spare-vertex route"
        )));
    }
    Ok(pair_components(d, pair, x, y))
}

pub(crate) fn pair_components(d: &Digraph, mut pair: PartialPair, x: VertexSet, y: VertexSet) -> PairingOutcome {
    let cross = match cross_selection(d, x, y) {
        Ok(c) => c,
        Err(nm) => {
            return PairingOutcome::ConditionNotMet {
                side: nm.side,
                component: nm.component,
                arcs: nm.arcs,
            }
        }
    };
    let (b_plus, b_minus) = assemble(d, &mut pair, x, y, &cross).expect("neighbourhood vertices have arcs to Q");
    let cert = pair.into_cert();
    debug_assert!(checked(d, cert.clone()).is_some());
    PairingOutcome::Paired {
        cert,
        artifacts: PairingArtifacts {
            b_plus,
            b_minus,
            p_x: cross.p_x,
            p_y: cross.p_y,
            t_x: cross.t_x,
            t_y: cross.t_y,
        },
    }
}

/// Extends a good pair of `D[Q]` over `X`: each vertex of `X`, taken in
/// ascending order and rescanning after every step, receives one in-arc
/// and one out-arc from the vertices covered so far. Returns the good pair
/// of `D[Q ∪ X]` in its dense numbering.
pub fn absorb_external_vertices(d: &Digraph, q: VertexSet, cert_q: &GoodPairCert, x: VertexSet) -> Result<GoodPairCert> {
    let mut pair = lift_checked(d, q, cert_q)?;
    if !x.is_subset(d.vertices()) {
        return Err(Error::precondition(format!("{x} is not a vertex set of the digraph")));
    }
    if !x.intersection(q).is_empty() {
        return Err(Error::precondition("X must be disjoint from Q"));
    }
    absorb(d, &mut pair, x)?;
    Ok(pair.restrict())
}

pub(crate) fn absorb(d: &Digraph, pair: &mut PartialPair, x: VertexSet) -> Result<()> {
    let mut pending = x;
    while let Some(stuck) = pending.first() {
        let next = pending.iter().find_map(|v| {
            let tail = d.in_neighbours(v).intersection(pair.set).first()?;
            let head = d.out_neighbours(v).intersection(pair.set).first()?;
            Some((v, tail, head))
        });
        let Some((v, tail, head)) = next else {
            return Err(Error::precondition(format!(
                "vertex {stuck} never gains both an in-neighbour and an out-neighbour among covered vertices"
            )));
        };
        pair.add_out((tail, v));
        pair.add_in((v, head));
        pending.remove(v);
    }
    Ok(())
}

/// The vertices that repeated absorption can add to `set`.
pub(crate) fn absorption_closure(d: &Digraph, set: VertexSet) -> VertexSet {
    let mut covered = set;
    loop {
        let next = d.vertices().difference(covered).iter().find(|&v| {
            !d.in_neighbours(v).intersection(covered).is_empty() && !d.out_neighbours(v).intersection(covered).is_empty()
        });
        match next {
            Some(v) => covered.insert(v),
            None => return covered.difference(set),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SpareRoute {
    /// An arc from `Y` into the spare vertex joins the out-branching.
    FromY(Arc),
    /// An arc from the spare vertex into `X` joins the in-branching.
    IntoX(Arc),
    /// The spare vertex hangs off `X` and `Y` directly.
    Direct { tail: usize, head: usize },
}

/// Builds a good pair of a 2-arc-strong `D` from a good pair of `D[Q]`
/// when exactly one vertex `w` lies outside `Q` and its neighbourhoods.
pub fn pair_with_spare_vertex(d: &Digraph, q: VertexSet, cert_q: &GoodPairCert, w: usize) -> Result<Option<GoodPairCert>> {
    let pair = lift_checked(d, q, cert_q)?;
    let (x, y) = neighbourhoods(d, q)?;
    let rest = d.vertices().difference(q).difference(x.union(y));
    if rest != VertexSet::singleton(w) {
        return Err(Error::precondition(format!(
            "vertices outside Q and its neighbourhoods are {rest}, expected exactly {{{w}}}"
        )));
    }
    let (lambda, _) = arc_connectivity(d)?;
    if lambda < 2 {
        return Err(Error::precondition(format!("arc-connectivity is {lambda}, needs at least 2")));
    }
    Ok(spare_vertex(d, &pair, x, y, w).map(|(cert, _)| cert))
}

pub(crate) fn spare_vertex(
    d: &Digraph,
    pair: &PartialPair,
    x: VertexSet,
    y: VertexSet,
    w: usize,
) -> Option<(GoodPairCert, SpareRoute)> {
    let ws = VertexSet::singleton(w);
    if !d.arcs_between(y, ws).is_empty() {
        let (cert, e) = spare_from_y(d, pair, x, y, w)?;
        return Some((cert, SpareRoute::FromY(e)));
    }
    if !d.arcs_between(ws, x).is_empty() {
        let r = d.reverse();
        let (cert, (a, b)) = spare_from_y(&r, &pair.reversed(), y, x, w)?;
        return checked(d, cert.reversed()).map(|c| (c, SpareRoute::IntoX((b, a))));
    }
    let tail = d.in_neighbours(w).intersection(x).first()?;
    let head = d.out_neighbours(w).intersection(y).first()?;
    let cross = cross_selection(d, x, y).ok()?;
    let mut p = pair.clone();
    assemble(d, &mut p, x, y, &cross)?;
    p.add_out((tail, w));
    p.add_in((w, head));
    checked(d, p.into_cert()).map(|c| (c, SpareRoute::Direct { tail, head }))
}

/// Route with an arc `e = vw` from `Y`: `w` joins `Y` in `D - e` and
/// reaches the out-branching through `e`.
fn spare_from_y(d: &Digraph, pair: &PartialPair, x: VertexSet, y: VertexSet, w: usize) -> Option<(GoodPairCert, Arc)> {
    let yw = y.union(VertexSet::singleton(w));
    let cands = d.in_neighbours(w).intersection(y);
    let in_terminal = |v: usize| {
        let dp = d.without_arcs(&[(v, w)]);
        end_components(&dp, yw, false).iter().any(|c| c.contains(v))
    };
    let v = cands.iter().find(|&v| in_terminal(v)).or(cands.first())?;
    let e = (v, w);
    let dp = d.without_arcs(&[e]);
    let cross = cross_selection(&dp, x, yw).ok()?;
    let mut p = pair.clone();
    assemble(d, &mut p, x, y, &cross)?;
    p.add_out(e);
    checked(d, p.into_cert()).map(|c| (c, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::verify_good_pair;
    use crate::solver::{find_good_pair_exact, SearchOptions};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn exact(d: &Digraph) -> Option<GoodPairCert> {
        find_good_pair_exact(d, SearchOptions::default()).unwrap().outcome.into_cert()
    }

    fn sub_cert(d: &Digraph, q: VertexSet) -> Option<GoodPairCert> {
        exact(&d.induced_subdigraph(q).unwrap().0)
    }

    fn digon_q() -> VertexSet {
        VertexSet::from_iter([0, 1])
    }

    #[test]
    fn single_backward_arc_has_no_disjoint_choice() {
        // Q = {0,1}, X = {2}, Y = {3}, the only arc between them is 3 -> 2
        let d = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 0), (0, 3), (3, 2)]).unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        let out = component_pairing(&d, digon_q(), &cert).unwrap();
        assert!(matches!(out, PairingOutcome::ConditionNotMet { arcs: 1, .. }));
        assert!(exact(&d).is_none());
    }

    #[test]
    fn disconnected_initial_component_fails() {
        // X = {2, 3}; {3} receives nothing from Y = {4}
        let d = Digraph::from_arcs(
            5,
            [(0, 1), (1, 0), (2, 0), (3, 1), (0, 4), (1, 4), (4, 2)],
        )
        .unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        match component_pairing(&d, digon_q(), &cert).unwrap() {
            PairingOutcome::ConditionNotMet { side, component, arcs } => {
                assert_eq!((side, component, arcs), (Side::X, VertexSet::singleton(3), 0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn weak_component_is_served_first() {
        // X = {2,3} independent: {2} gets one arc from Y, {3} gets two;
        // Y = {4,5} independent, each sends two arcs into X
        let d = Digraph::from_arcs(
            6,
            [
                (0, 1), (1, 0), (2, 0), (3, 1), (0, 4), (1, 5),
                (4, 2), (4, 3), (5, 3), (5, 2),
            ],
        )
        .unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        let out = component_pairing(&d, digon_q(), &cert).unwrap();
        let PairingOutcome::Paired { cert, artifacts } = out else { panic!("{out:?}") };
        assert_eq!(verify_good_pair(&d, &cert), Ok(()));
        assert_eq!(artifacts.p_x.len(), 2);
        assert_eq!(artifacts.p_y.len(), 2);
        assert!(artifacts.p_x.iter().all(|a| !artifacts.p_y.contains(a)));
    }

    #[test]
    fn preconditions_are_enforced() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (2, 0), (0, 2)]).unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        assert!(component_pairing(&d, digon_q(), &cert).is_err());
        let d = Digraph::from_arcs(4, [(0, 1), (1, 0), (2, 0), (0, 3), (3, 2), (2, 3)]).unwrap();
        assert!(component_pairing(&d, VertexSet::from_iter([0, 1, 2]), &cert).is_err());
    }

    #[test]
    fn absorb_single_vertex() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 0)]).unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        let c = absorb_external_vertices(&d, digon_q(), &cert, VertexSet::singleton(2)).unwrap();
        assert_eq!(verify_good_pair(&d, &c), Ok(()));
        assert_eq!(c.out_branching.parent_arc(2), Some((1, 2)));
        assert_eq!(c.in_branching.parent_arc(2), Some((2, 0)));
    }

    #[test]
    fn absorb_chain_needs_rescan() {
        // 3 only attaches after 2 is covered
        let d = Digraph::from_arcs(4, [(0, 1), (1, 0), (0, 2), (2, 1), (2, 3), (3, 2)]).unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        let c = absorb_external_vertices(&d, digon_q(), &cert, VertexSet::from_iter([2, 3])).unwrap();
        assert_eq!(verify_good_pair(&d, &c), Ok(()));
        // only out-neighbours outside
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (2, 0), (2, 1)]).unwrap();
        assert!(absorb_external_vertices(&d, digon_q(), &cert, VertexSet::singleton(2)).is_err());
    }

    #[test]
    fn absorb_around_bidirected_k3() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let q = VertexSet::from_iter([0, 1, 2]);
        for _ in 0..200 {
            let mut d = Digraph::empty(6).unwrap();
            for u in 0..3 {
                for v in 0..3 {
                    if u != v {
                        d.add_arc(u, v).unwrap();
                    }
                }
            }
            for v in 3..6 {
                d.add_arc(rng.gen_range(0..v), v).unwrap();
                d.add_arc(v, rng.gen_range(0..v)).unwrap();
            }
            let cert = sub_cert(&d, q).unwrap();
            let c = absorb_external_vertices(&d, q, &cert, VertexSet::from_iter([3, 4, 5])).unwrap();
            assert_eq!(verify_good_pair(&d, &c), Ok(()));
        }
    }

    #[test]
    fn spare_vertex_direct_route() {
        // Q = {0,1}; X = {2,3}; Y = {4,5}; w = 6 with in-arcs from X and
        // out-arcs to Y only
        let arcs = [
            (0, 1), (1, 0), (2, 0), (3, 1), (2, 1), (3, 0), (0, 4), (1, 5), (0, 5), (1, 4),
            (4, 2), (4, 3), (5, 2), (5, 3), (2, 6), (3, 6), (6, 4), (6, 5),
        ];
        let d = Digraph::from_arcs(7, arcs).unwrap();
        assert!(arc_connectivity(&d).unwrap().0 >= 2);
        let cert = sub_cert(&d, digon_q()).unwrap();
        let (c, route) = spare_vertex(&d, &lift_checked(&d, digon_q(), &cert).unwrap(), VertexSet::from_iter([2, 3]), VertexSet::from_iter([4, 5]), 6).unwrap();
        assert_eq!(route, SpareRoute::Direct { tail: 2, head: 4 });
        assert_eq!(c.out_branching.parent_arc(6), Some((2, 6)));
        assert_eq!(c.in_branching.parent_arc(6), Some((6, 4)));
        assert_eq!(pair_with_spare_vertex(&d, digon_q(), &cert, 6).unwrap(), Some(c));
    }

    #[test]
    fn spare_vertex_arc_from_y() {
        let arcs = [
            (0, 1), (1, 0), (2, 0), (3, 1), (2, 1), (3, 0), (0, 4), (1, 5), (0, 5), (1, 4),
            (4, 2), (4, 3), (5, 2), (5, 3), (2, 6), (4, 6), (6, 4), (6, 3),
        ];
        let d = Digraph::from_arcs(7, arcs).unwrap();
        assert!(arc_connectivity(&d).unwrap().0 >= 2);
        let cert = sub_cert(&d, digon_q()).unwrap();
        let pair = lift_checked(&d, digon_q(), &cert).unwrap();
        let (c, route) = spare_vertex(&d, &pair, VertexSet::from_iter([2, 3]), VertexSet::from_iter([4, 5]), 6).unwrap();
        assert_eq!(route, SpareRoute::FromY((4, 6)));
        assert_eq!(verify_good_pair(&d, &c), Ok(()));
        // the mirror image goes through the reverse
        let r = d.reverse();
        let c = pair_with_spare_vertex(&r, digon_q(), &cert.reversed(), 6).unwrap().unwrap();
        assert_eq!(verify_good_pair(&r, &c), Ok(()));
    }

    #[test]
    fn spare_vertex_rejects_overlap() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (2, 0), (0, 2)]).unwrap();
        let cert = sub_cert(&d, digon_q()).unwrap();
        assert!(pair_with_spare_vertex(&d, digon_q(), &cert, 2).is_err());
    }

    // Condition 1 or 2 as stated, evaluated from scratch.
    fn conditions_hold(d: &Digraph, x: VertexSet, y: VertexSet) -> bool {
        let into = |c: VertexSet| d.arcs().filter(|&(u, v)| y.contains(u) && c.contains(v)).count();
        let from = |c: VertexSet| d.arcs().filter(|&(u, v)| c.contains(u) && x.contains(v)).count();
        let cx: Vec<usize> = end_components(d, x, true).into_iter().map(into).collect();
        let cy: Vec<usize> = end_components(d, y, false).into_iter().map(from).collect();
        let ok = |weak: &[usize], strong: &[usize]| {
            strong.iter().all(|&c| c >= 2) && weak.iter().all(|&c| c >= 1) && weak.iter().filter(|&&c| c < 2).count() <= 1
        };
        ok(&cx, &cy) || ok(&cy, &cx)
    }

    #[test]
    fn random_partitions_follow_conditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut paired = 0;
        for _ in 0..3000 {
            let n = rng.gen_range(4..=8);
            let q = VertexSet::from_iter([0, 1]);
            let mut d = Digraph::from_arcs(n, [(0, 1), (1, 0)]).unwrap();
            let mut x = VertexSet::EMPTY;
            let mut y = VertexSet::EMPTY;
            for v in 2..n {
                let qv = rng.gen_range(0..2);
                if rng.gen_bool(0.5) {
                    x.insert(v);
                    d.add_arc(v, qv).unwrap();
                } else {
                    y.insert(v);
                    d.add_arc(qv, v).unwrap();
                }
            }
            for u in 2..n {
                for v in 2..n {
                    if u != v && rng.gen_bool(0.3) {
                        d.add_arc(u, v).unwrap();
                    }
                }
            }
            let cert = sub_cert(&d, q).unwrap();
            let out = component_pairing(&d, q, &cert).unwrap();
            assert_eq!(out.cert().is_some(), conditions_hold(&d, x, y), "{d:?}");
            if let Some(c) = out.cert() {
                assert_eq!(verify_good_pair(&d, c), Ok(()));
                paired += 1;
            }
        }
        assert!(paired > 100);
    }
}
