use crate::branching::{verify_good_pair, Branching, BranchingKind, GoodPairCert};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// Moves both roots of a good pair rooted at `s` to `t` across the digon
/// `{s, t}`: the in-arc of `t` in the out-branching is replaced by `ts`
/// and the out-arc of `t` in the in-branching by `st`.
pub fn digon_root_transfer(d: &Digraph, cert: &GoodPairCert, t: usize) -> Result<GoodPairCert> {
    let n = d.order();
    if t >= n {
        return Err(Error::VertexOutOfRange { vertex: t, n });
    }
    verify_good_pair(d, cert).map_err(|e| Error::Certificate(e.to_string()))?;
    let (s, s_in) = cert.roots();
    if s != s_in {
        return Err(Error::precondition(format!("certificate roots differ ({s} and {s_in})")));
    }
    if !d.is_digon(s, t) {
        return Err(Error::precondition(format!("{{{s},{t}}} is not a digon")));
    }

    let mut out = cert.out_branching.parent_arcs().to_vec();
    out[t] = None;
    out[s] = Some((t, s));
    let mut inn = cert.in_branching.parent_arcs().to_vec();
    inn[t] = None;
    inn[s] = Some((s, t));
    Ok(GoodPairCert {
        out_branching: Branching::new(BranchingKind::Out, t, out),
        in_branching: Branching::new(BranchingKind::In, t, inn),
    })
}
