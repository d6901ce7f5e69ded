//! Base cases on at most four vertices.

use crate::branching::GoodPairCert;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::genlab::{canonical_form, enumerate_small, EnumFilter, EnumMode};
use crate::solver::{find_good_pair_exact, ExactOutcome, SearchOptions};

pub const MAX_SMALL_ORDER: usize = 4;

/// Exact good-pair decision for digraphs on at most four vertices.
pub fn small_good_pair(d: &Digraph) -> Result<Option<GoodPairCert>> {
    if d.order() > MAX_SMALL_ORDER {
        return Err(Error::TooLarge {
            what: "small_good_pair",
            n: d.order(),
            max: MAX_SMALL_ORDER,
        });
    }
    match find_good_pair_exact(d, SearchOptions::default())?.outcome {
        ExactOutcome::Found(c) => Ok(Some(c)),
        ExactOutcome::NoneExists => Ok(None),
        ExactOutcome::Inconclusive => unreachable!("order-4 searches are tiny"),
    }
}

/// Four vertices, at least six arcs, and `δ^0 ≥ 1` or semicomplete.
pub fn order_four_hypothesis(d: &Digraph) -> bool {
    d.order() == 4 && d.arc_count() >= 6 && (d.min_semi_degree() >= 1 || d.is_semicomplete())
}

/// Canonical representatives of the isomorphism classes of order-4
/// digraphs that meet [`order_four_hypothesis`] yet have no good pair.
pub fn exceptional_order4_classes() -> Vec<Digraph> {
    let mut classes: Vec<Digraph> = enumerate_small(4, EnumMode::All, EnumFilter::OrderFour)
        .expect("order 4 is enumerable")
        .filter(|d| small_good_pair(d).expect("order 4").is_none())
        .map(|d| canonical_form(&d).expect("order 4"))
        .collect();
    classes.sort_by_key(|d| d.rows());
    classes.dedup();
    classes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::verify_good_pair;

    #[test]
    fn order3_with_four_arcs_always_pair() {
        let mut count = 0;
        for d in enumerate_small(3, EnumMode::All, EnumFilter::Any).unwrap() {
            count += 1;
            let c = small_good_pair(&d).unwrap();
            if d.arc_count() >= 4 {
                assert_eq!(verify_good_pair(&d, c.as_ref().unwrap()), Ok(()));
            }
        }
        assert_eq!(count, 64);
    }

    #[test]
    fn digon_plus_isolated_vertex() {
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(small_good_pair(&d).unwrap(), None);
        assert!(small_good_pair(&Digraph::empty(5).unwrap()).is_err());
    }

    #[test]
    fn one_exceptional_class() {
        let e4 = exceptional_order4_classes();
        assert_eq!(e4.len(), 1);
        assert!(order_four_hypothesis(&e4[0]));
    }
}
