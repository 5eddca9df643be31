//! An `x`-restricted subgraph or a complete-or-anticomplete blockade in any
//! house-free graph.

use super::{house7_iterate, Round2Outcome};
use crate::certificate::BlockadeKind;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::predicates::{is_co_x_sparse_within, is_x_sparse_within, restricted_side, Side};
use crate::primitives::rodl::peel;
use crate::primitives::rodl_restricted_subgraph;
use crate::primitives::sparse_pair::anticomplete_pair_sparse_trusted;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational, Show};
use crate::round1::is_scale_miss;

/// The largest `x`-restricted set the search finds, aiming at `x^a |g|`.
fn best_effort(g: &Graph, x: &Rational, a: u64) -> Round2Outcome {
    let target = rational::pow(x, a) * rational::int(g.n());
    let set = rodl_restricted_subgraph(g, x, &target);
    let side = restricted_side(g, &set, x).unwrap_or(Side::Sparse);
    Round2Outcome::Restricted {
        set,
        eps: x.clone(),
        side,
    }
}

/// Whether [`house7_iterate`] accepts `y` under this profile.
fn iterable(y: &Rational, profile: &ConstantsProfile) -> bool {
    let in_range = if profile.is_paper() {
        *y <= rational::pow(&rational::ratio(1, 4), 6)
    } else {
        *y < rational::ratio(1, 4)
    };
    in_range && rational::sqrt_exact(y).is_some()
}

/// Either an `x`-restricted induced subgraph on at least `x^a |g|` vertices
/// or a complete or anticomplete `(k, |g|/k^a)`-blockade, `k` in `[2, 1/x]`.
///
/// Graphs below `x^{-a}` vertices get the best restricted set the search
/// finds. Otherwise a `c`-restricted set either has a sparse complement,
/// where the anticomplete pair lemma gives a complete pair, or is sparse;
/// then the minimal `y` on the grid `c / 4^j` with a `y`-sparse subgraph of
/// `y^t |g|` vertices decides between the restricted exit (`y < x`) and the
/// blockade from [`house7_iterate`]. Whenever a step has nothing at this
/// scale, the best restricted set is returned instead.
pub fn house_final(g: &Graph, x: &Rational, profile: &ConstantsProfile, seed: u64) -> Result<Round2Outcome> {
    if *x <= rational::int(0) || *x >= rational::ratio(1, 2) {
        return Err(Error::precondition(format!("x = {} outside (0, 1/2)", Show(x))));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    let a = profile.a();
    if rational::below_inverse_power(n, x, a) {
        return Ok(best_effort(g, x, a));
    }
    let c = profile.c2();
    let t = profile.t();
    let s = rodl_restricted_subgraph(g, c, &(rational::pow(c, t) * rational::int(n)));
    let sparse = is_x_sparse_within(g, &s, c);
    // the pair lemma needs an η-sparse complement; demo constants have c > η
    if is_co_x_sparse_within(g, &s, c) && is_co_x_sparse_within(g, &s, profile.eta()) {
        let (h, map) = g.induced_subgraph(&s);
        match anticomplete_pair_sparse_trusted(&h.complement(), profile.eta()) {
            Ok(pair) => {
                return Ok(Round2Outcome::CompleteOrAnticompleteBlockade {
                    blockade: pair.lifted(&map, n),
                    kind: BlockadeKind::Complete,
                })
            }
            Err(Error::PreconditionViolated { what, witness }) => {
                let lifted: Vec<usize> = witness.iter().map(|&v| map[v]).collect();
                let what = if lifted.len() == 5 {
                    "graph contains an induced house".to_string()
                } else {
                    what
                };
                return Err(Error::precondition_with(what, lifted));
            }
            Err(e) if is_scale_miss(&e) => {
                if !sparse {
                    return Ok(best_effort(g, x, a));
                }
            }
            Err(e) => return Err(e),
        }
    }
    if !sparse {
        return Ok(best_effort(g, x, a));
    }

    let floor = rational::pow(x, profile.d());
    let mut found = None;
    let mut y = c.clone();
    while y >= floor {
        let witness = [peel(g, &s, &y, Side::Sparse), peel(g, &g.vertices(), &y, Side::Sparse)]
            .into_iter()
            .max_by_key(|f| f.len())
            .expect("two candidates");
        if rational::count_ge(witness.len(), &rational::pow(&y, t), n) {
            found = Some((y.clone(), witness));
        }
        y /= rational::int(4);
    }
    let Some((y, f)) = found else {
        return Ok(best_effort(g, x, a));
    };
    if y < *x {
        return Ok(Round2Outcome::Restricted {
            set: f,
            eps: x.clone(),
            side: Side::Sparse,
        });
    }
    if !iterable(&y, profile) {
        return Ok(best_effort(g, x, a));
    }
    let (h, map) = g.induced_subgraph(&f);
    match house7_iterate(&h, &y, profile, seed) {
        Ok(o) => match o.lifted(&map, n) {
            Round2Outcome::SparseSubset { set, .. } if is_x_sparse_within(g, &set, x) => {
                Ok(Round2Outcome::Restricted {
                    set,
                    eps: x.clone(),
                    side: Side::Sparse,
                })
            }
            Round2Outcome::CompleteOrAnticompleteBlockade { blockade, kind } => {
                let kmax = rational::floor_usize(&x.recip());
                let blockade = if blockade.len() > kmax { blockade.largest(kmax) } else { blockade };
                if blockade.len() < 2 {
                    return Ok(best_effort(g, x, a));
                }
                Ok(Round2Outcome::CompleteOrAnticompleteBlockade { blockade, kind })
            }
            _ => Ok(best_effort(g, x, a)),
        },
        Err(Error::PreconditionViolated { what, witness }) => Err(Error::precondition_with(
            what,
            witness.into_iter().map(|v| map[v]).collect(),
        )),
        Err(e) if is_scale_miss(&e) => Ok(best_effort(g, x, a)),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;
    use crate::rational::ratio;

    fn demo() -> ConstantsProfile {
        ConstantsProfile::demo_small()
    }

    #[test]
    fn single_vertex_is_restricted() {
        let g = Graph::empty(1);
        match house_final(&g, &ratio(1, 4), &demo(), 0).unwrap() {
            Round2Outcome::Restricted { set, .. } => assert_eq!(set.len(), 1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn large_clique_takes_the_complement_branch() {
        let g = Graph::complete(300);
        let o = house_final(&g, &ratio(1, 4), &demo(), 0).unwrap();
        match &o {
            Round2Outcome::CompleteOrAnticompleteBlockade { blockade, kind } => {
                assert_eq!(*kind, BlockadeKind::Complete);
                assert_eq!(blockade.len(), 2);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(verify(&o.certificate("test", &demo(), &g), &g).unwrap().accepted());
    }

    #[test]
    fn large_edgeless_graph_is_restricted() {
        let g = Graph::empty(300);
        let o = house_final(&g, &ratio(1, 4), &demo(), 0).unwrap();
        assert!(matches!(o, Round2Outcome::Restricted { .. }), "{o:?}");
        assert!(verify(&o.certificate("test", &demo(), &g), &g).unwrap().accepted());
    }
}
