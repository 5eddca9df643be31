//! From a long semisparse blockade in a `y`-sparse house-free graph to a
//! sparser subgraph, a complete blockade or a huge anticomplete pair, and the
//! iteration that stacks those pairs into an anticomplete blockade.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{eps_pow_minus, Round2Outcome};
use crate::bitset::VertexSet;
use crate::certificate::{Blockade, BlockadeKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{find_induced_copy_within, PatternGraph};
use crate::predicates::{is_mixed_on, is_x_sparse, is_x_sparse_within};
use crate::primitives::complete_blockade_within;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational, Show};
use crate::round1::{epsone_blockade, is_scale_miss, scale_miss};

/// Attempts at drawing block samples whose non-pattern pairs are all sparse.
pub const SAMPLE_RETRIES: u32 = 64;

fn require_sparse(g: &Graph, y: &Rational) -> Result<()> {
    if is_x_sparse(g, y) {
        return Ok(());
    }
    let (d, v) = g.max_degree_within(&g.vertices()).expect("a non-sparse graph is nonempty");
    Err(Error::precondition_with(
        format!("vertex {v} has degree {d}, above y |G| for y = {}", Show(y)),
        vec![v],
    ))
}

/// Error witnesses of a run on `g[set]`, moved back to host indices.
fn lift_error(e: Error, map: &[usize]) -> Error {
    match e {
        Error::PreconditionViolated { what, witness } => Error::PreconditionViolated {
            what,
            witness: witness.into_iter().map(|v| map[v]).collect(),
        },
        other => other,
    }
}

/// The first `size` vertices of the complement-BFS from the lowest vertex;
/// a BFS prefix of a connected graph stays connected, so the result is
/// still anticonnected.
fn trim_anticonnected(g: &Graph, b: &VertexSet, size: usize) -> VertexSet {
    let mut kept = VertexSet::new(g.n());
    let Some(root) = b.first() else { return kept };
    let mut queue = std::collections::VecDeque::from([root]);
    kept.insert(root);
    while let Some(u) = queue.pop_front() {
        if kept.len() >= size {
            break;
        }
        let fresh = b.difference(g.neighbours(u)).difference(&kept);
        for w in fresh.iter() {
            if kept.len() >= size {
                break;
            }
            kept.insert(w);
            queue.push_back(w);
        }
    }
    kept
}

/// `u in N(v)` and `w not in N(v)` inside the anticonnected `b`, with `uw`
/// a non-edge.
fn split_pair(g: &Graph, v: usize, b: &VertexSet) -> Option<(usize, usize)> {
    let seen = g.neighbours(v).intersection(b);
    let unseen = b.difference(g.neighbours(v));
    seen.iter()
        .find_map(|u| unseen.difference(g.neighbours(u)).first().map(|w| (u, w)))
}

/// One application of the long-blockade argument to a `y`-sparse graph.
///
/// Builds a semisparse blockade at `ε = y^{3d}`, samples and trims it into
/// anticonnected blocks, then looks for a vertex outside the blocks mixed on
/// `y` of them. Under demo constants the blockade is whatever the layout
/// engine reaches, the sample size is its width, and an unsparse union of
/// mixed blocks is passed over in favour of the anticomplete pair.
pub fn house6_step(g: &Graph, y: &Rational, profile: &ConstantsProfile, seed: u64) -> Result<Round2Outcome> {
    if *y <= rational::int(0) || *y >= rational::ratio(1, 2) {
        return Err(Error::precondition(format!("y = {} outside (0, 1/2)", Show(y))));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    require_sparse(g, y)?;
    let d = profile.d();
    let y2d = rational::pow(y, 2 * d);
    if is_x_sparse(g, &y2d) {
        return Ok(Round2Outcome::SparseSubset { set: g.vertices(), y: y2d });
    }
    let paper = profile.is_paper();
    if paper && rational::below_inverse_power(n, y, 30 * d * d * d) {
        // a single vertex is large enough at this size
        return Ok(Round2Outcome::SparseSubset {
            set: VertexSet::singleton(n, 0),
            y: y2d,
        });
    }

    let eps = rational::pow(y, 3 * d);
    let report = epsone_blockade(g, &eps, profile)?;
    let a_blocks = report.blockade.blocks();
    let ell = a_blocks.len();
    if ell < 2 {
        return Err(scale_miss("semisparse blockade has a single block"));
    }
    let width = report.blockade.width();
    let m = if paper {
        rational::ceil_mul(&rational::pow(&eps, 10 * d * d), n).min(width)
    } else {
        width
    }
    .max(1);
    let pattern = Graph::from_fn(ell, |i, j| g.is_complete_to(&a_blocks[i], &a_blocks[j]));

    let xs = sample_blocks(g, a_blocks, &pattern, m, &eps_pow_minus(&eps, d, 2), seed)?;

    // sequential trimming against the blocks already fixed and the samples
    // still to come
    let far = (d > 8).then(|| rational::pow(&eps, d - 8));
    let near = (d > 4).then(|| rational::pow(&eps, d - 4));
    let fixed_size = paper.then(|| rational::ceil_mul(&(&eps * &eps), m).max(1));
    let mut bs: Vec<VertexSet> = Vec::with_capacity(ell);
    for i in 0..ell {
        let mut di = xs[i].clone();
        for p in (0..ell).filter(|&p| p != i && !pattern.has_edge(p, i)) {
            let (other, bound) = if p < i { (&bs[p], &far) } else { (&xs[p], &near) };
            if let Some(bound) = bound {
                let heavy: Vec<usize> = di
                    .iter()
                    .filter(|&v| rational::count_ge(g.degree_in(v, other), bound, other.len()))
                    .collect();
                for v in heavy {
                    di.remove(v);
                }
            }
        }
        if di.is_empty() {
            return Err(scale_miss("a trimmed sample is empty"));
        }
        let core = g
            .anticomponents_within(&di)
            .into_iter()
            .max_by_key(|p| (p.len(), std::cmp::Reverse(p.first())))
            .expect("nonempty");
        if core.len() * ell < di.len() {
            let blockade = complete_blockade_within(g, &di, ell)?.largest(ell);
            return Ok(Round2Outcome::CompleteBlockade { blockade });
        }
        bs.push(match fixed_size {
            Some(s) => trim_anticonnected(g, &core, s),
            None => core,
        });
    }
    if fixed_size.is_none() {
        let s = bs.iter().map(VertexSet::len).min().expect("ell >= 2");
        bs = bs.iter().map(|b| trim_anticonnected(g, b, s)).collect();
    }

    let mut outside = g.vertices();
    for b in &bs {
        outside.difference_with(b);
    }
    if outside.is_empty() {
        return Err(scale_miss("the blocks cover the graph"));
    }

    let mut mixed_count = vec![0usize; ell];
    for v in outside.iter() {
        let mixed: Vec<usize> = (0..ell).filter(|&i| is_mixed_on(g, v, &bs[i])).collect();
        for &i in &mixed {
            mixed_count[i] += 1;
        }
        if mixed.is_empty() || !rational::count_ge(mixed.len(), y, ell) {
            continue;
        }
        for (pi, &i) in mixed.iter().enumerate() {
            for &j in &mixed[pi + 1..] {
                if g.is_complete_to(&bs[i], &bs[j]) {
                    return Err(house_through(g, v, &bs[i], &bs[j]));
                }
            }
        }
        let mut union = VertexSet::new(n);
        for &i in &mixed {
            union.union_with(&bs[i]);
        }
        if is_x_sparse_within(g, &union, &y2d) {
            return Ok(Round2Outcome::SparseSubset { set: union, y: y2d });
        }
        if paper {
            return Err(Error::internal("union of blocks with a common mixed vertex is not sparse"));
        }
    }

    let i = (0..ell).min_by_key(|&i| (mixed_count[i], i)).expect("ell >= 2");
    let x = bs[i].clone();
    let y_side = VertexSet::from_iter(n, outside.iter().filter(|&v| !g.neighbours(v).intersects(&x)));
    if y_side.is_empty() {
        return Err(scale_miss("every outside vertex sees the least-mixed block"));
    }
    Ok(Round2Outcome::AnticompletePair { x, y: y_side })
}

/// Uniform `m`-subsets of each block, redrawn until every pair that is not
/// complete has edge density at most `bound`.
fn sample_blocks(
    g: &Graph,
    blocks: &[VertexSet],
    pattern: &Graph,
    m: usize,
    bound: &Rational,
    seed: u64,
) -> Result<Vec<VertexSet>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pools: Vec<Vec<usize>> = blocks.iter().map(VertexSet::to_vec).collect();
    for _ in 0..SAMPLE_RETRIES {
        let xs: Vec<VertexSet> = pools
            .iter()
            .map(|pool| {
                let picks = sample(&mut rng, pool.len(), m.min(pool.len()));
                VertexSet::from_iter(g.n(), picks.into_iter().map(|k| pool[k]))
            })
            .collect();
        let ok = (0..xs.len()).all(|j| {
            (0..j).all(|i| {
                pattern.has_edge(i, j)
                    || rational::count_le(g.edges_between(&xs[i], &xs[j]), bound, xs[i].len() * xs[j].len())
            })
        });
        if ok {
            return Ok(xs);
        }
    }
    Err(Error::SamplingBudgetExhausted {
        what: "block samples with sparse non-pattern pairs".into(),
        attempts: SAMPLE_RETRIES,
    })
}

/// `v` mixed on two complete anticonnected blocks closes a house.
fn house_through(g: &Graph, v: usize, bi: &VertexSet, bj: &VertexSet) -> Error {
    if let (Some((ui, wi)), Some((uj, wj))) = (split_pair(g, v, bi), split_pair(g, v, bj)) {
        let five = VertexSet::from_iter(g.n(), [v, ui, wi, uj, wj]);
        if let Some(copy) = find_induced_copy_within(g, &five, &PatternGraph::house()) {
            return Error::precondition_with("graph contains an induced house", copy);
        }
    }
    Error::internal(format!("vertex {v} is mixed on two complete blocks but closes no house"))
}

/// Stacks anticomplete pairs from [`house6_step`] at `sqrt(y)` into an
/// anticomplete blockade, keeping the last block at least
/// `(1 - 2 sqrt(y))^n |G|` after `n` splits. `y` must be the square of a
/// rational.
pub fn house7_iterate(g: &Graph, y: &Rational, profile: &ConstantsProfile, seed: u64) -> Result<Round2Outcome> {
    let cap = if profile.is_paper() {
        rational::pow(&rational::ratio(1, 4), 6)
    } else {
        rational::ratio(1, 4)
    };
    let paper = profile.is_paper();
    if *y <= rational::int(0) || (paper && *y > cap) || (!paper && *y >= cap) {
        return Err(Error::precondition(format!("y = {} outside the allowed range", Show(y))));
    }
    let Some(r) = rational::sqrt_exact(y) else {
        return Err(Error::precondition(format!("y = {} is not a rational square", Show(y))));
    };
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    require_sparse(g, y)?;
    let d = profile.d();
    let yd = rational::pow(y, d);
    if is_x_sparse(g, &yd) {
        return Ok(Round2Outcome::SparseSubset { set: g.vertices(), y: yd });
    }
    if paper && rational::below_inverse_power(n, y, 16 * d * d * d) {
        return Ok(Round2Outcome::SparseSubset {
            set: VertexSet::singleton(n, 0),
            y: yd,
        });
    }

    let length = rational::ceil_usize(&r.recip());
    let shrink = rational::int(1) - &r * rational::int(2);
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut cur = g.vertices();
    let mut rounds = 0u64;
    while blocks.len() < length {
        rounds += 1;
        assert!(rounds as usize <= length.saturating_add(1), "anticomplete accumulation ran past its bound");
        if !is_x_sparse_within(g, &cur, &r) {
            break;
        }
        let (h, map) = g.induced_subgraph(&cur);
        let step = house6_step(&h, &r, profile, seed.wrapping_add(rounds));
        match step.map(|o| o.lifted(&map, n)).map_err(|e| lift_error(e, &map)) {
            Ok(Round2Outcome::SparseSubset { set, y: sparsity }) => {
                return Ok(Round2Outcome::SparseSubset { set, y: sparsity })
            }
            Ok(Round2Outcome::CompleteBlockade { blockade }) => {
                return Ok(Round2Outcome::CompleteOrAnticompleteBlockade {
                    blockade,
                    kind: BlockadeKind::Complete,
                })
            }
            Ok(Round2Outcome::AnticompletePair { x, y: rest }) => {
                // the extension must keep the shrinking-width bookkeeping
                let bound = rational::pow(&shrink, blocks.len() as u64 + 1);
                if !rational::count_ge(rest.len(), &bound, n) {
                    break;
                }
                blocks.push(x);
                cur = rest;
            }
            Ok(other) => {
                return Err(Error::internal(format!("long-blockade step returned a {}", other.kind_name())))
            }
            Err(e) if is_scale_miss(&e) => break,
            Err(e) => return Err(e),
        }
    }
    if blocks.is_empty() {
        return Err(scale_miss("no anticomplete split at this scale"));
    }
    blocks.push(cur);
    Ok(Round2Outcome::CompleteOrAnticompleteBlockade {
        blockade: Blockade::new(blocks)?,
        kind: BlockadeKind::Anticomplete,
    })
}
