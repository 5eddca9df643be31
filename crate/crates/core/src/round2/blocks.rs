//! The cograph layout: refine a pure blockade whose pattern is a cograph
//! until a clique or stable set of the pattern picks out an
//! `ε`-restricted subgraph.

use super::cograph::max_hom_in_cograph;
use super::Round2Outcome;
use crate::bitset::VertexSet;
use crate::certificate::{Blockade, BlockadeKind, HomKind, Layout};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{find_induced_copy, PatternGraph};
use crate::predicates::{is_co_x_sparse_within, is_x_sparse_within, restricted_side, Side};
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational, Show};
use crate::round1::is_scale_miss;

/// A complete-or-anticomplete blockade inside `g[part]`, or a restricted
/// subset of it (which ends the refinement at once), or
/// [`Error::DegenerateInput`] when there is neither at this scale.
pub type PartFinder<'a> = dyn FnMut(&Graph, &VertexSet) -> Result<Round2Outcome> + 'a;

/// Why the cograph layout stopped growing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlocksStop {
    /// The pattern reached `ceil(ε^-2)` vertices.
    Reached,
    /// The finder returned a restricted subset of a part.
    FinderRestricted,
    /// The finder had nothing, or no usable `k >= 2`.
    Miss,
    /// A per-step audit failed; the layout before that step was kept.
    Violation,
}

impl BlocksStop {
    pub fn as_str(self) -> &'static str {
        match self {
            BlocksStop::Reached => "reached",
            BlocksStop::FinderRestricted => "finder_restricted",
            BlocksStop::Miss => "miss",
            BlocksStop::Violation => "violation",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlocksStep {
    pub part_size: usize,
    pub k: usize,
    pub complete: bool,
    pub length_after: usize,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlocksReport {
    /// The assembled set and its sparse side, when it is `ε`-restricted.
    pub restricted: Option<(VertexSet, Side)>,
    pub eps: Rational,
    /// The last layout that passed its audit; its pattern is a cograph.
    pub layout: Layout,
    /// Pattern vertices whose parts were combined, and how they relate.
    pub hom: Vec<usize>,
    pub hom_kind: HomKind,
    pub steps: Vec<BlocksStep>,
    pub stop: BlocksStop,
}

impl BlocksReport {
    pub fn violation_count(&self) -> usize {
        self.steps.iter().map(|s| s.violations.len()).sum()
    }
}

/// An `ε`-restricted induced subgraph assembled from a cograph layout,
/// aiming at `ε^{3a} |g|` vertices.
pub fn blocks_extract(
    g: &Graph,
    eps: &Rational,
    a: u64,
    finder: &mut PartFinder<'_>,
    profile: &ConstantsProfile,
) -> Result<BlocksReport> {
    if *eps <= rational::int(0) || *eps >= rational::ratio(1, 2) {
        return Err(Error::precondition(format!("ε = {} outside (0, 1/2)", Show(eps))));
    }
    if a == 0 {
        return Err(Error::precondition("a must be at least 1"));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    let goal = rational::ceil_usize(&(eps * eps).recip());
    let min_part = rational::pow(eps, 3 * a);

    let mut layout = Layout::trivial(g);
    let mut steps = Vec::new();
    let stop = loop {
        if layout.len() >= goal {
            break BlocksStop::Reached;
        }
        let idx = layout.largest_part();
        let part = layout.parts()[idx].clone();
        let (blockade, kind) = match finder(g, &part) {
            Ok(Round2Outcome::Restricted { set, eps: fe, .. }) => {
                let side = restricted_side(g, &set, eps);
                let Some(side) = side.filter(|_| fe <= *eps && !set.is_empty() && set.is_subset(&part)) else {
                    return Err(breach("restricted subset is not ε-restricted inside the part"));
                };
                return Ok(BlocksReport {
                    restricted: Some((set, side)),
                    eps: eps.clone(),
                    hom: vec![idx],
                    hom_kind: HomKind::Stable,
                    layout,
                    steps,
                    stop: BlocksStop::FinderRestricted,
                });
            }
            Ok(Round2Outcome::CompleteOrAnticompleteBlockade { blockade, kind }) => (blockade, kind),
            Ok(other) => return Err(breach(&format!("finder returned a {}", other.kind_name()))),
            Err(e) if is_scale_miss(&e) => break BlocksStop::Miss,
            Err(e) => return Err(e),
        };
        check_blockade(g, &part, &blockade, kind)?;
        let Some(k) = usable_length(&blockade, part.len(), a, eps) else {
            break BlocksStop::Miss;
        };
        let pieces = blockade.largest(k).into_blocks();
        let complete = kind == BlockadeKind::Complete;
        let pattern = if complete { Graph::complete(k) } else { Graph::empty(k) };
        let next = layout.substitute(g, idx, pieces.clone(), &pattern);
        let violations = audit_step(g, &next, &pieces, part.len(), a, &min_part);
        let clean = violations.is_empty();
        steps.push(BlocksStep {
            part_size: part.len(),
            k,
            complete,
            length_after: next.len(),
            violations,
        });
        if !clean {
            break BlocksStop::Violation;
        }
        layout = next;
    };

    let (hom_set, hom_kind) = max_hom_in_cograph(layout.pattern(), &layout.pattern().vertices())?;
    let hom = hom_set.to_vec();
    let size = if profile.is_paper() {
        rational::ceil_mul(&min_part, n)
    } else {
        hom.iter().map(|&j| layout.parts()[j].len()).min().unwrap_or(0)
    };
    let mut set = VertexSet::new(n);
    for &j in &hom {
        set.union_with(&layout.parts()[j].truncated(size));
    }
    let side = match hom_kind {
        HomKind::Stable => Side::Sparse,
        HomKind::Clique => Side::Dense,
    };
    let holds = match side {
        Side::Sparse => is_x_sparse_within(g, &set, eps),
        Side::Dense => is_co_x_sparse_within(g, &set, eps),
    };
    Ok(BlocksReport {
        restricted: (holds && !set.is_empty()).then_some((set, side)),
        eps: eps.clone(),
        layout,
        hom,
        hom_kind,
        steps,
        stop,
    })
}

fn breach(detail: &str) -> Error {
    Error::ContractBreach {
        lemma: "blocks_extract".into(),
        detail: detail.into(),
    }
}

fn check_blockade(g: &Graph, part: &VertexSet, blockade: &Blockade, kind: BlockadeKind) -> Result<()> {
    if !matches!(kind, BlockadeKind::Complete | BlockadeKind::Anticomplete) {
        return Err(breach(&format!("blockade kind {kind} is neither complete nor anticomplete")));
    }
    if blockade.len() < 2 || blockade.blocks().iter().any(|b| b.is_empty() || !b.is_subset(part)) {
        return Err(breach("blocks empty, too few, or outside the part"));
    }
    let blocks = blockade.blocks();
    for j in 0..blocks.len() {
        for i in 0..j {
            if !kind.pair_holds(g, &blocks[i], &blocks[j], &rational::int(0)) {
                return Err(breach(&format!("blocks {i} and {j} are not {kind}")));
            }
        }
    }
    Ok(())
}

/// `size * k^a >= part` in integers; overflow means the product is huge.
fn power_split_ok(size: usize, k: usize, a: u64, part: usize) -> bool {
    let Ok(a) = u32::try_from(a) else { return true };
    match (k as u128).checked_pow(a).and_then(|p| p.checked_mul(size as u128)) {
        Some(v) => v >= part as u128,
        None => true,
    }
}

/// The largest `k` in `[2, min(len, 1/ε)]` whose `k` largest blocks all have
/// at least `|A| / k^a` vertices.
fn usable_length(blockade: &Blockade, part: usize, a: u64, eps: &Rational) -> Option<usize> {
    let mut sizes: Vec<usize> = blockade.blocks().iter().map(VertexSet::len).collect();
    sizes.sort_unstable_by(|p, q| q.cmp(p));
    (2..=sizes.len())
        .rev()
        .filter(|&k| rational::int(k) * eps <= rational::int(1))
        .find(|&k| power_split_ok(sizes[k - 1], k, a, part))
}

fn audit_step(
    g: &Graph,
    next: &Layout,
    pieces: &[VertexSet],
    part: usize,
    a: u64,
    min_part: &Rational,
) -> Vec<String> {
    let mut out = Vec::new();
    let recount = next.recount(g);
    if recount != (next.decided(), next.wrong()) {
        out.push(format!("incremental counts differ from recount {recount:?}"));
    }
    if next.wrong() != 0 {
        out.push(format!("{} edges across pattern non-edges", next.wrong()));
    }
    for (i, j) in next.incomplete_pattern_edges(g) {
        out.push(format!("pattern edge {i}-{j} joins parts that are not complete"));
    }
    if let Some(p) = next.parts().iter().find(|p| !rational::count_ge(p.len(), min_part, g.n())) {
        out.push(format!("part of {} vertices below ε^(3a)|G|", p.len()));
    }
    let k = pieces.len();
    if let Some(p) = pieces.iter().find(|p| !power_split_ok(p.len(), k, a, part)) {
        out.push(format!("piece of {} below {part}/{k}^a, the power sum would drop", p.len()));
    }
    if let Some(copy) = find_induced_copy(next.pattern(), &PatternGraph::p4()) {
        out.push(format!("pattern has an induced P4 on {copy:?}"));
    }
    out
}
