//! Iterated refinement of a layout into a long semisparse blockade.
//!
//! A layout is a pattern graph `J` with a part of `G` per vertex, complete
//! across every edge of `J`. The engine repeatedly hands the largest part to
//! a block finder and substitutes the pattern of the returned blockade for
//! that part's vertex, keeping three bullets true after every step: parts of
//! at least `ε^{2d}|G|`, the `1/d`-power sum at least `|G|^{1/d}`, and wrong
//! pairs at most `x` times decided pairs.

use super::{house4_within, is_scale_miss, semisparse, Round1Outcome};
use crate::bitset::VertexSet;
use crate::certificate::{
    classify_pair, classify_pairs, Blockade, BlockadeKind, Layout, PairRelationMatrix, Relation,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational, Show};

/// Why the refinement loop ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The layout reached `ceil(1/ε)` parts.
    Short,
    /// The finder returned a blockade with `k >= ceil(1/ε)` usable blocks.
    Long,
    /// The finder had nothing at this scale, or its blocks were too uneven
    /// for any `k >= 2`.
    Miss,
    /// A per-step audit failed; the layout before that step was kept.
    Violation,
}

impl StopReason {
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::Short => "short",
            StopReason::Long => "long",
            StopReason::Miss => "miss",
            StopReason::Violation => "violation",
        }
    }
}

/// One substitution and the invariant checks run right after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutStep {
    pub part_size: usize,
    pub k: usize,
    pub pure: bool,
    pub length_after: usize,
    pub decided: u64,
    pub wrong: u64,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LayoutAudit {
    pub steps: Vec<LayoutStep>,
}

impl LayoutAudit {
    pub fn violation_count(&self) -> usize {
        self.steps.iter().map(|s| s.violations.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.violation_count() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayoutReport {
    pub blockade: Blockade,
    /// Tags at `ε^d`; none is mixed.
    pub relations: PairRelationMatrix,
    /// The last layout that passed its audit.
    pub layout: Layout,
    /// The finder threshold `ε^{5d}`.
    pub x: Rational,
    pub audit: LayoutAudit,
    pub stop: StopReason,
}

impl LayoutReport {
    pub fn outcome(&self) -> Round1Outcome {
        Round1Outcome::SemisparseBlockade {
            blockade: self.blockade.clone(),
            relations: self.relations.clone(),
        }
    }
}

/// The block finder used by the layout engine: a pure or `x`-sparse
/// blockade inside `g[within]`, or [`Error::DegenerateInput`] when it has
/// none at this scale.
pub type BlockFinder<'a> = dyn FnMut(&Graph, &VertexSet, &Rational) -> Result<Round1Outcome> + 'a;

/// A blockade of length at least `min(|g|, ceil(1/ε))` whose pairs are each
/// complete or weakly `ε^d`-sparse, refined from the trivial layout.
pub fn refine_layout(
    g: &Graph,
    eps: &Rational,
    d: u64,
    finder: &mut BlockFinder<'_>,
    profile: &ConstantsProfile,
) -> Result<LayoutReport> {
    if *eps <= rational::int(0) || *eps >= rational::ratio(1, 2) {
        return Err(Error::precondition(format!("ε = {} outside (0, 1/2)", Show(eps))));
    }
    if d == 0 {
        return Err(Error::precondition("d must be at least 1"));
    }
    let n = g.n();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    if profile.is_paper() && rational::below_inverse_power(n, eps, 10 * d * d) {
        return Err(Error::precondition(format!("{n} vertices, below ε^(-10d^2)")));
    }
    let eps_d = rational::pow(eps, d);
    let x = rational::pow(&eps_d, 5);
    let min_part = &eps_d * &eps_d;
    let floor = rational::ceil_usize(&eps.recip());

    let mut layout = Layout::trivial(g);
    let mut audit = LayoutAudit::default();
    let mut long_pieces = None;
    let stop = loop {
        if layout.len() >= floor {
            break StopReason::Short;
        }
        let idx = layout.largest_part();
        let a = layout.parts()[idx].clone();
        let found = match finder(g, &a, &x) {
            Ok(o) => o,
            Err(e) if is_scale_miss(&e) => break StopReason::Miss,
            Err(e) => return Err(e),
        };
        let (blockade, pure) = check_finder_output(g, &a, &x, found)?;
        let Some(k) = usable_length(&blockade, a.len(), d, &x) else {
            break StopReason::Miss;
        };
        let pieces = blockade.largest(k).into_blocks();
        if k >= floor {
            long_pieces = Some(pieces);
            break StopReason::Long;
        }
        let pattern = Graph::from_fn(k, |p, q| g.is_complete_to(&pieces[p], &pieces[q]));
        let next = layout.substitute(g, idx, pieces.clone(), &pattern);
        let violations = audit_step(g, &next, &pieces, a.len(), d, &x, &min_part);
        let clean = violations.is_empty();
        audit.steps.push(LayoutStep {
            part_size: a.len(),
            k,
            pure,
            length_after: next.len(),
            decided: next.decided(),
            wrong: next.wrong(),
            violations,
        });
        if !clean {
            break StopReason::Violation;
        }
        layout = next;
    };

    let chosen = compatible_subset(g, long_pieces.unwrap_or_else(|| layout.parts().to_vec()), &eps_d);
    let target = floor.min(n);
    let blocks = if chosen.len() >= target {
        chosen
    } else {
        // singletons are pairwise complete or anticomplete
        (0..target).map(|v| VertexSet::singleton(n, v)).collect()
    };
    let blockade = Blockade::new(blocks)?;
    let relations = classify_pairs(g, &blockade, &eps_d);
    if relations.pairs().any(|(_, _, r)| r == Relation::Mixed) {
        return Err(Error::internal("layout result has a mixed pair"));
    }
    Ok(LayoutReport {
        blockade,
        relations,
        layout,
        x,
        audit,
        stop,
    })
}

/// The finder's blockade after checking it lies in `a` and has the kind it
/// claims at threshold `x`; `true` when pure.
fn check_finder_output(
    g: &Graph,
    a: &VertexSet,
    x: &Rational,
    found: Round1Outcome,
) -> Result<(Blockade, bool)> {
    let breach = |detail: String| Error::ContractBreach {
        lemma: "refine_layout".into(),
        detail,
    };
    let (blockade, kind, claimed_x) = match found {
        Round1Outcome::PureBlockadeFound { blockade, .. } => (blockade, BlockadeKind::Pure, x.clone()),
        Round1Outcome::XSparseBlockade { blockade, x: fx } => (blockade, BlockadeKind::XSparse, fx),
        other => return Err(breach(format!("finder returned a {}", other.kind_name()))),
    };
    if claimed_x > *x {
        return Err(breach(format!(
            "finder threshold {} above {}",
            Show(&claimed_x),
            Show(x)
        )));
    }
    if blockade.is_empty() || blockade.blocks().iter().any(|b| b.is_empty() || !b.is_subset(a)) {
        return Err(breach("blocks empty or outside the part".into()));
    }
    let blocks = blockade.blocks();
    for j in 0..blocks.len() {
        for i in 0..j {
            if !kind.pair_holds(g, &blocks[i], &blocks[j], &claimed_x) {
                return Err(breach(format!("blocks {i} and {j} are not {kind}")));
            }
        }
    }
    Ok((blockade, kind == BlockadeKind::Pure))
}

/// `size * k^d >= part`, in integers; overflow means the product is huge.
fn power_split_ok(size: usize, k: usize, d: u64, part: usize) -> bool {
    let Ok(d) = u32::try_from(d) else { return true };
    match (k as u128).checked_pow(d).and_then(|p| p.checked_mul(size as u128)) {
        Some(v) => v >= part as u128,
        None => true,
    }
}

/// The largest `k` in `[2, min(len, 1/x)]` whose `k` largest blocks all have
/// at least `|A| / k^d` vertices.
fn usable_length(blockade: &Blockade, part: usize, d: u64, x: &Rational) -> Option<usize> {
    let mut sizes: Vec<usize> = blockade.blocks().iter().map(VertexSet::len).collect();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    (2..=sizes.len())
        .rev()
        .filter(|&k| rational::int(k) * x <= rational::int(1))
        .find(|&k| power_split_ok(sizes[k - 1], k, d, part))
}

/// The three bullets and the counting bookkeeping after one substitution.
fn audit_step(
    g: &Graph,
    next: &Layout,
    pieces: &[VertexSet],
    part: usize,
    d: u64,
    x: &Rational,
    min_part: &Rational,
) -> Vec<String> {
    let mut out = Vec::new();
    let recount = next.recount(g);
    if recount != (next.decided(), next.wrong()) {
        out.push(format!(
            "incremental counts ({}, {}) differ from recount {recount:?}",
            next.decided(),
            next.wrong()
        ));
    }
    for (i, j) in next.incomplete_pattern_edges(g) {
        out.push(format!("pattern edge {i}-{j} joins parts that are not complete"));
    }
    if !next.wrong_within(x) {
        out.push(format!("{} wrong pairs above x times {} decided", next.wrong(), next.decided()));
    }
    if let Some(p) = next.parts().iter().find(|p| !rational::count_ge(p.len(), min_part, g.n())) {
        out.push(format!("part of {} vertices below ε^(2d)|G|", p.len()));
    }
    let k = pieces.len();
    if let Some(p) = pieces.iter().find(|p| !power_split_ok(p.len(), k, d, part)) {
        out.push(format!("piece of {} below {part}/{k}^d, the power sum would drop", p.len()));
    }
    out
}

/// Greedily keeps blocks (in order) whose pair with every kept block is not
/// mixed at `x`.
fn compatible_subset(g: &Graph, blocks: Vec<VertexSet>, x: &Rational) -> Vec<VertexSet> {
    let mut kept: Vec<VertexSet> = Vec::with_capacity(blocks.len());
    for b in blocks {
        if kept.iter().all(|k| classify_pair(g, k, &b, x) != Relation::Mixed) {
            kept.push(b);
        }
    }
    kept
}

/// [`refine_layout`] with the pure-or-sparse blockade finder for house-free
/// graphs at `x = ε^{5d}`.
pub fn epsone_blockade(g: &Graph, eps: &Rational, profile: &ConstantsProfile) -> Result<LayoutReport> {
    let mut finder = |g: &Graph, within: &VertexSet, x: &Rational| house4_within(g, within, x, profile);
    refine_layout(g, eps, profile.d(), &mut finder, profile)
}

/// The semisparse outcome of [`epsone_blockade`].
pub fn epsone_outcome(g: &Graph, eps: &Rational, profile: &ConstantsProfile) -> Result<Round1Outcome> {
    let report = epsone_blockade(g, eps, profile)?;
    Ok(semisparse(g, report.blockade, &rational::pow(eps, profile.d())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify;
    use crate::rational::ratio;

    fn demo() -> ConstantsProfile {
        ConstantsProfile::demo_small()
    }

    /// Splits a part into its anticomponents when there are at least two;
    /// a pure blockade whose pattern is complete.
    fn anticomponent_finder(g: &Graph, within: &VertexSet, _x: &Rational) -> Result<Round1Outcome> {
        let parts = g.anticomponents_within(within);
        if parts.len() < 2 {
            return Err(crate::round1::scale_miss("part is anticonnected"));
        }
        let k = parts.len();
        Ok(Round1Outcome::PureBlockadeFound { blockade: Blockade::new(parts)?, k })
    }

    #[test]
    fn clique_gives_an_all_complete_blockade() {
        let g = Graph::complete(32);
        let r = epsone_blockade(&g, &ratio(1, 4), &demo()).unwrap();
        assert!(r.blockade.len() >= 4);
        assert!(r.relations.pairs().all(|(_, _, rel)| rel == Relation::Complete));
        assert!(r.audit.is_clean());
    }

    #[test]
    fn counts_stay_in_step_with_recounts() {
        // complete multipartite: anticomponents are the parts
        let g = Graph::complete_multipartite(&[8, 8, 8]);
        let mut finder = anticomponent_finder;
        let r = refine_layout(&g, &ratio(1, 4), 1, &mut finder, &demo()).unwrap();
        assert_eq!(r.audit.steps.len(), 1);
        assert!(r.audit.is_clean());
        assert_eq!(r.layout.recount(&g), (r.layout.decided(), r.layout.wrong()));
        assert_eq!(r.layout.len(), 3);
        // a stable part is anticonnected, so the finder stops there and the
        // three parts fall short of ceil(1/ε) = 4
        assert_eq!(r.stop, StopReason::Miss);
        assert_eq!(r.blockade.len(), 4);
    }

    #[test]
    fn short_layout_gets_the_length_floor() {
        let g = Graph::path(4);
        let mut finder = |_: &Graph, _: &VertexSet, _: &Rational| -> Result<Round1Outcome> {
            Err(crate::round1::scale_miss("never"))
        };
        let r = refine_layout(&g, &ratio(2, 5), 2, &mut finder, &demo()).unwrap();
        assert_eq!(r.stop, StopReason::Miss);
        assert_eq!(r.blockade.len(), 3);
    }

    #[test]
    fn finder_outside_its_part_is_a_breach() {
        let g = Graph::empty(10);
        let mut finder = |g: &Graph, _: &VertexSet, x: &Rational| -> Result<Round1Outcome> {
            let blocks = vec![VertexSet::singleton(g.n(), 0), VertexSet::from_iter(g.n(), [1, 2])];
            Ok(Round1Outcome::XSparseBlockade {
                blockade: Blockade::new(blocks)?,
                x: x * rational::int(2),
            })
        };
        assert!(matches!(
            refine_layout(&g, &ratio(1, 4), 1, &mut finder, &demo()),
            Err(Error::ContractBreach { .. })
        ));
    }

    #[test]
    fn power_split_is_exact() {
        assert!(power_split_ok(16, 2, 2, 64));
        assert!(!power_split_ok(15, 2, 2, 64));
        assert!(power_split_ok(1, 1 << 20, 64, usize::MAX));
    }

    #[test]
    fn epsone_outcome_verifies() {
        let g = Graph::complete_multipartite(&[6, 6, 6, 6, 6]);
        let o = epsone_outcome(&g, &ratio(1, 4), &demo()).unwrap();
        let cert = o.certificate("epsone", &demo(), &g);
        assert!(verify(&cert, &g).unwrap().accepted());
    }
}
