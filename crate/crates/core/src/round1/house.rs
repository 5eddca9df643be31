//! Pure-or-sparse blockades in sparse house-free graphs, from one comb step
//! up to the sparsity-free version.

use std::cmp::Reverse;

use super::{is_scale_miss, scale_miss, Round1Outcome};
use crate::bitset::VertexSet;
use crate::certificate::{Blockade, BlockadeKind};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::pattern::{find_induced_copy_within, PatternGraph};
use crate::predicates::{is_co_x_sparse_within, is_mixed_on, is_x_sparse_within, Side};
use crate::primitives::rodl::peel;
use crate::primitives::sparse_pair::anticomplete_pair_sparse_trusted;
use crate::primitives::{
    comb_or_sparse_cover, complete_blockade_within, covering_set, rodl_within, CombOutcome,
    CoverMode,
};
use crate::profile::ConstantsProfile;
use crate::rational::{self, Rational, Show};

fn require_sparse(g: &Graph, set: &VertexSet, x: &Rational, label: &str) -> Result<()> {
    if is_x_sparse_within(g, set, x) {
        return Ok(());
    }
    let (d, v) = g.max_degree_within(set).expect("a non-sparse set is nonempty");
    Err(Error::precondition_with(
        format!("vertex {v} has degree {d} in a set of {}, above {label}-sparsity", set.len()),
        vec![v],
    ))
}

fn require_order(x: &Rational, y: &Rational) -> Result<()> {
    if *x <= rational::int(0) || x > y || *y >= rational::int(1) {
        return Err(Error::precondition(format!(
            "need 0 < x <= y < 1, got x = {}, y = {}",
            Show(x),
            Show(y)
        )));
    }
    Ok(())
}

/// Smallest `k` with `k^4 >= l`.
fn fourth_root_ceil(l: usize) -> usize {
    let mut k = 1usize;
    while k.saturating_pow(4) < l {
        k += 1;
    }
    k
}

/// Turns a vertex `u` mixed on the anticonnected core `d` of apex `a` into
/// an induced house `{v, u, w, z, a}`. Failing to find one means the core
/// or comb was built wrongly.
fn house_from_mixed(g: &Graph, v: usize, u: usize, a: usize, d: &VertexSet) -> Error {
    let seen = g.neighbours(u).intersection(d);
    let unseen = d.difference(g.neighbours(u));
    let pair = seen
        .iter()
        .find_map(|w| unseen.difference(g.neighbours(w)).first().map(|z| (w, z)));
    if let Some((w, z)) = pair {
        let five = VertexSet::from_iter(g.n(), [v, u, w, z, a]);
        if let Some(copy) = find_induced_copy_within(g, &five, &PatternGraph::house()) {
            return Error::precondition_with("graph contains an induced house", copy);
        }
    }
    Error::internal(format!(
        "vertex {u} is mixed on an anticonnected comb core but yields no house"
    ))
}

pub fn house1_step(g: &Graph, x: &Rational, y: &Rational, profile: &ConstantsProfile) -> Result<Round1Outcome> {
    house1_within(g, &g.vertices(), x, y, profile)
}

/// One comb step in a `y^3`-sparse house-free `g[within]`: the set is
/// already `2y^4`-sparse, or a pure blockade comes out of an upside-down
/// comb into the neighbourhood of a max-degree vertex, or a large set is
/// `x`-sparse to a set of size about `y^4 |G|`.
pub fn house1_within(
    g: &Graph,
    within: &VertexSet,
    x: &Rational,
    y: &Rational,
    profile: &ConstantsProfile,
) -> Result<Round1Outcome> {
    require_order(x, y)?;
    let n = within.len();
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    if profile.is_paper() {
        if *y > rational::pow2(-8) {
            return Err(Error::precondition(format!("y = {} above 2^-8", Show(y))));
        }
        if rational::below_inverse_power(n, y, 4) {
            return Err(Error::precondition(format!("{n} vertices, below y^-4")));
        }
    }
    let y2 = y * y;
    let y4 = &y2 * &y2;
    require_sparse(g, within, &(&y2 * y), "y^3")?;
    let sparser = &y4 * rational::int(2);
    if is_x_sparse_within(g, within, &sparser) {
        return Ok(Round1Outcome::Sparser {
            set: within.clone(),
            sparsity: sparser,
        });
    }

    let (_, v) = g.max_degree_within(within).expect("within is nonempty");
    let nbrs = g.neighbours(v).intersection(within);
    let mut rest = within.difference(&nbrs);
    rest.remove(v);
    let half_y2 = &y2 / rational::int(2);
    let heavy = VertexSet::from_iter(
        g.n(),
        rest.iter()
            .filter(|&u| rational::count_ge(g.degree_in(u, &nbrs), &half_y2, nbrs.len())),
    );
    let a = rest.difference(&heavy);
    let x2 = x * x;
    let light = VertexSet::from_iter(
        g.n(),
        nbrs.iter()
            .filter(|&w| rational::count_le(g.degree_in(w, &a), &x2, a.len())),
    );
    let b = nbrs.difference(&light);

    if !rational::count_le(light.len(), &y4, n) {
        let y_side = VertexSet::from_iter(
            g.n(),
            a.iter()
                .filter(|&u| rational::count_le(g.degree_in(u, &light), x, light.len())),
        );
        if y_side.is_empty() {
            return Err(scale_miss("no vertex is sparse to the low-degree neighbours"));
        }
        return Ok(Round1Outcome::SparsePair {
            x_side: light,
            y_side,
            x: x.clone(),
        });
    }
    if a.is_empty() || b.is_empty() {
        return Err(scale_miss("comb sides are empty"));
    }
    if x2 > rational::ratio(1, 2) {
        return Err(scale_miss("x^2 above 1/2"));
    }
    let cover = covering_set(g, &a, &b, &x2, CoverMode::Greedy)?;
    if cover.is_empty() {
        return Err(scale_miss("empty covering set"));
    }
    let delta = &y2 * rational::int(b.len());
    let (comb, ell) = match comb_or_sparse_cover(g, &cover, &b, &delta)? {
        CombOutcome::CombFound { comb, k } => (comb, k),
        CombOutcome::SmallCover(covered) => {
            return Err(scale_miss(format!(
                "only {} of {} neighbours are covered",
                covered.len(),
                b.len()
            )))
        }
    };
    if ell < 2 {
        return Err(scale_miss("comb has a single tooth"));
    }
    let k = fourth_root_ceil(ell).max(2);
    let mut idx: Vec<usize> = (0..ell).collect();
    idx.sort_by_key(|&i| (Reverse(comb.blocks()[i].len()), i));
    idx.truncate(k);
    idx.sort_unstable();

    let mut cores = Vec::with_capacity(k);
    for &i in &idx {
        let block = &comb.blocks()[i];
        let core = g
            .anticomponents_within(block)
            .into_iter()
            .max_by_key(|p| (p.len(), Reverse(p.first())))
            .expect("comb blocks are nonempty");
        if core.len() * k < block.len() {
            let blockade = complete_blockade_within(g, block, k)?.largest(k);
            return Ok(Round1Outcome::PureBlockadeFound { k: blockade.len(), blockade });
        }
        cores.push(core);
    }
    for (pi, &i) in idx.iter().enumerate() {
        for (pj, core_j) in cores.iter().enumerate() {
            if pi == pj {
                continue;
            }
            if let Some(u) = core_j.iter().find(|&u| is_mixed_on(g, u, &cores[pi])) {
                return Err(house_from_mixed(g, v, u, comb.apexes()[i], &cores[pi]));
            }
        }
    }
    Ok(Round1Outcome::PureBlockadeFound {
        blockade: Blockade::new(cores)?,
        k,
    })
}

pub fn house2_iterate(g: &Graph, x: &Rational, y: &Rational, profile: &ConstantsProfile) -> Result<Round1Outcome> {
    house2_within(g, &g.vertices(), x, y, profile)
}

/// Iterates [`house1_within`], stacking its sparse pairs into an `x`-sparse
/// blockade of length `ceil(1/y)`, until a sparser set or a pure blockade
/// comes out.
pub fn house2_within(
    g: &Graph,
    within: &VertexSet,
    x: &Rational,
    y: &Rational,
    profile: &ConstantsProfile,
) -> Result<Round1Outcome> {
    require_order(x, y)?;
    let n = within.len();
    if profile.is_paper() {
        if y > profile.c() {
            return Err(Error::precondition(format!("y = {} above c", Show(y))));
        }
        if rational::below_inverse_power(n, y, 6) {
            return Err(Error::precondition(format!("{n} vertices, below y^-6")));
        }
    }
    let y3 = y * y * y;
    require_sparse(g, within, &(profile.c() * &y3), "c y^3")?;
    accumulate_sparse_pairs(within, x, y, |cur| {
        if !is_x_sparse_within(g, cur, &y3) {
            return Err(scale_miss("remaining set is not y^3-sparse"));
        }
        house1_within(g, cur, x, y, profile)
    })
}

/// The accumulation loop on its own: `step` is applied to the last block
/// while it keeps splitting off sparse pairs.
pub(crate) fn accumulate_sparse_pairs(
    within: &VertexSet,
    x: &Rational,
    y: &Rational,
    mut step: impl FnMut(&VertexSet) -> Result<Round1Outcome>,
) -> Result<Round1Outcome> {
    let length = rational::ceil_usize(&y.recip()).max(2);
    let mut blocks: Vec<VertexSet> = Vec::new();
    let mut cur = within.clone();
    let mut rounds = 0;
    while blocks.len() + 1 < length {
        rounds += 1;
        assert!(rounds <= length.saturating_add(1), "sparse-pair accumulation ran past its bound");
        match step(&cur) {
            Ok(Round1Outcome::SparsePair { x_side, y_side, .. }) => {
                blocks.push(x_side);
                cur = y_side;
            }
            Ok(o @ (Round1Outcome::Sparser { .. } | Round1Outcome::PureBlockadeFound { .. })) => {
                return Ok(o)
            }
            Ok(other) => {
                return Err(Error::internal(format!(
                    "comb step returned a {}",
                    other.kind_name()
                )))
            }
            Err(e) if is_scale_miss(&e) && !blocks.is_empty() => break,
            Err(e) => return Err(e),
        }
    }
    blocks.push(cur);
    Ok(Round1Outcome::XSparseBlockade {
        blockade: Blockade::new(blocks)?,
        x: x.clone(),
    })
}

pub fn house3_sparsify(g: &Graph, x: &Rational, profile: &ConstantsProfile) -> Result<Round1Outcome> {
    house3_within(g, &g.vertices(), x, profile)
}

/// Removes the `c y^3`-sparsity hypothesis of [`house2_within`] by descending
/// the grid `y = c^j`: each sparser-set outcome becomes the witness one grid
/// step down, until a blockade appears or `y < x`, where the witness itself
/// is cut into an `x`-sparse blockade.
///
/// Requires `g[within]` to be `xi`-sparse. The scan starts at `c^5` in paper
/// mode and at the largest grid value with a witness in demo mode.
pub fn house3_within(
    g: &Graph,
    within: &VertexSet,
    x: &Rational,
    profile: &ConstantsProfile,
) -> Result<Round1Outcome> {
    let c = profile.c();
    if *x <= rational::int(0) || *x >= rational::int(1) {
        return Err(Error::precondition(format!("x = {} outside (0, 1)", Show(x))));
    }
    if profile.is_paper() && *x >= rational::pow(c, 5) {
        return Err(Error::precondition(format!("x = {} not below c^5", Show(x))));
    }
    let n = within.len();
    if n < 2 {
        return Err(Error::DegenerateInput(format!("{n} vertices, need at least 2")));
    }
    require_sparse(g, within, profile.xi(), "xi")?;

    let first = if profile.is_paper() { 5 } else { 1 };
    let mut start = None;
    for j in first..=5 {
        let y = rational::pow(c, j);
        let witness = peel(g, within, &(c * &y * &y * &y), Side::Sparse);
        if rational::count_ge(witness.len(), &y, n) {
            start = Some((y, witness));
            break;
        }
    }
    let Some((mut y, mut f)) = start else {
        return Err(scale_miss("no sparse witness on the starting grid"));
    };
    loop {
        if y < *x {
            return split_into_sparse_parts(g, &f, x);
        }
        match house2_within(g, &f, x, &y, profile)? {
            Round1Outcome::Sparser { set, .. } => {
                let next = &y * c;
                let witness = peel(g, &set, &(c * &next * &next * &next), Side::Sparse);
                if !rational::count_ge(witness.len(), &next, n) {
                    return Err(scale_miss("sparser set too small for the next grid level"));
                }
                y = next;
                f = witness;
            }
            o @ (Round1Outcome::PureBlockadeFound { .. } | Round1Outcome::XSparseBlockade { .. }) => {
                return Ok(o)
            }
            other => {
                return Err(Error::internal(format!(
                    "iterated comb step returned a {}",
                    other.kind_name()
                )))
            }
        }
    }
}

/// `ceil(1/x)` equal consecutive chunks of a very sparse set.
fn split_into_sparse_parts(g: &Graph, f: &VertexSet, x: &Rational) -> Result<Round1Outcome> {
    let parts = rational::ceil_usize(&x.recip());
    let size = f.len() / parts.max(1);
    if size == 0 {
        return Err(scale_miss(format!("{} vertices cannot fill {parts} parts", f.len())));
    }
    let verts = f.to_vec();
    let blocks: Vec<VertexSet> = verts
        .chunks(size)
        .take(parts)
        .map(|chunk| VertexSet::from_iter(g.n(), chunk.iter().copied()))
        .collect();
    for j in 0..blocks.len() {
        for i in 0..j {
            if !BlockadeKind::XSparse.pair_holds(g, &blocks[i], &blocks[j], x) {
                return Err(scale_miss("equal split of the witness is not x-sparse"));
            }
        }
    }
    Ok(Round1Outcome::XSparseBlockade {
        blockade: Blockade::new(blocks)?,
        x: x.clone(),
    })
}

pub fn house4_blockade(g: &Graph, x: &Rational, profile: &ConstantsProfile) -> Result<Round1Outcome> {
    house4_within(g, &g.vertices(), x, profile)
}

/// A pure or `x`-sparse blockade in any house-free `g[within]`: a restricted
/// subgraph either has a sparse complement (where the anticomplete pair
/// lemma gives a complete pair) or is sparse (handed to
/// [`house3_within`]).
pub fn house4_within(
    g: &Graph,
    within: &VertexSet,
    x: &Rational,
    profile: &ConstantsProfile,
) -> Result<Round1Outcome> {
    let n = within.len();
    if *x <= rational::int(0) || *x >= rational::int(1) {
        return Err(Error::precondition(format!("x = {} outside (0, 1)", Show(x))));
    }
    if profile.is_paper() {
        if *x >= rational::pow2(-(profile.d() as i64)) {
            return Err(Error::precondition(format!("x = {} not below 2^-d", Show(x))));
        }
        if rational::below_inverse_power(n, x, profile.d()) {
            return Err(Error::precondition(format!("{n} vertices, below x^-d")));
        }
    }
    if n == 0 {
        return Err(Error::DegenerateInput("empty graph".into()));
    }
    let xi = profile.xi();
    let f = rodl_within(g, within, xi, &(profile.theta() * rational::int(n)));
    let sparse = is_x_sparse_within(g, &f, xi);
    if is_co_x_sparse_within(g, &f, xi) {
        match complete_pair(g, &f, profile.eta()) {
            Err(e) if is_scale_miss(&e) && sparse => {}
            other => return other,
        }
    }
    if !sparse {
        return Err(scale_miss("restricted subgraph search found neither side sparse"));
    }
    match house3_within(g, &f, x, profile)? {
        o @ (Round1Outcome::PureBlockadeFound { .. } | Round1Outcome::XSparseBlockade { .. }) => Ok(o),
        other => Err(Error::internal(format!("sparsification returned a {}", other.kind_name()))),
    }
}

/// A complete pair in `g[f]`, from an anticomplete pair in its complement.
fn complete_pair(g: &Graph, f: &VertexSet, eta: &Rational) -> Result<Round1Outcome> {
    let (h, map) = g.induced_subgraph(f);
    match anticomplete_pair_sparse_trusted(&h.complement(), eta) {
        Ok(pair) => Ok(Round1Outcome::PureBlockadeFound {
            blockade: pair.lifted(&map, g.n()),
            k: 2,
        }),
        Err(Error::PreconditionViolated { what, witness }) => {
            let lifted: Vec<usize> = witness.iter().map(|&v| map[v]).collect();
            let what = if lifted.len() == 5 {
                "graph contains an induced house".to_string()
            } else {
                what
            };
            Err(Error::precondition_with(what, lifted))
        }
        Err(Error::DegenerateInput(what)) => Err(scale_miss(what)),
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

    fn accepted(o: &Round1Outcome, g: &Graph) -> bool {
        verify(&o.certificate("test", &demo(), g), g).unwrap().accepted()
    }

    #[test]
    fn already_sparse_short_circuits() {
        let g = Graph::empty(20);
        let o = house1_step(&g, &ratio(1, 8), &ratio(1, 4), &demo()).unwrap();
        assert!(matches!(o, Round1Outcome::Sparser { ref set, .. } if set.len() == 20));
        assert!(accepted(&o, &g));
    }

    #[test]
    fn fourth_roots() {
        assert_eq!(fourth_root_ceil(1), 1);
        assert_eq!(fourth_root_ceil(16), 2);
        assert_eq!(fourth_root_ceil(17), 3);
        assert_eq!(fourth_root_ceil(256), 4);
    }

    #[test]
    fn accumulation_reaches_the_length() {
        // every step splits off the lowest vertex as a sparse pair
        let n = 12;
        let within = VertexSet::full(n);
        let o = accumulate_sparse_pairs(&within, &ratio(1, 8), &ratio(1, 4), |cur| {
            let first = cur.first().unwrap();
            let mut rest = cur.clone();
            rest.remove(first);
            Ok(Round1Outcome::SparsePair {
                x_side: VertexSet::singleton(n, first),
                y_side: rest,
                x: ratio(1, 8),
            })
        })
        .unwrap();
        match o {
            Round1Outcome::XSparseBlockade { blockade, .. } => {
                assert_eq!(blockade.len(), 4);
                assert_eq!(blockade.blocks()[3].len(), 9);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_vertex_is_degenerate() {
        assert!(matches!(
            house3_sparsify(&Graph::empty(1), &ratio(1, 8), &demo()),
            Err(Error::DegenerateInput(_))
        ));
    }

    #[test]
    fn clique_takes_the_complement_branch() {
        let g = Graph::complete(64);
        let o = house4_blockade(&g, &ratio(1, 8), &demo()).unwrap();
        match &o {
            Round1Outcome::PureBlockadeFound { blockade, k } => {
                assert_eq!(*k, 2);
                assert!(g.is_complete_to(&blockade.blocks()[0], &blockade.blocks()[1]));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(accepted(&o, &g));
    }

    #[test]
    fn edgeless_graph_takes_the_sparse_branch() {
        let g = Graph::empty(64);
        let o = house4_blockade(&g, &ratio(1, 8), &demo()).unwrap();
        assert!(matches!(o, Round1Outcome::XSparseBlockade { .. }), "{o:?}");
        assert!(accepted(&o, &g));
    }
}
