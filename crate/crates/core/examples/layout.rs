//! Layout refinement, first with the built-in pure-pair finder and then
//! with a finder that splits parts along components and anticomponents.
//!
//! `cargo run --example layout`

use blockade::bitset::VertexSet;
use blockade::certificate::{Blockade, BlockadeKind};
use blockade::error::{Error, Result};
use blockade::graph::Graph;
use blockade::lab::substitute;
use blockade::profile::ConstantsProfile;
use blockade::rational::{ratio, Show};
use blockade::round1::{epsone_blockade, Round1Outcome};
use blockade::round2::{blocks_extract, Round2Outcome};

fn split(g: &Graph, part: &VertexSet) -> Result<(Vec<VertexSet>, bool)> {
    let comps = g.components_within(part);
    if comps.len() >= 2 {
        return Ok((comps, false));
    }
    let anti = g.anticomponents_within(part);
    if anti.len() >= 2 {
        return Ok((anti, true));
    }
    Err(Error::DegenerateInput("part is a single vertex".into()))
}

/// Cograph on `2^depth` vertices: two equal halves, joined or disjoint,
/// alternating by level. Every split is even, so layouts take real steps.
fn balanced_cograph(depth: u32, join: bool) -> Graph {
    if depth == 0 {
        return Graph::empty(1);
    }
    let half = balanced_cograph(depth - 1, !join);
    let quotient = if join { Graph::complete(2) } else { Graph::empty(2) };
    substitute(&quotient, &[half.clone(), half])
}

fn main() -> Result<()> {
    let profile = ConstantsProfile::demo_small();
    let g = balanced_cograph(7, true);

    let report = epsone_blockade(&g, &ratio(1, 4), &profile)?;
    println!(
        "built-in finder: length {}, finder threshold {}, {} audited steps, stop {}",
        report.blockade.len(),
        Show(&report.x),
        report.audit.steps.len(),
        report.stop.as_str()
    );

    let mut pure = |g: &Graph, part: &VertexSet, _: &_| -> Result<Round1Outcome> {
        let (blocks, _) = split(g, part)?;
        let k = blocks.len();
        Ok(Round1Outcome::PureBlockadeFound { blockade: Blockade::new(blocks)?, k })
    };
    let report = blockade::round1::refine_layout(&g, &ratio(1, 16), 1, &mut pure, &profile)?;
    println!(
        "component finder: length {}, width {}, {} steps, {} violations, stop {}",
        report.blockade.len(),
        report.blockade.width(),
        report.audit.steps.len(),
        report.audit.violation_count(),
        report.stop.as_str()
    );

    let mut parts = |g: &Graph, part: &VertexSet| -> Result<Round2Outcome> {
        let (blocks, complete) = split(g, part)?;
        let kind = if complete { BlockadeKind::Complete } else { BlockadeKind::Anticomplete };
        Ok(Round2Outcome::CompleteOrAnticompleteBlockade { blockade: Blockade::new(blocks)?, kind })
    };
    let report = blocks_extract(&g, &ratio(1, 8), 1, &mut parts, &profile)?;
    match &report.restricted {
        Some((set, side)) => println!(
            "blocks layout: restricted {} side of {} vertices after {} steps",
            side.as_str(),
            set.len(),
            report.steps.len()
        ),
        None => println!("blocks layout: no restricted set, stop {:?}", report.stop),
    }
    Ok(())
}
