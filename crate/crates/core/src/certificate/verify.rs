//! Independent re-derivation of every claimed property.

use std::fmt;

use thiserror::Error;

use super::json::{graph_hash, CertificateDoc, DocError};
use super::structures::classify_pair;
use super::{Body, Certificate, HomKind};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::predicates::{self, Side};
use crate::rational::{self, Rational};

/// One failed clause, with the vertices that witness the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub clause: String,
    pub detail: String,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Verdict {
    pub failures: Vec<Failure>,
}

impl Verdict {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, clause: impl Into<String>, detail: impl Into<String>, witness: Vec<usize>) {
        self.failures.push(Failure {
            clause: clause.into(),
            detail: detail.into(),
            witness,
        });
    }

    fn check(&mut self, ok: bool, clause: impl Into<String>, detail: impl FnOnce() -> String) {
        if !ok {
            self.fail(clause, detail(), Vec::new());
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.accepted() {
            return writeln!(f, "ACCEPTED");
        }
        writeln!(f, "REJECTED ({} failed clause(s))", self.failures.len())?;
        for fl in &self.failures {
            write!(f, "  - {}: {}", fl.clause, fl.detail)?;
            if !fl.witness.is_empty() {
                write!(f, " (witness {:?})", fl.witness)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The certificate does not describe this graph at all, as opposed to
/// describing it wrongly.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructuralError {
    #[error("vertex {vertex} outside the graph's range 0..{n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("graph hash mismatch: certificate has {claimed}, graph has {actual}")]
    HashMismatch { claimed: String, actual: String },
    #[error("malformed certificate: {0}")]
    Malformed(String),
}

impl From<DocError> for StructuralError {
    fn from(e: DocError) -> Self {
        match e {
            DocError::OutOfRange { vertex, n } => StructuralError::OutOfRange { vertex, n },
            other => StructuralError::Malformed(other.to_string()),
        }
    }
}

/// Parses a JSON document against `g`, refusing hash mismatches, then
/// verifies it.
pub fn verify_document(doc: &CertificateDoc, g: &Graph) -> Result<Verdict, StructuralError> {
    let actual = graph_hash(g);
    if doc.graph_hash != actual {
        return Err(StructuralError::HashMismatch {
            claimed: doc.graph_hash.clone(),
            actual,
        });
    }
    let cert = doc.to_certificate(g.n())?;
    verify(&cert, g)
}

fn check_universe(set: &VertexSet, n: usize) -> Result<(), StructuralError> {
    if set.universe() == n {
        return Ok(());
    }
    match set.iter().find(|&v| v >= n) {
        Some(vertex) => Err(StructuralError::OutOfRange { vertex, n }),
        None => Err(StructuralError::Malformed(format!(
            "set built over {} vertices, graph has {n}",
            set.universe()
        ))),
    }
}

fn sets_of(body: &Body) -> Vec<&VertexSet> {
    match body {
        Body::Restricted { set, .. } | Body::HomSet { set, .. } | Body::SparseSubset { set, .. } => {
            vec![set]
        }
        Body::Blockade { blockade, .. } => blockade.blocks().iter().collect(),
        Body::Comb { comb, .. } => comb.blocks().iter().collect(),
        Body::AnticompletePair { x, y, .. } => vec![x, y],
        Body::Layout { layout, .. } => layout.parts().iter().collect(),
    }
}

/// Re-derives every property `c` claims about `g`.
pub fn verify(c: &Certificate, g: &Graph) -> Result<Verdict, StructuralError> {
    let n = g.n();
    for set in sets_of(&c.body) {
        check_universe(set, n)?;
    }
    if let Body::Comb { comb, .. } = &c.body {
        if let Some(&a) = comb.apexes().iter().find(|&&a| a >= n) {
            return Err(StructuralError::OutOfRange { vertex: a, n });
        }
    }
    if let Body::Layout { layout, .. } = &c.body {
        if layout.pattern().n() != layout.parts().len() {
            return Err(StructuralError::Malformed(
                "layout pattern size differs from part count".into(),
            ));
        }
    }
    if let Body::Blockade {
        blockade, relations, ..
    } = &c.body
    {
        if relations.len() != blockade.len() {
            return Err(StructuralError::Malformed(
                "relation matrix size differs from blockade length".into(),
            ));
        }
    }

    let mut v = Verdict::default();
    match &c.body {
        Body::Restricted {
            set,
            eps,
            side,
            min_size,
        } => {
            v.check(!set.is_empty(), "nonempty", || "restricted set is empty".into());
            let ok = match side {
                Side::Sparse => predicates::is_x_sparse_within(g, set, eps),
                Side::Dense => predicates::is_co_x_sparse_within(g, set, eps),
            };
            if !ok {
                let worst = match side {
                    Side::Sparse => g.max_degree_within(set),
                    Side::Dense => g.max_antidegree_within(set),
                };
                let (deg, w) = worst.unwrap_or((0, 0));
                v.fail(
                    format!("restricted ({})", side.as_str()),
                    format!(
                        "vertex {w} has {deg} {} in a set of {}, above {} of it",
                        if *side == Side::Sparse { "neighbours" } else { "non-neighbours" },
                        set.len(),
                        rational::Show(eps)
                    ),
                    vec![w],
                );
            }
            check_min_size(&mut v, set.len(), min_size);
        }
        Body::HomSet {
            set,
            kind,
            min_size,
        } => {
            if let Some((a, b)) = hom_violation(g, set, *kind) {
                let what = match kind {
                    HomKind::Clique => "non-adjacent pair",
                    HomKind::Stable => "adjacent pair",
                };
                v.fail(kind.as_str(), what, vec![a, b]);
            }
            check_min_size(&mut v, set.len(), min_size);
        }
        Body::SparseSubset { set, y, min_size } => {
            v.check(!set.is_empty(), "nonempty", || "sparse subset is empty".into());
            if !predicates::is_x_sparse_within(g, set, y) {
                let (deg, w) = g.max_degree_within(set).unwrap_or((0, 0));
                v.fail(
                    "sparse",
                    format!("vertex {w} has degree {deg} in a set of {}", set.len()),
                    vec![w],
                );
            }
            check_min_size(&mut v, set.len(), min_size);
        }
        Body::AnticompletePair { x, y, width } => {
            if x.intersects(y) {
                v.fail("disjoint", "the two sides overlap", x.intersection(y).to_vec());
            } else if let Some((a, b)) = crossing_edge(g, x, y) {
                v.fail("anticomplete", "edge between the sides", vec![a, b]);
            }
            check_width(&mut v, x.len().min(y.len()), width);
        }
        Body::Blockade {
            blockade,
            kind,
            length,
            width,
            relations,
        } => {
            let blocks = blockade.blocks();
            let mut seen = VertexSet::new(n);
            for (i, b) in blocks.iter().enumerate() {
                if seen.intersects(b) {
                    v.fail(
                        format!("block {i} disjoint"),
                        "shares vertices with an earlier block",
                        seen.intersection(b).to_vec(),
                    );
                }
                seen.union_with(b);
            }
            v.check(blocks.len() >= *length, "length", || {
                format!("{} blocks, claimed at least {length}", blocks.len())
            });
            check_width(&mut v, blockade.width(), width);
            let x = relations.x();
            for (i, j, tag) in relations.pairs() {
                let actual = classify_pair(g, &blocks[i], &blocks[j], x);
                if actual != tag {
                    v.fail(
                        format!("relation ({i},{j})"),
                        format!("claimed {tag}, actual {actual}"),
                        Vec::new(),
                    );
                }
                if !kind.pair_holds(g, &blocks[i], &blocks[j], x) {
                    v.fail(
                        format!("{} pair ({i},{j})", kind.as_str()),
                        format!("pair is {actual}"),
                        Vec::new(),
                    );
                }
            }
        }
        Body::Comb {
            comb,
            length,
            width,
        } => {
            for (clause, witness) in comb.violations(g) {
                v.fail(clause, "comb condition fails", witness);
            }
            v.check(comb.len() >= *length, "length", || {
                format!("{} teeth, claimed at least {length}", comb.len())
            });
            check_width(&mut v, comb.width(), width);
        }
        Body::Layout { layout, x } => {
            let parts = layout.parts();
            let mut seen = VertexSet::new(n);
            for (i, p) in parts.iter().enumerate() {
                v.check(!p.is_empty(), format!("part {i} nonempty"), || "empty part".into());
                if seen.intersects(p) {
                    v.fail(
                        format!("part {i} disjoint"),
                        "shares vertices with an earlier part",
                        seen.intersection(p).to_vec(),
                    );
                }
                seen.union_with(p);
            }
            for (i, j) in layout.incomplete_pattern_edges(g) {
                v.fail(
                    format!("pattern edge ({i},{j}) complete"),
                    "parts joined in the pattern are not complete",
                    Vec::new(),
                );
            }
            let (decided, wrong) = layout.recount(g);
            v.check(decided == layout.decided(), "decided count", || {
                format!("claimed {}, recount {decided}", layout.decided())
            });
            v.check(wrong == layout.wrong(), "wrong count", || {
                format!("claimed {}, recount {wrong}", layout.wrong())
            });
            let lhs = num_bigint::BigInt::from(wrong) * x.denom();
            let rhs = num_bigint::BigInt::from(decided) * x.numer();
            v.check(lhs <= rhs, "wrong <= x * decided", || {
                format!("{wrong} wrong vs {decided} decided at x = {}", rational::Show(x))
            });
        }
    }
    if let Some(t) = &c.target {
        let reached = rational::count_ge(c.body.measure(), &t.bound, 1);
        v.check(reached == t.met, "target flag", || {
            format!(
                "claims target {} {}met, measured {}",
                rational::Show(&t.bound),
                if t.met { "" } else { "not " },
                c.body.measure()
            )
        });
    }
    Ok(v)
}

fn check_min_size(v: &mut Verdict, size: usize, min: &Rational) {
    v.check(rational::count_ge(size, min, 1), "min size", || {
        format!("size {size} below claimed {}", rational::Show(min))
    });
}

fn check_width(v: &mut Verdict, actual: usize, width: &Rational) {
    v.check(rational::count_ge(actual, width, 1), "width", || {
        format!("smallest block has {actual}, claimed at least {}", rational::Show(width))
    });
}

fn hom_violation(g: &Graph, set: &VertexSet, kind: HomKind) -> Option<(usize, usize)> {
    for a in set {
        let bad = match kind {
            HomKind::Clique => {
                let mut missing = set.difference(g.neighbours(a));
                missing.remove(a);
                missing
            }
            HomKind::Stable => set.intersection(g.neighbours(a)),
        };
        if let Some(b) = bad.first() {
            return Some((a.min(b), a.max(b)));
        }
    }
    None
}

fn crossing_edge(g: &Graph, x: &VertexSet, y: &VertexSet) -> Option<(usize, usize)> {
    x.iter()
        .find_map(|a| g.neighbours(a).intersection(y).first().map(|b| (a, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{classify_pairs, Blockade, BlockadeKind, Certificate, Relation};
    use crate::profile::ConstantsProfile;
    use crate::rational::ratio;

    fn profile() -> ConstantsProfile {
        ConstantsProfile::demo_small()
    }

    #[test]
    fn clique_of_k5_accepted() {
        let g = Graph::complete(5);
        let c = Certificate::hom_set("test", &profile(), g.vertices(), HomKind::Clique);
        assert!(verify(&c, &g).unwrap().accepted());
    }

    #[test]
    fn c5_is_not_a_clique() {
        let g = Graph::cycle(5);
        let c = Certificate::hom_set("test", &profile(), g.vertices(), HomKind::Clique);
        let verdict = verify(&c, &g).unwrap();
        assert!(!verdict.accepted());
        assert_eq!(verdict.failures[0].clause, "clique");
        assert_eq!(verdict.failures[0].detail, "non-adjacent pair");
        assert_eq!(verdict.failures[0].witness.len(), 2);
    }

    #[test]
    fn out_of_range_is_structural() {
        let g = Graph::complete(3);
        let big = Graph::complete(6);
        let c = Certificate::hom_set("test", &profile(), big.vertices(), HomKind::Clique);
        assert!(matches!(verify(&c, &g), Err(StructuralError::OutOfRange { .. })));
    }

    #[test]
    fn blockade_mutations_rejected() {
        let g = Graph::complete_multipartite(&[2, 2, 2]);
        let blocks = vec![g.vertex_set([0, 1]), g.vertex_set([2, 3]), g.vertex_set([4, 5])];
        let b = Blockade::new(blocks).unwrap();
        let c = Certificate::blockade("test", &profile(), &g, b, BlockadeKind::Complete, ratio(1, 4));
        assert!(verify(&c, &g).unwrap().accepted());

        let mut raised = c.clone();
        if let Body::Blockade { width, .. } = &mut raised.body {
            *width = ratio(3, 1);
        }
        assert!(!verify(&raised, &g).unwrap().accepted());

        let mut flipped = c.clone();
        if let Body::Blockade { relations, .. } = &mut flipped.body {
            relations.set(0, 2, Relation::Anticomplete);
        }
        let verdict = verify(&flipped, &g).unwrap();
        assert_eq!(verdict.failures.len(), 1);
        assert_eq!(verdict.failures[0].clause, "relation (0,2)");

        let mut dropped = c.clone();
        if let Body::Blockade { blockade, relations, .. } = &mut dropped.body {
            let mut blocks = blockade.blocks().to_vec();
            blocks[1].remove(2);
            *blockade = Blockade::new(blocks).unwrap();
            *relations = classify_pairs(&g, blockade, &ratio(1, 4));
        }
        assert!(!verify(&dropped, &g).unwrap().accepted());
    }

    #[test]
    fn target_flag_must_match() {
        let g = Graph::complete(4);
        let c = Certificate::hom_set("test", &profile(), g.vertices(), HomKind::Clique)
            .with_target(ratio(9, 2));
        assert_eq!(c.target_met(), Some(false));
        assert!(verify(&c, &g).unwrap().accepted());
        let mut lying = c.clone();
        lying.target.as_mut().unwrap().met = true;
        assert!(!verify(&lying, &g).unwrap().accepted());
    }
}
