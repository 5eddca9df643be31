//! Seeded generators for hereditary classes. Every graph is checked against
//! its excluded pattern before it is returned.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::catalogue::{self, graph_from_mask};
use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_MAX_VERTICES};
use crate::pattern::{find_induced_copy, PatternGraph};

/// Fresh samples the filtered random family may draw before giving up.
pub const REJECTION_ATTEMPTS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// Random cotrees: P4-free, hence both house-free and P5-free.
    Cograph,
    /// Catalogue quotients substituted into each other recursively: P5-free.
    Substitution,
    /// Sparse binomial graphs, resampled until house-free.
    SparseRandom,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Cograph, Family::Substitution, Family::SparseRandom];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Cograph => "cograph",
            Family::Substitution => "substitution",
            Family::SparseRandom => "sparse-random",
        }
    }

    fn excludes(self) -> Exclude {
        match self {
            Family::Cograph => Exclude::P4,
            Family::Substitution => Exclude::P5,
            Family::SparseRandom => Exclude::House,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown family `{s}` (cograph, substitution, sparse-random)"))
    }
}

/// The induced subgraph a generated graph is guaranteed to avoid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exclude {
    P4,
    P5,
    House,
}

impl Exclude {
    pub fn pattern(self) -> PatternGraph {
        match self {
            Exclude::P4 => PatternGraph::p4(),
            Exclude::P5 => PatternGraph::p5(),
            Exclude::House => PatternGraph::house(),
        }
    }

    pub fn complement(self) -> Exclude {
        match self {
            Exclude::P4 => Exclude::P4,
            Exclude::P5 => Exclude::House,
            Exclude::House => Exclude::P5,
        }
    }

    /// P4-free graphs avoid both five-vertex patterns.
    pub fn implies_house_free(self) -> bool {
        matches!(self, Exclude::P4 | Exclude::House)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    /// Emit the complement of the family's graph.
    pub complement: bool,
    /// Children per cotree node or per substitution quotient, inclusive.
    pub branching: (usize, usize),
    /// Edge probability of the random family; `3/n` when unset.
    pub density: Option<f64>,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            seed,
            complement: false,
            branching: (2, 4),
            density: None,
        }
    }

    pub fn complemented(mut self) -> Self {
        self.complement = !self.complement;
        self
    }

    pub fn excludes(&self) -> Exclude {
        let e = self.family.excludes();
        if self.complement {
            e.complement()
        } else {
            e
        }
    }

    /// `family` or `co-family`.
    pub fn label(&self) -> String {
        if self.complement {
            format!("co-{}", self.family)
        } else {
            self.family.to_string()
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    if spec.n > DEFAULT_MAX_VERTICES {
        return Err(Error::SizeCap {
            n: spec.n,
            limit: DEFAULT_MAX_VERTICES,
        });
    }
    let (lo, hi) = spec.branching;
    if lo < 2 || hi < lo {
        return Err(Error::precondition(format!("branching range {lo}..={hi} must satisfy 2 <= lo <= hi")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let exclude = spec.family.excludes();
    let pattern = exclude.pattern();
    let g = match spec.family {
        Family::Cograph => cograph(spec.n, spec.branching, &mut rng),
        Family::Substitution => substitution(spec.n, hi.min(catalogue::CATALOGUE_MAX_ORDER), &mut rng),
        Family::SparseRandom => {
            let p = spec.density.unwrap_or(3.0 / spec.n.max(1) as f64).clamp(0.0, 1.0);
            let mut found = None;
            for _ in 0..REJECTION_ATTEMPTS {
                let g = Graph::from_fn(spec.n, |_, _| rng.gen_bool(p));
                if find_induced_copy(&g, &pattern).is_none() {
                    found = Some(g);
                    break;
                }
            }
            found.ok_or_else(|| Error::RejectionBudgetExhausted {
                what: format!("house-free G({}, {p})", spec.n),
                attempts: REJECTION_ATTEMPTS,
            })?
        }
    };
    // the random family was filtered by this very check already
    if spec.family != Family::SparseRandom {
        if let Some(copy) = find_induced_copy(&g, &pattern) {
            return Err(Error::internal(format!(
                "{} generator produced an induced {} on {copy:?}",
                spec.family,
                pattern.name()
            )));
        }
    }
    Ok(if spec.complement { g.complement() } else { g })
}

/// Splits `n` into `k` positive parts, uniformly over compositions.
fn composition(n: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut cuts = sample(rng, n - 1, k - 1).into_vec();
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(k);
    let mut prev = 0;
    for c in cuts {
        parts.push(c + 1 - prev);
        prev = c + 1;
    }
    parts.push(n - prev);
    parts
}

/// Replaces vertex `i` of `quotient` by `parts[i]`.
pub fn substitute(quotient: &Graph, parts: &[Graph]) -> Graph {
    assert_eq!(quotient.n(), parts.len());
    let owner: Vec<(usize, usize)> =
        parts.iter().enumerate().flat_map(|(i, p)| (0..p.n()).map(move |v| (i, v))).collect();
    Graph::from_fn(owner.len(), |u, v| {
        let ((pu, iu), (pv, iv)) = (owner[u], owner[v]);
        if pu == pv {
            parts[pu].has_edge(iu, iv)
        } else {
            quotient.has_edge(pu, pv)
        }
    })
}

fn cograph(n: usize, (lo, hi): (usize, usize), rng: &mut ChaCha8Rng) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let k = rng.gen_range(lo..=hi).min(n);
    let parts: Vec<Graph> = composition(n, k, rng).into_iter().map(|m| cograph(m, (lo, hi), rng)).collect();
    let quotient = if rng.gen_bool(0.5) { Graph::complete(k) } else { Graph::empty(k) };
    substitute(&quotient, &parts)
}

fn substitution(n: usize, max_k: usize, rng: &mut ChaCha8Rng) -> Graph {
    let cat = catalogue::shared();
    if n <= catalogue::CATALOGUE_MAX_ORDER {
        let pool = cat.graphs(n);
        if pool.is_empty() {
            return Graph::empty(n);
        }
        return graph_from_mask(n, pool[rng.gen_range(0..pool.len())]);
    }
    let k = rng.gen_range(2..=max_k.max(2));
    let parts: Vec<Graph> = composition(n, k, rng).into_iter().map(|m| substitution(m, max_k, rng)).collect();
    let pool = cat.graphs(k);
    let quotient = graph_from_mask(k, pool[rng.gen_range(0..pool.len())]);
    substitute(&quotient, &parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_vertex_cograph() {
        let g = generate(&GeneratorSpec::new(Family::Cograph, 1, 7)).unwrap();
        assert_eq!((g.n(), g.edge_count()), (1, 0));
    }

    #[test]
    fn same_seed_same_graph() {
        for family in Family::ALL {
            let spec = GeneratorSpec::new(family, 40, 11);
            assert_eq!(generate(&spec).unwrap(), generate(&spec).unwrap(), "{family}");
        }
    }

    #[test]
    fn complement_flag_flips_the_class() {
        let spec = GeneratorSpec::new(Family::Substitution, 30, 3).complemented();
        assert_eq!(spec.excludes(), Exclude::House);
        let g = generate(&spec).unwrap();
        assert!(find_induced_copy(&g, &PatternGraph::house()).is_none());
    }

    #[test]
    fn compositions_are_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for n in 2..30 {
            for k in 2..=n.min(6) {
                let c = composition(n, k, &mut rng);
                assert_eq!((c.len(), c.iter().sum::<usize>()), (k, n));
                assert!(c.iter().all(|&m| m > 0));
            }
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let spec = GeneratorSpec::new(Family::Cograph, DEFAULT_MAX_VERTICES + 1, 0);
        assert!(matches!(generate(&spec), Err(Error::SizeCap { .. })));
    }
}
