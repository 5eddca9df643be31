//! Corpus builders and independent oracles shared by the integration tests
//! and the acceptance run.

#![allow(dead_code)]

use blockade::graph::Graph;
use blockade::lab::{generate, substitute, Family, GeneratorSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// House-free families, cycled by index.
pub const HOUSE_FREE_FAMILIES: [(Family, bool); 4] = [
    (Family::Cograph, false),
    (Family::Cograph, true),
    (Family::Substitution, true),
    (Family::SparseRandom, false),
];

/// `count` house-free generator specs with sizes uniform in `lo..=hi`.
pub fn house_free_specs(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<GeneratorSpec> {
    let mut r = rng(seed);
    (0..count)
        .map(|i| {
            let (family, complement) = HOUSE_FREE_FAMILIES[i % HOUSE_FREE_FAMILIES.len()];
            let mut spec = GeneratorSpec::new(family, r.gen_range(lo..=hi), seed.wrapping_mul(1_000_003) + i as u64);
            spec.complement = complement;
            assert!(spec.excludes().implies_house_free());
            spec
        })
        .collect()
}

pub fn house_free_corpus(count: usize, lo: usize, hi: usize, seed: u64) -> Vec<(GeneratorSpec, Graph)> {
    house_free_specs(count, lo, hi, seed)
        .into_iter()
        .map(|s| {
            let g = generate(&s).expect("generator");
            (s, g)
        })
        .collect()
}

pub fn binomial(n: usize, p: f64, r: &mut ChaCha8Rng) -> Graph {
    Graph::from_fn(n, |_, _| r.gen_bool(p))
}

/// Whether `map` embeds `h` in `g` as an induced subgraph, by direct pair
/// comparison.
fn embeds(g: &Graph, h: &Graph, map: &[usize]) -> bool {
    (0..map.len()).all(|i| (i + 1..map.len()).all(|j| h.has_edge(i, j) == g.has_edge(map[i], map[j])))
}

/// Tries every injection `V(h) -> V(g)`.
pub fn has_copy_by_injections(g: &Graph, h: &Graph) -> bool {
    fn go(g: &Graph, h: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        if map.len() == h.n() {
            return embeds(g, h, map);
        }
        for v in 0..g.n() {
            if used[v] {
                continue;
            }
            map.push(v);
            used[v] = true;
            // prune on the pairs already fixed
            let i = map.len() - 1;
            let ok = (0..i).all(|j| h.has_edge(i, j) == g.has_edge(map[i], map[j]));
            if ok && go(g, h, map, used) {
                return true;
            }
            used[v] = false;
            map.pop();
        }
        false
    }
    go(g, h, &mut Vec::new(), &mut vec![false; g.n()])
}

pub fn graph_from_mask(k: usize, mask: u32) -> Graph {
    let mut g = Graph::empty(k);
    let mut i = 0;
    for u in 0..k {
        for v in u + 1..k {
            if mask >> i & 1 == 1 {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// One graph per isomorphism class on `k` vertices, `k <= 6`, by minimum
/// mask over all relabellings.
pub fn iso_class_representatives(k: usize) -> Vec<Graph> {
    let m = k * (k - 1) / 2;
    let mut index = vec![vec![0usize; k]; k];
    let mut i = 0;
    for u in 0..k {
        for v in u + 1..k {
            index[u][v] = i;
            index[v][u] = i;
            i += 1;
        }
    }
    let perms = permutations(k);
    let mut seen = vec![false; 1 << m];
    let mut reps = Vec::new();
    for mask in 0u32..1 << m {
        if seen[mask as usize] {
            continue;
        }
        for p in &perms {
            let mut image = 0u32;
            let mut i = 0;
            for u in 0..k {
                for v in u + 1..k {
                    if mask >> i & 1 == 1 {
                        image |= 1 << index[p[u]][p[v]];
                    }
                    i += 1;
                }
            }
            seen[image as usize] = true;
        }
        reps.push(graph_from_mask(k, mask));
    }
    reps
}

/// Graphs on seven vertices covering every isomorphism class: each class
/// has a member whose first six vertices induce one of the six-vertex
/// representatives.
pub fn seven_vertex_cover() -> Vec<Graph> {
    let mut out = Vec::new();
    for base in iso_class_representatives(6) {
        for nbrs in 0u32..64 {
            let g = Graph::from_fn(7, |u, v| {
                if v == 6 {
                    nbrs >> u & 1 == 1
                } else if u == 6 {
                    nbrs >> v & 1 == 1
                } else {
                    base.has_edge(u, v)
                }
            });
            out.push(g);
        }
    }
    out
}

/// Disjoint union of `parts`.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    substitute(&Graph::empty(parts.len()), parts)
}

/// Join of `parts`: every cross pair adjacent.
pub fn join(parts: &[Graph]) -> Graph {
    substitute(&Graph::complete(parts.len()), parts)
}
