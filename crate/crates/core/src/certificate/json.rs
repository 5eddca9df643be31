//! The versioned JSON form of certificates.
//!
//! Layout of a document:
//!
//! ```json
//! {"version":1,"lemma_id":"...","constants_profile":{"name":"...","entries":{"d":"2/1",...}},
//!  "kind":"blockade","blocks":[[0,1],[2,3]],"apexes":[],"pattern_edges":[],
//!  "claims":[{"property":"length","params":{"length":2}},...],"graph_hash":"..."}
//! ```
//!
//! Rationals are always `"num/den"` strings. Key order is fixed so identical
//! certificates serialize to identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use super::structures::{Blockade, BlockadeKind, Comb, Layout, PairRelationMatrix, Relation};
use super::{Body, Certificate, HomKind, Target};
use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::predicates::Side;
use crate::rational::{self, Rational};

pub const SCHEMA_VERSION: u32 = 1;

/// 64-bit FNV-1a over the sorted edge list, each endpoint as a little-endian
/// `u32`, rendered as 16 hex digits.
pub fn graph_hash(g: &Graph) -> String {
    const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
    const PRIME: u64 = 0x0100_0000_01b3;
    let mut h = OFFSET;
    for (u, v) in g.edges() {
        for x in [u as u32, v as u32] {
            for byte in x.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(PRIME);
            }
        }
    }
    format!("{h:016x}")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileDoc {
    pub name: String,
    pub entries: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub property: String,
    pub params: BTreeMap<String, Value>,
}

impl Claim {
    fn new(property: &str, params: Value) -> Claim {
        let params = match params {
            Value::Object(map) => map.into_iter().collect(),
            _ => BTreeMap::new(),
        };
        Claim {
            property: property.to_string(),
            params,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub version: u32,
    pub lemma_id: String,
    pub constants_profile: ProfileDoc,
    pub kind: String,
    pub blocks: Vec<Vec<usize>>,
    pub apexes: Vec<usize>,
    pub pattern_edges: Vec<[usize; 2]>,
    pub claims: Vec<Claim>,
    pub graph_hash: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DocError {
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("vertex {vertex} outside 0..{n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("unknown certificate kind {0:?}")]
    Kind(String),
    #[error("missing claim {0:?}")]
    MissingClaim(&'static str),
    #[error("claim {claim:?}: bad parameter {param:?}")]
    BadParam { claim: String, param: &'static str },
    #[error("unexpected claim {0:?}")]
    UnexpectedClaim(String),
    #[error("{0}")]
    Shape(String),
}

fn rat(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

fn set_vec(s: &VertexSet) -> Vec<usize> {
    s.to_vec()
}

impl CertificateDoc {
    pub fn from_certificate(c: &Certificate, g: &Graph) -> CertificateDoc {
        let mut blocks = Vec::new();
        let mut apexes = Vec::new();
        let mut pattern_edges = Vec::new();
        let mut claims = Vec::new();
        match &c.body {
            Body::Restricted {
                set,
                eps,
                side,
                min_size,
            } => {
                blocks.push(set_vec(set));
                claims.push(Claim::new(
                    "restricted",
                    json!({"eps": rat(eps), "side": side.as_str()}),
                ));
                claims.push(Claim::new("min_size", json!({"size": rat(min_size)})));
            }
            Body::HomSet {
                set,
                kind,
                min_size,
            } => {
                blocks.push(set_vec(set));
                claims.push(Claim::new("hom_set", json!({"kind": kind.as_str()})));
                claims.push(Claim::new("min_size", json!({"size": rat(min_size)})));
            }
            Body::SparseSubset { set, y, min_size } => {
                blocks.push(set_vec(set));
                claims.push(Claim::new("sparse", json!({"y": rat(y)})));
                claims.push(Claim::new("min_size", json!({"size": rat(min_size)})));
            }
            Body::AnticompletePair { x, y, width } => {
                blocks.push(set_vec(x));
                blocks.push(set_vec(y));
                claims.push(Claim::new("anticomplete_pair", json!({})));
                claims.push(Claim::new("width", json!({"width": rat(width)})));
            }
            Body::Blockade {
                blockade,
                kind,
                length,
                width,
                relations,
            } => {
                blocks.extend(blockade.blocks().iter().map(set_vec));
                claims.push(Claim::new(
                    "blockade",
                    json!({"kind": kind.as_str(), "x": rat(relations.x())}),
                ));
                claims.push(Claim::new("length", json!({"length": length})));
                claims.push(Claim::new("width", json!({"width": rat(width)})));
                for (i, j, tag) in relations.pairs() {
                    claims.push(Claim::new(
                        "pair",
                        json!({"i": i, "j": j, "relation": tag.as_str()}),
                    ));
                }
            }
            Body::Comb {
                comb,
                length,
                width,
            } => {
                blocks.extend(comb.blocks().iter().map(set_vec));
                apexes.extend_from_slice(comb.apexes());
                claims.push(Claim::new("comb", json!({})));
                claims.push(Claim::new("length", json!({"length": length})));
                claims.push(Claim::new("width", json!({"width": rat(width)})));
            }
            Body::Layout { layout, x } => {
                blocks.extend(layout.parts().iter().map(set_vec));
                pattern_edges.extend(layout.pattern().edges().into_iter().map(|(a, b)| [a, b]));
                claims.push(Claim::new(
                    "layout",
                    json!({"x": rat(x), "decided": layout.decided(), "wrong": layout.wrong()}),
                ));
            }
        }
        if let Some(t) = &c.target {
            claims.push(Claim::new(
                "target",
                json!({"bound": rat(&t.bound), "met": t.met}),
            ));
        }
        CertificateDoc {
            version: SCHEMA_VERSION,
            lemma_id: c.lemma_id.clone(),
            constants_profile: ProfileDoc {
                name: c.profile_name.clone(),
                entries: c
                    .profile_entries
                    .iter()
                    .map(|(k, v)| (k.clone(), rational::format(v)))
                    .collect(),
            },
            kind: c.body.kind_name().to_string(),
            blocks,
            apexes,
            pattern_edges,
            claims,
            graph_hash: graph_hash(g),
        }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate documents serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<CertificateDoc, DocError> {
        let doc: CertificateDoc =
            serde_json::from_str(text).map_err(|e| DocError::Json(e.to_string()))?;
        if doc.version != SCHEMA_VERSION {
            return Err(DocError::Version(doc.version));
        }
        Ok(doc)
    }

    /// Rebuilds the typed certificate over a graph with `n` vertices.
    pub fn to_certificate(&self, n: usize) -> Result<Certificate, DocError> {
        if self.version != SCHEMA_VERSION {
            return Err(DocError::Version(self.version));
        }
        let mut entries = BTreeMap::new();
        for (k, v) in &self.constants_profile.entries {
            let r = rational::parse(v).map_err(|_| DocError::Shape(format!("profile entry {k}")))?;
            entries.insert(k.clone(), r);
        }
        let mut sets = Vec::with_capacity(self.blocks.len());
        for b in &self.blocks {
            sets.push(to_set(b, n)?);
        }
        let mut claims = Claims::new(&self.claims);
        let target = match claims.take_opt("target") {
            Some(t) => Some(Target {
                bound: param_rat(t, "bound")?,
                met: param_bool(t, "met")?,
            }),
            None => None,
        };
        let body = match self.kind.as_str() {
            "restricted" => {
                let set = single(sets, "restricted")?;
                let c = claims.take("restricted")?;
                let eps = param_rat(c, "eps")?;
                let side = match param_str(c, "side")? {
                    "sparse" => Side::Sparse,
                    "dense" => Side::Dense,
                    _ => return Err(bad(c, "side")),
                };
                let min_size = param_rat(claims.take("min_size")?, "size")?;
                Body::Restricted {
                    set,
                    eps,
                    side,
                    min_size,
                }
            }
            "hom_set" => {
                let set = single(sets, "hom_set")?;
                let c = claims.take("hom_set")?;
                let kind = HomKind::parse(param_str(c, "kind")?).ok_or_else(|| bad(c, "kind"))?;
                let min_size = param_rat(claims.take("min_size")?, "size")?;
                Body::HomSet {
                    set,
                    kind,
                    min_size,
                }
            }
            "sparse_subset" => {
                let set = single(sets, "sparse_subset")?;
                let y = param_rat(claims.take("sparse")?, "y")?;
                let min_size = param_rat(claims.take("min_size")?, "size")?;
                Body::SparseSubset { set, y, min_size }
            }
            "anticomplete_pair" => {
                if sets.len() != 2 {
                    return Err(DocError::Shape("anticomplete pair needs two blocks".into()));
                }
                claims.take("anticomplete_pair")?;
                let width = param_rat(claims.take("width")?, "width")?;
                let y = sets.pop().expect("two sets");
                let x = sets.pop().expect("two sets");
                Body::AnticompletePair { x, y, width }
            }
            "blockade" => {
                let c = claims.take("blockade")?;
                let kind =
                    BlockadeKind::parse(param_str(c, "kind")?).ok_or_else(|| bad(c, "kind"))?;
                let x = param_rat(c, "x")?;
                let length = param_usize(claims.take("length")?, "length")?;
                let width = param_rat(claims.take("width")?, "width")?;
                let k = sets.len();
                let mut tags: Vec<Option<Relation>> = vec![None; k * k.saturating_sub(1) / 2];
                for p in claims.take_all("pair") {
                    let i = param_usize(p, "i")?;
                    let j = param_usize(p, "j")?;
                    if i >= j || j >= k {
                        return Err(bad(p, "j"));
                    }
                    let rel = Relation::parse(param_str(p, "relation")?)
                        .ok_or_else(|| bad(p, "relation"))?;
                    let idx = i * (2 * k - i - 1) / 2 + (j - i - 1);
                    if tags[idx].replace(rel).is_some() {
                        return Err(DocError::Shape(format!("pair ({i},{j}) claimed twice")));
                    }
                }
                let tags = tags
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or(DocError::MissingClaim("pair"))?;
                let relations = PairRelationMatrix::from_tags(x, k, tags)
                    .map_err(|e| DocError::Shape(e.to_string()))?;
                let blockade = Blockade::new(sets).map_err(|e| DocError::Shape(e.to_string()))?;
                Body::Blockade {
                    blockade,
                    kind,
                    length,
                    width,
                    relations,
                }
            }
            "comb" => {
                claims.take("comb")?;
                let length = param_usize(claims.take("length")?, "length")?;
                let width = param_rat(claims.take("width")?, "width")?;
                if let Some(&a) = self.apexes.iter().find(|&&a| a >= n) {
                    return Err(DocError::OutOfRange { vertex: a, n });
                }
                let comb = Comb::new(self.apexes.clone(), sets)
                    .map_err(|e| DocError::Shape(e.to_string()))?;
                Body::Comb {
                    comb,
                    length,
                    width,
                }
            }
            "layout" => {
                let c = claims.take("layout")?;
                let x = param_rat(c, "x")?;
                let decided = param_u64(c, "decided")?;
                let wrong = param_u64(c, "wrong")?;
                let q = sets.len();
                let mut pattern = Graph::empty(q);
                for &[a, b] in &self.pattern_edges {
                    if a >= q || b >= q || a == b {
                        return Err(DocError::Shape(format!("pattern edge ({a},{b})")));
                    }
                    pattern.add_edge(a, b);
                }
                Body::Layout {
                    layout: Layout::with_counts(n, pattern, sets, decided, wrong),
                    x,
                }
            }
            other => return Err(DocError::Kind(other.to_string())),
        };
        if self.kind != "comb" && !self.apexes.is_empty() {
            return Err(DocError::Shape("apexes only belong to combs".into()));
        }
        if self.kind != "layout" && !self.pattern_edges.is_empty() {
            return Err(DocError::Shape("pattern edges only belong to layouts".into()));
        }
        claims.finish()?;
        Ok(Certificate {
            lemma_id: self.lemma_id.clone(),
            profile_name: self.constants_profile.name.clone(),
            profile_entries: entries,
            body,
            target,
        })
    }
}

fn to_set(items: &[usize], n: usize) -> Result<VertexSet, DocError> {
    let mut s = VertexSet::new(n);
    for &v in items {
        if v >= n {
            return Err(DocError::OutOfRange { vertex: v, n });
        }
        if !s.insert(v) {
            return Err(DocError::Shape(format!("vertex {v} listed twice in a block")));
        }
    }
    Ok(s)
}

fn single(mut sets: Vec<VertexSet>, kind: &str) -> Result<VertexSet, DocError> {
    if sets.len() != 1 {
        return Err(DocError::Shape(format!("{kind} needs exactly one block")));
    }
    Ok(sets.pop().expect("one set"))
}

/// Claims indexed by property, each consumed at most once.
struct Claims<'a> {
    claims: Vec<Option<&'a Claim>>,
}

impl<'a> Claims<'a> {
    fn new(claims: &'a [Claim]) -> Self {
        Claims {
            claims: claims.iter().map(Some).collect(),
        }
    }

    fn take_opt(&mut self, property: &str) -> Option<&'a Claim> {
        for slot in &mut self.claims {
            if slot.is_some_and(|c| c.property == property) {
                return slot.take();
            }
        }
        None
    }

    fn take(&mut self, property: &'static str) -> Result<&'a Claim, DocError> {
        self.take_opt(property).ok_or(DocError::MissingClaim(property))
    }

    fn take_all(&mut self, property: &str) -> Vec<&'a Claim> {
        let mut out = Vec::new();
        while let Some(c) = self.take_opt(property) {
            out.push(c);
        }
        out
    }

    fn finish(self) -> Result<(), DocError> {
        match self.claims.into_iter().flatten().next() {
            Some(c) => Err(DocError::UnexpectedClaim(c.property.clone())),
            None => Ok(()),
        }
    }
}

fn bad(c: &Claim, param: &'static str) -> DocError {
    DocError::BadParam {
        claim: c.property.clone(),
        param,
    }
}

fn param_str<'a>(c: &'a Claim, name: &'static str) -> Result<&'a str, DocError> {
    c.params
        .get(name)
        .and_then(Value::as_str)
        .ok_or_else(|| bad(c, name))
}

fn param_rat(c: &Claim, name: &'static str) -> Result<Rational, DocError> {
    rational::parse(param_str(c, name)?).map_err(|_| bad(c, name))
}

fn param_u64(c: &Claim, name: &'static str) -> Result<u64, DocError> {
    c.params
        .get(name)
        .and_then(Value::as_u64)
        .ok_or_else(|| bad(c, name))
}

fn param_usize(c: &Claim, name: &'static str) -> Result<usize, DocError> {
    param_u64(c, name).and_then(|v| usize::try_from(v).map_err(|_| bad(c, name)))
}

fn param_bool(c: &Claim, name: &'static str) -> Result<bool, DocError> {
    c.params
        .get(name)
        .and_then(Value::as_bool)
        .ok_or_else(|| bad(c, name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::{verify_document, Certificate, StructuralError};
    use crate::profile::ConstantsProfile;
    use crate::rational::ratio;

    #[test]
    fn hash_depends_on_edges() {
        assert_eq!(graph_hash(&Graph::empty(3)), format!("{:016x}", 0xcbf2_9ce4_8422_2325u64));
        assert_ne!(graph_hash(&Graph::path(3)), graph_hash(&Graph::cycle(3)));
        assert_eq!(graph_hash(&Graph::path(4)), graph_hash(&Graph::path(4)));
    }

    #[test]
    fn blockade_document_round_trip() {
        let g = Graph::complete_multipartite(&[2, 3, 2]);
        let b = Blockade::new(vec![g.vertex_set([0, 1]), g.vertex_set([2, 3, 4]), g.vertex_set([5, 6])])
            .unwrap();
        let c = Certificate::blockade("round", &ConstantsProfile::demo_small(), &g, b, BlockadeKind::Pure, ratio(1, 4))
            .with_target(ratio(3, 1));
        let text = c.to_json(&g);
        let doc = CertificateDoc::from_json(&text).unwrap();
        assert_eq!(doc.to_certificate(g.n()).unwrap(), c);
        assert!(verify_document(&doc, &g).unwrap().accepted());
        assert_eq!(doc.to_json(), text);
    }

    #[test]
    fn hash_mismatch_refused() {
        let g = Graph::complete(4);
        let c = Certificate::hom_set("h", &ConstantsProfile::demo_small(), g.vertices(), HomKind::Clique);
        let doc = c.to_doc(&g);
        let other = Graph::cycle(4);
        assert!(matches!(
            verify_document(&doc, &other),
            Err(StructuralError::HashMismatch { .. })
        ));
    }

    #[test]
    fn malformed_documents() {
        let g = Graph::complete(4);
        let c = Certificate::hom_set("h", &ConstantsProfile::demo_small(), g.vertices(), HomKind::Clique);
        let mut doc = c.to_doc(&g);
        doc.blocks[0].push(9);
        assert!(matches!(doc.to_certificate(4), Err(DocError::OutOfRange { vertex: 9, .. })));
        let mut doc = c.to_doc(&g);
        doc.claims.push(Claim::new("mystery", json!({})));
        assert!(matches!(doc.to_certificate(4), Err(DocError::UnexpectedClaim(_))));
        let mut doc = c.to_doc(&g);
        doc.kind = "nonsense".into();
        assert!(doc.to_certificate(4).is_err());
        assert!(CertificateDoc::from_json("{").is_err());
    }
}
