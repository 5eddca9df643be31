//! Every labelled P5-free graph on at most six vertices, found by exhaustive
//! filtration and cached on disk as bit-packed edge masks.
//!
//! File layout, little-endian: the magic `BLKCAT`, a `u32` version, then
//! for each order `1..=6` a `u32` count followed by that many `u16` masks.
//! Bit `i` of a mask is the `i`-th pair `(u, v)`, `u < v`, in lexicographic
//! order. A file with the wrong magic or version is rebuilt.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use crate::graph::Graph;
use crate::pattern::{find_induced_copy, PatternGraph};

pub const CATALOGUE_VERSION: u32 = 1;
pub const CATALOGUE_MAX_ORDER: usize = 6;
const MAGIC: &[u8; 6] = b"BLKCAT";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalogue {
    // by_order[k] holds the masks of the graphs on k vertices
    by_order: Vec<Vec<u16>>,
}

fn pairs(k: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..k).flat_map(move |u| (u + 1..k).map(move |v| (u, v)))
}

pub fn graph_from_mask(k: usize, mask: u16) -> Graph {
    let mut g = Graph::empty(k);
    for (i, (u, v)) in pairs(k).enumerate() {
        if mask >> i & 1 == 1 {
            g.add_edge(u, v);
        }
    }
    g
}

impl Catalogue {
    /// Filters all `2^(k choose 2)` labelled graphs of each order.
    pub fn build() -> Catalogue {
        let p5 = PatternGraph::p5();
        let mut by_order = vec![Vec::new(); CATALOGUE_MAX_ORDER + 1];
        for (k, slot) in by_order.iter_mut().enumerate().skip(1) {
            let m = k * (k - 1) / 2;
            for mask in 0..(1u32 << m) {
                let mask = mask as u16;
                if find_induced_copy(&graph_from_mask(k, mask), &p5).is_none() {
                    slot.push(mask);
                }
            }
        }
        Catalogue { by_order }
    }

    pub fn graphs(&self, k: usize) -> &[u16] {
        self.by_order.get(k).map_or(&[], Vec::as_slice)
    }

    pub fn len(&self) -> usize {
        self.by_order.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = MAGIC.to_vec();
        out.extend_from_slice(&CATALOGUE_VERSION.to_le_bytes());
        for masks in &self.by_order[1..] {
            out.extend_from_slice(&(masks.len() as u32).to_le_bytes());
            for m in masks {
                out.extend_from_slice(&m.to_le_bytes());
            }
        }
        out
    }

    /// `None` on a wrong magic, a version mismatch or truncation.
    pub fn from_bytes(bytes: &[u8]) -> Option<Catalogue> {
        let rest = bytes.strip_prefix(MAGIC.as_slice())?;
        let (version, mut rest) = rest.split_first_chunk::<4>()?;
        if u32::from_le_bytes(*version) != CATALOGUE_VERSION {
            return None;
        }
        let mut by_order = vec![Vec::new()];
        for _ in 1..=CATALOGUE_MAX_ORDER {
            let (count, tail) = rest.split_first_chunk::<4>()?;
            let count = u32::from_le_bytes(*count) as usize;
            let body = tail.get(..count * 2)?;
            by_order.push(body.chunks_exact(2).map(|c| u16::from_le_bytes([c[0], c[1]])).collect());
            rest = &tail[count * 2..];
        }
        rest.is_empty().then_some(Catalogue { by_order })
    }

    /// Reads the cache at `path`, rebuilding and rewriting it when missing
    /// or stale.
    pub fn load_or_build(path: &Path) -> io::Result<Catalogue> {
        if let Ok(bytes) = fs::read(path) {
            if let Some(c) = Catalogue::from_bytes(&bytes) {
                return Ok(c);
            }
        }
        let c = Catalogue::build();
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        // write-then-rename so concurrent readers never see a partial file
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, c.to_bytes())?;
        fs::rename(&tmp, path)?;
        Ok(c)
    }
}

/// `$BLOCKADE_CACHE_DIR/p5free-v{version}.bin`, defaulting to the system
/// temporary directory.
pub fn default_cache_path() -> PathBuf {
    let dir = std::env::var_os("BLOCKADE_CACHE_DIR").map_or_else(std::env::temp_dir, PathBuf::from);
    dir.join(format!("blockade-p5free-v{CATALOGUE_VERSION}.bin"))
}

/// The process-wide catalogue, loaded from the default cache once. Falls
/// back to an in-memory build when the cache cannot be written.
pub fn shared() -> &'static Catalogue {
    static CELL: OnceLock<Catalogue> = OnceLock::new();
    CELL.get_or_init(|| Catalogue::load_or_build(&default_cache_path()).unwrap_or_else(|_| Catalogue::build()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_known_small_cases() {
        let c = Catalogue::build();
        // every graph on at most four vertices is P5-free
        assert_eq!(c.graphs(1).len(), 1);
        assert_eq!(c.graphs(4).len(), 64);
        assert_eq!(c.graphs(5).len(), 1024 - 60);
        assert!(c.graphs(6).iter().all(|&m| find_induced_copy(&graph_from_mask(6, m), &PatternGraph::p5()).is_none()));
    }

    #[test]
    fn cache_roundtrip_and_version_rebuild() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cat.bin");
        let built = Catalogue::load_or_build(&path).unwrap();
        assert_eq!(Catalogue::load_or_build(&path).unwrap(), built);

        let mut bytes = fs::read(&path).unwrap();
        bytes[MAGIC.len()] ^= 0xff;
        assert!(Catalogue::from_bytes(&bytes).is_none());
        fs::write(&path, &bytes).unwrap();
        assert_eq!(Catalogue::load_or_build(&path).unwrap(), built);
        assert_eq!(fs::read(&path).unwrap(), built.to_bytes());
    }
}
