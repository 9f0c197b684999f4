//! Canonical forms of connected oriented trivalent graphs.
//!
//! The code of a graph is the mate table read off in a traversal order: pick
//! a start dart, label vertices in the order they are reached, and number the
//! darts of vertex `i` as `3i` (entry), `3i+1`, `3i+2` following the vertex
//! orientation. Reversing orientations is allowed during the search; each
//! reversal costs a sign. The canonical code is the lexicographically least
//! code over all starts and all reversal patterns. If the least code is reached
//! with reversal patterns of both parities, the graph equals its own negative.

use std::collections::HashMap;

use super::diagram::{rot, ClosedGraph};

pub type Code = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Canon {
    pub code: Code,
    /// `None` when the graph vanishes by antisymmetry.
    pub sign: Option<i8>,
}

impl Canon {
    /// The oriented representative of this class.
    pub fn graph(&self) -> ClosedGraph {
        ClosedGraph::new(self.code.iter().map(|&c| c as u32).collect())
    }
}

struct Search<'a> {
    mate: &'a [u32],
    n_darts: usize,
    // per original dart: its label, or u8::MAX
    dart_label: Vec<u8>,
    // per label: original dart
    dart_at: Vec<u32>,
    vertex_seen: Vec<bool>,
    n_vertices_labeled: usize,
    flips: u32,
    cur: Vec<u8>,
    best: Option<Code>,
    parities: [bool; 2],
}

impl<'a> Search<'a> {
    fn label_vertex(&mut self, entry: u32, flip: bool) {
        let l = self.n_vertices_labeled as u8;
        self.n_vertices_labeled += 1;
        self.vertex_seen[entry as usize / 3] = true;
        let (p1, p2) = if flip {
            (rot(rot(entry)), rot(entry))
        } else {
            (rot(entry), rot(rot(entry)))
        };
        for (pos, d) in [entry, p1, p2].into_iter().enumerate() {
            self.dart_label[d as usize] = 3 * l + pos as u8;
            self.dart_at[3 * l as usize + pos] = d;
        }
        if flip {
            self.flips += 1;
        }
    }

    fn unlabel_vertex(&mut self, entry: u32, flip: bool) {
        self.n_vertices_labeled -= 1;
        self.vertex_seen[entry as usize / 3] = false;
        let v = entry / 3;
        for d in 3 * v..3 * v + 3 {
            self.dart_label[d as usize] = u8::MAX;
        }
        if flip {
            self.flips -= 1;
        }
    }

    /// Whether `cur[..len]` is still equal to the best code's prefix
    /// (`Some(true)`), already smaller (`Some(false)`), or larger (`None`).
    fn compare_prefix(&self, len: usize) -> Option<bool> {
        match &self.best {
            None => Some(false),
            Some(b) => {
                for i in 0..len {
                    if self.cur[i] < b[i] {
                        return Some(false);
                    }
                    if self.cur[i] > b[i] {
                        return None;
                    }
                }
                Some(true)
            }
        }
    }

    fn step(&mut self, i: usize, mut tied: bool) {
        if i == self.n_darts {
            let parity = (self.flips % 2) as usize;
            if tied {
                self.parities[parity] = true;
            } else {
                self.best = Some(self.cur.clone());
                self.parities = [false, false];
                self.parities[parity] = true;
            }
            return;
        }
        let d = self.dart_at[i];
        let m = self.mate[d as usize];
        let known = self.dart_label[m as usize];
        let value = if known != u8::MAX {
            known
        } else {
            3 * self.n_vertices_labeled as u8
        };
        if tied {
            let b = self.best.as_ref().unwrap()[i];
            if value > b {
                return;
            }
            if value < b {
                tied = false;
            }
        }
        self.cur[i] = value;
        if known != u8::MAX {
            self.step(i + 1, tied);
        } else {
            for flip in [false, true] {
                // an earlier branch may have replaced the best code
                let Some(t) = self.compare_prefix(i + 1) else {
                    continue;
                };
                self.label_vertex(m, flip);
                self.step(i + 1, t);
                self.unlabel_vertex(m, flip);
            }
        }
    }
}

/// Canonical form of a connected closed graph with at least one vertex.
pub fn canonical_connected(g: &ClosedGraph) -> Canon {
    let n_darts = g.mate.len();
    assert!(n_darts > 0 && n_darts <= 252, "graph size out of range");
    let mut s = Search {
        mate: &g.mate,
        n_darts,
        dart_label: vec![u8::MAX; n_darts],
        dart_at: vec![0; n_darts],
        vertex_seen: vec![false; n_darts / 3],
        n_vertices_labeled: 0,
        flips: 0,
        cur: vec![0; n_darts],
        best: None,
        parities: [false, false],
    };
    for start in 0..n_darts as u32 {
        for flip in [false, true] {
            s.label_vertex(start, flip);
            let tied = s.best.is_some();
            s.step(0, tied);
            s.unlabel_vertex(start, flip);
        }
    }
    let code = s.best.expect("nonempty search");
    let sign = match s.parities {
        [true, true] => None,
        [true, false] => Some(1),
        [false, true] => Some(-1),
        _ => unreachable!(),
    };
    debug_assert!(s.vertex_seen.iter().all(|&b| !b));
    Canon { code, sign }
}

/// Memoizing front end for [`canonical_connected`].
#[derive(Debug, Default)]
pub struct Canonicalizer {
    cache: HashMap<Vec<u32>, Canon>,
}

impl Canonicalizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn canon(&mut self, g: &ClosedGraph) -> Canon {
        if let Some(c) = self.cache.get(&g.mate) {
            return c.clone();
        }
        let c = canonical_connected(g);
        self.cache.insert(g.mate.clone(), c.clone());
        c
    }

    pub fn cached(&self) -> usize {
        self.cache.len()
    }
}
