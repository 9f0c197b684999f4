//! Unitrivalent diagrams with vertex orientations, and gluing along legs.
//!
//! A trivalent vertex `v` owns darts `3v, 3v+1, 3v+2`; their order is the
//! cyclic orientation at `v`. Legs are univalent ends, kept in order.

use std::fmt;

/// What a dart or leg end is attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Dart(u32),
    Leg(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Diagram {
    dart_mate: Vec<End>,
    leg_mate: Vec<End>,
}

/// `v -> (v+1) mod 3` inside the vertex block of `d`.
#[inline]
pub fn rot(d: u32) -> u32 {
    3 * (d / 3) + (d % 3 + 1) % 3
}

impl Diagram {
    pub fn empty() -> Self {
        Diagram {
            dart_mate: Vec::new(),
            leg_mate: Vec::new(),
        }
    }

    /// Build from explicit attachments; checks that the pairing is an involution.
    pub fn from_parts(dart_mate: Vec<End>, leg_mate: Vec<End>) -> Self {
        assert!(dart_mate.len().is_multiple_of(3), "darts come in triples");
        let d = Diagram {
            dart_mate,
            leg_mate,
        };
        for (i, &m) in d.dart_mate.iter().enumerate() {
            assert_eq!(
                d.follow(m),
                End::Dart(i as u32),
                "dart {i} not paired consistently"
            );
        }
        for (i, &m) in d.leg_mate.iter().enumerate() {
            assert_eq!(
                d.follow(m),
                End::Leg(i as u32),
                "leg {i} not paired consistently"
            );
        }
        d
    }

    fn follow(&self, e: End) -> End {
        match e {
            End::Dart(d) => self.dart_mate[d as usize],
            End::Leg(l) => self.leg_mate[l as usize],
        }
    }

    /// The strut: one edge, two legs.
    pub fn strut() -> Self {
        Diagram {
            dart_mate: Vec::new(),
            leg_mate: vec![End::Leg(1), End::Leg(0)],
        }
    }

    /// The wheel with `k` spokes. Each rim vertex is oriented as
    /// (incoming rim edge, outgoing rim edge, spoke).
    pub fn wheel(k: u32) -> Self {
        assert!(k >= 1);
        let mut dart_mate = vec![End::Leg(0); 3 * k as usize];
        let mut leg_mate = Vec::with_capacity(k as usize);
        for i in 0..k {
            let next = (i + 1) % k;
            dart_mate[(3 * i + 1) as usize] = End::Dart(3 * next);
            dart_mate[(3 * next) as usize] = End::Dart(3 * i + 1);
            dart_mate[(3 * i + 2) as usize] = End::Leg(i);
            leg_mate.push(End::Dart(3 * i + 2));
        }
        Diagram::from_parts(dart_mate, leg_mate)
    }

    pub fn vertex_count(&self) -> usize {
        self.dart_mate.len() / 3
    }

    pub fn leg_count(&self) -> usize {
        self.leg_mate.len()
    }

    pub fn dart_mates(&self) -> &[End] {
        &self.dart_mate
    }

    pub fn leg_mates(&self) -> &[End] {
        &self.leg_mate
    }

    /// Disjoint union; legs of `self` come first.
    pub fn disjoint_union(&self, other: &Diagram) -> Diagram {
        let dv = self.dart_mate.len() as u32;
        let lv = self.leg_mate.len() as u32;
        let shift = |e: End| match e {
            End::Dart(d) => End::Dart(d + dv),
            End::Leg(l) => End::Leg(l + lv),
        };
        let mut dart_mate = self.dart_mate.clone();
        dart_mate.extend(other.dart_mate.iter().map(|&e| shift(e)));
        let mut leg_mate = self.leg_mate.clone();
        leg_mate.extend(other.leg_mate.iter().map(|&e| shift(e)));
        Diagram {
            dart_mate,
            leg_mate,
        }
    }

    pub fn power(&self, k: u32) -> Diagram {
        (0..k).fold(Diagram::empty(), |acc, _| acc.disjoint_union(self))
    }

    /// Glue leg `i` of `self` to leg `perm[i]` of `other`. The darts of
    /// `other` are renumbered after those of `self`.
    pub fn glue_with(&self, other: &Diagram, perm: &[usize]) -> ClosedGraph {
        assert_eq!(perm.len(), self.leg_count());
        assert_eq!(perm.len(), other.leg_count());
        let n = self.leg_count();
        let pairs: Vec<(usize, usize)> =
            perm.iter().enumerate().map(|(i, &p)| (i, n + p)).collect();
        self.disjoint_union(other).close_legs(&pairs)
    }

    /// Join legs in pairs, as if each pair were glued to the two ends of a strut.
    pub fn close_legs(&self, pairs: &[(usize, usize)]) -> ClosedGraph {
        let nl = self.leg_count();
        let mut partner = vec![usize::MAX; nl];
        for &(a, b) in pairs {
            assert!(
                a != b && partner[a] == usize::MAX && partner[b] == usize::MAX,
                "legs paired twice"
            );
            partner[a] = b;
            partner[b] = a;
        }
        assert!(
            partner.iter().all(|&p| p != usize::MAX),
            "every leg must be paired"
        );
        // from leg `l`, cross its pairing and follow internal struts to a dart
        let resolve = |start: usize, visited: &mut [bool]| -> Option<u32> {
            let mut l = start;
            loop {
                visited[l] = true;
                let p = partner[l];
                visited[p] = true;
                match self.leg_mate[p] {
                    End::Dart(d) => return Some(d),
                    End::Leg(q) if q as usize == start => return None,
                    End::Leg(q) => l = q as usize,
                }
            }
        };
        let mut visited = vec![false; nl];
        let mut mate = vec![u32::MAX; self.dart_mate.len()];
        for (i, &e) in self.dart_mate.iter().enumerate() {
            mate[i] = match e {
                End::Dart(d) => d,
                End::Leg(l) => {
                    resolve(l as usize, &mut visited).expect("chain from a dart ends at a dart")
                }
            };
        }
        let mut circles = 0;
        for l in 0..nl {
            if !visited[l] {
                let closed = resolve(l, &mut visited).is_none();
                debug_assert!(closed);
                circles += 1;
            }
        }
        ClosedGraph { mate, circles }
    }

    /// The necklace with `k` beads: `k` copies of the 2-wheel joined in a cycle.
    pub fn necklace(k: u32) -> ClosedGraph {
        let beads = Diagram::wheel(2).power(k);
        let pairs: Vec<(usize, usize)> = (0..k as usize)
            .map(|i| (2 * i + 1, 2 * ((i + 1) % k as usize)))
            .collect();
        beads.close_legs(&pairs)
    }
}

/// A trivalent graph without legs; `circles` counts vertexless loops.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClosedGraph {
    pub mate: Vec<u32>,
    pub circles: u32,
}

impl ClosedGraph {
    pub fn new(mate: Vec<u32>) -> Self {
        assert!(mate.len().is_multiple_of(3));
        for (i, &m) in mate.iter().enumerate() {
            assert_eq!(mate[m as usize] as usize, i, "mate is not an involution");
            assert_ne!(m as usize, i, "dart paired with itself");
        }
        ClosedGraph { mate, circles: 0 }
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len() / 3
    }

    /// Vertex sets of the connected components, each sorted.
    pub fn components(&self) -> Vec<Vec<u32>> {
        let n = self.vertex_count();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut verts = Vec::new();
            while let Some(v) = stack.pop() {
                verts.push(v as u32);
                for k in 0..3 {
                    let w = self.mate[3 * v + k] as usize / 3;
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            verts.sort();
            out.push(verts);
        }
        out
    }

    /// The induced subgraph on a union of components, renumbered.
    pub fn restrict(&self, verts: &[u32]) -> ClosedGraph {
        let mut index = vec![u32::MAX; self.vertex_count()];
        for (i, &v) in verts.iter().enumerate() {
            index[v as usize] = i as u32;
        }
        let mut mate = Vec::with_capacity(3 * verts.len());
        for &v in verts {
            for k in 0..3 {
                let m = self.mate[3 * v as usize + k];
                mate.push(3 * index[m as usize / 3] + m % 3);
            }
        }
        ClosedGraph { mate, circles: 0 }
    }

    /// Reverse the cyclic orientation at `v` (swap its last two darts).
    pub fn flipped(&self, v: u32) -> ClosedGraph {
        let mut g = self.clone();
        let (a, b) = (3 * v + 1, 3 * v + 2);
        let (ma, mb) = (g.mate[a as usize], g.mate[b as usize]);
        if ma == b {
            return g; // loop: swapping its ends changes nothing
        }
        g.mate[a as usize] = mb;
        g.mate[b as usize] = ma;
        g.mate[mb as usize] = a;
        g.mate[ma as usize] = b;
        g
    }
}

impl fmt::Display for ClosedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut edges = Vec::new();
        for (d, &m) in self.mate.iter().enumerate() {
            if (d as u32) < m {
                edges.push(format!("{}-{}", d / 3, m / 3));
            }
        }
        write!(f, "[{}]", edges.join(" "))?;
        if self.circles > 0 {
            write!(f, " + {} circle(s)", self.circles)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wheel_shape() {
        let w = Diagram::wheel(4);
        assert_eq!(w.vertex_count(), 4);
        assert_eq!(w.leg_count(), 4);
        let w2 = Diagram::wheel(2).power(2);
        assert_eq!(w2.leg_count(), 4);
    }

    #[test]
    fn strut_gluing() {
        // <w2, l>: the two spokes are joined into one edge -> a theta graph
        let g = Diagram::wheel(2).glue_with(&Diagram::strut(), &[0, 1]);
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.components().len(), 1);
        assert_eq!(g.circles, 0);
        // <l, l> is a single circle
        let c = Diagram::strut().glue_with(&Diagram::strut(), &[1, 0]);
        assert_eq!(c.vertex_count(), 0);
        assert_eq!(c.circles, 1);
        let c2 = Diagram::strut()
            .power(2)
            .glue_with(&Diagram::strut().power(2), &[0, 1, 2, 3]);
        assert_eq!(c2.circles, 2);
    }

    #[test]
    fn necklaces() {
        let t = Diagram::necklace(1);
        assert_eq!(t.vertex_count(), 2);
        assert_eq!(t.mate.iter().filter(|&&m| m / 3 == 1).count(), 3);
        let n4 = Diagram::necklace(4);
        assert_eq!(n4.vertex_count(), 8);
        assert_eq!(n4.components().len(), 1);
    }

    #[test]
    fn flip_is_involution() {
        let g = Diagram::wheel(3).glue_with(&Diagram::wheel(3), &[0, 1, 2]);
        for v in 0..g.vertex_count() as u32 {
            assert_eq!(g.flipped(v).flipped(v), g);
        }
    }
}
