//! Primeness and decomposition into prime factors.
//!
//! A simple closed curve meeting a reduced connected diagram in exactly two
//! points on different edges runs through two faces, crossing one edge into
//! the other face and a second edge back. So the diagram is prime exactly
//! when no two distinct faces share two or more distinct edges.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use super::{Diagram, EdgeId, Slot};
use crate::error::{Error, Result};

impl Diagram {
    /// Left and right face (dart-cycle index) of every crossing edge.
    fn edge_face_pairs(&self) -> Vec<(usize, usize)> {
        let (corners, _) = self.corner_cycles();
        (1..=self.edge_count() as EdgeId)
            .map(|e| {
                let (t, h) = (self.tail(e), self.head(e));
                (corners[t.crossing][t.pos], corners[h.crossing][h.pos])
            })
            .collect()
    }

    /// The first pair of edges `(e1, e2)` shared by two distinct faces.
    fn separating_pair(&self) -> Option<(EdgeId, EdgeId)> {
        let mut shared: BTreeMap<(usize, usize), Vec<EdgeId>> = BTreeMap::new();
        for (i, (l, r)) in self.edge_face_pairs().into_iter().enumerate() {
            shared.entry((l.min(r), l.max(r))).or_default().push(i as EdgeId + 1);
        }
        shared.values().find(|v| v.len() >= 2).map(|v| (v[0], v[1]))
    }

    /// Prime: connected, reduced, at least one crossing, and no face pair
    /// sharing two distinct edges.
    pub fn is_prime(&self) -> Result<bool> {
        if self.crossing_count() == 0 || !self.is_connected() {
            return Err(Error::PreconditionViolated(
                "primeness needs a connected diagram with crossings".into(),
            ));
        }
        if !self.is_reduced() {
            return Err(Error::PreconditionViolated("primeness needs a reduced diagram".into()));
        }
        Ok(self.separating_pair().is_none())
    }

    /// Split into connected pieces and then along two-point curves until each
    /// factor is prime or a single circle. The input is reduced first.
    pub fn split_factors(&self) -> Vec<Diagram> {
        let mut out = Vec::new();
        for part in self.reduce().connected_pieces() {
            if part.crossing_count() == 0 {
                out.push(part);
            } else {
                part.split_prime_into(&mut out);
            }
        }
        out
    }

    /// The connected pieces: each group of crossings joined by edges, then
    /// one diagram per free circle.
    pub fn connected_pieces(&self) -> Vec<Diagram> {
        let mut out: Vec<Diagram> = self.crossing_groups().iter().map(|g| self.restrict(g, &[])).collect();
        out.extend((0..self.circle_count()).map(|_| Diagram::circles(1)));
        out
    }

    fn split_prime_into(&self, out: &mut Vec<Diagram>) {
        let Some((e1, e2)) = self.separating_pair() else {
            out.push(self.clone());
            return;
        };
        // crossings on either side once e1 and e2 are cut
        let n = self.crossing_count();
        let p_start = self.tail(e1).crossing;
        let mut in_p = vec![false; n];
        in_p[p_start] = true;
        let mut queue = VecDeque::from([p_start]);
        while let Some(k) = queue.pop_front() {
            for pos in 0..4 {
                let s = Slot::new(k, pos);
                let e = self.edge_at(s);
                if e == e1 || e == e2 {
                    continue;
                }
                let o = self.across(s).crossing;
                if !in_p[o] {
                    in_p[o] = true;
                    queue.push_back(o);
                }
            }
        }
        let p: Vec<usize> = (0..n).filter(|&k| in_p[k]).collect();
        let q: Vec<usize> = (0..n).filter(|&k| !in_p[k]).collect();
        debug_assert!(!q.is_empty() && in_p[self.head(e2).crossing]);

        // P keeps e1's tail and closes it up at e2's head; Q the other way.
        let fp = self.restrict(&p, &[(self.head(e2), e1)]);
        let fq = self.restrict(&q, &[(self.head(e1), e2)]);
        fp.split_prime_into(out);
        fq.split_prime_into(out);
    }

    /// The sub-diagram on `crossings`, with the given slots relabelled.
    fn restrict(&self, crossings: &[usize], relabel: &[(Slot, EdgeId)]) -> Diagram {
        let keep: BTreeSet<usize> = crossings.iter().copied().collect();
        let mut tuples: Vec<[EdgeId; 4]> = Vec::new();
        for &k in &keep {
            let mut t = self.crossings[k].edges;
            for &(s, e) in relabel {
                if s.crossing == k {
                    t[s.pos] = e;
                }
            }
            tuples.push(t);
        }
        Diagram::new(&tuples, 0).expect("factor of a valid diagram is valid")
    }
}
