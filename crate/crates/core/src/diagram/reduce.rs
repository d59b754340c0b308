//! Nugatory crossings and their removal.

use std::collections::{BTreeSet, VecDeque};

use super::{Diagram, EdgeId, Sign, Slot};

impl Diagram {
    /// First corner pair `(k, q)` such that the same face meets crossing `k`
    /// at corners `q` and `q + 2`.
    pub fn nugatory_crossing(&self) -> Option<(usize, usize)> {
        let (corners, _) = self.corner_cycles();
        corners
            .iter()
            .enumerate()
            .find_map(|(k, f)| (0..2).find(|&q| f[q] == f[q + 2]).map(|q| (k, q)))
    }

    /// True iff four distinct faces meet at every crossing.
    pub fn is_reduced(&self) -> bool {
        let (corners, _) = self.corner_cycles();
        corners.iter().all(|f| {
            let set: BTreeSet<usize> = f.iter().copied().collect();
            set.len() == 4
        })
    }

    /// Untwist nugatory crossings, lowest index first, until none remain.
    pub fn reduce(&self) -> Diagram {
        let mut d = self.clone();
        while let Some((k, q)) = d.nugatory_crossing() {
            d = d.untwist(k, q);
        }
        d
    }

    /// Crossings reachable from the far ends of the edges at `slots`, never
    /// passing through crossing `cut`.
    fn side(&self, cut: usize, slots: [usize; 2]) -> BTreeSet<usize> {
        let mut found = BTreeSet::new();
        let mut queue = VecDeque::new();
        for p in slots {
            let o = self.across(Slot::new(cut, p)).crossing;
            if o != cut && found.insert(o) {
                queue.push_back(o);
            }
        }
        while let Some(k) = queue.pop_front() {
            for p in 0..4 {
                let o = self.across(Slot::new(k, p)).crossing;
                if o != cut && found.insert(o) {
                    queue.push_back(o);
                }
            }
        }
        found
    }

    /// Remove nugatory crossing `k` (same face at corners `q`, `q + 2`) by
    /// turning the smaller of its two sides over.
    fn untwist(&self, k: usize, q: usize) -> Diagram {
        let side_a = self.side(k, [q + 1, (q + 2) % 4]);
        let side_b = self.side(k, [(q + 3) % 4, q]);
        debug_assert!(side_a.is_disjoint(&side_b));
        let flip = if side_b.len() < side_a.len() { side_b } else { side_a };

        let mut tuples = self.tuples();
        for &j in &flip {
            // A half-turn about an axis in the plane reflects the rotation
            // order and exchanges over with under.
            let [a, b, c, d] = tuples[j];
            tuples[j] = match self.crossings[j].sign {
                Sign::Neg => [b, a, d, c],
                Sign::Pos => [d, c, b, a],
            };
        }

        let e = self.crossings[k].edges;
        let mut rep: Vec<EdgeId> = (0..=self.edge_count() as EdgeId).collect();
        fn find(rep: &mut [EdgeId], x: EdgeId) -> EdgeId {
            let mut x = x;
            while rep[x as usize] != x {
                rep[x as usize] = rep[rep[x as usize] as usize];
                x = rep[x as usize];
            }
            x
        }
        for (a, b) in [(e[q], e[(q + 2) % 4]), (e[(q + 1) % 4], e[(q + 3) % 4])] {
            let (ra, rb) = (find(&mut rep, a), find(&mut rep, b));
            rep[rb as usize] = ra;
        }
        tuples.remove(k);
        for t in tuples.iter_mut() {
            for x in t.iter_mut() {
                *x = find(&mut rep, *x);
            }
        }
        let remaining: BTreeSet<EdgeId> = tuples.iter().flatten().copied().collect();
        let merged: BTreeSet<EdgeId> = e.iter().map(|&x| find(&mut rep, x)).collect();
        let new_circles = merged.iter().filter(|r| !remaining.contains(r)).count();

        Diagram::new(&tuples, self.circles + new_circles).expect("untwisting preserves validity")
    }
}
