//! Independent checks for the solver: a bounded search for identity proofs
//! and permutation representations that prove non-identity.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::diagram::Sign;
use crate::presentation::Presentation;
use crate::word::{Letter, Word};

/// Expansion budget used by [`finite_quotient_witness`].
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Identity,
    Unknown,
}

/// Breadth-first search from the free reduction of `w`, splicing symmetrized
/// relators anywhere and freely reducing. Words longer than `max_len` are
/// pruned; at most `max_steps` words are expanded.
pub fn bounded_identity_search(w: &Word, p: &Presentation, max_len: usize, max_steps: usize) -> SearchOutcome {
    let start = w.free_reduced();
    if start.is_empty() {
        return SearchOutcome::Identity;
    }
    let mut seen: HashSet<Word> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut steps = 0;
    while let Some(cur) = queue.pop_front() {
        if steps >= max_steps {
            break;
        }
        steps += 1;
        for pos in 0..=cur.len() {
            for r in p.symmetrized() {
                let mut letters = Vec::with_capacity(cur.len() + 4);
                letters.extend_from_slice(&cur.letters()[..pos]);
                letters.extend_from_slice(r.letters());
                letters.extend_from_slice(&cur.letters()[pos..]);
                let next = Word::from_letters(letters).free_reduced();
                if next.is_empty() {
                    return SearchOutcome::Identity;
                }
                if next.len() <= max_len && seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    SearchOutcome::Unknown
}

/// A permutation of `0..n`, acting on the right: `(a * b)(i) = b(a(i))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n as u8).collect())
    }

    pub fn from_images(images: Vec<u8>) -> Option<Permutation> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || std::mem::replace(&mut seen[i as usize], true) {
                return None;
            }
        }
        Some(Permutation(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` then `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation(inv)
    }

    /// All permutations of `0..n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..n as u8).collect();
        loop {
            out.push(Permutation(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                return out;
            };
            let j = (i..cur.len())
                .rev()
                .find(|&j| cur[j] > cur[i - 1])
                .expect("successor exists");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
    }

    /// One permutation per cycle type: consecutive blocks of the given sizes.
    pub fn cycle_type_representatives(n: usize) -> Vec<Permutation> {
        fn partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if n == 0 {
                out.push(cur.clone());
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                partitions(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut parts = Vec::new();
        partitions(n, n, &mut Vec::new(), &mut parts);
        parts
            .into_iter()
            .map(|blocks| {
                let mut images = Vec::with_capacity(n);
                let mut base = 0u8;
                for b in blocks {
                    let b = b as u8;
                    images.extend((0..b).map(|i| base + (i + 1) % b));
                    base += b;
                }
                Permutation(images)
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Image of `w` under an assignment indexed by generator.
pub fn image(w: &Word, assignment: &[Permutation]) -> Permutation {
    let n = assignment.first().map_or(0, Permutation::degree);
    w.letters().iter().fold(Permutation::identity(n), |acc, l| {
        acc.then(&letter_image(*l, assignment))
    })
}

fn letter_image(l: Letter, assignment: &[Permutation]) -> Permutation {
    let g = &assignment[l.gen.index()];
    match l.sign {
        Sign::Pos => g.clone(),
        Sign::Neg => g.inverse(),
    }
}

/// A representation in which every relator is trivial and `w` is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientWitness {
    pub degree: usize,
    pub assignment: Vec<Permutation>,
    pub image_of_word: Permutation,
}

impl QuotientWitness {
    /// Recheck the witness from scratch.
    pub fn is_valid(&self, w: &Word, p: &Presentation) -> bool {
        self.assignment.len() == p.generator_count()
            && p.base_relators()
                .iter()
                .all(|r| image(&r.word(), &self.assignment).is_identity())
            && image(w, &self.assignment) == self.image_of_word
            && !self.image_of_word.is_identity()
    }
}

/// Depth-first search over representations into S_2, …, S_max_degree.
pub fn finite_quotient_witness(w: &Word, p: &Presentation, max_degree: usize) -> Option<QuotientWitness> {
    finite_quotient_witness_with_budget(w, p, max_degree, DEFAULT_NODE_BUDGET)
}

pub fn finite_quotient_witness_with_budget(
    w: &Word,
    p: &Presentation,
    max_degree: usize,
    node_budget: usize,
) -> Option<QuotientWitness> {
    if w.free_reduced().is_empty() {
        return None;
    }
    for degree in 2..=max_degree {
        let mut found = None;
        let mut search = AssignmentSearch::new(p, degree, node_budget);
        search.run(&mut |a| {
            let img = image(w, a);
            if img.is_identity() {
                true
            } else {
                found = Some(QuotientWitness {
                    degree,
                    assignment: a.to_vec(),
                    image_of_word: img,
                });
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Up to `limit` representations into S_degree, one generator's image
/// restricted to cycle-type representatives (conjugation preserves every
/// question asked of them).
pub fn satisfying_assignments(p: &Presentation, degree: usize, limit: usize) -> Vec<Vec<Permutation>> {
    let mut out = Vec::new();
    let mut search = AssignmentSearch::new(p, degree, usize::MAX);
    search.run(&mut |a| {
        out.push(a.to_vec());
        out.len() < limit
    });
    out
}

struct AssignmentSearch<'a> {
    p: &'a Presentation,
    relators: Vec<[(usize, Sign); 4]>,
    by_gen: Vec<Vec<usize>>,
    all: Vec<Permutation>,
    reps: Vec<Permutation>,
    assignment: Vec<Option<Permutation>>,
    nodes: usize,
    budget: usize,
}

impl<'a> AssignmentSearch<'a> {
    fn new(p: &'a Presentation, degree: usize, budget: usize) -> Self {
        let relators: Vec<[(usize, Sign); 4]> = p
            .base_relators()
            .iter()
            .map(|r| r.letters().map(|l| (l.gen.index(), l.sign)))
            .collect();
        let mut by_gen = vec![Vec::new(); p.generator_count()];
        for (i, r) in relators.iter().enumerate() {
            for &(g, _) in r {
                if !by_gen[g].contains(&i) {
                    by_gen[g].push(i);
                }
            }
        }
        AssignmentSearch {
            p,
            relators,
            by_gen,
            all: Permutation::all(degree),
            reps: Permutation::cycle_type_representatives(degree),
            assignment: vec![None; p.generator_count()],
            nodes: 0,
            budget,
        }
    }

    /// Visit complete assignments until `visit` returns false or the budget
    /// runs out.
    fn run(&mut self, visit: &mut dyn FnMut(&[Permutation]) -> bool) {
        if self.p.generator_count() == 0 {
            return;
        }
        let reps = self.reps.clone();
        for g in reps {
            if !self.try_assign(0, g, visit) {
                return;
            }
        }
    }

    fn image_of(&self, g: usize, s: Sign) -> Option<Permutation> {
        self.assignment[g].as_ref().map(|x| match s {
            Sign::Pos => x.clone(),
            Sign::Neg => x.inverse(),
        })
    }

    /// Assign `perm` to `gen`, propagate forced values, recurse. Returns false
    /// to stop the whole search.
    fn try_assign(&mut self, gen: usize, perm: Permutation, visit: &mut dyn FnMut(&[Permutation]) -> bool) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            return false;
        }
        let mut trail = vec![gen];
        self.assignment[gen] = Some(perm);
        let ok = self.propagate(&mut trail);
        let keep_going = if ok { self.descend(visit) } else { true };
        for g in trail {
            self.assignment[g] = None;
        }
        keep_going
    }

    /// Check relators touching newly assigned generators and fill in any
    /// generator determined by the other three letters.
    fn propagate(&mut self, trail: &mut Vec<usize>) -> bool {
        let mut i = 0;
        while i < trail.len() {
            let g = trail[i];
            i += 1;
            for ri in self.by_gen[g].clone() {
                let r = self.relators[ri];
                let missing: Vec<usize> = (0..4).filter(|&j| self.assignment[r[j].0].is_none()).collect();
                match missing[..] {
                    [] => {
                        let prod = r
                            .iter()
                            .fold(Permutation::identity(self.all[0].degree()), |acc, &(g, s)| {
                                acc.then(&self.image_of(g, s).expect("assigned"))
                            });
                        if !prod.is_identity() {
                            return false;
                        }
                    }
                    [j] => {
                        let (mg, ms) = r[j];
                        if r.iter().filter(|x| x.0 == mg).count() > 1 {
                            continue;
                        }
                        // prefix · x · suffix = 1  =>  x = prefix^-1 · suffix^-1
                        let id = Permutation::identity(self.all[0].degree());
                        let prefix = r[..j].iter().fold(id.clone(), |acc, &(g, s)| {
                            acc.then(&self.image_of(g, s).expect("assigned"))
                        });
                        let suffix = r[j + 1..]
                            .iter()
                            .fold(id, |acc, &(g, s)| acc.then(&self.image_of(g, s).expect("assigned")));
                        let x = prefix.inverse().then(&suffix.inverse());
                        self.assignment[mg] = Some(match ms {
                            Sign::Pos => x,
                            Sign::Neg => x.inverse(),
                        });
                        trail.push(mg);
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn descend(&mut self, visit: &mut dyn FnMut(&[Permutation]) -> bool) -> bool {
        // most constrained unassigned generator next
        let next = (0..self.assignment.len())
            .filter(|&g| self.assignment[g].is_none())
            .max_by_key(|&g| {
                self.by_gen[g]
                    .iter()
                    .map(|&ri| {
                        self.relators[ri]
                            .iter()
                            .filter(|x| self.assignment[x.0].is_some())
                            .count()
                    })
                    .max()
                    .unwrap_or(0)
            });
        match next {
            None => {
                let full: Vec<Permutation> = self.assignment.iter().map(|x| x.clone().expect("complete")).collect();
                visit(&full)
            }
            Some(g) => {
                let all = self.all.clone();
                for perm in all {
                    if !self.try_assign(g, perm, visit) {
                        return false;
                    }
                }
                true
            }
        }
    }
}
