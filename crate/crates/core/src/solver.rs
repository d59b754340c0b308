//! Word problem for symmetrized presentations with length-4 relators.
//!
//! A chain is a ladder of `n` square cells glued along vertical edges
//! `v_0, …, v_n`. Cell `i` has boundary `v_{i-1} t_i v_i^-1 b_i^-1`, a
//! symmetrized relator. The top word `v_0 t_1 ⋯ t_n v_n^-1` equals the
//! bottom word `b_1 ⋯ b_n`, which is two letters shorter. Under C(4)-T(4) a
//! freely reduced word is geodesic iff it contains no chain, so repeated
//! replacement decides the word problem.

use crate::error::{Error, Result};
use crate::presentation::{Presentation, Relator};
use crate::word::{Letter, Word};

/// A chain subword found in a host word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMatch {
    /// Host position of `t_0`.
    pub start: usize,
    /// Number of cells.
    pub n: usize,
    pub relators_used: Vec<Relator>,
    /// `v_0, …, v_n`.
    pub verticals: Vec<Letter>,
    /// `b_1 ⋯ b_n`.
    pub replacement: Word,
}

impl ChainMatch {
    /// Host letters covered: `t_0 ⋯ t_{n+1}`.
    pub fn span(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.n + 2
    }

    /// The top word `t_0 ⋯ t_{n+1}` rebuilt from the cells.
    pub fn top(&self) -> Word {
        let mut w = Word::empty();
        w.push(self.verticals[0]);
        for r in &self.relators_used {
            w.push(r.letter(1));
        }
        w.push(self.verticals[self.n].inverse());
        w
    }

    /// `v_0 t_1 ⋯ t_n v_n^-1 b_n^-1 ⋯ b_1^-1`.
    pub fn strip_boundary(&self) -> Word {
        self.top().concat(&self.replacement.inverse())
    }

    /// `∏_{i=1..n} g_i r_i g_i^-1` with `g_i = b_1 ⋯ b_{i-1}`; freely equal to
    /// the strip boundary.
    pub fn boundary_as_relator_product(&self) -> Word {
        let mut out = Word::empty();
        let mut g = Word::empty();
        for (i, r) in self.relators_used.iter().enumerate() {
            out = out.concat(&g).concat(&r.word()).concat(&g.inverse());
            g.push(self.replacement[i]);
        }
        out
    }

    /// Check every structural claim of the match against `host` and `p`.
    pub fn verify(&self, host: &Word, p: &Presentation) -> std::result::Result<(), String> {
        let n = self.n;
        if n == 0 || self.relators_used.len() != n || self.verticals.len() != n + 1 || self.replacement.len() != n {
            return Err("inconsistent chain dimensions".into());
        }
        let span = self.span();
        if span.end > host.len() || host.letters()[span] != *self.top().letters() {
            return Err("top word does not match the host".into());
        }
        for (i, r) in self.relators_used.iter().enumerate() {
            if p.symmetrized().binary_search(r).is_err() {
                return Err(format!("cell {} is not a symmetrized relator", i + 1));
            }
            let expect = [
                self.verticals[i],
                r.letter(1),
                self.verticals[i + 1].inverse(),
                self.replacement[i].inverse(),
            ];
            if *r.letters() != expect {
                return Err(format!("cell {} boundary mismatch", i + 1));
            }
        }
        for i in 1..n {
            let (a, b) = (&self.relators_used[i - 1], &self.relators_used[i]);
            if b.letter(1).is_inverse_of(a.letter(1))
                && self.verticals[i + 1] == self.verticals[i - 1]
                && self.replacement[i].is_inverse_of(self.replacement[i - 1])
            {
                return Err(format!("cells {i} and {} mirror each other", i + 1));
            }
        }
        if self.boundary_as_relator_product().free_reduced() != self.strip_boundary().free_reduced() {
            return Err("strip boundary is not the product of its cells".into());
        }
        Ok(())
    }

    /// The host with the chain replaced by its bottom word.
    pub fn apply(&self, host: &Word) -> Word {
        let span = self.span();
        let mut letters = host.letters()[..span.start].to_vec();
        letters.extend_from_slice(self.replacement.letters());
        letters.extend_from_slice(&host.letters()[span.end..]);
        Word::from_letters(letters)
    }
}

pub fn free_reduce(w: &Word) -> Word {
    w.free_reduced()
}

pub fn parity_changes(w: &Word) -> usize {
    w.parity_changes()
}

#[derive(Clone, Copy)]
struct State {
    vertical: Letter,
    parent: usize,
    relator: usize,
}

/// Leftmost chain, shortest among those at the leftmost start.
///
/// From each start the feasible verticals are advanced one host letter at a
/// time; the scan accepts as soon as the host letter inverts a feasible
/// vertical.
pub fn find_chain(w: &Word, p: &Presentation) -> Option<ChainMatch> {
    let letters = w.letters();
    let sym = p.symmetrized();
    for start in 0..letters.len().saturating_sub(2) {
        let mut layers: Vec<Vec<State>> = vec![vec![State {
            vertical: letters[start],
            parent: usize::MAX,
            relator: usize::MAX,
        }]];
        for (j, &t) in letters.iter().enumerate().skip(start + 1) {
            let current = layers.last().expect("at least one layer");
            if layers.len() > 1 {
                if let Some(end) = current.iter().position(|s| s.vertical.is_inverse_of(t)) {
                    return Some(build_match(start, &layers, end, sym));
                }
            }
            let mut next: Vec<State> = Vec::new();
            for (idx, s) in current.iter().enumerate() {
                for &r in p.starting_with_pair(s.vertical, t) {
                    let v = sym[r].letter(2).inverse();
                    if next.iter().all(|x| x.vertical != v) {
                        next.push(State {
                            vertical: v,
                            parent: idx,
                            relator: r,
                        });
                    }
                }
            }
            if next.is_empty() || j + 1 == letters.len() {
                break;
            }
            layers.push(next);
        }
    }
    None
}

fn build_match(start: usize, layers: &[Vec<State>], end: usize, sym: &[Relator]) -> ChainMatch {
    let n = layers.len() - 1;
    let mut verticals = vec![layers[n][end].vertical];
    let mut relators_used = Vec::with_capacity(n);
    let mut idx = end;
    for layer in layers[1..].iter().rev() {
        let s = layer[idx];
        relators_used.push(sym[s.relator]);
        idx = s.parent;
        verticals.push(sym[s.relator].letter(0));
    }
    verticals.reverse();
    relators_used.reverse();
    let replacement = relators_used.iter().map(|r| r.letter(3).inverse()).collect();
    ChainMatch {
        start,
        n,
        relators_used,
        verticals,
        replacement,
    }
}

/// Freely reduced and chain-free.
pub fn is_geodesic(w: &Word, p: &Presentation) -> bool {
    w.is_freely_reduced() && find_chain(w, p).is_none()
}

pub fn geodesic_reduce(w: &Word, p: &Presentation) -> Word {
    geodesic_reduce_traced(w, p).0
}

/// Geodesic reduction, also returning each chain replaced (in the word as it
/// stood at that step).
pub fn geodesic_reduce_traced(w: &Word, p: &Presentation) -> (Word, Vec<ChainMatch>) {
    let mut cur = w.free_reduced();
    let mut steps = Vec::new();
    while let Some(m) = find_chain(&cur, p) {
        let next = m.apply(&cur).free_reduced();
        steps.push(m);
        cur = next;
    }
    (cur, steps)
}

fn require_small_cancellation(p: &Presentation) -> Result<()> {
    let sc = p.small_cancellation();
    if sc.holds() {
        Ok(())
    } else {
        Err(Error::PreconditionViolated(format!(
            "the presentation is not C(4)-T(4) (C4={}, T4={})",
            sc.c4, sc.t4
        )))
    }
}

/// Decide whether `w` is trivial. Requires a C(4)-T(4) presentation.
pub fn is_identity(w: &Word, p: &Presentation) -> Result<bool> {
    require_small_cancellation(p)?;
    Ok(geodesic_reduce(w, p).is_empty())
}

pub fn words_equal(u: &Word, v: &Word, p: &Presentation) -> Result<bool> {
    is_identity(&u.concat(&v.inverse()), p)
}
