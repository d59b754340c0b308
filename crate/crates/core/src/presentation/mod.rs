//! The augmented Dehn presentation of a diagram and its small-cancellation
//! structure.
//!
//! Generators are faces. At each crossing the relator reads the corner faces
//! clockwise from the corner between the incoming under-edge and the over-edge
//! on its left, with exponents `+ - + -`. The symmetrized set closes the base
//! relators under rotation and inversion.

mod dump;
mod smith;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagram::{Diagram, Sign};
use crate::error::{Error, Result};
use crate::faces::{Colouring, FaceId, FaceSet, Parity};
use crate::word::{parse_signed_ids, Letter, Word};

pub use smith::smith_invariants;

/// A length-4 cyclic relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relator {
    letters: [Letter; 4],
}

impl Relator {
    pub fn new(letters: [Letter; 4]) -> Relator {
        Relator { letters }
    }

    pub fn letters(&self) -> &[Letter; 4] {
        &self.letters
    }

    pub fn letter(&self, i: usize) -> Letter {
        self.letters[i % 4]
    }

    pub fn word(&self) -> Word {
        Word::from_letters(self.letters.to_vec())
    }

    pub fn rotated(&self, i: usize) -> Relator {
        let mut letters = self.letters;
        letters.rotate_left(i % 4);
        Relator { letters }
    }

    pub fn inverse(&self) -> Relator {
        let [a, b, c, d] = self.letters;
        Relator {
            letters: [d.inverse(), c.inverse(), b.inverse(), a.inverse()],
        }
    }

    /// Exponents alternate around the cycle.
    pub fn alternates_sign(&self) -> bool {
        (0..4).all(|i| self.letter(i).sign != self.letter(i + 1).sign)
    }

    /// Parities alternate around the cycle.
    pub fn alternates_parity(&self) -> bool {
        (0..4).all(|i| self.letter(i).parity != self.letter(i + 1).parity)
    }

    /// No adjacent inverse pair, including the wrap-around pair.
    pub fn is_cyclically_reduced(&self) -> bool {
        (0..4).all(|i| !self.letter(i).is_inverse_of(self.letter(i + 1)))
    }

    /// All eight rotations of the relator and its inverse.
    pub fn variants(&self) -> impl Iterator<Item = Relator> + '_ {
        let inv = self.inverse();
        (0..4).flat_map(move |i| [self.rotated(i), inv.rotated(i)])
    }
}

impl fmt::Display for Relator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.letters;
        write!(f, "{a} {b} {c} {d}")
    }
}

/// A maximal common prefix of two distinct symmetrized relators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Piece {
    pub word: Word,
    /// Number of symmetrized relators starting with `word`.
    pub occurrences: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmallCancellation {
    pub pieces_max_len: usize,
    #[serde(rename = "C4")]
    pub c4: bool,
    #[serde(rename = "T4")]
    pub t4: bool,
}

impl SmallCancellation {
    pub fn holds(&self) -> bool {
        self.c4 && self.t4
    }
}

/// Invariants of the abelianized group `Z^free_rank ⊕ ⊕ Z/t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Abelianization {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    parities: Vec<Parity>,
    base: Vec<Relator>,
    symmetrized: Vec<Relator>,
    by_pair: HashMap<(Letter, Letter), Vec<usize>>,
    by_first: HashMap<Letter, Vec<usize>>,
    small_cancellation: OnceLock<SmallCancellation>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.parities == other.parities && self.base == other.base
    }
}

impl Eq for Presentation {}

impl Presentation {
    /// One generator per face, one relator per crossing. The diagram must be
    /// connected, reduced and have at least one crossing.
    pub fn from_diagram(d: &Diagram, f: &FaceSet, col: &Colouring) -> Result<Presentation> {
        if d.crossing_count() == 0 || !d.is_connected() {
            return Err(Error::PreconditionViolated(
                "the presentation needs a connected diagram with crossings".into(),
            ));
        }
        if !d.is_reduced() {
            return Err(Error::PreconditionViolated(
                "the presentation needs a reduced diagram".into(),
            ));
        }
        let parities: Vec<Parity> = f.ids().map(|x| col.colour(x)).collect();
        let letter = |x: FaceId, sign| Letter::new(x, sign, col.colour(x));
        let base = (0..d.crossing_count())
            .map(|k| {
                Relator::new([
                    letter(f.corner(k, 3), Sign::Pos),
                    letter(f.corner(k, 2), Sign::Neg),
                    letter(f.corner(k, 1), Sign::Pos),
                    letter(f.corner(k, 0), Sign::Neg),
                ])
            })
            .collect();
        Presentation::from_relators(parities, base)
    }

    /// Trace faces and colour them, then build the presentation.
    pub fn of_diagram(d: &Diagram) -> Result<Presentation> {
        let f = FaceSet::trace(d)?;
        let col = Colouring::checkerboard(&f);
        Presentation::from_diagram(d, &f, &col)
    }

    /// A presentation on generators `1..=parities.len()` from arbitrary
    /// length-4 relators. Parity alternation is not required here.
    pub fn from_relators(parities: Vec<Parity>, base: Vec<Relator>) -> Result<Presentation> {
        for r in &base {
            for l in r.letters() {
                let Some(&p) = parities.get((l.gen.0 as usize).wrapping_sub(1)) else {
                    return Err(Error::Validation(format!(
                        "relator {r} uses unknown generator {}",
                        l.gen
                    )));
                };
                if p != l.parity {
                    return Err(Error::Validation(format!(
                        "relator {r}: letter {l} has the wrong parity"
                    )));
                }
            }
            if !r.is_cyclically_reduced() {
                return Err(Error::Validation(format!("relator {r} is not cyclically reduced")));
            }
        }
        let symmetrized: Vec<Relator> = base
            .iter()
            .flat_map(|r| r.variants())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut by_pair: HashMap<(Letter, Letter), Vec<usize>> = HashMap::new();
        let mut by_first: HashMap<Letter, Vec<usize>> = HashMap::new();
        for (i, r) in symmetrized.iter().enumerate() {
            by_pair.entry((r.letter(0), r.letter(1))).or_default().push(i);
            by_first.entry(r.letter(0)).or_default().push(i);
        }
        Ok(Presentation {
            parities,
            base,
            symmetrized,
            by_pair,
            by_first,
            small_cancellation: OnceLock::new(),
        })
    }

    /// Like [`Presentation::from_relators`], from signed generator ids.
    pub fn from_signed(parities: Vec<Parity>, relators: &[[i64; 4]]) -> Result<Presentation> {
        let mut base = Vec::with_capacity(relators.len());
        for r in relators {
            let mut letters = [Letter::pos(FaceId(1), Parity::White); 4];
            for (slot, &x) in letters.iter_mut().zip(r) {
                *slot = letter_in(&parities, x)?;
            }
            base.push(Relator::new(letters));
        }
        Presentation::from_relators(parities, base)
    }

    pub fn generator_count(&self) -> usize {
        self.parities.len()
    }

    pub fn generators(&self) -> impl Iterator<Item = (FaceId, Parity)> + '_ {
        self.parities
            .iter()
            .enumerate()
            .map(|(i, &p)| (FaceId(i as u32 + 1), p))
    }

    pub fn parity(&self, g: FaceId) -> Parity {
        self.parities[g.index()]
    }

    pub fn base_relators(&self) -> &[Relator] {
        &self.base
    }

    pub fn symmetrized(&self) -> &[Relator] {
        &self.symmetrized
    }

    /// Indices of symmetrized relators beginning with `a b`.
    pub fn starting_with_pair(&self, a: Letter, b: Letter) -> &[usize] {
        self.by_pair.get(&(a, b)).map_or(&[], Vec::as_slice)
    }

    /// Indices of symmetrized relators beginning with `a`.
    pub fn starting_with(&self, a: Letter) -> &[usize] {
        self.by_first.get(&a).map_or(&[], Vec::as_slice)
    }

    /// The letter for a signed generator id.
    pub fn letter(&self, signed: i64) -> Result<Letter> {
        letter_in(&self.parities, signed)
    }

    /// Parse a word in the text format, attaching parities.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_signed_ids(text)?.into_iter().map(|x| self.letter(x)).collect()
    }

    /// Longest common prefix of `r` and every other symmetrized relator with
    /// the same first letter.
    fn max_piece_at(&self, r: &Relator) -> usize {
        self.starting_with(r.letter(0))
            .iter()
            .map(|&j| &self.symmetrized[j])
            .filter(|o| *o != r)
            .map(|o| (0..4).take_while(|&i| o.letter(i) == r.letter(i)).count())
            .max()
            .unwrap_or(0)
    }

    /// All maximal common prefixes of pairs of distinct symmetrized relators.
    pub fn compute_pieces(&self) -> Vec<Piece> {
        let mut found: BTreeSet<Vec<Letter>> = BTreeSet::new();
        for (i, r) in self.symmetrized.iter().enumerate() {
            for &j in self.starting_with(r.letter(0)) {
                if j <= i {
                    continue;
                }
                let o = &self.symmetrized[j];
                let n = (0..4).take_while(|&t| o.letter(t) == r.letter(t)).count();
                found.insert(r.letters[..n].to_vec());
            }
        }
        found
            .into_iter()
            .map(|letters| {
                let occurrences = self
                    .symmetrized
                    .iter()
                    .filter(|r| r.letters.starts_with(&letters))
                    .count();
                Piece {
                    word: Word::from_letters(letters),
                    occurrences,
                }
            })
            .collect()
    }

    /// Length of the longest piece (0 when there are none).
    pub fn max_piece_len(&self) -> usize {
        self.symmetrized.iter().map(|r| self.max_piece_at(r)).max().unwrap_or(0)
    }

    /// Fewest pieces whose concatenation spells the symmetrized relator `r`.
    /// A subword starting at `i` is a piece iff it is a proper common prefix
    /// of the rotation of `r` at `i` and another symmetrized relator.
    fn min_piece_cover(&self, r: &Relator) -> usize {
        let reach: Vec<usize> = (0..4).map(|i| self.max_piece_at(&r.rotated(i))).collect();
        let mut best = [usize::MAX; 5];
        best[0] = 0;
        for i in 0..4 {
            if best[i] == usize::MAX {
                continue;
            }
            for j in i + 1..=(i + reach[i]).min(4) {
                best[j] = best[j].min(best[i] + 1);
            }
        }
        best[4]
    }

    /// C(k): no symmetrized relator is a product of fewer than `k` pieces.
    pub fn check_c(&self, k: usize) -> bool {
        self.symmetrized.iter().all(|r| self.min_piece_cover(r) >= k)
    }

    /// T(4): for every triple `r1, r2, r3` with no consecutive pair mutually
    /// inverse, some product `r1 r2`, `r2 r3`, `r3 r1` is reduced at the
    /// junction.
    pub fn check_t(&self, q: usize) -> Result<bool> {
        if q != 4 {
            return Err(Error::UnsupportedParameter(format!("T({q}); only T(4) is supported")));
        }
        Ok(self.t4_violation().is_none())
    }

    /// A triple of symmetrized relator indices violating T(4).
    pub fn t4_violation(&self) -> Option<[usize; 3]> {
        let rel = &self.symmetrized;
        let cancels = |x: &Relator, y: &Relator| x.letter(3).is_inverse_of(y.letter(0));
        for (i, r1) in rel.iter().enumerate() {
            let inv1 = r1.inverse();
            for &j in self.starting_with(r1.letter(3).inverse()) {
                let r2 = &rel[j];
                if *r2 == inv1 {
                    continue;
                }
                let inv2 = r2.inverse();
                for &k in self.starting_with(r2.letter(3).inverse()) {
                    let r3 = &rel[k];
                    if *r3 != inv2 && r3.inverse() != *r1 && cancels(r3, r1) {
                        return Some([i, j, k]);
                    }
                }
            }
        }
        None
    }

    /// Piece length, C(4) and T(4), computed once.
    pub fn small_cancellation(&self) -> SmallCancellation {
        *self.small_cancellation.get_or_init(|| SmallCancellation {
            pieces_max_len: self.max_piece_len(),
            c4: self.check_c(4),
            t4: self.t4_violation().is_none(),
        })
    }

    /// Rows are base relators, columns generators; entries are exponent sums.
    pub fn relation_matrix(&self) -> Vec<Vec<i64>> {
        self.base
            .iter()
            .map(|r| r.word().exponent_vector(self.parities.len()))
            .collect()
    }

    /// Abelianization via the Smith normal form of the relation matrix.
    pub fn abelianization(&self) -> Abelianization {
        let inv = smith_invariants(&self.relation_matrix());
        Abelianization {
            free_rank: self.parities.len() - inv.len(),
            torsion: inv.into_iter().filter(|&x| x > 1).collect(),
        }
    }

    /// Counts by parity and symmetrized size, for reports.
    pub fn stats(&self) -> PresentationStats {
        let white = self.parities.iter().filter(|&&p| p == Parity::White).count();
        PresentationStats {
            generators: self.parities.len(),
            white,
            black: self.parities.len() - white,
            relators: self.base.len(),
            symmetrized: self.symmetrized.len(),
        }
    }

    /// Generators per parity, in id order.
    pub fn generators_by_parity(&self) -> BTreeMap<Parity, Vec<FaceId>> {
        let mut m: BTreeMap<Parity, Vec<FaceId>> = BTreeMap::new();
        for (g, p) in self.generators() {
            m.entry(p).or_default().push(g);
        }
        m
    }
}

/// Relation matrix read straight from the corners of any connected diagram,
/// reduced or not. Rows are crossings, columns faces.
pub fn corner_relation_matrix(d: &Diagram, f: &FaceSet) -> Vec<Vec<i64>> {
    (0..d.crossing_count())
        .map(|k| {
            let mut row = vec![0; f.len()];
            for (q, e) in [(3, 1), (2, -1), (1, 1), (0, -1)] {
                row[f.corner(k, q).index()] += e;
            }
            row
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationStats {
    pub generators: usize,
    pub white: usize,
    pub black: usize,
    pub relators: usize,
    pub symmetrized: usize,
}

fn letter_in(parities: &[Parity], signed: i64) -> Result<Letter> {
    let id = signed.unsigned_abs();
    if id == 0 || id as usize > parities.len() {
        return Err(Error::Parse {
            pos: 0,
            msg: format!("unknown generator {signed}"),
        });
    }
    let sign = if signed < 0 { Sign::Neg } else { Sign::Pos };
    Ok(Letter::new(FaceId(id as u32), sign, parities[id as usize - 1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::faces::Colour::{Black as B, White as W};

    const TREFOIL: &str = "PD[X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]";
    const FIGURE_EIGHT: &str = "PD[X(4,2,5,1), X(8,6,1,5), X(6,3,7,4), X(2,7,3,8)]";

    fn of(text: &str) -> Presentation {
        Presentation::of_diagram(&parse_pd(text).unwrap()).unwrap()
    }

    /// Brute-force oracle: longest common prefix over all ordered pairs.
    fn brute_max_piece(p: &Presentation) -> usize {
        let s = p.symmetrized();
        let mut best = 0;
        for a in s {
            for b in s {
                if a != b {
                    best = best.max((0..4).take_while(|&i| a.letter(i) == b.letter(i)).count());
                }
            }
        }
        best
    }

    /// Brute-force T(4): every ordered triple.
    fn brute_t4(p: &Presentation) -> bool {
        let s = p.symmetrized();
        let cancel = |x: &Relator, y: &Relator| x.letter(3).is_inverse_of(y.letter(0));
        for a in s {
            for b in s {
                for c in s {
                    if *b == a.inverse() || *c == b.inverse() || *a == c.inverse() {
                        continue;
                    }
                    if cancel(a, b) && cancel(b, c) && cancel(c, a) {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[test]
    fn trefoil_counts() {
        let p = of(TREFOIL);
        assert_eq!(p.generator_count(), 5);
        assert_eq!(p.base_relators().len(), 3);
        assert_eq!(p.symmetrized().len(), 24);
        for r in p.symmetrized() {
            assert!(r.alternates_parity() && r.alternates_sign(), "{r}");
        }
    }

    #[test]
    fn figure_eight_counts() {
        let p = of(FIGURE_EIGHT);
        assert_eq!(p.generator_count(), 6);
        assert_eq!(p.base_relators().len(), 4);
        assert_eq!(p.symmetrized().len(), 32);
    }

    #[test]
    fn pieces_have_length_one() {
        for text in [TREFOIL, FIGURE_EIGHT] {
            let p = of(text);
            assert_eq!(brute_max_piece(&p), 1);
            assert_eq!(p.max_piece_len(), 1);
            assert!(p.compute_pieces().iter().all(|x| x.word.len() == 1));
            assert!(p.check_c(4));
            assert!(!p.check_c(5));
            assert!(p.check_t(4).unwrap());
            assert!(brute_t4(&p));
            let sc = p.small_cancellation();
            assert!(sc.holds());
            assert_eq!(sc.pieces_max_len, 1);
        }
    }

    #[test]
    fn t_parameter_other_than_four_is_unsupported() {
        let p = of(TREFOIL);
        assert!(matches!(p.check_t(3), Err(Error::UnsupportedParameter(_))));
    }

    #[test]
    fn single_relator_pieces() {
        // b1 w1^-1 b2 w2^-1 with four distinct generators
        let p = Presentation::from_signed(vec![B, W, B, W], &[[1, -2, 3, -4]]).unwrap();
        assert_eq!(p.symmetrized().len(), 8);
        // the only pieces come from a relator and a variant of itself
        assert_eq!(brute_max_piece(&p), p.max_piece_len());
        assert!(p.check_c(4));
        let twice = Presentation::from_signed(vec![B, W, B, W], &[[1, -2, 3, -4], [3, -4, 1, -2]]).unwrap();
        assert_eq!(twice.symmetrized(), p.symmetrized());
        assert_eq!(twice.compute_pieces(), p.compute_pieces());
    }

    #[test]
    fn non_alternating_parities_break_t4() {
        let parities = vec![W; 9];
        let p = Presentation::from_signed(parities, &[[1, -2, 3, -4], [4, -5, 6, -7], [7, -8, 9, -1]]).unwrap();
        assert!(!p.check_t(4).unwrap());
        assert!(!brute_t4(&p));
    }

    #[test]
    fn rejects_bad_relators() {
        assert!(Presentation::from_signed(vec![W, B], &[[1, -2, 3, -1]]).is_err());
        assert!(Presentation::from_signed(vec![W, B], &[[1, -1, 2, -2]]).is_err());
        assert!(Presentation::from_signed(vec![W, W], &[[1, -2, 1, -2]]).is_ok());
    }

    #[test]
    fn abelianization_rank() {
        assert_eq!(of(TREFOIL).abelianization().free_rank, 2);
        assert_eq!(of(FIGURE_EIGHT).abelianization().free_rank, 2);
        let hopf = of("PD[X(4,1,3,2), X(2,3,1,4)]");
        assert_eq!(
            hopf.abelianization(),
            Abelianization {
                free_rank: 3,
                torsion: vec![]
            }
        );
        let d = parse_pd(TREFOIL).unwrap();
        let f = FaceSet::trace(&d).unwrap();
        assert_eq!(corner_relation_matrix(&d, &f), of(TREFOIL).relation_matrix());
    }

    #[test]
    fn requires_reduced_connected_input() {
        for text in ["PD[X(2,2,1,1)]", "PD[O]", "PD[O, X(1,4,2,5), X(3,6,4,1), X(5,2,6,3)]"] {
            let d = parse_pd(text).unwrap();
            let err = match FaceSet::trace(&d) {
                Ok(f) => Presentation::from_diagram(&d, &f, &Colouring::checkerboard(&f)).unwrap_err(),
                Err(e) => e,
            };
            assert!(
                matches!(err, Error::PreconditionViolated(_) | Error::NotConnected),
                "{text}"
            );
        }
    }

    #[test]
    fn word_parsing_attaches_parity() {
        let p = of(TREFOIL);
        let w = p.parse_word("3 -1 5 -2").unwrap();
        assert_eq!(w.to_string(), "3 -1 5 -2");
        for l in w.letters() {
            assert_eq!(l.parity, p.parity(l.gen));
        }
        assert!(p.parse_word("6").is_err());
    }
}
