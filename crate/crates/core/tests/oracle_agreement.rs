mod common;

use altlink_core::oracle::{bounded_identity_search, image, satisfying_assignments, SearchOutcome};
use altlink_core::{is_geodesic, Letter, Presentation, Word};
use common::fixture;

fn words_up_to(p: &Presentation, max: usize) -> Vec<Vec<Word>> {
    let alphabet: Vec<Letter> = (1..=p.generator_count() as i64)
        .flat_map(|g| [p.letter(g).unwrap(), p.letter(-g).unwrap()])
        .collect();
    let mut layers = vec![vec![Word::empty()]];
    for len in 1..=max {
        let next = layers[len - 1]
            .iter()
            .flat_map(|w| {
                alphabet
                    .iter()
                    .filter(move |&&l| w.letters().last().is_none_or(|x| !x.is_inverse_of(l)))
                    .map(move |&l| {
                        let mut v = w.clone();
                        v.push(l);
                        v
                    })
            })
            .collect();
        layers.push(next);
    }
    layers
}

/// No word the solver calls geodesic is proven equal to a shorter word,
/// either by a finite image or by bounded tiling search.
fn geodesics_have_no_shorter_equal(name: &str, max: usize) -> (usize, usize) {
    let p = Presentation::of_diagram(&fixture(name)).unwrap();
    let reps: Vec<_> = [3, 4]
        .iter()
        .flat_map(|&n| satisfying_assignments(&p, n, 200))
        .collect();
    let layers = words_up_to(&p, max);
    let (mut pairs, mut searched) = (0, 0);
    for len in 2..=max {
        for w in layers[len].iter().filter(|w| is_geodesic(w, &p)) {
            let wi: Vec<_> = reps.iter().map(|a| image(w, a)).collect();
            for shorter in (len % 2..len).step_by(2) {
                for u in &layers[shorter] {
                    pairs += 1;
                    if reps.iter().zip(&wi).any(|(a, x)| image(u, a) != *x) {
                        continue;
                    }
                    searched += 1;
                    let q = w.concat(&u.inverse()).free_reduced();
                    assert_ne!(
                        bounded_identity_search(&q, &p, q.len() + 4, 2_000),
                        SearchOutcome::Identity,
                        "{name}: geodesic {w} equals shorter {u}"
                    );
                }
            }
        }
    }
    (pairs, searched)
}

#[test]
fn trefoil_geodesics_are_minimal() {
    let (pairs, _) = geodesics_have_no_shorter_equal("3_1", 4);
    assert!(pairs > 0);
}

#[test]
fn figure_eight_geodesics_are_minimal() {
    let (pairs, _) = geodesics_have_no_shorter_equal("4_1", 3);
    assert!(pairs > 0);
}
