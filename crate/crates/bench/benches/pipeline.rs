use std::path::PathBuf;

use altlink_core::{certify, geodesic_reduce, parse_diagram, Diagram, Presentation, Word};
use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fixture(name: &str) -> (String, Diagram) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../corpus")
        .join(format!("{name}.pd"));
    let text = std::fs::read_to_string(path).unwrap();
    let d = parse_diagram(&text).unwrap();
    (text, d)
}

fn random_words(p: &Presentation, count: usize, len: usize) -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = p.generator_count() as i64;
    (0..count)
        .map(|_| {
            let ids: Vec<i64> = (0..len)
                .map(|_| rng.gen_range(1..=g) * if rng.gen_bool(0.5) { 1 } else { -1 })
                .collect();
            Word::from_letters(ids.iter().map(|&x| p.letter(x).unwrap()).collect())
        })
        .collect()
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("certify");
    for name in ["3_1", "4_1", "7_7", "borromean", "granny"] {
        let (text, _) = fixture(name);
        group.bench_with_input(BenchmarkId::from_parameter(name), &text, |b, text| {
            b.iter(|| certify(&parse_diagram(black_box(text)).unwrap()).unwrap())
        });
    }
    group.finish();

    let mut group = c.benchmark_group("geodesic_reduce");
    for name in ["3_1", "7_7"] {
        let p = Presentation::of_diagram(&fixture(name).1).unwrap();
        let words = random_words(&p, 256, 40);
        group.bench_with_input(BenchmarkId::from_parameter(name), &words, |b, words| {
            b.iter(|| {
                words
                    .iter()
                    .map(|w| geodesic_reduce(black_box(w), &p).len())
                    .sum::<usize>()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, pipeline);
criterion_main!(benches);
