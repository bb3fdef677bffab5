use ceresa_core::finite_field::residue_fields;
use ceresa_core::jacobi::local_factor;
use ceresa_core::{CharacterPair, JacobiTable};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn table(c: &mut Criterion) {
    let spec = residue_fields(9, 9973).unwrap().remove(0);
    c.bench_function("jacobi_table_9_9973", |b| b.iter(|| JacobiTable::new(black_box(&spec)).unwrap()));
    let table = JacobiTable::new(&spec).unwrap();
    let pair = CharacterPair::new(9, 1, 2).unwrap();
    c.bench_function("tau_9_1_2", |b| b.iter(|| table.tau(black_box(&pair)).unwrap()));
}

fn factor(c: &mut Criterion) {
    let chars: Vec<CharacterPair> =
        [(1, 2), (2, 4), (5, 1)].iter().map(|&(a, b)| CharacterPair::new(9, a, b).unwrap()).collect();
    c.bench_function("local_factor_9_p2", |b| b.iter(|| local_factor(9, black_box(&chars), 2).unwrap()));
}

criterion_group!(benches, table, factor);
criterion_main!(benches);
