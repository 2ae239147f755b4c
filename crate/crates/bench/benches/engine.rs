use brauer::lie_oracle::{build_lie, psi, Family};
use brauer::nw::multiplication_table;
use brauer::scalar::int;
use brauer::{CategoryConfig, Engine, Gen, GeneratorWord};
use criterion::{black_box, criterion_group, criterion_main, Criterion};

/// A fixed word on four strands mixing every generator.
fn sample_word() -> GeneratorWord {
    use Gen::*;
    let gens = [Cup(2), Dot(1), Cross(3), Dot(4), Cap(1), Cross(2), Dot(2), Cup(1), Cross(4), Dot(3), Cap(2), Dot(1)];
    GeneratorWord::from_gens(4, &gens).unwrap()
}

fn normalize(c: &mut Criterion) {
    let word = sample_word();
    let ab = Engine::new(CategoryConfig::affine());
    c.bench_function("normal_form/affine", |b| b.iter(|| ab.normal_form(black_box(&word)).unwrap()));
    let cyc = Engine::new(CategoryConfig::cyclotomic_omega(vec![int(1), int(2)], None).unwrap());
    c.bench_function("normal_form/cyclotomic", |b| b.iter(|| cyc.normal_form(black_box(&word)).unwrap()));
}

fn compose(c: &mut Criterion) {
    let ab = Engine::new(CategoryConfig::affine());
    let f = ab.normal_form(&sample_word()).unwrap();
    c.bench_function("compose/square", |b| b.iter(|| ab.compose(black_box(&f), black_box(&f)).unwrap()));
    c.bench_function("tensor/pair", |b| b.iter(|| ab.tensor(black_box(&f), black_box(&f)).unwrap()));
}

fn table(c: &mut Criterion) {
    let cyc = Engine::new(CategoryConfig::cyclotomic_omega(vec![int(1), int(2)], None).unwrap());
    let mut group = c.benchmark_group("multiplication_table");
    group.sample_size(10);
    group.bench_function("a2_r2", |b| b.iter(|| multiplication_table(2, &cyc).unwrap()));
    group.finish();
}

fn oracle(c: &mut Criterion) {
    let l = build_lie(Family::So, 3).unwrap();
    let f = Engine::new(CategoryConfig::affine()).normal_form(&sample_word()).unwrap();
    c.bench_function("psi/so3", |b| b.iter(|| psi(black_box(&f), &l).unwrap()));
}

criterion_group!(benches, normalize, compose, table, oracle);
criterion_main!(benches);
