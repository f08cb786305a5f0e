use criterion::{black_box, criterion_group, criterion_main, Criterion};
use crlab_core::chevalley::{conjugate_generic, generic_element, parse_word};
use crlab_core::paperlab::field::{F2, F4};
use crlab_core::paperlab::matrix::enumerate_m_conjugacy;
use crlab_core::paperlab::{confluence_suite, run_scenario, RunConfig};
use crlab_core::{Dynkin, Registry, Root, RootSystem};

fn generic_collection(c: &mut Criterion) {
    let rs = RootSystem::new(Dynkin::D4).unwrap();
    let radical: Vec<Root> = (4..=12).map(|l| rs.by_label(l).unwrap()).collect();
    let order: Vec<Root> = [7, 10, 9, 11, 6, 8, 4, 5, 12]
        .iter()
        .map(|&l| rs.by_label(l).unwrap())
        .collect();
    c.bench_function("d4 generic conjugation u^-1·(n_a sigma e12(a))", |b| {
        b.iter(|| {
            let mut reg = Registry::standard();
            let u = generic_element(&rs, &mut reg, &radical).unwrap();
            let g = parse_word(&rs, &mut reg, "n[a]·sigma·e12(a)").unwrap();
            black_box(conjugate_generic(&rs, &u, &g, &order).unwrap())
        })
    });
}

fn confluence(c: &mut Criterion) {
    c.bench_function("d4 confluence suite, 50 words", |b| {
        b.iter(|| black_box(confluence_suite(7, 50)))
    });
}

fn enumeration(c: &mut Criterion) {
    let f2: Vec<F2> = F2::elements().collect();
    let f4: Vec<F4> = F4::elements().collect();
    c.bench_function("M(F2) conjugacy enumeration", |b| {
        b.iter(|| black_box(enumerate_m_conjugacy(&f2)))
    });
    let mut group = c.benchmark_group("slow");
    group.sample_size(10);
    group.bench_function("M(F4) conjugacy enumeration", |b| {
        b.iter(|| black_box(enumerate_m_conjugacy(&f4)))
    });
    group.finish();
}

fn scenarios(c: &mut Criterion) {
    let cfg = RunConfig::default();
    c.bench_function("scenario d4-gcr-not-gcrk", |b| {
        b.iter(|| black_box(run_scenario("d4-gcr-not-gcrk", &cfg).unwrap()))
    });
}

criterion_group!(
    benches,
    generic_collection,
    confluence,
    enumeration,
    scenarios
);
criterion_main!(benches);
