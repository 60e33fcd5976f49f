use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use moduli_core::exactalg::{macaulay_rank, Gf2, Rational};
use moduli_core::operads::{sweep, Identity};
use moduli_core::presentations::{keel_presentation, krasnov_presentation};
use moduli_core::{ComplexStableTree, RealStableTree};

fn groebner(c: &mut Criterion) {
    let mut g = c.benchmark_group("groebner");
    g.sample_size(10);
    for n in [5, 6] {
        let r = keel_presentation::<Rational>(n).unwrap();
        let top = r.flavor().socle_degree(n);
        g.bench_function(format!("keel {n}"), |b| {
            b.iter_batched(
                || r.with_degree_bound(top),
                |fresh| fresh.ring().hilbert_function(top).unwrap(),
                BatchSize::LargeInput,
            )
        });
    }
    let r = krasnov_presentation(6).unwrap();
    g.bench_function("krasnov 6", |b| {
        b.iter_batched(
            || r.with_degree_bound(3),
            |fresh| fresh.ring().hilbert_function(3).unwrap(),
            BatchSize::LargeInput,
        )
    });
    g.finish();
}

fn macaulay(c: &mut Criterion) {
    let mut g = c.benchmark_group("macaulay");
    g.sample_size(10);
    let r = keel_presentation::<Rational>(6).unwrap();
    for d in [2, 4] {
        g.bench_function(format!("keel 6 degree {d}"), |b| {
            b.iter(|| macaulay_rank(r.ring().presentation(), d).unwrap())
        });
    }
    let r = keel_presentation::<Gf2>(6).unwrap();
    g.bench_function("keel 6 degree 4 mod 2", |b| {
        b.iter(|| macaulay_rank(r.ring().presentation(), 4).unwrap())
    });
    g.finish();
}

fn gluing(c: &mut Criterion) {
    let t4 = ComplexStableTree::one_vertex(4).unwrap();
    let t5 = ComplexStableTree::one_vertex(5).unwrap();
    c.bench_function("glue complex", |b| b.iter(|| t5.glue(2, &t4).unwrap().glue(1, &t4).unwrap()));
    c.bench_function("glue all complex", |b| b.iter(|| t5.glue_all(&[Some(&t4), None, Some(&t4), None]).unwrap()));
    let x = RealStableTree::one_vertex(3, 2).unwrap();
    let y = RealStableTree::one_vertex(2, 1).unwrap();
    c.bench_function("glue all real", |b| b.iter(|| x.glue_all_real(&[Some(&y), Some(&x)]).unwrap()));
    let conj = RealStableTree::one_vertex(0, 3).unwrap();
    c.bench_function("glue conjugate", |b| b.iter(|| conj.glue_conjugate(2, &t4).unwrap()));
}

fn sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("sweep");
    g.sample_size(10);
    for id in [Identity::Sequential, Identity::Expansion] {
        g.bench_function(id.name(), |b| b.iter(|| sweep(id, 100, 1).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, groebner, macaulay, gluing, sweeps);
criterion_main!(benches);
