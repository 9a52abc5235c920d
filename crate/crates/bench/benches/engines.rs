use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use ordo::harness::{catalog, TaskSpec};
use ordo::kernel::{kbo, Term};
use ordo::modelfinder::{check_model, find_model, SearchBudget};
use ordo::prover::{saturate, SaturationLimits};
use ordo::theories::compile;

fn task(id: &str) -> TaskSpec {
    catalog().unwrap().into_iter().find(|t| t.id == id).unwrap()
}

fn ordering(c: &mut Criterion) {
    let spec = task("1.2");
    let cs = compile(&spec.theory).unwrap();
    let a = Term::constant(cs.vocab.lookup("a").unwrap());
    let b = Term::constant(cs.vocab.lookup("b").unwrap());
    let s = Term::product(Term::product(Term::inverse(a.clone()), b.clone()), Term::product(a.clone(), Term::var(0)));
    let t = Term::product(Term::inverse(b), Term::product(Term::var(0), Term::inverse(a)));
    c.bench_function("kbo/ground_mixed", |bench| bench.iter(|| kbo(black_box(&s), black_box(&t), &cs.vocab)));
}

fn prover(c: &mut Criterion) {
    let mut group = c.benchmark_group("saturate");
    group.sample_size(10);
    for id in ["1.2", "2.2", "7.2"] {
        let cs = compile(&task(id).theory).unwrap();
        let limits = SaturationLimits::with_seconds(60.0);
        group.bench_function(id, |bench| bench.iter(|| saturate(black_box(&cs), &limits).unwrap()));
    }
    group.finish();
}

fn finder(c: &mut Criterion) {
    let mut group = c.benchmark_group("find_model");
    group.sample_size(10);
    for id in ["1.1", "3.1", "4.1"] {
        let spec = task(id);
        let cs = compile(&spec.theory).unwrap();
        let budget = SearchBudget::new(spec.budget.min_size, spec.budget.max_size).unwrap();
        group.bench_function(id, |bench| bench.iter(|| find_model(black_box(&cs), &budget).unwrap()));
    }
    group.finish();
}

fn checker(c: &mut Criterion) {
    let spec = task("8.1");
    let cs = compile(&spec.theory).unwrap();
    let model = spec.supplied_model.clone().unwrap();
    let mut group = c.benchmark_group("check_model");
    group.sample_size(10);
    group.bench_function("binary_icosahedral_120", |bench| {
        bench.iter(|| check_model(black_box(&model), &cs).unwrap())
    });
    group.finish();
}

criterion_group!(benches, ordering, prover, finder, checker);
criterion_main!(benches);
