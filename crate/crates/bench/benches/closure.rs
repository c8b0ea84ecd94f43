use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use sglab::config::Params;
use sglab::ideal::closure_to_depth;
use sglab::spectrum::spectrum;
use sglab::{catalog, dossier, Caps};

const FAMILIES: &[&str] = &["free_product_naturals:2", "cone_zk:3", "numerical:3,5", "axb_integers"];

fn closure(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure_to_depth");
    for id in FAMILIES {
        let amb = catalog::lookup(id).unwrap();
        for depth in [2, 4] {
            group.bench_with_input(BenchmarkId::new(*id, depth), &depth, |b, &d| {
                b.iter(|| closure_to_depth(&amb, black_box(d), &Caps::default()))
            });
        }
    }
    group.finish();
}

fn filters(c: &mut Criterion) {
    let mut group = c.benchmark_group("spectrum");
    for id in FAMILIES {
        let amb = catalog::lookup(id).unwrap();
        let fam = closure_to_depth(&amb, 3, &Caps::default());
        group.bench_function(*id, |b| b.iter(|| spectrum(&amb, black_box(&fam), &Caps::default()).unwrap()));
    }
    group.finish();
}

fn analyze(c: &mut Criterion) {
    let amb = catalog::lookup("free_product_naturals:2").unwrap();
    let params = Params::default();
    c.bench_function("analyze free_product_naturals:2", |b| b.iter(|| dossier::analyze(&amb, black_box(&params))));
}

criterion_group!(benches, closure, filters, analyze);
criterion_main!(benches);
