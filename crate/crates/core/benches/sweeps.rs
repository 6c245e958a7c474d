//! Sequential against data-parallel execution of the heavier sweeps.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use tilecomplex::builder::extend;
use tilecomplex::geodesy::{ellipticity_scan, pasting_entry_distances, sample_pairs};
use tilecomplex::{build, Exec};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn sweeps(cr: &mut Criterion) {
    let c5 = build(5).unwrap();

    let mut g = cr.benchmark_group("entry_distances");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 5), &c5, |b, c| b.iter(|| pasting_entry_distances(c, exec)));
    }
    g.finish();

    let pairs = sample_pairs(&c5, 200, 1);
    let mut g = cr.benchmark_group("ellipticity_scan");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 5), &c5, |b, c| {
            b.iter(|| ellipticity_scan(c, black_box(&pairs), exec).unwrap())
        });
    }
    g.finish();

    // Sites are enumerated on a freshly subdivided complex, before its pasting round.
    let mut pre = build(4).unwrap();
    extend(&mut pre, 5, false);
    let mut g = cr.benchmark_group("site_enumeration");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(name, 5), &pre, |b, c| b.iter(|| c.enumerate_pasting_sites_with(exec)));
    }
    g.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
