use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use edgedepth::enumerate::{connected_graphs_with, GraphClass};
use edgedepth::homology::{hochster_profile_with, Field, HochsterOptions};
use edgedepth::pairsets::chordal_witness;
use edgedepth::survey::{survey, SurveyOptions};
use edgedepth::{Exec, Graph};

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_n8_all");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| connected_graphs_with(8, GraphClass::All, exec).unwrap().len())
        });
    }
    group.finish();
}

fn surveys(c: &mut Criterion) {
    let mut group = c.benchmark_group("survey");
    group.sample_size(10);
    for (n, class) in [(7, GraphClass::All), (8, GraphClass::Chordal)] {
        for (name, exec) in MODES {
            let opts = SurveyOptions {
                exec,
                ..SurveyOptions::default()
            };
            group.bench_with_input(BenchmarkId::new(format!("{class}_{name}"), n), &n, |b, &n| {
                b.iter(|| survey(n, class, &opts).unwrap().examined)
            });
        }
    }
    group.finish();
}

fn hochster(c: &mut Criterion) {
    let mut group = c.benchmark_group("hochster");
    let graphs: [(&str, Graph); 2] = [
        ("witness_12_5_6", chordal_witness(12, 5, 6).unwrap()),
        ("cycle_11", Graph::cycle(11).unwrap()),
    ];
    for (label, g) in graphs {
        for (name, exec) in MODES {
            let opts = HochsterOptions {
                exec,
                ..HochsterOptions::default()
            };
            group.bench_function(BenchmarkId::new(label, name), |b| {
                b.iter(|| hochster_profile_with(&g, Field::GF2, opts).pdim)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, enumeration, surveys, hochster);
criterion_main!(benches);
