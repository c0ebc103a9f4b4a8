use std::collections::BTreeSet;

use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};

use verseproj::align::build_alignment_with;
use verseproj::onf::{parse_onf, OnfDocument};
use verseproj::par::{self, Execution};
use verseproj::synth::{generate, SynthSpec};
use verseproj::tasks::{gen_single, project_verses, sense_corpus, LabelConfig, Task};

fn modes() -> Vec<(&'static str, Execution)> {
    vec![
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ]
}

fn corpus() -> verseproj::synth::SynthCorpus {
    generate(&SynthSpec {
        verses: 3000,
        verses_per_chapter: 30,
        seed: 1,
        ..Default::default()
    })
    .unwrap()
}

fn bench_parse(c: &mut Criterion) {
    let corpus = corpus();
    let texts: Vec<(String, String)> = corpus
        .docs
        .iter()
        .map(|d| (d.doc_id.clone(), d.to_onf_string()))
        .collect();
    let bytes: usize = texts.iter().map(|(_, t)| t.len()).sum();
    let mut group = c.benchmark_group("onf_parse");
    group.throughput(Throughput::Bytes(bytes as u64));
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::from_parameter(name), &texts, |b, texts| {
            b.iter(|| {
                let docs: Vec<OnfDocument> =
                    par::try_map(exec, texts, |(id, t)| parse_onf(id, t)).unwrap();
                black_box(docs)
            })
        });
    }
    group.finish();
}

fn bench_labels(c: &mut Criterion) {
    let corpus = corpus();
    let table = build_alignment_with(
        Execution::Sequential,
        &corpus.svm,
        &BTreeSet::new(),
        &corpus.target,
    );
    let verses = project_verses(&corpus.docs, &table, &corpus.target).unwrap();
    let cfg = LabelConfig::default();
    let mut group = c.benchmark_group("labelling");
    group.throughput(Throughput::Elements(verses.len() as u64));
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                for task in [Task::Nmc, Task::Pns, Task::Sm] {
                    black_box(gen_single(task, &verses, &cfg, exec));
                }
                black_box(sense_corpus(&verses, &cfg, exec))
            })
        });
    }
    group.finish();
}

fn bench_alignment(c: &mut Criterion) {
    let corpus = corpus();
    let mut group = c.benchmark_group("alignment");
    group.throughput(Throughput::Elements(corpus.verses.len() as u64));
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| {
                black_box(build_alignment_with(
                    exec,
                    &corpus.svm,
                    &BTreeSet::new(),
                    &corpus.target,
                ))
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_parse, bench_labels, bench_alignment);
criterion_main!(benches);
