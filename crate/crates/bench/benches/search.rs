use criterion::{criterion_group, criterion_main, Criterion};
use gks_bench::{graph, keywords};
use gks_core::{InvertedIndex, Method, Query, SearchContext, TwoHopIndex};

fn search(c: &mut Criterion) {
    let g = graph(5_000, 3);
    let text = InvertedIndex::build(&g);
    let ctx = SearchContext::new(&g, &text, g.normalization_constants());
    let words = keywords(&text, 2);
    let words: Vec<&str> = words.iter().map(String::as_str).collect();

    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    for m in [Method::EdgeOnly, Method::Combined1, Method::Combined2] {
        let q = Query::parse(&words, m).unwrap();
        let target = q.index_graph().unwrap().transform(&g);
        let ix = TwoHopIndex::build(&target, gks_core::hop2::default_d_max(&target)).unwrap();
        group.bench_function(m.name(), |b| b.iter(|| ctx.run(&q, Some(&ix)).unwrap()));
    }
    group.finish();

    let small = graph(300, 4);
    let text = InvertedIndex::build(&small);
    let ctx = SearchContext::new(&small, &text, small.normalization_constants());
    let words = keywords(&text, 3);
    let words: Vec<&str> = words.iter().map(String::as_str).collect();
    let q = Query::parse(&words, Method::Exact).unwrap();
    c.bench_function("exact_300", |b| b.iter(|| ctx.run(&q, None).unwrap()));
}

criterion_group!(benches, search);
criterion_main!(benches);
