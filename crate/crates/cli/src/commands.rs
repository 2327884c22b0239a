use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fs::{self, File};
use std::hint::black_box;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{Context, Result};

use gks_core::graph::io::{load_graph, save_graph};
use gks_core::hop2::default_d_max;
use gks_core::search::IndexGraph;
use gks_core::synth::random_pairs;
use gks_core::{Graph, InvertedIndex, Method, NormalizationConstants, Query, SearchContext, TwoHopIndex, WeightScheme};

use crate::render::{self, Params};
use crate::workspace::{
    self, describe, index_file_name, IndexRecord, Manifest, Normalization, Workspace, EDGES_FILE, MANIFEST_VERSION,
    NODES_FILE, TEXT_FILE,
};
use crate::{Format, Usage};

pub fn ingest(
    out: &mut impl Write,
    nodes: &Path,
    edges: &Path,
    scheme: &str,
    dir: &Path,
    ew_scale: Option<f64>,
    ni_scale: Option<f64>,
) -> Result<()> {
    let scheme: WeightScheme = scheme.parse().map_err(|e| Usage(format!("{e}")))?;
    let graph = load_graph(nodes, edges, scheme)?;
    let text = InvertedIndex::build(&graph);
    let computed = graph.normalization_constants();
    let norm = NormalizationConstants::new(
        ew_scale.unwrap_or(computed.ew_scale),
        ni_scale.unwrap_or(computed.ni_scale),
    )
    .map_err(|e| Usage(e.to_string()))?;

    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    save_graph(&graph, &dir.join(NODES_FILE), &dir.join(EDGES_FILE))?;
    let text_path = dir.join(TEXT_FILE);
    let file = File::create(&text_path).with_context(|| format!("creating {}", text_path.display()))?;
    text.write_tsv(BufWriter::new(file))?;
    let manifest = Manifest {
        format_version: MANIFEST_VERSION,
        nodes: NODES_FILE.into(),
        edges: EDGES_FILE.into(),
        text_index: TEXT_FILE.into(),
        scheme: scheme.to_string(),
        node_count: graph.node_count(),
        edge_count: graph.edge_count(),
        normalization: Normalization { ew_scale: norm.ew_scale, ni_scale: norm.ni_scale },
        indexes: Vec::new(),
    };
    workspace::write_manifest(dir, &manifest)?;
    writeln!(out, "nodes\t{}", graph.node_count())?;
    writeln!(out, "edges\t{}", graph.edge_count())?;
    writeln!(out, "tokens\t{}", text.token_count())?;
    writeln!(out, "scheme\t{scheme}")?;
    writeln!(out, "ew_scale\t{}", norm.ew_scale)?;
    writeln!(out, "ni_scale\t{}", norm.ni_scale)?;
    Ok(())
}

fn parse_method(s: &str) -> Result<Method> {
    s.parse::<Method>().map_err(|e| Usage(e.to_string()).into())
}

fn check_lambda(lambda: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Usage(format!("lambda must lie in [0, 1], got {lambda}")).into());
    }
    Ok(())
}

/// Parses a radius: a plain number, `<m>x` (times the mean edge weight of
/// `g`) or `inf`. `None` gives the default of ten times the mean.
pub fn parse_dmax(spec: Option<&str>, g: &Graph) -> Result<f64> {
    let Some(spec) = spec else {
        return Ok(default_d_max(g));
    };
    let spec = spec.trim();
    if spec.eq_ignore_ascii_case("inf") {
        return Ok(f64::INFINITY);
    }
    let bad = || Usage(format!("bad d_max {spec:?}; expected a number, `<m>x` or `inf`"));
    let value = if let Some(m) = spec.strip_suffix('x') {
        let m: f64 = m.parse().map_err(|_| bad())?;
        match g.mean_edge_weight() {
            Some(mean) => m * mean,
            None => f64::INFINITY,
        }
    } else {
        spec.parse().map_err(|_| bad())?
    };
    if value.is_nan() || value <= 0.0 {
        return Err(bad().into());
    }
    Ok(value)
}

fn index_target(method: Method, lambda: f64) -> Result<IndexGraph> {
    method
        .index_graph(lambda)
        .ok_or_else(|| Usage("the exact method uses no distance index".into()).into())
}

pub fn build_index(out: &mut impl Write, dir: &Path, method: &str, lambda: f64, dmax: Option<&str>) -> Result<()> {
    let method = parse_method(method)?;
    check_lambda(lambda)?;
    let target = index_target(method, lambda)?;
    let mut ws = Workspace::open(dir)?;
    let g = target.transform(&ws.graph);
    let d_max = parse_dmax(dmax, &g)?;

    let start = Instant::now();
    let index = TwoHopIndex::build(&g, d_max)?;
    let build_seconds = start.elapsed().as_secs_f64();
    let file = index_file_name(target);
    index.save(&dir.join(&file))?;

    let stats = index.stats();
    let (graph, lambda) = describe(target);
    ws.upsert(IndexRecord {
        file: file.clone(),
        graph: graph.into(),
        lambda,
        d_max: d_max.is_finite().then_some(d_max),
        format_version: gks_core::hop2::FORMAT_VERSION,
        entries: stats.entries,
        bytes: stats.bytes,
    });
    ws.save_manifest()?;

    writeln!(out, "file\t{file}")?;
    writeln!(out, "graph\t{target}")?;
    writeln!(out, "d_max\t{d_max}")?;
    writeln!(out, "entries\t{}", stats.entries)?;
    writeln!(out, "mean_label\t{:.3}", stats.mean_label_len)?;
    writeln!(out, "bytes\t{}", stats.bytes)?;
    writeln!(out, "build_seconds\t{build_seconds:.3}")?;
    Ok(())
}

pub struct QueryOpts {
    pub method: String,
    pub lambda: f64,
    pub k: usize,
    pub delta: f64,
    pub max_iters: usize,
    pub format: Format,
}

pub fn query(out: &mut impl Write, dir: &Path, keywords: &[String], opts: &QueryOpts) -> Result<()> {
    let method = parse_method(&opts.method)?;
    let words: Vec<&str> = keywords.iter().map(String::as_str).collect();
    let q = Query::parse(&words, method)
        .map_err(|e| Usage(e.to_string()))?
        .with_lambda(opts.lambda)
        .with_k(opts.k)
        .with_delta(opts.delta)
        .with_max_iters(opts.max_iters);
    q.validate()?;
    let ws = Workspace::open(dir)?;
    let norm = ws.norm()?;
    let index = q.index_graph().map(|t| ws.load_index(t)).transpose()?;
    let ctx = SearchContext::new(&ws.graph, &ws.text, norm);
    let answers = ctx.run(&q, index.as_ref())?;

    let params = Params {
        k: q.k,
        delta: q.delta,
        max_iters: q.max_iters,
        d_max: index.as_ref().map(|i| i.d_max()).filter(|d| d.is_finite()),
        ew_scale: norm.ew_scale,
        ni_scale: norm.ni_scale,
    };
    let report = render::report(&ws.graph, &q, params, &answers);
    let body = match opts.format {
        Format::Text => render::text(&report),
        Format::Json => render::json(&report),
        Format::Dot => render::dot(&report),
    };
    out.write_all(body.as_bytes())?;
    Ok(())
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[m] } else { (xs[m - 1] + xs[m]) / 2.0 })
}

fn ratio(greedy: f64, exact: f64) -> f64 {
    if exact == 0.0 {
        if greedy == 0.0 {
            1.0
        } else {
            f64::INFINITY
        }
    } else {
        greedy / exact
    }
}

const GREEDY: [Method; 4] = [Method::EdgeOnly, Method::NodeImp, Method::Combined1, Method::Combined2];

pub fn compare_exact(out: &mut impl Write, dir: &Path, queries: &Path, lambda: f64, dmax: Option<&str>) -> Result<()> {
    check_lambda(lambda)?;
    let ws = Workspace::open(dir)?;
    let norm = ws.norm()?;
    let ctx = SearchContext::new(&ws.graph, &ws.text, norm);
    let body = fs::read_to_string(queries).with_context(|| format!("reading {}", queries.display()))?;

    let mut indexes: HashMap<String, TwoHopIndex> = HashMap::new();
    for m in GREEDY {
        let target = index_target(m, lambda)?;
        if let Entry::Vacant(slot) = indexes.entry(target.to_string()) {
            let g = target.transform(&ws.graph);
            let d_max = parse_dmax(dmax, &g)?;
            slot.insert(TwoHopIndex::build(&g, d_max)?);
        }
    }

    write!(out, "query")?;
    for m in GREEDY.iter().chain([&Method::Exact]) {
        write!(out, "\t{m}")?;
    }
    for m in GREEDY {
        write!(out, "\tratio_{m}")?;
    }
    writeln!(out)?;

    let mut ratios: Vec<Vec<f64>> = vec![Vec::new(); GREEDY.len()];
    for line in body.lines() {
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split('\t').filter(|w| !w.trim().is_empty()).collect();
        let base = Query::parse(&words, Method::Exact).map_err(|e| Usage(e.to_string()))?.with_lambda(lambda).with_k(1);
        let exact = ctx.run(&base, None)?[0].scores.c;
        let mut cells = Vec::new();
        let mut row_ratios = Vec::new();
        for (i, m) in GREEDY.into_iter().enumerate() {
            let q = Query { method: m, ..base.clone() };
            let index = &indexes[&index_target(m, lambda)?.to_string()];
            match ctx.run(&q, Some(index))?.first() {
                Some(t) => {
                    let r = ratio(t.scores.c, exact);
                    ratios[i].push(r);
                    cells.push(format!("{:.6}", t.scores.c));
                    row_ratios.push(format!("{r:.4}"));
                }
                None => {
                    cells.push("-".into());
                    row_ratios.push("-".into());
                }
            }
        }
        writeln!(out, "{}\t{}\t{exact:.6}\t{}", words.join(" | "), cells.join("\t"), row_ratios.join("\t"))?;
    }

    write!(out, "median_ratio")?;
    for r in ratios {
        match median(r) {
            Some(m) => write!(out, "\t{m:.4}")?,
            None => write!(out, "\t-")?,
        }
    }
    writeln!(out)?;
    Ok(())
}

pub fn bench_index(
    out: &mut impl Write,
    dir: &Path,
    dmax_list: &str,
    pairs: usize,
    seed: u64,
    method: &str,
    lambda: f64,
) -> Result<()> {
    let method = parse_method(method)?;
    check_lambda(lambda)?;
    let target = index_target(method, lambda)?;
    let ws = Workspace::open(dir)?;
    let g = target.transform(&ws.graph);
    let radii = dmax_list
        .split(',')
        .map(|s| Ok((s.trim().to_owned(), parse_dmax(Some(s), &g)?)))
        .collect::<Result<Vec<_>>>()?;
    let sample = if g.is_empty() { Vec::new() } else { random_pairs(g.node_count(), pairs, seed) };

    writeln!(
        out,
        "# graph {target}, {} nodes, {} edges, {} pairs, seed {seed}, {} {} x{}",
        g.node_count(),
        g.edge_count(),
        sample.len(),
        std::env::consts::OS,
        std::env::consts::ARCH,
        std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
    )?;
    writeln!(out, "d_max\tvalue\tentries\tmean_label\tbytes\tbuild_seconds\tquery_ns")?;
    for (spec, d_max) in radii {
        let start = Instant::now();
        let index = TwoHopIndex::build(&g, d_max)?;
        let build = start.elapsed().as_secs_f64();
        let start = Instant::now();
        for &(s, t) in &sample {
            black_box(index.distance(black_box(s), black_box(t)));
        }
        let per_query = if sample.is_empty() { 0.0 } else { start.elapsed().as_nanos() as f64 / sample.len() as f64 };
        let stats = index.stats();
        writeln!(
            out,
            "{spec}\t{d_max}\t{}\t{:.3}\t{}\t{build:.3}\t{per_query:.1}",
            stats.entries, stats.mean_label_len, stats.bytes
        )?;
    }
    Ok(())
}
