//! TSV node and edge files.
//!
//! Nodes: `id<TAB>importance<TAB>node_type<TAB>text`, ids `0..N` in order.
//! Edges: `src<TAB>dst[<TAB>weight]`; the weight column is required only for
//! the semantic scheme and ignored otherwise.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use super::{Graph, GraphBuilder, NodeId, WeightScheme};
use crate::error::GraphError;

fn open(path: &Path) -> Result<BufReader<File>, GraphError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| GraphError::Io { path: path.to_owned(), source })
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse { path: path.to_owned(), line, message: message.into() }
}

/// Reads a nodes file into a fresh builder. `origin` is only used in error messages.
pub fn read_nodes<R: BufRead>(reader: R, origin: &Path) -> Result<GraphBuilder, GraphError> {
    let mut builder = GraphBuilder::new();
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|source| GraphError::Io { path: origin.to_owned(), source })?;
        let line = line.strip_suffix('\r').unwrap_or(&line);
        if line.is_empty() {
            continue;
        }
        let mut cols = line.splitn(4, '\t');
        let (Some(id), Some(imp), Some(node_type)) = (cols.next(), cols.next(), cols.next()) else {
            return Err(parse_err(origin, lineno, "expected id, importance, node_type and text columns"));
        };
        let text = cols.next().unwrap_or("");
        let id: usize = id.trim().parse().map_err(|_| parse_err(origin, lineno, format!("bad node id {id:?}")))?;
        if id != builder.node_count() {
            return Err(parse_err(
                origin,
                lineno,
                format!("node ids must be dense and in order: expected {}, found {id}", builder.node_count()),
            ));
        }
        let importance: f64 =
            imp.trim().parse().map_err(|_| parse_err(origin, lineno, format!("bad importance {imp:?}")))?;
        builder.add_node(importance, node_type, text).map_err(|e| parse_err(origin, lineno, e.to_string()))?;
    }
    Ok(builder)
}

/// Adds the edges of an edges file to `builder`.
pub fn read_edges<R: BufRead>(
    builder: &mut GraphBuilder,
    reader: R,
    origin: &Path,
    needs_weights: bool,
) -> Result<(), GraphError> {
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|source| GraphError::Io { path: origin.to_owned(), source })?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() < 2 || cols.len() > 3 {
            return Err(parse_err(origin, lineno, "expected src, dst and optional weight columns"));
        }
        let endpoint = |s: &str| -> Result<NodeId, GraphError> {
            s.trim()
                .parse::<u32>()
                .map(NodeId)
                .map_err(|_| parse_err(origin, lineno, format!("bad node id {s:?}")))
        };
        let (u, v) = (endpoint(cols[0])?, endpoint(cols[1])?);
        let weight = match cols.get(2) {
            Some(w) => w.trim().parse().map_err(|_| parse_err(origin, lineno, format!("bad weight {w:?}")))?,
            None if needs_weights => return Err(parse_err(origin, lineno, "missing weight column")),
            None => 0.0,
        };
        builder.add_edge(u, v, weight).map_err(|e| parse_err(origin, lineno, e.to_string()))?;
    }
    Ok(())
}

/// Loads a graph from node and edge files and applies `scheme`.
pub fn load_graph(nodes: &Path, edges: &Path, scheme: WeightScheme) -> Result<Graph, GraphError> {
    scheme.validate()?;
    let mut builder = read_nodes(open(nodes)?, nodes)?;
    read_edges(&mut builder, open(edges)?, edges, scheme.needs_input_weights())?;
    Ok(builder.build_with_scheme(scheme))
}

pub fn write_nodes<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    for n in g.nodes() {
        writeln!(out, "{}\t{}\t{}\t{}", n.id, n.importance, n.node_type, n.text)?;
    }
    out.flush()
}

/// Writes every edge once with its current weight.
pub fn write_edges<W: Write>(g: &Graph, mut out: W) -> io::Result<()> {
    for e in g.edges() {
        writeln!(out, "{}\t{}\t{}", e.u, e.v, e.weight)?;
    }
    out.flush()
}

/// Writes `nodes.tsv`/`edges.tsv`-style files at the given paths.
pub fn save_graph(g: &Graph, nodes: &Path, edges: &Path) -> Result<(), GraphError> {
    let create = |p: &Path| {
        File::create(p).map(io::BufWriter::new).map_err(|source| GraphError::Io { path: PathBuf::from(p), source })
    };
    write_nodes(g, create(nodes)?).map_err(|source| GraphError::Io { path: nodes.to_owned(), source })?;
    write_edges(g, create(edges)?).map_err(|source| GraphError::Io { path: edges.to_owned(), source })?;
    Ok(())
}
