//! On-disk workspace: ingested graph, text index, distance indexes and the
//! manifest that ties them together.

use std::fs::{self, File};
use std::io::BufReader;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use gks_core::graph::io::{read_edges, read_nodes};
use gks_core::hop2::FORMAT_VERSION;
use gks_core::search::IndexGraph;
use gks_core::{Graph, InvertedIndex, NormalizationConstants, TwoHopIndex};

use crate::MissingIndex;

pub const MANIFEST: &str = "manifest.json";
pub const MANIFEST_VERSION: u32 = 1;
pub const NODES_FILE: &str = "nodes.tsv";
pub const EDGES_FILE: &str = "edges.tsv";
pub const TEXT_FILE: &str = "text_index.tsv";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub format_version: u32,
    pub nodes: String,
    pub edges: String,
    pub text_index: String,
    /// Weight scheme applied at ingestion; `edges` already carries the result.
    pub scheme: String,
    pub node_count: usize,
    pub edge_count: usize,
    pub normalization: Normalization,
    pub indexes: Vec<IndexRecord>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub ew_scale: f64,
    pub ni_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexRecord {
    pub file: String,
    /// `base`, `combined` or `importance`.
    pub graph: String,
    /// Set for `combined` only.
    pub lambda: Option<f64>,
    /// `None` when unbounded.
    pub d_max: Option<f64>,
    pub format_version: u32,
    pub entries: usize,
    pub bytes: usize,
}

impl IndexRecord {
    pub fn covers(&self, target: IndexGraph) -> bool {
        let (graph, lambda) = describe(target);
        self.graph == graph && self.lambda == lambda
    }
}

pub fn describe(target: IndexGraph) -> (&'static str, Option<f64>) {
    match target {
        IndexGraph::Base => ("base", None),
        IndexGraph::Combined(l) => ("combined", Some(l)),
        IndexGraph::Importance => ("importance", None),
    }
}

pub fn index_file_name(target: IndexGraph) -> String {
    match target {
        IndexGraph::Combined(l) => format!("index-combined-{l}.gks2"),
        other => format!("index-{}.gks2", describe(other).0),
    }
}

/// The build command that creates an index for `target`, for error messages.
pub fn build_hint(dir: &Path, target: IndexGraph) -> String {
    match target {
        IndexGraph::Base => format!("gks build-index {} --method edge-only", dir.display()),
        IndexGraph::Importance => format!("gks build-index {} --method combined2", dir.display()),
        IndexGraph::Combined(l) => format!("gks build-index {} --method combined1 --lambda {l}", dir.display()),
    }
}

/// A loaded workspace.
pub struct Workspace {
    pub dir: PathBuf,
    pub manifest: Manifest,
    pub graph: Graph,
    pub text: InvertedIndex,
}

impl Workspace {
    pub fn open(dir: &Path) -> Result<Self> {
        let manifest_path = dir.join(MANIFEST);
        let raw = fs::read_to_string(&manifest_path)
            .with_context(|| format!("reading {} (run `gks ingest` first)", manifest_path.display()))?;
        let manifest: Manifest =
            serde_json::from_str(&raw).with_context(|| format!("parsing {}", manifest_path.display()))?;
        if manifest.format_version != MANIFEST_VERSION {
            bail!("unsupported manifest version {}", manifest.format_version);
        }
        let nodes = dir.join(&manifest.nodes);
        let edges = dir.join(&manifest.edges);
        let open = |p: &Path| File::open(p).map(BufReader::new).with_context(|| format!("opening {}", p.display()));
        let mut builder = read_nodes(open(&nodes)?, &nodes)?;
        read_edges(&mut builder, open(&edges)?, &edges, true)?;
        let graph = builder.build();
        if graph.node_count() != manifest.node_count || graph.edge_count() != manifest.edge_count {
            bail!("graph files do not match the manifest counts");
        }
        let text_path = dir.join(&manifest.text_index);
        let text = InvertedIndex::read_tsv(open(&text_path)?, &text_path)?;
        Ok(Workspace { dir: dir.to_owned(), manifest, graph, text })
    }

    pub fn norm(&self) -> Result<NormalizationConstants> {
        let n = self.manifest.normalization;
        Ok(NormalizationConstants::new(n.ew_scale, n.ni_scale)?)
    }

    pub fn record(&self, target: IndexGraph) -> Option<&IndexRecord> {
        self.manifest.indexes.iter().find(|r| r.covers(target))
    }

    pub fn load_index(&self, target: IndexGraph) -> Result<TwoHopIndex> {
        let Some(record) = self.record(target) else {
            return Err(MissingIndex(build_hint(&self.dir, target)).into());
        };
        let path = self.dir.join(&record.file);
        if !path.exists() {
            return Err(MissingIndex(build_hint(&self.dir, target)).into());
        }
        if record.format_version != FORMAT_VERSION {
            bail!("index {} has format version {}, expected {FORMAT_VERSION}", record.file, record.format_version);
        }
        let index = TwoHopIndex::load(&path).with_context(|| format!("loading {}", path.display()))?;
        if index.node_count() != self.graph.node_count() {
            bail!("index {} covers {} nodes, graph has {}", record.file, index.node_count(), self.graph.node_count());
        }
        Ok(index)
    }

    /// Inserts or replaces the record for the same graph and λ.
    pub fn upsert(&mut self, record: IndexRecord) {
        self.manifest.indexes.retain(|r| !(r.graph == record.graph && r.lambda == record.lambda));
        self.manifest.indexes.push(record);
        self.manifest.indexes.sort_by(|a, b| a.file.cmp(&b.file));
    }

    pub fn save_manifest(&self) -> Result<()> {
        write_manifest(&self.dir, &self.manifest)
    }
}

pub fn write_manifest(dir: &Path, manifest: &Manifest) -> Result<()> {
    let path = dir.join(MANIFEST);
    let mut body = serde_json::to_string_pretty(manifest)?;
    body.push('\n');
    fs::write(&path, body).with_context(|| format!("writing {}", path.display()))
}
