//! Answer output as plain text, JSON or Graphviz DOT.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use gks_core::{AnswerTree, Graph, Query};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QueryReport {
    pub query: Vec<String>,
    pub method: String,
    pub lambda: f64,
    pub params: Params,
    pub answers: Vec<AnswerJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Params {
    pub k: usize,
    pub delta: f64,
    pub max_iters: usize,
    /// Radius of the index used; `None` when unbounded or when no index was used.
    pub d_max: Option<f64>,
    pub ew_scale: f64,
    pub ni_scale: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnswerJson {
    pub root: u32,
    pub assignment: Vec<AssignmentJson>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    pub scores: ScoresJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub keyword: String,
    pub node: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub id: u32,
    #[serde(rename = "type")]
    pub node_type: String,
    pub importance: f64,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub u: u32,
    pub v: u32,
    pub w: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoresJson {
    pub ew: f64,
    pub ni: f64,
    pub c: f64,
    pub search_score: f64,
}

pub fn answer_json(g: &Graph, t: &AnswerTree) -> AnswerJson {
    AnswerJson {
        root: t.root.0,
        assignment: t
            .assignment
            .iter()
            .map(|(kw, n)| AssignmentJson { keyword: kw.raw().to_owned(), node: n.0 })
            .collect(),
        nodes: t
            .nodes
            .iter()
            .map(|&id| {
                let n = g.node(id);
                NodeJson { id: id.0, node_type: n.node_type.clone(), importance: n.importance, text: n.text.clone() }
            })
            .collect(),
        edges: t.edges.iter().map(|e| EdgeJson { u: e.u.0, v: e.v.0, w: e.weight }).collect(),
        scores: ScoresJson { ew: t.scores.ew, ni: t.scores.ni, c: t.scores.c, search_score: t.scores.search_score },
    }
}

pub fn report(g: &Graph, q: &Query, params: Params, answers: &[AnswerTree]) -> QueryReport {
    QueryReport {
        query: q.keywords.iter().map(|k| k.raw().to_owned()).collect(),
        method: q.method.name().to_owned(),
        lambda: q.lambda,
        params,
        answers: answers.iter().map(|t| answer_json(g, t)).collect(),
    }
}

pub fn json(r: &QueryReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("report serializes");
    s.push('\n');
    s
}

fn label(n: &NodeJson) -> String {
    if n.text.is_empty() {
        format!("{} [{}]", n.id, n.node_type)
    } else {
        format!("{} [{}] {}", n.id, n.node_type, n.text)
    }
}

pub fn text(r: &QueryReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "query: {}", r.query.join(" | "));
    let _ = writeln!(out, "method: {}  lambda: {}  k: {}", r.method, r.lambda, r.params.k);
    if r.answers.is_empty() {
        out.push_str("no answers\n");
    }
    for (rank, a) in r.answers.iter().enumerate() {
        let s = &a.scores;
        let _ = writeln!(
            out,
            "#{} root {}  c={:.6}  ew={:.6}  ni={:.6}  search_score={:.6}",
            rank + 1,
            a.root,
            s.c,
            s.ew,
            s.ni,
            s.search_score
        );
        for kw in &a.assignment {
            let node = a.nodes.iter().find(|n| n.id == kw.node).expect("content node in tree");
            let _ = writeln!(out, "  {:?} -> {}", kw.keyword, label(node));
        }
        for n in &a.nodes {
            let _ = writeln!(out, "  node {}", label(n));
        }
        for e in &a.edges {
            let _ = writeln!(out, "  edge {} -- {} ({})", e.u, e.v, e.w);
        }
    }
    out
}

fn quote(s: &str) -> String {
    let mut q = String::with_capacity(s.len() + 2);
    q.push('"');
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            '\n' => q.push_str("\\n"),
            c => q.push(c),
        }
    }
    q.push('"');
    q
}

/// One cluster per answer. Content nodes are dotted, the root has a double
/// border.
pub fn dot(r: &QueryReport) -> String {
    let mut out = String::from("graph answers {\n  node [shape=box];\n");
    for (rank, a) in r.answers.iter().enumerate() {
        let id = |n: u32| format!("a{}_n{}", rank + 1, n);
        let _ = writeln!(out, "  subgraph cluster_{} {{", rank + 1);
        let _ = writeln!(out, "    label={};", quote(&format!("#{} C={:.6}", rank + 1, a.scores.c)));
        for n in &a.nodes {
            let mut attrs = vec![format!("label={}", quote(&label(n)))];
            if a.assignment.iter().any(|k| k.node == n.id) {
                attrs.push("style=dotted".into());
            }
            if n.id == a.root {
                attrs.push("peripheries=2".into());
            }
            let _ = writeln!(out, "    {} [{}];", id(n.id), attrs.join(", "));
        }
        for e in &a.edges {
            let _ = writeln!(out, "    {} -- {} [label={}];", id(e.u), id(e.v), quote(&e.w.to_string()));
        }
        out.push_str("  }\n");
    }
    out.push_str("}\n");
    out
}
