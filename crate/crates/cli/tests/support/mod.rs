#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn gks(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gks")).args(args).output().expect("gks runs")
}

pub fn ok(args: &[&str]) -> String {
    let out = gks(args);
    assert!(out.status.success(), "gks {args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

pub fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

/// Ingests the movie fixture into `dir`.
pub fn movie_workspace(dir: &Path) {
    let f = fixture("imdb");
    ok(&["ingest", s(&f.join("nodes.tsv")), s(&f.join("edges.tsv")), "--out", s(dir)]);
}

/// Node ids and edge pairs of a parsed DOT graph.
pub type DotGraph = (Vec<String>, Vec<(String, String)>);

/// Minimal recursive-descent check of the DOT grammar: strict/graph header,
/// statement lists with node, edge, attribute and subgraph statements, and
/// `ID = ID` assignments. Returns the node ids seen and the edge pairs.
pub fn parse_dot(src: &str) -> Result<DotGraph, String> {
    let tokens = lex(src)?;
    let mut p = Parser { t: tokens, i: 0, nodes: Vec::new(), edges: Vec::new() };
    p.graph()?;
    if p.i != p.t.len() {
        return Err(format!("trailing tokens after graph: {:?}", &p.t[p.i..]));
    }
    Ok((p.nodes, p.edges))
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Id(String),
    Sym(&'static str),
}

fn lex(src: &str) -> Result<Vec<Tok>, String> {
    let c: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < c.len() {
        let ch = c[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match c.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        s.push(*c.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some(&x) => {
                        s.push(x);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Id(s));
        } else if ch == '-' && c.get(i + 1) == Some(&'-') {
            out.push(Tok::Sym("--"));
            i += 2;
        } else if ch == '-' && c.get(i + 1) == Some(&'>') {
            out.push(Tok::Sym("->"));
            i += 2;
        } else if let Some(sym) = ["{", "}", "[", "]", ";", ",", "="].iter().find(|s| s.starts_with(ch)) {
            out.push(Tok::Sym(sym));
            i += 1;
        } else if ch.is_alphanumeric() || ch == '_' || ch == '.' || ch == '-' {
            let start = i;
            while i < c.len() && (c[i].is_alphanumeric() || c[i] == '_' || c[i] == '.') {
                i += 1;
            }
            if i == start {
                return Err(format!("stray {ch:?}"));
            }
            out.push(Tok::Id(c[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character {ch:?}"));
        }
    }
    Ok(out)
}

struct Parser {
    t: Vec<Tok>,
    i: usize,
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.t.get(self.i)
    }

    fn sym(&mut self, s: &'static str) -> Result<(), String> {
        match self.peek() {
            Some(Tok::Sym(x)) if *x == s => {
                self.i += 1;
                Ok(())
            }
            other => Err(format!("expected {s:?}, found {other:?}")),
        }
    }

    fn eat(&mut self, s: &'static str) -> bool {
        self.sym(s).is_ok()
    }

    fn id(&mut self) -> Result<String, String> {
        match self.peek().cloned() {
            Some(Tok::Id(x)) => {
                self.i += 1;
                Ok(x)
            }
            other => Err(format!("expected identifier, found {other:?}")),
        }
    }

    fn graph(&mut self) -> Result<(), String> {
        let mut kw = self.id()?;
        if kw == "strict" {
            kw = self.id()?;
        }
        if kw != "graph" {
            return Err(format!("expected undirected graph, found {kw}"));
        }
        if matches!(self.peek(), Some(Tok::Id(_))) {
            self.id()?;
        }
        self.block()
    }

    fn block(&mut self) -> Result<(), String> {
        self.sym("{")?;
        while !self.eat("}") {
            self.stmt()?;
            self.eat(";");
        }
        Ok(())
    }

    fn attrs(&mut self) -> Result<(), String> {
        while self.eat("[") {
            while !self.eat("]") {
                self.id()?;
                self.sym("=")?;
                self.id()?;
                if !self.eat(",") {
                    self.eat(";");
                }
            }
        }
        Ok(())
    }

    fn stmt(&mut self) -> Result<(), String> {
        if matches!(self.peek(), Some(Tok::Sym("{"))) {
            return self.block();
        }
        let first = self.id()?;
        match first.as_str() {
            "subgraph" => {
                if matches!(self.peek(), Some(Tok::Id(_))) {
                    self.id()?;
                }
                return self.block();
            }
            "graph" | "node" | "edge" => return self.attrs(),
            _ => {}
        }
        if self.eat("=") {
            self.id()?;
            return Ok(());
        }
        if matches!(self.peek(), Some(Tok::Sym("->"))) {
            return Err("directed edge in an undirected graph".into());
        }
        let mut prev = first;
        let mut is_edge = false;
        while self.eat("--") {
            let next = self.id()?;
            self.edges.push((prev.clone(), next.clone()));
            prev = next;
            is_edge = true;
        }
        if !is_edge {
            self.nodes.push(prev);
        }
        self.attrs()
    }
}
