//! Keyword lookup: tokenizer, keyword phrases and the token → node inverted index.

use std::collections::BTreeMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::TextError;
use crate::graph::{Graph, NodeId};

/// Lowercase alphanumeric token.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Token(String);

impl Token {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Lowercases and splits on every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<Token> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|piece| !piece.is_empty())
        .map(|piece| Token(piece.to_lowercase()))
        .collect()
}

/// One query keyword. Multi-word phrases match contiguous token runs.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KeywordPhrase {
    raw: String,
    tokens: Vec<Token>,
}

impl KeywordPhrase {
    pub fn parse(raw: &str) -> Result<Self, TextError> {
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            return Err(TextError::EmptyPhrase(raw.to_owned()));
        }
        Ok(KeywordPhrase { raw: raw.to_owned(), tokens })
    }

    pub fn raw(&self) -> &str {
        &self.raw
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    /// Whether `text` contains this phrase as a contiguous token run.
    pub fn matches(&self, text: &str) -> bool {
        contains_run(&tokenize(text), &self.tokens)
    }
}

impl fmt::Display for KeywordPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.raw)
    }
}

fn contains_run(haystack: &[Token], needle: &[Token]) -> bool {
    needle.len() <= haystack.len() && haystack.windows(needle.len()).any(|w| w == needle)
}

/// Token → ascending, duplicate-free node ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvertedIndex {
    postings: BTreeMap<Token, Vec<NodeId>>,
}

impl InvertedIndex {
    pub fn build(g: &Graph) -> Self {
        let mut postings: BTreeMap<Token, Vec<NodeId>> = BTreeMap::new();
        for node in g.nodes() {
            for token in tokenize(&node.text) {
                let list = postings.entry(token).or_default();
                // nodes are visited in id order, so a repeat can only be the tail
                if list.last() != Some(&node.id) {
                    list.push(node.id);
                }
            }
        }
        InvertedIndex { postings }
    }

    pub fn postings(&self, token: &Token) -> &[NodeId] {
        self.postings.get(token).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn token_count(&self) -> usize {
        self.postings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Token, &[NodeId])> {
        self.postings.iter().map(|(t, ids)| (t, ids.as_slice()))
    }

    /// Nodes containing `phrase`, ascending. Postings are intersected first;
    /// multi-token phrases are then checked for contiguity against node text.
    pub fn content_nodes(&self, g: &Graph, phrase: &KeywordPhrase) -> Vec<NodeId> {
        let mut lists: Vec<&[NodeId]> = phrase.tokens().iter().map(|t| self.postings(t)).collect();
        lists.sort_by_key(|l| l.len());
        let Some((shortest, rest)) = lists.split_first() else {
            return Vec::new();
        };
        let candidates = shortest.iter().copied().filter(|id| rest.iter().all(|l| l.binary_search(id).is_ok()));
        if phrase.tokens().len() == 1 {
            return candidates.collect();
        }
        candidates.filter(|&id| phrase.matches(&g.node(id).text)).collect()
    }

    /// Sorted TSV, one `token<TAB>id,id,...` line per token.
    pub fn write_tsv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        for (token, ids) in &self.postings {
            write!(out, "{token}\t")?;
            for (i, id) in ids.iter().enumerate() {
                if i > 0 {
                    out.write_all(b",")?;
                }
                write!(out, "{id}")?;
            }
            out.write_all(b"\n")?;
        }
        out.flush()
    }

    pub fn read_tsv<R: BufRead>(reader: R, origin: &Path) -> Result<Self, TextError> {
        let err = |line: usize, message: String| TextError::Parse { path: origin.to_owned(), line, message };
        let mut postings = BTreeMap::new();
        let mut previous: Option<Token> = None;
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let (token, ids) = line.split_once('\t').ok_or_else(|| err(i + 1, "missing tab".into()))?;
            let parsed = tokenize(token);
            if parsed.len() != 1 || parsed[0].as_str() != token {
                return Err(err(i + 1, format!("{token:?} is not a normalized token")));
            }
            let token = parsed.into_iter().next().unwrap();
            if previous.as_ref().is_some_and(|p| *p >= token) {
                return Err(err(i + 1, "tokens must be strictly ascending".into()));
            }
            let ids = ids
                .split(',')
                .map(|s| s.parse::<u32>().map(NodeId))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| err(i + 1, e.to_string()))?;
            if !ids.windows(2).all(|w| w[0] < w[1]) {
                return Err(err(i + 1, "posting list must be strictly ascending".into()));
            }
            previous = Some(token.clone());
            postings.insert(token, ids);
        }
        Ok(InvertedIndex { postings })
    }
}
