//! Ordered bases of canonical graphs.

use std::collections::HashMap;

use crate::graph::{decode_line, encode_line, ColoredGraph};

use super::{EngineError, SliceSpec};

/// A slice basis: canonical graphs sorted by their text key.
#[derive(Clone, Debug)]
pub struct Basis {
    spec: SliceSpec,
    graphs: Vec<ColoredGraph>,
    index: HashMap<ColoredGraph, usize>,
}

impl Basis {
    /// Builds a basis from canonical graphs, sorting by key and dropping
    /// duplicates.
    pub fn new(spec: SliceSpec, graphs: Vec<ColoredGraph>) -> Self {
        let mut keyed: Vec<(String, ColoredGraph)> = graphs.into_iter().map(|g| (encode_line(&g), g)).collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.0 == b.0);
        let graphs: Vec<ColoredGraph> = keyed.into_iter().map(|(_, g)| g).collect();
        let index = graphs.iter().cloned().zip(0..).collect();
        Basis { spec, graphs, index }
    }

    pub fn empty(spec: SliceSpec) -> Self {
        Self::new(spec, Vec::new())
    }

    pub fn spec(&self) -> &SliceSpec {
        &self.spec
    }

    pub fn dimension(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[ColoredGraph] {
        &self.graphs
    }

    /// Position of a canonical graph in the basis.
    pub fn index_of(&self, g: &ColoredGraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// One `<g6>[;colors]` line per basis element.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for g in &self.graphs {
            s.push_str(&encode_line(g));
            s.push('\n');
        }
        s
    }

    /// Parses [`Basis::to_text`] output; rejects unsorted or repeated keys.
    pub fn from_text(spec: SliceSpec, text: &str) -> Result<Self, EngineError> {
        let mut graphs = Vec::new();
        let mut prev: Option<&str> = None;
        for line in text.lines().filter(|l| !l.is_empty()) {
            if prev.is_some_and(|p| p >= line) {
                return Err(EngineError::Corrupt(format!("basis keys of {spec} not strictly sorted")));
            }
            prev = Some(line);
            graphs.push(decode_line(line).map_err(|e| EngineError::Corrupt(format!("{spec}: {e}")))?);
        }
        let index = graphs.iter().cloned().zip(0..).collect();
        Ok(Basis { spec, graphs, index })
    }
}
