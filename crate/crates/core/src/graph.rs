//! Vertex-labeled undirected simple graphs, used for both data and query roles.
//!
//! Text format, one record per line:
//!
//! ```text
//! # comment
//! t <|V|> <|E|>
//! v <id> <label> <degree>
//! e <src> <dst>
//! ```
//!
//! Vertex ids are dense and 0-based. Each undirected edge is listed once;
//! [`Graph::to_text`] always writes `src < dst`.

use std::collections::HashSet;
use std::fmt::{self, Write as _};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type Label = u32;

/// Undirected vertex-labeled simple graph in compressed adjacency form.
///
/// Adjacency lists are sorted ascending and free of self-loops and duplicates.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<Label>,
    offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
    label_count: usize,
}

impl Graph {
    /// Builds a graph from per-vertex labels and an undirected edge list.
    ///
    /// Rejects self-loops, duplicate edges (in either orientation) and
    /// endpoints outside `0..labels.len()`.
    pub fn from_edges(labels: Vec<Label>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = labels.len();
        let mut adj: Vec<Vec<VertexId>> = vec![Vec::new(); n];
        for &(a, b) in edges {
            for x in [a, b] {
                if x as usize >= n {
                    return Err(Error::UnknownVertex(x));
                }
            }
            if a == b {
                return Err(Error::InvalidConfig(format!("self-loop on vertex {a}")));
            }
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate edge at vertex {v}"
                )));
            }
        }
        Ok(Self::from_sorted_adjacency(labels, adj))
    }

    fn from_sorted_adjacency(labels: Vec<Label>, adj: Vec<Vec<VertexId>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0);
        let mut neighbors = Vec::with_capacity(adj.iter().map(Vec::len).sum());
        for list in adj {
            neighbors.extend_from_slice(&list);
            offsets.push(neighbors.len());
        }
        let label_count = labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0);
        Graph {
            labels,
            offsets,
            neighbors,
            label_count,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    /// Size of the label alphabet, i.e. one past the largest label in use.
    pub fn label_count(&self) -> usize {
        self.label_count
    }

    pub fn label(&self, v: VertexId) -> Label {
        self.labels[v as usize]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn degree(&self, v: VertexId) -> usize {
        let v = v as usize;
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        let v = v as usize;
        &self.neighbors[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.neighbors(a).binary_search(&b).is_ok()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count() as VertexId)
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    pub fn average_degree(&self) -> f64 {
        if self.labels.is_empty() {
            0.0
        } else {
            2.0 * self.edge_count() as f64 / self.vertex_count() as f64
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        0..self.vertex_count() as VertexId
    }

    /// Undirected edges with `src < dst`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |a| {
            self.neighbors(a)
                .iter()
                .copied()
                .filter(move |&b| a < b)
                .map(move |b| (a, b))
        })
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0 as VertexId];
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == n
    }

    /// Parses the text format. Any malformed record rejects the whole input.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize, usize)> = None;
        let mut labels: Vec<Option<(Label, usize)>> = Vec::new();
        let mut adj: Vec<Vec<VertexId>> = Vec::new();
        let mut edges_seen = 0usize;
        let mut seen_edges: HashSet<(VertexId, VertexId)> = HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let tag = fields.next().unwrap_or_default();
            let nums = fields
                .map(|f| {
                    f.parse::<u64>()
                        .map_err(|_| Error::parse(line_no, format!("invalid number `{f}`")))
                })
                .collect::<Result<Vec<_>>>()?;

            match tag {
                "t" => {
                    if header.is_some() {
                        return Err(Error::parse(line_no, "duplicate header"));
                    }
                    let [n, m] = nums[..] else {
                        return Err(Error::parse(line_no, "expected `t <|V|> <|E|>`"));
                    };
                    let n = n as usize;
                    if n > VertexId::MAX as usize {
                        return Err(Error::parse(line_no, "too many vertices"));
                    }
                    header = Some((n, m as usize, line_no));
                    labels = vec![None; n];
                    adj = vec![Vec::new(); n];
                }
                "v" => {
                    let Some((n, _, _)) = header else {
                        return Err(Error::parse(line_no, "vertex before header"));
                    };
                    let [id, label, degree] = nums[..] else {
                        return Err(Error::parse(line_no, "expected `v <id> <label> <degree>`"));
                    };
                    if id as usize >= n {
                        return Err(Error::parse(line_no, format!("vertex id {id} out of range")));
                    }
                    if label > Label::MAX as u64 {
                        return Err(Error::parse(line_no, "label out of range"));
                    }
                    let slot = &mut labels[id as usize];
                    if slot.is_some() {
                        return Err(Error::parse(line_no, format!("duplicate vertex {id}")));
                    }
                    *slot = Some((label as Label, degree as usize));
                }
                "e" => {
                    let Some((n, _, _)) = header else {
                        return Err(Error::parse(line_no, "edge before header"));
                    };
                    let [a, b] = nums[..] else {
                        return Err(Error::parse(line_no, "expected `e <src> <dst>`"));
                    };
                    for x in [a, b] {
                        if x as usize >= n || labels[x as usize].is_none() {
                            return Err(Error::parse(
                                line_no,
                                format!("edge references unknown vertex {x}"),
                            ));
                        }
                    }
                    if a == b {
                        return Err(Error::parse(line_no, format!("self-loop on vertex {a}")));
                    }
                    let (a, b) = (a as VertexId, b as VertexId);
                    if !seen_edges.insert((a.min(b), a.max(b))) {
                        return Err(Error::parse(line_no, format!("duplicate edge ({a}, {b})")));
                    }
                    adj[a as usize].push(b);
                    adj[b as usize].push(a);
                    edges_seen += 1;
                }
                other => {
                    return Err(Error::parse(line_no, format!("unknown record `{other}`")));
                }
            }
        }

        let Some((n, m, header_line)) = header else {
            return Err(Error::parse(0, "missing `t` header"));
        };
        if edges_seen != m {
            return Err(Error::parse(
                header_line,
                format!("header declares {m} edges, found {edges_seen}"),
            ));
        }
        let mut vertex_labels = Vec::with_capacity(n);
        for (v, slot) in labels.iter().enumerate() {
            let Some((label, declared)) = *slot else {
                return Err(Error::parse(header_line, format!("vertex {v} is missing")));
            };
            if declared != adj[v].len() {
                return Err(Error::parse(
                    header_line,
                    format!(
                        "vertex {v} declares degree {declared}, has {}",
                        adj[v].len()
                    ),
                ));
            }
            vertex_labels.push(label);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self::from_sorted_adjacency(vertex_labels, adj))
    }

    /// Serializes to the text format. `parse(to_text(g)) == g`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "t {} {}", self.vertex_count(), self.edge_count()).unwrap();
        for v in self.vertices() {
            writeln!(out, "v {} {} {}", v, self.label(v), self.degree(v)).unwrap();
        }
        for (a, b) in self.edges() {
            writeln!(out, "e {a} {b}").unwrap();
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertex_count())
            .field("edges", &self.edge_count())
            .field("labels", &self.label_count)
            .finish()
    }
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    Graph::parse(&text)
}

pub fn save_graph(graph: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, graph.to_text()).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })
}

/// Data vertices that pass the label and degree filter for query vertex `u`,
/// sorted ascending.
pub fn candidates_by_local_features(data: &Graph, query: &Graph, u: usize) -> Vec<VertexId> {
    let u = u as VertexId;
    let label = query.label(u);
    let degree = query.degree(u);
    data.vertices()
        .filter(|&v| data.label(v) == label && data.degree(v) >= degree)
        .collect()
}

/// A complete match. Position `i` holds the image of the `i`-th query vertex
/// of the matching order it was produced under.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Embedding(pub Vec<VertexId>);

impl Embedding {
    pub fn as_slice(&self) -> &[VertexId] {
        &self.0
    }

    /// Reorders into query-vertex-id order: result `[u]` is the image of `u`.
    pub fn by_query_vertex(&self, order: &[usize]) -> Vec<VertexId> {
        let mut out = vec![0; order.len()];
        for (i, &u) in order.iter().enumerate() {
            out[u] = self.0[i];
        }
        out
    }
}

impl fmt::Display for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}
