//! Undirected simple connected graphs with an eagerly computed hop metric.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::Rational;

/// Dense vertex id in `0..vertex_count`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no edges")]
    Empty,
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("graph is disconnected: no path from {0} to {1}")]
    DisconnectedGraph(Vertex, Vertex),
    #[error("({0}, {1}) is not an edge")]
    NotAnEdge(Vertex, Vertex),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// An immutable, connected, undirected simple graph.
///
/// Construction runs a breadth-first search from every vertex, so distance
/// queries are table lookups afterwards.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<Vertex>>,
    distances: Vec<u32>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph whose vertex set is `0..=max id` of the edge list.
    pub fn from_edges(edges: &[(Vertex, Vertex)]) -> Result<Self, GraphError> {
        let vertex_count = edges
            .iter()
            .map(|&(u, v)| u.max(v) + 1)
            .max()
            .ok_or(GraphError::Empty)?;
        Self::with_vertex_count(vertex_count, edges)
    }

    /// Builds a graph on exactly `vertex_count` vertices.
    pub fn with_vertex_count(
        vertex_count: usize,
        edges: &[(Vertex, Vertex)],
    ) -> Result<Self, GraphError> {
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); vertex_count];
        for &(a, b) in edges {
            for vertex in [a, b] {
                if vertex >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }

        let mut distances = vec![u32::MAX; vertex_count * vertex_count];
        let mut queue = VecDeque::new();
        for source in 0..vertex_count {
            let row = &mut distances[source * vertex_count..(source + 1) * vertex_count];
            row[source] = 0;
            queue.push_back(source);
            while let Some(x) = queue.pop_front() {
                let next = row[x] + 1;
                for &y in &adjacency[x] {
                    if row[y] == u32::MAX {
                        row[y] = next;
                        queue.push_back(y);
                    }
                }
            }
            if let Some(target) = row.iter().position(|&d| d == u32::MAX) {
                return Err(GraphError::DisconnectedGraph(source, target));
            }
        }

        Ok(Self {
            adjacency,
            distances,
            edge_count: edges.len(),
        })
    }

    /// Parses the edge-list text format and builds the graph.
    pub fn from_edge_list(text: &str) -> Result<Self, GraphError> {
        Self::from_edges(&parse_edge_list(text)?)
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count()
    }

    /// Sorted neighbours of `x`.
    pub fn neighbors(&self, x: Vertex) -> &[Vertex] {
        &self.adjacency[x]
    }

    pub fn degree(&self, x: Vertex) -> usize {
        self.adjacency[x].len()
    }

    pub fn is_edge(&self, x: Vertex, y: Vertex) -> bool {
        x < self.vertex_count() && y < self.vertex_count() && self.distance(x, y) == 1
    }

    /// Hop distance. Panics if either id is out of range.
    pub fn distance(&self, x: Vertex, y: Vertex) -> u32 {
        let n = self.vertex_count();
        assert!(x < n && y < n, "vertex out of range");
        self.distances[x * n + y]
    }

    pub fn diameter(&self) -> u32 {
        self.distances.iter().copied().max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    /// Number of triangles through the edge `(x, y)`, i.e. `|Γ(x) ∩ Γ(y)|`.
    pub fn triangle_count(&self, x: Vertex, y: Vertex) -> Result<usize, GraphError> {
        if !self.is_edge(x, y) {
            return Err(GraphError::NotAnEdge(x, y));
        }
        let (a, b) = (&self.adjacency[x], &self.adjacency[y]);
        let (mut i, mut j, mut count) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    count += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(count)
    }

    /// The simple random walk measure `m_x`: mass `1/d_x` on each neighbour.
    pub fn random_walk_measure(&self, x: Vertex) -> VertexMeasure {
        let mass = Rational::new(1, self.degree(x) as i64);
        VertexMeasure {
            support: self.adjacency[x].iter().map(|&v| (v, mass)).collect(),
        }
    }

    /// Serializes to the edge-list text format, one `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("vertex_count", &self.vertex_count())
            .field("adjacency", &self.adjacency)
            .finish()
    }
}

/// Parses whitespace-separated `u v` pairs, one per line. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
    let mut edges = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(GraphError::Parse {
                line,
                message: format!("expected two vertex ids, found {}", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<Vertex>().map_err(|_| GraphError::Parse {
                line,
                message: format!("invalid vertex id {s:?}"),
            })
        };
        edges.push((parse(fields[0])?, parse(fields[1])?));
    }
    Ok(edges)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("mass at vertex {0} is not strictly positive")]
    NonPositiveMass(Vertex),
}

/// A finitely supported measure with exact rational masses.
///
/// The support is kept sorted by vertex, with repeated vertices merged. The
/// total mass is not forced to 1 here; consumers that need a probability
/// measure check [`VertexMeasure::is_probability`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMeasure {
    support: Vec<(Vertex, Rational)>,
}

impl VertexMeasure {
    pub fn new<I>(entries: I) -> Result<Self, MeasureError>
    where
        I: IntoIterator<Item = (Vertex, Rational)>,
    {
        let mut merged: BTreeMap<Vertex, Rational> = BTreeMap::new();
        for (v, mass) in entries {
            if mass <= Rational::zero() {
                return Err(MeasureError::NonPositiveMass(v));
            }
            *merged.entry(v).or_insert_with(Rational::zero) += mass;
        }
        Ok(Self {
            support: merged.into_iter().collect(),
        })
    }

    pub fn point_mass(v: Vertex) -> Self {
        Self {
            support: vec![(v, Rational::one())],
        }
    }

    /// `(vertex, mass)` pairs sorted by vertex, all masses positive.
    pub fn support(&self) -> &[(Vertex, Rational)] {
        &self.support
    }

    pub fn mass(&self, v: Vertex) -> Rational {
        self.support
            .binary_search_by_key(&v, |&(u, _)| u)
            .map(|i| self.support[i].1)
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn total_mass(&self) -> Rational {
        self.support.iter().map(|&(_, m)| m).sum()
    }

    pub fn is_probability(&self) -> bool {
        self.total_mass() == Rational::one()
    }
}
