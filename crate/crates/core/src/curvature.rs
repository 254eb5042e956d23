//! Ollivier–Ricci curvature of the simple random walk, with the Jost–Liu
//! triangle-count estimates for adjacent pairs.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{Graph, GraphError, Vertex};
use crate::transport::{self, TransportError};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurvatureError {
    #[error("curvature needs two distinct vertices, got {0} twice")]
    SameVertex(Vertex),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Transport(#[from] TransportError),
}

/// Jost–Liu lower and upper estimates; only defined for adjacent pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JostLiuBounds {
    pub lower: Rational,
    pub upper: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub x: Vertex,
    pub y: Vertex,
    pub distance: u32,
    pub wasserstein: Rational,
    pub kappa: Rational,
    /// `None` unless `(x, y)` is an edge.
    pub jost_liu: Option<JostLiuBounds>,
}

/// `kappa(x, y) = 1 - W(m_x, m_y) / d(x, y)`.
pub fn ricci_curvature(g: &Graph, x: Vertex, y: Vertex) -> Result<CurvatureReport, CurvatureError> {
    if x == y {
        return Err(CurvatureError::SameVertex(x));
    }
    for vertex in [x, y] {
        if vertex >= g.vertex_count() {
            return Err(GraphError::VertexOutOfRange {
                vertex,
                vertex_count: g.vertex_count(),
            }
            .into());
        }
    }
    let distance = g.distance(x, y);
    let (wasserstein, _) =
        transport::wasserstein(g, &g.random_walk_measure(x), &g.random_walk_measure(y))?;
    let kappa = Rational::one() - wasserstein / Rational::from_integer(distance as i64);
    let jost_liu = if distance == 1 {
        Some(JostLiuBounds {
            lower: jost_liu_lower(g, x, y)?,
            upper: jost_liu_upper(g, x, y)?,
        })
    } else {
        None
    };
    Ok(CurvatureReport {
        x,
        y,
        distance,
        wasserstein,
        kappa,
        jost_liu,
    })
}

fn positive_part(s: Rational) -> Rational {
    if s > Rational::zero() {
        s
    } else {
        Rational::zero()
    }
}

/// `-(1 - 1/d_x - 1/d_y - #/(d_x ∧ d_y))₊ - (1 - 1/d_x - 1/d_y - #/(d_x ∨ d_y))₊ + #/(d_x ∨ d_y)`
pub fn jost_liu_lower(g: &Graph, x: Vertex, y: Vertex) -> Result<Rational, CurvatureError> {
    let triangles = Rational::from_integer(g.triangle_count(x, y)? as i64);
    let (dx, dy) = (g.degree(x) as i64, g.degree(y) as i64);
    let base = Rational::one() - Rational::new(1, dx) - Rational::new(1, dy);
    let small = Rational::from_integer(dx.min(dy));
    let large = Rational::from_integer(dx.max(dy));
    Ok(-positive_part(base - triangles / small) - positive_part(base - triangles / large)
        + triangles / large)
}

/// `#(x, y) / (d_x ∨ d_y)`.
pub fn jost_liu_upper(g: &Graph, x: Vertex, y: Vertex) -> Result<Rational, CurvatureError> {
    let triangles = g.triangle_count(x, y)? as i64;
    Ok(Rational::new(triangles, g.degree(x).max(g.degree(y)) as i64))
}

/// Curvature report for every edge, in lexicographic edge order.
pub fn edge_curvatures(g: &Graph) -> Result<Vec<CurvatureReport>, CurvatureError> {
    g.edges().map(|(x, y)| ricci_curvature(g, x, y)).collect()
}

/// The minimum edge curvature and the lexicographically smallest edge attaining it.
pub fn min_edge_curvature(g: &Graph) -> Result<(Rational, (Vertex, Vertex)), CurvatureError> {
    let mut best: Option<(Rational, (Vertex, Vertex))> = None;
    for (x, y) in g.edges() {
        let kappa = ricci_curvature(g, x, y)?.kappa;
        if best.is_none_or(|(k, _)| kappa < k) {
            best = Some((kappa, (x, y)));
        }
    }
    Ok(best.expect("graphs have at least one edge"))
}
