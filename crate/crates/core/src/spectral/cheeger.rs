//! Exhaustive Cheeger constants over vertex subsets, encoded as bitmasks.

use std::cmp::Ordering;

use crate::graph::{Graph, Vertex};
use crate::Rational;

use super::SpectralError;

/// Largest vertex count accepted by the exhaustive enumeration.
pub const EXHAUSTIVE_VERTEX_LIMIT: usize = 20;

/// Which subsets take part in the minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SizeConstraint {
    /// `0 < |A| < |V|/2`; exact halves are excluded on even vertex counts.
    StrictHalf,
    /// `0 < |A| <= |V|/2`.
    AtMostHalf,
}

/// How the boundary is normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// `|∂A| / |A|`.
    Size(SizeConstraint),
    /// `|∂A| / vol(A)` over `0 < vol(A) <= vol(V)/2`, the conductance.
    Volume,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerReport {
    pub value: Rational,
    /// Sorted ascending.
    pub argmin_set: Vec<Vertex>,
    pub boundary_edges: usize,
    /// `|A|` or `vol(A)`, matching the normalization.
    pub denominator: usize,
}

/// Cheeger constant with the strict `|A| < |V|/2` size constraint.
pub fn cheeger_constant(g: &Graph) -> Result<CheegerReport, SpectralError> {
    cheeger_with(g, Normalization::Size(SizeConstraint::StrictHalf))
}

/// Volume-normalized Cheeger constant (conductance).
pub fn conductance(g: &Graph) -> Result<CheegerReport, SpectralError> {
    cheeger_with(g, Normalization::Volume)
}

/// Number of edges with exactly one endpoint in `set`, counted directly
/// from the edge list.
pub fn boundary_edge_count(g: &Graph, set: &[Vertex]) -> usize {
    g.edges()
        .filter(|&(u, v)| set.contains(&u) != set.contains(&v))
        .count()
}

fn mask_vertices(mask: u32) -> impl Iterator<Item = Vertex> {
    (0..32).filter(move |&i| mask >> i & 1 == 1)
}

/// Lexicographic order of the sorted vertex lists of two subsets.
fn lexicographic(a: u32, b: u32) -> Ordering {
    mask_vertices(a).cmp(mask_vertices(b))
}

pub fn cheeger_with(g: &Graph, normalization: Normalization) -> Result<CheegerReport, SpectralError> {
    let n = g.vertex_count();
    if n > EXHAUSTIVE_VERTEX_LIMIT {
        return Err(SpectralError::GraphTooLargeForExhaustive {
            vertex_count: n,
            limit: EXHAUSTIVE_VERTEX_LIMIT,
        });
    }
    let adjacency: Vec<u32> = g
        .vertices()
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    let total_volume: usize = degrees.iter().sum();

    let admissible = |size: usize, volume: usize| match normalization {
        Normalization::Size(SizeConstraint::StrictHalf) => size > 0 && 2 * size < n,
        Normalization::Size(SizeConstraint::AtMostHalf) => size > 0 && 2 * size <= n,
        Normalization::Volume => volume > 0 && 2 * volume <= total_volume,
    };

    // (boundary, denominator, mask)
    let mut best: Option<(usize, usize, u32)> = None;
    for mask in 1u32..(1u32 << n) {
        let size = mask.count_ones() as usize;
        let volume: usize = mask_vertices(mask).map(|v| degrees[v]).sum();
        if !admissible(size, volume) {
            continue;
        }
        let boundary: usize = mask_vertices(mask)
            .map(|v| (adjacency[v] & !mask).count_ones() as usize)
            .sum();
        let denominator = match normalization {
            Normalization::Size(_) => size,
            Normalization::Volume => volume,
        };
        let better = match best {
            None => true,
            Some((b, d, m)) => match (boundary * d).cmp(&(b * denominator)) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => lexicographic(mask, m) == Ordering::Less,
            },
        };
        if better {
            best = Some((boundary, denominator, mask));
        }
    }

    let (boundary, denominator, mask) = best.ok_or(SpectralError::NoAdmissibleSubset { vertex_count: n })?;
    Ok(CheegerReport {
        value: Rational::new(boundary as i64, denominator as i64),
        argmin_set: mask_vertices(mask).collect(),
        boundary_edges: boundary,
        denominator,
    })
}
