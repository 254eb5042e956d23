//! Shared graph corpus for the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ricci_core::gluing::{build_gluing, GluingSpec};
use ricci_core::{Graph, Rational, Vertex, VertexMeasure};

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(&edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(&edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    Graph::from_edges(&edges).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(&edges).unwrap()
}

pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<_> = (1..=rim).map(|i| (0, i)).collect();
    edges.extend((1..=rim).map(|i| (i, i % rim + 1)));
    Graph::from_edges(&edges).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (0..b).map(move |j| (i, a + j))).collect();
    Graph::from_edges(&edges).unwrap()
}

pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let edges: Vec<_> = (0..n)
        .flat_map(|x| (0..dim).map(move |b| (x, x ^ (1 << b))))
        .filter(|&(x, y)| x < y)
        .collect();
    Graph::from_edges(&edges).unwrap()
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(&edges).unwrap()
}

/// A connected graph: a random spanning tree plus each other pair with
/// probability `density`.
pub fn random_connected(rng: &mut impl Rng, n: usize, density: f64) -> Graph {
    let mut order: Vec<Vertex> = (0..n).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let (a, b) = (parent.min(order[i]), parent.max(order[i]));
        edges.push((a, b));
    }
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::with_vertex_count(n, &edges).unwrap()
}

/// A random probability measure on at most `max_support` vertices whose
/// masses have denominators dividing `1..=12`.
pub fn random_measure(rng: &mut impl Rng, n: usize, max_support: usize) -> VertexMeasure {
    let size = rng.gen_range(1..=max_support.min(n));
    let mut vertices: Vec<Vertex> = (0..n).collect();
    vertices.shuffle(rng);
    vertices.truncate(size);
    let den = rng.gen_range(size as i64..=12.max(size as i64));
    // Split `den` into `size` positive parts.
    let mut cuts: Vec<i64> = (1..den).collect();
    cuts.shuffle(rng);
    cuts.truncate(size - 1);
    cuts.sort_unstable();
    let mut parts = Vec::with_capacity(size);
    let mut prev = 0;
    for c in cuts.into_iter().chain(std::iter::once(den)) {
        parts.push(c - prev);
        prev = c;
    }
    VertexMeasure::new(
        vertices
            .into_iter()
            .zip(parts)
            .map(|(v, p)| (v, Rational::new(p, den))),
    )
    .unwrap()
}

/// Named graphs used by the corpus-wide invariants: classic families, every
/// gluing `K_n +_m K'_n` with `2n <= 14`, and seeded random connected graphs.
pub fn corpus() -> Vec<(String, Graph)> {
    let mut out: Vec<(String, Graph)> = Vec::new();
    for n in 2..=8 {
        out.push((format!("K{n}"), complete(n)));
    }
    for n in 3..=10 {
        out.push((format!("C{n}"), cycle(n)));
    }
    for n in 2..=8 {
        out.push((format!("P{n}"), path(n)));
    }
    for k in 2..=6 {
        out.push((format!("star{k}"), star(k)));
    }
    for r in 4..=7 {
        out.push((format!("wheel{r}"), wheel(r)));
    }
    out.push(("K2,3".into(), complete_bipartite(2, 3)));
    out.push(("K3,3".into(), complete_bipartite(3, 3)));
    out.push(("K3,4".into(), complete_bipartite(3, 4)));
    out.push(("Q3".into(), hypercube(3)));
    out.push(("petersen".into(), petersen()));
    for n in 2..=7 {
        for m in 1..n {
            let spec = GluingSpec::new(n, m).unwrap();
            out.push((spec.to_string(), build_gluing(spec)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_c0de);
    for i in 0..16 {
        let n = rng.gen_range(4..=12);
        let density = [0.15, 0.3, 0.5][i % 3];
        out.push((format!("random{i}"), random_connected(&mut rng, n, density)));
    }
    out
}
