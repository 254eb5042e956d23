//! Exact 1-Wasserstein distance between vertex measures under the hop metric.
//!
//! [`wasserstein`] scales both measures by the least common multiple of their
//! mass denominators, solves the resulting integer transportation problem as a
//! min-cost flow on `support(mu) x support(nu)`, and divides back. The LP
//! oracle in [`wasserstein_bruteforce`] shares none of that machinery.
//!
//! Dual side: a [`LipschitzWitness`] is an integer potential `f` with
//! `|f(u) - f(v)| <= d(u, v)`; its value `sum f (mu - nu)` lower-bounds the
//! distance, and equality with a primal cost certifies both are optimal.

pub mod flow;
pub mod simplex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::graph::{Graph, Vertex, VertexMeasure};
use crate::Rational;
use flow::{MinCostFlow, INFINITE_CAPACITY};
use simplex::LpOutcome;

/// Largest combined support accepted by [`wasserstein_bruteforce`].
pub const ORACLE_SUPPORT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransportError {
    #[error("measure has total mass {0}, expected 1")]
    MeasureNotNormalized(Rational),
    #[error("measure support contains vertex {vertex}, graph has {vertex_count} vertices")]
    SupportOutOfRange { vertex: Vertex, vertex_count: usize },
    #[error("combined support {size} exceeds oracle limit {ORACLE_SUPPORT_LIMIT}")]
    OracleTooLarge { size: usize },
    #[error("scale {0} is not a positive common multiple of the mass denominators")]
    InvalidScale(i64),
    #[error("potential is not 1-Lipschitz: |f({u}) - f({v})| = {gap} > d = {distance}")]
    NotLipschitz {
        u: Vertex,
        v: Vertex,
        gap: i64,
        distance: u32,
    },
    #[error("potential has {got} values, graph has {expected} vertices")]
    WitnessLength { expected: usize, got: usize },
    #[error("recorded witness value {recorded} differs from recomputed {recomputed}")]
    WitnessValueMismatch {
        recorded: Rational,
        recomputed: Rational,
    },
    #[error("dual value {dual} exceeds claimed distance {claimed}")]
    DualExceedsClaim { dual: Rational, claimed: Rational },
}

/// A coupling between two measures together with its transport cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportPlan {
    entries: Vec<(Vertex, Vertex, Rational)>,
    cost: Rational,
}

impl TransportPlan {
    /// Builds a plan from explicit entries, computing its cost on `g`.
    /// Zero entries are dropped; negative ones are kept so that
    /// [`TransportPlan::is_coupling`] can reject them.
    pub fn from_entries(g: &Graph, entries: Vec<(Vertex, Vertex, Rational)>) -> Self {
        let entries: Vec<_> = entries.into_iter().filter(|e| !e.2.is_zero()).collect();
        let cost = entries
            .iter()
            .map(|&(u, v, mass)| mass * Rational::from_integer(g.distance(u, v) as i64))
            .sum();
        Self { entries, cost }
    }

    pub fn entries(&self) -> &[(Vertex, Vertex, Rational)] {
        &self.entries
    }

    pub fn cost(&self) -> Rational {
        self.cost
    }

    /// Nonnegative entries whose row sums are `mu` and column sums are `nu`.
    pub fn is_coupling(&self, mu: &VertexMeasure, nu: &VertexMeasure) -> bool {
        if self.entries.iter().any(|e| e.2 < Rational::zero()) {
            return false;
        }
        let rows = VertexMeasure::new(self.entries.iter().map(|&(u, _, m)| (u, m)));
        let cols = VertexMeasure::new(self.entries.iter().map(|&(_, v, m)| (v, m)));
        matches!((rows, cols), (Ok(r), Ok(c)) if r == *mu && c == *nu)
    }
}

fn validate(g: &Graph, measure: &VertexMeasure) -> Result<(), TransportError> {
    let vertex_count = g.vertex_count();
    if let Some(&(vertex, _)) = measure.support().iter().find(|e| e.0 >= vertex_count) {
        return Err(TransportError::SupportOutOfRange {
            vertex,
            vertex_count,
        });
    }
    if !measure.is_probability() {
        return Err(TransportError::MeasureNotNormalized(measure.total_mass()));
    }
    Ok(())
}

/// Least common multiple of all mass denominators of both measures.
pub fn common_denominator(mu: &VertexMeasure, nu: &VertexMeasure) -> i64 {
    mu.support()
        .iter()
        .chain(nu.support())
        .fold(1i64, |acc, &(_, m)| acc.lcm(m.denom()))
}

/// Exact `W(mu, nu)` with an optimal coupling.
pub fn wasserstein(
    g: &Graph,
    mu: &VertexMeasure,
    nu: &VertexMeasure,
) -> Result<(Rational, TransportPlan), TransportError> {
    let scale = common_denominator(mu, nu);
    wasserstein_with_scale(g, mu, nu, scale)
}

/// [`wasserstein`] with an explicit integer scale, which must be a positive
/// multiple of every mass denominator. The result does not depend on it.
pub fn wasserstein_with_scale(
    g: &Graph,
    mu: &VertexMeasure,
    nu: &VertexMeasure,
    scale: i64,
) -> Result<(Rational, TransportPlan), TransportError> {
    validate(g, mu)?;
    validate(g, nu)?;
    if scale <= 0 || scale % common_denominator(mu, nu) != 0 {
        return Err(TransportError::InvalidScale(scale));
    }
    if mu == nu {
        let entries = mu.support().iter().map(|&(v, m)| (v, v, m)).collect();
        return Ok((Rational::zero(), TransportPlan::from_entries(g, entries)));
    }
    let network = TransportNetwork::solve(g, mu, nu, scale);
    let value = Rational::new(network.cost, scale);
    let entries = network
        .arcs
        .iter()
        .filter_map(|&(i, j, arc)| {
            let units = network.net.flow_on(arc);
            (units > 0).then(|| {
                (
                    mu.support()[i].0,
                    nu.support()[j].0,
                    Rational::new(units, scale),
                )
            })
        })
        .collect();
    let plan = TransportPlan::from_entries(g, entries);
    debug_assert_eq!(plan.cost(), value);
    Ok((value, plan))
}

struct TransportNetwork {
    net: MinCostFlow,
    // (source support index, target support index, arc id)
    arcs: Vec<(usize, usize, usize)>,
    sources: usize,
    cost: i64,
}

impl TransportNetwork {
    fn solve(g: &Graph, mu: &VertexMeasure, nu: &VertexMeasure, scale: i64) -> Self {
        let (s, t) = (mu.support(), nu.support());
        let source = s.len() + t.len();
        let sink = source + 1;
        let mut net = MinCostFlow::new(sink + 1);
        let units = |m: Rational| (m * Rational::from_integer(scale)).to_integer();
        for (i, &(_, m)) in s.iter().enumerate() {
            net.add_arc(source, i, units(m), 0);
        }
        for (j, &(_, m)) in t.iter().enumerate() {
            net.add_arc(s.len() + j, sink, units(m), 0);
        }
        let mut arcs = Vec::with_capacity(s.len() * t.len());
        for (i, &(u, _)) in s.iter().enumerate() {
            for (j, &(v, _)) in t.iter().enumerate() {
                let id = net.add_arc(i, s.len() + j, INFINITE_CAPACITY, g.distance(u, v) as i64);
                arcs.push((i, j, id));
            }
        }
        let outcome = net.run(source, sink, scale);
        debug_assert_eq!(outcome.flow, scale);
        Self {
            net,
            arcs,
            sources: s.len(),
            cost: outcome.cost,
        }
    }
}

/// Independent LP oracle for `W(mu, nu)`.
///
/// Variables are every pair in `S x S` where `S` is the union of both
/// supports, so no arc restriction is assumed; marginal equalities are imposed
/// on all of `S`. Solved by the exact rational simplex in [`simplex`].
pub fn wasserstein_bruteforce(
    g: &Graph,
    mu: &VertexMeasure,
    nu: &VertexMeasure,
) -> Result<Rational, TransportError> {
    validate(g, mu)?;
    validate(g, nu)?;
    let mut support: Vec<Vertex> = mu
        .support()
        .iter()
        .chain(nu.support())
        .map(|e| e.0)
        .collect();
    support.sort_unstable();
    support.dedup();
    let k = support.len();
    if k > ORACLE_SUPPORT_LIMIT {
        return Err(TransportError::OracleTooLarge { size: k });
    }
    let big = |r: Rational| BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()));
    let zero = BigRational::zero();
    let one = BigRational::one();

    let mut cost = Vec::with_capacity(k * k);
    for &u in &support {
        for &v in &support {
            cost.push(BigRational::from_integer(BigInt::from(g.distance(u, v))));
        }
    }
    let mut a = Vec::with_capacity(2 * k);
    let mut b = Vec::with_capacity(2 * k);
    for (i, &u) in support.iter().enumerate() {
        let mut row = vec![zero.clone(); k * k];
        for cell in row.iter_mut().skip(i * k).take(k) {
            *cell = one.clone();
        }
        a.push(row);
        b.push(big(mu.mass(u)));
    }
    for (j, &v) in support.iter().enumerate() {
        let mut row = vec![zero.clone(); k * k];
        for i in 0..k {
            row[i * k + j] = one.clone();
        }
        a.push(row);
        b.push(big(nu.mass(v)));
    }
    match simplex::minimize(&cost, &a, &b) {
        LpOutcome::Optimal { value, .. } => {
            let n = value.numer().to_i64().expect("oracle value fits i64");
            let d = value.denom().to_i64().expect("oracle value fits i64");
            Ok(Rational::new(n, d))
        }
        other => unreachable!("transportation LP with valid marginals is feasible and bounded: {other:?}"),
    }
}

/// An integer potential on every vertex, with the value it attains on `(mu, nu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LipschitzWitness {
    values: Vec<i64>,
    attained_value: Rational,
}

impl LipschitzWitness {
    /// `values[v]` is `f(v)`; the attained value `sum f (mu - nu)` is computed here.
    pub fn new(values: Vec<i64>, mu: &VertexMeasure, nu: &VertexMeasure) -> Self {
        let attained_value = pairing(&values, mu, nu);
        Self {
            values,
            attained_value,
        }
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn attained_value(&self) -> Rational {
        self.attained_value
    }
}

fn pairing(values: &[i64], mu: &VertexMeasure, nu: &VertexMeasure) -> Rational {
    let side = |m: &VertexMeasure| -> Rational {
        m.support()
            .iter()
            .map(|&(v, mass)| mass * Rational::from_integer(values.get(v).copied().unwrap_or(0)))
            .sum()
    };
    side(mu) - side(nu)
}

/// Result of [`check_dual_witness`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DualCertificate {
    pub dual_value: Rational,
    pub claimed: Rational,
    /// `dual_value == claimed`: the claimed distance is the optimum and the
    /// witness is an optimal potential.
    pub optimal: bool,
}

/// Checks that `f` is 1-Lipschitz on all vertex pairs and that its value does
/// not exceed the claimed distance `w`.
pub fn check_dual_witness(
    g: &Graph,
    mu: &VertexMeasure,
    nu: &VertexMeasure,
    f: &LipschitzWitness,
    w: Rational,
) -> Result<DualCertificate, TransportError> {
    let n = g.vertex_count();
    if f.values.len() != n {
        return Err(TransportError::WitnessLength {
            expected: n,
            got: f.values.len(),
        });
    }
    for u in 0..n {
        for v in u + 1..n {
            let gap = (f.values[u] - f.values[v]).abs();
            let distance = g.distance(u, v);
            if gap > distance as i64 {
                return Err(TransportError::NotLipschitz {
                    u,
                    v,
                    gap,
                    distance,
                });
            }
        }
    }
    let recomputed = pairing(&f.values, mu, nu);
    if recomputed != f.attained_value {
        return Err(TransportError::WitnessValueMismatch {
            recorded: f.attained_value,
            recomputed,
        });
    }
    if recomputed > w {
        return Err(TransportError::DualExceedsClaim {
            dual: recomputed,
            claimed: w,
        });
    }
    Ok(DualCertificate {
        dual_value: recomputed,
        claimed: w,
        optimal: recomputed == w,
    })
}

/// An optimal integer Kantorovich potential recovered from the flow solver.
///
/// Residual-network potentials give integer duals on both supports; the
/// extension `f(w) = min_j (beta_j + d(w, t_j))` over target support points
/// `t_j` is 1-Lipschitz on the whole graph and attains `W(mu, nu)`.
pub fn optimal_potential(
    g: &Graph,
    mu: &VertexMeasure,
    nu: &VertexMeasure,
) -> Result<LipschitzWitness, TransportError> {
    validate(g, mu)?;
    validate(g, nu)?;
    if mu == nu {
        return Ok(LipschitzWitness::new(vec![0; g.vertex_count()], mu, nu));
    }
    let scale = common_denominator(mu, nu);
    let network = TransportNetwork::solve(g, mu, nu, scale);
    let p = network.net.residual_potentials();
    let targets: Vec<(Vertex, i64)> = nu
        .support()
        .iter()
        .enumerate()
        .map(|(j, &(v, _))| (v, -p[network.sources + j]))
        .collect();
    let values = g
        .vertices()
        .map(|w| {
            targets
                .iter()
                .map(|&(t, beta)| beta + g.distance(w, t) as i64)
                .min()
                .expect("target support is non-empty")
        })
        .collect();
    Ok(LipschitzWitness::new(values, mu, nu))
}
