//! The m-gluing `K_n +_m K'_n` of two complete graphs.
//!
//! Labeling: `u_i ↦ i` and `v_j ↦ n + j` for `0 <= i, j < n`. The hubs are
//! `u_0` and `v_0`. The gluing adds the bridge `(u_0, v_0)`, the spokes
//! `(u_0, v_i)` and `(u_i, v_0)` for `1 <= i <= m`. Vertices `u_1..u_m` are
//! *attached* (adjacent to `v_0`), `u_{m+1}..u_{n-1}` are *free*; the same on
//! the primed side.

pub mod witness;

use std::fmt;

use thiserror::Error;

use crate::curvature::{self, CurvatureError};
use crate::graph::{Graph, Vertex};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GluingError {
    #[error("invalid gluing parameters n = {n}, m = {m}: need n >= 2 and 1 <= m <= n - 1")]
    InvalidSpec { n: usize, m: usize },
    #[error("n = {0} is below the main-theorem range n >= 5")]
    NTooSmall(usize),
    #[error("({0}, {1}) is not an edge of the gluing")]
    NotAnEdge(Vertex, Vertex),
    #[error("edge class {class} has no edges for n = {n}, m = {m}")]
    ClassEmptyForSpec { class: EdgeClass, n: usize, m: usize },
    #[error("witness {name} is not defined for n = {n}, m = {m}")]
    WitnessNotApplicable { name: &'static str, n: usize, m: usize },
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
}

/// Parameters `(n, m)` of `K_n +_m K'_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GluingSpec {
    n: usize,
    m: usize,
}

/// Position of a vertex within the gluing, up to the K ↔ K' mirror.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Hub,
    Attached,
    Free,
}

impl GluingSpec {
    pub fn new(n: usize, m: usize) -> Result<Self, GluingError> {
        if n < 2 || m < 1 || m >= n {
            return Err(GluingError::InvalidSpec { n, m });
        }
        Ok(Self { n, m })
    }

    /// Like [`GluingSpec::new`] but also enforces `n >= 5`.
    pub fn for_main_theorem(n: usize, m: usize) -> Result<Self, GluingError> {
        if n < 5 {
            return Err(GluingError::NTooSmall(n));
        }
        Self::new(n, m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn u(&self, i: usize) -> Vertex {
        debug_assert!(i < self.n);
        i
    }

    pub fn v(&self, j: usize) -> Vertex {
        debug_assert!(j < self.n);
        self.n + j
    }

    pub fn free_count(&self) -> usize {
        self.n - 1 - self.m
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.n
    }

    /// `n(n - 1) + 2m + 1`.
    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) + 2 * self.m + 1
    }

    /// Whether `x` lies in the unprimed block `K_n`.
    pub fn in_first_block(&self, x: Vertex) -> bool {
        x < self.n
    }

    pub fn role(&self, x: Vertex) -> Role {
        match x % self.n {
            0 => Role::Hub,
            i if i <= self.m => Role::Attached,
            _ => Role::Free,
        }
    }

    /// The K ↔ K' mirror `u_i ↔ v_i`, an automorphism of the gluing.
    pub fn mirror(&self, x: Vertex) -> Vertex {
        if x < self.n {
            x + self.n
        } else {
            x - self.n
        }
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n;
        let mut edges = Vec::with_capacity(self.edge_count());
        for block in [0, n] {
            for i in 0..n {
                for j in i + 1..n {
                    edges.push((block + i, block + j));
                }
            }
        }
        edges.push((self.u(0), self.v(0)));
        for i in 1..=self.m {
            edges.push((self.u(0), self.v(i)));
            edges.push((self.u(i), self.v(0)));
        }
        edges
    }
}

impl fmt::Display for GluingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{n} +_{m} K'_{n}", n = self.n, m = self.m)
    }
}

pub fn build_gluing(spec: GluingSpec) -> Graph {
    Graph::with_vertex_count(spec.vertex_count(), &spec.edges())
        .expect("gluing edge set is simple and connected")
}

/// The seven edge orbits of the gluing under its symmetries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    /// `(u_0, v_0)`.
    Bridge,
    /// `(u_0, v_i)` with `v_i` attached.
    CrossSpoke,
    /// `(u_0, u_j)` with `u_j` attached.
    HubToAttached,
    /// Two attached vertices of one block.
    AttachedPair,
    /// An attached and a free vertex of one block.
    AttachedToFree,
    /// `(u_0, u'_k)` with `u'_k` free.
    HubToFree,
    /// Two free vertices of one block.
    FreePair,
}

impl EdgeClass {
    pub const ALL: [EdgeClass; 7] = [
        EdgeClass::Bridge,
        EdgeClass::CrossSpoke,
        EdgeClass::HubToAttached,
        EdgeClass::AttachedPair,
        EdgeClass::AttachedToFree,
        EdgeClass::HubToFree,
        EdgeClass::FreePair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            EdgeClass::Bridge => "bridge",
            EdgeClass::CrossSpoke => "cross-spoke",
            EdgeClass::HubToAttached => "hub-attached",
            EdgeClass::AttachedPair => "attached-pair",
            EdgeClass::AttachedToFree => "attached-free",
            EdgeClass::HubToFree => "hub-free",
            EdgeClass::FreePair => "free-pair",
        }
    }
}

impl fmt::Display for EdgeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn classify_edge(spec: GluingSpec, (a, b): (Vertex, Vertex)) -> Result<EdgeClass, GluingError> {
    let total = spec.vertex_count();
    if a >= total || b >= total || a == b {
        return Err(GluingError::NotAnEdge(a, b));
    }
    let (ra, rb) = (spec.role(a), spec.role(b));
    if spec.in_first_block(a) == spec.in_first_block(b) {
        use Role::*;
        return Ok(match (ra, rb) {
            (Hub, Attached) | (Attached, Hub) => EdgeClass::HubToAttached,
            (Hub, Free) | (Free, Hub) => EdgeClass::HubToFree,
            (Attached, Attached) => EdgeClass::AttachedPair,
            (Attached, Free) | (Free, Attached) => EdgeClass::AttachedToFree,
            (Free, Free) => EdgeClass::FreePair,
            (Hub, Hub) => unreachable!("one hub per block"),
        });
    }
    match (ra, rb) {
        (Role::Hub, Role::Hub) => Ok(EdgeClass::Bridge),
        (Role::Hub, Role::Attached) | (Role::Attached, Role::Hub) => Ok(EdgeClass::CrossSpoke),
        _ => Err(GluingError::NotAnEdge(a, b)),
    }
}

/// Whether `class` has at least one edge in `spec`.
pub fn class_present(spec: GluingSpec, class: EdgeClass) -> bool {
    match class {
        EdgeClass::Bridge | EdgeClass::CrossSpoke | EdgeClass::HubToAttached => true,
        EdgeClass::AttachedPair => spec.m >= 2,
        EdgeClass::AttachedToFree | EdgeClass::HubToFree => spec.free_count() >= 1,
        EdgeClass::FreePair => spec.free_count() >= 2,
    }
}

/// A fixed edge of `class`, on the unprimed side where the class is one-sided.
pub fn representative_edge(
    spec: GluingSpec,
    class: EdgeClass,
) -> Result<(Vertex, Vertex), GluingError> {
    if !class_present(spec, class) {
        return Err(GluingError::ClassEmptyForSpec {
            class,
            n: spec.n,
            m: spec.m,
        });
    }
    let last = spec.n - 1;
    Ok(match class {
        EdgeClass::Bridge => (spec.u(0), spec.v(0)),
        EdgeClass::CrossSpoke => (spec.u(0), spec.v(1)),
        EdgeClass::HubToAttached => (spec.u(0), spec.u(1)),
        EdgeClass::AttachedPair => (spec.u(1), spec.u(2)),
        EdgeClass::AttachedToFree => (spec.u(1), spec.u(last)),
        EdgeClass::HubToFree => (spec.u(0), spec.u(last)),
        EdgeClass::FreePair => (spec.u(last - 1), spec.u(last)),
    })
}

/// Which of the two cross-spoke formulas applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossSpokeRegime {
    /// `m >= (-n + sqrt(5n² - 8n)) / 2`.
    Dense,
    /// `m < (-n + sqrt(5n² - 8n)) / 2`.
    Sparse,
}

/// Decided in integers: `m >= (-n + sqrt(5n² - 8n))/2  ⇔  (2m + n)² >= 5n² - 8n`.
pub fn cross_spoke_regime(n: usize, m: usize) -> CrossSpokeRegime {
    let (n, m) = (n as i64, m as i64);
    if (2 * m + n).pow(2) >= 5 * n * n - 8 * n {
        CrossSpokeRegime::Dense
    } else {
        CrossSpokeRegime::Sparse
    }
}

/// Cells where the `sqrt(5n² - 4n)` variant of the regime condition would
/// classify differently from `sqrt(5n² - 8n)`.
pub fn regime_conditions_disagree(n: usize, m: usize) -> bool {
    let (n, m) = (n as i64, m as i64);
    let lhs = (2 * m + n).pow(2);
    (lhs >= 5 * n * n - 8 * n) != (lhs >= 5 * n * n - 4 * n)
}

/// A closed-form curvature value, or a bracket where only bounds are known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    Exact(Rational),
    Bracket { lower: Rational, upper: Rational },
}

impl ClosedForm {
    pub fn contains(&self, kappa: Rational) -> bool {
        match *self {
            ClosedForm::Exact(value) => value == kappa,
            ClosedForm::Bracket { lower, upper } => lower <= kappa && kappa <= upper,
        }
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Exact(v) => write!(f, "{v}"),
            ClosedForm::Bracket { lower, upper } => write!(f, "[{lower}, {upper}]"),
        }
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Closed-form curvature of an edge class.
///
/// At `m = n - 1` the bridge takes the value `(2n-2)/(2n-1)`; the general
/// bridge formula `(4m-2n+4)/(n+m)` only holds for `m <= n - 2`.
pub fn closed_form_kappa(spec: GluingSpec, class: EdgeClass) -> Result<ClosedForm, GluingError> {
    representative_edge(spec, class)?;
    let (n, m) = (spec.n as i64, spec.m as i64);
    let value = match class {
        EdgeClass::Bridge if m == n - 1 => q(2 * n - 2, 2 * n - 1),
        EdgeClass::Bridge => q(4 * m - 2 * n + 4, n + m),
        EdgeClass::CrossSpoke => match cross_spoke_regime(spec.n, spec.m) {
            CrossSpokeRegime::Dense => q((2 + n) * m + 2 * n - n * n, n * (n + m)),
            CrossSpokeRegime::Sparse => q(m * m + 2 * (n + 1) * m - 2 * n * n + 4 * n, n * (n + m)),
        },
        EdgeClass::HubToAttached if m == 1 => q(n - 1, n + 1),
        EdgeClass::HubToAttached => q(n * n - m * n + 2 * m, n * (n + m)),
        EdgeClass::AttachedPair => q(n - 1, n),
        EdgeClass::AttachedToFree => q(n - 2, n),
        EdgeClass::FreePair => q(n - 2, n - 1),
        EdgeClass::HubToFree => {
            let upper = q((2 - n) * m + n * n - 2 * n + 2, (n - 1) * (n + m));
            let lower = if m == n - 2 {
                q(1, n - 1)
            } else {
                q((2 - n) * m + n * n - 3 * n + 3, (n - 1) * (n + m))
            };
            return Ok(ClosedForm::Bracket { lower, upper });
        }
    };
    Ok(ClosedForm::Exact(value))
}

/// Values for the `m = n - 1` gluing: `κ(u_1,u_2)`, `κ(u_0,v_0)`, `κ(u_0,v_1)`.
pub fn full_gluing_values(n: usize) -> [Rational; 3] {
    let n = n as i64;
    [q(n - 1, n), q(2 * n - 2, 2 * n - 1), q(3 * n - 2, n * (2 * n - 1))]
}

/// The Jost–Liu lower estimates for hub-attached and cross-spoke edges in
/// closed form: `(n²-nm+m)/(n(n+m))` and `(m+2n)(m+2-n)/(n(n+m))`.
///
/// The first is valid for `m >= 2`, the second for `m <= n - 2`; outside
/// those ranges a different positive part is active.
pub fn jost_liu_closed_forms(spec: GluingSpec) -> (Rational, Rational) {
    let (n, m) = (spec.n as i64, spec.m as i64);
    (
        q(n * n - n * m + m, n * (n + m)),
        q((m + 2 * n) * (m + 2 - n), n * (n + m)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PositivityWindow {
    /// `(n² - 2n) / (n + 2)`; every edge is positively curved iff `threshold < m <= n - 1`.
    pub threshold: Rational,
    /// Smallest integer strictly above the threshold.
    pub smallest_m: usize,
}

pub fn positivity_window(n: usize) -> Result<PositivityWindow, GluingError> {
    if n < 5 {
        return Err(GluingError::NTooSmall(n));
    }
    let ni = n as i64;
    let threshold = q(ni * ni - 2 * ni, ni + 2);
    let smallest_m = (threshold.floor().to_integer() + 1) as usize;
    let expected = if n > 6 { n - 3 } else { n - 2 };
    debug_assert_eq!(smallest_m, expected);
    Ok(PositivityWindow {
        threshold,
        smallest_m,
    })
}

/// Predicted sign of the minimum edge curvature: positive iff `threshold < m`.
pub fn predicted_positive(window: &PositivityWindow, m: usize) -> bool {
    Rational::from_integer(m as i64) > window.threshold
}

/// Lower bound on every edge curvature of `K_n +_M K'_n` at `M = smallest_m`:
/// `(n-6)/(n(2n-3))` for `n > 6`, `(n-2)/(n(n-1))` for `n ∈ {5, 6}`.
pub fn global_lower_bound_at_m(n: usize) -> Result<Rational, GluingError> {
    if n < 5 {
        return Err(GluingError::NTooSmall(n));
    }
    let n = n as i64;
    Ok(if n > 6 {
        q(n - 6, n * (2 * n - 3))
    } else {
        q(n - 2, n * (n - 1))
    })
}

/// Solver curvature of the representative edge of `class`.
pub fn solver_kappa(g: &Graph, spec: GluingSpec, class: EdgeClass) -> Result<Rational, GluingError> {
    let (x, y) = representative_edge(spec, class)?;
    Ok(curvature::ricci_curvature(g, x, y)?.kappa)
}

/// Minimum edge curvature computed once per class orbit, with the class and
/// lexicographically smallest representative of the minimizing orbit.
pub fn min_curvature_by_class(spec: GluingSpec) -> Result<(Rational, EdgeClass), GluingError> {
    let g = build_gluing(spec);
    let mut best: Option<(Rational, EdgeClass)> = None;
    for class in EdgeClass::ALL {
        if !class_present(spec, class) {
            continue;
        }
        let kappa = solver_kappa(&g, spec, class)?;
        if best.is_none_or(|(k, _)| kappa < k) {
            best = Some((kappa, class));
        }
    }
    Ok(best.expect("the bridge is always present"))
}
