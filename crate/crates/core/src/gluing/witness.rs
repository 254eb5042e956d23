//! Hand-built couplings and Lipschitz potentials for the gluing, generated
//! from their case tables for a given `(n, m)`.
//!
//! These certify curvature values without the flow solver: a coupling gives
//! an upper bound on `W`, a potential a lower bound, and the case tables here
//! are the ones that close the gap for each edge class.
//!
//! Conventions: "free u" means `u_{m+1}..u_{n-1}` (hub excluded), "attached v"
//! means `v_1..v_m`, and so on.

use super::{cross_spoke_regime, CrossSpokeRegime, GluingError, GluingSpec};
use crate::graph::{Graph, Vertex};
use crate::transport::{LipschitzWitness, TransportPlan};
use crate::Rational;

/// A coupling between `m_source` and `m_target` with the cost it should attain.
#[derive(Debug, Clone)]
pub struct CouplingFixture {
    pub name: &'static str,
    pub spec: GluingSpec,
    pub source: Vertex,
    pub target: Vertex,
    pub entries: Vec<(Vertex, Vertex, Rational)>,
    pub stated_cost: Rational,
}

impl CouplingFixture {
    pub fn plan(&self, g: &Graph) -> TransportPlan {
        TransportPlan::from_entries(g, self.entries.clone())
    }
}

/// An integer potential with the value it should attain on `(m_source, m_target)`.
#[derive(Debug, Clone)]
pub struct PotentialFixture {
    pub name: &'static str,
    pub spec: GluingSpec,
    pub source: Vertex,
    pub target: Vertex,
    pub values: Vec<i64>,
    pub stated_value: Rational,
}

impl PotentialFixture {
    pub fn witness(&self, g: &Graph) -> LipschitzWitness {
        LipschitzWitness::new(
            self.values.clone(),
            &g.random_walk_measure(self.source),
            &g.random_walk_measure(self.target),
        )
    }
}

fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

struct Labels {
    n: usize,
    m: usize,
}

impl Labels {
    fn new(spec: GluingSpec) -> Self {
        Self {
            n: spec.n(),
            m: spec.m(),
        }
    }
    fn u(&self, i: usize) -> Vertex {
        i
    }
    fn v(&self, j: usize) -> Vertex {
        self.n + j
    }
    fn attached_u(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.m).map(|i| self.u(i))
    }
    fn free_u(&self) -> impl Iterator<Item = Vertex> + '_ {
        (self.m + 1..self.n).map(|i| self.u(i))
    }
    fn attached_v(&self) -> impl Iterator<Item = Vertex> + '_ {
        (1..=self.m).map(|j| self.v(j))
    }
    /// `Γ_m(u_0) \ {v_1}`.
    fn attached_v_rest(&self) -> impl Iterator<Item = Vertex> + '_ {
        (2..=self.m).map(|j| self.v(j))
    }
    fn free_v(&self) -> impl Iterator<Item = Vertex> + '_ {
        (self.m + 1..self.n).map(|j| self.v(j))
    }
}

fn not_applicable(name: &'static str, spec: GluingSpec) -> GluingError {
    GluingError::WitnessNotApplicable {
        name,
        n: spec.n(),
        m: spec.m(),
    }
}

fn push_all(
    entries: &mut Vec<(Vertex, Vertex, Rational)>,
    xs: impl IntoIterator<Item = Vertex>,
    ys: &[Vertex],
    mass: Rational,
) {
    for x in xs {
        for &y in ys {
            entries.push((x, y, mass));
        }
    }
}

/// `B_3`: optimal coupling of `(m_{u_0}, m_{v_1})` on the full gluing `m = n - 1`.
pub fn coupling_b3(spec: GluingSpec) -> Result<CouplingFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m != n - 1 || n < 3 {
        return Err(not_applicable("B_3", spec));
    }
    let l = Labels::new(spec);
    let rest: Vec<Vertex> = l.attached_v_rest().collect();
    let gap = q(1, n) - q(1, 2 * n - 1);
    let mut entries = Vec::new();
    for &w in std::iter::once(&l.v(0)).chain(&rest) {
        entries.push((w, w, q(1, 2 * n - 1)));
    }
    push_all(&mut entries, [l.v(1)], &rest, q(1, (n - 2) * (2 * n - 1)));
    let hubs = [l.u(0)];
    push_all(&mut entries, l.attached_u(), &hubs, q(1, n * (n - 1)));
    push_all(&mut entries, l.attached_u(), &[l.v(0)], gap / (n - 1));
    push_all(&mut entries, l.attached_u(), &rest, (gap - q(1, (n - 2) * (2 * n - 1))) / (n - 1));
    Ok(CouplingFixture {
        name: "B_3",
        spec,
        source: l.u(0),
        target: l.v(1),
        entries,
        stated_cost: q(2 * (n - 1) * (n - 1), n * (2 * n - 1)),
    })
}

/// `A`: optimal coupling of `(m_{u_0}, m_{u_1})` for `m >= 2`.
pub fn coupling_a(spec: GluingSpec) -> Result<CouplingFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m < 2 || n < 3 {
        return Err(not_applicable("A", spec));
    }
    let l = Labels::new(spec);
    let others: Vec<Vertex> = (2..spec.n()).map(|i| l.u(i)).collect();
    let gap = q(1, n) - q(1, n + m);
    let mut entries = Vec::new();
    for &w in others.iter().chain(std::iter::once(&l.v(0))) {
        entries.push((w, w, q(1, n + m)));
    }
    push_all(&mut entries, l.attached_v(), &[l.u(0)], q(1, n * m));
    push_all(&mut entries, l.attached_v(), &[l.v(0)], gap / m);
    push_all(&mut entries, [l.u(1)], &others, q(1, (n - 2) * (n + m)));
    push_all(&mut entries, l.attached_v(), &others, (gap - q(1, (n - 2) * (n + m))) / m);
    Ok(CouplingFixture {
        name: "A",
        spec,
        source: l.u(0),
        target: l.u(1),
        entries,
        stated_cost: q(2 * n - 2, n) - q(2 * n - 2, n + m),
    })
}

/// Dense-regime cross-spoke distance `2(n² - n - m) / (n(n + m))`.
fn dense_spoke_distance(n: i64, m: i64) -> Rational {
    q(2 * (n * n - n - m), n * (n + m))
}

/// Sparse-regime cross-spoke distance `(-m² - (2+n)m + 3n² - 4n) / (n(n + m))`.
fn sparse_spoke_distance(n: i64, m: i64) -> Rational {
    q(-m * m - (2 + n) * m + 3 * n * n - 4 * n, n * (n + m))
}

/// `A_2`: cross-spoke coupling of `(m_{u_0}, m_{v_1})`, dense regime, `2 <= m <= n - 3`.
pub fn coupling_a2(spec: GluingSpec) -> Result<CouplingFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m < 2 || m > n - 3 || cross_spoke_regime(spec.n(), spec.m()) != CrossSpokeRegime::Dense {
        return Err(not_applicable("A_2", spec));
    }
    let l = Labels::new(spec);
    let rest: Vec<Vertex> = l.attached_v_rest().collect();
    let free_v: Vec<Vertex> = l.free_v().collect();
    let k = n - m - 1;
    let gap = q(1, n) - q(1, n + m);
    let mut entries = Vec::new();
    for &w in std::iter::once(&l.v(0)).chain(&rest) {
        entries.push((w, w, q(1, n + m)));
    }
    push_all(&mut entries, [l.v(1)], &free_v, q(1, k * (n + m)));
    push_all(&mut entries, l.free_u(), &[l.u(0)], q(1, n * k));
    push_all(&mut entries, l.free_u(), &rest, (q(1, n + m) - q(1, n * k)) / (m - 1));
    push_all(&mut entries, l.attached_u(), &[l.v(0)], gap / m);
    push_all(&mut entries, l.attached_u(), &free_v, (q(1, n) - q(1, k * (n + m))) / m);
    push_all(
        &mut entries,
        l.attached_u(),
        &rest,
        (gap - (q(k, n + m) - q(1, n)) / (m - 1)) / m,
    );
    Ok(CouplingFixture {
        name: "A_2",
        spec,
        source: l.u(0),
        target: l.v(1),
        entries,
        stated_cost: dense_spoke_distance(n, m),
    })
}

/// `A_2` variant for `m = n - 2`, where a single free vertex remains per block.
pub fn coupling_a2_single_free(spec: GluingSpec) -> Result<CouplingFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m != n - 2 || n < 4 {
        return Err(not_applicable("A_2 (m = n-2)", spec));
    }
    let l = Labels::new(spec);
    let last = spec.n() - 1;
    let mut entries = vec![
        (l.v(1), l.v(last), q(1, 2 * n - 2)),
        (l.u(last), l.u(0), q(1, 2 * n - 2)),
    ];
    let rest: Vec<Vertex> = l.attached_v_rest().collect();
    for &w in std::iter::once(&l.v(0)).chain(&rest) {
        entries.push((w, w, q(1, 2 * n - 2)));
    }
    let mut targets = vec![l.u(0), l.v(0), l.v(last)];
    targets.extend(&rest);
    push_all(&mut entries, l.attached_u(), &targets, (q(1, n) - q(1, 2 * n - 2)) / (n - 2));
    Ok(CouplingFixture {
        name: "A_2 (m = n-2)",
        spec,
        source: l.u(0),
        target: l.v(1),
        entries,
        stated_cost: dense_spoke_distance(n, m),
    })
}

/// `A'_2`: cross-spoke coupling of `(m_{u_0}, m_{v_1})`, sparse regime.
pub fn coupling_a2_sparse(spec: GluingSpec) -> Result<CouplingFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m > n - 2 || cross_spoke_regime(spec.n(), spec.m()) != CrossSpokeRegime::Sparse {
        return Err(not_applicable("A'_2", spec));
    }
    let l = Labels::new(spec);
    let rest: Vec<Vertex> = l.attached_v_rest().collect();
    let free_v: Vec<Vertex> = l.free_v().collect();
    let k = n - m - 1;
    let gap = q(1, n) - q(1, n + m);
    let mut entries = Vec::new();
    for &w in std::iter::once(&l.v(0)).chain(&rest) {
        entries.push((w, w, q(1, n + m)));
    }
    push_all(&mut entries, [l.v(1)], &free_v, q(1, k * (n + m)));
    push_all(&mut entries, l.free_u(), &[l.u(0)], q(1, n * k));
    push_all(&mut entries, l.free_u(), &rest, gap / k);
    push_all(
        &mut entries,
        l.free_u(),
        &free_v,
        (q(1, n + m) - (q(m, n) - q(m - 1, n + m)) / k) / k,
    );
    push_all(&mut entries, l.attached_u(), &[l.v(0)], gap / m);
    push_all(&mut entries, l.attached_u(), &free_v, (q(1, n + m) - gap / m) / k);
    Ok(CouplingFixture {
        name: "A'_2",
        spec,
        source: l.u(0),
        target: l.v(1),
        entries,
        stated_cost: sparse_spoke_distance(n, m),
    })
}

/// Every coupling fixture defined for `spec`.
pub fn couplings(spec: GluingSpec) -> Vec<CouplingFixture> {
    [coupling_b3, coupling_a, coupling_a2, coupling_a2_single_free, coupling_a2_sparse]
        .iter()
        .filter_map(|build| build(spec).ok())
        .collect()
}

fn potential(spec: GluingSpec, assignments: &[(i64, Vec<Vertex>)]) -> Vec<i64> {
    let mut values = vec![0; spec.vertex_count()];
    for (value, vertices) in assignments {
        for &v in vertices {
            values[v] = *value;
        }
    }
    values
}

/// `f`: potential for `(m_{u_0}, m_{v_1})` on the full gluing `m = n - 1`.
pub fn potential_f(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m != n - 1 {
        return Err(not_applicable("f", spec));
    }
    let l = Labels::new(spec);
    let values = potential(
        spec,
        &[
            (-2, l.attached_v_rest().collect()),
            (-1, vec![l.u(0), l.v(1), l.v(0)]),
        ],
    );
    Ok(PotentialFixture {
        name: "f",
        spec,
        source: l.u(0),
        target: l.v(1),
        values,
        stated_value: (q(1, n) - q(1, 2 * n - 1)) * (2 * n - 2),
    })
}

/// `f_1`: bridge potential for `(m_{u_0}, m_{v_0})`, `m <= n - 2`.
pub fn potential_f1(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m > n - 2 {
        return Err(not_applicable("f_1", spec));
    }
    let l = Labels::new(spec);
    let values = potential(
        spec,
        &[
            (3, l.free_u().collect()),
            (2, std::iter::once(l.u(0)).chain(l.attached_u()).collect()),
            (1, l.attached_v().chain(std::iter::once(l.v(0))).collect()),
        ],
    );
    Ok(PotentialFixture {
        name: "f_1",
        spec,
        source: l.u(0),
        target: l.v(0),
        values,
        stated_value: q(3 * n - 3 * m - 4, n + m),
    })
}

/// `f_2`: cross-spoke potential, dense regime, `m <= n - 2`.
pub fn potential_f2(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m > n - 2 || cross_spoke_regime(spec.n(), spec.m()) != CrossSpokeRegime::Dense {
        return Err(not_applicable("f_2", spec));
    }
    let l = Labels::new(spec);
    let values = potential(
        spec,
        &[
            (2, (1..spec.n()).map(|i| l.u(i)).collect()),
            (1, vec![l.u(0), l.v(0), l.v(1)]),
        ],
    );
    Ok(PotentialFixture {
        name: "f_2",
        spec,
        source: l.u(0),
        target: l.v(1),
        values,
        stated_value: dense_spoke_distance(n, m),
    })
}

/// `f'_2`: cross-spoke potential, sparse regime.
pub fn potential_f2_sparse(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m > n - 2 || cross_spoke_regime(spec.n(), spec.m()) != CrossSpokeRegime::Sparse {
        return Err(not_applicable("f'_2", spec));
    }
    let l = Labels::new(spec);
    let values = potential(
        spec,
        &[
            (3, l.free_u().collect()),
            (2, std::iter::once(l.u(0)).chain(l.attached_u()).collect()),
            (1, std::iter::once(l.v(0)).chain(l.attached_v()).collect()),
        ],
    );
    Ok(PotentialFixture {
        name: "f'_2",
        spec,
        source: l.u(0),
        target: l.v(1),
        values,
        stated_value: sparse_spoke_distance(n, m),
    })
}

/// `f_3`: hub-attached potential for `(m_{u_0}, m_{u_1})`, `m >= 2`.
pub fn potential_f3(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m < 2 {
        return Err(not_applicable("f_3", spec));
    }
    let l = Labels::new(spec);
    let values = potential(
        spec,
        &[
            (-2, (2..spec.n()).map(|i| l.u(i)).collect()),
            (-1, vec![l.u(0), l.u(1), l.v(0)]),
        ],
    );
    Ok(PotentialFixture {
        name: "f_3",
        spec,
        source: l.u(0),
        target: l.u(1),
        values,
        stated_value: (q(1, n) - q(1, n + m)) * (2 * n - 2),
    })
}

fn f4_values(spec: GluingSpec, free_v_value: i64) -> Vec<i64> {
    let l = Labels::new(spec);
    potential(
        spec,
        &[
            (2, l.attached_v().collect()),
            (1, vec![l.u(0), l.v(0), l.u(spec.n() - 1)]),
            (free_v_value, l.free_v().collect()),
        ],
    )
}

fn f4_fixture(spec: GluingSpec, name: &'static str, free_v_value: i64) -> Result<PotentialFixture, GluingError> {
    let (n, m) = (spec.n() as i64, spec.m() as i64);
    if m > n - 2 {
        return Err(not_applicable(name, spec));
    }
    Ok(PotentialFixture {
        name,
        spec,
        source: 0,
        target: spec.n() - 1,
        values: f4_values(spec, free_v_value),
        stated_value: q(2 * n * m - 3 * m + n - 2, (n - 1) * (n + m)),
    })
}

/// `f_4`: hub-free potential for `(m_{u_0}, m_{u_{n-1}})`, `m <= n - 2`.
///
/// Takes value 1 on the free vertices of `K'_n`. Both measures vanish there,
/// so the attained value is that of [`potential_f4_as_printed`], which leaves
/// them at 0 and is not 1-Lipschitz (an attached `v_i` at 2 is adjacent to a
/// free `v_k` at 0).
pub fn potential_f4(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    f4_fixture(spec, "f_4", 1)
}

pub fn potential_f4_as_printed(spec: GluingSpec) -> Result<PotentialFixture, GluingError> {
    f4_fixture(spec, "f_4 (as printed)", 0)
}

/// Every (Lipschitz) potential fixture defined for `spec`.
pub fn potentials(spec: GluingSpec) -> Vec<PotentialFixture> {
    [potential_f, potential_f1, potential_f2, potential_f2_sparse, potential_f3, potential_f4]
        .iter()
        .filter_map(|build| build(spec).ok())
        .collect()
}

