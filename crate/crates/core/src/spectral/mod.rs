//! Laplacian spectra, exhaustive Cheeger constants and the curvature
//! sandwich bounds for the gluing at the positivity threshold.
//!
//! The normalized operator is the random-walk Laplacian `I - D⁻¹A`. It is
//! similar to `I - D^{-1/2} A D^{-1/2}`, which is symmetric, so the spectrum
//! is computed from the latter with a Jacobi eigensolver. The unnormalized
//! Laplacian `D - A` is available for comparison.

mod cheeger;
mod jacobi;

use thiserror::Error;

use crate::curvature::{self, CurvatureError};
use crate::gluing::{self, GluingError, GluingSpec};
use crate::graph::Graph;
use crate::Rational;

pub use cheeger::{
    boundary_edge_count, cheeger_constant, cheeger_with, conductance, CheegerReport, Normalization,
    SizeConstraint, EXHAUSTIVE_VERTEX_LIMIT,
};
pub use jacobi::{max_residual, symmetric_eigen, SymmetricEigen, OFF_DIAGONAL_TOLERANCE};

/// Largest acceptable `‖Lv − λv‖∞` for a reported eigenpair.
pub const EIGEN_RESIDUAL_TOLERANCE: f64 = 1e-10;
/// Slack allowed when comparing a float eigenvalue to a bound.
pub const BOUND_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("graph has {vertex_count} vertices; exhaustive Cheeger enumeration is limited to {limit}")]
    GraphTooLargeForExhaustive { vertex_count: usize, limit: usize },
    #[error("no vertex subset satisfies the size constraint on {vertex_count} vertices")]
    NoAdmissibleSubset { vertex_count: usize },
    #[error("the spectral gap needs at least two vertices")]
    TooFewVertices,
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Gluing(#[from] GluingError),
}

/// Eigenvalues (ascending) of a symmetric operator with the worst residual.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigen_residual: f64,
}

impl Spectrum {
    fn of(matrix: &[Vec<f64>]) -> Self {
        let eigen = symmetric_eigen(matrix);
        let eigen_residual = max_residual(matrix, &eigen);
        Spectrum {
            eigenvalues: eigen.values,
            eigen_residual,
        }
    }

    /// Second-smallest eigenvalue; on a connected graph the first nonzero one.
    pub fn gap(&self) -> f64 {
        self.eigenvalues[1]
    }
}

#[derive(Debug, Clone)]
pub struct SpectralReport {
    pub lambda1: f64,
    pub kappa_min: Rational,
    pub eigen_residual: f64,
    pub eigenvalues: Vec<f64>,
}

/// `I - D^{-1/2} A D^{-1/2}` as a dense matrix.
pub fn normalized_laplacian_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let scale: Vec<f64> = g.vertices().map(|v| 1.0 / (g.degree(v) as f64).sqrt()).collect();
    let mut l = vec![vec![0.0; n]; n];
    for (x, row) in l.iter_mut().enumerate() {
        row[x] = 1.0;
        for &y in g.neighbors(x) {
            row[y] = -scale[x] * scale[y];
        }
    }
    l
}

/// `D - A` as a dense matrix.
pub fn combinatorial_laplacian_matrix(g: &Graph) -> Vec<Vec<f64>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0.0; n]; n];
    for (x, row) in l.iter_mut().enumerate() {
        row[x] = g.degree(x) as f64;
        for &y in g.neighbors(x) {
            row[y] = -1.0;
        }
    }
    l
}

/// Spectral gap of the random-walk Laplacian together with the minimum edge
/// curvature of `g`.
pub fn normalized_laplacian_gap(g: &Graph) -> Result<SpectralReport, SpectralError> {
    if g.vertex_count() < 2 {
        return Err(SpectralError::TooFewVertices);
    }
    let spectrum = Spectrum::of(&normalized_laplacian_matrix(g));
    let (kappa_min, _) = curvature::min_edge_curvature(g)?;
    Ok(SpectralReport {
        lambda1: spectrum.gap(),
        kappa_min,
        eigen_residual: spectrum.eigen_residual,
        eigenvalues: spectrum.eigenvalues,
    })
}

/// Spectrum of the unnormalized Laplacian `D - A`.
pub fn unnormalized_laplacian_spectrum(g: &Graph) -> Result<Spectrum, SpectralError> {
    if g.vertex_count() < 2 {
        return Err(SpectralError::TooFewVertices);
    }
    Ok(Spectrum::of(&combinatorial_laplacian_matrix(g)))
}

/// Whether `lower - tol <= value <= upper + tol`.
pub fn within(lower: f64, value: f64, upper: f64) -> bool {
    lower - BOUND_TOLERANCE <= value && value <= upper + BOUND_TOLERANCE
}

/// The explicit bracket `lower <= h <= sqrt(upper_squared)` predicted for the
/// Cheeger constant of `K_n +_M K'_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheegerBracket {
    pub lower: Rational,
    pub upper_squared: Rational,
}

impl CheegerBracket {
    pub fn for_n(n: usize) -> Result<Self, GluingError> {
        if n < 5 {
            return Err(GluingError::NTooSmall(n));
        }
        let n = n as i64;
        Ok(if n > 6 {
            CheegerBracket {
                lower: Rational::new(n - 6, 2 * n * (2 * n - 3)),
                upper_squared: Rational::new(2 * (4 * n * n - 7 * n + 6), n * (2 * n - 3)),
            }
        } else {
            CheegerBracket {
                lower: Rational::new(n - 2, 2 * n * (n - 1)),
                upper_squared: Rational::new(2 * (n * n - 2 * n + 2), n * (n - 1)),
            }
        })
    }

    /// The bracket obtained by feeding the curvature bound at `M` into
    /// `κ ≤ λ₁ ≤ 2 − κ` and `λ₁/2 ≤ h ≤ √(2λ₁)`: the upper end is
    /// `√(2(2 − κ))`. For `n > 6` this coincides with [`CheegerBracket::for_n`].
    pub fn from_curvature_bound(n: usize) -> Result<Self, GluingError> {
        let kappa = gluing::global_lower_bound_at_m(n)?;
        Ok(CheegerBracket {
            lower: kappa / 2,
            upper_squared: (Rational::from_integer(2) - kappa) * 2,
        })
    }

    /// Exact test: `lower <= h` and `h² <= upper_squared`.
    pub fn contains(&self, h: Rational) -> bool {
        self.lower <= h && h * h <= self.upper_squared
    }

    pub fn upper(&self) -> f64 {
        to_f64(self.upper_squared).sqrt()
    }
}

pub fn to_f64(q: Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Whether a check belongs to the claimed chain or is reported alongside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckRole {
    Claimed,
    Supplementary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SandwichCheck {
    pub name: &'static str,
    pub role: CheckRole,
    pub lower: f64,
    pub value: f64,
    pub upper: f64,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: usize,
    pub m: usize,
    pub kappa_min: Rational,
    pub global_bound: Rational,
    pub lambda1: f64,
    pub eigen_residual: f64,
    pub cheeger: CheegerReport,
    pub conductance: CheegerReport,
    pub bracket: CheegerBracket,
    pub checks: Vec<SandwichCheck>,
}

impl SandwichReport {
    /// Whether every claimed check holds.
    pub fn holds(&self) -> bool {
        self.checks
            .iter()
            .filter(|c| c.role == CheckRole::Claimed)
            .all(|c| c.holds)
    }
}

/// Runs the whole chain for `K_n +_M K'_n`: the curvature bound at `M`,
/// `κ ≤ λ₁ ≤ 2 − κ`, `λ₁/2 ≤ h ≤ √(2λ₁)` and the explicit bracket on `h`.
/// The same two-sided eigenvalue estimate is also reported for the
/// volume-normalized Cheeger constant.
pub fn verify_sandwich(n: usize) -> Result<SandwichReport, SpectralError> {
    let window = gluing::positivity_window(n)?;
    let m = window.smallest_m;
    let g = gluing::build_gluing(GluingSpec::for_main_theorem(n, m)?);
    let spectral = normalized_laplacian_gap(&g)?;
    let cheeger = cheeger_constant(&g)?;
    let phi = conductance(&g)?;
    let global_bound = gluing::global_lower_bound_at_m(n)?;
    let bracket = CheegerBracket::for_n(n)?;
    let derived = CheegerBracket::from_curvature_bound(n)?;

    let kappa = spectral.kappa_min;
    let kf = to_f64(kappa);
    let lambda1 = spectral.lambda1;
    let h = to_f64(cheeger.value);
    let chung_upper = (2.0 * lambda1).sqrt();

    let checks = vec![
        SandwichCheck {
            name: "curvature bound at M",
            role: CheckRole::Claimed,
            lower: to_f64(global_bound),
            value: kf,
            upper: 1.0,
            holds: kappa >= global_bound,
        },
        SandwichCheck {
            name: "kappa <= lambda1 <= 2 - kappa",
            role: CheckRole::Claimed,
            lower: kf,
            value: lambda1,
            upper: 2.0 - kf,
            holds: within(kf, lambda1, 2.0 - kf),
        },
        SandwichCheck {
            name: "lambda1/2 <= h <= sqrt(2 lambda1)",
            role: CheckRole::Claimed,
            lower: lambda1 / 2.0,
            value: h,
            upper: chung_upper,
            holds: within(lambda1 / 2.0, h, chung_upper),
        },
        SandwichCheck {
            name: "explicit bracket on h",
            role: CheckRole::Claimed,
            lower: to_f64(bracket.lower),
            value: h,
            upper: bracket.upper(),
            holds: bracket.contains(cheeger.value),
        },
        SandwichCheck {
            name: "h within [kappa/2, sqrt(2(2 - kappa))]",
            role: CheckRole::Supplementary,
            lower: to_f64(derived.lower),
            value: h,
            upper: derived.upper(),
            holds: derived.contains(cheeger.value),
        },
        SandwichCheck {
            name: "lambda1/2 <= phi <= sqrt(2 lambda1)",
            role: CheckRole::Supplementary,
            lower: lambda1 / 2.0,
            value: to_f64(phi.value),
            upper: chung_upper,
            holds: within(lambda1 / 2.0, to_f64(phi.value), chung_upper),
        },
    ];

    Ok(SandwichReport {
        n,
        m,
        kappa_min: kappa,
        global_bound,
        lambda1,
        eigen_residual: spectral.eigen_residual,
        cheeger,
        conductance: phi,
        bracket,
        checks,
    })
}
