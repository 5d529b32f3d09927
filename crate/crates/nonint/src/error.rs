use thiserror::Error;

/// Errors shared across the pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("map parse error: {0}")]
    Parse(String),

    #[error("Newton inversion failed to converge at step {step} (residual {residual:.3e})")]
    Orbit { step: i64, residual: f64 },

    #[error("fixed point search did not converge within {max_iter} iterations (last residual {residual:.3e})")]
    FixedPointNotFound { max_iter: usize, residual: f64 },

    #[error("singular Newton matrix near {point:?}")]
    DegenerateNewton { point: Vec<f64> },

    #[error("spectrum is not hyperbolic: eigenvalue of modulus {modulus} within {tol} of 1")]
    NonHyperbolic { modulus: f64, tol: f64 },

    #[error("multiplicative resonance detected: witness nu = {witness:?}")]
    Resonance { witness: Vec<i32> },

    #[error("ordering tie at |lambda^nu| = {value} between {a:?} and {b:?}: scale is ill-defined")]
    OrderingTie { value: f64, a: Vec<u16>, b: Vec<u16> },

    #[error("could not generate a non-resonant delta vector after {attempts} attempts")]
    DeltaGeneration { attempts: usize },

    #[error("internal resonance |lambda^nu - lambda_{j}| < {tol:.1e} at nu = {nu:?}: parameterization order solve is singular")]
    InternalResonance { nu: Vec<u16>, j: usize, tol: f64 },

    #[error("chart order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },

    #[error("chart residual {residual:.3e} exceeds {tol:.1e} even at radius {radius:.3e}")]
    ChartResidual { residual: f64, tol: f64, radius: f64 },

    #[error("complex or repeated internal spectrum is not supported by the chart solver: {detail}")]
    UnsupportedSpectrum { detail: String },

    #[error("manifold samples do not form a graph over the requested window (fold at y = {fold_at:.6}); try radius below {suggest:.3e}")]
    NotAGraph { fold_at: f64, suggest: f64 },

    #[error("graph fit residual {residual:.3e} exceeds {tol:.1e}")]
    GraphFit { residual: f64, tol: f64 },

    #[error("anchor orbit never enters the chart neighbourhood within {steps} steps")]
    NoChartEntry { steps: usize },

    #[error("shadow anchor is outside the reachable domain for every index in range; minimal feasible N is {minimal_n}")]
    ShadowDomain { minimal_n: i64 },

    #[error("stage-{stage} peel failed at level {level}: error bar {bar:.3e} exceeds tolerance {tol:.3e}")]
    PeelFailure { stage: u8, level: usize, bar: f64, tol: f64 },

    #[error("admissibility violation: |{what}| = {value:.3e} below {tol:.1e}")]
    AdmissibilityViolation { what: String, value: f64, tol: f64 },

    #[error("remainder limit did not converge over the available index range (last delta {last_delta:.3e})")]
    RemainderDivergence { last_delta: f64 },

    #[error("map is not in normal form; offending terms: {detail}")]
    NotNormalForm { detail: String },

    #[error("intersection search in dimension {n} is only supported for stable/unstable dimensions ({},1)", n - 1)]
    UnsupportedCodimension { n: usize },

    #[error("indeterminate kernel rank: singular value gap ratio {ratio:.3e} inside the ambiguous band")]
    IndeterminateKernel { ratio: f64 },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable code, used by the CLI's structured error output
    /// and by the C ABI.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Dimension { .. } => "dimension",
            Error::Parse(_) => "parse",
            Error::Orbit { .. } => "orbit",
            Error::FixedPointNotFound { .. } => "fixed_point_not_found",
            Error::DegenerateNewton { .. } => "degenerate_newton",
            Error::NonHyperbolic { .. } => "non_hyperbolic",
            Error::Resonance { .. } => "resonance",
            Error::OrderingTie { .. } => "ordering_tie",
            Error::DeltaGeneration { .. } => "delta_generation",
            Error::InternalResonance { .. } => "internal_resonance",
            Error::OrderTooLarge { .. } => "order_too_large",
            Error::ChartResidual { .. } => "chart_residual",
            Error::UnsupportedSpectrum { .. } => "unsupported_spectrum",
            Error::NotAGraph { .. } => "not_a_graph",
            Error::GraphFit { .. } => "graph_fit",
            Error::NoChartEntry { .. } => "no_chart_entry",
            Error::ShadowDomain { .. } => "shadow_domain",
            Error::PeelFailure { .. } => "peel_failure",
            Error::AdmissibilityViolation { .. } => "admissibility_violation",
            Error::RemainderDivergence { .. } => "remainder_divergence",
            Error::NotNormalForm { .. } => "not_normal_form",
            Error::UnsupportedCodimension { .. } => "unsupported_codimension",
            Error::IndeterminateKernel { .. } => "indeterminate_kernel",
            Error::Io { .. } => "io",
            Error::Config(_) => "config",
        }
    }
}
