use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "liouville", version, about = "Existence/nonexistence laboratory for Lane-Emden, HLS, Wolff and gamma-Laplace problems")]
pub struct Cli {
    /// Replay a run manifest (or a whole output document) instead of parsing a subcommand.
    #[arg(long, global = true)]
    pub manifest: Option<String>,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a problem with the matching theorem.
    Classify(ProblemArgs),
    /// Critical exponents of a problem.
    Criticals(ProblemArgs),
    /// Decay-exponent iteration.
    Iterate(IterateArgs),
    /// Evaluate a potential or radial operator of a profile.
    Potential(PotentialArgs),
    /// Explicit solution families and their coefficient bounds.
    Family(FamilyArgs),
    /// Shoot one trajectory of the radial bi-Laplace system.
    Shoot(ShootArgs),
    /// Bisect for the threshold shooting parameter.
    Threshold(ThresholdArgs),
    /// Pohozaev, chain, energy and scaling identities.
    Identity(IdentityArgs),
    /// Run another subcommand over a cartesian parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Riesz,
    Wolff,
    PolyLaplace,
    GammaLaplace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Coeff {
    DoubleBounded,
    Constant,
}

/// Numbers are read as exact rationals (`5/3`, `1.25`, `1e-2`).
#[derive(Debug, Clone, Args)]
pub struct ProblemArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, value_enum, default_value_t = KernelKind::Riesz)]
    pub kernel: KernelKind,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    /// Poly-Laplace order.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub p: String,
    /// Second exponent; makes the problem a system.
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long, value_enum, default_value_t = Coeff::DoubleBounded)]
    pub coeff: Coeff,
    /// Only radial solutions are of interest.
    #[arg(long)]
    pub radial: bool,
}

#[derive(Debug, Clone, Args)]
pub struct QuadArgs {
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub abs_tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_subdivisions: usize,
    /// Truncate Wolff layer-cake integrals at this radius.
    #[arg(long)]
    pub tail_cut: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct IterateArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, default_value_t = 64)]
    pub j_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Riesz,
    Wolff,
    Laplacian,
    GammaLaplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RieszMethod {
    LayerCake,
    Direct,
}

/// Profile `A (1 + K r^m)^{-θ}`, optionally times `log(e+r)^{log_exp}`.
#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long, default_value = "2")]
    pub m: String,
    #[arg(long, default_value = "1")]
    pub amplitude: String,
    #[arg(long, default_value = "1")]
    pub scale: String,
    #[arg(long)]
    pub log_exp: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct PotentialArgs {
    #[arg(long, value_enum)]
    pub operator: Operator,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    #[command(flatten)]
    pub profile: ProfileArgs,
    /// Comma-separated radii.
    #[arg(long, value_delimiter = ',', required = true)]
    pub radii: Vec<String>,
    #[arg(long, value_enum, default_value_t = RieszMethod::LayerCake)]
    pub method: RieszMethod,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyDetail {
    Catalog,
    Profile,
    Report,
}

#[derive(Debug, Clone, Args)]
pub struct FamilyArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, value_enum, default_value_t = FamilyDetail::Report)]
    pub detail: FamilyDetail,
    /// Comma-separated radii; default 0 plus 4 points per decade on [1e-2, 1e3].
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<String>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ForcingKind {
    Power,
    Zero,
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub step_rel_tol: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub step_abs_tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub h_init: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub zero_tol: f64,
    #[arg(long, value_enum, default_value_t = ForcingKind::Power)]
    pub forcing: ForcingKind,
}

#[derive(Debug, Clone, Args)]
pub struct ShootArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: String,
    #[arg(long)]
    pub a: String,
    #[arg(long, default_value = "50")]
    pub r_max: String,
    #[command(flatten)]
    pub step: StepArgs,
}

#[derive(Debug, Clone, Args)]
pub struct ThresholdArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub p: String,
    /// Bisection width.
    #[arg(long, default_value = "1e-8")]
    pub tol: String,
    #[arg(long, default_value = "50")]
    pub r_max: String,
    #[command(flatten)]
    pub step: StepArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IdentityKind {
    ObstructionScalar,
    ObstructionSystem,
    Chain,
    Pohozaev,
    Energy,
    Scaling,
    ScaledEnergy,
    ExactBubble,
    ExactGamma,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProfileKind {
    /// `(n(n-2))^{(n-2)/4} (1+r²)^{-(n-2)/2}`.
    Bubble,
    /// The γ-Laplace explicit family with calibrated `D`.
    GammaExplicit,
    /// Power profile from `--theta/--m/--amplitude/--scale`.
    Power,
}

#[derive(Debug, Clone, Args)]
pub struct IdentityArgs {
    #[arg(value_enum)]
    pub kind: IdentityKind,
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub p: Option<String>,
    #[arg(long)]
    pub q: Option<String>,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub gamma: Option<String>,
    /// Chain: ball radius.
    #[arg(long, default_value = "1")]
    pub radius: String,
    /// Chain: coefficients of `u1` in powers of `r²`; default `(1 - r²/R²)^2`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub coeffs: Vec<String>,
    #[arg(long, value_enum, default_value_t = ProfileKind::Bubble)]
    pub profile: ProfileKind,
    #[command(flatten)]
    pub shape: ProfileArgs,
    /// γ-Laplace explicit family amplitude.
    #[arg(long, default_value = "1")]
    pub d: String,
    #[arg(long)]
    pub mu: Option<String>,
    #[arg(long)]
    pub sigma: Option<String>,
    #[arg(long)]
    pub e: Option<String>,
    /// Scaling: kernel of the problem.
    #[arg(long, value_enum, default_value_t = KernelKind::Riesz)]
    pub kernel: KernelKind,
    #[arg(long)]
    pub beta: Option<String>,
    /// Comma-separated radii for exact-solution residuals.
    #[arg(long, value_delimiter = ',')]
    pub radii: Vec<String>,
    #[command(flatten)]
    pub quad: QuadArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    /// `name=v1,v2,...` or `name=start:stop:step` (exact rationals); repeatable.
    #[arg(long = "over", required = true)]
    pub over: Vec<String>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// The subcommand and its fixed flags.
    #[arg(trailing_var_arg = true, allow_hyphen_values = true, required = true)]
    pub inner: Vec<String>,
}
