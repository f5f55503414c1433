use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use weightlab::error::Error as CoreError;
use weightlab::hitangent::{
    degree_via_q, lift_function, lift_vector_field, lifted_algebroid_check, q_model,
    tangency_check,
};
use weightlab::liealg::{
    bch_product, check_im_weighting, check_jacobi, check_wide_integration_hypotheses, da_check,
    dilation_check, filtration_levels, graded_normal_algebroid, isotropy_algebra,
    lower_central_series, rees_deformation_algebroid, AlgebroidData, GradedNilpotentLie,
    PoissonModel,
};
use weightlab::linweight::{
    check_transition_degrees, dual_bundle, section_degree, section_homogeneous_approximation,
    section_rees_interpolation, shift_bundle, SectionElement, WeightedBundleChart,
};
use weightlab::poly::{parse, parse_list, parse_rational, Polynomial, Rational};
use weightlab::suites::{all_suites, Execution, SuiteConfig};
use weightlab::weighting::{
    check_clean_distribution, check_weighted_morphism, check_weighted_transverse_at_point,
    filtration_degree, graph_coordinate_degrees, graph_submanifold_chart,
    homogeneous_approximation, induced_degree_up_to, induced_weighting_degree, rees_interpolation,
    vector_field_degree, weighted_path_valuation, zoom_weight, PolyVectorField, WeightedChart,
};

use crate::report::{Report, Table};
use crate::workspace::{algebroid_document, bundle_doc, load_workspace, InputError, Workspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "weightlab", version, about = "Exact calculus of weightings on polynomial charts")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Ws {
    /// Workspace document (JSON).
    #[arg(short = 'w', long)]
    pub workspace: PathBuf,
}

#[derive(Debug, Args)]
pub struct ChartExpr {
    #[command(flatten)]
    pub ws: Ws,
    #[arg(short = 'c', long)]
    pub chart: Option<String>,
    /// Polynomial in the chart coordinates.
    #[arg(short = 'f', long = "function")]
    pub f: String,
}

#[derive(Debug, Args)]
pub struct ChartExprDegree {
    #[command(flatten)]
    pub inner: ChartExpr,
    #[arg(short = 'i', long = "degree", allow_negative_numbers = true)]
    pub i: i64,
}

#[derive(Debug, Args)]
pub struct MapArg {
    #[command(flatten)]
    pub ws: Ws,
    #[arg(short = 'm', long)]
    pub map: Option<String>,
}

#[derive(Debug, Args)]
pub struct AlgebroidArg {
    #[command(flatten)]
    pub ws: Ws,
    #[arg(short = 'a', long)]
    pub algebroid: Option<String>,
}

#[derive(Debug, Args)]
pub struct BundleArg {
    #[command(flatten)]
    pub ws: Ws,
    #[arg(short = 'b', long)]
    pub bundle: Option<String>,
}

#[derive(Debug, Args)]
pub struct SectionArgs {
    #[command(flatten)]
    pub bundle: BundleArg,
    /// Comma-separated coefficients in the frame.
    #[arg(short = 's', long)]
    pub section: String,
}

#[derive(Debug, Args)]
pub struct SectionDegreeArgs {
    #[command(flatten)]
    pub section: SectionArgs,
    #[arg(short = 'i', long = "degree", allow_negative_numbers = true)]
    pub i: i64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Filtration degree of a polynomial.
    Degree(ChartExpr),
    /// Homogeneous approximation `f^[i]` in barred coordinates.
    Homog(ChartExprDegree),
    /// Rees interpolation `t^-i f(t^w x)`.
    Rees(ChartExprDegree),
    /// Degree of a zoom-homogeneous polynomial in `x_bar`, `_t`.
    ZoomWeight {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'c', long)]
        chart: Option<String>,
        #[arg(short = 'g', long)]
        g: String,
    },
    /// `t`-adic valuation along the generic weighted path.
    PathValuation(ChartExpr),
    /// Whether a map is a weighted morphism.
    CheckMorphism(MapArg),
    /// Graph coordinates of a map and the graph criterion.
    GraphChart(MapArg),
    /// Filtration degree of a vector field.
    VfDegree {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'v', long = "field")]
        field: Option<String>,
    },
    /// Weighted transversality of two maps at a pair of points.
    Transverse {
        #[command(flatten)]
        ws: Ws,
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
        #[arg(short = 'p', long = "p", allow_hyphen_values = true)]
        p: String,
        #[arg(short = 'q', long = "q", allow_hyphen_values = true)]
        q: String,
    },
    /// Degree for the weighting induced by a singular Lie filtration.
    InducedDegree {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'F', long)]
        filtration: Option<String>,
        #[arg(short = 'f', long = "function")]
        f: String,
        /// Test membership in `C_(i)` instead of computing the degree.
        #[arg(short = 'i', long = "degree")]
        i: Option<i64>,
        #[arg(long, default_value_t = 8)]
        cap: i64,
    },
    /// Sampled cleanness of `N` for the distribution of one level.
    Clean {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'F', long)]
        filtration: Option<String>,
        /// Use the generators of levels `−1, …, −level`.
        #[arg(long, default_value_t = 1)]
        level: usize,
        /// Sample points on `N`, e.g. "0,0;1,0".
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    /// Filtration degree of a section.
    SectionDegree(SectionArgs),
    /// The dual bundle.
    Dual(BundleArg),
    /// The bundle with weights shifted by `−k`.
    Shift {
        #[command(flatten)]
        bundle: BundleArg,
        #[arg(short = 'k', long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Degree condition for a frame change `σ'_b = Σ_a T_ab σ_a`.
    TransitionCheck {
        #[command(flatten)]
        bundle: BundleArg,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        matrix: String,
    },
    /// Homogeneous approximation of a section.
    SectionHomog(SectionDegreeArgs),
    /// Rees interpolation of a section.
    SectionRees(SectionDegreeArgs),
    /// Jacobi identity and anchor compatibility.
    Jacobi(AlgebroidArg),
    /// Infinitesimally multiplicative weighting check.
    ImCheck(AlgebroidArg),
    /// Square zero and filtration degree of `d_A`.
    DaCheck(AlgebroidArg),
    /// Degree of the linear Poisson bracket on `A*`.
    PoissonCheck(AlgebroidArg),
    /// The graded normal algebroid.
    Graded(AlgebroidArg),
    /// The Rees deformation algebroid.
    ReesAlgebroid(AlgebroidArg),
    /// Lower central series dimensions.
    Lcs {
        #[command(flatten)]
        algebroid: AlgebroidArg,
        /// Use the isotropy algebra at this base point.
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Truncated BCH product of two coordinate vectors.
    Bch {
        #[command(flatten)]
        algebroid: AlgebroidArg,
        #[arg(short = 'x', long, allow_hyphen_values = true)]
        x: String,
        #[arg(short = 'y', long, allow_hyphen_values = true)]
        y: String,
    },
    /// Dilations as automorphisms of the BCH group law.
    DilationCheck(AlgebroidArg),
    /// Hypotheses (a) and (b) of the wide integration theorem.
    WideHypotheses {
        #[command(flatten)]
        algebroid: AlgebroidArg,
        /// Frame names per level, levels separated by `;`.
        #[arg(long)]
        levels: Option<String>,
        /// Sections spanning `B`, one per `;`.
        #[arg(short = 'B', long = "b", allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        points: Option<String>,
    },
    /// Lift `f^(i)` to the `r`-th order tangent bundle.
    Lift {
        #[arg(short = 'w', long)]
        workspace: Option<PathBuf>,
        #[arg(short = 'c', long)]
        chart: Option<String>,
        #[arg(short = 'f', long = "function")]
        f: String,
        #[arg(short = 'i', long)]
        i: usize,
        #[arg(short = 'r', long)]
        r: usize,
    },
    /// Lift `X^(-i)` of a vector field.
    LiftVf {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'v', long = "field")]
        field: Option<String>,
        #[arg(short = 'i', long)]
        i: usize,
        #[arg(short = 'r', long)]
        r: usize,
    },
    /// Cut-out equations of `Q ⊆ T_r M`.
    QModel {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'c', long)]
        chart: Option<String>,
        #[arg(short = 'r', long)]
        r: Option<usize>,
    },
    /// Degree recovered from `Q`.
    QDegree {
        #[command(flatten)]
        inner: ChartExpr,
        #[arg(short = 'r', long)]
        r: Option<usize>,
    },
    /// Whether `X^(-i)` is tangent to `Q`.
    Tangency {
        #[command(flatten)]
        ws: Ws,
        #[arg(short = 'v', long = "field")]
        field: Option<String>,
        #[arg(short = 'i', long)]
        i: usize,
        #[arg(short = 'r', long)]
        r: Option<usize>,
    },
    /// Whether `Q_A` is a subalgebroid of `T_r A`.
    LiftedAlgebroid {
        #[command(flatten)]
        algebroid: AlgebroidArg,
        #[arg(short = 'r', long)]
        r: Option<usize>,
    },
    /// Runs the invariant suites.
    Selftest {
        /// Run only this suite.
        #[arg(long)]
        suite: Option<String>,
        /// Run instances in order on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

/// Everything that stops a command short of a verdict.
#[derive(Debug)]
enum Failure {
    Input(String),
    /// A precondition that is itself a checked property, e.g. `f ∉ C_(i)`.
    Refuted(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.0)
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::DegreeTooLow { .. }
            | CoreError::NotZoomHomogeneous { .. }
            | CoreError::NotWeightedMorphism(_)
            | CoreError::DoesNotPreserveSubmanifold { .. } => Failure::Refuted(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn bad<T>(message: impl Into<String>) -> Outcome<T> {
    Err(Failure::Input(message.into()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, stderr: String::new() }
            } else {
                Output { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let name = command_name(&cli.command);
    let mut report = Report::new(name, echo);
    let result = execute(&cli, &mut report);
    let code = match result {
        Ok(()) => report.exit_code(),
        Err(Failure::Refuted(message)) => {
            report.verdict = Some(false);
            report.witnesses.push(message);
            1
        }
        Err(Failure::Input(message)) => {
            let stderr = format!("error: {message}\n");
            let stdout = match cli.format {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&serde_json::json!({
                        "command": name,
                        "error": message,
                    }))
                    .expect("serializable");
                    s.push('\n');
                    s
                }
                Format::Text => String::new(),
            };
            return Output { code: 2, stdout, stderr };
        }
    };
    let stdout = match cli.format {
        Format::Text => report.text(),
        Format::Json => report.json(),
    };
    Output { code, stdout, stderr: String::new() }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Degree(_) => "degree",
        Command::Homog(_) => "homog",
        Command::Rees(_) => "rees",
        Command::ZoomWeight { .. } => "zoom-weight",
        Command::PathValuation(_) => "path-valuation",
        Command::CheckMorphism(_) => "check-morphism",
        Command::GraphChart(_) => "graph-chart",
        Command::VfDegree { .. } => "vf-degree",
        Command::Transverse { .. } => "transverse",
        Command::InducedDegree { .. } => "induced-degree",
        Command::Clean { .. } => "clean",
        Command::SectionDegree(_) => "section-degree",
        Command::Dual(_) => "dual",
        Command::Shift { .. } => "shift",
        Command::TransitionCheck { .. } => "transition-check",
        Command::SectionHomog(_) => "section-homog",
        Command::SectionRees(_) => "section-rees",
        Command::Jacobi(_) => "jacobi",
        Command::ImCheck(_) => "im-check",
        Command::DaCheck(_) => "da-check",
        Command::PoissonCheck(_) => "poisson-check",
        Command::Graded(_) => "graded",
        Command::ReesAlgebroid(_) => "rees-algebroid",
        Command::Lcs { .. } => "lcs",
        Command::Bch { .. } => "bch",
        Command::DilationCheck(_) => "dilation-check",
        Command::WideHypotheses { .. } => "wide-hypotheses",
        Command::Lift { .. } => "lift",
        Command::LiftVf { .. } => "lift-vf",
        Command::QModel { .. } => "q-model",
        Command::QDegree { .. } => "q-degree",
        Command::Tangency { .. } => "tangency",
        Command::LiftedAlgebroid { .. } => "lifted-algebroid",
        Command::Selftest { .. } => "selftest",
    }
}

fn pick<'a, T>(
    kind: &str,
    flag: &str,
    map: &'a BTreeMap<String, T>,
    name: Option<&str>,
) -> Outcome<(&'a str, &'a T)> {
    let available = || map.keys().cloned().collect::<Vec<_>>().join(", ");
    match name {
        Some(n) => match map.get_key_value(n) {
            Some((k, v)) => Ok((k.as_str(), v)),
            None => bad(format!("no {kind} named `{n}` (available: {})", available())),
        },
        None if map.len() == 1 => {
            let (k, v) = map.iter().next().expect("one entry");
            Ok((k.as_str(), v))
        }
        None if map.is_empty() => bad(format!("workspace has no {kind}")),
        None => bad(format!("workspace has several {kind}s ({}); choose one with {flag}", available())),
    }
}

fn expr(flag: &str, text: &str) -> Outcome<Polynomial> {
    parse(text).map_err(|e| Failure::Input(format!("{flag}: {e}")))
}

fn exprs(flag: &str, text: &str) -> Outcome<Vec<Polynomial>> {
    parse_list(text).map_err(|e| Failure::Input(format!("{flag}: {e}")))
}

fn point(flag: &str, text: &str) -> Outcome<Vec<Rational>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|t| parse_rational(t).map_err(|e| Failure::Input(format!("{flag}: {e}"))))
        .collect()
}

fn points(flag: &str, text: &str) -> Outcome<Vec<Vec<Rational>>> {
    text.split(';').map(|t| point(flag, t)).collect()
}

fn matrix(flag: &str, text: &str) -> Outcome<Vec<Vec<Polynomial>>> {
    text.split(';').map(|row| exprs(flag, row)).collect()
}

fn joined(ps: &[Polynomial]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
}

fn format_point(p: &[Rational]) -> String {
    format!("({})", p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn term(coefficient: &Polynomial, name: &str) -> String {
    let c = coefficient.to_string();
    match c.as_str() {
        "1" => name.to_string(),
        "-1" => format!("-{name}"),
        _ if coefficient.num_terms() == 1 => format!("{c}*{name}"),
        _ => format!("({c})*{name}"),
    }
}

fn sum_of_terms(terms: impl IntoIterator<Item = String>) -> String {
    let terms: Vec<String> = terms.into_iter().collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn weighted_names(names: &[String], weights: impl IntoIterator<Item = i64>) -> String {
    names
        .iter()
        .zip(weights)
        .map(|(n, w)| format!("{n} ({w})"))
        .collect::<Vec<_>>()
        .join(", ")
}

fn chart_lines(chart: &WeightedChart) -> Vec<String> {
    vec![format!(
        "base: {}",
        weighted_names(chart.names(), chart.weights().iter().map(|&w| i64::from(w)))
    )]
}

fn bundle_lines(bundle: &WeightedBundleChart) -> Vec<String> {
    let mut lines = chart_lines(bundle.base());
    lines.push(format!(
        "frame: {}",
        weighted_names(bundle.frame(), bundle.vertical().iter().copied())
    ));
    lines.push(format!("fibre: {}", bundle.fibre().join(", ")));
    lines
}

fn algebroid_lines(algebroid: &AlgebroidData) -> Vec<String> {
    let mut lines = bundle_lines(algebroid.bundle());
    let frame = algebroid.bundle().frame();
    let k = algebroid.rank();
    for a in 0..k {
        for b in a + 1..k {
            let bracket = algebroid.frame_bracket(a, b);
            if bracket.iter().all(Polynomial::is_zero) {
                continue;
            }
            let rhs = sum_of_terms(
                bracket
                    .iter()
                    .zip(frame)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, n)| term(c, n)),
            );
            lines.push(format!("[{}, {}] = {rhs}", frame[a], frame[b]));
        }
    }
    let base = algebroid.base().names();
    for (a, row) in algebroid.anchor().iter().enumerate() {
        if row.iter().all(Polynomial::is_zero) {
            continue;
        }
        let field = sum_of_terms(
            row.iter()
                .zip(base)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, x)| term(c, &format!("d/d{x}"))),
        );
        lines.push(format!("anchor({}) = {field}", frame[a]));
    }
    lines
}

fn field_lines(field: &PolyVectorField) -> Vec<String> {
    let lines: Vec<String> = field
        .coefficients()
        .iter()
        .zip(field.chart().names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, x)| format!("d/d{x}: {c}"))
        .collect();
    if lines.is_empty() {
        vec!["0".into()]
    } else {
        lines
    }
}

struct Loaded {
    ws: Workspace,
}

impl Loaded {
    fn open(ws: &Ws) -> Outcome<Self> {
        Ok(Loaded {
            ws: load_workspace(&ws.workspace)?,
        })
    }

    fn chart(&self, name: &Option<String>) -> Outcome<&WeightedChart> {
        Ok(pick("chart", "-c", &self.ws.charts, name.as_deref())?.1)
    }

    fn bundle(&self, name: &Option<String>) -> Outcome<(&str, &WeightedBundleChart)> {
        let (n, (_, b)) = pick("bundle", "-b", &self.ws.bundles, name.as_deref())?;
        Ok((n, b))
    }

    fn algebroid(&self, name: &Option<String>) -> Outcome<(&str, &AlgebroidData)> {
        let (n, (_, a)) = pick("algebroid", "-a", &self.ws.algebroids, name.as_deref())?;
        Ok((n, a))
    }

    fn map(&self, name: Option<&str>) -> Outcome<&weightlab::weighting::PolynomialMap> {
        Ok(&pick("map", "-m", &self.ws.maps, name)?.1 .2)
    }

    fn field(&self, name: &Option<String>) -> Outcome<&PolyVectorField> {
        Ok(&pick("vector field", "-v", &self.ws.vector_fields, name.as_deref())?.1 .1)
    }

    fn filtration(&self, name: &Option<String>) -> Outcome<&crate::workspace::Filtration> {
        Ok(&pick("filtration", "-F", &self.ws.filtrations, name.as_deref())?.1 .1)
    }
}

fn section(args: &SectionArgs) -> Outcome<(Loaded, SectionElement)> {
    let loaded = Loaded::open(&args.bundle.ws)?;
    let (_, bundle) = loaded.bundle(&args.bundle.bundle)?;
    let coefficients = exprs("-s", &args.section)?;
    if coefficients.len() != bundle.rank() {
        return bad(format!(
            "-s: {} coefficients for a bundle of rank {}",
            coefficients.len(),
            bundle.rank()
        ));
    }
    let s = SectionElement::new(bundle.clone(), coefficients)?;
    Ok((loaded, s))
}

fn section_value_lines(s: &SectionElement) -> Vec<String> {
    s.bundle()
        .frame()
        .iter()
        .zip(s.coefficients())
        .map(|(n, c)| format!("{n}: {c}"))
        .collect()
}

fn default_order(chart: &WeightedChart, r: Option<usize>) -> usize {
    r.unwrap_or(chart.order() as usize)
}

fn execute(cli: &Cli, report: &mut Report) -> Outcome<()> {
    match &cli.command {
        Command::Degree(a) => {
            let l = Loaded::open(&a.ws)?;
            let chart = l.chart(&a.chart)?;
            let d = filtration_degree(chart, &expr("-f", &a.f)?)?;
            report.value.push(d.to_string());
        }
        Command::Homog(a) => {
            let l = Loaded::open(&a.inner.ws)?;
            let chart = l.chart(&a.inner.chart)?;
            let h = homogeneous_approximation(chart, &expr("-f", &a.inner.f)?, a.i)?;
            report.value.push(h.to_string());
        }
        Command::Rees(a) => {
            let l = Loaded::open(&a.inner.ws)?;
            let chart = l.chart(&a.inner.chart)?;
            let r = rees_interpolation(chart, &expr("-f", &a.inner.f)?, a.i)?;
            report.value.push(r.to_string());
        }
        Command::ZoomWeight { ws, chart, g } => {
            let l = Loaded::open(ws)?;
            let chart = l.chart(chart)?;
            report.value.push(zoom_weight(chart, &expr("-g", g)?)?.to_string());
        }
        Command::PathValuation(a) => {
            let l = Loaded::open(&a.ws)?;
            let chart = l.chart(&a.chart)?;
            let v = weighted_path_valuation(chart, &expr("-f", &a.f)?)?;
            report.value.push(v.to_string());
        }
        Command::CheckMorphism(a) => {
            let l = Loaded::open(&a.ws)?;
            let r = check_weighted_morphism(l.map(a.map.as_deref())?)?;
            report.verdict = Some(r.holds());
            let mut table = Table::new(["coordinate", "pullback degree", "weight"]);
            for (name, degree, weight) in &r.degrees {
                table.row([name.clone(), degree.to_string(), weight.to_string()]);
            }
            report.table = Some(table);
            report.witnesses = r.failures.iter().map(|w| w.to_string()).collect();
        }
        Command::GraphChart(a) => {
            let l = Loaded::open(&a.ws)?;
            let map = l.map(a.map.as_deref())?;
            let coords = graph_coordinate_degrees(map)?;
            let mut table = Table::new(["coordinate", "graph coordinate", "degree", "weight"]);
            for (c, w) in coords.iter().zip(map.target().weights()) {
                table.row([c.target.clone(), c.polynomial.to_string(), c.degree.to_string(), w.to_string()]);
            }
            report.table = Some(table);
            match graph_submanifold_chart(map) {
                Ok(g) => {
                    report.verdict = Some(true);
                    report.notes.extend(chart_lines(&g.chart));
                }
                Err(e) => {
                    report.verdict = Some(false);
                    report.witnesses.push(e.to_string());
                }
            }
        }
        Command::VfDegree { ws, field } => {
            let l = Loaded::open(ws)?;
            report.value.push(vector_field_degree(l.field(field)?)?.to_string());
        }
        Command::Transverse { ws, first, second, p, q } => {
            let l = Loaded::open(ws)?;
            let f = l.map(Some(first))?;
            let g = l.map(Some(second))?;
            let r = check_weighted_transverse_at_point(f, g, &point("-p", p)?, &point("-q", q)?)?;
            report.verdict = Some(r.holds());
            let mut table = Table::new(["weight", "rank", "dim"]);
            for (i, rank, dim) in &r.table {
                table.row([i.to_string(), rank.to_string(), dim.to_string()]);
            }
            report.table = Some(table);
            if let Some(i) = r.first_failure() {
                report.witnesses.push(format!("gr_{i} is not spanned"));
            }
        }
        Command::InducedDegree { ws, filtration, f, i, cap } => {
            let l = Loaded::open(ws)?;
            let filt = l.filtration(filtration)?;
            let f = expr("-f", f)?;
            l.ws.charts[&filt.chart].check_vars(&f)?;
            match i {
                Some(i) => {
                    report.verdict =
                        Some(induced_weighting_degree(&filt.levels, &filt.submanifold, &f, *i));
                }
                None => {
                    let d = induced_degree_up_to(&filt.levels, &filt.submanifold, &f, *cap);
                    report.value.push(if d == *cap { format!(">= {d}") } else { d.to_string() });
                }
            }
        }
        Command::Clean { ws, filtration, level, points: pts } => {
            let l = Loaded::open(ws)?;
            let filt = l.filtration(filtration)?;
            if *level == 0 || *level > filt.levels.len() {
                return bad(format!("--level must be between 1 and {}", filt.levels.len()));
            }
            let generators: Vec<PolyVectorField> =
                filt.levels[..*level].iter().flatten().cloned().collect();
            let samples = points("--points", pts)?;
            let r = check_clean_distribution(
                &generators,
                &l.ws.charts[&filt.chart],
                &filt.submanifold,
                &samples,
            )?;
            report.verdict = Some(r.holds());
            let mut table = Table::new(["point", "dim(D_p + T_pN)"]);
            for (p, d) in samples.iter().zip(&r.dimensions) {
                table.row([format_point(p), d.to_string()]);
            }
            report.table = Some(table);
            report.notes.push("sampled check at the given points".into());
        }
        Command::SectionDegree(a) => {
            let (_, s) = section(a)?;
            report.value.push(section_degree(&s)?.to_string());
        }
        Command::Dual(a) => {
            let l = Loaded::open(&a.ws)?;
            let (name, b) = l.bundle(&a.bundle)?;
            let dual = dual_bundle(b);
            let base = &l.ws.bundles[name].0;
            report.object = Some(serde_json::to_value(bundle_doc(base, &dual)).expect("json"));
            report.notes = bundle_lines(&dual);
        }
        Command::Shift { bundle, k } => {
            let l = Loaded::open(&bundle.ws)?;
            let (name, b) = l.bundle(&bundle.bundle)?;
            let shifted = shift_bundle(b, *k);
            let base = &l.ws.bundles[name].0;
            report.object = Some(serde_json::to_value(bundle_doc(base, &shifted)).expect("json"));
            report.notes = bundle_lines(&shifted);
        }
        Command::TransitionCheck { bundle, matrix: m } => {
            let l = Loaded::open(&bundle.ws)?;
            let (_, b) = l.bundle(&bundle.bundle)?;
            let r = check_transition_degrees(b, &matrix("--matrix", m)?)?;
            report.verdict = Some(r.holds());
            report.witnesses = r.failures.iter().map(|w| w.to_string()).collect();
        }
        Command::SectionHomog(a) => {
            let (_, s) = section(&a.section)?;
            report.value = section_value_lines(&section_homogeneous_approximation(&s, a.i)?);
        }
        Command::SectionRees(a) => {
            let (_, s) = section(&a.section)?;
            report.value = section_value_lines(&section_rees_interpolation(&s, a.i)?);
        }
        Command::Jacobi(a) => {
            let l = Loaded::open(&a.ws)?;
            let (_, alg) = l.algebroid(&a.algebroid)?;
            let w = check_jacobi(alg);
            report.verdict = Some(w.is_none());
            report.witnesses.extend(w.map(|w| w.to_string()));
        }
        Command::ImCheck(a) => {
            let l = Loaded::open(&a.ws)?;
            let (_, alg) = l.algebroid(&a.algebroid)?;
            let r = check_im_weighting(alg)?;
            report.verdict = Some(r.holds());
            report.witnesses = r.failures.iter().map(|w| w.to_string()).collect();
            let frame = alg.bundle().frame();
            for &a in &r.positive_weights {
                report.notes.push(format!("note: {} has positive weight", frame[a]));
            }
        }
        Command::DaCheck(a) => {
            let l = Loaded::open(&a.ws)?;
            let (_, alg) = l.algebroid(&a.algebroid)?;
            let r = da_check(alg)?;
            report.verdict = Some(r.holds());
            report.witnesses = r.failures.iter().map(|w| w.to_string()).collect();
        }
        Command::PoissonCheck(a) => {
            let l = Loaded::open(&a.ws)?;
            let (_, alg) = l.algebroid(&a.algebroid)?;
            let model = PoissonModel::new(alg)?;
            let r = model.degree_check()?;
            let jacobi = model.jacobi_failure();
            report.verdict = Some(r.holds() && jacobi.is_none());
            report.witnesses = r.failures.iter().map(|w| w.to_string()).collect();
            if let Some((u, v, w)) = jacobi {
                report.witnesses.push(format!("Jacobi fails on ({u}, {v}, {w})"));
            }
        }
        Command::Graded(a) | Command::ReesAlgebroid(a) => {
            let l = Loaded::open(&a.ws)?;
            let (name, alg) = l.algebroid(&a.algebroid)?;
            let (derived, suffix) = if matches!(cli.command, Command::Graded(_)) {
                (graded_normal_algebroid(alg)?, "gr")
            } else {
                (rees_deformation_algebroid(alg)?, "rees")
            };
            let doc = algebroid_document(&format!("{name}_{suffix}"), &derived);
            report.object = Some(serde_json::to_value(doc).expect("json"));
            report.notes = algebroid_lines(&derived);
        }
        Command::Lcs { algebroid, point: at } => {
            let l = Loaded::open(&algebroid.ws)?;
            let (_, alg) = l.algebroid(&algebroid.algebroid)?;
            let g = match at {
                Some(p) => isotropy_algebra(alg, &point("--point", p)?)?,
                None => alg.clone(),
            };
            let dims = lower_central_series(&g)?;
            report.value.push(dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "));
        }
        Command::Bch { algebroid, x, y } => {
            let l = Loaded::open(&algebroid.ws)?;
            let (_, alg) = l.algebroid(&algebroid.algebroid)?;
            let g = GradedNilpotentLie::new(alg.clone())?;
            let xy = bch_product(&g, &exprs("-x", x)?, &exprs("-y", y)?)?;
            report.value.push(joined(&xy));
        }
        Command::DilationCheck(a) => {
            let l = Loaded::open(&a.ws)?;
            let (_, alg) = l.algebroid(&a.algebroid)?;
            let g = GradedNilpotentLie::new(alg.clone())?;
            let r = dilation_check(&g)?;
            report.verdict = Some(r.holds());
            if let Some((c, diff)) = r.failure {
                let frame = alg.bundle().frame();
                report.witnesses.push(format!("component {}: δ(X·Y) − δX·δY = {diff}", frame[c]));
            }
        }
        Command::WideHypotheses { algebroid, levels, b, points: pts } => {
            let l = Loaded::open(&algebroid.ws)?;
            let (_, alg) = l.algebroid(&algebroid.algebroid)?;
            let bundle = alg.bundle();
            let levels = match levels {
                None => filtration_levels(alg),
                Some(text) => text
                    .split(';')
                    .map(|level| {
                        level
                            .split(',')
                            .map(str::trim)
                            .filter(|n| !n.is_empty())
                            .map(|n| {
                                bundle.frame_index(n).ok_or_else(|| {
                                    Failure::Input(format!("--levels: `{n}` is not a frame element"))
                                })
                            })
                            .collect::<Outcome<Vec<usize>>>()
                    })
                    .collect::<Outcome<Vec<_>>>()?,
            };
            let generators = matrix("--b", b)?;
            if let Some(g) = generators.iter().find(|g| g.len() != bundle.rank()) {
                return bad(format!("--b: section with {} coefficients, rank is {}", g.len(), bundle.rank()));
            }
            let samples = match pts {
                Some(text) => points("--points", text)?,
                None => vec![vec![Rational::from_integer(0.into()); alg.base().dim()]],
            };
            let r = check_wide_integration_hypotheses(alg, &levels, &generators, &samples)?;
            report.verdict = Some(r.holds());
            report.value.push(format!("(a) bracket condition: {}", r.bracket_condition()));
            report.value.push(format!("(b) constant rank: {}", r.constant_rank_condition()));
            let mut table = Table::new(["level", "frame", "dimensions"]);
            for (n, (level, dims)) in levels.iter().zip(&r.dimensions).enumerate() {
                let names: Vec<&str> = level.iter().map(|&a| bundle.frame()[a].as_str()).collect();
                let dims: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                table.row([(n + 1).to_string(), names.join(","), dims.join(",")]);
            }
            report.table = Some(table);
            report.witnesses = r.bracket_failures.iter().map(|w| w.to_string()).collect();
        }
        Command::Lift { workspace, chart, f, i, r } => {
            let f = expr("-f", f)?;
            if let Some(path) = workspace {
                let l = Loaded::open(&Ws { workspace: path.clone() })?;
                l.chart(chart)?.check_vars(&f)?;
            }
            report.value.push(lift_function(&f, *i, *r)?.to_string());
        }
        Command::LiftVf { ws, field, i, r } => {
            let l = Loaded::open(ws)?;
            report.value = field_lines(&lift_vector_field(l.field(field)?, *i, *r)?);
        }
        Command::QModel { ws, chart, r } => {
            let l = Loaded::open(ws)?;
            let chart = l.chart(chart)?;
            let q = q_model(chart, default_order(chart, *r))?;
            report.value = q.equations();
            if report.value.is_empty() {
                report.value.push("Q = T_r M".into());
            }
        }
        Command::QDegree { inner, r } => {
            let l = Loaded::open(&inner.ws)?;
            let chart = l.chart(&inner.chart)?;
            let q = q_model(chart, default_order(chart, *r))?;
            report.value.push(degree_via_q(&q, &expr("-f", &inner.f)?)?.to_string());
        }
        Command::Tangency { ws, field, i, r } => {
            let l = Loaded::open(ws)?;
            let field = l.field(field)?;
            let q = q_model(field.chart(), default_order(field.chart(), *r))?;
            let t = tangency_check(&q, field, *i)?;
            report.verdict = Some(t.holds());
            if let Some((jet, value)) = t.failure {
                report.witnesses.push(format!("d{jet}: {value} does not vanish on Q"));
            }
        }
        Command::LiftedAlgebroid { algebroid, r } => {
            let l = Loaded::open(&algebroid.ws)?;
            let (_, alg) = l.algebroid(&algebroid.algebroid)?;
            let fibre = alg.bundle().vertical().iter().map(|v| (-v).max(0) as usize).max().unwrap_or(0);
            let r = r.unwrap_or_else(|| fibre.max(alg.base().order() as usize).max(1));
            let report_ = lifted_algebroid_check(alg, r)?;
            report.verdict = Some(report_.holds());
            report.value.push(format!("order {r}"));
            report.witnesses = report_.failures.iter().map(|w| w.to_string()).collect();
        }
        Command::Selftest { suite, sequential } => {
            let execution = if *sequential { Execution::Sequential } else { Execution::default() };
            let config = SuiteConfig { seed: cli.seed, execution };
            let suites: Vec<_> = all_suites()
                .into_iter()
                .filter(|(n, _)| suite.as_deref().is_none_or(|s| s == *n))
                .collect();
            if suites.is_empty() {
                let names: Vec<&str> = all_suites().iter().map(|(n, _)| *n).collect();
                return bad(format!("unknown suite (available: {})", names.join(", ")));
            }
            let mut all = true;
            let mut table = Table::new(["suite", "instances", "failures"]);
            for (_, run) in suites {
                let outcome = run(&config);
                all &= outcome.passed();
                table.row([outcome.name.to_string(), outcome.instances.to_string(), outcome.failures.len().to_string()]);
                report
                    .witnesses
                    .extend(outcome.failures.iter().take(3).map(|f| format!("{}: {f}", outcome.name)));
            }
            report.verdict = Some(all);
            report.value.push(format!("seed {}", cli.seed));
            report.table = Some(table);
        }
    }
    Ok(())
}
