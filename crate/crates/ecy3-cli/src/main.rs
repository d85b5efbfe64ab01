//! Command-line front end: every computation in the library, with
//! deterministic text or JSON output.
//!
//! Exit codes: 0 on success, 2 on bad arguments or invalid input data,
//! 3 when an internal consistency check fails (e.g. the two h-series
//! routes disagree).

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ecy3::counts::{self, Anchors, CMode, CountLedger, EtaChoice, ThetaChoice};
use ecy3::geometry::{self, LinePosition, PlaneCurveInvariants};
use ecy3::lattice::{self, root_lattice_a, GramLattice};
use ecy3::modforms;
use ecy3::qseries::QSeries;
use ecy3::{Error, DEFAULT_PREC};

#[derive(Parser)]
#[command(
    name = "ecy3",
    version,
    about = "Exact section-curve counts and Gromov-Witten series of the Weierstrass \
             elliptic Calabi-Yau threefold over the projective plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a named q-expansion
    Series {
        /// Which series to print
        name: SeriesName,
        /// Truncation order (inclusive)
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Vertical-contribution mode; only valid with `gw`
        #[arg(long, value_enum)]
        c_mode: Option<CModeArg>,
        /// Theta interpretation for the conjectural mode (required with it)
        #[arg(long, value_enum)]
        conj_theta: Option<ThetaArg>,
        /// Euler-product interpretation for the conjectural mode (required with it)
        #[arg(long, value_enum)]
        conj_eta: Option<EtaArg>,
    },
    /// Dual-curve invariants from the Pluecker formulas
    Pluecker {
        degree: u64,
        nodes: u64,
        cusps: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Lattice and surface-class computations
    #[command(subcommand)]
    Lattice(LatticeCommand),
}

#[derive(Subcommand)]
enum LatticeCommand {
    /// Theta series of a negative definite lattice
    Theta {
        lattice: LatticeName,
        #[arg(long, default_value_t = DEFAULT_PREC)]
        prec: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// All vectors of a given negative norm, in lexicographic order
    Enum {
        lattice: LatticeName,
        #[arg(long, allow_hyphen_values = true)]
        norm: i64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Norm of the projection of a section class away from (f, z)
    Project {
        #[arg(long)]
        sz: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Class of the k-th power of a section under the group law
    MwPower {
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        sz: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Singular-fiber classification for a line position
    Classify {
        position: PositionArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SeriesName {
    E4,
    E6,
    Eta,
    EtaInv36,
    ThetaA1,
    ThetaA2,
    Phi,
    H,
    Gw,
}

impl SeriesName {
    fn label(self) -> &'static str {
        match self {
            SeriesName::E4 => "e4",
            SeriesName::E6 => "e6",
            SeriesName::Eta => "eta",
            SeriesName::EtaInv36 => "eta-inv36",
            SeriesName::ThetaA1 => "theta-a1",
            SeriesName::ThetaA2 => "theta-a2",
            SeriesName::Phi => "phi",
            SeriesName::H => "h",
            SeriesName::Gw => "gw",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CModeArg {
    Zero,
    Conjecture,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ThetaArg {
    A1,
    A2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EtaArg {
    Eta,
    EtaInv36,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeName {
    A1,
    A2,
    A1a1,
}

impl LatticeName {
    fn label(self) -> &'static str {
        match self {
            LatticeName::A1 => "a1",
            LatticeName::A2 => "a2",
            LatticeName::A1a1 => "a1a1",
        }
    }

    fn build(self) -> Result<GramLattice, Failure> {
        let a1 = || root_lattice_a(1).map_err(Failure::from);
        match self {
            LatticeName::A1 => a1(),
            LatticeName::A2 => root_lattice_a(2).map_err(Failure::from),
            LatticeName::A1a1 => Ok(a1()?.direct_sum(&a1()?)),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PositionArg {
    GenericTangent,
    FlexTangent,
    Bitangent,
    TangentAtFlex,
    CuspSpecialDirection,
    CuspGenericDirection,
    Transverse,
}

impl PositionArg {
    fn to_position(self) -> LinePosition {
        match self {
            PositionArg::GenericTangent => LinePosition::GenericTangent,
            PositionArg::FlexTangent => LinePosition::FlexTangent,
            PositionArg::Bitangent => LinePosition::Bitangent,
            PositionArg::TangentAtFlex => LinePosition::TangentAtFlex,
            PositionArg::CuspSpecialDirection => LinePosition::CuspSpecialDirection,
            PositionArg::CuspGenericDirection => LinePosition::CuspGenericDirection,
            PositionArg::Transverse => LinePosition::Transverse,
        }
    }
}

/// A failed run: message for stderr plus the process exit code.
struct Failure {
    message: String,
    code: i32,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        let code = match error {
            // Inconsistent mathematics or broken internal plumbing.
            Error::HSeriesMismatch { .. }
            | Error::UnexpectedLowOrderCount { .. }
            | Error::NonIntegralCoefficient { .. }
            | Error::SingularSystem
            | Error::DimensionMismatch { .. }
            | Error::NonInvertible
            | Error::OutOfRange { .. }
            | Error::UnsupportedWeight(_)
            | Error::AsymmetricGram
            | Error::InvalidComponentIndex { .. } => 3,
            // Reachable from the command line with bad input data.
            Error::UnsupportedRank(_)
            | Error::IndefiniteLattice
            | Error::OddLattice(_)
            | Error::NonNegativeNorm(_)
            | Error::DegreeTooSmall(_)
            | Error::NonIntegralNodes { .. }
            | Error::NegativeInvariant { .. } => 2,
        };
        Failure {
            message: error.to_string(),
            code,
        }
    }
}

/// Everything a command produces, rendered at the end in either format.
struct Output {
    command: String,
    parameters: Vec<(&'static str, String)>,
    /// Result rows for the text format, in display order.
    rows: Vec<(String, String)>,
    /// Result object for the JSON envelope.
    result: Value,
    provenance: Vec<String>,
}

impl Output {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => self.render_json(),
        }
    }

    fn render_text(&self) -> String {
        let mut lines: Vec<(String, String)> = vec![("command".to_string(), self.command.clone())];
        for (key, value) in &self.parameters {
            lines.push(((*key).to_string(), value.clone()));
        }
        lines.extend(self.rows.iter().cloned());
        let width = lines
            .iter()
            .map(|(k, _)| k.len())
            .max()
            .unwrap_or(0)
            .max(10);
        let mut text = String::new();
        for (key, value) in &lines {
            text.push_str(&format!("{key:<width$}  {value}\n"));
        }
        for (i, entry) in self.provenance.iter().enumerate() {
            let key = if i == 0 { "provenance" } else { "" };
            text.push_str(&format!("{key:<width$}  {entry}\n"));
        }
        text.pop();
        text
    }

    fn render_json(&self) -> String {
        // serde_json maps are BTree-backed, so keys serialize sorted.
        let mut parameters = serde_json::Map::new();
        for (key, value) in &self.parameters {
            parameters.insert((*key).to_string(), Value::String(value.clone()));
        }
        let envelope = json!({
            "command": self.command,
            "parameters": Value::Object(parameters),
            "result": self.result,
            "provenance": self.provenance,
        });
        serde_json::to_string_pretty(&envelope).expect("envelope is valid JSON")
    }
}

/// Coefficient rows `q^n -> value` for the text format.
fn series_rows(series: &QSeries) -> Vec<(String, String)> {
    series
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| (format!("q^{n}"), c.to_string()))
        .collect()
}

/// JSON payload for a series: exponent-indexed coefficient strings.
fn series_result(series: &QSeries) -> Value {
    json!({
        "prec": series.prec().to_string(),
        "coefficients": series.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
    })
}

fn run_series(
    name: SeriesName,
    prec: usize,
    c_mode: Option<CModeArg>,
    conj_theta: Option<ThetaArg>,
    conj_eta: Option<EtaArg>,
) -> Result<Output, Failure> {
    if name != SeriesName::Gw && (c_mode.is_some() || conj_theta.is_some() || conj_eta.is_some()) {
        return Err(Failure::usage(
            "--c-mode, --conj-theta and --conj-eta only apply to `series gw`",
        ));
    }

    let mut parameters = vec![
        ("name", name.label().to_string()),
        ("prec", prec.to_string()),
    ];
    let (series, provenance) = match name {
        SeriesName::E4 => (
            modforms::eisenstein(4, prec)?,
            vec!["eisenstein(4) = 1 + 240 sum sigma_3(n) q^n".to_string()],
        ),
        SeriesName::E6 => (
            modforms::eisenstein(6, prec)?,
            vec!["eisenstein(6) = 1 - 504 sum sigma_5(n) q^n".to_string()],
        ),
        SeriesName::Eta => (
            modforms::euler_product(prec),
            vec!["euler_product: pentagonal-number expansion of prod (1-q^m)".to_string()],
        ),
        SeriesName::EtaInv36 => {
            let surface = geometry::e3_surface_invariants();
            (
                counts::bl_correction(prec),
                vec![
                    "euler_product raised to the nodal-fiber exponent -36".to_string(),
                    format!(
                        "e3_surface_invariants.nodal_fibers={}",
                        surface.nodal_fibers
                    ),
                ],
            )
        }
        SeriesName::ThetaA1 => (
            root_lattice_a(1)?.theta_series(prec)?,
            vec!["theta_series(A1): exhaustive enumeration, exponent |norm|/2".to_string()],
        ),
        SeriesName::ThetaA2 => (
            root_lattice_a(2)?.theta_series(prec)?,
            vec!["theta_series(A2): exhaustive enumeration, exponent |norm|/2".to_string()],
        ),
        SeriesName::Phi => {
            let anchors = Anchors::from_geometry()?;
            let fit = counts::phi_fit(prec, &anchors)?;
            let mut provenance = anchors.provenance.clone();
            provenance.push(format!(
                "mform_fit(weight={}, constraints={{(0,{}),(2,{})}})",
                counts::PHI_WEIGHT,
                anchors.phi0,
                anchors.phi2
            ));
            let monomials = modforms::basis(counts::PHI_WEIGHT, 0)?.monomials;
            for ((a, b), c) in monomials.into_iter().zip(&fit.coefficients) {
                provenance.push(format!("basis coefficient on E4^{a} E6^{b}: {c}"));
            }
            (fit.series, provenance)
        }
        SeriesName::H => {
            let ledger = CountLedger::build(prec, CMode::Zero)?;
            let mut provenance = ledger.anchors.provenance.clone();
            provenance.push(
                "cross-check: closed-form route == correction route at every exponent >= 1"
                    .to_string(),
            );
            provenance.push(format!("h(0) pinned to {}", counts::H_ZERO));
            (ledger.h_closed_form, provenance)
        }
        SeriesName::Gw => {
            let (mode, mode_note) = match c_mode.unwrap_or(CModeArg::Zero) {
                CModeArg::Zero => (
                    CMode::Zero,
                    "c-mode=zero: vertical contributions omitted".to_string(),
                ),
                CModeArg::Conjecture => {
                    let (Some(theta), Some(eta)) = (conj_theta, conj_eta) else {
                        return Err(Failure::usage(
                            "c-mode=conjecture requires explicit --conj-theta and --conj-eta; \
                             the formula is ambiguous and has no default reading",
                        ));
                    };
                    let theta_choice = match theta {
                        ThetaArg::A1 => ThetaChoice::A1,
                        ThetaArg::A2 => ThetaChoice::A2,
                    };
                    let eta_choice = match eta {
                        EtaArg::Eta => EtaChoice::Eta,
                        EtaArg::EtaInv36 => EtaChoice::EtaInv36,
                    };
                    let theta_label = match theta {
                        ThetaArg::A1 => "a1",
                        ThetaArg::A2 => "a2",
                    };
                    let eta_label = match eta {
                        EtaArg::Eta => "eta",
                        EtaArg::EtaInv36 => "eta-inv36",
                    };
                    parameters.push(("c_mode", "conjecture".to_string()));
                    parameters.push(("conj_theta", theta_label.to_string()));
                    parameters.push(("conj_eta", eta_label.to_string()));
                    (
                        CMode::Conjecture {
                            theta: theta_choice,
                            eta: eta_choice,
                        },
                        format!(
                            "EXPERIMENTAL c-mode=conjecture(theta={theta_label}, eta={eta_label}): \
                             ambiguous formula, values unasserted"
                        ),
                    )
                }
            };
            if matches!(mode, CMode::Zero) {
                parameters.push(("c_mode", "zero".to_string()));
            }
            let ledger = CountLedger::build(prec, mode)?;
            let mut provenance = ledger.anchors.provenance.clone();
            provenance.push(
                "h cross-check: closed-form route == correction route at every exponent >= 1"
                    .to_string(),
            );
            provenance.push("gw(n) = c_(n,0) + sum_i h(i) [eta^-36]_(n-i)".to_string());
            provenance.push(mode_note);
            (ledger.gw, provenance)
        }
    };

    Ok(Output {
        command: "series".to_string(),
        parameters,
        rows: series_rows(&series),
        result: series_result(&series),
        provenance,
    })
}

fn run_pluecker(degree: u64, nodes: u64, cusps: u64) -> Result<Output, Failure> {
    let dual = geometry::pluecker_dual(&PlaneCurveInvariants {
        degree,
        nodes,
        cusps,
    })?;
    Ok(Output {
        command: "pluecker".to_string(),
        parameters: vec![
            ("degree", degree.to_string()),
            ("nodes", nodes.to_string()),
            ("cusps", cusps.to_string()),
        ],
        rows: vec![
            ("dual degree".to_string(), dual.degree.to_string()),
            ("dual nodes".to_string(), dual.nodes.to_string()),
            ("dual cusps".to_string(), dual.cusps.to_string()),
        ],
        result: json!({
            "degree": dual.degree.to_string(),
            "nodes": dual.nodes.to_string(),
            "cusps": dual.cusps.to_string(),
        }),
        provenance: vec![
            "d* = d(d-1) - 2n - 3c; c* = 3d(d-2) - 6n - 8c; n* = (d*(d*-1) - 3c* - d)/2"
                .to_string(),
        ],
    })
}

fn run_lattice(command: &LatticeCommand) -> Result<Output, Failure> {
    match command {
        LatticeCommand::Theta { lattice, prec, .. } => {
            let theta = lattice.build()?.theta_series(*prec)?;
            Ok(Output {
                command: "lattice theta".to_string(),
                parameters: vec![
                    ("lattice", lattice.label().to_string()),
                    ("prec", prec.to_string()),
                ],
                rows: series_rows(&theta),
                result: series_result(&theta),
                provenance: vec![
                    "exhaustive short-vector enumeration, exponent |norm|/2".to_string()
                ],
            })
        }
        LatticeCommand::Enum { lattice, norm, .. } => {
            if *norm < -1_000_000 {
                return Err(Failure::usage(format!(
                    "norm {norm} is out of the supported range: the exhaustive search \
                     is meant for |norm| <= 1000000"
                )));
            }
            let vectors = lattice.build()?.enumerate_by_norm(*norm)?;
            let mut rows = vec![("count".to_string(), vectors.len().to_string())];
            for (i, v) in vectors.iter().enumerate() {
                let coords: Vec<String> = v.coords.iter().map(i64::to_string).collect();
                rows.push((format!("v{i}"), format!("({})", coords.join(", "))));
            }
            let json_vectors: Vec<Value> = vectors
                .iter()
                .map(|v| {
                    Value::Array(
                        v.coords
                            .iter()
                            .map(|c| Value::String(c.to_string()))
                            .collect(),
                    )
                })
                .collect();
            Ok(Output {
                command: "lattice enum".to_string(),
                parameters: vec![
                    ("lattice", lattice.label().to_string()),
                    ("norm", norm.to_string()),
                ],
                rows,
                result: json!({
                    "count": vectors.len().to_string(),
                    "vectors": json_vectors,
                }),
                provenance: vec!["exhaustive box search, lexicographic order".to_string()],
            })
        }
        LatticeCommand::Project { sz, .. } => {
            let sz = i64::from(*sz);
            let norm = lattice::projection_norm(sz);
            let gram_route = lattice::gram_projection_norm(sz);
            Ok(Output {
                command: "lattice project".to_string(),
                parameters: vec![("sz", sz.to_string())],
                rows: vec![
                    ("projection norm".to_string(), norm.to_string()),
                    ("gram projection norm".to_string(), gram_route.to_string()),
                ],
                result: json!({
                    "projection_norm": norm.to_string(),
                    "gram_projection_norm": gram_route.to_string(),
                }),
                provenance: vec![
                    "projection_norm(sz) = -2(sz+3)".to_string(),
                    "gram route: exact 2x2 solve against the (f, z) pairing".to_string(),
                ],
            })
        }
        LatticeCommand::MwPower { k, sz, .. } => {
            let class = lattice::mw_power_class(*k, i64::from(*sz));
            let display = format!(
                "{}*sigma + {}*z + {}*f",
                class.sigma_coef, class.z_coef, class.f_coef
            );
            Ok(Output {
                command: "lattice mw-power".to_string(),
                parameters: vec![("k", k.to_string()), ("sz", sz.to_string())],
                rows: vec![
                    ("class".to_string(), display),
                    ("sigma coef".to_string(), class.sigma_coef.to_string()),
                    ("z coef".to_string(), class.z_coef.to_string()),
                    ("f coef".to_string(), class.f_coef.to_string()),
                    (
                        "self intersection".to_string(),
                        class.self_intersection().to_string(),
                    ),
                ],
                result: json!({
                    "sigma_coef": class.sigma_coef.to_string(),
                    "z_coef": class.z_coef.to_string(),
                    "f_coef": class.f_coef.to_string(),
                    "self_intersection": class.self_intersection().to_string(),
                }),
                provenance: vec![
                    "mw_power_class(k, sz) = k*sigma - (k-1)*z + (sz+3)k(k-1)*f".to_string()
                ],
            })
        }
        LatticeCommand::Classify { position, .. } => {
            let row = geometry::classify_line(position.to_position());
            let singularities: Vec<String> = row
                .singularities
                .iter()
                .map(|s| s.label().to_string())
                .collect();
            let gram_text = match &row.a0_lattice {
                Some(lattice) => format!("{:?}", lattice.gram()),
                None => "none".to_string(),
            };
            let gram_json = match &row.a0_lattice {
                Some(lattice) => Value::Array(
                    lattice
                        .gram()
                        .iter()
                        .map(|r| {
                            Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect())
                        })
                        .collect(),
                ),
                None => Value::Null,
            };
            Ok(Output {
                command: "lattice classify".to_string(),
                parameters: vec![("position", row.position.label().to_string())],
                rows: vec![
                    (
                        "singularities".to_string(),
                        if singularities.is_empty() {
                            "smooth".to_string()
                        } else {
                            singularities.join(" + ")
                        },
                    ),
                    ("kodaira fiber".to_string(), row.fiber_label()),
                    ("a0 gram".to_string(), gram_text),
                    (
                        "monodromy cover degree".to_string(),
                        row.monodromy_cover_degree().to_string(),
                    ),
                ],
                result: json!({
                    "singularities": singularities,
                    "kodaira": row.fiber_label(),
                    "a0_gram": gram_json,
                    "monodromy_cover_degree": row.monodromy_cover_degree().to_string(),
                }),
                provenance: vec![
                    "classification by the position of the line against the discriminant"
                        .to_string(),
                ],
            })
        }
    }
}

fn run(cli: &Cli) -> Result<(Output, Format), Failure> {
    match &cli.command {
        Command::Series {
            name,
            prec,
            format,
            c_mode,
            conj_theta,
            conj_eta,
        } => Ok((
            run_series(*name, *prec, *c_mode, *conj_theta, *conj_eta)?,
            *format,
        )),
        Command::Pluecker {
            degree,
            nodes,
            cusps,
            format,
        } => Ok((run_pluecker(*degree, *nodes, *cusps)?, *format)),
        Command::Lattice(lattice_command) => {
            let format = match lattice_command {
                LatticeCommand::Theta { format, .. }
                | LatticeCommand::Enum { format, .. }
                | LatticeCommand::Project { format, .. }
                | LatticeCommand::MwPower { format, .. }
                | LatticeCommand::Classify { format, .. } => *format,
            };
            Ok((run_lattice(lattice_command)?, format))
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((output, format)) => println!("{}", output.render(format)),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            std::process::exit(failure.code);
        }
    }
}
