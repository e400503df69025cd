use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dynamics::{PairEquations, ZeroModeEquations};
use crate::ed::ramp::{EdRampOptions, MAX_RAMP_SPINS};
use crate::ed::spectrum::DENSE_MAX_SPINS;
use crate::ed::system::MAX_SPINS;
use crate::error::Result;
use crate::fit::{lin_grid, log_grid};
use crate::lattice::Lattice;
use crate::model::ModelSpec;
use crate::table::TableMeta;
use crate::thermo::{AnchorRule, BoundaryExtension};

/// Parameter grid: `log:a:b:n`, `lin:a:b:n` or a comma-separated list.
#[derive(Clone, Debug, PartialEq)]
pub enum Grid {
    Log { a: f64, b: f64, n: usize },
    Lin { a: f64, b: f64, n: usize },
    List(Vec<f64>),
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            Grid::Log { a, b, n } => log_grid(a, b, n),
            Grid::Lin { a, b, n } => lin_grid(a, b, n),
            Grid::List(ref v) => v.clone(),
        }
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Grid::Log { a, b, n } => write!(f, "log:{a}:{b}:{n}"),
            Grid::Lin { a, b, n } => write!(f, "lin:{a}:{b}:{n}"),
            Grid::List(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}

impl FromStr for Grid {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("grid '{s}': '{x}' is not a number"))
        };
        match parts.as_slice() {
            [kind @ ("log" | "lin"), a, b, n] => {
                let (a, b) = (num(a)?, num(b)?);
                let n: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("grid '{s}': point count '{n}' is not an integer"))?;
                if *kind == "log" {
                    if !(a > 0.0 && b > 0.0) {
                        return Err(format!("grid '{s}': logarithmic bounds must be positive"));
                    }
                    Ok(Grid::Log { a, b, n })
                } else {
                    Ok(Grid::Lin { a, b, n })
                }
            }
            [list] => Ok(Grid::List(
                list.split(',')
                    .filter(|x| !x.trim().is_empty())
                    .map(num)
                    .collect::<std::result::Result<_, _>>()?,
            )),
            _ => Err(format!("grid '{s}': expected log:a:b:n, lin:a:b:n or a list")),
        }
    }
}

impl Serialize for Grid {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Grid {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StaticMethod {
    Lsw,
    Ed,
}

impl StaticMethod {
    pub fn name(self) -> &'static str {
        match self {
            StaticMethod::Lsw => "lsw",
            StaticMethod::Ed => "ed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RampMethod {
    Tlsw,
    EdRamp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AnchorKind {
    ZeroAtTmin,
    ValueAtTmax,
    Ln2AtInfinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Boundary {
    Linear,
    Constant,
}

#[derive(Debug, Parser)]
#[command(name = "spinsqueeze", version, about = "Adiabatic spin squeezing in XXZ lattice models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file (standard output when omitted). CSV output also writes a
    /// JSON mirror next to it.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state observables over a field grid.
    Sweep(SweepArgs),
    /// Time evolution along a field ramp.
    Ramp(RampArgs),
    /// Canonical-ensemble observables over field and temperature grids.
    Thermal(ThermalArgs),
    /// Entropy curve from an energy table.
    Entropy(EntropyArgs),
    /// Squeezing-versus-entropy map.
    Join(JoinArgs),
    /// Compare one observable between methods.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct SystemArgs {
    #[arg(short = 'd', long = "dim", default_value_t = 2)]
    pub d: usize,
    /// Linear size of the hypercubic lattice.
    #[arg(short = 'L', long = "size")]
    pub l: Option<usize>,
    /// Rectangular cluster such as `3x4` (overrides -L).
    #[arg(long)]
    pub extents: Option<String>,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    pub delta: f64,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value_t = StaticMethod::Lsw)]
    pub method: StaticMethod,
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub omega_grid: String,
}

#[derive(Debug, Args)]
pub struct RampArgs {
    #[arg(long, value_enum, default_value_t = RampMethod::Tlsw)]
    pub method: RampMethod,
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_i: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub omega_f: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub hold: f64,
    /// Time step (chosen from the fastest mode when omitted).
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    #[arg(long, default_value_t = 20)]
    pub stride: usize,
    /// Use the zero-mode equations with the doubled right-hand side.
    #[arg(long)]
    pub literal_zero_mode: bool,
}

#[derive(Debug, Args)]
pub struct ThermalArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub omega_grid: String,
    #[arg(long)]
    pub t_grid: String,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    /// CSV with columns `T` and `e`.
    #[arg(long)]
    pub input: PathBuf,
    /// Field to select when the table holds several.
    #[arg(long)]
    pub omega: Option<f64>,
    #[arg(long, value_enum, default_value_t = AnchorKind::ZeroAtTmin)]
    pub anchor: AnchorKind,
    /// Entropy per spin at the highest temperature, for `value-at-tmax`.
    #[arg(long)]
    pub anchor_value: Option<f64>,
    #[arg(long, value_enum, default_value_t = Boundary::Linear)]
    pub boundary: Boundary,
    /// Estimated excitation gap, used to check the zero-entropy anchor.
    #[arg(long)]
    pub gap: Option<f64>,
}

#[derive(Debug, Args)]
pub struct JoinArgs {
    /// CSV with columns `omega`, `T` and `xi2`.
    #[arg(long)]
    pub squeezing: PathBuf,
    /// Entropy curves (`T,c,s`), one per field.
    #[arg(long, num_args = 1.., required = true)]
    pub entropy: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "lsw,ed")]
    pub methods: Vec<StaticMethod>,
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long)]
    pub omega_grid: String,
    #[arg(long, default_value = "gap")]
    pub column: String,
    /// Power-law fit window `a:b` in the field.
    #[arg(long)]
    pub fit_window: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    pub d: usize,
    pub extents: Vec<usize>,
    pub delta: f64,
}

impl SystemSpec {
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::rectangular(&self.extents)
    }

    pub fn n_sites(&self) -> usize {
        self.extents.iter().product()
    }

    pub fn model(&self, omega: f64) -> Result<ModelSpec> {
        ModelSpec::new(self.lattice()?, self.delta, omega)
    }

    pub fn meta(&self, omega: Option<f64>) -> TableMeta {
        let l = match self.extents.as_slice() {
            [first, rest @ ..] if rest.iter().all(|x| x == first) => first.to_string(),
            e => e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("x"),
        };
        TableMeta {
            d: self.d,
            l,
            delta: self.delta,
            omega,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Sweep {
        method: StaticMethod,
        system: SystemSpec,
        omega_grid: Grid,
    },
    Ramp {
        method: RampMethod,
        system: SystemSpec,
        omega_i: f64,
        omega_f: f64,
        tau: f64,
        hold: f64,
        dt: f64,
        stride: usize,
        zero_mode: ZeroModeEquations,
    },
    Thermal {
        system: SystemSpec,
        omega_grid: Grid,
        t_grid: Grid,
    },
    Entropy {
        input: PathBuf,
        omega: Option<f64>,
        anchor: AnchorRule,
        boundary: BoundaryExtension,
        gap: Option<f64>,
    },
    Join {
        squeezing: PathBuf,
        entropy: Vec<PathBuf>,
    },
    Compare {
        methods: Vec<StaticMethod>,
        system: SystemSpec,
        omega_grid: Grid,
        column: String,
        fit_window: Option<(f64, f64)>,
    },
}

/// Everything that determines the content of an output file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub task: Task,
    pub format: Format,
}

/// A validated configuration and where to write its result.
#[derive(Clone, Debug, PartialEq)]
pub struct Run {
    pub config: RunConfig,
    pub output: Option<PathBuf>,
}

/// All problems found in a configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigError(pub Vec<String>);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join("; "))
    }
}

impl std::error::Error for ConfigError {}

const COLUMNS: [&str; 9] = [
    "jx", "jx_per_spin", "var_jx", "var_jy", "var_jz", "cov_yz", "xi2", "fq", "gap",
];

/// Default spin-wave step: a twentieth of the fastest initial period scale.
const TLSW_DT_FACTOR: f64 = 0.05;
const TLSW_DT_MAX: f64 = 0.01;

struct Checker(Vec<String>);

impl Checker {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.0.push(msg());
        }
    }

    fn system(&mut self, args: &SystemArgs) -> Option<SystemSpec> {
        let before = self.0.len();
        self.check((1..=3).contains(&args.d), || {
            format!("dimension must be 1, 2 or 3, got {}", args.d)
        });
        self.check(args.delta > -1.0 && args.delta <= 1.0, || {
            format!("delta must lie in (-1, 1], got {}", args.delta)
        });
        let extents = match (&args.extents, args.l) {
            (Some(e), _) => {
                let parsed: std::result::Result<Vec<usize>, _> =
                    e.split('x').map(|x| x.trim().parse::<usize>()).collect();
                match parsed {
                    Ok(v) => {
                        self.check(v.len() == args.d, || {
                            format!("extents '{e}' do not match dimension {}", args.d)
                        });
                        v
                    }
                    Err(_) => {
                        self.0.push(format!("extents '{e}' must look like 3x4"));
                        vec![]
                    }
                }
            }
            (None, Some(l)) => vec![l; args.d],
            (None, None) => {
                self.0.push("lattice size missing: pass -L or --extents".into());
                vec![]
            }
        };
        self.check(extents.iter().all(|&l| l >= 2), || {
            "every lattice extent must be at least 2".into()
        });
        (self.0.len() == before).then(|| SystemSpec {
            d: args.d,
            extents,
            delta: args.delta,
        })
    }

    fn grid(&mut self, name: &str, spec: &str) -> Option<Grid> {
        match spec.parse::<Grid>() {
            Ok(g) => Some(g),
            Err(e) => {
                self.0.push(format!("{name}: {e}"));
                None
            }
        }
    }

    fn positive_fields(&mut self, grid: &Grid, why: &str) {
        let vals = grid.values();
        self.check(vals.iter().all(|&w| w.is_finite() && w >= 0.0), || {
            "fields must be finite and non-negative".into()
        });
        self.check(vals.iter().all(|&w| w != 0.0), || {
            format!("omega = 0 is not allowed: {why}")
        });
    }

    fn spin_limit(&mut self, system: &Option<SystemSpec>, limit: usize, what: &str) {
        if let Some(s) = system {
            let n = s.n_sites();
            self.check(n <= limit, || format!("{what} supports at most {limit} spins, got {n}"));
        }
    }
}

fn static_field_reason(method: StaticMethod) -> &'static str {
    match method {
        StaticMethod::Lsw => "gapless mode (the k = 0 spin wave has zero energy)",
        StaticMethod::Ed => "<J^x> vanishes and the squeezing parameter is undefined",
    }
}

/// Check a parsed command line against every module precondition and
/// normalize it into a [`RunConfig`].
pub fn validate_config(cli: &Cli) -> std::result::Result<Run, ConfigError> {
    let mut c = Checker(Vec::new());
    let task = match &cli.command {
        Command::Sweep(a) => {
            let system = c.system(&a.system);
            let grid = c.grid("omega-grid", &a.omega_grid);
            if let Some(g) = &grid {
                c.positive_fields(g, static_field_reason(a.method));
            }
            if a.method == StaticMethod::Ed {
                c.spin_limit(&system, MAX_SPINS, "exact diagonalization");
            }
            system.zip(grid).map(|(system, omega_grid)| Task::Sweep {
                method: a.method,
                system,
                omega_grid,
            })
        }
        Command::Ramp(a) => {
            let system = c.system(&a.system);
            c.check(a.omega_f > 0.0 && a.omega_i > a.omega_f && a.omega_i.is_finite(), || {
                format!("ramp needs omega_i > omega_f > 0, got {} -> {}", a.omega_i, a.omega_f)
            });
            c.check(a.tau > 0.0 && a.tau.is_finite(), || format!("tau must be positive, got {}", a.tau));
            c.check(a.hold >= 0.0 && a.hold.is_finite(), || {
                format!("hold must be non-negative, got {}", a.hold)
            });
            c.check(a.stride >= 1, || "stride must be at least 1".into());
            if let Some(dt) = a.dt {
                c.check(dt > 0.0 && dt.is_finite(), || format!("dt must be positive, got {dt}"));
            }
            if a.method == RampMethod::EdRamp {
                c.spin_limit(&system, MAX_RAMP_SPINS, "ed-ramp");
                c.check(!a.literal_zero_mode, || {
                    "--literal-zero-mode only applies to tlsw".into()
                });
            }
            let zero_mode = if a.literal_zero_mode {
                ZeroModeEquations::Literal
            } else {
                ZeroModeEquations::Derived
            };
            let a_max = match (system.as_ref(), a.method) {
                (Some(s), RampMethod::Tlsw) => s
                    .model(a.omega_i.max(0.0))
                    .ok()
                    .map(|m| PairEquations::new(&m, zero_mode).max_a(m.omega)),
                _ => None,
            };
            let dt = match (a.method, a.dt, a_max) {
                (_, Some(dt), _) => Some(dt),
                (RampMethod::EdRamp, None, _) => Some(EdRampOptions::default().dt),
                (RampMethod::Tlsw, None, Some(a_max)) => Some((TLSW_DT_FACTOR / a_max).min(TLSW_DT_MAX)),
                _ => None,
            };
            if let (Some(dt), Some(a_max)) = (dt, a_max) {
                c.check(dt * a_max <= 0.1, || {
                    format!(
                        "dt = {dt} does not resolve the fastest spin wave (dt * max A_k = {} > 0.1)",
                        dt * a_max
                    )
                });
            }
            match (system, dt, c.0.is_empty()) {
                (Some(system), Some(dt), true) => Some(Task::Ramp {
                    method: a.method,
                    system,
                    omega_i: a.omega_i,
                    omega_f: a.omega_f,
                    tau: a.tau,
                    hold: a.hold,
                    dt,
                    stride: a.stride,
                    zero_mode,
                }),
                _ => None,
            }
        }
        Command::Thermal(a) => {
            let system = c.system(&a.system);
            c.spin_limit(&system, DENSE_MAX_SPINS, "ed-thermal");
            let omega_grid = c.grid("omega-grid", &a.omega_grid);
            if let Some(g) = &omega_grid {
                c.positive_fields(g, static_field_reason(StaticMethod::Ed));
            }
            let t_grid = c.grid("t-grid", &a.t_grid);
            if let Some(g) = &t_grid {
                let ts = g.values();
                c.check(ts.iter().all(|&t| t > 0.0 && t.is_finite()), || {
                    "temperatures must be positive and finite".into()
                });
            }
            match (system, omega_grid, t_grid) {
                (Some(system), Some(omega_grid), Some(t_grid)) => Some(Task::Thermal {
                    system,
                    omega_grid,
                    t_grid,
                }),
                _ => None,
            }
        }
        Command::Entropy(a) => {
            c.check(a.input.is_file(), || format!("input file {} not found", a.input.display()));
            let anchor = match (a.anchor, a.anchor_value) {
                (AnchorKind::ZeroAtTmin, None) => Some(AnchorRule::ZeroAtTmin),
                (AnchorKind::Ln2AtInfinity, None) => Some(AnchorRule::Ln2AtInfinity),
                (AnchorKind::ValueAtTmax, Some(v)) if v.is_finite() => Some(AnchorRule::ValueAtTmax(v)),
                (AnchorKind::ValueAtTmax, _) => {
                    c.0.push("value-at-tmax needs a finite --anchor-value".into());
                    None
                }
                (_, Some(_)) => {
                    c.0.push("--anchor-value only applies to value-at-tmax".into());
                    None
                }
            };
            if let Some(g) = a.gap {
                c.check(g > 0.0, || format!("gap estimate must be positive, got {g}"));
            }
            let boundary = match a.boundary {
                Boundary::Linear => BoundaryExtension::Linear,
                Boundary::Constant => BoundaryExtension::Constant,
            };
            anchor.map(|anchor| Task::Entropy {
                input: a.input.clone(),
                omega: a.omega,
                anchor,
                boundary,
                gap: a.gap,
            })
        }
        Command::Join(a) => {
            c.check(a.squeezing.is_file(), || {
                format!("squeezing file {} not found", a.squeezing.display())
            });
            for p in &a.entropy {
                c.check(p.is_file(), || format!("entropy file {} not found", p.display()));
            }
            Some(Task::Join {
                squeezing: a.squeezing.clone(),
                entropy: a.entropy.clone(),
            })
        }
        Command::Compare(a) => {
            let system = c.system(&a.system);
            let grid = c.grid("omega-grid", &a.omega_grid);
            c.check(a.methods.len() >= 2, || "compare needs at least two methods".into());
            for &m in &a.methods {
                if let Some(g) = &grid {
                    c.positive_fields(g, static_field_reason(m));
                }
                if m == StaticMethod::Ed {
                    c.spin_limit(&system, MAX_SPINS, "exact diagonalization");
                }
            }
            c.check(COLUMNS.contains(&a.column.as_str()), || {
                format!("unknown column '{}' (one of {})", a.column, COLUMNS.join(", "))
            });
            c.check(!(a.column == "var_jx" && a.methods.contains(&StaticMethod::Lsw)), || {
                "var_jx is only available from exact diagonalization".into()
            });
            let fit_window = a.fit_window.as_deref().and_then(|w| {
                let parsed = w
                    .split_once(':')
                    .and_then(|(lo, hi)| Some((lo.parse::<f64>().ok()?, hi.parse::<f64>().ok()?)));
                match parsed {
                    Some((lo, hi)) if lo > 0.0 && hi > lo => Some((lo, hi)),
                    _ => {
                        c.0.push(format!("fit window '{w}' must be lo:hi with 0 < lo < hi"));
                        None
                    }
                }
            });
            match (system, grid) {
                (Some(system), Some(omega_grid)) => Some(Task::Compare {
                    methods: a.methods.clone(),
                    system,
                    omega_grid,
                    column: a.column.clone(),
                    fit_window,
                }),
                _ => None,
            }
        }
    };
    match task {
        Some(task) if c.0.is_empty() => Ok(Run {
            config: RunConfig {
                task,
                format: cli.format,
            },
            output: cli.output.clone(),
        }),
        _ => Err(ConfigError(c.0)),
    }
}
