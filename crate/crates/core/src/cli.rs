//! The `slalom` command-line interface.
//!
//! Every subcommand prints one JSON report on standard output with the
//! top-level fields `tool`, `version`, `command`, `input`, `result` and
//! `config`. Exit status is 0 on success, 2 on usage or configuration
//! errors and 1 when a computation fails; failures print a JSON diagnostic
//! on standard error.
//!
//! Configuration is read from the file named by `--config` or the
//! `SLALOM_CONFIG` environment variable (`key = value` lines, `#` comments)
//! and then overridden by flags.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::braid::{self, BraidOptions};
use crate::covering::{self, LiftOptions, PolyPath, SlalomDecomposition};
use crate::elliptic::{self, Method};
use crate::svg;
use crate::syllables::{self, BoundConstants, BoundaryCondition, Classification};
use crate::word::{parse_word, FreeWord};
use crate::Error;

pub const TOOL: &str = "slalom";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
pub const CONFIG_ENV: &str = "SLALOM_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Config {
    pub bound_constants: BoundConstants,
    pub samples_per_turn: usize,
    pub lift_tolerance: f64,
    pub svg_scale: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            bound_constants: BoundConstants::default(),
            samples_per_turn: covering::DEFAULT_SAMPLES_PER_TURN,
            lift_tolerance: 1e-6,
            svg_scale: 40.0,
        }
    }
}

#[derive(Debug, Default, Clone, Copy, PartialEq)]
struct Overrides {
    c_minus: Option<f64>,
    c_plus: Option<f64>,
    samples_per_turn: Option<usize>,
    lift_tolerance: Option<f64>,
    svg_scale: Option<f64>,
}

impl Overrides {
    fn parse_file(text: &str) -> Result<Overrides, String> {
        let mut o = Overrides::default();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected `key = value`", n + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |_| format!("config line {}: bad value `{value}` for `{key}`", n + 1);
            match key {
                "c_minus" => o.c_minus = Some(value.parse().map_err(bad)?),
                "c_plus" => o.c_plus = Some(value.parse().map_err(bad)?),
                "lift_tolerance" => o.lift_tolerance = Some(value.parse().map_err(bad)?),
                "svg_scale" => o.svg_scale = Some(value.parse().map_err(bad)?),
                "samples_per_turn" => {
                    o.samples_per_turn = Some(
                        value
                            .parse()
                            .map_err(|_| format!("config line {}: bad value `{value}` for `{key}`", n + 1))?,
                    )
                }
                other => return Err(format!("config line {}: unknown key `{other}`", n + 1)),
            }
        }
        Ok(o)
    }

    fn or(self, fallback: Overrides) -> Overrides {
        Overrides {
            c_minus: self.c_minus.or(fallback.c_minus),
            c_plus: self.c_plus.or(fallback.c_plus),
            samples_per_turn: self.samples_per_turn.or(fallback.samples_per_turn),
            lift_tolerance: self.lift_tolerance.or(fallback.lift_tolerance),
            svg_scale: self.svg_scale.or(fallback.svg_scale),
        }
    }

    fn apply(self, base: Config) -> Result<Config, String> {
        let bound_constants = BoundConstants::new(
            self.c_minus.unwrap_or(base.bound_constants.c_minus()),
            self.c_plus.unwrap_or(base.bound_constants.c_plus()),
        )
        .map_err(|e| e.to_string())?;
        let config = Config {
            bound_constants,
            samples_per_turn: self.samples_per_turn.unwrap_or(base.samples_per_turn),
            lift_tolerance: self.lift_tolerance.unwrap_or(base.lift_tolerance),
            svg_scale: self.svg_scale.unwrap_or(base.svg_scale),
        };
        if config.samples_per_turn < 16 {
            return Err(format!(
                "samples_per_turn must be at least 16, got {}",
                config.samples_per_turn
            ));
        }
        if !(config.lift_tolerance > 0.0 && config.lift_tolerance.is_finite()) {
            return Err(format!(
                "lift_tolerance must be positive, got {}",
                config.lift_tolerance
            ));
        }
        if !(config.svg_scale > 0.0 && config.svg_scale.is_finite()) {
            return Err(format!("svg_scale must be positive, got {}", config.svg_scale));
        }
        Ok(config)
    }
}

impl Config {
    /// Parses a `key = value` configuration text on top of the defaults.
    pub fn from_text(text: &str) -> Result<Config, String> {
        Overrides::parse_file(text)?.apply(Config::default())
    }

    fn lift_options(&self) -> LiftOptions {
        LiftOptions {
            tolerance: self.lift_tolerance,
            ..LiftOptions::default()
        }
    }

    fn braid_options(&self) -> BraidOptions {
        BraidOptions {
            samples_per_crossing: (self.samples_per_turn / 2).max(16),
            lift: self.lift_options(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "slalom",
    version,
    about = "Extremal length invariants of the twice-punctured plane and pure 3-braids"
)]
struct Cli {
    /// Configuration file (`key = value` lines); overrides $SLALOM_CONFIG.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    c_minus: Option<f64>,
    #[arg(long, global = true)]
    c_plus: Option<f64>,
    #[arg(long, global = true)]
    samples_per_turn: Option<usize>,
    #[arg(long, global = true)]
    lift_tolerance: Option<f64>,
    #[arg(long, global = true)]
    svg_scale: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Λ(w) with both boundary conditions.
    Lambda { word: String },
    /// Syllable decomposition and bounds for one boundary condition.
    Syllables {
        word: String,
        #[arg(long, default_value = "pb")]
        boundary: BoundaryCondition,
    },
    /// Extremal length of the rectangle R^M.
    RectangleModule {
        #[arg(long = "M", allow_negative_numbers = true)]
        m: f64,
        #[arg(long, default_value = "closed")]
        method: Method,
    },
    /// Extrema of λ(R^M)/log(1+M) over a logarithmic sweep.
    VerifyBounds {
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long)]
        samples: usize,
    },
    /// Lift of the standard curve of a word, split into slalom pieces.
    Lift {
        word: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Image of a pure 3-braid in the free group and its bounds.
    Braid {
        braid: String,
        #[arg(long, default_value = "tr")]
        boundary: BoundaryCondition,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Word -> curve -> word round trips on random words.
    Roundtrip {
        #[arg(long)]
        count: usize,
        #[arg(long)]
        maxlen: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Lambda { .. } => "lambda",
            Command::Syllables { .. } => "syllables",
            Command::RectangleModule { .. } => "rectangle-module",
            Command::VerifyBounds { .. } => "verify-bounds",
            Command::Lift { .. } => "lift",
            Command::Braid { .. } => "braid",
            Command::Roundtrip { .. } => "roundtrip",
        }
    }

    fn input(&self) -> Value {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        match self {
            Command::Lambda { word } => json!({ "word": word }),
            Command::Syllables { word, boundary } => json!({ "word": word, "boundary": boundary }),
            Command::RectangleModule { m, method } => json!({ "M": m, "method": method }),
            Command::VerifyBounds { from, to, samples } => json!({ "from": from, "to": to, "samples": samples }),
            Command::Lift { word, svg } => json!({ "word": word, "svg": path(svg) }),
            Command::Braid { braid, boundary, svg } => {
                json!({ "braid": braid, "boundary": boundary, "svg": path(svg) })
            }
            Command::Roundtrip { count, maxlen, seed } => json!({ "count": count, "maxlen": maxlen, "seed": seed }),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub input: Value,
    pub result: Value,
    pub config: Config,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("reports serialise to JSON")
}

fn point(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse(_) => "parse",
        Error::Word(_) => "word",
        Error::Constants(_) => "constants",
        Error::Elliptic(_) => "elliptic",
        Error::Covering(_) => "covering",
        Error::Braid(_) => "braid",
        Error::Io { .. } => "io",
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    std::fs::write(path, contents).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn lambda_result(word: &FreeWord, config: &Config) -> Value {
    let k = &config.bound_constants;
    let side = |bc| {
        let b = syllables::lambda_bounds(word, bc, k);
        json!({ "lower": b.lower, "upper": b.upper, "exceptional": b.exceptional, "extremal_length": b.extremal_length })
    };
    let exceptional = |bc| syllables::classify_exceptional(word, bc) == Classification::Exceptional;
    json!({
        "word": word,
        "syllables": syllables::decompose(word).syllables,
        "lambda": syllables::lambda_invariant(word),
        "exceptional_tr": exceptional(BoundaryCondition::TotallyReal),
        "exceptional_pb": exceptional(BoundaryCondition::PerpendicularBisector),
        "tr": side(BoundaryCondition::TotallyReal),
        "pb": side(BoundaryCondition::PerpendicularBisector),
    })
}

fn pieces_table(pieces: &SlalomDecomposition) -> Value {
    let rows: Vec<Value> = pieces
        .pieces
        .iter()
        .map(|p| {
            let rect_upper = elliptic::elementary_slalom_bounds(p.start_component, p.end_component)
                .ok()
                .map(|b| b.rect_upper);
            json!({
                "half_plane": p.half_plane,
                "start_component": p.start_component,
                "end_component": p.end_component,
                "exponent": p.exponent(),
                "trivial": p.trivial,
                "half_slalom": p.half_slalom,
                "rect_upper": rect_upper,
            })
        })
        .collect();
    Value::Array(rows)
}

fn lift_result(word: &FreeWord, svg_path: Option<&Path>, config: &Config) -> Result<Value, Error> {
    let curve = covering::word_to_curve(word, config.samples_per_turn)?;
    let lift = covering::lift_from_axis(&curve, &config.lift_options())?;
    let pieces = covering::slalom_decompose(&lift)?;
    if let Some(path) = svg_path {
        write_file(path, &svg::lift_svg(&lift, &pieces, config.svg_scale))?;
    }
    Ok(json!({
        "word": word,
        "samples": lift.len(),
        "start": point(lift.start()),
        "end": point(lift.end()),
        "pieces": pieces_table(&pieces),
        "recovered_word": pieces.to_word()?,
    }))
}

fn braid_result(text: &str, bc: BoundaryCondition, svg_path: Option<&Path>, config: &Config) -> Result<Value, Error> {
    let b = braid::parse_braid(text)?;
    let opts = config.braid_options();
    let strands = braid::braid_to_strands(&b, opts.samples_per_crossing)?;
    let curve: PolyPath = braid::cross_ratio_curve(&strands)?;
    let lift = covering::lift_from_axis(&curve, &opts.lift)?;
    let pieces = covering::slalom_decompose(&lift)?;
    let word = pieces.to_word()?;
    if let Some(path) = svg_path {
        write_file(path, &svg::braid_svg(&curve, &lift, &pieces, config.svg_scale))?;
    }
    let report = syllables::lambda_report(&word, bc, &config.bound_constants);
    Ok(json!({
        "braid": b,
        "boundary": bc,
        "word": word,
        "syllables": report.syllables,
        "lambda": report.lambda,
        "lower": report.lower,
        "upper": report.upper,
        "exceptional": report.exceptional,
    }))
}

fn roundtrip_result(count: usize, maxlen: usize, seed: u64, config: &Config) -> Result<Value, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failed = Vec::new();
    for _ in 0..count {
        let len = rand::Rng::gen_range(&mut rng, 0..=maxlen);
        let word = FreeWord::random(&mut rng, len, 3);
        let curve = covering::word_to_curve(&word, config.samples_per_turn)?;
        let outcome = covering::curve_to_word_with(&curve, &config.lift_options());
        match outcome {
            Ok(got) if got == word => {}
            Ok(got) => failed.push(json!({ "word": word, "got": got })),
            Err(e) => failed.push(json!({ "word": word, "error": e.to_string() })),
        }
    }
    Ok(json!({
        "count": count,
        "maxlen": maxlen,
        "seed": seed,
        "failures": failed.len(),
        "failed": failed,
    }))
}

fn execute(command: &Command, config: &Config) -> Result<Value, Error> {
    match command {
        Command::Lambda { word } => Ok(lambda_result(&parse_word(word)?, config)),
        Command::Syllables { word, boundary } => {
            let word = parse_word(word)?;
            Ok(to_value(&syllables::lambda_report(
                &word,
                *boundary,
                &config.bound_constants,
            )))
        }
        Command::RectangleModule { m, method } => Ok(to_value(&elliptic::rect_extremal_length(*m, *method)?)),
        Command::VerifyBounds { from, to, samples } => {
            if !(*from > 0.0 && from <= to) {
                return Err(elliptic::EllipticError::BelowHalf(*from).into());
            }
            let report = elliptic::verify_log_bounds(&elliptic::log_sweep(*from, *to, *samples))?;
            let mut value = to_value(&report);
            value["spread"] = json!(report.spread());
            Ok(value)
        }
        Command::Lift { word, svg } => lift_result(&parse_word(word)?, svg.as_deref(), config),
        Command::Braid { braid, boundary, svg } => braid_result(braid, *boundary, svg.as_deref(), config),
        Command::Roundtrip { count, maxlen, seed } => roundtrip_result(*count, *maxlen, *seed, config),
    }
}

fn usage_error(message: String) -> CliOutcome {
    CliOutcome {
        code: 2,
        stdout: String::new(),
        stderr: format!(
            "{}\n",
            json!({ "tool": TOOL, "error": { "kind": "usage", "message": message } })
        ),
    }
}

fn load_config(cli: &Cli) -> Result<Config, String> {
    let path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let from_file = match path {
        Some(path) => {
            let text =
                std::fs::read_to_string(&path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
            Overrides::parse_file(&text)?
        }
        None => Overrides::default(),
    };
    let flags = Overrides {
        c_minus: cli.c_minus,
        c_plus: cli.c_plus,
        samples_per_turn: cli.samples_per_turn,
        lift_tolerance: cli.lift_tolerance,
        svg_scale: cli.svg_scale,
    };
    flags.or(from_file).apply(Config::default())
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run_cli<I, T>(argv: I) -> CliOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliOutcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                },
                _ => CliOutcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: e.render().to_string(),
                },
            };
        }
    };
    let config = match load_config(&cli) {
        Ok(config) => config,
        Err(message) => return usage_error(message),
    };
    match execute(&cli.command, &config) {
        Ok(result) => {
            let report = Report {
                tool: TOOL,
                version: VERSION,
                command: cli.command.name(),
                input: cli.command.input(),
                result,
                config,
            };
            let mut stdout = serde_json::to_string_pretty(&report).expect("reports serialise to JSON");
            stdout.push('\n');
            CliOutcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CliOutcome {
            code: 1,
            stdout: String::new(),
            stderr: format!(
                "{}\n",
                json!({ "tool": TOOL, "error": { "kind": error_kind(&e), "message": e.to_string() } })
            ),
        },
    }
}
