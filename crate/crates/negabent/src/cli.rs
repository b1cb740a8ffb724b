//! Command-line front end. Exit codes: 0 success, 1 failed verification, 2 parse
//! failure, 3 flavor or variant mismatch, 4 violated precondition, 5 budget exhausted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use negabent_core::boolfn::Flavor;
use negabent_core::constructions::{
    build_gbent_from_am, cex_z8_bent, inverse_z2k_bent, monomial_involution_family,
    trace_monomial_hs, zero_hs, AmClass,
};
use negabent_core::linalg::{is_independent, span_contains};
use negabent_core::star::{desarguesian_spread, z2k_bent_from_partition};
use negabent_core::vect::{construct_kppp_bent_negabent, VectFn};
use negabent_core::{BoolFn, ConstructionError, Field, FnError, ShiftDirection};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::Config;
use crate::format::{write_gen_csv, write_walsh_csv, FormatError, FunctionFile};
use crate::report::analyze;
use crate::search::{self, NegaTarget, SearchOutput};
use crate::verify::{self, Scale, ScaleError};

pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_FLAVOR: u8 = 3;
pub const EXIT_PRECONDITION: u8 = 4;
pub const EXIT_BUDGET: u8 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "negabent",
    version,
    about = "Bent, negabent and generalized bent functions: analysis, constructions, checks and searches"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Field as `m=<int>[,poly=0x<hex>]`.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[arg(long, global = true)]
    pub k: Option<u32>,
    #[arg(long, global = true, value_enum)]
    pub flavor: Option<FlavorArg>,
    /// Output path (the function file for `construct`, the whole output otherwise).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Worker threads; defaults to the available cores.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// `key = value` file with `field.<m> = 0x<poly>`, `workers` and `seed`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Mv,
    Uv,
    Bv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predicate verdicts, spectrum statistics and difference-set parameters of a function file.
    Analyze { path: PathBuf },
    /// Build a function, verify it and write it out.
    Construct(ConstructArgs),
    /// Run a named verification suite (or `all`).
    Verify(VerifyArgs),
    /// Run a search and print JSON lines followed by a summary line.
    Search(SearchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructName {
    Kppp,
    AmGbent,
    Cex,
    InverseZ2k,
    SpreadZ2k,
    NegaShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HChoice {
    Zero,
    Trace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    ToNega,
    ToPlain,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[arg(value_enum)]
    pub name: ConstructName,
    /// Field elements, decimal or `0x` hex, comma separated.
    #[arg(long, value_delimiter = ',', value_parser = parse_element)]
    pub alphas: Vec<u32>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub e: Option<u64>,
    #[arg(long, value_delimiter = ',', value_parser = parse_element)]
    pub c: Vec<u32>,
    #[arg(long, value_enum, default_value_t = HChoice::Zero)]
    pub h: HChoice,
    /// Input function file for `nega-shift`.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Direction::ToNega)]
    pub direction: Direction,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    pub id: String,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchName {
    AmComplete,
    Cex,
    NegaGbentNontrivial,
    GbentNegaGbent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Monomial,
    Linearized,
    All,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(value_enum)]
    pub name: SearchName,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: u64,
    #[arg(long)]
    pub e: Option<u64>,
    #[arg(long, value_enum, default_value_t = ClassArg::Monomial)]
    pub class: ClassArg,
    /// Dimension for the nega searches when `--field` is not given.
    #[arg(long)]
    pub n: Option<u32>,
}

fn parse_element(s: &str) -> Result<u32, String> {
    let s = s.trim();
    match s.strip_prefix("0x") {
        Some(h) => u32::from_str_radix(h, 16),
        None => s.parse(),
    }
    .map_err(|_| format!("bad field element {s:?}"))
}

/// A failed run: exit code and message for stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Syntax(_) => Failure::new(EXIT_PARSE, e.to_string()),
            FormatError::Flavor(_) => Failure::new(EXIT_FLAVOR, e.to_string()),
        }
    }
}

impl From<ConstructionError> for Failure {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::PostconditionFailed(c) => {
                Failure::new(EXIT_VERIFY, format!("postcondition failed: {c}"))
            }
            ConstructionError::Fn(f) => f.into(),
            other => Failure::new(
                EXIT_PRECONDITION,
                format!("precondition violated: {}", other.clause()),
            ),
        }
    }
}

impl From<FnError> for Failure {
    fn from(e: FnError) -> Self {
        let clause = match e {
            FnError::FlavorMismatch => return Failure::new(EXIT_FLAVOR, e.to_string()),
            FnError::NotBent | FnError::NotGbent => {
                return Failure::new(EXIT_VERIFY, format!("postcondition failed: {e}"))
            }
            FnError::DependentAlphas => "linear independence",
            FnError::SpanContainsOne => "1 outside the span of the alphas",
            FnError::KTooSmall(_) => "k >= 2",
            FnError::OddN(_) => "n even",
            _ => return Failure::new(EXIT_PRECONDITION, format!("precondition violated: {e}")),
        };
        Failure::new(
            EXIT_PRECONDITION,
            format!("precondition violated: {clause}"),
        )
    }
}

impl From<ScaleError> for Failure {
    fn from(e: ScaleError) -> Self {
        Failure::new(EXIT_PRECONDITION, format!("scale out of range: {}", e.0))
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_PARSE, format!("{}: {e}", path.display()))
}

/// Resolved settings: config file first, flags on top.
struct Ctx {
    common: Common,
    config: Config,
}

impl Ctx {
    fn field(&self, default_m: u32) -> Result<Field, Failure> {
        let field = match &self.common.field {
            Some(text) => self.config.parse_field(text),
            None => self.config.field(default_m),
        };
        field.map_err(|e| Failure::new(EXIT_PARSE, format!("--field: {e}")))
    }

    fn field_given(&self) -> Result<Option<Field>, Failure> {
        self.common
            .field
            .as_ref()
            .map(|_| self.field(0))
            .transpose()
    }

    fn registry(&self, m: u32) -> Result<Field, Failure> {
        self.config
            .field(m)
            .map_err(|e| Failure::new(EXIT_FLAVOR, e.to_string()))
    }

    fn seed(&self) -> Option<u64> {
        self.common.seed.or(self.config.seed)
    }

    /// Writes to `--out` if given, else to stdout.
    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.common.out {
            Some(path) => fs::write(path, text).map_err(|e| io_failure(path, e)),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())
                    .and_then(|_| out.flush())
                    .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))
            }
        }
    }
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main() -> u8 {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn run(cli: Cli) -> Result<u8, Failure> {
    let config = match &cli.common.config {
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
            Config::parse(&text).map_err(|e| Failure::new(EXIT_PARSE, e))?
        }
        None => Config::default(),
    };
    let workers = cli.common.workers.or(config.workers).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Failure::new(EXIT_PRECONDITION, e.to_string()))?;
    let ctx = Ctx {
        common: cli.common,
        config,
    };
    pool.install(|| match cli.command {
        Command::Analyze { path } => cmd_analyze(&ctx, &path),
        Command::Construct(args) => cmd_construct(&ctx, &args),
        Command::Verify(args) => cmd_verify(&ctx, &args),
        Command::Search(args) => cmd_search(&ctx, &args),
    })
}

pub fn read_function(path: &Path) -> Result<FunctionFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(FunctionFile::parse(&text)?)
}

fn relabel(ctx: &Ctx, file: FunctionFile, to: FlavorArg) -> Result<FunctionFile, Failure> {
    let n = file.n();
    let flavor = match to {
        FlavorArg::Mv => Flavor::Multivariate,
        FlavorArg::Uv => match ctx.field_given()? {
            Some(f) if f.degree() == n => Flavor::Univariate(f),
            _ => Flavor::Univariate(ctx.registry(n)?),
        },
        FlavorArg::Bv => {
            if n % 2 == 1 {
                return Err(Failure::new(
                    EXIT_FLAVOR,
                    format!("bivariate flavor needs even n, got {n}"),
                ));
            }
            Flavor::Bivariate(ctx.registry(n / 2)?)
        }
    };
    Ok(match file {
        FunctionFile::Bool(f) => FunctionFile::Bool(f.with_flavor(flavor)?),
        FunctionFile::Gen(f) => FunctionFile::Gen(f.with_flavor(flavor)?),
        FunctionFile::Vect(f) => FunctionFile::Vect(
            VectFn::new(n, f.k(), f.table().to_vec(), flavor)
                .map_err(|e| Failure::new(EXIT_FLAVOR, e.to_string()))?,
        ),
    })
}

fn cmd_analyze(ctx: &Ctx, path: &Path) -> Result<u8, Failure> {
    let start = Instant::now();
    let mut file = read_function(path)?;
    if let Some(to) = ctx.common.flavor {
        file = relabel(ctx, file, to)?;
    }
    let text = match ctx.common.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&analyze(&file)).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut buf = Vec::new();
            let res = match &file {
                FunctionFile::Bool(f) => write_walsh_csv(&f.walsh(), &mut buf),
                FunctionFile::Gen(f) => write_gen_csv(&f.h_transform(), &mut buf),
                FunctionFile::Vect(f) => write_gen_csv(&f.v_transform()?, &mut buf),
            };
            res.map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
    };
    ctx.emit(&text)?;
    eprintln!("elapsed {:.3}s", start.elapsed().as_secs_f64());
    Ok(0)
}

#[derive(Serialize)]
struct Verdict {
    check: String,
    pass: bool,
}

#[derive(Serialize)]
struct ConstructReport {
    construction: String,
    params: Value,
    output: Value,
    checks: Vec<Verdict>,
    verified: bool,
    file: Option<String>,
    function: Option<String>,
}

struct Built {
    file: FunctionFile,
    params: Value,
    checks: Vec<(String, bool)>,
}

fn cmd_construct(ctx: &Ctx, args: &ConstructArgs) -> Result<u8, Failure> {
    let built = match args.name {
        ConstructName::Kppp => build_kppp(ctx, args)?,
        ConstructName::AmGbent => build_am(ctx, args)?,
        ConstructName::Cex => build_cex(ctx, args)?,
        ConstructName::InverseZ2k => build_inverse(ctx, args)?,
        ConstructName::SpreadZ2k => build_spread(ctx)?,
        ConstructName::NegaShift => build_shift(ctx, args)?,
    };
    let verified = built.checks.iter().all(|(_, p)| *p);
    let text = built.file.to_text();
    let file_path = ctx.common.out.as_ref();
    let report = ConstructReport {
        construction: args
            .name
            .to_possible_value()
            .expect("named")
            .get_name()
            .to_owned(),
        params: built.params,
        output: json!({
            "kind": built.file.kind(),
            "n": built.file.n(),
            "k": built.file.k(),
            "flavor": built.file.flavor().tag(),
        }),
        checks: built
            .checks
            .into_iter()
            .map(|(check, pass)| Verdict { check, pass })
            .collect(),
        verified,
        file: file_path.map(|p| p.display().to_string()),
        function: if file_path.is_none() && verified {
            Some(text.clone())
        } else {
            None
        },
    };
    if verified {
        if let Some(path) = file_path {
            fs::write(path, &text).map_err(|e| io_failure(path, e))?;
        }
    }
    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
    s.push('\n');
    print!("{s}");
    if verified {
        Ok(0)
    } else {
        eprintln!("error: verification failed; no file written");
        Ok(EXIT_VERIFY)
    }
}

fn build_kppp(ctx: &Ctx, args: &ConstructArgs) -> Result<Built, Failure> {
    let field = ctx.field(3)?;
    let m = field.degree();
    let alphas = if args.alphas.is_empty() {
        let k = ctx.common.k.unwrap_or(2);
        let mut alphas = Vec::new();
        for a in 2..field.size() as u32 {
            if alphas.len() == k as usize {
                break;
            }
            alphas.push(a);
            if !is_independent(&alphas) || span_contains(&alphas, 1) {
                alphas.pop();
            }
        }
        if alphas.len() != k as usize {
            return Err(Failure::new(
                EXIT_PRECONDITION,
                format!("precondition violated: k = {k} needs k <= m - 1"),
            ));
        }
        alphas
    } else {
        args.alphas.clone()
    };
    check_elements(&field, &alphas)?;
    let seed = ctx.seed();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
    let rhos: Vec<BoolFn> = alphas
        .iter()
        .map(|_| {
            BoolFn::from_fn(m, Flavor::Univariate(field.clone()), |_| {
                if seed.is_some() {
                    rng.gen_range(0..2)
                } else {
                    0
                }
            })
        })
        .collect::<Result<_, _>>()?;
    let (g, _) = construct_kppp_bent_negabent(&field, &alphas, &rhos)?;
    let report = g.is_vectorial_bent_negabent()?;
    Ok(Built {
        params: json!({ "field": field.to_string(), "alphas": alphas, "rho_seed": seed }),
        checks: vec![
            ("components bent".into(), report.all_bent),
            ("components negabent".into(), report.all_negabent),
        ],
        file: FunctionFile::Vect(g),
    })
}

fn check_elements(field: &Field, xs: &[u32]) -> Result<(), Failure> {
    match xs.iter().find(|&&x| x >> field.degree() != 0) {
        Some(x) => Err(Failure::new(
            EXIT_PRECONDITION,
            format!("precondition violated: element {x} outside {field}"),
        )),
        None => Ok(()),
    }
}

fn build_am(ctx: &Ctx, args: &ConstructArgs) -> Result<Built, Failure> {
    let field = match &ctx.common.field {
        Some(_) => ctx.field(3)?,
        None => Field::with_poly(3, 0xb).expect("x^3 + x + 1"),
    };
    let (d, alphas) = match (args.d, args.alphas.as_slice()) {
        (Some(d), &[a1, a2, a3]) => (d, [a1, a2, a3]),
        (None, []) => verify::am_params(&field).ok_or_else(|| {
            Failure::new(
                EXIT_PRECONDITION,
                format!("precondition violated: no admissible triple over {field}"),
            )
        })?,
        _ => {
            return Err(Failure::new(
                EXIT_PRECONDITION,
                "precondition violated: give both --d and three --alphas, or neither",
            ))
        }
    };
    check_elements(&field, &alphas)?;
    let triple = monomial_involution_family(&field, d, alphas)?;
    let hs = match args.h {
        HChoice::Zero => zero_hs(&field),
        HChoice::Trace => trace_monomial_hs(
            &field,
            [
                alphas[0],
                alphas[1],
                alphas[2],
                alphas[0] ^ alphas[1] ^ alphas[2],
            ],
            d,
        ),
    };
    let g = build_gbent_from_am(&field, &triple, &hs)?;
    let mut checks = vec![("gbent".to_owned(), g.is_gbent())];
    if args.h == HChoice::Trace {
        checks.push(("Z_8-bent".to_owned(), g.is_z2k_bent()));
    }
    Ok(Built {
        params: json!({ "field": field.to_string(), "d": d, "alphas": alphas, "h": if args.h == HChoice::Zero { "zero" } else { "trace" } }),
        checks,
        file: FunctionFile::Gen(g),
    })
}

fn build_cex(ctx: &Ctx, args: &ConstructArgs) -> Result<Built, Failure> {
    let field = ctx.field(3)?;
    let e = args.e.unwrap_or(1);
    let &[c1, c2, c3] = args.c.as_slice() else {
        return Err(Failure::new(
            EXIT_PRECONDITION,
            "precondition violated: three elements --c c1,c2,c3",
        ));
    };
    check_elements(&field, &args.c)?;
    let g = cex_z8_bent(&field, e, [c1, c2, c3])?;
    Ok(Built {
        params: json!({ "field": field.to_string(), "e": e, "c": [c1, c2, c3] }),
        checks: vec![("Z_8-bent".to_owned(), g.is_z2k_bent())],
        file: FunctionFile::Gen(g),
    })
}

fn build_inverse(ctx: &Ctx, args: &ConstructArgs) -> Result<Built, Failure> {
    let field = ctx.field(3)?;
    let alphas = if args.alphas.is_empty() {
        let k = ctx.common.k.unwrap_or(2);
        if k == 0 || k > field.degree() {
            return Err(Failure::new(
                EXIT_PRECONDITION,
                format!("precondition violated: 1 <= k <= m, got k = {k}"),
            ));
        }
        (0..k).map(|i| 1u32 << i).collect()
    } else {
        args.alphas.clone()
    };
    check_elements(&field, &alphas)?;
    let g = inverse_z2k_bent(&field, &alphas)?;
    Ok(Built {
        params: json!({ "field": field.to_string(), "alphas": alphas }),
        checks: vec![("Z_2^k-bent".to_owned(), g.is_z2k_bent())],
        file: FunctionFile::Gen(g),
    })
}

fn build_spread(ctx: &Ctx) -> Result<Built, Failure> {
    let field = ctx.field(2)?;
    let m = field.degree();
    if ctx.common.k.is_some_and(|k| k != m) {
        return Err(Failure::new(
            EXIT_PRECONDITION,
            "precondition violated: k = m for the spread construction",
        ));
    }
    if 2 * m > 16 {
        return Err(Failure::new(
            EXIT_PRECONDITION,
            "precondition violated: 2m <= 16",
        ));
    }
    let flavor = match ctx.common.flavor.unwrap_or(FlavorArg::Uv) {
        FlavorArg::Mv => Flavor::Multivariate,
        FlavorArg::Uv => Flavor::Univariate(ctx.registry(2 * m)?),
        FlavorArg::Bv => Flavor::Bivariate(field.clone()),
    };
    let g = z2k_bent_from_partition(&desarguesian_spread(&field), m, flavor)
        .map_err(|e| Failure::from(ConstructionError::from(e)))?;
    Ok(Built {
        params: json!({ "field": field.to_string() }),
        checks: vec![("Z_2^k-bent".to_owned(), g.is_z2k_bent())],
        file: FunctionFile::Gen(g),
    })
}

fn build_shift(ctx: &Ctx, args: &ConstructArgs) -> Result<Built, Failure> {
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| Failure::new(EXIT_PARSE, "nega-shift needs --input <path>"))?;
    let FunctionFile::Gen(input) = read_function(path)? else {
        return Err(Failure::new(EXIT_FLAVOR, "nega-shift needs a genfn input"));
    };
    let n = input.n();
    // the shift is defined on the field; other flavors are read as field elements
    let relabelled = !matches!(input.flavor(), Flavor::Univariate(_));
    let input = if relabelled {
        let field = match ctx.field_given()? {
            Some(f) if f.degree() == n => f,
            _ => ctx.registry(n)?,
        };
        input.with_flavor(Flavor::Univariate(field))?
    } else {
        input
    };
    let (dir, back) = match args.direction {
        Direction::ToNega => (ShiftDirection::ToNega, ShiftDirection::ToPlain),
        Direction::ToPlain => (ShiftDirection::ToPlain, ShiftDirection::ToNega),
    };
    let out = input.nega_shift(dir)?;
    let (plain, nega) = match args.direction {
        Direction::ToNega => (&input, &out),
        Direction::ToPlain => (&out, &input),
    };
    let z2k = plain.is_z2k_bent();
    let nega_z2k = nega.is_nega_z2k_bent()?;
    let checks = vec![
        ("round trip".to_owned(), out.nega_shift(back)? == input),
        (
            "gbent iff nega-gbent".to_owned(),
            plain.is_gbent() == nega.is_nega_gbent()?,
        ),
        ("Z_2^k-bent iff nega-Z_2^k-bent".to_owned(), z2k == nega_z2k),
    ];
    Ok(Built {
        params: json!({
            "input": path.display().to_string(),
            "direction": if args.direction == Direction::ToNega { "to-nega" } else { "to-plain" },
            "relabelled": relabelled,
            "z2k_bent": z2k,
            "nega_z2k_bent": nega_z2k,
        }),
        checks,
        file: FunctionFile::Gen(out),
    })
}

#[derive(Serialize)]
struct VerifyReport<'a> {
    checks: &'a [verify::Check],
    passed: usize,
    total: usize,
}

fn cmd_verify(ctx: &Ctx, args: &VerifyArgs) -> Result<u8, Failure> {
    let ids: Vec<&str> = if args.id == "all" {
        verify::SUITES.to_vec()
    } else if verify::SUITES.contains(&args.id.as_str()) {
        vec![args.id.as_str()]
    } else {
        return Err(Failure::new(
            EXIT_PARSE,
            format!(
                "unknown suite {:?}; known: all, {}",
                args.id,
                verify::SUITES.join(", ")
            ),
        ));
    };
    let scale = Scale {
        field: ctx.field_given()?,
        n: args.n,
        k: ctx.common.k,
        samples: args.samples,
        seed: ctx.seed(),
    };
    let mut checks = Vec::new();
    for id in ids {
        checks.extend(verify::run(id, &scale).expect("known suite")?);
    }
    let passed = checks.iter().filter(|c| c.pass).count();
    let text = match ctx.common.format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&VerifyReport {
                checks: &checks,
                passed,
                total: checks.len(),
            })
            .expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for c in &checks {
                w.serialize(c)
                    .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
            }
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv is utf-8")
        }
    };
    ctx.emit(&text)?;
    for c in &checks {
        eprintln!(
            "{} {} {}: {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.suite,
            c.name,
            c.detail
        );
    }
    eprintln!("{passed}/{} checks passed", checks.len());
    Ok(if passed == checks.len() {
        0
    } else {
        EXIT_VERIFY
    })
}

fn cmd_search(ctx: &Ctx, args: &SearchArgs) -> Result<u8, Failure> {
    if args.budget == 0 {
        return Err(Failure::new(
            EXIT_PRECONDITION,
            "precondition violated: budget > 0",
        ));
    }
    let out: SearchOutput = match args.name {
        SearchName::AmComplete => {
            let class = match args.class {
                ClassArg::Monomial => AmClass::Monomial,
                ClassArg::Linearized => AmClass::Linearized,
                ClassArg::All => AmClass::All,
            };
            search::am_complete(&ctx.field(3)?, class, args.budget)?
        }
        SearchName::Cex => search::cex(&ctx.field(3)?, args.e, args.budget)?,
        SearchName::NegaGbentNontrivial | SearchName::GbentNegaGbent => {
            let field = match (ctx.field_given()?, args.n) {
                (Some(f), _) => f,
                (None, n) => ctx.registry(n.unwrap_or(4))?,
            };
            let target = if args.name == SearchName::GbentNegaGbent {
                NegaTarget::Both
            } else {
                NegaTarget::Nontrivial
            };
            search::nega(
                &field,
                ctx.common.k.unwrap_or(2),
                target,
                args.budget,
                ctx.seed().unwrap_or(0),
            )?
        }
    };
    ctx.emit(&out.to_jsonl())?;
    if out.exhausted {
        eprintln!("budget exhausted; results are partial");
        Ok(EXIT_BUDGET)
    } else {
        Ok(0)
    }
}
