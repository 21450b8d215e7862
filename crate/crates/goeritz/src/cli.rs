//! Command-line front end.
//!
//! Exit codes: 0 for a definitive answer, 2 when some answer is Unknown or
//! only bounded, 1 for usage and parse errors (and failed self-checks).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;
use serde_json::json;

use crate::complexes::{ball, cone_distance_upper, disk_coset_rep, tree_distance, Center, ConeVertex, TreeVertex, MAX_RADIUS};
use crate::goeritz_group::{
    abelianization, element, normal_form, NormalForm, quotient_s3, validation_suite, CheckOutcome, GLetter, GoeritzWord, ALL_LETTERS,
};
use crate::heegaard_recognizer::{recognize, MonodromyWord, RecognitionReport};
use crate::nt_classifier::{classify, scan_subgroup, ClassifyOptions, DiskMethod, Vertex, Verdict, VerdictJson};
use crate::slope_lab::{farey_dot, vertical_primitive_scan, Monodromy, MAX_SCAN_BOUND};
use crate::word_core::{is_primitive, F2Word};

/// Environment variable holding the default conjugator budget.
pub const BUDGET_ENV: &str = "GOERITZ_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;

/// Resolved limits for one invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Config {
    /// Default word-length budget for subgroup searches, from
    /// `GOERITZ_BUDGET` when set (otherwise 8).
    pub budget: usize,
    /// Largest slope bound accepted by `slopes`.
    pub slope_cap: i64,
    /// Largest ball radius accepted by `ball`.
    pub radius_cap: usize,
    /// Largest sample count accepted by `selfcheck`.
    pub sample_cap: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: 8, slope_cap: MAX_SCAN_BOUND, radius_cap: MAX_RADIUS, sample_cap: 100_000 }
    }
}

impl Config {
    pub fn from_env() -> Result<Config, String> {
        let mut cfg = Config::default();
        if let Ok(v) = std::env::var(BUDGET_ENV) {
            cfg.budget = match v.trim().parse() {
                Ok(b) if b > 0 => b,
                _ => return Err(format!("{BUDGET_ENV} must be a positive integer, got {v:?}")),
            };
        }
        Ok(cfg)
    }

    fn budget(&self, arg: &Budget) -> Result<usize, Failure> {
        match arg.budget {
            Some(0) => Err(Failure("budget must be positive".into())),
            Some(b) => Ok(b),
            None => Ok(self.budget),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "goeritz", version, about = "Computations in the genus-2 Goeritz group")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Args, Debug, Clone)]
struct Budget {
    /// Word-length budget for subgroup searches [default: $GOERITZ_BUDGET or 8].
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SpaceArg {
    Tree,
    Cone,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    A,
    B,
}

impl From<KindArg> for Vertex {
    fn from(k: KindArg) -> Vertex {
        match k {
            KindArg::A => Vertex::A,
            KindArg::B => Vertex::B,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nielsen-Thurston type of a word in a b B g d D.
    Classify {
        word: String,
        #[command(flatten)]
        budget: Budget,
        /// Decide the disk stabilizer by bounded search instead of the exact test.
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Classify every reduced word in the given generators.
    Scan {
        /// Comma-separated generator words.
        #[arg(long, value_delimiter = ',', required = true)]
        gens: Vec<String>,
        #[arg(long)]
        maxlen: usize,
        #[command(flatten)]
        budget: Budget,
        #[arg(long)]
        search: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Whitehead primitivity test for a word in x X y Y.
    Primitive {
        word: String,
        #[command(flatten)]
        out: Output,
    },
    /// Slopes whose vertical disk is primitive.
    Slopes {
        #[arg(long)]
        mono: Monodromy,
        #[arg(long)]
        bound: i64,
        /// Print the Farey subgraph on the result as Graphviz text.
        #[arg(long)]
        dot: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Distance between g·v and h·v (tree) or their disk cosets (cone).
    Dist {
        #[arg(long, value_enum)]
        space: SpaceArg,
        w1: String,
        w2: String,
        #[arg(long, value_enum, default_value = "a")]
        kind: KindArg,
        #[command(flatten)]
        budget: Budget,
        #[command(flatten)]
        out: Output,
    },
    /// Ball around a vertex of the tree or of the coned-off graph.
    Ball {
        #[arg(long, value_enum)]
        space: SpaceArg,
        #[arg(long)]
        radius: usize,
        /// β-exponent horizon (tree) or subgroup word length (cone).
        #[arg(long, default_value_t = 2)]
        horizon: usize,
        /// Centre word; the identity when omitted.
        #[arg(long, default_value = "")]
        center: String,
        #[arg(long, value_enum, default_value = "a")]
        kind: KindArg,
        /// Write Graphviz text to this file, or to stdout when no file is given.
        #[arg(long, num_args = 0..=1)]
        dot: Option<Option<PathBuf>>,
        #[command(flatten)]
        out: Output,
    },
    /// Recognize S³ and the fibered knot from a word in t T u U z Z.
    Recognize {
        word: String,
        #[command(flatten)]
        out: Output,
    },
    /// Validate the presentation and run randomized consistency checks.
    Selfcheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[command(flatten)]
        out: Output,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

type Outcome = Result<i32, Failure>;

/// Runs the tool on `argv` (program name first), printing to stdout/stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    let cfg = match Config::from_env() {
        Ok(cfg) => cfg,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            return EXIT_ERROR;
        }
    };
    match dispatch(cli.command, &cfg, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
    }
}

fn parse_goeritz(text: &str) -> Result<GoeritzWord, Failure> {
    if text.trim().is_empty() {
        return Err(Failure("empty word; give letters from a b B g d D".into()));
    }
    Ok(GoeritzWord::parse(text)?)
}

/// Like [`parse_goeritz`] but `1` or `e` names the identity.
fn parse_element(text: &str) -> Result<NormalForm, Failure> {
    match text.trim() {
        "1" | "e" => Ok(NormalForm::identity()),
        t => Ok(normal_form(&parse_goeritz(t)?)),
    }
}

fn options(cfg: &Config, budget: &Budget, search: bool) -> Result<ClassifyOptions, Failure> {
    let method = if search { DiskMethod::Search } else { DiskMethod::Exact };
    Ok(ClassifyOptions { budget: cfg.budget(budget)?, method })
}

fn verdict_code(v: &Verdict) -> i32 {
    if v.is_definite() {
        EXIT_OK
    } else {
        EXIT_UNKNOWN
    }
}

fn describe(v: &Verdict) -> String {
    let j = VerdictJson::from(v);
    let mut s = j.kind.clone();
    if let Some(order) = j.order {
        s += &format!(" order {order}");
    }
    if let Some(sub) = j.subgroup {
        s += &format!(" into {sub}");
    }
    if let Some(c) = &j.conjugator {
        s += &format!(" conjugator {c}");
    }
    if let Some(crs) = &j.crs {
        s += &format!(" ({crs:?})");
    }
    if let Some(budget) = j.budget {
        s += &format!(" at budget {budget}");
    }
    s
}

fn dispatch(cmd: Command, cfg: &Config, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Classify { word, budget, search, out: o } => {
            let w = parse_goeritz(&word)?;
            let v = classify(&w, options(cfg, &budget, search)?);
            if o.json {
                writeln!(out, "{}", v.to_json())?;
            } else {
                writeln!(out, "{word}: {}", describe(&v))?;
            }
            Ok(verdict_code(&v))
        }
        Command::Scan { gens, maxlen, budget, search, out: o } => {
            let words = gens.iter().map(|g| parse_goeritz(g)).collect::<Result<Vec<_>, _>>()?;
            let report = scan_subgroup(&words, maxlen, options(cfg, &budget, search)?)?;
            if o.json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                writeln!(out, "{} words", report.words)?;
                for (k, n) in &report.counts {
                    writeln!(out, "  {k}: {n}")?;
                }
                for hit in &report.hits {
                    writeln!(out, "  {}: {}", hit.word, hit.verdict.kind)?;
                }
            }
            Ok(if report.unknown.is_empty() { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Command::Primitive { word, out: o } => {
            if word.trim().is_empty() {
                return Err(Failure("empty word; give letters from x X y Y".into()));
            }
            let w = F2Word::parse(&word)?;
            let r = is_primitive(&w);
            if o.json {
                writeln!(out, "{}", serde_json::to_string(&r)?)?;
            } else {
                writeln!(out, "{w}: {}", if r.primitive { "primitive" } else { "not primitive" })?;
            }
            Ok(EXIT_OK)
        }
        Command::Slopes { mono, bound, dot, out: o } => {
            if bound <= 0 || bound > cfg.slope_cap {
                return Err(Failure(format!("bound must lie in 1..={}", cfg.slope_cap)));
            }
            let set = vertical_primitive_scan(mono, bound)?;
            if dot {
                write!(out, "{}", farey_dot(&format!("{mono}_primitive"), &set))?;
            } else if o.json {
                writeln!(out, "{}", json!({ "mono": mono, "bound": bound, "slopes": set }))?;
            } else {
                let items: Vec<String> = set.iter().map(|s| s.to_string()).collect();
                writeln!(out, "{mono} ({} slopes): {}", items.len(), items.join(" "))?;
            }
            Ok(EXIT_OK)
        }
        Command::Dist { space, w1, w2, kind, budget, out: o } => {
            let g = parse_element(&w1)?;
            let h = parse_element(&w2)?;
            let (d, exact) = match space {
                SpaceArg::Tree => (tree_distance(&TreeVertex::new(kind.into(), &g), &TreeVertex::new(kind.into(), &h)), true),
                SpaceArg::Cone => cone_distance_upper(&g, &h, cfg.budget(&budget)?),
            };
            if o.json {
                writeln!(out, "{}", json!({ "distance": d, "exact": exact }))?;
            } else {
                writeln!(out, "{}{d}", if exact { "" } else { "<= " })?;
            }
            Ok(if exact { EXIT_OK } else { EXIT_UNKNOWN })
        }
        Command::Ball { space, radius, horizon, center, kind, dot, out: o } => {
            if radius > cfg.radius_cap {
                return Err(Failure(format!("radius must be at most {}", cfg.radius_cap)));
            }
            let g = if center.trim().is_empty() { NormalForm::identity() } else { element(&center)? };
            let c = match space {
                SpaceArg::Tree => Center::Tree(TreeVertex::new(kind.into(), &g)),
                SpaceArg::Cone => Center::Cone(ConeVertex::Cone(disk_coset_rep(&g))),
            };
            let graph = ball(&c, radius, horizon)?;
            let dot_to_stdout = matches!(dot, Some(None));
            match dot {
                Some(Some(path)) => std::fs::write(&path, graph.to_dot("ball"))?,
                Some(None) => write!(out, "{}", graph.to_dot("ball"))?,
                None => {}
            }
            if o.json {
                writeln!(out, "{}", serde_json::to_string(&graph)?)?;
            } else if !dot_to_stdout {
                writeln!(
                    out,
                    "{} vertices, {} edges{}",
                    graph.labels.len(),
                    graph.edges.len(),
                    if graph.exact { "" } else { " (truncated)" }
                )?;
            }
            Ok(EXIT_OK)
        }
        Command::Recognize { word, out: o } => {
            let w: MonodromyWord = word.parse()?;
            let r = recognize(&w)?;
            let report = RecognitionReport::new(&w, &r);
            if o.json {
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
            } else {
                writeln!(out, "{}: {} (trace {})", w, report.verdict, report.trace)?;
                if let Some(l) = report.casson {
                    writeln!(out, "  central exponent {}, |casson| {l}", report.central_exponent.unwrap_or(0))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Selfcheck { seed, samples, out: o } => {
            if samples > cfg.sample_cap {
                return Err(Failure(format!("samples must be at most {}", cfg.sample_cap)));
            }
            let mut checks = validation_suite();
            checks.extend(random_checks(seed, samples));
            let failed = checks.iter().filter(|c| !c.passed).count();
            if o.json {
                let rows: Vec<_> = checks.iter().map(|c| json!({ "name": c.name, "passed": c.passed })).collect();
                writeln!(out, "{}", json!({ "checks": rows, "failed": failed }))?;
            } else {
                for c in &checks {
                    writeln!(out, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
                }
            }
            Ok(if failed == 0 { EXIT_OK } else { EXIT_ERROR })
        }
    }
}

fn random_word(rng: &mut StdRng, max_len: usize) -> GoeritzWord {
    let len = rng.gen_range(0..=max_len);
    GoeritzWord((0..len).map(|_| ALL_LETTERS[rng.gen_range(0..ALL_LETTERS.len())]).collect::<Vec<GLetter>>())
}

/// Group-law and quotient-map checks on random words.
fn random_checks(seed: u64, samples: usize) -> Vec<CheckOutcome> {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut inverse, mut assoc, mut hom) = (true, true, true);
    for _ in 0..samples {
        let (u, v, w) = (random_word(&mut rng, 20), random_word(&mut rng, 20), random_word(&mut rng, 20));
        let (a, b, c) = (normal_form(&u), normal_form(&v), normal_form(&w));
        inverse &= a.mul(&a.inverse()).is_identity() && normal_form(&u.inverse()) == a.inverse();
        assoc &= a.mul(&b).mul(&c) == a.mul(&b.mul(&c)) && normal_form(&u.concat(&v)) == a.mul(&b);
        let ab = a.mul(&b);
        let (pa, pb) = (abelianization(&a), abelianization(&b));
        hom &= quotient_s3(&ab) == quotient_s3(&a).compose(quotient_s3(&b))
            && abelianization(&ab) == ((pa.0 + pb.0) % 2, pa.1 + pb.1);
    }
    let name = |s: &str| format!("{s} on {samples} random words (seed {seed})");
    vec![
        CheckOutcome { name: name("inverses"), passed: inverse },
        CheckOutcome { name: name("associativity"), passed: assoc },
        CheckOutcome { name: name("S3 and abelian quotients"), passed: hom },
    ]
}
