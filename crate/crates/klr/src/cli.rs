//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use klr_core::cartan::CartanType;
use klr_core::character::{decomposition_character, serre_check};
use klr_core::delta::{all_segments, decompose};
use klr_core::klr::{build_delta_module, build_q, check_degrees, check_relations, corrupt, QChoices};
use klr_core::strings::{enumerate_s_lambda, triangle};
use klr_core::verify::replay_example_b3;
use klr_core::{CartanDatum, Crystal, Error, Letter};

use crate::json::{
    CharacterJson, CrystalJson, DecompositionJson, LongestWordJson, ModuleCheckJson, ReportJson,
};
use crate::render;
use crate::suites;

const LETTER_HELP: &str = "Letters are signed integers: -i is the barred letter, 0 is 0, i is i.";

#[derive(Debug, Parser)]
#[command(name = "klr", version, about = "Crystals, adapted strings and segment-module decompositions", after_help = LETTER_HELP)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct TypeArgs {
    /// Cartan type: A, B, C, D, E6, E7, E8, F4 or G2.
    #[arg(long = "type")]
    ty: String,
    #[arg(long)]
    rank: usize,
}

impl TypeArgs {
    fn datum(&self) -> Result<CartanDatum, Failure> {
        let ty = CartanType::parse(&self.ty, self.rank).map_err(Failure::usage)?;
        CartanDatum::new(ty, self.rank).map_err(Failure::usage)
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The fixed reduced word for the longest Weyl group element, verified.
    W0(TypeArgs),
    /// Generates B(λ); `--format dot` emits the crystal graph.
    Crystal {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
        #[arg(long, default_value_t = suites::CRYSTAL_CAP)]
        cap: usize,
    },
    /// Lists the strings of B(λ).
    Enumerate {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Vec<i64>,
    },
    /// Triangle, θ, Δ factors, N_k words and η for one string.
    Decompose {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u32>,
    },
    /// Shuffle character of a decomposition with the Serre report.
    Character {
        #[command(flatten)]
        t: TypeArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        lambda: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',')]
        string: Vec<u32>,
        /// Maximum number of terms.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
    },
    /// Builds Δ(a,b) matrix models and checks every defining relation.
    KlrCheck {
        #[command(flatten)]
        t: TypeArgs,
        /// Upper letter; omit both letters to check every segment.
        #[arg(long, allow_hyphen_values = true, requires = "b")]
        a: Option<i8>,
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        b: Option<i8>,
        /// Flip one sign in each model before checking.
        #[arg(long)]
        corrupt: bool,
    },
    /// Runs acceptance suites (all when none are named).
    Verify {
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u8>,
    },
    /// Replays the worked B3 example.
    ExampleB3,
}

/// A failed run: exit code 1 for failed checks, 2 for bad input.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }

    fn check(e: impl std::fmt::Display) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidRank { .. }
            | Error::NotClassical(_)
            | Error::IndexOutOfRange(_)
            | Error::LengthMismatch { .. }
            | Error::NotDominant(_)
            | Error::NotDominating { .. }
            | Error::InvalidLetter(_)
            | Error::Parse(_) => Failure::usage(e),
            _ => Failure::check(e),
        }
    }
}

/// Artifact text plus whether every check it reports passed.
struct Emitted {
    body: String,
    ok: bool,
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn letter(datum: &CartanDatum, v: i8) -> Result<Letter, Failure> {
    let l = Letter(v);
    let valid = klr_core::letter::vector_letters(datum)?.contains(&l);
    if valid {
        Ok(l)
    } else {
        Err(Failure::usage(Error::InvalidLetter(v)))
    }
}

fn dispatch(cli: &Cli) -> Result<Emitted, Failure> {
    let fmt = cli.format;
    let dot_only = matches!(cli.command, Command::Crystal { .. });
    if fmt == Format::Dot && !dot_only {
        return Err(Failure::usage("--format dot is only available for `crystal`"));
    }
    let mut body = String::new();
    let ok = match &cli.command {
        Command::W0(t) => {
            let datum = t.datum()?;
            let w = LongestWordJson::new(&datum);
            if fmt == Format::Json {
                body = json(&w);
            } else {
                let blocks: Vec<String> = w.blocks.iter().map(|b| render::sequence(b)).collect();
                let _ = writeln!(body, "{} w0 = {}", datum.label(), blocks.join(" "));
                let _ = writeln!(body, "length {} / positive roots {}", w.length, w.positive_roots);
                let _ = writeln!(body, "reduced and longest: {}", w.verified);
            }
            w.verified && w.length == w.positive_roots
        }
        Command::Crystal { t, lambda, cap } => {
            let datum = t.datum()?;
            if *cap == 0 {
                return Err(Failure::usage("--cap must be positive"));
            }
            let c = Crystal::generate(&datum, lambda, *cap)?;
            match fmt {
                Format::Dot => body = render::crystal_dot(&c),
                Format::Json => body = json(&CrystalJson::new(&c)),
                Format::Text => {
                    let view = CrystalJson::new(&c);
                    let _ = writeln!(body, "B({lambda:?}) of type {}: {} elements", datum.label(), view.size);
                    for e in &view.elements {
                        let arrows: Vec<String> = e.arrows.iter().map(|(i, t)| format!("f{i}→{t}")).collect();
                        let _ = writeln!(body, "{:>6}  {:?}  wt {:?}  {}", e.index, e.string, e.weight, arrows.join(" "));
                    }
                }
            }
            true
        }
        Command::Enumerate { t, lambda } => {
            let datum = t.datum()?;
            let list = enumerate_s_lambda(&datum, lambda)?;
            if fmt == Format::Json {
                body = json(&list);
            } else {
                for s in &list {
                    let v: Vec<String> = s.iter().map(u32::to_string).collect();
                    let _ = writeln!(body, "({})", v.join(","));
                }
            }
            true
        }
        Command::Decompose { t, lambda, string } => {
            let datum = t.datum()?;
            let dec = decompose(&datum, string, lambda.as_deref())?;
            let view = DecompositionJson::new(&datum, lambda.as_deref(), string, &dec)?;
            if fmt == Format::Json {
                body = json(&view);
            } else {
                let _ = writeln!(body, "string {string:?}");
                body.push_str(&render::triangle_text(&triangle(&datum, string)?));
                for (i, row) in view.theta.iter().enumerate() {
                    let _ = writeln!(body, "θ row {}: {row:?}", i + 1);
                }
                for (k, block) in dec.blocks.iter().enumerate() {
                    let parts: Vec<String> = block
                        .iter()
                        .map(|f| {
                            let s = render::segment(f.a, f.b);
                            if f.mult == 1 { s } else { format!("{s}^{}", f.mult) }
                        })
                        .collect();
                    let _ = writeln!(body, "Δ(a;{}) = {}", k + 1, if parts.is_empty() { "1".into() } else { parts.join(" ⊠ ") });
                }
                for (k, w) in dec.n_words.iter().enumerate() {
                    let _ = writeln!(body, "N_{} = {}", k + 1, render::operator_word(w));
                }
                match dec.bound {
                    Some(b) => {
                        let _ = writeln!(body, "η = {} ≤ nλ(h) = {b}", dec.eta);
                    }
                    None => {
                        let _ = writeln!(body, "η = {}", dec.eta);
                    }
                }
            }
            true
        }
        Command::Character { t, lambda, string, cap } => {
            let datum = t.datum()?;
            let dec = decompose(&datum, string, lambda.as_deref())?;
            let ch = decomposition_character(&datum, &dec, *cap)?;
            let serre = serre_check(&datum, &ch);
            if fmt == Format::Json {
                body = json(&CharacterJson::new(&ch, &serre));
            } else {
                let _ = writeln!(body, "dimension {} over {} sequences", ch.total(), ch.len());
                for (s, c) in ch.terms() {
                    let _ = writeln!(body, "{c:>8}  {}", render::sequence(s));
                }
                let _ = writeln!(body, "Serre: {} instances, {} violations", serre.checked, serre.violations.len());
            }
            serre.passed()
        }
        Command::KlrCheck { t, a, b, corrupt: flip } => {
            let datum = t.datum()?;
            let q = build_q(&datum, &QChoices::default())?;
            let segments = match (a, b) {
                (Some(a), Some(b)) => vec![(letter(&datum, *a)?, letter(&datum, *b)?)],
                _ => all_segments(&datum)?,
            };
            let mut views = Vec::new();
            for (a, b) in segments {
                let mut m = build_delta_module(&datum, a, b, &q)?;
                if *flip {
                    m = corrupt(&m);
                }
                let rep = check_relations(&m, &q);
                views.push(ModuleCheckJson::new(a.0, b.0, &m, &rep, check_degrees(&datum, &m).err()));
            }
            if fmt == Format::Json {
                body = json(&views);
            } else {
                for v in &views {
                    let status = if v.passed { "pass" } else { "FAIL" };
                    let _ = writeln!(
                        body,
                        "{} dim {} words {:?}: {status} ({} instances)",
                        render::segment(Letter(v.a), Letter(v.b)),
                        v.dimension,
                        v.words,
                        v.checked
                    );
                    for f in &v.failures {
                        let _ = writeln!(body, "    {} {:?} word {:?} basis {:?}", f.relation, f.indices, f.word, f.basis_element);
                    }
                    if let Some(e) = &v.degree_error {
                        let _ = writeln!(body, "    degree: {e}");
                    }
                }
            }
            views.iter().all(|v| v.passed)
        }
        Command::Verify { criterion } => {
            let ids: Vec<u8> = if criterion.is_empty() { (1..=8).collect() } else { criterion.clone() };
            let mut outcomes = Vec::new();
            for id in ids {
                outcomes.push(suites::criterion(id).ok_or_else(|| Failure::usage(format!("no criterion {id}")))?);
            }
            if fmt == Format::Json {
                #[derive(Serialize)]
                struct Row<'a> {
                    criterion: u8,
                    name: &'a str,
                    status: &'a str,
                    detail: &'a str,
                    seconds: f64,
                }
                let rows: Vec<Row> = outcomes
                    .iter()
                    .map(|o| Row {
                        criterion: o.id,
                        name: o.name,
                        status: if o.ok() { "pass" } else { "fail" },
                        detail: &o.detail,
                        seconds: o.elapsed.as_secs_f64(),
                    })
                    .collect();
                body = json(&rows);
            } else {
                for o in &outcomes {
                    let _ = writeln!(body, "{}", o.line());
                }
            }
            outcomes.iter().all(suites::Outcome::ok)
        }
        Command::ExampleB3 => {
            let rep = replay_example_b3()?;
            if fmt == Format::Json {
                body = json(&ReportJson::from(&rep));
            } else {
                for c in &rep.cases {
                    let status = if c.passed { "pass" } else { "FAIL" };
                    let _ = writeln!(body, "[{status}] {}: {}", c.case, c.actual);
                }
            }
            rep.passed()
        }
    };
    Ok(Emitted { body, ok })
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(Emitted { body, ok }) => {
            let written = match &cli.output {
                Some(path) => std::fs::write(path, &body),
                None => stdout.write_all(body.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            if ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
