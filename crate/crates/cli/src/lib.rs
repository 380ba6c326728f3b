//! The `qsnake` command line: argument parsing, dispatch, and text/JSON output.

pub mod acceptance;
pub mod diagram;

use std::collections::BTreeSet;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use qsnake::b2restrict::{predicted_decomposition, verify_b2_qsystem, wq_decompose};
use qsnake::error::Error;
use qsnake::lattice::{Algebra, LatticePoint};
use qsnake::laurent::{a_factorize, YMonomial};
use qsnake::qchar::{qchar_snake_with, QCharConfig, DEFAULT_MAX_TUPLES};
use qsnake::sl2core::{exclusion_certificate, thm_a_verify};
use qsnake::snakes::{neighbour_snakes, parse_points, validate_snake, Snake};
use qsnake::tsystem::families::{family_instance, Family};
use qsnake::tsystem::{extended_relation, verify_nonprime, verify_relation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TOO_LARGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qsnake", version, about = "q-characters of snake modules in types A and B")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Cap on visited path tuples per character.
    #[arg(long, global = true, env = "QSNAKE_MAX_TUPLES", default_value_t = DEFAULT_MAX_TUPLES)]
    pub max_tuples: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct SnakeArgs {
    /// "A<rank>" or "B<rank>".
    #[arg(long)]
    pub algebra: String,
    /// "(i,k),(i,k),..."
    #[arg(long)]
    pub snake: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q-character of a snake module.
    Qchar(SnakeArgs),
    /// Verify the three-term relation with the given snake on top.
    VerifyTsys {
        #[command(flatten)]
        snake: SnakeArgs,
        /// Also certify that the R-th dominant monomial (1-based) is excluded.
        #[arg(long, value_name = "R")]
        certificate: Option<usize>,
    },
    /// Build a closed-form family instance and check it against the geometry.
    VerifyFamily {
        #[arg(long)]
        algebra: String,
        /// kr, two-node, two-node-tilde, a-min-aff, a-min-aff-tilde, b-min-aff, b-min-aff-tilde, b-wrapping
        #[arg(long)]
        family: String,
        /// JSON object of family parameters, e.g. '{"i":1,"k":0,"m":2}'.
        #[arg(long)]
        params: String,
    },
    /// The neighbouring snakes X and Y of a prime snake.
    Neighbours(SnakeArgs),
    /// Write num/den as a product of A-variables.
    Factorize {
        #[arg(long)]
        algebra: String,
        /// Monomial such as "Y1,0^2 Y2,3^-1".
        #[arg(long)]
        num: String,
        #[arg(long, default_value = "1")]
        den: String,
    },
    /// Decompose a restricted B2 wrapping module.
    B2Decompose {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        mid: u32,
        #[arg(long)]
        n: u32,
    },
    /// Check the B2 Q-system for all indices up to --max.
    B2Qsystem {
        #[arg(long, default_value_t = 1)]
        max: u32,
    },
    /// Check a candidate truncated character; "-" reads standard input.
    ThmaVerify {
        #[arg(long)]
        input: String,
    },
    /// Draw a snake in the plane.
    Diagram {
        #[command(flatten)]
        snake: SnakeArgs,
        #[arg(long, value_enum, default_value_t = diagram::Format::Ascii)]
        format: diagram::Format,
        /// Mark the neighbouring snakes.
        #[arg(long)]
        neighbours: bool,
        /// Draw the highest path of every point.
        #[arg(long)]
        paths: bool,
    },
    /// Run the acceptance suite.
    Selftest,
}

/// Input of `thma-verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThmAInput {
    pub algebra: String,
    pub m_plus: YMonomial,
    pub monomials: Vec<YMonomial>,
    pub region: Vec<LatticePoint>,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooLarge { .. } => EXIT_TOO_LARGE,
        Error::FamilyMismatch(_)
        | Error::DivisionNotExact
        | Error::NotACharacter(_)
        | Error::AssignmentFailed(_)
        | Error::NotInRootLattice
        | Error::ShapeMismatch
        | Error::MoveNotApplicable(_) => EXIT_FAILED,
        _ => EXIT_INVALID,
    }
}

fn algebra(s: &str) -> Result<Algebra, Failure> {
    Ok(s.parse()?)
}

fn snake(a: &SnakeArgs) -> Result<Snake, Failure> {
    let alg = algebra(&a.algebra)?;
    Ok(validate_snake(&alg, &parse_points(&a.snake)?)?)
}

fn monomial(s: &str) -> Result<YMonomial, Failure> {
    Ok(s.parse()?)
}

struct Out<'a> {
    w: &'a mut dyn Write,
    json: bool,
}

impl Out<'_> {
    /// Print `value` as JSON, or the text rendering otherwise.
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) -> io::Result<()> {
        if self.json {
            let s = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
            writeln!(self.w, "{s}")
        } else {
            write!(self.w, "{}", text())
        }
    }
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_FAILED
    }
}

fn lines<T: std::fmt::Display>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| format!("  {t}\n")).collect()
}

fn dispatch(cli: &Cli, out: &mut Out) -> Result<i32, Failure> {
    let cfg = QCharConfig { max_tuples: cli.max_tuples, ..QCharConfig::default() };
    match &cli.command {
        Command::Qchar(a) => {
            let s = snake(a)?;
            let r = qchar_snake_with(&s, &cfg)?;
            out.emit(&r, || {
                format!(
                    "dim {}  thin {}  special {}  antispecial {}\n{}",
                    r.dim,
                    r.thin,
                    r.special,
                    r.antispecial,
                    lines(r.character.terms().map(|(m, c)| if c == 1 { m.to_string() } else { format!("{c} {m}") }))
                )
            })?;
            Ok(EXIT_OK)
        }
        Command::VerifyTsys { snake: a, certificate } => {
            let s = snake(a)?;
            if s.len() >= 2 && !s.is_prime() {
                if certificate.is_some() {
                    return Err(Failure::Input("certificates need a prime snake".into()));
                }
                let r = verify_nonprime(&s, &cfg)?;
                let d = r.dims;
                out.emit(&json!({ "kind": "non-prime", "report": r }), || {
                    format!(
                        "non-prime: {}·{} = {}·{}\nidentity {}  unique dominant {}\n",
                        d.left, d.right, d.top, d.bottom, r.identity_holds, r.unique_dominant
                    )
                })?;
                return Ok(status(r.all_ok()));
            }
            let rel = extended_relation(&s)?;
            let r = verify_relation(&rel, &cfg)?;
            let cert = certificate.map(|k| exclusion_certificate(&rel, k, &cfg)).transpose()?;
            let ok = r.all_ok() && cert.as_ref().map_or(true, |c| c.holds());
            let d = r.dims;
            out.emit(&json!({ "kind": "prime", "relation": rel, "report": r, "certificate": cert }), || {
                let mut t = format!(
                    "L = {}\nR = {}\nT = {}\nB = {}\nX = {}\nY = {}\n",
                    rel.left.monomial(),
                    rel.right.monomial(),
                    rel.top.monomial(),
                    rel.bottom.monomial(),
                    rel.nbrs.x.monomial(),
                    rel.nbrs.y.monomial()
                );
                t += &format!(
                    "{}·{} = {}·{} + {}·{}\nidentity {}  L·R catalog {}  T·B catalog {}  X·Y special {}\n",
                    d.left,
                    d.right,
                    d.top,
                    d.bottom,
                    d.x,
                    d.y,
                    r.identity_holds,
                    r.lhs_catalog_ok,
                    r.rhs1_catalog_ok,
                    r.xy_special
                );
                t += &lines(&r.notes);
                if let Some(c) = &cert {
                    t += &format!(
                        "certificate R={}: n = {}, |U| = {}, {} candidates, verifier {}, witness {} absent {}\n",
                        c.r,
                        c.n,
                        c.region.len(),
                        c.candidates.len(),
                        c.thm_a.verdict,
                        c.witness,
                        c.absent
                    );
                }
                t
            })?;
            Ok(status(ok))
        }
        Command::VerifyFamily { algebra: a, family, params } => {
            let alg = algebra(a)?;
            let mut v: serde_json::Value =
                serde_json::from_str(params).map_err(|e| Failure::Input(format!("bad --params: {e}")))?;
            let obj = v.as_object_mut().ok_or_else(|| Failure::Input("--params must be a JSON object".into()))?;
            obj.insert("family".into(), family.clone().into());
            let fam: Family = serde_json::from_value(v).map_err(|e| Failure::Input(format!("bad family: {e}")))?;
            let rel = family_instance(&alg, &fam)?;
            let r = verify_relation(&rel, &cfg)?;
            out.emit(&json!({ "family": fam, "relation": rel, "report": r }), || {
                format!(
                    "{} matches the geometric relation\ntop {}\n{}·{} = {}·{} + {}·{}  identity {}\n",
                    fam.name(),
                    rel.top.monomial(),
                    r.dims.left,
                    r.dims.right,
                    r.dims.top,
                    r.dims.bottom,
                    r.dims.x,
                    r.dims.y,
                    r.identity_holds
                )
            })?;
            Ok(status(r.all_ok()))
        }
        Command::Neighbours(a) => {
            let s = snake(a)?;
            let nb = neighbour_snakes(&s)?;
            out.emit(&nb, || {
                let show = |s: &Snake| s.points().iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",");
                format!("X = {}\nY = {}\n", show(&nb.x), show(&nb.y))
            })?;
            Ok(EXIT_OK)
        }
        Command::Factorize { algebra: a, num, den } => {
            let alg = algebra(a)?;
            let f = a_factorize(&monomial(num)?, &monomial(den)?, &alg)?;
            let rows: Vec<_> = f.factors.iter().map(|(p, e)| json!({ "point": p, "exponent": e })).collect();
            out.emit(&rows, || {
                if f.is_empty() {
                    "1\n".into()
                } else {
                    let t: Vec<String> = f.factors.iter().map(|(p, e)| format!("A{},{}^{e}", p.i, p.k)).collect();
                    format!("{}\n", t.join(" "))
                }
            })?;
            Ok(EXIT_OK)
        }
        Command::B2Decompose { m, mid, n } => {
            let d = wq_decompose(*m, *mid, *n, &cfg)?;
            let predicted = predicted_decomposition(*m, *mid, *n);
            let ok = d == predicted;
            out.emit(&json!({ "decomposition": d, "predicted": predicted, "matches": ok, "dim": d.dim() }), || {
                format!("{d}\ndim {}  matches prediction {ok}\n", d.dim())
            })?;
            Ok(status(ok))
        }
        Command::B2Qsystem { max } => {
            let r = verify_b2_qsystem(*max, &cfg)?;
            out.emit(&r, || {
                let t: Vec<String> = r
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "relation {} at {:?}: {} = {} + {}  {}",
                            c.relation,
                            c.params,
                            c.dims.0,
                            c.dims.1,
                            c.dims.2,
                            if c.holds { "holds" } else { "FAILS" }
                        )
                    })
                    .collect();
                format!("{}\n", t.join("\n"))
            })?;
            Ok(status(r.all_hold()))
        }
        Command::ThmaVerify { input } => {
            let text = if input == "-" {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(input)?
            };
            let inp: ThmAInput = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("bad input: {e}")))?;
            let alg = algebra(&inp.algebra)?;
            for p in &inp.region {
                alg.check_a_point(*p)?;
            }
            let region: BTreeSet<LatticePoint> = inp.region.iter().copied().collect();
            let c = thm_a_verify(&alg, &inp.m_plus, &inp.monomials, &region);
            out.emit(&c, || {
                format!(
                    "(i) in cone {}\n(ii) only dominant {}\n(iii) one way back {}\n(iv) node characters {}\ndistinct {}\n{}verdict {}\n",
                    c.in_cone,
                    c.only_dominant,
                    c.one_way_back,
                    c.node_characters,
                    c.distinct,
                    lines(&c.notes),
                    c.verdict
                )
            })?;
            Ok(status(c.verdict))
        }
        Command::Diagram { snake: a, format, neighbours, paths } => {
            let s = snake(a)?;
            let text =
                diagram::diagram(&s, *format, diagram::Options { neighbours: *neighbours, paths: *paths })?;
            out.emit(&json!({ "format": format!("{format:?}").to_lowercase(), "text": text }), || text.clone())?;
            Ok(EXIT_OK)
        }
        Command::Selftest => {
            let mut text = String::new();
            let results = acceptance::run_all(&cfg, |r| {
                if !out.json {
                    text.push_str(&format!("{r}\n"));
                }
            });
            let ok = results.iter().all(|r| r.passed);
            out.emit(&results, || text)?;
            Ok(status(ok))
        }
    }
}

/// Execute a parsed command, writing results to `out` and diagnostics to `err`.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut o = Out { w: out, json: cli.json };
    match dispatch(cli, &mut o) {
        Ok(code) => code,
        Err(Failure::Core(e)) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INVALID
        }
    }
}

/// Parse `args` (program name first) and run; clap usage errors exit with 2.
pub fn run_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli, out, err),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            code
        }
    }
}
