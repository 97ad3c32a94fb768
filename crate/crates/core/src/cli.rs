//! Command-line front end. [`run`] maps arguments to an exit code and the
//! text written to standard output.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or precondition error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::alphabet::{lyndon_up_to, Alphabet, LetterOrder, Word};
use crate::bases::{BasisTable, Bases};
use crate::error::{Error, Result};
use crate::factorization::{
    diagonal, local_coordinates, reconstruct, schutzenberger, CoordinateChart,
};
use crate::law::PhiLaw;
use crate::lawfile::load_law;
use crate::poly::{NCPoly, Tensor, TruncSeries};
use crate::products::{delta_conc, delta_phi, phi_shuffle};
use crate::projectors::{antipode, pi1, pi_n, Side};
use crate::scalar::Scalar;
use crate::text::{parse_poly_with, MachinePoly};

#[derive(Parser, Debug)]
#[command(name = "phishuffle", version, about = "Exact computation in φ-deformed shuffle bialgebras")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Config {
    /// Built-in law (`shuffle`, `quasi-shuffle`, `min-shuffle`, `qstuffle[:c]`,
    /// `qshuffle`, `q-infiltration[:c]`) or a JSON law file.
    #[arg(long, global = true, default_value = "qstuffle")]
    law: String,
    /// Weight bound for tables, series and verifications.
    #[arg(long, global = true, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    weight: u32,
    /// Specialize q to a rational after computing.
    #[arg(long, global = true)]
    q: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Law inspection.
    Law {
        #[command(subcommand)]
        action: LawAction,
    },
    /// φ-shuffle product of two polynomials.
    Mul { left: String, right: String },
    /// Coproduct `Δ_{⧢φ}` (or deconcatenation with `--conc`).
    Coproduct {
        poly: String,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        legs: u32,
        #[arg(long)]
        conc: bool,
    },
    /// Eulerian projector `π₁` (or `π̌₁` with `--adjoint`).
    Pi1 {
        poly: String,
        #[arg(long)]
        adjoint: bool,
    },
    /// `πₙ` (or `π̌ₙ` with `--adjoint`).
    Pin {
        n: usize,
        poly: String,
        #[arg(long)]
        adjoint: bool,
    },
    /// Antipode of `(⧢φ, Δ_conc)`.
    Antipode { poly: String },
    /// Basis elements for one word, or the whole table up to `--weight`.
    Basis { kind: BasisKind, word: Option<String> },
    /// Check `⟨Σ_u, Π_v⟩ = δ_{u,v}` up to `--weight`.
    Gram,
    /// Check the Schützenberger factorization against the diagonal series.
    Factorize,
    /// Local coordinates `⟨S, Σ_l⟩` of a group-like series.
    Coords { series: String },
    /// Rebuild a series from coordinates given as `word=scalar`.
    Reconstruct { coords: Vec<String> },
    /// Lyndon words up to `--weight`, ascending.
    Lyndon {
        /// Comma-separated letters, e.g. `y1,y2`; default: all letters up to the weight.
        #[arg(long)]
        alphabet: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum LawAction {
    /// Associativity, commutativity, dualizability and moderation.
    Analyze,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BasisKind {
    Pi,
    Sigma,
}

struct Ctx {
    law: PhiLaw,
    weight: u32,
    q: Option<BigRational>,
    machine: bool,
}

/// Rendered command output.
struct Out {
    text: String,
    machine: Value,
    code: i32,
}

impl Out {
    fn ok(text: String, machine: Value) -> Out {
        Out { text, machine, code: 0 }
    }
}

impl Ctx {
    fn poly(&self, text: &str) -> Result<NCPoly> {
        parse_poly_with(text, &|k| self.law.resolve(k))
    }

    fn word(&self, text: &str) -> Result<Word> {
        Word::parse_with(text, &|k| self.law.resolve(k))
    }

    fn scalar(&self, c: &Scalar) -> Result<Scalar> {
        match &self.q {
            None => Ok(c.clone()),
            Some(q0) => Ok(Scalar::from_rational(c.specialize(q0)?)),
        }
    }

    fn special(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut out = NCPoly::zero();
        for (w, c) in p.terms() {
            out.add_term(w.clone(), &self.scalar(c)?);
        }
        Ok(out)
    }

    fn special_tensor(&self, t: &Tensor) -> Result<Tensor> {
        let mut out = Tensor::zero(t.order());
        for (k, c) in t.terms() {
            out.add_term(k.clone(), &self.scalar(c)?);
        }
        Ok(out)
    }

    fn poly_out(&self, p: &NCPoly) -> Result<Out> {
        let p = self.special(p)?;
        Ok(Out::ok(p.to_string(), poly_json(&p)))
    }
}

fn poly_json(p: &NCPoly) -> Value {
    serde_json::to_value(MachinePoly::from_poly(p)).expect("serializable")
}

fn word_json(w: &Word) -> Value {
    json!(w.letters().iter().map(|l| l.to_string()).collect::<Vec<_>>())
}

fn scalar_json(c: &Scalar) -> Value {
    let (num, den) = c.display_parts();
    json!({"num": num, "den": den})
}

fn tensor_json(t: &Tensor) -> Value {
    let terms: Vec<Value> = t
        .terms()
        .map(|(k, c)| {
            let (num, den) = c.display_parts();
            json!({"legs": k.iter().map(word_json).collect::<Vec<_>>(), "num": num, "den": den})
        })
        .collect();
    json!({ "terms": terms })
}

fn execute(ctx: &Ctx, command: &Command) -> Result<Out> {
    let law = &ctx.law;
    match command {
        Command::Law { action: LawAction::Analyze } => {
            let r = crate::law::analyze_law(law, ctx.weight.max(2));
            let machine = json!({
                "law": law.name(),
                "associative": r.associative,
                "commutative": r.commutative,
                "dualizable": r.dualizable.to_string(),
                "moderate": r.moderate.to_string(),
                "graded": r.graded,
                "verified_up_to_weight": r.verified_up_to_weight,
                "notes": r.notes,
            });
            Ok(Out::ok(format!("law: {}\n{r}", law.name()), machine))
        }
        Command::Mul { left, right } => {
            ctx.poly_out(&phi_shuffle(law, &ctx.poly(left)?, &ctx.poly(right)?)?)
        }
        Command::Coproduct { poly, legs, conc } => {
            let p = ctx.poly(poly)?;
            let t = if *conc {
                delta_conc(&p, *legs as usize)
            } else {
                delta_phi(law, &p, *legs as usize)?
            };
            let t = ctx.special_tensor(&t)?;
            Ok(Out::ok(t.to_string(), tensor_json(&t)))
        }
        Command::Pi1 { poly, adjoint } => {
            let side = if *adjoint { Side::Adjoint } else { Side::Standard };
            ctx.poly_out(&pi1(law, &ctx.poly(poly)?, side)?)
        }
        Command::Pin { n, poly, adjoint } => {
            let side = if *adjoint { Side::Adjoint } else { Side::Standard };
            ctx.poly_out(&pi_n(law, &ctx.poly(poly)?, *n, side)?)
        }
        Command::Antipode { poly } => ctx.poly_out(&antipode(law, &ctx.poly(poly)?)?),
        Command::Basis { kind, word } => basis(ctx, *kind, word.as_deref()),
        Command::Gram => {
            let report = BasisTable::build(law, ctx.weight)?.gram_report();
            let machine = json!({
                "identity": report.is_identity(),
                "weight_bound": report.weight_bound,
                "entries": report.entries,
                "failure": report.failure.as_ref().map(|(u, v, c)| json!({
                    "sigma": word_json(u), "pi": word_json(v), "value": scalar_json(c)
                })),
            });
            Ok(Out {
                text: report.to_string(),
                machine,
                code: if report.is_identity() { 0 } else { 1 },
            })
        }
        Command::Factorize => {
            let n = ctx.weight;
            let product = schutzenberger(law, n)?;
            let diff = &product - &diagonal(&law.alphabet_up_to(n), n);
            let ok = diff.is_zero();
            let text = if ok {
                format!("OK: product equals diagonal (weight<={n})")
            } else {
                format!("FAIL: product differs from diagonal (weight<={n}): {}", ctx.special_tensor(&diff)?)
            };
            let machine = json!({"equal": ok, "weight_bound": n, "difference": tensor_json(&diff)});
            Ok(Out { text, machine, code: if ok { 0 } else { 1 } })
        }
        Command::Coords { series } => {
            let s = TruncSeries::new(ctx.poly(series)?, ctx.weight);
            chart_out(ctx, &local_coordinates(law, &s)?)
        }
        Command::Reconstruct { coords } => {
            let mut given = Vec::new();
            for item in coords {
                let (w, c) = item
                    .split_once('=')
                    .ok_or_else(|| Error::Parse(format!("expected word=scalar, got `{item}`")))?;
                given.push((ctx.word(w.trim())?, c.trim().parse::<Scalar>()?));
            }
            let chart = CoordinateChart::new(law, ctx.weight, given)?;
            ctx.poly_out(reconstruct(&chart)?.poly())
        }
        Command::Lyndon { alphabet } => {
            let alpha = match alphabet {
                None => law.alphabet_up_to(ctx.weight),
                Some(list) => Alphabet::new(
                    list.split(',')
                        .map(|s| {
                            let w = ctx.word(s.trim())?;
                            match w.letters() {
                                [l] => Ok(*l),
                                _ => Err(Error::Parse(format!("`{s}` is not a letter"))),
                            }
                        })
                        .collect::<Result<Vec<_>>>()?,
                )?,
            };
            let words = lyndon_up_to(&alpha, LetterOrder::default(), ctx.weight)?;
            let text: Vec<String> = words.iter().map(Word::to_string).collect();
            let machine = json!(words.iter().map(word_json).collect::<Vec<_>>());
            Ok(Out::ok(text.join("\n"), machine))
        }
    }
}

fn basis(ctx: &Ctx, kind: BasisKind, word: Option<&str>) -> Result<Out> {
    let mut b = Bases::new(&ctx.law)?;
    let words = match word {
        Some(w) => vec![ctx.word(w)?],
        None => ctx
            .law
            .alphabet_up_to(ctx.weight)
            .words_up_to(ctx.weight)
            .into_iter()
            .filter(|w| !w.is_empty())
            .collect(),
    };
    let tag = match kind {
        BasisKind::Pi => "PI",
        BasisKind::Sigma => "SIGMA",
    };
    let (mut lines, mut rows) = (Vec::new(), Vec::new());
    for w in &words {
        let p = match kind {
            BasisKind::Pi => b.pi(w)?,
            BasisKind::Sigma => b.sigma(w)?,
        };
        let p = ctx.special(&p)?;
        lines.push(format!("{tag} {w} = {p}"));
        rows.push(json!({"kind": tag, "word": word_json(w), "poly": poly_json(&p)}));
    }
    Ok(Out::ok(lines.join("\n"), Value::Array(rows)))
}

fn chart_out(ctx: &Ctx, chart: &CoordinateChart) -> Result<Out> {
    let (mut lines, mut rows) = (Vec::new(), Vec::new());
    for (l, c) in chart.entries_decreasing() {
        let c = ctx.scalar(c)?;
        lines.push(format!("COORD {l} = {c}"));
        rows.push(json!({"word": word_json(l), "value": scalar_json(&c)}));
    }
    Ok(Out::ok(lines.join("\n"), Value::Array(rows)))
}

/// Runs one invocation; `args` excludes the program name.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("phishuffle"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match prepare(&cli.config).and_then(|ctx| Ok((execute(&ctx, &cli.command)?, ctx.machine))) {
        Ok((out, machine)) => {
            let body = if machine {
                serde_json::to_string_pretty(&out.machine).expect("serializable")
            } else {
                out.text
            };
            (out.code, body + "\n")
        }
        Err(e) => (2, format!("error: {e}\n")),
    }
}

fn prepare(config: &Config) -> Result<Ctx> {
    let q = match config.q.as_deref() {
        None => None,
        Some(text) => {
            let s: Scalar = text.parse()?;
            Some(s.as_rational().ok_or_else(|| {
                Error::Parse(format!("--q expects a rational number, got `{text}`"))
            })?)
        }
    };
    Ok(Ctx {
        law: load_law(&config.law)?,
        weight: config.weight,
        q,
        machine: config.machine,
    })
}
