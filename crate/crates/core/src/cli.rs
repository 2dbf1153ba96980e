//! Command-line front end. [`run`] is pure: it maps arguments to an exit code
//! and the text to print, so the binary is a thin wrapper.

use std::cmp::Ordering;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::iso::{classify_case, from_bruck, to_bruck, IsoError};
use crate::ordinal::{modified_split, parse_ordinal, Ordinal, OrdinalError};
use crate::semigroup::{
    box_of, bruck_mul, parse_balpha_element, parse_bruck_element, BAlphaElement, BruckElement,
    SemigroupError,
};
use crate::topology::{
    base_nbhd, classify_point, continuity_witness, enumerate_topologies, hausdorff_witness,
    nbhd_contains, parse_descriptor, uncovered_boxes, verify_shift_inclusion, Level,
    NbhdDescriptor, ShiftCheck, TopologyError, TopologySpec,
};
use crate::verify::{run_suite, Suite, VerifyError, VerifyParams};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

const BIN: &str = "alpha-bicyclic";

#[derive(Parser, Debug)]
#[command(name = BIN, version, about = "Ordinal arithmetic, alpha-bicyclic monoids and their topologies")]
struct Cli {
    /// Print a single JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ordinals below epsilon_0 in Cantor normal form.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// The alpha-bicyclic monoid B_alpha.
    #[command(subcommand)]
    Balpha(BalphaCmd),
    /// The Bruck extension of B_alpha.
    #[command(subcommand)]
    Bruck(BruckCmd),
    /// The isomorphism between B_(alpha+1) and the Bruck extension of B_alpha.
    #[command(subcommand)]
    Iso(IsoCmd),
    /// The topologies tau(i, alpha).
    #[command(subcommand)]
    Top(TopCmd),
    /// Run a property suite and print its JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct Level1 {
    /// Level of the monoid (an ordinal).
    #[arg(long, default_value = "1")]
    alpha: String,
}

#[derive(Subcommand, Debug)]
enum OrdCmd {
    Add {
        x: String,
        y: String,
    },
    /// Left subtraction: the c with b + c = a.
    Sub {
        a: String,
        b: String,
    },
    Cmp {
        x: String,
        y: String,
    },
    Normalize {
        x: String,
    },
    /// Splits x as n*w^alpha + tail with tail < w^alpha.
    Split {
        x: String,
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Subcommand, Debug)]
enum BalphaCmd {
    Mul {
        #[command(flatten)]
        level: Level1,
        x: String,
        y: String,
    },
    Inv {
        #[command(flatten)]
        level: Level1,
        x: String,
    },
    Pow {
        #[command(flatten)]
        level: Level1,
        #[arg(long)]
        n: u64,
        x: String,
    },
}

#[derive(Subcommand, Debug)]
enum BruckCmd {
    Mul {
        #[command(flatten)]
        level: Level1,
        x: String,
        y: String,
    },
    Box {
        #[command(flatten)]
        level: Level1,
        x: String,
    },
}

#[derive(Subcommand, Debug)]
enum IsoCmd {
    /// Element of B_(alpha+1) to the Bruck extension over B_alpha.
    ToBruck {
        #[command(flatten)]
        level: Level1,
        x: String,
    },
    FromBruck {
        #[command(flatten)]
        level: Level1,
        y: String,
    },
    /// Which product branch governs f(x)f(y).
    Case {
        #[command(flatten)]
        level: Level1,
        x: String,
        y: String,
    },
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Carrier level: a positive number or w.
    #[arg(long)]
    alpha: String,
    /// Topology index, 1 <= i <= alpha: a positive number or w.
    #[arg(long)]
    i: String,
}

#[derive(Subcommand, Debug)]
enum TopCmd {
    Classify {
        #[command(flatten)]
        spec: SpecArgs,
        x: String,
    },
    Nbhd {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        n: u64,
        x: String,
    },
    Member {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        desc: String,
        x: String,
    },
    /// A neighborhood V of x with l V r inside the target.
    Witness {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        l: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        target: String,
        x: String,
    },
    /// Checks l V r inside the target over members with coefficients <= bound.
    VerifyShift {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        l: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 8)]
        bound: u64,
    },
    /// Disjoint basic neighborhoods of two points.
    Separate {
        #[command(flatten)]
        spec: SpecArgs,
        p: String,
        q: String,
    },
    /// Boxes of the local model not covered by the n-th neighborhood.
    Boxes {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        j: u64,
        #[arg(long)]
        n: u64,
    },
    /// The family on B_alpha, finest first.
    Lattice {
        #[arg(long)]
        alpha: String,
        /// Number of finite indices listed when alpha = w.
        #[arg(long, default_value_t = 12)]
        n: u64,
    },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    i: Option<String>,
    #[arg(long)]
    n: Option<u64>,
    #[arg(long, default_value_t = 8)]
    bound: u64,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

enum CliError {
    Usage(String),
    Domain(String),
}

impl From<OrdinalError> for CliError {
    fn from(e: OrdinalError) -> Self {
        match e {
            OrdinalError::Syntax { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<SemigroupError> for CliError {
    fn from(e: SemigroupError) -> Self {
        match e {
            SemigroupError::Syntax { .. } => CliError::Usage(e.to_string()),
            SemigroupError::Ordinal(o) => o.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<IsoError> for CliError {
    fn from(e: IsoError) -> Self {
        match e {
            IsoError::Semigroup(s) => s.into(),
            IsoError::Ordinal(o) => o.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<TopologyError> for CliError {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::Syntax { .. } => CliError::Usage(e.to_string()),
            TopologyError::Semigroup(s) => s.into(),
            TopologyError::Ordinal(o) => o.into(),
            TopologyError::Iso(i) => i.into(),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        CliError::Domain(e.to_string())
    }
}

/// Result of one command: exit code, text form and JSON form.
struct Output {
    code: i32,
    text: String,
    json: Value,
}

impl Output {
    fn ok(text: impl ToString) -> Self {
        let text = text.to_string();
        Output {
            code: EXIT_OK,
            json: json!({ "schema": 1, "result": text }),
            text,
        }
    }

    fn with_json(mut self, json: Value) -> Self {
        self.json = json;
        self
    }
}

/// Runs the command line `args` (without the program name) and returns the
/// exit code together with the text to print.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let json_requested = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(std::iter::once(BIN.to_string()).chain(args)) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string().trim_end().to_string();
            if json_requested && code != EXIT_OK {
                return (code, error_json("usage", &text));
            }
            return (code, text);
        }
    };
    match dispatch(cli.command) {
        Ok(out) if cli.json => (
            out.code,
            serde_json::to_string_pretty(&out.json).expect("json"),
        ),
        Ok(out) => (out.code, out.text),
        Err(err) => {
            let (code, kind, msg) = match err {
                CliError::Usage(m) => (EXIT_USAGE, "usage", m),
                CliError::Domain(m) => (EXIT_DOMAIN, "domain", m),
            };
            if cli.json {
                (code, error_json(kind, &msg))
            } else {
                (code, format!("error: {msg}"))
            }
        }
    }
}

fn error_json(kind: &str, message: &str) -> String {
    let v = json!({ "schema": 1, "error": { "kind": kind, "message": message } });
    serde_json::to_string_pretty(&v).expect("json")
}

fn dispatch(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Ord(c) => ord(c),
        Command::Balpha(c) => balpha(c),
        Command::Bruck(c) => bruck(c),
        Command::Iso(c) => iso(c),
        Command::Top(c) => top(c),
        Command::Verify(v) => verify(v),
    }
}

fn ordinal(text: &str) -> Result<Ordinal, CliError> {
    Ok(parse_ordinal(text)?)
}

fn ord(cmd: OrdCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        OrdCmd::Add { x, y } => Output::ok(ordinal(&x)?.checked_add(&ordinal(&y)?)?),
        OrdCmd::Sub { a, b } => Output::ok(ordinal(&a)?.sub_left(&ordinal(&b)?)?),
        OrdCmd::Cmp { x, y } => Output::ok(match ordinal(&x)?.cmp(&ordinal(&y)?) {
            Ordering::Less => "<",
            Ordering::Equal => "=",
            Ordering::Greater => ">",
        }),
        OrdCmd::Normalize { x } => Output::ok(ordinal(&x)?),
        OrdCmd::Split { x, alpha } => {
            let s = modified_split(&ordinal(&x)?, &ordinal(&alpha)?)?;
            Output::ok(format!("head={} tail={}", s.head_coeff, s.tail))
                .with_json(json!({ "schema": 1, "head": s.head_coeff, "tail": s.tail.to_string() }))
        }
    })
}

fn element(text: &str, level: &Ordinal) -> Result<BAlphaElement, CliError> {
    Ok(parse_balpha_element(text, level)?)
}

fn bruck_element(text: &str, level: &Ordinal) -> Result<BruckElement<BAlphaElement>, CliError> {
    Ok(parse_bruck_element(text, level)?)
}

fn balpha(cmd: BalphaCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        BalphaCmd::Mul { level, x, y } => {
            let a = ordinal(&level.alpha)?;
            Output::ok(element(&x, &a)?.mul(&element(&y, &a)?)?)
        }
        BalphaCmd::Inv { level, x } => Output::ok(element(&x, &ordinal(&level.alpha)?)?.inverse()),
        BalphaCmd::Pow { level, n, x } => Output::ok(element(&x, &ordinal(&level.alpha)?)?.pow(n)?),
    })
}

fn bruck(cmd: BruckCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        BruckCmd::Mul { level, x, y } => {
            let a = ordinal(&level.alpha)?;
            let (x, y) = (bruck_element(&x, &a)?, bruck_element(&y, &a)?);
            Output::ok(bruck_mul(&x, &y, |s, t| s.mul(t))?)
        }
        BruckCmd::Box { level, x } => {
            let b = box_of(&bruck_element(&x, &ordinal(&level.alpha)?)?)?;
            Output::ok(b).with_json(json!({ "schema": 1, "n": b.n, "m": b.m }))
        }
    })
}

fn upper_level(alpha: &Ordinal) -> Result<Ordinal, CliError> {
    Ok(alpha.checked_add(&Ordinal::one())?)
}

fn iso(cmd: IsoCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        IsoCmd::ToBruck { level, x } => {
            let a = ordinal(&level.alpha)?;
            Output::ok(to_bruck(&a, &element(&x, &upper_level(&a)?)?)?)
        }
        IsoCmd::FromBruck { level, y } => {
            let a = ordinal(&level.alpha)?;
            Output::ok(from_bruck(&a, &bruck_element(&y, &a)?)?)
        }
        IsoCmd::Case { level, x, y } => {
            let a = ordinal(&level.alpha)?;
            let up = upper_level(&a)?;
            Output::ok(classify_case(&element(&x, &up)?, &element(&y, &up)?, &a)?)
        }
    })
}

fn level(text: &str) -> Result<Level, CliError> {
    Ok(Level::from_ordinal(&ordinal(text)?)?)
}

fn spec(args: &SpecArgs) -> Result<TopologySpec, CliError> {
    Ok(TopologySpec::new(level(&args.i)?, level(&args.alpha)?)?)
}

fn point(text: &str, spec: &TopologySpec) -> Result<BAlphaElement, CliError> {
    element(text, &spec.carrier_level())
}

fn descriptor(text: &str, spec: &TopologySpec) -> Result<NbhdDescriptor, CliError> {
    let d = parse_descriptor(text, &spec.carrier_level())?;
    d.validate(spec)?;
    Ok(d)
}

fn top(cmd: TopCmd) -> Result<Output, CliError> {
    Ok(match cmd {
        TopCmd::Classify { spec: s, x } => {
            let s = spec(&s)?;
            Output::ok(classify_point(&s, &point(&x, &s)?)?)
        }
        TopCmd::Nbhd { spec: s, n, x } => {
            let s = spec(&s)?;
            Output::ok(base_nbhd(&s, &point(&x, &s)?, n)?)
        }
        TopCmd::Member { spec: s, desc, x } => {
            let s = spec(&s)?;
            let member = nbhd_contains(&descriptor(&desc, &s)?, &point(&x, &s)?)?;
            Output::ok(member).with_json(json!({ "schema": 1, "result": member }))
        }
        TopCmd::Witness {
            spec: s,
            l,
            r,
            target,
            x,
        } => {
            let s = spec(&s)?;
            let (l, r, x) = (point(&l, &s)?, point(&r, &s)?, point(&x, &s)?);
            Output::ok(continuity_witness(
                &s,
                &l,
                &r,
                &x,
                &descriptor(&target, &s)?,
            )?)
        }
        TopCmd::VerifyShift {
            spec: s,
            l,
            r,
            v,
            target,
            bound,
        } => {
            let s = spec(&s)?;
            if bound == 0 {
                return Err(CliError::Usage("--bound must be positive".into()));
            }
            let (l, r) = (point(&l, &s)?, point(&r, &s)?);
            match verify_shift_inclusion(
                &l,
                &descriptor(&v, &s)?,
                &r,
                &descriptor(&target, &s)?,
                bound,
            )? {
                ShiftCheck::Ok => {
                    Output::ok("ok").with_json(json!({ "schema": 1, "result": "ok" }))
                }
                ShiftCheck::Counterexample(c) => Output {
                    code: EXIT_FAILED,
                    text: format!("counterexample {c}"),
                    json: json!({ "schema": 1, "result": "counterexample", "counterexample": c.to_string() }),
                },
            }
        }
        TopCmd::Separate { spec: s, p, q } => {
            let s = spec(&s)?;
            let (dp, dq) = hausdorff_witness(&s, &point(&p, &s)?, &point(&q, &s)?)?;
            Output::ok(format!("{dp}\n{dq}")).with_json(
                json!({ "schema": 1, "first": dp.to_string(), "second": dq.to_string() }),
            )
        }
        TopCmd::Boxes { spec: s, j, n } => {
            let sq = uncovered_boxes(&spec(&s)?, j, n)?;
            let boxes: Vec<[u64; 2]> = sq.iter().map(|b| [b.n, b.m]).collect();
            Output::ok(sq).with_json(json!({ "schema": 1, "bound": sq.bound, "boxes": boxes }))
        }
        TopCmd::Lattice { alpha, n } => {
            let members: Vec<String> = enumerate_topologies(&ordinal(&alpha)?)?
                .capped(n)
                .iter()
                .map(ToString::to_string)
                .collect();
            Output::ok(members.join("\n")).with_json(json!({ "schema": 1, "members": members }))
        }
    })
}

fn verify(v: VerifyArgs) -> Result<Output, CliError> {
    let params = VerifyParams {
        alpha: v.alpha.as_deref().map(level).transpose()?,
        i: v.i.as_deref().map(level).transpose()?,
        n: v.n,
        bound: v.bound,
        trials: v.trials,
        seed: v.seed,
    };
    let report = run_suite(v.suite, &params)?;
    let json = serde_json::to_value(&report).expect("reports serialize");
    Ok(Output {
        code: if report.passed { EXIT_OK } else { EXIT_FAILED },
        text: report.to_json(),
        json,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let (code, out) = run(args.iter().copied());
        assert_eq!(code, EXIT_OK, "{args:?}: {out}");
        out
    }

    #[test]
    fn calculator_examples() {
        assert_eq!(ok(&["ord", "add", "w+1", "w"]), "w*2");
        assert_eq!(
            ok(&["balpha", "mul", "--alpha", "2", "(w,1)", "(2,w)"]),
            "(w + 1, w)"
        );
        assert_eq!(
            ok(&[
                "top",
                "member",
                "--alpha",
                "2",
                "--i",
                "2",
                "--desc",
                "base((w,w); j=1; n=3)",
                "(4,w)"
            ]),
            "false"
        );
        assert_eq!(
            ok(&["ord", "split", "w*2 + 3", "--alpha", "1"]),
            "head=2 tail=3"
        );
        assert_eq!(
            ok(&["iso", "to-bruck", "--alpha", "1", "(w*2+3, w)"]),
            "[2, (3, 0), 1]"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["ord", "sub", "1", "w"]).0, EXIT_DOMAIN);
        assert_eq!(run(["ord", "add", "w+", "1"]).0, EXIT_USAGE);
        assert_eq!(run(["ord", "frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(["top", "lattice", "--alpha", "w+1"]).0, EXIT_DOMAIN);
        let (code, out) = run([
            "top",
            "verify-shift",
            "--alpha",
            "2",
            "--i",
            "2",
            "--l",
            "(w,0)",
            "--r",
            "(0,0)",
            "--v",
            "base((w,w); j=1; n=3)",
            "--target",
            "base((w*2,w); j=1; n=4)",
        ]);
        assert_eq!((code, out.as_str()), (EXIT_FAILED, "counterexample (4, 0)"));
    }

    #[test]
    fn json_mode() {
        let out = ok(&["--json", "ord", "cmp", "w", "5"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["result"], ">");
        assert_eq!(v["schema"], 1);
        let (code, out) = run(["ord", "sub", "1", "w", "--json"]);
        assert_eq!(code, EXIT_DOMAIN);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["error"]["kind"], "domain");
    }
}
