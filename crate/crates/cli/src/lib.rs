//! Command-line front end: `run` parses arguments, performs one computation
//! and returns the exit code with the text destined for stdout and stderr.

pub mod expr;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use moduli_core::exactalg::{macaulay_stats, Field, Gf2, Rational, RingElement};
use moduli_core::labels::mask_from_labels;
use moduli_core::operads::{full_compose, sweep, Identity, Stratum, StrataSum};
use moduli_core::presentations::{keel_presentation, krasnov_presentation, BoundaryRing};
use moduli_core::trees::{parse_tree, AnyTree};
use moduli_core::{Error, Partition2};
use serde_json::{json, Value};

pub use expr::{parse_ring_expression, ParseError};

/// Environment variable overriding the default degree bound (the socle degree).
pub const MAX_DEGREE_VAR: &str = "MODULI_MAX_DEGREE";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    /// Complex moduli space, Keel presentation.
    Keel,
    /// Real points with real markings only, mod 2 presentation.
    Krasnov,
    /// Real points with conjugate pairs (no presentation available).
    Rconj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FieldArg {
    Q,
    Gf2,
}

#[derive(Debug, Clone, clap::Args)]
struct RingArgs {
    #[arg(long, value_enum, default_value = "keel")]
    space: Space,
    /// Number of marked points.
    #[arg(long)]
    n: usize,
    /// Coefficient field; defaults to q for keel and gf2 for krasnov.
    #[arg(long, value_enum)]
    field: Option<FieldArg>,
}

#[derive(Debug, Parser)]
#[command(name = "moduli", version, about = "Cohomology rings and gluing maps of moduli spaces of rational curves")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Hilbert function of the presented ring.
    Betti {
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Normal form of a ring expression.
    Nf {
        expression: String,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Whether two ring expressions are equal in the ring.
    Equal {
        left: String,
        right: String,
        #[command(flatten)]
        ring: RingArgs,
    },
    /// Pullback of a boundary point of the four-pointed space.
    Pullback {
        #[command(flatten)]
        ring: RingArgs,
        /// The four kept labels, e.g. 1,2,3,4.
        #[arg(long)]
        s: String,
        /// The point, as `ab|cd` or `a,b|c,d`.
        #[arg(long)]
        split: String,
    },
    /// Mod 2 class pulled back from the point ab|cd of the real four-pointed space.
    Omega {
        /// Number of real marked points.
        #[arg(long)]
        n: usize,
        /// Labels a,b,c,d.
        #[arg(long)]
        labels: String,
    },
    /// Class of a stratum (product of its edge divisors) and its normal form.
    StrataClass {
        /// Tree JSON, a path, or `-` for stdin.
        #[arg(long)]
        tree: String,
        #[arg(long, value_enum)]
        field: Option<FieldArg>,
    },
    /// Glues `guest` into `host` at one slot.
    Glue {
        #[arg(long)]
        host: String,
        #[arg(long)]
        slot: usize,
        #[arg(long)]
        guest: String,
    },
    /// Composes `host` with one guest per input. `unit:+` and `unit:R` are the
    /// units; plain `unit` takes the color of the other guests.
    Compose {
        #[arg(long)]
        host: String,
        #[arg(long = "guest")]
        guests: Vec<String>,
    },
    /// Random sweep of a composition identity.
    Axioms {
        #[arg(long)]
        identity: String,
        #[arg(long, default_value_t = 500)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Macaulay-matrix dimension of one graded piece.
    Oracle {
        #[command(flatten)]
        ring: RingArgs,
        #[arg(long)]
        degree: u32,
    },
    /// Integral torsion of the real spaces (refused).
    Torsion {
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        rest: Vec<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.to_string())
    }
}

/// Exit code with captured output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command line. Exit code 0 on success, 1 for domain errors and
/// refusals, 2 for malformed arguments or expressions.
///
/// Torsion in integral cohomology, the 2-torsion amounts and rational
/// cohomology of the real-points spaces are not computed:
///
/// ```
/// use moduli_cli::run;
///
/// let out = run(["moduli", "torsion", "--space", "keel", "--n", "6"]);
/// assert_eq!(out.code, 1);
/// assert!(out.stderr.contains("out of scope"));
///
/// let out = run(["moduli", "betti", "--space", "krasnov", "--n", "5", "--field", "q"]);
/// assert_eq!(out.code, 1);
/// assert!(out.stderr.contains("out of scope"));
///
/// let out = run(["moduli", "betti", "--space", "rconj", "--n", "4"]);
/// assert_eq!(out.code, 1);
/// assert!(out.stderr.contains("out of scope"));
/// ```
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(&cli) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(Failure::Parse(m)) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("parse error: {m}\n"),
        },
        Err(Failure::Domain(e)) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn render(value: &Value, pretty_text: Option<String>, pretty: bool) -> String {
    match (pretty, pretty_text) {
        (true, Some(t)) => t,
        (true, None) => format!("{}\n", serde_json::to_string_pretty(value).expect("JSON")),
        (false, _) => format!("{value}\n"),
    }
}

fn degree_override() -> Result<Option<u32>, Failure> {
    match std::env::var(MAX_DEGREE_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| Failure::Parse(format!("{MAX_DEGREE_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(None),
    }
}

enum AnyRing {
    Q(BoundaryRing<Rational>),
    Gf2(BoundaryRing<Gf2>),
}

fn open_ring(args: &RingArgs) -> Result<AnyRing, Failure> {
    let bound = degree_override()?;
    let ring = match args.space {
        Space::Rconj => {
            return Err(Error::OutOfScope(
                "no presentation of the cohomology of real spaces with conjugate pairs is available".into(),
            )
            .into())
        }
        Space::Keel => match args.field.unwrap_or(FieldArg::Q) {
            FieldArg::Q => AnyRing::Q(keel_presentation(args.n)?),
            FieldArg::Gf2 => AnyRing::Gf2(keel_presentation(args.n)?),
        },
        Space::Krasnov => match args.field.unwrap_or(FieldArg::Gf2) {
            FieldArg::Gf2 => AnyRing::Gf2(krasnov_presentation(args.n)?),
            FieldArg::Q => {
                return Err(Error::OutOfScope(
                    "the rational cohomology ring of the real spaces is not presented; use --field gf2".into(),
                )
                .into())
            }
        },
    };
    Ok(match (ring, bound) {
        (AnyRing::Q(r), Some(b)) => AnyRing::Q(r.with_degree_bound(b)),
        (AnyRing::Gf2(r), Some(b)) => AnyRing::Gf2(r.with_degree_bound(b)),
        (r, None) => r,
    })
}

fn field_name<F: Field>() -> String {
    F::KIND.to_string()
}

fn betti<F: Field>(ring: &BoundaryRing<F>, pretty: bool) -> Result<String, Failure> {
    let top = ring.ring().degree_bound();
    let h = ring.ring().hilbert_function(top)?;
    let value = json!({
        "space": ring.flavor().to_string(),
        "n": ring.points(),
        "field": field_name::<F>(),
        "hilbert": h,
    });
    let mut table = String::from("degree  dimension\n");
    for e in &h.0 {
        let _ = writeln!(table, "{:>6}  {:>9}", e.degree, e.dimension);
    }
    Ok(render(&value, Some(table), pretty))
}

fn nf<F: Field>(ring: &BoundaryRing<F>, text: &str, pretty: bool) -> Result<String, Failure> {
    let e: RingElement<F> = parse_ring_expression(text, ring.universe())?;
    let n = ring.ring().normal_form(&e)?;
    let value = json!({ "input": e.to_string(), "normal_form": n.to_string() });
    Ok(render(&value, Some(format!("{n}\n")), pretty))
}

fn equal<F: Field>(ring: &BoundaryRing<F>, left: &str, right: &str, pretty: bool) -> Result<String, Failure> {
    let a: RingElement<F> = parse_ring_expression(left, ring.universe())?;
    let b: RingElement<F> = parse_ring_expression(right, ring.universe())?;
    let (na, nb) = (ring.ring().normal_form(&a)?, ring.ring().normal_form(&b)?);
    let verdict = if na == nb { "equal" } else { "not equal" };
    let value = json!({
        "verdict": verdict,
        "left": na.to_string(),
        "right": nb.to_string(),
    });
    Ok(render(&value, Some(format!("{verdict}\n")), pretty))
}

fn parse_labels(text: &str) -> Result<Vec<usize>, Failure> {
    let parts: Vec<&str> = if text.contains(',') {
        text.split(',').map(str::trim).collect()
    } else {
        text.trim().split("").filter(|s| !s.is_empty()).collect()
    };
    parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| Failure::Parse(format!("bad label {p:?} in {text:?}"))))
        .collect()
}

fn pullback<F: Field>(ring: &BoundaryRing<F>, s: &str, split: &str, pretty: bool) -> Result<String, Failure> {
    let s = parse_labels(s)?;
    if s.len() != 4 {
        return Err(Error::InvalidPartition(format!("need four labels, got {}", s.len())).into());
    }
    let (left, right) = split
        .split_once('|')
        .ok_or_else(|| Failure::Parse(format!("split {split:?} needs a `|`")))?;
    let (left, right) = (parse_labels(left)?, parse_labels(right)?);
    let n = ring.points();
    let four = mask_from_labels(s.iter().copied(), n)?;
    let j = mask_from_labels(left.iter().copied(), n)?;
    let k = mask_from_labels(right.iter().copied(), n)?;
    if j | k != four || j & k != 0 {
        return Err(Error::InvalidPartition("the split must divide the four kept labels".into()).into());
    }
    let p0 = Partition2::from_masks(four, j, true)?;
    let e = ring.pullback_boundary(&s, &p0)?;
    let n = ring.ring().normal_form(&e)?;
    let value = json!({ "element": e.to_string(), "normal_form": n.to_string() });
    Ok(render(&value, Some(format!("{e}\n")), pretty))
}

fn read_tree(arg: &str) -> Result<AnyTree, Failure> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else if arg == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Parse(format!("reading stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(arg).map_err(|e| Failure::Parse(format!("reading {arg}: {e}")))?
    };
    parse_tree(&text).map_err(|e| Failure::Parse(e.to_string()))
}

fn tree_json(t: &AnyTree, pretty: bool) -> String {
    let v = serde_json::to_value(t.to_json()).expect("tree JSON");
    render(&v, None, pretty)
}

fn strata_class<F: Field>(tree: &AnyTree, pretty: bool) -> Result<String, Failure> {
    let AnyTree::Complex(t) = tree else {
        return Err(Error::OutOfScope("stratum classes are computed for complex trees only".into()).into());
    };
    let mut ring: BoundaryRing<F> = keel_presentation(t.labels())?;
    if let Some(b) = degree_override()? {
        ring = ring.with_degree_bound(b);
    }
    let c = ring.strata_class(t)?;
    let n = ring.ring().normal_form(&c)?;
    let value = json!({ "class": c.to_string(), "normal_form": n.to_string() });
    Ok(render(&value, Some(format!("{c}\n{n}\n")), pretty))
}

fn element(t: AnyTree) -> StrataSum {
    match t {
        AnyTree::Complex(t) => StrataSum::complex(t),
        AnyTree::Real(t) => StrataSum::real(t),
    }
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    let pretty = cli.pretty;
    match &cli.command {
        Command::Betti { ring } => match open_ring(ring)? {
            AnyRing::Q(r) => betti(&r, pretty),
            AnyRing::Gf2(r) => betti(&r, pretty),
        },
        Command::Nf { expression, ring } => match open_ring(ring)? {
            AnyRing::Q(r) => nf(&r, expression, pretty),
            AnyRing::Gf2(r) => nf(&r, expression, pretty),
        },
        Command::Equal { left, right, ring } => match open_ring(ring)? {
            AnyRing::Q(r) => equal(&r, left, right, pretty),
            AnyRing::Gf2(r) => equal(&r, left, right, pretty),
        },
        Command::Pullback { ring, s, split } => match open_ring(ring)? {
            AnyRing::Q(r) => pullback(&r, s, split, pretty),
            AnyRing::Gf2(r) => pullback(&r, s, split, pretty),
        },
        Command::Omega { n, labels } => {
            let l = parse_labels(labels)?;
            let [a, b, c, d] = l[..] else {
                return Err(Error::InvalidPartition(format!("omega needs four labels, got {}", l.len())).into());
            };
            let mut ring = krasnov_presentation(*n)?;
            if let Some(bd) = degree_override()? {
                ring = ring.with_degree_bound(bd);
            }
            let w = ring.omega_class(a, b, c, d)?;
            let nf = ring.ring().normal_form(&w)?;
            let value = json!({ "element": w.to_string(), "normal_form": nf.to_string(), "degree": w.degree() });
            Ok(render(&value, Some(format!("{nf}\n")), pretty))
        }
        Command::StrataClass { tree, field } => {
            let t = read_tree(tree)?;
            match field.unwrap_or(FieldArg::Q) {
                FieldArg::Q => strata_class::<Rational>(&t, pretty),
                FieldArg::Gf2 => strata_class::<Gf2>(&t, pretty),
            }
        }
        Command::Glue { host, slot, guest } => {
            let out = match (read_tree(host)?, read_tree(guest)?) {
                (AnyTree::Complex(h), AnyTree::Complex(g)) => AnyTree::Complex(h.glue(*slot, &g)?),
                (AnyTree::Real(h), AnyTree::Complex(g)) if h.reals() == 0 => AnyTree::Real(h.glue_conjugate(*slot, &g)?),
                (AnyTree::Real(h), AnyTree::Complex(g)) => AnyTree::Real(h.glue_complex(*slot, &g)?),
                (AnyTree::Real(h), AnyTree::Real(g)) => AnyTree::Real(h.glue_real(*slot, &g)?),
                (AnyTree::Complex(_), AnyTree::Real(_)) => {
                    return Err(Error::Composition("a complex marking cannot take a real output".into()).into())
                }
            };
            Ok(tree_json(&out, pretty))
        }
        Command::Compose { host, guests } => {
            let x = element(read_tree(host)?);
            let real_host = !matches!(x.flavor(), moduli_core::operads::Flavor::Complex(_));
            let is_unit = |g: &str| matches!(g, "unit" | "unit:+" | "unit:R");
            let real_guests = guests
                .iter()
                .any(|g| g == "unit:R" || (!is_unit(g) && matches!(read_tree(g), Ok(AnyTree::Real(_)))));
            let ys = guests
                .iter()
                .map(|g| match g.as_str() {
                    "unit:+" => Ok(StrataSum::unit_complex()),
                    "unit:R" => Ok(StrataSum::unit_real()),
                    "unit" if real_host && real_guests => Ok(StrataSum::unit_real()),
                    "unit" => Ok(StrataSum::unit_complex()),
                    _ => read_tree(g).map(element),
                })
                .collect::<Result<Vec<_>, _>>()?;
            let out = full_compose(&x, &ys)?;
            let (s, _) = out.terms().next().expect("single strata compose to a single stratum");
            let v = match s {
                Stratum::Complex(t) => serde_json::to_value(t.to_json()).expect("tree JSON"),
                Stratum::Real(t) => serde_json::to_value(t.to_json()).expect("tree JSON"),
                Stratum::Unit => json!({ "unit": true }),
            };
            Ok(render(&v, None, pretty))
        }
        Command::Axioms {
            identity,
            samples,
            seed,
        } => {
            let id: Identity = identity.parse().map_err(|_| {
                Failure::Parse(format!(
                    "unknown identity {identity:?}; expected one of {}",
                    Identity::ALL.map(|i| i.name()).join(", ")
                ))
            })?;
            let report = sweep(id, *samples, *seed)?;
            let mut v = serde_json::to_value(&report).expect("report JSON");
            v["passed"] = json!(report.passed());
            let text = format!(
                "{}: {} samples, {} failures, {} undefined, seed {}\n",
                report.identity,
                report.samples,
                report.failures.len(),
                report.undefined,
                report.seed
            );
            Ok(render(&v, Some(text), pretty))
        }
        Command::Oracle { ring, degree } => {
            let (flavor, n, stats) = match open_ring(ring)? {
                AnyRing::Q(r) => (r.flavor(), r.points(), macaulay_stats(r.ring().presentation(), *degree)?),
                AnyRing::Gf2(r) => (r.flavor(), r.points(), macaulay_stats(r.ring().presentation(), *degree)?),
            };
            let value = json!({
                "space": flavor.to_string(),
                "n": n,
                "degree": degree,
                "monomials": stats.monomials,
                "rows": stats.rows,
                "rank": stats.rank,
                "dimension": stats.dimension(),
            });
            Ok(render(&value, Some(format!("{}\n", stats.dimension())), pretty))
        }
        Command::Torsion { .. } => Err(Error::OutOfScope(
            "integral torsion and the amount of 2-torsion of the real spaces are not computed".into(),
        )
        .into()),
    }
}

