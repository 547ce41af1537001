use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use specmult::qform::class_group;
use specmult::repcount::{first_quadrant_count, representations, representations_irrational};
use specmult::report::{
    histogram_record, ClassificationRecord, ErrorRecord, FormRecord, PrimeWitnessRecord,
    RepSetRecord, TorusFormRecord, WitnessRecord,
};
use specmult::spectra::{
    multiplicity_set_sample, rect_classify, rect_level, rect_multiplicity, rect_witness,
    torus_classify, torus_form, torus_level_set, SampleRange,
};
use specmult::witness::{
    find_represented_prime, multiplicity_histogram, surjectivity_witness, theorem_q_witness,
};
use specmult::{Error, ExactValue, Form, RectangleSpec, TorusSpec, UnimodularMap};

#[derive(Parser, Debug)]
#[command(
    name = "specmult",
    version,
    about = "Exact eigenvalue multiplicities for rectangles and flat tori"
)]
struct Cli {
    /// Emit a single JSON object on stdout.
    #[arg(long, global = true)]
    json: bool,

    /// Upper limit for prime and witness searches.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    bound: u64,

    /// Radius cap for exact scans of irrational forms.
    #[arg(long = "box", global = true, default_value_t = 15)]
    box_: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Binary quadratic forms.
    #[command(subcommand)]
    Qform(QformCmd),
    /// Representation counts.
    #[command(subcommand)]
    Count(CountCmd),
    /// Verified witness searches.
    #[command(subcommand)]
    Witness(WitnessCmd),
    /// Rectangles with side ratio a/b.
    #[command(subcommand)]
    Rect(RectCmd),
    /// Flat tori given by r·cosθ and r².
    #[command(subcommand)]
    Torus(TorusCmd),
}

#[derive(Args, Debug)]
struct FormArg {
    /// Coefficients as a,b,c.
    #[arg(long, allow_hyphen_values = true)]
    form: Form,
}

#[derive(Subcommand, Debug)]
enum QformCmd {
    /// Reduce a form and print the change of variables.
    Reduce(FormArg),
    /// List reduced forms of a discriminant.
    Classgroup {
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
    },
    /// Compose two forms of the same discriminant.
    Compose {
        #[arg(long, allow_hyphen_values = true)]
        form: Form,
        #[arg(long, allow_hyphen_values = true)]
        with: Form,
    },
    /// Proper and improper automorphisms.
    Aut(FormArg),
    /// Whether the form's class is its own inverse.
    Ambiguous(FormArg),
}

#[derive(Subcommand, Debug)]
enum CountCmd {
    /// Solutions of F(x, y) = n, or of x² + b·xy + c·y² = z.
    Reps {
        #[arg(long, allow_hyphen_values = true, required_unless_present_all = ["b", "c", "z"], conflicts_with_all = ["b", "c", "z"])]
        form: Option<Form>,
        #[arg(long, requires = "form")]
        n: Option<u64>,
        #[arg(long = "b", allow_hyphen_values = true, requires_all = ["c", "z"])]
        b: Option<ExactValue>,
        #[arg(long = "c", allow_hyphen_values = true)]
        c: Option<ExactValue>,
        #[arg(long = "z", allow_hyphen_values = true)]
        z: Option<ExactValue>,
    },
    /// How often each count R(n) occurs for 1 ≤ n ≤ n-max.
    Histogram {
        #[arg(long, allow_hyphen_values = true)]
        form: Form,
        #[arg(long)]
        n_max: u64,
    },
    /// Points with x, y ≥ 1 on m·x² + n·y² = level.
    Quadrant {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        level: u64,
    },
}

#[derive(Subcommand, Debug)]
enum WitnessCmd {
    /// Smallest prime represented by the form, coprime to every --avoid value.
    Prime {
        #[arg(long, allow_hyphen_values = true)]
        form: Form,
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<u64>,
    },
    /// A prime p with exactly k positive solutions of m·x² + n·y² = p^(2k−1).
    TheoremQ {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Some n with exactly k representations up to proper automorphism.
    Surjectivity {
        #[arg(long, allow_hyphen_values = true)]
        form: Form,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Args, Debug)]
struct RatioArg {
    /// (a/b)² as an exact value, e.g. 5 or 2*sqrt(3).
    #[arg(long, allow_hyphen_values = true)]
    ratio_sq: ExactValue,
}

#[derive(Subcommand, Debug)]
enum RectCmd {
    Classify(RatioArg),
    /// Multiplicity of the eigenvalue with indices (m0, n0).
    Mult {
        #[command(flatten)]
        ratio: RatioArg,
        #[arg(long)]
        m0: u64,
        #[arg(long)]
        n0: u64,
    },
    /// An eigenvalue of multiplicity exactly k.
    Witness {
        #[command(flatten)]
        ratio: RatioArg,
        #[arg(long)]
        k: u64,
    },
}

#[derive(Args, Debug)]
struct TorusArg {
    /// r·cosθ as an exact value.
    #[arg(long, allow_hyphen_values = true)]
    rcos: ExactValue,
    /// r² as an exact value.
    #[arg(long, allow_hyphen_values = true)]
    rsq: ExactValue,
}

impl TorusArg {
    fn spec(&self) -> Result<TorusSpec, Error> {
        TorusSpec::new(self.rcos.clone(), self.rsq.clone())
    }
}

#[derive(Subcommand, Debug)]
enum TorusCmd {
    /// The primitive integral form of a rational torus.
    Form(TorusArg),
    Classify(TorusArg),
    /// Multiplicity of the eigenvalue through the dual lattice point (x0, y0).
    Mult {
        #[command(flatten)]
        torus: TorusArg,
        #[arg(long, allow_hyphen_values = true)]
        x0: i64,
        #[arg(long, allow_hyphen_values = true)]
        y0: i64,
    },
    /// Distinct multiplicities over levels ≤ n-max, or over generators in the box.
    Sample {
        #[command(flatten)]
        torus: TorusArg,
        #[arg(long)]
        n_max: Option<u64>,
    },
}

/// A command result in both renderings.
struct Output {
    json: Value,
    text: String,
}

fn out(json: Value, text: impl Into<String>) -> Output {
    Output {
        json,
        text: text.into(),
    }
}

fn to_json<T: serde::Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("records serialize")
}

fn map_json(m: &UnimodularMap) -> Value {
    json!([
        m.p.to_string(),
        m.q.to_string(),
        m.r.to_string(),
        m.s.to_string()
    ])
}

fn map_text(m: &UnimodularMap) -> String {
    format!("[{} {}; {} {}]", m.p, m.q, m.r, m.s)
}

fn pairs_text(sols: &[(i64, i64)]) -> String {
    sols.iter()
        .map(|(x, y)| format!("({x},{y})"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Value {
    Value::Array(
        xs.into_iter()
            .map(|x| Value::String(x.to_string()))
            .collect(),
    )
}

fn qform(cmd: QformCmd) -> Result<Output, Error> {
    Ok(match cmd {
        QformCmd::Reduce(FormArg { form }) => {
            let (red, map) = form.reduce()?;
            out(
                json!({"form": to_json(FormRecord::from(&form)), "reduced": to_json(FormRecord::from(&red)), "map": map_json(&map)}),
                format!("{red}\nmap {}", map_text(&map)),
            )
        }
        QformCmd::Classgroup { delta } => {
            let forms = class_group(delta)?;
            let recs: Vec<_> = forms.iter().map(|f| to_json(FormRecord::from(f))).collect();
            let text = forms
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join("\n");
            out(
                json!({"delta": delta.to_string(), "h": forms.len().to_string(), "forms": recs}),
                format!("h({delta}) = {}\n{text}", forms.len()),
            )
        }
        QformCmd::Compose { form, with } => {
            let result = form.compose(&with)?;
            out(
                json!({"left": to_json(FormRecord::from(&form)), "right": to_json(FormRecord::from(&with)), "result": to_json(FormRecord::from(&result))}),
                result.to_string(),
            )
        }
        QformCmd::Aut(FormArg { form }) => {
            let proper = form.proper_automorphisms()?;
            let improper = form.improper_automorphism()?;
            let mut text = format!("|Aut⁺| = {}\n", proper.len());
            for m in &proper {
                let _ = writeln!(text, "{}", map_text(m));
            }
            match &improper {
                Some(m) => {
                    let _ = write!(text, "improper {}", map_text(m));
                }
                None => text.push_str("improper none"),
            }
            out(
                json!({
                    "form": to_json(FormRecord::from(&form)),
                    "count": proper.len().to_string(),
                    "proper": proper.iter().map(map_json).collect::<Vec<_>>(),
                    "improper": improper.as_ref().map(map_json),
                }),
                text,
            )
        }
        QformCmd::Ambiguous(FormArg { form }) => {
            let amb = form.is_ambiguous()?;
            out(
                json!({"form": to_json(FormRecord::from(&form)), "ambiguous": amb}),
                amb.to_string(),
            )
        }
    })
}

fn count(cmd: CountCmd, max_radius: u64) -> Result<Output, Error> {
    Ok(match cmd {
        CountCmd::Reps { form, n, b, c, z } => {
            let set = match (form, b, c, z) {
                (Some(form), _, _, _) => {
                    let n = n.ok_or_else(|| Error::Parse("--n is required with --form".into()))?;
                    representations(&form, n)?
                }
                (None, Some(b), Some(c), Some(z)) => {
                    representations_irrational(&b, &c, &z, max_radius)?
                }
                _ => {
                    return Err(Error::Parse(
                        "give --form and --n, or --b, --c and --z".into(),
                    ))
                }
            };
            let mut text = format!("R = {}", set.count());
            if let (Some(rp), Some(rf)) = (set.r_plus, set.r_full) {
                let _ = write!(text, "\nr_plus = {rp}\nr_full = {rf}");
            }
            let _ = write!(text, "\n{}", pairs_text(&set.solutions));
            out(to_json(RepSetRecord::from(&set)), text)
        }
        CountCmd::Histogram { form, n_max } => {
            let hist = multiplicity_histogram(&form, n_max)?;
            let text = hist
                .iter()
                .map(|(k, v)| format!("{k}: {v}"))
                .collect::<Vec<_>>()
                .join("\n");
            out(
                json!({"form": to_json(FormRecord::from(&form)), "n_max": n_max.to_string(), "histogram": histogram_record(&hist)}),
                text,
            )
        }
        CountCmd::Quadrant { m, n, level } => {
            let q = first_quadrant_count(m, n, level)?;
            let sols: Vec<_> = q
                .solutions
                .iter()
                .map(|&(x, y)| (x as i64, y as i64))
                .collect();
            out(
                json!({
                    "m": m.to_string(), "n": n.to_string(), "level": level.to_string(),
                    "count": q.count.to_string(),
                    "solutions": sols.iter().map(|&(x, y)| strings([x, y])).collect::<Vec<_>>(),
                }),
                format!("{}\n{}", q.count, pairs_text(&sols)),
            )
        }
    })
}

fn witness_text(w: &specmult::MultiplicityWitness) -> String {
    let mut text = format!("value = {}\ncount = {}", w.value, w.target_count);
    if let Some(p) = w.prime {
        let _ = write!(text, "\nprime = {p}");
    }
    if let Some(b) = w.base {
        let _ = write!(text, "\nbase = {b}");
    }
    let _ = write!(
        text,
        "\ntrace = {}\n{}",
        w.trace_len,
        pairs_text(&w.solutions)
    );
    text
}

fn witness(cmd: WitnessCmd, bound: u64) -> Result<Output, Error> {
    Ok(match cmd {
        WitnessCmd::Prime { form, avoid } => {
            let w = find_represented_prime(&form, &avoid, bound)?;
            let text = format!("{} = F({}, {})", w.p, w.rep.0, w.rep.1);
            out(to_json(PrimeWitnessRecord::from(&w)), text)
        }
        WitnessCmd::TheoremQ { m, n, k } => {
            let w = theorem_q_witness(m, n, k, bound)?;
            out(to_json(WitnessRecord::from(&w)), witness_text(&w))
        }
        WitnessCmd::Surjectivity { form, k } => {
            let w = surjectivity_witness(&form, k, bound)?;
            out(to_json(WitnessRecord::from(&w)), witness_text(&w))
        }
    })
}

fn rect(cmd: RectCmd, bound: u64) -> Result<Output, Error> {
    Ok(match cmd {
        RectCmd::Classify(RatioArg { ratio_sq }) => {
            let set = rect_classify(&RectangleSpec::new(ratio_sq)?);
            out(to_json(ClassificationRecord::from(&set)), set.tag.label())
        }
        RectCmd::Mult { ratio, m0, n0 } => {
            let spec = RectangleSpec::new(ratio.ratio_sq)?;
            let level = rect_level(&spec, m0, n0)?;
            let mult = rect_multiplicity(&spec, m0, n0)?;
            out(
                json!({
                    "ratio_sq": spec.ratio_sq.to_string(), "m0": m0.to_string(), "n0": n0.to_string(),
                    "level": level.to_string(), "multiplicity": mult.to_string(),
                }),
                mult.to_string(),
            )
        }
        RectCmd::Witness { ratio, k } => {
            let spec = RectangleSpec::new(ratio.ratio_sq)?;
            let e = rect_witness(&spec, k, bound)?;
            out(
                json!({
                    "ratio_sq": spec.ratio_sq.to_string(),
                    "level": e.level.to_string(),
                    "scale": e.scale.to_string(),
                    "witness": to_json(WitnessRecord::from(&e.witness)),
                }),
                format!(
                    "λ = {}·π²/(b²·{})\n{}",
                    e.level,
                    e.scale,
                    witness_text(&e.witness)
                ),
            )
        }
    })
}

fn torus(cmd: TorusCmd, max_radius: u64) -> Result<Output, Error> {
    Ok(match cmd {
        TorusCmd::Form(t) => {
            let d = torus_form(&t.spec()?)?;
            let text = format!(
                "{}\nΔ = {}\nα = {}, β = {}, γ = {}, δ = {}, τ = {}",
                d.form, d.discriminant.delta, d.alpha, d.beta, d.gamma, d.delta, d.tau
            );
            out(to_json(TorusFormRecord::from(&d)), text)
        }
        TorusCmd::Classify(t) => {
            let set = torus_classify(&t.spec()?)?;
            let mut text = set.tag.label().to_owned();
            if let Some(d) = set.delta {
                let _ = write!(text, " (Δ = {d})");
            }
            out(to_json(ClassificationRecord::from(&set)), text)
        }
        TorusCmd::Mult { torus, x0, y0 } => {
            let spec = torus.spec()?;
            let sols = torus_level_set(&spec, x0, y0, max_radius)?;
            out(
                json!({
                    "rcos": spec.rcos.to_string(), "rsq": spec.rsq.to_string(),
                    "generator": strings([x0, y0]),
                    "value": spec.eval(x0, y0)?.to_string(),
                    "multiplicity": sols.len().to_string(),
                    "solutions": sols.iter().map(|&(x, y)| strings([x, y])).collect::<Vec<_>>(),
                }),
                format!("{}\n{}", sols.len(), pairs_text(&sols)),
            )
        }
        TorusCmd::Sample { torus, n_max } => {
            let spec = torus.spec()?;
            let (range, kind, limit) = match n_max {
                Some(n) => (SampleRange::Levels(n), "levels", n),
                None => (SampleRange::Box(max_radius), "box", max_radius),
            };
            let seen = multiplicity_set_sample(&spec, range)?;
            let text = seen
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ");
            out(
                json!({
                    "rcos": spec.rcos.to_string(), "rsq": spec.rsq.to_string(),
                    "range": kind, "limit": limit.to_string(),
                    "observed": strings(&seen),
                }),
                text,
            )
        }
    })
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.command {
        Command::Qform(c) => qform(c),
        Command::Count(c) => count(c, cli.box_),
        Command::Witness(c) => witness(c, cli.bound),
        Command::Rect(c) => rect(c, cli.bound),
        Command::Torus(c) => torus(c, cli.box_),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Exhausted { .. } | Error::BoxExceeded { .. } => 2,
        _ => 1,
    }
}

fn report_error(json: bool, message: String, code: u8) -> ExitCode {
    if json {
        println!(
            "{}",
            serde_json::to_string(&ErrorRecord {
                error: message.clone()
            })
            .unwrap()
        );
    }
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let json = std::env::args().any(|a| a == "--json");
            let message = e.render().to_string();
            let first = message
                .lines()
                .next()
                .unwrap_or_default()
                .trim_start_matches("error: ");
            if !json {
                eprint!("{message}");
                return ExitCode::from(1);
            }
            return report_error(true, first.to_owned(), 1);
        }
    };
    let json = cli.json;
    match run(cli) {
        Ok(o) if json => {
            println!("{}", o.json);
            ExitCode::SUCCESS
        }
        Ok(o) => {
            println!("{}", o.text);
            ExitCode::SUCCESS
        }
        Err(e) => report_error(json, e.to_string(), exit_code(&e)),
    }
}
