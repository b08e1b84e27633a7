//! `picard` — command-line driver for the Picard modular group library.
//!
//! Every subcommand prints a single JSON object (default) or a short text
//! report, and exits 0 on success/pass, 1 on a failed check or a domain
//! error, 2 on malformed input. JSON output is deterministic: object keys
//! are sorted and floats are rounded to 12 significant digits, so the same
//! input and configuration always produce byte-identical output.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::json;

use picard::elliptic::minimal_generating_set;
use picard::error::{Error, Result};
use picard::exhaustion::{
    argmax_parabolics, enumerate_isotropic, f_exhaustion, first_contact_with_budget,
    is_strongly_admissible, named_family, pairing_norm, FamilyName, ParabolicFamily,
};
use picard::hermitian::{generator, parse_word, GMatrix, GeneratorName};
use picard::horoball::{act, in_siegel_strip, siegel_reduce, HoroPoint};
use picard::subgroups::{closure, SubgroupClosure, DEFAULT_CLOSURE_CAP};
use picard::{classify_point_with_bound, fixed_set, point_stabilizer, round12, verify_table1};

#[derive(Parser)]
#[command(
    name = "picard",
    version,
    about = "The Picard modular group SU(2,1; Z[i]): reduction, exhaustion functions, \
             elliptic point classification",
    after_help = "Points are \"y,beta,r\" with beta in a+bi form (e.g. \"2,0,0\", \
                  \"1,i,0.5\") or JSON {\"y\":..,\"beta\":[re,im],\"r\":..}. Matrices are \
                  nine Gaussian integers \"a,b,c;d,e,f;g,h,k\"; generator arguments also \
                  accept words over the catalog (w, sigma, sigmacheck, tau, eps, xi) such \
                  as \"eps*w\", \"xi^2\", \"sigma*eps*w*sigma~\"."
)]
struct Cli {
    #[command(flatten)]
    overrides: ConfigOverrides,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ConfigOverrides {
    /// Flat key=value file overriding the run configuration
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Numerical tolerance for membership and verification checks
    #[arg(long, global = true, value_name = "T")]
    tolerance: Option<f64>,
    /// Entry norm bound for the stabilizer search
    #[arg(long, global = true, value_name = "B")]
    entry_norm_bound: Option<i64>,
    /// Evaluation budget for the first-contact optimizer
    #[arg(long, global = true, value_name = "N")]
    optimizer_budget: Option<u64>,
    /// Output format
    #[arg(long, global = true, value_parser = ["json", "text"])]
    output: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the six catalog generators for membership in Gamma
    #[command(name = "verify-generators")]
    VerifyGenerators,
    /// Compute the closure of generator words and report its structure
    #[command(name = "closure")]
    Closure {
        #[arg(required = true, value_name = "GEN")]
        gens: Vec<String>,
    },
    /// Identify the isomorphism label of the group generated by words
    #[command(name = "identify")]
    Identify {
        #[arg(required = true, value_name = "GEN")]
        gens: Vec<String>,
    },
    /// Apply a matrix (or word) to a point in horospherical coordinates
    #[command(name = "act")]
    Act { matrix: String, point: String },
    /// Reduce a point into the Siegel strip, reporting the word used
    #[command(name = "reduce")]
    Reduce { point: String },
    /// Exhaustion function values at a point for all cusps up to a height
    #[command(name = "f-values")]
    FValues {
        point: String,
        /// Entry-norm height bound for the isotropic vectors
        #[arg(long, default_value_t = 4)]
        height: i64,
    },
    /// Test whether a point lies on the spine (two or more maximal cusps)
    #[command(name = "spine-test")]
    SpineTest { point: String },
    /// Test a family file for strong admissibility
    #[command(name = "admissible")]
    Admissible { family_file: PathBuf },
    /// Find the first-contact point of a named family or a family file
    #[command(name = "first-contact")]
    FirstContact {
        /// One of I2_1, I3_1, I3_2, I2_2, I8, or a path to a family file
        family: String,
    },
    /// List canonical primitive isotropic vectors up to an entry-norm height
    #[command(name = "enumerate-isotropic")]
    EnumerateIsotropic { height: i64 },
    /// Compute the fixed set in D of the group generated by words
    #[command(name = "fixed-set")]
    FixedSet {
        #[arg(required = true, value_name = "GEN")]
        gens: Vec<String>,
    },
    /// Compute the stabilizer of a point by bounded search
    #[command(name = "stabilizer")]
    Stabilizer { point: String },
    /// Classify the isotropy class of a point (Gamma_1..Gamma_9 or trivial)
    #[command(name = "classify")]
    Classify { point: String },
    /// Rebuild all thirteen Table 1 stabilizers and check order and label
    #[command(name = "verify-table1")]
    VerifyTable1,
    /// Run the full verification suite and print a pass/fail matrix
    #[command(name = "verify-propositions")]
    VerifyPropositions,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum OutputMode {
    Json,
    Text,
}

impl OutputMode {
    fn parse(s: &str) -> Result<OutputMode> {
        match s {
            "json" => Ok(OutputMode::Json),
            "text" => Ok(OutputMode::Text),
            other => Err(Error::Invalid(format!(
                "output must be \"json\" or \"text\", got {other:?}"
            ))),
        }
    }
}

struct RunConfig {
    tolerance: f64,
    entry_norm_bound: i64,
    optimizer_budget: u64,
    output: OutputMode,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            tolerance: 1e-9,
            entry_norm_bound: 8,
            optimizer_budget: 100_000,
            output: OutputMode::Json,
        }
    }
}

impl RunConfig {
    /// Defaults, then the config file, then explicit flags.
    fn build(ov: &ConfigOverrides) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &ov.config {
            cfg.apply_file(path)?;
        }
        if let Some(t) = ov.tolerance {
            cfg.tolerance = t;
        }
        if let Some(b) = ov.entry_norm_bound {
            cfg.entry_norm_bound = b;
        }
        if let Some(n) = ov.optimizer_budget {
            cfg.optimizer_budget = n;
        }
        if let Some(o) = &ov.output {
            cfg.output = OutputMode::parse(o)?;
        }
        if !cfg.tolerance.is_finite() || cfg.tolerance <= 0.0 {
            return Err(Error::Invalid(format!(
                "tolerance must be positive, got {}",
                cfg.tolerance
            )));
        }
        if cfg.entry_norm_bound < 1 || cfg.optimizer_budget < 1 {
            return Err(Error::Invalid("bounds must be >= 1".into()));
        }
        Ok(cfg)
    }

    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read config {}: {e}", path.display())))?;
        for (idx, raw) in text.lines().enumerate() {
            let at = |msg: String| Error::parse(raw, 0, format!("{}:{}: {msg}", path.display(), idx + 1));
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| at("expected key=value".into()))?;
            let value = value.trim();
            match key.trim() {
                "tolerance" => {
                    self.tolerance = value
                        .parse()
                        .map_err(|_| at(format!("bad tolerance {value:?}")))?;
                }
                "entry_norm_bound" => {
                    self.entry_norm_bound = value
                        .parse()
                        .map_err(|_| at(format!("bad entry_norm_bound {value:?}")))?;
                }
                "optimizer_budget" => {
                    self.optimizer_budget = value
                        .parse()
                        .map_err(|_| at(format!("bad optimizer_budget {value:?}")))?;
                }
                "output" => self.output = OutputMode::parse(value).map_err(|e| at(e.to_string()))?,
                other => return Err(at(format!("unknown key {other:?}"))),
            }
        }
        Ok(())
    }
}

/// One subcommand's result: the JSON report, the text rendering, and
/// whether the run counts as a pass for the exit code.
struct Outcome {
    json: serde_json::Value,
    text: String,
    pass: bool,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let cfg = match RunConfig::build(&cli.overrides) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match dispatch(&cli.command, &cfg) {
        Ok(out) => {
            match cfg.output {
                OutputMode::Json => println!("{:#}", out.json),
                OutputMode::Text => println!("{}", out.text.trim_end()),
            }
            i32::from(!out.pass)
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Invalid(_) => 2,
                _ => 1,
            }
        }
    }
}

fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    match cmd {
        Command::VerifyGenerators => cmd_verify_generators(),
        Command::Closure { gens } => cmd_closure(gens),
        Command::Identify { gens } => cmd_identify(gens),
        Command::Act { matrix, point } => cmd_act(matrix, point),
        Command::Reduce { point } => cmd_reduce(point, cfg),
        Command::FValues { point, height } => cmd_f_values(point, *height),
        Command::SpineTest { point } => cmd_spine_test(point, cfg),
        Command::Admissible { family_file } => cmd_admissible(family_file),
        Command::FirstContact { family } => cmd_first_contact(family, cfg),
        Command::EnumerateIsotropic { height } => cmd_enumerate_isotropic(*height),
        Command::FixedSet { gens } => cmd_fixed_set(gens),
        Command::Stabilizer { point } => cmd_stabilizer(point, cfg),
        Command::Classify { point } => cmd_classify(point, cfg),
        Command::VerifyTable1 => cmd_verify_table1(),
        Command::VerifyPropositions => cmd_verify_propositions(),
    }
}

fn parse_gens(words: &[String]) -> Result<Vec<GMatrix>> {
    words.iter().map(|w| parse_word(w)).collect()
}

fn closure_of(words: &[String]) -> Result<SubgroupClosure> {
    closure(&parse_gens(words)?, DEFAULT_CLOSURE_CAP)
}

fn cx_text(c: Complex64) -> String {
    let re = round12(c.re);
    let im = round12(c.im);
    if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn point_text(z: &HoroPoint) -> String {
    format!("({}, {}, {})", round12(z.y), cx_text(z.beta), round12(z.r))
}

fn cmd_verify_generators() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut members = 0usize;
    for name in GeneratorName::ALL {
        let g = generator(name);
        let det = g.det();
        let member = g.is_gamma_member();
        members += usize::from(member);
        rows.push(json!({
            "det": det.to_string(),
            "member": member,
            "name": name.as_str(),
        }));
        let _ = writeln!(
            text,
            "{:10} det = {:2}  {}",
            name.as_str(),
            det.to_string(),
            if member { "member" } else { "NOT a member" }
        );
    }
    let pass = members == GeneratorName::ALL.len();
    let _ = writeln!(text, "{members}/{} members of SU(2,1; Z[i])", GeneratorName::ALL.len());
    Ok(Outcome {
        json: json!({
            "generators": rows,
            "members": members,
            "pass": pass,
        }),
        text,
        pass,
    })
}

fn cmd_closure(gens: &[String]) -> Result<Outcome> {
    let s = closure_of(gens)?;
    let report = s.report();
    let text = format!(
        "order {}, label {}, center order {}",
        report["order"], s.identify(), report["center_order"]
    );
    Ok(Outcome {
        json: report,
        text,
        pass: true,
    })
}

fn cmd_identify(gens: &[String]) -> Result<Outcome> {
    let s = closure_of(gens)?;
    let label = s.identify();
    Ok(Outcome {
        json: json!({ "label": label.to_string(), "order": s.order() }),
        text: format!("{label} (order {})", s.order()),
        pass: true,
    })
}

fn cmd_act(matrix: &str, point: &str) -> Result<Outcome> {
    let g = parse_word(matrix)?;
    let z = HoroPoint::parse(point)?;
    let image = act(&g, &z)?;
    Ok(Outcome {
        json: json!({
            "image": image.to_json(),
            "matrix": g.to_string(),
            "point": z.to_json(),
        }),
        text: format!("{} -> {}", point_text(&z), point_text(&image)),
        pass: true,
    })
}

fn cmd_reduce(point: &str, cfg: &RunConfig) -> Result<Outcome> {
    let z = HoroPoint::parse(point)?;
    let (reduced, word) = siegel_reduce(&z);
    // The returned word must land in the strip and replay to the same point.
    let replay = act(&word.evaluate(), &z)?;
    let pass = in_siegel_strip(&reduced, cfg.tolerance) && replay.dist(&reduced) <= cfg.tolerance;
    Ok(Outcome {
        json: json!({
            "in_strip": pass,
            "point": z.to_json(),
            "reduced": reduced.to_json(),
            "word": word.to_string(),
        }),
        text: format!(
            "{} -> {} via \"{}\"",
            point_text(&z),
            point_text(&reduced),
            word
        ),
        pass,
    })
}

fn cmd_f_values(point: &str, height: i64) -> Result<Outcome> {
    let z = HoroPoint::parse(point)?;
    let reps = enumerate_isotropic(height)?;
    let mut values = BTreeMap::new();
    let mut text = String::new();
    for p in &reps {
        let f = round12(f_exhaustion(p, &z));
        let _ = writeln!(text, "{p}  {f}");
        values.insert(p.to_string(), f);
    }
    let _ = writeln!(text, "{} cusps of height <= {height}", reps.len());
    Ok(Outcome {
        json: json!({
            "height": height,
            "point": z.to_json(),
            "values": values,
        }),
        text,
        pass: true,
    })
}

fn cmd_spine_test(point: &str, cfg: &RunConfig) -> Result<Outcome> {
    let z = HoroPoint::parse(point)?;
    let fam = argmax_parabolics(&z, cfg.tolerance)?;
    let in_spine = fam.len() >= 2;
    let max_f = fam
        .reps()
        .iter()
        .map(|p| f_exhaustion(p, &z))
        .fold(f64::NEG_INFINITY, f64::max);
    let argmax: Vec<String> = fam.reps().iter().map(|p| p.to_string()).collect();
    Ok(Outcome {
        json: json!({
            "argmax": argmax,
            "in_spine": in_spine,
            "max_f": round12(max_f),
            "point": z.to_json(),
        }),
        text: format!(
            "{}: in_spine = {in_spine}, max f = {} at {}",
            point_text(&z),
            round12(max_f),
            argmax.join("  ")
        ),
        pass: in_spine,
    })
}

fn read_family(path: &Path) -> Result<ParabolicFamily> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read family file {}: {e}", path.display())))?;
    ParabolicFamily::parse_file_contents(&text)
}

fn cmd_admissible(path: &Path) -> Result<Outcome> {
    let fam = read_family(path)?;
    let admissible = is_strongly_admissible(&fam);
    let size = fam.len();
    let max_norm = fam
        .reps()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| fam.reps()[i + 1..].iter().map(move |q| pairing_norm(p, q)))
        .max()
        .and_then(|n| n.to_u64())
        .unwrap_or(0);
    let clause = if !admissible {
        serde_json::Value::Null
    } else if size <= 5 {
        json!(1)
    } else {
        json!(2)
    };
    let vectors: Vec<String> = fam.reps().iter().map(|p| p.to_string()).collect();
    Ok(Outcome {
        json: json!({
            "admissible": admissible,
            "clause": clause,
            "family": vectors,
            "max_pairing_norm": max_norm,
            "size": size,
        }),
        text: format!(
            "{} vectors, max pairwise norm {max_norm}: {}",
            size,
            if admissible {
                format!("strongly admissible (clause {clause})")
            } else {
                "not strongly admissible".into()
            }
        ),
        pass: admissible,
    })
}

fn cmd_first_contact(family: &str, cfg: &RunConfig) -> Result<Outcome> {
    let (fam, name) = match FamilyName::parse(family) {
        Some(n) => (named_family(n), Some(n.as_str())),
        None => {
            let path = Path::new(family);
            if !path.exists() {
                return Err(Error::Invalid(format!(
                    "{family:?} is neither a named family (I2_1, I3_1, I3_2, I2_2, I8) \
                     nor a readable file"
                )));
            }
            (read_family(path)?, None)
        }
    };
    let init = HoroPoint::new(1.0, Complex64::new(0.0, 0.0), 0.0);
    let z = first_contact_with_budget(&fam, &init, cfg.optimizer_budget)?;
    let mut values = BTreeMap::new();
    for p in fam.reps() {
        values.insert(p.to_string(), round12(f_exhaustion(p, &z)));
    }
    let vectors: Vec<String> = fam.reps().iter().map(|p| p.to_string()).collect();
    let mut json = json!({
        "family": vectors,
        "point": z.to_json(),
        "values": values,
    });
    if let Some(n) = name {
        json["name"] = json!(n);
    }
    let f = values.values().next().copied().unwrap_or(f64::NAN);
    Ok(Outcome {
        json,
        text: format!(
            "{}: first contact at {} with f = {f}",
            name.unwrap_or(family),
            point_text(&z)
        ),
        pass: true,
    })
}

fn cmd_enumerate_isotropic(height: i64) -> Result<Outcome> {
    let reps = enumerate_isotropic(height)?;
    let vectors: Vec<String> = reps.iter().map(|p| p.to_string()).collect();
    let mut text = vectors.join("\n");
    let _ = write!(text, "\n{} vectors of height <= {height}", reps.len());
    Ok(Outcome {
        json: json!({
            "count": reps.len(),
            "height": height,
            "vectors": vectors,
        }),
        text,
        pass: true,
    })
}

fn cmd_fixed_set(gens: &[String]) -> Result<Outcome> {
    let s = closure_of(gens)?;
    let fixed = fixed_set(&s)?;
    let text = match fixed.point {
        Some(p) => format!("order {}: fixed point {}", s.order(), point_text(&p)),
        None => format!("order {}: fixed set of kind {}", s.order(), fixed.kind.as_str()),
    };
    Ok(Outcome {
        json: json!({
            "fixed_set": fixed.to_json(),
            "generators": gens,
            "order": s.order(),
        }),
        text,
        pass: true,
    })
}

fn cmd_stabilizer(point: &str, cfg: &RunConfig) -> Result<Outcome> {
    let z = HoroPoint::parse(point)?;
    let s = point_stabilizer(&z, cfg.entry_norm_bound)?;
    let fp = s.fingerprint();
    let label = s.identify();
    let gens: Vec<String> = minimal_generating_set(&s)
        .iter()
        .map(|g| g.to_string())
        .collect();
    Ok(Outcome {
        json: json!({
            "center_order": fp.center_order,
            "generators": gens,
            "label": label.to_string(),
            "order": fp.order,
            "order_statistics": fp.order_statistics
                .iter()
                .map(|(k, v)| (k.to_string(), *v))
                .collect::<BTreeMap<String, usize>>(),
            "point": z.to_json(),
        }),
        text: format!(
            "stabilizer of {} within entry norm {}: order {}, label {label}",
            point_text(&z),
            cfg.entry_norm_bound,
            fp.order
        ),
        pass: true,
    })
}

fn cmd_classify(point: &str, cfg: &RunConfig) -> Result<Outcome> {
    let z = HoroPoint::parse(point)?;
    let c = classify_point_with_bound(&z, cfg.entry_norm_bound)?;
    let text = format!(
        "{}: class {}, stabilizer order {} ({}), reduced to {} via \"{}\"",
        point_text(&z),
        c.class.label,
        c.stabilizer.order(),
        c.class.structure,
        point_text(&c.reduced),
        c.word
    );
    Ok(Outcome {
        json: c.to_json(),
        text,
        pass: true,
    })
}

fn cmd_verify_table1() -> Result<Outcome> {
    let outcomes = verify_table1()?;
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut pass = true;
    for (i, o) in outcomes.iter().enumerate() {
        pass &= o.pass;
        rows.push(json!({
            "cell": o.row.cell,
            "dimension": o.row.dimension,
            "expected_label": o.row.expected_label.to_string(),
            "expected_order": o.row.expected_order,
            "label": o.label.to_string(),
            "order": o.order,
            "pass": o.pass,
        }));
        let _ = writeln!(
            text,
            "row {:2} cell {:14} order {:3} label {:6} {}",
            i + 1,
            o.row.cell,
            o.order,
            o.label.to_string(),
            if o.pass { "ok" } else { "MISMATCH" }
        );
    }
    let _ = writeln!(text, "{}/13 rows match", outcomes.iter().filter(|o| o.pass).count());
    Ok(Outcome {
        json: json!({ "pass": pass, "rows": rows }),
        text,
        pass,
    })
}

fn cmd_verify_propositions() -> Result<Outcome> {
    let reports = picard::verify::run_all();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut pass = true;
    for r in &reports {
        pass &= r.pass;
        rows.push(json!({
            "detail": r.detail,
            "name": r.name,
            "pass": r.pass,
        }));
        let _ = writeln!(
            text,
            "[{}] {:32} {}",
            if r.pass { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    let _ = writeln!(
        text,
        "{}/{} checks passed",
        reports.iter().filter(|r| r.pass).count(),
        reports.len()
    );
    Ok(Outcome {
        json: json!({ "checks": rows, "pass": pass }),
        text,
        pass,
    })
}
