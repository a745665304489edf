use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use ujgrade::classify::{census_line, count_elementary, count_mt, dimension_profile, enumerate_classes};
use ujgrade::gradfile::{dense, read_grading, sparse, write_grading};
use ujgrade::grading::standard_grading;
use ujgrade::identities::{is_jordan_good, separating_identity, tau_orbit, HoldsIn, IdentityChecker};
use ujgrade::syntax::{format_sequence, parse_group, parse_label, parse_sequence, parse_term};
use ujgrade::{canonicalize, Automorphism, Error, Grading, GradingLabel, Result};

#[derive(Parser)]
#[command(name = "ujgrade", version, about = "Group gradings on upper triangular Jordan algebras")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    machine: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Size {
    /// Grading group, e.g. Z4 or Z2xZ2.
    #[arg(long)]
    group: String,
    /// Matrix size.
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List one representative per isomorphism class of gradings.
    Enumerate {
        #[command(flatten)]
        size: Size,
        /// Worker threads.
        #[arg(long, default_value_t = 4)]
        jobs: usize,
    },
    /// Check that a grading file describes a grading.
    Verify {
        file: PathBuf,
        /// Output of `normalize --machine` to check against the file.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Find the canonical label of a grading and an isomorphism onto it.
    Normalize { file: PathBuf },
    /// Decide whether a term is a graded identity.
    CheckIdentity {
        /// Grading file; alternatively give --group, --n and --label.
        #[arg(long, conflicts_with_all = ["group", "n", "label"])]
        file: Option<PathBuf>,
        #[arg(long, requires_all = ["n", "label"])]
        group: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        label: Option<String>,
        /// Term, e.g. "( x1:1 o x2:1 )".
        #[arg(long)]
        term: String,
    },
    /// Decide whether mu is Jordan good for the elementary grading eta.
    GoodSeq {
        #[command(flatten)]
        size: Size,
        #[arg(long, allow_hyphen_values = true)]
        eta: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// Produce a graded identity holding in exactly one of two gradings.
    Separate {
        #[command(flatten)]
        size: Size,
        first: String,
        second: String,
    },
    /// Write the standard grading of a label as a grading file.
    Standard {
        #[command(flatten)]
        size: Size,
        #[arg(long)]
        label: String,
        /// Scramble by a random automorphism drawn from this seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Include the mirror involution in the scrambling automorphism.
        #[arg(long, requires = "seed")]
        flip: bool,
    },
}

enum Outcome {
    Ok(String),
    /// Well-formed input that fails a check.
    Rejected(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok(out)) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Rejected(out)) => {
            print!("{out}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error[{}]: {e}", e.code());
            ExitCode::from(if e.is_parse() { 3 } else { 2 })
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn lines(v: Value) -> String {
    format!("{v}\n")
}

fn run(cli: &Cli) -> Result<Outcome> {
    let machine = cli.machine;
    match &cli.command {
        Command::Enumerate { size, jobs } => enumerate(size, *jobs, machine),
        Command::Verify { file, certificate } => verify(file, certificate.as_deref(), machine),
        Command::Normalize { file } => normalize(file, machine),
        Command::CheckIdentity {
            file,
            group,
            n,
            label,
            term,
        } => {
            let grading = match (file, group, n, label) {
                (Some(f), _, _, _) => read_grading(&read(f)?)?,
                (None, Some(g), Some(n), Some(l)) => {
                    let group = parse_group(g)?;
                    standard_grading(&group, *n, &parse_label(&group, l)?)?
                }
                _ => return Err(Error::Parse("give --file or --group, --n and --label".into())),
            };
            check_identity(&grading, term, machine)
        }
        Command::GoodSeq { size, eta, mu } => good_seq(size, eta, mu, machine),
        Command::Separate { size, first, second } => separate(size, first, second, machine),
        Command::Standard {
            size,
            label,
            seed,
            flip,
        } => standard(size, label, *seed, *flip),
    }
}

fn enumerate(size: &Size, jobs: usize, machine: bool) -> Result<Outcome> {
    let group = parse_group(&size.group)?;
    if size.n == 0 {
        return Err(Error::Parse("n must be at least 1".into()));
    }
    let n = size.n;
    let classes = enumerate_classes(&group, n);
    let chunk = classes.len().div_ceil(jobs.max(1)).max(1);
    let rendered: Vec<Result<String>> = thread::scope(|s| {
        let handles: Vec<_> = classes
            .chunks(chunk)
            .map(|part| {
                let group = &group;
                s.spawn(move || {
                    part.iter()
                        .map(|c| {
                            if machine {
                                let grading = standard_grading(group, n, c.label())?;
                                let dims: serde_json::Map<String, Value> = dimension_profile(&grading)
                                    .into_iter()
                                    .map(|(g, d)| (g.to_string(), json!(d)))
                                    .collect();
                                let kind = if c.label().is_elementary() { "elementary" } else { "mt" };
                                Ok(json!({"kind": kind, "label": c.to_string(), "dims": dims}).to_string())
                            } else {
                                census_line(group, n, c)
                            }
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    let mut out = String::new();
    let elementary = count_elementary(group.order(), n);
    let mt = count_mt(&group, n);
    if !machine {
        out.push_str(&format!(
            "# {group} n={n}: {} classes ({elementary} elementary, {mt} mt)\n",
            classes.len()
        ));
    }
    for line in rendered {
        out.push_str(&line?);
        out.push('\n');
    }
    Ok(Outcome::Ok(out))
}

fn verify(file: &Path, certificate: Option<&Path>, machine: bool) -> Result<Outcome> {
    let grading = match read_grading(&read(file)?) {
        Ok(g) => g,
        Err(Error::NotAGrading(v)) => {
            let out = if machine {
                lines(json!({"verification": "fail", "code": v.code(), "reason": v.to_string()}))
            } else {
                format!("fail {}: {v}\n", v.code())
            };
            return Ok(Outcome::Rejected(out));
        }
        Err(e) => return Err(e),
    };
    let mut certified = None;
    if let Some(path) = certificate {
        certified = Some(check_certificate(&grading, &read(path)?)?);
    }
    let dims: Vec<String> = dimension_profile(&grading)
        .into_iter()
        .map(|(g, d)| format!("{g}:{d}"))
        .collect();
    let pass = certified.unwrap_or(true);
    let out = if machine {
        lines(json!({
            "verification": if pass { "pass" } else { "fail" },
            "dims": dims,
            "certificate": certified,
        }))
    } else {
        let mut s = format!("grading {} on UJ_{}: {}\n", grading.group(), grading.size(), dims.join(" "));
        if let Some(c) = certified {
            s.push_str(if c { "certificate pass\n" } else { "certificate fail\n" });
        }
        s.push_str(if pass { "pass\n" } else { "fail\n" });
        s
    };
    Ok(if pass { Outcome::Ok(out) } else { Outcome::Rejected(out) })
}

/// Whether a normalization certificate maps `grading` onto the standard
/// grading of its label.
fn check_certificate(grading: &Grading, text: &str) -> Result<bool> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("certificate: {e}")))?;
    let label = v["label"]
        .as_str()
        .ok_or_else(|| Error::Parse("certificate has no label".into()))?;
    let flip = v["flip"]
        .as_bool()
        .ok_or_else(|| Error::Parse("certificate has no flip".into()))?;
    let entries: Vec<(usize, usize, String)> = serde_json::from_value(v["p"].clone())
        .map_err(|e| Error::Parse(format!("certificate matrix: {e}")))?;
    let n = grading.size();
    let p = dense(n, &entries)?;
    let phi = Automorphism::new(p, flip)?;
    let target = standard_grading(grading.group(), n, &parse_label(grading.group(), label)?)?;
    Ok(grading.transform(&phi) == target)
}

fn normalize(file: &Path, machine: bool) -> Result<Outcome> {
    let grading = read_grading(&read(file)?)?;
    let (label, iso) = canonicalize(&grading)?;
    let target = standard_grading(grading.group(), grading.size(), label.label())?;
    let pass = iso.validate(&grading, &target);
    let p = sparse(iso.matrix());
    let out = if machine {
        lines(json!({
            "label": label.to_string(),
            "p": p,
            "flip": iso.flip(),
            "verification": if pass { "pass" } else { "fail" },
        }))
    } else {
        let entries: Vec<String> = p.iter().map(|(i, j, v)| format!("({i},{j})={v}")).collect();
        format!(
            "label {label}\nflip {}\np {}\nverification {}\n",
            iso.flip(),
            entries.join(" "),
            if pass { "pass" } else { "fail" }
        )
    };
    Ok(if pass { Outcome::Ok(out) } else { Outcome::Rejected(out) })
}

fn check_identity(grading: &Grading, term: &str, machine: bool) -> Result<Outcome> {
    let term = parse_term(grading.group(), term)?;
    let holds = IdentityChecker::new(grading).check(&term)?;
    let out = if machine {
        lines(json!({"term": term.to_string(), "identity": holds}))
    } else {
        format!("{}\n", if holds { "identity" } else { "not an identity" })
    };
    Ok(Outcome::Ok(out))
}

fn good_seq(size: &Size, eta: &str, mu: &str, machine: bool) -> Result<Outcome> {
    let group = parse_group(&size.group)?;
    let eta = parse_sequence(&group, eta)?;
    let mu = parse_sequence(&group, mu)?;
    if eta.len() + 1 != size.n {
        return Err(Error::LengthMismatch {
            expected: size.n - 1,
            found: eta.len(),
        });
    }
    let good = is_jordan_good(&group, &eta, &mu);
    let full_orbit = mu.len() == eta.len() && tau_orbit(&eta).contains(&mu);
    let out = if machine {
        lines(json!({
            "eta": format_sequence(&eta),
            "mu": format_sequence(&mu),
            "good": good,
            "tau_image": full_orbit,
        }))
    } else {
        format!("{}\n", if good { "good" } else { "bad" })
    };
    Ok(Outcome::Ok(out))
}

fn separate(size: &Size, first: &str, second: &str, machine: bool) -> Result<Outcome> {
    let group = parse_group(&size.group)?;
    let a: GradingLabel = parse_label(&group, first)?;
    let b: GradingLabel = parse_label(&group, second)?;
    let s = separating_identity(&group, size.n, &a, &b)?;
    let holds = match s.holds_in {
        HoldsIn::First => first,
        HoldsIn::Second => second,
    };
    let fails = if holds == first { second } else { first };
    let out = if machine {
        lines(json!({
            "term": s.term.to_string(),
            "identity_of": holds.trim(),
            "not_identity_of": fails.trim(),
            "method": s.method.to_string(),
        }))
    } else {
        format!(
            "term {}\nidentity of {}\nnot an identity of {}\nmethod {}\n",
            s.term,
            holds.trim(),
            fails.trim(),
            s.method
        )
    };
    Ok(Outcome::Ok(out))
}

fn standard(size: &Size, label: &str, seed: Option<u64>, flip: bool) -> Result<Outcome> {
    let group = parse_group(&size.group)?;
    let label = parse_label(&group, label)?;
    let mut grading = standard_grading(&group, size.n, &label)?;
    if let Some(seed) = seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        grading = grading.transform(&Automorphism::random(size.n, flip, &mut rng));
    }
    Ok(Outcome::Ok(format!("{}\n", write_grading(&grading))))
}
