//! Command-line surface: `solve`, `verify`, `analyze`, `repr`, and `fol`
//! subcommands over the library, with ICCMA-flavored task names.
//!
//! Exit codes: 0 success/YES, 1 NO/unrepresentable, 2 usage error, 3 cap
//! exceeded, 4 internal invariant violation. All enumeration output is in
//! canonical order and byte-stable across runs.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::af::{Aaf, ArgSet, ExtensionFamily, Params};
use crate::semantics::{enumerate_with_cap, SemanticsSpec, ENUM_CAP};
use crate::{analysis, fixpoint, fol, kernel, representation};
use crate::{Error, Result};

#[derive(Parser)]
#[command(name = "gradarg", version, about = "Graded argumentation framework solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum InputFormat {
    Apx,
    Tgf,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum Task {
    Ee,
    Se,
    Dc,
    Ds,
}

#[derive(Args)]
struct FrameArgs {
    /// Path to the input frame.
    #[arg(long)]
    input: String,
    /// Input file format.
    #[arg(long, value_enum, default_value = "apx")]
    format: InputFormat,
}

#[derive(Args)]
struct GradeArgs {
    /// Neutrality grade ℓ.
    #[arg(long, default_value = "1")]
    l: u32,
    /// Defense grade m (counter-attackers required).
    #[arg(long, default_value = "1")]
    m: u32,
    /// Defense grade n (attackers to counter).
    #[arg(long, default_value = "1")]
    n: u32,
    /// Range grade η.
    #[arg(long, default_value = "1")]
    eta: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate or query extensions of a frame under a semantics.
    Solve {
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        grades: GradeArgs,
        /// Semantics text, e.g. "co", "pr", "interval(ad,co,stb)".
        #[arg(long)]
        spec: String,
        /// EE (enumerate), SE (some extension), DC/DS (credulous/skeptical
        /// acceptance of --arg).
        #[arg(long, value_enum, default_value = "ee")]
        task: Task,
        /// Argument name for DC/DS.
        #[arg(long)]
        arg: Option<String>,
        /// Enumeration cap on the argument count.
        #[arg(long, default_value_t = ENUM_CAP)]
        cap: usize,
        /// Worker count; partitioning is deterministic, so output does not
        /// depend on it.
        #[arg(long, default_value = "1")]
        jobs: usize,
        #[arg(long, value_enum, default_value = "text")]
        out: OutputFormat,
    },
    /// Run a seeded invariant suite over random frames.
    Verify {
        /// One of: fundamental-lemma, necessity-witness, definability.
        #[arg(long)]
        suite: String,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Number of random frames to draw.
        #[arg(long, default_value = "100")]
        count: usize,
    },
    /// Structural reports: anti, order, galois, wf, safe-op, compare.
    Analyze {
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        grades: GradeArgs,
        /// What to analyze.
        #[arg(long)]
        what: String,
        /// Semantics for anti/order/compare (default cf).
        #[arg(long, default_value = "cf")]
        spec: String,
        /// Comma-separated argument names (the set X for wf).
        #[arg(long)]
        set: Option<String>,
        /// Second frame for compare (same --format).
        #[arg(long)]
        compare: Option<String>,
        #[arg(long, default_value_t = ENUM_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: OutputFormat,
    },
    /// Decide whether a candidate family is the ℓ-conflict-free family of
    /// some frame; prints the witness in APX on success.
    Repr {
        /// Path to the candidate family as JSON.
        #[arg(long)]
        input: String,
        /// Conflict grade ℓ; inferred from the family when omitted.
        #[arg(long)]
        l: Option<u32>,
        /// Construction variant: 1, 2 (acyclic), or 3.
        #[arg(long, default_value = "1")]
        variant: u8,
    },
    /// Evaluate a formula or defining bundle on ⟨A,→,E⟩.
    Fol {
        #[command(flatten)]
        frame: FrameArgs,
        #[command(flatten)]
        grades: GradeArgs,
        /// An S-expression formula, e.g. "(all x (not (att x x)))".
        #[arg(long)]
        formula: Option<String>,
        /// A named bundle: cf, def, ad, co, or stb.
        #[arg(long)]
        sigma: Option<String>,
        /// Comma-separated names interpreting P. With --sigma and no
        /// --set, the bundle is instead checked for definability.
        #[arg(long)]
        set: Option<String>,
    },
}

/// Parse `args` and run; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Unknown { .. } | Error::Precondition(_) => 2,
                Error::CapExceeded { .. } => 3,
                _ => 4,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve { frame, grades, spec, task, arg, cap, jobs: _, out } => {
            cmd_solve(&frame, &grades, &spec, task, arg.as_deref(), cap, out)
        }
        Command::Verify { suite, seed, count } => cmd_verify(&suite, seed, count),
        Command::Analyze { frame, grades, what, spec, set, compare, cap, out } => {
            cmd_analyze(&frame, &grades, &what, &spec, set.as_deref(), compare.as_deref(), cap, out)
        }
        Command::Repr { input, l, variant } => cmd_repr(&input, l, variant),
        Command::Fol { frame, grades, formula, sigma, set } => {
            cmd_fol(&frame, &grades, formula.as_deref(), sigma.as_deref(), set.as_deref())
        }
    }
}

fn load_frame(args: &FrameArgs) -> Result<Aaf> {
    let text = fs::read_to_string(&args.input)
        .map_err(|e| Error::Parse { line: 0, msg: format!("cannot read {}: {e}", args.input) })?;
    match args.format {
        InputFormat::Apx => Aaf::parse_apx(&text),
        InputFormat::Tgf => Aaf::parse_tgf(&text),
        InputFormat::Json => Aaf::parse_json(&text),
    }
}

fn params_of(g: &GradeArgs) -> Result<Params> {
    Params::new(g.l, g.m, g.n, g.eta)
}

fn parse_set(f: &Aaf, text: &str) -> Result<ArgSet> {
    let mut set = ArgSet::empty(f.arg_count());
    for name in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let i = f
            .index_of(name)
            .ok_or_else(|| Error::Unknown { what: "argument", got: name.to_string() })?;
        set.insert(i);
    }
    Ok(set)
}

fn set_display(f: &Aaf, s: &ArgSet) -> String {
    format!("{{{}}}", f.set_names(s).join(","))
}

fn print_family(f: &Aaf, spec_text: &str, fam: &ExtensionFamily, out: OutputFormat) {
    match out {
        OutputFormat::Json => {
            let mut families = BTreeMap::new();
            families.insert(spec_text.to_string(), fam.clone());
            println!("{}", f.to_json(&families));
        }
        OutputFormat::Text => {
            for s in fam.iter() {
                println!("{}", set_display(f, s));
            }
        }
        OutputFormat::Dot => {
            println!("{}", f.emit_dot(fam.iter().next()));
        }
    }
}

fn cmd_solve(
    frame: &FrameArgs,
    grades: &GradeArgs,
    spec_text: &str,
    task: Task,
    arg: Option<&str>,
    cap: usize,
    out: OutputFormat,
) -> Result<i32> {
    let f = load_frame(frame)?;
    let p = params_of(grades)?;
    let spec = SemanticsSpec::parse(spec_text)?;
    let fam = enumerate_with_cap(&f, &p, &spec, cap)?;
    let need_arg = || {
        arg.and_then(|a| f.index_of(a)).ok_or_else(|| {
            Error::Unknown { what: "argument", got: arg.unwrap_or("--arg missing").to_string() }
        })
    };
    Ok(match task {
        Task::Ee => {
            print_family(&f, spec_text, &fam, out);
            0
        }
        Task::Se => match fam.iter().next() {
            Some(s) => {
                println!("{}", set_display(&f, s));
                0
            }
            None => {
                println!("NO");
                1
            }
        },
        Task::Dc => {
            let a = need_arg()?;
            let yes = fam.iter().any(|s| s.contains(a));
            println!("{}", if yes { "YES" } else { "NO" });
            if yes {
                0
            } else {
                1
            }
        }
        Task::Ds => {
            let a = need_arg()?;
            if fam.is_empty() {
                eprintln!("warning: extension family is empty; DS holds vacuously");
            }
            let yes = analysis::infers(&fam, &ArgSet::empty(f.arg_count()), a);
            println!("{}", if yes { "YES" } else { "NO" });
            if yes {
                0
            } else {
                1
            }
        }
    })
}

/// Draw a random frame with 2–7 arguments, edge probability 1/3.
fn random_frame(rng: &mut ChaCha8Rng) -> Aaf {
    let n = rng.gen_range(2..=7);
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let mut attacks = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if rng.gen_ratio(1, 3) {
                attacks.push((x, y));
            }
        }
    }
    Aaf::from_parts(names, attacks).expect("generated frame is valid")
}

fn cmd_verify(suite: &str, seed: u64, count: usize) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0usize;
    let mut violations = Vec::new();
    match suite {
        // With n ≥ ℓ ≥ m, defense preserves admissibility: a self-defended
        // ℓ-conflict-free set stays so after one defense step.
        "fundamental-lemma" => {
            for _ in 0..count {
                let f = random_frame(&mut rng);
                let m = rng.gen_range(1..=2u32);
                let l = m + rng.gen_range(0..=1);
                let n = l + rng.gen_range(0..=1);
                let args = f.arg_count();
                for mask in 0u64..1 << args {
                    let e = ArgSet::from_mask(args, mask);
                    let cf = kernel::neutrality(&f, l, &e);
                    if !e.is_subset(&cf) || !fixpoint::is_self_defended(&f, m, n, &e) {
                        continue;
                    }
                    checked += 1;
                    let d = kernel::defense(&f, m, n, &e);
                    let still_cf = d.is_subset(&kernel::neutrality(&f, l, &d));
                    let still_def = fixpoint::is_self_defended(&f, m, n, &d);
                    if !(still_cf && still_def) {
                        violations.push(format!(
                            "frame {f:?}, E = {}, grades ({l},{m},{n})",
                            set_display(&f, &e)
                        ));
                    }
                }
            }
        }
        // Outside that grade regime the preservation fails; exhibit a
        // witness (the 3-clique-over-a-sink frame seeds the search).
        "necessity-witness" => {
            let k3d = Aaf::from_named(
                &["a", "b", "c", "d"],
                &[
                    ("a", "b"),
                    ("b", "a"),
                    ("b", "c"),
                    ("c", "b"),
                    ("a", "c"),
                    ("c", "a"),
                    ("a", "d"),
                    ("b", "d"),
                    ("c", "d"),
                ],
            )?;
            let mut witness = None;
            'search: for f in std::iter::once(k3d).chain((0..count).map(|_| random_frame(&mut rng)))
            {
                let (l, m, n) = (3, 2, 2);
                let args = f.arg_count();
                for mask in 0u64..1 << args {
                    let e = ArgSet::from_mask(args, mask);
                    let cf = kernel::neutrality(&f, l, &e);
                    if !e.is_subset(&cf) || !fixpoint::is_self_defended(&f, m, n, &e) {
                        continue;
                    }
                    checked += 1;
                    let d = kernel::defense(&f, m, n, &e);
                    if !d.is_subset(&kernel::neutrality(&f, l, &d)) {
                        witness = Some((f.clone(), e, l, m, n));
                        break 'search;
                    }
                }
            }
            match witness {
                Some((f, e, l, m, n)) => println!(
                    "witness: frame {f:?}, E = {}, grades (ℓ,m,n) = ({l},{m},{n})",
                    set_display(&f, &e)
                ),
                None => violations.push("no cf-preservation failure found".into()),
            }
        }
        // Each sentence bundle carves out exactly its extension family.
        "definability" => {
            let pairs: [(&str, SemanticsSpec); 4] = [
                ("cf", SemanticsSpec::Cf),
                ("ad", SemanticsSpec::Ad),
                ("co", SemanticsSpec::Co),
                ("stb", SemanticsSpec::Stb),
            ];
            for _ in 0..count {
                let f = random_frame(&mut rng);
                let p = Params::new(
                    rng.gen_range(1..=2),
                    rng.gen_range(1..=2),
                    rng.gen_range(1..=2),
                    1,
                )?;
                let lib = fol::sentence_library(&p);
                for (name, spec) in &pairs {
                    let sigma = match *name {
                        "cf" => &lib.sigma_cf,
                        "ad" => &lib.sigma_ad,
                        "co" => &lib.sigma_co,
                        _ => &lib.sigma_stb,
                    };
                    checked += 1;
                    let fam = crate::semantics::enumerate(&f, &p, spec)?;
                    if let Some(cex) = fol::verify_definability(&f, sigma, &fam)? {
                        violations.push(format!(
                            "Σ_{name} misclassifies {} on {f:?} at {p:?}",
                            set_display(&f, &cex)
                        ));
                    }
                }
            }
        }
        other => return Err(Error::Unknown { what: "suite", got: other.to_string() }),
    }
    println!("suite {suite}: {checked} instances checked, {} violations", violations.len());
    for v in &violations {
        println!("violation: {v}");
    }
    Ok(if violations.is_empty() { 0 } else { 1 })
}

fn cmd_analyze(
    frame: &FrameArgs,
    grades: &GradeArgs,
    what: &str,
    spec_text: &str,
    set: Option<&str>,
    compare: Option<&str>,
    cap: usize,
    out: OutputFormat,
) -> Result<i32> {
    let f = load_frame(frame)?;
    let p = params_of(grades)?;
    let spec = SemanticsSpec::parse(spec_text)?;
    match what {
        "anti" => {
            let fam = enumerate_with_cap(&f, &p, &spec, cap)?;
            let anti = analysis::anti_sets(&fam);
            print_family(&f, &format!("anti({spec_text})"), &anti, out);
        }
        "order" => {
            let fam = enumerate_with_cap(&f, &p, &spec, cap)?;
            let report = analysis::order_report(&fam)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        "galois" => {
            let ok = analysis::galois_check(&f, &p)?;
            println!("{}", serde_json::json!({ "galois": ok }));
            return Ok(if ok { 0 } else { 1 });
        }
        "wf" => {
            let x = parse_set(&f, set.ok_or_else(|| Error::Precondition("wf needs --set".into()))?)?;
            let report = serde_json::json!({
                "wf": fixpoint::wf_on(&f, &x),
                "wf_plus": fixpoint::wf_plus_on(&f, &x),
            });
            println!("{report}");
        }
        "safe-op" => {
            let restricted = analysis::safe_restrict_cf(&f, grades.l)?;
            match out {
                OutputFormat::Json => println!("{}", restricted.to_json(&BTreeMap::new())),
                OutputFormat::Text => print!("{}", restricted.emit_apx()),
                OutputFormat::Dot => print!("{}", restricted.emit_dot(None)),
            }
        }
        "compare" => {
            let path = compare
                .ok_or_else(|| Error::Precondition("compare needs --compare PATH".into()))?;
            let other = load_frame(&FrameArgs { input: path.to_string(), format: frame.format })?;
            let report = analysis::compare_frameworks(&f, &other, &p, &spec)?;
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        other => return Err(Error::Unknown { what: "analysis", got: other.to_string() }),
    }
    Ok(0)
}

fn cmd_repr(input: &str, l: Option<u32>, variant: u8) -> Result<i32> {
    let text = fs::read_to_string(input)
        .map_err(|e| Error::Parse { line: 0, msg: format!("cannot read {input}: {e}") })?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse { line: 1, msg: format!("invalid JSON: {e}") })?;
    let omega = representation::CandidateOmega::from_json(&value)?;
    let variant = match variant {
        1 => representation::Variant::I,
        2 => representation::Variant::II,
        3 => representation::Variant::III,
        other => return Err(Error::Unknown { what: "variant", got: other.to_string() }),
    };
    let candidates: Vec<u32> = match l {
        Some(l) => vec![l],
        None => match representation::rho(&omega)? {
            representation::RhoResult::AllPositive => vec![1],
            representation::RhoResult::Finite(ls) => ls,
        },
    };
    for l in candidates {
        let result = representation::representable(&omega, l, variant)?;
        if result.ok {
            println!("YES (ℓ = {l})");
            print!("{}", result.witness.expect("witness accompanies YES").emit_apx());
            return Ok(0);
        }
    }
    println!("NO");
    Ok(1)
}

fn cmd_fol(
    frame: &FrameArgs,
    grades: &GradeArgs,
    formula: Option<&str>,
    sigma: Option<&str>,
    set: Option<&str>,
) -> Result<i32> {
    let f = load_frame(frame)?;
    let p = params_of(grades)?;
    let lib = fol::sentence_library(&p);
    let bundle: Vec<fol::FolFormula> = match (formula, sigma) {
        (Some(text), None) => vec![fol::FolFormula::parse(text)?],
        (None, Some(name)) => match name {
            "cf" => lib.sigma_cf.clone(),
            "def" => lib.sigma_def.clone(),
            "ad" => lib.sigma_ad.clone(),
            "co" => lib.sigma_co.clone(),
            "stb" => lib.sigma_stb.clone(),
            other => return Err(Error::Unknown { what: "sigma", got: other.to_string() }),
        },
        _ => {
            return Err(Error::Precondition("give exactly one of --formula or --sigma".into()))
        }
    };
    match set {
        Some(text) => {
            let e = parse_set(&f, text)?;
            let model = fol::FolModel::new(&f, e)?;
            let sat = fol::sat_all(&model, &bundle)?;
            println!("{}", if sat { "SAT" } else { "UNSAT" });
            Ok(if sat { 0 } else { 1 })
        }
        None => {
            let name = sigma.ok_or_else(|| {
                Error::Precondition("definability check needs --sigma; give --set for --formula".into())
            })?;
            let spec = SemanticsSpec::parse(name)?;
            let fam = crate::semantics::enumerate(&f, &p, &spec)?;
            match fol::verify_definability(&f, &bundle, &fam)? {
                None => {
                    println!("DEFINES {name}");
                    Ok(0)
                }
                Some(cex) => {
                    println!("COUNTEREXAMPLE {}", set_display(&f, &cex));
                    Ok(1)
                }
            }
        }
    }
}
