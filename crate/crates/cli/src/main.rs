use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mquasi::{
    all_inverses, conjugate, count_quasigroups, enumerate_ort, find_isomorphism_with_guard, fixture_names,
    hadamard_product, has_unique_inverses, identity_set, is_orthogonal_set, iterate_hadamard_cycle_with,
    lift_operation_with, lifted_identity_check_with, load_fixture, mult_set_with, parse_identity,
    parse_operation_file, parse_permutation, satisfies_identity_with, self_superpose, superpose,
    transversal_family, tri_right, tri_symmetric, verify_bijection, write_operation_file, apply_isotopism,
    ConjugationPerm, Distributivity, Error, Isotopism, MultaryOperation, OperationIndex, OperationSet,
    SearchConfig,
};
use serde_json::json;

mod output;

use output::{emit, label, op_json, op_text, set, tuple};

#[derive(Parser)]
#[command(name = "mquasi", version, about = "Finite multiary groupoids and quasigroups")]
struct Cli {
    /// Worker threads for scans (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Largest table any command may build, in bytes.
    #[arg(long, global = true, value_name = "BYTES")]
    guard: Option<usize>,
    /// Skip the enumeration guard and feasibility limits.
    #[arg(long, global = true)]
    long_runs: bool,
    /// Largest carrier accepted for lifted groupoids.
    #[arg(long, global = true, value_name = "N")]
    lifted_cap: Option<usize>,
    /// Print a JSON report instead of tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Image, quasigroup test, identity and inverse sets.
    Info { op: String },
    /// ⊙_f(g_1, …, g_m).
    Superpose {
        f: String,
        #[arg(required = true)]
        gs: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hadamard product A ⊙_⋆ B.
    Hadamard {
        star: String,
        a: String,
        b: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// A ▷_⋆ = ⊙_⋆(A, right projection).
    TriRight { a: String, star: String },
    /// A ◁_⋆ = ⊙_⋆(A, Aᵗ).
    TriSym { a: String, star: String },
    /// ⊙_f(g, …, g).
    Plus { f: String, g: String },
    /// Table of (Ω_n(X), ⊙_f) with g_k labels.
    Lift {
        f: String,
        #[arg(long)]
        component_arity: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Conjugate by a permutation of the m+1 positions.
    Conjugate {
        f: String,
        #[arg(long)]
        perm: String,
    },
    /// Isotope by m+1 symbol permutations.
    Isotope {
        f: String,
        /// Comma-separated, one per argument position then the result.
        #[arg(long)]
        perms: String,
    },
    /// Search for π with g(πa, πb, …) = π f(a, b, …).
    Isomorphic { f: String, g: String },
    /// Check `LHS = RHS` on every assignment.
    IdentityCheck { f: String, identity: String },
    /// Check `LHS = RHS` in (Ω_n(X), ⊙_f).
    LiftedIdentityCheck {
        f: String,
        #[arg(long)]
        component_arity: usize,
        identity: String,
    },
    /// Whether g_1, …, g_m form an orthogonal set.
    Orthogonal {
        #[arg(required = true)]
        gs: Vec<String>,
    },
    /// Size of Ort(S).
    OrtCount {
        #[arg(required = true)]
        s: Vec<String>,
        #[arg(long)]
        list: bool,
    },
    /// Number of m-ary quasigroups of order n.
    Census {
        #[arg(long)]
        arity: usize,
        #[arg(long)]
        order: usize,
    },
    /// Check that f ↦ ⊙_f(S) maps the quasigroups onto Ort(S).
    VerifyTheorem {
        #[arg(required = true)]
        s: Vec<String>,
    },
    /// Latin transversal check for every line of the components.
    Transversals {
        f: String,
        #[arg(required = true)]
        gs: Vec<String>,
    },
    /// Operations distributive over ⋆.
    MultSet {
        star: String,
        /// Left distributivity only.
        #[arg(long)]
        left: bool,
    },
    /// Orbit of ⋆ under h ↦ ⊙_⋆(h, h).
    IterateHadamard { star: String },
    /// Print or save a built-in table; lists the names when none is given.
    Fixture {
        name: Option<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type Outcome = Result<bool, Failure>;

fn resolve(arg: &str) -> Result<MultaryOperation, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{arg}: {e}")))?;
        return parse_operation_file(&text).map_err(|e| Failure::Usage(format!("{arg}: {e}")));
    }
    load_fixture(arg).map_err(|_| Failure::Usage(format!("`{arg}` is neither a readable file nor a fixture")))
}

fn resolve_all(args: &[String]) -> Result<Vec<MultaryOperation>, Failure> {
    args.iter().map(|a| resolve(a)).collect()
}

fn save(path: &Option<PathBuf>, op: &MultaryOperation) -> Result<(), Failure> {
    if let Some(p) = path {
        fs::write(p, write_operation_file(op)).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn show_op(json_mode: bool, command: &str, op: &MultaryOperation) {
    emit(json_mode, json!({"command": command, "result": op_json(op)}), || op_text(op));
}

fn config(cli: &Cli) -> SearchConfig {
    let mut cfg = SearchConfig::with_jobs(cli.jobs);
    if let Some(bytes) = cli.guard {
        cfg.limits.table_entries = bytes / std::mem::size_of::<mquasi::Symbol>();
    }
    if let Some(cap) = cli.lifted_cap {
        cfg.limits.lifted_carrier = cap;
    }
    cfg.limits.allow_long_runs = cli.long_runs;
    cfg
}

fn check_guard(cfg: &SearchConfig, op: &MultaryOperation) -> Result<(), Failure> {
    if op.len() > cfg.limits.table_entries {
        return Err(Error::CapacityExceeded(format!(
            "a table of {} entries is over the --guard budget",
            op.len()
        ))
        .into());
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    let cfg = config(cli);
    let js = cli.json;
    match &cli.command {
        Command::Info { op } => {
            let f = resolve(op)?;
            let report = identity_set(&f);
            let inverses = all_inverses(&f);
            let unique = has_unique_inverses(&f);
            let value = json!({
                "command": "info",
                "operation": op_json(&f),
                "image": f.image(),
                "quasigroup": f.is_quasigroup(),
                "identities": report,
                "monoid": report.is_monoid(),
                "inverses": inverses,
                "unique_inverses": unique,
            });
            emit(js, value, || {
                let mut out = format!("arity: {}\norder: {}\n", f.arity(), f.order());
                if let Some(l) = label(&f) {
                    out += &format!("index: {l}\n");
                }
                out += &format!("image: {}\nquasigroup: {}\n", set(&f.image()), f.is_quasigroup());
                for (i, s) in report.per_position.iter().enumerate() {
                    out += &format!("I_{i}: {}\n", set(s));
                }
                out += &format!("I: {}\nunique inverses: {unique}\n", set(&report.intersection));
                match &inverses {
                    Some(sets) => {
                        for (a, s) in sets.iter().enumerate() {
                            out += &format!("Inv({}): {}\n", a + 1, set(s));
                        }
                    }
                    None => out += "inverses: undefined (no identity element)\n",
                }
                out
            });
            Ok(true)
        }
        Command::Superpose { f, gs, output } => {
            let f = resolve(f)?;
            let gs = resolve_all(gs)?;
            let h = superpose(&f, &gs)?;
            check_guard(&cfg, &h)?;
            save(output, &h)?;
            show_op(js, "superpose", &h);
            Ok(true)
        }
        Command::Hadamard { star, a, b, output } => {
            let product = hadamard_product(&resolve(star)?, &resolve(a)?, &resolve(b)?)?;
            save(output, &product.product)?;
            let value = json!({
                "command": "hadamard",
                "result": op_json(&product.product),
                "quasigroup_product": product.certified,
            });
            emit(js, value, || {
                let mut out = op_text(&product.product);
                if !product.certified {
                    out += "# note: ⋆ is not a quasigroup, plain superposition\n";
                }
                out
            });
            Ok(true)
        }
        Command::TriRight { a, star } => {
            show_op(js, "tri-right", &tri_right(&resolve(a)?, &resolve(star)?)?);
            Ok(true)
        }
        Command::TriSym { a, star } => {
            show_op(js, "tri-sym", &tri_symmetric(&resolve(a)?, &resolve(star)?)?);
            Ok(true)
        }
        Command::Plus { f, g } => {
            show_op(js, "plus", &self_superpose(&resolve(f)?, &resolve(g)?)?);
            Ok(true)
        }
        Command::Lift {
            f,
            component_arity,
            output,
        } => {
            let lifted = lift_operation_with(&resolve(f)?, *component_arity, &cfg)?;
            save(output, lifted.operation())?;
            let labels: Vec<String> = (0..lifted.carrier_size())
                .map(|i| OperationIndex(i as u128).label())
                .collect();
            let value = json!({
                "command": "lift",
                "carrier_size": lifted.carrier_size(),
                "elements": labels,
                "result": op_json(lifted.operation()),
            });
            emit(js, value, || lifted.render_labels());
            Ok(true)
        }
        Command::Conjugate { f, perm } => {
            let f = resolve(f)?;
            let sigma = ConjugationPerm::new(parse_permutation(perm, f.arity() + 1)?);
            match conjugate(&f, &sigma) {
                Ok(g) => {
                    show_op(js, "conjugate", &g);
                    Ok(true)
                }
                Err(e @ (Error::NotTotal { .. } | Error::NotFunctional { .. })) => {
                    emit(
                        js,
                        json!({"command": "conjugate", "exists": false, "reason": e.to_string()}),
                        || format!("no conjugate: {e}\n"),
                    );
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Isotope { f, perms } => {
            let f = resolve(f)?;
            let maps = perms
                .split(',')
                .map(|p| parse_permutation(p, f.order()))
                .collect::<Result<Vec<_>, _>>()?;
            show_op(js, "isotope", &apply_isotopism(&f, &Isotopism::new(maps)?)?);
            Ok(true)
        }
        Command::Isomorphic { f, g } => {
            let found = find_isomorphism_with_guard(&resolve(f)?, &resolve(g)?, cfg.limits.isomorphism_order)?;
            let value = json!({
                "command": "isomorphic",
                "isomorphic": found.is_some(),
                "witness": found.as_ref().map(|p| p.to_string()),
            });
            emit(js, value, || match &found {
                Some(p) => format!("isomorphic via {p}\n"),
                None => "not isomorphic\n".to_string(),
            });
            Ok(found.is_some())
        }
        Command::IdentityCheck { f, identity } => {
            let f = resolve(f)?;
            let (lhs, rhs) = parse_identity(identity, f.arity())?;
            let check = satisfies_identity_with(&f, &lhs, &rhs, &cfg)?;
            report_identity(js, "identity-check", &check, false);
            Ok(check.holds())
        }
        Command::LiftedIdentityCheck {
            f,
            component_arity,
            identity,
        } => {
            let f = resolve(f)?;
            let (lhs, rhs) = parse_identity(identity, f.arity())?;
            let check = lifted_identity_check_with(&f, *component_arity, &lhs, &rhs, &cfg)?;
            report_identity(js, "lifted-identity-check", &check, true);
            Ok(check.holds())
        }
        Command::Orthogonal { gs } => {
            let s = OperationSet::new(resolve_all(gs)?)?;
            let verdict = is_orthogonal_set(&s);
            emit(js, json!({"command": "orthogonal", "orthogonal": verdict}), || {
                format!("{}\n", if verdict { "orthogonal" } else { "not orthogonal" })
            });
            Ok(verdict)
        }
        Command::OrtCount { s, list } => {
            let s = OperationSet::new(resolve_all(s)?)?;
            let ort = enumerate_ort(&s, &cfg)?;
            let labels: Vec<Option<String>> = ort.iter().map(label).collect();
            let value = json!({
                "command": "ort-count",
                "count": ort.len(),
                "members": if *list { Some(&labels) } else { None },
            });
            emit(js, value, || {
                let mut out = format!("{}\n", ort.len());
                if *list {
                    for l in labels.iter().flatten() {
                        out += &format!("{l}\n");
                    }
                }
                out
            });
            Ok(true)
        }
        Command::Census { arity, order } => {
            let count = count_quasigroups(*arity, *order, &cfg)?;
            emit(
                js,
                json!({"command": "census", "arity": arity, "order": order, "count": count.to_string()}),
                || format!("{count}\n"),
            );
            Ok(true)
        }
        Command::VerifyTheorem { s } => {
            let s = OperationSet::new(resolve_all(s)?)?;
            let report = verify_bijection(&s, &cfg)?;
            let ok = report.verified();
            emit(
                js,
                json!({"command": "verify-theorem", "verified": ok, "report": report}),
                || {
                    let mut out = format!(
                        "quasigroups: {}\nOrt(S): {}\ninjective: {}\nall in Ort(S): {}\nsurjective: {}\nround trip: {}\n",
                        report.quasigroup_count,
                        report.ort_count,
                        report.injective,
                        report.all_in_ort,
                        report.surjective,
                        report.roundtrip_ok
                    );
                    if let Some(c) = &report.certificate {
                        out += &format!("certificate: {c}\n");
                    }
                    out += if ok { "verified\n" } else { "NOT verified\n" };
                    out
                },
            );
            Ok(ok)
        }
        Command::Transversals { f, gs } => {
            let verdict = transversal_family(&resolve(f)?, &resolve_all(gs)?)?;
            emit(js, json!({"command": "transversals", "verdict": verdict}), || match &verdict.witness {
                None => "every line is a Latin transversal\n".to_string(),
                Some(w) => {
                    let cells: Vec<String> = w.cells.iter().map(|c| tuple(c)).collect();
                    format!(
                        "line through {} along position {} is not a Latin transversal: {}\n",
                        tuple(&w.start),
                        w.axis + 1,
                        cells.join(" ")
                    )
                }
            });
            Ok(verdict.all_transversals)
        }
        Command::MultSet { star, left } => {
            let side = if *left { Distributivity::Left } else { Distributivity::Both };
            let ops = mult_set_with(&resolve(star)?, side, &cfg)?;
            let labels: Vec<Option<String>> = ops.iter().map(label).collect();
            emit(
                js,
                json!({"command": "mult-set", "side": side, "count": ops.len(), "members": labels}),
                || {
                    let mut out = format!("{}\n", ops.len());
                    for l in labels.iter().flatten() {
                        out += &format!("{l}\n");
                    }
                    out
                },
            );
            Ok(true)
        }
        Command::IterateHadamard { star } => {
            let cycle = iterate_hadamard_cycle_with(&resolve(star)?, &cfg)?;
            let labels: Vec<Option<String>> = cycle.trajectory.iter().map(label).collect();
            let value = json!({
                "command": "iterate-hadamard",
                "preperiod": cycle.preperiod,
                "period": cycle.period,
                "trajectory": labels,
            });
            emit(js, value, || {
                let names: Vec<String> = labels.iter().map(|l| l.clone().unwrap_or_else(|| "?".into())).collect();
                format!(
                    "preperiod: {}\nperiod: {}\ntrajectory: {}\n",
                    cycle.preperiod,
                    cycle.period,
                    names.join(" -> ")
                )
            });
            Ok(true)
        }
        Command::Fixture { name, output } => {
            let Some(name) = name else {
                let names = fixture_names();
                emit(js, json!({"command": "fixture", "names": names}), || {
                    names.iter().map(|n| format!("{n}\n")).collect()
                });
                return Ok(true);
            };
            let op = load_fixture(name)?;
            save(output, &op)?;
            emit(js, json!({"command": "fixture", "name": name, "result": op_json(&op)}), || {
                write_operation_file(&op)
            });
            Ok(true)
        }
    }
}

fn report_identity(js: bool, command: &str, check: &mquasi::IdentityCheck, lifted: bool) {
    // lifted counterexamples are carrier elements, printed as g_k
    let render = |t: &[mquasi::Symbol]| -> String {
        if lifted {
            let parts: Vec<String> = t.iter().map(|s| OperationIndex(s.index() as u128).label()).collect();
            format!("({})", parts.join(", "))
        } else {
            tuple(t)
        }
    };
    let counterexample = check.counterexample.as_deref().map(render);
    let value = json!({
        "command": command,
        "holds": check.holds(),
        "exhaustive": check.exhaustive,
        "assignments_checked": check.assignments_checked.to_string(),
        "counterexample": counterexample,
    });
    emit(js, value, || {
        let mode = if check.exhaustive { "exhaustive" } else { "sampled" };
        match &counterexample {
            None => format!("holds ({mode}, {} assignments)\n", check.assignments_checked),
            Some(c) => format!("fails at x = {c} ({mode})\n"),
        }
    });
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e @ Error::CapacityExceeded(_))) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
