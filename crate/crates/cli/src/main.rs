mod error;
mod input;
mod manifest;
mod render;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use superweights::affine::{
    affine_kac_character, chi_period, g1_invariants_window, loop_decompose, loop_module, AffineCharacter,
    AffineWeight, ChiData,
};
use superweights::combinatorics::{
    classify_string, functional_for_shadow, is_closed, is_parabolic, shadow_from_inj, triangular_from_functional,
    SupportSet,
};
use superweights::map_modules::{annihilator, boundedness_analyze, classification_witness};
use superweights::modules::{
    endomorphisms, irreducible_tensor, induced_character, invariants_subspace, odd_part_roots, shadow_of_module,
    simplicity_check, CharacterWindow,
};
use superweights::roots::{build_root_system, RootVector};
use superweights::suites::{lift_to_roots, run_suite};

use error::CliError;

#[derive(Parser)]
#[command(name = "superweights", version, about = "Exact weight-module computations for Lie superalgebras")]
struct Cli {
    /// Output format; tables are a lossy render of the JSON payload.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Seed recorded in the run manifest (all built-in computations are deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// A family: `A m n`, `B m n`, `C n`, `D m n`, `D21 a`, `F4`, `G3`, `An n`, `Cn n`.
#[derive(Args)]
struct FamilyArgs {
    #[arg(required = true, num_args = 1..=3, allow_negative_numbers = true)]
    family: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Root system of a family: roots with parities, form, even part and type.
    Roots(FamilyArgs),
    /// Distinguished ℤ-grading degrees of the roots.
    Grading(FamilyArgs),
    /// Whether a root set (`1,-1,0;0,1,-1`) is closed.
    Closed {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Whether a root set is parabolic.
    Parabolic {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        set: String,
    },
    /// Triangular decomposition of a functional (`1,0,0`).
    Triangular {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
    },
    /// Shadow partition of a closed injective set, or of a module spec.
    Shadow {
        /// Family, as for `roots`; required with --inj.
        #[arg(num_args = 0..=3, allow_negative_numbers = true)]
        family: Vec<String>,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "module")]
        inj: Option<String>,
        /// Module spec (inline JSON or file).
        #[arg(long)]
        module: Option<String>,
    },
    /// Boundedness class of the α-strings of a support set.
    String {
        /// Support set (inline JSON or file): {"base": [...], "directions": [...], "cone": [...]}.
        #[arg(long)]
        support: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
    /// Builds a module from a spec and prints its window.
    Module {
        #[arg(long)]
        spec: String,
    },
    /// Tensor product of two modules (outer product with --outer).
    Tensor {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        outer: bool,
    },
    /// Endomorphism superalgebra (Schur pattern); with --square, the V⊗V splitting.
    Endo {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        square: bool,
    },
    /// Simplicity verdict.
    Simple {
        #[arg(long)]
        spec: String,
    },
    /// Evaluation module of a descriptor {"points": [...], "factors": [...]}, with its witness report.
    EvalModule {
        #[arg(long)]
        descriptor: String,
    },
    /// Annihilator of an evaluation module, checked up to a degree bound.
    Annihilator {
        #[arg(long)]
        descriptor: String,
        #[arg(long, default_value_t = 6)]
        degree_bound: usize,
    },
    /// Weight multiplicities along a root direction.
    Bounded {
        #[arg(long)]
        descriptor: String,
        #[arg(long, allow_hyphen_values = true)]
        direction: String,
        #[arg(long)]
        depth: usize,
    },
    /// Truncated character of an induced module.
    Induce {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, allow_hyphen_values = true)]
        functional: String,
        /// Weights of W in root coordinates, multiplicity one each (`3,0;2,1`).
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long, default_value_t = 1)]
        a_dim: u64,
        #[arg(long)]
        depth: u64,
    },
    /// Period r of the loop character.
    ChiPeriod {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
        /// One entry per point; `a:b` for several Cartan coordinates.
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        certificate: bool,
    },
    /// Loop module window of a descriptor.
    Loop {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        depth: i64,
    },
    /// Decomposition of a loop module window into its r components.
    LoopDecompose {
        #[arg(long)]
        descriptor: String,
        #[arg(long)]
        depth: i64,
        /// Generator weights, one per factor (`1;1`); defaults to each factor's top weight.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Affine Kac character of K(λ) truncated at δ-depth D.
    KacChar {
        #[arg(long)]
        algebra: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        depth: i64,
    },
    /// g₁-invariants of a module spec, or of a loop window with --descriptor.
    Invariants {
        #[arg(long, conflicts_with = "descriptor")]
        spec: Option<String>,
        #[arg(long)]
        descriptor: Option<String>,
        #[arg(long, default_value_t = 2)]
        depth: i64,
        #[arg(long, default_value_t = 1)]
        d: i64,
    },
    /// Runs a built-in invariant battery.
    Verify {
        #[arg(value_parser = ["schur", "shadow", "boundedness", "loop", "kac"])]
        suite: String,
    },
}

fn paths(cmd: &Command) -> Vec<&str> {
    let mut out: Vec<&str> = match cmd {
        Command::Shadow { module, .. } => module.iter().map(String::as_str).collect(),
        Command::String { support, .. } => vec![support],
        Command::Module { spec } | Command::Simple { spec } | Command::Endo { spec, .. } => vec![spec],
        Command::Tensor { left, right, .. } => vec![left, right],
        Command::EvalModule { descriptor }
        | Command::Annihilator { descriptor, .. }
        | Command::Bounded { descriptor, .. }
        | Command::Loop { descriptor, .. }
        | Command::LoopDecompose { descriptor, .. } => vec![descriptor],
        Command::Invariants { spec, descriptor, .. } => spec.iter().chain(descriptor).map(String::as_str).collect(),
        _ => vec![],
    };
    out.retain(|p| input::is_path(p));
    out
}

fn weights_json(ws: &[Vec<superweights::arith::Cyclotomic>]) -> Value {
    json!(ws.iter().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn execute(cmd: &Command) -> Result<Value, CliError> {
    Ok(match cmd {
        Command::Roots(f) => build_root_system(&input::family(&f.family)?)?.to_json(),
        Command::Grading(f) => {
            let rs = build_root_system(&input::family(&f.family)?)?;
            let degrees: Vec<Value> = rs
                .distinguished_grading()
                .into_iter()
                .map(|(r, d)| json!({"root": r, "degree": d}))
                .collect();
            json!({"functional": rs.grading_functional(), "degrees": degrees})
        }
        Command::Closed { family, set } => {
            let rs = build_root_system(&input::family(&family.family)?)?;
            json!({"closed": is_closed(&rs, &input::root_set(set)?)?})
        }
        Command::Parabolic { family, set } => {
            let rs = build_root_system(&input::family(&family.family)?)?;
            json!({"parabolic": is_parabolic(&rs, &input::root_set(set)?)?})
        }
        Command::Triangular { family, functional } => {
            let rs = build_root_system(&input::family(&family.family)?)?;
            triangular_from_functional(&rs, &input::ints(functional)?)?.to_json()
        }
        Command::Shadow { family, inj, module } => match (family, inj, module) {
            (_, None, Some(spec)) => {
                let s = shadow_of_module(&input::module(spec)?)?;
                s.to_json(None)
            }
            (f, Some(inj), None) if !f.is_empty() => {
                let rs = build_root_system(&input::family(f)?)?;
                let s = shadow_from_inj(&rs, &input::root_set(inj)?)?;
                let t = functional_for_shadow(&rs, &s)?;
                s.to_json(t.as_ref().map(|t| t.functional.as_slice()))
            }
            _ => return Err(CliError::usage("shadow needs a family with --inj, or --module")),
        },
        Command::String { support, alpha } => {
            let s: SupportSet = serde_json::from_value(input::json_arg(support)?)
                .map_err(|e| CliError::usage(format!("bad support set: {e}")))?;
            json!({"class": classify_string(&s, &input::ints(alpha)?)?})
        }
        Command::Module { spec } => input::module(spec)?.to_json(),
        Command::Tensor { left, right, outer } => {
            let (l, r) = (input::module(left)?, input::module(right)?);
            let t = if *outer {
                superweights::modules::outer_tensor(&l, &r)?
            } else {
                superweights::modules::tensor(&l, &r)?
            };
            t.to_json()
        }
        Command::Endo { spec, square } => {
            let m = input::module(spec)?;
            let end = endomorphisms(&m)?;
            let (e, o) = end.schur_pattern();
            let mut out = json!({
                "pattern": [e, o],
                "sigma_squared": end.sigma_square().map(|c| c.to_string()),
            });
            if *square {
                let (half, tag) = irreducible_tensor(&m, &m)?;
                out["square"] = json!({"tag": tag, "dim": half.dim(), "dims": half.dims()});
            }
            out
        }
        Command::Simple { spec } => json!({"verdict": simplicity_check(&input::module(spec)?)}),
        Command::EvalModule { descriptor } => {
            let d = input::descriptor(descriptor)?;
            let witness = classification_witness(&d)?;
            json!({"descriptor": d.to_json(), "dim": d.module().dim(), "witness": witness})
        }
        Command::Annihilator { descriptor, degree_bound } => {
            let rep = annihilator(&input::descriptor(descriptor)?, *degree_bound)?;
            let verified = rep.verified();
            let mut v = serde_json::to_value(rep).expect("report serializes");
            v["verified"] = json!(verified);
            v
        }
        Command::Bounded { descriptor, direction, depth } => {
            let rep = boundedness_analyze(&input::descriptor(descriptor)?, &RootVector(input::ints(direction)?), *depth)?;
            let consistent = rep.consistent();
            let mut v = serde_json::to_value(rep).expect("report serializes");
            v["consistent"] = json!(consistent);
            v
        }
        Command::Induce { family, functional, weights, a_dim, depth } => {
            let rs = build_root_system(&input::family(&family.family)?)?;
            let t = triangular_from_functional(&rs, &input::ints(functional)?)?;
            let mut ch = CharacterWindow::default();
            for w in input::weight_list(weights)? {
                ch.add(w, 1);
            }
            let out = induced_character(&rs, &t, &ch, *a_dim, *depth)?;
            json!({"mass": out.mass(), "character": out.to_json()})
        }
        Command::ChiPeriod { points, weights, certificate } => {
            let pts = input::scalars(points)?;
            let ws = weights
                .split(',')
                .map(|w| w.split(':').map(input::scalar).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()?;
            let chi = ChiData::new(pts, ws)?;
            let p = chi_period(&chi)?;
            if *certificate {
                json!({"r": p.r, "certificate": {"witnesses": p.witnesses, "recurrence_order": p.recurrence_order}})
            } else {
                json!({"r": p.r})
            }
        }
        Command::Loop { descriptor, depth } => loop_module(&input::descriptor(descriptor)?, *depth)?.to_json(),
        Command::LoopDecompose { descriptor, depth, lambda } => {
            let d = input::descriptor(descriptor)?;
            let gens = match lambda {
                Some(l) => input::weight_list(l)?,
                None => d.factors().iter().map(|f| f.spaces()[0].weight.clone()).collect(),
            };
            let dec = loop_decompose(&loop_module(&d, *depth)?, &gens)?;
            let comps: Vec<Value> = dec
                .components
                .iter()
                .map(|c| {
                    let dims: BTreeMap<String, usize> = c.dims.iter().map(|(n, k)| (n.to_string(), *k)).collect();
                    json!({"t_classes": c.t_classes, "dims": dims})
                })
                .collect();
            json!({"r": dec.r, "generator_weights": weights_json(&gens), "interior_radius": dec.interior_radius, "components": comps})
        }
        Command::KacChar { algebra, lambda, depth } => {
            let alg = input::algebra(algebra)?;
            let s = superweights::modules::even_part_simple(&alg, &input::scalars(lambda)?)?;
            let rs = alg
                .root_system()
                .ok_or_else(|| CliError::Domain { code: "NotTypeI", message: format!("{} has no root system", alg.name()) })?;
            let lifts = lift_to_roots(&alg, rs.roots_even(), &s)
                .ok_or_else(|| CliError::Domain { code: "BadParameter", message: "weights do not lift".into() })?;
            let mut ch = AffineCharacter::default();
            for (finite, sp) in lifts.into_iter().zip(s.spaces()) {
                let key = AffineWeight { finite, level: superweights::arith::Cyclotomic::zero(), degree: 0 };
                *ch.entries.entry(key).or_insert(0) += sp.dim() as u64;
            }
            let out = affine_kac_character(&alg, &ch, *depth)?;
            json!({"mass": out.mass(), "character": out.to_json()})
        }
        Command::Invariants { spec, descriptor, depth, d } => match (spec, descriptor) {
            (Some(spec), None) => {
                let m = input::module(spec)?;
                let roots = odd_part_roots(m.algebra(), 1);
                let inv = invariants_subspace(&m, &roots)?;
                json!({"dim": inv.len(), "roots": roots})
            }
            (None, Some(desc)) => {
                let lw = loop_module(&input::descriptor(desc)?, *depth)?;
                let rep = g1_invariants_window(&lw, *d)?;
                let per: BTreeMap<String, usize> = rep.per_degree.iter().map(|(n, k)| (n.to_string(), *k)).collect();
                json!({"per_degree": per, "nonempty": rep.nonempty})
            }
            _ => return Err(CliError::usage("invariants needs --spec or --descriptor")),
        },
        Command::Verify { suite } => {
            let rep = run_suite(suite).ok_or_else(|| CliError::usage(format!("unknown suite {suite}")))?;
            serde_json::to_value(rep).expect("report serializes")
        }
    })
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            // clap uses exit 2 for usage errors and 0 for --help/--version.
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let inputs = paths(&cli.command);
    if let Err(e) = inputs.iter().try_for_each(|p| input::check_path(p)) {
        eprintln!("{}", e.to_json());
        return ExitCode::from(e.exit_code() as u8);
    }
    let started = Instant::now();
    let payload = match execute(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("{}", e.to_json());
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let json_text = serde_json::to_string(&payload).expect("payload serializes");
    let rendered = match cli.format {
        Format::Json => json_text.clone(),
        Format::Table => render::table(&payload),
    };
    // A closed pipe on stdout is not an error of the computation.
    let _ = writeln!(std::io::stdout(), "{rendered}");
    if let Some(dir) = std::env::var_os(manifest::OUT_DIR_VAR) {
        let mut digests = BTreeMap::new();
        for p in inputs {
            match manifest::digest_file(p) {
                Ok(d) => {
                    digests.insert(p.to_string(), d);
                }
                Err(e) => eprintln!("{}", json!({"warning": format!("cannot digest {p}: {e}")})),
            }
        }
        let m = manifest::RunManifest {
            toolkit_version: env!("CARGO_PKG_VERSION"),
            argv: argv[1..].to_vec(),
            seed: cli.seed,
            input_digests: digests,
            wall_clock_ms: started.elapsed().as_millis(),
            result_digest: manifest::sha256_hex(json_text.as_bytes()),
        };
        if let Err(e) = manifest::write(std::path::Path::new(&dir), &(json_text + "\n"), &m) {
            eprintln!("{}", json!({"error": "OutputError", "message": e.to_string()}));
            return ExitCode::from(1);
        }
    }
    let failed_suite = matches!(cli.command, Command::Verify { .. }) && payload["passed"] == json!(false);
    if failed_suite {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
