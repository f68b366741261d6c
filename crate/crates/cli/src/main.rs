use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use nonorient::abelian::Abelianization;
use nonorient::catalog::{self, SubgroupSpec};
use nonorient::coset::enumerate_cosets;
use nonorient::homology::{find_assignment_with, n31_twist_classes, MatrixRefuter, SearchOptions};
use nonorient::klein::{k_out, k_y_conjugacy_classes};
use nonorient::surface::{abelian_rank, max_chain, max_disjoint_system, ChainConstraint, SurfaceType};
use nonorient::verifier::{self, check_endomorphism, extract_out_invariant, EndomorphismSpec, Overall};
use nonorient::{ConsequenceVerdict, Error, Presentation, Prover, Word};

const EXIT_OK: u8 = 0;
const EXIT_NEGATIVE: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "nonorient", version, about = "Presentations, normal forms and surface calculus for mapping class groups of nonorientable surfaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List catalog presentations or print one
    Presentations {
        #[command(subcommand)]
        action: PresentationsAction,
    },
    /// Check that a generator map is an endomorphism
    Verify {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
        /// Also extract the odd-genus invariant m from V -> D V
        #[arg(long)]
        extract: bool,
        /// Seed for the mod-2 assignment search
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Outer automorphism group of Mod(N_{2,1}) by bounded search
    OutKlein {
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Longest maximal chain in closed N_G
    Chains {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        y_centralizer: bool,
    },
    /// Maximal abelian rank and disjoint circle systems in closed N_G
    Rank {
        #[arg(long)]
        genus: u32,
    },
    /// Orientation double cover of a surface literal such as N3,1
    Cover {
        #[arg(long)]
        surface: String,
    },
    /// Abelianization of a catalog presentation, optionally of one word
    Abelianize {
        #[arg(long)]
        presentation: String,
        #[arg(long)]
        word: Option<String>,
    },
    /// Todd-Coxeter index of a subgroup
    Cosets {
        #[arg(long)]
        presentation: String,
        /// Subgroup generators separated by commas; `L` names <A1, A3, B, W> in n31v
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long, default_value_t = 10_000)]
        max_cosets: usize,
    },
    /// Conjugacy classes of Y-homeomorphisms in Mod(N_{2,1})
    Yclasses {
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
}

#[derive(Subcommand, Debug)]
enum PresentationsAction {
    List,
    Show { name: String },
}

#[derive(Serialize)]
struct RunReport {
    command: String,
    inputs: Value,
    results: Value,
    budgets_spent: Vec<usize>,
    version: String,
}

struct Outcome {
    report: RunReport,
    summary: String,
    code: u8,
}

fn outcome(command: &str, inputs: Value, results: Value, budgets: Vec<usize>, summary: String, code: u8) -> Outcome {
    Outcome {
        report: RunReport {
            command: command.to_string(),
            inputs,
            results,
            budgets_spent: budgets,
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        summary,
        code,
    }
}

/// Failures before anything was computed map to the usage exit code.
struct Usage(String);

impl From<Error> for Usage {
    fn from(e: Error) -> Self {
        Usage(e.to_string())
    }
}

fn verdict_json(v: &ConsequenceVerdict) -> Value {
    match v {
        ConsequenceVerdict::Certified(c) => json!({"verdict": v.label(), "certificate_length": c.len()}),
        ConsequenceVerdict::RefutedByAbelianization(img) => json!({
            "verdict": v.label(),
            "witness": img.class.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "quotient": img.invariants.to_string(),
        }),
        ConsequenceVerdict::RefutedByMatrixRep(id) => json!({"verdict": v.label(), "witness": id}),
        ConsequenceVerdict::Unknown { spent } => json!({"verdict": v.label(), "spent": spent}),
    }
}

fn spent(v: &ConsequenceVerdict) -> usize {
    match v {
        ConsequenceVerdict::Unknown { spent } => *spent,
        _ => 0,
    }
}

/// The V-form carries a mod-2 matrix refuter found by a seeded search.
fn prover_for(p: &Presentation, seed: u64) -> Result<Prover, Usage> {
    let mut prover = Prover::new(p);
    if p.name() == "n31v" {
        let opts = SearchOptions { seed, max_tries: None };
        let assignment = find_assignment_with(p, &n31_twist_classes(), 3, opts)?
            .ok_or_else(|| Usage("no mod-2 assignment for n31v".into()))?;
        prover.add_refuter(Box::new(MatrixRefuter::new(assignment, p)?));
    }
    Ok(prover)
}

fn run(cmd: Command) -> Result<Outcome, Usage> {
    match cmd {
        Command::Presentations { action: PresentationsAction::List } => {
            let entries: Vec<Value> = catalog::catalog()
                .iter()
                .map(|e| {
                    json!({
                        "name": e.name(),
                        "provenance": e.provenance,
                        "generators": e.presentation.generators(),
                        "relators": e.presentation.relators().len(),
                    })
                })
                .collect();
            let summary = catalog::catalog().iter().map(|e| e.name().to_string()).collect::<Vec<_>>().join(", ");
            Ok(outcome("presentations list", json!({}), json!(entries), vec![], summary, EXIT_OK))
        }
        Command::Presentations { action: PresentationsAction::Show { name } } => {
            let e = catalog::by_name(&name)?;
            let p = &e.presentation;
            let relators: Vec<Value> = e
                .relator_labels
                .iter()
                .zip(p.relators())
                .enumerate()
                .map(|(i, (l, r))| {
                    let tags: Vec<&str> = e.tags.iter().filter(|(j, _)| *j == i).map(|(_, t)| t.as_str()).collect();
                    json!({"label": l, "word": p.show(r), "tags": tags})
                })
                .collect();
            let words: Vec<Value> =
                e.distinguished.iter().map(|(n, w)| json!({"name": n, "word": p.show(w)})).collect();
            let results = json!({
                "provenance": e.provenance,
                "generators": p.generators(),
                "relators": relators,
                "distinguished": words,
                "text": p.to_text(),
            });
            Ok(outcome("presentations show", json!({"name": name}), results, vec![], p.to_text(), EXIT_OK))
        }
        Command::Verify { presentation, map, budget, extract, seed } => {
            if budget == 0 {
                return Err(Error::NonPositiveBudget.into());
            }
            let entry = catalog::by_name(&presentation)?;
            let text = fs::read_to_string(&map).map_err(|e| Usage(format!("cannot read {}: {e}", map.display())))?;
            let spec = EndomorphismSpec::from_map_file(entry.clone(), &text)?;
            let prover = prover_for(&entry.presentation, seed)?;
            let check = check_endomorphism(&spec, &prover, budget)?;
            let p = spec.presentation();
            let per_relator: Vec<Value> = check
                .per_relator
                .iter()
                .map(|c| {
                    let mut v = verdict_json(&c.verdict);
                    v["relator"] = json!(c.relator);
                    v["image"] = json!(p.show(&c.image));
                    v
                })
                .collect();
            let budgets: Vec<usize> = check.per_relator.iter().map(|c| spent(&c.verdict)).collect();
            let mut invariant_m = Value::Null;
            let mut extract_error = Value::Null;
            if extract && check.overall == Overall::Certified {
                match extract_out_invariant(&spec, &prover, budget, verifier::DEFAULT_WINDOW) {
                    Ok(x) => invariant_m = json!(x.m),
                    Err(e) => extract_error = json!(e.to_string()),
                }
            }
            let results = json!({
                "presentation": presentation,
                "per_relator": per_relator,
                "overall": check.overall.label(),
                "invariant_m": invariant_m,
                "extract_error": extract_error,
            });
            let code = match check.overall {
                Overall::Certified => EXIT_OK,
                Overall::Refuted => EXIT_NEGATIVE,
                Overall::Unknown => EXIT_UNKNOWN,
            };
            let mut summary = format!("{}: {}", presentation, check.overall.label());
            if let Some(m) = invariant_m.as_i64() {
                summary.push_str(&format!(", m = {m}"));
            }
            let inputs = json!({
                "presentation": presentation,
                "map": spec.to_map_text(),
                "budget": budget,
                "extract": extract,
                "seed": seed,
            });
            Ok(outcome("verify", inputs, results, budgets, summary, code))
        }
        Command::OutKlein { bound } => {
            let t = k_out(bound)?;
            let reps: Vec<Value> = t
                .representatives
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    json!({
                        "y": [a.y.m, a.y.n],
                        "t": [a.t.m, a.t.n],
                        "order": t.element_order(i),
                    })
                })
                .collect();
            let results = json!({
                "order": t.order(),
                "automorphisms_in_box": t.automorphisms,
                "representatives": reps,
                "table": t.table,
                "klein_four": t.is_klein_four(),
            });
            let summary = format!("Out has order {} (Klein four-group: {})", t.order(), t.is_klein_four());
            Ok(outcome("out-klein", json!({"bound": bound}), results, vec![], summary, EXIT_OK))
        }
        Command::Yclasses { bound } => {
            let reps = k_y_conjugacy_classes(bound)?;
            let list: Vec<[i64; 2]> = reps.iter().map(|u| [u.m, u.n]).collect();
            let summary = format!("{} classes: {}", reps.len(), reps.iter().map(|u| u.to_string()).collect::<Vec<_>>().join(" "));
            Ok(outcome("yclasses", json!({"bound": bound}), json!({"classes": list}), vec![], summary, EXIT_OK))
        }
        Command::Chains { genus, y_centralizer } => {
            let constraint =
                if y_centralizer { ChainConstraint::MustContainKleinBottlePiece } else { ChainConstraint::None };
            let m = max_chain(genus, constraint)?;
            let pieces: Vec<String> = m.witness.pieces.iter().map(|p| p.to_string()).collect();
            let results = json!({"max_chain": m.length, "constraint": format!("{constraint:?}"), "witness_pieces": pieces, "witness": m.witness});
            let summary = format!("longest maximal chain in N{genus}: {}", m.length);
            Ok(outcome("chains", json!({"genus": genus, "y_centralizer": y_centralizer}), results, vec![], summary, EXIT_OK))
        }
        Command::Rank { genus } => {
            let rank = abelian_rank(genus)?;
            let mut results = json!({"value": rank});
            if genus >= 5 {
                let d = max_disjoint_system(genus)?;
                let pieces: Vec<String> = d.witness.pieces.iter().map(|p| p.to_string()).collect();
                results["disjoint_system"] = json!({
                    "count": d.count,
                    "max_circles": d.max_circles,
                    "exceptional_piece": d.exceptional_piece().map(|p| p.to_string()),
                    "witness_pieces": pieces,
                });
            }
            Ok(outcome("rank", json!({"genus": genus}), results, vec![], format!("rank for N{genus}: {rank}"), EXIT_OK))
        }
        Command::Cover { surface } => {
            let s: SurfaceType = surface.parse()?;
            let c = s.double_cover()?;
            let results = json!({"cover": c.to_string(), "euler": s.euler(), "cover_euler": c.euler()});
            Ok(outcome("cover", json!({"surface": surface}), results, vec![], format!("{s} is double covered by {c}"), EXIT_OK))
        }
        Command::Abelianize { presentation, word } => {
            let e = catalog::by_name(&presentation)?;
            let p = &e.presentation;
            let ab = Abelianization::of(p);
            let mut results = json!({"invariants": ab.invariants().to_string()});
            let mut summary = ab.invariants().to_string();
            let mut code = EXIT_OK;
            if let Some(w) = &word {
                let img = ab.image(&p.parse_word(w)?);
                results["class"] = json!(img.class.iter().map(|x| x.to_string()).collect::<Vec<_>>());
                results["zero"] = json!(img.is_zero());
                summary.push_str(&format!("; class of `{w}` is {}", if img.is_zero() { "zero" } else { "nonzero" }));
                if !img.is_zero() {
                    code = EXIT_NEGATIVE;
                }
            }
            Ok(outcome("abelianize", json!({"presentation": presentation, "word": word}), results, vec![], summary, code))
        }
        Command::Cosets { presentation, subgroup, max_cosets } => {
            let e = catalog::by_name(&presentation)?;
            let gens: Vec<Word> = if subgroup.trim() == "L" {
                if e.name() != "n31v" {
                    return Err(Usage("subgroup L is defined in n31v only".into()));
                }
                SubgroupSpec::twist_subgroup_l().generators
            } else {
                subgroup
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| e.presentation.parse_word(s))
                    .collect::<Result<_, _>>()?
            };
            let shown: Vec<String> = gens.iter().map(|w| e.presentation.show(w)).collect();
            let inputs = json!({"presentation": presentation, "subgroup": shown, "max_cosets": max_cosets});
            match enumerate_cosets(&e.presentation, &gens, max_cosets) {
                Ok(t) => {
                    let results = json!({"index": t.index, "defined": t.defined, "table": t.table});
                    Ok(outcome("cosets", inputs, results, vec![t.defined], format!("index {}", t.index), EXIT_OK))
                }
                Err(Error::CosetOverflow(n)) => {
                    let results = json!({"overflow": true, "max_cosets": n});
                    Ok(outcome("cosets", inputs, results, vec![n], format!("overflow after {n} cosets"), EXIT_UNKNOWN))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(o) => {
            println!("{}", serde_json::to_string_pretty(&o.report).expect("report serializes"));
            eprintln!("{}", o.summary);
            ExitCode::from(o.code)
        }
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
