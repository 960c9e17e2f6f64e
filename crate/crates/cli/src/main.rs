use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use psa_sigma::oracle::{self, Budget, CorpusSpec, SelftestConfig};
use psa_sigma::raag::{psa_complement_subspheres_with, sil_json};
use psa_sigma::{
    counting_check_psa, counting_check_raag, maximal_missing_subspheres, raag_sigma_membership, theorem_b,
    AdmissibleFamily, Character, CountingCheck, GraphFormat, MaximalFamilies, PsaGroup, RaagCharacter, Relation,
    SigmaDecider, SimplicialGraph, Subsphere,
};

/// Kept equal to `psa_sigma::SCHEMA_VERSION`; checked by a test.
const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (schema 1)");

/// Domain strings longer than this are cut in text output.
const TEXT_CAP: usize = 40;

#[derive(Parser)]
#[command(name = "psa-sigma", version = VERSION, about = "BNS invariants of pure symmetric automorphism groups of RAAGs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Auto,
    Json,
    Edgelist,
}

#[derive(clap::Args)]
struct GraphArg {
    /// Defining graph, as JSON or an edge list.
    #[arg(long)]
    graph: PathBuf,

    #[arg(long, value_enum, default_value_t = InputFormat::Auto)]
    graph_format: InputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// List the partial conjugations.
    Pcs(GraphArg),
    /// Print the defining presentation.
    Presentation(GraphArg),
    /// Classify every pair of generators with distinct acting letters.
    Pairs(GraphArg),
    /// List the maximal p-sets.
    Psets(GraphArg),
    /// List the maximal δ-p-sets.
    DeltaPsets(GraphArg),
    /// List the separating intersections of links.
    Sils(GraphArg),
    /// Decide whether a character of the automorphism group lies in Σ¹.
    Classify {
        #[command(flatten)]
        graph: GraphArg,
        /// Character as `{"<generator id>": "p/q", ...}`.
        #[arg(long)]
        character: PathBuf,
    },
    /// Decide whether a character of the RAAG itself lies in Σ¹.
    SigmaRaag {
        #[command(flatten)]
        graph: GraphArg,
        /// Character as `{"<vertex>": "p/q", ...}`.
        #[arg(long)]
        character: PathBuf,
    },
    /// Maximal missing subspheres of the RAAG and complement subspheres of
    /// the automorphism group.
    Subspheres(GraphArg),
    /// Check both inclusion–exclusion identities.
    Counting(GraphArg),
    /// Decide whether the automorphism group is itself a RAAG.
    TheoremB(GraphArg),
    /// Compare every engine against the brute-force oracles on a random corpus.
    Selftest {
        #[arg(long, default_value_t = SelftestConfig::default().seed)]
        seed: u64,
        /// Number of in-budget graphs to check.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest vertex count in the corpus.
        #[arg(long, default_value_t = 7)]
        vertices: usize,
        /// Random characters per graph.
        #[arg(long, default_value_t = 50)]
        characters: usize,
        /// Largest generator count for exhaustive searches.
        #[arg(long, default_value_t = Budget::default().max_generators)]
        budget: usize,
        /// Also write a JUnit XML report here.
        #[arg(long)]
        junit: Option<PathBuf>,
    },
    /// Print graphs from a seeded random stream.
    GenCorpus {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        vertices: usize,
        /// Edge probability as `p/q`.
        #[arg(long, default_value = "1/2")]
        edge_prob: String,
    },
}

/// A failure attributable to the input rather than the command line.
struct DomainError(String);

impl From<psa_sigma::Error> for DomainError {
    fn from(e: psa_sigma::Error) -> Self {
        DomainError(e.to_string())
    }
}

type Outcome = Result<(String, bool), DomainError>;

fn read(path: &Path) -> Result<String, DomainError> {
    std::fs::read_to_string(path).map_err(|e| DomainError(format!("{}: {e}", path.display())))
}

fn load_graph(arg: &GraphArg) -> Result<SimplicialGraph, DomainError> {
    let text = read(&arg.graph)?;
    let format = match arg.graph_format {
        InputFormat::Json => GraphFormat::Json,
        InputFormat::Edgelist => GraphFormat::EdgeList,
        InputFormat::Auto if text.trim_start().starts_with('{') => GraphFormat::Json,
        InputFormat::Auto => GraphFormat::EdgeList,
    };
    SimplicialGraph::parse(&text, format).map_err(|e| DomainError(format!("{}: {e}", arg.graph.display())))
}

fn load_group(arg: &GraphArg) -> Result<PsaGroup, DomainError> {
    Ok(PsaGroup::new(load_graph(arg)?))
}

fn cap(s: &str) -> String {
    if s.chars().count() <= TEXT_CAP {
        s.to_owned()
    } else {
        let mut out: String = s.chars().take(TEXT_CAP - 1).collect();
        out.push('…');
        out
    }
}

fn capped_id(psa: &PsaGroup, p: &psa_sigma::PartialConjugation) -> String {
    format!("{}:{}", psa.graph().name(p.letter), cap(&psa.graph().format_set(&p.domain)))
}

fn family_text(psa: &PsaGroup, f: &AdmissibleFamily) -> String {
    let side = |s: &[psa_sigma::PartialConjugation]| s.iter().map(|p| capped_id(psa, p)).collect::<Vec<_>>().join(" ");
    format!("{} | {}", side(&f.side1), side(&f.side2))
}

fn families_output(psa: &PsaGroup, families: &[AdmissibleFamily], format: Format) -> String {
    match format {
        Format::Json => json_line(&Value::Array(families.iter().map(|f| f.to_json(psa)).collect())),
        Format::Text => {
            let mut out = String::new();
            for (i, f) in families.iter().enumerate() {
                let _ = writeln!(out, "Q{}  {}", i + 1, family_text(psa, f));
            }
            if families.is_empty() {
                out.push_str("(none)\n");
            }
            out
        }
    }
}

fn json_line(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn counting_text(name: &str, c: &CountingCheck) -> String {
    match c.rhs {
        Some(rhs) => format!(
            "{name}: lhs {} rhs {} {}\n",
            c.lhs,
            rhs,
            if c.holds { "holds" } else { "FAILS" }
        ),
        None => format!("{name}: lhs {} (no families, holds vacuously)\n", c.lhs),
    }
}

fn subsphere_text(psa: &PsaGroup, s: &Subsphere) -> String {
    let support = s.to_json(psa)["support"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_str).map(cap).collect::<Vec<_>>().join(" "))
        .unwrap_or_default();
    format!("{:<6} dim {:>2}  {}\n", s.kind(), s.dimension(), support)
}

fn run(cli: &Cli) -> Outcome {
    let format = cli.format;
    let text = format == Format::Text;
    let ok = |s: String| Ok((s, true));
    match &cli.command {
        Command::Pcs(g) => {
            let psa = load_group(g)?;
            if text {
                let mut out = String::new();
                for p in psa.generators() {
                    let _ = writeln!(out, "{}", capped_id(&psa, p));
                }
                ok(out)
            } else {
                let ids: Vec<String> = psa.generators().iter().map(|p| psa.id(p)).collect();
                ok(json_line(&json!(ids)))
            }
        }
        Command::Presentation(g) => {
            let psa = load_group(g)?;
            let pres = psa.presentation();
            if !text {
                return ok(json_line(&psa.presentation_json(&pres)));
            }
            let gr = psa.graph();
            let mut out = format!("{} generators, {} relations\n", pres.generators.len(), pres.relations.len());
            for r in &pres.relations {
                match r {
                    Relation::Commutator(p, q) => {
                        let _ = writeln!(out, "[{}, {}]", capped_id(&psa, p), capped_id(&psa, q));
                    }
                    Relation::Delta {
                        letter,
                        first,
                        second,
                        partner,
                    } => {
                        let (a, b) = (gr.name(*letter), gr.name(*partner));
                        let (k, l) = (cap(&gr.format_set(first)), cap(&gr.format_set(second)));
                        let _ = writeln!(out, "[{a}:{k} {a}:{l}, {b}:{l}]");
                    }
                }
            }
            ok(out)
        }
        Command::Pairs(g) => {
            let psa = load_group(g)?;
            let mut rows = Vec::new();
            let mut out = String::new();
            for (i, p) in psa.generators().iter().enumerate() {
                for q in &psa.generators()[i + 1..] {
                    if p.letter == q.letter {
                        continue;
                    }
                    let case = psa.pair_case(p, q)?;
                    rows.push(json!({
                        "p": psa.id(p),
                        "q": psa.id(q),
                        "case": case.number(),
                        "commutes": case.commutes(),
                    }));
                    let _ = writeln!(
                        out,
                        "{:<44} {:<44} case {}  {}",
                        capped_id(&psa, p),
                        capped_id(&psa, q),
                        case.number(),
                        if case.commutes() { "commute" } else { "do not commute" }
                    );
                }
            }
            ok(if text { out } else { json_line(&Value::Array(rows)) })
        }
        Command::Psets(g) => {
            let psa = load_group(g)?;
            ok(families_output(&psa, &psa_sigma::maximal_psets(&psa), format))
        }
        Command::DeltaPsets(g) => {
            let psa = load_group(g)?;
            ok(families_output(&psa, &psa_sigma::maximal_delta_psets(&psa), format))
        }
        Command::Sils(g) => {
            let graph = load_graph(g)?;
            let sils = graph.find_sils();
            if text {
                let mut out = String::new();
                for s in &sils {
                    let _ = writeln!(
                        out,
                        "{} {} {}",
                        graph.name(s.a),
                        graph.name(s.b),
                        cap(&graph.format_set(&s.component))
                    );
                }
                if sils.is_empty() {
                    out.push_str("(none)\n");
                }
                ok(out)
            } else {
                ok(json_line(&Value::Array(sils.iter().map(|s| sil_json(&graph, s)).collect())))
            }
        }
        Command::Classify { graph, character } => {
            let psa = load_group(graph)?;
            let chi = Character::parse(&psa, &read(character)?)?;
            let verdict = SigmaDecider::new(&psa).membership(&psa, &chi);
            if !text {
                return ok(json_line(&verdict.to_json(&psa)));
            }
            let mut out = format!(
                "type: {}\nmembership: {}\n",
                verdict.character_type.as_str(),
                verdict.membership.as_str()
            );
            if let Some(reason) = verdict.reason {
                let _ = writeln!(out, "reason: {}", reason.as_str());
            }
            if let Some(w) = &verdict.witness {
                let _ = writeln!(out, "family ({}): {}", w.family.kind.as_str(), family_text(&psa, &w.family));
                out.push_str("epimorphism:\n");
                for (i, image) in w.epimorphism.images.iter().enumerate() {
                    let _ = writeln!(out, "  {} -> {}", capped_id(&psa, psa.generator(i)), image);
                }
            }
            ok(out)
        }
        Command::SigmaRaag { graph, character } => {
            let graph = load_graph(graph)?;
            let psi = RaagCharacter::parse(&graph, &read(character)?)?;
            let inside = raag_sigma_membership(&graph, &psi);
            let membership = if inside { "sigma" } else { "complement" };
            if text {
                ok(format!("membership: {membership}\n"))
            } else {
                ok(json_line(&json!({"membership": membership})))
            }
        }
        Command::Subspheres(g) => {
            let psa = load_group(g)?;
            let missing = maximal_missing_subspheres(psa.graph());
            let families = MaximalFamilies::new(&psa);
            let complement = psa_complement_subspheres_with(&families);
            if text {
                let mut out = String::from("missing subspheres of the RAAG:\n");
                for s in &missing {
                    out.push_str(&subsphere_text(&psa, s));
                }
                out.push_str("complement subspheres of the automorphism group:\n");
                for s in &complement {
                    out.push_str(&subsphere_text(&psa, s));
                }
                ok(out)
            } else {
                ok(json_line(&json!({
                    "raag": missing.iter().map(|s| s.to_json(&psa)).collect::<Vec<_>>(),
                    "psa": complement.iter().map(|s| s.to_json(&psa)).collect::<Vec<_>>(),
                })))
            }
        }
        Command::Counting(g) => {
            let psa = load_group(g)?;
            let raag = counting_check_raag(psa.graph());
            let pc = counting_check_psa(&psa);
            let holds = raag.holds && pc.holds;
            let out = if text {
                counting_text("raag", &raag) + &counting_text("psa", &pc)
            } else {
                json_line(&json!({"raag": raag.to_json(), "psa": pc.to_json()}))
            };
            if holds {
                ok(out)
            } else {
                Ok((out, false))
            }
        }
        Command::TheoremB(g) => {
            let psa = load_group(g)?;
            let report = psa_sigma::theorem_b_report(&psa)?;
            if !text {
                return ok(json_line(&report));
            }
            let verdict = theorem_b(&psa)?;
            let gr = psa.graph();
            let mut out = format!("is_raag: {}\n", verdict.is_raag);
            if let Some(s) = &verdict.sil {
                let _ = writeln!(
                    out,
                    "sil: {} {} {}",
                    gr.name(s.a),
                    gr.name(s.b),
                    cap(&gr.format_set(&s.component))
                );
            }
            if let Some(f) = &verdict.delta_family {
                let _ = writeln!(out, "delta family: {}", family_text(&psa, f));
            }
            out.push_str(&counting_text("raag", &counting_check_raag(gr)));
            out.push_str(&counting_text("psa", &counting_check_psa(&psa)));
            ok(out)
        }
        Command::Selftest {
            seed,
            count,
            vertices,
            characters,
            budget,
            junit,
        } => {
            if !(1..=9).contains(vertices) {
                return Err(DomainError(format!("vertex count {vertices} is outside 1..=9")));
            }
            let config = SelftestConfig {
                seed: *seed,
                graphs: *count,
                max_vertices: *vertices,
                characters_per_graph: *characters,
                budget: Budget::with_generators(*budget),
            };
            let report = oracle::selftest(&config);
            if let Some(path) = junit {
                std::fs::write(path, report.to_junit())
                    .map_err(|e| DomainError(format!("{}: {e}", path.display())))?;
            }
            let out = if text {
                let mut out = format!(
                    "seed {}: {} graphs checked, {} over budget, {} characters\n",
                    report.seed,
                    report.graphs_checked,
                    report.graphs_skipped.len(),
                    report.characters_checked
                );
                for check in oracle::CHECKS {
                    let fails = report.failures_for(check);
                    let runs = report.runs.get(check).copied().unwrap_or(0);
                    let _ = writeln!(
                        out,
                        "{:<20} {:>7} runs  {}",
                        check,
                        runs,
                        if fails == 0 { "ok".to_owned() } else { format!("{fails} FAILED") }
                    );
                }
                for f in &report.failures {
                    let _ = writeln!(out, "failure [{}] index {}: {} on {}", f.check, f.index, f.detail, f.graph);
                }
                out
            } else {
                json_line(&report.to_json())
            };
            Ok((out, report.passed()))
        }
        Command::GenCorpus {
            seed,
            count,
            vertices,
            edge_prob,
        } => {
            let bad = || DomainError(format!("edge probability `{edge_prob}` is not of the form p/q"));
            let (num, den) = edge_prob.split_once('/').ok_or_else(bad)?;
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            let den: u32 = den.trim().parse().map_err(|_| bad())?;
            let spec = CorpusSpec::new(*vertices, (num, den), *seed, *count)?;
            let graphs = (0..spec.count)
                .map(|i| oracle::random_graph(&spec, i))
                .collect::<Result<Vec<_>, _>>()?;
            if text {
                ok(graphs.iter().map(|g| g.to_edge_list()).collect::<Vec<_>>().join("\n"))
            } else {
                ok(json_line(&Value::Array(graphs.iter().map(|g| g.to_json_value()).collect())))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((out, success)) => {
            print!("{out}");
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(DomainError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_valid() {
        Cli::command().debug_assert();
    }

    #[test]
    fn version_tracks_schema() {
        assert!(VERSION.ends_with(&format!("(schema {})", psa_sigma::SCHEMA_VERSION)));
    }

    #[test]
    fn capping() {
        assert_eq!(cap("{a,b}"), "{a,b}");
        let long = format!("{{{}}}", (0..30).map(|i| format!("v{i}")).collect::<Vec<_>>().join(","));
        let c = cap(&long);
        assert_eq!(c.chars().count(), TEXT_CAP);
        assert!(c.ends_with('…'));
    }
}
