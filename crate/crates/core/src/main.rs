//! Command-line interface: core graphs, Whitehead edge sets, functor
//! application, decomposition, the surjectivity solver, the eight-case
//! verification, stencil classes, primitivity and basis rewriting.
//!
//! Exit codes: 0 success/positive, 1 negative, 2 inconclusive, 64 usage
//! errors, 65 domain errors.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use stallings::analysis;
use stallings::coords;
use stallings::fgr::FgrObject;
use stallings::graph::LabeledGraph;
use stallings::jsonio::{
    self, DecompositionDto, ForestDto, GraphDto, MorphismDto, ObjectDto, ProblemDto, StepDto,
};
use stallings::partition::{decompose, LexPicker};
use stallings::solver::{self, render_report, Picker, SolveOptions, Verdict};
use stallings::words::{Substitution, Word};

#[derive(Parser)]
#[command(
    name = "stallings",
    version,
    about = "Core graphs of free-group subgroups and surjectivity case analysis",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SolverFlags {
    /// maximum number of case nodes
    #[arg(long, default_value_t = 512)]
    budget: usize,
    /// split schedule: lex or paper
    #[arg(long, default_value = "lex")]
    picker: String,
    /// image-length bound for equivalence/containment witnesses
    #[arg(long, default_value_t = 2)]
    max_witness_len: usize,
    /// expand frontier waves concurrently (same result as sequential)
    #[arg(long)]
    parallel: bool,
}

impl SolverFlags {
    fn options(&self) -> Result<SolveOptions, String> {
        let picker = match self.picker.as_str() {
            "lex" => Picker::Lex,
            "paper" => Picker::Scripted(coords::case_analysis_script()),
            other => return Err(format!("unknown picker {other:?} (use lex or paper)")),
        };
        Ok(SolveOptions {
            budget: self.budget,
            max_witness_len: self.max_witness_len,
            picker,
            parallel: self.parallel,
        })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Fold and trim a subgroup's wedge of generators to its core graph
    Core {
        /// comma-separated generator words, e.g. "b,abA"
        #[arg(long)]
        subgroup: String,
        /// emit DOT instead of JSON
        #[arg(long)]
        dot: bool,
    },
    /// Whitehead edge set of a subgroup graph or of a single word's graph
    Whitehead {
        #[arg(long, conflicts_with = "word")]
        subgroup: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Apply generator images to a word, or push a subgroup graph through
    /// the edge-subdivision functor and re-core
    Apply {
        /// images like "a=~u,b=uv"
        #[arg(long)]
        images: String,
        #[arg(long, conflicts_with = "subgroup")]
        word: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Decompose a homomorphism into folding morphisms until saturation
    Decompose {
        #[arg(long)]
        images: String,
        /// domain object JSON; defaults to no restrictions over the image keys
        #[arg(long)]
        object: Option<String>,
    },
    /// Solve a surjectivity problem from a problem JSON file ("-" = stdin)
    Solve {
        #[arg(long)]
        problem: String,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Verify the eight-case analysis of ⟨bbaba⁻¹⟩ < ⟨b, aba⁻¹⟩
    VerifyCounterexample {
        /// also write the forest JSON to this path
        #[arg(long, value_name = "OUT.JSON")]
        json: Option<String>,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Explore the maximal stencil classes of a word's cycle graph
    StencilClasses {
        #[arg(long)]
        word: Option<String>,
        /// domain object JSON; defaults to no restrictions
        #[arg(long)]
        object: Option<String>,
        /// start from the eight coordinate roots (for words in ⟨b, aba⁻¹⟩)
        #[arg(long)]
        via_coc: bool,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        flags: SolverFlags,
    },
    /// Rank-2 primitivity by Whitehead length reduction
    Primitive {
        #[arg(long)]
        word: String,
    },
    /// Express a word in a free basis of a subgroup
    Rewrite {
        #[arg(long)]
        word: String,
        /// comma-separated basis words
        #[arg(long)]
        subgroup: String,
    },
}

fn parse_subgroup(s: &str) -> Result<Vec<Word>, String> {
    let sep = if s.contains(';') { ';' } else { ',' };
    s.split(sep)
        .filter(|p| !p.trim().is_empty())
        .map(|p| Word::parse(p).map_err(|e| e.to_string()))
        .collect()
}

fn domain_err(e: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(65)
}

/// Writes to stdout, exiting quietly (the conventional 141) when the
/// downstream reader has gone away.
fn emit(text: std::fmt::Arguments) {
    use std::io::Write;
    if std::io::stdout().write_fmt(text).is_err() {
        std::process::exit(141);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

macro_rules! outln {
    ($($arg:tt)*) => { out!("{}\n", format_args!($($arg)*)) };
}

fn parse_object_flag(text: Option<String>, fallback: FgrObject) -> Result<FgrObject, String> {
    match text {
        Some(text) => serde_json::from_str::<ObjectDto>(&text)
            .map_err(|e| e.to_string())
            .and_then(|d| d.to_object().map_err(|e| e.to_string())),
        None => Ok(fallback),
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Core { subgroup, dot } => {
            let result = parse_subgroup(&subgroup)
                .and_then(|g| LabeledGraph::subgroup(&g).map_err(|e| e.to_string()))
                .and_then(|g| g.canonical_form().map_err(|e| e.to_string()));
            match result {
                Ok((canon, _)) => {
                    if dot {
                        out!("{}", jsonio::graph_to_dot(&canon));
                    } else {
                        outln!(
                            "{}",
                            serde_json::to_string_pretty(&GraphDto::from_graph(&canon)).unwrap()
                        );
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => domain_err(e),
            }
        }
        Command::Whitehead {
            subgroup,
            word,
            json,
        } => {
            let generators = match (subgroup, word) {
                (Some(s), None) => parse_subgroup(&s),
                (None, Some(w)) => Word::parse(&w).map(|w| vec![w]).map_err(|e| e.to_string()),
                _ => Err("need exactly one of --subgroup or --word".to_owned()),
            };
            let set = match generators
                .and_then(|g| LabeledGraph::subgroup(&g).map_err(|e| e.to_string()))
            {
                Ok(g) => g.whitehead(),
                Err(e) => return domain_err(e),
            };
            if json {
                let pairs: Vec<[String; 2]> = set
                    .iter()
                    .map(|p| [p.first().token(), p.second().token()])
                    .collect();
                outln!("{}", serde_json::to_string(&pairs).unwrap());
            } else {
                outln!("{set}");
            }
            ExitCode::SUCCESS
        }
        Command::Apply {
            images,
            word,
            subgroup,
        } => {
            let map = match Substitution::parse(&images) {
                Ok(m) => m,
                Err(e) => return domain_err(e),
            };
            match (word, subgroup) {
                (Some(w), None) => match Word::parse(&w).and_then(|w| map.apply(&w)) {
                    Ok(image) => {
                        outln!("{image}");
                        ExitCode::SUCCESS
                    }
                    Err(e) => domain_err(e),
                },
                (None, Some(s)) => {
                    let result = parse_subgroup(&s)
                        .and_then(|g| LabeledGraph::subgroup(&g).map_err(|e| e.to_string()))
                        .and_then(|g| {
                            stallings::fgr::core_functor_image(&map, &g).map_err(|e| e.to_string())
                        })
                        .and_then(|g| g.canonical_form().map_err(|e| e.to_string()));
                    match result {
                        Ok((g, _)) => {
                            outln!(
                                "{}",
                                serde_json::to_string_pretty(&GraphDto::from_graph(&g)).unwrap()
                            );
                            ExitCode::SUCCESS
                        }
                        Err(e) => domain_err(e),
                    }
                }
                _ => domain_err("need exactly one of --word or --subgroup"),
            }
        }
        Command::Decompose { images, object } => {
            let map = match Substitution::parse(&images) {
                Ok(m) => m,
                Err(e) => return domain_err(e),
            };
            let fallback = FgrObject::unrestricted(map.domain().collect());
            let obj = match parse_object_flag(object, fallback) {
                Ok(o) => o,
                Err(e) => return domain_err(e),
            };
            match decompose(&map, &obj, &mut LexPicker) {
                Ok((chain, residual)) => {
                    let dto = DecompositionDto {
                        steps: chain.iter().map(StepDto::from_folding).collect(),
                        residual: MorphismDto::from_map(&residual),
                    };
                    outln!("{}", serde_json::to_string_pretty(&dto).unwrap());
                    ExitCode::SUCCESS
                }
                Err(e) => domain_err(e),
            }
        }
        Command::Solve {
            problem,
            json,
            flags,
        } => {
            let text = if problem == "-" {
                use std::io::Read;
                let mut buf = String::new();
                if let Err(e) = std::io::stdin().read_to_string(&mut buf) {
                    return domain_err(e);
                }
                buf
            } else {
                match std::fs::read_to_string(&problem) {
                    Ok(t) => t,
                    Err(e) => return domain_err(e),
                }
            };
            let parsed = match serde_json::from_str::<ProblemDto>(&text)
                .map_err(|e| e.to_string())
                .and_then(|d| d.to_problem().map_err(|e| e.to_string()))
            {
                Ok(p) => p,
                Err(e) => return domain_err(e),
            };
            let opts = match flags.options() {
                Ok(o) => o,
                Err(e) => return domain_err(e),
            };
            match solver::solve(parsed, &opts) {
                Ok(forest) => {
                    if json {
                        outln!(
                            "{}",
                            serde_json::to_string_pretty(&jsonio::forest_to_dto(&forest)).unwrap()
                        );
                    } else {
                        out!("{}", render_report(&forest));
                    }
                    verdict_code(forest.verdict)
                }
                Err(e) => domain_err(e),
            }
        }
        Command::VerifyCounterexample { json, flags } => {
            let opts = match flags.options() {
                Ok(o) => o,
                Err(e) => return domain_err(e),
            };
            match coords::verify_counterexample(&opts) {
                Ok(forest) => {
                    out!("{}", render_report(&forest));
                    if let Some(path) = json {
                        let dto: ForestDto = jsonio::forest_to_dto(&forest);
                        if let Err(e) =
                            std::fs::write(&path, serde_json::to_string_pretty(&dto).unwrap())
                        {
                            return domain_err(e);
                        }
                    }
                    verdict_code(forest.verdict)
                }
                Err(e) => domain_err(e),
            }
        }
        Command::StencilClasses {
            word,
            object,
            via_coc,
            json,
            flags,
        } => {
            let opts = match flags.options() {
                Ok(o) => o,
                Err(e) => return domain_err(e),
            };
            let roots = if via_coc {
                match coords::counterexample_word_roots(word.as_deref()) {
                    Ok(r) => r,
                    Err(e) => return domain_err(e),
                }
            } else {
                let Some(word) = word else {
                    return domain_err("--word is required without --via-coc");
                };
                let parsed = match Word::parse(&word) {
                    Ok(w) => w,
                    Err(e) => return domain_err(e),
                };
                let graph = match LabeledGraph::subgroup(std::slice::from_ref(&parsed)) {
                    Ok(g) => g,
                    Err(e) => return domain_err(e),
                };
                let obj = match parse_object_flag(object, FgrObject::unrestricted(parsed.gens())) {
                    Ok(o) => o,
                    Err(e) => return domain_err(e),
                };
                vec![("1".to_owned(), graph, obj)]
            };
            match analysis::explore_stencil_classes(roots, &opts) {
                Ok(classes) => {
                    if json {
                        let dto: Vec<serde_json::Value> = classes
                            .maximal
                            .iter()
                            .map(|c| {
                                serde_json::json!({
                                    "label": c.label,
                                    "graph": GraphDto::from_graph(&c.graph),
                                    "object": ObjectDto::from_object(&c.object),
                                })
                            })
                            .collect();
                        outln!(
                            "{}",
                            serde_json::json!({
                                "closed": classes.closed,
                                "leaves": classes.leaves,
                                "maximal": dto,
                            })
                        );
                    } else {
                        outln!(
                            "{} stencil leaves, {} maximal classes, closed: {}",
                            classes.leaves,
                            classes.maximal.len(),
                            classes.closed
                        );
                        for c in &classes.maximal {
                            let words: Vec<String> = c
                                .graph
                                .spanning_basis()
                                .unwrap_or_default()
                                .iter()
                                .map(|w| w.to_string())
                                .collect();
                            outln!(
                                "  case {}: Γ = ⟨{}⟩, N = {}",
                                c.label,
                                words.join(", "),
                                c.object.restrictions()
                            );
                        }
                    }
                    if classes.closed {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(2)
                    }
                }
                Err(e) => domain_err(e),
            }
        }
        Command::Primitive { word } => match Word::parse(&word)
            .map_err(|e| e.to_string())
            .and_then(|w| analysis::is_primitive_rank2(&w).map_err(|e| e.to_string()))
        {
            Ok(true) => {
                outln!("primitive");
                ExitCode::SUCCESS
            }
            Ok(false) => {
                outln!("not primitive");
                ExitCode::from(1)
            }
            Err(e) => domain_err(e),
        },
        Command::Rewrite { word, subgroup } => {
            let result = Word::parse(&word).map_err(|e| e.to_string()).and_then(|w| {
                parse_subgroup(&subgroup).and_then(|basis| {
                    analysis::rewrite_in_subgroup_basis(&w, &basis).map_err(|e| e.to_string())
                })
            });
            match result {
                Ok(Some(expr)) => {
                    outln!("{expr}");
                    ExitCode::SUCCESS
                }
                Ok(None) => {
                    outln!("not a member");
                    ExitCode::from(1)
                }
                Err(e) => domain_err(e),
            }
        }
    }
}

fn verdict_code(v: Verdict) -> ExitCode {
    match v {
        Verdict::Positive => ExitCode::SUCCESS,
        Verdict::Negative => ExitCode::from(1),
        Verdict::Inconclusive => ExitCode::from(2),
    }
}

fn main() -> ExitCode {
    match Cli::try_parse() {
        Ok(cli) => run(cli),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                out!("{e}");
                ExitCode::SUCCESS
            } else {
                eprint!("{e}");
                ExitCode::from(64)
            }
        }
    }
}
