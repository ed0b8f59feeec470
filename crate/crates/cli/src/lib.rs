//! Command-line front end. `run` returns the process exit status: 0 on
//! success, 1 on unsupported input or a failed check, 2 on malformed input.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use seifert_core::alexander::{has_symmetric_coefficients, reduced_alexander};
use seifert_core::classify::{
    analyze_link, classify_reduced, corpus_check, enumerate_phi, group_by_reflection, phi_tree_count, CheckRow,
};
use seifert_core::diagram::{parse_pd, Diagram};
use seifert_core::digraph::{count_arborescences_matrixtree, reduce, PlanarDigraph};
use seifert_core::error::Error;
use seifert_core::io::{load_corpus, parse_diagram_file};
use seifert_core::linkgraphs::{collapse_h, collapse_k, crowell_graph, crowell_polynomial, murasugi_digraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSUPPORTED: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "seifert", version, about = "Alexander polynomials and arborescence counts of alternating links")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Where the diagram comes from: an inline PD code or a named entry in a file.
#[derive(Debug, Clone, Args)]
pub struct Input {
    /// PD code such as "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "file", required_unless_present = "file")]
    pub pd: Option<String>,
    /// File of `name: PD` lines or JSON lines with `name` and `pd`.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Entry to use from `--file`; optional when the file has one entry.
    #[arg(long, requires = "file", conflicts_with = "pd")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Murasugi's white-region digraph M_D.
    M,
    /// Crowell's graph with the H arcs collapsed (H_D).
    H,
    /// Crowell's graph with the K arcs collapsed (K_D).
    K,
    /// Crowell's graph with H/K tags.
    Crowell,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Alexander polynomial from the Alexander matrix.
    Alexander {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Reduced Alexander polynomial as a sum over arborescences.
    Crowell {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        /// Root vertex (a crossing index).
        #[arg(long, default_value_t = 0)]
        root: usize,
    },
    /// Print one of the digraphs built from the diagram, as DOT or JSON.
    Graphs {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "m")]
        which: Which,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot_dir: Option<PathBuf>,
        /// Vertex for the arborescence count; all vertices when omitted.
        #[arg(long)]
        root: Option<usize>,
    },
    /// Full analysis: both polynomials, decomposition, reduction and verdicts.
    Classify {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
    },
    /// Reduce M_D by loop removals and contractions.
    Reduce {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// List reduced digraphs with few arborescences.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        max_trees: usize,
        #[arg(long, default_value_t = 4)]
        vcap: usize,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        dot_dir: Option<PathBuf>,
    },
    /// Run the invariant suite over the corpus (bundled, or SEIFERT_CORPUS).
    CorpusCheck {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    CheckFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_unsupported() => EXIT_UNSUPPORTED,
            CliError::CheckFailed(_) => EXIT_UNSUPPORTED,
            CliError::Core(_) | CliError::Io(_) => EXIT_MALFORMED,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(m) | CliError::CheckFailed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Runs a command, writing results to `out` and diagnostics to `err`.
pub fn run(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cmd, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn load_input(input: &Input) -> CliResult<(String, Diagram)> {
    if let Some(pd) = &input.pd {
        return Ok(("diagram".to_string(), parse_pd(pd)?));
    }
    let path = input.file.as_ref().expect("clap enforces one input source");
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let entries = parse_diagram_file(&text)?;
    let entry = match &input.name {
        Some(n) => entries
            .iter()
            .find(|e| &e.name == n)
            .ok_or_else(|| CliError::Io(format!("no entry named {n:?} in {}", path.display())))?,
        None if entries.len() == 1 => &entries[0],
        None => {
            return Err(CliError::Io(format!("{} has {} entries; pick one with --name", path.display(), entries.len())))
        }
    };
    Ok((entry.name.clone(), entry.diagram()?))
}

fn print_json(out: &mut dyn Write, v: &impl serde::Serialize) -> CliResult<()> {
    let s = serde_json::to_string_pretty(v).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out, "{s}")?;
    Ok(())
}

fn write_dot(dir: &Path, file: &str, g: &PlanarDigraph, name: &str) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(format!("{file}.dot"));
    std::fs::write(&path, g.to_dot(name)).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(())
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn dispatch(cmd: &Command, out: &mut dyn Write) -> CliResult<()> {
    match cmd {
        Command::Alexander { input, json } => {
            let (_, d) = load_input(input)?;
            let p = reduced_alexander(&d);
            let value = p.coeff(0);
            let degree = p.max_exp().unwrap_or(0);
            let symmetric = has_symmetric_coefficients(&p);
            if *json {
                print_json(
                    out,
                    &json!({ "delta0": p, "value_at_0": value.to_string(), "degree": degree, "symmetric": symmetric }),
                )?;
            } else {
                writeln!(out, "{p}")?;
                writeln!(out, "value at 0: {value}")?;
                writeln!(out, "degree: {degree}")?;
                writeln!(out, "symmetric coefficients: {}", yes_no(symmetric))?;
            }
        }
        Command::Crowell { input, json, root } => {
            let (_, d) = load_input(input)?;
            let cg = crowell_graph(&d)?;
            if *root >= cg.graph.num_vertices() {
                return Err(Error::Malformed(format!("root {root} out of range")).into());
            }
            let sum = crowell_polynomial(&cg, *root);
            let matches = sum.normalized == reduced_alexander(&d);
            if *json {
                print_json(
                    out,
                    &json!({ "root": root, "raw": sum.raw, "normalized": sum.normalized, "trees": sum.trees, "matches_alexander": matches }),
                )?;
            } else {
                writeln!(out, "{}", sum.normalized)?;
                writeln!(out, "raw sum: {}", sum.raw)?;
                writeln!(out, "arborescences at {root}: {}", sum.trees)?;
                writeln!(out, "matches Alexander matrix: {}", yes_no(matches))?;
            }
        }
        Command::Graphs { input, which, json, dot_dir, root } => {
            let (name, d) = load_input(input)?;
            let (label, g) = match which {
                Which::M => ("M_D", murasugi_digraph(&d)?),
                Which::H => ("H_D", collapse_h(&crowell_graph(&d)?)),
                Which::K => ("K_D", collapse_k(&crowell_graph(&d)?)),
                Which::Crowell => ("crowell", crowell_graph(&d)?.graph),
            };
            let roots: Vec<usize> = match root {
                Some(r) if *r >= g.num_vertices() => {
                    return Err(Error::Malformed(format!("root {r} out of range")).into())
                }
                Some(r) => vec![*r],
                None => (0..g.num_vertices()).collect(),
            };
            let trees: Vec<String> = roots.iter().map(|&v| count_arborescences_matrixtree(&g, v).to_string()).collect();
            if let Some(dir) = dot_dir {
                write_dot(dir, &format!("{name}-{label}"), &g, label)?;
            }
            if *json {
                print_json(out, &json!({ "which": label, "graph": g.to_json(), "roots": roots, "trees": trees }))?;
            } else {
                write!(out, "{}", g.to_dot(label))?;
                let pairs: Vec<String> = roots.iter().zip(&trees).map(|(v, t)| format!("{v}:{t}")).collect();
                writeln!(out, "// arborescences {}", pairs.join(" "))?;
            }
        }
        Command::Classify { input, json } => {
            let (_, d) = load_input(input)?;
            let r = analyze_link(&d)?;
            if *json {
                print_json(out, &r)?;
            } else {
                let mut s = String::new();
                let _ = writeln!(s, "Δ⁰ = {}", r.delta0);
                let _ = writeln!(s, "Δ⁰(0) = {}", r.value_at_0);
                let _ = writeln!(
                    s,
                    "degree = {} (c - s + 1 = {}, {})",
                    r.degree,
                    r.genus_check.expected,
                    if r.genus_check.pass { "pass" } else { "FAIL" }
                );
                let _ = writeln!(s, "pieces = {}", r.pieces.len());
                if let Some(c) = r.classification {
                    let _ = writeln!(s, "classification = {c:?}");
                }
                let _ = writeln!(s, "fibred: {}", verdict_text(r.fibred));
                let _ = writeln!(s, "unique incompressible Seifert surface: {}", verdict_text(r.unique_incompressible));
                for line in &r.rationale {
                    let _ = writeln!(s, "  - {line}");
                }
                write!(out, "{s}")?;
            }
        }
        Command::Reduce { input, json, dot_dir } => {
            let (name, d) = load_input(input)?;
            let m = murasugi_digraph(&d)?;
            let (r, trace) = reduce(&m);
            let class = classify_reduced(&r);
            if let Some(dir) = dot_dir {
                write_dot(dir, &format!("{name}-M_D"), &m, "M_D")?;
                write_dot(dir, &format!("{name}-reduced"), &r, "reduced")?;
            }
            if *json {
                print_json(
                    out,
                    &json!({ "start": m.to_json(), "trace": trace, "result": r.to_json(), "classification": class }),
                )?;
            } else {
                writeln!(out, "M_D: {} vertices, {} edges", m.num_vertices(), m.num_edges())?;
                for mv in &trace {
                    writeln!(out, "  {}", serde_json::to_string(mv).expect("serializable"))?;
                }
                writeln!(out, "reduced: {} vertices, {} edges", r.num_vertices(), r.num_edges())?;
                writeln!(out, "classification: {class:?}")?;
            }
        }
        Command::Enumerate { max_trees, vcap, json, dot_dir } => {
            if *max_trees == 0 || *vcap == 0 {
                return Err(Error::Malformed("--max-trees and --vcap must be positive".into()).into());
            }
            let graphs = enumerate_phi(*max_trees, *vcap);
            let groups = group_by_reflection(&graphs);
            if let Some(dir) = dot_dir {
                for (i, g) in graphs.iter().enumerate() {
                    write_dot(dir, &format!("phi-{i}"), g, &format!("phi-{i}"))?;
                }
            }
            let classes: Vec<serde_json::Value> = groups
                .iter()
                .map(|gr| {
                    let rep = gr.iter().copied().min_by_key(|&i| classify_reduced(&graphs[i])).expect("nonempty");
                    let g = &graphs[rep];
                    json!({
                        "members": gr,
                        "vertices": g.num_vertices(),
                        "edges": g.num_edges(),
                        "trees": phi_tree_count(g),
                        "face_lengths": g.face_lengths(),
                        "classification": classify_reduced(g),
                    })
                })
                .collect();
            if *json {
                let gs: Vec<_> = graphs.iter().map(|g| g.to_json()).collect();
                print_json(out, &json!({ "max_trees": max_trees, "vcap": vcap, "graphs": gs, "classes": classes }))?;
            } else {
                writeln!(out, "{} graphs, {} classes up to reflection", graphs.len(), groups.len())?;
                for (i, c) in classes.iter().enumerate() {
                    writeln!(
                        out,
                        "class {i}: {} vertices, {} edges, {} arborescences, faces {}, {} member(s), {}",
                        c["vertices"],
                        c["edges"],
                        c["trees"],
                        c["face_lengths"],
                        c["members"].as_array().map_or(0, |m| m.len()),
                        c["classification"].as_str().unwrap_or("?")
                    )?;
                }
            }
        }
        Command::CorpusCheck { json } => {
            let rows = corpus_check(&load_corpus()?)?;
            if *json {
                print_json(out, &rows)?;
            } else {
                write!(out, "{}", check_table(&rows))?;
            }
            let failed: Vec<&str> = rows.iter().filter(|r| !r.pass()).map(|r| r.name.as_str()).collect();
            if !failed.is_empty() {
                return Err(CliError::CheckFailed(format!("corpus check failed for {}", failed.join(", "))));
            }
        }
    }
    Ok(())
}

fn verdict_text(v: seifert_core::classify::Verdict) -> &'static str {
    use seifert_core::classify::Verdict;
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::NotDecided => "not decided by this criterion",
    }
}

fn check_table(rows: &[CheckRow]) -> String {
    let cell = |c: Option<bool>| match c {
        Some(true) => "ok",
        Some(false) => "FAIL",
        None => "-",
    };
    let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(4).max(4);
    let mut s = String::new();
    let _ = writeln!(s, "{:<width$}  delta0 symm mirror degree methods trees hk   lambda class  result", "name");
    for r in rows {
        let _ = writeln!(
            s,
            "{:<width$}  {:<6} {:<4} {:<6} {:<6} {:<7} {:<5} {:<4} {:<6} {:<6} {}",
            r.name,
            cell(Some(r.expected_delta0)),
            cell(Some(r.symmetric_coefficients)),
            cell(Some(r.mirror_invariant)),
            cell(r.degree_law),
            cell(r.method_equality),
            cell(r.tree_counts),
            cell(r.hk_invariant),
            cell(r.lambda_gamma),
            cell(r.classification),
            if r.pass() { "PASS" } else { "FAIL" }
        );
    }
    s
}
