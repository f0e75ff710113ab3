use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use fibcheck::category::{nerve, parse_cat, parse_functor, theorem_b_report, DEFAULT_NERVE_CAP};
use fibcheck::homology::{homology, induced_map};
use fibcheck::lifting::{certify_fibration_class, default_cap, transport_homology, Direction, Verdict};
use fibcheck::simplicial::ssx::{parse_smap, parse_ssx, sset_to_value, FormatError, SsxDocument};
use fibcheck::simplicial::{restrict_over_simplex, vertex_subfiber, SMap, SimplicialSet};
use fibcheck::verify::{digest, ltg_check, realization_fibration_certificate, QUALIFIER};

const INPUT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "fibcheck", version, about = "Fibration certificates for finite simplicial sets and categories")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inner, cartesian and cocartesian certificates for a map.
    Certify {
        map: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// The fiber over a simplex of the base and its two end fibers.
    Fibers {
        map: PathBuf,
        #[arg(long)]
        simplex: String,
    },
    /// Fiber transport on homology along an edge of the base.
    Transport {
        map: PathBuf,
        #[arg(long)]
        edge: String,
        #[arg(long)]
        backward: bool,
    },
    /// Per-simplex fiber comparison over the whole base.
    Realization {
        map: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Comma category pipeline for a functor.
    TheoremB {
        functor: PathBuf,
        /// Nerve truncation degree for categories with cycles.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Certifies P, pulls it back along F and checks the consequences.
    LtgCheck {
        #[arg(long, num_args = 2, value_names = ["F", "P"], required = true)]
        cospan: Vec<PathBuf>,
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Integral homology of a simplicial set.
    Homology { object: PathBuf },
    /// Nerve of a finite category as an SSX document.
    Nerve {
        cat: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format {
        path: String,
        #[source]
        source: Box<FormatError>,
    },
    #[error("{0}")]
    Input(String),
}

struct Output {
    json: Value,
    text: String,
    code: u8,
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Certified => 0,
        Verdict::Refuted => 1,
        Verdict::Inconclusive => 2,
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Read { path: path.display().to_string(), source })
}

fn load_map(path: &Path) -> Result<SMap, CliError> {
    parse_smap(&read(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source: Box::new(source) })
}

fn load_set(path: &Path) -> Result<SimplicialSet, CliError> {
    match parse_ssx(&read(path)?) {
        Ok(SsxDocument::Set(x)) => Ok(x),
        Ok(SsxDocument::Map(_)) => Err(CliError::Input(format!("{}: expected a simplicial set, found a map", path.display()))),
        Err(source) => Err(CliError::Format { path: path.display().to_string(), source: Box::new(source) }),
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn certify(map: &Path, cap: Option<usize>) -> Result<Output, CliError> {
    let p = load_map(map)?;
    let cap = cap.unwrap_or_else(|| default_cap(&p));
    let class = certify_fibration_class(&p, cap);
    let verdict = class.verdict();
    let mut text = format!("certify: {} ({QUALIFIER})\n  input sha256 {}\n  cap {cap}\n", verdict.as_str(), digest(&p));
    for (name, c) in [("inner", &class.inner), ("cartesian", &class.cartesian), ("cocartesian", &class.cocartesian)] {
        text += &format!("  {name}: {} ({} problems)\n", c.verdict.as_str(), c.problems_checked);
        if let Some(w) = &c.witness {
            text += &format!("    witness: {}\n", w.describe());
        }
        for n in &c.notes {
            text += &format!("    note: {n}\n");
        }
    }
    let json = json!({
        "kind": "certify",
        "qualifier": QUALIFIER,
        "verdict": verdict,
        "input_sha256": digest(&p),
        "cap": cap,
        "certificates": class.to_json(),
    });
    Ok(Output { json, text, code: verdict_code(verdict) })
}

fn fibers(map: &Path, id: &str) -> Result<Output, CliError> {
    let p = load_map(map)?;
    let sigma = p.target().find_any(id).map_err(input)?;
    let n = sigma.degree();
    let r = restrict_over_simplex(&p, sigma).map_err(input)?;
    let h = homology(&r.object);
    let mut ends = Vec::new();
    let mut text = format!("fiber over {id} (degree {n}): counts {:?}, homology {}\n", r.object.counts(), h.render_reduced());
    for (label, k) in [("initial", 0), ("last", n)] {
        let (fiber, incl) = vertex_subfiber(&r.to_simplex, k).map_err(input)?;
        let fh = homology(&fiber);
        let iso = induced_map(&incl, &fh, &h).is_iso();
        let vertex = p.target().describe(p.target().vertex(sigma, k));
        text += &format!(
            "  {label} vertex {vertex}: homology {}, inclusion {}\n",
            fh.render_reduced(),
            if iso { "iso" } else { "not iso" }
        );
        ends.push(json!({"end": label, "vertex": vertex, "counts": fiber.counts(), "homology": fh.to_json(), "inclusion_iso": iso}));
    }
    let truncated = r.object.truncated_at();
    if let Some(t) = truncated {
        text += &format!("  note: fiber is truncated at degree {t}\n");
    }
    let json = json!({
        "kind": "fibers",
        "simplex": id,
        "degree": n,
        "counts": r.object.counts(),
        "homology": h.to_json(),
        "truncated_at": truncated,
        "ends": ends,
    });
    Ok(Output { json, text, code: if truncated.is_some() { 2 } else { 0 } })
}

fn transport(map: &Path, id: &str, backward: bool) -> Result<Output, CliError> {
    let p = load_map(map)?;
    let edge = p.target().find_any(id).map_err(input)?;
    if edge.degree() != 1 {
        return Err(CliError::Input(format!("{id} is a {}-simplex, not an edge", edge.degree())));
    }
    let direction = if backward { Direction::Backward } else { Direction::Forward };
    let t = transport_homology(&p, edge, direction).map_err(input)?;
    let mut text = format!(
        "transport along {id} ({}): fibers {} -> {} -> {}\n",
        if backward { "backward" } else { "forward" },
        t.source_homology.render_reduced(),
        t.middle_homology.render_reduced(),
        t.target_homology.render_reduced(),
    );
    match &t.transport {
        Some(maps) => {
            for (k, m) in maps.iter().enumerate().filter(|(_, m)| !m.matrix.to_i64_rows().is_empty()) {
                text += &format!("  H_{k}: {:?}{}\n", m.matrix.to_i64_rows(), if t.iso_per_degree[k] { "" } else { " (not iso)" });
            }
        }
        None => text += "  leg to invert is not a homology isomorphism; transport undefined\n",
    }
    let mut json = t.to_json();
    json["kind"] = json!("transport");
    Ok(Output { json, text, code: if t.leg_invertible { 0 } else { 1 } })
}

fn realization(map: &Path, cap: Option<usize>) -> Result<Output, CliError> {
    let p = load_map(map)?;
    let cap = cap.unwrap_or_else(|| default_cap(&p));
    let r = realization_fibration_certificate(&p, cap).map_err(input)?;
    Ok(Output { json: r.to_json(), text: r.render_text(), code: r.exit_code() as u8 })
}

fn theorem_b(path: &Path, cap: Option<usize>) -> Result<Output, CliError> {
    let f = parse_functor(&read(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source: Box::new(source) })?;
    let r = theorem_b_report(&f, cap.unwrap_or(DEFAULT_NERVE_CAP)).map_err(input)?;
    Ok(Output { json: r.to_json(), text: r.render_text(), code: r.exit_code() as u8 })
}

fn ltg(cospan: &[PathBuf], cap: Option<usize>) -> Result<Output, CliError> {
    let f = load_map(&cospan[0])?;
    let p = load_map(&cospan[1])?;
    if f.target().as_ref() != p.target().as_ref() {
        return Err(CliError::Input("F and P have different targets".into()));
    }
    let cap = cap.unwrap_or_else(|| default_cap(&p));
    let r = ltg_check(&f, &p, cap).map_err(input)?;
    Ok(Output { json: r.to_json(), text: r.render_text(), code: r.exit_code() as u8 })
}

fn homology_cmd(path: &Path) -> Result<Output, CliError> {
    let x = load_set(path)?;
    let h = homology(&x);
    let mut text = format!("homology: {}\n", h.render());
    if let Some(t) = x.truncated_at() {
        text += &format!("  note: input is truncated at degree {t}; degrees from {t} on are unreliable\n");
    }
    let json = json!({
        "kind": "homology",
        "counts": x.counts(),
        "homology": h.to_json(),
        "truncated_at": x.truncated_at(),
    });
    Ok(Output { json, text, code: if x.truncated_at().is_some() { 2 } else { 0 } })
}

fn nerve_cmd(path: &Path, cap: Option<usize>) -> Result<Output, CliError> {
    let c = parse_cat(&read(path)?).map_err(|source| CliError::Format { path: path.display().to_string(), source: Box::new(source) })?;
    let n = nerve(&c, cap.unwrap_or(DEFAULT_NERVE_CAP));
    let mut text = format!("nerve: counts {:?}\n", n.counts());
    if let Some(t) = n.truncated_at() {
        text += &format!("  note: truncated at degree {t}\n");
    }
    let json = json!({
        "kind": "nerve",
        "counts": n.counts(),
        "truncated_at": n.truncated_at(),
        "nerve": sset_to_value(&n),
    });
    Ok(Output { json, text, code: 0 })
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Certify { map, cap } => certify(map, *cap),
        Command::Fibers { map, simplex } => fibers(map, simplex),
        Command::Transport { map, edge, backward } => transport(map, edge, *backward),
        Command::Realization { map, cap } => realization(map, *cap),
        Command::TheoremB { functor, cap } => theorem_b(functor, *cap),
        Command::LtgCheck { cospan, cap } => ltg(cospan, *cap),
        Command::Homology { object } => homology_cmd(object),
        Command::Nerve { cat, cap } => nerve_cmd(cat, *cap),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("JSON output"));
            } else {
                print!("{}", out.text);
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}
