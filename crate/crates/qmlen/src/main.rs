//! `qmlen`: certified length bounds from the command line.
//!
//! Exit codes: 0 success, 1 usage/parse error, 2 inconclusive search,
//! 3 the method gives nothing for this input, 4 verification failure.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qmlen_core::group::{FreeWord, GroupElement, Mat2, Perm, ProjMat2};
use qmlen_core::length::{
    length_exact, torsion_length_upper_projective, GeneratingSet, LengthError, LengthKind,
    LengthResult, DEFAULT_MEMORY_CAP,
};
use qmlen_core::qm::defect_search;

use qmlen::element::{parse_element, AnyElement, GroupSpec};
use qmlen::registry::{lookup, QmHandle};
use qmlen::table::{
    build_dehn_table, build_qm_table, rational_string, table_csv, table_doc, table_json,
    table_text, TableKind,
};
use qmlen::witness_io::{
    doc_from_json, doc_to_json, witness_from_doc, witness_to_doc, AnyWitness,
};

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_INCONCLUSIVE: i32 = 2;
const EXIT_NO_METHOD: i32 = 3;
const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Parser)]
#[command(name = "qmlen", about = "Certified word/commutator/torsion length bounds")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact S-length of an element by exhaustive ball search
    Length {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        /// Semicolon-separated generators (default: the group's standard set);
        /// the set is symmetrized
        #[arg(long)]
        gens: Option<String>,
        /// Largest length searched before giving up with a lower bound
        #[arg(long, default_value_t = 8)]
        radius: u32,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Per-power lower-bound table, with witness upper bounds where available
    Table {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        qm: Option<String>,
        #[arg(long, value_enum)]
        kind: Option<KindArg>,
        #[arg(long = "n-max", default_value_t = 10)]
        n_max: u64,
        /// Semicolon-separated generators for C(phi, S) in length tables
        #[arg(long)]
        gens: Option<String>,
        /// Surface genus for the twist calculators (with --dehn-twists)
        #[arg(long = "dehn-genus")]
        dehn_genus: Option<u64>,
        /// Number of right-handed twists for the twist calculators
        #[arg(long = "dehn-twists")]
        dehn_twists: Option<u64>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Check a witness file; names the first failing invariant
    Verify {
        /// Witness JSON file (schema qmlen.witness/1)
        file: PathBuf,
    },
    /// Evaluate a registered quasimorphism on one element
    QmEval {
        #[arg(long)]
        group: String,
        #[arg(long)]
        qm: String,
        #[arg(long)]
        element: String,
    },
    /// Certified lower bound for a quasimorphism's defect by ball search
    DefectSearch {
        #[arg(long)]
        group: String,
        #[arg(long)]
        qm: String,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        #[arg(long)]
        gens: Option<String>,
    },
    /// Generate a torsion factorization witness (matrix groups)
    Witness {
        #[arg(long)]
        group: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Length,
    Comm,
    Torsion,
    StableComm,
    StableTorsion,
}

impl From<KindArg> for TableKind {
    fn from(k: KindArg) -> TableKind {
        match k {
            KindArg::Length => TableKind::Length,
            KindArg::Comm => TableKind::Comm,
            KindArg::Torsion => TableKind::Torsion,
            KindArg::StableComm => TableKind::StableComm,
            KindArg::StableTorsion => TableKind::StableTorsion,
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let ok = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let _ = e.print();
            return if ok { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let result = match cli.cmd {
        Cmd::Length {
            group,
            element,
            gens,
            radius,
            json,
        } => cmd_length(&group, &element, gens.as_deref(), radius, json.as_deref()),
        Cmd::Table {
            group,
            element,
            qm,
            kind,
            n_max,
            gens,
            dehn_genus,
            dehn_twists,
            json,
            csv,
        } => cmd_table(
            group.as_deref(),
            element.as_deref(),
            qm.as_deref(),
            kind,
            n_max,
            gens.as_deref(),
            dehn_genus,
            dehn_twists,
            json.as_deref(),
            csv.as_deref(),
        ),
        Cmd::Verify { file } => cmd_verify(&file),
        Cmd::QmEval { group, qm, element } => cmd_qm_eval(&group, &qm, &element),
        Cmd::DefectSearch {
            group,
            qm,
            radius,
            gens,
        } => cmd_defect_search(&group, &qm, radius, gens.as_deref()),
        Cmd::Witness {
            group,
            element,
            json,
        } => cmd_witness(&group, &element, json.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err((code, message)) => {
            eprintln!("error: {message}");
            code
        }
    }
}

type CmdResult = Result<i32, (i32, String)>;

fn usage<E: std::fmt::Display>(e: E) -> (i32, String) {
    (EXIT_USAGE, e.to_string())
}

fn parse_group(text: &str) -> Result<GroupSpec, (i32, String)> {
    text.parse().map_err(|e| usage(format!("--group: {e}")))
}

fn parse_elt(group: GroupSpec, text: &str) -> Result<AnyElement, (i32, String)> {
    parse_element(group, text).map_err(|e| usage(format!("--element: {e}")))
}

/// The group's standard generating set (before symmetrization).
fn default_generators(group: GroupSpec) -> (String, Vec<AnyElement>) {
    match group {
        GroupSpec::Free(r) => (
            "free generators".to_string(),
            (1..=r)
                .map(|i| AnyElement::Free(FreeWord::generator(r, i).expect("index in range")))
                .collect(),
        ),
        GroupSpec::Sl2z => (
            "{S, T}".to_string(),
            vec![AnyElement::Mat(Mat2::s()), AnyElement::Mat(Mat2::t())],
        ),
        GroupSpec::Psl2z => (
            "{S, T}".to_string(),
            vec![AnyElement::Proj(ProjMat2::s()), AnyElement::Proj(ProjMat2::t())],
        ),
        GroupSpec::Perm(d) => (
            "adjacent transpositions".to_string(),
            (0..d.saturating_sub(1))
                .map(|i| {
                    AnyElement::Perm(Perm::transposition(d, i, i + 1).expect("points in range"))
                })
                .collect(),
        ),
    }
}

fn generators(group: GroupSpec, gens: Option<&str>) -> Result<(String, Vec<AnyElement>), (i32, String)> {
    match gens {
        None => Ok(default_generators(group)),
        Some(text) => {
            let mut elements = Vec::new();
            for part in text.split(';') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                elements.push(
                    parse_element(group, part).map_err(|e| usage(format!("--gens `{part}`: {e}")))?,
                );
            }
            Ok(("declared generators".to_string(), elements))
        }
    }
}

macro_rules! extract_all {
    ($elements:expr, $variant:ident) => {
        $elements
            .into_iter()
            .map(|e| match e {
                AnyElement::$variant(x) => x,
                _ => unreachable!("parser returned a foreign element"),
            })
            .collect::<Vec<_>>()
    };
}

// --- length ------------------------------------------------------------

#[derive(Serialize)]
struct LengthDoc {
    schema: &'static str,
    group: String,
    element: String,
    generating_set: String,
    kind: &'static str,
    value: u32,
    radius_searched: u32,
}

fn cmd_length(
    group: &str,
    element: &str,
    gens: Option<&str>,
    radius: u32,
    json: Option<&Path>,
) -> CmdResult {
    let group = parse_group(group)?;
    let g = parse_elt(group, element)?;
    let (label, gen_elements) = generators(group, gens)?;

    fn search<G: GroupElement>(
        g: &G,
        gens: Vec<G>,
        label: &str,
        radius: u32,
    ) -> Result<LengthResult, LengthError> {
        let s = GeneratingSet::symmetrized(label.to_string(), gens)?;
        length_exact(g, &s, radius, DEFAULT_MEMORY_CAP)
    }

    let result = match (&g, gen_elements) {
        (AnyElement::Free(w), e) => search(w, extract_all!(e, Free), &label, radius),
        (AnyElement::Mat(m), e) => search(m, extract_all!(e, Mat), &label, radius),
        (AnyElement::Proj(p), e) => search(p, extract_all!(e, Proj), &label, radius),
        (AnyElement::Perm(p), e) => search(p, extract_all!(e, Perm), &label, radius),
    }
    .map_err(usage)?;

    let (kind, value) = match result.kind {
        LengthKind::Exact(k) => ("exact", k),
        LengthKind::AtLeast(k) => ("at-least", k),
    };
    println!(
        "length over {label}: {result} (searched radius {})",
        result.radius_searched
    );
    if let Some(path) = json {
        let doc = LengthDoc {
            schema: "qmlen.length/1",
            group: group.to_string(),
            element: g.to_string(),
            generating_set: label,
            kind,
            value,
            radius_searched: result.radius_searched,
        };
        write_file(path, &to_json(&doc))?;
    }
    Ok(match result.kind {
        LengthKind::Exact(_) => EXIT_OK,
        LengthKind::AtLeast(_) => EXIT_INCONCLUSIVE,
    })
}

// --- table -------------------------------------------------------------

#[allow(clippy::too_many_arguments)]
fn cmd_table(
    group: Option<&str>,
    element: Option<&str>,
    qm: Option<&str>,
    kind: Option<KindArg>,
    n_max: u64,
    gens: Option<&str>,
    dehn_genus: Option<u64>,
    dehn_twists: Option<u64>,
    json: Option<&Path>,
    csv: Option<&Path>,
) -> CmdResult {
    let doc = match (dehn_genus, dehn_twists) {
        (Some(h), Some(k)) => {
            let rows = build_dehn_table(h, k, n_max).map_err(usage)?;
            table_doc(None, None, None, "dehn-twists", &rows)
        }
        (None, None) => {
            let group = parse_group(group.ok_or_else(|| usage("--group is required"))?)?;
            let element = parse_elt(group, element.ok_or_else(|| usage("--element is required"))?)?;
            let qm_id = qm.ok_or_else(|| usage("--qm is required"))?;
            let handle = lookup(group, qm_id).map_err(usage)?;
            let kind: TableKind = kind.ok_or_else(|| usage("--kind is required"))?.into();
            let (_, gen_elements) = generators(group, gens)?;
            let rows = build_qm_table(group, &element, &handle, kind, n_max as i64, &gen_elements)
                .map_err(usage)?;
            table_doc(Some(group), Some(&element), Some(qm_id), kind.as_str(), &rows)
        }
        _ => {
            return Err(usage(
                "twist-calculator mode needs both --dehn-genus and --dehn-twists",
            ))
        }
    };

    print!("{}", table_text(&doc));
    if let Some(path) = json {
        write_file(path, &table_json(&doc))?;
    }
    if let Some(path) = csv {
        write_file(path, &table_csv(&doc))?;
    }

    if doc.rows.iter().any(|r| !r.consistent) {
        eprintln!("error: a lower bound exceeded a verified witness upper bound");
        return Ok(EXIT_VERIFY_FAILED);
    }
    let any_bound = doc
        .rows
        .iter()
        .any(|r| r.lower_bounds.iter().any(|lb| lb.bound.is_some()));
    Ok(if any_bound { EXIT_OK } else { EXIT_NO_METHOD })
}

// --- verify ------------------------------------------------------------

fn cmd_verify(file: &Path) -> CmdResult {
    let text = std::fs::read_to_string(file)
        .map_err(|e| usage(format!("{}: {e}", file.display())))?;
    let doc = doc_from_json(&text).map_err(|e| usage(format!("schema violation at {e}")))?;
    let (group, witness) = witness_from_doc(&doc).map_err(|e| usage(format!("bad content at {e}")))?;
    println!(
        "witness: group {group}, target {}, {} factor(s)",
        doc.target,
        witness.factor_count()
    );
    match witness.verify() {
        Ok(()) => {
            println!("verification: ok");
            Ok(EXIT_OK)
        }
        Err(failure) => {
            println!("verification: FAILED ({failure})");
            Ok(EXIT_VERIFY_FAILED)
        }
    }
}

// --- qm-eval -----------------------------------------------------------

fn cmd_qm_eval(group: &str, qm: &str, element: &str) -> CmdResult {
    let group = parse_group(group)?;
    let handle = lookup(group, qm).map_err(usage)?;
    let g = parse_elt(group, element)?;
    let value = handle.evaluate(&g).map_err(usage)?;
    println!("{}({g}) = {}", handle.id(), rational_string(&value));
    println!(
        "declared defect upper bound: {}; homogeneous: {}",
        rational_string(&handle.defect_upper()),
        handle.is_homogeneous()
    );
    Ok(EXIT_OK)
}

// --- defect-search -----------------------------------------------------

fn cmd_defect_search(group: &str, qm: &str, radius: u32, gens: Option<&str>) -> CmdResult {
    let group = parse_group(group)?;
    let handle = lookup(group, qm).map_err(usage)?;
    let (label, gen_elements) = generators(group, gens)?;
    if gen_elements.is_empty() {
        return Err(usage("defect search needs at least one generator"));
    }
    if radius == 0 {
        return Err(usage("--radius must be at least 1"));
    }

    let searched = match (&handle, gen_elements) {
        (QmHandle::Mat(f), e) => {
            defect_search(f.as_ref(), &extract_all!(e, Mat), radius, DEFAULT_MEMORY_CAP)
        }
        (QmHandle::Proj(f), e) => {
            defect_search(f.as_ref(), &extract_all!(e, Proj), radius, DEFAULT_MEMORY_CAP)
        }
        (QmHandle::Free(f), e) => {
            defect_search(f.as_ref(), &extract_all!(e, Free), radius, DEFAULT_MEMORY_CAP)
        }
    };
    let declared = handle.defect_upper();
    let (lower, truncated) = match searched {
        Ok(lower) => (lower, None),
        Err(e) => (e.partial_lower_bound.clone(), Some(e.radius_reached)),
    };
    println!(
        "defect({}) >= {} over {label}, radius {}",
        handle.id(),
        rational_string(&lower),
        radius
    );
    println!("declared upper bound: {}", rational_string(&declared));
    if lower > declared {
        eprintln!("error: search lower bound exceeds the declared defect upper bound");
        return Ok(EXIT_VERIFY_FAILED);
    }
    if let Some(r) = truncated {
        eprintln!("warning: memory cap hit after radius {r}; bound is partial");
        return Ok(EXIT_INCONCLUSIVE);
    }
    Ok(EXIT_OK)
}

// --- witness -----------------------------------------------------------

fn cmd_witness(group: &str, element: &str, json: Option<&Path>) -> CmdResult {
    let group = parse_group(group)?;
    let g = parse_elt(group, element)?;
    let witness = match &g {
        AnyElement::Mat(m) => AnyWitness::Mat(
            qmlen_core::cert::sl2z_torsion_witness(m).map_err(usage)?,
        ),
        AnyElement::Proj(p) => {
            if p.is_identity() {
                AnyWitness::Proj(qmlen_core::cert::FactorizationWitness::new(
                    p.clone(),
                    Vec::new(),
                ))
            } else {
                let (_, w) = torsion_length_upper_projective(p).map_err(usage)?;
                AnyWitness::Proj(w)
            }
        }
        _ => {
            return Err((
                EXIT_NO_METHOD,
                format!("no witness generator for {group}"),
            ))
        }
    };
    witness
        .verify()
        .map_err(|e| (EXIT_VERIFY_FAILED, format!("generated witness failed to verify: {e}")))?;
    let doc = match &witness {
        AnyWitness::Mat(w) => witness_to_doc(group, w),
        AnyWitness::Proj(w) => witness_to_doc(group, w),
        _ => unreachable!(),
    };
    let text = doc_to_json(&doc);
    println!(
        "torsion witness with {} factor(s); verified",
        witness.factor_count()
    );
    match json {
        Some(path) => write_file(path, &text)?,
        None => print!("{text}"),
    }
    Ok(EXIT_OK)
}

// --- helpers -----------------------------------------------------------

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("report docs always serialize");
    out.push('\n');
    out
}

fn write_file(path: &Path, contents: &str) -> Result<(), (i32, String)> {
    std::fs::write(path, contents).map_err(|e| usage(format!("{}: {e}", path.display())))
}
