//! Command line surface.
//!
//! Exit codes are a function of the verdict only: 0 when the query succeeds
//! (a representation was found, or the requested data was produced, or the
//! obstruction was certified), 1 when a search exhausts or a verdict is
//! negative, 2 on invalid input.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::{DiagonalTarget, GramLattice};
use crate::pipeline::{obstruct, theorem_range, ObstructionReport, Verdict, REPORT_SCHEMA};
use crate::search::{
    find_representations, orbit_count, support_bound, SearchCertificate, SearchOptions,
    SearchOutcome,
};
use crate::spinc::{
    c1_circle, contact_spinc, euler_class_xi, spin_structures_circle, spincform_check,
    vanishing_locus_pd, CircleBundle, ContactStructure, TorsionSpinc,
};
use crate::topology::ld_lattice;

#[derive(Parser)]
#[command(
    name = "ygn",
    version,
    about = "Exact lattice embedding search and circle-bundle spin-c arithmetic, \
             with fillability obstruction reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search for pairing-preserving embeddings of a lattice into a negative
    /// definite diagonal lattice
    Embed {
        /// Path to a lattice file: {"rank": r, "gram": [[..],..], "labels": [..]?}
        lattice: PathBuf,
        /// Target size: search D_M
        #[arg(long, conflicts_with = "any")]
        m: Option<usize>,
        /// Decide representability into D_m for every m at once, by searching
        /// at the support bound m* (default when --m is absent)
        #[arg(long)]
        any: bool,
        /// Count representations up to signed permutations of the target
        #[arg(long)]
        orbits: bool,
        /// Machine readable output
        #[arg(long)]
        json: bool,
    },
    /// Print the rank-2d chain-plus-cap lattice and its definiteness class
    Ld {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        /// Emit the lattice in the JSON file format consumed by `embed`
        #[arg(long)]
        emit_json: bool,
    },
    /// Torsion spin-c structures, spin solutions and contact data of the
    /// circle bundle with base genus G and Euler number N
    Spinc {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Restrict the contact section to xi_0 or xi_1
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        i: Option<u8>,
        /// Machine readable output
        #[arg(long)]
        json: bool,
    },
    /// Run the full obstruction pipeline for one pair (G, N)
    Obstruct {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        g: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        /// Machine readable output
        #[arg(long)]
        json: bool,
    },
    /// Enumerate the covered pairs with smallest admissible d up to DMAX
    Range {
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        dmax: i64,
        /// Run the pipeline on every pair and require every verdict to be
        /// Obstructed
        #[arg(long)]
        run: bool,
        /// Machine readable output
        #[arg(long)]
        json: bool,
    },
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    0
                }
                _ => {
                    eprint!("{e}");
                    2
                }
            };
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Embed {
            lattice,
            m,
            any,
            orbits,
            json,
        } => cmd_embed(lattice, m, any, orbits, json),
        Command::Ld { d, emit_json } => cmd_ld(d as usize, emit_json),
        Command::Spinc { g, n, i, json } => cmd_spinc(g, n, i, json),
        Command::Obstruct { g, n, json } => cmd_obstruct(g, n, json),
        Command::Range { dmax, run, json } => cmd_range(dmax, run, json),
    }
}

fn load_lattice(path: &PathBuf) -> Result<GramLattice> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid_input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::invalid_input(format!("{}: {e}", path.display())))
}

fn cmd_embed(
    path: PathBuf,
    m: Option<usize>,
    _any: bool,
    orbits: bool,
    json: bool,
) -> Result<i32> {
    let lattice = load_lattice(&path)?;
    let target_m = m.unwrap_or_else(|| support_bound(&lattice));
    let target = DiagonalTarget::new(target_m);

    if orbits {
        let count = orbit_count(&lattice, target);
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "schema": REPORT_SCHEMA,
                    "m": target_m,
                    "orbit_count": count,
                }))
                .expect("serializable")
            );
        } else {
            println!(
                "{} representation orbit(s) of the rank {} lattice in {}",
                count,
                lattice.rank(),
                target
            );
        }
        return Ok(if count > 0 { 0 } else { 1 });
    }

    let cert = find_representations(&lattice, target, &SearchOptions::decision());
    let found = cert.found();
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "schema": REPORT_SCHEMA,
                "support_bound": support_bound(&lattice),
                "certificate": cert,
            }))
            .expect("serializable")
        );
    } else {
        print!("{}", render_embed(&lattice, &cert, m.is_none()));
    }
    Ok(if found { 0 } else { 1 })
}

fn render_embed(lattice: &GramLattice, cert: &SearchCertificate, used_bound: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "lattice: rank {}", lattice.rank());
    if used_bound {
        let _ = writeln!(out, "target: D_{} (support bound)", cert.m);
    } else {
        let _ = writeln!(out, "target: D_{}", cert.m);
    }
    match &cert.outcome {
        SearchOutcome::Found { representations } => {
            let _ = writeln!(out, "outcome: found");
            if let Some(rep) = representations.first() {
                for (i, row) in rep.images().iter().enumerate() {
                    let coords: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "  {} -> ({})", lattice.label(i), coords.join(","));
                }
            }
        }
        SearchOutcome::Exhausted => {
            let _ = writeln!(out, "outcome: exhausted (no embedding exists)");
            if cert.pruned_by.definiteness_precheck == 1 {
                let _ = writeln!(
                    out,
                    "  short-circuit: the form is not negative semidefinite ({})",
                    lattice.classify_definiteness()
                );
            }
            if cert.pruned_by.degenerate_source == 1 {
                let _ = writeln!(
                    out,
                    "  short-circuit: degenerate form, every assignment kills the kernel ({})",
                    lattice.classify_definiteness()
                );
            }
        }
    }
    let p = &cert.pruned_by;
    let _ = writeln!(
        out,
        "nodes visited: {}; pruned: cross-pairing {}, canonical {}, support {}, dependent {}",
        cert.nodes_visited, p.cross_pairing, p.canonical, p.support_budget, p.dependent_images
    );
    out
}

fn cmd_ld(d: usize, emit_json: bool) -> Result<i32> {
    let lattice = ld_lattice(d);
    if emit_json {
        println!(
            "{}",
            serde_json::to_string_pretty(&lattice).expect("serializable")
        );
        return Ok(0);
    }
    let labels: Vec<String> = (0..lattice.rank()).map(|i| lattice.label(i)).collect();
    println!("rank {} lattice on {}", lattice.rank(), labels.join(", "));
    print!("{lattice}");
    println!("definiteness: {}", lattice.classify_definiteness());
    println!("support bound: m* = {}", support_bound(&lattice));
    Ok(0)
}

fn cmd_spinc(g: i64, n: i64, i: Option<u8>, json: bool) -> Result<i32> {
    let bundle = CircleBundle::new(g, n)?;
    if n < 1 {
        return Err(Error::out_of_domain(format!(
            "circle bundle operations need n >= 1, got {n}"
        )));
    }
    let selected: Vec<ContactStructure> = match i {
        Some(i) => vec![ContactStructure::from_index(i)?],
        None => vec![ContactStructure::Xi0, ContactStructure::Xi1],
    };
    let spins = spin_structures_circle(&bundle)?;
    let contact_defined = n >= 2 * g;

    if json {
        let torsion: Vec<_> = (0..n)
            .map(|e| {
                let t = TorsionSpinc::new(bundle, e).expect("residue in range");
                json!({"e": e, "c1": c1_circle(&t).coefficient()})
            })
            .collect();
        let contact: Vec<_> = if contact_defined {
            selected
                .iter()
                .map(|&i| {
                    let mut entry = json!({
                        "i": i.index(),
                        "t_xi": contact_spinc(&bundle, i).expect("n >= 2g").e(),
                        "euler": euler_class_xi(&bundle, i).expect("n >= 2g").coefficient(),
                    });
                    if n % 2 == 0 {
                        entry["pd_vanishing_locus"] = json!(vanishing_locus_pd(&bundle, i)
                            .expect("even n")
                            .coefficient());
                        entry["spincform_holds"] =
                            json!(spincform_check(&bundle, i).expect("even n"));
                    }
                    entry
                })
                .collect()
        } else {
            Vec::new()
        };
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "schema": REPORT_SCHEMA,
                "g": g,
                "n": n,
                "torsion": torsion,
                "spin_structures": spins.iter().map(|t| t.e()).collect::<Vec<_>>(),
                "contact_defined": contact_defined,
                "contact": contact,
            }))
            .expect("serializable")
        );
        return Ok(0);
    }

    println!("circle bundle: genus {g}, euler number {n}");
    println!("torsion spin-c structures, c1(t_e) = 2(1-g+e)*F mod {n}:");
    for e in 0..n {
        let t = TorsionSpinc::new(bundle, e).expect("residue in range");
        let c1 = c1_circle(&t);
        let spin = if c1.is_zero() { "  [spin]" } else { "" };
        println!("  t_{e}: c1 = {c1}{spin}");
    }
    let spin_names: Vec<String> = spins.iter().map(|t| t.to_string()).collect();
    println!("spin structures: {{{}}}", spin_names.join(", "));
    if contact_defined {
        for &i in &selected {
            let t = contact_spinc(&bundle, i)?;
            let e = euler_class_xi(&bundle, i)?;
            println!("t_{i} = {t}, euler class e({i}) = {e}");
        }
        if n % 2 == 0 {
            for &i in &selected {
                let pd = vanishing_locus_pd(&bundle, i)?;
                let ok = spincform_check(&bundle, i)?;
                println!(
                    "PD of the vanishing locus of {i}: {pd}; spin-form identity: {}",
                    if ok { "verified" } else { "FAILED" }
                );
            }
        } else {
            println!("spin-form identity: needs even n, not applicable");
        }
    } else {
        println!("contact structures: undefined for n < 2g");
    }
    Ok(0)
}

fn cmd_obstruct(g: i64, n: i64, json: bool) -> Result<i32> {
    let report = obstruct(g, n)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        print!("{}", render_report(&report));
    }
    Ok(match report.verdict {
        Verdict::Obstructed => 0,
        Verdict::NotCovered => 1,
    })
}

fn render_report(report: &ObstructionReport) -> String {
    let mut out = String::new();
    let verdict = match report.verdict {
        Verdict::Obstructed => "OBSTRUCTED",
        Verdict::NotCovered => "NOT COVERED",
    };
    let _ = writeln!(out, "(g={}, n={}): {verdict}", report.g, report.n);
    if let Some(reason) = &report.reason {
        let _ = writeln!(out, "reason: {reason}");
    }
    if let Some(c) = &report.contact {
        let _ = writeln!(
            out,
            "contact: t_xi0 = t_{}, t_xi1 = t_{}; euler classes {}*F, {}*F",
            c.t_xi0, c.t_xi1, c.euler_xi0, c.euler_xi1
        );
    }
    if let Some(cap) = &report.cap {
        let _ = writeln!(
            out,
            "cap: d = {}, k = {} blown-up points, curve degree {}, fake handles {}, \
             proper transform square {}",
            cap.d, cap.k, cap.curve_degree, cap.fake_handles, cap.proper_transform_square
        );
    }
    if let (Some(lattice), Some(definiteness)) = (&report.lattice, &report.definiteness) {
        let _ = writeln!(
            out,
            "lattice: rank {}, {definiteness}",
            lattice.rank()
        );
    }
    if let Some(search) = &report.search {
        let outcome = match &search.outcome {
            SearchOutcome::Exhausted => "exhausted".to_string(),
            SearchOutcome::Found { representations } => {
                format!("found ({} solutions)", representations.len())
            }
        };
        let _ = writeln!(
            out,
            "search: D_{} {outcome}; nodes visited {}",
            search.m, search.nodes_visited
        );
        if search.pruned_by.definiteness_precheck == 1 {
            let _ = writeln!(
                out,
                "  short-circuit: the form is not negative semidefinite, no assignment exists"
            );
        }
        if search.pruned_by.degenerate_source == 1 {
            let _ = writeln!(
                out,
                "  short-circuit: degenerate form, every assignment kills the kernel, \
                 so no embedding exists"
            );
        }
    }
    if let Some(orth) = &report.orthogonality {
        let rows: Vec<String> = orth
            .pairings
            .iter()
            .map(|(label, v)| format!("{label} -> {v}"))
            .collect();
        let _ = writeln!(out, "orthogonality (k = {}): {}", orth.k, rows.join(", "));
        let _ = writeln!(out, "note: {}", orth.note);
    }
    let _ = writeln!(out, "assumptions:");
    for a in &report.assumptions {
        let _ = writeln!(out, "  {}: {}", a.id, a.statement);
    }
    for r in &report.remarks {
        let _ = writeln!(out, "remark: {r}");
    }
    out
}

fn cmd_range(dmax: i64, run: bool, json: bool) -> Result<i32> {
    let triples = theorem_range(dmax);
    if !run {
        if json {
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "schema": REPORT_SCHEMA,
                    "dmax": dmax,
                    "count": triples.len(),
                    "triples": triples,
                }))
                .expect("serializable")
            );
        } else {
            println!("{} covered pairs up to d = {dmax}:", triples.len());
            for t in &triples {
                println!("  g={} n={} (d={})", t.g, t.n, t.d);
            }
        }
        return Ok(0);
    }

    let mut all_obstructed = true;
    let mut results = Vec::new();
    for t in &triples {
        let report = obstruct(t.g, t.n)?;
        let ok = report.verdict == Verdict::Obstructed;
        all_obstructed &= ok;
        if json {
            results.push(report);
        } else {
            println!(
                "  g={} n={} (d={}): {}",
                t.g,
                t.n,
                t.d,
                if ok { "obstructed" } else { "NOT OBSTRUCTED" }
            );
        }
    }
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({
                "schema": REPORT_SCHEMA,
                "dmax": dmax,
                "count": triples.len(),
                "all_obstructed": all_obstructed,
                "reports": results,
            }))
            .expect("serializable")
        );
    } else {
        println!(
            "{} pairs, all obstructed: {}",
            triples.len(),
            if all_obstructed { "yes" } else { "NO" }
        );
    }
    Ok(if all_obstructed { 0 } else { 1 })
}
