//! Batch front end for the catalog.
//!
//! Every computation the library exposes is reachable from a subcommand,
//! and `verify` runs the consistency suite over one entry, an external
//! file, or the whole catalog. Exit codes are a stable contract: 0 when
//! everything passed, 1 when a verification check failed, 2 for usage or
//! validation errors. Identical invocations produce byte-identical output.

use std::process::ExitCode;
use std::sync::Arc;

use bianchi::bassserre::Mode;
use bianchi::catalog::{self, Catalog, Entry, Tower};
use bianchi::exec::Exec;
use bianchi::report::Report;
use bianchi::verify;
use bianchi::Result;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

#[derive(Parser)]
#[command(name = "bianchi", version, about = "Graded cohomology workbench over the builtin catalog")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Highest cohomological degree to compute
    #[arg(long = "up-to", global = true, default_value_t = 24, value_name = "N")]
    up_to: usize,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Coefficient prime, used to resolve tower ids without an explicit
    /// .int<p> suffix
    #[arg(long, global = true, default_value_t = 2)]
    prime: u8,

    /// Run degreewise jobs on the calling thread only
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print degreewise dimensions of an algebra or claim model
    Poincare {
        /// Algebra or claim entry id
        id: String,
    },
    /// Print generator images and degreewise ranks of a derivation
    Sq1 {
        /// Derivation entry id
        id: String,
    },
    /// Print the dimensions of the second Bockstein page of a derivation
    Bockstein {
        /// Derivation entry id
        id: String,
    },
    /// Print degreewise kernel and image dimensions of a homomorphism
    Kernel {
        /// Homomorphism entry id
        id: String,
    },
    /// Assemble a tower degree by degree and print the resulting groups
    Les {
        /// Tower entry id; a bare id is suffixed with .int<prime>
        id: String,
    },
    /// Run the universal-coefficient dimension check for one claim
    Uct {
        /// Claim entry id
        id: String,
    },
    /// Verify one entry, an external catalog file, or the whole catalog
    Verify {
        /// `all`, an entry id, or a path to a catalog file
        target: String,
    },
    /// Inspect the loaded catalog
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// List every entry id with its kind
    List,
}

fn main() -> ExitCode {
    // Die quietly when a downstream pipe closes instead of panicking on
    // the next write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let cat = catalog::load_default()?;
    match &cli.cmd {
        Cmd::Poincare { id } => cmd_poincare(&cat, id, cli.up_to, cli.format, exec),
        Cmd::Sq1 { id } => cmd_sq1(&cat, id, cli.up_to, cli.format, exec),
        Cmd::Bockstein { id } => cmd_bockstein(&cat, id, cli.up_to, cli.format, exec),
        Cmd::Kernel { id } => cmd_kernel(&cat, id, cli.up_to, cli.format, exec),
        Cmd::Les { id } => cmd_les(&cat, id, cli.prime, cli.up_to, cli.format, exec),
        Cmd::Uct { id } => cmd_uct(&cat, id, cli.up_to, cli.format, exec),
        Cmd::Verify { target } => cmd_verify(&cat, target, cli.up_to, cli.format, exec),
        Cmd::Catalog { cmd: CatalogCmd::List } => cmd_catalog_list(&cat, cli.format),
    }
}

fn print_json(value: serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(&value).expect("json serialization"));
}

fn report_json(rep: &Report) -> serde_json::Value {
    json!({
        "lines": rep.lines,
        "checks": rep.checks(),
        "failures": rep.failures(),
        "passed": rep.all_passed(),
    })
}

fn emit_report(rep: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => {
            print!("{}", rep.render_text());
            println!("{} checks, {} failures", rep.checks(), rep.failures());
        }
        Format::Json => println!("{}", rep.render_json()),
    }
    if rep.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_poincare(
    cat: &Catalog,
    id: &str,
    up_to: usize,
    format: Format,
    exec: Exec,
) -> Result<ExitCode> {
    let model = cat.model_of(id)?;
    let dims = model.poincare(up_to, exec);
    match format {
        Format::Text => {
            let line: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            println!("{}", line.join(" "));
        }
        Format::Json => print_json(json!({ "id": id, "up_to": up_to, "dims": dims })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sq1(cat: &Catalog, id: &str, up_to: usize, format: Format, exec: Exec) -> Result<ExitCode> {
    let d = cat.derivation(id)?;
    let rows = exec.map_degrees(up_to, |n| {
        let rank = d.matrix(n).rank();
        (d.algebra.dim(n), rank)
    });
    match format {
        Format::Text => {
            for (i, g) in d.algebra.gens().iter().enumerate() {
                println!("d {} = {}", g.name, d.algebra.render_element(d.image_of(i)));
            }
            for (n, (dim, rank)) in rows.iter().enumerate() {
                println!("deg {n}: dim {dim}, kernel {}, image {rank}", dim - rank);
            }
        }
        Format::Json => {
            let images: Vec<_> = d
                .algebra
                .gens()
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    json!({
                        "gen": g.name,
                        "degree": g.degree,
                        "image": d.algebra.render_element(d.image_of(i)),
                    })
                })
                .collect();
            let degrees: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(n, (dim, rank))| {
                    json!({ "n": n, "dim": dim, "kernel": dim - rank, "image": rank })
                })
                .collect();
            print_json(json!({ "id": id, "up_to": up_to, "images": images, "degrees": degrees }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bockstein(
    cat: &Catalog,
    id: &str,
    up_to: usize,
    format: Format,
    exec: Exec,
) -> Result<ExitCode> {
    let d = cat.derivation(id)?;
    let dims = bianchi::bockstein::e2_dims(&d, up_to, exec);
    match format {
        Format::Text => {
            let line: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            println!("{}", line.join(" "));
        }
        Format::Json => print_json(json!({ "id": id, "up_to": up_to, "dims": dims })),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_kernel(cat: &Catalog, id: &str, up_to: usize, format: Format, exec: Exec) -> Result<ExitCode> {
    let h = cat.hom(id)?;
    let rows = exec.map_degrees(up_to, |n| h.kernel_image_dims(n));
    match format {
        Format::Text => {
            for (n, (ker, im)) in rows.iter().enumerate() {
                println!("deg {n}: kernel {ker}, image {im}");
            }
        }
        Format::Json => {
            let degrees: Vec<_> = rows
                .iter()
                .enumerate()
                .map(|(n, (ker, im))| json!({ "n": n, "kernel": ker, "image": im }))
                .collect();
            print_json(json!({ "id": id, "up_to": up_to, "degrees": degrees }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn resolve_tower(cat: &Catalog, id: &str, prime: u8) -> Result<(String, Arc<Tower>)> {
    if cat.get(id).is_ok() {
        return Ok((id.to_string(), cat.tower(id)?));
    }
    let suffixed = format!("{id}.int{prime}");
    let t = cat.tower(&suffixed)?;
    Ok((suffixed, t))
}

fn cmd_les(
    cat: &Catalog,
    id: &str,
    prime: u8,
    up_to: usize,
    format: Format,
    exec: Exec,
) -> Result<ExitCode> {
    let (rid, tower) = resolve_tower(cat, id, prime)?;
    let (results, rep) = verify::run_tower(&tower, &rid, up_to, exec)?;
    let mode = match tower.mode {
        Mode::Integral => "integral",
        Mode::Field => "field",
    };
    let last = results.last();
    match format {
        Format::Text => {
            println!("tower {rid}: {} stages, prime {}, {mode} mode", tower.stages.len(), tower.prime);
            if let Some(r) = last {
                for n in 0..=up_to {
                    println!("H^{n} = {}", r.render_degree(n));
                }
                for c in &r.delta_classes {
                    let order = if c.torsion_free {
                        "infinite order".to_string()
                    } else {
                        format!("order {}", (r.prime as u64).pow(c.power))
                    };
                    println!("delta class {} in degree {}, {order}", c.name, c.degree);
                }
                if r.hnn_class {
                    println!("stable-letter class in degree 1, infinite order");
                }
                if !r.ambiguous.is_empty() {
                    let degs: Vec<String> = r.ambiguous.iter().map(|n| n.to_string()).collect();
                    println!("unresolved extension degrees: {}", degs.join(" "));
                }
            }
            print!("{}", rep.render_text());
            println!("{} checks, {} failures", rep.checks(), rep.failures());
        }
        Format::Json => {
            let degrees: Vec<_> = match last {
                Some(r) => (0..=up_to)
                    .map(|n| json!({ "n": n, "group": r.render_degree(n) }))
                    .collect(),
                None => Vec::new(),
            };
            let delta: Vec<_> = last
                .map(|r| {
                    r.delta_classes
                        .iter()
                        .map(|c| {
                            json!({
                                "name": c.name,
                                "degree": c.degree,
                                "torsion_free": c.torsion_free,
                            })
                        })
                        .collect()
                })
                .unwrap_or_default();
            print_json(json!({
                "id": rid,
                "prime": tower.prime,
                "mode": mode,
                "stages": tower.stages.len(),
                "degrees": degrees,
                "delta_classes": delta,
                "hnn_class": last.map(|r| r.hnn_class),
                "ambiguous": last.map(|r| r.ambiguous.clone()).unwrap_or_default(),
                "report": report_json(&rep),
            }));
        }
    }
    Ok(if rep.all_passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_uct(cat: &Catalog, id: &str, up_to: usize, format: Format, exec: Exec) -> Result<ExitCode> {
    let c = cat.claim(id)?;
    let rep = c.uct_report(id, up_to, exec);
    Ok(emit_report(&rep, format))
}

fn cmd_verify(
    cat: &Catalog,
    target: &str,
    up_to: usize,
    format: Format,
    exec: Exec,
) -> Result<ExitCode> {
    if target == "all" {
        let rep = verify::verify_all(cat, up_to, exec)?;
        return Ok(emit_report(&rep, format));
    }
    if cat.get(target).is_ok() {
        let rep = verify::verify_entry(cat, target, up_to, exec)?;
        return Ok(emit_report(&rep, format));
    }
    let path = std::path::Path::new(target);
    if path.is_file() {
        return verify_file(path, up_to, format, exec);
    }
    cat.get(target)?;
    unreachable!("target neither an id nor a file");
}

fn verify_file(
    path: &std::path::Path,
    up_to: usize,
    format: Format,
    exec: Exec,
) -> Result<ExitCode> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bianchi::Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    let id = path
        .file_stem()
        .and_then(|s| s.to_str())
        .ok_or_else(|| bianchi::Error::Invalid(format!("bad file name {}", path.display())))?
        .to_string();
    let mut files = catalog::default_sources()?;
    files.retain(|(fid, _)| fid != &id);
    files.push((id.clone(), text));
    match catalog::load_from(&files) {
        Ok(cat) => {
            let rep = verify::verify_entry(&cat, &id, up_to, exec)?;
            Ok(emit_report(&rep, format))
        }
        Err(e) => {
            let mut rep = Report::new();
            rep.check(format!("{id}.load"), false, e.to_string());
            Ok(emit_report(&rep, format))
        }
    }
}

fn kind_str(e: &Entry) -> &'static str {
    match e {
        Entry::Algebra(_) => "algebra",
        Entry::Hom(_) => "hom",
        Entry::Derivation(_) => "derivation",
        Entry::Claim(_) => "claim",
        Entry::Tower(_) => "tower",
        Entry::Group(_) => "graded-group",
    }
}

fn cmd_catalog_list(cat: &Catalog, format: Format) -> Result<ExitCode> {
    match format {
        Format::Text => {
            for id in cat.ids() {
                println!("{id}  {}", kind_str(&cat.get(id)?.entry));
            }
        }
        Format::Json => {
            let entries: Result<Vec<_>> = cat
                .ids()
                .map(|id| Ok(json!({ "id": id, "kind": kind_str(&cat.get(id)?.entry) })))
                .collect();
            print_json(json!({ "count": cat.len(), "entries": entries? }));
        }
    }
    Ok(ExitCode::SUCCESS)
}
