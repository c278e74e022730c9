//! Entry-level verification drivers.
//!
//! [`verify_entry`] dispatches on the catalog entry kind and runs every
//! consistency check that kind supports: normal-form closure for algebras,
//! relation preservation for homomorphisms, well-definedness and `d∘d = 0`
//! for derivations, the full claim suite for integral claims, and staged
//! long-exact-sequence assembly for towers. [`verify_all`] runs the whole
//! catalog, fanning independent entries out under the chosen [`Exec`].

use crate::bassserre::{self, AssemblyResult, Mode};
use crate::catalog::{Catalog, Entry, Tower};
use crate::exec::Exec;
use crate::report::Report;
use crate::Result;

/// Assemble every stage of a tower and run its declared checks.
///
/// Stage results come back in order; the report carries one `CHECK` line
/// per declared surjectivity, delta-product, identification, and expected
/// answer, plus `NOTE` lines for ambiguities and recorded commentary. A
/// tower with no stages only reports its notes.
pub fn run_tower(
    tower: &Tower,
    id: &str,
    up_to: usize,
    exec: Exec,
) -> Result<(Vec<AssemblyResult>, Report)> {
    let mut rep = Report::new();
    for note in &tower.notes {
        rep.note(id, note);
    }
    if tower.stages.is_empty() {
        if let Some((cid, _)) = &tower.expect_claim {
            rep.note(id, format!("expected answer recorded as {cid}; no stages to assemble"));
        }
        return Ok((Vec::new(), rep));
    }

    let mut results = Vec::new();
    for (i, stage) in tower.stages.iter().enumerate() {
        let r = bassserre::run_stage(stage, tower.mode, tower.prime, i + 1, up_to, exec, id, &mut rep)?;
        results.push(r);
    }
    let last = results.last().expect("tower has stages");

    if let Some((cid, claim)) = &tower.expect_claim {
        match tower.mode {
            Mode::Integral => {
                let bad = bassserre::matches_claim(last, claim, up_to);
                rep.check(
                    format!("{id}.expect"),
                    bad.is_empty(),
                    if bad.is_empty() {
                        format!("assembled groups match {cid} in degrees 0..={up_to}")
                    } else {
                        bad.join("; ")
                    },
                );
            }
            Mode::Field => {
                let bad: Vec<String> = (0..=up_to)
                    .filter_map(|n| {
                        let want =
                            claim.free_rank(n) + claim.torsion_count(n) + claim.torsion_count(n + 1);
                        (last.dims[n] != want).then(|| {
                            format!("degree {n}: assembled dim {}, {cid} needs {want}", last.dims[n])
                        })
                    })
                    .collect();
                rep.check(
                    format!("{id}.expect"),
                    bad.is_empty(),
                    if bad.is_empty() {
                        format!("assembled dimensions match {cid} in degrees 0..={up_to}")
                    } else {
                        bad.join("; ")
                    },
                );
            }
        }
    }

    if let Some((gid, g)) = &tower.expect_group {
        if tower.mode == Mode::Field {
            rep.note(id, format!("{gid} not compared: field-mode assembly carries no group structure"));
        } else {
            let bound = up_to.min(g.max_degree);
            let mut bad = Vec::new();
            for n in 0..=bound {
                if last.group.free_rank(n) != g.group.free_rank(n)
                    || last.group.torsion_profile(n) != g.group.torsion_profile(n)
                {
                    bad.push(format!(
                        "degree {n}: assembled {}, {gid} lists {}",
                        last.group.render_degree(n),
                        g.group.render_degree(n)
                    ));
                }
            }
            rep.check(
                format!("{id}.group"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("assembled groups match {gid} in degrees 0..={bound}")
                } else {
                    bad.join("; ")
                },
            );
        }
    }

    Ok((results, rep))
}

/// Run every check one entry supports and return the report.
///
/// Recorded errata come first as `NOTE` lines: where a printed value was
/// corrected, the recomputed value is what gets verified and the
/// discrepancy is reported rather than failed.
pub fn verify_entry(cat: &Catalog, id: &str, up_to: usize, exec: Exec) -> Result<Report> {
    let mut rep = Report::new();
    for note in &cat.get(id)?.raw.errata {
        rep.note(id, note);
    }
    match &cat.get(id)?.entry {
        Entry::Algebra(a) => {
            let bad: Vec<usize> = a
                .relations()
                .iter()
                .enumerate()
                .filter(|(_, r)| !a.nf(r).is_zero())
                .map(|(k, _)| k + 1)
                .collect();
            rep.check(
                format!("{id}.nf"),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("all {} defining relations reduce to zero", a.relations().len())
                } else {
                    format!("relations {bad:?} do not reduce to zero")
                },
            );
        }
        Entry::Hom(h) => {
            let r = h.check();
            rep.check(
                format!("{id}.respects"),
                r.is_ok(),
                match r {
                    Ok(()) => "every defining relation of the source maps to zero".to_string(),
                    Err(e) => e.to_string(),
                },
            );
        }
        Entry::Derivation(d) => {
            let wd = d.check_well_defined();
            let ok = wd.is_ok();
            rep.check(
                format!("{id}.well-defined"),
                ok,
                match wd {
                    Ok(()) => "images of all defining relations reduce to zero".to_string(),
                    Err(e) => e.to_string(),
                },
            );
            if ok {
                let dd = d.square_zero_up_to(up_to);
                rep.check(
                    format!("{id}.dd"),
                    dd.is_ok(),
                    match dd {
                        Ok(()) => format!("d∘d = 0 in degrees 0..={up_to}"),
                        Err(e) => e.to_string(),
                    },
                );
            }
        }
        Entry::Claim(c) => rep.merge(c.verify(id, up_to, exec)),
        Entry::Tower(t) => {
            let (_, r) = run_tower(t, id, up_to, exec)?;
            rep.merge(r);
        }
        Entry::Group(g) => {
            rep.note(id, format!("tabulated groups through degree {}", g.max_degree));
        }
    }
    Ok(rep)
}

/// Verify every entry in the catalog, in id order.
pub fn verify_all(cat: &Catalog, up_to: usize, exec: Exec) -> Result<Report> {
    let ids: Vec<String> = cat.ids().map(str::to_string).collect();
    let reports = exec.map_collect(ids, |id| verify_entry(cat, &id, up_to, exec));
    let mut rep = Report::new();
    for r in reports {
        rep.merge(r?);
    }
    Ok(rep)
}
