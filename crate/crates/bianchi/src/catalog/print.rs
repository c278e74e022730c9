//! Canonical printer for catalog entries. Printing a parsed entry and
//! parsing the output again yields an equal entry.

use super::ast::*;
use std::fmt::Write;

fn poly_atom(p: &PolyAst) -> bool {
    matches!(p, PolyAst::Gen(_) | PolyAst::Int(_) | PolyAst::Pow(_, _))
}

pub fn render_poly(p: &PolyAst) -> String {
    match p {
        PolyAst::Sum(parts) => {
            let mut out = String::new();
            for (i, part) in parts.iter().enumerate() {
                match part {
                    PolyAst::Neg(inner) if i > 0 => {
                        write!(out, " - {}", render_poly(inner)).unwrap();
                    }
                    _ if i > 0 => {
                        write!(out, " + {}", render_poly(part)).unwrap();
                    }
                    _ => out.push_str(&render_poly(part)),
                }
            }
            out
        }
        PolyAst::Prod(parts) => parts
            .iter()
            .map(|part| {
                if poly_atom(part) {
                    render_poly(part)
                } else {
                    format!("({})", render_poly(part))
                }
            })
            .collect::<Vec<_>>()
            .join("*"),
        PolyAst::Pow(base, e) => {
            if poly_atom(base) && !matches!(**base, PolyAst::Pow(_, _)) {
                format!("{}^{e}", render_poly(base))
            } else {
                format!("({})^{e}", render_poly(base))
            }
        }
        PolyAst::Neg(inner) => {
            if poly_atom(inner) {
                format!("-{}", render_poly(inner))
            } else {
                format!("-({})", render_poly(inner))
            }
        }
        PolyAst::Gen(g) => g.clone(),
        PolyAst::Int(v) => v.to_string(),
    }
}

fn push_gens(out: &mut String, gens: &[RawGen]) {
    let mut block = 0;
    for g in gens {
        while g.block > block {
            out.push_str("block\n");
            block += 1;
        }
        write!(out, "gen {} deg {}", g.name, g.degree).unwrap();
        if g.ext {
            out.push_str(" ext");
        }
        out.push('\n');
    }
}

pub fn print_entry(e: &RawEntry) -> String {
    let mut out = String::new();
    writeln!(out, "kind {}", e.kind.name()).unwrap();
    writeln!(out, "src \"{}\"", e.src).unwrap();
    for note in &e.errata {
        writeln!(out, "errata \"{note}\"").unwrap();
    }
    match &e.body {
        RawBody::Algebra(a) => {
            writeln!(out, "field {}", a.prime).unwrap();
            push_gens(&mut out, &a.gens);
            for r in &a.rels {
                writeln!(out, "rel {}", render_poly(r)).unwrap();
            }
        }
        RawBody::Hom(h) => {
            writeln!(out, "source {}", h.source).unwrap();
            writeln!(out, "target {}", h.target).unwrap();
            for (g, p) in &h.maps {
                writeln!(out, "map {g} -> {}", render_poly(p)).unwrap();
            }
        }
        RawBody::Derivation(d) => {
            writeln!(out, "on {}", d.on).unwrap();
            for (g, p) in &d.maps {
                writeln!(out, "sq1 {g} -> {}", render_poly(p)).unwrap();
            }
        }
        RawBody::Claim(cl) => {
            writeln!(out, "prime {}", cl.prime).unwrap();
            push_gens(&mut out, &cl.gens);
            for r in &cl.rels {
                writeln!(out, "rel {}", render_poly(r)).unwrap();
            }
            for r in &cl.srels {
                writeln!(out, "srel {}", render_poly(r)).unwrap();
            }
            for g in &cl.free {
                writeln!(out, "free {g}").unwrap();
            }
            for (g, k) in &cl.tors {
                writeln!(out, "tors {g} order {k}").unwrap();
            }
            for (g, p, wit) in &cl.reps {
                match wit {
                    Some(w) => {
                        writeln!(out, "rep {g} = {} via {}", render_poly(p), render_poly(w))
                            .unwrap();
                    }
                    None => writeln!(out, "rep {g} = {}", render_poly(p)).unwrap(),
                }
            }
            for (w, v) in &cl.wits {
                writeln!(out, "wit {} = {}", render_poly(w), render_poly(v)).unwrap();
            }
            for (g1, g2, k, g3) in &cl.products {
                writeln!(out, "product {g1} {g2} = {k} {g3}").unwrap();
            }
            if let Some(m) = &cl.modp {
                writeln!(out, "modp {m}").unwrap();
            }
            if let Some(s) = &cl.sq1 {
                writeln!(out, "sq1 {s}").unwrap();
            }
        }
        RawBody::Tower(t) => {
            writeln!(out, "prime {}", t.prime).unwrap();
            if t.field_mode {
                writeln!(out, "mode modp").unwrap();
            }
            for note in &t.notes {
                writeln!(out, "note \"{note}\"").unwrap();
            }
            for (i, s) in t.stages.iter().enumerate() {
                writeln!(out, "stage {} {}", i + 1, if s.amalgam { "amalgam" } else { "hnn" })
                    .unwrap();
                for v in &s.vertices {
                    match v {
                        RawVertexRef::Catalog(id) => writeln!(out, "vertex catalog {id}").unwrap(),
                        RawVertexRef::Stage(k) => writeln!(out, "vertex stage {k}").unwrap(),
                    }
                }
                if let Some(edge) = &s.edge {
                    writeln!(out, "edge catalog {edge}").unwrap();
                }
                let roles = if s.amalgam { ["res1", "res2"] } else { ["res", "theta"] };
                for (slot, role) in roles.iter().enumerate() {
                    match &s.homs[slot] {
                        Some(RawHomRef::Entry(id)) => writeln!(out, "{role} hom {id}").unwrap(),
                        Some(RawHomRef::Inline(maps)) => {
                            for (g, p) in maps {
                                writeln!(out, "{role} {g} -> {}", render_poly(p)).unwrap();
                            }
                        }
                        None => {}
                    }
                }
                for d in &s.order4 {
                    writeln!(out, "fact order4 deg {d}").unwrap();
                }
                if let Some(from) = s.surjective_from {
                    writeln!(out, "check surjective from {from}").unwrap();
                }
                if let Some(id) = &s.identify {
                    writeln!(out, "identify catalog {id}").unwrap();
                }
                for (u, v, w) in &s.dprods {
                    writeln!(
                        out,
                        "dprod {} | {} | {}",
                        render_poly(u),
                        render_poly(v),
                        render_poly(w)
                    )
                    .unwrap();
                }
                for note in &s.notes {
                    writeln!(out, "note \"{note}\"").unwrap();
                }
            }
            if let Some(id) = &t.expect_claim {
                writeln!(out, "expect claim {id}").unwrap();
            }
            if let Some(id) = &t.expect_group {
                writeln!(out, "expect group {id}").unwrap();
            }
        }
        RawBody::Group(g) => {
            writeln!(out, "prime {}", g.prime).unwrap();
            for (d, r) in &g.free {
                writeln!(out, "free {d} {r}").unwrap();
            }
            for (d, k, n) in &g.tors {
                writeln!(out, "tors {d} order {k} count {n}").unwrap();
            }
        }
    }
    out
}
