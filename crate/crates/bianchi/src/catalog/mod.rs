//! The shipped dataset: every ring presentation, restriction map, first
//! Bockstein differential, integral ring claim, decomposition tower and
//! graded-group table, stored as text files and validated on load.
//!
//! Entries live one per file, named `<id>.cat`; the compiled-in set under
//! `data/` can be overridden with the `CATALOG_DIR` environment variable.
//! Loading parses every file, resolves cross-references in dependency
//! order and runs each module's structural checks, so a catalog that
//! loads is already known to be internally consistent: homs preserve
//! relations, derivations are well defined, claims only name generators
//! they declare.

pub mod ast;
mod parse;
mod print;

pub use ast::{EntryKind, PolyAst, RawBody, RawEntry};
pub use parse::parse_entry;
pub use print::{print_entry, render_poly};

use crate::bassserre::{DeltaProduct, GradedSide, Mode, Stage, StageKind};
use crate::bockstein::{ClassRep, GradedAbelianGroup, HigherOrder, IntegralRingClaim, ProductFact, TorsionBlock};
use crate::gradedalg::{AlgebraPresentation, Element, GeneratorDecl};
use crate::gradedmaps::{Derivation, GradedHom};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::sync::Arc;

include!(concat!(env!("OUT_DIR"), "/registry.rs"));

/// A graded abelian group entry: an explicitly tabulated answer, finite
/// range, used as an expected value by towers.
pub struct GroupData {
    pub prime: u8,
    pub group: GradedAbelianGroup,
    pub max_degree: usize,
}

/// A resolved multi-stage decomposition.
pub struct Tower {
    pub prime: u8,
    pub mode: Mode,
    pub stages: Vec<Stage>,
    pub notes: Vec<String>,
    pub expect_claim: Option<(String, Arc<IntegralRingClaim>)>,
    pub expect_group: Option<(String, Arc<GroupData>)>,
}

pub enum Entry {
    Algebra(Arc<AlgebraPresentation>),
    Hom(Arc<GradedHom>),
    Derivation(Arc<Derivation>),
    Claim(Arc<IntegralRingClaim>),
    Tower(Arc<Tower>),
    Group(Arc<GroupData>),
}

pub struct CatalogEntry {
    pub raw: RawEntry,
    pub entry: Entry,
}

pub struct Catalog {
    entries: BTreeMap<String, CatalogEntry>,
}

fn invalid(id: &str, msg: impl Into<String>) -> Error {
    Error::EntryInvalid { id: id.to_string(), msg: msg.into() }
}

fn eval_poly(a: &AlgebraPresentation, p: &PolyAst) -> Result<Element> {
    Ok(match p {
        PolyAst::Sum(parts) => {
            let mut acc = Element::zero();
            for part in parts {
                acc = a.add(&acc, &eval_poly(a, part)?);
            }
            acc
        }
        PolyAst::Prod(parts) => {
            let mut acc = a.one();
            for part in parts {
                acc = a.mul_free(&acc, &eval_poly(a, part)?);
            }
            acc
        }
        PolyAst::Pow(base, e) => {
            let b = eval_poly(a, base)?;
            let mut acc = a.one();
            for _ in 0..*e {
                acc = a.mul_free(&acc, &b);
            }
            acc
        }
        PolyAst::Neg(inner) => {
            let x = eval_poly(a, inner)?;
            a.scale(&x, a.prime() - 1)
        }
        PolyAst::Gen(name) => a.gen_elem(name)?,
        PolyAst::Int(v) => {
            let c = v.rem_euclid(a.prime() as i64) as u8;
            a.scale(&a.one(), c)
        }
    })
}

fn build_presentation(
    id: &str,
    prime: u8,
    gens: &[ast::RawGen],
    rels: &[PolyAst],
) -> Result<(AlgebraPresentation, Vec<Element>)> {
    for g in gens {
        if g.ext && (prime == 2 || g.degree % 2 == 0) {
            return Err(invalid(
                id,
                format!(
                    "generator {}: 'ext' only marks odd-degree generators over an odd prime; \
                     even-degree exterior generators need an explicit square relation",
                    g.name
                ),
            ));
        }
    }
    let decls: Vec<(GeneratorDecl, usize)> = gens
        .iter()
        .map(|g| (GeneratorDecl { name: g.name.clone(), degree: g.degree }, g.block))
        .collect();
    let mut a = AlgebraPresentation::new(prime, decls).map_err(|e| invalid(id, e.to_string()))?;
    let mut rel_elems = Vec::new();
    for (k, r) in rels.iter().enumerate() {
        let e = eval_poly(&a, r).map_err(|err| invalid(id, format!("relation {}: {err}", k + 1)))?;
        a.add_relation(e.clone())
            .map_err(|err| invalid(id, format!("relation {}: {err}", k + 1)))?;
        rel_elems.push(e);
    }
    Ok((a, rel_elems))
}

impl Catalog {
    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry> {
        self.entries.get(id).ok_or_else(|| Error::UnknownEntry(id.to_string()))
    }

    pub fn algebra(&self, id: &str) -> Result<Arc<AlgebraPresentation>> {
        match &self.get(id)?.entry {
            Entry::Algebra(a) => Ok(Arc::clone(a)),
            _ => Err(invalid(id, "expected an algebra entry")),
        }
    }

    /// The presentation behind an id: an algebra entry directly, or the
    /// summand model of a claim entry.
    pub fn model_of(&self, id: &str) -> Result<Arc<AlgebraPresentation>> {
        match &self.get(id)?.entry {
            Entry::Algebra(a) => Ok(Arc::clone(a)),
            Entry::Claim(c) => Ok(Arc::clone(&c.model)),
            _ => Err(invalid(id, "expected an algebra or claim entry")),
        }
    }

    pub fn hom(&self, id: &str) -> Result<Arc<GradedHom>> {
        match &self.get(id)?.entry {
            Entry::Hom(h) => Ok(Arc::clone(h)),
            _ => Err(invalid(id, "expected a hom entry")),
        }
    }

    pub fn derivation(&self, id: &str) -> Result<Arc<Derivation>> {
        match &self.get(id)?.entry {
            Entry::Derivation(d) => Ok(Arc::clone(d)),
            _ => Err(invalid(id, "expected a derivation entry")),
        }
    }

    pub fn claim(&self, id: &str) -> Result<Arc<IntegralRingClaim>> {
        match &self.get(id)?.entry {
            Entry::Claim(c) => Ok(Arc::clone(c)),
            _ => Err(invalid(id, "expected a claim entry")),
        }
    }

    pub fn tower(&self, id: &str) -> Result<Arc<Tower>> {
        match &self.get(id)?.entry {
            Entry::Tower(t) => Ok(Arc::clone(t)),
            _ => Err(invalid(id, "expected a tower entry")),
        }
    }

    pub fn group(&self, id: &str) -> Result<Arc<GroupData>> {
        match &self.get(id)?.entry {
            Entry::Group(g) => Ok(Arc::clone(g)),
            _ => Err(invalid(id, "expected a graded-group entry")),
        }
    }
}

fn dependencies(raw: &RawEntry) -> Vec<String> {
    let mut deps = Vec::new();
    match &raw.body {
        RawBody::Algebra(_) | RawBody::Group(_) => {}
        RawBody::Hom(h) => {
            deps.push(h.source.clone());
            deps.push(h.target.clone());
        }
        RawBody::Derivation(d) => deps.push(d.on.clone()),
        RawBody::Claim(c) => {
            deps.extend(c.modp.iter().cloned());
            deps.extend(c.sq1.iter().cloned());
        }
        RawBody::Tower(t) => {
            for s in &t.stages {
                for v in &s.vertices {
                    if let ast::RawVertexRef::Catalog(id) = v {
                        deps.push(id.clone());
                    }
                }
                deps.extend(s.edge.iter().cloned());
                for h in s.homs.iter().flatten() {
                    if let ast::RawHomRef::Entry(id) = h {
                        deps.push(id.clone());
                    }
                }
                deps.extend(s.identify.iter().cloned());
            }
            deps.extend(t.expect_claim.iter().cloned());
            deps.extend(t.expect_group.iter().cloned());
        }
    }
    deps
}

fn resolve_algebra(id: &str, a: &ast::RawAlgebra) -> Result<Entry> {
    let (alg, _) = build_presentation(id, a.prime, &a.gens, &a.rels)?;
    Ok(Entry::Algebra(Arc::new(alg)))
}

fn resolve_hom(id: &str, h: &ast::RawHom, cat: &Catalog) -> Result<Entry> {
    let source = cat.model_of(&h.source).map_err(|e| invalid(id, e.to_string()))?;
    let target = cat.model_of(&h.target).map_err(|e| invalid(id, e.to_string()))?;
    let mut named = Vec::new();
    for (g, p) in &h.maps {
        let img = eval_poly(&target, p).map_err(|e| invalid(id, format!("map {g}: {e}")))?;
        named.push((g.clone(), img));
    }
    let hom = GradedHom::new(source, target, &named).map_err(|e| invalid(id, e.to_string()))?;
    hom.check().map_err(|e| invalid(id, e.to_string()))?;
    Ok(Entry::Hom(Arc::new(hom)))
}

fn resolve_derivation(id: &str, d: &ast::RawDerivation, cat: &Catalog) -> Result<Entry> {
    let on = cat.algebra(&d.on).map_err(|e| invalid(id, e.to_string()))?;
    let mut named = Vec::new();
    for (g, p) in &d.maps {
        let img = eval_poly(&on, p).map_err(|e| invalid(id, format!("sq1 {g}: {e}")))?;
        named.push((g.clone(), img));
    }
    let der = Derivation::new(on, &named).map_err(|e| invalid(id, e.to_string()))?;
    der.check_well_defined().map_err(|e| invalid(id, e.to_string()))?;
    Ok(Entry::Derivation(Arc::new(der)))
}

fn power_of(prime: u8, order: u64) -> Option<u32> {
    let mut v = 1u64;
    let mut pw = 0u32;
    while v < order {
        v = v.checked_mul(prime as u64)?;
        pw += 1;
    }
    (v == order).then_some(pw)
}

fn resolve_claim(id: &str, c: &ast::RawClaim, cat: &Catalog) -> Result<Entry> {
    let (mut model, table) = build_presentation(id, c.prime, &c.gens, &c.rels)?;
    for (k, r) in c.srels.iter().enumerate() {
        let e = eval_poly(&model, r)
            .map_err(|err| invalid(id, format!("structural relation {}: {err}", k + 1)))?;
        model
            .add_relation(e)
            .map_err(|err| invalid(id, format!("structural relation {}: {err}", k + 1)))?;
    }
    let model = Arc::new(model);

    let mut free_gens = BTreeSet::new();
    for name in &c.free {
        let i = model.gen_index(name).map_err(|e| invalid(id, e.to_string()))?;
        free_gens.insert(i);
    }
    let mut higher = Vec::new();
    for (name, order) in &c.tors {
        let gen = model.gen_index(name).map_err(|e| invalid(id, e.to_string()))?;
        let power = power_of(c.prime, *order)
            .filter(|&pw| pw >= 2)
            .ok_or_else(|| {
                invalid(id, format!("order {order} of {name} is not a power p^k, k >= 2, of {}", c.prime))
            })?;
        if free_gens.contains(&gen) {
            return Err(invalid(id, format!("{name} is marked both free and torsion")));
        }
        higher.push(HigherOrder { gen, power });
    }

    let modp = match &c.modp {
        Some(mid) => Some(cat.algebra(mid).map_err(|e| invalid(id, e.to_string()))?),
        None => None,
    };
    if let Some(m) = &modp {
        if m.prime() != c.prime {
            return Err(invalid(id, "mod-p ring has a different prime than the claim"));
        }
    }

    let mut reps = BTreeMap::new();
    if !c.reps.is_empty() || !c.wits.is_empty() {
        let m = modp
            .as_ref()
            .ok_or_else(|| invalid(id, "representatives need a 'modp' ring"))?;
        for (name, img, wit) in &c.reps {
            let gen = model.gen_index(name).map_err(|e| invalid(id, e.to_string()))?;
            let image =
                eval_poly(m, img).map_err(|e| invalid(id, format!("rep {name}: {e}")))?;
            let witness = match wit {
                Some(w) => Some(
                    eval_poly(m, w).map_err(|e| invalid(id, format!("rep {name} witness: {e}")))?,
                ),
                None => None,
            };
            if reps.insert(gen, ClassRep { image, witness }).is_some() {
                return Err(invalid(id, format!("duplicate rep for {name}")));
            }
        }
    }
    let mut extra_witnesses = Vec::new();
    if let Some(m) = &modp {
        for (k, (w, v)) in c.wits.iter().enumerate() {
            let we = eval_poly(m, w).map_err(|e| invalid(id, format!("wit {}: {e}", k + 1)))?;
            let ve = eval_poly(m, v).map_err(|e| invalid(id, format!("wit {}: {e}", k + 1)))?;
            extra_witnesses.push((we, ve));
        }
    }

    if !table.is_empty() {
        if modp.is_none() {
            return Err(invalid(id, "tabulated relations need a 'modp' ring to reduce into"));
        }
        for (k, r) in table.iter().enumerate() {
            for (_, mono) in r.terms.keys() {
                for (g, &e) in mono.exps.iter().enumerate() {
                    if e > 0 && !reps.contains_key(&g) {
                        return Err(invalid(
                            id,
                            format!(
                                "relation {} uses {} which has no rep line",
                                k + 1,
                                model.gens()[g].name
                            ),
                        ));
                    }
                }
            }
        }
    }

    let mut products = Vec::new();
    for (g1, g2, k, g3) in &c.products {
        let left = model.gen_index(g1).map_err(|e| invalid(id, e.to_string()))?;
        let right = model.gen_index(g2).map_err(|e| invalid(id, e.to_string()))?;
        let result = model.gen_index(g3).map_err(|e| invalid(id, e.to_string()))?;
        products.push(ProductFact { left, right, multiplier: *k, result });
    }

    let sq1 = match &c.sq1 {
        Some(did) => {
            let d = cat.derivation(did).map_err(|e| invalid(id, e.to_string()))?;
            let m = modp
                .as_ref()
                .ok_or_else(|| invalid(id, "a 'sq1' reference needs a 'modp' ring"))?;
            if !Arc::ptr_eq(&d.algebra, m) {
                return Err(invalid(id, format!("derivation {did} lives on a different ring")));
            }
            Some(d)
        }
        None => None,
    };

    Ok(Entry::Claim(Arc::new(IntegralRingClaim {
        prime: c.prime,
        model,
        table_relations: table,
        free_gens,
        higher,
        reps,
        extra_witnesses,
        products,
        modp,
        sq1,
    })))
}

fn resolve_group(id: &str, g: &ast::RawGroup) -> Result<Entry> {
    let max_free = g.free.iter().map(|&(d, _)| d).max().unwrap_or(0);
    let max_tors = g.tors.iter().map(|&(d, _, _)| d).max().unwrap_or(0);
    let max_degree = max_free.max(max_tors);
    let mut group = GradedAbelianGroup {
        free: vec![0; max_degree + 1],
        torsion: vec![Vec::new(); max_degree + 1],
    };
    for &(d, r) in &g.free {
        group.free[d] += r;
    }
    for &(d, order, count) in &g.tors {
        let power = power_of(g.prime, order)
            .filter(|&pw| pw >= 1)
            .ok_or_else(|| invalid(id, format!("order {order} is not a power of {}", g.prime)))?;
        group.torsion[d].push(TorsionBlock { prime: g.prime, power, count });
    }
    Ok(Entry::Group(Arc::new(GroupData { prime: g.prime, group, max_degree })))
}

fn resolve_tower(id: &str, t: &ast::RawTower, cat: &Catalog) -> Result<Entry> {
    let mode = if t.field_mode { Mode::Field } else { Mode::Integral };
    let mut stages: Vec<Stage> = Vec::new();
    for (i, rs) in t.stages.iter().enumerate() {
        let sid = format!("stage {}", i + 1);
        let kind = if rs.amalgam { StageKind::Amalgam } else { StageKind::Hnn };
        let want_vertices = if rs.amalgam { 2 } else { 1 };
        if rs.vertices.len() != want_vertices {
            return Err(invalid(
                id,
                format!("{sid}: expected {want_vertices} vertex lines, found {}", rs.vertices.len()),
            ));
        }
        let mut vertices = Vec::new();
        for v in &rs.vertices {
            let side = match v {
                ast::RawVertexRef::Catalog(vid) => match mode {
                    Mode::Integral => {
                        let claim =
                            cat.claim(vid).map_err(|e| invalid(id, format!("{sid}: {e}")))?;
                        GradedSide::from_claim(&claim)
                    }
                    Mode::Field => GradedSide::from_ring(
                        cat.algebra(vid).map_err(|e| invalid(id, format!("{sid}: {e}")))?,
                    ),
                },
                ast::RawVertexRef::Stage(k) => {
                    if mode == Mode::Field {
                        return Err(invalid(
                            id,
                            format!("{sid}: stage references need integral mode"),
                        ));
                    }
                    if *k == 0 || *k > i {
                        return Err(invalid(id, format!("{sid}: vertex references stage {k}")));
                    }
                    let prev: &Stage = &stages[*k - 1];
                    let claim = prev.identify.as_ref().ok_or_else(|| {
                        invalid(
                            id,
                            format!("{sid}: stage {k} has no identify line to supply a vertex"),
                        )
                    })?;
                    GradedSide::from_claim(&claim.1)
                }
            };
            vertices.push(side);
        }
        let edge_id = rs
            .edge
            .as_ref()
            .ok_or_else(|| invalid(id, format!("{sid}: missing 'edge' line")))?;
        let edge = match mode {
            Mode::Integral => {
                let claim = cat.claim(edge_id).map_err(|e| invalid(id, format!("{sid}: {e}")))?;
                GradedSide::from_claim(&claim)
            }
            Mode::Field => GradedSide::from_ring(
                cat.algebra(edge_id).map_err(|e| invalid(id, format!("{sid}: {e}")))?,
            ),
        };

        let mut homs = Vec::new();
        for slot in 0..2 {
            let vertex_model = if rs.amalgam {
                &vertices[slot].model
            } else {
                &vertices[0].model
            };
            let hom = match &rs.homs[slot] {
                Some(ast::RawHomRef::Entry(hid)) => {
                    let h = cat.hom(hid).map_err(|e| invalid(id, format!("{sid}: {e}")))?;
                    if !Arc::ptr_eq(&h.source, vertex_model) {
                        return Err(invalid(
                            id,
                            format!("{sid}: {hid} does not start at the declared vertex"),
                        ));
                    }
                    if !Arc::ptr_eq(&h.target, &edge.model) {
                        return Err(invalid(
                            id,
                            format!("{sid}: {hid} does not land in the declared edge"),
                        ));
                    }
                    h
                }
                Some(ast::RawHomRef::Inline(maps)) => {
                    let mut named = Vec::new();
                    for (g, p) in maps {
                        let img = eval_poly(&edge.model, p)
                            .map_err(|e| invalid(id, format!("{sid}: map {g}: {e}")))?;
                        named.push((g.clone(), img));
                    }
                    let h = GradedHom::new(Arc::clone(vertex_model), Arc::clone(&edge.model), &named)
                        .map_err(|e| invalid(id, format!("{sid}: {e}")))?;
                    h.check().map_err(|e| invalid(id, format!("{sid}: {e}")))?;
                    Arc::new(h)
                }
                None => {
                    let h = GradedHom::new(Arc::clone(vertex_model), Arc::clone(&edge.model), &[])
                        .map_err(|e| invalid(id, format!("{sid}: {e}")))?;
                    Arc::new(h)
                }
            };
            homs.push(hom);
        }

        let identify = match &rs.identify {
            Some(cid) => Some((
                cid.clone(),
                cat.claim(cid).map_err(|e| invalid(id, format!("{sid}: {e}")))?,
            )),
            None => None,
        };

        let mut dprods = Vec::new();
        for (k, (u, v, w)) in rs.dprods.iter().enumerate() {
            let ue = eval_poly(&vertices[0].model, u)
                .map_err(|e| invalid(id, format!("{sid}: dprod {}: {e}", k + 1)))?;
            let ve = eval_poly(&edge.model, v)
                .map_err(|e| invalid(id, format!("{sid}: dprod {}: {e}", k + 1)))?;
            let we = eval_poly(&edge.model, w)
                .map_err(|e| invalid(id, format!("{sid}: dprod {}: {e}", k + 1)))?;
            dprods.push(DeltaProduct { u: ue, v: ve, w: we });
        }

        stages.push(Stage {
            kind,
            vertices,
            edge,
            homs,
            order4: rs.order4.clone(),
            surjective_from: rs.surjective_from,
            identify,
            dprods,
            notes: rs.notes.clone(),
        });
    }

    let expect_claim = match &t.expect_claim {
        Some(cid) => Some((cid.clone(), cat.claim(cid).map_err(|e| invalid(id, e.to_string()))?)),
        None => None,
    };
    let expect_group = match &t.expect_group {
        Some(gid) => Some((gid.clone(), cat.group(gid).map_err(|e| invalid(id, e.to_string()))?)),
        None => None,
    };

    Ok(Entry::Tower(Arc::new(Tower {
        prime: t.prime,
        mode,
        stages,
        notes: t.notes.clone(),
        expect_claim,
        expect_group,
    })))
}

fn resolve_entry(raw: &RawEntry, cat: &Catalog) -> Result<Entry> {
    match &raw.body {
        RawBody::Algebra(a) => resolve_algebra(&raw.id, a),
        RawBody::Hom(h) => resolve_hom(&raw.id, h, cat),
        RawBody::Derivation(d) => resolve_derivation(&raw.id, d, cat),
        RawBody::Claim(c) => resolve_claim(&raw.id, c, cat),
        RawBody::Tower(t) => resolve_tower(&raw.id, t, cat),
        RawBody::Group(g) => resolve_group(&raw.id, g),
    }
}

/// Load a catalog from `(id, text)` pairs, resolving references in
/// dependency order.
pub fn load_from(files: &[(String, String)]) -> Result<Catalog> {
    let mut raws = Vec::new();
    let mut seen = BTreeSet::new();
    for (id, text) in files {
        if !seen.insert(id.clone()) {
            return Err(Error::Invalid(format!("duplicate catalog id '{id}'")));
        }
        let raw =
            parse_entry(id, text).map_err(|e| invalid(id, e.to_string()))?;
        raws.push(raw);
    }
    let known: BTreeSet<String> = raws.iter().map(|r| r.id.clone()).collect();
    for raw in &raws {
        for dep in dependencies(raw) {
            if !known.contains(&dep) {
                return Err(invalid(&raw.id, format!("references missing entry '{dep}'")));
            }
        }
    }

    let mut cat = Catalog { entries: BTreeMap::new() };
    let mut pending: Vec<RawEntry> = raws;
    while !pending.is_empty() {
        let mut progressed = false;
        let mut still = Vec::new();
        for raw in pending {
            let ready = dependencies(&raw)
                .iter()
                .all(|dep| cat.entries.contains_key(dep));
            if ready {
                let entry = resolve_entry(&raw, &cat)?;
                cat.entries.insert(raw.id.clone(), CatalogEntry { raw, entry });
                progressed = true;
            } else {
                still.push(raw);
            }
        }
        if !progressed {
            let names: Vec<&str> = still.iter().map(|r| r.id.as_str()).collect();
            return Err(Error::Invalid(format!(
                "circular catalog references among {names:?}"
            )));
        }
        pending = still;
    }
    Ok(cat)
}

/// Read every `*.cat` file in a directory as `(stem, text)` pairs.
pub fn dir_sources(dir: &Path) -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    let mut names = Vec::new();
    for entry in std::fs::read_dir(dir)
        .map_err(|e| Error::Invalid(format!("cannot read catalog directory {}: {e}", dir.display())))?
    {
        let entry = entry.map_err(|e| Error::Invalid(e.to_string()))?;
        let path = entry.path();
        if path.extension().and_then(|s| s.to_str()) == Some("cat") {
            names.push(path);
        }
    }
    names.sort();
    for path in names {
        let id = path
            .file_stem()
            .and_then(|s| s.to_str())
            .ok_or_else(|| Error::Invalid(format!("bad catalog file name {}", path.display())))?
            .to_string();
        let text = std::fs::read_to_string(&path)
            .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
        files.push((id, text));
    }
    Ok(files)
}

/// Load every `*.cat` file in a directory; each file's stem is its id.
pub fn load_dir(dir: &Path) -> Result<Catalog> {
    load_from(&dir_sources(dir)?)
}

/// The raw sources [`load_default`] would parse: the directory named by
/// `CATALOG_DIR` if set, the builtin set otherwise.
pub fn default_sources() -> Result<Vec<(String, String)>> {
    match std::env::var_os("CATALOG_DIR") {
        Some(dir) => dir_sources(Path::new(&dir)),
        None => Ok(BUILTIN_FILES
            .iter()
            .map(|&(id, text)| (id.to_string(), text.to_string()))
            .collect()),
    }
}

/// The compiled-in dataset.
pub fn builtin() -> Result<Catalog> {
    let files: Vec<(String, String)> = BUILTIN_FILES
        .iter()
        .map(|&(id, text)| (id.to_string(), text.to_string()))
        .collect();
    load_from(&files)
}

/// The builtin dataset, or the directory named by `CATALOG_DIR` if set.
pub fn load_default() -> Result<Catalog> {
    match std::env::var_os("CATALOG_DIR") {
        Some(dir) => load_dir(Path::new(&dir)),
        None => builtin(),
    }
}

/// Raw text of every compiled-in file, for round-trip tests.
pub fn builtin_sources() -> &'static [(&'static str, &'static str)] {
    BUILTIN_FILES
}
