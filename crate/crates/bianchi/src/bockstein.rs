//! Bockstein page dimensions and verification of integral ring claims.
//!
//! The first Bockstein differential is a degree-(+1) derivation on the
//! mod-p cohomology ring; [`e2_dims`] computes the dimensions of its
//! homology. An [`IntegralRingClaim`] packages a claimed integral ring
//! structure as an 𝔽ₚ presentation whose standard monomials enumerate the
//! integral summands, together with registries saying which generators are
//! torsion-free and which carry order p² or more, plus correspondences
//! into the mod-p ring. Verification replays the standard consistency
//! checks: reduction of the claimed relations, Universal-Coefficient
//! dimension counts at the claim's prime, and the E₂-page accounting that
//! pins down how many classes of order p² or more each degree carries.

use crate::exec::Exec;
use crate::gradedalg::{AlgebraPresentation, Element, Mono};
use crate::gradedmaps::{Derivation, GradedHom};
use crate::report::Report;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// `count` copies of ℤ/prime^power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBlock {
    pub prime: u8,
    pub power: u32,
    pub count: usize,
}

/// A graded abelian group, one free rank and one torsion list per degree.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GradedAbelianGroup {
    pub free: Vec<usize>,
    pub torsion: Vec<Vec<TorsionBlock>>,
}

impl GradedAbelianGroup {
    pub fn max_degree(&self) -> usize {
        self.free.len().saturating_sub(1)
    }

    pub fn free_rank(&self, n: usize) -> usize {
        self.free.get(n).copied().unwrap_or(0)
    }

    /// The torsion at degree n as `(prime, power) -> count` with zero
    /// counts dropped.
    pub fn torsion_profile(&self, n: usize) -> BTreeMap<(u8, u32), usize> {
        let mut out = BTreeMap::new();
        if let Some(blocks) = self.torsion.get(n) {
            for b in blocks {
                if b.count > 0 {
                    *out.entry((b.prime, b.power)).or_insert(0) += b.count;
                }
            }
        }
        out
    }

    pub fn render_degree(&self, n: usize) -> String {
        let mut parts = Vec::new();
        let f = self.free_rank(n);
        if f == 1 {
            parts.push("Z".to_string());
        } else if f > 1 {
            parts.push(format!("Z^{f}"));
        }
        for ((p, r), count) in self.torsion_profile(n) {
            let order = (p as u64).pow(r);
            if count == 1 {
                parts.push(format!("Z/{order}"));
            } else {
                parts.push(format!("(Z/{order})^{count}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Dimensions of the second Bockstein page in degrees `0..=up_to`.
///
/// `E2(n) = dim ker(d: A_n -> A_{n+1}) - dim im(d: A_{n-1} -> A_n)`.
pub fn e2_dims(d: &Derivation, up_to: usize, exec: Exec) -> Vec<usize> {
    let ranks = exec.map_degrees(up_to, |n| d.matrix(n).rank());
    let dims: Vec<usize> = (0..=up_to).map(|n| d.algebra.dim(n)).collect();
    (0..=up_to)
        .map(|n| {
            let ker = dims[n] - ranks[n];
            let im = if n == 0 { 0 } else { ranks[n - 1] };
            assert!(im <= ker, "derivation does not square to zero at degree {n}");
            ker - im
        })
        .collect()
}

/// A named class of order prime^power, with its mod-p representative.
#[derive(Clone, Debug)]
pub struct HigherOrder {
    pub gen: usize,
    pub power: u32,
}

/// An exceptional product statement `left * right = multiplier * result`.
#[derive(Clone, Debug)]
pub struct ProductFact {
    pub left: usize,
    pub right: usize,
    pub multiplier: u32,
    pub result: usize,
}

/// The mod-p representative of a claim generator, with an optional
/// Bockstein witness: a class whose first Bockstein is the representative.
#[derive(Clone, Debug)]
pub struct ClassRep {
    pub image: Element,
    pub witness: Option<Element>,
}

/// A claimed integral cohomology ring at one prime.
///
/// The `model` presentation has one generator per named integral class;
/// its standard monomials at degree n enumerate the integral summands
/// there. Monomials built entirely from `free_gens` count toward the free
/// rank, every other monomial is one torsion summand of order `prime`,
/// except that each entry of `higher` upgrades one summand in its degree
/// to order `prime^power`.
pub struct IntegralRingClaim {
    pub prime: u8,
    pub model: Arc<AlgebraPresentation>,
    pub table_relations: Vec<Element>,
    pub free_gens: BTreeSet<usize>,
    pub higher: Vec<HigherOrder>,
    pub reps: BTreeMap<usize, ClassRep>,
    pub extra_witnesses: Vec<(Element, Element)>,
    pub products: Vec<ProductFact>,
    pub modp: Option<Arc<AlgebraPresentation>>,
    pub sq1: Option<Arc<Derivation>>,
}

impl IntegralRingClaim {
    /// Number of standard monomials at degree n supported entirely on
    /// torsion-free generators. The unit counts at degree 0.
    pub fn free_rank(&self, n: usize) -> usize {
        self.model
            .basis(n)
            .standard
            .iter()
            .filter(|m| self.is_free_mono(m))
            .count()
    }

    fn is_free_mono(&self, m: &Mono) -> bool {
        m.exps
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || self.free_gens.contains(&i))
    }

    /// Number of torsion summands at degree n.
    pub fn torsion_count(&self, n: usize) -> usize {
        self.model.dim(n) - self.free_rank(n)
    }

    /// Number of summands of order prime^2 or more at degree n.
    pub fn higher_count(&self, n: usize) -> usize {
        self.higher
            .iter()
            .filter(|h| self.model.gens()[h.gen].degree == n)
            .count()
    }

    /// The claim as a graded abelian group in degrees `0..=up_to`.
    pub fn as_graded_group(&self, up_to: usize) -> GradedAbelianGroup {
        let mut g = GradedAbelianGroup::default();
        for n in 0..=up_to {
            g.free.push(self.free_rank(n));
            let mut blocks = Vec::new();
            let ordinary = self.torsion_count(n) - self.higher_count(n);
            if ordinary > 0 {
                blocks.push(TorsionBlock { prime: self.prime, power: 1, count: ordinary });
            }
            for h in &self.higher {
                if self.model.gens()[h.gen].degree == n {
                    blocks.push(TorsionBlock { prime: self.prime, power: h.power, count: 1 });
                }
            }
            g.torsion.push(blocks);
        }
        g
    }

    /// The correspondence as a homomorphism from the model into the mod-p
    /// ring, defined on generators with representatives.
    pub fn correspondence_hom(&self) -> Result<GradedHom> {
        let modp = self
            .modp
            .as_ref()
            .ok_or_else(|| Error::Invalid("claim has no mod-p ring".into()))?;
        let named: Vec<(String, Element)> = self
            .reps
            .iter()
            .map(|(&g, r)| (self.model.gens()[g].name.clone(), r.image.clone()))
            .collect();
        GradedHom::new(Arc::clone(&self.model), Arc::clone(modp), &named)
    }

    /// Run only the Universal-Coefficient dimension check.
    pub fn uct_report(&self, entry_id: &str, up_to: usize, exec: Exec) -> Report {
        let mut rep = Report::new();
        self.verify_uct(entry_id, up_to, &mut rep, exec);
        rep
    }

    /// Run every consistency check and return the report.
    pub fn verify(&self, entry_id: &str, up_to: usize, exec: Exec) -> Report {
        let mut rep = Report::new();
        self.verify_reps(entry_id, &mut rep);
        self.verify_table(entry_id, &mut rep);
        self.verify_uct(entry_id, up_to, &mut rep, exec);
        self.verify_e2(entry_id, up_to, &mut rep, exec);
        self.verify_products(entry_id, &mut rep);
        rep
    }

    fn verify_reps(&self, entry_id: &str, rep: &mut Report) {
        let Some(modp) = self.modp.as_ref() else { return };
        for (&g, class) in &self.reps {
            let gen = &self.model.gens()[g];
            let id = format!("{entry_id}.rep.{}", gen.name);
            let image = modp.nf(&class.image);
            if image.is_zero() || image.degree() != Some(gen.degree) {
                rep.check(
                    id,
                    false,
                    format!(
                        "representative {} is not homogeneous of degree {}",
                        modp.render_element(&class.image),
                        gen.degree
                    ),
                );
                continue;
            }
            let mut pass = true;
            let mut details = vec![format!("rep {}", modp.render_element(&image))];
            if let Some(sq1) = self.sq1.as_ref() {
                if !self.free_gens.contains(&g) {
                    let db = sq1.apply(&image);
                    if !db.is_zero() {
                        pass = false;
                        details.push(format!(
                            "not a Bockstein cocycle: Sq1 gives {}",
                            modp.render_element(&db)
                        ));
                    }
                }
                if let Some(w) = &class.witness {
                    let dw = sq1.apply(w);
                    if modp.equal_mod_relations(&dw, &image) {
                        details.push(format!("= Sq1({})", modp.render_element(w)));
                    } else {
                        pass = false;
                        details.push(format!(
                            "Sq1({}) = {} instead",
                            modp.render_element(w),
                            modp.render_element(&dw)
                        ));
                    }
                }
            }
            rep.check(id, pass, details.join("; "));
        }
        for (k, (w, expected)) in self.extra_witnesses.iter().enumerate() {
            let id = format!("{entry_id}.wit{}", k + 1);
            let Some(sq1) = self.sq1.as_ref() else {
                rep.check(id, false, "no Bockstein data to evaluate the witness");
                continue;
            };
            let dw = sq1.apply(w);
            let pass = modp.equal_mod_relations(&dw, expected);
            rep.check(
                id,
                pass,
                format!(
                    "Sq1({}) = {}",
                    modp.render_element(w),
                    modp.render_element(&dw)
                ),
            );
        }
    }

    fn verify_table(&self, entry_id: &str, rep: &mut Report) {
        if self.table_relations.is_empty() {
            return;
        }
        let hom = match self.correspondence_hom() {
            Ok(h) => h,
            Err(e) => {
                rep.check(format!("{entry_id}.table"), false, format!("{e}"));
                return;
            }
        };
        for (k, r) in self.table_relations.iter().enumerate() {
            let id = format!("{entry_id}.rel{}", k + 1);
            let img = hom.apply(r);
            if img.is_zero() {
                rep.check(
                    id,
                    true,
                    format!("{} reduces to 0", self.model.render_element(r)),
                );
            } else {
                rep.check(
                    id,
                    false,
                    format!(
                        "{} maps to {}",
                        self.model.render_element(r),
                        hom.target.render_element(&img)
                    ),
                );
            }
        }
    }

    fn verify_uct(&self, entry_id: &str, up_to: usize, rep: &mut Report, exec: Exec) {
        let Some(modp) = self.modp.as_ref() else { return };
        let rows = exec.map_degrees(up_to, |n| {
            let expect = self.free_rank(n) + self.torsion_count(n) + self.torsion_count(n + 1);
            (n, modp.dim(n), expect)
        });
        let bad: Vec<String> = rows
            .iter()
            .filter(|(_, have, want)| have != want)
            .map(|(n, have, want)| format!("degree {n}: dim {have}, claim needs {want}"))
            .collect();
        if bad.is_empty() {
            rep.check(
                format!("{entry_id}.uct"),
                true,
                format!("mod-{} dimensions match in degrees 0..={up_to}", self.prime),
            );
        } else {
            rep.check(format!("{entry_id}.uct"), false, bad.join("; "));
        }
    }

    fn verify_e2(&self, entry_id: &str, up_to: usize, rep: &mut Report, exec: Exec) {
        let Some(sq1) = self.sq1.as_ref() else { return };
        let e2 = e2_dims(sq1, up_to, exec);
        let mut bad = Vec::new();
        for (n, &have) in e2.iter().enumerate() {
            let want = self.free_rank(n) + self.higher_count(n) + self.higher_count(n + 1);
            if have != want {
                bad.push(format!("degree {n}: E2 = {have}, accounting needs {want}"));
            }
        }
        if bad.is_empty() {
            rep.check(
                format!("{entry_id}.e2"),
                true,
                format!("E2 accounting matches in degrees 0..={up_to}"),
            );
        } else {
            rep.check(format!("{entry_id}.e2"), false, bad.join("; "));
        }
    }

    fn verify_products(&self, entry_id: &str, rep: &mut Report) {
        for (k, f) in self.products.iter().enumerate() {
            let id = format!("{entry_id}.prod{}", k + 1);
            let gens = self.model.gens();
            let dl = gens[f.left].degree;
            let dr = gens[f.right].degree;
            let dres = gens[f.result].degree;
            if dl + dr != dres {
                rep.check(
                    id,
                    false,
                    format!("degrees {dl}+{dr} do not add to {dres}"),
                );
                continue;
            }
            let order = self
                .higher
                .iter()
                .find(|h| h.gen == f.result)
                .map(|h| (self.prime as u64).pow(h.power))
                .unwrap_or(self.prime as u64);
            if (f.multiplier as u64).is_multiple_of(order) {
                rep.check(
                    id,
                    false,
                    format!(
                        "{} times a class of order {order} vanishes",
                        f.multiplier
                    ),
                );
                continue;
            }
            let shadow = self.model.multiply(
                &gen_elem(&self.model, f.left),
                &gen_elem(&self.model, f.right),
            );
            let scaled = self
                .model
                .scale(&gen_elem(&self.model, f.result), (f.multiplier % self.prime as u32) as u8);
            let pass = self.model.equal_mod_relations(&shadow, &scaled);
            let surviving = order / gcd64(f.multiplier as u64, order);
            rep.check(
                id,
                pass,
                format!(
                    "{} * {} = {} * {}: product has order {surviving}, mod-{} shadow consistent",
                    gens[f.left].name,
                    gens[f.right].name,
                    f.multiplier,
                    gens[f.result].name,
                    self.prime
                ),
            );
        }
    }
}

fn gen_elem(a: &AlgebraPresentation, i: usize) -> Element {
    let mut m = Mono::one(a.gens().len());
    m.exps[i] = 1;
    let d = a.gens()[i].degree;
    let mut terms = BTreeMap::new();
    terms.insert((d, m), 1u8);
    Element { terms }
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd64(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::GeneratorDecl;

    fn decl(name: &str, degree: usize) -> GeneratorDecl {
        GeneratorDecl { name: name.to_string(), degree }
    }

    #[test]
    fn e2_of_the_polynomial_line_is_concentrated_in_degree_zero() {
        let a = Arc::new(AlgebraPresentation::new(2, vec![(decl("x1", 1), 0)]).unwrap());
        let sq = a.build_element(&[(1, vec![("x1".into(), 2)])]).unwrap();
        let d = Derivation::new(Arc::clone(&a), &[("x1".into(), sq)]).unwrap();
        d.check_well_defined().unwrap();
        let e2 = e2_dims(&d, 10, Exec::Sequential);
        let mut expect = vec![0; 11];
        expect[0] = 1;
        assert_eq!(e2, expect);
    }

    #[test]
    fn tower_claim_for_the_cyclic_group_of_order_two() {
        let model =
            Arc::new(AlgebraPresentation::new(2, vec![(decl("x2", 2), 0)]).unwrap());
        let modp = Arc::new(AlgebraPresentation::new(2, vec![(decl("x1", 1), 0)]).unwrap());
        let sq = modp.build_element(&[(1, vec![("x1".into(), 2)])]).unwrap();
        let d = Arc::new(Derivation::new(Arc::clone(&modp), &[("x1".into(), sq.clone())]).unwrap());
        let mut reps = BTreeMap::new();
        reps.insert(0, ClassRep { image: sq, witness: Some(modp.gen_elem("x1").unwrap()) });
        let claim = IntegralRingClaim {
            prime: 2,
            model,
            table_relations: Vec::new(),
            free_gens: BTreeSet::new(),
            higher: Vec::new(),
            reps,
            extra_witnesses: Vec::new(),
            products: Vec::new(),
            modp: Some(modp),
            sq1: Some(d),
        };
        let rep = claim.verify("Z2.claim.int2", 12, Exec::Sequential);
        assert!(rep.all_passed(), "{}", rep.render_text());
        assert_eq!(claim.free_rank(0), 1);
        assert_eq!(claim.torsion_count(4), 1);
        let g = claim.as_graded_group(4);
        assert_eq!(g.render_degree(2), "Z/2");
        assert_eq!(g.render_degree(0), "Z");
        assert_eq!(g.render_degree(3), "0");
    }

    #[test]
    fn uct_mismatch_is_reported() {
        let model =
            Arc::new(AlgebraPresentation::new(2, vec![(decl("x2", 2), 0)]).unwrap());
        let modp = Arc::new(
            AlgebraPresentation::new(2, vec![(decl("x1", 1), 0), (decl("y1", 1), 0)]).unwrap(),
        );
        let claim = IntegralRingClaim {
            prime: 2,
            model,
            table_relations: Vec::new(),
            free_gens: BTreeSet::new(),
            higher: Vec::new(),
            reps: BTreeMap::new(),
            extra_witnesses: Vec::new(),
            products: Vec::new(),
            modp: Some(modp),
            sq1: None,
        };
        let rep = claim.verify("bad", 6, Exec::Sequential);
        assert!(!rep.all_passed());
    }
}
