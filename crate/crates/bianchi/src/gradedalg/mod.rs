//! Finitely presented graded-commutative algebras over prime fields.
//!
//! A presentation lists generators with degrees, a block structure, and
//! homogeneous relations. Generators in distinct blocks multiply to zero,
//! which models the reduced sum of augmented algebras without spelling out
//! every cross product. At an odd prime, odd-degree generators square to
//! zero automatically; even-degree exterior classes need an explicit
//! square relation.
//!
//! All arithmetic is degreewise. For each degree the presentation computes
//! a [`DegreeBasis`]: the standard monomials surviving the relations plus a
//! rewrite table sending every other monomial to its normal form. Bases are
//! memoized, so repeated queries (Poincaré series, normal forms, matrices
//! of maps) share the work.

use crate::exec::Exec;
use crate::fplinalg::FpMatrix;
use crate::{Error, Result};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::{Arc, Mutex};

pub mod rewrite;

/// A commutative monomial, stored as one exponent per generator.
///
/// The derived ordering is lexicographic in the generator declaration
/// order, which fixes the pivoting convention for degreewise elimination.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Mono {
    pub exps: Vec<u32>,
}

impl Mono {
    pub fn one(ngens: usize) -> Self {
        Mono { exps: vec![0; ngens] }
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// A generator declaration: a name and a positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub name: String,
    pub degree: usize,
}

/// An element of the free graded-commutative algebra on the generators,
/// stored as a sum of monomials with nonzero coefficients mod p.
///
/// Terms are keyed by `(degree, monomial)` so the homogeneous pieces come
/// out grouped and in a deterministic order.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Element {
    pub terms: BTreeMap<(usize, Mono), u8>,
}

impl Element {
    pub fn zero() -> Self {
        Element { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms, if the element is homogeneous.
    /// The zero element reports `Some(0)`.
    pub fn degree(&self) -> Option<usize> {
        let mut degs = self.terms.keys().map(|(d, _)| *d);
        match degs.next() {
            None => Some(0),
            Some(d) => {
                if degs.all(|e| e == d) {
                    Some(d)
                } else {
                    None
                }
            }
        }
    }
}

/// The degree-n slice of a presented algebra: standard monomials and the
/// rewrite table for the eliminated ones.
#[derive(Debug)]
pub struct DegreeBasis {
    pub degree: usize,
    /// Standard monomials in ascending order; their classes form a basis.
    pub standard: Vec<Mono>,
    standard_index: HashMap<Mono, usize>,
    /// Eliminated monomial -> its normal form as (standard index, coefficient).
    rewrite: HashMap<Mono, Vec<(usize, u8)>>,
}

impl DegreeBasis {
    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn index_of(&self, m: &Mono) -> Option<usize> {
        self.standard_index.get(m).copied()
    }
}

/// A finitely presented graded-commutative algebra over 𝔽ₚ.
pub struct AlgebraPresentation {
    p: u8,
    gens: Vec<GeneratorDecl>,
    blocks: Vec<usize>,
    exterior: Vec<bool>,
    index: HashMap<String, usize>,
    relations: Vec<Element>,
    zero_monos: Vec<Mono>,
    poly_relations: Vec<Element>,
    bases: Mutex<HashMap<usize, Arc<DegreeBasis>>>,
}

impl std::fmt::Debug for AlgebraPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("AlgebraPresentation")
            .field("p", &self.p)
            .field("gens", &self.gens)
            .field("relations", &self.relations.len())
            .finish()
    }
}

fn is_prime(p: u8) -> bool {
    p >= 2 && (2..p).all(|d| !p.is_multiple_of(d))
}

impl AlgebraPresentation {
    /// Create a presentation with no relations yet. `gens` pairs each
    /// generator with its block index; generators in different blocks will
    /// multiply to zero.
    pub fn new(p: u8, gens: Vec<(GeneratorDecl, usize)>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not prime")));
        }
        let mut index = HashMap::new();
        let mut decls = Vec::new();
        let mut blocks = Vec::new();
        let mut exterior = Vec::new();
        for (i, (g, b)) in gens.into_iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::Invalid(format!("generator `{}` has degree 0", g.name)));
            }
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate generator `{}`", g.name)));
            }
            exterior.push(p != 2 && g.degree % 2 == 1);
            decls.push(g);
            blocks.push(b);
        }
        let mut me = AlgebraPresentation {
            p,
            gens: decls,
            blocks,
            exterior,
            index,
            relations: Vec::new(),
            zero_monos: Vec::new(),
            poly_relations: Vec::new(),
            bases: Mutex::new(HashMap::new()),
        };
        for i in 0..me.gens.len() {
            for j in (i + 1)..me.gens.len() {
                if me.blocks[i] != me.blocks[j] {
                    let mut m = Mono::one(me.gens.len());
                    m.exps[i] = 1;
                    m.exps[j] = 1;
                    let d = me.gens[i].degree + me.gens[j].degree;
                    let mut terms = BTreeMap::new();
                    terms.insert((d, m), 1u8);
                    me.add_relation(Element { terms })?;
                }
            }
        }
        Ok(me)
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn gens(&self) -> &[GeneratorDecl] {
        &self.gens
    }

    pub fn block_of(&self, gen: usize) -> usize {
        self.blocks[gen]
    }

    pub fn is_exterior(&self, gen: usize) -> bool {
        self.exterior[gen]
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }

    /// Register a homogeneous relation. The zero element (for instance an
    /// exterior square at an odd prime) is accepted and ignored.
    pub fn add_relation(&mut self, e: Element) -> Result<()> {
        if e.is_zero() {
            return Ok(());
        }
        let d = e
            .degree()
            .ok_or_else(|| Error::InhomogeneousRelation(self.render_element(&e)))?;
        if d == 0 {
            return Err(Error::Invalid("relation in degree 0 collapses the algebra".into()));
        }
        if e.terms.len() == 1 {
            let (_, m) = e.terms.keys().next().unwrap();
            self.zero_monos.push(m.clone());
        } else {
            self.poly_relations.push(e.clone());
        }
        self.relations.push(e);
        self.bases.lock().unwrap().clear();
        Ok(())
    }

    /// Build an element from `(coefficient, [(generator, exponent)])` terms.
    /// Exterior generators raised to a power of two or more kill the term.
    pub fn build_element(&self, terms: &[(i64, Vec<(String, u32)>)]) -> Result<Element> {
        let mut out = Element::zero();
        let p = self.p as i64;
        for (coeff, pows) in terms {
            let mut m = Mono::one(self.gens.len());
            for (name, exp) in pows {
                let i = self.gen_index(name)?;
                m.exps[i] += exp;
            }
            if self.mono_dies(&m) {
                continue;
            }
            let c = (((coeff % p) + p) % p) as u8;
            if c == 0 {
                continue;
            }
            let d = self.mono_degree(&m);
            let entry = out.terms.entry((d, m)).or_insert(0);
            *entry = ((*entry as u16 + c as u16) % self.p as u16) as u8;
            if *entry == 0 {
                let key = out.terms.iter().find(|(_, &v)| v == 0).map(|(k, _)| k.clone());
                if let Some(k) = key {
                    out.terms.remove(&k);
                }
            }
        }
        Ok(out)
    }

    /// The element 1.
    pub fn one(&self) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert((0, Mono::one(self.gens.len())), 1u8);
        Element { terms }
    }

    /// A single generator as an element.
    pub fn gen_elem(&self, name: &str) -> Result<Element> {
        self.build_element(&[(1, vec![(name.to_string(), 1)])])
    }

    pub fn mono_degree(&self, m: &Mono) -> usize {
        m.exps
            .iter()
            .zip(&self.gens)
            .map(|(&e, g)| e as usize * g.degree)
            .sum()
    }

    fn mono_dies(&self, m: &Mono) -> bool {
        m.exps
            .iter()
            .zip(&self.exterior)
            .any(|(&e, &ext)| ext && e >= 2)
    }

    /// Sum of two free-algebra elements.
    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        for (k, &c) in &b.terms {
            let entry = out.terms.entry(k.clone()).or_insert(0);
            *entry = ((*entry as u16 + c as u16) % self.p as u16) as u8;
        }
        out.terms.retain(|_, &mut c| c != 0);
        out
    }

    /// `a - b` in the free algebra.
    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        let neg = self.scale(b, self.p - 1);
        self.add(a, &neg)
    }

    pub fn scale(&self, a: &Element, c: u8) -> Element {
        let mut out = Element::zero();
        for (k, &v) in &a.terms {
            let w = ((v as u16 * c as u16) % self.p as u16) as u8;
            if w != 0 {
                out.terms.insert(k.clone(), w);
            }
        }
        out
    }

    /// Product in the free graded-commutative algebra, with Koszul signs.
    pub fn mul_free(&self, a: &Element, b: &Element) -> Element {
        let n = self.gens.len();
        let mut out = Element::zero();
        for ((da, ma), &ca) in &a.terms {
            for ((db, mb), &cb) in &b.terms {
                let m = ma.mul(mb);
                if self.mono_dies(&m) {
                    continue;
                }
                let mut c = (ca as u32 * cb as u32) % self.p as u32;
                if self.p != 2 {
                    let mut swaps = 0u32;
                    for i in 0..n {
                        if ma.exps[i] == 0 || self.gens[i].degree.is_multiple_of(2) {
                            continue;
                        }
                        for j in 0..i {
                            if mb.exps[j] > 0 && self.gens[j].degree % 2 == 1 {
                                swaps += ma.exps[i] * mb.exps[j];
                            }
                        }
                    }
                    if swaps % 2 == 1 {
                        c = (c * (self.p as u32 - 1)) % self.p as u32;
                    }
                }
                if c == 0 {
                    continue;
                }
                let key = (da + db, m);
                let entry = out.terms.entry(key.clone()).or_insert(0);
                *entry = ((*entry as u32 + c) % self.p as u32) as u8;
                if *entry == 0 {
                    out.terms.remove(&key);
                }
            }
        }
        out
    }

    /// The degree-n basis, computed on first use and memoized.
    pub fn basis(&self, n: usize) -> Arc<DegreeBasis> {
        if let Some(b) = self.bases.lock().unwrap().get(&n) {
            return Arc::clone(b);
        }
        let b = Arc::new(self.compute_basis(n));
        let mut cache = self.bases.lock().unwrap();
        Arc::clone(cache.entry(n).or_insert(b))
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis(n).dim()
    }

    /// Dimensions in degrees `0..=up_to`.
    pub fn poincare(&self, up_to: usize, exec: Exec) -> Vec<usize> {
        exec.map_degrees(up_to, |n| self.dim(n))
    }

    /// Monomials of degree n not divisible by any single-term relation
    /// monomial, ascending.
    pub fn enumerate_monos(&self, n: usize) -> Vec<Mono> {
        let ngens = self.gens.len();
        let mut z_by_last: Vec<Vec<&Mono>> = vec![Vec::new(); ngens.max(1)];
        for z in &self.zero_monos {
            if let Some(last) = (0..ngens).rev().find(|&i| z.exps[i] > 0) {
                z_by_last[last].push(z);
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; ngens];
        self.enum_rec(0, n, &mut cur, &z_by_last, &mut out);
        out.sort();
        out
    }

    fn enum_rec(
        &self,
        i: usize,
        rem: usize,
        cur: &mut Vec<u32>,
        z_by_last: &[Vec<&Mono>],
        out: &mut Vec<Mono>,
    ) {
        let ngens = self.gens.len();
        if i == ngens {
            if rem == 0 {
                out.push(Mono { exps: cur.clone() });
            }
            return;
        }
        let d = self.gens[i].degree;
        let maxe = if self.exterior[i] { 1.min((rem / d) as u32) } else { (rem / d) as u32 };
        for e in 0..=maxe {
            cur[i] = e;
            let dominated = z_by_last[i]
                .iter()
                .any(|z| z.exps[..=i].iter().zip(cur[..=i].iter()).all(|(a, b)| a <= b));
            if dominated {
                break;
            }
            self.enum_rec(i + 1, rem - (e as usize) * d, cur, z_by_last, out);
        }
        cur[i] = 0;
    }

    fn compute_basis(&self, n: usize) -> DegreeBasis {
        let monos = self.enumerate_monos(n);
        let ncols = monos.len();
        if ncols == 0 {
            return DegreeBasis {
                degree: n,
                standard: Vec::new(),
                standard_index: HashMap::new(),
                rewrite: HashMap::new(),
            };
        }
        let col_of: HashMap<&Mono, usize> =
            monos.iter().enumerate().map(|(i, m)| (m, ncols - 1 - i)).collect();
        let mut rows: Vec<Vec<u8>> = Vec::new();
        for r in &self.poly_relations {
            let d = r.degree().unwrap_or(0);
            if d > n {
                continue;
            }
            for m in self.enumerate_monos(n - d) {
                let mut terms = BTreeMap::new();
                terms.insert((n - d, m), 1u8);
                let prod = self.mul_free(&Element { terms }, r);
                let mut row = vec![0u8; ncols];
                let mut nonzero = false;
                for ((_, mono), &c) in &prod.terms {
                    if let Some(&j) = col_of.get(mono) {
                        row[j] = c;
                        nonzero = true;
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
        if rows.is_empty() {
            let standard = monos.clone();
            let standard_index =
                standard.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            return DegreeBasis { degree: n, standard, standard_index, rewrite: HashMap::new() };
        }
        let mat = FpMatrix::from_rows(self.p, ncols, &rows);
        let rr = mat.rref();
        let pivot_cols: HashSet<usize> = rr.pivots.iter().copied().collect();
        let mut standard: Vec<Mono> = (0..ncols)
            .filter(|c| !pivot_cols.contains(c))
            .map(|c| monos[ncols - 1 - c].clone())
            .collect();
        standard.sort();
        let standard_index: HashMap<Mono, usize> =
            standard.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut rewrite = HashMap::new();
        for (ri, &pc) in rr.pivots.iter().enumerate() {
            let m_piv = monos[ncols - 1 - pc].clone();
            let mut combo = Vec::new();
            for c in 0..ncols {
                if c == pc {
                    continue;
                }
                let v = rr.matrix.get(ri, c);
                if v != 0 {
                    let mono = &monos[ncols - 1 - c];
                    let si = standard_index[mono];
                    combo.push((si, self.p - v));
                }
            }
            combo.sort();
            rewrite.insert(m_piv, combo);
        }
        DegreeBasis { degree: n, standard, standard_index, rewrite }
    }

    /// Normal form: rewrite each term onto the standard monomials.
    pub fn nf(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for ((d, m), &c) in &e.terms {
            let basis = self.basis(*d);
            if basis.standard_index.contains_key(m) {
                let entry = out.terms.entry((*d, m.clone())).or_insert(0);
                *entry = ((*entry as u16 + c as u16) % self.p as u16) as u8;
            } else if let Some(combo) = basis.rewrite.get(m) {
                for &(si, rc) in combo {
                    let mono = basis.standard[si].clone();
                    let v = ((c as u16 * rc as u16) % self.p as u16) as u8;
                    let entry = out.terms.entry((*d, mono)).or_insert(0);
                    *entry = ((*entry as u16 + v as u16) % self.p as u16) as u8;
                }
            }
        }
        out.terms.retain(|_, &mut c| c != 0);
        out
    }

    /// Product followed by normal form.
    pub fn multiply(&self, a: &Element, b: &Element) -> Element {
        self.nf(&self.mul_free(a, b))
    }

    pub fn pow(&self, a: &Element, e: u32) -> Element {
        let mut out = self.one();
        for _ in 0..e {
            out = self.multiply(&out, a);
        }
        out
    }

    pub fn equal_mod_relations(&self, a: &Element, b: &Element) -> bool {
        self.nf(&self.sub(a, b)).is_zero()
    }

    /// Coordinates of a homogeneous element in the degree-n standard basis.
    pub fn coords(&self, e: &Element, n: usize) -> Result<Vec<u8>> {
        let nf = self.nf(e);
        let basis = self.basis(n);
        let mut v = vec![0u8; basis.dim()];
        for ((d, m), &c) in &nf.terms {
            if *d != n {
                return Err(Error::Invalid(format!(
                    "element has a term in degree {d}, expected {n}"
                )));
            }
            let i = basis
                .index_of(m)
                .ok_or_else(|| Error::Invalid("normal form left the standard basis".into()))?;
            v[i] = c;
        }
        Ok(v)
    }

    pub fn render_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.exps.iter().enumerate() {
            if e == 1 {
                parts.push(self.gens[i].name.clone());
            } else if e > 1 {
                parts.push(format!("{}^{}", self.gens[i].name, e));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    pub fn render_element(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for ((_, m), &c) in &e.terms {
            let ms = self.render_mono(m);
            if c == 1 {
                parts.push(ms);
            } else if ms == "1" {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{c}*{ms}"));
            }
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decl(name: &str, degree: usize) -> GeneratorDecl {
        GeneratorDecl { name: name.to_string(), degree }
    }

    fn poly2() -> AlgebraPresentation {
        AlgebraPresentation::new(2, vec![(decl("x1", 1), 0), (decl("y1", 1), 0)]).unwrap()
    }

    #[test]
    fn free_polynomial_dims() {
        let a = poly2();
        assert_eq!(a.poincare(4, Exec::Sequential), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn freshman_dream_mod_2() {
        let a = poly2();
        let x = a.gen_elem("x1").unwrap();
        let y = a.gen_elem("y1").unwrap();
        let s = a.add(&x, &y);
        let sq = a.multiply(&s, &s);
        let expect = a
            .build_element(&[(1, vec![("x1".into(), 2)]), (1, vec![("y1".into(), 2)])])
            .unwrap();
        assert_eq!(sq, expect);
    }

    #[test]
    fn quotient_by_monomial_relation() {
        let mut a =
            AlgebraPresentation::new(2, vec![(decl("p1", 1), 0), (decl("q1", 1), 0), (decl("r1", 1), 0)])
                .unwrap();
        let rel = a.build_element(&[(1, vec![("p1".into(), 1), ("q1".into(), 1)])]).unwrap();
        a.add_relation(rel).unwrap();
        assert_eq!(a.poincare(4, Exec::Sequential), vec![1, 3, 5, 7, 9]);
    }

    #[test]
    fn polynomial_relation_rewrites_largest_monomial() {
        let mut a =
            AlgebraPresentation::new(2, vec![(decl("u2", 2), 0), (decl("v3", 3), 0), (decl("w3", 3), 0)])
                .unwrap();
        let rel = a
            .build_element(&[
                (1, vec![("u2".into(), 3)]),
                (1, vec![("v3".into(), 2)]),
                (1, vec![("w3".into(), 2)]),
                (1, vec![("v3".into(), 1), ("w3".into(), 1)]),
            ])
            .unwrap();
        a.add_relation(rel).unwrap();
        assert_eq!(a.poincare(6, Exec::Sequential), vec![1, 0, 1, 2, 1, 2, 3]);
        let u = a.gen_elem("u2").unwrap();
        let ucubed = a.pow(&u, 3);
        let rest = a
            .build_element(&[
                (1, vec![("v3".into(), 2)]),
                (1, vec![("w3".into(), 2)]),
                (1, vec![("v3".into(), 1), ("w3".into(), 1)]),
            ])
            .unwrap();
        assert!(a.equal_mod_relations(&ucubed, &rest));
    }

    #[test]
    fn odd_prime_exterior_square_dies() {
        let a = AlgebraPresentation::new(3, vec![(decl("e1", 1), 0), (decl("x2", 2), 0)]).unwrap();
        let e = a.gen_elem("e1").unwrap();
        assert!(a.multiply(&e, &e).is_zero());
        assert_eq!(a.poincare(5, Exec::Sequential), vec![1, 1, 1, 1, 1, 1]);
    }

    #[test]
    fn koszul_sign_for_odd_generators() {
        let a = AlgebraPresentation::new(3, vec![(decl("e1", 1), 0), (decl("f3", 3), 0)]).unwrap();
        let e = a.gen_elem("e1").unwrap();
        let f = a.gen_elem("f3").unwrap();
        let ef = a.mul_free(&e, &f);
        let fe = a.mul_free(&f, &e);
        assert_eq!(fe, a.scale(&ef, 2));
    }

    #[test]
    fn blocks_kill_cross_products() {
        let a = AlgebraPresentation::new(2, vec![(decl("x1", 1), 0), (decl("s1", 1), 1)]).unwrap();
        let x = a.gen_elem("x1").unwrap();
        let s = a.gen_elem("s1").unwrap();
        assert!(a.multiply(&x, &s).is_zero());
        assert_eq!(a.dim(2), 2);
    }

    #[test]
    fn inhomogeneous_relation_rejected() {
        let mut a = poly2();
        let bad = a
            .build_element(&[(1, vec![("x1".into(), 1)]), (1, vec![("x1".into(), 2)])])
            .unwrap();
        assert!(matches!(a.add_relation(bad), Err(Error::InhomogeneousRelation(_))));
    }

    #[test]
    fn normal_form_is_idempotent() {
        let mut a =
            AlgebraPresentation::new(2, vec![(decl("u2", 2), 0), (decl("v3", 3), 0), (decl("w3", 3), 0)])
                .unwrap();
        let rel = a
            .build_element(&[
                (1, vec![("u2".into(), 3)]),
                (1, vec![("v3".into(), 2)]),
                (1, vec![("w3".into(), 2)]),
                (1, vec![("v3".into(), 1), ("w3".into(), 1)]),
            ])
            .unwrap();
        a.add_relation(rel).unwrap();
        let e = a
            .build_element(&[
                (1, vec![("u2".into(), 3), ("v3".into(), 1)]),
                (1, vec![("w3".into(), 3)]),
            ])
            .unwrap();
        let n1 = a.nf(&e);
        let n2 = a.nf(&n1);
        assert_eq!(n1, n2);
    }
}
