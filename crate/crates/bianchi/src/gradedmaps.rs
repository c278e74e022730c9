//! Graded algebra homomorphisms and degree-raising derivations.
//!
//! A [`GradedHom`] is determined by generator images and applied
//! multiplicatively; generators without a listed image map to zero, which
//! matches how restriction maps collapse most classes. A [`Derivation`]
//! raises degree by one and satisfies the graded Leibniz rule; the first
//! Bockstein differential is the motivating example.

use crate::fplinalg::FpMatrix;
use crate::gradedalg::{AlgebraPresentation, Element};
use crate::{Error, Result};
use std::sync::Arc;

/// A homomorphism of graded 𝔽ₚ-algebras, stored as one image per source
/// generator.
pub struct GradedHom {
    pub source: Arc<AlgebraPresentation>,
    pub target: Arc<AlgebraPresentation>,
    images: Vec<Element>,
}

impl GradedHom {
    /// Build a homomorphism from named generator images. Source generators
    /// not named map to zero.
    pub fn new(
        source: Arc<AlgebraPresentation>,
        target: Arc<AlgebraPresentation>,
        named_images: &[(String, Element)],
    ) -> Result<Self> {
        if source.prime() != target.prime() {
            return Err(Error::Invalid(format!(
                "source is over F_{} but target is over F_{}",
                source.prime(),
                target.prime()
            )));
        }
        let mut images = vec![Element::zero(); source.gens().len()];
        for (name, img) in named_images {
            let i = source.gen_index(name)?;
            images[i] = target.nf(img);
        }
        Ok(GradedHom { source, target, images })
    }

    pub fn image_of(&self, gen: usize) -> &Element {
        &self.images[gen]
    }

    /// Verify degree preservation and that every relation maps to zero.
    pub fn check(&self) -> Result<()> {
        for (i, g) in self.source.gens().iter().enumerate() {
            let img = &self.images[i];
            if img.is_zero() {
                continue;
            }
            match img.degree() {
                Some(d) if d == g.degree => {}
                Some(d) => {
                    return Err(Error::DegreeMismatch {
                        gen: g.name.clone(),
                        expected: g.degree,
                        found: d,
                    })
                }
                None => {
                    return Err(Error::DegreeMismatch {
                        gen: g.name.clone(),
                        expected: g.degree,
                        found: 0,
                    })
                }
            }
        }
        for r in self.source.relations() {
            let img = self.apply(r);
            if !img.is_zero() {
                return Err(Error::RelationNotPreserved {
                    relation: self.source.render_element(r),
                    image: self.target.render_element(&img),
                });
            }
        }
        Ok(())
    }

    /// Apply the homomorphism, reducing the result to normal form.
    pub fn apply(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for ((_, m), &c) in &e.terms {
            let mut img = self.target.one();
            for (i, &exp) in m.exps.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                if self.images[i].is_zero() {
                    img = Element::zero();
                    break;
                }
                let power = self.target.pow(&self.images[i], exp);
                img = self.target.multiply(&img, &power);
                if img.is_zero() {
                    break;
                }
            }
            let scaled = self.target.scale(&img, c);
            out = self.target.add(&out, &scaled);
        }
        self.target.nf(&out)
    }

    /// Matrix of the degree-n piece: columns index the source standard
    /// basis, rows the target standard basis.
    pub fn matrix(&self, n: usize) -> FpMatrix {
        let src = self.source.basis(n);
        let tdim = self.target.dim(n);
        let mut cols: Vec<Vec<u8>> = Vec::with_capacity(src.dim());
        for m in &src.standard {
            let mut terms = std::collections::BTreeMap::new();
            terms.insert((n, m.clone()), 1u8);
            let img = self.apply(&Element { terms });
            cols.push(self.target.coords(&img, n).expect("image homogeneous of the same degree"));
        }
        FpMatrix::from_fn(self.source.prime(), tdim, src.dim(), |i, j| cols[j][i])
    }

    /// `(kernel dimension, image dimension)` of the degree-n piece.
    pub fn kernel_image_dims(&self, n: usize) -> (usize, usize) {
        let m = self.matrix(n);
        let r = m.rank();
        (m.cols() - r, r)
    }
}

/// A degree-(+1) derivation on a presented algebra.
pub struct Derivation {
    pub algebra: Arc<AlgebraPresentation>,
    images: Vec<Element>,
}

impl Derivation {
    /// Build a derivation from named generator images. Unnamed generators
    /// map to zero.
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        named_images: &[(String, Element)],
    ) -> Result<Self> {
        let mut images = vec![Element::zero(); algebra.gens().len()];
        for (name, img) in named_images {
            let i = algebra.gen_index(name)?;
            images[i] = algebra.nf(img);
        }
        Ok(Derivation { algebra, images })
    }

    pub fn image_of(&self, gen: usize) -> &Element {
        &self.images[gen]
    }

    /// Derivative of a free-algebra element by the graded Leibniz rule,
    /// reduced to normal form.
    pub fn apply(&self, e: &Element) -> Element {
        let a = &self.algebra;
        let p = a.prime();
        let mut out = Element::zero();
        for ((_, m), &c) in &e.terms {
            for i in 0..m.exps.len() {
                let exp = m.exps[i];
                if exp == 0 || self.images[i].is_zero() {
                    continue;
                }
                let e_mod = (exp % p as u32) as u8;
                if e_mod == 0 {
                    continue;
                }
                let mut prefix_deg = 0usize;
                let mut pref = crate::gradedalg::Mono::one(m.exps.len());
                for j in 0..i {
                    pref.exps[j] = m.exps[j];
                    prefix_deg += m.exps[j] as usize * a.gens()[j].degree;
                }
                let mut mid = crate::gradedalg::Mono::one(m.exps.len());
                mid.exps[i] = exp - 1;
                let mut suf = crate::gradedalg::Mono::one(m.exps.len());
                for (j, e) in m.exps.iter().enumerate().skip(i + 1) {
                    suf.exps[j] = *e;
                }
                let mut piece = mono_elem(a, pref);
                piece = a.mul_free(&piece, &mono_elem(a, mid));
                piece = a.mul_free(&piece, &self.images[i]);
                piece = a.mul_free(&piece, &mono_elem(a, suf));
                let mut coef = (c as u32 * e_mod as u32) % p as u32;
                if p != 2 && prefix_deg % 2 == 1 {
                    coef = (coef * (p as u32 - 1)) % p as u32;
                }
                piece = a.scale(&piece, coef as u8);
                out = a.add(&out, &piece);
            }
        }
        a.nf(&out)
    }

    /// Verify images raise degree by one and that the derivative of every
    /// relation reduces to zero.
    pub fn check_well_defined(&self) -> Result<()> {
        let a = &self.algebra;
        for (i, g) in a.gens().iter().enumerate() {
            let img = &self.images[i];
            if img.is_zero() {
                continue;
            }
            match img.degree() {
                Some(d) if d == g.degree + 1 => {}
                _ => {
                    return Err(Error::DegreeMismatch {
                        gen: g.name.clone(),
                        expected: g.degree + 1,
                        found: img.degree().unwrap_or(0),
                    })
                }
            }
        }
        for r in a.relations() {
            let img = self.apply(r);
            if !img.is_zero() {
                return Err(Error::IllDefinedDerivation {
                    relation: a.render_element(r),
                    image: a.render_element(&img),
                });
            }
        }
        Ok(())
    }

    /// Matrix of the degree-n piece as a map to degree n+1, columns
    /// indexing the degree-n standard basis.
    pub fn matrix(&self, n: usize) -> FpMatrix {
        let a = &self.algebra;
        let src = a.basis(n);
        let tdim = a.dim(n + 1);
        let mut cols: Vec<Vec<u8>> = Vec::with_capacity(src.dim());
        for m in &src.standard {
            let mut terms = std::collections::BTreeMap::new();
            terms.insert((n, m.clone()), 1u8);
            let img = self.apply(&Element { terms });
            cols.push(a.coords(&img, n + 1).expect("derivative homogeneous of degree n+1"));
        }
        FpMatrix::from_fn(a.prime(), tdim, src.dim(), |i, j| cols[j][i])
    }

    /// Check that the derivation squares to zero on every standard basis
    /// element of degree at most `up_to`.
    pub fn square_zero_up_to(&self, up_to: usize) -> Result<()> {
        let a = &self.algebra;
        for n in 0..=up_to {
            for m in a.basis(n).standard.iter() {
                let mut terms = std::collections::BTreeMap::new();
                terms.insert((n, m.clone()), 1u8);
                let once = self.apply(&Element { terms });
                let twice = self.apply(&once);
                if !twice.is_zero() {
                    return Err(Error::Invalid(format!(
                        "derivation does not square to zero on {} in degree {n}",
                        a.render_mono(m)
                    )));
                }
            }
        }
        Ok(())
    }
}

fn mono_elem(a: &AlgebraPresentation, m: crate::gradedalg::Mono) -> Element {
    let d = a.mono_degree(&m);
    let mut terms = std::collections::BTreeMap::new();
    terms.insert((d, m), 1u8);
    Element { terms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gradedalg::GeneratorDecl;

    fn decl(name: &str, degree: usize) -> GeneratorDecl {
        GeneratorDecl { name: name.to_string(), degree }
    }

    fn tetrahedral() -> Arc<AlgebraPresentation> {
        let mut a = AlgebraPresentation::new(
            2,
            vec![(decl("u2", 2), 0), (decl("v3", 3), 0), (decl("w3", 3), 0)],
        )
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
        Arc::new(a)
    }

    fn line() -> Arc<AlgebraPresentation> {
        Arc::new(AlgebraPresentation::new(2, vec![(decl("x1", 1), 0)]).unwrap())
    }

    #[test]
    fn restriction_to_the_line_is_a_homomorphism() {
        let src = tetrahedral();
        let tgt = line();
        let u_img = tgt.build_element(&[(1, vec![("x1".into(), 2)])]).unwrap();
        let w_img = tgt.build_element(&[(1, vec![("x1".into(), 3)])]).unwrap();
        let h = GradedHom::new(
            Arc::clone(&src),
            Arc::clone(&tgt),
            &[("u2".into(), u_img), ("w3".into(), w_img)],
        )
        .unwrap();
        h.check().unwrap();
    }

    #[test]
    fn dropping_one_image_breaks_the_relation() {
        let src = tetrahedral();
        let tgt = line();
        let u_img = tgt.build_element(&[(1, vec![("x1".into(), 2)])]).unwrap();
        let h = GradedHom::new(Arc::clone(&src), Arc::clone(&tgt), &[("u2".into(), u_img)])
            .unwrap();
        assert!(matches!(h.check(), Err(Error::RelationNotPreserved { .. })));
    }

    #[test]
    fn hom_matrix_rank_and_kernel() {
        let src = Arc::new(
            AlgebraPresentation::new(2, vec![(decl("x1", 1), 0), (decl("y1", 1), 0)]).unwrap(),
        );
        let tgt = line();
        let img = tgt.gen_elem("x1").unwrap();
        let h = GradedHom::new(Arc::clone(&src), tgt, &[("x1".into(), img)]).unwrap();
        let (k, r) = h.kernel_image_dims(2);
        assert_eq!((k, r), (2, 1));
    }

    #[test]
    fn bockstein_differential_on_the_tetrahedral_ring() {
        let a = tetrahedral();
        let v = a.gen_elem("v3").unwrap();
        let usq = a.build_element(&[(1, vec![("u2".into(), 2)])]).unwrap();
        let d =
            Derivation::new(Arc::clone(&a), &[("u2".into(), v), ("w3".into(), usq)]).unwrap();
        d.check_well_defined().unwrap();
        d.square_zero_up_to(12).unwrap();
        let u = a.gen_elem("u2").unwrap();
        let uv = a.multiply(&u, &a.gen_elem("v3").unwrap());
        let dv = d.apply(&uv);
        let vsq = a.build_element(&[(1, vec![("v3".into(), 2)])]).unwrap();
        assert_eq!(dv, a.nf(&vsq));
    }

    #[test]
    fn ill_defined_derivation_detected() {
        let a = tetrahedral();
        let bad = Derivation::new(
            Arc::clone(&a),
            &[("v3".into(), a.build_element(&[(1, vec![("u2".into(), 2)])]).unwrap())],
        )
        .unwrap();
        assert!(matches!(
            bad.check_well_defined(),
            Err(Error::IllDefinedDerivation { .. })
        ));
    }

    #[test]
    fn leibniz_sign_at_an_odd_prime() {
        let a = Arc::new(
            AlgebraPresentation::new(
                3,
                vec![(decl("e1", 1), 0), (decl("f1", 1), 0), (decl("x2", 2), 0)],
            )
            .unwrap(),
        );
        let x = a.gen_elem("x2").unwrap();
        let d = Derivation::new(Arc::clone(&a), &[("f1".into(), x)]).unwrap();
        let ef = a
            .build_element(&[(1, vec![("e1".into(), 1), ("f1".into(), 1)])])
            .unwrap();
        let img = d.apply(&ef);
        let expect = a
            .build_element(&[(2, vec![("e1".into(), 1), ("x2".into(), 1)])])
            .unwrap();
        assert_eq!(img, a.nf(&expect));
    }
}
