//! An independent dimension oracle based on monomial rewriting.
//!
//! The main path computes degreewise bases by elimination. This module
//! recomputes the same dimensions by a different route so the two can be
//! compared: a degree-capped Buchberger completion over 𝔽₂ in graded-lex
//! order, and a direct counting path for presentations whose relations are
//! all single monomials (any prime). Neither path shares enumeration or
//! elimination code with the main one.

use super::{AlgebraPresentation, Element};
use crate::{Error, Result};
use std::collections::BTreeSet;

/// A monomial ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct GMono {
    deg: usize,
    exps: Vec<u32>,
}

impl GMono {
    fn divides(&self, other: &GMono) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    fn quotient(&self, by: &GMono) -> GMono {
        GMono {
            deg: self.deg - by.deg,
            exps: self.exps.iter().zip(&by.exps).map(|(a, b)| a - b).collect(),
        }
    }

    fn mul(&self, other: &GMono) -> GMono {
        GMono {
            deg: self.deg + other.deg,
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    fn lcm(&self, other: &GMono, degrees: &[usize]) -> GMono {
        let exps: Vec<u32> =
            self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().zip(degrees).map(|(&e, &d)| e as usize * d).sum();
        GMono { deg, exps }
    }
}

/// A polynomial over 𝔽₂: the set of its monomials. Addition is symmetric
/// difference.
type F2Poly = BTreeSet<GMono>;

fn xor_into(p: &mut F2Poly, q: &F2Poly) {
    for m in q {
        if !p.remove(m) {
            p.insert(m.clone());
        }
    }
}

fn shift(p: &F2Poly, by: &GMono) -> F2Poly {
    p.iter().map(|m| m.mul(by)).collect()
}

fn leading(p: &F2Poly) -> &GMono {
    p.iter().next_back().expect("leading term of zero polynomial")
}

fn reduce(mut p: F2Poly, basis: &[F2Poly]) -> F2Poly {
    let mut remainder = F2Poly::new();
    while let Some(t) = p.iter().next_back().cloned() {
        let hit = basis.iter().find(|b| leading(b).divides(&t));
        match hit {
            Some(b) => {
                let q = t.quotient(leading(b));
                xor_into(&mut p, &shift(b, &q));
            }
            None => {
                p.remove(&t);
                remainder.insert(t);
            }
        }
    }
    remainder
}

fn buchberger_capped(mut basis: Vec<F2Poly>, degrees: &[usize], cap: usize) -> Vec<F2Poly> {
    basis.retain(|p| !p.is_empty());
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let lcm = leading(&basis[i]).lcm(leading(&basis[j]), degrees);
        if lcm.deg > cap {
            continue;
        }
        let mut s = shift(&basis[i], &lcm.quotient(leading(&basis[i])));
        xor_into(&mut s, &shift(&basis[j], &lcm.quotient(leading(&basis[j]))));
        let r = reduce(s, &basis);
        if !r.is_empty() {
            let k = basis.len();
            for i in 0..k {
                pairs.push((i, k));
            }
            basis.push(r);
        }
    }
    basis
}

fn count_standard(degrees: &[usize], leads: &[GMono], n: usize) -> usize {
    let mut count = 0usize;
    let mut cur = vec![0u32; degrees.len()];
    count_rec(degrees, leads, n, 0, &mut cur, &mut count);
    count
}

fn count_rec(
    degrees: &[usize],
    leads: &[GMono],
    rem: usize,
    i: usize,
    cur: &mut Vec<u32>,
    count: &mut usize,
) {
    if i == degrees.len() {
        if rem == 0 {
            let m = GMono { deg: 0, exps: cur.clone() };
            if !leads.iter().any(|l| l.divides(&m)) {
                *count += 1;
            }
        }
        return;
    }
    for e in 0..=(rem / degrees[i]) as u32 {
        cur[i] = e;
        count_rec(degrees, leads, rem - e as usize * degrees[i], i + 1, cur, count);
    }
    cur[i] = 0;
}

fn gmono(deg: usize, exps: &[u32]) -> GMono {
    GMono { deg, exps: exps.to_vec() }
}

fn convert(e: &Element) -> F2Poly {
    e.terms.keys().map(|(d, m)| gmono(*d, &m.exps)).collect()
}

/// Recompute the Poincaré series of `a` in degrees `0..=up_to`.
///
/// Presentations over 𝔽₂ go through the capped Buchberger route. At an odd
/// prime only monomial relations are supported; exterior generators
/// contribute their squares as extra monomial relations.
pub fn oracle_dims(a: &AlgebraPresentation, up_to: usize) -> Result<Vec<usize>> {
    let degrees: Vec<usize> = a.gens().iter().map(|g| g.degree).collect();
    if a.prime() == 2 {
        let input: Vec<F2Poly> = a.relations().iter().map(convert).collect();
        let gb = buchberger_capped(input, &degrees, up_to);
        let leads: Vec<GMono> = gb.iter().map(|p| leading(p).clone()).collect();
        return Ok((0..=up_to).map(|n| count_standard(&degrees, &leads, n)).collect());
    }
    let mut leads: Vec<GMono> = Vec::new();
    for r in a.relations() {
        if r.terms.len() != 1 {
            return Err(Error::Invalid(
                "the oracle handles polynomial relations only over the field with two elements"
                    .into(),
            ));
        }
        let (d, m) = r.terms.keys().next().unwrap();
        leads.push(gmono(*d, &m.exps));
    }
    for (i, g) in a.gens().iter().enumerate() {
        if a.is_exterior(i) {
            let mut exps = vec![0u32; degrees.len()];
            exps[i] = 2;
            leads.push(GMono { deg: 2 * g.degree, exps });
        }
    }
    Ok((0..=up_to).map(|n| count_standard(&degrees, &leads, n)).collect())
}
