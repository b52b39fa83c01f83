//! Polynomials: exact-rational linear combinations of canonical monomials,
//! and identities (polynomials asserted identically zero).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::monomial::Monomial;
use crate::term::{OperationTag, Signature, Term, TermError, Variable};

pub type Coeff = BigRational;

pub fn coeff_int(n: i64) -> Coeff {
    BigRational::from_integer(n.into())
}

/// Hard cap on monomial degree; beyond this the multilinear spaces explode.
pub const MAX_DEGREE: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("signature mismatch: {0} vs {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error("monomials do not share one variable multiset")]
    NotHomogeneous,
    #[error("degree {0} exceeds the cap {MAX_DEGREE}")]
    DegreeOverflow(usize),
    #[error("assignment missing variable {0}")]
    MissingAssignment(String),
}

/// Exact-rational linear combination of canonical monomials. No zero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    signature: Signature,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(signature: Signature) -> Polynomial {
        Polynomial {
            signature,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: Monomial, c: Coeff) -> Polynomial {
        let mut p = Polynomial::zero(m.signature());
        p.add_monomial(m, c);
        p
    }

    /// Canonicalize a term and wrap it with coefficient `c`.
    pub fn from_term(signature: Signature, term: &Term, c: Coeff) -> Result<Polynomial, PolyError> {
        if term.degree() > MAX_DEGREE {
            return Err(PolyError::DegreeOverflow(term.degree()));
        }
        if let Some(found) = term.signature()? {
            if found != signature {
                return Err(PolyError::SignatureMismatch(signature, found));
            }
        }
        let m = match signature {
            Signature::Plain => Monomial::canonicalize_plain(term)?,
            _ => match term {
                Term::Leaf(v) => Monomial::leaf(signature, v.clone()),
                _ => Monomial::canonicalize(term)?,
            },
        };
        Ok(Polynomial::from_monomial(m, c))
    }

    pub fn var(signature: Signature, v: Variable) -> Polynomial {
        Polynomial::from_monomial(Monomial::leaf(signature, v), Coeff::one())
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add_monomial(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.signature(), self.signature);
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Polynomial) {
        debug_assert_eq!(self.signature, other.signature);
        for (m, c) in other.iter() {
            self.add_monomial(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_monomial(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        self.scale(&-Coeff::one())
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.signature);
        }
        Polynomial {
            signature: self.signature,
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.clone() * c))
                .collect(),
        }
    }

    /// Bilinear product: applies `tag` monomial by monomial.
    pub fn product(
        tag: OperationTag,
        left: &Polynomial,
        right: &Polynomial,
    ) -> Result<Polynomial, PolyError> {
        let sig = tag.signature();
        let mut out = Polynomial::zero(sig);
        for (ml, cl) in left.iter() {
            for (mr, cr) in right.iter() {
                let term = Term::Node(tag, vec![ml.to_term(), mr.to_term()]);
                let p = Polynomial::from_term(sig, &term, cl.clone() * cr.clone())?;
                out.add_assign(&p);
            }
        }
        Ok(out)
    }

    /// Degree of a homogeneous polynomial (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms.keys().next().map_or(0, |m| m.degree())
    }

    /// All variables, sorted by id.
    pub fn variables(&self) -> Vec<Variable> {
        let mut set: BTreeSet<Variable> = BTreeSet::new();
        for m in self.terms.keys() {
            set.extend(m.leaves().iter().cloned());
        }
        set.into_iter().collect()
    }

    /// Multilinear: every monomial mentions the same variables, each once.
    pub fn is_multilinear(&self) -> bool {
        let mut expected: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            if !m.is_multilinear() {
                return false;
            }
            let mut ids: Vec<u32> = m.leaves().iter().map(|v| v.id()).collect();
            ids.sort_unstable();
            match &expected {
                None => expected = Some(ids),
                Some(e) => {
                    if *e != ids {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every monomial carries the same variable multiset (repetitions
    /// allowed); required before polarization.
    pub fn is_homogeneous(&self) -> bool {
        let mut expected: Option<Vec<u32>> = None;
        for m in self.terms.keys() {
            let mut ids: Vec<u32> = m.leaves().iter().map(|v| v.id()).collect();
            ids.sort_unstable();
            match &expected {
                None => expected = Some(ids),
                Some(e) => {
                    if *e != ids {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Simultaneous substitution of terms for variables, then
    /// canonicalization and like-term collection. Every variable of the
    /// polynomial must be assigned.
    pub fn substitute(&self, assignment: &BTreeMap<u32, Term>) -> Result<Polynomial, PolyError> {
        for v in self.variables() {
            if !assignment.contains_key(&v.id()) {
                return Err(PolyError::MissingAssignment(v.name().to_string()));
            }
        }
        let mut out = Polynomial::zero(self.signature);
        for (m, c) in self.iter() {
            let term = substitute_term(&m.to_term(), assignment);
            out.add_assign(&Polynomial::from_term(self.signature, &term, c.clone())?);
        }
        Ok(out)
    }

    /// Substitution of polynomials for variables, distributing
    /// multilinearly over each occurrence. Variables not in the map are
    /// kept.
    pub fn substitute_poly(
        &self,
        assignment: &BTreeMap<u32, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let mut out = Polynomial::zero(self.signature);
        for (m, c) in self.iter() {
            let expanded = expand_term(&m.to_term(), self.signature, assignment)?;
            out.add_assign(&expanded.scale(c));
        }
        Ok(out)
    }

    /// Rename variables: each leaf with id `k` becomes `mapping[k]`.
    pub fn renamed(&self, mapping: &BTreeMap<u32, Variable>) -> Polynomial {
        let mut out = Polynomial::zero(self.signature);
        for (m, c) in self.iter() {
            let mut m2 = m.clone();
            for leaf in m2.leaves_mut() {
                if let Some(v) = mapping.get(&leaf.id()) {
                    *leaf = v.clone();
                }
            }
            out.add_monomial(m2, c.clone());
        }
        out
    }

    /// Full linearization: every repeated variable is split into fresh
    /// copies, summing over all placements. The result is multilinear; in
    /// characteristic 0 it generates the same multilinear consequences.
    pub fn polarized(&self) -> Result<Polynomial, PolyError> {
        if !self.is_homogeneous() {
            return Err(PolyError::NotHomogeneous);
        }
        let mut poly = self.clone();
        loop {
            let repeated = poly.first_repeated_variable();
            let Some((var, mult)) = repeated else {
                return Ok(poly);
            };
            let max_id = poly.variables().iter().map(|v| v.id()).max().unwrap_or(0);
            let fresh: Vec<Variable> = (0..mult)
                .map(|k| Variable::new(max_id + 1 + k as u32, format!("{}{}", var.name(), k + 1)))
                .collect();
            let mut next = Polynomial::zero(poly.signature);
            for (m, c) in poly.iter() {
                let positions: Vec<usize> = m
                    .leaves()
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| **v == var)
                    .map(|(i, _)| i)
                    .collect();
                debug_assert_eq!(positions.len(), mult);
                for placement in permutations(mult) {
                    let mut m2 = m.clone();
                    for (slot, &pos) in placement.iter().zip(positions.iter()) {
                        m2.leaves_mut()[pos] = fresh[*slot].clone();
                    }
                    next.add_monomial(m2, c.clone());
                }
            }
            poly = next;
        }
    }

    fn first_repeated_variable(&self) -> Option<(Variable, usize)> {
        let m = self.terms.keys().next()?;
        let mut counts: BTreeMap<&Variable, usize> = BTreeMap::new();
        for v in m.leaves() {
            *counts.entry(v).or_insert(0) += 1;
        }
        counts
            .into_iter()
            .find(|(_, n)| *n > 1)
            .map(|(v, n)| (v.clone(), n))
    }

    /// Map a dialgebra polynomial into the one-operation signature by
    /// `u -| v -> (u)(v)` and `u |- v -> -(v)(u)`, collecting signs.
    pub fn collapse_right_anticommutative(&self) -> Result<Polynomial, PolyError> {
        if self.signature != Signature::Dialgebra {
            return Err(PolyError::SignatureMismatch(
                Signature::Dialgebra,
                self.signature,
            ));
        }
        let mut out = Polynomial::zero(Signature::Plain);
        for (m, c) in self.iter() {
            let (sign, term) = collapse_term(&m.to_term());
            let coeff = if sign < 0 { -c.clone() } else { c.clone() };
            out.add_assign(&Polynomial::from_term(Signature::Plain, &term, coeff)?);
        }
        Ok(out)
    }
}

fn substitute_term(term: &Term, assignment: &BTreeMap<u32, Term>) -> Term {
    match term {
        Term::Leaf(v) => assignment
            .get(&v.id())
            .cloned()
            .unwrap_or_else(|| term.clone()),
        Term::Node(tag, children) => Term::Node(
            *tag,
            children
                .iter()
                .map(|c| substitute_term(c, assignment))
                .collect(),
        ),
    }
}

/// Expand a term whose leaves may map to whole polynomials.
fn expand_term(
    term: &Term,
    signature: Signature,
    assignment: &BTreeMap<u32, Polynomial>,
) -> Result<Polynomial, PolyError> {
    match term {
        Term::Leaf(v) => match assignment.get(&v.id()) {
            Some(p) => {
                if p.signature() != signature && !p.is_zero() && p.degree() > 1 {
                    return Err(PolyError::SignatureMismatch(signature, p.signature()));
                }
                // re-tag degree-1 monomials into the ambient signature
                let mut out = Polynomial::zero(signature);
                for (m, c) in p.iter() {
                    let q = Polynomial::from_term(signature, &m.to_term(), c.clone())?;
                    out.add_assign(&q);
                }
                Ok(out)
            }
            None => Ok(Polynomial::var(signature, v.clone())),
        },
        Term::Node(tag, children) => {
            let mut parts = Vec::with_capacity(children.len());
            for c in children {
                parts.push(expand_term(c, signature, assignment)?);
            }
            // n-ary multilinear expansion
            let mut acc: Vec<(Coeff, Vec<Term>)> = vec![(Coeff::one(), Vec::new())];
            for part in &parts {
                let mut next = Vec::new();
                for (c0, ts) in &acc {
                    for (m, c) in part.iter() {
                        let mut ts2 = ts.clone();
                        ts2.push(m.to_term());
                        next.push((c0.clone() * c.clone(), ts2));
                    }
                }
                acc = next;
            }
            let mut out = Polynomial::zero(signature);
            for (c, ts) in acc {
                let t = Term::Node(*tag, ts);
                out.add_assign(&Polynomial::from_term(signature, &t, c)?);
            }
            Ok(out)
        }
    }
}

fn collapse_term(term: &Term) -> (i8, Term) {
    match term {
        Term::Leaf(_) => (1, term.clone()),
        Term::Node(tag, children) => {
            let (sl, left) = collapse_term(&children[0]);
            let (sr, right) = collapse_term(&children[1]);
            match tag {
                OperationTag::DiLeft => (sl * sr, Term::times(left, right)),
                OperationTag::DiRight => (-sl * sr, Term::times(right, left)),
                _ => unreachable!("collapse is only called on dialgebra terms"),
            }
        }
    }
}

/// All permutations of 0..n in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn rec(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            acc.push(v);
            rec(rest, acc, out);
            acc.pop();
            rest.insert(i, v);
        }
    }
    rec(&mut items, &mut Vec::new(), &mut out);
    out
}

/// A polynomial asserted identically zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identity {
    pub label: Option<String>,
    pub poly: Polynomial,
}

impl Identity {
    pub fn new(label: impl Into<Option<String>>, poly: Polynomial) -> Identity {
        Identity {
            label: label.into(),
            poly,
        }
    }

    pub fn unlabeled(poly: Polynomial) -> Identity {
        Identity { label: None, poly }
    }

    pub fn is_multilinear(&self) -> bool {
        self.poly.is_multilinear()
    }

    /// Multilinear form: the identity itself, or its full linearization.
    pub fn linearized(&self) -> Result<Polynomial, PolyError> {
        if self.poly.is_multilinear() {
            Ok(self.poly.clone())
        } else {
            self.poly.polarized()
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(l) = &self.label {
            write!(f, "{l}: ")?;
        }
        write!(f, "{} = 0", crate::parser::print(&self.poly))
    }
}
