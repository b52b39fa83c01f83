//! Pointed words: the normal form of monomials in the free associative
//! dialgebra. Left, right and inner associativity flatten a monomial to
//! its leaf sequence, and the bar identities leave only the center marked.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::monomial::Monomial;
use crate::poly::{Coeff, Polynomial};
use crate::term::{Signature, Term, TermError, Variable};

/// A word with a marked position, `1 <= center <= letters.len()`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointedWord {
    pub letters: Vec<Variable>,
    pub center: usize,
}

impl fmt::Display for PointedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.letters.iter().enumerate() {
            if i + 1 == self.center {
                write!(f, "[{v}]")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Signed combination of pointed words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PointedCombination {
    pub terms: BTreeMap<PointedWord, Coeff>,
}

impl PointedCombination {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, w: PointedWord, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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
}

impl fmt::Display for PointedCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*{w}")?;
        }
        Ok(())
    }
}

/// Normal form of a dialgebra term in the free associative dialgebra: the
/// leaf sequence with the center marked.
pub fn normal_form_term(t: &Term) -> Result<PointedWord, TermError> {
    let m = match t {
        Term::Leaf(v) => Monomial::leaf(Signature::Dialgebra, v.clone()),
        _ => Monomial::canonicalize(t)?,
    };
    Ok(word_of(&m))
}

fn word_of(m: &Monomial) -> PointedWord {
    PointedWord {
        letters: m.leaves().to_vec(),
        center: m.center_idx().expect("dialgebra monomials have centers") as usize + 1,
    }
}

/// Linear extension to polynomials.
pub fn normal_form(p: &Polynomial) -> Result<PointedCombination, TermError> {
    debug_assert_eq!(p.signature(), Signature::Dialgebra);
    let mut out = PointedCombination::default();
    for (m, c) in p.iter() {
        out.add(word_of(m), c.clone());
    }
    Ok(out)
}
