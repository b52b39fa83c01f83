//! Canonical monomials.
//!
//! A dialgebra monomial is stored as (shape, leaves, center): all operation
//! symbols of the canonical term point toward the center leaf, which makes
//! equality modulo the bar identities structural equality. Plain monomials
//! are (shape, leaves) with no center.

use crate::shape::{shape_index, shapes, ShapeTree};
use crate::term::{OperationTag, Signature, Term, TermError, Variable};

/// A monomial in canonical form.
///
/// Ordering is (degree, shape index, center, leaf ids), which is the
/// deterministic monomial order used for printing and basis positions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    signature: Signature,
    degree: u8,
    shape: u16,
    /// Leaf position all operations point toward; `None` in the plain
    /// signature and for unsubscripted n-ary monomials.
    center: Option<u8>,
    leaves: Vec<Variable>,
}

impl Monomial {
    /// Canonical form of a term: quotient by the bar identities in the
    /// dialgebra signature (by the 0-identities for subscripted n-ary
    /// operations). Plain terms are taken as-is.
    pub fn canonicalize(term: &Term) -> Result<Monomial, TermError> {
        let signature = match term.signature()? {
            Some(sig) => sig,
            // a bare generator: degree-1 dialgebra monomial by convention
            None => Signature::Dialgebra,
        };
        let leaves: Vec<Variable> = term.leaves().into_iter().cloned().collect();
        let shape_tree = shape_of(term);
        let shape = shape_index(signature.arity(), &shape_tree);
        let center = match signature {
            Signature::Plain => None,
            Signature::Dialgebra => Some(center_position(term, 0)?),
            Signature::Nary(_) => {
                if term_is_subscripted(term)? {
                    Some(center_position(term, 0)?)
                } else {
                    None
                }
            }
        };
        Ok(Monomial {
            signature,
            degree: leaves.len() as u8,
            shape,
            center,
            leaves,
        })
    }

    /// Canonicalize a plain term, rejecting dialgebra tags.
    pub fn canonicalize_plain(term: &Term) -> Result<Monomial, TermError> {
        match term.signature()? {
            Some(Signature::Plain) | None => {}
            Some(found) => {
                return Err(TermError::WrongSignature {
                    expected: Signature::Plain,
                    found,
                })
            }
        }
        let leaves: Vec<Variable> = term.leaves().into_iter().cloned().collect();
        let shape_tree = shape_of(term);
        Ok(Monomial {
            signature: Signature::Plain,
            degree: leaves.len() as u8,
            shape: shape_index(2, &shape_tree),
            center: None,
            leaves,
        })
    }

    /// Degree-1 monomial on one generator. In the dialgebra signature the
    /// generator is its own center.
    pub fn leaf(signature: Signature, v: Variable) -> Monomial {
        let center = match signature {
            Signature::Plain => None,
            _ => Some(0),
        };
        Monomial {
            signature,
            degree: 1,
            shape: 0,
            center,
            leaves: vec![v],
        }
    }

    /// Build a monomial from parts. `shape` indexes into
    /// `shape::shapes(arity, degree)`.
    pub fn from_parts(
        signature: Signature,
        shape: u16,
        center: Option<u8>,
        leaves: Vec<Variable>,
    ) -> Monomial {
        let degree = leaves.len() as u8;
        debug_assert!((shape as usize) < shapes(signature.arity(), degree as usize).len());
        if let Some(c) = center {
            debug_assert!(c < degree);
        }
        Monomial {
            signature,
            degree,
            shape,
            center,
            leaves,
        }
    }

    /// The same monomial with the center moved to leaf position `pos`.
    /// This is the shared core of the KP and BSO tagging rules: every
    /// operation symbol of the resulting monomial points toward `pos`.
    pub fn with_center(&self, pos: u8) -> Monomial {
        debug_assert!(pos < self.degree);
        let signature = match self.signature {
            Signature::Plain => Signature::Dialgebra,
            other => other,
        };
        Monomial {
            signature,
            degree: self.degree,
            shape: self.shape,
            center: Some(pos),
            leaves: self.leaves.clone(),
        }
    }

    /// Erase the center (and dialgebra tags) back to the plain signature;
    /// n-ary monomials drop their subscripts.
    pub fn forget_center(&self) -> Monomial {
        let signature = match self.signature {
            Signature::Dialgebra => Signature::Plain,
            other => other,
        };
        Monomial {
            signature,
            degree: self.degree,
            shape: self.shape,
            center: None,
            leaves: self.leaves.clone(),
        }
    }

    pub fn signature(&self) -> Signature {
        self.signature
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn shape_idx(&self) -> u16 {
        self.shape
    }

    pub fn shape_tree(&self) -> &'static ShapeTree {
        &shapes(self.signature.arity(), self.degree as usize)[self.shape as usize]
    }

    pub fn center_idx(&self) -> Option<u8> {
        self.center
    }

    /// The leaf all product symbols point toward.
    pub fn center_var(&self) -> Option<&Variable> {
        self.center.map(|c| &self.leaves[c as usize])
    }

    pub fn leaves(&self) -> &[Variable] {
        &self.leaves
    }

    pub fn leaves_mut(&mut self) -> &mut [Variable] {
        &mut self.leaves
    }

    pub fn is_multilinear(&self) -> bool {
        let mut ids: Vec<u32> = self.leaves.iter().map(|v| v.id()).collect();
        ids.sort_unstable();
        ids.windows(2).all(|w| w[0] != w[1])
    }

    /// Variables sorted by id, deduplicated.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vars = self.leaves.clone();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Reconstruct the canonical term. On the dialgebra side every tag is
    /// chosen to point toward the center in planar order, which is both the
    /// root-to-center path rule and the off-path convention.
    pub fn to_term(&self) -> Term {
        let shape = self.shape_tree().clone();
        let mut leaf_iter = self.leaves.iter().cloned();
        build_term(
            &shape,
            0,
            self.center.map(|c| c as usize),
            self.signature,
            &mut leaf_iter,
        )
    }
}

fn build_term(
    shape: &ShapeTree,
    start: usize,
    center: Option<usize>,
    signature: Signature,
    leaves: &mut impl Iterator<Item = Variable>,
) -> Term {
    match shape {
        ShapeTree::Leaf => Term::Leaf(leaves.next().expect("leaf count matches shape")),
        ShapeTree::Node(children) => {
            let mut built = Vec::with_capacity(children.len());
            let mut pos = start;
            let mut child_spans = Vec::with_capacity(children.len());
            for c in children {
                child_spans.push((pos, pos + c.degree()));
                pos += c.degree();
            }
            for (c, (s, _)) in children.iter().zip(child_spans.iter()) {
                built.push(build_term(c, *s, center, signature, leaves));
            }
            let tag = match signature {
                Signature::Plain => OperationTag::Plain,
                Signature::Dialgebra => {
                    let c = center.expect("dialgebra monomial has a center");
                    // points toward the center: left product iff the center
                    // sits left of the right child's span
                    if c < child_spans[1].0 {
                        OperationTag::DiLeft
                    } else {
                        OperationTag::DiRight
                    }
                }
                Signature::Nary(arity) => match center {
                    None => OperationTag::Slot { index: None, arity },
                    Some(c) => {
                        let j = child_spans
                            .iter()
                            .position(|&(s, e)| c >= s && c < e)
                            .map(|p| p as u8 + 1)
                            .unwrap_or_else(|| if c < start { 1 } else { arity });
                        OperationTag::Slot {
                            index: Some(j),
                            arity,
                        }
                    }
                },
            };
            Term::Node(tag, built)
        }
    }
}

fn shape_of(term: &Term) -> ShapeTree {
    match term {
        Term::Leaf(_) => ShapeTree::Leaf,
        Term::Node(_, children) => ShapeTree::Node(children.iter().map(shape_of).collect()),
    }
}

/// Position (in planar leaf order) of the center of a dialgebra or
/// subscripted n-ary term.
fn center_position(term: &Term, start: usize) -> Result<u8, TermError> {
    match term {
        Term::Leaf(_) => Ok(start as u8),
        Term::Node(tag, children) => {
            let arg = match tag {
                OperationTag::DiLeft => 0,
                OperationTag::DiRight => 1,
                OperationTag::Slot {
                    index: Some(j),
                    arity: _,
                } => *j as usize - 1,
                OperationTag::Slot { index: None, arity } => {
                    return Err(TermError::WrongSignature {
                        expected: Signature::Dialgebra,
                        found: Signature::Nary(*arity),
                    })
                }
                OperationTag::Plain => {
                    return Err(TermError::WrongSignature {
                        expected: Signature::Dialgebra,
                        found: Signature::Plain,
                    })
                }
            };
            let offset: usize = children[..arg].iter().map(Term::degree).sum();
            center_position(&children[arg], start + offset)
        }
    }
}

fn term_is_subscripted(term: &Term) -> Result<bool, TermError> {
    match term {
        Term::Leaf(_) => Ok(true),
        Term::Node(tag, children) => {
            let here = match tag {
                OperationTag::Slot { index, .. } => index.is_some(),
                _ => true,
            };
            let mut all = here;
            let mut any = here;
            for c in children {
                if let Term::Node(..) = c {
                    let sub = term_is_subscripted(c)?;
                    all = all && sub;
                    any = any || sub;
                }
            }
            if all != any {
                return Err(TermError::MixedSubscripting);
            }
            Ok(all)
        }
    }
}
