//! Built-in derived operations: commutators, associators, the Jacobian, the
//! di-Jacobian, and the cyclic associator sums.

use std::collections::BTreeMap;

use num_traits::One;

use crate::poly::{Coeff, PolyError, Polynomial};
use crate::term::{Signature, Term, Variable};

/// A registered derived operation with a fixed multilinear body.
#[derive(Debug, Clone)]
pub struct MacroDef {
    pub name: &'static str,
    pub arity: usize,
    pub signature: Signature,
    body: fn(&[Variable]) -> Polynomial,
}

impl MacroDef {
    /// The defining combination over fresh slot variables.
    pub fn body(&self) -> Polynomial {
        let slots: Vec<Variable> = (0..self.arity)
            .map(|i| Variable::new(i as u32, format!("s{i}")))
            .collect();
        (self.body)(&slots)
    }

    /// Expand a call: substitute the argument polynomials into the body,
    /// distributing multilinearly.
    pub fn expand(&self, args: &[Polynomial]) -> Result<Polynomial, PolyError> {
        assert_eq!(args.len(), self.arity);
        let body = self.body();
        let mut assignment: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (i, arg) in args.iter().enumerate() {
            assignment.insert(i as u32, arg.clone());
        }
        body.substitute_poly(&assignment)
    }
}

pub const MACRO_TABLE: &[MacroDef] = &[
    MacroDef {
        name: "com",
        arity: 2,
        signature: Signature::Plain,
        body: com,
    },
    MacroDef {
        name: "dicom",
        arity: 2,
        signature: Signature::Dialgebra,
        body: dicom,
    },
    MacroDef {
        name: "as",
        arity: 3,
        signature: Signature::Plain,
        body: associator,
    },
    MacroDef {
        name: "al",
        arity: 3,
        signature: Signature::Dialgebra,
        body: left_associator,
    },
    MacroDef {
        name: "ax",
        arity: 3,
        signature: Signature::Dialgebra,
        body: inner_associator,
    },
    MacroDef {
        name: "ar",
        arity: 3,
        signature: Signature::Dialgebra,
        body: right_associator,
    },
    MacroDef {
        name: "J",
        arity: 3,
        signature: Signature::Plain,
        body: jacobian,
    },
    MacroDef {
        name: "L",
        arity: 3,
        signature: Signature::Plain,
        body: di_jacobian,
    },
    MacroDef {
        name: "S",
        arity: 3,
        signature: Signature::Plain,
        body: cyclic_associator_sum,
    },
    MacroDef {
        name: "St",
        arity: 3,
        signature: Signature::Dialgebra,
        body: cyclic_dialgebra_sum,
    },
];

pub fn lookup(name: &str) -> Option<&'static MacroDef> {
    MACRO_TABLE.iter().find(|m| m.name == name)
}

fn mono(sig: Signature, t: Term) -> Polynomial {
    Polynomial::from_term(sig, &t, Coeff::one()).expect("macro body is well formed")
}

fn leaf(v: &Variable) -> Term {
    Term::leaf(v.clone())
}

/// com(x,y) = x*y - y*x
fn com(s: &[Variable]) -> Polynomial {
    let sig = Signature::Plain;
    mono(sig, Term::times(leaf(&s[0]), leaf(&s[1])))
        .sub(&mono(sig, Term::times(leaf(&s[1]), leaf(&s[0]))))
}

/// dicom(x,y) = x -| y - y |- x
fn dicom(s: &[Variable]) -> Polynomial {
    let sig = Signature::Dialgebra;
    mono(sig, Term::di_left(leaf(&s[0]), leaf(&s[1])))
        .sub(&mono(sig, Term::di_right(leaf(&s[1]), leaf(&s[0]))))
}

/// as(x,y,z) = (x*y)*z - x*(y*z)
fn associator(s: &[Variable]) -> Polynomial {
    let sig = Signature::Plain;
    mono(
        sig,
        Term::times(Term::times(leaf(&s[0]), leaf(&s[1])), leaf(&s[2])),
    )
    .sub(&mono(
        sig,
        Term::times(leaf(&s[0]), Term::times(leaf(&s[1]), leaf(&s[2]))),
    ))
}

/// al(x,y,z) = (x -| y) -| z - x -| (y -| z)
fn left_associator(s: &[Variable]) -> Polynomial {
    let sig = Signature::Dialgebra;
    mono(
        sig,
        Term::di_left(Term::di_left(leaf(&s[0]), leaf(&s[1])), leaf(&s[2])),
    )
    .sub(&mono(
        sig,
        Term::di_left(leaf(&s[0]), Term::di_left(leaf(&s[1]), leaf(&s[2]))),
    ))
}

/// ax(x,y,z) = (x |- y) -| z - x |- (y -| z)
fn inner_associator(s: &[Variable]) -> Polynomial {
    let sig = Signature::Dialgebra;
    mono(
        sig,
        Term::di_left(Term::di_right(leaf(&s[0]), leaf(&s[1])), leaf(&s[2])),
    )
    .sub(&mono(
        sig,
        Term::di_right(leaf(&s[0]), Term::di_left(leaf(&s[1]), leaf(&s[2]))),
    ))
}

/// ar(x,y,z) = (x |- y) |- z - x |- (y |- z)
fn right_associator(s: &[Variable]) -> Polynomial {
    let sig = Signature::Dialgebra;
    mono(
        sig,
        Term::di_right(Term::di_right(leaf(&s[0]), leaf(&s[1])), leaf(&s[2])),
    )
    .sub(&mono(
        sig,
        Term::di_right(leaf(&s[0]), Term::di_right(leaf(&s[1]), leaf(&s[2]))),
    ))
}

/// J(x,y,z) = (xy)z + (yz)x + (zx)y
fn jacobian(s: &[Variable]) -> Polynomial {
    let sig = Signature::Plain;
    let t = |a: &Variable, b: &Variable, c: &Variable| {
        mono(sig, Term::times(Term::times(leaf(a), leaf(b)), leaf(c)))
    };
    t(&s[0], &s[1], &s[2])
        .add(&t(&s[1], &s[2], &s[0]))
        .add(&t(&s[2], &s[0], &s[1]))
}

/// L(x,y,z) = (xy)z - x(yz) - (xz)y
fn di_jacobian(s: &[Variable]) -> Polynomial {
    let sig = Signature::Plain;
    mono(
        sig,
        Term::times(Term::times(leaf(&s[0]), leaf(&s[1])), leaf(&s[2])),
    )
    .sub(&mono(
        sig,
        Term::times(leaf(&s[0]), Term::times(leaf(&s[1]), leaf(&s[2]))),
    ))
    .sub(&mono(
        sig,
        Term::times(Term::times(leaf(&s[0]), leaf(&s[2])), leaf(&s[1])),
    ))
}

/// S(x,y,z) = (x,y,z) + (y,z,x) + (z,x,y), associators expanded
fn cyclic_associator_sum(s: &[Variable]) -> Polynomial {
    associator(s)
        .add(&associator(&[s[1].clone(), s[2].clone(), s[0].clone()]))
        .add(&associator(&[s[2].clone(), s[0].clone(), s[1].clone()]))
}

/// St(x,y,z) = (x,y,z)_left + (y,z,x)_right + (z,x,y)_inner
fn cyclic_dialgebra_sum(s: &[Variable]) -> Polynomial {
    left_associator(s)
        .add(&right_associator(&[
            s[1].clone(),
            s[2].clone(),
            s[0].clone(),
        ]))
        .add(&inner_associator(&[
            s[2].clone(),
            s[0].clone(),
            s[1].clone(),
        ]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::coeff_int;

    #[test]
    fn dicom_body() {
        let d = lookup("dicom").unwrap().body();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn inner_associator_matches_definition() {
        // ax(x,y,z) = (x |- y) -| z - x |- (y -| z)
        let m = lookup("ax").unwrap();
        let x = Polynomial::var(Signature::Dialgebra, Variable::new(10, "x"));
        let y = Polynomial::var(Signature::Dialgebra, Variable::new(11, "y"));
        let z = Polynomial::var(Signature::Dialgebra, Variable::new(12, "z"));
        let p = m.expand(&[x, y, z]).unwrap();
        let strs: Vec<String> = p
            .iter()
            .map(|(mm, c)| format!("{c} {}", mm.to_term()))
            .collect();
        assert_eq!(strs, vec!["1 (x |- y) -| z", "-1 x |- (y -| z)"]);
    }

    #[test]
    fn cyclic_dialgebra_sum_has_six_monomials() {
        let m = lookup("St").unwrap();
        let p = m.body();
        assert_eq!(p.len(), 6);
        // coefficients are all +-1
        for (_, c) in p.iter() {
            assert!(c == &coeff_int(1) || c == &coeff_int(-1));
        }
    }

    #[test]
    fn expansion_distributes_over_addition() {
        use crate::parser::parse_poly;
        // lowering a sum of macro calls equals summing the expansions
        // over one shared variable scope
        let x = Polynomial::var(Signature::Dialgebra, Variable::new(0, "x"));
        let y = Polynomial::var(Signature::Dialgebra, Variable::new(1, "y"));
        let z = Polynomial::var(Signature::Dialgebra, Variable::new(2, "z"));
        let d = lookup("dicom").unwrap();
        let direct = d
            .expand(&[x, y.clone()])
            .unwrap()
            .add(&d.expand(&[y, z]).unwrap());
        let parsed = parse_poly("dicom(x,y) + dicom(y,z)", Signature::Dialgebra).unwrap();
        assert_eq!(parsed, direct);
        assert_eq!(parsed.len(), 4);
    }

    #[test]
    fn expansion_commutes_with_substitution() {
        use crate::parser::parse_poly;
        use crate::term::Term;
        use std::collections::BTreeMap;
        // substituting a,b for x,y after expansion equals expanding
        // dicom(a,b) directly
        let d = parse_poly("dicom(x,y)", Signature::Dialgebra).unwrap();
        let vars = d.variables();
        let a = Variable::new(7, "a");
        let b = Variable::new(8, "b");
        let mut assignment: BTreeMap<u32, Term> = BTreeMap::new();
        assignment.insert(vars[0].id(), Term::leaf(a.clone()));
        assignment.insert(vars[1].id(), Term::leaf(b.clone()));
        let substituted = d.substitute(&assignment).unwrap();
        let direct = lookup("dicom")
            .unwrap()
            .expand(&[
                Polynomial::var(Signature::Dialgebra, a),
                Polynomial::var(Signature::Dialgebra, b),
            ])
            .unwrap();
        assert_eq!(substituted, direct);
    }

    #[test]
    fn macro_with_composite_argument() {
        // dicom(x, dicom(y, z)) expands to four monomials
        let d = lookup("dicom").unwrap();
        let x = Polynomial::var(Signature::Dialgebra, Variable::new(10, "x"));
        let y = Polynomial::var(Signature::Dialgebra, Variable::new(11, "y"));
        let z = Polynomial::var(Signature::Dialgebra, Variable::new(12, "z"));
        let inner = d.expand(&[y, z]).unwrap();
        let p = d.expand(&[x, inner]).unwrap();
        assert_eq!(p.len(), 4);
    }
}
