//! The Kolesnikov-Pozhidaev transform: turn a multilinear identity in one
//! n-ary operation into n-ary dialgebra identities, one per choice of
//! central argument, together with the 0-identities of the arity.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{permutations, Identity, PolyError, Polynomial};
use crate::term::{OperationTag, Signature, Term, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KpError {
    #[error("input identity must be multilinear")]
    NotMultilinear,
    #[error("arity must be at least 2")]
    ArityTooSmall,
    #[error("central variable `{0}` does not occur in the identity")]
    CentralAbsent(String),
    #[error("input must use a single unsubscripted operation, found {0}")]
    WrongSignature(Signature),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An interchange law between subscripted operations: `lhs` and `rhs`
/// differ only in the subscript of an inner operation occupying a
/// non-matching argument. The two sides canonicalize identically; they are
/// kept as terms so they can be displayed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroIdentity {
    pub lhs: Term,
    pub rhs: Term,
}

impl ZeroIdentity {
    /// Binary instances rendered with `-|` and `|-`.
    pub fn to_dialgebra(&self) -> Option<(Term, Term)> {
        fn map(t: &Term) -> Option<Term> {
            match t {
                Term::Leaf(v) => Some(Term::leaf(v.clone())),
                Term::Node(OperationTag::Slot { index, arity: 2 }, ch) => {
                    let tag = match index {
                        Some(1) => OperationTag::DiLeft,
                        Some(2) => OperationTag::DiRight,
                        _ => return None,
                    };
                    Some(Term::Node(tag, vec![map(&ch[0])?, map(&ch[1])?]))
                }
                _ => None,
            }
        }
        Some((map(&self.lhs)?, map(&self.rhs)?))
    }
}

impl std::fmt::Display for ZeroIdentity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.to_dialgebra() {
            Some((l, r)) => write!(f, "{l} = {r}"),
            None => write!(f, "{} = {}", self.lhs, self.rhs),
        }
    }
}

/// One output of the transform.
#[derive(Debug, Clone)]
pub struct KpIdentity {
    pub central: Variable,
    pub identity: Identity,
    /// Index of an earlier output this one merely renames, if any.
    pub duplicate_of: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct KpResult {
    pub zero_identities: Vec<ZeroIdentity>,
    pub kp_identities: Vec<KpIdentity>,
}

/// The 0-identities for arity n: the subscript of an operation occupying
/// argument i of operation j is interchangeable when i != j. Duplicates
/// (swapping the two sides) are dropped; for n = 2 the two survivors are
/// the bar identities.
pub fn zero_identities(arity: usize) -> Result<Vec<ZeroIdentity>, KpError> {
    if arity < 2 {
        return Err(KpError::ArityTooSmall);
    }
    let n = arity as u8;
    let mut out = Vec::new();
    // outer arguments a_1..a_{n-1} (argument i is replaced by the inner
    // operation), inner arguments b_1..b_n
    for j in 1..=n {
        for i in 1..=n {
            if i == j {
                continue;
            }
            for k in 1..=n {
                for l in (k + 1)..=n {
                    let build = |inner_sub: u8| -> Term {
                        let mut outer_children = Vec::new();
                        let mut next_var = 0u32;
                        for pos in 1..=n {
                            if pos == i {
                                let inner_children: Vec<Term> = (0..n)
                                    .map(|b| {
                                        Term::leaf(Variable::new(
                                            100 + b as u32,
                                            format!("y{}", b + 1),
                                        ))
                                    })
                                    .collect();
                                outer_children.push(Term::Node(
                                    OperationTag::Slot {
                                        index: Some(inner_sub),
                                        arity: n,
                                    },
                                    inner_children,
                                ));
                            } else {
                                next_var += 1;
                                outer_children.push(Term::leaf(Variable::new(
                                    next_var,
                                    format!("x{next_var}"),
                                )));
                            }
                        }
                        Term::Node(
                            OperationTag::Slot {
                                index: Some(j),
                                arity: n,
                            },
                            outer_children,
                        )
                    };
                    out.push(ZeroIdentity {
                        lhs: build(k),
                        rhs: build(l),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Subscript every operation of a multilinear identity according to the
/// position of the central variable: the argument containing it when there
/// is one, else 1 when it lies to the left and n when it lies to the
/// right. For binary inputs, subscripts 1 and 2 are the left and right
/// products.
pub fn kp_identity(identity: &Identity, central: &Variable) -> Result<Identity, KpError> {
    let poly = &identity.poly;
    check_input(poly)?;
    if !poly.variables().contains(central) {
        return Err(KpError::CentralAbsent(central.name().to_string()));
    }
    let mut out = Polynomial::zero(output_signature(poly.signature()));
    for (m, c) in poly.iter() {
        let pos = m
            .leaves()
            .iter()
            .position(|v| v == central)
            .ok_or_else(|| KpError::CentralAbsent(central.name().to_string()))?;
        out.add_monomial(m.with_center(pos as u8), c.clone());
    }
    let label = identity
        .label
        .as_ref()
        .map(|l| format!("{l}[{}]", central.name()));
    Ok(Identity::new(label, out))
}

fn output_signature(sig: Signature) -> Signature {
    match sig {
        Signature::Plain => Signature::Dialgebra,
        other => other,
    }
}

fn check_input(poly: &Polynomial) -> Result<(), KpError> {
    if !poly.is_multilinear() {
        return Err(KpError::NotMultilinear);
    }
    match poly.signature() {
        Signature::Plain => Ok(()),
        Signature::Dialgebra => Err(KpError::WrongSignature(Signature::Dialgebra)),
        Signature::Nary(_) => Ok(()),
    }
}

/// Apply [`kp_identity`] with every variable as the central argument, in
/// variable order, and bundle the 0-identities of the arity. Outputs that
/// only rename an earlier output are kept and flagged.
pub fn kp_transform(identity: &Identity) -> Result<KpResult, KpError> {
    check_input(&identity.poly)?;
    let arity = identity.poly.signature().arity() as usize;
    let vars = identity.poly.variables();
    let mut kp_identities: Vec<KpIdentity> = Vec::new();
    for v in &vars {
        let out = kp_identity(identity, v)?;
        let duplicate_of = kp_identities
            .iter()
            .position(|prev| is_renaming(&prev.identity.poly, &out.poly));
        kp_identities.push(KpIdentity {
            central: v.clone(),
            identity: out,
            duplicate_of,
        });
    }
    Ok(KpResult {
        zero_identities: zero_identities(arity)?,
        kp_identities,
    })
}

/// Whether `b` equals `a` after some bijective renaming of its variables.
fn is_renaming(a: &Polynomial, b: &Polynomial) -> bool {
    let va = a.variables();
    let vb = b.variables();
    if va.len() != vb.len() {
        return false;
    }
    permutations(va.len()).into_iter().any(|perm| {
        let mapping: BTreeMap<u32, Variable> = va
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id(), vb[perm[i]].clone()))
            .collect();
        &a.renamed(&mapping) == b
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::monomial::Monomial;
    use crate::parser::{parse_poly, print};

    fn algebra_id(label: &str) -> Identity {
        corpus::identity(label)
    }

    #[test]
    fn zero_identity_counts() {
        // n = 2: exactly the two bar identities after deduplication
        let zs = zero_identities(2).unwrap();
        assert_eq!(zs.len(), 2);
        for z in &zs {
            let (l, r) = z.to_dialgebra().unwrap();
            assert_eq!(
                Monomial::canonicalize(&l).unwrap(),
                Monomial::canonicalize(&r).unwrap()
            );
        }
        // n = 3: 36 raw instances, half survive deduplication
        let raw = 3 * 2 * (3 * 2);
        assert_eq!(zero_identities(3).unwrap().len(), raw / 2);
        assert!(zero_identities(1).is_err());
    }

    #[test]
    fn zero_identities_render_as_bar_identities() {
        let zs = zero_identities(2).unwrap();
        let printed: Vec<String> = zs.iter().map(|z| z.to_string()).collect();
        assert!(printed.contains(&"x1 -| (y1 -| y2) = x1 -| (y1 |- y2)".to_string()));
        assert!(printed.contains(&"(y1 -| y2) |- x1 = (y1 |- y2) |- x1".to_string()));
    }

    #[test]
    fn associativity_gives_loday_axioms() {
        let res = kp_transform(&algebra_id("associativity")).unwrap();
        assert_eq!(res.kp_identities.len(), 3);
        let expect = [
            "left-associativity",
            "inner-associativity",
            "right-associativity",
        ];
        for (out, want) in res.kp_identities.iter().zip(expect.iter()) {
            assert_eq!(
                out.identity.poly,
                corpus::identity(want).poly,
                "central {}",
                out.central
            );
            assert!(out.duplicate_of.is_none());
        }
    }

    #[test]
    fn anticommutativity_outputs_are_renamings() {
        let res = kp_transform(&algebra_id("anticommutativity")).unwrap();
        assert_eq!(res.kp_identities.len(), 2);
        assert_eq!(
            print(&res.kp_identities[0].identity.poly),
            "(x -| y) + (y |- x)"
        );
        assert_eq!(res.kp_identities[1].duplicate_of, Some(0));
    }

    #[test]
    fn erasing_subscripts_recovers_input() {
        for label in ["associativity", "leibniz", "malcev-sagle"] {
            let id = algebra_id(label);
            let res = kp_transform(&id).unwrap();
            for out in &res.kp_identities {
                let mut erased = Polynomial::zero(Signature::Plain);
                for (m, c) in out.identity.poly.iter() {
                    erased.add_monomial(m.forget_center(), c.clone());
                }
                assert_eq!(erased, id.poly, "{label} central {}", out.central);
            }
        }
    }

    #[test]
    fn output_count_equals_degree() {
        for label in ["associativity", "malcev-sagle", "nalt-expanded-1"] {
            let id = algebra_id(label);
            let res = kp_transform(&id).unwrap();
            assert_eq!(res.kp_identities.len(), id.poly.degree());
            for out in &res.kp_identities {
                assert!(out.identity.poly.is_multilinear());
                assert_eq!(out.identity.poly.degree(), id.poly.degree());
            }
        }
    }

    #[test]
    fn off_path_subscripts_are_interchangeable() {
        // toggling any tag off the root-to-center path of a KP output
        // monomial gives the same canonical monomial
        fn toggled(t: &Term) -> Vec<Term> {
            let Term::Node(tag, ch) = t else {
                return Vec::new();
            };
            let mut out = Vec::new();
            let other = match tag {
                crate::term::OperationTag::DiLeft => crate::term::OperationTag::DiRight,
                crate::term::OperationTag::DiRight => crate::term::OperationTag::DiLeft,
                _ => return Vec::new(),
            };
            out.push(Term::Node(other, ch.clone()));
            for l in toggled(&ch[0]) {
                out.push(Term::Node(*tag, vec![l, ch[1].clone()]));
            }
            for r in toggled(&ch[1]) {
                out.push(Term::Node(*tag, vec![ch[0].clone(), r]));
            }
            out
        }
        let res = kp_transform(&algebra_id("malcev-sagle")).unwrap();
        for out in &res.kp_identities {
            for (m, _) in out.identity.poly.iter() {
                let canonical = m.to_term();
                for variant in toggled(&canonical) {
                    let vm = Monomial::canonicalize(&variant).unwrap();
                    // either the toggle was off the center path (same
                    // class), or it moved the center (different class)
                    if vm.center_var() == m.center_var() {
                        assert_eq!(&vm, m);
                    }
                }
            }
        }
    }

    #[test]
    fn ternary_transform_stays_slot_tagged() {
        use crate::term::OperationTag;
        // {{x,y,z},t,u} - {x,{y,z,t},u} in one ternary operation
        let op = |children: Vec<Term>| {
            Term::Node(
                OperationTag::Slot {
                    index: None,
                    arity: 3,
                },
                children,
            )
        };
        let vars: Vec<Variable> = ["x", "y", "z", "t", "u"]
            .iter()
            .enumerate()
            .map(|(i, n)| Variable::new(i as u32, *n))
            .collect();
        let leaf = |i: usize| Term::leaf(vars[i].clone());
        let lhs = op(vec![op(vec![leaf(0), leaf(1), leaf(2)]), leaf(3), leaf(4)]);
        let rhs = op(vec![leaf(0), op(vec![leaf(1), leaf(2), leaf(3)]), leaf(4)]);
        let sig = Signature::Nary(3);
        let poly = Polynomial::from_term(sig, &lhs, crate::poly::coeff_int(1))
            .unwrap()
            .sub(&Polynomial::from_term(sig, &rhs, crate::poly::coeff_int(1)).unwrap());
        let res = kp_transform(&Identity::unlabeled(poly.clone())).unwrap();
        assert_eq!(res.kp_identities.len(), 5);
        assert_eq!(res.zero_identities.len(), 18);
        for out in &res.kp_identities {
            assert_eq!(out.identity.poly.signature(), sig);
            // every operation occurrence carries a subscript
            for (m, _) in out.identity.poly.iter() {
                let term = m.to_term();
                fn all_subscripted(t: &Term) -> bool {
                    match t {
                        Term::Leaf(_) => true,
                        Term::Node(OperationTag::Slot { index, .. }, ch) => {
                            index.is_some() && ch.iter().all(all_subscripted)
                        }
                        _ => false,
                    }
                }
                assert!(all_subscripted(&term));
            }
            // erasing subscripts recovers the input
            let mut erased = Polynomial::zero(sig);
            for (m, c) in out.identity.poly.iter() {
                erased.add_monomial(m.forget_center(), c.clone());
            }
            assert_eq!(erased, poly);
        }
    }

    #[test]
    fn dialgebra_input_rejected() {
        let p = parse_poly("x -| y", Signature::Dialgebra).unwrap();
        let err = kp_transform(&Identity::unlabeled(p)).unwrap_err();
        assert!(matches!(err, KpError::WrongSignature(_)));
    }

    #[test]
    fn nonlinear_input_rejected() {
        let p = parse_poly("x*x", Signature::Plain).unwrap();
        assert!(matches!(
            kp_transform(&Identity::unlabeled(p)),
            Err(KpError::NotMultilinear)
        ));
    }
}
