//! The BSO expansion: extend a multilinear one-operation polynomial to n
//! dialgebra operations by making each argument the center of every
//! monomial.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::poly::{permutations, Coeff, Polynomial};
use crate::term::{Signature, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BsoError {
    #[error("input operation must be multilinear")]
    NotMultilinear,
    #[error("input must be in the one-operation signature, found {0}")]
    WrongSignature(Signature),
    #[error("argument index {index} out of range 1..={arity}")]
    IndexOutOfRange { index: usize, arity: usize },
}

/// A renaming relation between family members:
/// `family[i](x_1..x_n) = scale * family[source](x_{perm[1]}..x_{perm[n]})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Renaming {
    pub source: usize,
    pub perm: Vec<usize>,
    pub scale: Coeff,
}

#[derive(Debug, Clone)]
pub struct BsoFamily {
    pub components: Vec<Polynomial>,
    /// For each component, the first earlier component it renames, if any.
    pub relations: Vec<Option<Renaming>>,
}

fn check(op_poly: &Polynomial) -> Result<Vec<Variable>, BsoError> {
    if op_poly.signature() != Signature::Plain {
        return Err(BsoError::WrongSignature(op_poly.signature()));
    }
    if !op_poly.is_multilinear() {
        return Err(BsoError::NotMultilinear);
    }
    Ok(op_poly.variables())
}

/// Make the i-th argument (1-based, in variable order) the center of every
/// monomial: tree shapes are kept and every product symbol is tagged to
/// point toward that leaf.
pub fn bso_expand(op_poly: &Polynomial, i: usize) -> Result<Polynomial, BsoError> {
    let vars = check(op_poly)?;
    if i == 0 || i > vars.len() {
        return Err(BsoError::IndexOutOfRange {
            index: i,
            arity: vars.len(),
        });
    }
    let center_var = &vars[i - 1];
    let mut out = Polynomial::zero(Signature::Dialgebra);
    for (m, c) in op_poly.iter() {
        let pos = m
            .leaves()
            .iter()
            .position(|v| v == center_var)
            .expect("multilinear monomials mention every variable");
        out.add_monomial(m.with_center(pos as u8), c.clone());
    }
    Ok(out)
}

/// All n expansions, with renaming relations among them reported.
pub fn bso_family(op_poly: &Polynomial) -> Result<BsoFamily, BsoError> {
    let vars = check(op_poly)?;
    let n = vars.len();
    let components: Result<Vec<Polynomial>, BsoError> =
        (1..=n).map(|i| bso_expand(op_poly, i)).collect();
    let components = components?;
    let mut relations: Vec<Option<Renaming>> = Vec::with_capacity(n);
    for (i, comp) in components.iter().enumerate() {
        let mut found = None;
        'search: for (j, earlier) in components.iter().enumerate().take(i) {
            for perm in permutations(n) {
                let mapping: BTreeMap<u32, Variable> = vars
                    .iter()
                    .enumerate()
                    .map(|(k, v)| (v.id(), vars[perm[k]].clone()))
                    .collect();
                let renamed = earlier.renamed(&mapping);
                if &renamed == comp {
                    found = Some(Renaming {
                        source: j,
                        perm,
                        scale: Coeff::from_integer(1.into()),
                    });
                    break 'search;
                }
                if renamed.neg() == *comp {
                    found = Some(Renaming {
                        source: j,
                        perm,
                        scale: -Coeff::from_integer(1.into()),
                    });
                    break 'search;
                }
            }
        }
        relations.push(found);
    }
    Ok(BsoFamily {
        components,
        relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_poly, print};
    use crate::poly::coeff_int;

    fn plain(text: &str) -> Polynomial {
        parse_poly(text, Signature::Plain).unwrap()
    }

    #[test]
    fn commutator_center_one_is_dicommutator() {
        let p = bso_expand(&plain("com(x,y)"), 1).unwrap();
        let dicom = parse_poly("dicom(x,y)", Signature::Dialgebra).unwrap();
        assert_eq!(p, dicom);
    }

    #[test]
    fn commutator_family_relation() {
        // [x,y]_2 = -[y,x]_1
        let fam = bso_family(&plain("com(x,y)")).unwrap();
        assert_eq!(fam.components.len(), 2);
        let rel = fam.relations[1].as_ref().unwrap();
        assert_eq!(rel.source, 0);
        assert_eq!(rel.perm, vec![1, 0]);
        assert_eq!(rel.scale, coeff_int(-1));
    }

    #[test]
    fn associator_center_two_is_inner_associator() {
        let p = bso_expand(&plain("as(x,y,z)"), 2).unwrap();
        let ax = parse_poly("ax(x,y,z)", Signature::Dialgebra).unwrap();
        assert_eq!(p, ax);
    }

    #[test]
    fn jacobian_family() {
        let fam = bso_family(&plain("J(x,y,z)")).unwrap();
        assert_eq!(
            print(&fam.components[0]),
            "((x -| y) -| z) + ((z |- x) -| y) + ((y |- z) |- x)"
        );
        // J2(x,y,z) = J1(y,z,x) and J3(x,y,z) = J1(z,x,y)
        let r2 = fam.relations[1].as_ref().unwrap();
        assert_eq!((r2.source, &r2.perm[..]), (0, &[1, 2, 0][..]));
        assert_eq!(r2.scale, coeff_int(1));
        let r3 = fam.relations[2].as_ref().unwrap();
        assert_eq!((r3.source, &r3.perm[..]), (0, &[2, 0, 1][..]));
        assert_eq!(r3.scale, coeff_int(1));
    }

    #[test]
    fn cyclic_sum_family_matches_subscript_expansion() {
        // making x the center of S gives the St macro; the other centers
        // only rename it
        let fam = bso_family(&plain("S(x,y,z)")).unwrap();
        let st = parse_poly("St(x,y,z)", Signature::Dialgebra).unwrap();
        assert_eq!(fam.components[0], st);
        // S1(x,y,z) = S2(z,x,y) = S3(y,z,x)
        let r2 = fam.relations[1].as_ref().unwrap();
        let r3 = fam.relations[2].as_ref().unwrap();
        // S1(x,y,z) = S2(z,x,y) = S3(y,z,x), i.e. S2 and S3 are the two
        // cyclic renamings of S1
        assert_eq!((r2.source, &r2.perm[..]), (0, &[1, 2, 0][..]));
        assert_eq!((r3.source, &r3.perm[..]), (0, &[2, 0, 1][..]));
        assert_eq!(r2.scale, coeff_int(1));
        assert_eq!(r3.scale, coeff_int(1));
    }

    #[test]
    fn centers_are_where_they_should_be() {
        let j = plain("J(x,y,z)");
        let vars = j.variables();
        for i in 1..=3 {
            let comp = bso_expand(&j, i).unwrap();
            for (m, _) in comp.iter() {
                assert_eq!(m.center_var().unwrap(), &vars[i - 1]);
            }
        }
    }

    #[test]
    fn erasing_tags_recovers_input() {
        let l = plain("L(x,y,z)");
        for i in 1..=3 {
            let comp = bso_expand(&l, i).unwrap();
            let mut erased = Polynomial::zero(Signature::Plain);
            for (m, c) in comp.iter() {
                erased.add_monomial(m.forget_center(), c.clone());
            }
            assert_eq!(erased, l);
        }
    }

    #[test]
    fn bso_is_linear() {
        let a = plain("(x*y)*z");
        let b = plain("x*(z*y)");
        let sum = a.add(&b.scale(&coeff_int(3)));
        let lhs = bso_expand(&sum, 2).unwrap();
        let rhs = bso_expand(&a, 2)
            .unwrap()
            .add(&bso_expand(&b, 2).unwrap().scale(&coeff_int(3)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dialgebra_input_rejected() {
        let p = parse_poly("dicom(x,y)", Signature::Dialgebra).unwrap();
        assert!(matches!(
            bso_expand(&p, 1),
            Err(BsoError::WrongSignature(_))
        ));
    }

    #[test]
    fn collapse_of_first_jacobian_expansion() {
        // J1 collapses to (xy)z + x(zy) - (xz)y
        let j1 = bso_expand(&plain("J(x,y,z)"), 1).unwrap();
        let collapsed = j1.collapse_right_anticommutative().unwrap();
        let expect = plain("(x*y)*z + x*(z*y) - (x*z)*y");
        assert_eq!(collapsed, expect);
    }
}
