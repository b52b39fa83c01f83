//! Multilinear identity spaces: basis enumeration, straightening into the
//! right-anticommutative quotient, the symmetric-group action, and
//! degree-raising of identities.

use std::collections::{BTreeMap, HashMap};

use num_traits::One;
use thiserror::Error;

use crate::monomial::Monomial;
use crate::poly::{permutations, Coeff, PolyError, Polynomial, MAX_DEGREE};
use crate::shape::{catalan, shapes, ShapeTree};
use crate::term::{OperationTag, Signature, Term, Variable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("degree {0} exceeds the cap {MAX_DEGREE}")]
    DegreeOverflow(usize),
    #[error("polynomial is not multilinear of degree {0}")]
    NotMultilinear(usize),
    #[error("signature mismatch: expected {0}, found {1}")]
    SignatureMismatch(Signature, Signature),
    #[error("monomial `{0}` does not straighten into the basis")]
    OutsideBasis(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Ambient space of a multilinear degree component.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmbientSpace {
    /// Free one-operation algebra.
    Plain,
    /// Free 0-dialgebra (bar identities quotiented structurally).
    Dialgebra,
    /// Free right-anticommutative algebra.
    RightAnticommutative,
}

impl AmbientSpace {
    pub fn signature(self) -> Signature {
        match self {
            AmbientSpace::Plain | AmbientSpace::RightAnticommutative => Signature::Plain,
            AmbientSpace::Dialgebra => Signature::Dialgebra,
        }
    }

    pub fn rules(self) -> StraighteningRules {
        match self {
            AmbientSpace::RightAnticommutative => StraighteningRules::RightAnticommutative,
            _ => StraighteningRules::Identity,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AmbientSpace::Plain => "plain",
            AmbientSpace::Dialgebra => "dialgebra",
            AmbientSpace::RightAnticommutative => "ra",
        }
    }
}

/// Oriented rewrites with signs, used to push monomials onto a quotient
/// basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StraighteningRules {
    /// No rewriting (plain and dialgebra monomials are already canonical).
    Identity,
    /// Right anticommutativity `x(yz) -> -x(zy)`, oriented by the fixed
    /// variable order and by preferring shapes whose right factors are
    /// left-leaning (this eliminates shapes like a(b(cd)) toward a((cd)b)).
    RightAnticommutative,
}

impl StraighteningRules {
    /// Normal form of a monomial with its sign, or `None` when the monomial
    /// is zero in the quotient (its rewrite orbit reaches both signs).
    pub fn normalize(&self, m: &Monomial) -> Option<(Coeff, Monomial)> {
        match self {
            StraighteningRules::Identity => Some((Coeff::one(), m.clone())),
            StraighteningRules::RightAnticommutative => ra_normal_form(m),
        }
    }

    /// True when `m` is its own normal form.
    pub fn is_normal(&self, m: &Monomial) -> bool {
        match self.normalize(m) {
            Some((sign, rep)) => sign.is_one() && &rep == m,
            None => false,
        }
    }
}

/// Swap the children of every composite node sitting in right-child
/// position, one at a time: the signed rewrite closure of right
/// anticommutativity. Representative: fewest flippable nodes, then the
/// monomial order.
fn ra_normal_form(m: &Monomial) -> Option<(Coeff, Monomial)> {
    debug_assert_eq!(m.signature(), Signature::Plain);
    let start = m.to_term();
    let mut seen: BTreeMap<Monomial, i8> = BTreeMap::new();
    let mut queue: Vec<(Term, i8)> = vec![(start, 1)];
    seen.insert(m.clone(), 1);
    while let Some((term, sign)) = queue.pop() {
        for flipped in flips(&term) {
            let fm = Monomial::canonicalize_plain(&flipped).expect("flip preserves signature");
            match seen.get(&fm) {
                Some(&s) => {
                    if s != -sign {
                        // reached with both signs: the class is 2-torsion,
                        // hence zero over the rationals
                        return None;
                    }
                }
                None => {
                    seen.insert(fm.clone(), -sign);
                    queue.push((flipped, -sign));
                }
            }
        }
    }
    let rep = seen
        .iter()
        .min_by_key(|(mm, _)| (flippable_nodes(&mm.to_term()), (*mm).clone()))
        .map(|(mm, s)| (*s, mm.clone()))
        .expect("orbit is nonempty");
    let (s, rep): (i8, Monomial) = rep;
    Some((if s < 0 { -Coeff::one() } else { Coeff::one() }, rep))
}

/// All single right-anticommutativity rewrites of a term: for each
/// composite node in right-child position, swap its two children.
fn flips(term: &Term) -> Vec<Term> {
    fn rec(t: &Term, is_right_child: bool) -> Vec<Term> {
        let Term::Node(tag, children) = t else {
            return Vec::new();
        };
        let mut out = Vec::new();
        if is_right_child {
            out.push(Term::Node(
                *tag,
                vec![children[1].clone(), children[0].clone()],
            ));
        }
        for fl in rec(&children[0], false) {
            out.push(Term::Node(*tag, vec![fl, children[1].clone()]));
        }
        for fr in rec(&children[1], true) {
            out.push(Term::Node(*tag, vec![children[0].clone(), fr]));
        }
        out
    }
    rec(term, false)
}

fn flippable_nodes(term: &Term) -> usize {
    fn rec(t: &Term, is_right_child: bool) -> usize {
        match t {
            Term::Leaf(_) => 0,
            Term::Node(_, children) => {
                let own = usize::from(is_right_child);
                own + rec(&children[0], false) + rec(&children[1], true)
            }
        }
    }
    rec(term, false)
}

/// One association type: a shape, with a center position in the dialgebra
/// case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociationType {
    pub shape: &'static ShapeTree,
    pub center: Option<u8>,
}

/// Association types of the given degree in the fixed order (at degree 4,
/// plain: ((ab)c)d, (a(bc))d, (ab)(cd), a(b(cd)), a((bc)d)). For the
/// right-anticommutative space only non-eliminated shapes appear.
pub fn association_types(
    degree: usize,
    space: AmbientSpace,
) -> Result<Vec<AssociationType>, SpaceError> {
    check_degree(degree)?;
    let all = shapes(2, degree);
    Ok(match space {
        AmbientSpace::Plain => all
            .iter()
            .map(|shape| AssociationType {
                shape,
                center: None,
            })
            .collect(),
        AmbientSpace::Dialgebra => all
            .iter()
            .flat_map(|shape| {
                (0..degree as u8).map(move |c| AssociationType {
                    shape,
                    center: Some(c),
                })
            })
            .collect(),
        AmbientSpace::RightAnticommutative => {
            let basis = MonomialBasis::new(space, degree)?;
            let mut kept: Vec<&'static ShapeTree> = Vec::new();
            for m in basis.monomials() {
                let s = m.shape_tree();
                if kept.last() != Some(&s) {
                    kept.push(s);
                }
            }
            kept.into_iter()
                .map(|shape| AssociationType {
                    shape,
                    center: None,
                })
                .collect()
        }
    })
}

fn check_degree(degree: usize) -> Result<(), SpaceError> {
    if degree == 0 || degree > MAX_DEGREE {
        return Err(SpaceError::DegreeOverflow(degree));
    }
    Ok(())
}

/// Deterministically ordered basis of a multilinear degree component.
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    space: AmbientSpace,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl MonomialBasis {
    /// Monomials ordered by (shape index, center, leaf sequence) over the
    /// standard variables; the right-anticommutative basis keeps the
    /// straightening normal forms, which at degree 4 is exactly the
    /// conventional 60-monomial table.
    pub fn new(space: AmbientSpace, degree: usize) -> Result<MonomialBasis, SpaceError> {
        check_degree(degree)?;
        let vars = Variable::standard(degree);
        let rules = space.rules();
        let perms = permutations(degree);
        let mut monomials = Vec::new();
        let shape_count = catalan(degree - 1);
        for shape in 0..shape_count as u16 {
            let centers: Vec<Option<u8>> = match space {
                AmbientSpace::Dialgebra => (0..degree as u8).map(Some).collect(),
                _ => vec![None],
            };
            for center in centers {
                for perm in &perms {
                    let leaves: Vec<Variable> = perm.iter().map(|&i| vars[i].clone()).collect();
                    let m = Monomial::from_parts(space.signature(), shape, center, leaves);
                    if space == AmbientSpace::RightAnticommutative && !rules.is_normal(&m) {
                        continue;
                    }
                    monomials.push(m);
                }
            }
        }
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        Ok(MonomialBasis {
            space,
            degree,
            monomials,
            index,
        })
    }

    pub fn space(&self) -> AmbientSpace {
        self.space
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn standard_variables(&self) -> Vec<Variable> {
        Variable::standard(self.degree)
    }

    /// Straighten a multilinear polynomial into basis coordinates. The
    /// polynomial's variables (sorted by id) are matched with the basis
    /// variables.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<Coeff>, SpaceError> {
        let sig = self.space.signature();
        if !p.is_zero() && p.signature() != sig {
            return Err(SpaceError::SignatureMismatch(sig, p.signature()));
        }
        if !p.is_multilinear() || (!p.is_zero() && p.degree() != self.degree) {
            return Err(SpaceError::NotMultilinear(self.degree));
        }
        let renamed = self.renamed_to_standard(p)?;
        let rules = self.space.rules();
        let mut coords = vec![Coeff::from_integer(0.into()); self.len()];
        for (m, c) in renamed.iter() {
            let Some((sign, rep)) = rules.normalize(m) else {
                continue; // monomial is zero in the quotient
            };
            let idx = self
                .position(&rep)
                .ok_or_else(|| SpaceError::OutsideBasis(rep.to_term().to_string()))?;
            coords[idx] += sign * c;
        }
        Ok(coords)
    }

    fn renamed_to_standard(&self, p: &Polynomial) -> Result<Polynomial, SpaceError> {
        let vars = p.variables();
        if p.is_zero() {
            return Ok(p.clone());
        }
        if vars.len() != self.degree {
            return Err(SpaceError::NotMultilinear(self.degree));
        }
        let standard = self.standard_variables();
        // variables already named a, b, c, ... keep their names; anything
        // else is matched to the standard set in id order
        let by_name = vars
            .iter()
            .all(|v| standard.iter().any(|s| s.name() == v.name()));
        let mapping: BTreeMap<u32, Variable> = if by_name {
            vars.iter()
                .map(|v| {
                    let s = standard.iter().find(|s| s.name() == v.name()).unwrap();
                    (v.id(), s.clone())
                })
                .collect()
        } else {
            vars.iter()
                .zip(standard.iter())
                .map(|(v, s)| (v.id(), s.clone()))
                .collect()
        };
        Ok(p.renamed(&mapping))
    }
}

/// The 60 right-anticommutative monomials of degree 4 on a, b, c, d, in
/// table order: ((ab)c)d, ((ab)d)c, ..., d((bc)a).
pub fn table1_basis() -> MonomialBasis {
    MonomialBasis::new(AmbientSpace::RightAnticommutative, 4).expect("degree 4 is within the cap")
}

/// Straighten a plain multilinear polynomial to a coordinate vector.
pub fn straighten(
    p: &Polynomial,
    rules: StraighteningRules,
    basis: &MonomialBasis,
) -> Result<Vec<Coeff>, SpaceError> {
    debug_assert_eq!(rules, basis.space().rules());
    basis.coordinates(p)
}

/// The n! permuted copies of a multilinear polynomial, in lexicographic
/// permutation order. Duplicates from symmetric identities are kept.
pub fn sn_orbit(f: &Polynomial) -> Vec<Polynomial> {
    let vars = f.variables();
    permutations(vars.len())
        .into_iter()
        .map(|perm| {
            let mapping: BTreeMap<u32, Variable> = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.id(), vars[perm[i]].clone()))
                .collect();
            f.renamed(&mapping)
        })
        .collect()
}

/// One degree-raising step of the multilinear T-ideal: substitutions of
/// `x_i (op) v` and `v (op) x_i` for every variable, plus the outer
/// products of the whole polynomial with `v`, over every operation of the
/// signature.
pub fn lift(f: &Polynomial, fresh: &Variable) -> Result<Vec<Polynomial>, SpaceError> {
    lift_restricted(f, fresh, None)
}

/// Like [`lift`], but substitution is allowed only into the listed
/// variables when `allowed` is given; outer products are always included.
/// Hypotheses that hold only for distinguished elements use this to keep
/// those elements fixed.
pub fn lift_restricted(
    f: &Polynomial,
    fresh: &Variable,
    allowed: Option<&[Variable]>,
) -> Result<Vec<Polynomial>, SpaceError> {
    let sig = f.signature();
    let tags: &[OperationTag] = match sig {
        Signature::Plain => &[OperationTag::Plain],
        Signature::Dialgebra => &[OperationTag::DiLeft, OperationTag::DiRight],
        Signature::Nary(_) => return Err(SpaceError::SignatureMismatch(Signature::Plain, sig)),
    };
    if f.degree() + 1 > MAX_DEGREE {
        return Err(SpaceError::DegreeOverflow(f.degree() + 1));
    }
    let vars = f.variables();
    debug_assert!(!vars.iter().any(|v| v == fresh));
    let mut out = Vec::new();
    for v in &vars {
        if let Some(allowed) = allowed {
            if !allowed.contains(v) {
                continue;
            }
        }
        for &tag in tags {
            for flip in [false, true] {
                let product = if flip {
                    Term::Node(tag, vec![Term::leaf(fresh.clone()), Term::leaf(v.clone())])
                } else {
                    Term::Node(tag, vec![Term::leaf(v.clone()), Term::leaf(fresh.clone())])
                };
                let mut assignment: BTreeMap<u32, Term> = BTreeMap::new();
                for u in &vars {
                    assignment.insert(u.id(), Term::leaf(u.clone()));
                }
                assignment.insert(v.id(), product);
                out.push(f.substitute(&assignment)?);
            }
        }
    }
    let fresh_poly = Polynomial::var(sig, fresh.clone());
    for &tag in tags {
        out.push(Polynomial::product(tag, f, &fresh_poly)?);
        out.push(Polynomial::product(tag, &fresh_poly, f)?);
    }
    Ok(out)
}

/// Space dimension of the multilinear degree component.
pub fn dimension(space: AmbientSpace, degree: usize) -> Result<usize, SpaceError> {
    Ok(MonomialBasis::new(space, degree)?.len())
}
