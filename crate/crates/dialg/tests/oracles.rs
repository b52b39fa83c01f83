//! Independent oracles for the canonical forms.
//!
//! The bar-identity oracle rewrites raw tagged trees to closure, never
//! touching the canonical (shape, center) representation, and then checks
//! that the closure classes are exactly what the representation says they
//! are. The straightening oracle does the same for right
//! anticommutativity.

use std::collections::{BTreeMap, BTreeSet};

use dialg::monomial::Monomial;
use dialg::poly::Coeff;
use dialg::shape::{shapes, ShapeTree};
use dialg::spaces::{table1_basis, AmbientSpace, MonomialBasis, StraighteningRules};
use dialg::term::{OperationTag, Term, Variable};

fn vars(n: usize) -> Vec<Variable> {
    ["x", "y", "z", "t", "u", "v"]
        .iter()
        .take(n)
        .enumerate()
        .map(|(i, name)| Variable::new(i as u32, *name))
        .collect()
}

/// All dialgebra tag assignments of a given shape over fixed leaves.
fn tagged_trees(shape: &ShapeTree, leaves: &[Variable]) -> Vec<Term> {
    fn rec(shape: &ShapeTree, leaves: &mut impl Iterator<Item = Variable>) -> Vec<Term> {
        match shape {
            ShapeTree::Leaf => vec![Term::leaf(leaves.next().unwrap())],
            ShapeTree::Node(children) => {
                let left = rec(&children[0], leaves);
                let right = rec(&children[1], leaves);
                let mut out = Vec::new();
                for l in &left {
                    for r in &right {
                        for tag in [OperationTag::DiLeft, OperationTag::DiRight] {
                            out.push(Term::Node(tag, vec![l.clone(), r.clone()]));
                        }
                    }
                }
                out
            }
        }
    }
    rec(shape, &mut leaves.iter().cloned())
}

/// One-step bar rewrites in both directions, applied at any position:
/// toggle the tag of a composite left child under `|-`, or of a composite
/// right child under `-|`.
fn bar_rewrites(term: &Term) -> Vec<Term> {
    fn toggle_root(t: &Term) -> Option<Term> {
        match t {
            Term::Node(OperationTag::DiLeft, ch) => {
                Some(Term::Node(OperationTag::DiRight, ch.clone()))
            }
            Term::Node(OperationTag::DiRight, ch) => {
                Some(Term::Node(OperationTag::DiLeft, ch.clone()))
            }
            _ => None,
        }
    }
    let mut out = Vec::new();
    if let Term::Node(tag, ch) = term {
        let (l, r) = (&ch[0], &ch[1]);
        if *tag == OperationTag::DiRight {
            if let Some(l2) = toggle_root(l) {
                out.push(Term::Node(*tag, vec![l2, r.clone()]));
            }
        }
        if *tag == OperationTag::DiLeft {
            if let Some(r2) = toggle_root(r) {
                out.push(Term::Node(*tag, vec![l.clone(), r2]));
            }
        }
        for l2 in bar_rewrites(l) {
            out.push(Term::Node(*tag, vec![l2, r.clone()]));
        }
        for r2 in bar_rewrites(r) {
            out.push(Term::Node(*tag, vec![l.clone(), r2]));
        }
    }
    out
}

fn bar_closure(start: &Term) -> BTreeSet<Term> {
    let mut seen: BTreeSet<Term> = BTreeSet::new();
    let mut queue = vec![start.clone()];
    seen.insert(start.clone());
    while let Some(t) = queue.pop() {
        for next in bar_rewrites(&t) {
            if seen.insert(next.clone()) {
                queue.push(next);
            }
        }
    }
    seen
}

/// Recursive center, written directly on raw terms.
fn raw_center(t: &Term) -> Variable {
    match t {
        Term::Leaf(v) => v.clone(),
        Term::Node(OperationTag::DiLeft, ch) => raw_center(&ch[0]),
        Term::Node(OperationTag::DiRight, ch) => raw_center(&ch[1]),
        _ => unreachable!(),
    }
}

#[test]
fn bar_closure_classes_are_shape_center_pairs() {
    // exhaustive at degrees 2..=4: the rewrite closure of a tagged tree is
    // exactly the set of tag assignments with the same center
    for degree in 2..=4usize {
        let leaves = vars(degree);
        for shape in shapes(2, degree) {
            let all = tagged_trees(shape, &leaves);
            assert_eq!(all.len(), 1 << (degree - 1));
            let mut class_of: BTreeMap<Term, BTreeSet<Term>> = BTreeMap::new();
            for t in &all {
                class_of.insert(t.clone(), bar_closure(t));
            }
            // classes partition the assignments by center
            let mut by_center: BTreeMap<Variable, BTreeSet<Term>> = BTreeMap::new();
            for t in &all {
                by_center
                    .entry(raw_center(t))
                    .or_default()
                    .insert(t.clone());
            }
            for (t, class) in &class_of {
                assert_eq!(
                    class,
                    by_center.get(&raw_center(t)).unwrap(),
                    "degree {degree}, term {t}"
                );
            }
            // and the canonical representation agrees with the closure
            for a in &all {
                for b in &all {
                    let same_class = class_of[a].contains(b);
                    let same_canonical =
                        Monomial::canonicalize(a).unwrap() == Monomial::canonicalize(b).unwrap();
                    assert_eq!(same_class, same_canonical, "{a} vs {b}");
                }
            }
        }
    }
}

#[test]
fn frozen_degree_four_bar_equivalence() {
    // ((x -| y) -| w) |- z and ((x |- y) -| w) |- z fall in one class
    let v = vars(4);
    let (x, y, z, w) = (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone());
    let mk = |inner: Term| {
        Term::di_right(
            Term::di_left(inner, Term::leaf(w.clone())),
            Term::leaf(z.clone()),
        )
    };
    let a = mk(Term::di_left(Term::leaf(x.clone()), Term::leaf(y.clone())));
    let b = mk(Term::di_right(Term::leaf(x), Term::leaf(y)));
    assert!(bar_closure(&a).contains(&b));
}

#[test]
fn canonicalize_is_idempotent_up_to_degree_five() {
    for degree in 1..=5usize {
        let leaves = vars(degree);
        for shape in shapes(2, degree) {
            for t in tagged_trees(shape, &leaves) {
                let m = Monomial::canonicalize(&t).unwrap();
                let again = Monomial::canonicalize(&m.to_term()).unwrap();
                assert_eq!(m, again);
                // the recursive center survives canonicalization
                assert_eq!(m.center_var().unwrap(), &raw_center(&t));
            }
        }
    }
}

#[test]
fn canonical_tags_all_point_toward_the_center() {
    // planar rule: a node's tag is -| exactly when the center lies left of
    // its right child's span
    fn check(t: &Term, start: usize, center: usize) {
        if let Term::Node(tag, ch) = t {
            let left_width = ch[0].degree();
            let expected = if center < start + left_width {
                OperationTag::DiLeft
            } else {
                OperationTag::DiRight
            };
            assert_eq!(*tag, expected, "node at {start} in {t}");
            check(&ch[0], start, center);
            check(&ch[1], start + left_width, center);
        }
    }
    for degree in 2..=5usize {
        let leaves = vars(degree);
        for shape in shapes(2, degree) {
            for t in tagged_trees(shape, &leaves) {
                let m = Monomial::canonicalize(&t).unwrap();
                check(&m.to_term(), 0, m.center_idx().unwrap() as usize);
            }
        }
    }
}

#[test]
fn straightening_normal_forms_are_unique_and_match_the_table() {
    // every degree-4 plain monomial reaches exactly one representative,
    // and the set of representatives is the 60-monomial table
    let plain = MonomialBasis::new(AmbientSpace::Plain, 4).unwrap();
    let rules = StraighteningRules::RightAnticommutative;
    let mut reps: BTreeSet<Monomial> = BTreeSet::new();
    for m in plain.monomials() {
        let (sign, rep) = rules.normalize(m).expect("no 2-torsion at degree 4");
        assert!(sign == Coeff::from_integer(1.into()) || sign == Coeff::from_integer((-1).into()));
        // normal forms are fixed points
        let (sign2, rep2) = rules.normalize(&rep).unwrap();
        assert_eq!(sign2, Coeff::from_integer(1.into()));
        assert_eq!(rep2, rep);
        reps.insert(rep);
    }
    let table: BTreeSet<Monomial> = table1_basis().monomials().iter().cloned().collect();
    assert_eq!(reps, table);
}

#[test]
fn straightening_has_no_sign_collisions_through_degree_five() {
    for degree in 2..=5usize {
        let plain = MonomialBasis::new(AmbientSpace::Plain, degree).unwrap();
        let rules = StraighteningRules::RightAnticommutative;
        for m in plain.monomials() {
            assert!(
                rules.normalize(m).is_some(),
                "degree {degree}: {} is 2-torsion",
                m.to_term()
            );
        }
    }
}

#[test]
fn collapse_is_well_defined_modulo_right_anticommutativity() {
    // collapsing any two bar-equal dialgebra terms gives plain monomials
    // that straighten to the same signed basis entry
    use dialg::poly::{Coeff, Polynomial};
    use dialg::spaces::AmbientSpace;
    use dialg::term::Signature;
    use num_traits::One;
    for degree in 2..=4usize {
        let ra = MonomialBasis::new(AmbientSpace::RightAnticommutative, degree).unwrap();
        let leaves = vars(degree);
        for shape in shapes(2, degree) {
            for t in tagged_trees(shape, &leaves) {
                let class = bar_closure(&t);
                let mut straightened: Option<Vec<Coeff>> = None;
                for member in &class {
                    let p = Polynomial::from_term(Signature::Dialgebra, member, Coeff::one())
                        .unwrap()
                        .collapse_right_anticommutative()
                        .unwrap();
                    let coords = ra.coordinates(&p).unwrap();
                    match &straightened {
                        None => straightened = Some(coords),
                        Some(expect) => assert_eq!(
                            &coords, expect,
                            "members {t} and {member} collapse differently"
                        ),
                    }
                }
            }
        }
    }
}
