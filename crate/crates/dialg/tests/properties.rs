//! Randomized and exhaustive property suites: dimension formulas,
//! idempotence and linearity of the canonical maps, determinism of the
//! exact linear algebra, and the lattice behavior of consequence checking.

use dialg::checker::{are_equivalent, is_consequence};
use dialg::corpus;
use dialg::poly::{coeff_int, Coeff, Identity, Polynomial};
use dialg::qlinalg::QMatrix;
use dialg::shape::catalan;
use dialg::spaces::{dimension, sn_orbit, AmbientSpace, MonomialBasis};
use dialg::term::Variable;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Small deterministic generator; enough randomness for matrix tests.
struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn small(&mut self, bound: u64) -> i64 {
        (self.next() % (2 * bound + 1)) as i64 - bound as i64
    }
}

#[test]
fn dimension_formulas_hold_for_degrees_two_to_five() {
    for n in 2..=5usize {
        let fact: usize = (1..=n).product();
        assert_eq!(
            dimension(AmbientSpace::Plain, n).unwrap(),
            fact * catalan(n - 1),
            "plain degree {n}"
        );
        assert_eq!(
            dimension(AmbientSpace::Dialgebra, n).unwrap(),
            fact * n * catalan(n - 1),
            "dialgebra degree {n}"
        );
    }
}

fn random_degree_four_polynomial(rng: &mut XorShift, basis: &MonomialBasis) -> Polynomial {
    let mut p = Polynomial::zero(basis.space().signature());
    for m in basis.monomials() {
        let c = rng.small(3);
        if c != 0 {
            p.add_monomial(m.clone(), coeff_int(c));
        }
    }
    p
}

#[test]
fn straighten_is_linear_and_idempotent() {
    let plain = MonomialBasis::new(AmbientSpace::Plain, 4).unwrap();
    let ra = MonomialBasis::new(AmbientSpace::RightAnticommutative, 4).unwrap();
    let mut rng = XorShift(0x5eed_1234_dead_beef);
    for _ in 0..20 {
        let p = random_degree_four_polynomial(&mut rng, &plain);
        let q = random_degree_four_polynomial(&mut rng, &plain);
        if p.is_zero() || q.is_zero() {
            continue;
        }
        let a = coeff_int(rng.small(5));
        let combo = p.scale(&a).add(&q);
        let cp = ra.coordinates(&p).unwrap();
        let cq = ra.coordinates(&q).unwrap();
        let cc = ra.coordinates(&combo).unwrap();
        for i in 0..cc.len() {
            assert_eq!(cc[i], cp[i].clone() * a.clone() + cq[i].clone());
        }
        // idempotence: rebuilding from coordinates straightens to itself
        let mut rebuilt = Polynomial::zero(p.signature());
        for (i, c) in cp.iter().enumerate() {
            if !c.is_zero() {
                rebuilt.add_monomial(ra.monomials()[i].clone(), c.clone());
            }
        }
        if !rebuilt.is_zero() {
            assert_eq!(ra.coordinates(&rebuilt).unwrap(), cp);
        }
    }
}

#[test]
fn rref_is_deterministic_idempotent_and_rank_symmetric() {
    let mut rng = XorShift(0xabcd_ef01_2345_6789);
    for trial in 0..6 {
        let rows = 20 + (trial % 3) * 40; // up to 100
        let cols = 100 + (trial % 2) * 500; // up to 600
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let mut row = vec![Coeff::zero(); cols];
            for _ in 0..10 {
                let at = (rng.next() % cols as u64) as usize;
                row[at] = coeff_int(rng.small(4));
            }
            data.push(row);
        }
        let m = QMatrix::from_rows(data).unwrap();
        let (r1, rank, pivots) = m.rref();
        let (r2, rank2, pivots2) = m.rref();
        assert_eq!((r1.clone(), rank, pivots.clone()), (r2, rank2, pivots2));
        let (r3, rank3, _) = r1.rref();
        assert_eq!(rank3, rank);
        assert_eq!(r3, r1);
        assert_eq!(m.transpose().rank(), rank, "trial {trial}");
    }
}

#[test]
fn consequence_is_reflexive() {
    for (label, space, degree) in [
        ("di-malcev", AmbientSpace::RightAnticommutative, 4),
        ("leibniz", AmbientSpace::Plain, 3),
        ("liu-alternative-1", AmbientSpace::Dialgebra, 3),
        ("lid", AmbientSpace::RightAnticommutative, 4),
    ] {
        let f = corpus::identity(label);
        let v = is_consequence(&f, std::slice::from_ref(&f), space, degree).unwrap();
        assert!(v.result, "{label} should follow from itself");
    }
}

#[test]
fn consequence_is_monotone_in_the_generators() {
    let ra = AmbientSpace::RightAnticommutative;
    let lid = corpus::identity("lid");
    let dimalcev = corpus::identity("di-malcev");
    // true stays true when generators are added
    let base = is_consequence(&lid, std::slice::from_ref(&dimalcev), ra, 4).unwrap();
    assert!(base.result);
    let more = is_consequence(&lid, &[dimalcev.clone(), lid.clone()], ra, 4).unwrap();
    assert!(more.result);
    // a non-consequence becomes one once itself is added
    let not_yet = is_consequence(&dimalcev, std::slice::from_ref(&lid), ra, 4).unwrap();
    assert!(!not_yet.result);
    assert!(not_yet.residual.is_some());
    let closed = is_consequence(&dimalcev, &[lid, dimalcev.clone()], ra, 4).unwrap();
    assert!(closed.result);
}

#[test]
fn equivalence_is_an_equivalence_relation_on_the_corpus() {
    let ra = AmbientSpace::RightAnticommutative;
    let lid = corpus::identity("lid");
    let dimalcev = corpus::identity("di-malcev");
    // reflexive
    assert!(are_equivalent(&lid, &lid, ra, 4).unwrap().result);
    // symmetric (both orders agree)
    let fwd = are_equivalent(&lid, &dimalcev, ra, 4).unwrap();
    let bwd = are_equivalent(&dimalcev, &lid, ra, 4).unwrap();
    assert_eq!(fwd.result, bwd.result);
    assert!(!fwd.result);
    assert_eq!(fwd.ranks[0], bwd.ranks[1]);
    // invariance under variable permutation, and transitivity through it
    let vars = dimalcev.poly.variables();
    let rotate: BTreeMap<u32, Variable> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.id(), vars[(i + 1) % vars.len()].clone()))
        .collect();
    let rotated = Identity::unlabeled(dimalcev.poly.renamed(&rotate));
    let twice = Identity::unlabeled(rotated.poly.renamed(&rotate));
    assert!(are_equivalent(&dimalcev, &rotated, ra, 4).unwrap().result);
    assert!(are_equivalent(&rotated, &twice, ra, 4).unwrap().result);
    assert!(are_equivalent(&dimalcev, &twice, ra, 4).unwrap().result);
}

#[test]
fn orbit_commutes_with_straightening_coordinatewise() {
    // permuting the variables of a straightened basis expansion and
    // re-straightening gives the same coordinates as straightening the
    // permuted polynomial directly
    let ra = MonomialBasis::new(AmbientSpace::RightAnticommutative, 4).unwrap();
    let f = corpus::identity("di-malcev").poly;
    let orbit = sn_orbit(&f);
    assert_eq!(orbit.len(), 24);
    let base = ra.coordinates(&f).unwrap();
    let vars = ra.standard_variables();
    for (k, permuted) in orbit.iter().enumerate() {
        // rebuild sigma(f) from the straightened expansion of f
        let perm = &dialg::poly::permutations(4)[k];
        let mapping: BTreeMap<u32, Variable> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.id(), vars[perm[i]].clone()))
            .collect();
        let mut rebuilt = Polynomial::zero(f.signature());
        for (i, c) in base.iter().enumerate() {
            if !c.is_zero() {
                rebuilt.add_monomial(ra.monomials()[i].clone(), c.clone());
            }
        }
        let rebuilt_permuted = rebuilt.renamed(&mapping);
        assert_eq!(
            ra.coordinates(&rebuilt_permuted).unwrap(),
            ra.coordinates(permuted).unwrap(),
            "permutation {k}"
        );
    }
}

#[test]
fn print_parse_round_trips_on_random_polynomials() {
    let mut rng = XorShift(0x0f1e_2d3c_4b5a_6978);
    for space in [AmbientSpace::Plain, AmbientSpace::Dialgebra] {
        let basis = MonomialBasis::new(space, 4).unwrap();
        for _ in 0..15 {
            let p = random_degree_four_polynomial(&mut rng, &basis);
            if p.is_zero() {
                continue;
            }
            let text = dialg::parser::print(&p);
            let reparsed = dialg::parser::parse_poly(&text, space.signature())
                .unwrap_or_else(|e| panic!("reparse of `{text}` failed: {e}"));
            // compare through coordinates: reparsing renumbers variables by
            // first occurrence, and the basis matches them back by name
            assert_eq!(
                basis.coordinates(&p).unwrap(),
                basis.coordinates(&reparsed).unwrap(),
                "round trip changed `{text}`"
            );
        }
    }
}

#[test]
fn membership_of_stacked_rows() {
    let mut rng = XorShift(0x1357_9bdf_2468_ace0);
    let cols = 40;
    let mk_row =
        |rng: &mut XorShift| -> Vec<Coeff> { (0..cols).map(|_| coeff_int(rng.small(2))).collect() };
    let a = QMatrix::from_rows((0..8).map(|_| mk_row(&mut rng)).collect()).unwrap();
    let b = QMatrix::from_rows((0..8).map(|_| mk_row(&mut rng)).collect()).unwrap();
    let stacked = a.stack(&b).unwrap();
    assert!(stacked.rank() >= a.rank().max(b.rank()));
    for r in a.row_iter().chain(b.row_iter()) {
        assert!(stacked.row_space_contains(r).unwrap());
    }
}

#[test]
fn lifting_spans_degrees_below_the_target() {
    use dialg::parser::parse_poly;
    use dialg::term::Signature;
    let anticom = corpus::identity("anticommutativity");
    // one lifting step: right anticommutativity follows from
    // anticommutativity in degree 3
    let ra3 = corpus::identity("right-anticommutativity");
    let v = is_consequence(&ra3, std::slice::from_ref(&anticom), AmbientSpace::Plain, 3).unwrap();
    assert!(v.result);
    // two lifting steps reach degree 4
    let target4 = Identity::unlabeled(
        parse_poly("(x*y)*(z*t) + (y*x)*(z*t)", Signature::Plain).unwrap(),
    );
    let v4 =
        is_consequence(&target4, std::slice::from_ref(&anticom), AmbientSpace::Plain, 4).unwrap();
    assert!(v4.result);
    // and associativity is not an anticommutativity consequence
    let assoc = corpus::identity("associativity");
    let w = is_consequence(&assoc, std::slice::from_ref(&anticom), AmbientSpace::Plain, 3).unwrap();
    assert!(!w.result);
}
