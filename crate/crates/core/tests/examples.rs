use frobnil_core::cohomology::{
    colon_capturing_witnesses, f_nilpotent_test, filter_regular_check, filter_regular_find, h0_quotient,
    lc_constant, lower_cohomology_nilpotence, power_sequence_stability_check, relative_h0_nilpotence, FVerdict,
    RelativeVerdict, Stage,
};
use frobnil_core::dsl::{parse_ideal, parse_poly, parse_ring};
use frobnil_core::frobenius::{
    bracket_power, closure_equality_check, frobenius_closure, frobenius_membership, frobenius_root,
    minimal_frobenius_root, tight_closure_upper, BracketVerdict, Certification,
};
use frobnil_core::oracle::{minimal_root_oracle, multiplier_search};
use frobnil_core::{Ideal, MonomialOrder, Poly, RingSpec, Tri};

const T_RING: &str = "F2[T1,T2,T3]/(T1^2*T2, T1^2*T3)";
const FERMAT: &str = "F7[x,y,z]/(x^3+y^3+z^3)";

fn ring(text: &str) -> RingSpec {
    parse_ring(text, MonomialOrder::Grevlex).unwrap()
}

fn poly(s: &RingSpec, text: &str) -> Poly {
    parse_poly(s.ring(), text).unwrap()
}

fn ideal(s: &RingSpec, text: &str) -> Ideal {
    parse_ideal(s.ring(), text).unwrap()
}

fn t_ring(p: u64) -> RingSpec {
    ring(&T_RING.replacen("F2", &format!("F{p}"), 1))
}

#[test]
fn example_saturation() {
    let s = t_ring(2);
    let i = s.extend(&ideal(&s, "(T1+T2)")).unwrap();
    let sat = i.saturate(&s.maximal_ideal()).unwrap();
    let want = s.extend(&ideal(&s, "(T1+T2, T1^2)")).unwrap();
    assert_eq!(sat.ideal, want);
    let h0 = h0_quotient(&ideal(&s, "(T1+T2)"), &s).unwrap();
    assert_eq!(h0.saturation, want);
    assert_eq!(h0.finite_length_dim, 1);
}

#[test]
fn example_frobenius_membership() {
    for p in [2, 3] {
        let s = t_ring(p);
        let i = ideal(&s, "(T1+T2)");
        let t = poly(&s, "T1^2");
        assert_eq!(frobenius_membership(&t, &i, &s, 3).unwrap(), Some(1));
        let lifted = s.extend(&bracket_power(&i, 1).unwrap()).unwrap();
        assert!(lifted.contains_poly(&t.pow(p).unwrap()).unwrap());
        assert!(!s.extend(&i).unwrap().contains_poly(&t).unwrap());
    }
}

#[test]
fn example_relative_nilpotence_witness() {
    let s = t_ring(2);
    let i = bracket_power(&ideal(&s, "(T1+T2)"), 1).unwrap();
    let rel = relative_h0_nilpotence(&i, &s.maximal_ideal(), &s, 3).unwrap();
    assert_eq!(rel.verdict, RelativeVerdict::NoUpToCap);
    assert_eq!(rel.witness, Some(poly(&s, "T1^2")));
    assert_eq!(rel.cap, 3);
}

#[test]
fn example_is_not_f_nilpotent() {
    let s = t_ring(2);
    let c = poly(&s, "T1+T2+T3");
    let rep = f_nilpotent_test(&s, Some(&c), 3, 2, 0).unwrap();
    assert_eq!(rep.verdict, FVerdict::FailsWithWitness);
    let w = &rep.witnesses[0];
    assert_eq!(w.element, poly(&s, "T1^2"));
    assert_eq!(w.stage, Stage::Lower);
    assert_eq!((w.t, w.e), (1, 1));
    assert_eq!(rep.dimension, 2);
}

#[test]
fn example_filter_regular_sequence() {
    let s = t_ring(2);
    let xs = filter_regular_find(&s, 2, 64, 0).unwrap().unwrap();
    let rep = filter_regular_check(&xs, &s).unwrap();
    assert!(rep.ok && rep.is_sop);
    assert!(power_sequence_stability_check(&xs, &s, &[2, 3]).unwrap());

    let bad = vec![poly(&s, "T1"), poly(&s, "T2")];
    let rep = filter_regular_check(&bad, &s).unwrap();
    assert!(!rep.ok);
    assert_eq!(rep.failing_index, Some(1));

    let lower = lower_cohomology_nilpotence(&s, &xs, 1, 2).unwrap();
    assert!(!lower.passes);
}

#[test]
fn example_lc_constant_is_flat() {
    let s = t_ring(2);
    let rep = lc_constant(&ideal(&s, "(T1+T2)"), &s, 3, false).unwrap();
    assert_eq!(rep.table.len(), 4);
    let last = rep.table[3].ratio;
    let earlier = rep.table[..3].iter().map(|r| r.ratio).max().unwrap();
    assert!(last <= earlier);
    for row in &rep.table {
        assert!(row.n as u64 <= rep.c * row.q);
    }
}

#[test]
fn polynomial_rings_pass() {
    for text in ["F3[x,y]", "F2[x,y,z]"] {
        let s = ring(text);
        let rep = f_nilpotent_test(&s, None, 2, 2, 0).unwrap();
        assert_eq!(rep.verdict, FVerdict::PassesAllChecks, "{text}: {:?}", rep.notes);
        assert_eq!(rep.test_element_source.as_deref(), Some("regular"));
    }
}

#[test]
fn fermat_cubic_gap() {
    let s = ring(FERMAT);
    let i = ideal(&s, "(y, z)");
    let x2 = poly(&s, "x^2");
    let c = multiplier_search(&x2, &i, &s, 3, &[1, 2]).unwrap().unwrap();
    assert!(c.degree().unwrap() <= 3);
    assert_eq!(s.in_r_circ(&c).unwrap(), Tri::Yes);
    assert_eq!(frobenius_membership(&x2, &i, &s, 2).unwrap(), None);

    let up = tight_closure_upper(&i, &s, &poly(&s, "x^2"), 2).unwrap();
    assert!(up.contains_poly(&x2).unwrap());
    let br = closure_equality_check(&i, &s, &poly(&s, "x^2"), 2, 2).unwrap();
    assert_eq!(br.verdict, BracketVerdict::GapCandidate);
    assert_eq!(br.witness, Some(x2));
}

#[test]
fn fermat_cubic_sequence_and_colon_capturing() {
    let s = ring(FERMAT);
    let xs = filter_regular_find(&s, 2, 64, 0).unwrap().unwrap();
    assert!(filter_regular_check(&xs, &s).unwrap().is_sop);
    // Cohen-Macaulay, so the colon is already trivial
    assert!(colon_capturing_witnesses(&xs, 1, &s).unwrap().is_empty());
}

#[test]
fn closure_of_monomial_ideal() {
    let s = ring("F3[x,y]");
    let rep = frobenius_closure(&ideal(&s, "(x)"), &s, 2).unwrap();
    assert_eq!(rep.closure, ideal(&s, "(x)"));
    assert_eq!(rep.stabilization_exponent, Some(0));
    assert_eq!(rep.certified, Certification::Stabilized);
}

#[test]
fn roots() {
    let s = ring("F2[x,y]");
    let k = ideal(&s, "(x^2*y^3)");
    assert_eq!(frobenius_root(&k, 1).unwrap(), ideal(&s, "(x*y^2)"));
    assert_eq!(minimal_frobenius_root(&k, 1).unwrap(), ideal(&s, "(x*y)"));
    let cusp = ideal(&s, "(x^2+y^3)");
    assert_eq!(minimal_frobenius_root(&cusp, 1).unwrap(), ideal(&s, "(x, y)"));
    assert_eq!(minimal_root_oracle(&poly(&s, "x^2+y^3"), 1, 2).unwrap(), ideal(&s, "(x, y)"));
    assert_eq!(minimal_root_oracle(&poly(&s, "x^2*y^3"), 1, 2).unwrap(), ideal(&s, "(x*y)"));
    assert_eq!(minimal_root_oracle(&poly(&s, "x^2"), 1, 2).unwrap(), ideal(&s, "(x)"));
}

#[test]
fn multiplier_search_edge_cases() {
    let s = ring("F2[x,y]");
    let m = s.maximal_ideal();
    assert_eq!(multiplier_search(&poly(&s, "x"), &m, &s, 2, &[1, 2]).unwrap(), Some(poly(&s, "1")));
    assert_eq!(multiplier_search(&poly(&s, "1"), &m, &s, 2, &[1, 2, 3]).unwrap(), None);
}

#[test]
fn fermat_cubic_fails_at_top_stage() {
    let s = ring(FERMAT);
    let rep = f_nilpotent_test(&s, Some(&poly(&s, "x^2")), 2, 2, 0).unwrap();
    assert_eq!(rep.verdict, FVerdict::FailsWithWitness, "{:?}", rep.notes);
    let w = &rep.witnesses[0];
    assert_eq!(w.stage, Stage::Top);
    assert!(rep.lower.as_ref().unwrap().passes);
    let auto = f_nilpotent_test(&s, None, 2, 2, 0).unwrap();
    assert_eq!(auto.test_element_source.as_deref(), Some("suggested"));
    assert_ne!(auto.verdict, FVerdict::PassesAllChecks);
}

#[test]
fn h0_of_bracket_power() {
    let s = t_ring(2);
    let i = bracket_power(&ideal(&s, "(T1+T2)"), 1).unwrap();
    let h0 = h0_quotient(&i, &s).unwrap();
    assert_eq!(h0.saturation, s.extend(&ideal(&s, "(T1^2, T2^2)")).unwrap());
    let t = ring("F2[x,y]");
    let h0 = h0_quotient(&ideal(&t, "(x)"), &t).unwrap();
    assert_eq!((h0.saturation, h0.finite_length_dim), (ideal(&t, "(x)"), 0));
}

#[test]
fn lc_constant_edge_cases() {
    let s = ring("F2[x,y]");
    let rep = lc_constant(&ideal(&s, "(x)"), &s, 2, false).unwrap();
    assert!(rep.table.iter().all(|r| r.n == 0));
    assert_eq!(rep.c, 0);
    let t = t_ring(2);
    let rep = lc_constant(&ideal(&t, "(T1+T2)"), &t, 0, false).unwrap();
    assert_eq!(rep.table.len(), 1);
    assert_eq!(rep.c, rep.table[0].n as u64);
}

#[test]
fn cohen_macaulay_lower_stage_passes() {
    let s = ring("F2[x,y,z]");
    let xs = vec![poly(&s, "x"), poly(&s, "y"), poly(&s, "z")];
    assert!(lower_cohomology_nilpotence(&s, &xs, 2, 2).unwrap().passes);
    assert!(lower_cohomology_nilpotence(&s, &xs, 0, 2).unwrap().passes);
    assert_eq!(filter_regular_find(&s, 0, 64, 0).unwrap(), Some(vec![]));
}

#[test]
fn relative_nilpotence_positive_cases() {
    let s = t_ring(2);
    let rel = relative_h0_nilpotence(&ideal(&s, "(T1+T2)"), &s.maximal_ideal(), &s, 3).unwrap();
    assert_eq!((rel.verdict, rel.exponent), (RelativeVerdict::Yes, Some(1)));
    let t = ring("F2[x,y]");
    let rel = relative_h0_nilpotence(&ideal(&t, "(x)"), &t.maximal_ideal(), &t, 3).unwrap();
    assert_eq!((rel.verdict, rel.exponent), (RelativeVerdict::Yes, Some(0)));
}

#[test]
fn closure_equality_in_regular_ring() {
    let s = ring("F2[x,y]");
    let br = closure_equality_check(&ideal(&s, "(x, y^2)"), &s, &poly(&s, "1"), 2, 2).unwrap();
    assert_eq!(br.verdict, BracketVerdict::EqualCertified);
    assert_eq!(br.lower, br.upper);
}
