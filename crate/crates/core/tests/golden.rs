mod common;

use common::*;
use etf_forge::construct::{
    flat_regular_simplex, harmonic_etf, kirkman_etf, kirkman_from_u, steiner_etf, steiner_naimark, tensor_etf,
    verify_difference_set,
};
use etf_forge::design::{lift_permutation, verify_bibd, DesignParams};
use etf_forge::frame::{
    certify_etf, certify_hadamard_etf, gram, gram_to_hadamard, hadamard_to_gram, verify_naimark_pair, Frame,
};
use etf_forge::hadamard::{sylvester, AbelianGroup};
use etf_forge::qsd::canonical_sign;
use etf_forge::{Domain, ExactMatrix, Rational};

#[test]
fn lift_of_six_block_design() {
    let x = incidence_6x4();
    assert_eq!(verify_bibd(&x).unwrap(), DesignParams::new(4, 2, 1, 3, 6));
    let lift = lift_permutation(&incidence_6x4_design());
    assert!(lift.is_bijection());
    assert_eq!(lift.matrix(), lift_12x12());
    assert_eq!(lift.recompose(), x);
}

#[test]
fn steiner_first_and_second() {
    let phi1 = steiner_etf(&steiner_inputs_6x16(1)).unwrap();
    assert_eq!(phi1.synthesis(), &steiner_6x16());
    let phi2 = steiner_etf(&steiner_inputs_6x16(2)).unwrap();
    assert_eq!(phi2.synthesis(), &steiner_6x16_second());
}

#[test]
fn steiner_complement_rows() {
    let pair = steiner_naimark(&steiner_inputs_6x16(1)).unwrap();
    let c = pair.complement.synthesis();
    assert_eq!(c.select_rows(&[0, 1, 2, 3, 4, 5]), steiner_6x16_second());
    assert_eq!(c.select_rows(&[6, 7, 8, 9]), steiner_tail());
    let w = pair.complement.row_weights().unwrap();
    assert!(w[..6].iter().all(Rational::is_one));
    assert!(w[6..].iter().all(|x| *x == Rational::from_int(2)));
    assert_eq!(pair.alpha, Rational::from_int(8));
    // same pair assembled by hand
    let hand = Frame::weighted(
        ExactMatrix::vstack(&[&steiner_6x16_second(), &steiner_tail()]).unwrap(),
        Some((0..10).map(|i| Rational::from_int(if i < 6 { 1 } else { 2 })).collect()),
    )
    .unwrap();
    verify_naimark_pair(&Frame::new(steiner_6x16()).unwrap(), &hand).unwrap();
    assert!(certify_hadamard_etf(&pair).is_err());
}

#[test]
fn tensor_of_two_tetrahedron_pairs() {
    let ones = Frame::new(ExactMatrix::ones(Domain::REAL_SIGNS, 1, 4)).unwrap();
    let pair = verify_naimark_pair(&ones, &Frame::new(tetrahedron()).unwrap()).unwrap();
    let t = tensor_etf(&pair, &pair).unwrap();
    assert_eq!(t.primary.synthesis(), &tensor_6x16());
    assert_eq!(certify_hadamard_etf(&pair).unwrap().body(), sylvester(2).body());
}

#[test]
fn tetrahedron_is_sylvester_minus_top_row() {
    assert_eq!(flat_regular_simplex(&sylvester(2), 0).unwrap().synthesis(), &tetrahedron());
    assert_eq!(canonical_sign(&tetrahedron()).unwrap().matrix, signed_tetrahedron());
}

#[test]
fn certificates_for_reference_frames() {
    let c = certify_etf(&Frame::new(harmonic_6x16()).unwrap()).unwrap();
    assert_eq!((c.beta.clone(), c.alpha.clone(), c.gamma_sq.clone()), (6.into(), 16.into(), 4.into()));
    assert!(c.flat && c.welch_equality);
    assert_eq!(&c.gamma_sq / &(&c.beta * &c.beta), Rational::new(1, 9));
    let c = certify_etf(&Frame::new(tetrahedron()).unwrap()).unwrap();
    assert_eq!((c.beta.clone(), c.alpha.clone(), c.gamma_sq.clone()), (3.into(), 4.into(), 1.into()));
    let c = certify_etf(&Frame::new(steiner_6x16()).unwrap()).unwrap();
    assert_eq!((c.beta.clone(), c.alpha.clone(), c.gamma_sq.clone()), (3.into(), 8.into(), 1.into()));
    assert!(!c.flat);
}

#[test]
fn harmonic_frame_matches_reference() {
    let g = AbelianGroup::new(vec![2, 2, 2, 2]).unwrap();
    // listed order: rows permuted, Gram identical
    let listed = harmonic_etf(&verify_difference_set(&g, &[1, 5, 2, 10, 3, 15]).unwrap()).unwrap();
    assert_eq!(gram(&listed.primary), gram(&Frame::new(harmonic_6x16()).unwrap()));
    // sorted order: the synthesis matrix itself
    let ds = verify_difference_set(&g, &[1, 2, 3, 5, 10, 15]).unwrap();
    assert_eq!(ds.lambda, 2);
    let sorted = harmonic_etf(&ds).unwrap();
    assert_eq!(sorted.primary.synthesis(), &harmonic_6x16());
    assert_eq!(sorted.complement.d(), 10);
    certify_etf(&sorted.complement).unwrap();
    assert_eq!(certify_hadamard_etf(&sorted).unwrap().size(), 16);
}

#[test]
fn reference_gram_to_hadamard() {
    let f = Frame::new(harmonic_6x16()).unwrap();
    let h = gram_to_hadamard(&f).unwrap();
    let body = h.body();
    assert_eq!(body.mul(body).unwrap(), ExactMatrix::identity(Domain::REAL_SIGNS, 16).scale(&16.into()));
    let (g, d) = hadamard_to_gram(body).unwrap();
    assert_eq!(d, 6);
    // G = c·Φ*Φ with c = (√n − 1)/β = 1/2
    assert_eq!(g, gram(&f).scale(&Rational::new(1, 2)));
}

#[test]
fn kirkman_sixteen() {
    let pair = kirkman_etf(&kirkman_from_u(2).unwrap()).unwrap();
    let h = certify_hadamard_etf(&pair).unwrap();
    assert_eq!(h.size(), 16);
    gram_to_hadamard(&pair.primary).unwrap();
}
