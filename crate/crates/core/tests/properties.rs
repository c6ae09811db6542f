mod common;

use etf_forge::construct::{
    flat_regular_simplex, harmonic_etf, kirkman_etf, kirkman_from_u, steiner_naimark, steiner_orthogonality,
    tensor_etf, verify_difference_set, KirkmanInputs, SteinerInputs,
};
use etf_forge::design::{all_pairs_design, fano_plane, round_robin_resolution};
use etf_forge::frame::{certify_etf, verify_naimark_pair, welch_bound_sq, Frame, NaimarkPair};
use etf_forge::hadamard::{char_table, dft, hadamard_of_size, kron, sylvester, verify_hadamard, AbelianGroup, HadamardMatrix};
use etf_forge::io::{
    canonical_json, design_from_json, design_to_json, frame_from_json, frame_to_json, matrix_from_json,
    matrix_to_json, parse_json,
};
use etf_forge::qsd::{
    canonical_sign, check_etf_relations, corollary42_params, etf_from_qsd, flat_feasibility, gerzon_bounds,
    qsd_from_flat_etf, qsd_params_give_etf, Branch, EtfKind, Field,
};
use etf_forge::scalar::{CycloElem, QuadElem};
use etf_forge::{Domain, ExactMatrix, Rational, Scalar};
use proptest::prelude::*;

fn g_choices(v: usize) -> Vec<HadamardMatrix> {
    let mut out = vec![dft(v)];
    if let Ok(h) = hadamard_of_size(v) {
        out.push(h);
    }
    out
}

fn check_pair(pair: &NaimarkPair) {
    let again = verify_naimark_pair(&pair.primary, &pair.complement).unwrap();
    assert_eq!(again.alpha, pair.alpha);
    let (a, b) = (certify_etf(&pair.primary).unwrap(), certify_etf(&pair.complement).unwrap());
    assert!(a.welch_equality && b.welch_equality);
    assert_eq!(a.n, b.n);
    assert_eq!(a.d + b.d, a.n);
    assert_eq!(b.beta, &pair.alpha - &a.beta);
}

fn round_trip_frame(f: &Frame) {
    let text = canonical_json(&frame_to_json(f));
    let back = frame_from_json(&parse_json(&text).unwrap()).unwrap();
    assert_eq!(&back, f);
    assert_eq!(canonical_json(&frame_to_json(&back)), text);
}

/// Flat real ETF → QSD → ETF on the (1, −2) branch, compared with the canonical signing.
fn qsd_round_trip(f: &Frame) {
    let fq = qsd_from_flat_etf(f).unwrap();
    assert!(fq.certificate.params.validate().is_ok());
    let (back, link) = etf_from_qsd(&fq.certificate, Branch::Plus).unwrap();
    assert!(link.is_flat_case());
    assert_eq!(back.synthesis(), &fq.signing.matrix);
    assert_eq!(canonical_sign(back.synthesis()).unwrap().matrix, fq.signing.matrix);
    assert!(flat_feasibility(f.d(), f.n()).unwrap().pass);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn dft_simplices(n in 3usize..=13, drop in 0usize..13) {
        let h = dft(n);
        let row = drop % n;
        let p = flat_regular_simplex(&h, row).unwrap();
        let c = certify_etf(&p).unwrap();
        prop_assert!(c.flat && c.welch_equality);
        prop_assert_eq!((c.d, c.n), (n - 1, n));
        prop_assert_eq!(c.gamma_sq / (c.beta.clone() * c.beta.clone()), welch_bound_sq(n - 1, n));
        let pair = verify_naimark_pair(&p, &Frame::new(h.body().select_rows(&[row])).unwrap()).unwrap();
        prop_assert_eq!(pair.alpha, Rational::from_int(n as i64));
    }

    #[test]
    fn all_pairs_steiner(v in 3usize..=7, use_dft_f in any::<bool>(), gi in 0usize..2, gc in 0usize..8, l in 1usize..=2) {
        let f = if use_dft_f { dft(2) } else { sylvester(1) };
        let gs = g_choices(v);
        let g = gs[gi % gs.len()].clone();
        let inputs = SteinerInputs::new(all_pairs_design(v).unwrap(), f, g).unwrap()
            .with_g_column(gc % v).unwrap()
            .with_l(l).unwrap();
        steiner_orthogonality(&inputs).unwrap();
        check_pair(&steiner_naimark(&inputs).unwrap());
    }

    #[test]
    fn fano_steiner(gi in 0usize..3, gc in 0usize..4, l in 1usize..=3) {
        let g = [sylvester(2), dft(4), char_table(&AbelianGroup::new(vec![4]).unwrap())][gi].clone();
        let inputs = SteinerInputs::new(fano_plane(), dft(3), g).unwrap().with_g_column(gc).unwrap().with_l(l).unwrap();
        steiner_orthogonality(&inputs).unwrap();
        let pair = steiner_naimark(&inputs).unwrap();
        check_pair(&pair);
        round_trip_frame(&pair.primary);
        round_trip_frame(&pair.complement);
    }

    #[test]
    fn kron_is_hadamard(a in 1usize..6, b in 1usize..6, real_a in any::<bool>()) {
        let ha = if real_a { sylvester(a as u32 % 3) } else { dft(a) };
        let hb = dft(b);
        let k = kron(&ha, &hb).unwrap();
        prop_assert_eq!(k.size(), ha.size() * hb.size());
        verify_hadamard(k.body()).unwrap();
    }

    #[test]
    fn character_tables(orders in prop::collection::vec(2u32..6, 1..4)) {
        let g = AbelianGroup::new(orders).unwrap();
        let h = char_table(&g);
        prop_assert_eq!(h.size(), g.order());
        verify_hadamard(h.body()).unwrap();
        prop_assert!(h.body().row(0).iter().all(|s| s == &h.body().domain().one()));
        for x in 0..g.order() {
            prop_assert_eq!(g.sub(x, x), 0);
            prop_assert_eq!(g.index(&g.digits(x)), x);
        }
    }

    #[test]
    fn hadamard_family_qsd_tuples(half in 1usize..200) {
        let u = 2 * half;
        let (a, b) = corollary42_params(u).unwrap();
        for p in [a, b] {
            prop_assert!(p.relation_holds());
            prop_assert!(p.design.validate().is_ok());
            let w = check_etf_relations(&p).unwrap();
            prop_assert_eq!(w, Rational::from_int(u as i64));
            prop_assert!(qsd_params_give_etf(&p).unwrap());
        }
        prop_assert!(flat_feasibility(u * (2 * u - 1), 4 * u * u).unwrap().pass);
        prop_assert!(flat_feasibility(u * (2 * u + 1), 4 * u * u).unwrap().pass);
    }

    #[test]
    fn odd_u_has_no_real_flat_family(half in 1usize..200) {
        let u = 2 * half + 1;
        prop_assert!(corollary42_params(u).is_err());
        prop_assert!(!flat_feasibility(u * (2 * u - 1), 4 * u * u).unwrap().pass);
    }

    #[test]
    fn gerzon_upper_bounds_are_monotone(d in 2usize..60, extra in 2usize..4000, real in any::<bool>()) {
        let n = d + extra;
        let field = if real { Field::Real } else { Field::Complex };
        let here = gerzon_bounds(d, n, field, EtfKind::Flat).unwrap().pass();
        let next = gerzon_bounds(d, n + 1, field, EtfKind::Flat).unwrap().pass();
        prop_assert!(here || !next);
        let cap = if real { (d * d - d + 2) / 2 } else { d * d - d + 1 };
        prop_assert_eq!(here, n <= cap);
    }

    #[test]
    fn cyclotomic_matrix_json(order in 1u32..13, rows in 1usize..4, cols in 1usize..4,
                              seed in prop::collection::vec((-20i64..20, 1i64..9, 0i64..24), 16)) {
        let dom = Domain::Cyclotomic { order };
        let m = ExactMatrix::from_fn(dom, rows, cols, |i, j| {
            let (a, b, e) = seed[(i * cols + j) % seed.len()];
            Scalar::Cyclo(CycloElem::root_of_unity(order, e).scale(&Rational::new(a, b)))
        });
        let text = canonical_json(&matrix_to_json(&m, None));
        let (back, w) = matrix_from_json(&parse_json(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &m);
        prop_assert!(w.is_none());
        prop_assert_eq!(canonical_json(&matrix_to_json(&back, None)), text);
    }

    #[test]
    fn quadratic_matrix_json(t in prop::sample::select(vec![2u64, 3, 5, 6, 7, 10, 15]), rows in 1usize..4,
                             seed in prop::collection::vec((-30i64..30, 1i64..7, -30i64..30, 1i64..7), 9),
                             weights in prop::collection::vec(1i64..9, 3)) {
        let dom = Domain::Quadratic { radicand: t };
        let m = ExactMatrix::from_fn(dom, rows, 3, |i, j| {
            let (a, ad, b, bd) = seed[(i * 3 + j) % seed.len()];
            Scalar::Quad(QuadElem::new(t, Rational::new(a, ad), Rational::new(b, bd)))
        });
        let w: Vec<Rational> = (0..rows).map(|i| Rational::from_int(weights[i])).collect();
        let text = canonical_json(&matrix_to_json(&m, Some(&w)));
        let (back, bw) = matrix_from_json(&parse_json(&text).unwrap()).unwrap();
        prop_assert_eq!(back, m);
        prop_assert_eq!(bw, Some(w));
    }

    #[test]
    fn big_rational_json(a in any::<i64>(), b in any::<i64>(), c in 1i64..i64::MAX) {
        // products overflow i64 and must survive as strings
        let q = &(&Rational::from_int(a) * &Rational::from_int(b)) / &Rational::from_int(c);
        let m = ExactMatrix::from_fn(Domain::RATIONAL, 1, 1, |_, _| Domain::RATIONAL.rational(q.clone()));
        let text = canonical_json(&matrix_to_json(&m, None));
        prop_assert_eq!(matrix_from_json(&parse_json(&text).unwrap()).unwrap().0, m);
    }
}

#[test]
fn design_json_round_trips() {
    let mut designs = vec![fano_plane()];
    for v in 3..=8 {
        designs.push(all_pairs_design(v).unwrap());
    }
    for v in [4, 6, 8, 10] {
        designs.push(round_robin_resolution(v).unwrap());
    }
    for d in designs {
        let text = canonical_json(&design_to_json(&d));
        let back = design_from_json(&parse_json(&text).unwrap()).unwrap();
        assert_eq!(back, d);
        assert_eq!(canonical_json(&design_to_json(&back)), text);
    }
}

#[test]
fn flat_real_etfs_round_trip_through_qsds() {
    let k2 = kirkman_etf(&kirkman_from_u(2).unwrap()).unwrap();
    let k4 = kirkman_etf(&kirkman_from_u(4).unwrap()).unwrap();
    let g = AbelianGroup::new(vec![2, 2, 2, 2]).unwrap();
    let harmonic = harmonic_etf(&verify_difference_set(&g, &[1, 2, 3, 5, 10, 15]).unwrap()).unwrap();
    let t16 = {
        let ones = Frame::new(ExactMatrix::ones(Domain::REAL_SIGNS, 1, 4)).unwrap();
        let p = verify_naimark_pair(&ones, &Frame::new(common::tetrahedron()).unwrap()).unwrap();
        tensor_etf(&p, &p).unwrap()
    };
    let t256 = tensor_etf(&k2, &k2).unwrap();
    assert_eq!((t256.primary.d(), t256.primary.n()), (120, 256));
    for pair in [&k2, &k4, &harmonic, &t16, &t256] {
        check_pair(pair);
        qsd_round_trip(&pair.primary);
        qsd_round_trip(&pair.complement);
        round_trip_frame(&pair.primary);
    }
}

#[test]
fn kirkman_with_other_hadamards() {
    // u = 2 with a complex E, F and G from the DFT
    let design = round_robin_resolution(4).unwrap();
    let steiner = SteinerInputs::new(design, dft(2), kron(&dft(2), &dft(2)).unwrap()).unwrap();
    let pair = kirkman_etf(&KirkmanInputs::new(steiner, dft(2)).unwrap()).unwrap();
    check_pair(&pair);
    assert!(certify_etf(&pair.primary).unwrap().flat);
    let real = kirkman_etf(&kirkman_from_u(2).unwrap()).unwrap();
    assert!(real.primary.domain().is_real());
}
