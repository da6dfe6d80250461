use std::sync::Arc;

use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::fpgroup::{fox_derivative, torus_knot, trefoil};
use crate::laurentlin::LaurentPoly;

fn f12() -> CycField {
    CycField::new(12).unwrap()
}

fn tref() -> Arc<Presentation> {
    Arc::new(trefoil())
}

fn alpha(k: i64) -> Representation {
    alpha_s(&f12().from_int(k)).unwrap()
}

#[test]
fn catalog_representations_are_valid() {
    let f = f12();
    let a1 = alpha(1);
    let x2 = a1.word_image(&Word::power_of_gen(0, 2));
    assert_eq!(x2, Mat::identity(&f, 2).scale(&f.from_int(-1)));
    assert_eq!(a1.word_image(&Word::power_of_gen(1, 3)), x2);
    let r = rho_st(&f.one(), &f.one()).unwrap();
    assert!(r.word_image(&Word::power_of_gen(0, 2)).is_identity());
    assert!(r.word_image(&Word::power_of_gen(1, 3)).is_identity());
    assert!(a1.word_image(&Word::identity()).is_identity());
    assert_eq!(a1.image(0).get(0, 0), &f.zeta_pow(3));
    assert_eq!(a1.image(1).get(0, 1), &(f.zeta_pow(10) - f.zeta_pow(2)));
}

#[test]
fn relator_violation_is_reported() {
    let f = f12();
    let i = f.zeta_pow(3);
    let y = Mat::from_rows(
        &f,
        vec![vec![i.clone(), f.zero()], vec![f.zero(), i.inv().unwrap()]],
    )
    .unwrap();
    let err = Representation::new(tref(), vec![Mat::identity(&f, 2), y], "bad", true).unwrap_err();
    assert!(matches!(err, Error::RelatorViolation { index: 0, .. }));
    let d = Mat::from_ints(&f, &[&[2]]);
    let err = Representation::new(
        Arc::new(torus_knot(2, 3).unwrap()),
        vec![d.clone(), d],
        "det",
        true,
    )
    .unwrap_err();
    assert_eq!(err, Error::DeterminantNotOne(0));
    assert!(alpha_s(&CycField::new(8).unwrap().one()).is_err());
}

#[test]
fn symbolic_application_of_fox_derivatives() {
    let f = f12();
    let p = tref();
    let triv = trivial(&p, &f, 1);
    let dx = fox_derivative(&p.relators[0], 0);
    let m = triv.ring_image_symbolic(&dx).unwrap();
    assert_eq!(m.get(0, 0), &LaurentPoly::parse(&f, "1 + t^3").unwrap());
    let dy = fox_derivative(&p.relators[0], 1);
    let m = triv.ring_image_symbolic(&dy).unwrap();
    assert_eq!(
        m.get(0, 0),
        &LaurentPoly::parse(&f, "-t^4 - t^2 - 1").unwrap()
    );
    // Augmentation of a Fox derivative of a relator is the exponent sum.
    assert_eq!(triv.ring_image(&dx).get(0, 0), &f.from_int(2));
}

#[test]
fn tensor_dual_collapses_for_trivial_second_factor() {
    let f = f12();
    let a1 = alpha(1);
    let triv = trivial(a1.presentation(), &f, 1);
    let z = f.zeta();
    let m = build_tensor_dual(&a1, &triv, &z, 3).unwrap();
    let expected = a1.to_module().twisted(&z, 3).unwrap();
    assert_eq!(m.images(), expected.images());
    assert_eq!(m.dim(), 2);
    let t1 = build_tensor_dual(&triv, &triv, &f.one(), 0).unwrap();
    assert!(t1.images().iter().all(Mat::is_identity));
    // With c = 0 there is no scalar: the action is α A β⁻¹.
    let a2 = alpha(2);
    let m0 = build_tensor_dual(&a1, &a2, &z, 0).unwrap();
    let a = Mat::from_ints(&f, &[&[1, 2], &[3, 4]]);
    let acted = m0.image(0).mul_vec(a.entries());
    let direct = &(a1.image(0) * &a) * a2.inverse_image(0);
    assert_eq!(acted, direct.entries().to_vec());
}

#[test]
fn adjoint_modules() {
    let f = f12();
    let a1 = alpha(1);
    let ad = build_adjoint(&a1);
    assert_eq!(ad.dim(), 3);
    let triv = trivial(a1.presentation(), &f, 3);
    assert!(build_adjoint(&triv).images().iter().all(Mat::is_identity));
    assert_eq!(build_adjoint(&trivial(a1.presentation(), &f, 1)).dim(), 0);
    // Coordinates round-trip through the basis.
    let x = Mat::from_ints(&f, &[&[2, 1, 0], &[5, -7, 3], &[1, 1, 5]]);
    let c = sl_coords(&x);
    let mut rebuilt = Mat::zeros(&f, 3, 3);
    for (b, k) in sl_basis(&f, 3).iter().zip(&c) {
        rebuilt = &rebuilt + &b.scale(k);
    }
    assert_eq!(rebuilt, x);
}

#[test]
fn rho_lambda_and_its_five_summands() {
    let f = f12();
    let a1 = alpha(1);
    let triv = trivial(a1.presentation(), &f, 1);
    let z = f.zeta();
    let rl = build_rho_lambda(&a1, &triv, &z).unwrap();
    let expected = a1
        .image(0)
        .scale(&f.zeta_pow(3))
        .block_diag(&Mat::from_rows(&f, vec![vec![f.zeta_pow(-6)]]).unwrap());
    assert_eq!(rl.image(0), &expected);
    assert!(rl.images().iter().all(|m| m.det().unwrap().is_one()));
    let plain = build_rho_lambda(&a1, &triv, &f.one()).unwrap();
    assert_eq!(plain.images(), a1.direct_sum(&triv).unwrap().images());
    assert_eq!(
        build_rho_lambda(&a1, &triv, &f.zero()).unwrap_err(),
        Error::ZeroArgument
    );

    let ad = build_adjoint(&rl);
    let parts = rho_lambda_summands(&f, 2, 1);
    let dims: Vec<usize> = parts.iter().map(|(_, b)| b.len()).collect();
    assert_eq!(dims, vec![3, 0, 1, 2, 2]);
    for (_, basis) in &parts {
        check_invariant(&ad, basis).unwrap();
    }
    let all: Vec<Vec<CycElt>> = parts.iter().flat_map(|(_, b)| b.clone()).collect();
    assert_eq!(Mat::from_columns(&f, 8, &all).rank(), 8);
    // The M⁺ summand of Ad ρ_λ is the tensor-dual module twisted by λ^{3φ}.
    let plus = ad.restrict(&parts[3].1).unwrap();
    let m_plus = build_tensor_dual(&a1, &triv, &z, 3).unwrap();
    assert_eq!(plus.images(), m_plus.images());
}

#[test]
fn burnside_irreducibility() {
    let f = f12();
    let i = f.zeta_pow(3);
    assert!(irreducible(&alpha(1)));
    assert!(!irreducible(&alpha(0)));
    assert!(!irreducible(&alpha_s(&(&i + &i)).unwrap()));
    assert!(irreducible(&alpha_s(&i).unwrap()));
    let r = |s: i64, t: i64| rho_st(&f.from_int(s), &f.from_int(t)).unwrap();
    assert!(!irreducible(&r(1, 1)));
    assert!(irreducible(&r(3, 3)));
    assert!(!irreducible(&r(0, 4)));
    assert!(!irreducible(&r(4, 0)));
    assert!(!irreducible(&r(3, -1)));
    assert!(!irreducible(&trivial(&tref(), &f, 2)));
    assert!(irreducible(&trivial(&tref(), &f, 1)));
}

#[test]
fn sym_square_trace_symmetry() {
    let a1 = alpha(1);
    let s = sym_square(&a1).unwrap();
    let m = a1.presentation().meridian.clone().unwrap();
    let am = s.word_image(&m);
    assert_eq!(am.trace().unwrap(), s.word_image(&m.inv()).trace().unwrap());
    assert!(sym_square(&trivial(&tref(), &f12(), 3)).is_err());
    assert!(s.images().iter().all(|m| m.det().unwrap().is_one()));
}

#[test]
fn torus_knot_two_three_is_the_trefoil() {
    let t = torus_knot(2, 3).unwrap();
    assert_eq!(t.relators, trefoil().relators);
    assert_eq!(t.abelianization().unwrap(), vec![3, 2]);
}

#[test]
fn representation_file_round_trip() {
    let f = f12();
    let text = "field cyclotomic 12\ndim 2\nlabel a1\ngen x\nrow z^3 0\nrow 1 -z^3\ngen y\nrow z^2, z^-2 - z^2\nrow 0 z^-2\n";
    let r = parse_representation(text, tref(), None).unwrap();
    assert_eq!(r.images(), alpha(1).images());
    assert_eq!(r.label(), "a1");
    assert!(matches!(
        parse_representation("dim 2\ngen x\nrow 1 0\n", tref(), Some(&f)),
        Err(Error::Parse { .. })
    ));
    assert!(matches!(
        parse_representation("dim 1\ngen q\n", tref(), Some(&f)),
        Err(Error::Parse { line: 2, .. })
    ));
    let bad = "dim 1\ngen x\nrow 2\ngen y\nrow 1\n";
    assert!(matches!(
        parse_representation(bad, tref(), Some(&f)),
        Err(Error::DeterminantNotOne(0))
    ));
    let gl = "gl true\ndim 1\ngen x\nrow z^3\ngen y\nrow z^2\n";
    let r = parse_representation(gl, tref(), Some(&f)).unwrap();
    assert_eq!(r.images(), lambda_phi(&tref(), &f.zeta()).unwrap().images());
}

fn q(a: i64) -> BigRational {
    BigRational::from_integer(a.into())
}

fn small_elt(f: &CycField, (a, k): (i64, i64)) -> CycElt {
    f.zeta_pow(k).scale(&q(a))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn conjugation_preserves_validity_and_irreducibility(
        s in -3i64..4,
        entries in prop::collection::vec((-2i64..3, 0i64..12), 4),
    ) {
        let f = f12();
        let p = Mat::from_fn(&f, 2, 2, |i, j| small_elt(&f, entries[i * 2 + j]));
        prop_assume!(!p.det().unwrap().is_zero());
        let a = alpha(s);
        let conj = a.conjugate_by(&p).unwrap();
        prop_assert_eq!(irreducible(&conj), irreducible(&a));
    }

    #[test]
    fn trace_pairing_is_invariant(
        s in -2i64..3, s2 in -2i64..3, k in 0i64..12, w in 0usize..4,
        a in prop::collection::vec((-3i64..4, 0i64..12), 4),
        b in prop::collection::vec((-3i64..4, 0i64..12), 4),
    ) {
        let f = f12();
        let (al, be) = (alpha(s), alpha(s2));
        let lambda = f.zeta_pow(k);
        let plus = build_tensor_dual(&al, &be, &lambda, 4).unwrap();
        let minus = build_tensor_dual(&be, &al, &lambda, -4).unwrap();
        let words = [Word::gen(0), Word::gen(1), Word::power_of_gen(1, -1), Word::gen(0).mul(&Word::power_of_gen(1, -2))];
        let a = Mat::from_fn(&f, 2, 2, |i, j| small_elt(&f, a[i * 2 + j]));
        let b = Mat::from_fn(&f, 2, 2, |i, j| small_elt(&f, b[i * 2 + j]));
        let ga = Mat::from_rows(&f, plus.word_image(&words[w]).mul_vec(a.entries()).chunks(2).map(<[CycElt]>::to_vec).collect()).unwrap();
        let gb = Mat::from_rows(&f, minus.word_image(&words[w]).mul_vec(b.entries()).chunks(2).map(<[CycElt]>::to_vec).collect()).unwrap();
        prop_assert_eq!((&ga * &gb).trace().unwrap(), (&a * &b).trace().unwrap());
    }

    #[test]
    fn rho_lambda_is_always_special(s in -3i64..4, k in 0i64..12, m in 1i64..3) {
        let f = f12();
        let a = alpha(s);
        let lambda = f.zeta_pow(k).scale(&q(m));
        let rl = build_rho_lambda(&a, &trivial(a.presentation(), &f, 1), &lambda).unwrap();
        prop_assert!(rl.images().iter().all(|m| m.det().unwrap().is_one()));
    }
}
