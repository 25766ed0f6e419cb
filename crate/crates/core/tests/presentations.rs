use g2degen::groebner::{ideal_equal, GbOptions, IdealRelation};
use g2degen::hilbert::hilbert_data;
use g2degen::varieties::{
    build_presentation, curve_ideal, image_ideal, parametrization_coordinates, printed_coordinates, quadrics_through, verify_parametrization,
    CurveVariant, Presentation, P5_VARS,
};
use g2degen::{MonomialOrder, PolyRing, PrimeField, Rationals, DEFAULT_PRIME, DEFAULT_SECOND_PRIME};

fn fp() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

#[test]
fn g2_hilbert_function_counts_quadrics() {
    let opts = GbOptions::default();
    let h = hilbert_data(&build_presentation(&fp(), Presentation::G2).unwrap().pfaffian_ideal(), &opts).unwrap();
    assert_eq!((h.dim, h.degree), (5, Some(18)));
    // degree-1 part is the 14-dimensional span; degree 2 part matches the 14 quadrics squared modulo relations
    assert_eq!(h.hilbert_function(0), 1.into());
    assert_eq!(h.hilbert_function(1), 14.into());
    // a hyperplane and quadric section has degree 36
    assert_eq!(h.degree.unwrap() * 2, 36);
    let second = hilbert_data(&build_presentation(&PrimeField::new(DEFAULT_SECOND_PRIME).unwrap(), Presentation::G2).unwrap().pfaffian_ideal(), &opts).unwrap();
    assert_eq!(h, second);
}

#[test]
fn hilbert_data_agrees_over_the_rationals() {
    let opts = GbOptions::default();
    let q = hilbert_data(&build_presentation(&Rationals, Presentation::Ghat).unwrap().pfaffian_ideal(), &opts).unwrap();
    let p = hilbert_data(&build_presentation(&fp(), Presentation::Ghat).unwrap().pfaffian_ideal(), &opts).unwrap();
    assert_eq!(q, p);
}

#[test]
fn every_pfaffian_of_ghat_vanishes_under_the_parametrization() {
    let pres = build_presentation(&Rationals, Presentation::Ghat).unwrap();
    let coords = parametrization_coordinates(&Rationals).unwrap();
    let check = verify_parametrization(&pres, &coords).unwrap();
    assert!(check.holds && !check.vacuous);
    assert_eq!(check.pfaffians_checked, 35);
    // the printed coordinate list has n = ut; rows 3 and 5 carry n, so the failing Pfaffian uses them
    let printed = printed_coordinates(coords[0].ring()).unwrap();
    let bad = verify_parametrization(&pres, &printed).unwrap().counterexample.expect("printed list fails");
    assert!(bad.rows.contains(&3) && bad.rows.contains(&5));
}

#[test]
fn image_of_p5_is_ghat() {
    let opts = GbOptions::default();
    let coords = parametrization_coordinates(&fp()).unwrap();
    let ghat = build_presentation(&fp(), Presentation::Ghat).unwrap().pfaffian_ideal();
    let kernel = image_ideal(&coords, &opts).unwrap().transfer(ghat.ring()).unwrap();
    assert_eq!(ideal_equal(&kernel, &ghat, &opts).unwrap(), IdealRelation::Equal);
}

#[test]
fn degenerate_curves_give_flat_images() {
    let opts = GbOptions::default();
    let g2 = hilbert_data(&build_presentation(&fp(), Presentation::G2).unwrap().pfaffian_ideal(), &opts).unwrap();
    let ring = PolyRing::new(&P5_VARS, fp(), MonomialOrder::Grevlex).unwrap();
    for v in CurveVariant::ALL {
        let img = image_ideal(&quadrics_through(&curve_ideal(&ring, v).unwrap()), &opts).unwrap();
        assert_eq!(hilbert_data(&img, &opts).unwrap(), g2, "{v}");
    }
}
