use g2degen::exterior::{bivector_scan, bivector_square_ideal, BivectorMode};
use g2degen::groebner::{radical_membership, GbOptions};
use g2degen::parse_polynomial;

#[test]
fn solutions_are_the_coordinate_axes() {
    for q in [3, 5, 7] {
        for mode in [BivectorMode::Chain, BivectorMode::Concurrent] {
            let scan = bivector_scan(mode, q).unwrap();
            assert_eq!(scan.solutions.len(), 4 * (q as usize - 1), "{mode:?} over F_{q}");
            assert!(scan.all_single_coordinate);
        }
    }
}

#[test]
fn products_of_coefficients_lie_in_the_radical() {
    let opts = GbOptions::default();
    for mode in [BivectorMode::Chain, BivectorMode::Concurrent] {
        let ideal = bivector_square_ideal(mode).unwrap();
        let r = ideal.ring().clone();
        for p in ["a*b", "a*c", "a*d", "b*c", "b*d", "c*d"] {
            assert!(radical_membership(&parse_polynomial(p, &r).unwrap(), &ideal, &opts).unwrap(), "{p}");
        }
        assert!(!radical_membership(&parse_polynomial("a", &r).unwrap(), &ideal, &opts).unwrap());
    }
}
