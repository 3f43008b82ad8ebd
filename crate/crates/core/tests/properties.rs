use gkloc::cohind::{build_standard_complex, derived_i, derived_p, dual_window, euler_characteristic};
use gkloc::harness::{input_module, run_case, VerificationCase};
use gkloc::{Family, FactorKind, PairData, Window};
use proptest::prelude::*;

fn family(code: u8) -> Family {
    match code {
        0 => Family::closed_orbit(),
        1 => Family::open_orbit(),
        _ => Family::BorelWeilBott,
    }
}

fn window_for(f: &Family, half: i64) -> Window {
    match f {
        Family::BorelWeilBott => Window::new(vec![(0, half)]).unwrap(),
        _ => Window::new(vec![(-half, half)]).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn reports_are_deterministic(code in 0u8..3, l in -6i64..4, p in 0u8..2) {
        let f = family(code);
        let parity = if code == 1 { vec![p] } else { vec![] };
        let c = VerificationCase::new(f.clone(), vec![l], parity, window_for(&f, 6)).unwrap();
        let a = run_case(&c).unwrap();
        prop_assert!(a.is_match());
        prop_assert_eq!(a.to_json(), run_case(&c).unwrap().to_json());
    }

    #[test]
    fn enlarging_the_window_keeps_multiplicities(code in 0u8..3, l in -6i64..4, extra in 1i64..4) {
        let f = family(code);
        let parity = if code == 1 { vec![1] } else { vec![] };
        let small = window_for(&f, 5);
        let big = window_for(&f, 5 + 2 * extra);
        let pair = PairData::new(f.clone()).unwrap();
        let v = input_module(&pair, &[l], &parity).unwrap();
        for j in 0..=1 {
            let a = derived_p(&pair, &v, j, &small).unwrap();
            let b = derived_p(&pair, &v, j, &big).unwrap().restrict(&small);
            prop_assert_eq!(a.first_difference(&b), None);
        }
    }

    #[test]
    fn euler_characteristics_agree(l1 in -4i64..3, l2 in -4i64..3, open in any::<bool>()) {
        let second = if open { FactorKind::OpenOne } else { FactorKind::ClosedZero };
        let pair = PairData::new(Family::product(vec![FactorKind::ClosedZero, second])).unwrap();
        let parity = if open { vec![0, 1] } else { vec![] };
        let v = input_module(&pair, &[l1, l2], &parity).unwrap();
        let cx = build_standard_complex(&pair, &v, &Window::cube(2, -3, 3).unwrap()).unwrap();
        prop_assert!(cx.check_d_squared().is_ok());
        prop_assert!(euler_characteristic(&cx).is_ok());
    }

    #[test]
    fn coinduction_is_dual_to_induction(code in 0u8..2, l in -6i64..6, p in 0u8..2, j in 0usize..3) {
        let f = family(code);
        let pair = PairData::new(f.clone()).unwrap();
        let parity = if code == 1 { vec![p] } else { vec![] };
        let v = input_module(&pair, &[l], &parity).unwrap();
        let win = window_for(&f, 6);
        let lhs = derived_i(&pair, &v.dual(), j, &dual_window(&pair, &win)).unwrap();
        let rhs = derived_p(&pair, &v, j, &win).unwrap().negate_weights();
        prop_assert_eq!(lhs.first_difference(&rhs), None);
    }
}
