use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tritmul::field397::{F97Element, DEGREE};
use tritmul::lfsr::{cycles_for, table_method, LfsrConfig, TABLE_DIGITS};
use tritmul::polymul::MethodExpr;
use tritmul::Error;

/// Digit `j` of `b` counted from the most significant end of the padded
/// register, as a field element.
fn digit_of(b: &F97Element, digit: usize, j: usize) -> F97Element {
    let len = cycles_for(digit) * digit;
    let padded = b.coeffs().resized(len);
    let start = len - (j + 1) * digit;
    F97Element::from_coeffs(padded.slice(start, digit).resized(DEGREE)).unwrap()
}

#[test]
fn intermediate_accumulator_matches_straight_line() {
    let mut rng = ChaCha8Rng::seed_from_u64(97);
    for d in [1, 2, 3, 4, 7, 14, 20, 48, 97] {
        let cfg = LfsrConfig::with_table_method(d).unwrap();
        for _ in 0..5 {
            let a = F97Element::random_from(&mut rng);
            let b = F97Element::random_from(&mut rng);
            let mut state = cfg.load(&a, &b);
            let mut k = 0;
            while !state.is_finished() {
                assert_eq!(state.msd(), digit_of(&b, d, k).coeffs().resized(d));
                state.step().unwrap();
                k += 1;
                let mut expect = F97Element::zero();
                for j in 0..k {
                    let shift = F97Element::monomial(d * (k - 1 - j));
                    expect += &(&(&digit_of(&b, d, j) * &a) * &shift);
                }
                assert_eq!(state.acc(), &expect, "D={d} after {k} steps");
            }
            assert_eq!(state.acc(), &(&a * &b));
            assert_eq!(state.step(), Err(Error::Finished { cycles: k }));
        }
    }
}

#[test]
fn every_digit_size_multiplies_correctly() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 1..=DEGREE {
        let cfg = LfsrConfig::with_table_method(d).unwrap();
        let a = F97Element::random_from(&mut rng);
        let b = F97Element::random_from(&mut rng);
        let (r, cycles) = cfg.run(&a, &b);
        assert_eq!(cycles, DEGREE.div_ceil(d), "D={d}");
        assert_eq!(r, &a * &b, "D={d}");
    }
}

#[test]
fn alternative_digit_multipliers_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = F97Element::random_from(&mut rng);
    let b = F97Element::random_from(&mut rng);
    for (d, m) in [(7, "C7"), (7, "C2C4"), (4, "KC2"), (14, "KC2KC2"), (2, "K")] {
        let cfg = LfsrConfig::new(d, m.parse::<MethodExpr>().unwrap()).unwrap();
        assert_eq!(cfg.run(&a, &b).0, &a * &b, "{d} {m}");
    }
}

#[test]
fn invalid_configurations_are_rejected() {
    assert_eq!(LfsrConfig::with_table_method(0).unwrap_err(), Error::DigitSize(0));
    assert_eq!(LfsrConfig::with_table_method(98).unwrap_err(), Error::DigitSize(98));
    assert!(matches!(
        LfsrConfig::new(7, MethodExpr::classical(4)),
        Err(Error::UnsupportedLength { .. })
    ));
}

#[test]
fn table_costs_follow_trend() {
    let costs: Vec<_> = TABLE_DIGITS
        .iter()
        .map(|&d| LfsrConfig::new(d, table_method(d)).unwrap().cost_report())
        .collect();
    let muls: Vec<_> = costs.iter().map(|c| c.mul_gates).collect();
    assert_eq!(muls, [97, 196, 400, 574, 924]);
    assert_eq!(costs[0].digit_cost.mul_gates, 1);
    for w in costs.windows(2) {
        assert!(w[0].cycles > w[1].cycles);
        assert!(w[0].mul_gates < w[1].mul_gates);
    }
}
