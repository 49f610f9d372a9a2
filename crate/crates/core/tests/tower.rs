use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tritmul::field397::F97Element;
use tritmul::pipeline::{build_schedule, Schedule};
use tritmul::tower::{
    appendix_combine, appendix_products, conjugate_check, evaluate_points, fp2_mul, fp2_mul_by_s, fp6_mul_15,
    fp6_mul_18, fp6_mul_appendix, fp6_mul_schoolbook, fp6_mul_schoolbook_flat, interpolate, Fp2Element, Fp6Element,
    MulCounter, APPENDIX_OUTPUTS, F9,
};
use tritmul::Error;

fn fp6() -> impl Strategy<Value = Fp6Element> {
    any::<u64>().prop_map(|seed| Fp6Element::random_from(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn fp2() -> impl Strategy<Value = Fp2Element> {
    any::<u64>().prop_map(|seed| Fp2Element::random_from(&mut ChaCha8Rng::seed_from_u64(seed)))
}

/// The output table as it is usually printed, with the two sign slips.
fn printed_outputs() -> [[F9; 15]; 6] {
    let mut t = APPENDIX_OUTPUTS;
    t[1][12] = t[1][12].neg();
    t[5][0] = t[5][0].neg();
    t
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn all_paths_agree_with_exact_counts(a in fp6(), b in fp6()) {
        let mut flat = MulCounter::new();
        let mut nested = MulCounter::new();
        let mut k18 = MulCounter::new();
        let mut k15 = MulCounter::new();
        let oracle = fp6_mul_schoolbook_flat(&a, &b, &mut flat);
        prop_assert_eq!(fp6_mul_schoolbook(&a, &b, &mut nested), oracle.clone());
        prop_assert_eq!(fp6_mul_18(&a, &b, &mut k18), oracle.clone());
        let (r15, trace) = fp6_mul_15(&a, &b, &mut k15);
        prop_assert_eq!(r15, oracle.clone());
        prop_assert_eq!(
            (flat.base_muls(), nested.base_muls(), k18.base_muls(), k15.base_muls()),
            (36, 27, 18, 15)
        );
        prop_assert_eq!(trace.products.len(), 15);
        prop_assert!(trace.products.iter().all(Fp2Element::is_real));

        let (ra, atrace) = fp6_mul_appendix(&a, &b).unwrap();
        prop_assert_eq!(ra, oracle);
        prop_assert!(conjugate_check(&atrace));
        prop_assert_eq!(atrace.coefficients, trace.coefficients);
    }

    #[test]
    fn multiplication_ring_laws(a in fp6(), b in fp6(), c in fp6()) {
        let mul = |x: &Fp6Element, y: &Fp6Element| fp6_mul_15(x, y, &mut MulCounter::new()).0;
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &(&b + &c)), &mul(&a, &b) + &mul(&a, &c));
        prop_assert_eq!(mul(&a, &Fp6Element::one()), a);
    }

    #[test]
    fn mul_by_s_is_free(a in fp2()) {
        let mut ctr = MulCounter::new();
        prop_assert_eq!(fp2_mul_by_s(&a), fp2_mul(&a, &Fp2Element::s(), &mut ctr));
        prop_assert_eq!(ctr.base_muls(), 3);
        prop_assert_eq!(fp2_mul_by_s(&fp2_mul_by_s(&a)), -&a);
    }

    #[test]
    fn five_point_round_trip(a in prop::array::uniform3(fp2()), b in prop::array::uniform3(fp2())) {
        let mut expect: [Fp2Element; 5] = std::array::from_fn(|_| Fp2Element::zero());
        for i in 0..3 {
            for j in 0..3 {
                expect[i + j] += &(&a[i] * &b[j]);
            }
        }
        let (ea, eb) = (evaluate_points(&a), evaluate_points(&b));
        let q: [Fp2Element; 5] = std::array::from_fn(|k| &ea[k] * &eb[k]);
        prop_assert_eq!(interpolate(&q), expect);
    }

    #[test]
    fn pipeline_matches_fifteen_mult_path(a in fp6(), b in fp6()) {
        let run = build_schedule().execute(&a, &b);
        prop_assert_eq!(run.result, fp6_mul_15(&a, &b, &mut MulCounter::new()).0);
        prop_assert_eq!(run.slots, 17);
        prop_assert_eq!(run.base_muls, 15);
    }

    #[test]
    fn text_round_trip(a in fp6()) {
        let text = a.to_string();
        prop_assert_eq!(text.split(':').count(), 6);
        prop_assert_eq!(text.parse::<Fp6Element>().unwrap(), a);
    }
}

#[test]
fn printed_table_fails_exactly_in_c1_and_c5() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bad_rows = std::collections::BTreeSet::new();
    for _ in 0..50 {
        let a = Fp6Element::random_from(&mut rng);
        let b = Fp6Element::random_from(&mut rng);
        let expect = fp6_mul_schoolbook_flat(&a, &b, &mut MulCounter::new()).to_flat();
        let products = appendix_products(&a, &b);
        match appendix_combine(&products, &printed_outputs()) {
            Ok(flat) => {
                for (i, (x, y)) in flat.iter().zip(&expect).enumerate() {
                    if x != y {
                        bad_rows.insert(i);
                    }
                }
            }
            Err(Error::FormulaDiscrepancy { index, .. }) => {
                bad_rows.insert(index);
            }
            Err(e) => panic!("{e}"),
        }
        let fixed = appendix_combine(&products, &APPENDIX_OUTPUTS).unwrap();
        assert_eq!(fixed, expect);
    }
    assert_eq!(bad_rows.into_iter().collect::<Vec<_>>(), [1, 5]);
}

#[test]
fn flat_view_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let flat: [F97Element; 6] = std::array::from_fn(|_| F97Element::random_from(&mut rng));
    let e = Fp6Element::from_flat(flat.clone());
    assert_eq!(e.c[1].c0, flat[2]);
    assert_eq!(e.c[1].c1, flat[3]);
    assert_eq!(e.to_flat(), flat);
}

#[test]
fn rotated_schedule_gives_same_result() {
    let s = build_schedule();
    let mut jobs = s.jobs().to_vec();
    jobs.rotate_left(7);
    let rotated = Schedule::from_jobs(jobs);
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let a = Fp6Element::random_from(&mut rng);
        let b = Fp6Element::random_from(&mut rng);
        let run = rotated.execute(&a, &b);
        assert_eq!(run.result, fp6_mul_schoolbook_flat(&a, &b, &mut MulCounter::new()));
        for &(slot, job, _) in &run.writes {
            assert_eq!(slot, job + 2);
        }
    }
}

#[test]
fn schedule_scalars_are_nonzero_f9() {
    for job in build_schedule().jobs() {
        assert!(!job.accum.is_empty());
        for &(acc, k) in &job.accum {
            assert!(acc < 3);
            assert!(!k.is_zero());
        }
    }
}
