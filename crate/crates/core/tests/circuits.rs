use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tritmul::gf3::TritVector;
use tritmul::polymul::{build_circuit, build_unpruned, eval_circuit, recursive_mul, schoolbook_mul, MethodExpr, Poly};

const METHODS: [&str; 5] = ["C2", "C4", "K", "KC4", "KKC4"];

fn method(name: &str) -> MethodExpr {
    MethodExpr::parse(name).unwrap()
}

fn poly(len: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(0u8..3, len).prop_map(|v| Poly::from_values(&v).unwrap())
}

#[test]
fn random_full_length_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for name in METHODS {
        let m = method(name);
        let n = m.operand_length();
        let circuit = build_circuit(&m, n).unwrap();
        for _ in 0..1000 {
            let a = Poly::from(TritVector::random_from(n, &mut rng));
            let b = Poly::from(TritVector::random_from(n, &mut rng));
            let expect = schoolbook_mul(&a, &b);
            assert_eq!(recursive_mul(&m, &a, &b).unwrap(), expect, "{name}");
            assert_eq!(eval_circuit(&circuit, &a, &b).unwrap(), expect, "{name}");
        }
    }
}

#[test]
fn multiplicative_cost_law() {
    let k = method("K");
    for inner in ["C1", "C2", "C3", "C4", "K", "KC2", "C2K"] {
        let inner = method(inner);
        let outer_muls = build_unpruned(&k).cost().mul_gates;
        let inner_muls = build_unpruned(&inner).cost().mul_gates;
        let composed = build_unpruned(&k.compose(&inner)).cost().mul_gates;
        assert_eq!(composed, outer_muls * inner_muls, "K over {inner}");
    }
    for n in 1..=6 {
        assert_eq!(build_unpruned(&MethodExpr::classical(n)).cost().mul_gates, n * n);
    }
    assert_eq!(build_unpruned(&method("KKC4")).cost().mul_gates, 3 * 3 * 16);
}

#[test]
fn pruning_is_strict_where_padding_exists() {
    let m = method("KC4");
    let pruned = build_circuit(&m, 7).unwrap().cost();
    let full = build_circuit(&m, 8).unwrap().cost();
    assert!(pruned.mul_gates < full.mul_gates);
    assert_eq!(full.mul_gates, 48);
    let kk = build_circuit(&method("KKC4"), 14).unwrap().cost();
    assert!(kk.mul_gates < 144);
}

#[test]
fn dumps_are_deterministic() {
    for name in METHODS {
        let m = method(name);
        let a = build_circuit(&m, m.operand_length()).unwrap().dump();
        let b = build_circuit(&m, m.operand_length()).unwrap().dump();
        assert_eq!(a, b);
        assert!(a.lines().skip(1).all(|l| l.starts_with('g') || l.starts_with('c')));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn pruned_matches_unpruned_on_padded_input(
        (name, len) in prop_oneof![
            Just(("KC4", 7usize)), Just(("KC4", 5)), Just(("KKC4", 14)),
            Just(("KKC4", 11)), Just(("C4", 3)), Just(("K", 1))
        ],
        seed in any::<u64>()
    ) {
        let m = method(name);
        let n = m.operand_length();
        let pruned = build_circuit(&m, len).unwrap();
        let full = build_unpruned(&m);
        let a = Poly::random(len, seed);
        let b = Poly::random(len, seed ^ 0x5555);
        let short = eval_circuit(&pruned, &a, &b).unwrap();
        let long = eval_circuit(&full, &a.resized(n), &b.resized(n)).unwrap();
        prop_assert_eq!(long.resized(2 * len - 1), short.clone());
        prop_assert!(long.coeffs().slice(2 * len - 1, 2 * n - 2 * len).is_zero());
        prop_assert_eq!(short, schoolbook_mul(&a, &b));
    }

    #[test]
    fn schoolbook_is_commutative(a in (1usize..40).prop_flat_map(poly), b in (1usize..40).prop_flat_map(poly)) {
        prop_assert_eq!(schoolbook_mul(&a, &b), schoolbook_mul(&b, &a));
    }

    #[test]
    fn method_text_round_trip(parts in prop::collection::vec(prop_oneof![Just(0usize), 1usize..5], 1..4)) {
        let text: String = parts
            .iter()
            .map(|&p| if p == 0 { "K".to_string() } else { format!("C{p}") })
            .collect();
        let m: MethodExpr = text.parse().unwrap();
        prop_assert_eq!(m.to_string(), text);
        let expected_len: usize = parts.iter().map(|&p| if p == 0 { 2 } else { p }).product();
        prop_assert_eq!(m.operand_length(), expected_len);
    }
}
