use std::sync::Arc;

use braidcat::braid::{is_pure, symmetric_image, BraidWord, PiAction};
use braidcat::group::FiniteGroup;
use braidcat::rep::{evaluate_word, Matrix, RepSpec};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn word(strands: usize, len: usize, seed: u64) -> BraidWord {
    BraidWord::random(strands, len, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn gens(json: &str) -> Vec<Matrix> {
    serde_json::from_str::<RepSpec>(json).unwrap().build().unwrap().generators
}

fn product(a: &Matrix, b: &Matrix) -> Matrix {
    match (a, b) {
        (Matrix::Monomial(x), Matrix::Monomial(y)) => Matrix::Monomial(x.mul(y)),
        _ => {
            let n = a.conductor().max(b.conductor());
            Matrix::Dense(a.to_dense(n).unwrap().mul(&b.to_dense(n).unwrap()))
        }
    }
}

#[test]
fn far_generators_commute_as_permutations() {
    let pi = PiAction::new(Arc::new(FiniteGroup::cyclic(2).unwrap()), 4).unwrap();
    let s1 = pi.pi_sigma(1, 1000).unwrap();
    let s3 = pi.pi_sigma(3, 1000).unwrap();
    assert_eq!(s1.compose(&s3), s3.compose(&s1));
    let s2 = pi.pi_sigma(2, 1000).unwrap();
    assert_eq!(s2.compose(&s3).compose(&s2), s3.compose(&s2).compose(&s3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pi_action_is_a_left_action(a in 0u64..1000, b in 0u64..1000, la in 0usize..8, lb in 0usize..8) {
        let g = Arc::new(FiniteGroup::symmetric(3).unwrap());
        let pi = PiAction::new(g, 3).unwrap();
        let (u, v) = (word(3, la, a), word(3, lb, b));
        let uv = u.concat(&v).unwrap();
        for p in [0usize, 17, 101, 5000, 46655] {
            let mut direct = pi.decode(p);
            pi.apply_word(&uv, &mut direct);
            let mut stepwise = pi.decode(p);
            pi.apply_word(&v, &mut stepwise);
            pi.apply_word(&u, &mut stepwise);
            prop_assert_eq!(direct, stepwise);
        }
    }

    #[test]
    fn kernel_words_are_pure(seed in 0u64..10_000, len in 0usize..12) {
        let pi = PiAction::new(Arc::new(FiniteGroup::cyclic(2).unwrap()), 3).unwrap();
        let w = word(3, len, seed);
        if pi.in_kernel(&w, 1000).unwrap() {
            prop_assert!(is_pure(&w));
        }
        prop_assert_eq!(symmetric_image(&w.concat(&w.inverse()).unwrap()), (0..3).collect::<Vec<_>>());
    }

    #[test]
    fn word_evaluation_is_a_homomorphism(a in 0u64..1000, b in 0u64..1000, la in 0usize..6, lb in 0usize..6) {
        for json in [
            r#"{"family":"double","group":{"kind":"symmetric","k":3},"alpha":{},"x":3,"n":3}"#,
            r#"{"family":"pointed","A":[3],"gram":[["z3"]],"n":3}"#,
            r#"{"family":"ty","A":[2],"q":["1","i"],"m":1}"#,
        ] {
            let g = gens(json);
            let (u, v) = (word(3, la, a), word(3, lb, b));
            let uv = evaluate_word(&g, &u.concat(&v).unwrap()).unwrap();
            let split = product(&evaluate_word(&g, &u).unwrap(), &evaluate_word(&g, &v).unwrap());
            prop_assert!(uv.same_values(&split), "{}", json);
            let cancel = evaluate_word(&g, &u.concat(&u.inverse()).unwrap()).unwrap();
            prop_assert!(cancel.is_identity());
        }
    }
}
