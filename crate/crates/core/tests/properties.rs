//! Randomized structural invariants of the word/matrix correspondence.

use monoid_census::monoid::{
    convergents, mat_mul, matrix_to_word, word_to_matrix, CFWord, Mat2, GEN_A, GEN_B, IDENTITY,
};
use proptest::prelude::*;

fn words() -> impl Strategy<Value = CFWord> {
    proptest::collection::vec(1u64..=10, 1..=20).prop_map(|d| CFWord::new(d).unwrap())
}

/// Multiply out the letters `B^{a1} A^{a2} B^{a3} ...` one at a time.
fn letter_product(w: &CFWord) -> Mat2 {
    let mut m = IDENTITY;
    for (i, &a) in w.digits().iter().enumerate() {
        let g = if i % 2 == 0 { GEN_B } else { GEN_A };
        for _ in 0..a {
            m = mat_mul(&m, &g).unwrap();
        }
    }
    m
}

proptest! {
    #[test]
    fn factor_product_is_letter_product(w in words()) {
        let direct = letter_product(&w);
        prop_assert_eq!(word_to_matrix(&w).unwrap(), direct);
    }

    #[test]
    fn determinant_alternates_along_convergents(w in words()) {
        let t = convergents(&w).unwrap();
        // p_{n-1} q_n - p_n q_{n-1} = (-1)^n, with the n = 0 seed giving +1
        let (mut pm, mut qm) = (1i128, 0i128);
        for n in 0..t.p.len() {
            let (p, q) = (t.p[n] as i128, t.q[n] as i128);
            let expect = if n % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(pm * q - p * qm, expect, "index {}", n);
            pm = p;
            qm = q;
        }
    }

    #[test]
    fn continuants_reverse(w in words()) {
        // q_{k-1}/q_k = [0; a_k, ..., a_1]
        let t = convergents(&w).unwrap();
        let m = t.factor_matrix();
        let (mut num, mut den) = (0u64, 1u64);
        for &a in w.digits().iter() {
            // x -> 1 / (a + x) on num/den
            (num, den) = (den, a * den + num);
        }
        // value equals q_{k-1} / q_k in lowest terms; continuants are coprime
        prop_assert_eq!((num, den), (m.b, m.a));
    }

    #[test]
    fn word_matrix_round_trip(w in words()) {
        let m = word_to_matrix(&w).unwrap();
        prop_assert_eq!(matrix_to_word(&m).unwrap(), w);
    }

    #[test]
    fn distinct_words_give_distinct_matrices(w1 in words(), w2 in words()) {
        // unique factorization: the monoid on A, B is free
        let m1 = word_to_matrix(&w1).unwrap();
        let m2 = word_to_matrix(&w2).unwrap();
        prop_assert_eq!(m1 == m2, w1 == w2);
    }

    #[test]
    fn flip_swaps_letter_roles(w in words()) {
        // exchanging A and B conjugates the product by [[0,1],[1,0]]
        let mut m = IDENTITY;
        for (i, &a) in w.digits().iter().enumerate() {
            let g = if i % 2 == 0 { GEN_A } else { GEN_B };
            for _ in 0..a {
                m = mat_mul(&m, &g).unwrap();
            }
        }
        prop_assert_eq!(m, word_to_matrix(&w).unwrap().flip());
    }

    #[test]
    fn trace_never_decreases_when_appending(w in words(), extra in 1u64..=10) {
        // the pruning invariant behind the census and the enumeration
        let t_before = word_to_matrix(&w).unwrap().trace().unwrap();
        let mut digits = w.digits().to_vec();
        digits.push(extra);
        let longer = CFWord::new(digits).unwrap();
        let t_after = word_to_matrix(&longer).unwrap().trace().unwrap();
        prop_assert!(t_after >= t_before);
    }
}
