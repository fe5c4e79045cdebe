mod common;

use std::sync::OnceLock;

use nnseq::codec::{decode_pair, encode_pair};
use nnseq::transform::{hat, tilde};
use nnseq::{
    apply_generator, apply_nn_move, canonicalize, decode_nn, encode_nn, is_canonical, BinarySeq,
    BsGroup, Generator, GroupElem, NnMove, NnQuadruple,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use common::{npaf_oracle, random_quadruple, NnSampler};

fn sampler() -> &'static NnSampler {
    static SAMPLER: OnceLock<NnSampler> = OnceLock::new();
    SAMPLER.get_or_init(|| NnSampler::new(&[2, 4, 6, 8, 10]))
}

fn seq_strategy(max_len: usize) -> impl Strategy<Value = BinarySeq> {
    (1..=max_len).prop_flat_map(|len| {
        (0..(1u64 << len)).prop_map(move |bits| BinarySeq::from_bits(bits, len).unwrap())
    })
}

fn odd_seq_strategy() -> impl Strategy<Value = BinarySeq> {
    (1..=17usize).prop_flat_map(|k| {
        let len = 2 * k + 1;
        (0..(1u64 << len)).prop_map(move |bits| BinarySeq::from_bits(bits, len).unwrap())
    })
}

fn nn_strategy() -> impl Strategy<Value = NnQuadruple> {
    any::<u64>().prop_map(|seed| sampler().sample(&mut StdRng::seed_from_u64(seed)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn npaf_bounds_parity_and_oracle(x in seq_strategy(35)) {
        let v = x.npaf();
        prop_assert!(v.is_consistent());
        prop_assert_eq!(v.values, npaf_oracle(&x.signs()));
    }

    #[test]
    fn npaf_invariant_under_negation_and_reversal(x in seq_strategy(35)) {
        prop_assert_eq!(x.negate().npaf(), x.npaf());
        prop_assert_eq!(x.reverse().npaf(), x.npaf());
    }

    #[test]
    fn alternation_sign_rule(x in seq_strategy(35)) {
        let plain = x.npaf();
        let alt = x.alternate().npaf();
        for (i, (&p, &a)) in plain.values.iter().zip(&alt.values).enumerate() {
            let lag = i + 1;
            prop_assert_eq!(a, if lag % 2 == 0 { p } else { -p });
        }
    }

    #[test]
    fn alpha_is_an_involution(a in odd_seq_strategy()) {
        prop_assert_eq!(a.alpha().unwrap().alpha().unwrap(), a);
    }

    #[test]
    fn pair_codec_round_trip(x in seq_strategy(20), seed in any::<u64>()) {
        let y = common::random_seq(&mut StdRng::seed_from_u64(seed), x.len());
        if let Ok(code) = encode_pair(x, y) {
            prop_assert_eq!(decode_pair(&code, x.len()).unwrap(), (x, y));
        }
    }

    #[test]
    fn group_relations_hold(n in (1..=4usize).prop_map(|k| 2 * k), seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = random_quadruple(&mut rng, n);
        let g = BsGroup::for_quadruple(&q).unwrap();
        for (lhs, rhs) in g.defining_relations() {
            prop_assert_eq!(g.apply_word(&lhs, &q).unwrap(), g.apply_word(&rhs, &q).unwrap());
            prop_assert_eq!(g.word_product(&lhs), g.word_product(&rhs));
        }
    }

    #[test]
    fn action_is_functorial(n in 1..=9usize, g_bits in 0..2048u16, h_bits in 0..2048u16, seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let q = random_quadruple(&mut rng, n);
        let group = BsGroup::for_quadruple(&q).unwrap();
        let (g, h) = (GroupElem::from_bits(g_bits).unwrap(), GroupElem::from_bits(h_bits).unwrap());
        prop_assert_eq!(
            group.apply(group.compose(g, h), &q).unwrap(),
            group.apply(g, &group.apply(h, &q).unwrap()).unwrap()
        );
    }

    #[test]
    fn generators_preserve_base_sequences(seed in any::<u64>()) {
        let q = sampler().sample_bs(&mut StdRng::seed_from_u64(seed));
        prop_assert!(q.is_base_sequences());
        for gen in Generator::ALL {
            prop_assert!(apply_generator(gen, &q).unwrap().is_base_sequences());
        }
    }

    #[test]
    fn nn_moves_preserve_near_normality(q in nn_strategy()) {
        for mv in NnMove::ALL {
            let r = apply_nn_move(mv, &q);
            prop_assert!(r.is_near_normal(), "{mv} broke {q:?}");
        }
    }

    #[test]
    fn hat_and_tilde_preserve_pair_norms(q in nn_strategy()) {
        let a2 = hat(q.a());
        let b2 = a2.alpha().unwrap();
        for lag in 1..=q.n() {
            prop_assert_eq!(
                a2.npaf_at(lag) + b2.npaf_at(lag),
                q.a().npaf_at(lag) + q.b().npaf_at(lag)
            );
        }
        let (c2, d2) = tilde(q.c(), q.d());
        for lag in 1..q.n() {
            prop_assert_eq!(
                c2.npaf_at(lag) + d2.npaf_at(lag),
                q.c().npaf_at(lag) + q.d().npaf_at(lag)
            );
        }
    }

    #[test]
    fn canonicalize_is_idempotent_and_replayable(q in nn_strategy()) {
        let w = canonicalize(&q).unwrap();
        prop_assert!(is_canonical(&w.result));
        prop_assert_eq!(w.replay(&q), w.result);
        let again = canonicalize(&w.result).unwrap();
        prop_assert_eq!(again.result, w.result);
        prop_assert!(again.moves_applied.is_empty());
    }

    #[test]
    fn canonicalize_ignores_bs_compatible_moves(q in nn_strategy(), moves in prop::collection::vec(0..8usize, 0..10)) {
        let base = canonicalize(&q).unwrap().result;
        let moved = moves
            .iter()
            .fold(q, |acc, &k| apply_nn_move(NnMove::BS_COMPATIBLE[k], &acc));
        prop_assert_eq!(canonicalize(&moved).unwrap().result, base);
    }

    #[test]
    fn sums_of_squares_identity(seed in any::<u64>()) {
        let q = sampler().sample_bs(&mut StdRng::seed_from_u64(seed));
        let target = 2 * (q.m() + q.n()) as i32;
        prop_assert_eq!(q.sums().iter().map(|s| s * s).sum::<i32>(), target);
        prop_assert_eq!(q.alt_sums().iter().map(|s| s * s).sum::<i32>(), target);
    }

    #[test]
    fn middle_entries_follow_half_parity(q in nn_strategy()) {
        let half = q.n() / 2;
        let (a, b) = (q.a().get(half), q.b().get(half));
        prop_assert_eq!(a == b, half % 2 == 0);
    }
}

#[test]
fn canonical_codes_respect_ab_digit_pattern() {
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..300 {
        let q = canonicalize(&sampler().sample(&mut rng)).unwrap().result;
        let code = encode_nn(&q).unwrap();
        let digits: Vec<u8> = code.ab_digits().collect();
        let half = q.n() / 2;
        assert_eq!(digits[0], 0);
        for (k, &d) in digits[..half].iter().enumerate().skip(1) {
            let position = k + 1;
            let allowed: &[u8] = if position % 2 == 0 {
                &[2, 4, 5, 7]
            } else {
                &[1, 3, 6, 8]
            };
            assert!(allowed.contains(&d), "{code}: digit {d} at {position}");
        }
        let central: &[u8] = if half % 2 == 0 { &[0, 3] } else { &[1, 2] };
        assert!(central.contains(&digits[half]), "{code}");
        assert_eq!(decode_nn(&code).unwrap(), q);
    }
}

#[test]
fn induced_label_actions() {
    // σ₂ acts on CD quad labels as (2 7)(4 5), φ₃ as (3 4)(5 6), φ₄ as (3 5)(4 6)
    let cases: [(Generator, [u8; 9]); 3] = [
        (Generator::SwapCD, [0, 1, 7, 3, 5, 4, 6, 2, 8]),
        (
            Generator::Reverse(nnseq::Slot::C),
            [0, 1, 2, 4, 3, 6, 5, 7, 8],
        ),
        (
            Generator::Reverse(nnseq::Slot::D),
            [0, 1, 2, 5, 6, 3, 4, 7, 8],
        ),
    ];
    for (gen, perm) in cases {
        for label in 1..=8u8 {
            let (c, d) = decode_pair(&format!("1{label}"), 4).unwrap();
            let q =
                nnseq::BsQuadruple::new("+++++".parse().unwrap(), "+++++".parse().unwrap(), c, d)
                    .unwrap();
            let r = apply_generator(gen, &q).unwrap();
            let digits = encode_pair(r.c(), r.d()).unwrap();
            assert_eq!(
                digits.as_bytes()[1] - b'0',
                perm[label as usize],
                "{gen} on label {label}"
            );
        }
    }
}

#[test]
fn table_codes_round_trip() {
    for row in nnseq::table1_rows(None).unwrap() {
        let code = row.code().unwrap();
        let q = decode_nn(&code).unwrap();
        assert_eq!(encode_nn(&q).unwrap(), code);
        let ab = encode_pair(q.a(), q.b()).unwrap();
        assert_eq!(ab, row.ab_code);
        assert_eq!(decode_pair(&row.cd_code, q.n()).unwrap(), (q.c(), q.d()));
    }
}
