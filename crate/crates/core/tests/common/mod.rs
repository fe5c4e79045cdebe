//! Independent oracles and random generators shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nnseq::{
    apply_group_element, apply_nn_move, canonicalize, decode_nn, encode_nn, enumerate_bs_canonical,
    BinarySeq, BsGroup, BsQuadruple, GroupElem, NnCode, NnMove, NnQuadruple,
};
use rand::Rng;

/// N_X(1..ℓ−1) by direct double-loop summation over a sign vector.
pub fn npaf_oracle(x: &[i32]) -> Vec<i32> {
    (1..x.len())
        .map(|i| (0..x.len() - i).map(|j| x[j] * x[j + i]).sum())
        .collect()
}

fn signs(bits: u64, len: usize) -> Vec<i32> {
    (0..len)
        .map(|k| if bits >> k & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// Every (A;B;C;D) ∈ NN(n) with a₁ = +1, found by checking all 2^(3n) triples
/// (A, C, D) against the near-normal relation and the autocorrelation identity.
pub fn brute_force_nn_members(n: usize) -> Vec<NnQuadruple> {
    let mut found = Vec::new();
    let seqs_n: Vec<(u64, Vec<i32>, Vec<i32>)> = (0..1u64 << n)
        .map(|bits| {
            let s = signs(bits, n);
            let p = npaf_oracle(&s);
            (bits, s, p)
        })
        .collect();
    for a_bits in 0..1u64 << (n + 1) {
        let a = signs(a_bits, n + 1);
        if a[0] != 1 {
            continue;
        }
        let mut b: Vec<i32> = (0..=n)
            .map(|i| if i % 2 == 0 { a[i] } else { -a[i] })
            .collect();
        b[n] = -a[n];
        let na = npaf_oracle(&a);
        let nb = npaf_oracle(&b);
        // lag n: only A and B reach it
        if na[n - 1] + nb[n - 1] != 0 {
            continue;
        }
        for (c_bits, _, nc) in &seqs_n {
            for (d_bits, _, nd) in &seqs_n {
                if (0..n - 1).all(|k| na[k] + nb[k] + nc[k] + nd[k] == 0) {
                    let b_bits = b
                        .iter()
                        .enumerate()
                        .filter(|(_, &v)| v < 0)
                        .fold(0u64, |acc, (k, _)| acc | 1 << k);
                    let q = BsQuadruple::new(
                        BinarySeq::from_bits(a_bits, n + 1).unwrap(),
                        BinarySeq::from_bits(b_bits, n + 1).unwrap(),
                        BinarySeq::from_bits(*c_bits, n).unwrap(),
                        BinarySeq::from_bits(*d_bits, n).unwrap(),
                    )
                    .unwrap();
                    found.push(NnQuadruple::try_from(q).expect("oracle hit must validate"));
                }
            }
        }
    }
    found
}

/// Brute-force route to the canonical code set: canonicalize every member.
pub fn brute_force_canonical_codes(n: usize) -> BTreeSet<NnCode> {
    brute_force_nn_members(n)
        .iter()
        .map(|q| encode_nn(&canonicalize(q).unwrap().result).unwrap())
        .collect()
}

/// Some members of NN(n): canonical reps pushed around by random moves.
pub struct NnSampler {
    reps: Vec<(usize, Vec<NnQuadruple>)>,
}

impl NnSampler {
    pub fn new(ns: &[usize]) -> Self {
        let reps = ns
            .iter()
            .map(|&n| {
                let codes = enumerate_bs_canonical(n).unwrap();
                (n, codes.iter().map(|c| decode_nn(c).unwrap()).collect())
            })
            .collect();
        Self { reps }
    }

    /// A random member for a random n, scrambled by up to 12 random NN moves.
    pub fn sample<R: Rng>(&self, rng: &mut R) -> NnQuadruple {
        let (_, reps) = &self.reps[rng.gen_range(0..self.reps.len())];
        let mut q = reps[rng.gen_range(0..reps.len())];
        for _ in 0..rng.gen_range(0..12) {
            q = apply_nn_move(NnMove::ALL[rng.gen_range(0..10)], &q);
        }
        q
    }

    /// A base-sequence member of BS(n+1, n) that need not be near-normal.
    pub fn sample_bs<R: Rng>(&self, rng: &mut R) -> BsQuadruple {
        let q = self.sample(rng);
        let g = GroupElem::from_bits(rng.gen_range(0..2048)).unwrap();
        apply_group_element(g, &q).unwrap()
    }
}

pub fn random_seq<R: Rng>(rng: &mut R, len: usize) -> BinarySeq {
    let bits = if len == 64 {
        rng.gen()
    } else {
        rng.gen_range(0..1u64 << len)
    };
    BinarySeq::from_bits(bits, len).unwrap()
}

/// Arbitrary quadruple of shape (n+1, n), not necessarily base sequences.
pub fn random_quadruple<R: Rng>(rng: &mut R, n: usize) -> BsQuadruple {
    BsQuadruple::new(
        random_seq(rng, n + 1),
        random_seq(rng, n + 1),
        random_seq(rng, n),
        random_seq(rng, n),
    )
    .unwrap()
}

/// Canonical members of G·q ∩ NN(n), found by applying all 2¹¹ elements.
pub fn canonical_members_of_orbit(q: &BsQuadruple) -> BTreeSet<NnQuadruple> {
    let g = BsGroup::for_quadruple(q).unwrap();
    g.elements()
        .filter_map(|e| NnQuadruple::try_from(g.apply(e, q).unwrap()).ok())
        .filter(nnseq::is_canonical)
        .collect()
}
