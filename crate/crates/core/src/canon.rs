//! Canonical form of near-normal sequences within their base-sequence class.
//!
//! With p₁…p_(m+1) and q₁…q_m the AB and CD codes, a member of NN(n) is
//! canonical when
//!
//! 1. p₁ = 0 and q₁ = 1;
//! 2. every q_j = 2 has some q_i = 7 with 1 < i < j;
//! 3. every q_j ∈ {3,4,5} has some q_i = 6 with 1 < i < j;
//! 4. if no q_k = 7, every q_j = 4 has some q_i = 5 with 1 < i < j.
//!
//! Each base-sequence class meeting NN(n) holds exactly one canonical member.
//! [`canonicalize`] reaches it using NN moves that are also group moves.

use crate::codec::{quad_digits, quad_label};
use crate::error::{Error, Result};
use crate::seq::NnQuadruple;
use crate::transform::{apply_nn_move, NnMove};

/// Result of [`canonicalize`] plus the moves that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalWitness {
    pub result: NnQuadruple,
    pub moves_applied: Vec<NnMove>,
}

impl CanonicalWitness {
    /// Applies `moves_applied` to `input`, in order.
    pub fn replay(&self, input: &NnQuadruple) -> NnQuadruple {
        self.moves_applied
            .iter()
            .fold(*input, |q, &mv| apply_nn_move(mv, &q))
    }
}

/// Checks conditions 2–4 on a CD code whose first digit is already 1.
fn cd_conditions_hold(q: &[u8]) -> bool {
    let has_seven = q.contains(&7);
    let (mut seen7, mut seen6, mut seen5) = (false, false, false);
    for &d in q.iter().skip(1) {
        match d {
            2 if !seen7 => return false,
            3..=5 if !seen6 => return false,
            4 if !has_seven && !seen5 => return false,
            _ => {}
        }
        seen7 |= d == 7;
        seen6 |= d == 6;
        seen5 |= d == 5;
    }
    true
}

/// Whether `q` is in canonical form. An unlabeled first AB-quad means p₁ ≠ 0,
/// so such inputs are simply not canonical.
pub fn is_canonical(q: &NnQuadruple) -> bool {
    if quad_label(q.a(), q.b(), 0) != Some(0) {
        return false;
    }
    match quad_digits(q.c(), q.d()) {
        Ok(cd) => cd[0] == 1 && cd_conditions_hold(&cd),
        Err(_) => false,
    }
}

struct Canonicalizer {
    q: NnQuadruple,
    moves: Vec<NnMove>,
}

impl Canonicalizer {
    fn apply(&mut self, mv: NnMove) {
        self.q = apply_nn_move(mv, &self.q);
        self.moves.push(mv);
    }

    fn cd(&self) -> Result<Vec<u8>> {
        quad_digits(self.q.c(), self.q.d()).map_err(|e| {
            Error::InternalAssertion(format!("CD quads of normalized {:?}: {e}", self.q))
        })
    }

    fn run(mut self) -> Result<CanonicalWitness> {
        let n = self.q.n();

        // p₁ = 0
        if self.q.a().get(0) < 0 {
            self.apply(NnMove::NegateAB);
        }
        if self.q.a().get(n) < 0 {
            self.apply(NnMove::SwapAB);
        }
        debug_assert_eq!(quad_label(self.q.a(), self.q.b(), 0), Some(0));

        // q₁ = 1
        if self.q.c().get(0) < 0 {
            self.apply(NnMove::NegateC);
        }
        if self.q.d().get(0) < 0 {
            self.apply(NnMove::NegateD);
        }
        match quad_label(self.q.c(), self.q.d(), 0) {
            Some(1) => {}
            Some(6) => self.apply(NnMove::AlternateAll),
            other => {
                return Err(Error::InternalAssertion(format!(
                    "first CD quad {other:?} after normalizing signs"
                )))
            }
        }
        debug_assert_eq!(quad_label(self.q.a(), self.q.b(), 0), Some(0));

        // every 2 preceded by a 7: the first of {2, 7} must be 7
        let cd = self.cd()?;
        if cd.iter().find(|&&d| d == 2 || d == 7) == Some(&2) {
            self.apply(NnMove::SwapCD);
        }

        // the first of {3, 4, 5} must be preceded by a 6
        let cd = self.cd()?;
        if let Some(j) = cd.iter().position(|d| (3..=5).contains(d)) {
            if !cd[1..j].contains(&6) {
                match cd[j] {
                    3 => {
                        self.apply(NnMove::ReverseC);
                        self.apply(NnMove::ReverseD);
                    }
                    4 => self.apply(NnMove::ReverseD),
                    _ => self.apply(NnMove::ReverseC),
                }
                debug_assert_eq!(self.cd()?[..=j], {
                    let mut expect = cd[..=j].to_vec();
                    expect[j] = 6;
                    expect
                });
            }
        }

        // without 7s, the first of {4, 5} must be 5
        let cd = self.cd()?;
        if !cd.contains(&7) && cd.iter().find(|&&d| d == 4 || d == 5) == Some(&4) {
            self.apply(NnMove::SwapCD);
        }

        if !is_canonical(&self.q) {
            return Err(Error::InternalAssertion(format!(
                "canonicalization ended at non-canonical {:?}",
                self.q
            )));
        }
        Ok(CanonicalWitness {
            result: self.q,
            moves_applied: self.moves,
        })
    }
}

/// Brings `q` to the canonical member of its base-sequence class.
pub fn canonicalize(q: &NnQuadruple) -> Result<CanonicalWitness> {
    Canonicalizer {
        q: *q,
        moves: Vec::new(),
    }
    .run()
}
