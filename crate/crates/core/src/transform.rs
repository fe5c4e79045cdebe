//! The order-2¹¹ group of elementary transformations acting on quadruples
//! (A;B;C;D) with |A| = |B| = m ≠ n = |C| = |D|, and the ten concrete
//! near-normal moves used to define NN-equivalence.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::codec::quad_label;
use crate::error::{Error, Result};
use crate::seq::{BinarySeq, BsQuadruple, NnQuadruple, Slot};

/// One of the eleven generators of the group.
///
/// `Negate(X)` is ε for that slot, `Reverse(X)` is φ, `SwapAB`/`SwapCD` are
/// σ₁/σ₂ and `Alternate` is ψ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Generator {
    Negate(Slot),
    Reverse(Slot),
    SwapAB,
    SwapCD,
    Alternate,
}

impl Generator {
    pub const ALL: [Generator; 11] = [
        Generator::Negate(Slot::A),
        Generator::Negate(Slot::B),
        Generator::Negate(Slot::C),
        Generator::Negate(Slot::D),
        Generator::Reverse(Slot::A),
        Generator::Reverse(Slot::B),
        Generator::Reverse(Slot::C),
        Generator::Reverse(Slot::D),
        Generator::SwapAB,
        Generator::SwapCD,
        Generator::Alternate,
    ];

    fn bit(self) -> u16 {
        match self {
            Generator::Negate(s) => 1 << s.index(),
            Generator::Reverse(s) => 1 << (4 + s.index()),
            Generator::SwapAB => 1 << 8,
            Generator::SwapCD => 1 << 9,
            Generator::Alternate => 1 << 10,
        }
    }

    /// Paper-style symbol, e.g. `ε3` or `σ1`.
    pub fn symbol(self) -> String {
        match self {
            Generator::Negate(s) => format!("ε{}", s.index() + 1),
            Generator::Reverse(s) => format!("φ{}", s.index() + 1),
            Generator::SwapAB => "σ1".into(),
            Generator::SwapCD => "σ2".into(),
            Generator::Alternate => "ψ".into(),
        }
    }

    fn act(self, q: &mut BsQuadruple) {
        let seqs = q.seqs_mut();
        match self {
            Generator::Negate(s) => seqs[s.index()] = seqs[s.index()].negate(),
            Generator::Reverse(s) => seqs[s.index()] = seqs[s.index()].reverse(),
            Generator::SwapAB => seqs.swap(0, 1),
            Generator::SwapCD => seqs.swap(2, 3),
            Generator::Alternate => {
                for s in seqs.iter_mut() {
                    *s = s.alternate();
                }
            }
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbol())
    }
}

/// A group element in normal form ε^e φ^f σ₁^s₁ σ₂^s₂ ψ^p.
///
/// Bits 0–3 hold e₁..e₄, bits 4–7 f₁..f₄, bit 8 s₁, bit 9 s₂, bit 10 p.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElem(u16);

impl GroupElem {
    pub const IDENTITY: GroupElem = GroupElem(0);
    pub const ORDER: usize = 1 << 11;

    pub fn from_bits(bits: u16) -> Option<Self> {
        (bits < (1 << 11)).then_some(Self(bits))
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }

    pub fn has(self, g: Generator) -> bool {
        self.0 & g.bit() != 0
    }

    /// Generators of the normal-form word, left to right.
    pub fn word(self) -> Vec<Generator> {
        Generator::ALL
            .into_iter()
            .filter(|&g| self.has(g))
            .collect()
    }
}

impl From<Generator> for GroupElem {
    fn from(g: Generator) -> Self {
        Self(g.bit())
    }
}

impl fmt::Debug for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElem({self})")
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("1");
        }
        for g in self.word() {
            f.write_str(&g.symbol())?;
        }
        Ok(())
    }
}

/// The group instantiated for lengths (m, n); the ψφ relations depend on the
/// parities of m and n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BsGroup {
    m: usize,
    n: usize,
}

impl BsGroup {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == n {
            return Err(Error::EqualLengths(m));
        }
        Ok(Self { m, n })
    }

    /// The group acting on quadruples shaped like `q`.
    pub fn for_quadruple(q: &BsQuadruple) -> Result<Self> {
        Self::new(q.m(), q.n())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// t x t⁻¹ for t = σ₁^s₁ σ₂^s₂ ψ^p and x in the abelian subgroup E.
    fn conjugate_abelian(&self, t: u16, x: u16) -> u16 {
        let mut neg = x & 0xF;
        let mut rev = (x >> 4) & 0xF;
        if t & 0b100 != 0 {
            // ψ φ_i ψ = ε_i^(len−1) φ_i
            let odd_m = (self.m - 1) % 2 == 1;
            let odd_n = (self.n - 1) % 2 == 1;
            let flip = (if odd_m { 0b0011 } else { 0 }) | (if odd_n { 0b1100 } else { 0 });
            neg ^= rev & flip;
        }
        let swap = |v: u16| {
            let mut v = v;
            if t & 0b001 != 0 {
                v = (v & 0b1100) | ((v & 1) << 1) | ((v >> 1) & 1);
            }
            if t & 0b010 != 0 {
                v = (v & 0b0011) | ((v & 0b0100) << 1) | ((v >> 1) & 0b0100);
            }
            v
        };
        neg = swap(neg);
        rev = swap(rev);
        neg | (rev << 4)
    }

    /// Normal form of the product g·h (h acts first).
    pub fn compose(&self, g: GroupElem, h: GroupElem) -> GroupElem {
        let (xg, tg) = (g.0 & 0xFF, g.0 >> 8);
        let (xh, th) = (h.0 & 0xFF, h.0 >> 8);
        let x = xg ^ self.conjugate_abelian(tg, xh);
        GroupElem(x | ((tg ^ th) << 8))
    }

    pub fn inverse(&self, g: GroupElem) -> GroupElem {
        // g = x t with x, t involutive-commuting parts: g⁻¹ = t x = (t x t) t
        let (x, t) = (g.0 & 0xFF, g.0 >> 8);
        GroupElem(self.conjugate_abelian(t, x) | (t << 8))
    }

    /// Product of a word written left to right (the rightmost letter acts first).
    pub fn word_product(&self, word: &[Generator]) -> GroupElem {
        word.iter()
            .fold(GroupElem::IDENTITY, |acc, &g| self.compose(acc, g.into()))
    }

    /// All 2¹¹ elements in bit order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElem> {
        (0..GroupElem::ORDER as u16).map(GroupElem)
    }

    fn check_shape(&self, q: &BsQuadruple) -> Result<()> {
        if q.m() == q.n() {
            return Err(Error::EqualLengths(q.m()));
        }
        if (q.m(), q.n()) != (self.m, self.n) {
            return Err(Error::LengthMismatch(format!(
                "group for ({}, {}) applied to quadruple of shape ({}, {})",
                self.m,
                self.n,
                q.m(),
                q.n()
            )));
        }
        Ok(())
    }

    /// g·q, applying the normal-form word right to left.
    pub fn apply(&self, g: GroupElem, q: &BsQuadruple) -> Result<BsQuadruple> {
        self.check_shape(q)?;
        let mut out = *q;
        for gen in g.word().into_iter().rev() {
            gen.act(&mut out);
        }
        Ok(out)
    }

    /// Applies a word written left to right (rightmost letter acts first).
    pub fn apply_word(&self, word: &[Generator], q: &BsQuadruple) -> Result<BsQuadruple> {
        self.check_shape(q)?;
        let mut out = *q;
        for gen in word.iter().rev() {
            gen.act(&mut out);
        }
        Ok(out)
    }

    /// Defining relations as (lhs, rhs) word pairs.
    pub fn defining_relations(&self) -> Vec<(Vec<Generator>, Vec<Generator>)> {
        use Generator::*;
        let mut rels = Vec::new();
        for g in Generator::ALL {
            rels.push((vec![g, g], vec![]));
        }
        // E is elementary abelian
        let e_gens: Vec<Generator> = Generator::ALL[..8].to_vec();
        for (i, &x) in e_gens.iter().enumerate() {
            for &y in &e_gens[i + 1..] {
                rels.push((vec![x, y], vec![y, x]));
            }
        }
        rels.push((vec![SwapAB, SwapCD], vec![SwapCD, SwapAB]));
        for s in [Slot::C, Slot::D] {
            rels.push((vec![SwapAB, Negate(s)], vec![Negate(s), SwapAB]));
            rels.push((vec![SwapAB, Reverse(s)], vec![Reverse(s), SwapAB]));
        }
        for s in [Slot::A, Slot::B] {
            rels.push((vec![SwapCD, Negate(s)], vec![Negate(s), SwapCD]));
            rels.push((vec![SwapCD, Reverse(s)], vec![Reverse(s), SwapCD]));
        }
        rels.push((vec![SwapAB, Negate(Slot::A)], vec![Negate(Slot::B), SwapAB]));
        rels.push((
            vec![SwapAB, Reverse(Slot::A)],
            vec![Reverse(Slot::B), SwapAB],
        ));
        rels.push((vec![SwapCD, Negate(Slot::C)], vec![Negate(Slot::D), SwapCD]));
        rels.push((
            vec![SwapCD, Reverse(Slot::C)],
            vec![Reverse(Slot::D), SwapCD],
        ));
        for s in Slot::ALL {
            rels.push((vec![Alternate, Negate(s)], vec![Negate(s), Alternate]));
        }
        rels.push((vec![Alternate, SwapAB], vec![SwapAB, Alternate]));
        rels.push((vec![Alternate, SwapCD], vec![SwapCD, Alternate]));
        for s in Slot::ALL {
            let len = if matches!(s, Slot::A | Slot::B) {
                self.m
            } else {
                self.n
            };
            let mut rhs = Vec::new();
            if (len - 1) % 2 == 1 {
                rhs.push(Negate(s));
            }
            rhs.extend([Reverse(s), Alternate]);
            rels.push((vec![Alternate, Reverse(s)], rhs));
        }
        rels
    }
}

/// Applies one generator; fails when m = n.
pub fn apply_generator(g: Generator, q: &BsQuadruple) -> Result<BsQuadruple> {
    if q.m() == q.n() {
        return Err(Error::EqualLengths(q.m()));
    }
    let mut out = *q;
    g.act(&mut out);
    Ok(out)
}

/// Applies `g` with the group instantiated for `q`'s shape.
pub fn apply_group_element(g: GroupElem, q: &BsQuadruple) -> Result<BsQuadruple> {
    BsGroup::for_quadruple(q)?.apply(g, q)
}

/// The ten concrete NN-elementary transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NnMove {
    NegateAB,
    NegateC,
    NegateD,
    ReverseC,
    ReverseD,
    SwapAB,
    SwapCD,
    Hat,
    Tilde,
    AlternateAll,
}

impl NnMove {
    pub const ALL: [NnMove; 10] = [
        NnMove::NegateAB,
        NnMove::NegateC,
        NnMove::NegateD,
        NnMove::ReverseC,
        NnMove::ReverseD,
        NnMove::SwapAB,
        NnMove::SwapCD,
        NnMove::Hat,
        NnMove::Tilde,
        NnMove::AlternateAll,
    ];

    /// Moves that are also elementary transformations of base sequences.
    pub const BS_COMPATIBLE: [NnMove; 8] = [
        NnMove::NegateAB,
        NnMove::NegateC,
        NnMove::NegateD,
        NnMove::ReverseC,
        NnMove::ReverseD,
        NnMove::SwapAB,
        NnMove::SwapCD,
        NnMove::AlternateAll,
    ];

    /// The group element this move realizes, or `None` for Hat and Tilde.
    pub fn group_element(self) -> Option<GroupElem> {
        use Generator::*;
        let g = match self {
            NnMove::NegateAB => {
                return Some(GroupElem(Negate(Slot::A).bit() | Negate(Slot::B).bit()))
            }
            NnMove::NegateC => Negate(Slot::C),
            NnMove::NegateD => Negate(Slot::D),
            NnMove::ReverseC => Reverse(Slot::C),
            NnMove::ReverseD => Reverse(Slot::D),
            NnMove::SwapAB => SwapAB,
            NnMove::SwapCD => SwapCD,
            NnMove::AlternateAll => Alternate,
            NnMove::Hat | NnMove::Tilde => return None,
        };
        Some(g.into())
    }
}

impl fmt::Display for NnMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Â: the entries at odd positions 1, 3, …, n−1 are reversed in place; even
/// positions and the last entry stay put. Length must be n + 1 with n even.
pub fn hat(a: BinarySeq) -> BinarySeq {
    let len = a.len();
    debug_assert!(len % 2 == 1);
    let n = len - 1;
    let mut out = a;
    // 0-based even indices 0, 2, …, n−2
    let count = n / 2;
    for k in 0..count {
        out = out.with(2 * k, a.get(n - 2 - 2 * k));
    }
    out
}

/// (C̃;D̃): swap positions i and n+1−i of both C and D at every quad whose
/// label is 4 or 5.
pub fn tilde(c: BinarySeq, d: BinarySeq) -> (BinarySeq, BinarySeq) {
    let n = c.len();
    let (mut c2, mut d2) = (c, d);
    for i in 0..n / 2 {
        if matches!(quad_label(c, d, i), Some(4 | 5)) {
            let j = n - 1 - i;
            c2 = c2.with(i, c.get(j)).with(j, c.get(i));
            d2 = d2.with(i, d.get(j)).with(j, d.get(i));
        }
    }
    (c2, d2)
}

/// Applies one NN move. Total on NN(n).
pub fn apply_nn_move(mv: NnMove, q: &NnQuadruple) -> NnQuadruple {
    let [a, b, c, d] = q.seqs();
    let seqs = match mv {
        NnMove::NegateAB => [a.negate(), b.negate(), c, d],
        NnMove::NegateC => [a, b, c.negate(), d],
        NnMove::NegateD => [a, b, c, d.negate()],
        NnMove::ReverseC => [a, b, c.reverse(), d],
        NnMove::ReverseD => [a, b, c, d.reverse()],
        NnMove::SwapAB => [b, a, c, d],
        NnMove::SwapCD => [a, b, d, c],
        NnMove::Hat => {
            let a2 = hat(a);
            [a2, a2.alpha_unchecked(), c, d]
        }
        NnMove::Tilde => {
            let (c2, d2) = tilde(c, d);
            [a, b, c2, d2]
        }
        NnMove::AlternateAll => [a.alternate(), b.alternate(), c.alternate(), d.alternate()],
    };
    NnQuadruple::new_unchecked(BsQuadruple::from_array_unchecked(seqs))
}

/// Images of `q` under all ten moves, in [`NnMove::ALL`] order.
pub fn nn_neighbors(q: &NnQuadruple) -> Vec<NnQuadruple> {
    NnMove::ALL.iter().map(|&mv| apply_nn_move(mv, q)).collect()
}

/// Which moves generate an orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveSet {
    /// The eleven group generators.
    Group,
    /// The ten NN moves (input must be near-normal).
    NearNormal,
    /// A caller-chosen subset of group generators.
    Generators(&'static [Generator]),
}

/// Breadth-first closure of `q` under the chosen moves.
pub fn orbit_bfs(
    q: &BsQuadruple,
    moves: MoveSet,
    max_size: usize,
) -> Result<BTreeSet<BsQuadruple>> {
    let gens: &[Generator] = match moves {
        MoveSet::Group => &Generator::ALL,
        MoveSet::Generators(g) => g,
        MoveSet::NearNormal => return nn_orbit(q, max_size),
    };
    if q.m() == q.n() {
        return Err(Error::EqualLengths(q.m()));
    }
    bfs(*q, max_size, |x| {
        gens.iter()
            .map(|&g| {
                let mut y = *x;
                g.act(&mut y);
                y
            })
            .collect()
    })
}

fn nn_orbit(q: &BsQuadruple, max_size: usize) -> Result<BTreeSet<BsQuadruple>> {
    let start = NnQuadruple::try_from(*q)?;
    bfs(start.into_inner(), max_size, |x| {
        nn_neighbors(&NnQuadruple::new_unchecked(*x))
            .into_iter()
            .map(NnQuadruple::into_inner)
            .collect()
    })
}

fn bfs<F>(start: BsQuadruple, max_size: usize, step: F) -> Result<BTreeSet<BsQuadruple>>
where
    F: Fn(&BsQuadruple) -> Vec<BsQuadruple>,
{
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for y in step(&x) {
            if seen.insert(y) {
                if seen.len() > max_size {
                    return Err(Error::OrbitTooLarge(max_size));
                }
                queue.push_back(y);
            }
        }
    }
    Ok(seen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{decode_nn, encode_nn, encode_pair};

    fn s(text: &str) -> BinarySeq {
        text.parse().unwrap()
    }

    fn nn(code: &str) -> NnQuadruple {
        decode_nn(&code.parse().unwrap()).unwrap()
    }

    #[test]
    fn generator_examples() {
        let q = *nn("02;1");
        let r = apply_generator(Generator::Negate(Slot::C), &q).unwrap();
        assert_eq!(r.c(), s("--"));
        assert!(r.is_base_sequences());

        let r = apply_generator(Generator::Alternate, &q).unwrap();
        assert_eq!(r.seqs(), [s("+++"), s("+--"), s("+-"), s("+-")]);

        let r = apply_generator(Generator::SwapCD, &q).unwrap();
        assert_eq!(apply_generator(Generator::SwapCD, &r).unwrap(), q);

        let square = BsQuadruple::new(s("++"), s("++"), s("+-"), s("+-")).unwrap();
        assert_eq!(
            apply_generator(Generator::SwapAB, &square),
            Err(Error::EqualLengths(2))
        );
        assert!(BsGroup::new(3, 3).is_err());
    }

    #[test]
    fn compose_examples() {
        use Generator::*;
        let g = BsGroup::new(3, 2).unwrap();
        assert_eq!(
            g.compose(SwapAB.into(), Negate(Slot::A).into()),
            g.word_product(&[Negate(Slot::B), SwapAB])
        );
        assert_eq!(
            g.compose(SwapAB.into(), Negate(Slot::A).into()).to_string(),
            "ε2σ1"
        );
        assert_eq!(
            g.compose(Alternate.into(), Reverse(Slot::C).into())
                .to_string(),
            "ε3φ3ψ"
        );
        // m − 1 = 2 even: ψ commutes with φ1
        assert_eq!(
            g.compose(Alternate.into(), Reverse(Slot::A).into())
                .to_string(),
            "φ1ψ"
        );
        for x in Generator::ALL {
            assert_eq!(g.compose(x.into(), x.into()), GroupElem::IDENTITY);
        }
    }

    #[test]
    fn compose_is_associative_with_inverses() {
        let g = BsGroup::new(5, 4).unwrap();
        let elems: Vec<_> = g.elements().step_by(37).collect();
        for &x in &elems {
            assert_eq!(g.compose(x, g.inverse(x)), GroupElem::IDENTITY);
            assert_eq!(g.compose(g.inverse(x), x), GroupElem::IDENTITY);
            for &y in &elems {
                for &z in elems.iter().step_by(5) {
                    assert_eq!(g.compose(g.compose(x, y), z), g.compose(x, g.compose(y, z)));
                }
            }
        }
    }

    #[test]
    fn group_element_examples() {
        let q = nn("050;16");
        let g = BsGroup::for_quadruple(&q).unwrap();
        assert_eq!(g.apply(GroupElem::IDENTITY, &q).unwrap(), *q);

        let both = g.word_product(&[Generator::Negate(Slot::A), Generator::Negate(Slot::B)]);
        assert!(g.apply(both, &q).unwrap().is_near_normal());

        let one = GroupElem::from(Generator::Negate(Slot::A));
        let r = g.apply(one, &q).unwrap();
        assert!(r.is_base_sequences());
        assert!(!r.is_near_normal());
    }

    #[test]
    fn hat_examples() {
        assert_eq!(hat(s("+-+")), s("+-+"));
        assert_eq!(hat(s("++-+-")), s("-+++-"));
        // n = 6: a5, a2, a3, a4, a1, a6, a7
        assert_eq!(hat(s("+---+++")), s("+---+++"));
        assert_eq!(hat(s("-+++-+-")), s("-+++-+-"));
        assert_eq!(hat(s("-++++-+")), s("++++--+"));
        let q = nn("02;1");
        assert_eq!(apply_nn_move(NnMove::Hat, &q), q);
    }

    #[test]
    fn tilde_relabels() {
        let (c, d) = crate::codec::decode_pair("1675", 8).unwrap();
        let (c2, d2) = tilde(c, d);
        assert_eq!(encode_pair(c2, d2).unwrap(), "1674");
        let (c3, d3) = tilde(c2, d2);
        assert_eq!((c3, d3), (c, d));
    }

    #[test]
    fn neighbors_n2() {
        let q = nn("02;1");
        let nb = nn_neighbors(&q);
        assert_eq!(nb.len(), 10);
        assert!(nb.iter().all(|x| x.is_near_normal()));
        assert!(nb.contains(&q));
        assert!(nb.contains(&apply_nn_move(NnMove::NegateC, &q)));
        assert_eq!(encode_nn(&q).unwrap().to_string(), "02;1");
    }

    #[test]
    fn bs_compatible_moves_match_group() {
        let q = nn("05850;1163");
        let g = BsGroup::for_quadruple(&q).unwrap();
        for mv in NnMove::BS_COMPATIBLE {
            let via_group = g.apply(mv.group_element().unwrap(), &q).unwrap();
            assert_eq!(*apply_nn_move(mv, &q), via_group, "{mv}");
        }
        assert!(NnMove::Hat.group_element().is_none());
    }

    #[test]
    fn orbit_examples() {
        let q = *nn("02;1");
        const EPS3: &[Generator] = &[Generator::Negate(Slot::C)];
        assert_eq!(
            orbit_bfs(&q, MoveSet::Generators(EPS3), 10).unwrap().len(),
            2
        );
        let orbit = orbit_bfs(&q, MoveSet::Group, 2048).unwrap();
        assert_eq!(2048 % orbit.len(), 0);
        assert!(orbit.iter().all(|x| x.is_base_sequences()));
        assert_eq!(
            orbit_bfs(&q, MoveSet::Group, 10),
            Err(Error::OrbitTooLarge(10))
        );
        let nn_orbit = orbit_bfs(&q, MoveSet::NearNormal, 2048).unwrap();
        assert!(nn_orbit.iter().all(|x| x.is_near_normal()));
    }
}
