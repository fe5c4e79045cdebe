//! Exhaustive enumeration of NN(n) up to equivalence.
//!
//! The search joins the (A;B) side against the (C;D) side on autocorrelation
//! vectors: for each A and C, the D we need has N_D = −(N_A + N_B + N_C), which
//! is looked up in an index of all length-n sequences keyed by NPAF. Every hit
//! is canonicalized, giving one representative per base-sequence class. The
//! NN moves then glue base-sequence classes into NN classes.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::canon::canonicalize;
use crate::codec::{decode_nn, encode_nn, NnCode};
use crate::error::{Error, Result};
use crate::seq::{BinarySeq, BsQuadruple, NnQuadruple, NpafVector};
use crate::transform::{apply_nn_move, NnMove};

/// Largest n served by the exhaustive search.
pub const MAX_SEARCH_N: usize = 16;

fn check_search_n(n: usize) -> Result<()> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::BadOrder(n));
    }
    if n > MAX_SEARCH_N {
        return Err(Error::ResourceGuard(n));
    }
    Ok(())
}

/// Six bits per lag with a bias of 32; callers keep |v| ≤ n − 1 < 32.
type PackedKey = u128;

const LAG_BITS: u32 = 6;
const LAG_BIAS: i32 = 32;

fn pack(values: impl Iterator<Item = i32>) -> PackedKey {
    values.enumerate().fold(0, |key, (k, v)| {
        key | (((v + LAG_BIAS) as u128) << (LAG_BITS as usize * k))
    })
}

/// All length-n sequences bucketed by their NPAF vector.
#[derive(Clone, Debug)]
pub struct NpafIndex {
    n: usize,
    buckets: HashMap<PackedKey, Vec<BinarySeq>>,
}

impl NpafIndex {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of distinct NPAF vectors.
    pub fn bucket_count(&self) -> usize {
        self.buckets.len()
    }

    /// Sequences whose NPAF equals `key`; empty when there are none.
    pub fn get(&self, key: &NpafVector) -> &[BinarySeq] {
        if key.origin_len != self.n || key.values.iter().any(|v| v.abs() >= LAG_BIAS) {
            return &[];
        }
        self.get_packed(pack(key.values.iter().copied()))
    }

    fn get_packed(&self, key: PackedKey) -> &[BinarySeq] {
        self.buckets.get(&key).map_or(&[], Vec::as_slice)
    }

    /// Buckets with their keys, in no particular order.
    pub fn iter(&self) -> impl Iterator<Item = (NpafVector, &[BinarySeq])> + '_ {
        self.buckets
            .values()
            .map(|seqs| (seqs[0].npaf(), seqs.as_slice()))
    }
}

/// Builds the NPAF index over all 2ⁿ sequences of length n.
pub fn build_npaf_index(n: usize) -> Result<NpafIndex> {
    check_search_n(n)?;
    let mut buckets: HashMap<PackedKey, Vec<BinarySeq>> = HashMap::new();
    for bits in 0..(1u64 << n) {
        let s = BinarySeq::from_bits(bits, n)?;
        buckets
            .entry(pack((1..n).map(|lag| s.npaf_at(lag))))
            .or_default()
            .push(s);
    }
    Ok(NpafIndex { n, buckets })
}

fn perfect_square(v: i32) -> bool {
    if v < 0 {
        return false;
    }
    let r = (v as f64).sqrt().round() as i32;
    r * r == v
}

/// Whether `v` = x² + y² for integers x, y.
fn is_two_squares(v: i32) -> bool {
    if v < 0 {
        return false;
    }
    (0..)
        .take_while(|x| x * x <= v)
        .any(|x| perfect_square(v - x * x))
}

/// One C candidate with its precomputed data.
struct SideEntry {
    seq: BinarySeq,
    npaf: [i32; MAX_SEARCH_N],
}

/// C candidates sharing the same (sum, alternating sum).
struct SumGroup {
    sum: i32,
    alt: i32,
    entries: Vec<SideEntry>,
}

/// Fixes x₁ = x_len = +1: these positions are pinned in every canonical form.
fn pinned_ends(len: usize) -> impl Iterator<Item = u64> {
    let inner = len - 2;
    (0..(1u64 << inner)).map(|k| k << 1)
}

fn c_groups(n: usize) -> Result<Vec<SumGroup>> {
    let mut groups: HashMap<(i32, i32), Vec<SideEntry>> = HashMap::new();
    for bits in pinned_ends(n) {
        let seq = BinarySeq::from_bits(bits, n)?;
        let mut npaf = [0; MAX_SEARCH_N];
        for lag in 1..n {
            npaf[lag] = seq.npaf_at(lag);
        }
        groups
            .entry((seq.sum(), seq.alt_sum()))
            .or_default()
            .push(SideEntry { seq, npaf });
    }
    let mut out: Vec<SumGroup> = groups
        .into_iter()
        .map(|((sum, alt), entries)| SumGroup { sum, alt, entries })
        .collect();
    out.sort_by_key(|g| (g.sum, g.alt));
    Ok(out)
}

/// Canonical members of NN(n), one per base-sequence class.
///
/// Only A with a₁ = a_(n+1) = +1 and C, D with both end entries +1 are
/// scanned; the canonical member of every class has that shape, and every
/// hit is canonicalized anyway.
pub fn enumerate_bs_canonical_quadruples(n: usize) -> Result<BTreeSet<NnQuadruple>> {
    check_search_n(n)?;
    let index = build_npaf_index(n)?;
    let groups = c_groups(n)?;
    let target = 2 * (2 * n as i32 + 1);
    let d_pins = 1u64 | (1u64 << (n - 1));

    let a_bits: Vec<u64> = pinned_ends(n + 1).collect();
    let found = a_bits
        .par_iter()
        .map(|&bits| -> Result<BTreeSet<NnQuadruple>> {
            let mut hits = BTreeSet::new();
            let a = BinarySeq::from_bits(bits, n + 1)?;
            let b = a.alpha_unchecked();
            if a.npaf_at(n) + b.npaf_at(n) != 0 {
                return Ok(hits);
            }
            let rem = target - a.sum().pow(2) - b.sum().pow(2);
            let rem_alt = target - a.alt_sum().pow(2) - b.alt_sum().pow(2);
            if !is_two_squares(rem) || !is_two_squares(rem_alt) {
                return Ok(hits);
            }
            let mut need = [0i32; MAX_SEARCH_N];
            for lag in 1..n {
                need[lag] = -(a.npaf_at(lag) + b.npaf_at(lag));
            }
            for group in &groups {
                if !perfect_square(rem - group.sum * group.sum)
                    || !perfect_square(rem_alt - group.alt * group.alt)
                {
                    continue;
                }
                'c: for entry in &group.entries {
                    let mut key: PackedKey = 0;
                    for lag in 1..n {
                        let v = need[lag] - entry.npaf[lag];
                        if v.abs() > (n - lag) as i32 {
                            continue 'c;
                        }
                        key |= ((v + LAG_BIAS) as u128) << (LAG_BITS as usize * (lag - 1));
                    }
                    for &d in index.get_packed(key) {
                        if d.bits() & d_pins != 0 {
                            continue;
                        }
                        let q = NnQuadruple::new_unchecked(BsQuadruple::from_array_unchecked([
                            a, b, entry.seq, d,
                        ]));
                        hits.insert(canonicalize(&q)?.result);
                    }
                }
            }
            Ok(hits)
        })
        .try_reduce(BTreeSet::new, |mut acc, mut part| {
            if acc.len() < part.len() {
                std::mem::swap(&mut acc, &mut part);
            }
            acc.extend(part);
            Ok(acc)
        })?;
    Ok(found)
}

/// Codes of the canonical representatives of all base-sequence classes in NN(n).
pub fn enumerate_bs_canonical(n: usize) -> Result<BTreeSet<NnCode>> {
    enumerate_bs_canonical_quadruples(n)?
        .iter()
        .map(encode_nn)
        .collect()
}

/// One NN-equivalence class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassRecord {
    pub id: usize,
    /// Least member code (ab, then cd).
    pub representative: NnCode,
    /// Canonical base-sequence representatives in this class, sorted.
    pub members_bs: Vec<NnCode>,
    pub sums: [i32; 4],
    pub alt_sums: [i32; 4],
}

struct DisjointSet {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}

/// Merges canonical base-sequence representatives (all for one n) into NN
/// classes. Fails if some move image canonicalizes outside `reps`.
pub fn partition_nn(reps: &BTreeSet<NnCode>) -> Result<Vec<ClassRecord>> {
    let codes: Vec<&NnCode> = reps.iter().collect();
    if let Some(first) = codes.first() {
        if let Some(other) = codes.iter().find(|c| c.n() != first.n()) {
            return Err(Error::LengthMismatch(format!(
                "codes for n = {} and n = {} mixed",
                first.n(),
                other.n()
            )));
        }
    }
    let position: HashMap<&NnCode, usize> =
        codes.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let quads = codes
        .iter()
        .map(|c| decode_nn(c))
        .collect::<Result<Vec<_>>>()?;

    let mut sets = DisjointSet::new(codes.len());
    for (i, q) in quads.iter().enumerate() {
        for mv in NnMove::ALL {
            let image = encode_nn(&canonicalize(&apply_nn_move(mv, q))?.result)?;
            let j = *position
                .get(&image)
                .ok_or_else(|| Error::NotClosed(image.to_string()))?;
            sets.union(i, j);
        }
    }

    let mut components: HashMap<usize, Vec<usize>> = HashMap::new();
    for i in 0..codes.len() {
        components.entry(sets.find(i)).or_default().push(i);
    }
    // members come out ascending since codes are sorted
    let mut classes: Vec<Vec<usize>> = components.into_values().collect();
    classes.sort_by_key(|members| members[0]);
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(k, members)| {
            let rep = &quads[members[0]];
            ClassRecord {
                id: k + 1,
                representative: codes[members[0]].clone(),
                members_bs: members.iter().map(|&i| codes[i].clone()).collect(),
                sums: rep.sums(),
                alt_sums: rep.alt_sums(),
            }
        })
        .collect())
}

/// Base-sequence representatives merged into NN classes.
pub fn enumerate_nn_classes(n: usize) -> Result<Vec<ClassRecord>> {
    partition_nn(&enumerate_bs_canonical(n)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(text: &str) -> NnCode {
        text.parse().unwrap()
    }

    #[test]
    fn index_n2() {
        let idx = build_npaf_index(2).unwrap();
        assert_eq!(idx.bucket_count(), 2);
        let plus = NpafVector {
            values: vec![1],
            origin_len: 2,
        };
        let minus = NpafVector {
            values: vec![-1],
            origin_len: 2,
        };
        let got: BTreeSet<String> = idx.get(&plus).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, BTreeSet::from(["++".to_string(), "--".to_string()]));
        let got: BTreeSet<String> = idx.get(&minus).iter().map(|s| s.to_string()).collect();
        assert_eq!(got, BTreeSet::from(["+-".to_string(), "-+".to_string()]));
    }

    #[test]
    fn index_partitions_all_sequences() {
        for n in [4, 6, 8] {
            let idx = build_npaf_index(n).unwrap();
            let total: usize = idx.iter().map(|(_, seqs)| seqs.len()).sum();
            assert_eq!(total, 1 << n);
            let distinct: BTreeSet<_> = idx.iter().flat_map(|(_, s)| s.to_vec()).collect();
            assert_eq!(distinct.len(), 1 << n);
            for (key, seqs) in idx.iter() {
                assert!(seqs.iter().all(|s| s.npaf() == key));
                assert_eq!(idx.get(&key).len(), seqs.len());
            }
        }
    }

    #[test]
    fn resource_guard() {
        assert_eq!(build_npaf_index(3).unwrap_err(), Error::BadOrder(3));
        assert_eq!(build_npaf_index(18).unwrap_err(), Error::ResourceGuard(18));
        assert_eq!(
            enumerate_bs_canonical(0).unwrap_err(),
            Error::BadOrder(0)
        );
    }

    #[test]
    fn small_enumerations() {
        let bs2 = enumerate_bs_canonical(2).unwrap();
        assert!(bs2.contains(&code("02;1")));
        let bs4 = enumerate_bs_canonical(4).unwrap();
        assert!(bs4.contains(&code("050;16")));
        assert!(bs4.contains(&code("073;17")));
        for c in bs4.iter().chain(&bs2) {
            assert!(crate::canon::is_canonical(&decode_nn(c).unwrap()));
        }
    }

    #[test]
    fn small_partitions() {
        assert_eq!(enumerate_nn_classes(2).unwrap().len(), 1);
        let classes = enumerate_nn_classes(4).unwrap();
        assert_eq!(classes.len(), 2);
        let class_of = |c: &str| {
            classes
                .iter()
                .find(|r| r.members_bs.contains(&code(c)))
                .unwrap()
                .id
        };
        assert_ne!(class_of("050;16"), class_of("073;17"));
        assert_eq!(enumerate_nn_classes(6).unwrap().len(), 2);
    }

    #[test]
    fn partition_rejects_open_sets() {
        let classes = enumerate_nn_classes(10).unwrap();
        let big = classes.iter().find(|c| c.members_bs.len() > 1).unwrap();
        let only = BTreeSet::from([big.members_bs[0].clone()]);
        assert!(matches!(partition_nn(&only), Err(Error::NotClosed(_))));
        let mixed = BTreeSet::from([code("02;1"), code("050;16")]);
        assert!(matches!(
            partition_nn(&mixed),
            Err(Error::LengthMismatch(_))
        ));
        assert!(partition_nn(&BTreeSet::new()).unwrap().is_empty());
    }

    #[test]
    fn two_squares() {
        assert!(is_two_squares(10));
        assert!(is_two_squares(0));
        assert!(!is_two_squares(3));
        assert!(!is_two_squares(-2));
        assert!(perfect_square(49));
        assert!(!perfect_square(50));
    }
}
