//! Integer partitions and Young-diagram geometry.
//!
//! Every basis in this crate (power sums, monomials, Jack functions, Fock
//! vectors, instanton tuples) is indexed by partitions, so this module is the
//! substrate for everything else. Boxes use matrix coordinates: the row index
//! `i` grows downwards, the column index `j` grows rightwards, both 1-based.

use std::cmp::Ordering;
use std::fmt;

use num::BigInt;
use serde::{Deserialize, Serialize};

/// A weakly decreasing sequence of positive integers. The empty partition is
/// the unique partition of 0.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Creates a partition. Panics unless the parts are weakly decreasing and
    /// positive; use this for trusted (programmatic) input.
    pub fn new(parts: Vec<u32>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0),
            "partition parts must be weakly decreasing and positive: {parts:?}"
        );
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// |λ|, the number being partitioned.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    /// ℓ(λ), the number of parts.
    pub fn length(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// The part λ_i with 1-based `i`, taken as 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Multiplicity m_v(λ) = #{i : λ_i = v}.
    pub fn multiplicity(&self, v: u32) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    /// The conjugate (transposed diagram) partition λ′.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0) as usize;
        let mut parts = Vec::with_capacity(cols);
        for j in 1..=cols {
            parts.push(self.parts.iter().filter(|&&p| p >= j as u32).count() as u32);
        }
        Partition { parts }
    }

    /// Whether the box (i, j) lies in the diagram (1-based coordinates).
    pub fn contains_box(&self, i: usize, j: usize) -> bool {
        assert!(i >= 1 && j >= 1);
        i <= self.length() && j as u32 <= self.parts[i - 1]
    }

    /// Arm a_λ(i,j) = λ_i − j and leg ℓ_λ(i,j) = λ′_j − i for an arbitrary
    /// box, with λ_i and λ′_j taken as 0 outside the diagram. Either value
    /// may be negative; the instanton factors rely on that.
    pub fn arm_leg(&self, i: usize, j: usize) -> (i64, i64) {
        assert!(i >= 1 && j >= 1);
        let row = self.part(i) as i64;
        let col = self.parts.iter().filter(|&&p| p >= j as u32).count() as i64;
        (row - j as i64, col - i as i64)
    }

    /// Boxes of the diagram, row-major.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.parts
            .iter()
            .enumerate()
            .flat_map(|(i, &p)| (1..=p as usize).map(move |j| (i + 1, j)))
    }

    /// The corner set C(λ): boxes whose removal leaves a partition, as
    /// (row, column) pairs in increasing row order.
    pub fn removable_corners(&self) -> Vec<(usize, usize)> {
        let mut corners = Vec::new();
        for i in 0..self.parts.len() {
            let below = self.parts.get(i + 1).copied().unwrap_or(0);
            if self.parts[i] > below {
                corners.push((i + 1, self.parts[i] as usize));
            }
        }
        corners
    }

    /// z_λ = Π_v v^{m_v} m_v!, the power-sum symmetrizer order.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::from(1u32);
        let mut v = 0;
        let mut mult = 0u32;
        for &p in self.parts.iter().chain(std::iter::once(&0)) {
            if p == v {
                mult += 1;
            } else {
                for k in 1..=mult {
                    z *= BigInt::from(v) * BigInt::from(k);
                }
                v = p;
                mult = 1;
            }
        }
        z
    }

    /// Diagram containment μ ⊆ λ.
    pub fn contains(&self, other: &Partition) -> bool {
        other
            .parts
            .iter()
            .enumerate()
            .all(|(i, &p)| self.part(i + 1) >= p)
    }

    /// All partitions μ with |μ| = |λ| − k and μ ⊆ λ (the relation μ <_k λ).
    pub fn shrink_by(&self, k: u32) -> Vec<Partition> {
        let n = self.size();
        if n < k {
            return Vec::new();
        }
        partitions_of(n - k)
            .into_iter()
            .filter(|mu| self.contains(mu))
            .collect()
    }

    /// Appends one part of value `k`, keeping the parts sorted.
    pub fn with_part(&self, k: u32) -> Partition {
        assert!(k > 0);
        let mut parts = self.parts.clone();
        let pos = parts.partition_point(|&p| p >= k);
        parts.insert(pos, k);
        Partition { parts }
    }

    /// Removes one part of value `k`; None when no such part exists.
    pub fn without_part(&self, k: u32) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }
}

/// Dominance comparison of two partitions by prefix sums. `None` means
/// incomparable (different sizes, or the prefix sums cross).
pub fn dominance_cmp(a: &Partition, b: &Partition) -> Option<Ordering> {
    if a.size() != b.size() {
        return None;
    }
    let rows = a.length().max(b.length());
    let mut seen_less = false;
    let mut seen_greater = false;
    let (mut sa, mut sb) = (0u64, 0u64);
    for i in 1..=rows {
        sa += a.part(i) as u64;
        sb += b.part(i) as u64;
        match sa.cmp(&sb) {
            Ordering::Less => seen_less = true,
            Ordering::Greater => seen_greater = true,
            Ordering::Equal => {}
        }
        if seen_less && seen_greater {
            return None;
        }
    }
    Some(match (seen_less, seen_greater) {
        (false, false) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => unreachable!(),
    })
}

/// μ ≤ λ in the dominance semi-ordering.
pub fn dominance_leq(mu: &Partition, lambda: &Partition) -> bool {
    matches!(
        dominance_cmp(mu, lambda),
        Some(Ordering::Less) | Some(Ordering::Equal)
    )
}

/// All partitions of `n` in reverse-lexicographic order, e.g.
/// (3), (2,1), (1,1,1). This order is the canonical row/column order of every
/// cached matrix, so it must never change.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    descend(n, n, &mut current, &mut out);
    out
}

fn descend(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition {
            parts: current.clone(),
        });
        return;
    }
    for k in (1..=remaining.min(max_part)).rev() {
        current.push(k);
        descend(remaining - k, k, current, out);
        current.pop();
    }
}

/// Position of λ within `partitions_of(|λ|)`.
pub fn canonical_index(lambda: &Partition) -> usize {
    partitions_of(lambda.size())
        .iter()
        .position(|p| p == lambda)
        .expect("partition enumeration is exhaustive")
}

impl Ord for Partition {
    /// Total order: by size, then reverse-lexicographic within a size class,
    /// matching the enumeration order of [`partitions_of`].
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.parts.cmp(&self.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;

    fn try_from(parts: Vec<u32>) -> std::result::Result<Self, String> {
        if parts.windows(2).all(|w| w[0] >= w[1]) && parts.iter().all(|&p| p > 0) {
            Ok(Partition { parts })
        } else {
            Err(format!("not weakly decreasing positive parts: {parts:?}"))
        }
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl From<&[u32]> for Partition {
    fn from(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl<const N: usize> From<[u32; N]> for Partition {
    fn from(parts: [u32; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn partitions_of_small() {
        assert_eq!(partitions_of(0), vec![Partition::empty()]);
        assert_eq!(partitions_of(3), vec![p(&[3]), p(&[2, 1]), p(&[1, 1, 1])]);
        assert_eq!(partitions_of(4).len(), 5);
    }

    #[test]
    fn enumeration_matches_ord() {
        for n in 0..=9 {
            let list = partitions_of(n);
            for w in list.windows(2) {
                assert!(w[0] < w[1], "{} should precede {}", w[0], w[1]);
            }
        }
    }

    /// Independent oracle: Euler's pentagonal-number recurrence for p(n).
    fn pentagonal_count(upto: usize) -> Vec<i64> {
        let mut p = vec![0i64; upto + 1];
        p[0] = 1;
        for n in 1..=upto {
            let mut acc = 0i64;
            let mut k = 1i64;
            loop {
                let g1 = k * (3 * k - 1) / 2;
                let g2 = k * (3 * k + 1) / 2;
                if g1 as usize > n {
                    break;
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                acc += sign * p[n - g1 as usize];
                if g2 as usize <= n {
                    acc += sign * p[n - g2 as usize];
                }
                k += 1;
            }
            p[n] = acc;
        }
        p
    }

    #[test]
    fn counts_match_pentagonal_recurrence() {
        let expected = pentagonal_count(40);
        for n in 0..=40u32 {
            assert_eq!(partitions_of(n).len() as i64, expected[n as usize], "p({n})");
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(p(&[4, 4, 2, 1, 1, 1]).conjugate(), p(&[6, 3, 2, 2]));
        assert_eq!(p(&[2, 1]).conjugate(), p(&[2, 1]));
    }

    #[test]
    fn conjugate_is_involution() {
        for n in 0..=12 {
            for lam in partitions_of(n) {
                assert_eq!(lam.conjugate().conjugate(), lam);
            }
        }
    }

    #[test]
    fn box_membership() {
        let lam = p(&[4, 4, 2, 1, 1]);
        assert!(lam.contains_box(2, 3));
        assert!(!lam.contains_box(4, 3));
        assert!(!Partition::empty().contains_box(1, 1));
    }

    #[test]
    fn arm_leg_examples() {
        assert_eq!(p(&[2, 1]).arm_leg(1, 1), (1, 1));
        assert_eq!(Partition::empty().arm_leg(1, 1), (-1, -1));
        // (1,2) ∈ (3): arm 3−2 = 1, leg λ′_2 − 1 = 1 − 1 = 0
        assert_eq!(p(&[3]).arm_leg(1, 2), (1, 0));
        // outside the first row the leg goes negative
        assert_eq!(p(&[3]).arm_leg(1, 4), (-1, -1));
        assert_eq!(p(&[3]).arm_leg(2, 1), (-1, -1));
    }

    #[test]
    fn arm_leg_nonnegative_inside() {
        for n in 0..=8 {
            for lam in partitions_of(n) {
                let mut count = 0;
                for (i, j) in lam.boxes() {
                    let (a, l) = lam.arm_leg(i, j);
                    assert!(a >= 0 && l >= 0);
                    count += 1;
                }
                assert_eq!(count, lam.size());
            }
        }
    }

    #[test]
    fn corners_examples() {
        assert_eq!(p(&[1]).removable_corners(), vec![(1, 1)]);
        assert_eq!(p(&[2, 2, 1]).removable_corners(), vec![(2, 2), (3, 1)]);
        assert_eq!(
            p(&[4, 4, 2, 1, 1, 1]).removable_corners(),
            vec![(2, 4), (3, 2), (6, 1)]
        );
    }

    #[test]
    fn corners_count_distinct_parts() {
        for n in 0..=10 {
            for lam in partitions_of(n) {
                let mut values: Vec<u32> = lam.parts().to_vec();
                values.dedup();
                assert_eq!(lam.removable_corners().len(), values.len());
                // removal really leaves a partition
                for &(i, j) in &lam.removable_corners() {
                    let mut parts = lam.parts().to_vec();
                    parts[i - 1] -= 1;
                    parts.retain(|&v| v > 0);
                    assert_eq!(Partition::new(parts).size(), n.saturating_sub(1));
                    assert_eq!(lam.part(i) as usize, j);
                }
            }
        }
    }

    #[test]
    fn z_examples() {
        assert_eq!(p(&[2, 1]).z(), BigInt::from(2));
        assert_eq!(p(&[1, 1, 1]).z(), BigInt::from(6));
        assert_eq!(p(&[3]).z(), BigInt::from(3));
        assert_eq!(Partition::empty().z(), BigInt::from(1));
        // Σ_{λ⊢n} n!/z_λ = p(1)^n coefficient count: n! = Σ n!/z_λ · (conj. class sizes sum)
        // sanity: z divides n!
        for lam in partitions_of(6) {
            let fact: BigInt = (1..=6u32).map(BigInt::from).product();
            assert_eq!(&fact % lam.z(), BigInt::from(0));
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&p(&[1, 1, 1]), &p(&[2, 1])));
        assert_eq!(dominance_cmp(&p(&[3, 3]), &p(&[4, 1, 1])), None);
        assert!(dominance_leq(&p(&[2, 1]), &p(&[2, 1])));
    }

    #[test]
    fn dominance_is_partial_order() {
        for n in 0..=10u32 {
            let all = partitions_of(n);
            for a in &all {
                assert_eq!(dominance_cmp(a, a), Some(Ordering::Equal));
                for b in &all {
                    match dominance_cmp(a, b) {
                        Some(Ordering::Less) => {
                            assert_eq!(dominance_cmp(b, a), Some(Ordering::Greater))
                        }
                        Some(Ordering::Equal) => assert_eq!(a, b),
                        _ => {}
                    }
                    for c in &all {
                        if dominance_leq(a, b) && dominance_leq(b, c) {
                            assert!(dominance_leq(a, c), "{a} {b} {c}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn shrink_examples() {
        assert_eq!(p(&[2, 1]).shrink_by(1), vec![p(&[2]), p(&[1, 1])]);
        assert!(p(&[1]).shrink_by(2).is_empty());
        assert_eq!(p(&[2, 2]).shrink_by(2), vec![p(&[2]), p(&[1, 1])]);
    }

    #[test]
    fn shrink_by_one_is_corner_removal() {
        for n in 1..=9 {
            for lam in partitions_of(n) {
                assert_eq!(lam.shrink_by(1).len(), lam.removable_corners().len());
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let lam = p(&[4, 4, 2, 1, 1, 1]);
        let s = serde_json::to_string(&lam).unwrap();
        assert_eq!(s, "[4,4,2,1,1,1]");
        assert_eq!(serde_json::from_str::<Partition>(&s).unwrap(), lam);
        assert_eq!(
            serde_json::to_string(&Partition::empty()).unwrap(),
            "[]"
        );
        assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
    }
}
