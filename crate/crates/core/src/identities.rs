//! Machine verification of the two corner-sum identities of rational
//! functions that drive the closed-form coefficient theorem.
//!
//! For a partition λ with corner set C(λ), the weighted corner sums
//! F₁(λ; β) and F₂(λ; β) collapse to |λ| and Σ_i (λ_i² − 2 i λ_i β)
//! respectively. Both are verified as exact identities in the fraction field
//! Q(β) (symbolic mode) or at sampled rational β. The identities are checked,
//! not re-proven: the residue-calculus argument stays in the paper.

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::scalar::{sample_rational, RatFunc, Rational, Scalar};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// λ written as blocks (n_1^{j_1}, …, n_l^{j_l}): strictly decreasing part
/// values `ns` and cumulative row counts `ms` (m_k = j_1 + ⋯ + j_k). The
/// corners of λ are exactly the boxes (m_k, n_k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockEncoding {
    pub ns: Vec<u32>,
    pub ms: Vec<u32>,
}

impl BlockEncoding {
    pub fn of(lambda: &Partition) -> Self {
        let mut ns = Vec::new();
        let mut ms = Vec::new();
        for (rows, &value) in lambda.parts().iter().enumerate() {
            if ns.last() == Some(&value) {
                *ms.last_mut().unwrap() = rows as u32 + 1;
            } else {
                ns.push(value);
                ms.push(rows as u32 + 1);
            }
        }
        BlockEncoding { ns, ms }
    }

    pub fn blocks(&self) -> usize {
        self.ns.len()
    }

    pub fn reconstruct(&self) -> Partition {
        let mut parts = Vec::new();
        let mut prev = 0;
        for (&n, &m) in self.ns.iter().zip(&self.ms) {
            for _ in prev..m {
                parts.push(n);
            }
            prev = m;
        }
        Partition::new(parts)
    }

    /// One corner term of F₁ in block coordinates (1-based k ≤ l):
    /// (m_k − m_{k−1})(n_k − n_{k+1})
    /// · Π_{i<k} [(n_i−n_k) + β(m_k−m_{i−1})]/[(n_i−n_k) + β(m_k−m_i)]
    /// · Π_{j>k} [(n_k−n_{j+1}) + β(m_j−m_k)]/[(n_k−n_j) + β(m_j−m_k)].
    pub fn f1_term<S: Scalar>(&self, k: usize, beta: &S) -> Result<S> {
        let l = self.blocks();
        assert!((1..=l).contains(&k));
        let m = |i: usize| -> i64 {
            if i == 0 {
                0
            } else {
                self.ms[i - 1] as i64
            }
        };
        let n = |i: usize| -> i64 {
            if i == l + 1 {
                0
            } else {
                self.ns[i - 1] as i64
            }
        };
        let mut num = S::from_int((m(k) - m(k - 1)) * (n(k) - n(k + 1)));
        let mut den = S::one();
        for i in 1..k {
            num = num * (S::from_int(n(i) - n(k)) + beta.clone() * S::from_int(m(k) - m(i - 1)));
            den = den * (S::from_int(n(i) - n(k)) + beta.clone() * S::from_int(m(k) - m(i)));
        }
        for j in k + 1..=l {
            num = num * (S::from_int(n(k) - n(j + 1)) + beta.clone() * S::from_int(m(j) - m(k)));
            den = den * (S::from_int(n(k) - n(j)) + beta.clone() * S::from_int(m(j) - m(k)));
        }
        num.checked_div(&den).map_err(|_| Error::PoleAtPoint {
            point: format!("{beta}"),
        })
    }

    /// F₁ as the sum of its block terms.
    pub fn f1<S: Scalar>(&self, beta: &S) -> Result<S> {
        let mut acc = S::zero();
        for k in 1..=self.blocks() {
            acc = acc + self.f1_term(k, beta)?;
        }
        Ok(acc)
    }

    /// F₂ = Σ_k (n_k − (m_k+1)β) · F₁ₖ.
    pub fn f2<S: Scalar>(&self, beta: &S) -> Result<S> {
        let mut acc = S::zero();
        for k in 1..=self.blocks() {
            let weight = S::from_int(self.ns[k - 1] as i64)
                - S::from_int(self.ms[k - 1] as i64 + 1) * beta.clone();
            acc = acc + weight * self.f1_term(k, beta)?;
        }
        Ok(acc)
    }
}

/// F₁(λ; β): the corner sum in diagram coordinates,
/// Σ_{(I,λ_I)∈C(λ)} Π_{i<I} (λ_i−λ_I+β(I−i+1))/(λ_i−λ_I+β(I−i))
///                · Π_{i<λ_I} (λ_I−i+1+β(λ′_i−I))/(λ_I−i+β(λ′_i−I)).
/// Empty λ gives 0. Equals |λ| identically in β.
pub fn f1_eval<S: Scalar>(lambda: &Partition, beta: &S) -> Result<S> {
    corner_sum(lambda, beta, |_, _| S::one())
}

/// F₂(λ; β): the same corner sum with the extra factor (λ_I − (I+1)β).
/// Equals Σ_i (λ_i² − 2 i λ_i β) identically in β.
pub fn f2_eval<S: Scalar>(lambda: &Partition, beta: &S) -> Result<S> {
    corner_sum(lambda, beta, |row, col| {
        S::from_int(col) - S::from_int(row + 1) * beta.clone()
    })
}

fn corner_sum<S: Scalar>(
    lambda: &Partition,
    beta: &S,
    weight: impl Fn(i64, i64) -> S,
) -> Result<S> {
    let conj = lambda.conjugate();
    let mut acc = S::zero();
    for (row, col) in lambda.removable_corners() {
        let (big_i, lam_i) = (row as i64, col as i64);
        let mut num = weight(big_i, lam_i);
        let mut den = S::one();
        for i in 1..big_i {
            let diff = lambda.part(i as usize) as i64 - lam_i;
            num = num * (S::from_int(diff) + beta.clone() * S::from_int(big_i - i + 1));
            den = den * (S::from_int(diff) + beta.clone() * S::from_int(big_i - i));
        }
        for i in 1..lam_i {
            let col_height = conj.part(i as usize) as i64 - big_i;
            num = num * (S::from_int(lam_i - i + 1) + beta.clone() * S::from_int(col_height));
            den = den * (S::from_int(lam_i - i) + beta.clone() * S::from_int(col_height));
        }
        let term = num.checked_div(&den).map_err(|_| Error::PoleAtPoint {
            point: format!("{beta}"),
        })?;
        acc = acc + term;
    }
    Ok(acc)
}

/// The right side of the second identity, Σ_i (λ_i² − 2 i λ_i β).
pub fn f2_rhs<S: Scalar>(lambda: &Partition, beta: &S) -> S {
    let mut acc = S::zero();
    for (i, &part) in lambda.parts().iter().enumerate() {
        let row = (i + 1) as i64;
        let p = part as i64;
        acc = acc + S::from_int(p * p) - S::from_int(2 * row * p) * beta.clone();
    }
    acc
}

#[derive(Clone, Debug)]
pub struct IdentityRow {
    pub partition: Partition,
    pub f1_ok: bool,
    pub f2_ok: bool,
}

#[derive(Clone, Debug, Default)]
pub struct IdentityReport {
    pub mode: String,
    pub rows: Vec<IdentityRow>,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.f1_ok && r.f2_ok)
    }
}

/// Verifies both identities at one β value (or symbolically when S carries
/// the formal variable) for every nonempty partition of size ≤ max_size.
pub fn verify_at<S: Scalar>(max_size: u32, beta: &S, mode: &str) -> Result<IdentityReport> {
    let mut report = IdentityReport {
        mode: mode.to_string(),
        rows: Vec::new(),
    };
    for n in 1..=max_size {
        for lam in partitions_of(n) {
            let f1 = f1_eval(&lam, beta)?;
            let f2 = f2_eval(&lam, beta)?;
            report.rows.push(IdentityRow {
                f1_ok: f1 == S::from_int(n as i64),
                f2_ok: f2 == f2_rhs(&lam, beta),
                partition: lam,
            });
        }
    }
    Ok(report)
}

/// Exact verification over the fraction field Q(β).
pub fn verify_symbolic(max_size: u32) -> Result<IdentityReport> {
    verify_at(max_size, &RatFunc::var(), "symbolic")
}

/// Verification at seeded random rational β points; poles are resampled.
pub fn verify_sampled(max_size: u32, points: u32, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut merged = IdentityReport {
        mode: format!("sampled({points} points, seed {seed})"),
        rows: Vec::new(),
    };
    for _ in 0..points {
        let beta: Rational = sample_rational(&mut rng);
        let report = verify_at(max_size, &beta, "")?;
        if merged.rows.is_empty() {
            merged.rows = report.rows;
        } else {
            for (acc, row) in merged.rows.iter_mut().zip(report.rows) {
                acc.f1_ok &= row.f1_ok;
                acc.f2_ok &= row.f2_ok;
            }
        }
    }
    Ok(merged)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};
    use num_traits::One;

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    #[test]
    fn block_encoding_roundtrip() {
        let lam = p(&[4, 4, 2, 1, 1, 1]);
        let enc = BlockEncoding::of(&lam);
        assert_eq!(enc.ns, vec![4, 2, 1]);
        assert_eq!(enc.ms, vec![2, 3, 6]);
        assert_eq!(enc.reconstruct(), lam);
        // corners (m_k, n_k) match the diagram corner set
        let corners: Vec<(usize, usize)> = enc
            .ms
            .iter()
            .zip(&enc.ns)
            .map(|(&m, &n)| (m as usize, n as usize))
            .collect();
        assert_eq!(corners, lam.removable_corners());
        for n in 0..=8 {
            for lam in partitions_of(n) {
                assert_eq!(BlockEncoding::of(&lam).reconstruct(), lam);
            }
        }
    }

    #[test]
    fn f1_examples() {
        let beta = RatFunc::var();
        assert!(f1_eval(&p(&[1]), &beta).unwrap().is_one());
        assert_eq!(f1_eval(&p(&[2, 1]), &beta).unwrap(), RatFunc::from_int(3));
        assert_eq!(
            f1_eval(&p(&[4, 4, 2, 1, 1, 1]), &beta).unwrap(),
            RatFunc::from_int(12)
        );
        assert!(f1_eval(&Partition::empty(), &beta).unwrap().is_zero());
    }

    #[test]
    fn f2_examples() {
        let beta = RatFunc::var();
        // (1): 1 − 2β
        assert_eq!(
            f2_eval(&p(&[1]), &beta).unwrap(),
            RatFunc::one() - RatFunc::from_int(2) * beta.clone()
        );
        // (2): 4 − 4β
        assert_eq!(
            f2_eval(&p(&[2]), &beta).unwrap(),
            RatFunc::from_int(4) - RatFunc::from_int(4) * beta.clone()
        );
        // (2,1): 5 − 8β
        assert_eq!(
            f2_eval(&p(&[2, 1]), &beta).unwrap(),
            RatFunc::from_int(5) - RatFunc::from_int(8) * beta.clone()
        );
    }

    #[test]
    fn block_form_agrees_with_diagram_form() {
        let beta = RatFunc::var();
        for n in 1..=7u32 {
            for lam in partitions_of(n) {
                let enc = BlockEncoding::of(&lam);
                assert_eq!(
                    enc.f1(&beta).unwrap(),
                    f1_eval(&lam, &beta).unwrap(),
                    "F1 on {lam}"
                );
                assert_eq!(
                    enc.f2(&beta).unwrap(),
                    f2_eval(&lam, &beta).unwrap(),
                    "F2 on {lam}"
                );
            }
        }
    }

    #[test]
    fn verify_small_sizes() {
        let report = verify_symbolic(5).unwrap();
        assert!(report.all_passed());
        let report = verify_sampled(5, 3, 11).unwrap();
        assert!(report.all_passed());
    }

    #[test]
    fn f2_linear_structure_in_beta() {
        // constant term Σ λ_i², β-coefficient −Σ 2 i λ_i
        let beta = RatFunc::var();
        for n in 1..=6u32 {
            for lam in partitions_of(n) {
                let f2 = f2_eval(&lam, &beta).unwrap();
                let num = f2.numerator();
                assert_eq!(f2.denominator().degree(), Some(0));
                assert!(num.degree().unwrap_or(0) <= 1);
                let sq: i64 = lam.parts().iter().map(|&x| (x as i64) * (x as i64)).sum();
                let lin: i64 = lam
                    .parts()
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| -2 * (i as i64 + 1) * (x as i64))
                    .sum();
                assert_eq!(num.coeff(0), rat_int(sq));
                assert_eq!(num.coeff(1), rat_int(lin));
            }
        }
    }

    #[test]
    fn mutated_exponent_is_caught() {
        // perturbing one factor must break the identity: harness self-check
        let beta = rat(4, 7);
        let lam = p(&[2, 1]);
        let good = f1_eval(&lam, &beta).unwrap();
        let conj = lam.conjugate();
        // recompute with (I−i+2) in place of (I−i+1) at the (2,1) corner
        let mut acc = Rational::zero();
        for (row, col) in lam.removable_corners() {
            let (big_i, lam_i) = (row as i64, col as i64);
            let mut term = Rational::one();
            for i in 1..big_i {
                let diff = rat_int(lam.part(i as usize) as i64 - lam_i);
                let bumped = &diff + &beta * rat_int(big_i - i + 2);
                let den = &diff + &beta * rat_int(big_i - i);
                term *= bumped / den;
            }
            for i in 1..lam_i {
                let ch = rat_int(conj.part(i as usize) as i64 - big_i);
                term *= (rat_int(lam_i - i + 1) + &beta * &ch)
                    / (rat_int(lam_i - i) + &beta * &ch);
            }
            acc += term;
        }
        assert_ne!(acc, good);
        assert_ne!(acc, rat_int(3));
    }

    #[test]
    fn pole_at_specialized_beta_is_reported() {
        // (2,1) has a factor λ_1−λ_2+β(I−i) = 1+β in a denominator: β = −1
        let err = f1_eval(&p(&[2, 1]), &rat_int(-1)).unwrap_err();
        assert!(matches!(err, Error::PoleAtPoint { .. }));
    }
}
