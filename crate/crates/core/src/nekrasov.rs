//! Combinatorial instanton partition function for pure SU(r) gauge theory.
//!
//! The degree-d coefficient is a sum over r-tuples of partitions of total
//! size d, each contributing the inverse of a product of r² factors built
//! from generalized (possibly negative) arms and legs. Everything here is
//! exact rational arithmetic at rational gauge parameters; symbolic ε modes
//! are deliberately out of scope, genericity being covered by sampling.

use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition};
use crate::scalar::Rational;
use num_traits::Zero;

/// Equivariant parameters (ε₁, ε₂) and Coulomb moduli (a_1, …, a_r), r ≥ 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeParams {
    pub eps1: Rational,
    pub eps2: Rational,
    pub avec: Vec<Rational>,
}

impl GaugeParams {
    pub fn new(eps1: Rational, eps2: Rational, avec: Vec<Rational>) -> Result<Self> {
        if eps1.is_zero() || eps2.is_zero() {
            return Err(Error::DegenerateParameter {
                detail: "ε₁ and ε₂ must be nonzero".into(),
            });
        }
        if avec.len() < 2 {
            return Err(Error::DegenerateParameter {
                detail: "rank r ≥ 2 required".into(),
            });
        }
        Ok(GaugeParams { eps1, eps2, avec })
    }

    pub fn rank(&self) -> usize {
        self.avec.len()
    }
}

/// An r-tuple of partitions Y = (Y_1, …, Y_r).
pub type PartitionTuple = Vec<Partition>;

pub fn tuple_size(tuple: &PartitionTuple) -> u32 {
    tuple.iter().map(Partition::size).sum()
}

/// The factor n_{s,t}^{Y} (1-based indices s, t):
/// Π_{□∈Y_s} [−ℓ_{Y_t}(□) ε₁ + (a_{Y_s}(□)+1) ε₂ + a_t − a_s]
/// · Π_{■∈Y_t} [(ℓ_{Y_s}(■)+1) ε₁ − a_{Y_t}(■) ε₂ + a_t − a_s].
/// Zero factors are legitimate values; callers detect them.
pub fn nek_factor(tuple: &PartitionTuple, s: usize, t: usize, gp: &GaugeParams) -> Rational {
    assert!((1..=gp.rank()).contains(&s) && (1..=gp.rank()).contains(&t));
    let ys = &tuple[s - 1];
    let yt = &tuple[t - 1];
    let da = &gp.avec[t - 1] - &gp.avec[s - 1];
    let mut acc = Rational::from_integer(1.into());
    for (i, j) in ys.boxes() {
        let (arm, _) = ys.arm_leg(i, j);
        let (_, leg) = yt.arm_leg(i, j);
        acc *= -&gp.eps1 * Rational::from_integer(leg.into())
            + &gp.eps2 * Rational::from_integer((arm + 1).into())
            + &da;
    }
    for (i, j) in yt.boxes() {
        let (_, leg) = ys.arm_leg(i, j);
        let (arm, _) = yt.arm_leg(i, j);
        acc *= &gp.eps1 * Rational::from_integer((leg + 1).into())
            - &gp.eps2 * Rational::from_integer(arm.into())
            + &da;
    }
    acc
}

/// All r-tuples of partitions with total size d, ordered lexicographically in
/// the per-component canonical enumeration.
pub fn tuples_of_size(d: u32, r: usize) -> Vec<PartitionTuple> {
    assert!(r >= 1);
    if r == 1 {
        return partitions_of(d).into_iter().map(|p| vec![p]).collect();
    }
    let mut out = Vec::new();
    for first in 0..=d {
        let heads = partitions_of(first);
        let tails = tuples_of_size(d - first, r - 1);
        for head in &heads {
            for tail in &tails {
                let mut tuple = Vec::with_capacity(r);
                tuple.push(head.clone());
                tuple.extend(tail.iter().cloned());
                out.push(tuple);
            }
        }
    }
    out
}

/// The coefficient of x^d in the instanton sum:
/// Σ_{|Y|=d} 1 / Π_{s,t} n_{s,t}^{Y}. A vanishing factor in any contributing
/// tuple is an error naming the tuple.
pub fn z_degree(d: u32, gp: &GaugeParams) -> Result<Rational> {
    let r = gp.rank();
    let mut acc = Rational::zero();
    for tuple in tuples_of_size(d, r) {
        let mut denom = Rational::from_integer(1.into());
        for s in 1..=r {
            for t in 1..=r {
                denom *= nek_factor(&tuple, s, t, gp);
            }
        }
        if denom.is_zero() {
            let desc: Vec<String> = tuple.iter().map(|p| p.to_string()).collect();
            return Err(Error::VanishingDenominator {
                tuple: format!("({})", desc.join(", ")),
            });
        }
        acc += denom.recip();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn p(parts: &[u32]) -> Partition {
        Partition::from(parts)
    }

    fn fixture() -> GaugeParams {
        GaugeParams::new(rat_int(3), rat_int(-2), vec![rat_int(1), rat_int(-1)]).unwrap()
    }

    #[test]
    fn factor_examples() {
        let gp = fixture();
        let tuple = vec![p(&[1]), Partition::empty()];
        // single box, arm = leg = 0
        assert_eq!(nek_factor(&tuple, 1, 1, &gp), &gp.eps1 * &gp.eps2);
        // ℓ_∅(1,1) = −1 enters with its sign
        let expected = &gp.eps1 + &gp.eps2 + &gp.avec[1] - &gp.avec[0];
        assert_eq!(nek_factor(&tuple, 1, 2, &gp), expected);
        let empty = vec![Partition::empty(), Partition::empty()];
        for s in 1..=2 {
            for t in 1..=2 {
                assert_eq!(nek_factor(&empty, s, t, &gp), rat_int(1));
            }
        }
    }

    #[test]
    fn z_degree_examples() {
        let gp = fixture();
        assert_eq!(z_degree(0, &gp).unwrap(), rat_int(1));
        assert_eq!(z_degree(1, &gp).unwrap(), rat(1, 9));
    }

    #[test]
    fn z_degree_one_closed_form() {
        // 2 / (ε₁ε₂ ((ε₁+ε₂)² − (a₂−a₁)²)), checked at several points
        let points = [
            fixture(),
            GaugeParams::new(rat(2, 3), rat(-5, 7), vec![rat(1, 2), rat(-3, 4)]).unwrap(),
            GaugeParams::new(rat_int(1), rat_int(4), vec![rat_int(0), rat_int(3)]).unwrap(),
        ];
        for gp in points {
            let e = &gp.eps1 + &gp.eps2;
            let da = &gp.avec[1] - &gp.avec[0];
            let expected = rat_int(2) / (&gp.eps1 * &gp.eps2 * (&e * &e - &da * &da));
            assert_eq!(z_degree(1, &gp).unwrap(), expected, "at {gp:?}");
        }
    }

    #[test]
    fn tuple_count_matches_convolution() {
        for d in 0..=5u32 {
            let count = tuples_of_size(d, 2).len();
            let expected: usize = (0..=d)
                .map(|k| partitions_of(k).len() * partitions_of(d - k).len())
                .sum();
            assert_eq!(count, expected);
        }
    }

    #[test]
    fn symmetries() {
        let gp = fixture();
        // ε₁ ↔ ε₂
        let swapped = GaugeParams::new(gp.eps2.clone(), gp.eps1.clone(), gp.avec.clone()).unwrap();
        // a ↔ permutation
        let permuted =
            GaugeParams::new(gp.eps1.clone(), gp.eps2.clone(), vec![rat_int(-1), rat_int(1)])
                .unwrap();
        // common shift of all a_s
        let shifted = GaugeParams::new(
            gp.eps1.clone(),
            gp.eps2.clone(),
            gp.avec.iter().map(|a| a + rat(7, 3)).collect(),
        )
        .unwrap();
        for d in 0..=4u32 {
            let z = z_degree(d, &gp).unwrap();
            assert_eq!(z_degree(d, &swapped).unwrap(), z, "ε swap at degree {d}");
            assert_eq!(z_degree(d, &permuted).unwrap(), z, "a swap at degree {d}");
            assert_eq!(z_degree(d, &shifted).unwrap(), z, "a shift at degree {d}");
        }
    }

    #[test]
    fn rank_three_runs() {
        let gp = GaugeParams::new(
            rat_int(3),
            rat_int(-2),
            vec![rat_int(1), rat_int(0), rat_int(-1)],
        )
        .unwrap();
        assert_eq!(z_degree(0, &gp).unwrap(), rat_int(1));
        // smoke: degree 2 evaluates without a vanishing denominator
        z_degree(2, &gp).unwrap();
    }

    #[test]
    fn vanishing_denominator_is_named() {
        // a₂ − a₁ = ε₁ + ε₂ makes the single-box factor vanish
        let gp = GaugeParams::new(rat_int(3), rat_int(-2), vec![rat_int(0), rat_int(1)]).unwrap();
        match z_degree(1, &gp) {
            Err(Error::VanishingDenominator { tuple }) => {
                assert!(tuple.contains("[1]"), "tuple was {tuple}");
            }
            other => panic!("expected vanishing denominator, got {other:?}"),
        }
    }

    #[test]
    fn parameter_validation() {
        assert!(GaugeParams::new(rat_int(0), rat_int(1), vec![rat_int(0), rat_int(1)]).is_err());
        assert!(GaugeParams::new(rat_int(1), rat_int(1), vec![rat_int(0)]).is_err());
    }
}
