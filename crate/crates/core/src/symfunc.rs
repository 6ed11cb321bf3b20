//! Graded symmetric functions truncated at a degree cap.
//!
//! Values carry a basis tag (power-sum, monomial, or Jack with its parameter)
//! and live degree by degree as partition-indexed coefficient maps. The
//! canonical computational basis is the power sums; the monomial basis is
//! reached through cached per-degree transition tables, built once and shared.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cache;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::partition::{partitions_of, Partition};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Basis<S> {
    PowerSum,
    Monomial,
    /// Jack basis at the given inner-product parameter.
    Jack(S),
}

/// A truncated symmetric function: partition-indexed coefficients in a fixed
/// basis. Absent keys are zero and explicit zeros are never stored, so
/// structural equality is semantic equality.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc<S> {
    basis: Basis<S>,
    cap: u32,
    coeffs: BTreeMap<Partition, S>,
}

impl<S: Scalar> SymFunc<S> {
    pub fn zero(basis: Basis<S>, cap: u32) -> Self {
        SymFunc {
            basis,
            cap,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant function 1 (coefficient 1 on the empty partition; the
    /// same value in every basis).
    pub fn one(basis: Basis<S>, cap: u32) -> Self {
        let mut f = SymFunc::zero(basis, cap);
        f.set(Partition::empty(), S::one());
        f
    }

    /// The basis element indexed by λ.
    pub fn basis_element(basis: Basis<S>, lambda: Partition, cap: u32) -> Self {
        assert!(lambda.size() <= cap);
        let mut f = SymFunc::zero(basis, cap);
        f.set(lambda, S::one());
        f
    }

    /// p_λ as a power-sum-basis value.
    pub fn power_sum(lambda: Partition, cap: u32) -> Self {
        SymFunc::basis_element(Basis::PowerSum, lambda, cap)
    }

    pub fn basis(&self) -> &Basis<S> {
        &self.basis
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    pub fn coeff(&self, lambda: &Partition) -> S {
        self.coeffs.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    pub fn set(&mut self, lambda: Partition, value: S) {
        assert!(lambda.size() <= self.cap, "degree above cap");
        if value.is_zero() {
            self.coeffs.remove(&lambda);
        } else {
            self.coeffs.insert(lambda, value);
        }
    }

    pub fn add_to(&mut self, lambda: Partition, value: S) {
        let v = self.coeff(&lambda) + value;
        self.set(lambda, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &S)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &SymFunc<S>) -> SymFunc<S> {
        assert_eq!(self.basis, other.basis, "basis mismatch");
        assert_eq!(self.cap, other.cap, "cap mismatch");
        let mut out = self.clone();
        for (lam, v) in &other.coeffs {
            out.add_to(lam.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymFunc<S>) -> SymFunc<S> {
        self.add(&other.scale(&(-S::one())))
    }

    pub fn scale(&self, s: &S) -> SymFunc<S> {
        let mut out = SymFunc::zero(self.basis.clone(), self.cap);
        if s.is_zero() {
            return out;
        }
        for (lam, v) in &self.coeffs {
            out.set(lam.clone(), v.clone() * s.clone());
        }
        out
    }

    /// The degree-d homogeneous component.
    pub fn component(&self, d: u32) -> SymFunc<S> {
        let mut out = SymFunc::zero(self.basis.clone(), self.cap);
        for (lam, v) in &self.coeffs {
            if lam.size() == d {
                out.set(lam.clone(), v.clone());
            }
        }
        out
    }

    /// Largest degree with a nonzero coefficient.
    pub fn max_degree(&self) -> u32 {
        self.coeffs.keys().map(|l| l.size()).max().unwrap_or(0)
    }

    /// Coefficient vector of the degree-d component in canonical partition
    /// order.
    pub fn degree_vector(&self, d: u32) -> Vec<S> {
        partitions_of(d).iter().map(|lam| self.coeff(lam)).collect()
    }

    /// Multiplication by the power sum p_k in the power-sum basis. Fails
    /// loudly when the product would overflow the cap.
    pub fn multiply_by_power_sum(&self, k: u32) -> Result<SymFunc<S>> {
        assert!(
            matches!(self.basis, Basis::PowerSum),
            "power-sum basis required"
        );
        assert!(k >= 1);
        let mut out = SymFunc::zero(Basis::PowerSum, self.cap);
        for (lam, v) in &self.coeffs {
            let degree = lam.size() + k;
            if degree > self.cap {
                return Err(Error::DegreeCapExceeded {
                    degree,
                    cap: self.cap,
                });
            }
            out.add_to(lam.with_part(k), v.clone());
        }
        Ok(out)
    }

    /// Exact basis change power-sum → monomial, degree by degree.
    pub fn p_to_m(&self) -> SymFunc<S> {
        assert!(matches!(self.basis, Basis::PowerSum));
        self.change_basis(Basis::Monomial, |t| &t.p_to_m)
    }

    /// Exact basis change monomial → power-sum, degree by degree.
    pub fn m_to_p(&self) -> SymFunc<S> {
        assert!(matches!(self.basis, Basis::Monomial));
        self.change_basis(Basis::PowerSum, |t| &t.m_to_p)
    }

    fn change_basis(
        &self,
        target: Basis<S>,
        pick: impl for<'a> Fn(&'a TransitionTable) -> &'a Matrix<Rational>,
    ) -> SymFunc<S> {
        let mut out = SymFunc::zero(target, self.cap);
        for d in 0..=self.max_degree() {
            let vin = self.degree_vector(d);
            if vin.iter().all(|c| c.is_zero()) {
                continue;
            }
            let table = transition_table(d);
            let m = pick(&table);
            let parts = partitions_of(d);
            for (row, mu) in parts.iter().enumerate() {
                let mut acc = S::zero();
                for (col, c) in vin.iter().enumerate() {
                    let entry = &m[(row, col)];
                    if entry.is_zero() || c.is_zero() {
                        continue;
                    }
                    acc = acc + S::from_rational(entry.clone()) * c.clone();
                }
                out.set(mu.clone(), acc);
            }
        }
        out
    }
}

/// ⟨f, g⟩_b = Σ_λ f_λ g_λ z_λ b^{ℓ(λ)} over the power-sum expansions.
/// Monomial-basis inputs are converted; Jack-basis inputs must be expanded by
/// the caller (the Jack module owns those tables).
pub fn inner_product<S: Scalar>(f: &SymFunc<S>, g: &SymFunc<S>, b: &S) -> S {
    let fp = to_power_sum(f);
    let gp = to_power_sum(g);
    let mut acc = S::zero();
    for (lam, fv) in fp.iter() {
        let gv = gp.coeff(lam);
        if gv.is_zero() {
            continue;
        }
        let z = S::from_rational(Rational::from_integer(lam.z()));
        acc = acc + fv.clone() * gv * z * b.pow(lam.length() as u32);
    }
    acc
}

fn to_power_sum<S: Scalar>(f: &SymFunc<S>) -> SymFunc<S> {
    match f.basis() {
        Basis::PowerSum => f.clone(),
        Basis::Monomial => f.m_to_p(),
        Basis::Jack(_) => panic!("expand Jack-basis values through the jack module first"),
    }
}

// ---------------------------------------------------------------------------
// Transition tables
// ---------------------------------------------------------------------------

/// Exact change-of-basis matrices between p_λ and m_μ at one degree, indexed
/// by the canonical partition order. The two directions are mutual inverses.
pub struct TransitionTable {
    pub degree: u32,
    /// Column λ holds the m-expansion of p_λ.
    pub p_to_m: Matrix<Rational>,
    /// Column μ holds the p-expansion of m_μ.
    pub m_to_p: Matrix<Rational>,
}

impl TransitionTable {
    pub fn build(degree: u32) -> Self {
        let parts = partitions_of(degree);
        let n = parts.len();
        let mut p_to_m = Matrix::<Rational>::zeros(n, n);
        for (col, lam) in parts.iter().enumerate() {
            let expansion = expand_power_sum_in_monomials(lam);
            for (row, mu) in parts.iter().enumerate() {
                if let Some(c) = expansion.get(mu) {
                    p_to_m[(row, col)] = c.clone();
                }
            }
        }
        let m_to_p = p_to_m
            .inverse()
            .expect("p→m transition is invertible per degree");
        TransitionTable {
            degree,
            p_to_m,
            m_to_p,
        }
    }
}

/// m-basis expansion of p_λ by iterated multiplication with the rule
/// m_μ · p_k = Σ_u m_{u+k}(ν) m_ν, where ν runs over μ with one part of value
/// u ∈ {0} ∪ parts(μ) bumped to u + k.
fn expand_power_sum_in_monomials(lambda: &Partition) -> BTreeMap<Partition, Rational> {
    let mut acc: BTreeMap<Partition, Rational> = BTreeMap::new();
    acc.insert(Partition::empty(), Rational::from_integer(1.into()));
    for &k in lambda.parts() {
        let mut next: BTreeMap<Partition, Rational> = BTreeMap::new();
        for (mu, c) in &acc {
            let mut values: Vec<u32> = vec![0];
            values.extend_from_slice(mu.parts());
            values.dedup();
            for &u in values.iter() {
                let nu = if u == 0 {
                    mu.with_part(k)
                } else {
                    mu.without_part(u).unwrap().with_part(u + k)
                };
                let mult = nu.multiplicity(u + k) as i64;
                let entry = next
                    .entry(nu)
                    .or_insert_with(|| Rational::from_integer(0.into()));
                *entry += c * Rational::from_integer(mult.into());
            }
        }
        acc = next;
    }
    acc
}

/// The shared per-degree transition table, built on first use (loading from
/// the disk cache when one is configured) and then reused.
pub fn transition_table(degree: u32) -> Arc<TransitionTable> {
    static REGISTRY: OnceLock<Mutex<BTreeMap<u32, Arc<TransitionTable>>>> = OnceLock::new();
    let registry = REGISTRY.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut guard = registry.lock().unwrap();
    if let Some(t) = guard.get(&degree) {
        return Arc::clone(t);
    }
    let table = cache::load_transition(degree).unwrap_or_else(|| {
        let t = TransitionTable::build(degree);
        cache::store_transition(&t);
        t
    });
    let table = Arc::new(table);
    guard.insert(degree, Arc::clone(&table));
    table
}
