//! Jack symmetric functions.
//!
//! The monic Jack family P_λ^{(b)} is built degree by degree via Gram–Schmidt
//! over the monomial basis in (a linear extension of) dominance order, which
//! realizes the defining pair of conditions exactly: unitriangularity in the
//! monomials and orthogonality for the b-deformed power-sum inner product.
//! Tables are keyed by (degree, parameter), built once under a lock, shared
//! read-only afterwards, and optionally persisted to the disk cache.
//!
//! Also here: the one-box Pieri coefficient in closed form and via the
//! inner-product oracle, the two-box (p_2) Pieri expansion, the closed-form
//! norm, and reexpansion of a Jack function at one parameter in the Jack
//! basis at another.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::cache::{self, ScalarCodec};
use crate::error::{Error, Result};
use crate::partition::{dominance_leq, partitions_of, Partition};
use crate::scalar::{Rational, Scalar};
use crate::symfunc::{transition_table, Basis, SymFunc};

/// Per-degree table of Jack functions at a fixed parameter: monomial-basis
/// rows (unitriangular), derived power-sum rows, and the norms
/// ⟨P_λ, P_λ⟩_b, all in canonical partition order.
pub struct JackTable<S> {
    pub degree: u32,
    pub param: S,
    parts: Vec<Partition>,
    monomial_rows: Vec<Vec<S>>,
    power_rows: Vec<Vec<S>>,
    norms: Vec<S>,
}

impl<S: Scalar> JackTable<S> {
    pub fn partitions(&self) -> &[Partition] {
        &self.parts
    }

    pub fn index_of(&self, lambda: &Partition) -> usize {
        self.parts
            .iter()
            .position(|p| p == lambda)
            .expect("partition of the table's degree")
    }

    /// m-basis coefficients of P_λ in canonical order.
    pub fn monomial_row(&self, lambda: &Partition) -> &[S] {
        &self.monomial_rows[self.index_of(lambda)]
    }

    /// p-basis coefficients of P_λ in canonical order.
    pub fn power_row(&self, lambda: &Partition) -> &[S] {
        &self.power_rows[self.index_of(lambda)]
    }

    pub fn norm(&self, lambda: &Partition) -> &S {
        &self.norms[self.index_of(lambda)]
    }

    /// P_λ as a power-sum-basis symmetric function with the given cap.
    pub fn power_sum_func(&self, lambda: &Partition, cap: u32) -> SymFunc<S> {
        let mut f = SymFunc::zero(Basis::PowerSum, cap);
        for (mu, c) in self.parts.iter().zip(self.power_row(lambda)) {
            f.set(mu.clone(), c.clone());
        }
        f
    }

    fn build(degree: u32, param: &S) -> Result<Self> {
        let parts = partitions_of(degree);
        let order: Vec<usize> = (0..parts.len()).rev().collect();
        Self::build_with_order(degree, param, &order)
    }

    /// Gram–Schmidt in the given processing order, which must be a linear
    /// extension of ascending dominance. The result is independent of the
    /// extension (projections onto dominance-incomparable directions vanish).
    fn build_with_order(degree: u32, param: &S, order: &[usize]) -> Result<Self> {
        let parts = partitions_of(degree);
        let n = parts.len();
        let table = transition_table(degree);
        // m_μ in the p basis: column μ of the m→p matrix
        let m_in_p: Vec<Vec<S>> = (0..n)
            .map(|col| {
                (0..n)
                    .map(|row| S::from_rational(table.m_to_p[(row, col)].clone()))
                    .collect()
            })
            .collect();
        let z_weights: Vec<S> = parts
            .iter()
            .map(|lam| {
                S::from_rational(Rational::from_integer(lam.z())) * param.pow(lam.length() as u32)
            })
            .collect();
        let dot = |f: &[S], g: &[S]| -> S {
            let mut acc = S::zero();
            for ((a, b), w) in f.iter().zip(g).zip(&z_weights) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a.clone() * b.clone() * w.clone();
                }
            }
            acc
        };

        let mut monomial_rows: Vec<Option<Vec<S>>> = vec![None; n];
        let mut power_rows: Vec<Option<Vec<S>>> = vec![None; n];
        let mut norms: Vec<Option<S>> = vec![None; n];
        let mut processed: Vec<usize> = Vec::with_capacity(n);

        for &idx in order {
            let mut mrow = vec![S::zero(); n];
            mrow[idx] = S::one();
            let mut prow = m_in_p[idx].clone();
            for &jdx in &processed {
                let pj = power_rows[jdx].as_ref().unwrap();
                let nj = norms[jdx].as_ref().unwrap();
                let overlap = dot(&prow, pj);
                if overlap.is_zero() {
                    continue;
                }
                let c = overlap.checked_div(nj).map_err(|_| Error::DegenerateParameter {
                    detail: format!(
                        "Jack norm of {} vanishes at parameter {param}",
                        parts[jdx]
                    ),
                })?;
                for (t, s) in prow.iter_mut().zip(pj) {
                    *t = t.clone() - c.clone() * s.clone();
                }
                let mj = monomial_rows[jdx].as_ref().unwrap().clone();
                for (t, s) in mrow.iter_mut().zip(&mj) {
                    *t = t.clone() - c.clone() * s.clone();
                }
            }
            norms[idx] = Some(dot(&prow, &prow));
            monomial_rows[idx] = Some(mrow);
            power_rows[idx] = Some(prow);
            processed.push(idx);
        }

        Ok(JackTable {
            degree,
            param: param.clone(),
            parts,
            monomial_rows: monomial_rows.into_iter().map(Option::unwrap).collect(),
            power_rows: power_rows.into_iter().map(Option::unwrap).collect(),
            norms: norms.into_iter().map(Option::unwrap).collect(),
        })
    }

    fn from_cached(degree: u32, param: &S, monomial_rows: Vec<Vec<S>>, norms: Vec<S>) -> Self {
        let parts = partitions_of(degree);
        let n = parts.len();
        let table = transition_table(degree);
        let power_rows: Vec<Vec<S>> = monomial_rows
            .iter()
            .map(|mrow| {
                (0..n)
                    .map(|row| {
                        let mut acc = S::zero();
                        for (col, c) in mrow.iter().enumerate() {
                            let entry = &table.m_to_p[(row, col)];
                            if !c.is_zero() && !num_traits::Zero::is_zero(entry) {
                                acc = acc + S::from_rational(entry.clone()) * c.clone();
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        JackTable {
            degree,
            param: param.clone(),
            parts,
            monomial_rows,
            power_rows,
            norms,
        }
    }
}

/// Lazily built, shared Jack tables keyed by (degree, parameter).
pub struct JackContext<S: Scalar> {
    tables: Mutex<BTreeMap<(u32, S), Arc<JackTable<S>>>>,
}

impl<S: Scalar + ScalarCodec> Default for JackContext<S> {
    fn default() -> Self {
        Self::new()
    }
}

impl<S: Scalar + ScalarCodec> JackContext<S> {
    pub fn new() -> Self {
        JackContext {
            tables: Mutex::new(BTreeMap::new()),
        }
    }

    pub fn table(&self, degree: u32, param: &S) -> Result<Arc<JackTable<S>>> {
        let key = (degree, param.clone());
        let mut guard = self.tables.lock().unwrap();
        if let Some(t) = guard.get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = match cache::load_jack::<S>(degree, param) {
            Some((rows, norms)) => JackTable::from_cached(degree, param, rows, norms),
            None => {
                let t = JackTable::build(degree, param)?;
                cache::store_jack(degree, param, &t.monomial_rows, &t.norms);
                t
            }
        };
        let table = Arc::new(table);
        guard.insert(key, Arc::clone(&table));
        Ok(table)
    }
}

/// P_λ^{(b)} in the monomial basis.
pub fn jack<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    lambda: &Partition,
    b: &S,
    cap: u32,
) -> Result<SymFunc<S>> {
    assert!(lambda.size() <= cap);
    let table = ctx.table(lambda.size(), b)?;
    let mut f = SymFunc::zero(Basis::Monomial, cap);
    for (mu, c) in table.partitions().iter().zip(table.monomial_row(lambda)) {
        f.set(mu.clone(), c.clone());
    }
    Ok(f)
}

/// Expands a power-sum or monomial value in the Jack basis at parameter `b`
/// by forward substitution against the unitriangular monomial rows.
pub fn expand_in_jack<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    f: &SymFunc<S>,
    b: &S,
) -> Result<SymFunc<S>> {
    let fm = match f.basis() {
        Basis::Monomial => f.clone(),
        Basis::PowerSum => f.p_to_m(),
        Basis::Jack(_) => panic!("input already in a Jack basis"),
    };
    let mut out = SymFunc::zero(Basis::Jack(b.clone()), f.cap());
    for d in 0..=fm.max_degree() {
        let vin = fm.degree_vector(d);
        if vin.iter().all(|c| c.is_zero()) {
            continue;
        }
        let table = ctx.table(d, b)?;
        let parts = table.partitions();
        let mut residual = vin;
        for (idx, lam) in parts.iter().enumerate() {
            let c = residual[idx].clone();
            if c.is_zero() {
                continue;
            }
            let row = &table.monomial_rows[idx];
            for (t, s) in residual.iter_mut().zip(row) {
                *t = t.clone() - c.clone() * s.clone();
            }
            out.set(lam.clone(), c);
        }
        assert!(
            residual.iter().all(|c| c.is_zero()),
            "unitriangular solve must terminate exactly"
        );
    }
    Ok(out)
}

/// Converts a Jack-basis value to the power-sum basis.
pub fn jack_to_power_sum<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    f: &SymFunc<S>,
) -> Result<SymFunc<S>> {
    let Basis::Jack(b) = f.basis().clone() else {
        panic!("Jack-basis input required")
    };
    let mut out = SymFunc::zero(Basis::PowerSum, f.cap());
    for (lam, c) in f.iter() {
        let table = ctx.table(lam.size(), &b)?;
        for (mu, pc) in table.partitions().iter().zip(table.power_row(lam)) {
            if !pc.is_zero() {
                out.add_to(mu.clone(), c.clone() * pc.clone());
            }
        }
    }
    Ok(out)
}

/// One-box Pieri coefficient ψ′_{λ/μ}(β) in closed form, for λ = μ plus a box
/// in row I. The Jack parameter of the matching expansion is β⁻¹.
pub fn pieri_p1_closed<S: Scalar>(lambda: &Partition, mu: &Partition, beta: &S) -> Result<S> {
    let cover = Error::NotOneBoxCover {
        larger: lambda.clone(),
        smaller: mu.clone(),
    };
    if lambda.size() != mu.size() + 1 {
        return Err(cover);
    }
    let rows = lambda.length();
    let mut row_added = None;
    for i in 1..=rows {
        match (lambda.part(i), mu.part(i)) {
            (l, m) if l == m => {}
            (l, m) if l == m + 1 && row_added.is_none() => row_added = Some(i),
            _ => return Err(cover),
        }
    }
    let Some(big_i) = row_added else {
        return Err(cover);
    };

    let mut num = S::one();
    let mut den = S::one();
    let ii = big_i as i64;
    for i in 1..big_i {
        let diff = (lambda.part(i) - lambda.part(big_i)) as i64;
        let i = i as i64;
        // (diff + β(I−i+1)) (diff + 1 + β(I−i−1)) / (diff + 1 + β(I−i)) (diff + β(I−i))
        num = num
            * lin(diff, ii - i + 1, beta)
            * lin(diff + 1, ii - i - 1, beta);
        den = den * lin(diff + 1, ii - i, beta) * lin(diff, ii - i, beta);
    }
    num.checked_div(&den).map_err(|_| Error::DegenerateParameter {
        detail: format!("Pieri denominator vanishes for {lambda}/{mu}"),
    })
}

/// a + cβ
fn lin<S: Scalar>(a: i64, c: i64, beta: &S) -> S {
    S::from_int(a) + S::from_int(c) * beta.clone()
}

/// Expansion coefficients of p_1 · P_μ^{(b)} in the Jack basis at `b`:
/// projections ⟨p_1 P_μ, P_λ⟩_b / ⟨P_λ, P_λ⟩_b, realized by the exact
/// unitriangular solve. Support is exactly the one-box covers of μ.
pub fn pieri_p1_oracle<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    mu: &Partition,
    b: &S,
) -> Result<BTreeMap<Partition, S>> {
    pieri_pk(ctx, mu, b, 1)
}

/// Expansion coefficients of p_2 · P_ν^{(b)} in the Jack basis at `b`.
/// No closed form is implemented; this is the inner-product route.
pub fn pieri_p2<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    nu: &Partition,
    b: &S,
) -> Result<BTreeMap<Partition, S>> {
    pieri_pk(ctx, nu, b, 2)
}

fn pieri_pk<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    mu: &Partition,
    b: &S,
    k: u32,
) -> Result<BTreeMap<Partition, S>> {
    let cap = mu.size() + k;
    let table = ctx.table(mu.size(), b)?;
    let product = table
        .power_sum_func(mu, cap)
        .multiply_by_power_sum(k)
        .expect("cap chosen to fit");
    let expanded = expand_in_jack(ctx, &product, b)?;
    Ok(expanded
        .iter()
        .map(|(lam, c)| (lam.clone(), c.clone()))
        .collect())
}

/// Closed-form Jack norm N_ν(b) = Π_{s∈ν} (b(a(s)+1) + ℓ(s)) / (b·a(s) + ℓ(s) + 1),
/// equal to ⟨P_ν^{(b)}, P_ν^{(b)}⟩_b.
pub fn jack_norm_closed<S: Scalar>(nu: &Partition, b: &S) -> Result<S> {
    let mut num = S::one();
    let mut den = S::one();
    for (i, j) in nu.boxes() {
        let (arm, leg) = nu.arm_leg(i, j);
        num = num * (b.clone() * S::from_int(arm + 1) + S::from_int(leg));
        den = den * (b.clone() * S::from_int(arm) + S::from_int(leg + 1));
    }
    num.checked_div(&den).map_err(|_| Error::DegenerateParameter {
        detail: format!("closed-form norm denominator vanishes for {nu} at {b}"),
    })
}

/// Reexpansion P_λ^{(b_from)} = Σ_ν γ^ν_λ P_ν^{(b_to)}.
pub fn jack_reexpand<S: Scalar + ScalarCodec>(
    ctx: &JackContext<S>,
    lambda: &Partition,
    b_from: &S,
    b_to: &S,
) -> Result<BTreeMap<Partition, S>> {
    let f = jack(ctx, lambda, b_from, lambda.size())?;
    let expanded = expand_in_jack(ctx, &f, b_to)?;
    Ok(expanded
        .iter()
        .map(|(nu, c)| (nu.clone(), c.clone()))
        .collect())
}

#[cfg(test)]
pub(crate) fn build_with_order<S: Scalar>(
    degree: u32,
    param: &S,
    order: &[usize],
) -> Result<JackTable<S>> {
    JackTable::build_with_order(degree, param, order)
}
