//! Coarse Hilbert series numerators and the regular-sequence test for
//! polarizations.
//!
//! For a monomial ideal `I` in `N` variables the Hilbert series of `S/I` is
//! `K(t) / (1 - t)^N`; `K` does not depend on `N`. It is computed by
//! splitting on a variable `x` that occurs in at least two generators,
//!
//! ```text
//! K(I) = K(I + (x)) + t * K(I : x),
//! ```
//!
//! until the generators are pairwise coprime, where `K = ∏ (1 - t^{deg g})`.
//!
//! A candidate `Ĩ` depolarizing bijectively onto `I` is a polarization iff
//! the variable differences form a regular sequence on `S̃/Ĩ`, which holds
//! iff `K(Ĩ) = K(I)`: every zero divisor met along the sequence adds a
//! series with positive lowest coefficient to the difference.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, VarRef};

/// Integer polynomial in `t`, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HilbertNumerator(Vec<i64>);

impl HilbertNumerator {
    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        HilbertNumerator(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn eval(&self, t: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * t + c)
    }
}

impl fmt::Display for HilbertNumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            first = false;
            match (k, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (k, 1) => write!(f, "t^{k}")?,
                (k, m) => write!(f, "{m}t^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct Poly(Vec<i64>);

impl Poly {
    fn one() -> Self {
        Poly(vec![1])
    }

    fn add_shifted(&mut self, other: &Poly, shift: usize) {
        if self.0.len() < other.0.len() + shift {
            self.0.resize(other.0.len() + shift, 0);
        }
        for (k, &c) in other.0.iter().enumerate() {
            self.0[k + shift] += c;
        }
    }

    /// Multiplies by `1 - t^k`.
    fn times_one_minus(&mut self, k: usize) {
        let orig = self.0.clone();
        self.0.resize(orig.len() + k, 0);
        for (j, &c) in orig.iter().enumerate() {
            self.0[j + k] -= c;
        }
    }
}

/// Hilbert numerator of `S/I` by pivot splitting.
pub fn hilbert_numerator(ideal: &MonomialIdeal) -> Result<HilbertNumerator> {
    if ideal.is_unit() {
        return Err(Error::NotProper);
    }
    let vars: Vec<VarRef> = ideal.ambient().iter().copied().collect();
    let poly = if ideal.is_square_free() && vars.len() <= 128 {
        let gens: Vec<u128> = ideal
            .generators()
            .iter()
            .map(|g| {
                g.support()
                    .fold(0u128, |m, v| m | 1u128 << vars.binary_search(&v).unwrap())
            })
            .collect();
        squarefree_numerator(gens)
    } else {
        let gens: Vec<Vec<u32>> = ideal
            .generators()
            .iter()
            .map(|g| {
                let mut e = vec![0u32; vars.len()];
                for &(v, x) in g.terms() {
                    e[vars.binary_search(&v).unwrap()] = x;
                }
                e
            })
            .collect();
        dense_numerator(gens, vars.len())
    };
    Ok(HilbertNumerator::from_coeffs(poly.0))
}

fn squarefree_numerator(gens: Vec<u128>) -> Poly {
    if gens.is_empty() {
        return Poly::one();
    }
    // variable occurring most often
    let mut counts = [0u32; 128];
    let mut union = 0u128;
    let mut shared = 0u128;
    for &g in &gens {
        shared |= union & g;
        union |= g;
        let mut rest = g;
        while rest != 0 {
            counts[rest.trailing_zeros() as usize] += 1;
            rest &= rest - 1;
        }
    }
    if shared == 0 {
        let mut p = Poly::one();
        for &g in &gens {
            p.times_one_minus(g.count_ones() as usize);
        }
        return p;
    }
    let pivot = (0..128)
        .filter(|&k| shared >> k & 1 == 1)
        .max_by_key(|&k| (counts[k], std::cmp::Reverse(k)))
        .unwrap();
    let bit = 1u128 << pivot;

    let mut sum: Vec<u128> = gens.iter().copied().filter(|g| g & bit == 0).collect();
    sum.push(bit);
    let quotient = minimal_masks(gens.iter().map(|g| g & !bit).collect());

    let mut p = squarefree_numerator(sum);
    let q = squarefree_numerator(quotient);
    p.add_shifted(&q, 1);
    p
}

fn minimal_masks(mut gens: Vec<u128>) -> Vec<u128> {
    gens.sort_by_key(|g| (g.count_ones(), *g));
    gens.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|&k| k & !g == 0) {
            kept.push(g);
        }
    }
    kept
}

fn dense_numerator(gens: Vec<Vec<u32>>, nvars: usize) -> Poly {
    if gens.is_empty() {
        return Poly::one();
    }
    let mut counts = vec![0u32; nvars];
    for g in &gens {
        for (k, &e) in g.iter().enumerate() {
            if e > 0 {
                counts[k] += 1;
            }
        }
    }
    let pivot = (0..nvars)
        .filter(|&k| counts[k] >= 2)
        .max_by_key(|&k| (counts[k], std::cmp::Reverse(k)));
    let Some(pivot) = pivot else {
        let mut p = Poly::one();
        for g in &gens {
            p.times_one_minus(g.iter().sum::<u32>() as usize);
        }
        return p;
    };

    let mut unit = vec![0u32; nvars];
    unit[pivot] = 1;
    let mut sum: Vec<Vec<u32>> = gens.iter().filter(|g| g[pivot] == 0).cloned().collect();
    sum.push(unit);
    let quotient: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[pivot] = h[pivot].saturating_sub(1);
            h
        })
        .collect();

    let mut p = dense_numerator(minimal_dense(sum), nvars);
    let q = dense_numerator(minimal_dense(quotient), nvars);
    p.add_shifted(&q, 1);
    p
}

fn minimal_dense(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| g.iter().sum::<u32>());
    let mut kept: Vec<Vec<u32>> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.iter().zip(&g).all(|(a, b)| a <= b)) {
            kept.push(g);
        }
    }
    kept
}

/// Which condition rejected a polarization candidate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// The depolarized generators differ from the target's.
    DepolarizationMismatch,
    /// Two generators collapse, or an image is not a minimal generator.
    NotBijective,
    /// The Hilbert numerators differ: some difference is a zero divisor.
    NumeratorMismatch,
    /// Candidate or target is the unit ideal.
    NotProper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizationCheck {
    pub ok: bool,
    pub reason: Option<Rejection>,
    pub numerator_candidate: Option<HilbertNumerator>,
    pub numerator_target: Option<HilbertNumerator>,
    pub square_free: bool,
}

/// Decides whether `candidate` is a polarization of `target`.
pub fn is_polarization(candidate: &MonomialIdeal, target: &MonomialIdeal) -> PolarizationCheck {
    let square_free = candidate.is_square_free();
    let reject = |reason, nc, nt| PolarizationCheck {
        ok: false,
        reason: Some(reason),
        numerator_candidate: nc,
        numerator_target: nt,
        square_free,
    };
    let (Ok(nc), Ok(nt)) = (hilbert_numerator(candidate), hilbert_numerator(target)) else {
        return reject(Rejection::NotProper, None, None);
    };
    let dep = candidate.depolarize();
    if dep.ideal.generators() != target.depolarize().ideal.generators() {
        return reject(Rejection::DepolarizationMismatch, Some(nc), Some(nt));
    }
    if !dep.bijective {
        return reject(Rejection::NotBijective, Some(nc), Some(nt));
    }
    if nc != nt {
        return reject(Rejection::NumeratorMismatch, Some(nc), Some(nt));
    }
    PolarizationCheck {
        ok: true,
        reason: None,
        numerator_candidate: Some(nc),
        numerator_target: Some(nt),
        square_free,
    }
}

/// Histogram of generator degrees; handy for reports.
pub fn degree_profile(ideal: &MonomialIdeal) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for g in ideal.generators() {
        *out.entry(g.degree()).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{box_polarization, maximal_ideal_power, squarefree_power, SplitMonomial};

    fn m(vars: &[(u32, u32)]) -> SplitMonomial {
        SplitMonomial::from_vars(vars.iter().map(|&(b, c)| VarRef::new(b, c).unwrap()))
    }

    fn ideal(gens: Vec<SplitMonomial>) -> MonomialIdeal {
        MonomialIdeal::minimalize(gens)
    }

    /// Inclusion-exclusion over generator subsets.
    fn by_subsets(i: &MonomialIdeal) -> HilbertNumerator {
        let g = i.generators();
        let mut c = vec![0i64; 64];
        for s in 0u32..(1 << g.len()) {
            let l = (0..g.len())
                .filter(|&k| s >> k & 1 == 1)
                .fold(SplitMonomial::one(), |a, k| a.lcm(&g[k]));
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            c[l.degree() as usize] += sign;
        }
        HilbertNumerator::from_coeffs(c)
    }

    #[test]
    fn principal_ideal() {
        let i = ideal(vec![m(&[(1, 1)])]);
        assert_eq!(hilbert_numerator(&i).unwrap().coeffs(), &[1, -1]);
    }

    #[test]
    fn square_of_two_variables() {
        let i = maximal_ideal_power(2, 2);
        let n = hilbert_numerator(&i).unwrap();
        assert_eq!(n, by_subsets(&i));
        assert_eq!(n.coeffs(), &[1, 0, -3, 2]);
    }

    #[test]
    fn non_polarization_has_different_numerator() {
        // (xy, xz) versus (x^(1) y, x^(2) z)
        let target = ideal(vec![m(&[(1, 1), (2, 1)]), m(&[(1, 1), (3, 1)])]);
        let cand = ideal(vec![m(&[(1, 1), (2, 1)]), m(&[(1, 2), (3, 1)])]);
        assert_eq!(hilbert_numerator(&target).unwrap().coeffs(), &[1, 0, -2, 1]);
        assert_eq!(hilbert_numerator(&cand).unwrap().coeffs(), &[1, 0, -2, 0, 1]);
        assert_eq!(by_subsets(&cand), hilbert_numerator(&cand).unwrap());
        let check = is_polarization(&cand, &target);
        assert!(!check.ok);
        assert_eq!(check.reason, Some(Rejection::NumeratorMismatch));
    }

    #[test]
    fn unit_ideal_rejected() {
        let unit = ideal(vec![SplitMonomial::one()]);
        assert_eq!(hilbert_numerator(&unit), Err(Error::NotProper));
        assert_eq!(
            is_polarization(&unit, &unit).reason,
            Some(Rejection::NotProper)
        );
    }

    #[test]
    fn zero_ideal_numerator_is_one() {
        assert_eq!(hilbert_numerator(&MonomialIdeal::zero()).unwrap().coeffs(), &[1]);
    }

    #[test]
    fn pure_power_split_once() {
        let target = ideal(vec![SplitMonomial::from_terms([(VarRef::plain(1), 2)])]);
        let cand = ideal(vec![m(&[(1, 1), (1, 2)])]);
        assert!(is_polarization(&cand, &target).ok);
    }

    #[test]
    fn box_polarizations_are_polarizations() {
        for n in 1..=4 {
            for d in 1..=3 {
                let check = is_polarization(&box_polarization(n, d), &maximal_ideal_power(n, d));
                assert!(check.ok, "n={n} d={d}: {check:?}");
            }
        }
    }

    #[test]
    fn collapse_is_not_bijective() {
        let target = ideal(vec![m(&[(1, 1), (2, 1)])]);
        let cand = ideal(vec![m(&[(1, 1), (2, 1)]), m(&[(1, 2), (2, 1)])]);
        assert_eq!(
            is_polarization(&cand, &target).reason,
            Some(Rejection::NotBijective)
        );
        let other = ideal(vec![m(&[(1, 1)])]);
        assert_eq!(
            is_polarization(&other, &target).reason,
            Some(Rejection::DepolarizationMismatch)
        );
    }

    #[test]
    fn numerator_vanishes_at_one() {
        for n in 2..=6 {
            for d in 1..=n {
                let k = hilbert_numerator(&squarefree_power(n, d)).unwrap();
                assert_eq!(k.eval(1), 0, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn dense_and_squarefree_paths_agree() {
        let i = squarefree_power(5, 3);
        let vars: Vec<VarRef> = i.ambient().iter().copied().collect();
        let dense: Vec<Vec<u32>> = i
            .generators()
            .iter()
            .map(|g| vars.iter().map(|&v| g.exponent(v)).collect())
            .collect();
        let p = dense_numerator(dense, vars.len());
        assert_eq!(HilbertNumerator::from_coeffs(p.0), hilbert_numerator(&i).unwrap());
    }

    #[test]
    fn display() {
        let k = HilbertNumerator::from_coeffs(vec![1, 0, -3, 2]);
        assert_eq!(k.to_string(), "1 - 3t^2 + 2t^3");
    }
}
