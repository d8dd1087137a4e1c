//! Alexander duality for square-free monomial ideals.
//!
//! The dual of `I = (m_{σ_1}, ..., m_{σ_r})` over a fixed ambient variable
//! set is generated by the monomials of the inclusion-minimal transversals
//! of the supports `σ_j`. Transversals are grown generator by generator
//! (Berge's procedure) and pruned to an antichain after every step.

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SplitMonomial, VarRef};

const MAX_VARS: usize = 128;

/// Alexander dual over the ideal's ambient variable set.
///
/// The zero ideal maps to the zero ideal on the same ambient set; the unit
/// ideal and non-square-free input are rejected.
pub fn alexander_dual(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    if !ideal.is_square_free() {
        return Err(Error::NotSquareFree(ideal.to_string()));
    }
    if ideal.is_unit() {
        return Err(Error::NotProper);
    }
    let vars: Vec<VarRef> = ideal.ambient().iter().copied().collect();
    if vars.len() > MAX_VARS {
        return Err(Error::TooManyVariables {
            found: vars.len(),
            max: MAX_VARS,
        });
    }
    if ideal.is_zero() {
        return Ok(MonomialIdeal::zero().with_ambient(vars));
    }
    let supports: Vec<u128> = ideal
        .generators()
        .iter()
        .map(|g| {
            g.support().fold(0u128, |m, v| {
                m | 1u128 << vars.binary_search(&v).expect("support within ambient")
            })
        })
        .collect();

    let transversals = minimal_transversals(&supports);
    let gens = transversals.into_iter().map(|t| {
        SplitMonomial::from_vars((0..vars.len()).filter(|&k| t >> k & 1 == 1).map(|k| vars[k]))
    });
    Ok(MonomialIdeal::minimalize(gens).with_ambient(vars.iter().copied()))
}

/// Inclusion-minimal sets meeting every set in `family`.
pub fn minimal_transversals(family: &[u128]) -> Vec<u128> {
    let mut current: Vec<u128> = vec![0];
    for &edge in family {
        let mut next: Vec<u128> = Vec::with_capacity(current.len() * 2);
        for &t in &current {
            if t & edge != 0 {
                next.push(t);
            } else {
                let mut rest = edge;
                while rest != 0 {
                    let bit = rest & rest.wrapping_neg();
                    next.push(t | bit);
                    rest ^= bit;
                }
            }
        }
        current = antichain(next);
    }
    current
}

fn antichain(mut sets: Vec<u128>) -> Vec<u128> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u128> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept
}
