//! Multigraded Betti numbers of monomial ideals.
//!
//! `β_{i,a}(I)` is the rank of `H̃_{i-1}(K^a)` over the rationals, where the
//! upper Koszul complex `K^a` consists of the square-free `c ≤ a` with
//! `x^{a-c} ∈ I`. Only multidegrees in the lcm lattice of the generators
//! can carry nonzero Betti numbers. `K^a` is generated by the facets
//! `{k : g_k < a_k}` for the generators `g | a`.

use std::collections::{BTreeMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SplitMonomial, VarRef};
use crate::simplicial::reduced_homology;

const MAX_VARS: usize = 64;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(into = "BTreeMap<String, u64>")]
pub struct BettiTable {
    entries: BTreeMap<(usize, SplitMonomial), u64>,
}

impl BettiTable {
    pub fn get(&self, i: usize, degree: &SplitMonomial) -> u64 {
        self.entries.get(&(i, degree.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, SplitMonomial), u64> {
        &self.entries
    }

    /// Total Betti numbers `β_0, β_1, ...`.
    pub fn totals(&self) -> Vec<u64> {
        let mut out: Vec<u64> = Vec::new();
        for (&(i, _), &r) in &self.entries {
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += r;
        }
        out
    }

    /// Coarsely graded Betti numbers keyed by `(i, total degree)`.
    pub fn graded_totals(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for ((i, a), &r) in &self.entries {
            *out.entry((*i, a.degree())).or_insert(0) += r;
        }
        out
    }

    /// `Σ (-1)^i β_i`; equals 1 for every nonzero proper ideal.
    pub fn euler_characteristic(&self) -> i64 {
        self.totals()
            .iter()
            .enumerate()
            .map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl From<BettiTable> for BTreeMap<String, u64> {
    fn from(t: BettiTable) -> Self {
        t.entries
            .into_iter()
            .map(|((i, a), r)| (format!("{i}:{a}"), r))
            .collect()
    }
}

/// Multigraded Betti table of `I` (as a module, so `β_0` counts generators).
pub fn betti_table(ideal: &MonomialIdeal) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::NotProper);
    }
    let vars: Vec<VarRef> = {
        let set: std::collections::BTreeSet<VarRef> =
            ideal.generators().iter().flat_map(|g| g.support()).collect();
        set.into_iter().collect()
    };
    if vars.len() > MAX_VARS {
        return Err(Error::TooManyVariables {
            found: vars.len(),
            max: MAX_VARS,
        });
    }
    let pos = |v: &VarRef| vars.binary_search(v).expect("support variable");

    let ranks: Vec<(SplitMonomial, Vec<usize>)> = if ideal.is_square_free() {
        let gens: Vec<u64> = ideal
            .generators()
            .iter()
            .map(|g| g.support().fold(0u64, |m, v| m | 1 << pos(&v)))
            .collect();
        let lattice = mask_lattice(&gens);
        lattice
            .par_iter()
            .map(|&b| {
                let facets: Vec<u64> = gens.iter().filter(|&&g| g & b == g).map(|&g| b & !g).collect();
                let deg = SplitMonomial::from_vars((0..vars.len()).filter(|&k| b >> k & 1 == 1).map(|k| vars[k]));
                (deg, reduced_homology(&facets))
            })
            .collect()
    } else {
        let gens: Vec<Vec<u32>> = ideal
            .generators()
            .iter()
            .map(|g| {
                let mut e = vec![0u32; vars.len()];
                for &(v, x) in g.terms() {
                    e[pos(&v)] = x;
                }
                e
            })
            .collect();
        let lattice = dense_lattice(&gens);
        lattice
            .par_iter()
            .map(|b| {
                let facets: Vec<u64> = gens
                    .iter()
                    .filter(|g| g.iter().zip(b).all(|(x, y)| x <= y))
                    .map(|g| {
                        g.iter()
                            .zip(b)
                            .enumerate()
                            .filter(|(_, (x, y))| x < y)
                            .fold(0u64, |m, (k, _)| m | 1 << k)
                    })
                    .collect();
                let deg = SplitMonomial::from_terms(b.iter().enumerate().map(|(k, &e)| (vars[k], e)));
                (deg, reduced_homology(&facets))
            })
            .collect()
    };

    let mut entries = BTreeMap::new();
    for (deg, h) in ranks {
        for (i, &r) in h.iter().enumerate() {
            if r > 0 {
                entries.insert((i, deg.clone()), r as u64);
            }
        }
    }
    Ok(BettiTable { entries })
}

fn mask_lattice(gens: &[u64]) -> Vec<u64> {
    let mut seen: HashSet<u64> = gens.iter().copied().collect();
    let mut frontier: Vec<u64> = gens.to_vec();
    while let Some(m) = frontier.pop() {
        for &g in gens {
            let l = m | g;
            if seen.insert(l) {
                frontier.push(l);
            }
        }
    }
    let mut out: Vec<u64> = seen.into_iter().collect();
    out.sort_unstable();
    out
}

fn dense_lattice(gens: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut seen: HashSet<Vec<u32>> = gens.iter().cloned().collect();
    let mut frontier: Vec<Vec<u32>> = gens.to_vec();
    while let Some(m) = frontier.pop() {
        for g in gens {
            let l: Vec<u32> = m.iter().zip(g).map(|(a, b)| *a.max(b)).collect();
            if !seen.contains(&l) {
                seen.insert(l.clone());
                frontier.push(l);
            }
        }
    }
    let mut out: Vec<Vec<u32>> = seen.into_iter().collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{maximal_ideal_power, squarefree_power};

    #[test]
    fn two_variables() {
        let t = betti_table(&squarefree_power(2, 1)).unwrap();
        assert_eq!(t.totals(), vec![2, 1]);
        let xy = SplitMonomial::from_vars([VarRef::plain(1), VarRef::plain(2)]);
        assert_eq!(t.get(1, &xy), 1);
    }

    #[test]
    fn cube_of_maximal_ideal_square() {
        let t = betti_table(&maximal_ideal_power(3, 2)).unwrap();
        assert_eq!(t.totals(), vec![6, 8, 3]);
        assert_eq!(t.euler_characteristic(), 1);
    }

    #[test]
    fn edge_ideal_of_triangle() {
        let t = betti_table(&squarefree_power(3, 2)).unwrap();
        assert_eq!(t.totals(), vec![3, 2]);
    }

    #[test]
    fn unit_rejected_zero_empty() {
        let unit = MonomialIdeal::minimalize(vec![SplitMonomial::one()]);
        assert_eq!(betti_table(&unit), Err(Error::NotProper));
        assert!(betti_table(&MonomialIdeal::zero()).unwrap().totals().is_empty());
    }

    #[test]
    fn json_keys() {
        let t = betti_table(&squarefree_power(2, 1)).unwrap();
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(v["1:x1_1*x2_1"], 1);
        assert_eq!(v["0:x1_1"], 1);
    }
}
