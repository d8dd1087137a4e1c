//! Canonical relabeling of monomial ideals by colour refinement with
//! individualization.
//!
//! Variables are coloured (by base, or uniformly), colours are refined by
//! generator incidence until stable, and remaining ties are broken by
//! trying every member of the first non-singleton cell. Every leaf of that
//! search is a full ordering of the variables; the smallest relabeled
//! generator list over all leaves is the canonical form. Refinement is
//! equivariant, so isomorphic inputs explore the same set of encodings.

use std::collections::HashMap;

use crate::ideals::{MonomialIdeal, SplitMonomial, VarRef};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Only copies of the same base may be permuted.
    PerBase,
    /// Any bijection of the ambient variables.
    AllVariables,
}

struct Structure {
    vars: Vec<VarRef>,
    gens: Vec<Vec<(usize, u32)>>,
    incidence: Vec<Vec<(usize, u32)>>,
    mode: Mode,
}

pub(crate) fn canonical(ideal: &MonomialIdeal, mode: Mode) -> MonomialIdeal {
    let vars: Vec<VarRef> = ideal.ambient().iter().copied().collect();
    let index: HashMap<VarRef, usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let gens: Vec<Vec<(usize, u32)>> = ideal
        .generators()
        .iter()
        .map(|g| g.terms().iter().map(|&(v, e)| (index[&v], e)).collect())
        .collect();
    let mut incidence = vec![Vec::new(); vars.len()];
    for (gi, g) in gens.iter().enumerate() {
        for &(v, e) in g {
            incidence[v].push((gi, e));
        }
    }
    let st = Structure {
        vars,
        gens,
        incidence,
        mode,
    };

    let initial: Vec<u32> = match mode {
        Mode::PerBase => st.vars.iter().map(|v| v.base).collect(),
        Mode::AllVariables => vec![0; st.vars.len()],
    };
    let mut colors = rank(&initial);
    st.refine(&mut colors);

    let mut best: Option<(Vec<SplitMonomial>, Vec<VarRef>)> = None;
    st.search(colors, &mut best);
    let (gens, labels) = best.unwrap_or_default();
    MonomialIdeal::minimalize(gens).with_ambient(labels)
}

/// Dense ranks of the values, preserving order.
fn rank<T: Ord + Clone>(values: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    values
        .iter()
        .map(|v| sorted.binary_search(v).expect("present") as u32)
        .collect()
}

fn count_distinct(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

impl Structure {
    fn refine(&self, colors: &mut Vec<u32>) {
        loop {
            let before = count_distinct(colors);
            let gen_sigs: Vec<Vec<(u32, u32)>> = self
                .gens
                .iter()
                .map(|g| {
                    let mut s: Vec<(u32, u32)> = g.iter().map(|&(v, e)| (colors[v], e)).collect();
                    s.sort_unstable();
                    s
                })
                .collect();
            let gen_ids = rank(&gen_sigs);
            let var_sigs: Vec<(u32, Vec<(u32, u32)>)> = (0..self.vars.len())
                .map(|v| {
                    let mut s: Vec<(u32, u32)> = self.incidence[v]
                        .iter()
                        .map(|&(g, e)| (gen_ids[g], e))
                        .collect();
                    s.sort_unstable();
                    (colors[v], s)
                })
                .collect();
            let next = rank(&var_sigs);
            let after = count_distinct(&next);
            *colors = next;
            if after == before {
                return;
            }
        }
    }

    fn search(&self, colors: Vec<u32>, best: &mut Option<(Vec<SplitMonomial>, Vec<VarRef>)>) {
        let n_colors = count_distinct(&colors);
        if n_colors == self.vars.len() {
            let leaf = self.relabel(&colors);
            if best.as_ref().is_none_or(|(b, _)| leaf.0 < *b) {
                *best = Some(leaf);
            }
            return;
        }
        let mut sizes = vec![0usize; n_colors];
        for &c in &colors {
            sizes[c as usize] += 1;
        }
        let target = sizes.iter().position(|&s| s > 1).expect("non-discrete") as u32;
        let members: Vec<usize> = (0..colors.len()).filter(|&v| colors[v] == target).collect();
        for &v in &members {
            let split: Vec<(u32, u8)> = colors
                .iter()
                .enumerate()
                .map(|(w, &c)| (c, u8::from(!(c == target && w == v))))
                .collect();
            let mut next = rank(&split);
            self.refine(&mut next);
            self.search(next, best);
        }
    }

    fn relabel(&self, colors: &[u32]) -> (Vec<SplitMonomial>, Vec<VarRef>) {
        let labels: Vec<VarRef> = match self.mode {
            Mode::AllVariables => colors.iter().map(|&c| VarRef::raw(c + 1, 1)).collect(),
            Mode::PerBase => {
                let mut order: Vec<usize> = (0..self.vars.len()).collect();
                order.sort_by_key(|&v| colors[v]);
                let mut next_copy: HashMap<u32, u32> = HashMap::new();
                let mut labels = vec![VarRef::raw(1, 1); self.vars.len()];
                for v in order {
                    let base = self.vars[v].base;
                    let c = next_copy.entry(base).or_insert(0);
                    *c += 1;
                    labels[v] = VarRef::raw(base, *c);
                }
                labels
            }
        };
        let mut gens: Vec<SplitMonomial> = self
            .gens
            .iter()
            .map(|g| SplitMonomial::from_terms(g.iter().map(|&(v, e)| (labels[v], e))))
            .collect();
        gens.sort();
        (gens, labels)
    }
}

#[cfg(test)]
mod tests {
    use crate::ideals::squarefree_power;

    #[test]
    fn symmetric_ideal_in_all_variable_mode() {
        let i = squarefree_power(4, 2);
        let f = i.isomorphism_form();
        assert_eq!(f.len(), 6);
        assert_eq!(f.isomorphism_form(), f);
    }

    #[test]
    fn per_base_mode_preserves_plain_ideals() {
        let i = squarefree_power(4, 3);
        assert_eq!(i.canonical_form(), i);
    }
}
