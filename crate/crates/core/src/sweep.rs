//! Exhaustive and sampled sweeps that cross-check the combinatorial
//! constructions against the algebraic oracles.
//!
//! Every sweep evaluates items in parallel and assembles its report in
//! index order, so output is independent of scheduling.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::betti_table;
use crate::cellres::supports_resolution;
use crate::duality::alexander_dual;
use crate::error::{Error, Result};
use crate::hilbert::{hilbert_numerator, is_polarization, HilbertNumerator};
use crate::ideals::{maximal_ideal_power, squarefree_power, MonomialIdeal, SplitMonomial, VarRef};
use crate::partitions::{
    d2_criterion, dual_partition, is_maximal, partition_to_ideal, sample_family, satisfies_criterion, FamilySpace,
    PartitionFamily,
};
use crate::trees::{enumerate_spanning_trees, linear_relation_graph, tree_dual, tree_edges_as_generators, tree_polarization};
use crate::trianglegrid::{all_choices, build_delta_complex, polarized_generators, TriangleChoice};

/// Graded Betti totals keyed `"i,degree"`.
pub type GradedBetti = BTreeMap<(usize, u32), u64>;

fn graded_betti(ideal: &MonomialIdeal) -> Result<GradedBetti> {
    Ok(betti_table(ideal)?.graded_totals())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PartitionSweepOptions {
    pub duality: bool,
    pub betti: bool,
    /// Cap on witnesses kept per failure class.
    pub max_witnesses: usize,
}

impl Default for PartitionSweepOptions {
    fn default() -> Self {
        PartitionSweepOptions {
            duality: true,
            betti: true,
            max_witnesses: 5,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionDisagreement {
    pub family: PartitionFamily,
    pub criterion: bool,
    pub hilbert: bool,
    pub numerator: HilbertNumerator,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PartitionSweepReport {
    pub n: u32,
    pub d: u32,
    pub families_checked: usize,
    pub criterion_pass: usize,
    pub hilbert_pass: usize,
    /// Families where the criterion and the Hilbert oracle differ.
    pub criterion_disagreements: usize,
    pub criterion_witnesses: Vec<CriterionDisagreement>,
    /// Passing families with `D(pol P) ≅ pol(dual P)` per-base.
    pub duality_ok: usize,
    /// Of those, how many agree without any relabeling.
    pub duality_exact: usize,
    pub duality_failures: Vec<PartitionFamily>,
    /// Families where `P` and `dual P` get different criterion verdicts.
    pub dual_criterion_disagreements: usize,
    /// Disagreements between the general and the `d = 2` criterion.
    pub d2_disagreements: Option<usize>,
    /// Distinct (up to variable renaming) passing ideals whose Betti
    /// numbers were compared with those of `I_d`.
    pub betti_classes: usize,
    pub betti_mismatches: usize,
    pub betti_witnesses: Vec<MonomialIdeal>,
    /// Sum of all failure counts; zero means every check held.
    pub disagreements: usize,
}

struct Outcome {
    criterion: bool,
    hilbert: bool,
    numerator: HilbertNumerator,
    dual: Option<(bool, bool)>,
    dual_criterion: bool,
    d2: Option<bool>,
}

fn evaluate_family(p: &PartitionFamily, target: &HilbertNumerator, opts: &PartitionSweepOptions) -> Outcome {
    let criterion = satisfies_criterion(p).ok;
    let ideal = partition_to_ideal(p);
    let numerator = hilbert_numerator(&ideal).expect("partition ideals are proper");
    let hilbert = &numerator == target;
    let dp = dual_partition(p);
    let dual = (opts.duality && (criterion || hilbert)).then(|| {
        let lhs = alexander_dual(&ideal).expect("square-free proper ideal");
        let rhs = partition_to_ideal(&dp);
        let exact = lhs == rhs;
        (exact || lhs.canonical_form() == rhs.canonical_form(), exact)
    });
    Outcome {
        criterion,
        hilbert,
        numerator,
        dual,
        dual_criterion: satisfies_criterion(&dp).ok,
        d2: (p.d() == 2).then(|| d2_criterion(p).expect("d = 2")),
    }
}

fn run_partition_sweep(
    n: u32,
    d: u32,
    families: impl IndexedParallelIterator<Item = PartitionFamily>,
    opts: PartitionSweepOptions,
) -> Result<PartitionSweepReport> {
    let target_ideal = squarefree_power(n, d);
    let target = hilbert_numerator(&target_ideal)?;
    let outcomes: Vec<(PartitionFamily, Outcome)> = families
        .map(|p| {
            let o = evaluate_family(&p, &target, &opts);
            (p, o)
        })
        .collect();

    let mut r = PartitionSweepReport {
        n,
        d,
        families_checked: outcomes.len(),
        ..Default::default()
    };
    let cap = opts.max_witnesses;
    let mut passing = Vec::new();
    for (p, o) in &outcomes {
        r.criterion_pass += o.criterion as usize;
        r.hilbert_pass += o.hilbert as usize;
        if o.criterion != o.hilbert {
            r.criterion_disagreements += 1;
            if r.criterion_witnesses.len() < cap {
                r.criterion_witnesses.push(CriterionDisagreement {
                    family: p.clone(),
                    criterion: o.criterion,
                    hilbert: o.hilbert,
                    numerator: o.numerator.clone(),
                });
            }
        }
        if o.criterion != o.dual_criterion {
            r.dual_criterion_disagreements += 1;
        }
        if let Some(d2) = o.d2 {
            *r.d2_disagreements.get_or_insert(0) += (d2 != o.criterion) as usize;
        }
        if o.criterion {
            if let Some((ok, exact)) = o.dual {
                r.duality_ok += ok as usize;
                r.duality_exact += exact as usize;
                if !ok && r.duality_failures.len() < cap {
                    r.duality_failures.push(p.clone());
                }
            }
        }
        if o.hilbert {
            passing.push(p);
        }
    }
    let duality_failed = if opts.duality { r.criterion_pass - r.duality_ok } else { 0 };

    if opts.betti && !passing.is_empty() {
        let expected = graded_betti(&target_ideal)?;
        let classes: BTreeSet<MonomialIdeal> = passing
            .par_iter()
            .map(|p| partition_to_ideal(p).isomorphism_form())
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        let classes: Vec<MonomialIdeal> = classes.into_iter().collect();
        let bad: Vec<MonomialIdeal> = classes
            .par_iter()
            .filter(|i| graded_betti(i).map_or(true, |b| b != expected))
            .cloned()
            .collect();
        r.betti_classes = classes.len();
        r.betti_mismatches = bad.len();
        r.betti_witnesses = bad.into_iter().take(cap).collect();
    }
    r.disagreements = r.criterion_disagreements
        + duality_failed
        + r.dual_criterion_disagreements
        + r.d2_disagreements.unwrap_or(0)
        + r.betti_mismatches;
    Ok(r)
}

/// Every partition family for `(n, d)`.
pub fn partition_sweep(n: u32, d: u32, opts: PartitionSweepOptions) -> Result<PartitionSweepReport> {
    let space = FamilySpace::new(n, d)?;
    let len = space.len();
    run_partition_sweep(n, d, (0..len).into_par_iter().map(|k| space.get(k)), opts)
}

/// `samples` uniformly random families drawn from a seeded generator.
pub fn sampled_partition_sweep(
    n: u32,
    d: u32,
    samples: usize,
    seed: u64,
    opts: PartitionSweepOptions,
) -> Result<PartitionSweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = (0..samples)
        .map(|_| sample_family(n, d, &mut rng))
        .collect::<Result<Vec<PartitionFamily>>>()?;
    run_partition_sweep(n, d, families.into_par_iter(), opts)
}

#[derive(Clone, Debug, Serialize)]
pub struct TriangleFailure {
    pub choice: String,
    pub check: &'static str,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TriangleSweepReport {
    pub d: u32,
    pub choices: usize,
    pub polarization_ok: usize,
    pub resolution_ok: usize,
    pub minimal_ok: usize,
    pub boundary_ok: usize,
    pub face_counts_match_betti: usize,
    pub betti_preserved: usize,
    pub edge_bijection_ok: usize,
    pub monotone_ok: usize,
    pub expected_face_counts: Vec<usize>,
    pub distinct_ideals: usize,
    pub failures: Vec<TriangleFailure>,
    pub disagreements: usize,
}

/// For fixed exponent of one other variable, the polarized parts of a
/// variable form a divisibility chain as its exponent grows.
pub fn parts_monotone(c: &TriangleChoice) -> bool {
    let gens = polarized_generators(c);
    let part = |m: &SplitMonomial, base: u32| {
        SplitMonomial::from_terms(m.terms().iter().copied().filter(|(v, _)| v.base == base))
    };
    for v in 0..3usize {
        for w in (0..3usize).filter(|&w| w != v) {
            for k in 0..=c.d() {
                let mut row: Vec<(u32, SplitMonomial)> = gens
                    .iter()
                    .filter(|(e, _)| e[w] == k)
                    .map(|(e, m)| (e[v], part(m, v as u32 + 1)))
                    .collect();
                row.sort_by_key(|(a, _)| *a);
                if row.windows(2).any(|p| !p[0].1.divides(&p[1].1)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Certifies every choice for `d`.
pub fn triangle_sweep(d: u32, max_witnesses: usize) -> Result<TriangleSweepReport> {
    let choices = all_choices(d)?;
    let target = maximal_ideal_power(3, d);
    let target_betti = graded_betti(&target)?;
    let expected_counts = vec![
        ((d + 1) * (d + 2) / 2) as usize,
        (d * (d + 2)) as usize,
        (d * (d + 1) / 2) as usize,
    ];
    let results: Vec<(MonomialIdeal, Vec<&'static str>)> = choices
        .par_iter()
        .map(|c| {
            let mut failed = Vec::new();
            let ideal = MonomialIdeal::minimalize(polarized_generators(c).into_iter().map(|(_, m)| m));
            if !is_polarization(&ideal, &target).ok {
                failed.push("polarization");
            }
            let x = build_delta_complex(c);
            if !x.boundary_squared_zero() {
                failed.push("boundary");
            }
            match supports_resolution(&x, &ideal) {
                Ok(r) if r.ok => {}
                _ => failed.push("resolution"),
            }
            if !x.is_minimal() {
                failed.push("minimal");
            }
            match betti_table(&ideal) {
                Ok(b) => {
                    if b.totals().iter().map(|&v| v as usize).collect::<Vec<_>>() != x.face_counts() {
                        failed.push("face_counts");
                    }
                    if b.graded_totals() != target_betti {
                        failed.push("betti");
                    }
                }
                Err(_) => failed.push("betti"),
            }
            let skeleton: BTreeSet<(SplitMonomial, SplitMonomial)> = x
                .faces()
                .iter()
                .filter(|f| f.dim == 1)
                .map(|f| {
                    let (a, b) = (&x.labels()[f.vertices[0]], &x.labels()[f.vertices[1]]);
                    if a <= b {
                        (a.clone(), b.clone())
                    } else {
                        (b.clone(), a.clone())
                    }
                })
                .collect();
            match linear_relation_graph(&ideal) {
                Ok(g) if g.edge_monomials() == skeleton => {}
                _ => failed.push("edge_bijection"),
            }
            if !parts_monotone(c) {
                failed.push("monotone");
            }
            (ideal.canonical_form(), failed)
        })
        .collect();

    let mut r = TriangleSweepReport {
        d,
        choices: choices.len(),
        expected_face_counts: expected_counts,
        ..Default::default()
    };
    let mut forms = BTreeSet::new();
    let mut failing_checks = 0;
    for (c, (form, failed)) in choices.iter().zip(results) {
        forms.insert(form);
        let has = |name| failed.contains(&name);
        r.polarization_ok += !has("polarization") as usize;
        r.boundary_ok += !has("boundary") as usize;
        r.resolution_ok += !has("resolution") as usize;
        r.minimal_ok += !has("minimal") as usize;
        r.face_counts_match_betti += !has("face_counts") as usize;
        r.betti_preserved += !has("betti") as usize;
        r.edge_bijection_ok += !has("edge_bijection") as usize;
        r.monotone_ok += !has("monotone") as usize;
        failing_checks += failed.len();
        for check in failed {
            if r.failures.len() < max_witnesses {
                r.failures.push(TriangleFailure {
                    choice: c.to_string(),
                    check,
                });
            }
        }
    }
    r.distinct_ideals = forms.len();
    r.disagreements = failing_checks;
    Ok(r)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TreeSweepReport {
    pub n: u32,
    pub trees: usize,
    pub polarization_ok: usize,
    pub relation_graph_ok: usize,
    pub maximal_ok: usize,
    pub dual_exact_ok: usize,
    pub dual_polarization_ok: usize,
    pub betti_preserved: usize,
    pub distinct_canonical_forms: usize,
    pub failures: Vec<(String, &'static str)>,
    pub disagreements: usize,
}

/// Certifies every labeled spanning tree of `K_n`.
pub fn tree_sweep(n: u32, max_witnesses: usize) -> Result<TreeSweepReport> {
    let trees = enumerate_spanning_trees(n)?;
    let target = squarefree_power(n, n - 1);
    let dual_target = squarefree_power(n, 2);
    let target_betti = graded_betti(&target)?;
    let dual_betti = graded_betti(&dual_target)?;
    let results: Vec<(MonomialIdeal, Vec<&'static str>)> = trees
        .par_iter()
        .map(|t| {
            let mut failed = Vec::new();
            let pol = tree_polarization(t);
            if !is_polarization(&pol, &target).ok {
                failed.push("polarization");
            }
            match linear_relation_graph(&pol) {
                Ok(g) if g.edge_monomials() == tree_edges_as_generators(t) && g.connected => {}
                _ => failed.push("relation_graph"),
            }
            let maximal = crate::partitions::ideal_to_partition(&pol).and_then(|p| is_maximal(&p));
            if maximal != Ok(true) {
                failed.push("maximal");
            }
            let dual = tree_dual(t);
            if alexander_dual(&pol).ok().as_ref() != Some(&dual) {
                failed.push("dual_exact");
            }
            if !is_polarization(&dual, &dual_target).ok {
                failed.push("dual_polarization");
            }
            let betti_ok = graded_betti(&pol).ok() == Some(target_betti.clone())
                && graded_betti(&dual).ok() == Some(dual_betti.clone());
            if !betti_ok {
                failed.push("betti");
            }
            (pol.canonical_form(), failed)
        })
        .collect();
    let mut r = TreeSweepReport {
        n,
        trees: trees.len(),
        ..Default::default()
    };
    let mut forms = BTreeSet::new();
    let mut failing = 0;
    for (t, (form, failed)) in trees.iter().zip(results) {
        forms.insert(form);
        let has = |name| failed.contains(&name);
        r.polarization_ok += !has("polarization") as usize;
        r.relation_graph_ok += !has("relation_graph") as usize;
        r.maximal_ok += !has("maximal") as usize;
        r.dual_exact_ok += !has("dual_exact") as usize;
        r.dual_polarization_ok += !has("dual_polarization") as usize;
        r.betti_preserved += !has("betti") as usize;
        failing += failed.len();
        for check in failed {
            if r.failures.len() < max_witnesses {
                r.failures.push((t.to_json(), check));
            }
        }
    }
    r.distinct_canonical_forms = forms.len();
    if forms.len() != trees.len() {
        failing += trees.len() - forms.len();
    }
    r.disagreements = failing;
    Ok(r)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SurjectivityReport {
    pub n: u32,
    pub families_checked: usize,
    pub valid_families: usize,
    pub maximal_families: usize,
    pub maximal_forms: usize,
    pub tree_dual_forms: usize,
    pub only_in_partitions: Vec<MonomialIdeal>,
    pub only_in_trees: Vec<MonomialIdeal>,
    pub equal: bool,
}

/// Compares maximal valid `d = 2` families with duals of tree polarizations,
/// both up to per-base copy relabeling.
pub fn surjectivity_check(n: u32) -> Result<SurjectivityReport> {
    if !(3..=5).contains(&n) {
        return Err(Error::out_of_range("n", n as usize, 3, 5));
    }
    let space = FamilySpace::new(n, 2)?;
    let valid: Vec<PartitionFamily> = (0..space.len())
        .into_par_iter()
        .map(|k| space.get(k))
        .filter(|p| satisfies_criterion(p).ok)
        .collect();
    let maximal: Vec<MonomialIdeal> = valid
        .par_iter()
        .filter(|p| is_maximal(p) == Ok(true))
        .map(|p| partition_to_ideal(p).canonical_form())
        .collect();
    let maximal_families = maximal.len();
    let from_partitions: BTreeSet<MonomialIdeal> = maximal.into_iter().collect();
    let from_trees: BTreeSet<MonomialIdeal> = enumerate_spanning_trees(n)?
        .par_iter()
        .map(|t| tree_dual(t).canonical_form())
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    Ok(SurjectivityReport {
        n,
        families_checked: space.len(),
        valid_families: valid.len(),
        maximal_families,
        maximal_forms: from_partitions.len(),
        tree_dual_forms: from_trees.len(),
        only_in_partitions: from_partitions.difference(&from_trees).cloned().collect(),
        only_in_trees: from_trees.difference(&from_partitions).cloned().collect(),
        equal: from_partitions == from_trees,
    })
}

/// Hilbert numerator by inclusion-exclusion over generator subsets.
pub fn inclusion_exclusion_numerator(ideal: &MonomialIdeal) -> Result<HilbertNumerator> {
    let g = ideal.generators();
    if g.len() > 20 {
        return Err(Error::out_of_range("generators", g.len(), 0, 20));
    }
    let mut coeffs: HashMap<u32, i64> = HashMap::new();
    for s in 0u32..(1 << g.len()) {
        let l = (0..g.len())
            .filter(|&k| s >> k & 1 == 1)
            .fold(SplitMonomial::one(), |a, k| a.lcm(&g[k]));
        let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
        *coeffs.entry(l.degree()).or_insert(0) += sign;
    }
    let top = coeffs.keys().copied().max().unwrap_or(0) as usize;
    let mut v = vec![0i64; top + 1];
    for (k, c) in coeffs {
        v[k as usize] += c;
    }
    Ok(HilbertNumerator::from_coeffs(v))
}

/// A random square-free ideal with up to `max_vars` variables and
/// `max_gens` nonempty generators.
pub fn random_squarefree_ideal<R: Rng>(rng: &mut R, max_vars: u32, max_gens: usize) -> MonomialIdeal {
    let nvars = rng.gen_range(1..=max_vars);
    let ngens = rng.gen_range(1..=max_gens);
    let gens = (0..ngens).map(|_| {
        let mask: u32 = rng.gen_range(1..(1u32 << nvars));
        SplitMonomial::from_vars(crate::ideals::mask_elements(mask).into_iter().map(VarRef::plain))
    });
    MonomialIdeal::minimalize(gens).with_ambient((1..=nvars).map(VarRef::plain))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct HilbertSweepReport {
    pub seed: u64,
    pub ideals_checked: usize,
    pub agreements: usize,
    pub witnesses: Vec<MonomialIdeal>,
    pub disagreements: usize,
}

/// Pivot recursion against inclusion-exclusion on seeded random ideals.
pub fn hilbert_sweep(count: usize, seed: u64, max_vars: u32, max_gens: usize) -> Result<HilbertSweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideals: Vec<MonomialIdeal> = (0..count)
        .map(|_| random_squarefree_ideal(&mut rng, max_vars, max_gens))
        .collect();
    let bad: Vec<Option<MonomialIdeal>> = ideals
        .par_iter()
        .map(|i| (hilbert_numerator(i).ok() != inclusion_exclusion_numerator(i).ok()).then(|| i.clone()))
        .collect();
    let witnesses: Vec<MonomialIdeal> = bad.into_iter().flatten().collect();
    Ok(HilbertSweepReport {
        seed,
        ideals_checked: count,
        agreements: count - witnesses.len(),
        disagreements: witnesses.len(),
        witnesses: witnesses.into_iter().take(5).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_partition_sweep() {
        let r = partition_sweep(3, 2, PartitionSweepOptions::default()).unwrap();
        assert_eq!(r.families_checked, 8);
        assert_eq!(r.criterion_disagreements, 0);
        assert_eq!(r.disagreements, 0);
        assert_eq!(r.duality_ok, r.criterion_pass);
    }

    #[test]
    fn sampled_sweep_is_deterministic() {
        let opts = PartitionSweepOptions {
            betti: false,
            ..Default::default()
        };
        let a = sampled_partition_sweep(5, 3, 40, 11, opts).unwrap();
        let b = sampled_partition_sweep(5, 3, 40, 11, opts).unwrap();
        assert_eq!(a.criterion_pass, b.criterion_pass);
        assert_eq!(a.hilbert_pass, b.hilbert_pass);
        assert_eq!(a.disagreements, 0);
    }

    #[test]
    fn triangle_sweep_d2() {
        let r = triangle_sweep(2, 5).unwrap();
        assert_eq!(r.choices, 3);
        assert_eq!(r.disagreements, 0, "{:?}", r.failures);
    }

    #[test]
    fn tree_sweep_n3() {
        let r = tree_sweep(3, 5).unwrap();
        assert_eq!(r.trees, 3);
        assert_eq!(r.disagreements, 0, "{:?}", r.failures);
    }

    #[test]
    fn hilbert_sweep_small() {
        let r = hilbert_sweep(50, 3, 6, 6).unwrap();
        assert_eq!(r.disagreements, 0);
    }
}
