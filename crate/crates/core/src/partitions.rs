//! Partition families: the combinatorial encoding of polarizations of the
//! square-free powers `I_d = (x_1, ..., x_n)^d_{sq.fr.}`.
//!
//! For each base `i`, the set `Σ_i^d` of `(d-1)`-subsets of `[n] ∖ {i}` is
//! split into parts `P_{i,1}, ..., P_{i,r_i}`. The generator for a
//! `d`-subset `σ` is `∏_{i ∈ σ} x_i^(j)` where `σ ∖ {i} ∈ P_{i,j}`.
//! Subsets are bitmasks, element `e` at bit `e - 1`.
//!
//! A family only describes a *possible* polarization: the quotient by the
//! variable differences is `I_d`, but regularity is a separate question
//! answered by [`satisfies_criterion`] (or by the Hilbert oracle).

use std::collections::BTreeMap;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{mask_elements, mask_from_elements, subsets_of_size, MonomialIdeal, SplitMonomial, VarRef};

pub const MAX_N: u32 = 16;

/// One ordered partition of `Σ_i^d` for every base `i ∈ [n]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "PartitionJson", into = "PartitionJson")]
pub struct PartitionFamily {
    n: u32,
    d: u32,
    parts: Vec<Vec<Vec<u32>>>,
    lookup: Vec<u8>,
}

/// Wire form: `{"n": 4, "d": 3, "parts": {"1": [[[2,3],[2,4]], [[3,4]]], ...}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionJson {
    pub n: u32,
    pub d: u32,
    pub parts: BTreeMap<String, Vec<Vec<Vec<u32>>>>,
}

impl TryFrom<PartitionJson> for PartitionFamily {
    type Error = Error;

    fn try_from(raw: PartitionJson) -> Result<Self> {
        let mut parts = vec![Vec::new(); raw.n as usize];
        for (key, list) in raw.parts {
            let i: u32 = key
                .parse()
                .map_err(|_| Error::MalformedPartition(format!("bad base key {key:?}")))?;
            if i == 0 || i > raw.n {
                return Err(Error::MalformedPartition(format!("base {i} outside 1..={}", raw.n)));
            }
            parts[i as usize - 1] = list
                .into_iter()
                .map(|part| {
                    part.into_iter()
                        .map(|s| {
                            if s.iter().any(|&e| e == 0 || e > raw.n) {
                                Err(Error::MalformedPartition(format!("subset {s:?} not within 1..={}", raw.n)))
                            } else {
                                Ok(mask_from_elements(s))
                            }
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .collect::<Result<_>>()?;
        }
        PartitionFamily::new(raw.n, raw.d, parts)
    }
}

impl From<PartitionFamily> for PartitionJson {
    fn from(p: PartitionFamily) -> Self {
        let parts = p
            .parts
            .iter()
            .enumerate()
            .map(|(k, list)| {
                let v = list
                    .iter()
                    .map(|part| part.iter().map(|&m| mask_elements(m)).collect())
                    .collect();
                ((k + 1).to_string(), v)
            })
            .collect();
        PartitionJson {
            n: p.n,
            d: p.d,
            parts,
        }
    }
}

/// `Σ_i^d`: the `(d-1)`-subsets of `[n]` avoiding `i`.
pub fn sigma(n: u32, d: u32, i: u32) -> Vec<u32> {
    subsets_of_size(n, d - 1)
        .into_iter()
        .filter(|s| s >> (i - 1) & 1 == 0)
        .collect()
}

impl PartitionFamily {
    /// Builds and validates a family; `parts[i-1]` lists the parts of
    /// `Σ_i^d` as bitmask subsets.
    pub fn new(n: u32, d: u32, parts: Vec<Vec<Vec<u32>>>) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::out_of_range("n", n as usize, 1, MAX_N as usize));
        }
        if d == 0 || d > n {
            return Err(Error::out_of_range("d", d as usize, 1, n as usize));
        }
        if parts.len() != n as usize {
            return Err(Error::MalformedPartition(format!(
                "expected parts for {n} bases, got {}",
                parts.len()
            )));
        }
        let mut lookup = vec![0u8; (n as usize) << n];
        let mut normalized = Vec::with_capacity(parts.len());
        for (k, list) in parts.into_iter().enumerate() {
            let i = k as u32 + 1;
            let expected = sigma(n, d, i);
            if list.len() > u8::MAX as usize {
                return Err(Error::MalformedPartition(format!("too many parts for base {i}")));
            }
            let mut covered = 0usize;
            let mut out_list = Vec::with_capacity(list.len());
            for (j, mut part) in list.into_iter().enumerate() {
                if part.is_empty() {
                    return Err(Error::MalformedPartition(format!("part {} of base {i} is empty", j + 1)));
                }
                part.sort_unstable();
                for &s in &part {
                    if s.count_ones() != d - 1 || s >> (i - 1) & 1 == 1 || s >> n != 0 {
                        return Err(Error::MalformedPartition(format!(
                            "{:?} is not in Σ_{i}^{d} for n = {n}",
                            mask_elements(s)
                        )));
                    }
                    let slot = &mut lookup[(k << n) | s as usize];
                    if *slot != 0 {
                        return Err(Error::MalformedPartition(format!(
                            "{:?} appears twice in the partition of base {i}",
                            mask_elements(s)
                        )));
                    }
                    *slot = j as u8 + 1;
                    covered += 1;
                }
                out_list.push(part);
            }
            if covered != expected.len() {
                return Err(Error::MalformedPartition(format!(
                    "parts of base {i} cover {covered} of {} subsets",
                    expected.len()
                )));
            }
            normalized.push(out_list);
        }
        Ok(PartitionFamily {
            n,
            d,
            parts: normalized,
            lookup,
        })
    }

    /// Builds a family from explicit element lists.
    pub fn from_subsets(n: u32, d: u32, parts: Vec<Vec<Vec<Vec<u32>>>>) -> Result<Self> {
        let masks = parts
            .into_iter()
            .map(|list| {
                list.into_iter()
                    .map(|part| part.into_iter().map(mask_from_elements).collect())
                    .collect()
            })
            .collect();
        PartitionFamily::new(n, d, masks)
    }

    /// Every `Σ_i^d` left whole: the family of `I_d` itself.
    pub fn trivial(n: u32, d: u32) -> Result<Self> {
        if n == 0 || n > MAX_N || d == 0 || d > n {
            return Err(Error::out_of_range("d", d as usize, 1, n as usize));
        }
        let parts = (1..=n).map(|i| vec![sigma(n, d, i)]).collect();
        PartitionFamily::new(n, d, parts)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Parts of `Σ_i^d`, 1-based `i`.
    pub fn parts(&self, i: u32) -> &[Vec<u32>] {
        &self.parts[i as usize - 1]
    }

    /// `r_i`, the number of parts for base `i`.
    pub fn num_parts(&self, i: u32) -> usize {
        self.parts[i as usize - 1].len()
    }

    /// 1-based index of the part of `Σ_i^d` containing `subset`, if any.
    pub fn part_of(&self, i: u32, subset: u32) -> Option<u32> {
        if subset >> self.n != 0 {
            return None;
        }
        match self.lookup[((i as usize - 1) << self.n) | subset as usize] {
            0 => None,
            j => Some(j as u32),
        }
    }

    fn normalized(&self) -> Vec<Vec<Vec<u32>>> {
        self.parts
            .iter()
            .map(|list| {
                let mut l = list.clone();
                l.sort();
                l
            })
            .collect()
    }

    fn with_parts(&self, i: u32, list: Vec<Vec<u32>>) -> PartitionFamily {
        let mut parts = self.parts.clone();
        parts[i as usize - 1] = list;
        PartitionFamily::new(self.n, self.d, parts).expect("refinement of a valid family")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("family serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl PartialEq for PartitionFamily {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.d == other.d && self.normalized() == other.normalized()
    }
}

impl Eq for PartitionFamily {}

impl std::hash::Hash for PartitionFamily {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.d.hash(state);
        self.normalized().hash(state);
    }
}

/// The ideal generated by `m_σ = ∏_{i ∈ σ} x_i^(j)`, `σ ∖ {i} ∈ P_{i,j}`.
/// No claim of regularity is made.
pub fn partition_to_ideal(p: &PartitionFamily) -> MonomialIdeal {
    let gens = subsets_of_size(p.n, p.d).into_iter().map(|s| {
        SplitMonomial::from_vars(mask_elements(s).into_iter().map(|i| {
            let j = p.part_of(i, s & !(1 << (i - 1))).expect("family covers Σ");
            VarRef::raw(i, j)
        }))
    });
    let ambient = (1..=p.n).flat_map(|i| (1..=p.num_parts(i) as u32).map(move |j| VarRef::raw(i, j)));
    MonomialIdeal::minimalize(gens).with_ambient(ambient)
}

/// Reads a family back from an ideal with one square-free generator per
/// `d`-subset of the bases. Parts are numbered by increasing copy index.
pub fn ideal_to_partition(ideal: &MonomialIdeal) -> Result<PartitionFamily> {
    if !ideal.is_square_free() {
        return Err(Error::NotSquareFree(ideal.to_string()));
    }
    let d = ideal
        .generating_degree()
        .ok_or_else(|| Error::NotPartitionIdeal("generators must share one degree".into()))?;
    let n = ideal.max_base();
    if n == 0 || n > MAX_N || d == 0 {
        return Err(Error::NotPartitionIdeal(format!("unsupported n = {n}, d = {d}")));
    }
    let expected = subsets_of_size(n, d).len();
    if ideal.len() != expected {
        return Err(Error::NotPartitionIdeal(format!(
            "expected {expected} generators for n = {n}, d = {d}, found {}",
            ideal.len()
        )));
    }
    // per base: copy -> subsets
    let mut by_copy: Vec<BTreeMap<u32, Vec<u32>>> = vec![BTreeMap::new(); n as usize];
    let mut seen = std::collections::HashSet::new();
    for g in ideal.generators() {
        let support = mask_from_elements(g.support().map(|v| v.base));
        if support.count_ones() != d {
            return Err(Error::NotPartitionIdeal(format!("{g} repeats a base")));
        }
        if !seen.insert(support) {
            return Err(Error::NotPartitionIdeal(format!(
                "two generators over the bases {:?}",
                mask_elements(support)
            )));
        }
        for v in g.support() {
            by_copy[v.base as usize - 1]
                .entry(v.copy)
                .or_default()
                .push(support & !(1 << (v.base - 1)));
        }
    }
    let parts = by_copy
        .into_iter()
        .map(|m| m.into_values().collect())
        .collect();
    PartitionFamily::new(n, d, parts)
}

/// Complements every member within `[n] ∖ {i}`; the result is a family for
/// `(n, n - d + 1)` with the same part structure.
pub fn dual_partition(p: &PartitionFamily) -> PartitionFamily {
    let full = (1u32 << p.n) - 1;
    let parts = p
        .parts
        .iter()
        .enumerate()
        .map(|(k, list)| {
            let bit = 1u32 << k;
            list.iter()
                .map(|part| {
                    let mut c: Vec<u32> = part.iter().map(|&s| full & !s & !bit).collect();
                    c.sort_unstable();
                    c
                })
                .collect()
        })
        .collect();
    PartitionFamily::new(p.n, p.n - p.d + 1, parts).expect("dual of a valid family")
}

/// A cross-part pair `σ ∈ P_{i,j}`, `τ ∈ P_{i,j'}` admitting no valid `β`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionWitness {
    pub i: u32,
    pub sigma: Vec<u32>,
    pub tau: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub ok: bool,
    pub witness: Option<CriterionWitness>,
}

/// The partition criterion for regularity: for every base `i` and every
/// `σ`, `τ` in different parts of `Σ_i^d` there must be a `d`-set
/// `β ⊆ σ ∪ τ` such that for each `t ∈ β`, `β ∖ {t}` lies in the same part
/// of `Σ_t^d` as `σ ∪ {i} ∖ {t}` or as `τ ∪ {i} ∖ {t}`.
pub fn satisfies_criterion(p: &PartitionFamily) -> CriterionResult {
    match criterion_failure(p) {
        None => CriterionResult {
            ok: true,
            witness: None,
        },
        Some((i, s, t)) => CriterionResult {
            ok: false,
            witness: Some(CriterionWitness {
                i,
                sigma: mask_elements(s),
                tau: mask_elements(t),
            }),
        },
    }
}

fn criterion_failure(p: &PartitionFamily) -> Option<(u32, u32, u32)> {
    for i in 1..=p.n {
        let parts = p.parts(i);
        let ibit = 1u32 << (i - 1);
        for (j, pj) in parts.iter().enumerate() {
            for pk in &parts[j + 1..] {
                for &s in pj {
                    for &t in pk {
                        if !pair_has_beta(p, s | ibit, t | ibit, s | t) {
                            return Some((i, s, t));
                        }
                    }
                }
            }
        }
    }
    None
}

/// `si = σ ∪ {i}`, `ti = τ ∪ {i}`, `union = σ ∪ τ`.
fn pair_has_beta(p: &PartitionFamily, si: u32, ti: u32, union: u32) -> bool {
    // d-subsets of the union
    let mut beta = union;
    loop {
        if beta.count_ones() == p.d && beta_fits(p, beta, si, ti) {
            return true;
        }
        if beta == 0 {
            return false;
        }
        beta = (beta - 1) & union;
    }
}

fn beta_fits(p: &PartitionFamily, beta: u32, si: u32, ti: u32) -> bool {
    let mut rest = beta;
    while rest != 0 {
        let tbit = rest & rest.wrapping_neg();
        rest ^= tbit;
        let t = tbit.trailing_zeros() + 1;
        let s = p.part_of(t, beta ^ tbit);
        let via_sigma = si & tbit != 0 && p.part_of(t, si ^ tbit) == s;
        let via_tau = ti & tbit != 0 && p.part_of(t, ti ^ tbit) == s;
        if !(via_sigma || via_tau) {
            return false;
        }
    }
    true
}

/// The `d = 2` form of the criterion: whenever `j ∉ P_{i,s}` (with
/// `j ≠ i`), the set `{i} ∪ P_{i,s}` lies inside a single part of `Σ_j^2`.
pub fn d2_criterion(p: &PartitionFamily) -> Result<bool> {
    if p.d != 2 {
        return Err(Error::Precondition(format!("d2_criterion needs d = 2, got {}", p.d)));
    }
    for i in 1..=p.n {
        for part in p.parts(i) {
            let members: u32 = part.iter().fold(0, |m, &s| m | s);
            for j in (1..=p.n).filter(|&j| j != i && members >> (j - 1) & 1 == 0) {
                let want = p.part_of(j, 1 << (i - 1));
                if mask_elements(members)
                    .into_iter()
                    .any(|e| p.part_of(j, 1 << (e - 1)) != want)
                {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Box partition: `σ ∈ P_{i,r}` when exactly `r - 1` elements of `σ` are
/// below `i`. Positions that never occur are skipped, so indices are dense.
pub fn box_partition(n: u32, d: u32) -> Result<PartitionFamily> {
    if n == 0 || n > MAX_N || d == 0 || d > n {
        return Err(Error::out_of_range("d", d as usize, 1, n as usize));
    }
    let parts = (1..=n)
        .map(|i| {
            let mut by_pos: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
            let below = (1u32 << (i - 1)) - 1;
            for s in sigma(n, d, i) {
                by_pos.entry((s & below).count_ones()).or_default().push(s);
            }
            by_pos.into_values().collect()
        })
        .collect();
    PartitionFamily::new(n, d, parts)
}

/// Splits `Σ_i^d` into singletons and leaves every other base whole.
pub fn single_variable_partition(n: u32, d: u32, i: u32) -> Result<PartitionFamily> {
    if n == 0 || n > MAX_N || d == 0 || d > n {
        return Err(Error::out_of_range("d", d as usize, 1, n as usize));
    }
    if i == 0 || i > n {
        return Err(Error::out_of_range("i", i as usize, 1, n as usize));
    }
    let parts = (1..=n)
        .map(|k| {
            let s = sigma(n, d, k);
            if k == i {
                s.into_iter().map(|m| vec![m]).collect()
            } else {
                vec![s]
            }
        })
        .collect();
    PartitionFamily::new(n, d, parts)
}

/// All ways to split one part of one base into two nonempty parts.
pub fn one_step_refinements(p: &PartitionFamily) -> Vec<PartitionFamily> {
    let mut out = Vec::new();
    for i in 1..=p.n {
        for (j, part) in p.parts(i).iter().enumerate() {
            let k = part.len();
            if k < 2 {
                continue;
            }
            // element 0 stays in the first half; skip the full set
            for mask in 0..(1u64 << (k - 1)) - 1 {
                let sel = (mask << 1) | 1;
                let (a, b): (Vec<u32>, Vec<u32>) = part
                    .iter()
                    .enumerate()
                    .partition(|(e, _)| sel >> e & 1 == 1)
                    .into_iter_pair();
                let mut list = p.parts(i).to_vec();
                list[j] = a;
                list.push(b);
                out.push(p.with_parts(i, list));
            }
        }
    }
    out
}

trait IntoPair {
    fn into_iter_pair(self) -> (Vec<u32>, Vec<u32>);
}

impl IntoPair for (Vec<(usize, &u32)>, Vec<(usize, &u32)>) {
    fn into_iter_pair(self) -> (Vec<u32>, Vec<u32>) {
        (
            self.0.into_iter().map(|(_, &s)| s).collect(),
            self.1.into_iter().map(|(_, &s)| s).collect(),
        )
    }
}

/// A one-step refinement that still satisfies the criterion, if any.
pub fn valid_refinement(p: &PartitionFamily) -> Option<PartitionFamily> {
    one_step_refinements(p)
        .into_iter()
        .find(|q| criterion_failure(q).is_none())
}

/// True when no one-step refinement satisfies the criterion. Requires `p`
/// itself to satisfy it.
pub fn is_maximal(p: &PartitionFamily) -> Result<bool> {
    if let Some((i, s, t)) = criterion_failure(p) {
        return Err(Error::Precondition(format!(
            "family fails the criterion at base {i} with {:?} / {:?}",
            mask_elements(s),
            mask_elements(t)
        )));
    }
    Ok(valid_refinement(p).is_none())
}

/// All set partitions of `elems`, by restricted growth strings.
pub fn set_partitions(elems: &[u32]) -> Vec<Vec<Vec<u32>>> {
    let k = elems.len();
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    let mut rgs = vec![0usize; k];
    loop {
        let blocks = rgs.iter().max().unwrap() + 1;
        let mut parts = vec![Vec::new(); blocks];
        for (e, &b) in elems.iter().zip(&rgs) {
            parts[b].push(*e);
        }
        out.push(parts);
        // next restricted growth string
        let mut pos = k - 1;
        loop {
            if pos == 0 {
                return out;
            }
            let max_prefix = rgs[..pos].iter().max().copied().unwrap_or(0);
            if rgs[pos] <= max_prefix {
                rgs[pos] += 1;
                for r in rgs.iter_mut().skip(pos + 1) {
                    *r = 0;
                }
                break;
            }
            pos -= 1;
        }
    }
}

/// Largest `|Σ_i^d|` whose set partitions are listed explicitly.
pub const MAX_ENUM_SIGMA: usize = 10;

/// The space of all partition families for `(n, d)`, indexed by a mixed
/// radix over the set partitions of each `Σ_i^d`. Only spaces whose size
/// fits in a `usize` can be built; use [`sample_family`] beyond that.
pub struct FamilySpace {
    n: u32,
    d: u32,
    choices: Vec<Vec<Vec<Vec<u32>>>>,
}

impl FamilySpace {
    pub fn new(n: u32, d: u32) -> Result<Self> {
        if n == 0 || n > MAX_N || d == 0 || d > n {
            return Err(Error::out_of_range("d", d as usize, 1, n as usize));
        }
        let k = sigma(n, d, 1).len();
        if k > MAX_ENUM_SIGMA {
            return Err(Error::out_of_range("subsets per base", k, 0, MAX_ENUM_SIGMA));
        }
        let choices: Vec<Vec<Vec<Vec<u32>>>> = (1..=n).map(|i| set_partitions(&sigma(n, d, i))).collect();
        if choices.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len())).is_none() {
            return Err(Error::Precondition(format!(
                "the ({n}, {d}) family space is too large to enumerate; sample instead"
            )));
        }
        Ok(FamilySpace { n, d, choices })
    }

    pub fn len(&self) -> usize {
        self.choices.iter().map(|c| c.len()).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn get(&self, mut index: usize) -> PartitionFamily {
        let mut parts = Vec::with_capacity(self.n as usize);
        for c in &self.choices {
            parts.push(c[index % c.len()].clone());
            index /= c.len();
        }
        PartitionFamily::new(self.n, self.d, parts).expect("enumerated family is valid")
    }

    pub fn iter(&self) -> impl Iterator<Item = PartitionFamily> + '_ {
        (0..self.len()).map(move |k| self.get(k))
    }

    /// Uniformly random family (uniform set partition of each `Σ_i^d`).
    pub fn sample<R: Rng>(&self, rng: &mut R) -> PartitionFamily {
        let parts = (1..=self.n)
            .map(|i| uniform_set_partition(&sigma(self.n, self.d, i), rng))
            .collect();
        PartitionFamily::new(self.n, self.d, parts).expect("sampled family is valid")
    }
}

/// Largest `|Σ_i^d|` for sampling; Bell numbers beyond this leave `u128`.
pub const MAX_SAMPLE_SIGMA: usize = 40;

/// A uniformly random family for `(n, d)` without enumerating the space.
pub fn sample_family<R: Rng>(n: u32, d: u32, rng: &mut R) -> Result<PartitionFamily> {
    if n == 0 || n > MAX_N || d == 0 || d > n {
        return Err(Error::out_of_range("d", d as usize, 1, n as usize));
    }
    let k = sigma(n, d, 1).len();
    if k > MAX_SAMPLE_SIGMA {
        return Err(Error::out_of_range("subsets per base", k, 0, MAX_SAMPLE_SIGMA));
    }
    let parts = (1..=n).map(|i| uniform_set_partition(&sigma(n, d, i), rng)).collect();
    PartitionFamily::new(n, d, parts)
}

/// Uniform random set partition via completion counts of restricted
/// growth strings: `c(r, m) = m * c(r-1, m) + c(r-1, m+1)`.
/// Panics above [`MAX_SAMPLE_SIGMA`] elements.
pub fn uniform_set_partition<R: Rng>(elems: &[u32], rng: &mut R) -> Vec<Vec<u32>> {
    let k = elems.len();
    assert!(k <= MAX_SAMPLE_SIGMA, "{k} elements exceed the sampling limit");
    if k == 0 {
        return Vec::new();
    }
    // counts[r][m]: completions of r remaining positions with m blocks used
    let mut counts = vec![vec![0u128; k + 2]; k + 1];
    counts[0].fill(1);
    // only r + m <= k + 1 is ever read; those entries stay below Bell(k + 1)
    for r in 1..=k {
        for m in 0..=(k + 1 - r) {
            counts[r][m] = (m as u128) * counts[r - 1][m] + counts[r - 1][m + 1];
        }
    }
    let mut parts: Vec<Vec<u32>> = vec![vec![elems[0]]];
    for (pos, &e) in elems.iter().enumerate().skip(1) {
        let remaining = k - pos - 1;
        let m = parts.len();
        let total = counts[remaining + 1][m];
        let mut pick = rng.gen_range(0..total);
        let each_old = counts[remaining][m];
        let mut placed = false;
        for part in parts.iter_mut() {
            if pick < each_old {
                part.push(e);
                placed = true;
                break;
            }
            pick -= each_old;
        }
        if !placed {
            parts.push(vec![e]);
        }
    }
    parts
}
