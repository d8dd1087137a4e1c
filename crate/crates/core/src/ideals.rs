//! Monomials over copy-indexed variables and minimally generated monomial
//! ideals.
//!
//! A variable `x_i^(j)` is a [`VarRef`] with `base = i` and `copy = j`; the
//! plain variable `x_i` is `x_i^(1)`. A [`SplitMonomial`] stores only
//! nonzero exponents, sorted by variable. A [`MonomialIdeal`] keeps its
//! generators as a divisibility antichain in canonical order, together with
//! the ambient set of variables it lives over.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::canon;
use crate::error::{Error, Result};

/// The variable `x_base^(copy)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarRef {
    pub base: u32,
    pub copy: u32,
}

impl VarRef {
    pub fn new(base: u32, copy: u32) -> Result<Self> {
        if base == 0 || copy == 0 {
            return Err(Error::InvalidVar { base, copy });
        }
        Ok(VarRef { base, copy })
    }

    /// The unsplit variable `x_base`.
    pub const fn plain(base: u32) -> Self {
        VarRef { base, copy: 1 }
    }

    pub(crate) const fn raw(base: u32, copy: u32) -> Self {
        VarRef { base, copy }
    }
}

impl fmt::Display for VarRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}_{}", self.base, self.copy)
    }
}

/// A monomial in copy-indexed variables.
///
/// Ordered by total degree first, then lexicographically on the sorted
/// `(variable, exponent)` list.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct SplitMonomial {
    terms: Vec<(VarRef, u32)>,
}

impl SplitMonomial {
    pub fn one() -> Self {
        SplitMonomial { terms: Vec::new() }
    }

    pub fn var(v: VarRef) -> Self {
        SplitMonomial {
            terms: vec![(v, 1)],
        }
    }

    /// Builds a monomial from `(variable, exponent)` pairs; repeated
    /// variables have their exponents added and zero exponents are dropped.
    pub fn from_terms<I: IntoIterator<Item = (VarRef, u32)>>(terms: I) -> Self {
        let mut map: BTreeMap<VarRef, u32> = BTreeMap::new();
        for (v, e) in terms {
            if e > 0 {
                *map.entry(v).or_insert(0) += e;
            }
        }
        SplitMonomial {
            terms: map.into_iter().collect(),
        }
    }

    /// Product of the given variables, each occurrence contributing one.
    pub fn from_vars<I: IntoIterator<Item = VarRef>>(vars: I) -> Self {
        Self::from_terms(vars.into_iter().map(|v| (v, 1)))
    }

    /// Monomial in plain variables from an exponent vector (`exps[k]` is the
    /// exponent of `x_{k+1}`).
    pub fn from_exponents(exps: &[u32]) -> Self {
        Self::from_terms(
            exps.iter()
                .enumerate()
                .map(|(k, &e)| (VarRef::plain(k as u32 + 1), e)),
        )
    }

    pub fn terms(&self) -> &[(VarRef, u32)] {
        &self.terms
    }

    pub fn exponent(&self, v: VarRef) -> u32 {
        match self.terms.binary_search_by(|(w, _)| w.cmp(&v)) {
            Ok(k) => self.terms[k].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_square_free(&self) -> bool {
        self.terms.iter().all(|&(_, e)| e == 1)
    }

    pub fn support(&self) -> impl Iterator<Item = VarRef> + '_ {
        self.terms.iter().map(|&(v, _)| v)
    }

    /// Distinct base indices occurring in the monomial.
    pub fn bases(&self) -> BTreeSet<u32> {
        self.terms.iter().map(|(v, _)| v.base).collect()
    }

    pub fn divides(&self, other: &SplitMonomial) -> bool {
        if self.terms.len() > other.terms.len() {
            return false;
        }
        let mut it = other.terms.iter();
        'outer: for &(v, e) in &self.terms {
            for &(w, f) in it.by_ref() {
                match w.cmp(&v) {
                    Ordering::Less => continue,
                    Ordering::Equal => {
                        if f < e {
                            return false;
                        }
                        continue 'outer;
                    }
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    fn merge(&self, other: &SplitMonomial, f: impl Fn(u32, u32) -> u32) -> SplitMonomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let (v, e) = match (self.terms.get(i), other.terms.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) => match a.cmp(&b) {
                    Ordering::Less => {
                        i += 1;
                        (a, f(ea, 0))
                    }
                    Ordering::Greater => {
                        j += 1;
                        (b, f(0, eb))
                    }
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                        (a, f(ea, eb))
                    }
                },
                (Some(&(a, ea)), None) => {
                    i += 1;
                    (a, f(ea, 0))
                }
                (None, Some(&(b, eb))) => {
                    j += 1;
                    (b, f(0, eb))
                }
                (None, None) => unreachable!(),
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        SplitMonomial { terms: out }
    }

    pub fn lcm(&self, other: &SplitMonomial) -> SplitMonomial {
        self.merge(other, u32::max)
    }

    pub fn gcd(&self, other: &SplitMonomial) -> SplitMonomial {
        self.merge(other, u32::min)
    }

    pub fn mul(&self, other: &SplitMonomial) -> SplitMonomial {
        self.merge(other, |a, b| a + b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn try_div(&self, other: &SplitMonomial) -> Option<SplitMonomial> {
        if !other.divides(self) {
            return None;
        }
        Some(self.merge(other, |a, b| a - b))
    }

    /// Identifies every copy `x_i^(j)` with `x_i^(1)`.
    pub fn depolarize(&self) -> SplitMonomial {
        self.map_vars(|v| VarRef::plain(v.base))
    }

    pub fn map_vars(&self, f: impl Fn(VarRef) -> VarRef) -> SplitMonomial {
        SplitMonomial::from_terms(self.terms.iter().map(|&(v, e)| (f(v), e)))
    }
}

impl Ord for SplitMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.terms.cmp(&other.terms))
    }
}

impl PartialOrd for SplitMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SplitMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{v}")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl TryFrom<Vec<Vec<u32>>> for SplitMonomial {
    type Error = Error;

    fn try_from(raw: Vec<Vec<u32>>) -> Result<Self> {
        let mut terms = Vec::with_capacity(raw.len());
        for entry in raw {
            let (base, copy, exp) = match entry.as_slice() {
                [b, c] => (*b, *c, 1),
                [b, c, e] => (*b, *c, *e),
                _ => {
                    return Err(Error::Json(format!(
                        "monomial entry must be [base, copy] or [base, copy, exponent], got {entry:?}"
                    )))
                }
            };
            terms.push((VarRef::new(base, copy)?, exp));
        }
        Ok(SplitMonomial::from_terms(terms))
    }
}

impl From<SplitMonomial> for Vec<Vec<u32>> {
    fn from(m: SplitMonomial) -> Self {
        m.terms
            .into_iter()
            .map(|(v, e)| {
                if e == 1 {
                    vec![v.base, v.copy]
                } else {
                    vec![v.base, v.copy, e]
                }
            })
            .collect()
    }
}

/// A monomial ideal given by its minimal generators.
///
/// The ambient variable set always contains every variable occurring in a
/// generator; it may contain more (they matter for Alexander duality).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "IdealJson", into = "IdealJson")]
pub struct MonomialIdeal {
    generators: Vec<SplitMonomial>,
    ambient: BTreeSet<VarRef>,
}

/// Wire form of an ideal: `{"n": .., "generators": [...], "ambient": [...]}`.
///
/// When `ambient` is absent, it defaults to the variables occurring in the
/// generators plus `x_i^(1)` for every base `i <= n` that does not occur.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealJson {
    pub n: u32,
    pub generators: Vec<SplitMonomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<[u32; 2]>>,
}

impl TryFrom<IdealJson> for MonomialIdeal {
    type Error = Error;

    fn try_from(raw: IdealJson) -> Result<Self> {
        let ideal = MonomialIdeal::minimalize(raw.generators);
        let extra: BTreeSet<VarRef> = match raw.ambient {
            Some(list) => list
                .into_iter()
                .map(|[b, c]| VarRef::new(b, c))
                .collect::<Result<_>>()?,
            None => {
                let present: BTreeSet<u32> = ideal.ambient.iter().map(|v| v.base).collect();
                (1..=raw.n)
                    .filter(|b| !present.contains(b))
                    .map(VarRef::plain)
                    .collect()
            }
        };
        Ok(ideal.with_ambient(extra))
    }
}

impl From<MonomialIdeal> for IdealJson {
    fn from(ideal: MonomialIdeal) -> Self {
        IdealJson {
            n: ideal.max_base(),
            ambient: Some(ideal.ambient.iter().map(|v| [v.base, v.copy]).collect()),
            generators: ideal.generators,
        }
    }
}

/// Result of identifying all copies of each variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Depolarization {
    /// The minimalized image ideal.
    pub ideal: MonomialIdeal,
    /// Image of each generator, in the generator order of the source ideal.
    pub images: Vec<SplitMonomial>,
    /// Whether generators map one-to-one onto the minimal generators.
    pub bijective: bool,
}

impl MonomialIdeal {
    /// The inclusion-minimal antichain generating the same ideal. The empty
    /// list gives the zero ideal.
    pub fn minimalize<I: IntoIterator<Item = SplitMonomial>>(gens: I) -> MonomialIdeal {
        let mut all: Vec<SplitMonomial> = gens.into_iter().collect();
        all.sort();
        all.dedup();
        let mut kept: Vec<SplitMonomial> = Vec::with_capacity(all.len());
        for m in all {
            if !kept.iter().any(|k| k.divides(&m)) {
                kept.push(m);
            }
        }
        let ambient = kept.iter().flat_map(|m| m.support()).collect();
        MonomialIdeal {
            generators: kept,
            ambient,
        }
    }

    pub fn zero() -> MonomialIdeal {
        MonomialIdeal {
            generators: Vec::new(),
            ambient: BTreeSet::new(),
        }
    }

    /// Adds variables to the ambient set.
    pub fn with_ambient<I: IntoIterator<Item = VarRef>>(mut self, extra: I) -> MonomialIdeal {
        self.ambient.extend(extra);
        self
    }

    pub fn generators(&self) -> &[SplitMonomial] {
        &self.generators
    }

    pub fn ambient(&self) -> &BTreeSet<VarRef> {
        &self.ambient
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_one())
    }

    pub fn is_square_free(&self) -> bool {
        self.generators.iter().all(|g| g.is_square_free())
    }

    /// The common degree of all generators, if there is one.
    pub fn generating_degree(&self) -> Option<u32> {
        let d = self.generators.first()?.degree();
        self.generators
            .iter()
            .all(|g| g.degree() == d)
            .then_some(d)
    }

    pub fn contains(&self, m: &SplitMonomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn max_base(&self) -> u32 {
        self.ambient.iter().map(|v| v.base).max().unwrap_or(0)
    }

    /// Number of copies per base in the ambient set (`r_i` when copies are
    /// dense).
    pub fn copies_per_base(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for v in &self.ambient {
            *out.entry(v.base).or_insert(0) += 1;
        }
        out
    }

    pub fn depolarize(&self) -> Depolarization {
        let images: Vec<SplitMonomial> = self.generators.iter().map(|g| g.depolarize()).collect();
        let ideal = MonomialIdeal::minimalize(images.iter().cloned())
            .with_ambient(self.ambient.iter().map(|v| VarRef::plain(v.base)));
        let distinct: HashSet<&SplitMonomial> = images.iter().collect();
        let bijective = distinct.len() == images.len() && ideal.len() == images.len();
        Depolarization {
            ideal,
            images,
            bijective,
        }
    }

    /// Relabels copies within each base so that isomorphic polarizations
    /// (ideals differing only by a permutation of the copies of each base)
    /// get identical output. Copies come out dense, `1..=r_i`.
    pub fn canonical_form(&self) -> MonomialIdeal {
        canon::canonical(self, canon::Mode::PerBase)
    }

    /// Canonical representative under arbitrary renaming of the ambient
    /// variables. The result uses plain variables `x_1, x_2, ...`.
    pub fn isomorphism_form(&self) -> MonomialIdeal {
        canon::canonical(self, canon::Mode::AllVariables)
    }

    /// Renumbers copies within each base to `1..=r_i`, preserving their
    /// relative order.
    pub fn densify(&self) -> MonomialIdeal {
        let mut map = BTreeMap::new();
        let mut next: BTreeMap<u32, u32> = BTreeMap::new();
        for v in &self.ambient {
            let c = next.entry(v.base).or_insert(0);
            *c += 1;
            map.insert(*v, VarRef::raw(v.base, *c));
        }
        self.rename(|v| map[&v])
    }

    /// Applies an injective variable renaming.
    pub fn rename(&self, f: impl Fn(VarRef) -> VarRef) -> MonomialIdeal {
        let gens = self.generators.iter().map(|g| g.map_vars(&f));
        MonomialIdeal::minimalize(gens).with_ambient(self.ambient.iter().map(|&v| f(v)))
    }

    /// All least common multiples of nonempty subsets of generators.
    pub fn lcm_lattice(&self) -> Vec<SplitMonomial> {
        let mut seen: HashSet<SplitMonomial> = self.generators.iter().cloned().collect();
        let mut frontier: Vec<SplitMonomial> = self.generators.clone();
        while let Some(m) = frontier.pop() {
            for g in &self.generators {
                let l = m.lcm(g);
                if !seen.contains(&l) {
                    seen.insert(l.clone());
                    frontier.push(l);
                }
            }
        }
        let mut out: Vec<SplitMonomial> = seen.into_iter().collect();
        out.sort();
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("ideal serializes")
    }

    pub fn from_json(s: &str) -> Result<MonomialIdeal> {
        Ok(serde_json::from_str(s)?)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// All `k`-subsets of `{1..=n}` as bitmasks (bit `e-1` for element `e`),
/// in colex order.
pub fn subsets_of_size(n: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let limit: u64 = 1u64 << n;
    let mut s: u64 = (1u64 << k) - 1;
    while s < limit {
        out.push(s as u32);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// Elements of a bitmask subset, ascending, 1-based.
pub fn mask_elements(mask: u32) -> Vec<u32> {
    (0..32).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn mask_from_elements<I: IntoIterator<Item = u32>>(elems: I) -> u32 {
    elems.into_iter().fold(0, |m, e| m | 1 << (e - 1))
}

/// `I_d`: all square-free monomials of degree `d` in `x_1..x_n`.
pub fn squarefree_power(n: u32, d: u32) -> MonomialIdeal {
    let gens = subsets_of_size(n, d)
        .into_iter()
        .map(|s| SplitMonomial::from_vars(mask_elements(s).into_iter().map(VarRef::plain)));
    MonomialIdeal::minimalize(gens).with_ambient((1..=n).map(VarRef::plain))
}

/// Exponent vectors of all monomials of degree `d` in `n` variables, in
/// lexicographic order with `x_1 > x_2 > ...`.
pub fn degree_exponents(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}

/// `(x_1, ..., x_n)^d`.
pub fn maximal_ideal_power(n: u32, d: u32) -> MonomialIdeal {
    let gens = degree_exponents(n as usize, d)
        .into_iter()
        .map(|e| SplitMonomial::from_exponents(&e));
    MonomialIdeal::minimalize(gens).with_ambient((1..=n).map(VarRef::plain))
}

/// The box polarization `B_{nd}`: `x_{i_1} x_{i_2} ... x_{i_d}` with
/// `i_1 <= ... <= i_d` becomes `x_{i_1}^(1) x_{i_2}^(2) ... x_{i_d}^(d)`.
pub fn box_polarization(n: u32, d: u32) -> MonomialIdeal {
    let gens = degree_exponents(n as usize, d).into_iter().map(|exps| {
        let mut vars = Vec::new();
        for (k, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                vars.push(k as u32 + 1);
            }
        }
        SplitMonomial::from_vars(
            vars.iter()
                .enumerate()
                .map(|(pos, &b)| VarRef::raw(b, pos as u32 + 1)),
        )
    });
    MonomialIdeal::minimalize(gens)
}

/// Standard polarization: `x_i^e` becomes `x_i^(1) ... x_i^(e)` in every
/// generator.
pub fn standard_polarization(ideal: &MonomialIdeal) -> MonomialIdeal {
    let gens = ideal.generators().iter().map(|g| {
        SplitMonomial::from_vars(
            g.terms()
                .iter()
                .flat_map(|&(v, e)| (1..=e).map(move |c| VarRef::raw(v.base, c))),
        )
    });
    MonomialIdeal::minimalize(gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(b: u32, c: u32) -> VarRef {
        VarRef::new(b, c).unwrap()
    }

    fn mono(vars: &[(u32, u32)]) -> SplitMonomial {
        SplitMonomial::from_vars(vars.iter().map(|&(b, c)| x(b, c)))
    }

    fn plain(exps: &[u32]) -> SplitMonomial {
        SplitMonomial::from_exponents(exps)
    }

    #[test]
    fn var_ref_rejects_zero_indices() {
        assert!(VarRef::new(0, 1).is_err());
        assert!(VarRef::new(1, 0).is_err());
        assert_eq!(VarRef::plain(3), x(3, 1));
    }

    #[test]
    fn minimalize_drops_multiples() {
        let ideal = MonomialIdeal::minimalize(vec![plain(&[1]), plain(&[1, 1])]);
        assert_eq!(ideal.generators(), &[plain(&[1])]);

        let anti = vec![plain(&[1, 1, 0]), plain(&[1, 0, 1]), plain(&[0, 1, 1])];
        let ideal = MonomialIdeal::minimalize(anti.clone());
        assert_eq!(ideal.len(), 3);
        for g in &anti {
            assert!(ideal.generators().contains(g));
        }

        let ideal = MonomialIdeal::minimalize(vec![plain(&[2]), plain(&[1, 1]), plain(&[2, 1])]);
        assert_eq!(ideal.generators(), &[plain(&[1, 1]), plain(&[2])]);
    }

    #[test]
    fn empty_generator_list_is_zero_ideal() {
        let ideal = MonomialIdeal::minimalize(Vec::new());
        assert!(ideal.is_zero());
        assert!(!ideal.is_unit());
    }

    #[test]
    fn generator_order_is_degree_then_lex() {
        let ideal = MonomialIdeal::minimalize(vec![plain(&[0, 0, 2]), plain(&[1]), plain(&[0, 1, 1])]);
        let degs: Vec<u32> = ideal.generators().iter().map(|g| g.degree()).collect();
        assert_eq!(degs, vec![1, 2, 2]);
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = mono(&[(1, 1), (2, 2)]);
        let b = mono(&[(1, 1), (2, 2), (3, 1)]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.lcm(&mono(&[(3, 1)])), b);
        assert_eq!(b.try_div(&a), Some(mono(&[(3, 1)])));
        assert_eq!(a.gcd(&mono(&[(3, 1)])), SplitMonomial::one());
    }

    #[test]
    fn depolarize_box_polarization() {
        let b22 = box_polarization(2, 2);
        assert_eq!(b22.len(), 3);
        assert!(b22.generators().contains(&mono(&[(1, 1), (1, 2)])));
        assert!(b22.generators().contains(&mono(&[(1, 1), (2, 2)])));
        assert!(b22.generators().contains(&mono(&[(2, 1), (2, 2)])));
        let dep = b22.depolarize();
        assert!(dep.bijective);
        assert_eq!(dep.ideal.generators(), maximal_ideal_power(2, 2).generators());
    }

    #[test]
    fn depolarize_without_split_copies() {
        let ideal = MonomialIdeal::minimalize(vec![mono(&[(1, 1), (2, 1)])]);
        let dep = ideal.depolarize();
        assert!(dep.bijective);
        assert_eq!(dep.ideal.generators(), &[plain(&[1, 1])]);
    }

    #[test]
    fn depolarize_detects_collapse() {
        let ideal = MonomialIdeal::minimalize(vec![mono(&[(1, 1), (2, 1)]), mono(&[(1, 2), (2, 1)])]);
        let dep = ideal.depolarize();
        assert!(!dep.bijective);
        assert_eq!(dep.ideal.generators(), &[plain(&[1, 1])]);
    }

    #[test]
    fn canonical_form_renumbers_copies() {
        let ideal = MonomialIdeal::minimalize(vec![mono(&[(1, 2), (2, 1)]), mono(&[(1, 1), (2, 1)])]);
        let canon = ideal.canonical_form();
        assert_eq!(
            canon.generators(),
            &[mono(&[(1, 1), (2, 1)]), mono(&[(1, 2), (2, 1)])]
        );
        let shifted = MonomialIdeal::minimalize(vec![mono(&[(1, 7), (2, 3)]), mono(&[(1, 4), (2, 3)])]);
        assert_eq!(shifted.canonical_form(), canon);
    }

    #[test]
    fn canonical_form_keeps_bases_apart() {
        let a = MonomialIdeal::minimalize(vec![mono(&[(1, 1)]), mono(&[(2, 1), (2, 2)])]);
        let b = MonomialIdeal::minimalize(vec![mono(&[(2, 1)]), mono(&[(1, 1), (1, 2)])]);
        assert_ne!(a.canonical_form(), b.canonical_form());
        assert_eq!(a.isomorphism_form(), b.isomorphism_form());
    }

    #[test]
    fn json_round_trip_and_default_ambient() {
        let raw = r#"{"n": 3, "generators": [[[1,1],[2,1]], [[1,2,2]]]}"#;
        let ideal = MonomialIdeal::from_json(raw).unwrap();
        assert_eq!(ideal.len(), 2);
        assert!(ideal.ambient().contains(&x(3, 1)));
        assert_eq!(ideal.generators()[1], SplitMonomial::from_terms([(x(1, 2), 2)]));
        let again = MonomialIdeal::from_json(&ideal.to_json()).unwrap();
        assert_eq!(again, ideal);
    }

    #[test]
    fn json_rejects_bad_entries() {
        assert!(MonomialIdeal::from_json(r#"{"n":1,"generators":[[[1]]]}"#).is_err());
        assert!(MonomialIdeal::from_json(r#"{"n":1,"generators":[[[0,1]]]}"#).is_err());
    }

    #[test]
    fn special_ideals() {
        assert_eq!(squarefree_power(4, 2).len(), 6);
        assert_eq!(maximal_ideal_power(3, 2).len(), 6);
        assert_eq!(box_polarization(3, 3).len(), 10);
        let std = standard_polarization(&maximal_ideal_power(3, 2));
        assert!(std.is_square_free());
        assert!(std.depolarize().bijective);
    }

    #[test]
    fn lcm_lattice_of_three_variables() {
        let ideal = squarefree_power(3, 1);
        // all nonempty subsets of {x1, x2, x3}
        assert_eq!(ideal.lcm_lattice().len(), 7);
    }

    #[test]
    fn densify_closes_gaps() {
        let ideal = MonomialIdeal::minimalize(vec![mono(&[(1, 3), (2, 5)]), mono(&[(1, 7)])]);
        let dense = ideal.densify();
        assert_eq!(dense.copies_per_base()[&1], 2);
        assert!(dense.ambient().contains(&x(2, 1)));
    }

    #[test]
    fn subsets_enumeration() {
        assert_eq!(subsets_of_size(4, 2).len(), 6);
        assert_eq!(subsets_of_size(5, 0), vec![0]);
        assert_eq!(mask_elements(0b1010), vec![2, 4]);
        assert_eq!(mask_from_elements([2, 4]), 0b1010);
    }
}
