//! Brute-force oracles shared by the integration tests. Each one is written
//! from the definitions and avoids the library's algorithms.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use polar_core::ideals::{MonomialIdeal, SplitMonomial, VarRef};

/// Hilbert numerator of `S/I` by inclusion-exclusion over generator subsets.
pub fn numerator_by_subsets(ideal: &MonomialIdeal) -> Vec<i64> {
    let gens = ideal.generators();
    let mut coeffs = vec![0i64; 1];
    for s in 0u64..(1 << gens.len()) {
        let mut lcm: BTreeMap<VarRef, u32> = BTreeMap::new();
        for (k, g) in gens.iter().enumerate() {
            if s >> k & 1 == 1 {
                for &(v, e) in g.terms() {
                    let slot = lcm.entry(v).or_insert(0);
                    *slot = (*slot).max(e);
                }
            }
        }
        let deg: u32 = lcm.values().sum();
        if coeffs.len() <= deg as usize {
            coeffs.resize(deg as usize + 1, 0);
        }
        coeffs[deg as usize] += if s.count_ones() % 2 == 0 { 1 } else { -1 };
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    coeffs
}

/// Rank over `F_p` for a large prime; boundary matrices of these tiny
/// complexes have no torsion at such primes.
fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    const P: i64 = 2_147_483_647;
    for r in rows.iter_mut() {
        for v in r.iter_mut() {
            *v = v.rem_euclid(P);
        }
    }
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], P - 2, P);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c] * inv % P;
                for (x, &y) in row[c..].iter_mut().zip(&pivot[c..]) {
                    *x = (*x - f * y).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, m: i64) -> i64 {
    let mut r = 1;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Reduced homology ranks of the simplicial complex given by all its faces
/// (as bitmasks), starting in dimension -1.
pub fn reduced_homology_of_faces(faces: &BTreeSet<u64>) -> Vec<usize> {
    if faces.is_empty() {
        return Vec::new();
    }
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap();
    let by_size: Vec<Vec<u64>> = (0..=top)
        .map(|k| faces.iter().copied().filter(|f| f.count_ones() as usize == k).collect())
        .collect();
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let index: HashMap<u64, usize> = by_size[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let rows: Vec<Vec<i64>> = by_size[k]
            .iter()
            .map(|&f| {
                let mut row = vec![0i64; by_size[k - 1].len()];
                let bits: Vec<u32> = (0..64).filter(|b| f >> b & 1 == 1).collect();
                for (pos, b) in bits.iter().enumerate() {
                    row[index[&(f & !(1 << b))]] = if pos % 2 == 0 { 1 } else { -1 };
                }
                row
            })
            .collect();
        ranks[k] = if rows.is_empty() { 0 } else { rank_mod_p(rows) };
    }
    let mut out: Vec<usize> = (0..=top).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Graded Betti totals from the upper Koszul simplicial complexes
/// `K^a = {c square-free, c <= a : x^{a-c} in I}` over every lcm of a
/// nonempty generator subset.
pub fn koszul_graded_betti(ideal: &MonomialIdeal) -> BTreeMap<(usize, u32), u64> {
    let gens = ideal.generators();
    let mut lattice: BTreeSet<SplitMonomial> = BTreeSet::new();
    for s in 1u64..(1 << gens.len()) {
        let l = (0..gens.len())
            .filter(|&k| s >> k & 1 == 1)
            .fold(SplitMonomial::one(), |a, k| a.lcm(&gens[k]));
        lattice.insert(l);
    }
    let mut out = BTreeMap::new();
    for a in lattice {
        let vars: Vec<(VarRef, u32)> = a.terms().to_vec();
        let mut faces = BTreeSet::new();
        for c in 0u64..(1 << vars.len()) {
            let quotient = SplitMonomial::from_terms(
                vars.iter()
                    .enumerate()
                    .map(|(k, &(v, e))| (v, e - (c >> k & 1) as u32)),
            );
            if gens.iter().any(|g| g.divides(&quotient)) {
                faces.insert(c);
            }
        }
        for (i, r) in reduced_homology_of_faces(&faces).into_iter().enumerate() {
            if r > 0 {
                *out.entry((i, a.degree())).or_insert(0) += r as u64;
            }
        }
    }
    out
}

/// Spanning trees of `K_n` counted over all `(n-1)`-edge subsets.
pub fn spanning_tree_count(n: u32) -> usize {
    let edges: Vec<(u32, u32)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
    let mut count = 0;
    for s in 0u64..(1 << edges.len()) {
        if s.count_ones() != n - 1 {
            continue;
        }
        let mut parent: Vec<u32> = (0..=n).collect();
        fn find(p: &mut Vec<u32>, x: u32) -> u32 {
            if p[x as usize] != x {
                let r = find(p, p[x as usize]);
                p[x as usize] = r;
            }
            p[x as usize]
        }
        let mut acyclic = true;
        for (k, &(a, b)) in edges.iter().enumerate() {
            if s >> k & 1 == 1 {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra == rb {
                    acyclic = false;
                    break;
                }
                parent[ra as usize] = rb;
            }
        }
        count += acyclic as usize;
    }
    count
}

/// Alexander dual of a square-free ideal: minimal subsets of the ambient
/// variables meeting every generator support, by exhaustive search.
pub fn dual_by_search(ideal: &MonomialIdeal) -> Vec<SplitMonomial> {
    let vars: Vec<VarRef> = ideal.ambient().iter().copied().collect();
    assert!(vars.len() <= 20, "search oracle limited to 20 variables");
    let supports: Vec<u32> = ideal
        .generators()
        .iter()
        .map(|g| g.support().fold(0u32, |m, v| m | 1 << vars.iter().position(|&w| w == v).unwrap()))
        .collect();
    let hits = |t: u32| supports.iter().all(|&s| s & t != 0);
    let mut minimal: Vec<u32> = Vec::new();
    let mut all: Vec<u32> = (0u32..(1 << vars.len())).filter(|&t| hits(t)).collect();
    all.sort_by_key(|t| t.count_ones());
    for t in all {
        if !minimal.iter().any(|&m| m & !t == 0) {
            minimal.push(t);
        }
    }
    let mut out: Vec<SplitMonomial> = minimal
        .into_iter()
        .map(|t| SplitMonomial::from_vars((0..vars.len()).filter(|&k| t >> k & 1 == 1).map(|k| vars[k])))
        .collect();
    out.sort();
    out
}

/// `x_b^(c)` shorthand.
pub fn v(b: u32, c: u32) -> VarRef {
    VarRef::new(b, c).unwrap()
}

/// Square-free monomial from `(base, copy)` pairs.
pub fn mono(vars: &[(u32, u32)]) -> SplitMonomial {
    SplitMonomial::from_vars(vars.iter().map(|&(b, c)| v(b, c)))
}
