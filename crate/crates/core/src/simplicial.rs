//! Reduced homology of simplicial complexes given by facets over a ground
//! set of at most 64 points.
//!
//! Before building chain groups the complex is shrunk: a complex whose
//! facets share a point is a cone, and a complex with fewer facets than
//! points is replaced by its nerve (same homotopy type, smaller ground set).

use std::collections::HashMap;

use crate::linalg::SparseMatrix;

/// Reduced Betti numbers `[dim H̃_{-1}, dim H̃_0, dim H̃_1, ...]`.
///
/// `facets` need not be maximal or distinct. An empty facet list is the
/// void complex (no faces at all), whose reduced homology vanishes; a
/// single empty facet is the complex `{∅}` with `H̃_{-1} = 1`.
pub fn reduced_homology(facets: &[u64]) -> Vec<usize> {
    let mut facets = maximal(facets.to_vec());
    loop {
        if facets.is_empty() {
            return Vec::new();
        }
        if facets.len() == 1 && facets[0] == 0 {
            return vec![1];
        }
        if facets.iter().fold(u64::MAX, |a, &f| a & f) != 0 {
            return Vec::new();
        }
        let ground = facets.iter().fold(0u64, |a, &f| a | f);
        if facets.len() < ground.count_ones() as usize {
            facets = maximal(nerve(&facets, ground));
        } else {
            break;
        }
    }
    homology_of_faces(&facets)
}

fn maximal(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & s == s) {
            kept.push(s);
        }
    }
    kept
}

/// Facets of the nerve: for each point, the set of facets containing it.
fn nerve(facets: &[u64], ground: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut rest = ground;
    while rest != 0 {
        let p = rest.trailing_zeros();
        rest &= rest - 1;
        let star = facets
            .iter()
            .enumerate()
            .filter(|(_, &f)| f >> p & 1 == 1)
            .fold(0u64, |m, (k, _)| m | 1 << k);
        out.push(star);
    }
    out
}

fn homology_of_faces(facets: &[u64]) -> Vec<usize> {
    let top = facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    // faces grouped by cardinality
    let mut by_size: Vec<Vec<u64>> = vec![Vec::new(); top + 1];
    let mut seen: std::collections::HashSet<u64> = std::collections::HashSet::new();
    for &f in facets {
        // enumerate all subsets of f
        let mut s = f;
        loop {
            if seen.insert(s) {
                by_size[s.count_ones() as usize].push(s);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    for faces in &mut by_size {
        faces.sort_unstable();
    }
    let index: Vec<HashMap<u64, usize>> = by_size
        .iter()
        .map(|faces| faces.iter().enumerate().map(|(k, &f)| (f, k)).collect())
        .collect();

    // rank of ∂ from size k to size k-1, for k = 1..=top
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let mut m = SparseMatrix::new(by_size[k - 1].len());
        for &face in &by_size[k] {
            let mut col = Vec::with_capacity(k);
            let mut rest = face;
            let mut pos = 0;
            while rest != 0 {
                let bit = rest & rest.wrapping_neg();
                rest ^= bit;
                let sign = if pos % 2 == 0 { 1 } else { -1 };
                col.push((index[k - 1][&(face ^ bit)], sign));
                pos += 1;
            }
            m.push_col(col);
        }
        ranks[k] = m.rank();
    }
    // H̃_{k-1} lives on faces of size k
    let mut out: Vec<usize> = (0..=top)
        .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_is_acyclic() {
        assert!(reduced_homology(&[0b1]).is_empty());
    }

    #[test]
    fn two_points() {
        assert_eq!(reduced_homology(&[0b01, 0b10]), vec![0, 1]);
    }

    #[test]
    fn hollow_triangle() {
        assert_eq!(reduced_homology(&[0b011, 0b101, 0b110]), vec![0, 0, 1]);
    }

    #[test]
    fn empty_face_only() {
        assert_eq!(reduced_homology(&[0]), vec![1]);
        assert!(reduced_homology(&[]).is_empty());
    }

    #[test]
    fn hollow_tetrahedron_via_nerve() {
        let facets = [0b0111, 0b1011, 0b1101, 0b1110];
        assert_eq!(reduced_homology(&facets), vec![0, 0, 0, 1]);
        assert_eq!(homology_of_faces(&facets), vec![0, 0, 0, 1]);
    }

    #[test]
    fn nerve_preserves_homology() {
        // circle on six points as a hexagon, plus a disjoint edge
        let hex: Vec<u64> = (0..6).map(|k| (1u64 << k) | (1u64 << ((k + 1) % 6))).collect();
        let mut facets = hex.clone();
        facets.push(0b11 << 6);
        assert_eq!(homology_of_faces(&facets), vec![0, 1, 1]);
        assert_eq!(reduced_homology(&facets), vec![0, 1, 1]);
    }
}
