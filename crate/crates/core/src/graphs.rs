//! Simple graphs on split variables, their edge ideals, and one-step vertex
//! splits.
//!
//! Splitting `i` along `N(i) = A ∪ B` keeps `i` adjacent to `A` and adds a
//! new copy `i'` adjacent to `B`. The result polarizes the edge ideal iff
//! every `a ∈ A` is adjacent to every `b ∈ B`; a missing edge `a b` makes
//! `x_i - x_i'` a zero divisor.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SplitMonomial, VarRef};

pub const MAX_LINK: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct SimpleGraph {
    vertices: BTreeSet<VarRef>,
    edges: BTreeSet<(VarRef, VarRef)>,
}

/// Wire form; `edges` index into `vertices`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphJson {
    pub vertices: Vec<[u32; 2]>,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for SimpleGraph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let vertices: Vec<VarRef> = raw
            .vertices
            .iter()
            .map(|&[b, c]| VarRef::new(b, c))
            .collect::<Result<_>>()?;
        let edges = raw
            .edges
            .iter()
            .map(|&[u, v]| match (vertices.get(u), vertices.get(v)) {
                (Some(&a), Some(&b)) => Ok((a, b)),
                _ => Err(Error::InvalidGraph(format!("edge [{u}, {v}] indexes past the vertex list"))),
            })
            .collect::<Result<Vec<_>>>()?;
        SimpleGraph::new(vertices, edges)
    }
}

impl From<SimpleGraph> for GraphJson {
    fn from(g: SimpleGraph) -> Self {
        let index: BTreeMap<VarRef, usize> = g.vertices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        GraphJson {
            vertices: g.vertices.iter().map(|v| [v.base, v.copy]).collect(),
            edges: g.edges.iter().map(|(a, b)| [index[a], index[b]]).collect(),
        }
    }
}

/// An unordered bipartition `(A, B)` of a link; `A` holds the smallest
/// neighbour.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Split {
    pub a: Vec<VarRef>,
    pub b: Vec<VarRef>,
}

impl SimpleGraph {
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VarRef>,
        E: IntoIterator<Item = (VarRef, VarRef)>,
    {
        let vertices: BTreeSet<VarRef> = vertices.into_iter().collect();
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at {u}")));
            }
            if !vertices.contains(&u) || !vertices.contains(&v) {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} uses an unknown vertex")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} repeated")));
            }
        }
        Ok(SimpleGraph { vertices, edges: set })
    }

    /// `K_n` on plain variables.
    pub fn complete(n: u32) -> Self {
        let vs: Vec<VarRef> = (1..=n).map(VarRef::plain).collect();
        let edges = (0..vs.len()).flat_map(|a| (a + 1..vs.len()).map(move |b| (a, b)));
        let pairs: Vec<_> = edges.map(|(a, b)| (vs[a], vs[b])).collect();
        SimpleGraph::new(vs, pairs).expect("complete graph")
    }

    /// Path `1 - 2 - ... - n` on plain variables.
    pub fn path(n: u32) -> Self {
        let vs: Vec<VarRef> = (1..=n).map(VarRef::plain).collect();
        let pairs: Vec<_> = vs.windows(2).map(|w| (w[0], w[1])).collect();
        SimpleGraph::new(vs, pairs).expect("path graph")
    }

    pub fn vertices(&self) -> &BTreeSet<VarRef> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<(VarRef, VarRef)> {
        &self.edges
    }

    pub fn adjacent(&self, u: VarRef, v: VarRef) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, i: VarRef) -> Vec<VarRef> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == i {
                    Some(b)
                } else if b == i {
                    Some(a)
                } else {
                    None
                }
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }
}

/// Generators `x_u x_v` over the edges.
pub fn edge_ideal(g: &SimpleGraph) -> MonomialIdeal {
    MonomialIdeal::minimalize(g.edges.iter().map(|&(u, v)| SplitMonomial::from_vars([u, v])))
        .with_ambient(g.vertices.iter().copied())
}

fn check_vertex(g: &SimpleGraph, i: VarRef) -> Result<Vec<VarRef>> {
    if !g.vertices.contains(&i) {
        return Err(Error::InvalidGraph(format!("{i} is not a vertex")));
    }
    let link = g.neighbors(i);
    if link.len() > MAX_LINK {
        return Err(Error::out_of_range("link size", link.len(), 0, MAX_LINK));
    }
    Ok(link)
}

/// Every unordered bipartition of `N(i)`, valid or not.
pub fn all_bipartitions(g: &SimpleGraph, i: VarRef) -> Result<Vec<Split>> {
    let link = check_vertex(g, i)?;
    if link.len() < 2 {
        return Ok(Vec::new());
    }
    let rest = &link[1..];
    let mut out = Vec::new();
    for mask in 1u32..(1 << rest.len()) {
        let mut a = vec![link[0]];
        let mut b = Vec::new();
        for (k, &v) in rest.iter().enumerate() {
            if mask >> k & 1 == 1 {
                b.push(v);
            } else {
                a.push(v);
            }
        }
        out.push(Split { a, b });
    }
    Ok(out)
}

/// A pair `a ∈ A`, `b ∈ B` with `a b` not an edge, if any.
pub fn split_witness(g: &SimpleGraph, split: &Split) -> Option<(VarRef, VarRef)> {
    split
        .a
        .iter()
        .flat_map(|&a| split.b.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| !g.adjacent(a, b))
}

/// Bipartitions of the link of `i` spanned by a complete bipartite graph.
pub fn valid_splits(g: &SimpleGraph, i: VarRef) -> Result<Vec<Split>> {
    Ok(all_bipartitions(g, i)?
        .into_iter()
        .filter(|s| split_witness(g, s).is_none())
        .collect())
}

/// Replaces `i` by `i` (adjacent to `A`) and a fresh copy `i'` (adjacent to
/// `B`). The split must partition `N(i)` and be complete bipartite.
pub fn split_vertex(g: &SimpleGraph, i: VarRef, split: &Split) -> Result<SimpleGraph> {
    let h = split_vertex_unchecked(g, i, split)?;
    if let Some((x, y)) = split_witness(g, split) {
        return Err(Error::InvalidSplit(format!(
            "{x} and {y} are not adjacent, so {x}*{y} is missing from the edge ideal"
        )));
    }
    Ok(h)
}

/// [`split_vertex`] without the complete-bipartite requirement. The result
/// need not be a polarization; useful for feeding rejected splits to an
/// independent oracle.
pub fn split_vertex_unchecked(g: &SimpleGraph, i: VarRef, split: &Split) -> Result<SimpleGraph> {
    let link = check_vertex(g, i)?;
    let a: BTreeSet<VarRef> = split.a.iter().copied().collect();
    let b: BTreeSet<VarRef> = split.b.iter().copied().collect();
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidSplit("both sides must be nonempty".into()));
    }
    if !a.is_disjoint(&b) || a.len() + b.len() != link.len() || !a.union(&b).all(|v| link.contains(v)) {
        return Err(Error::InvalidSplit(format!("sides do not partition the link of {i}")));
    }
    let fresh = VarRef::raw(
        i.base,
        g.vertices.iter().filter(|v| v.base == i.base).map(|v| v.copy).max().unwrap_or(0) + 1,
    );
    let mut vertices = g.vertices.clone();
    vertices.insert(fresh);
    let edges = g
        .edges
        .iter()
        .map(|&(u, v)| {
            if (u == i && b.contains(&v)) || (v == i && b.contains(&u)) {
                let other = if u == i { v } else { u };
                (fresh, other)
            } else {
                (u, v)
            }
        })
        .collect::<Vec<_>>();
    SimpleGraph::new(vertices, edges)
}

/// Parses `"2|3,4"` into a split of plain vertices.
pub fn parse_split(s: &str) -> Result<Split> {
    let (lhs, rhs) = s
        .split_once('|')
        .ok_or_else(|| Error::InvalidSplit(format!("expected A|B, got {s:?}")))?;
    let side = |t: &str| -> Result<Vec<VarRef>> {
        t.split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| {
                let p = p.trim();
                let (b, c) = match p.split_once('_') {
                    Some((b, c)) => (b, c),
                    None => (p, "1"),
                };
                let parse = |x: &str| x.parse::<u32>().map_err(|_| Error::InvalidSplit(format!("bad vertex {p:?}")));
                VarRef::new(parse(b)?, parse(c)?)
            })
            .collect()
    };
    let mut a = side(lhs)?;
    let mut b = side(rhs)?;
    a.sort();
    b.sort();
    Ok(Split { a, b })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::is_polarization;
    use crate::ideals::squarefree_power;

    fn v(b: u32) -> VarRef {
        VarRef::plain(b)
    }

    #[test]
    fn edge_ideals() {
        assert_eq!(edge_ideal(&SimpleGraph::complete(3)), squarefree_power(3, 2));
        assert_eq!(edge_ideal(&SimpleGraph::complete(5)), squarefree_power(5, 2));
        assert_eq!(edge_ideal(&SimpleGraph::path(3)).len(), 2);
    }

    #[test]
    fn splits_of_small_graphs() {
        let k3 = SimpleGraph::complete(3);
        assert_eq!(valid_splits(&k3, v(1)).unwrap(), vec![Split { a: vec![v(2)], b: vec![v(3)] }]);
        assert!(valid_splits(&SimpleGraph::path(3), v(2)).unwrap().is_empty());
        assert_eq!(valid_splits(&SimpleGraph::complete(4), v(1)).unwrap().len(), 3);
    }

    #[test]
    fn split_triangle() {
        let k3 = SimpleGraph::complete(3);
        let s = Split { a: vec![v(2)], b: vec![v(3)] };
        let g = split_vertex(&k3, v(1), &s).unwrap();
        let expected = MonomialIdeal::minimalize(vec![
            SplitMonomial::from_vars([v(1), v(2)]),
            SplitMonomial::from_vars([VarRef::new(1, 2).unwrap(), v(3)]),
            SplitMonomial::from_vars([v(2), v(3)]),
        ]);
        assert_eq!(edge_ideal(&g).generators(), expected.generators());
        assert!(is_polarization(&edge_ideal(&g), &edge_ideal(&k3)).ok);
        assert_eq!(edge_ideal(&g).depolarize().ideal.generators(), edge_ideal(&k3).generators());
    }

    #[test]
    fn rejected_split_has_witness_and_fails_oracle() {
        let p = SimpleGraph::path(3);
        let splits = all_bipartitions(&p, v(2)).unwrap();
        assert_eq!(splits.len(), 1);
        assert_eq!(split_witness(&p, &splits[0]), Some((v(1), v(3))));
        assert!(matches!(split_vertex(&p, v(2), &splits[0]), Err(Error::InvalidSplit(_))));
        // build the split graph by hand and ask the oracle
        let fresh = VarRef::new(2, 2).unwrap();
        let g = SimpleGraph::new([v(1), v(2), fresh, v(3)], [(v(1), v(2)), (fresh, v(3))]).unwrap();
        assert!(!is_polarization(&edge_ideal(&g), &edge_ideal(&p)).ok);
    }

    #[test]
    fn bad_splits_rejected() {
        let k4 = SimpleGraph::complete(4);
        let bad = Split { a: vec![v(2)], b: vec![v(3)] };
        assert!(split_vertex(&k4, v(1), &bad).is_err());
        let empty = Split { a: vec![v(2), v(3), v(4)], b: vec![] };
        assert!(split_vertex(&k4, v(1), &empty).is_err());
    }

    #[test]
    fn parse_and_json() {
        assert_eq!(parse_split("2|3,4").unwrap(), Split { a: vec![v(2)], b: vec![v(3), v(4)] });
        assert!(parse_split("2,3").is_err());
        let g = SimpleGraph::complete(4);
        let back: SimpleGraph = serde_json::from_str(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<SimpleGraph>(r#"{"vertices":[[1,1]],"edges":[[0,0]]}"#).is_err());
    }
}
