//! Labeled spanning trees of `K_n` and the polarizations of `I_{n-1}` they
//! define, together with their explicit Alexander duals.
//!
//! Edge `e_l = (v_l, w_l)` carries label `l` (its 1-based position). Cutting
//! `e_l` splits the tree in two; vertices on the `v_l` side receive the
//! variable `x_{w_l}^(l)` and those on the `w_l` side receive `x_{v_l}^(l)`.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SplitMonomial, VarRef};

pub const MAX_ENUMERATION_N: u32 = 8;

/// A spanning tree of `K_n` with edges labeled `1..n-1` by position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct LabeledTree {
    n: u32,
    edges: Vec<(u32, u32)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeJson {
    pub n: u32,
    pub edges: Vec<[u32; 2]>,
}

impl TryFrom<TreeJson> for LabeledTree {
    type Error = Error;

    fn try_from(raw: TreeJson) -> Result<Self> {
        LabeledTree::new(raw.n, raw.edges.into_iter().map(|[v, w]| (v, w)).collect())
    }
}

impl From<LabeledTree> for TreeJson {
    fn from(t: LabeledTree) -> Self {
        TreeJson {
            n: t.n,
            edges: t.edges.iter().map(|&(v, w)| [v, w]).collect(),
        }
    }
}

impl LabeledTree {
    /// Validates a tree on `1..=n`; the orientation of each pair is kept.
    pub fn new(n: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidTree(format!("need at least 2 vertices, got {n}")));
        }
        if edges.len() != n as usize - 1 {
            return Err(Error::InvalidTree(format!(
                "a tree on {n} vertices has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut seen = BTreeSet::new();
        for &(v, w) in &edges {
            if v == 0 || w == 0 || v > n || w > n {
                return Err(Error::InvalidTree(format!("edge {v}-{w} leaves 1..={n}")));
            }
            if v == w {
                return Err(Error::InvalidTree(format!("loop at {v}")));
            }
            if !seen.insert((v.min(w), v.max(w))) {
                return Err(Error::InvalidTree(format!("edge {v}-{w} repeated")));
            }
        }
        let t = LabeledTree { n, edges };
        if t.component(1, None).len() != n as usize {
            return Err(Error::InvalidTree("edges do not connect all vertices".into()));
        }
        Ok(t)
    }

    /// Path `1 - 2 - ... - n` with `e_l = (l, l+1)`.
    pub fn path(n: u32) -> Result<Self> {
        LabeledTree::new(n, (1..n).map(|l| (l, l + 1)).collect())
    }

    /// Star centred at `n` with `e_l = (l, n)`.
    pub fn star(n: u32) -> Result<Self> {
        LabeledTree::new(n, (1..n).map(|l| (l, n)).collect())
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Edges in label order; label `l` is at index `l - 1`.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    /// Undirected edge set as sorted pairs.
    pub fn edge_set(&self) -> BTreeSet<(u32, u32)> {
        self.edges.iter().map(|&(v, w)| (v.min(w), v.max(w))).collect()
    }

    fn adjacency(&self) -> Vec<Vec<(u32, usize)>> {
        let mut adj = vec![Vec::new(); self.n as usize + 1];
        for (k, &(v, w)) in self.edges.iter().enumerate() {
            adj[v as usize].push((w, k));
            adj[w as usize].push((v, k));
        }
        adj
    }

    /// Vertices reachable from `start` without using edge index `skip`.
    fn component(&self, start: u32, skip: Option<usize>) -> BTreeSet<u32> {
        let adj = self.adjacency();
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &(w, k) in &adj[u as usize] {
                if Some(k) != skip && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    /// Edge labels along the unique path from `i` to `j`.
    pub fn path_labels(&self, i: u32, j: u32) -> Vec<u32> {
        let adj = self.adjacency();
        let mut parent: Vec<Option<(u32, usize)>> = vec![None; self.n as usize + 1];
        let mut queue = VecDeque::from([i]);
        let mut seen = vec![false; self.n as usize + 1];
        seen[i as usize] = true;
        while let Some(u) = queue.pop_front() {
            for &(w, k) in &adj[u as usize] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    parent[w as usize] = Some((u, k));
                    queue.push_back(w);
                }
            }
        }
        let mut labels = Vec::new();
        let mut cur = j;
        while let Some((p, k)) = parent[cur as usize] {
            labels.push(k as u32 + 1);
            cur = p;
        }
        labels.reverse();
        labels
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }
}

/// Decodes a Prüfer sequence over `1..=n` into sorted edges `v < w`.
fn prufer_decode(n: u32, seq: &[u32]) -> Vec<(u32, u32)> {
    let mut degree = vec![1u32; n as usize + 1];
    for &s in seq {
        degree[s as usize] += 1;
    }
    let mut edges = Vec::with_capacity(n as usize - 1);
    for &s in seq {
        let leaf = (1..=n).find(|&v| degree[v as usize] == 1).expect("a leaf exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf as usize] -= 1;
        degree[s as usize] -= 1;
    }
    let rest: Vec<u32> = (1..=n).filter(|&v| degree[v as usize] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges.sort_unstable();
    edges
}

/// All `n^{n-2}` labeled spanning trees of `K_n` in Prüfer-sequence order,
/// each with sorted edges `v < w` labeled in order.
pub fn enumerate_spanning_trees(n: u32) -> Result<Vec<LabeledTree>> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::out_of_range("n", n as usize, 2, MAX_ENUMERATION_N as usize));
    }
    let len = n as usize - 2;
    let total = (n as usize).pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut seq = vec![1u32; len];
    for _ in 0..total {
        out.push(LabeledTree {
            n,
            edges: prufer_decode(n, &seq),
        });
        for s in seq.iter_mut().rev() {
            if *s < n {
                *s += 1;
                break;
            }
            *s = 1;
        }
    }
    Ok(out)
}

/// `m_v` for every vertex `v = 1..=n`, in vertex order.
pub fn tree_generators(t: &LabeledTree) -> Vec<SplitMonomial> {
    let mut vars: Vec<Vec<VarRef>> = vec![Vec::new(); t.n as usize + 1];
    for (k, &(v, w)) in t.edges.iter().enumerate() {
        let l = k as u32 + 1;
        let side_v = t.component(v, Some(k));
        for u in 1..=t.n {
            let label = if side_v.contains(&u) {
                VarRef::raw(w, l)
            } else {
                VarRef::raw(v, l)
            };
            vars[u as usize].push(label);
        }
    }
    vars.into_iter().skip(1).map(SplitMonomial::from_vars).collect()
}

fn tree_ambient(t: &LabeledTree) -> impl Iterator<Item = VarRef> + '_ {
    t.edges.iter().enumerate().flat_map(|(k, &(v, w))| {
        let l = k as u32 + 1;
        [VarRef::raw(v, l), VarRef::raw(w, l)]
    })
}

/// The polarization `(m_1, ..., m_n)` of `I_{n-1}` attached to `t`.
pub fn tree_polarization(t: &LabeledTree) -> MonomialIdeal {
    MonomialIdeal::minimalize(tree_generators(t)).with_ambient(tree_ambient(t))
}

/// Generators `x_i^(p) x_j^(q)` where the path from `i` to `j` starts with
/// label `p` and ends with label `q`; the Alexander dual of
/// [`tree_polarization`].
pub fn tree_dual(t: &LabeledTree) -> MonomialIdeal {
    let mut gens = Vec::new();
    for i in 1..=t.n {
        for j in i + 1..=t.n {
            let labels = t.path_labels(i, j);
            let p = labels[0];
            let q = *labels.last().expect("nonempty path");
            gens.push(SplitMonomial::from_vars([VarRef::raw(i, p), VarRef::raw(j, q)]));
        }
    }
    MonomialIdeal::minimalize(gens).with_ambient(tree_ambient(t))
}

/// Graph on the minimal generators: `m ~ m'` when `deg lcm(m, m') = deg m + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationGraph {
    pub vertices: Vec<SplitMonomial>,
    pub edges: Vec<(usize, usize)>,
    pub connected: bool,
}

impl RelationGraph {
    /// Edges as unordered pairs of generators.
    pub fn edge_monomials(&self) -> BTreeSet<(SplitMonomial, SplitMonomial)> {
        self.edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (&self.vertices[a], &self.vertices[b]);
                if x <= y {
                    (x.clone(), y.clone())
                } else {
                    (y.clone(), x.clone())
                }
            })
            .collect()
    }
}

/// Linear-relation graph of an equigenerated ideal.
pub fn linear_relation_graph(ideal: &MonomialIdeal) -> Result<RelationGraph> {
    let d = match ideal.generating_degree() {
        Some(d) => d,
        None if ideal.is_zero() => 0,
        None => return Err(Error::NotEquigenerated),
    };
    let gens = ideal.generators().to_vec();
    let mut edges = Vec::new();
    for a in 0..gens.len() {
        for b in a + 1..gens.len() {
            if gens[a].lcm(&gens[b]).degree() == d + 1 {
                edges.push((a, b));
            }
        }
    }
    let connected = is_connected(gens.len(), &edges);
    Ok(RelationGraph {
        vertices: gens,
        edges,
        connected,
    })
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n <= 1 {
        return true;
    }
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut stack = vec![0];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for &w in &adj[u] {
            if !seen[w] {
                seen[w] = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Reads `t`'s edges as pairs of generators `(m_v, m_w)`.
pub fn tree_edges_as_generators(t: &LabeledTree) -> BTreeSet<(SplitMonomial, SplitMonomial)> {
    let gens = tree_generators(t);
    t.edge_set()
        .into_iter()
        .map(|(v, w)| {
            let (x, y) = (&gens[v as usize - 1], &gens[w as usize - 1]);
            if x <= y {
                (x.clone(), y.clone())
            } else {
                (y.clone(), x.clone())
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::alexander_dual;
    use crate::ideals::squarefree_power;

    fn m(vars: &[(u32, u32)]) -> SplitMonomial {
        SplitMonomial::from_vars(vars.iter().map(|&(b, c)| VarRef::new(b, c).unwrap()))
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_spanning_trees(2).unwrap().len(), 1);
        assert_eq!(enumerate_spanning_trees(3).unwrap().len(), 3);
        assert_eq!(enumerate_spanning_trees(4).unwrap().len(), 16);
        assert_eq!(enumerate_spanning_trees(5).unwrap().len(), 125);
        assert!(enumerate_spanning_trees(1).is_err());
        assert!(enumerate_spanning_trees(9).is_err());
    }

    #[test]
    fn enumerated_trees_are_distinct_and_valid() {
        let trees = enumerate_spanning_trees(5).unwrap();
        let sets: BTreeSet<_> = trees.iter().map(|t| t.edge_set()).collect();
        assert_eq!(sets.len(), 125);
        for t in &trees {
            assert!(LabeledTree::new(5, t.edges().to_vec()).is_ok());
        }
    }

    #[test]
    fn invalid_trees() {
        assert!(LabeledTree::new(3, vec![(1, 2)]).is_err());
        assert!(LabeledTree::new(4, vec![(1, 2), (2, 1), (3, 4)]).is_err());
        assert!(LabeledTree::new(4, vec![(1, 2), (1, 2), (3, 4)]).is_err());
        assert!(LabeledTree::new(3, vec![(1, 1), (2, 3)]).is_err());
        assert!(LabeledTree::new(3, vec![(1, 4), (2, 3)]).is_err());
    }

    #[test]
    fn path_three_polarization_and_dual() {
        let t = LabeledTree::path(3).unwrap();
        assert_eq!(
            tree_generators(&t),
            vec![m(&[(2, 1), (3, 2)]), m(&[(1, 1), (3, 2)]), m(&[(1, 1), (2, 2)])]
        );
        let dual = tree_dual(&t);
        let expected = MonomialIdeal::minimalize(vec![
            m(&[(1, 1), (2, 1)]),
            m(&[(1, 1), (3, 2)]),
            m(&[(2, 2), (3, 2)]),
        ]);
        assert_eq!(dual.generators(), expected.generators());
        assert_eq!(alexander_dual(&tree_polarization(&t)).unwrap(), dual);
    }

    #[test]
    fn orientation_changes_labels_only() {
        let a = LabeledTree::new(3, vec![(1, 2), (2, 3)]).unwrap();
        let b = LabeledTree::new(3, vec![(2, 1), (3, 2)]).unwrap();
        assert_eq!(tree_polarization(&a), tree_polarization(&b));
    }

    #[test]
    fn relation_graph_of_squarefree_power_is_complete() {
        let g = linear_relation_graph(&squarefree_power(4, 3)).unwrap();
        assert_eq!(g.edges.len(), 6);
        assert!(g.connected);
    }

    #[test]
    fn relation_graph_recovers_tree() {
        for t in enumerate_spanning_trees(4).unwrap() {
            let g = linear_relation_graph(&tree_polarization(&t)).unwrap();
            assert_eq!(g.edge_monomials(), tree_edges_as_generators(&t));
            assert!(g.connected);
        }
    }

    #[test]
    fn relation_graph_requires_single_degree() {
        let i = MonomialIdeal::minimalize(vec![m(&[(1, 1)]), m(&[(2, 1), (3, 1)])]);
        assert_eq!(linear_relation_graph(&i), Err(Error::NotEquigenerated));
    }

    #[test]
    fn json_round_trip() {
        let t = LabeledTree::star(4).unwrap();
        let back: LabeledTree = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<LabeledTree>(r#"{"n":3,"edges":[[1,2]]}"#).is_err());
    }
}
