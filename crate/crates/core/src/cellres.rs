//! Labeled polyhedral cell complexes and certification of cellular
//! resolutions.
//!
//! Faces are stored with their dimension, signed facet incidences and
//! vertex sets. Face 0 is always the empty face (dimension -1, label 1),
//! so the cellular chain complex is augmented and acyclicity of a
//! nonempty complex means vanishing reduced homology.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, SplitMonomial};
use crate::linalg::SparseMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Face {
    pub dim: i32,
    /// `(face index, ±1)` for each codimension-one face.
    pub facets: Vec<(usize, i8)>,
    /// Sorted vertex indices into the label list.
    pub vertices: Vec<usize>,
}

/// A cell complex with monomial vertex labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson", into = "ComplexJson")]
pub struct LabeledCellComplex {
    faces: Vec<Face>,
    labels: Vec<SplitMonomial>,
    face_labels: Vec<SplitMonomial>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexJson {
    pub faces: Vec<Face>,
    pub labels: Vec<SplitMonomial>,
}

impl TryFrom<ComplexJson> for LabeledCellComplex {
    type Error = Error;

    fn try_from(raw: ComplexJson) -> Result<Self> {
        LabeledCellComplex::new(raw.faces, raw.labels)
    }
}

impl From<LabeledCellComplex> for ComplexJson {
    fn from(c: LabeledCellComplex) -> Self {
        ComplexJson {
            faces: c.faces,
            labels: c.labels,
        }
    }
}

/// Incremental construction; starts with the empty face and one vertex per
/// label.
#[derive(Clone, Debug)]
pub struct ComplexBuilder {
    faces: Vec<Face>,
    labels: Vec<SplitMonomial>,
}

impl ComplexBuilder {
    pub fn new(labels: Vec<SplitMonomial>) -> Self {
        let mut faces = vec![Face {
            dim: -1,
            facets: Vec::new(),
            vertices: Vec::new(),
        }];
        for k in 0..labels.len() {
            faces.push(Face {
                dim: 0,
                facets: vec![(0, 1)],
                vertices: vec![k],
            });
        }
        ComplexBuilder { faces, labels }
    }

    /// Face index of vertex `k`.
    pub fn vertex(&self, k: usize) -> usize {
        k + 1
    }

    /// Adds the edge from vertex `u` to vertex `v`, oriented `∂ = v - u`.
    pub fn add_edge(&mut self, u: usize, v: usize) -> usize {
        self.add_face(vec![(self.vertex(v), 1), (self.vertex(u), -1)])
    }

    /// Adds a face of dimension one more than its facets.
    pub fn add_face(&mut self, facets: Vec<(usize, i8)>) -> usize {
        let dim = facets.first().map_or(0, |&(f, _)| self.faces[f].dim + 1);
        let mut vertices: Vec<usize> = facets
            .iter()
            .flat_map(|&(f, _)| self.faces[f].vertices.iter().copied())
            .collect();
        vertices.sort_unstable();
        vertices.dedup();
        self.faces.push(Face { dim, facets, vertices });
        self.faces.len() - 1
    }

    pub fn build(self) -> Result<LabeledCellComplex> {
        LabeledCellComplex::new(self.faces, self.labels)
    }
}

fn lcm_of(labels: &[SplitMonomial], vertices: &[usize]) -> SplitMonomial {
    vertices
        .iter()
        .fold(SplitMonomial::one(), |a, &v| a.lcm(&labels[v]))
}

/// Outcome of an acyclicity test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum Acyclicity {
    Acyclic,
    /// No vertices at all; never counted as acyclic.
    Empty,
    /// Reduced Betti numbers from dimension -1 upward.
    NotAcyclic { homology: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionCheck {
    pub ok: bool,
    /// First lcm-lattice point (in sorted order) whose restriction fails.
    pub failing_degree: Option<SplitMonomial>,
    pub failure: Option<Acyclicity>,
    pub degrees_checked: usize,
}

impl LabeledCellComplex {
    /// Validates dimensions, incidences and vertex sets; face labels are
    /// derived as lcms of vertex labels.
    pub fn new(faces: Vec<Face>, labels: Vec<SplitMonomial>) -> Result<Self> {
        let bad = |msg: String| Err(Error::MalformedComplex(msg));
        let empties = faces.iter().filter(|f| f.dim == -1).count();
        if empties != 1 {
            return bad(format!("expected exactly one empty face, found {empties}"));
        }
        for (k, f) in faces.iter().enumerate() {
            if f.dim < -1 {
                return bad(format!("face {k} has dimension {}", f.dim));
            }
            if f.vertices.windows(2).any(|w| w[0] >= w[1]) || f.vertices.iter().any(|&v| v >= labels.len()) {
                return bad(format!("face {k} has unsorted or out-of-range vertices"));
            }
            for &(g, s) in &f.facets {
                if g >= faces.len() || faces[g].dim != f.dim - 1 {
                    return bad(format!("face {k} lists {g} as a facet with the wrong dimension"));
                }
                if s != 1 && s != -1 {
                    return bad(format!("face {k} has incidence sign {s}"));
                }
            }
            match f.dim {
                -1 => {
                    if !f.vertices.is_empty() || !f.facets.is_empty() {
                        return bad("the empty face has vertices or facets".into());
                    }
                }
                0 => {
                    if f.vertices.len() != 1 || f.facets.len() != 1 {
                        return bad(format!("vertex face {k} must have one vertex and the empty facet"));
                    }
                }
                _ => {
                    let mut union: Vec<usize> = f
                        .facets
                        .iter()
                        .flat_map(|&(g, _)| faces[g].vertices.iter().copied())
                        .collect();
                    union.sort_unstable();
                    union.dedup();
                    if union != f.vertices || f.facets.is_empty() {
                        return bad(format!("face {k}: vertices differ from the union of its facets"));
                    }
                }
            }
        }
        let mut vertex_faces: Vec<usize> = faces
            .iter()
            .filter(|f| f.dim == 0)
            .map(|f| f.vertices[0])
            .collect();
        vertex_faces.sort_unstable();
        if vertex_faces != (0..labels.len()).collect::<Vec<_>>() {
            return bad("every label needs exactly one vertex face".into());
        }
        let face_labels = faces.iter().map(|f| lcm_of(&labels, &f.vertices)).collect();
        Ok(LabeledCellComplex {
            faces,
            labels,
            face_labels,
        })
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    /// Vertex labels.
    pub fn labels(&self) -> &[SplitMonomial] {
        &self.labels
    }

    /// `a_F`, the lcm of the vertex labels of face `k` (1 for the empty face).
    pub fn face_label(&self, k: usize) -> &SplitMonomial {
        &self.face_labels[k]
    }

    pub fn dimension(&self) -> i32 {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(-1)
    }

    /// Number of faces in dimensions `0, 1, ..., dim`.
    pub fn face_counts(&self) -> Vec<usize> {
        let top = self.dimension();
        (0..=top)
            .map(|d| self.faces.iter().filter(|f| f.dim == d).count())
            .collect()
    }

    /// Checks `∂∘∂ = 0` on integer chains, including `∂_0` onto the empty face.
    pub fn boundary_squared_zero(&self) -> bool {
        self.faces.iter().all(|f| {
            let mut acc: HashMap<usize, i64> = HashMap::new();
            for &(g, s) in &f.facets {
                for &(h, t) in &self.faces[g].facets {
                    *acc.entry(h).or_insert(0) += s as i64 * t as i64;
                }
            }
            acc.values().all(|&c| c == 0)
        })
    }

    /// Every facet's label divides its face's label.
    pub fn labels_monotone(&self) -> bool {
        self.faces.iter().enumerate().all(|(k, f)| {
            f.facets
                .iter()
                .all(|&(g, _)| self.face_labels[g].divides(&self.face_labels[k]))
        })
    }

    fn restricted_indices(&self, b: &SplitMonomial) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&k| self.face_labels[k].divides(b))
            .collect()
    }

    fn subcomplex(&self, keep: &[usize]) -> LabeledCellComplex {
        let kept_vertices: Vec<usize> = keep
            .iter()
            .filter(|&&k| self.faces[k].dim == 0)
            .map(|&k| self.faces[k].vertices[0])
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let vmap: HashMap<usize, usize> = kept_vertices.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let fmap: HashMap<usize, usize> = keep.iter().enumerate().map(|(n, &o)| (o, n)).collect();
        let faces = keep
            .iter()
            .map(|&k| {
                let f = &self.faces[k];
                Face {
                    dim: f.dim,
                    facets: f.facets.iter().map(|&(g, s)| (fmap[&g], s)).collect(),
                    vertices: f.vertices.iter().map(|v| vmap[v]).collect(),
                }
            })
            .collect();
        let labels = kept_vertices.iter().map(|&v| self.labels[v].clone()).collect();
        LabeledCellComplex::new(faces, labels).expect("restriction of a valid complex")
    }

    /// The subcomplex of faces whose label divides `b`.
    pub fn restrict(&self, b: &SplitMonomial) -> LabeledCellComplex {
        self.subcomplex(&self.restricted_indices(b))
    }

    /// Reduced Betti numbers `[H̃_{-1}, H̃_0, ...]` over the rationals,
    /// trailing zeros trimmed.
    pub fn reduced_homology(&self) -> Vec<usize> {
        homology_of(&self.faces, &(0..self.faces.len()).collect::<Vec<_>>())
    }

    pub fn acyclicity(&self) -> Acyclicity {
        if self.labels.is_empty() {
            return Acyclicity::Empty;
        }
        let h = self.reduced_homology();
        if h.is_empty() {
            Acyclicity::Acyclic
        } else {
            Acyclicity::NotAcyclic { homology: h }
        }
    }

    pub fn is_acyclic(&self) -> bool {
        self.acyclicity() == Acyclicity::Acyclic
    }

    /// A face/facet pair `(face, facet)` with equal labels, if any.
    pub fn minimality_witness(&self) -> Option<(usize, usize)> {
        self.faces.iter().enumerate().find_map(|(k, f)| {
            f.facets
                .iter()
                .find(|&&(g, _)| self.face_labels[g] == self.face_labels[k])
                .map(|&(g, _)| (k, g))
        })
    }

    pub fn is_minimal(&self) -> bool {
        self.minimality_witness().is_none()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("complex serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Reduced homology of the subcomplex on the face indices `keep` (which
/// must be closed under facets and contain the empty face).
fn homology_of(faces: &[Face], keep: &[usize]) -> Vec<usize> {
    let top = keep.iter().map(|&k| faces[k].dim).max().unwrap_or(-1);
    // by_dim[d + 1] lists faces of dimension d
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); (top + 2) as usize];
    for &k in keep {
        by_dim[(faces[k].dim + 1) as usize].push(k);
    }
    let pos: HashMap<usize, usize> = by_dim
        .iter()
        .flat_map(|list| list.iter().enumerate().map(|(p, &k)| (k, p)))
        .collect();
    let mut ranks = vec![0usize; by_dim.len() + 1];
    for level in 1..by_dim.len() {
        let mut m = SparseMatrix::new(by_dim[level - 1].len());
        for &k in &by_dim[level] {
            m.push_col(faces[k].facets.iter().map(|&(g, s)| (pos[&g], s as i64)).collect());
        }
        ranks[level] = m.rank();
    }
    let mut out: Vec<usize> = (0..by_dim.len())
        .map(|level| by_dim[level].len() - ranks[level] - ranks[level + 1])
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Checks that `x` supports a free resolution of `ideal`: vertex labels
/// must be exactly the minimal generators, and every restriction to an
/// lcm-lattice point must be acyclic. Identical restrictions are tested
/// once.
pub fn supports_resolution(x: &LabeledCellComplex, ideal: &MonomialIdeal) -> Result<ResolutionCheck> {
    let mut labels = x.labels.clone();
    labels.sort();
    if labels != ideal.generators() {
        return Err(Error::LabelMismatch(format!(
            "{} vertex labels vs {} generators",
            x.labels.len(),
            ideal.len()
        )));
    }
    let lattice = ideal.lcm_lattice();
    let mut groups: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (k, b) in lattice.iter().enumerate() {
        groups.entry(x.restricted_indices(b)).or_insert(k);
    }
    let groups: Vec<(Vec<usize>, usize)> = groups.into_iter().collect();
    let failures: Vec<(usize, Acyclicity)> = groups
        .par_iter()
        .filter_map(|(keep, first)| {
            let nverts = keep.iter().filter(|&&k| x.faces[k].dim == 0).count();
            let verdict = if nverts == 0 {
                Acyclicity::Empty
            } else {
                let h = homology_of(&x.faces, keep);
                if h.is_empty() {
                    return None;
                }
                Acyclicity::NotAcyclic { homology: h }
            };
            Some((*first, verdict))
        })
        .collect();
    let worst = failures.into_iter().min_by_key(|(k, _)| *k);
    Ok(ResolutionCheck {
        ok: worst.is_none(),
        failing_degree: worst.as_ref().map(|(k, _)| lattice[*k].clone()),
        failure: worst.map(|(_, a)| a),
        degrees_checked: lattice.len(),
    })
}
