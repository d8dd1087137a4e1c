//! Polarizations of `(x, y, z)^d` from choices on the triangular grid.
//!
//! The generators of `m^d` sit on a triangular grid; up triangles are
//! labeled by `m^{d-1}` and down triangles by `m^{d-2}`. Choosing one edge
//! to drop in every down triangle (an x-, y- or z-triangle) determines a
//! polarization through chain sequences, and the planar complex left after
//! the removals supports its minimal free resolution.
//!
//! Exponent triples are `[a, b, c]` for `x^a y^b z^c`; bases are `x = 1`,
//! `y = 2`, `z = 3`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::cellres::{ComplexBuilder, LabeledCellComplex};
use crate::error::{Error, Result};
use crate::ideals::{mask_elements, MonomialIdeal, SplitMonomial, VarRef};

/// Largest `d` for which [`all_choices`] materializes the full list.
pub const MAX_ENUMERATION_D: u32 = 5;

/// Which edge of a down triangle `n` is removed: X drops `(nxy, nxz)`,
/// Y drops `(nxy, nyz)`, Z drops `(nxz, nyz)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TriangleKind {
    X,
    Y,
    Z,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 3] = [TriangleKind::X, TriangleKind::Y, TriangleKind::Z];

    fn letter(self) -> char {
        match self {
            TriangleKind::X => 'x',
            TriangleKind::Y => 'y',
            TriangleKind::Z => 'z',
        }
    }
}

impl FromStr for TriangleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "x" | "X" => Ok(TriangleKind::X),
            "y" | "Y" => Ok(TriangleKind::Y),
            "z" | "Z" => Ok(TriangleKind::Z),
            other => Err(Error::InvalidChoice(format!("unknown triangle kind {other:?}"))),
        }
    }
}

/// Exponent triples of degree `k` in lex order with `x > y > z`.
pub fn monomials(k: u32) -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for b in (0..=k - a).rev() {
            out.push([a, b, k - a - b]);
        }
    }
    out
}

fn triple_monomial(e: [u32; 3]) -> SplitMonomial {
    SplitMonomial::from_exponents(&e)
}

/// A kind for every down triangle, listed over `M_{d-2}` in [`monomials`]
/// order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriangleChoice {
    d: u32,
    kinds: Vec<TriangleKind>,
}

impl TriangleChoice {
    pub fn new(d: u32, kinds: Vec<TriangleKind>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidChoice(format!("d must be at least 2, got {d}")));
        }
        let need = (d as usize - 1) * d as usize / 2;
        if kinds.len() != need {
            return Err(Error::InvalidChoice(format!(
                "d = {d} has {need} down triangles, got {} kinds",
                kinds.len()
            )));
        }
        Ok(TriangleChoice { d, kinds })
    }

    /// Every down triangle of the same kind.
    pub fn uniform(d: u32, kind: TriangleKind) -> Result<Self> {
        let need = (d.max(2) as usize - 1) * d as usize / 2;
        TriangleChoice::new(d, vec![kind; need])
    }

    /// Parses a comma-separated list such as `x,y,z`.
    pub fn parse(d: u32, s: &str) -> Result<Self> {
        let kinds = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(TriangleKind::from_str)
            .collect::<Result<Vec<_>>>()?;
        TriangleChoice::new(d, kinds)
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn kinds(&self) -> &[TriangleKind] {
        &self.kinds
    }

    /// Kind of the down triangle labeled `x^a y^b z^c` (`a + b + c = d - 2`).
    pub fn kind_at(&self, e: [u32; 3]) -> TriangleKind {
        let k = self.d - 2;
        debug_assert_eq!(e.iter().sum::<u32>(), k);
        // position in lex order: triples with larger a come first
        let a = e[0];
        let before: u32 = (a + 1..=k).map(|a2| k - a2 + 1).sum();
        self.kinds[(before + (k - a - e[1])) as usize]
    }
}

impl fmt::Display for TriangleChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.kinds.iter().map(|k| k.letter().to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Number of choices, `3^{(d-1)d/2}`.
pub fn choice_count(d: u32) -> u128 {
    3u128.pow((d.max(2) - 1) * d / 2)
}

/// The choice with mixed-radix index `index`; the first down triangle is
/// the least significant digit.
pub fn choice_by_index(d: u32, mut index: u128) -> Result<TriangleChoice> {
    let k = (d.max(2) as usize - 1) * d as usize / 2;
    let mut kinds = Vec::with_capacity(k);
    for _ in 0..k {
        kinds.push(TriangleKind::ALL[(index % 3) as usize]);
        index /= 3;
    }
    TriangleChoice::new(d, kinds)
}

/// All `3^{(d-1)d/2}` choices in index order.
pub fn all_choices(d: u32) -> Result<Vec<TriangleChoice>> {
    if !(2..=MAX_ENUMERATION_D).contains(&d) {
        return Err(Error::out_of_range("d", d as usize, 2, MAX_ENUMERATION_D as usize));
    }
    (0..choice_count(d)).map(|k| choice_by_index(d, k)).collect()
}

/// The variable being polarized in one of the three constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    X,
    Y,
    Z,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::X, Role::Y, Role::Z];

    /// Exponent positions `(p, q, r)`: row `i` of the construction holds
    /// `p^{i-j} q^j r^{d-i}`.
    pub fn axes(self) -> (usize, usize, usize) {
        match self {
            Role::X => (0, 1, 2),
            Role::Y => (1, 0, 2),
            Role::Z => (2, 1, 0),
        }
    }

    fn kind(self) -> TriangleKind {
        match self {
            Role::X => TriangleKind::X,
            Role::Y => TriangleKind::Y,
            Role::Z => TriangleKind::Z,
        }
    }
}

/// A maximal chain `∅ = s_0 ⊂ s_1 ⊂ ... ⊂ s_i = [i]`, as bitmasks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainSequence {
    pub i: u32,
    pub sets: Vec<u32>,
}

impl ChainSequence {
    /// `s(1) = ∅ ⊂ {1}`.
    pub fn seed() -> Self {
        ChainSequence { i: 1, sets: vec![0, 1] }
    }

    /// Builds from element lists, validating maximality.
    pub fn from_sets(i: u32, sets: &[&[u32]]) -> Result<Self> {
        let c = ChainSequence {
            i,
            sets: sets
                .iter()
                .map(|s| crate::ideals::mask_from_elements(s.iter().copied()))
                .collect(),
        };
        if c.is_valid() {
            Ok(c)
        } else {
            Err(Error::InvalidChoice(format!("not a maximal chain of [{i}]: {sets:?}")))
        }
    }

    pub fn is_valid(&self) -> bool {
        let full = (1u32 << self.i) - 1;
        self.sets.len() == self.i as usize + 1
            && self.sets[0] == 0
            && self.sets[self.i as usize] == full
            && self
                .sets
                .windows(2)
                .all(|w| w[0] & w[1] == w[0] && (w[1] & !w[0]).count_ones() == 1)
    }

    /// `s(i+1)` from `s(i)`; `p_triangle(j)` says whether the down triangle
    /// consulted at step `j < i` belongs to the polarized variable.
    pub fn step(&self, p_triangle: impl Fn(usize) -> bool) -> ChainSequence {
        let i = self.i as usize;
        let new_bit = 1u32 << i;
        let primed: Vec<u32> = self.sets.iter().map(|s| s | new_bit).collect();
        let mut next = vec![0u32; i + 2];
        for j in 0..=i {
            next[j + 1] = if j < i && p_triangle(j) {
                next[j] | (primed[j + 1] & !primed[j])
            } else {
                primed[j]
            };
        }
        ChainSequence {
            i: self.i + 1,
            sets: next,
        }
    }

    /// Elements of `s_j`.
    pub fn set(&self, j: usize) -> Vec<u32> {
        mask_elements(self.sets[j])
    }
}

/// `s(1), ..., s(d)` for one role.
pub fn chain_sequences(c: &TriangleChoice, role: Role) -> Vec<ChainSequence> {
    let (p, q, r) = role.axes();
    let d = c.d;
    let mut out = vec![ChainSequence::seed()];
    for i in 1..d {
        let cur = out.last().expect("seeded");
        let next = cur.step(|j| {
            let mut e = [0u32; 3];
            e[p] = i - 1 - j as u32;
            e[q] = j as u32;
            e[r] = d - i - 1;
            c.kind_at(e) == role.kind()
        });
        out.push(next);
    }
    out
}

/// Polarized generator for every element of `M_d`, in [`monomials`] order.
pub fn polarized_generators(c: &TriangleChoice) -> Vec<([u32; 3], SplitMonomial)> {
    let chains: Vec<(Role, Vec<ChainSequence>)> = Role::ALL.iter().map(|&r| (r, chain_sequences(c, r))).collect();
    monomials(c.d)
        .into_iter()
        .map(|e| {
            let mut vars = Vec::new();
            for (role, seq) in &chains {
                let (p, q, _) = role.axes();
                let i = (e[p] + e[q]) as usize;
                if e[p] == 0 {
                    continue;
                }
                let full = (1u32 << i) - 1;
                let mask = full & !seq[i - 1].sets[e[q] as usize];
                for k in mask_elements(mask) {
                    vars.push(VarRef::raw(p as u32 + 1, k));
                }
            }
            (e, SplitMonomial::from_vars(vars))
        })
        .collect()
}

/// The square-free ideal determined by `c`.
pub fn construct_polarization(c: &TriangleChoice) -> MonomialIdeal {
    MonomialIdeal::minimalize(polarized_generators(c).into_iter().map(|(_, m)| m))
}

/// Vertices, positions and edges of the triangular grid of `M_d`.
struct Grid {
    verts: Vec<[u32; 3]>,
    index: HashMap<[u32; 3], usize>,
}

impl Grid {
    fn new(d: u32) -> Self {
        let verts = monomials(d);
        let index = verts.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Grid { verts, index }
    }

    /// Integer coordinates of an affine image of the equilateral grid.
    fn pos(&self, v: usize) -> (i64, i64) {
        let [a, _, c] = self.verts[v];
        ((a + 2 * c) as i64, 2 * a as i64)
    }

    fn at(&self, e: [u32; 3]) -> usize {
        self.index[&e]
    }

    fn up_triangles(&self, d: u32) -> Vec<[usize; 3]> {
        monomials(d - 1)
            .into_iter()
            .map(|[a, b, c]| [self.at([a + 1, b, c]), self.at([a, b + 1, c]), self.at([a, b, c + 1])])
            .collect()
    }

    /// `[nxy, nxz, nyz]` for each down triangle, in choice order.
    fn down_triangles(&self, d: u32) -> Vec<[usize; 3]> {
        if d < 2 {
            return Vec::new();
        }
        monomials(d - 2)
            .into_iter()
            .map(|[a, b, c]| {
                [
                    self.at([a + 1, b + 1, c]),
                    self.at([a + 1, b, c + 1]),
                    self.at([a, b + 1, c + 1]),
                ]
            })
            .collect()
    }

    fn edges(&self, d: u32) -> BTreeSet<(usize, usize)> {
        self.up_triangles(d)
            .into_iter()
            .flat_map(|[u, v, w]| [(u, v), (u, w), (v, w)])
            .map(|(u, v)| (u.min(v), u.max(v)))
            .collect()
    }

    fn signed_area2(&self, cycle: &[usize]) -> i64 {
        (0..cycle.len())
            .map(|k| {
                let (x0, y0) = self.pos(cycle[k]);
                let (x1, y1) = self.pos(cycle[(k + 1) % cycle.len()]);
                x0 * y1 - x1 * y0
            })
            .sum()
    }

    /// Bounded faces of the planar graph, each as a positively oriented
    /// vertex cycle.
    fn bounded_faces(&self, edges: &BTreeSet<(usize, usize)>) -> Vec<Vec<usize>> {
        let n = self.verts.len();
        let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(u, v) in edges {
            nbrs[u].push(v);
            nbrs[v].push(u);
        }
        for (u, list) in nbrs.iter_mut().enumerate() {
            let (ux, uy) = self.pos(u);
            list.sort_by(|&a, &b| {
                let (ax, ay) = self.pos(a);
                let (bx, by) = self.pos(b);
                let ta = ((ay - uy) as f64).atan2((ax - ux) as f64);
                let tb = ((by - uy) as f64).atan2((bx - ux) as f64);
                ta.partial_cmp(&tb).expect("finite angles")
            });
        }
        let mut used: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut faces = Vec::new();
        for &(u, v) in edges {
            for start in [(u, v), (v, u)] {
                if used.contains(&start) {
                    continue;
                }
                let mut cycle = Vec::new();
                let (mut a, mut b) = start;
                while used.insert((a, b)) {
                    cycle.push(a);
                    let list = &nbrs[b];
                    let k = list.iter().position(|&w| w == a).expect("reverse half-edge");
                    let w = list[(k + list.len() - 1) % list.len()];
                    (a, b) = (b, w);
                }
                if self.signed_area2(&cycle) > 0 {
                    faces.push(cycle);
                }
            }
        }
        faces
    }
}

/// Adds a polygon with vertex cycle `cycle`; edge `(u, v)` with `u < v`
/// is oriented from `u`, so its sign is `+1` when traversed forward.
fn add_polygon(b: &mut ComplexBuilder, edge_id: &HashMap<(usize, usize), usize>, cycle: &[usize]) -> usize {
    let facets = (0..cycle.len())
        .map(|k| {
            let (u, v) = (cycle[k], cycle[(k + 1) % cycle.len()]);
            let id = edge_id[&(u.min(v), u.max(v))];
            (id, if u < v { 1 } else { -1 })
        })
        .collect();
    b.add_face(facets)
}

fn orient(grid: &Grid, tri: [usize; 3]) -> Vec<usize> {
    let mut c = tri.to_vec();
    if grid.signed_area2(&c) < 0 {
        c.swap(1, 2);
    }
    c
}

fn complex_from(
    labels: Vec<SplitMonomial>,
    edges: &BTreeSet<(usize, usize)>,
    cells: &[Vec<usize>],
) -> LabeledCellComplex {
    let mut b = ComplexBuilder::new(labels);
    let mut edge_id = HashMap::new();
    for &(u, v) in edges {
        edge_id.insert((u, v), b.add_edge(u, v));
    }
    for cycle in cells {
        add_polygon(&mut b, &edge_id, cycle);
    }
    b.build().expect("grid complex is well formed")
}

/// The full grid `Γ` for `m^d`: all edges, all up and down triangles,
/// vertices labeled by the generators of `m^d`.
pub fn gamma_complex(d: u32) -> Result<LabeledCellComplex> {
    if d < 2 {
        return Err(Error::out_of_range("d", d as usize, 2, u32::MAX as usize));
    }
    let grid = Grid::new(d);
    let edges = grid.edges(d);
    let cells: Vec<Vec<usize>> = grid
        .up_triangles(d)
        .into_iter()
        .chain(grid.down_triangles(d))
        .map(|t| orient(&grid, t))
        .collect();
    let labels = grid.verts.iter().map(|&e| triple_monomial(e)).collect();
    Ok(complex_from(labels, &edges, &cells))
}

/// Grid edges that survive the choice.
fn kept_edges(c: &TriangleChoice, grid: &Grid) -> BTreeSet<(usize, usize)> {
    let mut edges = grid.edges(c.d);
    for (tri, kind) in grid.down_triangles(c.d).into_iter().zip(&c.kinds) {
        let [xy, xz, yz] = tri;
        let (u, v) = match kind {
            TriangleKind::X => (xy, xz),
            TriangleKind::Y => (xy, yz),
            TriangleKind::Z => (xz, yz),
        };
        edges.remove(&(u.min(v), u.max(v)));
    }
    edges
}

/// The planar complex left after dropping the chosen edge of every down
/// triangle, labeled by [`construct_polarization`].
pub fn build_delta_complex(c: &TriangleChoice) -> LabeledCellComplex {
    let grid = Grid::new(c.d);
    let edges = kept_edges(c, &grid);
    let cells = grid.bounded_faces(&edges);
    let labels = polarized_generators(c).into_iter().map(|(_, m)| m).collect();
    complex_from(labels, &edges, &cells)
}

fn monomial_text(m: &SplitMonomial) -> String {
    if m.is_one() {
        return "1".into();
    }
    let mut s = String::new();
    for &(v, e) in m.terms() {
        let letter = match v.base {
            1 => "x".to_string(),
            2 => "y".to_string(),
            3 => "z".to_string(),
            b => format!("w{b}_"),
        };
        s.push_str(&format!("{letter}{}", v.copy));
        if e > 1 {
            s.push_str(&format!("^{e}"));
        }
    }
    s
}

/// SVG drawing of the grid for `c`: kept edges solid, removed edges dashed,
/// 2-cells shaded, vertices labeled with their polarized generators.
pub fn render_svg(c: &TriangleChoice) -> String {
    let grid = Grid::new(c.d);
    let kept = kept_edges(c, &grid);
    let all = grid.edges(c.d);
    let cells = grid.bounded_faces(&kept);
    let labels = polarized_generators(c);
    let unit = 90.0;
    let margin = 60.0;
    let d = c.d as f64;
    let h = 3f64.sqrt() / 2.0;
    let pt = |v: usize| {
        let [a, _, cc] = grid.verts[v];
        let x = margin + unit * (cc as f64 + a as f64 / 2.0);
        let y = margin + unit * h * (d - a as f64);
        (x, y)
    };
    let width = 2.0 * margin + unit * d;
    let height = 2.0 * margin + unit * h * d;
    let mut out = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.0}\" height=\"{height:.0}\" viewBox=\"0 0 {width:.0} {height:.0}\">\n"
    );
    out.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    for cycle in &cells {
        let pts: Vec<String> = cycle
            .iter()
            .map(|&v| {
                let (x, y) = pt(v);
                format!("{x:.1},{y:.1}")
            })
            .collect();
        out.push_str(&format!(
            "<polygon points=\"{}\" fill=\"#dde8f5\" stroke=\"none\"/>\n",
            pts.join(" ")
        ));
    }
    for &(u, v) in &all {
        let (x1, y1) = pt(u);
        let (x2, y2) = pt(v);
        let style = if kept.contains(&(u, v)) {
            "stroke=\"#1f3b5c\" stroke-width=\"2\""
        } else {
            "stroke=\"#b0b0b0\" stroke-width=\"1\" stroke-dasharray=\"4 4\""
        };
        out.push_str(&format!(
            "<line x1=\"{x1:.1}\" y1=\"{y1:.1}\" x2=\"{x2:.1}\" y2=\"{y2:.1}\" {style}/>\n"
        ));
    }
    for (k, (_, m)) in labels.iter().enumerate() {
        let (x, y) = pt(k);
        out.push_str(&format!("<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"#1f3b5c\"/>\n"));
        out.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            y - 10.0,
            monomial_text(m)
        ));
    }
    out.push_str("</svg>\n");
    out
}
