//! Inputs shared by the benchmarks in `benches/`.

use polar_core::ideals::{squarefree_power, MonomialIdeal};
use polar_core::partitions::{box_partition, partition_to_ideal, PartitionFamily};
use polar_core::trees::{tree_polarization, LabeledTree};
use polar_core::trianglegrid::{choice_by_index, choice_count, TriangleChoice};

/// `(label, ideal)` pairs of growing size.
pub fn ideals() -> Vec<(String, MonomialIdeal)> {
    let mut out = Vec::new();
    for (n, d) in [(5, 2), (6, 3), (7, 3)] {
        out.push((format!("I_{d}(n={n})"), squarefree_power(n, d)));
    }
    out.push(("box(6,3)".into(), partition_to_ideal(&box_partition(6, 3).unwrap())));
    out.push(("path_tree(7)".into(), tree_polarization(&LabeledTree::path(7).unwrap())));
    out
}

pub fn families() -> Vec<(String, PartitionFamily)> {
    [(5, 2), (6, 3), (7, 3)]
        .into_iter()
        .map(|(n, d)| (format!("box(n={n},d={d})"), box_partition(n, d).unwrap()))
        .collect()
}

/// The middle choice for each `d`, so runs are not dominated by one kind.
pub fn triangle_choices() -> Vec<TriangleChoice> {
    (3..=6)
        .map(|d| choice_by_index(d, choice_count(d) / 2).unwrap())
        .collect()
}
