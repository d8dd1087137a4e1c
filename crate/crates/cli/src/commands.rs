use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use log::info;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::json;

use polar_core::betti::betti_table;
use polar_core::cellres::{supports_resolution, LabeledCellComplex};
use polar_core::duality::alexander_dual;
use polar_core::graphs::{all_bipartitions, edge_ideal, split_vertex_unchecked, split_witness, SimpleGraph, Split};
use polar_core::hilbert::{hilbert_numerator, is_polarization};
use polar_core::ideals::{maximal_ideal_power, squarefree_power, MonomialIdeal, VarRef};
use polar_core::partitions::{
    d2_criterion, dual_partition, is_maximal, partition_to_ideal, satisfies_criterion, FamilySpace, PartitionFamily,
};
use polar_core::sweep::{
    hilbert_sweep, inclusion_exclusion_numerator, partition_sweep, sampled_partition_sweep, surjectivity_check,
    tree_sweep, triangle_sweep, PartitionSweepOptions,
};
use polar_core::trees::{tree_dual, tree_polarization, LabeledTree};
use polar_core::trianglegrid::{build_delta_complex, construct_polarization, polarized_generators, render_svg, TriangleChoice};

use crate::report::Report;
use crate::{CheckCmd, Command, DualizeCmd, Emit, EnumerateCmd, GraphCmd, GraphSource, PartitionSweepArgs, SweepCmd};

/// Refuse to list more families than this; sample instead.
const MAX_ENUMERATE: usize = 50_000_000;

pub fn run(cmd: Command) -> Result<Report> {
    match cmd {
        Command::Dual { input, emit } => dual(&input, &emit),
        Command::Check(CheckCmd::Polarization { candidate, target }) => check_polarization(&candidate, &target),
        Command::Check(CheckCmd::Partition { input }) => check_partition(&input),
        Command::Dualize(DualizeCmd::Partition { input, emit }) => dualize_partition(&input, &emit),
        Command::Enumerate(EnumerateCmd::Partitions { n, d, maximal_only, emit }) => {
            enumerate_partitions(n, d, maximal_only, &emit)
        }
        Command::Tree { n, edges, dual, emit } => tree(n, &edges, dual, &emit),
        Command::Graph(GraphCmd::Splits { source, at }) => graph_splits(&source, &at),
        Command::Graph(GraphCmd::Split { source, at, parts, emit }) => graph_split(&source, &at, &parts, &emit),
        Command::Triangle { d, choices, emit_svg, emit_complex, verify, emit } => {
            triangle(d, &choices, emit_svg.as_deref(), emit_complex.as_deref(), verify, &emit)
        }
        Command::Betti { input } => betti(&input),
        Command::Hilbert { input, verify } => hilbert(&input, verify),
        Command::Certify { complex, ideal } => certify(&complex, &ideal),
        Command::Sweep(s) => sweep(s),
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    info!("wrote {}", path.display());
    Ok(())
}

fn emit_to<T: Serialize>(emit: &Emit, value: &T) -> Result<()> {
    match &emit.emit {
        Some(path) => write_json(path, value),
        None => Ok(()),
    }
}

fn display_generators(i: &MonomialIdeal) -> Vec<String> {
    i.generators().iter().map(|g| g.to_string()).collect()
}

fn dual(input: &Path, emit: &Emit) -> Result<Report> {
    let ideal: MonomialIdeal = read_json(input)?;
    let d = alexander_dual(&ideal)?;
    let mut r = Report::new("dual");
    r.field("input", &ideal)
        .field("dual", &d)
        .field("generators", display_generators(&d))
        .field("self_dual", d == ideal);
    emit_to(emit, &d)?;
    Ok(r)
}

fn check_polarization(candidate: &Path, target: &Path) -> Result<Report> {
    let c: MonomialIdeal = read_json(candidate)?;
    let t: MonomialIdeal = read_json(target)?;
    let check = is_polarization(&c, &t);
    let mut r = Report::new("check polarization");
    r.fail_if(!check.ok)
        .field("reason", check.reason)
        .field("numerator_candidate", check.numerator_candidate.as_ref().map(|h| h.coeffs()))
        .field("numerator_target", check.numerator_target.as_ref().map(|h| h.coeffs()))
        .field("square_free", check.square_free);
    Ok(r)
}

/// Runs the combinatorial criterion and the Hilbert oracle on one family.
fn judge_family(p: &PartitionFamily, r: &mut Report) -> bool {
    let crit = satisfies_criterion(p);
    let ideal = partition_to_ideal(p);
    let oracle = is_polarization(&ideal, &squarefree_power(p.n(), p.d()));
    r.field("criterion", crit.ok)
        .field("criterion_witness", &crit.witness)
        .field("hilbert_oracle", oracle.ok)
        .field("numerator_candidate", oracle.numerator_candidate.as_ref().map(|h| h.coeffs()))
        .field("numerator_target", oracle.numerator_target.as_ref().map(|h| h.coeffs()))
        .field("ideal", &ideal);
    if crit.ok != oracle.ok {
        r.disagree();
    }
    if p.d() == 2 {
        if let Ok(d2) = d2_criterion(p) {
            r.field("d2_criterion", d2);
            if d2 != crit.ok {
                r.disagree();
            }
        }
    }
    crit.ok
}

fn check_partition(input: &Path) -> Result<Report> {
    let p: PartitionFamily = read_json(input)?;
    let mut r = Report::new("check partition");
    let ok = judge_family(&p, &mut r);
    r.fail_if(!ok);
    Ok(r)
}

fn dualize_partition(input: &Path, emit: &Emit) -> Result<Report> {
    let p: PartitionFamily = read_json(input)?;
    let dp = dual_partition(&p);
    let mut r = Report::new("dualize partition");
    let before = satisfies_criterion(&p).ok;
    let after = judge_family(&dp, &mut r);
    r.field("input_criterion", before).field("dual", &dp);
    if before != after {
        r.disagree();
    }
    if after {
        // the dual family should realize the Alexander dual of the original
        let realized = alexander_dual(&partition_to_ideal(&p))?;
        let matches = realized.canonical_form() == partition_to_ideal(&dp).canonical_form();
        r.field("matches_alexander_dual", matches);
        if !matches {
            r.disagree();
        }
    }
    r.fail_if(!after);
    emit_to(emit, &dp)?;
    Ok(r)
}

fn enumerate_partitions(n: u32, d: u32, maximal_only: bool, emit: &Emit) -> Result<Report> {
    let space = FamilySpace::new(n, d)?;
    let len = space.len();
    if len > MAX_ENUMERATE {
        bail!("{len} families for ({n}, {d}); use `sweep criterion --samples` instead");
    }
    info!("checking {len} families for n={n}, d={d}");
    let valid: Vec<PartitionFamily> = (0..len)
        .into_par_iter()
        .map(|k| space.get(k))
        .filter(|p| satisfies_criterion(p).ok)
        .collect();
    let families: Vec<PartitionFamily> = if maximal_only {
        let keep = valid
            .par_iter()
            .map(is_maximal)
            .collect::<polar_core::Result<Vec<bool>>>()?;
        valid.into_iter().zip(keep).filter(|(_, m)| *m).map(|(p, _)| p).collect()
    } else {
        valid
    };
    let mut r = Report::new("enumerate partitions");
    r.field("n", n)
        .field("d", d)
        .field("families_checked", len)
        .field("maximal_only", maximal_only)
        .field("count", families.len())
        .field("families", &families);
    emit_to(emit, &families)?;
    Ok(r)
}

fn parse_edges(s: &str) -> Result<Vec<(u32, u32)>> {
    s.split(',')
        .filter(|e| !e.trim().is_empty())
        .map(|e| {
            let (a, b) = e.trim().split_once('-').with_context(|| format!("edge {e:?} is not v-w"))?;
            Ok((a.trim().parse()?, b.trim().parse()?))
        })
        .collect()
}

fn tree(n: u32, edges: &str, want_dual: bool, emit: &Emit) -> Result<Report> {
    let t = LabeledTree::new(n, parse_edges(edges)?)?;
    let pol = tree_polarization(&t);
    let mut r = Report::new("tree");
    r.field("tree", &t);
    let (ideal, target) = if want_dual {
        let closed = tree_dual(&t);
        let computed = alexander_dual(&pol)?;
        let agree = closed == computed;
        r.field("matches_alexander_dual", agree);
        if !agree {
            r.field("alexander_dual", &computed).disagree();
        }
        (closed, squarefree_power(n, 2))
    } else {
        (pol, squarefree_power(n, n - 1))
    };
    let check = is_polarization(&ideal, &target);
    r.fail_if(!check.ok)
        .field("ideal", &ideal)
        .field("generators", display_generators(&ideal))
        .field("polarization_of", display_generators(&target))
        .field("reason", check.reason);
    emit_to(emit, &ideal)?;
    Ok(r)
}

fn load_graph(source: &GraphSource) -> Result<SimpleGraph> {
    match (&source.input, source.complete) {
        (Some(path), _) => read_json(path),
        (None, Some(n)) => Ok(SimpleGraph::complete(n)),
        (None, None) => bail!("give --input or --complete"),
    }
}

fn parse_vertex(s: &str) -> Result<VarRef> {
    let s = s.trim();
    let (b, c) = s.split_once('_').unwrap_or((s, "1"));
    Ok(VarRef::new(b.parse()?, c.parse()?)?)
}

fn names(vs: &[VarRef]) -> Vec<String> {
    vs.iter().map(|v| v.to_string()).collect()
}

/// Missing cross edge (if any), Hilbert-oracle verdict, and the split graph.
type SplitVerdict = (Option<(VarRef, VarRef)>, bool, SimpleGraph);

fn judge_split(g: &SimpleGraph, at: VarRef, s: &Split) -> Result<SplitVerdict> {
    let h = split_vertex_unchecked(g, at, s)?;
    let witness = split_witness(g, s);
    let oracle = is_polarization(&edge_ideal(&h), &edge_ideal(g)).ok;
    Ok((witness, oracle, h))
}

fn graph_splits(source: &GraphSource, at: &str) -> Result<Report> {
    let g = load_graph(source)?;
    let at = parse_vertex(at)?;
    let mut r = Report::new("graph splits");
    let mut rows = Vec::new();
    let mut valid = 0;
    let mut disagreements = 0;
    for s in all_bipartitions(&g, at)? {
        let (witness, oracle, _) = judge_split(&g, at, &s)?;
        if witness.is_none() {
            valid += 1;
        }
        if witness.is_none() != oracle {
            disagreements += 1;
        }
        rows.push(json!({
            "a": names(&s.a),
            "b": names(&s.b),
            "valid": witness.is_none(),
            "hilbert_oracle": oracle,
            "witness": witness.map(|(x, y)| [x.to_string(), y.to_string()]),
        }));
    }
    r.field("vertex", at.to_string())
        .field("bipartitions", rows.len())
        .field("valid", valid)
        .field("splits", rows)
        .field("disagreements", disagreements);
    if disagreements > 0 {
        r.disagree();
    }
    Ok(r)
}

fn graph_split(source: &GraphSource, at: &str, parts: &str, emit: &Emit) -> Result<Report> {
    let g = load_graph(source)?;
    let at = parse_vertex(at)?;
    let split = polar_core::graphs::parse_split(parts)?;
    let (witness, oracle, h) = judge_split(&g, at, &split)?;
    let mut r = Report::new("graph split");
    r.fail_if(witness.is_some())
        .field("vertex", at.to_string())
        .field("a", names(&split.a))
        .field("b", names(&split.b))
        .field("witness", witness.map(|(x, y)| [x.to_string(), y.to_string()]))
        .field("hilbert_oracle", oracle);
    if witness.is_none() != oracle {
        r.disagree();
    }
    if witness.is_none() {
        r.field("graph", &h).field("generators", display_generators(&edge_ideal(&h)));
        emit_to(emit, &h)?;
    }
    Ok(r)
}

fn triangle(
    d: u32,
    choices: &str,
    svg: Option<&Path>,
    complex_out: Option<&Path>,
    verify: bool,
    emit: &Emit,
) -> Result<Report> {
    let c = TriangleChoice::parse(d, choices)?;
    let ideal = construct_polarization(&c);
    let check = is_polarization(&ideal, &maximal_ideal_power(3, d));
    let gens: Vec<serde_json::Value> = polarized_generators(&c)
        .into_iter()
        .map(|(e, m)| json!({"exponents": e, "monomial": m.to_string()}))
        .collect();
    let mut r = Report::new("triangle");
    r.fail_if(!check.ok)
        .field("d", d)
        .field("choices", c.to_string())
        .field("generators", gens)
        .field("ideal", &ideal)
        .field("hilbert_oracle", check.ok)
        .field("reason", check.reason);
    if verify || complex_out.is_some() {
        let x = build_delta_complex(&c);
        if verify {
            let res = supports_resolution(&x, &ideal)?;
            let minimal = x.is_minimal();
            let totals: Vec<usize> = betti_table(&ideal)?.totals().iter().map(|&b| b as usize).collect();
            let counts_match = x.face_counts() == totals;
            let certified = res.ok && minimal && x.boundary_squared_zero() && counts_match;
            r.field("resolution", &res)
                .field("minimal", minimal)
                .field("face_counts", x.face_counts())
                .field("betti_totals", totals)
                .field("certified", certified);
            if certified != check.ok {
                r.disagree();
            }
        }
        if let Some(path) = complex_out {
            write_json(path, &x)?;
        }
    }
    if let Some(path) = svg {
        fs::write(path, render_svg(&c)).with_context(|| format!("writing {}", path.display()))?;
        info!("wrote {}", path.display());
    }
    emit_to(emit, &ideal)?;
    Ok(r)
}

fn betti(input: &Path) -> Result<Report> {
    let ideal: MonomialIdeal = read_json(input)?;
    let t = betti_table(&ideal)?;
    let mut r = Report::new("betti");
    r.field("totals", t.totals())
        .field("euler_characteristic", t.euler_characteristic())
        .field("table", &t);
    Ok(r)
}

fn hilbert(input: &Path, verify: bool) -> Result<Report> {
    let ideal: MonomialIdeal = read_json(input)?;
    let h = hilbert_numerator(&ideal)?;
    let mut r = Report::new("hilbert");
    r.field("numerator", h.coeffs()).field("display", h.to_string());
    if verify {
        let ie = inclusion_exclusion_numerator(&ideal)?;
        r.field("inclusion_exclusion", ie.coeffs());
        if ie != h {
            r.disagree();
        }
    }
    Ok(r)
}

fn certify(complex: &Path, ideal: &Path) -> Result<Report> {
    let x: LabeledCellComplex = read_json(complex)?;
    let ideal: MonomialIdeal = read_json(ideal)?;
    let res = supports_resolution(&x, &ideal)?;
    let minimal = x.is_minimal();
    let mut r = Report::new("certify");
    r.fail_if(!res.ok)
        .field("resolution", &res)
        .field("minimal", minimal)
        .field("boundary_squared_zero", x.boundary_squared_zero())
        .field("face_counts", x.face_counts());
    if res.ok && minimal {
        // a minimal cellular resolution has one cell per Betti number
        let totals: Vec<usize> = betti_table(&ideal)?.totals().iter().map(|&b| b as usize).collect();
        let agree = totals == x.face_counts();
        r.field("betti_totals", totals);
        if !agree {
            r.disagree();
        }
    }
    Ok(r)
}

fn partition_sweep_report(name: &str, a: &PartitionSweepArgs, opts: PartitionSweepOptions) -> Result<Report> {
    let rep = match a.samples {
        Some(k) => {
            info!("sampling {k} families for n={}, d={} (seed {})", a.n, a.d, a.seed);
            sampled_partition_sweep(a.n, a.d, k, a.seed, opts)?
        }
        None => {
            info!("enumerating families for n={}, d={}", a.n, a.d);
            partition_sweep(a.n, a.d, opts)?
        }
    };
    info!("{} families checked", rep.families_checked);
    let mut r = Report::new(name);
    if a.samples.is_some() {
        r.field("seed", a.seed);
    }
    if rep.disagreements > 0 {
        r.disagree();
    }
    for (k, v) in serde_json::to_value(&rep)?.as_object().expect("struct").iter() {
        r.field(k, v);
    }
    Ok(r)
}

fn sweep(cmd: SweepCmd) -> Result<Report> {
    match cmd {
        SweepCmd::Duality(a) => {
            let opts = PartitionSweepOptions { duality: true, betti: false, max_witnesses: a.max_witnesses };
            partition_sweep_report("sweep duality", &a, opts)
        }
        SweepCmd::Criterion(a) => {
            let opts = PartitionSweepOptions { duality: false, betti: true, max_witnesses: a.max_witnesses };
            partition_sweep_report("sweep criterion", &a, opts)
        }
        SweepCmd::Triangles { d, max_witnesses } => {
            info!("certifying every triangle choice for d={d}");
            let rep = triangle_sweep(d, max_witnesses)?;
            flatten("sweep triangles", &rep, rep.disagreements > 0)
        }
        SweepCmd::Trees { n, max_witnesses } => {
            info!("certifying every spanning tree of K_{n}");
            let rep = tree_sweep(n, max_witnesses)?;
            flatten("sweep trees", &rep, rep.disagreements > 0)
        }
        SweepCmd::Surjectivity { n } => {
            info!("comparing maximal families with tree duals for n={n}");
            let rep = surjectivity_check(n)?;
            flatten("sweep surjectivity", &rep, !rep.equal)
        }
        SweepCmd::Hilbert { count, seed, max_vars, max_gens } => {
            info!("{count} random ideals, seed {seed}");
            let rep = hilbert_sweep(count, seed, max_vars, max_gens)?;
            flatten("sweep hilbert", &rep, rep.disagreements > 0)
        }
    }
}

fn flatten<T: Serialize>(name: &str, rep: &T, disagreement: bool) -> Result<Report> {
    let mut r = Report::new(name);
    for (k, v) in serde_json::to_value(rep)?.as_object().expect("struct").iter() {
        r.field(k, v);
    }
    if disagreement {
        r.disagree();
    }
    Ok(r)
}
