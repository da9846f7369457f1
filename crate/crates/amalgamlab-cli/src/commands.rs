use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, to_value};

use amalgamlab::amalgam::{classify_with, table_row_for, three_arc as find_three_arc, two_point_columns, Amalgam, Tier};
use amalgamlab::catalog::{validate_entry, Catalog, CatalogEntry, Family};
use amalgamlab::golden::{self, Named, Table1Row, Triple};
use amalgamlab::graphs::{check_graph, complete_bipartite_example, complete_graph, cycle_graph, cayley_2at, SymGraph};
use amalgamlab::names::{labels_match, reference_group};
use amalgamlab::{Error, Group, Result};

use crate::{BuildKind, Outcome, RunConfig, TierArg};

fn outcome(text: String, json: impl Serialize, mismatch: bool) -> Result<Outcome> {
    Ok(Outcome { text, json: to_value(json)?, dot: None, mismatch })
}

fn entry<'a>(cat: &'a Catalog, id: &str) -> Result<&'a CatalogEntry> {
    cat.get(id).ok_or_else(|| Error::Input(format!("unknown catalog id {id}")))
}

pub fn catalog_list(cat: &Catalog, family: Option<Family>, degree: Option<u64>, constructed: bool) -> Result<Outcome> {
    let picked: Vec<&CatalogEntry> = cat
        .entries()
        .iter()
        .filter(|e| family.is_none_or(|f| e.family == f))
        .filter(|e| degree.is_none_or(|d| e.degree == d))
        .filter(|e| !constructed || e.is_constructed())
        .collect();
    let mut text = String::new();
    for e in &picked {
        let tag = if e.is_constructed() { "" } else { "  (descriptor only)" };
        writeln!(text, "{:<22} degree {:<6} order {:<14} stabiliser {}{tag}", e.id, e.degree, e.order, e.stabiliser_iso).unwrap();
    }
    outcome(text, picked, false)
}

pub fn catalog_show(cat: &Catalog, id: &str) -> Result<Outcome> {
    let e = entry(cat, id)?;
    let mut text = String::new();
    writeln!(text, "{}", e.id).unwrap();
    writeln!(text, "  family        {:?}", e.family).unwrap();
    writeln!(text, "  degree        {}", e.degree).unwrap();
    writeln!(text, "  group         {} (order {})", e.group, e.order).unwrap();
    writeln!(text, "  socle         {}", e.socle).unwrap();
    writeln!(text, "  stabiliser    {} = {} (order {})", e.stabiliser, e.stabiliser_iso, e.stabiliser_order).unwrap();
    writeln!(text, "  two-point     {} (order {})", e.two_point, e.two_point_order).unwrap();
    writeln!(text, "  soluble stab  {}", e.stabiliser_soluble).unwrap();
    writeln!(text, "  constructed   {}", e.is_constructed()).unwrap();
    if !e.notes.is_empty() {
        writeln!(text, "  notes         {}", e.notes).unwrap();
    }
    outcome(text, e, false)
}

pub fn catalog_validate(cat: &Catalog, ids: &[String]) -> Result<Outcome> {
    let entries: Vec<&CatalogEntry> = if ids.is_empty() {
        cat.constructed().collect()
    } else {
        ids.iter().map(|id| entry(cat, id)).collect::<Result<_>>()?
    };
    let reports = entries.into_iter().map(validate_entry).collect::<Result<Vec<_>>>()?;
    let failed = reports.iter().filter(|r| !r.passed()).count();
    let mut text = String::new();
    for r in &reports {
        writeln!(text, "{r}").unwrap();
    }
    writeln!(text, "{} entries, {failed} failed", reports.len()).unwrap();
    outcome(text, reports, failed > 0)
}

#[derive(Serialize)]
struct ClassifiedRow {
    #[serde(flatten)]
    summary: amalgamlab::amalgam::AmalgamSummary,
    columns: [Named; 2],
    /// False when a side is descriptor-only and the catalog names stand in.
    columns_computed: bool,
    columns_match: Option<bool>,
}

#[derive(Serialize)]
struct ClassifyReport {
    tier: Tier,
    rows: Vec<ClassifiedRow>,
    extras: Vec<ClassifiedRow>,
    regular: Vec<ClassifiedRow>,
    missing_rows: Vec<u32>,
    passed: bool,
}

fn classified(a: &Amalgam, row: Option<u32>, golden: Option<&Table1Row>) -> Result<ClassifiedRow> {
    let (columns, computed) = if a.is_constructed() {
        (two_point_columns(a)?, true)
    } else {
        let named = |e: &CatalogEntry| Named { label: e.two_point.clone(), order: e.two_point_order };
        ([named(&a.left), named(&a.right)], false)
    };
    let columns_match = golden.map(|g| {
        columns.iter().zip(&g.columns).all(|(c, want)| c.order == want.order && labels_match(&c.label, &want.label))
    });
    let mut summary = a.summary();
    summary.row = row;
    Ok(ClassifiedRow { summary, columns, columns_computed: computed, columns_match })
}

fn row_line(text: &mut String, r: &ClassifiedRow) {
    let s = &r.summary;
    let row = s.row.map_or("-".to_string(), |n| n.to_string());
    let check = if r.columns_match == Some(false) { "  columns differ" } else { "" };
    writeln!(
        text,
        "{row:>3}  {:<14} {:<14} shared {:<12} |G_v|={:<10} |G_w|={:<10} k={:<4} l={:<4} {} | {}{check}",
        s.left, s.right, s.shared.label, s.left_order, s.right_order, s.left_degree, s.right_degree, r.columns[0].label,
        r.columns[1].label
    )
    .unwrap();
}

pub fn classify(cat: &Catalog, cfg: &RunConfig, tier: TierArg, regular: bool, golden_path: Option<&Path>) -> Result<Outcome> {
    let table = match golden_path {
        Some(p) => golden::read_table1(p)?,
        None => golden::table1(),
    };
    let tier = match tier {
        TierArg::Descriptor => Tier::Descriptor,
        TierArg::Concrete => Tier::Concrete,
    };
    let classes = classify_with(cat, cfg.threads)?;
    let kept = |a: &&Amalgam| tier == Tier::Descriptor || a.tier == Tier::Concrete;
    let mut rows = Vec::new();
    let mut extras = Vec::new();
    for a in classes.amalgams.iter().filter(kept) {
        match table_row_for(a, &table.rows) {
            Some((n, _)) => {
                let g = table.rows.iter().find(|r| r.row == n);
                rows.push(classified(a, Some(n), g)?);
            }
            None => extras.push(classified(a, None, None)?),
        }
    }
    rows.sort_by_key(|r| r.summary.row);
    let found: Vec<u32> = rows.iter().filter_map(|r| r.summary.row).collect();
    let missing_rows: Vec<u32> = table.rows.iter().map(|r| r.row).filter(|n| !found.contains(n)).collect();
    let duplicated = found.windows(2).any(|w| w[0] == w[1]);
    let regular_rows = if regular {
        classes.regular.iter().filter(kept).map(|a| classified(a, None, None)).collect::<Result<_>>()?
    } else {
        Vec::new()
    };
    let passed = missing_rows.is_empty() && !duplicated;

    let mut text = String::new();
    for r in &rows {
        row_line(&mut text, r);
    }
    if !extras.is_empty() {
        writeln!(text, "not in the reference table:").unwrap();
        for r in &extras {
            row_line(&mut text, r);
        }
    }
    if regular {
        writeln!(text, "regular (isomorphic socles):").unwrap();
        for r in &regular_rows {
            row_line(&mut text, r);
        }
    }
    writeln!(text, "{} of {} reference rows found", found.len(), table.rows.len()).unwrap();
    if !missing_rows.is_empty() {
        writeln!(text, "missing rows: {missing_rows:?}").unwrap();
    }
    let report = ClassifyReport { tier, rows, extras, regular: regular_rows, missing_rows, passed };
    outcome(text, report, !passed)
}

fn same_triple(found: &amalgamlab::amalgam::ArcTriple, want: &Triple) -> bool {
    let sides = |l: (u64, u64), r: (u64, u64)| {
        let w = ((want.left.order, want.left.degree), (want.right.order, want.right.degree));
        (l, r) == w || (r, l) == w
    };
    found.regular == want.regular
        && found.shared.order == want.shared.order
        && sides((found.left_order, found.left_degree), (found.right_order, found.right_degree))
}

pub fn three_arc(cat: &Catalog, cfg: &RunConfig) -> Result<Outcome> {
    let report = find_three_arc(cat, cfg.seed, cfg.threads)?;
    let listed = golden::three_arc();
    let unmatched: Vec<usize> =
        (0..report.triples.len()).filter(|&i| !listed.triples.iter().any(|t| same_triple(&report.triples[i], t))).collect();
    let missing: Vec<&Triple> = listed.triples.iter().filter(|t| !report.triples.iter().any(|f| same_triple(f, t))).collect();
    let passed = unmatched.is_empty() && missing.is_empty();

    let mut text = String::new();
    for (i, t) in report.triples.iter().enumerate() {
        let flag = if unmatched.contains(&i) { "  (not in the reference list)" } else { "" };
        let kind = if t.regular { "regular" } else { "" };
        writeln!(
            text,
            "({}, {}, {})  G_vw cap G_vw' = {} [{}:{}] {kind}{flag}",
            t.left_group, t.right_group, t.shared.label, t.intersection.label, t.left_index, t.right_index
        )
        .unwrap();
    }
    for t in &missing {
        writeln!(text, "missing: ({}, {}, {})", t.left.label, t.right.label, t.shared.label).unwrap();
    }
    for id in &report.rejected {
        writeln!(text, "filter witness rejected by coupling: {id}").unwrap();
    }
    for n in &report.notes {
        writeln!(text, "note: {n}").unwrap();
    }
    writeln!(text, "{} triples, reference lists {}", report.triples.len(), listed.triples.len()).unwrap();
    let json = json!({ "report": report, "missing": missing, "unmatched": unmatched, "passed": passed });
    outcome(text, json, !passed)
}

fn named_group(cat: &Catalog, name: &str) -> Result<Group> {
    match cat.get(name) {
        Some(e) => e.group(),
        None => reference_group(name).ok_or_else(|| Error::Input(format!("unknown group {name}"))),
    }
}

fn build_graph(cat: &Catalog, kind: &BuildKind) -> Result<(SymGraph, String)> {
    Ok(match kind {
        BuildKind::Example { row } => {
            let rows = golden::examples().rows;
            let found = match row.parse::<usize>() {
                Ok(i) if (1..=rows.len()).contains(&i) => Some(&rows[i - 1]),
                Ok(_) => None,
                Err(_) => rows.iter().find(|r| labels_match(&r.group, row)),
            };
            let r = found.ok_or_else(|| Error::Input(format!("no example row {row}")))?;
            let stem = format!("example-{}", r.group.replace([':', '^', ' ', '/'], "_"));
            (complete_bipartite_example(r, cat)?.graph, stem)
        }
        BuildKind::Cayley { h, p } => (cayley_2at(&named_group(cat, h)?, *p)?, format!("cayley-{h}-{p}")),
        BuildKind::Complete { id } => {
            let g = entry(cat, id)?.group()?;
            (complete_graph(g)?, format!("complete-{}", id.replace(['@', ':', '^'], "_")))
        }
        BuildKind::Cycle { n } => (cycle_graph(*n)?, format!("cycle-{n}")),
    })
}

#[derive(Serialize)]
struct Built {
    graph: String,
    group: String,
    vertices: usize,
    edges: usize,
    valencies: Vec<usize>,
    group_order: String,
    provenance: String,
}

pub fn build(cat: &Catalog, kind: BuildKind, out: &Path, name: Option<&str>) -> Result<Outcome> {
    let (graph, stem) = build_graph(cat, &kind)?;
    let stem = name.map_or(stem, str::to_string);
    std::fs::create_dir_all(out)?;
    let group_name = format!("{stem}.group.json");
    let graph_path = out.join(format!("{stem}.graph.json"));
    let group_path = out.join(&group_name);
    std::fs::write(&group_path, serde_json::to_string_pretty(&graph.group().to_file(Some(stem.clone())))?)?;
    std::fs::write(&graph_path, serde_json::to_string_pretty(&graph.to_file(group_name))?)?;

    let mut valencies: Vec<usize> = (0..graph.vertex_count() as u32).map(|v| graph.valency(v)).collect();
    valencies.sort_unstable();
    valencies.dedup();
    let built = Built {
        graph: graph_path.display().to_string(),
        group: group_path.display().to_string(),
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        valencies,
        group_order: graph.group().order().to_string(),
        provenance: graph.provenance().to_string(),
    };
    let text = format!(
        "wrote {} ({} vertices, {} edges, valencies {:?}, |G| = {})\n",
        built.graph, built.vertices, built.edges, built.valencies, built.group_order
    );
    let mut o = outcome(text, built, false)?;
    o.dot = Some(graph.to_dot());
    Ok(o)
}

pub fn check(path: &Path, s: usize, paths: usize, cfg: &RunConfig) -> Result<Outcome> {
    let graph = SymGraph::read_json(path)?;
    let report = check_graph(&graph, s, paths, cfg.seed, cfg.threads)?;
    let mut text = String::new();
    writeln!(text, "{} vertices, {} edges, edge-transitive {}", report.vertices, report.edges, report.edge_transitive).unwrap();
    for a in &report.arcs {
        writeln!(text, "vertex {} (valency {}): locally s-arc-transitive for s = {}, orbit counts {:?}", a.root, a.valency, a.s, a.orbit_counts)
            .unwrap();
    }
    let c = &report.composition;
    writeln!(text, "kernel orders {:?}, composition factors covered {}, soluble {}", c.kernel_orders, c.passed, c.solubility).unwrap();
    let chains_ok = report.chains.iter().filter(|r| r.passed).count();
    writeln!(text, "kernel chains: {chains_ok} of {} pass", report.chains.len()).unwrap();
    match &report.trivial_kernel_path {
        Some(p) => writeln!(text, "trivial kernel along {p:?}").unwrap(),
        None => writeln!(text, "no trivial-kernel path found").unwrap(),
    }
    writeln!(text, "{}", if report.passed { "passed" } else { "FAILED" }).unwrap();
    let mut o = outcome(text, &report, !report.passed)?;
    o.dot = Some(graph.to_dot());
    Ok(o)
}
