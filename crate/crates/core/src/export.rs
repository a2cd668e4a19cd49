//! Deterministic serializations: DOT, CSV edge lists, and JSON documents.
//!
//! Every export sorts its rows, so identical graphs always serialize to
//! byte-identical output.

use serde_json::json;

use crate::analysis::{GrowthTable, TypeCensus};
use crate::graph::{EdgeLabel, LabeledMultigraph};

/// Optional context attached to graph exports.
#[derive(Clone, Debug, Default)]
pub struct GraphMeta {
    pub omega: Option<String>,
    pub n: Option<u32>,
}

fn dot_attr(label: EdgeLabel) -> String {
    match label {
        EdgeLabel::Level(k) => format!("level={k}"),
        EdgeLabel::Gen(g) => format!("gen={}", EdgeLabel::Gen(g)),
        EdgeLabel::Loop => "label=\"loop\"".to_string(),
    }
}

/// DOT serialization of a multigraph; parallel edges and loops are emitted
/// verbatim, one statement per edge.
pub fn to_dot(graph: &LabeledMultigraph, name: &str) -> String {
    let mut out = format!("graph {name} {{\n");
    let mut vs: Vec<i64> = graph.vertices().to_vec();
    vs.sort_unstable();
    for v in vs {
        out.push_str(&format!("  \"{v}\";\n"));
    }
    for (u, v, label) in graph.sorted_edges() {
        out.push_str(&format!("  \"{u}\" -- \"{v}\" [{}];\n", dot_attr(label)));
    }
    out.push_str("}\n");
    out
}

/// CSV edge list `u,v,label`, sorted; the golden-file format.
pub fn to_csv(graph: &LabeledMultigraph) -> String {
    let mut out = String::new();
    for (u, v, label) in graph.sorted_edges() {
        out.push_str(&format!("{u},{v},{label}\n"));
    }
    out
}

/// JSON graph document {vertices, edges, meta{omega, n}}.
pub fn to_json(graph: &LabeledMultigraph, meta: &GraphMeta) -> String {
    let mut vs: Vec<i64> = graph.vertices().to_vec();
    vs.sort_unstable();
    let edges: Vec<serde_json::Value> = graph
        .sorted_edges()
        .into_iter()
        .map(|(u, v, label)| json!([u, v, label.to_string()]))
        .collect();
    let doc = json!({
        "vertices": vs,
        "edges": edges,
        "meta": { "omega": meta.omega, "n": meta.n },
    });
    format!("{doc:#}\n")
}

/// CSV growth table `r,count`.
pub fn growth_csv(table: &GrowthTable) -> String {
    let mut out = String::from("r,count\n");
    for (r, count) in table.rows.iter().enumerate() {
        out.push_str(&format!("{r},{count}\n"));
    }
    out
}

/// CSV diameter table `n,diam,lower,upper,ratio` where ratio is
/// diam / (√n·2^√(2n)).
pub fn diameter_csv(rows: &[(u32, u64, u64, u64)]) -> String {
    let mut out = String::from("n,diam,lower,upper,ratio\n");
    for &(n, diam, lower, upper) in rows {
        let nf = n as f64;
        let scale = nf.sqrt() * (2f64).powf((2.0 * nf).sqrt());
        out.push_str(&format!(
            "{n},{diam},{lower},{upper},{:.6}\n",
            diam as f64 / scale
        ));
    }
    out
}

/// CSV census summary `type,multiplicity,representative`, types numbered in
/// certificate order.
pub fn census_csv(census: &TypeCensus) -> String {
    let mut out = String::from("type,multiplicity,representative\n");
    for (i, zs) in census.types.values().enumerate() {
        let rep = zs.iter().min_by_key(|z| (z.abs(), **z)).unwrap();
        out.push_str(&format!("{i},{},{rep}\n", zs.len()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::type_census;
    use crate::graph::{model_graph, window};
    use crate::words::OmegaWord;

    #[test]
    fn csv_is_sorted_and_stable() {
        let g = model_graph(2);
        let csv = to_csv(&g);
        assert_eq!(csv.lines().count(), g.edge_count());
        assert_eq!(csv, to_csv(&g.clone()));
        // Parallel edges appear once per copy.
        assert_eq!(csv.matches("1,3,1").count(), 2);
    }

    #[test]
    fn dot_contains_every_edge() {
        let g = model_graph(1);
        let dot = to_dot(&g, "x1");
        assert!(dot.starts_with("graph x1 {"));
        assert_eq!(dot.matches(" -- ").count(), g.edge_count());
        assert!(dot.contains("[label=\"loop\"]"));
    }

    #[test]
    fn json_round_trips() {
        let g = model_graph(2);
        let meta = GraphMeta {
            omega: Some("(10)".into()),
            n: Some(2),
        };
        let doc: serde_json::Value = serde_json::from_str(&to_json(&g, &meta)).unwrap();
        assert_eq!(doc["meta"]["n"], 2);
        assert_eq!(doc["vertices"].as_array().unwrap().len(), 4);
        assert_eq!(doc["edges"].as_array().unwrap().len(), g.edge_count());
    }

    #[test]
    fn table_exports() {
        let omega = OmegaWord::parse("(10)").unwrap();
        let t = crate::analysis::growth_x_omega(&omega, 3).unwrap();
        let csv = growth_csv(&t);
        assert!(csv.starts_with("r,count\n0,1\n"));
        let census = type_census(&window(&omega, -32, 32).unwrap(), 0);
        let ccsv = census_csv(&census);
        assert_eq!(ccsv.lines().count(), census.type_count() + 1);
    }
}
