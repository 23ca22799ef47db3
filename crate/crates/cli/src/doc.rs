//! Deterministic graph and count documents.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use bbcrystal::{CartanDatum, Crystal, ExtInt, LabelledGraph, Weight};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDoc {
    pub lam: BTreeMap<String, i64>,
    pub rt: BTreeMap<String, i64>,
}

impl WeightDoc {
    fn new(d: &CartanDatum, w: &Weight) -> Self {
        let named =
            |m: &BTreeMap<usize, i64>| m.iter().map(|(&i, &k)| (d.id(i).to_string(), k)).collect();
        WeightDoc {
            lam: named(w.lam_part()),
            rt: named(w.root_part()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeDoc {
    pub id: usize,
    pub repr: String,
    pub wt: WeightDoc,
    /// One entry per index, in the order of `indices`.
    pub eps: Vec<ExtInt>,
    pub phi: Vec<ExtInt>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub from: usize,
    pub to: usize,
    pub i: String,
    pub l: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub nodes: Vec<NodeDoc>,
    pub edges: Vec<EdgeDoc>,
}

impl GraphDoc {
    /// Nodes ordered by depth below the seeds, then rendering; edges by
    /// source, index, `l`, target.
    pub fn new<C: Crystal>(s: &C, g: &LabelledGraph<C::Elem>) -> Self {
        let d = s.datum();
        let mut order: Vec<(i64, String, usize)> = g
            .nodes()
            .iter()
            .enumerate()
            .map(|(u, n)| (-n.wt.root_height(), s.render(&n.elem), u))
            .collect();
        order.sort();
        let mut renumber = vec![0; g.len()];
        for (k, &(_, _, u)) in order.iter().enumerate() {
            renumber[u] = k;
        }
        let nodes = order
            .into_iter()
            .enumerate()
            .map(|(k, (_, repr, u))| {
                let n = g.node(u);
                NodeDoc {
                    id: k,
                    repr,
                    wt: WeightDoc::new(d, &n.wt),
                    eps: n.eps.clone(),
                    phi: n.phi.clone(),
                }
            })
            .collect();
        let mut edges: Vec<(usize, usize, u32, usize)> = g
            .edges()
            .iter()
            .map(|e| (renumber[e.from], e.index, e.l, renumber[e.to]))
            .collect();
        edges.sort();
        let edges = edges
            .into_iter()
            .map(|(from, i, l, to)| EdgeDoc {
                from,
                to,
                i: d.id(i).to_string(),
                l,
            })
            .collect();
        GraphDoc { nodes, edges }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("graph documents serialize");
        s.push('\n');
        s
    }

    pub fn to_dot(&self) -> String {
        let q = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("digraph crystal {\n");
        for n in &self.nodes {
            let _ = writeln!(out, "  {};", q(&n.repr));
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label={}];",
                q(&self.nodes[e.from].repr),
                q(&self.nodes[e.to].repr),
                q(&format!("({},{})", e.i, e.l))
            );
        }
        out.push_str("}\n");
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub weight: String,
    pub height: i64,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDoc {
    pub rows: Vec<CountRow>,
    pub total: usize,
}

impl CountDoc {
    pub fn new<E: Clone + Eq + std::hash::Hash>(d: &CartanDatum, g: &LabelledGraph<E>) -> Self {
        let mut rows: Vec<CountRow> = g
            .weight_multiplicities()
            .into_iter()
            .map(|(w, count)| CountRow {
                weight: d.render_weight(&w),
                height: -w.root_height(),
                count,
            })
            .collect();
        rows.sort_by(|a, b| (a.height, &a.weight).cmp(&(b.height, &b.weight)));
        CountDoc {
            rows,
            total: g.len(),
        }
    }

    pub fn to_text(&self) -> String {
        let width = self
            .rows
            .iter()
            .map(|r| r.weight.len())
            .max()
            .unwrap_or(0)
            .max("weight".len());
        let mut out = format!("{:<width$}  count\n", "weight");
        for r in &self.rows {
            let _ = writeln!(out, "{:<width$}  {}", r.weight, r.count);
        }
        let _ = writeln!(out, "{:<width$}  {}", "total", self.total);
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("count documents serialize");
        s.push('\n');
        s
    }
}
