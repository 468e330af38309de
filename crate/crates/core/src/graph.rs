//! The blow-up graph on `W`: an edge `w1 ⇒ w2` joins a Bruhat cover with no
//! blow-up between its ends (equal `η` and equal local sign).

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::blowup::{EtaTable, SignVector};
use crate::cartan::{compact_dual_data, LieType};
use crate::error::{Error, Result};
use crate::weyl::{format_word, WeylGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    /// Index in the enumerated group.
    pub index: usize,
    pub word: String,
    pub matrix: Vec<i64>,
    pub length: usize,
    pub eta: u32,
    pub local_sign: SignVector,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGraph {
    pub lie_type: LieType,
    pub eps: SignVector,
    /// Indexed by group index.
    pub vertices: Vec<Vertex>,
    /// Directed edges `(w1, w2)` by group index, sorted.
    pub edges: Vec<(usize, usize)>,
    /// Covers with equal local signs but different `η`; these are not edges.
    pub eta_mismatch_covers: usize,
}

/// All Bruhat covers of an enumerated group, by group index.
pub fn bruhat_covers(group: &WeylGroup) -> Vec<(usize, usize)> {
    group.covers(&group.reflections())
}

pub fn build_graph(group: &WeylGroup, eps: SignVector) -> Result<IncidenceGraph> {
    let covers = bruhat_covers(group);
    build_graph_with_covers(group, eps, &covers)
}

pub fn build_graph_with_covers(group: &WeylGroup, eps: SignVector, covers: &[(usize, usize)]) -> Result<IncidenceGraph> {
    let table = EtaTable::build(group, eps)?;
    let vertices = (0..group.order())
        .map(|idx| Vertex {
            index: idx,
            word: format_word(&group.word(idx)),
            matrix: group.matrix(idx),
            length: group.length(idx),
            eta: table.value(idx),
            local_sign: table.local_sign(idx),
        })
        .collect::<Vec<_>>();
    let mut edges = Vec::new();
    let mut eta_mismatch_covers = 0;
    for &(a, b) in covers {
        let same_sign = vertices[a].local_sign == vertices[b].local_sign;
        let same_eta = vertices[a].eta == vertices[b].eta;
        match (same_sign, same_eta) {
            (true, true) => edges.push((a, b)),
            (true, false) => eta_mismatch_covers += 1,
            _ => {}
        }
    }
    edges.sort_unstable();
    Ok(IncidenceGraph { lie_type: group.lie_type(), eps, vertices, edges, eta_mismatch_covers })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    /// Component label per group index, numbered in order of first appearance.
    pub labels: Vec<usize>,
    pub count: usize,
}

impl Components {
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.count];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Connected components of the underlying undirected graph.
pub fn components(g: &IncidenceGraph) -> Components {
    let n = g.vertices.len();
    let mut uf = UnionFind::new(n);
    for &(a, b) in &g.edges {
        uf.union(a, b);
    }
    let mut labels = vec![0; n];
    let mut seen = BTreeMap::new();
    for (v, label) in labels.iter_mut().enumerate() {
        let root = uf.find(v);
        let next = seen.len();
        *label = *seen.entry(root).or_insert(next);
    }
    Components { count: seen.len(), labels }
}

/// Components of the subgraph induced on the given vertices.
pub fn negative_components(g: &IncidenceGraph, wminus: &[usize]) -> usize {
    let n = g.vertices.len();
    let mut member = vec![false; n];
    for &v in wminus {
        member[v] = true;
    }
    let mut uf = UnionFind::new(n);
    for &(a, b) in &g.edges {
        if member[a] && member[b] {
            uf.union(a, b);
        }
    }
    let mut roots: Vec<usize> = wminus.iter().map(|&v| uf.find(v)).collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeComponentsReport {
    pub count: usize,
    pub expected: usize,
    /// Soft check: the `2^g` count is an observation, not a theorem.
    pub warning: Option<String>,
}

pub fn negative_components_report(g: &IncidenceGraph, wminus: &[usize]) -> NegativeComponentsReport {
    let count = negative_components(g, wminus);
    let expected = 1usize << compact_dual_data(g.lie_type).g;
    let warning = (count != expected)
        .then(|| format!("{}: {count} negative components, 2^g = {expected}", g.lie_type));
    NegativeComponentsReport { count, expected, warning }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<ExportFormat> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl IncidenceGraph {
    /// Group indices ordered by `(length, matrix)`.
    pub fn canonical_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.vertices.len()).collect();
        order.sort_by(|&a, &b| {
            let (va, vb) = (&self.vertices[a], &self.vertices[b]);
            (va.length, &va.matrix).cmp(&(vb.length, &vb.matrix))
        });
        order
    }
}

pub fn export(g: &IncidenceGraph, format: ExportFormat) -> String {
    match format {
        ExportFormat::Json => to_json(g),
        ExportFormat::Dot => to_dot(g),
    }
}

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    lie_type: LieType,
    eps: SignVector,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    eta_mismatch_covers: usize,
}

fn to_json(g: &IncidenceGraph) -> String {
    let order = g.canonical_order();
    let mut position = vec![0; order.len()];
    for (pos, &idx) in order.iter().enumerate() {
        position[idx] = pos;
    }
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|&(a, b)| (position[a], position[b])).collect();
    edges.sort_unstable();
    let out = JsonGraph {
        lie_type: g.lie_type,
        eps: g.eps,
        vertices: order.iter().map(|&i| g.vertices[i].clone()).collect(),
        edges,
        eta_mismatch_covers: g.eta_mismatch_covers,
    };
    serde_json::to_string_pretty(&out).expect("graph serializes")
}

/// Inverse of the JSON export.
pub fn parse_json(text: &str) -> std::result::Result<IncidenceGraph, serde_json::Error> {
    let parsed: JsonGraph = serde_json::from_str(text)?;
    let n = parsed.vertices.len();
    let mut vertices: Vec<Option<Vertex>> = vec![None; n];
    let mut index_of_pos = vec![0; n];
    for (pos, v) in parsed.vertices.into_iter().enumerate() {
        if v.index >= n || vertices[v.index].is_some() {
            return Err(serde::de::Error::custom(format!("bad vertex index {}", v.index)));
        }
        index_of_pos[pos] = v.index;
        let slot = v.index;
        vertices[slot] = Some(v);
    }
    let mut edges = Vec::with_capacity(parsed.edges.len());
    for (a, b) in parsed.edges {
        if a >= n || b >= n {
            return Err(serde::de::Error::custom("edge endpoint out of range"));
        }
        edges.push((index_of_pos[a], index_of_pos[b]));
    }
    edges.sort_unstable();
    Ok(IncidenceGraph {
        lie_type: parsed.lie_type,
        eps: parsed.eps,
        vertices: vertices.into_iter().map(|v| v.expect("all slots filled")).collect(),
        edges,
        eta_mismatch_covers: parsed.eta_mismatch_covers,
    })
}

fn to_dot(g: &IncidenceGraph) -> String {
    let order = g.canonical_order();
    let mut position = vec![0; order.len()];
    for (pos, &idx) in order.iter().enumerate() {
        position[idx] = pos;
    }
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}_{}\" {{", g.lie_type, g.eps);
    out.push_str("  rankdir=TB;\n  node [shape=box, fontname=\"monospace\"];\n");
    for (pos, &idx) in order.iter().enumerate() {
        let v = &g.vertices[idx];
        let _ = writeln!(out, "  n{pos} [label=\"{} | l={} | η={}\"];", v.word, v.length, v.eta);
    }
    let mut edges: Vec<(usize, usize)> = g.edges.iter().map(|&(a, b)| (position[a], position[b])).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blowup::w_minus;
    use crate::weyl::DEFAULT_CAP;

    fn graph(t: &str, eps: &str) -> (WeylGroup, IncidenceGraph) {
        let g = WeylGroup::enumerate(t.parse().unwrap(), DEFAULT_CAP).unwrap();
        let gr = build_graph(&g, eps.parse().unwrap()).unwrap();
        (g, gr)
    }

    fn named_edges(g: &IncidenceGraph) -> Vec<(String, String)> {
        let mut v: Vec<_> = g.edges.iter().map(|&(a, b)| (g.vertices[a].word.clone(), g.vertices[b].word.clone())).collect();
        v.sort();
        v
    }

    #[test]
    fn a2_edges() {
        let (_, g) = graph("A2", "--");
        assert_eq!(named_edges(&g), vec![("s1".into(), "s1s2".into()), ("s2".into(), "s2s1".into())]);
        let (_, g) = graph("A2", "-+");
        assert_eq!(
            named_edges(&g),
            vec![("e".into(), "s2".into()), ("s1".into(), "s2s1".into()), ("s1s2".into(), "s1s2s1".into())]
        );
        let (_, g) = graph("A1", "-");
        assert!(g.edges.is_empty());
        assert_eq!(components(&g).count, 2);
    }

    #[test]
    fn edge_invariants() {
        for (t, eps) in [("A3", "---"), ("B3", "-+-"), ("G2", "--"), ("C3", "+--")] {
            let (group, g) = graph(t, eps);
            let refl = group.reflections();
            for &(a, b) in &g.edges {
                let (va, vb) = (&g.vertices[a], &g.vertices[b]);
                assert_eq!(vb.length, va.length + 1);
                assert_eq!(va.eta, vb.eta);
                assert_eq!(va.local_sign, vb.local_sign);
                assert!(crate::weyl::bruhat_cover(&group.element(a), &group.element(b), &refl, group.cartan()).unwrap());
            }
            let comps = components(&g);
            let mut eta_of = vec![None; comps.count];
            for (v, &c) in comps.labels.iter().enumerate() {
                let key = (g.vertices[v].eta, g.vertices[v].local_sign);
                assert_eq!(*eta_of[c].get_or_insert(key), key);
            }
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(components(&graph("A2", "--").1).count, 4);
        assert_eq!(components(&graph("A3", "---").1).count, 10);
        assert_eq!(components(&graph("B3", "---").1).count, 17);
    }

    #[test]
    fn plus_sign_joins_identity_and_generator() {
        for t in ["A3", "B3", "G2"] {
            let rank = t[1..].parse().unwrap();
            for eps in SignVector::all(rank) {
                let (_, g) = graph(t, &eps.to_string());
                let comps = components(&g);
                for i in (0..rank).filter(|&i| !eps.is_minus(i)) {
                    let si = g.vertices.iter().position(|v| v.word == format!("s{}", i + 1)).unwrap();
                    assert_eq!(comps.labels[0], comps.labels[si], "{t} {eps} s{}", i + 1);
                }
            }
        }
    }

    #[test]
    fn negative_component_counts() {
        for (t, eps, n) in [("A1", "-", 2), ("A2", "--", 2), ("A3", "---", 4)] {
            let (group, g) = graph(t, eps);
            let report = negative_components_report(&g, &w_minus(&group));
            assert_eq!(report.count, n, "{t}");
            assert!(report.warning.is_none());
        }
    }

    #[test]
    fn dot_export() {
        let (_, g) = graph("A1", "-");
        let dot = export(&g, ExportFormat::Dot);
        assert_eq!(dot.matches("label=").count(), 2);
        assert!(!dot.contains("->"));
        let (_, g) = graph("A2", "--");
        let dot = export(&g, ExportFormat::Dot);
        assert_eq!(dot.matches("label=").count(), 6);
        assert_eq!(dot.matches(" -> ").count(), 2);
        assert!(dot.contains("label=\"e | l=0 | η=0\""));
        assert_eq!(dot, export(&g, ExportFormat::Dot));
        assert!("svg".parse::<ExportFormat>().is_err());
    }

    #[test]
    fn json_round_trip() {
        for (t, eps) in [("A2", "--"), ("B3", "-+-"), ("G2", "+-")] {
            let (_, g) = graph(t, eps);
            let text = export(&g, ExportFormat::Json);
            assert_eq!(parse_json(&text).unwrap(), g);
        }
    }
}
