//! Defining graphs: ingestion, link and star combinatorics, the truncated
//! metric, connected-dominating tests and separating intersections of links.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A vertex of a [`SimplicialGraph`], identified by its position in the
/// canonical (lexicographic by name) vertex order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub(crate) usize);

impl Vertex {
    pub fn index(self) -> usize {
        self.0
    }
}

/// A subset of the vertices of one graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(pub(crate) BitSet);

impl VertexSet {
    pub fn empty() -> Self {
        Self(BitSet::new())
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(v.0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().map(Vertex)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &Self) -> Self {
        Self(self.0.union(&other.0))
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self(self.0.intersection(&other.0))
    }

    pub fn difference(&self, other: &Self) -> Self {
        Self(self.0.difference(&other.0))
    }

    pub fn with(&self, v: Vertex) -> Self {
        let mut s = self.clone();
        s.0.insert(v.0);
        s
    }

    pub fn as_bits(&self) -> &BitSet {
        &self.0
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self(iter.into_iter().map(|v| v.0).collect())
    }
}

/// Input formats accepted by [`SimplicialGraph::parse`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Json,
    EdgeList,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

/// A finite simplicial graph with named vertices.
///
/// Vertices are stored in lexicographic order of their names; every list the
/// graph hands out follows that order.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialGraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BitSet>,
}

/// A separating intersection of links: nonadjacent `a < b` and a component of
/// `Γ \ (Link(a) ∩ Link(b))` that contains neither of them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SilWitness {
    pub a: Vertex,
    pub b: Vertex,
    pub component: VertexSet,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '{' | '}' | ','))
}

impl SimplicialGraph {
    /// Builds a graph from named vertices and edges. `vertex_loc` and
    /// `edge_loc` render error locations for the i-th vertex / edge.
    fn build(
        vertices: Vec<String>,
        edges: Vec<[String; 2]>,
        vertex_loc: impl Fn(usize) -> String,
        edge_loc: impl Fn(usize) -> String,
    ) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, name) in vertices.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidVertexName {
                    location: vertex_loc(i),
                    name: name.clone(),
                });
            }
            if !seen.insert(name.clone()) {
                return Err(Error::DuplicateVertex {
                    location: vertex_loc(i),
                    name: name.clone(),
                });
            }
        }
        if seen.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let names: Vec<String> = seen.into_iter().collect();
        let index: HashMap<String, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let mut adj = vec![BitSet::new(); names.len()];
        for (i, [u, v]) in edges.iter().enumerate() {
            let lookup = |name: &String| {
                index.get(name).copied().ok_or_else(|| Error::UnknownEndpoint {
                    location: edge_loc(i),
                    name: name.clone(),
                })
            };
            let (iu, iv) = (lookup(u)?, lookup(v)?);
            if iu == iv {
                return Err(Error::LoopEdge {
                    location: edge_loc(i),
                    name: u.clone(),
                });
            }
            if adj[iu].contains(iv) {
                let (u, v) = if u < v { (u, v) } else { (v, u) };
                return Err(Error::DuplicateEdge {
                    location: edge_loc(i),
                    u: u.clone(),
                    v: v.clone(),
                });
            }
            adj[iu].insert(iv);
            adj[iv].insert(iu);
        }
        Ok(Self { names, index, adj })
    }

    /// Builds a graph from vertex names and name pairs.
    pub fn from_edges<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        Self::build(
            vertices.iter().map(|s| s.as_ref().to_owned()).collect(),
            edges
                .iter()
                .map(|(u, v)| [u.as_ref().to_owned(), v.as_ref().to_owned()])
                .collect(),
            |i| format!("vertex {i}"),
            |i| format!("edge {i}"),
        )
    }

    pub fn parse(text: &str, format: GraphFormat) -> Result<Self> {
        match format {
            GraphFormat::Json => Self::from_json(text),
            GraphFormat::EdgeList => Self::from_edge_list(text),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Malformed {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::build(
            raw.vertices,
            raw.edges,
            |i| format!("vertices[{i}]"),
            |i| format!("edges[{i}]"),
        )
    }

    /// Parses the edge-list format: one `u v` pair per line, `vertex u` lines
    /// for isolated vertices, `#` comments and blank lines ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut vertex_lines = Vec::new();
        let mut declared = BTreeSet::new();
        let mut edges = Vec::new();
        let mut edge_lines = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                ["vertex", name] => {
                    if !declared.insert(name.to_string()) {
                        return Err(Error::DuplicateVertex {
                            location: format!("line {}", lineno + 1),
                            name: name.to_string(),
                        });
                    }
                    vertices.push(name.to_string());
                    vertex_lines.push(lineno + 1);
                }
                [u, v] => {
                    for name in [u, v] {
                        if declared.insert(name.to_string()) {
                            vertices.push(name.to_string());
                            vertex_lines.push(lineno + 1);
                        }
                    }
                    edges.push([u.to_string(), v.to_string()]);
                    edge_lines.push(lineno + 1);
                }
                _ => {
                    return Err(Error::Malformed {
                        location: format!("line {}", lineno + 1),
                        message: format!("expected `u v` or `vertex u`, found `{line}`"),
                    })
                }
            }
        }
        Self::build(
            vertices,
            edges,
            |i| format!("line {}", vertex_lines[i]),
            |i| format!("line {}", edge_lines[i]),
        )
    }

    /// Canonical JSON: sorted vertices, each edge sorted, edge list sorted.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .into_iter()
                .map(|(u, v)| [self.name(u).to_owned(), self.name(v).to_owned()])
                .collect(),
        };
        serde_json::to_value(raw).expect("graph serializes")
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for v in self.vertices() {
            if self.adj[v.0].is_empty() {
                out.push_str(&format!("vertex {}\n", self.name(v)));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.name(u), self.name(v)));
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        (0..self.names.len()).map(Vertex)
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet(BitSet::full(self.names.len()))
    }

    /// Edges as sorted pairs, in sorted order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
        for u in 0..self.names.len() {
            for v in self.adj[u].iter().filter(|&v| v > u) {
                out.push((Vertex(u), Vertex(v)));
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BitSet::len).sum::<usize>() / 2
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index
            .get(name)
            .map(|&i| Vertex(i))
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names.iter().map(|n| self.vertex(n.as_ref())).collect()
    }

    pub fn set_names<'a>(&'a self, set: &'a VertexSet) -> Vec<&'a str> {
        set.iter().map(|v| self.name(v)).collect()
    }

    /// `{a,b,c}` with names in canonical order.
    pub fn format_set(&self, set: &VertexSet) -> String {
        format!("{{{}}}", self.set_names(set).join(","))
    }

    pub fn is_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u.0].contains(v.0)
    }

    pub fn link(&self, v: Vertex) -> VertexSet {
        VertexSet(self.adj[v.0].clone())
    }

    pub fn star(&self, v: Vertex) -> VertexSet {
        self.link(v).with(v)
    }

    /// `Z = {a | Star(a) = V}`.
    pub fn center(&self) -> VertexSet {
        self.vertices()
            .filter(|&v| self.adj[v.0].len() + 1 == self.names.len())
            .collect()
    }

    pub fn is_central(&self, v: Vertex) -> bool {
        self.adj[v.0].len() + 1 == self.names.len()
    }

    /// The truncated combinatorial metric: 0, 1 for adjacent, 2 otherwise
    /// (including vertices in different components).
    pub fn dist2(&self, u: Vertex, v: Vertex) -> u8 {
        if u == v {
            0
        } else if self.is_edge(u, v) {
            1
        } else {
            2
        }
    }

    /// Connected components of the full subgraph spanned by `within`, in
    /// canonical order.
    pub fn components(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut unseen = within.0.clone();
        let mut out = Vec::new();
        while let Some(start) = unseen.first() {
            let mut comp = BitSet::singleton(start);
            unseen.remove(start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for w in self.adj[u].intersection(&unseen).iter() {
                    unseen.remove(w);
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
            out.push(VertexSet(comp));
        }
        out
    }

    /// The component of `Γ[within]` containing `v`, if `v ∈ within`.
    pub fn component_containing(&self, within: &VertexSet, v: Vertex) -> Option<VertexSet> {
        self.components(within).into_iter().find(|c| c.contains(v))
    }

    /// Components of `Γ \ Star(a)`; empty exactly when `a ∈ Z`.
    pub fn components_without_star(&self, a: Vertex) -> Vec<VertexSet> {
        self.components(&self.all_vertices().difference(&self.star(a)))
    }

    pub fn is_connected_set(&self, set: &VertexSet) -> bool {
        !set.is_empty() && self.components(set).len() == 1
    }

    pub fn is_dominating_set(&self, set: &VertexSet) -> bool {
        let covered = set
            .iter()
            .fold(set.0.clone(), |acc, v| acc.union(&self.adj[v.0]));
        covered.len() == self.names.len()
    }

    /// `(connected, dominating)` for the full subgraph spanned by `set`.
    /// The empty set is never connected, and never dominating since graphs
    /// are nonempty.
    pub fn spans_connected_dominating(&self, set: &VertexSet) -> (bool, bool) {
        (self.is_connected_set(set), self.is_dominating_set(set))
    }

    /// Adds a fresh vertex adjacent to every existing vertex. The new vertex
    /// is named `apex`, suffixed with `_1`, `_2`, ... on collision.
    pub fn cone(&self) -> SimplicialGraph {
        let mut fresh = "apex".to_owned();
        let mut k = 0;
        while self.index.contains_key(&fresh) {
            k += 1;
            fresh = format!("apex_{k}");
        }
        let mut vertices = self.names.clone();
        vertices.push(fresh.clone());
        let mut edges: Vec<[String; 2]> = self
            .edges()
            .into_iter()
            .map(|(u, v)| [self.name(u).to_owned(), self.name(v).to_owned()])
            .collect();
        edges.extend(self.names.iter().map(|n| [n.clone(), fresh.clone()]));
        Self::build(vertices, edges, |i| format!("vertex {i}"), |i| format!("edge {i}"))
            .expect("coning preserves validity")
    }

    /// The same graph with every vertex `v` renamed to `rename(v)`.
    pub fn renamed(&self, rename: impl Fn(&str) -> String) -> Result<SimplicialGraph> {
        let vertices = self.names.iter().map(|n| rename(n)).collect();
        let edges = self
            .edges()
            .into_iter()
            .map(|(u, v)| [rename(self.name(u)), rename(self.name(v))])
            .collect();
        Self::build(vertices, edges, |i| format!("vertex {i}"), |i| format!("edge {i}"))
    }

    /// Every separating intersection of links, ordered by `(a, b, component)`.
    pub fn find_sils(&self) -> Vec<SilWitness> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in self.vertices().filter(|&b| b > a && !self.is_edge(a, b)) {
                let shared = self.link(a).intersection(&self.link(b));
                let rest = self.all_vertices().difference(&shared);
                for component in self.components(&rest) {
                    if !component.contains(a) && !component.contains(b) {
                        out.push(SilWitness { a, b, component });
                    }
                }
            }
        }
        out
    }

    pub fn has_sil(&self) -> bool {
        !self.find_sils().is_empty()
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn example() -> SimplicialGraph {
        SimplicialGraph::from_edges(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("c", "e")],
        )
        .unwrap()
    }

    fn set(g: &SimplicialGraph, names: &[&str]) -> VertexSet {
        g.vertex_set(names).unwrap()
    }

    #[test]
    fn parses_example_json() {
        let text = r#"{"vertices":["e","d","c","b","a"],"edges":[["b","a"],["b","c"],["c","d"],["e","c"]]}"#;
        let g = SimplicialGraph::from_json(text).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(
            g.to_json(),
            r#"{"vertices":["a","b","c","d","e"],"edges":[["a","b"],["b","c"],["c","d"],["c","e"]]}"#
        );
        let again = SimplicialGraph::from_json(&g.to_json()).unwrap();
        assert_eq!(again.to_json(), g.to_json());
    }

    #[test]
    fn single_vertex() {
        let g = SimplicialGraph::from_json(r#"{"vertices":["x"],"edges":[]}"#).unwrap();
        assert_eq!(g.vertex_count(), 1);
        let x = g.vertex("x").unwrap();
        assert!(g.link(x).is_empty());
        assert_eq!(g.star(x), set(&g, &["x"]));
    }

    #[test]
    fn edge_list_duplicate_after_canonicalization() {
        let err = SimplicialGraph::from_edge_list("a b\nb a").unwrap_err();
        assert!(matches!(err, Error::DuplicateEdge { ref location, .. } if location == "line 2"));
    }

    #[test]
    fn edge_list_comments_and_isolated() {
        let g = SimplicialGraph::from_edge_list("# comment\nvertex z\n\na b\n").unwrap();
        assert_eq!(g.names(), &["a", "b", "z"]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(SimplicialGraph::from_edge_list(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn parse_errors_carry_locations() {
        let dup = SimplicialGraph::from_json(r#"{"vertices":["a","a"],"edges":[]}"#);
        assert!(matches!(dup, Err(Error::DuplicateVertex { ref location, .. }) if location == "vertices[1]"));
        let unknown = SimplicialGraph::from_json(r#"{"vertices":["a"],"edges":[["a","q"]]}"#);
        assert!(matches!(unknown, Err(Error::UnknownEndpoint { ref location, .. }) if location == "edges[0]"));
        let lp = SimplicialGraph::from_json(r#"{"vertices":["a"],"edges":[["a","a"]]}"#);
        assert!(matches!(lp, Err(Error::LoopEdge { .. })));
        let bad = SimplicialGraph::from_json(r#"{"vertices":["a"],"edges":[["a"]}"#);
        assert!(matches!(bad, Err(Error::Malformed { ref location, .. }) if location.starts_with("line 1")));
        let bad_line = SimplicialGraph::from_edge_list("a b c\n");
        assert!(matches!(bad_line, Err(Error::Malformed { ref location, .. }) if location == "line 1"));
        assert!(matches!(
            SimplicialGraph::from_json(r#"{"vertices":[],"edges":[]}"#),
            Err(Error::EmptyGraph)
        ));
        assert!(matches!(
            SimplicialGraph::from_json(r#"{"vertices":["a:b"],"edges":[]}"#),
            Err(Error::InvalidVertexName { .. })
        ));
    }

    #[test]
    fn link_star_and_center() {
        let g = example();
        let c = g.vertex("c").unwrap();
        assert_eq!(g.link(c), set(&g, &["b", "d", "e"]));
        assert_eq!(g.star(c), set(&g, &["b", "c", "d", "e"]));

        let k3 = SimplicialGraph::from_edges(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")])
            .unwrap();
        let p = k3.vertex("p").unwrap();
        assert_eq!(k3.star(p), k3.all_vertices());
        assert!(k3.center().contains(p));
        assert!(matches!(g.vertex("zz"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn dist2_values() {
        let g = example();
        let (a, b) = (g.vertex("a").unwrap(), g.vertex("b").unwrap());
        assert_eq!(g.dist2(a, b), 1);
        assert_eq!(g.dist2(a, a), 0);
        let xy = SimplicialGraph::from_edges::<&str>(&["x", "y"], &[]).unwrap();
        assert_eq!(xy.dist2(Vertex(0), Vertex(1)), 2);
    }

    #[test]
    fn components_without_star_examples() {
        let g = example();
        let comps = |n: &str| g.components_without_star(g.vertex(n).unwrap());
        assert_eq!(comps("a"), vec![set(&g, &["c", "d", "e"])]);
        assert_eq!(comps("b"), vec![set(&g, &["d"]), set(&g, &["e"])]);
        let k3 = SimplicialGraph::from_edges(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")])
            .unwrap();
        assert!(k3.components_without_star(Vertex(0)).is_empty());
    }

    #[test]
    fn connected_dominating() {
        let p3 = SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(p3.spans_connected_dominating(&set(&p3, &["b"])), (true, true));
        assert_eq!(p3.spans_connected_dominating(&set(&p3, &["a", "c"])), (false, true));
        assert_eq!(p3.spans_connected_dominating(&p3.all_vertices()), (true, true));
        assert_eq!(p3.spans_connected_dominating(&VertexSet::empty()), (false, false));
    }

    #[test]
    fn cone_examples() {
        let xy = SimplicialGraph::from_edges::<&str>(&["x", "y"], &[]).unwrap();
        let c = xy.cone();
        assert_eq!(c.vertex_count(), 3);
        assert_eq!(c.edge_count(), 2);
        assert!(!c.is_edge(c.vertex("x").unwrap(), c.vertex("y").unwrap()));

        let k3 = SimplicialGraph::from_edges(&["p", "q", "r"], &[("p", "q"), ("q", "r"), ("p", "r")])
            .unwrap();
        let k4 = k3.cone();
        assert_eq!((k4.vertex_count(), k4.edge_count()), (4, 6));

        let clash = SimplicialGraph::from_edges::<&str>(&["apex"], &[]).unwrap();
        assert_eq!(clash.cone().names(), &["apex", "apex_1"]);
    }

    #[test]
    fn sil_examples() {
        let g = example();
        let sils = g.find_sils();
        let want = SilWitness {
            a: g.vertex("b").unwrap(),
            b: g.vertex("d").unwrap(),
            component: set(&g, &["e"]),
        };
        assert_eq!(sils[0], want);

        let p3 = SimplicialGraph::from_edges(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p3.find_sils().is_empty());

        let xyz = SimplicialGraph::from_edges::<&str>(&["x", "y", "z"], &[]).unwrap();
        assert!(xyz.find_sils().contains(&SilWitness {
            a: Vertex(0),
            b: Vertex(1),
            component: set(&xyz, &["z"]),
        }));
    }
}
