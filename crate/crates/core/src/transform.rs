//! Path expansion of high-degree vertices and projection of traces back
//! through it.
//!
//! A vertex `v` of even degree `2k + 2 > 4` is replaced by a path
//! `v.1 ... v.k`. Its neighbors, in ascending order, are handed out three
//! to `v.1`, two to each inner path vertex and three to `v.k`, so every path
//! vertex ends up with degree four. Each outside vertex sees exactly one
//! vertex of each path, which is what makes contraction and trace projection
//! well behaved.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{ContractionSpec, Graph, Subtree, VertexId};
use crate::trace::DoubleTrace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathExpansion {
    /// `v.1 ... v.k`.
    pub path: Vec<String>,
    /// `(original neighbor, path vertex)` in ascending neighbor order.
    pub assignment: Vec<(String, String)>,
}

/// Which path replaced each expanded vertex, keyed by original name.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExpansionMap {
    pub entries: BTreeMap<String, PathExpansion>,
}

impl ExpansionMap {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Original vertex for every path vertex.
    pub fn owners(&self) -> HashMap<&str, &str> {
        self.entries
            .iter()
            .flat_map(|(v, exp)| exp.path.iter().map(move |p| (p.as_str(), v.as_str())))
            .collect()
    }

    /// Contraction that undoes the expansion.
    pub fn inverse_spec(&self) -> ContractionSpec {
        ContractionSpec {
            subtrees: self
                .entries
                .iter()
                .map(|(v, exp)| Subtree {
                    members: exp.path.iter().cloned().collect(),
                    target: v.clone(),
                })
                .collect(),
        }
    }

    /// One line per expanded vertex:
    /// `v : v.1 v.2 ; a=v.1 b=v.1 c=v.1 d=v.2 e=v.2 f=v.2`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, exp) in &self.entries {
            let pairs: Vec<String> = exp
                .assignment
                .iter()
                .map(|(n, p)| format!("{n}={p}"))
                .collect();
            out.push_str(&format!(
                "{v} : {} ; {}\n",
                exp.path.join(" "),
                pairs.join(" ")
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<ExpansionMap> {
        let mut entries = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let syntax = |reason: &str| Error::MapSyntax {
                line: lineno + 1,
                reason: reason.to_owned(),
            };
            let (head, rest) = line.split_once(':').ok_or_else(|| syntax("missing ':'"))?;
            let (path, pairs) = rest.split_once(';').ok_or_else(|| syntax("missing ';'"))?;
            let vertex = head.trim();
            if vertex.is_empty() || vertex.contains(char::is_whitespace) {
                return Err(syntax("bad vertex name"));
            }
            let path: Vec<String> = path.split_whitespace().map(str::to_owned).collect();
            if path.is_empty() {
                return Err(syntax("empty path"));
            }
            let assignment = pairs
                .split_whitespace()
                .map(|pair| {
                    pair.split_once('=')
                        .map(|(n, p)| (n.to_owned(), p.to_owned()))
                        .ok_or_else(|| syntax("expected neighbor=path_vertex"))
                })
                .collect::<Result<Vec<_>>>()?;
            if entries
                .insert(vertex.to_owned(), PathExpansion { path, assignment })
                .is_some()
            {
                return Err(syntax("vertex listed twice"));
            }
        }
        Ok(ExpansionMap { entries })
    }
}

/// Expands every vertex of degree above four. Requires a connected Eulerian
/// graph with minimum degree at least four; the result is 4-regular.
pub fn expand_to_4_regular(g: &Graph) -> Result<(Graph, ExpansionMap)> {
    if let Some(v) = g.odd_vertex() {
        return Err(Error::OddDegree {
            vertex: g.name(v).to_owned(),
            degree: g.degree(v),
        });
    }
    if g.min_degree() < 4 {
        return Err(Error::MinDegreeTooLow {
            min_degree: g.min_degree(),
            required: 4,
        });
    }
    expand_high_degree(g)
}

/// Expands every vertex of degree above four without the minimum-degree
/// requirement; degree-2 vertices pass through unchanged.
pub(crate) fn expand_high_degree(g: &Graph) -> Result<(Graph, ExpansionMap)> {
    if let Some(v) = g.odd_vertex() {
        return Err(Error::OddDegree {
            vertex: g.name(v).to_owned(),
            degree: g.degree(v),
        });
    }
    let taken: HashSet<&str> = g.names().iter().map(String::as_str).collect();
    let mut map = ExpansionMap::default();
    // slot[v][i] = vertex that takes over the edge to the i-th neighbor
    let mut slot: HashMap<VertexId, Vec<String>> = HashMap::new();

    for v in g.vertices().filter(|&v| g.degree(v) > 4) {
        let name = g.name(v);
        let len = (g.degree(v) - 2) / 2;
        let path: Vec<String> = (1..=len).map(|j| format!("{name}.{j}")).collect();
        if let Some(p) = path.iter().find(|p| taken.contains(p.as_str())) {
            return Err(Error::NameCollision(p.clone()));
        }
        let owners: Vec<String> = (0..g.degree(v))
            .map(|i| {
                let j = if i < 3 {
                    0
                } else if i >= g.degree(v) - 3 {
                    len - 1
                } else {
                    1 + (i - 3) / 2
                };
                path[j].clone()
            })
            .collect();
        let assignment = g
            .neighbors(v)
            .iter()
            .zip(&owners)
            .map(|(&w, p)| (g.name(w).to_owned(), p.clone()))
            .collect();
        slot.insert(v, owners);
        map.entries
            .insert(name.to_owned(), PathExpansion { path, assignment });
    }

    let endpoint = |v: VertexId, towards: VertexId| -> String {
        match slot.get(&v) {
            Some(owners) => owners[g.neighbor_slot(v, towards).expect("edge")].clone(),
            None => g.name(v).to_owned(),
        }
    };
    let mut edges: Vec<(String, String)> = g
        .edges()
        .iter()
        .map(|&(u, v)| (endpoint(u, v), endpoint(v, u)))
        .collect();
    for exp in map.entries.values() {
        for pair in exp.path.windows(2) {
            edges.push((pair[0].clone(), pair[1].clone()));
        }
    }
    Ok((Graph::from_edges(edges)?, map))
}

/// Maps a double trace of the expanded graph back onto `original`.
///
/// Every path vertex is renamed to the vertex it replaced and the arcs inside
/// a path vanish; all other arcs keep their order and direction.
pub fn project_trace(
    w: &DoubleTrace,
    map: &ExpansionMap,
    original: &Arc<Graph>,
) -> Result<DoubleTrace> {
    let expanded = w.host();
    let owners = map.owners();
    for (v, exp) in &map.entries {
        if original.id(v).is_none() {
            return Err(Error::MapMismatch(format!(
                "{v} is not in the original graph"
            )));
        }
        if let Some(p) = exp.path.iter().find(|p| expanded.id(p).is_none()) {
            return Err(Error::MapMismatch(format!(
                "{p} is not in the expanded graph"
            )));
        }
    }
    let lookup: Vec<VertexId> = expanded
        .names()
        .iter()
        .map(|name| {
            let target = owners.get(name.as_str()).copied().unwrap_or(name);
            original
                .id(target)
                .ok_or_else(|| Error::MapMismatch(format!("{name} has no original vertex")))
        })
        .collect::<Result<_>>()?;

    let mut steps: Vec<VertexId> = Vec::with_capacity(w.len());
    for &s in w.steps() {
        let v = lookup[s];
        if steps.last() != Some(&v) {
            steps.push(v);
        }
    }
    while steps.len() > 1 && steps.first() == steps.last() {
        steps.pop();
    }
    DoubleTrace::from_ids(Arc::clone(original), steps)
        .map_err(|e| Error::MapMismatch(format!("projected walk is not a double trace: {e}")))
}
