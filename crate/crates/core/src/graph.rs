//! Simple connected undirected graphs over named vertices.
//!
//! Vertex names are opaque tokens. Internally each vertex is addressed by a
//! [`VertexId`], the rank of its name in ascending lexicographic order, so
//! iterating ids visits vertices in name order and every neighbor list is
//! sorted by name as well.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

/// Dense vertex index; equal to the rank of the vertex name.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    adjacency: Vec<Vec<VertexId>>,
    /// Sorted `(u, v)` pairs with `u < v`; the position is the edge index.
    edges: Vec<(VertexId, VertexId)>,
}

impl Graph {
    /// Builds a graph from named edges, rejecting loops, duplicate edges,
    /// disconnected and empty input.
    pub fn from_edges<I, S>(edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut named: Vec<(String, String)> = Vec::new();
        let mut seen: HashSet<(String, String)> = HashSet::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref().to_owned(), b.as_ref().to_owned());
            if a == b {
                return Err(Error::SelfLoop(a));
            }
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if !seen.insert(key) {
                return Err(Error::DuplicateEdge(a, b));
            }
            named.push((a, b));
        }
        if named.is_empty() {
            return Err(Error::EmptyGraph);
        }

        let names: Vec<String> = named
            .iter()
            .flat_map(|(a, b)| [a.clone(), b.clone()])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let index: HashMap<String, VertexId> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();

        let mut adjacency = vec![Vec::new(); names.len()];
        let mut edge_list = Vec::with_capacity(named.len());
        for (a, b) in &named {
            let (u, v) = (index[a], index[b]);
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_list.push((u.min(v), u.max(v)));
        }
        adjacency.iter_mut().for_each(|nbrs| nbrs.sort_unstable());
        edge_list.sort_unstable();

        let graph = Graph {
            names,
            index,
            adjacency,
            edges: edge_list,
        };
        if !graph.is_connected() {
            return Err(Error::NotConnected);
        }
        Ok(graph)
    }

    /// Parses the line-oriented edge list format: one `u v` pair per line,
    /// blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut edges = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(Error::MalformedLine {
                    line: lineno + 1,
                    found: trimmed.to_owned(),
                });
            }
            edges.push((tokens[0], tokens[1]));
        }
        Graph::from_edges(edges)
    }

    /// Serializes to the edge list format, one edge per line in edge order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for &(u, v) in &self.edges {
            out.push_str(&self.names[u]);
            out.push(' ');
            out.push_str(&self.names[v]);
            out.push('\n');
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.names.len()
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn require_id(&self, name: &str) -> Result<VertexId> {
        self.id(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_owned()))
    }

    /// Neighbors of `v` in ascending order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.binary_search(&key).ok()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adjacency
            .get(u)
            .is_some_and(|nbrs| nbrs.binary_search(&v).is_ok())
    }

    /// Position of `w` in the sorted neighbor list of `v`.
    pub fn neighbor_slot(&self, v: VertexId, w: VertexId) -> Option<usize> {
        self.adjacency[v].binary_search(&w).ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.names.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.names.len()];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count == self.names.len()
    }

    /// Connected with every degree even.
    pub fn is_eulerian(&self) -> bool {
        self.is_connected() && self.adjacency.iter().all(|n| n.len() % 2 == 0)
    }

    /// First vertex of odd degree, if any.
    pub fn odd_vertex(&self) -> Option<VertexId> {
        self.vertices().find(|&v| self.degree(v) % 2 == 1)
    }

    /// Graph on a subset of this graph's edges (given by edge index). The
    /// subset has to form a connected graph.
    pub fn edge_subgraph(&self, edge_indices: &[usize]) -> Result<Graph> {
        Graph::from_edges(edge_indices.iter().map(|&e| {
            let (u, v) = self.edges[e];
            (self.names[u].as_str(), self.names[v].as_str())
        }))
    }

    /// Standard block-cutvertex decomposition via iterative low-point DFS.
    pub fn blocks_and_cutvertices(&self) -> BlockDecomposition {
        let n = self.vertex_count();
        let mut disc = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut timer = 0usize;
        let mut edge_stack: Vec<usize> = Vec::new();
        let mut raw_blocks: Vec<Vec<usize>> = Vec::new();

        for root in self.vertices() {
            if disc[root] != usize::MAX {
                continue;
            }
            disc[root] = timer;
            low[root] = timer;
            timer += 1;
            // (vertex, edge used to reach it, next neighbor slot)
            let mut stack: Vec<(VertexId, Option<usize>, usize)> = vec![(root, None, 0)];
            while let Some(frame) = stack.last_mut() {
                let (v, parent_edge) = (frame.0, frame.1);
                if frame.2 < self.adjacency[v].len() {
                    let w = self.adjacency[v][frame.2];
                    frame.2 += 1;
                    let e = self
                        .edge_index(v, w)
                        .expect("adjacent vertices share an edge");
                    if Some(e) == parent_edge {
                        continue;
                    }
                    if disc[w] == usize::MAX {
                        edge_stack.push(e);
                        disc[w] = timer;
                        low[w] = timer;
                        timer += 1;
                        stack.push((w, Some(e), 0));
                    } else if disc[w] < disc[v] {
                        edge_stack.push(e);
                        low[v] = low[v].min(disc[w]);
                    }
                } else {
                    stack.pop();
                    if let (Some(&(u, _, _)), Some(pe)) = (stack.last(), parent_edge) {
                        low[u] = low[u].min(low[v]);
                        if low[v] >= disc[u] {
                            let mut block = Vec::new();
                            while let Some(e) = edge_stack.pop() {
                                block.push(e);
                                if e == pe {
                                    break;
                                }
                            }
                            raw_blocks.push(block);
                        }
                    }
                }
            }
        }

        let mut blocks: Vec<Block> = raw_blocks
            .into_iter()
            .map(|mut edges| {
                edges.sort_unstable();
                let vertices: BTreeSet<VertexId> = edges
                    .iter()
                    .flat_map(|&e| [self.edges[e].0, self.edges[e].1])
                    .collect();
                Block {
                    is_bridge: edges.len() == 1,
                    vertices: vertices.into_iter().collect(),
                    edges,
                }
            })
            .collect();
        blocks.sort_by(|a, b| a.vertices.cmp(&b.vertices));

        let mut membership = vec![0usize; n];
        for block in &blocks {
            for &v in &block.vertices {
                membership[v] += 1;
            }
        }
        let cutvertices = self.vertices().filter(|&v| membership[v] >= 2).collect();
        BlockDecomposition {
            blocks,
            cutvertices,
        }
    }

    /// Contracts each subtree of `spec` into its target vertex.
    pub fn contract_subtrees(&self, spec: &ContractionSpec) -> Result<Graph> {
        let n = self.vertex_count();
        // owner[v] = index of the subtree containing v
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (i, subtree) in spec.subtrees.iter().enumerate() {
            for name in &subtree.members {
                let v = self.require_id(name)?;
                if owner[v].is_some() {
                    return Err(Error::OverlappingSubtrees(name.clone()));
                }
                owner[v] = Some(i);
            }
        }

        for (i, subtree) in spec.subtrees.iter().enumerate() {
            let members: Vec<VertexId> = subtree
                .members
                .iter()
                .map(|m| self.index[m.as_str()])
                .collect();
            if members.is_empty() {
                return Err(Error::NotATree { index: i });
            }
            let inside = |v: VertexId| owner[v] == Some(i);
            let internal_edges = self
                .edges
                .iter()
                .filter(|&&(u, v)| inside(u) && inside(v))
                .count();
            let mut seen = HashSet::from([members[0]]);
            let mut queue = VecDeque::from([members[0]]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adjacency[v] {
                    if inside(w) && seen.insert(w) {
                        queue.push_back(w);
                    }
                }
            }
            if seen.len() != members.len() || internal_edges + 1 != members.len() {
                return Err(Error::NotATree { index: i });
            }
            for v in self.vertices().filter(|&v| !inside(v)) {
                if self.adjacency[v].iter().filter(|&&w| inside(w)).count() > 1 {
                    return Err(Error::MultiNeighbor {
                        vertex: self.names[v].clone(),
                        index: i,
                    });
                }
            }
        }

        let mut taken: HashSet<&str> = self
            .vertices()
            .filter(|&v| owner[v].is_none())
            .map(|v| self.names[v].as_str())
            .collect();
        for subtree in &spec.subtrees {
            if !taken.insert(subtree.target.as_str()) {
                return Err(Error::NameCollision(subtree.target.clone()));
            }
        }

        let label = |v: VertexId| match owner[v] {
            Some(i) => spec.subtrees[i].target.as_str(),
            None => self.names[v].as_str(),
        };
        let mut seen_pairs = HashSet::new();
        let mut edges = Vec::new();
        for &(u, v) in &self.edges {
            if owner[u].is_some() && owner[u] == owner[v] {
                continue;
            }
            let (a, b) = (label(u), label(v));
            let key = if a < b { (a, b) } else { (b, a) };
            if !seen_pairs.insert(key) {
                // Two different subtrees joined by more than one edge.
                let (vertex, index) = match (owner[u], owner[v]) {
                    (Some(i), Some(j)) => (spec.subtrees[j].target.clone(), i),
                    _ => (a.to_owned(), 0),
                };
                return Err(Error::MultiNeighbor { vertex, index });
            }
            edges.push((a, b));
        }
        Graph::from_edges(edges)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
    /// Sorted edge indices into the host graph.
    pub edges: Vec<usize>,
    pub is_bridge: bool,
}

/// Blocks ordered by their smallest vertex, plus the cutvertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    pub blocks: Vec<Block>,
    pub cutvertices: Vec<VertexId>,
}

/// A set of vertices to collapse into a single vertex named `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    pub members: BTreeSet<String>,
    pub target: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ContractionSpec {
    pub subtrees: Vec<Subtree>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Graph {
        Graph::parse("a b\nb c\na c").unwrap()
    }

    fn names(g: &Graph, ids: &[VertexId]) -> Vec<String> {
        ids.iter().map(|&v| g.name(v).to_owned()).collect()
    }

    #[test]
    fn parses_triangle() {
        let g = triangle();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.names(), ["a", "b", "c"]);
        assert!(g.vertices().all(|v| g.degree(v) == 2));
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let g = Graph::parse("# header\n\na b\n  # indented comment\nb c\n c a \n").unwrap();
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Graph::parse("a a"), Err(Error::SelfLoop("a".into())));
        assert_eq!(
            Graph::parse("a b\na b"),
            Err(Error::DuplicateEdge("a".into(), "b".into()))
        );
        assert_eq!(
            Graph::parse("a b\nb a"),
            Err(Error::DuplicateEdge("b".into(), "a".into()))
        );
        assert_eq!(Graph::parse("a b\nc d"), Err(Error::NotConnected));
        assert_eq!(Graph::parse("# nothing\n"), Err(Error::EmptyGraph));
        assert!(matches!(
            Graph::parse("a b c"),
            Err(Error::MalformedLine { line: 1, .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let g = Graph::parse("x y\ny z\nz w\nw x\nx z").unwrap();
        assert_eq!(Graph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn eulerian_predicate() {
        assert!(triangle().is_eulerian());
        let k4 = Graph::parse("a b\na c\na d\nb c\nb d\nc d").unwrap();
        assert!(!k4.is_eulerian());
        assert_eq!(k4.odd_vertex(), Some(0));
    }

    #[test]
    fn triangle_is_one_block() {
        let g = triangle();
        let bd = g.blocks_and_cutvertices();
        assert_eq!(bd.blocks.len(), 1);
        assert!(bd.cutvertices.is_empty());
        assert!(!bd.blocks[0].is_bridge);
    }

    #[test]
    fn bowtie_and_path_blocks() {
        // Two triangles sharing c, plus a pendant bridge c-x.
        let g = Graph::parse("a b\nb c\na c\nc d\nd e\nc e\nc x").unwrap();
        let bd = g.blocks_and_cutvertices();
        assert_eq!(names(&g, &bd.cutvertices), ["c"]);
        let sets: Vec<Vec<String>> = bd.blocks.iter().map(|b| names(&g, &b.vertices)).collect();
        assert_eq!(
            sets,
            [vec!["a", "b", "c"], vec!["c", "d", "e"], vec!["c", "x"]]
        );
        assert_eq!(
            bd.blocks.iter().map(|b| b.is_bridge).collect::<Vec<_>>(),
            [false, false, true]
        );

        let path = Graph::parse("a b\nb c\nc d").unwrap();
        let bd = path.blocks_and_cutvertices();
        assert_eq!(bd.blocks.len(), 3);
        assert_eq!(names(&path, &bd.cutvertices), ["b", "c"]);
    }

    #[test]
    fn empty_contraction_is_identity() {
        let g = triangle();
        assert_eq!(g.contract_subtrees(&ContractionSpec::default()).unwrap(), g);
    }

    #[test]
    fn contraction_errors() {
        // 4-cycle a-b-c-d plus chords to hub h.
        let g = Graph::parse("a b\nb c\nc d\nd a\nh a\nh c").unwrap();
        let spec = |sets: &[&[&str]]| ContractionSpec {
            subtrees: sets
                .iter()
                .enumerate()
                .map(|(i, s)| Subtree {
                    members: s.iter().map(|x| x.to_string()).collect(),
                    target: format!("t{i}"),
                })
                .collect(),
        };
        assert_eq!(
            g.contract_subtrees(&spec(&[&["a", "b", "c", "d"]])),
            Err(Error::NotATree { index: 0 })
        );
        assert_eq!(
            g.contract_subtrees(&spec(&[&["a", "c"]])),
            Err(Error::NotATree { index: 0 })
        );
        // the path a-b-c is a tree, but d sees both a and c
        assert!(matches!(
            g.contract_subtrees(&spec(&[&["a", "b", "c"]])),
            Err(Error::MultiNeighbor { index: 0, .. })
        ));
        assert_eq!(
            g.contract_subtrees(&spec(&[&["a", "b"], &["b", "c"]])),
            Err(Error::OverlappingSubtrees("b".into()))
        );
        let mut collide = spec(&[&["a", "b"]]);
        collide.subtrees[0].target = "h".into();
        assert_eq!(
            g.contract_subtrees(&collide),
            Err(Error::NameCollision("h".into()))
        );
    }

    #[test]
    fn contraction_degree_matches_outside_neighbors() {
        // Star with centre split into a 2-path p-q: p has x1 x2, q has x3 x4.
        let g = Graph::parse("p q\np x1\np x2\nq x3\nq x4\nx1 x2\nx3 x4\nx2 x3").unwrap();
        let spec = ContractionSpec {
            subtrees: vec![Subtree {
                members: ["p", "q"].iter().map(|s| s.to_string()).collect(),
                target: "v".into(),
            }],
        };
        let h = g.contract_subtrees(&spec).unwrap();
        let v = h.id("v").unwrap();
        assert_eq!(names(&h, h.neighbors(v)), ["x1", "x2", "x3", "x4"]);
        assert_eq!(h.edge_count(), g.edge_count() - 1);
    }
}
