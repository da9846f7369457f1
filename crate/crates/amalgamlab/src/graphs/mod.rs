//! Concrete graphs with a group acting on the vertices.
//!
//! Graphs come from coset pairs, from the complete bipartite examples, or from
//! the Cayley construction; [`verify`] measures local arc-transitivity and checks
//! the kernel chains and composition-factor containments on them.

mod construct;
pub mod verify;

pub use construct::*;
pub use verify::*;

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::Group;

/// A simple undirected graph together with a group of automorphisms.
#[derive(Clone, Debug)]
pub struct SymGraph {
    adjacency: Vec<Vec<u32>>,
    parts: Option<[Vec<u32>; 2]>,
    group: Group,
    provenance: String,
    degenerate: bool,
}

impl SymGraph {
    /// Checks simplicity, symmetry, that every generator preserves edges and,
    /// for bipartite input, that every generator fixes or swaps the parts.
    pub fn new(
        adjacency: Vec<Vec<u32>>,
        parts: Option<[Vec<u32>; 2]>,
        group: Group,
        provenance: impl Into<String>,
    ) -> Result<SymGraph> {
        let n = adjacency.len();
        if group.degree() != n {
            return Err(Error::DegreeMismatch { expected: n, found: group.degree() });
        }
        for (v, nbrs) in adjacency.iter().enumerate() {
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::Input(format!("neighbours of {v} are not sorted and distinct")));
            }
            for &w in nbrs {
                if w as usize >= n || w as usize == v {
                    return Err(Error::Input(format!("bad neighbour {w} of {v}")));
                }
                if adjacency[w as usize].binary_search(&(v as u32)).is_err() {
                    return Err(Error::Input(format!("edge {v}-{w} is not symmetric")));
                }
            }
        }
        for g in group.generators() {
            for (v, nbrs) in adjacency.iter().enumerate() {
                let gv = g.apply(v as u32) as usize;
                if nbrs.iter().any(|&w| adjacency[gv].binary_search(&g.apply(w)).is_err()) {
                    return Err(Error::Verification(format!("generator {g} does not preserve edges")));
                }
            }
        }
        if let Some(p) = &parts {
            let mut side = vec![u8::MAX; n];
            for (i, part) in p.iter().enumerate() {
                for &v in part {
                    if v as usize >= n || side[v as usize] != u8::MAX {
                        return Err(Error::Input("bipartition overlaps or leaves the vertex set".into()));
                    }
                    side[v as usize] = i as u8;
                }
            }
            if side.contains(&u8::MAX) {
                return Err(Error::Input("bipartition misses a vertex".into()));
            }
            for (v, nbrs) in adjacency.iter().enumerate() {
                if nbrs.iter().any(|&w| side[w as usize] == side[v]) {
                    return Err(Error::Input(format!("edge inside a part at vertex {v}")));
                }
            }
            for g in group.generators() {
                let flip = side[g.apply(p[0].first().copied().unwrap_or(0)) as usize];
                if (0..n).any(|v| side[g.apply(v as u32) as usize] != side[v] ^ flip) {
                    return Err(Error::Verification(format!("generator {g} mixes the parts")));
                }
            }
        }
        Ok(SymGraph { adjacency, parts, group, provenance: provenance.into(), degenerate: false })
    }

    pub(crate) fn flag_degenerate(mut self, yes: bool) -> SymGraph {
        self.degenerate = yes;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn neighbours(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    pub fn valency(&self, v: u32) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn is_adjacent(&self, v: u32, w: u32) -> bool {
        self.adjacency.get(v as usize).is_some_and(|n| n.binary_search(&w).is_ok())
    }

    /// Edges as pairs `(v, w)` with `v < w`, in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (v, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&w| w as usize > v).map(|&w| (v as u32, w)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn parts(&self) -> Option<&[Vec<u32>; 2]> {
        self.parts.as_ref()
    }

    pub fn part_of(&self, v: u32) -> Option<usize> {
        self.parts.as_ref().and_then(|p| p.iter().position(|part| part.contains(&v)))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    /// Set for coset graphs with `A = G`, `B = G` or `A = B`.
    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in self.neighbours(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n
    }

    /// Whether every vertex of one part is adjacent to every vertex of the other.
    pub fn is_complete_bipartite(&self) -> bool {
        match &self.parts {
            Some([a, b]) => {
                a.iter().all(|&v| self.valency(v) == b.len()) && b.iter().all(|&v| self.valency(v) == a.len())
            }
            None => false,
        }
    }

    /// Orbits of the group on unordered edges, each sorted.
    pub fn edge_orbits(&self) -> Vec<Vec<(u32, u32)>> {
        let edges = self.edges();
        let index: HashMap<(u32, u32), usize> = edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut seen = vec![false; edges.len()];
        let mut orbits = Vec::new();
        for start in 0..edges.len() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut i = 0;
            while i < orbit.len() {
                let (v, w) = edges[orbit[i]];
                for g in self.group.generators() {
                    let (a, b) = (g.apply(v), g.apply(w));
                    let j = index[&(a.min(b), a.max(b))];
                    if !seen[j] {
                        seen[j] = true;
                        orbit.push(j);
                    }
                }
                i += 1;
            }
            let mut orbit: Vec<_> = orbit.into_iter().map(|j| edges[j]).collect();
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    pub fn is_edge_transitive(&self) -> bool {
        self.edge_orbits().len() == 1
    }

    /// Graphviz source; bipartite vertices are labelled by part and index.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.vertex_count() as u32 {
            let label = match (&self.parts, self.part_of(v)) {
                (Some(p), Some(i)) => {
                    let pos = p[i].iter().position(|&x| x == v).unwrap_or(0);
                    format!("{}{pos}", if i == 0 { 'U' } else { 'W' })
                }
                _ => v.to_string(),
            };
            let _ = writeln!(out, "  {v} [label=\"{label}\"];");
        }
        for (v, w) in self.edges() {
            let _ = writeln!(out, "  {v} -- {w};");
        }
        out.push_str("}\n");
        out
    }

    /// The graph in file form; `group` names the group file written alongside.
    pub fn to_file(&self, group: impl Into<String>) -> GraphFile {
        GraphFile {
            n: self.vertex_count(),
            edges: self.edges().into_iter().map(|(v, w)| [v, w]).collect(),
            bipartition: self.parts.clone(),
            group: group.into(),
            provenance: self.provenance.clone(),
        }
    }

    pub fn from_file(f: &GraphFile, group: Group) -> Result<SymGraph> {
        let mut adjacency = vec![Vec::new(); f.n];
        for &[v, w] in &f.edges {
            if v as usize >= f.n || w as usize >= f.n {
                return Err(Error::Input(format!("edge {v}-{w} leaves {} vertices", f.n)));
            }
            adjacency[v as usize].push(w);
            adjacency[w as usize].push(v);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        SymGraph::new(adjacency, f.bipartition.clone(), group, f.provenance.clone())
    }

    /// Reads a graph file and the group file it names, resolved against the
    /// graph file's directory.
    pub fn read_json(path: &Path) -> Result<SymGraph> {
        let f: GraphFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        let group_path = path.parent().unwrap_or(Path::new(".")).join(&f.group);
        let (group, _) = Group::read_json(&group_path)?;
        SymGraph::from_file(&f, group)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bipartition: Option<[Vec<u32>; 2]>,
    pub group: String,
    #[serde(default)]
    pub provenance: String,
}
