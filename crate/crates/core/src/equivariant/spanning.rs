use serde::Serialize;

use super::gamma_set::GammaSet;
use crate::error::{Error, Result};

pub const DEFAULT_EDGE_ORBIT_BOUND: usize = 48;

/// A finite simple graph with an action of a finite group on its vertices
/// that carries edges to edges.
#[derive(Clone, Debug)]
pub struct GraphAction {
    vertices: GammaSet,
    edges: Vec<(usize, usize)>,
}

fn normalize((u, v): (usize, usize)) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl GraphAction {
    pub fn new(vertices: GammaSet, edges: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        let mut list: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &e in edges {
            let e = normalize(e);
            if e.1 >= n {
                return Err(Error::invalid(format!("edge {e:?} has a vertex out of range")));
            }
            if e.0 == e.1 {
                return Err(Error::invalid("loops are not allowed"));
            }
            if list.contains(&e) {
                return Err(Error::invalid(format!("edge {e:?} listed twice")));
            }
            list.push(e);
        }
        let graph = GraphAction { vertices, edges: list };
        for g in graph.vertices.group().elements() {
            for &e in &graph.edges {
                if graph.edge_index(graph.image(g, e)).is_none() {
                    return Err(Error::invalid("the action does not preserve edges"));
                }
            }
        }
        Ok(graph)
    }

    pub fn vertex_action(&self) -> &GammaSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn image(&self, g: usize, (u, v): (usize, usize)) -> (usize, usize) {
        normalize((self.vertices.act(g, u), self.vertices.act(g, v)))
    }

    fn edge_index(&self, e: (usize, usize)) -> Option<usize> {
        self.edges.iter().position(|&f| f == e)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        n == 0 || components(n, self.edges.iter().copied()) == 1
    }

    fn edge_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.edges.len()];
        let mut out = Vec::new();
        for i in 0..self.edges.len() {
            if seen[i] {
                continue;
            }
            let mut orbit: Vec<usize> = self
                .vertices
                .group()
                .elements()
                .map(|g| self.edge_index(self.image(g, self.edges[i])).unwrap())
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &j in &orbit {
                seen[j] = true;
            }
            out.push(orbit);
        }
        out
    }

    /// Connectivity of the subgraph fixed by the stabilizer of `x`: its fixed
    /// vertices and the edges with both endpoints fixed. Inverted edges are
    /// not part of it.
    fn fixed_subgraph_connected(&self, x: usize) -> bool {
        let stab = self.vertices.stabilizer(x);
        let fixed_vertices: Vec<usize> = (0..self.vertices.len())
            .filter(|&v| stab.elements().iter().all(|&g| self.vertices.act(g, v) == v))
            .collect();
        let mut index = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in fixed_vertices.iter().enumerate() {
            index[v] = i;
        }
        let fixed_edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| index[u] != usize::MAX && index[v] != usize::MAX)
            .map(|&(u, v)| (index[u], index[v]));
        components(fixed_vertices.len(), fixed_edges) == 1
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn components(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    let mut count = n;
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanningTreeReport {
    /// Edges of an invariant spanning tree, or `None` if there is none.
    pub tree: Option<Vec<(usize, usize)>>,
    /// Every vertex `x` has connected fixed subgraph `X^{Γ_x}`.
    pub stabilizer_fixed_sets_connected: bool,
    /// The connectivity condition holds but no invariant spanning tree exists.
    pub discrepancy: bool,
    pub edge_orbit_count: usize,
    pub search_nodes: usize,
}

/// Independent check that `tree` is invariant, spanning and acyclic.
pub fn verify_spanning_tree(graph: &GraphAction, tree: &[(usize, usize)]) -> bool {
    let n = graph.vertices.len();
    let edges: Vec<(usize, usize)> = tree.iter().map(|&e| normalize(e)).collect();
    let all_in_graph = edges.iter().all(|&e| graph.edge_index(e).is_some());
    let invariant = graph
        .vertices
        .group()
        .elements()
        .all(|g| edges.iter().all(|&e| edges.contains(&graph.image(g, e))));
    let spanning_acyclic = edges.len() + 1 == n && components(n, edges.iter().copied()) == 1;
    all_in_graph && invariant && (spanning_acyclic || (n == 0 && edges.is_empty()))
}

struct Search<'a> {
    graph: &'a GraphAction,
    orbits: Vec<Vec<usize>>,
    target: usize,
    nodes: usize,
}

impl Search<'_> {
    fn run(&mut self, next: usize, chosen: &mut Vec<usize>, size: usize) -> bool {
        self.nodes += 1;
        if size == self.target {
            return true;
        }
        if next == self.orbits.len() {
            return false;
        }
        let remaining: usize = self.orbits[next..].iter().map(Vec::len).sum();
        if size + remaining < self.target {
            return false;
        }
        let orbit_len = self.orbits[next].len();
        if size + orbit_len <= self.target {
            chosen.push(next);
            if self.acyclic(chosen) && self.run(next + 1, chosen, size + orbit_len) {
                return true;
            }
            chosen.pop();
        }
        self.run(next + 1, chosen, size)
    }

    fn acyclic(&self, chosen: &[usize]) -> bool {
        let edges: Vec<(usize, usize)> = chosen
            .iter()
            .flat_map(|&o| self.orbits[o].iter().map(|&i| self.graph.edges[i]))
            .collect();
        let n = self.graph.vertices.len();
        components(n, edges.iter().copied()) + edges.len() == n
    }
}

/// Exhaustive search over unions of edge orbits for an invariant spanning tree,
/// together with the per-vertex fixed-subgraph connectivity condition.
pub fn equivariant_spanning_tree(graph: &GraphAction) -> Result<SpanningTreeReport> {
    equivariant_spanning_tree_bounded(graph, DEFAULT_EDGE_ORBIT_BOUND)
}

pub fn equivariant_spanning_tree_bounded(graph: &GraphAction, orbit_bound: usize) -> Result<SpanningTreeReport> {
    if !graph.is_connected() {
        return Err(Error::precondition("the graph must be connected"));
    }
    let orbits = graph.edge_orbits();
    if orbits.len() > orbit_bound {
        return Err(Error::bound("edge orbits for spanning tree search", orbit_bound, orbits.len()));
    }
    let n = graph.vertices.len();
    let mut search = Search {
        graph,
        orbits,
        target: n.saturating_sub(1),
        nodes: 0,
    };
    let mut chosen = Vec::new();
    let found = search.run(0, &mut chosen, 0);
    let tree = found.then(|| {
        let mut t: Vec<(usize, usize)> = chosen
            .iter()
            .flat_map(|&o| search.orbits[o].iter().map(|&i| graph.edges[i]))
            .collect();
        t.sort_unstable();
        t
    });
    let condition = (0..n).all(|x| graph.fixed_subgraph_connected(x));
    Ok(SpanningTreeReport {
        discrepancy: condition && tree.is_none(),
        tree,
        stabilizer_fixed_sets_connected: condition,
        edge_orbit_count: search.orbits.len(),
        search_nodes: search.nodes,
    })
}

/// The 4-cycle `0-1-2-3-0` with `C2` acting by the antipodal map.
pub fn antipodal_square() -> GraphAction {
    let c2 = crate::finite_groups::cyclic(2);
    let labels = (0..4).map(|i| format!("v{i}")).collect();
    let set = GammaSet::new(&c2, labels, &[(1, vec![2, 3, 0, 1])]).expect("valid action");
    GraphAction::new(set, &[(0, 1), (1, 2), (2, 3), (3, 0)]).expect("antipodal map preserves the square")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_groups::cyclic;

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    #[test]
    fn tree_returns_itself() {
        let c1 = cyclic(1);
        let path = GraphAction::new(GammaSet::trivial(&c1, labels(4)), &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = equivariant_spanning_tree(&path).unwrap();
        assert_eq!(r.tree.as_deref(), Some(&[(0, 1), (1, 2), (2, 3)][..]));
        assert!(r.stabilizer_fixed_sets_connected && !r.discrepancy);
    }

    #[test]
    fn rotated_star() {
        let c3 = cyclic(3);
        let set = GammaSet::new(&c3, labels(4), &[(1, vec![0, 2, 3, 1])]).unwrap();
        let star = GraphAction::new(set, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = equivariant_spanning_tree(&star).unwrap();
        let tree = r.tree.unwrap();
        assert_eq!(tree.len(), 3);
        assert!(verify_spanning_tree(&star, &tree));
    }

    #[test]
    fn antipodal_square_has_no_invariant_tree() {
        let g = antipodal_square();
        let r = equivariant_spanning_tree(&g).unwrap();
        assert!(r.tree.is_none());
        assert!(r.stabilizer_fixed_sets_connected);
        assert!(r.discrepancy);
        assert_eq!(r.edge_orbit_count, 2);
    }

    #[test]
    fn rotated_square_with_diagonal_hub() {
        // C4 rotating a square around a fixed centre joined to every corner
        let c4 = cyclic(4);
        let set = GammaSet::new(&c4, labels(5), &[(1, vec![1, 2, 3, 0, 4])]).unwrap();
        let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4), (2, 4), (3, 4)];
        let g = GraphAction::new(set, &edges).unwrap();
        let r = equivariant_spanning_tree(&g).unwrap();
        assert!(verify_spanning_tree(&g, r.tree.as_ref().unwrap()));
    }

    #[test]
    fn verifier_rejects_non_invariant_trees() {
        let g = antipodal_square();
        assert!(!verify_spanning_tree(&g, &[(0, 1), (1, 2), (2, 3)]));
    }
}
