//! Small-graph machinery: construction of the graphs under study, exact
//! automorphism groups, and graph distinguishing numbers.

use std::collections::BTreeSet;
use std::time::Duration;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

pub const MAX_VERTICES: usize = 16;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Graph> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u == v {
                return Err(Error::Invalid(format!("loop at vertex {u}")));
            }
            if u >= n || v >= n {
                return Err(Error::Invalid(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(Graph { n, edges: set })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree_of(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.has_edge(u, v)).count()
    }

    pub fn complement(&self) -> Graph {
        let mut edges = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.edges.contains(&(u, v)) {
                    edges.insert((u, v));
                }
            }
        }
        Graph { n: self.n, edges }
    }

    /// Length of a shortest cycle; `None` for forests.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for root in 0..self.n {
            // BFS from root; a non-tree edge between vertices at depths
            // a and b closes a cycle of length a + b + 1.
            let mut dist = vec![usize::MAX; self.n];
            let mut parent = vec![usize::MAX; self.n];
            dist[root] = 0;
            let mut queue = std::collections::VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                for v in 0..self.n {
                    if !self.has_edge(u, v) {
                        continue;
                    }
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let cycle = dist[u] + dist[v] + 1;
                        if best.map_or(true, |b| cycle < b) {
                            best = Some(cycle);
                        }
                    }
                }
            }
        }
        best
    }

    /// The full automorphism group, by backtracking over vertex images
    /// with color-refinement pruning.
    pub fn automorphism_group(&self) -> Result<PermGroup> {
        if self.n > MAX_VERTICES {
            return Err(Error::DegreeTooLarge {
                degree: self.n,
                max: MAX_VERTICES,
            });
        }
        if self.n == 0 {
            return Ok(PermGroup::trivial(0));
        }
        let colors = self.refined_colors();
        let adj: Vec<u64> = (0..self.n)
            .map(|u| {
                (0..self.n)
                    .filter(|&v| self.has_edge(u, v))
                    .fold(0u64, |m, v| m | 1 << v)
            })
            .collect();
        let mut autos = Vec::new();
        let mut map = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.search_autos(&adj, &colors, &mut map, &mut used, 0, &mut autos);
        PermGroup::from_elements(self.n, autos)
    }

    fn refined_colors(&self) -> Vec<usize> {
        let mut colors: Vec<usize> = (0..self.n).map(|v| self.degree_of(v)).collect();
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..self.n)
                .map(|v| {
                    let mut neigh: Vec<usize> = (0..self.n)
                        .filter(|&u| self.has_edge(u, v))
                        .map(|u| colors[u])
                        .collect();
                    neigh.sort_unstable();
                    (colors[v], neigh)
                })
                .collect();
            let mut palette: Vec<&(usize, Vec<usize>)> = sigs.iter().collect();
            palette.sort();
            palette.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| palette.binary_search(&s).expect("own signature"))
                .collect();
            if next == colors {
                return colors;
            }
            colors = next;
        }
    }

    fn search_autos(
        &self,
        adj: &[u64],
        colors: &[usize],
        map: &mut [usize],
        used: &mut [bool],
        v: usize,
        out: &mut Vec<Permutation>,
    ) {
        if v == self.n {
            out.push(Permutation::from_images(map.to_vec()).expect("bijection"));
            return;
        }
        for w in 0..self.n {
            if used[w] || colors[w] != colors[v] {
                continue;
            }
            let consistent = (0..v).all(|u| (adj[v] >> u & 1) == (adj[w] >> map[u] & 1));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            self.search_autos(adj, colors, map, used, v + 1, out);
            used[w] = false;
        }
        map[v] = usize::MAX;
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("vertices {}\n", self.n);
        for (u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u + 1, v + 1));
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Graph> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| Error::Parse {
                line: lineno + 1,
                msg: msg.to_string(),
            };
            if n.is_none() {
                let rest = line
                    .strip_prefix("vertices")
                    .ok_or_else(|| parse_err("expected `vertices m`"))?;
                n = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| parse_err("bad vertex count"))?,
                );
                continue;
            }
            let mut it = line.split_whitespace();
            let u: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err("expected `u v`"))?;
            let v: usize = it
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| parse_err("expected `u v`"))?;
            if it.next().is_some() {
                return Err(parse_err("trailing tokens"));
            }
            if u == 0 || v == 0 {
                return Err(parse_err("vertices are 1-based"));
            }
            edges.push((u - 1, v - 1));
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `vertices m` header".into(),
        })?;
        Graph::new(n, edges)
    }
}

/// The Kneser-style graph on the ten 2-subsets of a 5-set, adjacent when
/// disjoint.
pub fn petersen() -> Graph {
    let subsets: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
        .collect();
    let mut edges = Vec::new();
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            let (a, b) = subsets[i];
            let (c, d) = subsets[j];
            if a != c && a != d && b != c && b != d {
                edges.push((i, j));
            }
        }
    }
    Graph::new(10, edges).expect("valid construction")
}

pub fn complete_graph(n: usize) -> Graph {
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, edges).expect("valid construction")
}

/// Adds one vertex per `joined` flag: universal to the old vertices when
/// true, isolated when false; no edges among the new vertices. Validated
/// post hoc: the extension must keep the automorphism group equal to the
/// original on the old vertices and trivial on the new ones.
pub fn extend_with_fixed_points(g: &Graph, joined: &[bool]) -> Result<Graph> {
    let old = g.vertex_count();
    let n = old + joined.len();
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for (i, &flag) in joined.iter().enumerate() {
        if flag {
            edges.extend((0..old).map(|v| (v, old + i)));
        }
    }
    let ext = Graph::new(n, edges)?;
    let aut_old = g.automorphism_group()?;
    let aut_new = ext.automorphism_group()?;
    let fixed_ok = aut_new
        .elements()
        .iter()
        .all(|e| (old..n).all(|v| e.apply(v) == v));
    if !fixed_ok || aut_new.order() != aut_old.order() {
        return Err(Error::Invalid(
            "extension changed the automorphism group".into(),
        ));
    }
    Ok(ext)
}

/// A graph with automorphism group `S_n` acting in parallel on `k` size-n
/// copies: copy 0 is a clique, each later copy is an anti-clique matched
/// vertex-to-vertex to the previous copy. Validated against the parallel
/// group.
pub fn clique_family(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k < 1 || n * k > MAX_VERTICES {
        return Err(Error::Invalid(format!(
            "need n >= 3, k >= 1 and nk <= {MAX_VERTICES}, got n={n}, k={k}"
        )));
    }
    let mut edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for c in 1..k {
        edges.extend((0..n).map(|i| ((c - 1) * n + i, c * n + i)));
    }
    let g = Graph::new(n * k, edges)?;
    let expected = crate::constructions::parallel_power(
        &crate::constructions::symmetric_natural(n)?,
        k,
    )?;
    if g.automorphism_group()?.elements() != expected.elements() {
        return Err(Error::Invalid(
            "clique family has unexpected automorphisms".into(),
        ));
    }
    Ok(g)
}

pub fn graph_distinguishing_number(
    g: &Graph,
    budget: Option<Duration>,
) -> Result<crate::distinguishing::DistinguishingResult> {
    crate::distinguishing::distinguishing_number(&g.automorphism_group()?, budget)
}

/// Exhaustively scans all 2^15 graphs on 6 vertices and reports whether
/// any has automorphism group exactly equal, as a set of permutations, to
/// `target`. Graphs not even invariant under the target's generators are
/// rejected by a cheap bitmask test before the full automorphism search.
pub fn six_vertex_graph_with_aut(target: &PermGroup) -> Result<Option<Graph>> {
    if target.degree() != 6 {
        return Err(Error::DegreeMismatch {
            expected: 6,
            got: target.degree(),
        });
    }
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
        .collect();
    let pair_index = |u: usize, v: usize| {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .expect("pair")
    };
    let gen_pair_perms: Vec<Vec<usize>> = target
        .generators()
        .iter()
        .map(|g| {
            pairs
                .iter()
                .map(|&(u, v)| pair_index(g.apply(u), g.apply(v)))
                .collect()
        })
        .collect();
    for mask in 0u32..(1 << 15) {
        let invariant = gen_pair_perms.iter().all(|perm| {
            let mut image = 0u32;
            for (i, &j) in perm.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    image |= 1 << j;
                }
            }
            image == mask
        });
        if !invariant {
            continue;
        }
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e);
        let g = Graph::new(6, edges)?;
        if g.automorphism_group()?.elements() == target.elements() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn petersen_parameters() {
        let p = petersen();
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|v| p.degree_of(v) == 3));
        assert_eq!(p.girth(), Some(5));
        let c = p.complement();
        assert_eq!(c.edge_count(), 30);
        assert!((0..10).all(|v| c.degree_of(v) == 6));
    }

    #[test]
    fn automorphism_groups() {
        assert_eq!(complete_graph(4).automorphism_group().unwrap().order(), 24);
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.automorphism_group().unwrap().order(), 2);
        let p = petersen();
        let aut = p.automorphism_group().unwrap();
        assert_eq!(aut.order(), 120);
        assert!(aut.is_transitive());
        // Complement invariance of the automorphism group.
        assert_eq!(
            p.complement().automorphism_group().unwrap().elements(),
            aut.elements()
        );
    }

    #[test]
    fn automorphisms_preserve_edges() {
        let p = petersen();
        let aut = p.automorphism_group().unwrap();
        for e in aut.elements() {
            for (u, v) in p.edges() {
                assert!(p.has_edge(e.apply(u), e.apply(v)));
            }
        }
    }

    #[test]
    fn fixed_point_extensions() {
        let p = petersen();
        let ext = extend_with_fixed_points(&p, &[false]).unwrap();
        assert_eq!(ext.automorphism_group().unwrap().order(), 120);
        let ext = extend_with_fixed_points(&p, &[true, false]).unwrap();
        assert_eq!(ext.automorphism_group().unwrap().order(), 120);
        // K_3 plus a universal vertex is K_4; the new vertex is absorbed.
        assert!(extend_with_fixed_points(&complete_graph(3), &[true]).is_err());
        // Two isolated additions are interchangeable.
        assert!(extend_with_fixed_points(&p, &[false, false]).is_err());
    }

    #[test]
    fn clique_families() {
        let g = clique_family(4, 1).unwrap();
        assert_eq!(g, complete_graph(4));
        let g = clique_family(5, 2).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(g.automorphism_group().unwrap().order(), 120);
        assert!(clique_family(2, 1).is_err());
    }

    #[test]
    fn graph_distinguishing_examples() {
        assert_eq!(graph_distinguishing_number(&petersen(), None).unwrap().d, 3);
        assert_eq!(
            graph_distinguishing_number(&petersen().complement(), None)
                .unwrap()
                .d,
            3
        );
        assert_eq!(
            graph_distinguishing_number(&complete_graph(5), None).unwrap().d,
            5
        );
        assert_eq!(
            graph_distinguishing_number(&clique_family(4, 2).unwrap(), None)
                .unwrap()
                .d,
            2
        );
    }

    #[test]
    fn text_round_trip() {
        let p = petersen();
        let parsed = Graph::parse_text(&p.to_text()).unwrap();
        assert_eq!(parsed, p);
        assert!(Graph::parse_text("vertices 3\n1 1\n").is_err());
        assert!(Graph::parse_text("1 2\n").is_err());
        let g = Graph::parse_text("# comment\nvertices 3\n1 2 # edge\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }
}
