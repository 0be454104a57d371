use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::IncidenceGeometry;
use crate::error::{Error, Result};

/// A natural number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(usize),
    Infinite,
}

impl Length {
    pub fn finite(self) -> Option<usize> {
        match self {
            Length::Finite(n) => Some(n),
            Length::Infinite => None,
        }
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Length {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Length::Finite(n) => s.serialize_u64(*n as u64),
            Length::Infinite => s.serialize_str("inf"),
        }
    }
}

/// Bipartite incidence graph. Vertices `0..num_points` are points, the
/// remaining vertices are lines (`num_points + l` for line `l`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    num_points: usize,
    adj: Vec<Vec<usize>>,
}

const UNSEEN: usize = usize::MAX;

impl IncidenceGraph {
    pub fn of(geom: &IncidenceGeometry) -> Self {
        Self::from_line_points(geom.num_points(), geom.line_point_lists())
    }

    pub fn from_line_points(num_points: usize, line_points: &[Vec<usize>]) -> Self {
        let mut adj = vec![Vec::new(); num_points + line_points.len()];
        for (l, pts) in line_points.iter().enumerate() {
            let v = num_points + l;
            for &p in pts {
                adj[p].push(v);
                adj[v].push(p);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Self { num_points, adj }
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_points(&self) -> usize {
        self.num_points
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Breadth-first distances from `root`; unreachable vertices get `None`.
    pub fn distances_from(&self, root: usize) -> Vec<Option<usize>> {
        self.bfs(root)
            .0
            .into_iter()
            .map(|d| (d != UNSEEN).then_some(d))
            .collect()
    }

    fn bfs(&self, root: usize) -> (Vec<usize>, Option<usize>) {
        let n = self.adj.len();
        let mut dist = vec![UNSEEN; n];
        let mut parent = vec![UNSEEN; n];
        let mut shortest_cycle: Option<usize> = None;
        let mut queue = VecDeque::new();
        dist[root] = 0;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == UNSEEN {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    shortest_cycle = Some(shortest_cycle.map_or(len, |c| c.min(len)));
                }
            }
        }
        (dist, shortest_cycle)
    }

    /// Girth and diameter by a breadth-first traversal from every vertex.
    pub fn girth_and_diameter(&self) -> Result<(Length, Length)> {
        if self.adj.is_empty() {
            return Err(Error::EmptyStructure);
        }
        let mut girth: Option<usize> = None;
        let mut diameter = Some(0usize);
        for root in 0..self.adj.len() {
            let (dist, cycle) = self.bfs(root);
            if let Some(c) = cycle {
                girth = Some(girth.map_or(c, |g| g.min(c)));
            }
            if dist.contains(&UNSEEN) {
                diameter = None;
            } else if let Some(d) = diameter.as_mut() {
                *d = (*d).max(dist.iter().copied().max().unwrap_or(0));
            }
        }
        Ok((
            girth.map_or(Length::Infinite, Length::Finite),
            diameter.map_or(Length::Infinite, Length::Finite),
        ))
    }
}

/// Girth and diameter of the incidence graph of `geom`.
pub fn girth_and_diameter(geom: &IncidenceGeometry) -> Result<(Length, Length)> {
    IncidenceGraph::of(geom).girth_and_diameter()
}

/// Simple undirected graph with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// `Some(k)` when every vertex has degree `k`.
    pub fn regular_degree(&self) -> Option<usize> {
        let first = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|a| a.len() == first).then_some(first)
    }
}

/// Points as vertices, distinct collinear pairs as edges.
pub fn collinearity_graph(geom: &IncidenceGeometry) -> SimpleGraph {
    let mut adj = vec![Vec::new(); geom.num_points()];
    for pts in geom.line_point_lists() {
        for &p in pts {
            for &q in pts {
                if p != q {
                    adj[p].push(q);
                }
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    SimpleGraph { adj }
}
