use std::cmp::Ordering;
use std::collections::{BinaryHeap, VecDeque};

use serde::Serialize;

use super::WeightedMultigraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
struct Entry {
    key: f64,
    vertex: usize,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    // Reversed so that BinaryHeap pops the smallest key, lowest vertex first.
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .key
            .total_cmp(&self.key)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

/// Min-priority queue over `(key, vertex)` with lazy deletion left to callers.
#[derive(Debug, Default)]
pub(crate) struct MinHeap {
    heap: BinaryHeap<Entry>,
}

impl MinHeap {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn push(&mut self, key: f64, vertex: usize) {
        self.heap.push(Entry { key, vertex });
    }

    pub(crate) fn pop(&mut self) -> Option<(f64, usize)> {
        self.heap.pop().map(|e| (e.key, e.vertex))
    }

    pub(crate) fn peek(&self) -> Option<(f64, usize)> {
        self.heap.peek().map(|e| (e.key, e.vertex))
    }

    pub(crate) fn clear(&mut self) {
        self.heap.clear();
    }
}

/// Absolute tolerance for tight-edge tests on a distance vector.
pub fn tolerance_for(dist: &[f64]) -> f64 {
    let scale = dist
        .iter()
        .copied()
        .filter(|d| d.is_finite())
        .fold(0.0f64, f64::max);
    1e-9 * scale.max(1.0)
}

/// Multi-source shortest-path distances restricted to `alive` vertices.
/// Unreached (or dead) vertices get `f64::INFINITY`. Uses breadth-first search
/// when every edge has the same length.
pub(crate) fn shortest_paths_masked(
    g: &WeightedMultigraph,
    sources: &[usize],
    alive: Option<&[bool]>,
) -> Vec<f64> {
    let n = g.vertex_count();
    let is_alive = |v: usize| alive.is_none_or(|a| a[v]);
    let mut dist = vec![f64::INFINITY; n];

    if let Some(len) = g.uniform_length() {
        let mut level = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if is_alive(s) && level[s] == usize::MAX {
                level[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for inc in g.neighbors(v) {
                let w = inc.neighbor;
                if level[w] == usize::MAX && is_alive(w) {
                    level[w] = level[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for v in 0..n {
            if level[v] != usize::MAX {
                dist[v] = level[v] as f64 * len;
            }
        }
        return dist;
    }

    let mut heap = MinHeap::new();
    for &s in sources {
        if is_alive(s) && dist[s] != 0.0 {
            dist[s] = 0.0;
            heap.push(0.0, s);
        }
    }
    while let Some((d, v)) = heap.pop() {
        if d > dist[v] {
            continue;
        }
        for inc in g.neighbors(v) {
            let w = inc.neighbor;
            if !is_alive(w) {
                continue;
            }
            let nd = d + g.length(inc.edge);
            if nd < dist[w] {
                dist[w] = nd;
                heap.push(nd, w);
            }
        }
    }
    dist
}

/// Single-source distances; unreachable vertices are infinite.
pub fn shortest_path_distances(g: &WeightedMultigraph, source: usize) -> Result<Vec<f64>> {
    g.check_vertex(source)?;
    Ok(shortest_paths_masked(g, &[source], None))
}

/// Distances to a source set together with the forward-arc orientation they induce.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceField {
    pub sources: Vec<usize>,
    pub dist: Vec<f64>,
    /// Per edge `(u, v)`: whether `u -> v` and `v -> u` are forward arcs.
    pub forward: Vec<[bool; 2]>,
    pub tol: f64,
}

impl DistanceField {
    pub(crate) fn from_distances(
        g: &WeightedMultigraph,
        sources: Vec<usize>,
        dist: Vec<f64>,
        alive: Option<&[bool]>,
    ) -> Self {
        let tol = tolerance_for(&dist);
        let is_alive = |v: usize| alive.is_none_or(|a| a[v]);
        let forward = g
            .edges()
            .iter()
            .map(|e| {
                if e.is_loop() || !is_alive(e.u) || !is_alive(e.v) {
                    return [false, false];
                }
                let (du, dv) = (dist[e.u], dist[e.v]);
                if !du.is_finite() || !dv.is_finite() {
                    return [false, false];
                }
                [
                    (du + e.length - dv).abs() <= tol,
                    (dv + e.length - du).abs() <= tol,
                ]
            })
            .collect();
        Self { sources, dist, forward, tol }
    }

    /// Whether traversing edge `e` starting at endpoint `from` follows a forward arc.
    pub fn is_forward(&self, g: &WeightedMultigraph, e: usize, from: usize) -> bool {
        let edge = g.edge(e);
        if edge.u == from {
            self.forward[e][0]
        } else {
            self.forward[e][1]
        }
    }

    /// All forward arcs as `(tail, head)` pairs, in edge order.
    pub fn forward_arcs(&self, g: &WeightedMultigraph) -> Vec<(usize, usize)> {
        let mut arcs = Vec::new();
        for (i, e) in g.edges().iter().enumerate() {
            if self.forward[i][0] {
                arcs.push((e.u, e.v));
            }
            if self.forward[i][1] {
                arcs.push((e.v, e.u));
            }
        }
        arcs
    }

    pub fn max_distance(&self) -> f64 {
        self.dist.iter().copied().fold(0.0, f64::max)
    }
}

pub fn multi_source_distances(g: &WeightedMultigraph, sources: &[usize]) -> Result<DistanceField> {
    if sources.is_empty() {
        return Err(Error::EmptySourceSet);
    }
    for &s in sources {
        g.check_vertex(s)?;
    }
    let mut list = sources.to_vec();
    list.sort_unstable();
    list.dedup();
    let dist = shortest_paths_masked(g, &list, None);
    Ok(DistanceField::from_distances(g, list, dist, None))
}

/// `max_v dist(x, v)`; fails on disconnected graphs.
pub fn radius_from(g: &WeightedMultigraph, x: usize) -> Result<f64> {
    let dist = shortest_path_distances(g, x)?;
    radius_of_distances(&dist)
}

pub(crate) fn radius_of_distances(dist: &[f64]) -> Result<f64> {
    let mut r = 0.0f64;
    for &d in dist {
        if !d.is_finite() {
            return Err(Error::Disconnected);
        }
        r = r.max(d);
    }
    Ok(r)
}

pub fn ball(g: &WeightedMultigraph, x: usize, r: f64) -> Result<Vec<usize>> {
    let dist = shortest_path_distances(g, x)?;
    Ok(ball_members(&dist, r))
}

pub fn ball_shell(g: &WeightedMultigraph, x: usize, r: f64) -> Result<Vec<usize>> {
    let dist = shortest_path_distances(g, x)?;
    let inside: Vec<bool> = dist.iter().map(|&d| d <= r).collect();
    Ok(shell_members(g, &dist, &inside, tolerance_for(&dist)))
}

pub(crate) fn ball_members(dist: &[f64], r: f64) -> Vec<usize> {
    (0..dist.len()).filter(|&v| dist[v] <= r).collect()
}

/// Vertices outside `inside` that are reached by a tight edge from inside.
pub(crate) fn shell_members(
    g: &WeightedMultigraph,
    dist: &[f64],
    inside: &[bool],
    tol: f64,
) -> Vec<usize> {
    (0..g.vertex_count())
        .filter(|&u| {
            !inside[u]
                && dist[u].is_finite()
                && g.neighbors(u).iter().any(|inc| {
                    inside[inc.neighbor]
                        && (dist[inc.neighbor] + g.length(inc.edge) - dist[u]).abs() <= tol
                })
        })
        .collect()
}
