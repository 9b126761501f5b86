use std::collections::{BTreeMap, HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};

/// A vertex of the incidence graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Vertex {
    Point(usize),
    Line(usize),
}

/// Points and lines as canonical subspaces with their incidence relation.
#[derive(Clone, Debug)]
pub struct IncidenceGeometry<F: Field> {
    pub points: Vec<Subspace<F>>,
    pub lines: Vec<Subspace<F>>,
    /// For each line, the sorted indices of its points.
    pub line_points: Vec<Vec<usize>>,
    pub labels: BTreeMap<String, Vertex>,
}

impl<F: Field> IncidenceGeometry<F> {
    /// Incidence by containment, with every line's points found through the point index.
    pub fn from_containment(points: Vec<Subspace<F>>, lines: Vec<Subspace<F>>) -> Self {
        let index: HashMap<&Subspace<F>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let line_points = lines
            .par_iter()
            .map(|l| {
                let mut v: Vec<usize> = points_on(l, &index);
                v.sort_unstable();
                v
            })
            .collect();
        IncidenceGeometry { points, lines, line_points, labels: BTreeMap::new() }
    }

    /// Incidence by a nonzero intersection test over all point/line pairs.
    pub fn from_meets(points: Vec<Subspace<F>>, lines: Vec<Subspace<F>>) -> Self {
        let line_points = lines
            .par_iter()
            .map(|l| {
                (0..points.len())
                    .filter(|&i| !points[i].intersection(l).expect("same ambient").is_zero())
                    .collect()
            })
            .collect();
        IncidenceGeometry { points, lines, line_points, labels: BTreeMap::new() }
    }

    /// Sorts points and lines canonically and re-indexes incidence and labels.
    pub fn canonicalize(mut self) -> Self {
        let mut porder: Vec<usize> = (0..self.points.len()).collect();
        porder.sort_by(|&a, &b| self.points[a].canonical_cmp(&self.points[b]));
        let mut pnew = vec![0; porder.len()];
        for (new, &old) in porder.iter().enumerate() {
            pnew[old] = new;
        }
        let mut lorder: Vec<usize> = (0..self.lines.len()).collect();
        lorder.sort_by(|&a, &b| self.lines[a].canonical_cmp(&self.lines[b]));
        let mut lnew = vec![0; lorder.len()];
        for (new, &old) in lorder.iter().enumerate() {
            lnew[old] = new;
        }
        let points = porder.iter().map(|&i| self.points[i].clone()).collect();
        let lines = lorder.iter().map(|&i| self.lines[i].clone()).collect();
        let line_points = lorder
            .iter()
            .map(|&i| {
                let mut v: Vec<usize> = self.line_points[i].iter().map(|&p| pnew[p]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        for v in self.labels.values_mut() {
            *v = match *v {
                Vertex::Point(i) => Vertex::Point(pnew[i]),
                Vertex::Line(i) => Vertex::Line(lnew[i]),
            };
        }
        IncidenceGeometry { points, lines, line_points, labels: self.labels }
    }

    pub fn graph(&self) -> IncidenceGraph {
        IncidenceGraph::new(self.points.len(), &self.line_points)
    }

    pub fn point_index(&self) -> HashMap<Subspace<F>, usize> {
        self.points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
    }

    pub fn line_index(&self) -> HashMap<Subspace<F>, usize> {
        self.lines.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect()
    }

    pub fn subspace(&self, v: Vertex) -> &Subspace<F> {
        match v {
            Vertex::Point(i) => &self.points[i],
            Vertex::Line(i) => &self.lines[i],
        }
    }
}

/// Indices of the known points inside `l`, found by enumerating its 1-dimensional subspaces
/// when every point is 1-dimensional, else by containment.
pub fn points_on<F: Field>(l: &Subspace<F>, index: &HashMap<&Subspace<F>, usize>) -> Vec<usize> {
    let f = l.field();
    let all_lines = index.keys().all(|p| p.dim() == 1);
    if all_lines && f.size().is_some() {
        let coeffs = crate::exactlin::projective_points(f, l.dim()).expect("finite");
        let mut out = Vec::new();
        for c in coeffs {
            let mut v = f.vzero(l.ambient());
            for (ci, b) in c.iter().zip(l.basis()) {
                f.vaxpy(&mut v, ci, b);
            }
            if let Some(&i) = index.get(&Subspace::line(f, &v)) {
                out.push(i);
            }
        }
        out
    } else {
        index.iter().filter(|(p, _)| p.is_subspace_of(l)).map(|(_, &i)| i).collect()
    }
}

/// Bipartite incidence graph: vertices 0..P are points, P..P+L are lines.
#[derive(Clone, Debug)]
pub struct IncidenceGraph {
    pub num_points: usize,
    pub adj: Vec<Vec<usize>>,
}

impl IncidenceGraph {
    pub fn new(num_points: usize, line_points: &[Vec<usize>]) -> Self {
        let mut adj = vec![Vec::new(); num_points + line_points.len()];
        for (li, pts) in line_points.iter().enumerate() {
            for &p in pts {
                adj[p].push(num_points + li);
                adj[num_points + li].push(p);
            }
        }
        for a in &mut adj {
            a.sort_unstable();
            a.dedup();
        }
        IncidenceGraph { num_points, adj }
    }

    pub fn vertex_id(&self, v: Vertex) -> usize {
        match v {
            Vertex::Point(i) => i,
            Vertex::Line(i) => self.num_points + i,
        }
    }

    pub fn vertex(&self, id: usize) -> Vertex {
        if id < self.num_points {
            Vertex::Point(id)
        } else {
            Vertex::Line(id - self.num_points)
        }
    }

    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    /// BFS distances from `root` (usize::MAX = unreachable).
    pub fn distances(&self, root: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.adj.len()];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// (eccentricity, shortest cycle through the BFS tree of root)
    fn bfs_stats(&self, root: usize) -> (usize, usize) {
        let n = self.adj.len();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut ecc = 0;
        let mut cycle = usize::MAX;
        while let Some(u) = queue.pop_front() {
            ecc = ecc.max(dist[u]);
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    cycle = cycle.min(dist[u] + dist[w] + 1);
                }
            }
        }
        if dist.iter().any(|&d| d == usize::MAX) {
            ecc = usize::MAX;
        }
        (ecc, cycle)
    }

    /// A shortest path from `a` to `b`, choosing the smallest neighbour at each step.
    pub fn shortest_path(&self, a: usize, b: usize) -> Option<Vec<usize>> {
        let db = self.distances(b);
        if db[a] == usize::MAX {
            return None;
        }
        let mut path = vec![a];
        let mut cur = a;
        while cur != b {
            cur = *self.adj[cur].iter().find(|&&w| db[w] + 1 == db[cur]).expect("on a geodesic");
            path.push(cur);
        }
        Some(path)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolygonStats {
    pub points: usize,
    pub lines: usize,
    pub girth: Option<usize>,
    pub diameter: Option<usize>,
    pub point_degrees: (usize, usize),
    pub line_degrees: (usize, usize),
    pub connected: bool,
    /// n when the graph is a generalized n-gon
    pub polygon: Option<usize>,
    pub thick: bool,
}

impl PolygonStats {
    pub fn verdict(&self) -> String {
        if !self.connected {
            return "disconnected incidence graph, no verdict".into();
        }
        let (g, d) = (self.girth.unwrap_or(0), self.diameter.unwrap_or(0));
        match self.polygon {
            Some(n) => {
                let kind = match n {
                    3 => "triangle".to_string(),
                    4 => "quadrangle".to_string(),
                    6 => "hexagon".to_string(),
                    8 => "octagon".to_string(),
                    _ => format!("{n}-gon"),
                };
                let thin = if self.thick { "" } else { "thin " };
                format!("{thin}generalized {kind}: girth {g}, diameter {d}")
            }
            None => format!("not a generalized polygon: girth {g}, diameter {d}"),
        }
    }
}

fn degree_range(it: impl Iterator<Item = usize>) -> (usize, usize) {
    it.fold((usize::MAX, 0), |(lo, hi), d| (lo.min(d), hi.max(d)))
}

pub fn polygon_stats(g: &IncidenceGraph) -> PolygonStats {
    let np = g.num_points;
    let nl = g.len() - np;
    let point_degrees = if np == 0 { (0, 0) } else { degree_range(g.adj[..np].iter().map(Vec::len)) };
    let line_degrees = if nl == 0 { (0, 0) } else { degree_range(g.adj[np..].iter().map(Vec::len)) };
    let per: Vec<(usize, usize)> = (0..g.len()).into_par_iter().map(|v| g.bfs_stats(v)).collect();
    let connected = !g.is_empty() && per.iter().all(|&(e, _)| e != usize::MAX);
    let girth = per.iter().map(|&(_, c)| c).min().filter(|&c| c != usize::MAX);
    let diameter = if connected { per.iter().map(|&(e, _)| e).max() } else { None };
    let min_deg = point_degrees.0.min(line_degrees.0);
    let polygon = match (girth, diameter) {
        (Some(gi), Some(d)) if connected && gi == 2 * d && min_deg >= 2 => Some(d),
        _ => None,
    };
    PolygonStats {
        points: np,
        lines: nl,
        girth,
        diameter,
        point_degrees,
        line_degrees,
        connected,
        polygon,
        thick: min_deg >= 3,
    }
}

/// The geometry export document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryExport {
    pub field: String,
    pub family: String,
    /// RREF basis of each point, entries as field-element indices.
    pub points: Vec<Vec<Vec<u64>>>,
    /// Point indices on each line.
    pub lines: Vec<Vec<usize>>,
    pub stats: PolygonStats,
    pub labels: BTreeMap<String, Vertex>,
}

impl GeometryExport {
    pub fn new<F: Field>(g: &IncidenceGeometry<F>, family: &str) -> Result<Self> {
        let field = g
            .points
            .first()
            .map(|p| p.field().descriptor().label())
            .ok_or_else(|| Error::Precondition("empty geometry".into()))?;
        let points = g
            .points
            .iter()
            .map(|p| p.basis().iter().map(|row| row.iter().map(|e| p.field().index_of(e)).collect()).collect())
            .collect();
        Ok(GeometryExport {
            field,
            family: family.to_string(),
            points,
            lines: g.line_points.clone(),
            stats: polygon_stats(&g.graph()),
            labels: g.labels.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("geometry file: {e}")))
    }

    pub fn graph(&self) -> IncidenceGraph {
        IncidenceGraph::new(self.points.len(), &self.lines)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Incidence graph of PG(2, 2) from its seven lines.
    fn fano() -> IncidenceGraph {
        let lines = vec![
            vec![0, 1, 2],
            vec![0, 3, 4],
            vec![0, 5, 6],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
        ];
        IncidenceGraph::new(7, &lines)
    }

    #[test]
    fn fano_is_a_triangle() {
        let s = polygon_stats(&fano());
        assert_eq!((s.girth, s.diameter, s.polygon), (Some(6), Some(3), Some(3)));
        assert!(s.thick);
        assert_eq!(s.verdict(), "generalized triangle: girth 6, diameter 3");
    }

    #[test]
    fn ordinary_hexagon_is_thin() {
        let lines: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let s = polygon_stats(&IncidenceGraph::new(6, &lines));
        assert_eq!(s.polygon, Some(6));
        assert!(!s.thick);
    }

    #[test]
    fn disconnected_has_no_verdict() {
        let s = polygon_stats(&IncidenceGraph::new(3, &[vec![0, 1]]));
        assert!(!s.connected);
        assert_eq!(s.polygon, None);
    }

    #[test]
    fn tree_has_no_girth() {
        let s = polygon_stats(&IncidenceGraph::new(3, &[vec![0, 1], vec![1, 2]]));
        assert_eq!(s.girth, None);
        assert_eq!(s.polygon, None);
    }
}
