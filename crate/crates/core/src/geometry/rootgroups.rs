use std::collections::{HashMap, HashSet};

use super::incidence::{IncidenceGeometry, IncidenceGraph, Vertex};
use crate::exactlin::{Field, Subspace};
use crate::innerauto::Automorphism;
use crate::report::CheckReport;

/// One root group: its elements with their parameters, and the cycle index of its end vertex.
#[derive(Clone, Debug)]
pub struct RootGroup<F: Field> {
    pub label: String,
    /// Index i of x_i; the group fixes the neighbours of x_{i+1} .. x_{i+n-1}.
    pub start: usize,
    pub elements: Vec<(String, Automorphism<F>)>,
}

#[derive(Clone, Debug)]
pub struct RootGroupFamily<F: Field> {
    /// The reference cycle x_0 .. x_{2n-1}.
    pub cycle: Vec<Vertex>,
    pub groups: Vec<RootGroup<F>>,
}

/// Maps vertices of a geometry through automorphisms by canonical lookup.
pub struct VertexAction<'a, F: Field> {
    geom: &'a IncidenceGeometry<F>,
    graph: IncidenceGraph,
    points: HashMap<Subspace<F>, usize>,
    lines: HashMap<Subspace<F>, usize>,
}

impl<'a, F: Field> VertexAction<'a, F> {
    pub fn new(geom: &'a IncidenceGeometry<F>) -> Self {
        VertexAction { geom, graph: geom.graph(), points: geom.point_index(), lines: geom.line_index() }
    }

    pub fn graph(&self) -> &IncidenceGraph {
        &self.graph
    }

    pub fn lookup(&self, s: &Subspace<F>) -> Option<Vertex> {
        if let Some(&i) = self.points.get(s) {
            return Some(Vertex::Point(i));
        }
        self.lines.get(s).map(|&i| Vertex::Line(i))
    }

    pub fn image(&self, g: &Automorphism<F>, v: Vertex) -> Option<Vertex> {
        self.lookup(&g.apply_subspace(self.geom.subspace(v)))
    }

    pub fn neighbours(&self, v: Vertex) -> Vec<Vertex> {
        let id = self.graph.vertex_id(v);
        self.graph.adj[id].iter().map(|&w| self.graph.vertex(w)).collect()
    }
}

/// Each element fixes every neighbour of the interior root vertices, and the group acts
/// sharply transitively on the neighbours of the end vertex other than the next cycle vertex.
pub fn verify_root_group<F: Field>(act: &VertexAction<F>, family: &RootGroupFamily<F>, group: &RootGroup<F>) -> CheckReport {
    let m = family.cycle.len();
    let n = m / 2;
    let name = format!("root group {}", group.label);
    let mut checked = 0u64;
    let interior: Vec<Vertex> = (1..n).map(|k| family.cycle[(group.start + k) % m]).collect();
    for (param, g) in &group.elements {
        for &v in &interior {
            for w in act.neighbours(v) {
                checked += 1;
                if act.image(g, w) != Some(w) {
                    return CheckReport::fail(name, checked, format!("parameter {param} moves {w:?} adjacent to {v:?}"));
                }
            }
        }
    }
    let end = family.cycle[group.start % m];
    let next = family.cycle[(group.start + 1) % m];
    let targets: HashSet<Vertex> = act.neighbours(end).into_iter().filter(|&w| w != next).collect();
    let Some(&base) = targets.iter().min() else {
        return CheckReport::fail(name, checked, "end vertex has no other neighbours");
    };
    let mut orbit = HashSet::new();
    for (param, g) in &group.elements {
        checked += 1;
        match act.image(g, base) {
            Some(w) if targets.contains(&w) => {
                if !orbit.insert(w) {
                    return CheckReport::fail(name, checked, format!("parameter {param}: action on {base:?} is not free"));
                }
            }
            other => return CheckReport::fail(name, checked, format!("parameter {param} maps {base:?} to {other:?}")),
        }
    }
    if orbit.len() != targets.len() {
        return CheckReport::fail(name, checked, format!("orbit of size {} among {} neighbours", orbit.len(), targets.len()));
    }
    CheckReport::pass(name, checked)
        .with_note(format!("{} elements, sharply transitive on {} neighbours", group.elements.len(), targets.len()))
}

pub fn verify_root_groups<F: Field>(geom: &IncidenceGeometry<F>, family: &RootGroupFamily<F>) -> Vec<CheckReport> {
    let act = VertexAction::new(geom);
    family.groups.iter().map(|g| verify_root_group(&act, family, g)).collect()
}
