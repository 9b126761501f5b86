use std::collections::VecDeque;

use super::incidence::{polygon_stats, IncidenceGeometry, Vertex};
use super::orbit::{basic_generators, enumerate_orbit, lines_from_inner_pairs};
use super::rootgroups::{RootGroup, RootGroupFamily};
use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::innerauto::e_sigma;
use crate::report::CheckReport;
use crate::tkk::TkkAlgebra;

/// Γ (minimal and non-minimal inner ideals) and Ω (the non-minimal ones, adjacent when they meet)
/// for the exchange algebra of a field.
#[derive(Clone, Debug)]
pub struct TriangleGeometry<F: Field> {
    pub gamma: IncidenceGeometry<F>,
    pub omega: IncidenceGeometry<F>,
}

/// The reference 6-cycle of Ω and the point cycle of Γ under it.
fn reference<F: Field>(l: &TkkAlgebra<F>) -> Result<(Vec<Subspace<F>>, Vec<Subspace<F>>)> {
    let f = l.field();
    let (o, z) = (f.one(), f.zero());
    let s = l.algebra().skew().basis()[0].clone();
    let n = l.total_dim();
    let splus = l.s_plus(&s)?;
    let sminus = l.s_minus(&s)?;
    let fp = l.a_plus(&vec![o.clone(), z.clone()]);
    let fm = l.a_minus(&vec![o.clone(), z.clone()]);
    let gp = l.a_plus(&vec![z.clone(), o.clone()]);
    let gm = l.a_minus(&vec![z, o]);
    // points S+, (F,0)+, (F,0)-, S-, (0,F)-, (0,F)+
    let pts = [&splus, &fp, &fm, &sminus, &gm, &gp];
    let points: Vec<Subspace<F>> = pts.iter().map(|v| Subspace::line(f, v)).collect();
    let lines = (0..6)
        .map(|k| Subspace::span(f, n, &[pts[(k + 5) % 6].clone(), pts[k].clone()]).expect("dims"))
        .collect();
    Ok((points, lines))
}

/// Colours the graph whose vertices are Γ-lines, adjacent when they share a point.
fn two_colour(num_lines: usize, line_points: &[Vec<usize>], num_points: usize) -> Result<Vec<u8>> {
    let mut on_point = vec![Vec::new(); num_points];
    for (li, pts) in line_points.iter().enumerate() {
        for &p in pts {
            on_point[p].push(li);
        }
    }
    let mut colour = vec![u8::MAX; num_lines];
    for root in 0..num_lines {
        if colour[root] != u8::MAX {
            continue;
        }
        colour[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &p in &line_points[u] {
                for &w in &on_point[p] {
                    if w == u {
                        continue;
                    }
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        q.push_back(w);
                    } else if colour[w] == colour[u] {
                        return Err(Error::Verification("line graph is not bipartite".into()));
                    }
                }
            }
        }
    }
    Ok(colour)
}

pub fn build_triangle<F: Field>(l: &TkkAlgebra<F>, budget: usize) -> Result<TriangleGeometry<F>> {
    if l.algebra().tag() != "exchange" || l.algebra().skew().dim() != 1 {
        return Err(Error::Precondition("the triangle needs the exchange algebra of a field".into()));
    }
    let gens = basic_generators(l)?;
    let orbit = enumerate_orbit(&[l.grade_space(2)], &gens, budget);
    if !orbit.complete {
        return Err(Error::BudgetExceeded(format!("point orbit exceeded {budget}")));
    }
    let points = orbit.members;
    let lines = lines_from_inner_pairs(l, &points);
    let mut gamma = IncidenceGeometry::from_containment(points, lines);
    let (cp, cl) = reference(l)?;
    let pidx = gamma.point_index();
    let lidx = gamma.line_index();
    for (k, p) in cp.iter().enumerate() {
        let i = *pidx.get(p).ok_or_else(|| Error::Verification(format!("reference point p{k} missing")))?;
        gamma.labels.insert(format!("p{k}"), Vertex::Point(i));
    }
    for (k, x) in cl.iter().enumerate() {
        let i = *lidx.get(x).ok_or_else(|| Error::Verification(format!("reference line x{k} missing")))?;
        gamma.labels.insert(format!("x{k}"), Vertex::Line(i));
    }
    let gamma = gamma.canonicalize();
    let omega = omega_of(&gamma)?;
    Ok(TriangleGeometry { gamma, omega })
}

/// Ω: one colour class of Γ-lines as points, the other as lines, incident when they meet.
fn omega_of<F: Field>(gamma: &IncidenceGeometry<F>) -> Result<IncidenceGeometry<F>> {
    let colour = two_colour(gamma.lines.len(), &gamma.line_points, gamma.points.len())?;
    let x0 = match gamma.labels.get("x0") {
        Some(Vertex::Line(i)) => *i,
        _ => 0,
    };
    let class = |c: u8| -> Vec<usize> { (0..gamma.lines.len()).filter(|&i| colour[i] == c).collect() };
    let (pc, lc) = (class(colour[x0]), class(1 - colour[x0]));
    let points: Vec<Subspace<F>> = pc.iter().map(|&i| gamma.lines[i].clone()).collect();
    let lines: Vec<Subspace<F>> = lc.iter().map(|&i| gamma.lines[i].clone()).collect();
    let mut omega = IncidenceGeometry::from_meets(points, lines);
    for (name, v) in &gamma.labels {
        if let Vertex::Line(i) = v {
            if let Some(k) = pc.iter().position(|&x| x == *i) {
                omega.labels.insert(name.clone(), Vertex::Point(k));
            } else if let Some(k) = lc.iter().position(|&x| x == *i) {
                omega.labels.insert(name.clone(), Vertex::Line(k));
            }
        }
    }
    Ok(omega.canonicalize())
}

/// Predicted collinearity distance from brackets against graph distance.
pub fn triangle_distance_dictionary<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem], y: &[F::Elem]) -> usize {
    let f = l.field();
    let xy = l.bracket(x, y);
    if f.vis_zero(&xy) {
        1
    } else if f.vis_zero(&l.bracket(x, &xy)) {
        2
    } else {
        3
    }
}

pub fn check_distance_dictionary<F: Field>(l: &TkkAlgebra<F>, gamma: &IncidenceGeometry<F>) -> CheckReport {
    let name = "triangle distance dictionary";
    let g = gamma.graph();
    let vecs: Vec<&Vec<F::Elem>> = gamma.points.iter().map(|p| &p.basis()[0]).collect();
    let mut checked = 0;
    for i in 0..vecs.len() {
        let d = g.distances(i);
        for j in 0..vecs.len() {
            if i == j {
                continue;
            }
            checked += 1;
            let actual = d[j] / 2;
            let predicted = triangle_distance_dictionary(l, vecs[i], vecs[j]);
            if actual != predicted {
                return CheckReport::fail(name, checked, format!("points {i},{j}: graph {actual}, brackets {predicted}"));
            }
        }
    }
    CheckReport::pass(name, checked)
}

/// Non-collinear points at collinearity distance 2 have exactly one common neighbour.
pub fn check_unique_common_neighbour<F: Field>(gamma: &IncidenceGeometry<F>) -> CheckReport {
    let name = "unique common neighbour at distance 2";
    let g = gamma.graph();
    let np = gamma.points.len();
    let collinear: Vec<Vec<usize>> = (0..np)
        .map(|p| {
            let mut v: Vec<usize> =
                g.adj[p].iter().flat_map(|&l| g.adj[l].iter().copied()).filter(|&q| q != p).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect();
    let mut checked = 0;
    for p in 0..np {
        let d = g.distances(p);
        for q in (0..np).filter(|&q| d[q] == 4) {
            checked += 1;
            let common = collinear[p].iter().filter(|r| collinear[q].binary_search(r).is_ok()).count();
            if common != 1 {
                return CheckReport::fail(name, checked, format!("points {p},{q} have {common} common neighbours"));
            }
        }
    }
    CheckReport::pass(name, checked)
}

/// A projective plane extracted from the thin hexagon, with its axiom report.
#[derive(Clone, Debug)]
pub struct ProjectivePlane {
    pub points: usize,
    pub lines: usize,
    /// Points on each line.
    pub line_points: Vec<Vec<usize>>,
}

pub fn dual_double_extract<F: Field>(gamma: &IncidenceGeometry<F>) -> Result<(ProjectivePlane, CheckReport)> {
    let stats = polygon_stats(&gamma.graph());
    if stats.polygon != Some(6) || stats.thick {
        return Err(Error::Precondition("dual double extraction needs a thin generalized hexagon".into()));
    }
    let omega = omega_of(gamma)?;
    let plane = ProjectivePlane {
        points: omega.points.len(),
        lines: omega.lines.len(),
        line_points: omega.line_points.clone(),
    };
    let report = check_projective_plane(&plane);
    Ok((plane, report))
}

/// Two points on exactly one line, two lines through exactly one point, and a quadrangle.
pub fn check_projective_plane(p: &ProjectivePlane) -> CheckReport {
    let name = "projective plane axioms";
    let mut point_lines = vec![Vec::new(); p.points];
    for (li, pts) in p.line_points.iter().enumerate() {
        for &q in pts {
            point_lines[q].push(li);
        }
    }
    let mut checked = 0;
    let mut common = vec![0u32; p.points * p.points];
    for pts in &p.line_points {
        for &a in pts {
            for &b in pts {
                common[a * p.points + b] += 1;
            }
        }
    }
    for a in 0..p.points {
        for b in a + 1..p.points {
            checked += 1;
            if common[a * p.points + b] != 1 {
                return CheckReport::fail(name, checked, format!("points {a},{b} on {} lines", common[a * p.points + b]));
            }
        }
    }
    for a in 0..p.lines {
        for b in a + 1..p.lines {
            checked += 1;
            let meet = p.line_points[a].iter().filter(|x| p.line_points[b].contains(x)).count();
            if meet != 1 {
                return CheckReport::fail(name, checked, format!("lines {a},{b} meet in {meet} points"));
            }
        }
    }
    let thick = p.line_points.iter().all(|l| l.len() >= 3) && point_lines.iter().all(|l| l.len() >= 3);
    if !thick {
        return CheckReport::fail(name, checked, "degenerate plane (no quadrangle)");
    }
    CheckReport::pass(name, checked).with_note(format!("{} points, {} lines", p.points, p.lines))
}

/// PG(2, q) built directly from F_q³: points and lines as 1-dimensional subspaces, incident
/// when orthogonal.
pub fn projective_plane_oracle<F: Field>(f: F) -> Result<ProjectivePlane> {
    let pts: Vec<Vec<F::Elem>> = crate::exactlin::projective_points(f, 3)?;
    let dot = |a: &[F::Elem], b: &[F::Elem]| a.iter().zip(b).fold(f.zero(), |acc, (x, y)| f.add(&acc, &f.mul(x, y)));
    let line_points = pts
        .iter()
        .map(|l| (0..pts.len()).filter(|&i| f.is_zero(&dot(l, &pts[i]))).collect())
        .collect();
    Ok(ProjectivePlane { points: pts.len(), lines: pts.len(), line_points })
}

/// U₁ = e₋((F,0),0), U₂ = e₋(0,S), U₃ = e₋((0,F),0) on the reference 6-cycle of Ω.
pub fn triangle_root_groups<F: Field>(l: &TkkAlgebra<F>, omega: &IncidenceGeometry<F>) -> Result<RootGroupFamily<F>> {
    let f = l.field();
    let cycle: Vec<Vertex> = (0..6)
        .map(|k| omega.labels.get(&format!("x{k}")).copied().ok_or_else(|| Error::Precondition(format!("x{k} unlabelled"))))
        .collect::<Result<_>>()?;
    let s = l.algebra().skew().basis()[0].clone();
    let z = f.vzero(2);
    let elems = f.elements()?;
    let mk = |label: &str, start: usize, build: &dyn Fn(&F::Elem) -> Result<crate::innerauto::Automorphism<F>>| -> Result<RootGroup<F>> {
        let elements = elems.iter().map(|c| Ok((f.format(c), build(c)?))).collect::<Result<_>>()?;
        Ok(RootGroup { label: label.into(), start, elements })
    };
    let groups = vec![
        mk("U1", 1, &|c| e_sigma(l, &[c.clone(), f.zero()], &z, -1))?,
        mk("U2", 2, &|c| e_sigma(l, &z, &f.vscale(c, &s), -1))?,
        mk("U3", 3, &|c| e_sigma(l, &[f.zero(), c.clone()], &z, -1))?,
    ];
    Ok(RootGroupFamily { cycle, groups })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::geometry::verify_root_groups;
    use crate::structalg::instances;

    fn tkk(p: u32) -> TkkAlgebra<PrimeField> {
        let f = PrimeField::new(p).unwrap();
        TkkAlgebra::build(&instances::exchange_field(f)).unwrap()
    }

    #[test]
    fn triangle_over_f5() {
        let l = tkk(5);
        let t = build_triangle(&l, 10_000).unwrap();
        assert_eq!((t.gamma.points.len(), t.gamma.lines.len()), (186, 62));
        let st = polygon_stats(&t.gamma.graph());
        assert_eq!((st.girth, st.diameter), (Some(12), Some(6)));
        assert!(!st.thick);
        assert_eq!((t.omega.points.len(), t.omega.lines.len()), (31, 31));
        let (plane, rep) = dual_double_extract(&t.gamma).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let oracle = projective_plane_oracle(l.field()).unwrap();
        assert!(check_projective_plane(&oracle).passed());
        assert_eq!((plane.points, plane.lines), (oracle.points, oracle.lines));
        assert!(check_distance_dictionary(&l, &t.gamma).passed());
        assert!(check_unique_common_neighbour(&t.gamma).passed());
        let fam = triangle_root_groups(&l, &t.omega).unwrap();
        for rep in verify_root_groups(&t.omega, &fam) {
            assert!(rep.passed(), "{rep:?}");
        }
    }

    #[test]
    fn triangle_over_f7() {
        let l = tkk(7);
        let t = build_triangle(&l, 10_000).unwrap();
        assert_eq!((t.omega.points.len(), t.omega.lines.len()), (57, 57));
    }
}
