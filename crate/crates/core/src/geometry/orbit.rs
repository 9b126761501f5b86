use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use super::incidence::points_on;
use crate::error::Result;
use crate::exactlin::{Field, Matrix, Subspace};
use crate::innerauto::{generator_set, is_inner_ideal, Automorphism};
use crate::tkk::TkkAlgebra;

#[derive(Clone, Debug)]
pub struct Orbit<F: Field> {
    /// Breadth-first discovery order.
    pub members: Vec<Subspace<F>>,
    /// False when the budget stopped the search early.
    pub complete: bool,
}

/// Breadth-first closure of `seeds` under `generators`, deduplicated by canonical form.
pub fn enumerate_orbit<F: Field>(seeds: &[Subspace<F>], generators: &[Automorphism<F>], budget: usize) -> Orbit<F> {
    let mut seen: HashSet<Subspace<F>> = HashSet::new();
    let mut members = Vec::new();
    for s in seeds {
        if seen.insert(s.clone()) {
            members.push(s.clone());
        }
    }
    let mut start = 0;
    while start < members.len() {
        let end = members.len();
        let images: Vec<Vec<Subspace<F>>> = members[start..end]
            .par_iter()
            .map(|m| generators.iter().map(|g| g.apply_subspace(m)).collect())
            .collect();
        for img in images.into_iter().flatten() {
            if seen.contains(&img) {
                continue;
            }
            if members.len() >= budget {
                return Orbit { members, complete: false };
            }
            seen.insert(img.clone());
            members.push(img);
        }
        start = end;
    }
    Orbit { members, complete: true }
}

/// Basis-parameter generators e_±(c·e_j, 0), e_±(0, c·s_k) as automorphisms.
pub fn basic_generators<F: Field>(l: &TkkAlgebra<F>) -> Result<Vec<Automorphism<F>>> {
    generator_set(l).iter().map(|g| g.build(l)).collect()
}

fn spans_known_points<F: Field>(
    f: F,
    x: &[F::Elem],
    y: &[F::Elem],
    index: &HashMap<&Subspace<F>, usize>,
) -> Option<Subspace<F>> {
    let span = Subspace::span(f, x.len(), &[x.to_vec(), y.to_vec()]).expect("consistent");
    let q = f.size().expect("finite") as usize;
    (points_on(&span, index).len() == q + 1).then_some(span)
}

/// Indices j > i with ad(x_i) x_j = 0, for 1-dimensional points given by spanning vectors.
fn commuting_pairs<F: Field>(l: &TkkAlgebra<F>, vecs: &[Vec<F::Elem>]) -> Vec<Vec<usize>> {
    let f = l.field();
    let n = l.total_dim();
    (0..vecs.len())
        .into_par_iter()
        .map(|i| {
            let ad: Matrix<F> = l.ad(&vecs[i]);
            let rows: Vec<&[F::Elem]> = (0..n).map(|r| ad.row(r)).filter(|r| r.iter().any(|c| !f.is_zero(c))).collect();
            (i + 1..vecs.len())
                .filter(|&j| {
                    rows.iter().all(|row| {
                        let mut acc = f.zero();
                        for (a, b) in row.iter().zip(&vecs[j]) {
                            if !f.is_zero(a) && !f.is_zero(b) {
                                acc = f.add(&acc, &f.mul(a, b));
                            }
                        }
                        f.is_zero(&acc)
                    })
                })
                .collect()
        })
        .collect()
}

/// Strongly-commuting adjacency among 1-dimensional points (finite field): [x,y] = 0 and every
/// point of ⟨x,y⟩ is a known point, hence extremal.
pub fn strongly_commuting_adjacency<F: Field>(l: &TkkAlgebra<F>, points: &[Subspace<F>]) -> Vec<Vec<usize>> {
    let vecs: Vec<Vec<F::Elem>> = points.iter().map(|p| p.basis()[0].clone()).collect();
    let index: HashMap<&Subspace<F>, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let comm = commuting_pairs(l, &vecs);
    let mut adj = vec![Vec::new(); points.len()];
    for (i, js) in comm.iter().enumerate() {
        for &j in js {
            let sc = match spans_known_points(l.field(), &vecs[i], &vecs[j], &index) {
                Some(_) => true,
                None => crate::geometry::strongly_commuting(l, &vecs[i], &vecs[j]).unwrap_or(false),
            };
            if sc {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    adj
}

/// Lines of the extremal geometry: spans of strongly-commuting point pairs.
pub fn lines_from_strong_pairs<F: Field>(points: &[Subspace<F>], adj: &[Vec<usize>]) -> Vec<Subspace<F>> {
    let f = points[0].field();
    let n = points[0].ambient();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, js) in adj.iter().enumerate() {
        for &j in js.iter().filter(|&&j| j > i) {
            let span =
                Subspace::span(f, n, &[points[i].basis()[0].clone(), points[j].basis()[0].clone()]).expect("consistent");
            if seen.insert(span.clone()) {
                out.push(span);
            }
        }
    }
    out
}

/// Proper non-minimal inner ideals spanned by two commuting minimal ones.
pub fn lines_from_inner_pairs<F: Field>(l: &TkkAlgebra<F>, points: &[Subspace<F>]) -> Vec<Subspace<F>> {
    let vecs: Vec<Vec<F::Elem>> = points.iter().map(|p| p.basis()[0].clone()).collect();
    let comm = commuting_pairs(l, &vecs);
    let f = l.field();
    let n = l.total_dim();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, js) in comm.iter().enumerate() {
        for &j in js {
            let span = Subspace::span(f, n, &[vecs[i].clone(), vecs[j].clone()]).expect("consistent");
            if seen.insert(span.clone()) && is_inner_ideal(l, &span) {
                out.push(span);
            }
        }
    }
    out
}
