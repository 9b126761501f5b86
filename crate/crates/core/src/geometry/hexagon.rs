use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::incidence::{IncidenceGeometry, Vertex};
use super::orbit::{basic_generators, enumerate_orbit, lines_from_strong_pairs, strongly_commuting_adjacency};
use super::rootgroups::{RootGroup, RootGroupFamily, VertexAction};
use crate::cubic::CubicNormStructure;
use crate::error::{Error, Result};
use crate::exactlin::{enumerate_vectors, projective_points, Field, Subspace};
use crate::innerauto::{
    e_sigma, exp_ad, exp_t, is_extremal, normalize_to_splus, recover_params, Automorphism, NormalizeOptions,
};
use crate::report::CheckReport;
use crate::structalg::instances::{matrix_skew_generator, matrix_structurable, MatrixLayout};
use crate::tkk::TkkAlgebra;

/// K(M(J, η)) together with the data needed to write down matrices [[k₁, j₁], [j₂, k₂]].
#[derive(Clone, Debug)]
pub struct HexagonContext<F: Field> {
    pub l: TkkAlgebra<F>,
    pub j: CubicNormStructure<F>,
    pub layout: MatrixLayout,
    /// s = diag(1, −1), spanning S.
    pub s: Vec<F::Elem>,
}

impl<F: Field> HexagonContext<F> {
    pub fn new(j: CubicNormStructure<F>, eta: &F::Elem) -> Result<Self> {
        let alg = matrix_structurable(&j, eta)?;
        let l = TkkAlgebra::build(&alg)?;
        let s = matrix_skew_generator(&alg, j.dim());
        Ok(HexagonContext { l, layout: MatrixLayout { jdim: j.dim() }, j, s })
    }

    pub fn field(&self) -> F {
        self.l.field()
    }

    /// [[k1, j1], [j2, k2]] in algebra coordinates.
    pub fn mat(&self, k1: &F::Elem, j1: &[F::Elem], j2: &[F::Elem], k2: &F::Elem) -> Vec<F::Elem> {
        self.layout.assemble(k1.clone(), j1, j2, k2.clone())
    }

    fn jzero(&self) -> Vec<F::Elem> {
        self.field().vzero(self.j.dim())
    }

    pub fn j_elements(&self) -> Result<Vec<Vec<F::Elem>>> {
        Ok(enumerate_vectors(self.field(), self.j.dim())?.collect())
    }

    /// Parameters of x_i: J for odd i, the field for even i (as length-1 vectors).
    pub fn parameters(&self, i: usize) -> Result<Vec<Vec<F::Elem>>> {
        if i % 2 == 1 {
            self.j_elements()
        } else {
            Ok(self.field().elements()?.into_iter().map(|c| vec![c]).collect())
        }
    }

    /// The parametrized root elements x₁(a) .. x₆(t).
    pub fn root_element(&self, i: usize, p: &[F::Elem]) -> Result<Automorphism<F>> {
        let f = self.field();
        let (o, z) = (f.zero(), self.jzero());
        let n = self.layout.dim();
        let zero_a = f.vzero(n);
        match i {
            1 => exp_t(&self.l, &self.mat(&o, p, &z, &o)),
            2 => e_sigma(&self.l, &self.mat(&p[0], &z, &z, &o), &zero_a, -1),
            3 => e_sigma(&self.l, &self.mat(&o, &z, p, &o), &zero_a, -1),
            4 => e_sigma(&self.l, &zero_a, &f.vscale(&f.neg(&p[0]), &self.s), -1),
            5 => e_sigma(&self.l, &self.mat(&o, p, &z, &o), &zero_a, -1),
            6 => e_sigma(&self.l, &self.mat(&o, &z, &z, &f.neg(&p[0])), &zero_a, -1),
            _ => Err(Error::Precondition(format!("no root group x{i}"))),
        }
    }

    /// The reference 12-cycle x₀ .. x₁₁ as subspaces; odd indices are points.
    pub fn reference_cycle(&self) -> Result<Vec<Subspace<F>>> {
        let f = self.field();
        let l = &self.l;
        let (o, z, jz) = (f.one(), f.zero(), self.jzero());
        let e11 = self.mat(&o, &jz, &jz, &z);
        let e22 = self.mat(&z, &jz, &jz, &o);
        let odd = [
            l.s_plus(&self.s)?,
            l.a_plus(&e11),
            l.a_minus(&e11),
            l.s_minus(&self.s)?,
            l.a_minus(&e22),
            l.a_plus(&e22),
        ];
        let n = l.total_dim();
        let mut out = Vec::with_capacity(12);
        for k in 0..6 {
            let prev = &odd[(k + 5) % 6];
            out.push(Subspace::span(f, n, &[prev.clone(), odd[k].clone()])?);
            out.push(Subspace::line(f, &odd[k]));
        }
        Ok(out)
    }

    /// The explicit extremal set of A₊: λ[[N(x), x], [x♯, 1]] and λ[[1, 0], [0, 0]], λ ≠ 0.
    pub fn explicit_extremal_set(&self) -> Result<HashSet<Vec<F::Elem>>> {
        let f = self.field();
        let (o, z, jz) = (f.one(), f.zero(), self.jzero());
        let mut base = vec![self.mat(&o, &jz, &jz, &z)];
        for x in self.j_elements()? {
            base.push(self.mat(&self.j.norm(&x), &x, &self.j.sharp(&x), &o));
        }
        let mut out = HashSet::new();
        for lam in f.nonzero_elements()? {
            for b in &base {
                out.insert(f.vscale(&lam, b));
            }
        }
        Ok(out)
    }

    /// exp ad T over a prime basis of J, in both off-diagonal positions when nilpotent.
    pub fn t_generators(&self, lower: bool) -> Result<Vec<Automorphism<F>>> {
        let f = self.field();
        let (o, jz) = (f.zero(), self.jzero());
        let mut out = Vec::new();
        for c in f.prime_basis() {
            for i in 0..self.j.dim() {
                let v = f.vscale(&c, &f.unit_vec(self.j.dim(), i));
                out.push(exp_t(&self.l, &self.mat(&o, &v, &jz, &o))?);
                if lower {
                    out.push(exp_t(&self.l, &self.mat(&o, &jz, &v, &o))?);
                }
            }
        }
        Ok(out)
    }
}

/// How lines are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineStrategy {
    /// Spans of strongly commuting point pairs.
    PairScan,
    /// The orbit of the reference line x₀, for sizes where the pair scan is out of reach.
    LineOrbit,
}

#[derive(Clone, Copy, Debug)]
pub struct HexagonOptions {
    pub budget: usize,
    pub lines: LineStrategy,
}

impl Default for HexagonOptions {
    fn default() -> Self {
        HexagonOptions { budget: 10_000_000, lines: LineStrategy::PairScan }
    }
}

/// Points (orbit of S₊) and lines of the extremal geometry, labelled with the reference cycle.
pub fn build_hexagon<F: Field>(ctx: &HexagonContext<F>, opts: &HexagonOptions) -> Result<IncidenceGeometry<F>> {
    let l = &ctx.l;
    let mut gens = basic_generators(l)?;
    gens.extend(ctx.t_generators(false)?);
    let cycle = ctx.reference_cycle()?;
    let orbit = enumerate_orbit(&[cycle[1].clone()], &gens, opts.budget);
    if !orbit.complete {
        return Err(Error::BudgetExceeded(format!("point orbit exceeded {}", opts.budget)));
    }
    let points = orbit.members;
    let lines = match opts.lines {
        LineStrategy::PairScan => {
            let adj = strongly_commuting_adjacency(l, &points);
            lines_from_strong_pairs(&points, &adj)
        }
        LineStrategy::LineOrbit => {
            let o = enumerate_orbit(&[cycle[0].clone()], &gens, opts.budget);
            if !o.complete {
                return Err(Error::BudgetExceeded(format!("line orbit exceeded {}", opts.budget)));
            }
            o.members
        }
    };
    let mut geom = IncidenceGeometry::from_containment(points, lines);
    label_cycle(&mut geom, &cycle)?;
    Ok(geom.canonicalize())
}

fn label_cycle<F: Field>(geom: &mut IncidenceGeometry<F>, cycle: &[Subspace<F>]) -> Result<()> {
    let pidx = geom.point_index();
    let lidx = geom.line_index();
    for (k, x) in cycle.iter().enumerate() {
        let v = if k % 2 == 1 { pidx.get(x).map(|&i| Vertex::Point(i)) } else { lidx.get(x).map(|&i| Vertex::Line(i)) };
        let v = v.ok_or_else(|| Error::Verification(format!("reference vertex x{k} not in the geometry")))?;
        geom.labels.insert(format!("x{k}"), v);
    }
    Ok(())
}

fn cycle_vertices<F: Field>(geom: &IncidenceGeometry<F>) -> Result<Vec<Vertex>> {
    (0..12)
        .map(|k| geom.labels.get(&format!("x{k}")).copied().ok_or_else(|| Error::Precondition(format!("x{k} unlabelled"))))
        .collect()
}

/// U₁ .. U₆ from the parametrizations x₁ .. x₆, over all parameters.
pub fn hexagon_root_groups<F: Field>(ctx: &HexagonContext<F>, geom: &IncidenceGeometry<F>) -> Result<RootGroupFamily<F>> {
    let f = ctx.field();
    let cycle = cycle_vertices(geom)?;
    let mut groups = Vec::new();
    for i in 1..=6 {
        let elements = ctx
            .parameters(i)?
            .iter()
            .map(|p| Ok((f.vformat(p), ctx.root_element(i, p)?)))
            .collect::<Result<_>>()?;
        groups.push(RootGroup { label: format!("U{i}"), start: i, elements });
    }
    Ok(RootGroupFamily { cycle, groups })
}

/// Every a ∈ A has a₊ extremal exactly when a lies in the explicit set.
pub fn check_extremal_set<F: Field>(ctx: &HexagonContext<F>) -> CheckReport {
    let name = "extremal set of A+";
    let f = ctx.field();
    let l = &ctx.l;
    let b = match ctx.explicit_extremal_set() {
        Ok(b) => b,
        Err(e) => return CheckReport::fail(name, 0, e.to_string()),
    };
    let Ok(all) = enumerate_vectors(f, ctx.layout.dim()) else {
        return CheckReport::inconclusive(name, 0, "infinite field");
    };
    let mut checked = 0;
    let mut found = 0;
    for a in all.filter(|a| !f.vis_zero(a)) {
        checked += 1;
        let ext = is_extremal(l, &l.a_plus(&a)).unwrap_or(false);
        found += ext as usize;
        if ext != b.contains(&a) {
            let side = if ext { "extremal but not in the set" } else { "in the set but not extremal" };
            return CheckReport::fail(name, checked, format!("a = {}: {side}", l.algebra().format(&a)));
        }
    }
    CheckReport::pass(name, checked).with_note(format!("{found} extremal elements, all in the explicit set"))
}

/// ψ(a, b) = 0 for a, b in the explicit set forces linear dependence.
pub fn check_psi_independence<F: Field>(ctx: &HexagonContext<F>) -> CheckReport {
    let name = "psi-independence on the extremal set";
    let f = ctx.field();
    let alg = ctx.l.algebra();
    let b: Vec<Vec<F::Elem>> = match ctx.explicit_extremal_set() {
        Ok(b) => {
            let mut v: Vec<_> = b.into_iter().collect();
            v.sort_by_key(|x| x.iter().map(|e| f.index_of(e)).collect::<Vec<_>>());
            v
        }
        Err(e) => return CheckReport::fail(name, 0, e.to_string()),
    };
    let mut checked = 0;
    for x in &b {
        for y in &b {
            checked += 1;
            if f.vis_zero(&alg.psi(x, y)) && Subspace::line(f, x) != Subspace::line(f, y) {
                return CheckReport::fail(name, checked, format!("{} and {}", alg.format(x), alg.format(y)));
            }
        }
    }
    CheckReport::pass(name, checked)
}

/// Points collinear with each point, through the lines of the geometry.
fn collinearity<F: Field>(geom: &IncidenceGeometry<F>) -> Vec<HashSet<usize>> {
    let mut out = vec![HashSet::new(); geom.points.len()];
    for pts in &geom.line_points {
        for &p in pts {
            for &q in pts {
                if p != q {
                    out[p].insert(q);
                }
            }
        }
    }
    out
}

/// No point off a line is strongly commuting with two of its points.
pub fn check_maximality<F: Field>(geom: &IncidenceGeometry<F>) -> CheckReport {
    let name = "lines are maximal singular subspaces";
    let col = collinearity(geom);
    let mut checked = 0;
    for (li, pts) in geom.line_points.iter().enumerate() {
        checked += 1;
        let on: HashSet<usize> = pts.iter().copied().collect();
        let mut count: HashMap<usize, usize> = HashMap::new();
        for &p in pts {
            for &r in &col[p] {
                if !on.contains(&r) {
                    let c = count.entry(r).or_default();
                    *c += 1;
                    if *c >= 2 {
                        return CheckReport::fail(name, checked, format!("point {r} extends line {li}"));
                    }
                }
            }
        }
    }
    CheckReport::pass(name, checked)
}

/// The lines through S₊ are exactly ⟨a₊, s₊⟩ with a₊ extremal.
pub fn check_lines_through_splus<F: Field>(ctx: &HexagonContext<F>, geom: &IncidenceGeometry<F>) -> CheckReport {
    let name = "lines through S+";
    let l = &ctx.l;
    let f = ctx.field();
    let n = l.total_dim();
    let Ok(sp) = l.s_plus(&ctx.s) else { return CheckReport::fail(name, 0, "s not skew") };
    let Some(&p) = geom.point_index().get(&Subspace::line(f, &sp)) else {
        return CheckReport::fail(name, 0, "S+ is not a point");
    };
    let actual: HashSet<Subspace<F>> = geom
        .line_points
        .iter()
        .enumerate()
        .filter(|(_, pts)| pts.contains(&p))
        .map(|(i, _)| geom.lines[i].clone())
        .collect();
    let predicted: HashSet<Subspace<F>> = match ctx.explicit_extremal_set() {
        Ok(b) => b.iter().map(|a| Subspace::span(f, n, &[sp.clone(), l.a_plus(a)]).expect("dims")).collect(),
        Err(e) => return CheckReport::fail(name, 0, e.to_string()),
    };
    if actual != predicted {
        return CheckReport::fail(
            name,
            actual.len() as u64,
            format!("{} lines through S+, {} spans <a+, s+>", actual.len(), predicted.len()),
        );
    }
    CheckReport::pass(name, actual.len() as u64).with_note(format!("{} lines", actual.len()))
}

/// For strongly commuting extremal x, y, exp(ad x) fixes every line through ⟨y⟩.
pub fn check_one_dim_root_groups<F: Field>(geom: &IncidenceGeometry<F>, l: &TkkAlgebra<F>, budget: usize, seed: u64) -> CheckReport {
    let name = "exp(ad x) fixes the lines through a strongly commuting point";
    let act = VertexAction::new(geom);
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for pts in &geom.line_points {
        for &p in pts {
            for &q in pts {
                if p != q {
                    pairs.push((p, q));
                }
            }
        }
    }
    let total = pairs.len();
    if total > budget {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        pairs.shuffle(&mut rng);
        pairs.truncate(budget);
        pairs.sort_unstable();
    }
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); geom.points.len()];
    for (li, pts) in geom.line_points.iter().enumerate() {
        for &p in pts {
            through[p].push(li);
        }
    }
    let mut checked = 0;
    for &(p, q) in &pairs {
        let x = &geom.points[p].basis()[0];
        let g = match exp_ad(l, x, "exp ad x") {
            Ok(g) => g,
            Err(e) => return CheckReport::fail(name, checked, format!("point {p}: {e}")),
        };
        for &li in &through[q] {
            checked += 1;
            if act.image(&g, Vertex::Line(li)) != Some(Vertex::Line(li)) {
                return CheckReport::fail(name, checked, format!("x from point {p} moves line {li} through point {q}"));
            }
        }
    }
    let rep = CheckReport::pass(name, checked);
    if pairs.len() < total {
        rep.with_note(format!("{} of {total} pairs sampled", pairs.len()))
    } else {
        rep.with_note(format!("all {total} pairs"))
    }
}

/// Subspaces I of A with U_x(A) ⊆ I for every x ∈ I.
fn algebra_inner_ideal<F: Field>(ctx: &HexagonContext<F>, i: &Subspace<F>) -> Result<bool> {
    let f = ctx.field();
    let alg = ctx.l.algebra();
    for c in enumerate_vectors(f, i.dim())? {
        let mut x = f.vzero(i.ambient());
        for (ci, b) in c.iter().zip(i.basis()) {
            f.vaxpy(&mut x, ci, b);
        }
        let u = alg.u_op(&x);
        if !(0..u.cols()).all(|k| i.contains(&u.column(k))) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Proper nonzero inner ideals of A itself are 1-dimensional, and each gives a point ⟨a₊⟩.
pub fn check_algebra_inner_ideals<F: Field>(ctx: &HexagonContext<F>, geom: &IncidenceGeometry<F>, budget: usize) -> CheckReport {
    let name = "inner ideals of the algebra";
    let f = ctx.field();
    let l = &ctx.l;
    let n = ctx.layout.dim();
    let Ok(pts) = projective_points(f, n) else {
        return CheckReport::inconclusive(name, 0, "infinite field");
    };
    if pts.len() * pts.len() / 2 > budget {
        return CheckReport::inconclusive(name, 0, format!("{} lines in A exceed the budget", pts.len()));
    }
    let index = geom.point_index();
    let mut checked = 0;
    let mut one_dim = 0;
    for a in &pts {
        checked += 1;
        let i = Subspace::line(f, a);
        match algebra_inner_ideal(ctx, &i) {
            Ok(true) => {
                one_dim += 1;
                if !index.contains_key(&Subspace::line(f, &l.a_plus(a))) {
                    return CheckReport::fail(name, checked, format!("<{}>+ is not a point", l.algebra().format(a)));
                }
            }
            Ok(false) => {}
            Err(e) => return CheckReport::fail(name, checked, e.to_string()),
        }
    }
    let mut seen = HashSet::new();
    for (x, a) in pts.iter().enumerate() {
        for b in &pts[x + 1..] {
            let i = Subspace::span(f, n, &[a.clone(), b.clone()]).expect("dims");
            if !seen.insert(i.clone()) {
                continue;
            }
            checked += 1;
            match algebra_inner_ideal(ctx, &i) {
                Ok(true) => return CheckReport::fail(name, checked, format!("2-dimensional inner ideal {:?}", i.basis())),
                Ok(false) => {}
                Err(e) => return CheckReport::fail(name, checked, e.to_string()),
            }
        }
    }
    CheckReport::pass(name, checked).with_note(format!("{one_dim} one-dimensional, none of dimension 2"))
}

/// Parameters of the relations suite.
#[derive(Clone, Copy, Debug, Default)]
pub struct RelationsOptions {
    /// Shift the scalar on the right of the third U₁ relation by one (a negative control).
    pub corrupt: bool,
}

/// Writes g ∈ E₋ as x₂(p₂) x₃(p₃) x₄(p₄) x₅(p₅) x₆(p₆), or None when g ∉ E₋.
pub fn decompose_e_minus<F: Field>(ctx: &HexagonContext<F>, g: &Automorphism<F>) -> Result<Option<Vec<Vec<F::Elem>>>> {
    let f = ctx.field();
    let l = &ctx.l;
    let alg = l.algebra();
    // e₋(a, s)(id) = id + a₋ + 2 s₋
    let id = l.inst(&crate::exactlin::Matrix::identity(f, alg.dim()))?;
    let c = l.decompose(&g.apply(&id));
    let a = c.a_minus;
    let s = f.vscale(&f.half(), &c.s_minus);
    if e_sigma(l, &a, &s, -1)?.matrix() != g.matrix() {
        return Ok(None);
    }
    let (k1, j1, j2, k2) = ctx.layout.split(&a);
    let mut p = vec![Vec::new(); 7];
    p[2] = vec![k1.clone()];
    p[3] = j2.to_vec();
    p[5] = j1.to_vec();
    p[6] = vec![f.neg(k2)];
    let mut q = Automorphism::identity(l);
    for i in [2, 3, 5, 6] {
        q = q.then(&ctx.root_element(i, &p[i])?);
    }
    // x₄ is central in E₋, so what is left is x₄(p₄)
    let r = q.inverse().then(g);
    let rc = l.decompose(&r.apply(&id));
    if !f.vis_zero(&rc.a_minus) {
        return Ok(None);
    }
    let u = f.vscale(&f.half(), &rc.s_minus);
    let t = Subspace::line(f, &ctx.s).coordinates(&u).map(|c| f.neg(&c[0]));
    let Some(t) = t else { return Ok(None) };
    let t = f.div(&t, &ctx.s[ctx.layout.k1()]).expect("s has k1 = 1");
    if ctx.root_element(4, &[t.clone()])?.matrix() != r.matrix() {
        return Ok(None);
    }
    p[4] = vec![t];
    Ok(Some(p))
}

fn product<F: Field>(l: &TkkAlgebra<F>, factors: &[Automorphism<F>]) -> Automorphism<F> {
    factors.iter().fold(Automorphism::identity(l), |acc, g| acc.then(g))
}

/// The three U₁ commutator relations, for all parameters.
///
/// The S-parts carry the sign forced by the verified E₋ group law (+λ²N(x) and +T(x, y♯));
/// collecting the four factors with +½ψ instead would flip both.
pub fn check_u1_relations<F: Field>(ctx: &HexagonContext<F>, opts: &RelationsOptions) -> Vec<CheckReport> {
    let f = ctx.field();
    let l = &ctx.l;
    let j = &ctx.j;
    let (o, jz) = (f.zero(), ctx.jzero());
    let n = ctx.layout.dim();
    let za = f.vzero(n);
    let em = |a: Vec<F::Elem>| e_sigma(l, &a, &za, -1);
    let es = |c: F::Elem| e_sigma(l, &za, &f.vscale(&c, &ctx.s), -1);
    let (Ok(js), Ok(scalars)) = (ctx.j_elements(), f.elements()) else {
        return vec![CheckReport::inconclusive("U1 commutator relations", 0, "infinite field")];
    };
    let run = |name: &str, right_param: &[Vec<F::Elem>], eval: &dyn Fn(&[F::Elem], &[F::Elem]) -> Result<(Automorphism<F>, Automorphism<F>)>| {
        let mut checked = 0;
        for x in &js {
            for y in right_param {
                checked += 1;
                match eval(x, y) {
                    Ok((lhs, rhs)) if lhs.matrix() == rhs.matrix() => {}
                    Ok(_) => return CheckReport::fail(name, checked, format!("x = {}, parameter = {}", f.vformat(x), f.vformat(y))),
                    Err(e) => return CheckReport::fail(name, checked, e.to_string()),
                }
            }
        }
        CheckReport::pass(name, checked)
    };
    let lambdas: Vec<Vec<F::Elem>> = scalars.iter().map(|c| vec![c.clone()]).collect();
    let first = run("U1 relation with e-(diag(0, l))", &lambdas, &|x, lam| {
        let lam = &lam[0];
        let t = exp_t(l, &ctx.mat(&o, x, &jz, &o))?;
        let lhs = Automorphism::commutator(&t, &em(ctx.mat(&o, &jz, &jz, lam))?);
        let rhs = product(
            l,
            &[
                em(ctx.mat(&f.mul(lam, &j.norm(x)), &jz, &jz, &o))?,
                em(ctx.mat(&o, &jz, &f.vscale(&f.neg(lam), &j.sharp(x)), &o))?,
                es(f.mul(&f.mul(lam, lam), &j.norm(x)))?,
                em(ctx.mat(&o, &f.vscale(lam, x), &jz, &o))?,
            ],
        );
        Ok((lhs, rhs))
    });
    let second = run("U1 relation with e-([[0, y], [0, 0]])", &js, &|x, y| {
        let t = exp_t(l, &ctx.mat(&o, x, &jz, &o))?;
        let lhs = Automorphism::commutator(&t, &em(ctx.mat(&o, y, &jz, &o))?);
        let rhs = product(
            l,
            &[
                em(ctx.mat(&f.neg(&j.trace(&j.sharp(x), y)), &jz, &jz, &o))?,
                em(ctx.mat(&o, &jz, &j.cross(x, y), &o))?,
                es(j.trace(x, &j.sharp(y)))?,
            ],
        );
        Ok((lhs, rhs))
    });
    let corrupt = opts.corrupt;
    let third = run("U1 relation with e-([[0, 0], [y, 0]])", &js, &|x, y| {
        let t = exp_t(l, &ctx.mat(&o, x, &jz, &o))?;
        let lhs = Automorphism::commutator(&t, &em(ctx.mat(&o, &jz, y, &o))?);
        let mut c = j.trace(x, y);
        if corrupt {
            c = f.add(&c, &f.one());
        }
        Ok((lhs, em(ctx.mat(&c, &jz, &jz, &o))?))
    });
    vec![first, second, third]
}

/// x_i(a) x_i(b) = x_i(a + b), and [x_i, x_j] ∈ U_{i+1} ⋯ U_{j−1} for i < j, all parameters.
pub fn check_parametrization<F: Field>(ctx: &HexagonContext<F>) -> Vec<CheckReport> {
    let f = ctx.field();
    let l = &ctx.l;
    let mut params = vec![Vec::new()];
    let mut elems = vec![Vec::new()];
    for i in 1..=6 {
        let Ok(ps) = ctx.parameters(i) else {
            return vec![CheckReport::inconclusive("root group parametrization", 0, "infinite field")];
        };
        let es: Result<Vec<_>> = ps.iter().map(|p| ctx.root_element(i, p)).collect();
        match es {
            Ok(es) => elems.push(es),
            Err(e) => return vec![CheckReport::fail("root group parametrization", 0, e.to_string())],
        }
        params.push(ps);
    }
    let name = "root groups are additive";
    let mut checked = 0;
    let mut additive = CheckReport::pass(name, 0);
    'outer: for i in 1..=6 {
        let index: HashMap<&Vec<F::Elem>, usize> = params[i].iter().enumerate().map(|(k, p)| (p, k)).collect();
        for (a, ga) in params[i].iter().zip(&elems[i]) {
            for (b, gb) in params[i].iter().zip(&elems[i]) {
                checked += 1;
                let sum = &elems[i][index[&f.vadd(a, b)]];
                if ga.then(gb).matrix() != sum.matrix() {
                    additive = CheckReport::fail(name, checked, format!("x{i}: {} + {}", f.vformat(a), f.vformat(b)));
                    break 'outer;
                }
            }
        }
    }
    if additive.passed() {
        additive = CheckReport::pass(name, checked);
    }
    let name = "commutators lie in the intermediate root groups";
    let mut checked = 0;
    let mut comm = CheckReport::pass(name, 0);
    'pairs: for i in 1..=6 {
        for jx in i + 1..=6 {
            for (a, ga) in params[i].iter().zip(&elems[i]) {
                for (b, gb) in params[jx].iter().zip(&elems[jx]) {
                    checked += 1;
                    let c = Automorphism::commutator(ga, gb);
                    let witness = || format!("[x{i}({}), x{jx}({})]", f.vformat(a), f.vformat(b));
                    match decompose_e_minus(ctx, &c) {
                        Ok(Some(p)) => {
                            let outside = (2..=6).find(|&k| (k <= i || k >= jx) && !f.vis_zero(&p[k]));
                            if let Some(k) = outside {
                                comm = CheckReport::fail(name, checked, format!("{} has an x{k} factor", witness()));
                                break 'pairs;
                            }
                        }
                        Ok(None) => {
                            comm = CheckReport::fail(name, checked, format!("{} is not in E-", witness()));
                            break 'pairs;
                        }
                        Err(e) => {
                            comm = CheckReport::fail(name, checked, e.to_string());
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    if comm.passed() {
        comm = CheckReport::pass(name, checked);
    }
    let _ = l;
    vec![additive, comm]
}

/// The full relations suite: the U₁ relations, the parametrization, and the E₋ group law.
pub fn check_commutator_relations<F: Field>(ctx: &HexagonContext<F>, opts: &RelationsOptions, samples: usize, seed: u64) -> Vec<CheckReport> {
    let mut out = check_u1_relations(ctx, opts);
    out.extend(check_parametrization(ctx));
    out.push(crate::innerauto::check_group_law(&ctx.l, samples, seed));
    out
}

/// A random 12-cycle through a random point p and an opposite point, as subspaces.
fn random_cycle<F: Field, R: Rng>(geom: &IncidenceGeometry<F>, rng: &mut R) -> Option<Vec<Vertex>> {
    let g = geom.graph();
    let p = rng.gen_range(0..geom.points.len());
    let d = g.distances(p);
    let opposite: Vec<usize> = (0..geom.points.len()).filter(|&q| d[q] == 6).collect();
    let q = *opposite.choose(rng)?;
    let mut lines = g.adj[p].clone();
    lines.shuffle(rng);
    if lines.len() < 2 {
        return None;
    }
    let pa = g.shortest_path(lines[0], q)?;
    let pb = g.shortest_path(lines[1], q)?;
    let mut cyc = vec![0usize; 12];
    cyc[1] = p;
    for (k, &v) in pa.iter().enumerate() {
        cyc[2 + k] = v;
    }
    for (k, &v) in pb.iter().enumerate() {
        cyc[(12 - k) % 12] = v;
    }
    Some(cyc.into_iter().map(|v| g.vertex(v)).collect())
}

/// φ ∈ E(A) mapping the given cycle onto the reference one, in four steps.
fn map_cycle_to_reference<F: Field>(
    ctx: &HexagonContext<F>,
    geom: &IncidenceGeometry<F>,
    cyc: &[Vertex],
    stabilizer: &[Automorphism<F>],
    seed: u64,
) -> Result<Automorphism<F>> {
    let l = &ctx.l;
    let reference = ctx.reference_cycle()?;
    // step 1: the point y₁ to S₊
    let opts = NormalizeOptions { seed, ..NormalizeOptions::default() };
    let phi = normalize_to_splus(l, geom.subspace(cyc[1]), &opts)?.inverse();
    // step 2: the opposite point y₇ to S₋, inside E₊ which fixes S₊
    let y7 = phi.apply_subspace(geom.subspace(cyc[7]));
    let rec = recover_params(l, &y7, 1)?;
    let f = ctx.field();
    let phi = phi.then(&e_sigma(l, &f.vneg(&rec.a), &f.vneg(&rec.s), 1)?);
    // step 3: the two lines through S₊, inside the grade-preserving stabilizer
    let start = (phi.apply_subspace(geom.subspace(cyc[2])), phi.apply_subspace(geom.subspace(cyc[0])));
    let goal = (reference[2].clone(), reference[0].clone());
    let mut seen: HashMap<(Subspace<F>, Subspace<F>), Automorphism<F>> = HashMap::new();
    seen.insert(start.clone(), Automorphism::identity(l));
    let mut queue = VecDeque::from([start]);
    let mut found = None;
    while let Some(state) = queue.pop_front() {
        let g = seen[&state].clone();
        if state == goal {
            found = Some(g);
            break;
        }
        for t in stabilizer {
            let next = (t.apply_subspace(&state.0), t.apply_subspace(&state.1));
            if !seen.contains_key(&next) {
                seen.insert(next.clone(), g.then(t));
                queue.push_back(next);
            }
        }
    }
    let t = found.ok_or_else(|| Error::Verification("line pair not reachable in the stabilizer".into()))?;
    // step 4: the rest of the cycle follows from uniqueness of geodesics
    Ok(phi.then(&t))
}

/// E(A) maps random 12-cycles onto the reference cycle.
pub fn check_cycle_transitivity<F: Field>(ctx: &HexagonContext<F>, geom: &IncidenceGeometry<F>, trials: usize, seed: u64) -> CheckReport {
    let name = "transitivity on 12-cycles";
    let reference = match ctx.reference_cycle() {
        Ok(r) => r,
        Err(e) => return CheckReport::fail(name, 0, e.to_string()),
    };
    let stabilizer = match ctx.t_generators(true) {
        Ok(s) => s,
        Err(e) => return CheckReport::fail(name, 0, e.to_string()),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for trial in 0..trials {
        let Some(cyc) = random_cycle(geom, &mut rng) else {
            return CheckReport::fail(name, checked, format!("trial {trial}: no 12-cycle found"));
        };
        let phi = match map_cycle_to_reference(ctx, geom, &cyc, &stabilizer, seed.wrapping_add(trial as u64)) {
            Ok(p) => p,
            Err(e) => return CheckReport::fail(name, checked, format!("trial {trial}: {e}")),
        };
        for (k, v) in cyc.iter().enumerate() {
            checked += 1;
            if phi.apply_subspace(geom.subspace(*v)) != reference[k] {
                return CheckReport::fail(name, checked, format!("trial {trial}: vertex {k} not mapped onto x{k}"));
            }
        }
    }
    CheckReport::pass(name, checked).with_note(format!("{trials} cycles"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::geometry::{polygon_stats, verify_root_groups};

    fn ctx() -> HexagonContext<PrimeField> {
        let f = PrimeField::new(5).unwrap();
        HexagonContext::new(CubicNormStructure::rank1(f).unwrap(), &1).unwrap()
    }

    #[test]
    fn explicit_checks() {
        let c = ctx();
        assert!(check_extremal_set(&c).passed());
        assert!(check_psi_independence(&c).passed());
        assert_eq!(c.explicit_extremal_set().unwrap().len(), 24);
    }

    #[test]
    fn third_relation_example() {
        let c = ctx();
        let l = &c.l;
        let t = c.root_element(1, &[1]).unwrap();
        let g = e_sigma(l, &c.mat(&0, &[0], &[1], &0), &[0, 0, 0, 0], -1).unwrap();
        let lhs = Automorphism::commutator(&t, &g);
        let rhs = e_sigma(l, &c.mat(&3, &[0], &[0], &0), &[0, 0, 0, 0], -1).unwrap();
        assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn relations_suite() {
        let c = ctx();
        for r in check_commutator_relations(&c, &RelationsOptions::default(), 20, 0) {
            assert!(r.passed(), "{r:?}");
        }
        let bad = check_u1_relations(&c, &RelationsOptions { corrupt: true });
        assert!(!bad[2].passed());
    }

    #[test]
    fn hexagon_over_f5() {
        let c = ctx();
        let g = build_hexagon(&c, &HexagonOptions::default()).unwrap();
        assert_eq!((g.points.len(), g.lines.len()), (3906, 3906));
        let st = polygon_stats(&g.graph());
        assert_eq!(st.verdict(), "generalized hexagon: girth 12, diameter 6");
        assert_eq!((st.point_degrees, st.line_degrees), ((6, 6), (6, 6)));
        let fam = hexagon_root_groups(&c, &g).unwrap();
        for r in verify_root_groups(&g, &fam) {
            assert!(r.passed(), "{r:?}");
        }
        assert!(check_maximality(&g).passed());
        assert!(check_lines_through_splus(&c, &g).passed());
        let r = check_algebra_inner_ideals(&c, &g, 1_000_000);
        assert!(r.passed(), "{r:?}");
        let r = check_one_dim_root_groups(&g, &c.l, 300, 0);
        assert!(r.passed(), "{r:?}");
        let r = check_cycle_transitivity(&c, &g, 5, 0);
        assert!(r.passed(), "{r:?}");
    }
}
