//! Command dispatch for the `tkklab` binary.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::config::{load_config, AlgebraSpec, FieldSpec, RunConfig};
use crate::error::{Error, Result};
use crate::exactlin::{ExtensionField, Field, PrimeField, Rationals};
use crate::geometry::{
    build_hexagon, build_triangle, check_algebra_inner_ideals, check_commutator_relations, check_cycle_transitivity,
    check_distance_dictionary, check_extremal_set, check_lines_through_splus, check_maximality,
    check_one_dim_root_groups, check_projective_plane, check_psi_independence, check_unique_common_neighbour,
    dual_double_extract, hexagon_root_groups, jordan_moufang_set, polygon_stats, projective_plane_oracle,
    skew_moufang_set, triangle_root_groups, verify_root_groups, GeometryExport, HexagonContext, HexagonOptions,
    IncidenceGeometry, LineStrategy, RelationsOptions,
};
use crate::innerauto::{
    check_assumption_v0, check_extremal_characterization, check_group_law, check_image_e_plus,
    check_inner_containing_skew, check_normalization, check_v_epsilon_lemmas,
};
use crate::report::{CheckReport, Status};
use crate::structalg::{
    check_alternative, check_epsilon_delta_formulas, check_psi_skew, check_structurable, check_v_symmetry, Algebra,
    CheckMode,
};
use crate::tkk::TkkAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    VerifyAlgebra,
    BuildTkk,
    Geometry,
    Polygon,
    Moufang,
    Relations,
    Report,
}

impl Command {
    pub fn parse(s: &str) -> Option<Command> {
        Some(match s {
            "verify-algebra" => Command::VerifyAlgebra,
            "build-tkk" => Command::BuildTkk,
            "geometry" => Command::Geometry,
            "polygon" => Command::Polygon,
            "moufang" => Command::Moufang,
            "relations" => Command::Relations,
            "report" => Command::Report,
            _ => return None,
        })
    }
}

/// Options from the command line; unset values fall back to the config, then to defaults.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub large: bool,
    /// Build the hexagon with this η while the relations keep assuming η = 1.
    pub debug_eta: Option<i64>,
    /// Perturb one parameter of the U₁ relations.
    pub debug_corrupt_relation: bool,
}

const DEFAULT_SAMPLES: usize = 200;
const DEFAULT_BUDGET: usize = 10_000_000;
const CYCLE_TRIALS: usize = 100;
const NORMALIZATION_TRIALS: usize = 100;
const ONE_DIM_ROOT_GROUP_PAIRS: usize = 2_000;

/// Resolved settings for one run.
struct Ctx<'a> {
    cfg: &'a RunConfig,
    seed: u64,
    samples: usize,
    budget: usize,
    large: bool,
    out: Option<PathBuf>,
    opts: &'a RunOptions,
}

/// Collects reports, printing each as it arrives.
struct Sink<'w> {
    w: &'w mut dyn Write,
    failed: bool,
}

impl Sink<'_> {
    fn line(&mut self, s: impl AsRef<str>) {
        let _ = writeln!(self.w, "{}", s.as_ref());
    }
    fn report(&mut self, r: CheckReport) {
        self.failed |= r.status == Status::Fail;
        self.line(r.to_string());
    }
    fn reports(&mut self, rs: impl IntoIterator<Item = CheckReport>) {
        for r in rs {
            self.report(r);
        }
    }
}

/// Runs a command and returns the exit code: 0 pass, 1 a check failed, 2 usage or config error.
pub fn run(cmd: Command, input: &Path, opts: &RunOptions, w: &mut dyn Write) -> i32 {
    let mut sink = Sink { w, failed: false };
    let outcome = if cmd == Command::Polygon {
        polygon(input, &mut sink)
    } else {
        match load_config(input) {
            Ok(cfg) => dispatch(cmd, &cfg, opts, &mut sink),
            Err(e) => Err(e),
        }
    };
    match outcome {
        Ok(()) if sink.failed => 1,
        Ok(()) => 0,
        Err(e @ (Error::Config(_) | Error::Precondition(_) | Error::InvalidField(_) | Error::InvalidInstance(_))) => {
            sink.line(format!("error: {e}"));
            2
        }
        Err(e) => {
            sink.line(format!("[FAIL] {e}"));
            1
        }
    }
}

fn polygon(input: &Path, sink: &mut Sink) -> Result<()> {
    let text = std::fs::read_to_string(input).map_err(|e| Error::Config(format!("{}: {e}", input.display())))?;
    let doc = GeometryExport::from_json(&text)?;
    let stats = polygon_stats(&doc.graph());
    sink.line(format!("{} over {}: {} points, {} lines", doc.family, doc.field, stats.points, stats.lines));
    sink.line(format!("point degrees {:?}, line degrees {:?}", stats.point_degrees, stats.line_degrees));
    sink.line(stats.verdict());
    sink.failed |= stats.polygon.is_none();
    Ok(())
}

fn dispatch(cmd: Command, cfg: &RunConfig, opts: &RunOptions, sink: &mut Sink) -> Result<()> {
    let ctx = Ctx {
        cfg,
        seed: opts.seed.or(cfg.options.seed).unwrap_or(0),
        samples: opts.samples.or(cfg.options.samples).unwrap_or(DEFAULT_SAMPLES),
        budget: cfg.options.budget.unwrap_or(DEFAULT_BUDGET),
        large: opts.large || cfg.options.large.unwrap_or(false),
        out: opts.out.clone().or_else(|| cfg.options.out.as_ref().map(PathBuf::from)),
        opts,
    };
    match &cfg.field {
        FieldSpec::Rationals => run_field(cmd, Rationals, &ctx, sink),
        FieldSpec::Prime { p } => run_field(cmd, PrimeField::new(*p)?, &ctx, sink),
        FieldSpec::Extension { p, modulus } => run_field(cmd, ExtensionField::new(*p, modulus)?, &ctx, sink),
    }
}

fn run_field<F: Field>(cmd: Command, f: F, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    let alg = ctx.cfg.algebra.build(f)?;
    sink.line(format!("{} over {}", ctx.cfg.algebra.family(), f.descriptor().label()));
    match cmd {
        Command::VerifyAlgebra => verify_algebra(&alg, ctx, sink),
        Command::BuildTkk => build_tkk(&alg, sink).map(|_| ()),
        Command::Geometry => geometry(f, &alg, ctx, sink),
        Command::Moufang => moufang(f, &alg, ctx, sink),
        Command::Relations => relations(f, ctx, sink),
        Command::Report => report(f, &alg, ctx, sink),
        Command::Polygon => unreachable!("handled before the config is read"),
    }
}

fn verify_algebra<F: Field>(alg: &Algebra<F>, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    sink.report(check_structurable(alg, CheckMode::Exhaustive));
    sink.report(check_v_symmetry(alg));
    sink.report(check_psi_skew(alg));
    sink.report(check_epsilon_delta_formulas(alg));
    if matches!(ctx.cfg.algebra, AlgebraSpec::Exchange | AlgebraSpec::Hurwitz { .. }) {
        sink.report(check_alternative(alg, ctx.samples, ctx.seed));
    }
    Ok(())
}

fn build_tkk<F: Field>(alg: &Algebra<F>, sink: &mut Sink) -> Result<TkkAlgebra<F>> {
    let l = TkkAlgebra::build_unchecked(alg)?;
    let (a, b, c, d, e) = l.dims().as_tuple();
    sink.line(format!("grade dimensions ({a}, {b}, {c}, {d}, {e}), total {}", l.total_dim()));
    let (tx, rest) = l.inst_split();
    sink.line(format!("Inst(A) = span{{T_x}} ({tx}) + complement ({rest})"));
    sink.report(l.check_antisymmetry());
    sink.report(l.check_jacobi());
    sink.report(l.check_grading());
    sink.report(l.check_l0_generated());
    sink.report(l.check_epsilon_delta_consistency());
    Ok(l)
}

fn write_export<F: Field>(geom: &IncidenceGeometry<F>, family: &str, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    let doc = GeometryExport::new(geom, family)?;
    let json = doc.to_json();
    match &ctx.out {
        Some(path) => {
            std::fs::write(path, json).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            sink.line(format!("wrote {}", path.display()));
        }
        None => sink.line(json.trim_end()),
    }
    Ok(())
}

fn stats_report(name: &str, geom_stats: crate::geometry::PolygonStats, expect: usize, thick: bool) -> CheckReport {
    let summary = format!(
        "{} points, {} lines, point degrees {:?}, line degrees {:?}; {}",
        geom_stats.points,
        geom_stats.lines,
        geom_stats.point_degrees,
        geom_stats.line_degrees,
        geom_stats.verdict()
    );
    if geom_stats.polygon == Some(expect) && geom_stats.thick == thick {
        CheckReport::pass(name, (geom_stats.points + geom_stats.lines) as u64).with_note(summary)
    } else {
        CheckReport::fail(name, (geom_stats.points + geom_stats.lines) as u64, summary)
    }
}

fn hexagon_context<F: Field>(f: F, ctx: &Ctx, eta: Option<i64>) -> Result<HexagonContext<F>> {
    let j = ctx
        .cfg
        .algebra
        .cubic(f)?
        .ok_or_else(|| Error::Precondition("this command needs the matrix family M(J, eta)".into()))?;
    if j.dim() > 1 && !ctx.large {
        return Err(Error::Precondition("J of dimension > 1 gives a very large hexagon; pass --large".into()));
    }
    let eta = eta.map(|e| f.from_i64(e)).unwrap_or_else(|| ctx.cfg.algebra.eta(f));
    HexagonContext::new(j, &eta)
}

fn hexagon_geometry<F: Field>(hx: &HexagonContext<F>, ctx: &Ctx) -> Result<IncidenceGeometry<F>> {
    let lines = if ctx.large { LineStrategy::LineOrbit } else { LineStrategy::PairScan };
    build_hexagon(hx, &HexagonOptions { budget: ctx.budget, lines })
}

fn require_finite<F: Field>(f: F) -> Result<()> {
    match f.size() {
        Some(_) => Ok(()),
        None => Err(Error::Precondition("geometry enumeration needs a finite field".into())),
    }
}

fn geometry<F: Field>(f: F, alg: &Algebra<F>, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    require_finite(f)?;
    match &ctx.cfg.algebra {
        AlgebraSpec::Exchange => {
            let l = TkkAlgebra::build(alg)?;
            let t = build_triangle(&l, ctx.budget)?;
            sink.report(stats_report("Gamma is a thin generalized hexagon", polygon_stats(&t.gamma.graph()), 6, false));
            sink.report(stats_report("Omega is a generalized triangle", polygon_stats(&t.omega.graph()), 3, true));
            write_export(&t.gamma, "triangle-gamma", ctx, sink)
        }
        AlgebraSpec::Matrix { .. } => {
            let hx = hexagon_context(f, ctx, None)?;
            let g = hexagon_geometry(&hx, ctx)?;
            sink.report(stats_report("extremal geometry is a generalized hexagon", polygon_stats(&g.graph()), 6, true));
            write_export(&g, "hexagon", ctx, sink)
        }
        AlgebraSpec::Jordan { .. } => {
            let l = TkkAlgebra::build(alg)?;
            let m = jordan_moufang_set(&l, ctx.budget)?;
            sink.reports(m.reports);
            let geom = IncidenceGeometry::from_containment(m.points, Vec::new()).canonicalize();
            write_export(&geom, "moufang-set", ctx, sink)
        }
        AlgebraSpec::Hurwitz { .. } => Err(Error::Precondition("no finite geometry is defined for this family".into())),
    }
}

fn triangle_checks<F: Field>(f: F, l: &TkkAlgebra<F>, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    let t = build_triangle(l, ctx.budget)?;
    sink.report(stats_report("Gamma is a thin generalized hexagon", polygon_stats(&t.gamma.graph()), 6, false));
    sink.report(stats_report("Omega is a generalized triangle", polygon_stats(&t.omega.graph()), 3, true));
    let (plane, rep) = dual_double_extract(&t.gamma)?;
    sink.report(rep);
    let oracle = projective_plane_oracle(f)?;
    let name = "dual double matches PG(2, q)";
    sink.report(if (plane.points, plane.lines) == (oracle.points, oracle.lines) && check_projective_plane(&oracle).passed() {
        CheckReport::pass(name, 1).with_note(format!("{} points, {} lines", oracle.points, oracle.lines))
    } else {
        CheckReport::fail(name, 1, format!("extracted {}/{}, oracle {}/{}", plane.points, plane.lines, oracle.points, oracle.lines))
    });
    sink.report(check_distance_dictionary(l, &t.gamma));
    sink.report(check_unique_common_neighbour(&t.gamma));
    let fam = triangle_root_groups(l, &t.omega)?;
    sink.reports(verify_root_groups(&t.omega, &fam));
    Ok(())
}

fn hexagon_checks<F: Field>(hx: &HexagonContext<F>, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    let g = hexagon_geometry(hx, ctx)?;
    sink.report(stats_report("extremal geometry is a generalized hexagon", polygon_stats(&g.graph()), 6, true));
    let fam = hexagon_root_groups(hx, &g)?;
    sink.reports(verify_root_groups(&g, &fam));
    if !ctx.large {
        sink.report(check_maximality(&g));
        sink.report(check_lines_through_splus(hx, &g));
        sink.report(check_one_dim_root_groups(&g, &hx.l, ONE_DIM_ROOT_GROUP_PAIRS, ctx.seed));
        sink.report(check_algebra_inner_ideals(hx, &g, ctx.budget));
        sink.report(check_cycle_transitivity(hx, &g, CYCLE_TRIALS, ctx.seed));
    }
    Ok(())
}

fn moufang<F: Field>(f: F, alg: &Algebra<F>, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    match &ctx.cfg.algebra {
        AlgebraSpec::Jordan { .. } => {
            require_finite(f)?;
            let l = TkkAlgebra::build(alg)?;
            let m = jordan_moufang_set(&l, ctx.budget)?;
            sink.line(format!("{} points", m.points.len()));
            sink.reports(m.reports);
        }
        AlgebraSpec::Hurwitz { .. } => {
            let l = TkkAlgebra::build(alg)?;
            sink.reports(skew_moufang_set(&l, ctx.samples, ctx.seed)?);
        }
        AlgebraSpec::Exchange => {
            require_finite(f)?;
            let l = TkkAlgebra::build(alg)?;
            triangle_checks(f, &l, ctx, sink)?;
        }
        AlgebraSpec::Matrix { .. } => {
            require_finite(f)?;
            let hx = hexagon_context(f, ctx, None)?;
            hexagon_checks(&hx, ctx, sink)?;
        }
    }
    Ok(())
}

fn relations<F: Field>(f: F, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    require_finite(f)?;
    let hx = hexagon_context(f, ctx, ctx.opts.debug_eta)?;
    if let Some(e) = ctx.opts.debug_eta {
        sink.line(format!("debug: algebra built with eta = {e}"));
    }
    let opts = RelationsOptions { corrupt: ctx.opts.debug_corrupt_relation };
    sink.reports(check_commutator_relations(&hx, &opts, ctx.samples, ctx.seed));
    Ok(())
}

fn report<F: Field>(f: F, alg: &Algebra<F>, ctx: &Ctx, sink: &mut Sink) -> Result<()> {
    sink.line("== algebra");
    verify_algebra(alg, ctx, sink)?;
    sink.line("== TKK");
    let l = build_tkk(alg, sink)?;
    sink.line("== inner automorphisms");
    sink.report(check_image_e_plus(&l, ctx.samples, ctx.seed));
    sink.report(check_group_law(&l, ctx.samples, ctx.seed));
    sink.report(check_v_epsilon_lemmas(&l, ctx.samples, ctx.seed));
    if alg.skew().dim() > 0 {
        sink.report(check_assumption_v0(&l, ctx.samples, ctx.seed));
        sink.report(check_inner_containing_skew(&l, ctx.samples, ctx.seed));
        sink.report(check_normalization(&l, NORMALIZATION_TRIALS, ctx.seed));
    }
    let finite = f.size().is_some();
    match &ctx.cfg.algebra {
        AlgebraSpec::Exchange if finite => {
            sink.line("== triangle");
            triangle_checks(f, &l, ctx, sink)?;
        }
        AlgebraSpec::Matrix { .. } if finite => {
            sink.line("== hexagon");
            let hx = hexagon_context(f, ctx, None)?;
            if !ctx.large {
                sink.report(check_extremal_set(&hx));
                sink.report(check_psi_independence(&hx));
                let elems: Vec<_> = crate::exactlin::enumerate_vectors(f, alg.dim())?.collect();
                sink.report(check_extremal_characterization(&hx.l, &elems));
            }
            hexagon_checks(&hx, ctx, sink)?;
            sink.reports(check_commutator_relations(&hx, &RelationsOptions::default(), ctx.samples, ctx.seed));
        }
        AlgebraSpec::Jordan { .. } | AlgebraSpec::Hurwitz { .. } => {
            sink.line("== Moufang set");
            moufang(f, alg, ctx, sink)?;
        }
        _ => sink.line("geometry skipped: infinite field"),
    }
    Ok(())
}
