//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use tkklab::cubic::CubicNormStructure;
use tkklab::exactlin::{enumerate_vectors, Field, PrimeField, Rationals};
use tkklab::geometry::{
    build_hexagon, build_triangle, check_distance_dictionary, check_extremal_set, check_parametrization,
    check_projective_plane, check_u1_relations, dual_double_extract, hexagon_root_groups, jordan_moufang_set,
    polygon_stats, projective_plane_oracle, skew_moufang_set, triangle_root_groups, verify_root_groups,
    HexagonContext, HexagonOptions, PolygonStats, RelationsOptions,
};
use tkklab::innerauto::{check_extremal_characterization, check_image_e_plus, check_normalization};
use tkklab::structalg::{check_epsilon_delta_formulas, check_structurable, instances, Algebra, CheckMode};
use tkklab::tkk::TkkAlgebra;
use tkklab::{CheckReport, Status};

const SEED: u64 = 0;
const BUDGET: usize = 10_000_000;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

/// The five instances, erased to a common runner.
fn with_instances(mut run: impl FnMut(&str, &dyn Instance)) {
    let f7 = PrimeField::new(7).unwrap();
    let q = Rationals;
    run("exchange(F_5)", &instances::exchange_field(f5()));
    run("exchange(F_7)", &instances::exchange_field(f7));
    run("M(rank1, 1)/F_5", &hexagon_algebra());
    run("jordan(F_25)", &jordan_f25());
    run("quaternions/Q", &instances::hurwitz_with_involution(q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap());
}

trait Instance {
    fn structurable(&self) -> CheckReport;
    fn epsilon_delta(&self) -> CheckReport;
    fn tkk(&self) -> (usize, Vec<CheckReport>);
}

impl<F: Field> Instance for Algebra<F> {
    fn structurable(&self) -> CheckReport {
        check_structurable(self, CheckMode::Exhaustive)
    }
    fn epsilon_delta(&self) -> CheckReport {
        check_epsilon_delta_formulas(self)
    }
    fn tkk(&self) -> (usize, Vec<CheckReport>) {
        let l = TkkAlgebra::build_unchecked(self).unwrap();
        (l.total_dim(), vec![l.check_jacobi(), l.check_grading(), l.check_l0_generated()])
    }
}

fn hexagon_algebra() -> Algebra<PrimeField> {
    instances::matrix_structurable(&CubicNormStructure::rank1(f5()).unwrap(), &f5().one()).unwrap()
}

fn jordan_f25() -> Algebra<PrimeField> {
    instances::jordan_extension(f5(), &[3, 0]).unwrap()
}

fn hexagon_context() -> HexagonContext<PrimeField> {
    HexagonContext::new(CubicNormStructure::rank1(f5()).unwrap(), &f5().one()).unwrap()
}

fn expect_stats(name: &str, s: &PolygonStats, want: (usize, usize, usize, usize, usize, usize)) -> CheckReport {
    let got = (s.points, s.lines, s.girth.unwrap_or(0), s.diameter.unwrap_or(0), s.point_degrees.0, s.line_degrees.0);
    let regular = s.point_degrees.0 == s.point_degrees.1 && s.line_degrees.0 == s.line_degrees.1;
    if got == want && regular {
        CheckReport::pass(name, (s.points + s.lines) as u64)
    } else {
        CheckReport::fail(name, (s.points + s.lines) as u64, format!("got {s:?}"))
    }
}

fn tkklab() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tkklab"))
}

fn config(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn axiom_suite() -> Vec<CheckReport> {
    let mut out = Vec::new();
    with_instances(|_, a| out.push(a.structurable()));
    out
}

fn tkk_integrity() -> Vec<CheckReport> {
    let expected = [8, 8, 14, 6, 21];
    let mut out = Vec::new();
    let mut k = 0;
    with_instances(|label, a| {
        let (dim, reports) = a.tkk();
        let name = format!("dim TKK {label} = {}", expected[k]);
        out.push(if dim == expected[k] { CheckReport::pass(name, 1) } else { CheckReport::fail(name, 1, format!("got {dim}")) });
        out.extend(reports);
        k += 1;
    });
    out
}

fn epsilon_delta_suite() -> Vec<CheckReport> {
    let mut out = Vec::new();
    with_instances(|_, a| out.push(a.epsilon_delta()));
    for alg in [instances::exchange_field(f5()), hexagon_algebra()] {
        // samples = 0: basis tuples only
        out.push(check_image_e_plus(&TkkAlgebra::build(&alg).unwrap(), 0, SEED));
    }
    out
}

fn jordan_moufang() -> Vec<CheckReport> {
    let l = TkkAlgebra::build(&jordan_f25()).unwrap();
    let m = jordan_moufang_set(&l, BUDGET).unwrap();
    let name = "26 proper nonzero inner ideals";
    let mut out = vec![if m.points.len() == 26 {
        CheckReport::pass(name, 26)
    } else {
        CheckReport::fail(name, m.points.len() as u64, "wrong count")
    }];
    out.extend(m.reports);
    out
}

fn quaternion_moufang() -> Vec<CheckReport> {
    let q = Rationals;
    let alg = instances::hurwitz_with_involution(q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
    skew_moufang_set(&TkkAlgebra::build(&alg).unwrap(), 50, SEED).unwrap()
}

fn triangle() -> Vec<CheckReport> {
    let f = f5();
    let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
    let t = build_triangle(&l, BUDGET).unwrap();
    let mut out = vec![
        expect_stats("Gamma: 186 points, 62 lines, girth 12, diameter 6, degrees 2 and 6", &polygon_stats(&t.gamma.graph()), (186, 62, 12, 6, 2, 6)),
        expect_stats("Omega: 31 + 31 vertices, girth 6, diameter 3, 6-regular", &polygon_stats(&t.omega.graph()), (31, 31, 6, 3, 6, 6)),
    ];
    let (plane, rep) = dual_double_extract(&t.gamma).unwrap();
    out.push(rep);
    out.push(check_projective_plane(&plane));
    let oracle = projective_plane_oracle(f).unwrap();
    out.push(check_projective_plane(&oracle));
    let name = "extracted plane has the counts of PG(2,5)";
    out.push(if (plane.points, plane.lines) == (31, 31) && (oracle.points, oracle.lines) == (31, 31) {
        CheckReport::pass(name, 1)
    } else {
        CheckReport::fail(name, 1, format!("extracted {}/{}, oracle {}/{}", plane.points, plane.lines, oracle.points, oracle.lines))
    });
    out.push(check_distance_dictionary(&l, &t.gamma));
    out.extend(verify_root_groups(&t.omega, &triangle_root_groups(&l, &t.omega).unwrap()));
    out
}

fn hexagon() -> Vec<CheckReport> {
    let ctx = hexagon_context();
    let g = build_hexagon(&ctx, &HexagonOptions { budget: BUDGET, ..Default::default() }).unwrap();
    let mut out = vec![expect_stats(
        "3906 points, 3906 lines, girth 12, diameter 6, biregular (6,6)",
        &polygon_stats(&g.graph()),
        (3906, 3906, 12, 6, 6, 6),
    )];
    out.push(check_extremal_set(&ctx));
    let elems: Vec<_> = enumerate_vectors(f5(), ctx.l.algebra().dim()).unwrap().collect();
    out.push(check_extremal_characterization(&ctx.l, &elems));
    out.extend(verify_root_groups(&g, &hexagon_root_groups(&ctx, &g).unwrap()));
    out.extend(check_u1_relations(&ctx, &RelationsOptions::default()));
    out.extend(check_parametrization(&ctx));
    out
}

fn normalization() -> Vec<CheckReport> {
    [instances::exchange_field(f5()), hexagon_algebra()]
        .iter()
        .map(|alg| check_normalization(&TkkAlgebra::build(alg).unwrap(), 100, SEED))
        .collect()
}

fn negative_controls() -> Vec<CheckReport> {
    let f = f5();
    let alg = instances::exchange_field(f);
    let n = alg.dim();
    let name = "every corrupted structure constant is detected with a witness";
    let mut checked = 0;
    let mut missed = None;
    'outer: for (i, j, k) in (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))) {
        for d in 1..5 {
            checked += 1;
            let bad = alg.with_corrupted_constant(i, j, k, &f.from_i64(d));
            let s = check_structurable(&bad, CheckMode::Exhaustive);
            let detected = (s.status == Status::Fail && s.witness.is_some())
                || TkkAlgebra::build_unchecked(&bad).is_ok_and(|l| {
                    let r = l.check_jacobi();
                    r.status == Status::Fail && r.witness.is_some()
                });
            if !detected {
                missed = Some(format!("e{i} e{j} -> e{k} shifted by {d}"));
                break 'outer;
            }
        }
    }
    let mut out = vec![match missed {
        None => CheckReport::pass(name, checked),
        Some(w) => CheckReport::fail(name, checked, w),
    }];
    let name = "relations suite exits 1 on a corrupted relation parameter";
    let o = tkklab().arg("relations").arg(config("hexagon_f5.toml")).arg("--debug-corrupt-relation").output().unwrap();
    out.push(if o.status.code() == Some(1) {
        CheckReport::pass(name, 1)
    } else {
        CheckReport::fail(name, 1, format!("exit {:?}", o.status.code()))
    });
    let o = tkklab().arg("relations").arg(config("hexagon_f5.toml")).output().unwrap();
    let name = "relations suite exits 0 when uncorrupted";
    out.push(if o.status.code() == Some(0) {
        CheckReport::pass(name, 1)
    } else {
        CheckReport::fail(name, 1, format!("exit {:?}", o.status.code()))
    });
    out
}

fn determinism() -> Vec<CheckReport> {
    let dir = tempfile::tempdir().unwrap();
    let paths = [dir.path().join("a.json"), dir.path().join("b.json")];
    for p in &paths {
        let o = tkklab()
            .arg("geometry")
            .arg(config("hexagon_f5.toml"))
            .arg("--seed")
            .arg(SEED.to_string())
            .arg("--out")
            .arg(p)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
    }
    let a = std::fs::read(&paths[0]).unwrap();
    let b = std::fs::read(&paths[1]).unwrap();
    let name = "two hexagon exports are byte-identical";
    vec![if a == b && !a.is_empty() {
        CheckReport::pass(name, a.len() as u64)
    } else {
        CheckReport::fail(name, 2, format!("{} vs {} bytes", a.len(), b.len()))
    }]
}

type Criterion = (&'static str, Option<Duration>, fn() -> Vec<CheckReport>);

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 10] = [
        ("axiom suite on five instances", secs(10), axiom_suite),
        ("TKK integrity", secs(30), tkk_integrity),
        ("epsilon/delta formulas and e+ image", None, epsilon_delta_suite),
        ("Jordan Moufang set over F_25", secs(60), jordan_moufang),
        ("quaternion Moufang set samples", secs(60), quaternion_moufang),
        ("generalized triangle from exchange(F_5)", secs(120), triangle),
        ("generalized hexagon from M(rank1, 1)/F_5", secs(600), hexagon),
        ("normalization to S+", secs(120), normalization),
        ("negative controls", None, negative_controls),
        ("deterministic geometry export", None, determinism),
    ];
    let mut failed = 0;
    for (k, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let reports = run();
        let elapsed = start.elapsed();
        let slow = limit.is_some_and(|l| elapsed > l);
        let ok = !slow && reports.iter().all(|r| r.status == Status::Pass);
        println!("criterion {:>2}: {} {title} ({} checks, {:.1}s)", k + 1, if ok { "PASS" } else { "FAIL" }, reports.len(), elapsed.as_secs_f64());
        if !ok {
            failed += 1;
            for r in reports.iter().filter(|r| r.status != Status::Pass) {
                println!("    {r}");
            }
            if slow {
                println!("    over the {:?} limit", limit.unwrap());
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
