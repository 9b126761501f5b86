//! Identity checks on algebras: the structurable identity, alternativity, the skewer map
//! and the ε/δ formulas.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::algebra::Algebra;
use crate::exactlin::{Field, Matrix};
use crate::report::CheckReport;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    /// every basis tuple (a proof by multilinearity)
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
}

/// The structurable identity [V_{x,y},V_{z,w}] = V_{V_{x,y}z, w} − V_{z, V_{y,x}w},
/// together with the unit and involution axioms.
pub fn check_structurable<F: Field>(a: &Algebra<F>, mode: CheckMode) -> CheckReport {
    let name = format!("structurable identity ({})", a.tag());
    if let Some(w) = a.basic_axiom_violation() {
        return CheckReport::fail(name, 0, w);
    }
    let f = a.field();
    let n = a.dim();
    match mode {
        CheckMode::Exhaustive => {
            let v = a.v_basis_ops();
            let mut checked = 0u64;
            for i in 0..n {
                for j in 0..n {
                    let vij = &v[i * n + j];
                    let vji = &v[j * n + i];
                    for k in 0..n {
                        let vij_ek = vij.column(k);
                        for l in 0..n {
                            checked += 1;
                            let lhs = vij.commutator(&v[k * n + l]);
                            let mut rhs = Matrix::zeros(f, n, n);
                            for (m, c) in vij_ek.iter().enumerate() {
                                rhs.axpy(c, &v[m * n + l]);
                            }
                            let vji_el = vji.column(l);
                            for (m, c) in vji_el.iter().enumerate() {
                                rhs.axpy(&f.neg(c), &v[k * n + m]);
                            }
                            if lhs != rhs {
                                let lb = a.labels();
                                return CheckReport::fail(
                                    name,
                                    checked,
                                    format!("basis quadruple (x,y,z,w) = ({}, {}, {}, {})", lb[i], lb[j], lb[k], lb[l]),
                                );
                            }
                        }
                    }
                }
            }
            CheckReport::pass(name, checked)
        }
        CheckMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for t in 0..samples {
                let x = f.vrandom(n, &mut rng);
                let y = f.vrandom(n, &mut rng);
                let z = f.vrandom(n, &mut rng);
                let w = f.vrandom(n, &mut rng);
                let vxy = a.v_op(&x, &y);
                let lhs = vxy.commutator(&a.v_op(&z, &w));
                let rhs = a.v_op(&vxy.mul_vec(&z), &w).sub(&a.v_op(&z, &a.v_op(&y, &x).mul_vec(&w)));
                if lhs != rhs {
                    return CheckReport::fail(
                        name,
                        t as u64 + 1,
                        format!(
                            "sample {t} (seed {seed}): x={}, y={}, z={}, w={}",
                            f.vformat(&x),
                            f.vformat(&y),
                            f.vformat(&z),
                            f.vformat(&w)
                        ),
                    );
                }
            }
            CheckReport::pass(name, samples as u64)
        }
    }
}

/// Alternativity of a candidate composition algebra: alternating associator on basis triples,
/// e⁻¹(ef) = f = (fe)e⁻¹ and (fef)g = f(e(fg)) on seeded samples.
pub fn check_alternative<F: Field>(a: &Algebra<F>, samples: usize, seed: u64) -> CheckReport {
    let name = format!("alternative identities ({})", a.tag());
    let f = a.field();
    let n = a.dim();
    let assoc = |x: &[F::Elem], y: &[F::Elem], z: &[F::Elem]| {
        f.vsub(&a.mul(&a.mul(x, y), z), &a.mul(x, &a.mul(y, z)))
    };
    let mut checked = 0u64;
    let lb = a.labels();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                checked += 1;
                let (x, y, z) = (a.basis_vector(i), a.basis_vector(j), a.basis_vector(k));
                let base = assoc(&x, &y, &z);
                // swapping any two arguments must negate the associator
                let swaps = [assoc(&y, &x, &z), assoc(&x, &z, &y), assoc(&z, &y, &x)];
                if swaps.iter().any(|s| f.vadd(s, &base) != f.vzero(n)) {
                    return CheckReport::fail(
                        name,
                        checked,
                        format!("associator not alternating on ({}, {}, {})", lb[i], lb[j], lb[k]),
                    );
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..samples {
        let e = f.vrandom(n, &mut rng);
        let g = f.vrandom(n, &mut rng);
        let h = f.vrandom(n, &mut rng);
        checked += 1;
        let lhs = a.mul(&a.mul(&a.mul(&g, &e), &g), &h);
        let rhs = a.mul(&g, &a.mul(&e, &a.mul(&g, &h)));
        if lhs != rhs {
            return CheckReport::fail(
                name,
                checked,
                format!("(fef)g != f(e(fg)) at sample {t}: e={}, f={}, g={}", f.vformat(&e), f.vformat(&g), f.vformat(&h)),
            );
        }
        // two-sided inverse of e, if any
        let Some(einv) = a.left(&e).solve(a.unit()).ok().flatten() else { continue };
        if a.mul(&einv, &e) != a.unit() {
            continue;
        }
        if a.mul(&einv, &a.mul(&e, &g)) != g || a.mul(&a.mul(&g, &e), &einv) != g {
            return CheckReport::fail(
                name,
                checked,
                format!("inverse identity fails at sample {t}: e={}, f={}", f.vformat(&e), f.vformat(&g)),
            );
        }
    }
    CheckReport::pass(name, checked)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiRank {
    pub rank: usize,
    pub nondegenerate: bool,
}

/// Rank of x ↦ ψ(x, ·) as a map A → Hom(A, S); non-degenerate iff it is injective.
pub fn psi_gram_rank<F: Field>(a: &Algebra<F>) -> PsiRank {
    let f = a.field();
    let n = a.dim();
    let cols: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| {
            let x = a.basis_vector(i);
            (0..n).flat_map(|j| a.psi(&x, &a.basis_vector(j))).collect()
        })
        .collect();
    let m = Matrix::from_columns(f, n * n, &cols).expect("consistent");
    let rank = m.rank();
    PsiRank { rank, nondegenerate: rank == n }
}

/// V_{a,b}(c) = V_{c,b}(a) + ψ(a,c)b on all basis triples.
pub fn check_v_symmetry<F: Field>(a: &Algebra<F>) -> CheckReport {
    let name = format!("V-operator symmetry ({})", a.tag());
    let f = a.field();
    let n = a.dim();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                checked += 1;
                let (x, y, z) = (a.basis_vector(i), a.basis_vector(j), a.basis_vector(k));
                let lhs = a.v_apply(&x, &y, &z);
                let rhs = f.vadd(&a.v_apply(&z, &y, &x), &a.mul(&a.psi(&x, &z), &y));
                if lhs != rhs {
                    let lb = a.labels();
                    return CheckReport::fail(name, checked, format!("({}, {}, {})", lb[i], lb[j], lb[k]));
                }
            }
        }
    }
    CheckReport::pass(name, checked)
}

/// ψ(e_i, e_j) is skew for all basis pairs.
pub fn check_psi_skew<F: Field>(a: &Algebra<F>) -> CheckReport {
    let name = format!("skewer map lands in S ({})", a.tag());
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            if !a.is_skew(&a.psi(&a.basis_vector(i), &a.basis_vector(j))) {
                let lb = a.labels();
                return CheckReport::fail(name, (i * n + j + 1) as u64, format!("({}, {})", lb[i], lb[j]));
            }
        }
    }
    CheckReport::pass(name, (n * n) as u64)
}

/// The four ε/δ formulas on all basis tuples:
/// V_{x,y}^ε = −V_{y,x}; V_{x,y}^δ(s) = −ψ(x, sy); (L_rL_t)^ε = −L_tL_r; (L_rL_t)^δ(s) = s(tr) + r(ts).
pub fn check_epsilon_delta_formulas<F: Field>(a: &Algebra<F>) -> CheckReport {
    let name = format!("epsilon/delta formulas ({})", a.tag());
    let f = a.field();
    let n = a.dim();
    let lb = a.labels();
    let skew: Vec<Vec<F::Elem>> = a.skew().basis().to_vec();
    let v = a.v_basis_ops();
    let mut checked = 0;
    for i in 0..n {
        for j in 0..n {
            checked += 1;
            let (x, y) = (a.basis_vector(i), a.basis_vector(j));
            let vxy = &v[i * n + j];
            if a.epsilon(vxy) != v[j * n + i].neg() {
                return CheckReport::fail(name, checked, format!("V^eps != -V_(y,x) at ({}, {})", lb[i], lb[j]));
            }
            let vd = a.delta(vxy);
            for (si, s) in skew.iter().enumerate() {
                checked += 1;
                let lhs = vd.mul_vec(s);
                let rhs = f.vneg(&a.psi(&x, &a.mul(s, &y)));
                if lhs != rhs {
                    return CheckReport::fail(
                        name,
                        checked,
                        format!("V^delta(s) != -psi(x, sy) at ({}, {}, skew basis {si})", lb[i], lb[j]),
                    );
                }
            }
        }
    }
    for (ri, r) in skew.iter().enumerate() {
        for (ti, t) in skew.iter().enumerate() {
            checked += 1;
            let lrlt = a.left(r).mul(&a.left(t));
            if a.epsilon(&lrlt) != a.left(t).mul(&a.left(r)).neg() {
                return CheckReport::fail(name, checked, format!("(L_r L_t)^eps != -L_t L_r at skew basis ({ri}, {ti})"));
            }
            let d = a.delta(&lrlt);
            for (si, s) in skew.iter().enumerate() {
                checked += 1;
                let rhs = f.vadd(&a.mul(s, &a.mul(t, r)), &a.mul(r, &a.mul(t, s)));
                if d.mul_vec(s) != rhs {
                    return CheckReport::fail(
                        name,
                        checked,
                        format!("(L_r L_t)^delta(s) != s(tr) + r(ts) at skew basis ({ri}, {si}, {ti})"),
                    );
                }
            }
        }
    }
    CheckReport::pass(name, checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubic::CubicNormStructure;
    use crate::exactlin::{PrimeField, Rationals};
    use crate::structalg::instances;
    use proptest::prelude::*;

    fn m_rank1() -> Algebra<PrimeField> {
        let f = PrimeField::new(5).unwrap();
        instances::matrix_structurable(&CubicNormStructure::rank1(f).unwrap(), &1).unwrap()
    }

    #[test]
    fn standard_instances_are_structurable() {
        let f = PrimeField::new(5).unwrap();
        assert!(check_structurable(&instances::exchange_field(f), CheckMode::Exhaustive).passed());
        assert!(check_structurable(&m_rank1(), CheckMode::Exhaustive).passed());
        let q = Rationals;
        let h = instances::hurwitz_with_involution(q, &[q.from_i64(-1), q.from_i64(-1)]).unwrap();
        assert!(check_structurable(&h, CheckMode::Exhaustive).passed());
        assert!(check_structurable(&h, CheckMode::Sampled { samples: 5, seed: 1 }).passed());
    }

    #[test]
    fn corrupted_exchange_fails_with_witness() {
        let f = PrimeField::new(5).unwrap();
        let a = instances::exchange_field(f);
        let bad = a.with_corrupted_constant(0, 1, 1, &1);
        let r = check_structurable(&bad, CheckMode::Exhaustive);
        assert!(!r.passed());
        assert!(r.witness.is_some());
    }

    #[test]
    fn alternative_checks() {
        let f = PrimeField::new(5).unwrap();
        assert!(check_alternative(&instances::ground_field(f), 20, 0).passed());
        let q = Rationals;
        let m1 = q.from_i64(-1);
        let h = instances::cayley_dickson(q, &[m1.clone(), m1.clone()]).unwrap();
        assert!(check_alternative(&h, 20, 0).passed());
        let o = instances::cayley_dickson(q, &[m1.clone(), m1.clone(), m1.clone()]).unwrap();
        assert!(check_alternative(&o, 10, 0).passed());
        // flip the sign of one product of imaginary units
        let c = o.structure_constant(1, 2, 3).clone();
        assert!(!q.is_zero(&c));
        let bad = o.with_corrupted_constant(1, 2, 3, &q.neg(&q.mul(&q.from_i64(2), &c)));
        assert!(!check_alternative(&bad, 10, 0).passed());
    }

    #[test]
    fn psi_ranks() {
        let f = PrimeField::new(5).unwrap();
        assert!(psi_gram_rank(&instances::exchange_field(f)).nondegenerate);
        assert!(psi_gram_rank(&m_rank1()).nondegenerate);
        let j = instances::jordan_extension(f, &[3, 0]).unwrap();
        assert_eq!(psi_gram_rank(&j), PsiRank { rank: 0, nondegenerate: false });
    }

    #[test]
    fn formulas_hold_on_instances() {
        let f = PrimeField::new(5).unwrap();
        for a in [instances::exchange_field(f), m_rank1(), instances::jordan_extension(f, &[3, 0]).unwrap()] {
            assert!(check_v_symmetry(&a).passed());
            assert!(check_psi_skew(&a).passed());
            assert!(check_epsilon_delta_formulas(&a).passed());
        }
    }

    proptest! {
        #[test]
        fn v_aa_is_left_mult(x in proptest::collection::vec(0u32..5, 4)) {
            let a = m_rank1();
            let xb = a.involute(&x);
            prop_assert_eq!(a.v_op(&x, &x), a.left(&a.mul(&x, &xb)));
        }

        #[test]
        fn u_one_formula(b in proptest::collection::vec(0u32..5, 4)) {
            let a = m_rank1();
            let f = a.field();
            let u1b = a.u_op(a.unit()).mul_vec(&b);
            let expect = f.vsub(&f.vscale(&2, &a.involute(&b)), &b);
            prop_assert_eq!(u1b, expect);
        }

        #[test]
        fn conjugate_inverse_round_trip(x in proptest::collection::vec(0u32..5, 4)) {
            let a = m_rank1();
            if let Some(w) = a.conjugate_inverse(&x) {
                prop_assert_eq!(a.conjugate_inverse(&w), Some(x));
            }
        }
    }
}
