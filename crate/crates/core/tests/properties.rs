use proptest::prelude::*;

use tkklab::cubic::CubicNormStructure;
use tkklab::exactlin::{ExtensionField, Field, PrimeField, Subspace};
use tkklab::geometry::{decompose_e_minus, HexagonContext};
use tkklab::innerauto::{bracket_violation, e_sigma, Automorphism};
use tkklab::structalg::instances;
use tkklab::tkk::TkkAlgebra;

fn f5() -> PrimeField {
    PrimeField::new(5).unwrap()
}

fn hexagon() -> HexagonContext<PrimeField> {
    HexagonContext::new(CubicNormStructure::rank1(f5()).unwrap(), &f5().one()).unwrap()
}

fn elems(v: &[u32]) -> Vec<u32> {
    v.iter().map(|&c| c % 5).collect()
}

/// Random elements of the skew space of `l`, from coefficient vectors.
fn skew<F: Field>(l: &TkkAlgebra<F>, coeffs: &[u32]) -> Vec<F::Elem> {
    let f = l.field();
    let alg = l.algebra();
    let mut s = f.vzero(alg.dim());
    for (b, &c) in alg.skew().basis().iter().zip(coeffs) {
        f.vaxpy(&mut s, &f.from_i64(c as i64), b);
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn e_sigma_group_law(a in prop::collection::vec(0u32..5, 4), b in prop::collection::vec(0u32..5, 4),
                         s in prop::collection::vec(0u32..5, 1), t in prop::collection::vec(0u32..5, 1),
                         minus in any::<bool>()) {
        let ctx = hexagon();
        let l = &ctx.l;
        let f = l.field();
        let sigma = if minus { -1 } else { 1 };
        let (a, b, s, t) = (elems(&a), elems(&b), skew(l, &s), skew(l, &t));
        // e(a,s) ∘ e(b,t), written as a product in the fg = g∘f convention
        let lhs = e_sigma(l, &b, &t, sigma).unwrap().then(&e_sigma(l, &a, &s, sigma).unwrap());
        let mut u = f.vadd(&s, &t);
        f.vaxpy(&mut u, &f.half(), &l.algebra().psi(&a, &b));
        let rhs = e_sigma(l, &f.vadd(&a, &b), &u, sigma).unwrap();
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn e_sigma_preserves_bracket(a in prop::collection::vec(0u32..5, 4), s in prop::collection::vec(0u32..5, 1)) {
        let ctx = hexagon();
        let g = e_sigma(&ctx.l, &elems(&a), &skew(&ctx.l, &s), 1).unwrap();
        prop_assert_eq!(bracket_violation(&ctx.l, g.matrix()), None);
    }

    #[test]
    fn e_minus_decomposition_round_trip(p in prop::collection::vec(0u32..5, 5)) {
        let ctx = hexagon();
        let params: Vec<Vec<u32>> = p.iter().map(|&c| vec![c]).collect();
        let mut g = Automorphism::identity(&ctx.l);
        for (i, q) in (2..=6).zip(&params) {
            g = g.then(&ctx.root_element(i, q).unwrap());
        }
        let got = decompose_e_minus(&ctx, &g).unwrap().expect("product lies in E-");
        prop_assert_eq!(&got[2..=6], &params[..]);
    }

    #[test]
    fn root_elements_are_additive(i in 1usize..=6, p in 0u32..5, q in 0u32..5) {
        let ctx = hexagon();
        let f = ctx.field();
        let x = |c: u32| ctx.root_element(i, &[c]).unwrap();
        let (lhs, rhs) = (x(p).then(&x(q)), x(f.add(&p, &q)));
        prop_assert_eq!(lhs.matrix(), rhs.matrix());
    }

    #[test]
    fn extension_field_inverse(a0 in 0u32..5, a1 in 0u32..5) {
        // F_25 = F_5[t]/(t^2 + 2), since 3 is not a square mod 5
        let f = ExtensionField::new(5, &[2, 0]).unwrap();
        let x = [a0, a1, 0, 0];
        if x != f.zero() {
            let y = f.inv(&x).unwrap();
            prop_assert_eq!(f.mul(&x, &y), f.one());
        }
    }

    #[test]
    fn automorphism_images_of_subspaces_are_canonical(a in prop::collection::vec(0u32..5, 2), c in 1u32..5) {
        let f = f5();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let g = e_sigma(&l, &elems(&a), &f.vzero(2), 1).unwrap();
        let splus = l.grade_space(2);
        // rescaling the spanning vector does not change the canonical image
        let scaled = Subspace::span(f, l.total_dim(), &[f.vscale(&c, &splus.basis()[0])]).unwrap();
        prop_assert_eq!(g.apply_subspace(&splus), g.apply_subspace(&scaled));
    }
}

#[test]
fn hexagon_line_strategies_agree() {
    use tkklab::geometry::{build_hexagon, HexagonOptions, LineStrategy};
    let ctx = hexagon();
    let build = |lines| build_hexagon(&ctx, &HexagonOptions { budget: 10_000_000, lines }).unwrap();
    let (a, b) = (build(LineStrategy::PairScan), build(LineStrategy::LineOrbit));
    assert_eq!(a.lines.len(), 3906);
    assert_eq!(a.points, b.points);
    assert_eq!(a.lines, b.lines);
}
