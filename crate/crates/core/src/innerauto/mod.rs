//! Inner ideals, extremal elements, the exponential automorphisms e_σ(a,s), and the reduction
//! of minimal inner ideals to S₊.

mod automorphism;
mod checks;
mod reduction;

pub use automorphism::{bracket_violation, e_sigma, exp_ad, exp_t, Automorphism};
pub use checks::{
    check_assumption_v0, check_extremal_characterization, check_group_law, check_image_e_plus,
    check_inner_containing_skew, check_v_epsilon_lemmas, extremal_conditions, ExtremalConditions,
};
pub use reduction::{
    check_normalization, generator_set, normalize_to_splus, random_word, recover_params, GeneratorRecipe, NormalizeOptions, Recovery,
};

use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::tkk::TkkAlgebra;

/// First (r, s, k) with [b_r, [b_s, e_k]] ∉ I, over the RREF basis b of I.
pub fn inner_ideal_violation<F: Field>(l: &TkkAlgebra<F>, i: &Subspace<F>) -> Option<(usize, usize, usize)> {
    assert_eq!(i.ambient(), l.total_dim(), "ambient mismatch");
    let ads: Vec<_> = i.basis().iter().map(|b| l.ad(b)).collect();
    for (r, ar) in ads.iter().enumerate() {
        for (s, as_) in ads.iter().enumerate() {
            let m = ar.mul(as_);
            for k in 0..l.total_dim() {
                if !i.contains(&m.column(k)) {
                    return Some((r, s, k));
                }
            }
        }
    }
    None
}

pub fn is_inner_ideal<F: Field>(l: &TkkAlgebra<F>, i: &Subspace<F>) -> bool {
    inner_ideal_violation(l, i).is_none()
}

pub fn is_abelian<F: Field>(l: &TkkAlgebra<F>, i: &Subspace<F>) -> bool {
    let b = i.basis();
    let f = l.field();
    (0..b.len()).all(|r| (r + 1..b.len()).all(|s| f.vis_zero(&l.bracket(&b[r], &b[s]))))
}

/// [x, [x, L]] ⊆ span{x}.
pub fn is_extremal<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem]) -> Result<bool> {
    let f = l.field();
    let p = x
        .iter()
        .position(|c| !f.is_zero(c))
        .ok_or_else(|| Error::Precondition("extremality of the zero element".into()))?;
    let ad = l.ad(x);
    let sq = ad.mul(&ad);
    let xinv = f.inv(&x[p]).expect("nonzero");
    for k in 0..l.total_dim() {
        let w = sq.column(k);
        let c = f.mul(&w[p], &xinv);
        if f.vsub(&w, &f.vscale(&c, x)).iter().any(|e| !f.is_zero(e)) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_absolute_zero_divisor<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem]) -> bool {
    l.is_absolute_zero_divisor(x)
}

/// The smallest inner ideal containing the given vectors.
pub fn inner_closure<F: Field>(l: &TkkAlgebra<F>, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
    let f = l.field();
    let n = l.total_dim();
    let mut cur = Subspace::span(f, n, vectors).expect("consistent dims");
    loop {
        let Some((r, s, k)) = inner_ideal_violation(l, &cur) else {
            return cur;
        };
        let b = cur.basis();
        let w = l.bracket(&b[r], &l.bracket(&b[s], &l.basis_vector(k)));
        let mut vecs = cur.basis().to_vec();
        vecs.push(w);
        cur = Subspace::span(f, n, &vecs).expect("consistent dims");
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::structalg::instances;

    #[test]
    fn splus_and_mixed_ideals() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let splus = l.grade_space(2);
        assert!(is_inner_ideal(&l, &splus));
        assert!(is_abelian(&l, &splus));
        let mixed = Subspace::span(f, 8, &[l.a_plus(&[1, 0]), l.s_plus(&[1, 4]).unwrap()]).unwrap();
        assert!(is_inner_ideal(&l, &mixed));
        assert!(!is_abelian(&l, &Subspace::full(f, 8)));
        let sum = f.vadd(&l.a_plus(&[1, 1]), &l.a_minus(&[1, 0]));
        assert!(!is_extremal(&l, &sum).unwrap());
        assert!(inner_ideal_violation(&l, &Subspace::line(f, &sum)).is_some());
        assert!(is_extremal(&l, &l.s_plus(&[1, 4]).unwrap()).unwrap());
        assert!(is_extremal(&l, &[0; 8]).is_err());
    }

    #[test]
    fn hexagon_b_element_extremal() {
        let f = PrimeField::new(5).unwrap();
        let j = crate::cubic::CubicNormStructure::rank1(f).unwrap();
        let l = TkkAlgebra::build(&instances::matrix_structurable(&j, &1).unwrap()).unwrap();
        // [[3,2],[4,1]] in layout (k1, j1, j2, k2)
        assert!(is_extremal(&l, &l.a_plus(&[3, 2, 4, 1])).unwrap());
        let s = instances::matrix_skew_generator(l.algebra(), 1);
        let closure = inner_closure(&l, &[l.s_plus(&s).unwrap()]);
        assert_eq!(closure, l.grade_space(2));
    }
}
