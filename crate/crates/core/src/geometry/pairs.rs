use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Subspace};
use crate::innerauto::is_extremal;
use crate::tkk::TkkAlgebra;

/// Relative position of two extremal elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum PairClass {
    Identical,
    StronglyCommuting,
    Commuting,
    Special,
    Hyperbolic,
}

impl PairClass {
    /// The index i of the class E_i.
    pub fn index(&self) -> i32 {
        match self {
            PairClass::Identical => -2,
            PairClass::StronglyCommuting => -1,
            PairClass::Commuting => 0,
            PairClass::Special => 1,
            PairClass::Hyperbolic => 2,
        }
    }
}

/// Every nonzero λx + μy extremal. Over a finite field all ratios are tried. Otherwise the
/// condition is a polynomial identity of degree ≤ 3 in λ (for μ = 1), so five values of λ
/// together with y itself decide it.
pub fn strongly_commuting<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Result<bool> {
    let f = l.field();
    if !f.vis_zero(&l.bracket(x, y)) {
        return Ok(false);
    }
    if !is_extremal(l, y)? {
        return Ok(false);
    }
    let lambdas: Vec<F::Elem> = match f.elements() {
        Ok(all) => all,
        Err(_) => (0..5).map(|k| f.from_i64(k)).collect(),
    };
    for lam in lambdas {
        let z = f.vadd(&f.vscale(&lam, x), y);
        if f.vis_zero(&z) {
            continue;
        }
        if !is_extremal(l, &z)? {
            return Ok(false);
        }
    }
    is_extremal(l, x)
}

pub fn classify_pair<F: Field>(l: &TkkAlgebra<F>, x: &[F::Elem], y: &[F::Elem]) -> Result<PairClass> {
    let f = l.field();
    if !is_extremal(l, x)? || !is_extremal(l, y)? {
        return Err(Error::Precondition("classify_pair needs extremal elements".into()));
    }
    if Subspace::line(f, x) == Subspace::line(f, y) {
        return Ok(PairClass::Identical);
    }
    let xy = l.bracket(x, y);
    if f.vis_zero(&xy) {
        return Ok(if strongly_commuting(l, x, y)? { PairClass::StronglyCommuting } else { PairClass::Commuting });
    }
    Ok(if f.vis_zero(&l.bracket(x, &xy)) { PairClass::Special } else { PairClass::Hyperbolic })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::PrimeField;
    use crate::structalg::instances;

    #[test]
    fn basic_classes() {
        let f = PrimeField::new(5).unwrap();
        let l = TkkAlgebra::build(&instances::exchange_field(f)).unwrap();
        let s = [1, 4];
        let sp = l.s_plus(&s).unwrap();
        assert_eq!(classify_pair(&l, &sp, &f.vscale(&3, &sp)).unwrap(), PairClass::Identical);
        let shat = l.algebra().conjugate_inverse(&s).unwrap();
        let sm = l.s_minus(&shat).unwrap();
        assert_eq!(classify_pair(&l, &sp, &sm).unwrap(), PairClass::Hyperbolic);
    }

    #[test]
    fn hexagon_line_through_splus() {
        let f = PrimeField::new(5).unwrap();
        let j = crate::cubic::CubicNormStructure::rank1(f).unwrap();
        let l = TkkAlgebra::build(&instances::matrix_structurable(&j, &1).unwrap()).unwrap();
        let s = instances::matrix_skew_generator(l.algebra(), 1);
        let c = classify_pair(&l, &l.s_plus(&s).unwrap(), &l.a_plus(&[3, 2, 4, 1])).unwrap();
        assert_eq!(c, PairClass::StronglyCommuting);
    }
}
