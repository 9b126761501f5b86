use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Subspace};

/// A finite-dimensional unital algebra with involution, given by structure constants.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    dim: usize,
    /// c[(i*dim + j)*dim + k] is the e_k coefficient of e_i·e_j
    table: Vec<F::Elem>,
    /// nonzero (k, c) pairs of e_i·e_j, indexed by i*dim + j
    sparse: Vec<Vec<(usize, F::Elem)>>,
    involution: Matrix<F>,
    unit: Vec<F::Elem>,
    tag: String,
    labels: Vec<String>,
    skew: Subspace<F>,
    hermitian: Subspace<F>,
}

impl<F: Field> Algebra<F> {
    /// Builds and validates: unit is two-sided, involution is an involutive anti-automorphism.
    pub fn new(
        field: F,
        dim: usize,
        table: Vec<F::Elem>,
        involution: Matrix<F>,
        unit: Vec<F::Elem>,
        tag: &str,
    ) -> Result<Self> {
        let a = Self::new_unchecked(field, dim, table, involution, unit, tag)?;
        if let Some(w) = a.basic_axiom_violation() {
            return Err(Error::InvalidInstance(format!("{tag}: {w}")));
        }
        Ok(a)
    }

    /// Builds without validating the unit and involution axioms (used for deliberate corruption).
    pub fn new_unchecked(
        field: F,
        dim: usize,
        table: Vec<F::Elem>,
        involution: Matrix<F>,
        unit: Vec<F::Elem>,
        tag: &str,
    ) -> Result<Self> {
        if table.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: table.len() });
        }
        if involution.rows() != dim || involution.cols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: involution.rows() });
        }
        if unit.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: unit.len() });
        }
        let sparse = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &table[ij * dim + k];
                        (!field.is_zero(c)).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        let id = Matrix::identity(field, dim);
        let skew_vecs = involution.add(&id).kernel();
        let herm_vecs = involution.sub(&id).kernel();
        let skew = Subspace::span(field, dim, &skew_vecs)?;
        let hermitian = Subspace::span(field, dim, &herm_vecs)?;
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        Ok(Algebra {
            field,
            dim,
            table,
            sparse,
            involution,
            unit,
            tag: tag.to_string(),
            labels,
            skew,
            hermitian,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// Copy with one structure constant shifted by `delta`, without any validation.
    pub fn with_corrupted_constant(&self, i: usize, j: usize, k: usize, delta: &F::Elem) -> Self {
        let mut table = self.table.clone();
        let idx = (i * self.dim + j) * self.dim + k;
        table[idx] = self.field.add(&table[idx], delta);
        Self::new_unchecked(self.field, self.dim, table, self.involution.clone(), self.unit.clone(), &self.tag)
            .expect("same shape")
            .with_labels(self.labels.clone())
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn tag(&self) -> &str {
        &self.tag
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &[F::Elem] {
        &self.unit
    }
    pub fn involution_matrix(&self) -> &Matrix<F> {
        &self.involution
    }
    pub fn table(&self) -> &[F::Elem] {
        &self.table
    }
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        &self.table[(i * self.dim + j) * self.dim + k]
    }
    /// The skew elements S (−1 eigenspace of the involution).
    pub fn skew(&self) -> &Subspace<F> {
        &self.skew
    }
    /// The hermitian elements H (+1 eigenspace of the involution).
    pub fn hermitian(&self) -> &Subspace<F> {
        &self.hermitian
    }
    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        self.field.unit_vec(self.dim, i)
    }

    pub fn mul(&self, x: &[F::Elem], y: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(x.len(), self.dim, "dimension mismatch");
        assert_eq!(y.len(), self.dim, "dimension mismatch");
        let f = self.field;
        let mut out = f.vzero(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if f.is_zero(xi) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if f.is_zero(yj) {
                    continue;
                }
                let c = f.mul(xi, yj);
                for (k, s) in &self.sparse[i * self.dim + j] {
                    out[*k] = f.add(&out[*k], &f.mul(&c, s));
                }
            }
        }
        out
    }

    pub fn involute(&self, x: &[F::Elem]) -> Vec<F::Elem> {
        self.involution.mul_vec(x)
    }

    /// x = h + s with h hermitian and s skew.
    pub fn split_hs(&self, x: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = self.field;
        let xb = self.involute(x);
        let half = f.half();
        let h = f.vscale(&half, &f.vadd(x, &xb));
        let s = f.vscale(&half, &f.vsub(x, &xb));
        (h, s)
    }

    pub fn is_skew(&self, x: &[F::Elem]) -> bool {
        let f = self.field;
        f.vis_zero(&f.vadd(x, &self.involute(x)))
    }

    /// First violated basic axiom (unit, involutivity, anti-multiplicativity), if any.
    pub fn basic_axiom_violation(&self) -> Option<String> {
        let f = self.field;
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Some(format!("unit is not two-sided on basis element {}", self.labels[i]));
            }
        }
        if !self.involution.mul(&self.involution).is_identity() {
            return Some("involution is not of order 2".into());
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let (ei, ej) = (self.basis_vector(i), self.basis_vector(j));
                let lhs = self.involute(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.involute(&ej), &self.involute(&ei));
                if lhs != rhs {
                    return Some(format!(
                        "involution is not an anti-homomorphism on ({}, {}): {} vs {}",
                        self.labels[i],
                        self.labels[j],
                        f.vformat(&lhs),
                        f.vformat(&rhs)
                    ));
                }
            }
        }
        None
    }

    pub fn format(&self, x: &[F::Elem]) -> String {
        let f = self.field;
        let terms: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                if f.is_one(c) {
                    self.labels[i].clone()
                } else {
                    format!("{}*{}", f.format(c), self.labels[i])
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}
