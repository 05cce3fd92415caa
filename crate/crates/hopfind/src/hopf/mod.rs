//! Finite-dimensional Hopf algebras as structure-constant data.
//!
//! A [`HopfAlgebra`] stores, over a fixed basis `e_0, ..., e_{d-1}`:
//!
//! * the multiplication tensor `mult[i][j]` = coordinates of `e_i * e_j`,
//! * the coordinates of the unit element,
//! * the comultiplication tensor `comult[i]` = terms of `Delta(e_i)`,
//! * the counit functional,
//! * the antipode and its inverse as matrices.
//!
//! Structure tensors are sparse: on the built-in families the product of two
//! basis monomials is a scalar multiple of a single basis monomial and
//! `Delta` of a basis element has few terms, which is what keeps the
//! dimension-125 computations fast.
//!
//! Nothing in this type assumes the data actually satisfies the Hopf axioms;
//! [`verify_axioms`] checks all of them exactly and reports a witness basis
//! index for any failure.

mod axioms;
mod derived;
mod double;
mod families;

pub use axioms::{verify_axioms, AxiomCheck, AxiomReport};
pub use derived::{derived, tensor, Derived};
pub use double::drinfeld_double;
pub use families::{
    cyclic_cayley, gr_uqsl2, group_algebra, group_algebra_with_identity, product_cayley,
    s3_cayley, taft,
};

use thiserror::Error;

use crate::cyclotomic::{lcm64, CycNumber};
use crate::linalg::{sparse_normalize, Matrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HopfError {
    #[error("not a group table: {0}")]
    NotAGroup(String),
    #[error("group table of size {0} exceeds the exhaustive validation bound 64")]
    GroupTooLarge(usize),
    #[error("omega must have multiplicative order exactly {expected}, found {found:?}")]
    WrongOrder { expected: u64, found: Option<u64> },
    #[error("N must be odd and greater than 1, got {0}")]
    EvenOrder(u64),
    #[error("N must be greater than 1, got {0}")]
    DegenerateN(u64),
    #[error("inconsistent structure data: {0}")]
    BadStructure(String),
    #[error("antipode construction failed verification: {0}")]
    AntipodeConstruction(String),
}

/// Degree bound metadata for the recurrence analysis of a built-in family:
/// the exponent of the grouplikes and a Loewy-length bound. The sequence of
/// Sweedler power maps is then annihilated by `(X^e - 1)^loewy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecurrenceHint {
    pub exponent: u64,
    pub loewy: usize,
}

/// A finite-dimensional Hopf algebra given by exact structure constants.
#[derive(Clone)]
pub struct HopfAlgebra {
    pub(crate) dim: usize,
    pub(crate) conductor: u64,
    pub(crate) mult: Vec<Vec<SparseVec>>,
    pub(crate) unit: Vec<CycNumber>,
    pub(crate) comult: Vec<Vec<(usize, usize, CycNumber)>>,
    pub(crate) counit: Vec<CycNumber>,
    pub(crate) antipode: Matrix,
    pub(crate) antipode_inv: Matrix,
    pub(crate) basis_labels: Option<Vec<String>>,
    pub(crate) name: String,
    pub(crate) hint: Option<RecurrenceHint>,
}

/// An endomorphism of the underlying vector space of a Hopf algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    pub matrix: Matrix,
}

impl LinearMap {
    pub fn from_sparse_cols(dim: usize, cols: &[SparseVec], conductor: u64) -> Self {
        LinearMap {
            matrix: Matrix::from_sparse_cols(dim, cols, conductor),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> CycNumber {
        self.matrix.trace()
    }
}

impl HopfAlgebra {
    /// Assembles an algebra from raw parts, checking shapes only (not the
    /// Hopf axioms; see [`verify_axioms`]). The antipode inverse may be
    /// omitted, in which case the matrix inverse is taken.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        dim: usize,
        conductor: u64,
        mult: Vec<Vec<SparseVec>>,
        unit: Vec<CycNumber>,
        comult: Vec<Vec<(usize, usize, CycNumber)>>,
        counit: Vec<CycNumber>,
        antipode: Matrix,
        antipode_inv: Option<Matrix>,
        basis_labels: Option<Vec<String>>,
        name: String,
    ) -> Result<Self, HopfError> {
        if dim == 0 {
            return Err(HopfError::BadStructure("dimension must be positive".into()));
        }
        let shape_err = |what: &str| HopfError::BadStructure(format!("{what} has wrong shape"));
        if mult.len() != dim || mult.iter().any(|row| row.len() != dim) {
            return Err(shape_err("multiplication tensor"));
        }
        for row in &mult {
            for cell in row {
                if cell.iter().any(|(k, _)| *k >= dim) {
                    return Err(shape_err("multiplication tensor index"));
                }
            }
        }
        if unit.len() != dim || counit.len() != dim {
            return Err(shape_err("unit/counit vector"));
        }
        if comult.len() != dim
            || comult
                .iter()
                .any(|terms| terms.iter().any(|(j, k, _)| *j >= dim || *k >= dim))
        {
            return Err(shape_err("comultiplication tensor"));
        }
        if antipode.nrows() != dim || antipode.ncols() != dim {
            return Err(shape_err("antipode matrix"));
        }
        if let Some(labels) = &basis_labels {
            if labels.len() != dim {
                return Err(shape_err("basis labels"));
            }
        }
        let antipode_inv = match antipode_inv {
            Some(m) => {
                if m.nrows() != dim || m.ncols() != dim {
                    return Err(shape_err("antipode inverse"));
                }
                m
            }
            None => antipode.inverse().ok_or_else(|| {
                HopfError::BadStructure("antipode matrix is singular".into())
            })?,
        };
        Ok(HopfAlgebra {
            dim,
            conductor,
            mult,
            unit,
            comult,
            counit,
            antipode,
            antipode_inv,
            basis_labels,
            name,
            hint: None,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis_labels(&self) -> Option<&[String]> {
        self.basis_labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.basis_labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn recurrence_hint(&self) -> Option<RecurrenceHint> {
        self.hint
    }

    pub fn antipode_matrix(&self) -> &Matrix {
        &self.antipode
    }

    pub fn antipode_inv_matrix(&self) -> &Matrix {
        &self.antipode_inv
    }

    pub fn unit_vector(&self) -> &[CycNumber] {
        &self.unit
    }

    pub fn counit_vector(&self) -> &[CycNumber] {
        &self.counit
    }

    pub fn comult_terms(&self, i: usize) -> &[(usize, usize, CycNumber)] {
        &self.comult[i]
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    pub fn unit_sparse(&self) -> SparseVec {
        crate::linalg::sparse_from_dense(&self.unit)
    }

    /// Product of two sparse vectors through the multiplication tensor.
    pub fn product(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (i, x) in a {
            for (j, y) in b {
                let xy = x * y;
                for (k, c) in &self.mult[*i][*j] {
                    out.push((*k, &xy * c));
                }
            }
        }
        sparse_normalize(out)
    }

    /// `v * e_j` for a sparse vector `v`.
    pub fn product_vec_basis(&self, v: &SparseVec, j: usize) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (i, x) in v {
            for (k, c) in &self.mult[*i][j] {
                out.push((*k, x * c));
            }
        }
        sparse_normalize(out)
    }

    /// `e_i * v` for a sparse vector `v`.
    pub fn product_basis_vec(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out: SparseVec = Vec::new();
        for (j, x) in v {
            for (k, c) in &self.mult[i][*j] {
                out.push((*k, x * c));
            }
        }
        sparse_normalize(out)
    }

    pub fn counit_of(&self, v: &SparseVec) -> CycNumber {
        let mut acc = CycNumber::zero(self.conductor);
        for (i, c) in v {
            if !self.counit[*i].is_zero() {
                acc = &acc + &(c * &self.counit[*i]);
            }
        }
        acc
    }

    /// Matrix of left multiplication by `e_i`.
    pub fn left_mult_matrix(&self, i: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.mult[i][j].clone()).collect();
        Matrix::from_sparse_cols(self.dim, &cols, self.conductor)
    }

    /// Matrix of right multiplication by `e_i`.
    pub fn right_mult_matrix(&self, i: usize) -> Matrix {
        let cols: Vec<SparseVec> = (0..self.dim).map(|j| self.mult[j][i].clone()).collect();
        Matrix::from_sparse_cols(self.dim, &cols, self.conductor)
    }

    /// Sparse column of the antipode.
    pub fn antipode_col(&self, j: usize) -> SparseVec {
        self.antipode.sparse_column(j)
    }

    pub fn antipode_inv_col(&self, j: usize) -> SparseVec {
        self.antipode_inv.sparse_column(j)
    }

    /// Unifies two algebras' scalar conductors, for componentwise
    /// constructions.
    pub(crate) fn common_conductor(&self, other: &Self) -> u64 {
        lcm64(self.conductor, other.conductor)
    }
}

impl std::fmt::Debug for HopfAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "HopfAlgebra({}, dim {}, conductor {})",
            self.name, self.dim, self.conductor
        )
    }
}
