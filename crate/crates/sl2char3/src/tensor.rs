//! Tensor products and weight-space machinery.
//!
//! The tensor product uses the Kronecker convention with the left factor as
//! the outer index: `e_i (x) f_j` is basis vector `i * m + j`.

use thiserror::Error;

use crate::field::Fe;
use crate::linalg::{Mat, Subspace};
use crate::sl2::Rep;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("factors belong to different field contexts")]
    ContextMismatch,
    #[error("H is not diagonalizable over the field")]
    NotDiagonalizable,
    #[error("no weight space for the requested weight")]
    NotAWeight,
    #[error("X+X- does not preserve a weight space")]
    NotInvariant,
}

/// Weight spaces of a module, sorted by weight encoding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDecomp {
    pub spaces: Vec<(Fe, Subspace)>,
}

impl WeightDecomp {
    pub fn get(&self, weight: Fe) -> Option<&Subspace> {
        self.spaces.iter().find(|(w, _)| *w == weight).map(|(_, s)| s)
    }

    pub fn weights(&self) -> Vec<Fe> {
        self.spaces.iter().map(|(w, _)| *w).collect()
    }

    /// Weight of a vector lying in a single weight space.
    pub fn weight_of(&self, v: &[Fe]) -> Option<Fe> {
        self.spaces.iter().find(|(_, s)| s.contains(v)).map(|(w, _)| *w)
    }
}

/// Highest and lowest weight vectors, grouped by weight. Weights with no
/// such vectors are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalVectors {
    pub highest: Vec<(Fe, Subspace)>,
    pub lowest: Vec<(Fe, Subspace)>,
}

impl ExtremalVectors {
    pub fn highest_dim(&self) -> usize {
        self.highest.iter().map(|(_, s)| s.dim()).sum()
    }

    pub fn lowest_dim(&self) -> usize {
        self.lowest.iter().map(|(_, s)| s.dim()).sum()
    }
}

/// The module `a (x) b`, on which each generator acts as `G (x) I + I (x) G`.
pub fn tensor(a: &Rep, b: &Rep) -> Result<Rep, TensorError> {
    if a.field() != b.field() {
        return Err(TensorError::ContextMismatch);
    }
    let f = a.field();
    let ia = Mat::identity(f, a.dim());
    let ib = Mat::identity(f, b.dim());
    let sum = |x: &Mat, y: &Mat| x.kron(&ib).add(&ia.kron(y));
    Ok(Rep {
        xminus: sum(&a.xminus, &b.xminus),
        h: sum(&a.h, &b.h),
        xplus: sum(&a.xplus, &b.xplus),
    })
}

/// Eigenspace decomposition of `H`.
pub fn weight_spaces(r: &Rep) -> Result<WeightDecomp, TensorError> {
    let spaces = r.h.eigenspaces();
    let total: usize = spaces.iter().map(|(_, s)| s.dim()).sum();
    if total != r.dim() {
        return Err(TensorError::NotDiagonalizable);
    }
    Ok(WeightDecomp { spaces })
}

/// `ker X+` and `ker X-`, each intersected with every weight space.
pub fn hw_lw_vectors(r: &Rep) -> Result<ExtremalVectors, TensorError> {
    let weights = weight_spaces(r)?;
    let kp = r.xplus.kernel();
    let km = r.xminus.kernel();
    let by_weight = |k: &Subspace| -> Vec<(Fe, Subspace)> {
        weights
            .spaces
            .iter()
            .map(|(w, s)| (*w, s.intersect(k)))
            .filter(|(_, s)| !s.is_zero())
            .collect()
    };
    Ok(ExtremalVectors {
        highest: by_weight(&kp),
        lowest: by_weight(&km),
    })
}

/// The scalars by which `X+^3` and `X-^3` act, when they act as scalars.
pub fn cube_scalars(r: &Rep) -> (Option<Fe>, Option<Fe>) {
    (r.xplus.pow(3).as_scalar(), r.xminus.pow(3).as_scalar())
}

/// Matrix of `X+X-` on the weight space `V_weight`, in its echelon basis.
pub fn xpxm_on_weight(r: &Rep, weight: Fe) -> Result<Mat, TensorError> {
    let weights = weight_spaces(r)?;
    let space = weights.get(weight).ok_or(TensorError::NotAWeight)?;
    r.xplus
        .mul(&r.xminus)
        .restrict(space)
        .map_err(|_| TensorError::NotInvariant)
}
