//! Running both routes on one pair, lifting to an extension field when
//! either route needs eigenvalues or roots that the base field lacks.

use std::time::Instant;

use crate::decompose::{decompose, DecomposeError};
use crate::descriptor::{descriptor_equal, Descriptor};
use crate::field::{Field, FieldError, MAX_DEGREE};
use crate::oracle::{self, CubePrediction, Evaluation, Options, OracleError};
use crate::sl2::{ModuleParams, Rep};
use crate::tensor::{cube_scalars, hw_lw_vectors, tensor};

/// Environment variable overriding the extension cap.
pub const MAX_EXT_ENV: &str = "SL2_MAX_EXT_DEGREE";

/// Largest absolute degree `k` of GF(3^k) a pair may be lifted to.
pub fn extension_cap() -> u32 {
    std::env::var(MAX_EXT_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<u32>().ok())
        .unwrap_or(6)
        .clamp(1, MAX_DEGREE)
}

/// Which routes to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Routes {
    pub engine: bool,
    pub oracle: bool,
}

impl Routes {
    pub const BOTH: Routes = Routes {
        engine: true,
        oracle: true,
    };
}

/// Everything learned about one pair, computed over the smallest field
/// (within the cap) in which both routes could finish.
#[derive(Clone, Debug)]
pub struct PairOutcome {
    pub field: Field,
    pub left: ModuleParams,
    pub right: ModuleParams,
    pub evaluation: Option<Evaluation>,
    pub engine: Option<Result<Descriptor, DecomposeError>>,
    pub cubes: Option<CubeCheck>,
    /// The oracle's prediction for the swapped pair agrees with the
    /// prediction for the pair as given.
    pub symmetric: Option<bool>,
    /// Some route still needs an extension beyond the cap.
    pub unresolved: bool,
    pub elapsed_ms: f64,
}

/// The closed-form cube scalars against the ones computed on the product,
/// and the existence of extremal vectors against their vanishing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeCheck {
    pub predicted: Option<CubePrediction>,
    pub scalars_ok: Option<bool>,
    pub extremal_ok: Option<bool>,
}

#[derive(Debug, thiserror::Error)]
pub enum ResolveError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sl2(#[from] crate::sl2::Sl2Error),
    #[error(transparent)]
    Tensor(#[from] crate::tensor::TensorError),
}

impl PairOutcome {
    pub fn oracle_descriptor(&self) -> Option<&Result<Descriptor, OracleError>> {
        self.evaluation.as_ref().map(|e| &e.descriptor)
    }

    /// Both routes ran and produced equal descriptors.
    pub fn matched(&self) -> bool {
        match (&self.engine, self.oracle_descriptor()) {
            (Some(Ok(e)), Some(Ok(o))) => descriptor_equal(e, o),
            _ => false,
        }
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Runs the selected routes on `left (x) right`, given over `base`.
pub fn resolve_pair(
    base: &Field,
    left: &ModuleParams,
    right: &ModuleParams,
    routes: Routes,
    opts: Options,
    cap: u32,
) -> Result<PairOutcome, ResolveError> {
    let start = Instant::now();
    let mut field = base.clone();
    loop {
        let l = left.lift(base, &field)?;
        let r = right.lift(base, &field)?;
        let evaluation = if routes.oracle {
            Some(oracle::evaluate(&field, &l, &r, opts)?)
        } else {
            None
        };
        let product = if routes.engine {
            Some(tensor(&Rep::from_params(&field, &l)?, &Rep::from_params(&field, &r)?)?)
        } else {
            None
        };
        let engine = product.as_ref().map(decompose);
        let oracle_need = match evaluation.as_ref().map(|e| &e.descriptor) {
            Some(Err(OracleError::NeedsExtension { degree, .. })) => *degree,
            _ => 1,
        };
        let engine_need = match engine {
            Some(Err(DecomposeError::FieldTooSmall { degree })) => degree,
            _ => 1,
        };
        let need = lcm(oracle_need, engine_need);
        let next = field.degree() * need;
        if need == 1 || next > cap {
            let cubes = match &product {
                Some(p) if routes.oracle => Some(check_cubes(&field, &l, &r, p, opts)?),
                _ => None,
            };
            let symmetric = evaluation.as_ref().map(|e| symmetric(&field, &l, &r, e, opts));
            return Ok(PairOutcome {
                field,
                left: l,
                right: r,
                evaluation,
                engine,
                cubes,
                symmetric,
                unresolved: need != 1,
                elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            });
        }
        field = Field::gf(next)?;
    }
}

fn symmetric(f: &Field, l: &ModuleParams, r: &ModuleParams, e: &Evaluation, opts: Options) -> bool {
    let swapped = match oracle::evaluate(f, r, l, opts) {
        Ok(s) => s,
        Err(_) => return false,
    };
    match (&e.descriptor, &swapped.descriptor) {
        (Ok(a), Ok(b)) => descriptor_equal(a, b),
        (Err(a), Err(b)) => a == b,
        _ => false,
    }
}

fn check_cubes(
    f: &Field,
    l: &ModuleParams,
    r: &ModuleParams,
    product: &Rep,
    opts: Options,
) -> Result<CubeCheck, ResolveError> {
    let predicted = oracle::cube_scalars(f, l, r, opts)?;
    let (plus, minus) = cube_scalars(product);
    let scalars_ok = predicted
        .as_ref()
        .map(|p| plus == Some(p.plus) && minus == Some(p.minus));
    // The biconditional is about the product itself, so it uses the
    // computed scalars.
    let extremal_ok = match (plus, minus, hw_lw_vectors(product)) {
        (Some(p), Some(m), Ok(ext)) => {
            Some((ext.highest_dim() > 0) == p.is_zero() && (ext.lowest_dim() > 0) == m.is_zero())
        }
        _ => None,
    };
    Ok(CubeCheck {
        predicted,
        scalars_ok,
        extremal_ok,
    })
}
