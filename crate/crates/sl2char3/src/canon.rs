//! Normal forms for the irreducible modules and isomorphism testing.
//!
//! Every irreducible module is isomorphic to exactly one of `1`, `2`,
//! `Tt(b,1/b,0)` with `b != 0`, or a `T(b,c,d)` in canonical position. For
//! `c != 0` the same module has three `T`-forms, one per weight, related by
//! the weight shift
//!
//! ```text
//! T(b,c,d) ~ T((bc-d-1)/c, c, d-1) ~ T((bc+d-1)/c, c, d+1)
//! ```
//!
//! (the same formulas hold for `Tt`). The canonical `d` is 0 when the
//! weights lie in the prime field and the smallest-encoded weight otherwise.

use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::linalg::{solve_intertwiner, LinalgError, Mat, Subspace};
use crate::sl2::{ModuleParams, Rep, Sl2Error};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonError {
    #[error("module of dimension {0} has no canonical form (irreducibles have dimension 1 to 3)")]
    Dimension(usize),
    #[error("module is not irreducible")]
    NotIrreducible,
    #[error("H is not diagonalizable over the field")]
    WeightsOutsideField,
    #[error("weight shift needs c != 0")]
    ZeroC,
    #[error("weight shift needs d = ±1")]
    NotUnitWeight,
    #[error("Tt({0}) parameters do not have two vanishing entries among a1, a2, b")]
    NotTwoZeros(String),
    #[error(transparent)]
    Sl2(#[from] Sl2Error),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Normal form of an irreducible module. The derived order is the one used
/// to sort descriptor leaves: `One < Two < CanTt < CanT`, then parameters by
/// encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CanonicalClass {
    One,
    Two,
    /// `Tt(b, 1/b, 0)`.
    CanTt(Fe),
    CanT(Fe, Fe, Fe),
}

impl CanonicalClass {
    pub fn dim(&self) -> usize {
        match self {
            CanonicalClass::One => 1,
            CanonicalClass::Two => 2,
            _ => 3,
        }
    }

    pub fn to_params(&self, field: &Field) -> ModuleParams {
        match *self {
            CanonicalClass::One => ModuleParams::One,
            CanonicalClass::Two => ModuleParams::Two,
            CanonicalClass::CanTt(b) => ModuleParams::tt_canonical(field, b).expect("CanTt has b != 0"),
            CanonicalClass::CanT(b, c, d) => ModuleParams::T(b, c, d),
        }
    }

    pub fn rep(&self, field: &Field) -> Rep {
        Rep::from_params(field, &self.to_params(field)).expect("canonical parameters are admissible")
    }

    /// The projective simple module `3 = T(0,0,0)`.
    pub fn three(field: &Field) -> CanonicalClass {
        let z = field.zero();
        CanonicalClass::CanT(z, z, z)
    }

    /// Whether this is one of the simple modules `1`, `2`, `3` on which the
    /// cubes of `X+` and `X-` vanish.
    pub fn is_restricted(&self, field: &Field) -> bool {
        match *self {
            CanonicalClass::One | CanonicalClass::Two => true,
            CanonicalClass::CanT(..) => *self == Self::three(field),
            CanonicalClass::CanTt(_) => false,
        }
    }

    pub fn format(&self, field: &Field) -> String {
        match *self {
            CanonicalClass::One => "1".into(),
            CanonicalClass::Two => "2".into(),
            CanonicalClass::CanTt(b) => format!("Tt({})", field.format(b)),
            CanonicalClass::CanT(b, c, d) => {
                if *self == Self::three(field) {
                    "3".into()
                } else {
                    format!("T({},{},{})", field.format(b), field.format(c), field.format(d))
                }
            }
        }
    }

    pub fn lift(&self, from: &Field, to: &Field) -> Result<CanonicalClass, FieldError> {
        Ok(match *self {
            CanonicalClass::One => CanonicalClass::One,
            CanonicalClass::Two => CanonicalClass::Two,
            CanonicalClass::CanTt(b) => CanonicalClass::CanTt(from.lift(b, to)?),
            CanonicalClass::CanT(b, c, d) => {
                let l = |x| from.lift(x, to);
                // Lifting can move the weights out of "smallest encoding"
                // position, so re-canonicalize.
                canonical_t(to, l(b)?, l(c)?, l(d)?)
            }
        })
    }
}

fn a1a2(f: &Field, b: Fe, c: Fe, d: Fe) -> (Fe, Fe) {
    let bc = f.mul(b, c);
    (f.sub(f.add(bc, d), f.one()), f.sub(f.sub(bc, d), f.one()))
}

/// Parameters of the dual module: `T(b,c,d)* ~ T(-b,-c,-d)`, and likewise
/// for `Tt`. `1` and `2` are self-dual, and a `Dual` wrapper cancels.
pub fn dual_params(f: &Field, p: &ModuleParams) -> ModuleParams {
    match p {
        ModuleParams::One => ModuleParams::One,
        ModuleParams::Two => ModuleParams::Two,
        ModuleParams::T(b, c, d) => ModuleParams::T(f.neg(*b), f.neg(*c), f.neg(*d)),
        ModuleParams::Tt(b, c, d) => ModuleParams::Tt(f.neg(*b), f.neg(*c), f.neg(*d)),
        ModuleParams::Dual(inner) => (**inner).clone(),
    }
}

/// The anti-diagonal change of basis taking the dual of `T(b,c,d)` (or
/// `Tt(b,c,d)`) to the matrices of `T(-b,-c,-d)` (or `Tt(-b,-c,-d)`).
pub fn dual_similarity(f: &Field) -> Mat {
    Mat::from_ints(f, &[&[0, 0, 1], &[0, -1, 0], &[1, 0, 0]])
}

/// `T`-parameters isomorphic to `Tt(b,c,d)` when at most one of `a1`, `a2`,
/// `b` vanishes.
pub fn ttilde_to_t(f: &Field, b: Fe, c: Fe, d: Fe) -> Option<(Fe, Fe, Fe)> {
    let (a1, a2) = a1a2(f, b, c, d);
    let one = f.one();
    match (a1.is_zero(), a2.is_zero(), b.is_zero()) {
        (false, false, _) => {
            let a = f.mul(a1, a2);
            Some((f.div(c, a).ok()?, f.mul(a, b), d))
        }
        (true, false, false) => Some((f.inv(f.mul(b, a2)).ok()?, f.zero(), f.add(d, one))),
        (false, true, false) => Some((f.inv(f.mul(b, a1)).ok()?, f.zero(), f.sub(d, one))),
        _ => None,
    }
}

/// The `b0` with `Tt(b,c,d) ~ Tt(b0, 1/b0, 0)`, for parameters where two of
/// `a1`, `a2`, `b` vanish.
pub fn normalize_twozeros(f: &Field, b: Fe, c: Fe, d: Fe) -> Result<Fe, CanonError> {
    ModuleParams::Tt(b, c, d).check_admissible(f)?;
    let (a1, a2) = a1a2(f, b, c, d);
    match (a1.is_zero(), a2.is_zero(), b.is_zero()) {
        // bc - 1 + d = bc - 1 - d = 0 forces d = 0 and c = 1/b.
        (true, true, _) => Ok(b),
        // b = 0 and d = ±1; c != 0 by admissibility, and one weight shift
        // lands on Tt(1/c, c, 0).
        (true, false, true) | (false, true, true) => Ok(f.inv(c)?),
        _ => Err(CanonError::NotTwoZeros(format!(
            "{},{},{}",
            f.format(b),
            f.format(c),
            f.format(d)
        ))),
    }
}

/// `T(b,c,d) ~ T(b', c, d-1)`, valid whenever `c != 0`. Also valid for `Tt`.
pub fn shift_down(f: &Field, b: Fe, c: Fe, d: Fe) -> Result<(Fe, Fe, Fe), CanonError> {
    let (_, a2) = a1a2(f, b, c, d);
    let b2 = f.div(a2, c).map_err(|_| CanonError::ZeroC)?;
    Ok((b2, c, f.sub(d, f.one())))
}

/// `T(b,c,d) ~ T(b', c, d+1)`, valid whenever `c != 0`. Also valid for `Tt`.
pub fn shift_up(f: &Field, b: Fe, c: Fe, d: Fe) -> Result<(Fe, Fe, Fe), CanonError> {
    let (a1, _) = a1a2(f, b, c, d);
    let b2 = f.div(a1, c).map_err(|_| CanonError::ZeroC)?;
    Ok((b2, c, f.add(d, f.one())))
}

/// For `d = ±1` and `c != 0`, the `(b', c')` with `T(b,c,d) ~ T(b',c',0)`.
pub fn shift_d(f: &Field, b: Fe, c: Fe, d: Fe) -> Result<(Fe, Fe), CanonError> {
    if c.is_zero() {
        return Err(CanonError::ZeroC);
    }
    let (b2, c2, _) = if d == f.one() {
        shift_down(f, b, c, d)?
    } else if d == f.neg(f.one()) {
        shift_up(f, b, c, d)?
    } else {
        return Err(CanonError::NotUnitWeight);
    };
    Ok((b2, c2))
}

/// The canonical `d` for a `c != 0` module whose middle weight is `d`.
fn canonical_weight(f: &Field, d: Fe) -> Fe {
    if f.prime_value(d).is_some() {
        f.zero()
    } else {
        let one = f.one();
        [f.sub(d, one), d, f.add(d, one)].into_iter().min().unwrap()
    }
}

/// Canonical class of `T(b,c,d)`, moving `d` to canonical position when `c != 0`.
pub fn canonical_t(f: &Field, b: Fe, c: Fe, d: Fe) -> CanonicalClass {
    if c.is_zero() {
        return CanonicalClass::CanT(b, c, d);
    }
    let target = canonical_weight(f, d);
    let (mut b, mut d) = (b, d);
    while d != target {
        (b, _, d) = shift_down(f, b, c, d).expect("c != 0");
    }
    CanonicalClass::CanT(b, c, d)
}

/// Canonical class of a parameter description.
pub fn canonical_of_params(f: &Field, p: &ModuleParams) -> Result<CanonicalClass, CanonError> {
    p.check_admissible(f)?;
    Ok(match p {
        ModuleParams::One => CanonicalClass::One,
        ModuleParams::Two => CanonicalClass::Two,
        ModuleParams::T(b, c, d) => canonical_t(f, *b, *c, *d),
        ModuleParams::Tt(b, c, d) => match ttilde_to_t(f, *b, *c, *d) {
            Some((b2, c2, d2)) => canonical_t(f, b2, c2, d2),
            None => CanonicalClass::CanTt(normalize_twozeros(f, *b, *c, *d)?),
        },
        ModuleParams::Dual(inner) => canonical_of_params(f, &dual_params(f, inner))?,
    })
}

/// Reads off the canonical class of an irreducible module of dimension at
/// most 3 from its matrices.
pub fn recover_params(r: &Rep) -> Result<CanonicalClass, CanonError> {
    match r.dim() {
        1 => return Ok(CanonicalClass::One),
        2 => {
            return if r.is_irreducible() {
                Ok(CanonicalClass::Two)
            } else {
                Err(CanonError::NotIrreducible)
            }
        }
        3 => {}
        n => return Err(CanonError::Dimension(n)),
    }
    let f = r.field();
    let weights = r.h.eigenspaces();
    if weights.len() != 3 {
        return Err(CanonError::WeightsOutsideField);
    }
    if !r.is_irreducible() {
        return Err(CanonError::NotIrreducible);
    }
    let weight_vector = |w: Fe| -> Option<&Subspace> { weights.iter().find(|(x, _)| *x == w).map(|(_, s)| s) };
    let xm3 = r.xminus.pow(3).as_scalar().ok_or(CanonError::NotIrreducible)?;
    let xp3 = r.xplus.pow(3).as_scalar().ok_or(CanonError::NotIrreducible)?;
    let one = f.one();
    if !xm3.is_zero() {
        // T(b, c, d) with c = X-^3. The middle weight is any weight.
        let c = xm3;
        let d = canonical_weight(f, weights[0].0);
        let top = weight_vector(f.add(d, one)).ok_or(CanonError::WeightsOutsideField)?;
        let xpxm = r.xplus.mul(&r.xminus).restrict(top)?;
        let b = f.div(xpxm[(0, 0)], c)?;
        return Ok(CanonicalClass::CanT(b, c, d));
    }
    match r.xminus.rank() {
        2 => {
            // T(b, 0, d): ker X- is spanned by the weight d+1 vector, and
            // X+^3 = b(1 - d^2).
            let low = r.xminus.kernel();
            let v = &low.basis()[0];
            let w = weights
                .iter()
                .find(|(_, s)| s.contains(v))
                .map(|(w, _)| *w)
                .ok_or(CanonError::NotIrreducible)?;
            let d = f.sub(w, one);
            let b = f.div(xp3, f.sub(one, f.square(d)))?;
            Ok(CanonicalClass::CanT(b, f.zero(), d))
        }
        1 => Ok(CanonicalClass::CanTt(f.inv(xp3)?)),
        _ => Err(CanonError::NotIrreducible),
    }
}

/// Isomorphism test. Irreducible modules of dimension at most 3 are compared
/// by canonical class, everything else by searching for an invertible
/// intertwiner.
pub fn is_isomorphic(a: &Rep, b: &Rep) -> Result<bool, CanonError> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    if a.dim() <= 3 {
        if let (Ok(x), Ok(y)) = (recover_params(a), recover_params(b)) {
            return Ok(x == y);
        }
    }
    is_isomorphic_by_intertwiner(a, b)
}

/// Isomorphism test by explicit intertwiner search.
pub fn is_isomorphic_by_intertwiner(a: &Rep, b: &Rep) -> Result<bool, CanonError> {
    if a.dim() != b.dim() {
        return Ok(false);
    }
    Ok(intertwiner(a, b)?.is_some())
}

/// An invertible `S` with `S g_a = g_b S` for all three generators.
pub fn intertwiner(a: &Rep, b: &Rep) -> Result<Option<Mat>, CanonError> {
    let ga: Vec<Mat> = a.generators().into_iter().cloned().collect();
    let gb: Vec<Mat> = b.generators().into_iter().cloned().collect();
    Ok(solve_intertwiner(&ga, &gb)?)
}
