//! Closed-form predictions from the classification tables.
//!
//! [`predict`] evaluates the row conditions on the parameters of the two
//! factors and instantiates the row's decomposition. No matrices are built.
//! Factors are first brought to a normal form: duals are replaced by their
//! parameters, `Tt` factors become `T` factors or `Tt(b,1/b,0)`, and a `T`
//! factor with `c != 0` is moved to the weight the tables assume.

pub mod rows;
pub mod symbols;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonical_of_params, canonical_t, shift_down, shift_up, CanonError, CanonicalClass};
use crate::descriptor::{Action, Descriptor};
use crate::field::{Fe, Field, RootSet};
use crate::poly;
use crate::sl2::ModuleParams;

pub use rows::{CaseId, RowSpec, Table};
pub use symbols::SymbolSet;

use rows::{t_t_general as gen, t_t_opposite as opp, tt_t, two_t};
use symbols::{a1a2, Triple};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Options {
    /// Reproduce the printed text at the known typos instead of the
    /// corrected readings.
    pub paper_literal: bool,
}

/// The known misprints. Under [`Options::paper_literal`] each is read as
/// printed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Typo {
    /// Table 4 writes `c` in `Tt (x) T` rows, where the only `c` in scope
    /// is the `Tt` factor's own `1/b`. Read as `gamma`, with the root
    /// leaves `T(rho_i,c,.)` read as `T(rho_i/gamma,gamma,.)` since
    /// `X+X-` acts by `rho_i` on their top weight.
    Table4C,
    /// The `gamma != 0, delta = 0` special row of Table 4 prints a tensor
    /// product inside the decomposition. Read as a direct sum.
    TensorForSum,
    /// The caption of the last table says `gamma != c`. Read as
    /// `gamma != -c`.
    CaptionSign,
    /// The cube of `X+` on `T (x) T` is printed as `b a1 a1 + beta alpha1
    /// alpha2`. Read as `b a1 a2 + ...`.
    CubeSubscript,
    /// Table 2 row `c != 0, d = 0, b = 1/c` prints `T(0,c,1)` twice. The
    /// two highest weight vectors lie in different weights, and the
    /// general `b != 0` formula gives `T(0,c,1) (+) T(2/c,c,1)`.
    RepeatedSummand,
    /// The non-split double-root row of the last table takes its leaves
    /// from `-Delta` and `-1-Delta`. The double and simple roots of the mu
    /// polynomial are `1-(d+delta)^2` and `-(d+delta)^2`.
    DoubleRoot,
    /// Two rows with leaves `T(x,0,w)` print the cube scalar (`J` in
    /// `Tt (x) T`, `K` in `T (x) T`) as `x`. A leaf `T(x,0,w)` has
    /// `X+^3 = x(1-w^2)`, so `x` is `J/(b(1-w^2))` and `K/(1-w^2)`.
    ScalarLeaf,
    /// The rho polynomial is printed as `l^3 + (1-delta^2) l^2 + l - ...`.
    /// The characteristic polynomial of `X+X-` is `l^3 + l^2 + (1-delta^2) l
    /// - ...`, as the double-root analysis next to it also requires. The
    /// two agree for `delta = 0`.
    RhoCoefficients,
}

impl Typo {
    pub const ALL: [Typo; 8] = [
        Typo::Table4C,
        Typo::TensorForSum,
        Typo::CaptionSign,
        Typo::CubeSubscript,
        Typo::RepeatedSummand,
        Typo::DoubleRoot,
        Typo::ScalarLeaf,
        Typo::RhoCoefficients,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Typo::Table4C => "table4-c-for-gamma",
            Typo::TensorForSum => "table4-tensor-for-sum",
            Typo::CaptionSign => "table5-caption-sign",
            Typo::CubeSubscript => "cube-scalar-subscript",
            Typo::RepeatedSummand => "table2-repeated-summand",
            Typo::DoubleRoot => "table5-double-root",
            Typo::ScalarLeaf => "scalar-for-leaf-parameter",
            Typo::RhoCoefficients => "rho-polynomial-coefficients",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Typo::Table4C => {
                "Table 4 rows with c: c read as γ and T(ρi,c,·) as T(ρi/γ,γ,·) (literal: c is the Tt factor's 1/b)"
            }
            Typo::TensorForSum => "Table 4 row γ≠0, δ=0, bβ(1-βγ)²=-1: ⊗ read as ⊕",
            Typo::CaptionSign => "last table caption γ≠c read as γ≠-c",
            Typo::CubeSubscript => "X+^3 on T⊗T: b a1 a1 read as b a1 a2",
            Typo::RepeatedSummand => "Table 2 row c≠0, d=0, b=1/c: T(0,c,1) ⊕ T(0,c,1) read as T(0,c,1) ⊕ T(2/c,c,1)",
            Typo::DoubleRoot => "last table, non-split double root: -Δ and -1-Δ read as 1-(d+δ)² and -(d+δ)²",
            Typo::ScalarLeaf => "T(J,0,w) and T(K,0,w) leaves read as T(J/(b(1-w²)),0,w) and T(K/(1-w²),0,w)",
            Typo::RhoCoefficients => "ρ polynomial λ³+(1-δ²)λ²+λ-(γ/b)J read as λ³+λ²+(1-δ²)λ-(γ/b)J",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} needs an extension of degree {degree}")]
    NeedsExtension { degree: u32, what: String },
    #[error("division by zero in {symbol} ({case})")]
    DivisionByZero { case: String, symbol: &'static str },
    #[error("no row matches {0}")]
    NoRow(String),
    #[error(transparent)]
    Canon(#[from] CanonError),
}

/// A prediction together with the row it came from and the misprints whose
/// reading affected it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub case: CaseId,
    pub descriptor: Descriptor,
    pub typos: Vec<Typo>,
}

/// A factor in the form the tables take as input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Factor {
    One,
    Two,
    /// `Tt(b, 1/b, 0)`.
    Tt(Fe),
    T(Fe, Fe, Fe),
}

fn factor_of(f: &Field, p: &ModuleParams) -> Result<Factor, OracleError> {
    Ok(match canonical_of_params(f, p)? {
        CanonicalClass::One => Factor::One,
        CanonicalClass::Two => Factor::Two,
        CanonicalClass::CanTt(b) => Factor::Tt(b),
        CanonicalClass::CanT(b, c, d) => Factor::T(b, c, d),
    })
}

/// `T(b,c,d)` moved along its weight coset until the middle weight is
/// `target`. Needs `c != 0`.
fn shift_to(f: &Field, (b, c, d): Triple, target: Fe) -> Triple {
    let mut t = (b, c, d);
    for _ in 0..3 {
        if t.2 == target {
            return t;
        }
        t = shift_down(f, t.0, t.1, t.2).expect("shift needs c != 0");
    }
    let _ = shift_up;
    unreachable!("target weight lies in the coset of d")
}

fn is_unit(f: &Field, x: Fe) -> bool {
    x == f.one() || x == f.neg(f.one())
}

fn in_prime(f: &Field, x: Fe) -> bool {
    f.prime_value(x).is_some()
}

/// Small named modules used by the tables.
struct Shapes<'a> {
    f: &'a Field,
}

impl Shapes<'_> {
    fn one(&self) -> Descriptor {
        Descriptor::Leaf(CanonicalClass::One)
    }

    fn two(&self) -> Descriptor {
        Descriptor::Leaf(CanonicalClass::Two)
    }

    fn three(&self) -> Descriptor {
        Descriptor::Leaf(CanonicalClass::three(self.f))
    }

    fn tt(&self, b: Fe) -> Descriptor {
        Descriptor::Leaf(CanonicalClass::CanTt(b))
    }

    /// The module `T(b,c,d)`. For `c = 0` and `d = ±1` it is reducible:
    /// `T(b,0,1)` has submodule `2` and quotient `1`, `T(b,0,-1)` the
    /// reverse, glued by `X-` always and by `X+` when `b != 0`.
    fn t(&self, b: Fe, c: Fe, d: Fe) -> Descriptor {
        let f = self.f;
        if c.is_zero() && is_unit(f, d) {
            let (top, bottom) = if d == f.one() {
                (CanonicalClass::One, CanonicalClass::Two)
            } else {
                (CanonicalClass::Two, CanonicalClass::One)
            };
            let mut edges = vec![(0, 1, Action::XMinus)];
            if !b.is_zero() {
                edges.push((0, 1, Action::XPlus));
            }
            return Descriptor::glue(vec![top, bottom], &edges).normalize();
        }
        Descriptor::Leaf(canonical_t(f, b, c, d))
    }

    fn factor(&self, x: Factor) -> Descriptor {
        match x {
            Factor::One => self.one(),
            Factor::Two => self.two(),
            Factor::Tt(b) => self.tt(b),
            Factor::T(b, c, d) => self.t(b, c, d),
        }
    }

    fn semi(&self, quo: Descriptor, sub: Descriptor) -> Descriptor {
        Descriptor::semi(quo, sub)
    }

    fn sum(&self, parts: Vec<Descriptor>) -> Descriptor {
        Descriptor::Sum(parts)
    }

    /// `a → b`: `b` is reached from `a` by `X-`.
    fn right(&self, a: CanonicalClass, b: CanonicalClass) -> Descriptor {
        Descriptor::glue(vec![a, b], &[(0, 1, Action::XMinus)])
    }

    /// `a ← b`: `a` is reached from `b` by `X+`.
    fn left(&self, a: CanonicalClass, b: CanonicalClass) -> Descriptor {
        Descriptor::glue(vec![a, b], &[(1, 0, Action::XPlus)])
    }

    /// The 6-dimensional projective cover of `top` (`2` or `1`): top, two
    /// middle nodes of the other kind reached by `X+` and `X-`, and a
    /// bottom copy of `top`. `P(2)` is the module called `M1`.
    fn projective(&self, top: CanonicalClass) -> Descriptor {
        let other = if top == CanonicalClass::Two {
            CanonicalClass::One
        } else {
            CanonicalClass::Two
        };
        Descriptor::glue(
            vec![top, other, other, top],
            &[
                (0, 1, Action::XPlus),
                (0, 2, Action::XMinus),
                (1, 3, Action::XMinus),
                (2, 3, Action::XPlus),
            ],
        )
    }
}

/// The module `M1` of the classification, the projective cover of `2`.
pub fn m1() -> Descriptor {
    Descriptor::glue(
        vec![
            CanonicalClass::Two,
            CanonicalClass::One,
            CanonicalClass::One,
            CanonicalClass::Two,
        ],
        &[
            (0, 1, Action::XPlus),
            (0, 2, Action::XMinus),
            (1, 3, Action::XMinus),
            (2, 3, Action::XPlus),
        ],
    )
}

/// The outcome of evaluating a pair: the row is always known once the
/// inputs are admissible, the decomposition may still fail to evaluate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub case: CaseId,
    pub typos: Vec<Typo>,
    pub descriptor: Result<Descriptor, OracleError>,
}

struct Ctx<'a> {
    f: &'a Field,
    opts: Options,
    s: Shapes<'a>,
    case: CaseId,
    typos: Vec<Typo>,
}

impl<'a> Ctx<'a> {
    fn new(f: &'a Field, opts: Options) -> Ctx<'a> {
        Ctx {
            f,
            opts,
            s: Shapes { f },
            case: CaseId {
                table: Table::Thm1,
                row: 0,
            },
            typos: Vec::new(),
        }
    }

    fn at(&mut self, table: Table, row: usize) {
        self.case = CaseId { table, row };
    }

    fn div(&self, a: Fe, b: Fe, symbol: &'static str) -> Result<Fe, OracleError> {
        self.f.div(a, b).map_err(|_| OracleError::DivisionByZero {
            case: self.case.key(),
            symbol,
        })
    }

    fn roots(&self, p: &[Fe], what: &str) -> Result<Vec<Fe>, OracleError> {
        let rs: RootSet = self.f.poly_roots(p).expect("monic cubic");
        if !rs.splits() {
            return Err(OracleError::NeedsExtension {
                degree: poly::splitting_degree(self.f, p),
                what: what.to_string(),
            });
        }
        Ok(rs.with_multiplicity())
    }

    fn sqrt(&self, x: Fe, what: &str) -> Result<Fe, OracleError> {
        self.f.sqrt(x).ok_or_else(|| OracleError::NeedsExtension {
            degree: 2,
            what: what.to_string(),
        })
    }

    fn finish(self, descriptor: Result<Descriptor, OracleError>) -> Evaluation {
        let mut typos = self.typos;
        typos.sort();
        typos.dedup();
        Evaluation {
            case: self.case,
            typos,
            descriptor: descriptor.map(|d| d.normalize()),
        }
    }
}

/// Classifies a pair and evaluates its row.
pub fn evaluate(
    f: &Field,
    left: &ModuleParams,
    right: &ModuleParams,
    opts: Options,
) -> Result<Evaluation, OracleError> {
    let l = factor_of(f, left)?;
    let r = factor_of(f, right)?;
    let mut cx = Ctx::new(f, opts);
    use Factor::*;
    let out = match (l, r) {
        (One, x) | (x, One) => {
            cx.at(Table::Thm1, 0);
            let d = cx.s.factor(x);
            cx.finish(Ok(d))
        }
        (Two, Two) => {
            cx.at(Table::Thm2, 0);
            let d = cx.s.sum(vec![cx.s.one(), cx.s.three()]);
            cx.finish(Ok(d))
        }
        (Two, Tt(b)) | (Tt(b), Two) => {
            cx.at(Table::Thm3, 0);
            let d = cx
                .div(f.one(), b, "1/b")
                .map(|inv| cx.s.sum(vec![cx.s.tt(b), cx.s.t(inv, f.zero(), f.zero())]));
            cx.finish(d)
        }
        (Two, T(b, c, d)) | (T(b, c, d), Two) => {
            let out = two_times_t(&mut cx, (b, c, d));
            cx.finish(out)
        }
        (Tt(b), Tt(beta)) => {
            let out = tt_times_tt(&mut cx, b, beta);
            cx.finish(out)
        }
        (Tt(b), T(x, y, z)) | (T(x, y, z), Tt(b)) => {
            let out = tt_times_t(&mut cx, b, (x, y, z));
            cx.finish(out)
        }
        (T(b, c, d), T(beta, gamma, delta)) => {
            let out = t_times_t(&mut cx, (b, c, d), (beta, gamma, delta))?;
            cx.finish(out)
        }
    };
    Ok(out)
}

fn two_times_t(cx: &mut Ctx, (b, c, d): Triple) -> Result<Descriptor, OracleError> {
    use CanonicalClass::{One, Two};
    let f = cx.f;
    let s = &Shapes { f: cx.f };
    let zero = f.zero();
    let one = f.one();
    if c.is_zero() {
        let row = match f.prime_value(d) {
            Some(0) if b.is_zero() => two_t::C0_D0_B0,
            Some(0) => two_t::C0_D0_B,
            Some(1) if b.is_zero() => two_t::C0_D1_B0,
            Some(1) => two_t::C0_D1_B,
            Some(_) if b.is_zero() => two_t::C0_D2_B0,
            Some(_) => two_t::C0_D2_B,
            None => two_t::C0_DX,
        };
        cx.at(Table::TwoT, row);
        let s = &Shapes { f: cx.f };
        return Ok(match row {
            two_t::C0_D0_B0 => s.projective(Two),
            two_t::C0_D0_B => {
                let x = cx.div(one, b, "1/b")?;
                s.semi(s.tt(x), s.tt(x))
            }
            two_t::C0_D1_B0 => s.sum(vec![s.three(), s.right(Two, One)]),
            two_t::C0_D1_B => s.sum(vec![s.three(), s.semi(s.two(), s.one())]),
            two_t::C0_D2_B0 => s.sum(vec![s.three(), s.right(One, Two)]),
            two_t::C0_D2_B => s.sum(vec![s.three(), s.semi(s.one(), s.two())]),
            _ => {
                let lo = f.sub(d, one);
                let hi = f.add(d, one);
                let b_lo = cx.div(f.mul(b, lo), d, "b(d-1)/d")?;
                let b_hi = cx.div(f.mul(b, hi), d, "b(d+1)/d")?;
                s.sum(vec![s.t(b_lo, zero, lo), s.t(b_hi, zero, hi)])
            }
        });
    }
    // c != 0: the factor sits at weight 0 when its weights are in F3.
    let bc = f.mul(b, c);
    if in_prime(f, d) {
        let (b, c, d) = shift_to(f, (b, c, d), zero);
        let _ = d;
        let bc = f.mul(b, c);
        if b.is_zero() {
            cx.at(Table::TwoT, two_t::C_D0_B0);
            return Ok(s.semi(s.t(zero, c, one), s.t(zero, c, one)));
        }
        if bc == one {
            cx.at(Table::TwoT, two_t::C_D0_BINV);
            cx.typos.push(Typo::RepeatedSummand);
            let s = &Shapes { f: cx.f };
            let other = if cx.opts.paper_literal {
                zero
            } else {
                cx.div(f.from_i64(2), c, "2/c")?
            };
            return Ok(s.sum(vec![s.t(zero, c, one), s.t(other, c, one)]));
        }
        cx.at(Table::TwoT, two_t::C_D0_B);
        let r = cx.sqrt(cx.div(b, c, "b/c")?, "√(b/c)")?;
        let s = &Shapes { f: cx.f };
        return Ok(s.sum(vec![s.t(f.add(b, r), c, one), s.t(f.sub(b, r), c, one)]));
    }
    let lo = f.sub(d, one);
    let hi = f.add(d, one);
    if b.is_zero() {
        cx.at(Table::TwoT, two_t::C_DX_B0);
        return Ok(s.sum(vec![s.t(zero, c, hi), s.t(zero, c, lo)]));
    }
    if f.add(f.sub(one, bc), d).is_zero() {
        cx.at(Table::TwoT, two_t::C_DX_PLUS);
        return Ok(s.sum(vec![s.t(zero, c, d), s.t(zero, c, hi)]));
    }
    if f.sub(f.sub(one, bc), d).is_zero() {
        cx.at(Table::TwoT, two_t::C_DX_MINUS);
        return Ok(s.sum(vec![s.t(zero, c, lo), s.t(zero, c, d)]));
    }
    let disc = f.add(bc, f.square(d));
    if disc.is_zero() {
        cx.at(Table::TwoT, two_t::C_DX_SEMI);
        let x = f.add(b, cx.div(d, c, "d/c")?);
        let s = &Shapes { f: cx.f };
        return Ok(s.semi(s.t(x, c, hi), s.t(x, c, hi)));
    }
    cx.at(Table::TwoT, two_t::C_DX_ROOTS);
    let r = cx.sqrt(disc, "√(bc+d²)")?;
    let x1 = f.add(b, cx.div(f.add(d, r), c, "(d+√)/c")?);
    let x2 = f.add(b, cx.div(f.sub(d, r), c, "(d-√)/c")?);
    let s = &Shapes { f: cx.f };
    Ok(s.sum(vec![s.t(x1, c, hi), s.t(x2, c, hi)]))
}

fn tt_times_tt(cx: &mut Ctx, b: Fe, beta: Fe) -> Result<Descriptor, OracleError> {
    use CanonicalClass::{One, Two};
    let f = cx.f;
    let sum = f.add(b, beta);
    if sum.is_zero() {
        cx.at(Table::TtTt, 0);
        let s = &Shapes { f: cx.f };
        return Ok(s.sum(vec![s.three(), s.left(Two, One), s.left(One, Two)]));
    }
    cx.at(Table::TtTt, 1);
    let prod = f.mul(b, beta);
    let x = cx.div(sum, prod, "(b+β)/(bβ)")?;
    let y = cx.div(prod, sum, "bβ/(b+β)")?;
    let s = &Shapes { f: cx.f };
    Ok(s.sum(vec![s.t(x, f.zero(), f.zero()), s.tt(y), s.tt(y)]))
}

fn tt_times_t(cx: &mut Ctx, b: Fe, (beta, gamma, delta): Triple) -> Result<Descriptor, OracleError> {
    let f = cx.f;
    let zero = f.zero();
    let one = f.one();
    let b_inv = cx.div(one, b, "1/b")?;
    if gamma.is_zero() {
        let bb = f.mul(b, beta);
        match f.prime_value(delta) {
            Some(0) => {
                let t = f.add(one, bb);
                if t.is_zero() {
                    cx.at(Table::TtT, tt_t::G0_D0_SPECIAL);
                    let s = &Shapes { f: cx.f };
                    return Ok(s.sum(vec![s.three(), s.projective(CanonicalClass::Two)]));
                }
                cx.at(Table::TtT, tt_t::G0_D0);
                let x = cx.div(b, t, "b/(1+bβ)")?;
                let y = cx.div(t, b, "(1+bβ)/b")?;
                let s = &Shapes { f: cx.f };
                return Ok(s.sum(vec![s.semi(s.tt(x), s.tt(x)), s.t(y, zero, zero)]));
            }
            Some(v) => {
                cx.at(Table::TtT, if v == 1 { tt_t::G0_D1 } else { tt_t::G0_D2 });
                let s = &Shapes { f: cx.f };
                return Ok(s.sum(vec![s.semi(s.tt(b), s.tt(b)), s.t(b_inv, zero, zero)]));
            }
            None => {
                let w = [f.sub(delta, one), delta, f.add(delta, one)];
                let special = f.add(f.mul(bb, f.sub(one, f.square(delta))), one);
                if special.is_zero() {
                    cx.at(Table::TtT, tt_t::G0_DX_SPECIAL);
                    let s = &Shapes { f: cx.f };
                    return Ok(s.sum(w.iter().map(|&w| s.t(zero, zero, w)).collect()));
                }
                cx.at(Table::TtT, tt_t::G0_DX);
                let j = special;
                cx.typos.push(Typo::ScalarLeaf);
                let mut parts = Vec::new();
                for w in w {
                    let x = if cx.opts.paper_literal {
                        j
                    } else {
                        cx.div(j, f.mul(b, f.sub(one, f.square(w))), "J/(b(1-w²))")?
                    };
                    parts.push(cx.s.t(x, zero, w));
                }
                return Ok(cx.s.sum(parts));
            }
        }
    }
    // gamma != 0: the factor sits at weight 0 when its weights are in F3.
    let (beta, gamma, delta) = if in_prime(f, delta) {
        shift_to(f, (beta, gamma, delta), zero)
    } else {
        (beta, gamma, delta)
    };
    let (al1, al2) = a1a2(f, (beta, gamma, delta));
    let j = f.add(one, f.mul(f.mul(al1, al2), f.mul(b, beta)));
    let literal = cx.opts.paper_literal;
    // The `c` printed in the root rows.
    let c_read = if literal { b_inv } else { gamma };
    let rho_leaves = |cx: &mut Ctx, delta: Fe| -> Result<Descriptor, OracleError> {
        cx.typos.push(Typo::Table4C);
        if !delta.is_zero() {
            cx.typos.push(Typo::RhoCoefficients);
        }
        let p = symbols::rho_poly(f, b, gamma, delta, j, literal);
        let roots = cx.roots(&p, "ρ roots")?;
        let mut parts = Vec::new();
        for rho in roots {
            let x = if literal { rho } else { cx.div(rho, gamma, "ρ/γ")? };
            parts.push(cx.s.t(x, c_read, delta));
        }
        Ok(cx.s.sum(parts))
    };
    if delta.is_zero() {
        let bg = f.sub(one, f.mul(beta, gamma));
        let special = f.add(f.mul(f.mul(b, beta), f.square(bg)), one);
        if special.is_zero() {
            cx.at(Table::TtT, tt_t::G_D0_SPECIAL);
            cx.typos.push(Typo::TensorForSum);
            let minus = f.neg(one);
            let s = &Shapes { f: cx.f };
            let top = s.t(zero, gamma, minus);
            let inner = if literal {
                // The printed tensor product, expanded by the table itself.
                let p = ModuleParams::T(zero, gamma, zero);
                let q = ModuleParams::T(zero, gamma, minus);
                predict(f, &p, &q, Options::default())?.descriptor
            } else {
                s.sum(vec![s.t(zero, gamma, zero), s.t(zero, gamma, minus)])
            };
            return Ok(if literal {
                s.semi(top, inner)
            } else {
                s.sum(vec![s.semi(top.clone(), top), s.t(zero, gamma, zero)])
            });
        }
        cx.at(Table::TtT, tt_t::G_D0);
        return rho_leaves(cx, delta);
    }
    if j.is_zero() {
        cx.at(Table::TtT, tt_t::G_DX_J0);
        let s = &Shapes { f: cx.f };
        return Ok(s.sum(
            [f.sub(delta, one), delta, f.add(delta, one)]
                .iter()
                .map(|&w| s.t(zero, gamma, w))
                .collect(),
        ));
    }
    let cube = f.mul(f.mul(delta, f.add(delta, one)), f.sub(delta, one));
    let lhs = f.neg(f.mul(cx.div(gamma, b, "γ/b")?, j));
    if lhs != f.square(cube) {
        cx.at(Table::TtT, tt_t::G_DX_ROOTS);
        return rho_leaves(cx, delta);
    }
    cx.at(Table::TtT, tt_t::G_DX_SEMI);
    cx.typos.push(Typo::Table4C);
    let d2 = f.square(delta);
    let x = cx.div(f.sub(one, d2), c_read, "(1-δ²)/c")?;
    let y = cx.div(f.neg(d2), c_read, "-δ²/c")?;
    let s = &Shapes { f: cx.f };
    let a = s.t(x, c_read, delta);
    Ok(s.sum(vec![s.semi(a.clone(), a), s.t(y, c_read, delta)]))
}

/// Normalizes the weights of a `T (x) T` pair as the tables assume: each
/// factor with nonzero `c` and weights in F3 sits at weight 0, and when
/// `d + delta` lies in F3 but is not 0, a factor with nonzero `c` is shifted
/// to make it 0.
fn normalize_tt(f: &Field, l: Triple, r: Triple) -> (Triple, Triple) {
    let zero = f.zero();
    let mut l = l;
    let mut r = r;
    if !l.1.is_zero() && in_prime(f, l.2) {
        l = shift_to(f, l, zero);
    }
    if !r.1.is_zero() && in_prime(f, r.2) {
        r = shift_to(f, r, zero);
    }
    let s = f.add(l.2, r.2);
    if in_prime(f, s) && !s.is_zero() {
        if !l.1.is_zero() {
            l = shift_to(f, l, f.sub(l.2, s));
        } else if !r.1.is_zero() {
            r = shift_to(f, r, f.sub(r.2, s));
        }
    }
    (l, r)
}

fn t_times_t(cx: &mut Ctx, l: Triple, r: Triple) -> Result<Result<Descriptor, OracleError>, OracleError> {
    let f = cx.f;
    let (c, gamma) = (l.1, r.1);
    let opposite = f.add(c, gamma).is_zero();
    let literal_opposite = gamma == c;
    let use_opposite = if cx.opts.paper_literal {
        literal_opposite
    } else {
        opposite
    };
    if opposite != literal_opposite {
        cx.typos.push(Typo::CaptionSign);
    }
    let (l, r) = normalize_tt(f, l, r);
    Ok(if use_opposite {
        t_times_t_opposite(cx, l, r)
    } else {
        t_times_t_general(cx, l, r)
    })
}

fn is_exceptional(f: &Field, (b, c, d): Triple, (beta, gamma, delta): Triple) -> bool {
    !c.is_zero()
        && !gamma.is_zero()
        && f.mul(b, c) == f.one()
        && f.mul(beta, gamma) == f.one()
        && d.is_zero()
        && delta.is_zero()
}

fn t_times_t_opposite(cx: &mut Ctx, l: Triple, r: Triple) -> Result<Descriptor, OracleError> {
    use CanonicalClass::{One, Two};
    let f = cx.f;
    let zero = f.zero();
    let one = f.one();
    let (b, _, d) = l;
    let (beta, _, delta) = r;
    let s_sum = f.add(d, delta);
    let k = {
        let (a1, a2) = a1a2(f, l);
        let (al1, al2) = a1a2(f, r);
        f.add(f.mul(f.mul(a1, a2), b), f.mul(f.mul(al1, al2), beta))
    };
    let shapes = Shapes { f };
    let s = &shapes;
    let k_row = |cx: &mut Ctx, row: usize| -> Result<Descriptor, OracleError> {
        cx.at(Table::TTOpposite, row);
        let x = cx.div(one, k, "1/K")?;
        Ok(s.sum(vec![s.semi(s.tt(x), s.tt(x)), s.t(k, zero, zero)]))
    };
    let glued_pair = || s.sum(vec![s.three(), s.semi(s.two(), s.one()), s.semi(s.one(), s.two())]);
    let cover = |top| s.sum(vec![s.three(), s.projective(top)]);
    if is_exceptional(f, l, r) {
        cx.at(Table::TTOpposite, opp::EXCEPTIONAL);
        return Ok(s.sum(vec![s.three(), s.right(One, Two), s.right(Two, One)]));
    }
    match f.prime_value(s_sum) {
        Some(0) => {
            let q = symbols::q_cofactor(f, l, beta);
            let neg = f.add(b, beta).is_zero();
            match (neg, q.is_zero()) {
                (true, true) => {
                    cx.at(Table::TTOpposite, opp::S0_NEG_Q0);
                    Ok(glued_pair())
                }
                (true, false) => {
                    cx.at(Table::TTOpposite, opp::S0_NEG_Q);
                    Ok(cover(One))
                }
                (false, true) => {
                    cx.at(Table::TTOpposite, opp::S0_Q0);
                    Ok(cover(Two))
                }
                (false, false) => k_row(cx, opp::S0_Q),
            }
        }
        Some(1) => {
            if d == f.neg(one) {
                if beta == b {
                    cx.at(Table::TTOpposite, opp::S1_DM_EQ);
                    Ok(glued_pair())
                } else {
                    cx.at(Table::TTOpposite, opp::S1_DM_NE);
                    Ok(cover(One))
                }
            } else if f.mul(f.sub(one, d), b) == f.mul(d, beta) {
                cx.at(Table::TTOpposite, opp::S1_D_EQ);
                Ok(cover(Two))
            } else {
                k_row(cx, opp::S1_D_NE)
            }
        }
        Some(_) => {
            if d == one {
                if beta == b {
                    cx.at(Table::TTOpposite, opp::S2_DP_EQ);
                    Ok(glued_pair())
                } else {
                    cx.at(Table::TTOpposite, opp::S2_DP_NE);
                    Ok(cover(One))
                }
            } else if f.mul(f.add(one, d), b) == f.neg(f.mul(d, beta)) {
                cx.at(Table::TTOpposite, opp::S2_D_EQ);
                Ok(cover(Two))
            } else {
                k_row(cx, opp::S2_D_NE)
            }
        }
        None => {
            let w = [f.sub(s_sum, one), s_sum, f.add(s_sum, one)];
            if k.is_zero() {
                cx.at(Table::TTOpposite, opp::SX_K0);
                return Ok(s.sum(w.iter().map(|&w| s.t(zero, zero, w)).collect()));
            }
            cx.at(Table::TTOpposite, opp::SX_K);
            cx.typos.push(Typo::ScalarLeaf);
            let mut parts = Vec::new();
            for w in w {
                let x = if cx.opts.paper_literal {
                    k
                } else {
                    cx.div(k, f.sub(one, f.square(w)), "K/(1-w²)")?
                };
                parts.push(s.t(x, zero, w));
            }
            Ok(s.sum(parts))
        }
    }
}

fn t_times_t_general(cx: &mut Ctx, l: Triple, r: Triple) -> Result<Descriptor, OracleError> {
    let f = cx.f;
    let zero = f.zero();
    let one = f.one();
    let (b, c, d) = l;
    let (beta, gamma, delta) = r;
    let cg = f.add(c, gamma);
    let s_sum = f.add(d, delta);
    let shapes = Shapes { f };
    let s = &shapes;
    let k = {
        let (a1, a2) = a1a2(f, l);
        let (al1, al2) = a1a2(f, r);
        f.add(f.mul(f.mul(a1, a2), b), f.mul(f.mul(al1, al2), beta))
    };
    let around = |x: Fe| [f.sub(x, one), x, f.add(x, one)];
    if is_exceptional(f, l, r) {
        cx.at(Table::TTGeneral, gen::EXCEPTIONAL);
        let x = cx.div(f.add(b, beta), f.mul(b, beta), "(b+β)/(bβ)")?;
        return Ok(s.sum(around(zero).iter().map(|&w| s.t(zero, x, w)).collect()));
    }
    if k.is_zero() {
        if s_sum.is_zero() {
            cx.at(Table::TTGeneral, gen::K0_S0);
            let minus = f.neg(one);
            let a = s.t(zero, cg, minus);
            return Ok(s.sum(vec![s.semi(a.clone(), a), s.t(zero, cg, zero)]));
        }
        if !in_prime(f, s_sum) {
            cx.at(Table::TTGeneral, gen::K0_SX);
            return Ok(s.sum(around(s_sum).iter().map(|&w| s.t(zero, cg, w)).collect()));
        }
        return Err(OracleError::NoRow(format!(
            "T⊗T with γ≠-c, K=0 and d+δ={}",
            f.format(s_sum)
        )));
    }
    let mu_leaves = |cx: &mut Ctx| -> Result<Descriptor, OracleError> {
        let p = symbols::mu_poly(f, s_sum, cg, k);
        let roots = cx.roots(&p, "μ roots")?;
        let mut parts = Vec::new();
        for mu in roots {
            parts.push(s.t(cx.div(mu, cg, "μ/(c+γ)")?, cg, s_sum));
        }
        Ok(s.sum(parts))
    };
    let d_big = symbols::d_big(f, s_sum);
    if d_big != f.neg(f.mul(k, cg)) {
        cx.at(Table::TTGeneral, gen::K_SIMPLE);
        return mu_leaves(cx);
    }
    let root_d = f.mul(s_sum, f.sub(one, f.square(s_sum)));
    let cube = |x: Fe| f.sub(x, f.cube(x));
    let split = f.mul(f.mul(b, d), cg) == root_d
        && f.mul(beta, delta) == f.mul(b, d)
        && f.mul(gamma, cube(d)) == f.mul(c, cube(delta));
    if split {
        cx.at(Table::TTGeneral, gen::K_DOUBLE_SPLIT);
        return mu_leaves(cx);
    }
    cx.at(Table::TTGeneral, gen::K_DOUBLE_SEMI);
    cx.typos.push(Typo::DoubleRoot);
    // The double root of the mu polynomial is 1-(d+delta)^2 and the simple
    // one is -(d+delta)^2.
    let (double, simple) = if cx.opts.paper_literal {
        let delta_big = symbols::delta_big(f, s_sum);
        (f.neg(delta_big), f.sub(f.neg(one), delta_big))
    } else {
        let sq = f.square(s_sum);
        (f.sub(one, sq), f.neg(sq))
    };
    let x = cx.div(double, cg, "μ/(c+γ)")?;
    let y = cx.div(simple, cg, "μ/(c+γ)")?;
    let a = s.t(x, cg, s_sum);
    Ok(s.sum(vec![s.semi(a.clone(), a), s.t(y, cg, s_sum)]))
}

/// The table row a pair falls under.
pub fn classify(f: &Field, left: &ModuleParams, right: &ModuleParams, opts: Options) -> Result<CaseId, OracleError> {
    Ok(evaluate(f, left, right, opts)?.case)
}

/// The decomposition of `left (x) right` predicted by the tables.
pub fn predict(f: &Field, left: &ModuleParams, right: &ModuleParams, opts: Options) -> Result<Prediction, OracleError> {
    let e = evaluate(f, left, right, opts)?;
    Ok(Prediction {
        case: e.case,
        descriptor: e.descriptor?,
        typos: e.typos,
    })
}

/// The table quantities for a pair, computed on the normalized factors.
pub fn symbols(f: &Field, left: &ModuleParams, right: &ModuleParams) -> Result<SymbolSet, OracleError> {
    let l = factor_of(f, left)?;
    let r = factor_of(f, right)?;
    let triple = |x: Factor| -> Option<(Triple, bool)> {
        match x {
            Factor::Tt(b) => Some(((b, f.inv(b).ok()?, f.zero()), true)),
            Factor::T(b, c, d) => Some(((b, c, d), false)),
            _ => None,
        }
    };
    Ok(match (triple(l), triple(r)) {
        (Some((a, ta)), Some((b, tb))) => {
            // Put a Tt factor on the left, as the tables do.
            let (a, b, tt) = if tb && !ta { (b, a, true) } else { (a, b, ta) };
            let (a, b) = if tt { (a, b) } else { normalize_tt(f, a, b) };
            SymbolSet::for_pair(f, a, b, tt)
        }
        (Some((a, _)), None) | (None, Some((a, _))) => SymbolSet::for_two(f, a),
        (None, None) => SymbolSet::for_pair(f, (f.zero(), f.zero(), f.zero()), (f.zero(), f.zero(), f.zero()), false),
    })
}

/// Scalars by which `X+^3` and `X-^3` act on a product of two
/// three-dimensional factors, from the closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubePrediction {
    pub plus: Fe,
    pub minus: Fe,
    /// The misprint whose reading the `X+` scalar depends on, if any.
    pub typos: Vec<Typo>,
}

/// The closed-form cube scalars of `left (x) right`. `None` when either
/// factor is `1` or `2`.
pub fn cube_scalars(
    f: &Field,
    left: &ModuleParams,
    right: &ModuleParams,
    opts: Options,
) -> Result<Option<CubePrediction>, OracleError> {
    let l = factor_of(f, left)?;
    let r = factor_of(f, right)?;
    let inv = |x: Fe| f.inv(x).expect("Tt factor has b != 0");
    Ok(match (l, r) {
        (Factor::Tt(b), Factor::Tt(beta)) => Some(CubePrediction {
            plus: f.add(inv(b), inv(beta)),
            minus: f.zero(),
            typos: Vec::new(),
        }),
        (Factor::Tt(b), Factor::T(beta, gamma, delta)) | (Factor::T(beta, gamma, delta), Factor::Tt(b)) => {
            let (al1, al2) = a1a2(f, (beta, gamma, delta));
            Some(CubePrediction {
                plus: f.add(inv(b), f.mul(beta, f.mul(al1, al2))),
                minus: gamma,
                typos: Vec::new(),
            })
        }
        (Factor::T(b, c, d), Factor::T(beta, gamma, delta)) => {
            let (a1, a2) = a1a2(f, (b, c, d));
            let (al1, al2) = a1a2(f, (beta, gamma, delta));
            let second = if opts.paper_literal { a1 } else { a2 };
            Some(CubePrediction {
                plus: f.add(f.mul(b, f.mul(a1, second)), f.mul(beta, f.mul(al1, al2))),
                minus: f.add(c, gamma),
                typos: vec![Typo::CubeSubscript],
            })
        }
        _ => None,
    })
}

/// One entry of [`table_dump`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowDump {
    pub key: String,
    pub table: String,
    pub title: String,
    pub conditions: String,
    pub printed: String,
    pub reading: Option<String>,
}

/// Every row of every table, in order.
pub fn table_dump() -> Vec<RowDump> {
    CaseId::all()
        .into_iter()
        .map(|c| {
            let spec = c.spec();
            RowDump {
                key: c.key(),
                table: c.table.label().to_string(),
                title: c.table.title().to_string(),
                conditions: spec.id.to_string(),
                printed: spec.printed.to_string(),
                reading: spec.reading.map(str::to_string),
            }
        })
        .collect()
}
