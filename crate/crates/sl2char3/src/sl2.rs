//! Representations of sl(2) by explicit matrices, and the module families
//! `1`, `2`, `3`, `T(b,c,d)` and `Tt(b,c,d)`.
//!
//! Matrices act on column vectors, so the image of basis vector `e_j` under a
//! generator is column `j` of its matrix.

use std::fmt;

use thiserror::Error;

use crate::field::{Fe, Field, FieldError};
use crate::linalg::{projective_points, LinalgError, Mat, Subspace, Vector};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Sl2Error {
    #[error("{family}({b},{c},{d}) is excluded: (b,c,d) = (0,0,±1) is not irreducible")]
    Excluded {
        family: &'static str,
        b: String,
        c: String,
        d: String,
    },
    #[error("the standard module of dimension {0} is not available (only 1, 2, 3)")]
    StandardDim(usize),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("generators do not share one field context or one size")]
    Shape,
}

/// Symbolic identity of a module from the families above.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModuleParams {
    One,
    Two,
    T(Fe, Fe, Fe),
    Tt(Fe, Fe, Fe),
    Dual(Box<ModuleParams>),
}

impl ModuleParams {
    pub fn dim(&self) -> usize {
        match self {
            ModuleParams::One => 1,
            ModuleParams::Two => 2,
            ModuleParams::T(..) | ModuleParams::Tt(..) => 3,
            ModuleParams::Dual(inner) => inner.dim(),
        }
    }

    /// `Tt(b, 1/b, 0)`.
    pub fn tt_canonical(field: &Field, b: Fe) -> Result<ModuleParams, FieldError> {
        Ok(ModuleParams::Tt(b, field.inv(b)?, field.zero()))
    }

    /// Rejects the excluded parameters `(0,0,±1)` of either family.
    pub fn check_admissible(&self, field: &Field) -> Result<(), Sl2Error> {
        match self {
            ModuleParams::T(b, c, d) => check_family(field, "T", *b, *c, *d),
            ModuleParams::Tt(b, c, d) => check_family(field, "Tt", *b, *c, *d),
            ModuleParams::Dual(inner) => inner.check_admissible(field),
            _ => Ok(()),
        }
    }

    /// Text form in the shared grammar, e.g. `T(1,[0,1],0)`.
    pub fn format(&self, field: &Field) -> String {
        match self {
            ModuleParams::One => "One".into(),
            ModuleParams::Two => "Two".into(),
            ModuleParams::T(b, c, d) => format!("T({},{},{})", field.format(*b), field.format(*c), field.format(*d)),
            ModuleParams::Tt(b, c, d) => format!("Tt({},{},{})", field.format(*b), field.format(*c), field.format(*d)),
            ModuleParams::Dual(inner) => format!("Dual({})", inner.format(field)),
        }
    }

    /// Parses `One | Two | T(e,e,e) | Tt(e,e,e) | Tt(e) | Dual(expr)`, where
    /// `Tt(b)` abbreviates `Tt(b,1/b,0)`. Parameters are checked against the
    /// exclusions.
    pub fn parse(text: &str, field: &Field) -> Result<ModuleParams, Sl2Error> {
        let mut p = Parser { text, pos: 0, field };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(p.error("trailing input"));
        }
        out.check_admissible(field)?;
        Ok(out)
    }

    /// The same parameters in an extension field.
    pub fn lift(&self, from: &Field, to: &Field) -> Result<ModuleParams, FieldError> {
        let l = |x: &Fe| from.lift(*x, to);
        Ok(match self {
            ModuleParams::One => ModuleParams::One,
            ModuleParams::Two => ModuleParams::Two,
            ModuleParams::T(b, c, d) => ModuleParams::T(l(b)?, l(c)?, l(d)?),
            ModuleParams::Tt(b, c, d) => ModuleParams::Tt(l(b)?, l(c)?, l(d)?),
            ModuleParams::Dual(inner) => ModuleParams::Dual(Box::new(inner.lift(from, to)?)),
        })
    }
}

fn check_family(field: &Field, family: &'static str, b: Fe, c: Fe, d: Fe) -> Result<(), Sl2Error> {
    let unit_d = d == field.one() || d == field.neg(field.one());
    if b.is_zero() && c.is_zero() && unit_d {
        return Err(Sl2Error::Excluded {
            family,
            b: field.format(b),
            c: field.format(c),
            d: field.format(d),
        });
    }
    Ok(())
}

struct Parser<'a> {
    text: &'a str,
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Sl2Error {
        Sl2Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn rest(&self) -> &str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.text.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<(), Sl2Error> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{token}`")))
        }
    }

    fn ident(&mut self) -> Result<&str, Sl2Error> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.error("expected a module name"));
        }
        let start = self.pos;
        self.pos += len;
        Ok(&self.text[start..self.pos])
    }

    fn expr(&mut self) -> Result<ModuleParams, Sl2Error> {
        let start = self.pos;
        let name = self.ident()?.to_string();
        match name.as_str() {
            "One" => Ok(ModuleParams::One),
            "Two" => Ok(ModuleParams::Two),
            "Dual" => {
                self.expect("(")?;
                let inner = self.expr()?;
                self.expect(")")?;
                Ok(ModuleParams::Dual(Box::new(inner)))
            }
            "T" | "Tt" => {
                self.expect("(")?;
                let mut args = vec![self.element()?];
                while self.eat(",") {
                    args.push(self.element()?);
                }
                self.expect(")")?;
                match (name.as_str(), args.as_slice()) {
                    (_, &[b, c, d]) if name == "T" => Ok(ModuleParams::T(b, c, d)),
                    (_, &[b, c, d]) => Ok(ModuleParams::Tt(b, c, d)),
                    ("Tt", &[b]) => ModuleParams::tt_canonical(self.field, b).map_err(|_| Sl2Error::Syntax {
                        pos: start,
                        msg: "Tt(b) needs b != 0".into(),
                    }),
                    _ => Err(Sl2Error::Syntax {
                        pos: start,
                        msg: format!("{name} takes three parameters"),
                    }),
                }
            }
            _ => Err(Sl2Error::Syntax {
                pos: start,
                msg: format!("unknown module `{name}`"),
            }),
        }
    }

    fn element(&mut self) -> Result<Fe, Sl2Error> {
        self.skip_ws();
        let start = self.pos;
        let len = if self.rest().starts_with('[') {
            self.rest()
                .find(']')
                .map(|i| i + 1)
                .ok_or_else(|| self.error("unclosed `[`"))?
        } else {
            self.rest()
                .find(|c: char| c == ',' || c == ')' || c.is_whitespace())
                .unwrap_or(self.rest().len())
        };
        self.pos += len;
        self.field
            .parse(&self.text[start..self.pos])
            .map_err(|_| Sl2Error::Syntax {
                pos: start,
                msg: format!("bad field element `{}`", &self.text[start..self.pos]),
            })
    }
}

/// A module given by the matrices of `X-`, `H` and `X+`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub xminus: Mat,
    pub h: Mat,
    pub xplus: Mat,
}

/// First failing bracket relation, with the entry where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub relation: &'static str,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at entry ({}, {})", self.relation, self.row, self.col)
    }
}

fn a1a2(field: &Field, b: Fe, c: Fe, d: Fe) -> (Fe, Fe) {
    let bc = field.mul(b, c);
    let one = field.one();
    (field.sub(field.add(bc, d), one), field.sub(field.sub(bc, d), one))
}

impl Rep {
    pub fn new(xminus: Mat, h: Mat, xplus: Mat) -> Result<Rep, Sl2Error> {
        let n = h.rows();
        let same = [&xminus, &h, &xplus]
            .iter()
            .all(|m| m.is_square() && m.rows() == n && m.field() == h.field());
        if !same {
            return Err(Sl2Error::Shape);
        }
        Ok(Rep { xminus, h, xplus })
    }

    pub fn field(&self) -> &Field {
        self.h.field()
    }

    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    /// The generators in the order `X-, H, X+`.
    pub fn generators(&self) -> [&Mat; 3] {
        [&self.xminus, &self.h, &self.xplus]
    }

    /// The standard module of dimension 1, 2 or 3.
    pub fn standard(field: &Field, n: usize) -> Result<Rep, Sl2Error> {
        match n {
            1 => Ok(Rep::trivial(field, 1)),
            2 => {
                let xm = Mat::from_ints(field, &[&[0, 0], &[1, 0]]);
                let h = Mat::from_ints(field, &[&[1, 0], &[0, -1]]);
                let xp = Mat::from_ints(field, &[&[0, 1], &[0, 0]]);
                Ok(Rep {
                    xminus: xm,
                    h,
                    xplus: xp,
                })
            }
            3 => {
                let z = field.zero();
                Ok(Rep::t_unchecked(field, z, z, z))
            }
            _ => Err(Sl2Error::StandardDim(n)),
        }
    }

    /// The zero action on an `n`-dimensional space.
    pub fn trivial(field: &Field, n: usize) -> Rep {
        let z = Mat::zeros(field, n, n);
        Rep {
            xminus: z.clone(),
            h: z.clone(),
            xplus: z,
        }
    }

    pub fn t(field: &Field, b: Fe, c: Fe, d: Fe) -> Result<Rep, Sl2Error> {
        check_family(field, "T", b, c, d)?;
        Ok(Self::t_unchecked(field, b, c, d))
    }

    /// `T(b,c,d)` without the exclusion check, for studying the reducible
    /// parameter values.
    pub fn t_unchecked(field: &Field, b: Fe, c: Fe, d: Fe) -> Rep {
        let (a1, a2) = a1a2(field, b, c, d);
        let z = field.zero();
        let one = field.one();
        let xm = Mat::from_rows(field, &[vec![z, z, c], vec![one, z, z], vec![z, one, z]]);
        let xp = Mat::from_rows(field, &[vec![z, a1, z], vec![z, z, a2], vec![b, z, z]]);
        Rep {
            xminus: xm,
            h: weights_matrix(field, d),
            xplus: xp,
        }
    }

    pub fn ttilde(field: &Field, b: Fe, c: Fe, d: Fe) -> Result<Rep, Sl2Error> {
        check_family(field, "Tt", b, c, d)?;
        Ok(Self::ttilde_unchecked(field, b, c, d))
    }

    /// `Tt(b,c,d)` without the exclusion check.
    pub fn ttilde_unchecked(field: &Field, b: Fe, c: Fe, d: Fe) -> Rep {
        let (a1, a2) = a1a2(field, b, c, d);
        let z = field.zero();
        let one = field.one();
        let xm = Mat::from_rows(field, &[vec![z, z, b], vec![a1, z, z], vec![z, a2, z]]);
        let xp = Mat::from_rows(field, &[vec![z, one, z], vec![z, z, one], vec![c, z, z]]);
        Rep {
            xminus: xm,
            h: weights_matrix(field, d),
            xplus: xp,
        }
    }

    pub fn from_params(field: &Field, p: &ModuleParams) -> Result<Rep, Sl2Error> {
        match p {
            ModuleParams::One => Rep::standard(field, 1),
            ModuleParams::Two => Rep::standard(field, 2),
            ModuleParams::T(b, c, d) => Rep::t(field, *b, *c, *d),
            ModuleParams::Tt(b, c, d) => Rep::ttilde(field, *b, *c, *d),
            ModuleParams::Dual(inner) => Ok(Rep::from_params(field, inner)?.dual()),
        }
    }

    /// The dual module: every generator becomes its negative transpose.
    pub fn dual(&self) -> Rep {
        Rep {
            xminus: self.xminus.transpose().neg(),
            h: self.h.transpose().neg(),
            xplus: self.xplus.transpose().neg(),
        }
    }

    /// Checks `[X+,X-] = H`, `[H,X+] = 2X+`, `[H,X-] = -2X-`.
    pub fn validate(&self) -> Result<(), Violation> {
        let f = self.field();
        let two = f.from_i64(2);
        let checks = [
            ("[X+,X-] = H", self.xplus.bracket(&self.xminus).sub(&self.h)),
            ("[H,X+] = 2X+", self.h.bracket(&self.xplus).sub(&self.xplus.scale(two))),
            (
                "[H,X-] = -2X-",
                self.h.bracket(&self.xminus).add(&self.xminus.scale(two)),
            ),
        ];
        for (relation, m) in checks {
            if let Some(k) = m.entries().iter().position(|x| !x.is_zero()) {
                return Err(Violation {
                    relation,
                    row: k / m.cols(),
                    col: k % m.cols(),
                });
            }
        }
        Ok(())
    }

    /// Smallest subspace containing the vectors and closed under the generators.
    pub fn spin(&self, vectors: &[Vector]) -> Subspace {
        let f = self.field();
        let mut space = Subspace::span(f, self.dim(), vectors);
        loop {
            let mut all: Vec<Vector> = space.basis().to_vec();
            for v in space.basis() {
                for g in self.generators() {
                    all.push(g.apply(v));
                }
            }
            let next = Subspace::span(f, self.dim(), &all);
            if next.dim() == space.dim() {
                return space;
            }
            space = next;
        }
    }

    /// Whether the generators leave `u` invariant.
    pub fn is_invariant(&self, u: &Subspace) -> bool {
        u.basis()
            .iter()
            .all(|v| self.generators().iter().all(|g| u.contains(&g.apply(v))))
    }

    /// Restriction to an invariant subspace, in its echelon basis.
    pub fn restrict(&self, u: &Subspace) -> Result<Rep, LinalgError> {
        Ok(Rep {
            xminus: self.xminus.restrict(u)?,
            h: self.h.restrict(u)?,
            xplus: self.xplus.restrict(u)?,
        })
    }

    /// Action on the quotient by an invariant subspace.
    pub fn quotient(&self, u: &Subspace) -> Result<Rep, LinalgError> {
        Ok(Rep {
            xminus: self.xminus.quotient_action(u)?,
            h: self.h.quotient_action(u)?,
            xplus: self.xplus.quotient_action(u)?,
        })
    }

    /// Whether the module has no proper nonzero submodule.
    ///
    /// Every minimal submodule meets some weight space, and inside a weight
    /// space it is stable under `X+X-`. With one-dimensional weight spaces the
    /// weight basis vectors therefore suffice. Otherwise every projective
    /// point of each weight space is spun while that is cheap, and beyond that
    /// the eigenvectors of `X+X-` on each weight space are used.
    pub fn is_irreducible(&self) -> bool {
        let n = self.dim();
        if n <= 1 {
            return true;
        }
        let f = self.field();
        let xpxm = self.xplus.mul(&self.xminus);
        for (_, space) in self.h.eigenspaces() {
            let candidates: Vec<Vector> = if space.dim() == 1 {
                space.basis().to_vec()
            } else if f.order().pow(space.dim() as u32 - 1) <= 2_000 {
                projective_points(f, space.dim())
                    .iter()
                    .map(|c| space.combine(c))
                    .collect()
            } else {
                let restricted = xpxm.restrict(&space).expect("weight spaces are X+X- stable");
                restricted
                    .eigenspaces()
                    .into_iter()
                    .flat_map(|(_, e)| e.basis().to_vec())
                    .map(|c| space.combine(&c))
                    .collect()
            };
            if candidates.iter().any(|v| self.spin(std::slice::from_ref(v)).dim() < n) {
                return false;
            }
        }
        true
    }

    /// Whether `H` is diagonal.
    pub fn has_diagonal_h(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| i == j || self.h[(i, j)].is_zero()))
    }

    /// Same module in a basis change: generators become `s^-1 g s`, so the
    /// columns of `s` are the new basis vectors.
    pub fn conjugate(&self, s: &Mat) -> Option<Rep> {
        let inv = s.inverse()?;
        Some(Rep {
            xminus: inv.mul(&self.xminus).mul(s),
            h: inv.mul(&self.h).mul(s),
            xplus: inv.mul(&self.xplus).mul(s),
        })
    }

    /// The generators lifted entrywise into an extension field.
    pub fn lift(&self, to: &Field) -> Result<Rep, FieldError> {
        let from = self.field();
        let l = |m: &Mat| -> Result<Mat, FieldError> {
            let entries: Result<Vec<Fe>, FieldError> = m.entries().iter().map(|&x| from.lift(x, to)).collect();
            let entries = entries?;
            Ok(Mat::from_fn(to, m.rows(), m.cols(), |i, j| entries[i * m.cols() + j]))
        };
        Ok(Rep {
            xminus: l(&self.xminus)?,
            h: l(&self.h)?,
            xplus: l(&self.xplus)?,
        })
    }
}

fn weights_matrix(field: &Field, d: Fe) -> Mat {
    let one = field.one();
    Mat::diag(field, &[field.sub(d, one), d, field.add(d, one)])
}
