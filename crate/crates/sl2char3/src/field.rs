//! Exact arithmetic in GF(3^k) for 1 <= k <= 6.
//!
//! Elements are stored as the base-3 integer `sum c_i 3^i` of their
//! coefficient sequence in the polynomial basis `1, t, t^2, ...`, tagged with
//! the id of the context they belong to. All operations go through a
//! [`Field`] handle, which owns precomputed addition and log/exp tables.
//!
//! Default moduli (coefficients listed low to high):
//!
//! | k | modulus            |
//! |---|--------------------|
//! | 1 | x                  |
//! | 2 | x^2 + 1            |
//! | 3 | x^3 + 2x^2 + 1     |
//! | 4 | x^4 + x^3 + x^2 + 1 |
//! | 5 | x^5 + 2x^4 + 1     |
//! | 6 | x^6 + x^5 + x^4 + 1 |
//!
//! For k >= 3 these are the first monic irreducibles in lexicographic order of
//! the coefficient sequence; a test re-derives them.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU16, Ordering as AtomicOrdering};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::poly;

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 6;

const DEFAULT_MODULI: [&[u8]; 6] = [
    &[0, 1],
    &[1, 0, 1],
    &[1, 0, 2, 1],
    &[1, 0, 1, 1, 1],
    &[1, 0, 0, 0, 2, 1],
    &[1, 0, 0, 0, 1, 1, 1],
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field degree {0} is outside 1..=6")]
    Degree(u32),
    #[error("modulus must be monic of degree {degree} with coefficients in 0..=2")]
    MalformedModulus { degree: u32 },
    #[error("modulus {0:?} is reducible over GF(3)")]
    ReducibleModulus(Vec<u8>),
    #[error("operands belong to different field contexts")]
    ContextMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("GF(3^{from}) does not embed into GF(3^{to})")]
    NoEmbedding { from: u32, to: u32 },
    #[error("the zero polynomial has no well-defined roots")]
    ZeroPolynomial,
    #[error("cannot parse field element `{0}`")]
    Parse(String),
}

/// A field element: base-3 code plus the id of its context.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fe {
    code: u16,
    ctx: u16,
}

impl Fe {
    /// The base-3 code `sum c_i 3^i`.
    pub fn code(self) -> u16 {
        self.code
    }

    pub fn ctx_id(self) -> u16 {
        self.ctx
    }

    pub fn is_zero(self) -> bool {
        self.code == 0
    }

    /// Key whose integer order is the lexicographic order of the coefficient
    /// sequence `(c0, c1, ..., c5)`.
    fn lex_key(self) -> u32 {
        let mut code = self.code as u32;
        let mut key = 0;
        for _ in 0..MAX_DEGREE {
            key = key * 3 + code % 3;
            code /= 3;
        }
        key
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .cmp(&other.ctx)
            .then_with(|| self.lex_key().cmp(&other.lex_key()))
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut digits = Vec::new();
        let mut code = self.code;
        while code > 0 {
            digits.push(code % 3);
            code /= 3;
        }
        if digits.is_empty() {
            digits.push(0);
        }
        write!(f, "Fe{digits:?}")
    }
}

/// Binary and unary operations for the checked [`Field::arith`] entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Roots of a polynomial that lie in the field, with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSet {
    /// Distinct roots sorted by encoding, with multiplicities.
    pub roots: Vec<(Fe, u32)>,
    /// Degree of the part of the polynomial with no roots in the field.
    pub cofactor_degree: usize,
}

impl RootSet {
    /// Roots repeated according to multiplicity, sorted by encoding.
    pub fn with_multiplicity(&self) -> Vec<Fe> {
        self.roots
            .iter()
            .flat_map(|&(r, m)| std::iter::repeat_n(r, m as usize))
            .collect()
    }

    pub fn splits(&self) -> bool {
        self.cofactor_degree == 0
    }
}

struct FieldCtx {
    id: u16,
    degree: u32,
    modulus: Vec<u8>,
    order: usize,
    add: Vec<u16>,
    neg: Vec<u16>,
    exp: Vec<u16>,
    log: Vec<u16>,
    sqrt: Vec<Option<u16>>,
    embeddings: Mutex<HashMap<u16, Arc<Vec<u16>>>>,
}

/// Shared handle to an immutable field context.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(3^{}) modulus {:?}", self.0.degree, self.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.id == other.0.id
    }
}

impl Eq for Field {}

static NEXT_ID: AtomicU16 = AtomicU16::new(1);
static STANDARD: [OnceLock<Field>; 6] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn digits(mut code: usize, k: usize) -> Vec<u8> {
    let mut out = vec![0u8; k];
    for d in out.iter_mut() {
        *d = (code % 3) as u8;
        code /= 3;
    }
    out
}

fn undigits(ds: &[u8]) -> usize {
    ds.iter().rev().fold(0, |acc, &d| acc * 3 + d as usize)
}

/// Product of two residues modulo a monic modulus, by schoolbook reduction.
fn slow_mul(a: &[u8], b: &[u8], modulus: &[u8]) -> Vec<u8> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u8; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % 3;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + 3 * 3 - c * m) % 3;
            }
        }
    }
    prod.truncate(k);
    prod
}

/// Trial division of a monic polynomial over GF(3) by every monic polynomial
/// of degree 1..=deg/2.
pub fn is_irreducible_over_f3(modulus: &[u8]) -> bool {
    let n = modulus.len() - 1;
    if n <= 1 {
        return n == 1;
    }
    for deg in 1..=n / 2 {
        for low in 0..3usize.pow(deg as u32) {
            let mut divisor = digits(low, deg);
            divisor.push(1);
            if f3_rem(modulus, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn f3_rem(num: &[u8], den: &[u8]) -> Vec<u8> {
    let mut r = num.to_vec();
    let dd = den.len() - 1;
    while r.len() > dd && !r.is_empty() {
        let top = r.len() - 1;
        let c = r[top];
        if c != 0 {
            for (i, &m) in den.iter().enumerate() {
                let idx = top - dd + i;
                r[idx] = (r[idx] + 9 - c * m) % 3;
            }
        }
        r.pop();
    }
    r
}

impl Field {
    /// Builds a context for GF(3^k). With `modulus = None` the pinned default
    /// for that degree is used.
    pub fn new(degree: u32, modulus: Option<&[u8]>) -> Result<Field, FieldError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(FieldError::Degree(degree));
        }
        let modulus = modulus.unwrap_or(DEFAULT_MODULI[degree as usize - 1]).to_vec();
        if modulus.len() != degree as usize + 1 || modulus.iter().any(|&c| c > 2) || modulus[degree as usize] != 1 {
            return Err(FieldError::MalformedModulus { degree });
        }
        if !is_irreducible_over_f3(&modulus) {
            return Err(FieldError::ReducibleModulus(modulus));
        }
        Ok(Field(Arc::new(Self::build(degree, modulus))))
    }

    /// The shared context with the default modulus for degree `k`.
    pub fn gf(degree: u32) -> Result<Field, FieldError> {
        if !(1..=MAX_DEGREE).contains(&degree) {
            return Err(FieldError::Degree(degree));
        }
        Ok(STANDARD[degree as usize - 1]
            .get_or_init(|| Field::new(degree, None).expect("default moduli are irreducible"))
            .clone())
    }

    fn build(degree: u32, modulus: Vec<u8>) -> FieldCtx {
        let k = degree as usize;
        let order = 3usize.pow(degree);
        let mut add = vec![0u16; order * order];
        let mut neg = vec![0u16; order];
        for a in 0..order {
            let da = digits(a, k);
            let na: Vec<u8> = da.iter().map(|&x| (3 - x) % 3).collect();
            neg[a] = undigits(&na) as u16;
            for b in 0..order {
                let db = digits(b, k);
                let s: Vec<u8> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % 3).collect();
                add[a * order + b] = undigits(&s) as u16;
            }
        }
        // Find a generator of the multiplicative group.
        let one = {
            let mut v = vec![0u8; k];
            v[0] = 1;
            v
        };
        let mut exp = Vec::new();
        for g in 1..order {
            let dg = digits(g, k);
            let mut powers = vec![undigits(&one) as u16];
            let mut cur = dg.clone();
            while cur != one {
                powers.push(undigits(&cur) as u16);
                cur = slow_mul(&cur, &dg, &modulus);
            }
            if powers.len() == order - 1 {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u16; order];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u16;
        }
        let doubled: Vec<u16> = exp.iter().chain(exp.iter()).copied().collect();
        let id = NEXT_ID.fetch_add(1, AtomicOrdering::Relaxed);
        let mut ctx = FieldCtx {
            id,
            degree,
            modulus,
            order,
            add,
            neg,
            exp: doubled,
            log,
            sqrt: vec![None; order],
            embeddings: Mutex::new(HashMap::new()),
        };
        let field = Field(Arc::new(ctx));
        let mut sqrt: Vec<Option<Fe>> = vec![None; order];
        for x in field.elements() {
            let sq = field.mul(x, x);
            let slot = &mut sqrt[sq.code as usize];
            if slot.is_none_or(|cur| x < cur) {
                *slot = Some(x);
            }
        }
        ctx = Arc::try_unwrap(field.0).ok().expect("sole owner during construction");
        ctx.sqrt = sqrt.into_iter().map(|s| s.map(|x| x.code)).collect();
        ctx
    }

    pub fn id(&self) -> u16 {
        self.0.id
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// Number of elements, `3^k`.
    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    fn fe(&self, code: u16) -> Fe {
        Fe { code, ctx: self.0.id }
    }

    pub fn zero(&self) -> Fe {
        self.fe(0)
    }

    pub fn one(&self) -> Fe {
        self.fe(1)
    }

    /// Image of an integer in the prime field.
    pub fn from_i64(&self, n: i64) -> Fe {
        self.fe(n.rem_euclid(3) as u16)
    }

    /// Element with the given coefficients `c0, c1, ...` (shorter sequences are
    /// padded with zeros).
    pub fn from_coeffs(&self, coeffs: &[u8]) -> Result<Fe, FieldError> {
        let k = self.0.degree as usize;
        if coeffs.len() > k || coeffs.iter().any(|&c| c > 2) {
            return Err(FieldError::Parse(format!("{coeffs:?}")));
        }
        Ok(self.fe(undigits(coeffs) as u16))
    }

    /// The coefficient sequence of `a`, of length k.
    pub fn coeffs(&self, a: Fe) -> Vec<u8> {
        digits(a.code as usize, self.0.degree as usize)
    }

    /// The generator `t` of the polynomial basis (equal to 0 in GF(3) with modulus x).
    pub fn gen(&self) -> Fe {
        if self.0.degree == 1 {
            self.fe((3 - self.0.modulus[0] as u16) % 3)
        } else {
            self.fe(3)
        }
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.0.order as u16).map(move |c| self.fe(c))
    }

    /// Nonzero elements in code order.
    pub fn nonzero(&self) -> impl Iterator<Item = Fe> + '_ {
        (1..self.0.order as u16).map(move |c| self.fe(c))
    }

    /// Whether `a` was created by this context.
    pub fn owns(&self, a: Fe) -> bool {
        a.ctx == self.0.id
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(self.owns(a) && self.owns(b));
        self.fe(self.0.add[a.code as usize * self.0.order + b.code as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        debug_assert!(self.owns(a));
        self.fe(self.0.neg[a.code as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        debug_assert!(self.owns(a) && self.owns(b));
        if a.code == 0 || b.code == 0 {
            return self.zero();
        }
        let l = self.0.log[a.code as usize] as usize + self.0.log[b.code as usize] as usize;
        self.fe(self.0.exp[l])
    }

    /// Checked arithmetic: rejects operands from other contexts. For `Op::Neg`
    /// the second operand is ignored but must still belong to this context.
    pub fn arith(&self, a: Fe, b: Fe, op: Op) -> Result<Fe, FieldError> {
        if !self.owns(a) || !self.owns(b) {
            return Err(FieldError::ContextMismatch);
        }
        Ok(match op {
            Op::Add => self.add(a, b),
            Op::Sub => self.sub(a, b),
            Op::Mul => self.mul(a, b),
            Op::Neg => self.neg(a),
        })
    }

    pub fn inv(&self, a: Fe) -> Result<Fe, FieldError> {
        debug_assert!(self.owns(a));
        if a.code == 0 {
            return Err(FieldError::ZeroInverse);
        }
        let n = self.0.order - 1;
        let l = self.0.log[a.code as usize] as usize;
        Ok(self.fe(self.0.exp[(n - l) % n]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return self.one();
        }
        if a.code == 0 {
            return self.zero();
        }
        let n = (self.0.order - 1) as u64;
        let l = self.0.log[a.code as usize] as u64;
        self.fe(self.0.exp[((l * (e % n)) % n) as usize])
    }

    pub fn square(&self, a: Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn cube(&self, a: Fe) -> Fe {
        self.mul(a, self.mul(a, a))
    }

    /// A square root of `a` if one exists in this field; of the two roots the
    /// one with the lexicographically smaller coefficient sequence.
    pub fn sqrt(&self, a: Fe) -> Option<Fe> {
        debug_assert!(self.owns(a));
        self.0.sqrt[a.code as usize].map(|c| self.fe(c))
    }

    /// The unique cube root, `a^(3^(k-1))` (inverse of the Frobenius map).
    pub fn cbrt(&self, a: Fe) -> Fe {
        self.pow(a, 3u64.pow(self.0.degree - 1))
    }

    /// Whether `a` lies in the prime field; returns its integer value.
    pub fn prime_value(&self, a: Fe) -> Option<u8> {
        (a.code < 3).then_some(a.code as u8)
    }

    /// Image of `a` (an element of `self`) under the fixed embedding into `target`.
    pub fn lift(&self, a: Fe, target: &Field) -> Result<Fe, FieldError> {
        if !self.owns(a) {
            return Err(FieldError::ContextMismatch);
        }
        let table = self.embedding_into(target)?;
        Ok(target.fe(table[a.code as usize]))
    }

    /// The embedding table `code -> code`, computed once per context pair by
    /// choosing the smallest root of this field's modulus in `target`.
    fn embedding_into(&self, target: &Field) -> Result<Arc<Vec<u16>>, FieldError> {
        if !target.degree().is_multiple_of(self.degree()) {
            return Err(FieldError::NoEmbedding {
                from: self.degree(),
                to: target.degree(),
            });
        }
        if let Some(t) = target.0.embeddings.lock().expect("poisoned").get(&self.0.id) {
            return Ok(t.clone());
        }
        let table = if self == target {
            (0..self.order() as u16).collect()
        } else {
            let modulus: Vec<Fe> = self.0.modulus.iter().map(|&c| target.from_i64(c as i64)).collect();
            let root = target
                .elements()
                .filter(|&x| poly::eval(target, &modulus, x).is_zero())
                .min()
                .ok_or(FieldError::NoEmbedding {
                    from: self.degree(),
                    to: target.degree(),
                })?;
            let k = self.degree() as usize;
            let mut powers = vec![target.one()];
            for i in 1..k {
                powers.push(target.mul(powers[i - 1], root));
            }
            (0..self.order())
                .map(|code| {
                    digits(code, k)
                        .iter()
                        .zip(&powers)
                        .fold(target.zero(), |acc, (&c, &p)| {
                            target.add(acc, target.mul(target.from_i64(c as i64), p))
                        })
                        .code
                })
                .collect()
        };
        let table = Arc::new(table);
        let mut cache = target.0.embeddings.lock().expect("poisoned");
        Ok(cache.entry(self.0.id).or_insert(table).clone())
    }

    /// Text form: `0`, `1`, `2` in GF(3); `[c0,c1,...]` otherwise.
    pub fn format(&self, a: Fe) -> String {
        if self.0.degree == 1 {
            return a.code.to_string();
        }
        let cs: Vec<String> = self.coeffs(a).iter().map(|c| c.to_string()).collect();
        format!("[{}]", cs.join(","))
    }

    /// Parses the text form. Plain integers (possibly negative) denote prime
    /// field elements in any context.
    pub fn parse(&self, text: &str) -> Result<Fe, FieldError> {
        let t = text.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
            let mut cs = Vec::new();
            for part in inner.split(',') {
                let v: i64 = part.trim().parse().map_err(|_| FieldError::Parse(text.to_string()))?;
                cs.push(v.rem_euclid(3) as u8);
            }
            return self.from_coeffs(&cs).map_err(|_| FieldError::Parse(text.to_string()));
        }
        t.parse::<i64>()
            .map(|v| self.from_i64(v))
            .map_err(|_| FieldError::Parse(text.to_string()))
    }

    /// Roots lying in this field of the polynomial with coefficients `coeffs`
    /// (low to high). Trailing zero coefficients are ignored.
    pub fn poly_roots(&self, coeffs: &[Fe]) -> Result<RootSet, FieldError> {
        let mut p = poly::trim(coeffs.to_vec());
        if p.is_empty() {
            return Err(FieldError::ZeroPolynomial);
        }
        let mut roots = Vec::new();
        for x in self.elements() {
            let mut mult = 0;
            while p.len() > 1 && poly::eval(self, &p, x).is_zero() {
                p = poly::div_linear(self, &p, x);
                mult += 1;
            }
            if mult > 0 {
                roots.push((x, mult));
            }
        }
        roots.sort();
        Ok(RootSet {
            roots,
            cofactor_degree: p.len() - 1,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_are_first_irreducibles() {
        for k in 3..=6u32 {
            let first = (0..3usize.pow(k))
                .map(|low| {
                    let mut m = digits(low, k as usize);
                    m.push(1);
                    m
                })
                .filter(|m| is_irreducible_over_f3(m))
                .min()
                .unwrap();
            assert_eq!(first, DEFAULT_MODULI[k as usize - 1], "k = {k}");
        }
    }

    #[test]
    fn lex_key_orders_by_c0_first() {
        let f = Field::gf(2).unwrap();
        let t = f.from_coeffs(&[0, 1]).unwrap();
        let two = f.from_i64(2);
        assert!(t < f.one());
        assert!(f.one() < two);
        assert!(f.from_coeffs(&[1, 2]).unwrap() < two);
    }
}
