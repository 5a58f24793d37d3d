//! The auxiliary quantities the tables are written in.

use crate::field::{Fe, Field, RootSet};

/// Parameters `(b, c, d)` of a three-dimensional factor. A `Tt(b,1/b,0)`
/// factor enters with `c = 1/b` and `d = 0`, so `a1 = a2 = 0`.
pub type Triple = (Fe, Fe, Fe);

/// Table quantities for a pair of factors. Entries that need both factors
/// are `None` when one factor is `1` or `2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolSet {
    pub a1: Option<Fe>,
    pub a2: Option<Fe>,
    pub alpha1: Option<Fe>,
    pub alpha2: Option<Fe>,
    /// `1 + alpha1 alpha2 b beta`.
    pub j: Option<Fe>,
    /// `a1 a2 b + alpha1 alpha2 beta`.
    pub k: Option<Fe>,
    /// `(d+delta)^2 (1-(d+delta)^2)^2`.
    pub d_big: Option<Fe>,
    /// `(d+delta)(1+d+delta)`.
    pub delta_big: Option<Fe>,
    /// `1 + bc + b^2c^2 - d^2 - c beta - b c^2 beta + c^2 beta^2`, the
    /// cofactor of `b + beta` in `K` when `gamma = -c` and `d + delta = 0`.
    pub q: Option<Fe>,
    /// Roots of `l^3 + l^2 + (1-delta^2) l - (gamma/b) J`.
    pub rho: Option<RootSet>,
    /// Roots of `l^3 + l^2 + (1-(d+delta)^2) l - (c+gamma) K`.
    pub mu: Option<RootSet>,
}

pub fn a1a2(f: &Field, (b, c, d): Triple) -> (Fe, Fe) {
    let bc = f.mul(b, c);
    let one = f.one();
    (f.sub(f.add(bc, d), one), f.sub(f.sub(bc, d), one))
}

/// `(d+delta)^2 (1-(d+delta)^2)^2`.
pub fn d_big(f: &Field, s: Fe) -> Fe {
    let t = f.sub(f.one(), f.square(s));
    f.mul(f.square(s), f.square(t))
}

/// `(d+delta)(1+d+delta)`.
pub fn delta_big(f: &Field, s: Fe) -> Fe {
    f.mul(s, f.add(f.one(), s))
}

/// `1 + bc + b^2c^2 - d^2 - c beta - b c^2 beta + c^2 beta^2`.
pub fn q_cofactor(f: &Field, (b, c, d): Triple, beta: Fe) -> Fe {
    let bc = f.mul(b, c);
    let cb = f.mul(c, beta);
    let terms = [
        f.one(),
        bc,
        f.square(bc),
        f.neg(f.square(d)),
        f.neg(cb),
        f.neg(f.mul(bc, cb)),
        f.square(cb),
    ];
    terms.into_iter().fold(f.zero(), |acc, t| f.add(acc, t))
}

/// Coefficients (low to high) of `l^3 + l^2 + (1-delta^2) l - (gamma/b) J`,
/// the characteristic polynomial of `X+X-` on the weight `delta+1` space.
/// With `as_printed` the `l^2` and `l` coefficients are swapped.
pub fn rho_poly(f: &Field, b: Fe, gamma: Fe, delta: Fe, j: Fe, as_printed: bool) -> Vec<Fe> {
    let g_over_b = f.div(gamma, b).expect("Tt factor has b != 0");
    let mut p = vec![
        f.neg(f.mul(g_over_b, j)),
        f.sub(f.one(), f.square(delta)),
        f.one(),
        f.one(),
    ];
    if as_printed {
        p.swap(1, 2);
    }
    p
}

/// Coefficients (low to high) of `l^3 + l^2 + (1-s^2) l - (c+gamma) K`.
pub fn mu_poly(f: &Field, s: Fe, c_sum: Fe, k: Fe) -> Vec<Fe> {
    vec![f.neg(f.mul(c_sum, k)), f.sub(f.one(), f.square(s)), f.one(), f.one()]
}

impl SymbolSet {
    fn empty() -> SymbolSet {
        SymbolSet {
            a1: None,
            a2: None,
            alpha1: None,
            alpha2: None,
            j: None,
            k: None,
            d_big: None,
            delta_big: None,
            q: None,
            rho: None,
            mu: None,
        }
    }

    /// Symbols for a single `T(b,c,d)` factor paired with `2`.
    pub fn for_two(f: &Field, left: Triple) -> SymbolSet {
        let (a1, a2) = a1a2(f, left);
        SymbolSet {
            a1: Some(a1),
            a2: Some(a2),
            ..SymbolSet::empty()
        }
    }

    /// Symbols for two three-dimensional factors. `ttilde_left` marks a
    /// `Tt(b,1/b,0)` left factor, for which the `rho` polynomial is defined.
    pub fn for_pair(f: &Field, left: Triple, right: Triple, ttilde_left: bool) -> SymbolSet {
        let (b, c, d) = left;
        let (beta, gamma, delta) = right;
        let (a1, a2) = a1a2(f, left);
        let (al1, al2) = a1a2(f, right);
        let al = f.mul(al1, al2);
        let j = f.add(f.one(), f.mul(al, f.mul(b, beta)));
        let k = f.add(f.mul(f.mul(a1, a2), b), f.mul(al, beta));
        let s = f.add(d, delta);
        let c_sum = f.add(c, gamma);
        let roots = |p: Vec<Fe>| f.poly_roots(&p).expect("monic cubic");
        SymbolSet {
            a1: Some(a1),
            a2: Some(a2),
            alpha1: Some(al1),
            alpha2: Some(al2),
            j: Some(j),
            k: Some(k),
            d_big: Some(d_big(f, s)),
            delta_big: Some(delta_big(f, s)),
            q: Some(q_cofactor(f, left, beta)),
            rho: (ttilde_left && !b.is_zero()).then(|| roots(rho_poly(f, b, gamma, delta, j, false))),
            mu: (!ttilde_left).then(|| roots(mu_poly(f, s, c_sum, k))),
        }
    }
}
