//! Dense univariate polynomials over a [`Field`], coefficients low to high.
//!
//! Only what characteristic polynomials of at most 9x9 matrices need:
//! evaluation, division, gcd, and the degree of the splitting field.

use crate::field::{Fe, Field};

/// Drops trailing zero coefficients. The zero polynomial becomes empty.
pub fn trim(mut p: Vec<Fe>) -> Vec<Fe> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Degree, with `None` for the zero polynomial.
pub fn degree(p: &[Fe]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn eval(f: &Field, p: &[Fe], x: Fe) -> Fe {
    p.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
}

/// Quotient of `p` by `(x - r)`; the remainder is discarded.
pub fn div_linear(f: &Field, p: &[Fe], r: Fe) -> Vec<Fe> {
    let n = p.len();
    let mut q = vec![f.zero(); n - 1];
    let mut carry = f.zero();
    for i in (1..n).rev() {
        carry = f.add(f.mul(carry, r), p[i]);
        q[i - 1] = carry;
    }
    q
}

pub fn mul(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

pub fn sub(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(f.zero());
            let y = b.get(i).copied().unwrap_or(f.zero());
            f.sub(x, y)
        })
        .collect();
    trim(out)
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub fn rem(f: &Field, a: &[Fe], m: &[Fe]) -> Vec<Fe> {
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = f.inv(m[dm]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    while r.len() > dm {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        for (i, &mi) in m.iter().enumerate() {
            let idx = top - dm + i;
            r[idx] = f.sub(r[idx], f.mul(c, mi));
        }
        r = trim(r);
    }
    r
}

/// Monic greatest common divisor.
pub fn gcd(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(f, &a, &b);
        a = b;
        b = r;
    }
    monic(f, a)
}

pub fn monic(f: &Field, p: Vec<Fe>) -> Vec<Fe> {
    let p = trim(p);
    match p.last() {
        None => p,
        Some(&lead) => {
            let inv = f.inv(lead).expect("nonzero");
            p.into_iter().map(|c| f.mul(c, inv)).collect()
        }
    }
}

/// Exact quotient `a / b` (the remainder must be zero).
pub fn div_exact(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]).expect("nonzero leading coefficient");
    let mut r = trim(a.to_vec());
    if r.len() <= db {
        return Vec::new();
    }
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        q[top - db] = c;
        for (i, &bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = f.sub(r[idx], f.mul(c, bi));
        }
        r = trim(r);
    }
    trim(q)
}

fn pow_mod(f: &Field, base: &[Fe], mut e: u64, m: &[Fe]) -> Vec<Fe> {
    let mut result = vec![f.one()];
    let mut b = rem(f, base, m);
    while e > 0 {
        if e & 1 == 1 {
            result = rem(f, &mul(f, &result, &b), m);
        }
        b = rem(f, &mul(f, &b, &b), m);
        e >>= 1;
    }
    result
}

fn lcm_u32(a: u32, b: u32) -> u32 {
    fn g(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            g(b, a % b)
        }
    }
    a / g(a, b) * b
}

/// Degree over `f` of the splitting field of `p`: the lcm of the degrees of
/// its irreducible factors, found by distinct-degree factorization.
pub fn splitting_degree(f: &Field, p: &[Fe]) -> u32 {
    let mut rest = monic(f, p.to_vec());
    let q = f.order() as u64;
    let x = vec![f.zero(), f.one()];
    let mut result = 1;
    let mut i = 1u32;
    while rest.len() > 1 {
        if 2 * i as usize > rest.len() - 1 {
            // What is left is irreducible.
            result = lcm_u32(result, (rest.len() - 1) as u32);
            break;
        }
        // x^(q^i) mod rest
        let mut xp = x.clone();
        for _ in 0..i {
            xp = pow_mod(f, &xp, q, &rest);
        }
        let g = gcd(f, &sub(f, &xp, &x), &rest);
        if g.len() > 1 {
            result = lcm_u32(result, i);
            rest = div_exact(f, &rest, &g);
            // Remove repeated factors of the same degree.
            loop {
                let g2 = gcd(f, &rest, &g);
                if g2.len() <= 1 {
                    break;
                }
                rest = div_exact(f, &rest, &g2);
            }
        }
        i += 1;
    }
    result
}
