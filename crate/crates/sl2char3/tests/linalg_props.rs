//! Exact linear algebra: worked examples, Cayley–Hamilton, and kernels and
//! characteristic polynomials checked against brute-force references.

use proptest::prelude::*;
use sl2char3::field::{Fe, Field};
use sl2char3::linalg::{solve_intertwiner, unit, Mat, Subspace};
use sl2char3::poly;
use sl2char3::sl2::Rep;

fn f3() -> Field {
    Field::gf(1).unwrap()
}

/// `det(xI - A)` by the Leibniz formula over polynomial entries.
fn leibniz_charpoly(a: &Mat) -> Vec<Fe> {
    let f = a.field();
    let n = a.rows();
    let entry = |i: usize, j: usize| -> Vec<Fe> {
        let c = f.neg(a[(i, j)]);
        if i == j {
            vec![c, f.one()]
        } else {
            vec![c]
        }
    };
    let mut total = vec![f.zero(); n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count();
        let mut term = vec![f.one()];
        for (i, &j) in p.iter().enumerate() {
            term = poly::mul(f, &term, &entry(i, j));
        }
        for (k, &c) in term.iter().enumerate() {
            total[k] = if inversions % 2 == 0 {
                f.add(total[k], c)
            } else {
                f.sub(total[k], c)
            };
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, visit);
        p.swap(k, i);
    }
}

fn all_matrices(f: &Field, n: usize) -> impl Iterator<Item = Mat> + '_ {
    let q = f.order();
    let elems: Vec<Fe> = f.elements().collect();
    (0..q.pow((n * n) as u32))
        .map(move |code| Mat::from_fn(f, n, n, |i, j| elems[code / q.pow((i * n + j) as u32) % q]))
}

fn all_vectors(f: &Field, n: usize) -> Vec<Vec<Fe>> {
    let q = f.order();
    let elems: Vec<Fe> = f.elements().collect();
    (0..q.pow(n as u32))
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let x = elems[code % q];
                    code /= q;
                    x
                })
                .collect()
        })
        .collect()
}

fn check_polys(a: &Mat) {
    let f = a.field();
    let (cp, mp) = a.char_min_poly();
    assert_eq!(cp, leibniz_charpoly(a), "{a:?}");
    assert!(a.eval_poly(&cp).is_zero(), "Cayley-Hamilton fails for {a:?}");
    assert!(a.eval_poly(&mp).is_zero());
    assert_eq!(*mp.last().unwrap(), f.one());
    assert_eq!(*cp.last().unwrap(), f.one());
    assert!(poly::rem(f, &cp, &mp).is_empty(), "minpoly does not divide charpoly");
    let roots = f.poly_roots(&cp).unwrap();
    for (lambda, space) in a.eigenspaces() {
        let mult = roots.roots.iter().find(|r| r.0 == lambda).unwrap().1;
        assert!(space.dim() >= 1 && space.dim() <= mult as usize);
    }
}

#[test]
fn worked_examples() {
    let f = f3();
    let j = Mat::from_ints(&f, &[&[1, 1], &[0, 1]]);
    assert_eq!(j.mul(&j), Mat::from_ints(&f, &[&[1, 2], &[0, 1]]));
    assert_eq!(Mat::identity(&f, 2).mul(&j), j);
    assert!(j.scale(f.zero()).is_zero());
    assert!(Mat::identity(&f, 3).kernel().is_zero());
    assert_eq!(Mat::zeros(&f, 3, 3).kernel().dim(), 3);

    let t000 = Rep::t(&f, f.zero(), f.zero(), f.zero()).unwrap();
    let ker = t000.xplus.kernel();
    assert_eq!(ker, Subspace::span(&f, 3, &[unit(&f, 3, 0)]));
    let brute = all_vectors(&f, 3)
        .into_iter()
        .filter(|v| t000.xplus.apply(v).iter().all(|x| x.is_zero()))
        .count();
    assert_eq!(brute, 3);

    let one = f.one();
    let m1 = f.neg(one);
    assert_eq!(
        Mat::identity(&f, 3).charpoly(),
        vec![m1, f.from_i64(3), f.from_i64(-3), one]
    );
    assert_eq!(j.minpoly(), vec![one, f.from_i64(-2), one]);

    let eig = Mat::identity(&f, 2).eigenspaces();
    assert_eq!(eig.len(), 1);
    assert_eq!(eig[0].1.dim(), 2);
    let d = Mat::diag(&f, &[f.zero(), one, f.from_i64(2)]);
    assert_eq!(
        d.eigenspaces().iter().map(|(_, s)| s.dim()).collect::<Vec<_>>(),
        vec![1, 1, 1]
    );

    let d12 = Mat::diag(&f, &[one, f.from_i64(2)]);
    let e2 = Subspace::span(&f, 2, &[unit(&f, 2, 1)]);
    assert_eq!(d12.restrict(&e2).unwrap(), Mat::from_ints(&f, &[&[2]]));
    let e1 = Subspace::span(&f, 2, &[unit(&f, 2, 0)]);
    assert_eq!(d12.quotient_action(&e1).unwrap(), Mat::from_ints(&f, &[&[2]]));
    assert_eq!(d12.quotient_action(&Subspace::zero(&f, 2)).unwrap(), d12);
    assert_eq!(Mat::identity(&f, 3).restrict(&e1_of(&f)).unwrap(), Mat::identity(&f, 2));
}

fn e1_of(f: &Field) -> Subspace {
    Subspace::span(f, 3, &[unit(f, 3, 0), unit(f, 3, 2)])
}

#[test]
fn intertwiner_examples() {
    let f = f3();
    let t = Rep::t(&f, f.one(), f.one(), f.zero()).unwrap();
    let gens: Vec<Mat> = t.generators().into_iter().cloned().collect();
    let s = solve_intertwiner(&gens, &gens).unwrap().unwrap();
    assert!(s.is_invertible());

    let raw = Rep::t_unchecked(&f, f.zero(), f.zero(), f.one());
    let t000 = Rep::t(&f, f.zero(), f.zero(), f.zero()).unwrap();
    let a: Vec<Mat> = raw.generators().into_iter().cloned().collect();
    let b: Vec<Mat> = t000.generators().into_iter().cloned().collect();
    assert_eq!(solve_intertwiner(&a, &b).unwrap(), None);
}

#[test]
fn cayley_hamilton_exhaustive_2x2_up_to_27() {
    for k in 1..=3 {
        let f = Field::gf(k).unwrap();
        for a in all_matrices(&f, 2) {
            let cp = a.charpoly();
            assert_eq!(cp, leibniz_charpoly(&a));
            assert!(a.eval_poly(&cp).is_zero());
        }
    }
}

#[test]
fn polynomials_exhaustive_3x3_over_gf3() {
    let f = f3();
    for a in all_matrices(&f, 3) {
        check_polys(&a);
    }
}

#[test]
fn kernel_and_rank_exhaustive_3x3_over_gf3() {
    let f = f3();
    let vectors = all_vectors(&f, 3);
    for a in all_matrices(&f, 3) {
        let ker = a.kernel();
        let brute = vectors
            .iter()
            .filter(|v| a.apply(v).iter().all(|x| x.is_zero()))
            .count();
        assert_eq!(3usize.pow(ker.dim() as u32), brute);
        assert_eq!(ker.dim() + a.rank(), 3);
        for b in ker.basis() {
            assert!(a.apply(b).iter().all(|x| x.is_zero()));
        }
        assert_eq!(a.inverse().is_some(), ker.is_zero());
        if let Some(inv) = a.inverse() {
            assert_eq!(inv.mul(&a), Mat::identity(&f, 3));
        }
        // Echelon bases are canonical: re-spanning gives the same subspace.
        assert_eq!(Subspace::span(&f, 3, ker.basis()), ker);
    }
}

fn mat_from(f: &Field, n: usize, codes: &[usize]) -> Mat {
    let elems: Vec<Fe> = f.elements().collect();
    Mat::from_fn(f, n, n, |i, j| elems[codes[i * n + j] % elems.len()])
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn polynomials_at_81(codes in proptest::collection::vec(0usize..81, 16)) {
        let f = Field::gf(4).unwrap();
        let a = mat_from(&f, 4, &codes);
        check_polys(&a);
    }

    #[test]
    fn quotient_commutes_with_projection(codes in proptest::collection::vec(0usize..9, 9), pick in 0usize..3) {
        let f = Field::gf(2).unwrap();
        let a = mat_from(&f, 3, &codes);
        // Any eigenspace, or the kernel, is invariant.
        let mut spaces: Vec<Subspace> = a.eigenspaces().into_iter().map(|(_, s)| s).collect();
        spaces.push(a.kernel());
        let u = &spaces[pick % spaces.len()];
        let q = a.quotient_action(u).unwrap();
        let free = u.non_pivots();
        for j in 0..3 {
            let v = unit(&f, 3, j);
            let project = |w: &[Fe]| -> Vec<Fe> {
                let r = u.reduce(w);
                free.iter().map(|&k| r[k]).collect()
            };
            prop_assert_eq!(q.apply(&project(&v)), project(&a.apply(&v)));
        }
        let r = a.restrict(u).unwrap();
        prop_assert_eq!(r.rows(), u.dim());
    }

    #[test]
    fn intertwiners_conjugate(codes in proptest::collection::vec(0usize..9, 18), s_codes in proptest::collection::vec(0usize..9, 9)) {
        let f = Field::gf(2).unwrap();
        let a1 = mat_from(&f, 3, &codes[..9]);
        let a2 = mat_from(&f, 3, &codes[9..]);
        let s = mat_from(&f, 3, &s_codes);
        prop_assume!(s.is_invertible());
        let inv = s.inverse().unwrap();
        let b1 = s.mul(&a1).mul(&inv);
        let b2 = s.mul(&a2).mul(&inv);
        match solve_intertwiner(&[a1.clone(), a2.clone()], &[b1.clone(), b2.clone()]) {
            Ok(Some(t)) => {
                prop_assert!(t.is_invertible());
                prop_assert_eq!(t.mul(&a1), b1.mul(&t));
                prop_assert_eq!(t.mul(&a2), b2.mul(&t));
            }
            Ok(None) => prop_assert!(false, "a conjugating matrix exists"),
            Err(_) => {} // solution space above the search cap
        }
    }
}
