//! Tensor products: weight spaces, extremal vectors, and the cube scalars
//! against closed forms and against direct matrix powers of the factors.

use sl2char3::cli::verify::universe;
use sl2char3::field::{Fe, Field};
use sl2char3::linalg::{unit, Mat, Subspace};
use sl2char3::oracle::{self, Options};
use sl2char3::sl2::{ModuleParams, Rep};
use sl2char3::tensor::{cube_scalars, hw_lw_vectors, tensor, weight_spaces, xpxm_on_weight};

fn rep(f: &Field, text: &str) -> Rep {
    Rep::from_params(f, &ModuleParams::parse(text, f).unwrap()).unwrap()
}

/// `e_i (x) f_j` in the lexicographic basis.
fn pure(f: &Field, n: usize, m: usize, i: usize, j: usize) -> Vec<Fe> {
    unit(f, n * m, i * m + j)
}

fn combo(f: &Field, terms: &[(i64, &Vec<Fe>)]) -> Vec<Fe> {
    let n = terms[0].1.len();
    (0..n)
        .map(|k| {
            terms
                .iter()
                .fold(f.zero(), |acc, (c, v)| f.add(acc, f.mul(f.from_i64(*c), v[k])))
        })
        .collect()
}

#[test]
fn worked_examples() {
    let f = Field::gf(1).unwrap();
    let t110 = rep(&f, "T(1,1,0)");
    assert_eq!(tensor(&rep(&f, "One"), &t110).unwrap(), t110);

    let two = rep(&f, "Two");
    let p = tensor(&two, &two).unwrap();
    assert_eq!(p.h, Mat::diag(&f, &[2, 0, 0, -2].map(|x| f.from_i64(x))));
    let sq = tensor(&t110, &t110).unwrap();
    assert_eq!(sq.dim(), 9);
    assert!(sq.validate().is_ok());

    // Highest weight vectors of 2 (x) 2 are q1q1 and q2q1 - q1q2.
    let q11 = pure(&f, 2, 2, 0, 0);
    let singlet = combo(&f, &[(1, &pure(&f, 2, 2, 1, 0)), (-1, &pure(&f, 2, 2, 0, 1))]);
    let ext = hw_lw_vectors(&p).unwrap();
    let highest = ext.highest.iter().fold(Subspace::zero(&f, 4), |acc, (_, s)| acc.sum(s));
    assert_eq!(highest, Subspace::span(&f, 4, &[q11, singlet]));

    // In 2 (x) Tt(b,1/b,0) the vectors q2t1 and q2t2 are killed by X-.
    let m = tensor(&two, &rep(&f, "Tt(1)")).unwrap();
    let ext = hw_lw_vectors(&m).unwrap();
    assert_eq!(ext.highest_dim(), 0);
    let lowest = ext.lowest.iter().fold(Subspace::zero(&f, 6), |acc, (_, s)| acc.sum(s));
    assert!(lowest.contains(&pure(&f, 2, 3, 1, 0)));
    assert!(lowest.contains(&pure(&f, 2, 3, 1, 1)));
    // The third one comes from the T(1/b,0,0) summand.
    assert_eq!(lowest.dim(), 3);

    // c + gamma = 0 gives a three-dimensional lowest weight space.
    let m = tensor(&t110, &rep(&f, "T(1,2,0)")).unwrap();
    assert_eq!(hw_lw_vectors(&m).unwrap().lowest_dim(), 3);

    let tt = tensor(&rep(&f, "Tt(1,1,0)"), &rep(&f, "Tt(2,2,0)")).unwrap();
    assert_eq!(cube_scalars(&tt).0, Some(f.zero()));
    assert_eq!(cube_scalars(&sq).1, Some(f.from_i64(2)));
    assert_eq!(cube_scalars(&rep(&f, "One")), (Some(f.zero()), Some(f.zero())));

    // X+X- on the weight-1 space of 2 (x) T(1,0,0) has minimal polynomial (l-1)^2.
    let m = tensor(&two, &rep(&f, "T(1,0,0)")).unwrap();
    let one = f.one();
    assert_eq!(
        xpxm_on_weight(&m, one).unwrap().minpoly(),
        vec![one, f.from_i64(-2), one]
    );
    assert_eq!(xpxm_on_weight(&rep(&f, "One"), f.zero()).unwrap(), Mat::zeros(&f, 1, 1));
}

#[test]
fn xpxm_eigenvalues_for_two_times_t() {
    // X+X- on V_d of 2 (x) T(2,1,0) over GF(9) has the roots bc +- sqrt(bc).
    let f = Field::gf(2).unwrap();
    let m = tensor(&rep(&f, "Two"), &rep(&f, "T(2,1,0)")).unwrap();
    let eig: Vec<Fe> = xpxm_on_weight(&m, f.zero())
        .unwrap()
        .eigenspaces()
        .into_iter()
        .map(|(l, _)| l)
        .collect();
    let bc = f.from_i64(2);
    let r = f.sqrt(bc).unwrap();
    let mut expected = vec![f.add(bc, r), f.sub(bc, r)];
    expected.sort();
    assert_eq!(eig, expected);
}

#[test]
fn weight_structure_of_products_over_gf3() {
    let f = Field::gf(1).unwrap();
    let u = universe(&f);
    let two = f.from_i64(2);
    for a in &u {
        for b in &u {
            let m = tensor(&Rep::from_params(&f, a).unwrap(), &Rep::from_params(&f, b).unwrap()).unwrap();
            assert!(m.validate().is_ok());
            let w = weight_spaces(&m).unwrap();
            assert_eq!(w.spaces.iter().map(|(_, s)| s.dim()).sum::<usize>(), m.dim());
            for (rho, space) in &w.spaces {
                for v in space.basis() {
                    let up = m.xplus.apply(v);
                    let down = m.xminus.apply(v);
                    let target = |x: Fe| w.get(x).map_or(up.iter().all(|e| e.is_zero()), |s| s.contains(&up));
                    assert!(target(f.add(*rho, two)));
                    let target = |x: Fe| w.get(x).map_or(down.iter().all(|e| e.is_zero()), |s| s.contains(&down));
                    assert!(target(f.sub(*rho, two)));
                }
                let h = m.h.restrict(space).unwrap();
                assert_eq!(h, Mat::scalar(&f, space.dim(), *rho));
            }
            if a.dim() == 3 && b.dim() == 3 {
                assert!(w.spaces.iter().all(|(_, s)| s.dim() == 3));
            }
        }
    }
}

/// Both families: X+^3 and X-^3 act on a single factor by the scalars read
/// off the parameters.
#[test]
fn single_factor_cubes_match_closed_forms() {
    for k in 1..=2 {
        let f = Field::gf(k).unwrap();
        let one = f.one();
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let bc = f.mul(b, c);
                    let a1a2 = f.mul(f.sub(f.add(bc, d), one), f.sub(f.sub(bc, d), one));
                    let ba = f.mul(b, a1a2);
                    assert_eq!(cube_scalars(&Rep::t_unchecked(&f, b, c, d)), (Some(ba), Some(c)));
                    assert_eq!(cube_scalars(&Rep::ttilde_unchecked(&f, b, c, d)), (Some(c), Some(ba)));
                }
            }
        }
    }
}

/// In characteristic 3 the cross terms of (G (x) 1 + 1 (x) G)^3 vanish, so
/// the product's cube scalars are the sums of the factors'. The closed forms
/// must agree with that, and with the matrices, for every pair, and the
/// extremal vectors exist exactly where the scalars vanish.
#[test]
fn product_cubes_and_extremal_vectors_over_gf3() {
    let f = Field::gf(1).unwrap();
    let u = universe(&f);
    let mut modules: Vec<ModuleParams> = u.clone();
    modules.extend(
        u.iter()
            .filter(|p| p.dim() == 3)
            .map(|p| ModuleParams::Dual(Box::new(p.clone()))),
    );
    let mut literal_differs = 0;
    for a in &modules {
        for b in &modules {
            let (ra, rb) = (Rep::from_params(&f, a).unwrap(), Rep::from_params(&f, b).unwrap());
            let m = tensor(&ra, &rb).unwrap();
            let (pa, ma) = cube_scalars(&ra);
            let (pb, mb) = cube_scalars(&rb);
            let (plus, minus) = cube_scalars(&m);
            assert_eq!(plus, Some(f.add(pa.unwrap(), pb.unwrap())));
            assert_eq!(minus, Some(f.add(ma.unwrap(), mb.unwrap())));

            if let Some(p) = oracle::cube_scalars(&f, a, b, Options::default()).unwrap() {
                assert_eq!(
                    (Some(p.plus), Some(p.minus)),
                    (plus, minus),
                    "{} x {}",
                    a.format(&f),
                    b.format(&f)
                );
                let lit = oracle::cube_scalars(&f, a, b, Options { paper_literal: true })
                    .unwrap()
                    .unwrap();
                if lit.plus != p.plus {
                    literal_differs += 1;
                }
            }

            let ext = hw_lw_vectors(&m).unwrap();
            assert_eq!(ext.highest_dim() > 0, plus.unwrap().is_zero());
            assert_eq!(ext.lowest_dim() > 0, minus.unwrap().is_zero());
        }
    }
    // The printed b a1 a1 is wrong on some pair over GF(3).
    assert!(literal_differs > 0);
}

#[test]
fn product_cubes_sampled_over_gf9() {
    use rand::{Rng, SeedableRng};
    let f = Field::gf(2).unwrap();
    let u = universe(&f);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for _ in 0..2000 {
        let a = &u[rng.gen_range(0..u.len())];
        let b = &u[rng.gen_range(0..u.len())];
        let m = tensor(&Rep::from_params(&f, a).unwrap(), &Rep::from_params(&f, b).unwrap()).unwrap();
        let (plus, minus) = cube_scalars(&m);
        if let Some(p) = oracle::cube_scalars(&f, a, b, Options::default()).unwrap() {
            assert_eq!((Some(p.plus), Some(p.minus)), (plus, minus));
        }
        let ext = hw_lw_vectors(&m).unwrap();
        assert_eq!(ext.highest_dim() > 0, plus.unwrap().is_zero());
        assert_eq!(ext.lowest_dim() > 0, minus.unwrap().is_zero());
    }
}
