//! Normal forms of the irreducibles. Every claimed isomorphism is certified
//! by an explicit invertible intertwiner checked entry by entry, and every
//! claimed non-isomorphism by the intertwiner search coming back empty.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sl2char3::canon::{
    canonical_of_params, dual_params, dual_similarity, intertwiner, is_isomorphic, is_isomorphic_by_intertwiner,
    normalize_twozeros, recover_params, shift_d, ttilde_to_t, CanonError, CanonicalClass,
};
use sl2char3::field::{Fe, Field};
use sl2char3::linalg::Mat;
use sl2char3::sl2::{ModuleParams, Rep};

fn certify(a: &Rep, b: &Rep, what: &str) {
    let s = intertwiner(a, b)
        .unwrap()
        .unwrap_or_else(|| panic!("no intertwiner: {what}"));
    assert!(s.is_invertible(), "{what}");
    for (ga, gb) in a.generators().into_iter().zip(b.generators()) {
        assert_eq!(s.mul(ga), gb.mul(&s), "{what}");
    }
}

fn refute(a: &Rep, b: &Rep, what: &str) {
    assert_eq!(intertwiner(a, b).unwrap(), None, "unexpected isomorphism: {what}");
}

fn admissible(f: &Field) -> Vec<(Fe, Fe, Fe)> {
    let mut out = Vec::new();
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                if ModuleParams::T(b, c, d).check_admissible(f).is_ok() {
                    out.push((b, c, d));
                }
            }
        }
    }
    out
}

fn sampled(f: &Field, n: usize, seed: u64) -> Vec<(Fe, Fe, Fe)> {
    let all = admissible(f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| all[rng.gen_range(0..all.len())]).collect()
}

type Params = (Fe, Fe, Fe);

fn fields_and_params() -> Vec<(Field, Vec<Params>)> {
    let f3 = Field::gf(1).unwrap();
    let f9 = Field::gf(2).unwrap();
    let p3 = admissible(&f3);
    let p9 = sampled(&f9, 250, 7);
    vec![(f3, p3), (f9, p9)]
}

#[test]
fn worked_examples() {
    let f = Field::gf(1).unwrap();
    let (z, one, two) = (f.zero(), f.one(), f.from_i64(2));
    assert_eq!(
        dual_params(&f, &ModuleParams::T(one, one, z)),
        ModuleParams::T(two, two, z)
    );
    assert_eq!(dual_params(&f, &ModuleParams::T(z, z, z)), ModuleParams::T(z, z, z));
    assert_eq!(
        dual_params(&f, &ModuleParams::Tt(one, one, z)),
        ModuleParams::Tt(two, two, z)
    );

    // Tt(1,0,0): a1 = a2 = -1, so T(c/(a1 a2), a1 a2 b, d) = T(0,1,0).
    assert_eq!(ttilde_to_t(&f, one, z, z), Some((z, one, z)));
    assert_eq!(ttilde_to_t(&f, one, one, z), None);
    assert_eq!(ttilde_to_t(&f, z, one, one), None);

    assert_eq!(normalize_twozeros(&f, one, one, z).unwrap(), one);
    assert_eq!(normalize_twozeros(&f, two, two, z).unwrap(), two);
    assert!(normalize_twozeros(&f, z, z, one).is_err());

    assert_eq!(shift_d(&f, z, one, one).unwrap(), (one, one));
    assert_eq!(shift_d(&f, one, one, one).unwrap(), (two, one));
    assert_eq!(shift_d(&f, one, one, z), Err(CanonError::NotUnitWeight));

    let t110 = Rep::t(&f, one, one, z).unwrap();
    assert_eq!(recover_params(&t110).unwrap(), CanonicalClass::CanT(one, one, z));
    assert_eq!(
        recover_params(&Rep::ttilde(&f, one, one, z).unwrap()).unwrap(),
        CanonicalClass::CanTt(one)
    );
    assert_eq!(
        recover_params(&Rep::standard(&f, 3).unwrap()).unwrap(),
        CanonicalClass::three(&f)
    );

    assert!(is_isomorphic(&t110, &t110.dual().dual()).unwrap());
    assert!(is_isomorphic(&Rep::t(&f, z, one, one).unwrap(), &t110).unwrap());
    assert!(!is_isomorphic(&t110, &Rep::ttilde(&f, one, one, z).unwrap()).unwrap());
    certify(&t110.dual(), &Rep::t(&f, two, two, z).unwrap(), "T(1,1,0)* ~ T(2,2,0)");
}

/// Every Tt module falls under exactly one of the two normal-form routes,
/// and the module it is sent to is isomorphic to it.
#[test]
fn ttilde_normal_forms_certified() {
    for (f, params) in fields_and_params() {
        for &(b, c, d) in &params {
            let tt = Rep::ttilde(&f, b, c, d).unwrap();
            let to_t = ttilde_to_t(&f, b, c, d);
            let twozeros = normalize_twozeros(&f, b, c, d);
            assert!(
                to_t.is_some() != twozeros.is_ok(),
                "exactly one route for Tt({b:?},{c:?},{d:?})"
            );
            match to_t {
                Some((b2, c2, d2)) => certify(&tt, &Rep::t_unchecked(&f, b2, c2, d2), "Tt -> T"),
                None => {
                    let b0 = twozeros.unwrap();
                    let target = Rep::ttilde(&f, b0, f.inv(b0).unwrap(), f.zero()).unwrap();
                    certify(&tt, &target, "Tt -> Tt(b0,1/b0,0)");
                }
            }
        }
    }
}

/// Tt(b0, 1/b0, 0) is isomorphic to no T-module.
#[test]
fn two_zero_forms_are_not_t_modules() {
    let f = Field::gf(1).unwrap();
    let ts: Vec<Rep> = admissible(&f)
        .into_iter()
        .map(|(b, c, d)| Rep::t(&f, b, c, d).unwrap())
        .collect();
    for b0 in f.nonzero() {
        let tt = Rep::ttilde(&f, b0, f.inv(b0).unwrap(), f.zero()).unwrap();
        for t in &ts {
            refute(&tt, t, "Tt(b0,1/b0,0) vs T");
        }
    }
    let f9 = Field::gf(2).unwrap();
    for (k, (b, c, d)) in sampled(&f9, 100, 11).into_iter().enumerate() {
        let b0 = f9.nonzero().nth(k % 8).unwrap();
        let tt = Rep::ttilde(&f9, b0, f9.inv(b0).unwrap(), f9.zero()).unwrap();
        refute(&tt, &Rep::t(&f9, b, c, d).unwrap(), "Tt(b0,1/b0,0) vs T over GF(9)");
    }
}

#[test]
fn duals_certified() {
    for (f, params) in fields_and_params() {
        let s = dual_similarity(&f);
        for &(b, c, d) in &params {
            for (m, target) in [
                (
                    Rep::t(&f, b, c, d).unwrap(),
                    Rep::t_unchecked(&f, f.neg(b), f.neg(c), f.neg(d)),
                ),
                (
                    Rep::ttilde(&f, b, c, d).unwrap(),
                    Rep::ttilde_unchecked(&f, f.neg(b), f.neg(c), f.neg(d)),
                ),
            ] {
                let dual = m.dual();
                // The anti-diagonal matrix itself does the job.
                for (g, h) in dual.generators().into_iter().zip(target.generators()) {
                    assert_eq!(s.mul(g), h.mul(&s));
                }
                certify(&dual, &target, "dual");
            }
        }
    }
}

#[test]
fn unit_weight_shifts_certified() {
    for (f, params) in fields_and_params() {
        for &(b, c, d) in &params {
            if c.is_zero() || f.prime_value(d).is_none_or(|v| v == 0) {
                continue;
            }
            let (b2, c2) = shift_d(&f, b, c, d).unwrap();
            certify(
                &Rep::t(&f, b, c, d).unwrap(),
                &Rep::t_unchecked(&f, b2, c2, f.zero()),
                "shift to d = 0",
            );
            certify(
                &Rep::ttilde(&f, b, c, d).unwrap(),
                &Rep::ttilde_unchecked(&f, b2, c2, f.zero()),
                "Tt shift",
            );
        }
    }
}

/// The canonical class of every parameter description is isomorphic to it,
/// and reading the class back off the matrices gives the same class.
#[test]
fn canonical_classes_certified_and_recovered() {
    for (f, params) in fields_and_params() {
        for &(b, c, d) in &params {
            for p in [ModuleParams::T(b, c, d), ModuleParams::Tt(b, c, d)] {
                let class = canonical_of_params(&f, &p).unwrap();
                let m = Rep::from_params(&f, &p).unwrap();
                certify(&m, &class.rep(&f), &p.format(&f));
                if m.is_irreducible() {
                    assert_eq!(recover_params(&m).unwrap(), class, "{}", p.format(&f));
                }
                let dual = ModuleParams::Dual(Box::new(p.clone()));
                certify(
                    &m.dual(),
                    &canonical_of_params(&f, &dual).unwrap().rep(&f),
                    "dual class",
                );
            }
        }
    }
}

/// Distinct canonical classes are pairwise non-isomorphic.
#[test]
fn distinct_classes_not_isomorphic_over_gf3() {
    let f = Field::gf(1).unwrap();
    let mut classes: Vec<CanonicalClass> = Vec::new();
    for (b, c, d) in admissible(&f) {
        for p in [ModuleParams::T(b, c, d), ModuleParams::Tt(b, c, d)] {
            let cl = canonical_of_params(&f, &p).unwrap();
            if !classes.contains(&cl) {
                classes.push(cl);
            }
        }
    }
    assert_eq!(classes.len(), 15);
    let reps: Vec<Rep> = classes.iter().map(|c| c.rep(&f)).collect();
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if i == j {
                certify(&reps[i], &reps[j], "identity");
            } else {
                refute(
                    &reps[i],
                    &reps[j],
                    &format!("{} vs {}", classes[i].format(&f), classes[j].format(&f)),
                );
            }
        }
    }
}

/// The class comparison and the intertwiner search agree, and the relation
/// is an equivalence on the sample.
#[test]
fn isomorphism_paths_agree_over_gf9() {
    let f = Field::gf(2).unwrap();
    let mut reps: Vec<Rep> = Vec::new();
    for (b, c, d) in sampled(&f, 20, 3) {
        let t = Rep::t(&f, b, c, d).unwrap();
        if !t.is_irreducible() {
            continue;
        }
        let (b2, c2, d2) = match canonical_of_params(&f, &ModuleParams::T(b, c, d)).unwrap() {
            CanonicalClass::CanT(x, y, z) => (x, y, z),
            _ => unreachable!(),
        };
        reps.push(t);
        reps.push(Rep::t(&f, b2, c2, d2).unwrap());
    }
    let n = reps.len();
    let mut rel = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let by_class = is_isomorphic(&reps[i], &reps[j]).unwrap();
            assert_eq!(by_class, is_isomorphic_by_intertwiner(&reps[i], &reps[j]).unwrap());
            rel[i][j] = by_class;
        }
    }
    for i in 0..n {
        assert!(rel[i][i]);
        for j in 0..n {
            assert_eq!(rel[i][j], rel[j][i]);
            for k in 0..n {
                if rel[i][j] && rel[j][k] {
                    assert!(rel[i][k]);
                }
            }
        }
    }
}

#[test]
fn anti_diagonal_squares_to_identity() {
    let f = Field::gf(1).unwrap();
    let s = dual_similarity(&f);
    assert_eq!(s.mul(&s), Mat::identity(&f, 3));
}
