//! The closed-form route: symbols, row selection and predictions, checked
//! against worked examples and against matrices built from the factors.

use proptest::prelude::*;

use sl2char3::canon::CanonicalClass;
use sl2char3::cli::resolve::{resolve_pair, Routes};
use sl2char3::cli::verify::universe;
use sl2char3::descriptor::{descriptor_equal, Descriptor};
use sl2char3::field::{Fe, Field};
use sl2char3::oracle::{self, symbols::rho_poly, CaseId, Options, OracleError, Table};
use sl2char3::sl2::{ModuleParams, Rep};
use sl2char3::tensor::{cube_scalars, tensor, xpxm_on_weight};

fn params(f: &Field, text: &str) -> ModuleParams {
    ModuleParams::parse(text, f).unwrap()
}

fn product(f: &Field, a: &ModuleParams, b: &ModuleParams) -> Rep {
    tensor(&Rep::from_params(f, a).unwrap(), &Rep::from_params(f, b).unwrap()).unwrap()
}

fn key(f: &Field, a: &str, b: &str) -> String {
    oracle::classify(f, &params(f, a), &params(f, b), Options::default())
        .unwrap()
        .key()
}

/// Every module of the universe, and the duals of the three-dimensional ones.
fn with_duals(f: &Field) -> Vec<ModuleParams> {
    let u = universe(f);
    let duals: Vec<ModuleParams> = u
        .iter()
        .filter(|p| p.dim() == 3)
        .map(|p| ModuleParams::Dual(Box::new(p.clone())))
        .collect();
    u.into_iter().chain(duals).collect()
}

/// The table a pair must land in, read off the kinds of its factors.
fn expected_tables(l: &CanonicalClass, r: &CanonicalClass) -> Vec<Table> {
    use CanonicalClass::*;
    match (l, r) {
        (One, _) | (_, One) => vec![Table::Thm1],
        (Two, Two) => vec![Table::Thm2],
        (Two, CanTt(_)) | (CanTt(_), Two) => vec![Table::Thm3],
        (Two, CanT(..)) | (CanT(..), Two) => vec![Table::TwoT],
        (CanTt(_), CanTt(_)) => vec![Table::TtTt],
        (CanTt(_), CanT(..)) | (CanT(..), CanTt(_)) => vec![Table::TtT],
        (CanT(..), CanT(..)) => vec![Table::TTOpposite, Table::TTGeneral],
    }
}

/// Checks one pair: a row of the right table is chosen, swapping the
/// factors changes nothing, and a prediction that evaluates has the
/// dimension of the product.
fn check_pair(f: &Field, l: &ModuleParams, r: &ModuleParams) -> Result<Option<Descriptor>, String> {
    let what = format!("{} ⊗ {}", l.format(f), r.format(f));
    let opts = Options::default();
    let e = oracle::evaluate(f, l, r, opts).map_err(|e| format!("{what}: {e}"))?;
    let cl = sl2char3::canon::canonical_of_params(f, l).unwrap();
    let cr = sl2char3::canon::canonical_of_params(f, r).unwrap();
    if !expected_tables(&cl, &cr).contains(&e.case.table) {
        return Err(format!("{what}: landed in {}", e.case.key()));
    }
    let swapped = oracle::evaluate(f, r, l, opts).map_err(|e| format!("{what} swapped: {e}"))?;
    if swapped.case.table != e.case.table {
        return Err(format!("{what}: {} but swapped {}", e.case.key(), swapped.case.key()));
    }
    match (&e.descriptor, &swapped.descriptor) {
        (Ok(a), Ok(b)) if !descriptor_equal(a, b) => {
            return Err(format!("{what}: {} but swapped {}", a.pretty(f), b.pretty(f)));
        }
        (Ok(_), Err(x)) | (Err(x), Ok(_)) => return Err(format!("{what}: only one order evaluates ({x})")),
        _ => {}
    }
    match &e.descriptor {
        Ok(d) if d.dim() != l.dim() * r.dim() => Err(format!("{what}: {} has dimension {}", d.pretty(f), d.dim())),
        Ok(d) => Ok(Some(d.clone())),
        Err(OracleError::NeedsExtension { .. }) => Ok(None),
        Err(x) => Err(format!("{what}: {x}")),
    }
}

#[test]
fn symbol_examples() {
    let f = Field::gf(1).unwrap();
    let t110 = params(&f, "T(1,1,0)");
    let s = oracle::symbols(&f, &t110, &t110).unwrap();
    assert_eq!(s.k, Some(f.zero()));
    assert_eq!(s.d_big, Some(f.zero()));
    assert_eq!(s.delta_big, Some(f.zero()));
    let s = oracle::symbols(&f, &params(&f, "Tt(1)"), &t110).unwrap();
    assert_eq!(s.j, Some(f.one()));
    assert!(s.rho.is_some() && s.mu.is_none());
    // Symbols are read on the canonical form, which keeps d when c = 0.
    let g = Field::gf(2).unwrap();
    let d = g.gen();
    let s = oracle::symbols(&g, &params(&g, "Two"), &params(&g, "T(1,0,[0,1])")).unwrap();
    let one = g.one();
    assert_eq!((s.a1, s.a2), (Some(g.sub(d, one)), Some(g.sub(g.neg(d), one))));
    assert_eq!(s.j, None);
}

#[test]
fn classify_examples() {
    let f = Field::gf(1).unwrap();
    assert_eq!(key(&f, "Two", "Two"), "thm-2: 2 ⊗ 2");
    assert_eq!(key(&f, "One", "T(1,1,0)"), "thm-1: 1 ⊗ V");
    assert_eq!(key(&f, "Two", "T(0,0,0)"), "table-2: c=0; d=0; b=0");
    assert_eq!(key(&f, "T(1,0,0)", "Two"), "table-2: c=0; d=0; b≠0");
    assert_eq!(key(&f, "Tt(1)", "Tt(2)"), "table-3: b=-β");
    assert_eq!(key(&f, "Tt(1)", "Tt(1)"), "table-3: b≠-β");
    // gamma = c, so the general table applies, at its exceptional row.
    assert_eq!(key(&f, "T(1,1,0)", "T(1,1,0)"), "table-5': b=1/c, d=0, β=1/γ, δ=0");
    assert_eq!(key(&f, "T(1,1,0)", "T(2,2,0)"), "table-5: b=1/c, d=0, β=1/γ, δ=0");
}

#[test]
fn predict_examples() {
    let f = Field::gf(1).unwrap();
    let opts = Options::default();
    let t110 = params(&f, "T(1,1,0)");
    let p = oracle::predict(&f, &params(&f, "One"), &t110, opts).unwrap();
    assert_eq!(
        p.descriptor,
        Descriptor::Leaf(CanonicalClass::CanT(f.one(), f.one(), f.zero()))
    );
    assert!(p.typos.is_empty());

    let p = oracle::predict(&f, &params(&f, "Two"), &params(&f, "Tt(1)"), opts).unwrap();
    let expected = Descriptor::Sum(vec![
        Descriptor::Leaf(CanonicalClass::CanTt(f.one())),
        Descriptor::Leaf(CanonicalClass::CanT(f.one(), f.zero(), f.zero())),
    ]);
    assert!(
        descriptor_equal(&p.descriptor, &expected),
        "{}",
        p.descriptor.pretty(&f)
    );

    let p = oracle::predict(&f, &params(&f, "Two"), &params(&f, "Two"), opts).unwrap();
    assert_eq!(p.descriptor.pretty(&f), "1 ⊕ 3");

    let p = oracle::predict(&f, &params(&f, "Tt(1)"), &params(&f, "Tt(2)"), opts).unwrap();
    assert_eq!(p.case.table, Table::TtTt);
    assert_eq!(p.case.row, 0);
    assert_eq!(p.descriptor.dim(), 9);
    assert_eq!(
        p.descriptor,
        oracle::predict(&f, &params(&f, "Tt(2)"), &params(&f, "Tt(1)"), opts)
            .unwrap()
            .descriptor
    );

    let e = oracle::evaluate(&f, &params(&f, "Two"), &params(&f, "T(2,1,0)"), opts).unwrap();
    assert!(matches!(
        e.descriptor,
        Err(OracleError::NeedsExtension { degree: 2, .. })
    ));
}

#[test]
fn row_counts_and_keys() {
    let count = |t: Table| t.rows().len();
    assert_eq!(count(Table::TwoT), 15);
    assert_eq!(count(Table::TtTt), 2);
    assert_eq!(count(Table::TtT), 11);
    assert_eq!(count(Table::TTOpposite), 15);
    assert_eq!(count(Table::TTGeneral), 6);
    let all = CaseId::all();
    let keys: std::collections::BTreeSet<String> = all.iter().map(|c| c.key()).collect();
    assert_eq!(keys.len(), all.len());
    for c in &all {
        assert_eq!(CaseId::from_key(&c.key()), Some(*c));
    }
    assert_eq!(oracle::table_dump().len(), all.len());
}

/// Every pair over GF(3), duals included, lands in one row of the table its
/// factor kinds select, symmetrically and with the right dimension.
#[test]
fn rows_over_gf3_are_exhaustive_and_symmetric() {
    let f = Field::gf(1).unwrap();
    let all = with_duals(&f);
    let mut hit = std::collections::BTreeSet::new();
    for l in &all {
        for r in &all {
            check_pair(&f, l, r).unwrap();
            hit.insert(oracle::classify(&f, l, r, Options::default()).unwrap());
        }
    }
    // The rows with d outside the prime field need a bigger field.
    assert!(hit.len() >= 20, "{} rows hit", hit.len());
}

/// Over GF(9) every unordered pair of the universe is checked, and every
/// row except the two that only the excluded inputs `T(0,0,±1)` reach is
/// hit.
#[test]
fn rows_over_gf9_are_exhaustive_and_symmetric() {
    let f = Field::gf(2).unwrap();
    let u = universe(&f);
    let mut hit = std::collections::BTreeSet::new();
    let mut evaluated = 0;
    for i in 0..u.len() {
        for j in i..u.len() {
            if check_pair(&f, &u[i], &u[j]).unwrap().is_some() {
                evaluated += 1;
            }
            hit.insert(oracle::classify(&f, &u[i], &u[j], Options::default()).unwrap().key());
        }
    }
    let missing: Vec<String> = CaseId::all()
        .into_iter()
        .map(|c| c.key())
        .filter(|k| !hit.contains(k))
        .collect();
    assert_eq!(missing, ["table-2: c=0; d=1; b=0", "table-2: c=0; d=2; b=0"]);
    // About a third of the pairs evaluate without an extension.
    assert!(evaluated > u.len() * (u.len() + 1) / 8, "{evaluated} evaluated");
}

/// Over GF(27) every product with a factor `1`, `2` or `Tt` is checked,
/// and `T (x) T` pairs on a fixed stride.
#[test]
fn rows_over_gf27_conserve_dimension() {
    let f = Field::gf(3).unwrap();
    let u = universe(&f);
    let small: Vec<&ModuleParams> = u.iter().filter(|p| !matches!(p, ModuleParams::T(..))).collect();
    for l in &small {
        for r in &u {
            check_pair(&f, l, r).unwrap();
        }
    }
    let ts: Vec<&ModuleParams> = u.iter().filter(|p| matches!(p, ModuleParams::T(..))).collect();
    for (k, l) in ts.iter().enumerate().step_by(97) {
        for r in ts.iter().skip(k % 13).step_by(13) {
            check_pair(&f, l, r).unwrap();
        }
    }
}

/// A prediction that needs an extension evaluates after lifting, and the
/// lifted prediction still has the product's dimension.
#[test]
fn lifted_predictions_conserve_dimension() {
    let base = Field::gf(1).unwrap();
    let routes = Routes {
        engine: false,
        oracle: true,
    };
    let u = universe(&base);
    for i in 0..u.len() {
        for j in i..u.len() {
            let out = resolve_pair(&base, &u[i], &u[j], routes, Options::default(), 6).unwrap();
            assert!(!out.unresolved);
            let d = out.evaluation.unwrap().descriptor.unwrap();
            assert_eq!(d.dim(), u[i].dim() * u[j].dim());
        }
    }
}

/// `J/b` is the scalar of `X+^3` on `Tt(b) (x) T(beta,gamma,delta)`, and the
/// rho polynomial is the characteristic polynomial of `X+X-` on the weight
/// `delta+1` space, both computed from the matrices.
#[test]
fn tt_symbols_match_the_product() {
    for k in [1, 2] {
        let f = Field::gf(k).unwrap();
        for b in f.nonzero() {
            let tt = ModuleParams::tt_canonical(&f, b).unwrap();
            for t in universe(&f).into_iter().filter(|p| matches!(p, ModuleParams::T(..))) {
                let ModuleParams::T(_, gamma, delta) = t else {
                    unreachable!()
                };
                let s = oracle::symbols(&f, &tt, &t).unwrap();
                let m = product(&f, &tt, &t);
                let j = s.j.unwrap();
                assert_eq!(cube_scalars(&m).0, Some(f.div(j, b).unwrap()));
                // Normalization may shift a T factor with gamma != 0 and
                // delta in the prime field, so compare only unshifted ones.
                if gamma.is_zero() || f.prime_value(delta).is_none() {
                    let on_weight = xpxm_on_weight(&m, f.add(delta, f.one())).unwrap();
                    assert_eq!(on_weight.charpoly(), rho_poly(&f, b, gamma, delta, j, false));
                }
            }
        }
    }
}

/// `K` is the scalar of `X+^3` on a product of two `T` factors.
#[test]
fn k_matches_the_product() {
    let f = Field::gf(1).unwrap();
    let ts: Vec<ModuleParams> = universe(&f)
        .into_iter()
        .filter(|p| matches!(p, ModuleParams::T(..)))
        .collect();
    for l in &ts {
        for r in &ts {
            let s = oracle::symbols(&f, l, r).unwrap();
            assert_eq!(
                cube_scalars(&product(&f, l, r)).0,
                s.k,
                "{} ⊗ {}",
                l.format(&f),
                r.format(&f)
            );
        }
    }
}

fn element(f: &Field, i: usize) -> Fe {
    f.elements().nth(i % f.order()).unwrap()
}

fn module_at_81(f: &Field, kind: u8, b: usize, c: usize, d: usize) -> ModuleParams {
    match kind {
        0 => ModuleParams::One,
        1 => ModuleParams::Two,
        2 => ModuleParams::tt_canonical(f, element(f, b.max(1))).unwrap(),
        _ => {
            // Step c until the parameters are admissible.
            (0..f.order())
                .map(|s| ModuleParams::T(element(f, b), element(f, c + s), element(f, d)))
                .find(|p| p.check_admissible(f).is_ok())
                .unwrap()
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 1200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn rows_at_81(
        lk in prop_oneof![1 => Just(1u8), 1 => Just(2u8), 6 => Just(3u8)],
        rk in prop_oneof![1 => Just(2u8), 6 => Just(3u8)],
        lb in 0usize..81, lc in 0usize..81, ld in 0usize..81,
        rb in 0usize..81, rc in 0usize..81, rd in 0usize..81,
    ) {
        let f = Field::gf(4).unwrap();
        let l = module_at_81(&f, lk, lb, lc, ld);
        let r = module_at_81(&f, rk, rb, rc, rd);
        let checked = check_pair(&f, &l, &r);
        prop_assert!(checked.is_ok(), "{}", checked.unwrap_err());
        if l.dim() == 3 && r.dim() == 3 {
            let s = oracle::symbols(&f, &l, &r).unwrap();
            let plus = cube_scalars(&product(&f, &l, &r)).0.unwrap();
            match (&l, &r) {
                (ModuleParams::T(..), ModuleParams::T(..)) => prop_assert_eq!(Some(plus), s.k),
                (ModuleParams::Tt(b, ..), ModuleParams::T(..)) => prop_assert_eq!(Some(f.mul(plus, *b)), s.j),
                _ => {}
            }
        }
    }
}
