//! The closed-form route: which table row a pair falls under, the symbols
//! the row is evaluated with, and the predicted decomposition.
//!
//! ```bash
//! cargo run --example oracle_tables
//! ```

use sl2char3::cli::resolve::{resolve_pair, Routes};
use sl2char3::field::Field;
use sl2char3::oracle::{self, Options, Typo};
use sl2char3::sl2::ModuleParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::gf(2)?;
    let pairs = [
        ("Two", "Two"),
        ("Two", "Tt([0,1])"),
        ("T(1,1,0)", "T(1,1,0)"),
        ("Tt(1)", "T(0,1,1)"),
        ("T(1,[0,1],0)", "T(2,[0,2],0)"),
    ];
    for (l, r) in pairs {
        let lp = ModuleParams::parse(l, &f)?;
        let rp = ModuleParams::parse(r, &f)?;
        let s = oracle::symbols(&f, &lp, &rp)?;
        let e = oracle::evaluate(&f, &lp, &rp, Options::default())?;
        println!("{l} ⊗ {r}");
        println!("  row: {}", e.case.key());
        let show = |x: Option<_>| x.map_or("-".to_string(), |v| f.format(v));
        println!("  J = {}  K = {}", show(s.j), show(s.k));
        match &e.descriptor {
            Ok(d) => println!("  prediction: {}", d.pretty(&f)),
            Err(err) => println!("  prediction: {err}"),
        }
    }

    // The printed text at a known misprint, next to the corrected reading.
    // This row needs the roots of a cubic, so the pair is lifted until they
    // exist.
    let g = Field::gf(1)?;
    let lp = ModuleParams::parse("T(0,1,0)", &g)?;
    let rp = ModuleParams::parse("Tt(2)", &g)?;
    let routes = Routes {
        engine: false,
        oracle: true,
    };
    for paper_literal in [false, true] {
        let out = resolve_pair(&g, &lp, &rp, routes, Options { paper_literal }, 6)?;
        let e = out.evaluation.expect("the oracle route ran");
        let pretty = e
            .descriptor
            .as_ref()
            .map_or_else(|x| x.to_string(), |d| d.pretty(&out.field));
        let typos: Vec<&str> = e.typos.iter().map(|t| t.id()).collect();
        println!(
            "T(0,1,0) ⊗ Tt(2) over GF(3^{}), paper_literal = {paper_literal}: {pretty}  [{}]",
            out.field.degree(),
            typos.join(", ")
        );
    }

    println!("known misprints:");
    for t in Typo::ALL {
        println!("  {}: {}", t.id(), t.description());
    }
    Ok(())
}
