//! The three-dimensional irreducibles: building them, checking the sl(2)
//! relations, and telling isomorphic ones apart.
//!
//! ```bash
//! cargo run --example irreducible_modules
//! ```

use sl2char3::canon::{canonical_of_params, intertwiner, recover_params};
use sl2char3::field::Field;
use sl2char3::sl2::{ModuleParams, Rep};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::gf(1)?;
    let one = f.one();
    let zero = f.zero();

    let m = Rep::t(&f, one, one, zero)?;
    println!("T(1,1,0):");
    println!("  X- = {:?}", m.xminus);
    println!("  H  = {:?}", m.h);
    println!("  X+ = {:?}", m.xplus);
    println!("  relations hold: {}", m.validate().is_ok());
    println!("  irreducible: {}", m.is_irreducible());
    println!("  class: {}", recover_params(&m)?.format(&f));

    // (0,0,1) is excluded: the module has a proper submodule.
    match Rep::t(&f, zero, zero, one) {
        Ok(_) => println!("T(0,0,1) built"),
        Err(e) => println!("T(0,0,1): {e}"),
    }

    // A weight shift: T(b,c,d) with c != 0 is isomorphic to T(b',c,d+1).
    let params = ModuleParams::parse("T(1,1,1)", &f)?;
    let class = canonical_of_params(&f, &params)?;
    println!("T(1,1,1) has canonical class {}", class.format(&f));
    let a = Rep::from_params(&f, &params)?;
    let b = class.rep(&f);
    match intertwiner(&a, &b)? {
        Some(s) => println!("  intertwiner S = {s:?}"),
        None => println!("  no intertwiner"),
    }

    // Duals are given by -X^T and are again in the families.
    let dual = ModuleParams::parse("Dual(Tt(1,1,0))", &f)?;
    println!(
        "Dual(Tt(1,1,0)) has canonical class {}",
        canonical_of_params(&f, &dual)?.format(&f)
    );

    let mut classes: Vec<String> = Vec::new();
    for b in f.elements() {
        for c in f.elements() {
            for d in f.elements() {
                let p = ModuleParams::T(b, c, d);
                if p.check_admissible(&f).is_ok() {
                    let cl = canonical_of_params(&f, &p)?.format(&f);
                    if !classes.contains(&cl) {
                        classes.push(cl);
                    }
                }
            }
        }
    }
    println!(
        "{} distinct classes among admissible T(b,c,d) over GF(3):",
        classes.len()
    );
    println!("  {}", classes.join("  "));
    Ok(())
}
