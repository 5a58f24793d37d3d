//! Structural decomposition of a few products, with the socle series that
//! the descriptors are read from.
//!
//! ```bash
//! cargo run --example decompose_product
//! ```

use sl2char3::decompose::{decompose, decompose_detailed, socle_series, DecomposeError};
use sl2char3::field::Field;
use sl2char3::sl2::{ModuleParams, Rep};
use sl2char3::tensor::tensor;

fn product(f: &Field, l: &str, r: &str) -> Result<Rep, Box<dyn std::error::Error>> {
    let a = Rep::from_params(f, &ModuleParams::parse(l, f)?)?;
    let b = Rep::from_params(f, &ModuleParams::parse(r, f)?)?;
    Ok(tensor(&a, &b)?)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::gf(1)?;

    let p = product(&f, "Two", "T(0,0,0)")?;
    println!("Two ⊗ T(0,0,0) = {}", decompose(&p)?.pretty(&f));
    for (i, layer) in socle_series(&p)?.iter().enumerate() {
        let classes: Vec<String> = layer.classes.iter().map(|c| c.format(&f)).collect();
        println!(
            "  socle layer {}: dim {} adds {}",
            i + 1,
            layer.space.dim(),
            classes.join(" ⊕ ")
        );
    }

    for (l, r) in [
        ("Two", "Two"),
        ("Two", "Tt(1)"),
        ("T(1,1,0)", "T(1,1,0)"),
        ("T(0,1,0)", "T(0,2,0)"),
    ] {
        let p = product(&f, l, r)?;
        let d = decompose_detailed(&p)?;
        println!("{l} ⊗ {r} = {}", d.descriptor.pretty(&f));
        for (space, summand) in &d.summands {
            println!("  summand of dim {}: {}", space.dim(), summand.pretty(&f));
        }
    }

    // Some products only split after adjoining eigenvalues of X+X-.
    let p = product(&f, "T(1,0,0)", "T(1,0,0)")?;
    match decompose(&p) {
        Ok(d) => println!("T(1,0,0) ⊗ T(1,0,0) = {}", d.pretty(&f)),
        Err(DecomposeError::FieldTooSmall { degree }) => {
            println!("T(1,0,0) ⊗ T(1,0,0) needs an extension of degree {degree}");
            let g = Field::gf(degree)?;
            let lifted = p.lift(&g)?;
            println!("  over GF(3^{degree}): {}", decompose(&lifted)?.pretty(&g));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}
