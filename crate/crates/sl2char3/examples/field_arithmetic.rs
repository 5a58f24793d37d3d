//! Arithmetic in GF(9) and the Frobenius map, plus the one-shot root finder
//! the oracle uses for its cubic symbols.
//!
//! ```bash
//! cargo run --example field_arithmetic
//! ```

use sl2char3::field::Field;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::gf(2)?;
    let t = f.gen();
    println!("GF(9) with modulus {:?} (low degree first)", f.modulus());

    for x in f.nonzero() {
        let inv = f.inv(x)?;
        println!(
            "  x = {:<6} x^-1 = {:<6} x^3 = {:<6} sqrt = {}",
            f.format(x),
            f.format(inv),
            f.format(f.cube(x)),
            f.sqrt(x).map_or("-".into(), |r| f.format(r))
        );
    }

    // x -> x^3 fixes exactly the prime field.
    let fixed: Vec<String> = f.elements().filter(|&x| f.cube(x) == x).map(|x| f.format(x)).collect();
    println!("fixed by Frobenius: {}", fixed.join(", "));

    // l^2 + 1 has no root in GF(3) but splits over GF(9).
    let g3 = Field::gf(1)?;
    let p3 = [g3.one(), g3.zero(), g3.one()];
    let roots3 = g3.poly_roots(&p3)?;
    println!("l^2+1 over GF(3): splits = {}", roots3.splits());
    let p9 = [f.one(), f.zero(), f.one()];
    let roots9 = f.poly_roots(&p9)?;
    let shown: Vec<String> = roots9.with_multiplicity().into_iter().map(|r| f.format(r)).collect();
    println!("l^2+1 over GF(9): roots {}", shown.join(", "));

    // Elements move into a larger field along the standard embedding.
    let f81 = Field::gf(4)?;
    println!("t in GF(81): {}", f81.format(f.lift(t, &f81)?));
    Ok(())
}
