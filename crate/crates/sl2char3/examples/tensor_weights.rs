//! Weight spaces of a tensor product, the scalars by which X+^3 and X-^3
//! act, and the highest and lowest weight vectors.
//!
//! ```bash
//! cargo run --example tensor_weights
//! ```

use sl2char3::field::Field;
use sl2char3::oracle::{self, Options};
use sl2char3::sl2::{ModuleParams, Rep};
use sl2char3::tensor::{cube_scalars, hw_lw_vectors, tensor, weight_spaces, xpxm_on_weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = Field::gf(1)?;
    for (l, r) in [
        ("T(1,1,0)", "T(1,1,0)"),
        ("T(1,0,0)", "T(2,0,0)"),
        ("Tt(1)", "T(1,0,0)"),
    ] {
        let lp = ModuleParams::parse(l, &f)?;
        let rp = ModuleParams::parse(r, &f)?;
        let product = tensor(&Rep::from_params(&f, &lp)?, &Rep::from_params(&f, &rp)?)?;
        println!("{l} ⊗ {r}: dimension {}", product.dim());

        let weights = weight_spaces(&product)?;
        for (w, space) in &weights.spaces {
            let xx = xpxm_on_weight(&product, *w)?;
            let cp: Vec<String> = xx.charpoly().iter().map(|c| f.format(*c)).collect();
            println!(
                "  weight {}: dim {}, charpoly of X+X- [{}]",
                f.format(*w),
                space.dim(),
                cp.join(",")
            );
        }

        let (plus, minus) = cube_scalars(&product);
        let show = |x: Option<_>| x.map_or("not scalar".to_string(), |v| f.format(v));
        println!("  X+^3 = {}, X-^3 = {}", show(plus), show(minus));
        if let Some(p) = oracle::cube_scalars(&f, &lp, &rp, Options::default())? {
            println!(
                "  closed form: X+^3 = {}, X-^3 = {}",
                f.format(p.plus),
                f.format(p.minus)
            );
        }
        let ext = hw_lw_vectors(&product)?;
        println!(
            "  highest weight vectors: {}, lowest weight vectors: {}",
            ext.highest_dim(),
            ext.lowest_dim()
        );
    }
    Ok(())
}
