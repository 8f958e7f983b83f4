//! Realize finitely presented groups as permutation groups on cosets.

use porigami::presentation::{coset_realization, parse_presentation, todd_coxeter};
use porigami::{Caps, Group};

fn main() -> porigami::Result<()> {
    let texts = [
        "<r,s | r^8, s^2, (r*s)^2>",
        "<x,y | x^4, x^2 = y^2, y^-1*x*y = x^-1>",
        "<r,s | r^27, s^9, s^-1*r*s = r^4>",
    ];
    for text in texts {
        let pres = parse_presentation(text)?;
        let table = todd_coxeter(&pres, 1 << 16)?;
        let gens = coset_realization(&table);
        println!("{pres}: {} cosets", table.num_cosets());
        for (name, g) in pres.names().iter().zip(&gens) {
            println!("  {name} -> order {}", g.order());
        }
    }

    let pres = parse_presentation("<a,b | a^2, b^3, (a*b)^5>")?;
    let (a5, _) = Group::from_presentation(&pres, Caps::default())?;
    println!("{pres} has order {}", a5.order());
    Ok(())
}
