//! Horizontal and vertical cylinder decompositions. Every cylinder of a
//! normal origami has height 1 and circumference equal to the generator's order.

use porigami::families::semidirect_cyclic;
use porigami::origami::{Direction, Origami};

fn main() -> porigami::Result<()> {
    let (g, r, s) = semidirect_cyclic(3, 2, 1, 4)?;
    let o = Origami::new(g, r, s)?;
    println!("{} squares, stratum {}", o.size(), o.stratum());
    for dir in [Direction::Horizontal, Direction::Vertical] {
        let d = o.cylinder_decomposition(dir)?;
        println!("{}: {} cylinders", dir.as_str(), d.cylinders.len());
        for c in &d.cylinders {
            let squares: Vec<String> = c.squares.iter().map(|i| (i + 1).to_string()).collect();
            println!("  [{}]", squares.join(" "));
        }
    }
    Ok(())
}
