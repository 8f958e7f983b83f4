//! Draw an origami as SVG. Pass a path to write the file, otherwise the
//! drawing goes to stdout.

use porigami::families::strata_family;
use porigami::origami::Origami;
use porigami::render::{emit_svg, layout_origami, Palette, Style};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, r, s) = strata_family(3, 3, 1)?;
    let o = Origami::new(g, r, s)?;
    let layout = layout_origami(&o)?;
    let style = Style {
        square: 40,
        palette: Palette::Rainbow,
        labels: true,
    };
    let svg = emit_svg(&layout, &style);
    match std::env::args().nth(1) {
        Some(path) => {
            std::fs::write(&path, svg)?;
            eprintln!(
                "{} squares, {} glued edge marks, {} vertex colors -> {path}",
                layout.len(),
                layout.marks.len(),
                layout.class_count
            );
        }
        None => print!("{svg}"),
    }
    Ok(())
}
