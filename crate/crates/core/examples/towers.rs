//! Commutator orders along towers of groups.

use porigami::families::{tower_report, Tower};
use porigami::Caps;

fn main() -> porigami::Result<()> {
    for (tower, from, to) in [
        (Tower::DihedralStaircase, 3, 8),
        (Tower::Wollmilchsau, 1, 4),
        (Tower::Abelian(3), 1, 4),
    ] {
        let report = tower_report(tower, from, to, Caps::default())?;
        println!("{} ({})", report.tower.name(), report.trend.as_str());
        for l in &report.levels {
            println!(
                "  {:>2}  order {:>6}  ord([x,y]) {:>4}  {}",
                l.level, l.order, l.commutator_order, l.stratum
            );
        }
    }
    Ok(())
}
