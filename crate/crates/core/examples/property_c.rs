//! Property (C): every generating pair has a commutator of the same order.
//! The pruned and exhaustive strategies agree; the Sylow counterexample fails.

use porigami::families::{counterexample_group, maximal_class_family, MaximalClass};
use porigami::props::{property_c, PropertyCOptions};
use porigami::Caps;

fn main() -> porigami::Result<()> {
    let (d32, _, _) = maximal_class_family(MaximalClass::Dihedral, 5, Caps::default())?;
    let pruned = property_c(&d32, PropertyCOptions::default())?;
    let full = property_c(&d32, PropertyCOptions::exhaustive())?;
    println!(
        "D_32: holds={} orders={:?} ({} pairs pruned, {} exhaustive)",
        pruned.holds, pruned.orders_found, pruned.pairs_examined, full.pairs_examined
    );

    let (h, _, _, _) = counterexample_group(2)?;
    let report = property_c(&h, PropertyCOptions::default())?;
    println!("H_2 (order {}): holds={}", h.order(), report.holds);
    for w in &report.witnesses {
        println!("  ord([{}, {}]) = {}", w.x, w.y, w.commutator_order);
    }
    Ok(())
}
