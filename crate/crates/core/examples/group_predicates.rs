//! p-group predicates on a few small groups.

use porigami::families::{maximal_class_family, power_closed_example, strata_family, MaximalClass};
use porigami::props;
use porigami::{Caps, Group};

fn report(name: &str, g: &Group) -> porigami::Result<()> {
    let (class, maximal) = props::nilpotency_class(g)?;
    let regular = match props::is_regular(g, 1 << 20) {
        Ok(b) => b.to_string(),
        Err(e) if e.is_cap() => "?".into(),
        Err(e) => return Err(e),
    };
    println!(
        "{name:<8} order {:>4}  powerful {:<5}  wpc {:<5}  woc {:<5}  regular {:<5}  class {class}{}",
        g.order(),
        props::is_powerful(g)?,
        props::is_weakly_power_closed(g)?,
        props::is_weakly_order_closed(g)?,
        regular,
        if maximal { " (maximal)" } else { "" },
    );
    Ok(())
}

fn main() -> porigami::Result<()> {
    let caps = Caps::default();
    report(
        "D_16",
        &maximal_class_family(MaximalClass::Dihedral, 4, caps)?.0,
    )?;
    report(
        "Q_16",
        &maximal_class_family(MaximalClass::Quaternion, 4, caps)?.0,
    )?;
    report("G(3,3,1)", &strata_family(3, 3, 1)?.0)?;
    report("G(2,5,1)", &strata_family(2, 5, 1)?.0)?;
    let (g, _, _) = power_closed_example()?;
    report("S_16 ex.", &g)?;
    println!(
        "  its derived subgroup is weakly power-closed: {}",
        props::is_weakly_power_closed(&g.derived_subgroup())?
    );
    Ok(())
}
