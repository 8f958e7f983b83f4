mod common;

use std::collections::{BTreeSet, HashMap};

use common::family_suite;
use porigami::origami::Origami;
use porigami::render::{emit_svg, layout_origami, Palette, Side, Style};
use porigami::Caps;

#[test]
fn marks_come_in_opposite_pairs() {
    for m in family_suite(1 << 10) {
        let o = Origami::new(m.group, m.x, m.y).unwrap();
        let layout = layout_origami(&o).unwrap();
        let (right, up) = o.neighbor_tables().unwrap();
        let cells: BTreeSet<_> = layout.cells.iter().collect();
        assert_eq!(cells.len(), layout.len(), "{}: overlapping squares", m.name);

        let svg = emit_svg(&layout, &Style::default());
        let mut seen: HashMap<usize, usize> = HashMap::new();
        for line in svg.lines().filter(|l| l.contains(r#"class="mark""#)) {
            let id: usize = line
                .split("data-mark=\"")
                .nth(1)
                .unwrap()
                .split('"')
                .next()
                .unwrap()
                .parse()
                .unwrap();
            *seen.entry(id).or_default() += 1;
        }
        assert_eq!(seen.len(), layout.marks.len(), "{}", m.name);
        assert!(seen.values().all(|&c| c == 2), "{}", m.name);

        for mark in &layout.marks {
            let (f, t) = (mark.from, mark.to);
            match f.side {
                Side::Right => {
                    assert_eq!(t.side, Side::Left);
                    assert_eq!(right[f.square], t.square);
                }
                Side::Top => {
                    assert_eq!(t.side, Side::Bottom);
                    assert_eq!(up[f.square], t.square);
                }
                _ => panic!("{}: mark starts on {:?}", m.name, f.side),
            }
        }
        // Every right and upper gluing is drawn exactly once: shared edge or mark.
        let shared = (0..layout.len())
            .map(|g| {
                let (c, r) = layout.cells[g];
                usize::from(layout.cells[right[g]] == (c + 1, r))
                    + usize::from(layout.cells[up[g]] == (c, r + 1))
            })
            .sum::<usize>();
        assert_eq!(shared + layout.marks.len(), 2 * layout.len(), "{}", m.name);
    }
}

#[test]
fn rendering_is_deterministic_and_styled() {
    let (g, i, j) = porigami::families::quaternion_pair(Caps::default()).unwrap();
    let o = Origami::new(g, i, j).unwrap();
    let a = emit_svg(&layout_origami(&o).unwrap(), &Style::default());
    let b = emit_svg(&layout_origami(&o).unwrap(), &Style::default());
    assert_eq!(a, b);
    let grey = Style {
        square: 20,
        palette: Palette::Grey,
        labels: false,
    };
    let c = emit_svg(&layout_origami(&o).unwrap(), &grey);
    assert!(!c.contains(r#"class="labels""#));
    assert!(c.contains("hsl(0,0%"));
    assert!(Palette::parse("plaid").is_err());
}
