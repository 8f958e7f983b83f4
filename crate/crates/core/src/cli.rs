//! The `porigami` command line.
//!
//! Exit codes: 0 success, 2 usage or parameter errors, 3 cap exceeded,
//! 4 malformed or unsuitable input.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::families::{search_counterexample, tower_report, SearchPredicate, Tower};
use crate::group::{Caps, Group};
use crate::json::{
    big, cylinders_json, origami_json, parse_group_source, parse_origami, property_c_json,
    resolve_origamis, search_json, stratum_json, tower_json, FamilyJson, GroupJson, OrigamiJson,
    Resolved,
};
use crate::origami::{origami_equal, sl2_orbit, Direction, Origami};
use crate::presentation::{coset_realization, parse_presentation, todd_coxeter};
use crate::props::{self, PropertyCOptions, Strategy};
use crate::render::{emit_svg, layout_origami, Palette, Style};

#[derive(Parser, Debug)]
#[command(
    name = "porigami",
    version,
    about = "Normal origamis from 2-generated finite p-groups"
)]
struct Cli {
    /// Print reports as JSON with sorted keys.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group reports.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Origami reports.
    #[command(subcommand)]
    Origami(OrigamiCmd),
    /// Build a named family and report on it.
    Family {
        name: String,
        #[command(flatten)]
        params: Params,
    },
    /// Commutator orders along a tower of groups.
    Tower {
        /// dihedral_staircase, dihedral_rotation, wollmilchsau or abelian.
        name: String,
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Prime for the abelian tower.
        #[arg(long, default_value_t = 2)]
        p: u64,
    },
    /// Randomized searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Finitely presented groups.
    #[command(subcommand)]
    Present(PresentCmd),
}

#[derive(Subcommand, Debug)]
enum GroupCmd {
    /// Order, prime, and basic subgroups.
    Info(Source),
    /// Decide property (C).
    PropertyC {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = StrategyArg::Pruned)]
        strategy: StrategyArg,
        /// Collect every commutator order instead of stopping at two.
        #[arg(long)]
        all: bool,
        /// Worker threads.
        #[arg(long)]
        parallel: Option<usize>,
    },
    /// p-group predicates.
    Props(Source),
}

#[derive(Subcommand, Debug)]
enum OrigamiCmd {
    /// Stratum, genus and singularities.
    Stratum(Source),
    /// Cylinder decompositions.
    Cylinders {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum)]
        direction: Option<DirectionArg>,
    },
    /// Compare two origamis over a shared realization.
    Equal { first: PathBuf, second: PathBuf },
    /// SL(2,Z) orbit.
    Orbit {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 10_000)]
        max: usize,
    },
    /// Draw as SVG.
    Render {
        #[command(flatten)]
        source: Source,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Square side in pixels.
        #[arg(long, default_value_t = 48)]
        size: u32,
        /// rainbow or grey.
        #[arg(long, default_value = "rainbow")]
        palette: String,
        #[arg(long)]
        no_labels: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SearchCmd {
    /// Random pairs of the Sylow p-subgroup of S_{p^r} with mismatched commutator orders.
    Counterexample {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        r: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        max_iter: u64,
        #[arg(long, value_enum, default_value_t = PredicateArg::OrderMismatch)]
        predicate: PredicateArg,
    },
}

#[derive(Subcommand, Debug)]
enum PresentCmd {
    /// Todd–Coxeter enumeration over the trivial subgroup.
    Tc { file: PathBuf },
}

/// Where a group or origami comes from: a JSON file or a family.
#[derive(Args, Debug)]
struct Source {
    /// Group or origami JSON file.
    file: Option<PathBuf>,
    #[arg(long, conflicts_with = "file")]
    family: Option<String>,
    /// Use the family's second pair.
    #[arg(long)]
    alternate: bool,
    #[command(flatten)]
    params: Params,
}

#[derive(Args, Debug, Default, Clone)]
struct Params {
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    m: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<i64>,
}

impl Params {
    fn family(&self, name: &str) -> FamilyJson {
        FamilyJson {
            name: name.to_string(),
            p: self.p,
            n: self.n,
            k: self.k,
            r: self.r,
            l: self.l,
            m: self.m,
            a: self.a,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum StrategyArg {
    Pruned,
    Exhaustive,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DirectionArg {
    Horizontal,
    Vertical,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PredicateArg {
    OrderMismatch,
    OrderMismatchWpc,
}

/// Settings shared by every subcommand.
#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub caps: Caps,
    pub json: bool,
}

enum Failure {
    Usage(String),
    Input(String),
    Engine(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Engine(e)
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 4,
            Failure::Engine(e) if e.is_cap() => 3,
            Failure::Engine(
                Error::Range(_) | Error::InvalidTwist(_) | Error::NotCoprime { .. },
            ) => 2,
            Failure::Engine(_) => 4,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Input(m) => m.clone(),
            Failure::Engine(e) => e.to_string(),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// Run with process stdout/stderr.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

/// Run, writing the report to `out` and diagnostics to `err`.
pub fn run_with<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: PORIGAMI_CAPS: {e}");
            return 2;
        }
    };
    let config = Config {
        caps,
        json: cli.json,
    };
    match dispatch(cli.command, config) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(command: Command, cfg: Config) -> Outcome<String> {
    match command {
        Command::Group(cmd) => group_cmd(cmd, cfg),
        Command::Origami(cmd) => origami_cmd(cmd, cfg),
        Command::Family { name, params } => {
            let source = Source {
                file: None,
                family: Some(name),
                alternate: false,
                params,
            };
            let resolved = resolve_group(&source, cfg)?;
            let mut report = group_info(&resolved.group)?;
            if let Some((x, y)) = &resolved.pair {
                let o = Origami::new(resolved.group.clone(), x.clone(), y.clone())?;
                report["pair"] = origami_json(&o);
                report["origami"] = stratum_json(&o);
            }
            if let Some((x, y)) = &resolved.alternate {
                report["alternate"] = json!({"x": x.to_string(), "y": y.to_string()});
            }
            Ok(emit(&report, cfg))
        }
        Command::Tower { name, from, to, p } => {
            let tower = match name.as_str() {
                "dihedral_staircase" | "dihedral" => Tower::DihedralStaircase,
                "dihedral_rotation" => Tower::DihedralRotation,
                "wollmilchsau" => Tower::Wollmilchsau,
                "abelian" => Tower::Abelian(p),
                other => return Err(Failure::Usage(format!("unknown tower `{other}`"))),
            };
            let report = tower_report(tower, from, to, cfg.caps)?;
            if cfg.json {
                return Ok(emit(&tower_json(&report), cfg));
            }
            let mut rows = vec![vec![
                "level".to_string(),
                "order".into(),
                "ord([x,y])".into(),
                "singularities".into(),
                "stratum".into(),
            ]];
            for l in &report.levels {
                rows.push(vec![
                    l.level.to_string(),
                    l.order.to_string(),
                    l.commutator_order.to_string(),
                    l.singularities.to_string(),
                    l.stratum.to_string(),
                ]);
            }
            Ok(format!(
                "tower {} ({})\n{}",
                report.tower.name(),
                report.trend.as_str(),
                columns(&rows)
            ))
        }
        Command::Search(SearchCmd::Counterexample {
            p,
            r,
            seed,
            max_iter,
            predicate,
        }) => {
            let predicate = match predicate {
                PredicateArg::OrderMismatch => SearchPredicate::OrderMismatch,
                PredicateArg::OrderMismatchWpc => SearchPredicate::OrderMismatchAndWpcDerived,
            };
            let outcome = search_counterexample(p, r, seed, max_iter, predicate)?;
            Ok(emit(&search_json(&outcome), cfg))
        }
        Command::Present(PresentCmd::Tc { file }) => {
            let text = read(&file)?;
            let pres = parse_presentation(&text)?;
            let table = todd_coxeter(&pres, cfg.caps.cosets)?;
            let gens = coset_realization(&table);
            let mut images = serde_json::Map::new();
            for (name, g) in pres.names().iter().zip(&gens) {
                images.insert(name.clone(), json!(g.to_string()));
            }
            let report = json!({
                "presentation": pres.to_string(),
                "cosets": table.num_cosets(),
                "generators": images,
            });
            Ok(emit(&report, cfg))
        }
    }
}

fn group_cmd(cmd: GroupCmd, cfg: Config) -> Outcome<String> {
    match cmd {
        GroupCmd::Info(source) => {
            let g = resolve_group(&source, cfg)?.group;
            Ok(emit(&group_info(&g)?, cfg))
        }
        GroupCmd::PropertyC {
            source,
            strategy,
            all,
            parallel,
        } => {
            let g = resolve_group(&source, cfg)?.group;
            let options = PropertyCOptions {
                strategy: match strategy {
                    StrategyArg::Pruned => Strategy::ConjugationPruned,
                    StrategyArg::Exhaustive => Strategy::Exhaustive,
                },
                early_exit: !all,
                threads: parallel,
            };
            let report = props::property_c(&g, options)?;
            Ok(emit(&property_c_json(&report), cfg))
        }
        GroupCmd::Props(source) => {
            let g = resolve_group(&source, cfg)?.group;
            let (class, maximal) = props::nilpotency_class(&g)?;
            let regular = match props::is_regular(&g, cfg.caps.elements) {
                Ok(b) => json!(b),
                Err(e) if e.is_cap() => Value::Null,
                Err(e) => return Err(e.into()),
            };
            let report = json!({
                "order": big(g.order()),
                "prime": g.prime()?,
                "powerful": props::is_powerful(&g)?,
                "weakly_power_closed": props::is_weakly_power_closed(&g)?,
                "weakly_order_closed": props::is_weakly_order_closed(&g)?,
                "derived_weakly_power_closed": props::is_weakly_power_closed(&g.derived_subgroup())?,
                "regular": regular,
                "nilpotency_class": class,
                "maximal_class": maximal,
            });
            Ok(emit(&report, cfg))
        }
    }
}

fn origami_cmd(cmd: OrigamiCmd, cfg: Config) -> Outcome<String> {
    match cmd {
        OrigamiCmd::Stratum(source) => {
            let o = resolve_origami(&source, cfg)?;
            if cfg.json {
                return Ok(emit(&stratum_json(&o), cfg));
            }
            let d = o.singularity_data();
            let tail = match d.count {
                0 => "no singularities".to_string(),
                1 => format!("1 singularity of multiplicity {}", d.multiplicity),
                c => format!("{c} singularities of multiplicity {}", d.multiplicity),
            };
            Ok(format!("{}, genus {}, {tail}\n", d.stratum, d.genus))
        }
        OrigamiCmd::Cylinders { source, direction } => {
            let o = resolve_origami(&source, cfg)?;
            let dirs = match direction {
                Some(DirectionArg::Horizontal) => vec![Direction::Horizontal],
                Some(DirectionArg::Vertical) => vec![Direction::Vertical],
                None => vec![Direction::Horizontal, Direction::Vertical],
            };
            let mut reports = Vec::new();
            for d in dirs {
                reports.push(cylinders_json(&o.cylinder_decomposition(d)?));
            }
            if cfg.json {
                return Ok(emit(&Value::Array(reports), cfg));
            }
            let mut rows = vec![vec![
                "direction".to_string(),
                "cylinders".into(),
                "circumference".into(),
            ]];
            for r in &reports {
                let circ: Vec<String> = r["circumferences"]
                    .as_array()
                    .map(|a| a.iter().map(|v| v.to_string()).collect())
                    .unwrap_or_default();
                let mut distinct = circ.clone();
                distinct.dedup();
                rows.push(vec![
                    r["direction"].as_str().unwrap_or_default().to_string(),
                    r["count"].to_string(),
                    distinct.join(","),
                ]);
            }
            Ok(columns(&rows))
        }
        OrigamiCmd::Equal { first, second } => {
            let items = [read_origami(&first)?, read_origami(&second)?];
            let os = resolve_origamis(&items, cfg.caps)?;
            let equal = origami_equal(&os[0], &os[1])?;
            Ok(emit(&json!({ "equal": equal }), cfg))
        }
        OrigamiCmd::Orbit { source, max } => {
            let o = resolve_origami(&source, cfg)?;
            let orbit = sl2_orbit(&o, max)?;
            if cfg.json {
                let members: Vec<Value> = orbit.iter().map(origami_json).collect();
                return Ok(emit(
                    &json!({
                        "size": orbit.len(),
                        "stratum": o.stratum().to_string(),
                        "members": members,
                    }),
                    cfg,
                ));
            }
            let mut text = format!("orbit size {}, stratum {}\n", orbit.len(), o.stratum());
            for m in &orbit {
                text.push_str(&format!("  x = {}  y = {}\n", m.x(), m.y()));
            }
            Ok(text)
        }
        OrigamiCmd::Render {
            source,
            out,
            size,
            palette,
            no_labels,
        } => {
            let o = resolve_origami(&source, cfg)?;
            let style = Style {
                square: size,
                palette: Palette::parse(&palette).map_err(|e| Failure::Usage(e.to_string()))?,
                labels: !no_labels,
            };
            let svg = emit_svg(&layout_origami(&o)?, &style);
            match out {
                Some(path) => {
                    std::fs::write(&path, svg)
                        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(svg),
            }
        }
    }
}

fn read(path: &Path) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_origami(path: &Path) -> Outcome<OrigamiJson> {
    Ok(parse_origami(&read(path)?)?)
}

fn family_source(source: &Source) -> Outcome<GroupJson> {
    match (&source.file, &source.family) {
        (Some(path), _) => Ok(parse_group_source(&read(path)?)?),
        (None, Some(name)) => Ok(GroupJson::Family(source.params.family(name))),
        (None, None) => Err(Failure::Usage("give a JSON file or --family".into())),
    }
}

fn resolve_group(source: &Source, cfg: Config) -> Outcome<Resolved> {
    Ok(family_source(source)?.resolve(cfg.caps)?)
}

fn resolve_origami(source: &Source, cfg: Config) -> Outcome<Origami> {
    if let Some(path) = &source.file {
        let text = read(path)?;
        let value: Value =
            serde_json::from_str(&text).map_err(|e| Failure::Input(e.to_string()))?;
        if value.get("group").is_some() && !source.alternate {
            return Ok(parse_origami(&text)?.resolve(cfg.caps)?);
        }
    }
    let resolved = resolve_group(source, cfg)?;
    let pair = if source.alternate {
        &resolved.alternate
    } else {
        &resolved.pair
    };
    let (x, y) = pair
        .clone()
        .ok_or_else(|| Failure::Input("this group source has no designated pair".into()))?;
    Ok(Origami::new(resolved.group, x, y)?)
}

fn group_info(g: &Group) -> Outcome<Value> {
    let prime = g.prime().ok().flatten();
    let derived = g.derived_subgroup();
    let mut report = json!({
        "degree": g.degree(),
        "order": big(g.order()),
        "prime": prime,
        "abelian": g.is_abelian(),
        "exponent": g.exponent()?,
        "derived_order": big(derived.order()),
        "generators": g.generators().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    if prime.is_some() {
        let frattini = g.frattini_subgroup()?;
        let series: Vec<Value> = g
            .lower_central_series()?
            .iter()
            .map(|h| big(h.order()))
            .collect();
        report["frattini_order"] = big(frattini.order());
        report["nilpotency_class"] = json!(series.len() - 1);
        report["lower_central_series"] = Value::Array(series);
    }
    Ok(report)
}

fn emit(value: &Value, cfg: Config) -> String {
    if cfg.json {
        let mut s = serde_json::to_string_pretty(value).expect("values serialize");
        s.push('\n');
        s
    } else {
        let mut rows = Vec::new();
        flatten("", value, &mut rows);
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        rows.iter()
            .map(|(k, v)| format!("{k:<width$}  {v}\n"))
            .collect()
    }
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                flatten(&key, v, rows);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), v, rows);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            rows.push((prefix.to_string(), parts.join(" ")));
        }
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn columns(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| format!("{cell:>w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
