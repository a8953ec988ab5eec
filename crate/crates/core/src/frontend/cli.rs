//! The `filtra` command line.
//!
//! Exit status 0 means success, 1 a failed validation or construction, 2 a usage,
//! input or parse error.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bundle::{
    validate_bundle, validate_morphism, Check, FilteredBundleSpec, FilteredMorphism, ValidationReport,
};
use crate::functor::{self, FunctorError};
use crate::tower::{check_filterable_atlas, check_tower_shape, tower_of};

use super::machine::{self, Payload};
use super::{parse, print_document, Document, Item};

#[derive(Parser, Debug)]
#[command(name = "filtra", version, about = "Exact symbolic engine for filtered bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate every object of the document, or the selected one
    Check(Common),
    /// Associated graded bundle or morphism
    Gr(Common),
    /// Tangent lift
    Tangent(Common),
    /// Vertical lift
    Vertical(Common),
    /// Dual vertical lift (bundles of one weight axis)
    Dualvert(Common),
    /// Linearisation (one weight axis, degree at least 1)
    Lin(Common),
    /// Collapse the weight axes to the total weight
    Totw(Common),
    /// Jet prolongation
    Jet(JetArgs),
    /// Rank of a filtration presentation
    Rank(Common),
    /// Homogeneous generators of a filtration presentation
    Gens(Common),
    /// Filterability of a tower, or of the tower of a bundle
    TowerCheck(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Input document, `-` for standard input
    file: PathBuf,
    /// Name of the object to act on
    #[arg(long)]
    object: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Dsl)]
    format: Format,
}

#[derive(Args, Debug)]
struct JetArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, default_value_t = 1)]
    order: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Dsl,
    Machine,
}

/// A finished command: exit status plus what goes to each stream.
struct Outcome {
    status: i32,
    out: String,
    err: String,
}

impl Outcome {
    fn ok(out: String) -> Self {
        Outcome { status: 0, out, err: String::new() }
    }

    fn fail(out: String, err: String) -> Self {
        Outcome { status: 1, out, err }
    }

    fn usage(err: String) -> Self {
        Outcome { status: 2, out: String::new(), err }
    }
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if status == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return status;
        }
    };
    let outcome = dispatch(cli.command);
    let _ = out.write_all(outcome.out.as_bytes());
    let _ = err.write_all(outcome.err.as_bytes());
    outcome.status
}

fn dispatch(command: Command) -> Outcome {
    let (common, action): (&Common, Action) = match &command {
        Command::Check(c) => (c, Action::Check),
        Command::Gr(c) => (c, Action::Functor(Functor::Gr)),
        Command::Tangent(c) => (c, Action::Functor(Functor::Tangent)),
        Command::Vertical(c) => (c, Action::Functor(Functor::Vertical)),
        Command::Dualvert(c) => (c, Action::Functor(Functor::DualVertical)),
        Command::Lin(c) => (c, Action::Functor(Functor::Lin)),
        Command::Totw(c) => (c, Action::Functor(Functor::Totw)),
        Command::Jet(j) => (&j.common, Action::Functor(Functor::Jet(j.order))),
        Command::Rank(c) => (c, Action::Rank),
        Command::Gens(c) => (c, Action::Gens),
        Command::TowerCheck(c) => (c, Action::TowerCheck),
    };
    let doc = match load(&common.file) {
        Ok(d) => d,
        Err(e) => return Outcome::usage(e),
    };
    match action {
        Action::Check => check(&doc, common),
        Action::Functor(f) => match select(&doc, common.object.as_deref(), &["bundle", "morphism"]) {
            Ok(item) => apply_functor(&doc, item, f, common.format),
            Err(e) => Outcome::usage(e),
        },
        Action::Rank | Action::Gens => match select(&doc, common.object.as_deref(), &["filtration"]) {
            Ok(Item::Filtration(p)) => match p.analyse() {
                Ok(a) => {
                    let text = match (action, common.format) {
                        (Action::Rank, Format::Dsl) => format!("rank {}: {}\n", p.name, rank_string(&a.rank)),
                        (Action::Rank, Format::Machine) => machine::render(&machine::rank(&p.name, &a)),
                        (_, Format::Dsl) => {
                            let mut s = format!("rank {}: {}\ngenerators {}:\n", p.name, rank_string(&a.rank), p.name);
                            for g in &a.generators {
                                s.push_str(&format!(
                                    "  weight {}: {}\n",
                                    g.weight,
                                    super::printer::base_polynomial(&g.polynomial, &p.vars)
                                ));
                            }
                            s
                        }
                        (_, Format::Machine) => machine::render(&machine::generators(&p.name, &p.vars, &a)),
                    };
                    Outcome::ok(text)
                }
                Err(e) => Outcome::fail(String::new(), format!("filtration {}: {e}\n", p.name)),
            },
            Ok(_) => unreachable!("selection is restricted to filtrations"),
            Err(e) => Outcome::usage(e),
        },
        Action::TowerCheck => match select(&doc, common.object.as_deref(), &["tower", "bundle"]) {
            Ok(item) => tower_check(item, common.format),
            Err(e) => Outcome::usage(e),
        },
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Action {
    Check,
    Functor(Functor),
    Rank,
    Gens,
    TowerCheck,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Functor {
    Gr,
    Tangent,
    Vertical,
    DualVertical,
    Lin,
    Totw,
    Jet(u32),
}

fn rank_string(rank: &[usize]) -> String {
    let parts: Vec<String> = rank.iter().map(|d| d.to_string()).collect();
    format!("({})", parts.join(","))
}

fn load(path: &PathBuf) -> Result<Document, String> {
    let shown = path.display().to_string();
    let text = if shown == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("-: {e}\n"))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{shown}: {e}\n"))?
    };
    parse(&text).map_err(|e| format!("{shown}:{e}\n"))
}

fn select<'a>(doc: &'a Document, object: Option<&str>, kinds: &[&str]) -> Result<&'a Item, String> {
    let wanted = kinds.join(" or ");
    if let Some(name) = object {
        let item = doc.get(name).ok_or_else(|| format!("no object named `{name}`\n"))?;
        if !kinds.contains(&item.kind()) {
            return Err(format!("`{name}` is a {}, expected a {wanted}\n", item.kind()));
        }
        return Ok(item);
    }
    let candidates: Vec<&Item> = doc.items.iter().filter(|i| kinds.contains(&i.kind())).collect();
    match candidates.as_slice() {
        [one] => Ok(one),
        [] => Err(format!("document has no {wanted}\n")),
        many => {
            let names: Vec<&str> = many.iter().map(|i| i.name()).collect();
            Err(format!("several candidates ({}); choose one with --object\n", names.join(", ")))
        }
    }
}

fn item_report(doc: &Document, item: &Item) -> ValidationReport {
    let run = || -> Result<ValidationReport, String> {
        match item {
            Item::Bundle(b) => validate_bundle(b).map_err(|e| e.to_string()),
            Item::Morphism(m) => {
                let mut r = validate_morphism(m).map_err(|e| e.to_string())?;
                for name in [&m.source, &m.target] {
                    if let Some(b) = doc.bundle(name) {
                        let inner = validate_bundle(b).map_err(|e| e.to_string())?;
                        if !inner.passed() {
                            r.push(Check::Degree, name.clone(), false, format!("bundle `{name}` does not validate"));
                        }
                    }
                }
                Ok(r)
            }
            Item::Tower(t) => check_tower_shape(t).map_err(|e| e.to_string()),
            Item::Filtration(p) => {
                let mut r = ValidationReport::new(p.name.clone());
                match p.analyse() {
                    Ok(a) => r.push(Check::Presentation, p.name.clone(), true, format!("rank {}", rank_string(&a.rank))),
                    Err(e) => r.push(Check::Presentation, p.name.clone(), false, e.to_string()),
                }
                Ok(r)
            }
        }
    };
    match run() {
        Ok(mut r) => {
            r.subject = item.name().to_string();
            r
        }
        Err(e) => {
            let mut r = ValidationReport::new(item.name());
            r.push(Check::Presentation, item.name(), false, e);
            r
        }
    }
}

fn check(doc: &Document, common: &Common) -> Outcome {
    let items: Vec<&Item> = match &common.object {
        Some(name) => match doc.get(name) {
            Some(i) => vec![i],
            None => return Outcome::usage(format!("no object named `{name}`\n")),
        },
        None => doc.items.iter().collect(),
    };
    let reports: Vec<ValidationReport> = items.iter().map(|i| item_report(doc, i)).collect();
    let passed = reports.iter().all(|r| r.passed());
    let text = match common.format {
        Format::Dsl => reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
        Format::Machine => machine::render(&Payload::Check {
            passed,
            reports: reports.iter().map(machine::report).collect(),
        }),
    };
    if passed {
        Outcome::ok(text)
    } else {
        Outcome::fail(text, String::new())
    }
}

fn emit(doc: &Document, format: Format) -> String {
    match format {
        Format::Dsl => print_document(doc),
        Format::Machine => machine::render(&machine::document(doc)),
    }
}

fn bundle_functor(f: Functor, b: &FilteredBundleSpec) -> Result<FilteredBundleSpec, FunctorError> {
    match f {
        Functor::Gr => functor::gr_bundle(b),
        Functor::Tangent => functor::tangent_lift(b),
        Functor::Vertical => functor::vertical_lift(b),
        Functor::DualVertical => functor::dual_vertical_lift(b),
        Functor::Lin => functor::linearise(b),
        Functor::Totw => functor::total_weight(b),
        Functor::Jet(k) => functor::jet_prolong(b, k),
    }
}

fn morphism_functor(f: Functor, m: &FilteredMorphism) -> Result<Option<FilteredMorphism>, FunctorError> {
    Ok(Some(match f {
        Functor::Gr => functor::gr_morphism(m)?,
        Functor::Tangent => functor::tangent_morphism(m)?,
        Functor::Vertical => functor::vertical_morphism(m)?,
        Functor::DualVertical => return Ok(None),
        Functor::Lin => functor::linearise_morphism(m)?,
        Functor::Totw => functor::total_weight_morphism(m)?,
        Functor::Jet(k) => functor::jet_prolong_morphism(m, k)?,
    }))
}

fn apply_functor(doc: &Document, item: &Item, f: Functor, format: Format) -> Outcome {
    let report = item_report(doc, item);
    if !report.passed() {
        return Outcome::fail(String::new(), report.to_string());
    }
    let result = match item {
        Item::Bundle(b) => bundle_functor(f, b).map(|out| Document { items: vec![Item::Bundle(out)] }),
        Item::Morphism(m) => {
            let (Some(src), Some(tgt)) = (doc.bundle(&m.source), doc.bundle(&m.target)) else {
                return Outcome::usage(format!("morphism `{}` refers to bundles outside the document\n", m.name));
            };
            let mapped = match morphism_functor(f, m) {
                Ok(Some(x)) => x,
                Ok(None) => return Outcome::usage("dualvert applies to bundles only\n".into()),
                Err(e) => return Outcome::fail(String::new(), format!("{}: {e}\n", m.name)),
            };
            let mut items = Vec::new();
            match bundle_functor(f, src) {
                Ok(b) => items.push(Item::Bundle(b)),
                Err(e) => return Outcome::fail(String::new(), format!("{}: {e}\n", src.name)),
            }
            if tgt.name != src.name {
                match bundle_functor(f, tgt) {
                    Ok(b) => items.push(Item::Bundle(b)),
                    Err(e) => return Outcome::fail(String::new(), format!("{}: {e}\n", tgt.name)),
                }
            }
            items.push(Item::Morphism(mapped));
            Ok(Document { items })
        }
        _ => unreachable!("selection is restricted to bundles and morphisms"),
    };
    match result {
        Ok(out) => Outcome::ok(emit(&out, format)),
        Err(e) => Outcome::fail(String::new(), format!("{}: {e}\n", item.name())),
    }
}

fn tower_check(item: &Item, format: Format) -> Outcome {
    let tower = match item {
        Item::Tower(t) => t.clone(),
        Item::Bundle(b) => {
            let report = match validate_bundle(b) {
                Ok(r) => r,
                Err(e) => return Outcome::fail(String::new(), format!("{}: {e}\n", b.name)),
            };
            if !report.passed() {
                return Outcome::fail(String::new(), report.to_string());
            }
            match tower_of(b) {
                Ok(t) => t,
                Err(e) => return Outcome::fail(String::new(), format!("{}: {e}\n", b.name)),
            }
        }
        _ => unreachable!("selection is restricted to towers and bundles"),
    };
    let result = match check_filterable_atlas(&tower) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(String::new(), format!("{}: {e}\n", tower.name)),
    };
    let passed = result.report.passed() && result.bundle.is_some();
    let text = match format {
        Format::Dsl => {
            let mut s = result.report.to_string();
            if let Some(b) = &result.bundle {
                s.push('\n');
                s.push_str(&print_document(&Document { items: vec![Item::Bundle(b.clone())] }));
            }
            s
        }
        Format::Machine => machine::render(&machine::filterability(&tower.name, &result)),
    };
    if passed {
        Outcome::ok(text)
    } else {
        Outcome::fail(text, String::new())
    }
}
