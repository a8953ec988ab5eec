//! The structured JSON rendering. Field names are frozen in `schema/machine-v1.json`.

use serde::Serialize;

use crate::bundle::{Atlas, BaseCoord, CoordinateFrame, CoordinateMap, Overlap, ValidationReport};
use crate::graded::GradedAnalysis;
use crate::tower::FilterabilityReport;

use super::printer;
use super::{Document, Item};

pub const SCHEMA: &str = "filtra-machine/1";

#[derive(Serialize)]
pub struct Base {
    pub name: String,
    pub vertical: bool,
}

#[derive(Serialize)]
pub struct Fiber {
    pub name: String,
    pub weight: Vec<u32>,
}

#[derive(Serialize)]
pub struct Rule {
    pub coordinate: String,
    pub expression: String,
}

#[derive(Serialize)]
pub struct Transition {
    pub source: String,
    pub target: String,
    pub rules: Vec<Rule>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum MachineItem {
    Bundle {
        name: String,
        axes: usize,
        degree: Vec<u32>,
        rank: Vec<usize>,
        base: Vec<Base>,
        fibers: Vec<Fiber>,
        charts: Vec<String>,
        overlaps: Vec<Vec<String>>,
        transitions: Vec<Transition>,
    },
    Morphism {
        name: String,
        source: String,
        target: String,
        rules: Vec<Rule>,
    },
    Tower {
        name: String,
        base: Vec<Base>,
        levels: Vec<Vec<String>>,
        charts: Vec<String>,
        overlaps: Vec<Vec<String>>,
        transitions: Vec<Transition>,
    },
    Filtration {
        name: String,
        vars: Vec<String>,
        bound: u32,
        levels: Vec<Vec<String>>,
    },
}

#[derive(Serialize)]
pub struct MachineFinding {
    pub check: String,
    pub location: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct MachineReport {
    pub subject: String,
    pub passed: bool,
    pub findings: Vec<MachineFinding>,
}

#[derive(Serialize)]
pub struct MachineGenerator {
    pub polynomial: String,
    pub weight: u32,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Document { items: Vec<MachineItem> },
    Check { passed: bool, reports: Vec<MachineReport> },
    Rank { subject: String, rank: Vec<usize> },
    Generators { subject: String, rank: Vec<usize>, generators: Vec<MachineGenerator> },
    Filterability { subject: String, passed: bool, report: MachineReport, bundle: Option<Box<MachineItem>> },
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    #[serde(flatten)]
    payload: &'a Payload,
}

pub fn render(payload: &Payload) -> String {
    let mut s = serde_json::to_string_pretty(&Envelope { schema: SCHEMA, payload }).expect("plain data serializes");
    s.push('\n');
    s
}

fn base(base: &[BaseCoord]) -> Vec<Base> {
    base.iter().map(|b| Base { name: b.name.clone(), vertical: b.vertical }).collect()
}

fn rules(map: &CoordinateMap, source: &CoordinateFrame, target: &CoordinateFrame) -> Vec<Rule> {
    let names = source.base_names();
    let mut out: Vec<Rule> = target
        .base()
        .iter()
        .zip(map.base_rules())
        .map(|(b, f)| Rule { coordinate: b.name.clone(), expression: printer::base_function(f, &names) })
        .collect();
    out.extend(
        target
            .fibers()
            .iter()
            .zip(map.fiber_rules())
            .map(|(c, p)| Rule { coordinate: c.name.clone(), expression: printer::weighted(p, source) }),
    );
    out
}

fn atlas(atlas: &Atlas, frame: &CoordinateFrame) -> (Vec<String>, Vec<Vec<String>>, Vec<Transition>) {
    let overlaps = atlas
        .declared_overlaps()
        .iter()
        .map(|o| match o {
            Overlap::Pair(a, b) => vec![a.clone(), b.clone()],
            Overlap::Triple(a, b, c) => vec![a.clone(), b.clone(), c.clone()],
        })
        .collect();
    let transitions = atlas
        .transitions()
        .map(|((u, v), m)| Transition { source: u.clone(), target: v.clone(), rules: rules(m, frame, frame) })
        .collect();
    (atlas.charts().to_vec(), overlaps, transitions)
}

pub fn item(i: &Item) -> MachineItem {
    match i {
        Item::Bundle(b) => {
            let f = &b.frame;
            let (charts, overlaps, transitions) = atlas(&b.atlas, f);
            MachineItem::Bundle {
                name: b.name.clone(),
                axes: f.axes(),
                degree: f.degree().0.clone(),
                rank: f.rank(),
                base: base(f.base()),
                fibers: f.fibers().iter().map(|c| Fiber { name: c.name.clone(), weight: c.weight.0.clone() }).collect(),
                charts,
                overlaps,
                transitions,
            }
        }
        Item::Morphism(m) => MachineItem::Morphism {
            name: m.name.clone(),
            source: m.source.clone(),
            target: m.target.clone(),
            rules: rules(&m.map, &m.source_frame, &m.target_frame),
        },
        Item::Tower(t) => {
            let frame = t.frame().expect("a parsed tower has a valid frame");
            let (charts, overlaps, transitions) = atlas(&t.atlas, &frame);
            MachineItem::Tower { name: t.name.clone(), base: base(&t.base), levels: t.levels.clone(), charts, overlaps, transitions }
        }
        Item::Filtration(p) => MachineItem::Filtration {
            name: p.name.clone(),
            vars: p.vars.clone(),
            bound: p.bound,
            levels: p
                .levels
                .iter()
                .map(|l| l.iter().map(|q| printer::base_polynomial(q, &p.vars)).collect())
                .collect(),
        },
    }
}

pub fn document(doc: &Document) -> Payload {
    Payload::Document { items: doc.items.iter().map(item).collect() }
}

pub fn report(r: &ValidationReport) -> MachineReport {
    MachineReport {
        subject: r.subject.clone(),
        passed: r.passed(),
        findings: r
            .findings
            .iter()
            .map(|f| MachineFinding {
                check: f.check.as_str().to_string(),
                location: f.location.clone(),
                passed: f.passed,
                detail: f.detail.clone(),
            })
            .collect(),
    }
}

pub fn rank(subject: &str, analysis: &GradedAnalysis) -> Payload {
    Payload::Rank { subject: subject.to_string(), rank: analysis.rank.clone() }
}

pub fn generators(subject: &str, vars: &[String], analysis: &GradedAnalysis) -> Payload {
    Payload::Generators {
        subject: subject.to_string(),
        rank: analysis.rank.clone(),
        generators: analysis
            .generators
            .iter()
            .map(|g| MachineGenerator { polynomial: printer::base_polynomial(&g.polynomial, vars), weight: g.weight })
            .collect(),
    }
}

pub fn filterability(subject: &str, f: &FilterabilityReport) -> Payload {
    Payload::Filterability {
        subject: subject.to_string(),
        passed: f.report.passed() && f.bundle.is_some(),
        report: report(&f.report),
        bundle: f.bundle.as_ref().map(|b| Box::new(item(&Item::Bundle(b.clone())))),
    }
}
