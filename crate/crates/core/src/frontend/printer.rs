//! Rendering of values and documents in the DSL syntax.
//!
//! Every string produced here parses back to the same canonical value.

use num_traits::One;

use crate::bundle::{Atlas, BaseCoord, CoordinateFrame, CoordinateMap, FilteredBundleSpec, FilteredMorphism, Overlap};
use crate::field::{BaseFunction, BaseMonomial, BasePolynomial, Rational};
use crate::graded::FiltrationPresentation;
use crate::tower::AffineTowerSpec;
use crate::weighted::{FiberMonomial, WeightedPolynomial};

use super::{Document, Item};

pub fn rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn power_product(exps: &[u32], names: &[String]) -> String {
    let mut parts = Vec::new();
    for (e, name) in exps.iter().zip(names) {
        match e {
            0 => {}
            1 => parts.push(name.clone()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

fn scaled(c: &Rational, product: &str) -> String {
    if product.is_empty() {
        rational(c)
    } else if c.is_one() {
        product.to_string()
    } else if (-c).is_one() {
        format!("-{product}")
    } else {
        format!("{}*{product}", rational(c))
    }
}

/// Joins signed terms with ` + ` / ` - `.
fn join_terms(terms: Vec<String>) -> String {
    let mut out = String::new();
    for (k, t) in terms.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

pub fn base_monomial(m: &BaseMonomial, names: &[String]) -> String {
    power_product(&m.0, names)
}

/// Terms in descending graded lexicographic order.
pub fn base_polynomial(p: &BasePolynomial, names: &[String]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    join_terms(p.terms().rev().map(|(m, c)| scaled(c, &base_monomial(m, names))).collect())
}

fn is_bare_power(p: &BasePolynomial) -> bool {
    match p.leading_term() {
        Some((m, c)) if p.len() == 1 && c.is_one() => m.0.iter().filter(|&&e| e > 0).count() == 1,
        _ => false,
    }
}

pub fn base_function(f: &BaseFunction, names: &[String]) -> String {
    let num = base_polynomial(f.numerator(), names);
    if f.is_polynomial() {
        return num;
    }
    let den = base_polynomial(f.denominator(), names);
    if let Some(c) = f.numerator().constant_value().filter(|c| !c.is_integer()) {
        let den = if is_bare_power(f.denominator()) { den } else { format!("({den})") };
        return format!("{}/({}*{den})", c.numer(), c.denom());
    }
    let num = if f.numerator().len() > 1 { format!("({num})") } else { num };
    if is_bare_power(f.denominator()) {
        format!("{num}/{den}")
    } else {
        format!("{num}/({den})")
    }
}

/// One term `c(x)·X^I` of a weighted polynomial.
pub fn weighted_term(m: &FiberMonomial, c: &BaseFunction, frame: &CoordinateFrame) -> String {
    weighted_term_named(m, c, &frame.base_names(), &frame.fiber_names())
}

fn weighted_term_named(m: &FiberMonomial, c: &BaseFunction, base: &[String], fibers: &[String]) -> String {
    let mono = power_product(&m.0, fibers);
    if mono.is_empty() {
        return base_function(c, base);
    }
    if c.is_polynomial() && c.numerator().len() == 1 {
        let (bm, bc) = c.numerator().leading_term().expect("nonzero coefficient");
        let bmono = base_monomial(bm, base);
        let product = if bmono.is_empty() { mono } else { format!("{bmono}*{mono}") };
        return scaled(bc, &product);
    }
    if c.is_polynomial() {
        return format!("({})*{mono}", base_function(c, base));
    }
    format!("{}*{mono}", base_function(c, base))
}

/// Terms ordered by total weight, heaviest first, then by exponents.
pub fn weighted(p: &WeightedPolynomial, frame: &CoordinateFrame) -> String {
    weighted_named(p, &frame.base_names(), &frame.fiber_names(), &frame.weights().iter().map(|w| w.total()).collect::<Vec<_>>())
}

pub fn weighted_named(p: &WeightedPolynomial, base: &[String], fibers: &[String], totals: &[u32]) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(&FiberMonomial, &BaseFunction)> = p.terms().collect();
    let total = |m: &FiberMonomial| -> u32 { m.0.iter().zip(totals).map(|(e, w)| e * w).sum() };
    terms.sort_by(|a, b| total(b.0).cmp(&total(a.0)).then_with(|| b.0.cmp(a.0)));
    join_terms(terms.into_iter().map(|(m, c)| weighted_term_named(m, c, base, fibers)).collect())
}

fn rules_block(out: &mut String, map: &CoordinateMap, source: &CoordinateFrame, target: &CoordinateFrame, indent: &str) {
    let names = source.base_names();
    out.push_str(" {\n");
    for (b, f) in target.base().iter().zip(map.base_rules()) {
        out.push_str(&format!("{indent}  {}' = {};\n", b.name, base_function(f, &names)));
    }
    for (c, p) in target.fibers().iter().zip(map.fiber_rules()) {
        out.push_str(&format!("{indent}  {}' = {};\n", c.name, weighted(p, source)));
    }
    out.push_str(indent);
    out.push_str("}\n");
}

fn base_line(out: &mut String, base: &[BaseCoord]) {
    out.push_str("  base");
    for b in base {
        out.push(' ');
        out.push_str(&b.name);
    }
    out.push('\n');
    if base.iter().any(|b| b.vertical) {
        out.push_str("  vertical");
        for b in base.iter().filter(|b| b.vertical) {
            out.push(' ');
            out.push_str(&b.name);
        }
        out.push('\n');
    }
}

fn atlas_lines(out: &mut String, atlas: &Atlas, frame: &CoordinateFrame) {
    for c in atlas.charts() {
        out.push_str(&format!("  chart {c}\n"));
    }
    for o in atlas.declared_overlaps() {
        match o {
            Overlap::Pair(a, b) => out.push_str(&format!("  overlap {a} {b}\n")),
            Overlap::Triple(a, b, c) => out.push_str(&format!("  overlap {a} {b} {c}\n")),
        }
    }
    for ((u, v), m) in atlas.transitions() {
        out.push_str(&format!("  transition {u} -> {v}"));
        rules_block(out, m, frame, frame, "  ");
    }
}

pub fn bundle(b: &FilteredBundleSpec) -> String {
    let f = &b.frame;
    let mut out = format!("bundle {} axes {} degree {}\n", b.name, f.axes(), f.degree());
    base_line(&mut out, f.base());
    for c in f.fibers() {
        out.push_str(&format!("  coord {} weight {}\n", c.name, c.weight));
    }
    atlas_lines(&mut out, &b.atlas, f);
    out
}

pub fn morphism(m: &FilteredMorphism) -> String {
    let mut out = format!("morphism {} : {} -> {}", m.name, m.source, m.target);
    rules_block(&mut out, &m.map, &m.source_frame, &m.target_frame, "");
    out
}

pub fn tower(t: &AffineTowerSpec) -> String {
    let mut out = format!("tower {}\n", t.name);
    base_line(&mut out, &t.base);
    for level in &t.levels {
        out.push_str("  level");
        for n in level {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    let frame = t.frame().expect("a parsed tower has a valid frame");
    atlas_lines(&mut out, &t.atlas, &frame);
    out
}

pub fn filtration(p: &FiltrationPresentation) -> String {
    let mut out = format!("filtration {} vars {} bound {}\n", p.name, p.vars.join(" "), p.bound);
    for (i, level) in p.levels.iter().enumerate() {
        let polys: Vec<String> = level.iter().map(|q| base_polynomial(q, &p.vars)).collect();
        out.push_str(&format!("  level {i} {{ {} }}\n", polys.join(", ")));
    }
    out
}

pub fn item(i: &Item) -> String {
    match i {
        Item::Bundle(b) => bundle(b),
        Item::Morphism(m) => morphism(m),
        Item::Tower(t) => tower(t),
        Item::Filtration(p) => filtration(p),
    }
}

/// Blocks separated by blank lines; parses back to an equal document.
pub fn print_document(doc: &Document) -> String {
    doc.items.iter().map(item).collect::<Vec<_>>().join("\n")
}
