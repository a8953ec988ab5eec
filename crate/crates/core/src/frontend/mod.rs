//! The document language: lexer, parser, printers and the command-line driver.
//!
//! A document is a sequence of `bundle`, `morphism`, `tower` and `filtration`
//! blocks. Comments start with `#`. A bundle reads
//!
//! ```text
//! bundle E axes 1 degree (2)
//!   base x
//!   coord Y weight (1)
//!   coord Z weight (2)
//!   chart U chart V
//!   transition U -> V { x' = x; Y' = x*Y + 1; Z' = x*Z + 1/2*Y^2; }
//! ```

pub mod cli;
pub mod lexer;
pub mod machine;
pub mod parser;
pub mod printer;

use std::fmt;

use crate::bundle::{FilteredBundleSpec, FilteredMorphism};
use crate::graded::FiltrationPresentation;
use crate::tower::AffineTowerSpec;

pub use parser::parse;
pub use printer::print_document;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item {
    Bundle(FilteredBundleSpec),
    Morphism(FilteredMorphism),
    Tower(AffineTowerSpec),
    Filtration(FiltrationPresentation),
}

impl Item {
    pub fn name(&self) -> &str {
        match self {
            Item::Bundle(b) => &b.name,
            Item::Morphism(m) => &m.name,
            Item::Tower(t) => &t.name,
            Item::Filtration(f) => &f.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Item::Bundle(_) => "bundle",
            Item::Morphism(_) => "morphism",
            Item::Tower(_) => "tower",
            Item::Filtration(_) => "filtration",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub items: Vec<Item>,
}

impl Document {
    pub fn get(&self, name: &str) -> Option<&Item> {
        self.items.iter().find(|i| i.name() == name)
    }

    pub fn bundle(&self, name: &str) -> Option<&FilteredBundleSpec> {
        match self.get(name) {
            Some(Item::Bundle(b)) => Some(b),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    Syntax { expected: String, found: String },
    UndeclaredSymbol(String),
    FiberDenominator,
    DivisionByZero,
    NotPolynomial,
    MissingRule(String),
    DuplicateRule(String),
    BaseRuleDependsOnFiber(String),
    DuplicateObject(String),
    UnknownBundle(String),
    Invalid(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::Syntax { expected, found } => write!(f, "expected {expected}, found {found}"),
            ParseErrorKind::UndeclaredSymbol(s) => write!(f, "undeclared symbol `{s}`"),
            ParseErrorKind::FiberDenominator => write!(f, "division by an expression involving fiber coordinates"),
            ParseErrorKind::DivisionByZero => write!(f, "division by zero"),
            ParseErrorKind::NotPolynomial => write!(f, "expected a polynomial"),
            ParseErrorKind::MissingRule(s) => write!(f, "no rule for `{s}`"),
            ParseErrorKind::DuplicateRule(s) => write!(f, "rule for `{s}` given twice"),
            ParseErrorKind::BaseRuleDependsOnFiber(s) => write!(f, "rule for base coordinate `{s}` involves fiber coordinates"),
            ParseErrorKind::DuplicateObject(s) => write!(f, "object `{s}` declared twice"),
            ParseErrorKind::UnknownBundle(s) => write!(f, "unknown bundle `{s}`"),
            ParseErrorKind::Invalid(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}
