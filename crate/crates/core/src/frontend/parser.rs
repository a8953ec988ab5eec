use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::bundle::{
    Atlas, BaseCoord, BundleError, CoordinateFrame, CoordinateMap, FiberCoord, FilteredBundleSpec, FilteredMorphism,
    Overlap,
};
use crate::field::{BaseFunction, BasePolynomial, Rational};
use crate::graded::FiltrationPresentation;
use crate::tower::AffineTowerSpec;
use crate::weighted::{Weight, WeightedPolynomial};

use super::lexer::{tokenize, Tok, Token};
use super::{Document, Item, ParseError, ParseErrorKind};

pub const KEYWORDS: &[&str] = &[
    "bundle",
    "morphism",
    "tower",
    "filtration",
    "axes",
    "degree",
    "base",
    "vertical",
    "coord",
    "weight",
    "chart",
    "overlap",
    "transition",
    "level",
    "vars",
    "bound",
];

pub fn parse(text: &str) -> Result<Document, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, bundles: HashMap::new() };
    let mut doc = Document::default();
    let mut names = BTreeSet::new();
    while p.peek() != &Tok::Eof {
        let at = p.here();
        let item = match p.peek() {
            Tok::Ident(k) if k == "bundle" => Item::Bundle(p.bundle()?),
            Tok::Ident(k) if k == "morphism" => Item::Morphism(p.morphism()?),
            Tok::Ident(k) if k == "tower" => Item::Tower(p.tower()?),
            Tok::Ident(k) if k == "filtration" => Item::Filtration(p.filtration()?),
            _ => return Err(p.expected("`bundle`, `morphism`, `tower` or `filtration`")),
        };
        if !names.insert(item.name().to_string()) {
            return Err(at.error(ParseErrorKind::DuplicateObject(item.name().to_string())));
        }
        if let Item::Bundle(b) = &item {
            p.bundles.insert(b.name.clone(), b.clone());
        }
        doc.items.push(item);
    }
    Ok(doc)
}

#[derive(Clone, Copy)]
struct Pos {
    line: usize,
    col: usize,
}

impl Pos {
    fn error(self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, col: self.col, kind }
    }

    fn invalid(self, e: impl ToString) -> ParseError {
        self.error(ParseErrorKind::Invalid(e.to_string()))
    }
}

/// Symbols visible in an expression.
struct Scope<'a> {
    base: &'a [String],
    fibers: &'a [String],
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    bundles: HashMap<String, FilteredBundleSpec>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> Pos {
        let t = &self.toks[self.pos];
        Pos { line: t.line, col: t.col }
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn expected(&self, what: &str) -> ParseError {
        self.here().error(ParseErrorKind::Syntax { expected: what.to_string(), found: self.peek().describe() })
    }

    fn eat(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(&tok.describe()))
        }
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        if self.at_keyword(kw) {
            self.bump();
            Ok(())
        } else {
            Err(self.expected(&format!("`{kw}`")))
        }
    }

    fn at_name(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
    }

    fn name(&mut self) -> Result<String, ParseError> {
        if self.at_name() {
            match self.bump().tok {
                Tok::Ident(s) => Ok(s),
                _ => unreachable!(),
            }
        } else {
            Err(self.expected("a name"))
        }
    }

    fn names(&mut self) -> Result<Vec<String>, ParseError> {
        let mut out = Vec::new();
        while self.at_name() {
            out.push(self.name()?);
        }
        Ok(out)
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.expected("an integer")),
        }
    }

    fn small(&mut self) -> Result<u32, ParseError> {
        let at = self.here();
        let n = self.int()?;
        n.to_u32().ok_or_else(|| at.invalid(format!("integer {n} is too large")))
    }

    fn weight(&mut self) -> Result<Weight, ParseError> {
        self.eat(Tok::LParen)?;
        let mut w = vec![self.small()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            w.push(self.small()?);
        }
        self.eat(Tok::RParen)?;
        Ok(Weight(w))
    }

    /// `base NAME* [vertical NAME+]`
    fn base(&mut self) -> Result<Vec<BaseCoord>, ParseError> {
        self.keyword("base")?;
        let mut base: Vec<BaseCoord> =
            self.names()?.into_iter().map(|name| BaseCoord { name, vertical: false }).collect();
        if self.at_keyword("vertical") {
            self.bump();
            if !self.at_name() {
                return Err(self.expected("a base coordinate"));
            }
            while self.at_name() {
                let at = self.here();
                let n = self.name()?;
                match base.iter_mut().find(|b| b.name == n) {
                    Some(b) => b.vertical = true,
                    None => return Err(at.error(ParseErrorKind::UndeclaredSymbol(n))),
                }
            }
        }
        Ok(base)
    }

    /// `(chart NAME)+ (overlap A B [C])*`
    fn charts(&mut self) -> Result<Atlas, ParseError> {
        let mut charts = Vec::new();
        let at = self.here();
        self.keyword("chart")?;
        charts.push(self.name()?);
        while self.at_keyword("chart") {
            self.bump();
            charts.push(self.name()?);
        }
        let mut atlas = Atlas::new(charts).map_err(|e| at.invalid(e))?;
        while self.at_keyword("overlap") {
            let at = self.here();
            self.bump();
            let a = self.name()?;
            let b = self.name()?;
            let o = if self.at_name() { Overlap::Triple(a, b, self.name()?) } else { Overlap::Pair(a, b) };
            atlas.add_overlap(o).map_err(|e| at.invalid(e))?;
        }
        Ok(atlas)
    }

    /// `(transition U -> V { rules })*`
    fn transitions(&mut self, frame: &CoordinateFrame, atlas: &mut Atlas) -> Result<(), ParseError> {
        while self.at_keyword("transition") {
            let at = self.here();
            self.bump();
            let u = self.name()?;
            self.eat(Tok::Arrow)?;
            let v = self.name()?;
            let map = self.rules(frame, frame)?;
            atlas.add_transition(&u, &v, map).map_err(|e| at.invalid(e))?;
        }
        Ok(())
    }

    fn bundle(&mut self) -> Result<FilteredBundleSpec, ParseError> {
        let at = self.here();
        self.keyword("bundle")?;
        let name = self.name()?;
        self.keyword("axes")?;
        let axes = self.small()? as usize;
        self.keyword("degree")?;
        let degree = self.weight()?;
        let base = self.base()?;
        let mut fibers = Vec::new();
        while self.at_keyword("coord") {
            self.bump();
            let name = self.name()?;
            self.keyword("weight")?;
            fibers.push(FiberCoord { name, weight: self.weight()? });
        }
        let frame = CoordinateFrame::with_degree(axes, degree, base, fibers).map_err(|e| at.invalid(e))?;
        let mut atlas = self.charts()?;
        self.transitions(&frame, &mut atlas)?;
        FilteredBundleSpec::new(name, frame, atlas).map_err(|e| at.invalid(e))
    }

    fn morphism(&mut self) -> Result<FilteredMorphism, ParseError> {
        let at = self.here();
        self.keyword("morphism")?;
        let name = self.name()?;
        self.eat(Tok::Colon)?;
        let src_at = self.here();
        let src = self.name()?;
        self.eat(Tok::Arrow)?;
        let tgt_at = self.here();
        let tgt = self.name()?;
        let source = self.bundles.get(&src).cloned().ok_or_else(|| src_at.error(ParseErrorKind::UnknownBundle(src)))?;
        let target = self.bundles.get(&tgt).cloned().ok_or_else(|| tgt_at.error(ParseErrorKind::UnknownBundle(tgt)))?;
        let map = self.rules(&source.frame, &target.frame)?;
        FilteredMorphism::new(name, &source, &target, map).map_err(|e: BundleError| at.invalid(e))
    }

    fn tower(&mut self) -> Result<AffineTowerSpec, ParseError> {
        let at = self.here();
        self.keyword("tower")?;
        let name = self.name()?;
        let base = self.base()?;
        let mut levels = Vec::new();
        while self.at_keyword("level") {
            self.bump();
            levels.push(self.names()?);
        }
        let mut atlas = self.charts()?;
        let shell = AffineTowerSpec { name: name.clone(), base: base.clone(), levels: levels.clone(), atlas: atlas.clone() };
        let frame = shell.frame().map_err(|e| at.invalid(e))?;
        self.transitions(&frame, &mut atlas)?;
        AffineTowerSpec::new(name, base, levels, atlas).map_err(|e| at.invalid(e))
    }

    fn filtration(&mut self) -> Result<FiltrationPresentation, ParseError> {
        self.keyword("filtration")?;
        let name = self.name()?;
        self.keyword("vars")?;
        let vars = self.names()?;
        self.keyword("bound")?;
        let bound = self.small()?;
        let mut levels = Vec::new();
        let no_fibers: Vec<String> = Vec::new();
        while self.at_keyword("level") {
            self.bump();
            let at = self.here();
            let i = self.small()?;
            if i as usize != levels.len() {
                return Err(at.invalid(format!("expected level {}, found level {i}", levels.len())));
            }
            self.eat(Tok::LBrace)?;
            let mut level = Vec::new();
            if *self.peek() != Tok::RBrace {
                loop {
                    let at = self.here();
                    let scope = Scope { base: &vars, fibers: &no_fibers };
                    let e = self.expr(&scope)?;
                    let f = e.as_base().expect("no fiber coordinates in scope");
                    if !f.is_polynomial() {
                        return Err(at.error(ParseErrorKind::NotPolynomial));
                    }
                    level.push(f.numerator().clone());
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
            }
            self.eat(Tok::RBrace)?;
            levels.push(level);
        }
        Ok(FiltrationPresentation { name, vars, bound, levels })
    }

    /// `{ (NAME ' = expr ;)* }`: one rule per coordinate of `target`, written in the
    /// coordinates of `source`.
    fn rules(&mut self, source: &CoordinateFrame, target: &CoordinateFrame) -> Result<CoordinateMap, ParseError> {
        self.eat(Tok::LBrace)?;
        let base_names = source.base_names();
        let fiber_names = source.fiber_names();
        let scope = Scope { base: &base_names, fibers: &fiber_names };
        let mut base_rules: Vec<Option<BaseFunction>> = vec![None; target.nbase()];
        let mut fiber_rules: Vec<Option<WeightedPolynomial>> = vec![None; target.nfiber()];
        while *self.peek() != Tok::RBrace {
            let at = self.here();
            let lhs = self.name()?;
            self.eat(Tok::Prime)?;
            self.eat(Tok::Eq)?;
            let rhs = self.expr(&scope)?;
            self.eat(Tok::Semi)?;
            if let Some(a) = target.base_index(&lhs) {
                if base_rules[a].is_some() {
                    return Err(at.error(ParseErrorKind::DuplicateRule(lhs)));
                }
                let f = rhs.as_base().ok_or_else(|| at.error(ParseErrorKind::BaseRuleDependsOnFiber(lhs.clone())))?;
                base_rules[a] = Some(f);
            } else if let Some(i) = target.fiber_index(&lhs) {
                if fiber_rules[i].is_some() {
                    return Err(at.error(ParseErrorKind::DuplicateRule(lhs)));
                }
                fiber_rules[i] = Some(rhs);
            } else {
                return Err(at.error(ParseErrorKind::UndeclaredSymbol(lhs)));
            }
        }
        let close = self.here();
        self.bump();
        let missing = |name: &str| close.error(ParseErrorKind::MissingRule(name.to_string()));
        let base_rules = base_rules
            .into_iter()
            .zip(target.base())
            .map(|(r, c)| r.ok_or_else(|| missing(&c.name)))
            .collect::<Result<Vec<_>, _>>()?;
        let fiber_rules = fiber_rules
            .into_iter()
            .zip(target.fibers())
            .map(|(r, c)| r.ok_or_else(|| missing(&c.name)))
            .collect::<Result<Vec<_>, _>>()?;
        CoordinateMap::new(source.nbase(), source.nfiber(), base_rules, fiber_rules).map_err(|e| close.invalid(e))
    }

    fn expr(&mut self, scope: &Scope) -> Result<WeightedPolynomial, ParseError> {
        let mut acc = self.term(scope)?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term(scope)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term(scope)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self, scope: &Scope) -> Result<WeightedPolynomial, ParseError> {
        let mut acc = self.unary(scope)?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.unary(scope)?;
                }
                Tok::Slash => {
                    let at = self.here();
                    self.bump();
                    let d = self.unary(scope)?;
                    let d = d.as_base().ok_or_else(|| at.error(ParseErrorKind::FiberDenominator))?;
                    let inv = d.recip().map_err(|_| at.error(ParseErrorKind::DivisionByZero))?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self, scope: &Scope) -> Result<WeightedPolynomial, ParseError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            let v = self.unary(scope)?;
            return Ok(-&v);
        }
        let base = self.atom(scope)?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = self.small()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self, scope: &Scope) -> Result<WeightedPolynomial, ParseError> {
        let (nb, nf) = (scope.base.len(), scope.fibers.len());
        let at = self.here();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(WeightedPolynomial::rational(nb, nf, Rational::from_integer(n)))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr(scope)?;
                self.eat(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(s) => {
                self.bump();
                if let Some(a) = scope.base.iter().position(|b| *b == s) {
                    Ok(WeightedPolynomial::base_var(nb, nf, a))
                } else if let Some(i) = scope.fibers.iter().position(|f| *f == s) {
                    Ok(WeightedPolynomial::fiber_var(nb, nf, i))
                } else {
                    Err(at.error(ParseErrorKind::UndeclaredSymbol(s)))
                }
            }
            _ => Err(self.expected("an expression")),
        }
    }
}

/// Parses a single expression over the given coordinates, for tests and tools.
pub fn parse_expression(text: &str, base: &[String], fibers: &[String]) -> Result<WeightedPolynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, bundles: HashMap::new() };
    let e = p.expr(&Scope { base, fibers })?;
    if *p.peek() != Tok::Eof {
        return Err(p.expected("end of expression"));
    }
    Ok(e)
}

/// Parses a polynomial in the given variables.
pub fn parse_polynomial(text: &str, vars: &[String]) -> Result<BasePolynomial, ParseError> {
    let e = parse_expression(text, vars, &[])?;
    let f = e.as_base().expect("no fiber coordinates in scope");
    if !f.is_polynomial() {
        return Err(ParseError { line: 1, col: 1, kind: ParseErrorKind::NotPolynomial });
    }
    Ok(f.numerator().clone())
}
