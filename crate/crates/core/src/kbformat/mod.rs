//! The line-oriented `.tmln` knowledge-base format.
//!
//! ```text
//! # comment
//! sort Concept
//! timeline 1300 1400
//! const NO : Concept
//! pred Person(Concept)
//! fact Person(NO, 1320, 1382) : 1
//! rule R2 : 0.8 { Philosopher(x, t1, t1') & LivePeriod(x, MA, t2, t2')
//!                 => !PeasantFamily(x, TMIN, TMAX) }
//! ```
//!
//! Lowercase identifiers are variables; their sort comes from the argument
//! position they occupy. The last two arguments of every literal are its
//! time bounds.

mod lexer;

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use serde::Serialize;

use crate::kernel::{validate_signature, Literal, Rule, Signature, Term, TimePoint, TIME_SORT};
use crate::network::Tmln;
use crate::temporal::Timeline;
use crate::weight::Weight;
use lexer::{lex, Tok, Token};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SourceSpan {
    /// 1-based.
    pub line: usize,
    /// 1-based, in characters.
    pub column: usize,
    /// Byte offsets.
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    fn join(self, other: SourceSpan) -> SourceSpan {
        SourceSpan { end: other.end.max(self.end), ..self }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub span: SourceSpan,
    pub message: String,
    pub expected: Option<String>,
}

impl ParseDiagnostic {
    fn error(span: SourceSpan, message: impl Into<String>, expected: Option<&str>) -> Self {
        ParseDiagnostic { severity: Severity::Error, span, message: message.into(), expected: expected.map(str::to_string) }
    }

    fn warning(span: SourceSpan, message: impl Into<String>) -> Self {
        ParseDiagnostic { severity: Severity::Warning, span, message: message.into(), expected: None }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let level = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}: {level}: {}", self.span, self.message)?;
        match &self.expected {
            Some(e) if !self.message.starts_with("expected ") => write!(f, " (expected {e})")?,
            _ => {}
        }
        Ok(())
    }
}

/// Everything the parser reports. `tmln` is present only when no error was
/// found; warnings never block it.
#[derive(Clone, Debug)]
pub struct ParseOutcome {
    pub tmln: Option<Tmln>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

const KEYWORDS: [&str; 6] = ["sort", "timeline", "const", "pred", "fact", "rule"];

#[derive(Clone, Debug)]
enum RawTerm {
    Name(String),
    Var(String),
    Int(i64),
    Min,
    Max,
}

#[derive(Clone, Debug)]
struct RawLiteral {
    positive: bool,
    predicate: String,
    predicate_span: SourceSpan,
    args: Vec<(RawTerm, SourceSpan)>,
    span: SourceSpan,
}

#[derive(Clone, Debug)]
enum Stmt {
    Sort { name: String, span: SourceSpan },
    Timeline { lower: i64, upper: i64, span: SourceSpan },
    Const { name: String, sort: String, span: SourceSpan },
    Pred { name: String, sorts: Vec<(String, SourceSpan)>, span: SourceSpan },
    Fact { literal: RawLiteral, weight: (String, SourceSpan), span: SourceSpan },
    Rule { id: String, weight: (String, SourceSpan), premises: Vec<RawLiteral>, conclusion: RawLiteral, span: SourceSpan },
}

type Parse<T> = std::result::Result<T, ParseDiagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Inside a rule body line breaks are insignificant.
    in_block: bool,
}

impl Parser {
    fn skip_block_newlines(&mut self) {
        while self.in_block && self.toks[self.pos].tok == Tok::Newline {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> &Token {
        self.skip_block_newlines();
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        self.skip_block_newlines();
        let t = self.toks[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn unexpected(t: &Token, expected: &str) -> ParseDiagnostic {
        ParseDiagnostic::error(t.span, format!("expected {expected}, found {}", t.tok.describe()), Some(expected))
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Parse<Token> {
        let t = self.next();
        if t.tok == tok {
            Ok(t)
        } else {
            Err(Self::unexpected(&t, expected))
        }
    }

    fn ident(&mut self, expected: &str) -> Parse<(String, SourceSpan)> {
        let t = self.next();
        match t.tok {
            Tok::Ident(s) => Ok((s, t.span)),
            _ => Err(Self::unexpected(&t, expected)),
        }
    }

    fn capitalised(&mut self, expected: &str) -> Parse<(String, SourceSpan)> {
        let (name, span) = self.ident(expected)?;
        if name.starts_with(|c: char| c.is_ascii_uppercase()) && !name.contains('\'') {
            Ok((name, span))
        } else {
            Err(ParseDiagnostic::error(span, format!("`{name}` must start with an uppercase letter"), Some(expected)))
        }
    }

    fn number(&mut self, expected: &str) -> Parse<(String, SourceSpan)> {
        let t = self.next();
        match t.tok {
            Tok::Number(s) => Ok((s, t.span)),
            _ => Err(Self::unexpected(&t, expected)),
        }
    }

    fn integer(&mut self, expected: &str) -> Parse<(i64, SourceSpan)> {
        let (text, span) = self.number(expected)?;
        text.parse().map(|v| (v, span)).map_err(|_| ParseDiagnostic::error(span, format!("`{text}` is not an integer"), Some(expected)))
    }

    fn end_of_statement(&mut self) -> Parse<()> {
        let t = self.next();
        match t.tok {
            Tok::Newline | Tok::Eof => Ok(()),
            _ => Err(Self::unexpected(&t, "end of line")),
        }
    }

    /// Skips to the start of the next line that begins a statement.
    fn recover(&mut self) {
        self.in_block = false;
        loop {
            match &self.toks[self.pos].tok {
                Tok::Eof => return,
                Tok::Newline => {
                    self.pos += 1;
                    while self.toks[self.pos].tok == Tok::Newline {
                        self.pos += 1;
                    }
                    match &self.toks[self.pos].tok {
                        Tok::Ident(k) if KEYWORDS.contains(&k.as_str()) => return,
                        Tok::Eof => return,
                        _ => {}
                    }
                }
                _ => self.pos += 1,
            }
        }
    }

    fn term(&mut self) -> Parse<(RawTerm, SourceSpan)> {
        let t = self.next();
        let term = match &t.tok {
            Tok::Ident(s) if s == "TMIN" => RawTerm::Min,
            Tok::Ident(s) if s == "TMAX" => RawTerm::Max,
            Tok::Ident(s) if s.starts_with(|c: char| c.is_ascii_lowercase()) => RawTerm::Var(s.clone()),
            Tok::Ident(s) if !s.contains('\'') => RawTerm::Name(s.clone()),
            Tok::Number(s) => RawTerm::Int(
                s.parse().map_err(|_| ParseDiagnostic::error(t.span, format!("`{s}` is not an integer time point"), Some("a term")))?,
            ),
            _ => return Err(Self::unexpected(&t, "a constant, variable, time point, TMIN or TMAX")),
        };
        Ok((term, t.span))
    }

    fn literal(&mut self) -> Parse<RawLiteral> {
        let first = self.peek().span;
        let positive = if self.peek().tok == Tok::Bang {
            self.next();
            false
        } else {
            true
        };
        let (predicate, predicate_span) = self.capitalised("a predicate name")?;
        self.expect(Tok::LParen, "`(`")?;
        let mut args = vec![self.term()?];
        loop {
            let t = self.next();
            match t.tok {
                Tok::Comma => args.push(self.term()?),
                Tok::RParen => {
                    return Ok(RawLiteral { positive, predicate, predicate_span, args, span: first.join(t.span) });
                }
                _ => return Err(Self::unexpected(&t, "`,` or `)`")),
            }
        }
    }

    fn statement(&mut self, keyword: &str, kw_span: SourceSpan) -> Parse<Stmt> {
        let stmt = match keyword {
            "sort" => {
                let (name, span) = self.capitalised("a sort name")?;
                Stmt::Sort { name, span: kw_span.join(span) }
            }
            "timeline" => {
                let (lower, _) = self.integer("the first timeline bound")?;
                let (upper, span) = self.integer("the last timeline bound")?;
                Stmt::Timeline { lower, upper, span: kw_span.join(span) }
            }
            "const" => {
                let (name, _) = self.capitalised("a constant name")?;
                self.expect(Tok::Colon, "`:`")?;
                let (sort, span) = self.capitalised("a sort name")?;
                Stmt::Const { name, sort, span: kw_span.join(span) }
            }
            "pred" => {
                let (name, _) = self.capitalised("a predicate name")?;
                self.expect(Tok::LParen, "`(`")?;
                let mut sorts = Vec::new();
                if self.peek().tok == Tok::RParen {
                    let t = self.next();
                    return Ok(Stmt::Pred { name, sorts, span: kw_span.join(t.span) });
                }
                loop {
                    sorts.push(self.capitalised("a sort name")?);
                    let t = self.next();
                    match t.tok {
                        Tok::Comma => {}
                        Tok::RParen => break Stmt::Pred { name, sorts, span: kw_span.join(t.span) },
                        _ => return Err(Self::unexpected(&t, "`,` or `)`")),
                    }
                }
            }
            "fact" => {
                let literal = self.literal()?;
                self.expect(Tok::Colon, "`:`")?;
                let weight = self.number("a weight")?;
                Stmt::Fact { span: kw_span.join(weight.1), literal, weight }
            }
            "rule" => {
                let (id, _) = self.ident("a rule identifier")?;
                self.expect(Tok::Colon, "`:`")?;
                let weight = self.number("a weight")?;
                self.expect(Tok::LBrace, "`{`")?;
                self.in_block = true;
                let mut premises = vec![self.literal()?];
                loop {
                    let t = self.next();
                    match t.tok {
                        Tok::Amp => premises.push(self.literal()?),
                        Tok::Arrow => break,
                        _ => return Err(Self::unexpected(&t, "`&` or `=>`")),
                    }
                }
                let conclusion = self.literal()?;
                let close = self.expect(Tok::RBrace, "`}`")?;
                self.in_block = false;
                Stmt::Rule { id, weight, premises, conclusion, span: kw_span.join(close.span) }
            }
            _ => unreachable!("keywords are checked by the caller"),
        };
        Ok(stmt)
    }

    fn document(&mut self, diagnostics: &mut Vec<ParseDiagnostic>) -> Vec<Stmt> {
        let mut stmts = Vec::new();
        loop {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
            let t = self.next();
            let result = match &t.tok {
                Tok::Eof => return stmts,
                Tok::Ident(k) if KEYWORDS.contains(&k.as_str()) => {
                    let k = k.clone();
                    self.statement(&k, t.span).and_then(|s| self.end_of_statement().map(|()| s))
                }
                _ => Err(Self::unexpected(&t, "one of sort, timeline, const, pred, fact, rule")),
            };
            match result {
                Ok(s) => stmts.push(s),
                Err(d) => {
                    diagnostics.push(d);
                    self.recover();
                }
            }
        }
    }
}

/// Turns parsed literals into checked kernel literals.
struct Builder<'a> {
    sig: &'a Signature,
    diagnostics: &'a mut Vec<ParseDiagnostic>,
}

impl Builder<'_> {
    fn literal(&mut self, raw: &RawLiteral, var_sorts: &mut BTreeMap<String, String>) -> Option<Literal> {
        let Some(arg_sorts) = self.sig.predicate_args(&raw.predicate) else {
            self.diagnostics.push(ParseDiagnostic::error(
                raw.predicate_span,
                format!("unknown predicate `{}`", raw.predicate),
                Some("a declared predicate"),
            ));
            return None;
        };
        if raw.args.len() != arg_sorts.len() + 2 {
            self.diagnostics.push(ParseDiagnostic::error(
                raw.span,
                format!(
                    "`{}` takes {} arguments including the two time bounds, found {}",
                    raw.predicate,
                    arg_sorts.len() + 2,
                    raw.args.len()
                ),
                None,
            ));
            return None;
        }
        let mut ok = true;
        let mut terms = Vec::with_capacity(raw.args.len());
        for (i, (term, span)) in raw.args.iter().enumerate() {
            let sort = arg_sorts.get(i).map(String::as_str).unwrap_or(TIME_SORT);
            let built = match (term, sort == TIME_SORT) {
                (RawTerm::Var(v), _) => {
                    let known = var_sorts.entry(v.clone()).or_insert_with(|| sort.to_string());
                    if known != sort {
                        self.diagnostics.push(ParseDiagnostic::error(
                            *span,
                            format!("variable `{v}` used with sort {sort} and {known}"),
                            None,
                        ));
                        ok = false;
                    }
                    Some(Term::var(v.clone(), sort))
                }
                (RawTerm::Int(t), true) => Some(Term::at(*t)),
                (RawTerm::Min, true) => Some(Term::Time(TimePoint::Min)),
                (RawTerm::Max, true) => Some(Term::Time(TimePoint::Max)),
                (RawTerm::Name(c), false) => match self.sig.constant_sort(c) {
                    Some(s) if s == sort => Some(Term::constant(c.clone())),
                    Some(s) => {
                        self.diagnostics.push(ParseDiagnostic::error(
                            *span,
                            format!("constant `{c}` has sort {s}, expected {sort}"),
                            Some(sort),
                        ));
                        None
                    }
                    None => {
                        self.diagnostics.push(ParseDiagnostic::error(
                            *span,
                            format!("unknown constant `{c}`"),
                            Some("a declared constant"),
                        ));
                        None
                    }
                },
                (_, true) => {
                    self.diagnostics.push(ParseDiagnostic::error(
                        *span,
                        "expected a time point",
                        Some("an integer, TMIN, TMAX or a variable"),
                    ));
                    None
                }
                (_, false) => {
                    self.diagnostics.push(ParseDiagnostic::error(
                        *span,
                        format!("expected a term of sort {sort}"),
                        Some("a constant or a variable"),
                    ));
                    None
                }
            };
            match built {
                Some(t) => terms.push(t),
                None => ok = false,
            }
        }
        if !ok {
            return None;
        }
        let upper = terms.pop().expect("arity checked");
        let lower = terms.pop().expect("arity checked");
        Some(Literal::new(raw.predicate.clone(), terms, lower, upper).with_polarity(raw.positive))
    }

    fn weight(&mut self, (text, span): &(String, SourceSpan)) -> Option<Weight> {
        match text.parse::<Weight>() {
            Ok(w) => Some(w),
            Err(e) => {
                self.diagnostics.push(ParseDiagnostic::error(*span, e.to_string(), Some("a decimal weight in [0,1]")));
                None
            }
        }
    }
}

fn document_start() -> SourceSpan {
    SourceSpan { line: 1, column: 1, start: 0, end: 0 }
}

/// Parses and validates a document, collecting every diagnostic.
pub fn parse_document(text: &str) -> ParseOutcome {
    let mut diagnostics = Vec::new();
    let toks = lex(text, &mut diagnostics);
    let stmts = Parser { toks, pos: 0, in_block: false }.document(&mut diagnostics);

    let mut sig = Signature::new();
    let mut timeline: Option<Timeline> = None;
    let mut decl_spans: BTreeMap<String, SourceSpan> = BTreeMap::new();
    for stmt in &stmts {
        match stmt {
            Stmt::Sort { name, span } => {
                if name == TIME_SORT {
                    diagnostics.push(ParseDiagnostic::error(*span, "the temporal sort is implicit and cannot be declared", None));
                } else if !sig.add_sort(name.clone()) {
                    diagnostics.push(ParseDiagnostic::warning(*span, format!("sort `{name}` declared twice")));
                }
            }
            Stmt::Timeline { lower, upper, span } => {
                if timeline.is_some() {
                    diagnostics.push(ParseDiagnostic::error(*span, "timeline declared twice", None));
                }
                match Timeline::new(*lower, *upper) {
                    Ok(t) => timeline = Some(t),
                    Err(e) => diagnostics.push(ParseDiagnostic::error(*span, e.to_string(), None)),
                }
            }
            Stmt::Const { name, sort, span } => {
                if !sig.add_constant(name.clone(), sort.clone()) {
                    diagnostics.push(ParseDiagnostic::error(*span, format!("constant `{name}` declared twice"), None));
                }
                decl_spans.insert(name.clone(), *span);
            }
            Stmt::Pred { name, sorts, span } => {
                if !sig.add_predicate(name.clone(), sorts.iter().map(|(s, _)| s.clone()).collect()) {
                    diagnostics.push(ParseDiagnostic::error(*span, format!("predicate `{name}` declared twice"), None));
                }
                decl_spans.insert(name.clone(), *span);
            }
            _ => {}
        }
    }
    for violation in validate_signature(&sig) {
        let symbol = match &violation {
            crate::kernel::SignatureViolation::ArityBelowThree { predicate } => predicate,
            crate::kernel::SignatureViolation::UnknownSort { symbol, .. } => symbol,
            crate::kernel::SignatureViolation::TemporalArgument { predicate } => predicate,
            crate::kernel::SignatureViolation::BadName { symbol, .. } => symbol,
        };
        let span = decl_spans.get(symbol).copied().unwrap_or_else(document_start);
        diagnostics.push(ParseDiagnostic::error(span, violation.to_string(), None));
    }
    let Some(timeline) = timeline else {
        diagnostics.push(ParseDiagnostic::error(document_start(), "missing timeline declaration", Some("`timeline <int> <int>`")));
        return ParseOutcome { tmln: None, diagnostics };
    };

    let mut m = Tmln::new(sig.clone(), timeline);
    let mut fact_weights: BTreeMap<Literal, Weight> = BTreeMap::new();
    for stmt in &stmts {
        let mut b = Builder { sig: &sig, diagnostics: &mut diagnostics };
        match stmt {
            Stmt::Fact { literal, weight, span } => {
                let (Some(lit), Some(w)) = (b.literal(literal, &mut BTreeMap::new()), b.weight(weight)) else { continue };
                match fact_weights.get(&lit) {
                    Some(prev) if *prev == w => {
                        diagnostics.push(ParseDiagnostic::warning(*span, format!("fact `{lit}` repeated")));
                        continue;
                    }
                    Some(prev) => {
                        diagnostics.push(ParseDiagnostic::error(*span, format!("fact `{lit}` declared with weights {prev} and {w}"), None));
                        continue;
                    }
                    None => {}
                }
                fact_weights.insert(lit.clone(), w);
                if let Err(e) = m.add_fact(lit, w) {
                    diagnostics.push(ParseDiagnostic::error(literal.span, e.to_string(), None));
                }
            }
            Stmt::Rule { id, weight, premises, conclusion, span } => {
                let mut var_sorts = BTreeMap::new();
                let built: Vec<Option<Literal>> = premises.iter().map(|p| b.literal(p, &mut var_sorts)).collect();
                let head = b.literal(conclusion, &mut var_sorts);
                let w = b.weight(weight);
                let (Some(premises), Some(head), Some(w)) = (built.into_iter().collect::<Option<Vec<_>>>(), head, w) else {
                    continue;
                };
                if let Err(e) = m.add_rule(id.clone(), Rule::new(premises, head), w) {
                    diagnostics.push(ParseDiagnostic::error(*span, e.to_string(), None));
                }
            }
            _ => {}
        }
    }
    let failed = diagnostics.iter().any(ParseDiagnostic::is_error);
    ParseOutcome { tmln: (!failed).then_some(m), diagnostics }
}

/// Parses a document; any error diagnostic rejects it.
pub fn parse(text: &str) -> std::result::Result<Tmln, Vec<ParseDiagnostic>> {
    let outcome = parse_document(text);
    match outcome.tmln {
        Some(m) => Ok(m),
        None => Err(outcome.diagnostics.into_iter().filter(ParseDiagnostic::is_error).collect()),
    }
}

fn write_literal(out: &mut String, lit: &Literal) {
    if !lit.positive {
        out.push('!');
    }
    let terms: Vec<String> = lit.terms().map(Term::to_string).collect();
    let _ = write!(out, "{}({})", lit.predicate, terms.join(", "));
}

fn literal_text(lit: &Literal) -> String {
    let mut s = String::new();
    write_literal(&mut s, lit);
    s
}

/// Canonical text: sorts, timeline, constants, predicates, facts, rules,
/// each block in lexicographic order, LF line endings.
pub fn serialize(m: &Tmln) -> String {
    let mut out = String::new();
    let sig = m.signature();
    for s in sig.sorts() {
        let _ = writeln!(out, "sort {s}");
    }
    let _ = writeln!(out, "timeline {} {}", m.timeline().lower(), m.timeline().upper());
    for (c, s) in sig.constants() {
        let _ = writeln!(out, "const {c} : {s}");
    }
    for (p, sorts) in sig.predicates() {
        let _ = writeln!(out, "pred {p}({})", sorts.join(", "));
    }
    let mut facts: Vec<(String, Weight)> = m.facts().map(|(l, w)| (literal_text(l), w)).collect();
    facts.sort();
    for (text, w) in facts {
        let _ = writeln!(out, "fact {text} : {w}");
    }
    for (id, decl) in m.rules() {
        let premises: Vec<String> = decl.rule.premises.iter().map(literal_text).collect();
        let _ = writeln!(out, "rule {id} : {} {{ {} => {} }}", decl.weight, premises.join(" & "), literal_text(&decl.rule.conclusion));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "sort S\ntimeline 0 10\nconst A : S\npred P(S)\npred Q(S)\nfact P(A, 1, 2) : 0.5\nrule R : 1 {\n  P(x, t, u)\n  => !Q(x, TMIN, TMAX)\n}\n";

    #[test]
    fn parses_a_small_document() {
        let m = parse(SMALL).unwrap();
        assert_eq!(m.fact_count(), 1);
        assert_eq!(m.rule_count(), 1);
        assert_eq!(m.signature().sort_count(), 2);
        let text = serialize(&m);
        assert_eq!(parse(&text).unwrap(), m);
        assert_eq!(serialize(&parse(&text).unwrap()), text);
    }

    #[test]
    fn crlf_is_accepted() {
        assert_eq!(parse(&SMALL.replace('\n', "\r\n")).unwrap(), parse(SMALL).unwrap());
    }

    #[test]
    fn weight_out_of_range_points_at_the_weight() {
        let text = "sort Concept\ntimeline 1300 1400\nconst NO : Concept\npred Person(Concept)\nfact Person(NO,1320,1382) : 1.3\n";
        let errs = parse(text).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].message.contains("outside [0,1]"), "{}", errs[0]);
        assert_eq!(&text[errs[0].span.start..errs[0].span.end], "1.3");
        assert_eq!((errs[0].span.line, errs[0].span.column), (5, 29));
    }

    #[test]
    fn recovers_and_reports_every_line() {
        let text = "sort S\ntimeline 0 10\nconst A : S\npred P(S)\nfact P(A 1, 2) : 1\nfact P(B, 1, 2) : 1\nrule R : 1 { P(x, t, u) => }\nfact P(A, 3, 2) : 1\n";
        let errs = parse(text).unwrap_err();
        assert_eq!(errs.len(), 4, "{errs:#?}");
        for e in &errs {
            assert!(e.span.start <= e.span.end && e.span.end <= text.len());
        }
    }

    #[test]
    fn duplicates() {
        let base = "sort S\ntimeline 0 10\nconst A : S\npred P(S)\nfact P(A, 1, 2) : 1\n";
        let same = parse_document(&format!("{base}fact P(A, 1, 2) : 1\n"));
        assert!(same.tmln.is_some());
        assert_eq!(same.diagnostics.len(), 1);
        assert_eq!(same.diagnostics[0].severity, Severity::Warning);
        assert!(parse(&format!("{base}fact P(A, 1, 2) : 0.5\n")).is_err());
    }

    #[test]
    fn timeline_only_is_an_empty_kb() {
        let m = parse("timeline 0 5\n").unwrap();
        assert!(m.is_empty());
        assert_eq!(serialize(&m), "timeline 0 5\n");
        assert!(parse("").is_err());
    }

    #[test]
    fn signature_violations_are_spanned() {
        let errs = parse("timeline 0 5\npred Z()\nconst C : Nope\n").unwrap_err();
        assert_eq!(errs.len(), 2);
        assert!(errs.iter().any(|e| e.message.contains("arity < 3") && e.span.line == 2));
        assert!(errs.iter().any(|e| e.message.contains("unknown sort") && e.span.line == 3));
    }
}
