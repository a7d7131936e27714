//! Lexer, parser and printer for the input language.
//!
//! ```text
//! ring R = QQ[x, y] / (x^2, x*y) order degrevlex;
//! dga A over QQ gens (x:1, z:3) diff (z -> 0);
//! module M = R / (x, y);
//! map phi : S -> A (t -> x);
//! job classify R cap = 8;
//! ```

use std::fmt;

use aqcalc_core::expr::Expr;

/// Byte range in the source. Spans never take part in structural equality.
#[derive(Clone, Copy, Debug, Default)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl PartialEq for Span {
    fn eq(&self, _: &Span) -> bool {
        true
    }
}

impl Eq for Span {}

impl Span {
    fn join(self, other: Span) -> Span {
        Span {
            start: self.start.min(other.start),
            end: self.end.max(other.end),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: &'static str,
    pub message: String,
    pub span: Span,
    pub line: usize,
    pub column: usize,
}

impl Diagnostic {
    pub fn new(code: &'static str, message: impl Into<String>, span: Span) -> Diagnostic {
        Diagnostic {
            code,
            message: message.into(),
            span,
            line: 0,
            column: 0,
        }
    }

    /// Fills in line and column from the source text.
    pub fn locate(mut self, src: &str) -> Diagnostic {
        let upto = &src[..self.span.start.min(src.len())];
        self.line = upto.matches('\n').count() + 1;
        self.column = upto.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        self
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: [{}] {}", self.line, self.column, self.code, self.message)
    }
}

impl std::error::Error for Diagnostic {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SExpr {
    pub expr: Expr,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => f.write_str("QQ"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingDecl {
    pub name: Name,
    pub field: FieldSpec,
    /// Variables with optional weights.
    pub vars: Vec<(Name, Option<u32>)>,
    pub ideal: Vec<SExpr>,
    pub order: Option<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Over {
    Field(FieldSpec),
    Ring(Name),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenDecl {
    pub name: Name,
    pub degree: u32,
    pub weight: Option<u32>,
    pub kind: Option<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgaDecl {
    pub name: Name,
    pub over: Over,
    pub gens: Vec<GenDecl>,
    pub diff: Vec<(Name, SExpr)>,
    pub rels: Vec<SExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDecl {
    pub name: Name,
    pub ring: Name,
    pub relations: Vec<SExpr>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapDecl {
    pub name: Name,
    pub source: Name,
    pub target: Name,
    pub images: Vec<(Name, SExpr)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OptionValue {
    Window(i64, i64),
    List(Vec<SExpr>),
    Expr(SExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobDecl {
    pub command: Name,
    pub targets: Vec<Name>,
    pub options: Vec<(Name, OptionValue)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeclKind {
    Ring(RingDecl),
    Dga(DgaDecl),
    Module(ModuleDecl),
    Map(MapDecl),
    Job(JobDecl),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decl {
    pub kind: DeclKind,
    pub span: Span,
}

impl Decl {
    /// The name a declaration binds; jobs bind nothing.
    pub fn binds(&self) -> Option<&Name> {
        match &self.kind {
            DeclKind::Ring(r) => Some(&r.name),
            DeclKind::Dga(d) => Some(&d.name),
            DeclKind::Module(m) => Some(&m.name),
            DeclKind::Map(m) => Some(&m.name),
            DeclKind::Job(_) => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceDocument {
    pub decls: Vec<Decl>,
}

impl SourceDocument {
    pub fn jobs(&self) -> impl Iterator<Item = &JobDecl> {
        self.decls.iter().filter_map(|d| match &d.kind {
            DeclKind::Job(j) => Some(j),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(u64),
    Arrow,
    Sym(char),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Arrow => f.write_str("'->'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, Diagnostic> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == b'#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            Tok::Ident(src[start..i].to_string())
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n = src[start..i]
                .parse()
                .map_err(|_| Diagnostic::new("P-LEX", "integer literal too large", Span { start, end: i }))?;
            Tok::Int(n)
        } else if c == b'-' && bytes.get(i + 1) == Some(&b'>') {
            i += 2;
            Tok::Arrow
        } else if b"()[],;:=+-*^/@".contains(&c) {
            i += 1;
            Tok::Sym(c as char)
        } else {
            let ch = src[i..].chars().next().unwrap_or('?');
            return Err(Diagnostic::new(
                "P-LEX",
                format!("unexpected character '{ch}'"),
                Span {
                    start,
                    end: start + ch.len_utf8(),
                },
            ));
        };
        out.push((tok, Span { start, end: i }));
    }
    out.push((
        Tok::Eof,
        Span {
            start: src.len(),
            end: src.len(),
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_span(&self) -> Span {
        self.toks[self.pos.saturating_sub(1)].1
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, what: &str) -> PResult<T> {
        Err(Diagnostic::new("P-SYNTAX", format!("expected {what}, found {}", self.peek()), self.span()))
    }

    fn is_sym(&self, c: char) -> bool {
        *self.peek() == Tok::Sym(c)
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn sym(&mut self, c: char) -> PResult<()> {
        if self.eat_sym(c) {
            Ok(())
        } else {
            self.err(&format!("'{c}'"))
        }
    }

    fn is_kw(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn kw(&mut self, kw: &str) -> PResult<()> {
        if self.is_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.err(&format!("'{kw}'"))
        }
    }

    fn name(&mut self) -> PResult<Name> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let (_, span) = self.bump();
                Ok(Name { text: s, span })
            }
            _ => self.err("a name"),
        }
    }

    fn int(&mut self) -> PResult<u64> {
        match *self.peek() {
            Tok::Int(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.err("an integer"),
        }
    }

    fn small(&mut self) -> PResult<u32> {
        let span = self.span();
        let n = self.int()?;
        u32::try_from(n).map_err(|_| Diagnostic::new("P-SYNTAX", "integer out of range", span))
    }

    fn signed(&mut self) -> PResult<i64> {
        let neg = self.eat_sym('-');
        let span = self.span();
        let n = self.int()?;
        let n = i64::try_from(n).map_err(|_| Diagnostic::new("P-SYNTAX", "integer out of range", span))?;
        Ok(if neg { -n } else { n })
    }

    /// `(item, item, ...)`, possibly empty.
    fn list<T>(&mut self, mut item: impl FnMut(&mut Parser) -> PResult<T>) -> PResult<Vec<T>> {
        self.sym('(')?;
        let mut out = Vec::new();
        if self.eat_sym(')') {
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            if self.eat_sym(')') {
                return Ok(out);
            }
            self.sym(',')?;
        }
    }

    fn field(&mut self) -> PResult<FieldSpec> {
        if self.is_kw("QQ") {
            self.bump();
            return Ok(FieldSpec::Rational);
        }
        if self.is_kw("GF") {
            self.bump();
            self.sym('(')?;
            let p = self.int()?;
            self.sym(')')?;
            return Ok(FieldSpec::Prime(p));
        }
        self.err("a field (QQ or GF(p))")
    }

    // expressions: sum := term (('+'|'-') term)*, term := unary ('*' unary)*,
    // unary := '-' unary | power, power := atom ('^' int)?, atom := int ('/' int)? | name | '(' sum ')'
    fn expr(&mut self) -> PResult<SExpr> {
        let start = self.span();
        let expr = self.sum()?;
        Ok(SExpr {
            expr,
            span: start.join(self.prev_span()),
        })
    }

    fn sum(&mut self) -> PResult<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat_sym('+') {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat_sym('-') {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut e = self.unary()?;
        while self.eat_sym('*') {
            e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
        }
        Ok(e)
    }

    fn unary(&mut self) -> PResult<Expr> {
        if self.eat_sym('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let a = self.atom()?;
        if self.eat_sym('^') {
            let n = self.small()?;
            return Ok(Expr::Pow(Box::new(a), n));
        }
        Ok(a)
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().clone() {
            Tok::Int(_) => {
                let span = self.span();
                let n = self.int()?;
                let big = || Diagnostic::new("P-SYNTAX", "integer out of range", span);
                let n = i64::try_from(n).map_err(|_| big())?;
                if self.is_sym('/') && matches!(self.peek_at(1), Tok::Int(_)) {
                    self.bump();
                    let d = self.int()?;
                    let d = i64::try_from(d).map_err(|_| big())?;
                    if d == 0 {
                        return Err(Diagnostic::new("P-SYNTAX", "zero denominator", span.join(self.prev_span())));
                    }
                    return Ok(Expr::Num(n, d));
                }
                Ok(Expr::Num(n, 1))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Var(s))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.sum()?;
                self.sym(')')?;
                Ok(e)
            }
            _ => self.err("a number, name or '('"),
        }
    }

    fn decl(&mut self) -> PResult<Decl> {
        let start = self.span();
        let kind = match self.peek() {
            Tok::Ident(k) if k == "ring" => DeclKind::Ring(self.ring()?),
            Tok::Ident(k) if k == "dga" => DeclKind::Dga(self.dga()?),
            Tok::Ident(k) if k == "module" => DeclKind::Module(self.module()?),
            Tok::Ident(k) if k == "map" => DeclKind::Map(self.map()?),
            Tok::Ident(k) if k == "job" => DeclKind::Job(self.job()?),
            _ => return self.err("'ring', 'dga', 'module', 'map' or 'job'"),
        };
        self.sym(';')?;
        Ok(Decl {
            kind,
            span: start.join(self.prev_span()),
        })
    }

    fn ring(&mut self) -> PResult<RingDecl> {
        self.kw("ring")?;
        let name = self.name()?;
        self.sym('=')?;
        let field = self.field()?;
        self.sym('[')?;
        let mut vars = Vec::new();
        if !self.is_sym(']') {
            loop {
                let v = self.name()?;
                let w = if self.eat_sym(':') { Some(self.small()?) } else { None };
                vars.push((v, w));
                if !self.eat_sym(',') {
                    break;
                }
            }
        }
        self.sym(']')?;
        let ideal = if self.eat_sym('/') { self.list(Parser::expr)? } else { Vec::new() };
        let order = if self.is_kw("order") {
            self.bump();
            Some(self.name()?)
        } else {
            None
        };
        Ok(RingDecl {
            name,
            field,
            vars,
            ideal,
            order,
        })
    }

    fn dga(&mut self) -> PResult<DgaDecl> {
        self.kw("dga")?;
        let name = self.name()?;
        self.kw("over")?;
        let over = if self.is_kw("QQ") || self.is_kw("GF") {
            Over::Field(self.field()?)
        } else {
            Over::Ring(self.name()?)
        };
        self.kw("gens")?;
        let gens = self.list(|p| {
            let name = p.name()?;
            p.sym(':')?;
            let degree = p.small()?;
            let weight = if p.eat_sym('@') { Some(p.small()?) } else { None };
            let kind = if matches!(p.peek(), Tok::Ident(_)) { Some(p.name()?) } else { None };
            Ok(GenDecl {
                name,
                degree,
                weight,
                kind,
            })
        })?;
        let diff = if self.is_kw("diff") {
            self.bump();
            self.list(Parser::assignment)?
        } else {
            Vec::new()
        };
        let rels = if self.is_kw("rel") {
            self.bump();
            self.list(Parser::expr)?
        } else {
            Vec::new()
        };
        Ok(DgaDecl {
            name,
            over,
            gens,
            diff,
            rels,
        })
    }

    fn assignment(&mut self) -> PResult<(Name, SExpr)> {
        let n = self.name()?;
        if *self.peek() != Tok::Arrow {
            return self.err("'->'");
        }
        self.bump();
        Ok((n, self.expr()?))
    }

    fn module(&mut self) -> PResult<ModuleDecl> {
        self.kw("module")?;
        let name = self.name()?;
        self.sym('=')?;
        let ring = self.name()?;
        let relations = if self.eat_sym('/') { self.list(Parser::expr)? } else { Vec::new() };
        Ok(ModuleDecl { name, ring, relations })
    }

    fn map(&mut self) -> PResult<MapDecl> {
        self.kw("map")?;
        let name = self.name()?;
        self.sym(':')?;
        let source = self.name()?;
        if *self.peek() != Tok::Arrow {
            return self.err("'->'");
        }
        self.bump();
        let target = self.name()?;
        let images = self.list(Parser::assignment)?;
        Ok(MapDecl {
            name,
            source,
            target,
            images,
        })
    }

    fn job(&mut self) -> PResult<JobDecl> {
        self.kw("job")?;
        let command = self.name()?;
        let mut targets = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) != Tok::Sym('=') {
            targets.push(self.name()?);
        }
        let mut options = Vec::new();
        while matches!(self.peek(), Tok::Ident(_)) {
            let key = self.name()?;
            self.sym('=')?;
            let value = if self.eat_sym('[') {
                let lo = self.signed()?;
                self.sym(',')?;
                let hi = self.signed()?;
                self.sym(']')?;
                OptionValue::Window(lo, hi)
            } else if self.is_sym('(') {
                OptionValue::List(self.list(Parser::expr)?)
            } else {
                OptionValue::Expr(self.expr()?)
            };
            options.push((key, value));
        }
        Ok(JobDecl {
            command,
            targets,
            options,
        })
    }
}

/// Syntax only; see `crate::elaborate` for name and degree checks.
pub fn parse_syntax(src: &str) -> Result<SourceDocument, Diagnostic> {
    let toks = lex(src).map_err(|d| d.locate(src))?;
    let mut p = Parser { toks, pos: 0 };
    let mut decls = Vec::new();
    while *p.peek() != Tok::Eof {
        decls.push(p.decl().map_err(|d| d.locate(src))?);
    }
    Ok(SourceDocument { decls })
}

/// Parses a single expression, as used for command-line arguments.
pub fn parse_expression(src: &str) -> Result<SExpr, Diagnostic> {
    let toks = lex(src).map_err(|d| d.locate(src))?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr().map_err(|d| d.locate(src))?;
    if *p.peek() != Tok::Eof {
        return Err(p.err::<()>("end of input").unwrap_err().locate(src));
    }
    Ok(e)
}

/// Infix form with the fewest parentheses that parse back to the same tree.
pub fn pretty(e: &Expr) -> String {
    pretty_at(e, 0)
}

fn pretty_at(e: &Expr, min: u8) -> String {
    let (prec, s) = match e {
        Expr::Num(n, 1) => (5, n.to_string()),
        Expr::Num(n, d) => (5, format!("{n}/{d}")),
        Expr::Var(v) => (5, v.clone()),
        Expr::Add(a, b) => (1, format!("{} + {}", pretty_at(a, 1), pretty_at(b, 2))),
        Expr::Sub(a, b) => (1, format!("{} - {}", pretty_at(a, 1), pretty_at(b, 2))),
        Expr::Mul(a, b) => (2, format!("{}*{}", pretty_at(a, 2), pretty_at(b, 3))),
        Expr::Neg(a) => (3, format!("-{}", pretty_at(a, 3))),
        Expr::Pow(a, n) => (4, format!("{}^{n}", pretty_at(a, 5))),
    };
    if prec < min {
        format!("({s})")
    } else {
        s
    }
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DeclKind::Ring(r) => {
                let vars = join(&r.vars, |(v, w)| match w {
                    Some(w) => format!("{}:{w}", v.text),
                    None => v.text.clone(),
                });
                write!(f, "ring {} = {}[{vars}]", r.name.text, r.field)?;
                if !r.ideal.is_empty() {
                    write!(f, " / ({})", join(&r.ideal, |e| pretty(&e.expr)))?;
                }
                if let Some(o) = &r.order {
                    write!(f, " order {}", o.text)?;
                }
            }
            DeclKind::Dga(d) => {
                let over = match &d.over {
                    Over::Field(fs) => fs.to_string(),
                    Over::Ring(n) => n.text.clone(),
                };
                let gens = join(&d.gens, |g| {
                    let mut s = format!("{}:{}", g.name.text, g.degree);
                    if let Some(w) = g.weight {
                        s += &format!("@{w}");
                    }
                    if let Some(k) = &g.kind {
                        s += &format!(" {}", k.text);
                    }
                    s
                });
                write!(f, "dga {} over {over} gens ({gens})", d.name.text)?;
                if !d.diff.is_empty() {
                    write!(f, " diff ({})", join(&d.diff, |(n, e)| format!("{} -> {}", n.text, pretty(&e.expr))))?;
                }
                if !d.rels.is_empty() {
                    write!(f, " rel ({})", join(&d.rels, |e| pretty(&e.expr)))?;
                }
            }
            DeclKind::Module(m) => {
                write!(f, "module {} = {}", m.name.text, m.ring.text)?;
                if !m.relations.is_empty() {
                    write!(f, " / ({})", join(&m.relations, |e| pretty(&e.expr)))?;
                }
            }
            DeclKind::Map(m) => {
                write!(
                    f,
                    "map {} : {} -> {} ({})",
                    m.name.text,
                    m.source.text,
                    m.target.text,
                    join(&m.images, |(n, e)| format!("{} -> {}", n.text, pretty(&e.expr)))
                )?;
            }
            DeclKind::Job(j) => {
                write!(f, "job {}", j.command.text)?;
                for t in &j.targets {
                    write!(f, " {}", t.text)?;
                }
                for (k, v) in &j.options {
                    let v = match v {
                        OptionValue::Window(a, b) => format!("[{a}, {b}]"),
                        OptionValue::List(es) => format!("({})", join(es, |e| pretty(&e.expr))),
                        OptionValue::Expr(e) => pretty(&e.expr),
                    };
                    write!(f, " {} = {v}", k.text)?;
                }
            }
        }
        f.write_str(";")
    }
}

impl fmt::Display for SourceDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.decls {
            writeln!(f, "{d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_declaration() {
        let doc = parse_syntax("ring R = QQ[x,y] / (x^2, x*y) order degrevlex;").unwrap();
        assert_eq!(doc.decls.len(), 1);
        let DeclKind::Ring(r) = &doc.decls[0].kind else { panic!() };
        assert_eq!(r.vars.len(), 2);
        assert_eq!(r.ideal.len(), 2);
        assert_eq!(r.order.as_ref().unwrap().text, "degrevlex");
    }

    #[test]
    fn positions_are_reported() {
        let e = parse_syntax("ring R = QQ[x];\nring S = QQ[x] / (x +);").unwrap_err();
        assert_eq!((e.line, e.column, e.code), (2, 22, "P-SYNTAX"));
        let e = parse_syntax("ring R = QQ[x] $").unwrap_err();
        assert_eq!(e.code, "P-LEX");
    }

    #[test]
    fn printing_round_trips() {
        let src = "ring R = GF(3)[x:2, y] / (x^2 - 1/2*y^4, -x*y) order lex;\n\
                   dga A over QQ gens (x:1, y:2 divided, z:3@1) diff (z -> 0, x -> 0) rel (y^2);\n\
                   module M = R / (x);\n\
                   map f : A -> A (x -> x, y -> y, z -> z);\n\
                   job ext_window A window = [-4, 2] cap = 6 seq = (x, y) at = x + y;";
        let doc = parse_syntax(src).unwrap();
        let again = parse_syntax(&doc.to_string()).unwrap();
        assert_eq!(doc, again);
        assert_eq!(doc.to_string(), again.to_string());
        assert!(doc.to_string().contains("x^2 - 1/2*y^4, -x*y"));
    }

    #[test]
    fn pretty_keeps_needed_parentheses() {
        for src in ["(x + y)^2", "x - (y - z)", "-(x + y)*z", "x*(y*z)", "(-x)^3"] {
            let e = parse_expression(src).unwrap().expr;
            assert_eq!(parse_expression(&pretty(&e)).unwrap().expr, e, "{src}");
        }
    }
}
