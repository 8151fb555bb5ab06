//! The ideal-file format.
//!
//! ```text
//! # comments run to the end of the line (also `//`)
//! ring Q[x,y,z] order degrevlex;     # or F5[...]; the order clause is optional
//! ideal c = x, y;
//! ideal a = x^2 - 3/4*y^2, x*y*z;
//! task criterion = sandwich;
//! task sandwich = c, 2;
//! ```
//!
//! Generators are polynomial expressions over `+ - * ^` and parentheses;
//! coefficients are integers or `num/den` literals. Parsing yields an
//! [`IdealFile`] syntax tree, and [`IdealFile::build`] turns it into a ring and
//! ideals, optionally overriding the declared field or order.

use std::fmt;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Field, MonomialOrder, Polynomial, Ring, RingSpec, Scalar};

/// Position in the input, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.column)
    }
}

fn parse_error(pos: Pos, message: impl Into<String>) -> Error {
    Error::Parse {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{}'", s),
            Tok::Int(n) => write!(f, "'{}'", n),
            Tok::Punct(c) => write!(f, "'{}'", c),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let pos = Pos { line, column };
        let c = chars[i];
        let start = i;
        if c == '#' || (c == '/' && chars.get(i + 1) == Some(&'/')) {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
        } else if "[](),;=+-*^/".contains(c) {
            i += 1;
            out.push((Tok::Punct(c), pos));
        } else {
            return Err(parse_error(pos, format!("unexpected character '{}'", c)));
        }
        for &c in &chars[start..i] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
    }
    Ok(out)
}

/// Polynomial expression syntax tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(String, Pos),
    Num(BigInt, BigInt),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, BigInt, Pos),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealDecl {
    pub name: String,
    pub pos: Pos,
    pub generators: Vec<(Expr, Pos)>,
}

/// A `task key = value, ...;` line with its raw values.
#[derive(Clone, Debug, PartialEq)]
pub struct TaskEntry {
    pub key: String,
    pub values: Vec<String>,
    pub pos: Pos,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealFile {
    pub field: Field,
    pub variables: Vec<String>,
    pub order: MonomialOrder,
    pub ideals: Vec<IdealDecl>,
    pub task: Vec<TaskEntry>,
}

pub fn parse_field(s: &str) -> Option<Field> {
    match s {
        "Q" | "QQ" => Some(Field::Rational),
        _ => {
            let p: u32 = s.strip_prefix('F').or_else(|| s.strip_prefix("GF"))?.parse().ok()?;
            Some(Field::Prime(p))
        }
    }
}

pub fn parse_order(s: &str) -> Option<MonomialOrder> {
    match s {
        "degrevlex" | "grevlex" => Some(MonomialOrder::DegRevLex),
        "deglex" | "glex" => Some(MonomialOrder::DegLex),
        "lex" => Some(MonomialOrder::Lex),
        _ => s.strip_prefix("elim")?.parse().ok().map(MonomialOrder::Elimination),
    }
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<(Tok, Pos)> {
        let t = self.toks.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            return Ok(());
        }
        Err(self.unexpected(&format!("'{}'", c)))
    }

    fn unexpected(&self, wanted: &str) -> Error {
        match self.peek() {
            Some(t) => parse_error(self.pos(), format!("expected {}, found {}", wanted, t)),
            None => parse_error(self.pos(), format!("expected {}, found end of input", wanted)),
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<(String, Pos)> {
        match self.peek() {
            Some(Tok::Ident(_)) => match self.next() {
                Some((Tok::Ident(s), p)) => Ok((s, p)),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected(wanted)),
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Tok::Int(_)) => match self.next() {
                Some((Tok::Int(n), _)) => Ok(n),
                _ => unreachable!(),
            },
            _ => Err(self.unexpected("an integer")),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.peek() == Some(&Tok::Punct('/')) {
                let pos = self.pos();
                self.at += 1;
                let d = self.int()?;
                lhs = match lhs {
                    Expr::Num(n, one) if one == BigInt::from(1) => Expr::Num(n, d),
                    other => Expr::Div(Box::new(other), d, pos),
                };
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            let pos = self.pos();
            let e = self.int()?;
            let e: u32 = e
                .try_into()
                .ok()
                .filter(|&e: &u32| e <= u16::MAX as u32)
                .ok_or_else(|| parse_error(pos, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(Tok::Int(_)) => Ok(Expr::Num(self.int()?, BigInt::from(1))),
            Some(Tok::Ident(_)) => {
                let (s, p) = self.ident("")?;
                Ok(Expr::Var(s, p))
            }
            Some(Tok::Punct('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }

    fn file(&mut self) -> Result<IdealFile> {
        let mut ring: Option<(Field, Vec<String>, MonomialOrder)> = None;
        let mut ideals: Vec<IdealDecl> = Vec::new();
        let mut task = Vec::new();
        while self.peek().is_some() {
            let (kw, kw_pos) = self.ident("'ring', 'ideal' or 'task'")?;
            match kw.as_str() {
                "ring" => {
                    if ring.is_some() {
                        return Err(parse_error(kw_pos, "ring declared twice"));
                    }
                    let (f, fpos) = self.ident("a field such as Q or F5")?;
                    let field = parse_field(&f).ok_or_else(|| parse_error(fpos, format!("unknown field '{}'", f)))?;
                    self.expect('[')?;
                    let mut vars = vec![self.ident("a variable name")?.0];
                    while self.eat(',') {
                        vars.push(self.ident("a variable name")?.0);
                    }
                    self.expect(']')?;
                    let mut order = MonomialOrder::DegRevLex;
                    if self.peek() == Some(&Tok::Ident("order".into())) {
                        self.at += 1;
                        let (o, opos) = self.ident("a monomial order")?;
                        order = parse_order(&o).ok_or_else(|| parse_error(opos, format!("unknown order '{}'", o)))?;
                    }
                    self.expect(';')?;
                    ring = Some((field, vars, order));
                }
                "ideal" => {
                    if ring.is_none() {
                        return Err(parse_error(kw_pos, "ideal declared before the ring"));
                    }
                    let (name, pos) = self.ident("an ideal name")?;
                    if ideals.iter().any(|d| d.name == name) {
                        return Err(parse_error(pos, format!("ideal '{}' declared twice", name)));
                    }
                    self.expect('=')?;
                    let mut generators = Vec::new();
                    loop {
                        let gpos = self.pos();
                        generators.push((self.expr()?, gpos));
                        if !self.eat(',') {
                            break;
                        }
                    }
                    self.expect(';')?;
                    ideals.push(IdealDecl { name, pos, generators });
                }
                "task" => {
                    let (key, pos) = self.ident("a task key")?;
                    self.expect('=')?;
                    let mut values = Vec::new();
                    loop {
                        match self.next() {
                            Some((Tok::Ident(s), _)) => values.push(s),
                            Some((Tok::Int(n), _)) => values.push(n.to_string()),
                            _ => {
                                self.at -= 1;
                                return Err(self.unexpected("a task value"));
                            }
                        }
                        // values such as prop-cycle are several tokens long
                        while self.peek() == Some(&Tok::Punct('-')) {
                            self.at += 1;
                            let (s, _) = self.ident("a task value")?;
                            let last = values.last_mut().unwrap();
                            last.push('-');
                            last.push_str(&s);
                        }
                        if !self.eat(',') {
                            break;
                        }
                    }
                    self.expect(';')?;
                    task.push(TaskEntry { key, values, pos });
                }
                _ => return Err(parse_error(kw_pos, format!("unknown statement '{}'", kw))),
            }
        }
        let (field, variables, order) = ring.ok_or_else(|| parse_error(self.end, "missing ring declaration"))?;
        if ideals.is_empty() {
            return Err(parse_error(self.end, "no ideal declared"));
        }
        Ok(IdealFile {
            field,
            variables,
            order,
            ideals,
            task,
        })
    }
}

/// Parses the text without building polynomials.
pub fn parse_syntax(text: &str) -> Result<IdealFile> {
    let toks = tokenize(text)?;
    let end = match toks.last() {
        Some((t, p)) => Pos {
            line: p.line,
            column: p.column + t.to_string().len().saturating_sub(2),
        },
        None => Pos { line: 1, column: 1 },
    };
    Parser { toks, at: 0, end }.file()
}

/// Build-time overrides of the ring declaration.
#[derive(Clone, Copy, Debug, Default)]
pub struct Overrides {
    pub field: Option<Field>,
    pub order: Option<MonomialOrder>,
}

/// A fully built input file.
#[derive(Clone, Debug)]
pub struct ParsedInput {
    pub ring: Ring,
    pub ideals: Vec<(String, Ideal)>,
    pub task: Vec<TaskEntry>,
}

impl ParsedInput {
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.iter().find(|(n, _)| n == name).map(|(_, i)| i)
    }
}

fn eval(ring: &Ring, e: &Expr) -> Result<Polynomial> {
    Ok(match e {
        Expr::Var(name, pos) => {
            let i = ring
                .variable_index(name)
                .ok_or_else(|| parse_error(*pos, format!("unknown variable '{}'", name)))?;
            Polynomial::variable(ring, i)?
        }
        Expr::Num(n, d) => {
            let c = Scalar::from_ratio(ring.field(), n, d)
                .ok_or_else(|| Error::Precondition(format!("denominator {} vanishes in {}", d, ring.field())))?;
            Polynomial::constant(ring, c)
        }
        Expr::Neg(a) => -&eval(ring, a)?,
        Expr::Add(a, b) => eval(ring, a)?.try_add(&eval(ring, b)?)?,
        Expr::Sub(a, b) => eval(ring, a)?.try_sub(&eval(ring, b)?)?,
        Expr::Mul(a, b) => eval(ring, a)?.try_mul(&eval(ring, b)?)?,
        Expr::Div(a, d, pos) => {
            let inv = Scalar::from_ratio(ring.field(), &BigInt::from(1), d)
                .ok_or_else(|| parse_error(*pos, format!("division by {} in {}", d, ring.field())))?;
            eval(ring, a)?.scale(&inv)
        }
        Expr::Pow(a, k) => eval(ring, a)?.pow(*k),
    })
}

impl IdealFile {
    pub fn build(&self, overrides: Overrides) -> Result<ParsedInput> {
        let ring = RingSpec::new(
            self.variables.iter().cloned(),
            overrides.field.unwrap_or(self.field),
            overrides.order.unwrap_or(self.order),
        )?;
        let mut ideals = Vec::new();
        for decl in &self.ideals {
            let mut gens = Vec::new();
            for (k, (e, pos)) in decl.generators.iter().enumerate() {
                let g = eval(&ring, e).map_err(|err| match err {
                    Error::Precondition(m) => parse_error(*pos, m),
                    other => other,
                })?;
                if !g.is_homogeneous() && !g.is_zero() {
                    return Err(Error::Inhomogeneous(format!(
                        "generator {} of ideal '{}' at {}: {}",
                        k + 1,
                        decl.name,
                        pos,
                        g
                    )));
                }
                gens.push(g);
            }
            ideals.push((decl.name.clone(), Ideal::new(&ring, gens)?));
        }
        Ok(ParsedInput {
            ring,
            ideals,
            task: self.task.clone(),
        })
    }
}

pub fn parse_ideal_file(text: &str) -> Result<ParsedInput> {
    parse_syntax(text)?.build(Overrides::default())
}

/// Renders a ring and named ideals in the input syntax.
pub fn format_ideal_file(ring: &Ring, ideals: &[(&str, &Ideal)]) -> String {
    let mut out = format!("ring {}[{}]", ring.field(), ring.variables().join(","));
    if ring.order() != MonomialOrder::DegRevLex {
        out.push_str(&format!(" order {}", ring.order().name()));
    }
    out.push_str(";\n");
    for (name, ideal) in ideals {
        let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
        let body = if gens.is_empty() { "0".to_string() } else { gens.join(", ") };
        out.push_str(&format!("ideal {} = {};\n", name, body));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_of_the_maximal_ideal() {
        let p = parse_ideal_file("ring Q[x,y]; ideal a = x^2, x*y, y^2;").unwrap();
        assert_eq!(p.ring.num_vars(), 2);
        assert_eq!(p.ring.field(), Field::Rational);
        let a = p.ideal("a").unwrap();
        assert!(a.same_ideal(&Ideal::maximal(&p.ring).power(2).unwrap()).unwrap());
    }

    #[test]
    fn prime_field_and_rationals() {
        let p = parse_ideal_file("ring F5[x,y]; ideal a = x^2+y^2;").unwrap();
        assert_eq!(p.ring.field(), Field::Prime(5));
        let q = parse_ideal_file("ring Q[x,y]; ideal a = 3/4*x^2 - (x+y)^2/2;").unwrap();
        assert_eq!(q.ideal("a").unwrap().generators()[0].to_string(), "1/4*x^2 - x*y - 1/2*y^2");
        let e = parse_ideal_file("ring F5[x]; ideal a = x/5;").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn inhomogeneous_generator_is_named() {
        let e = parse_ideal_file("ring Q[x,y];\nideal a = x^2, x + 1;").unwrap_err();
        match e {
            Error::Inhomogeneous(m) => {
                assert!(m.contains("generator 2 of ideal 'a'"), "{}", m);
                assert!(m.contains("line 2, column 16"), "{}", m);
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let e = parse_ideal_file("ring Q[x,y];\nideal a = x^2 y;").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 15,
                message: "expected ';', found 'y'".into()
            }
        );
        assert!(matches!(
            parse_ideal_file("ring Q[x]; ideal a = z;"),
            Err(Error::Parse { column: 22, .. })
        ));
        assert!(matches!(parse_ideal_file("ring Q[x]; ideal a = x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_ideal_file("ideal a = x;"), Err(Error::Parse { .. })));
    }

    #[test]
    fn task_block_and_comments() {
        let text = "# header\nring Q[x,y] order deglex; // trailing\nideal c = x, y;\nideal a = x^3, y^3;\ntask criterion = prop-cycle;\ntask sandwich = c, 3;\n";
        let p = parse_ideal_file(text).unwrap();
        assert_eq!(p.ring.order(), MonomialOrder::DegLex);
        assert_eq!(p.task[0].values, vec!["prop-cycle"]);
        assert_eq!(p.task[1].values, vec!["c", "3"]);
    }

    #[test]
    fn overrides_and_round_trip() {
        let f = parse_syntax("ring Q[x,y]; ideal a = x^2 - 2*y^2, x*y;").unwrap();
        let p = f
            .build(Overrides {
                field: Some(Field::Prime(7)),
                order: Some(MonomialOrder::Lex),
            })
            .unwrap();
        let a = p.ideal("a").unwrap();
        let text = format_ideal_file(&p.ring, &[("a", a)]);
        assert_eq!(text, "ring F7[x,y] order lex;\nideal a = x^2 + 5*y^2, x*y;\n");
        let back = parse_ideal_file(&text).unwrap();
        assert_eq!(format_ideal_file(&back.ring, &[("a", back.ideal("a").unwrap())]), text);
    }
}
