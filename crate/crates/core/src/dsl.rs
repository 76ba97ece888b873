//! Lexer and parser for session files.
//!
//! The parser produces an untyped syntax tree; name resolution and
//! polynomial evaluation happen in [`crate::session`].

use num_bigint::BigInt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl Pos {
    pub fn error(self, message: impl Into<String>) -> Error {
        Error::Parse { line: self.line, column: self.column, message: message.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Sym(&'static str),
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(n) => format!("`{n}`"),
            Tok::Sym(s) => format!("`{s}`"),
            Tok::Eof => "end of input".into(),
        }
    }
}

const SYMBOLS: [&str; 15] = ["<=", ";", ",", "=", "(", ")", "[", "]", "{", "}", "+", "-", "*", "^", "/"];

pub fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column: col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            col += i - start;
            out.push((Tok::Ident(chars[start..i].iter().collect()), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            col += i - start;
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        let rest: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        match SYMBOLS.iter().find(|s| rest.starts_with(*s)) {
            Some(s) => {
                i += s.len();
                col += s.len();
                out.push((Tok::Sym(s), pos));
            }
            None => return Err(pos.error(format!("unexpected character `{c}`"))),
        }
    }
    out.push((Tok::Eof, Pos { line, column: col }));
    Ok(out)
}

/// Polynomial expressions, evaluated later against a ring.
#[derive(Clone, Debug)]
pub enum Expr {
    Int(BigInt),
    Var(String, Pos),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, BigInt, Pos),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug)]
pub struct IdealLit {
    pub generators: Vec<Expr>,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub enum FieldSpec {
    Rationals,
    Prime(BigInt, Pos),
}

#[derive(Clone, Debug)]
pub enum IdealRef {
    Name(String, Pos),
    Literal(IdealLit),
}

#[derive(Clone, Debug)]
pub enum ModuleSpec {
    Coker(Vec<Vec<Expr>>, Pos),
    Cyclic(IdealRef),
    Free(usize),
}

#[derive(Clone, Debug)]
pub enum Arg {
    Name(String),
    Int(usize),
    Set(Vec<(String, Pos)>),
    Le,
}

#[derive(Clone, Debug)]
pub enum Stmt {
    Seed(u64),
    Ring { name: String, field: FieldSpec, variables: Vec<(String, Pos)>, quotient: Vec<Expr>, order: Option<(String, Pos)> },
    Ideal { name: String, ideal: IdealLit, ring: (String, Pos) },
    Module { name: String, spec: ModuleSpec, ring: Option<(String, Pos)> },
    Seq { name: String, entries: Vec<Vec<IdealRef>>, ring: (String, Pos) },
    Command { word: String, args: Vec<(Arg, Pos)> },
}

#[derive(Clone, Debug)]
pub struct Located {
    pub stmt: Stmt,
    pub pos: Pos,
}

/// Commands spelled with a hyphen.
const HYPHENATED: [&str; 6] = ["member-tilt", "member-cotilt", "cech-h", "cech-coh", "local-h", "local-coh"];

struct Parser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }
    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }
    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }
    fn unexpected(&self, wanted: &str) -> Error {
        self.pos().error(format!("expected {wanted}, found {}", self.peek().describe()))
    }
    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }
    fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.next();
            true
        } else {
            false
        }
    }
    fn expect_sym(&mut self, s: &str) -> Result<Pos> {
        if self.is_sym(s) {
            Ok(self.next().1)
        } else {
            Err(self.unexpected(&format!("`{s}`")))
        }
    }
    fn ident(&mut self) -> Result<(String, Pos)> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                let p = self.next().1;
                Ok((s, p))
            }
            _ => Err(self.unexpected("a name")),
        }
    }
    fn keyword(&mut self, k: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == k => {
                self.next();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("`{k}`"))),
        }
    }
    fn is_keyword(&self, k: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == k)
    }
    fn int(&mut self) -> Result<(BigInt, Pos)> {
        match self.peek().clone() {
            Tok::Int(n) => {
                let p = self.next().1;
                Ok((n, p))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }
    fn small_int<T: TryFrom<BigInt>>(&mut self) -> Result<T> {
        let (n, p) = self.int()?;
        T::try_from(n).map_err(|_| p.error("integer out of range"))
    }

    fn statement(&mut self) -> Result<Located> {
        let pos = self.pos();
        let (word, _) = self.ident()?;
        let stmt = match word.as_str() {
            "seed" => {
                let s = self.small_int::<u64>()?;
                Stmt::Seed(s)
            }
            "ring" => self.ring()?,
            "ideal" => {
                let (name, _) = self.ident()?;
                self.expect_sym("=")?;
                let ideal = self.ideal_lit()?;
                self.keyword("in")?;
                Stmt::Ideal { name, ideal, ring: self.ident()? }
            }
            "module" => self.module()?,
            "seq" => self.seq()?,
            _ => self.command(word)?,
        };
        self.expect_sym(";")?;
        Ok(Located { stmt, pos })
    }

    fn ring(&mut self) -> Result<Stmt> {
        let (name, _) = self.ident()?;
        self.expect_sym("=")?;
        let (f, fp) = self.ident()?;
        let field = match f.as_str() {
            "QQ" => FieldSpec::Rationals,
            "GF" => {
                self.expect_sym("(")?;
                let (p, pp) = self.int()?;
                self.expect_sym(")")?;
                FieldSpec::Prime(p, pp)
            }
            _ => return Err(fp.error(format!("unknown field `{f}`; expected QQ or GF(p)"))),
        };
        self.expect_sym("[")?;
        let mut variables = vec![self.ident()?];
        while self.eat_sym(",") {
            variables.push(self.ident()?);
        }
        self.expect_sym("]")?;
        let mut quotient = Vec::new();
        if self.eat_sym("/") {
            quotient = self.ideal_lit()?.generators;
        }
        let mut order = None;
        if self.is_keyword("order") {
            self.next();
            order = Some(self.ident()?);
        }
        Ok(Stmt::Ring { name, field, variables, quotient, order })
    }

    fn module(&mut self) -> Result<Stmt> {
        let (name, _) = self.ident()?;
        self.expect_sym("=")?;
        let (kind, kp) = self.ident()?;
        let spec = match kind.as_str() {
            "coker" => {
                let p = self.expect_sym("[")?;
                let mut rows = vec![self.row()?];
                while self.eat_sym(",") {
                    rows.push(self.row()?);
                }
                self.expect_sym("]")?;
                ModuleSpec::Coker(rows, p)
            }
            "cyclic" => ModuleSpec::Cyclic(self.ideal_ref()?),
            "free" => ModuleSpec::Free(self.small_int::<usize>()?),
            _ => return Err(kp.error(format!("unknown module form `{kind}`; expected coker, cyclic or free"))),
        };
        let ring = if self.is_keyword("in") {
            self.next();
            Some(self.ident()?)
        } else {
            None
        };
        Ok(Stmt::Module { name, spec, ring })
    }

    fn row(&mut self) -> Result<Vec<Expr>> {
        self.expect_sym("[")?;
        let mut row = vec![self.expr()?];
        while self.eat_sym(",") {
            row.push(self.expr()?);
        }
        self.expect_sym("]")?;
        Ok(row)
    }

    fn seq(&mut self) -> Result<Stmt> {
        let (name, _) = self.ident()?;
        self.expect_sym("=")?;
        self.expect_sym("(")?;
        let mut entries = Vec::new();
        if !self.is_sym(")") {
            entries.push(self.seq_entry()?);
            while self.eat_sym(",") {
                entries.push(self.seq_entry()?);
            }
        }
        self.expect_sym(")")?;
        self.keyword("in")?;
        Ok(Stmt::Seq { name, entries, ring: self.ident()? })
    }

    fn seq_entry(&mut self) -> Result<Vec<IdealRef>> {
        if self.eat_sym("{") {
            let mut basis = vec![self.ideal_ref()?];
            while self.eat_sym(",") {
                basis.push(self.ideal_ref()?);
            }
            self.expect_sym("}")?;
            Ok(basis)
        } else {
            Ok(vec![self.ideal_ref()?])
        }
    }

    fn ideal_ref(&mut self) -> Result<IdealRef> {
        match self.peek() {
            Tok::Ident(_) => {
                let (n, p) = self.ident()?;
                Ok(IdealRef::Name(n, p))
            }
            _ => Ok(IdealRef::Literal(self.ideal_lit()?)),
        }
    }

    fn ideal_lit(&mut self) -> Result<IdealLit> {
        let pos = self.expect_sym("(")?;
        let mut generators = Vec::new();
        if !self.is_sym(")") {
            generators.push(self.expr()?);
            while self.eat_sym(",") {
                generators.push(self.expr()?);
            }
        }
        self.expect_sym(")")?;
        Ok(IdealLit { generators, pos })
    }

    fn command(&mut self, mut word: String) -> Result<Stmt> {
        if self.is_sym("-") {
            let save = self.i;
            self.next();
            if let Tok::Ident(tail) = self.peek().clone() {
                let joined = format!("{word}-{tail}");
                if HYPHENATED.contains(&joined.as_str()) {
                    self.next();
                    word = joined;
                } else {
                    self.i = save;
                }
            } else {
                self.i = save;
            }
        }
        let mut args = Vec::new();
        loop {
            let p = self.pos();
            let arg = match self.peek().clone() {
                Tok::Sym(";") | Tok::Eof => break,
                Tok::Ident(s) => {
                    self.next();
                    Arg::Name(s)
                }
                Tok::Int(_) => Arg::Int(self.small_int::<usize>()?),
                Tok::Sym("<=") => {
                    self.next();
                    Arg::Le
                }
                Tok::Sym("{") => {
                    self.next();
                    let mut names = vec![self.ident()?];
                    while self.eat_sym(",") {
                        names.push(self.ident()?);
                    }
                    self.expect_sym("}")?;
                    Arg::Set(names)
                }
                _ => return Err(self.unexpected("a command argument or `;`")),
            };
            args.push((arg, p));
        }
        Ok(Stmt::Command { word, args })
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut e = self.term()?;
        loop {
            if self.eat_sym("+") {
                e = Expr::Add(Box::new(e), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                e = Expr::Sub(Box::new(e), Box::new(self.term()?));
            } else {
                return Ok(e);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut e = self.unary()?;
        loop {
            if self.eat_sym("*") {
                e = Expr::Mul(Box::new(e), Box::new(self.unary()?));
            } else if self.is_sym("/") {
                self.next();
                let (d, p) = self.int()?;
                e = Expr::Div(Box::new(e), d, p);
            } else {
                return Ok(e);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat_sym("-") {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat_sym("^") {
            let k = self.small_int::<u32>()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Int(n) => {
                self.next();
                Ok(Expr::Int(n))
            }
            Tok::Ident(s) => {
                let p = self.next().1;
                Ok(Expr::Var(s, p))
            }
            Tok::Sym("(") => {
                self.next();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => Err(self.unexpected("a polynomial term")),
        }
    }
}

/// Parses a whole session file into located statements.
pub fn parse(text: &str) -> Result<Vec<Located>> {
    let mut p = Parser { toks: lex(text)?, i: 0 };
    let mut out = Vec::new();
    while *p.peek() != Tok::Eof {
        out.push(p.statement()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_pos(text: &str) -> (usize, usize) {
        match parse(text) {
            Err(Error::Parse { line, column, .. }) => (line, column),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn statements() {
        let s = parse("ring R = QQ[x,y] order degrevlex;\nring S = GF(5)[x]/(x^2);\nideal I = (x^2 - y, x*y - 1) in R;")
            .unwrap();
        assert_eq!(s.len(), 3);
        assert!(matches!(&s[1].stmt, Stmt::Ring { quotient, .. } if quotient.len() == 1));
        let c = parse("member-tilt T M; thomason I <= {J, K}; proreg I depth 4;").unwrap();
        assert!(matches!(&c[0].stmt, Stmt::Command { word, args } if word == "member-tilt" && args.len() == 2));
        assert!(matches!(&c[1].stmt, Stmt::Command { args, .. } if matches!(args[1].0, Arg::Le)));
    }

    #[test]
    fn error_positions() {
        assert_eq!(err_pos("ring R = QQ[x,y];\nideal I = (x,,y) in R;"), (2, 14));
        assert_eq!(err_pos("ring R = QQ[x] $;"), (1, 16));
        assert_eq!(err_pos("ring R = ZZ[x];"), (1, 10));
        assert_eq!(err_pos("ring R = QQ[x]"), (1, 15));
    }
}
