//! Sessions: named rings, ideals, modules and sequences, plus the commands
//! run over them. A session serializes back to canonical DSL text.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::coeff::Field;
use crate::dsl::{self, Arg, Expr, FieldSpec, IdealLit, IdealRef, ModuleSpec, Pos, Stmt};
use crate::error::{Error, Result};
use crate::koszul::{self, KoszulData};
use crate::matrix::FreeMap;
use crate::module::{self, FPModule, Subquotient};
use crate::poly::{MonomialOrder, Polynomial};
use crate::ring::{Ideal, Ring};
use crate::spectrum::{self, CharacteristicSequence, GabrielBasis, ThomasonSet};
use crate::towers::{self, Direction, PowerFunctor, Side};

/// Bounds on the expensive loops, with their defaults.
#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    /// Hilbert functions of reported groups are listed for degrees in
    /// `-max_degree..=max_degree`.
    pub max_degree: i64,
    pub tower_depth: usize,
    pub resolution_length: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_degree: 6, tower_depth: towers::DEFAULT_TOWER_DEPTH, resolution_length: module::DEFAULT_RESOLUTION_LENGTH }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub citations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub code: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    /// One-line human rendering for `--pretty`.
    #[serde(skip)]
    pub summary: String,
}

/// A failure while reading a session, with the position of the offending
/// statement or token.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SessionError {
    pub line: usize,
    pub column: usize,
    pub error: Error,
}

impl SessionError {
    fn at(pos: Pos, error: Error) -> Self {
        match error {
            Error::Parse { line, column, .. } => SessionError { line, column, error },
            e => SessionError { line: pos.line, column: pos.column, error: e },
        }
    }
    pub fn code(&self) -> &'static str {
        self.error.code()
    }
    pub fn message(&self) -> String {
        match &self.error {
            Error::Parse { message, .. } => message.clone(),
            e => e.to_string(),
        }
    }
    pub fn to_json(&self) -> Value {
        json!({
            "status": "error",
            "code": self.code(),
            "message": self.message(),
            "line": self.line,
            "column": self.column,
        })
    }
}

impl fmt::Display for SessionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message())
    }
}

impl std::error::Error for SessionError {}

type SResult<T> = std::result::Result<T, SessionError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Kind {
    Ring,
    Ideal,
    Module,
    Seq,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
            Kind::Seq => "sequence",
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum TowerKind {
    KoszulH,
    KoszulCoh,
    Ext,
    Tor,
}

#[derive(Clone, Debug)]
enum Command {
    Groebner(Ideal),
    Grade(Ideal, FPModule, Option<usize>),
    Koszul(Ideal, FPModule),
    Ext(Ideal, FPModule, usize),
    Tor(Ideal, FPModule, usize),
    Compare(Ideal, FPModule, usize),
    SModule(Ideal, usize),
    Thomason(Vec<Ideal>, Vec<Ideal>),
    Validate(CharacteristicSequence),
    MemberTilt(CharacteristicSequence, FPModule),
    MemberCotilt(CharacteristicSequence, FPModule),
    Resolving(CharacteristicSequence),
    Proreg(Ideal, Option<usize>),
    CechH(Ideal, FPModule, usize, Option<usize>),
    CechCoh(Ideal, FPModule, usize),
    Local(Ideal, FPModule, usize, Side, Option<usize>),
    Probe(Ring, Vec<Ideal>),
    Tower(Ideal, FPModule, usize, TowerKind, Option<usize>),
}

#[derive(Clone, Debug, Default)]
pub struct Session {
    seed: Option<u64>,
    lines: Vec<String>,
    rings: BTreeMap<String, Ring>,
    ideals: BTreeMap<String, Ideal>,
    modules: BTreeMap<String, FPModule>,
    seqs: BTreeMap<String, CharacteristicSequence>,
    commands: Vec<(String, Command)>,
}

impl Session {
    pub fn new() -> Self {
        Session::default()
    }

    /// Parses and elaborates a session file.
    pub fn parse(text: &str) -> SResult<Session> {
        let mut s = Session::new();
        s.extend(text)?;
        Ok(s)
    }

    /// Appends further statements to this session.
    pub fn extend(&mut self, text: &str) -> SResult<()> {
        let stmts = dsl::parse(text).map_err(|e| SessionError::at(Pos::default(), e))?;
        for st in stmts {
            self.elaborate(st.stmt, st.pos)?;
        }
        Ok(())
    }

    /// Canonical DSL text, one statement per line.
    pub fn serialize(&self) -> String {
        let mut s = String::new();
        for line in &self.lines {
            s.push_str(line);
            s.push('\n');
        }
        s
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn command_count(&self) -> usize {
        self.commands.len()
    }

    pub fn ring(&self, name: &str) -> Option<&Ring> {
        self.rings.get(name)
    }
    pub fn ideal(&self, name: &str) -> Option<&Ideal> {
        self.ideals.get(name)
    }
    pub fn module(&self, name: &str) -> Option<&FPModule> {
        self.modules.get(name)
    }
    pub fn sequence(&self, name: &str) -> Option<&CharacteristicSequence> {
        self.seqs.get(name)
    }

    fn kinds_of(&self, name: &str) -> Vec<Kind> {
        let mut k = Vec::new();
        if self.rings.contains_key(name) {
            k.push(Kind::Ring);
        }
        if self.ideals.contains_key(name) {
            k.push(Kind::Ideal);
        }
        if self.modules.contains_key(name) {
            k.push(Kind::Module);
        }
        if self.seqs.contains_key(name) {
            k.push(Kind::Seq);
        }
        k
    }

    fn lookup_error(&self, name: &str, expected: Kind, pos: Pos) -> SessionError {
        let err = match self.kinds_of(name).first() {
            Some(found) => Error::KindMismatch { name: name.into(), expected: expected.name(), found: found.name() },
            None => Error::UnknownName(name.into()),
        };
        SessionError::at(pos, err)
    }

    fn get_ring(&self, name: &str, pos: Pos) -> SResult<Ring> {
        self.rings.get(name).cloned().ok_or_else(|| self.lookup_error(name, Kind::Ring, pos))
    }
    fn get_ideal(&self, name: &str, pos: Pos) -> SResult<Ideal> {
        self.ideals.get(name).cloned().ok_or_else(|| self.lookup_error(name, Kind::Ideal, pos))
    }
    fn get_seq(&self, name: &str, pos: Pos) -> SResult<CharacteristicSequence> {
        self.seqs.get(name).cloned().ok_or_else(|| self.lookup_error(name, Kind::Seq, pos))
    }
    /// A module name, or a ring name standing for the ring as a module.
    fn get_module(&self, name: &str, pos: Pos) -> SResult<FPModule> {
        if let Some(m) = self.modules.get(name) {
            return Ok(m.clone());
        }
        if let Some(r) = self.rings.get(name) {
            return Ok(FPModule::free(r, 1));
        }
        Err(self.lookup_error(name, Kind::Module, pos))
    }

    fn declare(&self, kind: Kind, name: &str, pos: Pos) -> SResult<()> {
        if self.kinds_of(name).contains(&kind) {
            return Err(SessionError::at(pos, Error::Duplicate(name.into())));
        }
        Ok(())
    }

    fn elaborate(&mut self, stmt: Stmt, pos: Pos) -> SResult<()> {
        let at = |e: Error| SessionError::at(pos, e);
        match stmt {
            Stmt::Seed(s) => {
                self.seed = Some(s);
                self.lines.push(format!("seed {s};"));
            }
            Stmt::Ring { name, field, variables, quotient, order } => {
                self.declare(Kind::Ring, &name, pos)?;
                let field = match field {
                    FieldSpec::Rationals => Field::Rationals,
                    FieldSpec::Prime(p, pp) => {
                        let p = u64::try_from(p).map_err(|_| SessionError::at(pp, pp.error("characteristic out of range")))?;
                        Field::prime(p).map_err(|e| SessionError::at(pp, e))?
                    }
                };
                let order = match order {
                    None => MonomialOrder::default(),
                    Some((o, op)) => match o.as_str() {
                        "lex" => MonomialOrder::Lex,
                        "degrevlex" => MonomialOrder::DegRevLex,
                        _ => return Err(SessionError::at(op, op.error(format!("unknown monomial order `{o}`")))),
                    },
                };
                for (i, (v, vp)) in variables.iter().enumerate() {
                    if variables[..i].iter().any(|(w, _)| w == v) {
                        return Err(SessionError::at(*vp, vp.error(format!("variable `{v}` declared twice"))));
                    }
                }
                let base = Ring::new(field, variables.into_iter().map(|v| v.0).collect(), order).map_err(at)?;
                let rels = quotient.iter().map(|e| eval(&base, e)).collect::<SResult<Vec<_>>>()?;
                let ring = if rels.is_empty() { base } else { base.quotient(rels).map_err(at)? };
                self.lines.push(format!("ring {name} = {} order {};", ring.describe(), ring.order().name()));
                self.rings.insert(name, ring);
            }
            Stmt::Ideal { name, ideal, ring } => {
                self.declare(Kind::Ideal, &name, pos)?;
                let r = self.get_ring(&ring.0, ring.1)?;
                let i = eval_ideal(&r, &ideal)?;
                self.lines.push(format!("ideal {name} = {} in {};", i.format(), ring.0));
                self.ideals.insert(name, i);
            }
            Stmt::Module { name, spec, ring } => {
                self.declare(Kind::Module, &name, pos)?;
                let ring = match ring {
                    Some((r, rp)) => Some((r.clone(), self.get_ring(&r, rp)?)),
                    None => None,
                };
                let need_ring = |what: &str| {
                    ring.clone().ok_or_else(|| at(pos.error(format!("`{what}` modules need `in <ring>`"))))
                };
                let (m, text) = match spec {
                    ModuleSpec::Free(n) => {
                        let (rn, r) = need_ring("free")?;
                        (FPModule::free(&r, n), format!("free {n} in {rn}"))
                    }
                    ModuleSpec::Coker(rows, mp) => {
                        let (rn, r) = need_ring("coker")?;
                        let cols = rows[0].len();
                        if rows.iter().any(|row| row.len() != cols) {
                            return Err(SessionError::at(mp, mp.error("matrix rows have different lengths")));
                        }
                        let entries = rows
                            .iter()
                            .map(|row| row.iter().map(|e| eval(&r, e)).collect::<SResult<Vec<_>>>())
                            .collect::<SResult<Vec<_>>>()?;
                        let f = FreeMap::new(&r, rows.len(), cols, entries).map_err(at)?;
                        let text = format!("coker {} in {rn}", format_matrix(&f));
                        (FPModule::new(f), text)
                    }
                    ModuleSpec::Cyclic(IdealRef::Name(n, np)) => {
                        let i = self.get_ideal(&n, np)?;
                        let mut text = format!("cyclic {n}");
                        if let Some((rn, r)) = &ring {
                            if r != i.ring() {
                                return Err(at(Error::RingMismatch));
                            }
                            text.push_str(&format!(" in {rn}"));
                        }
                        (FPModule::cyclic(&i), text)
                    }
                    ModuleSpec::Cyclic(IdealRef::Literal(lit)) => {
                        let (rn, r) = need_ring("cyclic")?;
                        let i = eval_ideal(&r, &lit)?;
                        (FPModule::cyclic(&i), format!("cyclic {} in {rn}", i.format()))
                    }
                };
                self.lines.push(format!("module {name} = {text};"));
                self.modules.insert(name, m);
            }
            Stmt::Seq { name, entries, ring } => {
                self.declare(Kind::Seq, &name, pos)?;
                let r = self.get_ring(&ring.0, ring.1)?;
                let mut bases = Vec::new();
                let mut texts = Vec::new();
                for entry in &entries {
                    let mut ideals = Vec::new();
                    for iref in entry {
                        let i = match iref {
                            IdealRef::Name(n, np) => self.get_ideal(n, *np)?,
                            IdealRef::Literal(lit) => eval_ideal(&r, lit)?,
                        };
                        if i.ring() != &r {
                            return Err(at(Error::RingMismatch));
                        }
                        ideals.push(i);
                    }
                    let t: Vec<String> = ideals.iter().map(|i| i.format()).collect();
                    texts.push(if t.len() == 1 { t[0].clone() } else { format!("{{{}}}", t.join(", ")) });
                    bases.push(GabrielBasis::new(&r, ideals).map_err(at)?);
                }
                let seq = CharacteristicSequence::new(&r, bases).map_err(at)?;
                self.lines.push(format!("seq {name} = ({}) in {};", texts.join(", "), ring.0));
                self.seqs.insert(name, seq);
            }
            Stmt::Command { word, args } => {
                let text = command_text(&word, &args);
                let cmd = self.elaborate_command(&word, &args, pos)?;
                self.lines.push(format!("{text};"));
                self.commands.push((text, cmd));
            }
        }
        Ok(())
    }

    fn elaborate_command(&self, word: &str, args: &[(Arg, Pos)], pos: Pos) -> SResult<Command> {
        let mut a = Args { s: self, args, i: 0, pos };
        let cmd = match word {
            "groebner" => Command::Groebner(a.ideal()?),
            "grade" => {
                let i = a.ideal()?;
                let m = a.module_over(i.ring())?;
                Command::Grade(i, m, a.keyword_int("bound")?)
            }
            "koszul" => {
                let i = a.ideal()?;
                let m = if a.done() { FPModule::free(i.ring(), 1) } else { a.module_over(i.ring())? };
                Command::Koszul(i, m)
            }
            "ext" | "tor" | "compare" => {
                let i = a.ideal()?;
                let m = a.module_over(i.ring())?;
                let n = a.int()?;
                match word {
                    "ext" => Command::Ext(i, m, n),
                    "tor" => Command::Tor(i, m, n),
                    _ => Command::Compare(i, m, n),
                }
            }
            "smodule" => {
                let i = a.ideal()?;
                Command::SModule(i, a.int()?)
            }
            "thomason" => {
                let lhs = a.ideal_set()?;
                a.le()?;
                let rhs = a.ideal_set()?;
                if lhs.iter().chain(&rhs).any(|i| i.ring() != lhs.first().unwrap_or(&rhs[0]).ring()) {
                    return Err(SessionError::at(pos, Error::RingMismatch));
                }
                Command::Thomason(lhs, rhs)
            }
            "validate" => Command::Validate(a.seq()?),
            "resolving" => Command::Resolving(a.seq()?),
            "member-tilt" | "member-cotilt" => {
                let t = a.seq()?;
                let m = a.module_over(t.ring())?;
                if word == "member-tilt" {
                    Command::MemberTilt(t, m)
                } else {
                    Command::MemberCotilt(t, m)
                }
            }
            "proreg" => {
                let i = a.ideal()?;
                Command::Proreg(i, a.keyword_int("depth")?)
            }
            "cech-h" | "cech-coh" | "local-h" | "local-coh" => {
                let i = a.ideal()?;
                let m = a.module_over(i.ring())?;
                let n = a.int()?;
                match word {
                    "cech-coh" => Command::CechCoh(i, m, n),
                    "cech-h" => Command::CechH(i, m, n, a.keyword_int("depth")?),
                    "local-h" => Command::Local(i, m, n, Side::Homology, a.keyword_int("depth")?),
                    _ => Command::Local(i, m, n, Side::Cohomology, a.keyword_int("depth")?),
                }
            }
            "probe" => {
                let r = a.ring()?;
                let mut cands = Vec::new();
                while !a.done() {
                    let i = a.ideal()?;
                    if i.ring() != &r {
                        return Err(SessionError::at(pos, Error::RingMismatch));
                    }
                    cands.push(i);
                }
                Command::Probe(r, cands)
            }
            "tower" => {
                let i = a.ideal()?;
                let m = a.module_over(i.ring())?;
                let n = a.int()?;
                let kind = match a.word()?.as_str() {
                    "koszul" => TowerKind::KoszulH,
                    "koszul-coh" | "cokoszul" => TowerKind::KoszulCoh,
                    "ext" => TowerKind::Ext,
                    "tor" => TowerKind::Tor,
                    w => return Err(SessionError::at(pos, pos.error(format!("unknown tower kind `{w}`")))),
                };
                Command::Tower(i, m, n, kind, a.keyword_int("depth")?)
            }
            _ => return Err(SessionError::at(pos, pos.error(format!("unknown command `{word}`")))),
        };
        a.finish()?;
        Ok(cmd)
    }

    /// Runs every command in order.
    pub fn run_all(&self, opts: &RunOptions) -> Vec<CommandResult> {
        (0..self.commands.len()).map(|k| self.run(k, opts)).collect()
    }

    /// Runs the `k`-th command.
    pub fn run(&self, k: usize, opts: &RunOptions) -> CommandResult {
        let (text, cmd) = &self.commands[k];
        match dispatch(cmd, opts) {
            Ok((payload, citations, summary)) => CommandResult {
                command: text.clone(),
                status: Status::Ok,
                payload,
                citations: citations.into_iter().map(String::from).collect(),
                code: None,
                message: None,
                summary,
            },
            Err(e) => CommandResult {
                command: text.clone(),
                status: Status::Error,
                payload: Value::Null,
                citations: vec![],
                code: Some(e.code().into()),
                message: Some(e.to_string()),
                summary: format!("error [{}]: {e}", e.code()),
            },
        }
    }
}

struct Args<'a> {
    s: &'a Session,
    args: &'a [(Arg, Pos)],
    i: usize,
    pos: Pos,
}

impl Args<'_> {
    fn done(&self) -> bool {
        self.i >= self.args.len()
    }
    fn here(&self) -> Pos {
        self.args.get(self.i).map(|a| a.1).unwrap_or(self.pos)
    }
    fn fail(&self, msg: String) -> SessionError {
        let p = self.here();
        SessionError::at(p, p.error(msg))
    }
    fn name(&mut self, what: &str) -> SResult<(String, Pos)> {
        match self.args.get(self.i) {
            Some((Arg::Name(n), p)) => {
                self.i += 1;
                Ok((n.clone(), *p))
            }
            _ => Err(self.fail(format!("expected {what}"))),
        }
    }
    fn word(&mut self) -> SResult<String> {
        Ok(self.name("a word")?.0)
    }
    fn ideal(&mut self) -> SResult<Ideal> {
        let (n, p) = self.name("an ideal name")?;
        self.s.get_ideal(&n, p)
    }
    fn ring(&mut self) -> SResult<Ring> {
        let (n, p) = self.name("a ring name")?;
        self.s.get_ring(&n, p)
    }
    fn seq(&mut self) -> SResult<CharacteristicSequence> {
        let (n, p) = self.name("a sequence name")?;
        self.s.get_seq(&n, p)
    }
    fn module_over(&mut self, ring: &Ring) -> SResult<FPModule> {
        let (n, p) = self.name("a module or ring name")?;
        let m = self.s.get_module(&n, p)?;
        if m.ring() != ring {
            return Err(SessionError::at(p, Error::RingMismatch));
        }
        Ok(m)
    }
    fn ideal_set(&mut self) -> SResult<Vec<Ideal>> {
        match self.args.get(self.i) {
            Some((Arg::Set(names), _)) => {
                self.i += 1;
                names.iter().map(|(n, p)| self.s.get_ideal(n, *p)).collect()
            }
            _ => Ok(vec![self.ideal()?]),
        }
    }
    fn le(&mut self) -> SResult<()> {
        match self.args.get(self.i) {
            Some((Arg::Le, _)) => {
                self.i += 1;
                Ok(())
            }
            _ => Err(self.fail("expected `<=`".into())),
        }
    }
    fn int(&mut self) -> SResult<usize> {
        match self.args.get(self.i) {
            Some((Arg::Int(n), _)) => {
                self.i += 1;
                Ok(*n)
            }
            _ => Err(self.fail("expected an integer".into())),
        }
    }
    fn keyword_int(&mut self, kw: &str) -> SResult<Option<usize>> {
        match self.args.get(self.i) {
            Some((Arg::Name(n), _)) if n == kw => {
                self.i += 1;
                Ok(Some(self.int()?))
            }
            _ => Ok(None),
        }
    }
    fn finish(&self) -> SResult<()> {
        if self.done() {
            Ok(())
        } else {
            Err(self.fail("unexpected extra argument".into()))
        }
    }
}

fn command_text(word: &str, args: &[(Arg, Pos)]) -> String {
    let mut parts = vec![word.to_string()];
    for (a, _) in args {
        parts.push(match a {
            Arg::Name(n) => n.clone(),
            Arg::Int(n) => n.to_string(),
            Arg::Le => "<=".into(),
            Arg::Set(ns) => format!("{{{}}}", ns.iter().map(|n| n.0.as_str()).collect::<Vec<_>>().join(", ")),
        });
    }
    parts.join(" ")
}

fn format_matrix(f: &FreeMap) -> String {
    let rows: Vec<String> = f.to_strings().into_iter().map(|r| format!("[{}]", r.join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn eval(ring: &Ring, e: &Expr) -> SResult<Polynomial> {
    let field = ring.field();
    Ok(match e {
        Expr::Int(n) => ring.constant(field.from_bigint(n)),
        Expr::Var(v, p) => ring.var_named(v).ok_or_else(|| SessionError::at(*p, p.error(format!("unknown variable `{v}`"))))?,
        Expr::Neg(a) => eval(ring, a)?.neg(),
        Expr::Add(a, b) => eval(ring, a)?.add(&eval(ring, b)?),
        Expr::Sub(a, b) => eval(ring, a)?.sub(&eval(ring, b)?),
        Expr::Mul(a, b) => eval(ring, a)?.mul(&eval(ring, b)?),
        Expr::Div(a, d, p) => {
            let c = field.from_bigint(d);
            if c.is_zero() {
                return Err(SessionError::at(*p, p.error("division by zero")));
            }
            eval(ring, a)?.scale(&c.inv())
        }
        Expr::Pow(a, k) => eval(ring, a)?.pow(*k),
    })
}

fn eval_ideal(ring: &Ring, lit: &IdealLit) -> SResult<Ideal> {
    let gens = lit.generators.iter().map(|e| eval(ring, e)).collect::<SResult<Vec<_>>>()?;
    Ideal::new(ring, gens).map_err(|e| SessionError::at(lit.pos, e))
}

fn group_json(g: &Subquotient, opts: &RunOptions) -> Value {
    let m = g.module();
    let mut v = json!({ "zero": m.is_zero(), "module": m.record() });
    if let Some(h) = m.hilbert_function(-opts.max_degree, opts.max_degree) {
        v["hilbert"] = json!({ "from": -opts.max_degree, "values": h });
    }
    v
}

fn zero_word(z: bool) -> &'static str {
    if z {
        "0"
    } else {
        "nonzero"
    }
}

type Dispatched = (Value, Vec<&'static str>, String);

fn dispatch(cmd: &Command, opts: &RunOptions) -> Result<Dispatched> {
    let limit = opts.resolution_length;
    let depth = |d: &Option<usize>| d.unwrap_or(opts.tower_depth);
    Ok(match cmd {
        Command::Groebner(i) => {
            let basis: Vec<String> = i.groebner().iter().map(|p| i.ring().format(p)).collect();
            let summary = format!("[{}]", basis.join(", "));
            (json!({ "ideal": i.format(), "basis": basis, "unit": i.is_unit() }), vec!["reduced Gröbner basis (Buchberger)"], summary)
        }
        Command::Grade(i, m, bound) => {
            let b = bound.unwrap_or_else(|| koszul::default_grade_bound(i));
            let r = koszul::grade(i, m, b)?;
            let summary = r.grade.to_string();
            (
                serde_json::to_value(&r).expect("serializable"),
                vec!["grade = least i with H^i(I; M) != 0", "grade = least i with Ext^i(R/I, M) != 0"],
                summary,
            )
        }
        Command::Koszul(i, m) => {
            let k = KoszulData::new(i);
            let mut groups = Vec::new();
            let mut zeros = Vec::new();
            for idx in 0..=k.len() {
                let h = k.homology(m, idx)?;
                zeros.push(format!("H_{idx} {}", zero_word(h.is_zero())));
                let mut g = group_json(&h, opts);
                g["index"] = json!(idx);
                groups.push(g);
            }
            let payload = json!({ "complex": k.complex().record(), "homology": groups });
            (payload, vec!["Koszul complex as a tensor product of two-term complexes"], zeros.join(", "))
        }
        Command::Ext(i, m, n) | Command::Tor(i, m, n) => {
            let is_ext = matches!(cmd, Command::Ext(..));
            let g = if is_ext {
                module::ext(&FPModule::cyclic(i), m, *n, limit)?
            } else {
                module::tor(&FPModule::cyclic(i), m, *n, limit)?
            };
            let name = if is_ext { format!("Ext^{n}") } else { format!("Tor_{n}") };
            let summary = format!("{name}(R/I, M) {}", zero_word(g.is_zero()));
            let mut payload = group_json(&g, opts);
            payload["index"] = json!(n);
            let cite = if is_ext { "Ext as cohomology of Hom(F, M)" } else { "Tor as homology of F ⊗ M" };
            (payload, vec![cite], summary)
        }
        Command::Compare(i, m, n) => {
            let (report, _) = koszul::compare_ext_koszul(i, m, *n)?;
            let summary = format!("hypothesis {}, iso {}", report.hypothesis_holds, report.verdict.iso);
            let payload = serde_json::to_value(&report).expect("serializable");
            (payload, vec!["comparison of Ext^n(R/I, M) with H^n(I; M) under Ext^{<n}(R/I, M) = 0"], summary)
        }
        Command::SModule(i, n) => {
            let s = koszul::s_module(i, *n)?;
            let r = koszul::s_module_pd_check(i, *n, limit)?;
            let summary = r.verdict.status.to_string();
            (
                json!({ "module": s.module.record(), "report": r }),
                vec!["S_{I,n} as the cokernel of the dual Koszul differential", "pd from a minimal resolution"],
                summary,
            )
        }
        Command::Thomason(lhs, rhs) => {
            let ring = lhs.first().unwrap_or(&rhs[0]).ring();
            let x = ThomasonSet::new(ring, lhs.clone())?;
            let y = ThomasonSet::new(ring, rhs.clone())?;
            let holds = spectrum::thomason_contains(&y, &x)?;
            (
                json!({ "lhs": x.record(), "rhs": y.record(), "contained": holds }),
                vec!["V(J) ⊆ V(I) iff J ⊆ √I"],
                holds.to_string(),
            )
        }
        Command::Validate(t) => {
            let r = spectrum::validate_characteristic_sequence(t, limit)?;
            let summary = if r.valid {
                "valid".to_string()
            } else {
                let f: Vec<String> = r.failures.iter().map(|f| format!("({}, {}, {})", f.i, f.ideal, f.j)).collect();
                format!("invalid: {}", f.join(", "))
            };
            (serde_json::to_value(&r).expect("serializable"), vec!["characteristic sequence conditions"], summary)
        }
        Command::MemberTilt(t, m) | Command::MemberCotilt(t, m) => {
            let tilt = matches!(cmd, Command::MemberTilt(..));
            ensure_validated(t, limit)?;
            let r = if tilt { spectrum::tilting_membership(t, m)? } else { spectrum::cotilting_membership(t, m)? };
            let cite = if tilt {
                "tilting class: Tor_i(R/I, M) = 0 for I in G_i"
            } else {
                "cotilting class: Ext^i(R/I, M) = 0 for I in G_i"
            };
            let summary = if r.member { "member".to_string() } else { "not a member".to_string() };
            (serde_json::to_value(&r).expect("serializable"), vec![cite], summary)
        }
        Command::Resolving(t) => {
            ensure_validated(t, limit)?;
            let gens = spectrum::resolving_generators(t, limit)?;
            let list: Vec<Value> = gens
                .iter()
                .map(|g| {
                    json!({
                        "i": g.i,
                        "basis_index": g.basis_index,
                        "ideal": g.module.ideal.format(),
                        "k": g.module.k,
                        "module": g.module.module.record(),
                        "pd": g.pd,
                    })
                })
                .collect();
            let summary = format!("{} generators", list.len());
            (json!({ "generators": list }), vec!["resolving subcategory generated by S_{I,i+1}"], summary)
        }
        Command::Proreg(i, d) => {
            let r = towers::weakly_proregular_upto(i, depth(d))?;
            let summary = if r.all_pro_zero { "pro-zero".to_string() } else { "inconclusive".to_string() };
            (
                serde_json::to_value(&r).expect("serializable"),
                vec!["weak proregularity: H_i(x^j; R) pro-zero for i > 0"],
                summary,
            )
        }
        Command::CechH(i, m, n, d) => {
            let v = towers::cech_homology_vanishes(i, m, *n, depth(d))?;
            vanishing(v, "Čech homology through Koszul homology")
        }
        Command::CechCoh(i, m, n) => {
            let v = towers::cech_cohomology_vanishes(i, m, *n)?;
            vanishing(v, "Čech cohomology through Koszul cohomology")
        }
        Command::Local(i, m, n, side, d) => {
            let v = towers::local_vanishing(i, m, *n, *side, depth(d))?;
            let cite = match side {
                Side::Homology => "local homology through Tor_i(R/I, M)",
                Side::Cohomology => "local cohomology through Ext^i(R/I, M)",
            };
            vanishing(v, cite)
        }
        Command::Probe(r, cands) => {
            let cands = if cands.is_empty() {
                (0..r.nvars()).map(|k| Ideal::new(r, vec![r.var(k)])).collect::<Result<Vec<_>>>()?
            } else {
                cands.clone()
            };
            let p = spectrum::perfect_ring_triviality_probe(r, &cands)?;
            let summary = if p.consistent { "consistent".to_string() } else { "contradiction".to_string() };
            (
                serde_json::to_value(&p).expect("serializable"),
                vec!["over a perfect ring Hom(R/I, R) != 0 for proper I"],
                summary,
            )
        }
        Command::Tower(i, m, n, kind, d) => {
            let dd = depth(d);
            let t = match kind {
                TowerKind::KoszulH => towers::koszul_power_tower(i, m, *n, towers::WITNESS_HORIZON * dd, false)?,
                TowerKind::KoszulCoh => towers::koszul_power_tower(i, m, *n, dd, true)?,
                TowerKind::Ext => towers::ideal_power_tower(i, m, *n, dd, PowerFunctor::Ext)?,
                TowerKind::Tor => towers::ideal_power_tower(i, m, *n, towers::WITNESS_HORIZON * dd, PowerFunctor::Tor)?,
            };
            let mut payload = serde_json::to_value(t.record()).expect("serializable");
            let mut summary = format!("{} levels", t.depth());
            if t.direction() == Direction::Inverse {
                let v = towers::pro_zero_upto(&t, dd)?;
                summary = format!("pro-zero up to {}: {}", v.levels, v.pro_zero_upto);
                payload["verdicts"] = json!([v]);
            } else {
                payload["verdicts"] = json!([]);
            }
            (payload, vec!["towers indexed by generator or ideal powers"], summary)
        }
    })
}

fn vanishing(v: towers::VanishingVerdict, cite: &'static str) -> Dispatched {
    let summary = serde_json::to_value(v.value).expect("serializable").as_str().unwrap_or_default().to_string();
    (serde_json::to_value(&v).expect("serializable"), vec![cite], summary)
}

fn ensure_validated(t: &CharacteristicSequence, limit: usize) -> Result<()> {
    if t.validation().is_none() {
        spectrum::validate_characteristic_sequence(t, limit)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "ring R = QQ[x,y];\nideal I = (x,y) in R;\nmodule M = coker [[x, y]] in R;\n\
        seq T = ((x,y),(x,y)) in R;\nseq U = ((x),(x)) in R;\ngrade I R;\nvalidate T;\nvalidate U;\nproreg I depth 4;\n";

    #[test]
    fn round_trip() {
        let s = Session::parse(SAMPLE).unwrap();
        let once = s.serialize();
        let twice = Session::parse(&once).unwrap().serialize();
        assert_eq!(once, twice);
        assert!(once.starts_with("ring R = QQ[x,y] order degrevlex;\n"));
    }

    #[test]
    fn runs_examples() {
        let s = Session::parse(SAMPLE).unwrap();
        let out = s.run_all(&RunOptions::default());
        assert!(out.iter().all(|r| r.status == Status::Ok), "{out:?}");
        assert_eq!(out[0].payload["grade"], json!(2));
        assert_eq!(out[1].payload["valid"], json!(true));
        assert_eq!(out[2].payload["valid"], json!(false));
        let f = &out[2].payload["failures"][0];
        assert_eq!((f["i"].clone(), f["ideal"].clone(), f["j"].clone()), (json!(1), json!("(x)"), json!(1)));
        assert_eq!(out[3].payload["all_pro_zero"], json!(true));
    }

    #[test]
    fn name_errors() {
        let e = Session::parse("ring R = QQ[x];\ngrade J R;").unwrap_err();
        assert_eq!((e.code(), e.line, e.column), ("unknown-name", 2, 7));
        let e = Session::parse("ring R = QQ[x];\nideal I = (x) in R;\ngroebner R;").unwrap_err();
        assert_eq!(e.code(), "kind-mismatch");
        let e = Session::parse("ring R = QQ[x];\nring R = QQ[y];").unwrap_err();
        assert_eq!(e.code(), "duplicate-name");
        let e = Session::parse("ring R = QQ[x];\nideal I = (z) in R;").unwrap_err();
        assert_eq!((e.code(), e.line, e.column), ("parse-error", 2, 12));
        let e = Session::parse("ring R = GF(6)[x];").unwrap_err();
        assert_eq!(e.code(), "invalid-argument");
    }

    #[test]
    fn prime_field_and_quotients() {
        let s = Session::parse("ring S = GF(5)[x]/(x^2);\nideal I = (x) in S;\nprobe S I;\nideal J = (2*x/3 + 1) in S;").unwrap();
        let out = s.run_all(&RunOptions::default());
        assert_eq!(out[0].payload["consistent"], json!(true));
        assert!(s.serialize().contains("ideal J = (4*x + 1) in S;"));
    }
}
