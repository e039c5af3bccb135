//! User-defined q-congruence cases read from JSON.
//!
//! ```json
//! { "cases": [ {
//!     "id": "my-t1a", "kind": "q-congruence", "params": ["n"],
//!     "bracket": {"u": 4, "v": 1, "s": 1},
//!     "pochhammers": [{"a": 1, "d": 2, "e": 2}, {"a": 2, "d": 2, "e": -2}],
//!     "qpower": {"alpha": "0", "beta": "-1"},
//!     "range": {"from": 0, "to": "n-1"},
//!     "rhs": [[1, "1"]], "rhs_bracket": [["n", 2]],
//!     "modulus": {"cyclotomic": [["n", 1]], "bracket": [["n", 2]]},
//!     "constraints": "odd(n), n > 1"
//! } ] }
//! ```
//!
//! Every numeric field is either a JSON integer or a string holding an
//! expression in the declared parameters: integers, `+ - * / %`, parentheses
//! and `gcd`, `min`, `max`, `abs`. Division is exact over the rationals; `%`
//! is the nonnegative remainder. `rhs` lists `[exponent, coefficient]` terms
//! and is multiplied by `Π [m]^f` over `rhs_bracket`. A pochhammer may carry
//! `"negated": true` for `(-q^a; q^d)_k`.
//!
//! `constraints` is a list of clauses separated by `,`, `;` or `and`:
//! comparisons `x < y`, `x <= y`, `x == y`, `x != y` (also `≤ ≥ ≠`), linear
//! congruences `x == y mod m` (or `x ≡ y mod m`), and the predicates
//! `odd(x)`, `even(x)`, `prime(x)`.

use std::path::Path;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Deserialize;

use super::{CaseDef, CaseKind, Instance, Params};
use crate::arith::{format_rational, gcd_i64, int, is_prime, parse_rational, Rational};
use crate::congruence::ModulusSpec;
use crate::error::{Error, Result};
use crate::qpoly::LaurentPoly;
use crate::qseries::{q_integer, BracketFactor, QPochhammerFactor, QPowerFactor, TruncatedSumSpec};

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Call(String, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Clause {
    Cmp(Expr, String, Expr),
    ModEq(Expr, Expr, Expr),
    Pred(String, Expr),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Sym(String),
}

fn tokenize(s: &str) -> std::result::Result<Vec<Tok>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().map_err(|_| format!("integer `{text}` out of range"))?));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else {
            let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
            let sym = match two.as_str() {
                "==" | "!=" | "<=" | ">=" => {
                    i += 2;
                    two
                }
                _ => {
                    i += 1;
                    match c {
                        '+' | '-' | '*' | '/' | '%' | '(' | ')' | ',' | ';' | '<' | '>' => c.to_string(),
                        '=' | '≡' => "==".into(),
                        '≤' => "<=".into(),
                        '≥' => ">=".into(),
                        '≠' => "!=".into(),
                        '−' => "-".into(),
                        _ => return Err(format!("unexpected character `{c}`")),
                    }
                }
            };
            out.push(Tok::Sym(sym));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(x)) if x == s)
    }

    fn expect(&mut self, s: &str) -> std::result::Result<(), String> {
        if self.is_sym(s) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!("expected `{s}`"))
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.term()?;
        while let Some(Tok::Sym(s)) = self.peek() {
            let op = match s.as_str() {
                "+" => '+',
                "-" => '-',
                _ => break,
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.term()?));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> std::result::Result<Expr, String> {
        let mut lhs = self.unary()?;
        while let Some(Tok::Sym(s)) = self.peek() {
            let op = match s.as_str() {
                "*" => '*',
                "/" => '/',
                "%" => '%',
                _ => break,
            };
            self.pos += 1;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> std::result::Result<Expr, String> {
        if self.is_sym("-") {
            self.pos += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.is_sym("+") {
            self.pos += 1;
            return self.unary();
        }
        self.atom()
    }

    fn atom(&mut self) -> std::result::Result<Expr, String> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Expr::Num(int(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.is_sym("(") {
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.is_sym(",") {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(")")?;
                    Ok(Expr::Call(name, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Sym(s)) if s == "(" => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(")")?;
                Ok(e)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }

    fn clause(&mut self) -> std::result::Result<Clause, String> {
        if let Some(Tok::Ident(name)) = self.peek().cloned() {
            if matches!(name.as_str(), "odd" | "even" | "prime") && matches!(self.toks.get(self.pos + 1), Some(Tok::Sym(s)) if s == "(") {
                self.pos += 2;
                let e = self.expr()?;
                self.expect(")")?;
                return Ok(Clause::Pred(name, e));
            }
        }
        let lhs = self.expr()?;
        let op = match self.peek() {
            Some(Tok::Sym(s)) if matches!(s.as_str(), "==" | "!=" | "<" | "<=" | ">" | ">=") => s.clone(),
            _ => return Err("expected a comparison".into()),
        };
        self.pos += 1;
        let rhs = self.expr()?;
        if matches!(self.peek(), Some(Tok::Ident(m)) if m == "mod") {
            if op != "==" {
                return Err("`mod` needs `==` or `≡`".into());
            }
            self.pos += 1;
            let m = self.expr()?;
            return Ok(Clause::ModEq(lhs, rhs, m));
        }
        Ok(Clause::Cmp(lhs, op, rhs))
    }

    fn at_separator(&self) -> bool {
        self.is_sym(",") || self.is_sym(";") || matches!(self.peek(), Some(Tok::Ident(s)) if s == "and")
    }
}

fn parse_expr(s: &str) -> std::result::Result<Expr, String> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input in `{s}`"));
    }
    Ok(e)
}

fn parse_constraints(s: &str) -> std::result::Result<Vec<Clause>, String> {
    let mut p = Parser { toks: tokenize(s)?, pos: 0 };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.clause()?);
        if p.peek().is_none() {
            break;
        }
        if !p.at_separator() {
            return Err("expected `,`, `;` or `and` between clauses".into());
        }
        p.pos += 1;
    }
    Ok(out)
}

fn as_int(x: &Rational, what: &str) -> std::result::Result<i64, String> {
    if !x.is_integer() {
        return Err(format!("{what} = {} is not an integer", format_rational(x)));
    }
    i64::try_from(x.to_integer()).map_err(|_| format!("{what} out of range"))
}

impl Expr {
    fn eval(&self, p: &Params) -> std::result::Result<Rational, String> {
        Ok(match self {
            Expr::Num(v) => v.clone(),
            Expr::Var(name) => int(*p.get(name).ok_or_else(|| format!("unknown parameter `{name}`"))?),
            Expr::Neg(e) => -e.eval(p)?,
            Expr::Bin(op, a, b) => {
                let (x, y) = (a.eval(p)?, b.eval(p)?);
                match op {
                    '+' => x + y,
                    '-' => x - y,
                    '*' => x * y,
                    '/' => {
                        if y.is_zero() {
                            return Err("division by zero".into());
                        }
                        x / y
                    }
                    _ => {
                        let (x, y) = (as_int(&x, "left operand of %")?, as_int(&y, "modulus of %")?);
                        if y == 0 {
                            return Err("remainder by zero".into());
                        }
                        int(x.rem_euclid(y))
                    }
                }
            }
            Expr::Call(f, args) => {
                let vals = args.iter().map(|a| a.eval(p)).collect::<std::result::Result<Vec<_>, _>>()?;
                match (f.as_str(), vals.as_slice()) {
                    ("gcd", [a, b]) => int(gcd_i64(as_int(a, "gcd argument")?, as_int(b, "gcd argument")?)),
                    ("min", [a, b]) => a.clone().min(b.clone()),
                    ("max", [a, b]) => a.clone().max(b.clone()),
                    ("abs", [a]) => a.abs(),
                    _ => return Err(format!("unknown function `{f}` with {} argument(s)", vals.len())),
                }
            }
        })
    }

    fn eval_int(&self, p: &Params, what: &str) -> std::result::Result<i64, String> {
        as_int(&self.eval(p)?, what)
    }

    fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => out.push(v.clone()),
            Expr::Neg(e) => e.vars(out),
            Expr::Bin(_, a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.vars(out)),
        }
    }
}

impl Clause {
    fn holds(&self, p: &Params) -> std::result::Result<bool, String> {
        Ok(match self {
            Clause::Cmp(a, op, b) => {
                let (x, y) = (a.eval(p)?, b.eval(p)?);
                match op.as_str() {
                    "==" => x == y,
                    "!=" => x != y,
                    "<" => x < y,
                    "<=" => x <= y,
                    ">" => x > y,
                    _ => x >= y,
                }
            }
            Clause::ModEq(a, b, m) => {
                let m = m.eval_int(p, "modulus")?;
                if m == 0 {
                    return Err("congruence modulo 0".into());
                }
                (a.eval_int(p, "congruence side")? - b.eval_int(p, "congruence side")?).rem_euclid(m) == 0
            }
            Clause::Pred(name, e) => {
                let v = e.eval_int(p, name)?;
                match name.as_str() {
                    "odd" => v.rem_euclid(2) == 1,
                    "even" => v.rem_euclid(2) == 0,
                    _ => is_prime(v),
                }
            }
        })
    }

    fn vars(&self, out: &mut Vec<String>) {
        match self {
            Clause::Cmp(a, _, b) => {
                a.vars(out);
                b.vars(out);
            }
            Clause::ModEq(a, b, m) => {
                a.vars(out);
                b.vars(out);
                m.vars(out);
            }
            Clause::Pred(_, e) => e.vars(out),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Field {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBracket {
    u: Field,
    v: Field,
    #[serde(default)]
    s: Option<Field>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPochhammer {
    a: Field,
    d: Field,
    e: Field,
    #[serde(default)]
    negated: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQPower {
    #[serde(default)]
    alpha: Option<Field>,
    #[serde(default)]
    beta: Option<Field>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRange {
    #[serde(default)]
    from: Option<Field>,
    to: Field,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawModulus {
    #[serde(default)]
    cyclotomic: Vec<(Field, Field)>,
    #[serde(default)]
    bracket: Vec<(Field, Field)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCase {
    id: String,
    kind: String,
    #[serde(default)]
    params: Vec<String>,
    #[serde(default)]
    conjecture: bool,
    #[serde(default)]
    bracket: Option<RawBracket>,
    #[serde(default)]
    pochhammers: Vec<RawPochhammer>,
    #[serde(default)]
    qpower: Option<RawQPower>,
    range: RawRange,
    #[serde(default)]
    rhs: Vec<(Field, Field)>,
    #[serde(default)]
    rhs_bracket: Vec<(Field, Field)>,
    modulus: RawModulus,
    #[serde(default)]
    constraints: String,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawFile {
    List(Vec<RawCase>),
    Doc { cases: Vec<RawCase> },
}

/// A parsed custom case; every field is an expression in `params`.
#[derive(Debug, Clone)]
pub struct CustomCase {
    pub id: String,
    pub params: Vec<String>,
    pub conjecture: bool,
    pub constraints: String,
    bracket: Option<[Expr; 3]>,
    pochhammers: Vec<([Expr; 3], bool)>,
    alpha: Expr,
    beta: Expr,
    from: Expr,
    to: Expr,
    rhs: Vec<(Expr, Expr)>,
    rhs_bracket: Vec<(Expr, Expr)>,
    cyclotomic: Vec<(Expr, Expr)>,
    modulus_bracket: Vec<(Expr, Expr)>,
    clauses: Vec<Clause>,
}

struct Ctx<'a> {
    case: usize,
    id: &'a str,
    params: &'a [String],
}

impl Ctx<'_> {
    fn err(&self, field: &str, msg: impl std::fmt::Display) -> Error {
        Error::CaseFile(format!("case #{} (`{}`), field `{field}`: {msg}", self.case, self.id))
    }

    fn expr(&self, f: &Field, field: &str) -> Result<Expr> {
        let e = match f {
            Field::Int(v) => Expr::Num(int(*v)),
            Field::Text(s) => match parse_rational(s.trim()) {
                Ok(r) => Expr::Num(r),
                Err(_) => parse_expr(s).map_err(|m| self.err(field, m))?,
            },
        };
        self.known_vars(&{
            let mut v = Vec::new();
            e.vars(&mut v);
            v
        }, field)?;
        Ok(e)
    }

    fn known_vars(&self, vars: &[String], field: &str) -> Result<()> {
        match vars.iter().find(|v| !self.params.contains(v)) {
            Some(v) => Err(self.err(field, format!("undeclared parameter `{v}`"))),
            None => Ok(()),
        }
    }

    fn pairs(&self, list: &[(Field, Field)], field: &str) -> Result<Vec<(Expr, Expr)>> {
        list.iter()
            .enumerate()
            .map(|(i, (a, b))| Ok((self.expr(a, &format!("{field}[{i}][0]"))?, self.expr(b, &format!("{field}[{i}][1]"))?)))
            .collect()
    }
}

fn convert(index: usize, raw: RawCase) -> Result<CustomCase> {
    let ctx = Ctx { case: index, id: &raw.id, params: &raw.params };
    if raw.id.trim().is_empty() {
        return Err(ctx.err("id", "must not be empty"));
    }
    if raw.kind != "q-congruence" {
        return Err(ctx.err("kind", format!("`{}` is not supported; custom cases must be `q-congruence`", raw.kind)));
    }
    let bracket = match &raw.bracket {
        Some(b) => Some([
            ctx.expr(&b.u, "bracket.u")?,
            ctx.expr(&b.v, "bracket.v")?,
            match &b.s {
                Some(s) => ctx.expr(s, "bracket.s")?,
                None => Expr::Num(int(1)),
            },
        ]),
        None => None,
    };
    let pochhammers = raw
        .pochhammers
        .iter()
        .enumerate()
        .map(|(i, f)| {
            Ok((
                [
                    ctx.expr(&f.a, &format!("pochhammers[{i}].a"))?,
                    ctx.expr(&f.d, &format!("pochhammers[{i}].d"))?,
                    ctx.expr(&f.e, &format!("pochhammers[{i}].e"))?,
                ],
                f.negated,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let zero = Field::Int(0);
    let (alpha, beta) = match &raw.qpower {
        Some(q) => (
            ctx.expr(q.alpha.as_ref().unwrap_or(&zero), "qpower.alpha")?,
            ctx.expr(q.beta.as_ref().unwrap_or(&zero), "qpower.beta")?,
        ),
        None => (Expr::Num(int(0)), Expr::Num(int(0))),
    };
    let from = ctx.expr(raw.range.from.as_ref().unwrap_or(&zero), "range.from")?;
    let to = ctx.expr(&raw.range.to, "range.to")?;
    let clauses = parse_constraints(&raw.constraints).map_err(|m| ctx.err("constraints", m))?;
    let mut vars = Vec::new();
    clauses.iter().for_each(|c| c.vars(&mut vars));
    ctx.known_vars(&vars, "constraints")?;
    if raw.modulus.cyclotomic.is_empty() && raw.modulus.bracket.is_empty() {
        return Err(ctx.err("modulus", "at least one factor is required"));
    }
    let case = CustomCase {
        id: raw.id.clone(),
        params: raw.params.clone(),
        conjecture: raw.conjecture,
        constraints: raw.constraints.clone(),
        bracket,
        pochhammers,
        alpha,
        beta,
        from,
        to,
        rhs: ctx.pairs(&raw.rhs, "rhs")?,
        rhs_bracket: ctx.pairs(&raw.rhs_bracket, "rhs_bracket")?,
        cyclotomic: ctx.pairs(&raw.modulus.cyclotomic, "modulus.cyclotomic")?,
        modulus_bracket: ctx.pairs(&raw.modulus.bracket, "modulus.bracket")?,
        clauses,
    };
    case.check_qpower_at_load().map_err(|m| ctx.err("qpower", m))?;
    if case.params.is_empty() {
        case.instance(&Params::new()).map_err(|e| ctx.err("case", e))?;
    }
    Ok(case)
}

impl CustomCase {
    /// With constant `α`, `β` the exponent `α k² + β k` must be integral on every `k` of the range.
    fn check_qpower_at_load(&self) -> std::result::Result<(), String> {
        let empty = Params::new();
        let (Ok(alpha), Ok(beta)) = (self.alpha.eval(&empty), self.beta.eval(&empty)) else {
            return Ok(());
        };
        let from = self.from.eval_int(&empty, "range.from").unwrap_or(0);
        let to = self.to.eval_int(&empty, "range.to").unwrap_or(i64::MAX);
        let q = QPowerFactor::new(alpha, beta);
        for k in [1, 2] {
            if from <= k && k <= to {
                q.exponent_at(k).map_err(|e| e.to_string())?;
            }
        }
        Ok(())
    }

    fn admissible(&self, p: &Params) -> std::result::Result<(), String> {
        for c in &self.clauses {
            if !c.holds(p)? {
                return Err(format!("constraint violated: {}", self.constraints));
            }
        }
        Ok(())
    }

    fn instance(&self, p: &Params) -> Result<Instance> {
        let e = |x: &Expr, what: &str| x.eval_int(p, what).map_err(|m| Error::CaseFile(format!("{}: {m}", self.id)));
        let bracket = match &self.bracket {
            Some([u, v, s]) => Some(BracketFactor { u: e(u, "bracket.u")?, v: e(v, "bracket.v")?, s: e(s, "bracket.s")? }),
            None => None,
        };
        let mut pochhammers = Vec::new();
        for ([a, d, ex], negated) in &self.pochhammers {
            let exponent = i32::try_from(e(ex, "pochhammer exponent")?)
                .map_err(|_| Error::CaseFile(format!("{}: pochhammer exponent out of range", self.id)))?;
            pochhammers.push(QPochhammerFactor { a: e(a, "pochhammer a")?, d: e(d, "pochhammer d")?, exponent, negated: *negated });
        }
        let r = |x: &Expr| x.eval(p).map_err(|m| Error::CaseFile(format!("{}: {m}", self.id)));
        let spec = TruncatedSumSpec {
            bracket,
            pochhammers,
            qpower: QPowerFactor::new(r(&self.alpha)?, r(&self.beta)?),
            k_from: e(&self.from, "range.from")?,
            k_to: e(&self.to, "range.to")?,
        };
        spec.validate()?;
        let mut rhs = LaurentPoly::from_terms(
            self.rhs.iter().map(|(x, c)| Ok((e(x, "rhs exponent")?, r(c)?))).collect::<Result<Vec<_>>>()?,
        );
        for (m, f) in &self.rhs_bracket {
            let f = u32::try_from(e(f, "rhs_bracket exponent")?)
                .map_err(|_| Error::CaseFile(format!("{}: rhs_bracket exponent must be nonnegative", self.id)))?;
            rhs = &rhs * &q_integer(e(m, "rhs_bracket index")?, 1).pow(f);
        }
        let mut modulus = ModulusSpec::new();
        let index = |x: &Expr, what: &str| -> Result<u64> {
            u64::try_from(e(x, what)?).map_err(|_| Error::CaseFile(format!("{}: {what} must be positive", self.id)))
        };
        let power = |x: &Expr, what: &str| -> Result<u32> {
            u32::try_from(e(x, what)?).map_err(|_| Error::CaseFile(format!("{}: {what} must be nonnegative", self.id)))
        };
        for (n, f) in &self.cyclotomic {
            modulus = modulus.cyclotomic(index(n, "cyclotomic index")?, power(f, "cyclotomic exponent")?);
        }
        for (n, f) in &self.modulus_bracket {
            modulus = modulus.bracket(index(n, "bracket index")?, power(f, "bracket exponent")?);
        }
        modulus.expand()?;
        Ok(Instance::Congruence { spec, rhs, modulus })
    }

    pub fn into_case_def(self) -> CaseDef {
        let this = Arc::new(self);
        let (a, b) = (Arc::clone(&this), Arc::clone(&this));
        let params: Vec<&str> = this.params.iter().map(String::as_str).collect();
        CaseDef::new(
            &this.id,
            CaseKind::QCongruence,
            this.conjecture,
            &params,
            &this.constraints,
            "custom case",
            move |p| a.admissible(p),
            move |p| b.instance(p),
        )
    }
}

/// Parses a custom case document; errors name the case and field, or the JSON line and column.
pub fn parse_custom_cases(text: &str) -> Result<Vec<CustomCase>> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| {
        // untagged enums hide the inner error, so retry each shape for a precise location
        let detail = serde_json::from_str::<Vec<RawCase>>(text)
            .err()
            .filter(|_| text.trim_start().starts_with('['))
            .or_else(|| {
                #[derive(Deserialize)]
                #[allow(dead_code)]
                struct Doc {
                    cases: Vec<RawCase>,
                }
                serde_json::from_str::<Doc>(text).err()
            })
            .unwrap_or(e);
        Error::CaseFile(format!("line {}, column {}: {detail}", detail.line(), detail.column()))
    })?;
    let list = match raw {
        RawFile::List(v) | RawFile::Doc { cases: v } => v,
    };
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for (i, c) in list.into_iter().enumerate() {
        if !seen.insert(c.id.clone()) {
            return Err(Error::CaseFile(format!("case #{i}: duplicate id `{}`", c.id)));
        }
        out.push(convert(i, c)?);
    }
    Ok(out)
}

pub fn load_custom_cases(path: &Path) -> Result<Vec<CustomCase>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::CaseFile(format!("{}: {e}", path.display())))?;
    parse_custom_cases(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cases::params;

    #[test]
    fn expressions() {
        let p = params([("n", 7), ("d", 4)]);
        let v = |s: &str| parse_expr(s).unwrap().eval(&p).unwrap();
        assert_eq!(v("n-1"), int(6));
        assert_eq!(v("d*(d-3)/2"), int(2));
        assert_eq!(v("-n % d"), int(1));
        assert_eq!(v("gcd(2*d, n+1) + max(1, -3)"), int(9));
        assert_eq!(v("1/2"), crate::arith::rat(1, 2));
        assert!(parse_expr("n +").is_err());
        assert!(parse_expr("n $ 2").is_err());
    }

    #[test]
    fn constraints() {
        let c = parse_constraints("odd(n), n > 1 and n ≡ -1 mod d; gcd(d, n) == 1").unwrap();
        assert_eq!(c.len(), 4);
        let ok = params([("n", 7), ("d", 4)]);
        assert!(c.iter().all(|x| x.holds(&ok).unwrap()));
        let bad = params([("n", 9), ("d", 4)]);
        assert!(!c.iter().all(|x| x.holds(&bad).unwrap()));
        assert!(parse_constraints("n >").is_err());
        assert!(parse_constraints("n < 3 mod 2").is_err());
        assert!(parse_constraints("").unwrap().is_empty());
    }

    #[test]
    fn empty_list_is_no_op() {
        assert!(parse_custom_cases("{\"cases\": []}").unwrap().is_empty());
        assert!(parse_custom_cases("[]").unwrap().is_empty());
    }

    #[test]
    fn malformed_qpower_rejected_at_load() {
        let doc = r#"[{"id": "x", "kind": "q-congruence",
            "pochhammers": [{"a": 1, "d": 2, "e": 1}],
            "qpower": {"beta": "1/2"}, "range": {"to": 3},
            "modulus": {"cyclotomic": [[3, 1]]}}]"#;
        let err = parse_custom_cases(doc).unwrap_err().to_string();
        assert!(err.contains("qpower"), "{err}");
    }

    #[test]
    fn diagnostics_name_fields_and_lines() {
        let doc = "[{\"id\": \"x\", \"kind\": \"q-congruence\",\n \"range\": {\"to\": \"m\"}, \"modulus\": {\"cyclotomic\": [[3, 1]]}}]";
        let err = parse_custom_cases(doc).unwrap_err().to_string();
        assert!(err.contains("range.to") && err.contains("`m`"), "{err}");
        let err = parse_custom_cases("[{\"id\": \"x\",\n \"kind\": 3}]").unwrap_err().to_string();
        assert!(err.contains("line 2"), "{err}");
        let doc = r#"[{"id": "x", "kind": "closed-form", "range": {"to": 1}, "modulus": {"cyclotomic": [[3, 1]]}}]"#;
        assert!(parse_custom_cases(doc).unwrap_err().to_string().contains("kind"));
    }
}
