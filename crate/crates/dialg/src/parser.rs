//! Textual grammar for identities.
//!
//! ```text
//! file     := header line*
//! header   := "signature:" ("algebra" | "dialgebra")
//! line     := label ":" identity | comment
//! identity := expr ("=" expr)?          -- missing right side means "= 0"
//! expr     := ["-"] term (("+"|"-") term)*
//! term     := (rational "*")? factor | rational
//! factor   := primary (op primary)?     -- deeper products need parentheses
//! primary  := variable | "(" expr ")" | macro "(" expr {"," expr} ")"
//! op       := "*" | "-|" | "|-"
//! rational := int ("/" int)?
//! ```
//!
//! Nonassociative products carry no precedence: `x*y*z` is rejected as
//! ambiguous. Comments start with `#`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::macros::lookup;
use crate::monomial::Monomial;
use crate::poly::{Coeff, Identity, PolyError, Polynomial};
use crate::term::{OperationTag, Signature, Variable};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: unknown macro `{name}`")]
    UnknownMacro { line: usize, name: String },
    #[error("line {line}: macro `{name}` takes {expected} arguments, found {found}")]
    MacroArity {
        line: usize,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {col}: unparenthesized product is ambiguous")]
    AmbiguousProduct { line: usize, col: usize },
    #[error("line {line}: duplicate label `{label}`")]
    DuplicateLabel { line: usize, label: String },
    #[error("missing or invalid header; expected `signature: algebra|dialgebra`")]
    BadHeader,
    #[error("line {line}: {source}")]
    Lower { line: usize, source: PolyError },
}

/// Unexpanded expression tree: macros stay symbolic until
/// [`expand_macros`] resolves them.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Var(String),
    Rational(BigRational),
    /// `coefficient * factor`
    Scaled(BigRational, Box<Expr>),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(OperationTag, Box<Expr>, Box<Expr>),
    MacroCall(String, Vec<Expr>),
}

/// One labeled identity, kept in raw form.
#[derive(Debug, Clone)]
pub struct FileEntry {
    pub label: String,
    pub expr: Expr,
    pub line: usize,
}

/// A parsed identity file.
#[derive(Debug, Clone)]
pub struct IdentityFile {
    pub signature: Signature,
    pub entries: Vec<FileEntry>,
}

impl IdentityFile {
    pub fn identity(&self, label: &str) -> Result<Identity, ParseError> {
        let entry = self
            .entries
            .iter()
            .find(|e| e.label == label)
            .unwrap_or_else(|| panic!("no identity labeled `{label}`"));
        self.expand_entry(entry)
    }

    pub fn identities(&self) -> Result<Vec<Identity>, ParseError> {
        self.entries.iter().map(|e| self.expand_entry(e)).collect()
    }

    fn expand_entry(&self, entry: &FileEntry) -> Result<Identity, ParseError> {
        let poly =
            expand_macros(&entry.expr, self.signature).map_err(|source| ParseError::Lower {
                line: entry.line,
                source,
            })?;
        Ok(Identity::new(Some(entry.label.clone()), poly))
    }
}

/// Resolve macros and lower an expression to a canonical polynomial.
/// Variables are numbered by first occurrence.
pub fn expand_macros(expr: &Expr, signature: Signature) -> Result<Polynomial, PolyError> {
    let mut vars = VarTable::default();
    lower(expr, signature, &mut vars)
}

#[derive(Default)]
struct VarTable {
    map: BTreeMap<String, u32>,
}

impl VarTable {
    fn get(&mut self, name: &str) -> Variable {
        let next = self.map.len() as u32;
        let id = *self.map.entry(name.to_string()).or_insert(next);
        Variable::new(id, name)
    }
}

fn lower(expr: &Expr, sig: Signature, vars: &mut VarTable) -> Result<Polynomial, PolyError> {
    match expr {
        Expr::Var(name) => Ok(Polynomial::var(sig, vars.get(name))),
        Expr::Rational(q) => {
            if q.is_zero() {
                Ok(Polynomial::zero(sig))
            } else {
                // a bare nonzero constant has no meaning in a free algebra
                Err(PolyError::NotHomogeneous)
            }
        }
        Expr::Scaled(q, inner) => Ok(lower(inner, sig, vars)?.scale(q)),
        Expr::Neg(inner) => Ok(lower(inner, sig, vars)?.neg()),
        Expr::Sum(parts) => {
            let mut acc = Polynomial::zero(sig);
            for p in parts {
                acc.add_assign(&lower(p, sig, vars)?);
            }
            Ok(acc)
        }
        Expr::Product(tag, l, r) => {
            let lp = lower(l, sig, vars)?;
            let rp = lower(r, sig, vars)?;
            if tag.signature() != sig {
                return Err(PolyError::SignatureMismatch(sig, tag.signature()));
            }
            Polynomial::product(*tag, &lp, &rp)
        }
        Expr::MacroCall(name, args) => {
            let def = lookup(name).expect("checked during parsing");
            let lowered: Result<Vec<Polynomial>, PolyError> =
                args.iter().map(|a| lower(a, def.signature, vars)).collect();
            let expanded = def.expand(&lowered?)?;
            if def.signature != sig {
                return Err(PolyError::SignatureMismatch(sig, def.signature));
            }
            Ok(expanded)
        }
    }
}

// ---------------------------------------------------------------- lexing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    DiLeft,
    DiRight,
    LParen,
    RParen,
    Comma,
    Equals,
    Slash,
}

struct Lexer<'a> {
    src: &'a str,
    line: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(&self) -> Result<Vec<(Tok, usize)>, ParseError> {
        let mut out = Vec::new();
        let chars: Vec<char> = self.src.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let col = i + 1;
            let c = chars[i];
            match c {
                ' ' | '\t' => {
                    i += 1;
                }
                '#' => break,
                '+' => {
                    out.push((Tok::Plus, col));
                    i += 1;
                }
                '-' => {
                    if chars.get(i + 1) == Some(&'|') {
                        out.push((Tok::DiLeft, col));
                        i += 2;
                    } else {
                        out.push((Tok::Minus, col));
                        i += 1;
                    }
                }
                '|' => {
                    if chars.get(i + 1) == Some(&'-') {
                        out.push((Tok::DiRight, col));
                        i += 2;
                    } else {
                        return Err(self.err(col, "expected `|-`"));
                    }
                }
                '*' => {
                    out.push((Tok::Star, col));
                    i += 1;
                }
                '(' => {
                    out.push((Tok::LParen, col));
                    i += 1;
                }
                ')' => {
                    out.push((Tok::RParen, col));
                    i += 1;
                }
                ',' => {
                    out.push((Tok::Comma, col));
                    i += 1;
                }
                '=' => {
                    out.push((Tok::Equals, col));
                    i += 1;
                }
                '/' => {
                    out.push((Tok::Slash, col));
                    i += 1;
                }
                c if c.is_ascii_digit() => {
                    let start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    let text: String = chars[start..i].iter().collect();
                    out.push((Tok::Int(text.parse().unwrap()), col));
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let start = i;
                    while i < chars.len()
                        && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                    {
                        i += 1;
                    }
                    out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                }
                other => return Err(self.err(col, &format!("unexpected character `{other}`"))),
            }
        }
        Ok(out)
    }

    fn err(&self, col: usize, message: &str) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col,
            message: message.to_string(),
        }
    }
}

// --------------------------------------------------------------- parsing

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .or_else(|| self.toks.last())
            .map(|(_, c)| *c)
            .unwrap_or(1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected {what}")))
        }
    }

    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax {
            line: self.line,
            col: self.col(),
            message: message.to_string(),
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut parts = Vec::new();
        let negate_first = if self.peek() == Some(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        let first = self.term()?;
        parts.push(if negate_first {
            Expr::Neg(Box::new(first))
        } else {
            first
        });
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    parts.push(self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    parts.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Expr::Sum(parts)
        })
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if let Some(Tok::Int(_)) = self.peek() {
            let q = self.rational()?;
            if self.peek() == Some(&Tok::Star) {
                self.pos += 1;
                let f = self.factor()?;
                return Ok(Expr::Scaled(q, Box::new(f)));
            }
            return Ok(Expr::Rational(q));
        }
        self.factor()
    }

    fn rational(&mut self) -> Result<BigRational, ParseError> {
        let num = match self.bump() {
            Some(Tok::Int(n)) => n,
            _ => return Err(self.err("expected integer")),
        };
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let den = match self.bump() {
                Some(Tok::Int(n)) => n,
                _ => return Err(self.err("expected denominator")),
            };
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(BigRational::new(num, den))
        } else {
            Ok(BigRational::from_integer(num))
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        let first = self.primary()?;
        let tag = match self.peek() {
            Some(Tok::Star) => OperationTag::Plain,
            Some(Tok::DiLeft) => OperationTag::DiLeft,
            Some(Tok::DiRight) => OperationTag::DiRight,
            _ => return Ok(first),
        };
        self.pos += 1;
        let second = self.primary()?;
        // a third operand at the same level has no reading
        if matches!(
            self.peek(),
            Some(Tok::Star) | Some(Tok::DiLeft) | Some(Tok::DiRight)
        ) {
            return Err(ParseError::AmbiguousProduct {
                line: self.line,
                col: self.col(),
            });
        }
        Ok(Expr::Product(tag, Box::new(first), Box::new(second)))
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        match self.bump() {
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                if self.peek() == Some(&Tok::LParen) {
                    let Some(def) = lookup(&name) else {
                        return Err(ParseError::UnknownMacro {
                            line: self.line,
                            name,
                        });
                    };
                    self.pos += 1;
                    let mut args = vec![self.expr()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        args.push(self.expr()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    if args.len() != def.arity {
                        return Err(ParseError::MacroArity {
                            line: self.line,
                            name,
                            expected: def.arity,
                            found: args.len(),
                        });
                    }
                    Ok(Expr::MacroCall(name, args))
                } else {
                    Ok(Expr::Var(name))
                }
            }
            _ => Err(self.err("expected variable, `(`, or macro call")),
        }
    }
}

/// Parse a single identity body (the part after `label:`).
pub fn parse_identity_expr(text: &str, line: usize) -> Result<Expr, ParseError> {
    let toks = Lexer { src: text, line }.tokens()?;
    let mut parser = Parser { toks, pos: 0, line };
    let lhs = parser.expr()?;
    let expr = if parser.peek() == Some(&Tok::Equals) {
        parser.pos += 1;
        let rhs = parser.expr()?;
        Expr::Sum(vec![lhs, Expr::Neg(Box::new(rhs))])
    } else {
        lhs
    };
    if parser.peek().is_some() {
        return Err(parser.err("trailing tokens"));
    }
    Ok(expr)
}

/// Parse an identity file.
pub fn parse(text: &str) -> Result<IdentityFile, ParseError> {
    let mut signature: Option<Signature> = None;
    let mut entries: Vec<FileEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((head, rest)) = line.split_once(':') else {
            return Err(ParseError::Syntax {
                line: line_no,
                col: 1,
                message: "expected `label: identity`".to_string(),
            });
        };
        let head = head.trim();
        if signature.is_none() {
            if head != "signature" {
                return Err(ParseError::BadHeader);
            }
            signature = Some(match rest.trim() {
                "algebra" => Signature::Plain,
                "dialgebra" => Signature::Dialgebra,
                _ => return Err(ParseError::BadHeader),
            });
            continue;
        }
        if entries.iter().any(|e| e.label == head) {
            return Err(ParseError::DuplicateLabel {
                line: line_no,
                label: head.to_string(),
            });
        }
        let expr = parse_identity_expr(rest, line_no)?;
        entries.push(FileEntry {
            label: head.to_string(),
            expr,
            line: line_no,
        });
    }
    let signature = signature.ok_or(ParseError::BadHeader)?;
    Ok(IdentityFile { signature, entries })
}

/// Parse a single identity given a signature, for programmatic use.
pub fn parse_poly(text: &str, signature: Signature) -> Result<Polynomial, ParseError> {
    let expr = parse_identity_expr(text, 1)?;
    expand_macros(&expr, signature).map_err(|source| ParseError::Lower { line: 1, source })
}

// -------------------------------------------------------------- printing

fn format_coeff(q: &Coeff) -> String {
    if q.denom() == &BigInt::one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn monomial_str(m: &Monomial, wrap: bool) -> String {
    let s = m.to_term().to_string();
    if wrap && m.degree() > 1 {
        format!("({s})")
    } else {
        s
    }
}

/// Render a polynomial in the file grammar; `parse` inverts this on
/// canonical polynomials.
pub fn print(p: &Polynomial) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let multi = p.len() > 1;
    let mut out = String::new();
    for (i, (m, c)) in p.iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = abs.is_one();
        if !unit {
            out.push_str(&format_coeff(&abs));
            out.push_str(" * ");
        }
        out.push_str(&monomial_str(m, multi || !unit || neg));
    }
    out
}

/// Render a whole file: header plus one `label: poly` line per entry,
/// macros expanded.
pub fn print_file(file: &IdentityFile) -> Result<String, ParseError> {
    let mut out = format!("signature: {}\n", file.signature);
    for entry in &file.entries {
        let id = file.expand_entry(entry)?;
        out.push_str(&format!("{}: {}\n", entry.label, print(&id.poly)));
    }
    Ok(out)
}

impl fmt::Display for IdentityFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match print_file(self) {
            Ok(s) => f.write_str(&s),
            Err(_) => Err(fmt::Error),
        }
    }
}
