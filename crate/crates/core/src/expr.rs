//! The textual expression grammar shared by the library renderers and the
//! command line.
//!
//! ```text
//! expr    := tterm ('+' tterm)*
//! tterm   := term ('|' term)?
//! term    := factor+
//! factor  := atom ('^' INT)?
//! atom    := 'Sq'INT | 'i1' | 'i2' | 'w'INT | '0' | '1' | '(' expr ')'
//! ```
//!
//! Inside a term, a `Sq` factor acts on everything to its right, so
//! `i1 Sq1 i2` is `ι₁ · Sq¹(ι₂)`. A twisted term `k | a` has a polynomial on
//! the left and a Steenrod operation on the right. The separator `|` is only
//! allowed at the top level, and an expression either uses it in every term
//! or in none.

use std::fmt;

use thiserror::Error;

use crate::error::Result;
use crate::lincomb::F2Sum;
use crate::steenrod::SteenrodElement;
use crate::twisted::TwistedElement;
use crate::unstable::{self, Ambient, PolyElement, UGenerator};

/// A syntax or evaluation error, with the byte offset it refers to.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("at position {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        Self { pos, msg: msg.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    Sq(u16),
    I1,
    I2,
    W(u16),
    /// The literal `0` or `1`.
    Int(u8),
    Group(Expression),
}

/// An atom raised to a positive power. The source position is kept for
/// error messages and ignored by equality.
#[derive(Clone, Debug)]
pub struct Factor {
    pub atom: Atom,
    pub power: u32,
    pub pos: usize,
}

impl PartialEq for Factor {
    fn eq(&self, other: &Self) -> bool {
        self.atom == other.atom && self.power == other.power
    }
}

impl Eq for Factor {}

/// A juxtaposition product of factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub factors: Vec<Factor>,
}

/// A summand: either a plain term or a twisted `left | right` pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TopTerm {
    pub left: Term,
    pub right: Option<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    pub terms: Vec<TopTerm>,
}

/// Which algebra an expression most naturally denotes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpressionKind {
    Steenrod,
    Poly,
    Twisted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Sq(u16),
    I1,
    I2,
    W(u16),
    Int(u32),
    LParen,
    RParen,
    Caret,
    Plus,
    Bar,
}

fn lex(s: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> std::result::Result<u32, ParseError> {
        let start = *i;
        while *i < bytes.len() && bytes[*i].is_ascii_digit() {
            *i += 1;
        }
        if start == *i {
            return Err(ParseError::new(start, "expected a number"));
        }
        s[start..*i]
            .parse()
            .map_err(|_| ParseError::new(start, "number out of range"))
    };
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' | b'*' => {
                i += 1;
                continue;
            }
            b'(' => {
                i += 1;
                out.push((Tok::LParen, start));
            }
            b')' => {
                i += 1;
                out.push((Tok::RParen, start));
            }
            b'^' => {
                i += 1;
                out.push((Tok::Caret, start));
            }
            b'+' => {
                i += 1;
                out.push((Tok::Plus, start));
            }
            b'|' => {
                i += 1;
                out.push((Tok::Bar, start));
            }
            b'S' if s[i..].starts_with("Sq") => {
                i += 2;
                let n = number(&mut i)?;
                let n = u16::try_from(n).map_err(|_| ParseError::new(start, "exponent too large"))?;
                if n == 0 {
                    return Err(ParseError::new(start, "Sq0 is not a valid token; write 1"));
                }
                out.push((Tok::Sq(n), start));
            }
            b'i' => {
                i += 1;
                match number(&mut i)? {
                    1 => out.push((Tok::I1, start)),
                    2 => out.push((Tok::I2, start)),
                    _ => return Err(ParseError::new(start, "only i1 and i2 exist")),
                }
            }
            b'w' => {
                i += 1;
                let n = number(&mut i)?;
                if n == 0 || n > u16::MAX as u32 {
                    return Err(ParseError::new(start, "Stiefel-Whitney index must be positive"));
                }
                out.push((Tok::W(n as u16), start));
            }
            b'0'..=b'9' => {
                let n = number(&mut i)?;
                out.push((Tok::Int(n), start));
            }
            _ => {
                let ch = s[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(start, format!("unexpected character `{ch}`")));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn expression(&mut self, top: bool) -> std::result::Result<Expression, ParseError> {
        let mut terms = vec![self.top_term(top)?];
        while self.peek() == Some(&Tok::Plus) {
            self.at += 1;
            terms.push(self.top_term(top)?);
        }
        if top {
            let twisted = terms.iter().filter(|t| t.right.is_some()).count();
            if twisted != 0 && twisted != terms.len() {
                return Err(ParseError::new(0, "every summand of a twisted expression needs `|`"));
            }
        }
        Ok(Expression { terms })
    }

    fn top_term(&mut self, top: bool) -> std::result::Result<TopTerm, ParseError> {
        let left = self.term()?;
        let right = if self.peek() == Some(&Tok::Bar) {
            if !top {
                return Err(ParseError::new(self.pos(), "`|` is not allowed inside parentheses"));
            }
            let bar = self.pos();
            self.at += 1;
            let right = self.term()?;
            check_twisted(&left, &right, bar)?;
            Some(right)
        } else {
            None
        };
        Ok(TopTerm { left, right })
    }

    fn term(&mut self) -> std::result::Result<Term, ParseError> {
        let mut factors = Vec::new();
        while let Some(t) = self.peek() {
            if matches!(t, Tok::Plus | Tok::Bar | Tok::RParen) {
                break;
            }
            factors.push(self.factor()?);
        }
        if factors.is_empty() {
            return Err(ParseError::new(self.pos(), "expected a term"));
        }
        Ok(Term { factors })
    }

    fn factor(&mut self) -> std::result::Result<Factor, ParseError> {
        let pos = self.pos();
        let tok = self.toks[self.at].0.clone();
        self.at += 1;
        let atom = match tok {
            Tok::Sq(n) => Atom::Sq(n),
            Tok::I1 => Atom::I1,
            Tok::I2 => Atom::I2,
            Tok::W(n) => Atom::W(n),
            Tok::Int(n @ (0 | 1)) => Atom::Int(n as u8),
            Tok::Int(_) => return Err(ParseError::new(pos, "only the constants 0 and 1 are allowed")),
            Tok::LParen => {
                let inner = self.expression(false)?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(ParseError::new(self.pos(), "expected `)`"));
                }
                self.at += 1;
                Atom::Group(inner)
            }
            _ => return Err(ParseError::new(pos, "unexpected token")),
        };
        let mut power = 1;
        if self.peek() == Some(&Tok::Caret) {
            self.at += 1;
            match self.toks.get(self.at) {
                Some((Tok::Int(n), _)) if *n >= 1 => {
                    power = *n;
                    self.at += 1;
                }
                _ => return Err(ParseError::new(self.pos(), "expected a positive exponent after `^`")),
            }
        }
        Ok(Factor { atom, power, pos })
    }
}

fn mentions_poly(e: &Expression) -> bool {
    e.terms.iter().any(|t| term_mentions_poly(&t.left))
}

fn term_mentions_poly(t: &Term) -> bool {
    t.factors.iter().any(|f| match &f.atom {
        Atom::I1 | Atom::I2 | Atom::W(_) => true,
        Atom::Group(g) => mentions_poly(g),
        _ => false,
    })
}

fn mentions_sq(e: &Expression) -> bool {
    e.terms.iter().any(|t| {
        t.left.factors.iter().any(|f| match &f.atom {
            Atom::Sq(_) => true,
            Atom::Group(g) => mentions_sq(g),
            _ => false,
        })
    })
}

fn check_twisted(left: &Term, right: &Term, bar: usize) -> std::result::Result<(), ParseError> {
    if term_mentions_poly(right) {
        return Err(ParseError::new(bar, "the part right of `|` must be a Steenrod operation"));
    }
    if let Some(last) = left.factors.last() {
        let acts = match &last.atom {
            Atom::Sq(_) => true,
            Atom::Group(g) => !mentions_poly(g) && mentions_sq(g),
            _ => false,
        };
        if acts {
            return Err(ParseError::new(last.pos, "the part left of `|` must be a polynomial"));
        }
    }
    Ok(())
}

/// Parses an expression without interpreting it.
pub fn parse(input: &str) -> std::result::Result<Expression, ParseError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        at: 0,
        end: input.len(),
    };
    let e = p.expression(true)?;
    if p.at != p.toks.len() {
        return Err(ParseError::new(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

impl Expression {
    pub fn kind(&self) -> ExpressionKind {
        if self.terms.iter().any(|t| t.right.is_some()) {
            ExpressionKind::Twisted
        } else if mentions_poly(self) {
            ExpressionKind::Poly
        } else {
            ExpressionKind::Steenrod
        }
    }

    /// Smallest ambient able to hold the polynomial atoms: `K` if only
    /// `i1`/`i2` occur, otherwise `BO(n)` with `n` the largest `w` index.
    pub fn natural_ambient(&self) -> Option<Ambient> {
        fn walk(e: &Expression, k: &mut bool, w: &mut usize) {
            for t in &e.terms {
                for f in &t.left.factors {
                    match &f.atom {
                        Atom::I1 | Atom::I2 => *k = true,
                        Atom::W(n) => *w = (*w).max(*n as usize),
                        Atom::Group(g) => walk(g, k, w),
                        _ => {}
                    }
                }
            }
        }
        let (mut k, mut w) = (false, 0);
        walk(self, &mut k, &mut w);
        match (k, w) {
            (true, 0) => Some(Ambient::K),
            (false, n) if n > 0 => Some(Ambient::BO { vars: n }),
            _ => None,
        }
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}", t.left)?;
            if let Some(r) = &t.right {
                write!(f, " | {r}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.atom {
            Atom::Sq(n) => write!(f, "Sq{n}")?,
            Atom::I1 => write!(f, "i1")?,
            Atom::I2 => write!(f, "i2")?,
            Atom::W(n) => write!(f, "w{n}")?,
            Atom::Int(n) => write!(f, "{n}")?,
            Atom::Group(g) => write!(f, "({g})")?,
        }
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

fn steenrod_expr(e: &Expression) -> std::result::Result<SteenrodElement, ParseError> {
    let mut out = SteenrodElement::zero();
    for t in &e.terms {
        if t.right.is_some() {
            return Err(ParseError::new(0, "twisted term where a Steenrod operation was expected"));
        }
        out = &out + &steenrod_term(&t.left)?;
    }
    Ok(out)
}

fn steenrod_term(t: &Term) -> std::result::Result<SteenrodElement, ParseError> {
    let mut acc = SteenrodElement::one();
    for f in &t.factors {
        let base = match &f.atom {
            Atom::Sq(n) => SteenrodElement::sq(*n),
            Atom::Int(1) => SteenrodElement::one(),
            Atom::Int(_) => SteenrodElement::zero(),
            Atom::Group(g) => steenrod_expr(g)?,
            Atom::I1 | Atom::I2 | Atom::W(_) => {
                return Err(ParseError::new(f.pos, "polynomial class where a Steenrod operation was expected"))
            }
        };
        for _ in 0..f.power {
            acc = &acc * &base;
        }
    }
    Ok(acc)
}

enum Value {
    Op(SteenrodElement),
    Poly(PolyElement),
}

fn poly_atom(ambient: Ambient, f: &Factor, g: UGenerator) -> std::result::Result<PolyElement, ParseError> {
    PolyElement::generator(ambient, g).map_err(|e| ParseError::new(f.pos, e.to_string()))
}

fn poly_value(ambient: Ambient, f: &Factor) -> std::result::Result<Value, ParseError> {
    let v = match &f.atom {
        Atom::Sq(n) => Value::Op(SteenrodElement::sq(*n)),
        Atom::I1 => Value::Poly(poly_atom(ambient, f, UGenerator::Iota1)?),
        Atom::I2 => Value::Poly(poly_atom(ambient, f, UGenerator::Iota2Derived(0))?),
        Atom::W(n) => Value::Poly(poly_atom(ambient, f, UGenerator::SW(*n))?),
        Atom::Int(1) => Value::Poly(PolyElement::one(ambient)),
        Atom::Int(_) => Value::Poly(PolyElement::zero(ambient)),
        Atom::Group(g) if !mentions_poly(g) && mentions_sq(g) => Value::Op(steenrod_expr(g)?),
        Atom::Group(g) => Value::Poly(poly_expr(ambient, g)?),
    };
    Ok(match v {
        Value::Op(a) => {
            let mut acc = SteenrodElement::one();
            for _ in 0..f.power {
                acc = &acc * &a;
            }
            Value::Op(acc)
        }
        Value::Poly(p) => {
            let mut acc = PolyElement::one(ambient);
            for _ in 0..f.power {
                acc = &acc * &p;
            }
            Value::Poly(acc)
        }
    })
}

fn poly_term(ambient: Ambient, t: &Term) -> std::result::Result<PolyElement, ParseError> {
    let mut acc: Option<PolyElement> = None;
    for f in t.factors.iter().rev() {
        acc = Some(match (poly_value(ambient, f)?, acc) {
            (Value::Poly(p), None) => p,
            (Value::Poly(p), Some(a)) => &p * &a,
            (Value::Op(op), Some(a)) => unstable::apply(&op, &a),
            (Value::Op(_), None) => {
                return Err(ParseError::new(f.pos, "Steenrod operation with nothing to act on"))
            }
        });
    }
    Ok(acc.expect("terms are nonempty"))
}

fn poly_expr(ambient: Ambient, e: &Expression) -> std::result::Result<PolyElement, ParseError> {
    let mut out = PolyElement::zero(ambient);
    for t in &e.terms {
        if t.right.is_some() {
            return Err(ParseError::new(0, "twisted term where a polynomial was expected"));
        }
        out = &out + &poly_term(ambient, &t.left)?;
    }
    Ok(out)
}

/// Parses and evaluates an element of the Steenrod algebra.
pub fn parse_steenrod(input: &str) -> Result<SteenrodElement> {
    Ok(steenrod_expr(&parse(input)?)?)
}

/// Parses and evaluates a polynomial in the given ambient.
pub fn parse_poly(input: &str, ambient: Ambient) -> Result<PolyElement> {
    Ok(poly_expr(ambient, &parse(input)?)?)
}

/// Parses and evaluates an element of the twisted algebra. A lone `0` is
/// accepted as the zero element.
pub fn parse_twisted(input: &str) -> Result<TwistedElement> {
    let e = parse(input)?;
    if e.terms.len() == 1 && e.terms[0].right.is_none() {
        if let [Factor { atom: Atom::Int(0), .. }] = e.terms[0].left.factors.as_slice() {
            return Ok(TwistedElement::zero());
        }
    }
    let mut terms = Vec::new();
    for t in &e.terms {
        let Some(right) = &t.right else {
            return Err(ParseError::new(0, "every summand of a twisted expression needs `|`").into());
        };
        let k = poly_term(Ambient::K, &t.left)?;
        let a = steenrod_term(right)?;
        for m in k.terms() {
            for op in a.terms() {
                terms.push((m.clone(), op.clone()));
            }
        }
    }
    Ok(TwistedElement::from_sum(F2Sum::from_terms(terms)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_product() {
        let e = parse("Sq2 Sq1").unwrap();
        assert_eq!(e.terms.len(), 1);
        assert_eq!(e.terms[0].left.factors.len(), 2);
        assert_eq!(e.kind(), ExpressionKind::Steenrod);
        assert_eq!(parse_steenrod("Sq2 Sq2").unwrap().to_string(), "Sq3 Sq1");
    }

    #[test]
    fn twisted_terms() {
        let e = parse("i1^2 | Sq3 Sq1 + i2 | Sq2").unwrap();
        assert_eq!(e.terms.len(), 2);
        assert_eq!(e.kind(), ExpressionKind::Twisted);
        let t = parse_twisted("i1^2 | Sq3 Sq1 + i2 | Sq2").unwrap();
        assert_eq!(t.terms().len(), 2);
    }

    #[test]
    fn misplaced_bar_is_rejected() {
        let err = parse("Sq2 | i1").unwrap_err();
        assert_eq!(err.pos, 4);
        assert!(parse("i1 | Sq1 + Sq2").is_err());
        assert!(parse("(i1 | Sq1)").is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse("Sq2 + ").unwrap_err().pos, 6);
        assert_eq!(parse("Sq2 ? Sq1").unwrap_err().pos, 4);
        assert!(parse("i3").is_err());
        assert!(parse("Sq0").is_err());
        assert!(parse("").is_err());
        assert!(parse("(Sq1").is_err());
        assert!(parse("Sq1^").is_err());
    }

    #[test]
    fn poly_terms_act_rightwards() {
        let x = parse_poly("i1 Sq1 i2", Ambient::K).unwrap();
        assert_eq!(x.to_string(), "i1 (Sq1 i2)");
        assert_eq!(parse_poly("Sq1 i1", Ambient::K).unwrap().to_string(), "i1^2");
        assert!(parse_poly("i1 Sq1", Ambient::K).is_err());
        let w = parse_poly("Sq1 w2", Ambient::BO { vars: 3 }).unwrap();
        assert_eq!(w, parse_poly("w1 w2 + w3", Ambient::BO { vars: 3 }).unwrap());
    }

    #[test]
    fn render_round_trip() {
        for s in ["Sq2 Sq1 + Sq3", "i1^2 | Sq3 Sq1 + (Sq1 i2) | 1", "(Sq1 + Sq2)^2 Sq1", "0", "i1 (Sq1 i2)^2"] {
            let e = parse(s).unwrap();
            assert_eq!(parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }
}
