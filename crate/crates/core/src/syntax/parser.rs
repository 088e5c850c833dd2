//! Recursive-descent parser for the ASCII formula grammar.
//!
//! ```text
//! formula := iff ; iff := impl { "<->" impl } ; impl := disj [ "->" impl ]
//! disj := conj { "|" conj } ; conj := unary { "&" unary }
//! unary := "!" unary | "forall" var+ "." formula | "exists" var+ "." formula
//!        | "(" formula ")" | atom
//! atom := "true" | "false" | term relop term [ "(mod" nat ")" ]
//! relop := "=" | "!=" | "<" | "<=" | ">" | ">="
//! term := sum ; sum := prod { ("+"|"-") prod } ; prod := pow { "*" pow }
//! pow := base [ "^" pow ] ; base := var | nat | "-" base | "s(" term ")" | "(" term ")"
//! ```
//!
//! `<=`, `>`, `>=` and `!=` are abbreviations and never reach the AST.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use super::ast::{Formula, Pred, Term};
use super::signature::Signature;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(BigUint),
    LParen,
    RParen,
    Dot,
    Bang,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Caret,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Bang => "`!`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Pipe => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Ne => "`!=`".into(),
            Tok::Lt => "`<`".into(),
            Tok::Le => "`<=`".into(),
            Tok::Gt => "`>`".into(),
            Tok::Ge => "`>=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const KEYWORDS: [&str; 5] = ["forall", "exists", "true", "false", "mod"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let two = |s: &str| text[i..].starts_with(s);
        let tok = if two("<->") {
            i += 3;
            Tok::DArrow
        } else if two("->") {
            i += 2;
            Tok::Arrow
        } else if two("<=") {
            i += 2;
            Tok::Le
        } else if two(">=") {
            i += 2;
            Tok::Ge
        } else if two("!=") {
            i += 2;
            Tok::Ne
        } else if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            Tok::Nat(text[start..i].parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == b'_' {
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
            {
                i += 1;
            }
            Tok::Ident(text[start..i].to_string())
        } else {
            i += 1;
            match c {
                b'(' => Tok::LParen,
                b')' => Tok::RParen,
                b'.' => Tok::Dot,
                b'!' => Tok::Bang,
                b'&' => Tok::Amp,
                b'|' => Tok::Pipe,
                b'=' => Tok::Eq,
                b'<' => Tok::Lt,
                b'>' => Tok::Gt,
                b'+' => Tok::Plus,
                b'-' => Tok::Minus,
                b'*' => Tok::Star,
                b'^' => Tok::Caret,
                _ => {
                    let ch = text[start..].chars().next().unwrap();
                    return Err(Error::Parse {
                        offset: start,
                        expected: BTreeSet::from(["a token".to_string()]),
                        found: format!("`{ch}`"),
                    });
                }
            }
        };
        out.push((tok, start));
    }
    out.push((Tok::Eof, text.len()));
    Ok(out)
}

struct Failure {
    offset: usize,
    expected: BTreeSet<String>,
    found: String,
}

struct Parser<'s> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    sig: &'s Signature,
    furthest: Option<Failure>,
}

type PResult<T> = std::result::Result<T, ()>;

impl<'s> Parser<'s> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let idx = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[idx].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    /// Records an expectation at the current position and fails.
    fn fail<T>(&mut self, expected: &[&str]) -> PResult<T> {
        let offset = self.offset();
        let found = self.peek().describe();
        match &mut self.furthest {
            Some(f) if f.offset > offset => {}
            Some(f) if f.offset == offset => {
                f.expected.extend(expected.iter().map(|s| s.to_string()));
            }
            _ => {
                self.furthest = Some(Failure {
                    offset,
                    expected: expected.iter().map(|s| s.to_string()).collect(),
                    found,
                })
            }
        }
        Err(())
    }

    fn expect(&mut self, tok: Tok, name: &str) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(&[name])
        }
    }

    fn formula(&mut self) -> PResult<Formula> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let rhs = self.implication()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> PResult<Formula> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> PResult<Formula> {
        let mut items = vec![self.conjunction()?];
        while *self.peek() == Tok::Pipe {
            self.bump();
            items.push(self.conjunction()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::or(items)
        })
    }

    fn conjunction(&mut self) -> PResult<Formula> {
        let mut items = vec![self.unary()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(if items.len() == 1 {
            items.pop().unwrap()
        } else {
            Formula::and(items)
        })
    }

    fn variable(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                Ok(name)
            }
            _ => self.fail(&["variable"]),
        }
    }

    fn unary(&mut self) -> PResult<Formula> {
        match self.peek().clone() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(kw) if kw == "forall" || kw == "exists" => {
                self.bump();
                let mut vars = vec![self.variable()?];
                while let Tok::Ident(name) = self.peek() {
                    if KEYWORDS.contains(&name.as_str()) {
                        break;
                    }
                    vars.push(self.variable()?);
                }
                self.expect(Tok::Dot, "`.`")?;
                let mut body = self.formula()?;
                for v in vars.into_iter().rev() {
                    body = if kw == "forall" {
                        Formula::forall(v, body)
                    } else {
                        Formula::exists(v, body)
                    };
                }
                Ok(body)
            }
            Tok::LParen => {
                // Either a parenthesised formula or an atom whose left term is
                // parenthesised; try the atom first and backtrack.
                let save = self.pos;
                if let Ok(atom) = self.atom() {
                    return Ok(atom);
                }
                self.pos = save;
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> PResult<Formula> {
        match self.peek() {
            Tok::Ident(kw) if kw == "true" => {
                self.bump();
                return Ok(Formula::Top);
            }
            Tok::Ident(kw) if kw == "false" => {
                self.bump();
                return Ok(Formula::Bot);
            }
            _ => {}
        }
        if self.sig.propositional {
            if let Tok::Ident(name) = self.peek().clone() {
                let next = self.peek_at(1).clone();
                let is_relop = matches!(
                    next,
                    Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge
                );
                let continues_term = matches!(
                    next,
                    Tok::Plus | Tok::Minus | Tok::Star | Tok::Caret | Tok::LParen
                );
                if !KEYWORDS.contains(&name.as_str()) && !is_relop && !continues_term {
                    self.bump();
                    return Ok(Formula::Prop(name));
                }
            }
        }
        let lhs = self.term()?;
        let op = self.peek().clone();
        match op {
            Tok::Eq | Tok::Ne | Tok::Lt | Tok::Le | Tok::Gt | Tok::Ge => {
                self.bump();
            }
            _ => return self.fail(&["`=`", "`!=`", "`<`", "`<=`", "`>`", "`>=`"]),
        }
        let rhs = self.term()?;
        if *self.peek() == Tok::LParen && *self.peek_at(1) == Tok::Ident("mod".into()) {
            self.bump();
            self.bump();
            let modulus = match self.peek().clone() {
                Tok::Nat(n) if n >= BigUint::from(2u32) => {
                    self.bump();
                    n
                }
                _ => return self.fail(&["modulus >= 2"]),
            };
            self.expect(Tok::RParen, "`)`")?;
            let atom = Formula::atom(Pred::Cong(modulus), lhs, rhs);
            return match op {
                Tok::Eq => Ok(atom),
                Tok::Ne => Ok(Formula::not(atom)),
                _ => self.fail(&["`=` or `!=` before `(mod`"]),
            };
        }
        Ok(match op {
            Tok::Eq => Formula::eq(lhs, rhs),
            Tok::Ne => Formula::not(Formula::eq(lhs, rhs)),
            Tok::Lt => Formula::lt(lhs, rhs),
            Tok::Gt => Formula::lt(rhs, lhs),
            Tok::Le => Formula::or([Formula::lt(lhs.clone(), rhs.clone()), Formula::eq(lhs, rhs)]),
            Tok::Ge => Formula::or([Formula::lt(rhs.clone(), lhs.clone()), Formula::eq(rhs, lhs)]),
            _ => unreachable!(),
        })
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = Term::add(acc, rhs);
                }
                Tok::Minus => {
                    self.bump();
                    let rhs = self.product()?;
                    acc = Term::add(acc, Term::neg(rhs));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> PResult<Term> {
        let mut acc = self.power()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.power()?;
            acc = Term::mul(acc, rhs);
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Term> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp = self.power()?;
            return Ok(Term::pow(base, exp));
        }
        Ok(base)
    }

    fn base(&mut self) -> PResult<Term> {
        match self.peek().clone() {
            Tok::Ident(name) if name == "s" && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Term::succ(inner))
            }
            Tok::Ident(name) if !KEYWORDS.contains(&name.as_str()) => {
                self.bump();
                Ok(Term::Var(name))
            }
            Tok::Nat(n) => {
                self.bump();
                Ok(Term::Num(n))
            }
            Tok::Minus => {
                self.bump();
                Ok(Term::neg(self.base()?))
            }
            Tok::LParen => {
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(inner)
            }
            _ => self.fail(&["variable", "numeral", "`-`", "`s(`", "`(`"]),
        }
    }

    fn into_error(self) -> Error {
        let f = self.furthest.expect("failure recorded");
        Error::Parse {
            offset: f.offset,
            expected: f.expected,
            found: f.found,
        }
    }
}

fn run<T>(
    text: &str,
    sig: &Signature,
    entry: impl FnOnce(&mut Parser) -> PResult<T>,
) -> Result<T> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        sig,
        furthest: None,
    };
    match entry(&mut p) {
        Ok(v) if *p.peek() == Tok::Eof => Ok(v),
        Ok(_) => {
            let _ = p.fail::<()>(&["end of input"]);
            Err(p.into_error())
        }
        Err(()) => Err(p.into_error()),
    }
}

/// Parses a formula and checks it against `sig`.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let f = run(text, sig, |p| p.formula())?;
    sig.check_formula(&f)?;
    Ok(f)
}

/// Parses a single term and checks it against `sig`.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let t = run(text, sig, |p| p.term())?;
    sig.check_term(&t)?;
    Ok(t)
}

/// Parses `lhs = rhs` into its two sides.
pub fn parse_equation(text: &str, sig: &Signature) -> Result<(Term, Term)> {
    let (lhs, rhs) = run(text, sig, |p| {
        let lhs = p.term()?;
        p.expect(Tok::Eq, "`=`")?;
        let rhs = p.term()?;
        Ok((lhs, rhs))
    })?;
    sig.check_term(&lhs)?;
    sig.check_term(&rhs)?;
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn any() -> Signature {
        Signature::permissive()
    }

    #[test]
    fn quantifier_body_extends_right() {
        let f = parse_formula("exists x. u < x & x < v", &Signature::dlo()).unwrap();
        let expected = Formula::exists(
            "x",
            Formula::and([
                Formula::lt(Term::var("u"), Term::var("x")),
                Formula::lt(Term::var("x"), Term::var("v")),
            ]),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn congruence_suffix() {
        let f = parse_formula("x = y (mod 2)", &Signature::zmod()).unwrap();
        assert_eq!(f, Formula::cong(Term::var("x"), Term::var("y"), 2));
        let g = parse_formula("x != y (mod 3)", &Signature::zmod()).unwrap();
        assert_eq!(g, Formula::not(Formula::cong(Term::var("x"), Term::var("y"), 3)));
    }

    #[test]
    fn unterminated_successor_reports_end_offset() {
        let err = parse_formula("x < s(", &Signature::zdiscrete()).unwrap_err();
        match err {
            Error::Parse { offset, expected, .. } => {
                assert_eq!(offset, 6);
                assert!(expected.contains("variable"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn abbreviations_desugar() {
        let le = parse_formula("x <= y", &Signature::dlo()).unwrap();
        assert_eq!(
            le,
            Formula::or([
                Formula::lt(Term::var("x"), Term::var("y")),
                Formula::eq(Term::var("x"), Term::var("y")),
            ])
        );
        let gt = parse_formula("x > y", &Signature::dlo()).unwrap();
        assert_eq!(gt, Formula::lt(Term::var("y"), Term::var("x")));
    }

    #[test]
    fn minus_is_negation() {
        let t = parse_term("x - y", &Signature::zpres()).unwrap();
        assert_eq!(t, Term::add(Term::var("x"), Term::neg(Term::var("y"))));
        let err = parse_formula("-1 < x", &Signature::npres()).unwrap_err();
        assert!(matches!(err, Error::Signature { .. }));
    }

    #[test]
    fn parenthesised_term_versus_formula() {
        let a = parse_formula("(x + y) < z", &any()).unwrap();
        assert!(matches!(a, Formula::Atom(_)));
        let b = parse_formula("(x < y) & z = z", &any()).unwrap();
        assert!(matches!(b, Formula::And(_)));
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse_formula("p -> q -> r", &Signature::propositional()).unwrap();
        assert_eq!(
            f,
            Formula::implies(
                Formula::prop("p"),
                Formula::implies(Formula::prop("q"), Formula::prop("r"))
            )
        );
    }

    #[test]
    fn undeclared_symbol_is_a_signature_error() {
        let err = parse_formula("x + y = z", &Signature::dlo()).unwrap_err();
        assert!(matches!(err, Error::Signature { .. }));
        let err = parse_formula("x ^ y = z", &Signature::zpres()).unwrap_err();
        assert!(matches!(err, Error::Signature { .. }));
    }

    #[test]
    fn trailing_garbage() {
        let err = parse_formula("x < y )", &Signature::dlo()).unwrap_err();
        assert!(matches!(err, Error::Parse { offset: 6, .. }));
    }
}
