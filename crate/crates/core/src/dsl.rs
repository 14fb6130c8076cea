//! Text syntax for rings, ideals and polynomials.
//!
//! ```text
//! ring  := "F" INT "[" ident ("," ident)* "]" ("/" "(" poly ("," poly)* ")")?
//! ideal := "(" (poly ("," poly)*)? ")"
//! poly  := ["+"|"-"] term (("+"|"-") term)*
//! term  := factor (["*"] factor)*
//! factor:= ["-"] atom ["^" INT]
//! atom  := INT | ident | "(" poly ")"
//! ```
//!
//! Printing with [`print_ring`], [`print_ideal`] and `Display` produces
//! text that parses back to the same object.

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::monomial::MonomialOrder;
use crate::poly::Poly;
use crate::quotient::RingSpec;
use crate::ring::{is_identifier, PolyRing, RingRef};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Slash,
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut column) = (1usize, 1usize);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            '/' => Some(Tok::Slash),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line: l0, column: c0 });
            i += 1;
            column += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Int(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            column += i - start;
            out.push(Token {
                tok: Tok::Ident(chars[start..i].iter().collect()),
                line: l0,
                column: c0,
            });
            continue;
        }
        return Err(Error::Parse {
            line: l0,
            column: c0,
            message: format!("unexpected character {c:?}"),
        });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    ring: Option<&'a RingRef>,
}

impl<'a> Parser<'a> {
    fn new(text: &str, ring: Option<&'a RingRef>) -> Result<Self> {
        Ok(Self { toks: lex(text)?, pos: 0, ring })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error_at(&self, tok: &Token, message: impl Into<String>) -> Error {
        Error::Parse {
            line: tok.line,
            column: tok.column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(&self.toks[self.pos], message)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<Token> {
        if *self.peek() == want {
            Ok(self.next())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn ring(&self) -> &'a RingRef {
        self.ring.expect("polynomial parsing needs a ring")
    }

    fn int_mod_p(&self, digits: &str) -> u64 {
        let p = self.ring().characteristic() as u128;
        digits
            .bytes()
            .fold(0u128, |acc, b| (acc * 10 + (b - b'0') as u128) % p) as u64
    }

    fn exponent(&mut self) -> Result<u64> {
        let tok = self.next();
        match &tok.tok {
            Tok::Int(d) => d.parse::<u64>().map_err(|_| self.error_at(&tok, "exponent too large")),
            _ => Err(self.error_at(&tok, "expected an integer exponent")),
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let ring = self.ring();
        let mut acc = Poly::zero(ring);
        let mut sign = 1u64;
        match self.peek() {
            Tok::Plus => {
                self.next();
            }
            Tok::Minus => {
                self.next();
                sign = ring.field().neg(1);
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = acc.add_unchecked(&t, sign);
            match self.peek() {
                Tok::Plus => {
                    self.next();
                    sign = 1;
                }
                Tok::Minus => {
                    self.next();
                    sign = ring.field().neg(1);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.next();
                }
                Tok::Int(_) | Tok::Ident(_) | Tok::LParen => {}
                _ => return Ok(acc),
            }
            let f = self.factor()?;
            acc = acc.mul_unchecked(&f)?;
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        if *self.peek() == Tok::Minus {
            self.next();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.next();
            let e = self.exponent()?;
            return base.pow(e);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let ring = self.ring();
        let tok = self.next();
        match &tok.tok {
            Tok::Int(d) => Ok(Poly::monomial(ring, ring.one_monomial(), self.int_mod_p(d))),
            Tok::Ident(name) => match ring.var_index(name) {
                Some(i) => Ok(ring.var(i)),
                None => Err(self.error_at(&tok, format!("unknown identifier {name:?}"))),
            },
            Tok::LParen => {
                let inner = self.poly()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(self.error_at(&tok, "expected a number, variable or '('")),
        }
    }

    fn poly_list(&mut self) -> Result<Vec<Poly>> {
        self.expect(Tok::LParen, "'('")?;
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.next();
            return Ok(out);
        }
        loop {
            out.push(self.poly()?);
            let tok = self.next();
            match tok.tok {
                Tok::Comma => continue,
                Tok::RParen => return Ok(out),
                _ => return Err(self.error_at(&tok, "expected ',' or ')'")),
            }
        }
    }
}

/// Parses `F<p>[vars]` optionally followed by `/(defining polynomials)`.
pub fn parse_ring(text: &str, order: MonomialOrder) -> Result<RingSpec> {
    let mut ps = Parser::new(text, None)?;
    let head = ps.next();
    let p = match &head.tok {
        Tok::Ident(s) if s.len() > 1 && s.starts_with('F') && s[1..].bytes().all(|b| b.is_ascii_digit()) => {
            s[1..].parse::<u64>().map_err(|_| ps.error_at(&head, "characteristic too large"))?
        }
        _ => return Err(ps.error_at(&head, "expected a prime field such as F2")),
    };
    ps.expect(Tok::LBracket, "'['")?;
    let mut names = Vec::new();
    loop {
        let tok = ps.next();
        match &tok.tok {
            Tok::Ident(s) if is_identifier(s) => {
                if names.contains(s) {
                    return Err(ps.error_at(&tok, format!("duplicate variable {s:?}")));
                }
                names.push(s.clone());
            }
            _ => return Err(ps.error_at(&tok, "expected a variable name")),
        }
        let tok = ps.next();
        match tok.tok {
            Tok::Comma => continue,
            Tok::RBracket => break,
            _ => return Err(ps.error_at(&tok, "expected ',' or ']'")),
        }
    }
    let ring = PolyRing::with_names(p, names, order)?;
    let mut defining = Vec::new();
    if *ps.peek() == Tok::Slash {
        ps.next();
        let mut inner = Parser {
            toks: ps.toks.clone(),
            pos: ps.pos,
            ring: Some(&ring),
        };
        defining = inner.poly_list()?;
        inner.expect_end()?;
    } else {
        ps.expect_end()?;
    }
    RingSpec::new(&ring, defining)
}

pub fn parse_poly(ring: &RingRef, text: &str) -> Result<Poly> {
    let mut ps = Parser::new(text, Some(ring))?;
    let f = ps.poly()?;
    ps.expect_end()?;
    Ok(f)
}

/// Parses `(f_1, …, f_k)`; `()` is the zero ideal.
pub fn parse_ideal(ring: &RingRef, text: &str) -> Result<Ideal> {
    let mut ps = Parser::new(text, Some(ring))?;
    let gens = ps.poly_list()?;
    ps.expect_end()?;
    Ideal::new(ring, gens)
}

/// Comma-separated polynomials without enclosing parentheses.
pub fn parse_poly_list(ring: &RingRef, text: &str) -> Result<Vec<Poly>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    parse_ideal(ring, &format!("({text})")).map(|i| i.generators().to_vec())
}

pub fn print_ring(spec: &RingSpec) -> String {
    spec.describe()
}

/// Prints the reduced Gröbner basis, so equal ideals print identically.
pub fn print_ideal(i: &Ideal) -> String {
    let gens: Vec<String> = i.gb().iter().map(|g| g.to_string()).collect();
    format!("({})", gens.join(", "))
}
