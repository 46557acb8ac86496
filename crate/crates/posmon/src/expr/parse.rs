//! Recursive-descent parser for generator terms.
//!
//! Grammar, lowest precedence first (whitespace insignificant):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' NAT)?
//! atom  := NAT | 'X' | 'n' | 'p' '(' expr ')' | 'floor' '(' expr ')' | '(' expr ')'
//! ```
//!
//! Errors carry the byte offset of the offending input together with the
//! set of tokens that would have been accepted there.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use super::Expr;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Nat(BigUint),
    X,
    N,
    P,
    Floor,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Nat(_) => "a natural number".into(),
            Token::X => "'X'".into(),
            Token::N => "'n'".into(),
            Token::P => "'p'".into(),
            Token::Floor => "'floor'".into(),
            Token::LParen => "'('".into(),
            Token::RParen => "')'".into(),
            Token::Plus => "'+'".into(),
            Token::Minus => "'-'".into(),
            Token::Star => "'*'".into(),
            Token::Slash => "'/'".into(),
            Token::Caret => "'^'".into(),
            Token::End => "end of input".into(),
        }
    }
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Lexer<'a> {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Next token plus the byte offset where it starts.
    fn next(&mut self) -> Result<(Token, usize)> {
        self.skip_ws();
        let at = self.pos;
        if self.pos >= self.src.len() {
            return Ok((Token::End, at));
        }
        let c = self.src[self.pos];
        let simple = match c {
            b'(' => Some(Token::LParen),
            b')' => Some(Token::RParen),
            b'+' => Some(Token::Plus),
            b'-' => Some(Token::Minus),
            b'*' => Some(Token::Star),
            b'/' => Some(Token::Slash),
            b'^' => Some(Token::Caret),
            _ => None,
        };
        if let Some(tok) = simple {
            self.pos += 1;
            return Ok((tok, at));
        }
        if c.is_ascii_digit() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return Ok((Token::Nat(digits.parse::<BigUint>().unwrap()), at));
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                self.pos += 1;
            }
            let word = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            return match word {
                "X" => Ok((Token::X, at)),
                "n" => Ok((Token::N, at)),
                "p" => Ok((Token::P, at)),
                "floor" => Ok((Token::Floor, at)),
                _ => Err(syntax(at, "'X', 'n', 'p' or 'floor'")),
            };
        }
        Err(syntax(at, "a number, a variable, a function or '('"))
    }
}

fn syntax(offset: usize, expected: &str) -> Error {
    Error::Syntax { offset, expected: expected.to_string() }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: (Token, usize),
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Parser<'a>> {
        let mut lexer = Lexer::new(src);
        let lookahead = lexer.next()?;
        Ok(Parser { lexer, lookahead })
    }

    fn peek(&self) -> &Token {
        &self.lookahead.0
    }

    fn offset(&self) -> usize {
        self.lookahead.1
    }

    fn advance(&mut self) -> Result<Token> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.lookahead, next).0)
    }

    fn expect(&mut self, tok: Token) -> Result<()> {
        if *self.peek() == tok {
            self.advance()?;
            Ok(())
        } else {
            Err(syntax(self.offset(), &tok.describe()))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Token::Plus => {
                    self.advance()?;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.advance()?;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Token::Star => {
                    self.advance()?;
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Token::Slash => {
                    self.advance()?;
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Token::Minus {
            self.advance()?;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() != Token::Caret {
            return Ok(base);
        }
        self.advance()?;
        let at = self.offset();
        match self.advance()? {
            Token::Nat(k) => {
                let small = k
                    .to_u32()
                    .ok_or_else(|| syntax(at, "an exponent that fits in 32 bits"))?;
                Ok(Expr::Pow(Box::new(base), small))
            }
            _ => Err(syntax(at, "a natural-number exponent")),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let at = self.offset();
        match self.advance()? {
            Token::Nat(k) => Ok(Expr::Nat(k)),
            Token::X => Ok(Expr::VarX),
            Token::N => Ok(Expr::VarN),
            Token::P => {
                self.expect(Token::LParen)?;
                let arg = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(Expr::Prime(Box::new(arg)))
            }
            Token::Floor => {
                self.expect(Token::LParen)?;
                let arg = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(Expr::Floor(Box::new(arg)))
            }
            Token::LParen => {
                let inner = self.expr()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            _ => Err(syntax(at, "a number, 'X', 'n', 'p(...)', 'floor(...)' or '('")),
        }
    }
}

/// Parses one generator term; the whole input must be consumed.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut parser = Parser::new(src)?;
    let e = parser.expr()?;
    if *parser.peek() != Token::End {
        return Err(syntax(parser.offset(), "'+', '-', '*', '/' or end of input"));
    }
    Ok(e)
}
