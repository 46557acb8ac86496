//! The generator-term language: abstract syntax, evaluation, rendering.
//!
//! Terms are built from decimal naturals, the indeterminate `X`, the index
//! variable `n`, the prime function `p(e)`, `floor(e)`, the four arithmetic
//! operators, unary minus and `^` with a natural-literal exponent. The
//! concrete grammar lives in [`parse`]; spec documents that carry terms are
//! handled in [`spec`].

pub mod parse;
pub mod spec;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::rational::{floor as rat_floor, nth_prime, Rational};
use crate::field::{FieldElem, FieldTag};

pub use parse::parse_expr;
pub use spec::{parse_spec, MonoidSpec, SpecSource};

/// Abstract syntax of a generator term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Nat(BigUint),
    VarX,
    VarN,
    Prime(Box<Expr>),
    Floor(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    /// Exponents are nonnegative integer literals only; chaining is a
    /// syntax error, so no associativity convention is ever needed.
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn nat(n: u64) -> Expr {
        Expr::Nat(BigUint::from(n))
    }

    /// Does the term mention the indeterminate X?
    pub fn contains_x(&self) -> bool {
        match self {
            Expr::VarX => true,
            Expr::Nat(_) | Expr::VarN => false,
            Expr::Prime(e) | Expr::Floor(e) | Expr::Neg(e) | Expr::Pow(e, _) => e.contains_x(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_x() || b.contains_x()
            }
        }
    }

    /// Does the term mention the index variable n?
    pub fn contains_n(&self) -> bool {
        match self {
            Expr::VarN => true,
            Expr::Nat(_) | Expr::VarX => false,
            Expr::Prime(e) | Expr::Floor(e) | Expr::Neg(e) | Expr::Pow(e, _) => e.contains_n(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_n() || b.contains_n()
            }
        }
    }
}

/// Exact evaluation of a term at index value `n_value` in the given field.
///
/// `p(k)` is the k-th prime; `floor` is defined only on rational constants.
/// Under the `Q` tag the term must be X-free.
pub fn eval_expr(e: &Expr, n_value: u64, tag: FieldTag) -> Result<FieldElem> {
    match e {
        Expr::Nat(k) => Ok(FieldElem::constant(
            tag,
            Rational::from_integer(BigInt::from(k.clone())),
        )),
        Expr::VarX => match tag {
            FieldTag::QX => Ok(FieldElem::x()),
            FieldTag::Q => Err(Error::Domain("X is not an element of Q".into())),
        },
        Expr::VarN => Ok(FieldElem::constant(tag, Rational::from_integer(n_value.into()))),
        Expr::Prime(arg) => {
            let v = eval_expr(arg, n_value, tag)?;
            let q = v
                .as_rational()
                .filter(|q| q.is_integer() && q.is_positive())
                .ok_or_else(|| Error::PrimeArgument(v.to_string()))?;
            let k = q
                .to_integer()
                .to_u64()
                .ok_or_else(|| Error::PrimeArgument(format!("{q} is too large")))?;
            Ok(FieldElem::constant(tag, Rational::from_integer(nth_prime(k)?.into())))
        }
        Expr::Floor(arg) => {
            let v = eval_expr(arg, n_value, tag)?;
            let q = v.as_rational().ok_or_else(|| Error::FloorNonConstant(v.to_string()))?;
            Ok(FieldElem::constant(tag, Rational::from_integer(rat_floor(&q))))
        }
        Expr::Neg(a) => Ok(eval_expr(a, n_value, tag)?.neg()),
        Expr::Add(a, b) => eval_expr(a, n_value, tag)?.add(&eval_expr(b, n_value, tag)?),
        Expr::Sub(a, b) => eval_expr(a, n_value, tag)?.sub(&eval_expr(b, n_value, tag)?),
        Expr::Mul(a, b) => eval_expr(a, n_value, tag)?.mul(&eval_expr(b, n_value, tag)?),
        Expr::Div(a, b) => eval_expr(a, n_value, tag)?.div(&eval_expr(b, n_value, tag)?),
        Expr::Pow(a, k) => Ok(eval_expr(a, n_value, tag)?.pow(*k)),
    }
}

// Precedence levels used by the renderer; higher binds tighter.
const PREC_ADD: u8 = 1;
const PREC_MUL: u8 = 2;
const PREC_NEG: u8 = 3;
const PREC_POW: u8 = 4;
const PREC_ATOM: u8 = 5;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => PREC_ADD,
        Expr::Mul(..) | Expr::Div(..) => PREC_MUL,
        Expr::Neg(..) => PREC_NEG,
        Expr::Pow(..) => PREC_POW,
        Expr::Nat(_) | Expr::VarX | Expr::VarN | Expr::Prime(_) | Expr::Floor(_) => PREC_ATOM,
    }
}

fn render_at(e: &Expr, min_prec: u8, out: &mut String) {
    let own = prec(e);
    let parens = own < min_prec;
    if parens {
        out.push('(');
    }
    match e {
        Expr::Nat(k) => out.push_str(&k.to_string()),
        Expr::VarX => out.push('X'),
        Expr::VarN => out.push('n'),
        Expr::Prime(a) => {
            out.push_str("p(");
            render_at(a, 0, out);
            out.push(')');
        }
        Expr::Floor(a) => {
            out.push_str("floor(");
            render_at(a, 0, out);
            out.push(')');
        }
        Expr::Neg(a) => {
            out.push('-');
            render_at(a, PREC_NEG, out);
        }
        Expr::Add(a, b) => {
            render_at(a, PREC_ADD, out);
            out.push('+');
            render_at(b, PREC_ADD + 1, out);
        }
        Expr::Sub(a, b) => {
            render_at(a, PREC_ADD, out);
            out.push('-');
            render_at(b, PREC_ADD + 1, out);
        }
        Expr::Mul(a, b) => {
            render_at(a, PREC_MUL, out);
            out.push('*');
            render_at(b, PREC_MUL + 1, out);
        }
        Expr::Div(a, b) => {
            render_at(a, PREC_MUL, out);
            out.push('/');
            render_at(b, PREC_MUL + 1, out);
        }
        Expr::Pow(a, k) => {
            render_at(a, PREC_ATOM, out);
            out.push('^');
            out.push_str(&k.to_string());
        }
    }
    if parens {
        out.push(')');
    }
}

/// Renders a term so that reparsing yields a structurally equal tree.
pub fn render(e: &Expr) -> String {
    let mut out = String::new();
    render_at(e, 0, &mut out);
    out
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render(self))
    }
}
