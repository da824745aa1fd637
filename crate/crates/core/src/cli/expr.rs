//! The expression grammar:
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ['^' ['-'] INT]
//! atom   := INT | 'x' | 'theta' | 'W' | 'X' '[' INT ']' '[' INT ']' | '(' expr ')'
//! ```
//!
//! Parsing produces a position-annotated tree; evaluation maps it into the
//! target ring and reports errors at the offending node.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::algebra::{ConstElem, ConstField, RatFunc};
use crate::invariants::as_lambda_w_power;
use crate::poly::{MultiPoly, VarSpace};
use crate::pv::LocalizedPoly;

use super::CliError;

/// Line and column, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl Pos {
    pub fn error(self, msg: impl Into<String>) -> CliError {
        CliError::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Node {
    Int(BigInt),
    X,
    Theta,
    W,
    Var(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub node: Node,
    pub pos: Pos,
}

fn tokenize(text: &str, origin: Pos) -> Result<Vec<(Tok, Pos)>, CliError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let at = |i: usize| Pos {
        line: origin.line,
        col: origin.col + i,
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().unwrap()), at(start)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), at(start)));
        } else if "+-*/^()[]".contains(c) {
            out.push((Tok::Sym(c), at(i)));
            i += 1;
        } else {
            return Err(at(i).error(format!("unexpected character '{c}'")));
        }
    }
    out.push((Tok::End, at(chars.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    k: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.k].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.k].clone();
        if self.k + 1 < self.toks.len() {
            self.k += 1;
        }
        t
    }

    fn expect(&mut self, c: char) -> Result<(), CliError> {
        match self.bump() {
            (Tok::Sym(s), _) if s == c => Ok(()),
            (t, p) => Err(p.error(format!("expected '{c}', found {}", describe(&t)))),
        }
    }

    fn int(&mut self) -> Result<BigInt, CliError> {
        match self.bump() {
            (Tok::Int(n), _) => Ok(n),
            (t, p) => Err(p.error(format!("expected an integer, found {}", describe(&t)))),
        }
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        let mut lhs = match self.peek() {
            Tok::Sym('-') => {
                self.bump();
                let t = self.term()?;
                Expr {
                    node: Node::Neg(Box::new(t)),
                    pos,
                }
            }
            Tok::Sym('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        while let Tok::Sym(c @ ('+' | '-')) = *self.peek() {
            let pos = self.pos();
            self.bump();
            let rhs = Box::new(self.term()?);
            let node = if c == '+' {
                Node::Add(Box::new(lhs), rhs)
            } else {
                Node::Sub(Box::new(lhs), rhs)
            };
            lhs = Expr { node, pos };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let mut lhs = self.factor()?;
        while let Tok::Sym(c @ ('*' | '/')) = *self.peek() {
            let pos = self.pos();
            self.bump();
            let rhs = Box::new(self.factor()?);
            let node = if c == '*' {
                Node::Mul(Box::new(lhs), rhs)
            } else {
                Node::Div(Box::new(lhs), rhs)
            };
            lhs = Expr { node, pos };
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.bump();
        let negative = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let epos = self.pos();
        let e = self.int()?;
        let e = e.to_i64().filter(|e| *e <= u32::MAX as i64).ok_or_else(|| epos.error("exponent too large"))?;
        Ok(Expr {
            node: Node::Pow(Box::new(base), if negative { -e } else { e }),
            pos,
        })
    }

    fn index(&mut self) -> Result<usize, CliError> {
        self.expect('[')?;
        let pos = self.pos();
        let i = self.int()?;
        self.expect(']')?;
        i.to_usize().filter(|&i| i >= 1).ok_or_else(|| pos.error("indices are 1-based"))
    }

    fn atom(&mut self) -> Result<Expr, CliError> {
        let (t, pos) = self.bump();
        let node = match t {
            Tok::Int(n) => Node::Int(n),
            Tok::Ident(s) => match s.as_str() {
                "x" => Node::X,
                "theta" => Node::Theta,
                "W" => Node::W,
                "X" => {
                    let i = self.index()?;
                    let j = self.index()?;
                    Node::Var(i, j)
                }
                _ => return Err(pos.error(format!("unknown identifier '{s}'"))),
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            t => return Err(pos.error(format!("expected an operand, found {}", describe(&t)))),
        };
        Ok(Expr { node, pos })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("'{n}'"),
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Sym(c) => format!("'{c}'"),
        Tok::End => "end of input".into(),
    }
}

/// Parses `text`, whose first character sits at `origin`.
pub fn parse_expr(text: &str, origin: Pos) -> Result<Expr, CliError> {
    let mut p = Parser {
        toks: tokenize(text, origin)?,
        k: 0,
    };
    let e = p.expr()?;
    match p.bump() {
        (Tok::End, _) => Ok(e),
        (t, pos) => Err(pos.error(format!("unexpected {}", describe(&t)))),
    }
}

/// A ring the grammar can be evaluated into.
trait Target {
    type V: Clone;
    fn int(&self, n: &BigInt) -> Self::V;
    fn leaf(&self, node: &Node, pos: Pos) -> Result<Self::V, CliError>;
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V;
    fn neg(&self, a: &Self::V) -> Self::V;
    fn div(&self, a: &Self::V, b: &Self::V, pos: Pos) -> Result<Self::V, CliError>;
    fn pow(&self, a: &Self::V, e: i64, pos: Pos) -> Result<Self::V, CliError>;
}

fn eval<T: Target>(t: &T, e: &Expr) -> Result<T::V, CliError> {
    Ok(match &e.node {
        Node::Int(n) => t.int(n),
        Node::Neg(a) => t.neg(&eval(t, a)?),
        Node::Add(a, b) => t.add(&eval(t, a)?, &eval(t, b)?),
        Node::Sub(a, b) => t.sub(&eval(t, a)?, &eval(t, b)?),
        Node::Mul(a, b) => t.mul(&eval(t, a)?, &eval(t, b)?),
        Node::Div(a, b) => t.div(&eval(t, a)?, &eval(t, b)?, e.pos)?,
        Node::Pow(a, k) => t.pow(&eval(t, a)?, *k, e.pos)?,
        leaf => t.leaf(leaf, e.pos)?,
    })
}

fn big_rational(n: &BigInt) -> BigRational {
    BigRational::from_integer(n.clone())
}

/// Dense polynomials in `theta` with rational coefficients, lowest degree first.
struct ThetaPolys;

impl ThetaPolys {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }
}

impl Target for ThetaPolys {
    type V = Vec<BigRational>;
    fn int(&self, n: &BigInt) -> Self::V {
        Self::trim(vec![big_rational(n)])
    }
    fn leaf(&self, node: &Node, pos: Pos) -> Result<Self::V, CliError> {
        match node {
            Node::Theta => Ok(vec![BigRational::zero(), BigRational::one()]),
            _ => Err(pos.error("only theta may appear in a minimal polynomial")),
        }
    }
    fn add(&self, a: &Self::V, b: &Self::V) -> Self::V {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        Self::trim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
    }
    fn sub(&self, a: &Self::V, b: &Self::V) -> Self::V {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Self::V, b: &Self::V) -> Self::V {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::trim(out)
    }
    fn neg(&self, a: &Self::V) -> Self::V {
        a.iter().map(|c| -c).collect()
    }
    fn div(&self, a: &Self::V, b: &Self::V, pos: Pos) -> Result<Self::V, CliError> {
        match b.as_slice() {
            [c] => Ok(a.iter().map(|x| x / c).collect()),
            _ => Err(pos.error("division by a non-constant in a minimal polynomial")),
        }
    }
    fn pow(&self, a: &Self::V, e: i64, pos: Pos) -> Result<Self::V, CliError> {
        if e < 0 {
            return Err(pos.error("negative exponent in a minimal polynomial"));
        }
        Ok((0..e).fold(vec![BigRational::one()], |acc, _| self.mul(&acc, a)))
    }
}

/// Elements of `C`.
struct Constants<'a>(&'a ConstField);

impl Target for Constants<'_> {
    type V = ConstElem;
    fn int(&self, n: &BigInt) -> ConstElem {
        self.0.from_rational(big_rational(n))
    }
    fn leaf(&self, node: &Node, pos: Pos) -> Result<ConstElem, CliError> {
        match node {
            Node::Theta => Ok(self.0.theta()),
            _ => Err(pos.error("expected a constant (integers and theta only)")),
        }
    }
    fn add(&self, a: &ConstElem, b: &ConstElem) -> ConstElem {
        a + b
    }
    fn sub(&self, a: &ConstElem, b: &ConstElem) -> ConstElem {
        a - b
    }
    fn mul(&self, a: &ConstElem, b: &ConstElem) -> ConstElem {
        a * b
    }
    fn neg(&self, a: &ConstElem) -> ConstElem {
        -a
    }
    fn div(&self, a: &ConstElem, b: &ConstElem, pos: Pos) -> Result<ConstElem, CliError> {
        Ok(a * &b.inv().ok_or_else(|| pos.error("division by zero"))?)
    }
    fn pow(&self, a: &ConstElem, e: i64, pos: Pos) -> Result<ConstElem, CliError> {
        a.pow(e).ok_or_else(|| pos.error("zero raised to a negative power"))
    }
}

/// Elements of `K[X, 1/W]`; `K` itself is the constant part.
struct Localized<'a> {
    space: VarSpace,
    field: &'a ConstField,
}

impl Target for Localized<'_> {
    type V = LocalizedPoly;
    fn int(&self, n: &BigInt) -> LocalizedPoly {
        LocalizedPoly::constant(self.space, RatFunc::from_const(self.field.from_rational(big_rational(n))))
    }
    fn leaf(&self, node: &Node, pos: Pos) -> Result<LocalizedPoly, CliError> {
        let (s, f) = (self.space, self.field);
        Ok(match *node {
            Node::X => LocalizedPoly::constant(s, RatFunc::x(f)),
            Node::Theta => LocalizedPoly::constant(s, RatFunc::from_const(f.theta())),
            Node::W => LocalizedPoly::w_power(s, f, 1),
            Node::Var(i, j) => {
                if i > s.n || j > s.n {
                    return Err(pos.error(format!("X[{i}][{j}] is out of range for dimension {}", s.n)));
                }
                LocalizedPoly::from_poly(MultiPoly::x(s, f, i, j))
            }
            _ => unreachable!(),
        })
    }
    fn add(&self, a: &LocalizedPoly, b: &LocalizedPoly) -> LocalizedPoly {
        a.add(b)
    }
    fn sub(&self, a: &LocalizedPoly, b: &LocalizedPoly) -> LocalizedPoly {
        a.sub(b)
    }
    fn mul(&self, a: &LocalizedPoly, b: &LocalizedPoly) -> LocalizedPoly {
        a.mul(b)
    }
    fn neg(&self, a: &LocalizedPoly) -> LocalizedPoly {
        a.neg()
    }
    fn div(&self, a: &LocalizedPoly, b: &LocalizedPoly, pos: Pos) -> Result<LocalizedPoly, CliError> {
        Ok(a.mul(&self.unit_inverse(b, pos)?))
    }
    fn pow(&self, a: &LocalizedPoly, e: i64, pos: Pos) -> Result<LocalizedPoly, CliError> {
        if e >= 0 {
            Ok(a.pow(e as u32))
        } else {
            Ok(self.unit_inverse(a, pos)?.pow(e.unsigned_abs() as u32))
        }
    }
}

impl Localized<'_> {
    /// Inverse of `lambda W^N`; other elements are not units.
    fn unit_inverse(&self, b: &LocalizedPoly, pos: Pos) -> Result<LocalizedPoly, CliError> {
        if b.is_zero() {
            return Err(pos.error("division by zero"));
        }
        let (lambda, n) =
            as_lambda_w_power(b).ok_or_else(|| pos.error("only elements of K times powers of W can be inverted"))?;
        let inv = lambda.inv().map_err(|e| pos.error(e.to_string()))?;
        Ok(LocalizedPoly::w_power(self.space, self.field, -n).scale(&inv))
    }
}

/// Coefficients of a monic minimal polynomial in `theta`, lowest degree first.
pub fn eval_minpoly(e: &Expr) -> Result<Vec<BigRational>, CliError> {
    eval(&ThetaPolys, e)
}

pub fn eval_constant(e: &Expr, field: &ConstField) -> Result<ConstElem, CliError> {
    eval(&Constants(field), e)
}

pub fn eval_localized(e: &Expr, space: VarSpace, field: &ConstField) -> Result<LocalizedPoly, CliError> {
    eval(&Localized { space, field }, e)
}

/// An element of `K`: no `X` or `W` may survive evaluation.
pub fn eval_k(e: &Expr, field: &ConstField) -> Result<RatFunc, CliError> {
    let space = VarSpace::new(1);
    eval_localized(e, space, field)?
        .as_constant()
        .ok_or_else(|| e.pos.error("expected an element of K (no X or W)"))
}

/// An integer (possibly negative), as used in torus weights.
pub fn eval_int(e: &Expr) -> Result<i64, CliError> {
    let v = eval(&ThetaPolys, e)?;
    match v.as_slice() {
        [] => Ok(0),
        [c] if c.is_integer() => c.to_integer().to_i64().ok_or_else(|| e.pos.error("integer out of range")),
        _ => Err(e.pos.error("expected an integer")),
    }
}
