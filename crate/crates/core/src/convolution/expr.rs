//! Expression trees over arithmetic functions and their text syntax.
//!
//! Syntax, loosest binding first:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*          Dirichlet convolution
//! factor := unary (('.' | '/') unary)*    pointwise product / quotient
//! unary  := '-' unary | atom
//! atom   := integer | name | name '(' name ')' | '(' expr ')'
//! ```
//!
//! Integers denote constant functions, so `1` is the constant function one and
//! `1/2 . tau . delta` is one half of `tau(n) delta(n)`. Names are listed on
//! [`Builtin::from_name`].

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ladditive::LAdditiveFunction;
use crate::rational::{int, ExactRational};

/// Arithmetic functions that can appear as expression leaves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Builtin {
    /// Constant function one.
    One,
    /// Dirichlet identity, `eps(n) = floor(1/n)`.
    Eps,
    /// `n^k`; `k` may be negative.
    IdPow(i32),
    Mu,
    Tau,
    /// Sum of `k`-th powers of divisors.
    Sigma(u32),
    Phi,
    /// An L-additive function `f`.
    Additive(LAdditiveFunction),
    /// The completely multiplicative companion `h_f` of `f`.
    Multiplier(LAdditiveFunction),
    /// Generalized von Mangoldt function of `f`.
    Mangoldt(LAdditiveFunction),
    /// Deterministic pseudo-random integers in `[-3, 3]`, keyed by seed.
    Random(u64),
}

impl Builtin {
    /// Resolves a builtin name:
    /// `1`/`one`, `eps`, `id`, `id_<k>`, `mu`, `tau`, `sigma`, `sigma_<k>`,
    /// `phi`, `delta`, `ld`, `big_omega`, `delta_p:<prime>`, `h:<f>`,
    /// `lambda:<f>` (also `lambda_of:<f>`, `mangoldt:<f>`) and `rand:<seed>`.
    pub fn from_name(name: &str) -> Result<Builtin> {
        let unknown = || Error::UnknownName(name.to_string());
        let b = match name {
            "1" | "one" => Builtin::One,
            "eps" => Builtin::Eps,
            "id" => Builtin::IdPow(1),
            "mu" => Builtin::Mu,
            "tau" => Builtin::Tau,
            "sigma" => Builtin::Sigma(1),
            "phi" => Builtin::Phi,
            _ => {
                if let Some(k) = name.strip_prefix("id_") {
                    Builtin::IdPow(k.parse().map_err(|_| unknown())?)
                } else if let Some(k) = name.strip_prefix("sigma_") {
                    Builtin::Sigma(k.parse().map_err(|_| unknown())?)
                } else if let Some(f) = name.strip_prefix("h:") {
                    Builtin::Multiplier(LAdditiveFunction::from_name(f)?)
                } else if let Some(f) =
                    ["lambda:", "lambda_of:", "mangoldt:"].iter().find_map(|pre| name.strip_prefix(pre))
                {
                    Builtin::Mangoldt(LAdditiveFunction::from_name(f)?)
                } else if let Some(seed) = name.strip_prefix("rand:") {
                    Builtin::Random(seed.parse().map_err(|_| unknown())?)
                } else {
                    Builtin::Additive(LAdditiveFunction::from_name(name)?)
                }
            }
        };
        Ok(b)
    }
}

impl fmt::Display for Builtin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Builtin::One => write!(f, "1"),
            Builtin::Eps => write!(f, "eps"),
            Builtin::IdPow(1) => write!(f, "id"),
            Builtin::IdPow(k) => write!(f, "id_{k}"),
            Builtin::Mu => write!(f, "mu"),
            Builtin::Tau => write!(f, "tau"),
            Builtin::Sigma(1) => write!(f, "sigma"),
            Builtin::Sigma(k) => write!(f, "sigma_{k}"),
            Builtin::Phi => write!(f, "phi"),
            Builtin::Additive(g) => write!(f, "{g}"),
            Builtin::Multiplier(g) => write!(f, "h:{g}"),
            Builtin::Mangoldt(g) => write!(f, "lambda:{g}"),
            Builtin::Random(seed) => write!(f, "rand:{seed}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FunctionExpr {
    Builtin(Builtin),
    DirichletConv(Box<FunctionExpr>, Box<FunctionExpr>),
    PointwiseMul(Box<FunctionExpr>, Box<FunctionExpr>),
    /// Exact pointwise quotient; the divisor must not vanish on the range.
    PointwiseDiv(Box<FunctionExpr>, Box<FunctionExpr>),
    ScalarMul(ExactRational, Box<FunctionExpr>),
    Add(Box<FunctionExpr>, Box<FunctionExpr>),
    Negate(Box<FunctionExpr>),
}

impl From<Builtin> for FunctionExpr {
    fn from(b: Builtin) -> Self {
        FunctionExpr::Builtin(b)
    }
}

impl FunctionExpr {
    pub fn builtin(b: Builtin) -> Self {
        FunctionExpr::Builtin(b)
    }

    pub fn additive(f: LAdditiveFunction) -> Self {
        FunctionExpr::Builtin(Builtin::Additive(f))
    }

    pub fn multiplier(f: LAdditiveFunction) -> Self {
        FunctionExpr::Builtin(Builtin::Multiplier(f))
    }

    pub fn mangoldt(f: LAdditiveFunction) -> Self {
        FunctionExpr::Builtin(Builtin::Mangoldt(f))
    }

    pub fn constant(c: ExactRational) -> Self {
        if c.is_one() {
            FunctionExpr::Builtin(Builtin::One)
        } else {
            FunctionExpr::ScalarMul(c, Box::new(FunctionExpr::Builtin(Builtin::One)))
        }
    }

    /// Dirichlet convolution `self * other`.
    pub fn conv(self, other: FunctionExpr) -> Self {
        FunctionExpr::DirichletConv(Box::new(self), Box::new(other))
    }

    /// Pointwise product `self . other`.
    pub fn times(self, other: FunctionExpr) -> Self {
        FunctionExpr::PointwiseMul(Box::new(self), Box::new(other))
    }

    /// Pointwise quotient `self / other`.
    pub fn over(self, other: FunctionExpr) -> Self {
        FunctionExpr::PointwiseDiv(Box::new(self), Box::new(other))
    }

    pub fn scaled(self, c: ExactRational) -> Self {
        FunctionExpr::ScalarMul(c, Box::new(self))
    }

    pub fn plus(self, other: FunctionExpr) -> Self {
        FunctionExpr::Add(Box::new(self), Box::new(other))
    }

    pub fn minus(self, other: FunctionExpr) -> Self {
        FunctionExpr::Add(Box::new(self), Box::new(other.neg()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        FunctionExpr::Negate(Box::new(self))
    }

    /// The constant value when the expression is a constant function.
    pub fn as_constant(&self) -> Option<ExactRational> {
        match self {
            FunctionExpr::Builtin(Builtin::One) => Some(ExactRational::one()),
            FunctionExpr::ScalarMul(c, inner) => inner.as_constant().map(|v| c * v),
            FunctionExpr::Negate(inner) => inner.as_constant().map(|v| -v),
            _ => None,
        }
    }

    pub fn parse(src: &str) -> Result<FunctionExpr> {
        let tokens = lex(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::Parse(format!("unexpected '{}' in '{src}'", p.tokens[p.pos])));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            FunctionExpr::Add(..) => 1,
            FunctionExpr::DirichletConv(..) => 2,
            FunctionExpr::PointwiseMul(..) | FunctionExpr::PointwiseDiv(..) | FunctionExpr::ScalarMul(..) => 3,
            FunctionExpr::Negate(..) => 4,
            FunctionExpr::Builtin(_) => 5,
        }
    }
}

impl fmt::Display for FunctionExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // parenthesize a child unless it binds tighter than its parent; right
        // operands of left-associative operators also need equal precedence wrapped
        let child = |f: &mut fmt::Formatter<'_>, e: &FunctionExpr, min: u8| {
            if e.precedence() >= min {
                write!(f, "{e}")
            } else {
                write!(f, "({e})")
            }
        };
        match self {
            FunctionExpr::Builtin(b) => write!(f, "{b}"),
            FunctionExpr::DirichletConv(a, b) => {
                child(f, a, 2)?;
                write!(f, " * ")?;
                child(f, b, 3)
            }
            FunctionExpr::PointwiseMul(a, b) => {
                child(f, a, 3)?;
                write!(f, " . ")?;
                child(f, b, 4)
            }
            FunctionExpr::PointwiseDiv(a, b) => {
                child(f, a, 3)?;
                write!(f, " / ")?;
                child(f, b, 4)
            }
            FunctionExpr::ScalarMul(c, e) => {
                // BigRational prints integers without a denominator
                if c.denom().is_one() && c.numer() > &num_bigint::BigInt::zero() {
                    write!(f, "{c}")?;
                } else {
                    write!(f, "({c})")?;
                }
                if matches!(**e, FunctionExpr::Builtin(Builtin::One)) {
                    return Ok(());
                }
                write!(f, " . ")?;
                child(f, e, 4)
            }
            FunctionExpr::Add(a, b) => {
                child(f, a, 1)?;
                if let FunctionExpr::Negate(inner) = &**b {
                    write!(f, " - ")?;
                    child(f, inner, 2)
                } else {
                    write!(f, " + ")?;
                    child(f, b, 2)
                }
            }
            FunctionExpr::Negate(e) => {
                write!(f, "-")?;
                child(f, e, 4)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(ExactRational),
    Name(String),
    Op(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Int(v) => write!(f, "{v}"),
            Token::Name(s) => write!(f, "{s}"),
            Token::Op(c) => write!(f, "{c}"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' | '-' | '*' | '.' | '/' | '(' | ')' => {
                out.push(Token::Op(c));
                i += 1;
            }
            '∗' => {
                out.push(Token::Op('*'));
                i += 1;
            }
            '·' => {
                out.push(Token::Op('.'));
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v: num_bigint::BigInt = s.parse().map_err(|_| Error::Parse(s.clone()))?;
                out.push(Token::Int(int(v)));
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == ':') {
                    i += 1;
                    // negative powers: id_-1
                    if chars[i - 1] == '_' && i + 1 < chars.len() && chars[i] == '-' && chars[i + 1].is_ascii_digit() {
                        i += 1;
                    }
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            other => return Err(Error::Parse(format!("unexpected character '{other}' in '{src}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Token::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expect_op(&mut self, op: char) -> Result<()> {
        if self.peek_op() == Some(op) {
            self.pos += 1;
            Ok(())
        } else {
            Err(Error::Parse(format!("expected '{op}'")))
        }
    }

    fn expr(&mut self) -> Result<FunctionExpr> {
        let mut lhs = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = if op == '+' { lhs.plus(rhs) } else { lhs.minus(rhs) };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<FunctionExpr> {
        let mut lhs = self.factor()?;
        while self.peek_op() == Some('*') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = lhs.conv(rhs);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<FunctionExpr> {
        let mut lhs = self.unary()?;
        while let Some(op @ ('.' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = match (op, lhs.as_constant(), rhs.as_constant()) {
                ('/', Some(a), Some(b)) => {
                    if b.is_zero() {
                        return Err(Error::Parse("division by constant zero".into()));
                    }
                    FunctionExpr::constant(a / b)
                }
                ('.', Some(a), _) => rhs.scaled(a),
                ('.', None, _) => lhs.times(rhs),
                _ => lhs.over(rhs),
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<FunctionExpr> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            let inner = self.unary()?;
            return Ok(match inner.as_constant() {
                Some(c) => FunctionExpr::constant(-c),
                None => inner.neg(),
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<FunctionExpr> {
        let tok =
            self.tokens.get(self.pos).cloned().ok_or_else(|| Error::Parse("unexpected end of expression".into()))?;
        self.pos += 1;
        match tok {
            Token::Int(v) => Ok(FunctionExpr::constant(v)),
            Token::Op('(') => {
                let e = self.expr()?;
                self.expect_op(')')?;
                Ok(e)
            }
            Token::Name(name) => {
                // lambda_of(ld), h_of(delta)
                if self.peek_op() == Some('(') {
                    let prefix = match name.as_str() {
                        "lambda_of" | "lambda" | "mangoldt" => "lambda:",
                        "h_of" | "h" => "h:",
                        _ => return Err(Error::Parse(format!("'{name}' does not take an argument"))),
                    };
                    self.pos += 1;
                    let arg = match self.tokens.get(self.pos) {
                        Some(Token::Name(a)) => a.clone(),
                        _ => return Err(Error::Parse(format!("expected a function name after '{name}('"))),
                    };
                    self.pos += 1;
                    self.expect_op(')')?;
                    return Ok(Builtin::from_name(&format!("{prefix}{arg}"))?.into());
                }
                Ok(Builtin::from_name(&name)?.into())
            }
            Token::Op(c) => Err(Error::Parse(format!("unexpected '{c}'"))),
        }
    }
}
