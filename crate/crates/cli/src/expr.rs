//! The diagram expression language.
//!
//! ```text
//! expr   := term (";" term)*
//! term   := factor ("*" factor)*
//! factor := primary ("^" INT)*
//! primary:= "U" | "A" | "S" | "X" | "id" "(" INT ")" | "(" expr ")"
//! ```
//!
//! `a ; b` applies `a` first, so it denotes `b ∘ a`. `*` is the tensor
//! product and `f^k` stacks `k` copies of an endomorphism.

use std::fmt;

use brauer::engine::GenKind;
use brauer::{Engine, Morphism};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Cup,
    Cap,
    Cross,
    Dot,
    Id(usize),
    Tensor(Box<Expr>, Box<Expr>),
    /// `Then(a, b)` is `a ; b`.
    Then(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExprError {
    Syntax { position: usize, message: String },
    Arity(String),
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExprError::Syntax { position, message } => write!(f, "syntax error at position {position}: {message}"),
            ExprError::Arity(m) => write!(f, "arity error: {m}"),
        }
    }
}

impl std::error::Error for ExprError {}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Then(..) => 0,
        Expr::Tensor(..) => 1,
        Expr::Pow(..) => 2,
        _ => 3,
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8, f: &mut fmt::Formatter<'_>| {
            if prec(e) < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Cup => f.write_str("U"),
            Expr::Cap => f.write_str("A"),
            Expr::Cross => f.write_str("S"),
            Expr::Dot => f.write_str("X"),
            Expr::Id(n) => write!(f, "id({n})"),
            Expr::Tensor(a, b) => {
                wrap(a, 1, f)?;
                f.write_str(" * ")?;
                wrap(b, 2, f)
            }
            Expr::Then(a, b) => {
                wrap(a, 0, f)?;
                f.write_str(" ; ")?;
                wrap(b, 1, f)
            }
            Expr::Pow(a, k) => {
                wrap(a, 3, f)?;
                write!(f, "^{k}")
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    i: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    /// 1-based character position of the cursor.
    fn position(&self) -> usize {
        self.chars.get(self.i).map_or(self.text.chars().count() + 1, |(p, _)| *p + 1)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Syntax { position: self.position(), message: message.into() })
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.i).is_some_and(|(_, c)| c.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.i).map(|(_, c)| *c)
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.peek() == Some(c) {
            self.i += 1;
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn int(&mut self) -> Result<u64, ExprError> {
        self.skip_ws();
        let start = self.i;
        while self.chars.get(self.i).is_some_and(|(_, c)| c.is_ascii_digit()) {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected a non-negative integer");
        }
        let digits: String = self.chars[start..self.i].iter().map(|(_, c)| c).collect();
        match digits.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.i = start;
                self.err("integer is too large")
            }
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.term()?;
        while self.peek() == Some(';') {
            self.i += 1;
            e = Expr::Then(Box::new(e), Box::new(self.term()?));
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.factor()?;
        while self.peek() == Some('*') {
            self.i += 1;
            e = Expr::Tensor(Box::new(e), Box::new(self.factor()?));
        }
        Ok(e)
    }

    fn factor(&mut self) -> Result<Expr, ExprError> {
        let mut e = self.primary()?;
        while self.peek() == Some('^') {
            self.i += 1;
            let k = self.int()?;
            let k = u32::try_from(k).or_else(|_| self.err("exponent is too large"))?;
            e = Expr::Pow(Box::new(e), k);
        }
        Ok(e)
    }

    fn primary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some('(') => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('U') => self.atom(Expr::Cup),
            Some('A') => self.atom(Expr::Cap),
            Some('S') => self.atom(Expr::Cross),
            Some('X') => self.atom(Expr::Dot),
            Some('i') => {
                let rest: String = self.chars[self.i..].iter().take(2).map(|(_, c)| c).collect();
                if rest != "id" {
                    return self.err("unknown atom; expected U, A, S, X or id(n)");
                }
                self.i += 2;
                self.expect('(')?;
                let n = self.int()?;
                let n = usize::try_from(n).or_else(|_| self.err("strand count is too large"))?;
                self.expect(')')?;
                Ok(Expr::Id(n))
            }
            Some(_) => self.err("unexpected character; expected U, A, S, X, id(n) or `(`"),
            None => self.err("unexpected end of input"),
        }
    }

    fn atom(&mut self, e: Expr) -> Result<Expr, ExprError> {
        self.i += 1;
        if self.chars.get(self.i).is_some_and(|(_, c)| c.is_alphanumeric()) {
            self.i -= 1;
            return self.err("unknown atom; expected U, A, S, X or id(n)");
        }
        Ok(e)
    }
}

pub fn parse(text: &str) -> Result<Expr, ExprError> {
    let mut p = Parser { chars: text.chars().enumerate().collect(), i: 0, text };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

impl Expr {
    /// `(source, target)` widths, checking every composition and power.
    pub fn widths(&self) -> Result<(usize, usize), ExprError> {
        Ok(match self {
            Expr::Cup => (0, 2),
            Expr::Cap => (2, 0),
            Expr::Cross => (2, 2),
            Expr::Dot => (1, 1),
            Expr::Id(n) => (*n, *n),
            Expr::Tensor(a, b) => {
                let (x, y) = (a.widths()?, b.widths()?);
                (x.0 + y.0, x.1 + y.1)
            }
            Expr::Then(a, b) => {
                let (x, y) = (a.widths()?, b.widths()?);
                if x.1 != y.0 {
                    return Err(ExprError::Arity(format!(
                        "`{a}` has target width {} but `{b}` has source width {}",
                        x.1, y.0
                    )));
                }
                (x.0, y.1)
            }
            Expr::Pow(a, _) => {
                let x = a.widths()?;
                if x.0 != x.1 {
                    return Err(ExprError::Arity(format!(
                        "`{a}` is not an endomorphism: widths {} -> {}",
                        x.0, x.1
                    )));
                }
                x
            }
        })
    }

    /// Evaluates in the (monoidal) category of `engine`.
    pub fn eval(&self, engine: &Engine) -> anyhow::Result<Morphism> {
        self.widths()?;
        Ok(match self {
            Expr::Cup => engine.generator(GenKind::Cup)?,
            Expr::Cap => engine.generator(GenKind::Cap)?,
            Expr::Cross => engine.generator(GenKind::Cross)?,
            Expr::Dot => engine.generator(GenKind::Dot)?,
            Expr::Id(n) => engine.identity(*n),
            Expr::Tensor(a, b) => engine.tensor(&a.eval(engine)?, &b.eval(engine)?)?,
            Expr::Then(a, b) => engine.compose(&b.eval(engine)?, &a.eval(engine)?)?,
            Expr::Pow(a, k) => {
                let f = a.eval(engine)?;
                let mut acc = engine.identity(f.source());
                for _ in 0..*k {
                    acc = engine.compose(&f, &acc)?;
                }
                acc
            }
        })
    }
}
