//! Text syntax for nil-Hecke elements and polynomials.
//!
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' INT)*
//! atom   := RATIONAL | x1..x4 | y | tau<i> | s<i> | delta<i> | '(' expr ')'
//! ```
//!
//! Products are noncommutative and left-associative. Rendered elements parse
//! back to themselves.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::nilhecke::{HeckeError, NilHecke, Perm, MAX_STRANDS};
use crate::poly::{Polynomial, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("at offset {offset}: {message}")]
pub struct ParseError {
    /// Byte offset into the input.
    pub offset: usize,
    pub message: String,
}

fn err(offset: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        offset,
        message: message.into(),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(Scalar),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    token: Token,
    offset: usize,
}

fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let c = bytes[k] as char;
        let start = k;
        if c.is_ascii_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            let numer: BigInt = src[start..k].parse().expect("digits");
            let mut value = Scalar::from_integer(numer);
            if k < bytes.len() && bytes[k] == b'/' {
                let d0 = k + 1;
                let mut d1 = d0;
                while d1 < bytes.len() && bytes[d1].is_ascii_digit() {
                    d1 += 1;
                }
                if d1 == d0 {
                    return Err(err(k, "expected denominator after '/'"));
                }
                let denom: BigInt = src[d0..d1].parse().expect("digits");
                if denom.is_zero() {
                    return Err(err(d0, "zero denominator"));
                }
                value /= Scalar::from_integer(denom);
                k = d1;
            }
            out.push(Spanned {
                token: Token::Number(value),
                offset: start,
            });
        } else if c.is_ascii_alphabetic() {
            while k < bytes.len() && bytes[k].is_ascii_alphanumeric() {
                k += 1;
            }
            out.push(Spanned {
                token: Token::Ident(src[start..k].to_string()),
                offset: start,
            });
        } else if "+-*^()".contains(c) {
            k += 1;
            out.push(Spanned {
                token: Token::Op(c),
                offset: start,
            });
        } else {
            let ch = src[start..].chars().next().expect("nonempty");
            return Err(err(start, format!("unexpected character '{ch}'")));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Atom {
    Scalar(Scalar),
    X(usize),
    Y,
    Tau(usize),
    S(usize),
    Delta(usize),
}

#[derive(Clone, Debug)]
enum Ast {
    Atom(Atom),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

fn classify(name: &str, offset: usize) -> Result<Atom, ParseError> {
    if name == "y" {
        return Ok(Atom::Y);
    }
    let split = name
        .find(|c: char| c.is_ascii_digit())
        .ok_or_else(|| err(offset, format!("unknown symbol '{name}'")))?;
    let (head, digits) = name.split_at(split);
    let index: usize = digits
        .parse()
        .map_err(|_| err(offset, format!("unknown symbol '{name}'")))?;
    let atom = match head {
        "x" => Atom::X(index),
        "tau" => Atom::Tau(index),
        "s" => Atom::S(index),
        "delta" => Atom::Delta(index),
        _ => return Err(err(offset, format!("unknown symbol '{name}'"))),
    };
    let ok = match atom {
        Atom::X(i) => (1..=MAX_STRANDS).contains(&i),
        _ => (1..MAX_STRANDS).contains(&index),
    };
    if !ok {
        return Err(err(offset, format!("index out of range in '{name}'")));
    }
    Ok(atom)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.token)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |t| t.offset)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut acc = if self.eat('-') {
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.atom()?;
        while self.eat('^') {
            let at = self.offset();
            let exponent = match self.tokens.get(self.pos).map(|t| t.token.clone()) {
                Some(Token::Number(q)) if q.is_integer() => q
                    .to_integer()
                    .try_into()
                    .map_err(|_| err(at, "exponent too large"))?,
                _ => return Err(err(at, "expected a nonnegative integer exponent")),
            };
            self.pos += 1;
            acc = Ast::Pow(Box::new(acc), exponent);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let at = self.offset();
        let token = self
            .tokens
            .get(self.pos)
            .map(|t| t.token.clone())
            .ok_or_else(|| err(at, "unexpected end of input"))?;
        self.pos += 1;
        match token {
            Token::Number(q) => Ok(Ast::Atom(Atom::Scalar(q))),
            Token::Ident(name) => Ok(Ast::Atom(classify(&name, at)?)),
            Token::Op('(') => {
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(err(self.offset(), "expected ')'"));
                }
                Ok(inner)
            }
            Token::Op(c) => Err(err(at, format!("unexpected '{c}'"))),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast, ParseError> {
    let mut parser = Parser {
        tokens: tokenize(src)?,
        pos: 0,
        end: src.len(),
    };
    let ast = parser.expr()?;
    if parser.pos < parser.tokens.len() {
        return Err(err(parser.offset(), "unexpected trailing input"));
    }
    Ok(ast)
}

/// Smallest arity in which every symbol makes sense.
fn required_arity(ast: &Ast) -> usize {
    match ast {
        Ast::Atom(atom) => match atom {
            Atom::Scalar(_) | Atom::Y => 1,
            Atom::X(i) => *i,
            Atom::Tau(i) | Atom::S(i) | Atom::Delta(i) => i + 1,
        },
        Ast::Neg(a) | Ast::Pow(a, _) => required_arity(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => required_arity(a).max(required_arity(b)),
    }
}

fn has_operators(ast: &Ast) -> bool {
    match ast {
        Ast::Atom(atom) => matches!(atom, Atom::Tau(_) | Atom::S(_) | Atom::Delta(_)),
        Ast::Neg(a) | Ast::Pow(a, _) => has_operators(a),
        Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => has_operators(a) || has_operators(b),
    }
}

fn eval(ast: &Ast, n: usize) -> Result<NilHecke, HeckeError> {
    Ok(match ast {
        Ast::Atom(atom) => match atom {
            Atom::Scalar(q) => NilHecke::one(n).scale(q),
            Atom::X(i) => NilHecke::x(n, *i)?,
            Atom::Y => NilHecke::y(n),
            Atom::Tau(i) => NilHecke::tau(n, *i)?,
            Atom::S(i) => NilHecke::s(n, *i)?,
            Atom::Delta(i) => NilHecke::delta(n, *i)?,
        },
        Ast::Neg(a) => eval(a, n)?.neg(),
        Ast::Add(a, b) => eval(a, n)?.checked_add(&eval(b, n)?)?,
        Ast::Sub(a, b) => eval(a, n)?.checked_sub(&eval(b, n)?)?,
        Ast::Mul(a, b) => eval(a, n)?.mul(&eval(b, n)?)?,
        Ast::Pow(a, e) => {
            let base = eval(a, n)?;
            let mut acc = NilHecke::one(n);
            for _ in 0..*e {
                acc = acc.mul(&base)?;
            }
            acc
        }
    })
}

/// Parse a nil-Hecke element. Without an explicit arity, the smallest one
/// covering every symbol is used.
pub fn parse_element(src: &str, arity: Option<usize>) -> Result<NilHecke, ParseError> {
    let ast = parse_ast(src)?;
    let needed = required_arity(&ast);
    let n = arity.unwrap_or(needed);
    if !(1..=MAX_STRANDS).contains(&n) {
        return Err(err(0, format!("arity {n} outside 1..={MAX_STRANDS}")));
    }
    if needed > n {
        return Err(err(0, format!("expression needs arity {needed} but arity is {n}")));
    }
    eval(&ast, n).map_err(|e| err(0, e.to_string()))
}

/// Parse a polynomial in `x1..x4, y`.
pub fn parse_polynomial(src: &str) -> Result<Polynomial, ParseError> {
    let ast = parse_ast(src)?;
    if has_operators(&ast) {
        return Err(err(0, "expected a polynomial, found an operator"));
    }
    let n = required_arity(&ast);
    let h = eval(&ast, n).map_err(|e| err(0, e.to_string()))?;
    Ok(h.coeff(&Perm::identity(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nf(src: &str) -> String {
        parse_element(src, None).unwrap().render()
    }

    #[test]
    fn mixed_relation_and_squares() {
        assert_eq!(nf("tau1 * x1"), "x2*tau1 + 1");
        assert_eq!(nf("s1 * s1"), "1");
        assert_eq!(nf("tau1 * tau1"), "0");
        assert_eq!(nf("-(x1 - x2)^2 + 1/2"), "-x1^2 + 2*x1*x2 - x2^2 + 1/2");
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(parse_element("x1 + + x2", None).unwrap_err().offset, 5);
        assert_eq!(parse_element("tau5", None).unwrap_err().offset, 0);
        assert_eq!(parse_element("(x1", None).unwrap_err().offset, 3);
        assert_eq!(parse_element("x1 $", None).unwrap_err().offset, 3);
        assert!(parse_element("tau3", Some(2)).is_err());
        assert!(parse_polynomial("tau1").is_err());
    }

    #[test]
    fn explicit_arity_widens() {
        assert_eq!(parse_element("x1", Some(3)).unwrap().n(), 3);
        assert_eq!(parse_polynomial("x1*y").unwrap().render(), "x1*y");
    }
}
