//! A small expression language for generating functions defined by
//! self-referential equations.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expr     := term (("+" | "-") term)*
//! term     := factor (("*" | "/") factor)*
//! factor   := base ("^" uint)?
//! base     := rational | "x" | "G" | ident | "(" expr ")"
//! rational := uint ("/" uint)?
//! ident    := [a-z][a-z0-9_]*   except "x"
//! ```
//!
//! `G` is the self-reference symbol; an expression containing it defines a
//! series implicitly and is evaluated with the fixed-point solver. There is
//! no unary minus (write `0 - e`) and no implicit multiplication. Note that
//! a `/` between two integer literals binds as a rational literal, exactly
//! as the `rational` production says, not as a division node.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use thiserror::Error;

use crate::rational::Rational;
use crate::series::{fixed_point_solve, PowerSeries, SeriesError};

/// Variable bindings available during evaluation.
pub type Bindings = BTreeMap<String, Rational>;

/// Convenience constructor: `bindings(&[("r", Rational::one())])`.
pub fn bindings(pairs: &[(&str, Rational)]) -> Bindings {
    pairs
        .iter()
        .map(|(name, value)| (name.to_string(), value.clone()))
        .collect()
}

/// Expression AST. `Pow` exponents are machine-small nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GFExpr {
    Const(Rational),
    Var(String),
    X,
    SelfRef,
    Add(Box<GFExpr>, Box<GFExpr>),
    Sub(Box<GFExpr>, Box<GFExpr>),
    Mul(Box<GFExpr>, Box<GFExpr>),
    Div(Box<GFExpr>, Box<GFExpr>),
    Pow(Box<GFExpr>, u32),
}

impl GFExpr {
    pub fn contains_self_ref(&self) -> bool {
        match self {
            GFExpr::Const(_) | GFExpr::Var(_) | GFExpr::X => false,
            GFExpr::SelfRef => true,
            GFExpr::Add(l, r) | GFExpr::Sub(l, r) | GFExpr::Mul(l, r) | GFExpr::Div(l, r) => {
                l.contains_self_ref() || r.contains_self_ref()
            }
            GFExpr::Pow(b, _) => b.contains_self_ref(),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown character '{ch}' at byte {pos}")]
    UnknownCharacter { pos: usize, ch: char },
    #[error("unbound variable '{0}'")]
    UnboundVariable(String),
    #[error("division by a series with zero constant term")]
    ZeroConstantTerm,
    #[error("the defining equation has no unique power-series solution")]
    NotContractive,
}

impl From<SeriesError> for GfError {
    fn from(err: SeriesError) -> Self {
        match err {
            SeriesError::ZeroConstantTerm => GfError::ZeroConstantTerm,
            SeriesError::NotContractive => GfError::NotContractive,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum TokenKind {
    Uint(BigInt),
    Ident(String),
    X,
    SelfRef,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, GfError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let start = i;
        let ch = bytes[i] as char;
        match ch {
            c if c.is_ascii_whitespace() => {
                i += 1;
            }
            '0'..='9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let value: BigInt = text[start..i].parse().expect("digits parse as an integer");
                tokens.push(Token {
                    kind: TokenKind::Uint(value),
                    pos: start,
                });
            }
            'a'..='z' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_lowercase()
                        || bytes[i].is_ascii_digit()
                        || bytes[i] == b'_')
                {
                    i += 1;
                }
                let name = &text[start..i];
                let kind = if name == "x" {
                    TokenKind::X
                } else {
                    TokenKind::Ident(name.to_string())
                };
                tokens.push(Token { kind, pos: start });
            }
            'G' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::SelfRef,
                    pos: start,
                });
            }
            '+' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::Plus,
                    pos: start,
                });
            }
            '-' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::Minus,
                    pos: start,
                });
            }
            '*' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::Star,
                    pos: start,
                });
            }
            '/' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::Slash,
                    pos: start,
                });
            }
            '^' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::Caret,
                    pos: start,
                });
            }
            '(' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::LParen,
                    pos: start,
                });
            }
            ')' => {
                i += 1;
                tokens.push(Token {
                    kind: TokenKind::RParen,
                    pos: start,
                });
            }
            other => {
                return Err(GfError::UnknownCharacter {
                    pos: start,
                    ch: other,
                })
            }
        }
    }
    Ok(tokens)
}

struct Parser {
    tokens: Vec<Token>,
    cursor: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.cursor).map(|t| &t.kind)
    }

    fn peek2(&self) -> Option<&TokenKind> {
        self.tokens.get(self.cursor + 1).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.tokens
            .get(self.cursor)
            .map(|t| t.pos)
            .unwrap_or(self.end)
    }

    fn advance(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.cursor).cloned();
        if token.is_some() {
            self.cursor += 1;
        }
        token
    }

    fn error(&self, msg: &str) -> GfError {
        GfError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        }
    }

    fn expr(&mut self) -> Result<GFExpr, GfError> {
        let mut node = self.term()?;
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.advance();
                    node = GFExpr::Add(Box::new(node), Box::new(self.term()?));
                }
                Some(TokenKind::Minus) => {
                    self.advance();
                    node = GFExpr::Sub(Box::new(node), Box::new(self.term()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn term(&mut self) -> Result<GFExpr, GfError> {
        let mut node = self.factor()?;
        loop {
            match self.peek() {
                Some(TokenKind::Star) => {
                    self.advance();
                    node = GFExpr::Mul(Box::new(node), Box::new(self.factor()?));
                }
                Some(TokenKind::Slash) => {
                    self.advance();
                    node = GFExpr::Div(Box::new(node), Box::new(self.factor()?));
                }
                _ => return Ok(node),
            }
        }
    }

    fn factor(&mut self) -> Result<GFExpr, GfError> {
        let base = self.base()?;
        if matches!(self.peek(), Some(TokenKind::Caret)) {
            self.advance();
            let pos = self.pos();
            match self.advance().map(|t| t.kind) {
                Some(TokenKind::Uint(value)) => {
                    let exp = u32::try_from(&value).map_err(|_| GfError::Syntax {
                        pos,
                        msg: format!("exponent {value} is too large"),
                    })?;
                    Ok(GFExpr::Pow(Box::new(base), exp))
                }
                _ => Err(GfError::Syntax {
                    pos,
                    msg: "expected a nonnegative integer exponent after '^'".to_string(),
                }),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<GFExpr, GfError> {
        match self.peek().cloned() {
            Some(TokenKind::Uint(numer)) => {
                self.advance();
                // Greedy rational literal: uint ("/" uint)?
                if matches!(self.peek(), Some(TokenKind::Slash))
                    && matches!(self.peek2(), Some(TokenKind::Uint(_)))
                {
                    self.advance();
                    let Some(TokenKind::Uint(denom)) = self.advance().map(|t| t.kind) else {
                        unreachable!("lookahead guaranteed a uint");
                    };
                    if num_traits::Zero::is_zero(&denom) {
                        return Err(self.error("rational literal has zero denominator"));
                    }
                    return Ok(GFExpr::Const(Rational::new(numer, denom)));
                }
                Ok(GFExpr::Const(Rational::new(numer, BigInt::from(1))))
            }
            Some(TokenKind::X) => {
                self.advance();
                Ok(GFExpr::X)
            }
            Some(TokenKind::SelfRef) => {
                self.advance();
                Ok(GFExpr::SelfRef)
            }
            Some(TokenKind::Ident(name)) => {
                self.advance();
                Ok(GFExpr::Var(name))
            }
            Some(TokenKind::LParen) => {
                self.advance();
                let inner = self.expr()?;
                match self.advance().map(|t| t.kind) {
                    Some(TokenKind::RParen) => Ok(inner),
                    _ => Err(self.error("expected ')'")),
                }
            }
            _ => Err(self.error("expected a value, 'x', 'G', a variable, or '('")),
        }
    }
}

/// Parse an expression, reporting the byte position of the first error.
pub fn parse_gf(text: &str) -> Result<GFExpr, GfError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        cursor: 0,
        end: text.len(),
    };
    let expr = parser.expr()?;
    if parser.cursor != parser.tokens.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr)
}

/// Emit fully parenthesized text that parses back to a structurally equal
/// AST.
///
/// Two caveats, both outside the parser's range: negative constants have no
/// literal form in the grammar and print as an equivalent `(0-...)`
/// subtraction, and a quotient of two constants parenthesizes its left
/// operand so it does not re-lex as a single rational literal.
pub fn pretty_print(expr: &GFExpr) -> String {
    match expr {
        GFExpr::Const(q) => {
            if q.is_negative() {
                format!("(0-{})", -q)
            } else {
                q.to_string()
            }
        }
        GFExpr::Var(name) => name.clone(),
        GFExpr::X => "x".to_string(),
        GFExpr::SelfRef => "G".to_string(),
        GFExpr::Add(l, r) => format!("({}+{})", pretty_print(l), pretty_print(r)),
        GFExpr::Sub(l, r) => format!("({}-{})", pretty_print(l), pretty_print(r)),
        GFExpr::Mul(l, r) => format!("({}*{})", pretty_print(l), pretty_print(r)),
        GFExpr::Div(l, r) => {
            if matches!(**l, GFExpr::Const(_)) && matches!(**r, GFExpr::Const(_)) {
                format!("(({})/{})", pretty_print(l), pretty_print(r))
            } else {
                format!("({}/{})", pretty_print(l), pretty_print(r))
            }
        }
        GFExpr::Pow(base, exp) => format!("({}^{})", pretty_print(base), exp),
    }
}

/// Evaluate an expression to a series of the given truncation order.
///
/// Expressions containing the self-reference `G` define a series implicitly;
/// they are evaluated by handing the substitution map to the fixed-point
/// solver. Self-reference-free expressions evaluate directly.
pub fn eval_gf(expr: &GFExpr, env: &Bindings, order: usize) -> Result<PowerSeries, GfError> {
    if expr.contains_self_ref() {
        fixed_point_solve(
            |g: &PowerSeries| eval_node(expr, env, order, Some(g)),
            order,
        )
    } else {
        eval_node(expr, env, order, None)
    }
}

fn eval_node(
    expr: &GFExpr,
    env: &Bindings,
    order: usize,
    current: Option<&PowerSeries>,
) -> Result<PowerSeries, GfError> {
    match expr {
        GFExpr::Const(q) => Ok(PowerSeries::constant(q.clone(), order)),
        GFExpr::Var(name) => env
            .get(name)
            .map(|value| PowerSeries::constant(value.clone(), order))
            .ok_or_else(|| GfError::UnboundVariable(name.clone())),
        GFExpr::X => Ok(PowerSeries::x(order)),
        GFExpr::SelfRef => Ok(current
            .expect("self-reference outside a fixed-point evaluation")
            .clone()),
        GFExpr::Add(l, r) => {
            Ok(eval_node(l, env, order, current)?.add(&eval_node(r, env, order, current)?))
        }
        GFExpr::Sub(l, r) => {
            Ok(eval_node(l, env, order, current)?.sub(&eval_node(r, env, order, current)?))
        }
        GFExpr::Mul(l, r) => {
            Ok(eval_node(l, env, order, current)?.mul(&eval_node(r, env, order, current)?))
        }
        GFExpr::Div(l, r) => {
            let denom = eval_node(r, env, order, current)?;
            Ok(eval_node(l, env, order, current)?.mul(&denom.inv()?))
        }
        GFExpr::Pow(base, exp) => Ok(eval_node(base, env, order, current)?.pow(*exp)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::{series_from_cf, CFParams};

    fn var(name: &str) -> Box<GFExpr> {
        Box::new(GFExpr::Var(name.to_string()))
    }

    fn int(n: i64) -> Box<GFExpr> {
        Box::new(GFExpr::Const(Rational::from_int(n)))
    }

    #[test]
    fn parse_power() {
        assert_eq!(
            parse_gf("x^2").unwrap(),
            GFExpr::Pow(Box::new(GFExpr::X), 2)
        );
    }

    #[test]
    fn parse_conjecture_two_shape() {
        let expr = parse_gf("1/(1 - x*(1+r*x)/(1-x) - s*x^2*G)").unwrap();
        let GFExpr::Div(one, denom) = expr else {
            panic!("expected a quotient at the top");
        };
        assert_eq!(*one, GFExpr::Const(Rational::one()));
        let GFExpr::Sub(_, last) = *denom else {
            panic!("expected a two-step subtraction");
        };
        assert_eq!(
            *last,
            GFExpr::Mul(
                Box::new(GFExpr::Mul(
                    var("s"),
                    Box::new(GFExpr::Pow(Box::new(GFExpr::X), 2))
                )),
                Box::new(GFExpr::SelfRef)
            )
        );
    }

    #[test]
    fn parse_reports_end_of_input() {
        let err = parse_gf("1/(1 - x").unwrap_err();
        assert_eq!(
            err,
            GfError::Syntax {
                pos: 8,
                msg: "expected ')'".to_string()
            }
        );
    }

    #[test]
    fn parse_rational_literal_is_greedy() {
        assert_eq!(
            parse_gf("1/2").unwrap(),
            GFExpr::Const(Rational::ratio(1, 2))
        );
        // After a literal, further slashes are ordinary division.
        assert_eq!(
            parse_gf("1/2/3").unwrap(),
            GFExpr::Div(
                Box::new(GFExpr::Const(Rational::ratio(1, 2))),
                Box::new(GFExpr::Const(Rational::from_int(3)))
            )
        );
        // Division with a non-literal operand stays division.
        assert_eq!(
            parse_gf("2/x").unwrap(),
            GFExpr::Div(int(2), Box::new(GFExpr::X))
        );
    }

    #[test]
    fn parse_rejects_unknown_characters() {
        assert_eq!(
            parse_gf("1 + %").unwrap_err(),
            GfError::UnknownCharacter { pos: 4, ch: '%' }
        );
    }

    #[test]
    fn idents_exclude_x_but_allow_x_prefixes() {
        assert_eq!(parse_gf("xy").unwrap(), GFExpr::Var("xy".to_string()));
        assert_eq!(parse_gf("x").unwrap(), GFExpr::X);
    }

    #[test]
    fn eval_geometric() {
        let expr = parse_gf("1/(1-x)").unwrap();
        let series = eval_gf(&expr, &Bindings::new(), 4).unwrap();
        assert_eq!(series, PowerSeries::from_ints(&[1, 1, 1, 1, 1]));
    }

    #[test]
    fn eval_conjecture_two_matches_canonical_form() {
        let expr = parse_gf("1/(1 - x*(1+r*x)/(1-x) - s*x^2*G)").unwrap();
        let env = bindings(&[("r", Rational::one()), ("s", Rational::one())]);
        let series = eval_gf(&expr, &env, 12).unwrap();
        let canonical = series_from_cf(&CFParams::from_ints([1, -1, -2, -1, -1, 1]), 12).unwrap();
        assert_eq!(series, canonical);
    }

    #[test]
    fn eval_bare_self_reference_is_not_contractive() {
        let expr = parse_gf("G").unwrap();
        assert_eq!(
            eval_gf(&expr, &Bindings::new(), 5).unwrap_err(),
            GfError::NotContractive
        );
    }

    #[test]
    fn eval_unbound_variable() {
        let expr = parse_gf("1 + r*x").unwrap();
        assert_eq!(
            eval_gf(&expr, &Bindings::new(), 3).unwrap_err(),
            GfError::UnboundVariable("r".to_string())
        );
    }

    #[test]
    fn eval_division_by_zero_constant_term() {
        let expr = parse_gf("1/x").unwrap();
        assert_eq!(
            eval_gf(&expr, &Bindings::new(), 3).unwrap_err(),
            GfError::ZeroConstantTerm
        );
    }

    #[test]
    fn pretty_print_power() {
        assert_eq!(pretty_print(&GFExpr::Pow(Box::new(GFExpr::X), 2)), "(x^2)");
    }

    #[test]
    fn pretty_print_round_trips_constant_quotients() {
        let expr = GFExpr::Div(int(1), int(2));
        let printed = pretty_print(&expr);
        assert_eq!(printed, "((1)/2)");
        assert_eq!(parse_gf(&printed).unwrap(), expr);

        let tricky = GFExpr::Div(int(2), Box::new(GFExpr::Const(Rational::ratio(1, 3))));
        assert_eq!(parse_gf(&pretty_print(&tricky)).unwrap(), tricky);
    }

    #[test]
    fn pretty_print_negative_constants_keep_their_value() {
        let expr = GFExpr::Mul(Box::new(GFExpr::Const(Rational::ratio(-1, 2))), var("s"));
        let reparsed = parse_gf(&pretty_print(&expr)).unwrap();
        let env = bindings(&[("s", Rational::from_int(4))]);
        assert_eq!(
            eval_gf(&reparsed, &env, 2).unwrap(),
            eval_gf(&expr, &env, 2).unwrap()
        );
    }
}
