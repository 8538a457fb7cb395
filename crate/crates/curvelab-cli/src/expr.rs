//! A tiny polynomial expression parser: `+ - * ^` with integer exponents,
//! parentheses, the variables `z` and `w`, complex literals like `1.5` or
//! `2i`, and parameter names resolved against a substitution map.
//!
//! Expressions lower directly to a bivariate polynomial, the same form a
//! curve spec's term list produces.

use curvelab::polycalc::BivarPoly;
use num_complex::Complex;
use std::collections::BTreeMap;

type C = Complex<f64>;
type B = BivarPoly<f64>;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(f64),
    Imag(f64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(src: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        match c {
            ' ' | '\t' | '\n' => k += 1,
            '+' => {
                out.push(Token::Plus);
                k += 1;
            }
            '-' => {
                out.push(Token::Minus);
                k += 1;
            }
            '*' => {
                out.push(Token::Star);
                k += 1;
            }
            '^' => {
                out.push(Token::Caret);
                k += 1;
            }
            '(' => {
                out.push(Token::LParen);
                k += 1;
            }
            ')' => {
                out.push(Token::RParen);
                k += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k < chars.len()
                    && (chars[k].is_ascii_digit()
                        || chars[k] == '.'
                        || chars[k] == 'e'
                        || chars[k] == 'E'
                        || ((chars[k] == '+' || chars[k] == '-')
                            && k > start
                            && (chars[k - 1] == 'e' || chars[k - 1] == 'E')))
                {
                    k += 1;
                }
                let text: String = chars[start..k].iter().collect();
                let value: f64 = text.parse().map_err(|_| format!("bad number `{text}`"))?;
                if k < chars.len() && chars[k] == 'i' {
                    k += 1;
                    out.push(Token::Imag(value));
                } else {
                    out.push(Token::Num(value));
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                    k += 1;
                }
                let name: String = chars[start..k].iter().collect();
                if name == "i" {
                    out.push(Token::Imag(1.0));
                } else {
                    out.push(Token::Ident(name));
                }
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    params: &'a BTreeMap<String, C>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<B, String> {
        let mut acc = if matches!(self.peek(), Some(Token::Minus)) {
            self.next();
            self.term()?.scale(C::new(-1.0, 0.0))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<B, String> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.next();
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<B, String> {
        let base = self.primary()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.next();
            match self.next() {
                Some(Token::Num(x)) if x >= 0.0 && x.fract() == 0.0 && x <= 64.0 => {
                    Ok(base.pow(x as u32))
                }
                other => Err(format!("expected a small nonnegative integer exponent, got {other:?}")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<B, String> {
        match self.next() {
            Some(Token::Num(x)) => Ok(B::from_terms([((0, 0), C::new(x, 0.0))])),
            Some(Token::Imag(x)) => Ok(B::from_terms([((0, 0), C::new(0.0, x))])),
            Some(Token::Ident(name)) => match name.as_str() {
                "z" => Ok(B::from_terms([((1, 0), C::new(1.0, 0.0))])),
                "w" => Ok(B::from_terms([((0, 1), C::new(1.0, 0.0))])),
                _ => match self.params.get(&name) {
                    Some(&v) => Ok(B::from_terms([((0, 0), v)])),
                    None => Err(format!("unknown parameter `{name}`")),
                },
            },
            Some(Token::Minus) => Ok(self.factor()?.scale(C::new(-1.0, 0.0))),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err("unbalanced parenthesis".into()),
                }
            }
            other => Err(format!("unexpected token {other:?}")),
        }
    }
}

/// Parses `src` into a bivariate polynomial, substituting parameter names
/// from `params`.
pub fn parse(src: &str, params: &BTreeMap<String, C>) -> Result<B, String> {
    let tokens = tokenize(src)?;
    let mut parser = Parser { tokens, pos: 0, params };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(format!("trailing input at token {}", parser.pos));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(src: &str) -> B {
        parse(src, &BTreeMap::new()).unwrap()
    }

    #[test]
    fn cusp_expression_matches_term_form() {
        let direct = B::from_terms([((2, 0), C::new(1.0, 0.0)), ((0, 3), C::new(-1.0, 0.0))]);
        assert_eq!(p("z^2 - w^3"), direct);
    }

    #[test]
    fn shifted_binomials_expand() {
        let expanded = p("(z - 0.5)^2");
        assert_eq!(expanded.eval(C::new(0.5, 0.0), C::new(0.0, 0.0)), C::new(0.0, 0.0));
        assert_eq!(expanded.z_degree(), 2);
    }

    #[test]
    fn parameters_and_imaginary_literals_substitute() {
        let mut params = BTreeMap::new();
        params.insert("e1".to_string(), C::new(0.01, 0.0));
        let f = parse("w - e1*z - 2i", &params).unwrap();
        assert_eq!(f.eval(C::new(1.0, 0.0), C::new(0.01, 2.0)), C::new(0.0, 0.0));
        assert!(parse("w - e2", &params).is_err());
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse("z^", &BTreeMap::new()).is_err());
        assert!(parse("(z + w", &BTreeMap::new()).is_err());
        assert!(parse("z $ w", &BTreeMap::new()).is_err());
        assert!(parse("z^2 w", &BTreeMap::new()).is_err());
    }
}
