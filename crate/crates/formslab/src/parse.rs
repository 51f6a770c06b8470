//! Text syntax for [`Expr`].
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int | '^' '(' int ')')?
//! atom  := number | 'pi' | name | func '(' args ')' | '(' expr ')'
//! func  := sin | cos | exp | cut(expr, number, number) | flat(expr, int)
//! ```

use crate::error::FormError;
use crate::expr::Expr;

pub fn parse_expr(text: &str, names: &[String]) -> Result<Expr, FormError> {
    let mut p = Parser {
        src: text,
        pos: 0,
        names,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> FormError {
        FormError::Parse {
            input: self.src.to_string(),
            position: self.pos,
            message: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), FormError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<Expr, FormError> {
        let mut terms = vec![self.term()?];
        loop {
            if self.eat('+') {
                terms.push(self.term()?);
            } else if self.eat('-') {
                terms.push(-self.term()?);
            } else {
                return Ok(Expr::sum(terms));
            }
        }
    }

    fn term(&mut self) -> Result<Expr, FormError> {
        let mut factors = vec![self.unary()?];
        loop {
            if self.eat('*') {
                factors.push(self.unary()?);
            } else if self.eat('/') {
                factors.push(self.unary()?.powi(-1));
            } else {
                return Ok(Expr::product(factors));
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, FormError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, FormError> {
        let base = self.atom()?;
        if self.eat('^') {
            let n = if self.eat('(') {
                let n = self.integer()?;
                self.expect(')')?;
                n
            } else {
                self.integer()?
            };
            let n = i32::try_from(n).map_err(|_| self.err("exponent out of range"))?;
            return Ok(base.powi(n));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, FormError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some('-') || self.peek() == Some('+') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected an integer"))
    }

    fn number(&mut self) -> Result<f64, FormError> {
        self.skip_ws();
        let neg = self.eat('-');
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with("pi") {
            self.pos += 2;
            return Ok(if neg {
                -std::f64::consts::PI
            } else {
                std::f64::consts::PI
            });
        }
        if self.eat('(') {
            let v = self.number()?;
            self.expect(')')?;
            return Ok(if neg { -v } else { v });
        }
        self.pos = start;
        while let Some(c) = self.peek() {
            let prev = self.src[..self.pos].chars().last();
            let exp_sign = (c == '-' || c == '+') && matches!(prev, Some('e' | 'E'));
            if c.is_ascii_digit() || c == '.' || c == 'e' || c == 'E' || exp_sign {
                self.pos += 1;
            } else {
                break;
            }
        }
        let v: f64 = self.src[start..self.pos]
            .parse()
            .map_err(|_| self.err("expected a number"))?;
        Ok(if neg { -v } else { v })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn atom(&mut self) -> Result<Expr, FormError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == '.' => Ok(Expr::Const(self.number()?)),
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let name = self.ident();
                self.skip_ws();
                let call = self.peek() == Some('(');
                match (name.as_str(), call) {
                    ("sin", true) => Ok(self.unary_call()?.sin()),
                    ("cos", true) => Ok(self.unary_call()?.cos()),
                    ("exp", true) => Ok(self.unary_call()?.exp()),
                    ("cut", true) => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(',')?;
                        let lo = self.number()?;
                        self.expect(',')?;
                        let hi = self.number()?;
                        self.expect(')')?;
                        if !(lo < hi) {
                            return Err(self.err("cut needs lo < hi"));
                        }
                        Ok(arg.cut(lo, hi))
                    }
                    ("flat", true) => {
                        self.expect('(')?;
                        let arg = self.expr()?;
                        self.expect(',')?;
                        let k = self.integer()?;
                        self.expect(')')?;
                        let k =
                            u32::try_from(k).map_err(|_| self.err("flat order must be >= 0"))?;
                        Ok(arg.flat(k))
                    }
                    ("pi", false) => Ok(Expr::Const(std::f64::consts::PI)),
                    (_, _) => match self.names.iter().position(|n| *n == name) {
                        Some(i) => Ok(Expr::Var(i)),
                        None => Err(self.err(&format!("unknown name '{name}'"))),
                    },
                }
            }
            _ => Err(self.err("expected an expression")),
        }
    }

    fn unary_call(&mut self) -> Result<Expr, FormError> {
        self.expect('(')?;
        let e = self.expr()?;
        self.expect(')')?;
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_arithmetic_and_functions() {
        let n = names(&["s", "theta"]);
        let e = parse_expr("2*s + cos(theta)^2 - s/4", &n).unwrap();
        let v = e.eval(&[2.0, 0.3]);
        let expected = 4.0 + 0.3f64.cos().powi(2) - 0.5;
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn parses_cut_with_negative_bounds() {
        let n = names(&["z"]);
        let e = parse_expr("cut(z, -0.3, 0)", &n).unwrap();
        assert_eq!(e.eval(&[0.1]), 1.0);
        assert_eq!(e.eval(&[-0.5]), 0.0);
    }

    #[test]
    fn unknown_names_are_rejected() {
        let err = parse_expr("s + y", &names(&["s"])).unwrap_err();
        assert!(err.to_string().contains("unknown name 'y'"));
        assert!(parse_expr("cut(s, 1, 0)", &names(&["s"])).is_err());
        assert!(parse_expr("s +", &names(&["s"])).is_err());
    }

    #[test]
    fn display_round_trips_through_the_parser() {
        let n = names(&["t", "u"]);
        let t = Expr::var(0);
        let u = Expr::var(1);
        let e =
            (t.clone().exp() * u.clone().sin().powi(-2) - t.clone().cut(-0.5, 0.25)) * u.flat(3);
        let text = e.display(&n).to_string();
        let back = parse_expr(&text, &n).unwrap();
        for p in [[0.1, 0.7], [-0.2, 1.3], [0.4, 2.0]] {
            assert!((back.eval(&p) - e.eval(&p)).abs() <= 1e-12 * e.eval(&p).abs().max(1.0));
        }
    }
}
