//! Text and JSON forms of Laurent polynomials.

use serde_json::{json, Map, Value};

use super::laurent::LaurentPoly;
use super::monomial::Monomial;
use super::var::Var;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Parses sums of products of scalars, variables, powers and parenthesized
/// subexpressions, e.g. `1 - 2*e1_1^-1*e2_1` or `(c1_1 - c2_1)*c3_1^2`.
/// Negative exponents are allowed on single terms only.
pub fn parse_poly<C: Scalar>(s: &str) -> Result<LaurentPoly<C>> {
    let s: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { s: &s, pos: 0 };
    let out = p.expr()?;
    if p.pos != s.len() {
        return Err(Error::Parse(format!("unexpected `{}` at {}", s[p.pos], p.pos)));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [char],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.pos).copied()
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = self.pos;
        while self.peek().is_some_and(&f) {
            self.pos += 1;
        }
        self.s[start..self.pos].iter().collect()
    }

    fn expr<C: Scalar>(&mut self) -> Result<LaurentPoly<C>> {
        let mut out = LaurentPoly::zero();
        let mut sign = match self.peek() {
            Some('-') => {
                self.pos += 1;
                -C::one()
            }
            Some('+') => {
                self.pos += 1;
                C::one()
            }
            _ => C::one(),
        };
        loop {
            out = out.add(&self.product::<C>()?.scale(&sign));
            match self.peek() {
                Some('+') => sign = C::one(),
                Some('-') => sign = -C::one(),
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn product<C: Scalar>(&mut self) -> Result<LaurentPoly<C>> {
        let mut out = self.power::<C>()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            out = out.mul(&self.power()?);
        }
        Ok(out)
    }

    fn power<C: Scalar>(&mut self) -> Result<LaurentPoly<C>> {
        let base = self.atom::<C>()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let digits = self.take_while(|c| c.is_ascii_digit());
        let e: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent `{digits}`")))?;
        if !neg {
            return Ok(base.pow(e));
        }
        let (c, m) = base
            .as_term()
            .ok_or_else(|| Error::Parse("negative power of a sum".into()))?;
        if c.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(LaurentPoly::term(c.inv(), m.inv()).pow(e))
    }

    fn atom<C: Scalar>(&mut self) -> Result<LaurentPoly<C>> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(Error::Parse("unbalanced parenthesis".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let t = self.take_while(|c| c.is_ascii_digit() || c == '/');
                let v = C::parse_scalar(&t).ok_or_else(|| Error::Parse(format!("bad scalar `{t}`")))?;
                Ok(LaurentPoly::constant(v))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let t = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                Ok(LaurentPoly::var(Var::parse(&t)?))
            }
            Some(c) => Err(Error::Parse(format!("unexpected `{c}` at {}", self.pos))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }
}

/// JSON form: a list of `{"c": "p/q", "m": {"var": exp, ...}}` in canonical
/// term order.
pub fn poly_to_json<C: Scalar>(p: &LaurentPoly<C>) -> Value {
    Value::Array(
        p.sorted_terms()
            .into_iter()
            .map(|(m, c)| {
                let mut mono = Map::new();
                for (v, e) in m.iter() {
                    mono.insert(v.to_string(), json!(e));
                }
                json!({ "c": c.to_string(), "m": mono })
            })
            .collect(),
    )
}

pub fn poly_from_json<C: Scalar>(v: &Value) -> Result<LaurentPoly<C>> {
    let bad = || Error::Parse("malformed polynomial JSON".into());
    let mut out = LaurentPoly::zero();
    for t in v.as_array().ok_or_else(bad)? {
        let c = C::parse_scalar(t.get("c").and_then(Value::as_str).ok_or_else(bad)?).ok_or_else(bad)?;
        let mut pairs = Vec::new();
        for (k, e) in t.get("m").and_then(Value::as_object).ok_or_else(bad)? {
            pairs.push((Var::parse(k)?, e.as_i64().ok_or_else(bad)? as i32));
        }
        out.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn roundtrip() {
        let p: LaurentPoly<Rational> = parse_poly("1 - 3/2*e1_1^-1*z2_1 + xi^2 - e1_1^-1*z2_1").unwrap();
        assert_eq!(p.to_string(), "1 - 5/2*e1_1^-1*z2_1 + xi^2");
        assert_eq!(parse_poly::<Rational>(&p.to_string()).unwrap(), p);
        assert_eq!(poly_from_json::<Rational>(&poly_to_json(&p)).unwrap(), p);
        assert!(parse_poly::<Rational>("1 + q").is_err());
        assert!(parse_poly::<Rational>("(1 + e1_1").is_err());
        assert!(parse_poly::<Rational>("(1 + e1_1)^-1").is_err());
        let f: LaurentPoly<Rational> = parse_poly("-(e1_1 - 1)*(e1_1 + 1) + 2*(e1_1^-1)^-2").unwrap();
        assert_eq!(f.to_string(), "1 + e1_1^2");
    }
}
