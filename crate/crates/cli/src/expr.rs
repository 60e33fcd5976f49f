//! Parser for ring expressions such as `D{1,2|3,4} + 3/2 * D{1,3|2,4}^2`.
//!
//! Grammar, whitespace ignored:
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ['^' integer]
//! atom   := integer ['/' integer] | token | '(' expr ')'
//! token  := ('D' | 'RD') '{' labels '|' labels '}'
//! ```

use std::sync::Arc;

use moduli_core::exactalg::{Field, Rational, RingElement, Universe};
use moduli_core::presentations::{generator_token, BoundaryFlavor};
use moduli_core::Partition2;
use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

struct Parser<'a, F: Field> {
    text: &'a str,
    pos: usize,
    universe: &'a Arc<Universe>,
    _field: std::marker::PhantomData<F>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let before = &self.text[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rfind('\n').map_or(before.chars().count(), |n| before[n + 1..].chars().count()) + 1;
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek_raw() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek_raw(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.peek_raw()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek_raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error_at(start, "expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("ascii digits"))
    }

    fn expr(&mut self) -> Result<RingElement<F>, ParseError> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            let at = self.pos;
            if self.eat('+') {
                let t = self.term()?;
                acc = self.combine(at, acc.add(&t))?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.combine(at, acc.sub(&t))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn combine(&self, at: usize, r: moduli_core::Result<RingElement<F>>) -> Result<RingElement<F>, ParseError> {
        r.map_err(|e| self.error_at(at, e.to_string()))
    }

    fn term(&mut self) -> Result<RingElement<F>, ParseError> {
        let mut acc = self.factor()?;
        loop {
            let at = self.pos;
            if self.eat('*') {
                let f = self.factor()?;
                acc = self.combine(at, acc.mul(&f))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RingElement<F>, ParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            let at = self.pos;
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.error_at(at, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RingElement<F>, ParseError> {
        let start = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error_at(self.pos, "expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat('/') { self.integer()? } else { BigInt::from(1) };
                if den == BigInt::from(0) {
                    return Err(self.error_at(start, "zero denominator"));
                }
                let q = Rational::new(num, den);
                let c = F::from_rational(&q).map_err(|e| self.error_at(start, e.to_string()))?;
                Ok(RingElement::constant(self.universe, c))
            }
            Some('D') | Some('R') => self.token(start),
            Some(c) => Err(self.error_at(start, format!("unexpected `{c}`"))),
            None => Err(self.error_at(start, "unexpected end of input")),
        }
    }

    fn token(&mut self, start: usize) -> Result<RingElement<F>, ParseError> {
        let rest = &self.text[start..];
        let (flavor, prefix_len) = if rest.starts_with("RD") {
            (BoundaryFlavor::Krasnov, 2)
        } else if rest.starts_with('D') {
            (BoundaryFlavor::Keel, 1)
        } else {
            return Err(self.error_at(start, "expected a generator `D{..}` or `RD{..}`"));
        };
        let open = start + prefix_len;
        if !self.text[open..].starts_with('{') {
            return Err(self.error_at(open, "expected `{` after the generator prefix"));
        }
        let close = self.text[open..]
            .find('}')
            .map(|k| open + k)
            .ok_or_else(|| self.error_at(open, "unclosed `{`"))?;
        let body = &self.text[open..=close];
        let p: Partition2 = body
            .parse()
            .map_err(|e: moduli_core::Error| self.error_at(open, e.to_string()))?;
        self.pos = close + 1;
        let canonical = generator_token(flavor, &p);
        let idx = self
            .universe
            .lookup(&canonical)
            .ok_or_else(|| self.error_at(start, format!("unknown generator `{canonical}`")))?;
        Ok(RingElement::generator(self.universe, idx).expect("index from lookup"))
    }
}

/// Parses `text` into an element over the generators of `universe`.
pub fn parse_ring_expression<F: Field>(text: &str, universe: &Arc<Universe>) -> Result<RingElement<F>, ParseError> {
    let mut p = Parser::<F> {
        text,
        pos: 0,
        universe,
        _field: std::marker::PhantomData,
    };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(p.error_at(p.pos, "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use moduli_core::exactalg::Gf2;
    use moduli_core::presentations::{keel_presentation, krasnov_presentation};

    #[test]
    fn parses_and_canonicalizes() {
        let r = keel_presentation::<Rational>(4).unwrap();
        let e: RingElement<Rational> = parse_ring_expression("D{1,2|3,4} + 3/2 * D{1,3|2,4}", r.universe()).unwrap();
        assert_eq!(e.term_count(), 2);
        let e: RingElement<Rational> = parse_ring_expression("D{3,4|1,2}", r.universe()).unwrap();
        assert_eq!(e.to_string(), "D{1,2|3,4}");
        let back: RingElement<Rational> = parse_ring_expression(&e.to_string(), r.universe()).unwrap();
        assert_eq!(back, e);
    }

    #[test]
    fn positions_in_errors() {
        let r = keel_presentation::<Rational>(4).unwrap();
        let err = parse_ring_expression::<Rational>("D{1|2,3,4}", r.universe()).unwrap_err();
        assert_eq!((err.line, err.column), (1, 2));
        assert!(err.message.contains("at least two"));
        let err = parse_ring_expression::<Rational>("D{1,2|3,4} +\n  * 2", r.universe()).unwrap_err();
        assert_eq!((err.line, err.column), (2, 3));
        let err = parse_ring_expression::<Rational>("RD{1,2|3,4}", r.universe()).unwrap_err();
        assert!(err.message.contains("unknown generator"));
        let err = parse_ring_expression::<Rational>("D{1,2|3,4} )", r.universe()).unwrap_err();
        assert_eq!(err.column, 12);
    }

    #[test]
    fn mod_two_coefficients() {
        let r = krasnov_presentation(5).unwrap();
        let e: RingElement<Gf2> = parse_ring_expression("3*RD{1,2|3,4,5} + 2*RD{1,3|2,4,5}", r.universe()).unwrap();
        assert_eq!(e.to_string(), "RD{1,2|3,4,5}");
        assert!(parse_ring_expression::<Gf2>("1/2", r.universe()).is_err());
    }
}
