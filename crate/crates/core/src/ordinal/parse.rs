//! Text grammar for ordinals:
//!
//! ```text
//! expr := term ( "+" term )*
//! term := "w" [ "^" exp ] [ "*" nat ] | nat
//! exp  := nat | "(" expr ")"
//! nat  := digit+
//! ```
//!
//! Whitespace is insignificant. Sums are normalized with ordinal addition,
//! so `1 + w` parses to `w`.

use super::{Ordinal, OrdinalError};

/// Parses a complete ordinal expression.
pub fn parse_ordinal(text: &str) -> Result<Ordinal, OrdinalError> {
    let mut p = Parser::new(text);
    let value = p.expr()?;
    p.skip_ws();
    if let Some(c) = p.peek() {
        return Err(p.error(format!("unexpected character '{c}'")));
    }
    Ok(value)
}

/// Parses an ordinal expression starting at `pos` and returns it together with
/// the position just after it. Used by the element grammars.
pub(crate) fn parse_ordinal_prefix(
    text: &str,
    pos: usize,
) -> Result<(Ordinal, usize), OrdinalError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos,
    };
    let value = p.expr()?;
    Ok((value, p.pos))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> OrdinalError {
        OrdinalError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self
            .src
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src.get(self.pos).map(|&c| c as char)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.eat('+') {
            let rhs = self.term()?;
            acc = acc.checked_add(&rhs)?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some('w') => {
                self.pos += 1;
                let exp = if self.eat('^') {
                    self.exponent()?
                } else {
                    Ordinal::one()
                };
                let coeff = if self.eat('*') { self.nat()? } else { 1 };
                Ok(Ordinal::monomial(&exp, coeff))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(c) => Err(self.error(format!("expected a term, found '{c}'"))),
            None => Err(self.error("expected a term, found end of input")),
        }
    }

    fn exponent(&mut self) -> Result<Ordinal, OrdinalError> {
        if self.eat('(') {
            let e = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            Ok(e)
        } else {
            Ok(Ordinal::nat(self.nat()?))
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        let mut value: u64 = 0;
        while let Some(&c) = self.src.get(self.pos).filter(|c| c.is_ascii_digit()) {
            value = value
                .checked_mul(10)
                .and_then(|v| v.checked_add(u64::from(c - b'0')))
                .ok_or(OrdinalError::Syntax {
                    position: start,
                    message: "number does not fit in 64 bits".into(),
                })?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a number"));
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grammar_examples() {
        let x = parse_ordinal("w^2*3 + w + 4").unwrap();
        let terms: Vec<_> = x.terms().collect();
        assert_eq!(
            terms,
            vec![
                (Ordinal::nat(2), 3),
                (Ordinal::one(), 1),
                (Ordinal::zero(), 4)
            ]
        );
        assert_eq!(parse_ordinal("0").unwrap(), Ordinal::zero());
        assert_eq!(parse_ordinal("1 + w").unwrap(), Ordinal::omega());
    }

    #[test]
    fn normalizes_noncanonical_sums() {
        assert_eq!(
            parse_ordinal("w + w").unwrap(),
            parse_ordinal("w*2").unwrap()
        );
        assert_eq!(
            parse_ordinal("3 + w^2 + 4").unwrap(),
            parse_ordinal("w^2 + 4").unwrap()
        );
        assert_eq!(parse_ordinal("w^0*7").unwrap(), Ordinal::nat(7));
        assert_eq!(parse_ordinal("w*0 + 2").unwrap(), Ordinal::nat(2));
        assert_eq!(
            parse_ordinal(" w ^ ( w + 1 ) * 2+3 ").unwrap().to_string(),
            "w^(w + 1)*2 + 3"
        );
    }

    #[test]
    fn formatting_examples() {
        assert_eq!(Ordinal::zero().to_string(), "0");
        assert_eq!(Ordinal::omega().to_string(), "w");
        let x = Ordinal::monomial(&(Ordinal::omega() + Ordinal::one()), 2) + Ordinal::nat(3);
        assert_eq!(x.to_string(), "w^(w + 1)*2 + 3");
        assert_eq!(Ordinal::monomial(&Ordinal::omega(), 1).to_string(), "w^(w)");
        assert_eq!(parse_ordinal("w^(w^(w))").unwrap().to_string(), "w^(w^(w))");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let cases = [
            ("", 0),
            ("w +", 3),
            ("w^", 2),
            ("w^(w", 4),
            ("x", 0),
            ("w 3", 2),
            ("w*", 2),
        ];
        for (text, pos) in cases {
            match parse_ordinal(text) {
                Err(OrdinalError::Syntax { position, .. }) => assert_eq!(position, pos, "{text:?}"),
                other => panic!("{text:?} gave {other:?}"),
            }
        }
        assert!(matches!(
            parse_ordinal("99999999999999999999"),
            Err(OrdinalError::Syntax { position: 0, .. })
        ));
    }
}
