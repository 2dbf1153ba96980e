//! Element text forms: `(EXPR, EXPR)` for `B_α`, `[n, (EXPR, EXPR), m]` or
//! `0*` for the Bruck extension over `B_α`.

use super::{BAlphaElement, BruckElement, SemigroupError};
use crate::ordinal::parse::parse_ordinal_prefix;
use crate::ordinal::{Ordinal, OrdinalError};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn error(&self, message: impl Into<String>) -> SemigroupError {
        SemigroupError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), SemigroupError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{c}'")))
        }
    }

    fn ordinal(&mut self) -> Result<Ordinal, SemigroupError> {
        let (value, end) = parse_ordinal_prefix(self.src, self.pos).map_err(|e| match e {
            OrdinalError::Syntax { position, message } => {
                SemigroupError::Syntax { position, message }
            }
            other => SemigroupError::Ordinal(other),
        })?;
        self.pos = end;
        Ok(value)
    }

    fn nat(&mut self) -> Result<u64, SemigroupError> {
        self.skip_ws();
        let digits = self.src[self.pos..]
            .bytes()
            .take_while(u8::is_ascii_digit)
            .count();
        if digits == 0 {
            return Err(self.error("expected a number"));
        }
        let value = self.src[self.pos..self.pos + digits]
            .parse()
            .map_err(|_| self.error("number does not fit in 64 bits"))?;
        self.pos += digits;
        Ok(value)
    }

    fn pair(&mut self) -> Result<(Ordinal, Ordinal), SemigroupError> {
        self.expect('(')?;
        let left = self.ordinal()?;
        self.expect(',')?;
        let right = self.ordinal()?;
        self.expect(')')?;
        Ok((left, right))
    }

    fn finish(&mut self) -> Result<(), SemigroupError> {
        self.skip_ws();
        if self.pos < self.src.len() {
            Err(self.error("trailing input"))
        } else {
            Ok(())
        }
    }
}

/// Parses `(EXPR, EXPR)` as an element of `B_level`.
pub fn parse_balpha_element(text: &str, level: &Ordinal) -> Result<BAlphaElement, SemigroupError> {
    let mut cur = Cursor { src: text, pos: 0 };
    let (left, right) = cur.pair()?;
    cur.finish()?;
    BAlphaElement::new(level, left, right)
}

/// Parses `[n, (EXPR, EXPR), m]` or `0*` as an element of the Bruck extension
/// with adjoined zero over `B_level`.
pub fn parse_bruck_element(
    text: &str,
    level: &Ordinal,
) -> Result<BruckElement<BAlphaElement>, SemigroupError> {
    if text.trim() == "0*" {
        return Ok(BruckElement::Zero);
    }
    let mut cur = Cursor { src: text, pos: 0 };
    cur.expect('[')?;
    let n = cur.nat()?;
    cur.expect(',')?;
    let (left, right) = cur.pair()?;
    cur.expect(',')?;
    let m = cur.nat()?;
    cur.expect(']')?;
    cur.finish()?;
    Ok(BruckElement::triple(
        n,
        BAlphaElement::new(level, left, right)?,
        m,
    ))
}
