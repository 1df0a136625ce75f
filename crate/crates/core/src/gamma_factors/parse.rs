//! Text form of isobaric sums: `D3[0.1]+sgn[-0.2]+triv`.
//!
//! A block is `triv`, `sgn` or `D<k>`, optionally followed by `[re]` or
//! `[re,im]`. Blocks are joined by `+`. The empty string is the empty sum.

use std::fmt;

use super::{IsobaricSum, SigmaKind};
use crate::error::{Error, Result};
use crate::C64;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn eat(&mut self, prefix: &str) -> bool {
        if self.rest().starts_with(prefix) {
            self.pos += prefix.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<f64> {
        let len = self
            .rest()
            .find([',', ']'])
            .ok_or_else(|| self.error("unterminated twist"))?;
        let text = &self.rest()[..len];
        let value: f64 = text
            .parse()
            .map_err(|_| self.error(format!("invalid number `{text}`")))?;
        if !value.is_finite() {
            return Err(self.error("twist must be finite"));
        }
        self.pos += len;
        Ok(value)
    }
}

pub fn parse_isobaric(src: &str) -> Result<IsobaricSum<C64>> {
    let mut cur = Cursor { src, pos: 0 };
    let mut out = IsobaricSum::empty();
    if src.is_empty() {
        return Ok(out);
    }
    loop {
        let start = cur.pos;
        let kind = if cur.eat("triv") {
            None
        } else if cur.eat("sgn") {
            Some(0)
        } else if cur.eat("D") {
            let digits = cur.rest().bytes().take_while(u8::is_ascii_digit).count();
            if digits == 0 {
                return Err(cur.error("expected weight after `D`"));
            }
            let k: u32 = cur.rest()[..digits]
                .parse()
                .map_err(|_| cur.error("weight out of range"))?;
            if k == 0 {
                return Err(Error::Parse { position: start, message: "weight must be positive".into() });
            }
            cur.pos += digits;
            Some(k)
        } else {
            return Err(cur.error("expected `triv`, `sgn` or `D<k>`"));
        };
        let mut shift = C64::new(0.0, 0.0);
        if cur.eat("[") {
            shift.re = cur.number()?;
            if cur.eat(",") {
                shift.im = cur.number()?;
            }
            if !cur.eat("]") {
                return Err(cur.error("expected `]`"));
            }
        }
        let block = match kind {
            None => IsobaricSum::triv(shift),
            Some(0) => IsobaricSum::sgn(shift),
            Some(k) => IsobaricSum::discrete(k, shift)?,
        };
        out = out.boxplus(&block);
        if cur.rest().is_empty() {
            return Ok(out);
        }
        if !cur.eat("+") {
            return Err(cur.error("expected `+` between blocks"));
        }
    }
}

impl fmt::Display for IsobaricSum<C64> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match b.kind {
                SigmaKind::Triv => f.write_str("triv")?,
                SigmaKind::Sgn => f.write_str("sgn")?,
                SigmaKind::Discrete(k) => write!(f, "D{k}")?,
            }
            let s = b.shift;
            if s.im != 0.0 {
                write!(f, "[{:?},{:?}]", s.re, s.im)?;
            } else if s.re != 0.0 {
                write!(f, "[{:?}]", s.re)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_example() {
        let pi = parse_isobaric("D3[0.1]+sgn[-0.2]+triv").unwrap();
        let want = IsobaricSum::discrete(3, C64::new(0.1, 0.0))
            .unwrap()
            .boxplus(&IsobaricSum::sgn(C64::new(-0.2, 0.0)))
            .boxplus(&IsobaricSum::triv(C64::new(0.0, 0.0)));
        assert_eq!(pi, want);
        assert_eq!(pi.dimension(), 4);
    }

    #[test]
    fn complex_twist_and_d1() {
        let pi = parse_isobaric("D1[0.5,-2]").unwrap();
        assert_eq!(pi.to_string(), "triv[0.5,-2.0]+sgn[0.5,-2.0]");
        assert_eq!(parse_isobaric("").unwrap().dimension(), 0);
        assert_eq!(parse_isobaric("sgn[1e-3]").unwrap().blocks()[0].shift, C64::new(1e-3, 0.0));
    }

    #[test]
    fn round_trip() {
        let text = "D12[0.1,3.25]+sgn[-0.2]+triv+D2[0.0,-1.0]";
        let pi = parse_isobaric(text).unwrap();
        assert_eq!(parse_isobaric(&pi.to_string()).unwrap(), pi);
    }

    #[test]
    fn errors_report_position() {
        let pos = |s: &str| match parse_isobaric(s) {
            Err(Error::Parse { position, .. }) => position,
            other => panic!("{other:?}"),
        };
        assert_eq!(pos("triv+"), 5);
        assert_eq!(pos("D"), 1);
        assert_eq!(pos("D0"), 0);
        assert_eq!(pos("sgn[0.1"), 4);
        assert_eq!(pos("sgn[x]"), 4);
        assert_eq!(pos("triv sgn"), 4);
        assert_eq!(pos("sgn[1,2,3]"), 7);
    }
}
