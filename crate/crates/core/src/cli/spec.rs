//! Group specification mini-language.
//!
//! ```text
//! spec   := factor ('x' factor)*
//! factor := 'C' n | 'D' n | 'EA' k | 'Q8' | 'Dic(' spec [';y=' idx] ')'
//! ```
//! Products associate to the left; the label of the parsed group is the
//! normalized spec text.

use crate::error::{Error, Result};
use crate::group::{cyclic, dic, dihedral, direct_product, elementary_abelian, quaternion, FiniteGroup};

pub fn parse_group_spec(text: &str) -> Result<FiniteGroup> {
    let mut p = Parser { s: text.as_bytes(), pos: 0 };
    let (g, label) = p.product()?;
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(g.with_label(label))
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.s[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "number too large".into() })
    }

    fn product(&mut self) -> Result<(FiniteGroup, String)> {
        let (mut g, mut label) = self.factor()?;
        while self.eat("x") {
            let (h, hl) = self.factor()?;
            g = direct_product(&g, &h)?;
            label = format!("{label}x{hl}");
        }
        Ok((g, label))
    }

    fn factor(&mut self) -> Result<(FiniteGroup, String)> {
        if self.eat("Dic(") {
            let (a, al) = self.product()?;
            let y = if self.eat(";y=") { Some(self.number()?) } else { None };
            if !self.eat(")") {
                return Err(self.err("expected ')'"));
            }
            let (g, _) = dic(&a, y)?;
            let label = match y {
                Some(y) => format!("Dic({al};y={y})"),
                None => format!("Dic({al})"),
            };
            Ok((g, label))
        } else if self.eat("Q8") {
            Ok((quaternion(), "Q8".into()))
        } else if self.eat("EA") {
            let k = self.number()?;
            Ok((elementary_abelian(k)?, format!("EA{k}")))
        } else if self.eat("C") {
            let n = self.number()?;
            Ok((cyclic(n)?, format!("C{n}")))
        } else if self.eat("D") {
            let n = self.number()?;
            Ok((dihedral(n)?, format!("D{n}")))
        } else {
            Err(self.err("expected C, D, EA, Q8 or Dic("))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_isomorphic;

    #[test]
    fn parses_examples() {
        let c6 = parse_group_spec("C6").unwrap();
        assert_eq!((c6.order(), c6.label()), (6, "C6"));
        assert!(is_isomorphic(&c6, &cyclic(6).unwrap()));
        let g = parse_group_spec("Q8xC2").unwrap();
        assert_eq!(g.order(), 16);
        assert_eq!(parse_group_spec("Q8xC2xC2").unwrap().order(), 32);
        assert_eq!(parse_group_spec("Dic(C4xC2;y=1)").unwrap().label(), "Dic(C4xC2;y=1)");
        assert_eq!(parse_group_spec("C06").unwrap().label(), "C6");
        assert_eq!(parse_group_spec("D3").unwrap().order(), 6);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(matches!(parse_group_spec("Dic(C2)"), Err(Error::DicExponentTooSmall)));
        assert!(matches!(parse_group_spec("C6 "), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse_group_spec("Z5"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_group_spec("Dic(C4"), Err(Error::Syntax { pos: 6, .. })));
        assert!(parse_group_spec("D2").is_err());
        assert!(parse_group_spec("C8xC8xC8").is_err());
    }
}
