//! Modulus expressions.
//!
//! Two forms are accepted:
//!
//! * sums of monomials in `T`: `T^3 + T^2`, `T^2 - 1`, `2*T + 1`, `2T`;
//! * comma-separated coefficients, constant term first: `1,0,1`.
//!
//! Coefficients are integers reduced mod p. Over F_q with q = p^n, n > 1, a
//! coefficient may also be a tuple `(a0,a1,..)` of coordinates in the basis
//! `1, x, .., x^{n-1}` of the defining polynomial.

use carlitz_core::{Error as CoreError, FieldCtx, FqElem, FqPoly};

use crate::error::CliError;

/// Parses a modulus and checks that it is monic of positive degree.
pub fn parse_modulus(text: &str, field: &FieldCtx) -> Result<FqPoly, CliError> {
    let poly = parse_poly(text, field)?;
    if poly.degree().unwrap_or(0) == 0 {
        Err(CliError::Core(CoreError::ConstantModulus))
    } else if !poly.is_monic() {
        Err(CliError::Core(CoreError::NotMonic))
    } else {
        Ok(poly)
    }
}

/// Parses any polynomial expression without the modulus checks.
pub fn parse_poly(text: &str, field: &FieldCtx) -> Result<FqPoly, CliError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, field };
    let poly = if text.contains(['T', 't']) { p.sum()? } else { p.list()? };
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

/// Canonical text: highest degree first, coefficients as integers for the
/// prime subfield and as coordinate tuples otherwise. Parses back to the
/// same polynomial.
pub fn format_poly(poly: &FqPoly, field: &FieldCtx) -> String {
    if poly.is_zero() {
        return "0".to_string();
    }
    let mut parts = Vec::new();
    for (i, &c) in poly.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let coeff = format_elem(c, field);
        parts.push(match (i, c == FqElem::ONE) {
            (0, _) => coeff,
            (1, true) => "T".to_string(),
            (1, false) => format!("{coeff}*T"),
            (e, true) => format!("T^{e}"),
            (e, false) => format!("{coeff}*T^{e}"),
        });
    }
    parts.join(" + ")
}

fn format_elem(a: FqElem, field: &FieldCtx) -> String {
    let coords = field.coords(a);
    if field.n() == 1 || field.is_prime_subfield(a) {
        coords[0].to_string()
    } else {
        let inner: Vec<String> = coords.iter().map(u32::to_string).collect();
        format!("({})", inner.join(","))
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'a FieldCtx,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> CliError {
        CliError::Syntax { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<u64, CliError> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        // Reduce digit by digit so arbitrarily long literals are fine.
        let p = self.field.p();
        Ok(digits.bytes().fold(0u64, |acc, d| (acc * 10 + (d - b'0') as u64) % p))
    }

    /// An integer or a coordinate tuple.
    fn element(&mut self) -> Result<FqElem, CliError> {
        if self.eat(b'(') {
            let start = self.pos;
            let mut coords = vec![self.integer()? as u32];
            while self.eat(b',') {
                coords.push(self.integer()? as u32);
            }
            if !self.eat(b')') {
                return Err(self.error("expected ')'"));
            }
            if coords.len() > self.field.n() as usize {
                self.pos = start;
                return Err(self.error("tuple longer than the extension degree"));
            }
            self.field.from_coords(&coords).map_err(CliError::Core)
        } else {
            let k = self.integer()?;
            Ok(self.field.from_int(k as i64))
        }
    }

    fn signed_element(&mut self) -> Result<FqElem, CliError> {
        let negative = self.eat(b'-');
        let a = self.element()?;
        Ok(if negative { self.field.neg(a) } else { a })
    }

    fn list(&mut self) -> Result<FqPoly, CliError> {
        let mut coeffs = vec![self.signed_element()?];
        while self.eat(b',') {
            coeffs.push(self.signed_element()?);
        }
        Ok(FqPoly::new(coeffs))
    }

    fn sum(&mut self) -> Result<FqPoly, CliError> {
        let mut acc = FqPoly::zero();
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            let (c, e) = self.term()?;
            let c = if negative { self.field.neg(c) } else { c };
            let mut coeffs = vec![FqElem::ZERO; e];
            coeffs.push(c);
            acc = self.field.poly_add(&acc, &FqPoly::new(coeffs));
            if self.eat(b'+') {
                negative = false;
            } else if self.eat(b'-') {
                negative = true;
            } else {
                return Ok(acc);
            }
        }
    }

    /// `c`, `c*T^e`, `cT^e`, `T^e`, `T`, with `c` an integer or tuple.
    fn term(&mut self) -> Result<(FqElem, usize), CliError> {
        let coeff = match self.peek() {
            Some(b'0'..=b'9' | b'(') => Some(self.element()?),
            Some(b'T' | b't') => None,
            _ => return Err(self.error("expected a term")),
        };
        if coeff.is_some() && !matches!(self.peek(), Some(b'*' | b'T' | b't')) {
            return Ok((coeff.unwrap(), 0));
        }
        self.eat(b'*');
        if !(self.eat(b'T') || self.eat(b't')) {
            return Err(self.error("expected 'T'"));
        }
        let exp = if self.eat(b'^') {
            self.skip_ws();
            let start = self.pos;
            while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                self.pos += 1;
            }
            std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse::<usize>()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| {
                    let mut at = Parser { src: self.src, pos: start, field: self.field };
                    at.skip_ws();
                    at.error("expected an exponent")
                })?
        } else {
            1
        };
        Ok((coeff.unwrap_or(FqElem::ONE), exp))
    }
}

/// Exponents beyond this are rejected at parse time.
const MAX_EXPONENT: usize = 4096;

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    #[test]
    fn both_syntaxes_agree() {
        let f = f3();
        let a = parse_modulus("T^2+1", &f).unwrap();
        let b = parse_modulus("1,0,1", &f).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, FqPoly::from_codes(&f, &[1, 0, 1]).unwrap());
    }

    #[test]
    fn coefficient_forms() {
        let f = f3();
        let expect = FqPoly::from_codes(&f, &[1, 2, 1]).unwrap();
        for text in ["T^2 + 2*T + 1", "T^2+2T+1", "t^2 - T + 4", "1 + 2T + T^2", "T^2 + 5*T + 1"] {
            assert_eq!(parse_modulus(text, &f).unwrap(), expect, "{text}");
        }
        assert_eq!(parse_modulus("T^3+T^2", &f).unwrap(), FqPoly::from_codes(&f, &[0, 0, 1, 1]).unwrap());
    }

    #[test]
    fn rejects_non_monic_and_constant() {
        let f = f3();
        assert!(matches!(parse_modulus("2*T^2+1", &f), Err(CliError::Core(CoreError::NotMonic))));
        assert!(matches!(parse_modulus("1", &f), Err(CliError::Core(CoreError::ConstantModulus))));
        assert!(matches!(parse_modulus("3T", &f), Err(CliError::Core(CoreError::ConstantModulus))));
        assert!(matches!(parse_modulus("2", &f), Err(CliError::Core(CoreError::ConstantModulus))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let f = f3();
        let at = |s: &str| match parse_modulus(s, &f) {
            Err(CliError::Syntax { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(at("T^2 + "), 6);
        assert_eq!(at("T^ + 1"), 3);
        assert_eq!(at("T^2 + x"), 6);
        assert_eq!(at("1,,1"), 2);
        assert_eq!(at("T^2 1"), 4);
    }

    #[test]
    fn tuples_over_extension_fields() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let x = f4.from_coords(&[0, 1]).unwrap();
        let m = parse_modulus("T^2 + (0,1)*T + (1,1)", &f4).unwrap();
        assert_eq!(m.coeff(1), x);
        assert_eq!(m.coeff(0), f4.from_coords(&[1, 1]).unwrap());
        assert_eq!(parse_modulus("(1,1),(0,1),1", &f4).unwrap(), m);
        assert!(matches!(parse_modulus("T + (1,1,1)", &f4), Err(CliError::Syntax { position: 5, .. })));
    }

    #[test]
    fn canonical_text_round_trips() {
        for (p, n) in [(3, 1), (5, 1), (2, 2), (3, 2)] {
            let f = FieldCtx::new(p, n, None).unwrap();
            for d in 1..=2 {
                for m in carlitz_core::enumerate_monic(&f, d) {
                    let text = format_poly(&m, &f);
                    assert_eq!(parse_modulus(&text, &f).unwrap(), m, "{text}");
                }
            }
        }
        let f = f3();
        assert_eq!(format_poly(&parse_modulus("T^3+2T^2+1", &f).unwrap(), &f), "T^3 + 2*T^2 + 1");
    }
}
