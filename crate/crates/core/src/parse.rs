//! Expression grammar shared by every front end.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (['*'] factor)*
//! factor   := atom ['^' exponent]
//! atom     := int ['/' int] | ident | '(' expr ')'
//! exponent := ['-'] int ['/' int] | '(' ['-'] int ['/' int] ')'
//! ```
//!
//! Identifiers are split greedily into the ring's generator names and
//! coefficient symbols, so `x1x2` reads as `x1 * x2`.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{AlgebraElement, Ring, ScalarSymbols};
use crate::error::{Error, Result, Span};
use crate::novikov::{Convention, Scalar};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        let start = i;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(src[start..i].parse().expect("digits")), Span { start, end: i }));
                continue;
            }
            _ if c.is_ascii_alphabetic() || c == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(src[start..i].to_string()), Span { start, end: i }));
                continue;
            }
            _ => {
                let end = start + c.len_utf8();
                return Err(Error::Parse { message: format!("unexpected character `{}`", c), span: Span { start, end } });
            }
        };
        i += 1;
        out.push((tok, Span { start, end: i }));
    }
    Ok(out)
}

/// One name inside an identifier.
#[derive(Clone, Debug)]
enum Atom<M> {
    Generator(usize),
    Symbol(M),
}

struct Parser<'a, M: ScalarSymbols> {
    ring: &'a Ring<M>,
    toks: Vec<(Tok, Span)>,
    pos: usize,
    len: usize,
    convention: Convention,
}

impl<'a, M: ScalarSymbols> Parser<'a, M> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn span_here(&self) -> Span {
        self.toks.get(self.pos).map(|(_, s)| *s).unwrap_or(Span { start: self.len, end: self.len })
    }

    fn bump(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { message: message.into(), span: self.span_here() })
    }

    fn expr(&mut self) -> Result<AlgebraElement<M>> {
        let mut negate = false;
        match self.peek() {
            Some(Tok::Minus) => {
                negate = true;
                self.bump();
            }
            Some(Tok::Plus) => {
                self.bump();
            }
            _ => {}
        }
        let first = self.term()?;
        let mut acc = if negate { -first } else { first };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen))
    }

    fn term(&mut self) -> Result<AlgebraElement<M>> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
                acc = &acc * &self.factor()?;
            } else if self.starts_factor() {
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.bump() {
            Some((Tok::Int(n), _)) => Ok(n),
            _ => {
                self.pos -= 1;
                self.error("expected an integer")
            }
        }
    }

    fn exponent(&mut self) -> Result<(BigRational, Span)> {
        let start = self.span_here();
        let paren = matches!(self.peek(), Some(Tok::LParen));
        if paren {
            self.bump();
        }
        let neg = matches!(self.peek(), Some(Tok::Minus));
        if neg {
            self.bump();
        }
        let num = self.int()?;
        let mut value = BigRational::from_integer(num);
        if matches!(self.peek(), Some(Tok::Slash)) {
            self.bump();
            let den = self.int()?;
            if den.is_zero() {
                self.pos -= 1;
                return self.error("zero denominator");
            }
            value /= BigRational::from_integer(den);
        }
        if paren {
            if !matches!(self.peek(), Some(Tok::RParen)) {
                return self.error("expected `)`");
            }
            self.bump();
        }
        if neg {
            value = -value;
        }
        let end = self.toks.get(self.pos.saturating_sub(1)).map(|(_, s)| s.end).unwrap_or(self.len);
        Ok((value, Span { start: start.start, end }))
    }

    fn factor(&mut self) -> Result<AlgebraElement<M>> {
        let (pieces, last) = self.atom()?;
        if !matches!(self.peek(), Some(Tok::Caret)) {
            return Ok(pieces.into_iter().chain(std::iter::once(last)).fold(AlgebraElement::one(self.ring), |a, b| &a * &b));
        }
        self.bump();
        let (e, espan) = self.exponent()?;
        let powered = self.raise(last, &e, espan)?;
        Ok(pieces.into_iter().fold(powered, |a, b| &a * &b))
    }

    /// Raise a parsed atom. Generators and compound expressions take
    /// nonnegative integer powers; pure monomial scalars take any rational
    /// power that stays in the exponent group.
    fn raise(&self, base: AlgebraElement<M>, e: &BigRational, span: Span) -> Result<AlgebraElement<M>> {
        if let Some(s) = base.as_unit_multiple() {
            if let Some((m, c)) = s.as_monomial() {
                let r = ratio_i64(e).ok_or(Error::Parse { message: "exponent out of range".into(), span })?;
                let mono = m.pow_ratio(r).ok_or(Error::Parse {
                    message: "exponent leaves the coefficient group".into(),
                    span,
                })?;
                let coeff = if c.is_one() {
                    BigRational::one()
                } else if r.is_integer() {
                    rational_pow(c, r.to_integer())
                } else {
                    return Err(Error::Parse { message: "fractional power of a non-unit coefficient".into(), span });
                };
                return Ok(AlgebraElement::scalar(self.ring, Scalar::monomial(mono, coeff)));
            }
        }
        if !e.is_integer() || e.is_negative() {
            return Err(Error::Parse { message: "element powers must be nonnegative integers".into(), span });
        }
        let k = e.to_integer().to_u64().ok_or(Error::Parse { message: "exponent too large".into(), span })?;
        Ok(base.power(k))
    }

    /// Returns the leading pieces of a split identifier and the last piece,
    /// so that an exponent binds to the last name only.
    fn atom(&mut self) -> Result<(Vec<AlgebraElement<M>>, AlgebraElement<M>)> {
        match self.bump() {
            Some((Tok::Int(n), _)) => {
                let mut c = BigRational::from_integer(n);
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let d = self.int()?;
                    if d.is_zero() {
                        self.pos -= 1;
                        return self.error("zero denominator");
                    }
                    c /= BigRational::from_integer(d);
                }
                Ok((vec![], AlgebraElement::scalar(self.ring, Scalar::constant(c))))
            }
            Some((Tok::Ident(name), span)) => {
                let atoms = self.split(&name, span)?;
                let mut elems: Vec<AlgebraElement<M>> = atoms
                    .into_iter()
                    .map(|a| match a {
                        Atom::Generator(g) => AlgebraElement::basis(self.ring, self.ring.generators()[g].basis_index),
                        Atom::Symbol(m) => {
                            AlgebraElement::scalar(self.ring, Scalar::monomial(self.convention.apply(&m), BigRational::one()))
                        }
                    })
                    .collect();
                let last = elems.pop().expect("nonempty split");
                Ok((elems, last))
            }
            Some((Tok::LParen, _)) => {
                let e = self.expr()?;
                if !matches!(self.peek(), Some(Tok::RParen)) {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok((vec![], e))
            }
            Some(_) => {
                self.pos -= 1;
                self.error("expected a number, a name or `(`")
            }
            None => self.error("unexpected end of input"),
        }
    }

    fn split(&self, name: &str, span: Span) -> Result<Vec<Atom<M>>> {
        let mut names: Vec<(String, Atom<M>)> = self
            .ring
            .generators()
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), Atom::Generator(i)))
            .collect();
        for s in M::symbol_names(self.ring) {
            if let Some(m) = self.ring.scalar_symbol(&s) {
                names.push((s, Atom::Symbol(m)));
            }
        }
        names.sort_by(|a, b| b.0.len().cmp(&a.0.len()));
        let mut out = Vec::new();
        let mut rest = name;
        let mut offset = span.start;
        while !rest.is_empty() {
            match names.iter().find(|(n, _)| rest.starts_with(n.as_str())) {
                Some((n, a)) => {
                    out.push(a.clone());
                    rest = &rest[n.len()..];
                    offset += n.len();
                }
                None => {
                    return Err(Error::UnknownGenerator {
                        name: rest.to_string(),
                        span: Span { start: offset, end: span.end },
                    })
                }
            }
        }
        Ok(out)
    }
}

fn ratio_i64(r: &BigRational) -> Option<Ratio<i64>> {
    Some(Ratio::new(r.numer().to_i64()?, r.denom().to_i64()?))
}

fn rational_pow(c: &BigRational, k: i64) -> BigRational {
    let p = num_traits::pow(c.clone(), k.unsigned_abs() as usize);
    if k < 0 {
        p.recip()
    } else {
        p
    }
}

/// Parse an element of `ring`; coefficient monomials are read in `convention`.
pub fn parse_element_with<M: ScalarSymbols>(ring: &Ring<M>, src: &str, convention: Convention) -> Result<AlgebraElement<M>> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(Error::Parse { message: "empty expression".into(), span: Span { start: 0, end: 0 } });
    }
    let mut p = Parser { ring, toks, pos: 0, len: src.len(), convention };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return p.error("unexpected trailing input");
    }
    Ok(e)
}

pub fn parse_element<M: ScalarSymbols>(ring: &Ring<M>, src: &str) -> Result<AlgebraElement<M>> {
    parse_element_with(ring, src, Convention::Display)
}

/// Reduce a polynomial in the generators to basis coordinates.
pub fn normal_form<M: ScalarSymbols>(ring: &Ring<M>, src: &str) -> Result<AlgebraElement<M>> {
    parse_element(ring, src)
}

/// Parse a pure coefficient such as `3/2*q^-2*t^-2 + t^4`.
pub fn parse_scalar<M: ScalarSymbols>(ring: &Ring<M>, src: &str) -> Result<Scalar<M>> {
    let e = parse_element(ring, src)?;
    if e.is_zero() {
        return Ok(Scalar::zero());
    }
    e.as_unit_multiple().cloned().ok_or(Error::Parse {
        message: "expected a coefficient, found an element with homology terms".into(),
        span: Span { start: 0, end: src.len() },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::novikov::{rat, NovikovMonomial};

    fn g24() -> Ring<NovikovMonomial> {
        catalog::build_novikov("g24").unwrap()
    }

    #[test]
    fn juxtaposed_generators_are_split() {
        let r = g24();
        assert_eq!(parse_element(&r, "x1x2").unwrap(), parse_element(&r, "x1*x2").unwrap());
        assert_eq!(parse_element(&r, "x1x2^2").unwrap(), parse_element(&r, "x1*x2*x2").unwrap());
    }

    #[test]
    fn rational_exponents_both_spellings() {
        let r = g24();
        let a = parse_scalar(&r, "t^3/2").unwrap();
        let b = parse_scalar(&r, "t^(3/2)").unwrap();
        assert_eq!(a, b);
        assert_eq!(a, Scalar::monomial(NovikovMonomial::t_only(Ratio::new(3, 2)), rat(1)));
    }

    #[test]
    fn scalar_literal_grammar() {
        let r = catalog::build_novikov("g24@universal").unwrap();
        let s = parse_scalar(&r, "3/2*q^-2*t^-2 + t^4").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.coefficient(&NovikovMonomial::qt(-2, -2)), crate::novikov::ratio(3, 2));
    }

    #[test]
    fn unknown_generator_has_span() {
        let r = g24();
        match parse_element(&r, "x1 + y7") {
            Err(Error::UnknownGenerator { name, span }) => {
                assert_eq!(name, "y7");
                assert_eq!(span, Span { start: 5, end: 7 });
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn q_is_not_a_lambda_symbol() {
        assert!(matches!(parse_element(&g24(), "q"), Err(Error::UnknownGenerator { .. })));
    }

    #[test]
    fn parse_errors_point_at_the_problem() {
        let r = g24();
        match parse_element(&r, "x1 + ") {
            Err(Error::Parse { span, .. }) => assert_eq!(span.start, 5),
            other => panic!("unexpected {:?}", other),
        }
        assert!(matches!(parse_element(&r, "x1^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_element(&r, "(x1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn phi_faithful_reading_inverts_monomials() {
        let r = catalog::build_novikov("g24@universal").unwrap();
        let a = parse_element_with(&r, "x1*q*t^5", Convention::PhiFaithful).unwrap();
        assert_eq!(a, parse_element(&r, "x1*q^-1*t^-5").unwrap());
    }
}
