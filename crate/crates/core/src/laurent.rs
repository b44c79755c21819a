//! Exact Laurent-polynomial arithmetic over the integers.
//!
//! A [`LaurentPoly`] is a finite integer combination of powers `t^k` with
//! `k` ranging over (possibly negative) integers. All arithmetic is exact:
//! coefficients are arbitrary-precision integers and no rounding ever
//! occurs. Polynomials that agree up to a unit `±t^k` can be compared with
//! [`LaurentPoly::units_equal`], the equivalence under which the Alexander
//! polynomial is well defined.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Errors arising from Laurent-polynomial parsing and arithmetic.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum LaurentError {
    #[error("cannot parse Laurent polynomial: {0}")]
    Parse(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division left a remainder")]
    InexactDivision,
    #[error("the zero polynomial has no unit normal form")]
    NormalizeZero,
    #[error("cannot evaluate a Laurent polynomial at zero")]
    EvalAtZero,
}

/// An integer Laurent polynomial in one variable `t`.
///
/// Internally a sorted exponent-to-coefficient map that never stores zero
/// coefficients, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, BigInt::one())
    }

    /// The single term `coeff * t^exp` (zero if `coeff` is zero).
    pub fn monomial(exp: i64, coeff: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff.into());
        p
    }

    /// The constant polynomial `n`.
    pub fn constant(n: impl Into<BigInt>) -> Self {
        Self::monomial(0, n)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(0).is_one()
    }

    /// The coefficient of `t^exp` (zero when absent).
    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Exponent/coefficient pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, exp: i64, coeff: BigInt) {
        use std::collections::btree_map::Entry;
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// This polynomial multiplied by the unit `t^k`.
    pub fn mul_t_power(&self, k: i64) -> Self {
        let mut out = Self::zero();
        for (exp, coeff) in &self.terms {
            out.terms.insert(exp + k, coeff.clone());
        }
        out
    }

    /// This polynomial multiplied by the integer `s`.
    pub fn scaled(&self, s: &BigInt) -> Self {
        let mut out = Self::zero();
        if s.is_zero() {
            return out;
        }
        for (exp, coeff) in &self.terms {
            out.terms.insert(*exp, coeff * s);
        }
        out
    }

    /// The unique representative of this polynomial modulo units `±t^k`:
    /// lowest exponent shifted to zero, constant term positive.
    pub fn normalize_units(&self) -> Result<Self, LaurentError> {
        let min = self.min_exp().ok_or(LaurentError::NormalizeZero)?;
        let mut shifted = self.mul_t_power(-min);
        let lead_negative = shifted
            .terms
            .values()
            .next()
            .is_some_and(|c| c.is_negative());
        if lead_negative {
            shifted = -&shifted;
        }
        Ok(shifted)
    }

    /// Whether `self` and `other` agree up to multiplication by `±t^k`.
    pub fn units_equal(&self, other: &Self) -> bool {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (true, false) | (false, true) => false,
            (false, false) => self.normalize_units().unwrap() == other.normalize_units().unwrap(),
        }
    }

    /// Exact evaluation at a nonzero integer, as a rational number
    /// (negative exponents contribute fractions).
    pub fn eval_at_int(&self, x: i64) -> Result<BigRational, LaurentError> {
        if x == 0 {
            return Err(LaurentError::EvalAtZero);
        }
        let base = BigInt::from(x);
        let mut total = BigRational::zero();
        for (exp, coeff) in &self.terms {
            let power = base.pow(u32::try_from(exp.unsigned_abs()).expect("exponent fits u32"));
            let term = if *exp >= 0 {
                BigRational::from(coeff * power)
            } else {
                BigRational::new(coeff.clone(), power)
            };
            total += term;
        }
        Ok(total)
    }

    /// Exact division in the Laurent ring; errors unless `divisor` divides
    /// `self` with an integer-coefficient quotient.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, LaurentError> {
        if divisor.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Shift both operands into ordinary polynomials with nonzero
        // constant terms; any Laurent quotient of those is an ordinary
        // polynomial, so top-down long division decides exactness.
        let shift_self = self.min_exp().unwrap();
        let shift_div = divisor.min_exp().unwrap();
        let mut rem = self.mul_t_power(-shift_self);
        let den = divisor.mul_t_power(-shift_div);
        let den_deg = den.max_exp().unwrap();
        let den_lead = den.coeff(den_deg);
        let mut quotient = Self::zero();
        while !rem.is_zero() {
            let rem_deg = rem.max_exp().unwrap();
            if rem_deg < den_deg {
                return Err(LaurentError::InexactDivision);
            }
            let rem_lead = rem.coeff(rem_deg);
            if (&rem_lead % &den_lead) != BigInt::zero() {
                return Err(LaurentError::InexactDivision);
            }
            let step = Self::monomial(rem_deg - den_deg, &rem_lead / &den_lead);
            rem = &rem - &(&step * &den);
            quotient = &quotient + &step;
        }
        Ok(quotient.mul_t_power(shift_self - shift_div))
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, coeff.clone());
        }
        out
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (exp, coeff) in &rhs.terms {
            out.add_term(*exp, -coeff.clone());
        }
        out
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (le, lc) in &self.terms {
            for (re, rc) in &rhs.terms {
                out.add_term(le + re, lc * rc);
            }
        }
        out
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (exp, coeff) in &self.terms {
            out.terms.insert(*exp, -coeff.clone());
        }
        out
    }
}

impl std::ops::Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl std::ops::Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl std::ops::Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl std::ops::Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders in increasing exponent order, e.g. `2 - 3t + 3t^2 - t^3`,
    /// `t^-1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, coeff) in &self.terms {
            let negative = coeff.is_negative();
            if first {
                if negative {
                    f.write_str("-")?;
                }
                first = false;
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let magnitude = coeff.abs();
            if *exp == 0 || !magnitude.is_one() {
                write!(f, "{magnitude}")?;
            }
            if *exp != 0 {
                f.write_str("t")?;
                if *exp != 1 {
                    write!(f, "^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Parses the `Display` format; an optional `*` between coefficient and
    /// `t` is also accepted (`3*t^2`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Parser::new(s).parse()
    }
}

struct Parser<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            src,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, what: &str) -> LaurentError {
        LaurentError::Parse(format!("{what} at position {} in {:?}", self.pos, self.src))
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn digits(&mut self) -> Result<String, LaurentError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut poly = LaurentPoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty input"));
        }
        let mut negate = match self.peek() {
            Some('-') => {
                self.bump();
                true
            }
            Some('+') => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            self.skip_ws();
            let (exp, coeff) = self.term()?;
            poly.add_term(exp, if negate { -coeff } else { coeff });
            self.skip_ws();
            match self.bump() {
                None => return Ok(poly),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(_) => {
                    self.pos -= 1;
                    return Err(self.error("expected '+' or '-'"));
                }
            }
        }
    }

    /// One signless term: `number`, `t`, `t^k`, `number t^k`, `number*t^k`.
    fn term(&mut self) -> Result<(i64, BigInt), LaurentError> {
        let coeff = if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let digits = self.digits()?;
            let value = BigInt::parse_bytes(digits.as_bytes(), 10)
                .ok_or_else(|| self.error("bad integer"))?;
            self.skip_ws();
            if self.peek() == Some('*') {
                self.bump();
                self.skip_ws();
                if self.peek() != Some('t') {
                    return Err(self.error("expected 't' after '*'"));
                }
            }
            Some(value)
        } else {
            None
        };
        if self.peek() == Some('t') {
            self.bump();
            let exp = if self.peek() == Some('^') {
                self.bump();
                let negative = if self.peek() == Some('-') {
                    self.bump();
                    true
                } else {
                    false
                };
                let digits = self.digits()?;
                let raw: i64 = digits.parse().map_err(|_| self.error("bad exponent"))?;
                if negative {
                    -raw
                } else {
                    raw
                }
            } else {
                1
            };
            Ok((exp, coeff.unwrap_or_else(BigInt::one)))
        } else {
            match coeff {
                Some(value) => Ok((0, value)),
                None => Err(self.error("expected a term")),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "0",
            "1",
            "-1",
            "t",
            "-t",
            "t^-1",
            "5t^3",
            "2 - 3t + 3t^2 - t^3",
            "-t^-1 + 3 - 5t",
            "2t^-2 + 7",
        ] {
            assert_eq!(p(text).to_string(), text);
        }
    }

    #[test]
    fn parse_accepts_asterisks_and_spacing() {
        assert_eq!(p("3*t^2"), p("3t^2"));
        assert_eq!(p("1-t+t^2"), p("1 - t + t^2"));
        assert_eq!(p("+2t"), p("2t"));
        assert_eq!(p(" 4 "), LaurentPoly::constant(4));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for text in ["", "t^", "2 +", "x", "3 4", "^2", "2 * * t", "t^--1"] {
            assert!(text.parse::<LaurentPoly>().is_err(), "accepted {text:?}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        assert_eq!(&p("1 - t") * &p("1 + t"), p("1 - t^2"));
        assert_eq!(&p("t^-1 + 1") * &p("t"), p("1 + t"));
        assert_eq!(&p("2 - t") - &p("2"), p("-t"));
        assert_eq!(-&p("1 - t"), p("-1 + t"));
        assert!((&p("t") - &p("t")).is_zero());
    }

    #[test]
    fn coefficients_merge_and_cancel() {
        let sum = &p("t + t") + &p("-2t + 1");
        assert_eq!(sum, LaurentPoly::one());
        assert_eq!(p("0"), LaurentPoly::zero());
    }

    #[test]
    fn unit_normalization() {
        assert_eq!(p("t^2 - t^3").normalize_units().unwrap(), p("1 - t"));
        assert_eq!(p("-t^-1 + 1").normalize_units().unwrap(), p("1 - t"));
        assert!(LaurentPoly::zero().normalize_units().is_err());
        assert!(p("1 - t + t^2").units_equal(&p("t^-1 - 1 + t")));
        assert!(p("1 - t + t^2").units_equal(&p("-t^2 + t^3 - t^4")));
        assert!(!p("1 - t + t^2").units_equal(&p("1 + t + t^2")));
        assert!(LaurentPoly::zero().units_equal(&LaurentPoly::zero()));
        assert!(!LaurentPoly::zero().units_equal(&LaurentPoly::one()));
    }

    #[test]
    fn evaluation_is_rational() {
        let third = p("1 - t + t^2").eval_at_int(-1).unwrap();
        assert_eq!(third, BigRational::from(BigInt::from(3)));
        let half = p("t^-1").eval_at_int(2).unwrap();
        assert_eq!(half, BigRational::new(BigInt::one(), BigInt::from(2)));
        assert_eq!(
            p("t^-2 + t").eval_at_int(-2).unwrap(),
            BigRational::new(BigInt::from(-7), BigInt::from(4))
        );
        assert!(p("1 + t").eval_at_int(0).is_err());
    }

    #[test]
    fn exact_division() {
        assert_eq!(
            p("2 - 3t + 3t^2 - t^3")
                .div_exact(&p("1 - t + t^2"))
                .unwrap(),
            p("2 - t")
        );
        assert_eq!(
            p("2t - 3t^2 + 3t^3 - t^4")
                .div_exact(&p("1 - t + t^2"))
                .unwrap(),
            p("2t - t^2")
        );
        assert_eq!(
            p("1 - t^2").div_exact(&p("t^-1 + 1")).unwrap(),
            p("t - t^2")
        );
        assert!(p("1 + t").div_exact(&p("1 - t")).is_err());
        assert!(p("2t").div_exact(&p("4")).is_err());
        assert!(p("1").div_exact(&LaurentPoly::zero()).is_err());
        assert!(LaurentPoly::zero()
            .div_exact(&p("1 - t"))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn division_recovers_products() {
        let a = p("2 - t");
        let b = p("1 - t + t^2");
        assert_eq!((&a * &b).div_exact(&b).unwrap(), a);
        assert_eq!((&a * &b).div_exact(&a).unwrap(), b);
        let unit = p("-t^3");
        let scaled = &(&a * &b) * &unit;
        assert_eq!(scaled.div_exact(&b).unwrap(), &a * &unit);
    }
}
