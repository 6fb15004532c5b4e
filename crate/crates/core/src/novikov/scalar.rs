use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{One, Signed, Zero};

use super::monomial::{EnrichedMonomial, Monomial, NovikovMonomial};
use crate::error::{Error, Result};

/// Long division gives up after this many quotient terms.
const DIVISION_STEP_LIMIT: usize = 20_000;

/// Finite sum `Σ c_m m` of monomials with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar<M: Monomial> {
    terms: BTreeMap<M, BigRational>,
}

pub type NovikovScalar = Scalar<NovikovMonomial>;
pub type EnrichedScalar = Scalar<EnrichedMonomial>;

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl<M: Monomial> Default for Scalar<M> {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl<M: Monomial> Scalar<M> {
    pub fn zero() -> Self {
        Scalar { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Scalar::monomial(M::one(), rat(1))
    }

    pub fn constant(c: BigRational) -> Self {
        Scalar::monomial(M::one(), c)
    }

    pub fn integer(n: i64) -> Self {
        Scalar::constant(rat(n))
    }

    pub fn monomial(m: M, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (M, BigRational)>>(iter: I) -> Self {
        let mut s = Scalar::zero();
        for (m, c) in iter {
            s.add_term(m, c);
        }
        s
    }

    pub fn add_term(&mut self, m: M, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_monomial().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&M, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &M) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The single term, when there is exactly one.
    pub fn as_monomial(&self) -> Option<(&M, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Largest monomial in the group order.
    pub fn leading(&self) -> Option<(&M, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn trailing(&self) -> Option<(&M, &BigRational)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar { terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &M) -> Self {
        Scalar { terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect() }
    }

    pub fn map_monomials<N: Monomial, F: Fn(&M) -> N>(&self, f: F) -> Scalar<N> {
        Scalar::from_terms(self.terms.iter().map(|(m, c)| (f(m), c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Scalar::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// All coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Inverse of a single-term scalar; other scalars have no finite inverse.
    pub fn inverse_monomial(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(Scalar::monomial(m.inv(), c.recip()))
    }

    /// Exact quotient `self / divisor` when it is again a finite sum.
    ///
    /// Long division by leading terms. Every quotient monomial lies at or
    /// above `trailing(self) / trailing(divisor)`; dropping below it, or a
    /// nonzero remainder, means the quotient is not a finite sum.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if let Some(inv) = divisor.inverse_monomial() {
            return Some(self * &inv);
        }
        if self.is_zero() {
            return Some(Scalar::zero());
        }
        let (dl_m, dl_c) = divisor.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let floor = self.trailing()?.0.div(divisor.trailing()?.0);
        let mut remainder = self.clone();
        let mut quotient = Scalar::zero();
        for _ in 0..DIVISION_STEP_LIMIT {
            let Some((rl_m, rl_c)) = remainder.leading().map(|(m, c)| (m.clone(), c.clone())) else {
                return Some(quotient);
            };
            let qm = rl_m.div(&dl_m);
            if qm < floor {
                return None;
            }
            let qc = rl_c / &dl_c;
            let step = Scalar::monomial(qm, qc);
            remainder = &remainder - &(&step * divisor);
            quotient = &quotient + &step;
        }
        None
    }

    /// Render with coefficient, e.g. `3/2*q^-2*t^-2 + t^4`.
    pub fn render(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.render(labels);
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => out.push_str(&abs.to_string()),
                (false, true) => out.push_str(&mono),
                (false, false) => {
                    out.push_str(&abs.to_string());
                    out.push('*');
                    out.push_str(&mono);
                }
            }
        }
        out
    }
}

impl NovikovScalar {
    /// `ν`: the largest t-exponent among nonzero terms.
    pub fn valuation(&self) -> Result<Ratio<i64>> {
        self.terms.keys().map(|m| m.t).max().ok_or(Error::ZeroElement)
    }
}

impl fmt::Display for NovikovScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&[]))
    }
}

impl<M: Monomial> Add for &Scalar<M> {
    type Output = Scalar<M>;
    fn add(self, rhs: &Scalar<M>) -> Scalar<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<M: Monomial> Sub for &Scalar<M> {
    type Output = Scalar<M>;
    fn sub(self, rhs: &Scalar<M>) -> Scalar<M> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<M: Monomial> Mul for &Scalar<M> {
    type Output = Scalar<M>;
    fn mul(self, rhs: &Scalar<M>) -> Scalar<M> {
        let mut out = Scalar::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

impl<M: Monomial> Neg for &Scalar<M> {
    type Output = Scalar<M>;
    fn neg(self) -> Scalar<M> {
        Scalar { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl<M: Monomial> $tr for Scalar<M> {
            type Output = Scalar<M>;
            fn $f(self, rhs: Scalar<M>) -> Scalar<M> {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<M: Monomial> Neg for Scalar<M> {
    type Output = Scalar<M>;
    fn neg(self) -> Scalar<M> {
        -&self
    }
}
