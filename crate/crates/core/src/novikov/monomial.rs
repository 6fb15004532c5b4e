use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// Exponent group of a Novikov coefficient ring.
///
/// Multiplication adds exponents, so every implementor is a free abelian
/// group written multiplicatively. `Ord` must be a translation-invariant
/// total order: exact division of scalars relies on leading terms
/// multiplying without cancellation.
pub trait Monomial: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync + 'static {
    fn one() -> Self;
    fn is_one(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn pow(&self, k: i64) -> Self;

    /// Text form. `labels` names the sphere classes of the ambient ring and
    /// is only consulted by monomials that carry class data.
    fn render(&self, labels: &[String]) -> String;

    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    /// Rational power, when it stays inside the exponent group.
    fn pow_ratio(&self, r: Ratio<i64>) -> Option<Self> {
        r.is_integer().then(|| self.pow(r.to_integer()))
    }

    /// Chern number `c₁` carried by the monomial. `classes` and `kappa`
    /// describe the ambient ring; `t_only` says q has been stripped so the
    /// Chern number must be read off the t-exponent.
    fn chern_number(&self, classes: &[super::SphereClass], kappa: Ratio<i64>, t_only: bool) -> Ratio<i64>;
}

/// `q^a t^b` with `a` an integer and `b` rational.
///
/// Derived ordering is lexicographic in `(q, t)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NovikovMonomial {
    pub q: i64,
    pub t: Ratio<i64>,
}

impl NovikovMonomial {
    pub fn new(q: i64, t: Ratio<i64>) -> Self {
        NovikovMonomial { q, t }
    }

    pub fn qt(q: i64, t: i64) -> Self {
        NovikovMonomial { q, t: Ratio::from_integer(t) }
    }

    pub fn t_only(t: Ratio<i64>) -> Self {
        NovikovMonomial { q: 0, t }
    }

    /// Contribution to the total grading, `deg(q) = 2`.
    pub fn grading(&self) -> i64 {
        2 * self.q
    }

    /// Raise to a rational power; `None` when the q-exponent would leave the integers.
    pub fn pow_rational(&self, r: Ratio<i64>) -> Option<Self> {
        let q = Ratio::from_integer(self.q) * r;
        if !q.is_integer() {
            return None;
        }
        Some(NovikovMonomial { q: q.to_integer(), t: self.t * r })
    }
}

fn render_exponent(base: &str, e: &Ratio<i64>) -> String {
    if e.is_one() {
        base.to_string()
    } else if e.is_integer() {
        format!("{}^{}", base, e.numer())
    } else {
        format!("{}^({})", base, e)
    }
}

impl Monomial for NovikovMonomial {
    fn one() -> Self {
        NovikovMonomial { q: 0, t: Ratio::zero() }
    }

    fn is_one(&self) -> bool {
        self.q == 0 && self.t.is_zero()
    }

    fn mul(&self, other: &Self) -> Self {
        NovikovMonomial { q: self.q + other.q, t: self.t + other.t }
    }

    fn inv(&self) -> Self {
        NovikovMonomial { q: -self.q, t: -self.t }
    }

    fn pow(&self, k: i64) -> Self {
        NovikovMonomial { q: self.q * k, t: self.t * Ratio::from_integer(k) }
    }

    fn pow_ratio(&self, r: Ratio<i64>) -> Option<Self> {
        self.pow_rational(r)
    }

    fn chern_number(&self, _classes: &[super::SphereClass], kappa: Ratio<i64>, t_only: bool) -> Ratio<i64> {
        if t_only {
            self.t / kappa
        } else {
            Ratio::from_integer(self.q)
        }
    }

    fn render(&self, _labels: &[String]) -> String {
        let mut parts = Vec::new();
        if self.q != 0 {
            parts.push(render_exponent("q", &Ratio::from_integer(self.q)));
        }
        if !self.t.is_zero() {
            parts.push(render_exponent("t", &self.t));
        }
        parts.join("*")
    }
}

impl fmt::Display for NovikovMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            f.write_str("1")
        } else {
            f.write_str(&self.render(&[]))
        }
    }
}

/// Enriched symbol `e^{-A}` with `A = Σ k_i A_i` over the stored sphere
/// classes `A_i`; the vector holds the `k_i`.
///
/// Trailing zeros are trimmed so that equality is structural. Ordering is
/// lexicographic on the zero-padded vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct EnrichedMonomial {
    classes: Vec<i64>,
}

impl EnrichedMonomial {
    pub fn new(mut classes: Vec<i64>) -> Self {
        while classes.last() == Some(&0) {
            classes.pop();
        }
        EnrichedMonomial { classes }
    }

    /// `e^{-A_i}` for the `i`-th stored class.
    pub fn class(i: usize) -> Self {
        let mut v = vec![0; i + 1];
        v[i] = 1;
        EnrichedMonomial { classes: v }
    }

    pub fn exponent(&self, i: usize) -> i64 {
        self.classes.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[i64] {
        &self.classes
    }

    /// Concatenate with a monomial of another factor, `self` occupying the first `width` slots.
    pub fn concat(&self, width: usize, other: &EnrichedMonomial) -> Self {
        let mut v: Vec<i64> = (0..width).map(|i| self.exponent(i)).collect();
        v.extend_from_slice(&other.classes);
        EnrichedMonomial::new(v)
    }
}

impl PartialOrd for EnrichedMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for EnrichedMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let n = self.classes.len().max(other.classes.len());
        for i in 0..n {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl Monomial for EnrichedMonomial {
    fn one() -> Self {
        EnrichedMonomial::default()
    }

    fn is_one(&self) -> bool {
        self.classes.is_empty()
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.classes.len().max(other.classes.len());
        EnrichedMonomial::new((0..n).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    fn inv(&self) -> Self {
        EnrichedMonomial { classes: self.classes.iter().map(|k| -k).collect() }
    }

    fn pow(&self, k: i64) -> Self {
        EnrichedMonomial::new(self.classes.iter().map(|e| e * k).collect())
    }

    fn chern_number(&self, classes: &[super::SphereClass], _kappa: Ratio<i64>, _t_only: bool) -> Ratio<i64> {
        let c: i64 = classes.iter().enumerate().map(|(i, a)| a.chern * self.exponent(i)).sum();
        Ratio::from_integer(c)
    }

    fn render(&self, labels: &[String]) -> String {
        self.classes
            .iter()
            .enumerate()
            .filter(|(_, k)| **k != 0)
            .map(|(i, k)| {
                let label = labels.get(i).cloned().unwrap_or_else(|| format!("A{}", i));
                let sym = format!("e_{}", label);
                if *k == 1 {
                    sym
                } else if k.is_negative() {
                    format!("{}^({})", sym, k)
                } else {
                    format!("{}^{}", sym, k)
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn novikov_exponents_add() {
        let a = NovikovMonomial::qt(4, 4);
        assert_eq!(a.mul(&a), NovikovMonomial::qt(8, 8));
        assert!(NovikovMonomial::qt(0, 2).mul(&NovikovMonomial::qt(0, -2)).is_one());
        assert_eq!(NovikovMonomial::qt(-1, 3).grading(), -2);
    }

    #[test]
    fn novikov_rendering() {
        assert_eq!(NovikovMonomial::qt(0, 8).to_string(), "t^8");
        assert_eq!(NovikovMonomial::qt(-2, -2).to_string(), "q^-2*t^-2");
        assert_eq!(NovikovMonomial::t_only(Ratio::new(3, 2)).to_string(), "t^(3/2)");
        assert_eq!(NovikovMonomial::qt(1, 1).to_string(), "q*t");
    }

    #[test]
    fn rational_power_rejects_fractional_q() {
        let m = NovikovMonomial::qt(1, 2);
        assert!(m.pow_rational(Ratio::new(1, 2)).is_none());
        assert_eq!(NovikovMonomial::qt(0, 3).pow_rational(Ratio::new(1, 3)), Some(NovikovMonomial::qt(0, 1)));
    }

    #[test]
    fn enriched_order_pads_with_zeros() {
        let a = EnrichedMonomial::new(vec![1, -1]);
        let b = EnrichedMonomial::new(vec![1]);
        assert!(a < b);
        assert_eq!(EnrichedMonomial::new(vec![1, 0, 0]), b);
        assert!(a.mul(&a.inv()).is_one());
    }

    #[test]
    fn enriched_rendering_uses_labels() {
        let labels = vec!["L1".to_string(), "L2".to_string()];
        assert_eq!(EnrichedMonomial::new(vec![2, 1]).render(&labels), "e_L1^2*e_L2");
        assert_eq!(EnrichedMonomial::new(vec![0, -1]).render(&labels), "e_L2^(-1)");
    }
}
