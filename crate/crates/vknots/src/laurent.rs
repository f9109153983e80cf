//! Integer Laurent polynomials in the variable `A`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

/// Exponent-to-coefficient map; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Laurent {
        Laurent::default()
    }

    pub fn one() -> Laurent {
        Laurent::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Laurent {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(exp, coeff);
        }
        Laurent { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Laurent {
        let mut out = Laurent::zero();
        for (e, c) in terms {
            out.bump(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    fn bump(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let slot = self.terms.entry(exp).or_insert(0);
        *slot += coeff;
        if *slot == 0 {
            self.terms.remove(&exp);
        }
    }

    pub fn pow(&self, n: u32) -> Laurent {
        let mut out = Laurent::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// Substitute `A -> A^-1`.
    pub fn subst_a_inverse(&self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(&e, &c)| (-e, c)).collect() }
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&e, &c) in &rhs.terms {
            self.bump(e, c);
        }
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.bump(e, -c);
        }
        out
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.bump(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&exp, &coeff)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if coeff < 0 {
                    write!(f, "-")?;
                }
            } else if coeff < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = coeff.unsigned_abs();
            if a != 1 || exp == 0 {
                write!(f, "{a}")?;
            }
            if exp != 0 {
                if a != 1 {
                    write!(f, "*")?;
                }
                if exp == 1 {
                    write!(f, "A")?;
                } else {
                    write!(f, "A^{exp}")?;
                }
            }
        }
        Ok(())
    }
}

impl Serialize for Laurent {
    /// `[[exponent, coefficient], ...]` in descending exponent order.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter().rev().map(|(&e, &c)| (e, c)))
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let terms: Vec<(i64, i64)> = Vec::deserialize(d)?;
        Ok(Laurent::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(Laurent::zero().to_string(), "0");
        assert_eq!(Laurent::one().to_string(), "1");
        assert_eq!(Laurent::monomial(3, -1).to_string(), "-A^3");
        assert_eq!(Laurent::monomial(-1, 2).to_string(), "2*A^-1");
        let d = Laurent::from_terms([(2, -1), (-2, -1)]);
        assert_eq!(d.to_string(), "-A^2 - A^-2");
        let f = Laurent::from_terms([(-4, 1), (-6, 1), (-10, -1)]);
        assert_eq!(f.to_string(), "A^-4 + A^-6 - A^-10");
        assert_eq!(Laurent::from_terms([(1, 1), (0, -3)]).to_string(), "A - 3");
    }

    #[test]
    fn arithmetic_cancels() {
        let a = Laurent::from_terms([(1, 2), (0, 1)]);
        let b = Laurent::from_terms([(1, -2), (2, 5)]);
        let sum = &a + &b;
        assert_eq!(sum, Laurent::from_terms([(2, 5), (0, 1)]));
        assert!((&a - &a).is_zero());
        assert_eq!(&-&a + &a, Laurent::zero());
    }

    #[test]
    fn multiplication_and_powers() {
        let d = Laurent::from_terms([(2, -1), (-2, -1)]);
        let sq = &d * &d;
        assert_eq!(sq, Laurent::from_terms([(4, 1), (0, 2), (-4, 1)]));
        assert_eq!(d.pow(2), sq);
        assert_eq!(d.pow(0), Laurent::one());
        let x = Laurent::from_terms([(1, 1), (0, 1)]);
        let y = Laurent::from_terms([(1, 1), (0, -1)]);
        assert_eq!(&x * &y, Laurent::from_terms([(2, 1), (0, -1)]));
    }

    #[test]
    fn inverse_substitution_is_an_involution() {
        let p = Laurent::from_terms([(5, -1), (-3, -1), (-7, 1)]);
        assert_eq!(p.subst_a_inverse(), Laurent::from_terms([(-5, -1), (3, -1), (7, 1)]));
        assert_eq!(p.subst_a_inverse().subst_a_inverse(), p);
    }

    #[test]
    fn json_descending_pairs() {
        let p = Laurent::from_terms([(-4, 1), (-6, 1), (-10, -1)]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[-4,1],[-6,1],[-10,-1]]");
        assert_eq!(serde_json::from_str::<Laurent>(&json).unwrap(), p);
    }
}
