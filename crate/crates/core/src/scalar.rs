//! Exact coefficient fields: the rationals and prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgebraError, Result};

/// Coefficient field of every ring in the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(AlgebraError::InvalidField(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Mod {
                value: n.rem_euclid(*p as i64) as u64,
                p: *p,
            },
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rat(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Mod {
                    value: r.to_u64().unwrap(),
                    p: *p,
                }
            }
        }
    }

    /// `num / den` in this field; `None` when `den` vanishes in the field.
    pub fn fraction(&self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den);
        d.inv().map(|inv| &self.from_i64(num) * &inv)
    }

    /// Binomial coefficient `C(n, k)` reduced into the field.
    pub fn binomial(&self, n: u64, k: u64) -> Scalar {
        if k > n {
            return self.zero();
        }
        match self {
            Field::Rational => self.from_bigint(&binomial_big(n, k)),
            Field::Prime(p) => {
                // Lucas
                let (mut n, mut k) = (n, k);
                let mut acc = self.one();
                while n > 0 || k > 0 {
                    let (ni, ki) = (n % p, k % p);
                    if ki > ni {
                        return self.zero();
                    }
                    acc = &acc * &self.from_bigint(&binomial_big(ni, ki));
                    n /= p;
                    k /= p;
                }
                acc
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Field::Rational => "QQ".to_string(),
            Field::Prime(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn binomial_big(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// A field element. Rationals are kept reduced with positive denominator,
/// residues in `[0, p)`, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: mod_pow(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_negative(),
            Scalar::Mod { .. } => false,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across different fields"
        );
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check(rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<Field> {
        vec![Field::Rational, Field::Prime(2), Field::Prime(7), Field::Prime(101)]
    }

    #[test]
    fn residues_are_canonical() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.from_i64(15), f.from_i64(1));
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Rational;
        assert_eq!(q.fraction(2, 4).unwrap(), q.fraction(-3, -6).unwrap());
        assert!(q.fraction(1, 0).is_none());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(13).is_ok());
    }

    #[test]
    fn binomials_mod_p() {
        let f = Field::Prime(2);
        assert!(f.binomial(2, 1).is_zero());
        assert!(f.binomial(3, 1).is_one());
        let q = Field::Rational;
        assert_eq!(q.binomial(6, 3), q.from_i64(20));
        assert_eq!(Field::Prime(5).binomial(10, 5), Field::Prime(5).from_i64(252));
    }

    proptest! {
        #[test]
        fn field_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50, fi in 0usize..4) {
            let f = fields()[fi];
            let (a, b, c) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
        }
    }
}
