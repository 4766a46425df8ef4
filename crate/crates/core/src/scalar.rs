//! Exact arithmetic in the number field ℚ(i, √2).
//!
//! Every value is stored as four rational coordinates over the basis
//! `{1, i, √2, i√2}`. Products are reduced with `i² = −1` and `(√2)² = 2`,
//! so two values are equal exactly when their coordinates agree.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Basis labels in coordinate order.
const BASIS: [&str; 4] = ["", "i", "r2", "i*r2"];

/// An exact element `a + b·i + c·√2 + d·i√2` of ℚ(i, √2).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldScalar {
    coords: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl FieldScalar {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        FieldScalar {
            coords: [a, b, c, d],
        }
    }

    pub fn zero() -> Self {
        FieldScalar::new(
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
            BigRational::zero(),
        )
    }

    pub fn one() -> Self {
        Self::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_rational(rat(n))
    }

    /// `num/den` as a rational scalar. Panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut s = Self::zero();
        s.coords[0] = q;
        s
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let mut s = Self::zero();
        s.coords[1] = rat(1);
        s
    }

    /// √2.
    pub fn sqrt2() -> Self {
        let mut s = Self::zero();
        s.coords[2] = rat(1);
        s
    }

    /// Coordinates `(a, b, c, d)` over `{1, i, √2, i√2}`.
    pub fn coords(&self) -> &[BigRational; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value when the scalar lies in ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Complex conjugation `i ↦ −i`.
    pub fn conj_i(&self) -> Self {
        let [a, b, c, d] = &self.coords;
        FieldScalar::new(a.clone(), -b, c.clone(), -d)
    }

    /// The Galois conjugation `√2 ↦ −√2`.
    pub fn conj_sqrt2(&self) -> Self {
        let [a, b, c, d] = &self.coords;
        FieldScalar::new(a.clone(), b.clone(), -c, -d)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let [a, b, c, d] = &self.coords;
        FieldScalar::new(a * q, b * q, c * q, d * q)
    }

    /// Multiplicative inverse by the two-step norm trick: multiplying by the
    /// `i`-conjugate lands in ℚ(√2), then multiplying by the `√2`-conjugate
    /// lands in ℚ.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c1 = self.conj_i();
        let n1 = self * &c1; // in ℚ(√2)
        let c2 = n1.conj_sqrt2();
        let n2 = &n1 * &c2; // in ℚ
        let q = n2
            .as_rational()
            .cloned()
            .expect("norm of a ℚ(i,√2) element is rational");
        let num = &c1 * &c2;
        Ok(num.scale(&(BigRational::one() / q)))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }
}

impl Default for FieldScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        FieldScalar::from_i64(n)
    }
}

impl From<BigRational> for FieldScalar {
    fn from(q: BigRational) -> Self {
        FieldScalar::from_rational(q)
    }
}

impl<'a> Add<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn add(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for FieldScalar {
    type Output = FieldScalar;
    fn add(mut self, rhs: FieldScalar) -> FieldScalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        for (x, y) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        for (x, y) in self.coords.iter_mut().zip(rhs.coords.iter()) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

impl<'a> Sub<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn sub(self, rhs: &FieldScalar) -> FieldScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for FieldScalar {
    type Output = FieldScalar;
    fn sub(mut self, rhs: FieldScalar) -> FieldScalar {
        self -= &rhs;
        self
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        let [a, b, c, d] = &self.coords;
        FieldScalar::new(-a, -b, -c, -d)
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

impl<'a> Mul<&'a FieldScalar> for &'a FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: &FieldScalar) -> FieldScalar {
        // basis products e_p * e_q = sign * factor * e_{p ^ q}
        // with e0 = 1, e1 = i, e2 = √2, e3 = i√2
        const TABLE: [[(i64, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (1, 3), (2, 0), (2, 1)],
            [(1, 3), (-1, 2), (2, 1), (-2, 0)],
        ];
        let mut out = FieldScalar::zero();
        for (p, x) in self.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in rhs.coords.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let (k, idx) = TABLE[p][q];
                let prod = x * y;
                match k {
                    1 => out.coords[idx] += prod,
                    -1 => out.coords[idx] -= prod,
                    _ => out.coords[idx] += prod * rat(k),
                }
            }
        }
        out
    }
}

impl Mul for FieldScalar {
    type Output = FieldScalar;
    fn mul(self, rhs: FieldScalar) -> FieldScalar {
        &self * &rhs
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for FieldScalar {
    /// Renders as `a + b*i + c*r2 + d*i*r2`, omitting zero coordinates.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (q, label) in self.coords.iter().zip(BASIS) {
            if q.is_zero() {
                continue;
            }
            let mag = fmt_rational(&q.abs());
            let body = match (label.is_empty(), q.abs().is_one()) {
                (true, _) => mag,
                (false, true) => label.to_string(),
                (false, false) => format!("{mag}*{label}"),
            };
            if first {
                if q.is_negative() {
                    write!(f, "-{body}")?;
                } else {
                    write!(f, "{body}")?;
                }
                first = false;
            } else if q.is_negative() {
                write!(f, " - {body}")?;
            } else {
                write!(f, " + {body}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldScalar({self})")
    }
}

impl FromStr for FieldScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::parse::parse_scalar(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> FieldScalar {
        text.parse().unwrap()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(&FieldScalar::one() + &FieldScalar::i(), s("1 + i"));
        let x = s("3/4 - 2*i*r2");
        assert_eq!(&x + &FieldScalar::zero(), x);
        let half_r2 = s("1/2*r2");
        assert_eq!(&half_r2 + &half_r2, FieldScalar::sqrt2());
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(
            &FieldScalar::i() * &FieldScalar::i(),
            FieldScalar::from_i64(-1)
        );
        let inv_r2 = s("1/2*r2"); // 1/√2
        assert_eq!(&inv_r2 * &inv_r2, FieldScalar::frac(1, 2));
        assert_eq!(&s("1 + i") * &s("1 - i"), FieldScalar::from_i64(2));
        // (√2)(i√2) = 2i
        assert_eq!(&FieldScalar::sqrt2() * &s("i*r2"), s("2*i"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(
            FieldScalar::from_i64(2).inv().unwrap(),
            FieldScalar::frac(1, 2)
        );
        assert_eq!(FieldScalar::i().inv().unwrap(), -FieldScalar::i());
        assert_eq!(s("1 + i").inv().unwrap(), s("1/2 - 1/2*i"));
        let x = s("1 + 2*i - 3*r2 + 1/5*i*r2");
        assert!((&x * &x.inv().unwrap()).is_one());
    }

    #[test]
    fn inverse_of_zero_is_rejected() {
        assert!(matches!(
            FieldScalar::zero().inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn rendering_round_trips() {
        for text in [
            "0",
            "1",
            "-1/2",
            "i",
            "-i",
            "3 + i - 2/3*r2 + i*r2",
            "-r2 - 5*i*r2",
        ] {
            let v = s(text);
            assert_eq!(v.to_string(), text);
            assert_eq!(s(&v.to_string()), v);
        }
    }
}
