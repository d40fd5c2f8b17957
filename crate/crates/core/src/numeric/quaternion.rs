use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gaussian::{parse_coefficient, term_starts, write_coefficient};
use super::{GaussianRational, Matrix, NumericError, ParseScalarError};

/// Rational Hamilton quaternion `a + bi + cj + dk`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RationalQuaternion {
    coeffs: [BigRational; 4],
}

impl RationalQuaternion {
    pub fn new(a: BigRational, b: BigRational, c: BigRational, d: BigRational) -> Self {
        Self { coeffs: [a, b, c, d] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64, d: i64) -> Self {
        let r = super::gaussian::rat;
        Self::new(r(a), r(b), r(c), r(d))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Self::new(a, BigRational::zero(), BigRational::zero(), BigRational::zero())
    }

    /// Coefficients in the order `1, i, j, k`.
    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn real_part(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn conj(&self) -> Self {
        let [a, b, c, d] = &self.coeffs;
        Self::new(a.clone(), -b, -c, -d)
    }

    pub fn norm_sq(&self) -> BigRational {
        self.coeffs.iter().map(|x| x * x).sum()
    }

    pub fn inv(&self) -> Result<Self, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let n = self.norm_sq();
        let c = self.conj();
        Ok(Self { coeffs: c.coeffs.map(|x| x / &n) })
    }

    /// The complex 2x2 matrix `[[a+bi, c+di], [-c+di, a-bi]]`; a ring
    /// homomorphism with `det m(q) = |q|^2`.
    pub fn to_complex_2x2(&self) -> Matrix {
        let [a, b, c, d] = &self.coeffs;
        let g = |x: &BigRational, y: &BigRational| GaussianRational::new(x.clone(), y.clone());
        Matrix::from_rows(vec![
            vec![g(a, b), g(c, d)],
            vec![g(&-c, d), g(a, &-b)],
        ])
        .expect("2x2 rows are rectangular")
    }
}

impl Zero for RationalQuaternion {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for RationalQuaternion {
    fn one() -> Self {
        Self::from_ints(1, 0, 0, 0)
    }
}

impl<'a> Add<&'a RationalQuaternion> for &'a RationalQuaternion {
    type Output = RationalQuaternion;
    fn add(self, rhs: &RationalQuaternion) -> RationalQuaternion {
        let [a, b, c, d] = &self.coeffs;
        let [e, f, g, h] = &rhs.coeffs;
        RationalQuaternion::new(a + e, b + f, c + g, d + h)
    }
}

impl<'a> Sub<&'a RationalQuaternion> for &'a RationalQuaternion {
    type Output = RationalQuaternion;
    fn sub(self, rhs: &RationalQuaternion) -> RationalQuaternion {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalQuaternion> for &'a RationalQuaternion {
    type Output = RationalQuaternion;
    fn mul(self, rhs: &RationalQuaternion) -> RationalQuaternion {
        let [a1, b1, c1, d1] = &self.coeffs;
        let [a2, b2, c2, d2] = &rhs.coeffs;
        RationalQuaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl<'a> Neg for &'a RationalQuaternion {
    type Output = RationalQuaternion;
    fn neg(self) -> RationalQuaternion {
        RationalQuaternion { coeffs: self.coeffs.clone().map(|x| -x) }
    }
}

impl Add for RationalQuaternion {
    type Output = RationalQuaternion;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl Sub for RationalQuaternion {
    type Output = RationalQuaternion;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl Mul for RationalQuaternion {
    type Output = RationalQuaternion;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}

impl Neg for RationalQuaternion {
    type Output = RationalQuaternion;
    fn neg(self) -> Self {
        -&self
    }
}

const UNITS: [&str; 4] = ["", "i", "j", "k"];

/// Nonzero terms in the order `1, i, j, k`, e.g. `1/2-3j+k`; zero prints as `0`.
impl fmt::Display for RationalQuaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, unit) in self.coeffs.iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                write!(f, "+")?;
            }
            if unit.is_empty() {
                write!(f, "{c}")?;
            } else {
                write_coefficient(f, c)?;
                write!(f, "{unit}")?;
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl FromStr for RationalQuaternion {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseScalarError::Empty);
        }
        let mut starts = term_starts(&compact);
        starts.push(compact.len());
        let mut coeffs: [Option<BigRational>; 4] = Default::default();
        for w in starts.windows(2) {
            let term = &compact[w[0]..w[1]];
            let (slot, coef) = match term.chars().last() {
                Some('i') => (1, parse_coefficient(&term[..term.len() - 1])?),
                Some('j') => (2, parse_coefficient(&term[..term.len() - 1])?),
                Some('k') => (3, parse_coefficient(&term[..term.len() - 1])?),
                _ => (0, super::gaussian::parse_rational(term)?),
            };
            if coeffs[slot].replace(coef).is_some() {
                return Err(ParseScalarError::Malformed(s.to_string()));
            }
        }
        Ok(Self { coeffs: coeffs.map(Option::unwrap_or_default) })
    }
}

impl Serialize for RationalQuaternion {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RationalQuaternion {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> RationalQuaternion {
        s.parse().unwrap()
    }

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (q("i"), q("j"), q("k"));
        let minus_one = q("-1");
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &i, -&k);
        assert_eq!(&(&i * &j) * &k, minus_one);
    }

    #[test]
    fn text_round_trip() {
        for s in ["0", "1/2-3j+k", "-i", "2+i+j+k", "-7/3k"] {
            assert_eq!(q(s).to_string(), s);
        }
        assert_eq!(q("k + 1/2 - 3j"), q("1/2-3j+k"));
        assert!("1+i+i".parse::<RationalQuaternion>().is_err());
        assert!("1+x".parse::<RationalQuaternion>().is_err());
    }

    #[test]
    fn matrix_model_examples() {
        let m = q("1+i").to_complex_2x2();
        assert_eq!(m.get(0, 0), &"1+i".parse().unwrap());
        assert_eq!(m.get(1, 1), &"1-i".parse().unwrap());
        assert!(m.get(0, 1).is_zero() && m.get(1, 0).is_zero());
        let mj = q("j").to_complex_2x2();
        assert_eq!(mj.get(0, 1), &GaussianRational::int(1));
        assert_eq!(mj.get(1, 0), &GaussianRational::int(-1));
    }

    #[test]
    fn inverse() {
        let x = q("1-2i+3j-k");
        assert_eq!(&x * &x.inv().unwrap(), RationalQuaternion::one());
    }
}
