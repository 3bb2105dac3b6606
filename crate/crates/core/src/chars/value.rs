use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_integer::Integer;
use serde::Serialize;

/// An exact value `(re + im*i) / den` with `den > 0` and the fraction reduced.
///
/// Characters of order dividing 4 take values in {±1, ±i}, so sums of their
/// products are Gaussian integers; the denominator only appears through the
/// `1/q` and `1/(q-1)` normalizations of binomial coefficients and `2F1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GaussianRational {
    re: i128,
    im: i128,
    den: i128,
}

impl GaussianRational {
    pub const ZERO: GaussianRational = GaussianRational { re: 0, im: 0, den: 1 };
    pub const ONE: GaussianRational = GaussianRational { re: 1, im: 0, den: 1 };
    pub const I: GaussianRational = GaussianRational { re: 0, im: 1, den: 1 };

    pub fn new(re: i128, im: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let s = den.signum();
        let g = re.gcd(&im).gcd(&den);
        GaussianRational {
            re: s * re / g,
            im: s * im / g,
            den: den.abs() / g,
        }
    }

    pub fn integer(re: i128, im: i128) -> Self {
        GaussianRational { re, im, den: 1 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::integer(n as i128, 0)
    }

    /// i^k.
    pub fn i_pow(k: u64) -> Self {
        match k % 4 {
            0 => Self::integer(1, 0),
            1 => Self::integer(0, 1),
            2 => Self::integer(-1, 0),
            _ => Self::integer(0, -1),
        }
    }

    pub fn re(&self) -> i128 {
        self.re
    }

    pub fn im(&self) -> i128 {
        self.im
    }

    pub fn den(&self) -> i128 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// The rational integer value, if this is one.
    pub fn as_integer(&self) -> Option<i64> {
        (self.im == 0 && self.den == 1).then_some(self.re as i64)
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            im: -self.im,
            ..*self
        }
    }

    pub fn scale(&self, num: i128, den: i128) -> Self {
        Self::new(self.re * num, self.im * num, self.den * den)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re as f64 / self.den as f64,
            self.im as f64 / self.den as f64,
        )
    }
}

impl Add for GaussianRational {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        if self.den == o.den {
            return Self::new(self.re + o.re, self.im + o.im, self.den);
        }
        Self::new(
            self.re * o.den + o.re * self.den,
            self.im * o.den + o.im * self.den,
            self.den * o.den,
        )
    }
}

impl Neg for GaussianRational {
    type Output = Self;
    fn neg(self) -> Self {
        GaussianRational {
            re: -self.re,
            im: -self.im,
            den: self.den,
        }
    }
}

impl Sub for GaussianRational {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for GaussianRational {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.den * o.den,
        )
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.im, self.den) {
            (0, 1) => write!(f, "{}", self.re),
            (0, d) => write!(f, "{}/{}", self.re, d),
            (im, 1) => write!(f, "{}{:+}i", self.re, im),
            (im, d) => write!(f, "({}{:+}i)/{}", self.re, im, d),
        }
    }
}

/// The value of a character sum: exact when every character involved has
/// order dividing 4, complex double precision otherwise. Mixing the two
/// promotes to complex.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum SumValue {
    Exact(GaussianRational),
    Complex(#[serde(serialize_with = "ser_complex")] Complex64),
}

fn ser_complex<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

impl SumValue {
    pub const ZERO: SumValue = SumValue::Exact(GaussianRational::ZERO);
    pub const ONE: SumValue = SumValue::Exact(GaussianRational::ONE);

    pub fn int(n: i64) -> Self {
        SumValue::Exact(GaussianRational::from_int(n))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            SumValue::Exact(g) => g.to_complex(),
            SumValue::Complex(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<GaussianRational> {
        match self {
            SumValue::Exact(g) => Some(*g),
            SumValue::Complex(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, SumValue::Exact(_))
    }

    /// Forces the complex representation.
    pub fn into_complex(self) -> Self {
        SumValue::Complex(self.to_complex())
    }

    pub fn conj(&self) -> Self {
        match self {
            SumValue::Exact(g) => SumValue::Exact(g.conj()),
            SumValue::Complex(z) => SumValue::Complex(z.conj()),
        }
    }

    /// Multiplies by the rational num/den.
    pub fn scale(&self, num: i64, den: i64) -> Self {
        match self {
            SumValue::Exact(g) => SumValue::Exact(g.scale(num as i128, den as i128)),
            SumValue::Complex(z) => SumValue::Complex(z * (num as f64 / den as f64)),
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    /// |self - other| in the complex embedding.
    pub fn distance(&self, other: &SumValue) -> f64 {
        (self.to_complex() - other.to_complex()).norm()
    }
}

impl From<GaussianRational> for SumValue {
    fn from(g: GaussianRational) -> Self {
        SumValue::Exact(g)
    }
}

impl From<Complex64> for SumValue {
    fn from(z: Complex64) -> Self {
        SumValue::Complex(z)
    }
}

impl Add for SumValue {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        match (self, o) {
            (SumValue::Exact(a), SumValue::Exact(b)) => SumValue::Exact(a + b),
            (a, b) => SumValue::Complex(a.to_complex() + b.to_complex()),
        }
    }
}

impl Sub for SumValue {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for SumValue {
    type Output = Self;
    fn neg(self) -> Self {
        match self {
            SumValue::Exact(a) => SumValue::Exact(-a),
            SumValue::Complex(z) => SumValue::Complex(-z),
        }
    }
}

impl Mul for SumValue {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        match (self, o) {
            (SumValue::Exact(a), SumValue::Exact(b)) => SumValue::Exact(a * b),
            (a, b) => SumValue::Complex(a.to_complex() * b.to_complex()),
        }
    }
}

impl std::iter::Sum for SumValue {
    fn sum<I: Iterator<Item = SumValue>>(iter: I) -> Self {
        iter.fold(SumValue::ZERO, |acc, v| acc + v)
    }
}

impl fmt::Display for SumValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumValue::Exact(g) => write!(f, "{g}"),
            SumValue::Complex(z) => write!(f, "{:.6}{:+.6}i", z.re, z.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_rational_normalizes() {
        let a = GaussianRational::new(2, -4, -6);
        assert_eq!((a.re(), a.im(), a.den()), (-1, 2, 3));
        let s = GaussianRational::new(1, 0, 3) + GaussianRational::new(1, 0, 6);
        assert_eq!(s, GaussianRational::new(1, 0, 2));
        assert_eq!(GaussianRational::I * GaussianRational::I, GaussianRational::from_int(-1));
        assert_eq!(GaussianRational::i_pow(7), GaussianRational::integer(0, -1));
    }

    #[test]
    fn mixing_promotes_to_complex() {
        let e = SumValue::int(3);
        let c = SumValue::Complex(Complex64::new(0.5, 0.0));
        assert!((e + e).is_exact());
        assert!(!(e + c).is_exact());
        assert!(((e * c).to_complex() - Complex64::new(1.5, 0.0)).norm() < 1e-15);
    }
}
