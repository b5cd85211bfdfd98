//! Quaternion scalars over `f64`.
//!
//! A quaternion is stored as four reals `w + x i + y j + z k` with
//! `i² = j² = k² = ijk = −1`. Multiplication is noncommutative, so there is
//! deliberately no `Div` impl: use `a * b.inv()?` or `b.inv()? * a`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Self = Self::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Self = Self::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Self = Self::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Self = Self::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Self = Self::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    /// Builds `a + b j` from the Cayley–Dickson pair `(a, b)`.
    pub fn from_complex_pair(a: Complex64, b: Complex64) -> Self {
        Self::new(a.re, a.im, b.re, b.im)
    }

    /// Splits `q = a + b j` into `(a, b)` with `a = w + x𝚤`, `b = y + z𝚤`.
    pub fn to_complex_pair(self) -> (Complex64, Complex64) {
        (Complex64::new(self.w, self.x), Complex64::new(self.y, self.z))
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`.
    pub fn abs(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `q⁻¹ = q̄ / |q|²`.
    pub fn inv(self) -> Result<Self> {
        let n = self.norm_sqr();
        if n == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    /// Real part `(q + q̄) / 2` as a quaternion.
    pub fn re(self) -> Self {
        Self::real(self.w)
    }

    /// Imaginary part `(q − q̄) / 2`.
    pub fn im(self) -> Self {
        Self::new(0.0, self.x, self.y, self.z)
    }

    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn is_finite(self) -> bool {
        self.w.is_finite() && self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Self::real(w)
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self, o);
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl MulAssign for Quaternion {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |acc, q| acc + q)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = f.precision().unwrap_or(4);
        write!(f, "{:.*}", p, self.w)?;
        for (v, unit) in [(self.x, 'i'), (self.y, 'j'), (self.z, 'k')] {
            let sign = if v.is_sign_negative() { '-' } else { '+' };
            write!(f, "{}{:.*}{}", sign, p, v.abs(), unit)?;
        }
        Ok(())
    }
}

/// Hamilton product as a free function.
pub fn qmul(a: Quaternion, b: Quaternion) -> Quaternion {
    a * b
}

pub fn qconj(q: Quaternion) -> Quaternion {
    q.conj()
}

pub fn qinv(q: Quaternion) -> Result<Quaternion> {
    q.inv()
}
