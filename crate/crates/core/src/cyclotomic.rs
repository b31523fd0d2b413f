//! Exact arithmetic in the cyclotomic fields Q(ζn) for n in {2, 3, 4, 6, 12}.
//!
//! An element is stored in the power basis `1, ζ, ..., ζ^(φ(n)-1)` with
//! coefficients already reduced modulo the n-th cyclotomic polynomial.
//! Binary operations on different orders promote both operands to the least
//! common order, which always divides 12.

use crate::{linalg, Error, Result};
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Supported orders.
pub const ORDERS: [u32; 5] = [2, 3, 4, 6, 12];

/// Reduction rule `ζ^φ = Σ rule[k] ζ^k` for each supported order.
fn reduction_rule(order: u32) -> &'static [i64] {
    match order {
        2 => &[-1],           // ζ + 1 = 0
        3 => &[-1, -1],       // ζ² + ζ + 1 = 0
        4 => &[-1, 0],        // ζ² + 1 = 0
        6 => &[-1, 1],        // ζ² - ζ + 1 = 0
        12 => &[-1, 0, 1, 0], // ζ⁴ - ζ² + 1 = 0
        _ => unreachable!("order checked on construction"),
    }
}

fn check_order(order: u32) -> Result<()> {
    if ORDERS.contains(&order) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder(order))
    }
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    (1..=n).filter(|&k| num::integer::gcd(k, n) == 1).count() as u32
}

fn lcm(a: u32, b: u32) -> u32 {
    num::integer::lcm(a, b)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Element of Q(ζn).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycloNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    /// The rational number `value` viewed in Q(ζ_order).
    pub fn rational(order: u32, value: BigRational) -> Result<Self> {
        check_order(order)?;
        let mut coeffs = vec![BigRational::zero(); euler_phi(order) as usize];
        coeffs[0] = value;
        Ok(CycloNum { order, coeffs })
    }

    pub fn integer(order: u32, value: i64) -> Result<Self> {
        Self::rational(order, rat(value))
    }

    pub fn zero(order: u32) -> Result<Self> {
        Self::integer(order, 0)
    }

    pub fn one(order: u32) -> Result<Self> {
        Self::integer(order, 1)
    }

    /// Builds an element from power-basis coefficients of any length,
    /// reducing modulo the cyclotomic polynomial.
    pub fn from_coeffs(order: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        check_order(order)?;
        Ok(Self::reduce(order, coeffs))
    }

    pub fn from_int_coeffs(order: u32, coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(order, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// ζ_order^k for any integer `k`.
    pub fn zeta_pow(order: u32, k: i64) -> Result<Self> {
        check_order(order)?;
        let e = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); e + 1];
        coeffs[e] = BigRational::one();
        Ok(Self::reduce(order, coeffs))
    }

    fn reduce(order: u32, mut coeffs: Vec<BigRational>) -> Self {
        let phi = euler_phi(order) as usize;
        let rule = reduction_rule(order);
        while coeffs.len() > phi {
            let top = coeffs.pop().expect("non-empty");
            if top.is_zero() {
                continue;
            }
            // ζ^(base+φ) = Σ rule[k] ζ^(base+k)
            let base = coeffs.len() - phi;
            for (k, &r) in rule.iter().enumerate() {
                if r != 0 {
                    coeffs[base + k] += &top * rat(r);
                }
            }
        }
        coeffs.resize(phi, BigRational::zero());
        CycloNum { order, coeffs }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the embedding Q(ζn) → Q(ζm), ζn ↦ ζm^(m/n).
    pub fn promote(&self, target: u32) -> Result<Self> {
        check_order(target)?;
        if !target.is_multiple_of(self.order) {
            return Err(Error::IncompatibleOrders {
                from: self.order,
                to: target,
            });
        }
        if target == self.order {
            return Ok(self.clone());
        }
        let step = (target / self.order) as usize;
        let mut coeffs = vec![BigRational::zero(); step * (self.coeffs.len() - 1) + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k * step] = c.clone();
        }
        Ok(Self::reduce(target, coeffs))
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let order = lcm(self.order, other.order);
        (
            self.promote(order).expect("lcm of supported orders divides 12"),
            other.promote(order).expect("lcm of supported orders divides 12"),
        )
    }

    fn mul_same(&self, other: &Self) -> Self {
        let n = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::reduce(self.order, prod)
    }

    /// Multiplicative inverse, computed by solving `self * x = 1` in the
    /// power basis.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.coeffs.len();
        // column j holds the coordinates of self * ζ^j
        let columns: Vec<CycloNum> = (0..n)
            .map(|j| self.mul_same(&Self::zeta_pow(self.order, j as i64).expect("order valid")))
            .collect();
        let matrix: Vec<Vec<BigRational>> = (0..n)
            .map(|row| columns.iter().map(|c| c.coeffs[row].clone()).collect())
            .collect();
        let mut rhs = vec![BigRational::zero(); n];
        rhs[0] = BigRational::one();
        let x = linalg::solve(matrix, rhs).ok_or(Error::DivisionByZero)?;
        Ok(CycloNum {
            order: self.order,
            coeffs: x,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<Self> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one(self.order)?;
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }
}

/// ζn as a field element.
pub fn zeta(order: u32) -> Result<CycloNum> {
    CycloNum::zeta_pow(order, 1)
}

/// The imaginary unit, as ζ4.
pub fn imaginary_unit() -> CycloNum {
    zeta(4).expect("4 is supported")
}

/// `i·√3`, represented in Q(ζ6) as `2ζ6 - 1` (equivalently `2ζ3 + 1`).
pub fn i_sqrt3() -> CycloNum {
    CycloNum::from_int_coeffs(6, &[-1, 2]).expect("6 is supported")
}

/// Equality after promotion to a common order.
pub fn eq(a: &CycloNum, b: &CycloNum) -> bool {
    let (x, y) = a.common(b);
    x.coeffs == y.coeffs
}

impl Add for &CycloNum {
    type Output = CycloNum;

    fn add(self, other: &CycloNum) -> CycloNum {
        let (mut x, y) = self.common(other);
        for (a, b) in x.coeffs.iter_mut().zip(&y.coeffs) {
            *a += b;
        }
        x
    }
}

impl Sub for &CycloNum {
    type Output = CycloNum;

    fn sub(self, other: &CycloNum) -> CycloNum {
        let (mut x, y) = self.common(other);
        for (a, b) in x.coeffs.iter_mut().zip(&y.coeffs) {
            *a -= b;
        }
        x
    }
}

impl Mul for &CycloNum {
    type Output = CycloNum;

    fn mul(self, other: &CycloNum) -> CycloNum {
        let (x, y) = self.common(other);
        x.mul_same(&y)
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;

    fn neg(self) -> CycloNum {
        CycloNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $method(self, other: CycloNum) -> CycloNum {
                (&self).$method(&other)
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, other: &CycloNum) -> CycloNum {
                (&self).$method(other)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders `a + b·ζn + c·ζn^2 + ...`, skipping zero terms.
impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let power = match k {
                0 => String::new(),
                1 => format!("ζ{}", self.order),
                _ => format!("ζ{}^{}", self.order, k),
            };
            if k == 0 {
                out.push_str(&fmt_rational(&magnitude));
            } else if magnitude.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{}·{}", fmt_rational(&magnitude), power));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}
