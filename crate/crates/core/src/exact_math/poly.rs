use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::Rational;

/// Dense univariate polynomial over the integers, coefficients in ascending
/// degree order. The coefficient vector never ends in a zero, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(into = "Vec<String>", try_from = "Vec<String>")]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Builds a polynomial from coefficients listed highest degree first.
    pub fn from_descending(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().rev().cloned().collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `x`
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - r`
    pub fn linear_root(r: &BigInt) -> Self {
        Self::new(vec![-r, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `f(num/den)` for `den > 0`, computed on the homogenised
    /// integer form `den^deg * f(num/den)`.
    pub fn sign_at(&self, x: &Rational) -> i32 {
        let Some(deg) = self.degree() else {
            return 0;
        };
        let num = x.numer();
        let den = x.denom();
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        let mut terms = Vec::with_capacity(deg + 1);
        for _ in 0..=deg {
            terms.push(den_pow.clone());
            den_pow *= den;
        }
        // sum_i c_i num^i den^(deg-i), Horner in num with den powers
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * num + c * &terms[deg - i];
        }
        sign(&acc)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// gcd of the coefficients, non-negative; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// The polynomial divided by its content, with positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading_coeff().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// `x^deg * f(1/x)`, i.e. the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    /// `f(c * x)`
    pub fn scale_variable(&self, c: &BigInt) -> Self {
        let mut pow = BigInt::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &pow);
            pow *= c;
        }
        Self::new(out)
    }

    /// `f(x + c)` by repeated synthetic division.
    pub fn shift(&self, c: &BigInt) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        Self::new(a)
    }

    /// `f(g(x))`
    pub fn compose(&self, g: &IntPolynomial) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * g) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Long division over the integers. Returns `(quotient, remainder)` when
    /// every intermediate leading coefficient is divisible by the divisor's;
    /// `None` otherwise.
    pub fn div_rem_integral(&self, divisor: &IntPolynomial) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading_coeff()?.clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let (qk, r) = rem[k].div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k - dd + j] -= &qk * dc;
            }
            quot[k - dd] = qk;
        }
        rem.truncate(dd);
        Some((Self::new(quot), Self::new(rem)))
    }

    /// Exact quotient if `divisor` divides `self` in `Z[x]`.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Option<Self> {
        match self.div_rem_integral(divisor) {
            Some((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Pseudo-remainder `|lc(b)|^(deg a - deg b + 1) * a mod b`. The positive
    /// multiplier keeps the sign information needed by Sturm chains.
    pub fn pseudo_rem(&self, b: &IntPolynomial) -> Self {
        let (Some(da), Some(db)) = (self.degree(), b.degree()) else {
            return self.clone();
        };
        if da < db {
            return self.clone();
        }
        let lead = b.leading_coeff().unwrap().abs();
        let mut r = self.scale(&num_traits::pow(lead, da - db + 1));
        let lb = b.leading_coeff().unwrap().clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading_coeff().unwrap().clone();
            let (qk, rest) = lr.div_rem(&lb);
            debug_assert!(rest.is_zero());
            let sub = Self::monomial(qk, dr - db);
            r = &r - &(&sub * b);
        }
        r
    }

    /// Primitive gcd with positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a
    }

    /// `f / gcd(f, f')`, primitive.
    pub fn square_free_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        let p = self.primitive_part();
        p.div_exact(&g)
            .expect("gcd with derivative divides a primitive polynomial")
            .primitive_part()
    }

    /// Yun's square-free factorisation of the primitive part: `f = prod_i f_i^i`
    /// with the `f_i` square-free and pairwise coprime. Returns `(i, f_i)` for
    /// the non-constant factors.
    pub fn square_free_decomposition(&self) -> Vec<(u32, Self)> {
        let f = self.primitive_part();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        // b and c are divided by the same primitive factors at every step, so
        // their relative scaling stays exact and d = c - b' is meaningful.
        let mut b = f.div_exact(&a0).expect("gcd divides f");
        let c = fp.div_exact(&a0).expect("gcd divides f'");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a.clone()));
            }
            b = b.div_exact(&a).expect("gcd divides b");
            let c = d.div_exact(&a).expect("gcd divides d");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    /// Renders with the given variable name, highest degree first, e.g.
    /// `x^4 - 3x^2 + 9`.
    pub fn render(&self, var: &str) -> String {
        self.render_with(var, true)
    }

    /// Renders lowest degree first, the customary form for L-polynomials.
    pub fn render_ascending(&self, var: &str) -> String {
        self.render_with(var, false)
    }

    fn render_with(&self, var: &str, descending: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        let order: Vec<usize> = if descending {
            (0..self.coeffs.len()).rev().collect()
        } else {
            (0..self.coeffs.len()).collect()
        };
        for i in order {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            out.push_str(&mono);
        }
        out
    }
}

pub(crate) fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("x"))
    }
}

impl From<IntPolynomial> for Vec<String> {
    fn from(p: IntPolynomial) -> Self {
        p.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl TryFrom<Vec<String>> for IntPolynomial {
    type Error = num_bigint::ParseBigIntError;

    fn try_from(v: Vec<String>) -> Result<Self, Self::Error> {
        let coeffs = v
            .iter()
            .map(|s| s.parse::<BigInt>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for IntPolynomial {
            type Output = IntPolynomial;
            fn $m(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
