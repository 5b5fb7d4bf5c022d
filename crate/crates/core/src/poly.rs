//! Dense univariate polynomials over the integers.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficients are stored constant term first; the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> IntPolynomial {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> IntPolynomial {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> IntPolynomial {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![c])
    }

    /// The monic linear factor `x - root`.
    pub fn x_minus(root: &BigInt) -> IntPolynomial {
        IntPolynomial::new(vec![-root.clone(), BigInt::one()])
    }

    pub fn monomial(c: BigInt, degree: usize) -> IntPolynomial {
        let mut coeffs = vec![BigInt::zero(); degree];
        coeffs.push(c);
        IntPolynomial::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn pow(&self, k: u32) -> IntPolynomial {
        let mut out = IntPolynomial::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// Sign of `p(num/den)` for `den > 0`, evaluated with integers only.
    pub fn sign_at(&self, num: &BigInt, den: &BigInt) -> Ordering {
        let Some(d) = self.degree() else {
            return Ordering::Equal;
        };
        let mut acc = self.coeffs[d].clone();
        let mut pow = BigInt::one();
        for i in (0..d).rev() {
            pow *= den;
            acc = acc * num + &self.coeffs[i] * &pow;
        }
        acc.sign().cmp_zero()
    }

    pub fn sign_at_rational(&self, x: &BigRational) -> Ordering {
        self.sign_at(x.numer(), x.denom())
    }

    /// Sign as `x -> +inf` (`positive`) or `x -> -inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some(lc) => {
                let s = lc.sign().cmp_zero();
                if positive || self.coeffs.len() % 2 == 1 {
                    s
                } else {
                    s.reverse()
                }
            }
        }
    }

    /// `p(x - c)`.
    pub fn shift(&self, c: &BigInt) -> IntPolynomial {
        let lin = IntPolynomial::x_minus(c);
        let mut acc = IntPolynomial::zero();
        for a in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &IntPolynomial::constant(a.clone());
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content; the sign of the leading coefficient is kept.
    pub fn primitive(&self) -> IntPolynomial {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPolynomial::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division; fails unless `divisor` divides `self` over the
    /// integers with zero remainder.
    pub fn div_exact(&self, divisor: &IntPolynomial) -> Result<IntPolynomial> {
        let dd = divisor.degree().ok_or(Error::NonExactDivision)?;
        if self.is_zero() {
            return Ok(IntPolynomial::zero());
        }
        let mut rem = self.coeffs.clone();
        let lc = &divisor.coeffs[dd];
        if rem.len() <= dd {
            return Err(Error::NonExactDivision);
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lc);
            if !r.is_zero() {
                return Err(Error::NonExactDivision);
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(IntPolynomial::new(quot))
    }

    /// A positive multiple of the remainder of `self` by `divisor`.
    pub fn positive_pseudo_rem(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let db = divisor.degree().expect("nonzero divisor");
        let lb = &divisor.coeffs[db];
        let lb_abs = lb.abs();
        let lb_sign = if lb.is_negative() { -BigInt::one() } else { BigInt::one() };
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.coeffs[dr].clone();
            let shifted = IntPolynomial::monomial(&lb_sign * &lr, dr - db);
            r = &(&r * &IntPolynomial::constant(lb_abs.clone())) - &(&shifted * divisor);
        }
        r
    }

    /// Greatest common divisor over the rationals, returned primitive with
    /// positive leading coefficient.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.positive_pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        if a.leading().is_some_and(|c| c.is_negative()) {
            a = -a;
        }
        a
    }

    /// Square-free decomposition: `(factor, multiplicity)` pairs with
    /// pairwise coprime square-free factors whose product (with
    /// multiplicities) equals `self` up to a constant.
    pub fn square_free_decomposition(&self) -> Vec<(IntPolynomial, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let p = self.primitive();
        let mut c = p.gcd(&p.derivative());
        let mut w = p.div_exact_rational(&c);
        let mut i = 1;
        while c.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.div_exact_rational(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            i += 1;
            c = c.div_exact_rational(&y);
            w = y;
        }
        if w.degree().unwrap_or(0) > 0 {
            out.push((w, i));
        }
        for (f, _) in out.iter_mut() {
            if f.leading().is_some_and(|c| c.is_negative()) {
                *f = -f.clone();
            }
        }
        out
    }

    /// Quotient over the rationals made primitive; `divisor` must divide
    /// `self` over Q.
    fn div_exact_rational(&self, divisor: &IntPolynomial) -> IntPolynomial {
        let db = divisor.degree().expect("nonzero divisor");
        let lc = divisor.coeffs[db].clone();
        let Some(da) = self.degree() else {
            return IntPolynomial::zero();
        };
        if da < db {
            return IntPolynomial::zero();
        }
        // Scale so integer long division is exact.
        let scale = num_traits::pow(lc.abs(), da - db + 1);
        let scaled = IntPolynomial::new(self.coeffs.iter().map(|c| c * &scale).collect());
        scaled
            .div_exact(divisor)
            .expect("divisor divides over Q")
            .primitive()
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }
}

trait SignExt {
    fn cmp_zero(self) -> Ordering;
}

impl SignExt for Sign {
    fn cmp_zero(self) -> Ordering {
        match self {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
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

impl Neg for IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let coeffs = strs
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64(c)
    }

    #[test]
    fn display_and_json() {
        let q = p(&[-4, 9, -6, 1]);
        assert_eq!(q.to_string(), "x^3 - 6x^2 + 9x - 4");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"["-4","9","-6","1"]"#);
        let back: IntPolynomial = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
    }

    #[test]
    fn exact_division() {
        let q = &p(&[-4, 1]) * &p(&[-1, 1]).pow(2);
        assert_eq!(q, p(&[-4, 9, -6, 1]));
        assert_eq!(q.div_exact(&p(&[-1, 1])).unwrap(), &p(&[-4, 1]) * &p(&[-1, 1]));
        assert_eq!(q.div_exact(&p(&[-2, 1])), Err(Error::NonExactDivision));
        assert_eq!(p(&[1, 2]).div_exact(&p(&[0, 2])), Err(Error::NonExactDivision));
    }

    #[test]
    fn shift_moves_roots() {
        // (x-1)(x-3) shifted by 2 has roots 3 and 5.
        let q = p(&[3, -4, 1]).shift(&BigInt::from(2));
        assert_eq!(q, p(&[15, -8, 1]));
    }

    #[test]
    fn sign_evaluation() {
        let q = p(&[-2, 0, 1]);
        assert_eq!(q.sign_at(&BigInt::from(3), &BigInt::from(2)), Ordering::Greater);
        assert_eq!(q.sign_at(&BigInt::from(4), &BigInt::from(3)), Ordering::Less);
        assert_eq!(p(&[-1, 1]).sign_at(&BigInt::from(2), &BigInt::from(2)), Ordering::Equal);
        assert_eq!(q.sign_at_infinity(false), Ordering::Greater);
        assert_eq!(p(&[0, 1]).sign_at_infinity(false), Ordering::Less);
    }

    #[test]
    fn square_free_parts() {
        // (x-1)^3 (x+2)^2 (x-5)
        let f = &(&p(&[-1, 1]).pow(3) * &p(&[2, 1]).pow(2)) * &p(&[-5, 1]);
        let mut sq = f.square_free_decomposition();
        sq.sort_by_key(|(_, m)| *m);
        assert_eq!(sq, vec![(p(&[-5, 1]), 1), (p(&[2, 1]), 2), (p(&[-1, 1]), 3)]);
        assert_eq!(p(&[-1, 1]).pow(3).square_free_decomposition(), vec![(p(&[-1, 1]), 3)]);
    }

    #[test]
    fn gcd_is_primitive() {
        let a = &p(&[-1, 1]) * &p(&[2, 4]);
        let b = &p(&[-1, 1]) * &p(&[3, 6]);
        assert_eq!(a.gcd(&b), p(&[-1, -1, 2]));
    }
}
