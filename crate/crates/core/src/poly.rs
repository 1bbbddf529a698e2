//! Exact integer polynomials and coefficient-wise modular reduction.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A univariate polynomial with arbitrary-precision integer coefficients.
///
/// `coeffs[k]` is the coefficient of `x^k`. The vector never ends in a zero,
/// so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

/// Degree of a polynomial with respect to a modulus.
///
/// `Zero` sorts below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DegreeMod {
    Zero,
    Finite(usize),
}

impl DegreeMod {
    pub fn value(self) -> Option<usize> {
        match self {
            DegreeMod::Zero => None,
            DegreeMod::Finite(n) => Some(n),
        }
    }
}

impl fmt::Display for DegreeMod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeMod::Zero => f.write_str("zero polynomial"),
            DegreeMod::Finite(n) => write!(f, "{n}"),
        }
    }
}

/// Reduces `a` into `[0, m)`.
pub(crate) fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

pub(crate) fn check_modulus(m: &BigUint, min: u32) -> Result<()> {
    if *m < BigUint::from(min) {
        return Err(Error::ModulusTooSmall {
            min,
            got: m.clone(),
        });
    }
    Ok(())
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, dropping trailing zeros.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - a`.
    pub fn linear_root(a: BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree over the integers; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Monic over the integers.
    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().is_some_and(One::is_one)
    }

    /// Exact value at `x` by Horner's scheme.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> BigInt {
        self.eval(&BigInt::from(x))
    }

    /// Value at `x` reduced into `[0, m)`. `m` must be positive.
    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        let x = mod_floor(x, m);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = mod_floor(&(acc * &x + c), m);
        }
        acc
    }

    /// Canonical representative of the coefficient-wise congruence class:
    /// every coefficient in `[0, m)`.
    pub fn reduce_coeffs(&self, m: &BigUint) -> Result<Polynomial> {
        check_modulus(m, 1)?;
        let m = BigInt::from(m.clone());
        Ok(self.reduce_coeffs_signed(&m))
    }

    pub(crate) fn reduce_coeffs_signed(&self, m: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| mod_floor(c, m)).collect())
    }

    /// Largest `k` with `coeffs[k]` nonzero modulo `m`.
    pub fn deg_mod(&self, m: &BigUint) -> DegreeMod {
        let m = BigInt::from(m.clone());
        if m.is_zero() {
            return self.degree().map_or(DegreeMod::Zero, DegreeMod::Finite);
        }
        self.coeffs
            .iter()
            .rposition(|c| !c.is_multiple_of(&m))
            .map_or(DegreeMod::Zero, DegreeMod::Finite)
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Product computed with every coefficient reduced into `[0, m)`.
    pub(crate) fn mul_mod(&self, other: &Polynomial, m: &BigInt) -> Polynomial {
        (self * other).reduce_coeffs_signed(m)
    }
}

/// Coefficient-wise congruence: every coefficient agrees modulo `m`.
pub fn poly_congruent(f: &Polynomial, g: &Polynomial, m: &BigUint) -> bool {
    (f - g).deg_mod(m) == DegreeMod::Zero
}

/// Long division by a polynomial that is monic modulo `m`.
///
/// Returns `(q, r)` with `f = g*q + r` coefficient-wise modulo `m` and
/// `deg_mod(r, m) < deg_mod(g, m)`; both are reduced into `[0, m)`.
pub fn divmod_monic(
    f: &Polynomial,
    g: &Polynomial,
    m: &BigUint,
) -> Result<(Polynomial, Polynomial)> {
    check_modulus(m, 1)?;
    let mi = BigInt::from(m.clone());
    let g = g.reduce_coeffs_signed(&mi);
    let dg = g.degree().ok_or_else(|| Error::ZeroDivisor(m.clone()))?;
    if !g.is_monic() {
        return Err(Error::NotMonic(m.clone()));
    }
    let mut r: Vec<BigInt> = f.reduce_coeffs_signed(&mi).into_coeffs();
    if r.len() <= dg {
        return Ok((Polynomial::zero(), Polynomial::new(r)));
    }
    let mut q = vec![BigInt::zero(); r.len() - dg];
    for i in (dg..r.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for (j, gj) in g.coeffs[..dg].iter().enumerate() {
            let slot = &mut r[i - dg + j];
            *slot = mod_floor(&(&*slot - &c * gj), &mi);
        }
        q[i - dg] = c;
    }
    Ok((Polynomial::new(q), Polynomial::new(r)))
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Polynomial::new(coeffs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Human form, highest degree first, no spaces: `x^4-2x^3+3x^2-2x`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == Sign::Minus;
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let abs = c.abs();
            if k == 0 || !abs.is_one() {
                write!(f, "{abs}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn m(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn add_examples() {
        assert!((&p(&[0, 1]) + &p(&[0, -1])).is_zero());
        assert_eq!(&p(&[0, -1, 1]) + &p(&[-2, -1, 1]), p(&[-2, -2, 2]));
        let f = p(&[3, 0, -7, 1]);
        assert_eq!(&f + &Polynomial::zero(), f);
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p(&[0, 1]) * &p(&[-1, 1]), p(&[0, -1, 1]));
        assert_eq!(&p(&[0, -1, 1]) * &p(&[0, -1, 1]), p(&[0, 0, 1, -2, 1]));
        assert_eq!(&p(&[0, -1, 1]) * &p(&[-2, -1, 1]), p(&[0, 2, -1, -2, 1]));
    }

    #[test]
    fn eval_examples() {
        let f = p(&[0, -2, 3, -2, 1]);
        assert_eq!(f.eval_i64(3), BigInt::from(48));
        assert!(f.eval_i64(3).is_multiple_of(&BigInt::from(8)));
        assert_eq!(Polynomial::x().eval_i64(1_000_000_000), BigInt::from(1_000_000_000));
        assert!(Polynomial::zero().eval_i64(17).is_zero());
    }

    #[test]
    fn reduce_coeffs_examples() {
        let f = p(&[0, -2, 3, -2, 1]);
        assert_eq!(f.reduce_coeffs(&m(8)).unwrap(), p(&[0, 6, 3, 6, 1]));
        assert!(f.reduce_coeffs(&m(1)).unwrap().is_zero());
        assert!(p(&[5, 5]).reduce_coeffs(&m(5)).unwrap().is_zero());
        assert!(matches!(
            f.reduce_coeffs(&m(0)),
            Err(Error::ModulusTooSmall { .. })
        ));
    }

    #[test]
    fn congruence_examples() {
        assert!(poly_congruent(&p(&[0, 0, 1]), &p(&[0, 8, 1]), &m(8)));
        assert!(!poly_congruent(&p(&[0, 0, 0, 1]), &p(&[0, 1]), &m(3)));
        let f = p(&[4, -9, 2]);
        assert!(poly_congruent(&f, &f, &m(11)));
    }

    #[test]
    fn deg_mod_examples() {
        assert_eq!(p(&[0, 0, 1, 0, 0, 8]).deg_mod(&m(8)), DegreeMod::Finite(2));
        assert_eq!(p(&[0, -2, 3, -2, 1]).deg_mod(&m(8)), DegreeMod::Finite(4));
        assert_eq!(p(&[4, 4]).deg_mod(&m(2)), DegreeMod::Zero);
        assert!(DegreeMod::Zero < DegreeMod::Finite(0));
    }

    #[test]
    fn divmod_examples() {
        let g = p(&[0, -1, 1]);
        let (q, r) = divmod_monic(&p(&[0, 0, 1]), &g, &m(4)).unwrap();
        assert_eq!((q, r), (p(&[1]), p(&[0, 1])));

        let (q, r) = divmod_monic(&p(&[0, 0, 0, 0, 1]), &g, &m(4)).unwrap();
        assert_eq!(q, p(&[1, 1, 1]));
        assert_eq!(r, p(&[0, 1]));
        assert!(poly_congruent(&(&(&g * &q) + &r), &p(&[0, 0, 0, 0, 1]), &m(4)));

        let f = p(&[3, 2]);
        let (q, r) = divmod_monic(&f, &p(&[1, 1, 1]), &m(7)).unwrap();
        assert!(q.is_zero());
        assert_eq!(r, f);
    }

    #[test]
    fn divmod_errors() {
        let f = p(&[1, 2, 3]);
        assert!(matches!(
            divmod_monic(&f, &p(&[0, 2]), &m(4)),
            Err(Error::NotMonic(_))
        ));
        assert!(matches!(
            divmod_monic(&f, &Polynomial::zero(), &m(4)),
            Err(Error::ZeroDivisor(_))
        ));
        assert!(matches!(
            divmod_monic(&f, &p(&[4, 8]), &m(4)),
            Err(Error::ZeroDivisor(_))
        ));
        // leading coefficient vanishing mod m exposes a monic lower term
        assert!(divmod_monic(&f, &p(&[0, 1, 4]), &m(4)).is_ok());
    }

    #[test]
    fn display_human_form() {
        assert_eq!(p(&[0, -2, 3, -2, 1]).to_string(), "x^4-2x^3+3x^2-2x");
        assert_eq!(p(&[-1, 0, 1]).to_string(), "x^2-1");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(p(&[7]).to_string(), "7");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f = p(&[1, -3, 2]);
        let mut acc = Polynomial::one();
        for e in 0..6 {
            assert_eq!(f.pow(e), acc);
            acc = &acc * &f;
        }
    }
}
