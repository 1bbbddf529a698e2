//! Prime powers, factorization of composite moduli, and CRT composition of
//! per-prime-power results.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::construct::{build_h, omega0_prime_power, omega1_prime_power};
use crate::error::{Error, Result};
use crate::oracle::is_null_binomial;
use crate::poly::{check_modulus, mod_floor, Polynomial};

const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of u64.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let odd = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, odd, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(BigUint::from(p)))
    }
}

/// A modulus `p^d` with `p` prime and `d >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimePower {
    p: u64,
    d: u64,
}

impl PrimePower {
    pub fn new(p: u64, d: u64) -> Result<Self> {
        require_prime(p)?;
        if d == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(Self { p, d })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u64 {
        self.d
    }

    /// `p^d` as an integer.
    pub fn value(&self) -> BigUint {
        let d = u32::try_from(self.d).expect("prime power exponent beyond u32");
        BigUint::from(self.p).pow(d)
    }

    /// Interprets `q` as a prime power, if it is one.
    pub fn from_integer(q: &BigUint) -> Result<Self> {
        let fm = factor(q)?;
        match fm.factors() {
            [single] => Ok(*single),
            _ => Err(Error::InvalidArgument(format!("{q} is not a prime power"))),
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.d)
    }
}

/// A modulus together with its full factorization, primes ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredModulus {
    factors: Vec<PrimePower>,
    m: BigUint,
}

impl FactoredModulus {
    /// Assembles a factored modulus from prime powers with distinct primes.
    pub fn from_factors(mut factors: Vec<PrimePower>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::Empty);
        }
        factors.sort();
        if let Some(w) = factors.windows(2).find(|w| w[0].p == w[1].p) {
            return Err(Error::DuplicatePrime(w[0].p));
        }
        let m = factors.iter().map(PrimePower::value).product();
        Ok(Self { factors, m })
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    pub fn modulus(&self) -> &BigUint {
        &self.m
    }
}

impl fmt::Display for FactoredModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("*"))
    }
}

/// Complete factorization by trial division; a leftover cofactor is accepted
/// when it passes the primality test.
pub fn factor(m: &BigUint) -> Result<FactoredModulus> {
    check_modulus(m, 2)?;
    let mut rest = m.clone();
    let mut factors = Vec::new();
    let mut push = |rest: &mut BigUint, p: u64| {
        let bp = BigUint::from(p);
        let mut d = 0;
        while (&*rest % &bp).is_zero() {
            *rest /= &bp;
            d += 1;
        }
        if d > 0 {
            factors.push(PrimePower { p, d });
        }
    };
    push(&mut rest, 2);
    let mut p = 3u64;
    while p <= TRIAL_DIVISION_LIMIT && BigUint::from(p) * p <= rest {
        push(&mut rest, p);
        p += 2;
    }
    if !rest.is_one() {
        let cofactor = rest
            .to_u64()
            .filter(|&c| is_prime(c))
            .ok_or_else(|| Error::Unfactorable(m.clone()))?;
        factors.push(PrimePower { p: cofactor, d: 1 });
    }
    FactoredModulus::from_factors(factors)
}

/// Combines per-prime-power polynomials coefficient by coefficient with the
/// Chinese remainder theorem. Shorter parts are padded with zeros; the result
/// has coefficients in `[0, m)`.
pub fn crt_combine_poly(parts: &[(Polynomial, PrimePower)]) -> Result<Polynomial> {
    let fm = FactoredModulus::from_factors(parts.iter().map(|(_, q)| *q).collect())?;
    let len = parts.iter().map(|(f, _)| f.coeffs().len()).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::zero(); len];
    let mut modulus = BigInt::one();
    for (f, q) in parts {
        let q = BigInt::from(q.value());
        let inv = mod_inverse(&mod_floor(&modulus, &q), &q);
        for (k, acc) in coeffs.iter_mut().enumerate() {
            let target = mod_floor(&f.coeff(k), &q);
            let step = mod_floor(&((target - &*acc) * &inv), &q);
            *acc += step * &modulus;
        }
        modulus *= &q;
    }
    debug_assert_eq!(modulus, BigInt::from(fm.modulus().clone()));
    Ok(Polynomial::new(coeffs))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let egcd = a.extended_gcd(m);
    debug_assert!(egcd.gcd.is_one(), "CRT moduli must be coprime");
    mod_floor(&egcd.x, m)
}

/// Null modulo `m` iff null modulo every prime-power factor.
pub fn is_null_composite(f: &Polynomial, fm: &FactoredModulus) -> bool {
    fm.factors.iter().all(|q| is_null_binomial(f, &q.value()))
}

/// Least monic null-polynomial degree: the maximum over the factors.
pub fn omega1_composite(fm: &FactoredModulus) -> Result<u64> {
    fm.factors
        .iter()
        .map(|q| omega1_prime_power(q.p, q.d))
        .try_fold(0, |acc, w| w.map(|w| acc.max(w)))
}

/// Least null-polynomial degree (not necessarily monic): the minimum over the
/// factors, i.e. the smallest prime dividing `m`. A witness is
/// `(m/p)(x^p - x)`; the other factors may contribute zero.
pub fn omega0_composite(fm: &FactoredModulus) -> Result<u64> {
    fm.factors
        .iter()
        .map(|q| omega0_prime_power(q.p, q.d))
        .try_fold(u64::MAX, |acc, w| w.map(|w| acc.min(w)))
}

/// A monic null polynomial modulo `m` of degree `omega1(m)`.
///
/// Each factor contributes `H_{p,d}` padded by a power of `x` up to the
/// common degree; the padded product stays monic and null modulo `p^d`.
pub fn least_monic_null_composite(fm: &FactoredModulus) -> Result<Polynomial> {
    let target = omega1_composite(fm)?;
    let mut parts = Vec::with_capacity(fm.factors.len());
    for q in &fm.factors {
        let h = build_h(q.p, q.d)?;
        let deg = h.degree().expect("H is monic") as u64;
        let padded = h.shift(usize::try_from(target - deg).expect("degree fits usize"));
        parts.push((padded, *q));
    }
    crt_combine_poly(&parts)
}
