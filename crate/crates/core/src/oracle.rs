//! Brute-force and Newton-basis ground truth for null-ness, null order and
//! functional equivalence.
//!
//! Every polynomial has a unique expansion `f = sum_k a_k C(x, k)` with
//! integer `a_k = (Delta^k f)(0)`. `f` is null modulo `m` exactly when every
//! `a_k` is divisible by `m`, which gives an `O(deg^2)` test independent of
//! the size of `m`. The definitional test evaluates `f` on `0..m`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{mod_floor, Polynomial};

/// Scans at or above this many points are split across threads.
const PARALLEL_SCAN: u64 = 1 << 14;

/// Coordinates of a polynomial in the binomial basis `C(x, k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonCoefficients(pub Vec<BigInt>);

impl NewtonCoefficients {
    pub fn as_slice(&self) -> &[BigInt] {
        &self.0
    }

    /// `sum_k a_k C(x, k)`.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut binom = BigInt::from(1);
        let mut total = BigInt::zero();
        for (k, a) in self.0.iter().enumerate() {
            total += a * &binom;
            binom = binom * (x - k) / (k + 1);
        }
        total
    }
}

fn coeffs_u64(f: &Polynomial, m: u64) -> Vec<u64> {
    let mi = BigInt::from(m);
    f.coeffs()
        .iter()
        .map(|c| mod_floor(c, &mi).to_u64().expect("reduced below m"))
        .collect()
}

fn horner_u64(coeffs: &[u64], x: u64, m: u64) -> u64 {
    coeffs
        .iter()
        .rev()
        .fold(0u64, |acc, &c| ((acc as u128 * x as u128 + c as u128) % m as u128) as u64)
}

/// Smallest `x` in `0..m` with `f(x) != 0 (mod m)`, or `None` if `f` is null.
///
/// For `m = 0` the condition is `f(x) = 0` for all integers, i.e. `f = 0`.
pub fn null_witness_eval(f: &Polynomial, m: &BigUint) -> Option<BigUint> {
    if m.is_zero() {
        return (!f.is_zero()).then(BigUint::zero);
    }
    if let Some(m64) = m.to_u64() {
        let coeffs = coeffs_u64(f, m64);
        let fails = |x: u64| horner_u64(&coeffs, x, m64) != 0;
        let found = if m64 >= PARALLEL_SCAN {
            (0..m64).into_par_iter().find_first(|&x| fails(x))
        } else {
            (0..m64).find(|&x| fails(x))
        };
        return found.map(BigUint::from);
    }
    let mi = BigInt::from(m.clone());
    let mut x = BigInt::zero();
    while x < mi {
        if !f.eval_mod(&x, &mi).is_zero() {
            return x.to_biguint();
        }
        x += 1;
    }
    None
}

/// `f(x) = 0 (mod m)` for every `x` in `0..m`.
pub fn is_null_eval(f: &Polynomial, m: &BigUint) -> bool {
    null_witness_eval(f, m).is_none()
}

/// Exact forward differences of `f` at zero.
pub fn binomial_transform(f: &Polynomial) -> NewtonCoefficients {
    let Some(n) = f.degree() else {
        return NewtonCoefficients(Vec::new());
    };
    let mut table: Vec<BigInt> = (0..=n).map(|x| f.eval(&BigInt::from(x))).collect();
    for k in 1..=n {
        for i in (k..=n).rev() {
            let prev = table[i - 1].clone();
            table[i] -= prev;
        }
    }
    NewtonCoefficients(table)
}

/// Newton coefficients reduced into `[0, m)`; `m` must be positive.
pub fn newton_coefficients_mod(f: &Polynomial, m: &BigUint) -> Vec<BigUint> {
    let Some(n) = f.degree() else {
        return Vec::new();
    };
    if let Some(m64) = m.to_u64() {
        let coeffs = coeffs_u64(f, m64);
        let mut table: Vec<u64> = (0..=n as u64).map(|x| horner_u64(&coeffs, x % m64, m64)).collect();
        for k in 1..=n {
            for i in (k..=n).rev() {
                table[i] = (table[i] + m64 - table[i - 1]) % m64;
            }
        }
        return table.into_iter().map(BigUint::from).collect();
    }
    let mi = BigInt::from(m.clone());
    let mut table: Vec<BigInt> = (0..=n).map(|x| f.eval_mod(&BigInt::from(x), &mi)).collect();
    for k in 1..=n {
        for i in (k..=n).rev() {
            table[i] = mod_floor(&(&table[i] - &table[i - 1]), &mi);
        }
    }
    table
        .into_iter()
        .map(|v| v.to_biguint().expect("reduced"))
        .collect()
}

/// Smallest `k` with `a_k != 0 (mod m)`. Since lower coefficients vanish,
/// `f(k) = a_k (mod m)`, so `k` is also the smallest failing point.
pub fn null_witness_binomial(f: &Polynomial, m: &BigUint) -> Option<usize> {
    if m.is_zero() {
        return (!f.is_zero()).then_some(0);
    }
    newton_coefficients_mod(f, m).iter().position(|a| !a.is_zero())
}

/// Every Newton coefficient of `f` is divisible by `m`.
pub fn is_null_binomial(f: &Polynomial, m: &BigUint) -> bool {
    null_witness_binomial(f, m).is_none()
}

/// Largest `d <= d_max` with `f` null modulo `p^d`, by linear ascent.
/// Returns 0 when `f` is not null modulo `p`.
pub fn null_order(f: &Polynomial, p: u64, d_max: u64) -> u64 {
    let newton = binomial_transform(f);
    let p = BigInt::from(p);
    let mut modulus = BigInt::from(1);
    for d in 1..=d_max {
        modulus *= &p;
        if !newton.0.iter().all(|a| a.is_multiple_of(&modulus)) {
            return d - 1;
        }
    }
    d_max
}

/// `f` and `g` induce the same function modulo `m`: their difference is null.
pub fn equivalent_eval(f: &Polynomial, g: &Polynomial, m: &BigUint) -> bool {
    is_null_binomial(&(f - g), m)
}

fn small_modulus(m: u64, cap: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::ModulusTooSmall {
            min: 2,
            got: BigUint::from(m),
        });
    }
    match m.checked_pow(cap) {
        Some(cost) if cost <= 1 << 28 => Ok(()),
        _ => Err(Error::TooLarge {
            what: "exhaustive search",
            detail: format!("{m}^{cap} coefficient vectors"),
        }),
    }
}

/// Whether some polynomial `lead * x^n + (lower terms)` with `lead` in `leads`
/// is null modulo `m`, by trying every lower coefficient vector in `[0, m)^n`.
fn exists_null_with_lead(m: u64, n: u32, leads: std::ops::Range<u64>) -> bool {
    let powers: Vec<Vec<u64>> = (0..m)
        .map(|x| (0..=n).scan(1u64, |acc, _| {
            let cur = *acc;
            *acc = *acc * x % m;
            Some(cur)
        }).collect())
        .collect();
    let n = n as usize;
    let total = m.pow(n as u32);
    leads.into_par_iter().any(|lead| {
        (0..total).into_par_iter().any(|mut code| {
            let mut lower = vec![0u64; n];
            for slot in lower.iter_mut() {
                *slot = code % m;
                code /= m;
            }
            powers.iter().all(|pw| {
                let v = lower.iter().zip(pw).fold(lead * pw[n], |acc, (c, p)| acc + c * p);
                v % m == 0
            })
        })
    })
}

/// Smallest `n` in `1..=cap` admitting a monic null polynomial of degree `n`
/// modulo `m`, by exhaustive search. `None` if there is none up to `cap`.
pub fn brute_least_monic_degree(m: u64, cap: u32) -> Result<Option<u32>> {
    small_modulus(m, cap)?;
    Ok((1..=cap).find(|&n| exists_null_with_lead(m, n, 1..2)))
}

/// Smallest `n` in `1..=cap` admitting a null polynomial of degree exactly
/// `n` modulo `m` (leading coefficient nonzero modulo `m`).
pub fn brute_least_degree(m: u64, cap: u32) -> Result<Option<u32>> {
    small_modulus(m, cap)?;
    Ok((1..=cap).find(|&n| exists_null_with_lead(m, n, 1..m)))
}
