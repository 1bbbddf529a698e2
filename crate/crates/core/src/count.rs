//! Enumeration and counting of null polynomials modulo `p^d`.
//!
//! Every null polynomial modulo `p^d` is uniquely
//! `sum_j p^{d-j} H_{p,j}(x) q_j(x)` with `q_d` arbitrary, `q_j` of degree
//! below `p` for `j < d`, and `q_j = 0` whenever `H_{p,j}` has a digit equal
//! to `p` (its degree then coincides with `H_{p,j+1}`'s). With `q_j`'s
//! coefficients in `[0, p^j)` each reduced null polynomial appears once.
//!
//! Counts of null polynomials of degree at most `n` are always powers of `p`
//! and are carried as exact `(base, exponent)` pairs.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::construct::{build_g, digits_of_d, h_from_digits, index_i, omega1_prime_power, DigitVector};
use crate::error::{Error, Result};
use crate::modulus::require_prime;
use crate::poly::Polynomial;

/// Counts at most this many decimal digits are expanded to plain integers.
const EXPAND_DIGITS: f64 = 40.0;

/// `factor * base^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountValue {
    pub factor: BigUint,
    pub base: u64,
    pub exponent: BigUint,
}

impl CountValue {
    pub fn power(base: u64, exponent: BigUint) -> Self {
        Self {
            factor: BigUint::one(),
            base,
            exponent,
        }
    }

    pub fn zero(base: u64) -> Self {
        Self {
            factor: BigUint::zero(),
            base,
            exponent: BigUint::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.factor.is_zero()
    }

    /// Whether the value is a pure power of the base.
    pub fn is_power(&self) -> bool {
        self.factor.is_one()
    }

    /// Approximate number of decimal digits.
    pub fn log10(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let exp = self.exponent.to_f64().unwrap_or(f64::INFINITY);
        let factor_bits = self.factor.bits() as f64;
        exp * (self.base as f64).log10() + factor_bits * std::f64::consts::LOG10_2
    }

    /// The exact integer, if it has at most `max_digits` decimal digits.
    pub fn to_biguint_within(&self, max_digits: f64) -> Option<BigUint> {
        if self.is_zero() {
            return Some(BigUint::zero());
        }
        if self.log10() > max_digits + 1.0 {
            return None;
        }
        let e = self.exponent.to_u32()?;
        Some(&self.factor * BigUint::from(self.base).pow(e))
    }

    /// The exact integer when it is below `10^40`.
    pub fn expanded(&self) -> Option<BigUint> {
        self.to_biguint_within(EXPAND_DIGITS)
            .filter(|v| v.to_string().len() <= EXPAND_DIGITS as usize)
    }

    /// The exact integer, however large (bounded by memory only).
    pub fn to_biguint(&self) -> BigUint {
        if self.is_zero() {
            return BigUint::zero();
        }
        let e = self.exponent.to_u32().expect("exponent beyond u32");
        &self.factor * BigUint::from(self.base).pow(e)
    }

    /// `base^exponent` form, with the factor when it is not one.
    pub fn symbolic(&self) -> String {
        if self.is_zero() {
            "0".to_string()
        } else if self.is_power() {
            format!("{}^{}", self.base, self.exponent)
        } else {
            format!("{}*{}^{}", self.factor, self.base, self.exponent)
        }
    }
}

impl fmt::Display for CountValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.expanded() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str(&self.symbolic()),
        }
    }
}

/// One step of a count derivation: which rule applied and what it produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub rule: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub value: CountValue,
    pub trace: Vec<TraceStep>,
}

impl CountResult {
    fn push(&mut self, rule: impl Into<String>, value: impl Into<String>) {
        self.trace.push(TraceStep {
            rule: rule.into(),
            value: value.into(),
        });
    }
}

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

/// `N~_p(n) = p^n (I_p(n) - n) / 2`, the exponent of `N_p(n)`.
pub fn seq_n_tilde(p: u64, n: u32) -> Result<BigUint> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("N_p(n) needs n >= 1".into()));
    }
    let twice = BigUint::from(p).pow(n) * (index_i(p, n) - n);
    Ok(twice / 2u32)
}

/// `N~_p(n)` by its defining recursion
/// `N~_p(n) = p^n (p^{n-1} - 1) / 2 + p N~_p(n-1)`, `N~_p(1) = 0`.
pub fn seq_n_tilde_recursive(p: u64, n: u32) -> Result<BigUint> {
    require_prime(p)?;
    if n == 0 {
        return Err(Error::InvalidArgument("N_p(n) needs n >= 1".into()));
    }
    let bp = BigUint::from(p);
    Ok((2..=n).fold(BigUint::zero(), |acc, k| {
        bp.pow(k) * (bp.pow(k - 1) - 1u32) / 2u32 + &bp * acc
    }))
}

/// `N_p(n) = p^{N~_p(n)}`: the number of null polynomials of degree below
/// `p^n` modulo `p^{I_p(n)}`.
pub fn seq_n(p: u64, n: u32) -> Result<CountValue> {
    Ok(CountValue::power(p, seq_n_tilde(p, n)?))
}

/// Exponent of `N_p(n, i)`: `i(i-1)/2 p^n I_p(n) + i N~_p(n)`.
pub fn seq_n2_tilde(p: u64, n: u32, i: u64) -> Result<BigUint> {
    if i > p {
        return Err(Error::InvalidArgument(format!("N_p(n,i) needs i <= p, got {i}")));
    }
    let pairs = big(i * i.saturating_sub(1) / 2);
    Ok(pairs * BigUint::from(p).pow(n) * index_i(p, n) + seq_n_tilde(p, n)? * i)
}

/// `N_p(n, i) = p^{i(i-1) p^n I_p(n) / 2} N_p(n)^i`, for `0 <= i <= p`.
pub fn seq_n2(p: u64, n: u32, i: u64) -> Result<CountValue> {
    Ok(CountValue::power(p, seq_n2_tilde(p, n, i)?))
}

fn check_args(p: u64, d: u64) -> Result<()> {
    require_prime(p)?;
    if d == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(())
}

/// Exponent of `N_np(<= omega1(p^d) - 1, p^d)` from the digits of `d`:
/// `sum_i [ N~_p(i, e_i) + e_i p^i sum_{j>i} e_j I_p(j) ]`.
fn threshold_exponent(digits: &DigitVector) -> Result<BigUint> {
    let p = digits.prime();
    let mut total = BigUint::zero();
    let mut above = BigUint::zero();
    for i in (1..=digits.len()).rev() {
        let e = digits.e(i);
        let block = seq_n2_tilde(p, i as u32, e)?;
        let offset = BigUint::from(p).pow(i as u32) * e * &above;
        total += block + offset;
        above += index_i(p, i as u32) * e;
    }
    Ok(total)
}

/// `N_np(<= n, p^d)`: null polynomials of degree at most `n` modulo `p^d`,
/// counting the zero polynomial.
pub fn count_null_le(n: u64, p: u64, d: u64) -> Result<CountResult> {
    check_args(p, d)?;
    let omega1 = omega1_prime_power(p, d)?;
    let mut out = CountResult {
        value: CountValue::power(p, BigUint::zero()),
        trace: Vec::new(),
    };
    out.push("omega1(p^d)", omega1.to_string());

    if n < p {
        out.push("n < p: only the zero polynomial", "1");
        return Ok(out);
    }

    if n >= omega1 {
        let base = count_null_le(omega1 - 1, p, d)?;
        out.trace.extend(base.trace.into_iter().skip(1));
        let extra = big(d) * (n - omega1 + 1);
        out.push(
            format!("n >= omega1: free q_d adds p^(d*(n-omega1+1)), n*={}", n - omega1),
            format!("{p}^{extra}"),
        );
        out.value = CountValue::power(p, base.value.exponent + extra);
        return Ok(out);
    }

    if n == omega1 - 1 {
        let digits = digits_of_d(p, d)?;
        let exp = threshold_exponent(&digits)?;
        out.push(
            format!("digit product over {}", digits.to_radix_string()),
            format!("{p}^{exp}"),
        );
        out.value = CountValue::power(p, exp);
        return Ok(out);
    }

    // p <= n < omega1 - 1: reduce to the smallest d* with omega1(p^{d*}) > n,
    // where the count agrees with p^d, then strip the top coefficients of
    // the threshold count at d*.
    let mut d_star = 1;
    while omega1_prime_power(p, d_star)? <= n {
        d_star += 1;
    }
    let w_star = omega1_prime_power(p, d_star)?;
    let mut d_bar = None;
    for cand in (1..d_star).rev() {
        if omega1_prime_power(p, cand)? == w_star - p {
            d_bar = Some(cand);
            break;
        }
    }
    let d_bar = d_bar.expect("omega1 steps by 0 or p, so omega1(p^{d*}) - p is attained");
    out.push("d* (smallest with omega1(p^d*) > n)", d_star.to_string());
    out.push("d-bar* (largest with omega1 = omega1(p^d*) - p)", d_bar.to_string());
    let at_star = count_null_le(w_star - 1, p, d_star)?;
    out.trace.extend(at_star.trace.into_iter().skip(1));
    let strip = big(d_bar) * (w_star - 1 - n);
    out.push(
        "stability across d, divide by p^(d-bar*(omega1(p^d*)-1-n))",
        format!("{p}^-{strip}"),
    );
    out.value = CountValue::power(p, at_star.value.exponent - strip);
    Ok(out)
}

/// `N_np(<= n, p^d)` for `1 <= d <= p` and `i p <= n < (i+1) p` with
/// `1 <= i <= d-1`: `p^{i(i-1)p/2 + i(n-ip+1)}`.
pub fn count_null_le_small_d(n: u64, p: u64, d: u64) -> Result<CountValue> {
    check_args(p, d)?;
    let i = n / p;
    if d > p || i == 0 || i >= d {
        return Err(Error::InvalidArgument(format!(
            "needs 1 <= d <= p and p <= n < d p, got n={n} p={p} d={d}"
        )));
    }
    let exp = big(i * (i - 1) / 2 * p) + big(i * (n - i * p + 1));
    Ok(CountValue::power(p, exp))
}

/// `N_mnp(n, p^d)`: monic null polynomials of degree exactly `n`.
pub fn count_monic(n: u64, p: u64, d: u64) -> Result<CountResult> {
    check_args(p, d)?;
    let omega1 = omega1_prime_power(p, d)?;
    if n < omega1 {
        return Ok(CountResult {
            value: CountValue::zero(p),
            trace: vec![TraceStep {
                rule: format!("n < omega1(p^d) = {omega1}: no monic null polynomial"),
                value: "0".into(),
            }],
        });
    }
    let mut out = count_null_le(omega1 - 1, p, d)?;
    out.push(
        "at omega1: N_mnp(omega1) = N_np(<= omega1-1)",
        out.value.symbolic(),
    );
    if n > omega1 {
        let extra = big(d) * (n - omega1);
        out.push(
            format!("n > omega1: free lower part of q_d, p^(d*n*), n*={}", n - omega1),
            format!("{p}^{extra}"),
        );
        out.value = CountValue::power(p, out.value.exponent + extra);
    }
    Ok(out)
}

/// `N_mnp(<= n, p^d)`: monic null polynomials of degree at most `n`.
pub fn count_monic_le(n: u64, p: u64, d: u64) -> Result<CountResult> {
    check_args(p, d)?;
    let omega1 = omega1_prime_power(p, d)?;
    if n < omega1 {
        return count_monic(n, p, d);
    }
    let mut out = count_monic(omega1, p, d)?;
    let block = BigUint::from(p).pow(u32::try_from(d).map_err(|_| Error::TooLarge {
        what: "d",
        detail: d.to_string(),
    })?);
    let steps = u32::try_from(n - omega1 + 1).map_err(|_| Error::TooLarge {
        what: "n",
        detail: n.to_string(),
    })?;
    let geometric = (block.pow(steps) - 1u32) / (block - 1u32);
    out.push(
        "cumulative: (p^(d(n*+1)) - 1)/(p^d - 1) * N_mnp(omega1)",
        format!("{geometric}"),
    );
    out.value.factor *= geometric;
    Ok(out)
}

/// How far `q_j` may range in one layer of the null basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QDegree {
    /// Any degree (the top layer `j = d`).
    Free,
    /// Degree below `p`.
    BelowP,
}

#[derive(Debug, Clone)]
pub struct NullLayer {
    pub j: u64,
    /// `p^{d-j}`.
    pub multiplier: BigUint,
    /// `H_{p,j}`.
    pub basis: Polynomial,
    pub digits: DigitVector,
    pub q_degree: QDegree,
    pub skipped: bool,
}

/// Layers `j = d, d-1, ..., 1` of the null-polynomial decomposition.
#[derive(Debug, Clone)]
pub struct NullBasis {
    pub p: u64,
    pub d: u64,
    pub layers: Vec<NullLayer>,
}

pub fn null_basis(p: u64, d: u64) -> Result<NullBasis> {
    check_args(p, d)?;
    let mut tower = build_g(p, 0)?;
    let mut layers = Vec::with_capacity(d as usize);
    for j in (1..=d).rev() {
        let digits = digits_of_d(p, j)?;
        tower.extend_to(digits.len() as u32);
        let top = j == d;
        layers.push(NullLayer {
            j,
            multiplier: BigUint::from(p).pow((d - j) as u32),
            basis: h_from_digits(&tower, &digits),
            skipped: !top && digits.e_max() == p,
            q_degree: if top { QDegree::Free } else { QDegree::BelowP },
            digits,
        });
    }
    Ok(NullBasis { p, d, layers })
}

struct Slot {
    poly: Polynomial,
    radix: u64,
}

/// Streams every null polynomial of degree at most `n` modulo `p^d`, each
/// exactly once, with coefficients in `[0, p^d)`.
pub struct NullEnumerator {
    modulus: BigInt,
    slots: Vec<Slot>,
    counter: Vec<u64>,
    total: u64,
    done: bool,
}

impl NullEnumerator {
    /// Number of polynomials the stream yields in total.
    pub fn total(&self) -> u64 {
        self.total
    }
}

impl Iterator for NullEnumerator {
    type Item = Polynomial;

    fn next(&mut self) -> Option<Polynomial> {
        if self.done {
            return None;
        }
        let mut acc = Polynomial::zero();
        for (slot, &c) in self.slots.iter().zip(&self.counter) {
            if c != 0 {
                acc = &acc + &slot.poly.scale(&BigInt::from(c));
            }
        }
        let out = acc.reduce_coeffs_signed(&self.modulus);
        self.done = true;
        for (slot, c) in self.slots.iter().zip(self.counter.iter_mut()) {
            *c += 1;
            if *c < slot.radix {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(out)
    }
}

/// Enumerator over null polynomials of degree `<= n` modulo `p^d`; refuses
/// (with [`Error::CapExceeded`]) when there are more than `cap`.
pub fn enumerate_null(p: u64, d: u64, n: u64, cap: u64) -> Result<NullEnumerator> {
    let count = count_null_le(n, p, d)?.value;
    match count.to_biguint_within(30.0).and_then(|v| v.to_u64()) {
        Some(c) if c <= cap => {}
        _ => {
            return Err(Error::CapExceeded {
                count: count.to_string(),
                cap,
            })
        }
    }
    let basis = null_basis(p, d)?;
    let modulus = BigInt::from(BigUint::from(p).pow(d as u32));
    let mut slots = Vec::new();
    for layer in basis.layers.iter().filter(|l| !l.skipped) {
        let deg = layer.basis.degree().expect("H is monic") as u64;
        if deg > n {
            continue;
        }
        let top_shift = match layer.q_degree {
            QDegree::Free => n - deg,
            QDegree::BelowP => (p - 1).min(n - deg),
        };
        let scaled = layer.basis.scale(&BigInt::from(layer.multiplier.clone()));
        let radix = p.pow(layer.j as u32);
        for s in 0..=top_shift {
            slots.push(Slot {
                poly: scaled.shift(s as usize),
                radix,
            });
        }
    }
    let total = slots.iter().map(|s| s.radix).product();
    Ok(NullEnumerator {
        modulus,
        counter: vec![0; slots.len()],
        slots,
        total,
        done: false,
    })
}
