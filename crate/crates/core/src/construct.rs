//! Constructions of least-degree monic null polynomials modulo prime powers.
//!
//! The building blocks are the falling product `F_p = x(x-1)...(x-p+1)`, the
//! tower `G_{p,n} = prod_i (G_{p,n-1} - i p^{I_p(n-1)})` with
//! `I_p(n) = (p^n - 1)/(p - 1)`, and `H_{p,d} = prod_i G_{p,i}^{e_{d,i}}`
//! where the exponents `e_{d,i}` are the digits of `d` in the floating radix
//! `I_p(1), I_p(2), ...`. `G_{p,n}` is null modulo exactly `p^{I_p(n)}`, and
//! `H_{p,d}` is a monic null polynomial modulo `p^d` of least degree
//! `sum_i e_{d,i} p^i`.
//!
//! Kempner's falling product `x(x-1)...(x-mu(m)+1)` is also provided; its
//! degree `mu(m)` is the smallest `t` with `m | t!`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::modulus::require_prime;
use crate::poly::{check_modulus, Polynomial};

/// `Lambda(x) = prod (x - j)` over `j` in `0..p` with `j != x (mod p)`.
pub fn lambda_eval(p: u64, x: &BigInt) -> Result<BigInt> {
    require_prime(p)?;
    let skip = x.mod_floor(&BigInt::from(p));
    Ok((0..p)
        .map(BigInt::from)
        .filter(|j| *j != skip)
        .map(|j| x - j)
        .product())
}

/// `F_p = x(x-1)...(x-(p-1))`.
pub fn falling_factorial_base(p: u64) -> Result<Polynomial> {
    require_prime(p)?;
    Ok(falling_product(p))
}

fn falling_product(len: u64) -> Polynomial {
    (0..len)
        .map(|i| Polynomial::linear_root(BigInt::from(i)))
        .fold(Polynomial::one(), |acc, f| &acc * &f)
}

/// `I_p(n) = 1 + p + ... + p^{n-1}`, with `I_p(0) = 0`.
pub fn index_i(p: u64, n: u32) -> BigUint {
    let p = BigUint::from(p);
    (0..n).fold(BigUint::zero(), |acc, _| acc * &p + 1u32)
}

/// `I_p(n)` when it fits in a `u64`.
pub(crate) fn index_i_u64(p: u64, n: u32) -> Option<u64> {
    (0..n).try_fold(0u64, |acc, _| acc.checked_mul(p)?.checked_add(1))
}

/// The tower `G_{p,0} = x, G_{p,1}, ..., G_{p,n}` over the integers.
#[derive(Debug, Clone)]
pub struct GTower {
    p: u64,
    levels: Vec<Polynomial>,
}

impl GTower {
    pub fn prime(&self) -> u64 {
        self.p
    }

    /// Highest level built.
    pub fn height(&self) -> u32 {
        (self.levels.len() - 1) as u32
    }

    /// `G_{p,k}`; level 0 is `x`.
    pub fn level(&self, k: u32) -> &Polynomial {
        &self.levels[k as usize]
    }

    pub fn levels(&self) -> &[Polynomial] {
        &self.levels
    }

    /// `I_p(k)`, the null order of level `k`.
    pub fn index(&self, k: u32) -> BigUint {
        index_i(self.p, k)
    }

    fn push_level(&mut self) {
        let k = self.height();
        let shift = BigInt::from(BigUint::from(self.p).pow(
            u32::try_from(index_i_u64(self.p, k).expect("index fits u64")).expect("index fits u32"),
        ));
        let prev = self.level(k).clone();
        let next = (0..self.p)
            .map(|i| &prev - &Polynomial::constant(&shift * i))
            .fold(Polynomial::one(), |acc, f| &acc * &f);
        self.levels.push(next);
    }

    /// Extends the tower up to level `n`.
    pub fn extend_to(&mut self, n: u32) {
        while self.height() < n {
            self.push_level();
            assert!(
                self.level_is_null(self.height()),
                "G_{{{},{}}} failed its divisibility check",
                self.p,
                self.height()
            );
        }
    }

    /// Checks that `p^{I_p(k)}` divides `G_{p,k}(x)` for `x` in `0..p^{k+1}`.
    fn level_is_null(&self, k: u32) -> bool {
        let modulus = BigInt::from(self.index(k));
        let modulus = BigInt::from(self.p).pow(u32::try_from(modulus).expect("index fits u32"));
        let window = self.p.pow(k + 1);
        let g = self.level(k);
        (0..window).all(|x| g.eval(&BigInt::from(x)).is_multiple_of(&modulus))
    }
}

/// Builds `G_{p,1..=n}`, verifying each level as it is added.
pub fn build_g(p: u64, n: u32) -> Result<GTower> {
    require_prime(p)?;
    let mut tower = GTower {
        p,
        levels: vec![Polynomial::x()],
    };
    tower.extend_to(n);
    Ok(tower)
}

/// `G~_{p,n}(x) = G_{p,n}(x) / p^{I_p(n)}`, computed on values through
/// `G~_{p,n} = F_p(G~_{p,n-1}) / p`.
pub fn g_tilde_eval(p: u64, n: u32, x: &BigInt) -> Result<BigInt> {
    require_prime(p)?;
    let bp = BigInt::from(p);
    let mut v = x.clone();
    for level in 1..=n {
        let prod: BigInt = (0..p).map(|i| &v - i).product();
        let (q, r) = prod.div_rem(&bp);
        assert!(r.is_zero(), "F_p(G~_{{{p},{}}}) not divisible by p", level - 1);
        v = q;
    }
    Ok(v)
}

/// Exponents `e_{d,1..n}` of `H_{p,d}` in the floating radix `I_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    p: u64,
    d: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    /// `digits()[i - 1]` is `e_{d,i}`.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// `e_{d,i}` for `i >= 1`, zero past the top.
    pub fn e(&self, i: usize) -> u64 {
        i.checked_sub(1)
            .and_then(|k| self.digits.get(k))
            .copied()
            .unwrap_or(0)
    }

    /// Digit length: the largest `n` with `I_p(n) <= d`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn e_max(&self) -> u64 {
        self.digits.iter().copied().max().unwrap_or(0)
    }

    /// `sum_i e_{d,i} I_p(i)`; equals `d`.
    pub fn value(&self) -> BigUint {
        self.digits
            .iter()
            .enumerate()
            .map(|(k, &e)| index_i(self.p, k as u32 + 1) * e)
            .sum()
    }

    /// `sum_i e_{d,i} p^i`.
    pub fn omega1(&self) -> Result<u64> {
        let mut total: u128 = 0;
        let mut power: u128 = 1;
        for &e in &self.digits {
            power = power.checked_mul(self.p as u128).ok_or_else(|| overflow(self))?;
            total = total
                .checked_add(power.checked_mul(e as u128).ok_or_else(|| overflow(self))?)
                .ok_or_else(|| overflow(self))?;
        }
        u64::try_from(total).map_err(|_| overflow(self))
    }

    /// `(e_{d,n}, ..., e_{d,1})`, most significant first.
    pub fn to_radix_string(&self) -> String {
        let parts: Vec<String> = self.digits.iter().rev().map(ToString::to_string).collect();
        format!("({})_I{}", parts.join(","), self.p)
    }
}

fn overflow(dv: &DigitVector) -> Error {
    Error::TooLarge {
        what: "omega1",
        detail: format!("p={} d={}", dv.p, dv.d),
    }
}

/// Greedy digit expansion of `d`: top index is the largest `n` with
/// `I_p(n) <= d`, then `e_{d,i} = floor(rest / I_p(i))` from the top down,
/// stopping as soon as the remainder is zero; `e_{d,1}` takes what is left.
pub fn digits_of_d(p: u64, d: u64) -> Result<DigitVector> {
    require_prime(p)?;
    if d == 0 {
        return Err(Error::ZeroExponent);
    }
    let mut n = 0u32;
    while index_i_u64(p, n + 1).is_some_and(|i| i <= d) {
        n += 1;
    }
    let mut digits = vec![0u64; n as usize];
    let mut rest = d;
    for i in (2..=n).rev() {
        let weight = index_i_u64(p, i).expect("checked above");
        digits[i as usize - 1] = rest / weight;
        rest -= digits[i as usize - 1] * weight;
        if rest == 0 {
            break;
        }
    }
    digits[0] = rest;
    Ok(DigitVector { p, d, digits })
}

/// `H_{p,d} = prod_i G_{p,i}^{e_{d,i}}`, reusing (and extending) `tower`.
pub fn build_h_with(tower: &mut GTower, d: u64) -> Result<Polynomial> {
    let digits = digits_of_d(tower.p, d)?;
    tower.extend_to(digits.len() as u32);
    Ok(h_from_digits(tower, &digits))
}

pub(crate) fn h_from_digits(tower: &GTower, digits: &DigitVector) -> Polynomial {
    digits
        .digits()
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &e)| e > 0)
        .fold(Polynomial::one(), |acc, (k, &e)| {
            &acc * &tower.level(k as u32 + 1).pow(e as u32)
        })
}

/// The least-degree monic null polynomial `H_{p,d}` modulo `p^d`.
pub fn build_h(p: u64, d: u64) -> Result<Polynomial> {
    let mut tower = build_g(p, 0)?;
    build_h_with(&mut tower, d)
}

/// `omega1(p^d) = sum_i e_{d,i} p^i`.
pub fn omega1_prime_power(p: u64, d: u64) -> Result<u64> {
    digits_of_d(p, d)?.omega1()
}

/// `omega0(p^d) = p`, witnessed by `p^{d-1}(x^p - x)`.
pub fn omega0_prime_power(p: u64, d: u64) -> Result<u64> {
    require_prime(p)?;
    if d == 0 {
        return Err(Error::ZeroExponent);
    }
    Ok(p)
}

/// Kempner's function: the smallest `t` with `m | t!`, found by accumulating
/// the factorial modulo `m`.
pub fn mu(m: &BigUint) -> Result<u64> {
    mu_bounded(m, u64::MAX)?.ok_or_else(|| Error::TooLarge {
        what: "mu",
        detail: m.to_string(),
    })
}

/// As [`mu`], giving up (returning `None`) once `t` would exceed `limit`.
pub fn mu_bounded(m: &BigUint, limit: u64) -> Result<Option<u64>> {
    check_modulus(m, 2)?;
    let mut acc = BigUint::one();
    let mut t = 0u64;
    while t < limit {
        t += 1;
        acc = (acc * t) % m;
        if acc.is_zero() {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

/// `x(x-1)...(x-mu(m)+1)`, a monic null polynomial of least degree modulo `m`.
pub fn kempner_basis(m: &BigUint) -> Result<Polynomial> {
    let t = mu(m)?;
    Ok(falling_product(t))
}

/// [`kempner_basis`] with coefficients reduced into `[0, m)` as it is built.
pub fn kempner_basis_mod(m: &BigUint) -> Result<Polynomial> {
    let t = mu(m)?;
    let mi = BigInt::from(m.clone());
    Ok((0..t)
        .map(|i| Polynomial::linear_root(BigInt::from(i)))
        .fold(Polynomial::one(), |acc, f| acc.mul_mod(&f, &mi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{is_null_binomial, is_null_eval};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn pow(p: u64, d: u32) -> BigUint {
        BigUint::from(p).pow(d)
    }

    #[test]
    fn lambda_examples() {
        let l = lambda_eval(5, &BigInt::zero()).unwrap();
        assert_eq!(l, BigInt::from(24));
        assert_eq!(l.mod_floor(&BigInt::from(5)), BigInt::from(4));
        assert_eq!(lambda_eval(2, &BigInt::from(4)).unwrap(), BigInt::from(3));
        assert_eq!(lambda_eval(3, &BigInt::from(7)).unwrap(), BigInt::from(35));
        assert!(lambda_eval(6, &BigInt::one()).is_err());
    }

    #[test]
    fn lambda_is_minus_one_mod_p() {
        for prime in [2u64, 3, 5, 7, 11] {
            for x in -30i64..30 {
                let l = lambda_eval(prime, &BigInt::from(x)).unwrap();
                assert_eq!(l.mod_floor(&BigInt::from(prime)), BigInt::from(prime - 1));
            }
        }
    }

    #[test]
    fn falling_base_examples() {
        assert_eq!(falling_factorial_base(2).unwrap(), p(&[0, -1, 1]));
        assert_eq!(falling_factorial_base(3).unwrap(), p(&[0, 2, -3, 1]));
        let f5 = falling_factorial_base(5).unwrap();
        let fermat = p(&[0, -1, 0, 0, 0, 1]);
        assert!(crate::poly::poly_congruent(&f5, &fermat, &big(5)));
    }

    #[test]
    fn index_examples() {
        let seq: Vec<BigUint> = (0..5).map(|n| index_i(2, n)).collect();
        assert_eq!(seq, [0u32, 1, 3, 7, 15].map(BigUint::from));
        assert_eq!(index_i(3, 3), big(13));
        assert_eq!(index_i(11, 0), big(0));
        for prime in [2u64, 3, 5, 7] {
            for n in 1..8u32 {
                assert_eq!(index_i(prime, n) * (prime - 1), pow(prime, n) - 1u32);
            }
        }
    }

    #[test]
    fn g_tower_examples() {
        let t2 = build_g(2, 4).unwrap();
        assert_eq!(t2.level(1), &p(&[0, -1, 1]));
        assert_eq!(t2.level(2), &p(&[0, 2, -1, -2, 1]));
        let degrees: Vec<usize> = (1..=4).map(|k| t2.level(k).degree().unwrap()).collect();
        assert_eq!(degrees, vec![2, 4, 8, 16]);
        assert!(t2.levels().iter().all(Polynomial::is_monic));
        assert_eq!(build_g(3, 1).unwrap().level(1), &p(&[0, 2, -3, 1]));
        assert!(is_null_eval(t2.level(2), &big(8)));
    }

    #[test]
    fn g_tilde_matches_exact_division() {
        for prime in [2u64, 3, 5] {
            let tower = build_g(prime, 2).unwrap();
            for n in 0..=2u32 {
                let scale = BigInt::from(prime).pow(index_i_u64(prime, n).unwrap() as u32);
                for x in -20i64..40 {
                    let x = BigInt::from(x);
                    let direct = tower.level(n).eval(&x);
                    assert_eq!(g_tilde_eval(prime, n, &x).unwrap() * &scale, direct);
                }
            }
        }
    }

    #[test]
    fn g_tilde_examples() {
        assert_eq!(g_tilde_eval(7, 0, &BigInt::from(12)).unwrap(), BigInt::from(12));
        for i in 0..6i64 {
            for j in 0..2i64 {
                let v = g_tilde_eval(2, 1, &BigInt::from(2 * i + j)).unwrap();
                assert_eq!(v.mod_floor(&BigInt::from(2)), BigInt::from(-i).mod_floor(&BigInt::from(2)));
            }
        }
        for j in 0..9i64 {
            let mut seen: Vec<BigInt> = (0..3)
                .map(|i| g_tilde_eval(3, 2, &BigInt::from(9 * i + j)).unwrap().mod_floor(&BigInt::from(3)))
                .collect();
            seen.sort();
            assert_eq!(seen, [0, 1, 2].map(BigInt::from));
        }
    }

    #[test]
    fn digit_examples() {
        let d3 = digits_of_d(2, 3).unwrap();
        assert_eq!(d3.digits(), &[0, 1]);
        assert_eq!(d3.value(), big(3));
        let d2 = digits_of_d(2, 2).unwrap();
        assert_eq!(d2.digits(), &[2]);
        assert_eq!(d2.omega1().unwrap(), 4);
        for i in 1..5u32 {
            let dv = digits_of_d(3, 3u64.pow(i)).unwrap();
            assert_eq!(dv.len(), i as usize);
            if i > 1 {
                assert_eq!(dv.e(i as usize), 2);
            }
            assert_eq!(dv.e(1), if i == 1 { 3 } else { 1 });
            assert!((2..i as usize).all(|k| dv.e(k) == 0));
        }
        assert_eq!(digits_of_d(2, 3).unwrap().to_radix_string(), "(1,0)_I2");
        assert!(matches!(digits_of_d(2, 0), Err(Error::ZeroExponent)));
    }

    #[test]
    fn digit_invariants() {
        for prime in [2u64, 3, 5, 7] {
            for d in 1..2000u64 {
                let dv = digits_of_d(prime, d).unwrap();
                assert_eq!(dv.value(), big(d));
                assert!(dv.digits().iter().all(|&e| e <= prime));
                let full: Vec<usize> = (1..=dv.len()).filter(|&i| dv.e(i) == prime).collect();
                assert!(full.len() <= 1);
                if let Some(&i) = full.first() {
                    assert!((1..i).all(|k| dv.e(k) == 0));
                }
                assert!(index_i_u64(prime, dv.len() as u32).unwrap() <= d);
                assert!(index_i_u64(prime, dv.len() as u32 + 1).unwrap() > d);
            }
        }
    }

    #[test]
    fn digit_length_at_exact_powers() {
        // d(p-1)+1 = p^n exactly: the top index must be n, not n-1
        for prime in [2u64, 3, 5] {
            for n in 1..6u32 {
                let d = index_i_u64(prime, n).unwrap();
                let dv = digits_of_d(prime, d).unwrap();
                assert_eq!(dv.len(), n as usize);
                assert_eq!(dv.e(n as usize), 1);
                assert_eq!(dv.omega1().unwrap(), prime.pow(n));
            }
        }
    }

    #[test]
    fn h_examples() {
        let h22 = build_h(2, 2).unwrap();
        assert_eq!(h22, p(&[0, 0, 1, -2, 1]));
        assert_eq!(h22.degree(), Some(4));
        let h23 = build_h(2, 3).unwrap();
        assert_eq!(h23, p(&[0, 2, -1, -2, 1]));
        assert!(is_null_eval(&h23, &big(8)));
        assert!(is_null_eval(&p(&[0, -2, 3, -2, 1]), &big(8)));
        assert_eq!(build_h(3, 4).unwrap().degree(), Some(9));
    }

    #[test]
    fn omega1_closed_forms() {
        assert_eq!(omega1_prime_power(5, 3).unwrap(), 15);
        assert_eq!(omega1_prime_power(3, 4).unwrap(), 9);
        assert_eq!(omega1_prime_power(2, 4).unwrap(), 6);
        for prime in [2u64, 3, 5, 7] {
            for d in 2..=prime {
                assert_eq!(omega1_prime_power(prime, d).unwrap(), prime * d);
            }
            assert_eq!(omega1_prime_power(prime, prime + 1).unwrap(), prime * prime);
        }
    }

    #[test]
    fn omega1_steps_by_zero_or_p() {
        for prime in [2u64, 3, 5] {
            for d in 1..=60 {
                let a = omega1_prime_power(prime, d).unwrap();
                let b = omega1_prime_power(prime, d + 1).unwrap();
                assert!(b - a == 0 || b - a == prime);
                assert_eq!(a % prime, 0);
            }
        }
    }

    #[test]
    fn omega0_examples() {
        assert_eq!(omega0_prime_power(2, 5).unwrap(), 2);
        assert_eq!(omega0_prime_power(7, 1).unwrap(), 7);
        let witness = p(&[0, -1, 0, 1]).scale(&BigInt::from(9));
        assert!(is_null_eval(&witness, &big(27)));
        assert!(omega0_prime_power(9, 1).is_err());
    }

    #[test]
    fn mu_examples() {
        assert_eq!(mu(&big(8)).unwrap(), 4);
        assert_eq!(mu(&big(9)).unwrap(), 6);
        assert_eq!(mu(&big(7)).unwrap(), 7);
        assert_eq!(mu(&big(4)).unwrap(), 4);
        assert!(mu(&big(1)).is_err());
        assert_eq!(mu_bounded(&big(1_000_003), 100).unwrap(), None);
    }

    #[test]
    fn kempner_examples() {
        let k8 = kempner_basis(&big(8)).unwrap();
        assert_eq!(k8, p(&[0, -6, 11, -6, 1]));
        assert!(is_null_eval(&k8, &big(8)));
        assert_eq!(kempner_basis(&big(4)).unwrap(), k8);
        assert_eq!(kempner_basis(&big(7)).unwrap(), falling_factorial_base(7).unwrap());
        assert_eq!(
            kempner_basis_mod(&big(8)).unwrap(),
            k8.reduce_coeffs(&big(8)).unwrap()
        );
    }

    #[test]
    fn kempner_null_up_to_2000() {
        for m in 2..=2000u64 {
            let k = kempner_basis_mod(&big(m)).unwrap();
            assert_eq!(k.degree(), Some(mu(&big(m)).unwrap() as usize));
            assert!(is_null_binomial(&k, &big(m)), "m={m}");
        }
    }

    #[test]
    fn h_recursion_agrees_with_product_form() {
        // H_{p,d} = H_{p,d-1} G_1 when the previous digits are all < p,
        // otherwise H_{p,d-1} G_{i+1} / G_i^p where e_{d-1,i} = p.
        for prime in [2u64, 3, 5] {
            let mut tower = build_g(prime, 4).unwrap();
            let mut prev = Polynomial::one();
            let mut prev_digits: Option<DigitVector> = None;
            for d in 1..=50u64 {
                let next = match &prev_digits {
                    Some(dv) if dv.e_max() == prime => {
                        let i = (1..=dv.len()).find(|&i| dv.e(i) == prime).unwrap() as u32;
                        tower.extend_to(i + 1);
                        let num = &prev * tower.level(i + 1);
                        exact_div_monic(&num, &tower.level(i).pow(prime as u32))
                    }
                    _ => &prev * tower.level(1),
                };
                let direct = build_h_with(&mut tower, d).unwrap();
                assert_eq!(next, direct, "p={prime} d={d}");
                prev = next;
                prev_digits = Some(digits_of_d(prime, d).unwrap());
            }
        }
    }

    fn exact_div_monic(f: &Polynomial, g: &Polynomial) -> Polynomial {
        let dg = g.degree().unwrap();
        let mut r: Vec<BigInt> = f.coeffs().to_vec();
        let mut q = vec![BigInt::zero(); r.len() - dg];
        for i in (dg..r.len()).rev() {
            let c = r[i].clone();
            for (j, gj) in g.coeffs().iter().enumerate() {
                r[i - dg + j] -= &c * gj;
            }
            q[i - dg] = c;
        }
        assert!(r.iter().all(Zero::is_zero), "division not exact");
        Polynomial::new(q)
    }

    #[test]
    fn h_is_null_for_small_moduli() {
        for prime in [2u64, 3, 5, 7, 11] {
            let mut tower = build_g(prime, 1).unwrap();
            let mut d = 1u32;
            while pow(prime, d) <= big(100_000) {
                let h = build_h_with(&mut tower, d as u64).unwrap();
                assert!(h.is_monic());
                assert!(is_null_eval(&h, &pow(prime, d)), "p={prime} d={d}");
                d += 1;
            }
        }
    }
}
