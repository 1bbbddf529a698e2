//! Degree reduction and a complete invariant for functional equivalence.
//!
//! Dividing by the Kempner basis `x(x-1)...(x-mu(m)+1)`, which is monic and
//! null modulo `m`, leaves a remainder of degree below `mu(m)` inducing the
//! same function. Its Newton coefficients modulo `m` determine that function
//! and conversely, so they serve as the canonical form.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::construct::kempner_basis_mod;
use crate::error::Result;
use crate::oracle::newton_coefficients_mod;
use crate::poly::{check_modulus, divmod_monic, Polynomial};

/// Newton coefficients modulo `m` of the degree-reduced representative,
/// padded to length `mu(m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    m: BigUint,
    coeffs: Vec<BigUint>,
}

impl CanonicalForm {
    pub fn modulus(&self) -> &BigUint {
        &self.m
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn reduce_with(f: &Polynomial, basis: &Polynomial, m: &BigUint) -> Result<Polynomial> {
    Ok(divmod_monic(f, basis, m)?.1)
}

/// An equivalent polynomial modulo `m` of degree below `mu(m)`, with
/// coefficients in `[0, m)`.
pub fn reduce_degree(f: &Polynomial, m: &BigUint) -> Result<Polynomial> {
    check_modulus(m, 2)?;
    reduce_with(f, &kempner_basis_mod(m)?, m)
}

pub fn canonical_form(f: &Polynomial, m: &BigUint) -> Result<CanonicalForm> {
    check_modulus(m, 2)?;
    let basis = kempner_basis_mod(m)?;
    let width = basis.degree().expect("monic basis");
    let r = reduce_with(f, &basis, m)?;
    let mut coeffs = newton_coefficients_mod(&r, m);
    coeffs.resize(width, BigUint::zero());
    Ok(CanonicalForm {
        m: m.clone(),
        coeffs,
    })
}

/// Whether `f` and `g` induce the same function on `Z/mZ`.
pub fn equivalent(f: &Polynomial, g: &Polynomial, m: &BigUint) -> Result<bool> {
    check_modulus(m, 2)?;
    let basis = kempner_basis_mod(m)?;
    let diff = reduce_with(&(f - g), &basis, m)?;
    Ok(newton_coefficients_mod(&diff, m).iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{build_h, kempner_basis};
    use crate::oracle::equivalent_eval;
    use num_bigint::BigInt;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_i64s(c)
    }

    fn big(m: u64) -> BigUint {
        BigUint::from(m)
    }

    fn random_poly(rng: &mut StdRng, deg: usize, bound: i64) -> Polynomial {
        Polynomial::from_i64s(&(0..=deg).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_degree(&p(&[0, 0, 0, 1]), &big(3)).unwrap(), p(&[0, 1]));
        assert_eq!(reduce_degree(&p(&[3, 1]), &big(8)).unwrap(), p(&[3, 1]));
        assert_eq!(reduce_degree(&p(&[-1, 9]), &big(8)).unwrap(), p(&[7, 1]));
        let k8 = kempner_basis(&big(8)).unwrap();
        assert!(reduce_degree(&k8, &big(8)).unwrap().is_zero());
    }

    #[test]
    fn canonical_examples() {
        let m = big(3);
        assert_eq!(
            canonical_form(&p(&[0, 0, 0, 1]), &m).unwrap(),
            canonical_form(&p(&[0, 1]), &m).unwrap()
        );
        let x8 = canonical_form(&p(&[0, 1]), &big(8)).unwrap();
        assert_eq!(x8.coeffs(), &[big(0), big(1), big(0), big(0)]);
        assert_eq!(x8.to_string(), "(0,1,0,0)");

        let mut rng = StdRng::seed_from_u64(9);
        let h = build_h(3, 2).unwrap();
        for _ in 0..20 {
            let f = random_poly(&mut rng, 8, 50);
            let g = &f + &(&h * &random_poly(&mut rng, 4, 50));
            assert_eq!(canonical_form(&f, &big(9)).unwrap(), canonical_form(&g, &big(9)).unwrap());
        }
    }

    #[test]
    fn equivalent_examples() {
        assert!(equivalent(&p(&[0, -2, 3, -2, 1]), &Polynomial::zero(), &big(8)).unwrap());
        assert!(equivalent(&p(&[0, 0, 1]), &p(&[0, 1]), &big(2)).unwrap());
        for m in 2..30 {
            assert!(!equivalent(&p(&[1, 1]), &p(&[0, 1]), &big(m)).unwrap());
        }
        assert!(reduce_degree(&p(&[1]), &big(1)).is_err());
    }

    #[test]
    fn canonical_form_is_complete() {
        let mut rng = StdRng::seed_from_u64(48);
        for m in 2..=48u64 {
            let mb = big(m);
            for _ in 0..500 {
                let df = rng.gen_range(0..=10);
                let f = random_poly(&mut rng, df, 3 * m as i64);
                // Half the pairs are built to be equivalent.
                let g = if rng.gen_bool(0.5) {
                    let k = kempner_basis(&mb).unwrap();
                    &f + &(&k * &random_poly(&mut rng, 2, 5))
                } else {
                    let dg = rng.gen_range(0..=10);
                    random_poly(&mut rng, dg, 3 * m as i64)
                };
                let same = canonical_form(&f, &mb).unwrap() == canonical_form(&g, &mb).unwrap();
                assert_eq!(same, equivalent_eval(&f, &g, &mb), "m={m} f={f} g={g}");
                assert_eq!(same, equivalent(&f, &g, &mb).unwrap());
            }
        }
    }

    #[test]
    fn reduction_preserves_the_function() {
        let mut rng = StdRng::seed_from_u64(100);
        for m in 2..=100u64 {
            let mb = big(m);
            let mi = BigInt::from(m);
            for _ in 0..5 {
                let f = random_poly(&mut rng, 14, 1000);
                let r = reduce_degree(&f, &mb).unwrap();
                assert!(r.degree().is_none_or(|k| (k as u64) < crate::construct::mu(&mb).unwrap()));
                for x in 0..m {
                    let x = BigInt::from(x);
                    assert_eq!(f.eval_mod(&x, &mi), r.eval_mod(&x, &mi));
                }
            }
        }
    }

    #[test]
    fn degree_one_rigidity() {
        for m in 2..=20i64 {
            let mb = big(m as u64);
            for a0 in 0..m {
                for a1 in 0..m {
                    for b0 in 0..m {
                        for b1 in 0..m {
                            let f = p(&[a0, a1]);
                            let g = p(&[b0, b1]);
                            assert_eq!(equivalent(&f, &g, &mb).unwrap(), a0 == b0 && a1 == b1);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn degree_below_p_rigidity() {
        for (prime, d) in [(2u64, 2u32), (2, 3), (3, 2)] {
            let m = prime.pow(d) as i64;
            let mb = big(m as u64);
            let len = prime as usize;
            let all: Vec<Vec<i64>> = (0..m.pow(len as u32))
                .map(|mut v| {
                    (0..len)
                        .map(|_| {
                            let c = v % m;
                            v /= m;
                            c
                        })
                        .collect()
                })
                .collect();
            for a in &all {
                let fa = canonical_form(&p(a), &mb).unwrap();
                for b in &all {
                    let same = fa == canonical_form(&p(b), &mb).unwrap();
                    assert_eq!(same, a == b, "p^d={m} {a:?} {b:?}");
                }
            }
        }
    }
}
