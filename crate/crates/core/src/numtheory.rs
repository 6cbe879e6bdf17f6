//! Exact integer arithmetic: primes, valuations, divisor functions and the
//! critical-prime-power counting function used by the closed forms in
//! [`crate::maximal`].

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::int::Int;

/// Default upper bound on [`PrimeTable`] sizes.
pub const DEFAULT_SIEVE_LIMIT: usize = 1_000_000;

/// Prime decomposition as `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization<T> {
    pairs: Vec<(T, u32)>,
}

impl<T: Int> Factorization<T> {
    pub fn pairs(&self) -> &[(T, u32)] {
        &self.pairs
    }

    pub fn primes(&self) -> impl Iterator<Item = T> + '_ {
        self.pairs.iter().map(|&(p, _)| p)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Multiplies the factors back together; `None` on overflow.
    pub fn product(&self) -> Option<T> {
        self.pairs.iter().try_fold(T::one(), |acc, &(p, e)| {
            acc.checked_mul(&num_traits::checked_pow(p, e as usize)?)
        })
    }
}

/// Trial-division factorization.
///
/// # Panics
/// If `n` is zero.
pub fn factorize<T: Int>(n: T) -> Factorization<T> {
    assert!(!n.is_zero(), "factorize: n must be positive");
    let mut m = n;
    let mut pairs = Vec::new();
    let two = T::one() + T::one();
    let mut d = two;
    while d <= m / d {
        if (m % d).is_zero() {
            let mut e = 0u32;
            while (m % d).is_zero() {
                m = m / d;
                e += 1;
            }
            pairs.push((d, e));
        }
        d = if d == two { d + T::one() } else { d + two };
    }
    if m > T::one() {
        pairs.push((m, 1));
    }
    Factorization { pairs }
}

/// Deterministic trial-division primality test.
pub fn is_prime<T: Int>(n: T) -> bool {
    let two = T::one() + T::one();
    if n < two {
        return false;
    }
    if (n % two).is_zero() {
        return n == two;
    }
    let mut d = two + T::one();
    while d <= n / d {
        if (n % d).is_zero() {
            return false;
        }
        d = d + two;
    }
    true
}

/// Number of distinct prime divisors.
pub fn omega<T: Int>(n: T) -> usize {
    factorize(n).len()
}

/// Number of positive divisors.
pub fn tau<T: Int>(n: T) -> usize {
    factorize(n)
        .pairs()
        .iter()
        .map(|&(_, e)| e as usize + 1)
        .product()
}

/// All positive divisors in ascending order.
pub fn divisors<T: Int>(n: T) -> Vec<T> {
    let mut out = vec![T::one()];
    for &(p, e) in factorize(n).pairs() {
        let len = out.len();
        let mut pk = T::one();
        for _ in 0..e {
            pk = pk * p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Largest `k` with `p^k | n`.
pub fn valuation<T: Int>(p: T, n: T) -> Result<u32> {
    if !is_prime(p) {
        return Err(Error::Argument(format!("{p} is not prime")));
    }
    if n.is_zero() {
        return Err(Error::Argument("valuation of zero is undefined".into()));
    }
    Ok(valuation_unchecked(p, n))
}

pub(crate) fn valuation_unchecked<T: Int>(p: T, mut n: T) -> u32 {
    let mut k = 0;
    while (n % p).is_zero() {
        n = n / p;
        k += 1;
    }
    k
}

/// `p^(v_p(n) + 1)`: the smallest power of `p` that does not divide `n`.
pub fn critical_prime_power<T: Int>(p: T, n: T) -> Result<T> {
    let v = valuation(p, n)?;
    checked_critical_power(p, v)
        .ok_or_else(|| Error::Range(format!("{p}^{} overflows the integer width", v + 1)))
}

fn checked_critical_power<T: Int>(p: T, v: u32) -> Option<T> {
    num_traits::checked_pow(p, v as usize + 1)
}

/// Critical prime powers of the primes dividing `n`, as `(p, p^(v_p(n)+1))`.
/// Powers that overflow `T` are omitted; they exceed `n` anyway.
pub fn critical_powers_of_divisors<T: Int>(n: T) -> Vec<(T, T)> {
    factorize(n)
        .pairs()
        .iter()
        .filter_map(|&(p, e)| checked_critical_power(p, e).map(|c| (p, c)))
        .collect()
}

/// Counts the critical prime powers `p^(v_p(n)+1)` with `p | n` lying strictly
/// between `x` and `n`. The threshold is an exact rational, so `x = n/2` is
/// compared without rounding.
pub fn gamma_x<T: Int>(x: Ratio<T>, n: T) -> Result<usize> {
    if n.is_zero() {
        return Err(Error::Argument("gamma_x: n must be positive".into()));
    }
    if x >= Ratio::from_integer(n) {
        return Err(Error::Argument(format!("gamma_x: threshold {x} is not below n = {n}")));
    }
    Ok(critical_powers_of_divisors(n)
        .into_iter()
        .filter(|&(_, c)| Ratio::from_integer(c) > x && c < n)
        .count())
}

/// Sieve of Eratosthenes with cumulative prime counts. Immutable once built.
#[derive(Debug, Clone)]
pub struct PrimeTable {
    limit: usize,
    primes: Vec<u64>,
    // pi[x] = number of primes <= x
    pi: Vec<u32>,
}

impl PrimeTable {
    /// Sieves up to `limit` under [`DEFAULT_SIEVE_LIMIT`].
    pub fn new(limit: usize) -> Result<Self> {
        Self::with_cap(limit, DEFAULT_SIEVE_LIMIT)
    }

    pub fn with_cap(limit: usize, cap: usize) -> Result<Self> {
        if limit == 0 {
            return Err(Error::Argument("sieve limit must be at least 1".into()));
        }
        if limit > cap {
            return Err(Error::Resource(format!(
                "sieve limit {limit} exceeds the configured cap {cap}"
            )));
        }
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        let mut pi = vec![0u32; limit + 1];
        let mut count = 0u32;
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                count += 1;
                let mut j = i.saturating_mul(i);
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
            pi[i] = count;
        }
        Ok(PrimeTable { limit, primes, pi })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Primes `<= x`, in ascending order.
    pub fn primes_up_to(&self, x: u64) -> Result<&[u64]> {
        let k = self.prime_pi(x)?;
        Ok(&self.primes[..k])
    }

    pub fn is_prime(&self, x: u64) -> Result<bool> {
        let i = self.index(x)?;
        Ok(i >= 2 && self.pi[i] != self.pi[i - 1])
    }

    /// Number of primes in `[2, x]`.
    pub fn prime_pi(&self, x: u64) -> Result<usize> {
        Ok(self.pi[self.index(x)?] as usize)
    }

    fn index(&self, x: u64) -> Result<usize> {
        usize::try_from(x)
            .ok()
            .filter(|&i| i <= self.limit)
            .ok_or_else(|| Error::Range(format!("{x} is beyond the sieve limit {}", self.limit)))
    }
}

/// Builds a [`PrimeTable`] under the default cap.
pub fn sieve(limit: usize) -> Result<PrimeTable> {
    PrimeTable::new(limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: u64, d: u64) -> Ratio<u64> {
        Ratio::new(n, d)
    }

    #[test]
    fn small_sieves() {
        assert!(sieve(1).unwrap().primes().is_empty());
        assert_eq!(sieve(10).unwrap().primes(), &[2, 3, 5, 7]);
        assert!(matches!(sieve(0), Err(Error::Argument(_))));
        assert!(matches!(
            PrimeTable::with_cap(101, 100),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn prime_pi_values() {
        let t = sieve(100).unwrap();
        assert_eq!(t.prime_pi(0).unwrap(), 0);
        assert_eq!(t.prime_pi(1).unwrap(), 0);
        assert_eq!(t.prime_pi(11).unwrap(), 5);
        assert_eq!(t.prime_pi(6).unwrap(), 3);
        assert!(matches!(t.prime_pi(101), Err(Error::Range(_))));
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!((omega(1u64), tau(1u64), divisors(1u64)), (0, 1, vec![1]));
        assert_eq!(tau(12u64), 6);
        assert_eq!(divisors(12u64), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!((omega(10u32), tau(10u32)), (2, 4));
        assert_eq!(divisors(97u16), vec![1, 97]);
    }

    #[test]
    fn valuations() {
        assert_eq!(valuation(2u64, 12).unwrap(), 2);
        assert_eq!(valuation(3u64, 10).unwrap(), 0);
        assert_eq!(valuation(5u64, 50).unwrap(), 2);
        assert!(matches!(valuation(4u64, 12), Err(Error::Argument(_))));
        assert!(matches!(valuation(1u64, 12), Err(Error::Argument(_))));
    }

    #[test]
    fn critical_powers() {
        assert_eq!(critical_prime_power(2u64, 12).unwrap(), 8);
        assert_eq!(critical_prime_power(3u64, 9).unwrap(), 27);
        assert_eq!(critical_prime_power(5u64, 11).unwrap(), 5);
        // 2^8 does not fit in u8
        assert!(matches!(critical_prime_power(2u8, 128), Err(Error::Range(_))));
    }

    #[test]
    fn gamma_examples() {
        for pk in [2u64, 4, 8, 9, 27, 25, 49, 121, 1024] {
            assert_eq!(gamma_x(r(1, 1), pk).unwrap(), 0, "prime power {pk}");
        }
        // critical powers of 12 are 8 and 9, both in (6, 12)
        assert_eq!(gamma_x(r(6, 1), 12).unwrap(), 2);
        // critical powers of 10 are 4 and 25
        assert_eq!(gamma_x(r(1, 1), 10).unwrap(), 1);
        assert!(matches!(gamma_x(r(12, 1), 12), Err(Error::Argument(_))));
        // half-integer thresholds: n = 9, x = 9/2, 27 is out of range
        assert_eq!(gamma_x(r(9, 2), 9).unwrap(), 0);
        // n = 20: critical powers 8 and 25; 8 < 10
        assert_eq!(gamma_x(r(20, 2), 20).unwrap(), 0);
        assert_eq!(gamma_x(r(7, 1), 20).unwrap(), 1);
    }

    #[test]
    fn generic_widths_agree() {
        for n in 1u32..2000 {
            let a = factorize(n);
            let b = factorize(n as u128);
            assert_eq!(a.len(), b.len());
            assert_eq!(tau(n), tau(n as u64));
            assert_eq!(
                gamma_x(Ratio::from_integer(0u32), n).unwrap(),
                gamma_x(Ratio::from_integer(0u128), n as u128).unwrap()
            );
        }
    }

    #[test]
    fn sieve_matches_trial_division() {
        let t = sieve(20_000).unwrap();
        for x in 0..=20_000u64 {
            assert_eq!(t.is_prime(x).unwrap(), is_prime(x), "x = {x}");
        }
    }

    // Distinct-prime count of critical powers that lie in (1, m] for modulus n.
    fn critical_powers_at_most(n: u64, m: u64) -> usize {
        critical_powers_of_divisors(n)
            .into_iter()
            .filter(|&(_, c)| c > 1 && c <= m)
            .count()
    }

    #[test]
    fn gamma_bounded_by_omega() {
        for n in 2..=10_000u64 {
            assert!(gamma_x(r(1, 1), n).unwrap() <= omega(n));
        }
    }

    #[test]
    fn gamma_threshold_shift() {
        // Moving the threshold from 1 to m drops exactly the critical powers of n in (1, m].
        for n in 2..=2_000u64 {
            let g1 = gamma_x(r(1, 1), n).unwrap();
            for m in 1..n {
                assert_eq!(
                    gamma_x(r(m, 1), n).unwrap(),
                    g1 - critical_powers_at_most(n, m),
                    "n = {n}, m = {m}"
                );
            }
        }
    }

    #[test]
    fn gamma_shift_is_not_a_difference_of_gammas() {
        // gamma_6(12) = 2 but gamma_1(12) - gamma_1(6) = 2 - 1: the threshold
        // shift depends on the critical powers of n, not those of m.
        assert_eq!(gamma_x(r(6, 1), 12).unwrap(), 2);
        assert_eq!(gamma_x(r(1, 1), 12).unwrap(), 2);
        assert_eq!(gamma_x(r(1, 1), 6).unwrap(), 1);
    }

    proptest! {
        #[test]
        fn factorization_reconstructs(n in 1u64..=10_000) {
            let f = factorize(n);
            prop_assert_eq!(f.product(), Some(n));
            prop_assert!(f.pairs().windows(2).all(|w| w[0].0 < w[1].0));
            prop_assert!(f.pairs().iter().all(|&(p, e)| e >= 1 && is_prime(p)));
        }

        #[test]
        fn divisors_agree_with_tau(n in 1u64..=10_000) {
            let d = divisors(n);
            prop_assert_eq!(d.len(), tau(n));
            prop_assert!(d.iter().all(|&x| n % x == 0));
        }

        #[test]
        fn prime_pi_steps(x in 1u64..=9_999) {
            let t = sieve(10_000).unwrap();
            let step = t.prime_pi(x).unwrap() - t.prime_pi(x - 1).unwrap();
            prop_assert!(step <= 1);
            prop_assert_eq!(step == 1, is_prime(x));
        }
    }
}
