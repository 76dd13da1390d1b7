//! Integer helpers: multiplicative orders, Euler's phi, 2-adic valuations,
//! factorization and the odd-exponent predicate `lambda(q, d)`.

use crate::error::{Error, Result};

/// A positive integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredInteger {
    pub n: u64,
    /// `(prime, exponent)` pairs sorted by prime.
    pub factors: Vec<(u64, u32)>,
}

impl FactoredInteger {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Product of `prime^exponent`, recomputed from the factor list.
    pub fn value(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, k)| acc * p.pow(k))
    }

    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .fold(1u64, |acc, &(p, k)| acc * (p - 1) * p.pow(k - 1))
    }

    /// All positive divisors, ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, k) in &self.factors {
            let mut next = Vec::with_capacity(divs.len() * (k as usize + 1));
            for &d in &divs {
                let mut pk = 1u64;
                for _ in 0..=k {
                    next.push(d * pk);
                    pk = pk.saturating_mul(p);
                }
            }
            divs = next;
        }
        divs.sort_unstable();
        divs
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Deterministic Miller-Rabin; the base set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
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

// Brent's variant; only called on odd composites with no factor below the
// trial-division bound.
fn pollard_rho(n: u64) -> u64 {
    const BATCH: u64 = 128;
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut r = 1u64;
        let mut q = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..BATCH.min(r - k) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += BATCH;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

const TRIAL_BOUND: u64 = 1 << 12;

/// Prime factorization: trial division by small primes, then Pollard rho on
/// whatever cofactor survives.
pub fn factorize(n: u64) -> FactoredInteger {
    assert!(n >= 1, "factorize(0)");
    let mut rest = n;
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d < TRIAL_BOUND && d * d <= rest {
        while rest % d == 0 {
            primes.push(d);
            rest /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split_into(rest, &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some((last, k)) if *last == p => *k += 1,
            _ => factors.push((p, 1)),
        }
    }
    FactoredInteger { n, factors }
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).phi()
}

pub fn divisors(n: u64) -> Vec<u64> {
    factorize(n).divisors()
}

/// Largest `s` with `2^s | i`.
pub fn two_adic_valuation(i: u64) -> u32 {
    assert!(i >= 1, "two_adic_valuation(0)");
    i.trailing_zeros()
}

/// Splits `n = 2^m * odd`.
pub fn split_two_power(n: u64) -> (u32, u64) {
    let m = two_adic_valuation(n);
    (m, n >> m)
}

/// Smallest `s >= 1` with `a^s = 1 (mod n)`; 1 when `n = 1`.
pub fn mult_order(a: u64, n: u64) -> Result<u64> {
    if n == 1 {
        return Ok(1);
    }
    if gcd(a % n, n) != 1 {
        return Err(Error::NotCoprime { a, n });
    }
    let phi = euler_phi(n);
    order_dividing(a % n, n, phi)
}

/// Order of `a` modulo `n` given a known multiple `bound` of that order.
pub fn order_dividing(a: u64, n: u64, bound: u64) -> Result<u64> {
    let mut ord = bound;
    for p in factorize(bound).primes() {
        while ord % p == 0 && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    Ok(ord)
}

/// `lambda(q, d)`: 1 iff `d | q^e + 1` for some odd `e >= 1`.
///
/// `q^e mod d` is periodic in `e` with period `ord_d(q)`, so the odd
/// exponents in `[1, 2 ord_d(q) - 1]` cover every residue an odd exponent
/// can reach.
pub fn lambda_predicate(q: u64, d: u64) -> Result<u8> {
    if d <= 2 {
        return Ok(1);
    }
    if gcd(q % d, d) != 1 {
        return Err(Error::NotCoprime { a: q, n: d });
    }
    let ord = mult_order(q, d)?;
    let hit = (1..2 * ord)
        .step_by(2)
        .any(|e| pow_mod(q, e, d) == d - 1);
    Ok(hit as u8)
}

/// Writes a prime power `q` as `(p, e)`.
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factorize(q);
    match f.factors.as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}
