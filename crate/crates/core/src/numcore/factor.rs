use std::sync::OnceLock;

use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

const TRIAL_BOUND: u64 = 1_000_000;

/// Prime factorization, primes ascending, exponents ≥ 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factorization(pub Vec<(u64, u32)>);

impl Factorization {
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.0.iter().map(|&(p, _)| p)
    }

    pub fn value(&self) -> u128 {
        self.0.iter().fold(1u128, |acc, &(p, e)| acc * (p as u128).pow(e))
    }

    pub fn valuation(&self, p: u64) -> u32 {
        self.0.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    fn push(&mut self, p: u64, e: u32) {
        match self.0.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 += e,
            None => self.0.push((p, e)),
        }
    }

    fn normalize(mut self) -> Self {
        self.0.sort_unstable();
        self
    }

    pub fn merge(&self, other: &Factorization) -> Factorization {
        let mut out = self.clone();
        for &(p, e) in &other.0 {
            out.push(p, e);
        }
        out.normalize()
    }
}

pub fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_BOUND))
}

pub fn sieve(bound: u64) -> Vec<u64> {
    let n = bound as usize;
    let mut comp = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !comp[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                comp[j] = true;
                j += i;
            }
        }
    }
    out
}

#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for &a in &MR_BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

// Brent's variant; n odd composite
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut g, mut q) = (2u64, 2u64, 1u64, 1u64);
        let mut ys = 2u64;
        let mut r = 1u64;
        let m = 128u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += m;
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

fn split_into(n: u64, out: &mut Factorization) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n, 1);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor requires n ≥ 1");
    let mut out = Factorization::default();
    let mut m = n;
    for &p in small_primes() {
        if p * p > m {
            break;
        }
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push(p, e);
        }
    }
    if m > 1 {
        if m < TRIAL_BOUND * TRIAL_BOUND {
            out.push(m, 1);
        } else {
            split_into(m, &mut out);
        }
    }
    out.normalize()
}

pub fn is_squarefree(n: u64) -> bool {
    factor(n).0.iter().all(|&(_, e)| e == 1)
}

fn is_prime_big(n: &BigUint) -> bool {
    if let Some(v) = n.to_u64() {
        return is_prime(v);
    }
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'base: for &a in &MR_BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}

fn rho_big(n: &BigUint) -> BigUint {
    let mut rng = rand_seed();
    loop {
        let c = rng.gen_biguint_below(n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
    }
}

fn rand_seed() -> impl num_bigint::RandBigInt {
    use rand::SeedableRng;
    rand::rngs::StdRng::seed_from_u64(0x5eed)
}

/// Factorization of an arbitrary positive integer; primes above 2^64 are not expected here.
pub fn factor_big(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero());
    if let Some(v) = n.to_u64() {
        return factor(v).0.into_iter().map(|(p, e)| (BigUint::from(p), e)).collect();
    }
    let mut m = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes().iter().take(10_000) {
        let bp = BigUint::from(p);
        if (&m % &bp).is_zero() {
            let mut e = 0;
            while (&m % &bp).is_zero() {
                m /= &bp;
                e += 1;
            }
            out.push((bp, e));
        }
    }
    let mut stack = vec![m];
    let mut big: Vec<BigUint> = Vec::new();
    while let Some(x) = stack.pop() {
        if x.is_one() {
            continue;
        }
        if let Some(v) = x.to_u64() {
            for (p, e) in factor(v).0 {
                for _ in 0..e {
                    big.push(BigUint::from(p));
                }
            }
        } else if is_prime_big(&x) {
            big.push(x);
        } else {
            let d = rho_big(&x);
            stack.push(&x / &d);
            stack.push(d);
        }
    }
    for p in big {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some(slot) => slot.1 += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort();
    out
}
