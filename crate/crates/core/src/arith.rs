//! Small number-theoretic helpers for cyclic groups.

pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Prime factorization as `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Total number of prime divisors counted with multiplicity.
pub fn big_omega(n: usize) -> usize {
    factorize(n).iter().map(|&(_, e)| e as usize).sum()
}

pub fn is_prime_power(n: usize) -> bool {
    factorize(n).len() == 1
}

pub fn is_prime(n: usize) -> bool {
    let f = factorize(n);
    f.len() == 1 && f[0].1 == 1
}

/// Units of Z_n in increasing order. For n = 1 the single element 0.
pub fn units(n: usize) -> Vec<usize> {
    if n == 1 {
        return vec![0];
    }
    (1..n).filter(|&u| gcd(u, n) == 1).collect()
}

/// Additive order of `g` in Z_n.
pub fn element_order(g: usize, n: usize) -> usize {
    n / gcd(g % n, n)
}
