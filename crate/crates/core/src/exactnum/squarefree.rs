/// Largest radicand accepted by [`super::sqrt_of_rational`].
pub const DEFAULT_RADICAND_CEILING: u64 = u64::MAX;

/// Splits `n` as `root² · core` with `core` squarefree; returns `(root, core)`.
///
/// Trial division runs only up to the cube root of the unfactored cofactor.
/// Whatever survives has every prime factor above that bound, so it is a
/// prime, a product of two distinct primes, or a prime square, and a single
/// integer square root settles which.
pub fn square_decompose(n: u64) -> (u64, u64) {
    assert!(n > 0, "square_decompose of zero");
    let mut rest = n;
    let mut root: u64 = 1;
    let mut core: u64 = 1;
    let mut p: u64 = 2;
    while p.saturating_mul(p).saturating_mul(p) <= rest {
        if rest % p == 0 {
            let mut exp = 0u32;
            while rest % p == 0 {
                rest /= p;
                exp += 1;
            }
            root *= p.pow(exp / 2);
            if exp % 2 == 1 {
                core *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let s = isqrt(rest);
    if s * s == rest {
        root *= s;
    } else {
        core *= rest;
    }
    (root, core)
}

pub fn is_squarefree(n: u64) -> bool {
    n > 0 && square_decompose(n).0 == 1
}

pub(crate) fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).map_or(true, |sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}
