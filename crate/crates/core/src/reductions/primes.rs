/// The first `n` primes, ascending.
///
/// Sieves up to `max(4, n²)`, which always contains the first `n` primes
/// (`p_n ≤ n²` for `n ≥ 2`).
pub fn sieve_primes(n: usize) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let bound = (n * n).max(4);
    let mut composite = vec![false; bound + 1];
    let mut primes = Vec::with_capacity(n);
    for i in 2..=bound {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if primes.len() == n {
            break;
        }
        for j in (i * i..=bound).step_by(i) {
            composite[j] = true;
        }
    }
    assert_eq!(primes.len(), n, "sieve bound n^2 too small");
    primes
}
