//! Comparisons against independent closed forms.

use num_traits::{One, Zero};
use pqbezier::pq::{bernstein_basis, pq_binomial, PqParams};
use pqbezier::{Rational, Scalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn binomial(n: u64, k: u64) -> i64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1)) as i64
}

/// Gaussian binomial by the product formula.
fn gaussian(n: usize, k: usize, qq: &Rational) -> Rational {
    let f = |m: usize| -> Rational {
        (1..=m).fold(Rational::one(), |acc, i| acc * (Rational::one() - qq.pown(i as u32)))
    };
    if qq.is_one() {
        return Rational::from_i64(binomial(n as u64, k as u64));
    }
    f(n) / (f(k) * f(n - k))
}

/// Phillips' q-Bernstein basis.
fn q_bernstein(n: usize, k: usize, t: &Rational, qq: &Rational) -> Rational {
    let tail = (0..n - k).fold(Rational::one(), |acc, s| acc * (Rational::one() - qq.pown(s as u32) * t.clone()));
    gaussian(n, k, qq) * t.pown(k as u32) * tail
}

fn samples() -> Vec<Rational> {
    (0..=10).map(|i| q(i, 10)).chain([q(-1, 3), q(7, 5), q(5, 2)]).collect()
}

#[test]
fn classical_bernstein_at_p_equal_q_equal_one() {
    let params = PqParams::new(q(1, 1), q(1, 1));
    for n in 0..=10usize {
        for k in 0..=n {
            for t in samples() {
                let expected = Rational::from_i64(binomial(n as u64, k as u64))
                    * t.pown(k as u32)
                    * (Rational::one() - t.clone()).pown((n - k) as u32);
                assert_eq!(bernstein_basis(n, k, &t, &params).unwrap(), expected, "n={n} k={k} t={t}");
            }
        }
    }
}

#[test]
fn q_bernstein_at_p_equal_one() {
    for qq in [q(1, 2), q(2, 3), q(3, 1), q(-1, 2)] {
        let params = PqParams::new(q(1, 1), qq.clone());
        for n in 0..=8usize {
            for k in 0..=n {
                assert_eq!(pq_binomial(n, k, &params), gaussian(n, k, &qq));
                for t in samples() {
                    assert_eq!(
                        bernstein_basis(n, k, &t, &params).unwrap(),
                        q_bernstein(n, k, &t, &qq),
                        "n={n} k={k} q={qq} t={t}"
                    );
                }
            }
        }
    }
}

#[test]
fn pq_binomial_is_homogeneous_gaussian() {
    // [n k]_{p,q} = p^{k(n-k)} [n k]_{q/p}
    for (p, qq) in [(q(2, 1), q(1, 1)), (q(3, 2), q(1, 2)), (q(5, 4), q(3, 4))] {
        let params = PqParams::new(p.clone(), qq.clone());
        for n in 0..=8usize {
            for k in 0..=n {
                let expected = p.pown((k * (n - k)) as u32) * gaussian(n, k, &(qq.clone() / p.clone()));
                assert_eq!(pq_binomial(n, k, &params), expected);
            }
        }
    }
}

#[test]
fn endpoint_interpolation() {
    for (p, qq) in [(q(2, 1), q(1, 1)), (q(3, 2), q(1, 2)), (q(1, 1), q(1, 2))] {
        let params = PqParams::new(p, qq);
        for n in 1..=8usize {
            for k in 0..=n {
                let at0 = bernstein_basis(n, k, &Rational::zero(), &params).unwrap();
                let at1 = bernstein_basis(n, k, &Rational::one(), &params).unwrap();
                assert_eq!(at0, if k == 0 { Rational::one() } else { Rational::zero() });
                assert_eq!(at1, if k == n { Rational::one() } else { Rational::zero() });
            }
        }
    }
}
