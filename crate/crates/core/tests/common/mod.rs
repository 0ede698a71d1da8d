#![allow(dead_code)]

use bicaloric_core::{Monomial, Poly, Rational};
use proptest::prelude::*;
use rand::Rng;

pub fn p(s: &str, n: usize) -> Poly {
    Poly::parse(s, n).unwrap()
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=6).prop_map(|(a, b)| Rational::new(a.into(), b.into()))
}

/// Random polynomial in `n` variables with `t`, total exponents bounded by `max_exp` per variable.
pub fn poly(n: usize, max_exp: u32, max_terms: usize, with_t: bool) -> impl Strategy<Value = Poly> {
    let t_max: u32 = if with_t { 2 } else { 0 };
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, n), 0..=t_max, rational()),
        0..=max_terms,
    )
    .prop_map(move |terms| {
        Poly::from_terms(n, terms.into_iter().map(|(x, t, c)| (Monomial::new(x, t), c)))
    })
}

/// Triple of polynomials sharing a dimension.
pub fn poly_triple() -> impl Strategy<Value = (Poly, Poly, Poly)> {
    (1usize..=3).prop_flat_map(|n| (poly(n, 3, 4, true), poly(n, 3, 4, true), poly(n, 3, 4, true)))
}

/// Random `t`-free seed of total degree at most `max_degree`.
pub fn random_seed<R: Rng>(rng: &mut R, n: usize, max_degree: u32) -> Poly {
    let terms = rng.gen_range(1..=5);
    let mut out = Vec::new();
    for _ in 0..terms {
        let degree = rng.gen_range(0..=max_degree);
        let mut x = vec![0u32; n];
        for _ in 0..degree {
            x[rng.gen_range(0..n)] += 1;
        }
        let c = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into());
        out.push((Monomial::new(x, 0), c));
    }
    Poly::from_terms(n, out)
}

/// `count` distinct rationals strictly inside `(-1, -1/2)`.
pub fn random_samples<R: Rng>(rng: &mut R, count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    while out.len() < count {
        let den: i64 = rng.gen_range(3..=97);
        // num/den in (1/2, 1)
        let lo = den / 2 + 1;
        let hi = den - 1;
        if lo > hi {
            continue;
        }
        let num = rng.gen_range(lo..=hi);
        let v = -Rational::new(num.into(), den.into());
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}
