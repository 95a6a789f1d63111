//! Reference computations that share no code with the library pipelines.

#![allow(dead_code)]

use std::collections::BTreeMap;

use ftik_core::{HalfLaurent, LinkDiagram, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Integer Laurent polynomial in `A`, exponent to coefficient.
pub type Poly = BTreeMap<i64, i128>;

fn mul(p: &Poly, q: &Poly) -> Poly {
    let mut out = Poly::new();
    for (a, x) in p {
        for (b, y) in q {
            *out.entry(a + b).or_default() += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

/// Kauffman bracket with `<O> = 1` by summing over all `2^n` states.
/// The A-smoothing joins slots 0-1 and 2-3, the B-smoothing 0-3 and 1-2.
pub fn naive_bracket(d: &LinkDiagram) -> Poly {
    let xs = d.crossings();
    let n = xs.len();
    assert!(n <= 20, "naive state sum is limited to 20 crossings");
    let mut labels: Vec<u32> = xs.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |a: u32| labels.binary_search(&a).unwrap();

    let delta: Poly = [(2, -1), (-2, -1)].into_iter().collect();
    let max_loops = n + d.unknotted() + 1;
    let mut delta_pow = vec![Poly::from([(0, 1)])];
    for k in 1..=max_loops {
        let next = mul(&delta_pow[k - 1], &delta);
        delta_pow.push(next);
    }

    let mut total = Poly::new();
    for state in 0u64..1 << n {
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        let mut a_count = 0i64;
        for (c, x) in xs.iter().enumerate() {
            let pairs = if state >> c & 1 == 0 {
                a_count += 1;
                [(0, 1), (2, 3)]
            } else {
                a_count -= 1;
                [(0, 3), (1, 2)]
            };
            for (p, q) in pairs {
                let (u, v) = (find(&mut parent, index(x[p])), find(&mut parent, index(x[q])));
                parent[u] = v;
            }
        }
        let loops = (0..labels.len()).filter(|&i| find(&mut parent, i) == i).count() + d.unknotted();
        for (e, c) in &delta_pow[loops - 1] {
            *total.entry(e + a_count).or_default() += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Converts a library polynomial with integral coefficients for comparison.
pub fn as_poly<'a>(terms: impl Iterator<Item = (i64, &'a Rational)>) -> Poly {
    terms
        .filter(|(_, c)| **c != Rational::from_integer(BigInt::from(0)))
        .map(|(k, c)| {
            assert!(c.is_integer(), "non-integral coefficient {c}");
            (k, c.to_integer().to_i128().unwrap())
        })
        .collect()
}

/// `v_n = d^n/dh^n V(e^h)` at `h = 0`, read off the Jones coefficients:
/// `V = Σ c_j t^{j/2}` gives `v_n = Σ c_j (j/2)^n`.
pub fn v_closed_form(v: &HalfLaurent, n: u32) -> Rational {
    let num: i128 = as_poly(v.terms()).iter().map(|(j, c)| c * (*j as i128).pow(n)).sum();
    Rational::new(BigInt::from(num), BigInt::from(1i128 << n))
}

/// `a_2` of a knot from the Jones polynomial alone: `V''(1) = -6 a_2`.
pub fn a2_from_jones(v: &HalfLaurent) -> Rational {
    let num: i128 = as_poly(v.terms()).iter().map(|(j, c)| c * (*j as i128) * (*j as i128 - 2)).sum();
    // (j/2)(j/2 - 1) = j (j - 2) / 4
    Rational::new(BigInt::from(-num), BigInt::from(24))
}

/// `v2/3 - v3/3 - v4/6 + 2 v2^2/3` from the closed-form derivatives.
pub fn psi2_closed_form(v: &HalfLaurent) -> Rational {
    let r = |p: i64, q: i64| Rational::new(BigInt::from(p), BigInt::from(q));
    let (v2, v3, v4) = (v_closed_form(v, 2), v_closed_form(v, 3), v_closed_form(v, 4));
    &v2 * r(1, 3) - v3 * r(1, 3) - v4 * r(1, 6) + &v2 * &v2 * r(2, 3)
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
