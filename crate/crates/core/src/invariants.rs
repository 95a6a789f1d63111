//! Link invariants built from the Jones and Conway polynomials, and the
//! homology-sphere invariants computed from them by surgery formulas.
//!
//! * `X(L) = V(L) / (t^{1/2} + t^{-1/2})^{#L-1}`, so `X(∅) = 1`.
//! * `Φ(L) = Σ_{L' ⊂ L} (-1)^{#L - #L'} X(L')` over all sublinks.
//! * `φ_i(L) = (-2)^{#L} / (#L + i)! · Φ^{(#L+i)}(1)`.
//! * Casson: `λ_C = Σ_{L'} f_{L'} a_2(L')` where `f` is the framing product.
//! * `λ_2 = Σ_{L' ⊂ L} φ_1(L') f_{L'} #L'/2 + Σ_{L' ⊂ L²} φ_2(L') f_{L'} / 2^{s_2(L')}`,
//!   the second sum running over sublinks of the 0-framed 2-parallel indexed
//!   by tuples `(i_1, …, i_n) ∈ {0,1,2}^n`, with `s_2` the number of `i_ξ = 2`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::diagram::{LinkDiagram, SurgeryPresentation};
use crate::error::{Error, Result};
use crate::series::{delta_series, format_rational, rat, ratio, Rational, TruncSeries, DEFAULT_ORDER};
use crate::skein::{a2, jones_series};

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

fn pow_neg2(n: usize) -> Rational {
    rat(-2).pow(n as i32)
}

fn popcount(m: u64) -> usize {
    m.count_ones() as usize
}

/// Truncation order used for `λ_2` of a presentation with `n` components.
pub fn lambda2_order(n: usize) -> usize {
    (2 * n + 2).max(DEFAULT_ORDER)
}

pub fn x_series(d: &LinkDiagram, order: usize) -> Result<TruncSeries> {
    if d.is_empty() {
        return Ok(TruncSeries::one(order));
    }
    let inv = delta_series(order).invert()?;
    Ok(jones_series(d, order)?.mul_unchecked(&inv.pow(d.num_components() as u32 - 1)))
}

/// Memo for `X` of diagrammatically connected pieces, keyed by PD code.
struct PieceCache {
    order: usize,
    inv_powers: Vec<TruncSeries>,
    seen: HashMap<(Vec<[u32; 4]>, usize), TruncSeries>,
}

impl PieceCache {
    fn new(order: usize) -> Result<Self> {
        let inv = delta_series(order).invert()?;
        Ok(PieceCache { order, inv_powers: vec![TruncSeries::one(order), inv], seen: HashMap::new() })
    }

    fn inv_power(&mut self, k: usize) -> &TruncSeries {
        while self.inv_powers.len() <= k {
            let next = self.inv_powers.last().unwrap().mul_unchecked(&self.inv_powers[1]);
            self.inv_powers.push(next);
        }
        &self.inv_powers[k]
    }

    /// `X` of a sublink, as the product over its connected pieces.
    fn x_of(&mut self, sub: &LinkDiagram) -> Result<TruncSeries> {
        let mut x = TruncSeries::one(self.order);
        for piece in sub.split_pieces() {
            let p = sub.sublink(&piece);
            if p.num_crossings() == 0 {
                continue;
            }
            let key = (p.crossings().to_vec(), p.unknotted());
            if !self.seen.contains_key(&key) {
                let v = jones_series(&p, self.order)?;
                let v = v.mul_unchecked(self.inv_power(p.num_components() - 1));
                self.seen.insert(key.clone(), v);
            }
            x = x.mul_unchecked(&self.seen[&key]);
        }
        Ok(x)
    }
}

fn expand(sub: usize, piece: &[usize]) -> u64 {
    piece.iter().enumerate().filter(|(j, _)| sub >> j & 1 == 1).fold(0, |m, (_, &c)| m | 1 << c)
}

/// Split pieces of a diagram and, per piece, a table over its sublinks.
type PieceTables = (Vec<Vec<usize>>, Vec<Vec<TruncSeries>>);

/// Per split piece of `d`, the table of `X` over sublinks of that piece.
fn piece_tables(d: &LinkDiagram, order: usize) -> Result<PieceTables> {
    let n = d.num_components();
    if n >= 63 {
        return Err(Error::MalformedDiagram(format!("{n} components is too many to enumerate")));
    }
    let mut cache = PieceCache::new(order)?;
    let pieces = d.split_pieces();
    let mut tables = Vec::with_capacity(pieces.len());
    for piece in &pieces {
        let mut t = Vec::with_capacity(1 << piece.len());
        for sub in 0..1usize << piece.len() {
            t.push(cache.x_of(&d.sublink_mask(expand(sub, piece)))?);
        }
        tables.push(t);
    }
    Ok((pieces, tables))
}

/// Combines per-piece tables into one indexed by masks of the whole link,
/// using multiplicativity over split unions. Each piece table must hold 1
/// at the empty sublink, which is the case for both `X` and `Φ`.
fn kronecker(n: usize, order: usize, pieces: &[Vec<usize>], tables: &[Vec<TruncSeries>]) -> Vec<TruncSeries> {
    let one = TruncSeries::one(order);
    let mut full = vec![one.clone(); 1 << n];
    let mut done = 0u64;
    for (piece, t) in pieces.iter().zip(tables) {
        debug_assert_eq!(t[0], one);
        let mut lower = done;
        loop {
            for (sub, f) in t.iter().enumerate().skip(1) {
                let v = if *f == one {
                    full[lower as usize].clone()
                } else if f.is_zero() {
                    TruncSeries::zero(order)
                } else {
                    full[lower as usize].mul_unchecked(f)
                };
                full[(lower | expand(sub, piece)) as usize] = v;
            }
            if lower == 0 {
                break;
            }
            lower = (lower - 1) & done;
        }
        done |= expand(t.len() - 1, piece);
    }
    full
}

/// `X` of every sublink of `d`, indexed by component bitmask.
///
/// `X` is multiplicative under split union, so only sublinks within each
/// diagrammatically connected piece are evaluated; connected pieces of
/// those are memoized by PD code.
pub fn x_table(d: &LinkDiagram, order: usize) -> Result<Vec<TruncSeries>> {
    let (pieces, tables) = piece_tables(d, order)?;
    Ok(kronecker(d.num_components(), order, &pieces, &tables))
}

/// In-place transform `f[S] <- Σ_{T ⊂ S} (-1)^{|S|-|T|} f[T]`.
fn alternating_subset_sum(table: &mut [TruncSeries]) {
    let n = table.len().trailing_zeros();
    for bit in 0..n {
        let b = 1usize << bit;
        for mask in 0..table.len() {
            if mask & b != 0 {
                let lower = table[mask ^ b].clone();
                table[mask] = table[mask].sub_unchecked(&lower);
            }
        }
    }
}

/// `Φ` of every sublink of `d`, indexed by component bitmask.
pub fn big_phi_table(d: &LinkDiagram, order: usize) -> Result<Vec<TruncSeries>> {
    let (pieces, mut tables) = piece_tables(d, order)?;
    for t in &mut tables {
        alternating_subset_sum(t);
    }
    Ok(kronecker(d.num_components(), order, &pieces, &tables))
}

/// `Φ(L)` as the literal alternating sum of `X` over all sublinks.
pub fn big_phi(d: &LinkDiagram, order: usize) -> Result<TruncSeries> {
    let n = d.num_components();
    let mut acc = TruncSeries::zero(order);
    for mask in 0..1u64 << n {
        let x = x_series(&d.sublink_mask(mask), order)?;
        acc = if (n - popcount(mask)).is_multiple_of(2) { acc.add_unchecked(&x) } else { acc.sub_unchecked(&x) };
    }
    Ok(acc)
}

/// `φ_i` from an already computed `Φ` of a `k`-component link.
fn phi_from_series(phi: &TruncSeries, k: usize, i: usize) -> Result<Rational> {
    let need = k + i;
    if phi.order() < need {
        return Err(Error::InsufficientTruncation { need, have: phi.order() });
    }
    Ok(pow_neg2(k) / factorial(need) * phi.derivative_at_one(need)?)
}

pub fn phi_i(d: &LinkDiagram, i: usize, order: usize) -> Result<Rational> {
    let k = d.num_components();
    if order < k + i {
        return Err(Error::InsufficientTruncation { need: k + i, have: order });
    }
    let phi = big_phi_table(d, order)?.pop().expect("table has the full mask");
    phi_from_series(&phi, k, i)
}

/// Casson invariant by the sublink sum of framing products times `a_2`.
pub fn casson(sp: &SurgeryPresentation) -> Result<Rational> {
    let d = sp.diagram();
    let n = d.num_components();
    let mut acc = Rational::zero();
    for mask in 1..1u64 << n {
        let keep: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let a = a2(&d.sublink(&keep))?;
        acc += a * rat(sp.framing_product(&keep));
    }
    Ok(acc)
}

pub fn lambda1(sp: &SurgeryPresentation) -> Result<Rational> {
    Ok(casson(sp)? * rat(6))
}

pub fn lambda2(sp: &SurgeryPresentation) -> Result<Rational> {
    lambda2_with_order(sp, lambda2_order(sp.num_components()))
}

pub fn lambda2_with_order(sp: &SurgeryPresentation, order: usize) -> Result<Rational> {
    let d = sp.diagram();
    let n = d.num_components();
    if n == 0 {
        return Ok(Rational::zero());
    }
    let need = 2 * n + 2;
    if order < need {
        return Err(Error::InsufficientTruncation { need, have: order });
    }
    let framings = d.framings();

    let mut first = Rational::zero();
    let phi_l = big_phi_table(d, order)?;
    for mask in 1..1u64 << n {
        let k = popcount(mask);
        let f: i64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| framings[i]).product();
        first += phi_from_series(&phi_l[mask as usize], k, 1)? * rat(f) * ratio(k as i64, 2);
    }

    let parallel = d.parallel(2)?;
    let phi_l2 = big_phi_table(&parallel.diagram, order)?;
    let mut second = Rational::zero();
    let mut tuple = vec![0usize; n];
    loop {
        // Next tuple in {0,1,2}^n, skipping the empty one.
        let mut i = 0;
        while i < n && tuple[i] == 2 {
            tuple[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        tuple[i] += 1;

        let mask = parallel.mask_for_tuple(&tuple);
        let k: usize = tuple.iter().sum();
        let s2 = tuple.iter().filter(|&&t| t == 2).count();
        let f: i64 = tuple.iter().zip(framings).map(|(&t, &f)| f.pow(t as u32)).product();
        let phi2 = phi_from_series(&phi_l2[mask as usize], k, 2)?;
        second += phi2 * rat(f) / rat(1 << s2);
    }
    Ok(first + second)
}

/// `v_i(L)`: the `i`-th derivative of `V(L; e^h)` at `h = 0`.
pub fn v_i(d: &LinkDiagram, i: usize, order: usize) -> Result<Rational> {
    if i > order {
        return Err(Error::InsufficientTruncation { need: i, have: order });
    }
    jones_series(d, order)?.in_h().derivative_at_one(i)
}

/// `v_2/3 - v_3/3 - v_4/6 + 2 v_2^2/3`, proposed as the knot invariant
/// induced by `λ_2` through +1 surgery.
///
/// It matches `lambda2` of the +1-framed knot on torus knots such as the
/// trefoils, but not in general: the figure-eight gives 21 here and 69 from
/// the surgery formula. See the README.
pub fn psi2(k: &LinkDiagram) -> Result<Rational> {
    psi2_with_order(k, DEFAULT_ORDER)
}

pub fn psi2_with_order(k: &LinkDiagram, order: usize) -> Result<Rational> {
    if order < 4 {
        return Err(Error::InsufficientTruncation { need: 4, have: order });
    }
    if k.num_components() != 1 {
        return Err(Error::MalformedDiagram(format!("psi2 needs a knot, got {} components", k.num_components())));
    }
    let s = jones_series(k, order)?.in_h();
    let v2 = s.derivative_at_one(2)?;
    let v3 = s.derivative_at_one(3)?;
    let v4 = s.derivative_at_one(4)?;
    Ok(&v2 * ratio(1, 3) - v3 * ratio(1, 3) - v4 * ratio(1, 6) + &v2 * &v2 * ratio(2, 3))
}

/// An exact invariant value with what it was computed from.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub name: String,
    pub value: Rational,
    pub presentation: String,
    pub order: usize,
}

impl InvariantReport {
    pub fn value_string(&self) -> String {
        format_rational(&self.value)
    }
}
