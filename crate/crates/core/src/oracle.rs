//! Second-opinion routes used to certify the main computations: geometric
//! series powers that never consult binomial parity, and a term-rewriting
//! normal form independent of the indexed reduction in [`crate::rings`].

use crate::gf2::{GenId, GeneratorTable, Gf2Poly, Monomial};
use crate::rings::{alpha_d_table, RpMuPresentation, ALPHA, D};
use crate::{Error, Result};
use std::sync::Arc;

/// (1 + g)^e truncated above total degree `cap`, computed by repeated
/// multiplication only.  Negative exponents expand the geometric series
/// (1+g)^(-1) = 1 + g + g^2 + ... and raise it to the matching power.
pub fn one_plus_power(
    table: &Arc<GeneratorTable>,
    gen: GenId,
    e: i64,
    cap: u32,
) -> Gf2Poly {
    let one = Gf2Poly::one(table);
    let base = if e >= 0 {
        one.add(&Gf2Poly::generator(table, gen))
    } else {
        let deg = table.get(gen).degree;
        let powers = (0..=cap / deg).map(|i| Monomial::power(gen, i));
        Gf2Poly::from_monomials(table, powers)
    };
    base.pow_truncated(e.unsigned_abs(), cap)
}

/// The displayed total class of the concrete-side bracket at index `l`:
/// (1 + alpha + alpha^4) * sum_{b=0..3} alpha^b (1+d)^(l-b), truncated
/// above total degree `cap`.  No parity shortcut anywhere.
pub fn bracket_expansion(l: i64, cap: u32) -> Gf2Poly {
    let table = alpha_d_table();
    let unit = Gf2Poly::parse(&table, "1 + alpha + alpha^4").unwrap();
    let mut sum = Gf2Poly::zero(&table);
    for b in 0..4i64 {
        let alpha_b = Gf2Poly::term(&table, Monomial::power(ALPHA, b as u32));
        let series = one_plus_power(&table, D, l - b, cap);
        sum = sum.add(&alpha_b.mul_truncated(&series, cap));
    }
    unit.mul_truncated(&sum, cap)
}

/// Single degree-t component of [`bracket_expansion`], computed through
/// carry-free bit vectors over the d-line: bit e of `bit_series(l - b)`
/// is the coefficient of d^e in (1+d)^(l-b), obtained by squaring and
/// multiplying the series itself.  Still no parity shortcut anywhere.
pub fn bracket_component(l: i64, t: u32) -> Gf2Poly {
    assert!(t <= 120, "component degree {t} too large for the bit route");
    let table = alpha_d_table();
    let series: Vec<u128> = (0..4).map(|b| bit_series(l - b, t)).collect();
    let mut monos = Vec::new();
    // alpha-exponent k = a + b with unit part a in {0, 1, 4}, shift b in 0..4.
    for k in 0..=t.min(7) {
        let mut bit = 0u8;
        for a in [0u32, 1, 4] {
            if a > k || k - a > 3 {
                continue;
            }
            bit ^= ((series[(k - a) as usize] >> (t - k)) & 1) as u8;
        }
        if bit == 1 {
            monos.push(Monomial::from_pairs([(ALPHA, k), (D, t - k)]));
        }
    }
    Gf2Poly::from_monomials(&table, monos)
}

/// Bits 0..=cap of (1+d)^e as a carry-free polynomial over GF(2)[d].
fn bit_series(e: i64, cap: u32) -> u128 {
    assert!(cap <= 126);
    let mask = (1u128 << (cap + 1)) - 1;
    // 1 + d, or for negative exponents its inverse, the full geometric series.
    let base = if e >= 0 { 3u128 & mask } else { mask };
    let mut acc = 1u128;
    let mut sq = base;
    let mut k = e.unsigned_abs();
    while k > 0 {
        if k & 1 == 1 {
            acc = clmul(acc, sq, mask);
        }
        k >>= 1;
        if k > 0 {
            sq = clmul(sq, sq, mask);
        }
    }
    acc
}

fn clmul(a: u128, b: u128, mask: u128) -> u128 {
    let mut out = 0u128;
    let mut rest = a;
    let mut shift = 0u32;
    while rest != 0 {
        let tz = rest.trailing_zeros();
        shift += tz;
        out ^= b << shift;
        rest >>= tz;
        rest >>= 1;
        shift += 1;
    }
    out & mask
}

/// Normal form by literal term rewriting: alpha^5 and above is deleted;
/// any term with d-exponent >= m-4 is replaced using
/// d^(m-4) = alpha d^(m-5) + alpha^2 d^(m-6) + alpha^3 d^(m-7).
/// Each rewrite raises the alpha-exponent, so the loop terminates.
pub fn naive_normal_form(pres: &RpMuPresentation, poly: &Gf2Poly) -> Result<Gf2Poly> {
    let table = poly.table();
    let alpha = table.lookup("alpha");
    let d = table.lookup("d");
    let mut split = Vec::new();
    for term in poly.terms() {
        let mut i = 0u32;
        let mut j = 0u32;
        for &(gen, exp) in term.exps() {
            if Some(gen) == alpha {
                i = exp;
            } else if Some(gen) == d {
                j = exp;
            } else {
                return Err(Error::ForeignGenerator(table.get(gen).name.clone()));
            }
        }
        split.push((i, j));
    }

    let out_table = alpha_d_table();
    let top = pres.top_d();
    loop {
        let mut next = Vec::with_capacity(split.len());
        let mut changed = false;
        for (i, j) in split {
            if i >= 5 {
                changed = true;
            } else if j > top {
                changed = true;
                for step in 1..=3 {
                    next.push((i + step, j - step));
                }
            } else {
                next.push((i, j));
            }
        }
        split = cancel(next);
        if !changed {
            break;
        }
    }
    let monomials = split
        .into_iter()
        .map(|(i, j)| Monomial::from_pairs([(ALPHA, i), (D, j)]));
    Ok(Gf2Poly::from_monomials(&out_table, monomials))
}

fn cancel(terms: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    let mut counts = std::collections::BTreeMap::new();
    for t in terms {
        *counts.entry(t).or_insert(0u8) ^= 1;
    }
    counts
        .into_iter()
        .filter_map(|(t, c)| (c == 1).then_some(t))
        .collect()
}

/// Coefficient of the top class alpha^4 d^(m-5) after naive reduction.
pub fn naive_top_coefficient(pres: &RpMuPresentation, poly: &Gf2Poly) -> Result<u8> {
    let reduced = naive_normal_form(pres, poly)?;
    let want = Monomial::from_pairs([(ALPHA, 4), (D, pres.top_d())]);
    Ok(u8::from(reduced.contains(&want)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binomial::parity;
    use crate::rings::{self, RpMuElement};
    use proptest::prelude::*;

    fn parity_series(e: i64, cap: u32) -> Gf2Poly {
        let table = alpha_d_table();
        let monos = (0..=cap)
            .filter(|&k| parity(e, k as i64) == 1)
            .map(|k| Monomial::power(D, k));
        Gf2Poly::from_monomials(&table, monos)
    }

    #[test]
    fn series_power_matches_parity_series() {
        let table = alpha_d_table();
        for e in -20..=20i64 {
            let got = one_plus_power(&table, D, e, 24);
            assert_eq!(got, parity_series(e, 24), "e={e}");
        }
    }

    #[test]
    fn negative_powers_invert_positive_ones() {
        let table = alpha_d_table();
        for s in 1..=16i64 {
            let product = one_plus_power(&table, D, -s, 64)
                .mul_truncated(&one_plus_power(&table, D, s, 64), 64);
            assert_eq!(product, Gf2Poly::one(&table), "s={s}");
        }
    }

    #[test]
    fn bracket_expansion_frozen_component() {
        let pres = RpMuPresentation::new(30).unwrap();
        let full = bracket_expansion(7, 6);
        let comp = full.component(6);
        let got = rings::normal_form(&pres, &comp).unwrap();
        assert_eq!(got.to_string(), "alpha*d^5 + alpha^4*d^2 + d^6");
    }

    #[test]
    fn component_route_matches_full_expansion() {
        for l in [-5i64, 0, 1, 7, 33] {
            let full = bracket_expansion(l, 12);
            for t in 0..=12u32 {
                assert_eq!(bracket_component(l, t), full.component(t), "l={l} t={t}");
            }
        }
    }

    #[test]
    fn naive_normal_form_kills_high_powers() {
        let pres = RpMuPresentation::new(12).unwrap();
        let table = alpha_d_table();
        let p = Gf2Poly::parse(&table, "d^100").unwrap();
        assert!(naive_normal_form(&pres, &p).unwrap().is_zero());
        let q = Gf2Poly::parse(&table, "d^11").unwrap();
        assert_eq!(
            naive_normal_form(&pres, &q).unwrap().to_string(),
            "alpha^4*d^7"
        );
    }

    proptest! {
        #[test]
        fn bit_route_agrees_with_series_route(l in -30i64..230, t in 0u32..24) {
            let want = bracket_expansion(l, t).component(t);
            prop_assert_eq!(bracket_component(l, t), want);
        }

        #[test]
        fn naive_route_agrees_with_indexed_route(
            m in 8u32..24,
            terms in proptest::collection::vec((0u32..7, 0u32..40), 0..12),
        ) {
            let pres = RpMuPresentation::new(m).unwrap();
            let table = alpha_d_table();
            let monos = terms
                .iter()
                .map(|&(i, j)| Monomial::from_pairs([(ALPHA, i), (D, j)]));
            let poly = Gf2Poly::from_monomials(&table, monos);

            let naive = naive_normal_form(&pres, &poly).unwrap();
            let indexed = rings::normal_form(&pres, &poly).unwrap();
            prop_assert_eq!(naive, indexed.to_poly());
        }

        #[test]
        fn naive_reduction_is_ring_compatible(
            m in 8u32..20,
            a in proptest::collection::vec((0u32..5, 0u32..14), 0..6),
            b in proptest::collection::vec((0u32..5, 0u32..14), 0..6),
        ) {
            // Reducing then multiplying agrees with multiplying then reducing.
            let pres = RpMuPresentation::new(m).unwrap();
            let table = alpha_d_table();
            let build = |ts: &[(u32, u32)]| {
                Gf2Poly::from_monomials(
                    &table,
                    ts.iter().map(|&(i, j)| Monomial::from_pairs([(ALPHA, i), (D, j)])),
                )
            };
            let (pa, pb) = (build(&a), build(&b));
            let direct = naive_normal_form(&pres, &pa.mul(&pb)).unwrap();

            let ra = rings::normal_form(&pres, &pa).unwrap();
            let rb = rings::normal_form(&pres, &pb).unwrap();
            let via_ring: RpMuElement = ra.mul(&rb);
            prop_assert_eq!(direct, via_ring.to_poly());
        }
    }
}
