//! The mod-2 cohomology ring of the projectivization of the concrete-side
//! bundle: Z2[alpha, d] / (alpha^5, d^(m-4) + alpha d^(m-5) + alpha^2 d^(m-6)
//! + alpha^3 d^(m-7)).
//!
//! Elements are stored as one 5-bit mask per d-exponent (bit i = alpha^i),
//! indexed by d-exponent 0..=m-5.  Rewriting d^(m-4) strictly raises the
//! alpha-exponent, so reduction terminates in at most four steps per term.

use crate::gf2::{GenId, GeneratorTable, Gf2Poly, Monomial, Stratum};
use crate::{Error, Result};
use std::fmt;
use std::sync::{Arc, LazyLock};

pub const ALPHA: GenId = 0;
pub const D: GenId = 1;

static ALPHA_D: LazyLock<Arc<GeneratorTable>> = LazyLock::new(|| {
    let mut t = GeneratorTable::new();
    assert_eq!(t.add("alpha", 1, Stratum::Base), ALPHA);
    assert_eq!(t.add("d", 1, Stratum::Fiber), D);
    t.shared()
});

/// The shared two-generator table {alpha, d} every concrete-side
/// polynomial lives over.
pub fn alpha_d_table() -> Arc<GeneratorTable> {
    Arc::clone(&ALPHA_D)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RpMuPresentation {
    m: u32,
}

impl RpMuPresentation {
    /// m is the total dimension; the fiber bundle needs at least one
    /// trivial summand, so m >= 8.
    pub fn new(m: u32) -> Result<Self> {
        if m < 8 {
            return Err(Error::PresentationTooSmall(m));
        }
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn fiber_rank(&self) -> u32 {
        self.m - 4
    }

    /// Largest d-exponent in the monomial basis.
    pub fn top_d(&self) -> u32 {
        self.m - 5
    }
}

const ALPHA_MASK: u16 = 0x1f;

/// Carryless 5-bit product; bits at alpha^5 and above are discarded.
fn clmul5(a: u8, b: u8) -> u8 {
    let mut acc: u16 = 0;
    for i in 0..5 {
        if a & (1 << i) != 0 {
            acc ^= (b as u16) << i;
        }
    }
    (acc & ALPHA_MASK) as u8
}

/// Reduces an extended coefficient vector in place: every mask above the
/// basis range is rewritten downward via
/// d^j -> alpha d^(j-1) + alpha^2 d^(j-2) + alpha^3 d^(j-3).
fn reduce(ext: &mut Vec<u8>, pres: &RpMuPresentation) {
    let top = pres.top_d() as usize;
    for j in (top + 1..ext.len()).rev() {
        let mask = ext[j];
        if mask == 0 {
            continue;
        }
        ext[j] = 0;
        for step in 1..=3usize {
            let shifted = ((mask as u16) << step & ALPHA_MASK) as u8;
            ext[j - step] ^= shifted;
        }
    }
    ext.truncate(top + 1);
    ext.resize(top + 1, 0);
}

#[derive(Clone, PartialEq, Eq)]
pub struct RpMuElement {
    pres: RpMuPresentation,
    coeffs: Vec<u8>,
}

impl RpMuElement {
    pub fn zero(pres: &RpMuPresentation) -> Self {
        Self {
            pres: *pres,
            coeffs: vec![0; pres.top_d() as usize + 1],
        }
    }

    pub fn one(pres: &RpMuPresentation) -> Self {
        Self::monomial(pres, 0, 0)
    }

    /// alpha^i d^j, reduced.  alpha^5 and above is zero.
    pub fn monomial(pres: &RpMuPresentation, i: u32, j: u32) -> Self {
        let mut out = Self::zero(pres);
        if i >= 5 {
            return out;
        }
        if j <= pres.top_d() {
            out.coeffs[j as usize] = 1 << i;
            return out;
        }
        let mut ext = vec![0u8; j as usize + 1];
        ext[j as usize] = 1 << i;
        reduce(&mut ext, pres);
        out.coeffs = ext;
        out
    }

    pub fn d_power(pres: &RpMuPresentation, j: u32) -> Self {
        Self::monomial(pres, 0, j)
    }

    pub fn presentation(&self) -> &RpMuPresentation {
        &self.pres
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&m| m == 0)
    }

    /// Coefficient of alpha^i d^j in the reduced basis.
    pub fn coefficient(&self, i: u32, j: u32) -> u8 {
        if i >= 5 || j > self.pres.top_d() {
            return 0;
        }
        (self.coeffs[j as usize] >> i) & 1
    }

    /// Coefficient of the top class alpha^4 d^(m-5).
    pub fn top_coefficient(&self) -> u8 {
        self.coefficient(4, self.pres.top_d())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.pres, other.pres, "mixed presentations");
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a ^ b)
            .collect();
        Self { pres: self.pres, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.pres, other.pres, "mixed presentations");
        let mut ext = vec![0u8; self.coeffs.len() + other.coeffs.len()];
        for (ja, &ma) in self.coeffs.iter().enumerate() {
            if ma == 0 {
                continue;
            }
            for (jb, &mb) in other.coeffs.iter().enumerate() {
                if mb == 0 {
                    continue;
                }
                ext[ja + jb] ^= clmul5(ma, mb);
            }
        }
        reduce(&mut ext, &self.pres);
        Self { pres: self.pres, coeffs: ext }
    }

    pub fn mul_d_power(&self, j: u32) -> Self {
        let mut ext = vec![0u8; self.coeffs.len() + j as usize];
        for (k, &m) in self.coeffs.iter().enumerate() {
            ext[k + j as usize] = m;
        }
        reduce(&mut ext, &self.pres);
        Self { pres: self.pres, coeffs: ext }
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.pres);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Image under alpha -> 0, i.e. the residue modulo the ideal generated
    /// by the base class.  The result is a pure-d polynomial.
    pub fn mod_base_ideal(&self) -> Gf2Poly {
        let table = alpha_d_table();
        let terms = self.coeffs.iter().enumerate().filter_map(|(j, m)| {
            (m & 1 == 1).then(|| Monomial::power(D, j as u32))
        });
        Gf2Poly::from_monomials(&table, terms)
    }

    pub fn to_poly(&self) -> Gf2Poly {
        let table = alpha_d_table();
        let mut terms = Vec::new();
        for (j, &mask) in self.coeffs.iter().enumerate() {
            for i in 0..5u32 {
                if mask & (1 << i) != 0 {
                    terms.push(Monomial::from_pairs([
                        (ALPHA, i),
                        (D, j as u32),
                    ]));
                }
            }
        }
        Gf2Poly::from_monomials(&table, terms)
    }
}

impl fmt::Display for RpMuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_poly().fmt(f)
    }
}

impl fmt::Debug for RpMuElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RpMuElement(m={}, {})", self.pres.m, self)
    }
}

/// Reduces an arbitrary polynomial in alpha and d to the basis
/// representation.  The polynomial may live over a larger table as long
/// as its terms only mention generators named `alpha` and `d`.
pub fn normal_form(pres: &RpMuPresentation, poly: &Gf2Poly) -> Result<RpMuElement> {
    let table = poly.table();
    let alpha = table.lookup("alpha");
    let d = table.lookup("d");
    let mut ext = vec![0u8; pres.top_d() as usize + 1];
    for term in poly.terms() {
        let mut i = 0u32;
        let mut j = 0u32;
        for &(gen, exp) in term.exps() {
            if Some(gen) == alpha {
                i = exp;
            } else if Some(gen) == d {
                j = exp;
            } else {
                return Err(Error::ForeignGenerator(
                    table.get(gen).name.clone(),
                ));
            }
        }
        if i >= 5 {
            continue;
        }
        if ext.len() <= j as usize {
            ext.resize(j as usize + 1, 0);
        }
        ext[j as usize] ^= 1 << i;
    }
    reduce(&mut ext, pres);
    Ok(RpMuElement { pres: *pres, coeffs: ext })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pres(m: u32) -> RpMuPresentation {
        RpMuPresentation::new(m).unwrap()
    }

    #[test]
    fn rejects_tiny_m() {
        assert!(matches!(
            RpMuPresentation::new(7),
            Err(Error::PresentationTooSmall(7))
        ));
        assert!(RpMuPresentation::new(8).is_ok());
    }

    #[test]
    fn ring_identities_hold() {
        for m in 8..=60 {
            let p = pres(m);
            let top = RpMuElement::monomial(&p, 4, m - 5);
            assert_eq!(RpMuElement::d_power(&p, m - 1), top, "d^(m-1), m={m}");
            assert!(RpMuElement::monomial(&p, 1, m - 2).is_zero(), "m={m}");
            assert!(RpMuElement::monomial(&p, 2, m - 3).is_zero(), "m={m}");
            assert_eq!(RpMuElement::monomial(&p, 3, m - 4), top, "m={m}");
        }
    }

    #[test]
    fn frozen_example_at_m_20() {
        let p = pres(20);
        let e = RpMuElement::d_power(&p, 17);
        assert_eq!(e.to_poly().to_string(), "alpha^4*d^13");
    }

    #[test]
    fn defining_relation_reduces_to_zero() {
        for m in 8..=40 {
            let p = pres(m);
            let lhs = RpMuElement::d_power(&p, m - 4)
                .add(&RpMuElement::monomial(&p, 1, m - 5))
                .add(&RpMuElement::monomial(&p, 2, m - 6))
                .add(&RpMuElement::monomial(&p, 3, m - 7));
            assert!(lhs.is_zero(), "m={m}");
        }
    }

    #[test]
    fn normal_form_rejects_foreign_generators() {
        let mut t = GeneratorTable::new();
        t.add("alpha", 1, Stratum::Base);
        t.add("d", 1, Stratum::Fiber);
        t.add("c", 1, Stratum::Fiber);
        let t = t.shared();
        let p = pres(12);
        let ok = Gf2Poly::parse(&t, "alpha*d^3 + d").unwrap();
        assert!(normal_form(&p, &ok).is_ok());
        let bad = Gf2Poly::parse(&t, "alpha + c").unwrap();
        assert!(matches!(
            normal_form(&p, &bad),
            Err(Error::ForeignGenerator(name)) if name == "c"
        ));
    }

    #[test]
    fn mod_base_ideal_strips_alpha_rows() {
        let p = pres(12);
        let e = RpMuElement::d_power(&p, 5)
            .add(&RpMuElement::monomial(&p, 2, 3))
            .add(&RpMuElement::monomial(&p, 0, 2));
        assert_eq!(e.mod_base_ideal().to_string(), "d^2 + d^5");
    }

    // A deliberately different reduction strategy: rewrite one reducible
    // term at a time, picking the term by a caller-supplied preference,
    // working on a raw term list.
    fn rewrite_one_at_a_time(pres: &RpMuPresentation, start: Vec<(u32, u32)>, pick: u64) -> RpMuElement {
        let mut terms: Vec<(u32, u32)> = start;
        let mut pick = pick;
        loop {
            let mut seen = std::collections::BTreeMap::new();
            for &(i, j) in &terms {
                *seen.entry((i, j)).or_insert(0u32) ^= 1;
            }
            terms = seen
                .into_iter()
                .filter(|&((i, _), c)| c == 1 && i < 5)
                .map(|((i, j), _)| (i, j))
                .collect();
            let reducible: Vec<usize> = terms
                .iter()
                .enumerate()
                .filter(|(_, &(_, j))| j > pres.top_d())
                .map(|(k, _)| k)
                .collect();
            if reducible.is_empty() {
                break;
            }
            let k = reducible[(pick % reducible.len() as u64) as usize];
            pick = pick.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let (i, j) = terms.swap_remove(k);
            for step in 1..=3 {
                terms.push((i + step, j - step));
            }
        }
        let mut out = RpMuElement::zero(pres);
        for (i, j) in terms {
            out = out.add(&RpMuElement::monomial(pres, i, j));
        }
        out
    }

    proptest! {
        #[test]
        fn reduction_is_confluent(
            m in 8u32..24,
            terms in proptest::collection::vec((0u32..5, 0u32..40), 0..12),
            pick in any::<u64>(),
        ) {
            let p = pres(m);
            let slow = rewrite_one_at_a_time(&p, terms.clone(), pick);
            let mut fast = RpMuElement::zero(&p);
            for (i, j) in terms {
                fast = fast.add(&RpMuElement::monomial(&p, i, j));
            }
            prop_assert_eq!(slow, fast);
        }

        #[test]
        fn mul_is_commutative_and_distributes(
            m in 8u32..20,
            a in proptest::collection::vec((0u32..5, 0u32..12), 0..6),
            b in proptest::collection::vec((0u32..5, 0u32..12), 0..6),
            c in proptest::collection::vec((0u32..5, 0u32..12), 0..6),
        ) {
            let p = pres(m);
            let build = |ts: &[(u32, u32)]| {
                let mut e = RpMuElement::zero(&p);
                for &(i, j) in ts {
                    e = e.add(&RpMuElement::monomial(&p, i, j));
                }
                e
            };
            let (a, b, c) = (build(&a), build(&b), build(&c));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(
                a.mul(&b.add(&c)),
                a.mul(&b).add(&a.mul(&c))
            );
        }

        #[test]
        fn pow_matches_repeated_mul(
            m in 8u32..16,
            a in proptest::collection::vec((0u32..5, 0u32..10), 0..5),
            e in 0u64..7,
        ) {
            let p = pres(m);
            let mut base = RpMuElement::zero(&p);
            for (i, j) in a {
                base = base.add(&RpMuElement::monomial(&p, i, j));
            }
            let mut slow = RpMuElement::one(&p);
            for _ in 0..e {
                slow = slow.mul(&base);
            }
            prop_assert_eq!(base.pow(e), slow);
        }

        #[test]
        fn to_poly_round_trips(
            m in 8u32..20,
            a in proptest::collection::vec((0u32..5, 0u32..30), 0..8),
        ) {
            let p = pres(m);
            let mut e = RpMuElement::zero(&p);
            for (i, j) in a {
                e = e.add(&RpMuElement::monomial(&p, i, j));
            }
            let back = normal_form(&p, &e.to_poly()).unwrap();
            prop_assert_eq!(back, e);
        }

        #[test]
        fn mul_d_power_matches_mul(
            m in 8u32..20,
            a in proptest::collection::vec((0u32..5, 0u32..12), 0..6),
            j in 0u32..25,
        ) {
            let p = pres(m);
            let mut e = RpMuElement::zero(&p);
            for (i, jj) in a {
                e = e.add(&RpMuElement::monomial(&p, i, jj));
            }
            prop_assert_eq!(e.mul_d_power(j), e.mul(&RpMuElement::d_power(&p, j)));
        }
    }
}
