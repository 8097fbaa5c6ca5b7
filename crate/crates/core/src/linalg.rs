//! Bit-packed GF(2) row reduction with combination tracking, plus a
//! degree-weighted monomial enumerator.  Both are plumbing for the span
//! and membership certificates.

use crate::gf2::{GenId, GeneratorTable, Monomial};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Row space of inserted vectors.  Every reduced row remembers which of
/// the original insertions XOR to it, so membership answers come with a
/// certificate over the inserted rows.
pub(crate) struct Gf2Span {
    by_lead: BTreeMap<u32, (u128, u128)>,
    inserted: u32,
}

impl Gf2Span {
    pub(crate) fn new() -> Self {
        Gf2Span {
            by_lead: BTreeMap::new(),
            inserted: 0,
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.by_lead.len()
    }

    /// Inserts a vector; false means it was already in the span.
    pub(crate) fn insert(&mut self, v: u128) -> bool {
        assert!(self.inserted < 128, "combination tags exhausted");
        let tag = 1u128 << self.inserted;
        self.inserted += 1;
        let (res, combo) = self.reduce(v, tag);
        if res == 0 {
            return false;
        }
        let lead = 127 - res.leading_zeros();
        self.by_lead.insert(lead, (res, combo));
        true
    }

    /// Expresses v as a XOR of inserted rows; the mask has bit i set when
    /// the i-th inserted vector participates.
    pub(crate) fn express(&self, v: u128) -> Option<u128> {
        let (res, combo) = self.reduce(v, 0);
        (res == 0).then_some(combo)
    }

    /// Residual of v after reduction, with the combination used.
    pub(crate) fn residual(&self, v: u128) -> (u128, u128) {
        self.reduce(v, 0)
    }

    fn reduce(&self, mut v: u128, mut combo: u128) -> (u128, u128) {
        while v != 0 {
            let lead = 127 - v.leading_zeros();
            match self.by_lead.get(&lead) {
                Some(&(row, rc)) => {
                    v ^= row;
                    combo ^= rc;
                }
                None => break,
            }
        }
        (v, combo)
    }
}

/// All monomials of the given total degree in the listed generators,
/// in a fixed deterministic order.
pub(crate) fn monomials_of_degree(
    table: &Arc<GeneratorTable>,
    ids: &[GenId],
    total: u32,
) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    rec(table, ids, 0, total, &mut acc, &mut out);
    out
}

fn rec(
    table: &Arc<GeneratorTable>,
    ids: &[GenId],
    idx: usize,
    remaining: u32,
    acc: &mut Vec<(GenId, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(Monomial::from_pairs(acc.iter().copied()));
        return;
    }
    if idx == ids.len() {
        return;
    }
    let d = table.get(ids[idx]).degree;
    for e in 0..=remaining / d {
        if e > 0 {
            acc.push((ids[idx], e));
        }
        rec(table, ids, idx + 1, remaining - e * d, acc, out);
        if e > 0 {
            acc.pop();
        }
    }
}
