//! Sparse multivariate polynomials over GF(2).
//!
//! A polynomial is a set of monomials (coefficient 1 each); addition is
//! symmetric difference.  Generators carry a degree and a stratum tag so
//! that graded truncation and base/fiber bookkeeping work uniformly for
//! every ring in the crate.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub type GenId = u32;

/// Which tensor factor of a projectivized bundle a generator lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stratum {
    Base,
    Fiber,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: GenId,
    pub name: String,
    pub degree: u32,
    pub stratum: Stratum,
}

/// Ordered list of named graded generators.  Ids are dense and assignment
/// order fixes the canonical monomial order, so tables list base-stratum
/// generators first and the fiber class last.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    by_name: HashMap<String, GenId>,
}

impl GeneratorTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a generator and returns its id.  Degrees are strictly
    /// positive; graded truncation relies on that.
    pub fn add(&mut self, name: &str, degree: u32, stratum: Stratum) -> GenId {
        assert!(degree > 0, "generator {name} must have positive degree");
        assert!(
            !self.by_name.contains_key(name),
            "duplicate generator {name}"
        );
        let id = self.gens.len() as GenId;
        self.gens.push(Generator {
            id,
            name: name.to_owned(),
            degree,
            stratum,
        });
        self.by_name.insert(name.to_owned(), id);
        id
    }

    pub fn shared(self) -> Arc<Self> {
        Arc::new(self)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, id: GenId) -> &Generator {
        &self.gens[id as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.by_name.get(name).copied()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }
}

/// Product of generator powers, kept sorted by id with no zero exponents.
/// The derived `Ord` (lexicographic on `(id, exponent)` pairs) is the
/// canonical term order used for printing and JSON output.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<(GenId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    pub fn generator(id: GenId) -> Self {
        Monomial::power(id, 1)
    }

    pub fn power(id: GenId, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial {
                exps: vec![(id, e)],
            }
        }
    }

    /// Builds a monomial from arbitrary `(id, exponent)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (GenId, u32)>) -> Self {
        let mut merged: BTreeMap<GenId, u32> = BTreeMap::new();
        for (id, e) in pairs {
            if e > 0 {
                *merged.entry(id).or_insert(0) += e;
            }
        }
        Monomial {
            exps: merged.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[(GenId, u32)] {
        &self.exps
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (a, ae) = self.exps[i];
            let (b, be) = other.exps[j];
            match a.cmp(&b) {
                std::cmp::Ordering::Less => {
                    out.push((a, ae));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b, be));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push((a, ae + be));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.exps[i..]);
        out.extend_from_slice(&other.exps[j..]);
        Monomial { exps: out }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|&(id, k)| (id, k * e)).collect(),
        }
    }

    pub fn power_of(&self, id: GenId) -> u32 {
        self.exps
            .binary_search_by_key(&id, |&(g, _)| g)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    /// The monomial with every factor of `id` removed.
    pub fn without(&self, id: GenId) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .filter(|&&(g, _)| g != id)
                .copied()
                .collect(),
        }
    }

    pub fn degree(&self, table: &GeneratorTable) -> u32 {
        self.exps
            .iter()
            .map(|&(id, e)| table.get(id).degree * e)
            .sum()
    }

    pub fn stratum_degree(&self, table: &GeneratorTable, s: Stratum) -> u32 {
        self.exps
            .iter()
            .filter(|&&(id, _)| table.get(id).stratum == s)
            .map(|&(id, e)| table.get(id).degree * e)
            .sum()
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, table: &GeneratorTable) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (k, &(id, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", table.get(id).name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial over GF(2): the set of monomials with coefficient 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Poly {
    table: Arc<GeneratorTable>,
    terms: BTreeSet<Monomial>,
}

fn toggle(set: &mut BTreeSet<Monomial>, m: Monomial) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

impl Gf2Poly {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        Gf2Poly {
            table: Arc::clone(table),
            terms: BTreeSet::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        Gf2Poly::term(table, Monomial::one())
    }

    pub fn generator(table: &Arc<GeneratorTable>, id: GenId) -> Self {
        Gf2Poly::term(table, Monomial::generator(id))
    }

    pub fn term(table: &Arc<GeneratorTable>, m: Monomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        Gf2Poly {
            table: Arc::clone(table),
            terms,
        }
    }

    /// Sums monomials mod 2: pairs cancel.
    pub fn from_monomials(
        table: &Arc<GeneratorTable>,
        monomials: impl IntoIterator<Item = Monomial>,
    ) -> Self {
        let mut terms = BTreeSet::new();
        for m in monomials {
            toggle(&mut terms, m);
        }
        Gf2Poly {
            table: Arc::clone(table),
            terms,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.contains(m)
    }

    fn same_table(&self, other: &Gf2Poly) {
        assert!(
            self.table == other.table,
            "polynomials from different generator tables"
        );
    }

    pub fn add(&self, other: &Gf2Poly) -> Gf2Poly {
        self.same_table(other);
        let mut terms = self.terms.clone();
        for m in &other.terms {
            toggle(&mut terms, m.clone());
        }
        Gf2Poly {
            table: Arc::clone(&self.table),
            terms,
        }
    }

    pub fn add_assign(&mut self, other: &Gf2Poly) {
        self.same_table(other);
        for m in &other.terms {
            toggle(&mut self.terms, m.clone());
        }
    }

    fn mul_filtered(&self, other: &Gf2Poly, keep: impl Fn(&Monomial) -> bool) -> Gf2Poly {
        self.same_table(other);
        let mut terms = BTreeSet::new();
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mul(b);
                if keep(&m) {
                    toggle(&mut terms, m);
                }
            }
        }
        Gf2Poly {
            table: Arc::clone(&self.table),
            terms,
        }
    }

    pub fn mul(&self, other: &Gf2Poly) -> Gf2Poly {
        self.mul_filtered(other, |_| true)
    }

    /// Product with every term of total degree above `cap` discarded.
    /// Sound to apply at each step of an iterated product because degrees
    /// only grow under multiplication.
    pub fn mul_truncated(&self, other: &Gf2Poly, cap: u32) -> Gf2Poly {
        let table = Arc::clone(&self.table);
        self.mul_filtered(other, move |m| m.degree(&table) <= cap)
    }

    /// Product with every term whose exponent of `id` exceeds `cap`
    /// discarded.
    pub fn mul_truncated_power(&self, other: &Gf2Poly, id: GenId, cap: u32) -> Gf2Poly {
        self.mul_filtered(other, move |m| m.power_of(id) <= cap)
    }

    pub fn truncate_degree_above(&self, cap: u32) -> Gf2Poly {
        Gf2Poly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree(&self.table) <= cap)
                .cloned()
                .collect(),
        }
    }

    /// Squaring is the Frobenius: exponents double, cross terms vanish.
    pub fn square(&self) -> Gf2Poly {
        Gf2Poly {
            table: Arc::clone(&self.table),
            terms: self.terms.iter().map(|m| m.pow(2)).collect(),
        }
    }

    pub fn pow(&self, e: u64) -> Gf2Poly {
        let mut acc = Gf2Poly::one(&self.table);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    pub fn pow_truncated(&self, e: u64, cap: u32) -> Gf2Poly {
        let mut acc = Gf2Poly::one(&self.table);
        let mut base = self.truncate_degree_above(cap);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_truncated(&base, cap);
            }
            e >>= 1;
            if e > 0 {
                base = base.square().truncate_degree_above(cap);
            }
        }
        acc
    }

    /// Homogeneous part of total degree `j`.
    pub fn component(&self, j: u32) -> Gf2Poly {
        Gf2Poly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|m| m.degree(&self.table) == j)
                .cloned()
                .collect(),
        }
    }

    /// Largest total degree among terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|m| m.degree(&self.table)).max()
    }

    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.iter().all(|m| m.degree(&self.table) == d)
    }

    /// Smallest base-stratum degree among terms; `None` for zero.
    pub fn min_base_degree(&self) -> Option<u32> {
        self.terms
            .iter()
            .map(|m| m.stratum_degree(&self.table, Stratum::Base))
            .min()
    }

    pub fn max_power_of(&self, id: GenId) -> u32 {
        self.terms.iter().map(|m| m.power_of(id)).max().unwrap_or(0)
    }

    /// Collects terms carrying `id` to exactly the power `e` and strips
    /// that factor, i.e. the coefficient of `id^e` when the polynomial is
    /// read as a polynomial in `id`.
    pub fn coefficient_of_power(&self, id: GenId, e: u32) -> Gf2Poly {
        Gf2Poly {
            table: Arc::clone(&self.table),
            terms: self
                .terms
                .iter()
                .filter(|m| m.power_of(id) == e)
                .map(|m| m.without(id))
                .collect(),
        }
    }

    /// Rewrites the polynomial in the generators of `target`, replacing
    /// each generator by its assigned polynomial.  Every assignment must
    /// be homogeneous of the generator's degree (zero counts).
    pub fn substitute(
        &self,
        target: &Arc<GeneratorTable>,
        assignment: &BTreeMap<GenId, Gf2Poly>,
    ) -> Result<Gf2Poly> {
        for (&id, value) in assignment {
            let gen = self.table.get(id);
            if !value.is_homogeneous_of(gen.degree) {
                return Err(Error::InhomogeneousSubstitution {
                    gen: gen.name.clone(),
                    degree: gen.degree,
                });
            }
        }
        let mut power_cache: HashMap<(GenId, u32), Gf2Poly> = HashMap::new();
        let mut out = Gf2Poly::zero(target);
        for m in &self.terms {
            let mut term = Gf2Poly::one(target);
            for &(id, e) in m.exps() {
                let image = power_cache.entry((id, e)).or_insert_with(|| {
                    assignment
                        .get(&id)
                        .unwrap_or_else(|| {
                            panic!("no substitution for generator {}", self.table.get(id).name)
                        })
                        .pow(e as u64)
                });
                term = term.mul(image);
                if term.is_zero() {
                    break;
                }
            }
            out.add_assign(&term);
        }
        Ok(out)
    }

    /// Parses the canonical text form: terms joined by `+`, factors by
    /// `*`, powers written `name^e`; `0` and `1` as expected.
    pub fn parse(table: &Arc<GeneratorTable>, input: &str) -> Result<Gf2Poly> {
        let s = input.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = BTreeSet::new();
        for raw_term in s.split('+') {
            let t = raw_term.trim();
            if t.is_empty() {
                return Err(Error::Parse(format!("empty term in `{input}`")));
            }
            if t == "0" {
                continue;
            }
            let mut pairs = Vec::new();
            for raw_factor in t.split('*') {
                let fct = raw_factor.trim();
                if fct == "1" {
                    continue;
                }
                let (name, exp) = match fct.split_once('^') {
                    Some((n, e)) => {
                        let e: u32 = e
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad exponent in `{fct}`")))?;
                        (n.trim(), e)
                    }
                    None => (fct, 1),
                };
                let id = table
                    .lookup(name)
                    .ok_or_else(|| Error::Parse(format!("unknown generator `{name}`")))?;
                pairs.push((id, exp));
            }
            toggle(&mut terms, Monomial::from_pairs(pairs));
        }
        Ok(Gf2Poly {
            table: Arc::clone(table),
            terms,
        })
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            m.write(f, &self.table)?;
        }
        Ok(())
    }
}
