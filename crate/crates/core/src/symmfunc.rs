//! Symmetric-function side of the twist classes f_omega: monomial
//! symmetric functions evaluated at the tangent root values, rewriting
//! into elementary symmetric polynomials, and the span comparison between
//! the computed and the stated families.

use crate::gf2::{GenId, GeneratorTable, Gf2Poly, Monomial, Stratum};
use crate::linalg::{monomials_of_degree, Gf2Span};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// The five partitions of 4, indexing the classes f_omega.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Partition4 {
    P1111,
    P211,
    P22,
    P31,
    P4,
}

impl Partition4 {
    pub fn all() -> [Partition4; 5] {
        [
            Partition4::P1111,
            Partition4::P211,
            Partition4::P22,
            Partition4::P31,
            Partition4::P4,
        ]
    }

    pub fn parts(&self) -> &'static [u32] {
        match self {
            Partition4::P1111 => &[1, 1, 1, 1],
            Partition4::P211 => &[2, 1, 1],
            Partition4::P22 => &[2, 2],
            Partition4::P31 => &[3, 1],
            Partition4::P4 => &[4],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Partition4::P1111 => "1111",
            Partition4::P211 => "211",
            Partition4::P22 => "22",
            Partition4::P31 => "31",
            Partition4::P4 => "4",
        }
    }

    /// One-based position in the conventional listing.
    pub fn index(&self) -> usize {
        match self {
            Partition4::P1111 => 1,
            Partition4::P211 => 2,
            Partition4::P22 => 3,
            Partition4::P31 => 4,
            Partition4::P4 => 5,
        }
    }
}

/// Tangent roots of a projectivized bundle together with their values
/// under z -> z^2 + z * line.  Zero-valued roots model trivial summands.
pub struct RootSystem {
    table: Arc<GeneratorTable>,
    values: Vec<Gf2Poly>,
}

impl RootSystem {
    pub fn line_shifted(table: &Arc<GeneratorTable>, line: GenId, roots: &[GenId]) -> Self {
        let line_poly = Gf2Poly::generator(table, line);
        let values = roots
            .iter()
            .map(|&z| {
                let zp = Gf2Poly::generator(table, z);
                zp.mul(&zp).add(&zp.mul(&line_poly))
            })
            .collect();
        RootSystem {
            table: Arc::clone(table),
            values,
        }
    }

    pub fn with_zero_roots(mut self, count: u32) -> Self {
        for _ in 0..count {
            self.values.push(Gf2Poly::zero(&self.table));
        }
        self
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }
}

/// Monomial symmetric function of the root values: the sum over distinct
/// assignments of the parts of omega to roots.
pub fn f_omega_raw(omega: Partition4, system: &RootSystem) -> Gf2Poly {
    m_lambda_over(&system.table, &system.values, omega.parts())
}

/// Monomial symmetric polynomial m_lambda in the listed variables.
pub fn monomial_symmetric(
    table: &Arc<GeneratorTable>,
    vars: &[GenId],
    lam: &[u32],
) -> Gf2Poly {
    let values: Vec<Gf2Poly> = vars
        .iter()
        .map(|&v| Gf2Poly::generator(table, v))
        .collect();
    m_lambda_over(table, &values, lam)
}

/// k-th elementary symmetric polynomial in the listed variables.
pub fn elementary(table: &Arc<GeneratorTable>, vars: &[GenId], k: usize) -> Gf2Poly {
    if k == 0 {
        return Gf2Poly::one(table);
    }
    monomial_symmetric(table, vars, &vec![1; k])
}

fn m_lambda_over(table: &Arc<GeneratorTable>, values: &[Gf2Poly], lam: &[u32]) -> Gf2Poly {
    assert!(!lam.is_empty() && lam.iter().all(|&p| p >= 1));
    assert!(lam.windows(2).all(|w| w[0] >= w[1]), "parts must descend");
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &part in lam {
        match groups.last_mut() {
            Some((p, m)) if *p == part => *m += 1,
            _ => groups.push((part, 1)),
        }
    }
    let mut out = Gf2Poly::zero(table);
    let mut used = vec![false; values.len()];
    rec_groups(
        table,
        values,
        &groups,
        0,
        &mut used,
        &Gf2Poly::one(table),
        &mut out,
    );
    out
}

fn rec_groups(
    table: &Arc<GeneratorTable>,
    values: &[Gf2Poly],
    groups: &[(u32, usize)],
    g: usize,
    used: &mut Vec<bool>,
    acc: &Gf2Poly,
    out: &mut Gf2Poly,
) {
    if g == groups.len() {
        *out = out.add(acc);
        return;
    }
    let (part, mult) = groups[g];
    rec_pick(table, values, groups, g, part, mult, 0, used, acc, out);
}

#[allow(clippy::too_many_arguments)]
fn rec_pick(
    table: &Arc<GeneratorTable>,
    values: &[Gf2Poly],
    groups: &[(u32, usize)],
    g: usize,
    part: u32,
    left: usize,
    start: usize,
    used: &mut Vec<bool>,
    acc: &Gf2Poly,
    out: &mut Gf2Poly,
) {
    if left == 0 {
        rec_groups(table, values, groups, g + 1, used, acc, out);
        return;
    }
    for i in start..values.len() {
        if used[i] {
            continue;
        }
        let next = acc.mul(&values[i].pow(part as u64));
        if next.is_zero() {
            continue;
        }
        used[i] = true;
        rec_pick(
            table,
            values,
            groups,
            g,
            part,
            left - 1,
            i + 1,
            used,
            &next,
            out,
        );
        used[i] = false;
    }
}

/// Polynomial ring in named elementary symmetric classes.
pub struct SigmaRing {
    table: Arc<GeneratorTable>,
    gens: Vec<GenId>,
}

impl SigmaRing {
    pub fn new(count: u32) -> Self {
        Self::named("s", count)
    }

    pub fn named(prefix: &str, count: u32) -> Self {
        let mut t = GeneratorTable::new();
        let gens = (1..=count)
            .map(|i| t.add(&format!("{prefix}{i}"), i, Stratum::Base))
            .collect();
        SigmaRing {
            table: t.shared(),
            gens,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn gens(&self) -> &[GenId] {
        &self.gens
    }

    pub fn parse(&self, input: &str) -> Result<Gf2Poly> {
        Gf2Poly::parse(&self.table, input)
    }
}

/// Rewrites a symmetric polynomial in the listed variables as a
/// polynomial in elementary symmetric classes.  Asymmetric input is
/// rejected, as is any term mentioning a generator outside `vars`.
pub fn elementary_rewrite(
    poly: &Gf2Poly,
    vars: &[GenId],
    ring: &SigmaRing,
) -> Result<Gf2Poly> {
    assert!(ring.gens.len() >= vars.len(), "sigma ring too small");
    let table = poly.table();
    let var_set: BTreeSet<GenId> = vars.iter().copied().collect();
    for term in poly.terms() {
        for &(gen, _) in term.exps() {
            if !var_set.contains(&gen) {
                return Err(Error::ForeignGenerator(table.get(gen).name.clone()));
            }
        }
    }
    for w in 0..vars.len().saturating_sub(1) {
        let mut map: BTreeMap<GenId, Gf2Poly> = table
            .generators()
            .iter()
            .enumerate()
            .map(|(id, _)| {
                let id = id as GenId;
                (id, Gf2Poly::generator(table, id))
            })
            .collect();
        map.insert(vars[w], Gf2Poly::generator(table, vars[w + 1]));
        map.insert(vars[w + 1], Gf2Poly::generator(table, vars[w]));
        let swapped = poly.substitute(table, &map)?;
        if &swapped != poly {
            return Err(Error::Asymmetric(format!(
                "not invariant under swapping {} and {}",
                table.get(vars[w]).name,
                table.get(vars[w + 1]).name
            )));
        }
    }

    let mut elem_cache: Vec<Option<Gf2Poly>> = vec![None; vars.len() + 1];
    let mut rest = poly.clone();
    let mut out = Gf2Poly::zero(&ring.table);
    let mut rounds = 0;
    while !rest.is_zero() {
        rounds += 1;
        if rounds > 100_000 {
            return Err(Error::Asymmetric(
                "elementary rewriting did not terminate".into(),
            ));
        }
        let lead = rest
            .terms()
            .map(|t| sorted_exponents(t, vars))
            .max()
            .unwrap();
        let mut sig_pairs = Vec::new();
        let mut expanded = Gf2Poly::one(table);
        for k in 0..lead.len() {
            let next = if k + 1 < lead.len() { lead[k + 1] } else { 0 };
            let e = lead[k] - next;
            if e == 0 {
                continue;
            }
            sig_pairs.push((ring.gens[k], e));
            let ek = elem_cache[k + 1]
                .get_or_insert_with(|| elementary(table, vars, k + 1))
                .clone();
            expanded = expanded.mul(&ek.pow(e as u64));
        }
        out = out.add(&Gf2Poly::term(&ring.table, Monomial::from_pairs(sig_pairs)));
        rest = rest.add(&expanded);
    }
    Ok(out)
}

fn sorted_exponents(term: &Monomial, vars: &[GenId]) -> Vec<u32> {
    let mut exps: Vec<u32> = vars.iter().map(|&v| term.power_of(v)).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    while exps.last() == Some(&0) {
        exps.pop();
    }
    exps
}

/// Substitutes each sigma class by the matching elementary polynomial.
pub fn expand_sigma(
    ring: &SigmaRing,
    poly: &Gf2Poly,
    table: &Arc<GeneratorTable>,
    vars: &[GenId],
) -> Result<Gf2Poly> {
    let map: BTreeMap<GenId, Gf2Poly> = ring
        .gens
        .iter()
        .enumerate()
        .map(|(k, &g)| (g, elementary(table, vars, k + 1)))
        .collect();
    poly.substitute(table, &map)
}

/// The computed and renamed forms of the degree-4 line coefficient of
/// f_omega on the concrete side.
pub struct NuForms {
    pub sigma: Gf2Poly,
    pub v_form: Gf2Poly,
}

/// Coefficient of d^4 in f_omega for the concrete side with four ambient
/// roots and four bundle roots, rewritten in the elementary classes
/// sigma_i of all eight roots.
pub fn fomega_nu_d4(omega: Partition4) -> Result<NuForms> {
    let mut t = GeneratorTable::new();
    let mut roots = Vec::new();
    for i in 1..=4u32 {
        roots.push(t.add(&format!("x{i}"), 1, Stratum::Base));
    }
    for i in 1..=4u32 {
        roots.push(t.add(&format!("y{i}"), 1, Stratum::Base));
    }
    let d = t.add("d", 1, Stratum::Fiber);
    let table = t.shared();
    let system = RootSystem::line_shifted(&table, d, &roots);
    let f = f_omega_raw(omega, &system);
    let coeff = f.coefficient_of_power(d, 4);
    let ring = SigmaRing::new(8);
    let sigma = elementary_rewrite(&coeff, &roots, &ring)?.truncate_degree_above(4);
    let v_ring = SigmaRing::named("V", 8);
    let map: BTreeMap<GenId, Gf2Poly> = ring
        .gens
        .iter()
        .zip(v_ring.gens.iter())
        .map(|(&s, &v)| (s, Gf2Poly::generator(&v_ring.table, v)))
        .collect();
    let v_form = sigma.substitute(&v_ring.table, &map)?;
    Ok(NuForms { sigma, v_form })
}

/// The stated sigma form of the same coefficient.
pub fn stated_nu_d4(omega: Partition4, ring: &SigmaRing) -> Gf2Poly {
    let text = match omega {
        Partition4::P1111 => "s4",
        Partition4::P211 => "s1*s3 + s4",
        Partition4::P22 => "s2^2 + s1*s3 + s4",
        Partition4::P31 => "s1^2*s2 + s2^2 + s1*s3 + s4",
        Partition4::P4 => "s1^4 + s1^2*s2 + s2^2 + s1*s3 + s4",
    };
    ring.parse(text).unwrap()
}

#[derive(Clone, Debug)]
pub struct SpanReport {
    pub computed_rank: usize,
    pub stated_rank: usize,
    pub equal: bool,
    /// Degree-4 sigma monomials expressed as XORs of the computed forms,
    /// by position in the input slice.
    pub certificates: Vec<(String, Option<Vec<usize>>)>,
}

/// Compares the linear spans of the computed and stated families inside
/// the degree-4 part of the sigma ring.
pub fn span_check(computed: &[Gf2Poly], stated: &[Gf2Poly], ring: &SigmaRing) -> SpanReport {
    let basis = monomials_of_degree(&ring.table, &ring.gens[..4], 4);
    let index: BTreeMap<&Monomial, usize> =
        basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let encode = |p: &Gf2Poly| -> u128 {
        let mut v = 0u128;
        for term in p.terms() {
            let i = *index
                .get(term)
                .unwrap_or_else(|| panic!("term {term:?} outside the degree-4 basis"));
            v |= 1 << i;
        }
        v
    };
    let mut span_c = Gf2Span::new();
    for p in computed {
        span_c.insert(encode(p));
    }
    let mut span_s = Gf2Span::new();
    for p in stated {
        span_s.insert(encode(p));
    }
    let equal = computed.iter().all(|p| span_s.express(encode(p)).is_some())
        && stated.iter().all(|p| span_c.express(encode(p)).is_some());
    let certificates = basis
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let combo = span_c.express(1 << i).map(|mask| {
                (0..computed.len()).filter(|&k| mask >> k & 1 == 1).collect()
            });
            let name = Gf2Poly::term(&ring.table, m.clone()).to_string();
            (name, combo)
        })
        .collect();
    SpanReport {
        computed_rank: span_c.rank(),
        stated_rank: span_s.rank(),
        equal,
        certificates,
    }
}

#[derive(Clone, Debug)]
pub struct LambdaReport {
    pub matches: bool,
    pub computed: Gf2Poly,
    pub expected: Gf2Poly,
    pub max_line_power: u32,
}

/// Structure of f_omega on the symbolic side with nx + ny splitting
/// roots: its c^4 coefficient must be the plain monomial symmetric
/// function of the roots, and no higher line power may appear.
pub fn fomega_lambda_structure(omega: Partition4, nx: u32, ny: u32) -> LambdaReport {
    let mut t = GeneratorTable::new();
    let mut roots = Vec::new();
    for i in 1..=nx {
        roots.push(t.add(&format!("x{i}"), 1, Stratum::Base));
    }
    for i in 1..=ny {
        roots.push(t.add(&format!("y{i}"), 1, Stratum::Base));
    }
    let c = t.add("c", 1, Stratum::Fiber);
    let table = t.shared();
    let system = RootSystem::line_shifted(&table, c, &roots);
    let f = f_omega_raw(omega, &system);
    let computed = f.coefficient_of_power(c, 4);
    let expected = monomial_symmetric(&table, &roots, omega.parts());
    LambdaReport {
        matches: computed == expected,
        computed,
        expected,
        max_line_power: f.max_power_of(c),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn two_vars() -> (Arc<GeneratorTable>, Vec<GenId>) {
        let mut t = GeneratorTable::new();
        let vars = vec![
            t.add("x1", 1, Stratum::Base),
            t.add("x2", 1, Stratum::Base),
        ];
        (t.shared(), vars)
    }

    #[test]
    fn monomial_symmetric_examples() {
        let (table, vars) = two_vars();
        let m21 = monomial_symmetric(&table, &vars, &[2, 1]);
        assert_eq!(m21.to_string(), "x1*x2^2 + x1^2*x2");
        let e2 = elementary(&table, &vars, 2);
        assert_eq!(e2.to_string(), "x1*x2");
        assert!(elementary(&table, &vars, 3).is_zero());
    }

    #[test]
    fn rewrite_rejects_asymmetric_input() {
        let (table, vars) = two_vars();
        let ring = SigmaRing::new(2);
        let poly = Gf2Poly::generator(&table, vars[0]);
        assert!(matches!(
            elementary_rewrite(&poly, &vars, &ring),
            Err(Error::Asymmetric(_))
        ));
    }

    #[test]
    fn rewrite_small_cases() {
        let (table, vars) = two_vars();
        let ring = SigmaRing::new(2);
        let p4 = monomial_symmetric(&table, &vars, &[4]);
        let got = elementary_rewrite(&p4, &vars, &ring).unwrap();
        // Fourth power sums are e1^4 over GF(2) in any number of variables.
        assert_eq!(got.to_string(), "s1^4");
        let m21 = monomial_symmetric(&table, &vars, &[2, 1]);
        let got = elementary_rewrite(&m21, &vars, &ring).unwrap();
        assert_eq!(got.to_string(), "s1*s2");
    }

    #[test]
    fn computed_nu_forms_are_frozen() {
        let want = [
            (Partition4::P1111, "s4"),
            (Partition4::P211, "s1*s3"),
            (Partition4::P22, "s2^2"),
            (Partition4::P31, "s1*s3 + s1^2*s2"),
            (Partition4::P4, "s1^4"),
        ];
        for (omega, text) in want {
            let forms = fomega_nu_d4(omega).unwrap();
            assert_eq!(forms.sigma.to_string(), text, "{}", omega.label());
        }
        let v = fomega_nu_d4(Partition4::P31).unwrap().v_form;
        assert_eq!(v.to_string(), "V1*V3 + V1^2*V2");
    }

    #[test]
    fn stated_nu_differs_by_telescoping_tail() {
        let ring = SigmaRing::new(8);
        let diffs: Vec<String> = Partition4::all()
            .iter()
            .map(|&w| {
                let computed = fomega_nu_d4(w).unwrap().sigma;
                computed.add(&stated_nu_d4(w, &ring)).to_string()
            })
            .collect();
        assert_eq!(
            diffs,
            vec![
                "0",
                "s4",
                "s1*s3 + s4",
                "s2^2 + s4",
                "s1*s3 + s1^2*s2 + s2^2 + s4",
            ]
        );
    }

    #[test]
    fn spans_agree_with_full_rank() {
        let ring = SigmaRing::new(8);
        let computed: Vec<Gf2Poly> = Partition4::all()
            .iter()
            .map(|&w| fomega_nu_d4(w).unwrap().sigma)
            .collect();
        let stated: Vec<Gf2Poly> = Partition4::all()
            .iter()
            .map(|&w| stated_nu_d4(w, &ring))
            .collect();
        let report = span_check(&computed, &stated, &ring);
        assert_eq!(report.computed_rank, 5);
        assert_eq!(report.stated_rank, 5);
        assert!(report.equal);
        for (mono, combo) in &report.certificates {
            assert!(combo.is_some(), "no certificate for {mono}");
        }
    }

    #[test]
    fn lambda_structure_holds_on_six_plus_six() {
        for omega in Partition4::all() {
            let rep = fomega_lambda_structure(omega, 6, 6);
            assert!(rep.matches, "{}", omega.label());
            assert!(rep.max_line_power <= 4, "{}", omega.label());
        }
    }

    #[test]
    fn zero_roots_do_not_change_f_omega() {
        let mut t = GeneratorTable::new();
        let roots: Vec<GenId> = (1..=5u32)
            .map(|i| t.add(&format!("x{i}"), 1, Stratum::Base))
            .collect();
        let c = t.add("c", 1, Stratum::Fiber);
        let table = t.shared();
        for omega in Partition4::all() {
            let plain = f_omega_raw(
                omega,
                &RootSystem::line_shifted(&table, c, &roots),
            );
            let padded = f_omega_raw(
                omega,
                &RootSystem::line_shifted(&table, c, &roots).with_zero_roots(4),
            );
            assert_eq!(plain, padded, "{}", omega.label());
        }
    }

    proptest! {
        #[test]
        fn rewrite_round_trips(
            picks in proptest::collection::vec(0usize..5, 1..4),
        ) {
            // Random sums of degree-4 sigma monomials expand to symmetric
            // polynomials that rewrite back to themselves.
            let ring = SigmaRing::new(4);
            let basis = ["s1^4", "s1^2*s2", "s2^2", "s1*s3", "s4"];
            let mut sigma = Gf2Poly::zero(ring.table());
            for p in picks {
                sigma = sigma.add(&ring.parse(basis[p]).unwrap());
            }
            let mut t = GeneratorTable::new();
            let vars: Vec<GenId> = (1..=4u32)
                .map(|i| t.add(&format!("z{i}"), 1, Stratum::Base))
                .collect();
            let table = t.shared();
            let expanded = expand_sigma(&ring, &sigma, &table, &vars).unwrap();
            let back = elementary_rewrite(&expanded, &vars, &ring).unwrap();
            prop_assert_eq!(back, sigma);
        }
    }
}
