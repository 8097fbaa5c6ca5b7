//! Truncated model of the degree-at-most-4 cohomology of a closed
//! 4-manifold carrying a rank-4 bundle: Steenrod squares through the Wu
//! formula, the relation lattice tying the two families of classes
//! together, and membership certificates over it.

use crate::binomial::parity;
use crate::gf2::{GenId, GeneratorTable, Gf2Poly, Monomial, Stratum};
use crate::linalg::{monomials_of_degree, Gf2Span};
use crate::Result;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Polynomials in w1..w4 and v1..v4, truncated above total degree 4.
pub struct F4Algebra {
    table: Arc<GeneratorTable>,
    w: [GenId; 4],
    v: [GenId; 4],
}

impl Default for F4Algebra {
    fn default() -> Self {
        Self::new()
    }
}

impl F4Algebra {
    pub fn new() -> Self {
        let mut t = GeneratorTable::new();
        let w = std::array::from_fn(|i| {
            t.add(&format!("w{}", i + 1), i as u32 + 1, Stratum::Base)
        });
        let v = std::array::from_fn(|i| {
            t.add(&format!("v{}", i + 1), i as u32 + 1, Stratum::Base)
        });
        F4Algebra {
            table: t.shared(),
            w,
            v,
        }
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn parse(&self, input: &str) -> Result<Gf2Poly> {
        Ok(Gf2Poly::parse(&self.table, input)?.truncate_degree_above(4))
    }

    pub fn gens(&self) -> Vec<GenId> {
        self.w.iter().chain(&self.v).copied().collect()
    }

    fn family(&self, id: GenId) -> (&[GenId; 4], u32) {
        if let Some(pos) = self.w.iter().position(|&g| g == id) {
            (&self.w, pos as u32 + 1)
        } else {
            let pos = self.v.iter().position(|&g| g == id).expect("unknown id");
            (&self.v, pos as u32 + 1)
        }
    }

    /// Wu formula on a single class: Sq^i applied to the j-th class of a
    /// family is sum_t C(j-i+t-1, t) times class_(i-t) class_(j+t), with
    /// index 0 reading as 1 and indexes above 4 reading as 0.
    fn sq_single(&self, i: u32, id: GenId) -> Gf2Poly {
        let (fam, j) = self.family(id);
        if i == 0 {
            return Gf2Poly::generator(&self.table, id);
        }
        let mut out = Gf2Poly::zero(&self.table);
        for t in 0..=i {
            if parity(j as i64 - i as i64 + t as i64 - 1, t as i64) == 0 {
                continue;
            }
            if j + t > 4 {
                continue;
            }
            let hi = Monomial::generator(fam[(j + t) as usize - 1]);
            let mono = match i - t {
                0 => hi,
                lo if lo <= 4 => hi.mul(&Monomial::generator(fam[lo as usize - 1])),
                _ => continue,
            };
            out = out.add(&Gf2Poly::term(&self.table, mono));
        }
        out
    }

    /// Total square on polynomials: Cartan over the factors of each term,
    /// truncated above degree 4.
    pub fn sq(&self, k: u32, x: &Gf2Poly) -> Gf2Poly {
        let mut out = Gf2Poly::zero(&self.table);
        for term in x.terms() {
            let mut factors = Vec::new();
            for &(id, e) in term.exps() {
                factors.extend(std::iter::repeat(id).take(e as usize));
            }
            out = out.add(&self.sq_factors(k, &factors));
        }
        out.truncate_degree_above(4)
    }

    fn sq_factors(&self, k: u32, factors: &[GenId]) -> Gf2Poly {
        let Some((&first, rest)) = factors.split_first() else {
            return if k == 0 {
                Gf2Poly::one(&self.table)
            } else {
                Gf2Poly::zero(&self.table)
            };
        };
        let mut out = Gf2Poly::zero(&self.table);
        for i in 0..=k {
            let head = self.sq_single(i, first);
            if head.is_zero() {
                continue;
            }
            let tail = self.sq_factors(k - i, rest);
            out = out.add(&head.mul_truncated(&tail, 4));
        }
        out
    }

    /// Wu classes of the manifold: [1, u1, u2, 0, 0] with u1 = w1 and
    /// u2 = w1^2 + w2.
    pub fn wu_classes(&self) -> Vec<Gf2Poly> {
        vec![
            Gf2Poly::one(&self.table),
            self.parse("w1").unwrap(),
            self.parse("w1^2 + w2").unwrap(),
            Gf2Poly::zero(&self.table),
            Gf2Poly::zero(&self.table),
        ]
    }

    /// Degree-k component of Sq applied to the total Wu class.
    pub fn sq_total_wu(&self, k: u32) -> Gf2Poly {
        let u = self.wu_classes();
        let mut out = Gf2Poly::zero(&self.table);
        for i in 0..=k.min(4) {
            out = out.add(&self.sq(i, &u[(k - i) as usize]));
        }
        out
    }

    /// Differences between Sq(U) and the total tangent class in degrees
    /// 3 and 4.  These are exactly the identities that hold on a closed
    /// 4-manifold but not in the free algebra.
    pub fn wu_consistency(&self) -> WuConsistency {
        let w3 = self.parse("w3").unwrap();
        let w4 = self.parse("w4").unwrap();
        WuConsistency {
            defect3: self.sq_total_wu(3).add(&w3),
            defect4: self.sq_total_wu(4).add(&w4),
        }
    }

    /// Relations that vanish on every closed 4-manifold: the degree-3 Wu
    /// identity and the degree-4 consequences of Sq-duality against every
    /// low-degree monomial.
    pub fn manifold_relations(&self) -> Vec<Gf2Poly> {
        let w1 = self.parse("w1").unwrap();
        let u2 = self.parse("w1^2 + w2").unwrap();
        let mut rels = vec![self.parse("w3 + w1*w2").unwrap()];
        let gens = self.gens();
        for m in monomials_of_degree(&self.table, &gens, 3) {
            let x = Gf2Poly::term(&self.table, m);
            let rel = self.sq(1, &x).add(&w1.mul_truncated(&x, 4));
            push_new(&mut rels, rel);
        }
        for m in monomials_of_degree(&self.table, &gens, 2) {
            let x = Gf2Poly::term(&self.table, m);
            push_new(&mut rels, self.sq(2, &x).add(&u2.mul_truncated(&x, 4)));
            push_new(&mut rels, w1.mul_truncated(&self.sq(1, &x), 4));
        }
        push_new(&mut rels, self.parse("w4 + w1^4 + w2^2").unwrap());
        rels
    }

    /// The degree-4 consequences of W(tangent) * W(normal system) = 1 for
    /// the combined class V = (1 + sum w)(1 + sum v).
    pub fn system_relations(&self) -> Vec<Gf2Poly> {
        let wtot = self.parse("1 + w1 + w2 + w3 + w4").unwrap();
        let vtot = self.parse("1 + v1 + v2 + v3 + v4").unwrap();
        let prod = wtot.mul_truncated(&vtot, 4);
        let big = |i: u32| prod.component(i);
        vec![
            big(4),
            big(1).mul_truncated(&big(3), 4),
            big(2).mul_truncated(&big(2), 4),
            big(1).pow(2).mul_truncated(&big(2), 4),
            big(1).pow(4).truncate_degree_above(4),
        ]
    }

    /// The five displayed degree-4 relations between the two families.
    pub fn lemma_relations(&self) -> [Gf2Poly; 5] {
        [
            self.parse("v1^4 + w1^4").unwrap(),
            self.parse("v2^2 + w2^2 + v1^2*w1^2").unwrap(),
            self.parse("v1*v3 + v1^2*w2 + w1^2*v2").unwrap(),
            self.parse("v1^2*v2 + v1*v3 + v1^3*w1 + v1*w1^3").unwrap(),
            self.parse("v4 + w4 + v1^2*w2 + v1*w3").unwrap(),
        ]
    }

    /// The fifth displayed relation with the missing v2^2 restored.
    pub fn corrected_fifth(&self) -> Gf2Poly {
        self.lemma_relations()[4]
            .add(&self.parse("v2^2").unwrap())
    }

    /// Decides whether a degree-4 class lies in the span of all products
    /// of manifold and system relations with monomial multipliers, and
    /// produces the combination when it does.
    pub fn membership(&self, target: &Gf2Poly) -> MembershipReport {
        assert!(target.is_homogeneous_of(4), "membership targets degree 4");
        let gens = self.gens();
        let basis = monomials_of_degree(&self.table, &gens, 4);
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let encode = |p: &Gf2Poly| -> u128 {
            let mut bits = 0u128;
            for t in p.terms() {
                bits |= 1 << index[t];
            }
            bits
        };
        let mut rows: Vec<(String, String, Gf2Poly)> = Vec::new();
        let mut sources = self.manifold_relations();
        sources.extend(self.system_relations());
        for g in sources {
            let Some(deg) = g.degree() else { continue };
            for m in monomials_of_degree(&self.table, &gens, 4 - deg) {
                let prod = g.mul_truncated(&Gf2Poly::term(&self.table, m.clone()), 4);
                if prod.is_zero() {
                    continue;
                }
                let mult = Gf2Poly::term(&self.table, m).to_string();
                rows.push((g.to_string(), mult, prod));
            }
        }
        let mut span = Gf2Span::new();
        for (_, _, p) in &rows {
            span.insert(encode(p));
        }
        let (res_bits, combo) = span.residual(encode(target));
        let certificate = rows
            .iter()
            .enumerate()
            .filter(|(i, _)| combo >> i & 1 == 1)
            .map(|(_, (g, m, _))| (g.clone(), m.clone()))
            .collect();
        let residual = Gf2Poly::from_monomials(
            &self.table,
            basis
                .iter()
                .enumerate()
                .filter(|(i, _)| res_bits >> i & 1 == 1)
                .map(|(_, m)| m.clone()),
        );
        MembershipReport {
            member: res_bits == 0,
            certificate,
            residual,
        }
    }

    /// Evaluates everything on the witness bundle: w_i maps to C(5,i)
    /// alpha^i and v_i to C(3,i) alpha^i in the alpha-truncated line ring.
    pub fn model_bundle_check(&self) -> Result<ModelReport> {
        let mut t = GeneratorTable::new();
        let a = t.add("alpha", 1, Stratum::Base);
        let model = t.shared();
        let mut map: BTreeMap<GenId, Gf2Poly> = BTreeMap::new();
        for (i, &g) in self.w.iter().enumerate() {
            let i = i as u32 + 1;
            let val = if parity(5, i as i64) == 1 {
                Gf2Poly::term(&model, Monomial::power(a, i))
            } else {
                Gf2Poly::zero(&model)
            };
            map.insert(g, val);
        }
        for (i, &g) in self.v.iter().enumerate() {
            let i = i as u32 + 1;
            let val = if parity(3, i as i64) == 1 {
                Gf2Poly::term(&model, Monomial::power(a, i))
            } else {
                Gf2Poly::zero(&model)
            };
            map.insert(g, val);
        }
        let eval = |p: &Gf2Poly| -> Result<Gf2Poly> {
            Ok(p.substitute(&model, &map)?.truncate_degree_above(4))
        };
        let lemma = self.lemma_relations();
        Ok(ModelReport {
            lemma_residues: lemma.iter().map(&eval).collect::<Result<_>>()?,
            corrected_fifth_residue: eval(&self.corrected_fifth())?,
            system_residues: self
                .system_relations()
                .iter()
                .map(&eval)
                .collect::<Result<_>>()?,
            manifold_residues: self
                .manifold_relations()
                .iter()
                .map(&eval)
                .collect::<Result<_>>()?,
        })
    }

    /// The individual square evaluations that the derivation walks
    /// through, paired with their stated values.
    pub fn derivation_steps(&self) -> Vec<DerivationStep> {
        let step = |label, k: u32, on: &str, stated: &str| DerivationStep {
            label,
            computed: self.sq(k, &self.parse(on).unwrap()),
            stated: self.parse(stated).unwrap(),
        };
        vec![
            step("sq1-v2", 1, "v2", "v1*v2 + v3"),
            step("sq1-w1-squared", 1, "w1^2", "0"),
            step("sq2-v2", 2, "v2", "v2^2"),
            step("sq3-v2", 3, "v2", "0"),
            step("sq1-v3", 1, "v3", "v1*v3"),
            step("sq1-v1v2", 1, "v1*v2", "v1*v3"),
            step("sq1-w2", 1, "w2", "w1*w2"),
        ]
    }
}

fn push_new(rels: &mut Vec<Gf2Poly>, rel: Gf2Poly) {
    if !rel.is_zero() && !rels.contains(&rel) {
        rels.push(rel);
    }
}

pub struct WuConsistency {
    pub defect3: Gf2Poly,
    pub defect4: Gf2Poly,
}

pub struct MembershipReport {
    pub member: bool,
    /// (relation, monomial multiplier) pairs XORing to the target.
    pub certificate: Vec<(String, String)>,
    pub residual: Gf2Poly,
}

pub struct ModelReport {
    pub lemma_residues: Vec<Gf2Poly>,
    pub corrected_fifth_residue: Gf2Poly,
    pub system_residues: Vec<Gf2Poly>,
    pub manifold_residues: Vec<Gf2Poly>,
}

pub struct DerivationStep {
    pub label: &'static str,
    pub computed: Gf2Poly,
    pub stated: Gf2Poly,
}
