//! Ideals, reduced Gröbner bases and the ideal operations built on them.
//!
//! Buchberger's algorithm with the Gebauer–Möller pair update and the
//! normal selection strategy. Polynomials are converted to term vectors
//! sorted ascending for the active order, so the leading term is the last
//! entry and multiplying by a monomial keeps the order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::apolarity::dual_hyperplane_basis;
use crate::error::{Error, Result};
use crate::polyring::{
    monomials_of_degree, parse_poly, Exponent, Family, LinearForm, MonomialOrder, Polynomial,
    Rational,
};

/// Upper bound on the degrees explored by [`hilbert_sequence`] by default.
pub const DEFAULT_MAX_DEGREE: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
struct Sorted {
    terms: Vec<(Exponent, Rational)>,
}

impl Sorted {
    fn new(p: &Polynomial, order: MonomialOrder) -> Self {
        let mut terms: Vec<_> = p.to_standard().terms().map(|(e, c)| (e.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.cmp(&a.0, &b.0));
        Sorted { terms }
    }

    fn lead(&self) -> Option<&(Exponent, Rational)> {
        self.terms.last()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.lead() {
            let inv = c.recip();
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
    }

    /// `self - c * x^m * other`, merging the two ascending term lists.
    fn sub_scaled(&self, other: &Sorted, m: &Exponent, c: &Rational, order: MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(e, x)| (e.mul(m), x * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (e, x) = b.next().unwrap();
                    out.push((e, -x));
                }
                (Some((ea, _)), Some((eb, _))) => match order.cmp(ea, eb) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => {
                        let (e, x) = b.next().unwrap();
                        out.push((e, -x));
                    }
                    Ordering::Equal => {
                        let (e, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let s = x - y;
                        if !s.is_zero() {
                            out.push((e.clone(), s));
                        }
                    }
                },
            }
        }
        Sorted { terms: out }
    }

    fn to_poly(&self, nvars: usize, family: Family) -> Polynomial {
        Polynomial::from_terms(nvars, family, self.terms.iter().cloned())
    }
}

/// Full reduction of `f` by monic `basis` elements.
fn reduce(f: &Sorted, basis: &[&Sorted], order: MonomialOrder) -> Sorted {
    let mut p = f.clone();
    let mut rem: Vec<(Exponent, Rational)> = Vec::new();
    while let Some((e, c)) = p.lead().cloned() {
        let divisor = basis
            .iter()
            .find(|g| g.lead().is_some_and(|(lg, _)| lg.divides(&e)));
        match divisor {
            Some(g) => {
                let m = e.checked_div(&g.lead().unwrap().0).unwrap();
                p = p.sub_scaled(g, &m, &c, order);
            }
            None => {
                rem.push(p.terms.pop().unwrap());
            }
        }
    }
    rem.reverse();
    Sorted { terms: rem }
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: MonomialOrder) -> Sorted {
    let (lf, _) = f.lead().unwrap();
    let (lg, _) = g.lead().unwrap();
    let l = lf.lcm(lg);
    let mf = l.checked_div(lf).unwrap();
    let mg = l.checked_div(lg).unwrap();
    let zero = Sorted { terms: Vec::new() };
    zero.sub_scaled(f, &mf, &-Rational::one(), order)
        .sub_scaled(g, &mg, &Rational::one(), order)
}

/// Reduced, monic Gröbner basis for one monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: MonomialOrder,
    nvars: usize,
    family: Family,
    elements: Vec<Polynomial>,
    sorted: Vec<Sorted>,
}

impl GroebnerBasis {
    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Elements sorted by increasing leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> Vec<Exponent> {
        self.sorted.iter().map(|s| s.lead().unwrap().0.clone()).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&Sorted> = self.sorted.iter().collect();
        reduce(&Sorted::new(f, self.order), &refs, self.order).to_poly(self.nvars, self.family)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.sorted.iter().any(|s| s.lead().unwrap().0.is_constant())
    }

    /// All pairwise S-polynomials reduce to zero.
    pub fn s_pairs_reduce_to_zero(&self) -> bool {
        let refs: Vec<&Sorted> = self.sorted.iter().collect();
        for i in 0..self.sorted.len() {
            for j in i + 1..self.sorted.len() {
                let s = s_polynomial(&self.sorted[i], &self.sorted[j], self.order);
                if !reduce(&s, &refs, self.order).terms.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, which must be
/// nonempty; see [`Ideal::groebner`] for the general case.
pub fn buchberger(gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let g = gens.first().expect("at least one generator");
    buchberger_in(g.nvars(), g.family(), gens, order)
}

fn buchberger_in(nvars: usize, family: Family, gens: &[Polynomial], order: MonomialOrder) -> GroebnerBasis {
    let mut polys: Vec<Sorted> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();

    let lm = |polys: &Vec<Sorted>, i: usize| polys[i].lead().unwrap().0.clone();

    // Gebauer–Möller update with the new element `h`.
    let update = |polys: &Vec<Sorted>, basis: &mut Vec<usize>, pairs: &mut Vec<(usize, usize)>, h: usize| {
        let lh = lm(polys, h);
        let cands: Vec<(usize, Exponent)> = basis.iter().map(|&g| (g, lh.lcm(&lm(polys, g)))).collect();
        let mut kept: Vec<(usize, Exponent)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = lh.is_coprime(&lm(polys, *g));
            let dominated = cands[idx + 1..].iter().chain(kept.iter()).any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let new_pairs: Vec<(usize, usize)> = kept
            .into_iter()
            .filter(|(g, _)| !lh.is_coprime(&lm(polys, *g)))
            .map(|(g, _)| (g, h))
            .collect();
        pairs.retain(|&(a, b)| {
            let lab = lm(polys, a).lcm(&lm(polys, b));
            !(lh.divides(&lab) && lm(polys, a).lcm(&lh) != lab && lh.lcm(&lm(polys, b)) != lab)
        });
        pairs.extend(new_pairs);
        basis.retain(|&g| !lh.divides(&lm(polys, g)));
        basis.push(h);
    };

    let mut inputs: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut s = Sorted::new(g, order);
            s.make_monic();
            s
        })
        .collect();
    inputs.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    inputs.dedup();
    for s in inputs {
        polys.push(s);
        let h = polys.len() - 1;
        update(&polys, &mut basis, &mut pairs, h);
    }

    while !pairs.is_empty() {
        // normal selection: the pair with the smallest lcm
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, x), (_, y)| {
                let lx = lm(&polys, x.0).lcm(&lm(&polys, x.1));
                let ly = lm(&polys, y.0).lcm(&lm(&polys, y.1));
                order.cmp(&lx, &ly).then(x.cmp(y))
            })
            .unwrap();
        let (a, b) = pairs.swap_remove(pos);
        let s = s_polynomial(&polys[a], &polys[b], order);
        let refs: Vec<&Sorted> = basis.iter().map(|&i| &polys[i]).collect();
        let mut r = reduce(&s, &refs, order);
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        polys.push(r);
        let h = polys.len() - 1;
        update(&polys, &mut basis, &mut pairs, h);
    }

    // inputs can leave elements whose leading monomial is a multiple of another's
    let leads: Vec<Exponent> = basis.iter().map(|&i| lm(&polys, i)).collect();
    let minimal: Vec<Sorted> = basis
        .iter()
        .enumerate()
        .filter(|&(a, _)| {
            !leads
                .iter()
                .enumerate()
                .any(|(b, l)| b != a && l.divides(&leads[a]) && (l != &leads[a] || b < a))
        })
        .map(|(_, &i)| polys[i].clone())
        .collect();
    let mut reduced: Vec<Sorted> = Vec::with_capacity(minimal.len());
    for (i, g) in minimal.iter().enumerate() {
        let others: Vec<&Sorted> = minimal.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s).collect();
        let (lead, tail) = g.terms.split_last().unwrap();
        let tail = reduce(&Sorted { terms: tail.to_vec() }, &others, order);
        let mut terms = tail.terms;
        terms.push(lead.clone());
        reduced.push(Sorted { terms });
    }
    reduced.sort_by(|a, b| order.cmp(&a.lead().unwrap().0, &b.lead().unwrap().0));
    GroebnerBasis {
        order,
        nvars,
        family,
        elements: reduced.iter().map(|s| s.to_poly(nvars, family)).collect(),
        sorted: reduced,
    }
}

/// An ideal given by generators, with Gröbner bases computed on demand and
/// cached per monomial order.
pub struct Ideal {
    nvars: usize,
    family: Family,
    generators: Vec<Polynomial>,
    cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            nvars: self.nvars,
            family: self.family,
            generators: self.generators.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(ToString::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// `{"vars": n+1, "family": "Y", "generators": [...]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub vars: usize,
    #[serde(default = "default_family")]
    pub family: Family,
    pub generators: Vec<String>,
}

fn default_family() -> Family {
    Family::Y
}

impl Ideal {
    /// Zero generators are dropped; divided-powers inputs are converted.
    pub fn new(nvars: usize, family: Family, generators: Vec<Polynomial>) -> Result<Ideal> {
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.family() != family {
                return Err(Error::FamilyMismatch(format!(
                    "generator `{g}` in a {} ideal",
                    family.letter()
                )));
            }
            if g.nvars() != nvars {
                return Err(Error::RingMismatch(format!(
                    "generator has {} variables, ideal has {nvars}",
                    g.nvars()
                )));
            }
            if !g.is_zero() {
                gens.push(g.to_standard());
            }
        }
        Ok(Ideal {
            nvars,
            family,
            generators: gens,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn parse(nvars: usize, family: Family, gens: &[&str]) -> Result<Ideal> {
        let polys = gens
            .iter()
            .map(|g| parse_poly(g, nvars - 1, family))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(nvars, family, polys)
    }

    pub fn from_json(j: &IdealJson) -> Result<Ideal> {
        if j.vars == 0 {
            return Err(Error::Input("an ideal needs at least one variable".into()));
        }
        let gens: Vec<&str> = j.generators.iter().map(String::as_str).collect();
        Ideal::parse(j.vars, j.family, &gens)
    }

    /// Serializes the reduced grevlex basis, which is canonical.
    pub fn to_json(&self) -> IdealJson {
        IdealJson {
            vars: self.nvars,
            family: self.family,
            generators: self.groebner(MonomialOrder::Grevlex).elements().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn unit(nvars: usize, family: Family) -> Ideal {
        Ideal::new(nvars, family, vec![Polynomial::one(nvars, family)]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    pub fn groebner(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.cache.lock().unwrap().get(&order) {
            return gb.clone();
        }
        // computed outside the lock; concurrent first calls agree on the result
        let gb = Arc::new(buchberger_in(self.nvars, self.family, &self.generators, order));
        self.cache.lock().unwrap().entry(order).or_insert(gb).clone()
    }

    fn check_ring(&self, p: &Polynomial) -> Result<()> {
        if p.family() != self.family {
            return Err(Error::FamilyMismatch(format!("`{p}` against a {} ideal", self.family.letter())));
        }
        if p.nvars() != self.nvars {
            return Err(Error::RingMismatch(format!("{} vs {} variables", p.nvars(), self.nvars)));
        }
        Ok(())
    }

    fn check_same(&self, other: &Ideal) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch("ideals in different families".into()));
        }
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_ring(f)?;
        Ok(self.groebner(MonomialOrder::Grevlex).normal_form(f))
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        let gb = self.groebner(MonomialOrder::Grevlex);
        Ok(other.generators.iter().all(|g| gb.reduces_to_zero(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_same(other)?;
        let (a, b) = (self.groebner(MonomialOrder::Grevlex), other.groebner(MonomialOrder::Grevlex));
        Ok(a.elements() == b.elements())
    }

    pub fn is_unit(&self) -> bool {
        self.groebner(MonomialOrder::Grevlex).is_unit()
    }

    /// Homogeneous elements of degree `deg` spanning `I_deg`.
    pub fn degree_slice(&self, deg: u32) -> Result<Vec<Polynomial>> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let gb = self.groebner(MonomialOrder::Grevlex);
        let mut out = Vec::new();
        for g in gb.elements() {
            let gd = g.homogeneous_degree().unwrap_or(0);
            if gd > deg {
                continue;
            }
            for m in monomials_of_degree(self.nvars, deg - gd) {
                out.push(g.mul_monomial(&m, &Rational::one()));
            }
        }
        Ok(out)
    }
}

/// `I + J`
pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_same(j)?;
    let mut gens = i.generators.clone();
    gens.extend(j.generators.iter().cloned());
    Ideal::new(i.nvars, i.family, gens)
}

/// `I · J`
pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_same(j)?;
    let gens = i
        .generators
        .iter()
        .flat_map(|a| j.generators.iter().map(move |b| a * b))
        .collect();
    Ideal::new(i.nvars, i.family, gens)
}

/// Eliminates an auxiliary variable placed at index 0.
fn eliminate_first(gens: Vec<Polynomial>, nvars: usize, family: Family) -> Result<Ideal> {
    let gb = buchberger_in(nvars + 1, family, &gens, MonomialOrder::Elimination(1));
    let kept = gb
        .elements()
        .iter()
        .filter(|g| !g.involves(0))
        .map(|g| g.remove_var(0))
        .collect();
    Ideal::new(nvars, family, kept)
}

/// `I ∩ J` by eliminating `t` from `t·I + (1 − t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.check_same(j)?;
    let (n, fam) = (i.nvars, i.family);
    let t = Polynomial::var(n + 1, fam, 0);
    let one_minus_t = &Polynomial::one(n + 1, fam) - &t;
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|g| &t * &g.insert_var(0)).collect();
    gens.extend(j.generators.iter().map(|g| &one_minus_t * &g.insert_var(0)));
    eliminate_first(gens, n, fam)
}

pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
    let (first, rest) = ideals
        .split_first()
        .ok_or_else(|| Error::Input("intersection of no ideals".into()))?;
    rest.iter().try_fold(first.clone(), |acc, j| intersect(&acc, j))
}

/// `I : (f)`
pub fn ideal_quotient(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    i.check_ring(f)?;
    if f.is_zero() {
        return Err(Error::Input("quotient by the zero polynomial".into()));
    }
    let principal = Ideal::new(i.nvars, i.family, vec![f.clone()])?;
    let both = intersect(i, &principal)?;
    let gens = both
        .generators
        .iter()
        .map(|g| {
            g.div_exact(f)
                .ok_or_else(|| Error::InvariantViolation(format!("`{f}` does not divide `{g}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(i.nvars, i.family, gens)
}

/// `I : (f)^∞` by repeated quotients.
pub fn saturate(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let mut cur = ideal_quotient(i, f)?;
    if cur.equals(i)? {
        return Ok(cur);
    }
    loop {
        let next = ideal_quotient(&cur, f)?;
        if next.equals(&cur)? {
            return Ok(next);
        }
        cur = next;
    }
}

/// `I : (f)^∞` as `(I + (1 − t f)) ∩ k[vars]`.
pub fn saturate_rabinowitsch(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    i.check_ring(f)?;
    let (n, fam) = (i.nvars, i.family);
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|g| g.insert_var(0)).collect();
    let tf = &Polynomial::var(n + 1, fam, 0) * &f.insert_var(0);
    gens.push(&Polynomial::one(n + 1, fam) - &tf);
    eliminate_first(gens, n, fam)
}

/// Whether some power of `f` lies in `I`.
pub fn radical_contains(i: &Ideal, f: &Polynomial) -> Result<bool> {
    i.check_ring(f)?;
    let (n, fam) = (i.nvars, i.family);
    let mut gens: Vec<Polynomial> = i.generators.iter().map(|g| g.insert_var(0)).collect();
    let tf = &Polynomial::var(n + 1, fam, 0) * &f.insert_var(0);
    gens.push(&Polynomial::one(n + 1, fam) - &tf);
    Ok(buchberger_in(n + 1, fam, &gens, MonomialOrder::Grevlex).is_unit())
}

/// Homogenization of an affine ideal with respect to `pivot`: a graded
/// (grlex) basis, each element homogenized.
pub fn homogenize_ideal(affine: &Ideal, pivot: usize) -> Result<Ideal> {
    if pivot >= affine.nvars {
        return Err(Error::VariableOutOfRange {
            index: pivot,
            n: affine.nvars - 1,
        });
    }
    let gb = affine.groebner(MonomialOrder::Grlex);
    let gens = gb.elements().iter().map(|g| g.homogenize(pivot)).collect();
    Ideal::new(affine.nvars, affine.family, gens)
}

/// The ideal `℘_L` of the point `[L]`, in the dual family.
pub fn point_ideal(l: &LinearForm) -> Ideal {
    let gens = dual_hyperplane_basis(l).iter().map(LinearForm::to_polynomial).collect();
    Ideal::new(l.nvars(), l.family().dual(), gens).expect("dual forms share the ring")
}

/// `℘_L^k`, generated by all products of `k` dual hyperplane forms.
pub fn fat_point_ideal(l: &LinearForm, k: u32) -> Result<Ideal> {
    if k == 0 {
        return Err(Error::Input("fat point power must be at least 1".into()));
    }
    let basis: Vec<Polynomial> = dual_hyperplane_basis(l).iter().map(LinearForm::to_polynomial).collect();
    let nvars = l.nvars();
    let family = l.family().dual();
    let gens = monomials_of_degree(basis.len(), k)
        .into_iter()
        .map(|e| {
            e.as_slice()
                .iter()
                .zip(&basis)
                .fold(Polynomial::one(nvars, family), |acc, (&a, h)| &acc * &h.pow(a))
        })
        .collect();
    Ideal::new(nvars, family, gens)
}

/// Values `HF(0..=stabilized_at)` of a graded quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertSequence {
    pub values: Vec<usize>,
    pub stabilized_at: usize,
    pub limit: usize,
}

impl HilbertSequence {
    pub fn value(&self, i: usize) -> usize {
        self.values.get(i).copied().unwrap_or(self.limit)
    }

    /// First `len` values, extended by the limit.
    pub fn prefix(&self, len: usize) -> Vec<usize> {
        (0..len).map(|i| self.value(i)).collect()
    }

    /// Least `i` with `HF(i) = HF(i+1) = limit`.
    pub fn regularity(&self) -> usize {
        (0..)
            .find(|&i| self.value(i) == self.limit && self.value(i + 1) == self.limit)
            .expect("sequence is eventually constant")
    }
}

/// Whether the leading-term ideal leaves at most a curve, i.e. the
/// projective scheme is 0-dimensional (or empty).
fn leading_ideal_has_dim_at_most_one(lms: &[Exponent], nvars: usize) -> bool {
    let supported_in = |vars: &[usize]| {
        lms.iter().any(|m| {
            m.as_slice()
                .iter()
                .enumerate()
                .all(|(v, &a)| a == 0 || vars.contains(&v))
        })
    };
    (0..nvars).all(|i| (i + 1..nvars).all(|j| supported_in(&[i, j])))
}

/// Hilbert function of `R/I` from the standard monomials of a grevlex basis.
///
/// The computation stops at the first repeated value, which is where a
/// saturated ideal of a 0-dimensional scheme plateaus, or at the first
/// zero for Artinian quotients. Non-saturated inputs may stop early.
pub fn hilbert_sequence(i: &Ideal, max_degree: u32) -> Result<HilbertSequence> {
    if !i.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let gb = i.groebner(MonomialOrder::Grevlex);
    let lms = gb.leading_monomials();
    let n = i.nvars;
    if !leading_ideal_has_dim_at_most_one(&lms, n) {
        return Err(Error::NotZeroDimensional);
    }
    let standard = |m: &Exponent| !lms.iter().any(|l| l.divides(m));
    let mut current: BTreeSet<Exponent> = BTreeSet::new();
    let zero = Exponent::zero(n);
    if standard(&zero) {
        current.insert(zero);
    }
    let mut values = vec![current.len()];
    loop {
        let d = values.len() - 1;
        let last = values[d];
        if last == 0 {
            return Ok(HilbertSequence {
                values,
                stabilized_at: d,
                limit: 0,
            });
        }
        if d >= 1 && values[d - 1] == last {
            return Ok(HilbertSequence {
                stabilized_at: d - 1,
                limit: last,
                values: values[..d].to_vec(),
            });
        }
        if d as u32 >= max_degree {
            return Err(Error::DegreeLimit(max_degree));
        }
        let mut next = BTreeSet::new();
        for m in &current {
            for v in 0..n {
                let up = m.mul(&Exponent::unit(n, v));
                if standard(&up) {
                    next.insert(up);
                }
            }
        }
        values.push(next.len());
        current = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;
    use proptest::prelude::*;

    fn y(s: &str, n: usize) -> Polynomial {
        parse_poly(s, n, Family::Y).unwrap()
    }

    fn ideal(n: usize, gens: &[&str]) -> Ideal {
        Ideal::parse(n + 1, Family::Y, gens).unwrap()
    }

    #[test]
    fn monomial_basis_is_itself() {
        let gb = buchberger(&[y("Y0^2*Y1^3", 1)], MonomialOrder::Grevlex);
        assert_eq!(gb.elements(), &[y("Y0^2*Y1^3", 1)]);
    }

    #[test]
    fn textbook_basis() {
        // twisted cubic
        let i = ideal(3, &["Y1^2 - Y0*Y2", "Y1*Y2 - Y0*Y3", "Y2^2 - Y1*Y3"]);
        let gb = i.groebner(MonomialOrder::Grevlex);
        assert_eq!(gb.elements().len(), 3);
        assert!(gb.s_pairs_reduce_to_zero());
        let lex = i.groebner(MonomialOrder::Lex);
        assert!(lex.s_pairs_reduce_to_zero());
        assert!(i.contains_poly(&y("Y1^3 - Y0^2*Y3", 3)).unwrap());
        assert!(!i.contains_poly(&y("Y0*Y3", 3)).unwrap());
    }

    #[test]
    fn normal_form_edge_cases() {
        let i = ideal(2, &["Y1^2", "Y2*(2*Y1 - Y2)"]);
        assert_eq!(i.normal_form(&Polynomial::one(3, Family::Y)).unwrap(), Polynomial::one(3, Family::Y));
        assert!(i.normal_form(&y("Y0*Y1^2 - 3*Y2^2*Y1", 2)).unwrap().is_zero());
        let gb = i.groebner(MonomialOrder::Grevlex);
        let f = y("Y2^3 + Y0*Y1 + 5", 2);
        let nf = gb.normal_form(&f);
        assert_eq!(gb.normal_form(&nf), nf);
    }

    #[test]
    fn fat_point_intersection_is_monomial() {
        let a = fat_point_ideal(&LinearForm::var(2, Family::X, 0), 3).unwrap();
        let b = fat_point_ideal(&LinearForm::var(2, Family::X, 1), 2).unwrap();
        assert!(a.equals(&ideal(1, &["Y1^3"])).unwrap());
        assert!(b.equals(&ideal(1, &["Y0^2"])).unwrap());
        let both = intersect(&a, &b).unwrap();
        assert!(both.equals(&ideal(1, &["Y0^2*Y1^3"])).unwrap());
    }

    #[test]
    fn quotient_and_saturation() {
        let i = ideal(1, &["Y0^2*Y1^3"]);
        let y1 = y("Y1", 1);
        assert!(ideal_quotient(&i, &y1).unwrap().equals(&ideal(1, &["Y0^2*Y1^2"])).unwrap());
        assert!(saturate(&i, &y1).unwrap().equals(&ideal(1, &["Y0^2"])).unwrap());
        assert!(saturate_rabinowitsch(&i, &y1).unwrap().equals(&ideal(1, &["Y0^2"])).unwrap());
        assert!(ideal_quotient(&i, &Polynomial::one(2, Family::Y)).unwrap().equals(&i).unwrap());
    }

    #[test]
    fn hilbert_of_a_fat_pair() {
        let hf = hilbert_sequence(&ideal(1, &["Y0^2*Y1^3"]), 24).unwrap();
        assert_eq!(hf.values, vec![1, 2, 3, 4, 5]);
        assert_eq!(hf.limit, 5);
        assert_eq!(hf.regularity(), 4);
        assert_eq!(hf.prefix(6), vec![1, 2, 3, 4, 5, 5]);
    }

    #[test]
    fn hilbert_guards() {
        assert!(matches!(
            hilbert_sequence(&ideal(2, &["Y0"]), 24),
            Err(Error::NotZeroDimensional)
        ));
        let artinian = hilbert_sequence(&ideal(1, &["Y0^2", "Y1^2"]), 24).unwrap();
        assert_eq!(artinian.values, vec![1, 2, 1, 0]);
        assert_eq!(artinian.limit, 0);
        assert!(matches!(hilbert_sequence(&ideal(1, &["Y0^30"]), 24), Err(Error::DegreeLimit(24))));
        assert!(matches!(hilbert_sequence(&ideal(1, &["Y0 + 1"]), 24), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn radical_membership() {
        let i = ideal(1, &["Y1^3"]);
        assert!(radical_contains(&i, &y("Y1", 1)).unwrap());
        assert!(!radical_contains(&i, &y("Y0", 1)).unwrap());
    }

    #[test]
    fn homogenizing_a_graded_basis() {
        let aff = ideal(2, &["Y2*(2*Y1 - Y2)", "Y1^2"]);
        assert!(homogenize_ideal(&aff, 0).unwrap().equals(&aff).unwrap());
        let aff = ideal(1, &["Y1^2 - Y1"]);
        let h = homogenize_ideal(&aff, 0).unwrap();
        assert!(h.equals(&ideal(1, &["Y1^2 - Y0*Y1"])).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let i = ideal(1, &["Y0^2*Y1^3"]);
        let j = i.to_json();
        assert_eq!(j.generators, vec!["Y0^2*Y1^3"]);
        assert!(Ideal::from_json(&j).unwrap().equals(&i).unwrap());
        let text = r#"{"generators":["Y0^2*Y1^3"],"vars":2,"family":"Y"}"#;
        let parsed: IdealJson = serde_json::from_str(text).unwrap();
        assert!(Ideal::from_json(&parsed).unwrap().equals(&i).unwrap());
    }

    fn monomial_ideal(nvars: usize) -> impl Strategy<Value = Vec<Exponent>> {
        proptest::collection::vec(proptest::collection::vec(0u32..3, nvars).prop_map(Exponent::new), 1..4)
    }

    fn monos(exps: &[Exponent]) -> Ideal {
        let n = exps[0].len();
        Ideal::new(
            n,
            Family::Y,
            exps.iter().map(|e| Polynomial::monomial(n, Family::Y, e.clone(), rat(1))).collect(),
        )
        .unwrap()
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, 3), -3i64..4), 1..4).prop_map(|ts| {
            Polynomial::from_terms(3, Family::Y, ts.into_iter().map(|(e, c)| (Exponent::new(e), rat(c))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn monomial_intersection_is_lcm(a in monomial_ideal(3), b in monomial_ideal(3)) {
            let lcms: Vec<Exponent> = a.iter().flat_map(|x| b.iter().map(move |y| x.lcm(y))).collect();
            prop_assert!(intersect(&monos(&a), &monos(&b)).unwrap().equals(&monos(&lcms)).unwrap());
        }

        #[test]
        fn bases_are_groebner(gens in proptest::collection::vec(small_poly(), 1..4)) {
            let i = Ideal::new(3, Family::Y, gens.clone()).unwrap();
            for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
                let gb = i.groebner(order);
                prop_assert!(gb.s_pairs_reduce_to_zero());
                for g in &gens {
                    prop_assert!(gb.reduces_to_zero(g));
                }
            }
        }

        #[test]
        fn saturation_is_stable(a in monomial_ideal(2)) {
            let i = monos(&a);
            let f = y("Y1", 1);
            let s = saturate(&i, &f).unwrap();
            prop_assert!(saturate(&s, &f).unwrap().equals(&s).unwrap());
            prop_assert!(saturate_rabinowitsch(&i, &f).unwrap().equals(&s).unwrap());
        }
    }
}
