//! Exact sparse multivariate polynomials over the rationals.
//!
//! Two polynomial rings are in play: the primal ring in `X0..Xn` and the
//! dual ring in `Y0..Yn` acting on it. Both share one representation and
//! are told apart by [`Family`]. A polynomial also carries a coefficient
//! [`Convention`]: either the ordinary monomial basis or the divided-powers
//! basis `X^[a] = X^a / a!`. Conversion between the two is a per-term scale
//! by `a!`.
//!
//! Affine (dehomogenized) polynomials keep the ambient variable count; the
//! chart variable simply never occurs. This keeps variable names stable
//! across dehomogenization and homogenization.
//!
//! Coefficients are exact rationals. The theory works over an algebraically
//! closed field, but every construction implemented here stays in ℚ when the
//! input does.

mod linear;
mod order;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use linear::{divides_linear, LinearForm};
pub use order::MonomialOrder;
pub use parse::{parse_poly, parse_rational};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Primal (`X`, acted upon) or dual (`Y`, acting) variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    X,
    Y,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::X => 'X',
            Family::Y => 'Y',
        }
    }

    pub fn dual(self) -> Family {
        match self {
            Family::X => Family::Y,
            Family::Y => Family::X,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    Standard,
    DividedPowers,
}

/// Dense exponent vector `(a_0, ..., a_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        Exponent(vec![0; nvars])
    }

    pub fn unit(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Exponent(e)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True when `self` divides `other`, i.e. `self <= other` entrywise.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn checked_div(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `a! = a_0! ... a_n!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().fold(BigInt::one(), |acc, &a| acc * factorial(a))
    }

    pub fn with(&self, var: usize, value: u32) -> Exponent {
        let mut e = self.0.clone();
        e[var] = value;
        Exponent(e)
    }

    pub(crate) fn insert_var(&self, at: usize) -> Exponent {
        let mut e = self.0.clone();
        e.insert(at, 0);
        Exponent(e)
    }

    pub(crate) fn remove_var(&self, at: usize) -> Exponent {
        let mut e = self.0.clone();
        e.remove(at);
        Exponent(e)
    }
}

/// Every exponent of total degree `deg` in `nvars` variables, with
/// lower-index variables carrying the larger exponents first.
pub fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Exponent> {
    let vars: Vec<usize> = (0..nvars).collect();
    monomials_in(nvars, &vars, deg)
}

/// Exponents of total degree `deg` supported on `vars`, ordered as in
/// [`monomials_of_degree`].
pub fn monomials_in(nvars: usize, vars: &[usize], deg: u32) -> Vec<Exponent> {
    fn go(nvars: usize, vars: &[usize], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        match vars.split_first() {
            None => {
                if left == 0 {
                    out.push(Exponent(cur.clone()));
                }
            }
            Some((&v, rest)) => {
                let range = if rest.is_empty() { left..=left } else { 0..=left };
                for a in range.rev() {
                    cur[v] = a;
                    go(nvars, rest, left - a, cur, out);
                }
                cur[v] = 0;
            }
        }
    }
    let mut out = Vec::new();
    if vars.is_empty() {
        if deg == 0 {
            out.push(Exponent::zero(nvars));
        }
        return out;
    }
    go(nvars, vars, deg, &mut vec![0; nvars], &mut out);
    out
}

/// Sparse polynomial: a map from exponents to nonzero rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    family: Family,
    convention: Convention,
    terms: BTreeMap<Exponent, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize, family: Family) -> Self {
        Polynomial {
            nvars,
            family,
            convention: Convention::Standard,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, family: Family, c: Rational) -> Self {
        Self::monomial(nvars, family, Exponent::zero(nvars), c)
    }

    pub fn one(nvars: usize, family: Family) -> Self {
        Self::constant(nvars, family, Rational::one())
    }

    pub fn var(nvars: usize, family: Family, var: usize) -> Self {
        Self::monomial(nvars, family, Exponent::unit(nvars, var), Rational::one())
    }

    pub fn monomial(nvars: usize, family: Family, exp: Exponent, c: Rational) -> Self {
        assert_eq!(exp.len(), nvars, "exponent length must match the ring");
        let mut p = Self::zero(nvars, family);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// Builds a polynomial from terms; repeated exponents are summed.
    pub fn from_terms<I>(nvars: usize, family: Family, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Rational)>,
    {
        let mut p = Self::zero(nvars, family);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must match the ring");
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Exponent) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// The common degree of all terms, if there is one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Exponent::degree);
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    /// Zero counts as homogeneous.
    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Exponent::is_constant)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|e| e.get(var) > 0)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return self.with_terms(BTreeMap::new());
        }
        self.with_terms(self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect())
    }

    pub fn mul_monomial(&self, exp: &Exponent, c: &Rational) -> Polynomial {
        assert_eq!(self.convention, Convention::Standard);
        if c.is_zero() {
            return self.with_terms(BTreeMap::new());
        }
        self.with_terms(self.terms.iter().map(|(e, a)| (e.mul(exp), a * c)).collect())
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars, self.family).in_convention(self.convention);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn with_terms(&self, terms: BTreeMap<Exponent, Rational>) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            family: self.family,
            convention: self.convention,
            terms,
        }
    }

    fn in_convention(self, convention: Convention) -> Polynomial {
        Polynomial { convention, ..self }
    }

    fn assert_compatible(&self, other: &Polynomial) {
        assert_eq!(self.nvars, other.nvars, "polynomials live in different rings");
        assert_eq!(self.family, other.family, "polynomials have different variable families");
        assert_eq!(self.convention, other.convention, "polynomials use different conventions");
    }

    pub(crate) fn check_same_ring(&self, other: &Polynomial) -> Result<()> {
        if self.family != other.family {
            return Err(Error::FamilyMismatch(format!(
                "{} vs {}",
                self.family.letter(),
                other.family.letter()
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch(format!("{} vs {} variables", self.nvars, other.nvars)));
        }
        Ok(())
    }

    /// Re-expresses a standard-convention polynomial in the divided-powers
    /// basis: the coefficient of `X^[a]` is `a!` times that of `X^a`.
    pub fn to_divided_powers(&self) -> Result<Polynomial> {
        if self.convention != Convention::Standard {
            return Err(Error::WrongConvention { expected: "standard" });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c * Rational::from_integer(e.factorial())))
            .collect();
        Ok(self.with_terms(terms).in_convention(Convention::DividedPowers))
    }

    pub fn from_divided_powers(&self) -> Result<Polynomial> {
        if self.convention != Convention::DividedPowers {
            return Err(Error::WrongConvention { expected: "divided-powers" });
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c / Rational::from_integer(e.factorial())))
            .collect();
        Ok(self.with_terms(terms).in_convention(Convention::Standard))
    }

    /// Same value, standard convention.
    pub fn to_standard(&self) -> Polynomial {
        match self.convention {
            Convention::Standard => self.clone(),
            Convention::DividedPowers => self.from_divided_powers().expect("convention checked"),
        }
    }

    /// Reads the same coefficient table in another convention, without
    /// rescaling. Used to enter divided-powers data typed in the grammar.
    pub fn relabel(&self, convention: Convention) -> Polynomial {
        self.clone().in_convention(convention)
    }

    /// Replaces every variable `i` by `images[i]` and expands.
    ///
    /// Images must live in the same ring. Divided-powers inputs are
    /// converted, substituted, and converted back.
    pub fn substitute_linear(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.nvars {
            return Err(Error::RingMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        for img in images {
            self.check_same_ring(img)?;
        }
        let src = self.to_standard();
        let images: Vec<Polynomial> = images.iter().map(Polynomial::to_standard).collect();
        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|img| vec![Polynomial::one(self.nvars, self.family), img.clone()])
            .collect();
        let mut out = Polynomial::zero(self.nvars, self.family);
        for (e, c) in &src.terms {
            let mut term = Polynomial::constant(self.nvars, self.family, c.clone());
            for (v, &a) in e.as_slice().iter().enumerate() {
                if a == 0 {
                    continue;
                }
                while powers[v].len() <= a as usize {
                    let next = powers[v].last().unwrap() * &images[v];
                    powers[v].push(next);
                }
                term = &term * &powers[v][a as usize];
            }
            out = &out + &term;
        }
        Ok(match self.convention {
            Convention::Standard => out,
            Convention::DividedPowers => out.to_divided_powers()?,
        })
    }

    /// Sets the pivot variable to 1. The input must be homogeneous; the
    /// coefficient of every surviving term is kept as is, in whichever
    /// convention the polynomial uses.
    pub fn dehomogenize(&self, pivot: usize) -> Result<Polynomial> {
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        self.check_var(pivot)?;
        Ok(self.dehomogenize_unchecked(pivot))
    }

    pub(crate) fn dehomogenize_unchecked(&self, pivot: usize) -> Polynomial {
        let mut out = self.with_terms(BTreeMap::new());
        for (e, c) in &self.terms {
            out.add_term(e.with(pivot, 0), c.clone());
        }
        out
    }

    /// Homogenizes with respect to `pivot` up to the degree of `self`.
    pub fn homogenize(&self, pivot: usize) -> Polynomial {
        let deg = self.degree().unwrap_or(0);
        self.homogenize_to(pivot, deg)
    }

    /// Multiplies each term by `pivot^(degree - |term|)`. Terms of degree
    /// above `degree` are left unchanged.
    pub fn homogenize_to(&self, pivot: usize, degree: u32) -> Polynomial {
        let mut out = self.with_terms(BTreeMap::new());
        for (e, c) in &self.terms {
            let gap = degree.saturating_sub(e.degree());
            out.add_term(e.with(pivot, e.get(pivot) + gap), c.clone());
        }
        out
    }

    fn check_var(&self, var: usize) -> Result<()> {
        if var >= self.nvars {
            return Err(Error::VariableOutOfRange {
                index: var,
                n: self.nvars.saturating_sub(1),
            });
        }
        Ok(())
    }

    /// Leading term for `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(&Exponent, &Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// Terms sorted by `order`, largest first.
    pub fn sorted_terms(&self, order: MonomialOrder) -> Vec<(&Exponent, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    /// Scales so the leading coefficient for `order` is 1.
    pub fn monic(&self, order: MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Exact quotient `self / divisor` if `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.assert_compatible(divisor);
        let order = MonomialOrder::Grevlex;
        let (dlead, dc) = divisor.leading_term(order)?;
        let (dlead, dc) = (dlead.clone(), dc.clone());
        let mut rest = self.clone();
        let mut quot = self.with_terms(BTreeMap::new());
        while let Some((e, c)) = rest.leading_term(order) {
            let m = e.checked_div(&dlead)?;
            let q = c / &dc;
            rest = &rest - &divisor.mul_monomial(&m, &q);
            quot.add_term(m, q);
        }
        Some(quot)
    }

    /// Adds a fresh variable at position `at`, shifting later indices.
    pub(crate) fn insert_var(&self, at: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + 1,
            family: self.family,
            convention: self.convention,
            terms: self.terms.iter().map(|(e, c)| (e.insert_var(at), c.clone())).collect(),
        }
    }

    /// Drops variable `at`; callers guarantee it does not occur.
    pub(crate) fn remove_var(&self, at: usize) -> Polynomial {
        debug_assert!(!self.involves(at));
        Polynomial {
            nvars: self.nvars - 1,
            family: self.family,
            convention: self.convention,
            terms: self.terms.iter().map(|(e, c)| (e.remove_var(at), c.clone())).collect(),
        }
    }

    /// Coefficients along `basis`, which must cover the support.
    pub fn coefficient_vector(&self, basis: &[Exponent]) -> Vec<Rational> {
        basis.iter().map(|e| self.coeff(e)).collect()
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form: grevlex-descending terms in the polynomial grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.family.letter();
        for (i, (e, c)) in self.sorted_terms(MonomialOrder::Grevlex).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.is_constant() {
                factors.push(abs.to_string());
            }
            for (v, &a) in e.as_slice().iter().enumerate() {
                match a {
                    0 => {}
                    1 => factors.push(format!("{letter}{v}")),
                    _ => factors.push(format!("{letter}{v}^{a}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Divided-powers operands are multiplied as the polynomials they
    /// represent and the product is returned in divided powers.
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_compatible(rhs);
        if self.convention == Convention::DividedPowers {
            let prod = &self.to_standard() * &rhs.to_standard();
            return prod.to_divided_powers().expect("standard product");
        }
        let mut out = self.with_terms(BTreeMap::new());
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
