use std::fmt;

use num_traits::{One, Zero};

use super::{parse_poly, Exponent, Family, Polynomial, Rational};
use crate::error::{Error, Result};

/// A nonzero linear form `l_0 V_0 + ... + l_n V_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    coeffs: Vec<Rational>,
    family: Family,
}

impl LinearForm {
    pub fn new(coeffs: Vec<Rational>, family: Family) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroLinearForm);
        }
        Ok(LinearForm { coeffs, family })
    }

    pub fn var(nvars: usize, family: Family, var: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); nvars];
        coeffs[var] = Rational::one();
        LinearForm { coeffs, family }
    }

    /// Reads a linear form in the polynomial grammar.
    pub fn parse(text: &str, n: usize, family: Family) -> Result<Self> {
        Self::from_polynomial(&parse_poly(text, n, family)?)
    }

    pub fn from_polynomial(p: &Polynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroLinearForm);
        }
        if p.homogeneous_degree() != Some(1) {
            return Err(Error::Input(format!("`{p}` is not a linear form")));
        }
        let coeffs = (0..p.nvars())
            .map(|i| p.coeff(&Exponent::unit(p.nvars(), i)))
            .collect();
        Ok(LinearForm {
            coeffs,
            family: p.family(),
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Index of the first nonzero coefficient.
    pub fn pivot(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .expect("linear forms are nonzero")
    }

    /// Scaled so the pivot coefficient is 1.
    pub fn normalized(&self) -> LinearForm {
        let p = self.coeffs[self.pivot()].clone();
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| c / &p).collect(),
            family: self.family,
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        let n = self.nvars();
        Polynomial::from_terms(
            n,
            self.family,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Exponent::unit(n, i), c.clone())),
        )
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        self.to_polynomial().pow(k)
    }

    pub fn is_proportional(&self, other: &LinearForm) -> bool {
        self.family == other.family && self.normalized() == other.normalized()
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_polynomial().fmt(f)
    }
}

/// Whether `g` lies in the principal ideal `(L)`.
///
/// Solves `L = 0` for its pivot variable and substitutes; the remainder is
/// zero exactly when `L` divides `g`.
pub fn divides_linear(l: &LinearForm, g: &Polynomial) -> Result<bool> {
    if l.family() != g.family() {
        return Err(Error::FamilyMismatch("linear form and polynomial".into()));
    }
    if l.nvars() != g.nvars() {
        return Err(Error::RingMismatch(format!("{} vs {} variables", l.nvars(), g.nvars())));
    }
    let l = l.normalized();
    let p = l.pivot();
    let n = l.nvars();
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            if i != p {
                return Polynomial::var(n, g.family(), i);
            }
            Polynomial::from_terms(
                n,
                g.family(),
                (0..n)
                    .filter(|&j| j != p)
                    .map(|j| (Exponent::unit(n, j), -l.coeff(j))),
            )
        })
        .collect();
    Ok(g.to_standard().substitute_linear(&images)?.is_zero())
}
