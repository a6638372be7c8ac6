//! Dual actions of `Y` polynomials on `X` polynomials, Hankel matrices of
//! local polynomials and the annihilators read off their kernels.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::linalg::{self, Matrix};
use crate::polyring::{
    monomials_in, monomials_of_degree, Convention, Exponent, Family, LinearForm, Polynomial,
    Rational,
};

fn check_action(g: &Polynomial, f: &Polynomial) -> Result<()> {
    if g.family() != Family::Y || f.family() != Family::X {
        return Err(Error::FamilyMismatch(
            "the acting polynomial must be in Y and the target in X".into(),
        ));
    }
    if g.nvars() != f.nvars() {
        return Err(Error::RingMismatch(format!("{} vs {} variables", g.nvars(), f.nvars())));
    }
    Ok(())
}

/// `G ∘ F` by differentiation: `Y^b ∘ X^a = a!/(a-b)! X^(a-b)`.
///
/// A divided-powers `F` is acted on as the polynomial it represents and the
/// result is returned in divided powers.
pub fn derivation_apply(g: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    check_action(g, f)?;
    if f.convention() == Convention::DividedPowers {
        return derivation_apply(g, &f.to_standard())?.to_divided_powers();
    }
    let g = g.to_standard();
    let mut terms = Vec::new();
    for (b, gc) in g.terms() {
        for (a, fc) in f.terms() {
            if let Some(rest) = a.checked_div(b) {
                let scale = Rational::from_integer(a.factorial() / rest.factorial());
                terms.push((rest, gc * fc * scale));
            }
        }
    }
    Ok(Polynomial::from_terms(f.nvars(), Family::X, terms))
}

/// `G ⌟ F` on the divided-powers basis: `Y^b ⌟ X^[a] = X^[a-b]`.
pub fn contraction_apply(g: &Polynomial, f: &Polynomial) -> Result<Polynomial> {
    check_action(g, f)?;
    if f.convention() != Convention::DividedPowers {
        return Err(Error::WrongConvention { expected: "divided-powers" });
    }
    let g = g.to_standard();
    let mut terms = Vec::new();
    for (b, gc) in g.terms() {
        for (a, fc) in f.terms() {
            if let Some(rest) = a.checked_div(b) {
                terms.push((rest, gc * fc));
            }
        }
    }
    Ok(Polynomial::from_terms(f.nvars(), Family::X, terms).relabel(Convention::DividedPowers))
}

/// Local data of `F` at `[L]`: the base change moving `L` to its pivot
/// variable and the dehomogenized divided-powers polynomial.
#[derive(Clone, Debug)]
pub struct LocalPolynomial {
    pub pivot: usize,
    /// `F` after `X_p ↦ X_p − Σ_{i≠p} l_i X_i`, with `L` normalized.
    pub base_changed: Polynomial,
    /// `f_L`: the divided-powers form of `base_changed` with `X_p = 1`.
    pub local: Polynomial,
    pub degree: u32,
}

/// The substitution `X_p ↦ X_p − Σ_{i≠p} l_i X_i` for normalized `L`.
pub fn pivot_base_change(l: &LinearForm) -> Vec<Polynomial> {
    let l = l.normalized();
    let p = l.pivot();
    let n = l.nvars();
    (0..n)
        .map(|i| {
            if i != p {
                return Polynomial::var(n, Family::X, i);
            }
            Polynomial::from_terms(
                n,
                Family::X,
                (0..n).map(|j| {
                    let c = if j == p { Rational::one() } else { -l.coeff(j) };
                    (Exponent::unit(n, j), c)
                }),
            )
        })
        .collect()
}

pub fn local_polynomial(f: &Polynomial, l: &LinearForm) -> Result<LocalPolynomial> {
    if f.family() != Family::X || l.family() != Family::X {
        return Err(Error::FamilyMismatch("expected X polynomials".into()));
    }
    if f.nvars() != l.nvars() {
        return Err(Error::RingMismatch(format!("{} vs {} variables", f.nvars(), l.nvars())));
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let pivot = l.pivot();
    let base_changed = f.to_standard().substitute_linear(&pivot_base_change(l))?;
    let local = base_changed.to_divided_powers()?.dehomogenize(pivot)?;
    let degree = local.degree().unwrap_or(0);
    Ok(LocalPolynomial {
        pivot,
        base_changed,
        local,
        degree,
    })
}

/// One entry of the Hankel matrix of `F̃` (homogeneous of degree `d`) at
/// rows `a`, columns `b`, both free of the pivot variable: the coefficient
/// of `x^[a+b]` in the local divided-powers polynomial.
pub fn hankel_entry(f_tilde: &Polynomial, pivot: usize, a: &Exponent, b: &Exponent) -> Rational {
    let Some(d) = f_tilde.homogeneous_degree() else {
        return Rational::zero();
    };
    let g = a.mul(b);
    let s = g.degree();
    if s > d || g.get(pivot) != 0 {
        return Rational::zero();
    }
    let full = g.with(pivot, d - s);
    f_tilde.to_standard().coeff(&full) * Rational::from_integer(full.factorial())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HankelMatrix {
    pub entries: Matrix,
    pub row_labels: Vec<Exponent>,
    pub col_labels: Vec<Exponent>,
    pub truncation: u32,
}

/// Labels `1, y_1, …, y_n, y_1², y_1y_2, …` up to degree `deg`, skipping
/// the pivot variable.
pub fn local_labels(nvars: usize, pivot: usize, deg: u32) -> Vec<Exponent> {
    let vars: Vec<usize> = (0..nvars).filter(|&v| v != pivot).collect();
    (0..=deg).flat_map(|k| monomials_in(nvars, &vars, k)).collect()
}

/// Truncated Hankel matrix of `F̃`: rows labelled up to the degree of the
/// local polynomial, columns up to `truncation`.
pub fn hankel_matrix(f_tilde: &Polynomial, pivot: usize, truncation: u32) -> HankelMatrix {
    let n = f_tilde.nvars();
    let row_deg = match f_tilde.homogeneous_degree() {
        Some(d) => f_tilde
            .terms()
            .map(|(e, _)| d - e.get(pivot))
            .max()
            .unwrap_or(0),
        None => truncation,
    };
    let row_labels = local_labels(n, pivot, row_deg);
    let col_labels = local_labels(n, pivot, truncation);
    let rows = row_labels
        .iter()
        .map(|a| col_labels.iter().map(|b| hankel_entry(f_tilde, pivot, a, b)).collect())
        .collect::<Vec<Vec<_>>>();
    let entries = if rows.is_empty() {
        Matrix::zeros(0, col_labels.len())
    } else {
        Matrix::from_rows(rows)
    };
    HankelMatrix {
        entries,
        row_labels,
        col_labels,
        truncation,
    }
}

impl HankelMatrix {
    fn label_strings(labels: &[Exponent]) -> Vec<String> {
        labels
            .iter()
            .map(|e| {
                Polynomial::monomial(e.len(), Family::Y, e.clone(), Rational::one()).to_string()
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            rows: usize,
            cols: usize,
            entries: &'a Matrix,
            row_labels: Vec<String>,
            col_labels: Vec<String>,
            truncation: u32,
        }
        serde_json::to_value(Out {
            rows: self.entries.rows(),
            cols: self.entries.cols(),
            entries: &self.entries,
            row_labels: Self::label_strings(&self.row_labels),
            col_labels: Self::label_strings(&self.col_labels),
            truncation: self.truncation,
        })
        .expect("plain data")
    }
}

/// `deg f_L + 1` when the local polynomial (read in the standard basis) is
/// a pure power of an affine linear form or a constant, `deg f_L` otherwise.
pub fn truncation_degree(local: &Polynomial, pivot: usize) -> Result<u32> {
    if local.convention() != Convention::DividedPowers {
        return Err(Error::WrongConvention { expected: "divided-powers" });
    }
    let e = local.degree().unwrap_or(0);
    if e == 0 {
        return Ok(1);
    }
    let g = local.to_standard().homogenize_to(pivot, e);
    Ok(if catalecticant_rank(&g, 1)? == 1 { e + 1 } else { e })
}

/// Polynomial with coefficient vector `v` over `labels`.
fn from_coords(nvars: usize, family: Family, labels: &[Exponent], v: &[Rational]) -> Polynomial {
    Polynomial::from_terms(nvars, family, labels.iter().cloned().zip(v.iter().cloned()))
}

/// Drops every polynomial lying in the ideal of those kept before it,
/// scanning by increasing degree.
fn prune_generators(nvars: usize, family: Family, mut polys: Vec<Polynomial>) -> Vec<Polynomial> {
    polys.retain(|p| !p.is_zero());
    polys.sort_by_key(|p| p.degree().unwrap_or(0));
    let mut kept: Vec<Polynomial> = Vec::new();
    for p in polys {
        let ideal = Ideal::new(nvars, family, kept.clone()).expect("same ring");
        if kept.is_empty() || !ideal.contains_poly(&p).expect("same ring") {
            kept.push(p);
        }
    }
    kept
}

/// Kernel of the truncated Hankel matrix as polynomials in the dual
/// variables other than the pivot.
pub fn hankel_kernel(h: &HankelMatrix, nvars: usize) -> Vec<Polynomial> {
    h.entries
        .nullspace()
        .iter()
        .map(|v| from_coords(nvars, Family::Y, &h.col_labels, v))
        .collect()
}

/// Generators of the contraction annihilator of `f_L` (affine, pivot-free).
///
/// Reads the kernel of the Hankel matrix truncated at
/// [`truncation_degree`]. If that kernel misses some monomial of degree
/// `deg f_L + 1`, which every annihilator contains, the kernel one degree
/// higher is used instead.
pub fn local_annihilator(lp: &LocalPolynomial) -> Result<Vec<Polynomial>> {
    let n = lp.local.nvars();
    let e = lp.degree;
    let t = truncation_degree(&lp.local, lp.pivot)?;
    let gens = prune_generators(n, Family::Y, hankel_kernel(&hankel_matrix(&lp.base_changed, lp.pivot, t), n));
    if t > e || covers_next_degree(&gens, n, lp.pivot, e)? {
        return Ok(gens);
    }
    let wider = hankel_matrix(&lp.base_changed, lp.pivot, e + 1);
    Ok(prune_generators(n, Family::Y, hankel_kernel(&wider, n)))
}

fn covers_next_degree(gens: &[Polynomial], nvars: usize, pivot: usize, e: u32) -> Result<bool> {
    let ideal = Ideal::new(nvars, Family::Y, gens.to_vec())?;
    let vars: Vec<usize> = (0..nvars).filter(|&v| v != pivot).collect();
    for m in monomials_in(nvars, &vars, e + 1) {
        if !ideal.contains_poly(&Polynomial::monomial(nvars, Family::Y, m, Rational::one()))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Matrix of `G ↦ G ∘ F` from degree-`i` duals to degree `d-i` forms.
pub fn catalecticant_matrix(f: &Polynomial, i: u32) -> Result<Matrix> {
    let d = f
        .homogeneous_degree()
        .ok_or(if f.is_zero() { Error::Input("zero form".into()) } else { Error::NotHomogeneous })?;
    let n = f.nvars();
    if i > d {
        return Ok(Matrix::zeros(0, monomials_of_degree(n, i).len()));
    }
    let rows = monomials_of_degree(n, d - i);
    let cols = monomials_of_degree(n, i);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (j, b) in cols.iter().enumerate() {
        let dual = Polynomial::monomial(n, Family::Y, b.clone(), Rational::one());
        let image = derivation_apply(&dual, f)?;
        for (r, a) in rows.iter().enumerate() {
            m[(r, j)] = image.coeff(a);
        }
    }
    Ok(m)
}

pub fn catalecticant_rank(f: &Polynomial, i: u32) -> Result<usize> {
    if f.is_zero() {
        return Ok(0);
    }
    Ok(catalecticant_matrix(f, i)?.rank())
}

/// Generators of `Ann(F)` in degrees up to `max_degree`, without elements
/// already implied by lower degrees.
pub fn global_annihilator(f: &Polynomial, max_degree: u32) -> Result<Vec<Polynomial>> {
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let n = f.nvars();
    let mut all = Vec::new();
    for j in 1..=max_degree {
        let labels = monomials_of_degree(n, j);
        if j > d {
            all.extend(labels.into_iter().map(|e| Polynomial::monomial(n, Family::Y, e, Rational::one())));
            continue;
        }
        for v in catalecticant_matrix(f, j)?.nullspace() {
            all.push(from_coords(n, Family::Y, &labels, &v));
        }
    }
    Ok(prune_generators(n, Family::Y, all))
}

/// A finite-dimensional space of homogeneous degree-`degree` polynomials,
/// kept as a linearly independent spanning list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedVectorSpace {
    pub degree: u32,
    pub nvars: usize,
    pub family: Family,
    pub basis: Vec<Polynomial>,
}

impl GradedVectorSpace {
    /// Keeps the members of `gens` independent of those before them.
    pub fn spanned_by(degree: u32, nvars: usize, family: Family, gens: Vec<Polynomial>) -> Self {
        let labels = monomials_of_degree(nvars, degree);
        let coords: Vec<Vec<Rational>> = gens.iter().map(|g| g.to_standard().coefficient_vector(&labels)).collect();
        let keep = linalg::independent_subset(labels.len(), &coords);
        let mut gens: Vec<Option<Polynomial>> = gens.into_iter().map(Some).collect();
        let basis = keep.into_iter().map(|i| gens[i].take().unwrap()).collect();
        GradedVectorSpace {
            degree,
            nvars,
            family,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        if p.is_zero() {
            return true;
        }
        if p.homogeneous_degree() != Some(self.degree) || p.family() != self.family {
            return false;
        }
        let labels = monomials_of_degree(self.nvars, self.degree);
        let coords: Vec<Vec<Rational>> = self.basis.iter().map(|b| b.to_standard().coefficient_vector(&labels)).collect();
        linalg::in_span(labels.len(), &coords, &p.to_standard().coefficient_vector(&labels))
    }
}

/// `I_d^⊥ ⊂ S_d` under the apolarity pairing.
pub fn inverse_system_slice(i: &Ideal, d: u32) -> Result<GradedVectorSpace> {
    if i.family() != Family::Y {
        return Err(Error::FamilyMismatch("inverse systems live in the dual of a Y ideal".into()));
    }
    let n = i.nvars();
    let labels = monomials_of_degree(n, d);
    let slice = i.degree_slice(d)?;
    // pairing: <Y^b, X^a> = a! when a = b
    let rows: Vec<Vec<Rational>> = slice
        .iter()
        .map(|g| {
            labels
                .iter()
                .map(|a| g.coeff(a) * Rational::from_integer(a.factorial()))
                .collect()
        })
        .collect();
    let m = if rows.is_empty() { Matrix::zeros(0, labels.len()) } else { Matrix::from_rows(rows) };
    let basis = m
        .nullspace()
        .iter()
        .map(|v| from_coords(n, Family::X, &labels, v))
        .collect();
    Ok(GradedVectorSpace {
        degree: d,
        nvars: n,
        family: Family::X,
        basis,
    })
}

/// Basis of `D_L = L^⊥ ∩ R_1`.
pub fn dual_hyperplane_basis(l: &LinearForm) -> Vec<LinearForm> {
    let row = Matrix::from_rows(vec![l.coeffs().to_vec()]);
    row.nullspace()
        .into_iter()
        .map(|v| LinearForm::new(v, l.family().dual()).expect("kernel vectors are nonzero"))
        .collect()
}

/// The products of `e` forms from [`dual_hyperplane_basis`], one per
/// monomial in those forms.
pub fn dual_power_basis(l: &LinearForm, e: u32) -> Vec<Polynomial> {
    let hs: Vec<Polynomial> = dual_hyperplane_basis(l).iter().map(LinearForm::to_polynomial).collect();
    let n = l.nvars();
    let fam = l.family().dual();
    monomials_of_degree(hs.len(), e)
        .into_iter()
        .map(|m| {
            m.as_slice()
                .iter()
                .zip(&hs)
                .fold(Polynomial::one(n, fam), |acc, (&a, h)| &acc * &h.pow(a))
        })
        .collect()
}

/// `𝒟^e_L(G) = ⟨H ∘ G : H ∈ D_L^e⟩`, with basis members of the form `H ∘ G`.
pub fn derivative_space(g: &Polynomial, l: &LinearForm, e: u32) -> Result<GradedVectorSpace> {
    let k = g.homogeneous_degree().unwrap_or(0);
    if e > k {
        return Err(Error::Precondition(format!("derivative order {e} exceeds degree {k}")));
    }
    let images = dual_power_basis(l, e)
        .iter()
        .map(|h| derivation_apply(h, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedVectorSpace::spanned_by(k - e, g.nvars(), Family::X, images))
}
