//! Natural apolar schemes, generalized additive decompositions (GADs) and
//! the checks built on the schemes they evince.
//!
//! A GAD of a degree-`d` form is `F = Σ L_i^(d-k_i) G_i` with pairwise
//! non-proportional linear forms `L_i` not dividing the degree-`k_i` forms
//! `G_i`. Each summand has a natural apolar scheme supported at `[L_i]`; the
//! scheme evinced by the GAD is their union.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::apolarity::{
    derivation_apply, derivative_space, dual_hyperplane_basis, hankel_matrix, inverse_system_slice,
    local_annihilator, local_polynomial, truncation_degree, HankelMatrix, LocalPolynomial,
};
use crate::error::{Error, Result};
use crate::groebner::{
    fat_point_ideal, hilbert_sequence, homogenize_ideal, intersect_all, point_ideal,
    radical_contains, saturate_rabinowitsch, HilbertSequence, Ideal, IdealJson, DEFAULT_MAX_DEGREE,
};
use crate::linalg::{self, Matrix};
use crate::polyring::{
    monomials_of_degree, parse_poly, Exponent, Family, LinearForm, Polynomial, Rational,
};

/// A 0-dimensional scheme given by its saturated homogeneous ideal.
#[derive(Debug)]
pub struct Scheme {
    ideal: Ideal,
    support_hint: Vec<LinearForm>,
    max_degree: u32,
    hilbert: OnceLock<Result<HilbertSequence>>,
}

impl Clone for Scheme {
    fn clone(&self) -> Self {
        let hilbert = OnceLock::new();
        if let Some(h) = self.hilbert.get() {
            let _ = hilbert.set(h.clone());
        }
        Scheme {
            ideal: self.ideal.clone(),
            support_hint: self.support_hint.clone(),
            max_degree: self.max_degree,
            hilbert,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchemeJson {
    pub ideal: IdealJson,
    pub hilbert: Vec<usize>,
    pub length: usize,
    pub regularity: usize,
}

impl Scheme {
    pub fn new(ideal: Ideal) -> Result<Scheme> {
        if ideal.family() != Family::Y {
            return Err(Error::FamilyMismatch("scheme ideals live in the Y ring".into()));
        }
        if !ideal.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        Ok(Scheme {
            ideal,
            support_hint: Vec::new(),
            max_degree: DEFAULT_MAX_DEGREE,
            hilbert: OnceLock::new(),
        })
    }

    pub fn with_support(mut self, support: Vec<LinearForm>) -> Self {
        self.support_hint = support;
        self
    }

    /// Bound for the Hilbert-function computation.
    pub fn with_max_degree(mut self, max_degree: u32) -> Self {
        self.max_degree = max_degree;
        self.hilbert = OnceLock::new();
        self
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn support_hint(&self) -> &[LinearForm] {
        &self.support_hint
    }

    pub fn nvars(&self) -> usize {
        self.ideal.nvars()
    }

    pub fn hilbert(&self) -> Result<HilbertSequence> {
        self.hilbert
            .get_or_init(|| hilbert_sequence(&self.ideal, self.max_degree))
            .clone()
    }

    pub fn length(&self) -> Result<usize> {
        Ok(self.hilbert()?.limit)
    }

    pub fn regularity(&self) -> Result<usize> {
        Ok(self.hilbert()?.regularity())
    }

    pub fn to_json(&self) -> Result<SchemeJson> {
        let h = self.hilbert()?;
        Ok(SchemeJson {
            ideal: self.ideal.to_json(),
            regularity: h.regularity(),
            length: h.limit,
            hilbert: h.values,
        })
    }
}

/// Intermediate data of the natural apolar scheme construction.
#[derive(Clone, Debug)]
pub struct NaturalTrace {
    pub local: LocalPolynomial,
    pub truncation: u32,
    pub hankel: HankelMatrix,
    /// Generators of the affine annihilator of the local polynomial.
    pub local_annihilator: Vec<Polynomial>,
    /// The homogenized annihilator, still supported at the pivot point.
    pub homogenized: Ideal,
    /// The ideal moved back to `[L]`.
    pub ideal: Ideal,
}

impl NaturalTrace {
    pub fn local_ideal(&self) -> Ideal {
        Ideal::new(self.ideal.nvars(), Family::Y, self.local_annihilator.clone()).expect("same ring")
    }
}

/// The dual base change `Y_i ↦ Y_i − l_i Y_p` for normalized `L` with pivot `p`.
pub fn dual_base_change(l: &LinearForm) -> Vec<Polynomial> {
    let l = l.normalized();
    let p = l.pivot();
    let n = l.nvars();
    (0..n)
        .map(|i| {
            let yi = Polynomial::var(n, Family::Y, i);
            if i == p {
                return yi;
            }
            let shift = Polynomial::monomial(n, Family::Y, Exponent::unit(n, p), l.coeff(i).clone());
            &yi - &shift
        })
        .collect()
}

/// Runs the natural apolar scheme construction and keeps every stage.
pub fn natural_apolar_trace(f: &Polynomial, l: &LinearForm) -> Result<NaturalTrace> {
    let local = local_polynomial(f, l)?;
    let truncation = truncation_degree(&local.local, local.pivot)?;
    let hankel = hankel_matrix(&local.base_changed, local.pivot, truncation);
    let ann = local_annihilator(&local)?;
    let n = f.nvars();
    let affine = Ideal::new(n, Family::Y, ann.clone())?;
    let homogenized = homogenize_ideal(&affine, local.pivot)?;
    let psi = dual_base_change(l);
    let moved = homogenized
        .groebner(crate::polyring::MonomialOrder::Grlex)
        .elements()
        .iter()
        .map(|g| g.substitute_linear(&psi))
        .collect::<Result<Vec<_>>>()?;
    Ok(NaturalTrace {
        local,
        truncation,
        hankel,
        local_annihilator: ann,
        homogenized,
        ideal: Ideal::new(n, Family::Y, moved)?,
    })
}

type NaturalKey = (Polynomial, LinearForm);

fn natural_cache() -> &'static Mutex<HashMap<NaturalKey, Ideal>> {
    static CACHE: OnceLock<Mutex<HashMap<NaturalKey, Ideal>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn natural_ideal(f: &Polynomial, l: &LinearForm) -> Result<Ideal> {
    let key = (f.to_standard(), l.normalized());
    if let Some(i) = natural_cache().lock().unwrap().get(&key) {
        return Ok(i.clone());
    }
    let ideal = natural_apolar_trace(f, l)?.ideal;
    natural_cache().lock().unwrap().insert(key, ideal.clone());
    Ok(ideal)
}

/// The natural apolar scheme of `F` supported at `[L]`.
pub fn natural_apolar_scheme(f: &Polynomial, l: &LinearForm) -> Result<Scheme> {
    Ok(Scheme::new(natural_ideal(f, l)?)?.with_support(vec![l.clone()]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub l: LinearForm,
    pub k: u32,
    pub g: Polynomial,
}

impl Summand {
    /// `L^(d-k) G`
    pub fn form(&self, d: u32) -> Polynomial {
        &self.l.pow(d - self.k) * &self.g.to_standard()
    }
}

/// A validated generalized additive decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gad {
    d: u32,
    summands: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandJson {
    #[serde(rename = "L")]
    pub l: String,
    pub k: u32,
    #[serde(rename = "G")]
    pub g: String,
}

/// `{"d", "n"?, "summands": [{"L", "k", "G"}]}`; `n` defaults to the
/// largest variable index mentioned.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadJson {
    pub d: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub summands: Vec<SummandJson>,
}

/// Largest variable index appearing in the texts.
pub fn infer_dimension<'a>(texts: impl IntoIterator<Item = &'a str>) -> usize {
    let mut best = 0;
    for t in texts {
        let b = t.as_bytes();
        let mut i = 0;
        while i < b.len() {
            if matches!(b[i], b'X' | b'Y' | b'x' | b'y') {
                let start = i + 1;
                let mut j = start;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                if j > start {
                    if let Ok(v) = t[start..j].parse::<usize>() {
                        best = best.max(v);
                    }
                }
                i = j.max(i + 1);
            } else {
                i += 1;
            }
        }
    }
    best
}

impl Gad {
    /// Checks every GAD condition on the raw summands.
    pub fn validate(d: u32, summands: Vec<Summand>) -> Result<Gad> {
        let nvars = summands.first().map(|s| s.l.nvars());
        for (i, s) in summands.iter().enumerate() {
            let bad = |reason: String| Error::InvalidGad { index: i, reason };
            if s.l.family() != Family::X || s.g.family() != Family::X {
                return Err(bad("summands must be X polynomials".into()));
            }
            if Some(s.l.nvars()) != nvars || Some(s.g.nvars()) != nvars {
                return Err(bad("summands live in different rings".into()));
            }
            if s.k > d {
                return Err(bad(format!("k = {} exceeds d = {d}", s.k)));
            }
            if s.g.is_zero() {
                return Err(bad("G is zero".into()));
            }
            if s.g.homogeneous_degree() != Some(s.k) {
                return Err(bad(format!("G is not homogeneous of degree {}", s.k)));
            }
            if crate::polyring::divides_linear(&s.l, &s.g)? {
                return Err(bad("G is divisible by L".into()));
            }
            for (j, t) in summands[..i].iter().enumerate() {
                if s.l.is_proportional(&t.l) {
                    return Err(bad(format!("support proportional to summand {j}")));
                }
            }
        }
        if summands.is_empty() {
            return Err(Error::Input("a GAD needs at least one summand".into()));
        }
        Ok(Gad {
            d,
            summands: summands
                .into_iter()
                .map(|s| Summand {
                    g: s.g.to_standard(),
                    ..s
                })
                .collect(),
        })
    }

    /// Normalizes raw summands first: every factor `L_i` of `G_i` is moved
    /// into the power of `L_i` and zero summands are dropped.
    pub fn collect(d: u32, summands: Vec<Summand>) -> Result<Gad> {
        let mut out = Vec::new();
        for mut s in summands {
            s.g = s.g.to_standard();
            if s.g.is_zero() {
                continue;
            }
            let l = s.l.to_polynomial();
            while s.k > 0 && crate::polyring::divides_linear(&s.l, &s.g)? {
                s.g = s
                    .g
                    .div_exact(&l)
                    .ok_or_else(|| Error::InvariantViolation("linear factor did not divide".into()))?;
                s.k -= 1;
            }
            out.push(s);
        }
        Gad::validate(d, out)
    }

    pub fn from_json(j: &GadJson) -> Result<Gad> {
        let n = j.n.unwrap_or_else(|| {
            infer_dimension(j.summands.iter().flat_map(|s| [s.l.as_str(), s.g.as_str()]))
        });
        let summands = j
            .summands
            .iter()
            .map(|s| {
                Ok(Summand {
                    l: LinearForm::parse(&s.l, n, Family::X)?,
                    k: s.k,
                    g: parse_poly(&s.g, n, Family::X)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Gad::validate(j.d, summands)
    }

    pub fn to_json(&self) -> GadJson {
        GadJson {
            d: self.d,
            n: Some(self.nvars() - 1),
            summands: self
                .summands
                .iter()
                .map(|s| SummandJson {
                    l: s.l.to_string(),
                    k: s.k,
                    g: s.g.to_string(),
                })
                .collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn nvars(&self) -> usize {
        self.summands[0].l.nvars()
    }

    /// `Σ L_i^(d-k_i) G_i`
    pub fn form(&self) -> Polynomial {
        self.summands
            .iter()
            .fold(Polynomial::zero(self.nvars(), Family::X), |acc, s| &acc + &s.form(self.d))
    }

    pub fn supports(&self) -> Vec<(LinearForm, u32)> {
        self.summands.iter().map(|s| (s.l.clone(), s.k)).collect()
    }
}

/// The natural apolar schemes of the summands, in order.
pub fn gad_components(gad: &Gad) -> Result<Vec<Scheme>> {
    gad.summands
        .iter()
        .map(|s| natural_apolar_scheme(&s.form(gad.d), &s.l))
        .collect()
}

/// The scheme evinced by a GAD: the union of the summands' natural schemes.
pub fn gad_scheme(gad: &Gad) -> Result<Scheme> {
    let ideals: Vec<Ideal> = gad_components(gad)?.into_iter().map(|s| s.ideal).collect();
    Ok(Scheme::new(intersect_all(&ideals)?)?.with_support(gad.summands.iter().map(|s| s.l.clone()).collect()))
}

/// `I(Z) ⊆ Ann(F)`, tested on the generators of `I(Z)`.
pub fn is_apolar(z: &Scheme, f: &Polynomial) -> Result<bool> {
    for g in z.ideal().generators() {
        if !derivation_apply(g, f)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub length: usize,
    pub regularity: usize,
    pub degree: u32,
    pub is_d_regular: bool,
    pub hilbert_at_d: usize,
    pub perp_dim_at_d: usize,
}

/// Decides `d`-regularity twice: from the Hilbert-function plateau and
/// from `dim I(Z)_d^⊥ = len(Z)`. Disagreement is an internal error.
pub fn regularity_report(z: &Scheme, d: u32) -> Result<RegularityReport> {
    let h = z.hilbert()?;
    let length = h.limit;
    let regularity = h.regularity();
    let by_plateau = d as usize >= regularity;
    let perp = inverse_system_slice(z.ideal(), d)?.dim();
    let by_perp = perp == length;
    if by_plateau != by_perp || perp != h.value(d as usize) {
        return Err(Error::InvariantViolation(format!(
            "regularity criteria disagree in degree {d}: HF gives {}, perp dimension {perp}",
            h.value(d as usize)
        )));
    }
    Ok(RegularityReport {
        length,
        regularity,
        degree: d,
        is_d_regular: by_plateau,
        hilbert_at_d: h.value(d as usize),
        perp_dim_at_d: perp,
    })
}

/// The part of `Z` supported at `[L_i]`, obtained by saturating away a
/// product of forms vanishing at the other listed points but not at `[L_i]`.
pub fn component_at(z: &Scheme, supports: &[LinearForm], i: usize) -> Result<Ideal> {
    let n = z.nvars();
    let target = &supports[i];
    let mut h = Polynomial::one(n, Family::Y);
    for (j, lj) in supports.iter().enumerate() {
        if j == i {
            continue;
        }
        let m = dual_hyperplane_basis(lj)
            .into_iter()
            .map(|f| f.to_polynomial())
            .find(|f| !derivation_apply(f, &target.to_polynomial()).is_ok_and(|r| r.is_zero()))
            .ok_or_else(|| Error::Precondition(format!("supports {i} and {j} are proportional")))?;
        h = &h * &m;
    }
    if supports.len() == 1 {
        return Ok(z.ideal().clone());
    }
    saturate_rabinowitsch(z.ideal(), &h)
}

/// For each `(L_i, k_i)`, whether the component of `Z` at `[L_i]` lies in
/// the `(k_i + 1)`-fat point, i.e. `I(Z_i) ⊇ ℘_{L_i}^(k_i+1)`.
pub fn fat_containment_profile(z: &Scheme, supports: &[(LinearForm, u32)]) -> Result<Vec<bool>> {
    let forms: Vec<LinearForm> = supports.iter().map(|(l, _)| l.clone()).collect();
    (0..supports.len())
        .map(|i| {
            let comp = component_at(z, &forms, i)?;
            let fat = fat_point_ideal(&supports[i].0, supports[i].1 + 1)?;
            comp.contains(&fat)
        })
        .collect()
}

/// Whether `Z` is supported exactly at the given points: each point lies on
/// `Z` and every form vanishing on all of them vanishes on `Z` up to radical.
pub fn verify_support(z: &Scheme, supports: &[LinearForm]) -> Result<bool> {
    let points: Vec<Ideal> = supports.iter().map(point_ideal).collect();
    for p in &points {
        if !p.contains(z.ideal())? {
            return Ok(false);
        }
    }
    let union = intersect_all(&points)?;
    for g in union.generators() {
        if !radical_contains(z.ideal(), g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One spanning vector of the redundancy space: `L_j^(d-k_j+e) (H ∘ G_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateTerm {
    pub summand: usize,
    pub e: u32,
    /// `H ∘ G_j`, a basis element of the derivative space.
    pub derivative: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RedundancyCertificate {
    pub index: usize,
    pub terms: Vec<CertificateTerm>,
    pub span_dim: usize,
    pub rewritten: Gad,
}

impl RedundancyCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "index": self.index,
            "span_dim": self.span_dim,
            "terms": self.terms,
            "rewritten": self.rewritten.to_json(),
        })
    }
}

struct Block {
    summand: usize,
    e: u32,
    derivative: Polynomial,
    vector: Polynomial,
}

/// Tests whether `L_i^(d-k_i) G_i` lies in the span of
/// `L_i^(d-k_i+e) 𝒟^e_{L_i}(G_i)` for `e ≥ 1` and of
/// `L_j^(d-k_j+e) 𝒟^e_{L_j}(G_j)` for `j ≠ i`, `e ≥ 0`. A solution rewrites
/// the GAD into one evincing a strictly smaller apolar scheme. `None` does
/// not prove irredundancy.
pub fn redundancy_certificate(gad: &Gad, i: usize) -> Result<Option<RedundancyCertificate>> {
    let d = gad.d;
    let s = gad
        .summands
        .get(i)
        .ok_or_else(|| Error::Input(format!("summand index {i} out of range")))?;
    let mut blocks = Vec::new();
    let mut push_blocks = |j: usize, first_e: u32| -> Result<()> {
        let sj = &gad.summands[j];
        for e in first_e..=sj.k {
            for der in derivative_space(&sj.g, &sj.l, e)?.basis {
                let vector = &sj.l.pow(d - sj.k + e) * &der;
                blocks.push(Block {
                    summand: j,
                    e,
                    derivative: der,
                    vector,
                });
            }
        }
        Ok(())
    };
    push_blocks(i, 1)?;
    for j in 0..gad.summands.len() {
        if j != i {
            push_blocks(j, 0)?;
        }
    }
    let target = s.form(d);
    let labels = monomials_of_degree(gad.nvars(), d);
    let columns: Vec<Vec<Rational>> = blocks.iter().map(|b| b.vector.coefficient_vector(&labels)).collect();
    let span_dim = linalg::rank_of(labels.len(), &columns);
    let Some(x) = Matrix::from_columns(labels.len(), &columns).solve(&target.coefficient_vector(&labels)) else {
        return Ok(None);
    };

    // F = Σ_{j≠i} L_j^(d-k_j) (G_j + Σ_e L_j^e H_{j,e}) + L_i^(d-k_i) Σ_{e≥1} L_i^e H_{i,e}
    let n = gad.nvars();
    let mut new_g: Vec<Polynomial> = gad
        .summands
        .iter()
        .enumerate()
        .map(|(j, sj)| if j == i { Polynomial::zero(n, Family::X) } else { sj.g.clone() })
        .collect();
    for (b, c) in blocks.iter().zip(&x) {
        if c.is_zero() {
            continue;
        }
        let sj = &gad.summands[b.summand];
        let piece = &sj.l.pow(b.e) * &b.derivative.scale(c);
        new_g[b.summand] = &new_g[b.summand] + &piece;
    }
    let raw = gad
        .summands
        .iter()
        .zip(new_g)
        .map(|(sj, g)| Summand {
            l: sj.l.clone(),
            k: sj.k,
            g,
        })
        .collect();
    let rewritten = Gad::collect(d, raw)?;
    if rewritten.form() != gad.form() {
        return Err(Error::InvariantViolation("rewritten GAD changed the form".into()));
    }
    let terms = blocks
        .iter()
        .zip(&x)
        .map(|(b, c)| CertificateTerm {
            summand: b.summand,
            e: b.e,
            derivative: b.derivative.to_string(),
            coefficient: c.to_string(),
        })
        .collect();
    Ok(Some(RedundancyCertificate {
        index: i,
        terms,
        span_dim,
        rewritten,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseB {
    /// The inequality `d > max(k_i + k_j − 2)` fails.
    Fails,
    /// The inequality holds; regularity follows if `Z` is irredundant,
    /// which is not decided here.
    ConditionalOnIrredundancy,
    /// The inequality holds but a redundancy certificate shows `Z` is
    /// redundant, so the case cannot apply.
    ExcludedRedundant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowMultiplicityReport {
    pub independent_supports: bool,
    pub case_a: bool,
    pub case_b: CaseB,
    pub all_k_below_half: bool,
    pub guaranteed_d_regular: bool,
}

/// Sufficient conditions for `d`-regularity of the evinced scheme when the
/// supports are linearly independent: `d > max_{i≠j}(k_i + k_j)`, or
/// `d > max_{i≠j}(k_i + k_j − 2)` for an irredundant scheme.
pub fn lowmultiplicity_check(gad: &Gad) -> Result<LowMultiplicityReport> {
    let s = gad.summands.len();
    if s < 2 {
        return Err(Error::Precondition(
            "single-summand GAD: the evinced scheme is local and k-regular already".into(),
        ));
    }
    let rows: Vec<Vec<Rational>> = gad.summands.iter().map(|x| x.l.coeffs().to_vec()).collect();
    let independent_supports = Matrix::from_rows(rows).rank() == s;
    let ks: Vec<u32> = gad.summands.iter().map(|x| x.k).collect();
    let max_pair = (0..s)
        .flat_map(|i| (0..s).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| ks[i] + ks[j])
        .max()
        .unwrap_or(0);
    let d = gad.d;
    let case_a = d > max_pair;
    let case_b = if d + 2 <= max_pair {
        CaseB::Fails
    } else {
        let mut redundant = false;
        for i in 0..s {
            if redundancy_certificate(gad, i)?.is_some() {
                redundant = true;
                break;
            }
        }
        if redundant {
            CaseB::ExcludedRedundant
        } else {
            CaseB::ConditionalOnIrredundancy
        }
    };
    Ok(LowMultiplicityReport {
        independent_supports,
        case_a,
        case_b,
        all_k_below_half: ks.iter().all(|&k| 2 * k < d),
        guaranteed_d_regular: independent_supports && case_a,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shortening {
    pub dropped: usize,
    /// `(j, λ_j)` with `L_dropped^(d-1) = Σ λ_j L_j^(d-1)`.
    pub relation: Vec<(usize, Rational)>,
    pub gad: Gad,
}

/// For a tangential GAD (all `k_i ≤ 1`), finds a linear relation
/// `L_f^(d-1) = Σ λ_j L_j^(d-1)` among the summands with `k = 1` and
/// substitutes it, dropping summand `f`.
pub fn tangential_shorten(gad: &Gad) -> Result<Option<Shortening>> {
    if let Some(i) = gad.summands.iter().position(|s| s.k > 1) {
        return Err(Error::Precondition(format!("summand {i} has k > 1")));
    }
    let d = gad.d;
    if d == 0 {
        return Ok(None);
    }
    let jets: Vec<usize> = (0..gad.summands.len()).filter(|&i| gad.summands[i].k == 1).collect();
    let labels = monomials_of_degree(gad.nvars(), d - 1);
    let columns: Vec<Vec<Rational>> = jets
        .iter()
        .map(|&j| gad.summands[j].l.pow(d - 1).coefficient_vector(&labels))
        .collect();
    let kernel = Matrix::from_columns(labels.len(), &columns).nullspace();
    let Some(v) = kernel.first() else {
        return Ok(None);
    };
    // Pivot entries precede the free column, so it is the last nonzero one.
    let free = v.iter().rposition(|x| !x.is_zero()).expect("kernel vectors are nonzero");
    let dropped = jets[free];
    let g_drop = gad.summands[dropped].g.clone();
    let mut relation = Vec::new();
    let mut raw = Vec::new();
    for (idx, s) in gad.summands.iter().enumerate() {
        if idx == dropped {
            continue;
        }
        let mut g = s.g.clone();
        if let Some(pos) = jets.iter().position(|&j| j == idx) {
            let lambda = -v[pos].clone();
            if !lambda.is_zero() {
                g = &g + &g_drop.scale(&lambda);
                relation.push((idx, lambda));
            }
        }
        raw.push(Summand {
            l: s.l.clone(),
            k: s.k,
            g,
        });
    }
    let new = Gad::collect(d, raw)?;
    if new.form() != gad.form() {
        return Err(Error::InvariantViolation("shortened GAD changed the form".into()));
    }
    Ok(Some(Shortening {
        dropped,
        relation,
        gad: new,
    }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShortReport {
    pub length: usize,
    pub degree: u32,
    pub bound: u32,
    pub applies: bool,
    pub conclusion: String,
}

/// An apolar scheme of length at most `2d + 1` is `d`-regular when
/// irredundant; its existence also bounds minimal apolar schemes.
pub fn short_scheme_criterion(z: &Scheme, f: &Polynomial) -> Result<ShortReport> {
    if !is_apolar(z, f)? {
        return Err(Error::NotApolar);
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let length = z.length()?;
    let bound = 2 * d + 1;
    let applies = length <= bound as usize;
    let conclusion = if applies {
        format!(
            "if this scheme is irredundant it is {d}-regular; every minimal apolar scheme of F has length at most {length} <= {bound} and is therefore {d}-regular"
        )
    } else {
        format!("length {length} exceeds {bound}; no conclusion")
    };
    Ok(ShortReport {
        length,
        degree: d,
        bound,
        applies,
        conclusion,
    })
}

/// For each candidate ideal `J ⊇ I(Z)`, whether the subscheme it defines is
/// still apolar to `F`.
pub fn subscheme_apolarity_sweep(z: &Scheme, candidates: &[Ideal], f: &Polynomial) -> Result<Vec<bool>> {
    candidates
        .iter()
        .enumerate()
        .map(|(idx, c)| {
            if !c.contains(z.ideal())? {
                return Err(Error::NotSubscheme(idx));
            }
            is_apolar(&Scheme::new(c.clone())?, f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn x(s: &str, n: usize) -> Polynomial {
        parse_poly(s, n, Family::X).unwrap()
    }

    fn lf(s: &str, n: usize) -> LinearForm {
        LinearForm::parse(s, n, Family::X).unwrap()
    }

    fn gad(d: u32, n: usize, parts: &[(&str, u32, &str)]) -> Gad {
        Gad::validate(
            d,
            parts
                .iter()
                .map(|(l, k, g)| Summand {
                    l: lf(l, n),
                    k: *k,
                    g: x(g, n),
                })
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pure_power_gives_a_simple_point() {
        let l = lf("X0 - 2*X1 + X2", 2);
        let z = natural_apolar_scheme(&l.pow(4), &l).unwrap();
        assert_eq!(z.length().unwrap(), 1);
        assert_eq!(z.regularity().unwrap(), 0);
        assert!(z.ideal().equals(&point_ideal(&l)).unwrap());
    }

    #[test]
    fn validation_errors() {
        let dup = Gad::validate(
            2,
            vec![
                Summand { l: lf("X0", 1), k: 0, g: x("1", 1) },
                Summand { l: lf("2*X0", 1), k: 0, g: x("1", 1) },
            ],
        );
        assert!(matches!(dup, Err(Error::InvalidGad { index: 1, .. })));
        let div = Gad::validate(3, vec![Summand { l: lf("X0", 1), k: 2, g: x("X0*X1", 1) }]);
        assert!(matches!(div, Err(Error::InvalidGad { index: 0, .. })));
        let deg = Gad::validate(3, vec![Summand { l: lf("X0", 1), k: 2, g: x("X1", 1) }]);
        assert!(matches!(deg, Err(Error::InvalidGad { index: 0, .. })));
        let collected = Gad::collect(3, vec![Summand { l: lf("X0", 1), k: 2, g: x("X0*X1", 1) }]).unwrap();
        assert_eq!(collected.summands()[0].k, 1);
        assert_eq!(collected.summands()[0].g, x("X1", 1));
    }

    #[test]
    fn waring_pair_has_no_certificate() {
        let g = gad(3, 1, &[("X0", 0, "1"), ("X1", 0, "1")]);
        assert!(redundancy_certificate(&g, 0).unwrap().is_none());
        assert!(redundancy_certificate(&g, 1).unwrap().is_none());
        let local = gad(3, 1, &[("X0", 0, "1")]);
        assert!(redundancy_certificate(&local, 0).unwrap().is_none());
    }

    #[test]
    fn independent_jets_do_not_shorten() {
        let g = gad(3, 2, &[("X0", 1, "X1"), ("X1", 1, "X2")]);
        assert!(tangential_shorten(&g).unwrap().is_none());
        let thick = gad(3, 1, &[("X0", 2, "X1^2")]);
        assert!(matches!(tangential_shorten(&thick), Err(Error::Precondition(_))));
    }

    #[test]
    fn simple_point_is_short() {
        let l = lf("X0", 2);
        let f = l.pow(3);
        let z = natural_apolar_scheme(&f, &l).unwrap();
        let r = short_scheme_criterion(&z, &f).unwrap();
        assert!(r.applies);
        let other = natural_apolar_scheme(&lf("X1", 2).pow(3), &lf("X1", 2)).unwrap();
        assert!(!is_apolar(&other, &f).unwrap());
        assert!(matches!(short_scheme_criterion(&other, &f), Err(Error::NotApolar)));
    }

    #[test]
    fn sweep_rejects_non_subschemes() {
        let l = lf("X0", 1);
        let z = natural_apolar_scheme(&x("X0^2*X1", 1), &l).unwrap();
        let bigger = Ideal::parse(2, Family::Y, &["Y1^3"]).unwrap();
        assert!(matches!(
            subscheme_apolarity_sweep(&z, &[bigger], &x("X0^2*X1", 1)),
            Err(Error::NotSubscheme(0))
        ));
        let itself = z.ideal().clone();
        assert_eq!(subscheme_apolarity_sweep(&z, &[itself], &x("X0^2*X1", 1)).unwrap(), vec![true]);
    }

    #[test]
    fn lowmultiplicity_needs_two_summands() {
        let g = gad(3, 1, &[("X0", 1, "X1")]);
        assert!(matches!(lowmultiplicity_check(&g), Err(Error::Precondition(_))));
    }

    #[test]
    fn dimension_inference() {
        assert_eq!(infer_dimension(["X0 + 3*X12", "y4"]), 12);
        assert_eq!(infer_dimension(["1"]), 0);
        let _ = rat(0);
    }
}
