//! Independent oracles and random generators shared by the integration tests.
//!
//! The oracles work on plain coefficient maps with their own elimination,
//! so they share no code path with the Gröbner machinery under test.

#![allow(dead_code)]

use std::collections::BTreeMap;

use apolar_kit::groebner::Ideal;
use apolar_kit::polyring::{Convention, Exponent, Family, LinearForm, Polynomial, Rational};
use apolar_kit::schemes::{Gad, Summand};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub type Coeffs = BTreeMap<Vec<u32>, Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Coefficient map exactly as stored (no convention change).
pub fn coeffs(p: &Polynomial) -> Coeffs {
    p.terms().map(|(e, c)| (e.as_slice().to_vec(), c.clone())).collect()
}

pub fn to_poly(nvars: usize, family: Family, c: &Coeffs) -> Polynomial {
    Polynomial::from_terms(nvars, family, c.iter().map(|(e, v)| (Exponent::new(e.clone()), v.clone())))
}

fn add_into(acc: &mut Coeffs, e: Vec<u32>, c: Rational) {
    let entry = acc.entry(e.clone()).or_insert_with(Rational::zero);
    *entry += c;
    if entry.is_zero() {
        acc.remove(&e);
    }
}

pub fn mul(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let mut out = Coeffs::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            add_into(&mut out, e, ca * cb);
        }
    }
    out
}

/// Every exponent vector of total degree `deg`.
pub fn monomials(nvars: usize, deg: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials(nvars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partial derivative by one variable, standard convention.
pub fn diff(p: &Coeffs, var: usize) -> Coeffs {
    let mut out = Coeffs::new();
    for (e, c) in p {
        if e[var] == 0 {
            continue;
        }
        let mut e2 = e.clone();
        e2[var] -= 1;
        add_into(&mut out, e2, c * q(e[var] as i64));
    }
    out
}

/// `g ∘ f` by repeated differentiation.
pub fn derive(g: &Coeffs, f: &Coeffs) -> Coeffs {
    let mut out = Coeffs::new();
    for (b, gc) in g {
        let mut cur = f.clone();
        for (v, &times) in b.iter().enumerate() {
            for _ in 0..times {
                cur = diff(&cur, v);
            }
        }
        for (e, c) in cur {
            add_into(&mut out, e, gc * c);
        }
    }
    out
}

/// `g ⌟ f` with `f` given by divided-powers coefficients: exponent shift.
pub fn contract(g: &Coeffs, f_dp: &Coeffs) -> Coeffs {
    let mut out = Coeffs::new();
    for (b, gc) in g {
        for (a, fc) in f_dp {
            if a.iter().zip(b).all(|(x, y)| x >= y) {
                let e = a.iter().zip(b).map(|(x, y)| x - y).collect();
                add_into(&mut out, e, gc * fc);
            }
        }
    }
    out
}

/// Rank by plain Gaussian elimination over ℚ.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] / &pivot;
            for j in c..cols {
                let v = &rows[r][j] * &f;
                rows[i][j] -= v;
            }
        }
        r += 1;
    }
    r
}

/// Kernel basis of the map whose columns are `cols` (each of length `len`).
pub fn kernel(len: usize, cols: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = cols.len();
    // row-reduce the matrix with rows = coordinates
    let mut m: Vec<Vec<Rational>> = (0..len).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..len).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for j in 0..n {
            m[r][j] = &m[r][j] * &inv;
        }
        for i in 0..len {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); n];
            v[free] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -m[i][free].clone();
            }
            v
        })
        .collect()
}

/// Spanning set of the degree-`d` part of a homogeneous ideal: all
/// monomial multiples of the generators, as coordinate rows.
pub fn macaulay_rows(gens: &[Coeffs], nvars: usize, d: u32) -> (Vec<Vec<u32>>, Vec<Vec<Rational>>) {
    let basis = monomials(nvars, d);
    let index: BTreeMap<&Vec<u32>, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in gens {
        let Some(gd) = g.keys().next().map(|e| e.iter().sum::<u32>()) else {
            continue;
        };
        if gd > d {
            continue;
        }
        for m in monomials(nvars, d - gd) {
            let mut row = vec![Rational::zero(); basis.len()];
            for (e, c) in g {
                let prod: Vec<u32> = e.iter().zip(&m).map(|(x, y)| x + y).collect();
                row[index[&prod]] = c.clone();
            }
            rows.push(row);
        }
    }
    (basis, rows)
}

/// `dim (S/I)_d` from the Macaulay matrix.
pub fn hilbert_oracle(gens: &[Coeffs], nvars: usize, d: u32) -> usize {
    let (basis, rows) = macaulay_rows(gens, nvars, d);
    basis.len() - rank(rows)
}

/// Membership of a homogeneous `f` in a homogeneous ideal, degreewise.
pub fn member_oracle(gens: &[Coeffs], nvars: usize, f: &Coeffs) -> bool {
    let Some(d) = f.keys().next().map(|e| e.iter().sum::<u32>()) else {
        return true;
    };
    let (basis, mut rows) = macaulay_rows(gens, nvars, d);
    let before = rank(rows.clone());
    rows.push(basis.iter().map(|m| f.get(m).cloned().unwrap_or_default()).collect());
    rank(rows) == before
}

pub fn ideal_coeffs(i: &Ideal) -> Vec<Coeffs> {
    i.generators().iter().map(coeffs).collect()
}

/// Affine annihilator of a divided-powers local polynomial in degrees
/// `≤ bound`: kernel of `g ↦ g ⌟ f` on all monomials up to `bound` in the
/// variables other than `pivot`.
pub fn brute_local_annihilator(f_dp: &Coeffs, nvars: usize, pivot: usize, bound: u32) -> Vec<Coeffs> {
    let mut dom = Vec::new();
    for deg in 0..=bound {
        for m in monomials(nvars, deg) {
            if m[pivot] == 0 {
                dom.push(m);
            }
        }
    }
    let images: Vec<Coeffs> = dom
        .iter()
        .map(|m| contract(&Coeffs::from([(m.clone(), q(1))]), f_dp))
        .collect();
    let mut keys: Vec<Vec<u32>> = images.iter().flat_map(|i| i.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let cols: Vec<Vec<Rational>> = images
        .iter()
        .map(|img| keys.iter().map(|k| img.get(k).cloned().unwrap_or_default()).collect())
        .collect();
    kernel(keys.len(), &cols)
        .into_iter()
        .map(|v| {
            dom.iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c))
                .collect()
        })
        .collect()
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---- random instances ----

pub fn small<R: Rng>(rng: &mut R, bound: i64) -> Rational {
    q(rng.gen_range(-bound..=bound))
}

pub fn random_form<R: Rng>(rng: &mut R, nvars: usize, family: Family, deg: u32, bound: i64) -> Polynomial {
    loop {
        let mut terms = Vec::new();
        for m in monomials(nvars, deg) {
            if rng.gen_bool(0.6) {
                terms.push((Exponent::new(m), small(rng, bound)));
            }
        }
        let p = Polynomial::from_terms(nvars, family, terms);
        if !p.is_zero() {
            return p;
        }
    }
}

/// Any polynomial of degree at most `deg`, possibly inhomogeneous.
pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, family: Family, deg: u32, bound: i64) -> Polynomial {
    let mut p = Polynomial::zero(nvars, family);
    for d in 0..=deg {
        if rng.gen_bool(0.5) {
            p = &p + &random_form(rng, nvars, family, d, bound);
        }
    }
    p
}

pub fn random_linear<R: Rng>(rng: &mut R, nvars: usize, family: Family) -> LinearForm {
    loop {
        let c: Vec<Rational> = (0..nvars).map(|_| small(rng, 2)).collect();
        if let Ok(l) = LinearForm::new(c, family) {
            return l;
        }
    }
}

/// A random valid GAD with `s ≤ max_s` summands and `k_i ≤ max_k`.
pub fn random_gad<R: Rng>(rng: &mut R, nvars: usize, d: u32, max_s: usize, max_k: u32) -> Gad {
    loop {
        let s = rng.gen_range(1..=max_s);
        let mut summands: Vec<Summand> = Vec::new();
        while summands.len() < s {
            let l = random_linear(rng, nvars, Family::X);
            if summands.iter().any(|t| t.l.is_proportional(&l)) {
                continue;
            }
            let k = rng.gen_range(0..=max_k.min(d));
            let g = random_form(rng, nvars, Family::X, k, 3);
            if apolar_kit::polyring::divides_linear(&l, &g).unwrap() {
                continue;
            }
            summands.push(Summand { l, k, g });
        }
        if let Ok(gad) = Gad::validate(d, summands) {
            return gad;
        }
    }
}

/// Divided-powers coefficients of a standard polynomial.
pub fn dp_coeffs(p: &Polynomial) -> Coeffs {
    assert_eq!(p.convention(), Convention::Standard);
    coeffs(&p.to_divided_powers().unwrap())
}

pub fn is_nonzero_vec(v: &[Rational]) -> bool {
    v.iter().any(|x| !x.is_zero())
}

pub fn abs_max(c: &Coeffs) -> Rational {
    c.values().map(Signed::abs).max().unwrap_or_default()
}
