//! Golden fixtures for the worked examples and a runner that replays them.
//!
//! A fixture is a JSON file with a list of named definitions, evaluated in
//! order, and a list of checks over those names. Polynomial arguments are
//! texts in the polynomial grammar where `{name}` splices in a previously
//! defined polynomial (or a sampled parameter). Expected ideals are
//! generator lists compared by ideal equality.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value as Json};

use crate::apolarity::{catalecticant_rank, contraction_apply, derivation_apply, global_annihilator};
use crate::error::{Error, Result};
use crate::groebner::{fat_point_ideal, intersect_all, point_ideal, Ideal};
use crate::polyring::{parse_poly, parse_rational, Convention, Family, LinearForm, MonomialOrder, Polynomial};
use crate::schemes::{
    fat_containment_profile, gad_components, gad_scheme, is_apolar, lowmultiplicity_check,
    natural_apolar_trace, redundancy_certificate, regularity_report, short_scheme_criterion,
    subscheme_apolarity_sweep, tangential_shorten, verify_support, Gad, GadJson, Scheme,
};

/// Fixture files, in replay order.
const FIXTURES: &[&str] = &[
    include_str!("../fixtures/v1/natural-off-chart.json"),
    include_str!("../fixtures/v1/natural-coordinate-point.json"),
    include_str!("../fixtures/v1/gad-two-points.json"),
    include_str!("../fixtures/v1/redundant-binary-cubic.json"),
    include_str!("../fixtures/v1/local-beyond-fat-point.json"),
    include_str!("../fixtures/v1/irregular-irredundant-quartic.json"),
    include_str!("../fixtures/v1/tangential-shortening.json"),
    include_str!("../fixtures/v1/short-quartic.json"),
];

#[derive(Clone, Debug, Deserialize)]
pub struct Fixture {
    pub id: String,
    pub title: String,
    /// Projective dimension: variables are indexed `0..=n`.
    pub n: usize,
    #[serde(default)]
    pub definitions: Vec<Definition>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Definition {
    pub name: String,
    pub kind: String,
    #[serde(flatten)]
    pub args: Map<String, Json>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Check {
    pub name: String,
    /// Where the expected value is displayed in the source example.
    pub anchor: String,
    pub op: String,
    pub expected: Json,
    #[serde(flatten)]
    pub args: Map<String, Json>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub computed: Option<Json>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Json>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureReport {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl FixtureReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub fn fixtures() -> Result<Vec<Fixture>> {
    FIXTURES
        .iter()
        .map(|text| serde_json::from_str(text).map_err(|e| Error::Input(format!("bad fixture: {e}"))))
        .collect()
}

pub fn fixture_ids() -> Vec<String> {
    fixtures().map(|f| f.into_iter().map(|f| f.id).collect()).unwrap_or_default()
}

pub fn load_fixture(id: &str) -> Result<Fixture> {
    fixtures()?
        .into_iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownFixture(id.to_string()))
}

pub fn run_fixture(id: &str) -> Result<FixtureReport> {
    Ok(run(&load_fixture(id)?))
}

/// Runs every fixture, one thread each.
pub fn run_all() -> Result<Vec<FixtureReport>> {
    let all = fixtures()?;
    Ok(std::thread::scope(|s| {
        let handles: Vec<_> = all.iter().map(|f| s.spawn(move || run(f))).collect();
        handles.into_iter().map(|h| h.join().expect("fixture thread panicked")).collect()
    }))
}

/// Evaluates a fixture's definitions, in order.
pub fn evaluate(fixture: &Fixture) -> Result<Vec<(String, Value)>> {
    let mut env = Env {
        n: fixture.n,
        values: BTreeMap::new(),
    };
    let mut out = Vec::new();
    for d in &fixture.definitions {
        env.define(d)?;
        out.push((d.name.clone(), env.values[&d.name].clone()));
    }
    Ok(out)
}

/// Replays a fixture. Definition errors fail every check; check errors
/// fail only that check.
pub fn run(fixture: &Fixture) -> FixtureReport {
    let mut env = Env {
        n: fixture.n,
        values: BTreeMap::new(),
    };
    let setup = fixture.definitions.iter().try_for_each(|d| env.define(d));
    let checks: Vec<CheckOutcome> = fixture
        .checks
        .iter()
        .map(|c| {
            let result = match &setup {
                Ok(()) => env.check(c),
                Err(e) => Err(Error::Input(format!("definitions failed: {e}"))),
            };
            match result {
                Ok((true, _)) => CheckOutcome {
                    name: c.name.clone(),
                    anchor: c.anchor.clone(),
                    passed: true,
                    computed: None,
                    expected: None,
                },
                Ok((false, computed)) => CheckOutcome {
                    name: c.name.clone(),
                    anchor: c.anchor.clone(),
                    passed: false,
                    computed: Some(computed),
                    expected: Some(c.expected.clone()),
                },
                Err(e) => CheckOutcome {
                    name: c.name.clone(),
                    anchor: c.anchor.clone(),
                    passed: false,
                    computed: Some(serde_json::json!({ "error": e.kind(), "message": e.to_string() })),
                    expected: Some(c.expected.clone()),
                },
            }
        })
        .collect();
    FixtureReport {
        id: fixture.id.clone(),
        title: fixture.title.clone(),
        passed: checks.iter().all(|c| c.passed),
        checks,
    }
}

/// A value bound by a fixture definition.
#[derive(Clone, Debug)]
pub enum Value {
    Poly(Polynomial),
    Linear(LinearForm),
    Gad(Gad),
    Ideal(Ideal),
}

struct Env {
    n: usize,
    values: BTreeMap<String, Value>,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn arg<'a>(args: &'a Map<String, Json>, key: &str) -> Result<&'a Json> {
    args.get(key).ok_or_else(|| bad(format!("missing argument `{key}`")))
}

fn arg_str<'a>(args: &'a Map<String, Json>, key: &str) -> Result<&'a str> {
    arg(args, key)?
        .as_str()
        .ok_or_else(|| bad(format!("argument `{key}` must be a string")))
}

fn arg_u64(args: &Map<String, Json>, key: &str) -> Result<u64> {
    arg(args, key)?
        .as_u64()
        .ok_or_else(|| bad(format!("argument `{key}` must be a non-negative integer")))
}

fn str_list(v: &Json) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| bad("expected a list of strings"))?
        .iter()
        .map(|s| s.as_str().map(str::to_string).ok_or_else(|| bad("expected a string")))
        .collect()
}

fn ideal_json(i: &Ideal) -> Json {
    serde_json::to_value(i.to_json()).expect("plain data")
}

fn gad_json(g: &Gad) -> Json {
    serde_json::to_value(g.to_json()).expect("plain data")
}

/// Reads a rational given as a JSON integer or a `"p/q"` string.
fn rational_of(v: &Json) -> Result<crate::polyring::Rational> {
    match v {
        Json::Number(n) => parse_rational(&n.to_string()),
        Json::String(s) => parse_rational(s),
        _ => Err(bad("expected a rational")),
    }
}

/// Same summands up to rescaling `L` (and `G` accordingly).
fn gads_equivalent(a: &Gad, b: &Gad) -> bool {
    a.degree() == b.degree()
        && a.summands().len() == b.summands().len()
        && a.summands().iter().zip(b.summands()).all(|(x, y)| {
            x.k == y.k && x.l.is_proportional(&y.l) && x.form(a.degree()) == y.form(b.degree())
        })
}

/// Replaces `{key}` by `(value)`.
fn splice(text: &str, subs: &BTreeMap<String, String>) -> Result<String> {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while let Some(start) = rest.find('{') {
        out.push_str(&rest[..start]);
        let end = rest[start..]
            .find('}')
            .ok_or_else(|| bad(format!("unclosed placeholder in `{text}`")))?
            + start;
        let key = &rest[start + 1..end];
        let value = subs.get(key).ok_or_else(|| bad(format!("unknown placeholder `{key}`")))?;
        out.push('(');
        out.push_str(value);
        out.push(')');
        rest = &rest[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

impl Env {
    fn subs(&self) -> BTreeMap<String, String> {
        self.values
            .iter()
            .filter_map(|(k, v)| match v {
                Value::Poly(p) if p.convention() == Convention::Standard => Some((k.clone(), p.to_string())),
                Value::Linear(l) => Some((k.clone(), l.to_string())),
                _ => None,
            })
            .collect()
    }

    fn text(&self, raw: &str, extra: &BTreeMap<String, String>) -> Result<String> {
        let mut subs = self.subs();
        subs.extend(extra.iter().map(|(k, v)| (k.clone(), v.clone())));
        splice(raw, &subs)
    }

    fn poly_text(&self, raw: &str, family: Family) -> Result<Polynomial> {
        self.poly_with(raw, family, &BTreeMap::new())
    }

    fn poly_with(&self, raw: &str, family: Family, extra: &BTreeMap<String, String>) -> Result<Polynomial> {
        parse_poly(&self.text(raw, extra)?, self.n, family)
    }

    fn get(&self, name: &str) -> Result<&Value> {
        self.values.get(name).ok_or_else(|| bad(format!("undefined name `{name}`")))
    }

    fn poly(&self, name: &str) -> Result<Polynomial> {
        match self.get(name)? {
            Value::Poly(p) => Ok(p.clone()),
            Value::Linear(l) => Ok(l.to_polynomial()),
            _ => Err(bad(format!("`{name}` is not a polynomial"))),
        }
    }

    /// A polynomial argument: a defined name or a grammar text.
    fn poly_arg(&self, args: &Map<String, Json>, key: &str, family: Family) -> Result<Polynomial> {
        let raw = arg_str(args, key)?;
        match self.values.get(raw) {
            Some(_) => self.poly(raw),
            None => self.poly_text(raw, family),
        }
    }

    fn linear(&self, name: &str) -> Result<LinearForm> {
        match self.get(name)? {
            Value::Linear(l) => Ok(l.clone()),
            _ => Err(bad(format!("`{name}` is not a linear form"))),
        }
    }

    fn gad(&self, name: &str) -> Result<Gad> {
        match self.get(name)? {
            Value::Gad(g) => Ok(g.clone()),
            _ => Err(bad(format!("`{name}` is not a GAD"))),
        }
    }

    fn ideal(&self, name: &str) -> Result<Ideal> {
        match self.get(name)? {
            Value::Ideal(i) => Ok(i.clone()),
            _ => Err(bad(format!("`{name}` is not an ideal"))),
        }
    }

    fn scheme(&self, name: &str) -> Result<Scheme> {
        Scheme::new(self.ideal(name)?)
    }

    fn ideal_from(&self, gens: &Json) -> Result<Ideal> {
        let polys = str_list(gens)?
            .iter()
            .map(|g| self.poly_text(g, Family::Y))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(self.n + 1, Family::Y, polys)
    }

    fn gad_from(&self, j: &Json, extra: &BTreeMap<String, String>) -> Result<Gad> {
        let mut parsed: GadJson =
            serde_json::from_value(j.clone()).map_err(|e| bad(format!("bad GAD: {e}")))?;
        parsed.n = Some(self.n);
        for s in &mut parsed.summands {
            s.l = self.text(&s.l, extra)?;
            s.g = self.text(&s.g, extra)?;
        }
        Gad::from_json(&parsed)
    }

    fn define(&mut self, d: &Definition) -> Result<()> {
        let a = &d.args;
        let value = match d.kind.as_str() {
            "x" => Value::Poly(self.poly_text(arg_str(a, "text")?, Family::X)?),
            "y" => Value::Poly(self.poly_text(arg_str(a, "text")?, Family::Y)?),
            "x_dp" => Value::Poly(
                self.poly_text(arg_str(a, "text")?, Family::X)?
                    .relabel(Convention::DividedPowers),
            ),
            "linear" => Value::Linear(LinearForm::parse(&self.text(arg_str(a, "text")?, &BTreeMap::new())?, self.n, Family::X)?),
            "gad" => Value::Gad(self.gad_from(arg(a, "gad")?, &BTreeMap::new())?),
            "ideal" => Value::Ideal(self.ideal_from(arg(a, "generators")?)?),
            "natural" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let l = self.linear(arg_str(a, "l")?)?;
                Value::Ideal(natural_apolar_trace(&f, &l)?.ideal)
            }
            "local" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let l = self.linear(arg_str(a, "l")?)?;
                Value::Poly(crate::apolarity::local_polynomial(&f, &l)?.local)
            }
            "gad_scheme" => Value::Ideal(gad_scheme(&self.gad(arg_str(a, "gad")?)?)?.ideal().clone()),
            "gad_component" => {
                let idx = arg_u64(a, "index")? as usize;
                let comps = gad_components(&self.gad(arg_str(a, "gad")?)?)?;
                let c = comps.get(idx).ok_or_else(|| bad("component index out of range"))?;
                Value::Ideal(c.ideal().clone())
            }
            "gad_form" => Value::Poly(self.gad(arg_str(a, "gad")?)?.form()),
            "intersection" => {
                let parts = str_list(arg(a, "of")?)?
                    .iter()
                    .map(|n| self.ideal(n))
                    .collect::<Result<Vec<_>>>()?;
                Value::Ideal(intersect_all(&parts)?)
            }
            "point" => Value::Ideal(point_ideal(&self.linear(arg_str(a, "l")?)?)),
            "fat_point" => {
                let l = self.linear(arg_str(a, "l")?)?;
                Value::Ideal(fat_point_ideal(&l, arg_u64(a, "k")? as u32)?)
            }
            "shorten" => {
                let g = self.gad(arg_str(a, "gad")?)?;
                let s = tangential_shorten(&g)?.ok_or_else(|| bad("no tangential relation found"))?;
                Value::Gad(s.gad)
            }
            "rewrite" => {
                let g = self.gad(arg_str(a, "gad")?)?;
                let c = redundancy_certificate(&g, arg_u64(a, "index")? as usize)?
                    .ok_or_else(|| bad("no redundancy certificate"))?;
                Value::Gad(c.rewritten)
            }
            other => return Err(bad(format!("unknown definition kind `{other}`"))),
        };
        self.values.insert(d.name.clone(), value);
        Ok(())
    }

    /// Returns whether the check passed and the computed artifact.
    fn check(&self, c: &Check) -> Result<(bool, Json)> {
        let a = &c.args;
        let exp = &c.expected;
        match c.op.as_str() {
            "hankel" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let l = self.linear(arg_str(a, "l")?)?;
                let h = natural_apolar_trace(&f, &l)?.hankel;
                let json = h.to_json();
                let rows = exp.get("rows").ok_or_else(|| bad("expected.rows"))?;
                let want: Vec<Vec<crate::polyring::Rational>> = rows
                    .as_array()
                    .ok_or_else(|| bad("rows must be a list"))?
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .ok_or_else(|| bad("row must be a list"))?
                            .iter()
                            .map(rational_of)
                            .collect()
                    })
                    .collect::<Result<_>>()?;
                let mut ok = want.len() == h.entries.rows()
                    && want.iter().enumerate().all(|(i, r)| r.as_slice() == h.entries.row(i));
                if let Some(labels) = exp.get("col_labels") {
                    ok &= *labels == json["col_labels"];
                }
                if let Some(labels) = exp.get("row_labels") {
                    ok &= *labels == json["row_labels"];
                }
                Ok((ok, json))
            }
            "local_annihilator" | "homogenized" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let l = self.linear(arg_str(a, "l")?)?;
                let t = natural_apolar_trace(&f, &l)?;
                let got = if c.op == "local_annihilator" { t.local_ideal() } else { t.homogenized };
                Ok((got.equals(&self.ideal_from(exp)?)?, ideal_json(&got)))
            }
            "local_groebner_grlex" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let l = self.linear(arg_str(a, "l")?)?;
                let gb = natural_apolar_trace(&f, &l)?.local_ideal().groebner(MonomialOrder::Grlex);
                let mut got: Vec<Polynomial> = gb.elements().to_vec();
                let mut want: Vec<Polynomial> = str_list(exp)?
                    .iter()
                    .map(|s| Ok(self.poly_text(s, Family::Y)?.monic(MonomialOrder::Grlex)))
                    .collect::<Result<_>>()?;
                got.sort_by(|x, y| x.to_string().cmp(&y.to_string()));
                want.sort_by(|x, y| x.to_string().cmp(&y.to_string()));
                let shown: Vec<String> = got.iter().map(ToString::to_string).collect();
                Ok((got == want, serde_json::json!(shown)))
            }
            "ideal" => {
                let i = self.ideal(arg_str(a, "ideal")?)?;
                Ok((i.equals(&self.ideal_from(exp)?)?, ideal_json(&i)))
            }
            "ideal_equal" => {
                let x = self.ideal(arg_str(a, "a")?)?;
                let y = self.ideal(arg_str(a, "b")?)?;
                let eq = x.equals(&y)?;
                Ok((Json::Bool(eq) == *exp, Json::Bool(eq)))
            }
            "subideal" => {
                let sub = self.ideal(arg_str(a, "sub")?)?;
                let sup = self.ideal(arg_str(a, "sup")?)?;
                let strict = a.get("strict").and_then(Json::as_bool).unwrap_or(false);
                let mut got = sup.contains(&sub)?;
                if strict {
                    got &= !sub.contains(&sup)?;
                }
                Ok((Json::Bool(got) == *exp, Json::Bool(got)))
            }
            "length" => {
                let len = self.scheme(arg_str(a, "ideal")?)?.length()?;
                Ok((Json::from(len) == *exp, Json::from(len)))
            }
            "hilbert" => {
                let h = self.scheme(arg_str(a, "ideal")?)?.hilbert()?;
                let want: Vec<usize> = serde_json::from_value(exp.clone()).map_err(|e| bad(e.to_string()))?;
                let got = h.prefix(want.len());
                Ok((got == want, serde_json::json!(got)))
            }
            "regular" => {
                let z = self.scheme(arg_str(a, "ideal")?)?;
                let r = regularity_report(&z, arg_u64(a, "d")? as u32)?;
                Ok((Json::Bool(r.is_d_regular) == *exp, serde_json::to_value(r).expect("plain data")))
            }
            "apolar" => {
                let z = self.scheme(arg_str(a, "ideal")?)?;
                let got = is_apolar(&z, &self.poly_arg(a, "f", Family::X)?)?;
                Ok((Json::Bool(got) == *exp, Json::Bool(got)))
            }
            "derivation" => {
                let g = self.poly_arg(a, "g", Family::Y)?;
                let f = self.poly_arg(a, "f", Family::X)?;
                let got = derivation_apply(&g, &f)?;
                let want = self.poly_text(exp.as_str().ok_or_else(|| bad("expected text"))?, Family::X)?;
                Ok((got == want, Json::String(got.to_string())))
            }
            "contraction" => {
                let g = self.poly_arg(a, "g", Family::Y)?;
                let f = self.poly(arg_str(a, "f")?)?;
                let got = contraction_apply(&g, &f)?;
                let want = self
                    .poly_text(exp.as_str().ok_or_else(|| bad("expected text"))?, Family::X)?
                    .relabel(Convention::DividedPowers);
                Ok((got == want, Json::String(got.to_string())))
            }
            "dp_equal" => {
                let got = self.poly(arg_str(a, "poly")?)?;
                let want = self
                    .poly_text(exp.as_str().ok_or_else(|| bad("expected text"))?, Family::X)?
                    .relabel(Convention::DividedPowers);
                Ok((got == want, Json::String(got.to_string())))
            }
            "poly_equal" => {
                let x = self.poly_arg(a, "a", Family::X)?.to_standard();
                let y = self.poly_arg(a, "b", Family::X)?.to_standard();
                Ok((Json::Bool(x == y) == *exp, Json::String(x.to_string())))
            }
            "fat_containment" => {
                let z = self.scheme(arg_str(a, "ideal")?)?;
                let supports = arg(a, "supports")?
                    .as_array()
                    .ok_or_else(|| bad("supports must be a list"))?
                    .iter()
                    .map(|p| {
                        let l = p.get(0).and_then(Json::as_str).ok_or_else(|| bad("support name"))?;
                        let k = p.get(1).and_then(Json::as_u64).ok_or_else(|| bad("support k"))?;
                        Ok((self.linear(l)?, k as u32))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let got = fat_containment_profile(&z, &supports)?;
                Ok((serde_json::json!(got) == *exp, serde_json::json!(got)))
            }
            "fat_point_in" => {
                let i = self.ideal(arg_str(a, "ideal")?)?;
                let fat = fat_point_ideal(&self.linear(arg_str(a, "l")?)?, arg_u64(a, "k")? as u32)?;
                let got = i.contains(&fat)?;
                Ok((Json::Bool(got) == *exp, Json::Bool(got)))
            }
            "catalecticant_hf" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
                let got = (0..=d).map(|i| catalecticant_rank(&f, i)).collect::<Result<Vec<_>>>()?;
                Ok((serde_json::json!(got) == *exp, serde_json::json!(got)))
            }
            "truncated_annihilator" => {
                let f = self.poly_arg(a, "f", Family::X)?;
                let gens = global_annihilator(&f, arg_u64(a, "degree")? as u32)?;
                let got = Ideal::new(self.n + 1, Family::Y, gens)?;
                let eq = got.equals(&self.ideal(arg_str(a, "ideal")?)?)?;
                Ok((Json::Bool(eq) == *exp, ideal_json(&got)))
            }
            "support" => {
                let z = self.scheme(arg_str(a, "ideal")?)?;
                let pts = str_list(arg(a, "points")?)?
                    .iter()
                    .map(|p| self.linear(p))
                    .collect::<Result<Vec<_>>>()?;
                let got = verify_support(&z, &pts)?;
                Ok((Json::Bool(got) == *exp, Json::Bool(got)))
            }
            "redundancy" => {
                let g = self.gad(arg_str(a, "gad")?)?;
                let cert = redundancy_certificate(&g, arg_u64(a, "index")? as usize)?;
                let found = cert.is_some();
                let mut ok = exp.get("found") == Some(&Json::Bool(found));
                let computed = cert.as_ref().map_or(Json::Null, |c| c.to_json());
                if let Some(c) = &cert {
                    if let Some(want) = exp.get("coefficients") {
                        let got: Vec<Json> = c
                            .terms
                            .iter()
                            .map(|t| Json::String(t.coefficient.clone()))
                            .collect();
                        ok &= Json::Array(got) == *want;
                    }
                    if let Some(want) = exp.get("rewritten") {
                        ok &= gads_equivalent(&c.rewritten, &self.gad_from(want, &BTreeMap::new())?);
                    }
                }
                Ok((ok, computed))
            }
            "gad_equivalent" => {
                let x = self.gad(arg_str(a, "a")?)?;
                let y = self.gad(arg_str(a, "b")?)?;
                let eq = gads_equivalent(&x, &y);
                Ok((Json::Bool(eq) == *exp, gad_json(&x)))
            }
            "shorten" => {
                let g = self.gad(arg_str(a, "gad")?)?;
                let Some(s) = tangential_shorten(&g)? else {
                    return Ok((exp.is_null(), Json::Null));
                };
                let z = gad_scheme(&s.gad)?;
                let len = z.length()?;
                let mut ok = exp.get("dropped") == Some(&Json::from(s.dropped))
                    && exp.get("length") == Some(&Json::from(len));
                if let Some(want) = exp.get("gad") {
                    ok &= gads_equivalent(&s.gad, &self.gad_from(want, &BTreeMap::new())?);
                }
                Ok((
                    ok,
                    serde_json::json!({ "dropped": s.dropped, "length": len, "gad": gad_json(&s.gad) }),
                ))
            }
            "sweep" => {
                let z = self.scheme(arg_str(a, "ideal")?)?;
                let cands = str_list(arg(a, "candidates")?)?
                    .iter()
                    .map(|n| self.ideal(n))
                    .collect::<Result<Vec<_>>>()?;
                let got = subscheme_apolarity_sweep(&z, &cands, &self.poly_arg(a, "f", Family::X)?)?;
                Ok((serde_json::json!(got) == *exp, serde_json::json!(got)))
            }
            "short_criterion" => {
                let z = self.scheme(arg_str(a, "ideal")?)?;
                let r = short_scheme_criterion(&z, &self.poly_arg(a, "f", Family::X)?)?;
                let ok = exp.get("length") == Some(&Json::from(r.length))
                    && exp.get("applies") == Some(&Json::Bool(r.applies));
                Ok((ok, serde_json::to_value(r).expect("plain data")))
            }
            "lowmultiplicity" => {
                let r = lowmultiplicity_check(&self.gad(arg_str(a, "gad")?)?)?;
                let got = serde_json::to_value(&r).expect("plain data");
                let ok = exp
                    .as_object()
                    .ok_or_else(|| bad("expected an object"))?
                    .iter()
                    .all(|(k, v)| got.get(k) == Some(v));
                Ok((ok, got))
            }
            "derivation_family" => {
                let f_raw = arg_str(a, "f")?;
                let gs = str_list(arg(a, "g")?)?;
                let want = str_list(exp)?;
                if gs.len() != want.len() {
                    return Err(bad("one expected value per operator"));
                }
                let mut mismatches = Vec::new();
                for sample in self.samples(a)? {
                    let f = self.poly_with(f_raw, Family::X, &sample)?;
                    for (g, w) in gs.iter().zip(&want) {
                        let got = derivation_apply(&self.poly_text(g, Family::Y)?, &f)?;
                        let expect = self.poly_with(w, Family::X, &sample)?;
                        if got != expect {
                            mismatches.push(serde_json::json!({
                                "sample": sample, "g": g, "computed": got.to_string(),
                            }));
                        }
                    }
                }
                Ok((mismatches.is_empty(), Json::Array(mismatches)))
            }
            "gad_family" => {
                let target = self.ideal(arg_str(a, "ideal")?)?;
                let template = arg(a, "gad")?;
                let mut mismatches = Vec::new();
                for sample in self.samples(a)? {
                    let g = self.gad_from(template, &sample)?;
                    let z = gad_scheme(&g)?;
                    if !z.ideal().equals(&target)? {
                        mismatches.push(serde_json::json!({ "sample": sample, "ideal": ideal_json(z.ideal()) }));
                    }
                }
                Ok((Json::Bool(mismatches.is_empty()) == *exp, Json::Array(mismatches)))
            }
            other => Err(bad(format!("unknown check op `{other}`"))),
        }
    }

    /// Parameter assignments from `params` and `samples` (rows of rationals).
    fn samples(&self, a: &Map<String, Json>) -> Result<Vec<BTreeMap<String, String>>> {
        let params = str_list(arg(a, "params")?)?;
        arg(a, "samples")?
            .as_array()
            .ok_or_else(|| bad("samples must be a list"))?
            .iter()
            .map(|row| {
                let row = row.as_array().ok_or_else(|| bad("sample must be a list"))?;
                if row.len() != params.len() {
                    return Err(bad("sample length differs from params"));
                }
                params
                    .iter()
                    .zip(row)
                    .map(|(p, v)| Ok((p.clone(), rational_of(v)?.to_string())))
                    .collect()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse_with_unique_ids() {
        let all = fixtures().unwrap();
        let mut ids: Vec<_> = all.iter().map(|f| f.id.clone()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), all.len());
        assert!(all.iter().all(|f| f.checks.iter().all(|c| !c.anchor.is_empty())));
    }

    #[test]
    fn placeholders() {
        let subs = BTreeMap::from([("G".to_string(), "X0 + X1".to_string())]);
        assert_eq!(splice("X2*{G}", &subs).unwrap(), "X2*(X0 + X1)");
        assert!(splice("{H}", &subs).is_err());
        assert!(splice("{G", &subs).is_err());
    }

    #[test]
    fn unknown_fixture() {
        assert!(matches!(run_fixture("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn broken_definitions_fail_every_check() {
        let f: Fixture = serde_json::from_str(
            r#"{"id":"t","title":"t","n":1,
                "definitions":[{"name":"F","kind":"x","text":"X7"}],
                "checks":[{"name":"c","anchor":"a","op":"length","ideal":"F","expected":1}]}"#,
        )
        .unwrap();
        let r = run(&f);
        assert!(!r.passed);
        assert_eq!(r.failures().count(), 1);
    }
}
