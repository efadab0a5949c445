//! JSON serialization of the engine's artifacts: the algebra datum, PBW
//! elements, Harish-Chandra polynomials, solver bases and Miura images.
//!
//! Coefficients are decimal strings `p` or `p/q` so the documents stay
//! exact; monomials refer to basis labels by index into the algebra
//! document's `basis` array.

use ghostw_core::exactmath::rat_to_string;
use ghostw_core::hc::HCPolynomial;
use ghostw_core::osp::{Algebra, Parity};
use ghostw_core::uea::{PBWMonomial, UEAElement};
use ghostw_core::whittaker::{MiuraImage, WhittakerVector};
use serde_json::{json, Value};
use std::collections::BTreeMap;

pub fn algebra_json(alg: &Algebra) -> Value {
    let basis: Vec<Value> = alg
        .basis
        .iter()
        .map(|b| {
            json!({
                "label": b.name,
                "parity": if b.parity == Parity::Odd { 1 } else { 0 },
                "degree2": b.degree2,
                "weight": b.weight,
            })
        })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let entries = alg.bracket_basis(i, j);
            if !entries.is_empty() {
                let coeffs: Vec<Value> = entries
                    .iter()
                    .map(|(k, c)| json!([k, rat_to_string(c)]))
                    .collect();
                brackets.push(json!([i, j, coeffs]));
            }
        }
    }
    let mut form = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let v = alg.form_basis(i, j);
            if !num_is_zero(v) {
                form.push(json!([i, j, rat_to_string(v)]));
            }
        }
    }
    let chi: Vec<Value> = (0..alg.dim())
        .filter(|&i| !num_is_zero(alg.chi_basis(i)))
        .map(|i| json!([i, rat_to_string(alg.chi_basis(i))]))
        .collect();
    let f_prin: Vec<Value> = alg
        .principal_nilpotent()
        .coords()
        .iter()
        .map(|(k, c)| json!([k, rat_to_string(c)]))
        .collect();
    let rho: Vec<String> = alg.rho().eps.iter().map(rat_to_string).collect();
    json!({
        "schema": "ghostw-algebra/1",
        "n": alg.n,
        "dimension": alg.dim(),
        "basis": basis,
        "brackets": brackets,
        "form": form,
        "chi": chi,
        "f_prin": f_prin,
        "rho": rho,
    })
}

fn num_is_zero(r: &ghostw_core::Rat) -> bool {
    use num_traits::Zero;
    r.is_zero()
}

fn monomial_json(m: &PBWMonomial) -> Value {
    let factors: Vec<Value> = m.factors().iter().map(|(l, e)| json!([l, e])).collect();
    Value::Array(factors)
}

fn terms_json(terms: &BTreeMap<PBWMonomial, ghostw_core::Rat>) -> Value {
    let mut keys: Vec<&PBWMonomial> = terms.keys().collect();
    keys.sort_by(|a, b| a.graded_cmp(b));
    let list: Vec<Value> = keys
        .iter()
        .map(|m| json!({"monomial": monomial_json(m), "coeff": rat_to_string(&terms[*m])}))
        .collect();
    Value::Array(list)
}

pub fn uea_json(e: &UEAElement) -> Value {
    terms_json(e.terms())
}

pub fn whittaker_json(v: &WhittakerVector) -> Value {
    terms_json(v.terms())
}

pub fn hc_poly_json(p: &HCPolynomial) -> Value {
    let mut map = serde_json::Map::new();
    for (exps, c) in p.terms() {
        let key = exps
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(",");
        map.insert(key, Value::String(rat_to_string(c)));
    }
    Value::Object(map)
}

pub fn miura_json(m: &MiuraImage) -> Value {
    json!({
        "one": hc_poly_json(&m.even),
        "phi": hc_poly_json(&m.odd),
    })
}

pub fn basis_json(kind: &str, n: usize, degree: usize, elements: &[UEAElement]) -> Value {
    json!({
        "schema": "ghostw-elements/1",
        "kind": kind,
        "n": n,
        "degree": degree,
        "dimension": elements.len(),
        "elements": elements.iter().map(uea_json).collect::<Vec<_>>(),
    })
}

pub fn whittaker_basis_json(kind: &str, n: usize, degree: usize, elements: &[WhittakerVector]) -> Value {
    json!({
        "schema": "ghostw-elements/1",
        "kind": kind,
        "n": n,
        "degree": degree,
        "dimension": elements.len(),
        "elements": elements.iter().map(whittaker_json).collect::<Vec<_>>(),
    })
}
