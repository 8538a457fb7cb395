//! Curve and map spec ingestion.
//!
//! A curve spec is a JSON document naming a bivariate polynomial either as
//! an explicit term list or as an expression string, with optional named
//! complex parameters that command-line flags may override.

use crate::expr;
use curvelab::intersect::TrivarPoly;
use curvelab::polycalc::BivarPoly;
use num_complex::Complex;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

type C = Complex<f64>;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ComplexSpec {
    #[serde(default)]
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

impl From<ComplexSpec> for C {
    fn from(v: ComplexSpec) -> C {
        C::new(v.re, v.im)
    }
}

/// One monomial c·z^i·w^j; the coefficient is either a literal (re, im)
/// pair or the name of a parameter.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermSpec {
    pub i: u32,
    pub j: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CurveSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub terms: Vec<TermSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expr: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ComplexSpec>,
}

/// One monomial c·x^a·y^b·u^c of a trivariate surface polynomial.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TrivarTermSpec {
    pub a: u32,
    pub b: u32,
    pub c: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub re: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeff: Option<String>,
}

/// A polynomial map C² → C³ together with a surface to pull back through it.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MapSpec {
    pub name: String,
    /// The three coordinate functions g1, g2, g3 of the map.
    pub components: [CurveSpec; 3],
    pub surface: Vec<TrivarTermSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, ComplexSpec>,
}

fn resolve_coeff(
    re: Option<f64>,
    im: Option<f64>,
    coeff: &Option<String>,
    params: &BTreeMap<String, C>,
    path: &str,
) -> Result<C, String> {
    match (coeff, re, im) {
        (Some(name), None, None) => params
            .get(name)
            .copied()
            .ok_or_else(|| format!("{path}: parameter `{name}` is not defined")),
        (None, re, im) => {
            if re.is_none() && im.is_none() {
                return Err(format!("{path}: term needs `re`/`im` or `coeff`"));
            }
            Ok(C::new(re.unwrap_or(0.0), im.unwrap_or(0.0)))
        }
        _ => Err(format!("{path}: `coeff` excludes `re`/`im`")),
    }
}

impl CurveSpec {
    pub fn parse(text: &str) -> Result<CurveSpec, String> {
        let spec: CurveSpec =
            serde_json::from_str(text).map_err(|e| format!("curve spec: {e}"))?;
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<(), String> {
        match (self.terms.is_empty(), &self.expr) {
            (true, None) => return Err("curve spec: needs `terms` or `expr`".into()),
            (false, Some(_)) => return Err("curve spec: `terms` and `expr` are exclusive".into()),
            _ => {}
        }
        let mut seen = BTreeMap::new();
        for (k, t) in self.terms.iter().enumerate() {
            if let Some(prev) = seen.insert((t.i, t.j), k) {
                return Err(format!(
                    "curve spec: terms[{k}] duplicates the (i={}, j={}) monomial of terms[{prev}]",
                    t.i, t.j
                ));
            }
        }
        Ok(())
    }

    /// Lowers the spec to a polynomial, with `overrides` taking precedence
    /// over the spec's own parameter map.
    pub fn build(&self, overrides: &BTreeMap<String, C>) -> Result<BivarPoly<f64>, String> {
        let params = merge_params(&self.params, overrides);
        if let Some(src) = &self.expr {
            return expr::parse(src, &params).map_err(|e| format!("curve `{}`: {e}", self.name));
        }
        let mut poly = BivarPoly::new();
        for (k, t) in self.terms.iter().enumerate() {
            let c = resolve_coeff(t.re, t.im, &t.coeff, &params, &format!("terms[{k}]"))?;
            poly.add_term(t.i, t.j, c);
        }
        if poly.is_zero() {
            return Err(format!("curve `{}` is the zero polynomial", self.name));
        }
        Ok(poly)
    }

    /// The inverse of `parse ∘ build` for term-list specs.
    #[allow(dead_code)]
    pub fn from_poly(name: &str, poly: &BivarPoly<f64>) -> CurveSpec {
        CurveSpec {
            name: name.to_string(),
            terms: poly
                .terms()
                .map(|(&(i, j), &c)| TermSpec {
                    i,
                    j,
                    re: Some(c.re),
                    im: Some(c.im),
                    coeff: None,
                })
                .collect(),
            expr: None,
            params: BTreeMap::new(),
        }
    }
}

impl MapSpec {
    pub fn parse(text: &str) -> Result<MapSpec, String> {
        let spec: MapSpec = serde_json::from_str(text).map_err(|e| format!("map spec: {e}"))?;
        for c in &spec.components {
            c.validate()?;
        }
        if spec.surface.is_empty() {
            return Err("map spec: `surface` needs at least one term".into());
        }
        Ok(spec)
    }

    pub fn build(
        &self,
        overrides: &BTreeMap<String, C>,
    ) -> Result<([BivarPoly<f64>; 3], TrivarPoly<f64>), String> {
        let params = merge_params(&self.params, overrides);
        // Component specs inherit the map-level parameters.
        let mut components = Vec::with_capacity(3);
        for c in &self.components {
            components.push(c.build(&params)?);
        }
        let mut surface = TrivarPoly::new();
        for (k, t) in self.surface.iter().enumerate() {
            let c = resolve_coeff(t.re, t.im, &t.coeff, &params, &format!("surface[{k}]"))?;
            surface.add_term(t.a, t.b, t.c, c);
        }
        if surface.is_zero() {
            return Err(format!("surface of map `{}` is the zero polynomial", self.name));
        }
        let components: [BivarPoly<f64>; 3] = components.try_into().unwrap();
        Ok((components, surface))
    }
}

fn merge_params(base: &BTreeMap<String, ComplexSpec>, overrides: &BTreeMap<String, C>) -> BTreeMap<String, C> {
    let mut out: BTreeMap<String, C> = base
        .iter()
        .map(|(k, v)| (k.clone(), C::new(v.re, v.im)))
        .collect();
    for (k, &v) in overrides {
        out.insert(k.clone(), v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn term_list_round_trips() {
        let text = r#"{"name":"cusp","terms":[{"i":2,"j":0,"re":1,"im":0},{"i":0,"j":3,"re":-1,"im":0}]}"#;
        let spec = CurveSpec::parse(text).unwrap();
        let poly = spec.build(&BTreeMap::new()).unwrap();
        assert_eq!(poly.w_degree(), 3);
        let emitted = serde_json::to_string(&spec).unwrap();
        assert_eq!(CurveSpec::parse(&emitted).unwrap(), spec);
        let back = CurveSpec::from_poly("cusp", &poly).build(&BTreeMap::new()).unwrap();
        assert_eq!(back, poly);
    }

    #[test]
    fn duplicate_terms_are_rejected() {
        let text = r#"{"name":"bad","terms":[{"i":2,"j":0,"re":1},{"i":2,"j":0,"re":3}]}"#;
        let err = CurveSpec::parse(text).unwrap_err();
        assert!(err.contains("duplicates"), "{err}");
    }

    #[test]
    fn named_coefficients_substitute_with_overrides_winning() {
        let text = r#"{"name":"line","terms":[{"i":0,"j":1,"re":1},{"i":0,"j":0,"coeff":"e1"}],
                       "params":{"e1":{"re":0.5}}}"#;
        let spec = CurveSpec::parse(text).unwrap();
        let base = spec.build(&BTreeMap::new()).unwrap();
        assert_eq!(base.eval(C::new(0.0, 0.0), C::new(-0.5, 0.0)), C::new(0.0, 0.0));
        let mut ov = BTreeMap::new();
        ov.insert("e1".to_string(), C::new(0.25, 0.0));
        let shifted = spec.build(&ov).unwrap();
        assert_eq!(shifted.eval(C::new(0.0, 0.0), C::new(-0.25, 0.0)), C::new(0.0, 0.0));
    }

    #[test]
    fn missing_parameter_names_the_offending_term() {
        let text = r#"{"name":"line","terms":[{"i":0,"j":1,"re":1},{"i":0,"j":0,"coeff":"eps"}]}"#;
        let spec = CurveSpec::parse(text).unwrap();
        let err = spec.build(&BTreeMap::new()).unwrap_err();
        assert!(err.contains("terms[1]") && err.contains("eps"), "{err}");
    }
}
