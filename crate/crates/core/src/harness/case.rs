//! Case specifications: JSON files or registry shorthand such as
//! `"flat-t4, X=rotation(1,2)"`.

use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::charts;
use crate::error::{Error, Result};
use crate::geometry::{JetMatrix, MetricChart};
use crate::jets::{Jet, MultiIndex};
use crate::operators::TorsionData;
use crate::scalars::{ExactScalar, FloatScalar, GaussRational, Scalar, Tier, Tolerance};

/// Environment variable holding the default jet truncation order.
pub const ORDER_ENV: &str = "WRES_ORDER";
pub const DEFAULT_ORDER: i32 = 6;

/// Registry ids accepted in the `chart` field.
pub const REGISTRY: &[&str] = &[
    "flat-r2",
    "flat-r4",
    "flat-r6",
    "flat-t2",
    "flat-t4",
    "flat-t6",
    "sphere-s2",
    "sphere-s4",
    "sphere-s6",
    "collar-flat",
    "collar-warped",
];

/// Taylor coefficients of `h` for the `collar-warped` chart.
pub const WARPED_H: &[(i64, i64)] = &[(1, 1), (1, 2), (1, 3)];

/// A polynomial term `coeff · x^powers`; `coeff` is a rational like `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Monomial {
    pub coeff: String,
    #[serde(default)]
    pub powers: Vec<u8>,
}

pub type Poly = Vec<Monomial>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum KillingSpec {
    #[default]
    Zero,
    /// Constant components `X^i`.
    Constant { components: Vec<String> },
    /// `s(−x_j ∂_i + x_i ∂_j)` for 1-based axes `(i, j)`.
    Rotation {
        axes: [usize; 2],
        #[serde(default)]
        scale: Option<String>,
    },
    Polynomial { components: Vec<Poly> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionComponent {
    /// 1-based, strictly increasing.
    pub indices: [usize; 3],
    pub value: Poly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorsionSpec {
    pub components: Vec<TorsionComponent>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CollarSpec {
    /// Taylor coefficients of `h(x_n)`, starting with `h(0) = 1`.
    #[serde(default)]
    pub h: Option<Vec<String>>,
    /// Multiplier for the perturbed boundary term; defaults to `x_n`.
    #[serde(default)]
    pub f: Option<Poly>,
}

/// A metric given entry by entry as polynomials (upper triangle is enough).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InlineMetric {
    pub dim: usize,
    pub entries: Vec<Vec<Poly>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseSpec {
    #[serde(default)]
    pub id: Option<String>,
    #[serde(default)]
    pub chart: Option<String>,
    #[serde(default)]
    pub metric: Option<InlineMetric>,
    #[serde(default)]
    pub killing: KillingSpec,
    #[serde(default)]
    pub torsion: Option<TorsionSpec>,
    #[serde(default)]
    pub collar: Option<CollarSpec>,
    #[serde(default)]
    pub dim: Option<usize>,
    #[serde(default)]
    pub order: Option<i32>,
    #[serde(default)]
    pub tier: Option<Tier>,
    #[serde(default)]
    pub tolerance: Option<Tolerance>,
    /// Polar angle of the base point on `sphere-s2`.
    #[serde(default)]
    pub theta0: Option<f64>,
}

impl CaseSpec {
    pub fn from_chart(chart: &str) -> Self {
        CaseSpec {
            id: None,
            chart: Some(chart.to_string()),
            metric: None,
            killing: KillingSpec::Zero,
            torsion: None,
            collar: None,
            dim: None,
            order: None,
            tier: None,
            tolerance: None,
            theta0: None,
        }
    }

    pub fn id(&self) -> String {
        self.id.clone().or_else(|| self.chart.clone()).unwrap_or_else(|| "inline".into())
    }

    pub fn dim(&self) -> usize {
        self.dim.unwrap_or(0)
    }

    pub fn order(&self) -> i32 {
        self.order.unwrap_or(DEFAULT_ORDER)
    }

    pub fn tier(&self) -> Tier {
        self.tier.unwrap_or(Tier::Exact)
    }

    pub fn tolerance(&self) -> Tolerance {
        self.tolerance.unwrap_or_default()
    }

    pub fn is_torus(&self) -> bool {
        self.chart.as_deref().is_some_and(|c| c.starts_with("flat-t"))
    }

    pub fn is_collar(&self) -> bool {
        self.chart.as_deref().is_some_and(|c| c.starts_with("collar-"))
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.chart.as_deref(), Some(c) if c.starts_with("flat-") || c == "collar-flat")
    }

    pub fn is_round_sphere(&self) -> bool {
        self.chart.as_deref().is_some_and(|c| c.starts_with("sphere-"))
    }

    /// `true` for constant Killing data (zero included).
    pub fn killing_is_constant(&self) -> bool {
        match &self.killing {
            KillingSpec::Zero | KillingSpec::Constant { .. } => true,
            KillingSpec::Rotation { .. } => false,
            KillingSpec::Polynomial { components } => {
                components.iter().all(|p| p.iter().all(|m| m.powers.iter().all(|&e| e == 0)))
            }
        }
    }
}

/// Reads a case from a file path, a JSON document or registry shorthand.
pub fn load_case(input: &str) -> Result<CaseSpec> {
    let trimmed = input.trim();
    let text = if trimmed.starts_with('{') {
        trimmed.to_string()
    } else if Path::new(trimmed).is_file() {
        std::fs::read_to_string(trimmed)?
    } else {
        return finalize(parse_shorthand(trimmed)?);
    };
    let spec: CaseSpec = serde_json::from_str(&text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    finalize(spec)
}

fn default_order() -> Result<i32> {
    match std::env::var(ORDER_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse {
            location: ORDER_ENV.into(),
            message: format!("expected an integer, got {v:?}"),
        }),
        Err(_) => Ok(DEFAULT_ORDER),
    }
}

/// Applies defaults and checks the invariants.
pub fn finalize(mut spec: CaseSpec) -> Result<CaseSpec> {
    let mut problems = Vec::new();
    let chart_dim = match (&spec.chart, &spec.metric) {
        (Some(c), None) => match registry_dim(c) {
            Some(n) => Some(n),
            None => return Err(Error::UnknownChart(c.clone())),
        },
        (None, Some(m)) => Some(m.dim),
        (Some(_), Some(_)) => {
            problems.push("give either `chart` or `metric`, not both".to_string());
            None
        }
        (None, None) => {
            problems.push("missing `chart` or `metric`".to_string());
            None
        }
    };
    let n = match (chart_dim, spec.dim) {
        (Some(c), Some(d)) if c != d => {
            problems.push(format!("dimension {d} does not match the chart dimension {c}"));
            d
        }
        (Some(c), _) => c,
        (None, Some(d)) => d,
        (None, None) => 0,
    };
    if n % 2 == 1 || !(2..=6).contains(&n) {
        problems.push(format!("dimension {n} must be even and between 2 and 6"));
    }
    spec.dim = Some(n);
    if spec.order.is_none() {
        spec.order = Some(default_order()?);
    }
    if spec.order() < 2 {
        problems.push(format!("order {} is below 2", spec.order()));
    }
    if spec.tier.is_none() {
        let float_only = spec.chart.as_deref() == Some("sphere-s2");
        spec.tier = Some(if float_only { Tier::Float } else { Tier::Exact });
    }
    if let Some(t) = spec.tolerance {
        if !(t.abs > 0.0 && t.rel >= 0.0) {
            problems.push("tolerance must have abs > 0 and rel >= 0".to_string());
        }
    }
    match &spec.killing {
        KillingSpec::Zero => {}
        KillingSpec::Constant { components } => {
            if components.len() != n {
                problems.push(format!("constant X has {} components, expected {n}", components.len()));
            }
            for c in components {
                if let Err(e) = parse_rational(c) {
                    problems.push(e.to_string());
                }
            }
        }
        KillingSpec::Rotation { axes, scale } => {
            let [i, j] = *axes;
            if i == j || i == 0 || j == 0 || i > n || j > n {
                problems.push(format!("rotation axes ({i}, {j}) must be distinct and within 1..={n}"));
            }
            if let Some(Err(e)) = scale.as_deref().map(parse_rational) {
                problems.push(e.to_string());
            }
        }
        KillingSpec::Polynomial { components } => {
            if components.len() != n {
                problems.push(format!("polynomial X has {} components, expected {n}", components.len()));
            }
            components.iter().for_each(|p| check_poly(p, n, &mut problems));
        }
    }
    if let Some(t) = &spec.torsion {
        for c in &t.components {
            let [i, j, k] = c.indices;
            if !(1 <= i && i < j && j < k && k <= n) {
                problems.push(format!("torsion indices {:?} must be increasing within 1..={n}", c.indices));
            }
            check_poly(&c.value, n, &mut problems);
        }
    }
    if let Some(c) = &spec.collar {
        if !spec.is_collar() {
            problems.push("a collar spec needs a collar chart".to_string());
        }
        if let Some(h) = &c.h {
            for v in h {
                if let Err(e) = parse_rational(v) {
                    problems.push(e.to_string());
                }
            }
            if h.first().map(|v| parse_rational(v).ok()) != Some(Some(GaussRational::one())) {
                problems.push("collar h must start with h(0) = 1".to_string());
            }
        }
        if let Some(f) = &c.f {
            check_poly(f, n, &mut problems);
        }
    }
    if let Some(m) = &spec.metric {
        if m.entries.len() != m.dim || m.entries.iter().any(|row| row.len() != m.dim) {
            problems.push(format!("inline metric must be {0}×{0}", m.dim));
        }
        m.entries.iter().flatten().for_each(|p| check_poly(p, n, &mut problems));
    }
    if problems.is_empty() {
        Ok(spec)
    } else {
        Err(Error::Validation(problems))
    }
}

fn check_poly(p: &Poly, n: usize, problems: &mut Vec<String>) {
    for m in p {
        if let Err(e) = parse_rational(&m.coeff) {
            problems.push(e.to_string());
        }
        if m.powers.len() > n {
            problems.push(format!("monomial powers {:?} exceed dimension {n}", m.powers));
        }
    }
}

fn registry_dim(id: &str) -> Option<usize> {
    if !REGISTRY.contains(&id) {
        return None;
    }
    if id.starts_with("collar-") {
        return Some(6);
    }
    id.chars().last()?.to_digit(10).map(|d| d as usize)
}

/// `"p"`, `"p/q"` or a decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<GaussRational> {
    let bad = || Error::Parse { location: format!("{s:?}"), message: "expected a rational number".into() };
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q == BigInt::from(0) {
            return Err(bad());
        }
        return Ok(GaussRational::real(BigRational::new(p, q)));
    }
    if let Ok(p) = s.parse::<BigInt>() {
        return Ok(GaussRational::real(BigRational::from_integer(p)));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let p: BigInt = digits.parse().map_err(|_| bad())?;
        let q = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(GaussRational::real(BigRational::new(p, q)));
    }
    Err(bad())
}

fn split_top_level(s: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() {
        parts.push(cur.trim().to_string());
    }
    parts
}

fn call_args<'a>(text: &'a str, name: &str) -> Option<Vec<&'a str>> {
    let rest = text.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    Some(rest.split(',').map(str::trim).filter(|a| !a.is_empty()).collect())
}

fn shorthand_error(part: &str, message: &str) -> Error {
    Error::Parse { location: format!("{part:?}"), message: message.into() }
}

/// `chart[, X=…][, T=…][, f=…][, order=K][, tier=exact|float]`.
///
/// `X` is `0`, `rotation(i,j)` or `constant(v1,…,vn)`; `T` is a `+`-joined
/// list of `dx(i,j,k)` with optional factors `c*x<k>^<p>*dx(i,j,k)`;
/// `f` is `1`, `x<k>` or `x<k>^<p>`.
pub fn parse_shorthand(text: &str) -> Result<CaseSpec> {
    let parts = split_top_level(text);
    let (chart, rest) = parts.split_first().ok_or_else(|| shorthand_error(text, "empty case"))?;
    if chart.contains('=') {
        return Err(shorthand_error(chart, "the first item must be a chart id"));
    }
    let mut spec = CaseSpec::from_chart(chart);
    for part in rest {
        let (key, value) = part.split_once('=').ok_or_else(|| shorthand_error(part, "expected key=value"))?;
        let value = value.trim();
        match key.trim() {
            "X" => spec.killing = parse_killing(value).ok_or_else(|| shorthand_error(part, "unknown Killing field"))?,
            "T" => spec.torsion = Some(parse_torsion(value).ok_or_else(|| shorthand_error(part, "unknown torsion"))?),
            "f" => {
                let f = parse_multiplier(value).ok_or_else(|| shorthand_error(part, "unknown multiplier"))?;
                spec.collar.get_or_insert(CollarSpec { h: None, f: None }).f = Some(f);
            }
            "order" => spec.order = Some(value.parse().map_err(|_| shorthand_error(part, "expected an integer"))?),
            "tier" => {
                spec.tier = Some(match value {
                    "exact" => Tier::Exact,
                    "float" => Tier::Float,
                    _ => return Err(shorthand_error(part, "tier must be exact or float")),
                })
            }
            _ => return Err(shorthand_error(part, "unknown key")),
        }
    }
    Ok(spec)
}

fn parse_killing(v: &str) -> Option<KillingSpec> {
    if v == "0" || v == "zero" {
        return Some(KillingSpec::Zero);
    }
    if let Some(args) = call_args(v, "rotation") {
        let axes: Vec<usize> = args.iter().map(|a| a.parse().ok()).collect::<Option<_>>()?;
        return match axes[..] {
            [i, j] => Some(KillingSpec::Rotation { axes: [i, j], scale: None }),
            _ => None,
        };
    }
    call_args(v, "constant")
        .map(|args| KillingSpec::Constant { components: args.iter().map(|a| a.to_string()).collect() })
}

fn parse_torsion(v: &str) -> Option<TorsionSpec> {
    let mut components = Vec::new();
    for term in v.split('+').map(str::trim) {
        let mut factors: Vec<&str> = term.split('*').map(str::trim).collect();
        let form = factors.pop()?;
        let idx: Vec<usize> = call_args(form, "dx")?.iter().map(|a| a.parse().ok()).collect::<Option<_>>()?;
        let [i, j, k] = idx[..] else { return None };
        let mut coeff = "1".to_string();
        let mut powers: Vec<u8> = Vec::new();
        for f in factors {
            if f.starts_with('x') {
                let m = parse_multiplier(f)?.pop()?;
                if m.powers.len() > powers.len() {
                    powers.resize(m.powers.len(), 0);
                }
                for (p, e) in powers.iter_mut().zip(&m.powers) {
                    *p += e;
                }
            } else {
                coeff = f.to_string();
            }
        }
        components.push(TorsionComponent { indices: [i, j, k], value: vec![Monomial { coeff, powers }] });
    }
    Some(TorsionSpec { components })
}

fn parse_multiplier(v: &str) -> Option<Poly> {
    if v == "1" {
        return Some(vec![Monomial { coeff: "1".into(), powers: vec![] }]);
    }
    let body = v.strip_prefix('x')?;
    let (var, pow) = match body.split_once('^') {
        Some((a, p)) => (a.parse::<usize>().ok()?, p.parse::<u8>().ok()?),
        None => (body.parse::<usize>().ok()?, 1),
    };
    if var == 0 {
        return None;
    }
    let mut powers = vec![0u8; var];
    powers[var - 1] = pow;
    Some(vec![Monomial { coeff: "1".into(), powers }])
}

fn scalar_of<S: Scalar>(s: &str) -> Result<S> {
    let g = parse_rational(s)?;
    Ok(S::from_exact(&ExactScalar::from_gauss(g)))
}

/// Evaluates a polynomial spec as a jet in `n` variables.
pub fn poly_jet<S: Scalar>(p: &Poly, n: usize, order: i32) -> Result<Jet<S>> {
    let mut acc = Jet::zero(n, order);
    for m in p {
        let mut idx = MultiIndex::zero();
        for (i, &e) in m.powers.iter().enumerate() {
            idx.0[i] = e;
        }
        acc = &acc + &Jet::monomial(n, order, idx, scalar_of::<S>(&m.coeff)?);
    }
    Ok(acc)
}

/// Builds the chart named by the case.
pub fn build_chart<S: Scalar>(spec: &CaseSpec) -> Result<MetricChart<S>> {
    let n = spec.dim();
    let order = spec.order();
    if let Some(m) = &spec.metric {
        let mut g: JetMatrix<S> = vec![vec![Jet::zero(n, order); n]; n];
        for i in 0..n {
            for j in i..n {
                let p = if m.entries[i][j].is_empty() { &m.entries[j][i] } else { &m.entries[i][j] };
                let v = poly_jet::<S>(p, n, order)?;
                g[i][j] = v.clone();
                g[j][i] = v;
            }
        }
        let chart = MetricChart::new(spec.id(), vec![0.0; n], g)?;
        return if chart.is_normalized() { Ok(chart) } else { chart.normalized() };
    }
    let id = spec.chart.as_deref().ok_or_else(|| Error::UnknownChart(String::new()))?;
    match id {
        _ if id.starts_with("flat-") => Ok(charts::flat(n, order)),
        "sphere-s2" => {
            if S::TIER == Tier::Exact {
                return Err(Error::TierUnsupported("sphere-s2 (polar chart)".into(), Tier::Exact));
            }
            let theta0 = spec.theta0.unwrap_or(std::f64::consts::FRAC_PI_4);
            convert_float_chart(&charts::sphere2_polar(theta0, order)?)
        }
        _ if id.starts_with("sphere-") => charts::sphere_stereographic(n, order),
        "collar-flat" | "collar-warped" => {
            let h = collar_h::<S>(spec)?;
            charts::collar(n, &h, order)
        }
        other => Err(Error::UnknownChart(other.to_string())),
    }
}

fn collar_h<S: Scalar>(spec: &CaseSpec) -> Result<Vec<S>> {
    if let Some(h) = spec.collar.as_ref().and_then(|c| c.h.as_ref()) {
        return h.iter().map(|v| scalar_of::<S>(v)).collect();
    }
    Ok(match spec.chart.as_deref() {
        Some("collar-warped") => WARPED_H.iter().map(|&(p, q)| S::from_ratio(p, q)).collect(),
        _ => vec![S::one()],
    })
}

fn convert_float_chart<S: Scalar>(chart: &MetricChart<FloatScalar>) -> Result<MetricChart<S>> {
    let g: JetMatrix<S> = chart
        .metric()
        .iter()
        .map(|row| row.iter().map(|j| j.map(|x| S::from_f64(x.re()).expect("finite metric entry"))).collect())
        .collect();
    MetricChart::new(chart.name(), chart.base_point().to_vec(), g)
}

/// Killing field components `X^i` as jets.
pub fn build_killing<S: Scalar>(spec: &CaseSpec) -> Result<Vec<Jet<S>>> {
    let n = spec.dim();
    let order = spec.order();
    match &spec.killing {
        KillingSpec::Zero => Ok(vec![Jet::zero(n, i32::MAX); n]),
        KillingSpec::Constant { components } => {
            components.iter().map(|c| Ok(Jet::constant(n, i32::MAX, scalar_of::<S>(c)?))).collect()
        }
        KillingSpec::Rotation { axes, scale } => {
            let s = match scale {
                Some(v) => scalar_of::<S>(v)?,
                None => S::one(),
            };
            let (i, j) = (axes[0] - 1, axes[1] - 1);
            let mut x = vec![Jet::zero(n, i32::MAX); n];
            x[i] = Jet::variable(n, i32::MAX, j).scale(&(-s.clone()));
            x[j] = Jet::variable(n, i32::MAX, i).scale(&s);
            Ok(x.into_iter().map(|c| c.truncate(order)).collect())
        }
        KillingSpec::Polynomial { components } => components.iter().map(|p| poly_jet::<S>(p, n, order)).collect(),
    }
}

pub fn build_torsion<S: Scalar>(spec: &CaseSpec) -> Result<Option<TorsionData<S>>> {
    let n = spec.dim();
    let Some(t) = &spec.torsion else { return Ok(None) };
    let comps = t
        .components
        .iter()
        .map(|c| Ok(([c.indices[0] - 1, c.indices[1] - 1, c.indices[2] - 1], poly_jet::<S>(&c.value, n, spec.order())?)))
        .collect::<Result<Vec<_>>>()?;
    TorsionData::from_increasing(n, comps).map(Some)
}

/// The boundary multiplier `f`, `x_n` by default.
pub fn build_multiplier(spec: &CaseSpec) -> Result<Jet<ExactScalar>> {
    let n = spec.dim();
    match spec.collar.as_ref().and_then(|c| c.f.as_ref()) {
        Some(f) => poly_jet(f, n, spec.order()),
        None => Ok(Jet::variable(n, spec.order(), n - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shorthand_registry_case() {
        let spec = load_case("flat-t4, X=rotation(1,2)").unwrap();
        assert_eq!(spec.dim(), 4);
        assert_eq!(spec.killing, KillingSpec::Rotation { axes: [1, 2], scale: None });
        assert!(spec.is_torus());
    }

    #[test]
    fn odd_dimension_is_rejected() {
        let json = r#"{"chart": "flat-r4", "dim": 5}"#;
        assert!(matches!(load_case(json), Err(Error::Validation(_))));
        let json = r#"{"metric": {"dim": 5, "entries": []}}"#;
        assert!(matches!(load_case(json), Err(Error::Validation(_))));
    }

    #[test]
    fn non_killing_field_loads() {
        let json = r#"{"chart": "flat-r2", "killing": {"kind": "polynomial",
            "components": [[{"coeff": "1", "powers": [1, 0]}], []]}}"#;
        assert!(load_case(json).is_ok());
    }

    #[test]
    fn parse_errors_carry_location() {
        let err = load_case("{\"chart\": \n 12}").unwrap_err();
        assert!(matches!(err, Error::Parse { ref location, .. } if location.contains("line 2")));
        assert!(matches!(load_case("nowhere-r4"), Err(Error::UnknownChart(_))));
    }

    #[test]
    fn shorthand_torsion_and_multiplier() {
        let spec = load_case("collar-flat, X=constant(0,0,0,0,0,1), f=x6^2, T=2*dx(1,2,3)+dx(2,3,4)").unwrap();
        assert_eq!(spec.torsion.as_ref().unwrap().components.len(), 2);
        let f = build_multiplier(&spec).unwrap();
        let mut sq = MultiIndex::zero();
        sq.0[5] = 2;
        assert_eq!(f.coeff(&sq), ExactScalar::one());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/4").unwrap(), GaussRational::from_ratio(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), GaussRational::from_ratio(1, 4));
        assert!(parse_rational("1/0").is_err());
    }
}
