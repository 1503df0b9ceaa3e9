//! Instance files, product descriptions and map literals.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use witt_core::tpa::{case2_product, case3_product, mutation_product, tabulated_product, Product};
use witt_core::{AlgebraVector, Error, GradedMap, GroupSpec, LinearMap, Scalar, Window, WittFunction};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InstanceFile {
    group: GroupSpec,
    f: FunctionSpec,
    #[serde(default)]
    window: Option<WindowSpec>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum FunctionSpec {
    Table { values: BTreeMap<String, String> },
    Additive { gen_values: Vec<String> },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct WindowSpec {
    radius: u64,
    #[serde(default)]
    padding: Option<u64>,
}

/// A loaded and type-checked instance file.
#[derive(Debug)]
pub struct Instance {
    pub f: WittFunction,
    pub window: Option<Window>,
    pub seed: Option<u64>,
}

impl Instance {
    /// The window to use: an explicit radius wins over the instance file, which
    /// wins over `default_radius`. Finite groups always use the whole group.
    pub fn window(&self, radius: Option<u64>, default_radius: u64) -> Window {
        if self.f.group().is_finite() {
            return Window::new(0);
        }
        match (radius, self.window) {
            (Some(r), _) => Window::new(r),
            (None, Some(w)) => w,
            (None, None) => Window::new(default_radius),
        }
    }
}

pub fn load_instance(path: &Path) -> Result<Instance, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse_instance(text: &str) -> Result<Instance, String> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| format!("malformed instance file: {e}"))?;
    let group = file.group;
    group.check().map_err(|e| e.to_string())?;
    let f = match file.f {
        FunctionSpec::Table { values } => {
            let mut table = BTreeMap::new();
            for (k, v) in values {
                let a = group.parse_element(&k).map_err(|e| e.to_string())?;
                let x: Scalar = v.parse().map_err(|e: Error| e.to_string())?;
                if table.insert(a.clone(), x).is_some() {
                    return Err(format!("duplicate table entry for {a}"));
                }
            }
            WittFunction::from_table(group, table)
        }
        FunctionSpec::Additive { gen_values } => {
            let values = gen_values
                .iter()
                .map(|v| v.parse::<Scalar>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            WittFunction::additive(group, values)
        }
    }
    .map_err(|e| e.to_string())?;
    let window = file.window.map(|w| match w.padding {
        Some(p) => Window::with_padding(w.radius, p),
        None => Window::new(w.radius),
    });
    Ok(Instance {
        f,
        window,
        seed: file.seed,
    })
}

#[derive(Debug, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase", deny_unknown_fields)]
enum ProductSpec {
    Mutation { b: String },
    Case2 { b: String },
    Case3 { b0: String, b1: String, b2: String },
    Table { entries: Vec<(String, String, String)> },
}

/// Accepts inline JSON or a path to a JSON file.
pub fn load_product(f: &WittFunction, arg: &str) -> Result<Product, String> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| format!("cannot read product {arg}: {e}"))?
    };
    let spec: ProductSpec = serde_json::from_str(&text).map_err(|e| format!("malformed product: {e}"))?;
    let group = f.group();
    let vector = |s: &str| AlgebraVector::parse(group, s).map_err(|e| e.to_string());
    let product = match spec {
        ProductSpec::Mutation { b } => mutation_product(vector(&b)?),
        ProductSpec::Case2 { b } => {
            case2_product(&f.classify().map_err(|e| e.to_string())?, vector(&b)?).map_err(|e| e.to_string())?
        }
        ProductSpec::Case3 { b0, b1, b2 } => {
            let part = f.classify().map_err(|e| e.to_string())?;
            case3_product(&part, vector(&b0)?, vector(&b1)?, vector(&b2)?).map_err(|e| e.to_string())?
        }
        ProductSpec::Table { entries } => {
            let mut table = BTreeMap::new();
            for (a, b, v) in entries {
                let a = group.parse_element(&a).map_err(|e| e.to_string())?;
                let b = group.parse_element(&b).map_err(|e| e.to_string())?;
                table.insert((a, b), vector(&v)?);
            }
            tabulated_product(group, table).map_err(|e| e.to_string())?
        }
    };
    Ok(product)
}

pub fn product_json(p: &Product) -> Value {
    match p {
        Product::Mutation { b } => json!({"variant": "mutation", "b": b.to_string()}),
        Product::Case2 { b, .. } => json!({"variant": "case2", "b": b.to_string()}),
        Product::Case3 { parts, .. } => json!({
            "variant": "case3",
            "b0": parts[0].to_string(),
            "b1": parts[1].to_string(),
            "b2": parts[2].to_string(),
        }),
        Product::Tabulated(t) => json!({
            "variant": "table",
            "entries": t.iter().map(|((a, b), v)| json!([a.to_string(), b.to_string(), v.to_string()])).collect::<Vec<_>>(),
        }),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapSpec {
    parts: Vec<PartSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PartSpec {
    degree: String,
    #[serde(default)]
    constant: Option<String>,
    #[serde(default)]
    coeffs: Option<BTreeMap<String, String>>,
}

/// Parses a map literal, tabulating constant parts on `domain`:
///
/// * `id`, `scalar:<s>`
/// * `shift:<elem>[:<s>]`, the homogeneous map `e_α ↦ s e_{α+γ}`
/// * `shift0:<elem>[:<s>]`, the same on `Γ₀`-indexed vectors and zero elsewhere
/// * JSON `{"parts":[{"degree":"<elem>","constant":"<s>"} | {"degree":..,"coeffs":{"<elem>":"<s>",..}}]}`
pub fn parse_map(f: &WittFunction, literal: &str, domain: &[witt_core::GroupElement]) -> Result<LinearMap, String> {
    let group = f.group();
    let scalar = |s: &str| s.parse::<Scalar>().map_err(|e| e.to_string());
    let literal = literal.trim();
    if literal.starts_with('{') {
        let spec: MapSpec = serde_json::from_str(literal).map_err(|e| format!("malformed map: {e}"))?;
        let mut parts = Vec::new();
        for part in spec.parts {
            let degree = group.parse_element(&part.degree).map_err(|e| e.to_string())?;
            let map = match (part.constant, part.coeffs) {
                (Some(c), None) => GradedMap::constant(degree, scalar(&c)?, domain),
                (None, Some(coeffs)) => {
                    let mut table = BTreeMap::new();
                    for (k, v) in coeffs {
                        table.insert(group.parse_element(&k).map_err(|e| e.to_string())?, scalar(&v)?);
                    }
                    GradedMap::new(degree, table)
                }
                _ => return Err("each map part needs exactly one of `constant` or `coeffs`".into()),
            };
            parts.push(map);
        }
        return LinearMap::new(parts).map_err(|e| e.to_string());
    }
    let mut fields = literal.split(':');
    let head = fields.next().unwrap_or_default();
    let rest: Vec<&str> = fields.collect();
    match (head, rest.as_slice()) {
        ("id", []) => Ok(LinearMap::scalar(group, Scalar::one(), domain)),
        ("scalar", [s]) => Ok(LinearMap::scalar(group, scalar(s)?, domain)),
        ("shift" | "shift0", [g, tail @ ..]) if tail.len() <= 1 => {
            let degree = group.parse_element(g).map_err(|e| e.to_string())?;
            let c = tail.first().map(|s| scalar(s)).transpose()?.unwrap_or_else(Scalar::one);
            if head == "shift" {
                return Ok(LinearMap::homogeneous(GradedMap::constant(degree, c, domain)));
            }
            let gamma0 = f.kernel().map_err(|e| e.to_string())?;
            Ok(LinearMap::homogeneous(GradedMap::from_fn(degree, domain, |a| {
                if gamma0.contains(a) {
                    c.clone()
                } else {
                    Scalar::zero()
                }
            })))
        }
        _ => Err(format!("malformed map literal `{literal}`")),
    }
}
