use std::collections::BTreeMap;

use serde_json::{json, Value};

use moduli_core::einf_algebra::build_e;
use moduli_core::exact_math::{Field, FieldKind, Fp, Rational};
use moduli_core::grassmannian::{plucker_ideal, plucker_ring};
use moduli_core::moduli::{curve_over_un, special_curve, special_moduli, u_n_full, u_n_reduced};
use moduli_core::ncrewrite::system_to_text;
use moduli_core::polyring::text::{ideal_to_cas_text, ideal_to_json, ideal_to_text};
use moduli_core::polyring::IdealPresentation;

pub const TARGETS: [&str; 6] = ["un-full", "un-reduced", "curve", "curve-homog", "plucker", "e-algebra"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    IdealText,
    CasText,
}

impl std::str::FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "ideal-text" => Ok(Format::IdealText),
            "cas-text" => Ok(Format::CasText),
            _ => Err(format!("unknown format `{s}` (json, ideal-text, cas-text)")),
        }
    }
}

pub fn emit(target: &str, n: Option<usize>, field: FieldKind, format: Format) -> Result<String, String> {
    match field {
        FieldKind::Rational => emit_for::<Rational>((), target, n, format),
        FieldKind::Prime(p) => emit_for::<Fp>(p, target, n, format),
    }
}

fn need_n(n: Option<usize>, target: &str) -> Result<usize, String> {
    n.ok_or_else(|| format!("`{target}` needs --n"))
}

fn emit_for<F: Field>(ctx: F::Ctx, target: &str, n: Option<usize>, format: Format) -> Result<String, String> {
    let ideal: IdealPresentation<F> = match target {
        "un-full" => u_n_full::<F>(need_n(n, target)?, &ctx).map_err(|e| e.to_string())?.ideal,
        "un-reduced" => u_n_reduced::<F>(need_n(n, target)?, &ctx).map_err(|e| e.to_string())?.ideal,
        "curve" | "curve-homog" => {
            let n = need_n(n, target)?;
            let curve = match n {
                1 | 2 => special_curve::<F>(n, &ctx, None),
                3 => special_moduli::<F>(3, &ctx).and_then(|b| curve_over_un(&b, None)),
                _ => u_n_reduced::<F>(n, &ctx).and_then(|b| curve_over_un(&b, None)),
            }
            .map_err(|e| e.to_string())?;
            if target == "curve" {
                curve.affine
            } else {
                curve.homog.ok_or_else(|| format!("no homogenized curve for n = {n}"))?
            }
        }
        "plucker" => plucker_ideal(&plucker_ring::<F>(&ctx)),
        "e-algebra" => return emit_e::<F>(ctx, need_n(n, target)?, format),
        _ => return Err(format!("unknown target `{target}` ({})", TARGETS.join(", "))),
    };
    Ok(match format {
        Format::Json => crate::pretty(&ideal_to_json(&ideal)),
        Format::IdealText => ideal_to_text(&ideal),
        Format::CasText => ideal_to_cas_text(&ideal),
    })
}

fn emit_e<F: Field>(ctx: F::Ctx, n: usize, format: Format) -> Result<String, String> {
    let alg = build_e::<F>(n, &ctx).map_err(|e| e.to_string())?;
    if format != Format::Json {
        return Ok(system_to_text(&alg.system));
    }
    let basis: Vec<Value> = (0..alg.dim())
        .map(|i| {
            json!({
                "name": alg.names[i],
                "source": alg.system.quiver.vertices[alg.source(i)],
                "target": alg.system.quiver.vertices[alg.target(i)],
                "degree": alg.degrees[i],
            })
        })
        .collect();
    let mut products = BTreeMap::new();
    for a in 0..alg.dim() {
        for b in 0..alg.dim() {
            let p = alg.mul(a, b);
            if !p.is_empty() {
                products.insert(format!("{}*{}", alg.names[a], alg.names[b]), alg.display(p));
            }
        }
    }
    let rules: Vec<String> = alg.system.rules.iter().map(|r| alg.system.display_rule(r)).collect();
    Ok(crate::pretty(&json!({"n": n, "field": F::kind(&ctx).to_string(), "basis": basis, "products": products, "rules": rules})))
}
