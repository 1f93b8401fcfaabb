use serde_json::json;

use crate::exact_math::Field;
use crate::moduli::{full_from_reduced_map, names, substitution_map, CurveSpec, ModuliSpec, RedCoords};
use crate::polyring::{IdealPresentation, Polynomial, RingMap};

use super::{containment_verdict, contains_all, Contain, Run, Verdict};

/// Images of the curve relations and of the base relations.
fn images<F: Field>(curve: &CurveSpec<F>, map: &RingMap<F>) -> Vec<(String, Polynomial<F>)> {
    let embed = RingMap::by_name(&curve.base.ring, &curve.ring, Vec::new()).expect("base variables live in the curve ring");
    let mut out: Vec<(String, Polynomial<F>)> =
        curve.affine.gens.iter().map(|(n, g)| (format!("curve:{n}"), map.apply(g).expect("ring"))).collect();
    for (n, g) in &curve.base.ideal.gens {
        out.push((format!("base:{n}"), map.apply(&embed.apply(g).expect("ring")).expect("ring")));
    }
    out
}

fn two_sided<F: Field>(run: Run, target: &IdealPresentation<F>, imgs: Vec<(String, Polynomial<F>)>, info: serde_json::Value) -> Verdict {
    match contains_all(target, &imgs) {
        Contain::All => {}
        other => return containment_verdict(run, "forward", other, None),
    }
    let mut back = IdealPresentation::new(&target.ring, "images");
    for (n, g) in imgs {
        back.push(n, g);
    }
    containment_verdict(run, "backward", contains_all(&back, &target.gens), Some(info))
}

/// The map from the curve over U_n to U_{n+1} carries relations into the
/// U_{n+1} ideal, and the images generate that ideal.
pub fn check_substitution_iso_with<F: Field>(curve: &CurveSpec<F>, target: &ModuliSpec<F>, map: &RingMap<F>, label: &str) -> Verdict {
    let run = Run::new("substitution-iso", json!({"n": curve.n, "map": label}));
    let imgs = images(curve, map);
    let count = imgs.len();
    two_sided(run, &target.ideal, imgs, json!({"images": count, "target_generators": target.ideal.len()}))
}

pub fn check_substitution_iso<F: Field>(n: usize, ctx: &F::Ctx) -> Verdict {
    match substitution_map::<F>(n, ctx) {
        Ok((curve, target, map)) => check_substitution_iso_with(&curve, &target, &map, "standard"),
        Err(e) => Run::new("substitution-iso", json!({"n": n})).fail(json!({"error": e.to_string()})),
    }
}

/// The substitution map with x_3 sent to a + c_{n+1} instead of
/// a + c_{n+1} + cb_{n+1}.
pub fn mutated_substitution_map<F: Field>(n: usize, ctx: &F::Ctx) -> Option<(CurveSpec<F>, ModuliSpec<F>, RingMap<F>)> {
    let (curve, target, mut map) = substitution_map::<F>(n, ctx).ok()?;
    let r = RedCoords { ring: &target.ring };
    let k = curve.ring.var_index(&names::x(3))?;
    map.images[k] = r.a() + r.ci(n + 1);
    Some((curve, target, map))
}

/// Full-coordinate relations pulled back through the reduced coordinates
/// generate exactly the reduced ideal.
pub fn check_full_reduced_consistency<F: Field>(n: usize, ctx: &F::Ctx) -> Verdict {
    let run = Run::new("full-reduced", json!({"n": n}));
    let (full, red, map) = match full_from_reduced_map::<F>(n, ctx) {
        Ok(t) => t,
        Err(e) => return run.fail(json!({"error": e.to_string()})),
    };
    let imgs: Vec<(String, Polynomial<F>)> =
        full.ideal.gens.iter().map(|(n, g)| (n.clone(), map.apply(g).expect("ring"))).collect();
    two_sided(run, &red.ideal, imgs, json!({"full_generators": full.ideal.len()}))
}
