use serde_json::json;

use crate::exact_math::Field;
use crate::moduli::{sn_involution, u_n_reduced, ModuliSpec, RedCoords, Transposition};
use crate::polyring::{Polynomial, RingMap};

use super::{containment_verdict, contains_all, Contain, Run, Verdict};

/// `sigma` preserves the ideal of `spec` and squares to the identity.
pub fn check_sn_action_with<F: Field>(spec: &ModuliSpec<F>, sigma: &RingMap<F>, label: &str) -> Verdict {
    let run = Run::new("sn-action", json!({"n": spec.n, "transposition": label}));
    let sq = sigma.compose(sigma).expect("endomorphism");
    for (i, img) in sq.images.iter().enumerate() {
        if *img != Polynomial::var(&spec.ring, i) {
            return run.fail(json!({"involutive": false, "variable": spec.ring.vars[i].name, "image_of_square": img.to_string()}));
        }
    }
    let imgs: Vec<(String, Polynomial<F>)> =
        spec.ideal.gens.iter().map(|(n, g)| (n.clone(), sigma.apply(g).expect("ring"))).collect();
    match contains_all(&spec.ideal, &imgs) {
        Contain::All => run.pass(Some(json!({"generators": imgs.len(), "involutive": true}))),
        other => containment_verdict(run, "sigma(generator)", other, None),
    }
}

pub fn check_sn_action<F: Field>(n: usize, t: Transposition, ctx: &F::Ctx) -> Verdict {
    let fail = |e: String| Run::new("sn-action", json!({"n": n, "transposition": t.to_string()})).fail(json!({"error": e}));
    let spec = match u_n_reduced::<F>(n, ctx) {
        Ok(s) => s,
        Err(e) => return fail(e.to_string()),
    };
    match sn_involution(&spec, t) {
        Ok(sigma) => check_sn_action_with(&spec, &sigma, &t.to_string()),
        Err(e) => fail(e.to_string()),
    }
}

/// (24) with the -2 cb_4 term dropped from the image of a.
pub fn mutated_sn_involution<F: Field>(spec: &ModuliSpec<F>) -> Option<RingMap<F>> {
    let mut sigma = sn_involution(spec, Transposition(2, 4)).ok()?;
    let r = RedCoords { ring: &spec.ring };
    let k = spec.ring.var_index("a")?;
    let two = F::from_i64(&spec.ring.ctx, 2);
    sigma.images[k] = -r.a() - r.ci(4).scale(&two);
    Some(sigma)
}
