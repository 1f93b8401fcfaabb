//! Graded counts of standard monomials for monomial ideals.

use super::Monomial;

type TPoly = Vec<i128>;

fn tmul(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].checked_add(x.checked_mul(*y).expect("overflow")).expect("overflow");
        }
    }
    out
}

fn tadd(a: &mut TPoly, b: &TPoly, shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (j, y) in b.iter().enumerate() {
        a[j + shift] += y;
    }
}

fn one_minus_t_pow(d: u32) -> TPoly {
    let mut v = vec![0i128; d as usize + 1];
    v[0] = 1;
    v[d as usize] -= 1;
    v
}

fn wdeg(e: &[u8], w: &[u32]) -> u32 {
    e.iter().zip(w).map(|(&a, &b)| a as u32 * b).sum()
}

fn minimalize(mut gens: Vec<Vec<u8>>) -> Vec<Vec<u8>> {
    gens.sort_by_key(|g| g.iter().map(|&x| x as u32).sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u8>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Vec<u8>>, w: &[u32]) -> TPoly {
    let gens = minimalize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    let n = w.len();
    // pairwise coprime: product formula
    let mut used = vec![false; n];
    let mut coprime = true;
    'outer: for g in &gens {
        for i in 0..n {
            if g[i] > 0 {
                if used[i] {
                    coprime = false;
                    break 'outer;
                }
                used[i] = true;
            }
        }
    }
    if coprime {
        return gens.iter().fold(vec![1], |acc, g| tmul(&acc, &one_minus_t_pow(wdeg(g, w))));
    }
    // pivot on the variable occurring in the most non-pure generators
    let mut count = vec![0usize; n];
    for g in &gens {
        if g.iter().filter(|&&x| x > 0).count() > 1 {
            for i in 0..n {
                if g[i] > 0 {
                    count[i] += 1;
                }
            }
        }
    }
    let var = (0..n).max_by_key(|&i| count[i]).unwrap();
    let mut exps: Vec<u8> = gens
        .iter()
        .filter(|g| g[var] > 0 && g.iter().filter(|&&x| x > 0).count() > 1)
        .map(|g| g[var])
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pivot = vec![0u8; n];
    pivot[var] = e;

    let mut sum_gens: Vec<Vec<u8>> = gens.iter().filter(|g| g[var] < e).cloned().collect();
    sum_gens.push(pivot.clone());
    let quot_gens: Vec<Vec<u8>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[var] = h[var].saturating_sub(e);
            h
        })
        .collect();
    let mut out = numerator(sum_gens, w);
    let q = numerator(quot_gens, w);
    tadd(&mut out, &q, (e as u32 * w[var]) as usize);
    out
}

/// Numerator `N(t)` with `H(t) = N(t) / prod_i (1 - t^{w_i})` for the quotient by
/// the monomial ideal generated by `gens`.
pub fn hilbert_numerator(gens: &[Monomial], weights: &[u32]) -> Vec<i128> {
    let mut n = numerator(gens.iter().map(|m| m.e.to_vec()).collect(), weights);
    while n.len() > 1 && *n.last().unwrap() == 0 {
        n.pop();
    }
    n
}

/// Expand a rational Hilbert series to degrees `0..=up_to`.
pub fn expand_series(num: &[i128], weights: &[u32], up_to: u32) -> Vec<i128> {
    let len = up_to as usize + 1;
    let mut s: Vec<i128> = (0..len).map(|k| num.get(k).copied().unwrap_or(0)).collect();
    for &w in weights {
        // multiply by 1/(1 - t^w)
        for k in w as usize..len {
            s[k] += s[k - w as usize];
        }
    }
    s
}

/// Number of standard monomials in each weighted degree `0..=up_to`.
pub fn standard_counts(gens: &[Monomial], weights: &[u32], up_to: u32) -> Vec<u64> {
    let num = hilbert_numerator(gens, weights);
    expand_series(&num, weights, up_to).into_iter().map(|x| u64::try_from(x).expect("negative count")).collect()
}

/// All monomials of weighted degree exactly `d`.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Vec<u8>> {
    fn rec(w: &[u32], i: usize, left: u32, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0u32;
        while e * w[i] <= left {
            cur.push(e as u8);
            rec(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

/// Enumerate monomials degree by degree and count those outside the ideal.
pub fn brute_force_standard_counts(gens: &[Monomial], weights: &[u32], up_to: u32) -> Vec<u64> {
    (0..=up_to)
        .map(|d| {
            monomials_of_degree(weights, d)
                .iter()
                .filter(|m| !gens.iter().any(|g| g.e.iter().zip(m.iter()).all(|(a, b)| a <= b)))
                .count() as u64
        })
        .collect()
}
