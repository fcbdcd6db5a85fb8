//! Modular eigenvector method: irreducible characters reduced mod p from class-sum structure constants.

use rand::Rng;

use crate::chartable::ModContext;
use crate::error::{internal, Result};
use crate::group::FiniteGroup;
use crate::modp::{distinct_roots, dot_mod, inv_mod, mul_mod, solve};

const MAX_ATTEMPTS: usize = 64;

/// (degree, value on each class mod p) for every irreducible character, in no particular order.
pub fn character_values_mod_p<R: Rng>(
    g: &FiniteGroup,
    ctx: &ModContext,
    rng: &mut R,
) -> Result<Vec<(u32, Vec<u64>)>> {
    let cl = g.classes();
    let h = cl.len();
    let id_class = g.class_of(g.identity());
    if h == 1 {
        return Ok(vec![(1, vec![1])]);
    }
    let p = ctx.p;
    let inv_class: Vec<usize> = cl
        .representatives
        .iter()
        .map(|&x| g.class_of(g.inv(x)))
        .collect();
    let inv_sizes: Vec<u64> = cl.sizes.iter().map(|&n| inv_mod(n as u64 % p, p)).collect();
    for _ in 0..MAX_ATTEMPTS {
        let weights: Vec<u64> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        // z = Σ_c r_c A_c with (A_c)_{r,s} = #{x ∈ C_c : x⁻¹ g_s ∈ C_r}.
        let mut z = vec![vec![0u64; h]; h];
        for (s, &gs) in cl.representatives.iter().enumerate() {
            for x in 0..g.order() {
                let r = g.class_of(g.mul(g.inv(x), gs));
                z[r][s] = (z[r][s] + weights[g.class_of(x)]) % p;
            }
        }
        let apply = |v: &[u64]| -> Vec<u64> { z.iter().map(|row| dot_mod(row, v, p)).collect() };
        let v0: Vec<u64> = (0..h).map(|_| rng.gen_range(0..p)).collect();
        let mut krylov = Vec::with_capacity(h + 1);
        krylov.push(v0);
        for i in 0..h {
            let next = apply(&krylov[i]);
            krylov.push(next);
        }
        let a: Vec<Vec<u64>> = (0..h)
            .map(|r| (0..h).map(|i| krylov[i][r]).collect())
            .collect();
        let Some(c) = solve(a, krylov[h].clone(), p) else {
            continue;
        };
        // Minimal polynomial x^h − Σ c_i x^i.
        let mut f: Vec<u64> = c.iter().map(|&ci| (p - ci) % p).collect();
        f.push(1);
        let Some(roots) = distinct_roots(&f, p, rng) else {
            continue;
        };
        let mut rows = Vec::with_capacity(h);
        let mut total = 0u64;
        let mut ok = true;
        for &lambda in &roots {
            let mut w = vec![0u64; h];
            w[h - 1] = 1;
            for i in (1..h).rev() {
                w[i - 1] = (mul_mod(lambda, w[i], p) + p - c[i]) % p;
            }
            let mut acc = vec![0u128; h];
            for (i, &wi) in w.iter().enumerate() {
                for (a, &k) in acc.iter_mut().zip(&krylov[i]) {
                    *a += k as u128 * wi as u128;
                }
            }
            let u: Vec<u64> = acc.iter().map(|&a| (a % p as u128) as u64).collect();
            if u[id_class] == 0 {
                ok = false;
                break;
            }
            let norm = inv_mod(u[id_class], p);
            let omega: Vec<u64> = u.iter().map(|&x| mul_mod(x, norm, p)).collect();
            let mut s = 0u64;
            for cidx in 0..h {
                let t = mul_mod(omega[cidx], omega[inv_class[cidx]], p);
                s = (s + mul_mod(t, inv_sizes[cidx], p)) % p;
            }
            if s == 0 {
                ok = false;
                break;
            }
            let d2 = mul_mod(g.order() as u64 % p, inv_mod(s, p), p);
            let Some(d) = (1..=g.order() as u64)
                .take_while(|d| d * d <= g.order() as u64)
                .find(|d| d * d == d2)
            else {
                ok = false;
                break;
            };
            total += d * d;
            let vals: Vec<u64> = (0..h)
                .map(|cidx| mul_mod(mul_mod(omega[cidx], d, p), inv_sizes[cidx], p))
                .collect();
            rows.push((d as u32, vals));
        }
        if ok && total == g.order() as u64 {
            return Ok(rows);
        }
    }
    Err(internal("modular character table did not converge"))
}
