//! Slow reference computations used as independent cross-checks by the
//! verification suites.  Nothing here may call the p-map recursion paths it
//! is checking: the word pairing below works purely by expanding coproducts
//! and matching the defining generator table, and the dimension oracle is a
//! brute-force positive-root multiset enumeration.

use crate::algebra::{Algebra, Element, TermKey};
use crate::error::{Result, UrsError};
use crate::hopf::coproduct;
use crate::pairing::Pairing;
use crate::scalar::Scalar;

/// Pairing value computed by coproduct expansion only: peel the leading
/// F-letter of the lower argument and split the upper argument with Delta,
/// using (h'k', h) = sum (h', h_(1)) (k', h_(2)).  Exponential in the word
/// length; independent of the production recursion.
pub fn delta_pair(ctx: &Pairing, y: &Element, x: &Element) -> Result<Scalar> {
    let alg = ctx.algebra();
    alg.check_same(y)?;
    alg.check_same(x)?;
    let mut out = Scalar::zero();
    for (ky, cy) in y.terms() {
        if !ky.e.is_empty() {
            return Err(UrsError::Domain(
                "left pairing argument lies outside the lower subalgebra".into(),
            ));
        }
        let v = delta_pair_term(ctx, &ky.f, &ky.t, x)?;
        out = out.add(&cy.mul(&v));
    }
    Ok(out)
}

fn delta_pair_term(ctx: &Pairing, fw: &[u8], t: &[i32], x: &Element) -> Result<Scalar> {
    let alg = ctx.algebra();
    if fw.is_empty() {
        // pure torus against x: nonzero only on the torus part of x
        let mut out = Scalar::zero();
        for (kx, cx) in x.terms() {
            if !kx.f.is_empty() {
                return Err(UrsError::Domain(
                    "right pairing argument lies outside the upper subalgebra".into(),
                ));
            }
            let tv = ctx.pair_torus(t, &kx.t)?;
            if kx.e.is_empty() {
                out = out.add(&cx.mul(&tv));
            }
        }
        return Ok(out);
    }
    // split off the leading f-letter and expand Delta(x)
    let i = fw[0] as usize;
    let rest = &fw[1..];
    let dx = coproduct(alg, x)?;
    let mut out = Scalar::zero();
    for (legs, c) in dx.terms() {
        let fi_val = pair_f_letter(ctx, i, &legs[0])?;
        if fi_val.is_zero() {
            continue;
        }
        let leg2 = Element::single(alg.id(), legs[1].clone(), Scalar::one());
        let restv = delta_pair_term(ctx, rest, t, &leg2)?;
        out = out.add(&c.mul(&fi_val).mul(&restv));
    }
    Ok(out)
}

/// (f_i, leg) for a single upper-subalgebra term: nonzero only on terms
/// tau * e_i.  The pairing is skew: splitting the product tau e_i applies
/// the lower coproduct legs in reversed order, so the value is
/// (w'_i, tau) (f_i, e_i); the grading kills every other shape.
fn pair_f_letter(ctx: &Pairing, i: usize, leg: &TermKey) -> Result<Scalar> {
    if !leg.f.is_empty() {
        return Err(UrsError::Domain(
            "right pairing argument lies outside the upper subalgebra".into(),
        ));
    }
    // membership check even for zero values
    ctx.upper_torus_coords(&leg.t)?;
    if leg.e.len() == 1 && leg.e[0] as usize == i {
        let alg = ctx.algebra();
        let wp: Vec<i32> = alg.omega_exps(i, true);
        let torus = ctx.pair_torus(&wp, &leg.t)?;
        Ok(torus
            .div(&alg.s().sub(alg.r()))
            .unwrap())
    } else {
        Ok(Scalar::zero())
    }
}

/// Convenience wrapper for pure word pairs.
pub fn delta_pair_words(ctx: &Pairing, fw: &[u8], ew: &[u8]) -> Result<Scalar> {
    let alg = ctx.algebra();
    let y = pure_f(alg, fw);
    let x = pure_e(alg, ew);
    delta_pair(ctx, &y, &x)
}

fn pure_f(alg: &Algebra, w: &[u8]) -> Element {
    Element::single(
        alg.id(),
        TermKey {
            f: w.to_vec(),
            t: vec![0; alg.torus_dim()],
            e: Vec::new(),
        },
        Scalar::one(),
    )
}

fn pure_e(alg: &Algebra, w: &[u8]) -> Element {
    Element::single(
        alg.id(),
        TermKey {
            f: Vec::new(),
            t: vec![0; alg.torus_dim()],
            e: w.to_vec(),
        },
        Scalar::one(),
    )
}

/// Number of ways to write zeta (coordinates over the simple roots of
/// A_{n-1}) as a multiset of positive roots: brute-force enumeration.
pub fn kostant_partition_count(n: usize, zeta: &[i64]) -> u64 {
    // positive roots as content vectors: ones on the interval [i, j)
    let mut roots: Vec<Vec<i64>> = Vec::new();
    for i in 0..n - 1 {
        for j in i + 1..n {
            let mut v = vec![0i64; n - 1];
            for slot in v.iter_mut().take(j).skip(i) {
                *slot = 1;
            }
            roots.push(v);
        }
    }
    fn rec(roots: &[Vec<i64>], remaining: &mut Vec<i64>) -> u64 {
        if remaining.iter().all(|&c| c == 0) {
            return 1;
        }
        if roots.is_empty() {
            return 0;
        }
        let root = roots[0].clone();
        let mut total = rec(&roots[1..], remaining);
        let mut uses = 0i64;
        loop {
            if remaining.iter().zip(&root).any(|(rem, rt)| rem < rt) {
                break;
            }
            for (rem, rt) in remaining.iter_mut().zip(&root) {
                *rem -= rt;
            }
            uses += 1;
            total += rec(&roots[1..], remaining);
        }
        for (rem, rt) in remaining.iter_mut().zip(&root) {
            *rem += rt * uses;
        }
        total
    }
    rec(&roots, &mut zeta.to_vec())
}
