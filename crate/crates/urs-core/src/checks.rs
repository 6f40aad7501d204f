//! Named verification operations.  Each returns a `CheckReport`; the
//! command-line runner and the acceptance suite drive these with their
//! respective configurations.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element, Gen, Kind};
use crate::braiding;
use crate::cat_o::{character_injectivity_check, module_relation_audit, WeightModule};
use crate::double::{cross_residual, double_coproduct_through_phi, phi};
use crate::error::Result;
use crate::hopf::{
    antipode_leg, apply_counit_leg, coproduct, counit, iterated_coproduct,
    iterated_coproduct_right, multiply_legs, TensorElement,
};
use crate::morphisms;
use crate::oracle;
use crate::pairing::Pairing;
use crate::report::CheckReport;
use crate::scalar::Scalar;
use crate::weight::{contents_up_to, Weight};

/// Random generator word of length at most `max_len` (torus letters may
/// carry exponent -1).
pub fn random_word(alg: &Algebra, rng: &mut ChaCha8Rng, max_len: usize) -> Vec<(Gen, i64)> {
    let gens = alg.all_gens();
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let g = gens[rng.gen_range(0..gens.len())];
            let exp = match g {
                Gen::E(_) | Gen::F(_) => 1,
                _ => {
                    if rng.gen_bool(0.5) {
                        1
                    } else {
                        -1
                    }
                }
            };
            (g, exp)
        })
        .collect()
}

/// Presentation soundness: straightening-reducible relations normal-form to
/// zero, and the word relations (distant commutations and the cubic
/// relations) pair to zero against every weight-matched opposite word.
pub fn relations_check(alg: &Algebra, ctx: &Pairing) -> Result<CheckReport> {
    let mut failures = Vec::new();
    for rel in alg.relations() {
        if !rel.radical {
            let res = alg.residual(&rel)?;
            if !res.is_zero() {
                failures.push(format!("{} residual {}", rel.name, res));
            }
            continue;
        }
        // radical relations: a pure combination of E-words or of F-words
        let mut e_side = true;
        let combo: Vec<(Scalar, Vec<u8>)> = rel
            .combo
            .iter()
            .map(|(c, word)| {
                let letters: Vec<u8> = word
                    .iter()
                    .map(|&(g, _)| match g {
                        Gen::E(i) => i as u8,
                        Gen::F(i) => {
                            e_side = false;
                            i as u8
                        }
                        _ => unreachable!("radical relations involve only e/f letters"),
                    })
                    .collect();
                (c.clone(), letters)
            })
            .collect();
        let content = alg.word_content(&combo[0].1);
        for opposite in alg.words_of_content(&content) {
            let mut acc = Scalar::zero();
            for (c, w) in &combo {
                let p = if e_side {
                    ctx.pure_pair(&opposite, w)
                } else {
                    ctx.pure_pair(w, &opposite)
                };
                acc = acc.add(&c.mul(&p));
            }
            if !acc.is_zero() {
                failures.push(format!(
                    "{} pairs to {} against {:?}",
                    rel.name, acc, opposite
                ));
            }
        }
    }
    Ok(CheckReport::from_failures("relations", failures))
}

/// Hopf axioms on all generators and seeded random elements:
/// coassociativity, the counit law, and the antipode law.
pub fn hopf_axioms_check(
    alg: &Algebra,
    random_count: usize,
    max_len: usize,
    seed: u64,
) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut subjects: Vec<(String, Element)> = alg
        .all_gens()
        .into_iter()
        .map(|g| (format!("generator {g}"), alg.gen(g, 1).unwrap()))
        .collect();
    for k in 0..random_count {
        let w = random_word(alg, &mut rng, max_len);
        subjects.push((format!("random element {k}"), alg.word(&w)?));
    }
    for (name, x) in subjects {
        let left = iterated_coproduct(alg, &x, 3)?;
        let right = iterated_coproduct_right(alg, &x)?;
        if left != right {
            failures.push(format!("coassociativity fails on {name}"));
        }
        let d = coproduct(alg, &x)?;
        let as_elem = |t: &TensorElement| -> Result<Element> {
            let mut out = alg.zero();
            for (legs, c) in t.terms() {
                out = out.add(&Element::single(alg.id(), legs[0].clone(), c.clone()))?;
            }
            Ok(out)
        };
        if as_elem(&apply_counit_leg(alg, &d, 0)?)? != x
            || as_elem(&apply_counit_leg(alg, &d, 1)?)? != x
        {
            failures.push(format!("counit law fails on {name}"));
        }
        let target = alg.one().scale(&counit(alg, &x)?);
        let s1 = multiply_legs(alg, &antipode_leg(alg, &d, 0)?)?;
        let s2 = multiply_legs(alg, &antipode_leg(alg, &d, 1)?)?;
        if s1 != target || s2 != target {
            failures.push(format!("antipode law fails on {name}"));
        }
    }
    Ok(CheckReport::from_failures("hopf-axioms", failures))
}

/// Pairing consistency: the recursion routes through both skew-derivation
/// families agree with the coproduct-expansion computation on all matched
/// word pairs up to `height`, and torus decorations factor out (against the
/// expansion computation, on seeded samples).
pub fn pairing_consistency_check(
    ctx: &Pairing,
    height: usize,
    samples: usize,
    seed: u64,
) -> Result<CheckReport> {
    let alg = ctx.algebra();
    let mut failures = Vec::new();
    for zeta in contents_up_to(alg.n, height) {
        let words = alg.words_of_content(&zeta);
        for fw in &words {
            for ew in &words {
                let fast = ctx.pure_pair(fw, ew);
                let mirrored = ctx.pure_pair_via_minus(fw, ew);
                let slow = oracle::delta_pair_words(ctx, fw, ew)?;
                if fast != slow {
                    failures.push(format!(
                        "recursion vs expansion at fw={fw:?} ew={ew:?}"
                    ));
                }
                if mirrored != slow {
                    failures.push(format!(
                        "mirrored recursion vs expansion at fw={fw:?} ew={ew:?}"
                    ));
                }
            }
        }
    }
    // torus factorization on seeded decorations
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all: Vec<Vec<i64>> = contents_up_to(alg.n, height.min(3));
    for _ in 0..samples {
        let zeta = &all[rng.gen_range(0..all.len())];
        let words = alg.words_of_content(zeta);
        if words.is_empty() {
            continue;
        }
        let fw = &words[rng.gen_range(0..words.len())];
        let ew = &words[rng.gen_range(0..words.len())];
        // random group-like decorations from the two pairing tori
        let mut y = ctx.fword_element(fw);
        let mut x = ctx.eword_element(ew);
        let mut tl = vec![0i32; alg.torus_dim()];
        let mut tu = vec![0i32; alg.torus_dim()];
        for i in 1..alg.n {
            let a = rng.gen_range(-2..=2);
            let b = rng.gen_range(-2..=2);
            for (slot, v) in tl.iter_mut().zip(alg.omega_exps(i, true)) {
                *slot += a * v;
            }
            for (slot, v) in tu.iter_mut().zip(alg.omega_exps(i, false)) {
                *slot += b * v;
            }
        }
        let tl_el = Element::single(
            alg.id(),
            crate::algebra::TermKey {
                f: Vec::new(),
                t: tl.clone(),
                e: Vec::new(),
            },
            Scalar::one(),
        );
        let tu_el = Element::single(
            alg.id(),
            crate::algebra::TermKey {
                f: Vec::new(),
                t: tu.clone(),
                e: Vec::new(),
            },
            Scalar::one(),
        );
        y = alg.mul(&y, &tl_el)?;
        x = alg.mul(&x, &tu_el)?;
        let lhs = oracle::delta_pair(ctx, &y, &x)?;
        let rhs = ctx.pure_pair(fw, ew).mul(&ctx.pair_torus(&tl, &tu)?);
        if lhs != rhs {
            failures.push(format!(
                "torus factorization fails at fw={fw:?} ew={ew:?}"
            ));
        }
    }
    Ok(CheckReport::from_failures("pairing-table", failures))
}

/// Dimension oracle: the rank of every graded Gram matrix equals the
/// brute-force positive-root partition count.
pub fn dimension_check(ctx: &Pairing, max_height: usize) -> Result<CheckReport> {
    let alg = ctx.algebra();
    let mut failures = Vec::new();
    for zeta in contents_up_to(alg.n, max_height) {
        let g = ctx.graded(&zeta)?;
        let expect = oracle::kostant_partition_count(alg.n, &zeta);
        if g.rank as u64 != expect {
            failures.push(format!(
                "rank {} at zeta={zeta:?}, partition count {expect}",
                g.rank
            ));
        }
    }
    Ok(CheckReport::from_failures("dimensions", failures))
}

/// Double reconstruction: the pairing-driven cross product reproduces the
/// straightened product for every generator pair, and on seeded low-degree
/// words; the coalgebra structures correspond through the multiplication
/// map.
pub fn double_check(ctx: &Pairing, word_samples: usize, seed: u64) -> Result<CheckReport> {
    let alg = ctx.algebra();
    let mut failures = Vec::new();
    let mut lower: Vec<(String, Element)> = Vec::new();
    let mut upper: Vec<(String, Element)> = Vec::new();
    for i in 1..alg.n {
        lower.push((format!("f{i}"), alg.gen(Gen::F(i), 1)?));
        for exp in [1, -1] {
            lower.push((format!("w'{i}^{exp}"), alg.omega_element(i, true, exp)));
            upper.push((format!("w{i}^{exp}"), alg.omega_element(i, false, exp)));
        }
        upper.push((format!("e{i}"), alg.gen(Gen::E(i), 1)?));
    }
    if alg.kind == Kind::Gl {
        for exp in [1i64, -1] {
            lower.push((format!("b{}^{exp}", alg.n), alg.gen(Gen::B(alg.n), exp)?));
            upper.push((format!("a{}^{exp}", alg.n), alg.gen(Gen::A(alg.n), exp)?));
        }
    }
    for (bn, b) in &lower {
        for (an, a) in &upper {
            let res = cross_residual(ctx, b, a)?;
            if !res.is_zero() {
                failures.push(format!("generator pair ({bn}, {an})"));
            }
        }
    }
    // coalgebra correspondence on generator pairs
    for (bn, b) in lower.iter().take(3) {
        for (an, a) in upper.iter().take(3) {
            let d = crate::double::cross_product(ctx, b, a)?;
            let through = double_coproduct_through_phi(ctx, &d)?;
            let target = coproduct(alg, &phi(ctx, &d)?)?;
            if through != target {
                failures.push(format!("coalgebra correspondence ({bn}, {an})"));
            }
        }
    }
    // seeded words of degree <= 3 on each side, drawn from the letters of
    // the respective Hopf subalgebras
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |letters: &[(String, Element)], rng: &mut ChaCha8Rng, len: usize| -> Result<Element> {
        let mut acc = alg.one();
        for _ in 0..len {
            let (_, l) = &letters[rng.gen_range(0..letters.len())];
            acc = alg.mul(&acc, l)?;
        }
        Ok(acc)
    };
    for k in 0..word_samples {
        let blen = rng.gen_range(1..=3);
        let alen = rng.gen_range(1..=3);
        let b = pick(&lower, &mut rng, blen)?;
        let a = pick(&upper, &mut rng, alen)?;
        let res = cross_residual(ctx, &b, &a)?;
        if !res.is_zero() {
            failures.push(format!("word pair #{k}"));
        }
    }
    Ok(CheckReport::from_failures("verify-double", failures))
}

/// Braiding construction and intertwining on one module pair.
pub fn rmatrix_check(
    ctx: &Pairing,
    lambda: &Weight,
    mu: &Weight,
    depth: usize,
    budget: usize,
) -> Result<(CheckReport, braiding::BraidMap)> {
    let m = WeightModule::verma(ctx, lambda, depth)?;
    let mp = WeightModule::verma(ctx, mu, depth)?;
    let map = braiding::build_r(ctx, &mp, &m, budget)?;
    let mut failures = braiding::triangularity_residuals(&map, &mp, &m);
    failures.extend(braiding::intertwining_residuals(ctx, &mp, &m, budget)?);
    Ok((CheckReport::from_failures("rmatrix", failures), map))
}

pub fn verma_check(ctx: &Pairing, lambda: &Weight, depth: usize) -> Result<(CheckReport, WeightModule)> {
    let m = WeightModule::verma(ctx, lambda, depth)?;
    let failures = module_relation_audit(&m)?;
    Ok((CheckReport::from_failures("verma", failures), m))
}

pub fn qybe_check(
    ctx: &Pairing,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
    depth: usize,
    budget: usize,
) -> Result<CheckReport> {
    let m1 = WeightModule::verma(ctx, lambda, depth)?;
    let m2 = WeightModule::verma(ctx, mu, depth)?;
    let m3 = WeightModule::verma(ctx, nu, depth)?;
    let failures = braiding::qybe_residuals(ctx, &m1, &m2, &m3, budget)?;
    Ok(CheckReport::from_failures("qybe", failures))
}

pub fn hexagon_check(
    ctx: &Pairing,
    lambda: &Weight,
    mu: &Weight,
    nu: &Weight,
    depth: usize,
    budget: usize,
) -> Result<CheckReport> {
    let m1 = WeightModule::verma(ctx, lambda, depth)?;
    let m2 = WeightModule::verma(ctx, mu, depth)?;
    let m3 = WeightModule::verma(ctx, nu, depth)?;
    let mut failures = braiding::hexagon_residuals(ctx, &m1, &m2, &m3, budget)?;
    failures.extend(braiding::triple_operator_residuals(
        ctx, &m1, &m2, &m3, budget, 2,
    )?);
    failures.extend(braiding::graded_coproduct_residuals(ctx, 2)?);
    Ok(CheckReport::from_failures("hexagon", failures))
}

pub fn theta_check(ctx: &Pairing, max_height: usize) -> Result<CheckReport> {
    let zetas = contents_up_to(ctx.algebra().n, max_height);
    let failures = braiding::theta_identities_residuals(ctx, &zetas)?;
    Ok(CheckReport::from_failures("theta-identities", failures))
}

pub fn casimir_check(
    ctx: &Pairing,
    lambda: &Weight,
    depth: usize,
    budget: usize,
) -> Result<CheckReport> {
    let m = WeightModule::verma(ctx, lambda, depth)?;
    let failures = braiding::casimir_residuals(ctx, &m, budget)?;
    Ok(CheckReport::from_failures("casimir", failures))
}

pub fn prop35_check(alg: &Algebra, bound: i64) -> Result<CheckReport> {
    let collisions = character_injectivity_check(alg, bound)?;
    let failures = collisions
        .into_iter()
        .map(|(a, b)| format!("characters collide at {a:?} and {b:?}"))
        .collect();
    Ok(CheckReport::from_failures("prop35", failures))
}

pub fn iso_sl2_check(count: usize, seed: u64) -> Result<CheckReport> {
    let failures = morphisms::sl2_iso_residuals(count, seed)?;
    Ok(CheckReport::from_failures("iso-check sl2", failures))
}

pub fn iso_chm_check(n: usize) -> Result<CheckReport> {
    let alg = Arc::new(Algebra::generic(n, Kind::Gl)?);
    let ctx = Pairing::new(alg, 6);
    let failures = morphisms::chm_transport_residuals(&ctx)?;
    Ok(CheckReport::from_failures("iso-check chm", failures))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Params;

    #[test]
    fn relations_check_small() {
        for kind in [Kind::Gl, Kind::Sl] {
            let alg = Arc::new(Algebra::generic(2, kind).unwrap());
            let ctx = Pairing::new(alg.clone(), 6);
            let rep = relations_check(&alg, &ctx).unwrap();
            assert!(rep.pass, "{:?}", rep.details);
        }
    }

    #[test]
    fn hopf_axioms_random_sample() {
        let alg = Arc::new(Algebra::generic(2, Kind::Sl).unwrap());
        let rep = hopf_axioms_check(&alg, 10, 3, 42).unwrap();
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn double_check_small() {
        let alg = Arc::new(Algebra::generic(2, Kind::Sl).unwrap());
        let ctx = Pairing::new(alg, 6);
        let rep = double_check(&ctx, 5, 11).unwrap();
        assert!(rep.pass, "{:?}", rep.details);
    }

    #[test]
    fn specialized_parameters_run_the_same_checks() {
        use crate::scalar::rat_int;
        let params = Params::specialized(&rat_int(2), &rat_int(3)).unwrap();
        let alg = Arc::new(Algebra::new(2, Kind::Sl, params).unwrap());
        let ctx = Pairing::new(alg.clone(), 6);
        let rep = relations_check(&alg, &ctx).unwrap();
        assert!(rep.pass);
        let lam = Weight::new(vec![1, 0]);
        let rep = qybe_check(&ctx, &lam, &lam, &lam, 3, 1).unwrap();
        assert!(rep.pass, "{:?}", rep.details);
    }
}
