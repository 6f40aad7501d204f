//! Morphisms between presentations: the rank-one isomorphism family along
//! the ratio constraint r s^{-1} = r' (s')^{-1}, and the Hopf morphism from
//! the multiparameter presentation (generators E_i, F_i, K_i, L_i with the
//! lambda = r s^{-1}, p_{ij} = s^{-1} parameter choice) into U_{r,s}(gl_n).

use std::collections::HashMap;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use rand::Rng;

use crate::algebra::{Algebra, Element, Gen, Kind, Params, TermKey};
use crate::error::{Result, UrsError};
use crate::hopf::{coproduct, TensorElement};
use crate::pairing::Pairing;
use crate::scalar::{rat_int, Scalar};

/// A presentation morphism given by a generator image table.
pub struct PresentationMorphism {
    pub source: Arc<Algebra>,
    pub target: Arc<Algebra>,
    images: HashMap<Gen, Element>,
}

impl PresentationMorphism {
    pub fn new(
        source: Arc<Algebra>,
        target: Arc<Algebra>,
        images: HashMap<Gen, Element>,
    ) -> Self {
        PresentationMorphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(alg: Arc<Algebra>) -> Result<Self> {
        let mut images = HashMap::new();
        for g in alg.all_gens() {
            images.insert(g, alg.gen(g, 1)?);
        }
        Ok(PresentationMorphism {
            source: alg.clone(),
            target: alg,
            images,
        })
    }

    fn image_pow(&self, g: Gen, exp: i64) -> Result<Element> {
        let img = self
            .images
            .get(&g)
            .ok_or_else(|| UrsError::BadGenerator(format!("{g} has no image")))?;
        if exp >= 0 {
            let mut acc = self.target.one();
            for _ in 0..exp {
                acc = self.target.mul(&acc, img)?;
            }
            return Ok(acc);
        }
        // negative powers only for group-like (single invertible term) images
        if img.num_terms() != 1 {
            return Err(UrsError::Domain(format!(
                "image of {g} is not invertible"
            )));
        }
        let (key, c) = img.terms().next().unwrap();
        if !key.f.is_empty() || !key.e.is_empty() {
            return Err(UrsError::Domain(format!(
                "image of {g} is not invertible"
            )));
        }
        let inv_key = TermKey {
            f: Vec::new(),
            t: key.t.iter().map(|&x| -x).collect(),
            e: Vec::new(),
        };
        let base = Element::single(self.target.id(), inv_key, c.inv()?);
        let mut acc = self.target.one();
        for _ in 0..(-exp) {
            acc = self.target.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    /// Homomorphic image of a source word.
    pub fn apply_word(&self, word: &[(Gen, i64)]) -> Result<Element> {
        let mut acc = self.target.one();
        for &(g, k) in word {
            acc = self.target.mul(&acc, &self.image_pow(g, k)?)?;
        }
        Ok(acc)
    }

    /// Homomorphic image of a source element in normal form.
    pub fn apply(&self, x: &Element) -> Result<Element> {
        self.source.check_same(x)?;
        let mut out = self.target.zero();
        for (key, c) in x.terms() {
            let mut word: Vec<(Gen, i64)> = Vec::new();
            for &j in &key.f {
                word.push((Gen::F(j as usize), 1));
            }
            for (idx, &exp) in key.t.iter().enumerate() {
                if exp != 0 {
                    word.push((self.torus_gen_of_source(idx), exp as i64));
                }
            }
            for &j in &key.e {
                word.push((Gen::E(j as usize), 1));
            }
            out = out.add(&self.apply_word(&word)?.scale(c))?;
        }
        Ok(out)
    }

    fn torus_gen_of_source(&self, idx: usize) -> Gen {
        let n = self.source.n;
        match self.source.kind {
            Kind::Gl => {
                if idx < n {
                    Gen::A(idx + 1)
                } else {
                    Gen::B(idx - n + 1)
                }
            }
            Kind::Sl => {
                if idx < n - 1 {
                    Gen::W(idx + 1)
                } else {
                    Gen::Wp(idx - (n - 1) + 1)
                }
            }
        }
    }

    /// Residuals of all source defining relations under the morphism.
    pub fn relation_residuals(&self) -> Result<Vec<(String, Element)>> {
        let mut out = Vec::new();
        for rel in self.source.relations() {
            let mut acc = self.target.zero();
            for (c, word) in &rel.combo {
                acc = acc.add(&self.apply_word(word)?.scale(c))?;
            }
            out.push((rel.name, acc));
        }
        Ok(out)
    }

    /// Coalgebra compatibility on a generator:
    /// Delta_target(phi(g)) - (phi x phi)(Delta_source(g)).
    pub fn coproduct_residual(&self, g: Gen) -> Result<TensorElement> {
        let img = self.image_pow(g, 1)?;
        let lhs = coproduct(&self.target, &img)?;
        let d = coproduct(&self.source, &self.source.gen(g, 1)?)?;
        let mut rhs = TensorElement::zero(&self.target, 2);
        for (legs, c) in d.terms() {
            let l0 = self.apply(&Element::single(
                self.source.id(),
                legs[0].clone(),
                Scalar::one(),
            ))?;
            let l1 = self.apply(&Element::single(
                self.source.id(),
                legs[1].clone(),
                Scalar::one(),
            ))?;
            rhs = rhs.add(&TensorElement::from_products(
                &self.target,
                2,
                &[(c.clone(), vec![l0, l1])],
            )?)?;
        }
        lhs.sub(&rhs)
    }
}

/// Rank-one isomorphism family: for rational (r, s, t) with r' = r t and
/// s' = s t, the map e -> e', f -> r^{-1} r' f' = t f', w -> w', w' -> w''
/// is a Hopf isomorphism U_{r,s}(sl_2) -> U_{r',s'}(sl_2).  Verifies the
/// relation transport and coproduct correspondence at `count` seeded
/// rational specializations (plus the identity t = 1); rational checks
/// suffice because every occurring identity is Laurent-polynomial in the
/// parameters of bounded degree.
pub fn sl2_iso_residuals(count: usize, seed: u64) -> Result<Vec<String>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    let mut seeds: Vec<(BigRational, BigRational, BigRational)> =
        vec![
            (rat_int(4), rat_int(9), rat_int(1)),
            (rat_int(4), rat_int(9), rat_int(2)),
        ];
    while seeds.len() < count.max(2) {
        let r = rat_int(rng.gen_range(-9i64..=9));
        let s = rat_int(rng.gen_range(-9i64..=9));
        let t = BigRational::new(
            BigInt::from(rng.gen_range(1i64..=9)),
            BigInt::from(rng.gen_range(1i64..=9)),
        ) * rat_int(if rng.gen_bool(0.5) { 1 } else { -1 });
        if r.is_zero() || s.is_zero() || t.is_zero() || r == s {
            continue;
        }
        seeds.push((r, s, t));
    }
    for (r, s, t) in seeds {
        let src = Arc::new(Algebra::new(
            2,
            Kind::Sl,
            Params::rational(r.clone(), s.clone())?,
        )?);
        let tgt = Arc::new(Algebra::new(
            2,
            Kind::Sl,
            Params::rational(&r * &t, &s * &t)?,
        )?);
        let mut images = HashMap::new();
        images.insert(Gen::E(1), tgt.gen(Gen::E(1), 1)?);
        images.insert(
            Gen::F(1),
            tgt.gen(Gen::F(1), 1)?.scale(&Scalar::from_rat(t.clone())),
        );
        images.insert(Gen::W(1), tgt.gen(Gen::W(1), 1)?);
        images.insert(Gen::Wp(1), tgt.gen(Gen::Wp(1), 1)?);
        let phi = PresentationMorphism::new(src.clone(), tgt.clone(), images);
        for (name, res) in phi.relation_residuals()? {
            if !res.is_zero() {
                failures.push(format!("relation {name} fails at (r,s,t)=({r},{s},{t})"));
            }
        }
        for g in src.all_gens() {
            if !phi.coproduct_residual(g)?.is_zero() {
                failures.push(format!(
                    "coproduct of {g} fails at (r,s,t)=({r},{s},{t})"
                ));
            }
        }
        if t.is_one() {
            // identity morphism sanity: phi fixes a straightened word
            let x = src.word(&[(Gen::E(1), 1), (Gen::F(1), 1), (Gen::W(1), -1)])?;
            let y = tgt.word(&[(Gen::E(1), 1), (Gen::F(1), 1), (Gen::W(1), -1)])?;
            let diff = phi.apply(&x)?.sub(&y)?;
            if !diff.is_zero() {
                failures.push("identity specialization moved an element".into());
            }
        }
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// The multiparameter presentation and its transport morphism
// ---------------------------------------------------------------------------

/// Generators of the multiparameter presentation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChmGen {
    E(usize),
    F(usize),
    K(usize),
    L(usize),
}

impl std::fmt::Display for ChmGen {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChmGen::E(i) => write!(f, "E{i}"),
            ChmGen::F(i) => write!(f, "F{i}"),
            ChmGen::K(i) => write!(f, "K{i}"),
            ChmGen::L(i) => write!(f, "L{i}"),
        }
    }
}

/// Formal linear combination of words in the multiparameter generators.
pub type ChmExpr = Vec<(Scalar, Vec<(ChmGen, i64)>)>;

fn chm_word(gens: &[(ChmGen, i64)]) -> ChmExpr {
    vec![(Scalar::one(), gens.to_vec())]
}

fn chm_scale(e: &ChmExpr, c: &Scalar) -> ChmExpr {
    e.iter()
        .map(|(x, w)| (x.mul(c), w.clone()))
        .collect()
}

fn chm_add(a: &ChmExpr, b: &ChmExpr) -> ChmExpr {
    let mut out = a.clone();
    out.extend(b.iter().cloned());
    out
}

fn chm_concat(a: &ChmExpr, b: &ChmExpr) -> ChmExpr {
    let mut out = Vec::new();
    for (ca, wa) in a {
        for (cb, wb) in b {
            let mut w = wa.clone();
            w.extend(wb.iter().cloned());
            out.push((ca.mul(cb), w));
        }
    }
    out
}

/// Left adjoint action of E_i in the multiparameter Hopf structure:
/// ad(E_i)(y) = E_i y - L_{i+1} L_i^{-1} y L_i L_{i+1}^{-1} E_i.
fn ad_e(i: usize, y: &ChmExpr) -> ChmExpr {
    let left = chm_concat(&chm_word(&[(ChmGen::E(i), 1)]), y);
    let pre = chm_word(&[(ChmGen::L(i + 1), 1), (ChmGen::L(i), -1)]);
    let post = chm_word(&[(ChmGen::L(i), 1), (ChmGen::L(i + 1), -1), (ChmGen::E(i), 1)]);
    let right = chm_concat(&chm_concat(&pre, y), &post);
    chm_add(&left, &chm_scale(&right, &Scalar::from_int(-1)))
}

/// Left adjoint action of F_i: ad(F_i)(y) = F_i y - K_{i+1} K_i^{-1} y K_i K_{i+1}^{-1} F_i.
fn ad_f(i: usize, y: &ChmExpr) -> ChmExpr {
    let left = chm_concat(&chm_word(&[(ChmGen::F(i), 1)]), y);
    let pre = chm_word(&[(ChmGen::K(i + 1), 1), (ChmGen::K(i), -1)]);
    let post = chm_word(&[(ChmGen::K(i), 1), (ChmGen::K(i + 1), -1), (ChmGen::F(i), 1)]);
    let right = chm_concat(&chm_concat(&pre, y), &post);
    chm_add(&left, &chm_scale(&right, &Scalar::from_int(-1)))
}

/// The multiparameter presentation with lambda = r s^{-1} and all
/// p_{ij} = s^{-1}: named relation list, each moved to one side.  The
/// cubic (adjoint-power) relations require the radical quotient after
/// transport; they are flagged.
pub struct ChmPresentation {
    pub n: usize,
    pub relations: Vec<(String, ChmExpr, bool)>,
}

impl ChmPresentation {
    pub fn new(alg: &Algebra) -> Self {
        let n = alg.n;
        let one = Scalar::one();
        let r = alg.r().clone();
        let s = alg.s().clone();
        let mut rels: Vec<(String, ChmExpr, bool)> = Vec::new();
        let kl: Vec<ChmGen> = (1..=n)
            .map(ChmGen::K)
            .chain((1..=n).map(ChmGen::L))
            .collect();
        for (ai, &g1) in kl.iter().enumerate() {
            rels.push((
                format!("torus-inverse {g1}"),
                chm_add(
                    &chm_word(&[(g1, 1), (g1, -1)]),
                    &chm_scale(&chm_word(&[]), &one.neg()),
                ),
                false,
            ));
            for &g2 in kl.iter().skip(ai + 1) {
                rels.push((
                    format!("torus-commute {g1} {g2}"),
                    chm_add(
                        &chm_word(&[(g1, 1), (g2, 1)]),
                        &chm_scale(&chm_word(&[(g2, 1), (g1, 1)]), &one.neg()),
                    ),
                    false,
                ));
            }
        }
        let delta = |a: usize, b: i64| -> i64 { (a as i64 == b) as i64 };
        for j in 1..=n {
            for i in 1..n {
                // K_j E_i = r^{-d_ij} s^{-d_{i,j-1}} E_i K_j
                let ce = alg.rs_power(-delta(i, j as i64), -delta(i, j as i64 - 1));
                rels.push((
                    format!("K{j} E{i} commutation"),
                    chm_add(
                        &chm_word(&[(ChmGen::K(j), 1), (ChmGen::E(i), 1)]),
                        &chm_scale(
                            &chm_word(&[(ChmGen::E(i), 1), (ChmGen::K(j), 1)]),
                            &ce.neg(),
                        ),
                    ),
                    false,
                ));
                let cf = alg.rs_power(delta(i, j as i64), delta(i, j as i64 - 1));
                rels.push((
                    format!("K{j} F{i} commutation"),
                    chm_add(
                        &chm_word(&[(ChmGen::K(j), 1), (ChmGen::F(i), 1)]),
                        &chm_scale(
                            &chm_word(&[(ChmGen::F(i), 1), (ChmGen::K(j), 1)]),
                            &cf.neg(),
                        ),
                    ),
                    false,
                ));
                // L_j E_i = r^{d_{i,j-1}} s^{d_ij} E_i L_j
                let ce = alg.rs_power(delta(i, j as i64 - 1), delta(i, j as i64));
                rels.push((
                    format!("L{j} E{i} commutation"),
                    chm_add(
                        &chm_word(&[(ChmGen::L(j), 1), (ChmGen::E(i), 1)]),
                        &chm_scale(
                            &chm_word(&[(ChmGen::E(i), 1), (ChmGen::L(j), 1)]),
                            &ce.neg(),
                        ),
                    ),
                    false,
                ));
                let cf = alg.rs_power(-delta(i, j as i64 - 1), -delta(i, j as i64));
                rels.push((
                    format!("L{j} F{i} commutation"),
                    chm_add(
                        &chm_word(&[(ChmGen::L(j), 1), (ChmGen::F(i), 1)]),
                        &chm_scale(
                            &chm_word(&[(ChmGen::F(i), 1), (ChmGen::L(j), 1)]),
                            &cf.neg(),
                        ),
                    ),
                    false,
                ));
            }
        }
        // E_i F_i - r^{-1} s F_i E_i = (r^{-1} s - 1)(L_{i+1} K_{i+1} L_i^{-1} K_i^{-1} - 1)
        let ris = r.inv().unwrap().mul(&s);
        for i in 1..n {
            let mut expr = chm_word(&[(ChmGen::E(i), 1), (ChmGen::F(i), 1)]);
            expr = chm_add(
                &expr,
                &chm_scale(
                    &chm_word(&[(ChmGen::F(i), 1), (ChmGen::E(i), 1)]),
                    &ris.neg(),
                ),
            );
            let c = ris.sub(&one);
            expr = chm_add(
                &expr,
                &chm_scale(
                    &chm_word(&[
                        (ChmGen::L(i + 1), 1),
                        (ChmGen::K(i + 1), 1),
                        (ChmGen::L(i), -1),
                        (ChmGen::K(i), -1),
                    ]),
                    &c.neg(),
                ),
            );
            expr = chm_add(&expr, &chm_scale(&chm_word(&[]), &c));
            rels.push((format!("EF diagonal {i}"), expr, false));
        }
        // E_i F_j = r^{d_{i,j+1}} s^{-d_{i,j-1}} F_j E_i for i != j
        for i in 1..n {
            for j in 1..n {
                if i == j {
                    continue;
                }
                let c = alg.rs_power(delta(i, j as i64 + 1), -delta(i, j as i64 - 1));
                rels.push((
                    format!("EF crossing {i},{j}"),
                    chm_add(
                        &chm_word(&[(ChmGen::E(i), 1), (ChmGen::F(j), 1)]),
                        &chm_scale(
                            &chm_word(&[(ChmGen::F(j), 1), (ChmGen::E(i), 1)]),
                            &c.neg(),
                        ),
                    ),
                    false,
                ));
            }
        }
        // adjoint-power relations: exponent 1 - <alpha_i, alpha_j>
        for i in 1..n {
            for j in 1..n {
                if i == j {
                    continue;
                }
                let power = if i.abs_diff(j) == 1 { 2 } else { 1 };
                let mut ee = chm_word(&[(ChmGen::E(j), 1)]);
                let mut ff = chm_word(&[(ChmGen::F(j), 1)]);
                for _ in 0..power {
                    ee = ad_e(i, &ee);
                    ff = ad_f(i, &ff);
                }
                rels.push((format!("adjoint E{i}^{power} E{j}"), ee, true));
                rels.push((format!("adjoint F{i}^{power} F{j}"), ff, true));
            }
        }
        ChmPresentation { n, relations: rels }
    }
}

/// The image table of the transport morphism into U_{r,s}(gl_n):
///   L_i -> a_1..a_{i-1} b_{i+1}^{-1}..b_n^{-1}
///   K_i -> b_1^{-1}..b_{i-1}^{-1} a_{i+1}..a_n
///   E_i -> -s^{-1} (r-s)^2 e_i
///   F_i -> (w'_i)^{-1} f_i
pub fn chm_image(alg: &Algebra, g: ChmGen) -> Result<Element> {
    let n = alg.n;
    match g {
        ChmGen::L(i) => {
            let mut t = vec![0i32; alg.torus_dim()];
            for k in 1..i {
                t[k - 1] += 1; // a_k
            }
            for k in i + 1..=n {
                t[n + k - 1] -= 1; // b_k^{-1}
            }
            Ok(Element::single(
                alg.id(),
                TermKey {
                    f: Vec::new(),
                    t,
                    e: Vec::new(),
                },
                Scalar::one(),
            ))
        }
        ChmGen::K(i) => {
            let mut t = vec![0i32; alg.torus_dim()];
            for k in 1..i {
                t[n + k - 1] -= 1; // b_k^{-1}
            }
            for k in i + 1..=n {
                t[k - 1] += 1; // a_k
            }
            Ok(Element::single(
                alg.id(),
                TermKey {
                    f: Vec::new(),
                    t,
                    e: Vec::new(),
                },
                Scalar::one(),
            ))
        }
        ChmGen::E(i) => {
            let c = alg
                .s()
                .inv()?
                .neg()
                .mul(&alg.r_minus_s().pow(2)?);
            Ok(alg.gen(Gen::E(i), 1)?.scale(&c))
        }
        ChmGen::F(i) => alg.mul(&alg.omega_element(i, true, -1), &alg.gen(Gen::F(i), 1)?),
    }
}

fn chm_image_pow(alg: &Algebra, g: ChmGen, exp: i64) -> Result<Element> {
    if exp >= 0 {
        let img = chm_image(alg, g)?;
        let mut acc = alg.one();
        for _ in 0..exp {
            acc = alg.mul(&acc, &img)?;
        }
        return Ok(acc);
    }
    match g {
        ChmGen::K(_) | ChmGen::L(_) => {
            let img = chm_image(alg, g)?;
            let (key, _) = img.terms().next().unwrap();
            let inv = Element::single(
                alg.id(),
                TermKey {
                    f: Vec::new(),
                    t: key.t.iter().map(|&x| -x).collect(),
                    e: Vec::new(),
                },
                Scalar::one(),
            );
            let mut acc = alg.one();
            for _ in 0..(-exp) {
                acc = alg.mul(&acc, &inv)?;
            }
            Ok(acc)
        }
        _ => Err(UrsError::Domain(format!("{g} has no inverse"))),
    }
}

/// Transport a multiparameter expression through the image table.
pub fn chm_transport(alg: &Algebra, expr: &ChmExpr) -> Result<Element> {
    let mut out = alg.zero();
    for (c, word) in expr {
        let mut acc = alg.one();
        for &(g, exp) in word {
            acc = alg.mul(&acc, &chm_image_pow(alg, g, exp)?)?;
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

/// Full transport verification: every relation of the multiparameter
/// presentation maps to zero (modulo the radical for the cubic ones),
/// generator coproducts correspond, the torus recovery identities hold,
/// and the rank-two image-generation witness passes.  For n = 3 the
/// element a_1 is certified to lie outside the image of the torus.
pub fn chm_transport_residuals(ctx: &Pairing) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    if alg.kind != Kind::Gl {
        return Err(UrsError::Domain(
            "the transport morphism lands in the gl-type algebra".into(),
        ));
    }
    let n = alg.n;
    let pres = ChmPresentation::new(alg);
    let mut failures = Vec::new();
    for (name, expr, needs_radical) in &pres.relations {
        let image = chm_transport(alg, expr)?;
        let residual = if *needs_radical {
            ctx.reduce_element(&image)?
        } else {
            image
        };
        if !residual.is_zero() {
            // an isolated adjoint-relation failure would point at the
            // root-form convention inside the adjoint exponent
            let hint = if name.starts_with("adjoint") {
                " (first suspect: the inner-product convention in the adjoint power)"
            } else {
                ""
            };
            failures.push(format!("relation {name} has nonzero image{hint}"));
        }
    }

    // coproduct correspondence: Delta(phi(g)) = (phi x phi)(Delta_hat(g))
    // with Delta_hat(E_i) = E_i x 1 + L_{i+1} L_i^{-1} x E_i and
    // Delta_hat(F_i) = F_i x 1 + K_{i+1} K_i^{-1} x F_i; K, L group-like.
    for i in 1..n {
        let e_img = chm_image(alg, ChmGen::E(i))?;
        let lhs = coproduct(alg, &e_img)?;
        let ll = chm_transport(
            alg,
            &chm_word(&[(ChmGen::L(i + 1), 1), (ChmGen::L(i), -1)]),
        )?;
        let rhs = TensorElement::from_products(
            alg,
            2,
            &[
                (Scalar::one(), vec![e_img.clone(), alg.one()]),
                (Scalar::one(), vec![ll, e_img.clone()]),
            ],
        )?;
        if !lhs.sub(&rhs)?.is_zero() {
            failures.push(format!("coproduct of E{i} fails to correspond"));
        }
        let f_img = chm_image(alg, ChmGen::F(i))?;
        let lhs = coproduct(alg, &f_img)?;
        let kk = chm_transport(
            alg,
            &chm_word(&[(ChmGen::K(i + 1), 1), (ChmGen::K(i), -1)]),
        )?;
        let rhs = TensorElement::from_products(
            alg,
            2,
            &[
                (Scalar::one(), vec![f_img.clone(), alg.one()]),
                (Scalar::one(), vec![kk, f_img.clone()]),
            ],
        )?;
        if !lhs.sub(&rhs)?.is_zero() {
            failures.push(format!("coproduct of F{i} fails to correspond"));
        }
    }
    for i in 1..=n {
        for g in [ChmGen::K(i), ChmGen::L(i)] {
            let img = chm_image(alg, g)?;
            let lhs = coproduct(alg, &img)?;
            let rhs = TensorElement::from_products(
                alg,
                2,
                &[(Scalar::one(), vec![img.clone(), img.clone()])],
            )?;
            if !lhs.sub(&rhs)?.is_zero() {
                failures.push(format!("coproduct of {g} fails to correspond"));
            }
        }
    }

    // torus recovery: w_i = phi(L_i^{-1} L_{i+1}) and w'_i = phi(K_i K_{i+1}^{-1})
    for i in 1..n {
        let w = chm_transport(
            alg,
            &chm_word(&[(ChmGen::L(i), -1), (ChmGen::L(i + 1), 1)]),
        )?;
        if w != alg.omega_element(i, false, 1) {
            failures.push(format!("torus recovery fails for w{i}"));
        }
        let wp = chm_transport(
            alg,
            &chm_word(&[(ChmGen::K(i), 1), (ChmGen::K(i + 1), -1)]),
        )?;
        if wp != alg.omega_element(i, true, 1) {
            failures.push(format!("torus recovery fails for w'{i}"));
        }
    }

    if n == 2 {
        // image-generation witness: each algebra generator is an image
        let cases: Vec<(Element, ChmExpr)> = vec![
            (alg.gen(Gen::A(1), 1)?, chm_word(&[(ChmGen::L(2), 1)])),
            (alg.gen(Gen::A(2), 1)?, chm_word(&[(ChmGen::K(1), 1)])),
            (alg.gen(Gen::B(1), 1)?, chm_word(&[(ChmGen::K(2), -1)])),
            (alg.gen(Gen::B(2), 1)?, chm_word(&[(ChmGen::L(1), -1)])),
            (
                alg.gen(Gen::E(1), 1)?,
                chm_scale(
                    &chm_word(&[(ChmGen::E(1), 1)]),
                    &alg.s()
                        .inv()?
                        .neg()
                        .mul(&alg.r_minus_s().pow(2)?)
                        .inv()?,
                ),
            ),
            (
                alg.gen(Gen::F(1), 1)?,
                chm_word(&[
                    (ChmGen::K(1), 1),
                    (ChmGen::K(2), -1),
                    (ChmGen::F(1), 1),
                ]),
            ),
        ];
        for (target, expr) in cases {
            if chm_transport(alg, &expr)? != target {
                failures.push("rank-two generation witness fails".into());
            }
        }
    }

    if n >= 3 {
        // a_1 must lie outside the lattice generated by the torus images
        let mut cols: Vec<Vec<i64>> = Vec::new();
        for i in 1..=n {
            for g in [ChmGen::L(i), ChmGen::K(i)] {
                let img = chm_image(alg, g)?;
                let (key, _) = img.terms().next().unwrap();
                cols.push(key.t.iter().map(|&x| x as i64).collect());
            }
        }
        let mut target = vec![0i64; alg.torus_dim()];
        target[0] = 1; // a_1
        if lattice_member(&cols, &target) {
            failures.push("a_1 unexpectedly lies in the torus image".into());
        }
    }
    Ok(failures)
}

/// Integer lattice membership via column Hermite reduction.
pub fn lattice_member(cols: &[Vec<i64>], target: &[i64]) -> bool {
    let rows = target.len();
    let mut m: Vec<Vec<i64>> = cols.to_vec();
    let mut b = target.to_vec();
    let mut used = vec![false; m.len()];
    for row in 0..rows {
        // find a column with minimal nonzero entry in this row and
        // euclidean-reduce the others against it
        loop {
            let mut pivot: Option<usize> = None;
            for (ci, col) in m.iter().enumerate() {
                if used[ci] || col[row] == 0 {
                    continue;
                }
                if pivot.map(|p| m[p][row].abs() > col[row].abs()).unwrap_or(true) {
                    pivot = Some(ci);
                }
            }
            let Some(p) = pivot else { break };
            let mut again = false;
            for ci in 0..m.len() {
                if ci == p || used[ci] || m[ci][row] == 0 {
                    continue;
                }
                let q = m[ci][row].div_euclid(m[p][row]);
                let pivot_col = m[p].clone();
                for (x, pv) in m[ci].iter_mut().zip(&pivot_col) {
                    *x -= q * pv;
                }
                if m[ci][row] != 0 {
                    again = true;
                }
            }
            if !again {
                // reduce the target and consume the pivot
                if b[row] != 0 {
                    if b[row] % m[p][row] != 0 {
                        return false;
                    }
                    let q = b[row] / m[p][row];
                    for rr in 0..rows {
                        b[rr] -= q * m[p][rr];
                    }
                }
                used[p] = true;
                break;
            }
        }
        if b[row] != 0 {
            return false;
        }
    }
    b.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_family_passes() {
        let failures = sl2_iso_residuals(5, 7).unwrap();
        assert!(failures.is_empty(), "{failures:?}");
    }

    #[test]
    fn identity_morphism_fixes_elements() {
        let alg = Arc::new(Algebra::generic(2, Kind::Sl).unwrap());
        let id = PresentationMorphism::identity(alg.clone()).unwrap();
        let x = alg
            .word(&[(Gen::E(1), 1), (Gen::F(1), 1), (Gen::Wp(1), -2)])
            .unwrap();
        assert_eq!(id.apply(&x).unwrap(), x);
    }

    #[test]
    fn transport_passes_n2_and_n3() {
        for n in [2usize, 3] {
            let ctx = Pairing::new(Arc::new(Algebra::generic(n, Kind::Gl).unwrap()), 8);
            let failures = chm_transport_residuals(&ctx).unwrap();
            assert!(failures.is_empty(), "n={n}: {failures:?}");
        }
    }

    #[test]
    fn diagonal_ef_relation_is_commutator_multiple() {
        // the transported diagonal EF relation reduces to a multiple of the
        // mixed commutator relation: check the image of E_1 F_1 minus its
        // reversal against an independent straightening
        let alg = Algebra::generic(2, Kind::Gl).unwrap();
        let e_img = chm_image(&alg, ChmGen::E(1)).unwrap();
        let f_img = chm_image(&alg, ChmGen::F(1)).unwrap();
        let lhs = alg.mul(&e_img, &f_img).unwrap();
        // independently: E F = -s^{-1}(r-s)^2 e_1 (w'_1)^{-1} f_1
        let c = alg
            .s()
            .inv()
            .unwrap()
            .neg()
            .mul(&alg.r_minus_s().pow(2).unwrap());
        let direct = alg
            .mul(
                &alg.gen(Gen::E(1), 1).unwrap(),
                &alg.mul(
                    &alg.omega_element(1, true, -1),
                    &alg.gen(Gen::F(1), 1).unwrap(),
                )
                .unwrap(),
            )
            .unwrap()
            .scale(&c);
        assert_eq!(lhs, direct);
    }

    #[test]
    fn lattice_membership_basics() {
        // columns (2,0) and (0,3): (2,3) inside, (1,0) outside
        let cols = vec![vec![2, 0], vec![0, 3]];
        assert!(lattice_member(&cols, &[2, 3]));
        assert!(!lattice_member(&cols, &[1, 0]));
        assert!(lattice_member(&cols, &[-4, 6]));
        // dependent columns still work
        let cols = vec![vec![1, 1], vec![2, 2], vec![0, 3]];
        assert!(lattice_member(&cols, &[1, 4]));
        assert!(!lattice_member(&cols, &[0, 1]));
    }
}
