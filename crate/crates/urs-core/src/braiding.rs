//! The quasi-R-matrix Theta, the braiding R = Theta o ftilde o P on
//! truncated module tensor products, the Yang-Baxter and hexagon
//! verifications, and the quantum Casimir operator.
//!
//! Theta_zeta = sum_k v_k (x) u_k over the dual bases of U^-_{-zeta} and
//! U^+_zeta; on truncated highest-weight modules only finitely many zeta
//! contribute because the u-leg must climb inside the second factor.  All
//! operator identities are checked on basis vectors with a declared depth
//! budget; the harness rejects under-provisioned modules instead of
//! silently truncating.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, Element, Gen};
use crate::cat_o::{modvec_scale, ModVec, WeightModule};
use crate::error::{Result, UrsError};
use crate::hopf::{antipode, coproduct, TensorElement};
use crate::pairing::{f_form, Pairing};
use crate::scalar::Scalar;
use crate::weight::{contents_below, contents_up_to, Content, Weight};

/// Theta_zeta as a rank-2 tensor in the algebra.
pub fn theta(ctx: &Pairing, zeta: &[i64]) -> Result<TensorElement> {
    let alg = ctx.algebra();
    if zeta.iter().any(|&c| c < 0) {
        return Ok(TensorElement::zero(alg, 2));
    }
    let d = ctx.dual_bases_cached(zeta)?;
    let parts: Vec<(Scalar, Vec<Element>)> = d
        .v
        .iter()
        .zip(&d.u)
        .map(|(v, u)| (Scalar::one(), vec![v.clone(), u.clone()]))
        .collect();
    TensorElement::from_products(alg, 2, &parts)
}

/// A state in a tensor product of truncated modules.
#[derive(Clone)]
pub struct TensorState<'m> {
    pub mods: Vec<&'m WeightModule>,
    pub amps: BTreeMap<Vec<usize>, Scalar>,
}

impl<'m> TensorState<'m> {
    pub fn basis(mods: Vec<&'m WeightModule>, idxs: Vec<usize>) -> Self {
        let mut amps = BTreeMap::new();
        amps.insert(idxs, Scalar::one());
        TensorState { mods, amps }
    }

    pub fn zero_like(&self) -> Self {
        TensorState {
            mods: self.mods.clone(),
            amps: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    fn insert_add(&mut self, idxs: Vec<usize>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.amps.entry(idxs) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.amps {
            out.insert_add(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        TensorState {
            mods: self.mods.clone(),
            amps: if c.is_zero() {
                BTreeMap::new()
            } else {
                self.amps.iter().map(|(k, x)| (k.clone(), x.mul(c))).collect()
            },
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// Same module tuple and amplitudes.
    pub fn same_as(&self, other: &Self) -> bool {
        let mods_eq = self.mods.len() == other.mods.len()
            && self
                .mods
                .iter()
                .zip(&other.mods)
                .all(|(a, b)| std::ptr::eq(*a, *b));
        mods_eq && self.amps == other.amps
    }

    /// Swap two legs (modules and indices).
    pub fn swap(&self, i: usize, j: usize) -> Self {
        let mut mods = self.mods.clone();
        mods.swap(i, j);
        let mut out = TensorState {
            mods,
            amps: BTreeMap::new(),
        };
        for (k, c) in &self.amps {
            let mut nk = k.clone();
            nk.swap(i, j);
            out.insert_add(nk, c.clone());
        }
        out
    }

    /// Multiply each amplitude by a function of the leg weights.
    pub fn weight_scale<F>(&self, f: F) -> Self
    where
        F: Fn(&[&Weight]) -> Scalar,
    {
        let mut out = self.zero_like();
        for (k, c) in &self.amps {
            let ws: Vec<&Weight> = k
                .iter()
                .enumerate()
                .map(|(leg, &idx)| &self.mods[leg].basis[idx].weight)
                .collect();
            out.insert_add(k.clone(), c.mul(&f(&ws)));
        }
        out
    }

    /// Apply an algebra element to one leg.
    pub fn apply_element(&self, leg: usize, x: &Element) -> Result<Self> {
        let mut out = self.zero_like();
        for (k, c) in &self.amps {
            let v = self.mods[leg].basis_vector(k[leg]);
            let applied = self.mods[leg].act_element(x, &v)?;
            for (idx, ac) in applied {
                let mut nk = k.clone();
                nk[leg] = idx;
                out.insert_add(nk, c.mul(&ac));
            }
        }
        Ok(out)
    }

    /// Apply a rank-2 tensor of algebra elements to legs (i, j).
    pub fn apply_tensor2(&self, t: &TensorElement, i: usize, j: usize) -> Result<Self> {
        let mut out = self.zero_like();
        for (legs, c) in t.terms() {
            let xi = Element::single(self.mods[i].algebra().id(), legs[0].clone(), Scalar::one());
            let xj = Element::single(self.mods[j].algebra().id(), legs[1].clone(), Scalar::one());
            let applied = self.apply_element(i, &xi)?.apply_element(j, &xj)?;
            out = out.add(&applied.scale(c));
        }
        Ok(out)
    }

    /// Apply Theta_zeta for one fixed zeta at legs (i, j): v on leg i,
    /// u on leg j.
    pub fn apply_theta_fixed(
        &self,
        ctx: &Pairing,
        i: usize,
        j: usize,
        zeta: &[i64],
    ) -> Result<Self> {
        if zeta.iter().any(|&c| c < 0) {
            return Ok(self.zero_like());
        }
        let d = ctx.dual_bases_cached(zeta)?;
        let mut out = self.zero_like();
        for (vk, uk) in d.v.iter().zip(&d.u) {
            let mut part = self.zero_like();
            for (k, c) in &self.amps {
                // the u-leg must be able to descend by zeta
                let cj = &self.mods[j].basis[k[j]].content;
                if !crate::weight::content_le(zeta, cj) {
                    continue;
                }
                let uj = self.mods[j].act_element(uk, &self.mods[j].basis_vector(k[j]))?;
                if uj.is_empty() {
                    continue;
                }
                let vi = self.mods[i].act_element(vk, &self.mods[i].basis_vector(k[i]))?;
                for (xi, ci) in &vi {
                    for (xj, cj2) in &uj {
                        let mut nk = k.clone();
                        nk[i] = *xi;
                        nk[j] = *xj;
                        part.insert_add(nk, c.mul(ci).mul(cj2));
                    }
                }
            }
            out = out.add(&part);
        }
        Ok(out)
    }

    /// Apply the full Theta = sum over zeta at legs (i, j); finite because
    /// the u-leg content bounds the sum.
    pub fn apply_theta(&self, ctx: &Pairing, i: usize, j: usize) -> Result<Self> {
        let mut out = self.zero_like();
        let mut zetas: std::collections::BTreeSet<Content> = std::collections::BTreeSet::new();
        for k in self.amps.keys() {
            for z in contents_below(&self.mods[j].basis[k[j]].content) {
                zetas.insert(z);
            }
        }
        for z in zetas {
            out = out.add(&self.apply_theta_fixed(ctx, i, j, &z)?);
        }
        Ok(out)
    }

    /// The braiding on legs (leg, leg+1): first the swap, then the f-form
    /// scaling, then Theta.
    pub fn apply_r(&self, ctx: &Pairing, leg: usize) -> Result<Self> {
        let alg = ctx.algebra();
        let swapped = self.swap(leg, leg + 1);
        let scaled = swapped.weight_scale(|ws| f_form(alg, ws[leg], ws[leg + 1]));
        scaled.apply_theta(ctx, leg, leg + 1)
    }
}

/// The braiding matrix on the combined-depth-bounded pair space.
pub struct BraidMap {
    /// Input basis pairs (index in M', index in M).
    pub cols: Vec<(usize, usize)>,
    /// Output basis pairs (index in M, index in M').
    pub rows: Vec<(usize, usize)>,
    pub matrix: Vec<Vec<Scalar>>,
    pub budget: usize,
}

/// Basis pairs of combined depth <= budget, in deterministic order.
pub fn budget_pairs(mp: &WeightModule, m: &WeightModule, budget: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..mp.dim() {
        for b in 0..m.dim() {
            if mp.depth_of(a) + m.depth_of(b) <= budget {
                out.push((a, b));
            }
        }
    }
    out
}

pub fn budget_triples(
    m1: &WeightModule,
    m2: &WeightModule,
    m3: &WeightModule,
    budget: usize,
) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for a in 0..m1.dim() {
        for b in 0..m2.dim() {
            for c in 0..m3.dim() {
                if m1.depth_of(a) + m2.depth_of(b) + m3.depth_of(c) <= budget {
                    out.push((a, b, c));
                }
            }
        }
    }
    out
}

/// Build the braiding matrix R: M' (x) M -> M (x) M' on the budget space.
pub fn build_r(
    ctx: &Pairing,
    mp: &WeightModule,
    m: &WeightModule,
    budget: usize,
) -> Result<BraidMap> {
    if budget + 2 > mp.depth || budget + 2 > m.depth {
        return Err(UrsError::Domain(format!(
            "budget {budget} requires module depth at least {}",
            budget + 2
        )));
    }
    let cols = budget_pairs(mp, m, budget);
    let rows = budget_pairs(m, mp, budget);
    let row_index: std::collections::HashMap<(usize, usize), usize> = rows
        .iter()
        .enumerate()
        .map(|(i, &p)| (p, i))
        .collect();
    let mut matrix = vec![vec![Scalar::zero(); cols.len()]; rows.len()];
    for (ci, &(a, b)) in cols.iter().enumerate() {
        let st = TensorState::basis(vec![mp, m], vec![a, b]);
        let out = st.apply_r(ctx, 0)?;
        for (k, c) in &out.amps {
            let ri = *row_index
                .get(&(k[0], k[1]))
                .expect("braiding must preserve the combined depth");
            matrix[ri][ci] = c.clone();
        }
    }
    Ok(BraidMap {
        cols,
        rows,
        matrix,
        budget,
    })
}

/// Intertwining residuals: Delta(g) o R - R o Delta(g) applied to every
/// budget pair, for every generator (and torus inverses).  Returns the
/// failures as human-readable strings.
pub fn intertwining_residuals(
    ctx: &Pairing,
    mp: &WeightModule,
    m: &WeightModule,
    budget: usize,
) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    let mut gens: Vec<(Gen, i64)> = Vec::new();
    for g in alg.all_gens() {
        gens.push((g, 1));
    }
    for g in alg.torus_gens() {
        gens.push((g, -1));
    }
    let mut failures = Vec::new();
    for &(a, b) in &budget_pairs(mp, m, budget) {
        let st = TensorState::basis(vec![mp, m], vec![a, b]);
        let rst = st.apply_r(ctx, 0)?;
        for &(g, exp) in &gens {
            let dg = coproduct(alg, &alg.gen(g, exp)?)?;
            let lhs = rst.apply_tensor2(&dg, 0, 1)?;
            let rhs = st.apply_tensor2(&dg, 0, 1)?.apply_r(ctx, 0)?;
            if !lhs.sub(&rhs).is_zero() {
                failures.push(format!(
                    "generator {g}^{exp} fails to intertwine on pair ({a},{b})"
                ));
            }
        }
    }
    Ok(failures)
}

/// Quantum Yang-Baxter check: R12 R23 R12 = R23 R12 R23 on all basis
/// triples within the budget.  Returns failures.
pub fn qybe_residuals(
    ctx: &Pairing,
    m1: &WeightModule,
    m2: &WeightModule,
    m3: &WeightModule,
    budget: usize,
) -> Result<Vec<String>> {
    for m in [m1, m2, m3] {
        if budget + 2 > m.depth {
            return Err(UrsError::Domain(format!(
                "budget {budget} requires module depth at least {}",
                budget + 2
            )));
        }
    }
    let mut failures = Vec::new();
    for &(a, b, c) in &budget_triples(m1, m2, m3, budget) {
        let st = TensorState::basis(vec![m1, m2, m3], vec![a, b, c]);
        let lhs = st.apply_r(ctx, 0)?.apply_r(ctx, 1)?.apply_r(ctx, 0)?;
        let rhs = st.apply_r(ctx, 1)?.apply_r(ctx, 0)?.apply_r(ctx, 1)?;
        if !lhs.same_as(&rhs) {
            failures.push(format!("triple ({a},{b},{c})"));
        }
    }
    Ok(failures)
}

/// Hexagon identities on all basis triples within the budget.
pub fn hexagon_residuals(
    ctx: &Pairing,
    m1: &WeightModule,
    m2: &WeightModule,
    m3: &WeightModule,
    budget: usize,
) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    let mut failures = Vec::new();
    for &(a, b, c) in &budget_triples(m1, m2, m3, budget) {
        let st = TensorState::basis(vec![m1, m2, m3], vec![a, b, c]);

        // first identity: R12 R23 = (1 x Delta)(Theta) o ftilde' o P12 o P23
        let lhs1 = st.apply_r(ctx, 1)?.apply_r(ctx, 0)?;
        let perm1 = st.swap(1, 2).swap(0, 1);
        let scaled1 = perm1.weight_scale(|ws| f_form(alg, ws[0], &ws[1].add(ws[2])));
        let rhs1 = apply_one_delta_theta(ctx, &scaled1)?;
        if !lhs1.same_as(&rhs1) {
            failures.push(format!("first hexagon on triple ({a},{b},{c})"));
        }

        // second identity: R23 R12 = (Delta x 1)(Theta) o ftilde'' o P23 o P12
        let lhs2 = st.apply_r(ctx, 0)?.apply_r(ctx, 1)?;
        let perm2 = st.swap(0, 1).swap(1, 2);
        let scaled2 = perm2.weight_scale(|ws| f_form(alg, &ws[0].add(ws[1]), ws[2]));
        let rhs2 = apply_delta_one_theta(ctx, &scaled2)?;
        if !lhs2.same_as(&rhs2) {
            failures.push(format!("second hexagon on triple ({a},{b},{c})"));
        }
    }
    Ok(failures)
}

/// (1 x Delta)(Theta): v on leg 1, Delta(u) on legs (2, 3).
fn apply_one_delta_theta<'m>(ctx: &Pairing, st: &TensorState<'m>) -> Result<TensorState<'m>> {
    let mut out = st.zero_like();
    let mut gammas: std::collections::BTreeSet<Content> = std::collections::BTreeSet::new();
    for k in st.amps.keys() {
        let c2 = &st.mods[1].basis[k[1]].content;
        let c3 = &st.mods[2].basis[k[2]].content;
        for z in contents_below(&crate::weight::content_add(c2, c3)) {
            gammas.insert(z);
        }
    }
    for gamma in gammas {
        out = out.add(&apply_one_delta_theta_fixed(ctx, st, &gamma)?);
    }
    Ok(out)
}

/// (Delta x 1)(Theta): Delta(v) on legs (1, 2), u on leg 3.
fn apply_delta_one_theta<'m>(ctx: &Pairing, st: &TensorState<'m>) -> Result<TensorState<'m>> {
    let mut out = st.zero_like();
    let mut gammas: std::collections::BTreeSet<Content> = std::collections::BTreeSet::new();
    for k in st.amps.keys() {
        for z in contents_below(&st.mods[2].basis[k[2]].content) {
            gammas.insert(z);
        }
    }
    for gamma in gammas {
        out = out.add(&apply_delta_one_theta_fixed(ctx, st, &gamma)?);
    }
    Ok(out)
}

/// (Delta x 1)(Theta_gamma) for one gamma: Delta(v) on legs (1,2), u on 3.
fn apply_delta_one_theta_fixed<'m>(
    ctx: &Pairing,
    st: &TensorState<'m>,
    gamma: &[i64],
) -> Result<TensorState<'m>> {
    let alg = ctx.algebra();
    let d = ctx.dual_bases_cached(gamma)?;
    let mut out = st.zero_like();
    for (vk, uk) in d.v.iter().zip(&d.u) {
        let dv = coproduct(alg, vk)?;
        let part = st.apply_element(2, uk)?.apply_tensor2(&dv, 0, 1)?;
        out = out.add(&part);
    }
    Ok(out)
}

/// (1 x Delta)(Theta_gamma) for one gamma: v on leg 1, Delta(u) on (2,3).
fn apply_one_delta_theta_fixed<'m>(
    ctx: &Pairing,
    st: &TensorState<'m>,
    gamma: &[i64],
) -> Result<TensorState<'m>> {
    let alg = ctx.algebra();
    let d = ctx.dual_bases_cached(gamma)?;
    let mut out = st.zero_like();
    for (vk, uk) in d.v.iter().zip(&d.u) {
        let du = coproduct(alg, uk)?;
        let part = st.apply_element(0, vk)?.apply_tensor2(&du, 1, 2)?;
        out = out.add(&part);
    }
    Ok(out)
}

/// (Delta x 1)(Theta_op): Delta(u) on legs (1,2), v on leg 3.
fn apply_delta_one_theta_op<'m>(ctx: &Pairing, st: &TensorState<'m>) -> Result<TensorState<'m>> {
    let alg = ctx.algebra();
    let mut out = st.zero_like();
    let mut gammas: std::collections::BTreeSet<Content> = std::collections::BTreeSet::new();
    for k in st.amps.keys() {
        let c1 = &st.mods[0].basis[k[0]].content;
        let c2 = &st.mods[1].basis[k[1]].content;
        for z in contents_below(&crate::weight::content_add(c1, c2)) {
            gammas.insert(z);
        }
    }
    for gamma in gammas {
        let d = ctx.dual_bases_cached(&gamma)?;
        for (vk, uk) in d.v.iter().zip(&d.u) {
            let du = coproduct(alg, uk)?;
            let part = st.apply_element(2, vk)?.apply_tensor2(&du, 0, 1)?;
            out = out.add(&part);
        }
    }
    Ok(out)
}

/// Strict triangularity of the braiding matrix: away from the pure
/// swap-and-scale block, the first output leg sits strictly deeper.
pub fn triangularity_residuals(
    map: &BraidMap,
    mp: &WeightModule,
    m: &WeightModule,
) -> Vec<String> {
    let alg = m.algebra();
    let mut failures = Vec::new();
    for (ci, &(a, b)) in map.cols.iter().enumerate() {
        for (ri, &(c, d)) in map.rows.iter().enumerate() {
            let entry = &map.matrix[ri][ci];
            if entry.is_zero() {
                continue;
            }
            if (c, d) == (b, a) {
                let expect = f_form(alg, &m.basis[b].weight, &mp.basis[a].weight);
                if *entry != expect {
                    failures.push(format!("diagonal block entry wrong at ({a},{b})"));
                }
            } else if m.depth_of(c) <= m.depth_of(b) {
                failures.push(format!(
                    "off-diagonal entry fails to lower the first leg at ({a},{b})->({c},{d})"
                ));
            }
        }
    }
    failures
}

// ---------------------------------------------------------------------------
// Operator identities for Theta
// ---------------------------------------------------------------------------

/// The four commutation identities of the quasi-R-matrix against the
/// generators, expanded in the algebra tensor square and compared modulo
/// the radical.  Returns failures.
pub fn theta_identities_residuals(ctx: &Pairing, zetas: &[Content]) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    let n = alg.n;
    let mut failures = Vec::new();
    for zeta in zetas {
        let th = theta(ctx, zeta)?;
        // (i)/(ii): torus commutation
        for g in alg.torus_gens() {
            let ge = alg.gen(g, 1)?;
            let gg = TensorElement::from_products(
                alg,
                2,
                &[(Scalar::one(), vec![ge.clone(), ge.clone()])],
            )?;
            let lhs = gg.mul(alg, &th)?;
            let rhs = th.mul(alg, &gg)?;
            if !ctx.reduce_tensor(&lhs.sub(&rhs)?)?.is_zero() {
                failures.push(format!("torus commutation {g} at zeta={zeta:?}"));
            }
        }
        for i in 1..n {
            let mut zm = zeta.clone();
            zm[i - 1] -= 1;
            let th_m = theta(ctx, &zm)?;
            let e = alg.gen(Gen::E(i), 1)?;
            let fi = alg.gen(Gen::F(i), 1)?;
            let one = alg.one();
            let w = alg.omega_element(i, false, 1);
            let wp = alg.omega_element(i, true, 1);
            let t2 = |x: &Element, y: &Element| -> Result<TensorElement> {
                TensorElement::from_products(
                    alg,
                    2,
                    &[(Scalar::one(), vec![x.clone(), y.clone()])],
                )
            };
            // (e_i x 1) Th_z + (w_i x e_i) Th_{z-a_i}
            //   = Th_z (e_i x 1) + Th_{z-a_i} (w'_i x e_i)
            let lhs = t2(&e, &one)?
                .mul(alg, &th)?
                .add(&t2(&w, &e)?.mul(alg, &th_m)?)?;
            let rhs = th
                .mul(alg, &t2(&e, &one)?)?
                .add(&th_m.mul(alg, &t2(&wp, &e)?)?)?;
            if !ctx.reduce_tensor(&lhs.sub(&rhs)?)?.is_zero() {
                failures.push(format!("raising identity i={i} at zeta={zeta:?}"));
            }
            // (1 x f_i) Th_z + (f_i x w'_i) Th_{z-a_i}
            //   = Th_z (1 x f_i) + Th_{z-a_i} (f_i x w_i)
            let lhs = t2(&one, &fi)?
                .mul(alg, &th)?
                .add(&t2(&fi, &wp)?.mul(alg, &th_m)?)?;
            let rhs = th
                .mul(alg, &t2(&one, &fi)?)?
                .add(&th_m.mul(alg, &t2(&fi, &w)?)?)?;
            if !ctx.reduce_tensor(&lhs.sub(&rhs)?)?.is_zero() {
                failures.push(format!("lowering identity i={i} at zeta={zeta:?}"));
            }
        }
    }
    Ok(failures)
}

/// Graded coproduct expansions of the dual bases compared modulo the
/// radical: for each representative x of content gamma,
///   Delta(x) = sum_zeta sum_{i,j} (v_i v_j, x) u_i w_zeta (x) u_j,
/// and the mirrored F-side expansion.
pub fn graded_coproduct_residuals(ctx: &Pairing, max_height: usize) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    let mut failures = Vec::new();
    for gamma in contents_up_to(alg.n, max_height) {
        let dg = ctx.dual_bases_cached(&gamma)?;
        for (xi, x) in dg.u.iter().enumerate() {
            let lhs = coproduct(alg, x)?;
            let mut rhs = TensorElement::zero(alg, 2);
            for zeta in contents_below(&gamma) {
                let big = crate::weight::content_sub(&gamma, &zeta);
                let dz = ctx.dual_bases_cached(&zeta)?;
                let db = ctx.dual_bases_cached(&big)?;
                let w_zeta = alg.omega_lambda(&Weight::from_root(alg.n, &zeta), false)?;
                for (i, ub) in db.u.iter().enumerate() {
                    for (j, uz) in dz.u.iter().enumerate() {
                        let vv = alg.mul(&db.v[i], &dz.v[j])?;
                        let coeff = ctx.pair_words(&vv, x)?;
                        if coeff.is_zero() {
                            continue;
                        }
                        let left = alg.mul(ub, &w_zeta)?;
                        rhs = rhs.add(&TensorElement::from_products(
                            alg,
                            2,
                            &[(coeff, vec![left, uz.clone()])],
                        )?)?;
                    }
                }
            }
            if !ctx.reduce_tensor(&lhs.sub(&rhs)?)?.is_zero() {
                failures.push(format!("E-side expansion u[{xi}] at gamma={gamma:?}"));
            }
        }
        for (yi, y) in dg.v.iter().enumerate() {
            // Delta(y) = sum (y, u_i u_j) v_j (x) v_i w'_zeta
            let lhs = coproduct(alg, y)?;
            let mut rhs = TensorElement::zero(alg, 2);
            for zeta in contents_below(&gamma) {
                let big = crate::weight::content_sub(&gamma, &zeta);
                let dz = ctx.dual_bases_cached(&zeta)?;
                let db = ctx.dual_bases_cached(&big)?;
                let wp_zeta = alg.omega_lambda(&Weight::from_root(alg.n, &zeta), true)?;
                for (i, _) in db.u.iter().enumerate() {
                    for (j, _) in dz.u.iter().enumerate() {
                        let uu = alg.mul(&db.u[i], &dz.u[j])?;
                        let coeff = ctx.pair_words(y, &uu)?;
                        if coeff.is_zero() {
                            continue;
                        }
                        let right = alg.mul(&db.v[i], &wp_zeta)?;
                        rhs = rhs.add(&TensorElement::from_products(
                            alg,
                            2,
                            &[(coeff, vec![dz.v[j].clone(), right])],
                        )?)?;
                    }
                }
            }
            if !ctx.reduce_tensor(&lhs.sub(&rhs)?)?.is_zero() {
                failures.push(format!("F-side expansion v[{yi}] at gamma={gamma:?}"));
            }
        }
    }
    Ok(failures)
}

/// The triple-tensor operator lemmas behind the Yang-Baxter and hexagon
/// proofs, verified on module triples within the budget.
pub fn triple_operator_residuals(
    ctx: &Pairing,
    m1: &WeightModule,
    m2: &WeightModule,
    m3: &WeightModule,
    budget: usize,
    max_height: usize,
) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    let mut failures = Vec::new();
    fn f_ij<'m>(alg: &Algebra, st: &TensorState<'m>, i: usize, j: usize) -> TensorState<'m> {
        st.weight_scale(|ws| f_form(alg, ws[i], ws[j]))
    }
    for &(a, b, c) in &budget_triples(m1, m2, m3, budget) {
        let st = TensorState::basis(vec![m1, m2, m3], vec![a, b, c]);

        // mixed-coproduct expansion of Theta_op composed with the two
        // f-scalings equals the two leg-indexed Theta factors
        let lhs = apply_delta_one_theta_op(ctx, &f_ij(alg, &f_ij(alg, &st, 2, 1), 2, 0))?;
        let theta_f_32 = f_ij(alg, &st, 2, 1).apply_theta(ctx, 2, 1)?;
        let rhs = f_ij(alg, &theta_f_32, 2, 0).apply_theta(ctx, 2, 0)?;
        if !lhs.same_as(&rhs) {
            failures.push(format!("mixed expansion on triple ({a},{b},{c})"));
        }

        // the f-scalings commute with Theta_12
        let lhs2 = f_ij(alg, &f_ij(alg, &st.apply_theta(ctx, 0, 1)?, 2, 1), 2, 0);
        let rhs2 = f_ij(alg, &f_ij(alg, &st, 2, 1), 2, 0).apply_theta(ctx, 0, 1)?;
        if !lhs2.same_as(&rhs2) {
            failures.push(format!("f-scaling commutation on triple ({a},{b},{c})"));
        }

        for gamma in contents_up_to(alg.n, max_height) {
            // layer expansion: (Delta x 1)(Theta_gamma)
            //   = sum (Th_{gamma-z})_23 (Th_z)_13 (1 x w'_z x 1)
            let lhs3 = apply_delta_one_theta_fixed(ctx, &st, &gamma)?;
            let mut rhs3 = st.zero_like();
            for zeta in contents_below(&gamma) {
                let big = crate::weight::content_sub(&gamma, &zeta);
                let wpz = alg.omega_lambda(&Weight::from_root(alg.n, &zeta), true)?;
                let part = st
                    .apply_element(1, &wpz)?
                    .apply_theta_fixed(ctx, 0, 2, &zeta)?
                    .apply_theta_fixed(ctx, 1, 2, &big)?;
                rhs3 = rhs3.add(&part);
            }
            if !lhs3.same_as(&rhs3) {
                failures.push(format!(
                    "first layer expansion gamma={gamma:?} on ({a},{b},{c})"
                ));
            }

            // (1 x Delta)(Theta_gamma)
            //   = sum (Th_{gamma-z})_12 (Th_z)_13 (1 x w_z x 1)
            let lhs4 = apply_one_delta_theta_fixed(ctx, &st, &gamma)?;
            let mut rhs4 = st.zero_like();
            for zeta in contents_below(&gamma) {
                let big = crate::weight::content_sub(&gamma, &zeta);
                let wz = alg.omega_lambda(&Weight::from_root(alg.n, &zeta), false)?;
                let part = st
                    .apply_element(1, &wz)?
                    .apply_theta_fixed(ctx, 0, 2, &zeta)?
                    .apply_theta_fixed(ctx, 0, 1, &big)?;
                rhs4 = rhs4.add(&part);
            }
            if !lhs4.same_as(&rhs4) {
                failures.push(format!(
                    "second layer expansion gamma={gamma:?} on ({a},{b},{c})"
                ));
            }

            // scaling exchange for a fixed layer at legs (1, 3)
            let w_g = alg.omega_lambda(&Weight::from_root(alg.n, &gamma), false)?;
            let wp_g = alg.omega_lambda(&Weight::from_root(alg.n, &gamma), true)?;
            let lhs5 = f_ij(alg, &st.apply_theta_fixed(ctx, 0, 2, &gamma)?, 0, 1);
            let rhs5 = f_ij(alg, &st, 0, 1)
                .apply_element(1, &w_g)?
                .apply_theta_fixed(ctx, 0, 2, &gamma)?;
            if !lhs5.same_as(&rhs5) {
                failures.push(format!(
                    "layer exchange (first form) gamma={gamma:?} on ({a},{b},{c})"
                ));
            }
            let lhs6 = f_ij(alg, &st.apply_theta_fixed(ctx, 0, 2, &gamma)?, 1, 2);
            let rhs6 = f_ij(alg, &st, 1, 2)
                .apply_element(1, &wp_g)?
                .apply_theta_fixed(ctx, 0, 2, &gamma)?;
            if !lhs6.same_as(&rhs6) {
                failures.push(format!(
                    "layer exchange (second form) gamma={gamma:?} on ({a},{b},{c})"
                ));
            }
        }
    }
    Ok(failures)
}

// ---------------------------------------------------------------------------
// Quantum Casimir operator
// ---------------------------------------------------------------------------

/// The truncated Casimir element sum S(v_k) u_k over all contents of height
/// at most `cutoff`.
pub fn casimir_element(ctx: &Pairing, cutoff: usize) -> Result<Element> {
    let alg = ctx.algebra();
    let mut out = alg.zero();
    for zeta in contents_up_to(alg.n, cutoff) {
        let d = ctx.dual_bases_cached(&zeta)?;
        for (vk, uk) in d.v.iter().zip(&d.u) {
            let sv = antipode(alg, vk)?;
            out = out.add(&alg.mul(&sv, uk)?)?;
        }
    }
    Ok(out)
}

/// The diagonal weight factor g(lambda) = (r/s)^{<lambda + 2 rho, lambda>/2}.
pub fn g_weight(alg: &Algebra, lambda: &Weight) -> Result<Scalar> {
    let half = alg
        .params
        .half_ratio
        .as_ref()
        .ok_or_else(|| UrsError::Domain("no square root of r/s in this parameter set".into()))?;
    let two_rho = Weight::two_rho(alg.n);
    let exp = lambda.add(&two_rho).dot(lambda);
    half.pow(exp)
}

/// Apply the Casimir operator Omega Xi to a module vector.
pub fn casimir_apply(
    ctx: &Pairing,
    m: &WeightModule,
    omega: &Element,
    v: &ModVec,
) -> Result<ModVec> {
    let alg = ctx.algebra();
    // Xi first (diagonal), then Omega
    let mut scaled = ModVec::new();
    for (idx, c) in v {
        let g = g_weight(alg, &m.basis[*idx].weight)?;
        scaled.insert(*idx, c.mul(&g));
    }
    m.act_element(omega, &scaled)
}

/// All Casimir checks on one truncated module: commutation with the
/// generator actions, the shift identities against e_i/f_i, the scalar
/// action on the whole module, and the weight-factor recurrence.  Returns
/// failures.
pub fn casimir_residuals(ctx: &Pairing, m: &WeightModule, budget: usize) -> Result<Vec<String>> {
    let alg = ctx.algebra();
    if budget + 2 > m.depth {
        return Err(UrsError::Domain(format!(
            "budget {budget} requires module depth at least {}",
            budget + 2
        )));
    }
    let omega = casimir_element(ctx, m.depth)?;
    let mut failures = Vec::new();

    // the half-sum of positive roots pairs to 1 with every simple root,
    // and the recurrence g(lambda + alpha_i) = (r/s)^{<alpha_i, lambda +
    // alpha_i>} g(lambda)
    let two_rho = Weight::two_rho(alg.n);
    for i in 1..alg.n {
        if two_rho.dot(&Weight::alpha_basis(alg.n, i)) != 2 {
            failures.push(format!("half-sum normalization fails at i={i}"));
        }
    }
    let probe = [m.lambda.clone(), Weight::zero(alg.n), two_rho.clone()];
    for lam in &probe {
        for i in 1..alg.n {
            let ai = Weight::alpha_basis(alg.n, i);
            let lhs = g_weight(alg, &lam.add(&ai))?;
            let ratio = alg
                .r()
                .div(alg.s())
                .unwrap()
                .pow(ai.dot(&lam.add(&ai)))?;
            let rhs = ratio.mul(&g_weight(alg, lam)?);
            if lhs != rhs {
                failures.push(format!("weight factor recurrence fails at i={i}"));
            }
        }
    }

    let glam = g_weight(alg, &m.lambda)?;
    for idx in 0..m.dim() {
        if m.depth_of(idx) > budget {
            continue;
        }
        let v = m.basis_vector(idx);
        let lam = &m.basis[idx].weight;

        // Omega Xi acts as the scalar attached to the highest weight
        let cv = casimir_apply(ctx, m, &omega, &v)?;
        if cv != modvec_scale(&v, &glam) {
            failures.push(format!("scalar action fails on basis vector {idx}"));
        }

        // shift identities against e_i and f_i
        for i in 1..alg.n {
            let ai = Weight::alpha_basis(alg.n, i);
            let ei = alg.gen(Gen::E(i), 1)?;
            let fi = alg.gen(Gen::F(i), 1)?;
            let lhs = m.act_element(&omega, &m.act_element(&ei, &v)?)?;
            let scale = alg
                .r()
                .div(alg.s())
                .unwrap()
                .pow(-ai.dot(&lam.add(&ai)))?;
            let rhs = modvec_scale(&m.act_element(&ei, &m.act_element(&omega, &v)?)?, &scale);
            if lhs != rhs {
                failures.push(format!("raising shift fails at i={i}, vector {idx}"));
            }
            let lhs = m.act_element(&omega, &m.act_element(&fi, &v)?)?;
            let scale = alg.r().div(alg.s()).unwrap().pow(ai.dot(lam))?;
            let rhs = modvec_scale(&m.act_element(&fi, &m.act_element(&omega, &v)?)?, &scale);
            if lhs != rhs {
                failures.push(format!("lowering shift fails at i={i}, vector {idx}"));
            }
        }

        // commutation of Omega Xi with every generator
        let mut gens: Vec<(Gen, i64)> = alg.all_gens().into_iter().map(|g| (g, 1)).collect();
        for g in alg.torus_gens() {
            gens.push((g, -1));
        }
        for (g, exp) in gens {
            let gv = m.act_gen(g, exp, &v)?;
            let lhs = casimir_apply(ctx, m, &omega, &gv)?;
            let rhs = m.act_gen(g, exp, &casimir_apply(ctx, m, &omega, &v)?)?;
            if lhs != rhs {
                failures.push(format!("commutation fails for {g}^{exp} on vector {idx}"));
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Kind;
    use crate::cat_o::WeightModule;
    use std::sync::Arc;

    fn ctx(n: usize, kind: Kind) -> Pairing {
        Pairing::new(Arc::new(Algebra::generic(n, kind).unwrap()), 8)
    }

    #[test]
    fn theta_at_zero_and_simple_root() {
        let p = ctx(2, Kind::Sl);
        let alg = p.algebra();
        let t0 = theta(&p, &[0]).unwrap();
        assert_eq!(t0, TensorElement::one(alg, 2));
        // Theta_{alpha} = (s - r) f (x) e
        let t1 = theta(&p, &[1]).unwrap();
        let f = alg.gen(Gen::F(1), 1).unwrap();
        let e = alg.gen(Gen::E(1), 1).unwrap();
        let expect = TensorElement::from_products(
            alg,
            2,
            &[(Scalar::s().sub(&Scalar::r()), vec![f, e])],
        )
        .unwrap();
        assert_eq!(t1, expect);
        // negative contents vanish
        assert!(theta(&p, &[-1]).unwrap().is_zero());
    }

    #[test]
    fn r_on_highest_pair_is_f_form_swap() {
        let p = ctx(2, Kind::Sl);
        let lam = Weight::new(vec![1, 0]);
        let mu = Weight::new(vec![2, 0]);
        let m = WeightModule::verma(&p, &lam, 3).unwrap();
        let mp = WeightModule::verma(&p, &mu, 3).unwrap();
        let st = TensorState::basis(vec![&mp, &m], vec![0, 0]);
        let out = st.apply_r(&p, 0).unwrap();
        // only the swap survives on a highest-weight pair
        assert_eq!(out.amps.len(), 1);
        let c = out.amps.get(&vec![0usize, 0]).unwrap();
        assert_eq!(*c, f_form(p.algebra(), &lam, &mu));
    }

    #[test]
    fn build_r_is_triangular_and_intertwines() {
        let p = ctx(2, Kind::Sl);
        let lam = Weight::new(vec![1, 0]);
        let mu = Weight::new(vec![2, 0]);
        let m = WeightModule::verma(&p, &lam, 4).unwrap();
        let mp = WeightModule::verma(&p, &mu, 4).unwrap();
        let map = build_r(&p, &mp, &m, 2).unwrap();
        assert!(triangularity_residuals(&map, &mp, &m).is_empty());
        assert!(intertwining_residuals(&p, &mp, &m, 2).unwrap().is_empty());
    }

    #[test]
    fn qybe_small_sl2() {
        let p = ctx(2, Kind::Sl);
        let lam = Weight::new(vec![1, 0]);
        let m1 = WeightModule::verma(&p, &lam, 3).unwrap();
        let m2 = WeightModule::verma(&p, &Weight::new(vec![2, 0]), 3).unwrap();
        let m3 = WeightModule::verma(&p, &lam, 3).unwrap();
        assert!(qybe_residuals(&p, &m1, &m2, &m3, 1).unwrap().is_empty());
    }

    #[test]
    fn hexagons_small_sl2() {
        let p = ctx(2, Kind::Sl);
        let lam = Weight::new(vec![1, 0]);
        let m1 = WeightModule::verma(&p, &lam, 3).unwrap();
        let m2 = WeightModule::verma(&p, &lam, 3).unwrap();
        let m3 = WeightModule::verma(&p, &lam, 3).unwrap();
        assert!(hexagon_residuals(&p, &m1, &m2, &m3, 1).unwrap().is_empty());
    }

    #[test]
    fn theta_identities_sl2() {
        let p = ctx(2, Kind::Sl);
        let zetas: Vec<Vec<i64>> = vec![vec![1], vec![2]];
        assert!(theta_identities_residuals(&p, &zetas).unwrap().is_empty());
    }

    #[test]
    fn casimir_truncated_shape_sl2() {
        // height-1 truncation: 1 - (s-r) f (w')^{-1} e
        let p = ctx(2, Kind::Sl);
        let alg = p.algebra();
        let om = casimir_element(&p, 1).unwrap();
        let smr = Scalar::s().sub(&Scalar::r());
        let fwpe = alg
            .mul(
                &alg.gen(Gen::F(1), 1).unwrap(),
                &alg.mul(
                    &alg.omega_element(1, true, -1),
                    &alg.gen(Gen::E(1), 1).unwrap(),
                )
                .unwrap(),
            )
            .unwrap();
        let expect = alg.one().sub(&fwpe.scale(&smr)).unwrap();
        assert_eq!(om, expect);
    }

    #[test]
    fn casimir_checks_pass_sl2() {
        let p = ctx(2, Kind::Sl);
        let m = WeightModule::verma(&p, &Weight::new(vec![1, 0]), 4).unwrap();
        let fails = casimir_residuals(&p, &m, 2).unwrap();
        assert!(fails.is_empty(), "{fails:?}");
    }

    #[test]
    fn g_weight_values() {
        let alg = Algebra::generic(2, Kind::Gl).unwrap();
        assert!(g_weight(&alg, &Weight::zero(2)).unwrap().is_one());
        // <eps_1 + 2 rho, eps_1> = 1 + 1 = 2, so g = r/s
        let e1 = Weight::eps_basis(2, 1);
        assert_eq!(
            g_weight(&alg, &e1).unwrap(),
            alg.r().div(alg.s()).unwrap()
        );
    }

    #[test]
    fn omega_fixes_highest_vector() {
        let p = ctx(2, Kind::Sl);
        let m = WeightModule::verma(&p, &Weight::new(vec![3, 0]), 3).unwrap();
        let om = casimir_element(&p, 3).unwrap();
        let v = m.highest_vector();
        assert_eq!(m.act_element(&om, &v).unwrap(), v);
    }

    #[test]
    fn triple_lemmas_sl2() {
        let p = ctx(2, Kind::Sl);
        let lam = Weight::new(vec![1, 0]);
        let m1 = WeightModule::verma(&p, &lam, 4).unwrap();
        let m2 = WeightModule::verma(&p, &lam, 4).unwrap();
        let m3 = WeightModule::verma(&p, &lam, 4).unwrap();
        let fails = triple_operator_residuals(&p, &m1, &m2, &m3, 1, 2).unwrap();
        assert!(fails.is_empty(), "{fails:?}");
    }

    #[test]
    fn graded_coproduct_expansions_sl2() {
        let p = ctx(2, Kind::Sl);
        assert!(graded_coproduct_residuals(&p, 2).unwrap().is_empty());
    }
}
