//! Presentations of the two-parameter quantum groups U_{r,s}(gl_n) and
//! U_{r,s}(sl_n) and the straightening (normal form) engine.
//!
//! Elements are kept in the triangular normal form
//!
//! ```text
//! coeff * (F-word) * (torus monomial) * (E-word)
//! ```
//!
//! where the torus is a free abelian group recorded as an exponent vector:
//! a_1..a_n, b_1..b_n for gl, and omega_1..omega_{n-1}, omega'_1..
//! omega'_{n-1} for sl.  Straightening moves torus generators past e/f
//! letters with the defining commutation scalars and resolves e_i f_j
//! crossings with the mixed commutator; E- and F-words themselves stay raw
//! (the cubic Serre-type relations are not oriented rewrite rules; they are
//! handled downstream through the radical of the Hopf pairing).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num::rational::BigRational;

use crate::error::{Result, UrsError};
use crate::scalar::Scalar;
use crate::weight::{eps_dot_alpha, Content, Weight};

static NEXT_ALG_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Gl,
    Sl,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Gl => write!(f, "gl"),
            Kind::Sl => write!(f, "sl"),
        }
    }
}

/// A generator of the presented algebra (1-based indices).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    E(usize),
    F(usize),
    A(usize),
    B(usize),
    W(usize),
    Wp(usize),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::E(i) => write!(f, "e{}", i),
            Gen::F(i) => write!(f, "f{}", i),
            Gen::A(i) => write!(f, "a{}", i),
            Gen::B(i) => write!(f, "b{}", i),
            Gen::W(i) => write!(f, "w{}", i),
            Gen::Wp(i) => write!(f, "wp{}", i),
        }
    }
}

/// Key of a normal-form term: F-word, torus exponents, E-word.
///
/// The canonical total order is F-word length, then lex; torus exponents
/// lex; E-word length, then lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermKey {
    pub f: Vec<u8>,
    pub t: Vec<i32>,
    pub e: Vec<u8>,
}

impl TermKey {
    pub fn unit(torus_dim: usize) -> Self {
        TermKey {
            f: Vec::new(),
            t: vec![0; torus_dim],
            e: Vec::new(),
        }
    }

    pub fn is_torus_only(&self) -> bool {
        self.f.is_empty() && self.e.is_empty()
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.f.len(), &self.f, &self.t, self.e.len(), &self.e).cmp(&(
            other.f.len(),
            &other.f,
            &other.t,
            other.e.len(),
            &other.e,
        ))
    }
}

/// Finite linear combination of normal-form terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub(crate) alg: u64,
    pub(crate) terms: BTreeMap<TermKey, Scalar>,
}

impl Element {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn single(alg: u64, key: TermKey, coeff: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Element { alg, terms }
    }

    fn insert_add(&mut self, key: TermKey, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
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

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.alg != other.alg {
            return Err(UrsError::MixedHandles);
        }
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert_add(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        Element {
            alg: self.alg,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        if c.is_zero() {
            return Element {
                alg: self.alg,
                terms: BTreeMap::new(),
            };
        }
        Element {
            alg: self.alg,
            terms: self
                .terms
                .iter()
                .map(|(k, x)| (k.clone(), x.mul(c)))
                .collect(),
        }
    }

    /// The coefficient of the unit term, if present.
    pub fn unit_coeff(&self, torus_dim: usize) -> Scalar {
        self.terms
            .get(&TermKey::unit(torus_dim))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            if !k.f.is_empty() {
                write!(f, " * f[")?;
                for (i, x) in k.f.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", x)?;
                }
                write!(f, "]")?;
            }
            if k.t.iter().any(|&x| x != 0) {
                write!(f, " * t[")?;
                for (i, x) in k.t.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", x)?;
                }
                write!(f, "]")?;
            }
            if !k.e.is_empty() {
                write!(f, " * e[")?;
                for (i, x) in k.e.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", x)?;
                }
                write!(f, "]")?;
            }
        }
        Ok(())
    }
}

/// A defining relation, stored as a linear combination of words that must
/// vanish.  `radical` marks the cubic/commuting E-F word relations that are
/// irreducible under straightening and instead must lie in the radical of
/// the Hopf pairing.
#[derive(Clone, Debug)]
pub struct Relation {
    pub name: String,
    pub combo: Vec<(Scalar, Vec<(Gen, i64)>)>,
    pub radical: bool,
}

/// Deformation parameters of an algebra instance.  The generic instance has
/// r = u^2, s = v^2; specialized instances carry constants r = u0^2,
/// s = v0^2 so that the half ratio u0/v0 stays available.
#[derive(Clone, Debug)]
pub struct Params {
    pub r: Scalar,
    pub s: Scalar,
    /// Square root of r/s, when one exists in the field.
    pub half_ratio: Option<Scalar>,
}

impl Params {
    pub fn generic() -> Self {
        Params {
            r: Scalar::r(),
            s: Scalar::s(),
            half_ratio: Some(Scalar::half_power(1)),
        }
    }

    /// Arbitrary rational parameters (no square root of r/s available).
    pub fn rational(r: BigRational, s: BigRational) -> Result<Self> {
        use num::Zero;
        if r.is_zero() || s.is_zero() {
            return Err(UrsError::Specialize("r and s must be nonzero".into()));
        }
        if r == s {
            return Err(UrsError::Specialize("parameters must satisfy r != s".into()));
        }
        Ok(Params {
            r: Scalar::from_rat(r),
            s: Scalar::from_rat(s),
            half_ratio: None,
        })
    }

    pub fn specialized(u0: &BigRational, v0: &BigRational) -> Result<Self> {
        use num::Zero;
        if u0.is_zero() || v0.is_zero() {
            return Err(UrsError::Specialize("u0 and v0 must be nonzero".into()));
        }
        let r = Scalar::from_rat(u0 * u0);
        let s = Scalar::from_rat(v0 * v0);
        if r == s {
            return Err(UrsError::Specialize(
                "u0^2 = v0^2 violates the requirement r != s".into(),
            ));
        }
        Ok(Params {
            r,
            s,
            half_ratio: Some(Scalar::from_rat(u0 / v0)),
        })
    }
}

/// Handle for a presented algebra: root data, generators, parameters.
#[derive(Clone, Debug)]
pub struct Algebra {
    id: u64,
    pub n: usize,
    pub kind: Kind,
    pub params: Params,
    torus_dim: usize,
    /// Per torus coordinate t and column j (1..n): exponent of r and of s in
    /// the commutation  T e_j = r^x s^y e_j T.
    conj_r: Vec<Vec<i64>>,
    conj_s: Vec<Vec<i64>>,
}

impl Algebra {
    pub fn new(n: usize, kind: Kind, params: Params) -> Result<Self> {
        if n < 2 {
            return Err(UrsError::RankTooSmall(n));
        }
        let torus_dim = match kind {
            Kind::Gl => 2 * n,
            Kind::Sl => 2 * (n - 1),
        };
        let mut conj_r = Vec::with_capacity(torus_dim);
        let mut conj_s = Vec::with_capacity(torus_dim);
        // rho/sigma vectors: T e_j = r^<rho,alpha_j> s^<sigma,alpha_j> e_j T
        let dot_row = |vec_idx: usize| -> Vec<i64> {
            (1..=n).map(|j| eps_dot_alpha(n, vec_idx, j)).collect()
        };
        let zero_row = vec![0i64; n];
        match kind {
            Kind::Gl => {
                for i in 1..=n {
                    conj_r.push(dot_row(i));
                    conj_s.push(zero_row.clone());
                }
                for i in 1..=n {
                    conj_r.push(zero_row.clone());
                    conj_s.push(dot_row(i));
                }
            }
            Kind::Sl => {
                for i in 1..n {
                    conj_r.push(dot_row(i));
                    conj_s.push(dot_row(i + 1));
                }
                for i in 1..n {
                    conj_r.push(dot_row(i + 1));
                    conj_s.push(dot_row(i));
                }
            }
        }
        Ok(Algebra {
            id: NEXT_ALG_ID.fetch_add(1, AtomicOrdering::Relaxed),
            n,
            kind,
            params,
            torus_dim,
            conj_r,
            conj_s,
        })
    }

    pub fn generic(n: usize, kind: Kind) -> Result<Self> {
        Algebra::new(n, kind, Params::generic())
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn torus_dim(&self) -> usize {
        self.torus_dim
    }

    pub fn r(&self) -> &Scalar {
        &self.params.r
    }

    pub fn s(&self) -> &Scalar {
        &self.params.s
    }

    /// r - s, invertible by the standing assumption r != s.
    pub fn r_minus_s(&self) -> Scalar {
        self.params.r.sub(&self.params.s)
    }

    pub fn check_same(&self, x: &Element) -> Result<()> {
        if x.alg != self.id {
            return Err(UrsError::MixedHandles);
        }
        Ok(())
    }

    pub fn zero(&self) -> Element {
        Element {
            alg: self.id,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Element {
        Element::single(self.id, TermKey::unit(self.torus_dim), Scalar::one())
    }

    /// Index of a torus generator inside the exponent vector.
    pub fn torus_index(&self, g: Gen) -> Result<usize> {
        let n = self.n;
        match (self.kind, g) {
            (Kind::Gl, Gen::A(i)) if (1..=n).contains(&i) => Ok(i - 1),
            (Kind::Gl, Gen::B(i)) if (1..=n).contains(&i) => Ok(n + i - 1),
            (Kind::Sl, Gen::W(i)) if (1..n).contains(&i) => Ok(i - 1),
            (Kind::Sl, Gen::Wp(i)) if (1..n).contains(&i) => Ok(n - 1 + i - 1),
            _ => Err(UrsError::BadGenerator(g.to_string())),
        }
    }

    /// Exponent vector of omega_i (or omega'_i) in this algebra's torus.
    pub fn omega_exps(&self, i: usize, primed: bool) -> Vec<i32> {
        let mut t = vec![0i32; self.torus_dim];
        match self.kind {
            Kind::Gl => {
                // omega_i = a_i b_{i+1},  omega'_i = a_{i+1} b_i
                if primed {
                    t[i] = 1; // a_{i+1}
                    t[self.n + i - 1] = 1; // b_i
                } else {
                    t[i - 1] = 1; // a_i
                    t[self.n + i] = 1; // b_{i+1}
                }
            }
            Kind::Sl => {
                if primed {
                    t[self.n - 1 + i - 1] = 1;
                } else {
                    t[i - 1] = 1;
                }
            }
        }
        t
    }

    pub fn omega_element(&self, i: usize, primed: bool, exp: i32) -> Element {
        let t: Vec<i32> = self.omega_exps(i, primed).iter().map(|x| x * exp).collect();
        Element::single(
            self.id,
            TermKey {
                f: Vec::new(),
                t,
                e: Vec::new(),
            },
            Scalar::one(),
        )
    }

    /// The group-like omega_lambda (or primed) for a weight lambda written in
    /// alpha-coordinates including alpha_n.
    pub fn omega_lambda(&self, lambda: &Weight, primed: bool) -> Result<Element> {
        let alpha = lambda.alpha();
        let mut t = vec![0i32; self.torus_dim];
        match self.kind {
            Kind::Gl => {
                for (k, &c) in alpha.iter().enumerate().take(self.n - 1) {
                    let om = self.omega_exps(k + 1, primed);
                    for (slot, x) in t.iter_mut().zip(&om) {
                        *slot += x * c as i32;
                    }
                }
                let last = alpha[self.n - 1] as i32;
                if primed {
                    t[2 * self.n - 1] += last; // b_n
                } else {
                    t[self.n - 1] += last; // a_n
                }
            }
            Kind::Sl => {
                let zeta = lambda.as_root()?;
                for (k, &c) in zeta.iter().enumerate() {
                    let om = self.omega_exps(k + 1, primed);
                    for (slot, x) in t.iter_mut().zip(&om) {
                        *slot += x * c as i32;
                    }
                }
            }
        }
        Ok(Element::single(
            self.id,
            TermKey {
                f: Vec::new(),
                t,
                e: Vec::new(),
            },
            Scalar::one(),
        ))
    }

    /// Generator (or generator power) as a normal-form element.
    pub fn gen(&self, g: Gen, k: i64) -> Result<Element> {
        let n = self.n;
        match g {
            Gen::E(i) | Gen::F(i) => {
                if !(1..n).contains(&i) {
                    return Err(UrsError::BadGenerator(g.to_string()));
                }
                if k < 0 {
                    return Err(UrsError::BadGenerator(format!(
                        "{} has no inverse",
                        g
                    )));
                }
                let word = vec![i as u8; k as usize];
                let key = match g {
                    Gen::E(_) => TermKey {
                        f: Vec::new(),
                        t: vec![0; self.torus_dim],
                        e: word,
                    },
                    _ => TermKey {
                        f: word,
                        t: vec![0; self.torus_dim],
                        e: Vec::new(),
                    },
                };
                Ok(Element::single(self.id, key, Scalar::one()))
            }
            _ => {
                let idx = self.torus_index(g)?;
                let mut t = vec![0i32; self.torus_dim];
                t[idx] = k as i32;
                Ok(Element::single(
                    self.id,
                    TermKey {
                        f: Vec::new(),
                        t,
                        e: Vec::new(),
                    },
                    Scalar::one(),
                ))
            }
        }
    }

    /// Scalar c such that (torus monomial t) e_j = c * e_j * (torus monomial).
    pub fn torus_past_e(&self, t: &[i32], j: usize) -> Scalar {
        let mut xr = 0i64;
        let mut xs = 0i64;
        for (idx, &exp) in t.iter().enumerate() {
            if exp != 0 {
                xr += exp as i64 * self.conj_r[idx][j - 1];
                xs += exp as i64 * self.conj_s[idx][j - 1];
            }
        }
        self.rs_power(xr, xs)
    }

    /// Scalar c such that (torus monomial t) f_j = c * f_j * (torus monomial).
    pub fn torus_past_f(&self, t: &[i32], j: usize) -> Scalar {
        let mut xr = 0i64;
        let mut xs = 0i64;
        for (idx, &exp) in t.iter().enumerate() {
            if exp != 0 {
                xr -= exp as i64 * self.conj_r[idx][j - 1];
                xs -= exp as i64 * self.conj_s[idx][j - 1];
            }
        }
        self.rs_power(xr, xs)
    }

    pub fn rs_power(&self, xr: i64, xs: i64) -> Scalar {
        self.params
            .r
            .pow(xr)
            .unwrap()
            .mul(&self.params.s.pow(xs).unwrap())
    }

    fn torus_past_eword(&self, t: &[i32], eword: &[u8]) -> Scalar {
        let mut acc = Scalar::one();
        for &j in eword {
            acc = acc.mul(&self.torus_past_e(t, j as usize));
        }
        acc
    }

    /// Multiply a single term by a torus monomial on the right.
    fn term_mul_torus(&self, key: &TermKey, coeff: &Scalar, t2: &[i32]) -> (TermKey, Scalar) {
        // F t E t2 = (scalar) F t t2 E  with scalar from moving t2 left past E
        let adj = self.torus_past_eword(t2, &key.e).inv().unwrap();
        let mut t = key.t.clone();
        for (slot, x) in t.iter_mut().zip(t2) {
            *slot += x;
        }
        (
            TermKey {
                f: key.f.clone(),
                t,
                e: key.e.clone(),
            },
            coeff.mul(&adj),
        )
    }

    /// Multiply a single term by f_j on the right (straightening).
    fn term_mul_f(&self, key: &TermKey, coeff: &Scalar, j: usize) -> Element {
        if key.e.is_empty() {
            // F t f_j = (scalar) F f_j t with the direct commutation scalar
            let adj = self.torus_past_f(&key.t, j);
            let mut f = key.f.clone();
            f.push(j as u8);
            return Element::single(
                self.id,
                TermKey {
                    f,
                    t: key.t.clone(),
                    e: Vec::new(),
                },
                coeff.mul(&adj),
            );
        }
        // peel the last E letter:  (head e_k) f_j = head f_j e_k
        //                                         + delta_{kj} head (w_k - w'_k)/(r-s)
        let mut head = key.clone();
        let k = head.e.pop().unwrap() as usize;
        let mut out = self.zero();
        let rec = self.term_mul_f(&head, coeff, j);
        for (rk, rc) in &rec.terms {
            let mut nk = rk.clone();
            nk.e.push(k as u8);
            out.insert_add(nk, rc.clone());
        }
        if k == j {
            let c = coeff.div(&self.r_minus_s()).unwrap();
            let (k1, c1) = self.term_mul_torus(&head, &c, &self.omega_exps(k, false));
            out.insert_add(k1, c1);
            let (k2, c2) = self.term_mul_torus(&head, &c.neg(), &self.omega_exps(k, true));
            out.insert_add(k2, c2);
        }
        out
    }

    /// Product of two elements (the normal form of the concatenation).
    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check_same(x)?;
        self.check_same(y)?;
        let mut out = self.zero();
        for (k1, c1) in &x.terms {
            for (k2, c2) in &y.terms {
                let mut acc =
                    Element::single(self.id, k1.clone(), c1.mul(c2));
                for &j in &k2.f {
                    let mut next = self.zero();
                    for (ak, ac) in &acc.terms {
                        let part = self.term_mul_f(ak, ac, j as usize);
                        for (pk, pc) in part.terms {
                            next.insert_add(pk, pc);
                        }
                    }
                    acc = next;
                }
                if k2.t.iter().any(|&v| v != 0) {
                    let mut next = self.zero();
                    for (ak, ac) in &acc.terms {
                        let (nk, nc) = self.term_mul_torus(ak, ac, &k2.t);
                        next.insert_add(nk, nc);
                    }
                    acc = next;
                }
                if !k2.e.is_empty() {
                    let mut next = self.zero();
                    for (ak, ac) in acc.terms {
                        let mut nk = ak;
                        nk.e.extend_from_slice(&k2.e);
                        next.insert_add(nk, ac);
                    }
                    acc = next;
                }
                for (ak, ac) in acc.terms {
                    out.insert_add(ak, ac);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_many(&self, xs: &[&Element]) -> Result<Element> {
        let mut acc = self.one();
        for x in xs {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// Normal form of a word in the generators.
    pub fn word(&self, w: &[(Gen, i64)]) -> Result<Element> {
        let mut acc = self.one();
        for &(g, k) in w {
            acc = self.mul(&acc, &self.gen(g, k)?)?;
        }
        Ok(acc)
    }

    /// Normal form of a linear combination of words.
    pub fn combo(&self, c: &[(Scalar, Vec<(Gen, i64)>)]) -> Result<Element> {
        let mut acc = self.zero();
        for (coeff, w) in c {
            acc = acc.add(&self.word(w)?.scale(coeff))?;
        }
        Ok(acc)
    }

    /// E-side generators present in this algebra (e_1..e_{n-1}).
    pub fn e_indices(&self) -> impl Iterator<Item = usize> {
        1..self.n
    }

    /// All torus generators of this algebra.
    pub fn torus_gens(&self) -> Vec<Gen> {
        match self.kind {
            Kind::Gl => (1..=self.n)
                .map(Gen::A)
                .chain((1..=self.n).map(Gen::B))
                .collect(),
            Kind::Sl => (1..self.n)
                .map(Gen::W)
                .chain((1..self.n).map(Gen::Wp))
                .collect(),
        }
    }

    /// All generators (e_i, f_i, torus with +1 exponent).
    pub fn all_gens(&self) -> Vec<Gen> {
        let mut out: Vec<Gen> = Vec::new();
        for i in self.e_indices() {
            out.push(Gen::E(i));
        }
        for i in self.e_indices() {
            out.push(Gen::F(i));
        }
        out.extend(self.torus_gens());
        out
    }

    /// The value of the weight character on one torus generator.
    pub fn character(&self, lambda: &Weight, g: Gen) -> Result<Scalar> {
        let n = self.n;
        let ed = |i: usize| lambda.eps_coord(i);
        Ok(match (self.kind, g) {
            (Kind::Gl, Gen::A(i)) if i <= n => self.params.r.pow(ed(i)).unwrap(),
            (Kind::Gl, Gen::B(i)) if i <= n => self.params.s.pow(ed(i)).unwrap(),
            (Kind::Sl, Gen::W(i)) | (Kind::Gl, Gen::W(i)) if i < n => {
                self.rs_power(ed(i), ed(i + 1))
            }
            (Kind::Sl, Gen::Wp(i)) | (Kind::Gl, Gen::Wp(i)) if i < n => {
                self.rs_power(ed(i + 1), ed(i))
            }
            _ => return Err(UrsError::BadGenerator(g.to_string())),
        })
    }

    /// The value of the weight character on a torus exponent vector.
    pub fn character_torus(&self, lambda: &Weight, t: &[i32]) -> Scalar {
        let mut xr = 0i64;
        let mut xs = 0i64;
        for (idx, &exp) in t.iter().enumerate() {
            if exp == 0 {
                continue;
            }
            let e = exp as i64;
            match self.kind {
                Kind::Gl => {
                    if idx < self.n {
                        xr += e * lambda.eps_coord(idx + 1);
                    } else {
                        xs += e * lambda.eps_coord(idx - self.n + 1);
                    }
                }
                Kind::Sl => {
                    if idx < self.n - 1 {
                        xr += e * lambda.eps_coord(idx + 1);
                        xs += e * lambda.eps_coord(idx + 2);
                    } else {
                        let i = idx - (self.n - 1) + 1;
                        xr += e * lambda.eps_coord(i + 1);
                        xs += e * lambda.eps_coord(i);
                    }
                }
            }
        }
        self.rs_power(xr, xs)
    }

    /// Content (root-lattice coordinates) of an E- or F-word.
    pub fn word_content(&self, word: &[u8]) -> Content {
        let mut c = vec![0i64; self.n - 1];
        for &j in word {
            c[j as usize - 1] += 1;
        }
        c
    }

    /// All words of a given content, in lexicographic order.
    pub fn words_of_content(&self, zeta: &[i64]) -> Vec<Vec<u8>> {
        fn rec(counts: &mut Vec<i64>, cur: &mut Vec<u8>, len: usize, out: &mut Vec<Vec<u8>>) {
            if cur.len() == len {
                out.push(cur.clone());
                return;
            }
            for i in 0..counts.len() {
                if counts[i] > 0 {
                    counts[i] -= 1;
                    cur.push(i as u8 + 1);
                    rec(counts, cur, len, out);
                    cur.pop();
                    counts[i] += 1;
                }
            }
        }
        let len: i64 = zeta.iter().sum();
        let mut out = Vec::new();
        rec(
            &mut zeta.to_vec(),
            &mut Vec::new(),
            len as usize,
            &mut out,
        );
        out
    }

    // -----------------------------------------------------------------
    // Defining relations
    // -----------------------------------------------------------------

    /// Every defining relation of the presentation, moved to one side.
    pub fn relations(&self) -> Vec<Relation> {
        let n = self.n;
        let one = Scalar::one();
        let r = self.params.r.clone();
        let s = self.params.s.clone();
        let mut rels: Vec<Relation> = Vec::new();
        let tg = self.torus_gens();

        // torus commutativity and invertibility
        for (ai, &g1) in tg.iter().enumerate() {
            rels.push(Relation {
                name: format!("torus-inverse {}", g1),
                combo: vec![
                    (one.clone(), vec![(g1, 1), (g1, -1)]),
                    (one.neg(), vec![]),
                ],
                radical: false,
            });
            for &g2 in tg.iter().skip(ai + 1) {
                rels.push(Relation {
                    name: format!("torus-commute {} {}", g1, g2),
                    combo: vec![
                        (one.clone(), vec![(g1, 1), (g2, 1)]),
                        (one.neg(), vec![(g2, 1), (g1, 1)]),
                    ],
                    radical: false,
                });
            }
        }

        // torus past e_j / f_j
        for &g in &tg {
            for j in 1..n {
                let (xr, xs) = self.torus_ef_exponents(g, j);
                rels.push(Relation {
                    name: format!("{} e{} commutation", g, j),
                    combo: vec![
                        (one.clone(), vec![(g, 1), (Gen::E(j), 1)]),
                        (self.rs_power(xr, xs).neg(), vec![(Gen::E(j), 1), (g, 1)]),
                    ],
                    radical: false,
                });
                rels.push(Relation {
                    name: format!("{} f{} commutation", g, j),
                    combo: vec![
                        (one.clone(), vec![(g, 1), (Gen::F(j), 1)]),
                        (self.rs_power(-xr, -xs).neg(), vec![(Gen::F(j), 1), (g, 1)]),
                    ],
                    radical: false,
                });
            }
        }

        // mixed commutator [e_i, f_j]
        for i in 1..n {
            for j in 1..n {
                let mut combo = vec![
                    (one.clone(), vec![(Gen::E(i), 1), (Gen::F(j), 1)]),
                    (one.neg(), vec![(Gen::F(j), 1), (Gen::E(i), 1)]),
                ];
                if i == j {
                    let c = Scalar::one().div(&self.r_minus_s()).unwrap();
                    match self.kind {
                        Kind::Gl => {
                            combo.push((
                                c.neg(),
                                vec![(Gen::A(i), 1), (Gen::B(i + 1), 1)],
                            ));
                            combo.push((c, vec![(Gen::A(i + 1), 1), (Gen::B(i), 1)]));
                        }
                        Kind::Sl => {
                            combo.push((c.neg(), vec![(Gen::W(i), 1)]));
                            combo.push((c, vec![(Gen::Wp(i), 1)]));
                        }
                    }
                }
                rels.push(Relation {
                    name: format!("ef-commutator e{} f{}", i, j),
                    combo,
                    radical: false,
                });
            }
        }

        // distant commutations (radical-checked: raw words stay distinct)
        for i in 1..n {
            for j in 1..n {
                if j > i + 1 {
                    rels.push(Relation {
                        name: format!("distant-commute e{} e{}", i, j),
                        combo: vec![
                            (one.clone(), vec![(Gen::E(i), 1), (Gen::E(j), 1)]),
                            (one.neg(), vec![(Gen::E(j), 1), (Gen::E(i), 1)]),
                        ],
                        radical: true,
                    });
                    rels.push(Relation {
                        name: format!("distant-commute f{} f{}", i, j),
                        combo: vec![
                            (one.clone(), vec![(Gen::F(i), 1), (Gen::F(j), 1)]),
                            (one.neg(), vec![(Gen::F(j), 1), (Gen::F(i), 1)]),
                        ],
                        radical: true,
                    });
                }
            }
        }

        // cubic Serre-type relations
        let rps = r.add(&s);
        let rts = r.mul(&s);
        let rpsi = r.inv().unwrap().add(&s.inv().unwrap());
        let rtsi = rts.inv().unwrap();
        for i in 1..n.saturating_sub(1) {
            let e = Gen::E;
            let f = Gen::F;
            let (lo, hi) = (i, i + 1);
            rels.push(Relation {
                name: format!("serre e{}{} (left)", lo, hi),
                combo: vec![
                    (one.clone(), vec![(e(lo), 1), (e(lo), 1), (e(hi), 1)]),
                    (rps.neg(), vec![(e(lo), 1), (e(hi), 1), (e(lo), 1)]),
                    (rts.clone(), vec![(e(hi), 1), (e(lo), 1), (e(lo), 1)]),
                ],
                radical: true,
            });
            rels.push(Relation {
                name: format!("serre e{}{} (right)", lo, hi),
                combo: vec![
                    (one.clone(), vec![(e(lo), 1), (e(hi), 1), (e(hi), 1)]),
                    (rps.neg(), vec![(e(hi), 1), (e(lo), 1), (e(hi), 1)]),
                    (rts.clone(), vec![(e(hi), 1), (e(hi), 1), (e(lo), 1)]),
                ],
                radical: true,
            });
            rels.push(Relation {
                name: format!("serre f{}{} (left)", lo, hi),
                combo: vec![
                    (one.clone(), vec![(f(lo), 1), (f(lo), 1), (f(hi), 1)]),
                    (rpsi.neg(), vec![(f(lo), 1), (f(hi), 1), (f(lo), 1)]),
                    (rtsi.clone(), vec![(f(hi), 1), (f(lo), 1), (f(lo), 1)]),
                ],
                radical: true,
            });
            rels.push(Relation {
                name: format!("serre f{}{} (right)", lo, hi),
                combo: vec![
                    (one.clone(), vec![(f(lo), 1), (f(hi), 1), (f(hi), 1)]),
                    (rpsi.neg(), vec![(f(hi), 1), (f(lo), 1), (f(hi), 1)]),
                    (rtsi.clone(), vec![(f(hi), 1), (f(hi), 1), (f(lo), 1)]),
                ],
                radical: true,
            });
        }
        rels
    }

    /// r- and s-exponents in  g e_j = r^x s^y e_j g  for a torus generator.
    fn torus_ef_exponents(&self, g: Gen, j: usize) -> (i64, i64) {
        let idx = self.torus_index(g).expect("torus generator");
        (self.conj_r[idx][j - 1], self.conj_s[idx][j - 1])
    }

    /// Normal-form residual of a relation.
    pub fn residual(&self, rel: &Relation) -> Result<Element> {
        self.combo(&rel.combo)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_algebra_validates_rank() {
        assert!(Algebra::generic(1, Kind::Sl).is_err());
        let a = Algebra::generic(2, Kind::Sl).unwrap();
        assert_eq!(a.torus_dim(), 2);
        let b = Algebra::generic(3, Kind::Gl).unwrap();
        assert_eq!(b.torus_dim(), 6);
    }

    #[test]
    fn a1_e1_straightens_with_r() {
        // a_1 e_1 = r e_1 a_1 in gl_3
        let alg = Algebra::generic(3, Kind::Gl).unwrap();
        let lhs = alg.word(&[(Gen::A(1), 1), (Gen::E(1), 1)]).unwrap();
        let rhs = alg
            .word(&[(Gen::E(1), 1), (Gen::A(1), 1)])
            .unwrap()
            .scale(alg.r());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn ef_commutator_in_sl2() {
        // e f - f e = (w - w')/(r - s)
        let alg = Algebra::generic(2, Kind::Sl).unwrap();
        let ef = alg.word(&[(Gen::E(1), 1), (Gen::F(1), 1)]).unwrap();
        let fe = alg.word(&[(Gen::F(1), 1), (Gen::E(1), 1)]).unwrap();
        let lhs = ef.sub(&fe).unwrap();
        let rhs = alg
            .omega_element(1, false, 1)
            .sub(&alg.omega_element(1, true, 1))
            .unwrap()
            .scale(&Scalar::one().div(&alg.r_minus_s()).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn omega_past_e_in_sl2() {
        // w e = r s^{-1} e w
        let alg = Algebra::generic(2, Kind::Sl).unwrap();
        let lhs = alg.word(&[(Gen::W(1), 1), (Gen::E(1), 1)]).unwrap();
        let coeff = alg.r().div(alg.s()).unwrap();
        let rhs = alg
            .word(&[(Gen::E(1), 1), (Gen::W(1), 1)])
            .unwrap()
            .scale(&coeff);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn crossing_e1_f2_commutes() {
        let alg = Algebra::generic(3, Kind::Gl).unwrap();
        let lhs = alg.word(&[(Gen::E(1), 1), (Gen::F(2), 1)]).unwrap();
        let rhs = alg.word(&[(Gen::F(2), 1), (Gen::E(1), 1)]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn torus_inverse_cancels() {
        let alg = Algebra::generic(2, Kind::Gl).unwrap();
        let x = alg.word(&[(Gen::A(1), 1), (Gen::A(1), -1)]).unwrap();
        assert_eq!(x, alg.one());
    }

    #[test]
    fn non_radical_residuals_vanish() {
        for kind in [Kind::Gl, Kind::Sl] {
            let alg = Algebra::generic(3, kind).unwrap();
            for rel in alg.relations() {
                let res = alg.residual(&rel).unwrap();
                if rel.radical {
                    assert!(!res.is_zero(), "{} is straightening-reducible", rel.name);
                } else {
                    assert!(res.is_zero(), "{} residual nonzero: {}", rel.name, res);
                }
            }
        }
    }

    #[test]
    fn serre_residual_has_three_terms() {
        let alg = Algebra::generic(3, Kind::Gl).unwrap();
        let rel = alg
            .relations()
            .into_iter()
            .find(|r| r.name == "serre e12 (left)")
            .unwrap();
        assert_eq!(alg.residual(&rel).unwrap().num_terms(), 3);
    }

    #[test]
    fn omega_lambda_of_eps1_in_gl2() {
        // eps_1 = alpha_1 + alpha_2, so omega_{eps_1} = omega_1 a_2
        let alg = Algebra::generic(2, Kind::Gl).unwrap();
        let el = alg
            .omega_lambda(&Weight::eps_basis(2, 1), false)
            .unwrap();
        let expect = alg
            .mul(
                &alg.omega_element(1, false, 1),
                &alg.gen(Gen::A(2), 1).unwrap(),
            )
            .unwrap();
        assert_eq!(el, expect);
    }

    #[test]
    fn omega_lambda_rejects_non_root_weight_in_sl() {
        let alg = Algebra::generic(2, Kind::Sl).unwrap();
        assert!(alg.omega_lambda(&Weight::eps_basis(2, 1), false).is_err());
        assert!(alg
            .omega_lambda(&Weight::alpha_basis(2, 1), false)
            .is_ok());
    }

    #[test]
    fn mixed_handles_error() {
        let a1 = Algebra::generic(2, Kind::Sl).unwrap();
        let a2 = Algebra::generic(2, Kind::Sl).unwrap();
        let x = a1.gen(Gen::E(1), 1).unwrap();
        let y = a2.gen(Gen::F(1), 1).unwrap();
        assert!(matches!(a1.mul(&x, &y), Err(UrsError::MixedHandles)));
    }

    #[test]
    fn omega_conjugation_matches_closed_form() {
        // w_zeta e_i = r^{-<eps_{i+1},zeta>} s^{-<eps_i,zeta>} e_i w_zeta
        let alg = Algebra::generic(3, Kind::Sl).unwrap();
        for zeta in [[1i64, 0], [0, 1], [2, 1], [-1, 2]] {
            let w = Weight::from_root(3, &zeta);
            let om = alg.omega_lambda(&w, false).unwrap();
            for i in 1..3usize {
                let lhs = alg.mul(&om, &alg.gen(Gen::E(i), 1).unwrap()).unwrap();
                let xr = -Weight::eps_basis(3, i + 1).dot(&w);
                let xs = -Weight::eps_basis(3, i).dot(&w);
                let rhs = alg
                    .mul(&alg.gen(Gen::E(i), 1).unwrap(), &om)
                    .unwrap()
                    .scale(&alg.rs_power(xr, xs));
                assert_eq!(lhs, rhs, "zeta={zeta:?} i={i}");
            }
        }
    }
}
