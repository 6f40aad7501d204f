//! Exact coefficient arithmetic in the fraction field Q(u, v).
//!
//! The deformation parameters are r = u^2 and s = v^2, so half-integer
//! powers of r/s (needed by the Casimir weight function) stay inside the
//! field as powers of u/v.  Every value is kept in a canonical form:
//!
//!   * a `LaurentPoly` stores its terms keyed by the exponent pair (a, b)
//!     of u^a v^b, ordered by graded lexicographic degree (a+b, a); the
//!     canonical (display) order is the descending one;
//!   * a `Scalar` is a reduced fraction num/den where den is an ordinary
//!     polynomial (no negative exponents), integer-primitive, not divisible
//!     by u or v, and with positive leading coefficient.
//!
//! Canonical form makes equality structural and serialization bit-exact.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::UrsError;

/// Arbitrary-precision rational, the base field Q.
pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

/// Exponent pair of a monomial u^a v^b.
///
/// `Ord` is ascending graded-lex on (a+b, a); the canonical term order of
/// the artifact is the descending one, so iteration for display runs in
/// reverse and the leading term is the maximum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mono {
    pub a: i64,
    pub b: i64,
}

impl Mono {
    pub const ONE: Mono = Mono { a: 0, b: 0 };

    pub fn new(a: i64, b: i64) -> Self {
        Mono { a, b }
    }

    fn mul(self, other: Mono) -> Mono {
        Mono {
            a: self.a + other.a,
            b: self.b + other.b,
        }
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.a + self.b, self.a).cmp(&(other.a + other.b, other.a))
    }
}

/// Laurent polynomial in u, v over Q.  No zero coefficients are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Mono, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(Rat::one(), 0, 0)
    }

    pub fn monomial(c: Rat, a: i64, b: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::new(a, b), c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Mono::ONE)
                .map(|c| c.is_one())
                .unwrap_or(false)
    }

    /// Iterate terms in canonical (descending graded-lex) order.
    pub fn iter_canonical(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter().rev()
    }

    fn insert_add(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
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
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.insert_add(m1.mul(*m2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    fn shift(&self, da: i64, db: i64) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.a + da, m.b + db), c.clone()))
                .collect(),
        }
    }

    /// Leading (maximal) term in canonical order.
    fn leading(&self) -> Option<(&Mono, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn eval(&self, u0: &Rat, v0: &Rat) -> Result<Rat, UrsError> {
        if u0.is_zero() || v0.is_zero() {
            return Err(UrsError::Specialize(
                "specialization point must have u0, v0 nonzero".into(),
            ));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rat(u0, m.a) * pow_rat(v0, m.b);
        }
        Ok(acc)
    }

    /// Split into `q * u^a v^b * phat` with q a nonzero rational and `phat`
    /// an integer-coefficient polynomial with zero minimal exponents, content
    /// one and positive leading coefficient.  Undefined on the zero poly.
    fn decompose(&self) -> (Rat, Mono, LaurentPoly) {
        assert!(!self.is_zero());
        let min_a = self.terms.keys().map(|m| m.a).min().unwrap();
        let min_b = self.terms.keys().map(|m| m.b).min().unwrap();
        // common rational factor: gcd of numerators / lcm of denominators
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num::integer::gcd(num_gcd, c.numer().abs());
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut q = Rat::new(num_gcd, den_lcm);
        let lead_sign = self.leading().unwrap().1.is_negative();
        if lead_sign {
            q = -q;
        }
        let phat = LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Mono::new(m.a - min_a, m.b - min_b), c / &q))
                .collect(),
        };
        (q, Mono::new(min_a, min_b), phat)
    }
}

pub fn pow_rat(x: &Rat, k: i64) -> Rat {
    if k == 0 {
        return Rat::one();
    }
    let base = if k > 0 { x.clone() } else { x.recip() };
    let mut acc = Rat::one();
    for _ in 0..k.unsigned_abs() {
        acc *= &base;
    }
    acc
}

// ---------------------------------------------------------------------------
// Integer bivariate gcd (subresultant PRS, recursive in one variable)
// ---------------------------------------------------------------------------

/// Dense univariate polynomial in v with BigInt coefficients.
type UPoly = Vec<BigInt>;

fn utrim(p: &mut UPoly) {
    while p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn uis_zero(p: &UPoly) -> bool {
    p.is_empty()
}

fn udeg(p: &UPoly) -> usize {
    p.len().saturating_sub(1)
}

fn uadd(a: &UPoly, b: &UPoly) -> UPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] += c;
    }
    utrim(&mut out);
    out
}

fn uneg(a: &UPoly) -> UPoly {
    a.iter().map(|c| -c).collect()
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if uis_zero(a) || uis_zero(b) {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    utrim(&mut out);
    out
}

fn umul_int(a: &UPoly, c: &BigInt) -> UPoly {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x * c).collect()
}

fn ucontent(a: &UPoly) -> BigInt {
    let mut g = BigInt::zero();
    for c in a {
        g = num::integer::gcd(g, c.abs());
    }
    g
}

/// Exact division by an integer; panics if not exact (internal invariant).
fn udiv_int(a: &UPoly, c: &BigInt) -> UPoly {
    a.iter()
        .map(|x| {
            let (q, r) = num::integer::div_rem(x.clone(), c.clone());
            debug_assert!(r.is_zero());
            q
        })
        .collect()
}

/// Exact division of polynomials; panics if not exact.
fn udiv_exact(a: &UPoly, b: &UPoly) -> UPoly {
    assert!(!uis_zero(b));
    let mut rem = a.clone();
    if uis_zero(&rem) {
        return Vec::new();
    }
    let mut q = vec![BigInt::zero(); a.len().saturating_sub(b.len()) + 1];
    let lb = b.last().unwrap().clone();
    while !uis_zero(&rem) && udeg(&rem) >= udeg(b) {
        let d = udeg(&rem) - udeg(b);
        let (c, r) = num::integer::div_rem(rem.last().unwrap().clone(), lb.clone());
        assert!(r.is_zero(), "non-exact univariate division");
        q[d] += &c;
        let mut sub = vec![BigInt::zero(); d];
        sub.extend(umul_int(b, &c));
        rem = uadd(&rem, &uneg(&sub));
    }
    assert!(uis_zero(&rem), "non-exact univariate division");
    utrim(&mut q);
    q
}

/// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a = q*b + rem.
fn uprem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut rem = a.clone();
    let db = udeg(b);
    let lb = b.last().unwrap().clone();
    while !uis_zero(&rem) && udeg(&rem) >= db {
        let d = udeg(&rem) - db;
        let lr = rem.last().unwrap().clone();
        let mut sub = vec![BigInt::zero(); d];
        sub.extend(umul_int(b, &lr));
        rem = uadd(&umul_int(&rem, &lb), &uneg(&sub));
    }
    rem
}

fn ugcd(a: &UPoly, b: &UPoly) -> UPoly {
    if uis_zero(a) {
        return normalize_upoly(b.clone());
    }
    if uis_zero(b) {
        return normalize_upoly(a.clone());
    }
    let ca = ucontent(a);
    let cb = ucontent(b);
    let cg = num::integer::gcd(ca.clone(), cb.clone());
    let mut p = udiv_int(a, &ca);
    let mut q = udiv_int(b, &cb);
    if udeg(&p) < udeg(&q) {
        std::mem::swap(&mut p, &mut q);
    }
    // primitive PRS: contents stay controlled at these sizes
    loop {
        let r = uprem(&p, &q);
        if uis_zero(&r) {
            break;
        }
        let cr = ucontent(&r);
        p = q;
        q = udiv_int(&r, &cr);
    }
    if udeg(&q) == 0 {
        return vec![cg];
    }
    let mut g = umul_int(&q, &cg);
    g = udiv_int(&g, &ucontent(&q));
    normalize_upoly(g)
}

fn normalize_upoly(mut p: UPoly) -> UPoly {
    utrim(&mut p);
    if let Some(l) = p.last() {
        if l.is_negative() {
            p = uneg(&p);
        }
    }
    p
}

/// Bivariate polynomial: coefficients of powers of u are polynomials in v.
type BPoly = Vec<UPoly>;

fn btrim(p: &mut BPoly) {
    while p.last().map(uis_zero).unwrap_or(false) {
        p.pop();
    }
}

fn bis_zero(p: &BPoly) -> bool {
    p.is_empty()
}

fn bdeg(p: &BPoly) -> usize {
    p.len().saturating_sub(1)
}

fn bcontent(p: &BPoly) -> UPoly {
    let mut g = Vec::new();
    for c in p {
        g = ugcd(&g, c);
    }
    g
}

fn bdiv_coeff(p: &BPoly, c: &UPoly) -> BPoly {
    p.iter().map(|x| udiv_exact(x, c)).collect()
}

fn bmul_coeff(p: &BPoly, c: &UPoly) -> BPoly {
    let mut out: BPoly = p.iter().map(|x| umul(x, c)).collect();
    btrim(&mut out);
    out
}

fn bprem(a: &BPoly, b: &BPoly) -> BPoly {
    let mut rem = a.clone();
    let db = bdeg(b);
    let lb = b.last().unwrap().clone();
    while !bis_zero(&rem) && bdeg(&rem) >= db {
        let d = bdeg(&rem) - db;
        let lr = rem.last().unwrap().clone();
        let mut sub: BPoly = vec![Vec::new(); d];
        sub.extend(b.iter().map(|x| umul(x, &lr)));
        let scaled: BPoly = rem.iter().map(|x| umul(x, &lb)).collect();
        let mut out = vec![Vec::new(); scaled.len().max(sub.len())];
        for (i, x) in scaled.iter().enumerate() {
            out[i] = uadd(&out[i], x);
        }
        for (i, x) in sub.iter().enumerate() {
            out[i] = uadd(&out[i], &uneg(x));
        }
        btrim(&mut out);
        rem = out;
    }
    rem
}

fn bgcd(a: &BPoly, b: &BPoly) -> BPoly {
    if bis_zero(a) {
        return b.clone();
    }
    if bis_zero(b) {
        return a.clone();
    }
    let ca = bcontent(a);
    let cb = bcontent(b);
    let cg = ugcd(&ca, &cb);
    let mut p = bdiv_coeff(a, &ca);
    let mut q = bdiv_coeff(b, &cb);
    if bdeg(&p) < bdeg(&q) {
        std::mem::swap(&mut p, &mut q);
    }
    loop {
        if bdeg(&q) == 0 {
            // primitive in u and content one in v: gcd of primitive parts is 1
            return vec![cg];
        }
        let r = bprem(&p, &q);
        if bis_zero(&r) {
            break;
        }
        let cr = bcontent(&r);
        p = q;
        q = bdiv_coeff(&r, &cr);
    }
    bmul_coeff(&q, &cg)
}

/// Convert an integer-coefficient LaurentPoly with min exponents zero.
fn to_bpoly(p: &LaurentPoly) -> BPoly {
    let mut out: BPoly = Vec::new();
    for (m, c) in &p.terms {
        let (a, b) = (m.a as usize, m.b as usize);
        if out.len() <= a {
            out.resize(a + 1, Vec::new());
        }
        if out[a].len() <= b {
            out[a].resize(b + 1, BigInt::zero());
        }
        debug_assert!(c.denom().is_one());
        out[a][b] = c.numer().clone();
    }
    for c in &mut out {
        utrim(c);
    }
    btrim(&mut out);
    out
}

fn from_bpoly(p: &BPoly) -> LaurentPoly {
    let mut out = LaurentPoly::zero();
    for (a, coeff) in p.iter().enumerate() {
        for (b, c) in coeff.iter().enumerate() {
            if !c.is_zero() {
                out.insert_add(Mono::new(a as i64, b as i64), Rat::from(c.clone()));
            }
        }
    }
    out
}

/// gcd of two normalized integer polynomials (content 1, min exps 0,
/// positive leading coefficient); result normalized the same way.
fn poly_gcd(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a == b {
        return a.clone();
    }
    if a.is_one() || b.is_one() {
        return LaurentPoly::one();
    }
    if a.num_terms() == 1 || b.num_terms() == 1 {
        // primitive monomial with zero min-exponents is 1
        return LaurentPoly::one();
    }
    let g = bgcd(&to_bpoly(a), &to_bpoly(b));
    let gl = from_bpoly(&g);
    if gl.is_zero() {
        return LaurentPoly::one();
    }
    let (_, _, phat) = gl.decompose();
    phat
}

/// Exact division num/den of Laurent polynomials when den divides num.
fn poly_div_exact(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    if a.is_zero() {
        return LaurentPoly::zero();
    }
    let (qa, ma, pa) = a.decompose();
    let (qb, mb, pb) = b.decompose();
    let quo = if pb.is_one() {
        pa
    } else {
        let bq = bdiv_exact(&to_bpoly(&pa), &to_bpoly(&pb));
        from_bpoly(&bq)
    };
    quo.scale(&(qa / qb)).shift(ma.a - mb.a, ma.b - mb.b)
}

fn bdiv_exact(a: &BPoly, b: &BPoly) -> BPoly {
    let mut rem = a.clone();
    let db = bdeg(b);
    let lb = b.last().unwrap().clone();
    let mut q: BPoly = vec![Vec::new(); bdeg(a).saturating_sub(db) + 1];
    while !bis_zero(&rem) && bdeg(&rem) >= db {
        let d = bdeg(&rem) - db;
        let c = udiv_exact(rem.last().unwrap(), &lb);
        q[d] = uadd(&q[d], &c);
        let mut sub: BPoly = vec![Vec::new(); d];
        sub.extend(b.iter().map(|x| umul(x, &c)));
        let mut out = vec![Vec::new(); rem.len().max(sub.len())];
        for (i, x) in rem.iter().enumerate() {
            out[i] = uadd(&out[i], x);
        }
        for (i, x) in sub.iter().enumerate() {
            out[i] = uadd(&out[i], &uneg(x));
        }
        btrim(&mut out);
        rem = out;
    }
    assert!(bis_zero(&rem), "non-exact bivariate division");
    btrim(&mut q);
    q
}

// ---------------------------------------------------------------------------
// Scalar: canonical fraction num/den
// ---------------------------------------------------------------------------

/// Element of Q(u, v) in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_rat(c: Rat) -> Self {
        Scalar {
            num: LaurentPoly::monomial(c, 0, 0),
            den: LaurentPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rat(rat_int(n))
    }

    /// Monomial c * u^a * v^b.
    pub fn monomial(c: Rat, a: i64, b: i64) -> Self {
        Scalar {
            num: LaurentPoly::monomial(c, a, b),
            den: LaurentPoly::one(),
        }
    }

    pub fn u() -> Self {
        Scalar::monomial(Rat::one(), 1, 0)
    }

    pub fn v() -> Self {
        Scalar::monomial(Rat::one(), 0, 1)
    }

    /// The parameter r = u^2.
    pub fn r() -> Self {
        Scalar::monomial(Rat::one(), 2, 0)
    }

    /// The parameter s = v^2.
    pub fn s() -> Self {
        Scalar::monomial(Rat::one(), 0, 2)
    }

    /// (r s^{-1})^{t/2} = (u v^{-1})^t for the distinguished element r/s.
    pub fn half_power(twice_exponent: i64) -> Self {
        Scalar::monomial(Rat::one(), twice_exponent, -twice_exponent)
    }

    /// Build a reduced fraction from raw numerator and denominator.
    fn make(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "scalar with zero denominator");
        if num.is_zero() {
            return Scalar::zero();
        }
        let (qn, mn, pn) = num.decompose();
        let (qd, md, pd) = den.decompose();
        let (pn, pd) = if pd.is_one() {
            (pn, pd)
        } else {
            let g = poly_gcd(&pn, &pd);
            if g.is_one() {
                (pn, pd)
            } else {
                (poly_div_exact(&pn, &g), poly_div_exact(&pd, &g))
            }
        };
        let num = pn.scale(&(qn / qd)).shift(mn.a - md.a, mn.b - md.b);
        Scalar { num, den: pd }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return Scalar::make(self.num.add(&other.num), self.den.clone());
        }
        Scalar::make(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        Scalar::make(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Result<Self, UrsError> {
        if other.is_zero() {
            return Err(UrsError::ZeroDivisor);
        }
        Ok(Scalar::make(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    pub fn inv(&self) -> Result<Self, UrsError> {
        Scalar::one().div(self)
    }

    /// Integer power; errors on 0^k for k < 0.
    pub fn pow(&self, k: i64) -> Result<Self, UrsError> {
        if k == 0 {
            return Ok(Scalar::one());
        }
        if self.is_zero() {
            if k < 0 {
                return Err(UrsError::ZeroDivisor);
            }
            return Ok(Scalar::zero());
        }
        let base = if k > 0 { self.clone() } else { self.inv()? };
        let mut acc = Scalar::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Exact evaluation at u = u0, v = v0.
    pub fn eval(&self, u0: &Rat, v0: &Rat) -> Result<Rat, UrsError> {
        let d = self.den.eval(u0, v0)?;
        if d.is_zero() {
            return Err(UrsError::Specialize(format!(
                "zero divisor at specialization: denominator ({}) vanishes",
                self.den
            )));
        }
        Ok(self.num.eval(u0, v0)? / d)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.iter_canonical() {
            if !first && !c.is_negative() {
                write!(f, "+")?;
            }
            first = false;
            write!(f, "{}", c)?;
            if m.a != 0 {
                write!(f, "*u^{}", m.a)?;
            }
            if m.b != 0 {
                write!(f, "*v^{}", m.b)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Scalar {
    /// Canonical text rendering: "(num)/(den)", omitting "/(den)" when den=1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.num)?;
        if !self.den.is_one() {
            write!(f, "/({})", self.den)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs() -> (Scalar, Scalar) {
        (Scalar::r(), Scalar::s())
    }

    #[test]
    fn field_inverse_of_r_minus_s() {
        let (r, s) = rs();
        let d = r.sub(&s);
        let prod = d.mul(&d.inv().unwrap());
        assert!(prod.is_one());
    }

    #[test]
    fn r_over_s_is_laurent_monomial() {
        let (r, s) = rs();
        let q = r.div(&s).unwrap();
        assert_eq!(q, Scalar::monomial(Rat::one(), 2, -2));
        assert!(q.denominator().is_one());
    }

    #[test]
    fn additive_inverse_cancels() {
        let (r, s) = rs();
        let x = r.add(&s);
        assert!(x.add(&x.neg()).is_zero());
    }

    #[test]
    fn int_powers() {
        let (r, s) = rs();
        assert_eq!(
            r.pow(-1).unwrap(),
            Scalar::monomial(Rat::one(), -2, 0)
        );
        assert!(s.pow(0).unwrap().is_one());
        assert!(Scalar::zero().pow(-2).is_err());
    }

    #[test]
    fn half_powers() {
        let (r, s) = rs();
        let ratio = r.div(&s).unwrap();
        assert_eq!(Scalar::half_power(2), ratio);
        assert!(Scalar::half_power(0).is_one());
        assert_eq!(Scalar::half_power(3), Scalar::monomial(Rat::one(), 3, -3));
    }

    #[test]
    fn specialize_values() {
        let (r, s) = rs();
        let two = rat_int(2);
        let one1 = rat_int(1);
        assert_eq!(r.div(&s).unwrap().eval(&two, &one1).unwrap(), rat_int(4));
        let inv = r.sub(&s).inv().unwrap();
        assert_eq!(inv.eval(&two, &one1).unwrap(), rat(1, 3));
        let err = inv.eval(&one1, &one1);
        assert!(matches!(err, Err(UrsError::Specialize(_))));
    }

    #[test]
    fn canonical_denominator_positive_leading() {
        let (r, s) = rs();
        // 1/(s-r): leading term of s-r in graded-lex is -u^2, so the
        // canonical form must flip signs into the numerator.
        let x = Scalar::one().div(&s.sub(&r)).unwrap();
        let lead = x.denominator().iter_canonical().next().unwrap();
        assert!(!lead.1.is_negative());
        assert_eq!(x.to_string(), "(-1)/(1*u^2-1*v^2)");
    }

    #[test]
    fn gcd_reduction_across_fractions() {
        let (r, s) = rs();
        let d = r.sub(&s);
        // (r-s)^2 / (r-s) reduces to (r-s)
        let x = d.mul(&d).div(&d).unwrap();
        assert_eq!(x, d);
        // (r^2 - s^2)/(r-s) = r+s
        let num = r.mul(&r).sub(&s.mul(&s));
        assert_eq!(num.div(&d).unwrap(), r.add(&s));
    }

    #[test]
    fn display_matches_canonical_order() {
        let (r, s) = rs();
        let x = s.sub(&r);
        assert_eq!(x.to_string(), "(-1*u^2+1*v^2)");
        assert_eq!(Scalar::from_rat(rat(3, 2)).to_string(), "(3/2)");
        assert_eq!(Scalar::zero().to_string(), "(0)");
    }

    #[test]
    fn canonicalization_is_idempotent() {
        let (r, s) = rs();
        let x = r.add(&s).div(&r.sub(&s)).unwrap();
        let y = Scalar::make(x.numerator().clone(), x.denominator().clone());
        assert_eq!(x, y);
    }
}
