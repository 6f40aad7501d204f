//! Weights of gl_n and the type A_{n-1} root bookkeeping.
//!
//! The weight lattice is Z^n in the orthonormal epsilon-coordinates.  Simple
//! roots are alpha_j = eps_j - eps_{j+1} for j < n, extended by the
//! convention alpha_n = eps_n, so that eps_i = alpha_i + ... + alpha_n and
//! the two coordinate systems are in exact integer bijection.

use crate::error::{Result, UrsError};

/// Inner product <eps_i, alpha_j> with 1-based indices; alpha_n = eps_n.
pub fn eps_dot_alpha(n: usize, i: usize, j: usize) -> i64 {
    debug_assert!(1 <= i && i <= n && 1 <= j && j <= n);
    if j < n {
        (i == j) as i64 - (i == j + 1) as i64
    } else {
        (i == n) as i64
    }
}

/// A gl_n weight stored in epsilon-coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    eps: Vec<i64>,
}

impl Weight {
    pub fn new(eps: Vec<i64>) -> Self {
        Weight { eps }
    }

    pub fn zero(n: usize) -> Self {
        Weight { eps: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    pub fn eps_coord(&self, i: usize) -> i64 {
        self.eps[i - 1]
    }

    /// eps_i as a weight.
    pub fn eps_basis(n: usize, i: usize) -> Self {
        let mut eps = vec![0; n];
        eps[i - 1] = 1;
        Weight { eps }
    }

    /// Simple root alpha_i (i < n) or alpha_n = eps_n.
    pub fn alpha_basis(n: usize, i: usize) -> Self {
        let mut eps = vec![0; n];
        eps[i - 1] = 1;
        if i < n {
            eps[i] = -1;
        }
        Weight { eps }
    }

    /// alpha-coordinates; alpha_k = sum of the first k eps-coordinates.
    pub fn alpha(&self) -> Vec<i64> {
        let mut acc = 0;
        self.eps
            .iter()
            .map(|&e| {
                acc += e;
                acc
            })
            .collect()
    }

    pub fn from_alpha(alpha: &[i64]) -> Self {
        let mut eps = Vec::with_capacity(alpha.len());
        let mut prev = 0;
        for &a in alpha {
            eps.push(a - prev);
            prev = a;
        }
        Weight { eps }
    }

    /// Root lattice element sum(zeta_i alpha_i), i < n, as a weight.
    pub fn from_root(n: usize, zeta: &[i64]) -> Self {
        debug_assert_eq!(zeta.len(), n - 1);
        let mut alpha: Vec<i64> = zeta.to_vec();
        alpha.push(0);
        Weight::from_alpha(&alpha)
    }

    /// Coordinates over alpha_1..alpha_{n-1} if this weight lies in the
    /// root lattice of sl_n (last alpha-coordinate zero).
    pub fn as_root(&self) -> Result<Vec<i64>> {
        let a = self.alpha();
        if *a.last().unwrap() != 0 {
            return Err(UrsError::Domain(
                "weight is outside the root lattice span".into(),
            ));
        }
        Ok(a[..a.len() - 1].to_vec())
    }

    pub fn dot(&self, other: &Weight) -> i64 {
        self.eps
            .iter()
            .zip(&other.eps)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            eps: self
                .eps
                .iter()
                .zip(&other.eps)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Twice the half-sum of positive roots: (n-1, n-3, ..., 1-n).
    pub fn two_rho(n: usize) -> Weight {
        Weight {
            eps: (1..=n).map(|j| (n as i64) + 1 - 2 * (j as i64)).collect(),
        }
    }
}

/// Nonnegative root-lattice content (coordinates over alpha_1..alpha_{n-1}).
pub type Content = Vec<i64>;

pub fn content_height(zeta: &[i64]) -> usize {
    zeta.iter().map(|&c| c as usize).sum()
}

pub fn content_zero(n: usize) -> Content {
    vec![0; n - 1]
}

/// All contents in Q^+ of height exactly `h`.
pub fn contents_of_height(n: usize, h: usize) -> Vec<Content> {
    fn rec(slots: usize, h: usize, cur: &mut Vec<i64>, out: &mut Vec<Content>) {
        if slots == 1 {
            cur.push(h as i64);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in 0..=h {
            cur.push(k as i64);
            rec(slots - 1, h - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        rec(n - 1, h, &mut Vec::new(), &mut out);
    }
    out
}

/// All contents of height 0..=h in a fixed deterministic order.
pub fn contents_up_to(n: usize, h: usize) -> Vec<Content> {
    (0..=h).flat_map(|k| contents_of_height(n, k)).collect()
}

/// Componentwise zeta <= eta.
pub fn content_le(zeta: &[i64], eta: &[i64]) -> bool {
    zeta.iter().zip(eta).all(|(a, b)| a <= b)
}

pub fn content_sub(zeta: &[i64], eta: &[i64]) -> Content {
    zeta.iter().zip(eta).map(|(a, b)| a - b).collect()
}

pub fn content_add(zeta: &[i64], eta: &[i64]) -> Content {
    zeta.iter().zip(eta).map(|(a, b)| a + b).collect()
}

/// All eta in Q^+ with eta <= zeta componentwise (including 0 and zeta).
pub fn contents_below(zeta: &[i64]) -> Vec<Content> {
    let mut out: Vec<Content> = vec![Vec::new()];
    for &c in zeta {
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..=c).map(move |k| {
                    let mut next = base.clone();
                    next.push(k);
                    next
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alpha_eps_round_trip() {
        let w = Weight::new(vec![3, -1, 2]);
        assert_eq!(Weight::from_alpha(&w.alpha()), w);
        assert_eq!(w.alpha(), vec![3, 2, 4]);
    }

    #[test]
    fn eps_as_alpha_suffix_sum() {
        // eps_1 = alpha_1 + alpha_2 + alpha_3 for n = 3
        let e1 = Weight::eps_basis(3, 1);
        assert_eq!(e1.alpha(), vec![1, 1, 1]);
    }

    #[test]
    fn pairing_identity_of_eps_alpha() {
        // <eps_j, alpha_i> = -<eps_{i+1}, alpha_j> for i, j < n
        for n in 2..=5 {
            for i in 1..n {
                for j in 1..n {
                    assert_eq!(
                        eps_dot_alpha(n, j, i),
                        -eps_dot_alpha(n, i + 1, j),
                        "n={n} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn rho_pairs_to_one_with_simple_roots() {
        for n in 2..=5 {
            let two_rho = Weight::two_rho(n);
            for i in 1..n {
                assert_eq!(two_rho.dot(&Weight::alpha_basis(n, i)), 2);
            }
        }
    }

    #[test]
    fn content_enumeration() {
        assert_eq!(contents_of_height(3, 2).len(), 3);
        assert_eq!(contents_up_to(3, 2).len(), 1 + 2 + 3);
        assert_eq!(contents_below(&[2, 1]).len(), 6);
    }
}
