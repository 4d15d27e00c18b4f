//! Packed exponent vectors.
//!
//! Each exponent occupies one byte of six `u64` words, so multiplication,
//! division and divisibility are word-parallel. Exponents (and total degree)
//! are capped at 127, which keeps every byte below the sign bit and lets the
//! divisibility test run without cross-byte borrows.

use std::hash::Hash;

use crate::poly::context::Var;

pub const MAX_VARS: usize = 48;
pub const MAX_DEGREE: u32 = 127;
const WORDS: usize = MAX_VARS / 8;
const HIGH: u64 = 0x8080_8080_8080_8080;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    words: [u64; WORDS],
    deg: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut m = Monomial::one();
        m.set(v, e);
        m
    }

    pub fn from_exponents(exps: &[(Var, u32)]) -> Self {
        let mut m = Monomial::one();
        for &(v, e) in exps {
            m = m * Monomial::var_pow(v, e);
        }
        m
    }

    fn set(&mut self, v: Var, e: u32) {
        assert!(v.0 < MAX_VARS, "variable index out of range");
        let old = self.exp(v);
        let total = self.deg - old + e;
        assert!(total <= MAX_DEGREE, "monomial degree {total} exceeds {MAX_DEGREE}");
        let (w, shift) = (v.0 / 8, 8 * (v.0 % 8));
        self.words[w] = (self.words[w] & !(0xffu64 << shift)) | ((e as u64) << shift);
        self.deg = total;
    }

    #[inline]
    pub fn exp(&self, v: Var) -> u32 {
        ((self.words[v.0 / 8] >> (8 * (v.0 % 8))) & 0xff) as u32
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    /// `(var, exponent)` pairs with positive exponent, in variable order.
    pub fn support(&self) -> Vec<(Var, u32)> {
        let mut out = Vec::new();
        for (w, &word) in self.words.iter().enumerate() {
            let mut x = word;
            while x != 0 {
                let byte = (x.trailing_zeros() / 8) as usize;
                let e = ((x >> (8 * byte)) & 0xff) as u32;
                out.push((Var(w * 8 + byte), e));
                x &= !(0xffu64 << (8 * byte));
            }
        }
        out
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        self.support().into_iter().map(|(v, _)| v)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.deg > other.deg {
            return false;
        }
        for i in 0..WORDS {
            let a = self.words[i];
            let b = other.words[i];
            if ((b | HIGH).wrapping_sub(a)) & HIGH != HIGH {
                return false;
            }
        }
        true
    }

    /// Byte mask of the lanes where `other >= self`.
    #[inline]
    fn ge_mask(a: u64, b: u64) -> u64 {
        let m = ((b | HIGH).wrapping_sub(a)) & HIGH;
        (m >> 7) * 0xff
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut words = [0u64; WORDS];
        let mut deg = 0;
        for (i, w) in words.iter_mut().enumerate() {
            let (a, b) = (self.words[i], other.words[i]);
            let mask = Self::ge_mask(a, b);
            *w = (b & mask) | (a & !mask);
            deg += byte_sum(*w);
        }
        assert!(deg <= MAX_DEGREE, "monomial degree {deg} exceeds {MAX_DEGREE}");
        Monomial { words, deg }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut words = [0u64; WORDS];
        let mut deg = 0;
        for (i, w) in words.iter_mut().enumerate() {
            let (a, b) = (self.words[i], other.words[i]);
            let mask = Self::ge_mask(a, b);
            *w = (a & mask) | (b & !mask);
            deg += byte_sum(*w);
        }
        Monomial { words, deg }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        (0..WORDS).all(|i| nonzero_lanes(self.words[i]) & nonzero_lanes(other.words[i]) == 0)
    }

    /// `self / other`, assuming `other | self`.
    #[inline]
    pub fn div_exact(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(other.words.iter()) {
            *w -= *o;
        }
        Monomial {
            words,
            deg: self.deg - other.deg,
        }
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| self.div_exact(other))
    }

    pub(crate) fn words(&self) -> &[u64; WORDS] {
        &self.words
    }

    /// Sum of exponents over the variables of `mask` (one byte of `0xff` per
    /// variable lane).
    pub(crate) fn masked_degree(&self, mask: &[u64; WORDS]) -> u32 {
        (0..WORDS).map(|i| byte_sum(self.words[i] & mask[i])).sum()
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;
    #[inline]
    fn mul(self, rhs: Monomial) -> Monomial {
        let deg = self.deg + rhs.deg;
        assert!(deg <= MAX_DEGREE, "monomial degree {deg} exceeds {MAX_DEGREE}");
        let mut words = self.words;
        for (w, o) in words.iter_mut().zip(rhs.words.iter()) {
            *w += *o;
        }
        Monomial { words, deg }
    }
}

impl std::fmt::Debug for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .support()
            .iter()
            .map(|(v, e)| if *e == 1 { format!("v{}", v.0) } else { format!("v{}^{e}", v.0) })
            .collect();
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

#[inline]
fn byte_sum(w: u64) -> u32 {
    // Every byte is at most 127 and there are 8 of them, so no overflow into
    // the top byte.
    (w.wrapping_mul(0x0101_0101_0101_0101) >> 56) as u32
}

/// `0x80` in each byte lane of `w` that is nonzero.
#[inline]
fn nonzero_lanes(w: u64) -> u64 {
    ((w & !HIGH).wrapping_add(!HIGH) | w) & HIGH
}

/// Byte-lane mask selecting the variables of a bit set.
pub(crate) fn lane_mask(bits: u64) -> [u64; WORDS] {
    let mut out = [0u64; WORDS];
    for v in 0..MAX_VARS.min(64) {
        if bits & (1u64 << v) != 0 {
            out[v / 8] |= 0xffu64 << (8 * (v % 8));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[(usize, u32)]) -> Monomial {
        Monomial::from_exponents(&exps.iter().map(|&(v, e)| (Var(v), e)).collect::<Vec<_>>())
    }

    #[test]
    fn multiplication_and_division_are_inverse() {
        let a = m(&[(0, 2), (9, 1), (47, 3)]);
        let b = m(&[(9, 4), (20, 1)]);
        let p = a * b;
        assert_eq!(p.degree(), 11);
        assert_eq!(p.exp(Var(9)), 5);
        assert_eq!(p.div_exact(&b), a);
        assert!(a.divides(&p) && b.divides(&p));
        assert!(!p.divides(&a));
    }

    #[test]
    fn lcm_gcd_and_coprimality() {
        let a = m(&[(0, 2), (1, 1)]);
        let b = m(&[(1, 3), (5, 1)]);
        assert_eq!(a.lcm(&b), m(&[(0, 2), (1, 3), (5, 1)]));
        assert_eq!(a.gcd(&b), m(&[(1, 1)]));
        assert!(!a.is_coprime(&b));
        assert!(m(&[(0, 1)]).is_coprime(&m(&[(8, 1)])));
        assert!(Monomial::one().is_coprime(&a));
    }

    #[test]
    fn divisibility_respects_each_lane() {
        let a = m(&[(3, 127)]);
        let b = m(&[(3, 126), (4, 1)]);
        assert!(!a.divides(&b));
        assert!(m(&[(3, 126)]).divides(&b));
    }

    #[test]
    fn support_lists_exponents_in_variable_order() {
        let a = m(&[(17, 2), (2, 1)]);
        assert_eq!(a.support(), vec![(Var(2), 1), (Var(17), 2)]);
    }
}
