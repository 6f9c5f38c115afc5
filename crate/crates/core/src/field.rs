//! Arithmetic in GF(p^m) for the Bose–Chowla construction.
//!
//! Elements are encoded as integers `c0 + c1 p + ... + c_{m-1} p^{m-1}`.
//! Multiplication goes through discrete log / antilog tables built from the
//! primitive element, so fields are limited to 2^20 elements.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// True if `n` is prime (trial division).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Least prime power that is at least `n`.
pub fn next_prime_power(n: u64) -> u64 {
    (n.max(2)..).find(|&q| prime_power(q).is_some()).unwrap()
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Coefficient vectors over Z_p, constant term first.
mod poly {
    use alloc::vec::Vec;

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - lead * c % p) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = alloc::vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    pub fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = alloc::vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }
}

/// Coefficient vectors of length `len` over Z_p in lexicographic order, `c0` most significant.
fn lex_vectors(p: u64, len: usize) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(len as u32);
    (0..total).map(move |mut idx| {
        let mut v = vec![0u64; len];
        for slot in v.iter_mut().rev() {
            *slot = idx % p;
            idx /= p;
        }
        v
    })
}

/// True if the monic polynomial `f` of degree `m` has no monic factor of degree `1..=m/2`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    (1..=m / 2).all(|d| {
        lex_vectors(p, d).all(|low| {
            let mut g = low;
            g.push(1);
            !poly::rem(f, &g, p).is_empty()
        })
    })
}

/// The modulus of GF(p^m): a monic irreducible of degree `m` over Z_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    m: u32,
    modulus: Vec<u64>,
}

impl FieldSpec {
    /// Characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree.
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Field order `p^m`.
    pub fn order(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// Modulus coefficients `c0 .. cm`, constant term first (`cm = 1`).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod", self.p, self.m)?;
        for c in &self.modulus {
            write!(f, " {c}")?;
        }
        Ok(())
    }
}

/// An element of a [`Field`], encoded as `Σ c_i p^i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u32);

impl FieldElement {
    /// The additive identity.
    pub const ZERO: FieldElement = FieldElement(0);
    /// The multiplicative identity.
    pub const ONE: FieldElement = FieldElement(1);

    /// Integer encoding.
    pub fn index(self) -> u32 {
        self.0
    }
}

/// GF(p^m) with its primitive element `θ` and log tables.
#[derive(Debug, Clone)]
pub struct Field {
    spec: FieldSpec,
    primitive: FieldElement,
    /// `exp[a] = θ^a` for `a` in `0 .. order - 1`.
    exp: Vec<u32>,
    /// `log[x]` for nonzero `x`; `log[0]` unused.
    log: Vec<u32>,
}

fn encode(coeffs: &[u64], p: u64) -> u32 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p + c) as u32
}

impl Field {
    /// Builds GF(p^m) with the lexicographically least monic irreducible modulus
    /// and the lexicographically least primitive element.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::param("extension degree must be at least 1"));
        }
        let order = p
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::SizeExceeded(format!("GF({p}^{m}) exceeds 2^20 elements")))?;
        let modulus = lex_vectors(p, m as usize)
            .map(|mut low| {
                low.push(1);
                low
            })
            .find(|f| is_irreducible(f, p))
            .ok_or_else(|| Error::Internal(format!("no irreducible of degree {m} over Z_{p}")))?;
        let group = order - 1;
        let factors = prime_factors(group);
        let theta = lex_vectors(p, m as usize)
            .find(|c| {
                let mut c = c.clone();
                poly::trim(&mut c);
                !c.is_empty()
                    && poly::pow_mod(&c, group, &modulus, p) == [1]
                    && factors
                        .iter()
                        .all(|&l| poly::pow_mod(&c, group / l, &modulus, p) != [1])
            })
            .ok_or_else(|| Error::Internal(format!("no primitive element in GF({order})")))?;

        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![0u32; order as usize];
        let mut cur = vec![1u64];
        for a in 0..group {
            let mut padded = cur.clone();
            padded.resize(m as usize, 0);
            let x = encode(&padded, p);
            exp.push(x);
            log[x as usize] = a as u32;
            cur = poly::mul_mod(&cur, &theta, &modulus, p);
        }
        Ok(Field {
            spec: FieldSpec { p, m, modulus },
            primitive: FieldElement(encode(&theta, p)),
            exp,
            log,
        })
    }

    /// Builds GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, e)
    }

    /// Modulus and parameters.
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// Number of elements.
    pub fn order(&self) -> u64 {
        self.spec.order()
    }

    /// The primitive element `θ`.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    /// Element with the given encoding.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if u64::from(index) < self.order() {
            Ok(FieldElement(index))
        } else {
            Err(Error::param(format!(
                "{index} is not an element of GF({})",
                self.order()
            )))
        }
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order() as u32).map(FieldElement)
    }

    /// Coefficients `c0 .. c_{m-1}`.
    pub fn coeffs(&self, x: FieldElement) -> Vec<u64> {
        let mut idx = u64::from(x.0);
        (0..self.spec.m)
            .map(|_| {
                let c = idx % self.spec.p;
                idx /= self.spec.p;
                c
            })
            .collect()
    }

    fn combine(
        &self,
        x: FieldElement,
        y: FieldElement,
        f: impl Fn(u64, u64) -> u64,
    ) -> FieldElement {
        let p = self.spec.p;
        let (mut a, mut b) = (u64::from(x.0), u64::from(y.0));
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.spec.m {
            out += f(a % p, b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        FieldElement(out as u32)
    }

    /// `x + y`.
    pub fn add(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        self.combine(x, y, |a, b| a + b)
    }

    /// `x - y`.
    pub fn sub(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let p = self.spec.p;
        self.combine(x, y, |a, b| a + p - b)
    }

    /// `-x`.
    pub fn neg(&self, x: FieldElement) -> FieldElement {
        self.sub(FieldElement::ZERO, x)
    }

    /// `x * y`.
    pub fn mul(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        if x.0 == 0 || y.0 == 0 {
            return FieldElement::ZERO;
        }
        let group = self.exp.len();
        let a = self.log[x.0 as usize] as usize + self.log[y.0 as usize] as usize;
        FieldElement(self.exp[a % group])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, x: FieldElement) -> Option<FieldElement> {
        if x.0 == 0 {
            return None;
        }
        let group = self.exp.len();
        let a = self.log[x.0 as usize] as usize;
        Some(FieldElement(self.exp[(group - a) % group]))
    }

    /// `x^e`.
    pub fn pow(&self, x: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.0 == 0 {
            return FieldElement::ZERO;
        }
        let group = self.exp.len() as u64;
        let a = u64::from(self.log[x.0 as usize]) * (e % group) % group;
        FieldElement(self.exp[a as usize])
    }

    /// `θ^a`.
    pub fn theta_pow(&self, a: u64) -> FieldElement {
        FieldElement(self.exp[(a % self.exp.len() as u64) as usize])
    }

    /// `θ^a` for `a = 1 .. order - 1`; the last entry is 1.
    pub fn power_table(&self) -> Vec<FieldElement> {
        let group = self.exp.len() as u64;
        (1..=group).map(|a| self.theta_pow(a)).collect()
    }

    /// Discrete logarithm base `θ`, in `0 .. order - 1`.
    pub fn log(&self, x: FieldElement) -> Option<u64> {
        (x.0 != 0).then(|| u64::from(self.log[x.0 as usize]))
    }

    /// True if `x` lies in the subfield of order `q`, i.e. `x^q = x`.
    pub fn in_subfield(&self, x: FieldElement, q: u64) -> Result<bool> {
        let (p, d) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if p != self.spec.p || !self.spec.m.is_multiple_of(d) {
            return Err(Error::param(format!(
                "GF({q}) is not a subfield of GF({})",
                self.order()
            )));
        }
        Ok(self.pow(x, q) == x)
    }
}
