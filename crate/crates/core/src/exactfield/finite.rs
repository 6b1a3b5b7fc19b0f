//! Table-driven arithmetic for GF(p) and GF(p^k) with p^k <= 256.
//!
//! Elements are encoded as `u8` indices `sum c_i p^i` over the coefficient
//! list `[c_0, .., c_{k-1}]` (lowest degree first), which is canonical.

use crate::error::{Error, Result};

pub(crate) const MAX_PRIME: u32 = 97;
pub(crate) const MAX_ORDER: u32 = 256;

#[derive(Debug)]
pub(crate) struct FiniteTables {
    pub p: u32,
    pub k: u32,
    pub q: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    pub neg: Vec<u8>,
    pub inv: Vec<u8>,
}

impl FiniteTables {
    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    pub fn digits(&self, mut idx: usize) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            out.push((idx % self.p as usize) as u32);
            idx /= self.p as usize;
        }
        out
    }

    pub fn from_digits(&self, digits: &[u32]) -> usize {
        digits
            .iter()
            .rev()
            .fold(0usize, |acc, &d| acc * self.p as usize + d as usize)
    }

    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p) || p > MAX_PRIME {
            return Err(Error::InvalidField(format!(
                "gf({p}): prime fields are supported for primes up to {MAX_PRIME}"
            )));
        }
        Ok(Self::build(p, 1, &[0, 1]))
    }

    pub fn extension(p: u32, k: u32, modulus: &[u32]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k < 2 {
            return Err(Error::InvalidField(
                "extension degree must be at least 2".into(),
            ));
        }
        let q = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(Error::InvalidField(format!(
                "gf({p}^{k}) has {q} elements; at most {MAX_ORDER} are supported"
            )));
        }
        if modulus.len() != k as usize + 1 || modulus[k as usize] != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {k} (got {modulus:?})"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0,{p})"
            )));
        }
        if !is_irreducible(p, modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over gf({p})"
            )));
        }
        Ok(Self::build(p, k, modulus))
    }

    fn build(p: u32, k: u32, modulus: &[u32]) -> Self {
        let q = p.pow(k) as usize;
        let mut t = FiniteTables {
            p,
            k,
            q,
            add: vec![0; q * q],
            mul: vec![0; q * q],
            neg: vec![0; q],
            inv: vec![0; q],
        };
        let digits: Vec<Vec<u32>> = (0..q).map(|i| t.digits(i)).collect();
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = digits[a]
                    .iter()
                    .zip(&digits[b])
                    .map(|(x, y)| (x + y) % p)
                    .collect();
                t.add[a * q + b] = t.from_digits(&s) as u8;
                let prod = poly_mulmod(p, &digits[a], &digits[b], modulus);
                t.mul[a * q + b] = t.from_digits(&prod) as u8;
            }
            let n: Vec<u32> = digits[a].iter().map(|x| (p - x) % p).collect();
            t.neg[a] = t.from_digits(&n) as u8;
        }
        for a in 1..q {
            let inv = (1..q)
                .find(|&b| t.mul[a * q + b] == 1)
                .expect("irreducible modulus yields a field");
            t.inv[a] = inv as u8;
        }
        t
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Product of two residues of degree < k, reduced by the monic `modulus`.
fn poly_mulmod(p: u32, a: &[u32], b: &[u32], modulus: &[u32]) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for i in 0..=k {
            let idx = deg - k + i;
            prod[idx] = (prod[idx] + p * p - (c * modulus[i]) % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p).
fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p * p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree 1..=k/2.
pub(crate) fn is_irreducible(p: u32, modulus: &[u32]) -> bool {
    let k = modulus.len() - 1;
    for d in 1..=k / 2 {
        let count = (p as usize).pow(d as u32);
        for idx in 0..count {
            let mut divisor: Vec<u32> = (0..d)
                .scan(idx, |rest, _| {
                    let c = (*rest % p as usize) as u32;
                    *rest /= p as usize;
                    Some(c)
                })
                .collect();
            divisor.push(1);
            if poly_rem(p, modulus, &divisor).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Built-in moduli for the common extension fields; anything else falls back
/// to the first monic irreducible polynomial found by enumeration.
pub(crate) fn default_modulus(p: u32, k: u32) -> Option<Vec<u32>> {
    let table: &[(u32, u32, &[u32])] = &[
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (2, 5, &[1, 0, 1, 0, 0, 1]),
        (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
        (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
        (2, 8, &[1, 1, 0, 1, 1, 0, 0, 0, 1]),
        (3, 2, &[1, 0, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (5, 2, &[2, 0, 1]),
        (7, 2, &[1, 0, 1]),
    ];
    if let Some((_, _, m)) = table.iter().find(|(pp, kk, _)| *pp == p && *kk == k) {
        return Some(m.to_vec());
    }
    let q = (p as u64).checked_pow(k)?;
    if q > MAX_ORDER as u64 || !is_prime(p) || k < 2 {
        return None;
    }
    (0..q as usize).find_map(|idx| {
        let mut m: Vec<u32> = (0..k)
            .scan(idx, |rest, _| {
                let c = (*rest % p as usize) as u32;
                *rest /= p as usize;
                Some(c)
            })
            .collect();
        m.push(1);
        is_irreducible(p, &m).then_some(m)
    })
}
