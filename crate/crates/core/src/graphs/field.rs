//! Finite fields `GF(p^m)` in a fixed polynomial basis.
//!
//! An element is stored as its index `sum c_i p^i` over the coefficient
//! vector, so addition is digitwise and the additive group is `Z_p^m`.

use crate::error::{Error, Result};

/// Conway polynomials, coefficients from the constant term up.
const CONWAY: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (11, 2, &[2, 7, 1]),
    (13, 2, &[2, 12, 1]),
];

/// Index of an element of a [`Field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub u32);

/// `(p, m)` when `q = p^m` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .find(|d| q.is_multiple_of(*d) || d * d > q)
        .filter(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut r = q;
    let mut m = 0;
    while r.is_multiple_of(p) {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Clone, Debug)]
pub struct Field {
    p: u64,
    m: u32,
    q: u64,
    modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidParameter(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER {
            return Err(Error::InvalidParameter(format!(
                "field order {q} too large"
            )));
        }
        let modulus = match CONWAY.iter().find(|(pp, mm, _)| *pp == p && *mm == m) {
            Some((_, _, c)) => c.to_vec(),
            None => search_primitive(p, m),
        };
        Field::with_modulus(p, m, modulus)
            .ok_or_else(|| Error::InvalidParameter(format!("no primitive modulus for GF({q})")))
    }

    /// Builds log tables for `x` modulo `modulus`; `None` unless `x`
    /// generates the multiplicative group.
    fn with_modulus(p: u64, m: u32, modulus: Vec<u64>) -> Option<Field> {
        let q = p.pow(m);
        let mut exp = Vec::with_capacity(q as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = vec![0u64; m as usize];
        cur[0] = 1;
        for i in 0..q - 1 {
            let idx = encode(&cur, p) as usize;
            if log[idx] != u32::MAX {
                return None;
            }
            log[idx] = i as u32;
            exp.push(idx as u32);
            cur = times_x(&cur, &modulus, p);
        }
        (encode(&cur, p) == 1).then_some(Field {
            p,
            m,
            q,
            modulus,
            exp,
            log,
        })
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(0)
    }

    pub fn one(&self) -> FieldElem {
        FieldElem(1)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q as u32).map(FieldElem)
    }

    pub fn coeffs(&self, a: FieldElem) -> Vec<u64> {
        decode(a.0 as u64, self.p, self.m)
    }

    pub fn from_coeffs(&self, c: &[u64]) -> FieldElem {
        FieldElem(encode(c, self.p) as u32)
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.digitwise(a, b, |x, y| (x + y) % self.p)
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.digitwise(a, b, |x, y| (x + self.p - y) % self.p)
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        self.sub(self.zero(), a)
    }

    fn digitwise(&self, a: FieldElem, b: FieldElem, f: impl Fn(u64, u64) -> u64) -> FieldElem {
        let (mut x, mut y) = (a.0 as u64, b.0 as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += f(x % self.p, y % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElem(out as u32)
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return self.zero();
        }
        let s = (self.log[a.0 as usize] as u64 + self.log[b.0 as usize] as u64) % (self.q - 1);
        FieldElem(self.exp[s as usize])
    }

    pub fn pow(&self, a: FieldElem, e: u64) -> FieldElem {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return self.zero();
        }
        let s = (self.log[a.0 as usize] as u128 * e as u128) % (self.q as u128 - 1);
        FieldElem(self.exp[s as usize])
    }

    pub fn inv(&self, a: FieldElem) -> Option<FieldElem> {
        (a.0 != 0).then(|| {
            let l = self.log[a.0 as usize] as u64;
            FieldElem(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
        })
    }

    /// `g^i` for the fixed primitive element `g = x`.
    pub fn primitive_power(&self, i: u64) -> FieldElem {
        FieldElem(self.exp[(i % (self.q - 1)) as usize])
    }

    /// The distinct nonzero `k`-th powers, sorted by index.
    pub fn power_residues(&self, k: u64) -> Vec<FieldElem> {
        let mut v: Vec<_> = (0..self.q - 1)
            .map(|i| self.pow(self.primitive_power(i), k))
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

fn encode(c: &[u64], p: u64) -> u64 {
    c.iter().rev().fold(0, |acc, d| acc * p + d)
}

fn decode(mut x: u64, p: u64, m: u32) -> Vec<u64> {
    (0..m)
        .map(|_| {
            let d = x % p;
            x /= p;
            d
        })
        .collect()
}

/// Multiplies a residue by `x` modulo a monic `modulus` of degree `m`.
fn times_x(c: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let m = c.len();
    let top = c[m - 1];
    let mut out = vec![0; m];
    for i in (1..m).rev() {
        out[i] = c[i - 1];
    }
    for (i, slot) in out.iter_mut().enumerate() {
        *slot = (*slot + p * p - top * modulus[i] % p) % p;
    }
    out
}

/// Smallest monic polynomial (by coefficient index) whose root `x` is
/// primitive.
fn search_primitive(p: u64, m: u32) -> Vec<u64> {
    let q = p.pow(m);
    for idx in 0..q {
        let mut c = decode(idx, p, m);
        if c[0] == 0 {
            continue;
        }
        c.push(1);
        if Field::with_modulus(p, m, c.clone()).is_some() {
            return c;
        }
    }
    unreachable!("every finite field has a primitive element")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conway_table_is_primitive() {
        for (p, m, c) in CONWAY {
            assert!(
                Field::with_modulus(*p, *m, c.to_vec()).is_some(),
                "GF({p}^{m})"
            );
        }
    }

    #[test]
    fn axioms_on_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49] {
            let f = Field::new(q).unwrap();
            assert_eq!(f.order(), q);
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                if a != f.zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                for b in f.elements() {
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    let c = f.primitive_power(3);
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn fallback_search_and_residues() {
        let f = Field::new(17 * 17).unwrap();
        assert_eq!(f.modulus().len(), 3);
        let f = Field::new(16).unwrap();
        assert_eq!(f.power_residues(3).len(), 5);
        assert_eq!(Field::new(13).unwrap().power_residues(2).len(), 6);
        assert!(Field::new(12).is_err());
        assert_eq!(prime_power(64), Some((2, 6)));
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(97), Some((97, 1)));
    }
}
