//! Table-driven finite fields of small order.
//!
//! Elements are `u8` in `0..q`. For prime `q` they are residues; for prime
//! powers an element encodes the coefficient vector of a polynomial over
//! `GF(p)` in base `p` (least significant digit = constant term).

use crate::error::{Error, Result};

/// Orders with a built-in field.
pub const SUPPORTED_ORDERS: [usize; 7] = [2, 3, 4, 5, 7, 8, 9];

#[derive(Clone, Debug)]
pub struct FiniteField {
    q: usize,
    p: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl FiniteField {
    /// Builds `GF(q)` and checks the field axioms over every element pair and
    /// triple.
    pub fn new(q: usize) -> Result<Self> {
        // (characteristic, degree, monic modulus low coefficients)
        let (p, modulus): (usize, &[usize]) = match q {
            2 | 3 | 5 | 7 => (q, &[]),
            4 => (2, &[1, 1]),    // x^2 + x + 1
            8 => (2, &[1, 1, 0]), // x^3 + x + 1
            9 => (3, &[1, 0]),    // x^2 + 1
            _ => return Err(Error::UnsupportedOrder(q)),
        };
        let k = modulus.len().max(1);
        let digits = |x: usize| -> Vec<usize> {
            let mut d = Vec::with_capacity(k);
            let mut x = x;
            for _ in 0..k {
                d.push(x % p);
                x /= p;
            }
            d
        };
        let encode = |d: &[usize]| -> usize { d.iter().rev().fold(0, |acc, &c| acc * p + c) };

        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                let (da, db) = (digits(a), digits(b));
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = encode(&sum) as u8;

                let prod = if modulus.is_empty() {
                    (a * b) % p
                } else {
                    let mut full = vec![0usize; 2 * k - 1];
                    for (i, x) in da.iter().enumerate() {
                        for (j, y) in db.iter().enumerate() {
                            full[i + j] = (full[i + j] + x * y) % p;
                        }
                    }
                    // reduce with x^k = -(modulus)
                    for deg in (k..full.len()).rev() {
                        let c = full[deg];
                        if c != 0 {
                            full[deg] = 0;
                            for (i, &mc) in modulus.iter().enumerate() {
                                let t = deg - k + i;
                                full[t] = (full[t] + p * p - c * mc % p) % p;
                            }
                        }
                    }
                    encode(&full[..k])
                };
                mul[a * q + b] = prod as u8;
            }
        }
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..q {
            neg[a] = (0..q).find(|&b| add[a * q + b] == 0).ok_or(Error::UnsupportedOrder(q))? as u8;
            if a != 0 {
                inv[a] = (1..q)
                    .find(|&b| mul[a * q + b] == 1)
                    .ok_or(Error::UnsupportedOrder(q))? as u8;
            }
        }
        let field = FiniteField {
            q,
            p,
            add,
            mul,
            neg,
            inv,
        };
        field.check_axioms()?;
        Ok(field)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn characteristic(&self) -> usize {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q as u8
    }

    fn check_axioms(&self) -> Result<()> {
        let q = self.q as u8;
        let fail = || Error::UnsupportedOrder(self.q);
        for a in 0..q {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(fail());
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(fail());
            }
            if a != 0 && self.mul(a, self.inv[a as usize]) != 1 {
                return Err(fail());
            }
            for b in 0..q {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(fail());
                }
                for c in 0..q {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                        || self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c))
                    {
                        return Err(fail());
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_supported_orders_build() {
        for q in SUPPORTED_ORDERS {
            let f = FiniteField::new(q).unwrap();
            assert_eq!(f.order(), q);
            // multiplicative group is cyclic of order q-1: some element generates it
            let gen = (1..q as u8).find(|&g| {
                let mut x = 1u8;
                let mut seen = std::collections::HashSet::new();
                for _ in 0..q - 1 {
                    x = f.mul(x, g);
                    seen.insert(x);
                }
                seen.len() == q - 1
            });
            assert!(gen.is_some(), "GF({q}) has no primitive element");
        }
    }

    #[test]
    fn rejects_other_orders() {
        for q in [0, 1, 6, 10, 11, 16] {
            assert_eq!(FiniteField::new(q).unwrap_err(), Error::UnsupportedOrder(q));
        }
    }

    #[test]
    fn gf4_multiplication() {
        let f = FiniteField::new(4).unwrap();
        // x * x = x + 1  (2 * 2 = 3), x * (x+1) = 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.characteristic(), 2);
        assert_eq!(f.add(3, 3), 0);
    }
}
