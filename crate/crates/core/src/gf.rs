//! Small finite fields GF(p^k), table driven.
//!
//! Elements are integers `0..q` read as base-`p` digit strings, i.e.
//! polynomials over GF(p) in a fixed root of the modulus. The modulus is the
//! first monic degree-`k` polynomial (in digit order) whose residue ring has
//! no zero divisors.

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u32,
    q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// `(p, k)` with `q = p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k).map(|i| (x / p.pow(i)) % p).collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Polynomial product reduced modulo the monic `modulus` (low-order
/// coefficients first, leading 1 implicit).
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len();
    let mut prod = vec![0u32; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (k..2 * k).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        // x^deg = x^{deg-k} · x^k and x^k ≡ −modulus
        for (i, &m) in modulus.iter().enumerate() {
            prod[deg - k + i] = (prod[deg - k + i] + (p - m) * c) % p;
        }
    }
    prod.truncate(k);
    prod
}

impl FiniteField {
    pub fn new(q: u32) -> Option<Self> {
        let (p, k) = prime_power(q)?;
        let n = q as usize;
        let add = (0..q)
            .flat_map(|a| {
                (0..q).map(move |b| {
                    let s: Vec<u32> = digits(a, p, k)
                        .iter()
                        .zip(digits(b, p, k))
                        .map(|(x, y)| (x + y) % p)
                        .collect();
                    undigits(&s, p)
                })
            })
            .collect();
        let mul = (0..q).find_map(|m| {
            let modulus = digits(m, p, k);
            let table: Vec<u32> = (0..q)
                .flat_map(|a| {
                    let modulus = modulus.clone();
                    (0..q).map(move |b| {
                        undigits(
                            &poly_mulmod(&digits(a, p, k), &digits(b, p, k), &modulus, p),
                            p,
                        )
                    })
                })
                .collect();
            let domain = (1..n).all(|a| (1..n).all(|b| table[a * n + b] != 0));
            domain.then_some(table)
        })?;
        Some(Self { p, q, add, mul })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        (0..self.q)
            .find(|&b| self.add(a, b) == 0)
            .expect("additive inverse")
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (2..self.q)
            .find(|&g| {
                let mut x = g;
                let mut period = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    period += 1;
                }
                period == self.q - 1
            })
            .unwrap_or(1)
    }
}
