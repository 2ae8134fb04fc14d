//! Brute-force oracles for the integration suites.
//!
//! Everything here recomputes field facts from first principles — naive
//! polynomial arithmetic, pow-by-squaring on coefficient vectors, double
//! loops — deliberately avoiding the exp/dlog tables under test.

// Compiled once per integration-test target; not every target uses every
// helper.
#![allow(dead_code)]

use potentsum::{Element, FieldTable};

/// Deterministic splitmix64 stream for sampling in tests.
pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

/// Base-p digits of an element index, lowest degree first, padded to v.
pub fn decode(index: u64, p: u64, v: u32) -> Vec<u64> {
    let mut digits = vec![0u64; v as usize];
    let mut x = index;
    for d in digits.iter_mut() {
        *d = x % p;
        x /= p;
    }
    digits
}

pub fn encode(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Schoolbook product of coefficient vectors mod p, reduced mod the monic
/// modulus (coefficients lowest degree first, leading coefficient 1).
pub fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let v = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    for i in (v..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for (j, &mj) in modulus.iter().enumerate().take(v) {
            let idx = i - v + j;
            prod[idx] = (prod[idx] + c * (p - mj) % p) % p;
        }
    }
    prod.truncate(v);
    prod.resize(v, 0);
    prod
}

/// Index-level multiplication via naive polynomial arithmetic.
pub fn naive_mul(field: &FieldTable, a: u64, b: u64) -> u64 {
    let p = field.p();
    let v = field.v();
    let modulus: Vec<u64> = field.modulus().iter().map(|&c| u64::from(c)).collect();
    let prod = poly_mulmod(&decode(a, p, v), &decode(b, p, v), &modulus, p);
    encode(&prod, p)
}

/// Index-level addition: digitwise mod p.
pub fn naive_add(field: &FieldTable, a: u64, b: u64) -> u64 {
    let p = field.p();
    let v = field.v();
    let da = decode(a, p, v);
    let db = decode(b, p, v);
    let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
    encode(&sum, p)
}

/// Index-level exponentiation by repeated naive multiplication.
pub fn naive_pow(field: &FieldTable, a: u64, mut e: u64) -> u64 {
    let mut base = a;
    let mut acc = 1u64; // index of the constant polynomial 1
    while e > 0 {
        if e & 1 == 1 {
            acc = naive_mul(field, acc, base);
        }
        base = naive_mul(field, base, base);
        e >>= 1;
    }
    acc
}

/// Indices satisfying x^n = x, by brute naive power.
pub fn brute_potents(field: &FieldTable, n: u64) -> Vec<u64> {
    (0..field.q())
        .filter(|&x| naive_pow(field, x, n) == x)
        .collect()
}

/// Does {a + b : a ∈ A, b ∈ B} (by index) exhaust the field?
pub fn brute_covers(field: &FieldTable, a: &[u64], b: &[u64]) -> bool {
    let mut seen = vec![false; field.q() as usize];
    for &x in a {
        for &y in b {
            seen[naive_add(field, x, y) as usize] = true;
        }
    }
    seen.iter().all(|&s| s)
}

/// Brute λ: d - 1 at zero, 0 on nonzero d-th powers, d elsewhere, with the
/// d-th-power test done by the (q-1)/d-th naive power.
pub fn brute_lambda(field: &FieldTable, d: u64, x: u64) -> u128 {
    if x == 0 {
        return u128::from(d - 1);
    }
    if naive_pow(field, x, (field.q() - 1) / d) == 1 {
        0
    } else {
        u128::from(d)
    }
}

/// Brute S(d; q, A) with A given as indices.
pub fn brute_exact_s(field: &FieldTable, d: u64, a: &[u64]) -> u128 {
    let mut total = 0u128;
    for g in 0..field.q() {
        if a.contains(&g) {
            continue;
        }
        let mut prod = 1u128;
        for &alpha in a {
            let neg = naive_index_neg(field, alpha);
            prod *= brute_lambda(field, d, naive_add(field, g, neg));
            if prod == 0 {
                break;
            }
        }
        total += prod;
    }
    total
}

fn naive_index_neg(field: &FieldTable, a: u64) -> u64 {
    let p = field.p();
    let digits: Vec<u64> = decode(a, p, field.v())
        .iter()
        .map(|&d| (p - d) % p)
        .collect();
    encode(&digits, p)
}

/// Convenience: member indices of an element slice.
pub fn indices(members: &[Element]) -> Vec<u64> {
    members.iter().map(|e| e.index()).collect()
}
