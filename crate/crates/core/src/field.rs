//! Dense, table-backed finite fields `F_q`, `q = p^v`, for small `q`.
//!
//! Elements are plain integer indices in `[0, q)`: the base-`p` digits of an
//! index are the coefficients of the representative polynomial, lowest degree
//! first. Index 0 is the zero element and index 1 the multiplicative identity
//! for every field. Multiplication, powers and discrete logarithms go through
//! precomputed exp/dlog tables over a canonical generator; addition is
//! digitwise mod `p` on the encodings.
//!
//! The construction is fully deterministic: for `v > 1` the modulus is the
//! lexicographically smallest monic irreducible of degree `v` (coefficient
//! vectors compared lowest degree first), and the generator is the
//! smallest-index element of multiplicative order `q - 1`. For `v = 1` this
//! degenerates to arithmetic mod `p` with the smallest primitive root.

use serde::{Deserialize, Serialize};

use crate::arith::{pow_mod, prime_factors_distinct};
use crate::error::{Error, Result};

/// Fields above this order are refused unless a larger capacity is passed to
/// [`build_field_with_capacity`] (the CLI reads the `POTENTSUM_MAX_Q`
/// environment variable).
pub const DEFAULT_CAPACITY: u64 = 1 << 22;

/// Name of the environment variable overriding the field-capacity limit.
pub const CAPACITY_ENV_VAR: &str = "POTENTSUM_MAX_Q";

const NO_DLOG: u32 = u32::MAX;

/// The shape of a finite field: `q = p^v` with `p` prime.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub v: u32,
    pub q: u64,
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.q)
    }
}

/// A field element, identified by its dense index in `[0, q)`.
///
/// Elements carry no field reference; mixing elements across fields is
/// guarded at the set level, not per element.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub fn index(self) -> u64 {
        u64::from(self.0)
    }

    pub(crate) fn raw(self) -> usize {
        self.0 as usize
    }
}

/// Factor `q` as `p^v`.
pub fn parse_prime_power(q: u64) -> Result<FieldSpec> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = smallest_prime_factor(q);
    let mut rest = q;
    let mut v = 0u32;
    while rest % p == 0 {
        rest /= p;
        v += 1;
    }
    if rest != 1 {
        return Err(Error::NotPrimePower(q));
    }
    Ok(FieldSpec { p, v, q })
}

fn smallest_prime_factor(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 2;
    }
    n
}

/// Capacity limit for field construction: `POTENTSUM_MAX_Q` if set and
/// parseable, otherwise [`DEFAULT_CAPACITY`].
pub fn capacity_from_env() -> u64 {
    std::env::var(CAPACITY_ENV_VAR)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .unwrap_or(DEFAULT_CAPACITY)
}

/// A fully materialized field: canonical modulus, generator, exp/dlog tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTable {
    spec: FieldSpec,
    /// Coefficients of the monic modulus, lowest degree first, length `v + 1`.
    /// For `v = 1` this is the polynomial `x`, i.e. plain arithmetic mod `p`.
    modulus: Vec<u32>,
    generator: Element,
    /// `exp[e]` = index of `g^e`, length `q - 1`.
    exp: Vec<u32>,
    /// `dlog[i]` = exponent of element `i`, `NO_DLOG` for zero; length `q`.
    dlog: Vec<u32>,
}

/// Build the canonical table for `spec` under [`DEFAULT_CAPACITY`].
pub fn build_field(spec: FieldSpec) -> Result<FieldTable> {
    build_field_with_capacity(spec, DEFAULT_CAPACITY)
}

/// Build the canonical table for `spec`, refusing fields with `q` above
/// `capacity` (or above the `u32` index range, whichever is smaller).
pub fn build_field_with_capacity(spec: FieldSpec, capacity: u64) -> Result<FieldTable> {
    let FieldSpec { p, v, q } = spec;
    if v == 0 || p < 2 || smallest_prime_factor(p) != p || p.checked_pow(v) != Some(q) {
        return Err(Error::NotPrimePower(q));
    }
    let cap = capacity.min(u64::from(u32::MAX));
    if q > cap {
        return Err(Error::CapacityExceeded { q, limit: cap });
    }

    let modulus = find_modulus(p, v);
    let ctx = PolyCtx { p, modulus: &modulus };
    let vs = v as usize;

    let one = {
        let mut e = vec![0u32; vs];
        e[0] = 1;
        e
    };

    // Smallest-index element of multiplicative order q - 1. The order check
    // only needs g^((q-1)/l) != 1 for every prime l dividing q - 1.
    let radicals = prime_factors_distinct(q - 1);
    let mut gen_idx = 0u64;
    'candidates: for idx in 1..q {
        let digits = index_digits(idx, p, vs);
        for &l in &radicals {
            if ctx.pow(&digits, (q - 1) / l) == one {
                continue 'candidates;
            }
        }
        gen_idx = idx;
        break;
    }
    debug_assert!(gen_idx != 0, "every finite field has a generator");

    let g = index_digits(gen_idx, p, vs);
    let mut exp = vec![0u32; (q - 1) as usize];
    let mut dlog = vec![NO_DLOG; q as usize];
    let mut cur = one.clone();
    for e in 0..(q - 1) as usize {
        let idx = digits_index(&cur, p);
        debug_assert!(dlog[idx as usize] == NO_DLOG, "generator order too small");
        exp[e] = idx as u32;
        dlog[idx as usize] = e as u32;
        cur = ctx.mul(&cur, &g);
    }
    debug_assert_eq!(cur, one, "generator cycle must close after q - 1 steps");

    Ok(FieldTable {
        spec,
        modulus,
        generator: Element(gen_idx as u32),
        exp,
        dlog,
    })
}

impl FieldTable {
    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn v(&self) -> u32 {
        self.spec.v
    }

    /// Monic modulus coefficients, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> Element {
        self.generator
    }

    pub fn zero(&self) -> Element {
        Element(0)
    }

    pub fn one(&self) -> Element {
        Element(1)
    }

    /// Checked conversion of an index into an element of this field.
    pub fn element(&self, index: u64) -> Result<Element> {
        if index < self.spec.q {
            Ok(Element(index as u32))
        } else {
            Err(Error::IndexOutOfRange { index, q: self.spec.q })
        }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.spec.q as u32).map(Element)
    }

    /// Digitwise addition mod `p` on the base-`p` encodings.
    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(u64::from(a.0) < self.spec.q && u64::from(b.0) < self.spec.q);
        let p = self.spec.p as u32;
        if self.spec.v == 1 {
            let s = a.0 + b.0;
            return Element(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.spec.v {
            let (da, db) = (x % p, y % p);
            x /= p;
            y /= p;
            let mut s = da + db;
            if s >= p {
                s -= p;
            }
            out += s * place;
            place = place.wrapping_mul(p);
        }
        Element(out)
    }

    /// Additive inverse.
    pub fn neg(&self, a: Element) -> Element {
        debug_assert!(u64::from(a.0) < self.spec.q);
        let p = self.spec.p as u32;
        if self.spec.v == 1 {
            return Element(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.spec.v {
            let d = x % p;
            x /= p;
            if d != 0 {
                out += (p - d) * place;
            }
            place = place.wrapping_mul(p);
        }
        Element(out)
    }

    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// Table-driven multiplication through the exp/dlog maps.
    pub fn mul(&self, a: Element, b: Element) -> Element {
        if a.0 == 0 || b.0 == 0 {
            return Element(0);
        }
        let r = self.spec.q - 1;
        let e = (u64::from(self.dlog[a.raw()]) + u64::from(self.dlog[b.raw()])) % r;
        Element(self.exp[e as usize])
    }

    /// `a^e`, with the convention `0^0 = 1`.
    pub fn pow(&self, a: Element, e: u64) -> Element {
        if a.0 == 0 {
            return if e == 0 { Element(1) } else { Element(0) };
        }
        let r = self.spec.q - 1;
        let e = u64::from(self.dlog[a.raw()]) * (e % r) % r;
        Element(self.exp[e as usize])
    }

    /// Discrete logarithm base the canonical generator, in `[0, q - 2]`.
    pub fn dlog(&self, a: Element) -> Result<u64> {
        if a.0 == 0 {
            Err(Error::LogOfZero)
        } else {
            Ok(u64::from(self.dlog[a.raw()]))
        }
    }

    /// Unchecked dlog for hot loops; `a` must be nonzero.
    pub(crate) fn dlog_nonzero(&self, a: Element) -> u64 {
        debug_assert!(a.0 != 0);
        u64::from(self.dlog[a.raw()])
    }

    /// Index of `g^e` for `e` in `[0, q - 2]`.
    pub(crate) fn exp_raw(&self, e: u64) -> Element {
        Element(self.exp[e as usize])
    }
}

/// Lexicographically smallest monic irreducible of degree `v` over `F_p`,
/// comparing coefficient vectors lowest degree first. For `v = 1` the modulus
/// is `x`, so residues are the constants and arithmetic is plain mod `p`.
fn find_modulus(p: u64, v: u32) -> Vec<u32> {
    if v == 1 {
        return vec![0, 1];
    }
    let vs = v as usize;
    let total = p.pow(v);
    for m in 0..total {
        // Decode with c_0 as the most significant digit so ascending m
        // enumerates coefficient vectors in (c_0, c_1, ...) lex order.
        let mut f = vec![0u32; vs + 1];
        f[vs] = 1;
        let mut rest = m;
        for i in (0..vs).rev() {
            f[vs - 1 - i] = (rest / p.pow(i as u32) % p) as u32;
            rest %= p.pow(i as u32);
        }
        if is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Monic `f` of degree `v >= 2` is irreducible over `F_p` iff
/// `x^(p^v) = x (mod f)` and `gcd(x^(p^(v/l)) - x, f) = 1` for every prime
/// `l` dividing `v`.
fn is_irreducible(f: &[u32], p: u64) -> bool {
    let v = f.len() - 1;
    let ctx = PolyCtx { p, modulus: f };
    let mut x = vec![0u32; v];
    x[1] = 1;

    let frob = ctx.pow(&x, p.pow(v as u32));
    if frob != x {
        return false;
    }
    for l in prime_factors_distinct(v as u64) {
        let h = ctx.pow(&x, p.pow((v as u64 / l) as u32));
        let diff = poly_sub(&h, &x, p);
        if poly_gcd_degree(&diff, f, p) != 0 {
            return false;
        }
    }
    true
}

/// Residue arithmetic in `F_p[x] / (modulus)`. Residues are fixed-length
/// coefficient vectors of length `deg(modulus)`, lowest degree first.
struct PolyCtx<'a> {
    p: u64,
    modulus: &'a [u32],
}

impl PolyCtx<'_> {
    fn mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let v = self.modulus.len() - 1;
        let p = self.p;
        let mut buf = vec![0u64; 2 * v.max(1) - 1];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let ai = u64::from(ai);
            for (j, &bj) in b.iter().enumerate() {
                buf[i + j] = (buf[i + j] + ai * u64::from(bj)) % p;
            }
        }
        // Reduce by the monic modulus, top coefficient down.
        for i in (v..buf.len()).rev() {
            let c = buf[i];
            if c == 0 {
                continue;
            }
            buf[i] = 0;
            for (j, &fj) in self.modulus.iter().enumerate().take(v) {
                let sub = c * u64::from(fj) % p;
                buf[i - v + j] = (buf[i - v + j] + p - sub) % p;
            }
        }
        buf.iter().take(v).map(|&c| c as u32).collect()
    }

    fn pow(&self, base: &[u32], mut e: u64) -> Vec<u32> {
        let v = self.modulus.len() - 1;
        let mut acc = vec![0u32; v];
        acc[0] = 1;
        let mut b = base.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

fn poly_sub(a: &[u32], b: &[u32], p: u64) -> Vec<u32> {
    a.iter()
        .zip(b.iter())
        .map(|(&x, &y)| ((u64::from(x) + p - u64::from(y)) % p) as u32)
        .collect()
}

fn poly_degree(a: &[u32]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Degree of gcd(a, f) in `F_p[x]`; `usize::MAX` never occurs since `f != 0`.
/// The zero polynomial `a` gives `gcd = f`, i.e. `deg f`.
fn poly_gcd_degree(a: &[u32], f: &[u32], p: u64) -> usize {
    let mut x: Vec<u32> = f.to_vec();
    let mut y: Vec<u32> = a.to_vec();
    loop {
        let dy = match poly_degree(&y) {
            None => return poly_degree(&x).expect("gcd argument must be nonzero"),
            Some(d) => d,
        };
        // x mod y
        let inv = pow_mod(u64::from(y[dy]), p - 2, p);
        while let Some(dx) = poly_degree(&x) {
            if dx < dy {
                break;
            }
            let c = u64::from(x[dx]) * inv % p;
            for j in 0..=dy {
                let sub = c * u64::from(y[j]) % p;
                x[dx - dy + j] = ((u64::from(x[dx - dy + j]) + p - sub) % p) as u32;
            }
        }
        std::mem::swap(&mut x, &mut y);
    }
}

fn index_digits(idx: u64, p: u64, v: usize) -> Vec<u32> {
    let mut out = vec![0u32; v];
    let mut rest = idx;
    for d in out.iter_mut() {
        *d = (rest % p) as u32;
        rest /= p;
    }
    debug_assert_eq!(rest, 0);
    out
}

fn digits_index(digits: &[u32], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * p + u64::from(d);
    }
    out
}
