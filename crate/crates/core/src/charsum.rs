//! Exact character sums certifying coverage, and square-root lower bounds.
//!
//! For a divisor `d >= 2` of `q - 1`, the weight
//!
//! ```text
//! lambda(x) = d - 1   if x = 0
//!           = 0       if x is a nonzero d-th power
//!           = d       otherwise
//! ```
//!
//! is `(d - 1) - sum_{i=1}^{d-1} chi(x^i)` for a multiplicative character
//! `chi` of order `d`, but only ever takes the integer values above, so all
//! sums here are computed exactly over the integers via discrete logarithms.
//! No complex arithmetic is involved except in [`char_sum_modulus`], which
//! exists to sanity-check the square-root cancellation numerically.
//!
//! The headline identity: with `n = 1 + (q - 1)/d`,
//! `S(d; q, A) = sum_{g not in A} prod_{a in A} lambda(g - a)` vanishes
//! exactly when every element of `F_q` is an element of `A` plus an
//! `n`-potent.

use crate::error::{Error, Result};
use crate::field::{Element, FieldTable};
use crate::potent::ElementSet;

/// Exact character-sum evaluation paired with its square-root lower bound.
#[derive(Clone, Debug, PartialEq)]
pub struct CharSumReport {
    pub q: u64,
    pub d: u64,
    pub set_label: String,
    pub exact_value: u128,
    pub lower_bound: f64,
    pub slack: f64,
}

fn check_order(field: &FieldTable, d: u64) -> Result<()> {
    let qm1 = field.q() - 1;
    if d < 2 || qm1 % d != 0 {
        return Err(Error::BadOrder { d, qm1 });
    }
    Ok(())
}

/// `lambda(x)` for the character order `d`; see the module docs.
pub fn lambda_value(field: &FieldTable, d: u64, x: Element) -> Result<u64> {
    check_order(field, d)?;
    Ok(lambda_raw(field, d, x))
}

fn lambda_raw(field: &FieldTable, d: u64, x: Element) -> u64 {
    if x.index() == 0 {
        d - 1
    } else if field.dlog_nonzero(x) % d == 0 {
        0
    } else {
        d
    }
}

/// The exact sum `S(d; q, A) = sum_{g in F_q \ A} prod_{a in A} lambda(g - a)`.
///
/// Every term is a product of `|A|` values bounded by `d`, accumulated in
/// 128 bits with overflow checks. [`Error::Overflow`] signals that the exact
/// value genuinely exceeds the accumulator — in particular the true sum is
/// then nonzero, since zero terms are detected before any multiplication.
pub fn exact_s(field: &FieldTable, d: u64, a: &ElementSet) -> Result<u128> {
    check_order(field, d)?;
    if field.spec() != a.spec() {
        return Err(Error::FieldMismatch(field.q(), a.spec().q));
    }
    if a.is_empty() {
        return Err(Error::PreconditionViolated(
            "exact_s needs a nonempty set".into(),
        ));
    }
    let negs: Vec<Element> = a.members().iter().map(|&x| field.neg(x)).collect();
    let mut total: u128 = 0;
    'terms: for g in field.elements() {
        if a.contains(g) {
            continue;
        }
        // Establish that no factor vanishes before multiplying anything, so
        // an overflow always means a genuinely nonzero oversized term and
        // never masks a term that a later zero factor would have killed.
        for &na in &negs {
            if lambda_raw(field, d, field.add(g, na)) == 0 {
                continue 'terms;
            }
        }
        let mut prod: u128 = 1;
        for &na in &negs {
            let lam = lambda_raw(field, d, field.add(g, na));
            prod = prod.checked_mul(lam as u128).ok_or(Error::Overflow)?;
        }
        total = total.checked_add(prod).ok_or(Error::Overflow)?;
    }
    Ok(total)
}

/// Exact sum, square-root lower bound, and their gap, in one report.
pub fn char_sum_report(field: &FieldTable, d: u64, a: &ElementSet) -> Result<CharSumReport> {
    let exact_value = exact_s(field, d, a)?;
    let lower_bound = weil_lower_bound(d, a.len() as u32, field.q());
    Ok(CharSumReport {
        q: field.q(),
        d,
        set_label: a.label().to_string(),
        exact_value,
        lower_bound,
        slack: exact_value as f64 - lower_bound,
    })
}

/// The square-root lower bound
/// `(d-1)^s * (q - (2^(s-1) (s-2) + 1) sqrt(q) - 2^s s)`
/// on `S(d; q, A)` for `|A| = s`.
pub fn weil_lower_bound(d: u64, set_size: u32, q: u64) -> f64 {
    let s = set_size as f64;
    let pow2 = 2f64.powi(set_size as i32);
    let c = pow2 / 2.0 * (s - 2.0) + 1.0;
    let t = pow2 * s;
    let lead = ((d - 1) as f64).powi(set_size as i32);
    lead * (q as f64 - c * (q as f64).sqrt() - t)
}

/// Exact-integer sign of the bracket in [`weil_lower_bound`]: positive iff
/// `q > 2^s s` and `(q - 2^s s)^2 > (2^(s-1) (s-2) + 1)^2 q`. Decides bound
/// positivity with no floating-point error at the boundary.
pub fn weil_bound_is_positive(set_size: u32, q: u64) -> bool {
    assert!(
        (1..=56).contains(&set_size),
        "set size {set_size} outside supported range"
    );
    let s = i128::from(set_size);
    let t = (1i128 << set_size) * s;
    let c = (1i128 << (set_size - 1)) * (s - 2) + 1;
    let q = i128::from(q);
    q > t && (q - t) * (q - t) > c * c * q
}

/// The generic admissible threshold `M = (2^s s)^2`: the bracket is positive
/// for every `q > M`.
pub fn threshold_m(set_size: u32) -> u128 {
    assert!(
        (1..=56).contains(&set_size),
        "set size {set_size} outside supported range"
    );
    let base = (1u128 << set_size) * u128::from(set_size);
    base * base
}

/// The sharpest square threshold the exact coefficients allow: `w^2` for the
/// smallest integer `w` with `w^2 - (2^(s-1) (s-2) + 1) w - 2^s s > 0`.
/// For `set_size = 5` this is `53^2 = 2809`.
pub fn refined_square_threshold(set_size: u32) -> u128 {
    assert!(
        (1..=56).contains(&set_size),
        "set size {set_size} outside supported range"
    );
    let s = i128::from(set_size);
    let t = (1i128 << set_size) * s;
    let c = (1i128 << (set_size - 1)) * (s - 2) + 1;
    let mut w: i128 = 1;
    while w * w - c * w - t <= 0 {
        w += 1;
    }
    (w * w) as u128
}

/// `|sum over g with f(g) != 0 of chi(f(g))|` for `f = prod (x - root)` and
/// the canonical character `chi` of order `d`, evaluated numerically.
///
/// Counts each residue class of `dlog(f(g)) mod d` exactly, then takes the
/// modulus of the corresponding sum of `d`-th roots of unity.
pub fn char_sum_modulus(field: &FieldTable, d: u64, roots: &[Element]) -> Result<f64> {
    check_order(field, d)?;
    if roots.is_empty() {
        return Err(Error::PreconditionViolated(
            "char_sum_modulus needs at least one root".into(),
        ));
    }
    let mut sorted: Vec<Element> = roots.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateRoots);
    }
    for &r in roots {
        if r.index() >= field.q() {
            return Err(Error::IndexOutOfRange {
                index: r.index(),
                q: field.q(),
            });
        }
    }

    let negs: Vec<Element> = roots.iter().map(|&x| field.neg(x)).collect();
    let qm1 = field.q() - 1;
    let mut counts = vec![0u64; d as usize];
    'outer: for g in field.elements() {
        let mut dlog_sum = 0u64;
        for &nr in &negs {
            let x = field.add(g, nr);
            if x.index() == 0 {
                continue 'outer; // f(g) = 0: the term is dropped
            }
            dlog_sum = (dlog_sum + field.dlog_nonzero(x)) % qm1;
        }
        // d | q - 1, so reducing mod q - 1 first preserves the class mod d.
        counts[(dlog_sum % d) as usize] += 1;
    }

    let tau = std::f64::consts::TAU;
    let (mut re, mut im) = (0f64, 0f64);
    for (j, &c) in counts.iter().enumerate() {
        let angle = tau * j as f64 / d as f64;
        re += c as f64 * angle.cos();
        im += c as f64 * angle.sin();
    }
    Ok((re * re + im * im).sqrt())
}
