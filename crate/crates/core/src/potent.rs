//! Potent sets `C_n = { x in F_q : x^n = x }`.
//!
//! For `n >= 2`, `C_n` is `{0}` together with the unique multiplicative
//! subgroup of order `gcd(n - 1, q - 1)`, so everything about `C_n` is
//! controlled by the normalized exponent `n0 = gcd(n - 1, q - 1) + 1`.

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::field::{Element, FieldSpec, FieldTable};

/// A finite, sorted set of elements from one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementSet {
    spec: FieldSpec,
    members: Vec<Element>,
    label: String,
}

impl ElementSet {
    /// Build a set from arbitrary members; sorts and deduplicates.
    pub fn new(spec: FieldSpec, mut members: Vec<Element>, label: impl Into<String>) -> Self {
        members.sort_unstable();
        members.dedup();
        ElementSet {
            spec,
            members,
            label: label.into(),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    /// Members in ascending index order.
    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn contains(&self, e: Element) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    /// Member indices, ascending.
    pub fn indices(&self) -> Vec<u64> {
        self.members.iter().map(|e| e.index()).collect()
    }
}

/// The canonical exponent with the same potent set: `gcd(n - 1, q - 1) + 1`.
pub fn normalize_exponent(n: u64, q: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidExponent(n));
    }
    Ok(gcd(n - 1, q - 1) + 1)
}

/// `|C_n|` over `F_q`, i.e. `gcd(n - 1, q - 1) + 1`, without building tables.
pub fn potent_count(n: u64, q: u64) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidExponent(n));
    }
    Ok(gcd(n - 1, q - 1) + 1)
}

/// Materialize `C_n` inside `field`. The nonzero part is the subgroup
/// `{ x : dlog(x) * (n - 1) = 0 mod q - 1 }`, enumerated from the exp table.
pub fn potent_set(field: &FieldTable, n: u64) -> Result<ElementSet> {
    if n < 2 {
        return Err(Error::InvalidExponent(n));
    }
    let q = field.q();
    let t = gcd(n - 1, q - 1);
    let step = (q - 1) / t;
    let mut members = Vec::with_capacity(t as usize + 1);
    members.push(field.zero());
    for j in 0..t {
        members.push(field.exp_raw(j * step));
    }
    Ok(ElementSet::new(field.spec(), members, format!("C_{n}")))
}
