//! Sumset coverage tests and the exhaustive (q, k) pair search.
//!
//! The driving question: for which prime powers q does `C_m + C_k = F_q`?
//! Writing `k = d + 1` for a divisor `d` of `q - 1` loses nothing, because
//! potent sets only depend on the normalized exponent, so the per-field scan
//! walks the proper divisors of `q - 1` in ascending order.

use serde::{Deserialize, Serialize};

use crate::arith::{divisors_ascending, sieve_primes};
use crate::error::{Error, Result};
use crate::field::{build_field, Element, FieldSpec, FieldTable};
use crate::potent::{potent_set, ElementSet};

/// Cap on the number of uncovered elements listed in a [`CoverageReport`].
pub const MISSING_CAP: usize = 16;

/// Outcome of one sumset coverage test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub q: u64,
    pub left_label: String,
    pub right_label: String,
    pub covered: bool,
    /// The smallest uncovered element indices, truncated to [`MISSING_CAP`].
    pub missing: Vec<u64>,
    /// `|A + B|`, the exact number of distinct sums.
    pub sum_size: u64,
}

/// One search hit: `C_m + C_k = F_q` with `q = p^v`.
///
/// `k` is always in normalized form (`k = d + 1` with `d` a proper divisor
/// of `q - 1`). Triple-search hits set `m = 0`, since their left operand is
/// the composite set `C_3 + C_4` rather than a single potent class.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SearchHit {
    pub q: u64,
    pub p: u64,
    pub v: u32,
    pub m: u64,
    pub k: u64,
}

/// Hits plus the largest `|C_3 + C_4|` observed by [`triple_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleOutcome {
    pub hits: Vec<SearchHit>,
    pub max_left_size: u64,
}

/// Word-packed occupancy table over element indices.
struct Occupancy {
    words: Vec<u64>,
    len: usize,
}

impl Occupancy {
    fn new(len: usize) -> Self {
        Occupancy {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    /// Marks `i`; returns true when it was not yet set.
    fn insert(&mut self, i: usize) -> bool {
        let (w, b) = (i / 64, 1u64 << (i % 64));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn first_clear(&self, cap: usize) -> Vec<u64> {
        let mut out = Vec::new();
        for i in 0..self.len {
            if !self.contains(i) {
                out.push(i as u64);
                if out.len() == cap {
                    break;
                }
            }
        }
        out
    }
}

fn check_same_field(field: &FieldTable, set: &ElementSet) -> Result<()> {
    if field.spec() != set.spec() {
        return Err(Error::FieldMismatch(field.q(), set.spec().q));
    }
    Ok(())
}

/// The full sumset `A + B` as an element set labelled `"A+B"`.
pub fn sumset(field: &FieldTable, a: &ElementSet, b: &ElementSet) -> Result<ElementSet> {
    check_same_field(field, a)?;
    check_same_field(field, b)?;
    let q = field.q() as usize;
    let mut occ = Occupancy::new(q);
    for &x in a.members() {
        for &y in b.members() {
            occ.insert(field.add(x, y).raw());
        }
    }
    let members: Vec<Element> = field.elements().filter(|e| occ.contains(e.raw())).collect();
    Ok(ElementSet::new(
        field.spec(),
        members,
        format!("{}+{}", a.label(), b.label()),
    ))
}

/// Does `A + B` cover all of `F_q`? Iterates the smaller set in the outer
/// loop and stops as soon as the occupancy table fills.
pub fn covers(field: &FieldTable, a: &ElementSet, b: &ElementSet) -> Result<CoverageReport> {
    check_same_field(field, a)?;
    check_same_field(field, b)?;
    let q = field.q() as usize;
    let (outer, inner) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut occ = Occupancy::new(q);
    let mut count = 0usize;
    'fill: for &x in outer.members() {
        for &y in inner.members() {
            if occ.insert(field.add(x, y).raw()) {
                count += 1;
                if count == q {
                    break 'fill;
                }
            }
        }
    }
    let covered = count == q;
    Ok(CoverageReport {
        q: field.q(),
        left_label: a.label().to_string(),
        right_label: b.label().to_string(),
        covered,
        missing: if covered { Vec::new() } else { occ.first_clear(MISSING_CAP) },
        sum_size: count as u64,
    })
}

/// Scan one field: for every proper divisor `d` of `q - 1` (including 1),
/// test whether `C_m + C_(d+1)` covers `F_q`, and return the hits in
/// ascending `k` order.
///
/// A cardinality prefilter skips pairs with `|C_m| * |C_k| < q`: every
/// element needs at least one representation as a sum, so the product bound
/// is a true necessary condition and never prunes a hit.
pub fn check_one(field: &FieldTable, m: u64) -> Result<Vec<SearchHit>> {
    if m < 2 {
        return Err(Error::InvalidExponent(m));
    }
    let q = field.q();
    let spec = field.spec();
    let cm = potent_set(field, m)?;
    let mut hits = Vec::new();
    for d in divisors_ascending(q - 1) {
        if d == q - 1 {
            continue;
        }
        let k = d + 1;
        // |C_k| = d + 1 because d divides q - 1.
        if (cm.len() as u64).saturating_mul(d + 1) < q {
            continue;
        }
        let ck = potent_set(field, k)?;
        if covers(field, &cm, &ck)?.covered {
            hits.push(SearchHit {
                q,
                p: spec.p,
                v: spec.v,
                m,
                k,
            });
        }
    }
    Ok(hits)
}

/// All prime powers `q <= limit`, ascending, with their factorizations.
pub fn prime_powers_up_to(limit: u64) -> Vec<FieldSpec> {
    let mut out = Vec::new();
    for p in sieve_primes(limit) {
        let mut q = p;
        let mut v = 1u32;
        while q <= limit {
            out.push(FieldSpec { p, v, q });
            match q.checked_mul(p) {
                Some(next) => q = next,
                None => break,
            }
            v += 1;
        }
    }
    out.sort_unstable_by_key(|s| s.q);
    out
}

/// Run [`check_one`] over every prime power `q <= limit`, sequentially.
/// Hits come back ordered by `(q, k)`.
///
/// For parallel execution with persistence and checkpointing, see
/// [`crate::search::run_search`]; its output is identical.
pub fn check_all(m: u64, limit: u64) -> Result<Vec<SearchHit>> {
    if m < 2 {
        return Err(Error::InvalidExponent(m));
    }
    let mut hits = Vec::new();
    for spec in prime_powers_up_to(limit) {
        let field = build_field(spec)?;
        hits.extend(check_one(&field, m)?);
    }
    Ok(hits)
}

/// The counting obstruction at `d = m`: when both `m - 1` and `m` divide
/// `q - 1` and `n = 1 + (q - 1)/m`, the translates `C_n + a` for `a` in
/// `C_m` overlap enough that their union has at most `q - 1` elements, so
/// coverage must fail. Runs the coverage test and returns its report.
///
/// # Panics
///
/// Panics if the computed sumset exceeds `q - 1` elements, which the
/// counting argument rules out.
pub fn exclusion_d_eq_m(field: &FieldTable, m: u64) -> Result<CoverageReport> {
    if m < 2 {
        return Err(Error::InvalidExponent(m));
    }
    let q = field.q();
    if (q - 1) % (m - 1) != 0 {
        return Err(Error::PreconditionViolated(format!(
            "m - 1 = {} must divide q - 1 = {}",
            m - 1,
            q - 1
        )));
    }
    if (q - 1) % m != 0 {
        return Err(Error::PreconditionViolated(format!(
            "m = {m} must divide q - 1 = {}",
            q - 1
        )));
    }
    let n = 1 + (q - 1) / m;
    let cm = potent_set(field, m)?;
    let cn = potent_set(field, n)?;
    let report = covers(field, &cm, &cn)?;
    assert!(
        report.sum_size <= q - 1,
        "counting bound violated for q={q}, m={m}: |C_{m}+C_{n}| = {}",
        report.sum_size
    );
    Ok(report)
}

/// Per-field scan for the triple problem: is every element a sum of a
/// 3-potent, a 4-potent and a k-potent? Returns the hits (with `m = 0`)
/// and `|C_3 + C_4|`.
pub(crate) fn triple_one(field: &FieldTable) -> Result<(Vec<SearchHit>, u64)> {
    let q = field.q();
    let spec = field.spec();
    let c3 = potent_set(field, 3)?;
    let c4 = potent_set(field, 4)?;
    let a = sumset(field, &c3, &c4)?;
    // 0 and 1 lie in both C_3 and C_4, which forces two coincidences among
    // the at most 3 * 4 pairwise sums.
    assert!(a.len() <= 10, "|C_3 + C_4| = {} exceeds 10 in F_{q}", a.len());
    let mut hits = Vec::new();
    for d in divisors_ascending(q - 1) {
        if d == q - 1 {
            continue;
        }
        let k = d + 1;
        if (a.len() as u64).saturating_mul(d + 1) < q {
            continue;
        }
        let ck = potent_set(field, k)?;
        if covers(field, &a, &ck)?.covered {
            hits.push(SearchHit {
                q,
                p: spec.p,
                v: spec.v,
                m: 0,
                k,
            });
        }
    }
    Ok((hits, a.len() as u64))
}

/// Scan all prime powers `q <= limit` for coverage by `C_3 + C_4 + C_k`.
pub fn triple_search(limit: u64) -> Result<TripleOutcome> {
    let mut hits = Vec::new();
    let mut max_left_size = 0;
    for spec in prime_powers_up_to(limit) {
        let field = build_field(spec)?;
        let (h, size) = triple_one(&field)?;
        hits.extend(h);
        max_left_size = max_left_size.max(size);
    }
    Ok(TripleOutcome {
        hits,
        max_left_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse_prime_power;

    fn field(q: u64) -> FieldTable {
        build_field(parse_prime_power(q).unwrap()).unwrap()
    }

    #[test]
    fn sumset_basics() {
        let f = field(5);
        let e = |i: u64| f.element(i).unwrap();
        let ab = ElementSet::new(f.spec(), vec![e(0), e(1)], "A");
        let s = sumset(&f, &ab, &ab).unwrap();
        assert_eq!(s.indices(), vec![0, 1, 2]);
        assert_eq!(s.label(), "A+A");
        let zero = ElementSet::new(f.spec(), vec![e(0)], "Z");
        let shifted = sumset(&f, &ab, &zero).unwrap();
        assert_eq!(shifted.indices(), ab.indices());
    }

    #[test]
    fn sumset_c5_c5_fills_f13() {
        let f = field(13);
        let c5 = potent_set(&f, 5).unwrap();
        let s = sumset(&f, &c5, &c5).unwrap();
        assert_eq!(s.len(), 13);
    }

    #[test]
    fn sumset_c5_c2_in_f13_has_8_elements() {
        let f = field(13);
        let c5 = potent_set(&f, 5).unwrap();
        let c2 = potent_set(&f, 2).unwrap();
        let s = sumset(&f, &c5, &c2).unwrap();
        assert_eq!(s.len(), 8);
    }

    #[test]
    fn covers_examples() {
        let f = field(13);
        let c5 = potent_set(&f, 5).unwrap();
        let c7 = potent_set(&f, 7).unwrap();
        let c2 = potent_set(&f, 2).unwrap();
        let r = covers(&f, &c5, &c7).unwrap();
        assert!(r.covered);
        assert_eq!(r.sum_size, 13);
        assert!(r.missing.is_empty());
        assert_eq!(r.left_label, "C_5");
        assert_eq!(r.right_label, "C_7");
        let r = covers(&f, &c5, &c2).unwrap();
        assert!(!r.covered);
        assert_eq!(r.sum_size, 8);
        assert!(!r.missing.is_empty());
    }

    #[test]
    fn missing_elements_are_genuinely_uncovered() {
        let f = field(37);
        let c5 = potent_set(&f, 5).unwrap();
        let c19 = potent_set(&f, 19).unwrap();
        let r = covers(&f, &c5, &c19).unwrap();
        assert!(!r.covered);
        assert!(!r.missing.is_empty() && r.missing.len() <= MISSING_CAP);
        for &g in &r.missing {
            let g = f.element(g).unwrap();
            for &a in c5.members() {
                assert!(!c19.contains(f.sub(g, a)), "claimed-missing element is covered");
            }
        }
    }

    #[test]
    fn covers_rejects_foreign_sets() {
        let f13 = field(13);
        let f17 = field(17);
        let c5 = potent_set(&f13, 5).unwrap();
        let c5_17 = potent_set(&f17, 5).unwrap();
        assert!(matches!(
            covers(&f13, &c5, &c5_17),
            Err(Error::FieldMismatch(13, 17))
        ));
        assert!(matches!(
            sumset(&f17, &c5, &c5_17),
            Err(Error::FieldMismatch(17, 13))
        ));
    }

    #[test]
    fn check_one_examples() {
        let ks = |q: u64, m: u64| -> Vec<u64> {
            check_one(&field(q), m)
                .unwrap()
                .iter()
                .map(|h| h.k)
                .collect()
        };
        assert_eq!(ks(13, 5), vec![5, 7]);
        assert_eq!(ks(3, 5), vec![2]);
        assert_eq!(ks(37, 5), Vec::<u64>::new());
        assert_eq!(ks(7, 3), vec![4]);
    }

    #[test]
    fn check_one_reports_normalized_k_and_field_shape() {
        let hits = check_one(&field(9), 5).unwrap();
        assert_eq!(hits.len(), 2);
        for h in &hits {
            assert_eq!((h.q, h.p, h.v, h.m), (9, 3, 2, 5));
            assert_eq!((q_gcd(h.k - 1, h.q - 1)) + 1, h.k, "k is normalized");
            assert!((h.q - 1) % (h.k - 1) == 0);
        }
        assert_eq!(hits[0].k, 3);
        assert_eq!(hits[1].k, 5);
    }

    fn q_gcd(a: u64, b: u64) -> u64 {
        crate::arith::gcd(a, b)
    }

    #[test]
    fn check_all_tiny_limits() {
        assert!(check_all(5, 2).unwrap().is_empty());
        let hits = check_all(5, 10).unwrap();
        let pairs: Vec<(u64, u64)> = hits.iter().map(|h| (h.q, h.k)).collect();
        assert_eq!(pairs, vec![(3, 2), (5, 2), (5, 3), (7, 4), (9, 3), (9, 5)]);
    }

    #[test]
    fn check_all_rejects_bad_exponent() {
        assert!(matches!(check_all(1, 100), Err(Error::InvalidExponent(1))));
    }

    #[test]
    fn prime_power_enumeration() {
        let qs: Vec<u64> = prime_powers_up_to(10).iter().map(|s| s.q).collect();
        assert_eq!(qs, vec![2, 3, 4, 5, 7, 8, 9]);
        let specs = prime_powers_up_to(130);
        let qs: Vec<u64> = specs.iter().map(|s| s.q).collect();
        for expected in [121, 125, 128] {
            assert!(qs.contains(&expected));
        }
        assert!(qs.windows(2).all(|w| w[0] < w[1]));
        for s in &specs {
            assert_eq!(s.p.pow(s.v), s.q);
        }
        assert!(prime_powers_up_to(1).is_empty());
    }

    #[test]
    fn exclusion_examples() {
        // q = 41, m = 5: n = 9, union capped at q - 1.
        let r = exclusion_d_eq_m(&field(41), 5).unwrap();
        assert!(!r.covered);
        assert_eq!(r.sum_size, 29);
        let r = exclusion_d_eq_m(&field(61), 5).unwrap();
        assert!(!r.covered);
        assert_eq!(r.sum_size, 37);
        let r = exclusion_d_eq_m(&field(13), 3).unwrap();
        assert!(!r.covered);
        assert_eq!(r.sum_size, 11);
    }

    #[test]
    fn exclusion_preconditions() {
        // q = 13, m = 5: 5 does not divide 12.
        assert!(matches!(
            exclusion_d_eq_m(&field(13), 5),
            Err(Error::PreconditionViolated(_))
        ));
        // q = 8, m = 3: 2 divides 7? No - m - 1 = 2 fails first.
        assert!(matches!(
            exclusion_d_eq_m(&field(8), 3),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn triple_left_size_is_capped() {
        for spec in prime_powers_up_to(100) {
            let f = build_field(spec).unwrap();
            let (_, size) = triple_one(&f).unwrap();
            assert!(size <= 10, "q = {}", spec.q);
        }
    }

    #[test]
    fn triple_search_small() {
        let out = triple_search(20).unwrap();
        let pairs: Vec<(u64, u64)> = out.hits.iter().map(|h| (h.q, h.k)).collect();
        assert_eq!(
            pairs,
            vec![
                (3, 2),
                (4, 2),
                (5, 2),
                (5, 3),
                (7, 2),
                (7, 3),
                (7, 4),
                (9, 5),
                (11, 6),
                (13, 4),
                (13, 5),
                (13, 7),
                (17, 9),
                (19, 7),
                (19, 10)
            ]
        );
        assert!(out.hits.iter().all(|h| h.m == 0));
        assert_eq!(out.max_left_size, 10);
    }
}
