//! Cross-checks of the table-driven implementation against brute-force
//! reimplementations that share no code with it.

mod common;

use potentsum::{
    build_field, check_one, covers, exact_s, parse_prime_power, potent_set, prime_powers_up_to,
    triple_search, FieldTable,
};

use common::{
    brute_covers, brute_exact_s, brute_potents, indices, naive_add, naive_mul, naive_pow,
    SplitMix,
};

fn field(q: u64) -> FieldTable {
    build_field(parse_prime_power(q).unwrap()).unwrap()
}

#[test]
fn arithmetic_matches_naive_polynomials() {
    // Exhaustive on every prime power up to 64, plus the larger fields the
    // published pair list depends on.
    let mut qs: Vec<u64> = prime_powers_up_to(64).iter().map(|s| s.q).collect();
    qs.extend([81, 121, 125, 128]);
    for q in qs {
        let f = field(q);
        for a in 0..q {
            for b in 0..q {
                let ea = f.element(a).unwrap();
                let eb = f.element(b).unwrap();
                assert_eq!(f.add(ea, eb).index(), naive_add(&f, a, b), "add {a}+{b} in F_{q}");
                assert_eq!(f.mul(ea, eb).index(), naive_mul(&f, a, b), "mul {a}*{b} in F_{q}");
            }
        }
    }
}

#[test]
fn pow_matches_naive_square_and_multiply() {
    let mut rng = SplitMix(0x9d8a_7d31);
    for q in [9u64, 13, 27, 32, 49, 121, 169] {
        let f = field(q);
        for _ in 0..200 {
            let a = rng.below(q);
            let e = rng.below(3 * q);
            let ea = f.element(a).unwrap();
            assert_eq!(f.pow(ea, e).index(), naive_pow(&f, a, e), "{a}^{e} in F_{q}");
        }
    }
}

#[test]
fn potent_sets_match_brute_force() {
    for spec in prime_powers_up_to(81) {
        let f = field(spec.q);
        for n in 2..=spec.q {
            let fast = potent_set(&f, n).unwrap();
            assert_eq!(fast.indices(), brute_potents(&f, n), "C_{n} in F_{}", spec.q);
        }
    }
}

#[test]
fn coverage_matches_brute_force() {
    let mut rng = SplitMix(0x51ce_b00c);
    let qs: Vec<u64> = prime_powers_up_to(81).iter().map(|s| s.q).collect();
    for _ in 0..150 {
        let q = qs[rng.below(qs.len() as u64) as usize];
        let f = field(q);
        let m = 2 + rng.below(q - 1);
        let k = 2 + rng.below(q - 1);
        let a = potent_set(&f, m).unwrap();
        let b = potent_set(&f, k).unwrap();
        let report = covers(&f, &a, &b).unwrap();
        let brute = brute_covers(&f, &indices(a.members()), &indices(b.members()));
        assert_eq!(report.covered, brute, "C_{m} + C_{k} in F_{q}");
        if !report.covered {
            // Reported witnesses must truly miss every pairwise sum.
            for &miss in &report.missing {
                for &x in &indices(a.members()) {
                    for &y in &indices(b.members()) {
                        assert_ne!(naive_add(&f, x, y), miss);
                    }
                }
            }
        }
    }
}

#[test]
fn exact_s_matches_brute_force() {
    for q in [13u64, 17, 25, 29, 37, 41] {
        let f = field(q);
        let c5 = potent_set(&f, 5).unwrap();
        for d in [2u64, 3, 4] {
            if (q - 1) % d != 0 {
                continue;
            }
            let fast = exact_s(&f, d, &c5).unwrap();
            let brute = brute_exact_s(&f, d, &indices(c5.members()));
            assert_eq!(fast, brute, "S({d}; {q}, C_5)");
        }
    }
}

#[test]
fn prefilter_never_prunes_a_hit() {
    // check_one skips (m, k) with |C_m| * |C_k| < q before building sumsets;
    // replaying the same divisor walk with plain coverage tests must agree.
    for spec in prime_powers_up_to(500) {
        let f = field(spec.q);
        let hits = check_one(&f, 5).unwrap();
        let mut unfiltered = Vec::new();
        let c5 = potent_set(&f, 5).unwrap();
        let mut d = 1;
        while d < spec.q - 1 {
            if (spec.q - 1) % d == 0 {
                let k = d + 1;
                let ck = potent_set(&f, k).unwrap();
                if covers(&f, &c5, &ck).unwrap().covered {
                    unfiltered.push((spec.q, k));
                }
            }
            d += 1;
        }
        let filtered: Vec<(u64, u64)> = hits.iter().map(|h| (h.q, h.k)).collect();
        assert_eq!(filtered, unfiltered, "q = {}", spec.q);
    }
}

#[test]
fn triple_hits_up_to_200_are_frozen() {
    let expected: Vec<(u64, u64)> = vec![
        (3, 2), (4, 2), (5, 2), (5, 3), (7, 2), (7, 3), (7, 4), (9, 5), (11, 6), (13, 4),
        (13, 5), (13, 7), (17, 9), (19, 7), (19, 10), (25, 9), (25, 13), (29, 15), (31, 11),
        (31, 16), (37, 13), (37, 19), (43, 22), (49, 13), (49, 17), (49, 25), (61, 31),
        (67, 34), (73, 25), (73, 37), (79, 27), (79, 40), (97, 25), (97, 49), (103, 52),
        (109, 55), (121, 41), (121, 61), (127, 43), (127, 64), (151, 76), (157, 79),
        (163, 55), (163, 82), (169, 85), (181, 61), (181, 91), (193, 97), (199, 100),
    ];
    let outcome = triple_search(200).unwrap();
    let got: Vec<(u64, u64)> = outcome.hits.iter().map(|h| (h.q, h.k)).collect();
    assert_eq!(got, expected);
    assert_eq!(outcome.max_left_size, 10);
    assert!(outcome.hits.iter().all(|h| h.m == 0));
}
