//! Sums of potent elements in finite fields.
//!
//! An element `x` of `F_q` is *n-potent* when `x^n = x`; the n-potents form
//! `C_n = {0} ∪ H` for the subgroup `H` of order `gcd(n-1, q-1)`. This crate
//! classifies the prime powers `q` where every field element is a sum of an
//! m-potent and an n-potent, and exactly evaluates the character sums whose
//! vanishing is equivalent to that coverage:
//!
//! * dense lookup-table fields `F_{p^v}` with discrete-log tables
//!   ([`build_field`]),
//! * potent sets and sumset coverage tests ([`potent_set`], [`check_one`],
//!   [`check_all`], [`triple_search`]),
//! * the exact sum `S(d; q, A)` and its Weil-type lower bound
//!   ([`exact_s`], [`weil_lower_bound`], [`threshold_m`]),
//! * resumable, checkpointed search runs with JSON-lines output
//!   ([`run_search`]).

mod arith;
mod charsum;
mod coverage;
mod error;
mod field;
mod potent;
mod record;
mod search;

pub use charsum::{
    char_sum_modulus, char_sum_report, exact_s, lambda_value, refined_square_threshold,
    threshold_m, weil_bound_is_positive, weil_lower_bound, CharSumReport,
};
pub use coverage::{
    check_all, check_one, covers, exclusion_d_eq_m, prime_powers_up_to, sumset, triple_search,
    CoverageReport, SearchHit, TripleOutcome,
};
pub use error::{Error, Result};
pub use field::{
    build_field, build_field_with_capacity, capacity_from_env, parse_prime_power, Element,
    FieldSpec, FieldTable, CAPACITY_ENV_VAR, DEFAULT_CAPACITY,
};
pub use potent::{normalize_exponent, potent_count, potent_set, ElementSet};
pub use record::{read_records, Checkpoint, RecordKind, ResultRecord};
pub use search::{
    checkpoint_path, command_fingerprint, csv_path, run_search, write_csv, SearchConfig,
    SearchKind, SearchOutcome,
};
