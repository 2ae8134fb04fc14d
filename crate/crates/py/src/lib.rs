//! Python bindings for the potentsum library.
//!
//! Exposes the lookup-table field type plus the search and bound helpers:
//!
//! ```python
//! import potentsum_py as ps
//! f = ps.Field(13)
//! f.potents(5)                    # [0, 1, 5, 8, 12]
//! ps.check_all(5, 200)            # [(q, k), ...] coverage pairs
//! ps.threshold_m(5)               # 25600
//! ```

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use potentsum as ps;

fn value_err(e: ps::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A finite field `F_q` with dense exp/dlog tables.
#[pyclass(frozen)]
struct Field {
    table: ps::FieldTable,
}

#[pymethods]
impl Field {
    #[new]
    fn new(q: u64) -> PyResult<Self> {
        let spec = ps::parse_prime_power(q).map_err(value_err)?;
        let table = ps::build_field_with_capacity(spec, ps::capacity_from_env())
            .map_err(value_err)?;
        Ok(Field { table })
    }

    #[getter]
    fn q(&self) -> u64 {
        self.table.q()
    }

    #[getter]
    fn p(&self) -> u64 {
        self.table.p()
    }

    #[getter]
    fn v(&self) -> u32 {
        self.table.v()
    }

    /// Index of the canonical multiplicative generator.
    #[getter]
    fn generator(&self) -> u64 {
        self.table.generator().index()
    }

    /// Coefficients of the irreducible modulus, lowest degree first.
    #[getter]
    fn modulus(&self) -> Vec<u32> {
        self.table.modulus().to_vec()
    }

    fn add(&self, a: u64, b: u64) -> PyResult<u64> {
        let (a, b) = self.pair(a, b)?;
        Ok(self.table.add(a, b).index())
    }

    fn mul(&self, a: u64, b: u64) -> PyResult<u64> {
        let (a, b) = self.pair(a, b)?;
        Ok(self.table.mul(a, b).index())
    }

    fn pow(&self, a: u64, e: u64) -> PyResult<u64> {
        let a = self.table.element(a).map_err(value_err)?;
        Ok(self.table.pow(a, e).index())
    }

    /// Discrete log base the canonical generator; raises on zero.
    fn dlog(&self, a: u64) -> PyResult<u64> {
        let a = self.table.element(a).map_err(value_err)?;
        self.table.dlog(a).map_err(value_err)
    }

    /// Indices of the n-potent set `C_n`, ascending.
    fn potents(&self, n: u64) -> PyResult<Vec<u64>> {
        let set = ps::potent_set(&self.table, n).map_err(value_err)?;
        Ok(set.indices())
    }

    /// Whether `C_m + C_n` covers the whole field.
    fn covered_by(&self, m: u64, n: u64) -> PyResult<bool> {
        let a = ps::potent_set(&self.table, m).map_err(value_err)?;
        let b = ps::potent_set(&self.table, n).map_err(value_err)?;
        let report = ps::covers(&self.table, &a, &b).map_err(value_err)?;
        Ok(report.covered)
    }

    /// Exact `S(d; q, A)` with `A = C_m`; zero iff `C_m + C_n = F_q` for
    /// `n = 1 + (q - 1) / d`.
    fn exact_s(&self, d: u64, m: u64) -> PyResult<u128> {
        let set = ps::potent_set(&self.table, m).map_err(value_err)?;
        ps::exact_s(&self.table, d, &set).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Field(q={})", self.table.q())
    }
}

impl Field {
    fn pair(&self, a: u64, b: u64) -> PyResult<(ps::Element, ps::Element)> {
        let a = self.table.element(a).map_err(value_err)?;
        let b = self.table.element(b).map_err(value_err)?;
        Ok((a, b))
    }
}

/// Validate and factor a prime power, returning `(p, v)`.
#[pyfunction]
fn parse_prime_power(q: u64) -> PyResult<(u64, u32)> {
    let spec = ps::parse_prime_power(q).map_err(value_err)?;
    Ok((spec.p, spec.v))
}

/// Smallest exponent with the same potent set: `gcd(n-1, q-1) + 1`.
#[pyfunction]
fn normalize_exponent(n: u64, q: u64) -> PyResult<u64> {
    ps::normalize_exponent(n, q).map_err(value_err)
}

/// `|C_n|` in `F_q` without building the field.
#[pyfunction]
fn potent_count(n: u64, q: u64) -> PyResult<u64> {
    ps::potent_count(n, q).map_err(value_err)
}

/// All prime powers `q <= limit`, ascending.
#[pyfunction]
fn prime_powers_up_to(limit: u64) -> Vec<u64> {
    ps::prime_powers_up_to(limit).into_iter().map(|s| s.q).collect()
}

/// All `(q, k)` with `C_m + C_k = F_q` for `q <= limit`, ordered by `(q, k)`.
#[pyfunction]
fn check_all(m: u64, limit: u64) -> PyResult<Vec<(u64, u64)>> {
    let hits = ps::check_all(m, limit).map_err(value_err)?;
    Ok(hits.into_iter().map(|h| (h.q, h.k)).collect())
}

/// All `(q, k)` with `(C_3 + C_4) + C_k = F_q` for `q <= limit`.
#[pyfunction]
fn triple_search(limit: u64) -> PyResult<Vec<(u64, u64)>> {
    let outcome = ps::triple_search(limit).map_err(value_err)?;
    Ok(outcome.hits.into_iter().map(|h| (h.q, h.k)).collect())
}

/// Weil-type lower bound for `S(d; q, A)` with `|A| = set_size`.
#[pyfunction]
fn weil_lower_bound(d: u64, set_size: u32, q: u64) -> f64 {
    ps::weil_lower_bound(d, set_size, q)
}

/// Exact predicate: the bracket `q - (2^{s-1}(s-2)+1) sqrt(q) - 2^s s` is
/// positive for `s = set_size`.
#[pyfunction]
fn weil_bound_is_positive(set_size: u32, q: u64) -> bool {
    ps::weil_bound_is_positive(set_size, q)
}

/// Smallest `M` with the bracket positive for all `q > M` by the crude
/// square bound: `(2^s s)^2`.
#[pyfunction]
fn threshold_m(set_size: u32) -> u128 {
    ps::threshold_m(set_size)
}

/// Smallest perfect square `w^2` past which the bracket stays positive.
#[pyfunction]
fn refined_square_threshold(set_size: u32) -> u128 {
    ps::refined_square_threshold(set_size)
}

#[pymodule]
fn potentsum_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_function(wrap_pyfunction!(parse_prime_power, m)?)?;
    m.add_function(wrap_pyfunction!(normalize_exponent, m)?)?;
    m.add_function(wrap_pyfunction!(potent_count, m)?)?;
    m.add_function(wrap_pyfunction!(prime_powers_up_to, m)?)?;
    m.add_function(wrap_pyfunction!(check_all, m)?)?;
    m.add_function(wrap_pyfunction!(triple_search, m)?)?;
    m.add_function(wrap_pyfunction!(weil_lower_bound, m)?)?;
    m.add_function(wrap_pyfunction!(weil_bound_is_positive, m)?)?;
    m.add_function(wrap_pyfunction!(threshold_m, m)?)?;
    m.add_function(wrap_pyfunction!(refined_square_threshold, m)?)?;
    Ok(())
}
