//! Python bindings. Exact integers cross the boundary as Python `int`, exact
//! rationals as `fractions.Fraction`.

use num_bigint::BigInt;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use involutions::asymptotic::{self, BetaSource};
use involutions::cyclecount::{self, CycleIndexPoly};
use involutions::oracle::{self, CycleCensus};
use involutions::{involution, partialsum, valuation, verify, Partition};

fn py_err(e: involutions::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// `I(n)`, the number of involutions of `n` points.
#[pyfunction]
fn involution_number(n: u64) -> BigInt {
    involution::involution_number(n)
}

/// Coefficients of `I(n; t)` by number of fixed points, constant term first.
#[pyfunction]
fn involution_poly(n: u64) -> Vec<BigInt> {
    involution::involution_poly(n).coeffs().to_vec()
}

/// `a(n) = I(0) + ... + I(n)`.
#[pyfunction]
fn partial_sum(n: u64) -> BigInt {
    partialsum::partial_sum(n)
}

#[pyfunction]
fn b_k(k: u64) -> BigRational {
    partialsum::b_k(k)
}

/// Number of permutations of `n` points with every cycle of length at most `l`.
#[pyfunction]
fn restricted_count(n: u64, l: usize) -> BigInt {
    cyclecount::restricted_count(n, l)
}

/// `p`-adic valuation of an integer.
#[pyfunction]
fn nu(x: BigInt, p: u64) -> PyResult<u64> {
    involutions::exactnum::nu_int(&x, p).map_err(py_err)
}

#[pyfunction]
fn nu2_involution(n: u64) -> u64 {
    valuation::nu2_involution(n)
}

#[pyfunction]
fn nu2_partial_sum(n: u64) -> u64 {
    valuation::nu2_partial_sum(n)
}

#[pyfunction]
fn is_efficient(p: u64) -> PyResult<bool> {
    valuation::is_efficient(p).map_err(py_err)
}

#[pyfunction]
fn inefficient_primes(bound: u64) -> Vec<u64> {
    valuation::inefficient_primes_upto(bound)
}

/// First `n <= n_max` with `I(n + p^r) != I(n) mod p^r`, or `None`.
#[pyfunction]
fn periodicity_counterexample(p: u64, r: u32, n_max: u64) -> PyResult<Option<u64>> {
    valuation::periodicity_counterexample(p, r, n_max).map_err(py_err)
}

/// The cycle-index polynomial over cycle types with parts at most `l`.
#[pyclass(name = "CycleIndex", frozen)]
struct PyCycleIndex(CycleIndexPoly);

#[pymethods]
impl PyCycleIndex {
    #[new]
    fn new(n: u64, l: usize) -> Self {
        Self(cyclecount::cycle_index_poly(n, l))
    }

    /// Same polynomial computed as a determinant.
    #[staticmethod]
    fn from_determinant(n: u64, l: usize) -> PyResult<Self> {
        cyclecount::toeplitz_determinant(n, l).map(Self).map_err(py_err)
    }

    /// Map from exponent tuples `(e_1, ..., e_l)` to coefficients.
    fn terms<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let d = PyDict::new(py);
        for (e, c) in self.0.terms() {
            d.set_item(PyTuple::new(py, e)?, c)?;
        }
        Ok(d)
    }

    fn coefficient(&self, exponents: Vec<u32>) -> BigInt {
        self.0.coefficient(&exponents)
    }

    /// Value with every variable set to 1.
    fn total(&self) -> BigInt {
        self.0.sum_of_coefficients()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CycleIndex({})", self.0)
    }
}

/// Permutation counts by cycle type.
#[pyclass(name = "Census", frozen)]
struct PyCensus(CycleCensus);

#[pymethods]
impl PyCensus {
    /// Exhaustive for small `n`, from class sizes beyond.
    #[new]
    #[pyo3(signature = (n, enumerate = false))]
    fn new(n: u64, enumerate: bool) -> PyResult<Self> {
        let c = if enumerate {
            oracle::enumerate_census(n)
        } else {
            oracle::census(n)
        };
        c.map(Self).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> u64 {
        self.0.n()
    }

    /// Count for a cycle type written like `"3+2"`.
    fn count(&self, cycle_type: &str) -> PyResult<BigInt> {
        let t: Partition = cycle_type.parse().map_err(py_err)?;
        Ok(self.0.count(&t))
    }

    fn counts(&self) -> Vec<(String, BigInt)> {
        self.0.iter().map(|(t, c)| (t.to_string(), c.clone())).collect()
    }

    fn involution_count(&self) -> BigInt {
        self.0.involution_count()
    }

    fn restricted_count(&self, l: usize) -> BigInt {
        self.0.restricted_count(l)
    }

    fn cycle_index(&self, l: usize) -> PyCycleIndex {
        PyCycleIndex(self.0.cycle_index(l))
    }

    fn total(&self) -> BigInt {
        self.0.total()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }
}

/// Positive root of `r + r^2 + ... + r^l = n`.
#[pyfunction]
#[pyo3(signature = (n, l, tol = 1e-12))]
fn saddle(n: u64, l: usize, tol: f64) -> PyResult<f64> {
    asymptotic::solve_saddle(n, l, tol).map(|s| s.r()).map_err(py_err)
}

/// Natural log of the saddle-point estimate of `d(n, l)`.
#[pyfunction]
fn ln_estimate(n: u64, l: usize) -> PyResult<f64> {
    asymptotic::estimate_saddle(n, l)
        .map(|e| e.ln_estimate)
        .map_err(py_err)
}

/// Exact count divided by the saddle-point estimate.
#[pyfunction]
fn ratio(n: u64, l: usize) -> PyResult<f64> {
    asymptotic::compare_saddle(n, l)
        .map(|r| r.ratio)
        .map_err(py_err)
}

/// Coefficients `beta_0..beta_l`, either `"extracted"` from the series or as `"printed"`.
#[pyfunction]
#[pyo3(signature = (l, source = "extracted"))]
fn betas(l: usize, source: &str) -> PyResult<Vec<BigRational>> {
    let source = match source {
        "extracted" => BetaSource::Extracted,
        "printed" => BetaSource::Printed,
        other => return Err(PyValueError::new_err(format!("unknown source '{other}'"))),
    };
    let b = asymptotic::BetaCoefficients::new(l).map_err(py_err)?;
    Ok(b.get(source).to_vec())
}

/// Least-squares estimates of `beta_0` and `beta_l`.
#[pyfunction]
fn fit_beta(l: usize) -> PyResult<(f64, f64)> {
    let fit = asymptotic::fit_beta_default(l).map_err(py_err)?;
    Ok((fit.beta(0), fit.beta(l)))
}

/// Names of the verification suites.
#[pyfunction]
fn suites() -> Vec<&'static str> {
    verify::suites().iter().map(|s| s.name).collect()
}

/// Runs one suite; returns `(passed, cases_checked, counterexample)`.
#[pyfunction]
#[pyo3(signature = (name, max = None))]
fn run_suite(py: Python<'_>, name: &str, max: Option<u64>) -> PyResult<(bool, u64, Option<String>)> {
    let suite = verify::find_suite(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite '{name}'")))?;
    let v = py.detach(|| suite.run(max));
    Ok((v.passed(), v.checked, v.counterexample))
}

#[pymodule]
fn involutions_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(involution_number, m)?)?;
    m.add_function(wrap_pyfunction!(involution_poly, m)?)?;
    m.add_function(wrap_pyfunction!(partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(b_k, m)?)?;
    m.add_function(wrap_pyfunction!(restricted_count, m)?)?;
    m.add_function(wrap_pyfunction!(nu, m)?)?;
    m.add_function(wrap_pyfunction!(nu2_involution, m)?)?;
    m.add_function(wrap_pyfunction!(nu2_partial_sum, m)?)?;
    m.add_function(wrap_pyfunction!(is_efficient, m)?)?;
    m.add_function(wrap_pyfunction!(inefficient_primes, m)?)?;
    m.add_function(wrap_pyfunction!(periodicity_counterexample, m)?)?;
    m.add_function(wrap_pyfunction!(saddle, m)?)?;
    m.add_function(wrap_pyfunction!(ln_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(ratio, m)?)?;
    m.add_function(wrap_pyfunction!(betas, m)?)?;
    m.add_function(wrap_pyfunction!(fit_beta, m)?)?;
    m.add_function(wrap_pyfunction!(suites, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    m.add_class::<PyCycleIndex>()?;
    m.add_class::<PyCensus>()?;
    Ok(())
}
