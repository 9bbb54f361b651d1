//! Python bindings: octonions, split-algebra module elements, grid
//! functions, the Stokes and factorization operators, and the seeded
//! verification suites.

use std::collections::BTreeMap;

use octo_lattice::lattice::{random_scattered, GridFile, Sampler};
use octo_lattice::operators::{apply_laplacian, classic_factorization_residual, weyl_square_residual};
use octo_lattice::stokes::{associator_probe, boundary_rhs, stokes_sum, stokes_sum_canonical, telescope_residue};
use octo_lattice::suite::{self, InterpretationChoice};
use octo_lattice::weyl::canonicalize;
use octo_lattice::{
    BasisIndex, BoundaryInterpretation, Composition, Direction, Error, HalfSpace, LatticeWindow, Region, SuiteConfig,
    Target, WeylVariant,
};
use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::BasisIndex(_) => PyIndexError::new_err(e.to_string()),
        Error::ResourceGuard(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn basis(k: i64) -> PyResult<BasisIndex> {
    u8::try_from(k)
        .map_err(|_| Error::BasisIndex(k))
        .and_then(BasisIndex::new)
        .map_err(to_py)
}

fn bad(msg: impl Into<String>) -> PyErr {
    PyValueError::new_err(msg.into())
}

#[pyclass(name = "Octonion", module = "octo_lattice_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyOctonion(octo_lattice::Octonion);

#[pymethods]
impl PyOctonion {
    #[new]
    #[pyo3(signature = (coeffs = None))]
    fn new(coeffs: Option<Vec<f64>>) -> PyResult<Self> {
        let coeffs = coeffs.unwrap_or_else(|| vec![0.0; 8]);
        let arr: [f64; 8] = coeffs.try_into().map_err(|_| bad("an octonion has 8 coefficients"))?;
        Ok(PyOctonion(octo_lattice::Octonion::new(arr)))
    }

    /// The basis unit `e_k`.
    #[staticmethod]
    fn unit(k: i64) -> PyResult<Self> {
        Ok(PyOctonion(octo_lattice::Octonion::unit(basis(k)?)))
    }

    #[getter]
    fn coeffs(&self) -> Vec<f64> {
        self.0.coeff.to_vec()
    }

    fn conj(&self) -> Self {
        PyOctonion(self.0.conj())
    }

    fn norm(&self) -> f64 {
        self.0.norm()
    }

    fn __mul__(&self, other: PyRef<'_, PyOctonion>) -> Self {
        PyOctonion(self.0 * other.0)
    }

    fn __add__(&self, other: PyRef<'_, PyOctonion>) -> Self {
        PyOctonion(self.0 + other.0)
    }

    fn __sub__(&self, other: PyRef<'_, PyOctonion>) -> Self {
        PyOctonion(self.0 - other.0)
    }

    fn __neg__(&self) -> Self {
        PyOctonion(-self.0)
    }

    fn __getitem__(&self, k: i64) -> PyResult<f64> {
        Ok(self.0[basis(k)?])
    }

    fn __repr__(&self) -> String {
        format!("Octonion({})", self.0)
    }
}

/// `(ab)c - a(bc)`.
#[pyfunction]
fn associator(a: PyRef<'_, PyOctonion>, b: PyRef<'_, PyOctonion>, c: PyRef<'_, PyOctonion>) -> PyOctonion {
    PyOctonion(octo_lattice::associator(&a.0, &b.0, &c.0))
}

#[pyclass(name = "ModuleElement", module = "octo_lattice_py", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyModuleElement(octo_lattice::ModuleElement);

#[pymethods]
impl PyModuleElement {
    /// Builds an element from `{monomial: coefficient}`, monomials written
    /// as `1`, `e1+`, `(e1+ e2-)` or `e1+(e2- e3+)`.
    #[new]
    #[pyo3(signature = (terms = None))]
    fn new(terms: Option<BTreeMap<String, f64>>) -> PyResult<Self> {
        let mut e = octo_lattice::ModuleElement::zero();
        for (m, c) in terms.unwrap_or_default() {
            e.add_term(m.parse().map_err(to_py)?, c);
        }
        Ok(PyModuleElement(e))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyModuleElement)
            .map_err(|e| bad(e.to_string()))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("module elements serialize")
    }

    fn terms(&self) -> BTreeMap<String, f64> {
        self.0.terms().map(|(m, c)| (m.to_string(), c)).collect()
    }

    fn canonicalize(&self) -> Self {
        PyModuleElement(canonicalize(&self.0))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn max_abs(&self) -> f64 {
        self.0.max_abs()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn __add__(&self, other: PyRef<'_, PyModuleElement>) -> Self {
        PyModuleElement(self.0.clone() + other.0.clone())
    }

    fn __sub__(&self, other: PyRef<'_, PyModuleElement>) -> Self {
        PyModuleElement(self.0.clone() - other.0.clone())
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("ModuleElement({})", self.0)
    }
}

#[pyclass(name = "GridFunction", module = "octo_lattice_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGridFunction(octo_lattice::GridFunction<octo_lattice::Octonion>);

fn point(p: Vec<i64>) -> PyResult<[i64; 8]> {
    p.try_into().map_err(|_| bad("lattice points have 8 coordinates"))
}

#[pymethods]
impl PyGridFunction {
    /// A grid function from `(point, octonion)` pairs, each point a sequence
    /// of 8 integers.
    #[new]
    #[pyo3(signature = (h = 1.0, values = None))]
    fn new(h: f64, values: Option<Vec<(Vec<i64>, PyRef<'_, PyOctonion>)>>) -> PyResult<Self> {
        let mut pts = Vec::new();
        for (p, v) in values.unwrap_or_default() {
            pts.push((point(p)?, v.0));
        }
        octo_lattice::GridFunction::from_values(h, pts)
            .map(PyGridFunction)
            .map_err(to_py)
    }

    /// Seeded random function with `points` scattered support points in the
    /// cube of the given extent around the origin.
    #[staticmethod]
    #[pyo3(signature = (seed, points = 16, extent = 3, amplitude = 5, h = 1.0, real_only = false))]
    fn random(seed: u64, points: usize, extent: u32, amplitude: i64, h: f64, real_only: bool) -> PyResult<Self> {
        if extent == 0 || extent > suite::MAX_EXTENT {
            return Err(to_py(Error::ResourceGuard(format!(
                "extent must be in 1..={}",
                suite::MAX_EXTENT
            ))));
        }
        let window = LatticeWindow::cube(-(i64::from(extent) - 1) / 2, extent).map_err(to_py)?;
        let sampler = if real_only {
            Sampler::new(amplitude).real_only()
        } else {
            Sampler::new(amplitude)
        };
        random_scattered(seed, &window, points, sampler, h)
            .map(PyGridFunction)
            .map_err(to_py)
    }

    /// Parses the JSON grid format (`h`, `origin`, `extent`, `values`).
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let file: GridFile = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        file.to_grid().map(PyGridFunction).map_err(to_py)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&GridFile::from_grid(&self.0)).expect("grid files serialize")
    }

    #[getter]
    fn h(&self) -> f64 {
        self.0.h()
    }

    fn value(&self, p: Vec<i64>) -> PyResult<PyOctonion> {
        Ok(PyOctonion(self.0.value(&point(p)?)))
    }

    fn support(&self) -> Vec<Vec<i64>> {
        self.0.support().map(|p| p.to_vec()).collect()
    }

    fn laplacian(&self) -> Self {
        PyGridFunction(apply_laplacian(&self.0))
    }

    fn translate(&self, by: Vec<i64>) -> PyResult<Self> {
        Ok(PyGridFunction(self.0.translate(&point(by)?)))
    }

    fn __len__(&self) -> usize {
        self.0.support_len()
    }

    fn __repr__(&self) -> String {
        format!("GridFunction(h={}, points={})", self.0.h(), self.0.support_len())
    }
}

fn region(name: &str) -> PyResult<Region> {
    let parse = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| bad(format!("bad layer in region {name:?}")))
    };
    match name {
        "whole" => Ok(Region::Whole),
        "upper" => Ok(Region::Upper),
        "lower" => Ok(Region::Lower),
        _ => {
            if let Some(k) = name.strip_prefix("layer:") {
                Ok(Region::Layer(parse(k)?))
            } else if let Some(k) = name.strip_prefix(">=") {
                Ok(Region::AtLeast(parse(k)?))
            } else if let Some(k) = name.strip_prefix("<=") {
                Ok(Region::AtMost(parse(k)?))
            } else {
                Err(bad(format!(
                    "unknown region {name:?}: use whole, upper, lower, layer:K, >=K or <=K"
                )))
            }
        }
    }
}

fn side(name: &str) -> PyResult<HalfSpace> {
    match name {
        "upper" => Ok(HalfSpace::Upper),
        "lower" => Ok(HalfSpace::Lower),
        _ => Err(bad(format!("side must be upper or lower, got {name:?}"))),
    }
}

fn check_mesh(f: &PyGridFunction, g: &PyGridFunction) -> PyResult<()> {
    f.0.check_mesh(&g.0).map_err(to_py)
}

/// Stokes sum `h^8 Σ ([g D^{-+}] f - g [D^{+-} f])` over a region.
#[pyfunction]
#[pyo3(signature = (f, g, region = "whole", canonical = false))]
fn py_stokes_sum(
    f: PyRef<'_, PyGridFunction>,
    g: PyRef<'_, PyGridFunction>,
    region: &str,
    canonical: bool,
) -> PyResult<PyModuleElement> {
    check_mesh(&f, &g)?;
    let r = self::region(region)?;
    Ok(PyModuleElement(if canonical {
        stokes_sum_canonical(&f.0, &g.0, r)
    } else {
        stokes_sum(&f.0, &g.0, r)
    }))
}

/// The boundary layer sum predicted by summation by parts.
#[pyfunction]
fn py_telescope_residue(
    f: PyRef<'_, PyGridFunction>,
    g: PyRef<'_, PyGridFunction>,
    side: &str,
) -> PyResult<PyModuleElement> {
    check_mesh(&f, &g)?;
    Ok(PyModuleElement(telescope_residue(&f.0, &g.0, self::side(side)?)))
}

/// Half-lattice right-hand side under interpretation `i1` or `i2`.
#[pyfunction]
fn py_boundary_rhs(
    f: PyRef<'_, PyGridFunction>,
    g: PyRef<'_, PyGridFunction>,
    side: &str,
    interpretation: &str,
) -> PyResult<PyModuleElement> {
    check_mesh(&f, &g)?;
    let interp = match interpretation {
        "i1" => BoundaryInterpretation::OctonionFirst,
        "i2" => BoundaryInterpretation::SlotPreserving,
        _ => return Err(bad("interpretation must be i1 or i2")),
    };
    Ok(PyModuleElement(boundary_rhs(&f.0, &g.0, self::side(side)?, interp)))
}

/// `(probe, probe_norm, stokes_norm)`.
#[pyfunction]
#[pyo3(signature = (f, g, direction = "forward"))]
fn py_associator_probe(
    f: PyRef<'_, PyGridFunction>,
    g: PyRef<'_, PyGridFunction>,
    direction: &str,
) -> PyResult<(PyOctonion, f64, f64)> {
    check_mesh(&f, &g)?;
    let dir = match direction {
        "forward" => Direction::Forward,
        "backward" => Direction::Backward,
        _ => return Err(bad("direction must be forward or backward")),
    };
    let p = associator_probe(&f.0, &g.0, dir);
    Ok((PyOctonion(p.probe), p.probe_norm, p.stokes_zero_norm))
}

fn composition(name: &str) -> PyResult<Composition> {
    match name {
        "nested" => Ok(Composition::Nested),
        "flat" => Ok(Composition::Flat),
        _ => Err(bad("convention must be nested or flat")),
    }
}

/// Largest coefficient of `½(D⁺D̄⁻ + D⁻D̄⁺)f - Δf`.
#[pyfunction]
fn classic_residual(f: PyRef<'_, PyGridFunction>) -> f64 {
    classic_factorization_residual(&f.0).max_abs()
}

/// Largest coefficient of `D(Df) + Δf` for the Weyl operator `variant`
/// (`+-` or `-+`).
#[pyfunction]
#[pyo3(signature = (f, variant = "+-", convention = "flat"))]
fn weyl_residual(f: PyRef<'_, PyGridFunction>, variant: &str, convention: &str) -> PyResult<f64> {
    let v = match variant {
        "+-" => WeylVariant::PlusMinus,
        "-+" => WeylVariant::MinusPlus,
        _ => return Err(bad("variant must be '+-' or '-+'")),
    };
    weyl_square_residual(&f.0, v, composition(convention)?)
        .map(|r| r.max_abs())
        .map_err(to_py)
}

/// Runs a suite and returns its JSON report. `target` is one of the
/// `verify` targets or `probe-associator`.
#[pyfunction]
#[pyo3(signature = (
    target, seeds = 5, seed0 = 1, h = 1.0, support = 3, points = 32, tolerance = None,
    convention = "flat", base_layer = 1, real_only = false, disjoint = false,
))]
#[allow(clippy::too_many_arguments)]
fn run_suite(
    py: Python<'_>,
    target: &str,
    seeds: u64,
    seed0: u64,
    h: f64,
    support: u32,
    points: usize,
    tolerance: Option<f64>,
    convention: &str,
    base_layer: i64,
    real_only: bool,
    disjoint: bool,
) -> PyResult<String> {
    let cfg = SuiteConfig {
        seeds,
        seed0,
        h,
        support_extent: support,
        support_points: points,
        tolerance,
        composition: composition(convention)?,
        base_layer,
        interpretation: InterpretationChoice::Both,
        real_only,
        disjoint,
        ..SuiteConfig::default()
    };
    let target = match target {
        "algebra" => Some(Target::Algebra),
        "split" => Some(Target::Split),
        "factorization" => Some(Target::Factorization),
        "stokes-whole" => Some(Target::StokesWhole),
        "stokes-upper" => Some(Target::StokesUpper),
        "stokes-lower" => Some(Target::StokesLower),
        "all" => Some(Target::All),
        "probe-associator" => None,
        other => return Err(bad(format!("unknown target {other:?}"))),
    };
    let report = py
        .detach(|| match target {
            Some(t) => suite::run(t, &cfg),
            None => suite::run_probe(&cfg),
        })
        .map_err(to_py)?;
    Ok(report.to_json())
}

#[pymodule]
fn octo_lattice_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyOctonion>()?;
    m.add_class::<PyModuleElement>()?;
    m.add_class::<PyGridFunction>()?;
    m.add_function(wrap_pyfunction!(associator, m)?)?;
    m.add("stokes_sum", wrap_pyfunction!(py_stokes_sum, m)?)?;
    m.add("telescope_residue", wrap_pyfunction!(py_telescope_residue, m)?)?;
    m.add("boundary_rhs", wrap_pyfunction!(py_boundary_rhs, m)?)?;
    m.add("associator_probe", wrap_pyfunction!(py_associator_probe, m)?)?;
    m.add_function(wrap_pyfunction!(classic_residual, m)?)?;
    m.add_function(wrap_pyfunction!(weyl_residual, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
