use axisproj::io::{parse_problem, result_to_json, InputError};
use axisproj::oracle::{oracle_project, Ball, Ellipsoid};
use axisproj::verify::{facet_l1_oracle, run_verification, VerifyOptions};
use axisproj::{
    hrep_axis_lambdas, hrep_is_interior, hrep_project, hrep_translate, minmax_distance,
    vrep_axis_lambda, vrep_is_interior, vrep_project, vrep_translate, HPolyhedron, NormSpec, Point,
    ProjError, ProjectionResult, Sign, VPolytope,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;

create_exception!(axisproj, NotInteriorError, PyValueError);
create_exception!(axisproj, NumericalError, PyArithmeticError);

fn py_err(err: ProjError) -> PyErr {
    match err {
        ProjError::NotInterior => NotInteriorError::new_err(err.to_string()),
        ProjError::Lp(_) | ProjError::RadiusHintViolation { .. } => {
            NumericalError::new_err(err.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn input_err(err: InputError) -> PyErr {
    match err {
        InputError::Invalid(e) => py_err(e),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn point(coords: Vec<f64>) -> PyResult<Point> {
    Point::new(coords).map_err(py_err)
}

fn parse_sign(sign: &str) -> PyResult<Sign> {
    match sign {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        other => Err(PyValueError::new_err(format!(
            "sign must be '+' or '-', got {other:?}"
        ))),
    }
}

/// `(axis, sign, lambda, binding_row)` with one-based indices.
type LambdaRow = (usize, &'static str, f64, Option<usize>);

fn lambda_rows(table: &[axisproj::AxisLambda]) -> Vec<LambdaRow> {
    table
        .iter()
        .map(|e| {
            (
                e.axis + 1,
                e.sign.symbol(),
                e.lambda,
                e.binding_row.map(|i| i + 1),
            )
        })
        .collect()
}

/// Weighted quasi-norm `sum_i w_i |x_i|^p`, `0 < p <= 1`.
#[pyclass(name = "NormSpec", module = "axisproj", frozen)]
struct PyNormSpec(NormSpec);

#[pymethods]
impl PyNormSpec {
    #[new]
    #[pyo3(signature = (p = 1.0, weights = None))]
    fn new(p: f64, weights: Option<Vec<f64>>) -> PyResult<Self> {
        NormSpec::new(p, weights).map(Self).map_err(py_err)
    }

    #[getter]
    fn p(&self) -> f64 {
        self.0.p()
    }

    #[getter]
    fn weights(&self) -> Option<Vec<f64>> {
        self.0.weights().map(<[f64]>::to_vec)
    }

    fn distance(&self, x: Vec<f64>, a: Vec<f64>) -> PyResult<f64> {
        axisproj::norm_distance(&point(x)?, &point(a)?, &self.0).map_err(py_err)
    }

    fn __repr__(&self) -> String {
        format!("NormSpec(p={}, weights={:?})", self.0.p(), self.0.weights())
    }
}

fn norm_or_default(norm: Option<PyRef<'_, PyNormSpec>>) -> NormSpec {
    norm.map(|n| n.0.clone()).unwrap_or_default()
}

/// Nearest boundary point and the full per-axis step table.
#[pyclass(name = "ProjectionResult", module = "axisproj", frozen)]
struct PyProjectionResult(ProjectionResult);

#[pymethods]
impl PyProjectionResult {
    #[getter]
    fn distance(&self) -> f64 {
        self.0.distance
    }

    /// One-based axis index.
    #[getter]
    fn axis(&self) -> usize {
        self.0.axis + 1
    }

    #[getter]
    fn sign(&self) -> &'static str {
        self.0.sign.symbol()
    }

    #[getter]
    fn boundary_point(&self) -> Vec<f64> {
        self.0.boundary_point.coords().to_vec()
    }

    /// `[(axis, sign, lambda, binding_row), ...]`, one-based indices.
    #[getter]
    fn lambda_table(&self) -> Vec<LambdaRow> {
        lambda_rows(&self.0.lambda_table)
    }

    fn to_json(&self) -> String {
        result_to_json(&self.0)
    }

    fn __repr__(&self) -> String {
        format!(
            "ProjectionResult(distance={}, axis={}, sign='{}')",
            self.0.distance,
            self.0.axis + 1,
            self.0.sign
        )
    }
}

/// Polyhedron `{ x : A x <= b }`.
#[pyclass(name = "HPolyhedron", module = "axisproj", frozen)]
struct PyHPolyhedron(HPolyhedron);

#[pymethods]
impl PyHPolyhedron {
    #[new]
    #[allow(non_snake_case)]
    fn new(A: Vec<Vec<f64>>, b: Vec<f64>) -> PyResult<Self> {
        HPolyhedron::new(A, b).map(Self).map_err(py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn is_interior(&self, point_: Vec<f64>) -> PyResult<bool> {
        hrep_is_interior(&self.0, &point(point_)?).map_err(py_err)
    }

    #[pyo3(signature = (point_, norm = None))]
    fn project(
        &self,
        point_: Vec<f64>,
        norm: Option<PyRef<'_, PyNormSpec>>,
    ) -> PyResult<PyProjectionResult> {
        hrep_project(&self.0, &point(point_)?, &norm_or_default(norm))
            .map(PyProjectionResult)
            .map_err(py_err)
    }

    /// `[(axis, sign, lambda, binding_row), ...]` from `point_`.
    fn axis_lambdas(&self, point_: Vec<f64>) -> PyResult<Vec<LambdaRow>> {
        let moved = hrep_translate(&self.0, &point(point_)?).map_err(py_err)?;
        Ok(lambda_rows(&hrep_axis_lambdas(&moved).map_err(py_err)?))
    }

    /// `min_i b_i / max_j |a_ij|` after moving `point_` to the origin.
    fn minmax_distance(&self, point_: Vec<f64>) -> PyResult<f64> {
        let moved = hrep_translate(&self.0, &point(point_)?).map_err(py_err)?;
        minmax_distance(&moved).map_err(py_err)
    }

    /// Brute-force distance from one LP per row: `(distance, facet, point)`
    /// with a one-based facet index.
    #[pyo3(signature = (point_, norm = None))]
    fn facet_oracle(
        &self,
        point_: Vec<f64>,
        norm: Option<PyRef<'_, PyNormSpec>>,
    ) -> PyResult<(f64, usize, Vec<f64>)> {
        let r =
            facet_l1_oracle(&self.0, &point(point_)?, &norm_or_default(norm)).map_err(py_err)?;
        Ok((r.distance, r.facet + 1, r.point))
    }
}

/// Vertex list; the modeled set is the hull of the vertices and the query point.
#[pyclass(name = "VPolytope", module = "axisproj", frozen)]
struct PyVPolytope(VPolytope);

#[pymethods]
impl PyVPolytope {
    #[new]
    fn new(vertices: Vec<Vec<f64>>) -> PyResult<Self> {
        VPolytope::new(vertices).map(Self).map_err(py_err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn is_interior(&self, point_: Vec<f64>) -> PyResult<bool> {
        vrep_is_interior(&self.0, &point(point_)?).map_err(py_err)
    }

    /// Step from `point_` along `sign * e_axis` (one-based axis).
    fn axis_lambda(&self, point_: Vec<f64>, axis: usize, sign: &str) -> PyResult<f64> {
        if axis == 0 {
            return Err(PyValueError::new_err("axis indices start at 1"));
        }
        let moved = vrep_translate(&self.0, &point(point_)?).map_err(py_err)?;
        vrep_axis_lambda(&moved, axis - 1, parse_sign(sign)?).map_err(py_err)
    }

    #[pyo3(signature = (point_, norm = None))]
    fn project(
        &self,
        point_: Vec<f64>,
        norm: Option<PyRef<'_, PyNormSpec>>,
    ) -> PyResult<PyProjectionResult> {
        vrep_project(&self.0, &point(point_)?, &norm_or_default(norm))
            .map(PyProjectionResult)
            .map_err(py_err)
    }
}

#[pyfunction]
#[pyo3(signature = (x, a, p = 1.0, weights = None))]
fn norm_distance(x: Vec<f64>, a: Vec<f64>, p: f64, weights: Option<Vec<f64>>) -> PyResult<f64> {
    let spec = NormSpec::new(p, weights).map_err(py_err)?;
    axisproj::norm_distance(&point(x)?, &point(a)?, &spec).map_err(py_err)
}

#[pyfunction]
fn lp_ratio_bound(n: usize, p: f64) -> PyResult<f64> {
    axisproj::lp_ratio_bound(n, p).map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (center, radius, point_, norm = None, radius_hint = None))]
fn project_ball(
    center: Vec<f64>,
    radius: f64,
    point_: Vec<f64>,
    norm: Option<PyRef<'_, PyNormSpec>>,
    radius_hint: Option<f64>,
) -> PyResult<PyProjectionResult> {
    let mut ball = Ball::new(center, radius).map_err(py_err)?;
    if let Some(h) = radius_hint {
        ball.radius_hint = h;
    }
    oracle_project(&ball, &point(point_)?, &norm_or_default(norm))
        .map(PyProjectionResult)
        .map_err(py_err)
}

#[pyfunction]
#[pyo3(signature = (center, semi_axes, point_, norm = None, radius_hint = None))]
fn project_ellipsoid(
    center: Vec<f64>,
    semi_axes: Vec<f64>,
    point_: Vec<f64>,
    norm: Option<PyRef<'_, PyNormSpec>>,
    radius_hint: Option<f64>,
) -> PyResult<PyProjectionResult> {
    let mut body = Ellipsoid::new(center, semi_axes).map_err(py_err)?;
    if let Some(h) = radius_hint {
        body.radius_hint = h;
    }
    oracle_project(&body, &point(point_)?, &norm_or_default(norm))
        .map(PyProjectionResult)
        .map_err(py_err)
}

/// Projects a problem given in the CLI's JSON input format.
#[pyfunction]
fn project_json(text: &str) -> PyResult<PyProjectionResult> {
    let problem = parse_problem(text).map_err(input_err)?;
    problem.project().map(PyProjectionResult).map_err(py_err)
}

/// Runs the verification checks on a JSON problem and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (text, samples = 10_000, seed = 0, p = None, inflate = 1.0))]
fn verify_json(
    text: &str,
    samples: usize,
    seed: u64,
    p: Option<f64>,
    inflate: f64,
) -> PyResult<String> {
    let problem = parse_problem(text).map_err(input_err)?;
    let opts = VerifyOptions {
        samples,
        seed,
        inflate,
        p_override: p,
        tolerance_report: false,
    };
    let report = run_verification(&problem, &opts).map_err(py_err)?;
    serde_json_string(&report)
}

fn serde_json_string<T: serde::Serialize>(value: &T) -> PyResult<String> {
    serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
#[pyo3(name = "axisproj")]
fn axisproj_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNormSpec>()?;
    m.add_class::<PyProjectionResult>()?;
    m.add_class::<PyHPolyhedron>()?;
    m.add_class::<PyVPolytope>()?;
    m.add_function(wrap_pyfunction!(norm_distance, m)?)?;
    m.add_function(wrap_pyfunction!(lp_ratio_bound, m)?)?;
    m.add_function(wrap_pyfunction!(project_ball, m)?)?;
    m.add_function(wrap_pyfunction!(project_ellipsoid, m)?)?;
    m.add_function(wrap_pyfunction!(project_json, m)?)?;
    m.add_function(wrap_pyfunction!(verify_json, m)?)?;
    m.add("NotInteriorError", m.py().get_type::<NotInteriorError>())?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    Ok(())
}
