//! Python bindings. Structured results cross the boundary as ordinary Python
//! lists and dicts, decoded from the same JSON the command-line tool prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use engine::oracle::{self, Budget, SelftestConfig};
use engine::raag::{psa_complement_subspheres, sil_json};
use engine::{
    counting_check_psa, counting_check_raag, maximal_missing_subspheres, raag_sigma_membership, sigma_membership,
    sphere_dimension, theorem_b_report, Character, PsaGroup, RaagCharacter, SimplicialGraph,
};

fn err(e: engine::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, value: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (value.to_string(),))?.unbind())
}

fn dumps(obj: &Bound<'_, PyAny>) -> PyResult<String> {
    obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()
}

/// A defining graph together with the pure symmetric automorphism group of
/// its right-angled Artin group.
#[pyclass(name = "Group", module = "psa_sigma", frozen)]
struct Group {
    inner: PsaGroup,
}

#[pymethods]
impl Group {
    /// `Group(vertices, edges)` with vertex names and pairs of names.
    #[new]
    fn new(vertices: Vec<String>, edges: Vec<(String, String)>) -> PyResult<Self> {
        let graph = SimplicialGraph::from_edges(&vertices, &edges).map_err(err)?;
        Ok(Self {
            inner: PsaGroup::new(graph),
        })
    }

    /// Parses `{"vertices": [...], "edges": [[u, v], ...]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let graph = SimplicialGraph::from_json(text).map_err(err)?;
        Ok(Self {
            inner: PsaGroup::new(graph),
        })
    }

    fn to_json(&self) -> String {
        self.inner.graph().to_json()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.graph().names().to_vec()
    }

    /// Partial conjugation ids such as `"a:{c,d,e}"`, in canonical order.
    fn generators(&self) -> Vec<String> {
        (0..self.inner.generator_count()).map(|i| self.inner.id_of(i)).collect()
    }

    fn sphere_dimension(&self) -> PyResult<usize> {
        sphere_dimension(&self.inner).map_err(err)
    }

    /// The case number (1 to 6) of a pair with distinct acting letters.
    fn pair_case(&self, p: &str, q: &str) -> PyResult<u8> {
        let (p, q) = (self.inner.parse_id(p).map_err(err)?, self.inner.parse_id(q).map_err(err)?);
        Ok(self.inner.pair_case(&p, &q).map_err(err)?.number())
    }

    fn commutes(&self, p: &str, q: &str) -> PyResult<bool> {
        let (p, q) = (self.inner.parse_id(p).map_err(err)?, self.inner.parse_id(q).map_err(err)?);
        self.inner.commutes(&p, &q).map_err(err)
    }

    fn presentation(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.presentation_json(&self.inner.presentation()))
    }

    fn maximal_psets(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let fams: Vec<_> = engine::maximal_psets(&self.inner).iter().map(|f| f.to_json(&self.inner)).collect();
        to_py(py, &serde_json::Value::Array(fams))
    }

    fn maximal_delta_psets(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let fams: Vec<_> = engine::maximal_delta_psets(&self.inner)
            .iter()
            .map(|f| f.to_json(&self.inner))
            .collect();
        to_py(py, &serde_json::Value::Array(fams))
    }

    fn sils(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let g = self.inner.graph();
        to_py(py, &serde_json::Value::Array(g.find_sils().iter().map(|s| sil_json(g, s)).collect()))
    }

    /// Σ¹ verdict for a character given as `{generator id: value}`; values
    /// are integers or `"p/q"` strings.
    fn classify(&self, py: Python<'_>, character: &Bound<'_, PyDict>) -> PyResult<Py<PyAny>> {
        let chi = Character::parse(&self.inner, &dumps(character.as_any())?).map_err(err)?;
        to_py(py, &sigma_membership(&self.inner, &chi).to_json(&self.inner))
    }

    /// Whether a character of the RAAG itself, `{vertex: value}`, lies in Σ¹.
    fn raag_membership(&self, character: &Bound<'_, PyDict>) -> PyResult<bool> {
        let graph = self.inner.graph();
        let psi = RaagCharacter::parse(graph, &dumps(character.as_any())?).map_err(err)?;
        Ok(raag_sigma_membership(graph, &psi))
    }

    fn subspheres(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let raag: Vec<_> = maximal_missing_subspheres(self.inner.graph())
            .iter()
            .map(|s| s.to_json(&self.inner))
            .collect();
        let psa: Vec<_> = psa_complement_subspheres(&self.inner)
            .iter()
            .map(|s| s.to_json(&self.inner))
            .collect();
        to_py(py, &serde_json::json!({"raag": raag, "psa": psa}))
    }

    fn counting(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(
            py,
            &serde_json::json!({
                "raag": counting_check_raag(self.inner.graph()).to_json(),
                "psa": counting_check_psa(&self.inner).to_json(),
            }),
        )
    }

    /// Whether the automorphism group is itself a RAAG, with a SIL witness
    /// and its δ-p-set when it is not.
    fn theorem_b(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &theorem_b_report(&self.inner).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Group({})", self.inner.graph().to_json())
    }
}

/// Runs the randomized comparison against the brute-force oracles.
#[pyfunction]
#[pyo3(signature = (graphs = 20, characters = 20, seed = None, max_vertices = 7, budget = 12))]
fn selftest(
    py: Python<'_>,
    graphs: usize,
    characters: usize,
    seed: Option<u64>,
    max_vertices: usize,
    budget: usize,
) -> PyResult<Py<PyAny>> {
    let config = SelftestConfig {
        seed: seed.unwrap_or(SelftestConfig::default().seed),
        graphs,
        max_vertices,
        characters_per_graph: characters,
        budget: Budget::with_generators(budget),
    };
    let report = py.detach(|| oracle::selftest(&config));
    to_py(py, &report.to_json())
}

#[pymodule]
fn psa_sigma(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Group>()?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    m.add("SCHEMA_VERSION", engine::SCHEMA_VERSION)?;
    Ok(())
}
