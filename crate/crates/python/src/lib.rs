use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gainspec::balance::BalanceReport;
use gainspec::distance::{self, VertexOrder};
use gainspec::{format, spectra, structure, weighted};

create_exception!(gainspec, GainSpecError, PyValueError);

fn err(e: gainspec::Error) -> PyErr {
    GainSpecError::new_err(e.to_string())
}

type Rows = Vec<Vec<Complex64>>;

fn to_rows(m: &gainspec::HermitianMatrix) -> Rows {
    m.rows()
}

/// A complex unit gain graph with 0-based vertices and optional edge weights.
#[pyclass(name = "GainGraph", module = "gainspec", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGainGraph {
    inner: gainspec::GainGraph,
    weights: Option<Vec<f64>>,
}

impl PyGainGraph {
    fn weighted(&self) -> PyResult<gainspec::WeightedGainGraph> {
        let w = self.weights.clone().unwrap_or_else(|| vec![1.0; self.inner.edge_count()]);
        gainspec::WeightedGainGraph::new(self.inner.clone(), w).map_err(err)
    }

    fn order_from(&self, order: Option<Vec<usize>>) -> PyResult<VertexOrder> {
        match order {
            None => Ok(VertexOrder::standard(self.inner.order())),
            Some(perm) => VertexOrder::from_perm(perm).map_err(err),
        }
    }
}

#[pymethods]
impl PyGainGraph {
    /// `edges` holds `(u, v, gain)` or `(u, v, gain, weight)` tuples.
    #[new]
    #[pyo3(signature = (n, edges, weights=None))]
    fn new(n: usize, edges: Vec<(usize, usize, Complex64)>, weights: Option<Vec<f64>>) -> PyResult<Self> {
        let gains = edges
            .iter()
            .map(|&(u, v, z)| Ok((u, v, gainspec::UnitGain::normalized(z, format::LITERAL_UNIT_TOLERANCE)?)))
            .collect::<gainspec::Result<Vec<_>>>()
            .map_err(err)?;
        match weights {
            None => Ok(PyGainGraph { inner: gainspec::GainGraph::new(n, gains).map_err(err)?, weights: None }),
            Some(w) => {
                if w.len() != gains.len() {
                    return Err(GainSpecError::new_err("one weight per edge is required"));
                }
                let wg = gainspec::WeightedGainGraph::from_edges(
                    n,
                    gains.into_iter().zip(w).map(|((u, v, g), w)| (u, v, g, w)),
                )
                .map_err(err)?;
                Ok(PyGainGraph { inner: wg.base().clone(), weights: Some(wg.weights().to_vec()) })
            }
        }
    }

    /// Reads the `gaingraph <n>` text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(match format::parse_graph(text).map_err(err)? {
            format::ParsedGraph::Plain(g) => PyGainGraph { inner: g, weights: None },
            format::ParsedGraph::Weighted(wg) => PyGainGraph {
                inner: wg.base().clone(),
                weights: Some(wg.weights().to_vec()),
            },
        })
    }

    fn to_text(&self) -> PyResult<String> {
        Ok(match &self.weights {
            None => format::serialize(&self.inner),
            Some(_) => format::serialize_weighted(&self.weighted()?),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.order()
    }

    /// `(u, v, gain of u -> v, weight)` with `u < v`.
    #[getter]
    fn edges(&self) -> Vec<(usize, usize, Complex64, f64)> {
        self.inner
            .edges()
            .iter()
            .enumerate()
            .map(|(k, e)| (e.u, e.v, e.gain.value(), self.weights.as_ref().map_or(1.0, |w| w[k])))
            .collect()
    }

    fn adjacency(&self) -> PyResult<Rows> {
        Ok(match &self.weights {
            None => to_rows(&self.inner.adjacency()),
            Some(_) => to_rows(&weighted::weighted_adjacency(&self.weighted()?)),
        })
    }

    fn switch(&self, zeta: Vec<Complex64>) -> PyResult<Self> {
        let zeta = zeta
            .into_iter()
            .map(|z| gainspec::UnitGain::normalized(z, format::LITERAL_UNIT_TOLERANCE))
            .collect::<gainspec::Result<Vec<_>>>()
            .map_err(err)?;
        let inner = self.inner.switch(&gainspec::SwitchingFunction::new(zeta)).map_err(err)?;
        Ok(PyGainGraph { inner, weights: self.weights.clone() })
    }

    fn is_balanced(&self) -> PyResult<bool> {
        Ok(gainspec::is_balanced(&self.inner).map_err(err)?.is_balanced())
    }

    fn is_antibalanced(&self) -> PyResult<bool> {
        gainspec::is_antibalanced(&self.inner).map_err(err)
    }

    /// A cycle whose gain is not one, with that gain, or `None` when balanced.
    fn unbalanced_cycle(&self) -> PyResult<Option<(Vec<usize>, Complex64)>> {
        Ok(match gainspec::is_balanced(&self.inner).map_err(err)? {
            BalanceReport::Balanced { .. } => None,
            BalanceReport::Unbalanced(c) => Some((c.cycle, c.gain.value())),
        })
    }

    fn shortest_path_gains(&self, s: usize, t: usize) -> PyResult<Vec<Complex64>> {
        let set = gainspec::shortest_gain_set(&self.inner, s, t).map_err(err)?;
        Ok(set.gains.iter().map(|g| g.value()).collect())
    }

    /// `(D_max, D_min)` under `order` (a permutation, smallest first).
    #[pyo3(signature = (order=None))]
    fn distance_matrices(&self, order: Option<Vec<usize>>) -> PyResult<(Rows, Rows)> {
        let order = self.order_from(order)?;
        let dm = gainspec::distance_matrices(&self.inner, &order).map_err(err)?;
        Ok((to_rows(&dm.dmax), to_rows(&dm.dmin)))
    }

    fn is_order_independent(&self) -> PyResult<bool> {
        Ok(gainspec::is_order_independent(&self.inner).map_err(err)?.independent)
    }

    fn is_compatible(&self) -> PyResult<bool> {
        Ok(gainspec::is_distance_compatible(&self.inner).map_err(err)?.compatible)
    }

    /// A pair `(s, t)` with several shortest-path gains, or `None`.
    fn compatibility_witness(&self) -> PyResult<Option<(usize, usize)>> {
        let c = gainspec::is_distance_compatible(&self.inner).map_err(err)?;
        Ok(c.witness.map(|w| (w.s, w.t)))
    }

    fn classify(&self) -> PyResult<String> {
        Ok(gainspec::classify(&self.inner).map_err(err)?.to_string())
    }

    #[pyo3(signature = (which="max", order=None))]
    fn completion(&self, which: &str, order: Option<Vec<usize>>) -> PyResult<Self> {
        let order = self.order_from(order)?;
        let inner = match which {
            "max" => distance::completion_max(&self.inner, &order),
            "min" => distance::completion_min(&self.inner, &order),
            _ => return Err(GainSpecError::new_err("which must be 'max' or 'min'")),
        }
        .map_err(err)?;
        Ok(PyGainGraph { inner, weights: None })
    }

    /// Ascending eigenvalues of the (weighted) adjacency matrix, or of
    /// `D_max` under the standard order when `distance` is set.
    #[pyo3(signature = (distance=false))]
    fn spectrum(&self, distance: bool) -> PyResult<Vec<f64>> {
        let m = if distance {
            gainspec::distance_matrices(&self.inner, &VertexOrder::standard(self.inner.order()))
                .map_err(err)?
                .dmax
        } else {
            weighted::weighted_adjacency(&self.weighted()?)
        };
        Ok(gainspec::eigenvalues_hermitian(&m).map_err(err)?.values().to_vec())
    }

    /// Characteristic polynomial coefficients `a_0 .. a_n` by elementary subgraphs.
    fn sachs(&self) -> PyResult<Vec<f64>> {
        Ok(gainspec::sachs_coefficients(&self.weighted()?).map_err(err)?.coefficients)
    }

    #[pyo3(signature = (tol=spectra::SPECTRAL_TOLERANCE))]
    fn balanced_by_spectrum(&self, tol: f64) -> PyResult<bool> {
        weighted::weighted_balance_cospectral(&self.weighted()?, tol).map_err(err)
    }

    /// `(blocks as edge lists, cut vertices)`.
    fn blocks(&self) -> PyResult<(Vec<Vec<(usize, usize)>>, Vec<usize>)> {
        let dec = gainspec::block_decomposition(&self.inner).map_err(err)?;
        let edges = self.inner.edges();
        let blocks = dec
            .blocks
            .iter()
            .map(|b| b.iter().map(|&k| (edges[k].u, edges[k].v)).collect())
            .collect();
        Ok((blocks, dec.cut_vertices))
    }

    /// `(cycle, s, t)` for a 2-connected non-geodetic graph, `None` when compatible.
    fn incompatibility_witness(&self) -> PyResult<Option<(Vec<usize>, usize, usize)>> {
        Ok(structure::incompatibility_witness(&self.inner)
            .map_err(err)?
            .map(|w| (w.cycle, w.s, w.t)))
    }

    fn __len__(&self) -> usize {
        self.inner.order()
    }

    fn __repr__(&self) -> String {
        format!("GainGraph(n={}, edges={})", self.inner.order(), self.inner.edge_count())
    }
}

/// Ascending eigenvalues of a Hermitian matrix given as nested lists.
#[pyfunction]
fn eigenvalues(rows: Rows) -> PyResult<Vec<f64>> {
    let m = gainspec::HermitianMatrix::from_rows(&rows).map_err(err)?;
    Ok(gainspec::eigenvalues_hermitian(&m).map_err(err)?.values().to_vec())
}

#[pymodule]
#[pyo3(name = "gainspec")]
fn gainspec_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGainGraph>()?;
    m.add_function(wrap_pyfunction!(eigenvalues, m)?)?;
    m.add("GainSpecError", m.py().get_type::<GainSpecError>())?;
    Ok(())
}
