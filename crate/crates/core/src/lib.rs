//! Complex unit gain graphs: balance, shortest-path gain sets, gain distance
//! matrices, weighted gain spectra and distance compatibility.

pub mod balance;
pub mod cli;
pub mod distance;
pub mod error;
pub mod format;
pub mod gain;
pub mod generate;
pub mod graph;
pub mod matrix;
pub mod paths;
pub mod spectra;
pub mod structure;
pub mod weighted;

pub use balance::{is_antibalanced, is_balanced, switching_equivalent, BalanceReport, CycleCertificate};
pub use distance::{
    classify, completion_max, completion_min, distance_matrices, is_distance_compatible, is_order_independent,
    Classification, GraphClass, VertexOrder,
};
pub use error::{Error, Result};
pub use format::{parse_graph, serialize, serialize_weighted, ParsedGraph};
pub use gain::{UnitGain, EPS_GAIN};
pub use graph::{Edge, GainGraph, SwitchingFunction};
pub use matrix::HermitianMatrix;
pub use paths::{shortest_gain_set, GainSetTable, ShortestPathGainSet};
pub use spectra::{cospectral, eigenvalues_hermitian, eigh, Spectrum, SPECTRAL_TOLERANCE};
pub use structure::{block_decomposition, blockwise_compatibility, incompatibility_witness, BlockDecomposition};
pub use weighted::{sachs_coefficients, weighted_adjacency, WeightedGainGraph};
