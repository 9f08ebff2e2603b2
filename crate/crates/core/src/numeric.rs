//! Floating-point property checks for the two equivariant maps behind
//! the index bounds.
//!
//! The Grassmannian G(2n,n) is parameterized by orthogonal projection
//! matrices: symmetric idempotent 2n x 2n matrices of trace n, with
//! the orthocomplement involution P -> E - P. Two maps are verified
//! on random samples:
//!
//! - the sphere map f(P) = (P_11 - 1/2, P_12, ..., P_1,2n), which is
//!   antipodally equivariant and has norm exactly 1/2 (this drives
//!   the upper bound on the index);
//! - the block-diagonal embedding P -> P (+) ... (+) P, which
//!   commutes with the involution (this drives index monotonicity
//!   along divisibility).

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for the defining projection identities (symmetry,
/// idempotency, trace).
pub const PROJECTION_TOL: f64 = 1e-9;
/// Tolerance for the equivariance identities.
pub const EQUIVARIANCE_TOL: f64 = 1e-12;
/// Tolerance for |min sphere norm - 1/2| over a sample run.
pub const NORM_TOL: f64 = 1e-9;
/// Tolerance for eigenvalue distance to {0, 1}.
pub const SPECTRUM_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum NumericError {
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("ambient dimension {dim} is odd; projections here live on G(2n,n)")]
    OddDimension { dim: usize },
    #[error("matrix is not symmetric (error {error:.3e})")]
    NotSymmetric { error: f64 },
    #[error("matrix is not idempotent (error {error:.3e})")]
    NotIdempotent { error: f64 },
    #[error("trace {trace} does not equal half the ambient dimension {expected}")]
    WrongTrace { trace: f64, expected: f64 },
}

/// A point of G(2n,n): an orthogonal projection of rank n in R^(2n).
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectionMatrix {
    mat: DMatrix<f64>,
}

impl ProjectionMatrix {
    /// Wraps a matrix after checking the projection identities to
    /// [`PROJECTION_TOL`].
    pub fn from_matrix(mat: DMatrix<f64>) -> Result<Self, NumericError> {
        if mat.nrows() != mat.ncols() {
            return Err(NumericError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        if !mat.nrows().is_multiple_of(2) {
            return Err(NumericError::OddDimension { dim: mat.nrows() });
        }
        let p = ProjectionMatrix { mat };
        let sym = p.symmetry_error();
        if sym > PROJECTION_TOL {
            return Err(NumericError::NotSymmetric { error: sym });
        }
        let idem = p.idempotency_error();
        if idem > PROJECTION_TOL {
            return Err(NumericError::NotIdempotent { error: idem });
        }
        let expected = p.rank_target() as f64;
        let trace = p.mat.trace();
        if (trace - expected).abs() > PROJECTION_TOL {
            return Err(NumericError::WrongTrace { trace, expected });
        }
        Ok(p)
    }

    /// Draws a Haar-like sample: P = Q Q^t for Q the orthonormalized
    /// columns of a standard Gaussian 2n x n matrix. A rank-deficient
    /// draw (probability zero, detected on the triangular factor) is
    /// discarded and redrawn, advancing the generator deterministically.
    pub fn sample(n: usize, rng: &mut impl Rng) -> Self {
        assert!(n >= 1, "need n >= 1");
        loop {
            let g = DMatrix::from_fn(2 * n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
            let qr = g.qr();
            let r = qr.r();
            if (0..n).any(|i| r[(i, i)].abs() < 1e-10) {
                continue;
            }
            let q = qr.q();
            return ProjectionMatrix {
                mat: &q * q.transpose(),
            };
        }
    }

    /// Deterministic sample from a bare seed.
    pub fn random_projection(n: usize, seed: u64) -> Self {
        Self::sample(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn ambient_dim(&self) -> usize {
        self.mat.nrows()
    }

    /// n, the rank a valid matrix must have (half the ambient
    /// dimension).
    pub fn rank_target(&self) -> usize {
        self.ambient_dim() / 2
    }

    /// The image of the involution: E - P, projecting onto the
    /// orthogonal complement.
    pub fn complement(&self) -> ProjectionMatrix {
        let e = DMatrix::identity(self.ambient_dim(), self.ambient_dim());
        ProjectionMatrix { mat: e - &self.mat }
    }

    /// (P_11 - 1/2, P_12, ..., P_1,2n). Antipodal under the
    /// involution, and of norm exactly 1/2 for a true projection: the
    /// first row of P^2 = P gives sum_i P_1i^2 = P_11, so
    /// |f|^2 = (P_11 - 1/2)^2 + P_11 - P_11^2 = 1/4.
    pub fn sphere_map(&self) -> DVector<f64> {
        let dim = self.ambient_dim();
        DVector::from_fn(dim, |i, _| {
            if i == 0 {
                self.mat[(0, 0)] - 0.5
            } else {
                self.mat[(0, i)]
            }
        })
    }

    /// Block-diagonal sum of `copies` copies of this projection. The
    /// result projects R^(2n*copies) onto n*copies dimensions, and
    /// the construction commutes with the involution entry by entry.
    pub fn block_embed(&self, copies: usize) -> ProjectionMatrix {
        assert!(copies >= 1, "need at least one copy");
        let dim = self.ambient_dim();
        let mut mat = DMatrix::zeros(dim * copies, dim * copies);
        for k in 0..copies {
            mat.view_mut((k * dim, k * dim), (dim, dim))
                .copy_from(&self.mat);
        }
        ProjectionMatrix { mat }
    }

    pub fn symmetry_error(&self) -> f64 {
        (&self.mat - self.mat.transpose()).amax()
    }

    pub fn idempotency_error(&self) -> f64 {
        (&self.mat * &self.mat - &self.mat).amax()
    }

    pub fn trace_error(&self) -> f64 {
        (self.mat.trace() - self.rank_target() as f64).abs()
    }

    /// Largest distance of an eigenvalue from {0, 1}.
    pub fn spectrum_error(&self) -> f64 {
        let eigen = self.mat.clone().symmetric_eigenvalues();
        eigen
            .iter()
            .map(|&l| l.abs().min((l - 1.0).abs()))
            .fold(0.0, f64::max)
    }

    /// Eigenvalue counts near 0 and near 1 (within [`SPECTRUM_TOL`]).
    pub fn eigenvalue_counts(&self) -> (usize, usize) {
        let eigen = self.mat.clone().symmetric_eigenvalues();
        let zeros = eigen.iter().filter(|&&l| l.abs() <= SPECTRUM_TOL).count();
        let ones = eigen
            .iter()
            .filter(|&&l| (l - 1.0).abs() <= SPECTRUM_TOL)
            .count();
        (zeros, ones)
    }
}

#[derive(Debug, Clone)]
pub struct NumericOptions {
    /// Half-dimension of the sampled Grassmannian G(2n,n).
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
}

/// Number of copies used for the block-embedding check inside the
/// suite.
pub const EMBED_COPIES: usize = 2;

/// Aggregated worst-case errors over a seeded sample run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NumericSummary {
    pub samples: u64,
    /// Smallest sphere-map norm seen; the exact value is 1/2.
    pub min_norm: f64,
    /// Worst antipodality error of the sphere map and worst
    /// involution-commuting error of the block embedding.
    pub max_equivariance_error: f64,
    pub max_idempotency_error: f64,
    pub max_symmetry_error: f64,
    pub max_trace_error: f64,
    pub max_spectrum_error: f64,
}

impl NumericSummary {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("summary serializes")
    }

    /// All errors within the documented tolerances.
    pub fn within_tolerances(&self) -> bool {
        (self.min_norm - 0.5).abs() <= NORM_TOL
            && self.max_equivariance_error <= EQUIVARIANCE_TOL
            && self.max_idempotency_error <= PROJECTION_TOL
            && self.max_symmetry_error <= PROJECTION_TOL
            && self.max_trace_error <= PROJECTION_TOL
            && self.max_spectrum_error <= SPECTRUM_TOL
    }
}

/// Runs the seeded verification suite: samples projections, applies
/// the involution, and accumulates worst-case errors of every
/// identity. Deterministic for a fixed seed.
pub fn verify_equivariant_maps(options: &NumericOptions) -> NumericSummary {
    assert!(options.n >= 1, "need n >= 1");
    assert!(options.samples >= 1, "need at least one sample");
    let n = options.n;
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);

    let mut min_norm = f64::INFINITY;
    let mut max_equiv = 0.0f64;
    let mut max_idem = 0.0f64;
    let mut max_sym = 0.0f64;
    let mut max_trace = 0.0f64;
    let mut max_spectrum = 0.0f64;

    let big_dim = 2 * n * EMBED_COPIES;
    let big_e = DMatrix::<f64>::identity(big_dim, big_dim);

    for _ in 0..options.samples {
        let p = ProjectionMatrix::sample(n, &mut rng);
        let comp = p.complement();

        let f = p.sphere_map();
        let fc = comp.sphere_map();
        min_norm = min_norm.min(f.norm());
        max_equiv = max_equiv.max((&f + &fc).amax());

        let emb = p.block_embed(EMBED_COPIES);
        let emb_comp = comp.block_embed(EMBED_COPIES);
        max_equiv = max_equiv.max((emb_comp.matrix() - (&big_e - emb.matrix())).amax());

        max_idem = max_idem.max(p.idempotency_error().max(emb.idempotency_error()));
        max_sym = max_sym.max(p.symmetry_error().max(emb.symmetry_error()));
        max_trace = max_trace.max(p.trace_error().max(emb.trace_error()));
        max_spectrum = max_spectrum.max(p.spectrum_error());
    }

    NumericSummary {
        samples: options.samples,
        min_norm,
        max_equivariance_error: max_equiv,
        max_idempotency_error: max_idem,
        max_symmetry_error: max_sym,
        max_trace_error: max_trace,
        max_spectrum_error: max_spectrum,
    }
}
