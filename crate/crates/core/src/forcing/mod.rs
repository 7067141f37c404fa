//! Machine-checkable upper-bound certificates for the continuous problem.

mod certificate;
mod chains;
mod prover;

pub use certificate::{
    verify_branch, verify_certificate, Assumption, BranchNode, FailureReason, ForcingCertificate, ForcingStep,
    Outcome, ShapeError, VerifyFailure, VerifySummary,
};
pub use chains::{build_blue1_certificate, build_lemma2_certificate, Lemma4Parameters};
pub use prover::{auto_prove, Grid};

use crate::equations::{Color, ProblemSpec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ForcingError {
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("the {branch} branch is unproved at grid denominator {denominator} and depth {depth}")]
    Unproved { branch: Color, denominator: u32, depth: u32 },
    #[error("built certificate does not verify: {0}")]
    Verification(#[from] VerifyFailure),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifyOptions {
    /// When set, every branch is found by the automatic prover on this grid
    /// instead of using the hand-derived chains.
    pub grid_denominator: Option<u32>,
    pub max_depth: u32,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            grid_denominator: None,
            max_depth: 64,
        }
    }
}

/// Assembles and verifies a certificate that every coloring of
/// `[gamma, gamma(kl + k - 1)]` has a monochromatic solution.
///
/// Default sources: `k = 2` uses the explicit chains for both colors of
/// `gamma`; `3 <= k < l` uses the explicit chain when `gamma` is blue and the
/// prover on the integer grid when it is red; `k = l >= 3` uses the prover
/// for both.
pub fn certify_upper(spec: &ProblemSpec, opts: &CertifyOptions) -> Result<ForcingCertificate, ForcingError> {
    let domain_end = spec.gamma.mul_int(spec.unit_bound());
    let auto = |color: Color, d: u32| -> Result<BranchNode, ForcingError> {
        auto_prove(spec, d, &[(spec.gamma.clone(), color)], opts.max_depth)?.ok_or(ForcingError::Unproved {
            branch: color,
            denominator: d,
            depth: opts.max_depth,
        })
    };
    let cert = match opts.grid_denominator {
        Some(d) => ForcingCertificate {
            spec: spec.clone(),
            domain_end,
            root: [auto(Color::Red, d)?, auto(Color::Blue, d)?],
        },
        None if spec.k == 2 => chains::k2_certificate(spec)?,
        None if spec.k < spec.l => ForcingCertificate {
            spec: spec.clone(),
            domain_end,
            root: [auto(Color::Red, 1)?, build_blue1_certificate(spec)?],
        },
        None => ForcingCertificate {
            spec: spec.clone(),
            domain_end,
            root: [auto(Color::Red, 1)?, auto(Color::Blue, 1)?],
        },
    };
    verify_certificate(&cert)?;
    Ok(cert)
}

/// Convenience for the common `gamma = 1` case.
pub fn certify_upper_default(k: u32, l: u32) -> Result<ForcingCertificate, ForcingError> {
    let spec = ProblemSpec::new(k, l).map_err(|e| ForcingError::Precondition(e.to_string()))?;
    certify_upper(&spec, &CertifyOptions::default())
}

