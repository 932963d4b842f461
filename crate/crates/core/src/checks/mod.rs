//! Seeded randomized property campaigns shared by the command line tool and
//! the acceptance suite.
//!
//! Instance `i` of a campaign with seed `s` draws from ChaCha8 seeded with
//! `s` on stream `i`, so instances are independent of each other and of the
//! number of worker threads. A failing instance is re-run with the polynomial
//! degree lowered as far as it keeps failing, then the dimension.

mod report;
mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{
    CheckStatus, Format, InstanceReport, ReportParseError, Shrunk, VerificationReport,
};
pub use suites::pick_family;

/// The named property suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckKind {
    DlogIdentities,
    HolonomyIdentities,
    CurvatureCommutator,
    BrokenLine,
    Green,
    Gauss,
    GaussSimplex,
    Cocycle,
    Simplicial,
    Abelian,
    Central,
}

impl CheckKind {
    pub fn all() -> [CheckKind; 11] {
        use CheckKind::*;
        [
            DlogIdentities,
            HolonomyIdentities,
            CurvatureCommutator,
            BrokenLine,
            Green,
            Gauss,
            GaussSimplex,
            Cocycle,
            Simplicial,
            Abelian,
            Central,
        ]
    }

    pub fn name(self) -> &'static str {
        use CheckKind::*;
        match self {
            DlogIdentities => "dlog-identities",
            HolonomyIdentities => "holonomy-identities",
            CurvatureCommutator => "curvature-commutator",
            BrokenLine => "broken-line",
            Green => "green",
            Gauss => "gauss",
            GaussSimplex => "gauss-simplex",
            Cocycle => "cocycle",
            Simplicial => "simplicial",
            Abelian => "abelian",
            Central => "central",
        }
    }

    pub fn summary(self) -> &'static str {
        use CheckKind::*;
        match self {
            DlogIdentities => "log-derivative product, inverse, ad and commutator identities",
            HolonomyIdentities => {
                "transport composition and the derivative of the represented holonomy"
            }
            CurvatureCommutator => {
                "commutator of covariant log-derivatives and the parameter derivative of holonomy"
            }
            BrokenLine => "broken-line holonomy under reversal, rotation and concatenation",
            Green => {
                "boundary holonomy of a chain of rectangles equals delta of its surface holonomy"
            }
            Gauss => "surface holonomy of a parallelepiped boundary is trivial",
            GaussSimplex => "face holonomies of a 3-simplex compose to the identity",
            Cocycle => "integrated simplices satisfy the nerve conditions including the 2-cocycle",
            Simplicial => "integration commutes with faces and degeneracies",
            Abelian => "abelian integration formula and additivity",
            Central => "projection to the central quotient and central equivariance",
        }
    }

    /// Default bounds used by the command line tool.
    pub fn default_params(self) -> CampaignParams {
        use CheckKind::*;
        let (class, degree) = match self {
            DlogIdentities | HolonomyIdentities | CurvatureCommutator | BrokenLine => (4, 3),
            Green | Gauss | GaussSimplex => (3, 2),
            Cocycle | Simplicial | Abelian | Central => (3, 2),
        };
        CampaignParams {
            seed: 0,
            count: 25,
            class,
            dim: 6,
            degree,
        }
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown check {0:?}")]
pub struct UnknownCheck(pub String);

impl FromStr for CheckKind {
    type Err = UnknownCheck;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::all()
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownCheck(s.to_string()))
    }
}

/// Seed, instance count and the bounds on nilpotency class, Lie algebra
/// dimension and polynomial degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignParams {
    pub seed: u64,
    pub count: usize,
    pub class: usize,
    pub dim: usize,
    pub degree: u32,
}

/// Bounds for a single instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub class: usize,
    pub dim: usize,
    pub degree: u32,
}

pub fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Runs instance `index` of a campaign.
pub fn run_instance(
    kind: CheckKind,
    seed: u64,
    index: usize,
    bounds: Bounds,
) -> (String, Vec<CheckStatus>) {
    suites::run(kind, &mut instance_rng(seed, index), bounds)
}

fn failing(kind: CheckKind, seed: u64, index: usize, bounds: Bounds) -> Option<String> {
    let (descriptor, checks) = run_instance(kind, seed, index, bounds);
    (!checks.iter().all(|c| c.pass)).then_some(descriptor)
}

fn shrink(kind: CheckKind, seed: u64, index: usize, bounds: Bounds) -> Option<Shrunk> {
    let mut best = bounds;
    let mut descriptor = None;
    while best.degree > 0 {
        let b = Bounds {
            degree: best.degree - 1,
            ..best
        };
        match failing(kind, seed, index, b) {
            Some(d) => {
                best = b;
                descriptor = Some(d);
            }
            None => break,
        }
    }
    while best.dim > 1 {
        let b = Bounds {
            dim: best.dim - 1,
            ..best
        };
        match failing(kind, seed, index, b) {
            Some(d) => {
                best = b;
                descriptor = Some(d);
            }
            None => break,
        }
    }
    descriptor.map(|descriptor| Shrunk {
        degree: best.degree,
        dim: best.dim,
        descriptor,
    })
}

/// Runs `params.count` seeded instances concurrently; the report lists them
/// in index order.
pub fn run_campaign(kind: CheckKind, params: &CampaignParams) -> VerificationReport {
    suites::warm_up();
    let bounds = Bounds {
        class: params.class,
        dim: params.dim,
        degree: params.degree,
    };
    let mut instances: Vec<InstanceReport> = (0..params.count)
        .into_par_iter()
        .map(|index| {
            let (descriptor, checks) = run_instance(kind, params.seed, index, bounds);
            let mut inst = InstanceReport {
                index,
                descriptor,
                checks,
                shrunk: None,
            };
            if !inst.pass() {
                inst.shrunk = shrink(kind, params.seed, index, bounds);
            }
            inst
        })
        .collect();
    instances.sort_by_key(|i| i.index);
    VerificationReport {
        command: format!("verify {}", kind.name()),
        seed: params.seed,
        instances,
        wall_time_ms: None,
    }
}

/// Like [`run_campaign`] but records the wall time.
pub fn run_campaign_timed(kind: CheckKind, params: &CampaignParams) -> VerificationReport {
    let start = Instant::now();
    let mut report = run_campaign(kind, params);
    report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    report
}
