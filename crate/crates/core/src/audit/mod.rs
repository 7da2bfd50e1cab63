//! Finite-scale audits of hyperbolicity and of the quasi-isometry to the line.
//!
//! Every audit returns an [`AuditReport`]. Reports are deterministic functions
//! of their inputs except for `duration_ms`; ties between witnesses are broken
//! by taking the first one in enumeration order.

mod fourpoint;
mod qi;
mod slim;
mod walk;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::conway::ConwayClass;
use crate::metric::{delta_nabla_distance, UniverseParams, DEFAULT_GEODESIC_CAP};

pub use fourpoint::{audit_four_point, gromov_product};
pub use qi::{audit_quasi_isometry, audit_triangle_free, QiConstants};
pub use slim::{audit_slimness, recheck_triangle_witness, triangle_slimness, GeodesicTriangle, Slimness};
pub use walk::{audit_okada_walk, WalkLimits};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
/// Identifier of the pseudo-random generator recorded in sampled reports.
pub const RNG_ALGORITHM: &str = "chacha8";
pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_SAMPLE_SIZE: u64 = 10_000;
/// Configurations an exhaustive audit may examine before it falls back to
/// sampling (or fails, if fallback is disabled).
pub const DEFAULT_BUDGET: u64 = 50_000_000;

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An exact multiple of one half.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt {
    twice: BigInt,
}

impl HalfInt {
    pub fn from_twice(twice: impl Into<BigInt>) -> Self {
        Self { twice: twice.into() }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self { twice: n.into() * 2 }
    }

    pub fn twice(&self) -> &BigInt {
        &self.twice
    }

    pub fn is_integer(&self) -> bool {
        self.twice.is_even()
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_even() {
            write!(f, "{}", &self.twice / 2)
        } else {
            let sign = if self.twice < BigInt::default() { "-" } else { "" };
            write!(f, "{sign}{}.5", self.twice.magnitude() / 2u8)
        }
    }
}

impl FromStr for HalfInt {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let bad = || format!("`{s}` is not a multiple of 1/2");
        match s.strip_suffix(".5") {
            Some(whole) => {
                let neg = whole.starts_with('-');
                let w: BigInt = whole.parse().map_err(|_| bad())?;
                let twice = w * 2 + if neg { -1 } else { 1 };
                Ok(Self { twice })
            }
            None => Ok(Self::from_int(s.parse::<BigInt>().map_err(|_| bad())?)),
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AuditKind {
    Slim,
    FourPoint,
    Qi,
    TriangleFree,
    OkadaWalk,
}

impl fmt::Display for AuditKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AuditKind::Slim => "slim",
            AuditKind::FourPoint => "four-point",
            AuditKind::Qi => "qi",
            AuditKind::TriangleFree => "triangle-free",
            AuditKind::OkadaWalk => "okada-walk",
        })
    }
}

/// Knobs shared by the universe audits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub mode: Mode,
    pub seed: u64,
    /// Configurations drawn in sampled mode.
    pub sample_size: u64,
    /// Geodesics enumerated per corner pair in the slimness audit.
    pub geodesic_cap: usize,
    /// Largest number of configurations an exhaustive run may examine.
    pub budget: u64,
    /// When an exhaustive run exceeds a cap: sample instead (`true`) or fail.
    pub sampling_fallback: bool,
}

impl Default for AuditConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Exhaustive,
            seed: DEFAULT_SEED,
            sample_size: DEFAULT_SAMPLE_SIZE,
            geodesic_cap: DEFAULT_GEODESIC_CAP,
            budget: DEFAULT_BUDGET,
            sampling_fallback: true,
        }
    }
}

impl AuditConfig {
    pub fn exhaustive() -> Self {
        Self::default()
    }

    pub fn sampled(seed: u64, sample_size: u64) -> Self {
        Self { mode: Mode::Sampled, seed, sample_size, ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampling {
    pub algorithm: String,
    pub seed: u64,
    pub sample_size: u64,
}

impl Sampling {
    pub(crate) fn new(seed: u64, sample_size: u64) -> Self {
        Self { algorithm: RNG_ALGORITHM.into(), seed, sample_size }
    }
}

/// The configuration that attains the reported value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Witness {
    /// `vertex` lies on side `side` at distance `delta` from the other two.
    Triangle { corners: [String; 3], sides: [Vec<String>; 3], side: usize, vertex: String, delta: u64 },
    Quadruple { points: [String; 4], value: HalfInt },
    Pair { u: String, v: String, distance: u64, a2_gap: u64 },
    Clique { vertices: [String; 3] },
    Step { index: u64, before: i64, after: i64, word: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSummary {
    pub case: u8,
    pub triangles: u64,
    pub max_delta: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Details {
    Slim {
        corner_triples: u64,
        /// Corner triples whose side combinations were sampled because a
        /// geodesic enumeration hit the cap.
        fallback_triples: u64,
        cases: Vec<CaseSummary>,
        /// Maximum over triangles with all corners on one level, and its bound.
        equal_level_max: Option<u64>,
        equal_level_bound: u64,
    },
    FourPoint {
        quadruples: u64,
    },
    Qi {
        constants: QiConstants,
        pairs: u64,
        violation_count: u64,
        /// First violations in enumeration order, at most 20.
        violations: Vec<Witness>,
        levels_missing: Vec<i64>,
    },
    TriangleFree {
        edges: u64,
        triangles: u64,
    },
    OkadaWalk {
        start: String,
        steps_requested: u64,
        steps_done: u64,
        truncated: bool,
        truncation_reason: Option<String>,
        trace: Vec<i64>,
        /// Steps whose value was also recomputed by skein resolution.
        skein_cross_checks: u64,
        final_word_length: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub schema_version: u32,
    pub kind: AuditKind,
    pub universe: Option<UniverseParams>,
    pub mode: Mode,
    pub sampling: Option<Sampling>,
    pub bound: HalfInt,
    pub measured: HalfInt,
    pub pass: bool,
    pub configurations: u64,
    pub witness: Option<Witness>,
    pub details: Details,
    pub duration_ms: u64,
}

impl AuditReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> crate::Result<Self> {
        serde_json::from_str(text).map_err(|e| crate::Error::InvalidAudit(e.to_string()))
    }

    /// The report with `duration_ms` zeroed, for comparisons.
    pub fn without_duration(&self) -> Self {
        Self { duration_ms: 0, ..self.clone() }
    }
}

pub(crate) fn list(v: &ConwayClass) -> String {
    v.poly().to_list_string()
}

pub(crate) fn dist_u64(u: &ConwayClass, v: &ConwayClass) -> u64 {
    u64::try_from(delta_nabla_distance(u, v)).expect("distance fits in 64 bits")
}

pub(crate) fn elapsed_ms(start: std::time::Instant) -> u64 {
    start.elapsed().as_millis().try_into().unwrap_or(u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_int_text() {
        for (twice, text) in [(0, "0"), (4, "2"), (3, "1.5"), (1, "0.5"), (-1, "-0.5"), (-5, "-2.5"), (-4, "-2")] {
            let h = HalfInt::from_twice(twice);
            assert_eq!(h.to_string(), text);
            assert_eq!(text.parse::<HalfInt>().unwrap(), h);
        }
        assert!("1.25".parse::<HalfInt>().is_err());
        assert!(HalfInt::from_twice(3) > HalfInt::from_int(1));
    }

    #[test]
    fn report_round_trip() {
        let r = AuditReport {
            schema_version: REPORT_SCHEMA_VERSION,
            kind: AuditKind::FourPoint,
            universe: Some(UniverseParams::new(-1, 1, 1, 0)),
            mode: Mode::Sampled,
            sampling: Some(Sampling::new(7, 10)),
            bound: HalfInt::from_int(2),
            measured: HalfInt::from_twice(1),
            pass: true,
            configurations: 10,
            witness: None,
            details: Details::FourPoint { quadruples: 10 },
            duration_ms: 3,
        };
        let text = r.to_json();
        assert!(text.contains("\"schema_version\": 1"));
        assert!(text.contains("\"measured\": \"0.5\""));
        assert!(text.contains("\"algorithm\": \"chacha8\""));
        assert_eq!(AuditReport::from_json(&text).unwrap(), r);
    }
}
