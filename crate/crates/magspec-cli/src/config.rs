//! Experiment configuration: JSON file + command-line overrides.
//!
//! Every run resolves one [`ExperimentConfig`] (subcommand defaults, then an
//! optional `--config` JSON file, then flag overrides) and writes the
//! resolved value next to its CSV output, so each artifact records exactly
//! the parameters that produced it.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use magspec::geometry::{
    circumscribed_polygon, random_convex_polygon, regular_polygon, unit_square, ConvexPolygon,
};

use crate::{CliError, CliResult};

/// Gauge choice for the vector potential, mirrored here so configs stay
/// serializable without coupling the library to serde.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GaugeSpec {
    Landau,
    Symmetric,
}

impl GaugeSpec {
    pub fn to_gauge(self) -> magspec::assembly::Gauge {
        match self {
            GaugeSpec::Landau => magspec::assembly::Gauge::Landau,
            GaugeSpec::Symmetric => magspec::assembly::Gauge::Symmetric,
        }
    }
}

/// Domain selector: either the unit disk (handled by the fiber
/// decomposition) or a convex polygon (handled by the finite-element path).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DomainSpec {
    /// Unit disk centered at the origin.
    Disk,
    /// Axis-aligned unit square `(0,1)²`.
    UnitSquare,
    /// Regular polygon centered at the origin.
    RegularPolygon { sides: usize, circumradius: f64 },
    /// Seeded random convex polygon with vertices in the unit disk; the
    /// seed comes from [`ExperimentConfig::seed`].
    RandomPolygon { vertices: usize },
    /// Polygon circumscribed about the unit disk (tangent edge midpoints).
    CircumscribedPolygon { sides: usize },
}

impl DomainSpec {
    pub fn is_disk(&self) -> bool {
        matches!(self, DomainSpec::Disk)
    }

    /// Short CSV-safe label for the `domain` column.
    pub fn label(&self, seed: u64) -> String {
        match self {
            DomainSpec::Disk => "disk".into(),
            DomainSpec::UnitSquare => "square".into(),
            DomainSpec::RegularPolygon { sides, .. } => format!("regular{sides}"),
            DomainSpec::RandomPolygon { vertices } => format!("random{vertices}s{seed}"),
            DomainSpec::CircumscribedPolygon { sides } => format!("circ{sides}"),
        }
    }

    /// Builds the polygon for finite-element domains; rejects the disk,
    /// which has no polygonal realization and is served by the fiber path.
    pub fn build(&self, seed: u64) -> CliResult<ConvexPolygon> {
        match self {
            DomainSpec::Disk => Err(CliError::Config(
                "the disk has no polygon; this command needs a polygonal domain".into(),
            )),
            DomainSpec::UnitSquare => Ok(unit_square()),
            DomainSpec::RegularPolygon { sides, circumradius } => {
                Ok(regular_polygon(*sides, *circumradius)?)
            }
            DomainSpec::RandomPolygon { vertices } => Ok(random_convex_polygon(*vertices, seed)?),
            DomainSpec::CircumscribedPolygon { sides } => Ok(circumscribed_polygon(1.0, *sides)?),
        }
    }

    fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        match self {
            DomainSpec::Disk | DomainSpec::UnitSquare => Ok(()),
            DomainSpec::RegularPolygon { sides, circumradius } => {
                if *sides < 3 {
                    return bad(format!("regular polygon needs at least 3 sides, got {sides}"));
                }
                if !(circumradius.is_finite() && *circumradius > 0.0) {
                    return bad(format!("circumradius must be positive, got {circumradius}"));
                }
                Ok(())
            }
            DomainSpec::RandomPolygon { vertices } => {
                if *vertices < 3 {
                    return bad(format!("random polygon needs at least 3 vertices, got {vertices}"));
                }
                Ok(())
            }
            DomainSpec::CircumscribedPolygon { sides } => {
                if *sides < 3 {
                    return bad(format!(
                        "circumscribed polygon needs at least 3 sides, got {sides}"
                    ));
                }
                Ok(())
            }
        }
    }
}

fn default_n_set() -> Vec<i32> {
    vec![-1, 0, 1, 2]
}

fn default_q_set() -> Vec<u32> {
    vec![0, 1]
}

fn default_edge_counts() -> Vec<usize> {
    vec![8, 16, 32, 64]
}

fn default_length() -> f64 {
    std::f64::consts::PI
}

/// One experiment's full parameter set.
///
/// Invariants (enforced by [`ExperimentConfig::validate`]): every field
/// strength is positive and finite, refinement levels are nondecreasing,
/// the eigenvalue index range is at least 1, and named tolerances are
/// positive and finite.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Domain the experiment runs on.
    pub domain: DomainSpec,
    /// Field strengths `b` to sweep.
    pub b_values: Vec<f64>,
    /// Number of low eigenvalue indices to test (`k = 1..=k_range`).
    pub k_range: usize,
    /// Mesh refinement levels, nondecreasing; the last two levels feed the
    /// two-level error estimate where one is needed.
    pub refine_levels: Vec<u32>,
    /// Gauge for the vector potential.
    pub gauge: GaugeSpec,
    /// Named tolerance overrides; anything not listed uses the documented
    /// per-check default.
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
    /// Seed for any randomized domain in the run.
    #[serde(default)]
    pub seed: u64,
    /// Angular momenta for the disk fiber curves (disk-curves command).
    #[serde(default = "default_n_set")]
    pub n_set: Vec<i32>,
    /// Landau-level indices `q` for the counting command.
    #[serde(default = "default_q_set")]
    pub q_set: Vec<u32>,
    /// Circumscribed-polygon edge counts for the semicontinuity command.
    #[serde(default = "default_edge_counts")]
    pub edge_counts: Vec<usize>,
    /// Cylinder length for the cylinder command.
    #[serde(default = "default_length")]
    pub length: f64,
}

impl ExperimentConfig {
    /// Loads a config from a JSON file.
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::Config(format!("cannot read config {}: {e}", path.display()))
        })?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        Ok(cfg)
    }

    /// Applies command-line overrides on top of the loaded config.
    ///
    /// `--refine r` replaces the level list with the two-level pair
    /// `[r-1, r]` (just `[0]` for `r = 0`), `--seed` replaces the seed, and
    /// each `--tol name=value` inserts into the tolerance map.
    pub fn apply_overrides(
        &mut self,
        tols: &[(String, f64)],
        refine: Option<u32>,
        seed: Option<u64>,
    ) {
        if let Some(r) = refine {
            self.refine_levels = if r == 0 { vec![0] } else { vec![r - 1, r] };
        }
        if let Some(s) = seed {
            self.seed = s;
        }
        for (name, value) in tols {
            self.tolerances.insert(name.clone(), *value);
        }
    }

    /// Checks the structural invariants shared by every command.
    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        self.domain.validate()?;
        if self.b_values.is_empty() {
            return bad("b_values must not be empty".into());
        }
        for &b in &self.b_values {
            if !(b.is_finite() && b > 0.0) {
                return bad(format!("field strengths must be positive and finite, got {b}"));
            }
        }
        if self.k_range < 1 {
            return bad("k_range must be at least 1".into());
        }
        if self.refine_levels.is_empty() {
            return bad("refine_levels must not be empty".into());
        }
        for w in self.refine_levels.windows(2) {
            if w[0] > w[1] {
                return bad(format!(
                    "refine_levels must be nondecreasing, got {} before {}",
                    w[0], w[1]
                ));
            }
        }
        for (name, &value) in &self.tolerances {
            if !(value.is_finite() && value > 0.0) {
                return bad(format!("tolerance {name} must be positive and finite, got {value}"));
            }
        }
        if self.n_set.is_empty() {
            return bad("n_set must not be empty".into());
        }
        for &n in &self.n_set {
            if !(-3..=4).contains(&n) {
                return bad(format!("fiber indices must lie in -3..=4, got {n}"));
            }
        }
        if self.q_set.is_empty() {
            return bad("q_set must not be empty".into());
        }
        if self.edge_counts.is_empty() {
            return bad("edge_counts must not be empty".into());
        }
        for w in self.edge_counts.windows(2) {
            if w[0] >= w[1] {
                return bad(format!(
                    "edge_counts must be strictly increasing, got {} before {}",
                    w[0], w[1]
                ));
            }
        }
        for &n in &self.edge_counts {
            if n < 3 {
                return bad(format!("circumscribed polygons need at least 3 edges, got {n}"));
            }
        }
        if !(self.length.is_finite() && self.length > 0.0) {
            return bad(format!("cylinder length must be positive and finite, got {}", self.length));
        }
        Ok(())
    }

    /// Named tolerance with a per-check default.
    pub fn tol(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// Top (finest) configured refinement level.
    pub fn top_refine(&self) -> u32 {
        *self.refine_levels.last().expect("validated nonempty")
    }

    /// The last two refinement levels as a (coarse, fine) pair for
    /// two-level error estimates; errors out when only one level is given.
    pub fn refine_pair(&self) -> CliResult<(u32, u32)> {
        if self.refine_levels.len() < 2 {
            return Err(CliError::Config(
                "this command needs at least two refinement levels for its two-level error estimate"
                    .into(),
            ));
        }
        let fine = self.refine_levels[self.refine_levels.len() - 1];
        let coarse = self.refine_levels[self.refine_levels.len() - 2];
        if coarse == fine {
            return Err(CliError::Config(
                "the last two refinement levels must differ for the two-level error estimate".into(),
            ));
        }
        Ok((coarse, fine))
    }

    /// Serializes the resolved config as pretty JSON (stable field order,
    /// sorted tolerance map) for the run artifact.
    pub fn to_resolved_json(&self) -> CliResult<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}

/// Per-subcommand default configurations.
pub mod defaults {
    use super::*;

    fn base(domain: DomainSpec) -> ExperimentConfig {
        ExperimentConfig {
            domain,
            b_values: vec![1.0],
            k_range: 1,
            refine_levels: vec![3, 4],
            gauge: GaugeSpec::Landau,
            tolerances: BTreeMap::new(),
            seed: 0,
            n_set: default_n_set(),
            q_set: default_q_set(),
            edge_counts: default_edge_counts(),
            length: default_length(),
        }
    }

    /// Fiber-curve sweep over `b ∈ {0.25, 0.5, …, 4.0}`.
    pub fn disk_curves() -> ExperimentConfig {
        let mut cfg = base(DomainSpec::Disk);
        cfg.b_values = (1..=16).map(|j| 0.25 * j as f64).collect();
        cfg.refine_levels = vec![0];
        cfg
    }

    pub fn polygon_sweep() -> ExperimentConfig {
        let mut cfg = base(DomainSpec::UnitSquare);
        cfg.b_values = vec![0.5, 1.0, 2.0, 4.0];
        cfg.k_range = 5;
        cfg
    }

    pub fn cylinder() -> ExperimentConfig {
        let mut cfg = base(DomainSpec::Disk);
        cfg.b_values = vec![1.0, 2.0];
        cfg.k_range = 8;
        cfg
    }

    pub fn counting() -> ExperimentConfig {
        base(DomainSpec::Disk)
    }

    pub fn invariants() -> ExperimentConfig {
        let mut cfg = base(DomainSpec::UnitSquare);
        cfg.b_values = vec![2.0];
        cfg.k_range = 4;
        cfg
    }

    pub fn semicontinuity() -> ExperimentConfig {
        base(DomainSpec::Disk)
    }
}

/// Parses one `--tol name=value` argument.
pub fn parse_tol_flag(raw: &str) -> Result<(String, f64), String> {
    let Some((name, value)) = raw.split_once('=') else {
        return Err(format!("expected name=value, got {raw:?}"));
    };
    let name = name.trim();
    if name.is_empty() {
        return Err(format!("empty tolerance name in {raw:?}"));
    }
    let value: f64 = value
        .trim()
        .parse()
        .map_err(|e| format!("bad tolerance value in {raw:?}: {e}"))?;
    Ok((name.to_string(), value))
}
