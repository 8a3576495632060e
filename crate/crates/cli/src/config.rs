//! The JSON run configuration: schema, defaults and validation.
//!
//! Parsing is two-phase. The top level is read with path tracking, then every
//! tagged entry (task, sequence, map, set) is dispatched on its `kind` and
//! read again with its own path prefix, so diagnostics always name the
//! offending field, e.g. `tasks[0].sampler.seed: required`.

use std::collections::BTreeMap;
use std::fmt;

use gifpsi::algebra::{CircleOp, FuzzyConnectives, PsiFunction, TConorm, TNorm};
use gifpsi::continuity::IfcForm;
use gifpsi::map::{MapSpec, ScalarFn};
use gifpsi::sampler::{log_grid, SamplerConfig};
use gifpsi::sequence::{DetectorGrid, Tail};
use gifpsi::{corpus, AlphaVariant, Basis, CrispNorm, GifPsiNorm, SequenceSpec, SetSpec, VectorSpaceConfig};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// A schema or referential-integrity failure, located by a field path.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{path}: {message}")]
pub struct ConfigError {
    pub path: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            path: path.into(),
            message: message.into(),
        }
    }
}

type Result<T> = std::result::Result<T, ConfigError>;

fn join(prefix: &str, rest: &str) -> String {
    let rest = if rest == "." { "" } else { rest };
    match (prefix.is_empty(), rest.is_empty()) {
        (true, _) => rest.to_string(),
        (false, true) => prefix.to_string(),
        (false, false) if rest.starts_with('[') => format!("{prefix}{rest}"),
        (false, false) => format!("{prefix}.{rest}"),
    }
}

fn from_value<T: DeserializeOwned>(v: Value, prefix: &str) -> Result<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let path = join(prefix, &inner);
        let msg = e.into_inner().to_string();
        // serde reports a missing field at its parent; move it onto the field.
        match msg.strip_prefix("missing field `").and_then(|m| m.strip_suffix('`')) {
            Some(field) => ConfigError::new(join(&path, field), "required"),
            None => ConfigError::new(if path.is_empty() { "<root>".into() } else { path }, msg),
        }
    })
}

/// Splits the `kind` tag off a tagged object.
fn take_kind(v: Value, path: &str) -> Result<(String, Value)> {
    let Value::Object(mut map) = v else {
        return Err(ConfigError::new(path, "expected an object"));
    };
    match map.remove("kind") {
        Some(Value::String(k)) => Ok((k, Value::Object(map))),
        Some(_) => Err(ConfigError::new(join(path, "kind"), "expected a string")),
        None => Err(ConfigError::new(join(path, "kind"), "required")),
    }
}

fn unknown_kind(path: &str, kind: &str, allowed: &[&str]) -> ConfigError {
    ConfigError::new(
        join(path, "kind"),
        format!("unknown kind \"{kind}\"; expected one of {}", allowed.join(", ")),
    )
}

// ---------------------------------------------------------------- space

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CrispNormDef {
    P { p: f64 },
    Max,
}

impl Default for CrispNormDef {
    fn default() -> Self {
        CrispNormDef::P { p: 2.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum NormDef {
    Standard { k: f64 },
}

impl Default for NormDef {
    fn default() -> Self {
        NormDef::Standard { k: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TNormDef {
    #[default]
    Minimum,
    Product,
    Lukasiewicz,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum TConormDef {
    #[default]
    Maximum,
    ProbabilisticSum,
    BoundedSum,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum CircleDef {
    #[default]
    Add,
    Max,
    PowerMean { n: u32 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PsiDef {
    #[default]
    Abs,
    AbsPower { p: f64 },
    RationalExample { n: u32 },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectivesDef {
    #[serde(default)]
    pub tnorm: TNormDef,
    #[serde(default)]
    pub tconorm: TConormDef,
    #[serde(default)]
    pub circle: CircleDef,
    #[serde(default)]
    pub psi: PsiDef,
}

impl ConnectivesDef {
    pub fn build(&self) -> FuzzyConnectives {
        FuzzyConnectives {
            tnorm: match self.tnorm {
                TNormDef::Minimum => TNorm::Minimum,
                TNormDef::Product => TNorm::Product,
                TNormDef::Lukasiewicz => TNorm::Lukasiewicz,
            },
            tconorm: match self.tconorm {
                TConormDef::Maximum => TConorm::Maximum,
                TConormDef::ProbabilisticSum => TConorm::ProbabilisticSum,
                TConormDef::BoundedSum => TConorm::BoundedSum,
            },
            circle: match self.circle {
                CircleDef::Add => CircleOp::Add,
                CircleDef::Max => CircleOp::Max,
                CircleDef::PowerMean { n } => CircleOp::PowerMean { n },
            },
            psi: match self.psi {
                PsiDef::Abs => PsiFunction::Abs,
                PsiDef::AbsPower { p } => PsiFunction::AbsPower { p },
                PsiDef::RationalExample { n } => PsiFunction::RationalExample { n },
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceDef {
    pub dimension: usize,
    #[serde(default)]
    pub crisp_norm: CrispNormDef,
    #[serde(default)]
    pub connectives: ConnectivesDef,
    #[serde(default)]
    pub norm: NormDef,
}

impl SpaceDef {
    fn validate(&self, path: &str) -> Result<()> {
        if self.dimension == 0 {
            return Err(ConfigError::new(join(path, "dimension"), "must be >= 1"));
        }
        if let CrispNormDef::P { p } = self.crisp_norm {
            if !(p >= 1.0) || !p.is_finite() {
                return Err(ConfigError::new(join(path, "crisp_norm.p"), "must be >= 1"));
            }
        }
        let NormDef::Standard { k } = self.norm;
        if !(k > 0.0) || !k.is_finite() {
            return Err(ConfigError::new(join(path, "norm.k"), "must be > 0"));
        }
        let c = &self.connectives;
        if let CircleDef::PowerMean { n: 0 } = c.circle {
            return Err(ConfigError::new(join(path, "connectives.circle.n"), "must be >= 1"));
        }
        match c.psi {
            PsiDef::AbsPower { p } if !(p > 0.0) || !p.is_finite() => {
                Err(ConfigError::new(join(path, "connectives.psi.p"), "must be > 0"))
            }
            PsiDef::RationalExample { n: 0 } => {
                Err(ConfigError::new(join(path, "connectives.psi.n"), "must be >= 1"))
            }
            _ => Ok(()),
        }
    }

    pub fn crisp(&self) -> CrispNorm {
        match self.crisp_norm {
            CrispNormDef::P { p } => CrispNorm::P { p },
            CrispNormDef::Max => CrispNorm::Max,
        }
    }

    pub fn build(&self) -> GifPsiNorm {
        let NormDef::Standard { k } = self.norm;
        let space = VectorSpaceConfig {
            dimension: self.dimension,
            crisp_norm: self.crisp(),
        };
        GifPsiNorm::standard(space, k, self.connectives.build()).expect("validated space")
    }
}

// ---------------------------------------------------------------- entities

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TailDef {
    pub base: Vec<f64>,
    pub direction: Vec<f64>,
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SequenceDef {
    AffineDecay { base: Vec<f64>, direction: Vec<f64> },
    Geometric { base: Vec<f64>, direction: Vec<f64>, ratio: f64 },
    Oscillating { even: TailDef, odd: TailDef },
    Arithmetic { base: Vec<f64>, direction: Vec<f64> },
    Sinusoid { base: Vec<f64>, direction: Vec<f64>, frequency: f64 },
    Spiral { center: Vec<f64>, radius: f64, decay: f64, power: f64, frequency: f64 },
    Constant { point: Vec<f64> },
    Explicit { terms: Vec<Vec<f64>> },
    /// A member of the built-in corpus, by id.
    Corpus { name: String },
}

mod seq_body {
    use super::*;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Affine {
        pub base: Vec<f64>,
        pub direction: Vec<f64>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Geometric {
        pub base: Vec<f64>,
        pub direction: Vec<f64>,
        pub ratio: f64,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Oscillating {
        pub even: TailDef,
        pub odd: TailDef,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Sinusoid {
        pub base: Vec<f64>,
        pub direction: Vec<f64>,
        #[serde(default = "one")]
        pub frequency: f64,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Spiral {
        pub center: Vec<f64>,
        pub radius: f64,
        pub decay: f64,
        #[serde(default = "one")]
        pub power: f64,
        #[serde(default = "one")]
        pub frequency: f64,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Constant {
        pub point: Vec<f64>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Explicit {
        pub terms: Vec<Vec<f64>>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Named {
        pub name: String,
    }
}

const SEQUENCE_KINDS: &[&str] = &[
    "affine-decay",
    "geometric",
    "oscillating",
    "arithmetic",
    "sinusoid",
    "spiral",
    "constant",
    "explicit",
    "corpus",
];

impl SequenceDef {
    fn parse(v: Value, path: &str) -> Result<Self> {
        use seq_body::*;
        let (kind, body) = take_kind(v, path)?;
        Ok(match kind.as_str() {
            "affine-decay" => {
                let b: Affine = from_value(body, path)?;
                SequenceDef::AffineDecay { base: b.base, direction: b.direction }
            }
            "geometric" => {
                let b: Geometric = from_value(body, path)?;
                SequenceDef::Geometric { base: b.base, direction: b.direction, ratio: b.ratio }
            }
            "oscillating" => {
                let b: Oscillating = from_value(body, path)?;
                SequenceDef::Oscillating { even: b.even, odd: b.odd }
            }
            "arithmetic" => {
                let b: Affine = from_value(body, path)?;
                SequenceDef::Arithmetic { base: b.base, direction: b.direction }
            }
            "sinusoid" => {
                let b: Sinusoid = from_value(body, path)?;
                SequenceDef::Sinusoid { base: b.base, direction: b.direction, frequency: b.frequency }
            }
            "spiral" => {
                let b: Spiral = from_value(body, path)?;
                SequenceDef::Spiral {
                    center: b.center,
                    radius: b.radius,
                    decay: b.decay,
                    power: b.power,
                    frequency: b.frequency,
                }
            }
            "constant" => SequenceDef::Constant { point: from_value::<Constant>(body, path)?.point },
            "explicit" => SequenceDef::Explicit { terms: from_value::<Explicit>(body, path)?.terms },
            "corpus" => SequenceDef::Corpus { name: from_value::<Named>(body, path)?.name },
            other => return Err(unknown_kind(path, other, SEQUENCE_KINDS)),
        })
    }

    pub fn build(&self) -> gifpsi::Result<SequenceSpec> {
        match self.clone() {
            SequenceDef::AffineDecay { base, direction } => SequenceSpec::affine_decay(base, direction),
            SequenceDef::Geometric { base, direction, ratio } => {
                SequenceSpec::geometric(base, direction, ratio)
            }
            SequenceDef::Oscillating { even, odd } => SequenceSpec::oscillating(
                Tail { base: even.base, direction: even.direction },
                Tail { base: odd.base, direction: odd.direction },
            ),
            SequenceDef::Arithmetic { base, direction } => SequenceSpec::arithmetic(base, direction),
            SequenceDef::Sinusoid { base, direction, frequency } => {
                SequenceSpec::sinusoid(base, direction, frequency)
            }
            SequenceDef::Spiral { center, radius, decay, power, frequency } => {
                SequenceSpec::spiral(center, radius, decay, power, frequency)
            }
            SequenceDef::Constant { point } => SequenceSpec::constant(point),
            SequenceDef::Explicit { terms } => SequenceSpec::explicit(terms),
            SequenceDef::Corpus { name } => corpus::sequences()
                .into_iter()
                .find(|c| c.id == name)
                .map(|c| c.spec)
                .ok_or_else(|| {
                    let ids: Vec<_> = corpus::sequences().iter().map(|c| c.id).collect();
                    gifpsi::Error::Config(format!(
                        "unknown corpus sequence \"{name}\"; expected one of {}",
                        ids.join(", ")
                    ))
                }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum MapDef {
    Linear { matrix: Vec<Vec<f64>> },
    Affine { matrix: Vec<Vec<f64>>, offset: Vec<f64> },
    Scale { c: f64 },
    Square,
    Sign,
    Identity,
    RadialNormalize,
    RotationShift { angle: f64, offset: Vec<f64> },
}

mod map_body {
    use super::*;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Linear {
        pub matrix: Vec<Vec<f64>>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Affine {
        pub matrix: Vec<Vec<f64>>,
        pub offset: Vec<f64>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Scale {
        pub c: f64,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Empty {}
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct RotationShift {
        pub angle: f64,
        pub offset: Vec<f64>,
    }
}

const MAP_KINDS: &[&str] = &[
    "linear",
    "affine",
    "scale",
    "square",
    "sign",
    "identity",
    "radial-normalize",
    "rotation-shift",
];

impl MapDef {
    fn parse(v: Value, path: &str) -> Result<Self> {
        use map_body::*;
        let (kind, body) = take_kind(v, path)?;
        let unit = |body: Value, m: MapDef| from_value::<Empty>(body, path).map(|_| m);
        match kind.as_str() {
            "linear" => Ok(MapDef::Linear { matrix: from_value::<Linear>(body, path)?.matrix }),
            "affine" => {
                let b: Affine = from_value(body, path)?;
                Ok(MapDef::Affine { matrix: b.matrix, offset: b.offset })
            }
            "scale" => Ok(MapDef::Scale { c: from_value::<Scale>(body, path)?.c }),
            "square" => unit(body, MapDef::Square),
            "sign" => unit(body, MapDef::Sign),
            "identity" => unit(body, MapDef::Identity),
            "radial-normalize" => unit(body, MapDef::RadialNormalize),
            "rotation-shift" => {
                let b: RotationShift = from_value(body, path)?;
                Ok(MapDef::RotationShift { angle: b.angle, offset: b.offset })
            }
            other => Err(unknown_kind(path, other, MAP_KINDS)),
        }
    }

    /// The map on ℝᵈ; `dim` fixes the dimension of the componentwise kinds.
    pub fn build(&self, dim: usize) -> gifpsi::Result<MapSpec> {
        match self.clone() {
            MapDef::Linear { matrix } => MapSpec::linear(matrix),
            MapDef::Affine { matrix, offset } => MapSpec::affine(matrix, offset),
            MapDef::Scale { c } => Ok(MapSpec::componentwise(dim, ScalarFn::Scale(c))),
            MapDef::Square => Ok(MapSpec::componentwise(dim, ScalarFn::Square)),
            MapDef::Sign => Ok(MapSpec::componentwise(dim, ScalarFn::Sign)),
            MapDef::Identity => Ok(MapSpec::identity(dim)),
            MapDef::RadialNormalize => Ok(MapSpec::radial_normalize(dim)),
            MapDef::RotationShift { angle, offset } => MapSpec::rotation_shift(angle, offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SetDef {
    Finite { points: Vec<Vec<f64>> },
    /// A ball in the space's crisp norm.
    Ball { center: Vec<f64>, radius: f64, open: bool },
}

mod set_body {
    use super::*;

    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Finite {
        pub points: Vec<Vec<f64>>,
    }
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    pub struct Ball {
        pub center: Vec<f64>,
        pub radius: f64,
        #[serde(default)]
        pub open: bool,
    }
}

impl SetDef {
    fn parse(v: Value, path: &str) -> Result<Self> {
        use set_body::*;
        let (kind, body) = take_kind(v, path)?;
        match kind.as_str() {
            "finite" => Ok(SetDef::Finite { points: from_value::<Finite>(body, path)?.points }),
            "ball" => {
                let b: Ball = from_value(body, path)?;
                Ok(SetDef::Ball { center: b.center, radius: b.radius, open: b.open })
            }
            other => Err(unknown_kind(path, other, &["finite", "ball"])),
        }
    }

    pub fn build(&self, norm: CrispNorm) -> gifpsi::Result<SetSpec> {
        match self.clone() {
            SetDef::Finite { points } => SetSpec::finite(points),
            SetDef::Ball { center, radius, open } => SetSpec::ball(center, radius, open, norm),
        }
    }
}

// ---------------------------------------------------------------- tasks

fn default_samples() -> usize {
    10_000
}
fn default_tolerance() -> f64 {
    1e-9
}
fn default_limit_horizon() -> f64 {
    1e6
}
fn default_limit_epsilon() -> f64 {
    1e-3
}
fn default_t_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 13)
}

/// Sampling parameters of the axiom validators. The seed has no default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SamplerDef {
    pub seed: u64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_limit_horizon")]
    pub horizon: f64,
    #[serde(default = "default_limit_epsilon")]
    pub horizon_epsilon: f64,
    #[serde(default = "default_t_grid")]
    pub t_grid: Vec<f64>,
}

impl SamplerDef {
    pub fn build(&self) -> SamplerConfig {
        SamplerConfig {
            seed: self.seed,
            samples: self.samples,
            tolerance: self.tolerance,
            horizon: self.horizon,
            horizon_epsilon: self.horizon_epsilon,
            t_grid: self.t_grid.clone(),
        }
    }

    fn validate(&self, path: &str) -> Result<()> {
        if self.samples == 0 {
            return Err(ConfigError::new(join(path, "samples"), "must be >= 1"));
        }
        positive(self.tolerance, &join(path, "tolerance"))?;
        positive(self.horizon, &join(path, "horizon"))?;
        open_unit(self.horizon_epsilon, &join(path, "horizon_epsilon"))?;
        if self.t_grid.is_empty() {
            return Err(ConfigError::new(join(path, "t_grid"), "must be nonempty"));
        }
        for (i, t) in self.t_grid.iter().enumerate() {
            positive(*t, &format!("{}[{i}]", join(path, "t_grid")))?;
        }
        if self.t_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::new(join(path, "t_grid"), "must be strictly increasing"));
        }
        Ok(())
    }
}

fn default_continuity_samples() -> usize {
    2000
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContinuitySamplerDef {
    pub seed: u64,
    #[serde(default = "default_continuity_samples")]
    pub samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridDef {
    pub r: Vec<f64>,
    pub t: Vec<f64>,
}

impl Default for GridDef {
    fn default() -> Self {
        let g = DetectorGrid::default();
        GridDef { r: g.r, t: g.t }
    }
}

impl GridDef {
    pub fn build(&self) -> DetectorGrid {
        DetectorGrid {
            r: self.r.clone(),
            t: self.t.clone(),
        }
    }

    fn validate(&self, path: &str) -> Result<()> {
        for (name, v) in [("r", &self.r), ("t", &self.t)] {
            if v.is_empty() {
                return Err(ConfigError::new(join(path, name), "must be nonempty"));
            }
        }
        for (i, r) in self.r.iter().enumerate() {
            open_unit(*r, &format!("{}[{i}]", join(path, "r")))?;
        }
        for (i, t) in self.t.iter().enumerate() {
            positive(*t, &format!("{}[{i}]", join(path, "t")))?;
        }
        Ok(())
    }
}

fn positive(v: f64, path: &str) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(ConfigError::new(path, "must be > 0"))
    }
}

fn open_unit(v: f64, path: &str) -> Result<()> {
    if v > 0.0 && v < 1.0 {
        Ok(())
    } else {
        Err(ConfigError::new(path, "must lie in open (0,1)"))
    }
}

fn default_horizon() -> usize {
    1000
}

fn default_alpha_grid() -> Vec<f64> {
    (1..=19).map(|i| i as f64 / 20.0).collect()
}

fn default_variants() -> Vec<AlphaVariantDef> {
    vec![AlphaVariantDef::Mu, AlphaVariantDef::Nu]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaVariantDef {
    Mu,
    Nu,
}

impl From<AlphaVariantDef> for AlphaVariant {
    fn from(v: AlphaVariantDef) -> Self {
        match v {
            AlphaVariantDef::Mu => AlphaVariant::Mu,
            AlphaVariantDef::Nu => AlphaVariant::Nu,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateAxiomsTask {
    #[serde(default)]
    pub id: String,
    pub sampler: SamplerDef,
    /// Also report the idempotence and non-degeneracy conditions.
    #[serde(default)]
    pub extra_conditions: bool,
    /// Also check the connectives' own axioms.
    #[serde(default)]
    pub connectives: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaNormTask {
    #[serde(default)]
    pub id: String,
    /// Level used for the crisp-norm axioms and the collinearity estimate.
    pub alpha: f64,
    pub sampler: SamplerDef,
    #[serde(default = "default_variants")]
    pub variants: Vec<AlphaVariantDef>,
    #[serde(default = "default_alpha_grid")]
    pub alpha_grid: Vec<f64>,
    /// Vectors whose (α, ‖x‖α) profiles are tabulated.
    #[serde(default)]
    pub vectors: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collinearity: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeSequenceTask {
    #[serde(default)]
    pub id: String,
    pub sequence: String,
    /// Candidate limit for the convergence detector.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit: Option<Vec<f64>>,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default)]
    pub grid: GridDef,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_max: Option<usize>,
    #[serde(default)]
    pub extract: bool,
    /// Horizon for coordinate-limit reconstruction; omitted to skip it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruct: Option<usize>,
    /// Basis for extraction and reconstruction; standard when omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckContinuityTask {
    #[serde(default)]
    pub id: String,
    pub map: String,
    pub x0: Vec<f64>,
    /// Sequence ids converging to x0.
    pub family: Vec<String>,
    pub sampler: ContinuitySamplerDef,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    #[serde(default)]
    pub grid: GridDef,
    #[serde(default)]
    pub form: IfcFormDef,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IfcFormDef {
    #[default]
    Restated,
    Original,
}

impl From<IfcFormDef> for IfcForm {
    fn from(f: IfcFormDef) -> Self {
        match f {
            IfcFormDef::Restated => IfcForm::Restated,
            IfcFormDef::Original => IfcForm::Original,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckCompactTask {
    #[serde(default)]
    pub id: String,
    pub set: String,
    pub probes: Vec<String>,
    #[serde(default = "default_horizon")]
    pub horizon: usize,
    /// When given, the battery runs on the image of the set under this map.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub map: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TaskKind {
    ValidateAxioms,
    AlphaNorm,
    AnalyzeSequence,
    CheckContinuity,
    CheckCompact,
}

impl TaskKind {
    pub fn name(self) -> &'static str {
        match self {
            TaskKind::ValidateAxioms => "validate-axioms",
            TaskKind::AlphaNorm => "alpha-norm",
            TaskKind::AnalyzeSequence => "analyze-sequence",
            TaskKind::CheckContinuity => "check-continuity",
            TaskKind::CheckCompact => "check-compact",
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TaskDef {
    ValidateAxioms(ValidateAxiomsTask),
    AlphaNorm(AlphaNormTask),
    AnalyzeSequence(AnalyzeSequenceTask),
    CheckContinuity(CheckContinuityTask),
    CheckCompact(CheckCompactTask),
}

const TASK_KINDS: &[&str] = &[
    "validate-axioms",
    "alpha-norm",
    "analyze-sequence",
    "check-continuity",
    "check-compact",
];

impl TaskDef {
    fn parse(v: Value, path: &str) -> Result<Self> {
        let (kind, body) = take_kind(v, path)?;
        Ok(match kind.as_str() {
            "validate-axioms" => TaskDef::ValidateAxioms(from_value(body, path)?),
            "alpha-norm" => TaskDef::AlphaNorm(from_value(body, path)?),
            "analyze-sequence" => TaskDef::AnalyzeSequence(from_value(body, path)?),
            "check-continuity" => TaskDef::CheckContinuity(from_value(body, path)?),
            "check-compact" => TaskDef::CheckCompact(from_value(body, path)?),
            other => return Err(unknown_kind(path, other, TASK_KINDS)),
        })
    }

    pub fn kind(&self) -> TaskKind {
        match self {
            TaskDef::ValidateAxioms(_) => TaskKind::ValidateAxioms,
            TaskDef::AlphaNorm(_) => TaskKind::AlphaNorm,
            TaskDef::AnalyzeSequence(_) => TaskKind::AnalyzeSequence,
            TaskDef::CheckContinuity(_) => TaskKind::CheckContinuity,
            TaskDef::CheckCompact(_) => TaskKind::CheckCompact,
        }
    }

    pub fn id(&self) -> &str {
        match self {
            TaskDef::ValidateAxioms(t) => &t.id,
            TaskDef::AlphaNorm(t) => &t.id,
            TaskDef::AnalyzeSequence(t) => &t.id,
            TaskDef::CheckContinuity(t) => &t.id,
            TaskDef::CheckCompact(t) => &t.id,
        }
    }

    fn id_mut(&mut self) -> &mut String {
        match self {
            TaskDef::ValidateAxioms(t) => &mut t.id,
            TaskDef::AlphaNorm(t) => &mut t.id,
            TaskDef::AnalyzeSequence(t) => &mut t.id,
            TaskDef::CheckContinuity(t) => &mut t.id,
            TaskDef::CheckCompact(t) => &mut t.id,
        }
    }

    fn set_seed(&mut self, seed: u64) {
        match self {
            TaskDef::ValidateAxioms(t) => t.sampler.seed = seed,
            TaskDef::AlphaNorm(t) => t.sampler.seed = seed,
            TaskDef::CheckContinuity(t) => t.sampler.seed = seed,
            TaskDef::AnalyzeSequence(_) | TaskDef::CheckCompact(_) => {}
        }
    }
}

// ---------------------------------------------------------------- config

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub schema_version: u32,
    pub space: SpaceDef,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_space: Option<SpaceDef>,
    pub sequences: BTreeMap<String, SequenceDef>,
    pub maps: BTreeMap<String, MapDef>,
    pub sets: BTreeMap<String, SetDef>,
    pub tasks: Vec<TaskDef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    schema_version: u32,
    space: SpaceDef,
    #[serde(default)]
    target_space: Option<SpaceDef>,
    #[serde(default)]
    sequences: BTreeMap<String, Value>,
    #[serde(default)]
    maps: BTreeMap<String, Value>,
    #[serde(default)]
    sets: BTreeMap<String, Value>,
    #[serde(default)]
    tasks: Vec<Value>,
    #[serde(default)]
    output: Option<String>,
}

/// Command-line adjustments applied before validation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    /// Use the original implication form in every continuity task.
    pub compat_def51: bool,
    /// Keep only tasks of this kind.
    pub only: Option<TaskKind>,
}

impl RunConfig {
    /// Parses and fully validates a JSON config.
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_json_with(text, &Overrides::default())
    }

    pub fn from_json_with(text: &str, overrides: &Overrides) -> Result<Self> {
        let value: Value = serde_json::from_str(text).map_err(|e| {
            ConfigError::new(
                format!("<line {} column {}>", e.line(), e.column()),
                format!("invalid JSON: {e}"),
            )
        })?;
        let raw: RawConfig = from_value(value, "")?;
        if raw.schema_version != SCHEMA_VERSION {
            return Err(ConfigError::new(
                "schema_version",
                format!("unsupported version {}; expected {SCHEMA_VERSION}", raw.schema_version),
            ));
        }
        let sequences = raw
            .sequences
            .into_iter()
            .map(|(id, v)| {
                let s = SequenceDef::parse(v, &format!("sequences.{id}"))?;
                Ok((id, s))
            })
            .collect::<Result<_>>()?;
        let maps = raw
            .maps
            .into_iter()
            .map(|(id, v)| Ok((id.clone(), MapDef::parse(v, &format!("maps.{id}"))?)))
            .collect::<Result<_>>()?;
        let sets = raw
            .sets
            .into_iter()
            .map(|(id, v)| Ok((id.clone(), SetDef::parse(v, &format!("sets.{id}"))?)))
            .collect::<Result<_>>()?;
        let mut tasks = raw
            .tasks
            .into_iter()
            .enumerate()
            .map(|(i, v)| TaskDef::parse(v, &format!("tasks[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        for (i, t) in tasks.iter_mut().enumerate() {
            if t.id().is_empty() {
                *t.id_mut() = format!("{}-{i}", t.kind());
            }
            if let Some(seed) = overrides.seed {
                t.set_seed(seed);
            }
            if let (true, TaskDef::CheckContinuity(c)) = (overrides.compat_def51, &mut *t) {
                c.form = IfcFormDef::Original;
            }
        }
        let mut cfg = RunConfig {
            schema_version: raw.schema_version,
            space: raw.space,
            target_space: raw.target_space,
            sequences,
            maps,
            sets,
            tasks,
            output: raw.output,
        };
        cfg.validate()?;
        if let Some(kind) = overrides.only {
            cfg.tasks.retain(|t| t.kind() == kind);
        }
        Ok(cfg)
    }

    /// The codomain space of continuity tasks.
    pub fn target(&self) -> &SpaceDef {
        self.target_space.as_ref().unwrap_or(&self.space)
    }

    pub fn validate(&self) -> Result<()> {
        self.space.validate("space")?;
        if let Some(t) = &self.target_space {
            t.validate("target_space")?;
        }
        let d = self.space.dimension;
        for (id, s) in &self.sequences {
            let path = format!("sequences.{id}");
            let spec = s.build().map_err(|e| ConfigError::new(&path, e.to_string()))?;
            if spec.dimension() != d {
                return Err(ConfigError::new(
                    path,
                    format!("dimension {} does not match space dimension {d}", spec.dimension()),
                ));
            }
        }
        for (id, m) in &self.maps {
            let path = format!("maps.{id}");
            let spec = m.build(d).map_err(|e| ConfigError::new(&path, e.to_string()))?;
            let out = self.target().dimension;
            if spec.input_dim() != d || spec.output_dim() != out {
                return Err(ConfigError::new(
                    path,
                    format!(
                        "map is ℝ^{} → ℝ^{}; the spaces need ℝ^{d} → ℝ^{out}",
                        spec.input_dim(),
                        spec.output_dim()
                    ),
                ));
            }
        }
        for (id, s) in &self.sets {
            let path = format!("sets.{id}");
            let spec = s.build(self.space.crisp()).map_err(|e| ConfigError::new(&path, e.to_string()))?;
            if spec.dimension() != d {
                return Err(ConfigError::new(
                    path,
                    format!("dimension {} does not match space dimension {d}", spec.dimension()),
                ));
            }
        }
        let mut seen = BTreeMap::new();
        for (i, t) in self.tasks.iter().enumerate() {
            let path = format!("tasks[{i}]");
            if let Some(j) = seen.insert(t.id().to_string(), i) {
                return Err(ConfigError::new(
                    join(&path, "id"),
                    format!("duplicate task id \"{}\" (also tasks[{j}])", t.id()),
                ));
            }
            self.validate_task(t, &path)?;
        }
        Ok(())
    }

    fn sequence_ref(&self, id: &str, path: &str) -> Result<()> {
        if self.sequences.contains_key(id) {
            Ok(())
        } else {
            Err(ConfigError::new(path, format!("unknown sequence id \"{id}\"")))
        }
    }

    fn vector(&self, v: &[f64], dim: usize, path: &str) -> Result<()> {
        if v.len() != dim {
            return Err(ConfigError::new(
                path,
                format!("expected {dim} components, got {}", v.len()),
            ));
        }
        if v.iter().any(|c| !c.is_finite()) {
            return Err(ConfigError::new(path, "components must be finite"));
        }
        Ok(())
    }

    fn horizon(n: usize, path: &str) -> Result<()> {
        if n < 10 {
            Err(ConfigError::new(path, "must be >= 10"))
        } else {
            Ok(())
        }
    }

    fn validate_task(&self, t: &TaskDef, path: &str) -> Result<()> {
        let d = self.space.dimension;
        let p = |f: &str| join(path, f);
        match t {
            TaskDef::ValidateAxioms(t) => t.sampler.validate(&p("sampler")),
            TaskDef::AlphaNorm(t) => {
                open_unit(t.alpha, &p("alpha"))?;
                t.sampler.validate(&p("sampler"))?;
                if t.variants.is_empty() {
                    return Err(ConfigError::new(p("variants"), "must be nonempty"));
                }
                if t.alpha_grid.is_empty() {
                    return Err(ConfigError::new(p("alpha_grid"), "must be nonempty"));
                }
                for (i, a) in t.alpha_grid.iter().enumerate() {
                    open_unit(*a, &format!("{}[{i}]", p("alpha_grid")))?;
                }
                if t.alpha_grid.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(ConfigError::new(p("alpha_grid"), "must be strictly increasing"));
                }
                for (i, v) in t.vectors.iter().enumerate() {
                    self.vector(v, d, &format!("{}[{i}]", p("vectors")))?;
                }
                if let Some(vs) = &t.collinearity {
                    if vs.is_empty() {
                        return Err(ConfigError::new(p("collinearity"), "must be nonempty"));
                    }
                    for (i, v) in vs.iter().enumerate() {
                        self.vector(v, d, &format!("{}[{i}]", p("collinearity")))?;
                    }
                }
                Ok(())
            }
            TaskDef::AnalyzeSequence(t) => {
                self.sequence_ref(&t.sequence, &p("sequence"))?;
                if let Some(l) = &t.limit {
                    self.vector(l, d, &p("limit"))?;
                }
                Self::horizon(t.horizon, &p("horizon"))?;
                t.grid.validate(&p("grid"))?;
                if t.p_max == Some(0) {
                    return Err(ConfigError::new(p("p_max"), "must be >= 1"));
                }
                if let Some(n) = t.reconstruct {
                    Self::horizon(n, &p("reconstruct"))?;
                }
                if let Some(b) = &t.basis {
                    for (i, v) in b.iter().enumerate() {
                        self.vector(v, d, &format!("{}[{i}]", p("basis")))?;
                    }
                    Basis::new(b.clone()).map_err(|e| ConfigError::new(p("basis"), e.to_string()))?;
                }
                let spec = self.sequences[&t.sequence].build().expect("validated sequence");
                if let Some(len) = spec.len() {
                    let need = t.horizon.max(t.reconstruct.unwrap_or(0));
                    if len < need {
                        return Err(ConfigError::new(
                            p("horizon"),
                            format!("sequence \"{}\" has only {len} terms", t.sequence),
                        ));
                    }
                }
                Ok(())
            }
            TaskDef::CheckContinuity(t) => {
                if !self.maps.contains_key(&t.map) {
                    return Err(ConfigError::new(p("map"), format!("unknown map id \"{}\"", t.map)));
                }
                self.vector(&t.x0, d, &p("x0"))?;
                if t.family.is_empty() {
                    return Err(ConfigError::new(p("family"), "must be nonempty"));
                }
                for (i, s) in t.family.iter().enumerate() {
                    self.sequence_ref(s, &format!("{}[{i}]", p("family")))?;
                }
                if t.sampler.samples == 0 {
                    return Err(ConfigError::new(p("sampler.samples"), "must be >= 1"));
                }
                Self::horizon(t.horizon, &p("horizon"))?;
                t.grid.validate(&p("grid"))
            }
            TaskDef::CheckCompact(t) => {
                if !self.sets.contains_key(&t.set) {
                    return Err(ConfigError::new(p("set"), format!("unknown set id \"{}\"", t.set)));
                }
                if t.probes.is_empty() {
                    return Err(ConfigError::new(p("probes"), "must be nonempty"));
                }
                for (i, s) in t.probes.iter().enumerate() {
                    self.sequence_ref(s, &format!("{}[{i}]", p("probes")))?;
                }
                if let Some(m) = &t.map {
                    if !self.maps.contains_key(m) {
                        return Err(ConfigError::new(p("map"), format!("unknown map id \"{m}\"")));
                    }
                }
                Self::horizon(t.horizon, &p("horizon"))
            }
        }
    }
}
