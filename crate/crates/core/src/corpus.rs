//! Built-in sequences and maps in ℝ² with their known behaviour, used for
//! detector agreement and cross-property consistency runs.

use alloc::vec;
use alloc::vec::Vec;

use crate::map::{MapSpec, ScalarFn};
use crate::sequence::{SequenceSpec, Tail};

pub struct CorpusSequence {
    pub id: &'static str,
    pub spec: SequenceSpec,
    /// The limit when the sequence converges in the crisp norm.
    pub limit: Option<Vec<f64>>,
    /// Candidate tested by the convergence detector: the limit, or a
    /// natural accumulation point for divergent members.
    pub candidate: Vec<f64>,
    pub bounded: bool,
    /// Horizon at which the detectors are run.
    pub horizon: usize,
    /// Horizon at which the final-tenth coordinate spread falls below the
    /// reconstruction tail gap; `None` for divergent members.
    pub reconstruction_horizon: Option<usize>,
}

impl CorpusSequence {
    pub fn converges(&self) -> bool {
        self.limit.is_some()
    }
}

fn tail(base: [f64; 2], direction: [f64; 2]) -> Tail {
    Tail {
        base: base.to_vec(),
        direction: direction.to_vec(),
    }
}

#[allow(clippy::too_many_arguments)]
fn entry(
    id: &'static str,
    spec: SequenceSpec,
    limit: Option<[f64; 2]>,
    candidate: [f64; 2],
    bounded: bool,
    horizon: usize,
    reconstruction_horizon: Option<usize>,
) -> CorpusSequence {
    CorpusSequence {
        id,
        spec,
        limit: limit.map(|l| l.to_vec()),
        candidate: candidate.to_vec(),
        bounded,
        horizon,
        reconstruction_horizon,
    }
}

/// Twelve sequences: seven convergent, five divergent.
pub fn sequences() -> Vec<CorpusSequence> {
    let ok = |r: crate::error::Result<SequenceSpec>| r.expect("corpus specs are valid");
    vec![
        entry(
            "harmonic",
            ok(SequenceSpec::affine_decay(vec![0.0, 0.0], vec![1.0, 0.0])),
            Some([0.0, 0.0]),
            [0.0, 0.0],
            true,
            1000,
            Some(12_000_000),
        ),
        entry(
            "constant",
            ok(SequenceSpec::constant(vec![3.0, 4.0])),
            Some([3.0, 4.0]),
            [3.0, 4.0],
            true,
            1000,
            Some(10),
        ),
        entry(
            "alternating",
            ok(SequenceSpec::oscillating(tail([1.0, 0.0], [0.0, 0.0]), tail([-1.0, 0.0], [0.0, 0.0]))),
            None,
            [1.0, 0.0],
            true,
            1000,
            None,
        ),
        entry(
            "geometric-half",
            ok(SequenceSpec::geometric(vec![0.0, 0.0], vec![1.0, 1.0], 0.5)),
            Some([0.0, 0.0]),
            [0.0, 0.0],
            true,
            1000,
            Some(100),
        ),
        entry(
            "geometric-signed",
            ok(SequenceSpec::geometric(vec![1.0, -1.0], vec![1.0, 0.0], -0.8)),
            Some([1.0, -1.0]),
            [1.0, -1.0],
            true,
            1000,
            Some(200),
        ),
        entry(
            "geometric-growth",
            ok(SequenceSpec::geometric(vec![0.0, 0.0], vec![1.0, 0.0], 1.01)),
            None,
            [0.0, 0.0],
            false,
            2000,
            None,
        ),
        entry(
            "arithmetic",
            ok(SequenceSpec::arithmetic(vec![0.0, 0.0], vec![1.0, 0.0])),
            None,
            [0.0, 0.0],
            false,
            1000,
            None,
        ),
        entry(
            "shifted-harmonic",
            ok(SequenceSpec::affine_decay(vec![1.0, 2.0], vec![1.0, -1.0])),
            Some([1.0, 2.0]),
            [1.0, 2.0],
            true,
            1000,
            Some(12_000_000),
        ),
        entry(
            "sine",
            ok(SequenceSpec::sinusoid(vec![0.0, 0.0], vec![1.0, 0.0], 1.0)),
            None,
            [0.0, 0.0],
            true,
            1000,
            None,
        ),
        entry(
            "alternating-harmonic",
            ok(SequenceSpec::oscillating(tail([0.0, 0.0], [1.0, 0.0]), tail([0.0, 0.0], [-1.0, 0.0]))),
            Some([0.0, 0.0]),
            [0.0, 0.0],
            true,
            1000,
            Some(250_000_000),
        ),
        entry(
            "spiral",
            ok(SequenceSpec::spiral(vec![1.0, 1.0], 0.0, -1.0, 2.0, 1.0)),
            Some([1.0, 1.0]),
            [1.0, 1.0],
            true,
            1000,
            Some(20_000),
        ),
        entry(
            "alternating-decay",
            ok(SequenceSpec::oscillating(tail([1.0, 0.0], [0.0, 1.0]), tail([-1.0, 0.0], [0.0, 1.0]))),
            None,
            [1.0, 0.0],
            true,
            1000,
            None,
        ),
    ]
}

pub struct CorpusMap {
    pub id: &'static str,
    pub map: MapSpec,
    pub x0: Vec<f64>,
    /// Sequences converging to x0.
    pub family: Vec<SequenceSpec>,
    pub continuous: bool,
}

/// (1/n, 0), (1/n, 1/n) and 0.5ⁿ(1, −1), all converging to θ.
pub fn null_family() -> Vec<SequenceSpec> {
    vec![
        SequenceSpec::affine_decay(vec![0.0, 0.0], vec![1.0, 0.0]).expect("valid"),
        SequenceSpec::affine_decay(vec![0.0, 0.0], vec![1.0, 1.0]).expect("valid"),
        SequenceSpec::geometric(vec![0.0, 0.0], vec![1.0, -1.0], 0.5).expect("valid"),
    ]
}

/// Six maps ℝ² → ℝ² examined at θ: four continuous, two not.
pub fn maps() -> Vec<CorpusMap> {
    let at_origin = |id, map, continuous| CorpusMap {
        id,
        map,
        x0: vec![0.0, 0.0],
        family: null_family(),
        continuous,
    };
    vec![
        at_origin("double", MapSpec::scaling(2, 2.0), true),
        at_origin("identity", MapSpec::identity(2), true),
        at_origin("radial-normalize", MapSpec::radial_normalize(2), false),
        at_origin("sign", MapSpec::componentwise(2, ScalarFn::Sign), false),
        at_origin("square", MapSpec::componentwise(2, ScalarFn::Square), true),
        at_origin(
            "rotation-shift",
            MapSpec::rotation_shift(core::f64::consts::FRAC_PI_2, vec![1.0, 0.0]).expect("valid"),
            true,
        ),
    ]
}
