//! Line-based scenario files.
//!
//! ```text
//! # comment
//! boost.velocity = 0.5
//! boost.direction = 0 1 0
//! p1.rapidity = 2.998222950297976
//! p1.direction = 1 0 0
//! state.r1 = 0.5 0 0
//! ```
//!
//! Exactly one of `boost.rapidity` / `boost.velocity` is required. Every other
//! key is optional.

use std::fmt;
use std::str::FromStr;

use lorentz_spin::{Boost, MomentumSpec, ThreeVector, TwoMomentumSpinState};
use thiserror::Error;

pub const DEFAULT_Q: f64 = 0.5;
pub const DEFAULT_SAMPLES: usize = 200;
pub const DEFAULT_VMAX: f64 = 0.999;
pub const DEFAULT_DOTS: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

/// `asinh(10)`: momenta with `|p|/m = 10`.
pub const FIGURE_RAPIDITY: f64 = 2.998222950297976;

#[derive(Debug, Error, PartialEq)]
pub enum ScenarioError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid scenario: {0}")]
    Validation(String),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoostSize {
    Rapidity(f64),
    Velocity(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub boost: BoostSize,
    pub boost_direction: ThreeVector,
    pub p1_rapidity: f64,
    pub p1_direction: ThreeVector,
    pub p2_rapidity: f64,
    pub p2_direction: ThreeVector,
    pub q: f64,
    pub r1: ThreeVector,
    pub r2: ThreeVector,
    pub samples: usize,
    pub vmax: f64,
    pub dots: Vec<f64>,
}

impl Default for Scenario {
    /// Identity boost, both momenta at rest, unpolarized state.
    fn default() -> Self {
        Self {
            boost: BoostSize::Velocity(0.0),
            boost_direction: ThreeVector::Y,
            p1_rapidity: 0.0,
            p1_direction: ThreeVector::X,
            p2_rapidity: 0.0,
            p2_direction: -ThreeVector::X,
            q: DEFAULT_Q,
            r1: ThreeVector::ZERO,
            r2: ThreeVector::ZERO,
            samples: DEFAULT_SAMPLES,
            vmax: DEFAULT_VMAX,
            dots: DEFAULT_DOTS.to_vec(),
        }
    }
}

impl Scenario {
    /// Built-in parameters of figures 1–3. `None` for any other number.
    pub fn figure(which: u8) -> Option<Self> {
        let base = Self {
            p1_rapidity: FIGURE_RAPIDITY,
            p2_rapidity: FIGURE_RAPIDITY,
            r1: ThreeVector::new(0.5, 0.0, 0.0),
            ..Self::default()
        };
        match which {
            1 => Some(Self {
                r2: ThreeVector::new(0.5, 0.0, 0.0),
                ..base
            }),
            2 => Some(Self {
                r2: ThreeVector::new(0.0, 0.5, 0.0),
                ..base
            }),
            3 => Some(Self {
                r2: ThreeVector::new(-0.5, 0.0, 0.0),
                ..base
            }),
            _ => None,
        }
    }

    pub fn boost(&self) -> Boost {
        self.boost_with(self.boost)
    }

    /// The scenario's boost direction with another size.
    pub fn boost_with(&self, size: BoostSize) -> Boost {
        match size {
            BoostSize::Rapidity(a) => Boost::new(a, self.boost_direction),
            BoostSize::Velocity(v) => Boost::from_velocity(v, self.boost_direction),
        }
        .expect("validated boost")
    }

    pub fn p1(&self) -> MomentumSpec {
        MomentumSpec::new(self.p1_rapidity, self.p1_direction).expect("validated p1")
    }

    pub fn p2(&self) -> MomentumSpec {
        MomentumSpec::new(self.p2_rapidity, self.p2_direction).expect("validated p2")
    }

    pub fn state(&self) -> TwoMomentumSpinState {
        TwoMomentumSpinState::new(self.q, self.r1, self.r2, self.p1(), self.p2())
            .expect("validated state")
    }

    fn validate(&self) -> Result<(), ScenarioError> {
        let invalid =
            |what: &str, e: &dyn fmt::Display| ScenarioError::Validation(format!("{what}: {e}"));
        match self.boost {
            BoostSize::Rapidity(a) => Boost::new(a, self.boost_direction).map(drop),
            BoostSize::Velocity(v) => Boost::from_velocity(v, self.boost_direction).map(drop),
        }
        .map_err(|e| invalid("boost", &e))?;
        let p1 = MomentumSpec::new(self.p1_rapidity, self.p1_direction)
            .map_err(|e| invalid("p1", &e))?;
        let p2 = MomentumSpec::new(self.p2_rapidity, self.p2_direction)
            .map_err(|e| invalid("p2", &e))?;
        TwoMomentumSpinState::new(self.q, self.r1, self.r2, p1, p2)
            .map_err(|e| invalid("state", &e))?;
        if self.samples < 2 {
            return Err(ScenarioError::Validation(format!(
                "figure.samples must be at least 2, got {}",
                self.samples
            )));
        }
        if !(0.0..1.0).contains(&self.vmax) {
            return Err(ScenarioError::Validation(format!(
                "figure.vmax must lie in [0, 1), got {}",
                self.vmax
            )));
        }
        if self.dots.is_empty() || self.dots.iter().any(|d| !d.is_finite()) {
            return Err(ScenarioError::Validation(
                "figure.dots must be a nonempty list of finite reals".into(),
            ));
        }
        Ok(())
    }
}

fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s.parse().map_err(|_| format!("not a real number: {s:?}"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("not finite: {s:?}"))
    }
}

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split_whitespace().map(parse_real).collect()
}

fn parse_vector(s: &str) -> Result<ThreeVector, String> {
    match parse_reals(s)?.as_slice() {
        &[x, y, z] => Ok(ThreeVector::new(x, y, z)),
        other => Err(format!("expected 3 components, got {}", other.len())),
    }
}

impl FromStr for Scenario {
    type Err = ScenarioError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let mut sc = Scenario::default();
        let mut boost: Option<BoostSize> = None;
        let mut seen: Vec<String> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |msg: String| ScenarioError::Parse { line, msg };
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got {content:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            if seen.iter().any(|k| k == key) {
                return Err(err(format!("duplicate key {key}")));
            }
            seen.push(key.to_string());

            match key {
                "boost.rapidity" | "boost.velocity" => {
                    if boost.is_some() {
                        return Err(err(
                            "boost.rapidity and boost.velocity are mutually exclusive".into(),
                        ));
                    }
                    let x = parse_real(value).map_err(err)?;
                    boost = Some(if key == "boost.rapidity" {
                        BoostSize::Rapidity(x)
                    } else {
                        BoostSize::Velocity(x)
                    });
                }
                "boost.direction" => sc.boost_direction = parse_vector(value).map_err(err)?,
                "p1.rapidity" => sc.p1_rapidity = parse_real(value).map_err(err)?,
                "p1.direction" => sc.p1_direction = parse_vector(value).map_err(err)?,
                "p2.rapidity" => sc.p2_rapidity = parse_real(value).map_err(err)?,
                "p2.direction" => sc.p2_direction = parse_vector(value).map_err(err)?,
                "state.q" => sc.q = parse_real(value).map_err(err)?,
                "state.r1" => sc.r1 = parse_vector(value).map_err(err)?,
                "state.r2" => sc.r2 = parse_vector(value).map_err(err)?,
                "figure.samples" => {
                    sc.samples = value
                        .parse()
                        .map_err(|_| err(format!("not a sample count: {value:?}")))?
                }
                "figure.vmax" => sc.vmax = parse_real(value).map_err(err)?,
                "figure.dots" => sc.dots = parse_reals(value).map_err(err)?,
                _ => return Err(err(format!("unknown key {key}"))),
            }
        }

        sc.boost = boost.ok_or_else(|| {
            ScenarioError::Validation("one of boost.rapidity or boost.velocity is required".into())
        })?;
        sc.validate()?;
        Ok(sc)
    }
}

struct Vector<'a>(&'a ThreeVector);

impl fmt::Display for Vector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.0.x, self.0.y, self.0.z)
    }
}

/// Canonical dump; parses back to an identical scenario.
impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.boost {
            BoostSize::Rapidity(a) => writeln!(f, "boost.rapidity = {a}")?,
            BoostSize::Velocity(v) => writeln!(f, "boost.velocity = {v}")?,
        }
        writeln!(f, "boost.direction = {}", Vector(&self.boost_direction))?;
        writeln!(f, "p1.rapidity = {}", self.p1_rapidity)?;
        writeln!(f, "p1.direction = {}", Vector(&self.p1_direction))?;
        writeln!(f, "p2.rapidity = {}", self.p2_rapidity)?;
        writeln!(f, "p2.direction = {}", Vector(&self.p2_direction))?;
        writeln!(f, "state.q = {}", self.q)?;
        writeln!(f, "state.r1 = {}", Vector(&self.r1))?;
        writeln!(f, "state.r2 = {}", Vector(&self.r2))?;
        writeln!(f, "figure.samples = {}", self.samples)?;
        writeln!(f, "figure.vmax = {}", self.vmax)?;
        let dots: Vec<String> = self.dots.iter().map(f64::to_string).collect();
        writeln!(f, "figure.dots = {}", dots.join(" "))
    }
}
