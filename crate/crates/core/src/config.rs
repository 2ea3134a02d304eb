//! Scenario files and the text forms of strategies and targets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::game::target::{
    BallComplement, BallTarget, Everything, InfinitelyManyOnes, Intervals, Nothing, PointComplement,
};
use crate::game::{Game, GameVariant, Role, TargetSet};
use crate::scalar::Scalar;
use crate::space::{FormalBall, Point, Space};
use crate::strategy::{
    AbsoluteAvoidPoint, AbsoluteBobAvoid, BanachBobAvoid, CenterDelete, CopyBall, MinRadius, RandomLegal,
    SchmidtAvoidPoint, Strategy, TargetChaser, ThresholdControl,
};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("{field}: {message}")]
    Invalid { field: &'static str, message: String },
    #[error("unknown strategy {0:?}")]
    UnknownStrategy(String),
    #[error("strategy {strategy}: {message}")]
    StrategyParam { strategy: String, message: String },
    #[error("unknown target {0:?}")]
    UnknownTarget(String),
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
}

fn invalid(field: &'static str, e: impl fmt::Display) -> ConfigError {
    ConfigError::Invalid {
        field,
        message: e.to_string(),
    }
}

/// Splits on `sep` outside parentheses.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + ch.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// `name` or `name(key=value,...)`; values may contain parentheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategySpec {
    pub name: String,
    pub params: Vec<(String, String)>,
}

impl fmt::Display for StrategySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if !self.params.is_empty() {
            let p: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, "({})", p.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for StrategySpec {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = |m: &str| ConfigError::StrategyParam {
            strategy: s.to_string(),
            message: m.to_string(),
        };
        let (name, params) = match s.find('(') {
            None => (s, Vec::new()),
            Some(i) => {
                let body = s[i + 1..].strip_suffix(')').ok_or_else(|| bad("missing ')'"))?;
                let params = split_top(body, ',')
                    .into_iter()
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        p.split_once('=')
                            .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                            .ok_or_else(|| bad("parameters are key=value"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                (&s[..i], params)
            }
        };
        if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '-') {
            return Err(bad("bad strategy name"));
        }
        Ok(StrategySpec {
            name: name.to_string(),
            params,
        })
    }
}

impl StrategySpec {
    fn get(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn err(&self, message: impl fmt::Display) -> ConfigError {
        ConfigError::StrategyParam {
            strategy: self.to_string(),
            message: message.to_string(),
        }
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<(), ConfigError> {
        match self.params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
            Some((k, _)) => Err(self.err(format!("unknown parameter {k}"))),
            None => Ok(()),
        }
    }

    fn point(&self, key: &str, space: &Space) -> Result<Point, ConfigError> {
        let text = self.get(key).ok_or_else(|| self.err(format!("missing {key}")))?;
        let p: Point = text.parse().map_err(|e| self.err(e))?;
        space.check_point(&p).map_err(|e| self.err(e))?;
        Ok(p)
    }

    fn scalar(&self, key: &str) -> Result<Option<Scalar>, ConfigError> {
        self.get(key).map(|v| v.parse().map_err(|e| self.err(e))).transpose()
    }

    /// `e<i>` for a basis vector or a point `(v_1,...,v_d)`.
    fn direction(&self, dim: usize) -> Result<Option<Vec<Scalar>>, ConfigError> {
        let Some(text) = self.get("v") else {
            return Ok(None);
        };
        if let Some(i) = text.strip_prefix('e') {
            let i: usize = i.parse().map_err(|e| self.err(e))?;
            if i == 0 || i > dim {
                return Err(self.err(format!("no basis vector e{i} in dimension {dim}")));
            }
            let mut v = vec![Scalar::zero(); dim];
            v[i - 1] = Scalar::one();
            return Ok(Some(v));
        }
        match text.parse::<Point>().map_err(|e| self.err(e))? {
            Point::Euclidean(v) => Ok(Some(v)),
            _ => Err(self.err("v must be a real vector")),
        }
    }

    /// Builds the strategy for `role`. `seed` is used by `random` when it
    /// names no seed of its own.
    pub fn build(&self, role: Role, space: &Space, seed: u64) -> Result<Box<dyn Strategy>, ConfigError> {
        let only = |r: Role| {
            if role == r {
                Ok(())
            } else {
                Err(self.err(format!("plays {r} only")))
            }
        };
        let s: Box<dyn Strategy> = match self.name.as_str() {
            "min-radius" => {
                self.check_keys(&[])?;
                Box::new(MinRadius::new(role))
            }
            "copy" => {
                self.check_keys(&[])?;
                Box::new(CopyBall::new(role))
            }
            "random" => {
                self.check_keys(&["seed"])?;
                let seed = match self.get("seed") {
                    Some(v) => v.parse().map_err(|e| self.err(e))?,
                    None => seed,
                };
                Box::new(RandomLegal::new(role, seed))
            }
            "avoid-point" => {
                self.check_keys(&["y", "c"])?;
                Box::new(SchmidtAvoidPoint::new(role, self.point("y", space)?, self.scalar("c")?))
            }
            "center-delete" => {
                self.check_keys(&[])?;
                only(Role::Alice)?;
                Box::new(CenterDelete)
            }
            "absolute-avoid" => {
                self.check_keys(&["y"])?;
                let y = self.point("y", space)?;
                match role {
                    Role::Alice => Box::new(AbsoluteAvoidPoint::new(y)),
                    Role::Bob => Box::new(AbsoluteBobAvoid::new(y)),
                }
            }
            "banach-avoid" => {
                self.check_keys(&["x0", "v", "from"])?;
                only(Role::Bob)?;
                let x0 = self.point("x0", space)?;
                let v = self.direction(space.dim().unwrap_or(1))?;
                let mut s = BanachBobAvoid::new(x0, v);
                if let Some(n) = self.get("from") {
                    s = s.starting_at(n.parse().map_err(|e| self.err(e))?);
                }
                Box::new(s)
            }
            "target-chaser" => {
                self.check_keys(&["t"])?;
                Box::new(TargetChaser::new(role, self.point("t", space)?))
            }
            "threshold-control" => {
                self.check_keys(&["digit"])?;
                let d: u8 = self
                    .get("digit")
                    .ok_or_else(|| self.err("missing digit"))?
                    .parse()
                    .map_err(|e| self.err(e))?;
                Box::new(ThresholdControl::new(role, d))
            }
            other => return Err(ConfigError::UnknownStrategy(other.to_string())),
        };
        Ok(s)
    }
}

/// Target sets by name: `all`, `none`, `intervals:a..b,c..d`, `ball:x@r`,
/// `not-ball:x@r`, `not-point:x`, `ones-infinitely`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    All,
    None,
    Intervals(Intervals),
    Ball(FormalBall),
    NotBall(FormalBall),
    NotPoint(Point),
    OnesInfinitely,
}

impl TargetSpec {
    pub fn build(&self) -> Box<dyn TargetSet> {
        match self {
            TargetSpec::All => Box::new(Everything),
            TargetSpec::None => Box::new(Nothing),
            TargetSpec::Intervals(i) => Box::new(i.clone()),
            TargetSpec::Ball(b) => Box::new(BallTarget(b.clone())),
            TargetSpec::NotBall(b) => Box::new(BallComplement(b.clone())),
            TargetSpec::NotPoint(p) => Box::new(PointComplement(p.clone())),
            TargetSpec::OnesInfinitely => Box::new(InfinitelyManyOnes),
        }
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.build().name())
    }
}

impl FromStr for TargetSpec {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ConfigError::UnknownTarget(s.to_string());
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        Ok(match kind {
            "all" => TargetSpec::All,
            "none" => TargetSpec::None,
            "ones-infinitely" => TargetSpec::OnesInfinitely,
            "intervals" => {
                let parts = arg
                    .split(',')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        let (a, b) = p.split_once("..").ok_or_else(bad)?;
                        Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
                    })
                    .collect::<Result<Vec<(Scalar, Scalar)>, ConfigError>>()?;
                TargetSpec::Intervals(Intervals::new(parts))
            }
            "ball" => TargetSpec::Ball(arg.parse().map_err(|_| bad())?),
            "not-ball" => TargetSpec::NotBall(arg.parse().map_err(|_| bad())?),
            "not-point" => TargetSpec::NotPoint(arg.parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPaths {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transcript: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
}

/// On-disk form: every value is text, rationals as `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    variant: String,
    space: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    c: Option<String>,
    initial: String,
    alice: String,
    bob: String,
    horizon: usize,
    #[serde(default = "default_target")]
    target: String,
    #[serde(default)]
    seed: u64,
    #[serde(default, skip_serializing_if = "is_default_output")]
    output: OutputPaths,
}

fn default_target() -> String {
    "all".into()
}

fn is_default_output(o: &OutputPaths) -> bool {
    *o == OutputPaths::default()
}

pub type StrategyPair = (Box<dyn Strategy>, Box<dyn Strategy>);

/// One game to play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioConfig {
    pub variant: GameVariant,
    pub space: Space,
    pub initial: FormalBall,
    pub alice: StrategySpec,
    pub bob: StrategySpec,
    pub horizon: usize,
    pub target: TargetSpec,
    pub seed: u64,
    pub output: OutputPaths,
}

impl ScenarioConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let raw: RawScenario = toml::from_str(text)?;
        let mut space: Space = raw.space.parse().map_err(|e| invalid("space", e))?;
        if let Some(c) = &raw.c {
            let c: Scalar = c.parse().map_err(|e| invalid("c", e))?;
            space = space.with_constant(c).map_err(|e| invalid("c", e))?;
        }
        let initial: FormalBall = raw.initial.parse().map_err(|e| invalid("initial", e))?;
        space.check_ball(&initial).map_err(|e| invalid("initial", e))?;
        Ok(ScenarioConfig {
            variant: raw.variant.parse().map_err(|e| invalid("variant", e))?,
            space,
            initial,
            alice: raw.alice.parse()?,
            bob: raw.bob.parse()?,
            horizon: raw.horizon,
            target: raw.target.parse()?,
            seed: raw.seed,
            output: raw.output,
        })
    }

    pub fn to_toml(&self) -> String {
        let default_c = self.space.to_string().parse::<Space>().map(|s| s.constant().clone()).ok();
        let c = (default_c.as_ref() != Some(self.space.constant())).then(|| self.space.constant().to_string());
        let raw = RawScenario {
            variant: self.variant.to_string(),
            space: self.space.to_string(),
            c,
            initial: self.initial.to_string(),
            alice: self.alice.to_string(),
            bob: self.bob.to_string(),
            horizon: self.horizon,
            target: self.target.to_string(),
            seed: self.seed,
            output: self.output.clone(),
        };
        toml::to_string(&raw).expect("scenario serializes")
    }

    pub fn game(&self) -> Result<Game, ConfigError> {
        Game::new(self.variant.clone(), self.space.clone()).map_err(|e| invalid("variant", e))
    }

    /// Alice's strategy, then Bob's.
    pub fn strategies(&self) -> Result<StrategyPair, ConfigError> {
        Ok((
            self.alice.build(Role::Alice, &self.space, self.seed)?,
            self.bob.build(Role::Bob, &self.space, self.seed)?,
        ))
    }
}
