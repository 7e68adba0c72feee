//! Serializable reports for the tilt walls of a class and for the chambers
//! met along a Bridgeland path.

use serde::{Deserialize, Serialize};

use crate::bridgeland::{crossing_order, CrossingOrder, PathDirection, PathSpec, MERGE_TOL};
use crate::chern::ChernCharacter;
use crate::destabilizers::{pairs_of, tilt_walls, Coverage, DestabilizerCandidate, ResolvedPair, Side, TiltWallOptions, TiltWalls};
use crate::error::Result;
use crate::fixtures::Fixtures;
use crate::rational::Rational;
use crate::slopes::TiltPoint;
use crate::walls::{vertical_wall, wall_top, NumericalWall};

pub const SCHEMA_VERSION: u32 = 1;
pub const UNLABELED: &str = "unlabeled";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallInput {
    pub chern: ChernCharacter,
    pub side: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rmax: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub sub: ChernCharacter,
    pub quotient: ChernCharacter,
    pub sub_name: String,
    pub quotient_name: String,
    #[serde(with = "crate::rational::serde_str")]
    pub e: Rational,
    pub beta0: i64,
}

impl From<&ResolvedPair> for PairRecord {
    fn from(p: &ResolvedPair) -> Self {
        let (sub_name, quotient_name) = p.names();
        Self {
            sub: p.sub.clone(),
            quotient: p.quotient.clone(),
            sub_name,
            quotient_name,
            e: p.e.clone(),
            beta0: p.beta0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallRecord {
    #[serde(flatten)]
    pub wall: NumericalWall,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<TiltPoint>,
    pub candidates: Vec<DestabilizerCandidate>,
    pub pairs: Vec<PairRecord>,
}

/// Tilt walls of one class on one side, outermost first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallReportJson {
    pub schema_version: u32,
    pub input: WallInput,
    #[serde(default, with = "crate::rational::serde_opt_str")]
    pub vertical_wall: Option<Rational>,
    pub certified: bool,
    pub coverage: Coverage,
    pub truncated: bool,
    pub rays: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub innermost_empty: Option<bool>,
    pub walls: Vec<WallRecord>,
}

impl WallReportJson {
    pub fn from_tilt_walls(tw: &TiltWalls, rmax: Option<u64>) -> Self {
        let v = &tw.v;
        let walls = tw
            .walls
            .iter()
            .map(|w| {
                let mut pairs: Vec<ResolvedPair> =
                    w.candidates.iter().flat_map(|c| crate::destabilizers::resolve_ch3(c, v)).collect();
                pairs.sort_by(|a, b| a.e.cmp(&b.e).then_with(|| a.sub.cmp(&b.sub)));
                WallRecord {
                    wall: w.wall.clone(),
                    top: wall_top(&w.wall).ok(),
                    candidates: w.candidates.clone(),
                    pairs: pairs.iter().map(PairRecord::from).collect(),
                }
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION,
            input: WallInput {
                chern: v.clone(),
                side: tw.side,
                rmax,
            },
            vertical_wall: vertical_wall(&v.truncate()),
            certified: tw.certified(),
            coverage: tw.coverage.clone(),
            truncated: tw.truncated,
            rays: tw.rays.clone(),
            innermost_empty: tw.innermost_empty,
            walls,
        }
    }

    pub fn compute(v: &ChernCharacter, options: &TiltWallOptions) -> Result<Self> {
        Ok(Self::from_tilt_walls(&tilt_walls(v, options)?, options.r_max))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossingPoint {
    pub alpha: f64,
    pub alpha_sq: f64,
    pub beta: f64,
}

/// One Bridgeland wall on the path: every pair whose curve changes sign at
/// the same point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChamberWall {
    /// Position along the path, from 1.
    pub index: usize,
    pub crossing: CrossingPoint,
    /// Tilt wall the pairs come from.
    pub tilt_wall: NumericalWall,
    /// `Re Z_F Im Z_G - Re Z_G Im Z_F` as a polynomial in `a = alpha^2`, `b = beta`.
    pub curve: String,
    pub pairs: Vec<PairRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chamber {
    pub index: usize,
    pub model_label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChamberReport {
    pub schema_version: u32,
    pub v: ChernCharacter,
    #[serde(with = "crate::rational::serde_str")]
    pub s: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub epsilon: Rational,
    pub direction: PathDirection,
    pub alpha_range: (f64, f64),
    pub certified: bool,
    pub walls: Vec<ChamberWall>,
    /// Pairs whose wall the path never meets.
    pub never_crossed: Vec<PairRecord>,
    pub chambers: Vec<Chamber>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChamberOptions {
    pub s: Rational,
    pub epsilon: Rational,
    pub direction: PathDirection,
    pub r_max: Option<u64>,
}

impl Default for ChamberOptions {
    fn default() -> Self {
        let path = PathSpec::new(ChernCharacter::zero());
        Self {
            s: crate::rational::q(1, 3),
            epsilon: path.epsilon,
            direction: path.direction,
            r_max: None,
        }
    }
}

impl ChamberReport {
    /// Tilt walls on the left of the vertical wall, their labeled pairs, and
    /// the order in which their Bridgeland walls are crossed.
    pub fn compute(v: &ChernCharacter, options: &ChamberOptions, fixtures: &Fixtures) -> Result<(Self, TiltWalls, CrossingOrder)> {
        let tw = tilt_walls(
            v,
            &TiltWallOptions {
                side: Some(Side::Left),
                r_max: options.r_max,
            },
        )?;
        let pairs = pairs_of(&tw, v);
        let classes: Vec<(ChernCharacter, ChernCharacter)> =
            pairs.iter().map(|p| (p.pair.sub.clone(), p.pair.quotient.clone())).collect();
        let path = PathSpec::new(v.clone())
            .with_epsilon(options.epsilon.clone())
            .with_direction(options.direction);
        let order = crossing_order(&classes, &path, &options.s)?;

        let mut walls: Vec<ChamberWall> = Vec::new();
        for c in &order.order {
            let wp = &pairs[c.pair];
            let record = PairRecord::from(&wp.pair);
            if let Some(last) = walls.last_mut() {
                if (last.crossing.alpha - c.alpha).abs() < MERGE_TOL {
                    last.pairs.push(record);
                    continue;
                }
            }
            let curve = crate::bridgeland::bridgeland_wall(&wp.pair.sub, &wp.pair.quotient, &options.s)?;
            walls.push(ChamberWall {
                index: walls.len() + 1,
                crossing: CrossingPoint {
                    alpha: c.alpha,
                    alpha_sq: c.alpha * c.alpha,
                    beta: c.beta,
                },
                tilt_wall: wp.wall.clone(),
                curve: curve.poly.to_string(),
                pairs: vec![record],
            });
        }
        let never_crossed = order.never_crossed.iter().map(|&i| PairRecord::from(&pairs[i].pair)).collect();
        let chambers = chamber_labels(v, walls.len(), options.direction, fixtures);
        let report = Self {
            schema_version: SCHEMA_VERSION,
            v: v.clone(),
            s: options.s.clone(),
            epsilon: options.epsilon.clone(),
            direction: options.direction,
            alpha_range: order.alpha_range,
            certified: tw.certified(),
            walls,
            never_crossed,
            chambers,
        };
        Ok((report, tw, order))
    }
}

/// Fixture labels run from the innermost chamber outwards; a fixture entry
/// whose length does not match the wall count is ignored.
fn chamber_labels(v: &ChernCharacter, n_walls: usize, direction: PathDirection, fixtures: &Fixtures) -> Vec<Chamber> {
    let labels = fixtures.model_labels_for(v).filter(|l| l.len() == n_walls + 1);
    (0..=n_walls)
        .map(|index| {
            let model_label = match labels {
                Some(l) => match direction {
                    PathDirection::Outward => l[index].clone(),
                    PathDirection::Inward => l[n_walls - index].clone(),
                },
                None => UNLABELED.to_string(),
            };
            Chamber { index, model_label }
        })
        .collect()
}
