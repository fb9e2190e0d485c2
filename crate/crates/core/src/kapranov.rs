//! The Kapranov blow-up schedule of `P^{n-3}` ending at `M_{0,n}`, its
//! intermediate weighted spaces `A_{r,s}[n]`, Picard-rank bookkeeping,
//! automorphism groups along the tower, and the degree-feasibility check
//! for birational self-maps of `P^{n-3}` that fix the lines through the
//! blown-up points.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::moduli::{GroupDescriptor, SpecialFactor};
use crate::weights::{format_fraction, WeightData};

/// Position `(r, s)` in the tower for `n` markings: `1 <= r <= n - 3`,
/// `1 <= s <= n - r - 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TowerStep {
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

impl TowerStep {
    pub fn new(n: usize, r: usize, s: usize) -> Result<Self> {
        check_tower_size(n)?;
        if r == 0 || r > n - 3 || s == 0 || s > n - r - 2 {
            return Err(Error::InvalidStep { n, r, s });
        }
        Ok(TowerStep { n, r, s })
    }

    /// The bare projective space `P^{n-3}`.
    pub fn is_seed(&self) -> bool {
        self.r == 1 && self.s == 1
    }

    /// The last step, `M_{0,n}` itself.
    pub fn is_final(&self) -> bool {
        self.r == self.n - 3
    }

    /// All steps in blow-up order, starting at the seed `(1, 1)`.
    pub fn schedule(n: usize) -> Result<Vec<TowerStep>> {
        check_tower_size(n)?;
        Ok((1..=n - 3)
            .flat_map(|r| (1..=n - r - 2).map(move |s| TowerStep { n, r, s }))
            .collect())
    }
}

impl fmt::Display for TowerStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W_{{{},{}}}[{}]", self.r, self.s, self.n)
    }
}

fn check_tower_size(n: usize) -> Result<()> {
    if n < 5 {
        Err(Error::TowerTooSmall(n))
    } else {
        Ok(())
    }
}

/// The weights `A_{r,s}[n]`: `n - r - 1` copies of `1/(n-r-1)`, then
/// `s/(n-r-1)`, then `r` ones.
pub fn kapranov_weights(n: usize, r: usize, s: usize) -> Result<WeightData> {
    let step = TowerStep::new(n, r, s)?;
    WeightData::new(0, step_weights(step))
}

fn step_weights(step: TowerStep) -> Vec<BigRational> {
    let TowerStep { n, r, s } = step;
    let light = n - r - 1;
    let denom = BigInt::from(light);
    let mut weights = vec![BigRational::new(BigInt::one(), denom.clone()); light];
    weights.push(BigRational::new(BigInt::from(s), denom));
    weights.extend(std::iter::repeat_n(BigRational::one(), r));
    weights
}

/// A linear span of some of the general points `p_1, ..., p_{n-1}` of
/// `P^{n-3}` that gets blown up.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlowupCenter {
    pub points: Vec<usize>,
}

impl BlowupCenter {
    pub fn dimension(&self) -> usize {
        self.points.len() - 1
    }
}

/// Centers blown up to reach step `(r, s)`: spans of `s + r - 2` points that
/// contain `p_{n-1}, ..., p_{n-r+1}`, avoid `p_{n-r}`, and otherwise use
/// only `p_1, ..., p_{n-r-1}`. Lexicographic order.
pub fn kapranov_centers(n: usize, r: usize, s: usize) -> Result<Vec<BlowupCenter>> {
    let step = TowerStep::new(n, r, s)?;
    Ok(step_centers(step))
}

fn step_centers(step: TowerStep) -> Vec<BlowupCenter> {
    let TowerStep { n, r, s } = step;
    if step.is_seed() {
        return Vec::new();
    }
    let required: Vec<usize> = (n - r + 1..n).collect();
    let free_pool = n - r - 1;
    let mut centers: Vec<BlowupCenter> = combinations(free_pool, s - 1)
        .into_iter()
        .map(|mut pts| {
            pts.extend(&required);
            pts.sort_unstable();
            BlowupCenter { points: pts }
        })
        .collect();
    centers.sort();
    centers
}

/// `k`-subsets of `{1..m}` in lexicographic order.
fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            if m - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(1, m, k, &mut Vec::new(), &mut out);
    out
}

/// One row of the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerEntry {
    pub step: TowerStep,
    pub weights: WeightData,
    pub centers: Vec<BlowupCenter>,
    /// Picard rank after this step's blow-ups.
    pub rank: usize,
    pub aut: GroupDescriptor,
}

impl TowerEntry {
    pub fn to_document(&self) -> TowerEntryDocument {
        TowerEntryDocument {
            r: self.step.r,
            s: self.step.s,
            weights: self.weights.weights().iter().map(format_fraction).collect(),
            centers: self.centers.iter().map(|c| c.points.clone()).collect(),
            rank: self.rank,
            aut: self.aut.to_document(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerEntryDocument {
    pub r: usize,
    pub s: usize,
    pub weights: Vec<String>,
    pub centers: Vec<Vec<usize>>,
    pub rank: usize,
    pub aut: crate::moduli::DescriptorDocument,
}

/// The whole schedule from `P^{n-3}` (rank 1) to `M_{0,n}`. Each center is
/// a smooth linear subspace blown up once, adding one to the Picard rank.
pub fn kapranov_tower(n: usize) -> Result<Vec<TowerEntry>> {
    let mut rank = 1;
    TowerStep::schedule(n)?
        .into_iter()
        .map(|step| {
            let centers = step_centers(step);
            rank += centers.len();
            Ok(TowerEntry {
                step,
                weights: WeightData::new(0, step_weights(step))?,
                centers,
                rank,
                aut: step_aut(step),
            })
        })
        .collect()
}

/// Automorphism group of the space at step `(r, s)`.
///
/// * `r = 1, s = 1`: `PGL(n-2)` of bare `P^{n-3}`, flagged as classical.
/// * `r = 1, 1 < s < n - 3`: `(C*)^{n-3} x S_{n-2}`.
/// * `r = 1, s = n - 3`: `(C*)^{n-3} x S_{n-2} x S_2`.
/// * `r >= 2`: `S_n`.
pub fn kapranov_aut(n: usize, r: usize, s: usize) -> Result<GroupDescriptor> {
    Ok(step_aut(TowerStep::new(n, r, s)?))
}

fn step_aut(step: TowerStep) -> GroupDescriptor {
    let TowerStep { n, r, s } = step;
    let torus = (n - 3) as u32;
    if r >= 2 {
        GroupDescriptor::trivial().with_symmetric_factors(vec![n])
    } else if s == 1 {
        GroupDescriptor {
            outside_theorem: true,
            ..GroupDescriptor::special(SpecialFactor::ProjectiveLinear((n - 2) as u32))
        }
    } else if s < n - 3 {
        GroupDescriptor::torus(torus).with_symmetric_factors(vec![n - 2])
    } else {
        GroupDescriptor::torus(torus).with_symmetric_factors(vec![n - 2, 2])
    }
}

/// Returns the step `(n, r, s)` whose weights are exactly `a` (same order).
pub fn identify_step(a: &WeightData) -> Option<TowerStep> {
    if a.genus() != 0 {
        return None;
    }
    let n = a.len();
    TowerStep::schedule(n)
        .ok()?
        .into_iter()
        .find(|&step| step_weights(step) == a.weights())
}

/// `Some(n - 2)` when `a` is `A_{1,n-3}[n]` up to reordering, i.e. the
/// Losev-Manin space of `n - 2` points on chains with two poles.
pub fn detect_losev_manin(a: &WeightData) -> Option<usize> {
    let n = a.len();
    if a.genus() != 0 || n < 5 {
        return None;
    }
    let mut target = step_weights(TowerStep { n, r: 1, s: n - 3 });
    let mut given = a.weights().to_vec();
    target.sort();
    given.sort();
    (target == given).then_some(n - 2)
}

/// Which part of the tower a birational self-map of `P^{n-3}` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TowerClass {
    /// `r = 1`: the `n - 2` points `p_1..p_{n-2}` are blown up.
    #[serde(rename = "r=1")]
    FirstRow,
    /// `r >= 2`: `p_{n-1}` is blown up as well, so rational normal curves
    /// through all `n - 1` points must be preserved.
    #[serde(rename = "r>=2")]
    Later,
}

impl TowerClass {
    pub fn from_r(r: usize) -> Result<Self> {
        match r {
            0 => Err(Error::Syntax("r must be at least 1".into())),
            1 => Ok(TowerClass::FirstRow),
            _ => Ok(TowerClass::Later),
        }
    }
}

impl fmt::Display for TowerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TowerClass::FirstRow => "r=1",
            TowerClass::Later => "r>=2",
        })
    }
}

/// A constraint on the degree `d` of the linear system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CremonaConstraint {
    /// A hyperplane through `n - 3` points contains `n - 3` codimension-two
    /// spans of multiplicity `d - (n - 4)` each: `(n-3)(d-n+4) <= d`.
    NoFixedComponent,
    /// Unless `d = 1`, the induced map on a general plane through two
    /// points is a Cremona map and needs a codimension-two base locus:
    /// `d - (n - 4) >= 1`.
    CodimensionTwoBaseLocus,
    /// Rational normal curves through the `n - 1` points keep degree
    /// `n - 3`: `(n-3)d - (n-1)(d-1) = n - 3`.
    RationalNormalCurves,
}

/// Multiplicity data for one candidate degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CremonaCandidate {
    pub degree: usize,
    pub point_multiplicity: usize,
    /// `(h, mult)` for spans of `h` points, `h = 1..=n-4`, with
    /// `mult = max(d - h, 0)`.
    pub span_multiplicities: Vec<(usize, usize)>,
    pub violated: Vec<CremonaConstraint>,
}

impl CremonaCandidate {
    pub fn feasible(&self) -> bool {
        self.violated.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CremonaAnalysis {
    pub n: usize,
    pub class: TowerClass,
    pub candidates: Vec<CremonaCandidate>,
}

impl CremonaAnalysis {
    pub fn feasible_degrees(&self) -> Vec<usize> {
        self.candidates
            .iter()
            .filter(|c| c.feasible())
            .map(|c| c.degree)
            .collect()
    }
}

/// Checks every degree `d in 1..=n-3` against the multiplicity constraints
/// for the given tower class, over exact integers.
pub fn feasible_cremona_degrees(n: usize, class: TowerClass) -> Result<CremonaAnalysis> {
    check_tower_size(n)?;
    let n_i = n as i64;
    let candidates = (1..=n - 3)
        .map(|degree| {
            let d = degree as i64;
            let span_mult = |h: i64| (d - h).max(0);
            let mut violated = Vec::new();
            match class {
                TowerClass::FirstRow => {
                    let codim_two = span_mult(n_i - 4);
                    if (n_i - 3) * codim_two > d {
                        violated.push(CremonaConstraint::NoFixedComponent);
                    }
                    if d != 1 && codim_two < 1 {
                        violated.push(CremonaConstraint::CodimensionTwoBaseLocus);
                    }
                }
                TowerClass::Later => {
                    if (n_i - 3) * d - (n_i - 1) * (d - 1) != n_i - 3 {
                        violated.push(CremonaConstraint::RationalNormalCurves);
                    }
                }
            }
            CremonaCandidate {
                degree,
                point_multiplicity: degree - 1,
                span_multiplicities: (1..=n - 4)
                    .map(|h| (h, span_mult(h as i64) as usize))
                    .collect(),
                violated,
            }
        })
        .collect();
    Ok(CremonaAnalysis { n, class, candidates })
}
