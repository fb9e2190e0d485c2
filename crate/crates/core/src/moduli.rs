//! Morphisms between weighted moduli spaces, codimension-one boundary
//! strata, and automorphism-group descriptors in positive genus.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{admissible_group, factorial};
use crate::weights::{check_enumerable, mask_to_indices, normalize_subset, WeightData};

/// Whether forgetting every marking outside `keep` gives a morphism, i.e.
/// `2g - 2 + sum_{i in keep} a_i > 0`.
pub fn forgetful_exists(a: &WeightData, keep: &[usize]) -> Result<bool> {
    Ok(a.log_canonical_degree(keep)?.is_positive())
}

/// Target weight data of the forgetful morphism keeping `keep`.
pub fn forgetful_target(a: &WeightData, keep: &[usize]) -> Result<WeightData> {
    let keep = normalize_subset(a.len(), keep)?;
    let value = a.degree_unchecked(&keep);
    if !value.is_positive() {
        return Err(Error::ForgetfulNotDefined { keep, value });
    }
    a.restrict(&keep)
}

/// Complement of `drop` in `{1..n}`.
pub fn complement(n: usize, drop: &[usize]) -> Result<Vec<usize>> {
    let drop = normalize_subset(n, drop)?;
    Ok((1..=n).filter(|k| drop.binary_search(k).is_err()).collect())
}

fn check_same_shape(a: &WeightData, b: &WeightData) -> Result<()> {
    if a.genus() != b.genus() || a.len() != b.len() {
        return Err(Error::ShapeMismatch(format!(
            "(g, n) = ({}, {}) vs ({}, {})",
            a.genus(),
            a.len(),
            b.genus(),
            b.len()
        )));
    }
    Ok(())
}

/// A reduction `M_{g,A} -> M_{g,B}` exists iff `a_i >= b_i` for all `i`.
pub fn reduction_exists(a: &WeightData, b: &WeightData) -> Result<bool> {
    check_same_shape(a, b)?;
    Ok(a.weights().iter().zip(b.weights()).all(|(x, y)| x >= y))
}

/// Index sets `I`, `|I| >= 3`, of genus-zero tails that are boundary
/// divisors for `A` but collapse to a point under the reduction to `B`:
/// `sum_I a_i > 1 >= sum_I b_i`. In genus zero the complementary side is
/// automatically stable: `sum b > 2` forces `sum_{I^c} a_i >= sum_{I^c} b_i > 1`.
pub fn contracted_divisors(a: &WeightData, b: &WeightData) -> Result<Vec<Vec<usize>>> {
    if !reduction_exists(a, b)? {
        return Err(Error::ReductionNotDefined);
    }
    let n = a.len();
    check_enumerable(n)?;
    let full: u64 = (1 << n) - 1;
    let mut out: Vec<Vec<usize>> = (0u64..=full)
        .filter(|m| m.count_ones() >= 3)
        .filter(|&m| b.mask_at_most_one(m) && !a.mask_at_most_one(m))
        .map(mask_to_indices)
        .collect();
    out.sort();
    Ok(out)
}

/// A codimension-one boundary stratum.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum BoundaryDivisor {
    /// Irreducible nodal curves.
    #[serde(rename = "irr")]
    Irreducible,
    /// A node splitting off a genus-`h` component carrying the markings `P`.
    #[serde(rename = "nodal")]
    Nodal {
        h: u32,
        #[serde(rename = "P")]
        markings: Vec<usize>,
    },
    /// The markings in `S` coincide.
    #[serde(rename = "collision")]
    Collision {
        #[serde(rename = "S")]
        markings: Vec<usize>,
    },
}

impl fmt::Display for BoundaryDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |s: &[usize]| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            BoundaryDivisor::Irreducible => f.write_str("Delta_irr"),
            BoundaryDivisor::Nodal { h, markings } => {
                write!(f, "Delta_{{{h},{{{}}}}}", list(markings))
            }
            BoundaryDivisor::Collision { markings } => write!(f, "D_{{{}}}", list(markings)),
        }
    }
}

/// All boundary divisors: `Delta_irr` (g >= 1), nodal divisors in canonical
/// form `h <= g - h` (with `1 in P` when `h = g - h`) whose two sides are
/// both stable, and collision divisors `D_S` with `|S| >= 2`,
/// `sum_S a_i <= 1`.
pub fn boundary_divisors(a: &WeightData) -> Result<Vec<BoundaryDivisor>> {
    let n = a.len();
    check_enumerable(n)?;
    let g = a.genus();
    let full: u64 = (1 << n) - 1;
    let mut out = Vec::new();
    if g >= 1 {
        out.push(BoundaryDivisor::Irreducible);
    }

    // A genus-0 side needs at least two markings and weight > 1, so that
    // -2 + 1 + sum > 0 on that component.
    let genus_zero_side_stable =
        |mask: u64| mask.count_ones() >= 2 && !a.mask_at_most_one(mask);

    let mut nodal = Vec::new();
    for h in 0..=g / 2 {
        for p in 0u64..=full {
            let rest = full & !p;
            if h == g - h && p & 1 == 0 {
                continue;
            }
            if h == 0 && !genus_zero_side_stable(p) {
                continue;
            }
            if g - h == 0 && !genus_zero_side_stable(rest) {
                continue;
            }
            nodal.push(BoundaryDivisor::Nodal { h, markings: mask_to_indices(p) });
        }
    }
    nodal.sort();
    out.extend(nodal);

    let mut collisions: Vec<BoundaryDivisor> = (0u64..=full)
        .filter(|m| m.count_ones() >= 2 && a.mask_at_most_one(*m))
        .map(|m| BoundaryDivisor::Collision { markings: mask_to_indices(m) })
        .collect();
    collisions.sort();
    out.extend(collisions);
    Ok(out)
}

/// Non-finite factor of an automorphism group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecialFactor {
    /// `PGL(k)`.
    ProjectiveLinear(u32),
}

impl fmt::Display for SpecialFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecialFactor::ProjectiveLinear(k) => write!(f, "PGL{k}"),
        }
    }
}

impl std::str::FromStr for SpecialFactor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.strip_prefix("PGL")
            .and_then(|k| k.parse().ok())
            .map(SpecialFactor::ProjectiveLinear)
            .ok_or_else(|| Error::Syntax(format!("unknown special factor `{s}`")))
    }
}

/// Shape of an automorphism group: `(C*)^t x S_{d_1} x ... x S_{d_k}`,
/// optionally with a `PGL` factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub torus_rank: u32,
    /// Degrees of the symmetric factors, ascending.
    pub symmetric_factors: Vec<usize>,
    pub special: Option<SpecialFactor>,
    /// Present when the finite part is the admissible group; its blocks.
    pub components: Option<Vec<Vec<usize>>>,
    /// Set for classical answers recorded outside the automorphism theorems
    /// (bare projective space at the bottom of the Kapranov tower).
    pub outside_theorem: bool,
}

impl GroupDescriptor {
    pub fn trivial() -> Self {
        GroupDescriptor {
            torus_rank: 0,
            symmetric_factors: Vec::new(),
            special: None,
            components: None,
            outside_theorem: false,
        }
    }

    pub fn torus(rank: u32) -> Self {
        GroupDescriptor { torus_rank: rank, ..Self::trivial() }
    }

    pub fn special(factor: SpecialFactor) -> Self {
        GroupDescriptor { special: Some(factor), ..Self::trivial() }
    }

    pub fn with_symmetric_factors(mut self, mut degrees: Vec<usize>) -> Self {
        degrees.sort_unstable();
        self.symmetric_factors = degrees;
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.torus_rank == 0 && self.symmetric_factors.is_empty() && self.special.is_none()
    }

    /// Order of the finite part, undefined when a `PGL` factor is present.
    pub fn finite_order(&self) -> Option<BigUint> {
        if self.special.is_some() {
            return None;
        }
        Some(
            self.symmetric_factors
                .iter()
                .fold(BigUint::one(), |acc, &d| acc * factorial(d)),
        )
    }

    pub fn to_document(&self) -> DescriptorDocument {
        DescriptorDocument {
            torus_rank: self.torus_rank,
            symmetric_factors: self.symmetric_factors.clone(),
            special: self.special.map(|s| s.to_string()),
            finite_order: self.finite_order().map(|o| o.to_string()),
            components: self.components.clone(),
            outside_theorem: self.outside_theorem,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(SpecialFactor::ProjectiveLinear(k)) = self.special {
            parts.push(format!("PGL({k})"));
        }
        match self.torus_rank {
            0 => {}
            1 => parts.push("C*".to_string()),
            t => parts.push(format!("(C*)^{t}")),
        }
        parts.extend(self.symmetric_factors.iter().rev().map(|d| format!("S_{d}")));
        if parts.is_empty() {
            f.write_str("trivial")
        } else {
            f.write_str(&parts.join(" x "))
        }
    }
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// Wire form of a [`GroupDescriptor`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorDocument {
    pub torus_rank: u32,
    pub symmetric_factors: Vec<usize>,
    pub special: Option<String>,
    pub finite_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub outside_theorem: bool,
}

impl TryFrom<DescriptorDocument> for GroupDescriptor {
    type Error = Error;

    fn try_from(doc: DescriptorDocument) -> Result<Self> {
        let special = doc.special.as_deref().map(str::parse).transpose()?;
        let descriptor = GroupDescriptor {
            torus_rank: doc.torus_rank,
            symmetric_factors: doc.symmetric_factors,
            special,
            components: doc.components,
            outside_theorem: doc.outside_theorem,
        };
        if descriptor.finite_order().map(|o| o.to_string()) != doc.finite_order {
            return Err(Error::Syntax("finite_order disagrees with the factors".into()));
        }
        Ok(descriptor)
    }
}

fn check_positive_genus(a: &WeightData) -> Result<()> {
    if a.genus() == 0 {
        Err(Error::GenusZero)
    } else {
        Ok(())
    }
}

fn admissible_descriptor(a: &WeightData) -> Result<GroupDescriptor> {
    let group = admissible_group(a)?;
    Ok(GroupDescriptor {
        components: Some(group.components().to_vec()),
        ..GroupDescriptor::trivial().with_symmetric_factors(group.factor_degrees())
    })
}

fn in_stable_range(a: &WeightData) -> bool {
    2 * a.genus() as usize + a.len() >= 5
}

/// Automorphisms of the coarse space `M_{g,A[n]}`, `g >= 1`.
pub fn aut_descriptor_coarse(a: &WeightData) -> Result<GroupDescriptor> {
    check_positive_genus(a)?;
    if in_stable_range(a) {
        return admissible_descriptor(a);
    }
    match (a.genus(), a.len()) {
        (1, 1) => Ok(GroupDescriptor::special(SpecialFactor::ProjectiveLinear(2))),
        (1, 2) => Ok(GroupDescriptor::torus(2)),
        (genus, n) => Err(Error::NotCovered { genus, n }),
    }
}

/// Automorphisms of the stack, `g >= 1`. Agrees with the coarse space in
/// the stable range; differs for `(g, n) = (1, 1), (1, 2)`.
pub fn aut_descriptor_stack(a: &WeightData) -> Result<GroupDescriptor> {
    check_positive_genus(a)?;
    if in_stable_range(a) {
        return admissible_descriptor(a);
    }
    match (a.genus(), a.len()) {
        (1, 1) => Ok(GroupDescriptor::torus(1)),
        (1, 2) => Ok(GroupDescriptor::trivial()),
        (genus, n) => Err(Error::NotCovered { genus, n }),
    }
}
