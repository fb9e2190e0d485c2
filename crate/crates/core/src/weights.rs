//! Weight data `(g, a_1, ..., a_n)` with exact rational weights, coincidence
//! tests and the signature (the family of index subsets whose markings may
//! sit at a single smooth point).
//!
//! Indices are 1-based throughout the public API, matching the usual
//! labelling of marked points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `n` for which subset enumeration (2^n work) is attempted.
pub const ENUMERATION_LIMIT: usize = 24;

/// Minimum subset size used when comparing weight data: only tails with at
/// least three markings can be contracted.
pub const EQUIVALENCE_MIN_SIZE: usize = 3;

/// Parses `"p/q"` or `"p"` into a rational in lowest terms. Decimal
/// notation is rejected.
pub fn parse_fraction(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let parse_int = |s: &str| -> Result<BigInt> {
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Syntax(format!("`{text}` is not an integer fraction")));
        }
        s.parse::<BigInt>()
            .map_err(|_| Error::Syntax(format!("`{text}` is not an integer fraction")))
    };
    match text.split_once('/') {
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::Syntax(format!("`{text}` has a zero denominator")));
            }
            Ok(BigRational::new(num, den))
        }
        None => Ok(BigRational::from_integer(parse_int(text)?)),
    }
}

/// Lowest-terms rendering: `"1/3"`, `"1"`, `"-2/5"`.
pub fn format_fraction(value: &BigRational) -> String {
    value.to_string()
}

/// Validates a list of 1-based indices against `n` and returns it sorted.
pub fn normalize_subset(n: usize, indices: &[usize]) -> Result<Vec<usize>> {
    if indices.is_empty() {
        return Err(Error::EmptySubset);
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable();
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            return Err(Error::RepeatedIndex(w[0]));
        }
    }
    for &i in &sorted {
        check_index(n, i)?;
    }
    Ok(sorted)
}

pub(crate) fn check_index(n: usize, index: usize) -> Result<()> {
    if index == 0 || index > n {
        Err(Error::IndexOutOfRange { index, n })
    } else {
        Ok(())
    }
}

pub(crate) fn check_enumerable(n: usize) -> Result<()> {
    if n > ENUMERATION_LIMIT {
        Err(Error::TooManyMarkings { n, limit: ENUMERATION_LIMIT })
    } else {
        Ok(())
    }
}

pub(crate) fn mask_to_indices(mask: u64) -> Vec<usize> {
    (0..64).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub(crate) fn indices_to_mask(indices: &[usize]) -> u64 {
    indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
}

/// Input data `(g, A)`: a genus and weights `0 < a_i <= 1` with
/// `2g - 2 + sum(a_i) > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightData {
    genus: u32,
    weights: Vec<BigRational>,
    // Common-denominator form: a_i = scaled[i] / scale.
    scale: BigInt,
    scaled: Vec<BigInt>,
}

impl WeightData {
    pub fn new(genus: u32, weights: Vec<BigRational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        for (k, a) in weights.iter().enumerate() {
            if !a.is_positive() || *a > BigRational::one() {
                return Err(Error::WeightOutOfRange { index: k + 1, value: a.clone() });
            }
        }
        let total: BigRational = weights.iter().sum();
        let value = BigRational::from_integer(BigInt::from(2 * i64::from(genus) - 2)) + total;
        if !value.is_positive() {
            return Err(Error::TotalWeight { genus, value });
        }
        let scale = weights
            .iter()
            .fold(BigInt::one(), |l, a| l.lcm(a.denom()));
        let scaled = weights
            .iter()
            .map(|a| a.numer() * (&scale / a.denom()))
            .collect();
        Ok(WeightData { genus, weights, scale, scaled })
    }

    /// Convenience constructor from fraction strings such as `"1/3"`.
    pub fn from_fractions(genus: u32, weights: &[&str]) -> Result<Self> {
        let parsed = weights
            .iter()
            .map(|w| parse_fraction(w))
            .collect::<Result<Vec<_>>>()?;
        Self::new(genus, parsed)
    }

    /// The same weight `1` on all `n` markings (the Deligne-Mumford case).
    pub fn all_ones(genus: u32, n: usize) -> Result<Self> {
        Self::new(genus, vec![BigRational::one(); n])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weight of marking `i` (1-based).
    pub fn weight(&self, i: usize) -> Result<&BigRational> {
        check_index(self.len(), i)?;
        Ok(&self.weights[i - 1])
    }

    /// `2g - 2 + sum_{i in keep} a_i`, the degree of the weighted
    /// log-canonical divisor on a smooth curve carrying only `keep`.
    pub fn log_canonical_degree(&self, keep: &[usize]) -> Result<BigRational> {
        let keep = normalize_subset(self.len(), keep)?;
        Ok(self.degree_unchecked(&keep))
    }

    pub(crate) fn degree_unchecked(&self, keep: &[usize]) -> BigRational {
        let sum: BigRational = keep.iter().map(|&i| &self.weights[i - 1]).sum();
        BigRational::from_integer(BigInt::from(2 * i64::from(self.genus) - 2)) + sum
    }

    pub fn subset_sum(&self, subset: &[usize]) -> Result<BigRational> {
        let subset = normalize_subset(self.len(), subset)?;
        Ok(subset.iter().map(|&i| &self.weights[i - 1]).sum())
    }

    /// Sum over the bitmask `mask` compared with 1, in integer form.
    pub(crate) fn mask_at_most_one(&self, mask: u64) -> bool {
        let mut sum = BigInt::zero();
        let mut m = mask;
        while m != 0 {
            let b = m.trailing_zeros() as usize;
            sum += &self.scaled[b];
            m &= m - 1;
        }
        sum <= self.scale
    }

    /// Whether the markings in `subset` may coincide: `sum_{i in S} a_i <= 1`.
    pub fn can_coincide(&self, subset: &[usize]) -> Result<bool> {
        let subset = normalize_subset(self.len(), subset)?;
        Ok(self.mask_at_most_one(indices_to_mask(&subset)))
    }

    /// All subsets `S` with `|S| >= min_size` and `sum_S a_i <= 1`, in
    /// lexicographic order of their sorted index lists.
    pub fn signature(&self, min_size: usize) -> Result<Signature> {
        let n = self.len();
        if min_size < 2 || min_size > n {
            return Err(Error::InvalidMinSize { min_size, n });
        }
        self.signature_unchecked(min_size)
    }

    /// Like [`signature`](Self::signature) but returns an empty family when
    /// `min_size > n` instead of failing.
    pub(crate) fn signature_unchecked(&self, min_size: usize) -> Result<Signature> {
        let n = self.len();
        check_enumerable(n)?;
        let mut subsets: Vec<Vec<usize>> = (0u64..1 << n)
            .filter(|m| m.count_ones() as usize >= min_size)
            .filter(|&m| self.mask_at_most_one(m))
            .map(mask_to_indices)
            .collect();
        subsets.sort();
        Ok(Signature { min_size, subsets })
    }

    /// Removes marking `i`, keeping the order of the others.
    pub fn reduced(&self, i: usize) -> Result<WeightData> {
        check_index(self.len(), i)?;
        let mut weights = self.weights.clone();
        weights.remove(i - 1);
        WeightData::new(self.genus, weights)
    }

    /// Keeps only the markings in `keep`, in increasing index order.
    pub fn restrict(&self, keep: &[usize]) -> Result<WeightData> {
        let keep = normalize_subset(self.len(), keep)?;
        WeightData::new(self.genus, keep.iter().map(|&i| self.weights[i - 1].clone()).collect())
    }

    pub fn to_document(&self) -> WeightDocument {
        WeightDocument {
            g: self.genus,
            weights: self.weights.iter().map(format_fraction).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_document()).expect("weight document serializes")
    }
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={}; (", self.genus)?;
        for (k, a) in self.weights.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str(")")
    }
}

/// Wire form of weight data: `{"g": 0, "weights": ["1/4", "1"]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDocument {
    pub g: u32,
    pub weights: Vec<String>,
}

impl TryFrom<WeightDocument> for WeightData {
    type Error = Error;

    fn try_from(doc: WeightDocument) -> Result<Self> {
        let weights = doc
            .weights
            .iter()
            .map(|w| parse_fraction(w))
            .collect::<Result<Vec<_>>>()?;
        WeightData::new(doc.g, weights)
    }
}

/// Parses the JSON weight-data document. Weights may be fraction strings or
/// JSON integers; JSON floats are rejected.
pub fn parse_weight_data(text: &str) -> Result<WeightData> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Syntax(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Syntax("weight document must be a JSON object".into()))?;
    let g = obj
        .get("g")
        .and_then(|g| g.as_u64())
        .ok_or_else(|| Error::Syntax("`g` must be a nonnegative integer".into()))?;
    let g = u32::try_from(g).map_err(|_| Error::Syntax("`g` is too large".into()))?;
    let raw = obj
        .get("weights")
        .and_then(|w| w.as_array())
        .ok_or_else(|| Error::Syntax("`weights` must be an array".into()))?;
    let mut weights = Vec::with_capacity(raw.len());
    for w in raw {
        let parsed = match w {
            serde_json::Value::String(s) => parse_fraction(s)?,
            serde_json::Value::Number(num) if num.is_i64() || num.is_u64() => {
                parse_fraction(&num.to_string())?
            }
            other => {
                return Err(Error::Syntax(format!(
                    "weight {other} must be an integer fraction string"
                )))
            }
        };
        weights.push(parsed);
    }
    WeightData::new(g, weights)
}

/// Subsets `S` with `|S| >= min_size` whose markings may coincide.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub min_size: usize,
    pub subsets: Vec<Vec<usize>>,
}

impl Signature {
    pub fn contains(&self, subset: &[usize]) -> bool {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        self.subsets.binary_search(&sorted).is_ok()
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Relabels every subset through `align` (`align[k - 1]` is the image of `k`).
    pub fn relabel(&self, align: &[usize]) -> Signature {
        let mut subsets: Vec<Vec<usize>> = self
            .subsets
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&i| align[i - 1]).collect();
                t.sort_unstable();
                t
            })
            .collect();
        subsets.sort();
        Signature { min_size: self.min_size, subsets }
    }
}

/// Alignment from the indices of `A` with `i` removed to those of `A` with
/// `j` removed: common markings are matched, and the slot of `a_j` is sent
/// to the slot of `a_i`.
pub fn canonical_alignment(n: usize, i: usize, j: usize) -> Result<Vec<usize>> {
    check_index(n, i)?;
    check_index(n, j)?;
    let without_i: Vec<usize> = (1..=n).filter(|&k| k != i).collect();
    let without_j: Vec<usize> = (1..=n).filter(|&k| k != j).collect();
    let position_in_j = |k: usize| without_j.iter().position(|&x| x == k).unwrap() + 1;
    Ok(without_i
        .iter()
        .map(|&k| if k == j { position_in_j(i) } else { position_in_j(k) })
        .collect())
}

/// Compares the size-at-least-3 signatures of `a` and `b` after relabelling
/// `a` through `align`.
pub fn weight_data_equivalent(a: &WeightData, b: &WeightData, align: &[usize]) -> Result<bool> {
    if a.genus() != b.genus() {
        return Err(Error::ShapeMismatch(format!(
            "genus {} vs {}",
            a.genus(),
            b.genus()
        )));
    }
    let n = a.len();
    if b.len() != n || align.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "lengths {} and {} with an alignment of length {}",
            n,
            b.len(),
            align.len()
        )));
    }
    let mut seen = vec![false; n];
    for &k in align {
        if k == 0 || k > n || seen[k - 1] {
            return Err(Error::NotABijection(n));
        }
        seen[k - 1] = true;
    }
    let sa = a.signature_unchecked(EQUIVALENCE_MIN_SIZE)?.relabel(align);
    let sb = b.signature_unchecked(EQUIVALENCE_MIN_SIZE)?;
    Ok(sa.subsets == sb.subsets)
}
