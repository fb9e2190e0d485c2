//! Admissible transpositions and the group they generate, together with an
//! exhaustive signature-preserving oracle for small `n`.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weights::{
    check_enumerable, check_index, indices_to_mask, WeightData, EQUIVALENCE_MIN_SIZE,
};

/// Largest `n` for which [`signature_preserving_group`] scans all of `S_n`.
pub const ORACLE_LIMIT: usize = 8;

/// A permutation of `{1..n}` in one-line notation: `images[k - 1] = σ(k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::NotABijection(n));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        check_index(n, i)?;
        check_index(n, j)?;
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Ok(Permutation { images })
    }

    /// Builds a permutation of `{1..n}` from disjoint or overlapping cycles,
    /// applied right to left.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut result = Permutation::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<usize> = (1..=n).collect();
            let mut seen = BTreeSet::new();
            for (k, &x) in cycle.iter().enumerate() {
                check_index(n, x)?;
                if !seen.insert(x) {
                    return Err(Error::RepeatedIndex(x));
                }
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
            result = Permutation { images }.compose(&result);
        }
        Ok(result)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&k| self.apply(k)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (k, &x) in self.images.iter().enumerate() {
            images[x - 1] = k + 1;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &x)| x == k + 1)
    }

    /// Nontrivial cycles, each starting at its smallest element, ordered by
    /// that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start - 1] = true;
            let mut k = self.apply(start);
            while k != start {
                seen[k - 1] = true;
                cycle.push(k);
                k = self.apply(k);
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn image_of_set(&self, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&k| self.apply(k)).collect();
        out.sort_unstable();
        out
    }

    pub fn one_line(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(" "))
    }
}

/// Cycle notation, `"()"` for the identity.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses cycle notation such as `"(1 3)(2 4)"` or `"()"`; the degree is the
/// largest index mentioned. Use [`Permutation::from_cycles`] for an explicit
/// degree.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let cycles = parse_cycles(s)?;
        let n = cycles.iter().flatten().copied().max().unwrap_or(0);
        Permutation::from_cycles(n, &cycles)
    }
}

pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::Syntax(format!("`{s}` is not cycle notation"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let close = body.find(')').ok_or_else(bad)?;
        let cycle = body[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// A subgroup of `S_n` generated by transpositions. Such a group is the
/// product of the symmetric groups on the connected components of the
/// transposition graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    n: usize,
    generators: Vec<(usize, usize)>,
    components: Vec<Vec<usize>>,
    order: BigUint,
}

impl PermGroup {
    pub fn from_transpositions(n: usize, generators: Vec<(usize, usize)>) -> Result<Self> {
        let mut uf = UnionFind::new(n);
        for &(i, j) in &generators {
            check_index(n, i)?;
            check_index(n, j)?;
            if i == j {
                return Err(Error::RepeatedIndex(i));
            }
            uf.union(i - 1, j - 1);
        }
        let components = uf.blocks();
        let order = components
            .iter()
            .map(|c| factorial(c.len()))
            .fold(BigUint::one(), |acc, f| acc * f);
        Ok(PermGroup { n, generators, components, order })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// Component sizes in ascending order: the degrees of the symmetric
    /// factors.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.components.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn contains(&self, sigma: &Permutation) -> Result<bool> {
        if sigma.len() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "permutation of degree {} tested against a group of degree {}",
                sigma.len(),
                self.n
            )));
        }
        Ok(self
            .components
            .iter()
            .all(|c| sigma.image_of_set(c) == *c))
    }

    /// All elements, produced by breadth-first closure under the
    /// generators (independent of the component structure).
    pub fn enumerate_elements(&self) -> Result<Vec<Permutation>> {
        if self.n > ORACLE_LIMIT {
            return Err(Error::TooManyMarkings { n: self.n, limit: ORACLE_LIMIT });
        }
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|&(i, j)| Permutation::transposition(self.n, i, j))
            .collect::<Result<_>>()?;
        let start = Permutation::identity(self.n);
        let mut seen: HashSet<Permutation> = HashSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(p) = queue.pop_front() {
            for g in &gens {
                let q = g.compose(&p);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        let mut out: Vec<Permutation> = seen.into_iter().collect();
        out.sort();
        Ok(out)
    }

    pub fn to_document(&self) -> GroupDocument {
        GroupDocument {
            generators: self
                .generators
                .iter()
                .map(|&(i, j)| format!("({i} {j})"))
                .collect(),
            components: self.components.clone(),
            order: self.order.to_string(),
        }
    }
}

/// Wire form of a transposition-generated group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDocument {
    pub generators: Vec<String>,
    pub components: Vec<Vec<usize>>,
    pub order: String,
}

pub fn factorial(k: usize) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, x| acc * BigUint::from(x))
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut y = x;
        while self.parent[y] != root {
            let next = self.parent[y];
            self.parent[y] = root;
            y = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Blocks as sorted 1-based lists, ordered by smallest element.
    fn blocks(&mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for k in 0..n {
            let r = self.find(k);
            by_root[r].push(k + 1);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}

/// Whether swapping markings `i` and `j` is admissible: for every set `H` of
/// at least two other markings, `a_i + sum_H <= 1` exactly when
/// `a_j + sum_H <= 1`.
pub fn is_admissible(a: &WeightData, i: usize, j: usize) -> Result<bool> {
    let n = a.len();
    check_index(n, i)?;
    check_index(n, j)?;
    if i == j {
        return Err(Error::RepeatedIndex(i));
    }
    check_enumerable(n)?;
    let others: Vec<usize> = (1..=n).filter(|&k| k != i && k != j).collect();
    let bit_i = indices_to_mask(&[i]);
    let bit_j = indices_to_mask(&[j]);
    for sub in 0u64..1 << others.len() {
        if sub.count_ones() < 2 {
            continue;
        }
        let h = (0..others.len())
            .filter(|b| sub >> b & 1 == 1)
            .fold(0u64, |m, b| m | 1 << (others[b] - 1));
        if a.mask_at_most_one(h | bit_i) != a.mask_at_most_one(h | bit_j) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All admissible transpositions `(i, j)` with `i < j`, in lexicographic order.
pub fn admissible_transpositions(a: &WeightData) -> Result<Vec<(usize, usize)>> {
    let n = a.len();
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if is_admissible(a, i, j)? {
                out.push((i, j));
            }
        }
    }
    Ok(out)
}

/// Connected components of the admissibility graph.
pub fn admissibility_partition(a: &WeightData) -> Result<Vec<Vec<usize>>> {
    Ok(admissible_group(a)?.components)
}

/// The group generated by admissible transpositions.
pub fn admissible_group(a: &WeightData) -> Result<PermGroup> {
    PermGroup::from_transpositions(a.len(), admissible_transpositions(a)?)
}

/// An explicitly listed set of permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGroup {
    pub n: usize,
    pub elements: Vec<Permutation>,
}

impl ExplicitGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, sigma: &Permutation) -> bool {
        self.elements.binary_search(sigma).is_ok()
    }
}

/// Every `σ ∈ S_n` that maps the size-at-least-3 signature onto itself,
/// found by scanning all `n!` permutations.
pub fn signature_preserving_group(a: &WeightData) -> Result<ExplicitGroup> {
    let n = a.len();
    if n > ORACLE_LIMIT {
        return Err(Error::TooManyMarkings { n, limit: ORACLE_LIMIT });
    }
    let signature = a.signature_unchecked(EQUIVALENCE_MIN_SIZE)?;
    let mut elements = Vec::new();
    for images in all_permutations(n) {
        let sigma = Permutation { images };
        if signature
            .subsets
            .iter()
            .all(|s| signature.contains(&sigma.image_of_set(s)))
        {
            elements.push(sigma);
        }
    }
    elements.sort();
    Ok(ExplicitGroup { n, elements })
}

/// All one-line permutations of `{1..n}` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(k) = (0..n.saturating_sub(1)).rev().find(|&k| current[k] < current[k + 1]) else {
            break;
        };
        let l = (k + 1..n).rev().find(|&l| current[k] < current[l]).unwrap();
        current.swap(k, l);
        current[k + 1..].reverse();
    }
    out
}
