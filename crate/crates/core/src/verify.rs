//! Signed basis-bijection search certifying that two directed algebras are
//! isomorphic.
//!
//! Isomorphisms are restricted to monomial maps: per hom-pair, a bijection
//! of basis elements together with a sign for each. This matches how the
//! mirror correspondence assigns algebra basis elements to intersection
//! points, and keeps the search exact over integers. The search is a
//! deterministic backtracking over hom pairs (largest spaces first, so
//! composable triples close early), pruning a branch as soon as some fully
//! assigned triple fails to intertwine the products. Failure is exhaustive
//! and audited: every pruned subtree is accounted against the total leaf
//! count.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{DirectedAlgebra, Label, LinComb};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VerifyError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("no signed equivalence exists; search space exhausted ({searched} leaves)")]
    Exhausted { searched: u128 },
    #[error("node budget {0} exceeded")]
    BudgetExceeded(u64),
}

/// One basis assignment: A-side point index to B-side label with a sign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointAssignment {
    pub point: usize,
    pub label: Label,
    pub sign: i8,
}

/// A per-hom-pair signed bijection witnessing the isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Certificate {
    /// Keyed by the 0-based pair `(i, j)`; entries in A-basis order.
    pub maps: BTreeMap<(usize, usize), Vec<PointAssignment>>,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        let mut maps = serde_json::Map::new();
        for ((i, j), entries) in &self.maps {
            maps.insert(
                format!("{},{}", i + 1, j + 1),
                serde_json::to_value(entries).expect("serializable"),
            );
        }
        serde_json::json!({ "maps": maps })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, VerifyError> {
        let maps_obj = value
            .get("maps")
            .and_then(|m| m.as_object())
            .ok_or_else(|| VerifyError::Shape("certificate has no `maps` object".into()))?;
        let mut maps = BTreeMap::new();
        for (key, entries) in maps_obj {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| VerifyError::Shape(format!("bad pair key `{key}`")))?;
            let entries: Vec<PointAssignment> = serde_json::from_value(entries.clone())
                .map_err(|e| VerifyError::Shape(e.to_string()))?;
            maps.insert((i - 1, j - 1), entries);
        }
        Ok(Certificate { maps })
    }
}

/// Search accounting, reported with both success and exhaustion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    /// Leaves covered by explored or pruned subtrees.
    pub leaves_accounted: u128,
    /// Total leaves of the unpruned search space.
    pub total_leaves: u128,
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    pub node_budget: u64,
    /// Disables triple pruning; the search then visits every leaf. Used by
    /// the exhaustion audit on small instances.
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            node_budget: 10_000_000,
            prune: true,
        }
    }
}

fn check_shapes(a: &DirectedAlgebra, b: &DirectedAlgebra) -> Result<(), VerifyError> {
    if a.objects() != b.objects() {
        return Err(VerifyError::Shape(format!(
            "object counts {} vs {}",
            a.objects(),
            b.objects()
        )));
    }
    for i in 0..a.objects() {
        for j in (i + 1)..a.objects() {
            if a.hom_dim(i, j) != b.hom_dim(i, j) {
                return Err(VerifyError::Shape(format!(
                    "hom({},{}) dimensions {} vs {}",
                    i + 1,
                    j + 1,
                    a.hom_dim(i, j),
                    b.hom_dim(i, j)
                )));
            }
        }
    }
    Ok(())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut perms = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in &perms {
            for v in 0..n {
                if !p.contains(&v) {
                    let mut q = p.clone();
                    q.push(v);
                    next.push(q);
                }
            }
        }
        perms = next;
    }
    perms.sort();
    perms
}

/// One hom-pair's candidate maps in lexicographic order: permutations outer,
/// sign vectors inner with `+1` before `-1`.
#[derive(Debug, Clone)]
struct PairSpace {
    pair: (usize, usize),
    dim: usize,
    perms: Vec<Vec<usize>>,
}

impl PairSpace {
    fn candidates(&self) -> usize {
        self.perms.len() << self.dim
    }

    fn candidate(&self, idx: usize) -> (Vec<usize>, Vec<i8>) {
        let nsigns = 1usize << self.dim;
        let perm = self.perms[idx / nsigns].clone();
        let bits = idx % nsigns;
        let signs = (0..self.dim)
            .map(|k| if bits >> (self.dim - 1 - k) & 1 == 0 { 1 } else { -1 })
            .collect();
        (perm, signs)
    }
}

struct Searcher<'a> {
    a: &'a DirectedAlgebra,
    b: &'a DirectedAlgebra,
    spaces: Vec<PairSpace>,
    /// Triples ready for checking once the pair at each depth is assigned.
    triples_at_depth: Vec<Vec<(usize, usize, usize)>>,
    assigned: BTreeMap<(usize, usize), (Vec<usize>, Vec<i8>)>,
    stats: SearchStats,
    options: SearchOptions,
}

impl<'a> Searcher<'a> {
    fn new(a: &'a DirectedAlgebra, b: &'a DirectedAlgebra, options: SearchOptions) -> Self {
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for i in 0..a.objects() {
            for j in (i + 1)..a.objects() {
                if a.hom_dim(i, j) > 0 {
                    pairs.push((i, j));
                }
            }
        }
        // Large spaces first: their composable triples close early and
        // prune hardest. Ties break lexicographically for determinism.
        pairs.sort_by_key(|&(i, j)| (std::cmp::Reverse(a.hom_dim(i, j)), i, j));
        let spaces: Vec<PairSpace> = pairs
            .iter()
            .map(|&(i, j)| {
                let dim = a.hom_dim(i, j);
                PairSpace {
                    pair: (i, j),
                    dim,
                    perms: permutations(dim),
                }
            })
            .collect();

        let depth_of = |pair: (usize, usize)| pairs.iter().position(|&p| p == pair);
        let mut triples_at_depth = vec![Vec::new(); spaces.len()];
        for (i, j, k) in a.composable_triples() {
            if a.hom_dim(i, k) == 0 {
                // Products land in the zero space; composability still
                // constrains the two factors (their product must vanish),
                // checked once both factor pairs are set.
                if let (Some(d1), Some(d2)) = (depth_of((i, j)), depth_of((j, k))) {
                    triples_at_depth[d1.max(d2)].push((i, j, k));
                }
                continue;
            }
            let depths = [depth_of((i, j)), depth_of((j, k)), depth_of((i, k))];
            if let [Some(d1), Some(d2), Some(d3)] = depths {
                triples_at_depth[d1.max(d2).max(d3)].push((i, j, k));
            }
        }

        let total_leaves = spaces
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.candidates() as u128));
        Searcher {
            a,
            b,
            spaces,
            triples_at_depth,
            assigned: BTreeMap::new(),
            stats: SearchStats {
                nodes_expanded: 0,
                leaves_accounted: 0,
                total_leaves,
            },
            options,
        }
    }

    fn subtree_leaves(&self, depth: usize) -> u128 {
        self.spaces[depth + 1..]
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.candidates() as u128))
    }

    /// Applies the signed bijection of pair `(i, j)` to a combination over
    /// A's `hom(i, j)` basis, producing a combination over B's basis.
    fn map_comb(&self, i: usize, j: usize, comb: &LinComb) -> Option<LinComb> {
        let (perm, signs) = self.assigned.get(&(i, j))?;
        let mut out = LinComb::zero();
        for (c, label) in &comb.0 {
            let idx = self.a.label_index(i, j, label).ok()?;
            out.add_term(
                c * signs[idx] as i64,
                self.b.hom_basis(i, j)[perm[idx]].clone(),
            );
        }
        Some(out)
    }

    /// True when the triple's diagram commutes under the current partial
    /// assignment.
    fn triple_ok(&self, (i, j, k): (usize, usize, usize)) -> bool {
        let (perm_ij, signs_ij) = &self.assigned[&(i, j)];
        let (perm_jk, signs_jk) = &self.assigned[&(j, k)];
        for a_idx in 0..self.a.hom_dim(i, j) {
            for b_idx in 0..self.a.hom_dim(j, k) {
                let product_a = self.a.compose_basis(i, j, k, a_idx, b_idx);
                let lhs = if self.a.hom_dim(i, k) == 0 {
                    if product_a.is_zero() {
                        LinComb::zero()
                    } else {
                        return false;
                    }
                } else {
                    match self.map_comb(i, k, &product_a) {
                        Some(l) => l,
                        None => return false,
                    }
                };
                let mut rhs = self.b.compose_basis(i, j, k, perm_ij[a_idx], perm_jk[b_idx]);
                let scale = (signs_ij[a_idx] * signs_jk[b_idx]) as i64;
                if scale == -1 {
                    for term in &mut rhs.0 {
                        term.0 = -term.0;
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> Result<Option<()>, VerifyError> {
        if depth == self.spaces.len() {
            self.stats.leaves_accounted += 1;
            return Ok(Some(()));
        }
        let space = self.spaces[depth].clone();
        for cand in 0..space.candidates() {
            self.stats.nodes_expanded += 1;
            if self.stats.nodes_expanded > self.options.node_budget {
                return Err(VerifyError::BudgetExceeded(self.options.node_budget));
            }
            let (perm, signs) = space.candidate(cand);
            self.assigned.insert(space.pair, (perm, signs));
            let ok = if self.options.prune {
                self.triples_at_depth[depth]
                    .clone()
                    .iter()
                    .all(|&t| self.triple_ok(t))
            } else {
                // Unpruned: only full assignments are judged.
                true
            };
            if ok {
                if self.options.prune || depth + 1 < self.spaces.len() {
                    if let Some(found) = self.dfs(depth + 1)? {
                        return Ok(Some(found));
                    }
                } else {
                    // Unpruned leaf: check every triple at once.
                    self.stats.leaves_accounted += 1;
                    let all_ok = (0..self.spaces.len())
                        .flat_map(|d| self.triples_at_depth[d].clone())
                        .all(|t| self.triple_ok(t));
                    if all_ok {
                        return Ok(Some(()));
                    }
                }
            } else {
                self.stats.leaves_accounted += self.subtree_leaves(depth);
            }
            self.assigned.remove(&space.pair);
        }
        Ok(None)
    }
}

/// Outcome of a successful search: the certificate plus accounting.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub certificate: Certificate,
    pub stats: SearchStats,
}

/// Searches for a signed bijection intertwining all compositions, in a
/// deterministic order; the first certificate found is the lexicographically
/// first in the (largest-space-first) pair order.
pub fn find_signed_equivalence(
    a: &DirectedAlgebra,
    b: &DirectedAlgebra,
) -> Result<Equivalence, VerifyError> {
    find_signed_equivalence_with(a, b, SearchOptions::default())
}

pub fn find_signed_equivalence_with(
    a: &DirectedAlgebra,
    b: &DirectedAlgebra,
    options: SearchOptions,
) -> Result<Equivalence, VerifyError> {
    check_shapes(a, b)?;
    let mut searcher = Searcher::new(a, b, options);
    match searcher.dfs(0)? {
        Some(()) => {
            let mut maps = BTreeMap::new();
            for (&(i, j), (perm, signs)) in &searcher.assigned {
                let entries = (0..perm.len())
                    .map(|idx| PointAssignment {
                        point: idx,
                        label: b.hom_basis(i, j)[perm[idx]].clone(),
                        sign: signs[idx],
                    })
                    .collect();
                maps.insert((i, j), entries);
            }
            Ok(Equivalence {
                certificate: Certificate { maps },
                stats: searcher.stats,
            })
        }
        None => {
            debug_assert_eq!(searcher.stats.leaves_accounted, searcher.stats.total_leaves);
            Err(VerifyError::Exhausted {
                searched: searcher.stats.leaves_accounted,
            })
        }
    }
}

/// Exhaustion accounting for the audit test: runs the search expecting
/// failure and returns the stats.
pub fn exhaustion_stats(
    a: &DirectedAlgebra,
    b: &DirectedAlgebra,
    options: SearchOptions,
) -> Result<SearchStats, VerifyError> {
    check_shapes(a, b)?;
    let mut searcher = Searcher::new(a, b, options);
    match searcher.dfs(0)? {
        Some(()) => Err(VerifyError::Shape("unexpected equivalence found".into())),
        None => Ok(searcher.stats),
    }
}

/// Result of checking a certificate against every composable triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationResult {
    pub pass: bool,
    /// First failing `(triple, left label, right label)` when not passing.
    pub first_failure: Option<((usize, usize, usize), Label, Label)>,
}

/// Checks `phi_ik(a . b) = phi_ij(a) . phi_jk(b)` for every basis pair of
/// every composable triple.
pub fn verify_certificate(
    a: &DirectedAlgebra,
    b: &DirectedAlgebra,
    cert: &Certificate,
) -> Result<VerificationResult, VerifyError> {
    check_shapes(a, b)?;
    // Certificate shape: a full signed bijection per nonzero pair.
    let mut perms: BTreeMap<(usize, usize), (Vec<usize>, Vec<i8>)> = BTreeMap::new();
    for i in 0..a.objects() {
        for j in (i + 1)..a.objects() {
            let dim = a.hom_dim(i, j);
            if dim == 0 {
                continue;
            }
            let entries = cert.maps.get(&(i, j)).ok_or_else(|| {
                VerifyError::Shape(format!("certificate is missing pair ({},{})", i + 1, j + 1))
            })?;
            if entries.len() != dim {
                return Err(VerifyError::Shape(format!(
                    "certificate pair ({},{}) has {} entries, expected {dim}",
                    i + 1,
                    j + 1,
                    entries.len()
                )));
            }
            let mut perm = vec![usize::MAX; dim];
            let mut signs = vec![0i8; dim];
            for e in entries {
                if e.point >= dim || (e.sign != 1 && e.sign != -1) {
                    return Err(VerifyError::Shape(format!(
                        "bad assignment in pair ({},{})",
                        i + 1,
                        j + 1
                    )));
                }
                let target = b
                    .hom_basis(i, j)
                    .iter()
                    .position(|l| *l == e.label)
                    .ok_or_else(|| {
                        VerifyError::Shape(format!(
                            "label `{}` not in target hom({},{})",
                            e.label,
                            i + 1,
                            j + 1
                        ))
                    })?;
                perm[e.point] = target;
                signs[e.point] = e.sign;
            }
            let mut seen = vec![false; dim];
            for &p in &perm {
                if p == usize::MAX || seen[p] {
                    return Err(VerifyError::Shape(format!(
                        "pair ({},{}) is not a bijection",
                        i + 1,
                        j + 1
                    )));
                }
                seen[p] = true;
            }
            perms.insert((i, j), (perm, signs));
        }
    }

    let map_comb = |i: usize, j: usize, comb: &LinComb| -> Option<LinComb> {
        let mut out = LinComb::zero();
        if comb.is_zero() {
            return Some(out);
        }
        let (perm, signs) = perms.get(&(i, j))?;
        for (c, label) in &comb.0 {
            let idx = a.label_index(i, j, label).ok()?;
            out.add_term(c * signs[idx] as i64, b.hom_basis(i, j)[perm[idx]].clone());
        }
        Some(out)
    };

    for (i, j, k) in a.composable_triples() {
        for a_idx in 0..a.hom_dim(i, j) {
            for b_idx in 0..a.hom_dim(j, k) {
                let product_a = a.compose_basis(i, j, k, a_idx, b_idx);
                let lhs = match map_comb(i, k, &product_a) {
                    Some(l) => l,
                    None => {
                        return Ok(VerificationResult {
                            pass: false,
                            first_failure: Some((
                                (i + 1, j + 1, k + 1),
                                a.hom_basis(i, j)[a_idx].clone(),
                                a.hom_basis(j, k)[b_idx].clone(),
                            )),
                        })
                    }
                };
                let (perm_ij, signs_ij) = &perms[&(i, j)];
                let (perm_jk, signs_jk) = &perms[&(j, k)];
                let mut rhs = b.compose_basis(i, j, k, perm_ij[a_idx], perm_jk[b_idx]);
                if signs_ij[a_idx] * signs_jk[b_idx] == -1 {
                    for term in &mut rhs.0 {
                        term.0 = -term.0;
                    }
                }
                if lhs != rhs {
                    return Ok(VerificationResult {
                        pass: false,
                        first_failure: Some((
                            (i + 1, j + 1, k + 1),
                            a.hom_basis(i, j)[a_idx].clone(),
                            a.hom_basis(j, k)[b_idx].clone(),
                        )),
                    });
                }
            }
        }
    }
    Ok(VerificationResult {
        pass: true,
        first_failure: None,
    })
}
