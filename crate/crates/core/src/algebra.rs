//! Directed algebras over an ordered set of objects: based hom spaces with
//! integer structure constants.
//!
//! Both sides of the mirror correspondence reduce to this structure — the
//! exceptional-collection algebra with its symbolic basis, and the Fukaya
//! presentation with intersection points as basis. Hom spaces exist only
//! forward (`i < j`), the diagonal is spanned by a formal identity, and every
//! composition of basis elements is an integer combination of basis elements.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("object counts differ: {0} vs {1}")]
    ObjectCountMismatch(usize, usize),
    #[error("hom({i},{j}) dimensions differ: {a} vs {b}")]
    DimensionMismatch { i: usize, j: usize, a: usize, b: usize },
    #[error("hom({i},{j}) bases carry different labels")]
    LabelMismatch { i: usize, j: usize },
    #[error("label `{0}` is not a basis element of hom({1},{2})")]
    UnknownLabel(Label, usize, usize),
    #[error("malformed algebra: {0}")]
    Malformed(String),
}

/// A symbolic basis token.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Label(pub String);

impl Label {
    pub fn new(s: impl Into<String>) -> Self {
        Label(s.into())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// An integer combination of basis labels, sorted by label, no zero terms.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinComb(pub Vec<(i64, Label)>);

impl LinComb {
    pub fn zero() -> Self {
        LinComb(Vec::new())
    }

    pub fn single(coeff: i64, label: Label) -> Self {
        if coeff == 0 {
            LinComb::zero()
        } else {
            LinComb(vec![(coeff, label)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, coeff: i64, label: Label) {
        if coeff == 0 {
            return;
        }
        match self.0.binary_search_by(|(_, l)| l.cmp(&label)) {
            Ok(pos) => {
                self.0[pos].0 += coeff;
                if self.0[pos].0 == 0 {
                    self.0.remove(pos);
                }
            }
            Err(pos) => self.0.insert(pos, (coeff, label)),
        }
    }

    pub fn add_scaled(&mut self, scale: i64, other: &LinComb) {
        for (c, l) in &other.0 {
            self.add_term(scale * c, l.clone());
        }
    }
}

impl fmt::Display for LinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (n, (c, l)) in self.0.iter().enumerate() {
            let sign = if *c < 0 {
                "-"
            } else if n > 0 {
                "+"
            } else {
                ""
            };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{l}")?;
            } else {
                write!(f, "{sign}{mag}{l}")?;
            }
        }
        Ok(())
    }
}

/// Ordered objects, based hom spaces and integer structure constants.
///
/// `hom` holds the strictly forward spaces; `hom(i, i)` is the formal
/// identity `id{i+1}` and `hom(i, j)` for `i > j` is zero, neither stored.
/// `mult` is indexed by basis positions within a composable triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedAlgebra {
    objects: usize,
    hom: BTreeMap<(usize, usize), Vec<Label>>,
    mult: BTreeMap<(usize, usize, usize), Vec<Vec<LinComb>>>,
    degrees: BTreeMap<(usize, usize), Vec<i32>>,
}

impl DirectedAlgebra {
    /// Objects are indexed `0..objects`; the public JSON form is 1-based.
    pub fn new(objects: usize) -> Self {
        DirectedAlgebra {
            objects,
            hom: BTreeMap::new(),
            mult: BTreeMap::new(),
            degrees: BTreeMap::new(),
        }
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn identity_label(&self, i: usize) -> Label {
        Label::new(format!("id{}", i + 1))
    }

    pub fn set_hom(&mut self, i: usize, j: usize, basis: Vec<Label>) {
        assert!(i < j && j < self.objects, "hom spaces are strictly forward");
        let n = basis.len();
        if n == 0 {
            self.hom.remove(&(i, j));
            self.degrees.remove(&(i, j));
        } else {
            self.hom.insert((i, j), basis);
            self.degrees.insert((i, j), vec![0; n]);
        }
    }

    pub fn hom_basis(&self, i: usize, j: usize) -> &[Label] {
        self.hom.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn hom_dim(&self, i: usize, j: usize) -> usize {
        if i == j {
            1
        } else if i > j {
            0
        } else {
            self.hom_basis(i, j).len()
        }
    }

    /// 6x6 (in general `objects` x `objects`) hom-dimension matrix, diagonal 1.
    pub fn hom_dimensions(&self) -> Vec<Vec<usize>> {
        (0..self.objects)
            .map(|i| (0..self.objects).map(|j| self.hom_dim(i, j)).collect())
            .collect()
    }

    pub fn generator_degree(&self, i: usize, j: usize, idx: usize) -> i32 {
        self.degrees.get(&(i, j)).map(|v| v[idx]).unwrap_or(0)
    }

    pub fn total_dimension(&self) -> usize {
        let forward: usize = self.hom.values().map(Vec::len).sum();
        forward + self.objects
    }

    pub fn label_index(&self, i: usize, j: usize, label: &Label) -> Result<usize, AlgebraError> {
        self.hom_basis(i, j)
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.clone(), i + 1, j + 1))
    }

    /// Sets the product of the `a`-th basis element of `hom(i, j)` with the
    /// `b`-th basis element of `hom(j, k)`.
    pub fn set_product(&mut self, i: usize, j: usize, k: usize, a: usize, b: usize, out: LinComb) {
        assert!(i < j && j < k);
        let rows = self.hom_dim(i, j);
        let cols = self.hom_dim(j, k);
        let table = self
            .mult
            .entry((i, j, k))
            .or_insert_with(|| vec![vec![LinComb::zero(); cols]; rows]);
        table[a][b] = out;
    }

    /// Product of basis elements; zero when no table entry exists.
    pub fn compose_basis(&self, i: usize, j: usize, k: usize, a: usize, b: usize) -> LinComb {
        self.mult
            .get(&(i, j, k))
            .map(|t| t[a][b].clone())
            .unwrap_or_else(LinComb::zero)
    }

    /// Bilinear extension of `compose_basis` to combinations. Labels in `u`
    /// must belong to `hom(i, j)`, labels in `v` to `hom(j, k)`.
    pub fn compose(
        &self,
        i: usize,
        j: usize,
        k: usize,
        u: &LinComb,
        v: &LinComb,
    ) -> Result<LinComb, AlgebraError> {
        let mut acc = LinComb::zero();
        for (cu, lu) in &u.0 {
            let a = self.label_index(i, j, lu)?;
            for (cv, lv) in &v.0 {
                let b = self.label_index(j, k, lv)?;
                acc.add_scaled(cu * cv, &self.compose_basis(i, j, k, a, b));
            }
        }
        Ok(acc)
    }

    /// All triples `(i, j, k)` with `i < j < k` and both hom spaces nonzero.
    pub fn composable_triples(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.objects {
            for j in (i + 1)..self.objects {
                if self.hom_dim(i, j) == 0 {
                    continue;
                }
                for k in (j + 1)..self.objects {
                    if self.hom_dim(j, k) > 0 {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

/// One failed comparison between two algebras' structure constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffEntry {
    /// Composable triple, 1-based.
    pub triple: (usize, usize, usize),
    pub left: Label,
    pub right: Label,
    pub expected: LinComb,
    pub actual: LinComb,
}

/// Entry-wise comparison report; empty iff the algebras agree on the shared
/// labeled bases.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiffReport {
    pub mismatches: Vec<DiffEntry>,
}

impl DiffReport {
    pub fn is_empty(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares structure constants of `a` (expected) and `b` (actual) over the
/// shared labeled bases.
pub fn diff_algebras(a: &DirectedAlgebra, b: &DirectedAlgebra) -> Result<DiffReport, AlgebraError> {
    if a.objects != b.objects {
        return Err(AlgebraError::ObjectCountMismatch(a.objects, b.objects));
    }
    for i in 0..a.objects {
        for j in (i + 1)..a.objects {
            let (da, db) = (a.hom_dim(i, j), b.hom_dim(i, j));
            if da != db {
                return Err(AlgebraError::DimensionMismatch {
                    i: i + 1,
                    j: j + 1,
                    a: da,
                    b: db,
                });
            }
            if a.hom_basis(i, j) != b.hom_basis(i, j) {
                return Err(AlgebraError::LabelMismatch { i: i + 1, j: j + 1 });
            }
        }
    }
    let mut mismatches = Vec::new();
    for (i, j, k) in a.composable_triples() {
        for ai in 0..a.hom_dim(i, j) {
            for bi in 0..a.hom_dim(j, k) {
                let expected = a.compose_basis(i, j, k, ai, bi);
                let actual = b.compose_basis(i, j, k, ai, bi);
                if expected != actual {
                    mismatches.push(DiffEntry {
                        triple: (i + 1, j + 1, k + 1),
                        left: a.hom_basis(i, j)[ai].clone(),
                        right: a.hom_basis(j, k)[bi].clone(),
                        expected,
                        actual,
                    });
                }
            }
        }
    }
    Ok(DiffReport { mismatches })
}

/// One failed associativity instance `(ab)c != a(bc)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AssociativityViolation {
    /// Chain `i < j < k < l`, 1-based.
    pub chain: (usize, usize, usize, usize),
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub left: LinComb,
    pub right: LinComb,
}

/// Exhaustively checks `(ab)c = a(bc)` over every composable basis chain
/// `i < j < k < l`. Formal combinations are compared term-wise, so an
/// out-of-basis label in a stored product shows up as a violation rather
/// than a lookup failure.
pub fn check_directed_associativity(alg: &DirectedAlgebra) -> Vec<AssociativityViolation> {
    let mut violations = Vec::new();
    for i in 0..alg.objects {
        for j in (i + 1)..alg.objects {
            if alg.hom_dim(i, j) == 0 {
                continue;
            }
            for k in (j + 1)..alg.objects {
                if alg.hom_dim(j, k) == 0 {
                    continue;
                }
                for l in (k + 1)..alg.objects {
                    if alg.hom_dim(k, l) == 0 {
                        continue;
                    }
                    for ai in 0..alg.hom_dim(i, j) {
                        for bi in 0..alg.hom_dim(j, k) {
                            for ci in 0..alg.hom_dim(k, l) {
                                let ab = alg.compose_basis(i, j, k, ai, bi);
                                let bc = alg.compose_basis(j, k, l, bi, ci);
                                let c_single =
                                    LinComb::single(1, alg.hom_basis(k, l)[ci].clone());
                                let a_single =
                                    LinComb::single(1, alg.hom_basis(i, j)[ai].clone());
                                let left = alg.compose(i, k, l, &ab, &c_single);
                                let right = alg.compose(i, j, l, &a_single, &bc);
                                let (left, right) = match (left, right) {
                                    (Ok(x), Ok(y)) => (x, y),
                                    // A foreign label cannot be composed
                                    // further; treat as a violation carrier.
                                    _ => (ab.clone(), bc.clone()),
                                };
                                if left != right {
                                    violations.push(AssociativityViolation {
                                        chain: (i + 1, j + 1, k + 1, l + 1),
                                        a: alg.hom_basis(i, j)[ai].clone(),
                                        b: alg.hom_basis(j, k)[bi].clone(),
                                        c: alg.hom_basis(k, l)[ci].clone(),
                                        left,
                                        right,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    violations
}

/// Serialized form: `{"objects": n, "hom": {"i,j": [labels]}, "mult": [...]}`
/// with 1-based object indices. Identity spaces and identity compositions
/// are implicit.
#[derive(Debug, Serialize, Deserialize)]
struct AlgebraJson {
    objects: usize,
    hom: BTreeMap<String, Vec<Label>>,
    mult: Vec<MultJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MultJson {
    i: usize,
    j: usize,
    k: usize,
    a: Label,
    b: Label,
    out: Vec<(i64, Label)>,
}

impl DirectedAlgebra {
    pub fn to_json(&self) -> serde_json::Value {
        let mut hom = BTreeMap::new();
        for (&(i, j), basis) in &self.hom {
            hom.insert(format!("{},{}", i + 1, j + 1), basis.clone());
        }
        let mut mult = Vec::new();
        for (&(i, j, k), table) in &self.mult {
            for (a, row) in table.iter().enumerate() {
                for (b, out) in row.iter().enumerate() {
                    if !out.is_zero() {
                        mult.push(MultJson {
                            i: i + 1,
                            j: j + 1,
                            k: k + 1,
                            a: self.hom_basis(i, j)[a].clone(),
                            b: self.hom_basis(j, k)[b].clone(),
                            out: out.0.clone(),
                        });
                    }
                }
            }
        }
        serde_json::to_value(AlgebraJson {
            objects: self.objects,
            hom,
            mult,
        })
        .expect("algebra serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, AlgebraError> {
        let parsed: AlgebraJson = serde_json::from_value(value.clone())
            .map_err(|e| AlgebraError::Malformed(e.to_string()))?;
        let mut alg = DirectedAlgebra::new(parsed.objects);
        for (key, basis) in parsed.hom {
            let (i, j) = key
                .split_once(',')
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| AlgebraError::Malformed(format!("bad hom key `{key}`")))?;
            if i == 0 || j == 0 || i > parsed.objects || j > parsed.objects || i >= j {
                return Err(AlgebraError::Malformed(format!("bad hom key `{key}`")));
            }
            alg.set_hom(i - 1, j - 1, basis);
        }
        for m in parsed.mult {
            let (i, j, k) = (m.i - 1, m.j - 1, m.k - 1);
            let a = alg.label_index(i, j, &m.a)?;
            let b = alg.label_index(j, k, &m.b)?;
            alg.set_product(i, j, k, a, b, LinComb(m.out));
        }
        Ok(alg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: &str) -> Label {
        Label::new(s)
    }

    fn toy() -> DirectedAlgebra {
        // 0 -> 1 -> 2 with one generator each and f.g = h.
        let mut alg = DirectedAlgebra::new(3);
        alg.set_hom(0, 1, vec![l("f")]);
        alg.set_hom(1, 2, vec![l("g")]);
        alg.set_hom(0, 2, vec![l("h")]);
        alg.set_product(0, 1, 2, 0, 0, LinComb::single(1, l("h")));
        alg
    }

    #[test]
    fn lincomb_arithmetic_cancels() {
        let mut c = LinComb::zero();
        c.add_term(1, l("a"));
        c.add_term(2, l("b"));
        c.add_term(-1, l("a"));
        assert_eq!(c, LinComb::single(2, l("b")));
        assert_eq!(format!("{c}"), "2b");
    }

    #[test]
    fn single_object_identity_only_has_no_violations() {
        let alg = DirectedAlgebra::new(1);
        assert!(check_directed_associativity(&alg).is_empty());
        assert_eq!(alg.total_dimension(), 1);
    }

    #[test]
    fn diff_of_algebra_with_itself_is_empty() {
        let alg = toy();
        assert!(diff_algebras(&alg, &alg).unwrap().is_empty());
    }

    #[test]
    fn diff_detects_single_sign_flip() {
        let a = toy();
        let mut b = toy();
        b.set_product(0, 1, 2, 0, 0, LinComb::single(-1, l("h")));
        let report = diff_algebras(&a, &b).unwrap();
        assert_eq!(report.mismatches.len(), 1);
        assert_eq!(report.mismatches[0].triple, (1, 2, 3));
    }

    #[test]
    fn dimension_mismatch_is_a_shape_error() {
        let a = toy();
        let mut b = toy();
        b.set_hom(0, 1, vec![l("f"), l("f2")]);
        assert!(matches!(
            diff_algebras(&a, &b),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn json_round_trip() {
        let alg = toy();
        let v = alg.to_json();
        let back = DirectedAlgebra::from_json(&v).unwrap();
        assert_eq!(alg, back);
        assert_eq!(v["objects"], 3);
        assert_eq!(v["hom"]["1,2"][0], "f");
    }

    #[test]
    fn degrees_are_zero() {
        let alg = toy();
        assert_eq!(alg.generator_degree(0, 1, 0), 0);
    }
}
