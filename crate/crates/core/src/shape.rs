//! Partitions, skew shapes, index selections and the parallelogram hypothesis.
//!
//! Parts are 1-indexed in this API: `alpha(1)` is the first (largest) part.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ShapeError {
    #[error("{0} not weakly decreasing")]
    NotWeaklyDecreasing(&'static str),
    #[error("alpha and beta have different lengths ({alpha} vs {beta})")]
    LengthMismatch { alpha: usize, beta: usize },
    #[error("shape needs at least one part")]
    Empty,
    #[error("alpha_{index} = {alpha} exceeds beta_{index} = {beta}")]
    Containment { index: usize, alpha: u32, beta: u32 },
    #[error("selection is invalid: {0}")]
    Selection(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, ShapeError> {
        Self::named(parts, "partition")
    }

    fn named(parts: Vec<u32>, name: &'static str) -> Result<Self, ShapeError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(ShapeError::NotWeaklyDecreasing(name));
        }
        Ok(Self { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

/// True iff every part is at most one less than the part before it.
pub fn near_staircase_check(p: &Partition) -> bool {
    p.parts.windows(2).all(|w| w[0] - w[1] <= 1)
}

/// The skew diagram `Y(beta/alpha)`: boxes `[i, j]` with `alpha_i < j <= beta_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SkewShape {
    alpha: Vec<u32>,
    beta: Vec<u32>,
    compositions: bool,
}

/// Validates `alpha` and `beta` as partitions of equal length with `alpha <= beta`.
pub fn make_skew(alpha: &[u32], beta: &[u32]) -> Result<SkewShape, ShapeError> {
    let a = Partition::named(alpha.to_vec(), "alpha")?;
    let b = Partition::named(beta.to_vec(), "beta")?;
    SkewShape::new(a, b)
}

impl SkewShape {
    pub fn new(alpha: Partition, beta: Partition) -> Result<Self, ShapeError> {
        let mut s = Self::from_compositions(alpha.parts, beta.parts)?;
        s.compositions = false;
        Ok(s)
    }

    /// Accepts arbitrary compositions with `alpha <= beta` pointwise. Only the
    /// connector bijection is meaningful on such shapes.
    pub fn from_compositions(alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self, ShapeError> {
        if alpha.len() != beta.len() {
            return Err(ShapeError::LengthMismatch {
                alpha: alpha.len(),
                beta: beta.len(),
            });
        }
        if alpha.is_empty() {
            return Err(ShapeError::Empty);
        }
        if let Some(i) = (0..alpha.len()).find(|&i| alpha[i] > beta[i]) {
            return Err(ShapeError::Containment {
                index: i + 1,
                alpha: alpha[i],
                beta: beta[i],
            });
        }
        let compositions =
            alpha.windows(2).any(|w| w[0] < w[1]) || beta.windows(2).any(|w| w[0] < w[1]);
        Ok(Self {
            alpha,
            beta,
            compositions,
        })
    }

    pub fn n(&self) -> usize {
        self.alpha.len()
    }

    /// True when both sides are partitions (not merely compositions).
    pub fn is_partition_pair(&self) -> bool {
        !self.compositions
    }

    pub fn alpha_parts(&self) -> &[u32] {
        &self.alpha
    }

    pub fn beta_parts(&self) -> &[u32] {
        &self.beta
    }

    /// `alpha_i` for `1 <= i <= n`.
    pub fn alpha(&self, i: usize) -> u32 {
        self.alpha[i - 1]
    }

    /// `beta_i` for `1 <= i <= n`.
    pub fn beta(&self, i: usize) -> u32 {
        self.beta[i - 1]
    }

    /// `alpha_{a+1}` for `0 <= a <= n`, reading `alpha_{n+1}` as `alpha_n`.
    pub fn alpha_next(&self, a: usize) -> u32 {
        self.alpha(a.min(self.n() - 1) + 1)
    }

    /// `beta_b` for `0 <= b <= n`, reading `beta_0` as `beta_1`.
    pub fn beta_at(&self, b: usize) -> u32 {
        self.beta(b.max(1))
    }

    /// Row `i` has at least one box.
    pub fn row_nonempty(&self, i: usize) -> bool {
        (1..=self.n()).contains(&i) && self.alpha(i) < self.beta(i)
    }

    /// Boxes `(i, j)` identified by their bottom-right corner, row by row.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n())
            .flat_map(move |i| (self.alpha(i) + 1..=self.beta(i)).map(move |j| (i, j as usize)))
    }

    pub fn box_count(&self) -> usize {
        (1..=self.n())
            .map(|i| (self.beta(i) - self.alpha(i)) as usize)
            .sum()
    }

    pub fn max_column(&self) -> u32 {
        self.beta.iter().copied().max().unwrap_or(0)
    }
}

/// Equal-size subsets `A`, `B` of `{0, ..., n}` together with their complements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexSelection {
    n: usize,
    a_set: Vec<usize>,
    b_set: Vec<usize>,
    a_comp: Vec<usize>,
    b_comp: Vec<usize>,
}

fn normalize_set(set: &[usize], n: usize, name: &str) -> Result<Vec<usize>, ShapeError> {
    let sorted: Vec<usize> = set.iter().copied().sorted().collect();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(ShapeError::Selection(format!(
            "{name} has repeated elements"
        )));
    }
    if let Some(bad) = sorted.iter().find(|&&x| x > n) {
        return Err(ShapeError::Selection(format!(
            "{name} contains {bad}, outside 0..={n}"
        )));
    }
    Ok(sorted)
}

impl IndexSelection {
    pub fn new(n: usize, a_set: &[usize], b_set: &[usize]) -> Result<Self, ShapeError> {
        let a_set = normalize_set(a_set, n, "A")?;
        let b_set = normalize_set(b_set, n, "B")?;
        if a_set.len() != b_set.len() {
            return Err(ShapeError::Selection(format!(
                "|A| = {} but |B| = {}",
                a_set.len(),
                b_set.len()
            )));
        }
        let a_comp = (0..=n).filter(|x| !a_set.contains(x)).collect();
        let b_comp = (0..=n).filter(|x| !b_set.contains(x)).collect();
        Ok(Self {
            n,
            a_set,
            b_set,
            a_comp,
            b_comp,
        })
    }

    /// `A = B = {0, ..., n}`.
    pub fn full(n: usize) -> Self {
        let all: Vec<usize> = (0..=n).collect();
        Self::new(n, &all, &all).expect("full selection is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a_set(&self) -> &[usize] {
        &self.a_set
    }

    pub fn b_set(&self) -> &[usize] {
        &self.b_set
    }

    pub fn a_comp(&self) -> &[usize] {
        &self.a_comp
    }

    pub fn b_comp(&self) -> &[usize] {
        &self.b_comp
    }

    /// `l = |A| = |B|`.
    pub fn l(&self) -> usize {
        self.a_set.len()
    }

    /// `r = |A^c| = |B^c| = n + 1 - l`.
    pub fn r(&self) -> usize {
        self.a_comp.len()
    }

    /// `ΣB - ΣA`; the number of vertical steps in any blue connector.
    pub fn vertical_step_count(&self) -> i64 {
        self.b_set.iter().sum::<usize>() as i64 - self.a_set.iter().sum::<usize>() as i64
    }
}

/// A pair `(a', b')` from `A^c x B^c` for which no clause of the
/// hypothesis holds; `row` is the first `i` with `b'+1 <= i <= a'` where the
/// third clause fails.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Violation {
    pub a_prime: usize,
    pub b_prime: usize,
    pub row: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub holds: bool,
    pub violations: Vec<Violation>,
}

/// Evaluates the per-pair clause for `(a', b')`. Returns the failing row when
/// none of the three alternatives holds.
pub fn pair_violation(shape: &SkewShape, a_prime: usize, b_prime: usize) -> Option<usize> {
    let diff = a_prime as i64 - b_prime as i64;
    if diff <= 0 {
        return None;
    }
    let al = |i: usize| shape.alpha(i) as i64;
    let be = |i: usize| shape.beta(i) as i64;
    if diff > be(b_prime + 1) - al(a_prime) {
        return None;
    }
    (b_prime + 1..=a_prime).find(|&i| {
        al(i) - al(a_prime) > (a_prime - i) as i64
            || be(b_prime + 1) - be(i) > (i - b_prime - 1) as i64
    })
}

pub fn parallelogram_hypothesis(shape: &SkewShape, sel: &IndexSelection) -> HypothesisReport {
    let violations: Vec<Violation> = sel
        .a_comp()
        .iter()
        .cartesian_product(sel.b_comp())
        .filter_map(|(&a_prime, &b_prime)| {
            pair_violation(shape, a_prime, b_prime).map(|row| Violation {
                a_prime,
                b_prime,
                row,
            })
        })
        .collect();
    HypothesisReport {
        holds: violations.is_empty(),
        violations,
    }
}

/// `alpha_i = n - i`, `beta = (n^n)`.
pub fn staircase(n: usize) -> SkewShape {
    assert!(n >= 1, "staircase needs n >= 1");
    let alpha = (1..=n).map(|i| (n - i) as u32).collect();
    let beta = vec![n as u32; n];
    SkewShape::from_compositions(alpha, beta).expect("staircase is a valid skew shape")
}

/// `alpha = 0`, `beta = (m^n)`.
pub fn rectangle(m: u32, n: usize) -> SkewShape {
    assert!(m >= 1 && n >= 1, "rectangle needs m, n >= 1");
    SkewShape::from_compositions(vec![0; n], vec![m; n]).expect("rectangle is a valid skew shape")
}

/// All weakly decreasing `n`-tuples with parts in `0..=max_part`, lexicographic.
pub fn partitions(n: usize, max_part: u32) -> Vec<Partition> {
    (0..n)
        .map(|_| 0..=max_part)
        .multi_cartesian_product()
        .filter(|p| p.windows(2).all(|w| w[0] >= w[1]))
        .map(|parts| Partition { parts })
        .collect()
}

/// All skew shapes `beta/alpha` with `n` parts, each at most `max_part`.
pub fn skew_shapes(n: usize, max_part: u32) -> Vec<SkewShape> {
    let ps = partitions(n, max_part);
    ps.iter()
        .cartesian_product(ps.iter())
        .filter_map(|(a, b)| SkewShape::new(a.clone(), b.clone()).ok())
        .collect()
}

/// All pointwise-dominated composition pairs that are not both partitions.
pub fn composition_shapes(n: usize, max_part: u32) -> Vec<SkewShape> {
    let all: Vec<Vec<u32>> = (0..n)
        .map(|_| 0..=max_part)
        .multi_cartesian_product()
        .collect();
    all.iter()
        .cartesian_product(all.iter())
        .filter_map(|(a, b)| SkewShape::from_compositions(a.clone(), b.clone()).ok())
        .filter(|s| !s.is_partition_pair())
        .collect()
}

/// Every equal-size pair of subsets of `{0, ..., n}`.
pub fn selections(n: usize) -> Vec<IndexSelection> {
    let mut out = Vec::new();
    for l in 0..=n + 1 {
        let subsets: Vec<Vec<usize>> = (0..=n).combinations(l).collect();
        for a in &subsets {
            for b in &subsets {
                out.push(IndexSelection::new(n, a, b).expect("generated subsets are valid"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_skew_examples() {
        assert_eq!(make_skew(&[1, 1, 0, 0], &[4, 3, 3, 2]).unwrap().n(), 4);
        let six = make_skew(&[2, 1, 1, 0, 0, 0], &[6, 6, 5, 4, 4, 3]).unwrap();
        assert_eq!(six.n(), 6);
        assert_eq!(six.box_count(), 24);
        assert_eq!(
            make_skew(&[0, 1], &[2, 2]),
            Err(ShapeError::NotWeaklyDecreasing("alpha"))
        );
        assert_eq!(
            make_skew(&[0, 0], &[1, 2]),
            Err(ShapeError::NotWeaklyDecreasing("beta"))
        );
        assert!(matches!(
            make_skew(&[3, 0], &[2, 2]),
            Err(ShapeError::Containment { index: 1, .. })
        ));
        assert!(matches!(
            make_skew(&[0], &[2, 2]),
            Err(ShapeError::LengthMismatch { .. })
        ));
        assert_eq!(make_skew(&[], &[]), Err(ShapeError::Empty));
        // empty rows are fine
        assert!(make_skew(&[1, 1], &[2, 1]).is_ok());
    }

    #[test]
    fn error_messages() {
        assert_eq!(
            make_skew(&[0, 1], &[2, 2]).unwrap_err().to_string(),
            "alpha not weakly decreasing"
        );
    }

    #[test]
    fn conventions_at_the_ends() {
        let s = make_skew(&[1, 1, 0, 0], &[4, 3, 3, 2]).unwrap();
        assert_eq!(s.alpha_next(0), 1);
        assert_eq!(s.alpha_next(2), 0);
        assert_eq!(s.alpha_next(4), 0);
        assert_eq!(s.beta_at(0), 4);
        assert_eq!(s.beta_at(3), 3);
    }

    #[test]
    fn selection_complements() {
        let sel = IndexSelection::new(4, &[2, 0, 1], &[1, 3, 4]).unwrap();
        assert_eq!(sel.a_set(), &[0, 1, 2]);
        assert_eq!(sel.a_comp(), &[3, 4]);
        assert_eq!(sel.b_comp(), &[0, 2]);
        assert_eq!((sel.l(), sel.r()), (3, 2));
        assert!(IndexSelection::new(2, &[0], &[0, 1]).is_err());
        assert!(IndexSelection::new(2, &[0, 0], &[0, 1]).is_err());
        assert!(IndexSelection::new(2, &[3], &[0]).is_err());
        for sel in selections(3) {
            assert_eq!(sel.l() + sel.a_comp().len(), 4);
            assert_eq!(sel.l() + sel.r(), sel.n() + 1);
        }
        assert_eq!(selections(4).len(), 252);
    }

    #[test]
    fn hypothesis_examples() {
        let ex = make_skew(&[1, 1, 0, 0], &[4, 3, 3, 2]).unwrap();
        let sel = IndexSelection::new(4, &[0, 1, 2], &[1, 3, 4]).unwrap();
        assert!(parallelogram_hypothesis(&ex, &sel).holds);

        let s4 = make_skew(&[2, 0, 0], &[3, 3, 1]).unwrap();
        let sel = IndexSelection::new(3, &[0, 1, 2], &[1, 2, 3]).unwrap();
        assert!(parallelogram_hypothesis(&s4, &sel).holds);

        // (2, 0): 2 > 0 and 2 <= 3 - 0; at i = 2, beta_1 - beta_2 = 2 > 1.
        let bad = make_skew(&[0, 0], &[3, 1]).unwrap();
        let sel = IndexSelection::new(2, &[0, 1], &[1, 2]).unwrap();
        let rep = parallelogram_hypothesis(&bad, &sel);
        assert!(!rep.holds);
        assert_eq!(
            rep.violations,
            vec![Violation {
                a_prime: 2,
                b_prime: 0,
                row: 2
            }]
        );
    }

    #[test]
    fn near_staircase_examples() {
        assert!(near_staircase_check(
            &Partition::new(vec![4, 3, 3, 2]).unwrap()
        ));
        assert!(!near_staircase_check(
            &Partition::new(vec![2, 0, 0]).unwrap()
        ));
        assert!(near_staircase_check(
            &Partition::new(vec![0, 0, 0]).unwrap()
        ));
    }

    #[test]
    fn special_shapes() {
        let s = staircase(3);
        assert_eq!(
            (s.alpha_parts(), s.beta_parts()),
            (&[2, 1, 0][..], &[3, 3, 3][..])
        );
        let r = rectangle(2, 3);
        assert_eq!(
            (r.alpha_parts(), r.beta_parts()),
            (&[0, 0, 0][..], &[2, 2, 2][..])
        );
        let s1 = staircase(1);
        assert_eq!((s1.alpha_parts(), s1.beta_parts()), (&[0][..], &[1][..]));
        for n in 1..=6 {
            let s = staircase(n);
            assert!(make_skew(s.alpha_parts(), s.beta_parts()).is_ok());
            for m in 1..=4 {
                let r = rectangle(m, n);
                assert!(make_skew(r.alpha_parts(), r.beta_parts()).is_ok());
            }
        }
    }

    #[test]
    fn near_staircase_implies_hypothesis() {
        for n in 1..=4 {
            let sels = selections(n);
            for shape in skew_shapes(n, 4) {
                let a = Partition::new(shape.alpha_parts().to_vec()).unwrap();
                let b = Partition::new(shape.beta_parts().to_vec()).unwrap();
                if near_staircase_check(&a) && near_staircase_check(&b) {
                    for sel in &sels {
                        assert!(
                            parallelogram_hypothesis(&shape, sel).holds,
                            "{shape:?} {sel:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn enumerators() {
        assert_eq!(partitions(4, 4).len(), 70);
        assert!(skew_shapes(2, 2).iter().all(SkewShape::is_partition_pair));
        assert!(composition_shapes(2, 2)
            .iter()
            .all(|s| !s.is_partition_pair()));
    }
}
