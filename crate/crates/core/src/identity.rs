//! The h- and e-matrices of the duality, their verification, the classical
//! specializations, and the sweep over small shapes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::connectors::{connector_sum, ConnectorError};
use crate::detring::{IntMatrix, PolyMatrix};
use crate::lattice::{build_l, build_r, Node};
use crate::poly::{binomial, e_poly, h_poly, qbinom, Polynomial, VarRange};
use crate::shape::{
    composition_shapes, parallelogram_hypothesis, rectangle, selections, skew_shapes, staircase,
    IndexSelection, SkewShape, Violation,
};

fn span(lo: u32, hi: u32) -> VarRange {
    VarRange::new(lo.max(1), hi).expect("lower end is positive")
}

/// `h_{b-a}(x_{alpha_{a+1}+1}, ..., x_{beta_b})`.
pub fn h_entry(shape: &SkewShape, a: usize, b: usize) -> Polynomial {
    let d = b as i64 - a as i64;
    match d {
        d if d < 0 => Polynomial::zero(),
        0 => Polynomial::one(),
        _ => h_poly(d, span(shape.alpha_next(a) + 1, shape.beta_at(b))),
    }
}

/// `e_{a'-b'}(x_{alpha_{a'}+1}, ..., x_{beta_{b'+1}})`.
pub fn e_entry(shape: &SkewShape, a_prime: usize, b_prime: usize) -> Polynomial {
    let d = a_prime as i64 - b_prime as i64;
    match d {
        d if d < 0 => Polynomial::zero(),
        0 => Polynomial::one(),
        _ => e_poly(d, span(shape.alpha(a_prime) + 1, shape.beta(b_prime + 1))),
    }
}

/// Rows labelled by `A`, columns by `B`.
pub fn build_h_matrix(shape: &SkewShape, sel: &IndexSelection) -> PolyMatrix {
    PolyMatrix::from_labels(sel.a_set().to_vec(), sel.b_set().to_vec(), |a, b| {
        h_entry(shape, a, b)
    })
    .expect("selection labels are sorted")
}

/// Rows labelled by `A^c`, columns by `B^c`.
pub fn build_e_matrix(shape: &SkewShape, sel: &IndexSelection) -> PolyMatrix {
    PolyMatrix::from_labels(sel.a_comp().to_vec(), sel.b_comp().to_vec(), |a, b| {
        e_entry(shape, a, b)
    })
    .expect("selection labels are sorted")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub hypothesis_ok: bool,
    pub violating_pairs: Vec<Violation>,
    pub det_h: Polynomial,
    pub det_e: Polynomial,
    pub equal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_blue: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute_red: Option<Polynomial>,
    /// Lattice points added to close a gap in a horizontal line.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub filled_points: Vec<Node>,
}

/// Computes both determinants and the hypothesis check, plus the brute-force
/// connector sums when `with_brute`. Asserts nothing.
pub fn verify_main(
    shape: &SkewShape,
    sel: &IndexSelection,
    with_brute: bool,
    cap: u128,
) -> Result<VerificationReport, ConnectorError> {
    let hyp = parallelogram_hypothesis(shape, sel);
    let det_h = build_h_matrix(shape, sel)
        .det()
        .expect("selection fits the determinant guard");
    let det_e = build_e_matrix(shape, sel)
        .det()
        .expect("selection fits the determinant guard");
    let left = build_l(shape, sel);
    let (brute_blue, brute_red) = if with_brute {
        let right = build_r(shape, sel);
        (
            Some(connector_sum(&left, cap)?),
            Some(connector_sum(&right, cap)?),
        )
    } else {
        (None, None)
    };
    Ok(VerificationReport {
        alpha: shape.alpha_parts().to_vec(),
        beta: shape.beta_parts().to_vec(),
        a_set: sel.a_set().to_vec(),
        b_set: sel.b_set().to_vec(),
        hypothesis_ok: hyp.holds,
        violating_pairs: hyp.violations,
        equal: det_h == det_e,
        det_h,
        det_e,
        brute_blue,
        brute_red,
        filled_points: left.filled_points().to_vec(),
    })
}

/// Outcome of one of the classical specializations. `alt_lhs`/`alt_rhs` hold
/// the same two sides computed by an independent route, when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialReport {
    pub kind: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub lhs: Polynomial,
    pub rhs: Polynomial,
    pub equal: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_lhs: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alt_rhs: Option<Polynomial>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub routes_agree: Option<bool>,
}

impl SpecialReport {
    fn new(kind: &str, sel: &IndexSelection, lhs: Polynomial, rhs: Polynomial) -> Self {
        Self {
            kind: kind.to_string(),
            n: sel.n(),
            m: None,
            a_set: sel.a_set().to_vec(),
            b_set: sel.b_set().to_vec(),
            equal: lhs == rhs,
            lhs,
            rhs,
            alt_lhs: None,
            alt_rhs: None,
            routes_agree: None,
        }
    }

    fn with_alt(mut self, alt_lhs: Polynomial, alt_rhs: Polynomial) -> Self {
        self.routes_agree = Some(alt_lhs == self.lhs && alt_rhs == self.rhs);
        self.alt_lhs = Some(alt_lhs);
        self.alt_rhs = Some(alt_rhs);
        self
    }

    /// Both sides agree, and so does the alternate route when present.
    pub fn holds(&self) -> bool {
        self.equal && self.routes_agree.unwrap_or(true)
    }
}

fn int_det(rows: &[usize], cols: &[usize], f: impl Fn(usize, usize) -> BigInt) -> BigInt {
    let m = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| f(r, c)).collect())
        .collect();
    IntMatrix::new(m).expect("square by construction").det()
}

fn poly_det(
    rows: &[usize],
    cols: &[usize],
    f: impl FnMut(usize, usize) -> Polynomial,
) -> Polynomial {
    PolyMatrix::from_labels(rows.to_vec(), cols.to_vec(), f)
        .and_then(|m| m.det())
        .expect("selection fits the determinant guard")
}

/// Binomial duality with integer determinants computed directly. The
/// alternate route is the q = 1 evaluation of [`verify_qbinomial`].
pub fn verify_binomial(sel: &IndexSelection) -> SpecialReport {
    let lhs = int_det(sel.a_set(), sel.b_set(), |a, b| {
        binomial(b as i64, a as i64)
    });
    let rhs = int_det(sel.a_comp(), sel.b_comp(), |a, b| {
        binomial(a as i64, b as i64)
    });
    let q = verify_qbinomial(sel);
    SpecialReport::new(
        "binomial",
        sel,
        Polynomial::constant(lhs),
        Polynomial::constant(rhs),
    )
    .with_alt(
        Polynomial::constant(q.lhs.eval_ones()),
        Polynomial::constant(q.rhs.eval_ones()),
    )
}

fn q_entry(a_prime: usize, b_prime: usize) -> Polynomial {
    if a_prime < b_prime {
        return Polynomial::zero();
    }
    let k = (a_prime - b_prime) as u32;
    Polynomial::q_pow(k * k.saturating_sub(1) / 2) * qbinom(a_prime as u32, b_prime as i64)
}

/// `det(qbinom(b, a)) = det(q^{C(a'-b', 2)} qbinom(a', b'))`.
pub fn verify_qbinomial(sel: &IndexSelection) -> SpecialReport {
    let lhs = poly_det(sel.a_set(), sel.b_set(), |a, b| qbinom(b as u32, a as i64));
    let rhs = poly_det(sel.a_comp(), sel.b_comp(), q_entry);
    SpecialReport::new("qbinomial", sel, lhs, rhs)
}

/// `x_i -> x_{n+1-i}` for `i` in `1..=n`.
fn reversal(n: usize) -> BTreeMap<u32, Polynomial> {
    (1..=n as u32)
        .map(|i| (i, Polynomial::x(n as u32 + 1 - i)))
        .collect()
}

/// `det(h_{b-a}(x_1..x_{a+1})) = det(e_{a'-b'}(x_1..x_{a'}))`, checked directly
/// and re-derived from the staircase shape followed by reversing the variables.
pub fn verify_sympoly_binomial(sel: &IndexSelection) -> SpecialReport {
    let n = sel.n();
    let lhs = poly_det(sel.a_set(), sel.b_set(), |a, b| {
        h_poly(b as i64 - a as i64, VarRange::first(a as u32 + 1))
    });
    let rhs = poly_det(sel.a_comp(), sel.b_comp(), |a, b| {
        e_poly(a as i64 - b as i64, VarRange::first(a as u32))
    });
    let report = SpecialReport::new("sympoly", sel, lhs, rhs);
    if n == 0 {
        return report;
    }
    let shape = staircase(n);
    let rel = reversal(n);
    let h = build_h_matrix(&shape, sel).det().expect("fits guard");
    let e = build_e_matrix(&shape, sel).det().expect("fits guard");
    report.with_alt(
        h.substitute(&rel).expect("all variables mapped"),
        e.substitute(&rel).expect("all variables mapped"),
    )
}

/// `det(h_{b-a}(x_1..x_m)) = det(e_{a'-b'}(x_1..x_m))` through the main
/// verifier on the `m x n` rectangle; the alternate route builds the two
/// matrices directly.
pub fn verify_aitken(m: u32, sel: &IndexSelection) -> SpecialReport {
    assert!(m >= 1 && sel.n() >= 1, "aitken needs m, n >= 1");
    let shape = rectangle(m, sel.n());
    let report = verify_main(&shape, sel, false, 0).expect("no enumeration requested");
    let vars = VarRange::first(m);
    let lhs = poly_det(sel.a_set(), sel.b_set(), |a, b| {
        h_poly(b as i64 - a as i64, vars)
    });
    let rhs = poly_det(sel.a_comp(), sel.b_comp(), |a, b| {
        e_poly(a as i64 - b as i64, vars)
    });
    let mut out = SpecialReport::new("aitken", sel, report.det_h, report.det_e).with_alt(lhs, rhs);
    out.m = Some(m);
    out
}

/// [`verify_aitken`] for each `m` in `1..=max_m`.
pub fn aitken_series(max_m: u32, sel: &IndexSelection) -> Vec<SpecialReport> {
    (1..=max_m).map(|m| verify_aitken(m, sel)).collect()
}

/// `H_{ij} = h_{j-i}(x_{alpha_{i+1}+1}, ..., x_{beta_j})` for `i, j` in `0..=n`.
pub fn build_full_h(shape: &SkewShape) -> PolyMatrix {
    let labels: Vec<usize> = (0..=shape.n()).collect();
    PolyMatrix::from_labels(labels.clone(), labels, |i, j| h_entry(shape, i, j))
        .expect("sorted labels")
}

/// `E_{ij} = (-1)^{i+j} e_{j-i}(x_{alpha_j+1}, ..., x_{beta_{i+1}})` for `i, j` in `0..=n`.
pub fn build_full_e(shape: &SkewShape) -> PolyMatrix {
    let labels: Vec<usize> = (0..=shape.n()).collect();
    PolyMatrix::from_labels(labels.clone(), labels, |i, j| {
        let e = e_entry(shape, j, i);
        if (i + j) % 2 == 1 {
            -e
        } else {
            e
        }
    })
    .expect("sorted labels")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bucket {
    HoldsEqual,
    HoldsUnequal,
    FailsEqual,
    FailsUnequal,
}

impl Bucket {
    pub fn of(hypothesis_ok: bool, equal: bool) -> Self {
        match (hypothesis_ok, equal) {
            (true, true) => Bucket::HoldsEqual,
            (true, false) => Bucket::HoldsUnequal,
            (false, true) => Bucket::FailsEqual,
            (false, false) => Bucket::FailsUnequal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepCase {
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub hypothesis_ok: bool,
    pub equal: bool,
    pub det_h: Polynomial,
    pub det_e: Polynomial,
}

impl SweepCase {
    pub fn bucket(&self) -> Bucket {
        Bucket::of(self.hypothesis_ok, self.equal)
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_n: usize,
    pub max_part: u32,
    /// Skip selections that fail the hypothesis.
    pub hypothesis_only: bool,
    /// Also sweep composition pairs that are not partition pairs.
    pub compositions: bool,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            max_n: 4,
            max_part: 4,
            hypothesis_only: false,
            compositions: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub shapes: usize,
    pub cases: usize,
    pub holds_equal: usize,
    pub holds_unequal: usize,
    pub fails_equal: usize,
    pub fails_unequal: usize,
}

impl SweepSummary {
    fn record(&mut self, b: Bucket) {
        self.cases += 1;
        match b {
            Bucket::HoldsEqual => self.holds_equal += 1,
            Bucket::HoldsUnequal => self.holds_unequal += 1,
            Bucket::FailsEqual => self.fails_equal += 1,
            Bucket::FailsUnequal => self.fails_unequal += 1,
        }
    }
}

/// Shapes covered by a sweep, in enumeration order.
pub fn sweep_shapes(config: &SweepConfig) -> Vec<SkewShape> {
    let mut out = Vec::new();
    for n in 1..=config.max_n {
        out.extend(skew_shapes(n, config.max_part));
        if config.compositions {
            out.extend(composition_shapes(n, config.max_part));
        }
    }
    out
}

/// Determinants of every square submatrix of a fixed grid, memoized by the
/// (row set, column set) bitmasks.
struct MinorCache<'a> {
    grid: &'a PolyMatrix,
    memo: BTreeMap<(u32, u32), Polynomial>,
}

impl<'a> MinorCache<'a> {
    fn new(grid: &'a PolyMatrix) -> Self {
        Self {
            grid,
            memo: BTreeMap::new(),
        }
    }

    /// Laplace expansion along the first row, reusing smaller minors.
    fn det(&mut self, rows: u32, cols: u32) -> Polynomial {
        if rows == 0 {
            return Polynomial::one();
        }
        if let Some(p) = self.memo.get(&(rows, cols)) {
            return p.clone();
        }
        let r = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Polynomial::zero();
        let mut sign_odd = false;
        let mut c_bits = cols;
        while c_bits != 0 {
            let c = c_bits.trailing_zeros() as usize;
            c_bits &= c_bits - 1;
            let entry = self.grid.get(r, c).clone();
            if !entry.is_zero() {
                let minor = self.det(rest, cols & !(1 << c));
                if !minor.is_zero() {
                    let t = &entry * &minor;
                    if sign_odd {
                        acc = acc - t;
                    } else {
                        acc += t;
                    }
                }
            }
            sign_odd = !sign_odd;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn mask(set: &[usize]) -> u32 {
    set.iter().fold(0, |m, &i| m | (1 << i))
}

/// Every selection of one shape, in selection order.
pub fn sweep_shape(shape: &SkewShape, hypothesis_only: bool) -> Vec<SweepCase> {
    let n = shape.n();
    let labels: Vec<usize> = (0..=n).collect();
    let h_grid = build_full_h(shape);
    let e_grid = PolyMatrix::from_labels(labels.clone(), labels, |a, b| e_entry(shape, a, b))
        .expect("sorted");
    let mut h_cache = MinorCache::new(&h_grid);
    let mut e_cache = MinorCache::new(&e_grid);
    let mut out = Vec::new();
    for sel in selections(n) {
        let hyp = parallelogram_hypothesis(shape, &sel).holds;
        if hypothesis_only && !hyp {
            continue;
        }
        let det_h = h_cache.det(mask(sel.a_set()), mask(sel.b_set()));
        let det_e = e_cache.det(mask(sel.a_comp()), mask(sel.b_comp()));
        out.push(SweepCase {
            alpha: shape.alpha_parts().to_vec(),
            beta: shape.beta_parts().to_vec(),
            a_set: sel.a_set().to_vec(),
            b_set: sel.b_set().to_vec(),
            hypothesis_ok: hyp,
            equal: det_h == det_e,
            det_h,
            det_e,
        });
    }
    out
}

/// Runs the sweep, handing each case to `on_case` in deterministic order.
pub fn sweep<F: FnMut(&SweepCase)>(config: &SweepConfig, mut on_case: F) -> SweepSummary {
    let shapes = sweep_shapes(config);
    let mut summary = SweepSummary {
        shapes: shapes.len(),
        ..Default::default()
    };
    // Parallel per chunk of shapes; results are consumed in input order.
    for chunk in shapes.chunks(64) {
        let results: Vec<Vec<SweepCase>> = chunk
            .par_iter()
            .map(|s| sweep_shape(s, config.hypothesis_only))
            .collect();
        for case in results.iter().flatten() {
            summary.record(case.bucket());
            on_case(case);
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shape::make_skew;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn h(d: i64, lo: u32, hi: u32) -> Polynomial {
        h_poly(d, VarRange::new(lo, hi).unwrap())
    }

    fn e(d: i64, lo: u32, hi: u32) -> Polynomial {
        e_poly(d, VarRange::new(lo, hi).unwrap())
    }

    fn sel(n: usize, a: &[usize], b: &[usize]) -> IndexSelection {
        IndexSelection::new(n, a, b).unwrap()
    }

    fn four_row() -> (SkewShape, IndexSelection) {
        (
            make_skew(&[1, 1, 0, 0], &[4, 3, 3, 2]).unwrap(),
            sel(4, &[0, 1, 2], &[1, 3, 4]),
        )
    }

    fn three_row() -> (SkewShape, IndexSelection) {
        (
            make_skew(&[2, 0, 0], &[3, 3, 1]).unwrap(),
            sel(3, &[0, 1, 2], &[1, 2, 3]),
        )
    }

    #[test]
    fn four_row_matrices() {
        let (shape, s) = four_row();
        let hm = build_h_matrix(&shape, &s);
        let expected_h = vec![
            vec![h(1, 2, 4), h(3, 2, 3), h(4, 2, 2)],
            vec![Polynomial::one(), h(2, 2, 3), h(3, 2, 2)],
            vec![Polynomial::zero(), h(1, 1, 3), h(2, 1, 2)],
        ];
        assert_eq!(hm.to_rows(), expected_h);
        assert_eq!(hm.row_labels(), &[0, 1, 2]);
        assert_eq!(hm.col_labels(), &[1, 3, 4]);
        let em = build_e_matrix(&shape, &s);
        assert_eq!(
            em.to_rows(),
            vec![vec![e(3, 1, 4), e(1, 1, 3)], vec![e(4, 1, 4), e(2, 1, 3)]]
        );
        let r = verify_main(&shape, &s, true, 1_000_000).unwrap();
        assert!(r.hypothesis_ok && r.equal);
        assert_eq!(r.brute_blue.as_ref(), Some(&r.det_h));
        assert_eq!(r.brute_red.as_ref(), Some(&r.det_e));
    }

    #[test]
    fn three_row_matrices_and_value() {
        let (shape, s) = three_row();
        let hm = build_h_matrix(&shape, &s);
        assert_eq!(
            hm.to_rows(),
            vec![
                vec![h(1, 3, 3), h(2, 3, 3), Polynomial::zero()],
                vec![Polynomial::one(), h(1, 1, 3), h(2, 1, 1)],
                vec![Polynomial::zero(), Polynomial::one(), h(1, 1, 1)],
            ]
        );
        assert_eq!(build_e_matrix(&shape, &s).to_rows(), vec![vec![e(3, 1, 3)]]);
        let r = verify_main(&shape, &s, true, 1_000_000).unwrap();
        assert!(r.hypothesis_ok && r.equal);
        assert_eq!(r.det_h, p("x1*x2*x3"));
    }

    #[test]
    fn three_row_product_is_not_identity() {
        let (shape, _) = three_row();
        let prod = build_full_e(&shape).mul(&build_full_h(&shape)).unwrap();
        assert!(!prod.is_identity());
        assert_eq!(prod.at_label(0, 2).unwrap(), &p("x1*x2"));
        let by_hand = h(2, 3, 3) - e(1, 3, 3) * h(1, 1, 3) + e(2, 1, 3);
        assert_eq!(prod.at_label(0, 2).unwrap(), &by_hand);
    }

    #[test]
    fn rectangle_products_are_identity() {
        for m in 1..=3 {
            for n in 1..=3 {
                let shape = rectangle(m, n);
                let prod = build_full_e(&shape).mul(&build_full_h(&shape)).unwrap();
                assert!(prod.is_identity(), "m={m} n={n}");
            }
        }
    }

    #[test]
    fn staircase_two_product_regression() {
        let shape = staircase(2);
        let prod = build_full_e(&shape).mul(&build_full_h(&shape)).unwrap();
        let rows: Vec<Vec<String>> = prod
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_string()).collect())
            .collect();
        assert_eq!(rows, STAIRCASE_TWO_PRODUCT);
    }

    const STAIRCASE_TWO_PRODUCT: [[&str; 3]; 3] =
        [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]];

    #[test]
    fn degenerate_full_selection() {
        for shape in sweep_shapes(&SweepConfig::default()) {
            let s = IndexSelection::full(shape.n());
            let r = verify_main(&shape, &s, false, 0).unwrap();
            assert!(r.det_h.is_one() && r.det_e.is_one());
        }
    }

    #[test]
    fn hypothesis_failure_is_reported() {
        let shape = make_skew(&[0, 0, 0], &[3, 1, 1]).unwrap();
        let s = sel(3, &[1], &[3]);
        let r = verify_main(&shape, &s, false, 0).unwrap();
        assert!(!r.hypothesis_ok);
        assert!(!r.violating_pairs.is_empty());
    }

    #[test]
    fn binomial_examples() {
        let r = verify_binomial(&sel(2, &[0, 1], &[0, 1]));
        assert_eq!(
            (r.lhs.clone(), r.rhs.clone()),
            (Polynomial::one(), Polynomial::one())
        );
        assert!(r.holds());
        let full = verify_binomial(&IndexSelection::full(3));
        assert!(full.lhs.is_one() && full.rhs.is_one());
        let r = verify_binomial(&sel(4, &[0, 1, 2], &[1, 3, 4]));
        assert!(r.holds());
        // det [[C(1,0), C(3,0), C(4,0)], [C(1,1), C(3,1), C(4,1)], [0, C(3,2), C(4,2)]]
        let direct = IntMatrix::from_i64(&[vec![1, 1, 1], vec![1, 3, 4], vec![0, 3, 6]])
            .unwrap()
            .det();
        assert_eq!(r.lhs, Polynomial::constant(direct));
    }

    #[test]
    fn qbinomial_examples() {
        let s = sel(2, &[0], &[1]);
        let r = verify_qbinomial(&s);
        assert!(r.lhs.is_one() && r.rhs.is_one());
        let rhs = PolyMatrix::from_labels(vec![1, 2], vec![0, 2], q_entry).unwrap();
        assert_eq!(
            rhs.to_rows(),
            vec![
                vec![Polynomial::one(), Polynomial::zero()],
                vec![p("q"), Polynomial::one()]
            ]
        );
        let r = verify_qbinomial(&sel(4, &[0, 1, 2], &[1, 3, 4]));
        assert!(r.equal);
        assert_eq!(
            r.lhs.eval_ones(),
            verify_binomial(&sel(4, &[0, 1, 2], &[1, 3, 4]))
                .lhs
                .constant_term()
        );
    }

    #[test]
    fn sympoly_examples() {
        let r = verify_sympoly_binomial(&sel(3, &[0, 1], &[2, 3]));
        assert!(r.equal);
        assert_eq!(r.routes_agree, Some(true));
        assert!(!r.lhs.is_zero());
        let r = verify_sympoly_binomial(&IndexSelection::full(2));
        assert!(r.lhs.is_one() && r.rhs.is_one());
    }

    #[test]
    fn aitken_examples() {
        let r = verify_aitken(1, &sel(2, &[0], &[2]));
        assert!(r.holds());
        assert_eq!(r.lhs, p("x1^2"));
        let r = verify_aitken(3, &sel(3, &[0, 1], &[2, 3]));
        assert!(r.holds());
        assert!(aitken_series(3, &sel(3, &[0, 1], &[2, 3]))
            .iter()
            .all(SpecialReport::holds));
    }

    #[test]
    fn report_json_round_trip() {
        let (shape, s) = four_row();
        let r = verify_main(&shape, &s, true, 1_000_000).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sweep_cache_matches_direct() {
        for shape in sweep_shapes(&SweepConfig {
            max_n: 3,
            max_part: 2,
            ..Default::default()
        }) {
            for case in sweep_shape(&shape, false) {
                let s = sel(shape.n(), &case.a_set, &case.b_set);
                let r = verify_main(&shape, &s, false, 0).unwrap();
                assert_eq!(
                    (&r.det_h, &r.det_e, r.hypothesis_ok),
                    (&case.det_h, &case.det_e, case.hypothesis_ok)
                );
            }
        }
    }

    #[test]
    fn small_sweep_buckets() {
        let summary = sweep(
            &SweepConfig {
                max_n: 3,
                max_part: 3,
                ..Default::default()
            },
            |_| {},
        );
        assert_eq!(summary.holds_unequal, 0);
        assert!(summary.holds_equal > 0);
        assert_eq!(
            summary.cases,
            summary.holds_equal
                + summary.holds_unequal
                + summary.fails_equal
                + summary.fails_unequal
        );
    }
}
