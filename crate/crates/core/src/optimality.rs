//! Efficiency checks, the sum-rule experiment, subdifferential inclusion
//! reports for differences of functions, the augmented normal cone and
//! the zero-inclusion optimality condition.

use crate::error::{Error, Result};
use crate::grid::GridSpec;
use crate::interval::{family_inf_sup, Interval, IntervalVector};
use crate::ivf::IntervalFn;
use crate::weak_subdiff::{
    member_check, region_1d, EndpointRange, Region1D, WeakCandidate, DEFAULT_TOL,
};

/// Outcome of the two pointwise optimality notions at a point `u`:
/// weak efficiency (`Φ(u) ⪯ Φ(y)` everywhere) and efficiency (no `y`
/// with `Φ(y) ≺ Φ(u)`). Neither implies the other.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyVerdict {
    pub weak_efficient: bool,
    pub efficient: bool,
    pub weak_witness: Option<Vec<f64>>,
    pub efficient_witness: Option<Vec<f64>>,
}

fn efficiency_sweep(f: &dyn IntervalFn, u: &[f64], grid: &GridSpec, tol: f64) -> Result<EfficiencyVerdict> {
    let fu = f.eval(u)?;
    let mut verdict = EfficiencyVerdict {
        weak_efficient: true,
        efficient: true,
        weak_witness: None,
        efficient_witness: None,
    };
    for y in grid.points(f.domain()) {
        let fy = f.eval(&y)?;
        if verdict.weak_efficient && !fu.preceq(fy, tol) {
            verdict.weak_efficient = false;
            verdict.weak_witness = Some(y.clone());
        }
        // strict domination test with tolerance slack against fu
        let strict = (fy.lo() <= fu.lo() - tol && fy.hi() < fu.hi() - tol)
            || (fy.lo() < fu.lo() - tol && fy.hi() <= fu.hi() - tol);
        if verdict.efficient && strict {
            verdict.efficient = false;
            verdict.efficient_witness = Some(y.clone());
        }
        if !verdict.weak_efficient && !verdict.efficient {
            break;
        }
    }
    Ok(verdict)
}

/// Dominance sweep for weak efficiency of `u`.
pub fn weak_efficient_check(
    f: &dyn IntervalFn,
    u: &[f64],
    grid: &GridSpec,
    tol: f64,
) -> Result<EfficiencyVerdict> {
    efficiency_sweep(f, u, grid, tol)
}

/// Sweep for efficiency of `u` (absence of strict dominators).
pub fn efficient_check(
    f: &dyn IntervalFn,
    u: &[f64],
    grid: &GridSpec,
    tol: f64,
) -> Result<EfficiencyVerdict> {
    efficiency_sweep(f, u, grid, tol)
}

fn check_same_domain(a: &dyn IntervalFn, b: &dyn IntervalFn) -> Result<()> {
    if a.dim() != b.dim() || a.domain() != b.domain() {
        return Err(Error::DomainMismatch);
    }
    Ok(())
}

/// The pointwise gH-difference `y ↦ Φ₂(y) ⊖_gH Φ₁(y)`.
pub struct GhDiffIvf<'a> {
    f1: &'a dyn IntervalFn,
    f2: &'a dyn IntervalFn,
}

impl<'a> GhDiffIvf<'a> {
    pub fn new(f1: &'a dyn IntervalFn, f2: &'a dyn IntervalFn) -> Result<Self> {
        check_same_domain(f1, f2)?;
        Ok(GhDiffIvf { f1, f2 })
    }
}

impl IntervalFn for GhDiffIvf<'_> {
    fn dim(&self) -> usize {
        self.f1.dim()
    }
    fn domain(&self) -> &[(f64, f64)] {
        self.f1.domain()
    }
    fn eval(&self, y: &[f64]) -> Result<Interval> {
        Ok(self.f2.eval(y)?.gh_sub(self.f1.eval(y)?))
    }
}

/// The pointwise Moore sum `y ↦ Φ₁(y) ⊕ Φ₂(y)`.
pub struct SumIvf<'a> {
    f1: &'a dyn IntervalFn,
    f2: &'a dyn IntervalFn,
}

impl<'a> SumIvf<'a> {
    pub fn new(f1: &'a dyn IntervalFn, f2: &'a dyn IntervalFn) -> Result<Self> {
        check_same_domain(f1, f2)?;
        Ok(SumIvf { f1, f2 })
    }
}

impl IntervalFn for SumIvf<'_> {
    fn dim(&self) -> usize {
        self.f1.dim()
    }
    fn domain(&self) -> &[(f64, f64)] {
        self.f1.domain()
    }
    fn eval(&self, y: &[f64]) -> Result<Interval> {
        self.f1.eval(y)?.add(self.f2.eval(y)?)
    }
}

/// The pointwise negation `y ↦ (−1) ⊙ Φ(y)`.
pub struct NegIvf<'a> {
    f: &'a dyn IntervalFn,
}

impl<'a> NegIvf<'a> {
    pub fn new(f: &'a dyn IntervalFn) -> Self {
        NegIvf { f }
    }
}

impl IntervalFn for NegIvf<'_> {
    fn dim(&self) -> usize {
        self.f.dim()
    }
    fn domain(&self) -> &[(f64, f64)] {
        self.f.domain()
    }
    fn eval(&self, y: &[f64]) -> Result<Interval> {
        Ok(self.f.eval(y)?.scalar_mul(-1.0))
    }
}

/// One split of the candidate-sum set at fixed total `c`: the box sum of
/// the two part regions at `c = c1 + c2`.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitBox {
    pub c1: f64,
    pub c2: f64,
    pub g_lo: EndpointRange,
    pub g_hi: EndpointRange,
}

/// A counterexample candidate for the sum rule: a pair in the sum of the
/// two subdifferentials that is not a subgradient of the sum (or vice
/// versa), together with the verified split.
#[derive(Debug, Clone, PartialEq)]
pub struct SumRuleWitness {
    pub g: Interval,
    pub c: f64,
    pub part1: (Interval, f64),
    pub part2: (Interval, f64),
    /// true when the witness lies in the part sum but not in ∂ʷ(Φ₁⊕Φ₂)
    pub in_part_sum_only: bool,
}

/// Per-c comparison of `∂ʷΦ₁(u) ⊕ ∂ʷΦ₂(u)` against `∂ʷ(Φ₁ ⊕ Φ₂)(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SumRulePerC {
    pub c: f64,
    pub splits: Vec<SplitBox>,
    pub region_of_sum: Region1D,
    pub equal: bool,
    pub witness: Option<SumRuleWitness>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SumRuleReport {
    pub u: f64,
    pub per_c: Vec<SumRulePerC>,
    /// true iff the two sets matched at every probed c
    pub equal_everywhere: bool,
}

fn add_ranges(a: EndpointRange, b: EndpointRange) -> EndpointRange {
    EndpointRange {
        min: a.min + b.min,
        max: a.max + b.max,
    }
}

fn range_samples(r: EndpointRange, k: usize) -> Vec<f64> {
    let lo = r.min.max(-crate::grid::CLAMP);
    let hi = r.max.min(crate::grid::CLAMP);
    if lo > hi {
        return Vec::new();
    }
    if k == 1 || lo == hi {
        return vec![lo];
    }
    (0..k)
        .map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64)
        .collect()
}

fn in_split_boxes(splits: &[SplitBox], g_lo: f64, g_hi: f64, tol: f64) -> bool {
    splits.iter().any(|s| {
        !s.g_lo.is_void()
            && !s.g_hi.is_void()
            && s.g_lo.contains(g_lo, tol)
            && s.g_hi.contains(g_hi, tol)
    })
}

const SPLIT_STEPS: usize = 21;
const SET_TOL: f64 = 1e-6;

/// Compares the sum of the two subdifferentials with the subdifferential
/// of the sum at each probed `c`. Candidate addition is
/// `(G₁,c₁) ⊕ (G₂,c₂) = (G₁⊕G₂, c₁+c₂)`; the per-c slice of the sum set
/// sweeps the split `c₁ ∈ [0, c]`. Witnesses are re-verified through
/// `member_check` before they are reported.
pub fn sum_rule_experiment(
    f1: &dyn IntervalFn,
    f2: &dyn IntervalFn,
    u: f64,
    c_list: &[f64],
    grid: &GridSpec,
) -> Result<SumRuleReport> {
    check_same_domain(f1, f2)?;
    if f1.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: f1.dim(),
        });
    }
    let sum = SumIvf::new(f1, f2)?;
    let mut per_c = Vec::new();
    for &c in c_list {
        let region_of_sum = region_1d(&sum, u, c, grid, DEFAULT_TOL)?;
        let mut splits = Vec::new();
        let n = if c == 0.0 { 1 } else { SPLIT_STEPS };
        for i in 0..n {
            let c1 = if n == 1 {
                0.0
            } else {
                c * i as f64 / (n - 1) as f64
            };
            let c2 = c - c1;
            let r1 = region_1d(f1, u, c1, grid, DEFAULT_TOL)?;
            let r2 = region_1d(f2, u, c2, grid, DEFAULT_TOL)?;
            if r1.empty || r2.empty {
                continue;
            }
            splits.push(SplitBox {
                c1,
                c2,
                g_lo: add_ranges(r1.g_lo, r2.g_lo),
                g_hi: add_ranges(r1.g_hi, r2.g_hi),
            });
        }

        // part-sum ⊆ region-of-sum: check split-box sample points
        let mut witness = None;
        let mut equal = true;
        'outer: for s in &splits {
            for &g_lo in &range_samples(s.g_lo, 5) {
                for &g_hi in &range_samples(s.g_hi, 5) {
                    if g_lo > g_hi {
                        continue;
                    }
                    if !region_of_sum.contains(Interval::new(g_lo, g_hi)?, SET_TOL) {
                        equal = false;
                        witness = build_witness(f1, f2, &sum, u, s, g_lo, g_hi, grid)?;
                        break 'outer;
                    }
                }
            }
        }
        // region-of-sum ⊆ part-sum: check region sample points
        if equal && !region_of_sum.empty {
            'outer2: for &g_lo in &range_samples(region_of_sum.g_lo, 7) {
                for &g_hi in &range_samples(region_of_sum.g_hi, 7) {
                    if g_lo > g_hi {
                        continue;
                    }
                    if !in_split_boxes(&splits, g_lo, g_hi, SET_TOL) {
                        equal = false;
                        break 'outer2;
                    }
                }
            }
        }
        if region_of_sum.empty && !splits.is_empty() {
            equal = false;
        }
        per_c.push(SumRulePerC {
            c,
            splits,
            region_of_sum,
            equal,
            witness,
        });
    }
    let equal_everywhere = per_c.iter().all(|p| p.equal);
    Ok(SumRuleReport {
        u,
        per_c,
        equal_everywhere,
    })
}

/// Re-verifies a candidate witness: it must pass membership for both
/// parts under its split and fail membership for the sum.
#[allow(clippy::too_many_arguments)]
fn build_witness(
    f1: &dyn IntervalFn,
    f2: &dyn IntervalFn,
    sum: &SumIvf,
    u: f64,
    split: &SplitBox,
    g_lo: f64,
    g_hi: f64,
    grid: &GridSpec,
) -> Result<Option<SumRuleWitness>> {
    let c = split.c1 + split.c2;
    let g = Interval::new(g_lo, g_hi)?;
    let cand = WeakCandidate::new(IntervalVector::new(vec![g])?, c)?;
    let (in_sum, _) = member_check(sum, &[u], &cand, grid, SET_TOL)?;
    if in_sum {
        return Ok(None);
    }
    // find a concrete part split G = G1 ⊕ G2 with G1 ∈ ∂ʷΦ₁, G2 ∈ ∂ʷΦ₂
    let r1 = region_1d(f1, u, split.c1, grid, DEFAULT_TOL)?;
    let r2 = region_1d(f2, u, split.c2, grid, DEFAULT_TOL)?;
    for &a_lo in &range_samples(r1.g_lo, 9) {
        for &a_hi in &range_samples(r1.g_hi, 9) {
            if a_lo > a_hi {
                continue;
            }
            let b_lo = g_lo - a_lo;
            let b_hi = g_hi - a_hi;
            if b_lo > b_hi
                || !r2.g_lo.contains(b_lo, SET_TOL)
                || !r2.g_hi.contains(b_hi, SET_TOL)
            {
                continue;
            }
            let g1 = Interval::new(a_lo, a_hi)?;
            let g2 = Interval::new(b_lo, b_hi)?;
            let c1 = WeakCandidate::new(IntervalVector::new(vec![g1])?, split.c1)?;
            let c2 = WeakCandidate::new(IntervalVector::new(vec![g2])?, split.c2)?;
            if member_check(f1, &[u], &c1, grid, SET_TOL)?.0
                && member_check(f2, &[u], &c2, grid, SET_TOL)?.0
            {
                return Ok(Some(SumRuleWitness {
                    g,
                    c,
                    part1: (g1, split.c1),
                    part2: (g2, split.c2),
                    in_part_sum_only: true,
                }));
            }
        }
    }
    Ok(None)
}

/// How the widths of two functions compare across the sampled domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WidthCondition {
    Equal,
    F1AlwaysAtLeast,
    F2AlwaysAtLeast,
    Mixed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InclusionPerC {
    pub c: f64,
    pub region_a: Region1D,
    pub region_b: Region1D,
    pub subset: bool,
    /// a corner of region A outside region B, when subset fails
    pub witness: Option<Interval>,
}

/// Hypotheses and conclusion of the difference-inclusion theorems,
/// reported side by side without asserting either.
#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport {
    pub per_c: Vec<InclusionPerC>,
    pub overall: bool,
    pub weak_eff_at_u: bool,
    pub efficient_at_u: bool,
    pub values_equal_at_u: bool,
    pub width_condition: WidthCondition,
}

fn range_subset(a: EndpointRange, b: EndpointRange, tol: f64) -> bool {
    a.min >= b.min - tol && a.max <= b.max + tol
}

/// Checks `∂ʷΦ₁(u) ⊂ ∂ʷΦ₂(u)` per c and gathers the hypotheses of the
/// surrounding theorems (weak efficiency / efficiency of `Φ₂ ⊖_gH Φ₁`
/// at `u`, value equality at `u`, global width ordering).
pub fn diff_inclusion_check(
    f1: &dyn IntervalFn,
    f2: &dyn IntervalFn,
    u: f64,
    c_list: &[f64],
    grid: &GridSpec,
) -> Result<InclusionReport> {
    check_same_domain(f1, f2)?;
    let diff = GhDiffIvf::new(f1, f2)?;
    let verdict = efficiency_sweep(&diff, &[u], grid, DEFAULT_TOL)?;
    let v1 = f1.eval(&[u])?;
    let v2 = f2.eval(&[u])?;
    let values_equal_at_u = v1.gh_sub(v2).norm() <= DEFAULT_TOL;

    let mut f1_ge = true;
    let mut f2_ge = true;
    for y in grid.points(f1.domain()) {
        let w1 = f1.eval(&y)?.width();
        let w2 = f2.eval(&y)?.width();
        if w1 < w2 - DEFAULT_TOL {
            f1_ge = false;
        }
        if w2 < w1 - DEFAULT_TOL {
            f2_ge = false;
        }
    }
    let width_condition = match (f1_ge, f2_ge) {
        (true, true) => WidthCondition::Equal,
        (true, false) => WidthCondition::F1AlwaysAtLeast,
        (false, true) => WidthCondition::F2AlwaysAtLeast,
        (false, false) => WidthCondition::Mixed,
    };

    let mut per_c = Vec::new();
    for &c in c_list {
        let region_a = region_1d(f1, u, c, grid, DEFAULT_TOL)?;
        let region_b = region_1d(f2, u, c, grid, DEFAULT_TOL)?;
        let subset = region_a.empty
            || (!region_b.empty
                && range_subset(region_a.g_lo, region_b.g_lo, SET_TOL)
                && range_subset(region_a.g_hi, region_b.g_hi, SET_TOL));
        let witness = if subset || region_a.empty {
            None
        } else {
            let mut found = None;
            'corner: for &g_lo in &range_samples(region_a.g_lo, 5) {
                for &g_hi in &range_samples(region_a.g_hi, 5) {
                    if g_lo > g_hi {
                        continue;
                    }
                    let g = Interval::new(g_lo, g_hi)?;
                    if !region_b.contains(g, SET_TOL) {
                        found = Some(g);
                        break 'corner;
                    }
                }
            }
            found
        };
        per_c.push(InclusionPerC {
            c,
            region_a,
            region_b,
            subset,
            witness,
        });
    }
    let overall = per_c.iter().all(|p| p.subset);
    Ok(InclusionReport {
        per_c,
        overall,
        weak_eff_at_u: verdict.weak_efficient,
        efficient_at_u: verdict.efficient,
        values_equal_at_u,
        width_condition,
    })
}

/// Membership of `(Ĝ, c)` in the augmented normal cone to the box `Y`
/// at `u`: `Ĝᵀ⊙(y−u) ⊖_gH c‖y−u‖ ⪯ 0` for all grid `y ∈ Y`.
pub fn normal_cone_member_check(
    domain: &[(f64, f64)],
    u: &[f64],
    cand: &WeakCandidate,
    grid: &GridSpec,
    tol: f64,
) -> Result<(bool, Option<Vec<f64>>)> {
    if u.len() != domain.len() {
        return Err(Error::DimensionMismatch {
            expected: domain.len(),
            actual: u.len(),
        });
    }
    for (v, &(lo, hi)) in u.iter().zip(domain) {
        if *v < lo - 1e-12 || *v > hi + 1e-12 {
            return Err(Error::OutOfDomain(u.to_vec()));
        }
    }
    for y in grid.points(domain) {
        let d: Vec<f64> = y.iter().zip(u).map(|(a, b)| a - b).collect();
        let dist = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if dist == 0.0 {
            continue;
        }
        let lhs = cand
            .g
            .inner_product(&d)?
            .gh_sub(Interval::point(cand.c * dist));
        if !lhs.preceq(Interval::ZERO, tol) {
            return Ok((false, Some(y)));
        }
    }
    Ok((true, None))
}

/// Result of the zero-inclusion optimality condition
/// `(0, 0) ∈ ∂ʷΦ(u) ⊕ N^c_Y(u)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZeroOptimality {
    pub holds: bool,
    /// the subdifferential half of the decomposition `(0,0) = (0,0) ⊕ (0,0)`
    pub in_subdiff: bool,
    pub witness: Option<Vec<f64>>,
}

/// Tests the zero inclusion through the membership sweep of the zero
/// candidate. (The indicator extension is implicit: sweeps are already
/// restricted to the domain box, and the zero candidate is trivially in
/// the normal cone.) Equivalent to weak efficiency of `u`, but computed
/// through a different code path.
pub fn zero_optimality_check(
    f: &dyn IntervalFn,
    u: &[f64],
    grid: &GridSpec,
    tol: f64,
) -> Result<ZeroOptimality> {
    let cand = WeakCandidate::new(IntervalVector::zeros(f.dim())?, 0.0)?;
    let (member, witness) = member_check(f, u, &cand, grid, tol)?;
    Ok(ZeroOptimality {
        holds: member,
        in_subdiff: member,
        witness,
    })
}

/// Evaluates `sup { Ĝᵀ⊙(y−u) ⊖_gH c‖y−u‖ : (Ĝ,c) ∈ ∂ʷΦ(u) }` by
/// sampling region members across `c_list`. Under Fréchet
/// differentiability and weak efficiency at an interior `u`, the
/// supremum is the zero interval.
pub fn sup_form_check(
    f: &dyn IntervalFn,
    u: f64,
    y: f64,
    c_list: &[f64],
    grid: &GridSpec,
    samples: usize,
) -> Result<Interval> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            actual: f.dim(),
        });
    }
    let k = samples.max(2);
    let mut values = Vec::new();
    for &c in c_list {
        let region = region_1d(f, u, c, grid, DEFAULT_TOL)?;
        if region.empty {
            continue;
        }
        for &g_lo in &range_samples(region.g_lo, k) {
            for &g_hi in &range_samples(region.g_hi, k) {
                if g_lo > g_hi {
                    continue;
                }
                let t = y - u;
                let v = Interval::new(g_lo, g_hi)?
                    .scalar_mul(t)
                    .gh_sub(Interval::point(c * t.abs()));
                values.push(v);
            }
        }
    }
    if values.is_empty() {
        return Err(Error::Precondition(
            "no subdifferential members found across c_list".into(),
        ));
    }
    let (_, sup) = family_inf_sup(&values)?;
    Ok(sup)
}
