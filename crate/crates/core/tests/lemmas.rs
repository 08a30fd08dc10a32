//! Algebraic laws of the interval arithmetic, exercised on random
//! samples with endpoints in [-10, 10].

use ivfopt_core::{family_inf_sup, DominanceRelation, Interval, IntervalVector};
use proptest::prelude::*;

const TOL: f64 = 1e-12;

fn interval() -> impl Strategy<Value = Interval> {
    (-10.0f64..10.0, -10.0f64..10.0)
        .prop_map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn gh_sub_self_is_zero(x in interval()) {
        prop_assert_eq!(x.gh_sub(x), Interval::ZERO);
    }

    // ε ⪯ (W ⊖_gH Y) ⊖_gH Z  ⟹  Z ⊕ ε ⪯ W ⊖_gH Y
    //
    // W is built as wy ⊕ Y so that W ⊖_gH Y reproduces wy exactly, and ε is
    // scaled into the admissible range, keeping the hypothesis satisfiable.
    #[test]
    fn shift_inequality(wy in interval(), y in interval(), z in interval(),
                        frac in 0.0f64..1.0) {
        let w = wy.add(y).unwrap();
        let d = w.gh_sub(y).gh_sub(z);
        let cap = d.lo().min(d.hi());
        if cap >= 0.0 {
            let e = Interval::point(frac * cap);
            prop_assert!(e.preceq(w.gh_sub(y).gh_sub(z), TOL));
            prop_assert!(z.add(e).unwrap().preceq(w.gh_sub(y), TOL));
        }
    }

    // (X ⊕ Y) ⊖_gH (Z ⊕ W) ⊆ (X ⊖_gH Z) ⊕ (Y ⊖_gH W)
    #[test]
    fn gh_sub_of_sums_subset(x in interval(), y in interval(),
                             z in interval(), w in interval()) {
        let lhs = x.add(y).unwrap().gh_sub(z.add(w).unwrap());
        let rhs = x.gh_sub(z).add(y.gh_sub(w)).unwrap();
        prop_assert!(rhs.lo() <= lhs.lo() + TOL && lhs.hi() <= rhs.hi() + TOL,
            "{lhs} not within {rhs}");
    }

    // 0 ⊖_gH (((-W) ⊖_gH (-Y)) ⊖_gH (-Z)) = (W ⊖_gH Y) ⊖_gH Z, exactly
    #[test]
    fn negation_identity(w in interval(), y in interval(), z in interval()) {
        let lhs = Interval::ZERO.gh_sub(
            w.scalar_mul(-1.0)
                .gh_sub(y.scalar_mul(-1.0))
                .gh_sub(z.scalar_mul(-1.0)),
        );
        let rhs = w.gh_sub(y).gh_sub(z);
        prop_assert_eq!(lhs, rhs);
    }

    // (i) 0 ⪯ X ⊖_gH Y ⟹ 0 ⊖_gH Z ⪯ (X ⊖_gH Y) ⊖_gH Z
    #[test]
    fn order_shift_i(x in interval(), y in interval(), z in interval()) {
        let xy = x.gh_sub(y);
        if Interval::ZERO.preceq(xy, 0.0) {
            prop_assert!(Interval::ZERO.gh_sub(z).preceq(xy.gh_sub(z), TOL));
        }
    }

    // (ii) Z ⪯ X ⊖_gH Y ⟹ Z ⊖_gH W ⪯ (X ⊖_gH Y) ⊖_gH W
    #[test]
    fn order_shift_ii(x in interval(), y in interval(), z in interval(),
                      w in interval()) {
        let xy = x.gh_sub(y);
        if z.preceq(xy, 0.0) {
            prop_assert!(z.gh_sub(w).preceq(xy.gh_sub(w), TOL));
        }
    }

    // (iii) X ⊖_gH Y ⪯ [L,L] ⟹ [-L,-L] ⪯ Y ⊖_gH X
    #[test]
    fn order_shift_iii(x in interval(), y in interval(), slack in 0.0f64..5.0) {
        let d = x.gh_sub(y);
        let l = d.lo().max(d.hi()) + slack;
        prop_assert!(d.preceq(Interval::point(l), TOL));
        prop_assert!(Interval::point(-l).preceq(y.gh_sub(x), TOL));
    }

    // (iv) [-γ,-γ] ⪯ X ⊖_gH Y ⟹ Y ⊖_gH [γ,γ] ⪯ X
    #[test]
    fn order_shift_iv(x in interval(), y in interval(), slack in 0.0f64..5.0) {
        let d = x.gh_sub(y);
        let gamma = -(d.lo().min(d.hi())) + slack;
        prop_assert!(Interval::point(-gamma).preceq(d, TOL));
        prop_assert!(y.gh_sub(Interval::point(gamma)).preceq(x, TOL));
    }

    // (v) Z ⪯ X ⊕ Y ⟹ Z ⊖_gH Y ⪯ X
    #[test]
    fn order_shift_v(x in interval(), y in interval(), z in interval()) {
        if z.preceq(x.add(y).unwrap(), 0.0) {
            prop_assert!(z.gh_sub(y).preceq(x, TOL));
        }
    }

    // -‖y‖·‖Ĉ‖ ≤ ‖yᵀ ⊙ Ĉ‖
    #[test]
    fn inner_product_norm_bound(
        y in prop::collection::vec(-10.0f64..10.0, 1..4),
        cs in prop::collection::vec(
            (-10.0f64..10.0, -10.0f64..10.0), 1..4),
    ) {
        let n = y.len().min(cs.len());
        let y = &y[..n];
        let c = IntervalVector::new(
            cs[..n]
                .iter()
                .map(|&(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
                .collect(),
        )
        .unwrap();
        let ynorm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let lhs = -ynorm * c.norm();
        prop_assert!(lhs <= c.inner_product(y).unwrap().norm() + TOL);
    }

    #[test]
    fn preceq_reflexive_transitive(a in interval(), b in interval(), c in interval()) {
        prop_assert!(a.preceq(a, 0.0));
        if a.preceq(b, 0.0) && b.preceq(c, 0.0) {
            prop_assert!(a.preceq(c, 0.0));
        }
    }

    #[test]
    fn equal_iff_mutual_domination(a in interval(), b in interval()) {
        let mutual = a.preceq(b, 0.0) && b.preceq(a, 0.0);
        prop_assert_eq!(a.dominance(b) == DominanceRelation::Equal, mutual);
    }

    #[test]
    fn inf_sup_bound_the_family(
        fam in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1..8),
    ) {
        let fam: Vec<Interval> = fam
            .into_iter()
            .map(|(a, b)| Interval::new(a.min(b), a.max(b)).unwrap())
            .collect();
        let (inf, sup) = family_inf_sup(&fam).unwrap();
        for x in &fam {
            prop_assert!(inf.preceq(*x, 0.0));
            prop_assert!(x.preceq(sup, 0.0));
        }
    }
}
