use proptest::prelude::*;

use imprecise::assessment::{AssessmentSet, ConditionalAssessment, ConditioningFamily};
use imprecise::cone::{natex_cone, ConeValue};
use imprecise::instance::{load, serialize_instance, to_json, Document, Instance, Validated};
use imprecise::lp::{LinearProgram, LpOutcome, Relation, Sense};
use imprecise::measurable::{is_simple_measurable, Measurability};
use imprecise::rational::{int, q, Rational};
use imprecise::space::{Event, Gamble, ProductSpace, Space};

fn space(n: usize) -> Space {
    Space::new((0..n).map(|i| format!("x{i}"))).unwrap()
}

fn gamble(s: &Space, values: &[i64]) -> Gamble {
    Gamble::from_ints(s, values).unwrap()
}

fn values(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(lo..=hi, n)
}

fn mask(n: usize) -> impl Strategy<Value = Vec<bool>> {
    prop::collection::vec(any::<bool>(), n).prop_filter("non-empty", |m| m.iter().any(|&b| b))
}

/// A space size with a list of generators and a probe gamble on it.
fn cone_case() -> impl Strategy<Value = (usize, Vec<Vec<i64>>, Vec<i64>)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(values(n, -3, 3), 0..=4), values(n, -3, 3)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn indicators_sum_to_event_size(m in (1usize..=6).prop_flat_map(mask)) {
        let s = space(m.len());
        let e = Event::from_mask(&s, m).unwrap();
        let ind = e.indicator();
        prop_assert!(ind.values().iter().all(|v| *v == int(0) || *v == int(1)));
        let total: Rational = ind.values().iter().sum();
        prop_assert_eq!(total, int(e.size() as i64));
    }

    #[test]
    fn cylindrical_extension_is_linear(
        (f, g) in (1usize..=3).prop_flat_map(|n| (values(n, -5, 5), values(n, -5, 5))),
        m in 1usize..=3,
        a in -4i64..=4,
        b in 1i64..=4,
        factor in 1usize..=2,
    ) {
        let s1 = space(f.len());
        let s2 = Space::new((0..m).map(|i| format!("y{i}"))).unwrap();
        let p = ProductSpace::new(&s1, &s2);
        let (f, g) = (gamble(&s1, &f), gamble(&s1, &g));
        let (p, factor) = if factor == 1 { (p, 1) } else { (ProductSpace::new(&s2, &s1), 2) };
        let (alpha, beta) = (q(a, b), q(b, a.abs() + 1));
        let combo = &f.scale(&alpha) + &g.scale(&beta);
        let lhs = p.cylindrical_extension(&combo, factor).unwrap();
        let rhs = &p.cylindrical_extension(&f, factor).unwrap().scale(&alpha)
            + &p.cylindrical_extension(&g, factor).unwrap().scale(&beta);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn lp_primal_and_dual_optima_coincide(
        (rows, b, c) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (
            prop::collection::vec(values(n, -3, 3), m),
            values(m, 0, 4),
            values(n, -3, 3),
        )),
    ) {
        let (m, n) = (rows.len(), c.len());
        let mut primal = LinearProgram::new(n, Sense::Maximize);
        primal.set_objective(c.iter().map(|&v| int(v)).collect());
        for (row, &rhs) in rows.iter().zip(&b) {
            primal.add_constraint(row.iter().map(|&v| int(v)).collect(), Relation::Le, int(rhs));
        }
        let mut dual = LinearProgram::new(m, Sense::Minimize);
        dual.set_objective(b.iter().map(|&v| int(v)).collect());
        for j in 0..n {
            dual.add_constraint(rows.iter().map(|r| int(r[j])).collect(), Relation::Ge, int(c[j]));
        }
        match primal.solve() {
            LpOutcome::Optimal { value, witness } => {
                prop_assert!(primal.is_satisfied_by(&witness));
                prop_assert_eq!(dual.solve().value().cloned(), Some(value));
            }
            LpOutcome::Unbounded => prop_assert_eq!(dual.solve(), LpOutcome::Infeasible),
            LpOutcome::Infeasible => prop_assert!(false, "x = 0 is feasible"),
        }
    }

    #[test]
    fn nonnegative_gambles_are_desirable((n, gens, probe) in cone_case()) {
        let s = space(n);
        let cone = natex_cone(&gens.iter().map(|g| gamble(&s, g)).collect::<Vec<_>>(), &s).unwrap();
        let g = gamble(&s, &probe.iter().map(|v| v.abs()).collect::<Vec<_>>());
        prop_assume!(!g.is_zero());
        prop_assert!(cone.membership(&g).unwrap().member);
    }

    #[test]
    fn membership_is_closed_under_scaling_and_addition(
        (n, gens, f) in cone_case(),
        h in values(4, -3, 3),
        k in 1i64..=5,
    ) {
        let s = space(n);
        let generators: Vec<Gamble> = gens.iter().map(|g| gamble(&s, g)).collect();
        let cone = natex_cone(&generators, &s).unwrap();
        let f = gamble(&s, &f);
        let h = gamble(&s, &h[..n]);
        let (rf, rh) = (cone.membership(&f).unwrap(), cone.membership(&h).unwrap());
        prop_assume!(rf.member && rh.member);
        let (cf, ch) = (rf.certificate.unwrap(), rh.certificate.unwrap());
        let sum = &f + &h;
        let lambda: Vec<Rational> = cf.lambda.iter().zip(&ch.lambda).map(|(a, b)| a + b).collect();
        let mut rebuilt = &cf.slack + &ch.slack;
        for (l, g) in lambda.iter().zip(cone.generators()) {
            rebuilt = &rebuilt + &g.scale(l);
        }
        prop_assert_eq!(&rebuilt, &sum);
        prop_assert!(cf.slack.is_nonnegative() && ch.slack.is_nonnegative());
        prop_assert!(cone.membership(&sum).unwrap().member);
        prop_assert!(cone.membership(&f.scale(&q(k, 3))).unwrap().member);
    }

    #[test]
    fn avoiding_partial_loss_excludes_nonpositive_gambles((n, gens, probe) in cone_case()) {
        let s = space(n);
        let cone = natex_cone(&gens.iter().map(|g| gamble(&s, g)).collect::<Vec<_>>(), &s).unwrap();
        let report = cone.avoids_partial_loss();
        let nonpositive = gamble(&s, &probe.iter().map(|v| -v.abs()).collect::<Vec<_>>());
        if report.avoids_partial_loss {
            prop_assert!(!cone.membership(&nonpositive).unwrap().member);
            prop_assert!(!cone.membership(&s.zero_gamble()).unwrap().member);
        } else {
            let lambda = report.certificate.unwrap();
            prop_assert_eq!(lambda.iter().sum::<Rational>(), int(1));
            let mut combo = s.zero_gamble();
            for (l, g) in lambda.iter().zip(cone.generators()) {
                prop_assert!(*l >= int(0));
                combo = &combo + &g.scale(l);
            }
            prop_assert!(combo.is_nonpositive());
        }
    }

    #[test]
    fn adding_members_changes_nothing((n, gens, probe) in cone_case(), extra in values(4, -3, 3), m in mask(4)) {
        let s = space(n);
        let generators: Vec<Gamble> = gens.iter().map(|g| gamble(&s, g)).collect();
        let cone = natex_cone(&generators, &s).unwrap();
        let extra = gamble(&s, &extra[..n]);
        prop_assume!(cone.membership(&extra).unwrap().member);
        let mut more = generators.clone();
        more.push(extra);
        let bigger = natex_cone(&more, &s).unwrap();
        let f = gamble(&s, &probe);
        prop_assume!(m[..n].iter().any(|&b| b));
        let b = Event::from_mask(&s, m[..n].to_vec()).unwrap();
        prop_assert_eq!(cone.membership(&f).unwrap().member, bigger.membership(&f).unwrap().member);
        prop_assert_eq!(cone.lower_prevision(&f, &b).unwrap(), bigger.lower_prevision(&f, &b).unwrap());
    }

    #[test]
    fn cones_grow_with_their_generators((n, gens, probe) in cone_case(), extra in values(4, -3, 3)) {
        let s = space(n);
        let small: Vec<Gamble> = gens.iter().map(|g| gamble(&s, g)).collect();
        let mut large = small.clone();
        large.push(gamble(&s, &extra[..n]));
        let f = gamble(&s, &probe);
        if natex_cone(&small, &s).unwrap().membership(&f).unwrap().member {
            prop_assert!(natex_cone(&large, &s).unwrap().membership(&f).unwrap().member);
        }
    }

    #[test]
    fn cone_values_lie_between_extremes((n, gens, probe) in cone_case(), m in mask(4)) {
        let s = space(n);
        let cone = natex_cone(&gens.iter().map(|g| gamble(&s, g)).collect::<Vec<_>>(), &s).unwrap();
        prop_assume!(cone.avoids_partial_loss().avoids_partial_loss);
        prop_assume!(m[..n].iter().any(|&b| b));
        let b = Event::from_mask(&s, m[..n].to_vec()).unwrap();
        let f = gamble(&s, &probe);
        match cone.lower_prevision(&f, &b).unwrap() {
            ConeValue::Finite(v) => prop_assert!(f.min_on(&b) <= v && v <= f.max_on(&b)),
            ConeValue::PlusInfinity => prop_assert!(false, "bounded when partial loss is avoided"),
        }
    }

    #[test]
    fn decompositions_reconstruct_and_combine(
        (n, g, h, fam) in (2usize..=4).prop_flat_map(|n| (
            Just(n),
            values(n, 0, 4),
            values(n, 0, 4),
            prop::collection::vec(mask(n), 0..=4),
        )),
        k in 0i64..=4,
    ) {
        let s = space(n);
        let fam = ConditioningFamily::new(&s, fam.into_iter().map(|m| Event::from_mask(&s, m).unwrap())).unwrap();
        let (g, h) = (gamble(&s, &g), gamble(&s, &h));
        let (Measurability::Simple(dg), Measurability::Simple(dh)) =
            (is_simple_measurable(&g, &fam).unwrap(), is_simple_measurable(&h, &fam).unwrap())
        else {
            return Ok(());
        };
        prop_assert_eq!(&dg.reconstruct(&g), &g);
        prop_assert!(dg.uses_only(&fam));
        let sum = dg.combine(&dh);
        prop_assert_eq!(sum.reconstruct(&g), &g + &h);
        prop_assert!(is_simple_measurable(&(&g + &h), &fam).unwrap().is_measurable());
        let scaled = g.scale(&int(k));
        prop_assert_eq!(dg.scale(&int(k)).reconstruct(&g), scaled.clone());
        prop_assert!(is_simple_measurable(&scaled, &fam).unwrap().is_measurable());
    }

    #[test]
    fn validation_inverts_serialization(
        (n, rows) in (1usize..=4).prop_flat_map(|n| (
            Just(n),
            prop::collection::vec((values(n, -3, 3), mask(n), -6i64..=6, 1i64..=4), 0..=4),
        )),
    ) {
        let s = space(n);
        let mut set = AssessmentSet::vacuous(&s);
        let mut seen = Vec::new();
        for (g, m, num, den) in rows {
            let g = gamble(&s, &g);
            let e = Event::from_mask(&s, m).unwrap();
            if seen.contains(&(g.clone(), e.clone())) {
                continue;
            }
            if let Ok(a) = ConditionalAssessment::new(g.clone(), e.clone(), q(num, den)) {
                seen.push((g, e));
                set.push(a).unwrap();
            }
        }
        let inst = Instance {
            assessments: set,
            gambles: Default::default(),
            families: Default::default(),
            queries: seen.clone(),
        };
        let text = to_json(&Document::Local(serialize_instance(&inst)));
        prop_assert_eq!(load(&text).unwrap(), Validated::Local(inst));
    }
}
