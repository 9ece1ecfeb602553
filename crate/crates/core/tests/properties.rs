use std::sync::Arc;

use nearly::functions::{
    dyadic_simple_approx, pos_neg_decompose, sup_on, FnFamily, Function, LinearPiece, MeasurableFn,
    PiecewiseLinear, PointwiseSequence, RampSpike, StepDecay, StepFunction,
};
use nearly::interval::{dyadic, int, rat, ExtendedRational, Interval, IntervalSet, Rational};
use nearly::principles::{
    dini_index, egoroff_classical, egoroff_dini, fourth_converse_bound, fourth_principle, lusin, lusin_classical,
    lusin_step, principle1_decompose, refine_egoroff, Certificate, DiniAlgorithm, DEFAULT_CAP,
};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn unit() -> Interval {
    Interval::closed(int(0), int(1)).unwrap()
}

fn raw_intervals(max: usize, den: i64) -> impl Strategy<Value = Vec<Interval>> {
    prop::collection::vec((0..=den, 0..=den, any::<bool>(), any::<bool>()), 0..=max).prop_map(move |raw| {
        raw.into_iter()
            .filter_map(|(a, b, lc, hc)| {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                Interval::try_new(rat(lo, den), rat(hi, den), lc, hc)
            })
            .collect()
    })
}

fn set(max: usize) -> impl Strategy<Value = IntervalSet> {
    raw_intervals(max, 64).prop_map(|raw| IntervalSet::normalize(raw, unit()).unwrap())
}

/// Sorted distinct cut points `0 = x_0 < … < x_k = 1` on a grid of sixteenths.
fn cuts() -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::btree_set(1..16i64, 0..6).prop_map(|inner| {
        let mut xs = vec![int(0)];
        xs.extend(inner.into_iter().map(|k| rat(k, 16)));
        xs.push(int(1));
        xs
    })
}

fn atoms(xs: &[Rational]) -> Vec<Interval> {
    let last = xs.len() - 2;
    (0..=last).map(|i| Interval::new(xs[i].clone(), xs[i + 1].clone(), true, i == last).unwrap()).collect()
}

fn step_fn() -> impl Strategy<Value = StepFunction> {
    cuts().prop_flat_map(|xs| {
        let k = xs.len() - 1;
        (Just(xs), prop::collection::vec(-8..=8i64, k)).prop_map(|(xs, vs)| {
            let pieces = atoms(&xs)
                .into_iter()
                .zip(vs)
                .map(|(iv, v)| (IntervalSet::from_interval(iv, unit()).unwrap(), rat(v, 2).into()))
                .collect();
            StepFunction::new(unit(), pieces).unwrap()
        })
    })
}

/// Piecewise linear on `[0,1]`; each piece runs from `(x_i, a_i)` to `(x_{i+1}, b_i)`.
/// With `continuous` set, `b_i = a_{i+1}`.
fn pl_fn(lo: i64, hi: i64, continuous: bool) -> impl Strategy<Value = PiecewiseLinear> {
    cuts().prop_flat_map(move |xs| {
        let k = xs.len() - 1;
        (Just(xs), prop::collection::vec(lo..=hi, k + 1), prop::collection::vec(lo..=hi, k)).prop_map(
            move |(xs, nodes, rights)| {
                let pieces = atoms(&xs)
                    .into_iter()
                    .enumerate()
                    .map(|(i, iv)| {
                        let a = rat(nodes[i], 4);
                        let b = if continuous { rat(nodes[i + 1], 4) } else { rat(rights[i], 4) };
                        let slope = (&b - &a) / (&xs[i + 1] - &xs[i]);
                        let offset = &a - &slope * &xs[i];
                        LinearPiece::new(iv, slope, offset)
                    })
                    .collect();
                PiecewiseLinear::new(unit(), pieces).unwrap()
            },
        )
    })
}

fn probes(f: &Function) -> Vec<Rational> {
    let mut xs: Vec<Rational> = (0..=96).map(|j| rat(j, 96)).collect();
    xs.extend(f.breakpoints());
    xs
}

fn eval(f: &Function, x: &Rational) -> ExtendedRational {
    f.eval(x).unwrap()
}

fn round_trips(cert: Certificate) {
    assert_eq!(Certificate::from_json(&cert.to_json()).unwrap(), cert);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_idempotent(s in set(12)) {
        let again = IntervalSet::normalize(s.components().to_vec(), unit()).unwrap();
        prop_assert_eq!(&again, &s);
        for w in s.components().windows(2) {
            prop_assert!(w[0].hi() <= w[1].lo());
            prop_assert!(w[0].hi() < w[1].lo() || (!w[0].hi_closed() && !w[1].lo_closed()));
        }
    }

    #[test]
    fn membership_matches_raw_union(raw in raw_intervals(12, 64)) {
        let s = IntervalSet::normalize(raw.clone(), unit()).unwrap();
        let mut xs: Vec<Rational> = (0..=1000).map(|j| rat(j, 1000)).collect();
        xs.extend(raw.iter().flat_map(|iv| [iv.lo().clone(), iv.hi().clone(), iv.midpoint()]));
        for x in &xs {
            prop_assert_eq!(s.contains(x), raw.iter().any(|iv| iv.contains(x)), "at {}", x);
        }
    }

    #[test]
    fn measure_is_modular_monotone_subadditive(a in set(10), b in set(10)) {
        let u = a.union(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(u.measure() + i.measure(), a.measure() + b.measure());
        prop_assert!(i.measure() <= a.measure() && a.measure() <= u.measure());
        prop_assert!(u.measure() <= a.measure() + b.measure());
        prop_assert_eq!(a.complement().measure(), int(1) - a.measure());
        prop_assert_eq!(a.difference(&b).unwrap().measure(), a.measure() - i.measure());
        prop_assert!(i.is_subset_of(&a).unwrap() && a.is_subset_of(&u).unwrap());
    }

    #[test]
    fn closed_subset_within_budget(s in set(12), k in 1..1000i64) {
        let eps = rat(1, k);
        let c = s.closed_subset_within(&eps).unwrap();
        prop_assert!(c.is_closed());
        prop_assert!(c.is_subset_of(&s).unwrap());
        prop_assert!(s.difference(&c).unwrap().measure() < eps);
    }

    #[test]
    fn levels_nest_and_agree_with_eval(p in pl_fn(-8, 8, false), s in step_fn(), t1 in -8..=8i64, dt in 0..=8i64) {
        for f in [Function::from(p), Function::from(s)] {
            let (t1, t2) = (rat(t1, 4), rat(t1 + dt, 4));
            prop_assert!(f.level_gt(&t1).is_subset_of(&f.level_ge(&t1)).unwrap());
            prop_assert!(f.level_ge(&t2).is_subset_of(&f.level_ge(&t1)).unwrap());
            if dt > 0 {
                prop_assert!(f.level_ge(&t2).is_subset_of(&f.level_gt(&t1)).unwrap());
            }
            let gt = f.level_gt(&t1);
            let lt = f.level_lt(&t1);
            for x in probes(&f) {
                let v = eval(&f, &x);
                prop_assert_eq!(gt.contains(&x), v.cmp_rational(&t1).is_gt(), "at {}", x);
                prop_assert_eq!(lt.contains(&x), v.cmp_rational(&t1).is_lt(), "at {}", x);
            }
        }
    }

    #[test]
    fn positive_and_negative_parts(p in pl_fn(-8, 8, false)) {
        let f = Function::from(p);
        let (pos, neg) = pos_neg_decompose(&f).unwrap();
        prop_assert!(pos.is_nonnegative() && neg.is_nonnegative());
        for x in probes(&f) {
            prop_assert_eq!(eval(&pos, &x).checked_sub(&eval(&neg, &x)).unwrap(), eval(&f, &x));
            let zero = ExtendedRational::zero();
            prop_assert!(eval(&pos, &x) == zero || eval(&neg, &x) == zero);
        }
    }

    #[test]
    fn dyadic_approximations_climb_to_f(p in pl_fn(0, 8, false), n in 1u32..6) {
        // values lie in [0,2]
        let f = Function::from(p);
        let s = Function::from(dyadic_simple_approx(&f, n).unwrap());
        let s_next = Function::from(dyadic_simple_approx(&f, n + 1).unwrap());
        let mut xs = probes(&f);
        xs.extend(s.breakpoints());
        xs.extend(s_next.breakpoints());
        for x in &xs {
            let (a, b, c) = (eval(&s, x), eval(&s_next, x), eval(&f, x));
            prop_assert!(a <= b && b <= c, "at {}: {} {} {}", x, a, b, c);
        }
        if n >= 2 {
            let gap = sup_on(&f.sub(&s).unwrap(), f.domain()).unwrap();
            prop_assert!(gap <= ExtendedRational::from(dyadic(n)), "gap {}", gap);
        }
    }

    #[test]
    fn first_principle_on_random_sets(raw in raw_intervals(50, 1000), k in prop::sample::select(vec![10i64, 1000, 1_000_000])) {
        let e = IntervalSet::normalize(raw, unit()).unwrap();
        let eps = rat(1, k);
        let c = principle1_decompose(&e, &eps).unwrap();
        prop_assert!(c.k.is_closed());
        prop_assert_eq!(c.k.union(&c.f).unwrap(), e.clone());
        prop_assert!(c.k.is_subset_of(&e).unwrap());
        prop_assert!(c.f.measure() < eps && c.loss < eps);
        round_trips(c.into());
    }

    #[test]
    fn fourth_principle_converse(s in step_fn(), inf_at in 0..=16i64, kmax in 1..12i64) {
        // +∞ on a single point, a null set
        let pole = IntervalSet::from_interval(Interval::point(rat(inf_at, 16)), unit()).unwrap();
        let mut pieces: Vec<_> =
            s.pieces().iter().map(|p| (p.carrier.difference(&pole).unwrap(), p.value.clone())).collect();
        pieces.push((pole, ExtendedRational::PosInfinity));
        let f = Function::from(StepFunction::new(unit(), pieces).unwrap());
        let certs: Vec<_> = (1..=kmax).map(|k| fourth_principle(&f, &rat(1, k), DEFAULT_CAP).unwrap()).collect();
        for (k, c) in (1..=kmax).zip(&certs) {
            prop_assert!(c.loss < rat(1, k));
            prop_assert!(!c.k.contains(&rat(inf_at, 16)));
            round_trips(c.clone().into());
        }
        let bound = fourth_converse_bound(&f, &certs).unwrap();
        prop_assert!(bound < rat(1, kmax));
    }

    #[test]
    fn dini_algorithms_agree(limit in pl_fn(-4, 4, true), g in pl_fn(0, 8, true), k in 2..40i64) {
        let limit = Function::from(limit);
        let g = Function::from(g);
        let lim = limit.clone();
        let gg = g.clone();
        let fam = FnFamily::new("f+g/n", move |n| lim.add(&gg.scale(&rat(1, n as i64))?)).declared_monotone();
        let eps = rat(1, k);
        let dom = limit.domain().clone();
        let sup = dini_index(&fam, &limit, &dom, &eps, DiniAlgorithm::Sup, DEFAULT_CAP).unwrap();
        let cover = dini_index(&fam, &limit, &dom, &eps, DiniAlgorithm::Cover, DEFAULT_CAP).unwrap();
        prop_assert_eq!(sup.index, cover.index);
        // g is continuous on [0,1], so its sup G is attained and n must exceed G/ε
        let top = match sup_on(&g, &dom).unwrap() {
            ExtendedRational::Finite(r) => r,
            other => panic!("unbounded {other}"),
        };
        let expect = (top / &eps).floor() + Rational::one();
        prop_assert_eq!(int(sup.index as i64), expect.max(Rational::one()));
        round_trips(sup.into());
        round_trips(cover.into());
    }

    #[test]
    fn lusin_step_separates(s in step_fn(), k in 2..200i64) {
        let eps = rat(1, k);
        let c = lusin_step(&s, &eps).unwrap();
        let f = Function::from(s);
        prop_assert!(c.k.is_closed() && c.loss < eps);
        prop_assert!(f.is_continuous_on(&c.k));
        let top = sup_on(&f.abs().unwrap(), &c.k).unwrap();
        prop_assert!(top.is_finite());
        round_trips(c.into());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lusin_paths_are_sound(p in pl_fn(-8, 8, false), k in 2..50i64) {
        let f = Function::from(p);
        let eps = rat(1, k);
        for path in [lusin, lusin_classical] {
            let c = path(&f, &eps, 6, DEFAULT_CAP).unwrap();
            prop_assert!(c.k.is_closed() && c.k.is_subset_of(f.domain()).unwrap());
            prop_assert!(c.loss < eps);
            prop_assert_eq!(c.loss.clone(), f.domain().difference(&c.k).unwrap().measure());
            // bounded on a Lusin set
            prop_assert!(sup_on(&f.abs().unwrap(), &c.k).unwrap().is_finite());
            if c.continuity_witness.is_exact() {
                prop_assert!(f.is_continuous_on(&c.k));
            }
            round_trips(c.into());
        }
    }

    #[test]
    fn egoroff_paths_are_sound(a in 0..8i64, w in 1..8i64, carrier in set(4), k in 2..200i64, ladder in 1u64..5) {
        let spike = RampSpike::new(rat(a, 16), rat(a + w, 16), unit()).unwrap();
        let decay = StepDecay::new(carrier, IntervalSet::full(unit())).unwrap();
        let seqs = [
            PointwiseSequence::from_monotone(spike.limit(), Arc::new(spike)).unwrap(),
            PointwiseSequence::from_monotone(decay.limit(), Arc::new(decay)).unwrap(),
        ];
        let eps = rat(1, k);
        for seq in &seqs {
            for c in [egoroff_classical(seq, &eps, ladder, DEFAULT_CAP).unwrap(), egoroff_dini(seq, &eps, ladder, DEFAULT_CAP).unwrap()] {
                prop_assert!(c.k.is_closed() && c.loss < eps);
                prop_assert_eq!(c.index_table.len() as u64, ladder);
                for m in 1..=ladder {
                    let t = rat(1, m as i64);
                    let nu = c.nu(m);
                    prop_assert!(c.k.is_subset_of(&seq.tail_lt(nu, &t).unwrap()).unwrap());
                    let worst = sup_on(&seq.deviation(nu).unwrap(), &c.k).unwrap();
                    prop_assert!(worst <= ExtendedRational::from(t));
                }
                round_trips(c.into());
            }
        }
    }

    #[test]
    fn refinement_shrinks_k_and_keeps_prefix(a in 0..8i64, w in 1..8i64, k in 2..200i64, ladder in 1u64..4, more in 1u64..3) {
        let spike = RampSpike::new(rat(a, 16), rat(a + w, 16), unit()).unwrap();
        let seq = PointwiseSequence::from_monotone(spike.limit(), Arc::new(spike)).unwrap();
        let eps = rat(1, k);
        let c = egoroff_classical(&seq, &eps, ladder, DEFAULT_CAP).unwrap();
        let r = refine_egoroff(&c, &seq, ladder + more, DEFAULT_CAP).unwrap();
        prop_assert!(r.k.is_subset_of(&c.k).unwrap());
        prop_assert_eq!(&r.index_table[..ladder as usize], &c.index_table[..]);
        prop_assert!(r.loss < eps && r.loss >= c.loss);
        let direct = egoroff_classical(&seq, &eps, ladder + more, DEFAULT_CAP).unwrap();
        prop_assert_eq!(&r.index_table, &direct.index_table);
    }
}

#[test]
fn tiny_sets_keep_zero_loss() {
    let e = IntervalSet::parse("[0,1/3] u {1/2}", unit()).unwrap();
    let c = principle1_decompose(&e, &rat(1, 10)).unwrap();
    assert!(c.loss.is_zero());
    assert_eq!(c.k, e);
}
