use proptest::prelude::*;

use broomcalc::complexity::{absolute_bound, talagrand_family, y_complexity, ClassName};
use broomcalc::gen;
use broomcalc::rank::{broom_rank, derivative, rank_iterative, rank_union, tree_rank};
use broomcalc::sexp::{parse_admissible, parse_broom, write_admissible};
use broomcalc::talpha::{canonical_admissible, check_admissible, talpha_truncate};
use broomcalc::{class_of, pi, pi_inverse, FinSeq, InfSeq, Ordinal, Parity, RankValue, Term};

fn ordinal() -> impl Strategy<Value = Ordinal> {
    any::<u64>().prop_map(|s| gen::ordinal(&mut gen::rng(s)))
}

fn fin_seq() -> impl Strategy<Value = FinSeq> {
    prop::collection::vec(0u64..6, 0..6).prop_map(FinSeq::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_associative(a in ordinal(), b in ordinal(), c in ordinal()) {
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
    }

    #[test]
    fn addition_is_monotone_on_the_right(a in ordinal(), b in ordinal(), c in ordinal()) {
        if b < c {
            prop_assert!(a.add(&b) < a.add(&c));
        }
        prop_assert!(a.add(&b) >= b);
    }

    #[test]
    fn left_subtraction_inverts_addition(a in ordinal(), b in ordinal()) {
        prop_assert_eq!(a.add(&b).checked_sub_left(&a), Some(b.clone()));
        match b.checked_sub_left(&a) {
            Some(d) => prop_assert_eq!(a.add(&d), b),
            None => prop_assert!(a > b),
        }
    }

    #[test]
    fn text_form_round_trips(a in ordinal()) {
        prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
    }

    #[test]
    fn parity_follows_the_finite_part(a in ordinal(), n in 0u64..9) {
        let flip = n % 2 == 1;
        let p = a.add(&Ordinal::nat(n)).parity();
        let expected = if (a.parity() == Parity::Odd) != flip { Parity::Odd } else { Parity::Even };
        prop_assert_eq!(p, expected);
    }

    #[test]
    fn enumeration_inverts(a in ordinal(), n in 0u64..60) {
        let alpha = a.add(&Ordinal::omega());
        let beta = pi(&alpha, n).unwrap();
        prop_assert!(beta < alpha);
        prop_assert_eq!(pi_inverse(&alpha, &beta).unwrap(), n);
    }

    #[test]
    fn concatenation_and_restriction(s in fin_seq(), t in fin_seq()) {
        let st = s.concat(&t);
        prop_assert_eq!(st.len(), s.len() + t.len());
        prop_assert!(st.extends(&s));
        prop_assert_eq!(st.restrict(s.len()).unwrap(), s.clone());
        prop_assert_eq!(st.suffix_from(s.len()), t);
        prop_assert!(s.prefixes().all(|p| s.extends(&p)));
    }

    #[test]
    fn infinite_sequences_normalise(
        prefix in prop::collection::vec(0u64..4, 0..4),
        period in prop::collection::vec(0u64..4, 1..4),
        reps in 1usize..3,
    ) {
        let a = InfSeq::new(prefix.clone(), period.clone()).unwrap();
        let mut longer = prefix.clone();
        longer.extend(period.iter().cycle().take(period.len() * reps));
        let repeated: Vec<u64> = period.iter().cycle().take(period.len() * 2).copied().collect();
        let b = InfSeq::new(longer, repeated).unwrap();
        prop_assert_eq!(&a, &b);
        for i in 0..20 {
            prop_assert_eq!(a.get(i), b.get(i));
        }
        prop_assert_eq!(a.to_string().parse::<InfSeq>().unwrap(), a);
    }

    #[test]
    fn broom_text_round_trips(seed in any::<u64>()) {
        let b = gen::broom(&mut gen::rng(seed), 3);
        prop_assert_eq!(parse_broom(&b.to_string()).unwrap(), b);
    }

    #[test]
    fn class_and_rank_ignore_handles_and_suffixes(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let b = gen::broom(&mut rng, 3);
        let rule = gen::suffix_rule(&mut rng);
        let h = gen::fin_seq(&mut rng, 3, 5);
        let moved = b.extend_finitely(&rule).prefix(&h);
        prop_assert_eq!(class_of(&moved).unwrap(), class_of(&b).unwrap());
        prop_assert_eq!(broom_rank(&moved), broom_rank(&b));
    }

    #[test]
    fn class_level_is_rank(seed in any::<u64>()) {
        let b = gen::broom(&mut gen::rng(seed), 3);
        let tag = class_of(&b).unwrap();
        let r = broom_rank(&b);
        if tag.is_btilde() {
            prop_assert_eq!(r, RankValue::Countable(tag.level.clone()));
        } else {
            prop_assert!(r <= RankValue::Countable(tag.level.clone()));
        }
    }

    #[test]
    fn derivative_lowers_finite_rank_by_one(seed in any::<u64>()) {
        let t = gen::broom(&mut gen::rng(seed), 3).to_tree();
        let r = tree_rank(&t);
        let d = tree_rank(&derivative(&t));
        match r.ordinal().and_then(Ordinal::as_nat) {
            Some(0) => prop_assert_eq!(d, RankValue::Empty),
            Some(n) => prop_assert_eq!(d, RankValue::nat(n - 1)),
            None => prop_assert!(false, "finite levels give finite ranks"),
        }
        let n = r.ordinal().and_then(Ordinal::as_nat).unwrap();
        prop_assert_eq!(rank_iterative(&t, n + 2), Some(r));
    }

    #[test]
    fn union_rank_is_max(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let terms: Vec<Term> = (0..3).map(|_| Term::Broom(gen::broom(&mut rng, 2))).collect();
        let report = rank_union(&terms).unwrap();
        prop_assert_eq!(&report.rank, report.members.iter().max().unwrap());
        prop_assert_eq!(report.iterative.as_ref(), Some(&report.rank));
    }

    #[test]
    fn truncations_are_trees_inside_the_term(seed in any::<u64>()) {
        let t = gen::broom(&mut gen::rng(seed), 2).to_tree();
        let tr = t.truncate(3, 8);
        prop_assert!(tr.is_prefix_closed());
        prop_assert!(tr.nodes().iter().all(|s| t.member(s)));
    }

    #[test]
    fn canonical_maps_are_admissible(seed in any::<u64>(), depth in 0usize..5) {
        let mut rng = gen::rng(seed);
        let sigma = gen::inf_seq(&mut rng, 5);
        let alpha = ["1", "2", "w", "w+1"][(seed % 4) as usize].parse::<Ordinal>().unwrap();
        let phi = canonical_admissible(&sigma, &alpha);
        prop_assert!(check_admissible(&phi, 3, depth).unwrap().passed());
        let table = phi.tabulate(3, depth).unwrap();
        prop_assert_eq!(parse_admissible(&write_admissible(&table)).unwrap(), table);
    }

    #[test]
    fn maximal_trees_are_prefix_closed(a in ordinal(), breadth in 1usize..4, depth in 0usize..4) {
        let alpha = a.add(&Ordinal::one());
        let t = talpha_truncate(&alpha, breadth, depth);
        prop_assert!(t.is_prefix_closed());
        prop_assert!(t.nodes().iter().all(|s| s.len() <= depth));
    }

    #[test]
    fn y_levels_are_odd(a in ordinal()) {
        if !a.is_zero() {
            let y = y_complexity(&a);
            prop_assert_eq!(y.level().parity(), Parity::Odd);
        }
    }

    #[test]
    fn composition_gives_next_level(a in ordinal()) {
        let alpha = a.add(&Ordinal::nat(4));
        if alpha.parity() == Parity::Even {
            let c = absolute_bound(&talagrand_family(&alpha).unwrap()).unwrap();
            prop_assert_eq!(c, ClassName::f(alpha.succ()));
        }
    }
}
