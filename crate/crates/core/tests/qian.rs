use codegree_core::builders::{aut_overgroup, build, psl2_with_automorphisms, GroupSpec};
use codegree_core::chartab::character_table;
use codegree_core::perm::{conjugacy_classes, PermGroup, Permutation};
use codegree_core::qian::*;
use codegree_core::Config;

use GroupSpec::*;

fn cfg() -> Config {
    Config::default()
}

fn witness_map(spec: GroupSpec) -> Vec<(u64, u64)> {
    let r = qian_check_spec(&spec, &cfg()).unwrap();
    assert!(r.verdict.passed(), "{spec}");
    r.witnesses.iter().map(|w| (w.order, w.codegree)).collect()
}

fn with_automorphisms(q: u64) -> (PermGroup, Permutation, Permutation) {
    let (s, d, f) = psl2_with_automorphisms(q).unwrap();
    let mut gens = s.generators().to_vec();
    gens.extend([d.clone(), f.clone()]);
    (PermGroup::new(gens).unwrap(), d, f)
}

/// Elements whose normal closure is nilpotent form the Fitting subgroup.
fn fitting_order_oracle(g: &PermGroup) -> u64 {
    let classes = conjugacy_classes(g, 300_000).unwrap();
    (0..classes.len())
        .filter(|&i| {
            let rep = &classes.representatives[i];
            g.normal_closure(std::slice::from_ref(rep))
                .unwrap()
                .is_nilpotent()
        })
        .map(|i| classes.sizes[i])
        .sum()
}

#[test]
fn small_witnesses() {
    assert_eq!(witness_map(Sym(3)), vec![(2, 2), (3, 3)]);
    assert_eq!(witness_map(Alt(5)), vec![(2, 20), (3, 15), (5, 20)]);
    assert_eq!(witness_map(Cyc(1)), vec![]);
    // Sym4: codegrees 1, 2, 3, 8, 8 by kernel orders 24, 12, 4, 1, 1.
    assert_eq!(witness_map(Sym(4)), vec![(2, 2), (3, 3), (4, 8)]);
}

#[test]
fn cyclic_groups_need_faithful_characters() {
    let r = qian_check_spec(&Cyc(12), &cfg()).unwrap();
    assert!(r.verdict.passed());
    assert_eq!(r.witnesses.last().unwrap().codegree, 12);
    assert!(r.audit.is_none());
}

#[test]
fn alt5_pairs() {
    let t = character_table(&build(&Alt(5)).unwrap(), &cfg()).unwrap();
    let plain = pair_check(&t, "Alt(5)", &AutFilter::unfiltered(&t)).unwrap();
    assert!(plain.verdict.passed());
    assert_eq!(plain.exponent, 30);
    let degrees: Vec<(u64, u64)> = plain
        .qualifying_pairs
        .iter()
        .map(|&(i, j)| (t.degrees()[i], t.degrees()[j]))
        .collect();
    assert!(degrees.contains(&(4, 5)));

    let filter = AutFilter::for_spec(&t, &Alt(5), &cfg()).unwrap();
    assert_eq!(filter.level, VerificationLevel::Extension);
    let filtered = pair_check(&t, "Alt(5)", &filter).unwrap();
    let pair = filtered.pair.unwrap();
    assert_eq!((pair.alpha_degree, pair.beta_degree), (4, 5));
    assert_eq!(pair.product, "180");
    // The two degree-3 characters are swapped by Sym5.
    assert!(filtered.candidates.iter().all(|&i| t.degrees()[i] != 3));
}

#[test]
fn psl2_7_pair() {
    let t = character_table(&build(&Psl2(7)).unwrap(), &cfg()).unwrap();
    let filter = AutFilter::for_spec(&t, &Psl2(7), &cfg()).unwrap();
    let r = pair_check(&t, "PSL2(7)", &filter).unwrap();
    assert!(r.verdict.passed());
    assert_eq!(r.exponent, 84);
    let has_6_8 = r
        .qualifying_pairs
        .iter()
        .any(|&(i, j)| (t.degrees()[i], t.degrees()[j]) == (6, 8));
    assert!(has_6_8);
}

#[test]
fn pair_check_rejects_non_simple() {
    let t = character_table(&build(&Sym(4)).unwrap(), &cfg()).unwrap();
    assert!(pair_check(&t, "Sym(4)", &AutFilter::unfiltered(&t)).is_err());
}

#[test]
fn per_element_alt5() {
    let t = character_table(&build(&Alt(5)).unwrap(), &cfg()).unwrap();
    let orders = &t.classes().element_orders;
    let five = orders.iter().position(|&o| o == 5).unwrap();
    let two = orders.iter().position(|&o| o == 2).unwrap();
    let plain = AutFilter::unfiltered(&t);
    assert_eq!(
        per_element_check(&t, five, &plain)
            .unwrap()
            .witness
            .unwrap()
            .1,
        3
    );
    assert_eq!(
        per_element_check(&t, two, &plain)
            .unwrap()
            .witness
            .unwrap()
            .1,
        3
    );
    let filter = AutFilter::for_spec(&t, &Alt(5), &cfg()).unwrap();
    assert_eq!(
        per_element_check(&t, five, &filter)
            .unwrap()
            .witness
            .unwrap()
            .1,
        4
    );
    for k in 0..t.classes().len() {
        assert!(per_element_check(&t, k, &filter).unwrap().verdict.passed());
    }
}

#[test]
fn psl2_27_exception() {
    let r = exception_check(3, &cfg()).unwrap();
    assert_eq!(r.q, 27);
    assert_eq!(r.invariant_nonprincipal.len(), 1);
    assert_eq!(r.invariant_nonprincipal[0].1, 27);
    assert!(r.only_steinberg_invariant);
    assert_eq!(r.half_degree_rows.len(), 2);
    assert!(r.half_rows_fixed_by_field);
    assert!(r.half_rows_swapped_by_diagonal);
    assert!(r.field_moves_q_pm_1);
    assert!(!r.pair_check.verdict.passed());
    assert!(r
        .pair_check
        .flags
        .iter()
        .any(|f| f.starts_with("genuine exception")));
    assert!(r.passed);
    assert!(exception_check(2, &cfg()).is_err());
}

#[test]
fn aut_filter_on_psl3_3() {
    let spec = Psl3(3);
    let aut = aut_overgroup(&spec).unwrap().unwrap();
    let t = character_table(&aut.subgroup, &cfg()).unwrap();
    let filter = AutFilter::new(&t, &aut, &cfg()).unwrap();
    assert!(filter.invariant.contains(&0));
    let r = pair_check(&t, "PSL3(3)", &filter).unwrap();
    assert!(r.verdict.passed(), "{:?}", r.flags);
}

#[test]
fn monolithic_wreath_swap() {
    let g = build(&GroupSpec::wr(Alt(5), Cyc(2))).unwrap();
    let swap = Permutation::parse_cycles(10, "(0 5)(1 6)(2 7)(3 8)(4 9)").unwrap();
    let s = monolithic_witness_check(&g, &swap, &cfg()).unwrap();
    assert_eq!(s.n, 2);
    assert_eq!(s.factor_orbits, vec![vec![0, 1]]);
    assert_eq!((s.r, s.order_g_r), (2, 1));
    let w = s.witness.as_ref().unwrap();
    assert_eq!(
        (w.lambda_degree, w.h, w.inertia_order.as_str()),
        (3, 1, "3600")
    );
    let h0 = s.h0_witness.as_ref().unwrap();
    assert_eq!(
        (h0.lambda_degree, h0.h, h0.inertia_order.as_str()),
        (9, 0, "7200")
    );
    assert!(s.revalidated);
    assert!(s.verdict.passed());
    assert!(s.flags.iter().any(|f| f == "witness, not construction"));
}

#[test]
fn monolithic_candidate_checks() {
    let g = build(&GroupSpec::wr(Alt(5), Cyc(2))).unwrap();
    let swap = Permutation::parse_cycles(10, "(0 5)(1 6)(2 7)(3 8)(4 9)").unwrap();
    let config = cfg();
    let mut ctx = MonolithicContext::new(&g, &config).unwrap();
    let degrees = ctx.socle_table().degrees().to_vec();
    // A non-invariant character cannot serve with h = 0.
    let c = ctx.check_candidate(&swap, 1, 0).unwrap();
    assert!(!c.power_in_inertia && !c.valid);
    // The degree-16 product of the two degree-4 characters with h = 0.
    let sixteen = degrees.iter().position(|&d| d == 16).unwrap();
    let c = ctx.check_candidate(&swap, sixteen, 0).unwrap();
    assert!(c.valid);
    assert!(ctx.revalidate(&swap, &c).unwrap());
    assert!(ctx.check_candidate(&swap, 0, 0).is_err());
}

#[test]
fn monolithic_almost_simple() {
    let (g, d, f) = with_automorphisms(9);
    let s = monolithic_witness_check(&g, &d.mul(&f), &cfg()).unwrap();
    assert_eq!((s.n, s.orbit_length, s.r, s.order_g_r), (1, 1, 2, 2));
    assert!(!s.exceptional_factor);
    assert!(s.verdict.passed());
    assert_eq!(s.h0_witness.as_ref().unwrap().h, 0);

    let (g, d, f) = with_automorphisms(27);
    let s = monolithic_witness_check(&g, &d.mul(&f), &cfg()).unwrap();
    assert!(s.exceptional_factor);
    assert_eq!(s.witness.as_ref().unwrap().h, 1);
    assert!(s.verdict.passed());
}

#[test]
fn monolithic_simple_identity() {
    let g = build(&Alt(5)).unwrap();
    let s = monolithic_witness_check(&g, &g.identity(), &cfg()).unwrap();
    assert_eq!((s.n, s.r, s.order_g_r), (1, 1, 1));
    let w = s.witness.unwrap();
    assert_eq!((w.lambda, w.h), (1, 0));
    assert!(s.verdict.passed());
}

#[test]
fn monolithic_hypothesis_errors() {
    let g = build(&Sym(4)).unwrap();
    assert!(monolithic_witness_check(&g, &g.identity(), &cfg()).is_err());
    let g = build(&GroupSpec::dp(Alt(5), Alt(5))).unwrap();
    assert!(monolithic_witness_check(&g, &g.identity(), &cfg()).is_err());
    let g = build(&Alt(5)).unwrap();
    let outside = Permutation::parse_cycles(5, "(0 1)").unwrap();
    assert!(monolithic_witness_check(&g, &outside, &cfg()).is_err());
}

#[test]
fn fitting_check_wreath_and_sym4() {
    let g = build(&GroupSpec::wr(Alt(5), Cyc(2))).unwrap();
    let r = fitting_check(&g, "Wr(Alt(5),Cyc(2))", &cfg()).unwrap();
    assert!(r.within_hypothesis);
    assert_eq!(r.fitting_order, fitting_order_oracle(&g).to_string());
    assert_eq!(r.socle.kind, SocleKind::NonSolvable);
    assert_eq!(r.socle.minimal_normal, vec![("3600".to_string(), false)]);
    assert!(r.verdict.passed());

    let g = build(&Sym(4)).unwrap();
    let r = fitting_check(&g, "Sym(4)", &cfg()).unwrap();
    assert!(!r.within_hypothesis);
    assert_eq!(r.fitting_order, "4");
    assert_eq!(fitting_order_oracle(&g), 4);
    assert_eq!(r.label, "outside hypothesis (solvable)");
    assert_eq!(r.socle.kind, SocleKind::Solvable);
    assert!(r.verdict.passed());
}

#[test]
fn fitting_oracle_agrees() {
    for spec in [
        Sym(3),
        Dih(6),
        Alt(4),
        Cyc(6),
        GroupSpec::dp(Sym(3), Cyc(3)),
        Pgl2(5),
    ] {
        let g = build(&spec).unwrap();
        let classes = conjugacy_classes(&g, 300_000).unwrap();
        let f = g.fitting_subgroup(&classes);
        assert_eq!(f.order_u64().unwrap(), fitting_order_oracle(&g), "{spec}");
    }
}

#[test]
fn corpus() {
    let specs = vec![Sym(3), Alt(5), Dih(4), Psl2(7), Psl2(6)];
    let run = corpus_run(&specs, &cfg(), 2).unwrap();
    assert_eq!(run.entries.len(), 5);
    assert_eq!(run.entries[1].spec, "Alt(5)");
    let s = &run.summary;
    assert_eq!((s.total, s.passed, s.failed, s.errors), (5, 4, 0, 1));
    assert_eq!((s.within_hypothesis, s.outside_hypothesis), (2, 2));
    assert!(!run.all_passed());
    assert!(run.entries[4].error.is_some());
}

#[test]
fn odd_power_of_three_orders() {
    assert!(is_psl2_odd_power_of_three(9828));
    assert!(is_psl2_odd_power_of_three(243 * (243 * 243 - 1) / 2));
    assert!(!is_psl2_odd_power_of_three(360));
    assert!(!is_psl2_odd_power_of_three(60));
}

#[test]
fn alt6_invariant_pair_does_not_extend() {
    let aut = aut_overgroup(&Alt(6)).unwrap().unwrap();
    let over = character_table(&aut.overgroup, &cfg()).unwrap();
    // Aut(A6) has 13 classes with degrees 1^4 9^4 10^2 16^2 20. The two 10s
    // are induced from the swapped degree-5 pair, and the 20 lies over the
    // invariant degree-10 character of A6, which therefore has no extension.
    let mut degrees = over.degrees().to_vec();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 1, 1, 9, 9, 9, 9, 10, 10, 16, 16, 20]);

    let t = character_table(&aut.subgroup, &cfg()).unwrap();
    let filter = AutFilter::new(&t, &aut, &cfg()).unwrap();
    let invariant: Vec<u64> = filter.invariant.iter().map(|&i| t.degrees()[i]).collect();
    assert_eq!(invariant, vec![1, 9, 10]);
    let r = pair_check(&t, "Alt(6)", &filter).unwrap();
    assert!(r.verdict.passed());
    let pair = r.pair.unwrap();
    assert_eq!((pair.alpha_degree, pair.beta_degree), (9, 10));
    assert_eq!(r.extension_verdict, Some(Verdict::Fail));
    assert!(r.extension_pair.is_none());
}
