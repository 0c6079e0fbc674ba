use codegree_core::builders::{
    aut_overgroup, build, class_fusion, psl2_order, psl2_with_automorphisms, wreath_embedding,
    GroupSpec,
};
use codegree_core::perm::{conjugacy_classes, PermGroup, Permutation};
use codegree_core::Config;

use GroupSpec::*;

fn order(spec: &GroupSpec) -> u64 {
    build(spec).unwrap().order_u64().unwrap()
}

#[test]
fn elementary_families() {
    assert_eq!(order(&Sym(1)), 1);
    assert_eq!(order(&Sym(6)), 720);
    assert_eq!(order(&Alt(2)), 1);
    assert_eq!(order(&Alt(7)), 2520);
    assert_eq!(order(&Cyc(1)), 1);
    assert_eq!(order(&Cyc(12)), 12);
    assert_eq!(order(&Dih(5)), 10);
    assert_eq!(order(&Dih(8)), 16);
}

#[test]
fn projective_line_groups_have_formula_orders() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 27] {
        let g = build(&Psl2(q)).unwrap();
        assert_eq!(g.degree() as u64, q + 1);
        assert_eq!(g.order_u64().unwrap(), psl2_order(q), "PSL2({q})");
        assert_eq!(order(&Pgl2(q)), q * (q * q - 1), "PGL2({q})");
    }
    assert_eq!(order(&PGammaL2(9)), 1440);
    assert_eq!(order(&PGammaL2(27)), 58968);
    assert_eq!(order(&PGammaL2(8)), 1512);
    assert_eq!(order(&Sl2(8)), 504);
}

#[test]
fn psl3_orders() {
    assert_eq!(order(&Psl3(2)), 168);
    assert_eq!(order(&Psl3(3)), 5616);
    assert_eq!(build(&Psl3(3)).unwrap().degree(), 13);
}

#[test]
fn psl2_is_simple_from_q4() {
    for q in [4u64, 5, 7, 8, 9, 11, 13] {
        let g = build(&Psl2(q)).unwrap();
        let c = conjugacy_classes(&g, 300_000).unwrap();
        assert!(g.is_nonabelian_simple(&c), "PSL2({q})");
    }
}

#[test]
fn pgammal2_27_contains_normal_psl2_27() {
    let (s, delta, phi) = psl2_with_automorphisms(27).unwrap();
    let big = build(&PGammaL2(27)).unwrap();
    assert_eq!(s.order_u64(), Some(9828));
    assert!(s.is_normal_in(&big));
    assert!(big.contains(&delta) && big.contains(&phi));
    assert!(!s.contains(&delta) && !s.contains(&phi));
    assert_eq!(phi.order(), 3);
}

#[test]
fn products_and_wreaths() {
    assert_eq!(order(&GroupSpec::dp(Alt(5), Psl2(7))), 60 * 168);
    let w = build(&GroupSpec::wr(Alt(5), Cyc(2))).unwrap();
    assert_eq!(w.degree(), 10);
    assert_eq!(w.order_u64(), Some(7200));
    // base group has order |G|^n with quotient |P|
    let base = w
        .normal_closure(&[Permutation::parse_cycles(10, "(0 1 2)").unwrap()])
        .unwrap();
    assert_eq!(base.order_u64(), Some(3600));
    assert!(base.is_normal_in(&w));
    assert_eq!(order(&GroupSpec::wr(Cyc(3), Sym(3))), 27 * 6);
    // intransitive top group: one base copy per orbit
    let top = GroupSpec::Perm {
        degree: 3,
        gens: vec![Permutation::parse_cycles(3, "(0 1)").unwrap()],
    };
    assert_eq!(order(&GroupSpec::wr(Cyc(2), top)), 8 * 2);
}

#[test]
fn canonical_strings() {
    let spec = GroupSpec::wr(Alt(5), Cyc(2));
    assert_eq!(spec.to_string(), "Wr(Alt(5),Cyc(2))");
    let klein = GroupSpec::Perm {
        degree: 4,
        gens: vec![
            Permutation::parse_cycles(4, "(0 1)(2 3)").unwrap(),
            Permutation::parse_cycles(4, "(0 2)(1 3)").unwrap(),
        ],
    };
    assert_eq!(klein.to_string(), "Perm(4;(0 1)(2 3),(0 2)(1 3))");
    assert_eq!(order(&klein), 4);
    assert_eq!(
        GroupSpec::dp(PGammaL2(27), Sl2(8)).to_string(),
        "DP(PGammaL2(27),SL2(8))"
    );
}

#[test]
fn invalid_parameters() {
    assert!(build(&Psl2(6)).is_err());
    assert!(build(&Sl2(9)).is_err());
    assert!(build(&Dih(2)).is_err());
    assert!(build(&Sym(0)).is_err());
}

#[test]
fn overgroups_normalize_their_simple_groups() {
    for spec in [
        Alt(5),
        Alt(6),
        Alt(7),
        Psl2(7),
        Sl2(8),
        Psl2(9),
        Psl2(13),
        Psl3(3),
        Psl2(27),
    ] {
        let a = aut_overgroup(&spec).unwrap().unwrap();
        assert!(a.subgroup.is_normal_in(&a.overgroup), "{spec}");
        assert_eq!(
            a.subgroup.order_u64(),
            build(&spec).unwrap().order_u64(),
            "{spec}"
        );
    }
    let a = aut_overgroup(&Psl3(3)).unwrap().unwrap();
    assert_eq!(a.overgroup.order_u64(), Some(11232));
    let a = aut_overgroup(&Alt(6)).unwrap().unwrap();
    assert_eq!(a.overgroup.order_u64(), Some(1440));
    assert!(aut_overgroup(&Sym(5)).unwrap().is_none());
}

#[test]
fn wreath_embedding_of_built_wreath() {
    let g = build(&GroupSpec::wr(Alt(5), Cyc(2))).unwrap();
    let c = conjugacy_classes(&g, 300_000).unwrap();
    let e = wreath_embedding(&g, &c, 300_000).unwrap();
    assert_eq!(e.n(), 2);
    let swap = Permutation::parse_cycles(10, "(0 5)(1 6)(2 7)(3 8)(4 9)").unwrap();
    assert_eq!(e.factor_permutation(&swap).unwrap(), vec![1, 0]);
    assert_eq!(e.normalizer.order_u64(), Some(3600));
    assert_eq!(e.reconstructed_order, *g.order());
}

#[test]
fn wreath_embedding_degenerates_for_almost_simple() {
    let g = build(&PGammaL2(9)).unwrap();
    let c = conjugacy_classes(&g, 300_000).unwrap();
    let e = wreath_embedding(&g, &c, 300_000).unwrap();
    assert_eq!(e.n(), 1);
    assert_eq!(e.socle.order_u64(), Some(360));
    assert!(e.normalizer.same_group(&g));
}

#[test]
fn wreath_embedding_of_explicit_generators() {
    let p = |s: &str| Permutation::parse_cycles(10, s).unwrap();
    let g = PermGroup::new(vec![
        p("(0 1 2 3 4)(5 6 7)"),
        p("(0 1 2)"),
        p("(0 5 1 6 2 7 3 8 4 9)"),
    ])
    .unwrap();
    assert_eq!(g.order_u64(), Some(7200));
    let c = conjugacy_classes(&g, 300_000).unwrap();
    let e = wreath_embedding(&g, &c, 300_000).unwrap();
    assert_eq!(e.n(), 2);
    for (x, comps) in e.generators.iter().zip(&e.components) {
        let sigma = e.factor_permutation(x).unwrap();
        for (i, ci) in comps.iter().enumerate() {
            assert!(e.normalizer.contains(ci));
            let expected = e.transversal[i]
                .mul(x)
                .mul(&e.transversal[sigma[i]].inverse());
            assert_eq!(*ci, expected);
        }
    }
    // sigma is a homomorphism on products of generators
    for a in &e.generators {
        for b in &e.generators {
            let sa = e.factor_permutation(a).unwrap();
            let sb = e.factor_permutation(b).unwrap();
            let sab = e.factor_permutation(&a.mul(b)).unwrap();
            assert_eq!(sab, sa.iter().map(|&i| sb[i]).collect::<Vec<_>>());
        }
    }
}

#[test]
fn monolithic_hypothesis_is_checked() {
    let g = build(&GroupSpec::dp(Alt(5), Alt(5))).unwrap();
    let c = conjugacy_classes(&g, 300_000).unwrap();
    assert!(wreath_embedding(&g, &c, 300_000).is_err());
    let g = build(&Sym(4)).unwrap();
    let c = conjugacy_classes(&g, 300_000).unwrap();
    assert!(wreath_embedding(&g, &c, 300_000).is_err());
}

#[test]
fn fusion_examples() {
    let g = build(&Sym(3)).unwrap();
    let cg = conjugacy_classes(&g, 1000).unwrap();
    let f = class_fusion(&cg, &cg).unwrap();
    assert_eq!(f.map, vec![0, 1, 2]);
    let t = PermGroup::trivial(3);
    let ct = conjugacy_classes(&t, 1000).unwrap();
    assert_eq!(class_fusion(&ct, &cg).unwrap().map, vec![0]);
    let _ = Config::default();
}
