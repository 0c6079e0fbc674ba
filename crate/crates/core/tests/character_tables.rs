use codegree_core::chartab::{
    character_table, class_matrix, has_extension, induce, inertia_group, restrict, CharacterTable,
    ClassFusion,
};
use codegree_core::cyclo::CycloNum;
use codegree_core::perm::{conjugacy_classes, PermGroup, Permutation};
use codegree_core::Config;
use num_bigint::BigInt;
use num_rational::BigRational;

fn perm(d: usize, s: &str) -> Permutation {
    Permutation::parse_cycles(d, s).unwrap()
}

fn group(d: usize, gens: &[&str]) -> PermGroup {
    PermGroup::new(gens.iter().map(|s| perm(d, s)).collect()).unwrap()
}

fn table(d: usize, gens: &[&str]) -> CharacterTable {
    character_table(&group(d, gens), &Config::default()).unwrap()
}

fn int_row(t: &CharacterTable, values: &[i64]) -> Vec<CycloNum> {
    values
        .iter()
        .zip(&t.classes().element_orders)
        .map(|(&v, &o)| CycloNum::from_int(o as u32, v))
        .collect()
}

fn assert_rows(t: &CharacterTable, expected: &[Vec<CycloNum>]) {
    assert_eq!(t.len(), expected.len());
    for (i, row) in expected.iter().enumerate() {
        assert_eq!(t.character(i), row, "row {i}");
    }
}

#[test]
fn sym3_matches_hand_table() {
    let t = table(3, &["(0 1)", "(0 1 2)"]);
    let oracle = vec![
        int_row(&t, &[1, 1, 1]),
        int_row(&t, &[1, -1, 1]),
        int_row(&t, &[2, 0, -1]),
    ];
    assert_rows(&t, &oracle);
    let cods: Vec<u64> = t.codegrees().unwrap().iter().map(|c| c.codegree).collect();
    assert_eq!(cods, vec![1, 2, 3]);
}

#[test]
fn sym4_matches_hand_table() {
    let t = table(4, &["(0 1)", "(0 1 2 3)"]);
    let reps: Vec<String> = t
        .classes()
        .representatives
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(reps, ["()", "(0 1)(2 3)", "(2 3)", "(1 2 3)", "(0 1 2 3)"]);
    let oracle = vec![
        int_row(&t, &[1, 1, 1, 1, 1]),
        int_row(&t, &[1, 1, -1, 1, -1]),
        int_row(&t, &[2, 2, 0, -1, 0]),
        int_row(&t, &[3, -1, 1, 0, -1]),
        int_row(&t, &[3, -1, -1, 0, 1]),
    ];
    assert_rows(&t, &oracle);
}

fn z5(coords: [i64; 4]) -> CycloNum {
    let c: Vec<BigRational> = coords
        .iter()
        .map(|&x| BigRational::from_integer(BigInt::from(x)))
        .collect();
    CycloNum::from_coords(5, &c).unwrap()
}

#[test]
fn alt5_matches_hand_table() {
    let t = table(5, &["(0 1 2)", "(2 3 4)"]);
    assert_eq!(t.classes().sizes, vec![1, 15, 20, 12, 12]);
    // (1 -+ sqrt5)/2 written in the power basis of Q(zeta_5)
    let minus = z5([1, 0, 1, 1]);
    let plus = z5([0, 0, -1, -1]);
    let mut r3a = int_row(&t, &[3, -1, 0, 0, 0]);
    r3a[3] = minus.clone();
    r3a[4] = plus.clone();
    let mut r3b = int_row(&t, &[3, -1, 0, 0, 0]);
    r3b[3] = plus;
    r3b[4] = minus;
    let oracle = vec![
        int_row(&t, &[1, 1, 1, 1, 1]),
        r3a,
        r3b,
        int_row(&t, &[4, 0, 1, -1, -1]),
        int_row(&t, &[5, 1, -1, 0, 0]),
    ];
    assert_rows(&t, &oracle);
    let mut cods: Vec<u64> = t.codegrees().unwrap().iter().map(|c| c.codegree).collect();
    cods.sort();
    assert_eq!(cods, vec![1, 12, 15, 20, 20]);
}

#[test]
fn cyclic_tables_are_roots_of_unity() {
    for n in [2usize, 5, 6, 8] {
        let cycle = format!(
            "({})",
            (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        );
        let g = group(n, &[&cycle]);
        let t = character_table(&g, &Config::default()).unwrap();
        assert_eq!(t.len(), n);
        assert!(t.degrees().iter().all(|&d| d == 1));
        // every value is an o-th root of unity: its o-th power is 1
        for row in t.irreducibles() {
            for (v, &o) in row.iter().zip(&t.classes().element_orders) {
                assert_eq!(v.pow(o as u32), CycloNum::one(o as u32));
            }
        }
        // the values at a generator run through all n-th roots of unity
        let gen = t.classes().class_of(&perm(n, &cycle)).unwrap();
        let mut seen: Vec<CycloNum> = Vec::new();
        for row in t.irreducibles() {
            assert!(!seen.contains(&row[gen]));
            seen.push(row[gen].clone());
        }
    }
}

#[test]
fn dihedral_and_larger_tables_validate() {
    for (d, gens) in [
        (5, vec!["(0 1 2 3 4)", "(1 4)(2 3)"]),
        (6, vec!["(0 1 2 3 4 5)", "(1 5)(2 4)"]),
        (6, vec!["(0 1)", "(0 1 2 3 4 5)"]),
        (7, vec!["(0 1 2)", "(2 3 4 5 6)"]),
    ] {
        let t = table(d, &gens);
        t.validate().unwrap();
        let sum: u64 = t.degrees().iter().map(|x| x * x).sum();
        assert_eq!(sum, t.order());
    }
}

#[test]
fn inner_products() {
    let t = table(4, &["(0 1)", "(0 1 2 3)"]);
    for i in 0..t.len() {
        let ip = t.inner_product(t.character(i), t.character(i)).unwrap();
        assert_eq!(ip, BigRational::from_integer(1.into()));
        assert_eq!(
            t.multiplicity(&t.regular_character(), i).unwrap(),
            BigInt::from(t.degrees()[i])
        );
    }
    // Burnside: the natural action is transitive
    let pi = t.permutation_character();
    assert_eq!(t.multiplicity(&pi, 0).unwrap(), BigInt::from(1));
}

#[test]
fn frobenius_reciprocity_alt4_in_sym4() {
    let g = group(4, &["(0 1)", "(0 1 2 3)"]);
    let h = g
        .subgroup(&[perm(4, "(0 1 2)"), perm(4, "(1 2 3)")])
        .unwrap();
    let tg = character_table(&g, &Config::default()).unwrap();
    let th = character_table(&h, &Config::default()).unwrap();
    let fusion = ClassFusion::by_membership(th.classes(), tg.classes()).unwrap();
    for i in 0..tg.len() {
        let res = restrict(tg.character(i), &fusion);
        for j in 0..th.len() {
            let ind = induce(th.character(j), &fusion, th.classes(), tg.classes());
            assert_eq!(
                tg.inner_product(&ind, tg.character(i)).unwrap(),
                th.inner_product(th.character(j), &res).unwrap()
            );
        }
    }
    // the trivial character induces to the permutation character on cosets
    let ind = induce(th.character(0), &fusion, th.classes(), tg.classes());
    assert_eq!(ind, int_row(&tg, &[2, 2, 0, 2, 0]));
}

#[test]
fn induction_from_trivial_subgroup_is_regular() {
    let g = group(4, &["(0 1)", "(0 1 2 3)"]);
    let tg = character_table(&g, &Config::default()).unwrap();
    let triv = PermGroup::trivial(4);
    let tt = character_table(&triv, &Config::default()).unwrap();
    let fusion = ClassFusion::by_membership(tt.classes(), tg.classes()).unwrap();
    assert_eq!(fusion.map, vec![0]);
    let ind = induce(tt.character(0), &fusion, tt.classes(), tg.classes());
    assert_eq!(ind, tg.regular_character());
}

#[test]
fn alt3_classes_fuse_in_sym3() {
    let g = group(3, &["(0 1)", "(0 1 2)"]);
    let h = g.subgroup(&[perm(3, "(0 1 2)")]).unwrap();
    let cg = conjugacy_classes(&g, 1000).unwrap();
    let ch = conjugacy_classes(&h, 1000).unwrap();
    let fusion = ClassFusion::by_membership(&ch, &cg).unwrap();
    assert_eq!(fusion.map, vec![0, 2, 2]);
}

#[test]
fn class_matrix_columns_sum_to_class_size() {
    let c = conjugacy_classes(&group(5, &["(0 1 2)", "(2 3 4)"]), 1000).unwrap();
    for i in 0..c.len() {
        let m = class_matrix(&c, i);
        for k in 0..c.len() {
            assert_eq!((0..c.len()).map(|j| m[j][k]).sum::<u64>(), c.sizes[i]);
        }
    }
}

#[test]
fn principal_character_is_fully_inert_and_extends() {
    let g = group(4, &["(0 1)", "(0 1 2 3)"]);
    let v4 = g.normal_closure(&[perm(4, "(0 1)(2 3)")]).unwrap();
    let tm = character_table(&v4, &Config::default()).unwrap();
    let i = inertia_group(&g, &tm, 0).unwrap();
    assert!(i.same_group(&g));
    let ti = character_table(&i, &Config::default()).unwrap();
    let fusion = ClassFusion::by_membership(tm.classes(), ti.classes()).unwrap();
    assert_eq!(has_extension(&ti, &fusion, tm.character(0)), Some(0));
    // the three non-trivial linear characters of the Klein group form one orbit
    let i1 = inertia_group(&g, &tm, 1).unwrap();
    assert_eq!(i1.order_u64(), Some(8));
}

#[test]
fn json_round_trip() {
    let g = group(5, &["(0 1 2)", "(2 3 4)"]);
    let t = character_table(&g, &Config::default()).unwrap();
    let json = t.to_json("Alt(5)").unwrap();
    let text = serde_json::to_string(&json).unwrap();
    let back: codegree_core::chartab::TableJson = serde_json::from_str(&text).unwrap();
    assert_eq!(back, json);
    let rebuilt = back.into_table(&g, &Config::default()).unwrap();
    assert_eq!(rebuilt.irreducibles(), t.irreducibles());
}
