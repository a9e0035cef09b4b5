use quadperm::suspension::head_cylinder_angle;
use quadperm::*;

fn gp(s: &str) -> GeneralizedPermutation {
    s.parse().unwrap()
}

fn pattern(s: &str) -> SingularityPattern {
    s.parse().unwrap()
}

fn rendered(list: &[GeneralizedPermutation]) -> Vec<String> {
    list.iter().map(|p| p.render()).collect()
}

#[test]
fn pillowcase_example_stratum() {
    let p = singularity_pattern(&gp("1 1 2 / 3 2 3"));
    assert_eq!(p.orders, vec![-1, -1, 2]);
    assert_eq!((p.genus, p.dimension), (1, 3));
    assert_eq!(p.to_string(), "Q(-1,-1,2)");
}

#[test]
fn hyperelliptic_patterns() {
    for (r, l) in [(1, 1), (3, 5), (9, 7)] {
        let got = singularity_pattern(&hyperelliptic_rep(HyperKind::Pi1, r, l, None).unwrap());
        let mut expected = vec![2 * r as i64, 2 * l as i64];
        expected.sort();
        assert_eq!(got.orders, expected, "Pi1({r},{l})");
    }
    let got = singularity_pattern(&hyperelliptic_rep(HyperKind::Pi1, 4, 3, None).unwrap());
    assert_eq!(got.orders, vec![3, 3, 6]);
    let got = singularity_pattern(&hyperelliptic_rep(HyperKind::Pi1, 4, 6, None).unwrap());
    assert_eq!(got.orders, vec![3, 3, 5, 5]);
    let got = singularity_pattern(&hyperelliptic_rep(HyperKind::Pi2, 2, 2, None).unwrap());
    assert_eq!(got.orders, vec![2, 2]);
}

#[test]
fn three_parameter_family_walks() {
    let p = hyperelliptic_rep(HyperKind::Pi1a, 3, 3, Some(2)).unwrap();
    assert_eq!(p.render(), "0_1 0_3 1 2 3 0_1 4 5 6 / 6 5 4 0_2 3 2 0_3 1 0_2");
    assert_eq!(singularity_pattern(&p).orders, vec![0, 6, 6]);
    let p = hyperelliptic_rep(HyperKind::Pi1a, 5, 1, Some(4)).unwrap();
    assert_eq!(singularity_pattern(&p).orders, vec![2, 2, 8]);
    assert!(hyperelliptic_rep(HyperKind::Pi1a, 3, 3, Some(5)).is_err());
}

#[test]
fn irreducible_representatives() {
    for name in IrreducibleName::ALL {
        let p = irreducible_rep(name);
        assert_eq!(singularity_pattern(&p).orders, name.pattern(), "{name}");
        assert_eq!(match_component(&p, SymmetryGroup::default()), ComponentTag::IrreducibleRep { name });
    }
}

#[test]
fn red_decomposition_of_the_worked_example() {
    let p = gp("1 2 2 3 3 1 / 0 0");
    let RedVerdict::Violated { decomposition } = red_condition(&p) else { panic!("expected a violation") };
    let lists = decomposition.lists(&p);
    assert_eq!(lists[0], ["1"]);
    assert_eq!(lists[1], ["2", "2", "3", "3"]);
    assert_eq!(lists[2], ["1"]);
    assert!(lists[3..].iter().all(Vec::is_empty));
    assert_eq!(red_condition(&gp("1 2 3 4 3 5 4 / 6 6 1 5 2")), RedVerdict::Satisfied);
}

#[test]
fn q8_classes() {
    let classes = enumerate_stratum(&pattern("8"), &EnumerateOptions::default()).unwrap();
    assert_eq!(
        rendered(&classes),
        [
            "1 2 1 2 3 / 3 4 5 4 5",
            "1 2 1 2 3 4 / 3 5 4 5",
            "1 2 1 3 / 2 4 3 5 4 5",
            "1 2 1 3 / 2 4 5 3 4 5",
            "1 2 1 3 4 / 2 3 5 4 5",
            "1 2 1 3 4 / 2 4 5 3 5",
            "1 2 1 3 4 / 2 5 4 5 3",
        ]
    );
}

#[test]
fn q8_count_depends_on_the_row_exchange() {
    let opts = EnumerateOptions { sym: SymmetryGroup::ROTATE, ..EnumerateOptions::default() };
    assert_eq!(enumerate_stratum(&pattern("8"), &opts).unwrap().len(), 11);
}

#[test]
fn small_strata() {
    let opts = EnumerateOptions::default();
    assert_eq!(
        rendered(&enumerate_stratum(&pattern("-1,5"), &opts).unwrap()),
        ["1 1 2 / 2 3 4 3 4", "1 1 2 3 / 2 4 3 4"]
    );
    for empty in ["0", "-1,1", "1,3", "4"] {
        assert!(enumerate_stratum(&pattern(empty), &opts).unwrap().is_empty(), "{empty}");
    }
    let q22 = enumerate_stratum(&pattern("2,2"), &opts).unwrap();
    assert_eq!(q22.len(), 2);
    for c in &q22 {
        assert!(matches!(match_component(c, opts.sym), ComponentTag::Hyperelliptic { .. }), "{c}");
    }
}

#[test]
fn appendix_angles() {
    for (s, expected) in [
        ("3 4 0 0 1 2 / 3 5 2 1 4 5", 1),
        ("2 3 4 0 0 1 / 2 4 5 1 3 5", 2),
        ("1 2 3 4 0 0 / 1 4 5 3 5 2", 4),
        ("5 6 1 2 3 4 3 / 5 7 4 2 6 7 1", 3),
        ("5 6 1 2 3 4 2 / 5 7 6 7 3 1 4", 4),
        ("3 4 5 6 5 1 2 / 3 7 2 6 1 4 7", 1),
        ("2 3 4 5 6 5 1 / 2 6 1 4 7 3 7", 5),
    ] {
        let p = gp(s);
        let lambda = AdmissibleVector::all_ones(&p).unwrap();
        assert_eq!(head_cylinder_angle(&p, &lambda).unwrap().s, expected, "{s}");
        assert!(is_irreducible(&p.restrict().unwrap()).is_irreducible(), "{s}");
    }
}

#[test]
fn vertical_cylinders_of_the_q12_representatives() {
    let p = irreducible_rep(IrreducibleName::TwelveI);
    let d = cylinder_decomposition(&p, &AdmissibleVector::all_ones(&p).unwrap()).unwrap();
    assert_eq!(d.cylinders.len(), 2);
    let p = irreducible_rep(IrreducibleName::TwelveII);
    let d = cylinder_decomposition(&p, &AdmissibleVector::all_ones(&p).unwrap()).unwrap();
    let shape: Vec<(u64, Option<u64>)> = d.cylinders.iter().map(|c| (c.circumference, c.angle.map(|a| a.s))).collect();
    assert_eq!(shape, [(1, Some(6)), (5, None), (1, Some(1))]);
}

#[test]
fn excision_of_the_sporadic_genus_three_representative() {
    let ex = excise_simple_cylinder(&irreducible_rep(IrreducibleName::Minus1Nine)).unwrap();
    assert_eq!(ex.shift, (2, 2));
    assert_eq!((ex.s(), ex.certified), (3, true));
    assert_eq!(ex.collapsed, Some(pattern("-1,5")));
    let all = excisions(&irreducible_rep(IrreducibleName::Minus1Nine));
    assert_eq!(all.iter().map(|e| (e.shift, e.s(), e.certified)).collect::<Vec<_>>(), [
        ((1, 4), 1, false),
        ((2, 2), 3, true),
        ((3, 1), 3, true),
        ((4, 0), 3, true),
    ]);
}

#[test]
fn bubbling_then_excising_returns_the_angle() {
    for (start, s, reached) in [("5 3 5 2 4 / 1 2 1 3 4", 2, "12"), ("0 0 1 2 / 1 3 2 3", 3, "-1,9")] {
        let c = gp(start);
        let pi = bubble(&c, s, 100_000).unwrap();
        assert_eq!(singularity_pattern(&pi).without_marked_points(), pattern(reached));
        let ex = excise_simple_cylinder(&pi).unwrap();
        assert_eq!(ex.s(), s);
        assert_eq!(ex.collapsed, Some(singularity_pattern(&c)));
    }
    assert!(bubble(&gp("5 3 5 2 4 / 1 2 1 3 4"), 0, 10).is_err());
    assert!(bubble(&gp("5 3 5 2 4 / 1 2 1 3 4"), 9, 10).is_err());
}

#[test]
fn q8_reads_a1_from_a2() {
    let a1: Vec<GeneralizedPermutation> =
        ["5 3 5 2 4 / 1 2 1 3 4", "5 4 5 2 3 / 1 2 1 3 4", "5 4 5 3 2 / 1 2 1 3 4", "5 3 5 3 4 / 1 2 1 2 4"]
            .iter()
            .map(|s| gp(s))
            .collect();
    for s in ["5 2 5 3 4 2 / 1 3 1 4", "3 5 4 2 5 2 / 1 3 1 4", "5 3 2 5 4 2 / 1 3 1 4"] {
        let p = gp(s);
        let lambda = AdmissibleVector::from_positions(&p, &[1, 1, 1, 1, 1, 1, 2, 1, 2, 1]).unwrap();
        let read = vertical_permutation(&p, &lambda).unwrap().permutation;
        assert!(a1.iter().any(|q| q.equivalent(&read, SymmetryGroup::default())), "{s} reads {read}");
    }
}

#[test]
fn q8_all_ones_orbits() {
    let sizes: Vec<usize> =
        ["5 3 5 2 4 / 1 2 1 3 4", "5 4 5 2 3 / 1 2 1 3 4", "5 4 5 3 2 / 1 2 1 3 4", "5 3 5 3 4 / 1 2 1 2 4"]
            .iter()
            .map(|s| {
                let p = gp(s);
                sl2z_orbit(&p, &AdmissibleVector::all_ones(&p).unwrap(), 1000).unwrap().len()
            })
            .collect();
    assert_eq!(sizes, [10, 30, 10, 30]);
}

#[test]
fn reports_of_small_strata() {
    let cfg = MoveConfig::default();
    let q8 = component_report(&pattern("8"), &cfg).unwrap();
    assert_eq!((q8.classes.len(), q8.upper_bound, q8.lower_bound), (7, 1, 1));
    let q15 = component_report(&pattern("-1,5"), &cfg).unwrap();
    assert_eq!((q15.classes.len(), q15.upper_bound), (2, 1));
    let empty = component_report(&pattern("4"), &cfg).unwrap();
    assert_eq!((empty.classes.len(), empty.upper_bound, empty.lower_bound), (0, 0, 0));
    let tsv = q8.to_tsv();
    assert!(tsv.starts_with("class\ttag\tgroup\tedges\n"));
    assert_eq!(tsv.lines().count(), 8);
}

#[test]
fn errors_are_reported() {
    assert!(matches!("1 2 / 2".parse::<GeneralizedPermutation>(), Err(Error::LetterCount { .. })));
    assert!(matches!("1 1".parse::<GeneralizedPermutation>(), Err(Error::MalformedText(_))));
    assert!(matches!(
        enumerate_type(9, 9, &EnumerateOptions::default()),
        Err(Error::SizeLimit { size: 18, limit: 16 })
    ));
    assert!(matches!("Q(1)".parse::<SingularityPattern>(), Err(Error::BadPattern(_))));
}

#[test]
fn seam_certificates_of_a_hyperelliptic_representative() {
    let p = hyperelliptic_rep(HyperKind::Pi1, 3, 5, None).unwrap();
    assert_eq!(weak_reducibility(&p), WeakVerdict::Irreducible);
    let k = p.letter_count() as u32;
    let mut certified = Vec::new();
    let mut admissible = 0;
    for code in 0..3u64.pow(k) {
        let lengths: Vec<u64> = (0..k).map(|i| code / 3u64.pow(i) % 3 + 1).collect();
        let Ok(lambda) = AdmissibleVector::new(&p, lengths) else { continue };
        admissible += 1;
        if gamma_mult_one_evidence(&p, &lambda).unwrap() {
            certified.push(lambda.render(&p));
        }
    }
    assert_eq!(admissible, 3u64.pow(k - 1));
    assert_eq!(
        certified,
        [
            "0_1=2,1=3,2=3,3=3,4=3,5=3,6=3,7=3,8=3,0_2=2",
            "0_1=3,1=3,2=3,3=3,4=3,5=3,6=3,7=3,8=1,0_2=3",
            "0_1=3,1=3,2=3,3=3,4=3,5=3,6=3,7=3,8=2,0_2=3",
        ]
    );
}
