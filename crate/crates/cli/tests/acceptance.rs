//! Acceptance suite. Each test prints one pass/fail line; run with
//! `cargo test -p bsloci-cli --test acceptance -- --nocapture` to see them.
//!
//! The golden dataset is the node-and-line pair f1 = y^2 - x^2 + x^3,
//! f2 = y with weight a = (1,2), resolved by one blowup: strict transforms
//! E1, E2 and the exceptional E0 with orders (1,0), (0,1), (2,1) and
//! discrepancies 0, 0, 1. The expected zero locus is the seven-component
//! set {s1+1, s2+1, s2+2, 2s1+s2+2, 2s1+s2+3, 2s1+s2+4, 2s1+s2+5}.

use bsloci::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::time::{Duration, Instant};

fn data_file(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn bundled() -> Document {
    load_path(&data_file("cusp_line.json")).expect("bundled dataset loads")
}

fn form(c: &[i64], b: i64) -> AffineForm {
    AffineForm::from_ints(c, b)
}

fn forms(components: &[Component]) -> Vec<AffineForm> {
    components.iter().map(|c| c.form.clone()).collect()
}

fn expected_zero_locus() -> Vec<AffineForm> {
    vec![
        form(&[0, 1], 1),
        form(&[0, 1], 2),
        form(&[1, 0], 1),
        form(&[2, 1], 2),
        form(&[2, 1], 3),
        form(&[2, 1], 4),
        form(&[2, 1], 5),
    ]
}

fn pass(n: &str, what: &str) {
    println!("criterion {n}: PASS - {what}");
}

#[test]
fn criterion_1_golden_reproduction() {
    let doc = bundled();
    let started = Instant::now();
    let rep = report(
        &doc.data,
        &doc.weight,
        &doc.test_elements,
        None,
        None,
        None,
        DEFAULT_CELL_BUDGET,
    )
    .unwrap();
    let lct = lct_polytope(&doc.data).unwrap();
    let klt = klt_region(&doc.data, &doc.weight).unwrap();
    let elapsed = started.elapsed();

    assert_eq!(
        forms(&rep.lower),
        expected_zero_locus(),
        "lower-bound component set"
    );

    let lct_hrep: Vec<&HalfSpace> = lct
        .polyhedron
        .hrep()
        .iter()
        .filter(|h| !h.form.is_coordinate())
        .collect();
    let expected_lct = vec![
        HalfSpace::le(form(&[0, 1], -1)),
        HalfSpace::le(form(&[1, 0], -1)),
        HalfSpace::le(form(&[2, 1], -2)),
    ];
    assert_eq!(lct_hrep.len(), 3);
    for h in &expected_lct {
        assert!(
            lct_hrep.iter().any(|k| **k == *h),
            "missing LCT halfspace {h:?}"
        );
    }

    let klt_forms: Vec<(AffineForm, Sense)> = klt
        .divisor_halfspaces
        .iter()
        .map(|(h, _)| (h.form.clone(), h.sense))
        .collect();
    let expected_klt = [form(&[1, 0], -2), form(&[0, 1], -3), form(&[2, 1], -6)];
    assert_eq!(klt_forms.len(), 3);
    for f in &expected_klt {
        assert!(
            klt_forms.iter().any(|(kf, s)| kf == f && *s == Sense::Lt),
            "missing strict KLT halfspace {f:?}"
        );
    }

    assert!(elapsed < Duration::from_secs(1), "report took {elapsed:?}");
    pass(
        "1",
        &format!("golden lower set, LCT and KLT H-reps exact; runtime {elapsed:?}"),
    );
}

#[test]
fn criterion_2_sandwich() {
    let doc = bundled();
    let (lo, hi) = default_box(&doc.data, &doc.weight).unwrap();
    let (prop13, _) = prop13_components(&doc.data, &doc.weight);
    let jumping = jumping_wall_components(
        &doc.data,
        &doc.weight,
        &doc.test_elements,
        &lo,
        &hi,
        DEFAULT_CELL_BUDGET,
    )
    .unwrap();
    let upper = upper_family(&doc.data, 7);
    assert_eq!(
        forms(&prop13),
        vec![form(&[0, 1], 1), form(&[0, 1], 2), form(&[1, 0], 1)],
        "trivial-estimate set"
    );
    assert!(
        is_subset(&prop13, &jumping),
        "prop13 inside the jumping-wall set"
    );
    assert!(
        is_subset(&jumping, &upper),
        "jumping-wall set inside the upper family"
    );
    pass(
        "2",
        "prop13 set inside jumping-wall set inside upper family (c_max = 7), exact",
    );
}

#[test]
fn criterion_3_wall_on_the_klt_boundary_is_excluded() {
    let doc = bundled();
    let (lo, hi) = default_box(&doc.data, &doc.weight).unwrap();
    let complex =
        wall_complex(&doc.data, &doc.test_elements, &lo, &hi, DEFAULT_CELL_BUDGET).unwrap();
    let wall = complex
        .candidates
        .iter()
        .position(|c| c.form == form(&[1, 0], -2))
        .expect("lambda_1 = 2 is a candidate wall");
    assert!(
        complex.jump_facets.iter().any(|j| j.candidate == wall),
        "lambda_1 = 2 carries a jump facet"
    );
    let emitted = jumping_wall_components(
        &doc.data,
        &doc.weight,
        &doc.test_elements,
        &lo,
        &hi,
        DEFAULT_CELL_BUDGET,
    )
    .unwrap();
    assert!(
        !forms(&emitted).contains(&form(&[1, 0], 2)),
        "s1 + 2 must not be emitted: the wall only touches the KLT boundary"
    );
    pass(
        "3",
        "wall lambda_1 = 2 exists in the complex but is not emitted, exact",
    );
}

#[test]
fn criterion_4_one_variable_monomials() {
    for n in 1..=3u64 {
        let data = ResolutionData {
            r: 1,
            divisors: vec![Divisor {
                name: "C".into(),
                orders: vec![n],
                k: 0,
                kind: DivisorKind::StrictTransform,
            }],
            strata: vec![],
            real_mode: false,
            dim: Some(1),
        };
        let weight = WeightVector { a: vec![1] };
        let (components, _) = prop13_components(&data, &weight);
        let mut roots: Vec<Rat> = components.iter().map(|c| c.root().unwrap()).collect();
        roots.sort_by(|a, b| b.cmp(a));
        assert_eq!(roots, monomial_bfunction_roots(n), "roots for x^{n}");
        let lct = lct_polytope(&data).unwrap();
        let top = lct
            .polyhedron
            .vertices()
            .iter()
            .map(|v| v[0].clone())
            .max()
            .unwrap();
        assert_eq!(top, Rat::new(1.into(), n.into()), "lct of x^{n}");
    }
    pass(
        "4",
        "x, x^2, x^3: prop13 zero sets equal the classical b-function roots; lct = 1/N",
    );
}

// shared random generators for criterion 5

fn random_data(rng: &mut StdRng, max_divisors: usize) -> ResolutionData {
    loop {
        let n = rng.gen_range(1..=max_divisors);
        let divisors: Vec<Divisor> = (0..n)
            .map(|i| {
                let orders = vec![rng.gen_range(0..=2u64), rng.gen_range(0..=2u64)];
                let k = rng.gen_range(0..=1u64);
                Divisor {
                    name: format!("E{i}"),
                    orders,
                    k,
                    kind: if k == 0 {
                        DivisorKind::StrictTransform
                    } else {
                        DivisorKind::Exceptional
                    },
                }
            })
            .collect();
        let data = ResolutionData {
            r: 2,
            divisors,
            strata: vec![],
            real_mode: false,
            dim: None,
        };
        let supported = data
            .divisors
            .iter()
            .all(|d| d.orders.iter().any(|&x| x > 0));
        let columns = (0..2).all(|j| data.divisors.iter().any(|d| d.orders[j] > 0));
        if supported && columns {
            return data;
        }
    }
}

fn random_weight(rng: &mut StdRng, data: &ResolutionData) -> WeightVector {
    loop {
        let a = vec![rng.gen_range(0..=2u64), rng.gen_range(0..=2u64)];
        if data
            .divisors
            .iter()
            .any(|d| d.orders.iter().zip(&a).map(|(&n, &w)| n * w).sum::<u64>() > 0)
        {
            return WeightVector { a };
        }
    }
}

fn random_elements(rng: &mut StdRng, data: &ResolutionData, count: usize) -> Vec<TestElement> {
    (0..count)
        .map(|i| TestElement {
            name: format!("h{i}"),
            orders: (0..data.divisors.len())
                .map(|_| rng.gen_range(0..=4u64))
                .collect(),
        })
        .collect()
}

#[test]
fn criterion_5a_pattern_antitonicity() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(501);
    for _ in 0..5 {
        let data = random_data(&mut rng, 4);
        let elements = random_elements(&mut rng, &data, 6);
        for _ in 0..500 {
            let a = vec![rat(rng.gen_range(0..=16), 4), rat(rng.gen_range(0..=16), 4)];
            let b: Vec<Rat> = a.iter().map(|x| x + rat(rng.gen_range(0..=8), 4)).collect();
            let pa = pattern(&a, &data, &elements);
            let pb = pattern(&b, &data, &elements);
            assert!(pb.is_subset(&pa), "antitonicity violated at {a:?} <= {b:?}");
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30));
    pass(
        "5a",
        &format!("antitonicity on 500 grid pairs x 5 instances ({elapsed:?})"),
    );
}

#[test]
fn criterion_5b_grid_oracle() {
    let started = Instant::now();
    let doc = bundled();
    let lo = vec![rat_int(0), rat_int(0)];
    let hi = vec![rat_int(3), rat_int(3)];
    let complex =
        wall_complex(&doc.data, &doc.test_elements, &lo, &hi, DEFAULT_CELL_BUDGET).unwrap();
    let rep = grid_pattern_oracle(&doc.data, &doc.test_elements, &complex, 7).unwrap();
    assert!(rep.passed(), "bundled data: {:?}", rep.mismatches);

    let mut rng = StdRng::seed_from_u64(502);
    for trial in 0..10 {
        let data = random_data(&mut rng, 4);
        let elements = random_elements(&mut rng, &data, 6);
        let side = rat_int(rng.gen_range(2..=4));
        let lo = vec![rat_int(0), rat_int(0)];
        let hi = vec![side.clone(), side];
        let complex = wall_complex(&data, &elements, &lo, &hi, DEFAULT_CELL_BUDGET).unwrap();
        let rep = grid_pattern_oracle(&data, &elements, &complex, 7).unwrap();
        assert!(rep.passed(), "trial {trial}: {:?}", rep.mismatches);
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30));
    pass(
        "5b",
        &format!(
            "grid oracle clean at denominator 7 on bundled + 10 random instances ({elapsed:?})"
        ),
    );
}

#[test]
fn criterion_5c_vertex_oracle() {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(503);
    let mut checked = 0;
    while checked < 50 {
        let dim = rng.gen_range(2..=3usize);
        let count = rng.gen_range(1..=10usize);
        let hs: Vec<HalfSpace> = (0..count)
            .map(|_| {
                let coeffs: Vec<Rat> = (0..dim).map(|_| rat_int(rng.gen_range(-4..=4))).collect();
                HalfSpace::le(AffineForm::new(coeffs, rat_int(rng.gen_range(-4..=4))))
            })
            .filter(|h| !h.form.is_zero())
            .collect();
        let oracle = vertex_oracle(&hs, dim).unwrap();
        let poly = Polyhedron::intersect(&hs, dim).unwrap();
        let mut engine = poly.vertices().to_vec();
        engine.sort();
        assert_eq!(engine, oracle, "halfspaces {hs:?}");
        checked += 1;
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30));
    pass(
        "5c",
        &format!("double description equals brute force on 50 random halfspace sets ({elapsed:?})"),
    );
}

#[test]
fn criterion_5d_sign_conditions() {
    let started = Instant::now();
    let doc = bundled();
    let rep = report(
        &doc.data,
        &doc.weight,
        &doc.test_elements,
        None,
        None,
        None,
        DEFAULT_CELL_BUDGET,
    )
    .unwrap();
    for c in &rep.lower {
        assert!(
            sign_conditions_hold(&c.form, &doc.weight),
            "component {:?}",
            c.form
        );
    }
    let mut rng = StdRng::seed_from_u64(504);
    for _ in 0..8 {
        let data = random_data(&mut rng, 4);
        let weight = random_weight(&mut rng, &data);
        let elements = random_elements(&mut rng, &data, 6);
        let wall_box = Some((vec![rat_int(0), rat_int(0)], vec![rat_int(4), rat_int(4)]));
        let rep = report(
            &data,
            &weight,
            &elements,
            wall_box,
            None,
            None,
            DEFAULT_CELL_BUDGET,
        )
        .unwrap();
        for c in &rep.lower {
            assert!(
                sign_conditions_hold(&c.form, &weight),
                "component {:?} under a = {:?}",
                c.form,
                weight.a
            );
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30));
    pass(
        "5d",
        &format!("every emitted lower component passes the sign conditions ({elapsed:?})"),
    );
}

#[test]
fn criterion_5e_lct_minimality_per_slope() {
    let started = Instant::now();
    let scaled_constant = |comp: &Component, slope: &[Rat]| -> Rat {
        let j = comp
            .form
            .coeffs
            .iter()
            .position(|x| !num::Zero::is_zero(x))
            .unwrap();
        &comp.form.constant * &(&slope[j] / &comp.form.coeffs[j])
    };
    let check = |rep: &BoundsReport, lct: &[Component]| {
        for facet_comp in lct {
            let slope = facet_comp.slope();
            for c in &rep.lower {
                if c.slope() == slope {
                    assert!(
                        scaled_constant(facet_comp, &slope) <= scaled_constant(c, &slope),
                        "{:?} is closer to the origin than the LCT component {:?}",
                        c.form,
                        facet_comp.form
                    );
                }
            }
        }
    };
    let doc = bundled();
    let rep = report(
        &doc.data,
        &doc.weight,
        &doc.test_elements,
        None,
        None,
        None,
        DEFAULT_CELL_BUDGET,
    )
    .unwrap();
    let lct = lct_facet_components(&doc.data, &doc.weight).unwrap();
    check(&rep, &lct);

    let mut rng = StdRng::seed_from_u64(505);
    for _ in 0..8 {
        let data = random_data(&mut rng, 4);
        let weight = random_weight(&mut rng, &data);
        let elements = random_elements(&mut rng, &data, 6);
        let wall_box = Some((vec![rat_int(0), rat_int(0)], vec![rat_int(4), rat_int(4)]));
        let rep = report(
            &data,
            &weight,
            &elements,
            wall_box,
            None,
            None,
            DEFAULT_CELL_BUDGET,
        )
        .unwrap();
        let lct = lct_facet_components(&data, &weight).unwrap();
        check(&rep, &lct);
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(30));
    pass(
        "5e",
        &format!("per slope, no lower component beats the LCT-facet constant ({elapsed:?})"),
    );
}

#[test]
fn criterion_6_report_is_byte_deterministic() {
    let bin = env!("CARGO_BIN_EXE_bsloci");
    let run = || {
        let out = std::process::Command::new(bin)
            .args([
                "report",
                data_file("cusp_line.json").to_str().unwrap(),
                "--reference",
                data_file("cusp_line_bs.json").to_str().unwrap(),
            ])
            .output()
            .expect("binary runs");
        assert!(
            out.status.success(),
            "stderr: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        out.stdout
    };
    let first = run();
    let second = run();
    assert!(!first.is_empty());
    assert_eq!(first, second, "two runs differ");
    pass("6", "two `report` runs produce byte-identical JSON");
}
