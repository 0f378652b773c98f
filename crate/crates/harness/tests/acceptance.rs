//! Acceptance suite: one test per criterion, every check exact.
//!
//! Each test pins its instance source (seed, count, bounds) in code and
//! prints a `[PASS]` line on success, so `cargo test --test acceptance --
//! --nocapture` reads as a checklist. Any violation report is rendered into
//! the panic message.

use finconv_core::components::check_kent;
use finconv_core::schedules::check_boundaries;
use finconv_harness::doc::Document;
use finconv_harness::enumerate::count_topologies;
use finconv_harness::mine::{mine, InstanceSource, MiningTask};

fn run(property: &str, source: InstanceSource) -> finconv_harness::mine::MiningReport {
    let report = mine(&MiningTask { property: property.into(), source, out_dir: None })
        .unwrap_or_else(|e| panic!("mining `{property}` failed to run: {e}"));
    assert!(report.ok(), "criterion violated:\n{}", report.render());
    report
}

fn sampled(seed: u64, count: u64, max_points: usize) -> InstanceSource {
    InstanceSource::Sampled { seed, count, max_points }
}

fn exhaustive(max_points: usize) -> InstanceSource {
    InstanceSource::Exhaustive { max_points, up_to_iso: false }
}

fn corpus(name: &str) -> Document {
    let path = format!("{}/corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"));
    Document::parse(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

/// Criterion 1: pushforward functoriality and the pullback lemma,
/// exhaustively for carriers up to 4 and target carriers up to 3, in under
/// ten seconds.
#[test]
fn criterion_01_filter_laws() {
    let started = std::time::Instant::now();
    let functoriality = run("filter-functoriality", exhaustive(4));
    let ultra = run("filter-ultra", exhaustive(4));
    let pullback = run("filter-pullback", exhaustive(4));
    let elapsed = started.elapsed();
    assert!(
        elapsed < std::time::Duration::from_secs(10),
        "filter sweep took {elapsed:?}"
    );
    println!(
        "[PASS] criterion 1: filter laws exhaustively ({} + {} + {} instances, {elapsed:?})",
        functoriality.instances, ultra.instances, pullback.instances
    );
}

/// Criterion 2: the exponential-law bijection on 500 sampled triples, plus
/// the frozen Sierpiński hom-set count, re-derived here by raw double
/// enumeration independent of the library's enumerator.
#[test]
fn criterion_02_exponential_law() {
    let report = run("exp-law", sampled(0x02, 500, 3));

    // Sierpiński on {0,1}: edge relation {(0,0),(1,1),(0,1)}.
    let s_edge = |a: usize, x: usize| a == x || (a == 0 && x == 1);
    // All set maps {0,1}² -> {0,1} that are homomorphisms of the product
    // relation (raw quantifier, no library calls).
    let pair = |a: usize, b: usize| a * 2 + b;
    let mut lhs = 0usize;
    for mask in 0u32..16 {
        let f = |p: usize| (mask >> p & 1) as usize;
        let mut ok = true;
        for (a, b) in (0..2).flat_map(|a| (0..2).map(move |b| (a, b))) {
            for (x, y) in (0..2).flat_map(|x| (0..2).map(move |y| (x, y))) {
                if s_edge(a, x) && s_edge(b, y) && !s_edge(f(pair(a, b)), f(pair(x, y))) {
                    ok = false;
                }
            }
        }
        if ok {
            lhs += 1;
        }
    }
    // The three continuous self-maps of Sierpiński and the edge rule between
    // them give the exponential; count maps {0,1} -> {0,1,2} that are
    // homomorphisms into it.
    let maps = [[0usize, 0], [0, 1], [1, 1]];
    let exp_edge = |g: usize, f: usize| {
        (0..2).all(|a| {
            (0..2).all(|x| !s_edge(a, x) || s_edge(maps[g][a], maps[f][x]))
        })
    };
    // An assignment (g, f) for the two Sierpiński points is continuous iff
    // every edge maps to an exponential edge; the loops on the diagonal are
    // automatic for continuous maps, leaving the one edge 0>1.
    let mut rhs = 0usize;
    for g in 0..3 {
        for f in 0..3 {
            if exp_edge(g, g) && exp_edge(f, f) && exp_edge(g, f) {
                rhs += 1;
            }
        }
    }
    assert_eq!(lhs, 6, "independent |hom(S×S,S)| drifted from the frozen value");
    assert_eq!(rhs, 6, "independent |hom(S,S^S)| drifted from the frozen value");
    println!(
        "[PASS] criterion 2: exponential law on {} sampled triples; frozen count 6 = 6",
        report.instances
    );
}

/// Criterion 3: evaluation maps are continuous on 1000 sampled pairs with up
/// to 4 points.
#[test]
fn criterion_03_evaluation_continuity() {
    let report = run("ev-continuous", sampled(0x03, 1000, 4));
    println!(
        "[PASS] criterion 3: evaluation continuous on {} sampled exponentials",
        report.instances
    );
}

/// Criterion 4: exponentials of 3-point topologies are transitive over all
/// 29 × 29 labeled pairs.
#[test]
fn criterion_04_epitop_collapse_evidence() {
    let report = run("exp-transitive", exhaustive(3));
    assert_eq!(report.instances, 29 * 29);
    println!("[PASS] criterion 4: all {} topology pairs give transitive exponentials", report.instances);
}

/// Criterion 5: the pasting lemma on 10⁴ sampled hypothesis-satisfying
/// instances with up to 6 points, plus the shipped Mixed-cover
/// counterexample reporting a discontinuous glue.
#[test]
fn criterion_05_pasting_lemma() {
    let report = run("pasting", sampled(0x05, 10_000, 6));

    let doc = corpus("pasting-counterexample.fcv");
    let cover = doc.cover("C").expect("corpus cover");
    let target = doc.space("D").expect("corpus target");
    let piece_maps: Vec<Vec<usize>> = ["m0", "m1"]
        .iter()
        .map(|name| {
            let m = doc.map(name).expect("corpus piece map");
            m.assignment().to_vec()
        })
        .collect();
    let verdict = cover.check_pasting(&piece_maps, target).expect("well-formed");
    assert!(!verdict.hypotheses_met);
    assert!(verdict.pieces_continuous);
    assert!(!verdict.glue_continuous, "the counterexample must report a discontinuous glue");
    assert!(!verdict.violates_lemma());
    println!(
        "[PASS] criterion 5: pasting lemma on {} instances; Mixed counterexample glue_continuous = false",
        report.instances
    );
}

/// Criterion 6: reflector idempotence, monotonicity, the exhaustive
/// universal property on spaces up to 3 points, and final-sink preservation
/// on 1000 sampled surjections.
#[test]
fn criterion_06_reflector() {
    let idem = run("reflector-idempotent", sampled(0x06, 1000, 5));
    let mono = run("reflector-monotone", sampled(0x61, 1000, 5));
    let universal = run("reflector-universal", exhaustive(3));
    let sinks = run("reflector-final-sinks", sampled(0x62, 1000, 5));
    println!(
        "[PASS] criterion 6: reflector laws ({} + {} sampled, {} exhaustive, {} sink instances)",
        idem.instances, mono.instances, universal.instances, sinks.instances
    );
}

/// Criterion 7: Kent's criterion exhaustively over topological domains up to
/// 4 points and all surjections onto at most 3 labels, with the
/// disjoint-chains witness as a both-sides-negative regression.
#[test]
fn criterion_07_kent_criterion() {
    let report = run("kent", exhaustive(4));

    let doc = corpus("disjoint-chains.fcv");
    let x = doc.space("X").expect("corpus space");
    let q = doc.map("q").expect("corpus map");
    let verdict = check_kent(x, &q.set_map()).expect("topological domain");
    assert!(!verdict.structures_coincide, "witness quotient structures must differ");
    assert!(!verdict.biquotient, "witness projection must not be biquotient");
    assert!(verdict.criterion_agrees());
    println!(
        "[PASS] criterion 7: Kent agreement on {} surjections; witness doubly negative",
        report.instances
    );
}

/// Criterion 8: path components preserve products on 1000 sampled pairs.
#[test]
fn criterion_08_component_products() {
    let report = run("pc-product", sampled(0x08, 1000, 5));
    println!("[PASS] criterion 8: component-product isomorphism on {} pairs", report.instances);
}

/// Criterion 9: induced multiplications on components are continuous for 500
/// sampled continuous multiplications.
#[test]
fn criterion_09_induced_multiplication() {
    let report = run("induced-mult", sampled(0x09, 500, 4));
    println!("[PASS] criterion 9: induced multiplication continuous on {} instances", report.instances);
}

/// Criterion 10: the transitivity filter over all reflexive relations
/// reproduces the labeled topology counts 1, 4, 29, 355.
#[test]
fn criterion_10_enumeration_cross_check() {
    let counts: Vec<usize> = (1..=4)
        .map(|n| count_topologies(n).expect("within bounds"))
        .collect();
    assert_eq!(counts, vec![1, 4, 29, 355]);
    println!("[PASS] criterion 10: labeled topology counts 1, 4, 29, 355 reproduced");
}

/// Criterion 11: every schedule identity holds exactly — the 1/64 grid, the
/// symbolic breakpoint agreements for chi, and chi(0,·) = id.
#[test]
fn criterion_11_schedules() {
    let report = check_boundaries();
    for check in &report.checks {
        assert!(check.ok, "schedule identity failed: {}", check.name);
    }
    let names: Vec<&str> = report.checks.iter().map(|c| c.name).collect();
    assert!(names.contains(&"chi(0,t) = t"));
    assert!(names.contains(&"chi pieces 1,2 agree at t=(1+s)/4 (both 1/4)"));
    assert!(names.contains(&"chi pieces 2,3 agree at t=(2+s)/4 (both 1/2)"));
    println!("[PASS] criterion 11: all {} schedule identities hold exactly", report.checks.len());
}

/// Criterion 12: every sampled pseudotopological group verifies the H-group
/// clauses — all eight groups of order at most 6, 200 compatible structures
/// each.
#[test]
fn criterion_12_h_groups() {
    // The group property cycles the catalog by instance index, so 1600
    // instances are exactly 200 samples for each of the 8 groups.
    let report = run("hgroup-pstop", sampled(0x12, 1600, 6));
    assert_eq!(report.instances, 1600);
    println!("[PASS] criterion 12: H-group clauses on 200 compatible structures per group");
}

/// Criterion 13: quasitopological and pseudotopological together equal
/// topological group over the same catalog sweep, with incompatible
/// structures mixed in.
#[test]
fn criterion_13_group_remark() {
    let report = run("group-remark", sampled(0x13, 1600, 6));
    assert_eq!(report.instances, 1600);
    println!("[PASS] criterion 13: group-predicate equivalence on {} samples", report.instances);
}

/// Criterion 14: component quotients are discrete for every sampled space,
/// and the component lift holds for all 29 labeled 3-point topologies.
#[test]
fn criterion_14_component_discreteness_and_lift() {
    let discrete = run("pc-discrete", sampled(0x14, 1000, 6));
    let lift = run("pc-lift", exhaustive(3));
    assert_eq!(lift.instances, 29);
    println!(
        "[PASS] criterion 14: discrete quotients on {} samples; lift on all 29 topologies",
        discrete.instances
    );
}

/// Criterion 15: the shipped corpus round-trips byte-for-byte, and identical
/// mining tasks render byte-identical reports.
#[test]
fn criterion_15_harness_determinism() {
    let corpus_dir = format!("{}/corpus", env!("CARGO_MANIFEST_DIR"));
    let mut files: Vec<_> = std::fs::read_dir(&corpus_dir)
        .expect("corpus directory ships with the crate")
        .map(|e| e.expect("readable entry").path())
        .filter(|p| p.extension().is_some_and(|e| e == "fcv"))
        .collect();
    files.sort();
    assert!(files.len() >= 5, "corpus shrank unexpectedly");
    for path in &files {
        let text = std::fs::read_to_string(path).expect("readable corpus file");
        let doc = Document::parse(&text).unwrap_or_else(|e| panic!("{path:?}: {e}"));
        assert_eq!(doc.serialize(), text, "round trip changed {path:?}");
    }

    let task = MiningTask {
        property: "pasting".into(),
        source: sampled(0x15, 200, 5),
        out_dir: None,
    };
    let first = mine(&task).expect("task runs").render();
    let second = mine(&task).expect("task runs").render();
    assert_eq!(first, second, "identical tasks must render identical bytes");
    let determinism = run("mining-determinism", sampled(0x15, 1, 4));
    assert!(determinism.ok());
    println!(
        "[PASS] criterion 15: {} corpus files round-trip; reports byte-identical",
        files.len()
    );
}
