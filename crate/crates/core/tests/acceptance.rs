//! Acceptance suite. One test per shipped acceptance criterion; each test
//! prints a single `acceptance criterion N (...): PASS (...)` line on
//! success (visible with `cargo test --test acceptance -- --nocapture`).
//!
//! The heavy index reports (n = 1..8 and the exploratory n = 12) are
//! computed once and shared across criteria through `OnceLock`.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use common::{dot_supports, DenseOracle};
use hind_core::kernel::{ideal_span_rows, VerifiedRelation};
use hind_core::{
    compute_index, enumerate_monomials, kernel_generators, odot, replicate_hand_relations, sqe,
    verify_equivariant_maps, wreath_basis, EchelonState, IndexOptions, IndexReport, Membership,
    NumericOptions, PolyZ2, ProjectionMatrix, SparseRow, WreathClass,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn pass(id: u32, name: &str, detail: &str, started: Instant) {
    let elapsed = started.elapsed().as_secs_f64();
    if detail.is_empty() {
        println!("acceptance criterion {id} ({name}): PASS ({elapsed:.2}s)");
    } else {
        println!("acceptance criterion {id} ({name}): PASS ({detail}; {elapsed:.2}s)");
    }
}

fn small_reports() -> &'static [IndexReport] {
    static CACHE: OnceLock<Vec<IndexReport>> = OnceLock::new();
    CACHE.get_or_init(|| {
        (1..=8)
            .map(|n| compute_index(n, &IndexOptions::default()).expect("report is consistent"))
            .collect()
    })
}

fn report_n12() -> &'static IndexReport {
    static CACHE: OnceLock<IndexReport> = OnceLock::new();
    CACHE.get_or_init(|| compute_index(12, &IndexOptions::default()).expect("report is consistent"))
}

#[test]
fn criterion_1_small_ranks_match_the_known_values() {
    let started = Instant::now();
    let expected = [1u32, 3, 1, 7, 1, 3, 1, 15];
    for (report, want) in small_reports().iter().zip(expected) {
        assert_eq!(report.hind, want, "hind({}) should be {want}", report.n);
        assert_eq!(
            report.flags.exact_ok,
            Some(true),
            "n = {}: computed value must match the predicted exact value",
            report.n
        );
    }
    pass(
        1,
        "small-rank values n = 1..8",
        "hind = 1,3,1,7,1,3,1,15",
        started,
    );
}

#[test]
fn criterion_2_upper_kernel_membership() {
    let started = Instant::now();
    for report in small_reports() {
        let top = report.degrees.last().expect("degrees are nonempty");
        assert_eq!(u64::from(top.d), 2 * report.n, "top degree is 2n");
        assert!(
            top.c_in_ideal,
            "c^{} must lie in I_{} for n = {}",
            top.d, top.d, report.n
        );
        assert_eq!(report.flags.upper_kernel_ok, Some(true));
    }
    pass(2, "upper kernel bound c^2n in I_2n, n = 1..8", "", started);
}

#[test]
fn criterion_3_exploratory_gap_case_n12() {
    let started = Instant::now();
    let report = report_n12();
    assert!(
        report.flags.exploratory,
        "n = 12 has no predicted exact value"
    );
    assert_eq!(report.flags.predicted_exact, None);
    assert_eq!(report.flags.lower_bound, 7);
    assert_eq!(report.flags.upper_bound, 23);
    assert!(
        (7..=23).contains(&report.hind),
        "hind(12) = {} violates the a-priori bounds",
        report.hind
    );
    assert_eq!(report.degrees.len(), 24);
    // Membership is monotone: once c^d falls into I_d it stays there.
    for pair in report.degrees.windows(2) {
        assert!(!pair[0].c_in_ideal || pair[1].c_in_ideal);
    }
    pass(
        3,
        "exploratory case n = 12",
        &format!("hind(12) = {}", report.hind),
        started,
    );
}

#[test]
fn criterion_4_hand_relation_chains() {
    let started = Instant::now();
    let mut verified = 0usize;
    // Odd ranks: c^2 already falls into the ideal.
    for n in [3usize, 5] {
        let relations = replicate_hand_relations(n).expect("odd chain verifies");
        assert!(relations.iter().any(|r| r.degree == 2 && !r.extended));
        verified += relations.len();
    }
    // Ranks 2 mod 4: c^3 + transfer terms, then c^4.
    for n in [2usize, 6] {
        let relations = replicate_hand_relations(n).expect("2 mod 4 chain verifies");
        assert!(relations.iter().any(|r| r.degree == 3 && !r.extended));
        assert!(relations.iter().any(|r| r.degree == 4 && !r.extended));
        verified += relations.len();
    }
    // Powers of two: the top identity needs the extended ideal.
    for n in [2usize, 4, 8] {
        let relations = replicate_hand_relations(n).expect("power-of-two chain verifies");
        let top = 2 * n as u32 - 1;
        assert!(
            relations
                .iter()
                .any(|r: &VerifiedRelation| r.degree == top && r.extended),
            "n = {n}: extended identity in degree {top} missing"
        );
        verified += relations.len();
    }
    pass(
        4,
        "hand relation chains",
        &format!("{verified} identities"),
        started,
    );
}

#[test]
fn criterion_5_divisibility_monotonicity() {
    let started = Instant::now();
    let mut computed: Vec<(u64, u32)> = small_reports().iter().map(|r| (r.n, r.hind)).collect();
    let twelve = report_n12();
    computed.push((twelve.n, twelve.hind));
    let mut pairs = 0usize;
    for &(d, hind_d) in &computed {
        for &(n, hind_n) in &computed {
            if d < n && n % d == 0 {
                assert!(
                    hind_d <= hind_n,
                    "hind({d}) = {hind_d} > hind({n}) = {hind_n} although {d} divides {n}"
                );
                pairs += 1;
            }
        }
    }
    assert!(
        pairs >= 10,
        "expected a meaningful number of divisor pairs, got {pairs}"
    );
    pass(
        5,
        "divisibility monotonicity",
        &format!("{pairs} divisor pairs"),
        started,
    );
}

#[test]
fn criterion_6_streaming_echelon_matches_dense_oracle() {
    let started = Instant::now();
    let mut comparisons = 0usize;

    // Exhaustive: the actual ideal matrices for n = 1, 2 in every degree.
    for n in [1usize, 2] {
        let gens = kernel_generators(n);
        for d in 1..=(2 * n as u32) {
            let basis = wreath_basis(n, d);
            let rows = ideal_span_rows(&gens, d);
            let mut streaming = EchelonState::new(basis.len());
            let mut dense = DenseOracle::new(basis.len());
            for row in &rows {
                let grew_streaming = streaming.insert(row).unwrap();
                let grew_dense = dense.insert(row.support());
                assert_eq!(grew_streaming, grew_dense);
            }
            assert_eq!(streaming.rank(), dense.rank());
            let c_row = basis.coordinate_vector(&WreathClass::c_power(n, d));
            let verdict = streaming.membership(&c_row).unwrap();
            assert_eq!(verdict.is_member(), dense.contains(c_row.support()));
            comparisons += 1;
        }
    }

    // Randomized: 200 instances with dimensions up to 512.
    let mut rng = ChaCha8Rng::seed_from_u64(0x6f7261636c65);
    for _ in 0..200 {
        let dim = rng.gen_range(1..=512usize);
        let n_rows = rng.gen_range(0..=dim.min(64));
        let mut streaming = EchelonState::new(dim);
        let mut dense = DenseOracle::new(dim);
        let mut inserted: Vec<Vec<u32>> = Vec::new();
        for _ in 0..n_rows {
            let support_len = rng.gen_range(0..=dim.min(24));
            let support: Vec<u32> = (0..support_len)
                .map(|_| rng.gen_range(0..dim as u32))
                .collect();
            let row = SparseRow::new(support.clone());
            let grew_streaming = streaming.insert(&row).unwrap();
            let grew_dense = dense.insert(&support);
            assert_eq!(grew_streaming, grew_dense);
            inserted.push(support);
        }
        assert_eq!(streaming.rank(), dense.rank());

        for _ in 0..10 {
            // Half the queries are spans of inserted rows, half arbitrary.
            let support: Vec<u32> = if rng.gen_bool(0.5) && !inserted.is_empty() {
                let mut acc = Vec::new();
                for row in &inserted {
                    if rng.gen_bool(0.5) {
                        acc.extend_from_slice(row);
                    }
                }
                acc
            } else {
                let support_len = rng.gen_range(0..=dim.min(24));
                (0..support_len)
                    .map(|_| rng.gen_range(0..dim as u32))
                    .collect()
            };
            let query = SparseRow::new(support.clone());
            let verdict = streaming.membership(&query).unwrap();
            assert_eq!(verdict.is_member(), dense.contains(&support));
            if let Membership::NotInSpan { certificate } = &verdict {
                // The certificate must annihilate the span and expose the query.
                for row in &inserted {
                    assert_eq!(dot_supports(certificate.support(), row), 0);
                }
                assert_eq!(dot_supports(certificate.support(), &support), 1);
            }
            comparisons += 1;
        }
        comparisons += 1;
    }

    pass(
        6,
        "streaming echelon vs dense oracle",
        &format!("{comparisons} comparisons"),
        started,
    );
}

#[test]
fn criterion_7_algebra_property_suite() {
    let started = Instant::now();
    const CAP: u32 = 16;
    let mut rng = ChaCha8Rng::seed_from_u64(0x616c6765627261);
    let mut cases = 0usize;

    fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> PolyZ2 {
        let terms = rng.gen_range(0..=max_terms);
        let monos = (0..terms).map(|_| {
            let d = rng.gen_range(0..=max_deg);
            let pool = enumerate_monomials(n, d);
            pool[rng.gen_range(0..pool.len())].clone()
        });
        PolyZ2::from_monomials(n, monos)
    }

    fn random_class(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> WreathClass {
        let terms = rng.gen_range(0..=max_terms);
        let elems = (0..terms)
            .map(|_| {
                let d = rng.gen_range(0..=max_deg);
                let basis = wreath_basis(n, d);
                basis.elements()[rng.gen_range(0..basis.len())].clone()
            })
            .collect::<Vec<_>>();
        WreathClass::from_elements(n, elems)
    }

    let cap = Some(CAP);
    for _ in 0..250 {
        let n = rng.gen_range(1..=3usize);
        let a = random_class(&mut rng, n, 8, 4);
        let b = random_class(&mut rng, n, 8, 4);
        let c = random_class(&mut rng, n, 8, 4);

        // Commutativity and associativity of the cup product (capped; the
        // cap is compatible because degrees only add).
        let ab = a.checked_mul(&b, cap).unwrap();
        let ba = b.checked_mul(&a, cap).unwrap();
        assert_eq!(ab, ba);
        cases += 1;
        let ab_c = ab.checked_mul(&c, cap).unwrap();
        let a_bc = a
            .checked_mul(&b.checked_mul(&c, cap).unwrap(), cap)
            .unwrap();
        assert_eq!(ab_c, a_bc);
        cases += 1;

        // Distributivity over addition.
        let b_plus_c = b.checked_add(&c).unwrap();
        let lhs = a.checked_mul(&b_plus_c, cap).unwrap();
        let rhs = a
            .checked_mul(&b, cap)
            .unwrap()
            .checked_add(&a.checked_mul(&c, cap).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        cases += 1;

        // Characteristic 2: every class squares through the Sq rule, and
        // x + x = 0.
        assert!(a.checked_add(&a).unwrap().is_zero());
        cases += 1;
    }

    for _ in 0..250 {
        let n = rng.gen_range(1..=3usize);
        let p = random_poly(&mut rng, n, 6, 4);
        let q = random_poly(&mut rng, n, 6, 4);

        // Sqe is multiplicative. Multiplying by 1 under the cap truncates
        // the left side to the degrees the capped right side can see.
        let pq = p.checked_mul(&q).unwrap();
        let lhs = sqe(&pq).checked_mul(&WreathClass::one(n), cap).unwrap();
        let rhs = sqe(&p).checked_mul(&sqe(&q), cap).unwrap();
        assert_eq!(lhs, rhs);
        cases += 1;

        // ...and quadratic: the cross term is the odot pairing.
        let p_plus_q = p.checked_add(&q).unwrap();
        let lhs = sqe(&p_plus_q);
        let rhs = sqe(&p)
            .checked_add(&sqe(&q))
            .unwrap()
            .checked_add(&odot(&p, &q))
            .unwrap();
        assert_eq!(lhs, rhs);
        cases += 1;

        // odot is symmetric with zero diagonal, and c annihilates its image.
        assert_eq!(odot(&p, &q), odot(&q, &p));
        cases += 1;
        assert!(odot(&p, &p).is_zero());
        cases += 1;
        let c_times = WreathClass::c_power(n, 1)
            .checked_mul(&odot(&p, &q), cap)
            .unwrap();
        assert!(c_times.is_zero());
        cases += 1;
    }

    assert!(
        cases >= 1000,
        "property suite must cover at least 1000 cases, got {cases}"
    );
    pass(
        7,
        "algebra property suite",
        &format!("{cases} cases"),
        started,
    );
}

#[test]
fn criterion_8_numeric_equivariance_suite() {
    let started = Instant::now();
    let summary = verify_equivariant_maps(&NumericOptions {
        n: 4,
        samples: 10_000,
        seed: 2026,
    });
    assert_eq!(summary.samples, 10_000);
    assert!(
        summary.within_tolerances(),
        "summary out of tolerance: {summary:?}"
    );
    assert!((summary.min_norm - 0.5).abs() <= 1e-9);
    assert!(summary.max_equivariance_error <= 1e-12);
    assert!(summary.max_idempotency_error <= 1e-9);
    assert!(summary.max_symmetry_error <= 1e-9);
    assert!(summary.max_trace_error <= 1e-9);
    assert!(summary.max_spectrum_error <= 1e-7);

    // Two-sided norm check on an independent stream: the sphere map must
    // land on the radius-1/2 sphere from both sides.
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10_000 {
        let p = ProjectionMatrix::sample(4, &mut rng);
        let norm = p.sphere_map().norm();
        assert!(
            (norm - 0.5).abs() <= 1e-9,
            "sphere-map norm {norm} off the sphere"
        );
    }
    pass(
        8,
        "numeric equivariance suite",
        "10000 + 10000 samples",
        started,
    );
}
