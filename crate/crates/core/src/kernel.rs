//! The kernel ideal of the Grassmannian quotient map and the
//! homological index.
//!
//! The wreath product G = O(n) wr Z2 sits in O(2n), and the quotient
//! of the Grassmannian G(2n,n) by the orthocomplement involution is
//! O(2n)/G. The kernel of the restriction H*(BG) -> H*(O(2n)/G) is
//! generated by the positive-degree homogeneous components of
//!
//!   sum_{0 <= i < j <= n} wi (.) wj  +  sum_{i=0}^{n} (1+c)^(n-i) Sqe(wi)
//!
//! with w0 = 1. The homological index of the involution is the
//! largest d with c^d outside the ideal; membership is decided
//! exactly, degree by degree, over GF(2).

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf2::{EchelonState, Membership, SparseRow};
use crate::monomial::Monomial;
use crate::wreath::{odot, sqe, wreath_basis, WreathBasisElement, WreathClass};
use crate::PolyZ2;

#[derive(Debug, Error)]
pub enum KernelError {
    /// The computed report contradicts facts that hold for every n
    /// (kernel upper bound, index bounds, exact values for the
    /// resolved congruence classes). This signals an implementation
    /// bug, never bad input; the offending report is attached for
    /// diagnostics.
    #[error("index computation for n = {} is inconsistent: {details}", report.n)]
    Inconsistent {
        details: String,
        report: Box<IndexReport>,
    },
    /// A relation chain that provably holds failed its membership test.
    #[error("relation {description} failed ideal membership at n = {n}")]
    RelationFailed { n: usize, description: String },
    /// Hand-checked relation chains exist only for n odd, n = 2 mod 4,
    /// and n a power of two.
    #[error("no hand relation chains for n = {n} (need n odd, 2 mod 4, or a power of two)")]
    UnsupportedModulus { n: usize },
}

/// The ideal generators g_1 ... g_2n: homogeneous components of the
/// kernel class for a given n.
pub struct KernelGenerators {
    n: usize,
    gens: Vec<WreathClass>,
}

/// Builds the kernel generators by expanding the defining class with
/// the algebra operations and splitting it into homogeneous parts.
/// The degree-zero component (the unit) is excluded; components above
/// degree 2n vanish identically.
pub fn kernel_generators(n: usize) -> KernelGenerators {
    assert!(n >= 1, "need n >= 1");
    let w = |i: usize| {
        if i == 0 {
            PolyZ2::one(n)
        } else {
            PolyZ2::generator(n, i)
        }
    };
    let one_plus_c = &WreathClass::one(n) + &WreathClass::c_power(n, 1);
    let mut pow = WreathClass::one(n);
    let mut powers = vec![pow.clone()];
    for _ in 0..n {
        pow = &pow * &one_plus_c;
        powers.push(pow.clone());
    }

    let mut master = WreathClass::zero(n);
    for i in 0..=n {
        for j in i + 1..=n {
            master = &master + &odot(&w(i), &w(j));
        }
        master = &master + &(&powers[n - i] * &sqe(&w(i)));
    }
    debug_assert!(master.degrees().iter().all(|&d| d <= 2 * n as u32));

    let gens = (1..=2 * n as u32)
        .map(|d| master.homogeneous_component(d))
        .collect();
    KernelGenerators { n, gens }
}

impl KernelGenerators {
    pub fn arity(&self) -> usize {
        self.n
    }

    /// Largest degree carrying a generator, always 2n.
    pub fn max_degree(&self) -> u32 {
        2 * self.n as u32
    }

    /// The generator of degree d, for 1 <= d <= 2n.
    pub fn generator(&self, d: u32) -> Option<&WreathClass> {
        if d == 0 {
            return None;
        }
        self.gens.get(d as usize - 1)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &WreathClass)> {
        self.gens.iter().enumerate().map(|(i, g)| (i as u32 + 1, g))
    }
}

fn for_each_ideal_row(gens: &KernelGenerators, d: u32, mut f: impl FnMut(SparseRow)) {
    assert!(d >= 1, "ideal spans start at degree 1");
    let n = gens.arity();
    let target = wreath_basis(n, d);
    for k in 1..=d.min(gens.max_degree()) {
        let g = gens.generator(k).expect("k <= 2n");
        let lower = wreath_basis(n, d - k);
        for b in lower.elements() {
            let prod = WreathClass::from_element(n, b.clone())
                .checked_mul(g, None)
                .expect("same arity");
            f(target.coordinate_vector(&prod));
        }
    }
}

/// The spanning rows of the degree-d piece of the ideal: one row per
/// pair (b, g_k) with b running over the basis of degree d - k, for
/// k = 1..min(d, 2n) in ascending order. Deterministic; zero rows are
/// kept so the row count is the predictable sum of basis sizes.
pub fn ideal_span_rows(gens: &KernelGenerators, d: u32) -> Vec<SparseRow> {
    let mut rows = Vec::new();
    for_each_ideal_row(gens, d, |r| rows.push(r));
    rows
}

/// Generator indices that survive the reduced presentation used for
/// the power-of-two relation chains: {2^l - 2^k : 0 <= k <= l} plus
/// {2^l} itself, for n = 2^l.
pub fn surviving_generators(n: usize) -> BTreeSet<usize> {
    assert!(n >= 1 && n.is_power_of_two(), "defined for n = 2^l only");
    let l = n.trailing_zeros();
    let mut surviving: BTreeSet<usize> = (0..=l).map(|k| n - (1usize << k)).collect();
    surviving.remove(&0);
    surviving.insert(n);
    surviving
}

/// Extra rows for the extended ideal at n = 2^l: every basis element
/// of degree d whose monomial content involves a killed generator
/// (one not in [`surviving_generators`]). Setting those wi to zero is
/// compatible with the product table, so singleton rows span the
/// whole extra ideal piece.
pub fn killed_generator_rows(n: usize, d: u32) -> Vec<SparseRow> {
    let surviving = surviving_generators(n);
    let killed: Vec<usize> = (1..=n).filter(|i| !surviving.contains(i)).collect();
    let hits = |m: &Monomial| killed.iter().any(|&i| m.involves(i));
    wreath_basis(n, d)
        .elements()
        .iter()
        .enumerate()
        .filter(|(_, e)| match e {
            WreathBasisElement::Sq { base, .. } => hits(base),
            WreathBasisElement::Od { lo, hi } => hits(lo) || hits(hi),
        })
        .map(|(i, _)| SparseRow::from_sorted(vec![i as u32]))
        .collect()
}

/// Exact membership of a homogeneous class in the ideal (or, with
/// `extended`, the ideal plus the killed-generator rows). The zero
/// class is trivially a member.
pub fn ideal_contains(gens: &KernelGenerators, class: &WreathClass, extended: bool) -> Membership {
    assert_eq!(class.arity(), gens.arity(), "arity mismatch");
    let degrees = class.degrees();
    assert!(degrees.len() <= 1, "class must be homogeneous");
    let Some(&d) = degrees.first() else {
        return Membership::InSpan;
    };
    let n = gens.arity();
    let basis = wreath_basis(n, d);
    let mut state = EchelonState::new(basis.len());
    for_each_ideal_row(gens, d, |row| {
        state.insert(&row).expect("row indices in range");
    });
    if extended {
        for row in killed_generator_rows(n, d) {
            state.insert(&row).expect("row indices in range");
        }
    }
    state
        .membership(&basis.coordinate_vector(class))
        .expect("vector indices in range")
}

/// One verified ideal-membership identity.
pub struct VerifiedRelation {
    pub degree: u32,
    pub extended: bool,
    pub class: WreathClass,
    pub description: String,
}

/// Verifies the relation chains that pin down the index for the three
/// resolved congruence classes of n:
///
/// - n odd: c^2 lies in I_2 (so the index is 1);
/// - n = 2 mod 4: c^3 + 1 (.) w3 + w1 (.) w2 lies in I_3 (at n = 2,
///   where w3 does not exist, the chain specializes to
///   c^3 + w1 (.) w2), and c^4 lies in I_4 (index 3);
/// - n = 2^l >= 2: c^(2n-1) + w_(n-1) (.) w_n lies in the extended
///   ideal at degree 2n-1, which drives the lower bound 2n-1.
///
/// Any failure is an implementation bug and comes back as an error.
pub fn replicate_hand_relations(n: usize) -> Result<Vec<VerifiedRelation>, KernelError> {
    assert!(n >= 1, "need n >= 1");
    let odd = n % 2 == 1;
    let two_mod_four = n % 4 == 2;
    let power_of_two = n.is_power_of_two() && n >= 2;
    if !(odd || two_mod_four || power_of_two) {
        return Err(KernelError::UnsupportedModulus { n });
    }

    let w = |i: usize| {
        if i == 0 {
            Monomial::unit(n)
        } else {
            Monomial::generator(n, i)
        }
    };
    let od = |i: usize, j: usize| {
        WreathClass::from_element(n, WreathBasisElement::od(w(i), w(j)).expect("distinct"))
    };

    let mut chains: Vec<(WreathClass, bool)> = Vec::new();
    if odd {
        chains.push((WreathClass::c_power(n, 2), false));
    }
    if two_mod_four {
        let chain = if n >= 6 {
            &(&WreathClass::c_power(n, 3) + &od(0, 3)) + &od(1, 2)
        } else {
            &WreathClass::c_power(n, 3) + &od(1, 2)
        };
        chains.push((chain, false));
        chains.push((WreathClass::c_power(n, 4), false));
    }
    if power_of_two {
        let d = 2 * n as u32 - 1;
        chains.push((&WreathClass::c_power(n, d) + &od(n - 1, n), true));
    }

    let gens = kernel_generators(n);
    let mut verified = Vec::new();
    for (class, extended) in chains {
        let degree = *class.degrees().first().expect("nonzero chain");
        let description = format!(
            "{class} in I_{degree}{}",
            if extended { " (extended)" } else { "" }
        );
        if !ideal_contains(&gens, &class, extended).is_member() {
            return Err(KernelError::RelationFailed { n, description });
        }
        verified.push(VerifiedRelation {
            degree,
            extended,
            class,
            description,
        });
    }
    Ok(verified)
}

/// One degree of the index computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeRecord {
    pub d: u32,
    pub dim_basis: u64,
    pub dim_ideal: u64,
    pub c_in_ideal: bool,
    /// Witness covector for c^d outside the ideal: support columns of
    /// a functional vanishing on every span row and pairing to 1 with
    /// c^d. Emitted only on request.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<Vec<u32>>,
}

/// Consistency flags attached to a report. The Option fields are None
/// when a truncated degree cap leaves them unevaluable.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReportFlags {
    /// 2^(l+1) - 1 where 2^l exactly divides n.
    pub lower_bound: u32,
    /// 2n - 1.
    pub upper_bound: u32,
    /// The exact index when n is odd, 2 mod 4, or a power of two;
    /// None in the open cases (n = 0 mod 4, not a power of two).
    pub predicted_exact: Option<u32>,
    /// True when no exact value is known for this n: the computed
    /// hind is reported as exploratory, checked against bounds only.
    pub exploratory: bool,
    /// c^(2n) lies in I_2n (forced by the sphere-map upper bound).
    pub upper_kernel_ok: Option<bool>,
    /// lower_bound <= hind <= upper_bound.
    pub bounds_ok: Option<bool>,
    /// hind equals predicted_exact (None when no prediction applies).
    pub exact_ok: Option<bool>,
}

pub const REPORT_SCHEMA: &str = "hind.report/v1";

/// Full result of an index computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct IndexReport {
    pub schema: String,
    pub n: u64,
    /// Highest degree analyzed (2n unless overridden).
    pub degree_cap: u32,
    /// True when degree_cap < 2n; hind is then a lower bound only and
    /// the consistency flags are not evaluable.
    pub truncated: bool,
    pub degrees: Vec<DegreeRecord>,
    /// max{d : 1 <= d <= 2n-1, c^d not in I_d} (0 if c is already in
    /// I_1; a lower bound when truncated).
    pub hind: u32,
    pub flags: ReportFlags,
}

impl IndexReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Flat CSV with one line per degree.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,d,dimBasis,dimIdeal,cInIdeal,hind\n");
        for r in &self.degrees {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.n, r.d, r.dim_basis, r.dim_ideal, r.c_in_ideal, self.hind
            ));
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct IndexOptions {
    /// Analyze degrees 1..=cap instead of 1..=2n. Must lie in 1..=2n.
    pub degree_cap: Option<u32>,
    /// Attach non-membership certificates to degree records.
    pub certificates: bool,
}

fn analyze_degree(gens: &KernelGenerators, d: u32, want_certificate: bool) -> DegreeRecord {
    let n = gens.arity();
    let basis = wreath_basis(n, d);
    let mut state = EchelonState::new(basis.len());
    for_each_ideal_row(gens, d, |row| {
        state.insert(&row).expect("row indices in range");
    });
    let c_vec = basis.coordinate_vector(&WreathClass::c_power(n, d));
    let verdict = state.membership(&c_vec).expect("vector indices in range");
    let certificate = match (&verdict, want_certificate) {
        (Membership::NotInSpan { certificate }, true) => Some(certificate.support().to_vec()),
        _ => None,
    };
    DegreeRecord {
        d,
        dim_basis: basis.len() as u64,
        dim_ideal: state.rank() as u64,
        c_in_ideal: verdict.is_member(),
        certificate,
    }
}

/// Predicted exact index for the resolved congruence classes.
fn predicted_exact(n: usize) -> Option<u32> {
    if n % 2 == 1 {
        Some(1)
    } else if n % 4 == 2 {
        Some(3)
    } else if n.is_power_of_two() {
        Some(2 * n as u32 - 1)
    } else {
        None
    }
}

/// Computes the index report for one n, analyzing every degree up to
/// the cap in parallel. Returns an error when the finished report
/// contradicts any fact that provably holds (see [`ReportFlags`]);
/// such an error always indicates a bug, and carries the report.
pub fn compute_index(n: usize, options: &IndexOptions) -> Result<IndexReport, KernelError> {
    assert!(n >= 1, "need n >= 1");
    let full_cap = 2 * n as u32;
    let cap = options.degree_cap.unwrap_or(full_cap);
    assert!(
        (1..=full_cap).contains(&cap),
        "degree cap must lie in 1..=2n"
    );
    let truncated = cap < full_cap;
    // hind scans degrees up to 2n-1 only; it is exact once they are
    // all present.
    let hind_exact = cap >= full_cap - 1;

    let gens = kernel_generators(n);
    let degrees: Vec<DegreeRecord> = (1..=cap)
        .into_par_iter()
        .map(|d| analyze_degree(&gens, d, options.certificates))
        .collect();

    let hind = degrees
        .iter()
        .filter(|r| r.d < full_cap && !r.c_in_ideal)
        .map(|r| r.d)
        .max()
        .unwrap_or(0);

    let lower_bound = (1u32 << (n.trailing_zeros() + 1)) - 1;
    let upper_bound = full_cap - 1;
    let predicted = predicted_exact(n);
    let flags = ReportFlags {
        lower_bound,
        upper_bound,
        predicted_exact: predicted,
        exploratory: predicted.is_none(),
        upper_kernel_ok: (!truncated).then(|| degrees[full_cap as usize - 1].c_in_ideal),
        bounds_ok: hind_exact.then_some(lower_bound <= hind && hind <= upper_bound),
        exact_ok: match (hind_exact, predicted) {
            (true, Some(p)) => Some(p == hind),
            _ => None,
        },
    };

    let mut violations = Vec::new();
    for r in &degrees {
        if r.dim_ideal > r.dim_basis {
            violations.push(format!(
                "degree {}: ideal dimension {} exceeds basis dimension {}",
                r.d, r.dim_ideal, r.dim_basis
            ));
        }
    }
    for pair in degrees.windows(2) {
        if pair[0].c_in_ideal && !pair[1].c_in_ideal {
            violations.push(format!(
                "membership not monotone between degrees {} and {}",
                pair[0].d, pair[1].d
            ));
        }
    }
    if flags.upper_kernel_ok == Some(false) {
        violations.push(format!("c^{full_cap} escaped I_{full_cap}"));
    }
    if flags.bounds_ok == Some(false) {
        violations.push(format!(
            "hind {hind} outside proven bounds [{lower_bound}, {upper_bound}]"
        ));
    }
    if flags.exact_ok == Some(false) {
        violations.push(format!(
            "hind {hind} differs from the known exact value {}",
            predicted.unwrap()
        ));
    }

    let report = IndexReport {
        schema: REPORT_SCHEMA.to_string(),
        n: n as u64,
        degree_cap: cap,
        truncated,
        degrees,
        hind,
        flags,
    };
    if violations.is_empty() {
        Ok(report)
    } else {
        Err(KernelError::Inconsistent {
            details: violations.join("; "),
            report: Box::new(report),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::binom_mod2;
    use crate::monomial::enumerate_monomials;

    fn gen_string(n: usize, d: u32) -> String {
        kernel_generators(n).generator(d).unwrap().to_string()
    }

    #[test]
    fn small_generators_are_the_hand_values() {
        assert_eq!(gen_string(1, 1), "c + Od[1, w1]");
        assert_eq!(gen_string(1, 2), "Sq[w1]");
        assert_eq!(gen_string(3, 1), "c + Od[1, w1]");
        assert_eq!(gen_string(2, 1), "Od[1, w1]");
        assert_eq!(gen_string(2, 2), "c^2 + Sq[w1] + Od[1, w2]");
        assert_eq!(gen_string(2, 3), "Sq[w1]*c + Od[w1, w2]");
        assert_eq!(gen_string(2, 4), "Sq[w2]");
    }

    /// The expansion through algebra operations must match the closed
    /// form g_d = sum Od(wi,wj)[i+j=d] + sum C(n-i, d-2i) Sq(wi, d-2i).
    #[test]
    fn generators_match_closed_form() {
        for n in 1..=6usize {
            let gens = kernel_generators(n);
            let w = |i: usize| {
                if i == 0 {
                    Monomial::unit(n)
                } else {
                    Monomial::generator(n, i)
                }
            };
            for d in 1..=2 * n as u32 {
                let mut elems = Vec::new();
                for i in 0..=n {
                    for j in i + 1..=n {
                        if (i + j) as u32 == d {
                            elems.push(WreathBasisElement::od(w(i), w(j)).unwrap());
                        }
                    }
                }
                for i in 0..=n {
                    if 2 * i as u32 <= d && binom_mod2((n - i) as u64, (d - 2 * i as u32) as u64) {
                        elems.push(WreathBasisElement::sq(w(i), d - 2 * i as u32));
                    }
                }
                let expect = WreathClass::from_elements(n, elems);
                assert_eq!(gens.generator(d).unwrap(), &expect, "n={n}, d={d}");
            }
        }
    }

    #[test]
    fn generators_are_homogeneous_and_bounded() {
        for n in 1..=5usize {
            let gens = kernel_generators(n);
            assert_eq!(gens.max_degree(), 2 * n as u32);
            assert!(gens.generator(0).is_none());
            assert!(gens.generator(2 * n as u32 + 1).is_none());
            for (d, g) in gens.iter() {
                for e in g.terms() {
                    assert_eq!(e.degree(), d);
                }
            }
        }
    }

    #[test]
    fn odd_degree_generators_have_odd_c_exponents() {
        for n in 1..=8usize {
            let gens = kernel_generators(n);
            for (d, g) in gens.iter() {
                if d % 2 == 0 {
                    continue;
                }
                for e in g.terms() {
                    if let WreathBasisElement::Sq { c_exp, .. } = e {
                        assert!(c_exp % 2 == 1 && *c_exp >= 1, "n={n}, d={d}, term {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn top_generator_contains_sq_wn_at_powers_of_two() {
        for n in [2usize, 4, 8] {
            let gens = kernel_generators(n);
            let top = gens.generator(2 * n as u32).unwrap();
            assert!(top.contains(&WreathBasisElement::sq(Monomial::generator(n, n), 0)));
        }
    }

    #[test]
    fn span_rows_n1_d2() {
        let gens = kernel_generators(1);
        let rows = ideal_span_rows(&gens, 2);
        // one row per element of basis(1,1), plus the g2 row
        assert_eq!(rows.len(), 3);
        let basis = wreath_basis(1, 2);
        let mut state = EchelonState::new(basis.len());
        for r in &rows {
            state.insert(r).unwrap();
        }
        assert_eq!(state.rank(), 3);
        // the span is exactly {c^2, Od(1,w1^2), Sq(w1)}
        for e in basis.elements() {
            let class = WreathClass::from_element(1, e.clone());
            assert!(state
                .membership(&basis.coordinate_vector(&class))
                .unwrap()
                .is_member());
        }
    }

    #[test]
    fn span_row_counts() {
        let gens = kernel_generators(2);
        let count = ideal_span_rows(&gens, 3).len();
        let expect = wreath_basis(2, 2).len() + wreath_basis(2, 1).len() + 1;
        assert_eq!(count, expect);

        for n in 1..=3usize {
            let gens = kernel_generators(n);
            assert_eq!(ideal_span_rows(&gens, 1).len(), 1);
        }
    }

    #[test]
    fn c_membership_n1() {
        let gens = kernel_generators(1);
        let c = WreathClass::c_power(1, 1);
        let m = ideal_contains(&gens, &c, false);
        assert!(!m.is_member());
        // certificate: c column plus the pivot whose row carries it
        assert_eq!(m.certificate().unwrap().support(), &[0, 1]);

        let c2 = WreathClass::c_power(1, 2);
        assert!(ideal_contains(&gens, &c2, false).is_member());
    }

    #[test]
    fn n2_relation_chain() {
        let gens = kernel_generators(2);
        let od_w1_w2 = WreathClass::from_element(
            2,
            WreathBasisElement::od(Monomial::generator(2, 1), Monomial::generator(2, 2)).unwrap(),
        );
        let c3 = WreathClass::c_power(2, 3);
        assert!(!ideal_contains(&gens, &c3, false).is_member());
        assert!(ideal_contains(&gens, &(&c3 + &od_w1_w2), false).is_member());
        assert!(ideal_contains(&gens, &WreathClass::c_power(2, 4), false).is_member());
    }

    #[test]
    fn surviving_and_killed_generators() {
        assert_eq!(
            surviving_generators(2).into_iter().collect::<Vec<_>>(),
            [1, 2]
        );
        assert_eq!(
            surviving_generators(4).into_iter().collect::<Vec<_>>(),
            [2, 3, 4]
        );
        assert_eq!(
            surviving_generators(8).into_iter().collect::<Vec<_>>(),
            [4, 6, 7, 8]
        );
        // nothing killed at n=2, so no extra rows in any degree
        for d in 1..=4 {
            assert!(killed_generator_rows(2, d).is_empty());
        }
        // at n=4 only w1 dies; degree-1 basis is {c, Od(1,w1)}
        let rows = killed_generator_rows(4, 1);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].support(), &[1]);
    }

    #[test]
    fn hand_relations_pass_for_small_n() {
        for n in [1usize, 2, 3, 4, 5, 6, 8] {
            let verified = replicate_hand_relations(n).unwrap();
            assert!(!verified.is_empty());
            for v in &verified {
                assert_eq!(
                    v.class.degrees().into_iter().collect::<Vec<_>>(),
                    [v.degree]
                );
            }
        }
        assert!(matches!(
            replicate_hand_relations(12),
            Err(KernelError::UnsupportedModulus { n: 12 })
        ));
    }

    #[test]
    fn index_n1_full_report() {
        let report = compute_index(1, &IndexOptions::default()).unwrap();
        assert_eq!(report.n, 1);
        assert_eq!(report.hind, 1);
        assert!(!report.truncated);
        assert_eq!(report.degrees.len(), 2);
        let d1 = &report.degrees[0];
        assert_eq!(
            (d1.d, d1.dim_basis, d1.dim_ideal, d1.c_in_ideal),
            (1, 2, 1, false)
        );
        let d2 = &report.degrees[1];
        assert_eq!(
            (d2.d, d2.dim_basis, d2.dim_ideal, d2.c_in_ideal),
            (2, 3, 3, true)
        );
        assert_eq!(report.flags.lower_bound, 1);
        assert_eq!(report.flags.upper_bound, 1);
        assert_eq!(report.flags.predicted_exact, Some(1));
        assert!(!report.flags.exploratory);
        assert_eq!(report.flags.upper_kernel_ok, Some(true));
        assert_eq!(report.flags.bounds_ok, Some(true));
        assert_eq!(report.flags.exact_ok, Some(true));
    }

    #[test]
    fn index_n2_report() {
        let report = compute_index(2, &IndexOptions::default()).unwrap();
        assert_eq!(report.hind, 3);
        let dims: Vec<(u32, u64, u64, bool)> = report
            .degrees
            .iter()
            .map(|r| (r.d, r.dim_basis, r.dim_ideal, r.c_in_ideal))
            .collect();
        assert_eq!(dims[0], (1, 2, 1, false));
        assert_eq!(dims[1], (2, 4, 2, false));
        assert_eq!(dims[2], (3, 6, 5, false));
        assert_eq!(dims[3].0, 4);
        assert!(dims[3].3, "c^4 must land in I_4");
        assert_eq!(report.flags.predicted_exact, Some(3));
    }

    #[test]
    fn truncated_cap_reports_lower_bound_only() {
        let report = compute_index(
            4,
            &IndexOptions {
                degree_cap: Some(3),
                certificates: false,
            },
        )
        .unwrap();
        assert!(report.truncated);
        assert_eq!(report.degrees.len(), 3);
        assert_eq!(report.hind, 3);
        assert_eq!(report.flags.upper_kernel_ok, None);
        assert_eq!(report.flags.bounds_ok, None);
        assert_eq!(report.flags.exact_ok, None);
    }

    #[test]
    fn certificates_verify_against_span_rows() {
        let report = compute_index(
            2,
            &IndexOptions {
                degree_cap: None,
                certificates: true,
            },
        )
        .unwrap();
        let gens = kernel_generators(2);
        for record in &report.degrees {
            if record.c_in_ideal {
                assert!(record.certificate.is_none());
                continue;
            }
            let cert = SparseRow::new(record.certificate.clone().unwrap());
            for row in ideal_span_rows(&gens, record.d) {
                assert!(!cert.dot(&row), "degree {}", record.d);
            }
            let basis = wreath_basis(2, record.d);
            let c_vec = basis.coordinate_vector(&WreathClass::c_power(2, record.d));
            assert!(cert.dot(&c_vec));
        }
    }

    #[test]
    fn report_json_round_trips() {
        let report = compute_index(2, &IndexOptions::default()).unwrap();
        let json = report.to_json_pretty();
        let back: IndexReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, report);

        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["schema"], "hind.report/v1");
        assert_eq!(value["n"], 2);
        assert_eq!(value["hind"], 3);
        assert_eq!(value["degrees"][0]["dimBasis"], 2);
        assert_eq!(value["degrees"][0]["cInIdeal"], false);
        assert!(value["flags"]["upperKernelOk"].as_bool().unwrap());
    }

    #[test]
    fn csv_has_one_line_per_degree() {
        let report = compute_index(2, &IndexOptions::default()).unwrap();
        let csv = report.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,d,dimBasis,dimIdeal,cInIdeal,hind");
        assert_eq!(lines.len(), 1 + report.degrees.len());
        assert_eq!(lines[1], "2,1,2,1,false,3");
    }

    #[test]
    fn index_small_powers() {
        assert_eq!(compute_index(4, &IndexOptions::default()).unwrap().hind, 7);
    }

    /// The degree-d basis of the quotient by the ideal never grows as
    /// rows accumulate; spot-check dim arithmetic against enumeration.
    #[test]
    fn dims_are_consistent_with_enumeration() {
        let report = compute_index(3, &IndexOptions::default()).unwrap();
        for r in &report.degrees {
            assert!(r.dim_ideal <= r.dim_basis);
            assert_eq!(r.dim_basis, wreath_basis(3, r.d).len() as u64);
        }
        // degree-1 basis: c and Od(1, w1) only
        assert_eq!(enumerate_monomials(3, 1).len(), 1);
        assert_eq!(report.degrees[0].dim_basis, 2);
    }
}
