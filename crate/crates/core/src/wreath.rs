//! The mod-2 cohomology algebra of B(O(n) wr Z2) in the
//! classifying-space limit.
//!
//! Additively the algebra has a basis of two kinds of classes over
//! Z2[w1,...,wn]: diagonal classes Sqe(x)*c^j for a monomial x and the
//! degree-one class c pulled back from BZ2, and off-diagonal transfer
//! classes x (.) y for an unordered pair of distinct monomials. Here
//! Sqe is the external Steenrod square, multiplicative but only
//! quadratic-additive; the pairing (.) measures its failure to be
//! linear:
//!
//!   Sqe(p + q) = Sqe(p) + Sqe(q) + p (.) q
//!
//! The cup product closes on this basis:
//!
//!   Sqe(x)c^i * Sqe(y)c^j = Sqe(xy)c^(i+j)
//!   Sqe(x)    * (y (.) z) = xy (.) xz
//!   c         * (y (.) z) = 0
//!   (x (.) y) * (z (.) t) = xz (.) yt + xt (.) yz
//!
//! with u (.) u = 0. Degrees: deg Sqe(x)c^j = 2 deg x + j and
//! deg (x (.) y) = deg x + deg y.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul};
use std::sync::{Arc, OnceLock, RwLock};

use crate::gf2::SparseRow;
use crate::monomial::{enumerate_monomials, AlgebraError, Monomial, PolyZ2};

/// One additive basis element of the wreath algebra.
///
/// `Od { lo, hi }` is canonical only with `lo < hi`; use
/// [`WreathBasisElement::od`] to build one. The derived order (all
/// `Sq` before all `Od`, then field order) restricted to a fixed
/// degree matches the enumeration order of [`wreath_basis`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WreathBasisElement {
    /// Sqe(base) * c^c_exp.
    Sq { base: Monomial, c_exp: u32 },
    /// The transfer class lo (.) hi, with lo < hi.
    Od { lo: Monomial, hi: Monomial },
}

use WreathBasisElement::{Od, Sq};

impl WreathBasisElement {
    /// The diagonal class Sqe(base) * c^c_exp.
    pub fn sq(base: Monomial, c_exp: u32) -> Self {
        Sq { base, c_exp }
    }

    /// The transfer class x (.) y, or None when x = y (the class
    /// vanishes).
    pub fn od(x: Monomial, y: Monomial) -> Option<Self> {
        assert_eq!(x.arity(), y.arity(), "arity mismatch in od");
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Some(Od { lo: x, hi: y }),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(Od { lo: y, hi: x }),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Sq { base, .. } => base.arity(),
            Od { lo, .. } => lo.arity(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            Sq { base, c_exp } => 2 * base.degree() + c_exp,
            Od { lo, hi } => lo.degree() + hi.degree(),
        }
    }
}

impl fmt::Display for WreathBasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sq { base, c_exp } => match (base.is_unit(), c_exp) {
                (true, 0) => write!(f, "1"),
                (true, 1) => write!(f, "c"),
                (true, j) => write!(f, "c^{j}"),
                (false, 0) => write!(f, "Sq[{base}]"),
                (false, 1) => write!(f, "Sq[{base}]*c"),
                (false, j) => write!(f, "Sq[{base}]*c^{j}"),
            },
            Od { lo, hi } => write!(f, "Od[{lo}, {hi}]"),
        }
    }
}

/// The two (at most) basis terms of a product of basis elements.
fn elem_product(a: &WreathBasisElement, b: &WreathBasisElement, out: &mut Vec<WreathBasisElement>) {
    match (a, b) {
        (Sq { base: x, c_exp: i }, Sq { base: y, c_exp: j }) => {
            out.push(Sq {
                base: x * y,
                c_exp: i + j,
            });
        }
        (Sq { base: x, c_exp: i }, Od { lo, hi }) | (Od { lo, hi }, Sq { base: x, c_exp: i }) => {
            // c kills transfer classes; only honest Sqe factors act.
            if *i == 0 {
                out.extend(WreathBasisElement::od(x * lo, x * hi));
            }
        }
        (Od { lo: x, hi: y }, Od { lo: z, hi: t }) => {
            out.extend(WreathBasisElement::od(x * z, y * t));
            out.extend(WreathBasisElement::od(x * t, y * z));
        }
    }
}

/// An element of the wreath algebra: a mod-2 set of basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct WreathClass {
    arity: usize,
    terms: BTreeSet<WreathBasisElement>,
}

impl WreathClass {
    pub fn zero(n: usize) -> Self {
        WreathClass {
            arity: n,
            terms: BTreeSet::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::c_power(n, 0)
    }

    /// The class c^k (k = 0 gives the unit). No power vanishes in the
    /// classifying-space limit.
    pub fn c_power(n: usize, k: u32) -> Self {
        Self::from_element(
            n,
            Sq {
                base: Monomial::unit(n),
                c_exp: k,
            },
        )
    }

    pub fn from_element(n: usize, e: WreathBasisElement) -> Self {
        assert_eq!(e.arity(), n, "arity mismatch");
        let mut terms = BTreeSet::new();
        terms.insert(e);
        WreathClass { arity: n, terms }
    }

    pub fn from_elements(n: usize, elems: impl IntoIterator<Item = WreathBasisElement>) -> Self {
        let mut out = WreathClass::zero(n);
        for e in elems {
            assert_eq!(e.arity(), n, "arity mismatch");
            out.toggle(e);
        }
        out
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical ascending order.
    pub fn terms(&self) -> impl Iterator<Item = &WreathBasisElement> {
        self.terms.iter()
    }

    pub fn contains(&self, e: &WreathBasisElement) -> bool {
        self.terms.contains(e)
    }

    pub fn homogeneous_component(&self, d: u32) -> WreathClass {
        WreathClass {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .filter(|e| e.degree() == d)
                .cloned()
                .collect(),
        }
    }

    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.iter().map(|e| e.degree()).collect()
    }

    fn toggle(&mut self, e: WreathBasisElement) {
        if !self.terms.remove(&e) {
            self.terms.insert(e);
        }
    }

    pub fn checked_add(&self, rhs: &WreathClass) -> Result<WreathClass, AlgebraError> {
        if self.arity != rhs.arity {
            return Err(AlgebraError::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        Ok(WreathClass {
            arity: self.arity,
            terms: self
                .terms
                .symmetric_difference(&rhs.terms)
                .cloned()
                .collect(),
        })
    }

    /// Cup product. Terms whose degree would exceed `cap` are dropped;
    /// since degrees only add, capped multiplication is still
    /// associative as long as the same cap is used throughout. Pass
    /// None for the exact product.
    pub fn checked_mul(
        &self,
        rhs: &WreathClass,
        cap: Option<u32>,
    ) -> Result<WreathClass, AlgebraError> {
        if self.arity != rhs.arity {
            return Err(AlgebraError::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        let mut out = WreathClass::zero(self.arity);
        let mut buf = Vec::with_capacity(2);
        for a in &self.terms {
            let da = a.degree();
            for b in &rhs.terms {
                if let Some(cap) = cap {
                    if da + b.degree() > cap {
                        continue;
                    }
                }
                buf.clear();
                elem_product(a, b, &mut buf);
                for e in buf.drain(..) {
                    out.toggle(e);
                }
            }
        }
        Ok(out)
    }
}

impl Add for &WreathClass {
    type Output = WreathClass;
    fn add(self, rhs: &WreathClass) -> WreathClass {
        self.checked_add(rhs).expect("arity mismatch")
    }
}

impl Mul for &WreathClass {
    type Output = WreathClass;
    fn mul(self, rhs: &WreathClass) -> WreathClass {
        self.checked_mul(rhs, None).expect("arity mismatch")
    }
}

impl fmt::Display for WreathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, e) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for WreathClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The external Steenrod square of a polynomial, expanded over the
/// basis: Sqe(x1 + ... + xm) = sum_i Sqe(xi) + sum_{i<j} xi (.) xj.
pub fn sqe(p: &PolyZ2) -> WreathClass {
    let n = p.arity();
    let terms: Vec<&Monomial> = p.terms().collect();
    let mut out = WreathClass::zero(n);
    for (i, &x) in terms.iter().enumerate() {
        out.toggle(Sq {
            base: x.clone(),
            c_exp: 0,
        });
        for &y in &terms[i + 1..] {
            // distinct monomials, so the class never vanishes
            out.toggle(WreathBasisElement::od(x.clone(), y.clone()).unwrap());
        }
    }
    out
}

/// The bilinear pairing p (.) q = Sqe(p + q) + Sqe(p) + Sqe(q),
/// expanded termwise with x (.) x = 0.
pub fn odot(p: &PolyZ2, q: &PolyZ2) -> WreathClass {
    assert_eq!(p.arity(), q.arity(), "arity mismatch in odot");
    let mut out = WreathClass::zero(p.arity());
    for x in p.terms() {
        for y in q.terms() {
            if let Some(e) = WreathBasisElement::od(x.clone(), y.clone()) {
                out.toggle(e);
            }
        }
    }
    out
}

/// The basis of one graded piece of the wreath algebra, with element
/// positions for building coordinate vectors.
pub struct WreathBasis {
    arity: usize,
    degree: u32,
    elements: Vec<WreathBasisElement>,
    index: HashMap<WreathBasisElement, u32>,
}

impl WreathBasis {
    fn build(n: usize, d: u32) -> WreathBasis {
        let mut elements = Vec::new();
        // Diagonal block: Sqe(x)c^(d - 2 deg x), by ascending deg x.
        for k in 0..=d / 2 {
            for x in enumerate_monomials(n, k) {
                elements.push(Sq {
                    base: x,
                    c_exp: d - 2 * k,
                });
            }
        }
        // Off-diagonal block: lo (.) hi by ascending (lo, hi).
        for a in 0..=d / 2 {
            let lows = enumerate_monomials(n, a);
            if 2 * a == d {
                for i in 0..lows.len() {
                    for j in i + 1..lows.len() {
                        elements.push(Od {
                            lo: lows[i].clone(),
                            hi: lows[j].clone(),
                        });
                    }
                }
            } else {
                for x in &lows {
                    for y in enumerate_monomials(n, d - a) {
                        elements.push(Od {
                            lo: x.clone(),
                            hi: y,
                        });
                    }
                }
            }
        }
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.iter().all(|e| e.degree() == d));
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as u32))
            .collect();
        WreathBasis {
            arity: n,
            degree: d,
            elements,
            index,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WreathBasisElement] {
        &self.elements
    }

    pub fn position(&self, e: &WreathBasisElement) -> Option<u32> {
        self.index.get(e).copied()
    }

    /// The coordinate row of a class over this basis. Panics when the
    /// class is not homogeneous of the basis degree (every term must
    /// be a basis element).
    pub fn coordinate_vector(&self, class: &WreathClass) -> SparseRow {
        assert_eq!(class.arity(), self.arity, "arity mismatch");
        let mut cols = Vec::with_capacity(class.num_terms());
        for t in class.terms() {
            let pos = self.position(t).unwrap_or_else(|| {
                panic!(
                    "term {t} of degree {} outside the degree-{} basis",
                    t.degree(),
                    self.degree
                )
            });
            cols.push(pos);
        }
        // class terms ascend in element order, which is position order
        SparseRow::from_sorted(cols)
    }
}

type BasisCache = RwLock<HashMap<(usize, u32), Arc<WreathBasis>>>;
static BASIS_CACHE: OnceLock<BasisCache> = OnceLock::new();

/// The basis of degree `d` over `n` generators, memoized globally;
/// repeated calls share one allocation.
pub fn wreath_basis(n: usize, d: u32) -> Arc<WreathBasis> {
    let cache = BASIS_CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(b) = cache.read().unwrap().get(&(n, d)) {
        return Arc::clone(b);
    }
    let built = Arc::new(WreathBasis::build(n, d));
    Arc::clone(cache.write().unwrap().entry((n, d)).or_insert(built))
}
