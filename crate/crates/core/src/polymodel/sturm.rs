//! Sturm sequences for real root isolation. Algebraic reals are carried as a
//! square-free defining polynomial with an isolating interval.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::poly::{qi, sign, Poly, Q};

#[derive(Debug, Clone)]
pub struct SturmSequence {
    seq: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(p: &Poly) -> Self {
        let mut seq = vec![p.clone()];
        if p.is_zero() {
            return SturmSequence { seq };
        }
        let dp = p.derivative();
        if dp.is_zero() {
            return SturmSequence { seq };
        }
        seq.push(dp);
        loop {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        SturmSequence { seq }
    }

    fn variations(&self, x: &Q) -> usize {
        let signs: Vec<i8> = self.seq.iter().map(|p| p.sign_at(x)).filter(|&s| s != 0).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Q, b: &Q) -> usize {
        debug_assert!(a <= b);
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// Distinct real roots of `p` in the closed interval `[a, b]`.
pub fn count_roots_closed(p: &Poly, a: &Q, b: &Q) -> usize {
    let s = SturmSequence::new(&p.square_free_part());
    s.count(a, b) + usize::from(p.eval(a).is_zero())
}

/// Distinct real roots of `p` on the whole line.
pub fn count_real_roots(p: &Poly) -> usize {
    if p.is_constant() {
        return 0;
    }
    let b = p.root_bound();
    count_roots_closed(p, &-b.clone(), &b)
}

/// A real algebraic number: the unique root of `poly` in `[lo, hi]`.
///
/// `poly` is square-free. Either `lo == hi` (the root is rational and known
/// exactly) or `lo < hi`, `poly` is nonzero with opposite signs at both ends
/// and the root lies strictly inside.
#[derive(Clone)]
pub struct AlgebraicReal {
    poly: Poly,
    lo: Q,
    hi: Q,
}

impl AlgebraicReal {
    pub fn rational(x: Q) -> Self {
        AlgebraicReal {
            poly: Poly::linear_root(&x),
            lo: x.clone(),
            hi: x,
        }
    }

    /// Wraps a root of the square-free `poly` known to be the only one in
    /// `[lo, hi]`; normalizes endpoints that happen to be roots.
    pub fn from_isolating(poly: Poly, lo: Q, hi: Q) -> Self {
        if poly.eval(&hi).is_zero() {
            return AlgebraicReal {
                poly,
                lo: hi.clone(),
                hi,
            };
        }
        if poly.eval(&lo).is_zero() {
            return AlgebraicReal {
                poly,
                lo: lo.clone(),
                hi: lo,
            };
        }
        AlgebraicReal { poly, lo, hi }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn lo(&self) -> &Q {
        &self.lo
    }

    pub fn hi(&self) -> &Q {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    /// Halves the isolating interval (or lands on the root exactly).
    pub fn refine(&mut self) {
        if self.is_exact() {
            return;
        }
        let mid = (&self.lo + &self.hi) / qi(2);
        let s_mid = self.poly.sign_at(&mid);
        if s_mid == 0 {
            self.lo = mid.clone();
            self.hi = mid;
        } else if s_mid == self.poly.sign_at(&self.lo) {
            self.lo = mid;
        } else {
            self.hi = mid;
        }
    }

    /// Refines until the interval width is at most `eps`.
    pub fn refine_to(&mut self, eps: &Q) {
        while !self.is_exact() && &self.width() > eps {
            self.refine();
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        if self.is_exact() {
            return self.lo.cmp(x);
        }
        if x <= &self.lo {
            return Ordering::Greater;
        }
        if x >= &self.hi {
            return Ordering::Less;
        }
        let sx = self.poly.sign_at(x);
        if sx == 0 {
            return Ordering::Equal;
        }
        // same sign as at lo: the root lies to the right of x
        if sx == self.poly.sign_at(&self.lo) {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }

    pub fn eq_rational(&self, x: &Q) -> bool {
        self.cmp_rational(x) == Ordering::Equal
    }

    /// Whether `self` is a root of `p`.
    pub fn is_root_of(&self, p: &Poly) -> bool {
        if p.is_zero() {
            return true;
        }
        if self.is_exact() {
            return p.eval(&self.lo).is_zero();
        }
        let g = self.poly.gcd(p);
        if g.is_constant() {
            return false;
        }
        // roots of g are among the roots of self.poly, so the interval isolates
        SturmSequence::new(&g).count(&self.lo, &self.hi) == 1
    }

    /// Sign of `p` at this number.
    pub fn sign_of(&self, p: &Poly) -> i8 {
        if self.is_exact() {
            return p.sign_at(&self.lo);
        }
        if self.is_root_of(p) {
            return 0;
        }
        let sf = p.square_free_part();
        if sf.is_constant() {
            return sign(&p.leading());
        }
        let sturm = SturmSequence::new(&sf);
        let mut a = self.clone();
        loop {
            if a.is_exact() {
                return p.sign_at(&a.lo);
            }
            if !sf.eval(&a.lo).is_zero() && sturm.count(&a.lo, &a.hi) == 0 {
                return p.sign_at(&a.lo);
            }
            a.refine();
        }
    }

    /// Exact ordering of two real algebraic numbers.
    pub fn cmp_algebraic(&self, other: &AlgebraicReal) -> Ordering {
        if let Some(x) = other.as_rational() {
            return self.cmp_rational(x);
        }
        if let Some(x) = self.as_rational() {
            return other.cmp_rational(x).reverse();
        }
        if self.is_root_of(&other.poly) && other.is_root_of(&self.poly) {
            // both are roots of the common factor; equal iff the same root of it
            let g = self.poly.gcd(&other.poly);
            let lo = if self.lo > other.lo { &self.lo } else { &other.lo };
            let hi = if self.hi < other.hi { &self.hi } else { &other.hi };
            if lo <= hi && count_roots_closed(&g, lo, hi) == 1 {
                return Ordering::Equal;
            }
        }
        let mut a = self.clone();
        let mut b = other.clone();
        loop {
            if a.hi < b.lo {
                return Ordering::Less;
            }
            if b.hi < a.lo {
                return Ordering::Greater;
            }
            if a.is_exact() {
                return b.cmp_rational(&a.lo).reverse();
            }
            if b.is_exact() {
                return a.cmp_rational(&b.lo);
            }
            a.refine();
            b.refine();
        }
    }

    /// Decimal approximation for display only.
    pub fn approx(&self) -> f64 {
        let mut a = self.clone();
        a.refine_to(&Q::new(1.into(), (1u64 << 40).into()));
        let mid = (&a.lo + &a.hi) / qi(2);
        let n: f64 = mid.numer().to_string().parse().unwrap_or(f64::NAN);
        let d: f64 = mid.denom().to_string().parse().unwrap_or(f64::NAN);
        n / d
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "root of [{}] in [{}, {}]", self.poly, self.lo, self.hi)
        }
    }
}

/// Isolates every real root of the square-free `p` inside `[a, b]`, in
/// increasing order, with pairwise disjoint intervals.
pub fn isolate_roots(p: &Poly, a: &Q, b: &Q) -> Vec<AlgebraicReal> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    if p.eval(a).is_zero() {
        out.push(AlgebraicReal::rational(a.clone()));
    }
    let sturm = SturmSequence::new(p);
    let mut stack = vec![(a.clone(), b.clone())];
    let mut found = Vec::new();
    while let Some((lo, hi)) = stack.pop() {
        match sturm.count(&lo, &hi) {
            0 => {}
            // lo itself may be a root counted by a neighbouring piece
            1 if p.eval(&hi).is_zero() || !p.eval(&lo).is_zero() => {
                found.push(AlgebraicReal::from_isolating(p.clone(), lo, hi))
            }
            _ => {
                let mid = (&lo + &hi) / qi(2);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    // intervals from (lo, hi] pieces can share endpoints; refine apart
    found.sort_by(|x, y| x.lo.cmp(&y.lo));
    out.extend(found);
    separate(&mut out);
    out
}

/// Refines an ordered list of distinct roots until consecutive closed
/// intervals are disjoint.
pub fn separate(roots: &mut [AlgebraicReal]) {
    for k in 1..roots.len() {
        let (left, right) = roots.split_at_mut(k);
        let a = &mut left[k - 1];
        let b = &mut right[0];
        while a.hi >= b.lo {
            if a.is_exact() && b.is_exact() {
                break;
            }
            a.refine();
            b.refine();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polymodel::poly::q;

    #[test]
    fn counts_and_isolation() {
        // (u^2 - 2)(u - 1)
        let p = &Poly::new(vec![qi(-2), qi(0), qi(1)]) * &Poly::linear_root(&qi(1));
        assert_eq!(count_real_roots(&p), 3);
        let roots = isolate_roots(&p, &qi(-2), &qi(2));
        assert_eq!(roots.len(), 3);
        assert!(roots[1].eq_rational(&qi(1)));
        assert_eq!(roots[0].cmp_rational(&q(-14, 10)), Ordering::Less);
        assert_eq!(roots[2].cmp_rational(&q(14, 10)), Ordering::Greater);
        for w in roots.windows(2) {
            assert!(w[0].hi() < w[1].lo());
            assert_eq!(w[0].cmp_algebraic(&w[1]), Ordering::Less);
        }
    }

    #[test]
    fn sign_evaluation() {
        let p = Poly::new(vec![qi(-2), qi(0), qi(1)]);
        let roots = isolate_roots(&p, &qi(0), &qi(2));
        let sqrt2 = &roots[0];
        assert_eq!(sqrt2.sign_of(&Poly::linear_root(&q(3, 2))), -1);
        assert_eq!(sqrt2.sign_of(&Poly::linear_root(&q(7, 5))), 1);
        assert_eq!(sqrt2.sign_of(&p), 0);
        assert!((sqrt2.approx() - 2f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn endpoint_roots() {
        let p = &Poly::linear_root(&q(1, 2)) * &Poly::linear_root(&q(3, 2));
        let roots = isolate_roots(&p, &q(1, 2), &q(3, 2));
        assert_eq!(roots.len(), 2);
        assert!(roots[0].eq_rational(&q(1, 2)));
        assert!(roots[1].eq_rational(&q(3, 2)));
    }
}
