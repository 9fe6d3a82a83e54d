use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};

use super::poly::{q, qi, Poly, Q};
use super::sturm::{count_real_roots, count_roots_closed, isolate_roots, separate, AlgebraicReal};
use super::PolyError;
use crate::omega::Pattern;

/// Default parameter bound.
pub fn default_epsilon() -> Q {
    q(1, 4)
}

/// `P_ω(u, x) = Π_i [ (u − i)^{ω_i} + Σ_{k ≤ ω_i − 2} x_{i,k} (u − i)^k ]`.
///
/// Clusters are indexed from 1; coefficient indices from 0. The parameter
/// vector is bounded by `‖x‖∞ ≤ ε`, and the real roots of cluster `i` are
/// confined to the closed window `[i − 1/2, i + 1/2]` with no root shared by
/// two windows.
#[derive(Clone, PartialEq, Eq)]
pub struct ModelPolynomial {
    pattern: Pattern,
    params: BTreeMap<(usize, usize), Q>,
    epsilon: Q,
    radius: Q,
    factors: Vec<Poly>,
    poly: Poly,
}

#[derive(Debug, Clone)]
pub struct RootRecord {
    pub position: AlgebraicReal,
    pub multiplicity: u32,
    /// 1-based cluster index.
    pub cluster: usize,
}

#[derive(Debug, Clone)]
pub struct DivisorWord {
    /// Real roots in increasing order.
    pub roots: Vec<RootRecord>,
    /// Per cluster, the number of complex-conjugate pairs counted with multiplicity.
    pub complex_pairs: Vec<u32>,
}

impl DivisorWord {
    pub fn multiplicities(&self) -> Vec<u32> {
        self.roots.iter().map(|r| r.multiplicity).collect()
    }

    /// The pattern of real multiplicities; `None` for an empty divisor.
    pub fn pattern(&self) -> Option<Pattern> {
        Pattern::new(self.multiplicities()).ok()
    }

    pub fn complex_count(&self) -> u32 {
        self.complex_pairs.iter().sum()
    }

    pub fn degree(&self) -> u32 {
        self.multiplicities().iter().sum::<u32>() + 2 * self.complex_count()
    }
}

/// A connected component of `{u : P(u) ≤ 0}`: the closed interval between two
/// roots of the divisor (a point when `first == last`).
#[derive(Debug, Clone)]
pub struct FiberComponent {
    pub first: usize,
    pub last: usize,
    pub lo: AlgebraicReal,
    pub hi: AlgebraicReal,
}

impl FiberComponent {
    pub fn is_point(&self) -> bool {
        self.first == self.last
    }
}

impl fmt::Display for FiberComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            write!(f, "{{{}}}", self.lo)
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

fn cluster_factor(m: u32, center: usize, params: &BTreeMap<(usize, usize), Q>, i: usize) -> Poly {
    let mut coeffs = vec![Q::zero(); m as usize + 1];
    coeffs[m as usize] = Q::one();
    for (&(ci, k), x) in params.range((i, 0)..(i + 1, 0)) {
        debug_assert_eq!(ci, i);
        coeffs[k] = x.clone();
    }
    Poly::new(coeffs).shift(&-qi(center as i64))
}

/// A prescribed root of one cluster factor, measured from the cluster centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalRoot {
    Real {
        at: Q,
        multiplicity: u32,
    },
    /// The pair `re ± i·im`.
    Complex {
        re: Q,
        im: Q,
    },
}

impl LocalRoot {
    fn degree(&self) -> u32 {
        match self {
            LocalRoot::Real { multiplicity, .. } => *multiplicity,
            LocalRoot::Complex { .. } => 2,
        }
    }
}

/// Parameters whose cluster factors have the prescribed roots, after each
/// cluster is translated so that its roots sum to zero. `roots[i]` describes
/// cluster `i + 1` and must have total degree `ω_{i+1}`.
pub fn params_from_roots(
    pattern: &Pattern,
    roots: &[Vec<LocalRoot>],
) -> Result<BTreeMap<(usize, usize), Q>, PolyError> {
    let omega = pattern.entries();
    if roots.len() != omega.len() {
        return Err(PolyError::InvalidModel(format!(
            "{} root lists for {} clusters",
            roots.len(),
            omega.len()
        )));
    }
    let mut params = BTreeMap::new();
    for (i, (cluster, &m)) in roots.iter().zip(omega).enumerate() {
        let degree: u32 = cluster.iter().map(LocalRoot::degree).sum();
        if degree != m {
            return Err(PolyError::InvalidModel(format!(
                "cluster {} has root degree {degree}, expected {m}",
                i + 1
            )));
        }
        let total = cluster.iter().fold(Q::zero(), |acc, r| match r {
            LocalRoot::Real { at, multiplicity } => acc + at * qi(*multiplicity as i64),
            LocalRoot::Complex { re, .. } => acc + re * qi(2),
        });
        let mean = total / qi(m as i64);
        let mut f = Poly::one();
        for r in cluster {
            f = match r {
                LocalRoot::Real { at, multiplicity } => &f * &Poly::linear_root(&(at - &mean)).pow(*multiplicity),
                LocalRoot::Complex { re, im } => {
                    if im.is_zero() {
                        return Err(PolyError::InvalidModel("complex pair with zero imaginary part".into()));
                    }
                    let a = re - &mean;
                    let quad = Poly::new(vec![&a * &a + im * im, -(a.clone() * qi(2)), Q::one()]);
                    &f * &quad
                }
            };
        }
        for (k, c) in f.coeffs().iter().enumerate().take((m as usize).saturating_sub(1)) {
            if !c.is_zero() {
                params.insert((i + 1, k), c.clone());
            }
        }
    }
    Ok(params)
}

impl ModelPolynomial {
    pub fn new(
        pattern: Pattern,
        params: BTreeMap<(usize, usize), Q>,
        epsilon: Q,
        radius: Q,
    ) -> Result<Self, PolyError> {
        if !epsilon.is_positive() {
            return Err(PolyError::InvalidModel(format!(
                "epsilon must be positive, got {epsilon}"
            )));
        }
        if !radius.is_positive() {
            return Err(PolyError::InvalidModel(format!(
                "radius must be positive, got {radius}"
            )));
        }
        let omega = pattern.entries();
        let mut params = params;
        params.retain(|_, v| !v.is_zero());
        for (&(i, k), x) in &params {
            if i == 0 || i > omega.len() || k + 2 > omega[i - 1] as usize {
                return Err(PolyError::IllegalParameter { cluster: i, index: k });
            }
            if x.abs() > epsilon {
                return Err(PolyError::ParameterOutOfRange {
                    cluster: i,
                    index: k,
                    value: x.to_string(),
                });
            }
        }
        let factors: Vec<Poly> = omega
            .iter()
            .enumerate()
            .map(|(idx, &m)| cluster_factor(m, idx + 1, &params, idx + 1))
            .collect();
        let half = q(1, 2);
        for (idx, f) in factors.iter().enumerate() {
            let c = qi(idx as i64 + 1);
            let inside = count_roots_closed(f, &(&c - &half), &(&c + &half));
            if inside != count_real_roots(f) {
                return Err(PolyError::SeparationViolated { cluster: idx + 1 });
            }
            if idx + 1 < factors.len() {
                let edge = &c + &half;
                if f.eval(&edge).is_zero() && factors[idx + 1].eval(&edge).is_zero() {
                    return Err(PolyError::SeparationViolated { cluster: idx + 2 });
                }
            }
        }
        let poly = factors.iter().fold(Poly::one(), |acc, f| &acc * f);
        Ok(ModelPolynomial {
            pattern,
            params,
            epsilon,
            radius,
            factors,
            poly,
        })
    }

    /// Default `ε = 1/4`, `r = 1`.
    pub fn with_params(pattern: Pattern, params: BTreeMap<(usize, usize), Q>) -> Result<Self, PolyError> {
        Self::new(pattern, params, default_epsilon(), Q::one())
    }

    /// All parameters zero.
    pub fn core(pattern: Pattern) -> Self {
        Self::with_params(pattern, BTreeMap::new()).expect("the core polynomial is always separated")
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn params(&self) -> &BTreeMap<(usize, usize), Q> {
        &self.params
    }

    pub fn param(&self, cluster: usize, index: usize) -> Q {
        self.params.get(&(cluster, index)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn epsilon(&self) -> &Q {
        &self.epsilon
    }

    pub fn radius(&self) -> &Q {
        &self.radius
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn cluster_factors(&self) -> &[Poly] {
        &self.factors
    }

    /// Legal `(cluster, index)` pairs in lexicographic order.
    pub fn parameter_axes(pattern: &Pattern) -> Vec<(usize, usize)> {
        pattern
            .entries()
            .iter()
            .enumerate()
            .flat_map(|(idx, &m)| (0..(m as usize).saturating_sub(1)).map(move |k| (idx + 1, k)))
            .collect()
    }

    pub fn evaluate(&self, u: &Q) -> Q {
        self.factors.iter().map(|f| f.eval(u)).product()
    }

    pub fn divisor(&self) -> Result<DivisorWord, PolyError> {
        let half = q(1, 2);
        let mut roots = Vec::new();
        let mut complex_pairs = Vec::new();
        for (idx, f) in self.factors.iter().enumerate() {
            let c = qi(idx as i64 + 1);
            let (lo, hi) = (&c - &half, &c + &half);
            let mut cluster_roots = Vec::new();
            let mut real_degree = 0u32;
            for (factor, mult) in f.square_free_decomposition() {
                let found = isolate_roots(&factor, &lo, &hi);
                if found.len() != count_real_roots(&factor) {
                    return Err(PolyError::SeparationViolated { cluster: idx + 1 });
                }
                real_degree += mult * found.len() as u32;
                cluster_roots.extend(found.into_iter().map(|position| RootRecord {
                    position,
                    multiplicity: mult,
                    cluster: idx + 1,
                }));
            }
            cluster_roots.sort_by(|a, b| a.position.cmp_algebraic(&b.position));
            let m = self.pattern.entries()[idx];
            complex_pairs.push((m - real_degree) / 2);
            roots.extend(cluster_roots);
        }
        let mut positions: Vec<AlgebraicReal> = roots.iter().map(|r| r.position.clone()).collect();
        separate(&mut positions);
        for (r, p) in roots.iter_mut().zip(positions) {
            r.position = p;
        }
        Ok(DivisorWord { roots, complex_pairs })
    }

    /// Connected components of `{P ≤ 0}` in increasing order.
    pub fn fiber_components(&self) -> Result<Vec<FiberComponent>, PolyError> {
        if self.pattern.odd_count() % 2 == 1 {
            return Err(PolyError::OddDegree(self.pattern.norm()));
        }
        let div = self.divisor()?;
        let roots = &div.roots;
        let mut out = Vec::new();
        let mut k = 0;
        while k < roots.len() {
            let first = k;
            while k + 1 < roots.len() {
                let mid = (roots[k].position.hi() + roots[k + 1].position.lo()) / qi(2);
                if self.evaluate(&mid).is_negative() {
                    k += 1;
                } else {
                    break;
                }
            }
            out.push(FiberComponent {
                first,
                last: k,
                lo: roots[first].position.clone(),
                hi: roots[k].position.clone(),
            });
            k += 1;
        }
        Ok(out)
    }

    /// Sign of `∂^j P / ∂u^j` at a root of multiplicity exactly `j`.
    pub fn derivative_at_root(&self, root: &RootRecord) -> Result<i8, PolyError> {
        let j = root.multiplicity as usize;
        if j == 0 {
            return Err(PolyError::NotARoot);
        }
        let below = self.poly.nth_derivative(j - 1);
        if !root.position.is_root_of(&below) {
            return Err(PolyError::NotARoot);
        }
        let s = root.position.sign_of(&self.poly.nth_derivative(j));
        if s == 0 {
            return Err(PolyError::NotARoot);
        }
        Ok(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.pattern);
        for ((i, k), x) in &self.params {
            out.push_str(&format!("x {i} {k} {x}\n"));
        }
        out.push_str(&format!("eps {}\nr {}\n", self.epsilon, self.radius));
        out
    }
}

impl fmt::Debug for ModelPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModelPolynomial({})", self.to_text().trim_end().replace('\n', "; "))
    }
}

fn parse_q(s: &str) -> Result<Q, PolyError> {
    Q::from_str(s).map_err(|_| PolyError::Parse(format!("bad rational {s:?}")))
}

impl FromStr for ModelPolynomial {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let mut pattern = None;
        let mut params = BTreeMap::new();
        let mut eps = None;
        let mut radius = None;
        for (lineno, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            let bad = || PolyError::Parse(format!("line {}: {raw:?}", lineno + 1));
            if pattern.is_none() {
                if words.len() != 1 {
                    return Err(bad());
                }
                pattern = Some(
                    words[0]
                        .parse::<Pattern>()
                        .map_err(|e| PolyError::Parse(e.to_string()))?,
                );
                continue;
            }
            match words.as_slice() {
                ["x", i, k, v] => {
                    let i: usize = i.parse().map_err(|_| bad())?;
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if params.insert((i, k), parse_q(v)?).is_some() {
                        return Err(PolyError::Parse(format!("duplicate parameter x {i} {k}")));
                    }
                }
                ["eps", v] if eps.is_none() => eps = Some(parse_q(v)?),
                ["r", v] if radius.is_none() => radius = Some(parse_q(v)?),
                _ => return Err(bad()),
            }
        }
        let pattern = pattern.ok_or_else(|| PolyError::Parse("missing pattern line".into()))?;
        ModelPolynomial::new(
            pattern,
            params,
            eps.unwrap_or_else(default_epsilon),
            radius.unwrap_or_else(Q::one),
        )
    }
}

/// Per-cluster splitting of a block stratum: ordered real multiplicities and
/// the multiset (non-increasing) of complex pair multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClusterSplitting {
    pub real: Vec<u32>,
    pub complex: Vec<u32>,
}

impl ClusterSplitting {
    fn local_dimension(&self) -> i64 {
        let k = self.real.len() as i64;
        let p = self.complex.len() as i64;
        k + 2 * p - 1
    }
}

impl fmt::Display for ClusterSplitting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let real: Vec<String> = self.real.iter().map(u32::to_string).collect();
        let cx: Vec<String> = self.complex.iter().map(u32::to_string).collect();
        write!(f, "({}|{})", real.join(","), cx.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStratum {
    pub splitting: Vec<ClusterSplitting>,
    pub dimension: i64,
}

impl BlockStratum {
    pub fn is_all_real(&self) -> bool {
        self.splitting.iter().all(|c| c.complex.is_empty())
    }

    /// Real multiplicities of all clusters, concatenated.
    pub fn real_word(&self) -> Vec<u32> {
        self.splitting.iter().flat_map(|c| c.real.iter().copied()).collect()
    }
}

impl fmt::Display for BlockStratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.splitting {
            write!(f, "{c}")?;
        }
        write!(f, " dim={}", self.dimension)
    }
}

#[derive(Debug, Clone)]
pub struct BlockStrata {
    pub strata: Vec<BlockStratum>,
    /// `(a, b)` with stratum `a` a codimension-minimal face in the closure of `b`.
    pub covers: Vec<(usize, usize)>,
}

impl BlockStrata {
    pub fn in_closure(&self, a: usize, b: usize) -> bool {
        a == b || degenerates(&self.strata[a], &self.strata[b])
    }
}

fn compositions(m: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=m {
        for mut rest in compositions(m - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Partitions of `m` as non-increasing lists.
fn partitions(m: u32, max_part: u32) -> Vec<Vec<u32>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=m.min(max_part)).rev() {
        for mut rest in partitions(m - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cluster_splittings(m: u32) -> Vec<ClusterSplitting> {
    let mut out = Vec::new();
    for pairs in 0..=m / 2 {
        for complex in partitions(pairs, pairs) {
            for real in compositions(m - 2 * pairs) {
                out.push(ClusterSplitting {
                    real,
                    complex: complex.clone(),
                });
            }
        }
    }
    out
}

/// Can the items be packed into the bins so that every bin is filled exactly?
fn exact_pack(items: &[u32], bins: &mut [u32]) -> bool {
    match items.split_first() {
        None => bins.iter().all(|&b| b == 0),
        Some((&x, rest)) => {
            for k in 0..bins.len() {
                if bins[k] >= x && (k == 0 || bins[..k].iter().all(|&b| b != bins[k])) {
                    bins[k] -= x;
                    let ok = exact_pack(rest, bins);
                    bins[k] += x;
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
    }
}

/// Whether `fine` arises from `coarse` by splitting each real root of
/// `coarse` into a contiguous block of real roots plus complex pairs, and each
/// complex pair into complex pairs.
fn cluster_degenerates(coarse: &ClusterSplitting, fine: &ClusterSplitting) -> bool {
    fn assign(
        coarse: &ClusterSplitting,
        fine: &ClusterSplitting,
        j: usize,
        pos: usize,
        deficits: &mut Vec<u32>,
    ) -> bool {
        if j == coarse.real.len() {
            if pos != fine.real.len() {
                return false;
            }
            let mut bins: Vec<u32> = deficits.iter().copied().chain(coarse.complex.iter().copied()).collect();
            return exact_pack(&fine.complex, &mut bins);
        }
        let m = coarse.real[j];
        let mut sum = 0;
        let mut end = pos;
        loop {
            if sum <= m && (m - sum).is_multiple_of(2) {
                deficits.push((m - sum) / 2);
                let ok = assign(coarse, fine, j + 1, end, deficits);
                deficits.pop();
                if ok {
                    return true;
                }
            }
            if end == fine.real.len() {
                return false;
            }
            sum += fine.real[end];
            end += 1;
            if sum > m {
                return false;
            }
        }
    }
    assign(coarse, fine, 0, 0, &mut Vec::new())
}

/// `a` lies in the closure of `b` (and differs from it).
fn degenerates(a: &BlockStratum, b: &BlockStratum) -> bool {
    a != b
        && a.splitting
            .iter()
            .zip(&b.splitting)
            .all(|(ca, cb)| cluster_degenerates(ca, cb))
}

/// The discriminant stratification of the parameter space of a block.
pub fn strata_of_block(omega: &Pattern, n: u32) -> BlockStrata {
    let shift = n as i64 - omega.reduced_norm() as i64;
    let mut combos: Vec<Vec<ClusterSplitting>> = vec![Vec::new()];
    for &m in omega.entries() {
        let options = cluster_splittings(m);
        combos = combos
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |opt| {
                    let mut next = prefix.clone();
                    next.push(opt.clone());
                    next
                })
            })
            .collect();
    }
    let mut strata: Vec<BlockStratum> = combos
        .into_iter()
        .map(|splitting| {
            let dimension = splitting.iter().map(ClusterSplitting::local_dimension).sum::<i64>() + shift;
            BlockStratum { splitting, dimension }
        })
        .collect();
    strata.sort_by(|a, b| (a.dimension, &a.splitting).cmp(&(b.dimension, &b.splitting)));
    let count = strata.len();
    let below: Vec<Vec<bool>> = (0..count)
        .map(|a| (0..count).map(|b| degenerates(&strata[a], &strata[b])).collect())
        .collect();
    let mut covers = Vec::new();
    for a in 0..count {
        for b in 0..count {
            if below[a][b] && !(0..count).any(|c| below[a][c] && below[c][b]) {
                covers.push((a, b));
            }
        }
    }
    BlockStrata { strata, covers }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn model(s: &str, params: &[((usize, usize), Q)]) -> ModelPolynomial {
        ModelPolynomial::with_params(pat(s), params.iter().cloned().collect()).unwrap()
    }

    #[test]
    fn evaluation() {
        assert_eq!(model("2", &[((1, 0), q(-1, 4))]).evaluate(&qi(1)), q(-1, 4));
        assert_eq!(model("11", &[]).evaluate(&q(3, 2)), q(-1, 4));
        assert_eq!(model("121", &[]).evaluate(&qi(2)), qi(0));
    }

    #[test]
    fn divisors() {
        let d = model("2", &[((1, 0), q(-1, 4))]).divisor().unwrap();
        assert_eq!(d.multiplicities(), vec![1, 1]);
        assert!(d.roots[0].position.eq_rational(&q(1, 2)));
        assert!(d.roots[1].position.eq_rational(&q(3, 2)));

        let d = model("2", &[]).divisor().unwrap();
        assert_eq!(d.multiplicities(), vec![2]);
        assert!(d.roots[0].position.eq_rational(&qi(1)));

        let d = model("2", &[((1, 0), q(1, 4))]).divisor().unwrap();
        assert!(d.roots.is_empty());
        assert_eq!(d.complex_pairs, vec![1]);

        let d = model("121", &[((2, 0), q(-1, 16))]).divisor().unwrap();
        assert_eq!(d.multiplicities(), vec![1, 1, 1, 1]);
        assert!(d.roots[1].position.eq_rational(&q(7, 4)));
        assert!(d.roots[2].position.eq_rational(&q(9, 4)));
        for w in d.roots.windows(2) {
            assert!(w[0].position.hi() < w[1].position.lo());
        }
    }

    #[test]
    fn fibers() {
        let f = model("121", &[]).fiber_components().unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].lo.eq_rational(&qi(1)) && f[0].hi.eq_rational(&qi(3)));

        let f = model("121", &[((2, 0), q(-1, 16))]).fiber_components().unwrap();
        assert_eq!(f.len(), 2);
        assert!(f[0].lo.eq_rational(&qi(1)) && f[0].hi.eq_rational(&q(7, 4)));
        assert!(f[1].lo.eq_rational(&q(9, 4)) && f[1].hi.eq_rational(&qi(3)));

        let f = model("2", &[]).fiber_components().unwrap();
        assert_eq!(f.len(), 1);
        assert!(f[0].is_point());

        assert!(matches!(
            model("12", &[]).fiber_components(),
            Err(PolyError::OddDegree(3))
        ));
    }

    #[test]
    fn derivative_signs() {
        let p = model("2", &[]);
        let d = p.divisor().unwrap();
        assert_eq!(p.derivative_at_root(&d.roots[0]).unwrap(), 1);
        let p = model("11", &[]);
        let d = p.divisor().unwrap();
        assert_eq!(p.derivative_at_root(&d.roots[0]).unwrap(), -1);
        assert_eq!(p.derivative_at_root(&d.roots[1]).unwrap(), 1);
        let bogus = RootRecord {
            position: AlgebraicReal::rational(q(3, 2)),
            multiplicity: 1,
            cluster: 1,
        };
        assert!(matches!(p.derivative_at_root(&bogus), Err(PolyError::NotARoot)));
    }

    #[test]
    fn construction_checks() {
        let too_big = ModelPolynomial::with_params(pat("2"), [((1, 0), q(1, 2))].into_iter().collect());
        assert!(matches!(too_big, Err(PolyError::ParameterOutOfRange { .. })));
        let illegal = ModelPolynomial::with_params(pat("2"), [((1, 1), q(1, 8))].into_iter().collect());
        assert!(matches!(illegal, Err(PolyError::IllegalParameter { .. })));
        // roots at 3/2 from both neighbouring clusters
        let shared = ModelPolynomial::with_params(
            pat("22"),
            [((1, 0), q(-1, 4)), ((2, 0), q(-1, 4))].into_iter().collect(),
        );
        assert!(matches!(shared, Err(PolyError::SeparationViolated { .. })));
        let wide = ModelPolynomial::new(pat("2"), [((1, 0), qi(-1))].into_iter().collect(), qi(2), qi(1));
        assert!(matches!(wide, Err(PolyError::SeparationViolated { cluster: 1 })));
    }

    #[test]
    fn text_round_trip() {
        let p = model("1321", &[((2, 1), q(1, 8)), ((2, 0), q(-1, 9)), ((3, 0), q(1, 5))]);
        let text = p.to_text();
        assert_eq!(text, "1321\nx 2 0 -1/9\nx 2 1 1/8\nx 3 0 1/5\neps 1/4\nr 1\n");
        let back: ModelPolynomial = text.parse().unwrap();
        assert_eq!(back, p);
        assert!("1321\nfoo 1\n".parse::<ModelPolynomial>().is_err());
    }

    #[test]
    fn block_strata_small() {
        let s = strata_of_block(&pat("2"), 1);
        let dims: Vec<(String, i64)> = s
            .strata
            .iter()
            .map(|b| (b.splitting[0].to_string(), b.dimension))
            .collect();
        assert_eq!(dims, vec![("(2|)".into(), 0), ("(|1)".into(), 1), ("(1,1|)".into(), 1)]);
        assert_eq!(s.covers, vec![(0, 1), (0, 2)]);

        let s = strata_of_block(&pat("11"), 1);
        assert_eq!(s.strata.len(), 1);
        assert_eq!(s.strata[0].dimension, 1);

        let s = strata_of_block(&pat("121"), 1);
        assert_eq!(s.strata.len(), 3);
    }

    #[test]
    fn block_closure_respects_dimension() {
        for omega in ["3", "4", "1221", "13", "141"] {
            let s = strata_of_block(&pat(omega), 4);
            for &(a, b) in &s.covers {
                assert!(s.strata[a].dimension < s.strata[b].dimension, "{omega}");
            }
        }
        for omega in ["2", "3", "4", "121", "1221", "13", "141"] {
            let s = strata_of_block(&pat(omega), 4);
            let top = s.strata.iter().map(|b| b.dimension).max().unwrap();
            let split: Vec<_> = s
                .strata
                .iter()
                .filter(|b| b.is_all_real() && b.real_word().iter().all(|&m| m == 1))
                .collect();
            assert_eq!(split.len(), 1, "{omega}");
            assert_eq!(split[0].dimension, top, "{omega}");
        }
        // (3) = triple root: its closure contains everything
        let s = strata_of_block(&pat("3"), 2);
        let deepest = s.strata.iter().position(|b| b.splitting[0].real == vec![3]).unwrap();
        for b in 0..s.strata.len() {
            assert!(s.in_closure(deepest, b));
        }
    }
}
