//! Three-generator numerical semigroups: data model, reduction to pairwise
//! coprime generators, two-generator counting, range reductions and small
//! brute-force oracles.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{floor_div, gcd, mod_inverse, split, Integer};
use crate::error::{Error, Result};

/// Raw generators `1 <= n1 < n2 < n3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorTriple {
    pub n1: Integer,
    pub n2: Integer,
    pub n3: Integer,
}

impl GeneratorTriple {
    pub fn new(n1: Integer, n2: Integer, n3: Integer) -> Result<Self> {
        if n1 < Integer::one() || n1 >= n2 || n2 >= n3 {
            return Err(Error::Domain(format!(
                "generators must satisfy 1 <= n1 < n2 < n3, got ({n1}, {n2}, {n3})"
            )));
        }
        Ok(Self { n1, n2, n3 })
    }

    pub fn from_u64(n1: u64, n2: u64, n3: u64) -> Result<Self> {
        Self::new(n1.into(), n2.into(), n3.into())
    }
}

impl fmt::Display for GeneratorTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.n1, self.n2, self.n3)
    }
}

/// Structural class of a pairwise coprime triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// `a = 1 < b`.
    AEquals1,
    /// `a > 1` and `c` is a combination of `a` and `b`.
    CInAB,
    /// `a > 1` and `c` is not a combination of `a` and `b`.
    CNotInAB,
    /// `a = b = 1 < c`.
    Degenerate11C,
    /// `a = b = c = 1`.
    Degenerate111,
}

/// Pairwise coprime generators `a <= b <= c` with `P = abc` and `S = a + b + c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Semigroup3 {
    pub a: Integer,
    pub b: Integer,
    pub c: Integer,
    pub p: Integer,
    pub s: Integer,
    pub tag: CaseTag,
}

impl Semigroup3 {
    pub fn new(a: Integer, b: Integer, c: Integer) -> Result<Self> {
        if a < Integer::one() || a > b || b > c {
            return Err(Error::Domain(format!("need 1 <= a <= b <= c, got ({a}, {b}, {c})")));
        }
        if !gcd(&a, &b).is_one() || !gcd(&a, &c).is_one() || !gcd(&b, &c).is_one() {
            return Err(Error::Domain(format!("generators ({a}, {b}, {c}) are not pairwise coprime")));
        }
        let one = Integer::one();
        let tag = if c == one {
            CaseTag::Degenerate111
        } else if b == one {
            CaseTag::Degenerate11C
        } else if a == one {
            CaseTag::AEquals1
        } else if membership_two(&c, &a, &b).is_some() {
            CaseTag::CInAB
        } else {
            CaseTag::CNotInAB
        };
        let p = &a * &b * &c;
        let s = &a + &b + &c;
        Ok(Self { a, b, c, p, s, tag })
    }

    pub fn from_u64(a: u64, b: u64, c: u64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.tag, CaseTag::Degenerate11C | CaseTag::Degenerate111)
    }
}

impl fmt::Display for Semigroup3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{},{},{}>", self.a, self.b, self.c)
    }
}

/// Target after reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReducedTarget {
    /// The denumerant equals `d(m, reduced)`.
    Value(Integer),
    /// The shifted target is negative: the denumerant is 0.
    Negative,
    /// The overall gcd does not divide the target: the denumerant is 0.
    Indivisible,
}

/// Record of the reduction from raw generators to a pairwise coprime problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    /// Overall gcd divided out first.
    pub g: Integer,
    /// `gcd(b, c)`, `gcd(a, c)`, `gcd(a, b)` of the gcd-free generators.
    pub g_a: Integer,
    pub g_b: Integer,
    pub g_c: Integer,
    /// Multipliers in `[1, g_a]`, `[1, g_b]`, `[1, g_c]` solving `a * alpha = -n (mod g_a)` etc.
    pub alpha: Integer,
    pub beta: Integer,
    pub gamma: Integer,
    pub reduced: Semigroup3,
    pub m_reduced: ReducedTarget,
    /// `permutation[i]` is the raw position (0, 1, 2) of the `i`-th sorted reduced generator.
    pub permutation: [usize; 3],
}

/// The unique `u'` in `[1, v]` with `u * u' = -t (mod v)`.
fn unit_multiplier(u: &Integer, t: &Integer, v: &Integer) -> Integer {
    if v.is_one() {
        return Integer::one();
    }
    let inv = mod_inverse(u, v).expect("u is a unit modulo v");
    let r = (-(t * inv)).mod_floor(v);
    if r.is_zero() {
        v.clone()
    } else {
        r
    }
}

/// Reduce `d(n, gens)` to a denumerant over pairwise coprime generators.
pub fn reduce_problem(gens: &GeneratorTriple, n: &Integer) -> Result<ReductionCertificate> {
    if n.is_negative() {
        return Err(Error::Domain(format!("target must be nonnegative, got {n}")));
    }
    let g = gcd(&gcd(&gens.n1, &gens.n2), &gens.n3);
    let (a, b, c) = (&gens.n1 / &g, &gens.n2 / &g, &gens.n3 / &g);
    let divisible = n.is_multiple_of(&g);
    let n = if divisible { n / &g } else { Integer::zero() };

    let g_a = gcd(&b, &c);
    let g_b = gcd(&a, &c);
    let g_c = gcd(&a, &b);
    let alpha = unit_multiplier(&a, &n, &g_a);
    let beta = unit_multiplier(&b, &n, &g_b);
    let gamma = unit_multiplier(&c, &n, &g_c);
    let shifted = &n - (&g_a - &alpha) * &a - (&g_b - &beta) * &b - (&g_c - &gamma) * &c;
    let scale = &g_a * &g_b * &g_c;
    debug_assert!(shifted.is_multiple_of(&scale));

    let raw = [&a / (&g_b * &g_c), &b / (&g_a * &g_c), &c / (&g_a * &g_b)];
    let mut permutation = [0usize, 1, 2];
    permutation.sort_by(|&i, &j| raw[i].cmp(&raw[j]));
    let [x, y, z] = permutation.map(|i| raw[i].clone());
    let reduced = Semigroup3::new(x, y, z)?;

    let m_reduced = if !divisible {
        ReducedTarget::Indivisible
    } else if shifted.is_negative() {
        ReducedTarget::Negative
    } else {
        ReducedTarget::Value(shifted / scale)
    };
    Ok(ReductionCertificate { g, g_a, g_b, g_c, alpha, beta, gamma, reduced, m_reduced, permutation })
}

/// Frobenius number `pq - p - q` of `<p, q>`.
pub fn frobenius_two(p: &Integer, q: &Integer) -> Result<Integer> {
    if *p < Integer::from(2) || *q < Integer::from(2) || !gcd(p, q).is_one() {
        return Err(Error::Domain(format!("need coprime p, q >= 2, got ({p}, {q})")));
    }
    Ok(p * q - p - q)
}

/// Counts representations over `<p, q>` with the inverses computed once.
#[derive(Clone, Debug)]
pub struct TwoGenCounter {
    p: Integer,
    q: Integer,
    pq: Integer,
    p_inv_q: Integer,
    q_inv_p: Integer,
}

impl TwoGenCounter {
    pub fn new(p: &Integer, q: &Integer) -> Result<Self> {
        if *p < Integer::from(2) || *q < Integer::from(2) || !gcd(p, q).is_one() {
            return Err(Error::Domain(format!("need coprime p, q >= 2, got ({p}, {q})")));
        }
        Ok(Self {
            p: p.clone(),
            q: q.clone(),
            pq: p * q,
            p_inv_q: mod_inverse(p, q)?,
            q_inv_p: mod_inverse(q, p)?,
        })
    }

    /// Number of `(x, y) >= 0` with `xp + yq = m`; 0 for negative `m`.
    pub fn count(&self, m: &Integer) -> Integer {
        if m.is_negative() {
            return Integer::zero();
        }
        let f = in_one_to(-(m * &self.p_inv_q), &self.q);
        let g = in_one_to(-(m * &self.q_inv_p), &self.p);
        (m + &self.p * f + &self.q * g) / &self.pq - 1u32
    }
}

/// Representative of `x mod v` in `[1, v]`.
fn in_one_to(x: Integer, v: &Integer) -> Integer {
    let r = x.mod_floor(v);
    if r.is_zero() {
        v.clone()
    } else {
        r
    }
}

/// Denumerant of `m` over two coprime generators, by the closed formula.
pub fn popoviciu_two(m: &Integer, p: &Integer, q: &Integer) -> Result<Integer> {
    Ok(TwoGenCounter::new(p, q)?.count(m))
}

/// Writes `c = lambda a + mu b` with `0 <= mu < a`, when `lambda >= 0` is possible.
pub fn membership_two(c: &Integer, a: &Integer, b: &Integer) -> Option<(Integer, Integer)> {
    let mu = if a.is_one() {
        Integer::zero()
    } else {
        (c * mod_inverse(b, a).ok()?).mod_floor(a)
    };
    let lambda = (c - &mu * b) / a;
    if lambda.is_negative() {
        None
    } else {
        Some((lambda, mu))
    }
}

/// Splits `m = qP + r` and returns `(r, q (m + r + S) / 2)`.
pub fn ehrhart_reduce(m: &Integer, t: &Semigroup3) -> (Integer, Integer) {
    let (q, r) = split(m, &t.p);
    let correction = (&q * (m + &r + &t.s)) >> 1usize;
    (r, correction)
}

/// `(P + S) / 2 - (P - m)` for `P - S + 1 <= m <= P - 1`.
pub fn sertoz_shortcut(m: &Integer, t: &Semigroup3) -> Option<Integer> {
    let lo = &t.p - &t.s + 1u32;
    let hi = &t.p - 1u32;
    if *m < lo || *m > hi {
        return None;
    }
    Some(((&t.p + &t.s) >> 1usize) - (&t.p - m))
}

fn small(x: &Integer, what: &str) -> Result<u64> {
    x.to_u64().filter(|v| *v < (1 << 40)).ok_or_else(|| Error::Resource(format!("{what} = {x} is too large for this brute-force routine")))
}

/// Smallest element of the semigroup in each class modulo `m0`.
pub fn apery_set(m0: &Integer, t: &Semigroup3) -> Result<Vec<Integer>> {
    if !m0.is_positive() {
        return Err(Error::Domain(format!("modulus must be positive, got {m0}")));
    }
    let m = small(m0, "m0")?;
    if m > 10_000_000 {
        return Err(Error::Resource(format!("Apery set of size {m}")));
    }
    let gens = [small(&t.a, "a")?, small(&t.b, "b")?, small(&t.c, "c")?];
    let mut dist = vec![u64::MAX; m as usize];
    let mut heap = BinaryHeap::new();
    dist[0] = 0;
    heap.push(Reverse((0u64, 0u64)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r as usize] {
            continue;
        }
        for &g in &gens {
            let nd = d + g;
            let nr = ((r + g) % m) as usize;
            if nd < dist[nr] {
                dist[nr] = nd;
                heap.push(Reverse((nd, nr as u64)));
            }
        }
    }
    if !in_semigroup_small(m, &gens) {
        return Err(Error::Domain(format!("{m0} is not an element of {t}")));
    }
    Ok(dist.into_iter().map(Integer::from).collect())
}

fn in_semigroup_small(m: u64, gens: &[u64; 3]) -> bool {
    let mut reach = vec![false; m as usize + 1];
    reach[0] = true;
    for v in 1..=m as usize {
        reach[v] = gens.iter().any(|&g| (g as usize) <= v && reach[v - g as usize]);
    }
    reach[m as usize]
}

/// Work limits for the brute-force oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// Cap on `floor(m/a) * floor(m/b)` for enumeration.
    pub enumeration: u128,
    /// Cap on `floor(m/c)` for the layered two-generator oracle.
    pub layers: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { enumeration: 100_000_000, layers: 10_000_000 }
    }
}

fn enumeration_bounds(m: &Integer, t: &Semigroup3, budget: &OracleBudget) -> Result<(i128, i128, i128, i128)> {
    let work = floor_div(m, &t.a) * floor_div(m, &t.b);
    if work > Integer::from(budget.enumeration) {
        return Err(Error::Resource(format!("enumeration of {m} over {t} needs {work} steps")));
    }
    let conv = |x: &Integer| x.to_i128().ok_or_else(|| Error::Resource(format!("{x} exceeds 127 bits")));
    Ok((conv(m)?, conv(&t.a)?, conv(&t.b)?, conv(&t.c)?))
}

/// All factorizations `(x, y, z)` with `xa + yb + zc = m`.
pub fn enumerate_factorizations(m: &Integer, t: &Semigroup3) -> Result<Vec<(Integer, Integer, Integer)>> {
    enumerate_factorizations_with(m, t, &OracleBudget::default())
}

/// [`enumerate_factorizations`] under an explicit budget.
pub fn enumerate_factorizations_with(
    m: &Integer,
    t: &Semigroup3,
    budget: &OracleBudget,
) -> Result<Vec<(Integer, Integer, Integer)>> {
    if m.is_negative() {
        return Ok(Vec::new());
    }
    let (m, a, b, c) = enumeration_bounds(m, t, budget)?;
    let mut out = Vec::new();
    for z in 0..=m / c {
        let rz = m - z * c;
        for y in 0..=rz / b {
            let rest = rz - y * b;
            if rest % a == 0 {
                out.push((Integer::from(rest / a), Integer::from(y), Integer::from(z)));
            }
        }
    }
    Ok(out)
}

/// Number of factorizations by nested-loop counting.
pub fn count_factorizations(m: &Integer, t: &Semigroup3, budget: &OracleBudget) -> Result<Integer> {
    if m.is_negative() {
        return Ok(Integer::zero());
    }
    let (m, a, b, c) = enumeration_bounds(m, t, budget)?;
    let mut count: i128 = 0;
    for z in 0..=m / c {
        let rz = m - z * c;
        for y in 0..=rz / b {
            if (rz - y * b) % a == 0 {
                count += 1;
            }
        }
    }
    Ok(Integer::from(count))
}

/// Denumerant as a sum of two-generator counts over the multiplicity of `c`.
pub fn denumerant_oracle(m: &Integer, t: &Semigroup3) -> Result<Integer> {
    denumerant_oracle_with(m, t, &OracleBudget::default())
}

/// [`denumerant_oracle`] under an explicit budget.
pub fn denumerant_oracle_with(m: &Integer, t: &Semigroup3, budget: &OracleBudget) -> Result<Integer> {
    if m.is_negative() {
        return Ok(Integer::zero());
    }
    let layers = floor_div(m, &t.c);
    if layers > Integer::from(budget.layers) {
        return Err(Error::Resource(format!("layered oracle for {m} over {t} needs {layers} layers")));
    }
    let counter = if t.a > Integer::one() { Some(TwoGenCounter::new(&t.a, &t.b)?) } else { None };
    let mut total = Integer::zero();
    let mut rest = m.clone();
    while !rest.is_negative() {
        total += match &counter {
            Some(cnt) => cnt.count(&rest),
            None => floor_div(&rest, &t.b) + 1u32,
        };
        rest -= &t.c;
    }
    Ok(total)
}

/// Denumerants of every `0 <= m <= max_m` by the same layered sum, using
/// `d(m) = d2(m) + d(m - c)`. Word-sized generators only.
pub fn denumerant_oracle_table(t: &Semigroup3, max_m: u64) -> Result<Vec<u64>> {
    let a = small(&t.a, "a")?;
    let b = small(&t.b, "b")?;
    let c = small(&t.c, "c")? as usize;
    if max_m > 100_000_000 {
        return Err(Error::Resource(format!("oracle table up to {max_m}")));
    }
    let ainv = modinv_u64(a % b, b);
    let binv = modinv_u64(b % a, a);
    let two = |m: u64| -> u64 {
        if a == 1 {
            return m / b + 1;
        }
        // (m + a f + b g) / (ab) - 1 with f = -m a^-1 mod b in [1, b] and g = -m b^-1 mod a in [1, a].
        let f = match (b - (m % b) * ainv % b) % b {
            0 => b,
            v => v,
        };
        let g = match (a - (m % a) * binv % a) % a {
            0 => a,
            v => v,
        };
        (m + a * f + b * g) / (a * b) - 1
    };
    let mut out = Vec::with_capacity(max_m as usize + 1);
    for m in 0..=max_m {
        let layer = two(m);
        let below = if (m as usize) >= c { out[m as usize - c] } else { 0 };
        out.push(layer + below);
    }
    Ok(out)
}

fn modinv_u64(x: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    mod_inverse(&Integer::from(x), &Integer::from(m)).unwrap().to_u64().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn sg(a: u64, b: u64, c: u64) -> Semigroup3 {
        Semigroup3::from_u64(a, b, c).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let r = reduce_problem(&GeneratorTriple::from_u64(4, 6, 9).unwrap(), &int(10)).unwrap();
        assert_eq!(r.reduced, sg(1, 2, 3));
        assert_eq!(r.m_reduced, ReducedTarget::Value(int(1)));
        let r = reduce_problem(&GeneratorTriple::from_u64(6, 10, 15).unwrap(), &int(31)).unwrap();
        assert_eq!(r.reduced, sg(1, 1, 1));
        assert_eq!(r.m_reduced, ReducedTarget::Value(int(0)));
        let r = reduce_problem(&GeneratorTriple::from_u64(7, 11, 59).unwrap(), &int(4465)).unwrap();
        assert_eq!(r.reduced, sg(7, 11, 59));
        assert_eq!(r.m_reduced, ReducedTarget::Value(int(4465)));
        assert_eq!((r.g_a.clone(), r.g_b.clone(), r.g_c.clone()), (int(1), int(1), int(1)));
        let r = reduce_problem(&GeneratorTriple::from_u64(2, 4, 6).unwrap(), &int(21)).unwrap();
        assert_eq!(r.m_reduced, ReducedTarget::Indivisible);
    }

    #[test]
    fn frobenius_examples() {
        assert_eq!(frobenius_two(&int(7), &int(11)).unwrap(), int(59));
        assert_eq!(frobenius_two(&int(2), &int(3)).unwrap(), int(1));
        assert_eq!(frobenius_two(&int(49), &int(121)).unwrap(), int(5759));
        assert!(frobenius_two(&int(4), &int(6)).is_err());
    }

    #[test]
    fn popoviciu_examples() {
        assert_eq!(popoviciu_two(&int(10), &int(2), &int(3)).unwrap(), int(2));
        assert_eq!(popoviciu_two(&int(59), &int(7), &int(11)).unwrap(), int(0));
        assert_eq!(popoviciu_two(&int(0), &int(5), &int(7)).unwrap(), int(1));
    }

    #[test]
    fn membership_examples() {
        assert_eq!(membership_two(&int(18), &int(7), &int(11)), Some((int(1), int(1))));
        assert_eq!(membership_two(&int(59), &int(7), &int(11)), None);
        assert_eq!(membership_two(&int(22), &int(7), &int(11)), Some((int(0), int(2))));
    }

    #[test]
    fn range_reductions() {
        let t = sg(5, 7, 11);
        assert_eq!(ehrhart_reduce(&int(385), &t), (int(0), int(204)));
        assert_eq!(ehrhart_reduce(&int(100), &t), (int(100), int(0)));
        assert_eq!(ehrhart_reduce(&int(870), &t), (int(100), int(993)));
        assert_eq!(sertoz_shortcut(&int(384), &t), Some(int(203)));
        assert_eq!(sertoz_shortcut(&int(363), &t), Some(int(182)));
        assert_eq!(sertoz_shortcut(&int(362), &t), None);
        assert_eq!(denumerant_oracle(&int(385), &t).unwrap(), int(205));
        assert_eq!(
            denumerant_oracle(&int(870), &t).unwrap(),
            denumerant_oracle(&int(100), &t).unwrap() + int(993)
        );
    }

    #[test]
    fn apery_examples() {
        let ap = apery_set(&int(11), &sg(5, 7, 11)).unwrap();
        let want: Vec<Integer> = [0, 12, 24, 14, 15, 5, 17, 7, 19, 20, 10].iter().map(|&v| int(v)).collect();
        assert_eq!(ap, want);
        assert_eq!(apery_set(&int(3), &sg(1, 2, 3)).unwrap(), vec![int(0), int(1), int(2)]);
        assert_eq!(apery_set(&int(2), &sg(2, 3, 5)).unwrap(), vec![int(0), int(3)]);
        assert!(apery_set(&int(1), &sg(2, 3, 5)).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let t = sg(5, 7, 11);
        let f = enumerate_factorizations(&int(87), &t).unwrap();
        assert_eq!(f.len(), 13);
        assert!(f.contains(&(int(2), int(0), int(7))));
        let listed = [
            (2, 0, 7), (0, 3, 6), (5, 1, 5), (3, 4, 4), (1, 7, 3), (8, 2, 3), (13, 0, 2),
            (6, 5, 2), (4, 8, 1), (2, 11, 0), (11, 3, 1), (16, 1, 0), (9, 6, 0),
        ];
        for (x, y, z) in listed {
            assert!(f.contains(&(int(x), int(y), int(z))));
        }
        assert_eq!(enumerate_factorizations(&int(0), &t).unwrap(), vec![(int(0), int(0), int(0))]);
        assert!(enumerate_factorizations(&int(4), &t).unwrap().is_empty());
        let tiny = OracleBudget { enumeration: 10, layers: 10 };
        assert!(matches!(enumerate_factorizations_with(&int(87), &t, &tiny), Err(Error::Resource(_))));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(denumerant_oracle(&int(87), &sg(5, 7, 11)).unwrap(), int(13));
        assert_eq!(denumerant_oracle(&int(4465), &sg(7, 11, 59)).unwrap(), int(2232));
        assert_eq!(denumerant_oracle(&int(1), &sg(5, 7, 11)).unwrap(), int(0));
        assert_eq!(denumerant_oracle(&int(57), &sg(1, 7, 11)).unwrap(), int(29));
        assert_eq!(denumerant_oracle(&int(4), &sg(1, 1, 1)).unwrap(), int(15));
    }

    #[test]
    fn oracle_table_matches_pointwise() {
        for t in [sg(5, 7, 11), sg(1, 7, 11), sg(1, 1, 3), sg(2, 3, 5)] {
            let table = denumerant_oracle_table(&t, 400).unwrap();
            for (m, v) in table.iter().enumerate() {
                assert_eq!(int(*v as i64), denumerant_oracle(&int(m as i64), &t).unwrap());
            }
        }
    }

    #[test]
    fn semigroup_tags() {
        assert_eq!(sg(5, 7, 11).tag, CaseTag::CNotInAB);
        assert_eq!(sg(7, 11, 18).tag, CaseTag::CInAB);
        assert_eq!(sg(1, 2, 3).tag, CaseTag::AEquals1);
        assert_eq!(sg(1, 1, 5).tag, CaseTag::Degenerate11C);
        assert_eq!(sg(1, 1, 1).tag, CaseTag::Degenerate111);
        assert!(Semigroup3::from_u64(2, 4, 7).is_err());
        assert!(Semigroup3::from_u64(3, 2, 7).is_err());
        assert!(GeneratorTriple::from_u64(2, 2, 7).is_err());
    }
}
