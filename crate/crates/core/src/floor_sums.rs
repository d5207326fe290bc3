//! Sums of floors along arithmetic progressions,
//! `S±(s, t, q, N) = sum_{k=0}^{N} floor((s ± k t) / q)` with `0 <= s, t < q`.
//!
//! [`s_sum`] splits the range of `k` into the intervals on which the floor
//! term is constant. All interior intervals hold `floor(q/t)` or `ceil(q/t)`
//! integers, and the long ones ("hS" intervals) recur with period `t / gcd(t, q)`.
//! The sum is a closed form plus the sum of the long-interval indices below
//! the maximal value `M`, which is read off a sorted stream of one period.
//!
//! [`s_sum_direct`] and [`floor_sum_euclid`] are independent oracles.

use num_integer::Integer as _;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{ceil_div, floor_div, gcd, split, Integer};
use crate::error::{Error, Result};

/// Direction of the progression inside the floor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// A floor sum `sum_{k=0}^{n} floor((s ± k t) / q)`; `n = -1` is the empty sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FloorSumQuery {
    pub sign: Sign,
    pub s: Integer,
    pub t: Integer,
    pub q: Integer,
    pub n: Integer,
}

impl FloorSumQuery {
    /// Validated constructor.
    pub fn new(sign: Sign, s: Integer, t: Integer, q: Integer, n: Integer) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::Domain(format!("q must be positive, got {q}")));
        }
        if s.is_negative() || s >= q || t.is_negative() || t >= q {
            return Err(Error::Domain(format!("need 0 <= s, t < q; got s={s}, t={t}, q={q}")));
        }
        if n < Integer::from(-1) {
            return Err(Error::Domain(format!("N must be at least -1, got {n}")));
        }
        Ok(Self { sign, s, t, q, n })
    }

    /// Constructor for callers that already guarantee the invariants.
    pub(crate) fn trusted(sign: Sign, s: Integer, t: Integer, q: Integer, n: Integer) -> Self {
        debug_assert!(q.is_positive() && !s.is_negative() && s < q && !t.is_negative() && t < q);
        Self { sign, s, t, q, n }
    }
}

/// Literal term-by-term evaluation. Refuses `N > 10^7`.
pub fn s_sum_direct(query: &FloorSumQuery) -> Result<Integer> {
    if query.n > Integer::from(10_000_000) {
        return Err(Error::Resource(format!("direct floor sum with N = {}", query.n)));
    }
    let n = query.n.to_i64().unwrap_or(-1);
    let mut acc = Integer::zero();
    let mut v = query.s.clone();
    for _ in 0..n + 1 {
        acc += floor_div(&v, &query.q);
        match query.sign {
            Sign::Plus => v += &query.t,
            Sign::Minus => v -= &query.t,
        }
    }
    Ok(acc)
}

/// Long-interval index set of one period, as a sorted stream.
///
/// Indices are `j_i = floor((base + i * t_eff) / q_hat_eff)` for
/// `0 <= i < q_hat_eff`; `base` depends on the sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsProfile {
    pub sign: Sign,
    /// `gcd(t, q)`.
    pub g: Integer,
    /// Period `t / g`.
    pub t_eff: Integer,
    /// `floor(q / t)`.
    pub q_bar: Integer,
    /// `(q / g) mod t_eff`, also the number of indices per period.
    pub q_hat_eff: Integer,
    /// `floor(s / g) mod t_eff`.
    pub s_hat_eff: Integer,
    base: Integer,
}

/// Build the long-interval profile for `(sign, s, t, q)`. Requires `t >= 1` and `t ∤ q`.
pub fn hs_index_stream(sign: Sign, s: &Integer, t: &Integer, q: &Integer) -> Result<HsProfile> {
    if !t.is_positive() || !q.is_positive() {
        return Err(Error::Domain(format!("need t >= 1 and q >= 1; got t={t}, q={q}")));
    }
    if s.is_negative() {
        return Err(Error::Domain(format!("need s >= 0; got s={s}")));
    }
    if q.is_multiple_of(t) {
        return Err(Error::Domain(format!("t={t} divides q={q}; no long intervals to stream")));
    }
    let g = gcd(t, q);
    let t_eff = t / &g;
    let q_bar = q / t;
    let q_hat_eff = (q / &g) % &t_eff;
    let s_hat_eff = (s / &g) % &t_eff;
    let base = match sign {
        Sign::Plus => s_hat_eff.clone(),
        Sign::Minus if s_hat_eff < q_hat_eff => &q_hat_eff - 1u32 - &s_hat_eff,
        Sign::Minus => &q_hat_eff - 1u32 - &s_hat_eff + &t_eff,
    };
    Ok(HsProfile { sign, g, t_eff, q_bar, q_hat_eff, s_hat_eff, base })
}

impl HsProfile {
    /// Number of indices in one period.
    pub fn size(&self) -> &Integer {
        &self.q_hat_eff
    }

    /// The `i`-th smallest index, `0 <= i < size`.
    pub fn nth(&self, i: &Integer) -> Integer {
        (&self.base + i * &self.t_eff) / &self.q_hat_eff
    }

    /// Smallest index.
    pub fn first(&self) -> Integer {
        self.nth(&Integer::zero())
    }

    /// Largest index.
    pub fn last(&self) -> Integer {
        self.nth(&(&self.q_hat_eff - 1u32))
    }

    /// Membership by the residue test, independent of the stream.
    pub fn contains(&self, k: &Integer) -> bool {
        let r = match self.sign {
            Sign::Plus => &self.s_hat_eff - k * &self.q_hat_eff,
            Sign::Minus => &self.s_hat_eff + k * &self.q_hat_eff,
        };
        r.mod_floor(&self.t_eff) < self.q_hat_eff
    }

    /// The indices in increasing order.
    pub fn iter(&self) -> HsIter {
        let (tq, tr) = split(&self.t_eff, &self.q_hat_eff);
        let (j, r) = split(&self.base, &self.q_hat_eff);
        HsIter { left: self.q_hat_eff.clone(), j, r, tq, tr, qh: self.q_hat_eff.clone() }
    }

    /// Number of indices below `bound`.
    pub fn count_below(&self, bound: &Integer) -> Integer {
        let c = ceil_div(&(bound * &self.q_hat_eff - &self.base), &self.t_eff);
        c.clamp(Integer::zero(), self.q_hat_eff.clone())
    }

    /// Sum of all indices of one period.
    pub fn sum(&self) -> Integer {
        self.sum_first(&self.q_hat_eff)
    }

    /// `(count, sum)` of the indices below `bound`.
    pub fn prefix(&self, bound: &Integer) -> (Integer, Integer) {
        let count = self.count_below(bound);
        let sum = self.sum_first(&count);
        (count, sum)
    }

    /// Sum of the `count` smallest indices, streamed.
    fn sum_first(&self, count: &Integer) -> Integer {
        let small = (
            self.base.to_u128(),
            self.t_eff.to_u128(),
            self.q_hat_eff.to_u128(),
            count.to_u64(),
        );
        if let (Some(base), Some(t), Some(qh), Some(n)) = small {
            if t < (1u128 << 62) && base < (1u128 << 63) {
                let (tq, tr) = (t / qh, t % qh);
                let (mut j, mut r) = (base / qh, base % qh);
                let mut acc: u128 = 0;
                for _ in 0..n {
                    acc += j;
                    j += tq;
                    r += tr;
                    if r >= qh {
                        r -= qh;
                        j += 1;
                    }
                }
                return Integer::from(acc);
            }
        }
        let mut it = self.iter();
        it.left = count.clone();
        it.fold(Integer::zero(), |acc, j| acc + j)
    }
}

/// Iterator over the long-interval indices of one period.
#[derive(Clone, Debug)]
pub struct HsIter {
    left: Integer,
    j: Integer,
    r: Integer,
    tq: Integer,
    tr: Integer,
    qh: Integer,
}

impl Iterator for HsIter {
    type Item = Integer;

    fn next(&mut self) -> Option<Integer> {
        if !self.left.is_positive() {
            return None;
        }
        self.left -= 1u32;
        let out = self.j.clone();
        self.j += &self.tq;
        self.r += &self.tr;
        if self.r >= self.qh {
            self.r -= &self.qh;
            self.j += 1u32;
        }
        Some(out)
    }
}

/// Which closed form produced a value of [`s_sum`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SumBranch {
    /// `N = -1`.
    Empty,
    /// `t = 0`, every term vanishes.
    ZeroStep,
    /// The extreme term is 0.
    ZeroMax,
    /// `t | q`, all intervals have equal length.
    Divisible,
    /// First long index is at or beyond `M`.
    A,
    /// Some, not all, indices of the first period lie below `M`.
    B1,
    /// Exactly the first period lies below `M`.
    B2,
    /// Several full periods lie below `M`.
    B3,
}

/// Closed-form evaluation of the floor sum.
pub fn s_sum(query: &FloorSumQuery) -> Integer {
    s_sum_traced(query).0
}

/// [`s_sum`] together with the branch taken.
pub fn s_sum_traced(query: &FloorSumQuery) -> (Integer, SumBranch) {
    let FloorSumQuery { sign, s, t, q, n } = query;
    if n.is_negative() {
        return (Integer::zero(), SumBranch::Empty);
    }
    if t.is_zero() {
        return (Integer::zero(), SumBranch::ZeroStep);
    }
    match sign {
        Sign::Plus => {
            let m = floor_div(&(s + n * t), q);
            if m.is_zero() {
                return (Integer::zero(), SumBranch::ZeroMax);
            }
            let tail = &m * (n - ceil_div(&(&m * q - s), t) + 1u32);
            let pairs = (&m * (&m - 1u32)) >> 1usize;
            if q.is_multiple_of(t) {
                return ((q / t) * pairs + tail, SumBranch::Divisible);
            }
            let hs = hs_index_stream(*sign, s, t, q).expect("t does not divide q");
            let (extra, branch) = long_index_sum(&hs, &m);
            (&hs.q_bar * pairs + tail + extra, branch)
        }
        Sign::Minus => {
            let m = -floor_div(&(s - n * t), q);
            if m.is_zero() {
                return (Integer::zero(), SumBranch::ZeroMax);
            }
            let tail = &m * (n - floor_div(&(s + (&m - 1u32) * q), t));
            let pairs = (&m * (&m - 1u32)) >> 1usize;
            if q.is_multiple_of(t) {
                return (-(q / t) * pairs - tail, SumBranch::Divisible);
            }
            let hs = hs_index_stream(*sign, s, t, q).expect("t does not divide q");
            let (extra, branch) = long_index_sum(&hs, &m);
            (-(&hs.q_bar * pairs) - tail - extra, branch)
        }
    }
}

/// Sum of all long-interval indices in `[0, m)`.
fn long_index_sum(hs: &HsProfile, m: &Integer) -> (Integer, SumBranch) {
    let j0 = hs.first();
    if &j0 >= m {
        return (Integer::zero(), SumBranch::A);
    }
    if &hs.last() >= m {
        return (hs.prefix(m).1, SumBranch::B1);
    }
    let te = &hs.t_eff;
    if &(&j0 + te) >= m {
        return (hs.sum(), SumBranch::B2);
    }
    let u = floor_div(&(m - 1u32), te);
    let shift = &u * te;
    let (k_count, k_sum) = hs.prefix(&(m - &shift));
    let full = &u * hs.sum() + hs.size() * te * ((&u * (&u - 1u32)) >> 1usize);
    (full + k_sum + k_count * shift, SumBranch::B3)
}

/// `sum_{k=n1}^{n2} floor((s ± k t) / q)`, re-indexed onto [`s_sum`].
pub fn shifted_sum(sign: Sign, s: &Integer, t: &Integer, q: &Integer, n1: &Integer, n2: &Integer) -> Integer {
    if n2 < n1 {
        return Integer::zero();
    }
    let alpha = match sign {
        Sign::Plus => s + n1 * t,
        Sign::Minus => s - n1 * t,
    };
    let (bar, hat) = split(&alpha, q);
    let len = n2 - n1;
    let rest = s_sum(&FloorSumQuery::trusted(sign, hat, t.clone(), q.clone(), len.clone()));
    bar * (len + 1u32) + rest
}

/// Logarithmic oracle: Euclid-style swapping of slope and modulus.
pub fn floor_sum_euclid(query: &FloorSumQuery) -> Integer {
    let FloorSumQuery { sign, s, t, q, n } = query;
    if n.is_negative() {
        return Integer::zero();
    }
    let count = n + 1u32;
    match sign {
        Sign::Plus => floor_sum_unsigned(count, q.clone(), t.clone(), s.clone()),
        Sign::Minus => {
            // Reverse the order: k -> n - k turns the slope positive.
            let start = s - n * t;
            let (shift, rest) = split(&start, q);
            &count * shift + floor_sum_unsigned(count, q.clone(), t.clone(), rest)
        }
    }
}

/// `sum_{i=0}^{n-1} floor((a i + b) / m)` for `n, a, b >= 0`, `m >= 1`.
fn floor_sum_unsigned(mut n: Integer, mut m: Integer, mut a: Integer, mut b: Integer) -> Integer {
    let mut ans = Integer::zero();
    loop {
        if a >= m {
            let (qa, ra) = split(&a, &m);
            ans += ((&n * (&n - 1u32)) >> 1usize) * qa;
            a = ra;
        }
        if b >= m {
            let (qb, rb) = split(&b, &m);
            ans += &n * qb;
            b = rb;
        }
        let y_max = &a * &n + &b;
        if y_max < m {
            break;
        }
        let (nn, bb) = split(&y_max, &m);
        n = nn;
        b = bb;
        std::mem::swap(&mut m, &mut a);
    }
    ans
}
