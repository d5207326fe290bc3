//! Denumerants from the basic factorization.
//!
//! With basic factorization `(x0, y0, z0)` of `m` in a diagram `L(l, h, w, y)`
//! with weights `(delta, theta)`, and `A = floor(z0 / (delta + theta))`,
//!
//! ```text
//! d(m) = 1 + A + sum_{k=0}^{A} (S_k + T_k)
//! S_k = min(floor((y0 + k(h - y)) / y), floor((z0 - k(delta + theta)) / delta))
//! T_k = min(floor((x0 + k(l - w)) / w), floor((z0 - k(delta + theta)) / theta))
//! ```
//!
//! where a term with a zero divisor is dropped from its `min`. Each `min`
//! switches branch once, at `k1 = ceil((z0 y - y0 delta) / a)` for `S_k` and
//! at `k0 = ceil((z0 w - x0 theta) / b)` for `T_k`, so both sums split into
//! polynomial terms plus floor sums over arithmetic progressions. The three
//! families of closed forms below cover `delta = 0`, `theta = 0` and
//! `delta, theta > 0`.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ceil_div, floor_div, split, triangular, Integer};
use crate::error::{Error, Result};
use crate::floor_sums::{s_sum, shifted_sum, FloorSumQuery, Sign};
use crate::lshape::{compute_lshapes, BasicFactorization, LShape, PlacedLShape};
use crate::semigroup::{ehrhart_reduce, reduce_problem, sertoz_shortcut, CaseTag, GeneratorTriple, ReducedTarget, ReductionCertificate, Semigroup3};

/// Position of a switch point `k` relative to `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Threshold {
    /// `k = 0`.
    Zero,
    /// `1 <= k <= A`.
    Within,
    /// `k > A`.
    Beyond,
}

impl Threshold {
    fn classify(k: &Integer, a_m: &Integer) -> Self {
        if k.is_zero() {
            Threshold::Zero
        } else if k <= a_m {
            Threshold::Within
        } else {
            Threshold::Beyond
        }
    }

    fn digit(self) -> u8 {
        match self {
            Threshold::Zero => 1,
            Threshold::Within => 2,
            Threshold::Beyond => 3,
        }
    }

    pub const ALL: [Threshold; 3] = [Threshold::Zero, Threshold::Within, Threshold::Beyond];
}

/// Closed-form branch used for a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// `delta = 0`, `w = 0`.
    I1,
    /// `delta = 0`, `w > 0`, by the position of `k0`.
    I2(Threshold),
    /// `theta = 0`, `y = 0`.
    II1,
    /// `theta = 0`, `y > 0`, by the position of `k1`.
    II2(Threshold),
    /// `delta, theta > 0`, `w = y = 0`.
    III1,
    /// `delta, theta > 0`, `w > 0 = y`, by the position of `k0`.
    III2(Threshold),
    /// `delta, theta > 0`, `y > 0 = w`, by the position of `k1`.
    III3(Threshold),
    /// `delta, theta > 0`, `w, y > 0`, by the positions of `k1` and `k0`.
    III4 { a: Threshold, b: Threshold },
}

impl CaseId {
    /// Every branch, in a fixed order.
    pub fn all() -> Vec<CaseId> {
        let mut v = vec![CaseId::I1];
        v.extend(Threshold::ALL.map(CaseId::I2));
        v.push(CaseId::II1);
        v.extend(Threshold::ALL.map(CaseId::II2));
        v.push(CaseId::III1);
        v.extend(Threshold::ALL.map(CaseId::III2));
        v.extend(Threshold::ALL.map(CaseId::III3));
        for a in Threshold::ALL {
            for b in Threshold::ALL {
                v.push(CaseId::III4 { a, b });
            }
        }
        v
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseId::I1 => write!(f, "i.1"),
            CaseId::I2(t) => write!(f, "i.2.{}", t.digit()),
            CaseId::II1 => write!(f, "ii.1"),
            CaseId::II2(t) => write!(f, "ii.2.{}", t.digit()),
            CaseId::III1 => write!(f, "iii.1"),
            CaseId::III2(t) => write!(f, "iii.2.{}", t.digit()),
            CaseId::III3(t) => write!(f, "iii.3.{}", t.digit()),
            CaseId::III4 { a, b } => write!(f, "iii.4.a{}.b{}", a.digit(), b.digit()),
        }
    }
}

/// How the pipeline produced its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Route {
    /// Repeated unit generators, counted directly.
    Degenerate,
    /// The reduced target is not in the semigroup.
    NotInSemigroup,
    /// The reduced target lies just below `P`, where the count is linear.
    NearProduct,
    /// A closed form over the diagram.
    Closed,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Degenerate => "degenerate",
            Route::NotInSemigroup => "not-in-semigroup",
            Route::NearProduct => "near-product",
            Route::Closed => "closed-form",
        })
    }
}

/// Record of one evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseTrace {
    pub route: Route,
    /// `floor(m / P)` removed before the closed form.
    pub period_quotient: Integer,
    pub case_id: Option<CaseId>,
    pub lshape: Option<LShape>,
    pub basic: Option<BasicFactorization>,
    pub a_m: Option<Integer>,
    pub k0: Option<Integer>,
    pub k1: Option<Integer>,
    /// `sum S_k` and `sum T_k`, when the branch exposes them.
    pub a_part: Option<Integer>,
    pub b_part: Option<Integer>,
    pub sum_queries: Vec<FloorSumQuery>,
}

impl CaseTrace {
    fn new(route: Route) -> Self {
        Self {
            route,
            period_quotient: Integer::zero(),
            case_id: None,
            lshape: None,
            basic: None,
            a_m: None,
            k0: None,
            k1: None,
            a_part: None,
            b_part: None,
            sum_queries: Vec::new(),
        }
    }

    /// Short label: the closed-form branch or the route.
    pub fn label(&self) -> String {
        match self.case_id {
            Some(id) => id.to_string(),
            None => self.route.to_string(),
        }
    }
}

/// Quotient/remainder pairs used by the closed forms; a pair is present only
/// when its divisor is positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EuclidDecomp {
    /// `x0` and `l` by `w`.
    pub x0: Option<(Integer, Integer)>,
    pub l: Option<(Integer, Integer)>,
    /// `y0` and `h` by `y`.
    pub y0: Option<(Integer, Integer)>,
    pub h: Option<(Integer, Integer)>,
    /// `z0` by `delta` and by `theta`.
    pub z0_delta: Option<(Integer, Integer)>,
    pub z0_theta: Option<(Integer, Integer)>,
    /// `delta` by `theta` and `theta` by `delta`.
    pub delta: Option<(Integer, Integer)>,
    pub theta: Option<(Integer, Integer)>,
}

impl EuclidDecomp {
    pub fn new(bf: &BasicFactorization, s: &LShape) -> Self {
        let by = |x: &Integer, d: &Integer| d.is_positive().then(|| split(x, d));
        Self {
            x0: by(&bf.x0, &s.w),
            l: by(&s.l, &s.w),
            y0: by(&bf.y0, &s.y),
            h: by(&s.h, &s.y),
            z0_delta: by(&bf.z0, &s.delta),
            z0_theta: by(&bf.z0, &s.theta),
            delta: by(&s.delta, &s.theta),
            theta: by(&s.theta, &s.delta),
        }
    }
}

/// `(k0, k1)`: `k0` exists when `w > 0`, `k1` when `y > 0`.
pub fn k_thresholds(bf: &BasicFactorization, s: &LShape, t: &Semigroup3) -> (Option<Integer>, Option<Integer>) {
    let k0 = s.w.is_positive().then(|| ceil_div(&(&bf.z0 * &s.w - &bf.x0 * &s.theta), &t.b));
    let k1 = s.y.is_positive().then(|| ceil_div(&(&bf.z0 * &s.y - &bf.y0 * &s.delta), &t.a));
    (k0, k1)
}

/// Literal evaluation of `1 + A + sum (S_k + T_k)` for `m`. Refuses `A > 10^7`.
pub fn basic_sum_direct(m: &Integer, s: &LShape, t: &Semigroup3) -> Result<Integer> {
    let placed = PlacedLShape::new(s.clone(), t)?;
    match placed.basic_factorization(m, t) {
        Some(bf) => basic_sum(&bf, s),
        None => Ok(Integer::zero()),
    }
}

/// `1 + A + sum (S_k + T_k)` for a given basic factorization. Refuses `A > 10^7`.
pub fn basic_sum(bf: &BasicFactorization, s: &LShape) -> Result<Integer> {
    let step = &s.delta + &s.theta;
    let a_m = floor_div(&bf.z0, &step);
    let steps = a_m.to_u64().filter(|v| *v <= 10_000_000).ok_or_else(|| Error::Resource(format!("basic sum with A = {a_m}")))?;
    let mut total = Integer::one() + &a_m;
    for k in 0..=steps {
        let k = Integer::from(k);
        let z_k = &bf.z0 - &k * &step;
        let s_row = s.y.is_positive().then(|| floor_div(&(&bf.y0 + &k * (&s.h - &s.y)), &s.y));
        let s_z = s.delta.is_positive().then(|| floor_div(&z_k, &s.delta));
        let t_col = s.w.is_positive().then(|| floor_div(&(&bf.x0 + &k * (&s.l - &s.w)), &s.w));
        let t_z = s.theta.is_positive().then(|| floor_div(&z_k, &s.theta));
        total += min_present(s_row, s_z) + min_present(t_col, t_z);
    }
    Ok(total)
}

fn min_present(x: Option<Integer>, y: Option<Integer>) -> Integer {
    match (x, y) {
        (Some(x), Some(y)) => x.min(y),
        (Some(v), None) | (None, Some(v)) => v,
        (None, None) => unreachable!("a weight and its side length cannot both vanish"),
    }
}

/// Recording evaluator for the floor sums of one closed form.
struct Sums {
    queries: Vec<FloorSumQuery>,
}

impl Sums {
    fn plus(&mut self, s: &Integer, t: &Integer, q: &Integer, n: &Integer) -> Integer {
        self.run(Sign::Plus, s, t, q, n)
    }

    fn minus(&mut self, s: &Integer, t: &Integer, q: &Integer, n: &Integer) -> Integer {
        self.run(Sign::Minus, s, t, q, n)
    }

    fn run(&mut self, sign: Sign, s: &Integer, t: &Integer, q: &Integer, n: &Integer) -> Integer {
        let query = FloorSumQuery::trusted(sign, s.clone(), t.clone(), q.clone(), n.clone());
        let v = s_sum(&query);
        self.queries.push(query);
        v
    }

    /// `sum_{k=n1}^{n2} floor((s - k t) / q)`.
    fn minus_from(&mut self, s: &Integer, t: &Integer, q: &Integer, n1: &Integer, n2: &Integer) -> Integer {
        if n2 >= n1 {
            let (_, hat) = split(&(s - n1 * t), q);
            self.queries.push(FloorSumQuery::trusted(Sign::Minus, hat, t.clone(), q.clone(), n2 - n1));
        }
        shifted_sum(Sign::Minus, s, t, q, n1, n2)
    }
}

struct Setup<'a> {
    bf: &'a BasicFactorization,
    s: &'a LShape,
    a_m: Integer,
    k0: Option<Integer>,
    k1: Option<Integer>,
    dec: EuclidDecomp,
    sums: Sums,
}

impl<'a> Setup<'a> {
    fn new(bf: &'a BasicFactorization, s: &'a LShape, t: &Semigroup3) -> Self {
        let a_m = floor_div(&bf.z0, &(&s.delta + &s.theta));
        let (k0, k1) = k_thresholds(bf, s, t);
        Self { bf, s, a_m, k0, k1, dec: EuclidDecomp::new(bf, s), sums: Sums { queries: Vec::new() } }
    }

    fn finish(self, id: CaseId, value: Integer, parts: Option<(Integer, Integer)>) -> (Integer, CaseTrace) {
        let mut trace = CaseTrace::new(Route::Closed);
        trace.case_id = Some(id);
        trace.lshape = Some(self.s.clone());
        trace.basic = Some(self.bf.clone());
        trace.a_m = Some(self.a_m);
        trace.k0 = self.k0;
        trace.k1 = self.k1;
        if let Some((a, b)) = parts {
            trace.a_part = Some(a);
            trace.b_part = Some(b);
        }
        trace.sum_queries = self.sums.queries;
        (value, trace)
    }
}

fn pair(p: &Option<(Integer, Integer)>) -> (&Integer, &Integer) {
    let (bar, hat) = p.as_ref().expect("divisor is positive in this branch");
    (bar, hat)
}

/// Closed form for diagrams with `delta = 0`.
pub fn denumerant_case_i(bf: &BasicFactorization, s: &LShape, t: &Semigroup3) -> Result<(Integer, CaseTrace)> {
    if !s.delta.is_zero() {
        return Err(Error::Domain(format!("{s} has delta != 0")));
    }
    let mut e = Setup::new(bf, s, t);
    let a = e.a_m.clone();
    let (y0_bar, y0_hat) = pair(&e.dec.y0);
    let (h_bar, h_hat) = pair(&e.dec.h);
    let sum_y = e.sums.plus(y0_hat, h_hat, &s.y, &a);
    let lead = (&a + 1u32) * (&a + 1u32 + y0_bar) + (h_bar - 2u32) * triangular(&a) + &sum_y;
    let Some(k0) = e.k0.clone() else {
        return Ok(e.finish(CaseId::I1, lead, None));
    };
    let branch = Threshold::classify(&k0, &a);
    let (x0_bar, x0_hat) = pair(&e.dec.x0);
    let (l_bar, l_hat) = pair(&e.dec.l);
    let value = match branch {
        Threshold::Zero => lead,
        Threshold::Within => {
            let k0m1 = &k0 - 1u32;
            let sum_x = e.sums.plus(x0_hat, l_hat, &s.w, &k0m1);
            lead + &k0 * (x0_bar - &a) + l_bar * triangular(&k0m1) + sum_x
        }
        Threshold::Beyond => {
            let sum_x = e.sums.plus(x0_hat, l_hat, &s.w, &a);
            (&a + 1u32) * (x0_bar + y0_bar + 1u32) + (l_bar + h_bar - 2u32) * triangular(&a) + sum_x + sum_y
        }
    };
    Ok(e.finish(CaseId::I2(branch), value, None))
}

/// Closed form for diagrams with `theta = 0`.
pub fn denumerant_case_ii(bf: &BasicFactorization, s: &LShape, t: &Semigroup3) -> Result<(Integer, CaseTrace)> {
    if !s.theta.is_zero() {
        return Err(Error::Domain(format!("{s} has theta != 0")));
    }
    let mut e = Setup::new(bf, s, t);
    let a = e.a_m.clone();
    let (x0_bar, x0_hat) = pair(&e.dec.x0);
    let (l_bar, l_hat) = pair(&e.dec.l);
    let sum_x = e.sums.plus(x0_hat, l_hat, &s.w, &a);
    let lead = (&a + 1u32) * (&a + 1u32 + x0_bar) + (l_bar - 2u32) * triangular(&a) + &sum_x;
    let Some(k1) = e.k1.clone() else {
        return Ok(e.finish(CaseId::II1, lead, None));
    };
    let branch = Threshold::classify(&k1, &a);
    let (y0_bar, y0_hat) = pair(&e.dec.y0);
    let (h_bar, h_hat) = pair(&e.dec.h);
    let value = match branch {
        Threshold::Zero => lead,
        Threshold::Within => {
            let k1m1 = &k1 - 1u32;
            let sum_y = e.sums.plus(y0_hat, h_hat, &s.y, &k1m1);
            lead + &k1 * (y0_bar - &a) + h_bar * triangular(&k1m1) + sum_y
        }
        Threshold::Beyond => {
            let sum_y = e.sums.plus(y0_hat, h_hat, &s.y, &a);
            (&a + 1u32) * (x0_bar + y0_bar + 1u32) + (l_bar + h_bar - 2u32) * triangular(&a) + sum_x + sum_y
        }
    };
    Ok(e.finish(CaseId::II2(branch), value, None))
}

/// Closed form for diagrams with `delta, theta > 0`: `d = 1 + A + sum S_k + sum T_k`.
pub fn denumerant_case_iii(bf: &BasicFactorization, s: &LShape, t: &Semigroup3) -> Result<(Integer, CaseTrace)> {
    if !s.delta.is_positive() || !s.theta.is_positive() {
        return Err(Error::Domain(format!("{s} needs delta, theta > 0")));
    }
    let mut e = Setup::new(bf, s, t);
    let a = e.a_m.clone();
    let a1 = &a + 1u32;
    let tri_a = triangular(&a);
    let (z1_bar, z1_hat) = pair(&e.dec.z0_delta);
    let (z2_bar, z2_hat) = pair(&e.dec.z0_theta);
    let (d_bar, d_hat) = pair(&e.dec.delta);
    let (t_bar, t_hat) = pair(&e.dec.theta);

    // sum of S_k, k = 0..A
    let a_rule = e.k1.as_ref().map(|k1| Threshold::classify(k1, &a)).unwrap_or(Threshold::Zero);
    let a_part = match a_rule {
        Threshold::Zero => &a1 * z1_bar - (t_bar + 1u32) * &tri_a + e.sums.minus(z1_hat, t_hat, &s.delta, &a),
        Threshold::Within => {
            let k1 = e.k1.clone().unwrap();
            let (y0_bar, y0_hat) = pair(&e.dec.y0);
            let (h_bar, h_hat) = pair(&e.dec.h);
            let k1m1 = &k1 - 1u32;
            &a1 * z1_bar + &k1 * (y0_bar - z1_bar) + (t_bar + h_bar) * triangular(&k1m1) - (t_bar + 1u32) * &tri_a
                + e.sums.plus(y0_hat, h_hat, &s.y, &k1m1)
                + e.sums.minus_from(z1_hat, t_hat, &s.delta, &k1, &a)
        }
        Threshold::Beyond => {
            let (y0_bar, y0_hat) = pair(&e.dec.y0);
            let (h_bar, h_hat) = pair(&e.dec.h);
            &a1 * y0_bar + (h_bar - 1u32) * &tri_a + e.sums.plus(y0_hat, h_hat, &s.y, &a)
        }
    };

    // sum of T_k, k = 0..A
    let b_rule = e.k0.as_ref().map(|k0| Threshold::classify(k0, &a)).unwrap_or(Threshold::Zero);
    let b_part = match b_rule {
        Threshold::Zero => &a1 * z2_bar - (d_bar + 1u32) * &tri_a + e.sums.minus(z2_hat, d_hat, &s.theta, &a),
        Threshold::Within => {
            let k0 = e.k0.clone().unwrap();
            let (x0_bar, x0_hat) = pair(&e.dec.x0);
            let (l_bar, l_hat) = pair(&e.dec.l);
            let k0m1 = &k0 - 1u32;
            &a1 * z2_bar + &k0 * (x0_bar - z2_bar) + (l_bar + d_bar) * triangular(&k0m1) - (d_bar + 1u32) * &tri_a
                + e.sums.plus(x0_hat, l_hat, &s.w, &k0m1)
                + e.sums.minus_from(z2_hat, d_hat, &s.theta, &k0, &a)
        }
        Threshold::Beyond => {
            let (x0_bar, x0_hat) = pair(&e.dec.x0);
            let (l_bar, l_hat) = pair(&e.dec.l);
            &a1 * x0_bar + (l_bar - 1u32) * &tri_a + e.sums.plus(x0_hat, l_hat, &s.w, &a)
        }
    };

    let id = match (s.w.is_positive(), s.y.is_positive()) {
        (false, false) => CaseId::III1,
        (true, false) => CaseId::III2(b_rule),
        (false, true) => CaseId::III3(a_rule),
        (true, true) => CaseId::III4 { a: a_rule, b: b_rule },
    };
    let value = &a1 + &a_part + &b_part;
    Ok(e.finish(id, value, Some((a_part, b_part))))
}

/// Dispatches a basic factorization to the closed form matching the weights.
pub fn denumerant_from_basic(bf: &BasicFactorization, s: &LShape, t: &Semigroup3) -> Result<(Integer, CaseTrace)> {
    if s.delta.is_zero() {
        denumerant_case_i(bf, s, t)
    } else if s.theta.is_zero() {
        denumerant_case_ii(bf, s, t)
    } else {
        denumerant_case_iii(bf, s, t)
    }
}

/// Which diagram to use when there are two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LShapePreference {
    /// Weights `(1, 0)`.
    #[default]
    H1,
    /// Weights `(0, 1)`.
    H2,
}

/// A semigroup with its diagrams computed once, for evaluating many targets.
#[derive(Clone, Debug)]
pub struct Denumerator {
    pub semigroup: Semigroup3,
    shapes: Vec<PlacedLShape>,
    preferred: usize,
}

impl Denumerator {
    pub fn new(t: &Semigroup3, pref: LShapePreference) -> Result<Self> {
        let shapes = if t.is_degenerate() {
            Vec::new()
        } else {
            compute_lshapes(t)?.into_iter().map(|s| PlacedLShape::new(s, t)).collect::<Result<Vec<_>>>()?
        };
        let preferred = match pref {
            LShapePreference::H2 if shapes.len() > 1 => 1,
            _ => 0,
        };
        Ok(Self { semigroup: t.clone(), shapes, preferred })
    }

    /// The diagrams in use (empty for degenerate triples).
    pub fn lshapes(&self) -> impl Iterator<Item = &LShape> {
        self.shapes.iter().map(|p| &p.shape)
    }

    /// Closed form over diagram `index`, without the range reductions.
    pub fn closed_form(&self, m: &Integer, index: usize) -> Result<(Integer, CaseTrace)> {
        let t = &self.semigroup;
        let placed = self.shapes.get(index).ok_or_else(|| Error::Domain(format!("{t} has no diagram number {index}")))?;
        match placed.basic_factorization(m, t) {
            Some(bf) => denumerant_from_basic(&bf, &placed.shape, t),
            None => {
                let mut trace = CaseTrace::new(Route::NotInSemigroup);
                trace.lshape = Some(placed.shape.clone());
                Ok((Integer::zero(), trace))
            }
        }
    }

    /// Exact denumerant of `m >= 0`.
    pub fn denumerant(&self, m: &Integer) -> Result<(Integer, CaseTrace)> {
        let t = &self.semigroup;
        if m.is_negative() {
            return Ok((Integer::zero(), CaseTrace::new(Route::NotInSemigroup)));
        }
        match t.tag {
            CaseTag::Degenerate111 => {
                let v = ((m + 1u32) * (m + 2u32)) >> 1usize;
                return Ok((v, CaseTrace::new(Route::Degenerate)));
            }
            CaseTag::Degenerate11C => {
                let k = floor_div(m, &t.c);
                let v = (&k + 1u32) * (m + 1u32) - &t.c * triangular(&k);
                return Ok((v, CaseTrace::new(Route::Degenerate)));
            }
            _ => {}
        }
        let (r, correction) = ehrhart_reduce(m, t);
        let quotient = floor_div(m, &t.p);
        let (v, mut trace) = match sertoz_shortcut(&r, t) {
            Some(v) => (v, CaseTrace::new(Route::NearProduct)),
            None => self.closed_form(&r, self.preferred)?,
        };
        trace.period_quotient = quotient;
        Ok((v + correction, trace))
    }
}

/// Exact denumerant of `m` over a pairwise coprime semigroup, with the default diagram.
pub fn denumerant(m: &Integer, t: &Semigroup3) -> Result<(Integer, CaseTrace)> {
    Denumerator::new(t, LShapePreference::default())?.denumerant(m)
}

/// Exact denumerant over arbitrary generators, through the coprime reduction.
pub fn denumerant_full(gens: &GeneratorTriple, n: &Integer) -> Result<(Integer, ReductionCertificate, CaseTrace)> {
    denumerant_full_with(gens, n, LShapePreference::default())
}

/// [`denumerant_full`] with an explicit diagram preference.
pub fn denumerant_full_with(
    gens: &GeneratorTriple,
    n: &Integer,
    pref: LShapePreference,
) -> Result<(Integer, ReductionCertificate, CaseTrace)> {
    let cert = reduce_problem(gens, n)?;
    match &cert.m_reduced {
        ReducedTarget::Value(m) => {
            let (v, trace) = Denumerator::new(&cert.reduced, pref)?.denumerant(m)?;
            Ok((v, cert, trace))
        }
        ReducedTarget::Negative | ReducedTarget::Indivisible => {
            Ok((Integer::zero(), cert, CaseTrace::new(Route::NotInSemigroup)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn sg(a: u64, b: u64, c: u64) -> Semigroup3 {
        Semigroup3::from_u64(a, b, c).unwrap()
    }

    fn bf(x: i64, y: i64, z: i64) -> BasicFactorization {
        BasicFactorization { x0: int(x), y0: int(y), z0: int(z) }
    }

    #[test]
    fn example_one() {
        let t = sg(5, 7, 11);
        let s = LShape::from_u64(5, 3, 2, 2, &t).unwrap();
        assert_eq!(basic_sum_direct(&int(87), &s, &t).unwrap(), int(13));
        assert_eq!(basic_sum_direct(&int(0), &s, &t).unwrap(), int(1));
        let (v, trace) = denumerant_case_iii(&bf(2, 0, 7), &s, &t).unwrap();
        assert_eq!(v, int(13));
        assert_eq!(trace.a_m, Some(int(3)));
        assert_eq!(trace.a_part, Some(int(2)));
        assert_eq!(trace.b_part, Some(int(7)));
        let (v, _) = denumerant_case_iii(&bf(0, 0, 0), &s, &t).unwrap();
        assert_eq!(v, int(1));
    }

    #[test]
    fn thresholds() {
        let t = sg(5, 7, 11);
        let s = LShape::from_u64(5, 3, 2, 2, &t).unwrap();
        assert_eq!(k_thresholds(&bf(2, 0, 7), &s, &t), (Some(int(2)), Some(int(3))));
        let t = sg(1, 2, 3);
        let s = LShape::from_u64(2, 2, 1, 1, &t).unwrap();
        assert_eq!(k_thresholds(&bf(0, 0, 2), &s, &t), (Some(int(1)), Some(int(2))));
        let t = sg(7, 11, 18);
        let s = LShape::from_u64(12, 7, 11, 6, &t).unwrap();
        assert_eq!(k_thresholds(&bf(4, 0, 4), &s, &t), (Some(int(4)), Some(int(4))));
    }

    #[test]
    fn case_i_and_ii_examples() {
        let t = sg(1, 2, 3);
        let s = LShape::from_u64(2, 2, 1, 1, &t).unwrap();
        assert_eq!(denumerant_case_i(&bf(0, 0, 2), &s, &t).unwrap().0, int(7));
        assert_eq!(denumerant_case_i(&bf(0, 0, 0), &s, &t).unwrap().0, int(1));
        let t = sg(7, 11, 18);
        let s = LShape::from_u64(12, 7, 11, 6, &t).unwrap();
        let (v, trace) = denumerant_case_ii(&bf(4, 0, 4), &s, &t).unwrap();
        assert_eq!(v, int(5));
        assert_eq!(trace.case_id, Some(CaseId::II2(Threshold::Within)));
        assert_eq!(denumerant_case_ii(&bf(0, 0, 0), &s, &t).unwrap().0, int(1));
        assert_eq!(denumerant_case_ii(&bf(4, 0, 0), &s, &t).unwrap().0, int(1));
        assert!(denumerant_case_i(&bf(4, 0, 4), &s, &t).is_err());
    }

    #[test]
    fn pipeline_examples() {
        assert_eq!(denumerant(&int(4465), &sg(7, 11, 59)).unwrap().0, int(2232));
        assert_eq!(denumerant(&int(34139180), &sg(49, 121, 5759)).unwrap().0, int(17069589));
        assert_eq!(denumerant(&int(57), &sg(1, 7, 11)).unwrap().0, int(29));
        assert_eq!(denumerant(&int(10), &sg(1, 1, 1)).unwrap().0, int(66));
        assert_eq!(denumerant(&int(10), &sg(1, 1, 4)).unwrap().0, int(11 + 7 + 3));
        let g = GeneratorTriple::from_u64(2, 4, 6).unwrap();
        assert_eq!(denumerant_full(&g, &int(20)).unwrap().0, int(14));
        assert_eq!(denumerant_full(&g, &int(21)).unwrap().0, int(0));
        let g = GeneratorTriple::from_u64(7, 11, 59).unwrap();
        assert_eq!(denumerant_full(&g, &int(4465)).unwrap().0, int(2232));
    }

    #[test]
    fn case_ids_are_distinct() {
        let all = CaseId::all();
        let names: std::collections::BTreeSet<String> = all.iter().map(|c| c.to_string()).collect();
        assert_eq!(names.len(), all.len());
        assert_eq!(all.len(), 24);
    }
}
