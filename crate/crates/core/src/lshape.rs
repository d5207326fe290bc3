//! L-shaped minimum distance diagrams.
//!
//! For pairwise coprime `a < b < c`, the squares `(i, j)` whose value
//! `ia + jb` is minimal in its class modulo `c` form an L-shape
//! `L(l, h, w, y)`: the rectangle `[0,l) x [0,h)` minus the top-right
//! `w x y` notch. It tiles the plane along `u = (l, -y)` and `v = (-w, h)`,
//! which span the lattice `{(i, j) : ia + jb = 0 (mod c)}`.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ceil_div, gcd, mod_inverse, Integer};
use crate::error::{Error, Result};
use crate::semigroup::{membership_two, CaseTag, Semigroup3};

/// `L(l, h, w, y)` with `delta = (la - yb)/c` and `theta = (hb - wa)/c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LShape {
    pub l: Integer,
    pub h: Integer,
    pub w: Integer,
    pub y: Integer,
    pub delta: Integer,
    pub theta: Integer,
}

impl LShape {
    /// Builds the shape and its weights; `None` unless both weights are integers.
    pub fn from_sides(l: Integer, h: Integer, w: Integer, y: Integer, t: &Semigroup3) -> Option<Self> {
        let (delta, r1) = (&l * &t.a - &y * &t.b).div_mod_floor(&t.c);
        let (theta, r2) = (&h * &t.b - &w * &t.a).div_mod_floor(&t.c);
        if !r1.is_zero() || !r2.is_zero() {
            return None;
        }
        Some(Self { l, h, w, y, delta, theta })
    }

    pub fn from_u64(l: u64, h: u64, w: u64, y: u64, t: &Semigroup3) -> Option<Self> {
        Self::from_sides(l.into(), h.into(), w.into(), y.into(), t)
    }

    /// Whether the square `(i, j)` belongs to the shape.
    pub fn contains(&self, i: &Integer, j: &Integer) -> bool {
        !i.is_negative()
            && !j.is_negative()
            && *i < self.l
            && *j < self.h
            && !(*i >= &self.l - &self.w && *j >= &self.h - &self.y)
    }
}

impl fmt::Display for LShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{},{},{}) delta={} theta={}", self.l, self.h, self.w, self.y, self.delta, self.theta)
    }
}

/// Checks every condition for `shape` to be the diagram of `t`.
pub fn validate_lshape(shape: &LShape, t: &Semigroup3) -> bool {
    let LShape { l, h, w, y, delta, theta } = shape;
    let zero = Integer::zero();
    if w.is_negative() || y.is_negative() || w >= l || y >= h {
        return false;
    }
    if l * h - w * y != t.c {
        return false;
    }
    if !gcd(&gcd(l, h), &gcd(w, y)).is_one() {
        return false;
    }
    let la_yb = l * &t.a - y * &t.b;
    let hb_wa = h * &t.b - w * &t.a;
    if la_yb < zero || hb_wa < zero || (la_yb.is_zero() && hb_wa.is_zero()) {
        return false;
    }
    if !la_yb.is_multiple_of(&t.c) || !hb_wa.is_multiple_of(&t.c) {
        return false;
    }
    la_yb / &t.c == *delta && hb_wa / &t.c == *theta
}

/// The diagrams of `t`: one in the generic case, two when `a = 1` or `c` is a
/// combination of `a` and `b`. With two, the one with weights `(1, 0)` comes first.
pub fn compute_lshapes(t: &Semigroup3) -> Result<Vec<LShape>> {
    let shapes = match t.tag {
        CaseTag::Degenerate11C | CaseTag::Degenerate111 => {
            return Err(Error::Domain(format!("{t} has repeated unit generators; no L-shape is defined")))
        }
        CaseTag::AEquals1 => {
            let (b, c) = (&t.b, &t.c);
            let (k, r) = c.div_mod_floor(b);
            let h1 = LShape::from_sides(c.clone(), Integer::one(), b.clone(), Integer::zero(), t);
            let h2 = LShape::from_sides(b.clone(), k + 1u32, b - r, Integer::one(), t);
            vec![h1, h2]
        }
        CaseTag::CInAB => {
            let (a, b) = (&t.a, &t.b);
            let (lambda, mu) = membership_two(&t.c, a, b).expect("c lies in <a, b>");
            let h1 = LShape::from_sides(&lambda + b, a.clone(), b.clone(), a - &mu, t);
            let (k, r) = lambda.div_mod_floor(b);
            let h2 = LShape::from_sides(b.clone(), (k + 1u32) * a + &mu, b - r, a.clone(), t);
            vec![h1, h2]
        }
        CaseTag::CNotInAB => return lshapes_by_continued_fraction(t),
    };
    let shapes: Option<Vec<LShape>> = shapes.into_iter().collect();
    let shapes = shapes.ok_or_else(|| Error::Internal(format!("explicit L-shape of {t} has fractional weights")))?;
    check_all(shapes, t)
}

fn check_all(shapes: Vec<LShape>, t: &Semigroup3) -> Result<Vec<LShape>> {
    match shapes.iter().find(|s| !validate_lshape(s, t)) {
        Some(bad) => Err(Error::Internal(format!("constructed {bad} is not a diagram of {t}"))),
        None => Ok(shapes),
    }
}

/// Diagrams read off the negative continued fraction of `c / s0`, `s0 = b a^-1 mod c`.
///
/// The remainders `s_k` decrease and the convergent denominators `p_k`
/// increase, with `s_k a = p_k b (mod c)` and `s_k p_{k+1} - s_{k+1} p_k = c`.
/// With `s_v / p_v > b / a >= s_{v+1} / p_{v+1}` the diagram is
/// `L(s_v, p_{v+1}, s_{v+1}, p_v)`; equality on the right yields a second one
/// one step further. Runs of partial quotient 2 are skipped in one jump, so the
/// loop takes `O(log c)` iterations.
pub fn lshapes_by_continued_fraction(t: &Semigroup3) -> Result<Vec<LShape>> {
    if t.is_degenerate() {
        return Err(Error::Domain(format!("{t} has repeated unit generators; no L-shape is defined")));
    }
    let (a, b, c) = (&t.a, &t.b, &t.c);
    let s0 = if a.is_one() { b.clone() } else { (b * mod_inverse(a, c)?).mod_floor(c) };
    let excess = |s: &Integer, p: &Integer| s * a - p * b;

    let mut prev = (c.clone(), Integer::zero());
    let mut cur = (s0, Integer::one());
    let (upper, lower) = loop {
        let e_cur = excess(&cur.0, &cur.1);
        if !e_cur.is_positive() {
            break (prev, cur);
        }
        let two_cur = &cur.0 << 1usize;
        if prev.0 <= two_cur {
            // Arithmetic run: each step subtracts ds from s and adds dp to p.
            let ds = &prev.0 - &cur.0;
            let dp = &cur.1 - &prev.1;
            let run = &cur.0 / &ds;
            let drop = excess(&prev.0, &prev.1) - &e_cur;
            let hit = ceil_div(&e_cur, &drop);
            let at = |i: &Integer| (&cur.0 - i * &ds, &cur.1 + i * &dp);
            if hit <= run {
                let before = at(&(&hit - 1u32));
                let after = at(&hit);
                break (before, after);
            }
            let before = at(&(&run - 1u32));
            let after = at(&run);
            prev = before;
            cur = after;
        } else {
            let q = ceil_div(&prev.0, &cur.0);
            let next = (&q * &cur.0 - &prev.0, &q * &cur.1 - &prev.1);
            prev = std::mem::replace(&mut cur, next);
        }
    };
    let tie = excess(&lower.0, &lower.1).is_zero();
    let mut out = Vec::with_capacity(2);
    let shape = |v: &(Integer, Integer), w: &(Integer, Integer)| {
        LShape::from_sides(v.0.clone(), w.1.clone(), w.0.clone(), v.1.clone(), t)
            .ok_or_else(|| Error::Internal(format!("continued fraction of {t} gave fractional weights")))
    };
    out.push(shape(&upper, &lower)?);
    if tie {
        let q = ceil_div(&upper.0, &lower.0);
        let next = (&q * &lower.0 - &upper.0, &q * &lower.1 - &upper.1);
        out.push(shape(&lower, &next)?);
    }
    check_all(out, t)
}

/// Class minima `M_n = min{ia + jb : ia + jb = n (mod c)}` for `n` in `[0, c)`.
pub fn class_minima(t: &Semigroup3) -> Result<Vec<u64>> {
    let (a, b, c) = small_gens(t)?;
    let mut m = vec![0u64; c as usize];
    for i in 0..c {
        m[((i * a) % c) as usize] = i * a;
    }
    // Relax along the single +b cycle starting from its minimum.
    let start = (0..c as usize).min_by_key(|&r| m[r]).unwrap_or(0);
    let mut r = start;
    for _ in 0..c {
        let next = (r + b as usize) % c as usize;
        m[next] = m[next].min(m[r] + b);
        r = next;
    }
    Ok(m)
}

fn small_gens(t: &Semigroup3) -> Result<(u64, u64, u64)> {
    if t.c > Integer::from(10_000u32) {
        return Err(Error::Resource(format!("brute-force diagram of {t} (c above 10^4)")));
    }
    if t.is_degenerate() {
        return Err(Error::Domain(format!("{t} has repeated unit generators; no L-shape is defined")));
    }
    Ok((t.a.to_u64().unwrap(), t.b.to_u64().unwrap(), t.c.to_u64().unwrap()))
}

/// Diagrams rebuilt from the class minima: for each class, the minimal
/// representative with the largest `i` and, separately, with the largest `j`.
/// Each choice is down-closed; each is read back as `L(l, h, w, y)`.
pub fn mdd_bruteforce(t: &Semigroup3) -> Result<BTreeSet<LShape>> {
    let (a, b, c) = small_gens(t)?;
    let minima = class_minima(t)?;
    let b_inv_a = if a == 1 { 0 } else { mod_inverse(&b.into(), &a.into())?.to_u64().unwrap() };
    let mut low_j = vec![0u64; c as usize];
    let mut high_j = vec![0u64; c as usize];
    let mut low_cols = vec![0u64; c as usize];
    let mut high_cols = vec![0u64; c as usize];
    for (n, &mn) in minima.iter().enumerate() {
        let j_min = if a == 1 { 0 } else { (mn % a) * b_inv_a % a };
        let j_max = j_min + a * ((mn - j_min * b) / (a * b));
        low_j[n] = j_min;
        high_j[n] = j_max;
        for (j, cols) in [(j_min, &mut low_cols), (j_max, &mut high_cols)] {
            let i = ((mn - j * b) / a) as usize;
            cols[i] = cols[i].max(j + 1);
        }
    }
    let mut out = BTreeSet::new();
    for cols in [&low_cols, &high_cols] {
        out.insert(shape_from_columns(cols, t)?);
    }
    Ok(out)
}

/// Reads `L(l, h, w, y)` from column heights of a down-closed set of `c` squares.
fn shape_from_columns(cols: &[u64], t: &Semigroup3) -> Result<LShape> {
    let bad = || Error::Internal(format!("class minima of {t} do not form an L-shape"));
    let l = cols.iter().take_while(|&&v| v > 0).count() as u64;
    if l == 0 || cols[l as usize..].iter().any(|&v| v > 0) {
        return Err(bad());
    }
    let h = cols[0];
    let low = cols[l as usize - 1];
    let split = cols.iter().take_while(|&&v| v == h).count() as u64;
    if cols[split as usize..l as usize].iter().any(|&v| v != low) {
        return Err(bad());
    }
    let (w, y) = (l - split, h - low);
    let c = t.c.to_u64().unwrap();
    let (a, b) = (t.a.to_u64().unwrap(), t.b.to_u64().unwrap());
    let (w, y) = if w > 0 && y > 0 {
        (w, y)
    } else if (l * a).is_multiple_of(c) {
        // Rectangle with a horizontal period: recover the shear of the second vector.
        ((h * b * mod_inverse(&a.into(), &c.into()).map(|v| v.to_u64().unwrap()).unwrap_or(0)) % c, 0)
    } else if (h * b).is_multiple_of(c) {
        (0, (l * a * mod_inverse(&b.into(), &c.into()).map(|v| v.to_u64().unwrap()).unwrap_or(0)) % c)
    } else {
        return Err(bad());
    };
    let shape = LShape::from_u64(l, h, w, y, t).ok_or_else(bad)?;
    if !validate_lshape(&shape, t) {
        return Err(bad());
    }
    Ok(shape)
}

/// The factorization `(x0, y0, z0)` of `m` whose square `(x0, y0)` lies in the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicFactorization {
    pub x0: Integer,
    pub y0: Integer,
    pub z0: Integer,
}

/// A diagram with the modular data needed to place residues in it.
#[derive(Clone, Debug)]
pub struct PlacedLShape {
    pub shape: LShape,
    a_inv: Integer,
    /// Step of the column index per row: `-(b a^-1) mod c`.
    step: Integer,
}

impl PlacedLShape {
    pub fn new(shape: LShape, t: &Semigroup3) -> Result<Self> {
        let a_inv = if t.a.is_one() { Integer::one() } else { mod_inverse(&t.a, &t.c)? };
        let step = (-(&t.b * &a_inv)).mod_floor(&t.c);
        Ok(Self { shape, a_inv, step })
    }

    /// The square of the diagram in the class of `r` modulo `c`.
    pub fn square_of(&self, r: &Integer, t: &Semigroup3) -> (Integer, Integer) {
        let c = &t.c;
        let LShape { l, h, w, y, .. } = &self.shape;
        // Row j of the class holds column (i0 + j * step) mod c.
        let i0 = (r * &self.a_inv).mod_floor(c);
        let split = h - y;
        let j = match first_hit(&i0, &self.step, c, l) {
            Some(j) if j < split => j,
            _ => {
                let start = (&i0 + &split * &self.step).mod_floor(c);
                let j = first_hit(&start, &self.step, c, &(l - w)).expect("every class meets the diagram");
                split + j
            }
        };
        let i = (&i0 + &j * &self.step).mod_floor(c);
        debug_assert!(self.shape.contains(&i, &j));
        (i, j)
    }

    /// See [`basic_factorization`].
    pub fn basic_factorization(&self, m: &Integer, t: &Semigroup3) -> Option<BasicFactorization> {
        let (x0, y0) = self.square_of(&m.mod_floor(&t.c), t);
        let rest = m - &x0 * &t.a - &y0 * &t.b;
        if rest.is_negative() {
            return None;
        }
        Some(BasicFactorization { x0, y0, z0: rest / &t.c })
    }
}

/// Basic factorization of `m`, or `None` when `m` is not in the semigroup.
pub fn basic_factorization(m: &Integer, shape: &LShape, t: &Semigroup3) -> Option<BasicFactorization> {
    PlacedLShape::new(shape.clone(), t).ok()?.basic_factorization(m, t)
}

/// Smallest `j >= 0` with `(start + j * step) mod modulus < bound`.
///
/// Inputs satisfy `0 <= start, step < modulus` and `0 < bound <= modulus`.
pub fn first_hit(start: &Integer, step: &Integer, modulus: &Integer, bound: &Integer) -> Option<Integer> {
    if start < bound {
        return Some(Integer::zero());
    }
    // Need (j * step) mod modulus in [modulus - start, modulus - start + bound - 1].
    let lo = modulus - start;
    let hi = &lo + bound - 1u32;
    first_in_window(step.clone(), modulus.clone(), lo, hi)
}

/// Smallest `x >= 0` with `lo <= (a x) mod m <= hi`, for `0 <= lo <= hi < m`, `0 <= a < m`.
fn first_in_window(mut a: Integer, mut m: Integer, mut lo: Integer, mut hi: Integer) -> Option<Integer> {
    // Each level swaps to (m mod a, a); unwinding maps y back to x = ceil((m y + lo) / a).
    let mut frames: Vec<(Integer, Integer, Integer)> = Vec::new();
    let mut x = loop {
        if lo.is_zero() {
            break Integer::zero();
        }
        if a.is_zero() {
            return None;
        }
        let k = ceil_div(&lo, &a);
        if &a * &k <= hi {
            break k;
        }
        let next_lo = (&a - &hi % &a) % &a;
        let next_hi = (&a - &lo % &a) % &a;
        let next_a = &m % &a;
        frames.push((m, a.clone(), lo));
        m = std::mem::replace(&mut a, next_a);
        lo = next_lo;
        hi = next_hi;
    };
    while let Some((m, a, lo)) = frames.pop() {
        x = ceil_div(&(m * x + lo), &a);
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn sg(a: u64, b: u64, c: u64) -> Semigroup3 {
        Semigroup3::from_u64(a, b, c).unwrap()
    }

    fn shape(l: u64, h: u64, w: u64, y: u64, t: &Semigroup3) -> LShape {
        LShape::from_u64(l, h, w, y, t).unwrap()
    }

    #[test]
    fn validate_examples() {
        let t = sg(5, 7, 11);
        assert!(validate_lshape(&shape(5, 3, 2, 2, &t), &t));
        let t2 = sg(7, 11, 18);
        assert!(validate_lshape(&shape(12, 7, 11, 6, &t2), &t2));
        let bogus = LShape { l: int(4), h: int(3), w: int(2), y: int(2), delta: int(0), theta: int(0) };
        assert!(!validate_lshape(&bogus, &t));
    }

    #[test]
    fn compute_examples() {
        let t = sg(5, 7, 11);
        let got = compute_lshapes(&t).unwrap();
        assert_eq!(got, vec![shape(5, 3, 2, 2, &t)]);
        assert_eq!((got[0].delta.clone(), got[0].theta.clone()), (int(1), int(1)));
        let t = sg(7, 11, 18);
        assert_eq!(compute_lshapes(&t).unwrap(), vec![shape(12, 7, 11, 6, &t), shape(11, 8, 10, 7, &t)]);
        let t = sg(1, 2, 3);
        assert_eq!(compute_lshapes(&t).unwrap(), vec![shape(3, 1, 2, 0, &t), shape(2, 2, 1, 1, &t)]);
        assert!(compute_lshapes(&sg(1, 1, 4)).is_err());
    }

    #[test]
    fn bruteforce_examples() {
        for t in [sg(5, 7, 11), sg(1, 2, 3), sg(7, 11, 18)] {
            let want: BTreeSet<LShape> = compute_lshapes(&t).unwrap().into_iter().collect();
            assert_eq!(mdd_bruteforce(&t).unwrap(), want);
        }
    }

    #[test]
    fn basic_factorization_examples() {
        let t = sg(5, 7, 11);
        let l = shape(5, 3, 2, 2, &t);
        let bf = basic_factorization(&int(87), &l, &t).unwrap();
        assert_eq!((bf.x0, bf.y0, bf.z0), (int(2), int(0), int(7)));
        let bf = basic_factorization(&int(0), &l, &t).unwrap();
        assert_eq!((bf.x0, bf.y0, bf.z0), (int(0), int(0), int(0)));
        assert!(basic_factorization(&int(4), &l, &t).is_none());
    }

    #[test]
    fn first_hit_matches_scan() {
        for m in 1..=40i64 {
            for step in 0..m {
                for start in 0..m {
                    for bound in 1..=m {
                        let want = (0..m).find(|j| (start + j * step) % m < bound).map(int);
                        assert_eq!(first_hit(&int(start), &int(step), &int(m), &int(bound)), want);
                    }
                }
            }
        }
    }
}
