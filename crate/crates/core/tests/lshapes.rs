use std::collections::BTreeSet;

use denum_core::arith::{gcd, int};
use denum_core::lshape::*;
use denum_core::semigroup::{membership_two, CaseTag, Semigroup3};
use denum_core::Integer;
use num_traits::{One, Signed, Zero};

fn pcn_triples(max_c: u64) -> impl Iterator<Item = Semigroup3> {
    (3..=max_c).flat_map(move |c| {
        (2..c).flat_map(move |b| {
            (1..b).filter_map(move |a| {
                let g = |x: u64, y: u64| gcd(&int(x as i64), &int(y as i64)).is_one();
                (g(a, b) && g(a, c) && g(b, c)).then(|| Semigroup3::from_u64(a, b, c).unwrap())
            })
        })
    })
}

fn in_two(v: &Integer, p: &Integer, q: &Integer) -> bool {
    if p.is_one() {
        return !v.is_negative();
    }
    membership_two(v, p, q).is_some()
}

#[test]
fn diagrams_match_bruteforce_up_to_120() {
    for t in pcn_triples(120) {
        let fast = compute_lshapes(&t).unwrap();
        let set: BTreeSet<LShape> = fast.iter().cloned().collect();
        assert_eq!(set, mdd_bruteforce(&t).unwrap(), "{t}");
        for s in &fast {
            assert!(validate_lshape(s, &t));
        }
        let cf: BTreeSet<LShape> = lshapes_by_continued_fraction(&t).unwrap().into_iter().collect();
        assert_eq!(cf, set, "continued fraction vs explicit for {t}");
        match t.tag {
            CaseTag::CNotInAB => {
                assert_eq!(fast.len(), 1);
                let s = &fast[0];
                assert!(s.w.is_positive() && s.y.is_positive() && s.delta.is_positive() && s.theta.is_positive());
                assert!(s.h < t.a && s.l < t.b, "{t}: {s}");
                // Smallest positive multiple of c in <a, b>.
                let mc = (&s.l - &s.w) * &t.a + (&s.h - &s.y) * &t.b;
                assert_eq!(mc, (&s.delta + &s.theta) * &t.c);
                let k = (1..).find(|k| in_two(&(&t.c * *k as u32), &t.a, &t.b)).unwrap();
                assert_eq!(mc, &t.c * k as u32);
                // Smallest positive multiples of a in <b, c> and of b in <a, c>.
                let ka = (1..).find(|k| in_two(&(&t.a * *k as u32), &t.b, &t.c)).unwrap();
                assert_eq!(s.l, int(ka));
                let kb = (1..).find(|k| in_two(&(&t.b * *k as u32), &t.a, &t.c)).unwrap();
                assert_eq!(s.h, int(kb));
            }
            _ => {
                assert_eq!(fast.len(), 2);
                assert_eq!((fast[0].delta.clone(), fast[0].theta.clone()), (int(1), int(0)));
                assert_eq!((fast[1].delta.clone(), fast[1].theta.clone()), (int(0), int(1)));
            }
        }
    }
}

#[test]
fn basic_squares_are_class_minima() {
    for t in pcn_triples(60) {
        let minima = class_minima(&t).unwrap();
        for shape in compute_lshapes(&t).unwrap() {
            let placed = PlacedLShape::new(shape.clone(), &t).unwrap();
            for (r, mn) in minima.iter().enumerate() {
                let (i, j) = placed.square_of(&int(r as i64), &t);
                assert!(shape.contains(&i, &j));
                assert_eq!(&i * &t.a + &j * &t.b, int(*mn as i64), "{t} {shape} class {r}");
                let bf = placed.basic_factorization(&int(*mn as i64), &t).unwrap();
                assert!(bf.z0.is_zero());
                if int(*mn as i64) >= t.c {
                    let below = int(*mn as i64) - &t.c;
                    assert!(placed.basic_factorization(&below, &t).is_none());
                }
            }
        }
    }
}

#[test]
fn unique_square_per_class() {
    for t in pcn_triples(30) {
        let c: i64 = (&t.c).try_into().unwrap();
        for shape in compute_lshapes(&t).unwrap() {
            let mut seen = vec![0u32; c as usize];
            let (l, h): (i64, i64) = ((&shape.l).try_into().unwrap(), (&shape.h).try_into().unwrap());
            for i in 0..l {
                for j in 0..h {
                    if shape.contains(&int(i), &int(j)) {
                        let r = (int(i) * &t.a + int(j) * &t.b) % &t.c;
                        seen[usize::try_from(r).unwrap()] += 1;
                    }
                }
            }
            assert!(seen.iter().all(|&n| n == 1), "{t} {shape}");
        }
    }
}

#[test]
fn large_families_have_known_diagrams() {
    for k in [1u32, 2, 5, 20, 200] {
        let a = Integer::from(7u32).pow(k);
        let b = Integer::from(11u32).pow(k);
        let f = &a * &b - &a - &b;
        let t = Semigroup3::new(a.clone(), b.clone(), f).unwrap();
        let s = compute_lshapes(&t).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].l.clone(), s[0].h.clone()), (&b - 1u32, &a - 1u32));
        assert_eq!((s[0].w.clone(), s[0].y.clone()), (int(1), int(1)));
        assert_eq!((s[0].delta.clone(), s[0].theta.clone()), (int(1), int(1)));

        let t = Semigroup3::new(a.clone(), b.clone(), &a + &b).unwrap();
        let s = compute_lshapes(&t).unwrap();
        let h2 = LShape::from_sides(b.clone(), &a + 1u32, &b - 1u32, a.clone(), &t).unwrap();
        assert_eq!(s[1], h2);
        let cf = lshapes_by_continued_fraction(&t).unwrap();
        assert_eq!(cf, s);
    }
}
