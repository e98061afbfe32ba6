//! Hecke orbits of the new plus space at level 361.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use eiscong::arith::{non_maximal_primes, Field, IntPoly, OrderElement, PrimeIdeal, Rationals, Valuation};
use eiscong::congruence::{
    congruence_depth, decompose_new, decompose_new_with_order, find_congruent_newform, Eigensystem, NewDecomposition,
};
use eiscong::modsym::HeckeOp;

fn level_361() -> &'static NewDecomposition {
    static D: OnceLock<NewDecomposition> = OnceLock::new();
    D.get_or_init(|| decompose_new(19, 64, 8).unwrap())
}

fn congruent() -> (&'static Eigensystem, PrimeIdeal) {
    let d = level_361();
    let (i, ideal) = find_congruent_newform(d, 5).unwrap();
    (&d.orbits[i].system, ideal)
}

/// `f(x)` for a polynomial with coefficients in the base field.
fn eval_at(f: &[BigRational], x: &OrderElement) -> OrderElement {
    let m = x.minpoly();
    f.iter()
        .rev()
        .fold(OrderElement::from_int(m, 0), |acc, c| acc.mul(x).add(&OrderElement::new(m, vec![c.clone()])))
}

#[test]
fn degrees_and_fields() {
    let d = level_361();
    let degrees: usize = d.orbits.iter().map(|o| o.system.degree()).sum();
    assert_eq!(degrees, 20);
    assert_eq!(d.new.dim(), 20);
    let mut polys: Vec<String> = d.orbits.iter().map(|o| o.system.minpoly.render("t")).collect();
    polys.sort();
    for f in ["t", "t^2 - 5", "t^2 - t - 1", "t^2 + t - 1", "t^4 - 5*t^2 + 5"] {
        assert!(polys.iter().any(|g| g == f), "missing Hecke field {f} in {polys:?}");
    }
    for o in &d.orbits {
        // coordinates in Z[t] may have denominators only where Z[t] is not maximal
        let bad = non_maximal_primes(&o.system.minpoly);
        for x in o.system.a.values() {
            for c in x.coeffs() {
                let mut den = c.denom().clone();
                for &q in &bad {
                    while (&den % q) == BigInt::from(0) {
                        den /= q;
                    }
                }
                assert_eq!(den, BigInt::from(1), "{} over {}", x.render("t"), o.system.minpoly.render("t"));
            }
        }
        assert!(o.system.a[&19].is_zero(), "a_19 = 0 on the new space of level 19^2");
    }
}

#[test]
fn charpolys_match_eigenvalues() {
    let d = level_361();
    let k = Rationals;
    for o in &d.orbits {
        for l in [2u64, 3, 5, 7, 11, 13] {
            let t = d.space.hecke_matrix(HeckeOp::T(l)).unwrap();
            let f = o.subspace.restrict(&t).unwrap().charpoly();
            assert_eq!(f.len(), o.system.degree() + 1);
            assert!(k.is_one(f.last().unwrap()));
            assert!(f.iter().all(|c| c.is_integer()), "a_{l} is an algebraic integer");
            assert!(eval_at(&f, &o.system.a[&l]).is_zero(), "charpoly of T_{l} kills a_{l}");
        }
    }
}

#[test]
fn hecke_multiplicativity() {
    let d = level_361();
    let (i, _) = find_congruent_newform(d, 5).unwrap();
    let orbit = &d.orbits[i];
    let a = |l: u64| orbit.system.a[&l].clone();
    let primes = [2u64, 3, 5, 7];
    for (j, &l) in primes.iter().enumerate() {
        for &q in &primes[..j] {
            let composite = orbit.eigenvalue(&d.space, HeckeOp::T(l * q)).unwrap();
            assert_eq!(composite, a(l).mul(&a(q)), "a_{}", l * q);
        }
    }
    let a4 = orbit.eigenvalue(&d.space, HeckeOp::T(4)).unwrap();
    assert_eq!(a4, a(2).mul(&a(2)).add_int(-2));
    let a9 = orbit.eigenvalue(&d.space, HeckeOp::T(9)).unwrap();
    assert_eq!(a9, a(3).mul(&a(3)).add_int(-3));
}

#[test]
fn congruent_orbit_and_certificate() {
    let (sys, ideal) = congruent();
    assert_eq!(sys.minpoly, IntPoly::from_i64(&[-1, -1, 1]));
    assert_eq!(sys.convention(), "a2=t");
    assert_eq!(ideal.render("t"), "(5, t + 2)");
    let cert = congruence_depth(sys, &ideal, 19).unwrap();
    assert_eq!((cert.s, cert.witness), (1, 2));
    assert_eq!(cert.bound, 64);
    for (&l, x) in &sys.a {
        let want = if l == 19 { 0 } else { l as i64 + 1 };
        let v = ideal.valuation(&x.add_int(-want)).unwrap();
        assert!(v.at_least(1), "a_{l} = {} is not Eisenstein mod (5, t + 2)", x.render("t"));
    }
    assert_eq!(ideal.valuation(&sys.a[&2].add_int(-3)).unwrap(), Valuation::Finite(1));
}

#[test]
fn galois_conjugate_is_the_other_embedding() {
    let (sys, ideal) = congruent();
    let m = &sys.minpoly;
    let other = sys.conjugate(&OrderElement::from_ints(m, &[1, -1])).unwrap();
    for (&l, x) in &sys.a {
        let y = &other.a[&l];
        // x + y = trace lies in Q
        assert!(x.add(y).coeffs()[1..].iter().all(|c| *c == BigRational::from_integer(BigInt::from(0))));
        assert_eq!(x.norm(), y.norm());
        assert!(ideal.valuation(&x.sub(y)).unwrap().at_least(1));
    }
    assert!(sys.conjugate(&OrderElement::from_ints(m, &[2, 0])).is_err());
}

#[test]
fn independent_of_splitting_order() {
    let d = level_361();
    let other = decompose_new_with_order(19, 64, 8, &[13, 11, 7, 5, 3, 2], None).unwrap();
    let a: Vec<_> = d.eigensystems().into_iter().map(|s| s.to_json()).collect();
    let b: Vec<_> = other.eigensystems().into_iter().map(|s| s.to_json()).collect();
    assert_eq!(a, b);
}

#[test]
fn eigensystem_json_round_trip() {
    for s in level_361().eigensystems() {
        let back = Eigensystem::from_json(&s.to_json()).unwrap();
        assert_eq!(back.to_json(), s.to_json());
        assert_eq!(back.minpoly, s.minpoly);
        assert_eq!(back.a, s.a);
    }
}
