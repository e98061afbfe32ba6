//! Splitting the new plus space of level `N^2` over `Q` into Hecke orbits
//! and reading off each orbit's eigensystem in its Hecke field.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::arith::field::{parse_rational, rational_to_string};
use crate::arith::{factor_over_q, is_prime, primes_up_to, Field, IntPoly, OrderElement, Rationals};
use crate::cache::{images_via, Cache};
use crate::error::{Error, Result};
use crate::gamma0::sturm_bound;
use crate::linalg::{Matrix, Subspace};
use crate::modsym::{HeckeOp, ManinSymbolSpace, Sign};

/// Hecke eigenvalues `l -> a_l` of one Galois orbit of newforms, written in
/// `Q[t]/(m(t))` where `t = a_g` for the generator prime `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigensystem {
    pub level: u64,
    pub minpoly: IntPoly,
    pub a: BTreeMap<u64, OrderElement>,
    /// The prime `g` with `a_g = t`.
    pub generator: u64,
    /// Eigenvalues are stored for all primes up to this bound.
    pub bound: u64,
}

impl Eigensystem {
    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap_or(0)
    }

    /// `"a2=t"` for the usual pinning.
    pub fn convention(&self) -> String {
        format!("a{}=t", self.generator)
    }

    pub fn get(&self, l: u64) -> Option<&OrderElement> {
        self.a.get(&l)
    }

    /// Whether every stored `a_l` has integer coordinates.
    pub fn is_integral(&self) -> bool {
        self.a.values().all(|x| x.is_integral())
    }

    /// The system seen through another root `r` of the minimal polynomial
    /// (`t -> r`).
    pub fn conjugate(&self, root: &OrderElement) -> Result<Eigensystem> {
        let m = &self.minpoly;
        let value = m.coeffs().iter().rev().fold(OrderElement::from_int(m, 0), |acc, c| {
            acc.mul(root)
                .add(&OrderElement::new(m, vec![BigRational::from_integer(c.clone())]))
        });
        if !value.is_zero() {
            return Err(Error::InvalidArgument("not a root of the minimal polynomial".into()));
        }
        Ok(Eigensystem {
            a: self.a.iter().map(|(l, x)| (*l, x.substitute(root))).collect(),
            ..self.clone()
        })
    }

    pub fn to_json(&self) -> Value {
        let coeffs = |x: &OrderElement| -> Value {
            Value::Array(x.coeffs().iter().map(|c| Value::String(rational_to_string(c))).collect())
        };
        let mut a = Map::new();
        for (l, x) in &self.a {
            a.insert(l.to_string(), coeffs(x));
        }
        serde_json::json!({
            "level": self.level,
            "minpoly": self.minpoly.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "a": a,
            "convention": self.convention(),
            "bound": self.bound,
        })
    }

    pub fn from_json(v: &Value) -> Result<Eigensystem> {
        let bad = |what: &str| Error::InvalidArgument(format!("malformed eigensystem: {what}"));
        let level = v["level"].as_u64().ok_or_else(|| bad("level"))?;
        let bound = v["bound"].as_u64().ok_or_else(|| bad("bound"))?;
        let minpoly = v["minpoly"]
            .as_array()
            .ok_or_else(|| bad("minpoly"))?
            .iter()
            .map(|c| c.as_str().and_then(|s| s.parse::<BigInt>().ok()))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| bad("minpoly"))?;
        let minpoly = IntPoly::new(minpoly);
        if !minpoly.is_monic() || minpoly.degree().unwrap_or(0) == 0 {
            return Err(bad("minpoly must be monic of positive degree"));
        }
        let generator = v["convention"]
            .as_str()
            .and_then(|s| s.strip_prefix('a')?.strip_suffix("=t")?.parse().ok())
            .ok_or_else(|| bad("convention"))?;
        let mut a = BTreeMap::new();
        for (key, val) in v["a"].as_object().ok_or_else(|| bad("a"))? {
            let l: u64 = key.parse().map_err(|_| bad("prime key"))?;
            let c = val
                .as_array()
                .ok_or_else(|| bad("coefficients"))?
                .iter()
                .map(|c| c.as_str().and_then(parse_rational))
                .collect::<Option<Vec<_>>>()
                .ok_or_else(|| bad("coefficients"))?;
            a.insert(l, OrderElement::new(&minpoly, c));
        }
        Ok(Eigensystem {
            level,
            minpoly,
            a,
            generator,
            bound,
        })
    }
}

/// A Hecke-irreducible piece of the new plus space.
#[derive(Debug, Clone)]
pub struct NewformOrbit {
    pub subspace: Subspace<Rationals>,
    pub system: Eigensystem,
    /// First basis vector of the piece, in ambient coordinates.
    cyclic: Vec<BigRational>,
    /// Rows `e_0 G^i`, `G` the generator's matrix on the piece.
    powers: Matrix<Rationals>,
}

impl NewformOrbit {
    /// Eigenvalue of any Hecke operator `T_n` / `U_n`, read from its action
    /// on the cyclic vector.
    pub fn eigenvalue(&self, space: &ManinSymbolSpace<Rationals>, op: HeckeOp) -> Result<OrderElement> {
        let img = space.hecke_images(op, std::slice::from_ref(&self.cyclic))?.remove(0);
        self.read_eigenvalue(&img, op)
    }

    fn read_eigenvalue(&self, img: &[BigRational], op: HeckeOp) -> Result<OrderElement> {
        let y = self
            .subspace
            .coordinates(img)
            .ok_or_else(|| Error::NotStable(op.label()))?;
        let c = self
            .powers
            .solve_left(&y)
            .ok_or_else(|| Error::Contradiction(format!("{} is not a polynomial in the generator", op.label())))?;
        Ok(OrderElement::new(&self.system.minpoly, c))
    }
}

/// The new plus space of level `N^2` over `Q` and its Hecke orbits.
pub struct NewDecomposition {
    pub n: u64,
    pub space: ManinSymbolSpace<Rationals>,
    pub new: Subspace<Rationals>,
    pub orbits: Vec<NewformOrbit>,
}

impl NewDecomposition {
    pub fn eigensystems(&self) -> Vec<&Eigensystem> {
        self.orbits.iter().map(|o| &o.system).collect()
    }
}

fn charpoly_z(m: &Matrix<Rationals>) -> Result<IntPoly> {
    let c = m.charpoly();
    let ints = c
        .iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Contradiction("Hecke characteristic polynomial is not integral".into()))?;
    Ok(IntPoly::new(ints))
}

fn irreducible_factors(f: &IntPoly) -> Vec<(IntPoly, usize)> {
    factor_over_q(f)
        .into_iter()
        .filter(|(g, _)| g.degree().unwrap_or(0) > 0)
        .collect()
}

fn to_rationals(f: &IntPoly) -> Vec<BigRational> {
    f.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

/// Decompose the new plus space of level `N^2`, splitting with `T_2, T_3,
/// T_5, ...` and storing eigenvalues for all primes up to
/// `max(bound, sturm(N^2))`. Orbits of degree above `cap` are an error.
pub fn decompose_new(n: u64, bound: u64, cap: usize) -> Result<NewDecomposition> {
    let order: Vec<u64> = primes_up_to(sturm_bound(n * n)).into_iter().filter(|&l| l != n).collect();
    decompose_new_with_order(n, bound, cap, &order, None)
}

/// As [`decompose_new`], splitting with the operators `T_l` for `l` in
/// `order`, in that order.
pub fn decompose_new_with_order(
    n: u64,
    bound: u64,
    cap: usize,
    order: &[u64],
    cache: Option<&Cache>,
) -> Result<NewDecomposition> {
    if !is_prime(n) {
        return Err(Error::InvalidArgument(format!("N = {n} is not prime")));
    }
    let k = Rationals;
    let space = ManinSymbolSpace::new(n * n, Sign::Plus, &k)?;
    let new = space.new_subspace(n)?;

    let mut work = vec![(new.clone(), 0usize)];
    let mut pieces = Vec::new();
    while let Some((block, i)) = work.pop() {
        if block.dim() == 0 {
            continue;
        }
        let Some(&l) = order.get(i) else {
            return Err(Error::Contradiction(format!(
                "a block of dimension {} is not split by the given Hecke operators",
                block.dim()
            )));
        };
        let t = restricted(cache, &space, HeckeOp::T(l), &block)?;
        let factors = irreducible_factors(&charpoly_z(&t)?);
        if factors.len() == 1 && factors[0].1 == 1 {
            pieces.push(block);
            continue;
        }
        for (g, e) in factors {
            let ker = t.eval_poly(&to_rationals(&g)).left_kernel();
            let vecs = ker.basis_vectors().iter().map(|c| block.combine(c)).collect();
            let sub = Subspace::from_vectors(&k, space.dim(), vecs);
            if e == 1 {
                pieces.push(sub);
            } else {
                work.push((sub, i + 1));
            }
        }
    }

    let bound = bound.max(sturm_bound(n * n));
    let mut orbits = Vec::new();
    for piece in pieces {
        if piece.dim() > cap {
            return Err(Error::DegreeCap {
                degree: piece.dim(),
                cap,
            });
        }
        orbits.push(make_orbit(cache, &space, piece, n, bound)?);
    }
    fill_eigenvalues(cache, &space, &mut orbits, n, bound)?;
    orbits.sort_by_cached_key(|o| {
        let s = &o.system;
        (
            s.degree(),
            s.minpoly.coeffs().to_vec(),
            s.generator,
            s.a.values().map(|x| x.coeffs().to_vec()).collect::<Vec<_>>(),
        )
    });
    Ok(NewDecomposition {
        n,
        space,
        new,
        orbits,
    })
}

fn restricted(
    cache: Option<&Cache>,
    space: &ManinSymbolSpace<Rationals>,
    op: HeckeOp,
    block: &Subspace<Rationals>,
) -> Result<Matrix<Rationals>> {
    let images = images_via(cache, space, op, &block.basis_vectors())?;
    block
        .restrict_images(&Matrix::from_rows(&Rationals, space.dim(), images))
        .map_err(|_| Error::NotStable(op.label()))
}

fn make_orbit(
    cache: Option<&Cache>,
    space: &ManinSymbolSpace<Rationals>,
    piece: Subspace<Rationals>,
    n: u64,
    bound: u64,
) -> Result<NewformOrbit> {
    let k = Rationals;
    let d = piece.dim();
    for g in primes_up_to(sturm_bound(n * n)).into_iter().filter(|&l| l != n) {
        let t = restricted(cache, space, HeckeOp::T(g), &piece)?;
        let f = charpoly_z(&t)?;
        let fac = irreducible_factors(&f);
        if fac.len() != 1 || fac[0].1 != 1 {
            continue;
        }
        let mut e0 = vec![k.zero(); d];
        e0[0] = k.one();
        let mut rows = vec![e0];
        for _ in 1..d {
            let next = t.vec_mul(rows.last().unwrap());
            rows.push(next);
        }
        let powers = Matrix::from_rows(&k, d, rows);
        let cyclic = piece.basis().row(0).to_vec();
        return Ok(NewformOrbit {
            subspace: piece,
            system: Eigensystem {
                level: n * n,
                minpoly: f,
                a: BTreeMap::new(),
                generator: g,
                bound,
            },
            cyclic,
            powers,
        });
    }
    Err(Error::Contradiction(format!(
        "no single T_l generates the Hecke field of an orbit of degree {d}"
    )))
}

fn fill_eigenvalues(
    cache: Option<&Cache>,
    space: &ManinSymbolSpace<Rationals>,
    orbits: &mut [NewformOrbit],
    n: u64,
    bound: u64,
) -> Result<()> {
    let cyclics: Vec<Vec<BigRational>> = orbits.iter().map(|o| o.cyclic.clone()).collect();
    let ops: Vec<HeckeOp> = primes_up_to(bound)
        .into_iter()
        .map(|l| HeckeOp::for_level(l, n * n))
        .collect();
    let images: Vec<Vec<Vec<BigRational>>> = ops
        .par_iter()
        .map(|&op| images_via(cache, space, op, &cyclics))
        .collect::<Result<_>>()?;
    for (op, imgs) in ops.iter().zip(images) {
        for (orbit, img) in orbits.iter_mut().zip(imgs) {
            let a = orbit.read_eigenvalue(&img, *op)?;
            orbit.system.a.insert(op.index(), a);
        }
    }
    for o in orbits.iter() {
        if o.system.a[&o.system.generator] != OrderElement::gen(&o.system.minpoly) {
            return Err(Error::Contradiction("generator eigenvalue is not t".into()));
        }
    }
    Ok(())
}
