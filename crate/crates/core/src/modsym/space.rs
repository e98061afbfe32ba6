//! Weight-2 modular symbols for `Gamma0(M)` in the Manin presentation.
//!
//! The Manin symbol `(c : d)` stands for `g{0, oo}` with `g = [[a, b], [c, d]]`
//! in `SL2(Z)`. Matrices act on the right, `(c, d) h = (c a' + d c', c b' + d d')`.
//! The relations are `x + x S = 0`, `x + x T + x T^2 = 0` and, for the plus
//! quotient, `x = x I` with `I = diag(-1, 1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::heilbronn::{merel, Heilbronn};
use super::p1::P1List;
use super::relations::{quotient, SparseVec};
use crate::arith::{gcd, xgcd, Field};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    /// The full space.
    Zero,
    /// The quotient by `x - x I`.
    Plus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum HeckeOp {
    /// `T_l` for `l` prime to the level.
    T(u64),
    /// `U_q` for `q` dividing the level.
    U(u64),
}

impl HeckeOp {
    pub fn index(&self) -> u64 {
        match *self {
            HeckeOp::T(n) | HeckeOp::U(n) => n,
        }
    }

    /// `T_n` or `U_n` as appropriate for the level.
    pub fn for_level(n: u64, level: u64) -> Self {
        if gcd(n, level) == 1 {
            HeckeOp::T(n)
        } else {
            HeckeOp::U(n)
        }
    }

    pub fn label(&self) -> String {
        match self {
            HeckeOp::T(n) => format!("T{n}"),
            HeckeOp::U(n) => format!("U{n}"),
        }
    }
}

/// A Hecke operator restricted to a stable subspace, in the subspace's
/// echelon basis.
#[derive(Debug, Clone)]
pub struct HeckeMatrix<F: Field> {
    pub op: HeckeOp,
    pub matrix: Matrix<F>,
    pub subspace: Subspace<F>,
}

#[derive(Debug, Clone)]
pub struct ManinSymbolSpace<F: Field> {
    level: u64,
    sign: Sign,
    field: F,
    p1: P1List,
    /// P1 index of the Manin symbol behind each basis vector.
    gens: Vec<usize>,
    /// Coordinates of every Manin symbol in the basis.
    coords: Vec<SparseVec<F::Elem>>,
}

/// Lift `(c : d)` in `P^1(Z/M)` to a matrix of `SL2(Z)`.
pub fn lift_to_sl2z(c: u64, d: u64, m: u64) -> [i64; 4] {
    if m == 1 {
        return [1, 0, 0, 1];
    }
    let c = if c == 0 { m as i64 } else { c as i64 };
    let mut d = d as i64;
    while gcd(c.unsigned_abs(), d.unsigned_abs()) != 1 {
        d += m as i64;
    }
    let (_, x, y) = xgcd(c as i128, d as i128);
    [y as i64, -x as i64, c, d]
}

impl<F: Field> ManinSymbolSpace<F> {
    pub fn new(level: u64, sign: Sign, field: &F) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidArgument("level must be positive".into()));
        }
        let p = field.characteristic();
        if p != 0 && (6 * level).is_multiple_of(p) {
            return Err(Error::BadCharacteristic { p, level });
        }
        let p1 = P1List::new(level);
        let n = p1.len();
        let idx = |u: i64, v: i64| p1.index(u, v).expect("unimodular image");
        let s_map: Vec<usize> = (0..n)
            .map(|i| {
                let (u, v) = p1.rep(i);
                idx(v as i64, -(u as i64))
            })
            .collect();
        let i_map: Vec<usize> = (0..n)
            .map(|i| {
                let (u, v) = p1.rep(i);
                idx(-(u as i64), v as i64)
            })
            .collect();
        let t_map: Vec<usize> = (0..n)
            .map(|i| {
                let (u, v) = p1.rep(i);
                idx(v as i64, -(u as i64) - v as i64)
            })
            .collect();

        // two-term relations: signed orbits, killed when inconsistent
        let mut orbit = vec![usize::MAX; n];
        let mut rel_sign = vec![0i8; n];
        let mut killed = Vec::new();
        for i in 0..n {
            if orbit[i] != usize::MAX {
                continue;
            }
            let oid = killed.len();
            let mut dead = false;
            orbit[i] = oid;
            rel_sign[i] = 1;
            let mut stack = vec![i];
            while let Some(j) = stack.pop() {
                let mut nbrs = vec![(s_map[j], -rel_sign[j])];
                if sign == Sign::Plus {
                    nbrs.push((i_map[j], rel_sign[j]));
                }
                for (t, s) in nbrs {
                    if orbit[t] == usize::MAX {
                        orbit[t] = oid;
                        rel_sign[t] = s;
                        stack.push(t);
                    } else if rel_sign[t] != s {
                        dead = true;
                    }
                }
            }
            killed.push(dead);
        }
        let mut var_of_orbit = vec![usize::MAX; killed.len()];
        let mut nvars = 0;
        for (o, &dead) in killed.iter().enumerate() {
            if !dead {
                var_of_orbit[o] = nvars;
                nvars += 1;
            }
        }
        let var = |i: usize| -> Option<(usize, i8)> {
            let v = var_of_orbit[orbit[i]];
            (v != usize::MAX).then_some((v, rel_sign[i]))
        };

        // three-term relations, one per T-orbit
        let mut seen = vec![false; n];
        let mut rels: Vec<Vec<(usize, F::Elem)>> = Vec::new();
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let j = t_map[i];
            let k = t_map[j];
            seen[i] = true;
            seen[j] = true;
            seen[k] = true;
            let mut terms: Vec<(usize, i64)> = Vec::new();
            for s in [i, j, k] {
                if let Some((v, sg)) = var(s) {
                    match terms.iter_mut().find(|(w, _)| *w == v) {
                        Some(t) => t.1 += sg as i64,
                        None => terms.push((v, sg as i64)),
                    }
                }
            }
            let row: Vec<(usize, F::Elem)> = terms
                .into_iter()
                .map(|(v, c)| (v, field.from_i64(c)))
                .filter(|(_, c)| !field.is_zero(c))
                .collect();
            if !row.is_empty() {
                rels.push(row);
            }
        }
        let q = quotient(field, nvars, &rels);

        let mut first_symbol_of_var = vec![usize::MAX; nvars];
        for i in 0..n {
            if let Some((v, 1)) = var(i) {
                if first_symbol_of_var[v] == usize::MAX {
                    first_symbol_of_var[v] = i;
                }
            }
        }
        let gens: Vec<usize> = q.free.iter().map(|&v| first_symbol_of_var[v]).collect();
        let coords: Vec<SparseVec<F::Elem>> = (0..n)
            .map(|i| match var(i) {
                None => Vec::new(),
                Some((v, s)) => q.expr[v]
                    .iter()
                    .map(|(b, x)| (*b, if s > 0 { x.clone() } else { field.neg(x) }))
                    .collect(),
            })
            .collect();
        Ok(ManinSymbolSpace {
            level,
            sign,
            field: field.clone(),
            p1,
            gens,
            coords,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.gens.len()
    }

    pub fn p1(&self) -> &P1List {
        &self.p1
    }

    /// The Manin symbol `(u : v)` behind basis vector `j`.
    pub fn generator(&self, j: usize) -> (u64, u64) {
        self.p1.rep(self.gens[j])
    }

    /// Sparse coordinates of the Manin symbol `(u : v)`.
    pub fn symbol_coords(&self, u: i64, v: i64) -> &[(u32, F::Elem)] {
        match self.p1.index(u, v) {
            Some(i) => &self.coords[i],
            None => &[],
        }
    }

    /// Dense coordinates of `(u : v)`.
    pub fn symbol_vector(&self, u: i64, v: i64) -> Vec<F::Elem> {
        let mut out = vec![self.field.zero(); self.dim()];
        self.add_symbol(&mut out, u, v, &self.field.one());
        out
    }

    /// `out += coef * (u : v)`.
    pub fn add_symbol(&self, out: &mut [F::Elem], u: i64, v: i64, coef: &F::Elem) {
        for (b, x) in self.symbol_coords(u, v) {
            self.field.add_mul_assign(&mut out[*b as usize], coef, x);
        }
    }

    fn check_op(&self, op: HeckeOp) -> Result<()> {
        match op {
            HeckeOp::T(n) if gcd(n, self.level) != 1 => Err(Error::InvalidArgument(format!(
                "T{n} needs an index prime to the level {}",
                self.level
            ))),
            HeckeOp::U(q) if !self.level.is_multiple_of(q) => Err(Error::InvalidArgument(format!(
                "U{q} needs an index dividing the level {}",
                self.level
            ))),
            HeckeOp::T(0) | HeckeOp::U(0) => Err(Error::InvalidArgument("zero index".into())),
            _ => Ok(()),
        }
    }

    /// Image of the sum `sum_j w_j gen_j` under the Heilbronn family, as a
    /// vector in the basis.
    fn apply_heilbronn(&self, hs: &[Heilbronn], w: &[F::Elem], scratch: &mut Vec<F::Elem>) -> Vec<F::Elem> {
        let k = &self.field;
        let n = self.p1.len();
        if scratch.len() != n {
            *scratch = vec![k.zero(); n];
        }
        let mut touched: Vec<usize> = Vec::new();
        for (j, wj) in w.iter().enumerate() {
            if k.is_zero(wj) {
                continue;
            }
            let (u, v) = self.generator(j);
            let (u, v) = (u as i64, v as i64);
            for &[a, b, c, d] in hs {
                if let Some(i) = self.p1.index(u * a + v * c, u * b + v * d) {
                    if k.is_zero(&scratch[i]) {
                        touched.push(i);
                    }
                    k.add_assign(&mut scratch[i], wj);
                }
            }
        }
        touched.sort_unstable();
        touched.dedup();
        let mut out = vec![k.zero(); self.dim()];
        for i in touched {
            let c = std::mem::replace(&mut scratch[i], k.zero());
            if k.is_zero(&c) {
                continue;
            }
            for (b, x) in &self.coords[i] {
                k.add_mul_assign(&mut out[*b as usize], &c, x);
            }
        }
        out
    }

    /// Images of the given vectors under `T_n` / `U_n`.
    pub fn hecke_images(&self, op: HeckeOp, vectors: &[Vec<F::Elem>]) -> Result<Vec<Vec<F::Elem>>> {
        self.check_op(op)?;
        let hs = merel(op.index());
        Ok(vectors
            .par_iter()
            .map_init(Vec::new, |scratch, w| self.apply_heilbronn(&hs, w, scratch))
            .collect())
    }

    /// Matrix of `T_n` / `U_n` on the whole space.
    pub fn hecke_matrix(&self, op: HeckeOp) -> Result<Matrix<F>> {
        self.check_op(op)?;
        let hs = merel(op.index());
        let k = &self.field;
        let rows: Vec<Vec<F::Elem>> = (0..self.dim())
            .into_par_iter()
            .map_init(Vec::new, |scratch, j| {
                let mut e = vec![k.zero(); self.dim()];
                e[j] = k.one();
                self.apply_heilbronn(&hs, &e, scratch)
            })
            .collect();
        Ok(Matrix::from_rows(k, self.dim(), rows))
    }

    /// The operator restricted to a stable subspace (the whole space when
    /// `subspace` is `None`).
    pub fn hecke(&self, op: HeckeOp, subspace: Option<&Subspace<F>>) -> Result<HeckeMatrix<F>> {
        let sub = match subspace {
            Some(s) => s.clone(),
            None => Subspace::whole(&self.field, self.dim()),
        };
        let images = self.hecke_images(op, &sub.basis_vectors())?;
        let images = Matrix::from_rows(&self.field, self.dim(), images);
        let matrix = sub
            .restrict_images(&images)
            .map_err(|_| Error::NotStable(op.label()))?;
        Ok(HeckeMatrix {
            op,
            matrix,
            subspace: sub,
        })
    }

    /// The involution `(c : d) -> (-c : d)`.
    pub fn star_matrix(&self) -> Matrix<F> {
        let rows = (0..self.dim())
            .map(|j| {
                let (u, v) = self.generator(j);
                self.symbol_vector(-(u as i64), v as i64)
            })
            .collect();
        Matrix::from_rows(&self.field, self.dim(), rows)
    }

    /// The `+1` eigenspace of the star involution.
    pub fn plus_subspace(&self) -> Subspace<F> {
        let one = self.field.one();
        Subspace::whole(&self.field, self.dim()).kernel_of(&self.star_matrix().sub_scalar(&one))
    }
}
