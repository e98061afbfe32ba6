//! Quotient of a free module by sparse relations, via incremental sparse
//! elimination.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::arith::Field;

pub type SparseVec<E> = Vec<(u32, E)>;

/// Result of quotienting `K^nvars` by relations: the surviving free
/// variables and every variable's expression in terms of them.
#[derive(Debug, Clone)]
pub struct Quotient<E> {
    pub free: Vec<usize>,
    pub expr: Vec<SparseVec<E>>,
}

pub fn quotient<F: Field>(k: &F, nvars: usize, relations: &[Vec<(usize, F::Elem)>]) -> Quotient<F::Elem> {
    // pivot rows in creation order, normalized to 1 at their pivot
    let mut pivots: Vec<(usize, Vec<(usize, F::Elem)>)> = Vec::new();
    let mut pivot_of = vec![usize::MAX; nvars];
    let mut col_count = vec![0u32; nvars];
    let mut acc = vec![k.zero(); nvars];
    let mut touched = vec![false; nvars];
    let mut touched_list: Vec<usize> = Vec::new();
    let mut queued = vec![false; nvars];
    let mut heap: BinaryHeap<Reverse<usize>> = BinaryHeap::new();

    for rel in relations {
        for (c, x) in rel {
            let c = *c;
            if !touched[c] {
                touched[c] = true;
                touched_list.push(c);
            }
            k.add_assign(&mut acc[c], x);
            if pivot_of[c] != usize::MAX && !queued[c] {
                queued[c] = true;
                heap.push(Reverse(pivot_of[c]));
            }
        }
        // eliminate older pivots first; a pivot row only contains columns
        // that became pivots after it, so each is visited once
        while let Some(Reverse(pi)) = heap.pop() {
            let (pc, prow) = &pivots[pi];
            queued[*pc] = false;
            if k.is_zero(&acc[*pc]) {
                continue;
            }
            let f = k.neg(&acc[*pc]);
            for (c, y) in prow {
                let c = *c;
                if !touched[c] {
                    touched[c] = true;
                    touched_list.push(c);
                }
                k.add_mul_assign(&mut acc[c], &f, y);
                if c != *pc && pivot_of[c] != usize::MAX && !queued[c] {
                    queued[c] = true;
                    heap.push(Reverse(pivot_of[c]));
                }
            }
        }
        let mut row: Vec<(usize, F::Elem)> = Vec::new();
        for &c in &touched_list {
            touched[c] = false;
            let x = std::mem::replace(&mut acc[c], k.zero());
            if !k.is_zero(&x) {
                row.push((c, x));
            }
        }
        touched_list.clear();
        if row.is_empty() {
            continue;
        }
        // Markowitz-style choice: the column touched by the fewest pivot rows
        let (pos, _) = row
            .iter()
            .enumerate()
            .min_by_key(|(_, (c, _))| (col_count[*c], Reverse(*c)))
            .unwrap();
        let pc = row[pos].0;
        let inv = k.inv(&row[pos].1);
        for (c, x) in row.iter_mut() {
            *x = k.mul(x, &inv);
            col_count[*c] += 1;
        }
        pivot_of[pc] = pivots.len();
        pivots.push((pc, row));
    }

    let free: Vec<usize> = (0..nvars).filter(|&c| pivot_of[c] == usize::MAX).collect();
    let mut expr: Vec<SparseVec<F::Elem>> = vec![Vec::new(); nvars];
    for (b, &f) in free.iter().enumerate() {
        expr[f] = vec![(b as u32, k.one())];
    }
    let dim = free.len();
    let mut dense = vec![k.zero(); dim];
    let mut hit = vec![false; dim];
    let mut hit_list: Vec<usize> = Vec::new();
    for (pc, prow) in pivots.iter().rev() {
        for (c, y) in prow {
            if c == pc {
                continue;
            }
            let f = k.neg(y);
            for (b, z) in &expr[*c] {
                let b = *b as usize;
                if !hit[b] {
                    hit[b] = true;
                    hit_list.push(b);
                }
                k.add_mul_assign(&mut dense[b], &f, z);
            }
        }
        hit_list.sort_unstable();
        let mut e = Vec::new();
        for &b in &hit_list {
            hit[b] = false;
            let x = std::mem::replace(&mut dense[b], k.zero());
            if !k.is_zero(&x) {
                e.push((b as u32, x));
            }
        }
        hit_list.clear();
        expr[*pc] = e;
    }
    Quotient { free, expr }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::PrimeField;

    #[test]
    fn small_quotient() {
        let k = PrimeField::new(101);
        // x0 + x1 = 0, x1 - x2 = 0 over 4 variables
        let rels = vec![vec![(0, 1), (1, 1)], vec![(1, 1), (2, 100)]];
        let q = quotient(&k, 4, &rels);
        assert_eq!(q.free.len(), 2);
        // every relation evaluates to zero on the expressions
        for rel in &rels {
            let mut tot = [0u64; 2];
            for (c, x) in rel {
                for (b, z) in &q.expr[*c] {
                    tot[*b as usize] = k.add(&tot[*b as usize], &k.mul(x, z));
                }
            }
            assert!(tot.iter().all(|&t| t == 0));
        }
    }
}
