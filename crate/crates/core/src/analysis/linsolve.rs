//! Exact kernel computation for sparse homogeneous systems over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::scalar::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// A basis of {x : Ax = 0} for `rows` over `n` unknowns.
pub fn kernel(rows: &[SparseRow], n: usize) -> Vec<Vec<Rational>> {
    // reduced row echelon form, pivots keyed by column
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for row in rows {
        let mut r = row.clone();
        r.retain(|_, v| !v.is_zero());
        loop {
            let Some((&col, _)) = r.iter().find(|(c, _)| pivots.contains_key(c)) else {
                break;
            };
            let f = r[&col].clone();
            for (c, v) in &pivots[&col] {
                let e = r.entry(*c).or_insert_with(Rational::zero);
                *e -= &f * v;
            }
            r.retain(|_, v| !v.is_zero());
        }
        let Some((&lead, lv)) = r.iter().next() else {
            continue;
        };
        let inv = lv.recip();
        for v in r.values_mut() {
            *v *= &inv;
        }
        // keep existing pivot rows reduced with respect to the new pivot
        for p in pivots.values_mut() {
            if let Some(f) = p.get(&lead).cloned() {
                for (c, v) in &r {
                    let e = p.entry(*c).or_insert_with(Rational::zero);
                    *e -= &f * v;
                }
                p.retain(|_, v| !v.is_zero());
            }
        }
        pivots.insert(lead, r);
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains_key(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (&pc, row) in &pivots {
                if let Some(c) = row.get(&f) {
                    v[pc] = -c.clone();
                }
            }
            v
        })
        .collect()
}

/// A kernel vector with no zero entry, if one exists. Tries the combinations
/// Σ tʲ vⱼ for t = 1, 2, …; each entry is a nonzero polynomial in t unless it
/// vanishes identically, so finitely many t can fail.
pub fn nowhere_zero_kernel_vector(rows: &[SparseRow], n: usize) -> Option<Vec<Rational>> {
    let basis = kernel(rows, n);
    if basis.is_empty() {
        return None;
    }
    if (0..n).any(|i| basis.iter().all(|v| v[i].is_zero())) {
        return None;
    }
    let bound = (basis.len() * n + 2) as i64;
    (1..=bound).find_map(|t| {
        let t = Rational::from_integer(t.into());
        let mut acc = vec![Rational::zero(); n];
        let mut pw = Rational::one();
        for v in &basis {
            for (a, x) in acc.iter_mut().zip(v) {
                *a += &pw * x;
            }
            pw *= &t;
        }
        acc.iter().all(|x| !x.is_zero()).then_some(acc)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn row(entries: &[(usize, i64)]) -> SparseRow {
        entries.iter().map(|(c, v)| (*c, rat(*v, 1))).collect()
    }

    #[test]
    fn one_dimensional_kernel() {
        // x0 = 2 x1, x1 = 3 x2
        let rows = vec![row(&[(0, 1), (1, -2)]), row(&[(1, 1), (2, -3)])];
        let k = kernel(&rows, 3);
        assert_eq!(k, vec![vec![rat(6, 1), rat(3, 1), rat(1, 1)]]);
    }

    #[test]
    fn forced_zero_entry() {
        let rows = vec![row(&[(0, 1)])];
        assert!(nowhere_zero_kernel_vector(&rows, 2).is_none());
    }

    #[test]
    fn combination_avoids_zeros() {
        // x0 + x1 = 0 over three unknowns: basis vectors each have a zero
        let rows = vec![row(&[(0, 1), (1, 1)])];
        let v = nowhere_zero_kernel_vector(&rows, 3).unwrap();
        assert!(v.iter().all(|x| !x.is_zero()));
        assert_eq!(&v[0] + &v[1], rat(0, 1));
    }
}
