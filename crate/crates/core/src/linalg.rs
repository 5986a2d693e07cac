//! Exact linear algebra over the rationals: sparse incremental row reduction
//! (rank, membership, solving with coefficient tracking) and dense inversion.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rat::Rat;

pub type SparseVec = BTreeMap<usize, Rat>;

pub fn axpy(y: &mut SparseVec, a: &Rat, x: &SparseVec) {
    if a.is_zero() {
        return;
    }
    for (k, v) in x {
        let e = y.entry(*k).or_insert_with(Rat::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

#[derive(Debug, Clone)]
struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Incrementally built row-echelon basis of a span of sparse vectors.
///
/// Every stored row has its pivot as its smallest coordinate, so reduction is
/// a single ascending sweep. When `track` is set, each row also remembers how
/// it was formed from the inserted vectors, which makes [`Span::express`] a
/// linear solver.
#[derive(Debug, Clone, Default)]
pub struct Span {
    rows: BTreeMap<usize, Row>,
    track: bool,
    inserted: usize,
}

impl Span {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Self {
            track: true,
            ..Self::default()
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    fn reduce(&self, v: &mut SparseVec, combo: &mut SparseVec) {
        let mut from = 0usize;
        loop {
            let next = v
                .range(from..)
                .find(|(c, _)| self.rows.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, coef)) = next else { break };
            let row = &self.rows[&c];
            axpy(v, &-coef.clone(), &row.vec);
            if self.track {
                axpy(combo, &coef, &row.combo);
            }
            from = c + 1;
        }
    }

    /// Adds `v`; returns `true` when it was independent of the current span.
    pub fn insert(&mut self, mut v: SparseVec) -> bool {
        v.retain(|_, x| !x.is_zero());
        let id = self.inserted;
        self.inserted += 1;
        let mut used = SparseVec::new();
        self.reduce(&mut v, &mut used);
        let Some((&pivot, lead)) = v.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let mut combo = SparseVec::new();
        if self.track {
            combo.insert(id, Rat::one());
            axpy(&mut combo, &-Rat::one(), &used);
            for x in combo.values_mut() {
                *x *= &inv;
            }
        }
        for x in v.values_mut() {
            *x *= &inv;
        }
        self.rows.insert(pivot, Row { vec: v, combo });
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        let mut v = v.clone();
        v.retain(|_, x| !x.is_zero());
        let mut scratch = SparseVec::new();
        self.reduce(&mut v, &mut scratch);
        v.is_empty()
    }

    /// Coefficients `x` (indexed by insertion order) with `Σ x_i v_i = b`, or
    /// `None` when `b` is outside the span. Requires a tracking span.
    pub fn express(&self, b: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "express needs a tracking span");
        let mut v = b.clone();
        v.retain(|_, x| !x.is_zero());
        let mut combo = SparseVec::new();
        self.reduce(&mut v, &mut combo);
        v.is_empty().then_some(combo)
    }
}

pub fn dense_to_sparse(v: &[Rat]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Gauss-Jordan inverse of a square matrix; `None` when singular.
pub fn invert(m: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    fn sv(entries: &[(usize, i64)]) -> SparseVec {
        entries.iter().map(|(k, v)| (*k, int(*v))).collect()
    }

    #[test]
    fn rank_and_membership() {
        let mut s = Span::new();
        assert!(s.insert(sv(&[(0, 1), (1, 1)])));
        assert!(s.insert(sv(&[(1, 1), (2, 1)])));
        assert!(!s.insert(sv(&[(0, 1), (1, 2), (2, 1)])));
        assert_eq!(s.rank(), 2);
        assert!(s.contains(&sv(&[(0, 2), (1, 1), (2, -1)])));
        assert!(!s.contains(&sv(&[(2, 1)])));
    }

    #[test]
    fn express_recovers_coefficients() {
        let mut s = Span::tracking();
        s.insert(sv(&[(0, 2), (1, 1)]));
        s.insert(sv(&[(0, 1), (2, 3)]));
        // 3*v0 - 2*v1
        let b = sv(&[(0, 4), (1, 3), (2, -6)]);
        let x = s.express(&b).unwrap();
        assert_eq!(x.get(&0), Some(&int(3)));
        assert_eq!(x.get(&1), Some(&int(-2)));
        assert!(s.express(&sv(&[(1, 1)])).is_none());
    }

    #[test]
    fn invert_two_by_two() {
        let m = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv[0][0], frac(2, 3));
        assert_eq!(inv[0][1], frac(1, 3));
        assert!(invert(&[vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }
}
