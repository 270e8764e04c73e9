//! Incremental sparse row reduction for the large, mostly-identity linear
//! systems behind Hom and Ext computations.

use std::collections::BTreeMap;

use crate::field::Rational;

type Row = Vec<(usize, Rational)>;

/// `a + s·b` for sorted sparse rows.
fn axpy(a: &Row, s: &Rational, b: &Row) -> Row {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Row space kept in echelon form, keyed by leading column with leading
/// coefficient 1.
#[derive(Debug, Clone)]
pub struct SparseEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, Row>,
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds a row given as `(column, value)` pairs in any order; repeated
    /// columns are summed. Returns whether the rank grew.
    pub fn push(&mut self, mut entries: Vec<(usize, Rational)>) -> bool {
        entries.sort_by_key(|e| e.0);
        let mut row: Row = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            assert!(c < self.ncols, "column {c} out of range");
            match row.last_mut() {
                Some(last) if last.0 == c => last.1 += &v,
                _ => row.push((c, v)),
            }
        }
        row.retain(|e| !e.1.is_zero());

        loop {
            let Some((lead, coeff)) = row.first().cloned() else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-coeff, p),
                None => {
                    let inv = coeff.recip().unwrap();
                    if !inv.is_one() {
                        for e in row.iter_mut() {
                            e.1 = &e.1 * &inv;
                        }
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    /// Basis of the solution space of the homogeneous system, one vector per
    /// free column (ascending), matching the reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let mut reduced: BTreeMap<usize, Row> = BTreeMap::new();
        for (&k, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            for (c, v) in row.iter().skip(1) {
                if let Some(p) = reduced.get(c) {
                    r = axpy(&r, &-v.clone(), p);
                }
            }
            reduced.insert(k, r);
        }
        (0..self.ncols)
            .filter(|f| !reduced.contains_key(f))
            .map(|f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (&p, row) in &reduced {
                    if let Ok(idx) = row.binary_search_by_key(&f, |e| e.0) {
                        v[p] = -&row[idx].1;
                    }
                }
                v
            })
            .collect()
    }
}
