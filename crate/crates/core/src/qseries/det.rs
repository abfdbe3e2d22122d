use std::collections::HashMap;

use super::QSeries;
use crate::error::{Error, Result};

fn check_square(m: &[Vec<QSeries>]) -> Result<i64> {
    let size = m.len();
    let Some(first) = m.first().and_then(|row| row.first()) else {
        return Err(Error::EmptyMatrix);
    };
    let order = first.order();
    for (row_idx, row) in m.iter().enumerate() {
        if row.len() != size {
            return Err(Error::NonSquare {
                rows: size,
                row: row_idx,
                cols: row.len(),
            });
        }
        if let Some(bad) = row.iter().find(|e| e.order() != order) {
            return Err(Error::OrderMismatch {
                left: order,
                right: bad.order(),
            });
        }
    }
    Ok(order)
}

/// Exact determinant by cofactor expansion along rows, memoised on the set of
/// columns already used, so a `d × d` matrix costs `O(d · 2^d)` products.
pub fn det(m: &[Vec<QSeries>]) -> Result<QSeries> {
    let order = check_square(m)?;
    let size = m.len();
    assert!(size < 32, "determinant size {size} too large");
    let mut memo: HashMap<u32, QSeries> = HashMap::new();
    Ok(expand(m, 0, size, order, &mut memo))
}

fn expand(
    m: &[Vec<QSeries>],
    used: u32,
    size: usize,
    order: i64,
    memo: &mut HashMap<u32, QSeries>,
) -> QSeries {
    let row = used.count_ones() as usize;
    if row == size {
        return QSeries::one(order);
    }
    if let Some(hit) = memo.get(&used) {
        return hit.clone();
    }
    let mut acc = QSeries::zero(order);
    let mut parity = 0;
    for col in 0..size {
        if used & (1 << col) != 0 {
            continue;
        }
        let entry = &m[row][col];
        if !entry.is_zero() {
            let minor = expand(m, used | (1 << col), size, order, memo);
            let term = entry * &minor;
            // Laurent entries shrink the precision of products; keep the sum uniform.
            let term = term
                .truncate(term.order().min(acc.order()))
                .expect("order only shrinks");
            let acc_trunc = acc.truncate(term.order()).expect("order only shrinks");
            acc = if parity == 0 {
                &acc_trunc + &term
            } else {
                &acc_trunc - &term
            };
        }
        parity ^= 1;
    }
    memo.insert(used, acc.clone());
    acc
}

/// The matrix with row `row` and column `col` removed.
pub fn minor(m: &[Vec<QSeries>], row: usize, col: usize) -> Vec<Vec<QSeries>> {
    m.iter()
        .enumerate()
        .filter(|(r, _)| *r != row)
        .map(|(_, entries)| {
            entries
                .iter()
                .enumerate()
                .filter(|(c, _)| *c != col)
                .map(|(_, e)| e.clone())
                .collect()
        })
        .collect()
}
