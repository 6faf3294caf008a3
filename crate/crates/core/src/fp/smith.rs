//! Integer matrices and Smith normal form, generic over the integer scalar.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed, ToPrimitive};

/// Integer scalars usable in the reduction; fixed-width types report overflow.
pub trait SnfScalar: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}
impl<T> SnfScalar for T where T: Clone + Debug + Integer + Signed + CheckedAdd + CheckedSub + CheckedMul {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

/// Arithmetic overflow in a fixed-width reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Overflow;

impl<T: SnfScalar> IntegerMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![T::zero(); rows * cols],
        }
    }

    /// Panics if the rows have unequal lengths.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: T) {
        let i = r * self.cols + c;
        self.entries[i] = self.entries[i].clone() + v;
    }

    /// Entrywise conversion into another scalar type.
    pub fn convert<U: SnfScalar>(&self, f: impl Fn(&T) -> Option<U>) -> Option<IntegerMatrix<U>> {
        Some(IntegerMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Option<_>>()?,
        })
    }
}

/// Diagonal of the Smith normal form, of length `min(rows, cols)`, nonnegative,
/// with `d_1 | d_2 | ...` and zeros last. Fails only on fixed-width overflow.
pub fn smith_diagonal<T: SnfScalar>(m: &IntegerMatrix<T>) -> Result<Vec<T>, Overflow> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let k = rows.min(cols);
    let mut diag = Vec::with_capacity(k);
    for t in 0..k {
        loop {
            let Some((pr, pc)) = min_pivot(&a, t) else {
                diag.resize(k, T::zero());
                return finish(diag);
            };
            swap_rows(&mut a, t, pr);
            swap_cols(&mut a, t, pc);
            let mut clean = true;
            for r in t + 1..rows {
                if !a.get(r, t).is_zero() {
                    let q = a.get(r, t).clone() / a.get(t, t).clone();
                    row_sub(&mut a, r, t, &q, t)?;
                    if !a.get(r, t).is_zero() {
                        clean = false;
                    }
                }
            }
            for c in t + 1..cols {
                if !a.get(t, c).is_zero() {
                    let q = a.get(t, c).clone() / a.get(t, t).clone();
                    col_sub(&mut a, c, t, &q, t)?;
                    if !a.get(t, c).is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // pivot must divide the remaining block
            let p = a.get(t, t).clone();
            let bad = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| !a.get(r, c).is_multiple_of(&p)));
            match bad {
                Some(r) => row_add(&mut a, t, r, t)?,
                None => break,
            }
        }
        diag.push(a.get(t, t).abs());
    }
    finish(diag)
}

fn finish<T: SnfScalar>(mut diag: Vec<T>) -> Result<Vec<T>, Overflow> {
    // the elimination produces a divisor chain among nonzero entries; sort zeros last
    let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
    diag.sort_by(|a, b| match (a.is_zero(), b.is_zero()) {
        (true, false) => std::cmp::Ordering::Greater,
        (false, true) => std::cmp::Ordering::Less,
        _ => std::cmp::Ordering::Equal,
    });
    debug_assert!(diag[..nonzero].windows(2).all(|w| w[1].is_multiple_of(&w[0])));
    Ok(diag)
}

fn min_pivot<T: SnfScalar>(a: &IntegerMatrix<T>, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, T)> = None;
    for r in t..a.rows {
        for c in t..a.cols {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let mag = v.abs();
            if best.as_ref().is_none_or(|(_, _, b)| mag < *b) {
                let one = mag.is_one();
                best = Some((r, c, mag));
                if one {
                    return best.map(|(r, c, _)| (r, c));
                }
            }
        }
    }
    best.map(|(r, c, _)| (r, c))
}

fn swap_rows<T: SnfScalar>(a: &mut IntegerMatrix<T>, i: usize, j: usize) {
    if i != j {
        for c in 0..a.cols {
            a.entries.swap(i * a.cols + c, j * a.cols + c);
        }
    }
}

fn swap_cols<T: SnfScalar>(a: &mut IntegerMatrix<T>, i: usize, j: usize) {
    if i != j {
        for r in 0..a.rows {
            a.entries.swap(r * a.cols + i, r * a.cols + j);
        }
    }
}

/// row[r] -= q * row[t], columns from `from` on (earlier ones are zero in row t).
fn row_sub<T: SnfScalar>(a: &mut IntegerMatrix<T>, r: usize, t: usize, q: &T, from: usize) -> Result<(), Overflow> {
    for c in from..a.cols {
        let x = a.get(t, c);
        if x.is_zero() {
            continue;
        }
        let v = a.get(r, c).checked_sub(&q.checked_mul(x).ok_or(Overflow)?).ok_or(Overflow)?;
        a.set(r, c, v);
    }
    Ok(())
}

fn col_sub<T: SnfScalar>(a: &mut IntegerMatrix<T>, c: usize, t: usize, q: &T, from: usize) -> Result<(), Overflow> {
    for r in from..a.rows {
        let x = a.get(r, t);
        if x.is_zero() {
            continue;
        }
        let v = a.get(r, c).checked_sub(&q.checked_mul(x).ok_or(Overflow)?).ok_or(Overflow)?;
        a.set(r, c, v);
    }
    Ok(())
}

/// row[t] += row[r].
fn row_add<T: SnfScalar>(a: &mut IntegerMatrix<T>, t: usize, r: usize, from: usize) -> Result<(), Overflow> {
    for c in from..a.cols {
        let v = a.get(t, c).checked_add(a.get(r, c)).ok_or(Overflow)?;
        a.set(t, c, v);
    }
    Ok(())
}

/// Smith normal form with exact arithmetic: an `i64` pass first, falling back
/// to arbitrary precision on overflow.
pub fn smith_normal_form(m: &IntegerMatrix<BigInt>) -> Vec<BigInt> {
    if let Some(small) = m.convert(|x| x.to_i64().filter(|v| v.unsigned_abs() < (1 << 31))) {
        if let Ok(d) = smith_diagonal(&small) {
            return d.into_iter().map(BigInt::from).collect();
        }
    }
    smith_diagonal(m).expect("arbitrary precision does not overflow")
}

/// Same as [`smith_normal_form`] for a small-entry matrix.
pub fn smith_normal_form_i64(m: &IntegerMatrix<i64>) -> Vec<BigInt> {
    match smith_diagonal(m) {
        Ok(d) => d.into_iter().map(BigInt::from).collect(),
        Err(Overflow) => {
            let big = m.convert(|&x| Some(BigInt::from(x))).expect("total conversion");
            smith_diagonal(&big).expect("arbitrary precision does not overflow")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: Vec<Vec<i64>>) -> IntegerMatrix<BigInt> {
        IntegerMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    fn snf(rows: Vec<Vec<i64>>) -> Vec<i64> {
        smith_normal_form(&big(rows)).iter().map(|x| x.to_i64().unwrap()).collect()
    }

    #[test]
    fn already_diagonal() {
        assert_eq!(snf(vec![vec![2, 0], vec![0, 2]]), vec![2, 2]);
    }

    #[test]
    fn two_by_two() {
        assert_eq!(snf(vec![vec![1, 2], vec![3, 4]]), vec![1, 2]);
    }

    #[test]
    fn zero_matrix() {
        assert_eq!(snf(vec![vec![0, 0, 0], vec![0, 0, 0]]), vec![0, 0]);
    }

    #[test]
    fn divisibility_is_enforced() {
        assert_eq!(snf(vec![vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(snf(vec![vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 0]]), vec![2, 12, 0]);
    }

    #[test]
    fn overflow_falls_back_to_big_integers() {
        let huge = i64::MAX / 3;
        let m = IntegerMatrix::from_rows(vec![vec![huge, huge - 1], vec![huge - 1, 5]]);
        assert_eq!(smith_diagonal(&m), Err(Overflow));
        let d = smith_normal_form_i64(&m);
        let det = BigInt::from(huge) * BigInt::from(5) - BigInt::from(huge - 1) * BigInt::from(huge - 1);
        assert_eq!(&d[0] * &d[1], det.abs());
    }
}
