//! Phase-one simplex over the integers with fraction-free (Bareiss) pivots
//! and Bland's rule. Only feasibility questions are asked of it.

use crate::error::{Error, Result};

/// Whether some `mu >= 0` with `sum(mu) = 1` and free `nu` satisfy
/// `sum mu_i a_i + sum nu_j b_j = 0`, with `a_i` from `nonneg` and `b_j` from
/// `free`, all of length `n`.
pub(crate) fn affine_combination_exists(
    nonneg: &[Vec<i64>],
    free: &[Vec<i64>],
    n: usize,
) -> Result<bool> {
    if nonneg.is_empty() {
        return Ok(false);
    }
    let mut cols: Vec<Vec<i128>> = Vec::with_capacity(nonneg.len() + 2 * free.len());
    for a in nonneg {
        let mut c: Vec<i128> = a.iter().map(|&x| x as i128).collect();
        c.push(1);
        cols.push(c);
    }
    for b in free {
        let mut c: Vec<i128> = b.iter().map(|&x| x as i128).collect();
        c.push(0);
        cols.push(c.iter().map(|x| -x).collect());
        cols.push(c);
    }
    let mut rhs = vec![0i128; n + 1];
    rhs[n] = 1;
    feasible(&cols, &rhs)
}

fn ck(v: Option<i128>) -> Result<i128> {
    v.ok_or(Error::LpOverflow)
}

/// Feasibility of `A x = b, x >= 0` with `b >= 0`; `cols` are the columns of `A`.
fn feasible(cols: &[Vec<i128>], rhs: &[i128]) -> Result<bool> {
    let m = rhs.len();
    let nv = cols.len();
    let width = nv + m + 1;
    let last = width - 1;
    let mut t = vec![vec![0i128; width]; m];
    for (i, row) in t.iter_mut().enumerate() {
        for (j, c) in cols.iter().enumerate() {
            row[j] = c[i];
        }
        row[nv + i] = 1;
        row[last] = rhs[i];
    }
    let mut z = vec![0i128; width];
    for j in (0..nv).chain(std::iter::once(last)) {
        let mut s = 0i128;
        for row in &t {
            s = ck(s.checked_add(row[j]))?;
        }
        z[j] = -s;
    }
    let mut basis: Vec<usize> = (nv..nv + m).collect();
    let mut det: i128 = 1;
    let max_iter = 50 * (nv + m) + 1000;
    for _ in 0..max_iter {
        let Some(s) = (0..nv).find(|&j| z[j] < 0) else {
            return Ok(z[last] == 0);
        };
        let mut r: Option<usize> = None;
        for i in 0..m {
            if t[i][s] <= 0 {
                continue;
            }
            r = match r {
                None => Some(i),
                Some(best) => {
                    let lhs = ck(t[i][last].checked_mul(t[best][s]))?;
                    let rhs_ = ck(t[best][last].checked_mul(t[i][s]))?;
                    if lhs < rhs_ || (lhs == rhs_ && basis[i] < basis[best]) {
                        Some(i)
                    } else {
                        Some(best)
                    }
                }
            };
        }
        // Phase one is bounded below by zero, so a ratio row always exists.
        let r = r.expect("phase one cannot be unbounded");
        let p = t[r][s];
        let pivot_row = t[r].clone();
        for (i, row) in t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            pivot_update(row, &pivot_row, s, p, det)?;
        }
        pivot_update(&mut z, &pivot_row, s, p, det)?;
        det = p;
        basis[r] = s;
    }
    unreachable!("Bland's rule terminates")
}

fn pivot_update(row: &mut [i128], pivot_row: &[i128], s: usize, p: i128, det: i128) -> Result<()> {
    let f = row[s];
    for j in 0..row.len() {
        let num = ck(ck(row[j].checked_mul(p))?.checked_sub(ck(f.checked_mul(pivot_row[j]))?))?;
        debug_assert_eq!(num % det, 0, "fraction-free pivot must divide exactly");
        row[j] = num / det;
    }
    Ok(())
}
