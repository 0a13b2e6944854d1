use super::{Field, FieldElement};

/// Basis of `{x : A x = 0}` for an `rows x ncols` matrix, one vector per free
/// column of the reduced row echelon form, with that column set to 1.
pub fn nullspace(
    field: &Field,
    matrix: &[Vec<FieldElement>],
    ncols: usize,
) -> Vec<Vec<FieldElement>> {
    let f = field;
    let mut m: Vec<Vec<FieldElement>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(pr) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, pr);
        let inv = f.inv(m[row][col]);
        for c in col..ncols {
            m[row][c] = f.mul(m[row][c], inv);
        }
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col];
            for c in col..ncols {
                let sub = f.mul(factor, m[row][c]);
                m[r][c] = f.sub(m[r][c], sub);
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    let is_pivot: Vec<bool> = (0..ncols).map(|c| pivots.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![FieldElement::ZERO; ncols];
        v[free] = FieldElement::ONE;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = f.neg(m[r][free]);
        }
        basis.push(v);
    }
    basis
}
