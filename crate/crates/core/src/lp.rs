//! Exact feasibility LP over ℚ: phase-one simplex with Bland's rule.

use crate::arith::Rational;

/// Some x ≥ 0 with A x = b, or `None` when the system is infeasible.
pub fn nonneg_solution(a: &[Vec<Rational>], b: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let m = a.len();
    assert_eq!(m, b.len(), "row count mismatch");
    if m == 0 {
        return Some(vec![Rational::zero(); n]);
    }
    // Tableau columns: n originals, m artificials, rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "ragged constraint matrix");
        let flip = b[i].is_negative();
        let mut r: Vec<Rational> = row.iter().map(|x| if flip { -x } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
        r.push(if flip { -&b[i] } else { b[i].clone() });
        t.push(r);
    }
    // Objective row: minimize the artificial sum, stored as reduced costs.
    let mut obj = vec![Rational::zero(); width];
    for r in &t {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    t.push(obj);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            let p = &t[i][enter];
            if p.is_zero() || p.is_negative() {
                continue;
            }
            let ratio = &t[i][width - 1] / p;
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase one is bounded below by zero, so a pivot row always exists.
        let (row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let inv = t[row][col].inv().expect("nonzero pivot");
    for x in t[row].iter_mut() {
        *x *= &inv;
    }
    let pr = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let f = r[col].clone();
        for (x, p) in r.iter_mut().zip(&pr) {
            if !p.is_zero() {
                *x -= &(&f * p);
            }
        }
    }
}

/// Whether `v` lies in the rational convex cone spanned by `gens`.
pub fn in_cone(gens: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Rational::is_zero) {
        return true;
    }
    if gens.is_empty() {
        return false;
    }
    let dim = v.len();
    let a: Vec<Vec<Rational>> = (0..dim).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    nonneg_solution(&a, v, gens.len()).is_some()
}

/// Some l ∈ ℚ^d with l·e = 0 for e in `zero` and l·p ≥ 1 for p in `pos`.
pub fn separating_functional(dim: usize, zero: &[Vec<Rational>], pos: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    // Variables: u (d), w (d), slack (|pos|); l = u − w.
    let cols = 2 * dim + pos.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for e in zero {
        let mut row = vec![Rational::zero(); cols];
        for k in 0..dim {
            row[k] = e[k].clone();
            row[dim + k] = -&e[k];
        }
        a.push(row);
        b.push(Rational::zero());
    }
    for (s, p) in pos.iter().enumerate() {
        let mut row = vec![Rational::zero(); cols];
        for k in 0..dim {
            row[k] = p[k].clone();
            row[dim + k] = -&p[k];
        }
        row[2 * dim + s] = -Rational::one();
        a.push(row);
        b.push(Rational::one());
    }
    let x = nonneg_solution(&a, &b, cols)?;
    Some((0..dim).map(|k| &x[k] - &x[dim + k]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::integer(x)).collect()
    }

    #[test]
    fn cone_basics() {
        let gens = vec![r(&[1, 0]), r(&[1, 1])];
        assert!(in_cone(&gens, &r(&[3, 1])));
        assert!(!in_cone(&gens, &r(&[0, 1])));
        assert!(!in_cone(&gens, &r(&[-1, 0])));
        assert!(in_cone(&[], &r(&[0, 0])));
    }

    #[test]
    fn infeasible_system() {
        let a = vec![r(&[1, 1]), r(&[1, 1])];
        assert!(nonneg_solution(&a, &r(&[1, 2]), 2).is_none());
        assert!(nonneg_solution(&a, &r(&[2, 2]), 2).is_some());
    }

    #[test]
    fn separation() {
        let l = separating_functional(2, &[r(&[0, 1])], &[r(&[1, 0]), r(&[1, 5])]).unwrap();
        assert!(l[1].is_zero());
        assert!(!l[0].is_negative() && !l[0].is_zero());
        assert!(separating_functional(1, &[], &[r(&[1]), r(&[-1])]).is_none());
    }
}
