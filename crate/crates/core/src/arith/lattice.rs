//! Integer lattices given by generating sets.

use num_integer::Integer;

/// Row-echelon basis of the ℤ-span of `gens` (Hermite-style, via extended gcd).
pub fn echelon_basis(gens: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let Some(width) = gens.first().map(Vec::len) else {
        return vec![];
    };
    let mut rows: Vec<Vec<i128>> = gens.iter().map(|g| g.iter().map(|&x| x as i128).collect()).collect();
    let mut basis = Vec::new();
    for col in 0..width {
        rows.retain(|r| r.iter().any(|&x| x != 0));
        let mut with: Vec<Vec<i128>> = Vec::new();
        let mut without = Vec::new();
        for r in rows.drain(..) {
            if r[col] != 0 {
                with.push(r);
            } else {
                without.push(r);
            }
        }
        rows = without;
        let Some(mut pivot) = with.pop() else {
            continue;
        };
        for mut r in with {
            // Replace (pivot, r) by (gcd row, eliminated row).
            let e = pivot[col].extended_gcd(&r[col]);
            let (a, b) = (pivot[col] / e.gcd, r[col] / e.gcd);
            let g: Vec<i128> = pivot.iter().zip(&r).map(|(p, q)| e.x * p + e.y * q).collect();
            for (k, q) in r.iter_mut().enumerate() {
                *q = a * *q - b * pivot[k];
            }
            pivot = g;
            rows.push(r);
        }
        if pivot[col] < 0 {
            pivot.iter_mut().for_each(|x| *x = -*x);
        }
        basis.push(pivot);
    }
    basis
}

/// Whether `v` lies in the ℤ-span of `gens`.
pub fn lattice_contains(gens: &[Vec<i64>], v: &[i64]) -> bool {
    let basis = echelon_basis(gens);
    let mut w: Vec<i128> = v.iter().map(|&x| x as i128).collect();
    for b in &basis {
        let col = b.iter().position(|&x| x != 0).expect("nonzero row");
        if w[col] % b[col] != 0 {
            return false;
        }
        let q = w[col] / b[col];
        for (wi, bi) in w.iter_mut().zip(b) {
            *wi -= q * bi;
        }
    }
    w.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn even_sublattice() {
        let gens = vec![vec![2, 0], vec![0, 2], vec![1, 1]];
        assert!(lattice_contains(&gens, &[1, 1]));
        assert!(lattice_contains(&gens, &[3, -1]));
        assert!(!lattice_contains(&gens, &[1, 0]));
        assert!(lattice_contains(&[], &[0, 0]) || lattice_contains(&[vec![0, 0]], &[0, 0]));
    }

    #[test]
    fn dependent_generators() {
        let gens = vec![vec![4, 6], vec![6, 9], vec![2, 3]];
        assert!(lattice_contains(&gens, &[2, 3]));
        assert!(!lattice_contains(&gens, &[1, 1]));
        assert!(!lattice_contains(&gens, &[1, 0]));
    }
}
