//! Dense exact linear algebra over [`Cyclotomic`] scalars.

use super::Cyclotomic;

pub type Vector = Vec<Cyclotomic>;

pub fn zero_vec(n: usize) -> Vector {
    vec![Cyclotomic::zero(); n]
}

pub fn is_zero_vec(v: &[Cyclotomic]) -> bool {
    v.iter().all(Cyclotomic::is_zero)
}

pub fn axpy(y: &mut [Cyclotomic], a: &Cyclotomic, x: &[Cyclotomic]) {
    if a.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

pub fn scale_vec(v: &[Cyclotomic], a: &Cyclotomic) -> Vector {
    v.iter().map(|x| x * a).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Cyclotomic::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Cyclotomic::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        Mat { rows: r, cols: c, data }
    }

    pub fn from_cols(rows: usize, cols: &[Vector]) -> Mat {
        let mut m = Mat::zeros(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Cyclotomic) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Cyclotomic] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Cyclotomic)> {
        self.data.iter().enumerate().map(move |(k, x)| (k / self.cols, k % self.cols, x))
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vector {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        let mut out = zero_vec(self.rows);
        for (k, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, k);
                if !a.is_zero() {
                    *o = &*o + &(a * x);
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Cyclotomic) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for (r, c, x) in self.entries() {
            t.set(c, r, x.clone());
        }
        t
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..m.cols {
            if pr == m.rows {
                break;
            }
            let Some(p) = (pr..m.rows).find(|&r| !m.get(r, c).is_zero()) else {
                continue;
            };
            m.swap_rows(pr, p);
            let inv = m.get(pr, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(pr, j) * &inv;
                m.set(pr, j, v);
            }
            for r in 0..m.rows {
                if r == pr {
                    continue;
                }
                let f = m.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let p = m.get(pr, j);
                    if !p.is_zero() {
                        let v = m.get(r, j) - &(&f * p);
                        m.set(r, j, v);
                    }
                }
            }
            pivots.push(c);
            pr += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of { x : A x = 0 }.
    pub fn nullspace(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = zero_vec(self.cols);
                v[f] = Cyclotomic::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(i, f);
                }
                v
            })
            .collect()
    }

    /// Some solution of A x = b, if one exists.
    pub fn solve(&self, b: &[Cyclotomic]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = zero_vec(self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn kron(&self, o: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows * o.rows, self.cols * o.cols);
        for (i, j, a) in self.entries() {
            if a.is_zero() {
                continue;
            }
            for (k, l, b) in o.entries() {
                if !b.is_zero() {
                    out.set(i * o.rows + k, j * o.cols + l, a * b);
                }
            }
        }
        out
    }
}

/// A subspace kept as an incrementally reduced echelon basis.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    dim: usize,
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new(ambient: usize) -> Echelon {
        Echelon { dim: ambient, rows: Vec::new() }
    }

    pub fn ambient(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; the remainder is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Cyclotomic]) -> Vector {
        let mut w = v.to_vec();
        for (p, row) in &self.rows {
            if !w[*p].is_zero() {
                let f = -&w[*p];
                axpy(&mut w, &f, row);
            }
        }
        w
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool {
        is_zero_vec(&self.reduce(v))
    }

    /// Adds `v` if it is new; returns whether the span grew.
    pub fn insert(&mut self, v: &[Cyclotomic]) -> bool {
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero");
        w = scale_vec(&w, &inv);
        for (_, row) in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = -&row[p];
                axpy(row, &f, &w);
            }
        }
        self.rows.push((p, w));
        true
    }

    pub fn basis(&self) -> Vec<Vector> {
        self.rows.iter().map(|(_, r)| r.clone()).collect()
    }

    /// Basis of the vectors orthogonal to every row, i.e. the solutions of R x = 0.
    pub fn nullspace(&self) -> Vec<Vector> {
        let pivots: Vec<usize> = self.rows.iter().map(|(p, _)| *p).collect();
        (0..self.dim)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                let mut v = zero_vec(self.dim);
                v[f] = Cyclotomic::one();
                for (p, row) in &self.rows {
                    v[*p] = -&row[f];
                }
                v
            })
            .collect()
    }
}

/// Span of everything reachable from `starts` under the linear maps listed by
/// `step` (each call returns the images of one vector).
pub fn closure_span(ambient: usize, starts: Vec<Vector>, step: impl Fn(&[Cyclotomic]) -> Vec<Vector>) -> Echelon {
    let mut span = Echelon::new(ambient);
    let mut queue: std::collections::VecDeque<Vector> = starts.into_iter().filter(|v| span.insert(v)).collect();
    while let Some(v) = queue.pop_front() {
        for w in step(&v) {
            if !is_zero_vec(&w) && span.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    span
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(k: i64) -> Cyclotomic {
        Cyclotomic::integer(k)
    }

    #[test]
    fn rank_and_nullspace() {
        let m = Mat::from_rows(vec![vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)], vec![c(0), c(1), c(1)]]);
        assert_eq!(m.rank(), 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(is_zero_vec(&m.mul_vec(&ns[0])));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Mat::from_rows(vec![vec![c(1), c(1)], vec![c(1), c(-1)]]);
        assert_eq!(m.solve(&[c(2), c(0)]).unwrap(), vec![c(1), c(1)]);
        let s = Mat::from_rows(vec![vec![c(1), c(1)], vec![c(2), c(2)]]);
        assert!(s.solve(&[c(1), c(3)]).is_none());
    }

    #[test]
    fn echelon_span() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&[c(1), c(1), c(0)]));
        assert!(e.insert(&[c(0), c(1), c(1)]));
        assert!(!e.insert(&[c(1), c(2), c(1)]));
        assert!(e.contains(&[c(1), c(0), c(-1)]));
        assert_eq!(e.rank(), 2);
    }
}
