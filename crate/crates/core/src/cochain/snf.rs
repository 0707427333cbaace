//! Diagonal (Smith-type) reduction of integer matrices and linear solving
//! over Z/n.
//!
//! U·A·V = D with U, V unimodular and D diagonal. U is kept as a log of
//! elementary row operations, since A may have many more rows than columns;
//! V is kept as a dense matrix.

#[derive(Debug, Clone, Copy)]
enum RowOp {
    Swap(usize, usize),
    /// row[i] -= q·row[j]
    AddMul(usize, usize, i64),
    Negate(usize),
}

#[derive(Debug, Clone)]
pub struct Diagonalized {
    rows: usize,
    cols: usize,
    diag: Vec<i64>,
    ops: Vec<RowOp>,
    v: Vec<Vec<i64>>,
}

fn checked(x: Option<i64>) -> i64 {
    x.expect("integer overflow in diagonal reduction")
}

impl Diagonalized {
    /// Reduces the dense row-major matrix `a` (rows × cols).
    pub fn new(mut a: Vec<Vec<i64>>, cols: usize) -> Self {
        let rows = a.len();
        let mut ops = Vec::new();
        let mut v: Vec<Vec<i64>> = (0..cols).map(|i| (0..cols).map(|j| (i == j) as i64).collect()).collect();
        let mut diag = Vec::new();
        for t in 0..rows.min(cols) {
            loop {
                // Smallest nonzero entry of the remaining block.
                let mut best: Option<(i64, usize, usize)> = None;
                for (i, row) in a.iter().enumerate().skip(t) {
                    for (j, &x) in row.iter().enumerate().skip(t) {
                        if x != 0 && best.is_none_or(|(b, _, _)| x.abs() < b) {
                            best = Some((x.abs(), i, j));
                        }
                    }
                }
                let Some((_, pi, pj)) = best else {
                    diag.resize(rows.min(cols), 0);
                    return Diagonalized { rows, cols, diag, ops, v };
                };
                if pi != t {
                    a.swap(pi, t);
                    ops.push(RowOp::Swap(pi, t));
                }
                if pj != t {
                    for row in a.iter_mut() {
                        row.swap(pj, t);
                    }
                    for row in v.iter_mut() {
                        row.swap(pj, t);
                    }
                }
                let p = a[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let x = a[i][t];
                    if x == 0 {
                        continue;
                    }
                    let q = x.div_euclid(p);
                    if q != 0 {
                        let (top, bottom) = a.split_at_mut(i);
                        for (y, z) in bottom[0].iter_mut().zip(&top[t]).skip(t) {
                            *y = checked(y.checked_sub(checked(q.checked_mul(*z))));
                        }
                        ops.push(RowOp::AddMul(i, t, q));
                    }
                    clean &= a[i][t] == 0;
                }
                for j in t + 1..cols {
                    let x = a[t][j];
                    if x == 0 {
                        continue;
                    }
                    let q = x.div_euclid(p);
                    if q != 0 {
                        for row in a.iter_mut() {
                            let s = row[t];
                            row[j] = checked(row[j].checked_sub(checked(q.checked_mul(s))));
                        }
                        for row in v.iter_mut() {
                            let s = row[t];
                            row[j] = checked(row[j].checked_sub(checked(q.checked_mul(s))));
                        }
                    }
                    clean &= a[t][j] == 0;
                }
                if clean {
                    if p < 0 {
                        for x in a[t].iter_mut() {
                            *x = -*x;
                        }
                        ops.push(RowOp::Negate(t));
                    }
                    diag.push(a[t][t]);
                    break;
                }
            }
        }
        diag.resize(rows.min(cols), 0);
        Diagonalized { rows, cols, diag, ops, v }
    }

    pub fn diagonal(&self) -> &[i64] {
        &self.diag
    }

    /// A solution of A·x ≡ b (mod n), or None if there is none.
    pub fn solve_mod(&self, b: &[i64], n: i64) -> Option<Vec<i64>> {
        assert_eq!(b.len(), self.rows);
        let mut c: Vec<i64> = b.iter().map(|x| x.rem_euclid(n)).collect();
        for op in &self.ops {
            match *op {
                RowOp::Swap(i, j) => c.swap(i, j),
                RowOp::AddMul(i, j, q) => c[i] = (c[i] - q.rem_euclid(n) * c[j]).rem_euclid(n),
                RowOp::Negate(i) => c[i] = (-c[i]).rem_euclid(n),
            }
        }
        if c.iter().skip(self.diag.len()).any(|&x| x != 0) {
            return None;
        }
        let mut y = vec![0i64; self.cols];
        for (i, &d) in self.diag.iter().enumerate() {
            let g = gcd(d.rem_euclid(n), n);
            if c[i] % g != 0 {
                return None;
            }
            let m = n / g;
            y[i] = if m == 1 { 0 } else { (c[i] / g) * inv_mod((d / g).rem_euclid(m), m) % m };
        }
        let x = (0..self.cols)
            .map(|i| self.v[i].iter().zip(&y).map(|(a, b)| a.rem_euclid(n) * b).sum::<i64>().rem_euclid(n))
            .collect();
        Some(x)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1, mut s0, mut s1) = (a, m, 1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply(a: &[Vec<i64>], x: &[i64], n: i64) -> Vec<i64> {
        a.iter().map(|r| r.iter().zip(x).map(|(p, q)| p * q).sum::<i64>().rem_euclid(n)).collect()
    }

    #[test]
    fn diagonal_of_a_small_matrix() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let d = Diagonalized::new(a, 3);
        let mut diag: Vec<i64> = d.diagonal().to_vec();
        diag.sort();
        // The product of the diagonal is |det| = 144 and the gcd of the entries is 2.
        assert_eq!(diag.iter().product::<i64>(), 144);
        assert_eq!(diag.iter().fold(0, |g, &x| gcd(g, x)), 2);
    }

    #[test]
    fn solves_modulo_composite_n() {
        let a = vec![vec![2, 0], vec![0, 3], vec![2, 3]];
        let d = Diagonalized::new(a.clone(), 2);
        let b = vec![2, 3, 5];
        let x = d.solve_mod(&b, 4).unwrap();
        assert_eq!(apply(&a, &x, 4), vec![2, 3, 1]);
        // 2x ≡ 1 (mod 4) has no solution.
        assert!(d.solve_mod(&[1, 0, 1], 4).is_none());
    }
}
