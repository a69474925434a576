//! Dense linear algebra over ℚ, just enough for minimal polynomials,
//! change of basis and fixed subspaces.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::{Int, Rat};

pub type Matrix = Vec<Vec<Rat>>;

/// Reduced row echelon form in place; returns the pivot columns.
///
/// Rows are cleared to integers and eliminated fraction-free, dividing each
/// row by its content as it changes; pivots are normalized to 1 at the end.
pub fn rref(m: &mut Matrix) -> Vec<usize> {
    let cols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Int>> = m.iter().map(|row| primitive_row(row)).collect();
    let rows = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // the smallest pivot keeps the entries small
        let Some(piv) = (r..rows).filter(|&i| !a[i][c].is_zero()).min_by_key(|&i| a[i][c].bits()) else {
            continue;
        };
        a.swap(r, piv);
        let (head, tail) = a.split_at_mut(r);
        let (prow, tail) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&prow[c]);
            let f = &prow[c] / &g;
            let k = &row[c] / &g;
            for (x, y) in row.iter_mut().zip(prow.iter()) {
                *x = &*x * &f - &k * y;
            }
            divide_content(row);
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    *m = a
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let p = row[pc].clone();
            row.into_iter().map(|x| Rat::new(x, p.clone())).collect()
        })
        .collect();
    pivots
}

fn primitive_row(row: &[Rat]) -> Vec<Int> {
    let den = row.iter().fold(Int::one(), |l, x| l.lcm(x.denom()));
    let mut out: Vec<Int> = row.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    divide_content(&mut out);
    out
}

fn divide_content(row: &mut [Int]) {
    let g = row.iter().fold(Int::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x /= &g;
        }
    }
}

/// Basis of `{v : m·v = 0}` in canonical form (reduced echelon basis of the
/// kernel, one vector per free column, free entry 1).
pub fn nullspace(m: &Matrix, cols: usize) -> Vec<Vec<Rat>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![Rat::zero(); cols];
            v[fc] = Rat::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc].clone();
            }
            v
        })
        .collect()
}

/// Solves `A x = b` for every right-hand side, where the columns of `A` are
/// `cols` (each of length n) and must be linearly independent. `None` if some
/// right-hand side is outside the column span.
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = cols.first().map_or(0, Vec::len);
    let k = cols.len();
    let mut aug: Matrix = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = cols.iter().map(|c| c[i].clone()).collect();
            row.extend(rhs.iter().map(|b| b[i].clone()));
            row
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.iter().take_while(|&&p| p < k).count() != k || pivots.iter().any(|&p| p >= k) {
        return None;
    }
    Some(
        (0..rhs.len())
            .map(|j| (0..k).map(|i| aug[i][k + j].clone()).collect())
            .collect(),
    )
}

/// Incremental detector of the first linear dependency in a sequence of
/// vectors. Each pushed vector is reduced against the stored ones while its
/// combination coefficients are tracked.
pub struct Dependency {
    // (reduced vector, pivot column, combination of the inputs)
    rows: Vec<(Vec<Rat>, usize, Vec<Rat>)>,
    count: usize,
}

impl Dependency {
    pub fn new() -> Dependency {
        Dependency { rows: Vec::new(), count: 0 }
    }

    /// Adds the next vector. Returns coefficients `c` (one per vector pushed
    /// so far, the last equal to 1) with `Σ cᵢ vᵢ = 0` if it became dependent.
    pub fn push(&mut self, v: Vec<Rat>) -> Option<Vec<Rat>> {
        let idx = self.count;
        self.count += 1;
        let mut v = v;
        let mut comb = vec![Rat::zero(); idx + 1];
        comb[idx] = Rat::one();
        for (row, pc, rc) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let k = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
            for (x, y) in comb.iter_mut().zip(rc) {
                if !y.is_zero() {
                    *x -= &k * y;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(comb),
            Some(pc) => {
                let inv = v[pc].recip();
                for x in v.iter_mut() {
                    *x *= &inv;
                }
                for x in comb.iter_mut() {
                    *x *= &inv;
                }
                self.rows.push((v, pc, comb));
                None
            }
        }
    }
}

impl Default for Dependency {
    fn default() -> Self {
        Dependency::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat(x, 1)).collect())
            .collect()
    }

    #[test]
    fn nullspace_of_rank_one() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ns = nullspace(&a, 3);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for row in &a {
                let dot: Rat = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn solve_and_dependency() {
        let cols = vec![vec![rat(1, 1), rat(1, 1)], vec![rat(1, 1), rat(-1, 1)]];
        let sol = solve_columns(&cols, &[vec![rat(3, 1), rat(1, 1)]]).unwrap();
        assert_eq!(sol[0], vec![rat(2, 1), rat(1, 1)]);
        assert!(solve_columns(&[vec![rat(1, 1), rat(1, 1)]], &[vec![rat(1, 1), rat(0, 1)]]).is_none());

        let mut d = Dependency::new();
        assert!(d.push(vec![rat(1, 1), rat(0, 1)]).is_none());
        assert!(d.push(vec![rat(1, 1), rat(1, 1)]).is_none());
        let c = d.push(vec![rat(3, 1), rat(2, 1)]).unwrap();
        assert_eq!(c, vec![rat(-1, 1), rat(-2, 1), rat(1, 1)]);
    }
}
