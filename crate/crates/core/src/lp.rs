//! Dense exact simplex for problems of the form
//! `maximize c·x subject to A x <= b, x >= 0` with `b >= 0`.
//!
//! The origin is always feasible, so no phase one is needed. Bland's rule
//! guarantees termination.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome<F> {
    Optimal { x: Vec<F>, value: F },
    Unbounded,
}

#[derive(Clone, Debug)]
pub struct LinearProgram<F> {
    pub objective: Vec<F>,
    pub rows: Vec<Vec<F>>,
    pub rhs: Vec<F>,
}

impl<F: Field> LinearProgram<F> {
    pub fn new(objective: Vec<F>) -> Self {
        Self { objective, rows: Vec::new(), rhs: Vec::new() }
    }

    /// Adds `row · x <= rhs`. Panics when `rhs < 0`.
    pub fn add_le(&mut self, row: Vec<F>, rhs: F) {
        assert!(rhs >= F::zero(), "right-hand side must be nonnegative");
        assert_eq!(row.len(), self.objective.len());
        self.rows.push(row);
        self.rhs.push(rhs);
    }

    pub fn solve(&self) -> LpOutcome<F> {
        let n = self.objective.len();
        let m = self.rows.len();
        let width = n + m + 1;
        // Tableau rows: constraints with slack columns, last column = rhs.
        let mut t: Vec<Vec<F>> = Vec::with_capacity(m + 1);
        for (i, row) in self.rows.iter().enumerate() {
            let mut r = Vec::with_capacity(width);
            r.extend(row.iter().cloned());
            r.extend((0..m).map(|j| if j == i { F::one() } else { F::zero() }));
            r.push(self.rhs[i].clone());
            t.push(r);
        }
        // Reduced costs: z - c·x = 0.
        let mut z: Vec<F> = self.objective.iter().map(|c| -c.clone()).collect();
        z.extend((0..=m).map(|_| F::zero()));
        let mut basis: Vec<usize> = (n..n + m).collect();

        loop {
            let Some(enter) = (0..n + m).find(|&j| z[j] < F::zero()) else {
                break;
            };
            let mut leave: Option<(usize, F)> = None;
            for (i, row) in t.iter().enumerate() {
                if row[enter] > F::zero() {
                    let ratio = row[width - 1].clone() / row[enter].clone();
                    let better = match &leave {
                        None => true,
                        Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            let Some((pr, _)) = leave else {
                return LpOutcome::Unbounded;
            };
            let piv = t[pr][enter].clone();
            for v in t[pr].iter_mut() {
                *v = v.clone() / piv.clone();
            }
            let pivot_row = t[pr].clone();
            for (i, row) in t.iter_mut().enumerate() {
                if i == pr || row[enter].is_zero() {
                    continue;
                }
                let f = row[enter].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = v.clone() - f.clone() * p.clone();
                    }
                }
            }
            if !z[enter].is_zero() {
                let f = z[enter].clone();
                for (v, p) in z.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v = v.clone() - f.clone() * p.clone();
                    }
                }
            }
            basis[pr] = enter;
        }

        let mut x = vec![F::zero(); n];
        for (i, &b) in basis.iter().enumerate() {
            if b < n {
                x[b] = t[i][width - 1].clone();
            }
        }
        LpOutcome::Optimal { x, value: z[width - 1].clone() }
    }
}
