//! Exact rational linear-programming feasibility.
//!
//! A dense phase-1 simplex over `BigRational` with Bland's rule. Problem
//! sizes here are tiny (tens of variables and constraints), so simplicity
//! and guaranteed termination win over sparse cleverness.

use crate::exact::Rat;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rel {
    Ge,
    Eq,
}

/// One linear constraint `coeffs . x REL rhs` over free variables.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl Constraint {
    pub fn ge(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Ge,
            rhs,
        }
    }

    pub fn eq(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Constraint {
            coeffs,
            rel: Rel::Eq,
            rhs,
        }
    }
}

/// Find any exact rational point satisfying all constraints, or `None`
/// when the system is infeasible. Variables are unrestricted in sign.
pub fn feasible(constraints: &[Constraint], num_vars: usize) -> Option<Vec<Rat>> {
    // Standard form: split free variables into differences of nonnegative
    // ones, add slack for inequalities, then phase-1 with artificials.
    let n_struct = 2 * num_vars;
    let n_slack = constraints.iter().filter(|c| c.rel == Rel::Ge).count();
    let m = constraints.len();
    if m == 0 {
        return Some(vec![Rat::zero(); num_vars]);
    }
    let n_total = n_struct + n_slack + m;

    // Tableau rows: [A | b], one artificial per row, rhs made nonnegative.
    let mut tab: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut slack_idx = 0;
    for (ri, c) in constraints.iter().enumerate() {
        assert_eq!(c.coeffs.len(), num_vars, "constraint width mismatch");
        let mut row = vec![Rat::zero(); n_total + 1];
        for (j, a) in c.coeffs.iter().enumerate() {
            row[2 * j] = a.clone();
            row[2 * j + 1] = -a.clone();
        }
        if c.rel == Rel::Ge {
            row[n_struct + slack_idx] = -Rat::one();
            slack_idx += 1;
        }
        row[n_total] = c.rhs.clone();
        if row[n_total].is_negative() {
            for v in row.iter_mut() {
                *v = -v.clone();
            }
        }
        row[n_struct + n_slack + ri] = Rat::one();
        tab.push(row);
    }

    // Objective: minimize the sum of artificials. Maintain reduced costs.
    let mut basis: Vec<usize> = (0..m).map(|i| n_struct + n_slack + i).collect();
    let mut obj = vec![Rat::zero(); n_total + 1];
    for row in &tab {
        for (j, v) in row.iter().enumerate() {
            obj[j] -= v;
        }
    }
    // Artificial columns have zero reduced cost in the initial basis.
    for i in 0..m {
        obj[n_struct + n_slack + i] = Rat::zero();
    }

    loop {
        // Bland: entering column = lowest index with negative reduced cost.
        let Some(enter) = (0..n_total).find(|&j| obj[j].is_negative()) else {
            break;
        };
        // Ratio test, ties by lowest basis variable index (Bland).
        let mut leave: Option<(usize, Rat)> = None;
        for (i, row) in tab.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[n_total] / &row[enter];
            let better = match &leave {
                None => true,
                Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
            };
            if better {
                leave = Some((i, ratio));
            }
        }
        // Phase-1 is bounded below by zero, so a pivot row exists.
        let (li, _) = leave?;
        pivot(&mut tab, &mut obj, li, enter, n_total);
        basis[li] = enter;
    }

    // Feasible iff all artificials are at value zero.
    let total: Rat = tab
        .iter()
        .enumerate()
        .filter(|(i, _)| basis[*i] >= n_struct + n_slack)
        .map(|(_, row)| row[n_total].clone())
        .sum();
    if !total.is_zero() {
        return None;
    }

    let mut x = vec![Rat::zero(); n_total];
    for (i, &b) in basis.iter().enumerate() {
        x[b] = tab[i][n_total].clone();
    }
    Some(
        (0..num_vars)
            .map(|j| &x[2 * j] - &x[2 * j + 1])
            .collect(),
    )
}

fn pivot(tab: &mut [Vec<Rat>], obj: &mut [Rat], li: usize, enter: usize, width: usize) {
    let p = tab[li][enter].clone();
    for v in tab[li].iter_mut() {
        *v = &*v / &p;
    }
    for i in 0..tab.len() {
        if i == li || tab[i][enter].is_zero() {
            continue;
        }
        let f = tab[i][enter].clone();
        for j in 0..=width {
            let s = &f * &tab[li][j];
            tab[i][j] -= s;
        }
    }
    if !obj[enter].is_zero() {
        let f = obj[enter].clone();
        for j in 0..=width {
            let s = &f * &tab[li][j];
            obj[j] -= s;
        }
    }
}
