//! Dense two-phase tableau simplex with Bland's anti-cycling rule.

use super::{LinearProgram, LpOutcome, Relation, Scalar, Sense};

/// How an original variable is expressed through non-negative columns.
enum Column {
    Shift(usize),          // x = lower + y
    Reflect(usize),        // x = upper - y
    Split(usize, usize),   // x = y+ - y-
}

struct Tableau<S> {
    rows: Vec<Vec<S>>,
    basis: Vec<usize>,
    cost: Vec<S>,
    width: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl<S: Scalar> Tableau<S> {
    fn rhs(&self, i: usize) -> &S {
        &self.rows[i][self.width]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = S::one().div(&self.rows[r][c]);
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        let support: Vec<usize> = (0..=self.width).filter(|&j| !self.rows[r][j].is_zero()).collect();
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                row[j] = row[j].sub(&factor.mul(&pivot_row[j]));
            }
        }
        if !self.cost[c].is_zero() {
            let factor = self.cost[c].clone();
            for &j in &support {
                self.cost[j] = self.cost[j].sub(&factor.mul(&pivot_row[j]));
            }
        }
        self.basis[r] = c;
    }

    /// Sets the reduced-cost row for objective `c` (minimization) given the
    /// current canonical basis.
    fn price(&mut self, c: &[S]) {
        let mut cost: Vec<S> = c.to_vec();
        cost.push(S::zero());
        for (i, &b) in self.basis.iter().enumerate() {
            if c[b].is_zero() {
                continue;
            }
            for j in 0..=self.width {
                if !self.rows[i][j].is_zero() {
                    cost[j] = cost[j].sub(&c[b].mul(&self.rows[i][j]));
                }
            }
        }
        self.cost = cost;
    }

    fn run(&mut self, allowed: usize) -> Step {
        loop {
            let Some(enter) = (0..allowed).find(|&j| self.cost[j].is_negative()) else {
                return Step::Optimal;
            };
            let mut leave: Option<(usize, S)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][enter];
                if !a.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i).div(a);
                let better = match &leave {
                    None => true,
                    Some((k, best)) => {
                        ratio.less_than(best) || (!best.less_than(&ratio) && self.basis[i] < self.basis[*k])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, enter),
                None => return Step::Unbounded,
            }
        }
    }
}

pub(super) fn solve<S: Scalar>(lp: &LinearProgram) -> LpOutcome<S> {
    // Map original variables onto non-negative structural columns.
    let mut columns = Vec::with_capacity(lp.num_vars);
    let mut n_struct = 0;
    let mut extra_rows: Vec<(usize, S)> = Vec::new(); // y_col <= bound
    for b in &lp.bounds {
        match (&b.lower, &b.upper) {
            (Some(l), upper) => {
                columns.push(Column::Shift(n_struct));
                if let Some(u) = upper {
                    extra_rows.push((n_struct, S::from_rational(u).sub(&S::from_rational(l))));
                }
                n_struct += 1;
            }
            (None, Some(_)) => {
                columns.push(Column::Reflect(n_struct));
                n_struct += 1;
            }
            (None, None) => {
                columns.push(Column::Split(n_struct, n_struct + 1));
                n_struct += 2;
            }
        }
    }

    // Rows over structural columns: (coeffs, relation, rhs).
    let mut rows: Vec<(Vec<S>, Relation, S)> = Vec::new();
    for con in &lp.constraints {
        let mut coeffs = vec![S::zero(); n_struct];
        let mut rhs = S::from_rational(&con.rhs);
        for (j, a) in con.coeffs.iter().enumerate() {
            if num_traits::Zero::is_zero(a) {
                continue;
            }
            let a = S::from_rational(a);
            match columns[j] {
                Column::Shift(c) => {
                    coeffs[c] = a.clone();
                    let l = S::from_rational(lp.bounds[j].lower.as_ref().expect("shift has lower"));
                    rhs = rhs.sub(&a.mul(&l));
                }
                Column::Reflect(c) => {
                    coeffs[c] = a.neg();
                    let u = S::from_rational(lp.bounds[j].upper.as_ref().expect("reflect has upper"));
                    rhs = rhs.sub(&a.mul(&u));
                }
                Column::Split(p, m) => {
                    coeffs[p] = a.clone();
                    coeffs[m] = a.neg();
                }
            }
        }
        rows.push((coeffs, con.relation, rhs));
    }
    for (c, bound) in extra_rows {
        let mut coeffs = vec![S::zero(); n_struct];
        coeffs[c] = S::one();
        rows.push((coeffs, Relation::Le, bound));
    }

    let m = rows.len();
    let n_slack = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    // Artificial columns are assigned lazily, one per row lacking a unit slack.
    let mut needs_artificial = vec![false; m];
    let mut slack_sign = vec![None; m];
    let mut slack_index = 0;
    for (i, (coeffs, rel, rhs)) in rows.iter_mut().enumerate() {
        let mut sign = match rel {
            Relation::Le => Some(true),
            Relation::Ge => Some(false),
            Relation::Eq => None,
        };
        if rhs.is_negative() {
            for v in coeffs.iter_mut() {
                *v = v.neg();
            }
            *rhs = rhs.neg();
            sign = sign.map(|s| !s);
        }
        if let Some(positive) = sign {
            slack_sign[i] = Some((n_struct + slack_index, positive));
            slack_index += 1;
        }
        needs_artificial[i] = !matches!(sign, Some(true));
    }
    let n_art = needs_artificial.iter().filter(|&&a| a).count();
    let width = n_struct + n_slack + n_art;

    let mut tab_rows = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut art = n_struct + n_slack;
    for (i, (coeffs, _, rhs)) in rows.into_iter().enumerate() {
        let mut row = coeffs;
        row.resize(width + 1, S::zero());
        if let Some((col, positive)) = slack_sign[i] {
            row[col] = if positive { S::one() } else { S::one().neg() };
            if positive {
                basis.push(col);
            }
        }
        if needs_artificial[i] {
            row[art] = S::one();
            basis.push(art);
            art += 1;
        }
        row[width] = rhs;
        tab_rows.push(row);
    }

    let mut tab = Tableau { rows: tab_rows, basis, cost: Vec::new(), width };
    let first_art = n_struct + n_slack;

    if n_art > 0 {
        let phase1: Vec<S> = (0..width).map(|j| if j >= first_art { S::one() } else { S::zero() }).collect();
        tab.price(&phase1);
        if let Step::Unbounded = tab.run(width) {
            unreachable!("phase one is bounded below by zero");
        }
        if tab.cost[width].is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= first_art {
                if let Some(c) = (0..first_art).find(|&j| !tab.rows[i][j].is_zero()) {
                    tab.pivot(i, c);
                } else {
                    tab.rows.remove(i);
                    tab.basis.remove(i);
                    continue;
                }
            }
            i += 1;
        }
    }

    // Phase two: minimize, artificial columns barred from entering.
    let flip = lp.sense == Sense::Maximize;
    let mut cost = vec![S::zero(); width];
    for (j, c) in lp.objective.iter().enumerate() {
        let c = S::from_rational(c);
        let c = if flip { c.neg() } else { c };
        match columns[j] {
            Column::Shift(k) => cost[k] = c,
            Column::Reflect(k) => cost[k] = c.neg(),
            Column::Split(p, q) => {
                cost[p] = c.clone();
                cost[q] = c.neg();
            }
        }
    }
    tab.price(&cost);
    if let Step::Unbounded = tab.run(first_art) {
        return LpOutcome::Unbounded;
    }

    let mut y = vec![S::zero(); width];
    for (i, &b) in tab.basis.iter().enumerate() {
        y[b] = tab.rhs(i).clone();
    }
    let witness: Vec<S> = columns
        .iter()
        .enumerate()
        .map(|(j, col)| match *col {
            Column::Shift(k) => S::from_rational(lp.bounds[j].lower.as_ref().unwrap()).add(&y[k]),
            Column::Reflect(k) => S::from_rational(lp.bounds[j].upper.as_ref().unwrap()).sub(&y[k]),
            Column::Split(p, q) => y[p].sub(&y[q]),
        })
        .collect();
    let value = lp
        .objective
        .iter()
        .zip(&witness)
        .fold(S::zero(), |acc, (c, v)| acc.add(&S::from_rational(c).mul(v)));
    LpOutcome::Optimal { value, witness }
}
