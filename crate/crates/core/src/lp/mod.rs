//! A small dense linear-programming backend.
//!
//! Exact two-phase simplex with Bland's rule over [`Rational`]; the pivot
//! rule is fixed, so a given program always produces the same witness.
//! An `f64` instantiation of the same code is available for timing runs
//! and is never used for verdicts.

mod scalar;
mod simplex;

pub use scalar::Scalar;

use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Maximize,
    Minimize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarBounds {
    pub lower: Option<Rational>,
    pub upper: Option<Rational>,
}

/// `optimize objective . x` subject to row constraints and variable bounds.
/// Variables default to `x >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearProgram {
    num_vars: usize,
    sense: Sense,
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
    bounds: Vec<VarBounds>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome<S = Rational> {
    Optimal { value: S, witness: Vec<S> },
    Infeasible,
    Unbounded,
}

impl<S> LpOutcome<S> {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpOutcome::Optimal { .. })
    }

    pub fn value(&self) -> Option<&S> {
        match self {
            LpOutcome::Optimal { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn witness(&self) -> Option<&[S]> {
        match self {
            LpOutcome::Optimal { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Vec<Rational>),
    Infeasible,
}

impl LinearProgram {
    pub fn new(num_vars: usize, sense: Sense) -> Self {
        let zero_lower = VarBounds { lower: Some(Rational::from_integer(0.into())), upper: None };
        LinearProgram {
            num_vars,
            sense,
            objective: vec![Rational::from_integer(0.into()); num_vars],
            constraints: Vec::new(),
            bounds: vec![zero_lower; num_vars],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[VarBounds] {
        &self.bounds
    }

    pub fn set_objective(&mut self, coeffs: Vec<Rational>) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "objective arity");
        self.objective = coeffs;
        self
    }

    pub fn set_objective_coeff(&mut self, var: usize, coeff: Rational) -> &mut Self {
        self.objective[var] = coeff;
        self
    }

    pub fn add_constraint(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars, "constraint arity");
        self.constraints.push(Constraint { coeffs, relation, rhs });
        self
    }

    pub fn set_bounds(&mut self, var: usize, lower: Option<Rational>, upper: Option<Rational>) -> &mut Self {
        self.bounds[var] = VarBounds { lower, upper };
        self
    }

    pub fn set_free(&mut self, var: usize) -> &mut Self {
        self.set_bounds(var, None, None)
    }

    /// Exact solve. Every optimal witness is re-checked against all rows
    /// and bounds before it is returned.
    pub fn solve(&self) -> LpOutcome {
        let outcome = simplex::solve::<Rational>(self);
        if let LpOutcome::Optimal { value, witness } = &outcome {
            assert!(self.is_satisfied_by(witness), "simplex returned a witness violating the program");
            assert_eq!(&self.objective_at(witness), value, "simplex objective mismatch");
        }
        outcome
    }

    /// Floating-point solve of the same program; timing only.
    pub fn solve_inexact(&self) -> LpOutcome<f64> {
        simplex::solve::<f64>(self)
    }

    pub fn feasible(&self) -> Feasibility {
        let mut zero = self.clone();
        zero.objective = vec![Rational::from_integer(0.into()); self.num_vars];
        match zero.solve() {
            LpOutcome::Optimal { witness, .. } => Feasibility::Feasible(witness),
            LpOutcome::Infeasible => Feasibility::Infeasible,
            LpOutcome::Unbounded => unreachable!("zero objective cannot be unbounded"),
        }
    }

    pub fn objective_at(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        if x.len() != self.num_vars {
            return false;
        }
        let rows_ok = self.constraints.iter().all(|c| {
            let lhs: Rational = c.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            match c.relation {
                Relation::Le => lhs <= c.rhs,
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
            }
        });
        let bounds_ok = self.bounds.iter().zip(x).all(|(b, v)| {
            b.lower.as_ref().is_none_or(|l| v >= l) && b.upper.as_ref().is_none_or(|u| v <= u)
        });
        rows_ok && bounds_ok
    }
}
