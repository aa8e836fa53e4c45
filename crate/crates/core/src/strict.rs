//! Cones whose generators carry a strict called-off price.
//!
//! A generator `(a, s)` contributes every gamble `a + δ s` with `δ > 0`,
//! where `s ≥ 0` is the indicator of the region on which the price is
//! strict. For an assessment `P(f|B)` this is `a = [f - P(f|B)] I_B`,
//! `s = I_B`: the gambles `[f - μ] I_B` for every `μ < P(f|B)`.
//!
//! Closing the bounds (`δ = 0`) is not harmless: a combination that is only
//! weakly non-positive on the strict region of one of its generators can make
//! the closed program unbounded although no strict combination exists. Both
//! queries below therefore prune generators whose strict region cannot be
//! made strictly favourable, then solve the closed program on what is left.

use num_traits::{One, Signed, Zero};

use crate::cone::closed_lower_value;
use crate::lp::{LinearProgram, Relation, Sense};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictGenerator {
    pub payoff: Vec<Rational>,
    pub strict_on: Vec<bool>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrictCone {
    dim: usize,
    generators: Vec<StrictGenerator>,
}

/// Partial-loss certificate: `ν ≥ 0`, `Σ ν = 1`, and `Σ ν_k a_k + margin · Σ ν_k s_k ≤ 0`
/// with `margin > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LossCertificate {
    pub weights: Vec<Rational>,
    pub margin: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrictValue {
    /// The supremum, with the weights of a closed combination attaining it
    /// and the generators that remained usable.
    Finite { value: Rational, weights: Vec<Rational>, usable: Vec<usize> },
    Unbounded,
}

impl StrictValue {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            StrictValue::Finite { value, .. } => Some(value),
            StrictValue::Unbounded => None,
        }
    }
}

impl StrictCone {
    pub fn new(dim: usize) -> Self {
        StrictCone { dim, generators: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[StrictGenerator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Adds a generator. Generators that are pointwise `≥ 0` are dropped:
    /// they are absorbed by the non-negative slack.
    pub fn push(&mut self, payoff: Vec<Rational>, strict_on: Vec<bool>) -> bool {
        assert_eq!(payoff.len(), self.dim);
        assert_eq!(strict_on.len(), self.dim);
        if payoff.iter().all(|v| !v.is_negative()) {
            return false;
        }
        self.generators.push(StrictGenerator { payoff, strict_on });
        true
    }

    fn prune(&self, usable: &[usize], positive: &[bool]) -> Vec<usize> {
        usable
            .iter()
            .copied()
            .filter(|&k| {
                self.generators[k].strict_on.iter().zip(positive).all(|(&s, &p)| !s || p)
            })
            .collect()
    }

    /// Strict partial loss: some non-zero `ν ≥ 0` with `Σ ν_k a_k < 0` on the
    /// union of the strict regions of its support and `≤ 0` elsewhere.
    pub fn partial_loss(&self) -> Option<LossCertificate> {
        let mut usable: Vec<usize> = (0..self.generators.len()).collect();
        let mut strict_weights;
        loop {
            let columns: Vec<Vec<Rational>> = usable
                .iter()
                .map(|&k| self.generators[k].payoff.iter().map(|v| -v).collect())
                .collect();
            let (positive, weights) = positive_support(&columns, self.dim);
            let next = self.prune(&usable, &positive);
            if next.len() == usable.len() {
                strict_weights = vec![Rational::zero(); self.generators.len()];
                for (w, &k) in weights.iter().zip(&usable) {
                    strict_weights[k] = w.clone();
                }
                break;
            }
            usable = next;
        }
        if usable.is_empty() {
            return None;
        }
        // Any closed non-positive combination over the survivors can be added
        // without losing strictness, which also covers generators whose strict
        // region is empty.
        let mut lp = LinearProgram::new(usable.len(), Sense::Minimize);
        for x in 0..self.dim {
            let row = usable.iter().map(|&k| self.generators[k].payoff[x].clone()).collect();
            lp.add_constraint(row, Relation::Le, Rational::zero());
        }
        lp.add_constraint(vec![Rational::one(); usable.len()], Relation::Eq, Rational::one());
        let closed = lp.solve();
        let closed = closed.witness()?;
        let mut weights = strict_weights;
        for (w, &k) in closed.iter().zip(&usable) {
            weights[k] += w;
        }
        let total: Rational = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= &total;
        }
        let margin = self.loss_margin(&weights);
        debug_assert!(margin.is_positive());
        Some(LossCertificate { weights, margin })
    }

    /// Largest `t` with `Σ ν_k (a_k + t s_k) ≤ 0`; one when no strict region is touched.
    fn loss_margin(&self, weights: &[Rational]) -> Rational {
        let mut margin: Option<Rational> = None;
        for x in 0..self.dim {
            let mut combo = Rational::zero();
            let mut strict = Rational::zero();
            for (g, w) in self.generators.iter().zip(weights) {
                if w.is_zero() {
                    continue;
                }
                combo += w * &g.payoff[x];
                if g.strict_on[x] {
                    strict += w;
                }
            }
            if strict.is_positive() {
                let t = -combo / strict;
                margin = Some(match margin {
                    Some(m) if m < t => m,
                    _ => t,
                });
            }
        }
        margin.unwrap_or_else(Rational::one)
    }

    /// `sup { μ : [f - μ] I_B ∈ E(A) }` for the strict generator set.
    pub fn lower_value(&self, f: &[Rational], event: &[bool]) -> StrictValue {
        assert_eq!(f.len(), self.dim);
        assert_eq!(event.len(), self.dim);
        let mut usable: Vec<usize> = (0..self.generators.len()).collect();
        loop {
            let payoffs: Vec<&[Rational]> =
                usable.iter().map(|&k| self.generators[k].payoff.as_slice()).collect();
            let closed = closed_lower_value(&payoffs, f, event);
            // The set of points that can be given strictly positive slack is
            // the same for every μ below the closed optimum.
            let probe = match &closed {
                Some((v, _)) => v - Rational::one(),
                None => Rational::zero(),
            };
            let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(usable.len() + 1);
            columns.push(
                f.iter()
                    .zip(event)
                    .map(|(v, &m)| if m { v - &probe } else { Rational::zero() })
                    .collect(),
            );
            columns.extend(usable.iter().map(|&k| self.generators[k].payoff.iter().map(|v| -v).collect()));
            let (positive, _) = positive_support(&columns, self.dim);
            let next = self.prune(&usable, &positive);
            if next.len() == usable.len() {
                return match closed {
                    Some((value, lambda)) => {
                        let mut weights = vec![Rational::zero(); self.generators.len()];
                        for (w, &k) in lambda.into_iter().zip(&usable) {
                            weights[k] = w;
                        }
                        StrictValue::Finite { value, weights, usable }
                    }
                    None => StrictValue::Unbounded,
                };
            }
            usable = next;
        }
    }
}

/// Largest set of points `x` for which some `w ≥ 0` gives `Σ w_k c_k ≥ 0`
/// everywhere and `> 0` at `x`. The cone is closed under addition, so a
/// single program maximizing `Σ σ_x` with `σ ∈ [0, 1]` finds all of them.
pub(crate) fn positive_support(columns: &[Vec<Rational>], dim: usize) -> (Vec<bool>, Vec<Rational>) {
    let k = columns.len();
    let mut lp = LinearProgram::new(k + dim, Sense::Maximize);
    for x in 0..dim {
        lp.set_bounds(k + x, Some(Rational::zero()), Some(Rational::one()));
        lp.set_objective_coeff(k + x, Rational::one());
        let mut row: Vec<Rational> = columns.iter().map(|c| c[x].clone()).collect();
        row.resize(k + dim, Rational::zero());
        row[k + x] = -Rational::one();
        lp.add_constraint(row, Relation::Ge, Rational::zero());
    }
    let witness = lp.solve().witness().expect("bounded and feasible").to_vec();
    let positive = (0..dim).map(|x| witness[k + x].is_one()).collect();
    (positive, witness[..k].to_vec())
}
