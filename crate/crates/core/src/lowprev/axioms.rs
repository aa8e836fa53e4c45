//! Randomized check of the lower-prevision axioms on a natural extension.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::NaturalExtension;
use crate::assessment::AssessmentSet;
use crate::error::ModelError;
use crate::rational::{format_rational, Rational};
use crate::sample::{self, SuiteRng};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }

    pub fn total_checked(&self) -> usize {
        self.checks.iter().map(|c| c.checked).sum()
    }

    pub fn violations(&self) -> impl Iterator<Item = (&'static str, &String)> {
        self.checks.iter().flat_map(|c| c.violations.iter().map(move |v| (c.name, v)))
    }
}

pub const AXIOMS: [&str; 7] = [
    "LP1 bounds",
    "LP2 non-negative homogeneity",
    "LP3 superadditivity",
    "LP4 generalised Bayes rule",
    "LP5 uniform continuity",
    "LP6 constant additivity",
    "LP7 lower below upper",
];

/// Runs every axiom on `samples` random `(f, g, A, B)` draws.
pub fn lp_axiom_suite(set: &AssessmentSet, samples: usize, rng: &mut SuiteRng) -> Result<AxiomReport, ModelError> {
    let ne = NaturalExtension::new(set)?;
    let space = set.space();
    let mut checks: Vec<AxiomCheck> =
        AXIOMS.iter().map(|&name| AxiomCheck { name, checked: 0, violations: Vec::new() }).collect();
    let mut record = |idx: usize, ok: bool, detail: &dyn Fn() -> String| {
        checks[idx].checked += 1;
        if !ok {
            checks[idx].violations.push(detail());
        }
    };
    let fmt = format_rational;
    for _ in 0..samples {
        let f = sample::gamble(rng, space, 4);
        let g = sample::gamble(rng, space, 4);
        let b = sample::event(rng, space);
        let a = sample::event(rng, space);
        let lower = |h: &crate::space::Gamble, e: &crate::space::Event| ne.lower(h, e).expect("same space");
        let ef = lower(&f, &b);

        let (lo, hi) = (f.min_on(&b), f.max_on(&b));
        record(0, lo <= ef && ef <= hi, &|| format!("E({f:?}|{b}) = {} outside [{}, {}]", fmt(&ef), fmt(&lo), fmt(&hi)));

        let scale = if rng.gen_bool(0.2) {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(rng.gen_range(1..=6)), BigInt::from(rng.gen_range(1..=4)))
        };
        let scaled = lower(&f.scale(&scale), &b);
        record(1, scaled == &scale * &ef, &|| format!("E({}·{f:?}|{b}) = {}", fmt(&scale), fmt(&scaled)));

        let eg = lower(&g, &b);
        let sum = lower(&(&f + &g), &b);
        record(2, sum >= &ef + &eg, &|| format!("E(f+g|{b}) = {} < {} + {}", fmt(&sum), fmt(&ef), fmt(&eg)));

        if let Some(ab) = a.intersect(&b) {
            let inner = lower(&f, &ab);
            let gbr = lower(&f.shift(&-&inner).restricted_to(&b), &a);
            record(3, gbr.is_zero(), &|| format!("E(I_B[f - E(f|A∩B)]|A) = {} for f={f:?}, A={a}, B={b}", fmt(&gbr)));
        }

        let delta = sample::gamble(rng, space, 1).scale(&Rational::new(1.into(), 3.into()));
        let bound = delta.values().iter().map(|v| v.abs()).max().expect("non-empty");
        let moved = lower(&(&f + &delta), &b);
        record(4, (&moved - &ef).abs() <= bound, &|| format!("|E(f+δ|B) - E(f|B)| = {} > {}", fmt(&(&moved - &ef).abs()), fmt(&bound)));

        let c = Rational::new(BigInt::from(rng.gen_range(-10..=10)), BigInt::from(rng.gen_range(1..=3)));
        let shifted = lower(&f.shift(&c), &b);
        record(5, shifted == &ef + &c, &|| format!("E(f+{}|B) = {} ≠ {} + c", fmt(&c), fmt(&shifted), fmt(&ef)));

        let upper = -lower(&-&f, &b);
        record(6, ef <= upper, &|| format!("E(f|B) = {} > upper {}", fmt(&ef), fmt(&upper)));
    }
    Ok(AxiomReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;
    use crate::space::{Event, Space};

    #[test]
    fn vacuous_model_satisfies_every_axiom() {
        let s = Space::new(["a", "b", "c"]).unwrap();
        let mut rng = sample::rng(1);
        let report = lp_axiom_suite(&AssessmentSet::vacuous(&s), 40, &mut rng).unwrap();
        assert!(report.passed(), "{:?}", report.violations().collect::<Vec<_>>());
        assert!(report.checks[3].checked > 0);
    }

    #[test]
    fn interval_model_satisfies_every_axiom() {
        let s = Space::new(["a", "b"]).unwrap();
        let ia = Event::from_labels(&s, ["a"]).unwrap().indicator();
        let set = AssessmentSet::vacuous(&s).with(ia, s.full_event(), q(3, 10)).unwrap();
        let mut rng = sample::rng(2);
        let report = lp_axiom_suite(&set, 40, &mut rng).unwrap();
        assert!(report.passed(), "{:?}", report.violations().collect::<Vec<_>>());
    }

    #[test]
    fn constant_shift_and_zero_gamble() {
        let s = Space::new(["a", "b"]).unwrap();
        let ia = Event::from_labels(&s, ["a"]).unwrap().indicator();
        let set = AssessmentSet::vacuous(&s).with(ia.clone(), s.full_event(), q(3, 10)).unwrap();
        let ne = NaturalExtension::new(&set).unwrap();
        let full = s.full_event();
        let five = Rational::from_integer(5.into());
        assert_eq!(ne.lower(&ia.shift(&five), &full).unwrap(), q(3, 10) + &five);
        assert_eq!(ne.lower(&s.zero_gamble(), &full).unwrap(), Rational::zero());
    }
}
