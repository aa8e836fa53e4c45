//! Seeded random instances for property suites.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::assessment::{AssessmentSet, ConditionalAssessment, ConditioningFamily};
use crate::rational::Rational;
use crate::space::{Event, Gamble, Space};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    rand::SeedableRng::seed_from_u64(seed)
}

/// Outcome labels `x0, x1, ...` (or a custom prefix).
pub fn space(prefix: &str, size: usize) -> Space {
    Space::new((0..size).map(|i| format!("{prefix}{i}"))).expect("distinct labels")
}

/// A rational with denominator at most `max_den` in `[lo, hi]`.
pub fn rational_between(rng: &mut SuiteRng, lo: &Rational, hi: &Rational, max_den: i64) -> Rational {
    if lo >= hi {
        return lo.clone();
    }
    let den = rng.gen_range(1..=max_den);
    let den_big = BigInt::from(den);
    let lo_num = (lo * Rational::from_integer(den_big.clone())).ceil().to_integer();
    let hi_num = (hi * Rational::from_integer(den_big.clone())).floor().to_integer();
    if lo_num > hi_num {
        return if rng.gen_bool(0.5) { lo.clone() } else { hi.clone() };
    }
    let span: BigInt = &hi_num - &lo_num;
    let span = i64::try_from(span).unwrap_or(i64::MAX / 2);
    let pick = lo_num + BigInt::from(rng.gen_range(0..=span));
    Rational::new(pick, den_big)
}

/// A gamble with small integer or half-integer values.
pub fn gamble(rng: &mut SuiteRng, space: &Space, range: i64) -> Gamble {
    let values = (0..space.len())
        .map(|_| {
            let den = if rng.gen_bool(0.25) { 2 } else { 1 };
            Rational::new(BigInt::from(rng.gen_range(-range * den..=range * den)), BigInt::from(den))
        })
        .collect();
    Gamble::new(space, values).expect("arity")
}

pub fn nonnegative_gamble(rng: &mut SuiteRng, space: &Space, range: i64) -> Gamble {
    let values = (0..space.len())
        .map(|_| Rational::from_integer(BigInt::from(rng.gen_range(0..=range))))
        .collect();
    Gamble::new(space, values).expect("arity")
}

pub fn event(rng: &mut SuiteRng, space: &Space) -> Event {
    loop {
        let mask: Vec<bool> = (0..space.len()).map(|_| rng.gen_bool(0.6)).collect();
        if let Ok(e) = Event::from_mask(space, mask) {
            return e;
        }
    }
}

/// Indicators, general gambles and conditional events in a mix that keeps
/// instances readable.
pub fn assessment(rng: &mut SuiteRng, space: &Space, conditional: bool) -> ConditionalAssessment {
    let gamble = if rng.gen_bool(0.4) { event(rng, space).indicator() } else { self::gamble(rng, space, 3) };
    let event = if conditional && rng.gen_bool(0.4) { self::event(rng, space) } else { space.full_event() };
    let lo = gamble.min_on(&event);
    let hi = gamble.max_on(&event);
    let bound = rational_between(rng, &lo, &hi, 20);
    ConditionalAssessment::new(gamble, event, bound).expect("bound within range")
}

/// An unfiltered assessment set (coherent or not).
pub fn assessment_set(rng: &mut SuiteRng, space: &Space, count: usize, conditional: bool) -> AssessmentSet {
    let mut set = AssessmentSet::vacuous(space);
    for _ in 0..count {
        set.push(assessment(rng, space, conditional)).expect("same space");
    }
    set
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Rejections {
    pub attempts: usize,
    pub rejected: usize,
}

/// Rejection-samples a coherent assessment set, adding assessments one at a
/// time; an assessment that cannot be made coherent within `retries`
/// attempts is skipped.
pub fn coherent_set(
    rng: &mut SuiteRng,
    space: &Space,
    count: usize,
    conditional: bool,
    retries: usize,
    stats: &mut Rejections,
) -> AssessmentSet {
    let mut set = AssessmentSet::vacuous(space);
    for _ in 0..count {
        for _ in 0..retries {
            stats.attempts += 1;
            let mut candidate = set.clone();
            candidate.push(assessment(rng, space, conditional)).expect("same space");
            if candidate.len() == set.len() {
                stats.rejected += 1;
                continue;
            }
            if crate::lowprev::check_coherence(&candidate).is_coherent() {
                set = candidate;
                break;
            }
            stats.rejected += 1;
        }
    }
    set
}

/// A random mass function with denominators dividing `den`.
pub fn mass_function(rng: &mut SuiteRng, size: usize, den: i64, full_support: bool) -> Vec<Rational> {
    let floor = i64::from(full_support);
    let budget = den - floor * size as i64;
    assert!(budget >= 0, "denominator too small for full support");
    let mut cuts: Vec<i64> = (0..size - 1).map(|_| rng.gen_range(0..=budget)).collect();
    cuts.push(0);
    cuts.push(budget);
    cuts.sort_unstable();
    cuts.windows(2)
        .map(|w| Rational::new(BigInt::from(w[1] - w[0] + floor), BigInt::from(den)))
        .collect()
}

pub fn family(rng: &mut SuiteRng, space: &Space, max_events: usize) -> ConditioningFamily {
    let count = rng.gen_range(0..=max_events);
    let events: Vec<Event> = (0..count).map(|_| event(rng, space)).collect();
    ConditioningFamily::new(space, events).expect("same space")
}

/// One of the presets or a random family, to vary the joint structure.
pub fn family_mix(rng: &mut SuiteRng, space: &Space) -> ConditioningFamily {
    match rng.gen_range(0..5) {
        0 => ConditioningFamily::empty(space),
        1 => ConditioningFamily::singletons(space),
        2 => ConditioningFamily::all_subsets(space).expect("small space"),
        _ => family(rng, space, 3),
    }
}

/// A simple measurable gamble `c0 + Σ c_i I_{B_i}` over family events.
pub fn measurable_gamble(rng: &mut SuiteRng, family: &ConditioningFamily, max_terms: usize) -> Gamble {
    let space = family.space();
    let mut g = space.constant(Rational::from_integer(BigInt::from(rng.gen_range(0..=2))));
    if family.is_empty() {
        return g;
    }
    for _ in 0..rng.gen_range(0..=max_terms) {
        let e = family.events().choose(rng).expect("non-empty family");
        let c = Rational::from_integer(BigInt::from(rng.gen_range(1..=3)));
        g = &g + &e.indicator().scale(&c);
    }
    g
}
