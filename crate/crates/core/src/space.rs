//! Finite possibility spaces, events, gambles and two-factor product spaces.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use crate::error::InstanceError;
use crate::rational::{format_rational, Rational};

/// An ordered, non-empty list of distinct outcome labels.
#[derive(Clone)]
pub struct Space {
    labels: Arc<[String]>,
}

impl Space {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self, InstanceError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(InstanceError::EmptySpace);
        }
        for (i, label) in labels.iter().enumerate() {
            if labels[..i].contains(label) {
                return Err(InstanceError::DuplicateLabel(label.clone()));
            }
        }
        Ok(Space { labels: labels.into() })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_event(&self) -> Event {
        Event { space: self.clone(), mask: vec![true; self.len()] }
    }

    /// All singleton events, in outcome order.
    pub fn singletons(&self) -> Vec<Event> {
        (0..self.len())
            .map(|i| Event::from_indices(self, [i]).expect("index in range"))
            .collect()
    }

    /// All non-empty subsets, ordered by their bitmask.
    pub fn all_nonempty_events(&self) -> Vec<Event> {
        let n = self.len();
        assert!(n < 31, "refusing to enumerate the power set of {n} outcomes");
        (1u32..(1 << n))
            .map(|bits| Event {
                space: self.clone(),
                mask: (0..n).map(|i| bits & (1 << i) != 0).collect(),
            })
            .collect()
    }

    pub fn same_as(&self, other: &Space) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }

    pub fn constant(&self, value: Rational) -> Gamble {
        Gamble { space: self.clone(), values: vec![value; self.len()] }
    }

    pub fn zero_gamble(&self) -> Gamble {
        self.constant(Rational::zero())
    }
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Space {}

impl fmt::Debug for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Space{:?}", &*self.labels)
    }
}

/// A non-empty subset of a space.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Event {
    space: Space,
    mask: Vec<bool>,
}

impl std::hash::Hash for Space {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.labels.hash(state)
    }
}

impl Event {
    pub fn from_mask(space: &Space, mask: Vec<bool>) -> Result<Self, InstanceError> {
        if mask.len() != space.len() {
            return Err(InstanceError::ArityMismatch { expected: space.len(), found: mask.len() });
        }
        if !mask.iter().any(|&m| m) {
            return Err(InstanceError::EmptyEvent);
        }
        Ok(Event { space: space.clone(), mask })
    }

    pub fn from_indices(
        space: &Space,
        indices: impl IntoIterator<Item = usize>,
    ) -> Result<Self, InstanceError> {
        let mut mask = vec![false; space.len()];
        for i in indices {
            let slot = mask.get_mut(i).ok_or_else(|| InstanceError::UnknownLabel(format!("#{i}")))?;
            *slot = true;
        }
        Event::from_mask(space, mask)
    }

    pub fn from_labels<S: AsRef<str>>(
        space: &Space,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self, InstanceError> {
        let mut mask = vec![false; space.len()];
        for label in labels {
            let label = label.as_ref();
            let i = space
                .index_of(label)
                .ok_or_else(|| InstanceError::UnknownLabel(label.to_string()))?;
            mask[i] = true;
        }
        Event::from_mask(space, mask)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.mask[outcome]
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.mask.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i)
    }

    pub fn size(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    pub fn is_full(&self) -> bool {
        self.mask.iter().all(|&m| m)
    }

    pub fn is_subset_of(&self, other: &Event) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn is_disjoint_from(&self, other: &Event) -> bool {
        self.mask.iter().zip(&other.mask).all(|(&a, &b)| !(a && b))
    }

    /// Intersection, or `None` when it is empty.
    pub fn intersect(&self, other: &Event) -> Option<Event> {
        let mask: Vec<bool> = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect();
        mask.iter().any(|&m| m).then(|| Event { space: self.space.clone(), mask })
    }

    pub fn union(&self, other: &Event) -> Event {
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a || b).collect();
        Event { space: self.space.clone(), mask }
    }

    pub fn labels(&self) -> Vec<&str> {
        self.members().map(|i| self.space.labels()[i].as_str()).collect()
    }

    /// The 0/1 gamble equal to one exactly on this event.
    pub fn indicator(&self) -> Gamble {
        indicator(self)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels().join(","))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub fn indicator(event: &Event) -> Gamble {
    Gamble {
        space: event.space.clone(),
        values: event.mask.iter().map(|&m| if m { Rational::one() } else { Rational::zero() }).collect(),
    }
}

/// A payoff function: one exact rational per outcome.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gamble {
    space: Space,
    values: Vec<Rational>,
}

impl Gamble {
    pub fn new(space: &Space, values: Vec<Rational>) -> Result<Self, InstanceError> {
        if values.len() != space.len() {
            return Err(InstanceError::ArityMismatch { expected: space.len(), found: values.len() });
        }
        Ok(Gamble { space: space.clone(), values })
    }

    pub fn from_ints(space: &Space, values: &[i64]) -> Result<Self, InstanceError> {
        Gamble::new(space, values.iter().map(|&v| crate::rational::int(v)).collect())
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, outcome: usize) -> &Rational {
        &self.values[outcome]
    }

    pub fn min(&self) -> Rational {
        self.values.iter().min().cloned().expect("non-empty space")
    }

    pub fn max(&self) -> Rational {
        self.values.iter().max().cloned().expect("non-empty space")
    }

    pub fn min_on(&self, event: &Event) -> Rational {
        event.members().map(|i| &self.values[i]).min().cloned().expect("non-empty event")
    }

    pub fn max_on(&self, event: &Event) -> Rational {
        event.members().map(|i| &self.values[i]).max().cloned().expect("non-empty event")
    }

    pub fn is_nonnegative(&self) -> bool {
        self.values.iter().all(|v| !v.is_negative())
    }

    pub fn is_nonpositive(&self) -> bool {
        self.values.iter().all(|v| !v.is_positive())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `self - c` on the event, zero elsewhere: the called-off transaction
    /// `[f - c] I_B`.
    pub fn called_off(&self, price: &Rational, event: &Event) -> Gamble {
        let values = self
            .values
            .iter()
            .zip(event.mask())
            .map(|(v, &m)| if m { v - price } else { Rational::zero() })
            .collect();
        Gamble { space: self.space.clone(), values }
    }

    pub fn scale(&self, factor: &Rational) -> Gamble {
        Gamble { space: self.space.clone(), values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn shift(&self, amount: &Rational) -> Gamble {
        Gamble { space: self.space.clone(), values: self.values.iter().map(|v| v + amount).collect() }
    }

    /// Pointwise product.
    pub fn times(&self, other: &Gamble) -> Gamble {
        assert!(self.space.same_as(&other.space), "space mismatch in gamble product");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Gamble { space: self.space.clone(), values }
    }

    pub fn restricted_to(&self, event: &Event) -> Gamble {
        self.times(&event.indicator())
    }

    pub fn dominates(&self, other: &Gamble) -> bool {
        self.values.iter().zip(&other.values).all(|(a, b)| a >= b)
    }

    /// Superlevel set `{x : g(x) >= r}`, or `None` when empty.
    pub fn superlevel(&self, threshold: &Rational) -> Option<Event> {
        let mask: Vec<bool> = self.values.iter().map(|v| v >= threshold).collect();
        Event::from_mask(&self.space, mask).ok()
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }
}

impl fmt::Debug for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Display for Gamble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn zip_with(a: &Gamble, b: &Gamble, op: impl Fn(&Rational, &Rational) -> Rational) -> Gamble {
    assert!(a.space.same_as(&b.space), "space mismatch in gamble arithmetic");
    Gamble {
        space: a.space.clone(),
        values: a.values.iter().zip(&b.values).map(|(x, y)| op(x, y)).collect(),
    }
}

impl Add for &Gamble {
    type Output = Gamble;
    fn add(self, rhs: &Gamble) -> Gamble {
        zip_with(self, rhs, |a, b| a + b)
    }
}

impl Sub for &Gamble {
    type Output = Gamble;
    fn sub(self, rhs: &Gamble) -> Gamble {
        zip_with(self, rhs, |a, b| a - b)
    }
}

impl Neg for &Gamble {
    type Output = Gamble;
    fn neg(self) -> Gamble {
        Gamble { space: self.space.clone(), values: self.values.iter().map(|v| -v).collect() }
    }
}

impl Mul<&Rational> for &Gamble {
    type Output = Gamble;
    fn mul(self, rhs: &Rational) -> Gamble {
        self.scale(rhs)
    }
}

/// `X1 x X2` with row-major flattening: pair `(i, j)` sits at `i * |X2| + j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpace {
    factor1: Space,
    factor2: Space,
    joint: Space,
}

impl ProductSpace {
    pub fn new(factor1: &Space, factor2: &Space) -> Self {
        let labels = factor1
            .labels()
            .iter()
            .flat_map(|a| factor2.labels().iter().map(move |b| format!("({a},{b})")));
        let joint = Space::new(labels).unwrap_or_else(|_| {
            // Labels containing separators can collide; fall back to positions.
            Space::new((0..factor1.len() * factor2.len()).map(|k| format!("#{k}")))
                .expect("positional labels are distinct")
        });
        ProductSpace { factor1: factor1.clone(), factor2: factor2.clone(), joint }
    }

    pub fn factor(&self, i: usize) -> &Space {
        match i {
            1 => &self.factor1,
            2 => &self.factor2,
            _ => panic!("factor index must be 1 or 2, got {i}"),
        }
    }

    pub fn joint(&self) -> &Space {
        &self.joint
    }

    pub fn len(&self) -> usize {
        self.joint.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn flat_index(&self, i: usize, j: usize) -> usize {
        i * self.factor2.len() + j
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        (k / self.factor2.len(), k % self.factor2.len())
    }

    /// `out(x1, x2) = g(x_i)`.
    pub fn cylindrical_extension(&self, g: &Gamble, factor: usize) -> Result<Gamble, InstanceError> {
        if factor != 1 && factor != 2 {
            return Err(InstanceError::FactorMismatch(factor));
        }
        if !g.space().same_as(self.factor(factor)) {
            return Err(InstanceError::FactorMismatch(factor));
        }
        let values = (0..self.len())
            .map(|k| {
                let (i, j) = self.pair(k);
                g.value(if factor == 1 { i } else { j }).clone()
            })
            .collect();
        Ok(Gamble { space: self.joint.clone(), values })
    }

    /// Cylinder `B x X2` (factor 1) or `X1 x B` (factor 2).
    pub fn cylinder(&self, event: &Event, factor: usize) -> Result<Event, InstanceError> {
        let lifted = self.cylindrical_extension(&event.indicator(), factor)?;
        Ok(Event { space: self.joint.clone(), mask: lifted.values.iter().map(|v| v.is_one()).collect() })
    }

    /// Joint gamble `a(x1) * b(x2)`.
    pub fn tensor(&self, a: &Gamble, b: &Gamble) -> Result<Gamble, InstanceError> {
        let a = self.cylindrical_extension(a, 1)?;
        let b = self.cylindrical_extension(b, 2)?;
        Ok(a.times(&b))
    }

    /// Rectangle `A x B`.
    pub fn rectangle(&self, a: &Event, b: &Event) -> Result<Event, InstanceError> {
        Ok(self.cylinder(a, 1)?.intersect(&self.cylinder(b, 2)?).expect("non-empty factors"))
    }

    /// Joint gamble from a `|X1| x |X2|` value table.
    pub fn gamble_from_table(&self, rows: Vec<Vec<Rational>>) -> Result<Gamble, InstanceError> {
        if rows.len() != self.factor1.len() {
            return Err(InstanceError::ArityMismatch { expected: self.factor1.len(), found: rows.len() });
        }
        let mut values = Vec::with_capacity(self.len());
        for row in rows {
            if row.len() != self.factor2.len() {
                return Err(InstanceError::ArityMismatch { expected: self.factor2.len(), found: row.len() });
            }
            values.extend(row);
        }
        Gamble::new(&self.joint, values)
    }

    /// The same joint gamble seen on `X2 x X1`.
    pub fn transpose(&self, g: &Gamble, swapped: &ProductSpace) -> Gamble {
        let values = (0..swapped.len())
            .map(|k| {
                let (j, i) = swapped.pair(k);
                g.value(self.flat_index(i, j)).clone()
            })
            .collect();
        Gamble { space: swapped.joint.clone(), values }
    }

    pub fn swapped(&self) -> ProductSpace {
        ProductSpace::new(&self.factor2, &self.factor1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn abc() -> Space {
        Space::new(["a", "b", "c"]).unwrap()
    }

    #[test]
    fn indicator_examples() {
        let s = abc();
        assert_eq!(Event::from_labels(&s, ["a"]).unwrap().indicator(), Gamble::from_ints(&s, &[1, 0, 0]).unwrap());
        assert_eq!(Event::from_labels(&s, ["b", "c"]).unwrap().indicator(), Gamble::from_ints(&s, &[0, 1, 1]).unwrap());
        let ab = Space::new(["a", "b"]).unwrap();
        assert_eq!(ab.full_event().indicator(), Gamble::from_ints(&ab, &[1, 1]).unwrap());
    }

    #[test]
    fn space_and_event_invariants() {
        assert_eq!(Space::new(Vec::<String>::new()), Err(InstanceError::EmptySpace));
        assert!(matches!(Space::new(["a", "a"]), Err(InstanceError::DuplicateLabel(_))));
        let s = abc();
        assert_eq!(Event::from_labels(&s, Vec::<&str>::new()), Err(InstanceError::EmptyEvent));
        assert!(matches!(Event::from_labels(&s, ["z"]), Err(InstanceError::UnknownLabel(_))));
        assert!(matches!(Gamble::from_ints(&s, &[1, 2]), Err(InstanceError::ArityMismatch { .. })));
    }

    #[test]
    fn cylindrical_extension_examples() {
        let x1 = Space::new(["a", "b"]).unwrap();
        let x2 = Space::new(["c", "d"]).unwrap();
        let ps = ProductSpace::new(&x1, &x2);
        let g = Gamble::from_ints(&x1, &[1, 0]).unwrap();
        assert_eq!(ps.cylindrical_extension(&g, 1).unwrap().values(), &[int(1), int(1), int(0), int(0)]);
        let c = Gamble::from_ints(&x1, &[5, 5]).unwrap();
        assert_eq!(ps.cylindrical_extension(&c, 1).unwrap().values(), &[int(5), int(5), int(5), int(5)]);
        let h = Gamble::from_ints(&x2, &[1, 3]).unwrap();
        assert_eq!(ps.cylindrical_extension(&h, 2).unwrap().values(), &[int(1), int(3), int(1), int(3)]);
        assert_eq!(ps.cylindrical_extension(&h, 1), Err(InstanceError::FactorMismatch(1)));
        assert_eq!(ps.flat_index(1, 0), 2);
        assert_eq!(ps.pair(3), (1, 1));
    }

    #[test]
    fn transpose_round_trip() {
        let x1 = Space::new(["a", "b", "e"]).unwrap();
        let x2 = Space::new(["c", "d"]).unwrap();
        let ps = ProductSpace::new(&x1, &x2);
        let sw = ps.swapped();
        let g = Gamble::from_ints(ps.joint(), &[1, 2, 3, 4, 5, 6]).unwrap();
        let t = ps.transpose(&g, &sw);
        assert_eq!(t.values(), &[int(1), int(3), int(5), int(2), int(4), int(6)]);
        assert_eq!(sw.transpose(&t, &ps), g);
    }
}
