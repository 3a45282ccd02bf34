use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::sft::Word;

/// Exact coefficient type.
pub type Coeff = BigRational;

pub fn coeff(v: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(v))
}

/// `S_mu S_nu*`. Only built for nonzero products; see
/// [`super::CkAlgebra::monomial`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub(crate) left: Word,
    pub(crate) right: Word,
}

impl Monomial {
    pub fn left(&self) -> &Word {
        &self.left
    }

    pub fn right(&self) -> &Word {
        &self.right
    }

    /// Gauge degree `|mu| - |nu|`.
    pub fn degree(&self) -> i64 {
        self.left.len() as i64 - self.right.len() as i64
    }

    pub fn adjoint(&self) -> Monomial {
        Monomial { left: self.right.clone(), right: self.left.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.left.is_empty() && self.right.is_empty()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.left.is_empty(), self.right.is_empty()) {
            (true, true) => f.write_str("1"),
            (false, true) => write!(f, "S{}", self.left),
            (true, false) => write!(f, "S{}*", self.right),
            (false, false) => write!(f, "S{}S{}*", self.left, self.right),
        }
    }
}

/// Finite linear combination of monomials with exact rational coefficients.
/// No zero coefficient is ever stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct CkElement {
    terms: BTreeMap<Monomial, Coeff>,
}

impl CkElement {
    pub fn zero() -> Self {
        CkElement::default()
    }

    pub fn identity() -> Self {
        CkElement::from_monomial(Monomial { left: Word::empty(), right: Word::empty() })
    }

    pub(crate) fn from_monomial(m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, Coeff::one());
        CkElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign_scaled(&mut self, other: &CkElement, scale: &Coeff) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * scale);
        }
    }

    pub fn scale(&self, s: &Coeff) -> CkElement {
        if s.is_zero() {
            return CkElement::zero();
        }
        CkElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// `S_mu S_nu* -> S_nu S_mu*`; rational coefficients are self-conjugate.
    pub fn adjoint(&self) -> CkElement {
        CkElement { terms: self.terms.iter().map(|(m, c)| (m.adjoint(), c.clone())).collect() }
    }

    /// Longest right word over all terms.
    pub fn right_depth(&self) -> usize {
        self.terms.keys().map(|m| m.right.len()).max().unwrap_or(0)
    }

    /// Split into homogeneous components by gauge degree.
    pub fn by_degree(&self) -> BTreeMap<i64, CkElement> {
        let mut out: BTreeMap<i64, CkElement> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree()).or_default().terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// Remove and return one term, used to build corrupted fixtures.
    pub fn pop_term(&mut self) -> Option<(Monomial, Coeff)> {
        self.terms.pop_first()
    }
}

impl Add for &CkElement {
    type Output = CkElement;

    fn add(self, rhs: &CkElement) -> CkElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &CkElement {
    type Output = CkElement;

    fn sub(self, rhs: &CkElement) -> CkElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &CkElement {
    type Output = CkElement;

    fn neg(self) -> CkElement {
        CkElement { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl std::iter::Sum for CkElement {
    fn sum<I: Iterator<Item = CkElement>>(iter: I) -> CkElement {
        iter.fold(CkElement::zero(), |acc, x| &acc + &x)
    }
}

impl fmt::Display for CkElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}
