use num_traits::Zero;

use crate::monomial::GrowthMonomial;
use crate::rational::Rational;

/// A finite formal sum of monomials with like terms merged eagerly.
///
/// No two stored terms share a shape, so the maximal term under the order
/// relation is unique whenever the sum is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialSum {
    terms: Vec<GrowthMonomial>,
}

impl MonomialSum {
    pub fn zero() -> Self {
        MonomialSum::default()
    }

    pub fn from_terms<I: IntoIterator<Item = GrowthMonomial>>(terms: I) -> Self {
        let mut sum = MonomialSum::zero();
        for t in terms {
            sum.push(t);
        }
        sum
    }

    /// Adds one term, merging it into a same-shape term if present.
    pub fn push(&mut self, term: GrowthMonomial) {
        match self.terms.iter().position(|t| t.shape() == term.shape()) {
            Some(i) => {
                let c: Rational = self.terms[i].coeff() + term.coeff();
                if c.is_zero() {
                    self.terms.remove(i);
                } else {
                    self.terms[i] = term.with_coeff(c).expect("nonzero");
                }
            }
            None => self.terms.push(term),
        }
    }

    pub fn add(&self, other: &MonomialSum) -> MonomialSum {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    /// Multiplies every term by `m`.
    pub fn times(&self, m: &GrowthMonomial) -> MonomialSum {
        MonomialSum::from_terms(self.terms.iter().map(|t| t.multiply(m)))
    }

    pub fn terms(&self) -> &[GrowthMonomial] {
        &self.terms
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

    /// Order-insensitive equality.
    pub fn same_terms(&self, other: &MonomialSum) -> bool {
        self.len() == other.len() && self.terms.iter().all(|t| other.terms.contains(t))
    }
}

impl FromIterator<GrowthMonomial> for MonomialSum {
    fn from_iter<I: IntoIterator<Item = GrowthMonomial>>(iter: I) -> Self {
        MonomialSum::from_terms(iter)
    }
}
