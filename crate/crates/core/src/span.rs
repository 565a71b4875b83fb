//! Additive subgroups of a finite ring, grown one generator at a time.

use crate::elements::{Elem, ElementSet};
use crate::ring::FiniteRing;

/// The additive subgroup generated by the elements inserted so far.
pub struct AdditiveSpan<'r> {
    ring: &'r FiniteRing,
    set: ElementSet,
    elems: Vec<Elem>,
    basis: Vec<Elem>,
}

impl<'r> AdditiveSpan<'r> {
    pub fn new(ring: &'r FiniteRing) -> Self {
        let mut set = ElementSet::new(ring.size());
        set.insert(0);
        AdditiveSpan {
            ring,
            set,
            elems: vec![0],
            basis: Vec::new(),
        }
    }

    /// Starts from a known additive subgroup with the given generators.
    pub fn from_parts(ring: &'r FiniteRing, set: &ElementSet, basis: &[Elem]) -> Self {
        AdditiveSpan {
            ring,
            set: set.clone(),
            elems: set.to_vec(),
            basis: basis.to_vec(),
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Adds z to the span. Returns false if z was already a member. The new
    /// span is the union of the cosets S + kz, appended coset by coset.
    pub fn insert(&mut self, z: Elem) -> bool {
        if self.set.contains(z) {
            return false;
        }
        let old = self.elems.len();
        let mut cur = z;
        while !self.set.contains(cur) {
            for i in 0..old {
                let s = self.ring.add(self.elems[i], cur);
                self.set.insert(s);
                self.elems.push(s);
            }
            cur = self.ring.add(cur, z);
        }
        self.basis.push(z);
        true
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn set(&self) -> &ElementSet {
        &self.set
    }

    pub fn into_parts(self) -> (ElementSet, Vec<Elem>) {
        (self.set, self.basis)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::expr::parse_expr;
    use crate::ring::make_ring;

    #[test]
    fn spans_in_zmod() {
        let z12 = make_ring(&parse_expr("Z12").unwrap(), &Caps::default()).unwrap();
        let mut s = AdditiveSpan::new(&z12);
        assert!(s.insert(8));
        assert_eq!(s.set().to_vec(), vec![0, 4, 8]);
        assert!(s.insert(6));
        assert_eq!(s.set().to_vec(), vec![0, 2, 4, 6, 8, 10]);
        assert!(!s.insert(10));
        assert_eq!(s.basis(), &[8, 6]);
    }

    #[test]
    fn additive_gens_span_the_ring() {
        for e in ["Z6", "Z2 x Z4", "Z3[C2 x C2]", "Z4[S3]", "Z2[C2][C2]"] {
            let r = make_ring(&parse_expr(e).unwrap(), &Caps::default()).unwrap();
            let mut s = AdditiveSpan::new(&r);
            for &g in r.additive_gens() {
                s.insert(g);
            }
            assert_eq!(s.len(), r.size(), "{e}");
        }
    }
}
