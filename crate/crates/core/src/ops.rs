//! Operation signatures shared by finite tables, the McNaughton algebra and
//! the standard algebra on rationals. Terms and formulas evaluate through
//! these traits, so one evaluator serves every carrier.

/// The basic MV signature `⊕, *, 0` together with the derived operations.
pub trait MvOps {
    type Elem: Clone + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn oplus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.neg(&self.zero())
    }

    fn odot(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.neg(&self.oplus(&self.neg(x), &self.neg(y)))
    }

    fn implies(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.oplus(&self.neg(x), y)
    }

    fn ominus(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.odot(x, &self.neg(y))
    }

    fn join(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.oplus(x, &self.odot(&self.neg(x), y))
    }

    fn meet(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.odot(x, &self.oplus(&self.neg(x), y))
    }

    fn leq(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.implies(x, y) == self.one()
    }
}

/// MV operations plus the compatible monoid `◇, i`.
pub trait CmvOps: MvOps {
    fn diamond(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
}
