//! Order-preserving colorings of ordered monoids by lattice elements.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lattice::{BoundKind, Lattice, LatticeMorphism};
use crate::monoid::{direct_product, DirectProduct, MonoidMorphism, OrderedMonoid};

/// Which side a quotient is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// An order-preserving map from an ordered monoid into a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpColoring {
    monoid: Arc<OrderedMonoid>,
    lattice: Arc<Lattice>,
    colors: Vec<usize>,
}

impl OpColoring {
    pub fn new(monoid: Arc<OrderedMonoid>, lattice: Arc<Lattice>, colors: Vec<usize>) -> Result<Self> {
        if colors.len() != monoid.len() {
            return Err(Error::Mismatched("coloring domain"));
        }
        if let Some(&bad) = colors.iter().find(|&&c| c >= lattice.len()) {
            return Err(Error::UnknownElement(bad.to_string()));
        }
        let p = OpColoring { monoid, lattice, colors };
        p.validate()?;
        Ok(p)
    }

    /// Re-checks order preservation.
    pub fn validate(&self) -> Result<()> {
        for x in self.monoid.elements() {
            for y in self.monoid.elements() {
                if self.monoid.leq(x, y) && !self.lattice.leq(self.colors[x], self.colors[y]) {
                    return Err(Error::NotOrderPreserving {
                        a: self.monoid.name(x).to_string(),
                        b: self.monoid.name(y).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn constant(monoid: Arc<OrderedMonoid>, lattice: Arc<Lattice>, value: usize) -> Self {
        let colors = vec![value; monoid.len()];
        OpColoring { monoid, lattice, colors }
    }

    /// `iota[m]`: bottom on the down-set of `m`, top elsewhere.
    pub fn ideal(monoid: Arc<OrderedMonoid>, lattice: Arc<Lattice>, m: usize) -> Result<Self> {
        if m >= monoid.len() {
            return Err(Error::UnknownElement(m.to_string()));
        }
        let colors = monoid
            .elements()
            .map(|x| if monoid.leq(x, m) { lattice.bottom() } else { lattice.top() })
            .collect();
        Ok(OpColoring { monoid, lattice, colors })
    }

    pub fn monoid(&self) -> &Arc<OrderedMonoid> {
        &self.monoid
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, x: usize) -> usize {
        self.colors[x]
    }

    /// Pointwise join or meet of two colorings on the same carrier.
    pub fn combine(kind: BoundKind, a: &OpColoring, b: &OpColoring) -> Result<OpColoring> {
        if a.monoid != b.monoid {
            return Err(Error::Mismatched("monoid"));
        }
        if a.lattice != b.lattice {
            return Err(Error::Mismatched("lattice"));
        }
        let l = &a.lattice;
        let colors = a
            .colors
            .iter()
            .zip(&b.colors)
            .map(|(&x, &y)| l.bound(kind, [x, y]))
            .collect();
        OpColoring::new(a.monoid.clone(), a.lattice.clone(), colors)
    }

    /// Product join (`Join`) or product meet (`Meet`) on the direct product of
    /// the colorings' monoids.
    pub fn product(kind: BoundKind, parts: &[OpColoring], cap: usize) -> Result<(OpColoring, DirectProduct)> {
        let first = parts.first().ok_or(Error::SizeOutOfRange { what: "product factors", size: 0 })?;
        if parts.iter().any(|p| p.lattice != first.lattice) {
            return Err(Error::Mismatched("lattice"));
        }
        let factors: Vec<Arc<OrderedMonoid>> = parts.iter().map(|p| p.monoid.clone()).collect();
        let prod = direct_product(&factors, cap)?;
        let l = &first.lattice;
        let colors = prod
            .monoid
            .elements()
            .map(|x| {
                let digits = prod.shape.decode(x);
                l.bound(kind, digits.iter().zip(parts).map(|(&d, p)| p.colors[d]))
            })
            .collect();
        let p = OpColoring::new(prod.monoid.clone(), first.lattice.clone(), colors)?;
        Ok((p, prod))
    }

    /// `u\P : x |-> P(ux)` or `P/u : x |-> P(xu)`.
    pub fn quotient(&self, side: Side, u: usize) -> Result<OpColoring> {
        if u >= self.monoid.len() {
            return Err(Error::UnknownElement(u.to_string()));
        }
        let m = &self.monoid;
        let colors = m
            .elements()
            .map(|x| match side {
                Side::Left => self.colors[m.mul(u, x)],
                Side::Right => self.colors[m.mul(x, u)],
            })
            .collect();
        OpColoring::new(self.monoid.clone(), self.lattice.clone(), colors)
    }

    /// Inverse homomorphism `P o h`.
    pub fn precompose(&self, h: &MonoidMorphism) -> Result<OpColoring> {
        if **h.target() != *self.monoid {
            return Err(Error::Mismatched("monoid"));
        }
        let colors = h.mapping().iter().map(|&x| self.colors[x]).collect();
        OpColoring::new(h.source().clone(), self.lattice.clone(), colors)
    }

    /// `alpha o P`.
    pub fn postcompose(&self, alpha: &LatticeMorphism) -> Result<OpColoring> {
        if **alpha.lattice() != *self.lattice {
            return Err(Error::Mismatched("lattice"));
        }
        let colors = self.colors.iter().map(|&c| alpha.apply(c)).collect();
        OpColoring::new(self.monoid.clone(), self.lattice.clone(), colors)
    }

    /// Rebuilds the coloring as the meet over `m` of `iota[m] v cons(P(m))`,
    /// and reports whether it agrees with `self` everywhere.
    pub fn reconstruct_from_ideals(&self) -> Result<(OpColoring, bool)> {
        let m = &self.monoid;
        let l = &self.lattice;
        let mut acc = OpColoring::constant(m.clone(), l.clone(), l.top());
        for e in m.elements() {
            let ideal = OpColoring::ideal(m.clone(), l.clone(), e)?;
            let cons = OpColoring::constant(m.clone(), l.clone(), self.colors[e]);
            let term = OpColoring::combine(BoundKind::Join, &ideal, &cons)?;
            acc = OpColoring::combine(BoundKind::Meet, &acc, &term)?;
        }
        let equal = acc.colors == self.colors;
        Ok((acc, equal))
    }

    /// Extension of a coloring on a submonoid to the whole monoid by
    /// `P'(m) = join { P(x) | x in sub, x <= m }`.
    pub fn extend_from_submonoid(&self, embedding: &MonoidMorphism) -> Result<OpColoring> {
        if **embedding.source() != *self.monoid {
            return Err(Error::Mismatched("monoid"));
        }
        let big = embedding.target();
        let colors = big
            .elements()
            .map(|m| {
                self.lattice.bound(
                    BoundKind::Join,
                    self.monoid
                        .elements()
                        .filter(|&x| big.leq(embedding.apply(x), m))
                        .map(|x| self.colors[x]),
                )
            })
            .collect();
        OpColoring::new(big.clone(), self.lattice.clone(), colors)
    }
}
