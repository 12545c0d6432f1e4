//! Finite fields: `F_p`, `F_p[x]`, `F_{p^n} = F_p[x]/<f>` and discrete logarithms.

mod dlog;
mod ext;
pub mod factor;
mod irreducible;
mod poly;
mod prime;

use std::fmt;

pub use dlog::dlog;
pub use ext::{ext_pow, ExtElem, ExtField};
pub use irreducible::{find_irreducible, is_irreducible, is_primitive, is_primitive_with};
pub use poly::{poly_mul_mod, Polynomial};
pub use prime::{fp_inv, Prime};

/// Field operations over an explicit context.
///
/// Elements of `F_p` are bare `u32` digits, so the context (the prime, or the
/// extension field) carries the modulus instead of every element.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// Sum of pairwise products. Implementations may override to delay reduction.
    fn dot<'a, I>(&self, pairs: I) -> Self::Elem
    where
        I: Iterator<Item = (&'a Self::Elem, &'a Self::Elem)>,
        Self::Elem: 'a,
    {
        pairs.fold(self.zero(), |acc, (a, b)| self.add(&acc, &self.mul(a, b)))
    }
}
