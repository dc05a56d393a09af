//! Seeded random instances.
//!
//! All draws come from SplitMix64 seeded with the given `u64` (state = seed).
//! A small integer is `(next_u64 % 7) - 3`, so entries lie in `[-3, 3]`; a
//! bounded count below `k` is `next_u64 % k`. The draw order of every
//! generator below is part of its contract.

use std::sync::Arc;

use rand_core::{Rng, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::field::{Field, Rational};
use crate::group::{ConstantElement, GroupElement};
use crate::laurent::{LaurentPoly, LaurentVec};
use crate::linalg::Matrix;
use crate::space::{QuadSpace, Subspace};

pub struct InstanceRng {
    inner: SplitMix64,
}

impl InstanceRng {
    pub fn new(seed: u64) -> Self {
        InstanceRng { inner: SplitMix64::seed_from_u64(seed) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform-ish in `0..k`; `k` must be positive.
    pub fn below(&mut self, k: u64) -> u64 {
        self.next_u64() % k
    }

    /// An integer in `[-3, 3]`.
    pub fn small_int(&mut self) -> i64 {
        (self.below(7) as i64) - 3
    }

    pub fn small_vector(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| Rational::from_i64(self.small_int())).collect()
    }

    pub fn nonzero_vector(&mut self, n: usize) -> Vec<Rational> {
        loop {
            let v = self.small_vector(n);
            if v.iter().any(|x| !x.is_zero()) {
                return v;
            }
        }
    }

    /// Row space of `k` random vectors, `k = below(n + 1)`; may come out
    /// smaller than `k` when the rows are dependent.
    pub fn subspace(&mut self, space: &Arc<QuadSpace>) -> Subspace {
        let n = space.dim();
        let k = self.below(n as u64 + 1) as usize;
        let rows = (0..k).map(|_| self.small_vector(n)).collect();
        Subspace::span(space, rows).expect("rows have the space's dimension")
    }

    /// `A^T A + I` for a random integer `A`, hence positive definite.
    pub fn gram(&mut self, n: usize) -> Arc<QuadSpace> {
        let a = Matrix::from_fn(n, n, |_, _| Rational::from_i64(self.small_int()));
        let g = a.transpose().mul(&a).add(&Matrix::identity(n));
        QuadSpace::new(n, g).expect("A^T A + I is positive definite")
    }

    /// Random subspaces `U_1..U_len` and the product `p_{U_1} ... p_{U_len}`.
    pub fn generator_product(&mut self, space: &Arc<QuadSpace>, len: usize) -> (Vec<Subspace>, GroupElement) {
        let us: Vec<Subspace> = (0..len).map(|_| self.subspace(space)).collect();
        let mut acc = GroupElement::identity(space);
        for u in &us {
            acc = &acc * &GroupElement::generator(u);
        }
        (us, acc)
    }

    /// `t^s` times a generator product, `s` drawn below `max_shift + 1`
    /// after the factors.
    pub fn pure_element(&mut self, space: &Arc<QuadSpace>, len: usize, max_shift: u64) -> GroupElement {
        let (_, phi) = self.generator_product(space, len);
        let s = self.below(max_shift + 1) as i64;
        phi.shift(s)
    }

    /// Product of `count` reflections `1 - 2π_{kv}` in random nonzero `v`.
    pub fn orthogonal(&mut self, space: &Arc<QuadSpace>, count: usize) -> ConstantElement {
        let mut acc = ConstantElement::identity(space);
        for _ in 0..count {
            let v = self.nonzero_vector(space.dim());
            let line = Subspace::span(space, vec![v]).expect("dimension matches");
            acc = acc.try_mul(&ConstantElement::reflection(&line)).expect("same space");
        }
        acc
    }

    /// Vector with coordinates supported on exponents `lo..=hi`.
    pub fn laurent_vector(&mut self, n: usize, lo: i64, hi: i64) -> LaurentVec {
        let coords = (0..n)
            .map(|_| LaurentPoly::new(lo, (lo..=hi).map(|_| Rational::from_i64(self.small_int())).collect()))
            .collect();
        LaurentVec::new(coords)
    }
}
