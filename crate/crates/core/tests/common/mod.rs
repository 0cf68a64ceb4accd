//! Independent oracles shared by integration tests.
#![allow(dead_code)]

use tannaka_core::coend::FiberSetup;
use tannaka_core::exactla::{Fp, FpMatrix};
use tannaka_core::groups::FiniteGroup;
use tannaka_core::hopf::HopfStructure;

/// `O(K)` on the basis `δ_g`.
pub struct FunctionAlgebra {
    pub delta: FpMatrix,
    pub eps: FpMatrix,
    pub mult: FpMatrix,
    pub unit: FpMatrix,
    pub antipode: FpMatrix,
}

pub fn function_algebra(g: &FiniteGroup, f: Fp) -> FunctionAlgebra {
    let n = g.order();
    let mut delta = FpMatrix::zeros(f, n * n, n);
    let mut mult = FpMatrix::zeros(f, n, n * n);
    let mut antipode = FpMatrix::zeros(f, n, n);
    for a in 0..n {
        for b in 0..n {
            delta[(a * n + b, g.mul(a, b))] = 1;
        }
        mult[(a, a * n + a)] = 1;
        antipode[(g.inv(a), a)] = 1;
    }
    let mut eps = FpMatrix::zeros(f, 1, n);
    eps[(0, g.identity())] = 1;
    let unit = FpMatrix::from_fn(f, n, 1, |_, _| 1);
    FunctionAlgebra { delta, eps, mult, unit, antipode }
}

/// `L → O(K)` computed from the irreducible matrices, independent of the
/// coend machinery except for the quotient section.
pub fn coefficient_map(setup: &FiberSetup, h: &HopfStructure) -> FpMatrix {
    let f = setup.field();
    let k = setup.big();
    let total = h.base.ambient.total;
    let mut phi = FpMatrix::zeros(f, k.order(), total);
    let mut col = 0;
    for v in setup.irr_k().irreps() {
        let d = v.degree();
        for a in 0..d {
            for j in 0..d {
                for g in 0..k.order() {
                    phi[(g, col)] = v.matrix(g)[(a, j)];
                }
                col += 1;
            }
        }
    }
    phi.mul(&h.base.section)
}

/// `true` when the coefficient map is a Hopf isomorphism `L → O(K)`.
pub fn matches_function_algebra(setup: &FiberSetup, h: &HopfStructure) -> bool {
    let o = function_algebra(setup.big(), setup.field());
    let phi = coefficient_map(setup, h);
    phi.inverse().is_some()
        && o.delta.mul(&phi) == phi.kron(&phi).mul(&h.base.delta)
        && o.eps.mul(&phi) == h.base.eps
        && o.mult.mul(&phi.kron(&phi)) == phi.mul(&h.mult)
        && phi.mul(&h.unit) == o.unit
        && o.antipode.mul(&phi) == phi.mul(&h.antipode)
}
