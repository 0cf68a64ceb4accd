//! With `H` trivial the reconstruction must be the function algebra `O(K)`.
//! The oracle builds `O(K)` from the Cayley table alone and compares
//! through the matrix-coefficient map `[ξ⊗v]_V ↦ Σ_g ξ(ρ_V(g)v) δ_g`.

mod common;

use common::{coefficient_map, function_algebra};
use tannaka_core::catalog::peter_weyl_groups;
use tannaka_core::coend::{route_b, FiberSetup};
use tannaka_core::exactla::{Fp, FpMatrix};
use tannaka_core::groups::{splitting_prime, RetractionPair};
use tannaka_core::hopf::HopfStructure;

#[test]
fn reconstruction_with_trivial_subgroup_is_the_function_algebra() {
    for (name, k) in peter_weyl_groups() {
        let f = Fp::new(splitting_prime(&k, 3).unwrap()).unwrap();
        let setup = FiberSetup::new(RetractionPair::trivial_subgroup(k.clone()), f, 2).unwrap();
        assert!(setup.simple_relations().unwrap().is_zero(), "{name}: relations must vanish");
        let h = HopfStructure::build(&setup, route_b(&setup).unwrap()).unwrap();
        assert_eq!(h.dim(), k.order(), "{name}");
        let o = function_algebra(&k, f);
        let phi = coefficient_map(&setup, &h);
        assert!(phi.inverse().is_some(), "{name}: not bijective");
        assert_eq!(o.delta.mul(&phi), phi.kron(&phi).mul(&h.base.delta), "{name}: coproduct");
        assert_eq!(o.eps.mul(&phi), h.base.eps, "{name}: counit");
        assert_eq!(o.mult.mul(&phi.kron(&phi)), phi.mul(&h.mult), "{name}: product");
        assert_eq!(phi.mul(&h.unit), o.unit, "{name}: unit");
        assert_eq!(o.antipode.mul(&phi), phi.mul(&h.antipode), "{name}: antipode");
    }
}

#[test]
fn function_algebra_oracle_is_itself_a_hopf_algebra() {
    let k = tannaka_core::catalog::symmetric3();
    let f = Fp::new(7).unwrap();
    let o = function_algebra(&k, f);
    let n = k.order();
    let id = FpMatrix::identity(f, n);
    assert_eq!(o.delta.kron(&id).mul(&o.delta), id.kron(&o.delta).mul(&o.delta));
    assert_eq!(o.mult.mul(&o.antipode.kron(&id)).mul(&o.delta), o.unit.mul(&o.eps));
}
