//! Balancing against non-simple objects adds no relations beyond the simple ones.

use tannaka_core::catalog::{s3_sign, two_sections};
use tannaka_core::coend::FiberSetup;
use tannaka_core::exactla::{Fp, FpMatrix};
use tannaka_core::groups::RetractionPair;
use tannaka_core::reptheory::Rep;

fn assert_no_new_relations(pair: RetractionPair, p: u64) {
    let setup = FiberSetup::new(pair, Fp::new(p).unwrap(), 9).unwrap();
    let simple = setup.simple_relations().unwrap();
    let rank = simple.rank();
    let reg_h = Rep::regular(setup.small().clone(), setup.field()).unwrap();
    let irr = setup.irr_k().irreps();
    let sum = irr[0].direct_sum(&irr[irr.len() - 1]);
    let product = irr[irr.len() - 1].tensor(&irr[irr.len() - 1]);
    for (p_obj, m_obj) in [(&reg_h, &sum), (&reg_h, &product), (setup.trivial_h(), &product)] {
        let extra = setup.relations_for(p_obj, m_obj).unwrap();
        assert_eq!(FpMatrix::hstack(&[&simple, &extra]).rank(), rank);
    }
}

#[test]
fn order_twelve_sections() {
    assert_no_new_relations(two_sections(1), 7);
    assert_no_new_relations(two_sections(2), 7);
}

#[test]
fn sign_retraction() {
    assert_no_new_relations(s3_sign(), 7);
}
