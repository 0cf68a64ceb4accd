use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tannaka_core::catalog::{symmetric3, two_sections};
use tannaka_core::exactla::{factor, minpoly, Fp, FpMatrix, FpPoly};
use tannaka_core::groups::FiniteGroup;
use tannaka_core::pipeline::{reconstruct, Options};
use tannaka_core::reptheory::{decompose, irreducibles, Rep};

const PRIMES: [u64; 4] = [2, 3, 7, 13];

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = (u64, Vec<u64>)> {
    prop::sample::select(PRIMES.to_vec()).prop_flat_map(move |p| (Just(p), prop::collection::vec(0..p, rows * cols)))
}

fn build(p: u64, rows: usize, cols: usize, data: Vec<u64>) -> FpMatrix {
    FpMatrix::from_vec(Fp::new(p).unwrap(), rows, cols, data)
}

proptest! {
    #[test]
    fn rank_plus_nullity(dims in (1usize..7, 1usize..7), seed in any::<u64>()) {
        let (r, c) = dims;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = 7;
        let data = (0..r * c).map(|_| rand::Rng::random_range(&mut rng, 0..p)).collect();
        let m = build(p, r, c, data);
        let ker = m.kernel_basis();
        prop_assert_eq!(m.rank() + ker.cols(), c);
        prop_assert!(m.mul(&ker).is_zero());
        prop_assert_eq!(ker.rank(), ker.cols());
    }

    #[test]
    fn cokernel_splits_the_target((p, data) in matrix(5, 4)) {
        let r = build(p, 5, 4, data);
        let cok = r.cokernel();
        prop_assert_eq!(cok.dim, 5 - r.rank());
        prop_assert!(cok.projection.mul(&r).is_zero());
        prop_assert!(cok.projection.mul(&cok.section).is_identity());
        // v − section(projection(v)) lies in the image of r
        let back = FpMatrix::identity(r.field(), 5).sub(&cok.section.mul(&cok.projection));
        prop_assert_eq!(FpMatrix::hstack(&[&r, &back]).rank(), r.rank());
    }

    #[test]
    fn kron_mixed_product((p, data) in matrix(4, 4 * 4)) {
        let f = Fp::new(p).unwrap();
        let block = |k: usize, r: usize, c: usize| FpMatrix::from_vec(f, r, c, data[k * 16..k * 16 + r * c].to_vec());
        let (a, b, c, d) = (block(0, 2, 3), block(1, 2, 2), block(2, 3, 2), block(3, 2, 4));
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn invertible_matrices_invert((p, data) in matrix(4, 4)) {
        let m = build(p, 4, 4, data);
        match m.inverse() {
            Some(inv) => prop_assert!(m.mul(&inv).is_identity() && inv.mul(&m).is_identity()),
            None => prop_assert!(m.rank() < 4),
        }
    }

    #[test]
    fn rref_column_space_is_canonical((p, data) in matrix(4, 5), mix in prop::collection::vec(0u64..13, 25)) {
        let m = build(p, 4, 5, data);
        let change = FpMatrix::from_vec(m.field(), 5, 5, mix.iter().map(|&x| x % p).collect());
        if change.inverse().is_some() {
            prop_assert_eq!(m.mul(&change).column_space(), m.column_space());
        }
    }

    #[test]
    fn factorization_multiplies_back(p in prop::sample::select(PRIMES.to_vec()), coeffs in prop::collection::vec(0u64..13, 2..9), seed in any::<u64>()) {
        let f = Fp::new(p).unwrap();
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % p).collect();
        *c.last_mut().unwrap() = 1;
        let poly = FpPoly::new(f, c);
        let facs = factor(&poly, &mut ChaCha8Rng::seed_from_u64(seed));
        let mut product = FpPoly::one(f);
        for (q, e) in &facs {
            prop_assert_eq!(q.leading(), 1);
            for _ in 0..*e {
                product = product.mul(q);
            }
        }
        prop_assert_eq!(product, poly.clone());
        let again = factor(&poly, &mut ChaCha8Rng::seed_from_u64(seed ^ 1));
        prop_assert_eq!(facs, again);
    }

    #[test]
    fn minimal_polynomial_annihilates((p, data) in matrix(4, 4)) {
        let m = build(p, 4, 4, data);
        let mp = minpoly(&m);
        prop_assert!(mp.eval_matrix(&m).is_zero());
        prop_assert!(mp.degree().unwrap() <= 4);
    }

    #[test]
    fn permutation_groups_satisfy_the_axioms(a in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(), b in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let g = FiniteGroup::from_permutations(5, &[a, b], &["a".into(), "b".into()]).unwrap();
        prop_assert_eq!(120 % g.order(), 0);
        let again = FiniteGroup::from_cayley(g.cayley(), g.generators().to_vec(), g.labels().to_vec()).unwrap();
        prop_assert_eq!(again.order(), g.order());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn decomposition_is_seed_independent_up_to_isomorphism(seed in any::<u64>()) {
        let f = Fp::new(7).unwrap();
        let s3 = symmetric3();
        let irr = irreducibles(&s3, f, seed).unwrap();
        prop_assert_eq!(irr.degrees(), vec![1, 1, 2]);
        let reg = Rep::regular(s3.clone(), f).unwrap();
        let mut mult: Vec<(usize, usize)> = decompose(&reg, seed).unwrap().iter().map(|c| (c.irrep.degree(), c.multiplicity)).collect();
        mult.sort();
        prop_assert_eq!(mult, vec![(1, 1), (1, 1), (2, 2)]);
    }

    #[test]
    fn reconstruction_holds_for_every_seed(seed in any::<u64>(), section in 1u8..3) {
        let r = reconstruct(two_sections(section), Fp::new(7).unwrap(), Options { seed, ..Default::default() }).unwrap();
        prop_assert!(r.ok(), "{:?}", r.failures());
        prop_assert_eq!(r.dim(), 6);
        prop_assert_eq!(r.recovered_group().is_abelian(), section == 1);
    }
}
