//! The finite group of 𝔽_p-points of the commutative Hopf algebra `L`, and
//! the group-theoretic checks against `ker(s)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coend::FiberSetup;
use crate::error::{Error, Result};
use crate::exactla::{factor, minpoly, FpMatrix};
use crate::groups::{is_isomorphic, FiniteGroup};
use crate::hopf::HopfStructure;
use crate::reptheory::RETRY_BUDGET;

/// Primitive idempotents of `L` and the dual algebra maps `L → 𝔽_p`.
#[derive(Clone, Debug)]
pub struct PointSet {
    /// Columns are the primitive orthogonal idempotents.
    pub idempotents: FpMatrix,
    /// Row `i` is the point dual to idempotent `i`. Point `0` is the counit.
    pub points: FpMatrix,
    /// Law `(x·y)(f) = (x⊗y)(Δf)` on point indices.
    pub group: Arc<FiniteGroup>,
}

impl PointSet {
    pub fn len(&self) -> usize {
        self.points.rows()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the point equal to the functional `row`, if any.
    pub fn find(&self, row: &[u64]) -> Option<usize> {
        (0..self.len()).find(|&i| self.points.row(i) == row)
    }
}

/// Splits `(L, m, u)` into primitive idempotents by random-element
/// eigen-splitting, then assembles the group of points.
pub fn points(h: &HopfStructure, seed: u64) -> Result<PointSet> {
    let f = h.field();
    let n = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idempotents: Vec<Vec<u64>> = vec![h.unit.column(0)];
    for _ in 0..RETRY_BUDGET {
        if idempotents.len() == n {
            break;
        }
        let a: Vec<u64> = (0..n).map(|_| rng.random_range(0..f.p())).collect();
        let la = h.left_mult(&a);
        let mp = minpoly(&la);
        let mut roots = Vec::new();
        for (q, mult) in factor(&mp, &mut rng) {
            if q.degree() != Some(1) || mult != 1 {
                return Err(Error::NonSplitSpectrum(format!(
                    "minimal polynomial of a random element has factor {q:?} with multiplicity {mult}"
                )));
            }
            roots.push(f.neg(q.coeffs()[0]));
        }
        // Lagrange idempotent for each eigenvalue, applied to the unit.
        let mut splitters = Vec::with_capacity(roots.len());
        for &lam in &roots {
            let mut e = h.unit.clone();
            for &mu in roots.iter().filter(|&&mu| mu != lam) {
                let factor = la.sub(&FpMatrix::identity(f, n).scale(mu)).scale(f.inv(f.sub(lam, mu)));
                e = factor.mul(&e);
            }
            splitters.push(e.column(0));
        }
        let mut refined = Vec::new();
        for e in &idempotents {
            for s in &splitters {
                let prod = h.product(e, s);
                if prod.iter().any(|&x| x != 0) {
                    refined.push(prod);
                }
            }
        }
        idempotents = refined;
    }
    if idempotents.len() != n {
        return Err(Error::LasVegasExhausted {
            seed,
            context: format!("found {} of {} idempotents", idempotents.len(), n),
        });
    }
    let e = FpMatrix::from_columns(f, n, &idempotents);
    let dual = e
        .inverse()
        .ok_or_else(|| Error::NonSplitSpectrum("idempotents are dependent".into()))?;
    let mut rows: Vec<Vec<u64>> = (0..n).map(|i| dual.row(i).to_vec()).collect();
    // Canonical order: the counit first, then lexicographic.
    let eps = h.base.eps.row(0).to_vec();
    rows.sort_by(|a, b| (*a != eps).cmp(&(*b != eps)).then_with(|| a.cmp(b)));
    if rows[0] != eps {
        return Err(Error::NonSplitSpectrum("counit is not a point".into()));
    }
    let points = FpMatrix::from_vec(f, n, n, rows.concat());
    let idempotents = points.inverse().expect("dual basis");

    for i in 0..n {
        let x = FpMatrix::row_vector(f, points.row(i));
        if x.mul(&h.mult) != x.kron(&x) || x.mul(&h.unit) != FpMatrix::identity(f, 1) {
            return Err(Error::NonSplitSpectrum(format!("point {i} is not an algebra map")));
        }
    }
    let find = |row: &FpMatrix| (0..n).find(|&i| points.row(i) == row.row(0));
    let mut table = vec![vec![0; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        let x = FpMatrix::row_vector(f, points.row(i));
        for (j, cell) in row.iter_mut().enumerate() {
            let xy = x.kron(&FpMatrix::row_vector(f, points.row(j))).mul(&h.base.delta);
            *cell = find(&xy).ok_or_else(|| Error::NonSplitSpectrum("product of points is not a point".into()))?;
        }
    }
    let all: Vec<usize> = (0..n).collect();
    let gens = greedy_from_table(&table, &all);
    let labels = (0..gens.len()).map(|i| format!("p{i}")).collect();
    let group = FiniteGroup::from_cayley(table, gens, labels)?;
    for i in 0..n {
        let inv = FpMatrix::row_vector(f, points.row(i)).mul(&h.antipode);
        if find(&inv) != Some(group.inv(i)) {
            return Err(Error::NonSplitSpectrum(format!("antipode does not invert point {i}")));
        }
    }
    Ok(PointSet { idempotents, points, group: Arc::new(group) })
}

fn greedy_from_table(table: &[Vec<usize>], elems: &[usize]) -> Vec<usize> {
    let closure = |gens: &[usize]| {
        let mut seen = vec![false; table.len()];
        seen[0] = true;
        let mut out = vec![0];
        let mut i = 0;
        while i < out.len() {
            for &g in gens {
                let x = table[out[i]][g];
                if !seen[x] {
                    seen[x] = true;
                    out.push(x);
                }
            }
            i += 1;
        }
        seen
    };
    let mut gens = Vec::new();
    for &e in elems {
        if !closure(&gens)[e] {
            gens.push(e);
        }
    }
    gens
}

/// Point `i` is evaluation at `witness[i] ∈ ker(s) ⊆ K`.
#[derive(Clone, Debug)]
pub struct KernelIso {
    pub verdict: bool,
    /// Element of `K` (by index) for each point.
    pub witness: Vec<usize>,
    /// An abstract isomorphism search also succeeded.
    pub abstract_isomorphic: bool,
    /// Evaluation at `k` descends to `L` exactly when `s(k) = 1`.
    pub evaluation_descends_exactly_on_kernel: bool,
}

/// Matches every point with evaluation at a kernel element and checks the
/// matching is a group isomorphism onto `ker(s)`.
pub fn verify_kernel_iso(setup: &FiberSetup, h: &HopfStructure, pts: &PointSet) -> Result<KernelIso> {
    let big = setup.big();
    let s = setup.pair().retraction();
    let mut witness = vec![usize::MAX; pts.len()];
    let mut exact = true;
    for k in 0..big.order() {
        let ev = setup.ambient_evaluation(k);
        let descends = ev.mul(&h.base.relations).is_zero();
        exact &= descends == (s.apply(k) == 0);
        if !descends {
            continue;
        }
        if let Some(i) = pts.find(ev.mul(&h.base.section).row(0)) {
            witness[i] = k;
        }
    }
    let (kernel, _) = s.kernel();
    let mut verdict = witness.iter().all(|&k| k != usize::MAX);
    if verdict {
        let mut seen = witness.clone();
        seen.sort_unstable();
        seen.dedup();
        verdict = seen.len() == pts.len() && seen.len() == kernel.order();
        let g = &pts.group;
        for a in 0..pts.len() {
            for b in 0..pts.len() {
                verdict &= witness[g.mul(a, b)] == big.mul(witness[a], witness[b]);
            }
        }
    }
    let abstract_isomorphic = is_isomorphic(&pts.group, &kernel)?.is_some();
    Ok(KernelIso {
        verdict: verdict && abstract_isomorphic && exact,
        witness,
        abstract_isomorphic,
        evaluation_descends_exactly_on_kernel: exact,
    })
}

/// `h·x = x ∘ act(h⁻¹)` as a permutation of point indices, for each `h ∈ H`.
pub fn action_on_points(setup: &FiberSetup, h: &HopfStructure, pts: &PointSet) -> Option<Vec<Vec<usize>>> {
    let small = setup.small();
    let f = h.field();
    (0..small.order())
        .map(|x| {
            let a = &h.base.action[small.inv(x)];
            (0..pts.len())
                .map(|i| pts.find(FpMatrix::row_vector(f, pts.points.row(i)).mul(a).row(0)))
                .collect()
        })
        .collect()
}

/// The `H`-action on points agrees with conjugation by `i(H)` on `ker(s)`.
pub fn conjugation_check(setup: &FiberSetup, h: &HopfStructure, pts: &PointSet, iso: &KernelIso) -> bool {
    if !iso.verdict {
        return false;
    }
    let Some(act) = action_on_points(setup, h, pts) else {
        return false;
    };
    let big = setup.big();
    let emb = setup.pair().embedding();
    (0..setup.small().order()).all(|x| {
        let hk = emb.apply(x);
        (0..pts.len()).all(|i| iso.witness[act[x][i]] == big.conjugate(hk, iso.witness[i]))
    })
}

/// `K → H ⋉ Points`, `k ↦ (s(k), i(s(k))⁻¹ k)`, is an isomorphism onto the
/// semidirect product built from the recovered action.
pub fn semidirect_check(setup: &FiberSetup, h: &HopfStructure, pts: &PointSet, iso: &KernelIso) -> Result<bool> {
    if !iso.verdict {
        return Ok(false);
    }
    let Some(act) = action_on_points(setup, h, pts) else {
        return Ok(false);
    };
    let (big, small) = (setup.big(), setup.small());
    let (emb, s) = (setup.pair().embedding(), setup.pair().retraction());
    let g = &pts.group;
    let np = pts.len();
    let order = small.order() * np;
    let encode = |hx: usize, x: usize| hx * np + x;
    let mut table = vec![vec![0; order]; order];
    for h1 in 0..small.order() {
        for x1 in 0..np {
            for h2 in 0..small.order() {
                for x2 in 0..np {
                    let moved = act[small.inv(h2)][x1];
                    table[encode(h1, x1)][encode(h2, x2)] = encode(small.mul(h1, h2), g.mul(moved, x2));
                }
            }
        }
    }
    let all: Vec<usize> = (0..order).collect();
    let gens = greedy_from_table(&table, &all);
    let labels = (0..gens.len()).map(|i| format!("q{i}")).collect();
    let Ok(product) = FiniteGroup::from_cayley(table, gens, labels) else {
        return Ok(false);
    };
    let mut point_of = vec![usize::MAX; big.order()];
    for (i, &k) in iso.witness.iter().enumerate() {
        point_of[k] = i;
    }
    let mut image = Vec::with_capacity(big.order());
    for k in 0..big.order() {
        let hx = s.apply(k);
        let rest = big.mul(big.inv(emb.apply(hx)), k);
        if point_of[rest] == usize::MAX {
            return Ok(false);
        }
        image.push(encode(hx, point_of[rest]));
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != order || order != big.order() {
        return Ok(false);
    }
    Ok((0..big.order()).all(|a| (0..big.order()).all(|b| image[big.mul(a, b)] == product.mul(image[a], image[b]))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, two_sections};
    use crate::coend::route_b;
    use crate::exactla::Fp;
    use crate::groups::RetractionPair;

    fn build(pair: RetractionPair, p: u64) -> (FiberSetup, HopfStructure, PointSet) {
        let setup = FiberSetup::new(pair, Fp::new(p).unwrap(), 11).unwrap();
        let h = HopfStructure::build(&setup, route_b(&setup).unwrap()).unwrap();
        let pts = points(&h, 4).unwrap();
        (setup, h, pts)
    }

    #[test]
    fn identity_pair_has_one_point() {
        let (_, _, pts) = build(RetractionPair::identity(cyclic(2)), 3);
        assert_eq!(pts.group.order(), 1);
    }

    #[test]
    fn functions_on_z2_split_into_two_points() {
        let (_, h, pts) = build(RetractionPair::trivial_subgroup(cyclic(2)), 7);
        assert_eq!(pts.len(), 2);
        assert_eq!(pts.group.element_order(1), 2);
        let f = h.field();
        let sum = (0..2).fold(vec![0; 2], |acc, i| {
            let e = pts.idempotents.column(i);
            acc.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect()
        });
        assert_eq!(sum, h.unit.column(0));
        assert!(h.product(&pts.idempotents.column(0), &pts.idempotents.column(1)).iter().all(|&x| x == 0));
    }

    #[test]
    fn points_are_independent_of_the_splitting_seed() {
        let (_, h, pts) = build(two_sections(2), 7);
        for seed in 0..5 {
            assert_eq!(points(&h, seed).unwrap().points, pts.points);
        }
    }

    #[test]
    fn first_section_is_cyclic_with_z_inverting_x() {
        let (setup, h, pts) = build(two_sections(1), 7);
        assert_eq!(pts.len(), 6);
        assert!(pts.group.is_abelian());
        assert!((0..6).any(|x| pts.group.element_order(x) == 6));
        let iso = verify_kernel_iso(&setup, &h, &pts).unwrap();
        assert!(iso.verdict && iso.evaluation_descends_exactly_on_kernel);
        let big = setup.big();
        let x = big.parse_word("x").unwrap();
        let y = big.parse_word("y").unwrap();
        let z = setup.small().parse_word("z").unwrap();
        let act = action_on_points(&setup, &h, &pts).unwrap();
        let point_of = |k: usize| iso.witness.iter().position(|&w| w == k).unwrap();
        assert_eq!(iso.witness[act[z][point_of(x)]], big.inv(x));
        assert_eq!(iso.witness[act[z][point_of(y)]], y);
        assert!(conjugation_check(&setup, &h, &pts, &iso));
        assert!(semidirect_check(&setup, &h, &pts, &iso).unwrap());
    }

    #[test]
    fn second_section_is_s3_and_a_scrambled_witness_is_rejected() {
        let (setup, h, pts) = build(two_sections(2), 7);
        assert!(!pts.group.is_abelian());
        let iso = verify_kernel_iso(&setup, &h, &pts).unwrap();
        assert!(iso.verdict);
        assert!(conjugation_check(&setup, &h, &pts, &iso));
        assert!(semidirect_check(&setup, &h, &pts, &iso).unwrap());
        let rejected = (1..pts.len()).any(|i| {
            let mut bad = iso.clone();
            bad.witness.swap(i, (i % (pts.len() - 1)) + 1);
            !conjugation_check(&setup, &h, &pts, &bad) || !semidirect_check(&setup, &h, &pts, &bad).unwrap()
        });
        assert!(rejected);
    }

    #[test]
    fn evaluation_off_the_kernel_does_not_descend() {
        let (setup, h, _) = build(two_sections(1), 7);
        let z = setup.pair().embedding().apply(setup.small().parse_word("z").unwrap());
        assert!(!setup.ambient_evaluation(z).mul(&h.base.relations).is_zero());
    }
}
