//! Matrix representations of finite groups over 𝔽_p with p ∤ |G|.
//!
//! Hom-spaces come from Reynolds averaging over the whole group, and
//! decomposition into irreducibles is Las Vegas: split along the kernel of
//! an irreducible factor of the minimal polynomial of a random
//! endomorphism, then recurse.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{factor, matrix_of, minpoly, Fp, FpMatrix};
use crate::groups::{FiniteGroup, GroupHom, RetractionPair};

pub const RETRY_BUDGET: usize = 32;

#[derive(Clone, Debug)]
pub struct Rep {
    group: Arc<FiniteGroup>,
    field: Fp,
    degree: usize,
    /// One matrix per group element, indexed like the Cayley table.
    mats: Vec<FpMatrix>,
}

fn check_characteristic(group: &FiniteGroup, field: Fp) -> Result<()> {
    if (group.order() as u64).is_multiple_of(field.p()) {
        return Err(Error::NonSplittingPrime {
            p: field.p(),
            detail: format!("p divides |G| = {}", group.order()),
        });
    }
    Ok(())
}

impl Rep {
    /// Extends generator matrices to the whole group and checks that the
    /// result respects every edge of the Cayley graph.
    pub fn from_generator_matrices(group: Arc<FiniteGroup>, field: Fp, gens: Vec<FpMatrix>) -> Result<Self> {
        let degree = gens.first().map_or(1, |m| m.rows());
        Self::with_degree(group, field, degree, gens)
    }

    /// As [`Rep::from_generator_matrices`], with the degree given explicitly
    /// (needed when the group has no generators).
    pub fn with_degree(group: Arc<FiniteGroup>, field: Fp, degree: usize, gens: Vec<FpMatrix>) -> Result<Self> {
        check_characteristic(&group, field)?;
        if gens.len() != group.generators().len() {
            return Err(Error::Validation(format!(
                "{} generator matrices for {} generators",
                gens.len(),
                group.generators().len()
            )));
        }
        if gens.iter().any(|m| m.rows() != degree || m.cols() != degree || m.field() != field) {
            return Err(Error::Validation("generator matrices have inconsistent shapes".into()));
        }
        if gens.iter().any(|m| m.inverse().is_none()) {
            return Err(Error::Validation("generator matrix is singular".into()));
        }
        let mut mats: Vec<Option<FpMatrix>> = vec![None; group.order()];
        mats[0] = Some(FpMatrix::identity(field, degree));
        let mut order = vec![0];
        let mut i = 0;
        while i < order.len() {
            let e = order[i];
            for (&g, m) in group.generators().iter().zip(&gens) {
                let x = group.mul(e, g);
                if mats[x].is_none() {
                    mats[x] = Some(mats[e].as_ref().unwrap().mul(m));
                    order.push(x);
                }
            }
            i += 1;
        }
        let mats: Vec<FpMatrix> = mats.into_iter().map(|m| m.expect("generators generate")).collect();
        for e in 0..group.order() {
            for (&g, m) in group.generators().iter().zip(&gens) {
                if mats[e].mul(m) != mats[group.mul(e, g)] {
                    return Err(Error::Validation("matrices violate a group relation".into()));
                }
            }
        }
        Ok(Rep { group, field, degree, mats })
    }

    fn from_element_matrices(group: Arc<FiniteGroup>, field: Fp, degree: usize, mats: Vec<FpMatrix>) -> Self {
        debug_assert_eq!(mats.len(), group.order());
        Rep { group, field, degree, mats }
    }

    pub fn trivial(group: Arc<FiniteGroup>, field: Fp) -> Self {
        let mats = vec![FpMatrix::identity(field, 1); group.order()];
        Self::from_element_matrices(group, field, 1, mats)
    }

    /// Left regular representation: `ρ(g) e_h = e_{gh}`.
    pub fn regular(group: Arc<FiniteGroup>, field: Fp) -> Result<Self> {
        check_characteristic(&group, field)?;
        let n = group.order();
        let mats = (0..n)
            .map(|g| {
                let mut m = FpMatrix::zeros(field, n, n);
                for h in 0..n {
                    m[(group.mul(g, h), h)] = 1 % field.p();
                }
                m
            })
            .collect();
        Ok(Self::from_element_matrices(group, field, n, mats))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    #[inline]
    pub fn matrix(&self, g: usize) -> &FpMatrix {
        &self.mats[g]
    }

    pub fn gen_matrices(&self) -> Vec<FpMatrix> {
        self.group.generators().iter().map(|&g| self.mats[g].clone()).collect()
    }

    pub fn character(&self) -> Vec<u64> {
        let f = self.field;
        self.mats
            .iter()
            .map(|m| (0..self.degree).fold(0, |acc, i| f.add(acc, m[(i, i)])))
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.degree == 1 && self.mats.iter().all(|m| m.is_identity())
    }

    /// Precomposition with a homomorphism into this representation's group.
    pub fn pullback(&self, hom: &GroupHom) -> Rep {
        assert!(**hom.target() == *self.group, "pullback along a map into a different group");
        let mats = hom.images().iter().map(|&k| self.mats[k].clone()).collect();
        Rep::from_element_matrices(hom.source().clone(), self.field, self.degree, mats)
    }

    /// Restriction to the subgroup of a retraction pair.
    pub fn restrict(&self, pair: &RetractionPair) -> Rep {
        self.pullback(pair.embedding())
    }

    /// Inflation along the retraction.
    pub fn inflate(&self, pair: &RetractionPair) -> Rep {
        self.pullback(pair.retraction())
    }

    pub fn tensor(&self, other: &Rep) -> Rep {
        assert_eq!(*self.group, *other.group);
        let mats = self.mats.iter().zip(&other.mats).map(|(a, b)| a.kron(b)).collect();
        Rep::from_element_matrices(self.group.clone(), self.field, self.degree * other.degree, mats)
    }

    /// Contragredient, `ρ*(g) = ρ(g⁻¹)ᵀ` on the dual basis.
    pub fn dual(&self) -> Rep {
        let mats = (0..self.group.order())
            .map(|g| self.mats[self.group.inv(g)].transpose())
            .collect();
        Rep::from_element_matrices(self.group.clone(), self.field, self.degree, mats)
    }

    pub fn direct_sum(&self, other: &Rep) -> Rep {
        assert_eq!(*self.group, *other.group);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(a, b)| FpMatrix::direct_sum(&[a, b]))
            .collect();
        Rep::from_element_matrices(self.group.clone(), self.field, self.degree + other.degree, mats)
    }

    /// The representation on an invariant subspace spanned by the columns of `basis`.
    pub fn subrep(&self, basis: &FpMatrix) -> Result<Rep> {
        let left = basis.left_inverse();
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            let image = m.mul(basis);
            let sub = left.mul(&image);
            if basis.mul(&sub) != image {
                return Err(Error::Validation("subspace is not invariant".into()));
            }
            mats.push(sub);
        }
        Ok(Rep::from_element_matrices(self.group.clone(), self.field, basis.cols(), mats))
    }

    /// `(1/|G|) Σ_g ρ_W(g) T ρ_V(g)⁻¹` for `T: V → W`.
    pub fn reynolds(source: &Rep, target: &Rep, t: &FpMatrix) -> FpMatrix {
        let f = source.field;
        let g = &source.group;
        let mut acc = FpMatrix::zeros(f, target.degree, source.degree);
        for x in 0..g.order() {
            acc = acc.add(&target.mats[x].mul(t).mul(&source.mats[g.inv(x)]));
        }
        acc.scale(f.inv(f.of_usize(g.order())))
    }

    /// Is `t: self → other` an intertwiner?
    pub fn intertwines(&self, other: &Rep, t: &FpMatrix) -> bool {
        self.group
            .generators()
            .iter()
            .all(|&g| other.mats[g].mul(t) == t.mul(&self.mats[g]))
    }
}

/// Basis of `Hom_G(V, W)`; each element is a `deg W × deg V` intertwiner.
#[derive(Clone, Debug)]
pub struct HomSpaceBasis {
    pub basis: Vec<FpMatrix>,
}

impl HomSpaceBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Hom-space by averaging every elementary matrix and taking a canonical
/// basis of the span.
pub fn reynolds_hom_space(v: &Rep, w: &Rep) -> HomSpaceBasis {
    assert_eq!(*v.group, *w.group, "hom-space between different groups");
    let f = v.field;
    let (dv, dw) = (v.degree, w.degree);
    let g = &v.group;
    let scale = f.inv(f.of_usize(g.order()));
    // Column (i, j) of the averaging operator is the average of E_ij.
    let mut op = FpMatrix::zeros(f, dw * dv, dw * dv);
    for x in 0..g.order() {
        let a = &w.mats[x];
        let b = &v.mats[g.inv(x)];
        for i in 0..dw {
            for j in 0..dv {
                let col = i * dv + j;
                for r in 0..dw {
                    let ari = a[(r, i)];
                    if ari == 0 {
                        continue;
                    }
                    for c in 0..dv {
                        let row = r * dv + c;
                        op[(row, col)] = f.add(op[(row, col)], f.mul(ari, b[(j, c)]));
                    }
                }
            }
        }
    }
    let span = op.scale(scale).column_space();
    let basis = span
        .columns()
        .into_iter()
        .map(|c| FpMatrix::from_vec(f, dw, dv, c))
        .collect();
    HomSpaceBasis { basis }
}

/// One isotypic component of a decomposition.
#[derive(Clone, Debug)]
pub struct Component {
    pub irrep: Rep,
    pub multiplicity: usize,
    /// `deg V × (multiplicity · deg irrep)`; copy `k` occupies columns
    /// `k·d .. (k+1)·d` and intertwines `irrep` into `V`.
    pub embedding: FpMatrix,
}

/// Las Vegas decomposition of `v` into irreducibles.
pub fn decompose(v: &Rep, seed: u64) -> Result<Vec<Component>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut leaves = Vec::new();
    let basis = FpMatrix::identity(v.field, v.degree);
    split(v, basis, &mut rng, seed, &mut leaves)?;

    let mut classes: Vec<(Rep, Vec<FpMatrix>)> = Vec::new();
    'leaf: for (leaf, emb) in leaves {
        for (rep, embs) in classes.iter_mut() {
            let hom = reynolds_hom_space(&leaf, rep);
            if hom.dim() == 1 {
                let iso_inv = hom.basis[0].inverse().expect("Schur: nonzero map between irreducibles");
                embs.push(emb.mul(&iso_inv));
                continue 'leaf;
            }
        }
        classes.push((leaf, vec![emb]));
    }
    Ok(classes
        .into_iter()
        .map(|(irrep, embs)| {
            let refs: Vec<&FpMatrix> = embs.iter().collect();
            Component { multiplicity: embs.len(), embedding: FpMatrix::hstack(&refs), irrep }
        })
        .collect())
}

fn split(rep: &Rep, basis: FpMatrix, rng: &mut ChaCha8Rng, seed: u64, leaves: &mut Vec<(Rep, FpMatrix)>) -> Result<()> {
    let f = rep.field;
    let end = reynolds_hom_space(rep, rep);
    if end.dim() == 1 {
        leaves.push((rep.clone(), basis));
        return Ok(());
    }
    for _ in 0..RETRY_BUDGET {
        let mut t = FpMatrix::zeros(f, rep.degree, rep.degree);
        for b in &end.basis {
            t = t.add(&b.scale(rng.random_range(0..f.p())));
        }
        let facs = factor(&minpoly(&t), rng);
        if facs.len() == 1 {
            let deg = facs[0].0.degree().unwrap_or(0);
            if deg > 1 && deg == end.dim() {
                // End_G(V) is a proper field extension of 𝔽_p.
                return Err(Error::NonSplittingPrime {
                    p: f.p(),
                    detail: format!("an irreducible of degree {} has a {}-dimensional commutant", rep.degree, deg),
                });
            }
            continue;
        }
        let u = facs[0].0.eval_matrix(&t).kernel_basis();
        let k = u.cols();
        // Linear projector onto U along a coordinate complement, then average.
        let coords = u.complete_basis().inverse().expect("completed basis");
        let proj = u.mul(&coords.block(0, 0, k, rep.degree));
        let avg = Rep::reynolds(rep, rep, &proj);
        let w = FpMatrix::identity(f, rep.degree).sub(&avg).column_space();
        debug_assert_eq!(w.cols() + k, rep.degree);
        let ru = rep.subrep(&u)?;
        let rw = rep.subrep(&w)?;
        split(&ru, basis.mul(&u), rng, seed, leaves)?;
        split(&rw, basis.mul(&w), rng, seed, leaves)?;
        return Ok(());
    }
    Err(Error::LasVegasExhausted { seed, context: format!("splitting a {}-dimensional module", rep.degree) })
}

/// Explicit isomorphism `X ≅ ⊕ V_k` onto known irreducibles.
#[derive(Clone, Debug)]
pub struct KnownDecomposition {
    pub parts: Vec<Part>,
}

/// One irreducible summand: `embed: V_k → X`, `project: X → V_k`, with
/// `project ∘ embed = id` and `Σ embed ∘ project = id_X`.
#[derive(Clone, Debug)]
pub struct Part {
    pub irr: usize,
    pub embed: FpMatrix,
    pub project: FpMatrix,
}

/// Serializable form of one irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrepData {
    pub degree: usize,
    pub generators: Vec<FpMatrix>,
}

/// The irreducible representations of a group over a splitting field,
/// sorted by degree and then character.
#[derive(Clone, Debug)]
pub struct IrrSet {
    group: Arc<FiniteGroup>,
    field: Fp,
    irreps: Vec<Rep>,
}

impl IrrSet {
    /// Wraps a list of irreducibles, checking the defining invariants.
    pub fn new(group: Arc<FiniteGroup>, field: Fp, mut irreps: Vec<Rep>) -> Result<Self> {
        irreps.sort_by(|a, b| a.degree.cmp(&b.degree).then_with(|| a.character().cmp(&b.character())));
        let set = IrrSet { group, field, irreps };
        set.verify()?;
        Ok(set)
    }

    pub fn verify(&self) -> Result<()> {
        let sum: usize = self.irreps.iter().map(|r| r.degree * r.degree).sum();
        if sum != self.group.order() {
            return Err(Error::NonSplittingPrime {
                p: self.field.p(),
                detail: format!("sum of squared degrees is {sum}, not |G| = {}", self.group.order()),
            });
        }
        for (i, a) in self.irreps.iter().enumerate() {
            if *a.group != *self.group {
                return Err(Error::Validation("irreducible of a different group".into()));
            }
            for (j, b) in self.irreps.iter().enumerate() {
                let dim = reynolds_hom_space(a, b).dim();
                if dim != usize::from(i == j) {
                    return Err(Error::Validation(format!("Hom(V{i}, V{j}) has dimension {dim}")));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn irreps(&self) -> &[Rep] {
        &self.irreps
    }
    pub fn len(&self) -> usize {
        self.irreps.len()
    }
    pub fn is_empty(&self) -> bool {
        self.irreps.is_empty()
    }
    pub fn degrees(&self) -> Vec<usize> {
        self.irreps.iter().map(|r| r.degree).collect()
    }

    pub fn trivial_index(&self) -> usize {
        self.irreps.iter().position(|r| r.is_trivial()).expect("trivial representation present")
    }

    /// `(degree, generator matrices)` per irreducible; enough to rebuild the set.
    pub fn export(&self) -> Vec<IrrepData> {
        self.irreps.iter().map(|r| IrrepData { degree: r.degree, generators: r.gen_matrices() }).collect()
    }

    /// Rebuilds a set from [`IrrSet::export`] output, re-verifying every invariant.
    pub fn import(group: Arc<FiniteGroup>, field: Fp, data: Vec<IrrepData>) -> Result<Self> {
        let irreps = data
            .into_iter()
            .map(|d| Rep::with_degree(group.clone(), field, d.degree, d.generators))
            .collect::<Result<Vec<_>>>()?;
        IrrSet::new(group, field, irreps)
    }

    /// Decomposes `x` over the known irreducibles using hom-space bases.
    /// Deterministic: parts are ordered by irreducible, then hom-basis order.
    pub fn decompose_known(&self, x: &Rep) -> Result<KnownDecomposition> {
        let mut embeds = Vec::new();
        for (k, v) in self.irreps.iter().enumerate() {
            for t in reynolds_hom_space(v, x).basis {
                embeds.push((k, t));
            }
        }
        let refs: Vec<&FpMatrix> = embeds.iter().map(|(_, t)| t).collect();
        let total = if refs.is_empty() { FpMatrix::zeros(self.field, x.degree, 0) } else { FpMatrix::hstack(&refs) };
        let inv = total
            .inverse()
            .ok_or_else(|| Error::Validation("isotypic embeddings do not span the module".into()))?;
        let mut parts = Vec::with_capacity(embeds.len());
        let mut row = 0;
        for (irr, embed) in embeds {
            let d = embed.cols();
            parts.push(Part { irr, project: inv.block(row, 0, d, x.degree), embed });
            row += d;
        }
        Ok(KnownDecomposition { parts })
    }

    /// Multiplicity of each irreducible in `x`.
    pub fn multiplicities(&self, x: &Rep) -> Vec<usize> {
        self.irreps.iter().map(|v| reynolds_hom_space(v, x).dim()).collect()
    }
}

/// All irreducibles, from the Las Vegas decomposition of the regular representation.
pub fn irreducibles(group: &Arc<FiniteGroup>, field: Fp, seed: u64) -> Result<IrrSet> {
    let reg = Rep::regular(group.clone(), field)?;
    let comps = decompose(&reg, seed)?;
    IrrSet::new(group.clone(), field, comps.into_iter().map(|c| c.irrep).collect())
}

/// Matrix of `vec(T) ↦ vec(A T B)` in row-major vectorisation.
pub fn sandwich_operator(a: &FpMatrix, b: &FpMatrix) -> FpMatrix {
    a.kron(&b.transpose())
}

/// Hom-space computed from generator equations only. Independent of the
/// averaging route; used to cross-check it.
pub fn hom_space_by_equations(v: &Rep, w: &Rep) -> HomSpaceBasis {
    let f = v.field;
    let (dv, dw) = (v.degree, w.degree);
    let n = dv * dw;
    let blocks: Vec<FpMatrix> = v
        .group
        .generators()
        .iter()
        .map(|&g| {
            matrix_of(f, n, n, |k| {
                let t = FpMatrix::from_vec(f, dw, dv, (0..n).map(|i| u64::from(i == k)).collect());
                w.mats[g].mul(&t).sub(&t.mul(&v.mats[g])).data().to_vec()
            })
        })
        .collect();
    let kernel = if blocks.is_empty() {
        FpMatrix::identity(f, n)
    } else {
        let refs: Vec<&FpMatrix> = blocks.iter().collect();
        FpMatrix::vstack(&refs).kernel_basis()
    };
    HomSpaceBasis {
        basis: kernel.columns().into_iter().map(|c| FpMatrix::from_vec(f, dw, dv, c)).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::two_sections_example;

    fn f7() -> Fp {
        Fp::new(7).unwrap()
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]], &["r".into(), "t".into()]).unwrap())
    }

    /// The 2-dimensional standard representation of S3 on the sum-zero plane.
    fn standard(g: &Arc<FiniteGroup>) -> Rep {
        let f = f7();
        // basis e1 - e3, e2 - e3; r: 1->2->3->1, t: swap 1,2
        let r = FpMatrix::from_rows(f, &[vec![-1, 1], vec![-1, 0]]);
        let t = FpMatrix::from_rows(f, &[vec![0, 1], vec![1, 0]]);
        Rep::from_generator_matrices(g.clone(), f, vec![r, t]).unwrap()
    }

    #[test]
    fn regular_representation_of_z2_splits_into_two_characters() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let reg = Rep::regular(g, f7()).unwrap();
        let comps = decompose(&reg, 1).unwrap();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.irrep.degree() == 1 && c.multiplicity == 1));
    }

    #[test]
    fn trivial_group_has_one_irreducible() {
        let g = Arc::new(FiniteGroup::trivial());
        let irr = irreducibles(&g, Fp::new(2).unwrap(), 0).unwrap();
        assert_eq!(irr.degrees(), vec![1]);
    }

    #[test]
    fn s3_regular_decomposes_as_1_1_2_2() {
        let g = s3();
        let reg = Rep::regular(g.clone(), f7()).unwrap();
        let comps = decompose(&reg, 5).unwrap();
        let mut dm: Vec<(usize, usize)> = comps.iter().map(|c| (c.irrep.degree(), c.multiplicity)).collect();
        dm.sort();
        assert_eq!(dm, vec![(1, 1), (1, 1), (2, 2)]);
        // The assembled change of basis is block diagonal.
        let refs: Vec<&FpMatrix> = comps.iter().map(|c| &c.embedding).collect();
        let p = FpMatrix::hstack(&refs);
        let pinv = p.inverse().unwrap();
        for x in 0..g.order() {
            let blocks: Vec<FpMatrix> = comps
                .iter()
                .flat_map(|c| std::iter::repeat_n(c.irrep.matrix(x).clone(), c.multiplicity))
                .collect();
            let refs: Vec<&FpMatrix> = blocks.iter().collect();
            assert_eq!(pinv.mul(reg.matrix(x)).mul(&p), FpMatrix::direct_sum(&refs));
        }
    }

    #[test]
    fn hom_space_dimensions() {
        let g = s3();
        let std = standard(&g);
        assert_eq!(reynolds_hom_space(&std, &std).dim(), 1);
        let z2 = Arc::new(FiniteGroup::cyclic(2));
        let triv = Rep::trivial(z2.clone(), f7());
        let sign = Rep::from_generator_matrices(z2, f7(), vec![FpMatrix::from_rows(f7(), &[vec![-1]])]).unwrap();
        assert_eq!(reynolds_hom_space(&triv, &sign).dim(), 0);
        let reg = Rep::regular(g, f7()).unwrap();
        assert_eq!(reynolds_hom_space(&reg, &reg).dim(), 6);
    }

    #[test]
    fn averaging_agrees_with_generator_equations() {
        let g = s3();
        let reg = Rep::regular(g.clone(), f7()).unwrap();
        let std = standard(&g);
        for (a, b) in [(&reg, &std), (&std, &reg), (&std, &std.tensor(&std))] {
            let avg = reynolds_hom_space(a, b);
            let eqs = hom_space_by_equations(a, b);
            assert_eq!(avg.dim(), eqs.dim());
            assert!(avg.basis.iter().all(|t| a.intertwines(b, t)));
        }
    }

    #[test]
    fn irreducibles_of_small_groups() {
        let z4 = Arc::new(FiniteGroup::cyclic(4));
        assert_eq!(irreducibles(&z4, Fp::new(5).unwrap(), 2).unwrap().degrees(), vec![1, 1, 1, 1]);
        let irr = irreducibles(&s3(), f7(), 3).unwrap();
        assert_eq!(irr.degrees(), vec![1, 1, 2]);
        assert_eq!(irr.trivial_index(), 0);
        let (k, _) = two_sections_example();
        let irr = irreducibles(&k, f7(), 4).unwrap();
        assert_eq!(irr.degrees(), vec![1, 1, 1, 1, 2, 2]);
    }

    #[test]
    fn non_splitting_prime_is_reported() {
        // F_5 lacks cube roots of unity, so Z/3 has a 2-dimensional irreducible.
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let err = irreducibles(&z3, Fp::new(5).unwrap(), 1).unwrap_err();
        assert!(matches!(err, Error::NonSplittingPrime { p: 5, .. }), "{err}");
        let err = Rep::regular(z3, Fp::new(3).unwrap()).unwrap_err();
        assert!(matches!(err, Error::NonSplittingPrime { .. }));
    }

    #[test]
    fn restriction_and_inflation() {
        let g = s3();
        let std = standard(&g);
        let (h, emb) = g.subgroup(&[g.generators()[1]], vec!["t".into()]).unwrap();
        let res = std.pullback(&emb);
        let irr_h = irreducibles(&h, f7(), 0).unwrap();
        assert_eq!(irr_h.multiplicities(&res), vec![1, 1]);

        // sign retraction S3 -> <t>
        let s = GroupHom::from_generator_images(g.clone(), h.clone(), &[0, 1]).unwrap();
        let pair = RetractionPair::new(emb, s).unwrap();
        for p in irr_h.irreps() {
            let back = p.inflate(&pair).restrict(&pair);
            for x in 0..h.order() {
                assert_eq!(back.matrix(x), p.matrix(x));
            }
        }
        // restriction is monoidal on the nose
        let lhs = std.tensor(&std).restrict(&pair);
        let rhs = std.restrict(&pair).tensor(&std.restrict(&pair));
        for x in 0..h.order() {
            assert_eq!(lhs.matrix(x), rhs.matrix(x));
        }
    }

    #[test]
    fn std_tensor_std_is_triv_sign_std() {
        let g = s3();
        let irr = irreducibles(&g, f7(), 11).unwrap();
        let std = irr.irreps()[2].clone();
        assert_eq!(irr.multiplicities(&std.tensor(&std)), vec![1, 1, 1]);
        let dec = irr.decompose_known(&std.tensor(&std)).unwrap();
        let n = 4;
        let mut sum = FpMatrix::zeros(f7(), n, n);
        for part in &dec.parts {
            assert!(part.project.mul(&part.embed).is_identity());
            sum = sum.add(&part.embed.mul(&part.project));
        }
        assert!(sum.is_identity());
    }

    #[test]
    fn dual_and_unit() {
        let g = s3();
        let std = standard(&g);
        let dd = std.dual().dual();
        for x in 0..g.order() {
            assert_eq!(dd.matrix(x), std.matrix(x));
        }
        let t = std.tensor(&Rep::trivial(g.clone(), f7()));
        for x in 0..g.order() {
            assert_eq!(t.matrix(x), std.matrix(x));
        }
    }

    #[test]
    fn bad_matrices_are_rejected() {
        let g = s3();
        let f = f7();
        // r must have order 3; the identity-swap pair violates rt = tr^{-1}
        let r = FpMatrix::from_rows(f, &[vec![0, 1], vec![1, 0]]);
        let t = FpMatrix::from_rows(f, &[vec![2, 0], vec![0, 1]]);
        assert!(Rep::from_generator_matrices(g, f, vec![r, t]).is_err());
    }
}
