//! The coalgebra of a restriction functor `ω: Rep(K) → Rep(H)` with the
//! section given by inflation along a retraction `s: K → H`.
//!
//! Every coend over `Rep(K)` collapses to a sum over `Irr(K)` because 𝔽_p
//! is a splitting field. Three presentations are built:
//!
//! * route A: `⊕_V Hom_H(ωV, 𝟙) ⊗ ωV`;
//! * route B: the ambient `Λ₀ = ⊕_V ωV* ⊗ ωV` modulo the balancing
//!   relations `φ_{P,V} − ψ_{P,V}` for `P ∈ Irr(H)`;
//! * route C: `⊕_V Hom_H(𝟙, ωV) ⊗ ωV*`.
//!
//! Route B carries the structure maps. In the ambient, the class of
//! `ξ ⊗ v` in the `V` summand is stored at `offset(V) + a·dim V + j` for
//! `ξ = e_a*`, `v = e_j`.

use crate::error::{Error, Result};
use crate::exactla::{Fp, FpMatrix};
use crate::groups::{FiniteGroup, RetractionPair};
use crate::reptheory::{irreducibles, reynolds_hom_space, HomSpaceBasis, IrrSet, KnownDecomposition, Part, Rep};
use crate::seed::sub_seed;
use std::sync::Arc;

/// Everything needed to talk about `ω`, `s` and the module structure.
#[derive(Clone, Debug)]
pub struct FiberSetup {
    pair: RetractionPair,
    field: Fp,
    irr_k: IrrSet,
    irr_h: IrrSet,
    omega: Vec<Rep>,
    trivial_h: Rep,
}

impl FiberSetup {
    pub fn new(pair: RetractionPair, field: Fp, seed: u64) -> Result<Self> {
        let (seed_k, seed_h) = Self::irreducible_seeds(seed);
        let irr_k = irreducibles(pair.big(), field, seed_k)?;
        let irr_h = irreducibles(pair.small(), field, seed_h)?;
        Self::with_irreducibles(pair, field, irr_k, irr_h)
    }

    /// Seeds used for the decompositions of `K` and `H` under a job seed.
    pub fn irreducible_seeds(seed: u64) -> (u64, u64) {
        (sub_seed(seed, 1), sub_seed(seed, 2))
    }

    pub fn with_irreducibles(pair: RetractionPair, field: Fp, irr_k: IrrSet, irr_h: IrrSet) -> Result<Self> {
        if **irr_k.group() != **pair.big() || **irr_h.group() != **pair.small() {
            return Err(Error::Validation("irreducibles belong to different groups".into()));
        }
        if irr_k.field() != field || irr_h.field() != field {
            return Err(Error::Validation("irreducibles over a different prime".into()));
        }
        let omega = irr_k.irreps().iter().map(|v| v.restrict(&pair)).collect();
        let trivial_h = Rep::trivial(pair.small().clone(), field);
        let setup = FiberSetup { pair, field, irr_k, irr_h, omega, trivial_h };
        if !setup.section_is_strict() {
            return Err(Error::Validation("ω∘s is not the identity on Irr(H)".into()));
        }
        Ok(setup)
    }

    pub fn pair(&self) -> &RetractionPair {
        &self.pair
    }
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn irr_k(&self) -> &IrrSet {
        &self.irr_k
    }
    pub fn irr_h(&self) -> &IrrSet {
        &self.irr_h
    }
    pub fn big(&self) -> &Arc<FiniteGroup> {
        self.pair.big()
    }
    pub fn small(&self) -> &Arc<FiniteGroup> {
        self.pair.small()
    }
    /// `ω(V)` for the `k`-th irreducible of `K`.
    pub fn omega(&self, k: usize) -> &Rep {
        &self.omega[k]
    }
    pub fn trivial_h(&self) -> &Rep {
        &self.trivial_h
    }

    /// `ω(s(P)) = P` as matrices, for every irreducible `P` of `H`.
    pub fn section_is_strict(&self) -> bool {
        self.irr_h.irreps().iter().all(|p| {
            let back = p.inflate(&self.pair).restrict(&self.pair);
            (0..self.small().order()).all(|h| back.matrix(h) == p.matrix(h))
        })
    }

    /// The module constraint `c_{P,M}: ω(s(P) ⊗ M) → P ⊗ ω(M)` is the
    /// identity matrix; check it on all simple pairs.
    pub fn module_constraint_is_identity(&self) -> bool {
        self.irr_h.irreps().iter().all(|p| {
            self.irr_k.irreps().iter().enumerate().all(|(k, v)| {
                let lhs = p.inflate(&self.pair).tensor(v).restrict(&self.pair);
                let rhs = p.tensor(&self.omega[k]);
                (0..self.small().order()).all(|h| lhs.matrix(h) == rhs.matrix(h))
            })
        })
    }

    pub fn ambient(&self) -> Ambient {
        let dims = self.irr_k.degrees();
        let mut offsets = Vec::with_capacity(dims.len());
        let mut total = 0;
        for d in &dims {
            offsets.push(total);
            total += d * d;
        }
        Ambient { dims, offsets, total }
    }

    fn identity_decomposition(&self, k: usize) -> KnownDecomposition {
        let d = self.irr_k.irreps()[k].degree();
        let id = FpMatrix::identity(self.field, d);
        KnownDecomposition { parts: vec![Part { irr: k, embed: id.clone(), project: id }] }
    }

    /// Decomposition of `x`, shortcut to the identity when `x` is literally
    /// one of the chosen irreducibles.
    pub fn decomposition_of(&self, x: &Rep) -> Result<KnownDecomposition> {
        for (k, v) in self.irr_k.irreps().iter().enumerate() {
            if v.degree() == x.degree() && (0..self.big().order()).all(|g| v.matrix(g) == x.matrix(g)) {
                return Ok(self.identity_decomposition(k));
            }
        }
        self.irr_k.decompose_known(x)
    }

    /// Matrix `X* ⊗ X → Λ₀` sending `ξ ⊗ x` to its coend class
    /// `Σ_j [ξ∘ι_j ⊗ π_j x]_{V_j}`.
    pub fn class_matrix(&self, dim_x: usize, decomposition: &KnownDecomposition) -> FpMatrix {
        let f = self.field;
        let amb = self.ambient();
        let mut out = FpMatrix::zeros(f, amb.total, dim_x * dim_x);
        for part in &decomposition.parts {
            let d = amb.dims[part.irr];
            let off = amb.offsets[part.irr];
            for a in 0..dim_x {
                for b in 0..dim_x {
                    let col = a * dim_x + b;
                    for a2 in 0..d {
                        let e = part.embed[(a, a2)];
                        if e == 0 {
                            continue;
                        }
                        for j2 in 0..d {
                            let row = off + a2 * d + j2;
                            out[(row, col)] = f.add(out[(row, col)], f.mul(e, part.project[(j2, b)]));
                        }
                    }
                }
            }
        }
        out
    }

    /// Balancing relations for one pair `(P, M)`: columns `φ − ψ` over the
    /// basis `ξ ⊗ β ⊗ p ⊗ m` of `ωM* ⊗ P* ⊗ P ⊗ ωM`.
    pub fn relations_for(&self, p: &Rep, m: &Rep) -> Result<FpMatrix> {
        let f = self.field;
        let (dp, dm) = (p.degree(), m.degree());
        let x = p.inflate(&self.pair).tensor(m);
        let dx = dp * dm;
        let class_m = self.class_matrix(dm, &self.decomposition_of(m)?);
        let class_x = self.class_matrix(dx, &self.decomposition_of(&x)?);
        let amb = class_m.rows();
        let mut out = FpMatrix::zeros(f, amb, dx * dx);
        for a in 0..dm {
            for b in 0..dp {
                for c in 0..dp {
                    for j in 0..dm {
                        let col = ((a * dp + b) * dp + c) * dm + j;
                        // ψ: the functional β⊗ξ on P⊗M paired with p⊗m.
                        let psi_col = (b * dm + a) * dx + (c * dm + j);
                        for r in 0..amb {
                            let phi = if b == c { class_m[(r, a * dm + j)] } else { 0 };
                            out[(r, col)] = f.sub(phi, class_x[(r, psi_col)]);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// All relations over simple pairs `P ∈ Irr(H)`, `V ∈ Irr(K)`.
    pub fn simple_relations(&self) -> Result<FpMatrix> {
        let mut blocks = Vec::new();
        for p in self.irr_h.irreps() {
            for v in self.irr_k.irreps() {
                blocks.push(self.relations_for(p, v)?);
            }
        }
        let refs: Vec<&FpMatrix> = blocks.iter().collect();
        Ok(FpMatrix::hstack(&refs))
    }

    /// Diagonal action of `h` on the ambient `⊕ ωV* ⊗ ωV`.
    pub fn ambient_action(&self, h: usize) -> FpMatrix {
        let blocks: Vec<FpMatrix> = self
            .omega
            .iter()
            .map(|w| w.matrix(self.small().inv(h)).transpose().kron(w.matrix(h)))
            .collect();
        let refs: Vec<&FpMatrix> = blocks.iter().collect();
        FpMatrix::direct_sum(&refs)
    }

    /// `ev_k` on the ambient: `[ξ ⊗ v]_V ↦ ξ(ρ_V(k) v)`.
    pub fn ambient_evaluation(&self, k: usize) -> FpMatrix {
        let amb = self.ambient();
        let mut row = vec![0; amb.total];
        for (idx, v) in self.irr_k.irreps().iter().enumerate() {
            let d = amb.dims[idx];
            for a in 0..d {
                for j in 0..d {
                    row[amb.offsets[idx] + a * d + j] = v.matrix(k)[(a, j)];
                }
            }
        }
        FpMatrix::row_vector(self.field, &row)
    }
}

/// Block layout of `Λ₀ = ⊕_V ωV* ⊗ ωV`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ambient {
    pub dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl Ambient {
    #[inline]
    pub fn index(&self, irr: usize, a: usize, j: usize) -> usize {
        self.offsets[irr] + a * self.dims[irr] + j
    }
}

/// `L(ω)` presented as a quotient of `Λ₀`, with its coalgebra structure.
#[derive(Clone, Debug)]
pub struct CoalgebraPresentation {
    pub ambient: Ambient,
    pub relations: FpMatrix,
    /// `dim L × dim Λ₀`
    pub projection: FpMatrix,
    /// `dim Λ₀ × dim L`
    pub section: FpMatrix,
    /// H-action on `L`, one matrix per element of `H`.
    pub action: Vec<FpMatrix>,
    /// `1 × dim L`
    pub eps: FpMatrix,
    /// `dim L² × dim L`
    pub delta: FpMatrix,
    /// `ν_V: ωV → ωV ⊗ L` for each `V ∈ Irr(K)`.
    pub coactions: Vec<FpMatrix>,
}

impl CoalgebraPresentation {
    pub fn dim(&self) -> usize {
        self.projection.rows()
    }
    pub fn field(&self) -> Fp {
        self.projection.field()
    }

    /// Quotient map applied to an ambient vector.
    pub fn quotient(&self, v: &[u64]) -> Vec<u64> {
        self.projection.mul_vec(v)
    }

    /// `L` as a representation of `H`.
    pub fn as_rep(&self, small: &Arc<FiniteGroup>) -> Result<Rep> {
        let gens = small.generators().iter().map(|&h| self.action[h].clone()).collect();
        Rep::with_degree(small.clone(), self.field(), self.dim(), gens)
    }

    /// Coaction `ν_X: ωX → ωX ⊗ L` for any `K`-representation with a known
    /// decomposition: `ν(x) = Σ_i e_i ⊗ q([e_i* ⊗ x])`.
    pub fn coaction_for(&self, setup: &FiberSetup, x: &Rep) -> Result<FpMatrix> {
        let dx = x.degree();
        let class = setup.class_matrix(dx, &setup.decomposition_of(x)?);
        Ok(self.coaction_from_class(dx, &class))
    }

    fn coaction_from_class(&self, dx: usize, class: &FpMatrix) -> FpMatrix {
        let n = self.dim();
        let q = self.projection.mul(class);
        let mut nu = FpMatrix::zeros(self.field(), dx * n, dx);
        for i in 0..dx {
            for b in 0..dx {
                for l in 0..n {
                    nu[(i * n + l, b)] = q[(l, i * dx + b)];
                }
            }
        }
        nu
    }
}

/// Route B: ambient modulo balancing relations, with `ε`, `Δ`, `ν` and the
/// `H`-action installed and checked to descend.
pub fn route_b(setup: &FiberSetup) -> Result<CoalgebraPresentation> {
    let f = setup.field;
    let amb = setup.ambient();
    let relations = setup.simple_relations()?;
    let coker = relations.cokernel();
    let (proj, sec) = (coker.projection, coker.section);
    let n = coker.dim;

    let small = setup.small();
    let mut action = Vec::with_capacity(small.order());
    for h in 0..small.order() {
        let a0 = setup.ambient_action(h);
        if !proj.mul(&a0).mul(&relations).is_zero() {
            return Err(Error::Descent(format!("H-action of element {h}")));
        }
        action.push(proj.mul(&a0).mul(&sec));
    }

    let mut eps0 = vec![0; amb.total];
    for (irr, &d) in amb.dims.iter().enumerate() {
        for a in 0..d {
            eps0[amb.index(irr, a, a)] = 1 % f.p();
        }
    }
    let eps0 = FpMatrix::row_vector(f, &eps0);
    if !eps0.mul(&relations).is_zero() {
        return Err(Error::Descent("counit".into()));
    }

    let delta0 = ambient_delta(f, &amb);
    let pp = proj.kron(&proj);
    if !pp.mul(&delta0).mul(&relations).is_zero() {
        return Err(Error::Descent("comultiplication".into()));
    }

    let mut pres = CoalgebraPresentation {
        ambient: amb,
        relations,
        projection: proj.clone(),
        section: sec.clone(),
        action,
        eps: eps0.mul(&sec),
        delta: pp.mul(&delta0).mul(&sec),
        coactions: Vec::new(),
    };
    debug_assert_eq!(pres.delta.rows(), n * n);
    pres.coactions = (0..setup.irr_k.len())
        .map(|k| {
            let d = setup.irr_k.irreps()[k].degree();
            pres.coaction_from_class(d, &setup.class_matrix(d, &setup.identity_decomposition(k)))
        })
        .collect();
    Ok(pres)
}

/// Matrix-coefficient comultiplication `[ξ⊗v] ↦ Σ_i [ξ⊗e_i] ⊗ [e_i*⊗v]` on `Λ₀`.
fn ambient_delta(f: Fp, amb: &Ambient) -> FpMatrix {
    let t = amb.total;
    let mut delta0 = FpMatrix::zeros(f, t * t, t);
    for (irr, &d) in amb.dims.iter().enumerate() {
        for a in 0..d {
            for j in 0..d {
                for i in 0..d {
                    delta0[(amb.index(irr, a, i) * t + amb.index(irr, i, j), amb.index(irr, a, j))] = 1 % f.p();
                }
            }
        }
    }
    delta0
}

/// Which formula a [`RouteObject`] came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteKind {
    /// `⊕ Hom_H(ωV, 𝟙) ⊗ ωV`
    A,
    /// `⊕ Hom_H(𝟙, ωV) ⊗ ωV*`
    C,
}

/// An object of `Rep(H)` given summand by summand; basis ordered by
/// `(V, hom-basis element, coordinate)`.
#[derive(Clone, Debug)]
pub struct RouteObject {
    pub kind: RouteKind,
    pub summands: Vec<(usize, HomSpaceBasis)>,
    pub action: Vec<FpMatrix>,
}

impl RouteObject {
    pub fn dim(&self) -> usize {
        self.action.first().map_or(0, |m| m.rows())
    }
}

fn route_object(setup: &FiberSetup, kind: RouteKind) -> RouteObject {
    let f = setup.field;
    let small = setup.small();
    let summands: Vec<(usize, HomSpaceBasis)> = (0..setup.irr_k.len())
        .map(|k| {
            let w = setup.omega(k);
            let hom = match kind {
                RouteKind::A => reynolds_hom_space(w, setup.trivial_h()),
                RouteKind::C => reynolds_hom_space(setup.trivial_h(), w),
            };
            (k, hom)
        })
        .collect();
    let action = (0..small.order())
        .map(|h| {
            let blocks: Vec<FpMatrix> = summands
                .iter()
                .filter(|(_, hom)| hom.dim() > 0)
                .map(|(k, hom)| {
                    let w = setup.omega(*k);
                    let m = match kind {
                        RouteKind::A => w.matrix(h).clone(),
                        RouteKind::C => w.matrix(small.inv(h)).transpose(),
                    };
                    FpMatrix::identity(f, hom.dim()).kron(&m)
                })
                .collect();
            if blocks.is_empty() {
                return FpMatrix::zeros(f, 0, 0);
            }
            let refs: Vec<&FpMatrix> = blocks.iter().collect();
            FpMatrix::direct_sum(&refs)
        })
        .collect();
    RouteObject { kind, summands, action }
}

/// Route A: `L(ω) = ∫^M Hom_H(ωM, 𝟙) ⊗ ωM`, collapsed over `Irr(K)`.
pub fn route_a(setup: &FiberSetup) -> RouteObject {
    route_object(setup, RouteKind::A)
}

/// Route C: `∫^M Hom_H(𝟙, ωM) ⊗ ωM*`, collapsed over `Irr(K)`.
pub fn route_c(setup: &FiberSetup) -> RouteObject {
    route_object(setup, RouteKind::C)
}

/// The comparison map from route A or C into the quotient of route B.
/// For A it views an invariant functional `α` as an element of `ωV*`;
/// for C it pairs the invariant vector with the dual basis.
pub fn route_map(setup: &FiberSetup, route: &RouteObject, pres: &CoalgebraPresentation) -> FpMatrix {
    let f = setup.field;
    let amb = &pres.ambient;
    let mut cols = Vec::new();
    for (k, hom) in &route.summands {
        let d = amb.dims[*k];
        for t in &hom.basis {
            for j in 0..d {
                let mut v = vec![0; amb.total];
                for x in 0..d {
                    match route.kind {
                        // α ⊗ e_j with α a 1×d functional
                        RouteKind::A => v[amb.index(*k, x, j)] = t[(0, x)],
                        // e_j* ⊗ v with v a d×1 invariant vector
                        RouteKind::C => v[amb.index(*k, j, x)] = t[(x, 0)],
                    }
                }
                cols.push(pres.quotient(&v));
            }
        }
    }
    if cols.is_empty() {
        return FpMatrix::zeros(f, pres.dim(), 0);
    }
    FpMatrix::from_columns(f, pres.dim(), &cols)
}

#[derive(Clone, Debug)]
pub struct RouteComparison {
    pub dim_a: usize,
    pub dim_b: usize,
    pub dim_c: usize,
    pub a_bijective: bool,
    pub a_equivariant: bool,
    pub c_bijective: bool,
    pub c_equivariant: bool,
}

impl RouteComparison {
    pub fn ok(&self) -> bool {
        self.dim_a == self.dim_b
            && self.dim_b == self.dim_c
            && self.a_bijective
            && self.a_equivariant
            && self.c_bijective
            && self.c_equivariant
    }
}

/// `(bijective, equivariant)` for the comparison map of one route.
pub fn check_route(setup: &FiberSetup, route: &RouteObject, pres: &CoalgebraPresentation) -> (bool, bool) {
    let map = route_map(setup, route, pres);
    let bijective = map.is_square() && map.inverse().is_some();
    let equivariant = setup
        .small()
        .generators()
        .iter()
        .all(|&h| map.mul(&route.action[h]) == pres.action[h].mul(&map));
    (bijective, equivariant)
}

/// Builds the comparison maps and checks they are `H`-equivariant bijections.
pub fn compare_routes(setup: &FiberSetup, a: &RouteObject, c: &RouteObject, pres: &CoalgebraPresentation) -> RouteComparison {
    let check = |route: &RouteObject| check_route(setup, route, pres);
    let (a_bijective, a_equivariant) = check(a);
    let (c_bijective, c_equivariant) = check(c);
    RouteComparison {
        dim_a: a.dim(),
        dim_b: pres.dim(),
        dim_c: c.dim(),
        a_bijective,
        a_equivariant,
        c_bijective,
        c_equivariant,
    }
}

/// `ℋ(A, B) = ⊕_V Hom_H(A, ωV) ⊗ Hom_H(ωV, B)`.
#[derive(Clone, Debug)]
pub struct FramedSpace {
    pub summands: Vec<FramedSummand>,
}

#[derive(Clone, Debug)]
pub struct FramedSummand {
    pub irr: usize,
    pub framing_in: HomSpaceBasis,
    pub framing_out: HomSpaceBasis,
}

impl FramedSpace {
    pub fn dim(&self) -> usize {
        self.summands.iter().map(|s| s.framing_in.dim() * s.framing_out.dim()).sum()
    }
}

pub fn framed_objects(setup: &FiberSetup, a: &Rep, b: &Rep) -> FramedSpace {
    let summands = (0..setup.irr_k.len())
        .map(|k| FramedSummand {
            irr: k,
            framing_in: reynolds_hom_space(a, setup.omega(k)),
            framing_out: reynolds_hom_space(setup.omega(k), b),
        })
        .collect();
    FramedSpace { summands }
}

#[derive(Clone, Debug)]
pub struct FramedDecompositionCheck {
    /// `dim ℋ(A, 𝟙)` for each `A ∈ Irr(H)`.
    pub framed_dims: Vec<usize>,
    /// `dim Hom_H(A, L)` for each `A ∈ Irr(H)`.
    pub isotypic: Vec<usize>,
    pub predicted_dim: usize,
    pub dim_l: usize,
}

impl FramedDecompositionCheck {
    pub fn ok(&self) -> bool {
        self.predicted_dim == self.dim_l && self.framed_dims == self.isotypic
    }
}

/// `L ≅ ⊕_{A ∈ Irr(H)} ℋ(A, 𝟙) ⊗ A`: total dimension and isotypic multiplicities.
pub fn framed_decomposition_check(setup: &FiberSetup, pres: &CoalgebraPresentation) -> Result<FramedDecompositionCheck> {
    let l = pres.as_rep(setup.small())?;
    let mut framed_dims = Vec::new();
    let mut isotypic = Vec::new();
    let mut predicted_dim = 0;
    for a in setup.irr_h.irreps() {
        let d = framed_objects(setup, a, setup.trivial_h()).dim();
        predicted_dim += d * a.degree();
        framed_dims.push(d);
        isotypic.push(reynolds_hom_space(a, &l).dim());
    }
    Ok(FramedDecompositionCheck { framed_dims, isotypic, predicted_dim, dim_l: pres.dim() })
}
