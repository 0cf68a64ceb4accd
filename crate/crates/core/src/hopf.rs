//! The algebra half of the Hopf structure on `L`, the axiom suite, and
//! diagnostics for `ω̃: Rep(K) → coMod(L)`.

use std::collections::BTreeMap;

use crate::coend::{CoalgebraPresentation, FiberSetup};
use crate::error::{Error, Result};
use crate::exactla::{matrix_of, swap_matrix, Fp, FpMatrix};
use crate::reptheory::{reynolds_hom_space, Rep};

/// `L` with its full commutative Hopf structure. Matrices act on column
/// vectors: `mult` is `n × n²`, `unit` is `n × 1`, `antipode` is `n × n`.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    pub base: CoalgebraPresentation,
    pub mult: FpMatrix,
    pub unit: FpMatrix,
    pub antipode: FpMatrix,
}

impl HopfStructure {
    pub fn build(setup: &FiberSetup, base: CoalgebraPresentation) -> Result<Self> {
        let mult = multiplication(setup, &base)?;
        let unit = unit(setup, &base);
        let antipode = antipode(setup, &base)?;
        Ok(HopfStructure { base, mult, unit, antipode })
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn field(&self) -> Fp {
        self.base.field()
    }

    /// Product of two elements of `L`.
    pub fn product(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let f = self.field();
        let xy = FpMatrix::column_vector(f, x).kron(&FpMatrix::column_vector(f, y));
        self.mult.mul(&xy).column(0)
    }

    /// Left multiplication by `x` as an `n × n` matrix.
    pub fn left_mult(&self, x: &[u64]) -> FpMatrix {
        self.mult.mul(&FpMatrix::column_vector(self.field(), x).kron(&FpMatrix::identity(self.field(), self.dim())))
    }

    pub fn is_cocommutative(&self) -> bool {
        let n = self.dim();
        swap_matrix(self.field(), n, n).mul(&self.base.delta) == self.base.delta
    }
}

/// `[ξ⊗v]_V · [η⊗w]_W = [(ξ⊗η) ⊗ (v⊗w)]_{V⊗W}`, re-expressed over `Irr(K)`.
pub fn multiplication(setup: &FiberSetup, pres: &CoalgebraPresentation) -> Result<FpMatrix> {
    let f = setup.field();
    let amb = &pres.ambient;
    let t = amb.total;
    let irr = setup.irr_k().irreps();
    let mut m0 = FpMatrix::zeros(f, t, t * t);
    for (kv, v) in irr.iter().enumerate() {
        for (kw, w) in irr.iter().enumerate() {
            let x = v.tensor(w);
            let (dv, dw) = (v.degree(), w.degree());
            let dx = dv * dw;
            let class = setup.class_matrix(dx, &setup.decomposition_of(&x)?);
            for a in 0..dv {
                for j in 0..dv {
                    for b in 0..dw {
                        for l in 0..dw {
                            let col = amb.index(kv, a, j) * t + amb.index(kw, b, l);
                            let src = (a * dw + b) * dx + (j * dw + l);
                            for r in 0..t {
                                m0[(r, col)] = class[(r, src)];
                            }
                        }
                    }
                }
            }
        }
    }
    let rel = pres.relations.column_space();
    let id = FpMatrix::identity(f, t);
    let pm0 = pres.projection.mul(&m0);
    if !pm0.mul(&rel.kron(&id)).is_zero() || !pm0.mul(&id.kron(&rel)).is_zero() {
        return Err(Error::Descent("multiplication".into()));
    }
    Ok(pm0.mul(&pres.section.kron(&pres.section)))
}

/// The class of `1* ⊗ 1` in the trivial summand.
pub fn unit(setup: &FiberSetup, pres: &CoalgebraPresentation) -> FpMatrix {
    let f = setup.field();
    let k = setup.irr_k().trivial_index();
    let mut e = vec![0; pres.ambient.total];
    e[pres.ambient.index(k, 0, 0)] = 1 % f.p();
    FpMatrix::column_vector(f, &pres.quotient(&e))
}

/// `T[ξ⊗v]_V = [ι(v) ⊗ ξ]_{V*}`, with `ι: V → V**` the canonical map.
pub fn antipode(setup: &FiberSetup, pres: &CoalgebraPresentation) -> Result<FpMatrix> {
    let f = setup.field();
    let amb = &pres.ambient;
    let t = amb.total;
    let mut t0 = FpMatrix::zeros(f, t, t);
    for (k, v) in setup.irr_k().irreps().iter().enumerate() {
        let d = v.degree();
        let class = setup.class_matrix(d, &setup.decomposition_of(&v.dual())?);
        for a in 0..d {
            for j in 0..d {
                let col = amb.index(k, a, j);
                for r in 0..t {
                    t0[(r, col)] = class[(r, j * d + a)];
                }
            }
        }
    }
    let pt0 = pres.projection.mul(&t0);
    if !pt0.mul(&pres.relations).is_zero() {
        return Err(Error::Descent("antipode".into()));
    }
    Ok(pt0.mul(&pres.section))
}

/// Named verdicts; every entry must be `true`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: BTreeMap<String, bool>,
}

impl AxiomReport {
    pub fn record(&mut self, name: &str, ok: bool) {
        self.entries.insert(name.to_string(), ok);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.values().all(|&v| v)
    }

    pub fn failures(&self) -> Vec<String> {
        self.entries.iter().filter(|(_, &v)| !v).map(|(k, _)| k.clone()).collect()
    }

    pub fn merge(&mut self, other: &AxiomReport) {
        self.entries.extend(other.entries.iter().map(|(k, v)| (k.clone(), *v)));
    }
}

/// `(m⊗m)(id⊗swap⊗id)(Δx ⊗ Δy)` without forming `n⁴`-sized matrices.
fn product_of_coproducts(h: &HopfStructure, dx: &[u64], dy: &[u64]) -> Vec<u64> {
    let f = h.field();
    let n = h.dim();
    let as_square = |v: &[u64]| FpMatrix::from_vec(f, n, n, v.to_vec());
    let (x, y) = (as_square(dx), as_square(dy));
    // slices M_a[i][k] = m[a][i*n + k]
    let slices: Vec<FpMatrix> = (0..n).map(|a| FpMatrix::from_vec(f, n, n, h.mult.row(a).to_vec())).collect();
    let mut out = vec![0; n * n];
    for a in 0..n {
        let inner = x.transpose().mul(&slices[a]).mul(&y);
        for b in 0..n {
            let dot = inner
                .data()
                .iter()
                .zip(slices[b].data())
                .fold(0, |acc, (&p, &q)| f.add(acc, f.mul(p, q)));
            out[a * n + b] = dot;
        }
    }
    out
}

/// Checks every Hopf axiom as an exact matrix identity, plus `H`-equivariance
/// of all structure maps and coactions.
pub fn verify_hopf(setup: &FiberSetup, h: &HopfStructure) -> AxiomReport {
    let f = h.field();
    let n = h.dim();
    let id = FpMatrix::identity(f, n);
    let (m, u, t) = (&h.mult, &h.unit, &h.antipode);
    let (eps, delta) = (&h.base.eps, &h.base.delta);
    let one = FpMatrix::identity(f, 1);
    let mut r = AxiomReport::default();

    r.record("coassociativity", delta.kron(&id).mul(delta) == id.kron(delta).mul(delta));
    r.record("counit_left", eps.kron(&id).mul(delta) == id);
    r.record("counit_right", id.kron(eps).mul(delta) == id);
    r.record("associativity", m.mul(&m.kron(&id)) == m.mul(&id.kron(m)));
    r.record("commutativity", m.mul(&swap_matrix(f, n, n)) == *m);
    r.record("unit_left", m.mul(&u.kron(&id)) == id);
    r.record("unit_right", m.mul(&id.kron(u)) == id);
    let ue = u.mul(eps);
    r.record("antipode_left", m.mul(&t.kron(&id)).mul(delta) == ue);
    r.record("antipode_right", m.mul(&id.kron(t)).mul(delta) == ue);
    r.record("counit_multiplicative", eps.mul(m) == eps.kron(eps));
    r.record("counit_unital", eps.mul(u) == one);
    r.record("coproduct_unital", delta.mul(u) == u.kron(u));
    let mut multiplicative = true;
    'outer: for x in 0..n {
        for y in 0..n {
            let mut ex = vec![0; n];
            let mut ey = vec![0; n];
            ex[x] = 1;
            ey[y] = 1;
            let lhs = delta.mul_vec(&h.product(&ex, &ey));
            let rhs = product_of_coproducts(h, &delta.column(x), &delta.column(y));
            if lhs != rhs {
                multiplicative = false;
                break 'outer;
            }
        }
    }
    r.record("coproduct_multiplicative", multiplicative);

    let gens = setup.small().generators();
    let act = &h.base.action;
    r.record("equivariant_counit", gens.iter().all(|&g| eps.mul(&act[g]) == *eps));
    r.record("equivariant_coproduct", gens.iter().all(|&g| delta.mul(&act[g]) == act[g].kron(&act[g]).mul(delta)));
    r.record("equivariant_multiplication", gens.iter().all(|&g| m.mul(&act[g].kron(&act[g])) == act[g].mul(m)));
    r.record("equivariant_unit", gens.iter().all(|&g| act[g].mul(u) == *u));
    r.record("equivariant_antipode", gens.iter().all(|&g| t.mul(&act[g]) == act[g].mul(t)));
    r.record(
        "equivariant_coactions",
        h.base.coactions.iter().enumerate().all(|(k, nu)| {
            let w = setup.omega(k);
            gens.iter().all(|&g| nu.mul(w.matrix(g)) == w.matrix(g).kron(&act[g]).mul(nu))
        }),
    );
    r
}

/// An `H`-representation with an `L`-coaction `M → M ⊗ L`.
#[derive(Clone, Debug)]
pub struct Comodule {
    pub carrier: Rep,
    pub coaction: FpMatrix,
}

impl Comodule {
    /// `m ↦ m ⊗ u(1)`.
    pub fn trivial(carrier: Rep, h: &HopfStructure) -> Self {
        let coaction = FpMatrix::identity(h.field(), carrier.degree()).kron(&h.unit);
        Comodule { carrier, coaction }
    }

    pub fn degree(&self) -> usize {
        self.carrier.degree()
    }

    pub fn check_axioms(&self, h: &HopfStructure) -> AxiomReport {
        let f = h.field();
        let d = self.degree();
        let n = h.dim();
        let id_m = FpMatrix::identity(f, d);
        let rho = &self.coaction;
        let mut r = AxiomReport::default();
        r.record("comodule_counit", id_m.kron(&h.base.eps).mul(rho) == id_m);
        r.record(
            "comodule_coassociativity",
            rho.kron(&FpMatrix::identity(f, n)).mul(rho) == id_m.kron(&h.base.delta).mul(rho),
        );
        let group = self.carrier.group();
        r.record(
            "comodule_equivariance",
            group.generators().iter().all(|&g| {
                rho.mul(self.carrier.matrix(g)) == self.carrier.matrix(g).kron(&h.base.action[g]).mul(rho)
            }),
        );
        r
    }
}

/// `ω̃(V) = (ω(V), ν_V)`.
pub fn omega_tilde(setup: &FiberSetup, h: &HopfStructure, v: &Rep) -> Result<Comodule> {
    Ok(Comodule { carrier: v.restrict(setup.pair()), coaction: h.base.coaction_for(setup, v)? })
}

/// Comodule maps `M → N`: `H`-equivariant and commuting with the coactions,
/// solved as one linear system on the entries of `T`.
pub fn comod_hom_space(a: &Comodule, b: &Comodule, h: &HopfStructure) -> Vec<FpMatrix> {
    let f = h.field();
    let (da, db) = (a.degree(), b.degree());
    let n = h.dim();
    let unknowns = da * db;
    let id_l = FpMatrix::identity(f, n);
    let gens = a.carrier.group().generators().to_vec();
    let rows = gens.len() * db * da + db * n * da;
    let system = matrix_of(f, unknowns, rows, |k| {
        let t = FpMatrix::from_vec(f, db, da, (0..unknowns).map(|i| u64::from(i == k)).collect());
        let mut out = Vec::with_capacity(rows);
        for &g in &gens {
            out.extend_from_slice(b.carrier.matrix(g).mul(&t).sub(&t.mul(a.carrier.matrix(g))).data());
        }
        out.extend_from_slice(t.kron(&id_l).mul(&a.coaction).sub(&b.coaction.mul(&t)).data());
        out
    });
    system
        .kernel_basis()
        .columns()
        .into_iter()
        .map(|c| FpMatrix::from_vec(f, db, da, c))
        .collect()
}

/// `ν_{V⊗W} = (id ⊗ m)(id_V ⊗ swap ⊗ id_L)(ν_V ⊗ ν_W)` as maps
/// `V⊗W → V⊗W⊗L`.
pub fn monoidality_holds(setup: &FiberSetup, h: &HopfStructure, v: &Rep, w: &Rep) -> Result<bool> {
    let f = h.field();
    let n = h.dim();
    let (dv, dw) = (v.degree(), w.degree());
    let nu_v = h.base.coaction_for(setup, v)?;
    let nu_w = h.base.coaction_for(setup, w)?;
    let nu_vw = h.base.coaction_for(setup, &v.tensor(w))?;
    let id = |k| FpMatrix::identity(f, k);
    let shuffle = id(dv).kron(&swap_matrix(f, n, dw)).kron(&id(n));
    let rhs = id(dv * dw).kron(&h.mult).mul(&shuffle).mul(&nu_v.kron(&nu_w));
    Ok(nu_vw == rhs)
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    /// `dim Hom_comod(ω̃V_i, ω̃V_j)`.
    pub comodule_hom_dims: Vec<Vec<usize>>,
    /// `dim Hom_K(V_i, V_j)`.
    pub group_hom_dims: Vec<Vec<usize>>,
    pub axioms: AxiomReport,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.axioms.all_pass()
    }
}

/// Checks that `ω̃` behaves as an equivalence on irreducibles. The
/// dimension count stands in for essential surjectivity.
pub fn equivalence_diagnostics(setup: &FiberSetup, h: &HopfStructure) -> Result<EquivalenceReport> {
    let irr = setup.irr_k().irreps();
    let comods: Vec<Comodule> = irr.iter().map(|v| omega_tilde(setup, h, v)).collect::<Result<_>>()?;
    let mut axioms = AxiomReport::default();
    axioms.record(
        "coactions_are_comodules",
        comods.iter().all(|c| c.check_axioms(h).all_pass()),
    );
    let comodule_hom_dims: Vec<Vec<usize>> = comods
        .iter()
        .map(|a| comods.iter().map(|b| comod_hom_space(a, b, h).len()).collect())
        .collect();
    let group_hom_dims: Vec<Vec<usize>> = irr
        .iter()
        .map(|a| irr.iter().map(|b| reynolds_hom_space(a, b).dim()).collect())
        .collect();
    let kronecker = comodule_hom_dims
        .iter()
        .enumerate()
        .all(|(i, row)| row.iter().enumerate().all(|(j, &d)| d == usize::from(i == j)));
    axioms.record("fully_faithful", kronecker && comodule_hom_dims == group_hom_dims);

    let mut monoidal = true;
    for v in irr {
        for w in irr {
            monoidal &= monoidality_holds(setup, h, v, w)?;
        }
    }
    axioms.record("monoidal", monoidal);

    let k_triv = &irr[setup.irr_k().trivial_index()];
    let unit_comod = omega_tilde(setup, h, k_triv)?;
    let trivial = Comodule::trivial(setup.trivial_h().clone(), h);
    axioms.record("unit_is_trivial_comodule", unit_comod.coaction == trivial.coaction);

    let counted: usize = (0..irr.len())
        .map(|k| reynolds_hom_space(setup.omega(k), setup.trivial_h()).dim() * irr[k].degree())
        .sum();
    axioms.record("dimension_count", counted == h.dim());
    Ok(EquivalenceReport { comodule_hom_dims, group_hom_dims, axioms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric3, two_sections};
    use crate::coend::route_b;
    use crate::groups::RetractionPair;

    fn build(pair: RetractionPair, p: u64) -> (FiberSetup, HopfStructure) {
        let setup = FiberSetup::new(pair, Fp::new(p).unwrap(), 5).unwrap();
        let pres = route_b(&setup).unwrap();
        let h = HopfStructure::build(&setup, pres).unwrap();
        (setup, h)
    }

    #[test]
    fn unit_is_idempotent_and_counital() {
        let (_, h) = build(two_sections(1), 7);
        let u = h.unit.column(0);
        assert_eq!(h.product(&u, &u), u);
        assert_eq!(h.base.eps.mul(&h.unit), FpMatrix::identity(h.field(), 1));
    }

    #[test]
    fn antipode_is_an_involution_but_not_trivial() {
        let (_, h) = build(RetractionPair::trivial_subgroup(cyclic(3)), 7);
        let id = FpMatrix::identity(h.field(), 3);
        assert_eq!(h.antipode.mul(&h.antipode), id);
        assert_ne!(h.antipode, id);
    }

    #[test]
    fn cocommutativity_separates_the_two_sections() {
        assert!(build(two_sections(1), 7).1.is_cocommutative());
        assert!(!build(two_sections(2), 7).1.is_cocommutative());
    }

    #[test]
    fn axioms_hold_and_catch_a_damaged_product() {
        let (setup, mut h) = build(two_sections(2), 7);
        assert_eq!(verify_hopf(&setup, &h).failures(), Vec::<String>::new());
        h.mult = h.mult.scale(2);
        let failures = verify_hopf(&setup, &h).failures();
        assert!(failures.contains(&"unit_left".to_string()), "{failures:?}");
        assert!(failures.contains(&"counit_multiplicative".to_string()), "{failures:?}");
    }

    #[test]
    fn damaged_coproduct_breaks_coassociativity() {
        let (setup, mut h) = build(RetractionPair::trivial_subgroup(symmetric3()), 7);
        let n = h.dim();
        let mut delta = h.base.delta.clone();
        delta[(0, n - 1)] = h.field().add(delta[(0, n - 1)], 1);
        h.base.delta = delta;
        assert!(!verify_hopf(&setup, &h).all_pass());
    }

    #[test]
    fn trivial_comodule_and_unit_object() {
        let (setup, h) = build(two_sections(1), 7);
        let triv = Comodule::trivial(setup.trivial_h().clone(), &h);
        assert!(triv.check_axioms(&h).all_pass());
        let k_triv = &setup.irr_k().irreps()[setup.irr_k().trivial_index()];
        assert_eq!(omega_tilde(&setup, &h, k_triv).unwrap().coaction, triv.coaction);
    }

    #[test]
    fn standard_tensor_standard_is_monoidal() {
        let (setup, h) = build(RetractionPair::trivial_subgroup(symmetric3()), 7);
        let std = setup.irr_k().irreps().iter().find(|v| v.degree() == 2).unwrap().clone();
        assert!(monoidality_holds(&setup, &h, &std, &std).unwrap());
    }

    #[test]
    fn comodule_homs_are_kronecker_on_irreducibles() {
        let (setup, h) = build(two_sections(2), 7);
        let report = equivalence_diagnostics(&setup, &h).unwrap();
        assert!(report.ok(), "{:?}", report.axioms.failures());
        let n = setup.irr_k().len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(report.comodule_hom_dims[i][j], usize::from(i == j));
            }
        }
    }
}
