//! The whole reconstruction for one retraction pair, collected into a
//! serializable report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::catalog::identify;
use crate::coend::{
    check_route, framed_decomposition_check, route_a, route_b, route_c, FiberSetup, FramedDecompositionCheck,
    RouteObject,
};
use crate::error::{Error, Result};
use crate::exactla::Fp;
use crate::groups::{is_isomorphic, FiniteGroup, RetractionPair};
use crate::hopf::{equivalence_diagnostics, verify_hopf, AxiomReport, EquivalenceReport, HopfStructure};
use crate::seed::sub_seed;
use crate::spectrum::{conjugation_check, points, semidirect_check, verify_kernel_iso, KernelIso, PointSet};

pub const REPORT_SCHEMA: &str = "tannaka.reconstruction/1";
pub const COMPARISON_SCHEMA: &str = "tannaka.compare-sections/1";

/// Which comparison routes to build next to the quotient presentation,
/// which is always built.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Routes {
    #[default]
    All,
    A,
    B,
    C,
}

impl Routes {
    fn wants_a(self) -> bool {
        matches!(self, Routes::All | Routes::A)
    }
    fn wants_c(self) -> bool {
        matches!(self, Routes::All | Routes::C)
    }
}

impl FromStr for Routes {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Routes::All),
            "A" | "a" => Ok(Routes::A),
            "B" | "b" => Ok(Routes::B),
            "C" | "c" => Ok(Routes::C),
            other => Err(Error::Validation(format!("unknown routes selection {other:?}; expected all, A, B or C"))),
        }
    }
}

impl fmt::Display for Routes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Routes::All => "all",
            Routes::A => "A",
            Routes::B => "B",
            Routes::C => "C",
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub routes: Routes,
    /// Wall-clock timings make reports non-reproducible, so they are opt-in.
    pub timings: bool,
}

/// Everything computed for one retraction pair.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub setup: FiberSetup,
    pub seed: u64,
    pub route_a: Option<RouteObject>,
    pub route_c: Option<RouteObject>,
    pub hopf: HopfStructure,
    pub framed: FramedDecompositionCheck,
    pub equivalence: EquivalenceReport,
    pub points: PointSet,
    pub kernel_iso: KernelIso,
    pub conjugation_ok: bool,
    pub semidirect_ok: bool,
    /// Every named verdict except the three group-theoretic ones above.
    pub axioms: AxiomReport,
    pub timings_ms: BTreeMap<String, u64>,
}

struct Clock {
    enabled: bool,
    #[cfg(not(target_arch = "wasm32"))]
    last: Option<std::time::Instant>,
    laps: BTreeMap<String, u64>,
}

impl Clock {
    fn new(enabled: bool) -> Self {
        Clock {
            enabled,
            #[cfg(not(target_arch = "wasm32"))]
            last: enabled.then(std::time::Instant::now),
            laps: BTreeMap::new(),
        }
    }

    fn lap(&mut self, name: &str) {
        if !self.enabled {
            return;
        }
        #[cfg(not(target_arch = "wasm32"))]
        {
            let now = std::time::Instant::now();
            if let Some(last) = self.last.replace(now) {
                self.laps.insert(name.to_string(), now.duration_since(last).as_millis() as u64);
            }
        }
        #[cfg(target_arch = "wasm32")]
        let _ = name;
    }
}

/// Computes irreducibles for both groups from `options.seed`, then runs
/// [`reconstruct_with`].
pub fn reconstruct(pair: RetractionPair, field: Fp, options: Options) -> Result<Reconstruction> {
    let setup = FiberSetup::new(pair, field, options.seed)?;
    reconstruct_with(setup, options)
}

/// Runs the pipeline on a prepared setup.
pub fn reconstruct_with(setup: FiberSetup, options: Options) -> Result<Reconstruction> {
    let mut clock = Clock::new(options.timings);
    let mut axioms = AxiomReport::default();

    let pres = route_b(&setup)?;
    clock.lap("route_B");
    let (big, small) = (setup.big().order(), setup.small().order());
    axioms.record("dimension_is_index", pres.dim() * small == big);

    let route_a = options.routes.wants_a().then(|| route_a(&setup));
    let route_c = options.routes.wants_c().then(|| route_c(&setup));
    for (name, route) in [("A", &route_a), ("C", &route_c)] {
        if let Some(route) = route {
            let (bijective, equivariant) = check_route(&setup, route, &pres);
            axioms.record(&format!("route_{name}_dimension"), route.dim() == pres.dim());
            axioms.record(&format!("route_{name}_bijective"), bijective);
            axioms.record(&format!("route_{name}_equivariant"), equivariant);
        }
    }
    let framed = framed_decomposition_check(&setup, &pres)?;
    axioms.record("framed_decomposition", framed.ok());
    clock.lap("routes");

    let hopf = HopfStructure::build(&setup, pres)?;
    axioms.merge(&verify_hopf(&setup, &hopf));
    clock.lap("hopf");
    let equivalence = equivalence_diagnostics(&setup, &hopf)?;
    axioms.merge(&equivalence.axioms);
    clock.lap("comodules");

    let points = points(&hopf, sub_seed(options.seed, 3))?;
    let kernel_iso = verify_kernel_iso(&setup, &hopf, &points)?;
    let conjugation_ok = conjugation_check(&setup, &hopf, &points, &kernel_iso);
    let semidirect_ok = semidirect_check(&setup, &hopf, &points, &kernel_iso)?;
    axioms.record("cocommutative_iff_abelian", hopf.is_cocommutative() == points.group.is_abelian());
    clock.lap("points");

    Ok(Reconstruction {
        setup,
        seed: options.seed,
        route_a,
        route_c,
        hopf,
        framed,
        equivalence,
        points,
        kernel_iso,
        conjugation_ok,
        semidirect_ok,
        axioms,
        timings_ms: clock.laps,
    })
}

impl Reconstruction {
    pub fn dim(&self) -> usize {
        self.hopf.dim()
    }

    pub fn recovered_group(&self) -> &Arc<FiniteGroup> {
        &self.points.group
    }

    /// Names of every failed verdict, empty when the reconstruction is sound.
    pub fn failures(&self) -> Vec<String> {
        let mut out = self.axioms.failures();
        if !self.kernel_iso.verdict {
            out.push("kernel_iso".into());
        }
        if !self.conjugation_ok {
            out.push("conjugation".into());
        }
        if !self.semidirect_ok {
            out.push("semidirect".into());
        }
        out
    }

    pub fn ok(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn report(&self) -> ReconstructionReport {
        let g = self.recovered_group();
        ReconstructionReport {
            schema: REPORT_SCHEMA.to_string(),
            prime: self.setup.field().p(),
            seed: self.seed,
            irr_degrees_k: self.setup.irr_k().degrees(),
            irr_degrees_h: self.setup.irr_h().degrees(),
            dims: RouteDims {
                route_a: self.route_a.as_ref().map(RouteObject::dim),
                route_b: self.dim(),
                route_c: self.route_c.as_ref().map(RouteObject::dim),
                ambient: self.hopf.base.ambient.total,
            },
            axioms: self.axioms.entries.clone(),
            recovered_group: RecoveredGroup {
                order: g.order(),
                name: identify(g),
                cayley: g.cayley(),
                abelian: g.is_abelian(),
            },
            kernel_iso: KernelIsoReport {
                verdict: self.kernel_iso.verdict,
                witness: self.kernel_iso.witness.clone(),
            },
            conjugation_ok: self.conjugation_ok,
            semidirect_ok: self.semidirect_ok,
            cocommutative: self.hopf.is_cocommutative(),
            timings_ms: self.timings_ms.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteDims {
    #[serde(rename = "route_A")]
    pub route_a: Option<usize>,
    #[serde(rename = "route_B")]
    pub route_b: usize,
    #[serde(rename = "route_C")]
    pub route_c: Option<usize>,
    pub ambient: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecoveredGroup {
    pub order: usize,
    pub name: String,
    pub cayley: Vec<Vec<usize>>,
    pub abelian: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelIsoReport {
    pub verdict: bool,
    /// Point `i` is evaluation at element `witness[i]` of `K`.
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    pub schema: String,
    pub prime: u64,
    pub seed: u64,
    #[serde(rename = "irr_degrees_K")]
    pub irr_degrees_k: Vec<usize>,
    #[serde(rename = "irr_degrees_H")]
    pub irr_degrees_h: Vec<usize>,
    pub dims: RouteDims,
    pub axioms: BTreeMap<String, bool>,
    pub recovered_group: RecoveredGroup,
    pub kernel_iso: KernelIsoReport,
    pub conjugation_ok: bool,
    pub semidirect_ok: bool,
    pub cocommutative: bool,
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionComparison {
    pub schema: String,
    pub sections: Vec<ReconstructionReport>,
    pub isomorphic: bool,
    pub abelian: Vec<bool>,
    pub cocommutative: Vec<bool>,
    pub message: String,
}

/// Both pairs must share `K`, `H` and the embedding.
pub fn check_same_subgroup(a: &RetractionPair, b: &RetractionPair) -> Result<()> {
    let same = a.big().cayley() == b.big().cayley()
        && a.small().cayley() == b.small().cayley()
        && (0..a.small().order()).all(|h| a.embedding().apply(h) == b.embedding().apply(h));
    if same {
        Ok(())
    } else {
        Err(Error::Validation("the two retractions do not share the same K, H and embedding".into()))
    }
}

/// Compares the groups recovered from two sections of the same `(K, H)`.
pub fn compare_sections(first: &Reconstruction, second: &Reconstruction) -> Result<SectionComparison> {
    check_same_subgroup(first.setup.pair(), second.setup.pair())?;
    let (g1, g2) = (first.recovered_group(), second.recovered_group());
    let isomorphic = is_isomorphic(g1, g2)?.is_some();
    let (n1, n2) = (identify(g1), identify(g2));
    let message = if isomorphic {
        format!("isomorphic: {n1}-type")
    } else {
        format!("NOT isomorphic: {n1}-type vs {n2}-type")
    };
    Ok(SectionComparison {
        schema: COMPARISON_SCHEMA.to_string(),
        sections: vec![first.report(), second.report()],
        isomorphic,
        abelian: vec![g1.is_abelian(), g2.is_abelian()],
        cocommutative: vec![first.hopf.is_cocommutative(), second.hopf.is_cocommutative()],
        message,
    })
}
