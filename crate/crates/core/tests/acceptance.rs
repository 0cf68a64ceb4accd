//! Acceptance suite. Prints one PASS/FAIL line per criterion, then fails
//! the test if any criterion failed. Every comparison is exact.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use tannaka_core::catalog::{battery, identify, peter_weyl_groups, two_sections};
use tannaka_core::coend::{compare_routes, FiberSetup};
use tannaka_core::exactla::Fp;
use tannaka_core::groups::{splitting_prime, RetractionPair};
use tannaka_core::pipeline::{compare_sections, reconstruct, reconstruct_with, Options, Reconstruction};
use tannaka_core::reptheory::IrrSet;

const SEED: u64 = 20240611;
const SECTION_BUDGET: Duration = Duration::from_secs(5);
const PETER_WEYL_BUDGET: Duration = Duration::from_secs(30);

const HOPF_AXIOMS: [&str; 19] = [
    "coassociativity",
    "counit_left",
    "counit_right",
    "associativity",
    "commutativity",
    "unit_left",
    "unit_right",
    "antipode_left",
    "antipode_right",
    "counit_multiplicative",
    "counit_unital",
    "coproduct_unital",
    "coproduct_multiplicative",
    "equivariant_counit",
    "equivariant_coproduct",
    "equivariant_multiplication",
    "equivariant_unit",
    "equivariant_antipode",
    "equivariant_coactions",
];

struct Outcome {
    criterion: u8,
    title: &'static str,
    problems: Vec<String>,
    detail: String,
}

impl Outcome {
    fn new(criterion: u8, title: &'static str) -> Self {
        Outcome { criterion, title, problems: Vec::new(), detail: String::new() }
    }
    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.problems.push(what.into());
        }
    }
    fn passed(&self) -> bool {
        self.problems.is_empty()
    }
    /// Writes through the raw handle so the lines survive output capture.
    fn print(&self) {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let mut out = std::io::stdout().lock();
        writeln!(out, "criterion {} [{verdict}] {} {}", self.criterion, self.title, self.detail).unwrap();
        for p in &self.problems {
            writeln!(out, "    - {p}").unwrap();
        }
    }
}

fn prime_for(pair: &RetractionPair) -> Fp {
    Fp::new(splitting_prime(pair.big(), 3).unwrap()).unwrap()
}

fn run(pair: RetractionPair) -> (Reconstruction, Duration) {
    let field = prime_for(&pair);
    let start = Instant::now();
    let r = reconstruct(pair, field, Options { seed: SEED, ..Default::default() }).expect("reconstruction");
    (r, start.elapsed())
}

fn two_sections_regression() -> Outcome {
    let mut o = Outcome::new(1, "two sections of the order-12 group");
    let field = Fp::new(7).unwrap();
    let mut runs = Vec::new();
    for s in [1, 2] {
        let start = Instant::now();
        let r = reconstruct(two_sections(s), field, Options { seed: SEED, ..Default::default() }).unwrap();
        let took = start.elapsed();
        o.require(r.setup.big().order() == 12, "K has order 12");
        o.require(r.dim() == 6, format!("s{s}: dim L = {} != 6", r.dim()));
        o.require(took < SECTION_BUDGET, format!("s{s}: took {took:?}"));
        o.require(r.ok(), format!("s{s}: failed verdicts {:?}", r.failures()));
        runs.push((r, took));
    }
    let (g1, g2) = (runs[0].0.recovered_group(), runs[1].0.recovered_group());
    o.require(g1.is_abelian() && identify(g1) == "Z6", format!("s1 recovered {}", identify(g1)));
    o.require(!g2.is_abelian() && identify(g2) == "S3", format!("s2 recovered {}", identify(g2)));
    let cmp = compare_sections(&runs[0].0, &runs[1].0).unwrap();
    o.require(!cmp.isomorphic, "recovered groups reported isomorphic");
    o.detail = format!("({}; {:?} / {:?})", cmp.message, runs[0].1, runs[1].1);
    o
}

fn peter_weyl_battery() -> Outcome {
    let mut o = Outcome::new(2, "Peter-Weyl battery with H trivial");
    let mut total = Duration::ZERO;
    for (name, k) in peter_weyl_groups() {
        let (r, took) = run(RetractionPair::trivial_subgroup(k.clone()));
        total += took;
        o.require(r.dim() == k.order(), format!("{name}: dim L = {}", r.dim()));
        o.require(
            tannaka_core::groups::is_isomorphic(r.recovered_group(), &k).unwrap().is_some(),
            format!("{name}: recovered group not isomorphic to K"),
        );
        o.require(common::matches_function_algebra(&r.setup, &r.hopf), format!("{name}: not O(K)"));
        o.require(r.ok(), format!("{name}: failed verdicts {:?}", r.failures()));
    }
    o.require(total < PETER_WEYL_BUDGET, format!("took {total:?}"));
    o.detail = format!("({total:?})");
    o
}

fn route_agreement(cases: &[(String, Reconstruction)]) -> Outcome {
    let mut o = Outcome::new(3, "routes A, B, C agree through verified bijections");
    for (name, r) in cases {
        let (a, c) = (r.route_a.as_ref().unwrap(), r.route_c.as_ref().unwrap());
        let cmp = compare_routes(&r.setup, a, c, &r.hopf.base);
        o.require(cmp.ok(), format!("{name}: {cmp:?}"));
    }
    o.detail = format!("({} cases)", cases.len());
    o
}

fn axiom_suite(cases: &[(String, Reconstruction)]) -> Outcome {
    let mut o = Outcome::new(4, "Hopf axioms and H-equivariance");
    for (name, r) in cases {
        for key in HOPF_AXIOMS {
            o.require(r.axioms.entries.get(key) == Some(&true), format!("{name}: {key}"));
        }
    }
    o.detail = format!("({} identities x {} cases)", HOPF_AXIOMS.len(), cases.len());
    o
}

fn equivalence(cases: &[(String, Reconstruction)]) -> Outcome {
    let mut o = Outcome::new(5, "comodule category diagnostics");
    for (name, r) in cases {
        let e = &r.equivalence;
        let n = e.comodule_hom_dims.len();
        let kronecker = (0..n).all(|i| (0..n).all(|j| e.comodule_hom_dims[i][j] == usize::from(i == j)));
        o.require(kronecker, format!("{name}: hom dims {:?}", e.comodule_hom_dims));
        for key in ["monoidal", "unit_is_trivial_comodule", "coactions_are_comodules", "fully_faithful"] {
            o.require(e.axioms.entries.get(key) == Some(&true), format!("{name}: {key}"));
        }
    }
    o.detail = format!("({} cases)", cases.len());
    o
}

fn group_predictions(cases: &[(String, Reconstruction)]) -> Outcome {
    let mut o = Outcome::new(6, "kernel, conjugation and semidirect checks");
    for (name, r) in cases {
        o.require(r.kernel_iso.verdict, format!("{name}: kernel iso"));
        o.require(r.conjugation_ok, format!("{name}: conjugation"));
        o.require(r.semidirect_ok, format!("{name}: semidirect"));
        let (kernel, _) = r.setup.pair().retraction().kernel();
        o.require(
            r.hopf.is_cocommutative() == kernel.is_abelian(),
            format!("{name}: cocommutativity does not match abelianness of the kernel"),
        );
    }
    o.detail = format!("({} cases)", cases.len());
    o
}

fn determinism(cases: &[(String, Reconstruction)]) -> Outcome {
    let mut o = Outcome::new(7, "byte-identical replay");
    for (name, r) in cases {
        let first = serde_json::to_string_pretty(&r.report()).unwrap();
        let (cold, _) = run(r.setup.pair().clone());
        o.require(serde_json::to_string_pretty(&cold.report()).unwrap() == first, format!("{name}: cold replay differs"));
        let field = r.setup.field();
        let rebuild = |set: &IrrSet| IrrSet::import(set.group().clone(), field, set.export()).unwrap();
        let warm_setup = FiberSetup::with_irreducibles(
            r.setup.pair().clone(),
            field,
            rebuild(r.setup.irr_k()),
            rebuild(r.setup.irr_h()),
        )
        .unwrap();
        let warm = reconstruct_with(warm_setup, Options { seed: SEED, ..Default::default() }).unwrap();
        o.require(serde_json::to_string_pretty(&warm.report()).unwrap() == first, format!("{name}: warm replay differs"));
    }
    o.detail = format!("({} cases, cold and warm)", cases.len());
    o
}

#[test]
fn acceptance() {
    let cases: Vec<(String, Reconstruction)> = battery().into_iter().map(|c| (c.name, run(c.pair).0)).collect();
    let outcomes = [
        two_sections_regression(),
        peter_weyl_battery(),
        route_agreement(&cases),
        axiom_suite(&cases),
        equivalence(&cases),
        group_predictions(&cases),
        determinism(&cases),
    ];
    for o in &outcomes {
        o.print();
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.criterion).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
