//! Identity suites run by `cohaq verify`.

use std::sync::Arc;

use coha_core::coproducts::{
    check_associativity, check_bialgebra, check_coassociativity, check_colocality, check_counit, check_davison_joyce,
    check_hexagons_with, check_psi, check_psi_euler, check_supercommutativity, symmetric_basis, BialgebraVariant, Twist,
    Verdict,
};
use coha_core::cohomology::CohClass;
use coha_core::enumerative::{bps_invariants, check_integrality, check_reconstruction};
use coha_core::extdata::{check_r_taut_specialization, r_taut_generic};
use coha_core::yangian::{
    check_phi_cartan, check_phi_first_order, check_phi_specialization, check_phi_structure, check_r2, check_r3,
    compare_coproducts, Generator,
};
use coha_core::{AlgError, DimVector, Poly, Quiver};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{Failure, Status, SuiteReport};

/// The identity suites, in their stable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Psi,
    DavisonJoyce,
    Coassoc,
    Colocality,
    Hexagon,
    Bialgebra,
    Taut,
    Phi,
    Yangian,
    Bps,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Psi,
        Suite::DavisonJoyce,
        Suite::Coassoc,
        Suite::Colocality,
        Suite::Hexagon,
        Suite::Bialgebra,
        Suite::Taut,
        Suite::Phi,
        Suite::Yangian,
        Suite::Bps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Psi => "psi",
            Suite::DavisonJoyce => "davison-joyce",
            Suite::Coassoc => "coassoc",
            Suite::Colocality => "colocality",
            Suite::Hexagon => "hexagon",
            Suite::Bialgebra => "bialgebra",
            Suite::Taut => "taut",
            Suite::Phi => "phi",
            Suite::Yangian => "yangian",
            Suite::Bps => "bps",
        }
    }

    /// What the suite checks.
    pub fn identity(self) -> &'static str {
        match self {
            Suite::Psi => "Ψ-series multiplicativity and translation; Ψ(V, n·z) as an Euler class",
            Suite::DavisonJoyce => "translated localised coproduct equals the vertex coproduct: act*_z ∘ Δ_loc = Δ(z)",
            Suite::Coassoc => "vertex coassociativity (Δ(z)⊗id)Δ(w) = (id⊗Δ(w))Δ(z+w), and the counit",
            Suite::Colocality => "colocality Δ(z) = (−1)^χ σ R(z) Δ(−z) act*_z",
            Suite::Hexagon => "hexagon relations for R(z), with the χ̃ correction for the tautological part",
            Suite::Bialgebra => "W=0 bialgebra compatibility, supercommutativity and shuffle associativity",
            Suite::Taut => "generic tautological R-matrix specialises to the componentwise R-matrix",
            Suite::Phi => "Φ-series: generic vs componentwise, coproduct and translation, first order, Cartan values",
            Suite::Yangian => "Yangian relations R2/R3 and Drinfeld coproduct = extended vertex coproduct",
            Suite::Bps => "cohomological integrality: plethystic reconstruction of the CoHA character, integral Ω_d",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == name)
    }

    fn salt(self) -> u64 {
        Suite::ALL.iter().position(|s| *s == self).expect("listed") as u64
    }
}

/// Which Yangian checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct YangianChecks {
    pub r2: bool,
    pub r3: bool,
    pub drinfeld: bool,
}

impl Default for YangianChecks {
    fn default() -> Self {
        YangianChecks { r2: true, r3: true, drinfeld: true }
    }
}

/// Bounds and seeds shared by the suites.
#[derive(Clone, Debug)]
pub struct SuiteOptions {
    /// Bound on `|d|` for every component that is checked.
    pub max_dim: u32,
    pub seed: u64,
    /// Random classes per quiver in the Davison–Joyce suite.
    pub random_classes: usize,
    /// Polynomial degree bound for random classes.
    pub class_degree: u32,
    /// Degree bound on pairs of generators in the bialgebra suite.
    pub generator_degree: u32,
    /// Order of `z⁻¹`-expansions in the taut suite.
    pub taut_order: usize,
    /// Number of `Φ_{i,r}` checked (`r < phi_order`).
    pub phi_order: usize,
    /// Order in `z⁻¹` for the Drinfeld comparison.
    pub yangian_order: usize,
    /// Bound on `r`, `s`, `n` and `m` in the Yangian suite.
    pub max_exp: u32,
    pub yangian_checks: YangianChecks,
    /// Truncation order in `q` for the BPS suite.
    pub bps_order: i64,
    /// Include the `χ̃` factors in the tautological hexagons (a control run
    /// without them fails on non-symmetric quivers).
    pub hexagon_correction: bool,
}

impl SuiteOptions {
    pub fn new(max_dim: u32) -> Self {
        SuiteOptions {
            max_dim,
            seed: 0x5eed,
            random_classes: 20,
            class_degree: 4,
            generator_degree: 3,
            taut_order: 4,
            phi_order: 6,
            yangian_order: 8,
            max_exp: 4,
            yangian_checks: YangianChecks::default(),
            bps_order: 20,
            hexagon_correction: true,
        }
    }
}

type Check = Box<dyn Fn() -> Result<Verdict, AlgError> + Send + Sync>;

struct Case {
    identity: &'static str,
    component: String,
    run: Check,
}

fn case(identity: &'static str, component: String, run: impl Fn() -> Result<Verdict, AlgError> + Send + Sync + 'static) -> Case {
    Case { identity, component, run: Box::new(run) }
}

fn nonzero_dims(q: &Quiver, bound: u32) -> Vec<DimVector> {
    DimVector::all_up_to(q.vertex_count(), bound).into_iter().filter(|d| !d.is_zero()).collect()
}

fn pairs(q: &Quiver, bound: u32) -> Vec<(DimVector, DimVector)> {
    let mut out = Vec::new();
    for d in nonzero_dims(q, bound) {
        for (a, b) in d.splits() {
            if !a.is_zero() && !b.is_zero() {
                out.push((a, b));
            }
        }
    }
    out
}

fn triples(q: &Quiver, bound: u32) -> Vec<(DimVector, DimVector, DimVector)> {
    let mut out = Vec::new();
    for (a, bc) in pairs(q, bound) {
        for (b, c) in bc.splits() {
            if !b.is_zero() && !c.is_zero() {
                out.push((a.clone(), b, c));
            }
        }
    }
    out
}

/// A random symmetric class at `d`: an integer combination of up to three
/// products of power sums of degree `≤ degree`.
pub fn random_class(rng: &mut ChaCha8Rng, d: &DimVector, degree: u32) -> CohClass {
    let basis = symmetric_basis(d, degree);
    let mut poly = Poly::zero();
    let terms = rng.gen_range(1..=3usize);
    for b in basis.choose_multiple(rng, terms) {
        let mut c = rng.gen_range(-3i64..=3);
        if c == 0 {
            c = 1;
        }
        poly += &b.scale(&coha_core::polyalg::q(c));
    }
    if poly.is_zero() {
        poly = basis[basis.len() - 1].clone();
    }
    CohClass::new(d.clone(), poly).expect("power sums are symmetric")
}

fn label2(a: &DimVector, b: &DimVector) -> String {
    format!("{a}|{b}")
}

fn label3(a: &DimVector, b: &DimVector, c: &DimVector) -> String {
    format!("{a}|{b}|{c}")
}

fn is_symmetric_zero_weight(q: &Quiver) -> bool {
    q.is_symmetric() && q.edges().iter().all(|e| e.weight.iter().all(|&x| x == 0))
}

/// Builds the cases of a suite, or the reason it does not apply.
fn build(suite: Suite, q: &Arc<Quiver>, o: &SuiteOptions) -> Result<Vec<Case>, String> {
    let k = o.max_dim;
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(suite.salt()));
    let mut cases = Vec::new();
    match suite {
        Suite::Psi => {
            for (a, b, c) in triples(q, k) {
                let q = q.clone();
                let label = label3(&a, &b, &c);
                cases.push(case("Ψ multiplicativity and translation", label, move || Ok(check_psi(&q, &a, &b, &c))));
            }
            for (a, b) in pairs(q, k) {
                let q = q.clone();
                let label = label2(&a, &b);
                cases.push(case("Ψ(V, n·z) as an Euler class", label, move || Ok(check_psi_euler(&q, &a, &b))));
            }
        }
        Suite::DavisonJoyce => {
            let dims = nonzero_dims(q, k);
            for n in 0..o.random_classes {
                let d = dims.choose(&mut rng).ok_or("no nonzero dimension vectors")?.clone();
                let class = Arc::new(random_class(&mut rng, &d, o.class_degree));
                for (a, b) in d.splits() {
                    let (q, class) = (q.clone(), class.clone());
                    let label = format!("class #{n} at {d}, split {}", label2(&a, &b));
                    cases.push(case("act*_z ∘ Δ_loc = Δ(z)", label, move || check_davison_joyce(&q, &class, &a, &b)));
                }
            }
        }
        Suite::Coassoc => {
            for (a, b, c) in triples(q, k) {
                let class = random_class(&mut rng, &(&(&a + &b) + &c), o.class_degree.min(3));
                let q = q.clone();
                let label = label3(&a, &b, &c);
                cases.push(case("vertex coassociativity", label, move || check_coassociativity(&q, &class, &a, &b, &c)));
            }
            for d in nonzero_dims(q, k) {
                let class = random_class(&mut rng, &d, o.class_degree.min(3));
                let q = q.clone();
                cases.push(case("counit", format!("{d}"), move || check_counit(&q, &class)));
            }
        }
        Suite::Colocality => {
            for (a, b) in pairs(q, k) {
                let class = random_class(&mut rng, &(&a + &b), o.class_degree.min(3));
                let q = q.clone();
                let label = label2(&a, &b);
                cases.push(case("colocality", label, move || check_colocality(&q, &class, &a, &b)));
            }
        }
        Suite::Hexagon => {
            for (a, b, c) in triples(q, k) {
                let q = q.clone();
                let label = label3(&a, &b, &c);
                let corrected = o.hexagon_correction;
                cases.push(case("hexagons", label, move || Ok(check_hexagons_with(&q, &a, &b, &c, corrected))));
            }
        }
        Suite::Bialgebra => {
            if !q.is_symmetric() {
                return Err(String::from("quiver is not symmetric"));
            }
            let psi = if q.psi_solves_tau(k).is_ok() { Twist::Chi } else { Twist::Triangular };
            let deg = o.generator_degree;
            for (e, ep) in pairs(q, k) {
                let gens: Vec<(Poly, u32)> = graded_basis(&e, deg);
                let gens_p: Vec<(Poly, u32)> = graded_basis(&ep, deg);
                for (b, db) in &gens {
                    for (bp, dbp) in &gens_p {
                        if db + dbp > deg {
                            continue;
                        }
                        let b = Arc::new(CohClass::new(e.clone(), b.clone()).expect("symmetric"));
                        let bp = Arc::new(CohClass::new(ep.clone(), bp.clone()).expect("symmetric"));
                        for (d1, d2) in (&e + &ep).splits() {
                            for variant in [BialgebraVariant::TauBraiding, BialgebraVariant::PsiTwisted(psi)] {
                                let (q, b, bp, d1, d2) = (q.clone(), b.clone(), bp.clone(), d1.clone(), d2.clone());
                                let label = format!(
                                    "{}·{} at {}, {variant:?}",
                                    b.poly.to_canonical(),
                                    bp.poly.to_canonical(),
                                    label2(&d1, &d2)
                                );
                                cases.push(case("Δ(b★b') = Δ(b)★Δ(b')", label, move || {
                                    check_bialgebra(&q, &b, &bp, &d1, &d2, variant)
                                }));
                            }
                        }
                        if is_symmetric_zero_weight(q) {
                            let (q, b, bp) = (q.clone(), b.clone(), bp.clone());
                            let label = format!("{} at {e}, {} at {ep}", b.poly.to_canonical(), bp.poly.to_canonical());
                            cases.push(case("supercommutativity", label, move || check_supercommutativity(&q, &b, &bp)));
                        }
                    }
                }
            }
            for (a, b, c) in triples(q, k) {
                let classes: Vec<CohClass> =
                    [&a, &b, &c].iter().map(|d| random_class(&mut rng, d, deg.min(2))).collect();
                let q = q.clone();
                let label = label3(&a, &b, &c);
                cases.push(case("shuffle associativity", label, move || {
                    check_associativity(&q, &classes[0], &classes[1], &classes[2], Twist::None)
                }));
            }
        }
        Suite::Taut => {
            let generic = Arc::new(r_taut_generic(q, o.taut_order).map_err(|e| e.to_string())?);
            for (a, b) in pairs(q, k) {
                let (q, generic) = (q.clone(), generic.clone());
                let label = label2(&a, &b);
                cases.push(case("R_taut specialisation", label, move || {
                    Ok(match check_r_taut_specialization(&q, &generic, &a, &b)? {
                        None => Verdict::Pass,
                        Some(k) => Verdict::Fail { first_difference: format!("coefficient of z^-{k}") },
                    })
                }));
            }
        }
        Suite::Phi => {
            if !q.is_tripled() {
                return Err(String::from("quiver is not tripled"));
            }
            let r = o.phi_order;
            for i in 0..q.vertex_count() {
                let v = i + 1;
                let qc = q.clone();
                cases.push(case("⊕* and act* on Φ", format!("vertex {v}"), move || check_phi_structure(&qc, i, r)));
                let qc = q.clone();
                cases.push(case("Φ at first order in ℏ", format!("vertex {v}"), move || {
                    check_phi_first_order(&qc, i, r)
                }));
                for d in DimVector::all_up_to(q.vertex_count(), k) {
                    let qc = q.clone();
                    let label = format!("vertex {v}, d = {d}");
                    cases.push(case("generic Φ specialises", label, move || check_phi_specialization(&qc, i, &d, r)));
                }
            }
            let qc = q.clone();
            cases.push(case("Φ_{i,0} at δ_j = c_ij", String::from("all i, j"), move || check_phi_cartan(&qc)));
        }
        Suite::Yangian => {
            if !q.is_tripled() {
                return Err(String::from("quiver is not tripled"));
            }
            let n = q.vertex_count();
            let m = o.max_exp;
            let checks = o.yangian_checks;
            for i in 0..n {
                for j in 0..n {
                    for s in 0..=m {
                        if checks.r2 {
                            let qc = q.clone();
                            let label = format!("i={}, j={}, s={s}", i + 1, j + 1);
                            cases.push(case("R2", label, move || check_r2(&qc, i, j, s)));
                        }
                        for r in 0..=m as usize {
                            if checks.r3 {
                                let qc = q.clone();
                                let label = format!("i={}, j={}, r={r}, s={s}", i + 1, j + 1);
                                cases.push(case("R3", label, move || check_r3(&qc, i, j, r, s)));
                            }
                        }
                    }
                }
                if checks.drinfeld {
                    for e in 0..=m {
                        for gen in [Generator::Cartan { vertex: i, m: e as usize }, Generator::Raising { vertex: i, n: e }] {
                            let qc = q.clone();
                            let order = o.yangian_order;
                            let label = match gen {
                                Generator::Cartan { .. } => format!("ξ[{},{e}] through z^-{order}", i + 1),
                                Generator::Raising { .. } => format!("x+[{},{e}] through z^-{order}", i + 1),
                            };
                            cases.push(case("Drinfeld = extended vertex coproduct", label, move || {
                                compare_coproducts(&qc, gen, order)
                            }));
                        }
                    }
                }
            }
        }
        Suite::Bps => {
            if !q.is_symmetric() {
                return Err(String::from("quiver is not symmetric"));
            }
            let order = o.bps_order;
            let qc = q.clone();
            cases.push(case("plethystic reconstruction", format!("|d| ≤ {k}, q^{order}"), move || {
                check_reconstruction(&qc, k, order)
            }));
            let qc = q.clone();
            cases.push(case("integrality of Ω_d", format!("|d| ≤ {k}, q^{order}"), move || {
                Ok(check_integrality(&bps_invariants(&qc, k, order)?))
            }));
        }
    }
    Ok(cases)
}

/// Products of power sums at `d` with their degrees, up to `max_deg`.
fn graded_basis(d: &DimVector, max_deg: u32) -> Vec<(Poly, u32)> {
    symmetric_basis(d, max_deg)
        .into_iter()
        .map(|p| {
            let deg = p.degree();
            (p, deg)
        })
        .collect()
}

/// Runs one suite. Cases are evaluated in parallel; the report lists them in
/// construction order.
pub fn run_suite(suite: Suite, q: &Arc<Quiver>, o: &SuiteOptions) -> SuiteReport {
    let cases = match build(suite, q, o) {
        Ok(c) => c,
        Err(reason) => {
            return SuiteReport {
                name: suite.name().to_string(),
                identity: suite.identity().to_string(),
                status: Status::Skipped,
                cases: 0,
                passed: 0,
                skipped_reason: Some(reason),
                failures: Vec::new(),
            }
        }
    };
    let outcomes: Vec<Option<Failure>> = cases
        .par_iter()
        .map(|c| {
            let detail = match (c.run)() {
                Ok(Verdict::Pass) => return None,
                Ok(Verdict::Fail { first_difference }) => first_difference,
                Err(e) => format!("error: {e}"),
            };
            Some(Failure { identity: c.identity.to_string(), component: c.component.clone(), first_difference: detail })
        })
        .collect();
    let failures: Vec<Failure> = outcomes.into_iter().flatten().collect();
    SuiteReport {
        name: suite.name().to_string(),
        identity: suite.identity().to_string(),
        status: if failures.is_empty() { Status::Pass } else { Status::Fail },
        cases: cases.len(),
        passed: cases.len() - failures.len(),
        skipped_reason: None,
        failures,
    }
}
