//! Named verification suites behind `ghostw verify`, shared with the
//! acceptance tests.
//!
//! Every suite is deterministic for a fixed (n, max_degree, seed): sampled
//! checks derive their RNG from the seed and the suite name, so results do
//! not depend on scheduling. Independent suites run on a small worker pool
//! capped by GHOSTW_THREADS.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use ghostw_core::centers::{casimir, casimir_even, compute_center, GhostCenter};
use ghostw_core::exactmath::{frac, in_span, rat, rat_to_string, Rat, RationalMatrix};
use ghostw_core::hc::{
    central_character, eta, in_d, in_d_positive, invariant_polynomials,
    is_invariant as poly_is_invariant, HCPolynomial, WeylElement,
};
use ghostw_core::osp::{
    check_form_invariance, check_good_grading, check_jacobi, Algebra, LieElement, Weight,
};
use ghostw_core::uea::{
    adjoint, enumerate_pbw, multiply, normal_order, supercommutator, UEAElement,
};
use ghostw_core::whittaker::{top_space_dimension, verify_theorem_a, CheckStatus, WhittakerError};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{DimensionsReport, GroupReport, OutcomeReport, Status};

pub const CHECK_NAMES: &[&str] = &["grading", "pbw", "hc", "pinczon", "theorem-a", "modules"];

/// The spec default: deep enough for the degree-4 criteria and for the
/// Casimir ghost at degree 2n.
pub fn default_max_degree(n: usize) -> usize {
     (2 * n + 1).max(4)
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n: usize,
    pub max_degree: usize,
    pub seed: u64,
}

#[derive(Debug)]
pub enum CheckError {
    /// Bad configuration: reported as a usage error (exit 2).
    Usage(String),
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CheckError {}

#[derive(Debug, Clone)]
pub struct GroupResult {
    pub group: String,
    pub outcomes: Vec<OutcomeReport>,
    pub dimensions: Option<DimensionsReport>,
}

impl GroupResult {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| o.status != Status::Fail)
    }

    pub fn into_report(self) -> GroupReport {
        GroupReport {
            group: self.group,
            checks: self.outcomes,
            dimensions: self.dimensions,
        }
    }
}

fn outcome(name: &str, ok: bool, witness: impl FnOnce() -> String) -> OutcomeReport {
    OutcomeReport {
        name: name.into(),
        status: if ok { Status::Pass } else { Status::Fail },
        witness: if ok { None } else { Some(witness()) },
    }
}

fn from_result(name: &str, r: Result<(), String>) -> OutcomeReport {
    match r {
        Ok(()) => OutcomeReport {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        },
        Err(w) => OutcomeReport {
            name: name.into(),
            status: Status::Fail,
            witness: Some(w),
        },
    }
}

fn derive_rng(seed: u64, name: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Worker-pool cap: GHOSTW_THREADS if set, else the machine parallelism.
fn thread_cap() -> Result<usize, CheckError> {
    match std::env::var("GHOSTW_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&t| t >= 1)
            .ok_or_else(|| {
                CheckError::Usage(format!(
                    "GHOSTW_THREADS must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(std::thread::available_parallelism()
            .map(|p| p.get())
            .unwrap_or(1)),
    }
}

/// Run the named suites in dependency order with a deterministic merge.
pub fn run_checks(names: &[String], cfg: &RunConfig) -> Result<Vec<GroupResult>, CheckError> {
    if cfg.n < 1 {
        return Err(CheckError::Usage("n must be a positive integer".into()));
    }
    for name in names {
        if !CHECK_NAMES.contains(&name.as_str()) {
            return Err(CheckError::Usage(format!(
                "unknown check {:?}; known checks: {}",
                name,
                CHECK_NAMES.join(", ")
            )));
        }
    }
    let alg = Algebra::build(cfg.n).map_err(|e| CheckError::Usage(e.to_string()))?;
    let workers = thread_cap()?.min(names.len()).max(1);
    let slots: Vec<Mutex<Option<Result<GroupResult, CheckError>>>> =
        names.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= names.len() {
                    break;
                }
                let result = dispatch(&names[i], &alg, cfg);
                *slots[i].lock().expect("no poisoned check slot") = Some(result);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().expect("slot").expect("every check ran"))
        .collect()
}

fn dispatch(name: &str, alg: &Algebra, cfg: &RunConfig) -> Result<GroupResult, CheckError> {
    match name {
        "grading" => Ok(grading_check(alg)),
        "pbw" => Ok(pbw_check(alg, cfg)),
        "hc" => Ok(hc_check(alg, cfg)),
        "pinczon" => Ok(pinczon_check(alg)),
        "theorem-a" => theorem_a_check(alg, cfg),
        "modules" => Ok(modules_check(alg, cfg)),
        _ => unreachable!("validated above"),
    }
}

// ---- structure suite ---------------------------------------------------

fn grading_check(alg: &Algebra) -> GroupResult {
    GroupResult {
        group: "grading".into(),
        outcomes: vec![
            from_result("super-jacobi", check_jacobi(alg)),
            from_result("form-invariance", check_form_invariance(alg)),
            from_result("good-grading-axioms", check_good_grading(alg)),
        ],
        dimensions: None,
    }
}

// ---- PBW engine suite ---------------------------------------------------

fn random_word(rng: &mut ChaCha8Rng, alg: &Algebra, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..alg.dim())).collect()
}

fn pbw_check(alg: &Algebra, cfg: &RunConfig) -> GroupResult {
    let mut rng = derive_rng(cfg.seed, "pbw");
    let mut outcomes = Vec::new();

    let mut canonical = true;
    for _ in 0..60 {
        let w = random_word(&mut rng, alg, 6);
        let once = normal_order(alg, &w, Rat::one());
        let mut again = UEAElement::zero();
        for (m, c) in once.terms() {
            again = again.plus(&normal_order(alg, &m.word(), c.clone()));
        }
        if once != again {
            canonical = false;
            break;
        }
    }
    outcomes.push(outcome("normal-form-canonical", canonical, || {
        "renormalizing a normal form changed it".into()
    }));

    let mut associative = true;
    for _ in 0..24 {
        let a = normal_order(alg, &random_word(&mut rng, alg, 3), Rat::one());
        let b = normal_order(alg, &random_word(&mut rng, alg, 3), Rat::one());
        let c = normal_order(alg, &random_word(&mut rng, alg, 3), Rat::one());
        let left = multiply(alg, &multiply(alg, &a, &b), &c);
        let right = multiply(alg, &a, &multiply(alg, &b, &c));
        if left != right {
            associative = false;
            break;
        }
    }
    outcomes.push(outcome("associativity-sampled", associative, || {
        "association orders disagree".into()
    }));

    let mut filtration = true;
    for _ in 0..40 {
        let a = normal_order(alg, &random_word(&mut rng, alg, 3), Rat::one());
        let b = normal_order(alg, &random_word(&mut rng, alg, 3), Rat::one());
        let prod = multiply(alg, &a, &b);
        if prod.filtration_degree() > a.filtration_degree() + b.filtration_degree() {
            filtration = false;
            break;
        }
    }
    outcomes.push(outcome("product-filtration-bound", filtration, || {
        "deg(ab) exceeded deg(a) + deg(b)".into()
    }));

    let mut drop = true;
    'outer: for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            let a = UEAElement::from_lie(&LieElement::basis(i));
            let b = UEAElement::from_lie(&LieElement::basis(j));
            let sc = supercommutator(alg, &a, &b).expect("homogeneous");
            if sc.filtration_degree() > 1 {
                drop = false;
                break 'outer;
            }
        }
    }
    outcomes.push(outcome("commutator-degree-drop", drop, || {
        "[g, g] left filtration degree 1".into()
    }));

    let zero_weight = vec![0i64; alg.n];
    let mut kernel_ok = true;
    for m in enumerate_pbw(alg, 3, None) {
        let elem = UEAElement::from_monomial(m.clone(), Rat::one());
        let killed = (1..=alg.n).all(|i| {
            adjoint(alg, &LieElement::basis(alg.cartan(i)), &elem)
                .expect("homogeneous")
                .is_zero()
        });
        if killed != (m.weight(alg) == zero_weight) {
            kernel_ok = false;
            break;
        }
    }
    outcomes.push(outcome("weight-zero-is-cartan-kernel", kernel_ok, || {
        "weight-0 restriction of the solves is not equivalent to ad(h)-invariance".into()
    }));

    let counts_ok = enumerate_pbw(alg, 0, None).len() == 1
        && enumerate_pbw(alg, 1, None).len() == alg.dim() + 1
        && enumerate_pbw(alg, 2, Some(&zero_weight))
            == enumerate_pbw(alg, 2, None)
                .into_iter()
                .filter(|m| m.weight(alg) == zero_weight)
                .collect::<Vec<_>>();
    outcomes.push(outcome("enumeration-counts", counts_ok, || {
        "PBW enumeration disagrees with the brute-force filter".into()
    }));

    let mut ad_degree = true;
    for _ in 0..30 {
        let a = normal_order(alg, &random_word(&mut rng, alg, 4), Rat::one());
        let g = rng.gen_range(0..alg.dim());
        let img = adjoint(alg, &LieElement::basis(g), &a).expect("homogeneous");
        if !img.is_zero() && img.filtration_degree() > a.filtration_degree() {
            ad_degree = false;
            break;
        }
    }
    outcomes.push(outcome("adjoint-preserves-degree", ad_degree, || {
        "ad(x) raised the filtration degree".into()
    }));

    GroupResult {
        group: "pbw".into(),
        outcomes,
        dimensions: None,
    }
}

// ---- Harish-Chandra suite ------------------------------------------------

fn poly_rows(polys: &[&HCPolynomial]) -> Vec<Vec<Rat>> {
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    for p in polys {
        for e in p.terms().keys() {
            let next = index.len();
            index.entry(e.clone()).or_insert(next);
        }
    }
    polys
        .iter()
        .map(|p| {
            let mut row = vec![Rat::zero(); index.len()];
            for (e, c) in p.terms() {
                row[index[e]] = c.clone();
            }
            row
        })
        .collect()
}

fn poly_spans_equal(a: &[&HCPolynomial], b: &[&HCPolynomial]) -> bool {
    let mut all: Vec<&HCPolynomial> = a.to_vec();
    all.extend_from_slice(b);
    let rows = poly_rows(&all);
    let (rows_a, rows_b) = rows.split_at(a.len());
    rows_a
        .iter()
        .all(|v| in_span(v, rows_b).expect("uniform").is_some())
        && rows_b
            .iter()
            .all(|v| in_span(v, rows_a).expect("uniform").is_some())
}

fn rand_rat(rng: &mut ChaCha8Rng) -> Rat {
    frac(rng.gen_range(-9i64..=9), rng.gen_range(1i64..=4))
}

fn rand_weight(rng: &mut ChaCha8Rng, n: usize) -> Weight {
    Weight {
        eps: (0..n).map(|_| rand_rat(rng)).collect(),
    }
}

fn rand_weyl(rng: &mut ChaCha8Rng, n: usize) -> WeylElement {
    let gens = WeylElement::generators(n);
    let mut w = WeylElement::identity(n);
    for _ in 0..rng.gen_range(1..=4) {
        let g = &gens[rng.gen_range(0..gens.len())];
        w = w.compose(g);
    }
    w
}

fn hc_check(alg: &Algebra, cfg: &RunConfig) -> GroupResult {
    let mut rng = derive_rng(cfg.seed, "hc");
    let mut outcomes = Vec::new();
    let d = 4;
    let center = compute_center(alg, d);
    let images: Vec<HCPolynomial> = center
        .elements
        .iter()
        .map(|z| ghostw_core::centers::hc_image(alg, z))
        .collect();

    let all_invariant = images.iter().all(poly_is_invariant);
    outcomes.push(outcome("hc-images-w-invariant", all_invariant, || {
        "a sigma∘eta image of a central element is not W-invariant".into()
    }));

    let rows = poly_rows(&images.iter().collect::<Vec<_>>());
    let rank = RationalMatrix::from_rows(&rows).rank();
    outcomes.push(outcome("hc-injective-on-center", rank == images.len(), || {
        format!("rank {rank} over {} central images", images.len())
    }));

    let invariants = invariant_polynomials(alg.n, d);
    let onto = poly_spans_equal(
        &images.iter().collect::<Vec<_>>(),
        &invariants.iter().collect::<Vec<_>>(),
    );
    outcomes.push(outcome("hc-onto-invariants-deg4", onto, || {
        format!(
            "images span {} of {} invariant polynomials of degree <= 4",
            images.len(),
            invariants.len()
        )
    }));

    let rho = alg.rho();
    let mut linkage = true;
    'link: for _ in 0..20 {
        let lam = rand_weight(&mut rng, alg.n);
        let w = rand_weyl(&mut rng, alg.n);
        let linked = w.apply_weight(&lam.add(&rho)).sub(&rho);
        for z in &center.elements {
            if central_character(alg, &lam, z) != central_character(alg, &linked, z) {
                linkage = false;
                break 'link;
            }
        }
    }
    outcomes.push(outcome("central-character-linkage", linkage, || {
        "a linked pair of weights separated the center".into()
    }));

    GroupResult {
        group: "hc".into(),
        outcomes,
        dimensions: None,
    }
}

// ---- Pinczon suite (n = 1) ------------------------------------------------

fn pinczon_check(alg: &Algebra) -> GroupResult {
    let mut outcomes = Vec::new();
    if alg.n != 1 {
        outcomes.push(OutcomeReport {
            name: "skipped".into(),
            status: Status::Info,
            witness: Some("the Pinczon identity check is specific to n = 1".into()),
        });
        return GroupResult {
            group: "pinczon".into(),
            outcomes,
            dimensions: None,
        };
    }
    let ghost = GhostCenter::compute(alg, 2).expect("n = 1 ghost at degree 2");
    let c = casimir(alg);
    let q = casimir_even(alg);
    let t2 = multiply(alg, &ghost.t, &ghost.t);

    // Derive the scalars from the Harish-Chandra oracle: solve
    // eta(T²) = a·eta(C) + b in the polynomial space.
    let eta_t2 = eta(alg, &t2);
    let eta_c = eta(alg, &c);
    let keys: Vec<Vec<u32>> = (0..=2u32).map(|k| vec![k]).collect();
    let col = |p: &HCPolynomial| -> Vec<Rat> {
        keys.iter()
            .map(|e| p.terms().get(e).cloned().unwrap_or_else(Rat::zero))
            .collect()
    };
    let target = col(&eta_t2);
    let basis = vec![col(&eta_c), col(&HCPolynomial::one(1))];
    let derived = in_span(&target, &basis).expect("uniform");
    let scalars_ok = derived == Some(vec![rat(2), frac(1, 4)]);
    outcomes.push(outcome("scalars-derived-a2-b-quarter", scalars_ok, || {
        format!("derived scalars {:?}", derived.map(|v| v.iter().map(rat_to_string).collect::<Vec<_>>()))
    }));

    let expected_t2 = c.scaled(&rat(2)).plus(&UEAElement::scalar(frac(1, 4)));
    outcomes.push(outcome("t-squared-is-2c-plus-quarter", t2 == expected_t2, || {
        "T² != 2C + 1/4 as elements".into()
    }));

    let expected_t = q
        .scaled(&rat(2))
        .minus(&c.scaled(&rat(2)))
        .plus(&UEAElement::scalar(frac(1, 2)));
    outcomes.push(outcome("t-is-2q-minus-2c-plus-half", ghost.t == expected_t, || {
        "T != 2Q − 2C + 1/2 as elements".into()
    }));

    GroupResult {
        group: "pinczon".into(),
        outcomes,
        dimensions: None,
    }
}

// ---- Theorem A suite -------------------------------------------------------

fn theorem_a_check(alg: &Algebra, cfg: &RunConfig) -> Result<GroupResult, CheckError> {
    let report = verify_theorem_a(alg, cfg.max_degree).map_err(|e| match e {
        WhittakerError::BudgetTooSmall { degree, needed } => CheckError::Usage(format!(
            "max degree {degree} cannot hold the Casimir ghost; need at least {needed}"
        )),
        other => CheckError::Usage(other.to_string()),
    })?;
    let outcomes = report
        .assertions
        .iter()
        .map(|a| OutcomeReport {
            name: a.name.clone(),
            status: match a.status {
                CheckStatus::Pass => Status::Pass,
                CheckStatus::Fail => Status::Fail,
                CheckStatus::Info => Status::Info,
            },
            witness: a.witness.clone(),
        })
        .collect();
    Ok(GroupResult {
        group: "theorem-a".into(),
        outcomes,
        dimensions: Some(DimensionsReport {
            center: report.dimensions.center,
            anticenter: report.dimensions.anticenter,
            invariants_even: report.dimensions.invariants_even,
            invariants_odd: report.dimensions.invariants_odd,
        }),
    })
}

// ---- module classification suite -------------------------------------------

fn modules_check(alg: &Algebra, cfg: &RunConfig) -> GroupResult {
    let mut rng = derive_rng(cfg.seed, "modules");
    let mut outcomes = Vec::new();
    let ghost = GhostCenter::compute(alg, 2 * alg.n).expect("ghost at degree 2n");
    let t2 = multiply(alg, &ghost.t, &ghost.t);
    let rho = alg.rho();

    let mut in_d_count = 0usize;
    let mut generic_count = 0usize;
    let mut equivalences = true;
    let mut witness = String::new();
    for k in 0..100 {
        // Half random, half forced onto the degenerate locus by pinning one
        // coordinate of λ + ρ to zero.
        let lam = if k % 2 == 0 {
            rand_weight(&mut rng, alg.n)
        } else {
            let mut w = rand_weight(&mut rng, alg.n);
            let i = rng.gen_range(0..alg.n);
            w.eps[i] = -rho.eps[i].clone();
            w
        };
        let dim_one = top_space_dimension(alg, &lam) == 1;
        let degenerate = in_d(alg, &lam);
        let t2_vanishes = central_character(alg, &lam, &t2).is_zero();
        let positive_variant = in_d_positive(alg, &lam);
        if degenerate {
            in_d_count += 1;
        } else {
            generic_count += 1;
        }
        if dim_one != degenerate || degenerate != t2_vanishes || degenerate != positive_variant {
            equivalences = false;
            witness = format!(
                "lambda {}: top-dim-1 {dim_one}, in D {degenerate}, chi(T²)=0 {t2_vanishes}, positive-roots variant {positive_variant}",
                ghostw_core::hc::describe_weight(&lam)
            );
            break;
        }
    }
    outcomes.push(outcome(
        "classification-equivalences-100",
        equivalences && in_d_count > 0 && generic_count > 0,
        || {
            if witness.is_empty() {
                format!("degenerate samples {in_d_count}, generic samples {generic_count}")
            } else {
                witness
            }
        },
    ));

    let mut linkage = true;
    for _ in 0..30 {
        let lam = if rng.gen_bool(0.5) {
            rand_weight(&mut rng, alg.n)
        } else {
            let mut w = rand_weight(&mut rng, alg.n);
            let i = rng.gen_range(0..alg.n);
            w.eps[i] = -rho.eps[i].clone();
            w
        };
        let w = rand_weyl(&mut rng, alg.n);
        let linked = w.apply_weight(&lam.add(&rho)).sub(&rho);
        if in_d(alg, &lam) != in_d(alg, &linked) {
            linkage = false;
            break;
        }
    }
    outcomes.push(outcome("in-d-linkage-stable", linkage, || {
        "the degenerate locus is not stable under the dot action".into()
    }));

    GroupResult {
        group: "modules".into(),
        outcomes,
        dimensions: None,
    }
}
