//! Verification suite: every checked statement becomes a claim with a status,
//! a residual and a runtime.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DVector;
use num::complex::Complex64;
use num::{BigRational, Rational64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::float::Constant;
use rug::{Complex, Float};
use serde::Serialize;

use crate::freealg::UniScalar;
use crate::heisenberg::{act_left_u, act_left_v, act_right_u, act_right_v, Exponent, ModuleParams, Packet, TPoly, XPoly};
use crate::linalg;
use crate::nctorus::{ComplexStructure, NcTorus, PhaseLaw, QuadIrr, SL2Mat, TorusElement};
use crate::precision::{abs_f64, Precision};
use crate::quadfield::{rat, QuadReal};
use crate::spheres::charvar::{find_points, sigma_orbit, BilinearSystem, RANK_TOL};
use crate::spheres::{s2, s3, s4};
use crate::spheres::s3::{EpsilonSign, LambdaMat, PhiParams};
use crate::thetaring::{classify_poli2, struct_constants, theta_const, GradedRing, Poli2Class, ThetaChar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    ExactPass,
    NumericPass,
    /// Holds after a documented correction of the statement.
    DeviationNoted,
    Fail,
}

impl Status {
    pub fn is_pass(self) -> bool {
        self != Status::Fail
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::ExactPass => "exact-pass",
            Status::NumericPass => "numeric-pass",
            Status::DeviationNoted => "deviation-noted",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub id: String,
    pub statement: String,
    pub status: Status,
    pub residual: f64,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status.is_pass())
    }

    pub fn claim(&self, id: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.id == id)
    }
}

/// Deliberate corruptions used to check that the claims can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    /// torus product with e^{−2πiθ·m|p|}.
    TorusPhase,
    /// S⁴ projector without the ½.
    S4Half,
    /// Λ(φ) replaced by a unitary non-symmetric matrix.
    LambdaSymmetry,
}

impl FromStr for Mutation {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "torus_phase" => Ok(Mutation::TorusPhase),
            "s4_half" => Ok(Mutation::S4Half),
            "lambda_symmetry" => Ok(Mutation::LambdaSymmetry),
            _ => Err(format!("unknown mutation {s}")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Claim-id prefix or library module name (nctorus, heisenberg, thetaring, spheres).
    pub only: Option<String>,
    pub mutations: Vec<Mutation>,
    pub precision: Precision,
    pub torus_elements: usize,
    pub packets: usize,
    pub random_lambdas: usize,
    pub char_points: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            only: None,
            mutations: Vec::new(),
            precision: Precision::default(),
            torus_elements: 100,
            packets: 50,
            random_lambdas: 20,
            char_points: 100,
        }
    }
}

impl SuiteConfig {
    fn has(&self, m: Mutation) -> bool {
        self.mutations.contains(&m)
    }
}

/// (passed, residual, note); the status is chosen by the claim definition.
type Outcome = (bool, f64, Option<String>);

struct ClaimDef {
    id: &'static str,
    statement: &'static str,
    kind: Status,
    run: fn(&SuiteConfig, &mut ChaCha8Rng) -> Outcome,
}

const CLAIMS: &[ClaimDef] = &[
    ClaimDef { id: "torus.assoc", statement: "(xy)z = x(yz) for the torus product", kind: Status::ExactPass, run: torus_assoc },
    ClaimDef { id: "torus.trace-cyclic", statement: "chi(xy) = chi(yx)", kind: Status::ExactPass, run: torus_trace },
    ClaimDef { id: "torus.leibniz", statement: "delta_1, delta_2 and delta_tau are derivations", kind: Status::ExactPass, run: torus_leibniz },
    ClaimDef { id: "heisenberg.commutation", statement: "(fU)V = e^{2 pi i theta}(fV)U on basic modules", kind: Status::ExactPass, run: heis_commutation },
    ClaimDef { id: "heisenberg.bimodule", statement: "left U, V actions commute with right U, V actions", kind: Status::ExactPass, run: heis_bimodule },
    ClaimDef { id: "theta.closed-form", statement: "theta_0(i) = pi^{1/4}/Gamma(3/4) and matches the brute-force sum", kind: Status::NumericPass, run: theta_closed_form },
    ClaimDef { id: "theta.symmetry", statement: "theta_{r+1} = theta_r = theta_{-r}", kind: Status::NumericPass, run: theta_symmetry },
    ClaimDef { id: "thetaring.parity", statement: "structure constants for g = [[1,0],[1,1]], tau = -i are parity-split theta sums", kind: Status::NumericPass, run: ring_parity },
    ClaimDef { id: "thetaring.assoc", statement: "degree (1,1,1) associativity of B_g for g = [[4,-1],[5,-1]]", kind: Status::NumericPass, run: ring_assoc },
    ClaimDef { id: "thetaring.relations", statement: "dim 5, rank 15, 10 quadratic relations, Koszul class", kind: Status::NumericPass, run: ring_relations },
    ClaimDef { id: "s2.projector", statement: "S^2: e = e^2 = e*, ch_0(e) = 0", kind: Status::ExactPass, run: s2_projector },
    ClaimDef { id: "s2.ch1", statement: "S^2: ch_1(e) is the antisymmetrized volume form with prefactor i/4", kind: Status::DeviationNoted, run: s2_ch1 },
    ClaimDef { id: "s4.confluence", statement: "S^4_theta rewrite system at theta = 1/3 is confluent", kind: Status::ExactPass, run: s4_confluence },
    ClaimDef { id: "s4.projector", statement: "S^4_theta: e = e^2 = e* with e = (1/2)(matrix) and x central", kind: Status::DeviationNoted, run: s4_projector },
    ClaimDef { id: "s4.chern", statement: "S^4_theta: ch_0(e) = ch_1(e) = 0", kind: Status::DeviationNoted, run: s4_chern },
    ClaimDef { id: "s3.ch12", statement: "ch_{1/2}(U) = 0 for Lambda(phi)", kind: Status::ExactPass, run: s3_ch12_zero },
    ClaimDef { id: "s3.ch12-nonsymmetric", statement: "ch_{1/2}(U) != 0 for unitary non-symmetric Lambda", kind: Status::ExactPass, run: s3_ch12_nonzero },
    ClaimDef { id: "s3.unitarity", statement: "sigma-components of UU*, U*U span the four-plane relations", kind: Status::DeviationNoted, run: s3_unitarity },
    ClaimDef { id: "s3.hermitian", statement: "Hermitian generators turn the four-plane relations into the cos/sin relations", kind: Status::ExactPass, run: s3_hermitian },
    ClaimDef { id: "charvar.diagonal", statement: "phi = 0: rank M(u) <= 3 and sigma = identity", kind: Status::NumericPass, run: cv_diagonal },
    ClaimDef { id: "charvar.generic", statement: "generic phi: rank M(u) = 4 at random points", kind: Status::NumericPass, run: cv_generic },
    ClaimDef { id: "charvar.orbits", statement: "generic phi: sampled points have 5-step sigma-orbits on the variety", kind: Status::NumericPass, run: cv_orbits },
];

/// Library module a claim exercises.
pub fn claim_module(id: &str) -> &'static str {
    match id.split('.').next().unwrap_or("") {
        "torus" => "nctorus",
        "heisenberg" => "heisenberg",
        "theta" | "thetaring" => "thetaring",
        _ => "spheres",
    }
}

fn selected(only: Option<&str>, id: &str) -> bool {
    only.is_none_or(|p| id.starts_with(p) || claim_module(id) == p)
}

/// Ids and statements of every claim, in run order.
pub fn claim_catalog() -> Vec<(&'static str, &'static str)> {
    CLAIMS.iter().map(|c| (c.id, c.statement)).collect()
}

pub fn run_suite(cfg: &SuiteConfig) -> VerificationReport {
    let mut claims = Vec::new();
    for (k, def) in CLAIMS.iter().enumerate() {
        if !selected(cfg.only.as_deref(), def.id) {
            continue;
        }
        // per-claim stream, so filtering does not change results
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(1_000_003).wrapping_add(k as u64));
        let start = Instant::now();
        let (ok, residual, note) = (def.run)(cfg, &mut rng);
        claims.push(Claim {
            id: def.id.to_string(),
            statement: def.statement.to_string(),
            status: if ok { def.kind } else { Status::Fail },
            residual,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
            note,
        });
    }
    VerificationReport { seed: cfg.seed, claims }
}

fn exact(ok: bool) -> Outcome {
    (ok, if ok { 0.0 } else { 1.0 }, None)
}

fn torus(cfg: &SuiteConfig) -> NcTorus {
    let t = NcTorus::formal();
    if cfg.has(Mutation::TorusPhase) {
        t.with_law(PhaseLaw::AbsoluteExponent)
    } else {
        t
    }
}

pub fn random_torus_element(rng: &mut ChaCha8Rng, terms: usize) -> TorusElement {
    let mut x = TorusElement::zero();
    while x.len() < terms {
        let c = &UniScalar::ratio(rng.random_range(-9..=9), rng.random_range(1..=5))
            * &UniScalar::phase(Rational64::new(rng.random_range(0..2), 2), Rational64::from_integer(rng.random_range(-2..=2)));
        x.add_term(rng.random_range(-4..=4), rng.random_range(-4..=4), c);
    }
    x
}

fn torus_triples(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, f: impl Fn(&NcTorus, &TorusElement, &TorusElement, &TorusElement) -> bool) -> Outcome {
    let t = torus(cfg);
    let ok = (0..cfg.torus_elements).all(|_| {
        let (x, y, z) = (random_torus_element(rng, 20), random_torus_element(rng, 20), random_torus_element(rng, 20));
        f(&t, &x, &y, &z)
    });
    exact(ok)
}

fn torus_assoc(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    torus_triples(cfg, rng, |t, x, y, z| t.mul(&t.mul(x, y), z) == t.mul(x, &t.mul(y, z)))
}

fn torus_trace(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    torus_triples(cfg, rng, |t, x, y, _| t.trace_chi(&t.mul(x, y)) == t.trace_chi(&t.mul(y, x)))
}

fn torus_leibniz(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let tau: ComplexStructure = "0.3,-1.0".parse().expect("valid tau");
    torus_triples(cfg, rng, |t, x, y, _| {
        let xy = t.mul(x, y);
        let check = |d: &dyn Fn(&TorusElement) -> TorusElement| d(&xy) == t.mul(&d(x), y) + t.mul(x, &d(y));
        check(&|e| t.delta(1, e).value) && check(&|e| t.delta(2, e).value) && check(&|e| t.delta_tau(&tau, e).value)
    })
}

fn module_params(c: i64) -> ModuleParams {
    let g = SL2Mat::new(1, 0, c, 1).expect("det 1");
    let theta = QuadIrr::new(5, -1, 5, 10).expect("valid quadratic irrational");
    ModuleParams::new(g, theta).expect("c > 0").with_tau("0.3,-1.0".parse().expect("valid tau"))
}

pub fn random_packet(rng: &mut ChaCha8Rng, c: usize) -> Packet {
    let mut f = Packet::zero(c);
    for _ in 0..rng.random_range(1..=3) {
        let r = |rng: &mut ChaCha8Rng, lo, hi| QuadReal::rational(rat(rng.random_range(lo..=hi), rng.random_range(1..=4)));
        let exp = Exponent {
            kappa: TPoly::real(QuadReal::rational(rat(-rng.random_range(1..=6), rng.random_range(1..=3)))),
            beta: TPoly::real(r(rng, -3, 3)),
            gamma: TPoly::real(r(rng, -2, 2)),
        };
        let poly = XPoly::from_coeffs((0..rng.random_range(1..=3)).map(|_| TPoly::real(r(rng, -5, 5))).collect());
        f.add_term(rng.random_range(0..c), exp, poly);
    }
    f
}

fn heis_packets(cfg: &SuiteConfig, rng: &mut ChaCha8Rng, f: impl Fn(&Packet, &ModuleParams) -> bool) -> Outcome {
    let ok = (0..cfg.packets).all(|k| {
        let c = [1, 2, 3, 5][k % 4];
        let p = module_params(c);
        f(&random_packet(rng, c as usize), &p)
    });
    exact(ok)
}

fn heis_commutation(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    heis_packets(cfg, rng, |f, p| {
        let uv = act_right_v(&act_right_u(f, p).unwrap(), p).unwrap();
        let vu = act_right_u(&act_right_v(f, p).unwrap(), p).unwrap();
        uv == vu.phase(p.theta.value())
    })
}

fn heis_bimodule(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    heis_packets(cfg, rng, |f, p| {
        [act_left_u, act_left_v].iter().all(|left| {
            [act_right_u, act_right_v].iter().all(|right| {
                left(&right(f, p).unwrap(), p).unwrap() == right(&left(f, p).unwrap(), p).unwrap()
            })
        })
    })
}

fn theta_closed_form(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    let prec = cfg.precision;
    let ch = ThetaChar::new(rat(0, 1), rat(1, 1)).expect("l > 0");
    let i = Complex::with_val(prec.bits(), (0, 1));
    let (th, _) = match theta_const(&ch, &i, 1e-13, prec) {
        Ok(v) => v,
        Err(e) => return (false, f64::INFINITY, Some(e.to_string())),
    };
    let pi = Float::with_val(prec.bits(), Constant::Pi);
    let closed = Float::with_val(prec.bits(), pi.sqrt_ref()).sqrt() / Float::with_val(prec.bits(), 0.75f64).gamma();
    let brute: f64 = (-12i64..=12).map(|n| (-std::f64::consts::PI * (n * n) as f64).exp()).sum();
    let d1 = abs_f64(&Complex::with_val(prec.bits(), &th.value - &closed));
    let d2 = (th.re_f64() - brute).abs() + th.im_f64().abs();
    let r = d1.max(d2);
    (r < 1e-12, r, Some(format!("{:.15} +- {:.0e}", th.re_f64(), th.err.max(1e-13))))
}

fn theta_symmetry(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let prec = cfg.precision;
    let eps = 1e-12;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (num, den) = (rng.random_range(-40i64..40), rng.random_range(1i64..12));
        let tau = Complex::with_val(prec.bits(), (rng.random_range(-1.0..1.0), rng.random_range(0.2..3.0)));
        let th = |r: BigRational| -> Option<Complex> {
            Some(theta_const(&ThetaChar::new(r, rat(1, 1)).ok()?, &tau, eps, prec).ok()?.0.value)
        };
        let (Some(a), Some(b), Some(c)) = (th(rat(num, den)), th(rat(num + den, den)), th(rat(-num, den))) else {
            return (false, f64::INFINITY, None);
        };
        worst = worst
            .max(abs_f64(&Complex::with_val(prec.bits(), &a - &b)))
            .max(abs_f64(&Complex::with_val(prec.bits(), &a - &c)));
    }
    (worst <= 2.0 * eps, worst, None)
}

fn ring_parity(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    let g = SL2Mat::new(1, 0, 1, 1).expect("det 1");
    let theta: QuadIrr = "(1+1*sqrt(5))/2".parse().expect("valid theta");
    let tau: ComplexStructure = "0,-1".parse().expect("valid tau");
    let t = match struct_constants(&g, &g, &theta, &tau, 1e-13, cfg.precision) {
        Ok(t) => t,
        Err(e) => return (false, f64::INFINITY, Some(e.to_string())),
    };
    let sum = |parity: i64| -> Complex64 {
        (-41i64..=41)
            .filter(|m| m.rem_euclid(2) == parity)
            .map(|m| (-std::f64::consts::PI * (m * m) as f64 / 4.0).exp())
            .sum::<f64>()
            .into()
    };
    let r = [(1, sum(1)), (2, sum(0))]
        .iter()
        .map(|&(gamma, want)| {
            let c = t.get(gamma, 1, 1);
            (Complex64::new(c.re_f64(), c.im_f64()) - want).norm()
        })
        .fold(0.0, f64::max);
    (r < 1e-12, r, None)
}

fn instance(cfg: &SuiteConfig) -> GradedRing {
    let g = SL2Mat::new(4, -1, 5, -1).expect("det 1");
    let theta: QuadIrr = "(5-1*sqrt(5))/10".parse().expect("valid theta");
    let tau: ComplexStructure = "0.3,-1.0".parse().expect("valid tau");
    GradedRing::new(g, theta, tau, 1e-12, cfg.precision).expect("g fixes theta")
}

fn ring_assoc(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    match instance(cfg).associativity_defect(1, 1, 1) {
        Ok(d) => (d.value <= 1e-9 && start.elapsed().as_secs() < 60, d.value, Some(format!("bound {:.1e}", d.bound))),
        Err(e) => (false, f64::INFINITY, Some(e.to_string())),
    }
}

fn ring_relations(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    let ring = instance(cfg);
    let Ok((m, _)) = ring.multiplication_matrix() else {
        return (false, f64::INFINITY, None);
    };
    let s = linalg::spectrum(&m).values;
    let sweep = linalg::rank_sweep(&s, 6, 10);
    let k = ring.quadratic_kernel(1e-8).expect("matrix already built");
    let class = classify_poli2(&ring.g());
    let ok = ring.dim(1) == 5
        && (m.nrows(), m.ncols()) == (15, 25)
        && k.rank == 15
        && k.kernel_dim == 10
        && sweep.stable()
        && sweep.rank() == Some(15)
        && class == Poli2Class::Koszul;
    let gap = s[14] / s[0];
    (ok, gap, Some(format!("rank {}, kernel {}, class {class}, sigma_15/sigma_1 {gap:.2e}", k.rank, k.kernel_dim)))
}

fn s2_projector(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    match s2::verify_s2() {
        Ok(r) => exact(r.idempotent && r.selfadjoint && r.ch0_zero),
        Err(e) => (false, 1.0, Some(e.to_string())),
    }
}

fn s2_ch1(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    match s2::verify_s2() {
        Ok(r) => {
            let (ok, res, _) = exact(r.ch1_is_volume && r.ch1_nonzero);
            (ok, res, Some("prefactor i/4; the doubled prefactor does not match".into()))
        }
        Err(e) => (false, 1.0, Some(e.to_string())),
    }
}

fn s4_report(cfg: &SuiteConfig) -> Result<s4::S4Report, String> {
    let lambda = UniScalar::root_of_unity(Rational64::new(1, 3));
    s4::verify_s4(&lambda, !cfg.has(Mutation::S4Half)).map_err(|e| e.to_string())
}

const S4_NOTE: &str = "e is half the displayed matrix; x central added to the relations";

fn s4_confluence(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    match s4_report(cfg) {
        Ok(r) => (r.unresolved.is_empty(), r.unresolved.len() as f64, None),
        Err(e) => (false, 1.0, Some(e)),
    }
}

fn s4_projector(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    match s4_report(cfg) {
        Ok(r) => {
            let (ok, res, _) = exact(r.idempotent && r.selfadjoint);
            (ok, res, Some(S4_NOTE.into()))
        }
        Err(e) => (false, 1.0, Some(e)),
    }
}

fn s4_chern(cfg: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    match s4_report(cfg) {
        Ok(r) => {
            let (ok, res, _) = exact(r.ch0_zero && r.ch1_zero);
            (ok, res, Some(S4_NOTE.into()))
        }
        Err(e) => (false, 1.0, Some(e)),
    }
}

pub fn random_phi(rng: &mut ChaCha8Rng) -> PhiParams {
    let mut p = || {
        let d = rng.random_range(1..=8);
        Rational64::new(rng.random_range(0..d), d)
    };
    PhiParams::new([p(), p(), p()]).expect("components in [0, 1)")
}

/// Unitary, not symmetric: a permutation or Pythagorean-rotation core between equal random diagonal phases.
pub fn random_nonsymmetric_unitary(rng: &mut ChaCha8Rng, k: usize) -> LambdaMat {
    let z = UniScalar::zero;
    let mut core = vec![vec![z(); 4]; 4];
    if k % 2 == 0 {
        // 0 → 1 → 2 → 3 → 0 or a 3-cycle fixing 0
        let perm: [usize; 4] = if k % 4 == 0 { [1, 2, 3, 0] } else { [0, 2, 3, 1] };
        for (i, &j) in perm.iter().enumerate() {
            core[i][j] = UniScalar::one();
        }
    } else {
        let (a, b) = (UniScalar::ratio(3, 5), UniScalar::ratio(4, 5));
        let s = rng.random_range(0..3);
        let (p, q) = (s, s + 1);
        core[p][p] = a.clone();
        core[p][q] = -b.clone();
        core[q][p] = b;
        core[q][q] = a;
        for i in (0..4).filter(|i| *i != p && *i != q) {
            core[i][i] = UniScalar::one();
        }
    }
    // D·core·D keeps the rotation block antisymmetric off the diagonal
    let d: Vec<_> = (0..4)
        .map(|_| UniScalar::root_of_unity(Rational64::new(rng.random_range(0..12), 12)))
        .collect();
    let rows = (0..4)
        .map(|i| (0..4).map(|j| &(&d[i] * &core[i][j]) * &d[j]).collect())
        .collect();
    LambdaMat::from_rows(rows).expect("4x4")
}

fn s3_ch12_zero(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let ok = (0..cfg.random_lambdas).all(|k| {
        let lambda = if cfg.has(Mutation::LambdaSymmetry) {
            random_nonsymmetric_unitary(rng, k)
        } else {
            LambdaMat::from_phi(&random_phi(rng))
        };
        s3::ch12(&lambda).is_zero()
    });
    exact(ok)
}

fn s3_ch12_nonzero(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let ok = (0..cfg.random_lambdas).all(|k| {
        let lambda = random_nonsymmetric_unitary(rng, k);
        lambda.is_unitary() && !lambda.is_symmetric() && {
            let t = s3::ch12(&lambda);
            !t.is_zero() && t == s3::ch12_closed_form(&lambda)
        }
    });
    exact(ok)
}

fn s3_unitarity(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    let (uus, usu) = s3::unitarity_expansion();
    let check = || -> Result<bool, crate::spheres::SphereError> {
        Ok(s3::spans_equal(&uus, &s3::rela2(EpsilonSign::Derived))?
            && s3::spans_equal(&usu, &s3::rela3(EpsilonSign::Derived))?)
    };
    match check() {
        Ok(ok) => (ok, if ok { 0.0 } else { 1.0 }, Some("epsilon-sum enters with sign +".into())),
        Err(e) => (false, 1.0, Some(e.to_string())),
    }
}

fn s3_hermitian(_: &SuiteConfig, _: &mut ChaCha8Rng) -> Outcome {
    let cases = [
        PhiParams::zero(),
        PhiParams::new([Rational64::new(1, 2), Rational64::new(1, 3), Rational64::new(5, 6)]).expect("valid phi"),
        PhiParams::new([Rational64::new(1, 3), Rational64::new(1, 4), Rational64::new(1, 6)]).expect("valid phi"),
    ];
    let ok = cases
        .iter()
        .all(|p| s3::hermitian_form_matches(p, EpsilonSign::Derived).unwrap_or(false));
    exact(ok)
}

fn random_point(rng: &mut ChaCha8Rng) -> DVector<Complex64> {
    DVector::from_fn(4, |_, _| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
}

fn generic_phi() -> PhiParams {
    PhiParams::new([Rational64::new(1, 7), Rational64::new(2, 5), Rational64::new(3, 11)]).expect("valid phi")
}

fn cv_diagonal(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let sys = BilinearSystem::from_phi(&PhiParams::zero()).expect("degree-2 relations");
    let mut worst: f64 = 0.0;
    for _ in 0..cfg.char_points {
        let u = random_point(rng).normalize();
        if sys.rank_at(&u, RANK_TOL).0 > 3 {
            return (false, 1.0, None);
        }
        let Some(v) = sys.sigma(&u, RANK_TOL) else {
            return (false, 1.0, None);
        };
        worst = worst.max(1.0 - u.dotc(&v).norm());
    }
    (worst < 1e-10, worst, None)
}

fn cv_generic(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let sys = BilinearSystem::from_phi(&generic_phi()).expect("degree-2 relations");
    let mut smallest = f64::INFINITY;
    for _ in 0..cfg.char_points {
        let (rank, rel) = sys.rank_at(&random_point(rng), RANK_TOL);
        if rank != 4 {
            return (false, rel, None);
        }
        smallest = smallest.min(rel);
    }
    (true, smallest, Some("residual is the smallest sigma_min/sigma_max seen".into()))
}

fn cv_orbits(_: &SuiteConfig, rng: &mut ChaCha8Rng) -> Outcome {
    let sys = BilinearSystem::from_phi(&generic_phi()).expect("degree-2 relations");
    let pts = find_points(&sys, 20, rng.random(), RANK_TOL);
    let good: Vec<f64> = pts
        .iter()
        .filter(|p| p.residual < 1e-10)
        .map(|p| {
            let o = sigma_orbit(&sys, &p.u, 5, RANK_TOL);
            if o.left_variety { f64::INFINITY } else { o.max_residual() }
        })
        .filter(|r| *r < 1e-8)
        .collect();
    let worst = good.iter().copied().fold(0.0, f64::max);
    (good.len() >= 3, worst, Some(format!("{} of {} sampled points", good.len(), pts.len())))
}
