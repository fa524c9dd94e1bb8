//! Batch verification drivers: the library side of the `qweyl` CLI.
//!
//! Each driver expands a seeded, fully reproducible task grid, fans the
//! independent tasks out over a worker pool, and assembles a deterministic
//! JSON-able report. Exit-code semantics live in the binary: 0 when every
//! item passes, 1 when any verification residual is nonzero, 2 for usage
//! errors.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::operators::{
    classical_i_pm_explicit, classical_i_pm_n, classical_i_pm_n_mutated, classical_ia, box_op,
    qdal, qi1, qi2, qi3, DalBasis, OpSign,
};
use crate::planewave::{classical_kx_power, hhat, ExpConst, PhasePoly, PlaneWaveSpec, UNIT_B, UNIT_D};
use crate::repspace::{RepElement, RepElementJson};
use crate::scalar::{GaussRat, QScalar};
use crate::weylsol::dict::{cpm_rank_report, primed_to_stress, stress_to_primed, StressTensor};
use crate::weylsol::{verify_weyl, FactorOrder, Side, VerifyOptions, WeylSolSpec};

/// Which solution sides a Weyl run covers.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SideSel {
    Plus,
    Minus,
    Both,
}

/// How `B_s`/`D_s` values are chosen per draw.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BdChoice {
    /// Seeded random integers in `[-8, 2]`.
    Random,
    /// Cycle through an explicit integer list.
    List(Vec<i64>),
    /// The symbolic unit (slow mode; exercises unit-valued exponents).
    Symbolic,
}

/// One reproducible run recipe. A fixed config (seed included) yields a
/// byte-identical JSON report.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct RunConfig {
    pub s_max: u32,
    pub side: SideSel,
    pub seed: u64,
    /// Random parameter draws per cell (phases for d'Alembert, full
    /// parameter sets for Weyl).
    pub draws: u32,
    pub bd: BdChoice,
    pub cone: bool,
    pub order: FactorOrder,
    /// Worker threads; 0 means the pool default (`QWEYL_WORKERS` or the
    /// machine's parallelism).
    pub workers: usize,
    /// Record wall-clock timings in the report. Off by default so identical
    /// configs produce byte-identical reports.
    pub timings: bool,
    /// Negative control: perturb the middle coefficient of the fourth-order
    /// operators.
    pub mutate: bool,
    /// Degree bounds for the classical regression items.
    pub coord_degree: i32,
    pub z_degree: i32,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            s_max: 6,
            side: SideSel::Both,
            seed: 1,
            draws: 3,
            bd: BdChoice::Random,
            cone: true,
            order: FactorOrder::Ascending,
            workers: 0,
            timings: false,
            mutate: false,
            coord_degree: 5,
            z_degree: 4,
        }
    }
}

/// One verified item: spec echo, residual, and verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ItemReport {
    pub label: String,
    pub spec: serde_json::Value,
    pub residual_term_count: usize,
    pub residual: RepElementJson,
    pub elapsed_ms: u64,
    pub pass: bool,
}

/// Full report for one driver run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub config: RunConfig,
    pub items: Vec<ItemReport>,
    pub pass: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            out.push_str(&format!(
                "{} {} residual_terms={}{}\n",
                if item.pass { "PASS" } else { "FAIL" },
                item.label,
                item.residual_term_count,
                if self.config.timings {
                    format!(" ({} ms)", item.elapsed_ms)
                } else {
                    String::new()
                }
            ));
        }
        out.push_str(&format!(
            "{}: {}/{} items passed\n",
            if self.pass { "PASS" } else { "FAIL" },
            self.items.iter().filter(|i| i.pass).count(),
            self.items.len()
        ));
        out
    }
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    let workers = if workers == 0 {
        std::env::var("QWEYL_WORKERS")
            .ok()
            .and_then(|v| v.parse().ok())
            .unwrap_or(0)
    } else {
        workers
    };
    if workers == 0 {
        return f();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("worker pool")
        .install(f)
}

fn finish(mut items: Vec<ItemReport>, timings: bool) -> (Vec<ItemReport>, bool) {
    if !timings {
        for item in &mut items {
            item.elapsed_ms = 0;
        }
    }
    let pass = items.iter().all(|i| i.pass);
    (items, pass)
}

fn residual_item(
    label: String,
    spec: serde_json::Value,
    residual: RepElement,
    elapsed_ms: u64,
) -> ItemReport {
    ItemReport {
        label,
        spec,
        residual_term_count: residual.term_count(),
        residual: residual.to_json(),
        elapsed_ms,
        pass: residual.is_zero(),
    }
}

// --- seeded parameter draws ---------------------------------------------------

fn draw_poly(rng: &mut StdRng, max_degree: usize) -> Vec<i64> {
    let degree = rng.gen_range(0..=max_degree);
    (0..=degree).map(|_| rng.gen_range(-5..=5)).collect()
}

fn draw_bd_int(rng: &mut StdRng) -> i64 {
    rng.gen_range(-8..=2)
}

fn draw_gamma(rng: &mut StdRng) -> QScalar {
    let re = GaussRat::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9));
    let im = if rng.gen_bool(0.5) {
        GaussRat::zero()
    } else {
        GaussRat::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
    };
    QScalar::from_gauss(&re + &(&im * &GaussRat::i()))
}

/// The d'Alembert phase grid: `P = 0`, then `draws` random plus-family and
/// `draws` random minus-family phases.
fn dalembert_phases(cfg: &RunConfig) -> Vec<(String, PhasePoly)> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut phases = vec![("P=0".to_string(), PhasePoly::Zero)];
    for d in 0..cfg.draws {
        let r = draw_poly(&mut rng, 2);
        let b = match cfg.bd {
            BdChoice::Symbolic => ExpConst::symbolic(UNIT_B),
            _ => ExpConst::int(draw_bd_int(&mut rng)),
        };
        phases.push((format!("P=plus[{d}]"), PhasePoly::Plus { r, b }));
    }
    for d in 0..cfg.draws {
        let q = draw_poly(&mut rng, 2);
        let dd = match cfg.bd {
            BdChoice::Symbolic => ExpConst::symbolic(UNIT_D),
            _ => ExpConst::int(draw_bd_int(&mut rng)),
        };
        phases.push((format!("P=minus[{d}]"), PhasePoly::Minus { d: dd, q }));
    }
    phases
}

/// Runs the hat-basis q-d'Alembert operator over `h_s` for `s <= s_max`
/// across the configured phase grid, cone-projecting unless disabled.
pub fn run_dalembert(cfg: &RunConfig) -> RunReport {
    let phases = dalembert_phases(cfg);
    let mut tasks = Vec::new();
    for s in 0..=cfg.s_max {
        for (label, phase) in &phases {
            tasks.push((s, label.clone(), phase.clone()));
        }
    }
    let cone = cfg.cone;
    let items: Vec<ItemReport> = in_pool(cfg.workers, || {
        tasks
            .par_iter()
            .map(|(s, label, phase)| {
                let start = std::time::Instant::now();
                let h = hhat(&PlaneWaveSpec::new(*s, phase.clone()))
                    .expect("grid phases are total")
                    .clear_denominators();
                let image = qdal(DalBasis::Hat).apply(&h);
                let residual = if cone { image.cone_project() } else { image };
                residual_item(
                    format!("dalembert s={s} {label}"),
                    serde_json::json!({"s": s, "phase": label}),
                    residual,
                    start.elapsed().as_millis() as u64,
                )
            })
            .collect()
    });
    let (items, pass) = finish(items, cfg.timings);
    RunReport {
        command: "verify dalembert".into(),
        config: cfg.clone(),
        items,
        pass,
    }
}

/// The Weyl task grid: per side and `s`, `draws` seeded parameter sets.
fn weyl_specs(cfg: &RunConfig) -> Vec<WeylSolSpec> {
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let sides: &[Side] = match cfg.side {
        SideSel::Plus => &[Side::Plus],
        SideSel::Minus => &[Side::Minus],
        SideSel::Both => &[Side::Plus, Side::Minus],
    };
    let mut specs = Vec::new();
    for &side in sides {
        for s in 0..=cfg.s_max {
            for d in 0..cfg.draws {
                let gammas = [
                    draw_gamma(&mut rng),
                    draw_gamma(&mut rng),
                    draw_gamma(&mut rng),
                    draw_gamma(&mut rng),
                    draw_gamma(&mut rng),
                ];
                let b_or_d = match &cfg.bd {
                    BdChoice::Random => ExpConst::int(draw_bd_int(&mut rng)),
                    BdChoice::List(vals) => {
                        let idx = (s as usize * cfg.draws as usize + d as usize) % vals.len();
                        ExpConst::int(vals[idx])
                    }
                    BdChoice::Symbolic => match side {
                        Side::Plus => ExpConst::symbolic(UNIT_B),
                        Side::Minus => ExpConst::symbolic(UNIT_D),
                    },
                };
                specs.push(WeylSolSpec {
                    side,
                    s,
                    gammas,
                    b_or_d,
                    free_poly: draw_poly(&mut rng, 2),
                });
            }
        }
    }
    specs
}

/// Drives [`verify_weyl`] over the seeded parameter grid.
pub fn run_weyl(cfg: &RunConfig) -> RunReport {
    let specs = weyl_specs(cfg);
    let options = VerifyOptions {
        cone: cfg.cone,
        order: cfg.order,
        mutate_operator: cfg.mutate,
    };
    let items: Vec<ItemReport> = in_pool(cfg.workers, || {
        specs
            .par_iter()
            .map(|spec| {
                let report = verify_weyl(spec, &options);
                ItemReport {
                    label: format!(
                        "weyl side={} s={}",
                        match spec.side {
                            Side::Plus => "plus",
                            Side::Minus => "minus",
                        },
                        spec.s
                    ),
                    spec: serde_json::to_value(&report.spec).expect("spec serializes"),
                    residual_term_count: report.residual_term_count,
                    residual: report.residual,
                    elapsed_ms: report.elapsed_ms,
                    pass: report.pass,
                }
            })
            .collect()
    });
    let (items, pass) = finish(items, cfg.timings);
    RunReport {
        command: "verify weyl".into(),
        config: cfg.clone(),
        items,
        pass,
    }
}

fn spanning_monomials(coord_degree: i32, z_degree: i32) -> Vec<RepElement> {
    let mut out = Vec::new();
    for j in 0..=coord_degree {
        for n in 0..=(coord_degree - j) {
            for l in 0..=(coord_degree - j - n) {
                for m in 0..=(coord_degree - j - n - l) {
                    for p in 0..=z_degree {
                        for pb in 0..=z_degree {
                            out.push(RepElement::monomial([j, n, l, m], [p, pb]));
                        }
                    }
                }
            }
        }
    }
    out
}

fn first_difference(
    monos: &[RepElement],
    f: impl Fn(&RepElement) -> RepElement + Sync,
    g: impl Fn(&RepElement) -> RepElement + Sync,
) -> RepElement {
    monos
        .par_iter()
        .map(|e| f(e).sub(&g(e)))
        .find_first(|d| !d.is_zero())
        .unwrap_or_else(RepElement::zero)
}

/// The `q = 1` regression suite: the classical operator identity, the
/// classical limits of every named q-operator, the plane-wave limit, and
/// the tensor dictionaries.
pub fn run_classical(cfg: &RunConfig) -> RunReport {
    let mut items = Vec::new();
    let full_set = spanning_monomials(cfg.coord_degree, cfg.z_degree);
    let small_set = spanning_monomials(cfg.coord_degree.min(3), cfg.z_degree.min(2));
    let items_ref = &mut items;
    in_pool(cfg.workers, || {
        // I+- = I+-(4): the explicit operators against the composites.
        for sign in [OpSign::Plus, OpSign::Minus] {
            let t0 = std::time::Instant::now();
            let explicit = classical_i_pm_explicit(sign);
            let composite = if cfg.mutate {
                classical_i_pm_n_mutated(sign, 4)
            } else {
                classical_i_pm_n(sign, 4)
            };
            let diff = first_difference(
                &full_set,
                |e| explicit.apply_at_q1(e).expect("no pole"),
                |e| composite.apply_at_q1(e).expect("no pole"),
            );
            items_ref.push(residual_item(
                format!(
                    "classical I{0} = I{0}(4) coord<={1} z<={2}",
                    if sign == OpSign::Plus { "+" } else { "-" },
                    cfg.coord_degree,
                    cfg.z_degree
                ),
                serde_json::json!({"sign": format!("{sign:?}"), "mutated": cfg.mutate}),
                diff,
                t0.elapsed().as_millis() as u64,
            ));
        }

        // qI_a -> I_a at q = 1.
        for (name, qop, cop) in [
            ("qI1 -> I1", qi1(), classical_ia(1)),
            ("qI2 -> I2", qi2(), classical_ia(2)),
            ("qI3 -> I3", qi3(), classical_ia(3)),
        ] {
            let t0 = std::time::Instant::now();
            let diff = first_difference(
                &small_set,
                |e| qop.apply_at_q1(e).expect("no pole"),
                |e| cop.apply_at_q1(e).expect("no pole"),
            );
            items_ref.push(residual_item(
                name.to_string(),
                serde_json::json!({}),
                diff,
                t0.elapsed().as_millis() as u64,
            ));
        }

        // qI+-(n) -> I+-(n) at q = 1 for n in {2, 4}.
        for sign in [OpSign::Plus, OpSign::Minus] {
            for n in [2i64, 4] {
                let t0 = std::time::Instant::now();
                let qop = crate::operators::qi_pm(sign, n);
                let cop = classical_i_pm_n(sign, n);
                let diff = first_difference(
                    &small_set,
                    |e| qop.apply_at_q1(e).expect("no pole"),
                    |e| cop.apply_at_q1(e).expect("no pole"),
                );
                items_ref.push(residual_item(
                    format!(
                        "qI{0}({n}) -> I{0}({n})",
                        if sign == OpSign::Plus { "+" } else { "-" }
                    ),
                    serde_json::json!({"n": n}),
                    diff,
                    t0.elapsed().as_millis() as u64,
                ));
            }
        }

        // Both q-d'Alembert operators -> box at q = 1.
        for (name, basis) in [("qdal-hat -> box", DalBasis::Hat), ("qdal-tilde -> box", DalBasis::Tilde)] {
            let t0 = std::time::Instant::now();
            let qop = qdal(basis);
            let cop = box_op();
            let diff = first_difference(
                &small_set,
                |e| qop.apply_at_q1(e).expect("no pole"),
                |e| cop.apply_at_q1(e).expect("no pole"),
            );
            items_ref.push(residual_item(
                name.to_string(),
                serde_json::json!({}),
                diff,
                t0.elapsed().as_millis() as u64,
            ));
        }

        // h_s at q = 1 equals the multinomial (k.x)^s.
        for s in 0..=cfg.s_max {
            let t0 = std::time::Instant::now();
            let h = hhat(&PlaneWaveSpec::plain(s)).expect("zero phase is total");
            let diff = h
                .eval_q1()
                .expect("no pole at q = 1")
                .sub(&classical_kx_power(s));
            items_ref.push(residual_item(
                format!("hhat(s={s}) at q=1 = (k.x)^{s}"),
                serde_json::json!({"s": s}),
                diff,
                t0.elapsed().as_millis() as u64,
            ));
        }
    });

    // Dictionary items (cheap, serial).
    let t0 = std::time::Instant::now();
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut roundtrip_ok = true;
    for _ in 0..100 {
        let mut t = StressTensor::default();
        for i in 1..10 {
            t.entries[i] = GaussRat::from_ratio(rng.gen_range(-9..=9), rng.gen_range(1..=5));
        }
        t.entries[0] = &(&t.entries[4] + &t.entries[7]) + &t.entries[9];
        let back = primed_to_stress(&stress_to_primed(&t));
        if back != t {
            roundtrip_ok = false;
            break;
        }
    }
    items.push(ItemReport {
        label: "stress dictionary round-trip (100 random traceless tensors)".into(),
        spec: serde_json::json!({"samples": 100}),
        residual_term_count: 0,
        residual: RepElement::zero().to_json(),
        elapsed_ms: t0.elapsed().as_millis() as u64,
        pass: roundtrip_ok,
    });

    let rank = cpm_rank_report();
    items.push(ItemReport {
        label: format!(
            "weyl-component map rank = {} (z^3 row factors {:?} as printed)",
            rank.rank, rank.c3_row_factors
        ),
        spec: serde_json::to_value(&rank).expect("rank report serializes"),
        residual_term_count: 0,
        residual: RepElement::zero().to_json(),
        elapsed_ms: 0,
        pass: rank.full_rank,
    });

    let (items, pass) = finish(items, cfg.timings);
    RunReport {
        command: "verify classical".into(),
        config: cfg.clone(),
        items,
        pass,
    }
}
