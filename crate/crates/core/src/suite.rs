//! Named verification suites, their configuration and reports, and JSON
//! round trips of individual elements.

use std::path::PathBuf;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bar::{
    check_bar_identities, check_coequalizer, check_comparison_laws, check_monad_laws,
    check_realization_relations, check_thm_cycbar_free, twist_order, verify_cyclic_object,
    CyclicBar, FinCmMonoid, FreeMonad, MonadicBar, PointedCmSet,
};
use crate::circle::{
    check_action_laws, check_compose_laws, check_retraction, check_worked_examples, ArcSystem,
};
use crate::cyclic::{
    check_confluence, check_faithfulness, check_lambda_iso, check_lambda_lattice,
    check_word_actions, normalize_word, CyclicPoint, CyclicWord,
};
use crate::error::SuiteError;
use crate::exact::Rat;
use crate::groups::Perm;
use crate::operads::{verify_instance, INSTANCES};
use crate::report::Violation;

pub const SUITES: &[&str] = &[
    "operad-laws",
    "embed-compose",
    "cyclic-relations",
    "lambda-iso",
    "thm-cycbar",
    "bar-constructions",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub n_max: usize,
    pub q_max: usize,
    pub m_max: u32,
    pub den: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(suite: &str) -> RunConfig {
        RunConfig {
            suite: suite.to_string(),
            seed: 0,
            trials: 1000,
            n_max: 3,
            q_max: 4,
            m_max: 3,
            den: 4,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), SuiteError> {
        if !SUITES.contains(&self.suite.as_str()) {
            return Err(SuiteError::UnknownSuite {
                name: self.suite.clone(),
                valid: SUITES.join(", "),
            });
        }
        let bounds = [
            ("trials", self.trials as i64),
            ("nmax", self.n_max as i64),
            ("qmax", self.q_max as i64),
            ("m", self.m_max as i64),
            ("den", self.den),
        ];
        for (name, v) in bounds {
            if v < 1 {
                return Err(SuiteError::Config(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub cases_run: usize,
    pub failures: Vec<Violation>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The report with its timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Report {
        Report {
            elapsed_ms: 0,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<Violation>,
}

impl Tally {
    fn add(&mut self, cases: usize, failures: Vec<Violation>) {
        self.cases += cases;
        self.failures.extend(failures);
    }
}

fn point_sets(m: u32) -> Vec<PointedCmSet> {
    let mut out = vec![PointedCmSet::fixed(1, m), PointedCmSet::fixed(3, m)];
    for k in [2, 3] {
        if let Ok(x) = PointedCmSet::cycled(k, m) {
            out.push(x);
        }
    }
    out
}

fn operad_laws(cfg: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<(), SuiteError> {
    for name in INSTANCES {
        let v = verify_instance(name, rng, cfg.trials, cfg.n_max)
            .map_err(|e| SuiteError::Invariant(e.to_string()))?;
        t.add(cfg.trials, v);
    }
    Ok(())
}

fn embed_compose(cfg: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    t.add(2, check_worked_examples());
    t.add(
        cfg.trials,
        check_compose_laws(rng, cfg.trials, cfg.n_max, cfg.m_max),
    );
    t.add(
        cfg.trials,
        check_action_laws(rng, cfg.trials, cfg.n_max, cfg.m_max),
    );
    t.add(
        cfg.trials,
        check_retraction(rng, cfg.trials, cfg.n_max.max(2), cfg.m_max),
    );
}

/// Normal forms of `τ^{m(q+1)}`, `d_0τ` and `s_0τ` in every degree.
pub fn named_normal_forms(m_max: u32, q_max: usize) -> (usize, Vec<Violation>) {
    let mut out = Vec::new();
    let mut cases = 0;
    let mut expect = |text: String, m: u32, q: Option<usize>, want: &str| {
        cases += 1;
        let got = CyclicWord::parse(&text, m, q)
            .and_then(|w| normalize_word(&w))
            .map(|w| w.to_string());
        if got.as_deref().ok() != Some(want) {
            out.push(Violation::new(
                "named normal form",
                format!("{text} m={m}"),
                want,
                got,
            ));
        }
    };
    for m in 1..=m_max {
        for q in 0..=q_max {
            expect(format!("t{q}^{}", m as usize * (q + 1)), m, None, "id");
            if q >= 1 {
                expect(format!("d0.t{q}"), m, None, &format!("d{q}"));
            }
            let want = if m as usize * (q + 2) == 2 {
                format!("s{q}")
            } else {
                format!("t{}^2.s{q}", q + 1)
            };
            expect(format!("s0.t{q}"), m, None, &want);
        }
    }
    (cases, out)
}

fn cyclic_relations(cfg: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for m in 1..=cfg.m_max {
        for (name, r) in FinCmMonoid::builtins(m) {
            let bar = CyclicBar::new(&r);
            let (cases, v) = verify_cyclic_object(&bar, cfg.q_max, cfg.trials, rng);
            t.add(cases, v);
            if r.sigma_order() == m && r.size() > 1 {
                for q in 0..=cfg.q_max {
                    let order = twist_order(&bar, q, cfg.trials, rng);
                    let want = m as usize * (q + 1);
                    let v = if order == want {
                        vec![]
                    } else {
                        vec![Violation::new(
                            "exact twist order",
                            format!("{name} m={m} q={q}"),
                            want,
                            order,
                        )]
                    };
                    t.add(1, v);
                }
            }
        }
    }
    let (cases, v) = named_normal_forms(cfg.m_max, cfg.q_max);
    t.add(cases, v);
    t.add(
        cfg.trials,
        check_word_actions(rng, cfg.trials, cfg.m_max, cfg.q_max, 10),
    );
    t.add(
        cfg.trials / 4,
        check_confluence(
            rng,
            cfg.m_max.min(3),
            cfg.q_max.min(3),
            3,
            12,
            cfg.trials / 4,
        ),
    );
    for m in 1..=cfg.m_max.min(3) {
        for q in 0..=cfg.q_max.min(3) {
            t.add(1, check_faithfulness(m, q, 2));
        }
    }
}

fn lambda_iso(cfg: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    t.add(
        cfg.trials,
        check_lambda_iso(rng, cfg.trials, cfg.m_max, cfg.q_max),
    );
    for m in 1..=cfg.m_max {
        for q in 0..=cfg.q_max {
            for den in 1..=cfg.den {
                let c = check_lambda_lattice(m, q, den);
                let mut v = c.violations;
                if c.left_classes != c.right_points {
                    v.push(Violation::new(
                        "lattice class count",
                        format!("m={m} q={q} den={den}"),
                        c.right_points,
                        c.left_classes,
                    ));
                }
                t.add(c.left_classes, v);
            }
        }
    }
}

fn thm_cycbar(cfg: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<(), SuiteError> {
    let inv = |e: crate::error::BarError| SuiteError::Invariant(e.to_string());
    for m in 1..=cfg.m_max {
        for x in point_sets(m) {
            let rep = check_thm_cycbar_free(&x, cfg.n_max, cfg.den).map_err(inv)?;
            let mut v = rep.violations;
            for d in &rep.degrees {
                if d.left_classes != d.right_classes {
                    v.push(Violation::new(
                        "class count",
                        format!("m={m} letters={} n={}", x.letters(), d.n),
                        d.right_classes,
                        d.left_classes,
                    ));
                }
            }
            t.add(rep.degrees.iter().map(|d| d.left_classes).sum(), v);
            let trials = (cfg.trials / 10).max(1);
            let (cases, v) = check_comparison_laws(&x, cfg.n_max, cfg.den, trials, rng);
            t.add(cases, v);
        }
        for (_, r) in FinCmMonoid::builtins(m) {
            let trials = (cfg.trials / 10).max(1);
            let (cases, v) = check_comparison_laws(&r, cfg.n_max, cfg.den, trials, rng);
            t.add(cases, v);
            let (cases, v) = check_realization_relations(&r, cfg.q_max, cfg.den, trials, rng);
            t.add(cases, v);
            let (cases, v) = check_coequalizer(&r, cfg.n_max, 3, cfg.den, trials, rng);
            t.add(cases, v);
        }
    }
    Ok(())
}

fn bar_constructions(cfg: &RunConfig, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let monad = FreeMonad { bound: 4 };
    for m in 1..=cfg.m_max {
        for (_, r) in FinCmMonoid::builtins(m) {
            for x in point_sets(m) {
                let (cases, _, v) = check_monad_laws(&monad, &x, &r, rng, (cfg.trials / 10).max(1));
                t.add(cases, v);
            }
            let bar = MonadicBar {
                monad: FreeMonad { bound: 16 },
                monoid: &r,
            };
            let (cases, _, v) =
                check_bar_identities(&bar, cfg.q_max, (cfg.trials / 20).max(1), rng);
            t.add(cases, v);
        }
    }
}

/// Run a suite. The report depends only on `cfg` apart from its timing.
pub fn run_suite(cfg: &RunConfig) -> Result<Report, SuiteError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut t = Tally::default();
    match cfg.suite.as_str() {
        "operad-laws" => operad_laws(cfg, &mut rng, &mut t)?,
        "embed-compose" => embed_compose(cfg, &mut rng, &mut t),
        "cyclic-relations" => cyclic_relations(cfg, &mut rng, &mut t),
        "lambda-iso" => lambda_iso(cfg, &mut rng, &mut t),
        "thm-cycbar" => thm_cycbar(cfg, &mut rng, &mut t)?,
        "bar-constructions" => bar_constructions(cfg, &mut rng, &mut t),
        _ => unreachable!("validated above"),
    }
    t.failures.sort();
    Ok(Report {
        suite: cfg.suite.clone(),
        cases_run: t.cases,
        failures: t.failures,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

pub const ELEMENT_KINDS: &[&str] = &["rat", "perm", "arc-system", "cyclic-point", "monoid"];

/// Guess the kind of a JSON element from its shape.
pub fn infer_kind(v: &Value) -> Option<&'static str> {
    match v {
        Value::String(_) | Value::Number(_) => Some("rat"),
        Value::Array(xs) if xs.iter().all(Value::is_u64) => Some("perm"),
        Value::Object(o) if o.contains_key("pairs") => Some("arc-system"),
        Value::Object(o) if o.contains_key("t") => Some("cyclic-point"),
        Value::Object(o) if o.contains_key("mul") => Some("monoid"),
        _ => None,
    }
}

fn schema<T: serde::de::DeserializeOwned>(v: &Value) -> Result<T, SuiteError> {
    serde_json::from_value(v.clone()).map_err(|e| SuiteError::Schema(e.to_string()))
}

fn canonical<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("elements serialize")
}

/// Parse, validate and re-serialize an element in canonical form.
pub fn element_round_trip(kind: Option<&str>, v: &Value) -> Result<Value, SuiteError> {
    let kind = match kind {
        Some(k) => k,
        None => infer_kind(v)
            .ok_or_else(|| SuiteError::Schema("cannot infer the element kind".into()))?,
    };
    let invariant = |e: &dyn std::fmt::Display| SuiteError::Invariant(e.to_string());
    match kind {
        "rat" => {
            let x: Rat = schema(v)?;
            Ok(canonical(&x))
        }
        "perm" => {
            let images: Vec<usize> = schema(v)?;
            let p = Perm::from_one_line(&images).map_err(|e| invariant(&e))?;
            Ok(canonical(&p))
        }
        "arc-system" => {
            let x: ArcSystem = schema(v)?;
            let x = ArcSystem::new(x.m, x.pairs, x.phi, x.variant).map_err(|e| invariant(&e))?;
            Ok(canonical(&x))
        }
        "cyclic-point" => {
            let p: CyclicPoint = schema(v)?;
            let p = CyclicPoint::new(p.m, p.r, p.t).map_err(|e| invariant(&e))?;
            Ok(canonical(&p))
        }
        "monoid" => {
            let r: FinCmMonoid = schema(v)?;
            r.validate().map_err(|e| invariant(&e))?;
            Ok(canonical(&r))
        }
        other => Err(SuiteError::UnknownKind(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn unknown_suite_lists_valid_ones() {
        let err = run_suite(&RunConfig::new("nope")).unwrap_err().to_string();
        for s in SUITES {
            assert!(err.contains(s), "{err}");
        }
    }

    #[test]
    fn zero_bounds_are_rejected() {
        let mut cfg = RunConfig::new("operad-laws");
        cfg.trials = 0;
        assert!(matches!(run_suite(&cfg), Err(SuiteError::Config(_))));
    }

    #[test]
    fn reports_are_deterministic() {
        let mut cfg = RunConfig::new("embed-compose");
        cfg.trials = 30;
        cfg.seed = 7;
        let a = run_suite(&cfg).unwrap();
        let b = run_suite(&cfg).unwrap();
        assert_eq!(a.without_timing().to_json(), b.without_timing().to_json());
        assert!(a.passed());
    }

    #[test]
    fn round_trips() {
        assert_eq!(
            element_round_trip(None, &json!("2/4")).unwrap(),
            json!("1/2")
        );
        let good = json!({"m": 1, "pairs": [{"zeta": "0", "r": "1/8"}, {"zeta": "2/4", "r": "1/8"}], "phi": ["1/2", "1/2"], "variant": "uEc"});
        let out = element_round_trip(None, &good).unwrap();
        assert_eq!(out["pairs"][1]["zeta"], json!("1/2"));
        let bad = json!({"m": 1, "pairs": [{"zeta": "0", "r": "0"}, {"zeta": "1/2", "r": "0"}], "phi": ["1/2", "1/4"], "variant": "uEc"});
        let err = element_round_trip(None, &bad).unwrap_err().to_string();
        assert!(err.contains("gap-sum"), "{err}");
        assert!(matches!(
            element_round_trip(Some("arc-system"), &json!({"m": 1})),
            Err(SuiteError::Schema(_))
        ));
        assert!(matches!(
            element_round_trip(Some("wat"), &json!(1)),
            Err(SuiteError::UnknownKind(_))
        ));
    }
}
