//! Acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use workbench_core::bar::{twist_order, verify_cyclic_object, CyclicBar, FinCmMonoid};
use workbench_core::circle::{check_compose_laws, check_retraction, check_worked_examples};
use workbench_core::cyclic::check_word_actions;
use workbench_core::operads::{
    check_operad_laws, check_operad_maps, check_semidirect_iso, Assoc, Compact, FramedDisk,
    LittleDisk,
};
use workbench_core::suite::named_normal_forms;
use workbench_core::{run_suite, RunConfig, Violation};

const SAMPLES: usize = 1000;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    cases: usize,
    failures: Vec<Violation>,
    note: Option<String>,
}

impl Outcome {
    fn new(cases: usize, failures: Vec<Violation>) -> Outcome {
        Outcome {
            cases,
            failures,
            note: None,
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn suite(name: &str, m_max: u32, n_max: usize, q_max: usize) -> Outcome {
    let mut cfg = RunConfig::new(name);
    cfg.trials = SAMPLES;
    cfg.m_max = m_max;
    cfg.n_max = n_max;
    cfg.q_max = q_max;
    cfg.den = 4;
    match run_suite(&cfg) {
        Ok(r) => Outcome::new(r.cases_run, r.failures),
        Err(e) => Outcome::new(
            0,
            vec![Violation::new(
                "suite runs",
                name,
                "a report",
                e.to_string(),
            )],
        ),
    }
}

fn operad_laws() -> Outcome {
    let start = Instant::now();
    let mut r = rng(1);
    let mut v = check_operad_laws(&Assoc, &mut r, SAMPLES, 3);
    v.extend(check_operad_laws(&LittleDisk::closed(), &mut r, SAMPLES, 3));
    v.extend(check_operad_laws(&FramedDisk::new(2), &mut r, SAMPLES, 3));
    v.extend(check_operad_laws(&Compact, &mut r, SAMPLES, 3));
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(30) {
        v.push(Violation::new(
            "runtime",
            "operad laws",
            "under 30 s",
            format!("{elapsed:?}"),
        ));
    }
    Outcome::new(4 * SAMPLES, v)
}

fn semidirect() -> Outcome {
    Outcome::new(SAMPLES, check_semidirect_iso(2, &mut rng(2), SAMPLES, 3))
}

fn operad_maps() -> Outcome {
    Outcome::new(SAMPLES, check_operad_maps(&mut rng(3), SAMPLES, 3))
}

fn embed_compose() -> Outcome {
    let mut v = check_worked_examples();
    v.extend(check_compose_laws(&mut rng(4), SAMPLES, 3, 3));
    Outcome::new(SAMPLES + 2, v)
}

fn retraction() -> Outcome {
    let mut v: Vec<Violation> = check_worked_examples()
        .into_iter()
        .filter(|x| x.law.contains("retract"))
        .collect();
    v.extend(check_retraction(&mut rng(5), SAMPLES, 4, 3));
    Outcome::new(SAMPLES + 1, v)
}

fn cyclic_relations() -> Outcome {
    let mut r = rng(6);
    let (mut cases, mut v) = (0, Vec::new());
    let mut monoids = 0;
    let mut faithful = 0;
    for m in 1..=4u32 {
        for (name, monoid) in FinCmMonoid::builtins(m) {
            monoids += 1;
            let bar = CyclicBar::new(&monoid);
            let (c, w) = verify_cyclic_object(&bar, 6, SAMPLES, &mut r);
            cases += c;
            v.extend(w);
            if monoid.sigma_order() == m && monoid.size() > 1 {
                faithful += 1;
                for q in 0..=6 {
                    cases += 1;
                    let order = twist_order(&bar, q, SAMPLES, &mut r);
                    let want = m as usize * (q + 1);
                    if order != want {
                        v.push(Violation::new(
                            "exact twist order",
                            format!("{name} m={m} q={q}"),
                            want,
                            order,
                        ));
                    }
                }
            }
        }
    }
    let mut o = Outcome::new(cases, v);
    o.note = Some(format!("{monoids} monoids, {faithful} with faithful twist"));
    o
}

fn word_rewriting() -> Outcome {
    let (cases, mut v) = named_normal_forms(3, 4);
    v.extend(check_word_actions(&mut rng(7), SAMPLES, 3, 4, 10));
    Outcome::new(cases + SAMPLES, v)
}

fn lambda_iso() -> Outcome {
    suite("lambda-iso", 3, 3, 3)
}

fn thm_cycbar() -> Outcome {
    suite("thm-cycbar", 3, 3, 3)
}

fn bar_constructions() -> Outcome {
    suite("bar-constructions", 3, 3, 4)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("operad laws", operad_laws),
        ("semidirect isomorphism", semidirect),
        ("operad maps", operad_maps),
        ("arc system composition", embed_compose),
        ("retraction", retraction),
        ("m-cyclic relations", cyclic_relations),
        ("word rewriting", word_rewriting),
        ("lambda isomorphism", lambda_iso),
        ("cyclic bar comparison", thm_cycbar),
        ("bar constructions", bar_constructions),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let note = o.note.map(|n| format!(", {n}")).unwrap_or_default();
        println!(
            "{status} {:>2} {name}: {} cases, {} failures, {secs:.1} s{note}",
            i + 1,
            o.cases,
            o.failures.len()
        );
        for f in o.failures.iter().take(5) {
            println!("     {f}");
        }
        if !o.failures.is_empty() {
            failed += 1;
        }
    }
    if failed == 0 {
        println!("acceptance: all criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} criteria failed");
        ExitCode::FAILURE
    }
}
