//! Random cyclic Kummer models pushed through every cross-check. Each index
//! draws from its own seed, so results do not depend on the thread count.

use std::thread;

use serde::Serialize;

use ramdiv::gen;
use ramdiv::genus::{predict_genus, GlobalModel};
use ramdiv::ramification::{devissage_check, local_model_at, ramification_divisor};
use ramdiv::snf::oracle_multiplicity;
use ramdiv::{Covering, Error, KummerData, Normality, RamOptions};
use rand::Rng;

use crate::output::{Failure, Report};

const SHAPES: [(u32, u32); 5] = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2)];

#[derive(Default, Serialize)]
struct Outcome {
    rejected: bool,
    genus_checked: bool,
    oracle_checks: usize,
    devissage_checks: usize,
    failures: Vec<String>,
}

#[derive(Serialize)]
struct FailureRow {
    index: usize,
    seed: u64,
    p: u32,
    n: u32,
    f: String,
    detail: String,
}

#[derive(Serialize)]
struct Summary {
    seed: u64,
    count: usize,
    max_degree: usize,
    rejected: usize,
    genus_checked: usize,
    oracle_checks: usize,
    devissage_checks: usize,
    failures: Vec<FailureRow>,
}

fn case_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(index as u64)
}

fn draw(seed: u64, max_degree: usize) -> (u32, u32, ramdiv::Poly) {
    let mut rng = gen::rng(seed);
    let (p, n) = SHAPES[rng.gen_range(0..SHAPES.len())];
    let f = gen::monic_up_to(&mut rng, p, 1, max_degree.max(1));
    (p, n, f)
}

fn check(p: u32, n: u32, f: &ramdiv::Poly) -> Outcome {
    let mut out = Outcome::default();
    let kd = match KummerData::cyclic(p, n, f.clone()) {
        Ok(kd) => kd,
        Err(e) if e.is_model_rejection() => {
            out.rejected = true;
            return out;
        }
        Err(e) => {
            out.failures.push(format!("construction: {e}"));
            return out;
        }
    };
    let cov = Covering::Kummer(kd.clone());
    let ram = match ramification_divisor(&cov, &RamOptions::projective()) {
        Ok(r) => r,
        Err(e) if e.is_model_rejection() => {
            out.rejected = true;
            return out;
        }
        Err(e) => {
            out.failures.push(format!("ramification: {e}"));
            return out;
        }
    };
    for r in &ram.reports {
        if r.multiplicity < 0 {
            out.failures.push(format!("negative multiplicity at {}", r.place));
        }
        if r.normality != Normality::Verified {
            continue;
        }
        let compared = local_model_at(&cov, &r.place, None).and_then(|m| oracle_multiplicity(&m));
        match compared {
            Ok(o) if o == r.multiplicity => out.oracle_checks += 1,
            Ok(o) => out.failures.push(format!("oracle {o} vs formula {} at {}", r.multiplicity, r.place)),
            Err(e) => out.failures.push(format!("oracle at {}: {e}", r.place)),
        }
    }
    for m in 1..n {
        match devissage_check(&kd, m, true) {
            Ok(d) if d.equal => out.devissage_checks += 1,
            Ok(d) => out.failures.push(format!("dévissage m = {m}: {} vs {} + {}", d.r_g, d.r_h, d.pulled_back)),
            Err(e) if e.is_model_rejection() => {}
            Err(e) => out.failures.push(format!("dévissage m = {m}: {e}")),
        }
    }
    match predict_genus(&GlobalModel::new(kd)) {
        Ok(g) => {
            out.genus_checked = true;
            if g.two_g_y_minus_2 % 2 != 0 || g.g_y != Some(0) {
                out.failures.push(format!("genus: 2g_Y - 2 = {}, g_Y = {:?}, expected a rational curve", g.two_g_y_minus_2, g.g_y));
            }
            if g.deg_r != ram.degree {
                out.failures.push(format!("deg R_G {} vs {}", g.deg_r, ram.degree));
            }
        }
        Err(Error::HypothesisFailure(_)) => {}
        Err(e) => out.failures.push(format!("genus: {e}")),
    }
    out
}

pub fn run(seed: u64, count: usize, max_degree: usize) -> Result<Report, Failure> {
    let workers = thread::available_parallelism().map_or(1, |n| n.get()).min(count.max(1));
    let mut outcomes: Vec<Option<(u32, u32, ramdiv::Poly, Outcome)>> = (0..count).map(|_| None).collect();
    thread::scope(|s| {
        let chunk = count.div_ceil(workers).max(1);
        for (w, slots) in outcomes.chunks_mut(chunk).enumerate() {
            s.spawn(move || {
                for (k, slot) in slots.iter_mut().enumerate() {
                    let (p, n, f) = draw(case_seed(seed, w * chunk + k), max_degree);
                    let o = check(p, n, &f);
                    *slot = Some((p, n, f, o));
                }
            });
        }
    });
    let mut summary = Summary {
        seed,
        count,
        max_degree,
        rejected: 0,
        genus_checked: 0,
        oracle_checks: 0,
        devissage_checks: 0,
        failures: Vec::new(),
    };
    for (index, slot) in outcomes.into_iter().enumerate() {
        let (p, n, f, o) = slot.ok_or_else(|| Failure::internal("fuzz worker skipped a case"))?;
        summary.rejected += o.rejected as usize;
        summary.genus_checked += o.genus_checked as usize;
        summary.oracle_checks += o.oracle_checks;
        summary.devissage_checks += o.devissage_checks;
        for detail in o.failures {
            summary.failures.push(FailureRow { index, seed: case_seed(seed, index), p, n, f: f.to_string(), detail });
        }
    }
    let mut text = format!(
        "seed {seed}: {count} models, {} rejected, {} oracle checks, {} dévissage checks, {} genus checks, {} failures\n",
        summary.rejected,
        summary.oracle_checks,
        summary.devissage_checks,
        summary.genus_checked,
        summary.failures.len()
    );
    for r in &summary.failures {
        text.push_str(&format!("  #{} p={} n={} f={}: {}\n", r.index, r.p, r.n, r.f, r.detail));
    }
    let failed = summary.failures.len();
    let report = Report::new("fuzz", summary, text)?;
    if failed > 0 {
        return Err(Failure::internal(format!("{failed} cross-check failures")).with_report(report));
    }
    Ok(report)
}
