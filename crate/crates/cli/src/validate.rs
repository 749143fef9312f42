//! Cross-implementation validation suite.
//!
//! The suite is generic over the Gaussian pipeline, a function from a
//! configuration to the homodyne mean and variance, so the same checks can
//! be pointed at a deliberately broken pipeline to prove they bite.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde_json::{json, Value};
use su11_core::analytic;
use su11_core::fock;
use su11_core::gaussian::{loss_channel, opa, phase_shifter, GaussianState, SymplecticOp};
use su11_core::measurement::{fringe_visibility, homodyne_x, x_statistics, SignalSlope};
use su11_core::{DMatrix, Error, InterferometerConfig, Result};

use crate::args::Level;
use crate::format::{json_number, Cell, Table};

const OFFENDING_SHOWN: usize = 20;

/// Outcome of one named check over a set of grid points.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub tolerance: f64,
    pub points: usize,
    pub failures: usize,
    pub worst: f64,
    pub offending: Vec<String>,
}

impl Check {
    fn new(name: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            tolerance,
            points: 0,
            failures: 0,
            worst: 0.0,
            offending: Vec::new(),
        }
    }

    fn record(&mut self, deviation: f64, at: impl FnOnce() -> String) {
        self.points += 1;
        if !(deviation <= self.worst) {
            self.worst = deviation;
        }
        if !(deviation <= self.tolerance) {
            self.failures += 1;
            if self.offending.len() < OFFENDING_SHOWN {
                self.offending.push(format!("{} (deviation {deviation:e})", at()));
            }
        }
    }

    fn error(&mut self, at: String, e: Error) {
        self.record(f64::INFINITY, || format!("{at}: {e}"));
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.points > 0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub level: Level,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "passed": c.passed(),
                    "tolerance": json_number(c.tolerance),
                    "points": c.points,
                    "failures": c.failures,
                    "worst_deviation": json_number(c.worst),
                    "offending": c.offending,
                })
            })
            .collect();
        json!({
            "level": match self.level { Level::Quick => "quick", Level::Full => "full" },
            "passed": self.passed(),
            "checks": checks,
        })
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(["check", "passed", "tolerance", "points", "failures", "worst_deviation"]);
        for c in &self.checks {
            t.push(vec![
                c.name.into(),
                (if c.passed() { "true" } else { "false" }).into(),
                c.tolerance.into(),
                Cell::Num(c.points as f64),
                Cell::Num(c.failures as f64),
                c.worst.into(),
            ]);
        }
        t
    }

    /// One line per failing check with its first offending points.
    pub fn diagnostics(&self) -> String {
        let mut out = String::new();
        for c in self.checks.iter().filter(|c| !c.passed()) {
            out.push_str(&format!(
                "{}: {} of {} points beyond {:e}\n",
                c.name, c.failures, c.points, c.tolerance
            ));
            for o in &c.offending {
                out.push_str(&format!("  {o}\n"));
            }
        }
        out
    }
}

/// The shipped pipeline.
pub fn gaussian_pipeline(c: &InterferometerConfig) -> Result<(f64, f64)> {
    x_statistics(c)
}

/// The interferometer with a beam splitter that lacks the factor `i` on
/// the reflected arm (`a → √η a + √(1−η) b`). Used as a mutation target.
pub fn real_beam_splitter_pipeline(c: &InterferometerConfig) -> Result<(f64, f64)> {
    c.validate()?;
    let alpha = su11_core::Complex64::new(c.alpha_mag * c.phi.cos(), c.alpha_mag * c.phi.sin());
    let beta = su11_core::Complex64::new(c.alpha_mag * c.delta.cos(), c.alpha_mag * c.delta.sin());
    let mut state = GaussianState::vacuum(2)?
        .displace(0, alpha)?
        .displace(1, beta)?
        .apply(&opa(c.g, (0, 1))?)?;
    if !c.is_lossless() {
        state = state
            .apply(&loss_channel(c.loss_a, c.n_th, 0)?)?
            .apply(&loss_channel(c.loss_b, c.n_th, 1)?)?;
    }
    let (t, r) = (c.eta.sqrt(), (1.0 - c.eta).sqrt());
    #[rustfmt::skip]
    let m = DMatrix::from_row_slice(4, 4, &[
        t, 0.0, r, 0.0,
        0.0, t, 0.0, r,
        -r, 0.0, t, 0.0,
        0.0, -r, 0.0, t,
    ]);
    let bs = SymplecticOp::new(vec![0, 1], m)?;
    let out = state.apply(&phase_shifter(c.theta, 0))?.apply(&bs)?;
    homodyne_x(&out, 0)
}

fn label(c: &InterferometerConfig) -> String {
    format!(
        "|alpha|={} g={} eta={} theta={:.6} L1={} L2={} n_th={}",
        c.alpha_mag, c.g, c.eta, c.theta, c.loss_a, c.loss_b, c.n_th
    )
}

fn dev(a: f64, b: f64, floor: f64) -> f64 {
    (a - b).abs() / b.abs().max(floor)
}

fn closed_form_grid(level: Level) -> Vec<InterferometerConfig> {
    let (alphas, gains, etas, thetas, losses): (&[f64], &[f64], &[f64], &[f64], &[(f64, f64)]) = match level {
        Level::Quick => (&[1.0, 10.0], &[0.0, 1.0], &[0.3, 0.5], &[0.3, FRAC_PI_2], &[(0.0, 0.0), (0.2, 1.0)]),
        Level::Full => (
            &[0.5, 1.0, 3.0, 10.0],
            &[0.0, 0.25, 0.5, 1.0, 2.0],
            &[0.3, 0.5, 0.7],
            &[0.3, FRAC_PI_2, 2.5],
            &[(0.0, 0.0), (0.2, 0.0), (0.2, 1.0), (0.6, 1.0)],
        ),
    };
    let mut out = Vec::new();
    for &a in alphas {
        for &g in gains {
            for &eta in etas {
                for &theta in thetas {
                    for &(l, n) in losses {
                        out.push(InterferometerConfig::new(a, g, eta, theta).with_loss(l, l, n));
                    }
                }
            }
        }
    }
    out
}

/// Pipeline moments and sensitivity against the closed forms, `1e-9`.
fn closed_form_checks<P>(pipeline: &P, level: Level) -> Vec<Check>
where
    P: Fn(&InterferometerConfig) -> Result<(f64, f64)>,
{
    let mut mean_check = Check::new("homodyne mean vs 2e^g sqrt(eta)|alpha|cos(theta)", 1e-9);
    let mut second = Check::new("homodyne second moment vs closed form", 1e-9);
    let mut sens = Check::new("error-propagation sensitivity vs closed form", 1e-9);
    let mut fisher = Check::new("classical Fisher information times sensitivity^2 at theta=pi/2", 1e-9);
    for c in closed_form_grid(level) {
        let signal = |t: f64| pipeline(&c.with_theta(t));
        let slope = match SignalSlope::measure(c.theta, signal) {
            Ok(s) => s,
            Err(e) => {
                mean_check.error(label(&c), e);
                continue;
            }
        };
        let fringe = 2.0 * c.alpha_mag * c.g.exp();
        let x2 = slope.var + slope.mean * slope.mean;
        let dtheta = slope.error_propagation();
        if c.is_lossless() {
            let m = analytic::x_mean_ideal(c.alpha_mag, c.g, c.eta, c.theta);
            mean_check.record(dev(slope.mean, m, fringe), || label(&c));
            let s = analytic::x2_ideal(c.alpha_mag, c.g, c.eta, c.theta);
            second.record(dev(x2, s, 0.0), || label(&c));
            let d = analytic::sensitivity_ideal(c.alpha_mag, c.g, c.eta, c.theta);
            sens.record(dev(dtheta, d, 0.0), || label(&c));
        } else if c.eta == 0.5 {
            let m = analytic::x_mean_lossy(c.alpha_mag, c.g, c.loss_a, c.theta);
            mean_check.record(dev(slope.mean, m, fringe), || label(&c));
            let s = analytic::x2_lossy(c.alpha_mag, c.g, c.loss_a, c.loss_b, c.n_th, c.theta);
            second.record(dev(x2, s, 0.0), || label(&c));
            match analytic::sensitivity_lossy(c.alpha_mag, c.g, c.loss_a, c.n_th, c.theta) {
                Ok(d) => sens.record(dev(dtheta, d, 0.0), || label(&c)),
                Err(e) => sens.error(label(&c), e),
            }
        }
        if c.theta == FRAC_PI_2 {
            fisher.record((slope.fisher() * dtheta * dtheta - 1.0).abs(), || label(&c));
        }
    }
    vec![mean_check, second, sens, fisher]
}

/// Complete loss leaves a thermal state of variance `2 n_th + 1`, `1e-12`.
fn full_loss_check<P>(pipeline: &P) -> Check
where
    P: Fn(&InterferometerConfig) -> Result<(f64, f64)>,
{
    let mut check = Check::new("full-loss variance 2 n_th + 1", 1e-12);
    for &n_th in &[0.0, 1.0, 2.5] {
        for k in 0..10 {
            let theta = TAU * k as f64 / 10.0;
            let c = InterferometerConfig::new(2.0, 1.0, 0.5, theta).with_loss(1.0, 1.0, n_th);
            match pipeline(&c) {
                Ok((_, var)) => check.record(dev(var, 2.0 * n_th + 1.0, 0.0), || label(&c)),
                Err(e) => check.error(label(&c), e),
            }
        }
    }
    check
}

/// Unit visibility for any transmittance and incomplete loss, `1e-9`.
fn visibility_check<P>(pipeline: &P, level: Level) -> Check
where
    P: Fn(&InterferometerConfig) -> Result<(f64, f64)>,
{
    let mut check = Check::new("fringe visibility", 1e-9);
    let etas: &[f64] = match level {
        Level::Quick => &[0.3, 1.0],
        Level::Full => &[0.05, 0.3, 0.5, 0.7, 1.0],
    };
    for &eta in etas {
        for &(l, n) in &[(0.0, 0.0), (0.5, 1.0)] {
            let c = InterferometerConfig::new(1.0, 1.0, eta, 0.0).with_loss(l, l, n);
            match fringe_visibility(|t| pipeline(&c.with_theta(t)).map(|(m, _)| m)) {
                Ok(v) => check.record((v - 1.0).abs(), || label(&c)),
                Err(e) => check.error(label(&c), e),
            }
        }
    }
    check
}

/// Truncated Fock simulation against the pipeline at small amplitudes and
/// gains, `1e-6`; the full level adds the QFI against its closed form.
fn fock_checks<P>(pipeline: &P, level: Level) -> Vec<Check>
where
    P: Fn(&InterferometerConfig) -> Result<(f64, f64)>,
{
    let mut moments = Check::new("Fock oracle moments vs pipeline", 1e-6);
    let mut qfi = Check::new("Fock oracle QFI vs closed form", 1e-6);
    let (alphas, gains, etas): (&[f64], &[f64], &[f64]) = match level {
        Level::Quick => (&[0.5], &[0.25], &[0.5, 0.7]),
        Level::Full => (&[0.0, 0.5, 1.0], &[0.0, 0.25, 0.5], &[0.3, 0.5, 0.7, 1.0]),
    };
    for &a in alphas {
        for &g in gains {
            for &eta in etas {
                for &theta in &[0.3, FRAC_PI_2, 2.5] {
                    let c = InterferometerConfig::new(a, g, eta, theta);
                    let run = match fock::run_lossless(&c) {
                        Ok(r) => r,
                        Err(e) => {
                            moments.error(label(&c), e);
                            continue;
                        }
                    };
                    let f = fock::moments(&run.output);
                    match pipeline(&c) {
                        Ok((mean, var)) => {
                            let d = dev(f.x_mean, mean, 1.0).max(dev(f.x2_mean, var + mean * mean, 0.0));
                            moments.record(d, || format!("{} D={}", label(&c), run.dim));
                        }
                        Err(e) => moments.error(label(&c), e),
                    }
                    if level == Level::Full && (a > 0.0 || g > 0.0) {
                        match fock::qfi_pure(&run.after_opa, 0) {
                            Ok(q) => qfi.record(dev(q, analytic::qfi(a, g), 0.0), || label(&c)),
                            Err(e) => qfi.error(label(&c), e),
                        }
                    }
                }
            }
        }
    }
    let mut out = vec![moments];
    if level == Level::Full {
        out.push(qfi);
    }
    out
}

/// Every check of the suite against `pipeline`.
pub fn run_suite<P>(pipeline: &P, level: Level) -> SuiteReport
where
    P: Fn(&InterferometerConfig) -> Result<(f64, f64)>,
{
    let mut checks = closed_form_checks(pipeline, level);
    checks.push(full_loss_check(pipeline));
    checks.push(visibility_check(pipeline, level));
    checks.extend(fock_checks(pipeline, level));
    SuiteReport { level, checks }
}

/// Runs the closed-form checks against the real-beam-splitter mutant and
/// passes when they catch it.
fn mutation_check() -> Check {
    let mutant = closed_form_checks(&real_beam_splitter_pipeline, Level::Quick);
    let mut check = Check::new("mutation self-test: real beam splitter is rejected", 0.0);
    let caught = mutant[0].failures > 0;
    check.record(if caught { 0.0 } else { 1.0 }, || {
        "the closed-form mean check accepted a beam splitter without the factor i".into()
    });
    check
}

/// The shipped suite plus the mutation self-test.
pub fn validate(level: Level) -> SuiteReport {
    let mut report = run_suite(&gaussian_pipeline, level);
    report.checks.push(mutation_check());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        let r = validate(Level::Quick);
        assert!(r.passed(), "{}", r.diagnostics());
        assert!(r.checks.iter().all(|c| c.points > 0));
    }

    #[test]
    fn mutant_fails_on_the_mean() {
        let r = run_suite(&real_beam_splitter_pipeline, Level::Quick);
        assert!(!r.passed());
        let mean = &r.checks[0];
        assert!(mean.name.starts_with("homodyne mean"));
        assert!(mean.failures > 0);
        assert!(r.diagnostics().contains("homodyne mean"));
        // the mutant keeps the shot-noise statistics of a passive element
        let full_loss = r.checks.iter().find(|c| c.name.starts_with("full-loss")).unwrap();
        assert!(full_loss.passed());
    }

    #[test]
    fn mutant_agrees_at_full_transmission() {
        let c = InterferometerConfig::new(1.0, 0.5, 1.0, 0.7);
        let (m1, v1) = gaussian_pipeline(&c).unwrap();
        let (m2, v2) = real_beam_splitter_pipeline(&c).unwrap();
        assert!((m1 - m2).abs() < 1e-12 && (v1 - v2).abs() < 1e-12);
    }

    #[test]
    fn check_bookkeeping() {
        let mut c = Check::new("x", 1e-3);
        assert!(!c.passed());
        c.record(1e-4, || "a".into());
        assert!(c.passed());
        c.record(f64::NAN, || "b".into());
        assert_eq!(c.failures, 1);
        assert!(c.offending[0].starts_with('b'));
    }
}
