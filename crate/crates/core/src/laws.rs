//! Sample-based checker for distributivity and the other algebraic laws.
//!
//! A check evaluates both sides of a law on a deterministic sequence of
//! operand triples: the explicit probes of the [`SampleSpec`] first, then
//! uniform draws from a seeded ChaCha stream. Triples that leave an
//! operation's domain are skipped and counted. The first triple whose
//! residual exceeds the tolerance becomes the reported counterexample.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // method resolution prefers inherent f64 methods when std is linked
use num_traits::Float;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::alt::{alt_binary, AltOpId};
use crate::diamond::diamond;
use crate::error::{Error, Result};
use crate::numerics::Scalar;
use crate::ops::{q_product, q_sum, DeformParam};

/// Minimum fraction of in-domain draws needed for a verdict.
pub const MIN_HIT_RATE: f64 = 0.8;

/// A binary operation the checker can evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpHandle {
    QSum,
    QProduct,
    Diamond,
    Alt(AltOpId),
}

impl OpHandle {
    pub fn apply(&self, x: &Scalar, y: &Scalar, param: f64) -> Result<Scalar> {
        match self {
            OpHandle::QSum => Ok(q_sum(x, y, &q_param(param)?)),
            OpHandle::QProduct => q_product(x, y, &q_param(param)?),
            OpHandle::Diamond => diamond(x, y, &q_param(param)?),
            OpHandle::Alt(id) => alt_binary(*id, x, y, param),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            OpHandle::QSum => "q_sum",
            OpHandle::QProduct => "q_prod",
            OpHandle::Diamond => "diamond",
            OpHandle::Alt(id) => id.name(),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            OpHandle::QSum => "⊕_q",
            OpHandle::QProduct => "⊗_q",
            OpHandle::Diamond => "◇_q",
            OpHandle::Alt(id) => id.symbol(),
        }
    }
}

fn q_param(q: f64) -> Result<DeformParam> {
    DeformParam::from_f64(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Law {
    Distributivity,
    Associativity,
    Commutativity,
    NeutralExists,
}

impl Law {
    pub fn name(&self) -> &'static str {
        match self {
            Law::Distributivity => "distributivity",
            Law::Associativity => "associativity",
            Law::Commutativity => "commutativity",
            Law::NeutralExists => "neutral",
        }
    }
}

/// Operands and both sides of a failing instance. `z` is absent for binary laws.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Option<Scalar>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LawReport {
    pub law: Law,
    pub mul: Option<OpHandle>,
    pub add: OpHandle,
    pub param: f64,
    pub holds: bool,
    pub counterexample: Option<Counterexample>,
    pub max_residual: f64,
    pub samples: usize,
    pub skipped: usize,
    pub note: Option<&'static str>,
}

/// Where and how many operand triples to draw.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSpec {
    pub lo: f64,
    pub hi: f64,
    /// In-domain random triples to evaluate (probes come on top).
    pub count: usize,
    pub seed: u64,
    /// Triples `(z, x, y)` evaluated before any random draw.
    pub probes: Vec<[Scalar; 3]>,
    /// Residual threshold for `holds`.
    pub tolerance: f64,
}

impl SampleSpec {
    pub fn new(lo: f64, hi: f64, count: usize, seed: u64) -> Self {
        SampleSpec {
            lo,
            hi,
            count,
            seed,
            probes: Vec::new(),
            tolerance: 1e-10,
        }
    }

    pub fn with_probes(mut self, probes: Vec<[Scalar; 3]>) -> Self {
        self.probes = probes;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// Operand range inside the domain of both operations of a law pair.
    ///
    /// For ◇_q the range keeps `1 + (1-q)x` in `[1/4, 4]`, away from the
    /// boundary where `ln(1 + (1-q)x)` loses all relative precision.
    pub fn default_for(mul: OpHandle, add: OpHandle, param: f64, count: usize, seed: u64) -> Self {
        let (lo, hi) = match (mul, add) {
            (OpHandle::Diamond, _) | (_, OpHandle::Diamond) => {
                let e = 1.0 - param;
                let (a, b) = (-0.75 / e, 3.0 / e);
                (a.min(b), a.max(b))
            }
            (OpHandle::QProduct, _) | (_, OpHandle::QProduct) => (0.5, 2.0),
            _ => (1.0, 3.0),
        };
        SampleSpec::new(lo, hi, count, seed).with_probes(vec![
            [Scalar::int(1), Scalar::int(1), Scalar::int(1)],
            [Scalar::int(2), Scalar::int(1), Scalar::int(1)],
        ])
    }
}

/// `|l - r| / max(1, |l|, |r|)`: relative for large values, absolute near zero.
pub fn residual(lhs: &Scalar, rhs: &Scalar) -> f64 {
    let diff = if lhs.is_exact() && rhs.is_exact() {
        (lhs - rhs).abs().to_f64()
    } else {
        (lhs.to_f64() - rhs.to_f64()).abs()
    };
    let scale = 1f64.max(lhs.to_f64().abs()).max(rhs.to_f64().abs());
    let r = diff / scale;
    if r.is_nan() {
        f64::INFINITY
    } else {
        r
    }
}

struct Sampler {
    rng: ChaCha8Rng,
    lo: f64,
    hi: f64,
}

impl Sampler {
    fn new(spec: &SampleSpec) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            lo: spec.lo,
            hi: spec.hi,
        }
    }

    fn next(&mut self) -> Scalar {
        let unit = (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
        Scalar::Float(self.lo + unit * (self.hi - self.lo))
    }

    fn triple(&mut self) -> [Scalar; 3] {
        [self.next(), self.next(), self.next()]
    }
}

struct Tally {
    tolerance: f64,
    max_residual: f64,
    samples: usize,
    skipped: usize,
    counterexample: Option<Counterexample>,
}

impl Tally {
    fn new(tolerance: f64) -> Self {
        Tally {
            tolerance,
            max_residual: 0.0,
            samples: 0,
            skipped: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, outcome: Result<(Scalar, Scalar)>, make: impl FnOnce(Scalar, Scalar) -> Counterexample) {
        match outcome {
            Err(_) => self.skipped += 1,
            Ok((lhs, rhs)) => {
                self.samples += 1;
                let r = residual(&lhs, &rhs);
                self.max_residual = self.max_residual.max(r);
                if r > self.tolerance && self.counterexample.is_none() {
                    self.counterexample = Some(make(lhs, rhs));
                }
            }
        }
    }

    fn random_attempts(&self, spec: &SampleSpec) -> usize {
        self.samples + self.skipped - spec.probes.len().min(self.samples + self.skipped)
    }

    fn finish(self, law: Law, mul: Option<OpHandle>, add: OpHandle, param: f64) -> LawReport {
        LawReport {
            law,
            mul,
            add,
            param,
            holds: self.counterexample.is_none(),
            counterexample: self.counterexample,
            max_residual: self.max_residual,
            samples: self.samples,
            skipped: self.skipped,
            note: None,
        }
    }
}

/// Runs probes then random triples until `spec.count` random triples were
/// in-domain, giving up once the hit rate can no longer reach [`MIN_HIT_RATE`].
fn run_triples(
    spec: &SampleSpec,
    mut eval: impl FnMut(&[Scalar; 3]) -> Result<(Scalar, Scalar)>,
    mut make: impl FnMut(&[Scalar; 3], Scalar, Scalar) -> Counterexample,
) -> Result<Tally> {
    let mut tally = Tally::new(spec.tolerance);
    for probe in &spec.probes {
        tally.record(eval(probe), |l, r| make(probe, l, r));
    }
    let probe_hits = tally.samples;
    let max_attempts = ((spec.count as f64) / MIN_HIT_RATE).ceil() as usize;
    let mut sampler = Sampler::new(spec);
    let mut attempts = 0;
    while tally.samples - probe_hits < spec.count {
        if attempts >= max_attempts {
            return Err(Error::Inconclusive(format!(
                "only {} of {attempts} draws in [{}, {}] were in the domain (need {:.0}%)",
                tally.samples - probe_hits,
                spec.lo,
                spec.hi,
                MIN_HIT_RATE * 100.0
            )));
        }
        attempts += 1;
        let t = sampler.triple();
        tally.record(eval(&t), |l, r| make(&t, l, r));
    }
    debug_assert!(tally.random_attempts(spec) >= spec.count);
    Ok(tally)
}

/// Left distributivity `mul(z, add(x, y)) = add(mul(z, x), mul(z, y))`.
pub fn check_distributivity(mul: OpHandle, add: OpHandle, param: f64, spec: &SampleSpec) -> Result<LawReport> {
    let tally = run_triples(
        spec,
        |[z, x, y]| {
            let lhs = mul.apply(z, &add.apply(x, y, param)?, param)?;
            let rhs = add.apply(&mul.apply(z, x, param)?, &mul.apply(z, y, param)?, param)?;
            Ok((lhs, rhs))
        },
        |[z, x, y], lhs, rhs| Counterexample {
            x: x.clone(),
            y: y.clone(),
            z: Some(z.clone()),
            lhs,
            rhs,
        },
    )?;
    Ok(tally.finish(Law::Distributivity, Some(mul), add, param))
}

/// `add(add(x, y), z) = add(x, add(y, z))`.
pub fn check_associativity(add: OpHandle, param: f64, spec: &SampleSpec) -> Result<LawReport> {
    let tally = run_triples(
        spec,
        |[x, y, z]| {
            let lhs = add.apply(&add.apply(x, y, param)?, z, param)?;
            let rhs = add.apply(x, &add.apply(y, z, param)?, param)?;
            Ok((lhs, rhs))
        },
        |[x, y, z], lhs, rhs| Counterexample {
            x: x.clone(),
            y: y.clone(),
            z: Some(z.clone()),
            lhs,
            rhs,
        },
    )?;
    Ok(tally.finish(Law::Associativity, None, add, param))
}

/// `add(x, y) = add(y, x)`.
pub fn check_commutativity(add: OpHandle, param: f64, spec: &SampleSpec) -> Result<LawReport> {
    let tally = run_triples(
        spec,
        |[x, y, _]| Ok((add.apply(x, y, param)?, add.apply(y, x, param)?)),
        |[x, y, _], lhs, rhs| Counterexample {
            x: x.clone(),
            y: y.clone(),
            z: None,
            lhs,
            rhs,
        },
    )?;
    Ok(tally.finish(Law::Commutativity, None, add, param))
}

/// Searches for a two-sided neutral element `t` of `add`.
///
/// A candidate is found by solving `add(x0, t) = x0` for the first sampled
/// `x0` (grid scan over `[-10, 10]` plus `0` and `1`, refined by bisection
/// at sign changes), then tested on every sample. When no exact root
/// exists the best candidate's miss is the counterexample.
pub fn check_neutral(add: OpHandle, param: f64, spec: &SampleSpec) -> Result<LawReport> {
    let mut sampler = Sampler::new(spec);
    let anchor = sampler.next();
    let t = solve_neutral(add, param, &anchor)
        .ok_or_else(|| Error::Inconclusive(format!("{} is undefined near x0 = {anchor}", add.name())))?;
    let tally = run_triples(
        spec,
        |[x, _, _]| {
            let right = add.apply(x, &t, param)?;
            let left = add.apply(&t, x, param)?;
            if residual(&right, x) >= residual(&left, x) {
                Ok((right, x.clone()))
            } else {
                Ok((left, x.clone()))
            }
        },
        |[x, _, _], lhs, rhs| Counterexample {
            x: x.clone(),
            y: t.clone(),
            z: None,
            lhs,
            rhs,
        },
    )?;
    Ok(tally.finish(Law::NeutralExists, None, add, param))
}

fn solve_neutral(add: OpHandle, param: f64, x0: &Scalar) -> Option<Scalar> {
    let f = |t: f64| -> Option<f64> {
        let t = Scalar::Float(t);
        add.apply(x0, &t, param).ok().map(|v| v.to_f64() - x0.to_f64()).filter(|v| v.is_finite())
    };
    // exact candidates first, so that 0 and 1 come back exact
    for exact in [Scalar::zero(), Scalar::one()] {
        if let Ok(v) = add.apply(x0, &exact, param) {
            if residual(&v, x0) == 0.0 {
                return Some(exact);
            }
        }
    }
    const STEPS: usize = 4000;
    let grid = |i: usize| -10.0 + 20.0 * i as f64 / STEPS as f64;
    let mut best: Option<(f64, f64)> = None;
    let consider = |t: f64, v: f64, best: &mut Option<(f64, f64)>| {
        if best.is_none_or(|(_, bv)| v.abs() < bv.abs()) {
            *best = Some((t, v));
        }
    };
    let mut prev: Option<(f64, f64)> = None;
    for i in 0..=STEPS {
        let t = grid(i);
        let Some(v) = f(t) else {
            prev = None;
            continue;
        };
        consider(t, v, &mut best);
        if let Some((pt, pv)) = prev {
            if pv.signum() != v.signum() {
                let (mut a, mut b, mut fa) = (pt, t, pv);
                for _ in 0..100 {
                    let m = 0.5 * (a + b);
                    let Some(fm) = f(m) else { break };
                    if fm.signum() == fa.signum() {
                        a = m;
                        fa = fm;
                    } else {
                        b = m;
                    }
                }
                let m = 0.5 * (a + b);
                if let Some(fm) = f(m) {
                    consider(m, fm, &mut best);
                }
            }
        }
        prev = Some((t, v));
    }
    best.map(|(t, _)| Scalar::Float(t))
}

/// Distributivity of `mul` over `add`, followed by neutral-element,
/// associativity and commutativity checks of `add`.
pub fn law_matrix(mul: OpHandle, add: OpHandle, param: f64, spec: &SampleSpec) -> Result<Vec<LawReport>> {
    let mut dist = check_distributivity(mul, add, param, spec)?;
    dist.note = known_note(mul, add);
    Ok(vec![
        dist,
        check_neutral(add, param, spec)?,
        check_associativity(add, param, spec)?,
        check_commutativity(add, param, spec)?,
    ])
}

fn known_note(mul: OpHandle, add: OpHandle) -> Option<&'static str> {
    match (mul, add) {
        (OpHandle::Alt(AltOpId::K_PROD_HIGH), OpHandle::Alt(AltOpId::K_SUM_HIGH)) => {
            Some("refuted-as-written, holds with k_sum")
        }
        (OpHandle::Alt(AltOpId::K_PROD), OpHandle::Alt(AltOpId::K_SUM_HIGH)) => {
            Some("k_prod taken as x + y + kxy (q = 1 - k)")
        }
        _ => None,
    }
}

/// A distributivity pair and the verdict the checker reaches for it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Claim {
    pub mul: OpHandle,
    pub add: OpHandle,
    pub expected_holds: bool,
}

/// Distributivity pairs of each family, with the verdict each one reaches.
pub fn family_claims(family: ClaimFamily) -> Vec<Claim> {
    let c = |mul, add, expected_holds| Claim {
        mul,
        add,
        expected_holds,
    };
    match family {
        ClaimFamily::Q => vec![
            c(OpHandle::QProduct, OpHandle::QSum, false),
            c(OpHandle::Diamond, OpHandle::QSum, true),
        ],
        ClaimFamily::A => vec![
            c(OpHandle::Alt(AltOpId::A_PROD), OpHandle::Alt(AltOpId::A_SUM_HIGH), true),
            c(OpHandle::Alt(AltOpId::A_PROD_HIGH), OpHandle::Alt(AltOpId::A_SUM), true),
        ],
        ClaimFamily::K => vec![
            c(OpHandle::Alt(AltOpId::K_PROD), OpHandle::Alt(AltOpId::K_SUM_HIGH), true),
            c(OpHandle::Alt(AltOpId::K_PROD_HIGH), OpHandle::Alt(AltOpId::K_SUM_HIGH), false),
            c(OpHandle::Alt(AltOpId::K_PROD_HIGH), OpHandle::Alt(AltOpId::K_SUM), true),
        ],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClaimFamily {
    Q,
    A,
    K,
}
