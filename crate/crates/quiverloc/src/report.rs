//! Identity catalog, verdict reports and the suite driver.

use std::time::Instant;

use serde::Serialize;

use crate::chainsaw::identities::{
    adj_pair, check_chamber_ratio, check_duality, check_equal_framing, check_fund_relation, check_limit_factorization,
    check_single_slot, phi_ratio, Modulus,
};
use crate::chainsaw::laumon::{check_gl_limit, gl_series, CoefficientForm};
use crate::chainsaw::{z_series, MatterClass};
use crate::combinatorics::{colored_row_count, leg_colored_count, partitions_up_to, Stability};
use crate::error::{Error, Result};
use crate::handsaw::{
    check_kajihara, check_lsw_noumi, check_main1, check_main2, compositions, hs_z_adj_explicit, hs_z_fund_hat,
    kajihara_phi, lemma_elem_check, HandsawConfig, PhiParams,
};
use crate::nekrasov::{nek_box, nek_row};
use crate::outcome::Outcome;
use crate::scalars::{residue_sum_check, with_resample, EvalContext, Mode};
use crate::series::PSeries;
use crate::wallcross::{verify_adj_recursion, verify_check2, verify_vanish};

pub const DEFAULT_CAP: u64 = 200_000;
pub const DEFAULT_TRIALS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Theorem,
    Conjecture,
}

/// Resolved parameters of one verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(rename = "N")]
    pub n: usize,
    pub r: Vec<usize>,
    pub order: usize,
    pub mode: Mode,
    pub seeds: Vec<u64>,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MismatchReport {
    pub index: Vec<u32>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub identity: String,
    pub kind: Kind,
    pub params: Params,
    pub verdict: &'static str,
    pub mismatch: Option<MismatchReport>,
    pub wall_time_ms: Option<u64>,
}

impl VerdictReport {
    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }
}

/// Parameters as given on the command line; missing entries take the identity's defaults.
#[derive(Clone, Debug, Default)]
pub struct Request {
    pub n: Option<usize>,
    pub r: Option<Vec<usize>>,
    pub order: Option<usize>,
    pub mode: Option<Mode>,
    pub seeds: Option<Vec<u64>>,
    pub trials: Option<usize>,
}

type Runner = fn(&Params, &EvalContext) -> Result<Outcome>;

/// One catalog entry.
pub struct Entry {
    pub id: &'static str,
    pub kind: Kind,
    default_r: &'static [usize],
    default_order: usize,
    max_order: usize,
    shape: Shape,
    run: Runner,
}

/// Which context a check samples.
#[derive(Clone, Copy)]
enum Shape {
    /// Chainsaw context with the given framing.
    Chainsaw,
    /// Handsaw context with framing `r0 + r1`.
    Handsaw,
    /// A single auxiliary slot.
    Aux,
}

fn handsaw_cfg(p: &Params) -> Result<HandsawConfig> {
    match p.r[..] {
        [r0, r1] => HandsawConfig::new(r0, r1),
        _ => Err(Error::Invalid("handsaw checks take --r r0,r1".into())),
    }
}

fn pair(p: &Params) -> Result<(usize, usize)> {
    match p.r[..] {
        [a] => Ok((a, a)),
        [a, b] => Ok((a, b)),
        _ => Err(Error::Invalid("expected one or two entries in --r".into())),
    }
}

fn run_main1(p: &Params, c: &EvalContext) -> Result<Outcome> {
    check_main1(&handsaw_cfg(p)?, p.order, c)
}

fn run_main2(p: &Params, c: &EvalContext) -> Result<Outcome> {
    check_main2(&handsaw_cfg(p)?, p.order, c)
}

fn run_kajihara(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let (m, n) = pair(p)?;
    if m == 0 {
        return Err(Error::Invalid("kajihara needs m >= 1".into()));
    }
    check_kajihara(m, n, p.order, c)
}

fn run_lsw(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let (a, b) = pair(p)?;
    if a != b {
        return Err(Error::Invalid("lsw takes equal ranks; use noumi otherwise".into()));
    }
    check_lsw_noumi(a, a, p.order, c)
}

fn run_noumi(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let (a, b) = pair(p)?;
    check_lsw_noumi(a, b, p.order, c)
}

fn run_conj_adj_1(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let slots: Vec<usize> = (0..p.n).filter(|&i| p.r[i] > 0).collect();
    if slots.len() != 1 || p.r[slots[0]] != 1 {
        return Err(Error::Invalid("conj-adj-1 needs a unit framing vector".into()));
    }
    check_single_slot(p.n, slots[0], p.order, c)
}

fn run_conj_adj_2(p: &Params, c: &EvalContext) -> Result<Outcome> {
    check_equal_framing(&p.r, p.order, c)
}

fn run_thm_adj(p: &Params, c: &EvalContext) -> Result<Outcome> {
    check_chamber_ratio(&p.r, p.order, c, Modulus::Total)
}

fn run_conj_fund(p: &Params, c: &EvalContext) -> Result<Outcome> {
    check_fund_relation(&p.r, p.order, c)
}

fn run_duality(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let mut out = Outcome::pass();
    for size in 0..=p.order {
        for v in compositions(p.n, size) {
            out = out.and(check_duality(&p.r, &v, c)?);
        }
    }
    Ok(out)
}

fn run_prop_str(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let mut out = Outcome::pass();
    for a in 0..p.n {
        out = out.and(check_limit_factorization(&p.r, a, p.order, c)?);
    }
    Ok(out)
}

fn run_gl(p: &Params, c: &EvalContext) -> Result<Outcome> {
    check_gl_limit(p.order, c, CoefficientForm::Shifted)
}

fn run_vanish(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let (a, b) = pair(p)?;
    if a != b {
        return Err(Error::Invalid("lemma-vanish takes equal ranks".into()));
    }
    verify_vanish(p.order, a, c)
}

fn run_recursion(p: &Params, c: &EvalContext) -> Result<Outcome> {
    verify_adj_recursion(p.order, &handsaw_cfg(p)?, c)
}

fn run_check2(p: &Params, c: &EvalContext) -> Result<Outcome> {
    verify_check2(p.order, &handsaw_cfg(p)?, c)
}

fn run_residue(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let mut out = Outcome::pass();
    for k in 1..=p.order {
        for trial in 0..p.trials {
            let draw = c.aux(10_000 + (k * p.trials + trial) as u64, 2 * k);
            let (z, w) = draw.split_at(k);
            match residue_sum_check(z, w) {
                Ok((true, _)) => {}
                Ok((false, v)) => {
                    let want = crate::scalars::product(c.mode, z).div(&crate::scalars::product(c.mode, w))? - c.one();
                    out = out.and(Outcome::scalar(vec![k as u32, trial as u32], v, want));
                }
                // a repeated pole is not an instance of the lemma
                Err(Error::PoleCollision(_)) | Err(Error::DivisionByZero) => {}
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}

fn run_lyk(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let mut out = Outcome::pass();
    for (i, lam) in partitions_up_to(p.order).iter().enumerate() {
        for n in 1..=p.n {
            for k in 0..n as i64 {
                let l = leg_colored_count(lam, n, k) as i64;
                let rr = colored_row_count(lam, n, k + 1) as i64;
                out = out.and(Outcome::scalar(vec![i as u32, n as u32, k as u32], c.int(l), c.int(rr)));
            }
        }
    }
    Ok(out)
}

fn run_elem(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let x = c.aux(31, p.n);
    let mut out = Outcome::pass();
    let side = p.order as u32 + 1;
    for code in 0..side.pow(p.n as u32) {
        let k: Vec<u32> = (0..p.n).map(|i| code / side.pow(i as u32) % side).collect();
        if !lemma_elem_check(&x, &k, c)? {
            let (l, r) = crate::handsaw::lemma_elem_sides(&x, &k, c)?;
            out = out.and(Outcome::scalar(k, l, r));
        }
    }
    Ok(out)
}

fn run_nek_forms(p: &Params, c: &EvalContext) -> Result<Outcome> {
    let parts = partitions_up_to(p.order);
    let u = c.aux(41, 1).remove(0);
    let mut out = Outcome::pass();
    for (i, lam) in parts.iter().enumerate() {
        for (j, mu) in parts.iter().enumerate() {
            for k in 0..p.n as i64 {
                let a = nek_row(lam, mu, k, p.n, &u, c);
                let b = nek_box(lam, mu, k, p.n, &u, c);
                out = out.and(Outcome::scalar(vec![i as u32, j as u32, k as u32], a, b));
            }
        }
    }
    Ok(out)
}

const fn entry(
    id: &'static str,
    kind: Kind,
    shape: Shape,
    default_r: &'static [usize],
    default_order: usize,
    max_order: usize,
    run: Runner,
) -> Entry {
    Entry { id, kind, default_r, default_order, max_order, shape, run }
}

/// Every registered identity, in canonical order.
pub static CATALOG: &[Entry] = &[
    entry("main1", Kind::Theorem, Shape::Handsaw, &[2, 1], 4, 6, run_main1),
    entry("main2", Kind::Theorem, Shape::Handsaw, &[1, 1], 4, 6, run_main2),
    entry("kajihara", Kind::Theorem, Shape::Aux, &[1, 1], 4, 5, run_kajihara),
    entry("lsw", Kind::Theorem, Shape::Aux, &[1, 1], 4, 5, run_lsw),
    entry("noumi", Kind::Theorem, Shape::Aux, &[1, 2], 4, 5, run_noumi),
    entry("conj-adj-1", Kind::Theorem, Shape::Chainsaw, &[1, 0], 4, 6, run_conj_adj_1),
    entry("conj-adj-2", Kind::Conjecture, Shape::Chainsaw, &[1, 1], 3, 6, run_conj_adj_2),
    entry("thm-adj", Kind::Theorem, Shape::Chainsaw, &[2, 1], 4, 6, run_thm_adj),
    entry("conj-fund", Kind::Conjecture, Shape::Chainsaw, &[1, 1], 3, 4, run_conj_fund),
    entry("duality", Kind::Theorem, Shape::Chainsaw, &[1, 1], 3, 4, run_duality),
    entry("prop-str", Kind::Theorem, Shape::Chainsaw, &[1, 1], 2, 3, run_prop_str),
    entry("gl-n-limit", Kind::Theorem, Shape::Chainsaw, &[1, 1], 3, 4, run_gl),
    entry("lemma-vanish", Kind::Theorem, Shape::Aux, &[1, 1], 6, 6, run_vanish),
    entry("adj-recursion", Kind::Theorem, Shape::Handsaw, &[2, 1], 4, 6, run_recursion),
    entry("check2", Kind::Theorem, Shape::Handsaw, &[2, 1], 3, 5, run_check2),
    entry("residue1", Kind::Theorem, Shape::Aux, &[1], 5, 8, run_residue),
    entry("lyk", Kind::Theorem, Shape::Aux, &[1, 1, 1, 1], 10, 14, run_lyk),
    entry("elem", Kind::Theorem, Shape::Aux, &[1, 1, 1], 3, 5, run_elem),
    entry("nek-forms", Kind::Theorem, Shape::Aux, &[1, 1, 1], 4, 8, run_nek_forms),
];

pub fn lookup(id: &str) -> Result<&'static Entry> {
    CATALOG.iter().find(|e| e.id == id).ok_or_else(|| {
        let known: Vec<&str> = CATALOG.iter().map(|e| e.id).collect();
        Error::Invalid(format!("unknown identity {id}; known: {}", known.join(", ")))
    })
}

/// Number of `slots`-tuples of partitions with at most `order` boxes in total.
fn tuple_count(slots: usize, order: usize) -> u64 {
    let parts: Vec<u64> =
        (0..=order).map(|k| partitions_up_to(k).iter().filter(|p| p.size() == k).count() as u64).collect();
    let mut acc = vec![0u64; order + 1];
    acc[0] = 1;
    for _ in 0..slots {
        let mut next = vec![0u64; order + 1];
        for (i, &a) in acc.iter().enumerate() {
            for (j, &b) in parts.iter().enumerate().take(order + 1 - i) {
                next[i + j] = next[i + j].saturating_add(a.saturating_mul(b));
            }
        }
        acc = next;
    }
    acc.iter().fold(0u64, |s, &x| s.saturating_add(x))
}

/// Rough count of fixed points a check enumerates.
pub fn estimate_fixed_points(entry: &Entry, p: &Params) -> u64 {
    match entry.shape {
        Shape::Chainsaw => {
            let grown = if entry.id == "prop-str" { 1 } else { 0 };
            tuple_count(p.r.iter().sum::<usize>() + grown, p.order)
        }
        Shape::Handsaw => {
            let k = p.r.iter().sum::<usize>() as u64;
            (1..=k).fold(1u64, |acc, i| acc.saturating_mul(p.order as u64 + i) / i)
        }
        Shape::Aux => 0,
    }
}

impl Entry {
    pub fn resolve(&self, req: &Request) -> Result<Params> {
        let r = req.r.clone().unwrap_or_else(|| self.default_r.to_vec());
        let n = match self.shape {
            Shape::Chainsaw => {
                let n = req.n.unwrap_or(r.len());
                if n != r.len() {
                    return Err(Error::Invalid(format!("--N {n} does not match {} framing entries", r.len())));
                }
                n
            }
            Shape::Handsaw => r.len(),
            Shape::Aux => req.n.unwrap_or(r.len()),
        };
        if n == 0 {
            return Err(Error::Invalid("N must be positive".into()));
        }
        let order = req.order.unwrap_or(self.default_order);
        if order > self.max_order {
            return Err(Error::Invalid(format!("{} supports order <= {}", self.id, self.max_order)));
        }
        let seeds = req.seeds.clone().unwrap_or_else(|| vec![1, 2, 3]);
        if seeds.is_empty() {
            return Err(Error::Invalid("at least one seed is required".into()));
        }
        Ok(Params {
            n,
            r,
            order,
            mode: req.mode.unwrap_or(Mode::Prime),
            seeds,
            trials: req.trials.unwrap_or(DEFAULT_TRIALS),
        })
    }

    fn context_shape(&self, p: &Params) -> (usize, Vec<usize>) {
        match self.shape {
            Shape::Chainsaw => (p.n, p.r.clone()),
            Shape::Handsaw => (1, vec![p.r.iter().sum::<usize>().max(1)]),
            Shape::Aux => (1, vec![1]),
        }
    }

    /// Run the check under every seed; the first failing seed is reported.
    pub fn verify(&self, p: &Params, cap: u64, timing: bool) -> Result<VerdictReport> {
        let est = estimate_fixed_points(self, p);
        if est > cap {
            return Err(Error::Infeasible(est, cap));
        }
        let start = Instant::now();
        let (n, r) = self.context_shape(p);
        let bound = 2 * p.order.max(2);
        let mut mismatch = None;
        for &seed in &p.seeds {
            let o = with_resample(n, &r, bound, seed, p.mode, |c| (self.run)(p, c))?;
            if let Some(m) = o.mismatch {
                mismatch = Some(MismatchReport { index: m.index, lhs: m.lhs.to_string(), rhs: m.rhs.to_string() });
                break;
            }
        }
        Ok(VerdictReport {
            identity: self.id.to_string(),
            kind: self.kind,
            params: p.clone(),
            verdict: if mismatch.is_none() { "pass" } else { "fail" },
            mismatch,
            wall_time_ms: timing.then(|| start.elapsed().as_millis() as u64),
        })
    }
}

/// Resolve and run one identity.
pub fn run_verify(id: &str, req: &Request, cap: u64, timing: bool) -> Result<VerdictReport> {
    let e = lookup(id)?;
    let p = e.resolve(req)?;
    e.verify(&p, cap, timing)
}

pub const SERIES_IDS: &[&str] =
    &["z-adj", "z-adj-dual", "z-fund", "z-fund-dual", "hs-z-adj", "hs-z-fund-hat", "phi-ratio", "kajihara-phi", "gl-n"];

/// Series to emit, with a context sampled from `seed`.
pub fn run_compute(id: &str, req: &Request, stability: Stability, seed: u64) -> Result<PSeries> {
    if !SERIES_IDS.contains(&id) {
        return Err(Error::Invalid(format!("unknown series {id}; known: {}", SERIES_IDS.join(", "))));
    }
    let mode = req.mode.unwrap_or(Mode::Prime);
    let order = req.order.unwrap_or(3);
    let handsaw = id.starts_with("hs-");
    let r = req.r.clone().unwrap_or_else(|| if handsaw || id == "kajihara-phi" { vec![1, 0] } else { vec![1, 1] });
    if let Some(n) = req.n {
        if !handsaw && id != "kajihara-phi" && n != r.len() {
            return Err(Error::Invalid(format!("--N {n} does not match {} framing entries", r.len())));
        }
    }
    let bound = 2 * order.max(2);
    match id {
        "hs-z-adj" | "hs-z-fund-hat" => {
            let cfg = match r[..] {
                [a, b] => HandsawConfig::new(a, b)?,
                _ => return Err(Error::Invalid("handsaw series take --r r0,r1".into())),
            };
            with_resample(1, &[cfg.r()], bound, seed, mode, |c| {
                if id == "hs-z-adj" {
                    hs_z_adj_explicit(&cfg, stability, order, c, &c.t)
                } else {
                    hs_z_fund_hat(&cfg, stability, order, c)
                }
            })
        }
        "kajihara-phi" => {
            let (m, n) = match r[..] {
                [m, n] if m >= 1 => (m, n),
                _ => return Err(Error::Invalid("kajihara-phi takes --r m,n with m >= 1".into())),
            };
            with_resample(1, &[1], bound, seed, mode, |c| {
                let v = c.aux(11, 2 * m + 2 * n);
                let p = PhiParams {
                    a: v[..m].to_vec(),
                    x: v[m..2 * m].to_vec(),
                    b: v[2 * m..2 * m + n].to_vec(),
                    c: v[2 * m + n..].to_vec(),
                };
                kajihara_phi(&p, &c.one(), order, c)
            })
        }
        _ => {
            let n = r.len();
            with_resample(n, &r, bound, seed, mode, |c| match id {
                "z-adj" => Ok(adj_pair(&r, order, c)?.0),
                "z-adj-dual" => Ok(adj_pair(&r, order, c)?.1),
                "z-fund" => z_series(&r, Stability::Negative, MatterClass::Fund, order, c, &c.one()),
                "z-fund-dual" => z_series(&r, Stability::Positive, MatterClass::Fund, order, c, &c.one()),
                "phi-ratio" => phi_ratio(&r, order, c, Modulus::Total)?.value(),
                "gl-n" => {
                    if r.windows(2).any(|w| w[0] != w[1]) {
                        return Err(Error::Invalid("gl-n needs equal framing".into()));
                    }
                    gl_series(r[0], order, &c.e, &c.q.div(&c.t)?, c, CoefficientForm::Shifted)
                }
                _ => unreachable!(),
            })
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

fn req(r: &[usize], order: usize) -> Request {
    Request { r: Some(r.to_vec()), order: Some(order), ..Request::default() }
}

/// The battery run by a suite profile, as (identity, request) pairs.
pub fn suite_plan(profile: Profile) -> Vec<(&'static str, Request)> {
    let mut plan: Vec<(&'static str, Request)> = vec![
        ("nek-forms", Request { n: Some(3), ..req(&[1, 1, 1], 4) }),
        ("lyk", Request { n: Some(4), ..req(&[1, 1, 1, 1], 10) }),
        ("elem", Request { n: Some(3), ..req(&[1, 1, 1], 3) }),
        ("residue1", Request { trials: Some(DEFAULT_TRIALS), ..req(&[1], 5) }),
    ];
    let quick = profile == Profile::Quick;
    let hs_order = if quick { 4 } else { 6 };
    for r in [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2], [2, 2]] {
        plan.push(("main1", req(&r, hs_order)));
    }
    for r in [[1, 0], [0, 1], [1, 1], [2, 1], [1, 2], [2, 2]] {
        plan.push(("main2", req(&r, if quick { 4 } else { 6 })));
    }
    for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
        plan.push(("kajihara", req(&[m, n], if quick { 3 } else { 5 })));
    }
    for m in [1, 2] {
        plan.push(("lsw", req(&[m, m], if quick { 3 } else { 5 })));
    }
    for r in [[1, 2], [1, 3]] {
        plan.push(("noumi", req(&r, if quick { 3 } else { 5 })));
    }
    for r in [[1, 1], [2, 2]] {
        plan.push(("lemma-vanish", req(&r, if quick { 4 } else { 6 })));
    }
    for r in [[1, 0], [2, 1]] {
        plan.push(("adj-recursion", req(&r, 4)));
    }
    for r in [[1, 0], [1, 1], [2, 1]] {
        plan.push(("check2", req(&r, if quick { 3 } else { 5 })));
    }
    plan.push(("conj-adj-1", req(&[1, 0], 4)));
    plan.push(("conj-adj-1", req(&[0, 1], 4)));
    plan.push(("conj-adj-2", req(&[1, 1], 3)));
    plan.push(("thm-adj", req(&[2, 1], 4)));
    if !quick {
        plan.push(("thm-adj", req(&[2, 2, 1], 4)));
        plan.push(("thm-adj", req(&[2, 1, 1, 1], 4)));
        plan.push(("conj-adj-2", req(&[1, 1, 1], 3)));
    }
    plan.push(("conj-fund", req(&[1], 3)));
    plan.push(("conj-fund", req(&[1, 1], if quick { 2 } else { 3 })));
    plan.push(("duality", req(&[1, 1], if quick { 2 } else { 3 })));
    plan.push(("prop-str", req(&[1, 1], 2)));
    plan.push(("gl-n-limit", req(&[1, 1], 3)));
    if !quick {
        plan.push(("gl-n-limit", req(&[1, 1, 1], 3)));
    }
    plan
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub profile: &'static str,
    pub seed: u64,
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub conjecture_failures: usize,
}

/// Run a suite profile. Every report uses the three seeds starting at `seed`;
/// conjecture failures do not count against the exit status.
pub fn run_suite(
    profile: Profile,
    seed: u64,
    only: Option<&[String]>,
    timing: bool,
) -> Result<(Vec<VerdictReport>, Summary)> {
    use rayon::prelude::*;
    let mut plan = suite_plan(profile);
    if let Some(ids) = only {
        plan.retain(|(id, _)| ids.iter().any(|x| x == id));
        if plan.is_empty() {
            return Err(Error::Invalid("no suite entry matches the identity filter".into()));
        }
    }
    let seeds = vec![seed, seed.wrapping_add(1), seed.wrapping_add(2)];
    let reports = plan
        .par_iter()
        .map(|(id, r)| {
            let mut r = r.clone();
            r.seeds = Some(seeds.clone());
            run_verify(id, &r, u64::MAX, timing)
        })
        .collect::<Result<Vec<_>>>()?;
    let failed = reports.iter().filter(|r| !r.passed() && r.kind == Kind::Theorem).count();
    let conjecture_failures = reports.iter().filter(|r| !r.passed() && r.kind == Kind::Conjecture).count();
    let summary = Summary {
        profile: match profile {
            Profile::Quick => "quick",
            Profile::Full => "full",
        },
        seed,
        total: reports.len(),
        passed: reports.iter().filter(|r| r.passed()).count(),
        failed,
        conjecture_failures,
    };
    Ok((reports, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_ids_are_unique_and_complete() {
        let want = [
            "main1",
            "main2",
            "kajihara",
            "lsw",
            "noumi",
            "conj-adj-1",
            "conj-adj-2",
            "thm-adj",
            "conj-fund",
            "duality",
            "prop-str",
            "gl-n-limit",
            "lemma-vanish",
            "adj-recursion",
            "check2",
            "residue1",
            "lyk",
            "elem",
            "nek-forms",
        ];
        let ids: Vec<&str> = CATALOG.iter().map(|e| e.id).collect();
        assert_eq!(ids, want);
    }

    #[test]
    fn defaults_pass() {
        for e in CATALOG {
            let p = e.resolve(&Request { seeds: Some(vec![1]), ..Request::default() }).unwrap();
            let rep = e.verify(&p, DEFAULT_CAP, false).unwrap();
            assert!(rep.passed(), "{}: {:?}", e.id, rep.mismatch);
            assert!(rep.wall_time_ms.is_none());
        }
    }

    #[test]
    fn failing_check_carries_mismatch() {
        // the label modulus is known to fail; drive it through a report
        let e = Entry {
            id: "thm-adj-label",
            kind: Kind::Theorem,
            default_r: &[2, 1],
            default_order: 3,
            max_order: 6,
            shape: Shape::Chainsaw,
            run: |p, c| check_chamber_ratio(&p.r, p.order, c, Modulus::Label),
        };
        let p = e.resolve(&Request { seeds: Some(vec![1]), ..Request::default() }).unwrap();
        let rep = e.verify(&p, DEFAULT_CAP, false).unwrap();
        assert_eq!(rep.verdict, "fail");
        assert!(rep.mismatch.is_some());
    }

    #[test]
    fn usage_errors() {
        assert!(lookup("nope").is_err());
        let req = Request { order: Some(9), ..Request::default() };
        assert!(run_verify("main1", &req, DEFAULT_CAP, false).is_err());
        let req = Request { n: Some(3), r: Some(vec![1, 1]), ..Request::default() };
        assert!(run_verify("thm-adj", &req, DEFAULT_CAP, false).is_err());
        let req = Request { r: Some(vec![2, 2]), order: Some(6), ..Request::default() };
        assert!(matches!(run_verify("thm-adj", &req, 10, false), Err(Error::Infeasible(_, 10))));
    }

    #[test]
    fn tuple_count_small() {
        assert_eq!(tuple_count(1, 3), 1 + 1 + 2 + 3);
        assert_eq!(tuple_count(2, 1), 3);
        assert_eq!(tuple_count(0, 5), 1);
    }

    #[test]
    fn compute_base_case_and_determinism() {
        let req = Request { r: Some(vec![1, 0]), order: Some(3), mode: Some(Mode::Exact), ..Request::default() };
        let a = run_compute("hs-z-adj", &req, Stability::Negative, 5).unwrap();
        let b = run_compute("hs-z-adj", &req, Stability::Negative, 5).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let zero = Request { order: Some(0), ..req.clone() };
        let z = run_compute("hs-z-adj", &zero, Stability::Negative, 5).unwrap();
        assert_eq!(z.to_json()["terms"], serde_json::json!([[0, "1"]]));
        for id in SERIES_IDS {
            let req = Request { r: Some(vec![1, 1]), order: Some(2), ..Request::default() };
            run_compute(id, &req, Stability::Positive, 1).unwrap();
        }
        assert!(run_compute("bogus", &req, Stability::Positive, 1).is_err());
    }
}
