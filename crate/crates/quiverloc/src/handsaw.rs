//! Type-A1 handsaw quiver: fixed points, localization sums, explicit
//! hypergeometric forms and the transformations relating the two chambers.
//!
//! Parameters live in a one-vertex [`EvalContext`] with framing `r0 + r1`:
//! `ctx.e[0][a]` and `ctx.mu[0][a]` for `a < r0` belong to `J0`, the rest to `J1`.

use std::ops::Range;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chainsaw::{Basis, Character, Evaluator, MatterClass};
use crate::combinatorics::Stability;
use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::scalars::{product, EvalContext, Scalar};
use crate::series::{finite_poch, inf_poch, q_borel, PSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HandsawConfig {
    pub r0: usize,
    pub r1: usize,
}

impl HandsawConfig {
    pub fn new(r0: usize, r1: usize) -> Result<HandsawConfig> {
        if r0 + r1 == 0 {
            return Err(Error::Invalid("handsaw framing must be nonzero".into()));
        }
        Ok(HandsawConfig { r0, r1 })
    }

    pub fn r(&self) -> usize {
        self.r0 + self.r1
    }

    pub fn j0(&self) -> Range<usize> {
        0..self.r0
    }

    pub fn j1(&self) -> Range<usize> {
        self.r0..self.r()
    }

    /// Framing indices carrying the tautological bundle in a chamber.
    pub fn side(&self, st: Stability) -> Range<usize> {
        match st {
            Stability::Negative => self.j0(),
            Stability::Positive => self.j1(),
        }
    }

    fn check_ctx(&self, ctx: &EvalContext) -> Result<()> {
        if ctx.n != 1 || ctx.r[0] != self.r() {
            return Err(Error::ShapeMismatch(ctx.n, ctx.r.iter().sum(), 1, self.r()));
        }
        Ok(())
    }
}

/// Compositions of `n` into `parts` nonnegative parts, lexicographically decreasing.
pub fn compositions(parts: usize, n: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=n).rev() {
        for mut rest in compositions(parts - 1, n - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Fixed points with `|k| = n`; `k` is indexed by the chamber's side.
pub fn hs_fixed_points(cfg: &HandsawConfig, st: Stability, n: usize) -> Vec<Vec<u32>> {
    compositions(cfg.side(st).len(), n)
}

fn basis(cfg: &HandsawConfig) -> Basis {
    Basis::new(cfg.r())
}

/// Tautological bundle at a fixed point.
pub fn tautological(cfg: &HandsawConfig, st: Stability, k: &[u32]) -> Character {
    let b = basis(cfg);
    let mut v = Character::new();
    for (j, a) in cfg.side(st).enumerate() {
        for i in 1..=k[j] as i32 {
            let qpow = match st {
                Stability::Negative => 1 - i,
                Stability::Positive => i,
            };
            v.add(crate::chainsaw::character::wmul(&b.e(a, 1), &b.q(qpow)), 1);
        }
    }
    v
}

fn framing(cfg: &HandsawConfig, idx: Range<usize>) -> Character {
    let b = basis(cfg);
    Character::from_weights(idx.map(|a| b.e(a, 1)))
}

/// Tangent space from the quiver description:
/// `End(V) q + Hom(W0, V) + Hom(V, W1) q - End(V)`.
pub fn hs_tangent_character(cfg: &HandsawConfig, st: Stability, k: &[u32]) -> Character {
    let b = basis(cfg);
    let v = tautological(cfg, st, k);
    let end = v.dual().tensor(&v);
    let mut out = end.twist(&b.q(1));
    out.add_char(&end, -1);
    out.add_char(&framing(cfg, cfg.j0()).dual().tensor(&v), 1);
    out.add_char(&v.dual().tensor(&framing(cfg, cfg.j1())).twist(&b.q(1)), 1);
    out
}

/// Tangent space in the telescoped form with one geometric run per pair.
pub fn hs_tangent_closed(cfg: &HandsawConfig, st: Stability, k: &[u32]) -> Character {
    use crate::chainsaw::character::wmul;
    let b = basis(cfg);
    let side = cfg.side(st);
    let other = match st {
        Stability::Negative => cfg.j1(),
        Stability::Positive => cfg.j0(),
    };
    // orientation: + uses e_a^{-1} e_b, - uses e_a e_b^{-1}
    let sgn = match st {
        Stability::Positive => 1,
        Stability::Negative => -1,
    };
    let kk = |x: usize| k[x - side.start] as i32;
    let mut out = Character::new();
    for a in side.clone() {
        for bb in side.clone() {
            let w = wmul(&b.e(a, -sgn), &b.e(bb, sgn));
            for l in kk(bb) - kk(a) + 1..=kk(bb) {
                out.add(wmul(&w, &b.q(l)), 1);
            }
        }
    }
    for a in other {
        for bb in side.clone() {
            let w = wmul(&b.e(a, -sgn), &b.e(bb, sgn));
            for i in 1..=kk(bb) {
                out.add(wmul(&w, &b.q(i)), 1);
            }
        }
    }
    out
}

/// `sum_{J0} V mu/q + sum_{J1} V^dual q/mu`
pub fn hs_fund_character(cfg: &HandsawConfig, st: Stability, k: &[u32]) -> Character {
    use crate::chainsaw::character::wmul;
    let b = basis(cfg);
    let v = tautological(cfg, st, k);
    let mut out = Character::new();
    for a in cfg.j0() {
        out.add_char(&v.twist(&wmul(&b.mu(a, 1), &b.q(-1))), 1);
    }
    for a in cfg.j1() {
        out.add_char(&v.dual().twist(&wmul(&b.mu(a, -1), &b.q(1))), 1);
    }
    out
}

/// Generating series `sum_n p^n sum_{|k| = n} Eu^t(class) / Eu(T)`; for the
/// fundamental class `t_val` is ignored.
pub fn hs_localization(
    cfg: &HandsawConfig,
    st: Stability,
    class: MatterClass,
    trunc: usize,
    ctx: &EvalContext,
    t_val: &Scalar,
) -> Result<PSeries> {
    cfg.check_ctx(ctx)?;
    let ev = Evaluator::new(ctx)?;
    let coeffs = (0..=trunc)
        .into_par_iter()
        .map(|n| {
            let mut acc = ctx.zero();
            for k in hs_fixed_points(cfg, st, n) {
                let tan = hs_tangent_character(cfg, st, &k);
                let num = match class {
                    MatterClass::Adj => ev.eu_t(&tan, t_val)?,
                    MatterClass::Fund => ev.eu(&hs_fund_character(cfg, st, &k))?,
                };
                acc = acc + num.div(&ev.eu(&tan)?)?;
            }
            Ok(acc)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PSeries::from_dense(trunc, ctx.mode, &coeffs))
}

fn poch(x: &Scalar, ctx: &EvalContext, k: u32) -> Scalar {
    finite_poch(x, &ctx.q, k as usize)
}

fn e(ctx: &EvalContext, a: usize) -> &Scalar {
    &ctx.e[0][a]
}

fn mu(ctx: &EvalContext, a: usize) -> &Scalar {
    &ctx.mu[0][a]
}

/// Closed-form adjoint term at a fixed point, without the power of `p`.
pub fn hs_adj_term(cfg: &HandsawConfig, st: Stability, k: &[u32], ctx: &EvalContext, t: &Scalar) -> Result<Scalar> {
    let side = cfg.side(st);
    let other = match st {
        Stability::Negative => cfg.j1(),
        Stability::Positive => cfg.j0(),
    };
    let kk = |x: usize| k[x - side.start];
    // ratio of the two framing parameters, oriented per chamber
    let ratio = |a: usize, b: usize| -> Result<Scalar> {
        match st {
            Stability::Positive => e(ctx, a).div(e(ctx, b)),
            Stability::Negative => e(ctx, b).div(e(ctx, a)),
        }
    };
    let n: u32 = k.iter().sum();
    let mut acc = t.pow_u(other.len() as u64 * n as u64);
    for a in side.clone() {
        for b in side.clone() {
            let x = &ctx.q_pow(-(kk(b) as i64)) * &ratio(a, b)?;
            acc = acc * poch(&(t * &x), ctx, kk(a));
            acc = acc.div(&poch(&x, ctx, kk(a)))?;
        }
    }
    for b in side.clone() {
        for a in other.clone() {
            let x = &ctx.q * &ratio(a, b)?.inv()?;
            acc = acc * poch(&x.div(t)?, ctx, kk(b));
            acc = acc.div(&poch(&x, ctx, kk(b)))?;
        }
    }
    Ok(acc)
}

/// Adjoint series from the explicit hypergeometric form.
pub fn hs_z_adj_explicit(
    cfg: &HandsawConfig,
    st: Stability,
    trunc: usize,
    ctx: &EvalContext,
    t: &Scalar,
) -> Result<PSeries> {
    cfg.check_ctx(ctx)?;
    let coeffs = (0..=trunc)
        .map(|n| {
            hs_fixed_points(cfg, st, n).iter().try_fold(ctx.zero(), |acc, k| Ok(acc + hs_adj_term(cfg, st, k, ctx, t)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PSeries::from_dense(trunc, ctx.mode, &coeffs))
}

/// `prod_{a<b} (x_a - x_b)`
pub fn vandermonde(x: &[Scalar], mode: crate::scalars::Mode) -> Scalar {
    let mut acc = Scalar::one(mode);
    for a in 0..x.len() {
        for b in a + 1..x.len() {
            acc = acc * (&x[a] - &x[b]);
        }
    }
    acc
}

/// Borel-transformed fundamental term at a fixed point, including the sign and
/// the power of the framing products.
pub fn hs_fund_hat_term(cfg: &HandsawConfig, st: Stability, k: &[u32], ctx: &EvalContext) -> Result<Scalar> {
    let n: u32 = k.iter().sum();
    let side = cfg.side(st);
    let kk = |x: usize| k[x - side.start];
    let q = &ctx.q;
    let mut acc = match st {
        Stability::Positive => {
            let d = product(ctx.mode, cfg.j0().map(|a| e(ctx, a) * mu(ctx, a)).collect::<Vec<_>>().iter());
            (-(ctx.q_pow(cfg.r0 as i64).div(&d)?)).pow_u(n as u64)
        }
        Stability::Negative => {
            let d = product(ctx.mode, cfg.j1().map(|a| e(ctx, a) * mu(ctx, a)).collect::<Vec<_>>().iter());
            (-d).pow_u(n as u64)
        }
    };
    // Vandermonde ratio in q^k e (or q^k / e)
    let base: Vec<Scalar> = side
        .clone()
        .map(|a| match st {
            Stability::Positive => Ok(e(ctx, a).clone()),
            Stability::Negative => e(ctx, a).inv(),
        })
        .collect::<Result<_>>()?;
    let shifted: Vec<Scalar> = side.clone().zip(&base).map(|(a, x)| &ctx.q_pow(kk(a) as i64) * x).collect();
    acc = acc * vandermonde(&shifted, ctx.mode);
    acc = acc.div(&vandermonde(&base, ctx.mode))?;
    for b in side.clone() {
        for a in 0..cfg.r() {
            let (num, den) = match st {
                Stability::Positive => (e(ctx, b) * mu(ctx, a), (q * e(ctx, b)).div(e(ctx, a))?),
                Stability::Negative => (q.div(&(e(ctx, b) * mu(ctx, a)))?, (q * e(ctx, a)).div(e(ctx, b))?),
            };
            acc = acc * poch(&num, ctx, kk(b));
            acc = acc.div(&poch(&den, ctx, kk(b)))?;
        }
    }
    Ok(acc)
}

/// `sum_n p^n` times the Borel-transformed fundamental coefficients.
pub fn hs_z_fund_hat(cfg: &HandsawConfig, st: Stability, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    cfg.check_ctx(ctx)?;
    let coeffs = (0..=trunc)
        .map(|n| {
            hs_fixed_points(cfg, st, n)
                .iter()
                .try_fold(ctx.zero(), |acc, k| Ok(acc + hs_fund_hat_term(cfg, st, k, ctx)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PSeries::from_dense(trunc, ctx.mode, &coeffs))
}

fn cst(trunc: usize, c: Scalar) -> PSeries {
    PSeries::constant(1, trunc, c)
}

fn lin(trunc: usize, c: Scalar) -> PSeries {
    PSeries::monomial(1, trunc, vec![1], c)
}

/// `(c p; q, t)_inf`
fn qt_poch(c: Scalar, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    inf_poch(&lin(trunc, c), &[cst(trunc, ctx.q.clone()), cst(trunc, ctx.t.clone())])
}

/// `(c p; q)_inf`
fn q_poch(c: Scalar, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    inf_poch(&lin(trunc, c), &[cst(trunc, ctx.q.clone())])
}

/// Ratio of adjoint series between the chambers as a pair of double products:
/// `Z+ * den = Z- * num`.
pub fn main1_factors(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<(PSeries, PSeries)> {
    let (r0, r1) = (cfg.r0 as i64, cfg.r1 as i64);
    let num = qt_poch(&ctx.q * &ctx.t_pow(r0), trunc, ctx)?.mul(&qt_poch(ctx.t_pow(r1 + 1), trunc, ctx)?)?;
    let den = qt_poch(ctx.t_pow(r0 + 1), trunc, ctx)?.mul(&qt_poch(&ctx.q * &ctx.t_pow(r1), trunc, ctx)?)?;
    Ok((num, den))
}

/// The same ratio as a finite product of single infinite products (needs `r0 <= r1`).
pub fn main1_single_product(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<(PSeries, PSeries)> {
    if cfg.r0 > cfg.r1 {
        return Err(Error::Invalid("single-product form needs r0 <= r1".into()));
    }
    let mut num = PSeries::one(1, trunc, ctx.mode);
    let mut den = PSeries::one(1, trunc, ctx.mode);
    for s in 1..=(cfg.r1 - cfg.r0) as i64 {
        num = num.mul(&q_poch(&ctx.q * &ctx.t_pow(cfg.r0 as i64 + s - 1), trunc, ctx)?)?;
        den = den.mul(&q_poch(ctx.t_pow(cfg.r0 as i64 + s), trunc, ctx)?)?;
    }
    Ok((num, den))
}

/// Adjoint chamber relation, checked on localization sums.
pub fn check_main1(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let zp = hs_localization(cfg, Stability::Positive, MatterClass::Adj, trunc, ctx, &ctx.t)?;
    let zm = hs_localization(cfg, Stability::Negative, MatterClass::Adj, trunc, ctx, &ctx.t)?;
    let (num, den) = main1_factors(cfg, trunc, ctx)?;
    Outcome::series(&zp.mul(&den)?, &zm.mul(&num)?)
}

/// `prod_{J0} e mu` and `prod_{J1} e mu`.
fn framing_products(cfg: &HandsawConfig, ctx: &EvalContext) -> (Scalar, Scalar) {
    let p0 = product(ctx.mode, cfg.j0().map(|a| e(ctx, a) * mu(ctx, a)).collect::<Vec<_>>().iter());
    let p1 = product(ctx.mode, cfg.j1().map(|a| e(ctx, a) * mu(ctx, a)).collect::<Vec<_>>().iter());
    (p0, p1)
}

/// Fundamental chamber relation on Borel-transformed localization sums.
pub fn check_main2(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let hp =
        q_borel(&hs_localization(cfg, Stability::Positive, MatterClass::Fund, trunc, ctx, &ctx.one())?, &ctx.q, -1)?;
    let hm =
        q_borel(&hs_localization(cfg, Stability::Negative, MatterClass::Fund, trunc, ctx, &ctx.one())?, &ctx.q, -1)?;
    let (p0, p1) = framing_products(cfg, ctx);
    let bb = ctx.q_pow(cfg.r0 as i64).div(&p0)?;
    let lhs = hp.mul(&q_poch(-bb, trunc, ctx)?)?;
    let rhs = hm.mul(&q_poch(-p1, trunc, ctx)?)?;
    Outcome::series(&lhs, &rhs)
}

/// Parameters of a multiple basic hypergeometric series.
#[derive(Clone, Debug)]
pub struct PhiParams {
    pub a: Vec<Scalar>,
    pub x: Vec<Scalar>,
    pub b: Vec<Scalar>,
    pub c: Vec<Scalar>,
}

/// `sum_k (z u)^{|k|} Delta(q^k x)/Delta(x) prod (a_a x_b/x_a)_{k_b}/(q x_b/x_a)_{k_b}
/// prod (x_b b_a)_{k_b}/(x_b c_a)_{k_b}` as a series in `u`.
pub fn kajihara_phi(p: &PhiParams, z: &Scalar, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    let m = p.x.len();
    if p.a.len() != m || p.b.len() != p.c.len() {
        return Err(Error::Invalid("parameter lists have inconsistent lengths".into()));
    }
    let q = &ctx.q;
    let mut coeffs = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut acc = ctx.zero();
        for k in compositions(m, n) {
            let shifted: Vec<Scalar> = (0..m).map(|b| &ctx.q_pow(k[b] as i64) * &p.x[b]).collect();
            let mut term = vandermonde(&shifted, ctx.mode).div(&vandermonde(&p.x, ctx.mode))?;
            for a in 0..m {
                for b in 0..m {
                    let r = p.x[b].div(&p.x[a])?;
                    term = term * poch(&(&p.a[a] * &r), ctx, k[b]);
                    term = term.div(&poch(&(q * &r), ctx, k[b]))?;
                }
            }
            for b in 0..m {
                for a in 0..p.b.len() {
                    term = term * poch(&(&p.x[b] * &p.b[a]), ctx, k[b]);
                    term = term.div(&poch(&(&p.x[b] * &p.c[a]), ctx, k[b]))?;
                }
            }
            acc = acc + term;
        }
        coeffs.push(acc * z.pow_u(n as u64));
    }
    Ok(PSeries::from_dense(trunc, ctx.mode, &coeffs))
}

/// Both sides of the Euler-type transformation for given `a, x, b, y, c`:
/// returns `(phi(u) (u)_inf, (abu/c^n)_inf phi'(abu/c^n))` with `u` the series variable
/// scaled by `z`.
pub fn kajihara_sides(
    a: &[Scalar],
    x: &[Scalar],
    b: &[Scalar],
    y: &[Scalar],
    c: &Scalar,
    z: &Scalar,
    trunc: usize,
    ctx: &EvalContext,
) -> Result<(PSeries, PSeries)> {
    let n = b.len();
    let left = PhiParams {
        a: a.to_vec(),
        x: x.to_vec(),
        b: b.iter().zip(y).map(|(bi, yi)| bi * yi).collect(),
        c: y.iter().map(|yi| c * yi).collect(),
    };
    let aa = product(ctx.mode, a.iter());
    let bb = product(ctx.mode, b.iter());
    let zz = (&(&aa * &bb) * z).div(&c.pow_u(n as u64))?;
    let right = PhiParams {
        a: b.iter().map(|bi| c.div(bi)).collect::<Result<_>>()?,
        x: y.to_vec(),
        b: x.iter().zip(a).map(|(xi, ai)| (c * xi).div(ai)).collect::<Result<_>>()?,
        c: x.iter().map(|xi| c * xi).collect(),
    };
    let lhs = kajihara_phi(&left, z, trunc, ctx)?.mul(&q_poch(z.clone(), trunc, ctx)?)?;
    let rhs = kajihara_phi(&right, &zz, trunc, ctx)?.mul(&q_poch(zz.clone(), trunc, ctx)?)?;
    Ok((lhs, rhs))
}

/// Euler-type transformation at `m x n` random parameters drawn from the context.
pub fn check_kajihara(m: usize, n: usize, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let draw = ctx.aux(11, 3 * m + 2 * n + 1);
    let (a, rest) = draw.split_at(m);
    let (x, rest) = rest.split_at(m);
    let (b, rest) = rest.split_at(n);
    let (y, rest) = rest.split_at(n);
    let c = &rest[m];
    let (lhs, rhs) = kajihara_sides(a, x, b, y, c, &ctx.one(), trunc, ctx)?;
    Outcome::series(&lhs, &rhs)
}

/// Dictionary taking the transformation to the handsaw fundamental series:
/// the two multiple series must reproduce the Borel-transformed sums of both chambers.
pub fn check_kajihara_dictionary(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let q = &ctx.q;
    let (p0, p1) = framing_products(cfg, ctx);
    let bprod = p0.div(&ctx.q_pow(cfg.r0 as i64))?;
    let plus = PhiParams {
        a: cfg.j1().map(|a| e(ctx, a) * mu(ctx, a)).collect(),
        x: cfg.j1().map(|a| q * e(ctx, a)).collect(),
        b: cfg.j0().map(|a| mu(ctx, a).div(q)).collect::<Result<_>>()?,
        c: cfg.j0().map(|a| e(ctx, a).inv()).collect::<Result<_>>()?,
    };
    let minus = PhiParams {
        a: cfg.j0().map(|a| q.div(&(e(ctx, a) * mu(ctx, a)))).collect::<Result<_>>()?,
        x: cfg.j0().map(|a| e(ctx, a).inv()).collect::<Result<_>>()?,
        b: cfg.j1().map(|a| q.div(mu(ctx, a))).collect::<Result<_>>()?,
        c: cfg.j1().map(|a| q * e(ctx, a)).collect(),
    };
    let zp = kajihara_phi(&plus, &(-bprod.inv()?), trunc, ctx)?;
    let zm = kajihara_phi(&minus, &(-p1), trunc, ctx)?;
    let hp = hs_z_fund_hat(cfg, Stability::Positive, trunc, ctx)?;
    let hm = hs_z_fund_hat(cfg, Stability::Negative, trunc, ctx)?;
    Ok(Outcome::series(&zp, &hp)?.and(Outcome::series(&zm, &hm)?))
}

/// The series `F_{m,n}(x, y; z p)` with deformation parameter `tau`.
pub fn lsw_f(x: &[Scalar], y: &[Scalar], tau: &Scalar, z: &Scalar, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    let m = x.len();
    let q = &ctx.q;
    let mut coeffs = Vec::with_capacity(trunc + 1);
    for n in 0..=trunc {
        let mut acc = ctx.zero();
        for k in compositions(m, n) {
            let mut term = ctx.one();
            for a in 0..m {
                for b in 0..m {
                    let r = x[a].div(&x[b])?;
                    let base = &ctx.q_pow(-(k[b] as i64)) * &r;
                    term = term * poch(&(q * &base).div(tau)?, ctx, k[a]);
                    term = term.div(&poch(&base, ctx, k[a]))?;
                }
            }
            for b in 0..m {
                for ya in y {
                    let w = &x[b] * ya;
                    term = term * poch(&w, ctx, k[b]);
                    term = term.div(&poch(&(q * &w).div(tau)?, ctx, k[b]))?;
                }
            }
            acc = acc + term;
        }
        coeffs.push(acc * z.pow_u(n as u64));
    }
    Ok(PSeries::from_dense(trunc, ctx.mode, &coeffs))
}

/// Exchange of the two parameter families, `r0 <= r1`: equal ranks give a
/// symmetric series, otherwise a finite product of single infinite products appears.
pub fn check_lsw_noumi(r0: usize, r1: usize, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    noumi_with_offset(r0, r1, 0, trunc, ctx)
}

/// Prefactor `prod_s (q^{s+o} p / tau^{s+o-1})_inf / (q^{s+o} p / tau^{s+o})_inf`; only `o = 0` is correct.
fn noumi_with_offset(r0: usize, r1: usize, offset: i64, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    if r0 > r1 {
        return Err(Error::Invalid("need r0 <= r1".into()));
    }
    let draw = ctx.aux(13, r0 + r1 + 1);
    let (x, rest) = draw.split_at(r1);
    let (y, rest) = rest.split_at(r0);
    let tau = &rest[0];
    let one = ctx.one();
    let d = (r1 - r0) as i64;
    let lhs = lsw_f(x, y, tau, &one, trunc, ctx)?;
    let shift = ctx.q_pow(d).div(&tau.pow(d)?)?;
    let rhs = lsw_f(y, x, tau, &shift, trunc, ctx)?;
    let mut num = PSeries::one(1, trunc, ctx.mode);
    let mut den = PSeries::one(1, trunc, ctx.mode);
    for s in (1..=d).map(|s| s + offset) {
        num = num.mul(&q_poch(ctx.q_pow(s).div(&tau.pow(s - 1)?)?, trunc, ctx)?)?;
        den = den.mul(&q_poch(ctx.q_pow(s).div(&tau.pow(s)?)?, trunc, ctx)?)?;
    }
    Outcome::series(&lhs.mul(&den)?, &rhs.mul(&num)?)
}

/// Explicit adjoint series of both chambers against the rank-balanced symmetric
/// series under `tau = q/t`, `x = e` on `J1`, `y = q/(t e)` on `J0`.
pub fn check_lsw_dictionary(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let tau = ctx.q.div(&ctx.t)?;
    let x: Vec<Scalar> = cfg.j1().map(|a| e(ctx, a).clone()).collect();
    let y: Vec<Scalar> = cfg.j0().map(|a| tau.div(e(ctx, a))).collect::<Result<_>>()?;
    let zp = lsw_f(&x, &y, &tau, &ctx.t_pow(cfg.r0 as i64), trunc, ctx)?;
    let zm = lsw_f(&y, &x, &tau, &ctx.t_pow(cfg.r1 as i64), trunc, ctx)?;
    let ep = hs_z_adj_explicit(cfg, Stability::Positive, trunc, ctx, &ctx.t)?;
    let em = hs_z_adj_explicit(cfg, Stability::Negative, trunc, ctx, &ctx.t)?;
    Ok(Outcome::series(&zp, &ep)?.and(Outcome::series(&zm, &em)?))
}

/// Pochhammer reflection at one point; coincident `x` is an error.
pub fn lemma_elem_check(x: &[Scalar], k: &[u32], ctx: &EvalContext) -> Result<bool> {
    let (l, r) = lemma_elem_sides(x, k, ctx)?;
    Ok(l == r)
}

/// Both sides of the Pochhammer reflection used to pass between the
/// localization and Borel-transformed forms.
pub fn lemma_elem_sides(x: &[Scalar], k: &[u32], ctx: &EvalContext) -> Result<(Scalar, Scalar)> {
    let m = x.len();
    for a in 0..m {
        for b in a + 1..m {
            if x[a] == x[b] {
                return Err(Error::PoleCollision(format!("x[{a}] = x[{b}]")));
            }
        }
    }
    let q = &ctx.q;
    let mut lhs = ctx.one();
    let mut tail = ctx.one();
    for a in 0..m {
        for b in 0..m {
            let r = x[a].div(&x[b])?;
            lhs = lhs.div(&poch(&(&ctx.q_pow(-(k[b] as i64)) * &r), ctx, k[a]))?;
            tail = tail.div(&poch(&(q * &r), ctx, k[a]))?;
        }
    }
    let n: u64 = k.iter().map(|&v| v as u64).sum();
    let sign = if n.is_multiple_of(2) { ctx.one() } else { -ctx.one() };
    let mut rhs = sign * q.pow_u(n * (n + 1) / 2) * tail;
    for a in 0..m {
        for b in a + 1..m {
            let num = &(&ctx.q_pow(k[a] as i64) * &x[a]) - &(&ctx.q_pow(k[b] as i64) * &x[b]);
            rhs = rhs * num.div(&(&x[a] - &x[b]))?;
        }
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{sample_context, with_resample, Mode};

    fn ctx_for(cfg: &HandsawConfig, seed: u64, mode: Mode) -> EvalContext {
        sample_context(1, &[cfg.r()], 6, seed, mode).unwrap()
    }

    fn run<F: Fn(&EvalContext) -> Result<Outcome>>(cfg: &HandsawConfig, seed: u64, trunc: usize, f: F) -> Outcome {
        with_resample(1, &[cfg.r()], trunc, seed, Mode::Prime, f).unwrap()
    }

    fn configs(max: usize) -> Vec<HandsawConfig> {
        (0..=max)
            .flat_map(|r0| (0..=max - r0).map(move |r1| (r0, r1)))
            .filter(|&(a, b)| a + b >= 1)
            .map(|(a, b)| HandsawConfig::new(a, b).unwrap())
            .collect()
    }

    #[test]
    fn fixed_point_examples() {
        let c = HandsawConfig::new(2, 0).unwrap();
        assert_eq!(hs_fixed_points(&c, Stability::Negative, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(hs_fixed_points(&c, Stability::Negative, 0), vec![vec![0, 0]]);
        let c = HandsawConfig::new(0, 1).unwrap();
        assert_eq!(hs_fixed_points(&c, Stability::Positive, 3), vec![vec![3]]);
        assert!(hs_fixed_points(&c, Stability::Negative, 1).is_empty());
        assert!(HandsawConfig::new(0, 0).is_err());
    }

    #[test]
    fn composition_counts() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        for parts in 1..=4 {
            for n in 0..=5 {
                assert_eq!(compositions(parts, n).len(), binom(n + parts - 1, parts - 1));
            }
        }
    }

    #[test]
    fn tangent_closed_form_matches_quiver() {
        for cfg in configs(4) {
            for st in [Stability::Negative, Stability::Positive] {
                for n in 0..=4 {
                    for k in hs_fixed_points(&cfg, st, n) {
                        assert_eq!(
                            hs_tangent_character(&cfg, st, &k),
                            hs_tangent_closed(&cfg, st, &k),
                            "{cfg:?} {st:?} {k:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn tangent_single_box() {
        let cfg = HandsawConfig::new(1, 0).unwrap();
        let b = basis(&cfg);
        let t = hs_tangent_character(&cfg, Stability::Negative, &[1]);
        assert_eq!(t, Character::from_weights([b.q(1)]));
        assert!(hs_tangent_character(&cfg, Stability::Negative, &[0]).is_zero());
    }

    #[test]
    fn chambers_exchange_under_inverted_framing() {
        // with the same k on both sides, T+ is T- with every e inverted
        for (r0, r1) in [(1, 1), (2, 2), (1, 2), (2, 1)] {
            let cfg = HandsawConfig::new(r0, r1).unwrap();
            let swapped = HandsawConfig::new(r1, r0).unwrap();
            for n in 0..=3 {
                for k in hs_fixed_points(&cfg, Stability::Positive, n) {
                    let plus = hs_tangent_character(&cfg, Stability::Positive, &k);
                    let minus = hs_tangent_character(&swapped, Stability::Negative, &k);
                    // relabel: J1 of cfg sits first in swapped, J0 of cfg last
                    let b = basis(&cfg);
                    let mut mapped = Character::new();
                    for (w, m) in minus.terms() {
                        // J1 of cfg sits first in swapped, J0 last; flip every e
                        let mut back = w.to_vec();
                        for a in 0..cfg.r() {
                            let to = if a < r0 { a + r1 } else { a - r0 };
                            back[b.e_index(a)] = -w[b.e_index(to)];
                        }
                        mapped.add(back, m);
                    }
                    assert_eq!(plus, mapped, "{cfg:?} {k:?}");
                }
            }
        }
    }

    #[test]
    fn fund_single_box_weights() {
        let cfg = HandsawConfig::new(0, 1).unwrap();
        let b = basis(&cfg);
        use crate::chainsaw::character::wmul;
        let ch = hs_fund_character(&cfg, Stability::Positive, &[1]);
        // V = e q, V^dual q / mu = q^0 / (e mu)
        assert_eq!(ch, Character::from_weights([wmul(&b.e(0, -1), &b.mu(0, -1))]));
        assert_eq!(hs_tangent_character(&cfg, Stability::Positive, &[1]), Character::from_weights([b.q(1)]));
    }

    #[test]
    fn explicit_matches_localization() {
        for cfg in configs(4) {
            for seed in 0..3 {
                let o = run(&cfg, seed, 4, |c| {
                    let mut out = Outcome::pass();
                    for st in [Stability::Negative, Stability::Positive] {
                        let a = hs_z_adj_explicit(&cfg, st, 4, c, &c.t)?;
                        let b = hs_localization(&cfg, st, MatterClass::Adj, 4, c, &c.t)?;
                        out = out.and(Outcome::series(&a, &b)?);
                    }
                    Ok(out)
                });
                assert!(o.passed(), "{cfg:?}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn borel_form_matches_localization() {
        for cfg in configs(4) {
            for seed in 0..3 {
                let o = run(&cfg, seed, 4, |c| {
                    let mut out = Outcome::pass();
                    for st in [Stability::Negative, Stability::Positive] {
                        let a = hs_z_fund_hat(&cfg, st, 4, c)?;
                        let b = q_borel(&hs_localization(&cfg, st, MatterClass::Fund, 4, c, &c.one())?, &c.q, -1)?;
                        out = out.and(Outcome::series(&a, &b)?);
                    }
                    Ok(out)
                });
                assert!(o.passed(), "{cfg:?}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn half_exponent_normalization_fails() {
        let cfg = HandsawConfig::new(1, 1).unwrap();
        let c = ctx_for(&cfg, 3, Mode::Prime);
        let loc = hs_localization(&cfg, Stability::Positive, MatterClass::Fund, 3, &c, &c.one()).unwrap();
        let coeffs: Vec<Scalar> = (0..=3).map(|n| loc.coeff(&[n as u32]) * c.s_pow(-(n as i64 + 1))).collect();
        let half = PSeries::from_dense(3, c.mode, &coeffs);
        let hat = hs_z_fund_hat(&cfg, Stability::Positive, 3, &c).unwrap();
        assert!(!half.equal(&hat).unwrap());
    }

    #[test]
    fn base_cases() {
        let cfg = HandsawConfig::new(1, 0).unwrap();
        let c = ctx_for(&cfg, 1, Mode::Exact);
        let plus = hs_z_adj_explicit(&cfg, Stability::Positive, 4, &c, &c.t).unwrap();
        assert!(plus.equal(&PSeries::one(1, 4, c.mode)).unwrap());
        let minus = hs_z_adj_explicit(&cfg, Stability::Negative, 4, &c, &c.t).unwrap();
        let want = q_poch(c.q.clone(), 4, &c).unwrap().div(&q_poch(c.t.clone(), 4, &c).unwrap()).unwrap();
        assert!(minus.equal(&want).unwrap());
        let hat_plus = hs_z_fund_hat(&cfg, Stability::Positive, 4, &c).unwrap();
        assert!(hat_plus.equal(&PSeries::one(1, 4, c.mode)).unwrap());
        let em = &c.e[0][0] * &c.mu[0][0];
        let hat_minus = hs_z_fund_hat(&cfg, Stability::Negative, 4, &c).unwrap();
        let want = q_poch(-(c.q.div(&em).unwrap()), 4, &c).unwrap().div(&q_poch(-c.one(), 4, &c).unwrap()).unwrap();
        assert!(hat_minus.equal(&want).unwrap());
    }

    #[test]
    fn main1_holds() {
        for (r0, r1, trunc) in [(1, 0, 4), (0, 1, 4), (1, 1, 4), (2, 2, 4), (2, 1, 5), (1, 2, 4), (3, 1, 3)] {
            let cfg = HandsawConfig::new(r0, r1).unwrap();
            for seed in 0..3 {
                let o = run(&cfg, seed, trunc, |c| check_main1(&cfg, trunc, c));
                assert!(o.passed(), "{cfg:?}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn main1_equal_ranks_have_trivial_factor() {
        let cfg = HandsawConfig::new(2, 2).unwrap();
        let c = ctx_for(&cfg, 2, Mode::Prime);
        let (num, den) = main1_factors(&cfg, 5, &c).unwrap();
        assert!(num.equal(&den).unwrap());
    }

    #[test]
    fn main1_factor_forms_agree() {
        for (r0, r1) in [(0, 1), (1, 2), (0, 3), (1, 3)] {
            let cfg = HandsawConfig::new(r0, r1).unwrap();
            let c = ctx_for(&cfg, 4, Mode::Prime);
            let (n1, d1) = main1_factors(&cfg, 6, &c).unwrap();
            let (n2, d2) = main1_single_product(&cfg, 6, &c).unwrap();
            assert!(n1.mul(&d2).unwrap().equal(&n2.mul(&d1).unwrap()).unwrap(), "{cfg:?}");
        }
    }

    #[test]
    fn main2_holds() {
        for (r0, r1, trunc) in [(1, 0, 4), (0, 1, 4), (1, 1, 5), (2, 1, 4), (1, 2, 4), (2, 2, 3)] {
            let cfg = HandsawConfig::new(r0, r1).unwrap();
            for seed in 0..3 {
                let o = run(&cfg, seed, trunc, |c| check_main2(&cfg, trunc, c));
                assert!(o.passed(), "{cfg:?}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn phi_reduces_to_q_binomial() {
        let c = ctx_for(&HandsawConfig::new(1, 0).unwrap(), 5, Mode::Exact);
        let a = c.aux(1, 2);
        let p = PhiParams { a: vec![a[0].clone()], x: vec![a[1].clone()], b: vec![], c: vec![] };
        let s = kajihara_phi(&p, &c.one(), 4, &c).unwrap();
        let want = q_poch(a[0].clone(), 4, &c).unwrap().div(&q_poch(c.one(), 4, &c).unwrap()).unwrap();
        assert!(s.equal(&want).unwrap());
    }

    #[test]
    fn phi_first_coefficient() {
        let c = ctx_for(&HandsawConfig::new(1, 0).unwrap(), 6, Mode::Exact);
        let v = c.aux(2, 4);
        let p =
            PhiParams { a: vec![v[0].clone()], x: vec![v[1].clone()], b: vec![v[2].clone()], c: vec![v[3].clone()] };
        let s = kajihara_phi(&p, &c.one(), 1, &c).unwrap();
        let one = c.one();
        let want =
            ((&one - &v[0]) * (&one - &(&v[1] * &v[2]))).div(&((&one - &c.q) * (&one - &(&v[1] * &v[3])))).unwrap();
        assert_eq!(s.coeff(&[1]), want);
    }

    #[test]
    fn kajihara_transformation() {
        for (m, n, trunc) in [(1, 1, 4), (1, 0, 4), (2, 1, 4), (1, 2, 4), (2, 2, 3)] {
            for seed in 0..3 {
                let o = with_resample(1, &[1], trunc, seed, Mode::Prime, |c| check_kajihara(m, n, trunc, c)).unwrap();
                assert!(o.passed(), "m={m} n={n}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn kajihara_dictionary() {
        for (r0, r1) in [(1, 1), (2, 1), (1, 2), (0, 2), (2, 0)] {
            let cfg = HandsawConfig::new(r0, r1).unwrap();
            let o = run(&cfg, 7, 4, |c| check_kajihara_dictionary(&cfg, 4, c));
            assert!(o.passed(), "{cfg:?}: {:?}", o.mismatch);
        }
    }

    #[test]
    fn lsw_noumi() {
        for (r0, r1, trunc) in [(0, 1, 4), (1, 1, 4), (1, 2, 4), (2, 2, 3), (0, 2, 4), (1, 3, 3)] {
            for seed in 0..3 {
                let o =
                    with_resample(1, &[1], trunc, seed, Mode::Prime, |c| check_lsw_noumi(r0, r1, trunc, c)).unwrap();
                assert!(o.passed(), "r0={r0} r1={r1}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn noumi_prefactor_is_unshifted() {
        for (r0, r1) in [(1, 2), (1, 3)] {
            let o = with_resample(1, &[1], 3, 2, Mode::Prime, |c| noumi_with_offset(r0, r1, r0 as i64, 3, c)).unwrap();
            assert!(!o.passed(), "r0={r0} r1={r1}");
        }
    }

    #[test]
    fn noumi_rank_one_is_q_binomial() {
        let c = sample_context(1, &[1], 6, 3, Mode::Exact).unwrap();
        let x = c.aux(13, 2);
        let tau = &x[1];
        let f = lsw_f(&x[..1], &[], tau, &c.one(), 4, &c).unwrap();
        let want = q_poch(c.q.clone(), 4, &c).unwrap().div(&q_poch(c.q.div(tau).unwrap(), 4, &c).unwrap()).unwrap();
        assert!(f.equal(&want).unwrap());
    }

    #[test]
    fn lsw_dictionary() {
        for (r0, r1) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let cfg = HandsawConfig::new(r0, r1).unwrap();
            let o = run(&cfg, 8, 4, |c| check_lsw_dictionary(&cfg, 4, c));
            assert!(o.passed(), "{cfg:?}: {:?}", o.mismatch);
        }
    }

    #[test]
    fn lemma_elem() {
        for seed in 0..5 {
            let c = sample_context(1, &[2], 4, seed, Mode::Exact).unwrap();
            let x = c.aux(3, 3);
            for k in [vec![0u32, 0, 0], vec![1, 0, 0], vec![2, 3, 1], vec![3, 3, 0]] {
                assert!(lemma_elem_check(&x, &k, &c).unwrap(), "{k:?}");
            }
        }
        let c = sample_context(1, &[1], 4, 0, Mode::Exact).unwrap();
        let x = vec![c.q.clone(), c.q.clone()];
        assert!(lemma_elem_sides(&x, &[1, 1], &c).is_err());
    }
}
