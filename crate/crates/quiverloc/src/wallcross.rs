//! Wall-crossing coefficients for the handsaw quiver and the recursions they satisfy.

use crate::chainsaw::MatterClass;
use crate::combinatorics::{enumerate_dec, s_stat, t_factorial, DecChain, Stability};
use crate::error::{Error, Result};
use crate::handsaw::{hs_localization, hs_z_fund_hat, HandsawConfig};
use crate::outcome::Outcome;
use crate::scalars::{EvalContext, Scalar};
use crate::series::finite_poch;

/// `t^d (q/t; q)_d / (q; q)_d`
pub fn gamma_d(d: usize, ctx: &EvalContext) -> Result<Scalar> {
    let q = &ctx.q;
    let qt = q.div(&ctx.t)?;
    (ctx.t.pow_u(d as u64) * finite_poch(&qt, q, d)).div(&finite_poch(q, q, d))
}

/// Coefficient attached to a chain of blocks.
pub fn a_coeff(chain: &DecChain, r0: usize, r1: usize, ctx: &EvalContext) -> Result<Scalar> {
    let t = &ctx.t;
    let one = ctx.one();
    let shift = r1 as i64 - r0 as i64;
    let mut acc = ctx.one();
    for (i, block) in chain.blocks.iter().enumerate() {
        let d = block.len();
        let later = chain.later(i);
        let out = s_stat(block, &later)? as i64 + shift * d as i64;
        let inn = s_stat(&later, block)? as i64;
        let f = (t.pow_u(d as u64) * t_factorial(d - 1, t)).div(&(t - &one))?;
        acc = acc * f * gamma_d(d, ctx)?.div(&t.pow_u(d as u64))? * (&t.pow(out)? - &t.pow(inn)?);
    }
    Ok(acc)
}

/// `[n - |d|]_t! / [n]_t! * a` for one chain.
pub fn chain_weight(chain: &DecChain, r0: usize, r1: usize, ctx: &EvalContext) -> Result<Scalar> {
    let t = &ctx.t;
    let rest = chain.n - chain.total();
    (t_factorial(rest, t) * a_coeff(chain, r0, r1, ctx)?).div(&t_factorial(chain.n, t))
}

/// Sign carried by chains with `j` blocks in the adjoint recursion is `CHAIN_SIGN^j`.
pub const CHAIN_SIGN: i64 = 1;

fn signed(j: usize, base: i64) -> i64 {
    if base < 0 && j % 2 == 1 {
        -1
    } else {
        1
    }
}

/// `sum_j base^j sum_{chains with |d| = k} weight` over chains of `{1..n}`.
pub fn chain_sum(n: usize, k: usize, r0: usize, r1: usize, base: i64, ctx: &EvalContext) -> Result<Scalar> {
    let mut acc = ctx.zero();
    for j in 1..=k.min(n) {
        for ch in enumerate_dec(n, j) {
            if ch.total() == k {
                acc = acc + chain_weight(&ch, r0, r1, ctx)? * ctx.int(signed(j, base));
            }
        }
    }
    Ok(acc)
}

/// `H^+_n`, `H^-_n` for `n <= trunc`: coefficients of `(t^{r0} p)^n` in the
/// adjoint series of either chamber.
pub fn adj_coefficients(cfg: &HandsawConfig, trunc: usize, ctx: &EvalContext) -> Result<(Vec<Scalar>, Vec<Scalar>)> {
    let norm = ctx.t_pow(-(cfg.r0 as i64));
    let get = |st| -> Result<Vec<Scalar>> {
        let s = hs_localization(cfg, st, MatterClass::Adj, trunc, ctx, &ctx.t)?;
        Ok((0..=trunc).map(|n| s.coeff(&[n as u32]) * norm.pow_u(n as u64)).collect())
    };
    Ok((get(Stability::Positive)?, get(Stability::Negative)?))
}

fn recursion_with(
    cfg: &HandsawConfig,
    n: usize,
    base: i64,
    h: &(Vec<Scalar>, Vec<Scalar>),
    ctx: &EvalContext,
) -> Result<Outcome> {
    let (hp, hm) = h;
    let mut out = Outcome::pass();
    for m in 1..=n {
        let lhs = &hp[m] - &hm[m];
        let mut rhs = ctx.zero();
        for k in 1..=m {
            rhs = rhs + chain_sum(m, k, cfg.r0, cfg.r1, base, ctx)? * &hm[m - k];
        }
        out = out.and(Outcome::scalar(vec![m as u32], lhs, rhs));
    }
    Ok(out)
}

/// Adjoint wall-crossing recursion for all `m <= n`; for equal ranks also
/// requires each fixed-size chain sum to vanish.
pub fn verify_adj_recursion(n: usize, cfg: &HandsawConfig, ctx: &EvalContext) -> Result<Outcome> {
    if n > 6 {
        return Err(Error::Invalid("recursion check supports n <= 6".into()));
    }
    let h = adj_coefficients(cfg, n, ctx)?;
    let mut out = recursion_with(cfg, n, CHAIN_SIGN, &h, ctx)?;
    if cfg.r0 == cfg.r1 {
        out = out.and(verify_vanish(n, cfg.r0, ctx)?);
    }
    Ok(out)
}

/// Every chain sum with fixed `|d|` vanishes for equal ranks.
pub fn verify_vanish(n: usize, r: usize, ctx: &EvalContext) -> Result<Outcome> {
    let mut out = Outcome::pass();
    for m in 1..=n {
        for k in 1..=m {
            let v = chain_sum(m, k, r, r, -1, ctx)?;
            out = out.and(Outcome::scalar(vec![m as u32, k as u32], v, ctx.zero()));
        }
    }
    Ok(out)
}

/// Strictly increasing sequences `0 < c_1 < ... < c_j = l`.
pub fn composition_chains(l: usize) -> Vec<Vec<usize>> {
    if l == 0 {
        return vec![];
    }
    (0..1u64 << (l - 1))
        .map(|mask| {
            let mut v: Vec<usize> = (1..l).filter(|&c| mask >> (c - 1) & 1 == 1).collect();
            v.push(l);
            v
        })
        .collect()
}

/// `sum_chains prod_i (1/c_i) (1 - x^{c_i - c_{i-1}}) / (1 - q^{c_i - c_{i-1}})`
pub fn chain_sum_series(l: usize, x: &Scalar, ctx: &EvalContext) -> Result<Scalar> {
    let one = ctx.one();
    let mut acc = ctx.zero();
    for ch in composition_chains(l) {
        let mut term = ctx.one();
        let mut prev = 0;
        for &c in &ch {
            let d = (c - prev) as u64;
            term = term * (&one - &x.pow_u(d)).div(&(ctx.int(c as i64) * (&one - &ctx.q.pow_u(d))))?;
            prev = c;
        }
        acc = acc + term;
    }
    Ok(acc)
}

/// Chain sum against `(x; q)_l / (q; q)_l`.
pub fn chain_sum_closed_form(l: usize, x: &Scalar, ctx: &EvalContext) -> Result<bool> {
    let want = finite_poch(x, &ctx.q, l).div(&finite_poch(&ctx.q, &ctx.q, l))?;
    Ok(chain_sum_series(l, x, ctx)? == want)
}

/// Fundamental wall-crossing recursion on Borel-transformed coefficients, `m <= n`.
pub fn verify_check2(n: usize, cfg: &HandsawConfig, ctx: &EvalContext) -> Result<Outcome> {
    if n > 5 {
        return Err(Error::Invalid("check supports n <= 5".into()));
    }
    let prod = |r: std::ops::Range<usize>| r.fold(ctx.one(), |acc, a| acc * &ctx.e[0][a] * &ctx.mu[0][a]);
    let b = ctx.q_pow(cfg.r0 as i64).div(&prod(cfg.j0()))?;
    let a = prod(cfg.j1());
    let ratio = a.div(&b)?;
    let hp = hs_z_fund_hat(cfg, Stability::Positive, n, ctx)?;
    let hm = hs_z_fund_hat(cfg, Stability::Negative, n, ctx)?;
    let minus_b = -b;
    let mut out = Outcome::pass();
    for m in 1..=n {
        let lhs = &hp.coeff(&[m as u32]) - &hm.coeff(&[m as u32]);
        let mut rhs = ctx.zero();
        for l in 1..=m {
            rhs = rhs + hm.coeff(&[(m - l) as u32]) * minus_b.pow_u(l as u64) * chain_sum_series(l, &ratio, ctx)?;
        }
        out = out.and(Outcome::scalar(vec![m as u32], lhs, rhs));
    }
    Ok(out)
}
