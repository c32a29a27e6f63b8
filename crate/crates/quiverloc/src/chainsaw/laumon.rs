//! Finite-rank specialization: the adjoint series with the last variable set to
//! zero, matched against a sum over tuples of strictly upper triangular matrices.

use super::fixed::{z_series, MatterClass};
use crate::combinatorics::Stability;
use crate::error::Result;
use crate::outcome::Outcome;
use crate::scalars::{EvalContext, Scalar};
use crate::series::{finite_poch, PSeries};

/// `d` strictly upper triangular `N x N` matrices, indexed `[alpha][i][k]`.
pub type Theta = Vec<Vec<Vec<u32>>>;

/// All `theta` with `sum (k - i) theta_ik <= trunc`.
pub fn enumerate_theta(n: usize, d: usize, trunc: usize) -> Vec<Theta> {
    let cells: Vec<(usize, usize, usize)> =
        (0..d).flat_map(|al| (0..n).flat_map(move |i| (i + 1..n).map(move |k| (al, i, k)))).collect();
    let mut out = Vec::new();
    let mut cur = vec![vec![vec![0u32; n]; n]; d];
    fn rec(cells: &[(usize, usize, usize)], budget: usize, cur: &mut Theta, out: &mut Vec<Theta>) {
        let Some(&(al, i, k)) = cells.first() else {
            out.push(cur.clone());
            return;
        };
        let w = k - i;
        for m in 0..=budget / w {
            cur[al][i][k] = m as u32;
            rec(&cells[1..], budget - m * w, cur, out);
        }
        cur[al][i][k] = 0;
    }
    rec(&cells, trunc, &mut cur, &mut out);
    out
}

fn tail(th: &[Vec<u32>], i: usize, k: usize) -> i64 {
    th[i][k + 1..].iter().map(|&x| x as i64).sum()
}

/// Which denominator the first family of factors in [`c_n`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientForm {
    /// `(q^m s_j/s_i; q)`.
    Unshifted,
    /// `(q^(m+1) s_j/s_i; q)`, the form that agrees with the fixed-point sum.
    Shifted,
}

/// Coefficient of a matrix tuple; `s` is indexed `[vertex][alpha]`, `tt` is the
/// deformation parameter in the second slot.
pub fn c_n(
    theta: &Theta,
    s: &[Vec<Scalar>],
    q: &Scalar,
    tt: &Scalar,
    ctx: &EvalContext,
    form: CoefficientForm,
) -> Result<Scalar> {
    let fix = match form {
        CoefficientForm::Unshifted => 0,
        CoefficientForm::Shifted => 1,
    };
    let n = s.len();
    let d = theta.len();
    let mut acc = ctx.one();
    for al in 0..d {
        for be in 0..d {
            let (ta, tb) = (&theta[al], &theta[be]);
            for i in 0..n {
                for j in i..n {
                    let ratio = s[j][be].div(&s[i][al])?;
                    for k in j..n {
                        let len = ta[i][k] as usize;
                        if len == 0 {
                            continue;
                        }
                        let shift = tail(ta, i, k) - tail(tb, j, k);
                        if i < j {
                            let x = &q.pow(shift)? * &ratio;
                            acc = acc * finite_poch(&(tt * &x), q, len);
                            acc = acc.div(&finite_poch(&(&x * &q.pow(fix)?), q, len))?;
                        }
                        if j < k {
                            let x = &q.pow(shift - tb[j][k] as i64)? * &ratio;
                            acc = acc * finite_poch(&(q * &x).div(tt)?, q, len);
                            acc = acc.div(&finite_poch(&x, q, len))?;
                        }
                    }
                }
            }
        }
    }
    Ok(acc)
}

/// The matrix sum as a series in `y_m = x_{m+1}/x_m`, the last variable unused.
pub fn gl_series(
    d: usize,
    trunc: usize,
    s: &[Vec<Scalar>],
    tt: &Scalar,
    ctx: &EvalContext,
    form: CoefficientForm,
) -> Result<PSeries> {
    let n = s.len();
    let mut out = PSeries::zero(n, trunc, ctx.mode);
    for th in enumerate_theta(n, d, trunc) {
        let mut v = vec![0u32; n];
        for m in th.iter() {
            for i in 0..n {
                for k in i + 1..n {
                    for y in v.iter_mut().take(k).skip(i) {
                        *y += m[i][k];
                    }
                }
            }
        }
        let c = c_n(&th, s, &ctx.q, tt, ctx, form)?;
        out = out.add(&PSeries::monomial(n, trunc, v, c))?;
    }
    Ok(out)
}

/// Stable adjoint series at `e_(i,alpha) = kappa^(1-i) s_(i,alpha)`, with
/// `p_m = y_m / t^d` and `p_N = 0`. Requires equal framing `d`.
pub fn laumon_series(trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    let n = ctx.n;
    let e: Vec<Vec<Scalar>> =
        (0..n).map(|i| ctx.e[i].iter().map(|x| x * &ctx.kappa_pow(-(i as i64))).collect()).collect();
    let shifted = EvalContext::from_parts(
        ctx.mode,
        ctx.seed,
        ctx.s.clone(),
        ctx.t.clone(),
        ctx.kappa.clone(),
        e,
        ctx.mu.clone(),
        ctx.nu.clone(),
    )?;
    let z = z_series(&ctx.r, Stability::Negative, MatterClass::Adj, trunc, &shifted, &ctx.t)?;
    let inv_t = ctx.t_pow(-(ctx.r[0] as i64));
    let scale: Vec<Scalar> = (0..n).map(|m| if m + 1 == n { ctx.zero() } else { inv_t.clone() }).collect();
    Ok(z.scale_vars(&scale))
}

/// Laumon specialization against the matrix sum at `(q, q/t)`.
pub fn check_gl_limit(trunc: usize, ctx: &EvalContext, form: CoefficientForm) -> Result<Outcome> {
    if ctx.r.windows(2).any(|w| w[0] != w[1]) {
        return Err(crate::error::Error::Invalid("framing entries must all be equal".into()));
    }
    let d = ctx.r[0];
    let lhs = laumon_series(trunc, ctx)?;
    let rhs = gl_series(d, trunc, &ctx.e, &ctx.q.div(&ctx.t)?, ctx, form)?;
    Outcome::series(&lhs, &rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{with_resample, Mode};

    #[test]
    fn theta_counts() {
        assert_eq!(enumerate_theta(2, 1, 3).len(), 4);
        let brute = (0..=2)
            .flat_map(|a| (0..=2).flat_map(move |b| (0..=1).map(move |c| (a, b, c))))
            .filter(|&(a, b, c)| a + b + 2 * c <= 2)
            .count();
        assert_eq!(enumerate_theta(3, 1, 2).len(), brute);
        assert_eq!(enumerate_theta(2, 2, 2).len(), 6);
    }

    #[test]
    fn zero_matrix_coefficient_is_one() {
        let ctx = crate::scalars::sample_context(3, &[1, 1, 1], 3, 1, Mode::Exact).unwrap();
        let th = vec![vec![vec![0; 3]; 3]];
        let tt = ctx.q.div(&ctx.t).unwrap();
        assert!(c_n(&th, &ctx.e, &ctx.q, &tt, &ctx, CoefficientForm::Unshifted).unwrap().is_one());
    }

    #[test]
    fn matches_fixed_point_sum() {
        for (n, d, trunc) in [(2usize, 1usize, 4usize), (3, 1, 3), (2, 2, 3)] {
            for seed in 0..2 {
                let o = with_resample(n, &vec![d; n], trunc, seed, Mode::Prime, |c| {
                    check_gl_limit(trunc, c, CoefficientForm::Shifted)
                })
                .unwrap();
                assert!(o.passed(), "N={n} d={d}: {:?}", o.mismatch);
            }
        }
    }

    #[test]
    fn unshifted_form_differs_at_first_order() {
        let o =
            with_resample(2, &[1, 1], 2, 0, Mode::Prime, |c| check_gl_limit(2, c, CoefficientForm::Unshifted)).unwrap();
        assert_eq!(o.mismatch.map(|m| m.index), Some(vec![1, 0]));
    }
}
