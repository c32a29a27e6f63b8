//! The colored Nekrasov factor, in row-product and box-product form.
//!
//! Both take a specialized argument `u` and the `q`, `kappa` values of a
//! context. Congruences on the color `k` are taken modulo `n`.

use crate::combinatorics::Partition;
use crate::scalars::{EvalContext, Scalar};
use crate::series::finite_poch;

fn congruent(a: i64, k: i64, n: usize) -> bool {
    (a - k).rem_euclid(n as i64) == 0
}

fn monomial(ctx: &EvalContext, u: &Scalar, qe: i64, ke: i64) -> Scalar {
    u * &(ctx.q_pow(qe) * ctx.kappa_pow(ke))
}

/// Row form: a product of finite Pochhammer symbols over pairs of rows.
pub fn nek_row(lambda: &Partition, mu: &Partition, k: i64, n: usize, u: &Scalar, ctx: &EvalContext) -> Scalar {
    let rows = lambda.len().max(mu.len());
    let mut acc = ctx.one();
    for lp in 1..=rows {
        let dl = lambda.row(lp) as i64 - lambda.row(lp + 1) as i64;
        let dm = mu.row(lp) as i64 - mu.row(lp + 1) as i64;
        for l in 1..=lp {
            let (li, lpi) = (l as i64, lp as i64);
            if dl > 0 && congruent(lpi - li, k, n) {
                let x = monomial(ctx, u, -(mu.row(l) as i64) + lambda.row(lp + 1) as i64, lpi - li);
                acc = acc * finite_poch(&x, &ctx.q, dl as usize);
            }
            if dm > 0 && congruent(li - lpi - 1, k, n) {
                let x = monomial(ctx, u, lambda.row(l) as i64 - mu.row(lp) as i64, li - lpi - 1);
                acc = acc * finite_poch(&x, &ctx.q, dm as usize);
            }
        }
    }
    acc
}

/// Box form: one linear factor per box of each diagram, using arms measured
/// in the other diagram.
pub fn nek_box(lambda: &Partition, mu: &Partition, k: i64, n: usize, u: &Scalar, ctx: &EvalContext) -> Scalar {
    let one = ctx.one();
    let mut acc = one.clone();
    for (l, m) in lambda.boxes() {
        let arm = mu.row(l) as i64 - m as i64;
        let leg = lambda.col(m) as i64 - l as i64;
        if congruent(leg, k, n) {
            acc = acc * (&one - &monomial(ctx, u, -arm - 1, leg));
        }
    }
    for (l, m) in mu.boxes() {
        let arm = lambda.row(l) as i64 - m as i64;
        let leg = mu.col(m) as i64 - l as i64;
        if congruent(-leg - 1, k, n) {
            acc = acc * (&one - &monomial(ctx, u, arm, -leg - 1));
        }
    }
    acc
}
