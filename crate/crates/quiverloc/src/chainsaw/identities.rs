//! Product formulas for chainsaw generating series and the checks comparing
//! them with localization sums.

use super::character::Evaluator;
use super::fixed::{z_series, Framing, MatterClass};
use crate::combinatorics::{dimension_vector, enumerate_fixed_points, Stability};
use crate::error::{Error, Result};
use crate::outcome::Outcome;
use crate::scalars::{product, uni_limit_at_infinity, EvalContext, Limit, Scalar, UniRational};
use crate::series::{finite_poch, inf_poch, q_laplacian_shift, theta_shift, PSeries};

/// `c * prod_{a in positions} p_a`
pub fn mono(n: usize, trunc: usize, positions: &[usize], c: Scalar) -> PSeries {
    let mut v = vec![0u32; n];
    for &a in positions {
        v[a % n] += 1;
    }
    PSeries::monomial(n, trunc, v, c)
}

/// `p_1 ... p_N` scaled by `c`.
pub fn full_cycle(n: usize, trunc: usize, c: Scalar) -> PSeries {
    mono(n, trunc, &(0..n).collect::<Vec<_>>(), c)
}

fn cst(n: usize, trunc: usize, c: Scalar) -> PSeries {
    PSeries::constant(n, trunc, c)
}

/// Consecutive positions `a, a+1, .., a+k-1` (forward) or `a-1, .., a-k` (backward), mod `n`.
fn run(n: usize, a: usize, k: usize, forward: bool) -> Vec<usize> {
    (0..k).map(|j| if forward { (a + j) % n } else { (a + n * k - 1 - j) % n }).collect()
}

/// Product of infinite products over a list of bases, all sharing `params`.
fn poch_product(bases: &[PSeries], params: &[PSeries], n: usize, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    let mut acc = PSeries::one(n, trunc, ctx.mode);
    for b in bases {
        acc = acc.mul(&inf_poch(b, params)?)?;
    }
    Ok(acc)
}

/// A ratio of infinite products kept as numerator and denominator.
#[derive(Clone, Debug)]
pub struct ProductRatio {
    pub num: PSeries,
    pub den: PSeries,
}

impl ProductRatio {
    pub fn one(n: usize, trunc: usize, ctx: &EvalContext) -> ProductRatio {
        ProductRatio { num: PSeries::one(n, trunc, ctx.mode), den: PSeries::one(n, trunc, ctx.mode) }
    }

    pub fn times(&self, o: &ProductRatio) -> Result<ProductRatio> {
        Ok(ProductRatio { num: self.num.mul(&o.num)?, den: self.den.mul(&o.den)? })
    }

    pub fn value(&self) -> Result<PSeries> {
        self.num.div(&self.den)
    }

    /// Whether `lhs = num/den * rhs`, checked as `lhs * den = rhs * num`.
    pub fn check(&self, lhs: &PSeries, rhs: &PSeries) -> Result<Outcome> {
        Outcome::series(&lhs.mul(&self.den)?, &rhs.mul(&self.num)?)
    }
}

/// The framing-independent factor shared by single-slot chainsaw series:
/// `(qtP)(kappa^N tP) / ((t^2 P)(q kappa^N P))` over `(q, kappa^N, tP)`.
pub fn cyclic_factor(n: usize, trunc: usize, ctx: &EvalContext) -> Result<ProductRatio> {
    let kn = ctx.kappa_pow(n as i64);
    let tp = full_cycle(n, trunc, ctx.t.clone());
    let params = [cst(n, trunc, ctx.q.clone()), cst(n, trunc, kn.clone()), tp];
    let num = [full_cycle(n, trunc, &ctx.q * &ctx.t), full_cycle(n, trunc, &kn * &ctx.t)];
    let den = [full_cycle(n, trunc, &ctx.t * &ctx.t), full_cycle(n, trunc, &ctx.q * &kn)];
    Ok(ProductRatio {
        num: poch_product(&num, &params, n, trunc, ctx)?,
        den: poch_product(&den, &params, n, trunc, ctx)?,
    })
}

/// Predicted series for a single framing slot at position `a`.
pub fn single_slot_formula(n: usize, a: usize, st: Stability, trunc: usize, ctx: &EvalContext) -> Result<ProductRatio> {
    let params = [cst(n, trunc, ctx.q.clone()), full_cycle(n, trunc, ctx.t.clone())];
    let mut num = Vec::new();
    let mut den = Vec::new();
    for k in 1..n {
        let pos = match st {
            Stability::Positive => run(n, a, k, true),
            Stability::Negative => run(n, a, k, false),
        };
        num.push(mono(n, trunc, &pos, ctx.q.clone()));
        den.push(mono(n, trunc, &pos, ctx.t.clone()));
    }
    let edge = ProductRatio {
        num: poch_product(&num, &params, n, trunc, ctx)?,
        den: poch_product(&den, &params, n, trunc, ctx)?,
    };
    edge.times(&cyclic_factor(n, trunc, ctx)?)
}

/// Adjoint series in the pairing used by the product formulas: the first is
/// summed over co-stable fixed points, the second over stable ones.
pub fn adj_pair(r: &[usize], trunc: usize, ctx: &EvalContext) -> Result<(PSeries, PSeries)> {
    let z = z_series(r, Stability::Positive, MatterClass::Adj, trunc, ctx, &ctx.t)?;
    let zd = z_series(r, Stability::Negative, MatterClass::Adj, trunc, ctx, &ctx.t)?;
    Ok((z, zd))
}

/// Both chambers against the single-slot product formula, framing `e_a`.
pub fn check_single_slot(n: usize, a: usize, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let mut r = vec![0; n];
    r[a] = 1;
    let (z, zd) = adj_pair(&r, trunc, ctx)?;
    let one = PSeries::one(n, trunc, ctx.mode);
    let fd = single_slot_formula(n, a, Stability::Positive, trunc, ctx)?;
    let fz = single_slot_formula(n, a, Stability::Negative, trunc, ctx)?;
    Ok(fd.check(&zd, &one)?.and(fz.check(&z, &one)?))
}

/// Both chambers agree when all framings are equal.
pub fn check_equal_framing(r: &[usize], trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    if r.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Invalid("framing entries must all be equal".into()));
    }
    let (z, zd) = adj_pair(r, trunc, ctx)?;
    Outcome::series(&zd, &z)
}

/// Rank-one series at `N = 1` against the closed product form.
pub fn check_rank_one_closed_form(trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let (z, zd) = adj_pair(&[1], trunc, ctx)?;
    let f = cyclic_factor(1, trunc, ctx)?;
    let one = PSeries::one(1, trunc, ctx.mode);
    Ok(f.check(&z, &one)?.and(f.check(&zd, &one)?).and(Outcome::series(&z, &zd)?))
}

/// Modulus used in the second family of factors of the chamber ratio.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Modulus {
    /// `t^{|r|} p_1..p_N` in every factor.
    Total,
    /// `t^l p_1..p_N` in the second family, `l` the vertex label.
    Label,
}

/// Predicted ratio of dual to ordinary adjoint series.
pub fn phi_ratio(r: &[usize], trunc: usize, ctx: &EvalContext, modulus: Modulus) -> Result<ProductRatio> {
    let n = r.len();
    let total: usize = r.iter().sum();
    let q = cst(n, trunc, ctx.q.clone());
    let tt = cst(n, trunc, ctx.t.clone());
    let params_total = [q.clone(), full_cycle(n, trunc, ctx.t_pow(total as i64)), tt.clone()];
    let mut num = PSeries::one(n, trunc, ctx.mode);
    let mut den = PSeries::one(n, trunc, ctx.mode);
    for k in 1..n {
        for a in 0..n {
            let pos = run(n, a, k, true);
            let fwd: i64 = (1..=k).map(|j| r[(a + j) % n] as i64).sum();
            let here: i64 = (0..k).map(|j| r[(a + j) % n] as i64).sum();
            let params2 = match modulus {
                Modulus::Total => params_total.clone(),
                Modulus::Label => [q.clone(), full_cycle(n, trunc, ctx.t_pow(a as i64 + 1)), tt.clone()],
            };
            num = num.mul(&inf_poch(&mono(n, trunc, &pos, &ctx.q * &ctx.t_pow(fwd)), &params_total)?)?;
            den = den.mul(&inf_poch(&mono(n, trunc, &pos, ctx.t_pow(fwd + 1)), &params_total)?)?;
            num = num.mul(&inf_poch(&mono(n, trunc, &pos, ctx.t_pow(here + 1)), &params2)?)?;
            den = den.mul(&inf_poch(&mono(n, trunc, &pos, &ctx.q * &ctx.t_pow(here)), &params2)?)?;
        }
    }
    Ok(ProductRatio { num, den })
}

/// One factor `F_l(t^k p_{a..})` of a tabulated chamber ratio.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FArg {
    pub t_power: i64,
    pub positions: Vec<usize>,
}

/// Tabulated ratio `prod F_l(num) / prod F_l(den)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FTable {
    pub r: Vec<usize>,
    pub level: usize,
    pub num: Vec<FArg>,
    pub den: Vec<FArg>,
}

fn fa(t_power: i64, positions: &[usize]) -> FArg {
    FArg { t_power, positions: positions.to_vec() }
}

/// The worked examples of the chamber ratio.
pub fn f_tables() -> Vec<FTable> {
    vec![
        FTable { r: vec![2, 1], level: 3, num: vec![fa(1, &[0])], den: vec![fa(1, &[1])] },
        FTable {
            r: vec![2, 2, 1],
            level: 5,
            num: vec![fa(1, &[1]), fa(3, &[0, 1])],
            den: vec![fa(1, &[2]), fa(3, &[0, 2])],
        },
        FTable {
            r: vec![2, 1, 1],
            level: 4,
            num: vec![fa(1, &[0]), fa(2, &[0, 1])],
            den: vec![fa(1, &[2]), fa(2, &[1, 2])],
        },
        FTable {
            r: vec![3, 1, 1],
            level: 5,
            num: vec![fa(1, &[0]), fa(2, &[0]), fa(2, &[0, 1]), fa(3, &[0, 1])],
            den: vec![fa(1, &[2]), fa(2, &[2]), fa(2, &[1, 2]), fa(3, &[1, 2])],
        },
        FTable {
            r: vec![3, 2, 1],
            level: 6,
            num: vec![fa(1, &[1]), fa(2, &[0]), fa(3, &[0, 1]), fa(4, &[0, 1])],
            den: vec![fa(1, &[2]), fa(2, &[2]), fa(4, &[0, 2]), fa(3, &[1, 2])],
        },
        FTable {
            r: vec![2, 1, 1, 1],
            level: 5,
            num: vec![fa(1, &[0]), fa(2, &[0, 1]), fa(3, &[0, 1, 2])],
            den: vec![fa(1, &[3]), fa(2, &[2, 3]), fa(3, &[1, 2, 3])],
        },
    ]
}

/// `F_l(x) = (q x; q, t^l P) / (t x; q, t^l P)`, with `x = t^k prod p`.
fn f_factor(n: usize, level: usize, arg: &FArg, trunc: usize, ctx: &EvalContext) -> Result<ProductRatio> {
    let params = [cst(n, trunc, ctx.q.clone()), full_cycle(n, trunc, ctx.t_pow(level as i64))];
    let x = ctx.t_pow(arg.t_power);
    Ok(ProductRatio {
        num: inf_poch(&mono(n, trunc, &arg.positions, &ctx.q * &x), &params)?,
        den: inf_poch(&mono(n, trunc, &arg.positions, &ctx.t * &x), &params)?,
    })
}

pub fn f_table_ratio(tab: &FTable, trunc: usize, ctx: &EvalContext) -> Result<ProductRatio> {
    let n = tab.r.len();
    let mut acc = ProductRatio::one(n, trunc, ctx);
    for a in &tab.num {
        acc = acc.times(&f_factor(n, tab.level, a, trunc, ctx)?)?;
    }
    for a in &tab.den {
        let f = f_factor(n, tab.level, a, trunc, ctx)?;
        acc = acc.times(&ProductRatio { num: f.den, den: f.num })?;
    }
    Ok(acc)
}

/// Dual over ordinary adjoint series against the product ratio.
pub fn check_chamber_ratio(r: &[usize], trunc: usize, ctx: &EvalContext, modulus: Modulus) -> Result<Outcome> {
    let (z, zd) = adj_pair(r, trunc, ctx)?;
    phi_ratio(r, trunc, ctx, modulus)?.check(&zd, &z)
}

pub fn check_f_table(tab: &FTable, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let (z, zd) = adj_pair(&tab.r, trunc, ctx)?;
    f_table_ratio(tab, trunc, ctx)?.check(&zd, &z)
}

// ---------------------------------------------------------------------------
// Fundamental matter

fn vertex_product(v: &[Vec<Scalar>], a: usize, ctx: &EvalContext) -> Scalar {
    product(ctx.mode, &v[a])
}

/// One side of the fundamental-matter relation: the `kappa^N` prefactor times
/// the sum over `l` of the shifted series.
fn fund_side(
    z: &PSeries,
    trunc: usize,
    ctx: &EvalContext,
    prefactor_base: Scalar,
    step: &[Scalar],
    shift_sign: i64,
) -> Result<PSeries> {
    let n = z.nvars;
    let base = full_cycle(n, trunc, prefactor_base);
    let pref = inf_poch(&base, &[cst(n, trunc, ctx.kappa_pow(n as i64))])?;
    let zl = q_laplacian_shift(z, &ctx.s);
    let mut total = PSeries::zero(n, trunc, ctx.mode);
    let mut ls = vec![0usize; n];
    loop {
        let deg: usize = ls.iter().sum();
        if deg <= trunc {
            let cyc: i64 = (0..n).map(|i| (ls[i] * ls[(i + 1) % n]) as i64).sum();
            let mut c = ctx.s_pow(cyc);
            let mut v = vec![0u32; n];
            for i in 0..n {
                c = c.div(&finite_poch(&ctx.q, &ctx.q, ls[i]))?;
                c = c * (-(&ctx.s * &step[i])).pow_u(ls[i] as u64);
                v[i] = ls[i] as u32;
            }
            let shift: Vec<i64> =
                (0..n).map(|i| shift_sign * (ls[(i + n - 1) % n] as i64 - ls[(i + 1) % n] as i64)).collect();
            let term = theta_shift(&zl, &ctx.s, &shift)?.mul(&PSeries::monomial(n, trunc, v, c))?;
            total = total.add(&term)?;
        }
        // odometer over l with each entry <= trunc
        let mut i = 0;
        loop {
            if i == n {
                return pref.mul(&total);
            }
            ls[i] += 1;
            if ls[i] <= trunc {
                break;
            }
            ls[i] = 0;
            i += 1;
        }
    }
}

/// Fundamental-matter relation between the two chambers.
pub fn check_fund_relation(r: &[usize], trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let n = r.len();
    let one = ctx.one();
    let z = z_series(r, Stability::Negative, MatterClass::Fund, trunc, ctx, &one)?;
    let zd = z_series(r, Stability::Positive, MatterClass::Fund, trunc, ctx, &one)?;
    let e: Vec<Scalar> = (0..n).map(|a| vertex_product(&ctx.e, a, ctx)).collect();
    let mu: Vec<Scalar> = (0..n).map(|a| vertex_product(&ctx.mu, a, ctx)).collect();
    let nu: Vec<Scalar> = (0..n).map(|a| vertex_product(&ctx.nu, a, ctx)).collect();
    let (pe, pmu, pnu) = (product(ctx.mode, &e), product(ctx.mode, &mu), product(ctx.mode, &nu));
    let lstep: Vec<Scalar> = (0..n).map(|i| mu[i].div(&e[i])).collect::<Result<_>>()?;
    let rstep: Vec<Scalar> = (0..n).map(|i| e[(i + 1) % n].div(&nu[(i + 1) % n])).collect::<Result<_>>()?;
    let lhs = fund_side(&z, trunc, ctx, pmu.div(&pe)?, &lstep, 1)?;
    let rhs = fund_side(&zd, trunc, ctx, pe.div(&pnu)?, &rstep, -1)?;
    Outcome::series(&lhs, &rhs)
}

/// The `N = 1` form of the fundamental relation as a ratio of double products.
pub fn check_fund_rank_one(r1: usize, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let one = ctx.one();
    let z = z_series(&[r1], Stability::Negative, MatterClass::Fund, trunc, ctx, &one)?;
    let zd = z_series(&[r1], Stability::Positive, MatterClass::Fund, trunc, ctx, &one)?;
    let (e, mu, nu) =
        (vertex_product(&ctx.e, 0, ctx), vertex_product(&ctx.mu, 0, ctx), vertex_product(&ctx.nu, 0, ctx));
    let params = [cst(1, trunc, ctx.q.clone()), cst(1, trunc, ctx.kappa.clone())];
    let qk = &ctx.q * &ctx.kappa;
    let p = |c: Scalar| PSeries::monomial(1, trunc, vec![1], c);
    let num = inf_poch(&p(e.div(&nu)?), &params)?.mul(&inf_poch(&p(&qk * &mu.div(&e)?), &params)?)?;
    let den = inf_poch(&p(&qk * &e.div(&nu)?), &params)?.mul(&inf_poch(&p(mu.div(&e)?), &params)?)?;
    ProductRatio { num, den }.check(&z, &zd)
}

// ---------------------------------------------------------------------------
// Chamber duality for fundamental matter

fn label_neg(n: usize, a: usize) -> usize {
    // position of label -(a+1)
    (-(a as i64) - 2).rem_euclid(n as i64) as usize
}

/// Reflected framing, parameters and exponent for the duality map.
pub fn dual_data(ctx: &EvalContext) -> Result<EvalContext> {
    let n = ctx.n;
    let inv = |v: &Vec<Vec<Scalar>>, a: usize| -> Result<Vec<Scalar>> {
        v[label_neg(n, a)].iter().map(|x| x.inv()).collect()
    };
    let e = (0..n).map(|a| inv(&ctx.e, a)).collect::<Result<Vec<_>>>()?;
    let mu = (0..n).map(|a| inv(&ctx.nu, a)).collect::<Result<Vec<_>>>()?;
    let nu = (0..n).map(|a| inv(&ctx.mu, a)).collect::<Result<Vec<_>>>()?;
    let mut out =
        EvalContext::from_parts(ctx.mode, ctx.seed, ctx.s.clone(), ctx.t.clone(), ctx.kappa.clone(), e, mu, nu)?;
    out.stream = ctx.stream;
    Ok(out)
}

/// Exponent in the reflected series matching `p^v` of the dual series.
pub fn reflect_index(v: &[u32]) -> Vec<u32> {
    let n = v.len();
    (0..n).map(|b| v[(-(b as i64) - 3).rem_euclid(n as i64) as usize]).collect()
}

/// Dual fundamental series at `p^v` against the reflected ordinary series.
pub fn check_duality(r: &[usize], v: &[u32], ctx: &EvalContext) -> Result<Outcome> {
    let one = ctx.one();
    let fr = Framing::new(r);
    let ev = Evaluator::new(ctx)?;
    let mut lhs = ctx.zero();
    for fp in enumerate_fixed_points(r, v, Stability::Positive) {
        lhs = lhs + fr.term(&fp, Stability::Positive, MatterClass::Fund, &ev, &one)?;
    }
    let dctx = dual_data(ctx)?;
    let dfr = Framing::new(&dctx.r);
    let dev = Evaluator::new(&dctx)?;
    let w = reflect_index(v);
    let mut rhs = ctx.zero();
    for fp in enumerate_fixed_points(&dctx.r, &w, Stability::Negative) {
        rhs = rhs + dfr.term(&fp, Stability::Negative, MatterClass::Fund, &dev, &one)?;
    }
    Ok(Outcome::scalar(v.to_vec(), lhs, rhs))
}

// ---------------------------------------------------------------------------
// Framing growth limit

/// Adjoint series with framing `r + e_a`, the new slot's `e` sent to infinity.
pub fn limit_series(r: &[usize], a: usize, st: Stability, trunc: usize, ctx: &EvalContext) -> Result<PSeries> {
    let n = r.len();
    let mut rr = r.to_vec();
    rr[a] += 1;
    // extend the context with a placeholder value for the new slot
    let mut e = ctx.e.clone();
    let mut mu = ctx.mu.clone();
    let mut nu = ctx.nu.clone();
    e[a].push(ctx.one());
    mu[a].push(ctx.one());
    nu[a].push(ctx.one());
    let ext = EvalContext::from_parts(ctx.mode, ctx.seed, ctx.s.clone(), ctx.t.clone(), ctx.kappa.clone(), e, mu, nu)?;
    let fr = Framing::new(&rr);
    let ev = Evaluator::new(&ext)?.with_symbolic(fr.slot(a, rr[a] - 1));
    let tuples = crate::combinatorics::enumerate_tuples(&rr, trunc);
    let mut coeffs: std::collections::BTreeMap<Vec<u32>, UniRational> = Default::default();
    for fp in &tuples {
        let tan = fr.tangent_character(fp, st);
        let term = ev.eu_t_formal(&tan, &ctx.t)?.div(&ev.eu_t_formal(&tan, &ctx.one())?)?;
        let v = dimension_vector(fp, st);
        let slot = coeffs.entry(v).or_insert_with(|| UniRational::constant(ctx.zero()));
        *slot = slot.add(&term);
    }
    let mut out = PSeries::zero(n, trunc, ctx.mode);
    for (v, f) in coeffs {
        match uni_limit_at_infinity(&f)? {
            Limit::Finite(c) => out.add_term(v, c),
            Limit::Zero => {}
            Limit::DivergesToInfinity => return Err(Error::Diverges),
        }
    }
    Ok(out)
}

/// Limit of the grown series against the product of the two smaller ones.
pub fn check_limit_factorization(r: &[usize], a: usize, trunc: usize, ctx: &EvalContext) -> Result<Outcome> {
    let n = r.len();
    let mut unit = vec![0usize; n];
    unit[a] = 1;
    let single = EvalContext::from_parts(
        ctx.mode,
        ctx.seed,
        ctx.s.clone(),
        ctx.t.clone(),
        ctx.kappa.clone(),
        unit.iter().map(|&k| vec![ctx.one(); k]).collect(),
        unit.iter().map(|&k| vec![ctx.one(); k]).collect(),
        unit.iter().map(|&k| vec![ctx.one(); k]).collect(),
    )?;
    let t_at_a: Vec<Scalar> = (0..n).map(|i| if i == a { ctx.t.clone() } else { ctx.one() }).collect();
    let t_shift: Vec<Scalar> = (0..n).map(|i| ctx.t_pow(r[(i + 1) % n] as i64)).collect();
    let mut out = Outcome::pass();
    for st in [Stability::Negative, Stability::Positive] {
        let lhs = limit_series(r, a, st, trunc, ctx)?;
        let big = z_series(r, st, MatterClass::Adj, trunc, ctx, &ctx.t)?.scale_vars(&t_at_a);
        let small = z_series(&unit, st, MatterClass::Adj, trunc, &single, &ctx.t)?.scale_vars(&t_shift);
        out = out.and(Outcome::series(&lhs, &big.mul(&small)?)?);
    }
    Ok(out)
}

/// Euler class of the fundamental class at a stable fixed point, as a product
/// of Nekrasov factors against the empty diagram.
pub fn fund_nekrasov_term(
    fr: &Framing,
    fp: &crate::combinatorics::PartitionTuple,
    ctx: &EvalContext,
) -> Result<Scalar> {
    use crate::combinatorics::Partition;
    use crate::nekrasov::nek_row;
    let n = fr.n();
    let empty = Partition::empty();
    let mut acc = ctx.one();
    for (i, al, li) in fp.components() {
        for j in 0..n {
            for be in 0..fr.r[j] {
                let k = j as i64 - i as i64;
                acc = acc * nek_row(li, &empty, k, n, &ctx.mu[j][be].div(&ctx.e[i][al])?, ctx);
            }
        }
    }
    for (j, be, lj) in fp.components() {
        for i in 0..n {
            for al in 0..fr.r[i] {
                let k = j as i64 - i as i64;
                acc = acc * nek_row(&empty, lj, k, n, &ctx.e[j][be].div(&ctx.nu[i][al])?, ctx);
            }
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{with_resample, Mode};

    fn run_check<F: Fn(&EvalContext) -> Result<Outcome>>(
        n: usize,
        r: &[usize],
        seed: u64,
        trunc: usize,
        f: F,
    ) -> Outcome {
        with_resample(n, r, trunc, seed, Mode::Prime, |ctx| f(ctx)).unwrap()
    }

    fn assert_pass(o: Outcome, what: &str) {
        assert!(o.passed(), "{what}: {:?}", o.mismatch);
    }

    #[test]
    fn rank_one_closed_form() {
        for seed in 0..3 {
            assert_pass(run_check(1, &[1], seed, 4, |c| check_rank_one_closed_form(4, c)), "N=1");
        }
    }

    #[test]
    fn single_slot() {
        for n in 2..=3 {
            for a in 0..n {
                let mut r = vec![0; n];
                r[a] = 1;
                let trunc = if n == 2 { 3 } else { 2 };
                assert_pass(run_check(n, &r, 2, trunc, |c| check_single_slot(n, a, trunc, c)), "single slot");
            }
        }
    }

    #[test]
    fn single_slot_rejects_wrong_pairing() {
        let o = run_check(2, &[1, 0], 2, 2, |c| {
            let (z, _) = adj_pair(&[1, 0], 2, c)?;
            let f = single_slot_formula(2, 0, Stability::Positive, 2, c)?;
            f.check(&z, &PSeries::one(2, 2, c.mode))
        });
        assert!(!o.passed());
    }

    #[test]
    fn equal_framing() {
        assert_pass(run_check(2, &[1, 1], 3, 3, |c| check_equal_framing(&[1, 1], 3, c)), "(1,1)");
        assert_pass(run_check(3, &[1, 1, 1], 3, 2, |c| check_equal_framing(&[1, 1, 1], 2, c)), "(1,1,1)");
        assert!(check_equal_framing(
            &[2, 1],
            1,
            &crate::scalars::sample_context(2, &[2, 1], 1, 0, Mode::Prime).unwrap()
        )
        .is_err());
    }

    #[test]
    fn ratio_is_one_for_equal_framing() {
        let o = run_check(3, &[1, 1, 1], 1, 3, |c| {
            let f = phi_ratio(&[1, 1, 1], 3, c, Modulus::Total)?;
            Outcome::series(&f.num, &f.den)
        });
        assert_pass(o, "phi equal framing");
    }

    #[test]
    fn chamber_ratio_n2() {
        for seed in 0..2 {
            assert_pass(
                run_check(2, &[2, 1], seed, 4, |c| check_chamber_ratio(&[2, 1], 4, c, Modulus::Total)),
                "(2,1)",
            );
        }
        assert_pass(run_check(2, &[1, 2], 0, 3, |c| check_chamber_ratio(&[1, 2], 3, c, Modulus::Total)), "(1,2)");
    }

    #[test]
    fn label_modulus_fails() {
        let o = run_check(2, &[2, 1], 5, 3, |c| check_chamber_ratio(&[2, 1], 3, c, Modulus::Label));
        assert!(!o.passed());
    }

    #[test]
    fn table_matches_ratio_and_sums() {
        for tab in f_tables() {
            let n = tab.r.len();
            let trunc = if n == 2 { 4 } else { 2 };
            let o = run_check(n, &tab.r, 4, trunc, |c| {
                let a = f_table_ratio(&tab, trunc, c)?;
                let b = phi_ratio(&tab.r, trunc, c, Modulus::Total)?;
                Outcome::series(&a.num.mul(&b.den)?, &a.den.mul(&b.num)?)
            });
            assert_pass(o, "table vs ratio");
            if n <= 3 {
                assert_pass(run_check(n, &tab.r, 4, trunc, |c| check_f_table(&tab, trunc, c)), "table vs sums");
            }
        }
    }

    #[test]
    fn fund_rank_one() {
        for r1 in 1..=2 {
            for seed in 0..2 {
                assert_pass(run_check(1, &[r1], seed, 3, |c| check_fund_rank_one(r1, 3, c)), "fund N=1");
            }
        }
    }

    #[test]
    fn fund_relation() {
        for seed in 0..3 {
            assert_pass(run_check(1, &[1], seed, 3, |c| check_fund_relation(&[1], 3, c)), "N=1");
            assert_pass(run_check(2, &[1, 1], seed, 3, |c| check_fund_relation(&[1, 1], 3, c)), "N=2");
        }
        assert_pass(run_check(2, &[1, 0], 0, 3, |c| check_fund_relation(&[1, 0], 3, c)), "N=2 (1,0)");
    }

    #[test]
    fn duality() {
        let cases: Vec<(Vec<usize>, Vec<Vec<u32>>)> = vec![
            (vec![1], vec![vec![0], vec![1], vec![2], vec![3]]),
            (vec![2], vec![vec![1], vec![2]]),
            (vec![1, 0], vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![1, 2]]),
            (vec![1, 1], vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]]),
            (vec![1, 0, 1], vec![vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]),
        ];
        for (r, vs) in cases {
            for v in vs {
                let o = run_check(r.len(), &r, 8, 3, |c| check_duality(&r, &v, c));
                assert_pass(o, &format!("duality r={r:?} v={v:?}"));
            }
        }
    }

    #[test]
    fn reflect_index_involution() {
        for v in [vec![1u32, 2], vec![1, 2, 3], vec![4, 0, 1, 2]] {
            assert_eq!(reflect_index(&reflect_index(&v)), v);
        }
        assert_eq!(reflect_index(&[1, 2]), vec![2, 1]);
    }

    #[test]
    fn limit_factorization() {
        assert_pass(run_check(1, &[1], 9, 3, |c| check_limit_factorization(&[1], 0, 3, c)), "N=1");
        assert_pass(run_check(2, &[1, 1], 9, 2, |c| check_limit_factorization(&[1, 1], 0, 2, c)), "N=2 (1,1)");
        assert_pass(run_check(2, &[1, 0], 9, 2, |c| check_limit_factorization(&[1, 0], 1, 2, c)), "N=2 (1,0)");
    }
}
#[cfg(test)]
mod fund_forms {
    use super::*;
    use crate::combinatorics::enumerate_tuples;
    use crate::scalars::{sample_context, Mode};

    #[test]
    fn product_form_matches_character() {
        for r in [vec![1usize], vec![2], vec![1, 0], vec![1, 1], vec![0, 1, 1]] {
            let ctx = sample_context(r.len(), &r, 4, 2, Mode::Prime).unwrap();
            let fr = Framing::new(&r);
            let ev = Evaluator::new(&ctx).unwrap();
            for fp in enumerate_tuples(&r, 4) {
                let ch = fr.class_character(&fp, Stability::Negative, MatterClass::Fund);
                assert_eq!(ev.eu(&ch).unwrap(), fund_nekrasov_term(&fr, &fp, &ctx).unwrap(), "{fp:?}");
            }
        }
    }
}
