//! Field elements, parameter specialization and univariate rational functions.
//!
//! A [`Scalar`] is either an exact rational or a residue modulo the Mersenne
//! prime 2^61 - 1. Mixing the two in one expression is a programming error and
//! panics. Every equivariant parameter is specialized to a nonzero scalar by an
//! [`EvalContext`]; identities are then compared pointwise.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const PRIME: u64 = (1u64 << 61) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Prime,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Prime => write!(f, "prime"),
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "prime" => Ok(Mode::Prime),
            other => Err(Error::Invalid(format!("unknown mode {other}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp(u64),
}

#[inline]
fn fp_reduce(x: u128) -> u64 {
    let lo = (x as u64) & PRIME;
    let hi = (x >> 61) as u64;
    let mut s = lo + hi;
    if s >= PRIME {
        s -= PRIME;
    }
    if s >= PRIME {
        s -= PRIME;
    }
    s
}

#[inline]
fn fp_mul(a: u64, b: u64) -> u64 {
    fp_reduce(a as u128 * b as u128)
}

fn fp_pow(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_mul(acc, base);
        }
        base = fp_mul(base, base);
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn zero(mode: Mode) -> Scalar {
        Scalar::from_i64(mode, 0)
    }

    pub fn one(mode: Mode) -> Scalar {
        Scalar::from_i64(mode, 1)
    }

    pub fn from_i64(mode: Mode, v: i64) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Mode::Prime => {
                let r = v.rem_euclid(PRIME as i64) as u64;
                Scalar::Fp(r)
            }
        }
    }

    /// `num / den`; `den` must be nonzero.
    pub fn frac(mode: Mode, num: i64, den: i64) -> Result<Scalar> {
        Scalar::from_i64(mode, num).div(&Scalar::from_i64(mode, den))
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Rat(_) => Mode::Exact,
            Scalar::Fp(_) => Mode::Prime,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp(v) => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp(v) => Scalar::Fp(fp_pow(*v, PRIME - 2)),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Scalar> {
        if exp < 0 {
            return self.inv()?.pow(-exp);
        }
        Ok(self.pow_u(exp as u64))
    }

    pub fn pow_u(&self, exp: u64) -> Scalar {
        match self {
            Scalar::Fp(v) => Scalar::Fp(fp_pow(*v, exp)),
            Scalar::Rat(r) => {
                let e = i32::try_from(exp).expect("exponent too large for exact mode");
                Scalar::Rat(num_traits::pow::Pow::pow(r, e))
            }
        }
    }

    fn check_mode(&self, other: &Scalar) {
        assert_eq!(self.mode(), other.mode(), "scalar mode mismatch");
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(v) => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_mode(rhs);
        match (self, rhs) {
            (Scalar::Fp(a), Scalar::Fp(b)) => {
                let s = a + b;
                Scalar::Fp(if s >= PRIME { s - PRIME } else { s })
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.check_mode(rhs);
        match (self, rhs) {
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(if a >= b { a - b } else { a + PRIME - b }),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a - b),
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_mode(rhs);
        match (self, rhs) {
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(fp_mul(*a, *b)),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Fp(a) => Scalar::Fp(if *a == 0 { 0 } else { PRIME - a }),
            Scalar::Rat(a) => Scalar::Rat(-a),
        }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Product of a list; the empty product is one.
pub fn product<'a>(mode: Mode, it: impl IntoIterator<Item = &'a Scalar>) -> Scalar {
    it.into_iter().fold(Scalar::one(mode), |acc, x| acc * x)
}

// ---------------------------------------------------------------------------
// Parameter specialization

/// A point at which every equivariant parameter has a nonzero value.
///
/// Vertices are stored by position `a = i - 1` for the vertex label `i` in
/// `1..=N`. Framing index `alpha` is zero-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalContext {
    pub mode: Mode,
    pub seed: u64,
    /// Seed of the accepted sampling attempt; drives [`EvalContext::aux`].
    pub stream: u64,
    pub n: usize,
    pub r: Vec<usize>,
    pub s: Scalar,
    pub q: Scalar,
    pub t: Scalar,
    pub kappa: Scalar,
    pub e: Vec<Vec<Scalar>>,
    pub mu: Vec<Vec<Scalar>>,
    pub nu: Vec<Vec<Scalar>>,
    inv_s: Scalar,
    inv_t: Scalar,
    inv_kappa: Scalar,
}

fn mix(seed: u64, salt: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_scalar(rng: &mut ChaCha8Rng, mode: Mode) -> Scalar {
    match mode {
        Mode::Prime => Scalar::Fp(rng.gen_range(2..PRIME - 1)),
        Mode::Exact => {
            let num: i64 = rng.gen_range(1..=29);
            let den: i64 = rng.gen_range(1..=23);
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            Scalar::Rat(BigRational::new(BigInt::from(sign * num), BigInt::from(den)))
        }
    }
}

pub const RETRY_BUDGET: usize = 64;

impl EvalContext {
    /// Build a context from explicit values; all must be nonzero.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        mode: Mode,
        seed: u64,
        s: Scalar,
        t: Scalar,
        kappa: Scalar,
        e: Vec<Vec<Scalar>>,
        mu: Vec<Vec<Scalar>>,
        nu: Vec<Vec<Scalar>>,
    ) -> Result<EvalContext> {
        let n = e.len();
        if n == 0 || mu.len() != n || nu.len() != n {
            return Err(Error::Invalid("parameter maps must cover N >= 1 vertices".into()));
        }
        let r: Vec<usize> = e.iter().map(|v| v.len()).collect();
        for a in 0..n {
            if mu[a].len() != r[a] || nu[a].len() != r[a] {
                return Err(Error::Invalid("e, mu, nu framings disagree".into()));
            }
        }
        let all = [&s, &t, &kappa]
            .into_iter()
            .chain(e.iter().flatten())
            .chain(mu.iter().flatten())
            .chain(nu.iter().flatten());
        for x in all {
            if x.is_zero() {
                return Err(Error::DivisionByZero);
            }
        }
        Ok(EvalContext {
            mode,
            seed,
            stream: seed,
            n,
            r,
            q: &s * &s,
            inv_s: s.inv()?,
            inv_t: t.inv()?,
            inv_kappa: kappa.inv()?,
            s,
            t,
            kappa,
            e,
            mu,
            nu,
        })
    }

    fn sample_attempt(r: &[usize], seed: u64, mode: Mode, attempt: usize) -> Result<EvalContext> {
        let stream = mix(seed ^ ((mode as u64) << 63), attempt as u64 + 1);
        let mut rng = ChaCha8Rng::seed_from_u64(stream);
        let s = random_scalar(&mut rng, mode);
        let t = random_scalar(&mut rng, mode);
        let kappa = random_scalar(&mut rng, mode);
        let draw = |rng: &mut ChaCha8Rng| -> Vec<Vec<Scalar>> {
            r.iter().map(|&ri| (0..ri).map(|_| random_scalar(rng, mode)).collect()).collect()
        };
        let e = draw(&mut rng);
        let mu = draw(&mut rng);
        let nu = draw(&mut rng);
        let mut ctx = EvalContext::from_parts(mode, seed, s, t, kappa, e, mu, nu)?;
        ctx.stream = stream;
        Ok(ctx)
    }

    /// Check the sampling invariants for truncation bound `bound`.
    pub fn check(&self, bound: usize) -> bool {
        let one = Scalar::one(self.mode);
        let kn = self.kappa.pow_u(self.n as u64);
        let lim = 2 * bound.max(1) as u64;
        for base in [&self.q, &self.t, &kn] {
            let mut x = one.clone();
            for _ in 0..lim {
                x = &x * base;
                if x.is_one() {
                    return false;
                }
            }
        }
        let flat: Vec<&Scalar> = self.e.iter().flatten().collect();
        for i in 0..flat.len() {
            for j in 0..i {
                if flat[i] == flat[j] {
                    return false;
                }
            }
        }
        true
    }

    pub fn flat_len(&self) -> usize {
        self.r.iter().sum()
    }

    /// Flat index of framing `(a, alpha)`.
    pub fn flat(&self, a: usize, alpha: usize) -> usize {
        self.r[..a].iter().sum::<usize>() + alpha
    }

    pub fn e_flat(&self) -> Vec<Scalar> {
        self.e.iter().flatten().cloned().collect()
    }

    pub fn mu_flat(&self) -> Vec<Scalar> {
        self.mu.iter().flatten().cloned().collect()
    }

    pub fn nu_flat(&self) -> Vec<Scalar> {
        self.nu.iter().flatten().cloned().collect()
    }

    pub fn s_pow(&self, k: i64) -> Scalar {
        if k >= 0 {
            self.s.pow_u(k as u64)
        } else {
            self.inv_s.pow_u((-k) as u64)
        }
    }

    pub fn q_pow(&self, k: i64) -> Scalar {
        self.s_pow(2 * k)
    }

    pub fn t_pow(&self, k: i64) -> Scalar {
        if k >= 0 {
            self.t.pow_u(k as u64)
        } else {
            self.inv_t.pow_u((-k) as u64)
        }
    }

    pub fn kappa_pow(&self, k: i64) -> Scalar {
        if k >= 0 {
            self.kappa.pow_u(k as u64)
        } else {
            self.inv_kappa.pow_u((-k) as u64)
        }
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.mode)
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.mode)
    }

    pub fn int(&self, v: i64) -> Scalar {
        Scalar::from_i64(self.mode, v)
    }

    /// `count` further nonzero random values from an independent stream keyed by `label`.
    pub fn aux(&self, label: u64, count: usize) -> Vec<Scalar> {
        let mut rng = ChaCha8Rng::seed_from_u64(mix(self.stream, 0xA5A5_0000 + label));
        (0..count).map(|_| random_scalar(&mut rng, self.mode)).collect()
    }

    /// Same context with `t` replaced.
    pub fn with_t(&self, t: Scalar) -> Result<EvalContext> {
        let mut c = self.clone();
        c.inv_t = t.inv()?;
        c.t = t;
        Ok(c)
    }
}

/// Sample a context satisfying all invariants for truncation bound `bound`.
pub fn sample_context(n: usize, r: &[usize], bound: usize, seed: u64, mode: Mode) -> Result<EvalContext> {
    if n == 0 || r.len() != n {
        return Err(Error::Invalid(format!("framing vector must have N = {n} entries")));
    }
    for attempt in 0..RETRY_BUDGET {
        if let Ok(ctx) = EvalContext::sample_attempt(r, seed, mode, attempt) {
            if ctx.check(bound) {
                return Ok(ctx);
            }
        }
    }
    Err(Error::RetryExhausted(RETRY_BUDGET))
}

/// Run `f` on a sampled context, drawing a fresh context whenever `f` hits a
/// zero denominator.
pub fn with_resample<T>(
    n: usize,
    r: &[usize],
    bound: usize,
    seed: u64,
    mode: Mode,
    mut f: impl FnMut(&EvalContext) -> Result<T>,
) -> Result<T> {
    if n == 0 || r.len() != n {
        return Err(Error::Invalid(format!("framing vector must have N = {n} entries")));
    }
    for attempt in 0..RETRY_BUDGET {
        let Ok(ctx) = EvalContext::sample_attempt(r, seed, mode, attempt) else {
            continue;
        };
        if !ctx.check(bound) {
            continue;
        }
        match f(&ctx) {
            Err(Error::DivisionByZero) => continue,
            other => return other,
        }
    }
    Err(Error::RetryExhausted(RETRY_BUDGET))
}

// ---------------------------------------------------------------------------
// Univariate polynomials and rational functions in one symbol

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    pub mode: Mode,
    /// Coefficients from the constant term upward, without trailing zeros.
    pub coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mode: Mode, mut coeffs: Vec<Scalar>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { mode, coeffs }
    }

    pub fn constant(c: Scalar) -> UniPoly {
        let mode = c.mode();
        UniPoly::new(mode, vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Scalar, k: usize) -> UniPoly {
        let mode = c.mode();
        let mut v = vec![Scalar::zero(mode); k];
        v.push(c);
        UniPoly::new(mode, v)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = Scalar::zero(self.mode);
        let v = (0..n).map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z)).collect();
        UniPoly::new(self.mode, v)
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly::new(self.mode, self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::new(self.mode, vec![]);
        }
        let mut v = vec![Scalar::zero(self.mode); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        UniPoly::new(self.mode, v)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs.iter().rev().fold(Scalar::zero(self.mode), |acc, c| &(&acc * x) + c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniRational {
    pub num: UniPoly,
    pub den: UniPoly,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Finite(Scalar),
    Zero,
    DivergesToInfinity,
}

impl UniRational {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<UniRational> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(UniRational { num, den })
    }

    pub fn constant(c: Scalar) -> UniRational {
        let mode = c.mode();
        UniRational { num: UniPoly::constant(c), den: UniPoly::constant(Scalar::one(mode)) }
    }

    pub fn from_poly(p: UniPoly) -> UniRational {
        let mode = p.mode;
        UniRational { num: p, den: UniPoly::constant(Scalar::one(mode)) }
    }

    pub fn add(&self, o: &UniRational) -> UniRational {
        if self.den == o.den {
            return UniRational { num: self.num.add(&o.num), den: self.den.clone() };
        }
        UniRational { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }

    pub fn mul(&self, o: &UniRational) -> UniRational {
        UniRational { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }

    pub fn div(&self, o: &UniRational) -> Result<UniRational> {
        UniRational::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        self.num.eval(x).div(&self.den.eval(x))
    }
}

/// Behaviour of `f(x)` as `x -> infinity`.
pub fn uni_limit_at_infinity(f: &UniRational) -> Result<Limit> {
    let dd = f.den.degree().ok_or(Error::DivisionByZero)?;
    let Some(dn) = f.num.degree() else {
        return Ok(Limit::Zero);
    };
    Ok(match dn.cmp(&dd) {
        std::cmp::Ordering::Less => Limit::Zero,
        std::cmp::Ordering::Greater => Limit::DivergesToInfinity,
        std::cmp::Ordering::Equal => Limit::Finite(f.num.leading().unwrap().div(f.den.leading().unwrap())?),
    })
}

/// `-Res_{u=0} - Res_{u=inf}` of `du/u * prod (1 - u z_k)/(1 - u w_k)`.
pub fn residue_at_zero_and_infinity(z: &[Scalar], w: &[Scalar]) -> Result<Scalar> {
    if z.is_empty() || z.len() != w.len() {
        return Err(Error::Invalid("z and w must be nonempty and of equal length".into()));
    }
    let mode = z[0].mode();
    for i in 0..w.len() {
        if w[i].is_zero() {
            return Err(Error::DivisionByZero);
        }
        for j in 0..i {
            if w[i] == w[j] {
                return Err(Error::PoleCollision(w[i].to_string()));
            }
        }
    }
    let one = Scalar::one(mode);
    let lin = |c: &Scalar| UniPoly::new(mode, vec![one.clone(), -c]);
    let mut g = UniRational::constant(one.clone());
    for (a, b) in z.iter().zip(w) {
        g = g.mul(&UniRational::new(lin(a), lin(b))?);
    }
    // u -> 1/v turns each factor into (v - z)/(v - w)
    let shifted = |c: &Scalar| UniPoly::new(mode, vec![-c, one.clone()]);
    let mut h = UniRational::constant(one.clone());
    for (a, b) in z.iter().zip(w) {
        h = h.mul(&UniRational::new(shifted(a), shifted(b))?);
    }
    let res0 = g.eval(&Scalar::zero(mode))?;
    let res_inf = -h.eval(&Scalar::zero(mode))?;
    Ok(-(res0 + res_inf))
}

/// Whether the residue sum equals `prod z / prod w - 1`; also returns the value.
pub fn residue_sum_check(z: &[Scalar], w: &[Scalar]) -> Result<(bool, Scalar)> {
    let value = residue_at_zero_and_infinity(z, w)?;
    let mode = z[0].mode();
    let expected = product(mode, z).div(&product(mode, w))? - Scalar::one(mode);
    Ok((value == expected, value))
}

/// Parse a rational literal like `-3/7` into the given mode.
pub fn parse_scalar(mode: Mode, s: &str) -> Result<Scalar> {
    let bad = || Error::Invalid(format!("bad scalar literal {s}"));
    let (n, d) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    match mode {
        Mode::Exact => Ok(Scalar::Rat(BigRational::new(n, d))),
        Mode::Prime => {
            let p = BigInt::from(PRIME);
            let red = |x: BigInt| -> u64 {
                let m = ((x % &p) + &p) % &p;
                let (_, digits) = m.to_u64_digits();
                digits.first().copied().unwrap_or(0)
            };
            let nv = Scalar::Fp(red(n));
            let dv = Scalar::Fp(red(d));
            nv.div(&dv)
        }
    }
}

impl Scalar {
    pub fn abs_is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.abs().is_one(),
            Scalar::Fp(v) => *v == 1 || *v == PRIME - 1,
        }
    }
}
