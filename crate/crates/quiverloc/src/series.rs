//! Truncated power series in `p_1..p_N`, graded by total degree.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::scalars::{Mode, Scalar};

pub type Index = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PSeries {
    pub nvars: usize,
    pub trunc: usize,
    pub mode: Mode,
    /// Nonzero coefficients only.
    terms: BTreeMap<Index, Scalar>,
}

/// First index where two series differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub index: Index,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

fn degree(v: &[u32]) -> usize {
    v.iter().map(|&x| x as usize).sum()
}

impl PSeries {
    pub fn zero(nvars: usize, trunc: usize, mode: Mode) -> PSeries {
        PSeries { nvars, trunc, mode, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, trunc: usize, c: Scalar) -> PSeries {
        let mut s = PSeries::zero(nvars, trunc, c.mode());
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, trunc: usize, mode: Mode) -> PSeries {
        PSeries::constant(nvars, trunc, Scalar::one(mode))
    }

    /// `c * p^v`, or zero if `|v|` exceeds the bound.
    pub fn monomial(nvars: usize, trunc: usize, v: Index, c: Scalar) -> PSeries {
        assert_eq!(v.len(), nvars);
        let mut s = PSeries::zero(nvars, trunc, c.mode());
        s.add_term(v, c);
        s
    }

    /// Accumulate `c` into the coefficient at `v`, discarding indices beyond the bound.
    pub fn add_term(&mut self, v: Index, c: Scalar) {
        debug_assert_eq!(v.len(), self.nvars);
        if degree(&v) > self.trunc || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&v) {
            Some(x) => {
                let sum = &*x + &c;
                if sum.is_zero() {
                    self.terms.remove(&v);
                } else {
                    *x = sum;
                }
            }
            None => {
                self.terms.insert(v, c);
            }
        }
    }

    pub fn coeff(&self, v: &[u32]) -> Scalar {
        self.terms.get(v).cloned().unwrap_or_else(|| Scalar::zero(self.mode))
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Index, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_shape(&self, o: &PSeries) -> Result<()> {
        if self.nvars != o.nvars || self.trunc != o.trunc {
            return Err(Error::ShapeMismatch(self.nvars, self.trunc, o.nvars, o.trunc));
        }
        Ok(())
    }

    pub fn add(&self, o: &PSeries) -> Result<PSeries> {
        self.same_shape(o)?;
        let mut out = self.clone();
        for (v, c) in &o.terms {
            out.add_term(v.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> PSeries {
        self.scale(&-Scalar::one(self.mode))
    }

    pub fn sub(&self, o: &PSeries) -> Result<PSeries> {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: &Scalar) -> PSeries {
        let mut out = PSeries::zero(self.nvars, self.trunc, self.mode);
        for (v, x) in &self.terms {
            out.add_term(v.clone(), x * c);
        }
        out
    }

    pub fn mul(&self, o: &PSeries) -> Result<PSeries> {
        self.same_shape(o)?;
        let mut acc: BTreeMap<Index, Scalar> = BTreeMap::new();
        for (va, ca) in &self.terms {
            let da = degree(va);
            for (vb, cb) in &o.terms {
                if da + degree(vb) > self.trunc {
                    continue;
                }
                let v: Index = va.iter().zip(vb).map(|(a, b)| a + b).collect();
                let prod = ca * cb;
                match acc.get_mut(&v) {
                    Some(x) => *x = &*x + &prod,
                    None => {
                        acc.insert(v, prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(PSeries { nvars: self.nvars, trunc: self.trunc, mode: self.mode, terms: acc })
    }

    pub fn pow(&self, k: usize) -> Result<PSeries> {
        let mut acc = PSeries::one(self.nvars, self.trunc, self.mode);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Result<PSeries> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let c0inv = c0.inv()?;
        // a = c0 (1 - x), a^{-1} = c0^{-1} (1 + x + x^2 + ...)
        let x = self.scale(&c0inv).neg().add(&PSeries::one(self.nvars, self.trunc, self.mode))?;
        let mut acc = PSeries::one(self.nvars, self.trunc, self.mode);
        let mut xp = acc.clone();
        for _ in 0..self.trunc {
            xp = xp.mul(&x)?;
            if xp.is_zero() {
                break;
            }
            acc = acc.add(&xp)?;
        }
        Ok(acc.scale(&c0inv))
    }

    pub fn div(&self, o: &PSeries) -> Result<PSeries> {
        self.mul(&o.invert()?)
    }

    /// `exp(x)` for `x` without constant term.
    pub fn exp(&self) -> Result<PSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonTerminating);
        }
        let mut acc = PSeries::one(self.nvars, self.trunc, self.mode);
        let mut term = acc.clone();
        for k in 1..=self.trunc {
            let kinv = Scalar::from_i64(self.mode, k as i64).inv()?;
            term = term.mul(self)?.scale(&kinv);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
        }
        Ok(acc)
    }

    pub fn equal(&self, o: &PSeries) -> Result<bool> {
        self.same_shape(o)?;
        Ok(self.terms == o.terms)
    }

    /// First differing coefficient in lexicographic index order.
    pub fn first_mismatch(&self, o: &PSeries) -> Result<Option<Mismatch>> {
        self.same_shape(o)?;
        let mut keys: Vec<&Index> = self.terms.keys().chain(o.terms.keys()).collect();
        keys.sort();
        keys.dedup();
        for k in keys {
            let (a, b) = (self.coeff(k), o.coeff(k));
            if a != b {
                return Ok(Some(Mismatch { index: k.clone(), lhs: a, rhs: b }));
            }
        }
        Ok(None)
    }

    /// Rescale every monomial `p^v` by `f(v)`.
    pub fn map_monomials(&self, mut f: impl FnMut(&[u32]) -> Scalar) -> PSeries {
        let mut out = PSeries::zero(self.nvars, self.trunc, self.mode);
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c * &f(v));
        }
        out
    }

    /// Substitute `p_i -> c_i p_i`.
    pub fn scale_vars(&self, c: &[Scalar]) -> PSeries {
        assert_eq!(c.len(), self.nvars);
        self.map_monomials(|v| v.iter().zip(c).fold(Scalar::one(self.mode), |acc, (&k, x)| acc * x.pow_u(k as u64)))
    }

    /// Keep only terms of total degree at most `trunc`.
    pub fn truncate(&self, trunc: usize) -> PSeries {
        let mut out = PSeries::zero(self.nvars, trunc, self.mode);
        for (v, c) in &self.terms {
            out.add_term(v.clone(), c.clone());
        }
        out
    }

    /// Coefficients of a one-variable series as a dense list `[a_0..a_trunc]`.
    pub fn dense(&self) -> Vec<Scalar> {
        assert_eq!(self.nvars, 1);
        (0..=self.trunc as u32).map(|n| self.coeff(&[n])).collect()
    }

    pub fn from_dense(trunc: usize, mode: Mode, coeffs: &[Scalar]) -> PSeries {
        let mut s = PSeries::zero(1, trunc, mode);
        for (n, c) in coeffs.iter().enumerate() {
            s.add_term(vec![n as u32], c.clone());
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(v, c)| {
                let mut row: Vec<serde_json::Value> = v.iter().map(|&x| json!(x)).collect();
                row.push(json!(c.to_string()));
                serde_json::Value::Array(row)
            })
            .collect();
        json!({"vars": self.nvars, "trunc": self.trunc, "terms": terms})
    }

    pub fn to_csv(&self) -> String {
        let mut out: Vec<String> = (1..=self.nvars).map(|i| format!("v{i}")).collect();
        out.push("coeff".into());
        let mut s = out.join(",");
        s.push('\n');
        for (v, c) in &self.terms {
            let row: Vec<String> = v.iter().map(|x| x.to_string()).chain([c.to_string()]).collect();
            s.push_str(&row.join(","));
            s.push('\n');
        }
        s
    }
}

/// `(x; q)_k`
pub fn finite_poch(x: &Scalar, q: &Scalar, k: usize) -> Scalar {
    let one = Scalar::one(x.mode());
    let mut acc = one.clone();
    let mut y = x.clone();
    for _ in 0..k {
        acc = acc * (&one - &y);
        y = &y * q;
    }
    acc
}

/// `prod_{i_1..i_k >= 0} (1 - base * prod params_j^{i_j})`, expanded as the
/// exponential of its logarithm.
pub fn inf_poch(base: &PSeries, params: &[PSeries]) -> Result<PSeries> {
    if !base.constant_term().is_zero() {
        return Err(Error::NonTerminating);
    }
    let (nv, tr, mode) = (base.nvars, base.trunc, base.mode);
    let one = PSeries::one(nv, tr, mode);
    let mut log = PSeries::zero(nv, tr, mode);
    let mut bm = one.clone();
    let mut ppow: Vec<PSeries> = params.iter().map(|_| one.clone()).collect();
    for m in 1..=tr {
        bm = bm.mul(base)?;
        if bm.is_zero() {
            break;
        }
        let mut term = bm.scale(&Scalar::from_i64(mode, m as i64).inv()?);
        for (pp, p) in ppow.iter_mut().zip(params) {
            *pp = pp.mul(p)?;
            let d = one.sub(pp)?;
            if d.constant_term().is_zero() {
                return Err(Error::DivisionByZero);
            }
            term = term.div(&d)?;
        }
        log = log.sub(&term)?;
    }
    log.exp()
}

/// Ratio of two infinite products with shared parameters.
pub fn inf_poch_ratio(num: &PSeries, den: &PSeries, params: &[PSeries]) -> Result<PSeries> {
    inf_poch(num, params)?.div(&inf_poch(den, params)?)
}

/// `p^n -> q^{dir * n(n+1)/2} p^n` on a one-variable series.
pub fn q_borel(f: &PSeries, q: &Scalar, dir: i64) -> Result<PSeries> {
    if f.nvars != 1 {
        return Err(Error::Invalid("q-Borel transform needs a one-variable series".into()));
    }
    let qi = if dir >= 0 { q.clone() } else { q.inv()? };
    Ok(f.map_monomials(|v| {
        let n = v[0] as u64;
        qi.pow_u(n * (n + 1) / 2)
    }))
}

fn s_power(s: &Scalar, k: i64) -> Scalar {
    if k >= 0 {
        s.pow_u(k as u64)
    } else {
        s.inv().expect("s is nonzero").pow_u((-k) as u64)
    }
}

/// `p^v -> s^{<c, v>} p^v`
pub fn theta_shift(f: &PSeries, s: &Scalar, c: &[i64]) -> Result<PSeries> {
    if c.len() != f.nvars {
        return Err(Error::Invalid("shift vector length must match the variable count".into()));
    }
    Ok(f.map_monomials(|v| s_power(s, v.iter().zip(c).map(|(&a, &b)| a as i64 * b).sum())))
}

/// Cyclic quadratic form `sum v_i^2 - sum v_i v_{i+1}`.
pub fn cyclic_form(v: &[u32]) -> i64 {
    let n = v.len();
    let sq: i64 = v.iter().map(|&x| (x as i64) * (x as i64)).sum();
    let cross: i64 = (0..n).map(|i| v[i] as i64 * v[(i + 1) % n] as i64).sum();
    sq - cross
}

/// `p^v -> s^{-Q(v)} p^v` with `Q` the cyclic form.
pub fn q_laplacian_shift(f: &PSeries, s: &Scalar) -> PSeries {
    f.map_monomials(|v| s_power(s, -cyclic_form(v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fp(v: i64) -> Scalar {
        Scalar::from_i64(Mode::Prime, v)
    }

    fn p1(trunc: usize, c: &[i64]) -> PSeries {
        let v: Vec<Scalar> = c.iter().map(|&x| fp(x)).collect();
        PSeries::from_dense(trunc, Mode::Prime, &v)
    }

    #[test]
    fn ring_examples() {
        let a = p1(2, &[1, 1]);
        let b = p1(2, &[1, -1]);
        assert_eq!(a.mul(&b).unwrap(), p1(2, &[1, 0, -1]));
        assert_eq!(p1(3, &[1, -1]).invert().unwrap(), p1(3, &[1, 1, 1, 1]));
        let x = PSeries::zero(1, 3, Mode::Prime);
        assert!(matches!(x.invert(), Err(Error::NotInvertible)));
        assert!(matches!(p1(2, &[1]).add(&p1(3, &[1])), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn invert_round_trip() {
        let q = fp(11);
        let f = PSeries::from_dense(5, Mode::Prime, &[fp(1), -q]);
        let g = f.invert().unwrap().mul(&f).unwrap();
        assert_eq!(g, PSeries::one(1, 5, Mode::Prime));
    }

    #[test]
    fn finite_poch_cases() {
        let x = fp(5);
        let q = fp(7);
        assert!(finite_poch(&x, &q, 0).is_one());
        assert_eq!(finite_poch(&x, &q, 1), fp(1) - fp(5));
        let qi = q.inv().unwrap();
        let lhs = finite_poch(&qi.pow_u(2), &q, 2);
        let rhs = (fp(1) - qi.pow_u(2)) * (fp(1) - qi.clone());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn inf_poch_first_coefficients() {
        let m = Mode::Exact;
        let x = Scalar::frac(m, 3, 5).unwrap();
        let q = Scalar::frac(m, 2, 7).unwrap();
        let t = Scalar::frac(m, -4, 9).unwrap();
        let one = Scalar::one(m);
        let zero = PSeries::zero(1, 3, m);
        assert_eq!(inf_poch(&zero, &[]).unwrap(), PSeries::one(1, 3, m));
        let qs = PSeries::constant(1, 3, q.clone());
        let base = PSeries::monomial(1, 3, vec![1], x.clone());
        let f = inf_poch(&base, std::slice::from_ref(&qs)).unwrap();
        assert_eq!(f.coeff(&[1]), -(x.div(&(&one - &q)).unwrap()));
        let num = PSeries::monomial(1, 3, vec![1], q.clone());
        let den = PSeries::monomial(1, 3, vec![1], t.clone());
        let r = inf_poch_ratio(&num, &den, &[qs]).unwrap();
        assert_eq!(r.coeff(&[1]), (&t - &q).div(&(&one - &q)).unwrap());
    }

    #[test]
    fn inf_poch_matches_direct_product() {
        // (x p; q)_inf against a finite product that is exact to the truncation order
        let m = Mode::Exact;
        let x = Scalar::frac(m, 3, 2).unwrap();
        let q = Scalar::frac(m, 1, 3).unwrap();
        let trunc = 4;
        let f = inf_poch(&PSeries::monomial(1, trunc, vec![1], x.clone()), &[PSeries::constant(1, trunc, q.clone())])
            .unwrap();
        // Euler: (z;q)_inf = sum (-1)^n q^{n(n-1)/2} z^n / (q;q)_n
        for n in 0..=trunc {
            let num = q.pow_u((n * (n.max(1) - 1) / 2) as u64) * x.pow_u(n as u64);
            let sgn = if n % 2 == 0 { num } else { -num };
            let want = sgn.div(&finite_poch(&q, &q, n)).unwrap();
            assert_eq!(f.coeff(&[n as u32]), want);
        }
    }

    #[test]
    fn borel_examples() {
        let q = fp(3);
        let c = PSeries::constant(1, 3, fp(7));
        assert_eq!(q_borel(&c, &q, 1).unwrap(), c);
        let p = PSeries::monomial(1, 3, vec![1], fp(1));
        assert_eq!(q_borel(&p, &q, 1).unwrap().coeff(&[1]), fp(3));
        let p2 = PSeries::monomial(1, 3, vec![2], fp(1));
        assert_eq!(q_borel(&p2, &q, 1).unwrap().coeff(&[2]), fp(27));
        assert!(q_borel(&PSeries::one(2, 2, Mode::Prime), &q, 1).is_err());
    }

    #[test]
    fn shift_examples() {
        let s = fp(5);
        let f = PSeries::monomial(2, 3, vec![1, 0], fp(1)).add(&PSeries::monomial(2, 3, vec![1, 1], fp(1))).unwrap();
        assert_eq!(theta_shift(&f, &s, &[0, 0]).unwrap(), f);
        let g = theta_shift(&f, &s, &[1, 0]).unwrap();
        assert_eq!(g.coeff(&[1, 0]), fp(5));
        let h = theta_shift(&f, &s, &[1, -1]).unwrap();
        assert_eq!(h.coeff(&[1, 1]), fp(1));
        let l = q_laplacian_shift(&f, &s);
        assert_eq!(l.coeff(&[1, 0]), s.inv().unwrap());
        assert_eq!(l.coeff(&[1, 1]), fp(1));
        let one_var = PSeries::monomial(1, 3, vec![3], fp(2));
        assert_eq!(q_laplacian_shift(&one_var, &s), one_var);
    }

    #[test]
    fn json_and_csv() {
        let f = PSeries::one(2, 0, Mode::Exact);
        assert_eq!(f.to_json().to_string(), r#"{"terms":[[0,0,"1"]],"trunc":0,"vars":2}"#);
        assert_eq!(f.to_csv(), "v1,v2,coeff\n0,0,1\n");
    }

    fn arb_series(nv: usize, tr: usize) -> impl Strategy<Value = PSeries> {
        proptest::collection::vec((proptest::collection::vec(0u32..3, nv), -20i64..20), 0..6).prop_map(move |ts| {
            let mut s = PSeries::zero(nv, tr, Mode::Exact);
            for (v, c) in ts {
                s.add_term(v, Scalar::from_i64(Mode::Exact, c));
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn mul_associative(a in arb_series(2, 4), b in arb_series(2, 4), c in arb_series(2, 4)) {
            let l = a.mul(&b).unwrap().mul(&c).unwrap();
            let r = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn borel_round_trip(a in arb_series(1, 5), qn in 2i64..30) {
            let q = Scalar::from_i64(Mode::Exact, qn);
            let b = q_borel(&q_borel(&a, &q, -1).unwrap(), &q, 1).unwrap();
            prop_assert_eq!(b, a);
        }

        #[test]
        fn theta_shift_additive(a in arb_series(3, 4), c in proptest::collection::vec(-3i64..4, 3), d in proptest::collection::vec(-3i64..4, 3)) {
            let s = Scalar::frac(Mode::Exact, 3, 7).unwrap();
            let cd: Vec<i64> = c.iter().zip(&d).map(|(x, y)| x + y).collect();
            let l = theta_shift(&theta_shift(&a, &s, &d).unwrap(), &s, &c).unwrap();
            prop_assert_eq!(l, theta_shift(&a, &s, &cd).unwrap());
        }

        #[test]
        fn poch_shift_identity(k in 0usize..5, xn in 1i64..40, qd in 2i64..40) {
            let m = Mode::Exact;
            let trunc = 4;
            let x = Scalar::frac(m, xn, 7).unwrap();
            let q = Scalar::frac(m, 1, qd).unwrap();
            let qs = PSeries::constant(1, trunc, q.clone());
            let base = PSeries::monomial(1, trunc, vec![1], x.clone());
            let mut lhs = inf_poch(&base.scale(&q.pow_u(k as u64)), std::slice::from_ref(&qs)).unwrap();
            for j in 0..k {
                let f = PSeries::one(1, trunc, m).sub(&base.scale(&q.pow_u(j as u64))).unwrap();
                lhs = lhs.mul(&f).unwrap();
            }
            prop_assert_eq!(lhs, inf_poch(&base, &[qs]).unwrap());
        }
    }
}
