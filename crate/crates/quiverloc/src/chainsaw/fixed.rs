//! Fixed-point data of chainsaw quiver varieties and their localization sums.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::character::{wmul, Basis, Character, Evaluator, Weight};
use crate::combinatorics::{box_color, dimension_vector, enumerate_tuples, PartitionTuple, Stability};
use crate::error::{Error, Result};
use crate::nekrasov::nek_row;
use crate::scalars::{EvalContext, Scalar};
use crate::series::PSeries;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatterClass {
    Adj,
    Fund,
}

/// Framing layout: vertex positions and flat slot numbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framing {
    pub r: Vec<usize>,
    offsets: Vec<usize>,
    slot_pos: Vec<usize>,
}

impl Framing {
    pub fn new(r: &[usize]) -> Framing {
        let mut offsets = Vec::with_capacity(r.len());
        let mut slot_pos = Vec::new();
        let mut acc = 0;
        for (a, &k) in r.iter().enumerate() {
            offsets.push(acc);
            acc += k;
            slot_pos.extend(std::iter::repeat_n(a, k));
        }
        Framing { r: r.to_vec(), offsets, slot_pos }
    }

    pub fn n(&self) -> usize {
        self.r.len()
    }

    pub fn slots(&self) -> usize {
        self.slot_pos.len()
    }

    pub fn slot(&self, a: usize, alpha: usize) -> usize {
        self.offsets[a] + alpha
    }

    pub fn basis(&self) -> Basis {
        Basis::new(self.slots())
    }

    fn wrap(&self, a: i64) -> usize {
        a.rem_euclid(self.n() as i64) as usize
    }

    /// Grading degree modulo `N`: `kappa` has degree -1 and `e` of a slot at
    /// position `a` has degree `a`.
    pub fn degree(&self, w: &[i32]) -> usize {
        let b = self.basis();
        let mut d = -(w[1] as i64);
        for (f, &pos) in self.slot_pos.iter().enumerate() {
            d += w[b.e_index(f)] as i64 * pos as i64;
        }
        self.wrap(d)
    }

    /// Tautological bundle at a fixed point, split by color.
    pub fn v_decomposition(&self, fp: &PartitionTuple, st: Stability) -> Vec<Character> {
        let b = self.basis();
        let n = self.n();
        let mut v = vec![Character::new(); n];
        for (a, al, p) in fp.components() {
            let e = b.e(self.slot(a, al), 1);
            for (l, m) in p.boxes() {
                let (l32, m32) = (l as i32, m as i32);
                let w = match st {
                    Stability::Negative => wmul(&e, &wmul(&b.kappa(1 - l32), &b.q(1 - m32))),
                    Stability::Positive => wmul(&e, &wmul(&b.kappa(l32), &b.q(m32))),
                };
                v[box_color(n, a, l, st)].add(w, 1);
            }
        }
        v
    }

    /// Framing module, split by vertex.
    pub fn w_decomposition(&self) -> Vec<Character> {
        let b = self.basis();
        (0..self.n()).map(|a| Character::from_weights((0..self.r[a]).map(|al| b.e(self.slot(a, al), 1)))).collect()
    }

    /// Degree-zero part of the Jordan-quiver tangent character.
    pub fn tangent_character(&self, fp: &PartitionTuple, st: Stability) -> Character {
        let b = self.basis();
        let mut v = Character::new();
        for c in self.v_decomposition(fp, st) {
            v.add_char(&c, 1);
        }
        let mut w = Character::new();
        for c in self.w_decomposition() {
            w.add_char(&c, 1);
        }
        let mut coef = Character::new();
        coef.add(b.kappa(1), 1);
        coef.add(b.q(1), 1);
        coef.add(wmul(&b.kappa(1), &b.q(1)), -1);
        coef.add(b.unit(), -1);
        let mut full = v.tensor(&v.dual()).tensor(&coef);
        full.add_char(&w.dual().tensor(&v), 1);
        full.add_char(&v.dual().tensor(&w).twist(&wmul(&b.kappa(1), &b.q(1))), 1);
        full.filter(|x| self.degree(x) == 0)
    }

    /// Matter class at a fixed point, assembled vertex by vertex.
    pub fn class_character(&self, fp: &PartitionTuple, st: Stability, class: MatterClass) -> Character {
        let b = self.basis();
        let n = self.n();
        let v = self.v_decomposition(fp, st);
        let kq = wmul(&b.kappa(1), &b.q(1));
        let mut out = Character::new();
        match class {
            MatterClass::Adj => {
                for j in 0..n {
                    for beta in 0..self.r[j] {
                        out.add_char(&v[j].twist(&b.e(self.slot(j, beta), -1)), 1);
                    }
                    let nx = (j + 1) % n;
                    for al in 0..self.r[nx] {
                        out.add_char(&v[j].dual().twist(&wmul(&b.e(self.slot(nx, al), 1), &kq)), 1);
                    }
                    let hom = v[j].dual().tensor(&v[nx]);
                    out.add_char(&hom.twist(&b.kappa(1)), 1);
                    out.add_char(&hom.twist(&kq), -1);
                    let end = v[j].dual().tensor(&v[j]);
                    out.add_char(&end.twist(&b.q(1)), 1);
                    out.add_char(&end, -1);
                }
            }
            MatterClass::Fund => {
                let kq = wmul(&b.kappa(1), &b.q(1));
                for j in 0..n {
                    for beta in 0..self.r[j] {
                        out.add_char(&v[j].twist(&b.mu(self.slot(j, beta), -1)), 1);
                    }
                    let nx = (j + 1) % n;
                    for al in 0..self.r[nx] {
                        out.add_char(&v[j].dual().twist(&wmul(&b.nu(self.slot(nx, al), 1), &kq)), 1);
                    }
                }
            }
        }
        out
    }

    /// Product of colored Nekrasov factors giving `Eu^t` of the tangent space.
    pub fn tangent_nekrasov(
        &self,
        fp: &PartitionTuple,
        st: Stability,
        ctx: &EvalContext,
        t: &Scalar,
    ) -> Result<Scalar> {
        let n = self.n();
        let mut acc = ctx.one();
        for (a, al, la) in fp.components() {
            for (bpos, be, lb) in fp.components() {
                let (ea, eb) = (&ctx.e[a][al], &ctx.e[bpos][be]);
                let (k, u) = match st {
                    Stability::Negative => (bpos as i64 - a as i64, eb.div(ea)?),
                    Stability::Positive => (a as i64 - bpos as i64, ea.div(eb)?),
                };
                acc = acc * nek_row(la, lb, k, n, &(t * &u), ctx);
            }
        }
        Ok(acc)
    }

    /// Localization weight `Eu^t(class) / Eu(T)` at one fixed point.
    pub fn term(
        &self,
        fp: &PartitionTuple,
        st: Stability,
        class: MatterClass,
        ev: &Evaluator,
        t: &Scalar,
    ) -> Result<Scalar> {
        let tan = self.tangent_character(fp, st);
        let den = ev.eu(&tan)?;
        let num = match class {
            MatterClass::Adj => ev.eu_t(&tan, t)?,
            MatterClass::Fund => ev.eu(&self.class_character(fp, st, class))?,
        };
        num.div(&den)
    }
}

/// Sum `f(fixed point)` times `p^v` over all tuples with at most `trunc` boxes.
pub fn localization_sum(
    r: &[usize],
    st: Stability,
    trunc: usize,
    mode: crate::scalars::Mode,
    f: impl Fn(&PartitionTuple) -> Result<Scalar> + Sync,
) -> Result<PSeries> {
    let tuples = enumerate_tuples(r, trunc);
    let terms: Vec<(Vec<u32>, Scalar)> =
        tuples.par_iter().map(|fp| Ok((dimension_vector(fp, st), f(fp)?))).collect::<Result<Vec<_>>>()?;
    let mut s = PSeries::zero(r.len(), trunc, mode);
    for (v, c) in terms {
        s.add_term(v, c);
    }
    Ok(s)
}

/// Generating series of a matter class over one chamber. The fundamental
/// class is always taken at `t = 1`.
pub fn z_series(
    r: &[usize],
    st: Stability,
    class: MatterClass,
    trunc: usize,
    ctx: &EvalContext,
    t: &Scalar,
) -> Result<PSeries> {
    if ctx.r != r {
        return Err(Error::Invalid("context framing does not match".into()));
    }
    let fr = Framing::new(r);
    let ev = Evaluator::new(ctx)?;
    localization_sum(r, st, trunc, ctx.mode, |fp| fr.term(fp, st, class, &ev, t))
}

/// Weight `w` as a one-line list of exponents, for diagnostics.
pub fn describe(w: &Weight) -> String {
    format!("{w:?}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::Partition;
    use crate::scalars::{sample_context, Mode};

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn single_box_tangent() {
        let fr = Framing::new(&[1]);
        let b = fr.basis();
        let fp = PartitionTuple { entries: vec![vec![p(&[1])]] };
        for st in [Stability::Negative, Stability::Positive] {
            let t = fr.tangent_character(&fp, st);
            assert_eq!(t, Character::from_weights([b.q(1), b.kappa(1)]));
        }
        let v = fr.v_decomposition(&fp, Stability::Negative);
        assert_eq!(v[0], Character::from_weights([b.e(0, 1)]));
        let fund = fr.class_character(&fp, Stability::Negative, MatterClass::Fund);
        assert_eq!(fund.rank(), 2);
        assert!(fr.tangent_character(&PartitionTuple::empty(&[1]), Stability::Negative).is_zero());
    }

    #[test]
    fn two_row_decomposition() {
        let fr = Framing::new(&[1, 0]);
        let b = fr.basis();
        let fp = PartitionTuple { entries: vec![vec![p(&[1, 1])], vec![]] };
        let v = fr.v_decomposition(&fp, Stability::Negative);
        assert_eq!(v[0], Character::from_weights([b.e(0, 1)]));
        assert_eq!(v[1], Character::from_weights([wmul(&b.e(0, 1), &b.kappa(-1))]));
    }

    #[test]
    fn adj_class_is_tangent_and_matches_nekrasov() {
        for r in [vec![1usize], vec![2], vec![1, 1], vec![2, 1], vec![1, 0, 1]] {
            let fr = Framing::new(&r);
            let n = r.len();
            let ctx = sample_context(n, &r, 4, 21, Mode::Prime).unwrap();
            let ev = Evaluator::new(&ctx).unwrap();
            for st in [Stability::Negative, Stability::Positive] {
                for fp in enumerate_tuples(&r, 4) {
                    let tan = fr.tangent_character(&fp, st);
                    assert_eq!(fr.class_character(&fp, st, MatterClass::Adj), tan);
                    assert!(tan.terms().all(|(w, _)| fr.degree(w) == 0));
                    let want = fr.tangent_nekrasov(&fp, st, &ctx, &ctx.t).unwrap();
                    assert_eq!(ev.eu_t(&tan, &ctx.t).unwrap(), want, "r={r:?} {fp:?} {st:?}");
                }
            }
        }
    }

    #[test]
    fn first_coefficient_single_box() {
        let ctx = sample_context(1, &[1], 3, 2, Mode::Exact).unwrap();
        let z = z_series(&[1], Stability::Negative, MatterClass::Adj, 1, &ctx, &ctx.t).unwrap();
        let one = ctx.one();
        let want = ((&one - &(&ctx.t * &ctx.q.inv().unwrap())) * (&one - &(&ctx.t * &ctx.kappa.inv().unwrap())))
            .div(&((&one - &ctx.q.inv().unwrap()) * (&one - &ctx.kappa.inv().unwrap())))
            .unwrap();
        assert_eq!(z.coeff(&[1]), want);
        let z0 = z_series(&[1], Stability::Negative, MatterClass::Adj, 0, &ctx, &ctx.t).unwrap();
        assert_eq!(z0, PSeries::one(1, 0, Mode::Exact));
    }

    #[test]
    fn two_row_exponent() {
        let ctx = sample_context(2, &[1, 0], 2, 2, Mode::Prime).unwrap();
        let fp = PartitionTuple { entries: vec![vec![p(&[1, 1])], vec![]] };
        assert_eq!(dimension_vector(&fp, Stability::Negative), vec![1, 1]);
        let z = z_series(&[1, 0], Stability::Negative, MatterClass::Adj, 2, &ctx, &ctx.t).unwrap();
        assert!(!z.coeff(&[1, 1]).is_zero());
    }
}
