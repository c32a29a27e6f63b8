//! Torus weights as exponent vectors and virtual modules as signed multisets.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalars::{EvalContext, Scalar, UniPoly, UniRational};

/// Exponent layout: `[s, kappa, e_0.., mu_0.., nu_0..]` over a flat list of
/// framing slots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Basis {
    pub slots: usize,
}

pub type Weight = Vec<i32>;

impl Basis {
    pub fn new(slots: usize) -> Basis {
        Basis { slots }
    }

    pub fn len(&self) -> usize {
        2 + 3 * self.slots
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn unit(&self) -> Weight {
        vec![0; self.len()]
    }

    fn single(&self, idx: usize, k: i32) -> Weight {
        let mut w = self.unit();
        w[idx] = k;
        w
    }

    pub fn s(&self, k: i32) -> Weight {
        self.single(0, k)
    }

    pub fn q(&self, k: i32) -> Weight {
        self.single(0, 2 * k)
    }

    pub fn kappa(&self, k: i32) -> Weight {
        self.single(1, k)
    }

    pub fn e(&self, f: usize, k: i32) -> Weight {
        self.single(2 + f, k)
    }

    pub fn mu(&self, f: usize, k: i32) -> Weight {
        self.single(2 + self.slots + f, k)
    }

    pub fn nu(&self, f: usize, k: i32) -> Weight {
        self.single(2 + 2 * self.slots + f, k)
    }

    pub fn e_index(&self, f: usize) -> usize {
        2 + f
    }
}

pub fn wmul(a: &[i32], b: &[i32]) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn winv(a: &[i32]) -> Weight {
    a.iter().map(|x| -x).collect()
}

/// `sum a_i` of several weights.
pub fn wprod(ws: &[&Weight]) -> Weight {
    let mut out = vec![0; ws[0].len()];
    for w in ws {
        for (o, x) in out.iter_mut().zip(w.iter()) {
            *o += x;
        }
    }
    out
}

/// Signed multiset of weights in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Character {
    terms: BTreeMap<Weight, i64>,
}

impl Character {
    pub fn new() -> Character {
        Character::default()
    }

    pub fn from_weights(ws: impl IntoIterator<Item = Weight>) -> Character {
        let mut c = Character::new();
        for w in ws {
            c.add(w, 1);
        }
        c
    }

    pub fn add(&mut self, w: Weight, m: i64) {
        if m == 0 {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(x) => {
                *x += m;
                if *x == 0 {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, m);
            }
        }
    }

    pub fn add_char(&mut self, o: &Character, sign: i64) {
        for (w, &m) in &o.terms {
            self.add(w.clone(), sign * m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Weight, i64)> {
        self.terms.iter().map(|(w, &m)| (w, m))
    }

    /// Signed total multiplicity (virtual rank).
    pub fn rank(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn dual(&self) -> Character {
        let mut c = Character::new();
        for (w, &m) in &self.terms {
            c.add(winv(w), m);
        }
        c
    }

    pub fn tensor(&self, o: &Character) -> Character {
        let mut c = Character::new();
        for (a, &m) in &self.terms {
            for (b, &n) in &o.terms {
                c.add(wmul(a, b), m * n);
            }
        }
        c
    }

    pub fn twist(&self, w: &[i32]) -> Character {
        let mut c = Character::new();
        for (a, &m) in &self.terms {
            c.add(wmul(a, w), m);
        }
        c
    }

    pub fn filter(&self, mut keep: impl FnMut(&Weight) -> bool) -> Character {
        Character { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, &m)| (w.clone(), m)).collect() }
    }
}

/// Values of the basis at a specialization point, with an optional slot whose
/// `e` value is kept as a formal variable.
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub basis: Basis,
    vals: Vec<Scalar>,
    invs: Vec<Scalar>,
    symbolic: Option<usize>,
}

impl Evaluator {
    pub fn new(ctx: &EvalContext) -> Result<Evaluator> {
        let basis = Basis::new(ctx.flat_len());
        let vals: Vec<Scalar> = [ctx.s.clone(), ctx.kappa.clone()]
            .into_iter()
            .chain(ctx.e_flat())
            .chain(ctx.mu_flat())
            .chain(ctx.nu_flat())
            .collect();
        Evaluator::from_values(basis, vals)
    }

    pub fn from_values(basis: Basis, vals: Vec<Scalar>) -> Result<Evaluator> {
        assert_eq!(vals.len(), basis.len());
        let invs = vals.iter().map(|v| v.inv()).collect::<Result<Vec<_>>>()?;
        Ok(Evaluator { basis, vals, invs, symbolic: None })
    }

    /// Treat the `e` value of flat slot `f` as a formal variable.
    pub fn with_symbolic(mut self, f: usize) -> Evaluator {
        self.symbolic = Some(self.basis.e_index(f));
        self
    }

    pub fn mode(&self) -> crate::scalars::Mode {
        self.vals[0].mode()
    }

    /// Value of a weight, ignoring the formal slot; also returns the formal exponent.
    pub fn split(&self, w: &[i32]) -> (Scalar, i32) {
        let mut acc = Scalar::one(self.mode());
        let mut k = 0;
        for (i, &x) in w.iter().enumerate() {
            if x == 0 {
                continue;
            }
            if Some(i) == self.symbolic {
                k = x;
                continue;
            }
            let p = if x > 0 { self.vals[i].pow_u(x as u64) } else { self.invs[i].pow_u((-x) as u64) };
            acc = acc * p;
        }
        (acc, k)
    }

    pub fn value(&self, w: &[i32]) -> Scalar {
        self.split(w).0
    }

    /// `prod (1 - t / w)^m` over the character.
    pub fn eu_t(&self, ch: &Character, t: &Scalar) -> Result<Scalar> {
        let one = Scalar::one(self.mode());
        let mut num = one.clone();
        let mut den = one.clone();
        for (w, m) in ch.terms() {
            let f = &one - &(t * &self.value(w).inv()?);
            let fm = f.pow_u(m.unsigned_abs());
            if m > 0 {
                num = num * fm;
            } else {
                den = den * fm;
            }
        }
        num.div(&den)
    }

    pub fn eu(&self, ch: &Character) -> Result<Scalar> {
        self.eu_t(ch, &Scalar::one(self.mode()))
    }

    /// `prod (1 - t / w)^m` as a rational function of the formal variable.
    pub fn eu_t_formal(&self, ch: &Character, t: &Scalar) -> Result<UniRational> {
        let mode = self.mode();
        let one = Scalar::one(mode);
        let mut num = UniPoly::constant(one.clone());
        let mut den = UniPoly::constant(one.clone());
        for (w, m) in ch.terms() {
            let (c, k) = self.split(w);
            let a = t.div(&c)?;
            // 1 - a x^{-k}
            let (fnum, fden) = match k.cmp(&0) {
                std::cmp::Ordering::Equal => (UniPoly::constant(&one - &a), UniPoly::constant(one.clone())),
                std::cmp::Ordering::Greater => (
                    UniPoly::monomial(one.clone(), k as usize).add(&UniPoly::constant(-&a)),
                    UniPoly::monomial(one.clone(), k as usize),
                ),
                std::cmp::Ordering::Less => (
                    UniPoly::constant(one.clone()).add(&UniPoly::monomial(-&a, (-k) as usize)),
                    UniPoly::constant(one.clone()),
                ),
            };
            if fnum.is_zero() {
                return Err(Error::DivisionByZero);
            }
            for _ in 0..m.unsigned_abs() {
                if m > 0 {
                    num = num.mul(&fnum);
                    den = den.mul(&fden);
                } else {
                    num = num.mul(&fden);
                    den = den.mul(&fnum);
                }
            }
        }
        UniRational::new(num, den)
    }
}
