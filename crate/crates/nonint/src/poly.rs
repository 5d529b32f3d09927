//! Sparse multivariate polynomials.
//!
//! Coefficients are generic so the same arithmetic serves the f64 pipeline
//! and the exact-rational path (map files with `p/q` coefficients, exact
//! composition in the first-integral oracle). Exponent vectors always have
//! length `nvars`; terms with zero coefficient are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::hp::{Big, Ctx};

pub trait Coeff: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn to_f64(&self) -> f64;
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Coeff for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    // Scale down large numerator/denominator pairs before the lossy cast.
    let (n, d) = (r.numer(), r.denom());
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift = (nb.max(db) - 900).max(0) as u64;
    let n2 = n >> shift;
    let d2 = d >> shift;
    let nf = n2.to_string().parse::<f64>().unwrap_or(if n.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    });
    let df = d2.to_string().parse::<f64>().unwrap_or(f64::INFINITY);
    nf / df
}

#[derive(Debug, Clone, PartialEq)]
pub struct Poly<C: Coeff> {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, C>,
}

impl<C: Coeff> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, C::one());
        p
    }

    pub fn monomial(nvars: usize, exps: Vec<u16>, c: C) -> Self {
        assert_eq!(exps.len(), nvars);
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u16]) -> C {
        self.terms.get(exps).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u16>, c: C) {
        assert_eq!(exps.len(), self.nvars);
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let v = o.get().add(&c);
                if v.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = v;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in other.terms.iter() {
            out.add_term(e.clone(), c.neg());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        let mut out = Poly::zero(self.nvars);
        for (e, v) in self.terms.iter() {
            let w = v.mul(c);
            if !w.is_zero() {
                out.terms.insert(e.clone(), w);
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&C::one().neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.mul_truncated(other, usize::MAX)
    }

    /// Product, dropping every term of total degree above `max_deg`.
    pub fn mul_truncated(&self, other: &Self, max_deg: usize) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in self.terms.iter() {
            let da: usize = ea.iter().map(|&x| x as usize).sum();
            for (eb, cb) in other.terms.iter() {
                let db: usize = eb.iter().map(|&x| x as usize).sum();
                if da + db > max_deg {
                    continue;
                }
                let e: Vec<u16> = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.add_term(e, ca.mul(cb));
            }
        }
        out
    }

    pub fn total_degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn truncate_degree(&self, max_deg: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            if d <= max_deg {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Keep only the terms of total degree exactly `deg`.
    pub fn homogeneous_part(&self, deg: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let d: usize = e.iter().map(|&x| x as usize).sum();
            if d == deg {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] = k - 1;
            out.add_term(e2, c.mul(&C::from_i64(k as i64)));
        }
        out
    }

    pub fn eval(&self, x: &[C]) -> C {
        assert_eq!(x.len(), self.nvars);
        // Powers table per variable, up to the max exponent that appears.
        let mut maxes = vec![0u16; self.nvars];
        for e in self.terms.keys() {
            for (m, &ei) in maxes.iter_mut().zip(e) {
                *m = (*m).max(ei);
            }
        }
        let pows: Vec<Vec<C>> = (0..self.nvars)
            .map(|i| {
                let mut v = Vec::with_capacity(maxes[i] as usize + 1);
                v.push(C::one());
                for k in 1..=maxes[i] as usize {
                    let prev = v[k - 1].clone();
                    v.push(prev.mul(&x[i]));
                }
                v
            })
            .collect();
        let mut acc = C::zero();
        for (e, c) in self.terms.iter() {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = t.mul(&pows[i][ei as usize]);
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Substitute `args[i]` for variable `i`. `args` live in `m` variables.
    pub fn compose(&self, args: &[Self]) -> Self {
        self.compose_truncated(args, usize::MAX)
    }

    pub fn compose_truncated(&self, args: &[Self], max_deg: usize) -> Self {
        assert_eq!(args.len(), self.nvars);
        let m = args.first().map(|p| p.nvars).unwrap_or(0);
        // Memoized powers args[i]^k, built incrementally.
        let mut pows: Vec<Vec<Poly<C>>> = (0..self.nvars)
            .map(|_| vec![Poly::constant(m, C::one())])
            .collect();
        let mut out = Poly::zero(m);
        for (e, c) in self.terms.iter() {
            let mut t = Poly::constant(m, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                while pows[i].len() <= ei as usize {
                    let last = pows[i].last().unwrap();
                    let next = last.mul_truncated(&args[i], max_deg);
                    pows[i].push(next);
                }
                if ei > 0 {
                    t = t.mul_truncated(&pows[i][ei as usize], max_deg);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn map_coeffs<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Poly<D> {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            let d = f(c);
            if !d.is_zero() {
                out.terms.insert(e.clone(), d);
            }
        }
        out
    }

    pub fn to_f64_poly(&self) -> Poly<f64> {
        self.map_coeffs(|c| c.to_f64())
    }

    /// Largest absolute coefficient, for scale-aware thresholds.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

impl Poly<f64> {
    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        self.eval(x)
    }

    /// Drop terms with |coeff| below `tol` (cleanup after float composition).
    pub fn chop(&self, tol: f64) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in self.terms.iter() {
            if c.abs() > tol {
                out.terms.insert(e.clone(), *c);
            }
        }
        out
    }
}

/// A polynomial lifted to high precision for evaluation inside the
/// obstruction engine. Lifting from f64 is exact.
#[derive(Debug, Clone)]
pub struct HpPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u16>, Big)>,
}

impl HpPoly {
    pub fn from_f64_poly(ctx: &Ctx, p: &Poly<f64>) -> Self {
        HpPoly {
            nvars: p.nvars,
            terms: p.terms.iter().map(|(e, c)| (e.clone(), ctx.f(*c))).collect(),
        }
    }

    pub fn from_rational_poly(ctx: &Ctx, p: &Poly<BigRational>) -> Self {
        HpPoly {
            nvars: p.nvars,
            terms: p.terms.iter().map(|(e, c)| (e.clone(), ctx.rat(c))).collect(),
        }
    }

    pub fn eval(&self, ctx: &Ctx, x: &[Big]) -> Big {
        assert_eq!(x.len(), self.nvars);
        let mut maxes = vec![0u16; self.nvars];
        for (e, _) in &self.terms {
            for (m, &ei) in maxes.iter_mut().zip(e) {
                *m = (*m).max(ei);
            }
        }
        let pows: Vec<Vec<Big>> = (0..self.nvars)
            .map(|i| {
                let mut v = Vec::with_capacity(maxes[i] as usize + 1);
                v.push(ctx.one());
                for k in 1..=maxes[i] as usize {
                    let w = &v[k - 1] * &x[i];
                    v.push(w);
                }
                v
            })
            .collect();
        let mut acc = ctx.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    t = &t * &pows[i][ei as usize];
                }
            }
            acc = &acc + &t;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn henon_first_component() -> Poly<f64> {
        // 1 + y - 1.4 x^2
        let mut p = Poly::zero(2);
        p.add_term(vec![0, 0], 1.0);
        p.add_term(vec![0, 1], 1.0);
        p.add_term(vec![2, 0], -1.4);
        p
    }

    #[test]
    fn eval_henon_component() {
        let p = henon_first_component();
        assert_eq!(p.eval_f64(&[0.0, 0.0]), 1.0);
        assert!((p.eval_f64(&[1.0, 0.0]) - (-0.4)).abs() < 1e-15);
    }

    #[test]
    fn derivative_drops_and_scales() {
        let p = henon_first_component();
        let dx = p.derivative(0);
        assert_eq!(dx.coeff(&[1, 0]), -2.8);
        assert_eq!(dx.num_terms(), 1);
        let dy = p.derivative(1);
        assert_eq!(dy.coeff(&[0, 0]), 1.0);
    }

    #[test]
    fn compose_with_linear_args() {
        // p(x, y) = x*y composed with (2u, u + v) -> 2u^2 + 2uv
        let p = Poly::monomial(2, vec![1, 1], 1.0);
        let a0 = Poly::monomial(2, vec![1, 0], 2.0);
        let a1 = Poly::var(2, 0).add(&Poly::var(2, 1));
        let q = p.compose(&[a0, a1]);
        assert_eq!(q.coeff(&[2, 0]), 2.0);
        assert_eq!(q.coeff(&[1, 1]), 2.0);
        assert_eq!(q.num_terms(), 2);
    }

    #[test]
    fn exact_rational_composition() {
        use num_bigint::BigInt;
        let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        // q(x) = x^2 with x <- x/3: coefficient exactly 1/9
        let q = Poly::monomial(1, vec![2], r(1, 1));
        let arg = Poly::monomial(1, vec![1], r(1, 3));
        let c = q.compose(&[arg]);
        assert_eq!(c.coeff(&[2]), r(1, 9));
    }

    #[test]
    fn truncated_mul_respects_degree() {
        let x = Poly::var(1, 0);
        let p = x.mul(&x); // x^2
        let q = p.mul_truncated(&p, 3);
        assert!(q.is_zero());
    }

    #[test]
    fn hp_eval_matches_f64() {
        let ctx = Ctx::from_digits(40);
        let p = henon_first_component();
        let hp = HpPoly::from_f64_poly(&ctx, &p);
        let v = hp.eval(&ctx, &[ctx.f(0.3), ctx.f(-0.2)]);
        let expect = p.eval_f64(&[0.3, -0.2]);
        assert!((crate::hp::to_f64(&v) - expect).abs() < 1e-14);
    }
}
