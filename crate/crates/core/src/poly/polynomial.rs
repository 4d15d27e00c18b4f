use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::context::{Var, VarSet, VariableContext};
use crate::poly::monomial::Monomial;
use crate::poly::order::{Comparator, MonomialOrder};
use crate::poly::rational::{gcd_bigint, lcm_bigint, Rational};

/// Sparse polynomial over the rationals. Terms are kept in descending
/// degrevlex order with no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ctx: Arc<VariableContext>,
    terms: Vec<(Monomial, Rational)>,
}

/// Per-camera degree vector of a polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Multidegree {
    Homogeneous(Vec<u32>),
    Inhomogeneous,
}

pub(crate) fn same_ctx(a: &Arc<VariableContext>, b: &Arc<VariableContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn grevlex() -> Comparator {
    MonomialOrder::DegRevLex.comparator()
}

impl Polynomial {
    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Polynomial {
            ctx: ctx.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ctx: &Arc<VariableContext>, c: Rational) -> Self {
        Self::term(ctx, Monomial::one(), c)
    }

    pub fn one(ctx: &Arc<VariableContext>) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Arc<VariableContext>, v: Var) -> Self {
        assert!(v.0 < ctx.nvars(), "variable outside the context");
        Self::term(ctx, Monomial::var(v), Rational::one())
    }

    pub fn term(ctx: &Arc<VariableContext>, m: Monomial, c: Rational) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms<I>(ctx: &Arc<VariableContext>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(ctx, acc)
    }

    fn from_map(ctx: &Arc<VariableContext>, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<(Monomial, Rational)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let cmp = grevlex();
        terms.sort_unstable_by(|a, b| cmp.cmp(&b.0, &a.0));
        Polynomial {
            ctx: ctx.clone(),
            terms,
        }
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Leading term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Option<(Monomial, Rational)> {
        let cmp = order.comparator();
        self.terms
            .iter()
            .max_by(|a, b| cmp.cmp(&a.0, &b.0))
            .cloned()
    }

    pub fn vars(&self) -> VarSet {
        let mut s = VarSet::empty();
        for (m, _) in &self.terms {
            for v in m.vars() {
                s.insert(v);
            }
        }
        s
    }

    pub fn is_free_of(&self, vars: VarSet) -> bool {
        self.vars().0 & vars.0 == 0
    }

    fn check_ctx(&self, other: &Polynomial) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ctx(other)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let cmp = grevlex();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let sgn = |c: &Rational| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match cmp.cmp(&a[i].0, &b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0, sgn(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, sgn(c))));
        Polynomial {
            ctx: self.ctx.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = *ma * *mb;
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(e) => *e = &*e + &c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Self::from_map(&self.ctx, acc)
    }

    /// `c * m * self`. Multiplying by a monomial preserves degrevlex order.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ctx);
        }
        Polynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(t, d)| (*t * *m, d * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(), c)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ctx);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Degree vector per camera block, counting only image variables.
    pub fn multidegree(&self) -> Result<Multidegree> {
        let n = self.ctx.n_cameras();
        let degs = |m: &Monomial| {
            let mut d = vec![0u32; n];
            for (v, e) in m.support() {
                if let Some(b) = self.ctx.block(v) {
                    d[b] += e;
                }
            }
            d
        };
        let (first, rest) = self.terms.split_first().ok_or(Error::ZeroPolynomial)?;
        let d0 = degs(&first.0);
        if rest.iter().all(|(m, _)| degs(m) == d0) {
            Ok(Multidegree::Homogeneous(d0))
        } else {
            Ok(Multidegree::Inhomogeneous)
        }
    }

    pub fn is_multihomogeneous(&self) -> bool {
        self.is_zero() || matches!(self.multidegree(), Ok(Multidegree::Homogeneous(_)))
    }

    /// Standard-graded homogeneity in all variables.
    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Simultaneous substitution of the mapped variables.
    pub fn substitute(&self, map: &HashMap<Var, Polynomial>) -> Result<Polynomial> {
        if map.values().any(|p| !same_ctx(&p.ctx, &self.ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.substitute_into(&self.ctx, |v| map.get(&v).cloned(), |v| v))
    }

    /// Rewrites `self` into `target`: variables with a replacement are
    /// substituted, the rest are renamed by `rename`.
    pub(crate) fn substitute_into(
        &self,
        target: &Arc<VariableContext>,
        replace: impl Fn(Var) -> Option<Polynomial>,
        rename: impl Fn(Var) -> Var,
    ) -> Polynomial {
        let mut powers: HashMap<(Var, u32), Polynomial> = HashMap::new();
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        let mut replaced: Vec<Option<Polynomial>> = vec![None; self.ctx.nvars()];
        for (i, slot) in replaced.iter_mut().enumerate() {
            *slot = replace(Var(i));
        }
        for (m, c) in &self.terms {
            let mut kept = Monomial::one();
            let mut factor: Option<Polynomial> = None;
            for (v, e) in m.support() {
                match &replaced[v.0] {
                    None => kept = kept * Monomial::var_pow(rename(v), e),
                    Some(p) => {
                        let pe = powers.entry((v, e)).or_insert_with(|| p.pow(e)).clone();
                        factor = Some(match factor {
                            None => pe,
                            Some(f) => f.product(&pe),
                        });
                    }
                }
            }
            match factor {
                None => {
                    let e = acc.entry(kept).or_insert_with(Rational::zero);
                    *e = &*e + c;
                }
                Some(f) => {
                    for (fm, fc) in &f.terms {
                        let e = acc.entry(*fm * kept).or_insert_with(Rational::zero);
                        *e = &*e + &(fc * c);
                    }
                }
            }
        }
        Self::from_map(target, acc)
    }

    /// Evaluates at a full assignment indexed by variable.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        assert!(values.len() >= self.ctx.nvars());
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.support() {
                t = &t * &values[v.0].pow(e);
                if t.is_zero() {
                    break;
                }
            }
            total = &total + &t;
        }
        total
    }

    /// Evaluates at an image tuple, one coordinate vector per camera.
    /// Auxiliary variables are set to zero.
    pub fn evaluate_image(&self, points: &[Vec<Rational>]) -> Result<Rational> {
        if points.len() != self.ctx.n_cameras() || points.iter().any(|p| p.len() != self.ctx.block_size()) {
            return Err(Error::Dimension(format!(
                "expected {} image points of length {}",
                self.ctx.n_cameras(),
                self.ctx.block_size()
            )));
        }
        let mut values = vec![Rational::zero(); self.ctx.nvars()];
        for (cam, p) in points.iter().enumerate() {
            for (c, val) in p.iter().enumerate() {
                values[self.ctx.image_var(cam, c).0] = val.clone();
            }
        }
        Ok(self.evaluate(&values))
    }

    /// Primitive integer representative with positive leading coefficient.
    pub fn canonical(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for (_, c) in &self.terms {
            den = lcm_bigint(&den, &c.denom());
            num = gcd_bigint(&num, &c.numer());
        }
        let mut scale = Rational::from_bigints(den, num.abs()).expect("nonzero content");
        if self.terms[0].1.is_negative() {
            scale = -scale;
        }
        self.scale(&scale)
    }

    /// Monic representative under degrevlex.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn parse(ctx: &Arc<VariableContext>, s: &str) -> Result<Polynomial> {
        crate::poly::parse::parse_polynomial(ctx, s)
    }

    /// Moves the polynomial into another context with the same layout of
    /// the variables it uses.
    pub fn map_vars(&self, target: &Arc<VariableContext>, f: impl Fn(Var) -> Var) -> Polynomial {
        self.substitute_into(target, |_| None, f)
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut vars = m.support();
        vars.sort_by_key(|(v, _)| self.ctx.print_key(*v));
        vars.iter()
            .map(|&(v, e)| {
                let name = self.ctx.var_name(v);
                if e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ctx(&self.ctx, &other.ctx) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => write!(f, "\u{2212}")?,
                (0, false) => {}
                (_, true) => write!(f, " \u{2212} ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", self.fmt_monomial(m))?;
            } else {
                write!(f, "{a}*{}", self.fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Operator forms panic on a context mismatch; use the `try_*` methods to
// get an error instead.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial context mismatch")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial context mismatch")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial context mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&Rational::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &'a Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<VariableContext> {
        VariableContext::new(n).unwrap()
    }

    fn p(c: &Arc<VariableContext>, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    #[test]
    fn cancellation_and_products() {
        let c = ctx(2);
        assert_eq!(p(&c, "x1 + y1") + p(&c, "-x1"), p(&c, "y1"));
        assert_eq!(p(&c, "x1 - y1") * p(&c, "x1 + y1"), p(&c, "x1^2 - y1^2"));
        assert_eq!(p(&c, "1/2*x1") * p(&c, "2/3*x1"), p(&c, "1/3*x1^2"));
    }

    #[test]
    fn mismatched_contexts_are_rejected() {
        let a = p(&ctx(2), "x1");
        let b = p(&ctx(3), "x1");
        assert_eq!(a.try_add(&b), Err(Error::ContextMismatch));
    }

    #[test]
    fn multidegrees() {
        let c = ctx(2);
        assert_eq!(p(&c, "y1*z2 - y2*z1").multidegree(), Ok(Multidegree::Homogeneous(vec![1, 1])));
        assert_eq!(p(&c, "x1 + x1*y1").multidegree(), Ok(Multidegree::Inhomogeneous));
        assert_eq!(Polynomial::zero(&c).multidegree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let c = ctx(2);
        let mut map = HashMap::new();
        map.insert(c.x(0), p(&c, "y1"));
        map.insert(c.y(0), p(&c, "x1"));
        assert_eq!(p(&c, "x1^2*y1").substitute(&map).unwrap(), p(&c, "x1*y1^2"));
        let mut z = HashMap::new();
        z.insert(c.z(0), Polynomial::one(&c));
        z.insert(c.z(1), Polynomial::one(&c));
        assert_eq!(p(&c, "y1*z2 - y2*z1").substitute(&z).unwrap(), p(&c, "y1 - y2"));
    }

    #[test]
    fn canonical_text() {
        let c = ctx(3);
        let f = p(&c, "-x1*x3*y2 - x1*y2*y3 + x2*x3*y1 + x3*y1*y2");
        assert_eq!(
            f.canonical().to_string(),
            "x2*x3*y1 \u{2212} x1*x3*y2 + x3*y1*y2 \u{2212} x1*y2*y3"
        );
        assert_eq!(p(&c, "1/2*x1 - 1/3").canonical().to_string(), "3*x1 \u{2212} 2");
        assert_eq!(p(&c, "-2*x1^2").to_string(), "\u{2212}2*x1^2");
        assert_eq!(Polynomial::zero(&c).to_string(), "0");
    }

    #[test]
    fn evaluation() {
        let c = ctx(2);
        let f = p(&c, "y1*z2 - y2*z1");
        let pts = vec![
            vec![Rational::from_int(1), Rational::from_int(2), Rational::from_int(3)],
            vec![Rational::from_int(2), Rational::from_int(2), Rational::from_int(3)],
        ];
        assert_eq!(f.evaluate_image(&pts).unwrap(), Rational::zero());
    }
}
