//! Ideals of the polynomial ring and the operations relating them.

mod groebner;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

pub use groebner::GroebnerBasis;

use crate::error::{Error, Result};
use crate::poly::context::{Var, VarSet, VariableContext};
use crate::poly::monomial::Monomial;
use crate::poly::order::MonomialOrder;
use crate::poly::polynomial::{same_ctx, Polynomial};
use crate::poly::rational::Rational;

/// Finitely generated ideal with a per-order cache of reduced bases.
pub struct Ideal {
    ctx: Arc<VariableContext>,
    gens: Vec<Polynomial>,
    gb_cache: Mutex<HashMap<MonomialOrder, Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ctx: self.ctx.clone(),
            gens: self.gens.clone(),
            gb_cache: Mutex::new(self.gb_cache.lock().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.gens.iter()).finish()
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ctx: &Arc<VariableContext>, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ctx(g.ctx(), ctx)) {
            return Err(Error::ContextMismatch);
        }
        Ok(Ideal {
            ctx: ctx.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            gb_cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zero(ctx: &Arc<VariableContext>) -> Self {
        Ideal::new(ctx, Vec::new()).expect("no generators")
    }

    pub fn unit(ctx: &Arc<VariableContext>) -> Self {
        Ideal::new(ctx, vec![Polynomial::one(ctx)]).expect("same context")
    }

    pub fn principal(f: &Polynomial) -> Self {
        Ideal::new(f.ctx(), vec![f.clone()]).expect("same context")
    }

    /// Ideal generated by a set of variables.
    pub fn of_vars(ctx: &Arc<VariableContext>, vars: &[Var]) -> Self {
        Ideal::new(ctx, vars.iter().map(|&v| Polynomial::var(ctx, v)).collect()).expect("same context")
    }

    pub fn parse(ctx: &Arc<VariableContext>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| Polynomial::parse(ctx, s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ctx, polys)
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Generators in canonical primitive form, with duplicates removed.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        let mut out: Vec<Polynomial> = Vec::new();
        for g in &self.gens {
            let c = g.canonical();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    }

    fn check(&self, other: &Ideal) -> Result<()> {
        if same_ctx(&self.ctx, &other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn groebner(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some(gb) = self.gb_cache.lock().expect("cache lock").get(&order) {
            return gb.clone();
        }
        // Computed outside the lock; concurrent callers produce the same basis.
        let gb = Arc::new(GroebnerBasis::compute(&self.ctx, &self.gens, order));
        self.gb_cache
            .lock()
            .expect("cache lock")
            .entry(order)
            .or_insert(gb)
            .clone()
    }

    pub fn gb(&self) -> Arc<GroebnerBasis> {
        self.groebner(MonomialOrder::DegRevLex)
    }

    /// The ideal generated by the reduced degrevlex basis, canonicalized.
    pub fn reduced_generators(&self) -> Vec<Polynomial> {
        self.gb().elements().iter().map(|g| g.canonical()).collect()
    }

    /// Orders with a cached basis.
    pub fn cached_orders(&self) -> Vec<MonomialOrder> {
        self.gb_cache.lock().expect("cache lock").keys().copied().collect()
    }

    pub fn normal_form(&self, f: &Polynomial, order: MonomialOrder) -> Result<Polynomial> {
        if !same_ctx(f.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        Ok(self.groebner(order).normal_form(f))
    }

    pub fn member(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f, MonomialOrder::DegRevLex)?.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.gb().is_unit()
    }

    /// Generators of `other` that are not in `self`.
    pub fn non_members(&self, other: &Ideal) -> Result<Vec<Polynomial>> {
        self.check(other)?;
        let gb = self.gb();
        Ok(other.gens.iter().filter(|g| !gb.reduces_to_zero(g)).cloned().collect())
    }

    /// A minimal generating set of a homogeneous ideal, taken from the
    /// reduced basis in order of increasing degree.
    pub fn minimal_generators(&self) -> Vec<Polynomial> {
        let mut cands = self.reduced_generators();
        cands.sort_by_key(|g| g.total_degree().unwrap_or(0));
        let mut kept: Vec<Polynomial> = Vec::new();
        for g in &cands {
            let sub = Ideal::new(&self.ctx, kept.clone()).expect("same context");
            if sub.is_zero() || !sub.member(g).expect("same context") {
                kept.push(g.clone());
            }
        }
        kept
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        self.check(other)?;
        let gb = self.gb();
        Ok(other.gens.iter().all(|g| gb.reduces_to_zero(g)))
    }

    pub fn equal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ctx, gens)
    }

    pub fn sum_all(ctx: &Arc<VariableContext>, ideals: &[&Ideal]) -> Result<Ideal> {
        let mut gens = Vec::new();
        for i in ideals {
            if !same_ctx(i.ctx(), ctx) {
                return Err(Error::ContextMismatch);
            }
            gens.extend(i.gens.iter().cloned());
        }
        Ideal::new(ctx, gens)
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(&self.ctx, gens)
    }

    /// Elements of `I ∩ Q[vars \ front]`, read off an elimination basis.
    pub fn eliminate(&self, front: VarSet) -> Ideal {
        if front.is_empty() {
            return self.clone();
        }
        let gb = self.groebner(MonomialOrder::Elimination(front));
        let gens = gb
            .elements()
            .iter()
            .filter(|g| g.is_free_of(front))
            .cloned()
            .collect();
        Ideal::new(&self.ctx, gens).expect("same context")
    }

    fn uses(&self, v: Var) -> bool {
        self.gens.iter().any(|g| g.vars().contains(v))
    }

    /// `I ∩ J`, eliminating the scratch variable from `s*I + (1-s)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ctx));
        }
        if self.is_unit_cached() {
            return Ok(other.clone());
        }
        if other.is_unit_cached() {
            return Ok(self.clone());
        }
        let s = self.ctx.scratch();
        if self.uses(s) || other.uses(s) {
            return Err(Error::Precondition("the scratch variable `s` is reserved for intersections".into()));
        }
        let sp = Polynomial::var(&self.ctx, s);
        let one_minus_s = &Polynomial::one(&self.ctx) - &sp;
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| &sp * g).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_s * g));
        let front = VarSet::empty().with(s);
        Ok(Ideal::new(&self.ctx, gens)?.eliminate(front))
    }

    pub fn intersect_all(ideals: &[Ideal]) -> Result<Ideal> {
        let (first, rest) = ideals.split_first().ok_or_else(|| Error::Precondition("empty intersection".into()))?;
        let mut acc = first.clone();
        for i in rest {
            acc = acc.intersect(i)?;
        }
        Ok(acc)
    }

    fn is_unit_cached(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant())
    }

    fn all_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    /// `I : x` for a single variable.
    pub fn colon_var(&self, x: Var) -> Ideal {
        if self.all_homogeneous() {
            // In degrevlex with x last, a homogeneous element is divisible by
            // x iff its leading term is; dividing those out gives a basis of
            // the colon.
            let gb = self.groebner(MonomialOrder::DegRevLexLast(x));
            let xm = Monomial::var(x);
            let gens = gb
                .elements()
                .iter()
                .map(|g| divide_by_monomial(g, &xm).unwrap_or_else(|| g.clone()))
                .collect();
            return Ideal::new(&self.ctx, gens).expect("same context");
        }
        self.colon_principal_general(&Polynomial::var(&self.ctx, x))
            .expect("variable is nonzero")
    }

    /// `I : x^∞` for a single variable.
    pub fn saturate_var(&self, x: Var) -> Ideal {
        let mut cur = self.clone();
        loop {
            let next = cur.colon_var(x);
            if cur.contains(&next).expect("same context") {
                return cur;
            }
            cur = next;
        }
    }

    fn colon_principal_general(&self, g: &Polynomial) -> Result<Ideal> {
        if g.is_zero() {
            return Err(Error::ZeroColon);
        }
        let meet = self.intersect(&Ideal::principal(g))?;
        let gens = meet
            .gens
            .iter()
            .map(|h| h.div_exact(g).expect("elements of I ∩ <g> are multiples of g"))
            .collect();
        Ideal::new(&self.ctx, gens)
    }

    /// `I : <g>`. Monomials are handled one variable at a time.
    pub fn colon_principal(&self, g: &Polynomial) -> Result<Ideal> {
        if !same_ctx(g.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        if g.is_zero() {
            return Err(Error::ZeroColon);
        }
        if g.is_constant() {
            return Ok(self.clone());
        }
        if g.is_monomial() {
            let mut cur = self.clone();
            for (v, e) in g.terms()[0].0.support() {
                for _ in 0..e {
                    cur = cur.colon_var(v);
                }
            }
            return Ok(cur);
        }
        self.colon_principal_general(g)
    }

    /// `I : J = ⋂_g (I : g)` over the generators of `J`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check(other)?;
        if other.is_zero() {
            return Err(Error::ZeroColon);
        }
        let mut memo: HashMap<Polynomial, Ideal> = HashMap::new();
        let mut parts = Vec::new();
        for g in &other.gens {
            let key = g.canonical();
            if !memo.contains_key(&key) {
                let c = self.colon_principal(&key)?;
                memo.insert(key.clone(), c);
            }
            parts.push(memo[&key].clone());
        }
        Ideal::intersect_all(&parts)
    }

    /// `I : m` for the irrelevant ideal.
    ///
    /// Uses `m = m_1 m_2 ... m_n` with `m_i = <x_i, y_i, z_i>`, so
    /// `I : m = (...((I : m_1) : m_2) ...) : m_n`, and each `I : m_i` is the
    /// intersection of three variable colons.
    pub fn colon_irrelevant(&self) -> Result<Ideal> {
        if !self.ctx.is_homogeneous() {
            return self.colon(&IrrelevantIdeal::new(&self.ctx).ideal);
        }
        let mut cur = self.clone();
        for cam in 0..self.ctx.n_cameras() {
            let parts: Vec<Ideal> = self.ctx.block_vars(cam).into_iter().map(|v| cur.colon_var(v)).collect();
            cur = Ideal::intersect_all(&parts)?;
        }
        Ok(cur)
    }

    /// `I : J^∞`.
    pub fn saturate(&self, other: &Ideal) -> Result<Ideal> {
        let mut cur = self.clone();
        loop {
            let next = cur.colon(other)?;
            if cur.contains(&next)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Rabinowitsch test: `f ∈ √I` iff `1 ∈ I + <1 - t f>`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        if !same_ctx(f.ctx(), &self.ctx) {
            return Err(Error::ContextMismatch);
        }
        let t = self.ctx.rabinowitsch();
        if self.uses(t) || f.vars().contains(t) {
            return Err(Error::Precondition("the variable `t` is reserved for radical membership".into()));
        }
        if f.is_zero() {
            return Ok(true);
        }
        let mut gens = self.gens.clone();
        gens.push(&Polynomial::one(&self.ctx) - &(&Polynomial::var(&self.ctx, t) * f));
        Ok(Ideal::new(&self.ctx, gens)?.is_unit())
    }

    /// The image under `z_i -> 1`, in the dehomogenized context.
    pub fn dehomogenize(&self) -> Ideal {
        let target = self.ctx.dehomogenized();
        let gens = self.gens.iter().map(|g| dehomogenize(g, &target)).collect();
        Ideal::new(&target, gens).expect("same context")
    }
}

/// `f / m` if the monomial divides every term.
fn divide_by_monomial(f: &Polynomial, m: &Monomial) -> Option<Polynomial> {
    if f.terms().iter().all(|(t, _)| m.divides(t)) {
        Some(Polynomial::from_terms(
            f.ctx(),
            f.terms().iter().map(|(t, c)| (t.div_exact(m), c.clone())),
        ))
    } else {
        None
    }
}

/// Sets every `z_i` to 1 and moves the result into `target`.
pub fn dehomogenize(f: &Polynomial, target: &Arc<VariableContext>) -> Polynomial {
    let ctx = f.ctx().clone();
    if !ctx.is_homogeneous() {
        return f.clone();
    }
    f.substitute_into(
        target,
        |v| match ctx.image_coords(v) {
            Some((_, 2)) => Some(Polynomial::one(target)),
            _ => None,
        },
        |v| match ctx.image_coords(v) {
            Some((cam, c)) => target.image_var(cam, c),
            None => v,
        },
    )
}

/// Multiplies each term by the least powers of `z_i` that make the result
/// multihomogeneous. Accepts polynomials from either context and returns one
/// in the homogeneous context.
pub fn homogenize(f: &Polynomial) -> Result<Polynomial> {
    let src = f.ctx().clone();
    let target = src.homogenized();
    if src.is_homogeneous() && (0..src.n_cameras()).any(|i| f.vars().contains(src.z(i))) {
        return Err(Error::Precondition("homogenize expects a polynomial free of z variables".into()));
    }
    let n = src.n_cameras();
    let rename = |v: Var| match src.image_coords(v) {
        Some((cam, c)) => target.image_var(cam, c),
        None => v,
    };
    let block_degs = |m: &Monomial| {
        let mut d = vec![0u32; n];
        for (v, e) in m.support() {
            if let Some(b) = src.block(v) {
                d[b] += e;
            }
        }
        d
    };
    let mut top = vec![0u32; n];
    for (m, _) in f.terms() {
        for (t, d) in top.iter_mut().zip(block_degs(m)) {
            *t = (*t).max(d);
        }
    }
    let terms: Vec<(Monomial, Rational)> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let d = block_degs(m);
            let mut out = Monomial::one();
            for (v, e) in m.support() {
                out = out * Monomial::var_pow(rename(v), e);
            }
            for i in 0..n {
                if top[i] > d[i] {
                    out = out * Monomial::var_pow(target.z(i), top[i] - d[i]);
                }
            }
            (out, c.clone())
        })
        .collect();
    Ok(Polynomial::from_terms(&target, terms))
}

/// The irrelevant ideal: all `3^n` products `w_1 ... w_n` with one image
/// variable from each camera.
#[derive(Debug, Clone)]
pub struct IrrelevantIdeal {
    n: usize,
    ideal: Ideal,
}

impl IrrelevantIdeal {
    pub fn new(ctx: &Arc<VariableContext>) -> Self {
        let n = ctx.n_cameras();
        let mut monos = vec![Monomial::one()];
        for cam in 0..n {
            let mut next = Vec::with_capacity(monos.len() * ctx.block_size());
            for m in &monos {
                for v in ctx.block_vars(cam) {
                    next.push(*m * Monomial::var(v));
                }
            }
            monos = next;
        }
        let gens = monos
            .into_iter()
            .map(|m| Polynomial::term(ctx, m, Rational::one()))
            .collect();
        IrrelevantIdeal {
            n,
            ideal: Ideal::new(ctx, gens).expect("same context"),
        }
    }

    pub fn n_cameras(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.generators()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// `⋂_i <x_i, y_i, z_i>` computed by Groebner intersections.
    pub fn as_intersection(ctx: &Arc<VariableContext>) -> Result<Ideal> {
        let parts: Vec<Ideal> = (0..ctx.n_cameras())
            .map(|cam| Ideal::of_vars(ctx, &ctx.block_vars(cam)))
            .collect();
        Ideal::intersect_all(&parts)
    }
}

impl Polynomial {
    /// Exact quotient `self / g`, or `None` if `g` does not divide `self`.
    pub fn div_exact(&self, g: &Polynomial) -> Option<Polynomial> {
        if g.is_zero() {
            return None;
        }
        let (glm, glc) = g.terms()[0].clone();
        let ginv = glc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((m, c)) = rem.terms().first().cloned() {
            let q = m.checked_div(&glm)?;
            let qc = &c * &ginv;
            rem = &rem - &g.mul_term(&q, &qc);
            quot.push((q, qc));
        }
        Some(Polynomial::from_terms(self.ctx(), quot))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: usize) -> Arc<VariableContext> {
        VariableContext::new(n).unwrap()
    }

    fn p(c: &Arc<VariableContext>, s: &str) -> Polynomial {
        Polynomial::parse(c, s).unwrap()
    }

    fn id(c: &Arc<VariableContext>, gens: &[&str]) -> Ideal {
        Ideal::parse(c, gens).unwrap()
    }

    #[test]
    fn lex_basis_of_a_linear_chain() {
        let c = ctx(1);
        let i = id(&c, &["x1 - y1", "y1 - z1"]);
        let gb = i.groebner(MonomialOrder::Lex);
        let mut got: Vec<String> = gb.elements().iter().map(|g| g.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["x1 \u{2212} z1", "y1 \u{2212} z1"]);
        assert!(gb.is_reduced() && gb.satisfies_buchberger_criterion());
        assert!(i.member(&p(&c, "x1 - z1")).unwrap());
        assert!(!id(&c, &["x1"]).member(&p(&c, "y1")).unwrap());
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let c = ctx(1);
        let gb = id(&c, &["x1^2", "x1*y1"]).gb();
        assert_eq!(gb.len(), 2);
        assert!(gb.is_reduced());
    }

    #[test]
    fn containment_and_equality() {
        let c = ctx(1);
        assert!(id(&c, &["x1", "y1"]).contains(&id(&c, &["x1^2 + x1*y1"])).unwrap());
        assert!(id(&c, &["x1"]).equal(&id(&c, &["2*x1"])).unwrap());
    }

    #[test]
    fn intersection_and_colon() {
        let c = ctx(1);
        let meet = id(&c, &["x1"]).intersect(&id(&c, &["y1"])).unwrap();
        assert!(meet.equal(&id(&c, &["x1*y1"])).unwrap());
        let i = id(&c, &["x1^2", "x1*y1"]);
        assert!(i.colon(&id(&c, &["x1"])).unwrap().equal(&id(&c, &["x1", "y1"])).unwrap());
        assert!(i.colon(&Ideal::unit(&c)).unwrap().equal(&i).unwrap());
        assert_eq!(i.colon(&Ideal::zero(&c)).unwrap_err(), Error::ZeroColon);
        let general = i.colon_principal_general(&p(&c, "x1")).unwrap();
        assert!(general.equal(&id(&c, &["x1", "y1"])).unwrap());
    }

    #[test]
    fn elimination() {
        let c = ctx(1);
        let i = id(&c, &["q1 - x1", "q1 - y1"]);
        let e = i.eliminate(VarSet::empty().with(c.world(1)));
        assert!(e.equal(&id(&c, &["x1 - y1"])).unwrap());
        assert!(e.generators().iter().all(|g| g.is_free_of(VarSet::empty().with(c.world(1)))));
    }

    #[test]
    fn radical_membership() {
        let c = ctx(1);
        let i = id(&c, &["x1^2"]);
        assert!(i.radical_member(&p(&c, "x1")).unwrap());
        assert!(!i.radical_member(&p(&c, "x1 + 1")).unwrap());
    }

    #[test]
    fn dehomogenize_and_homogenize() {
        let c = ctx(2);
        assert!(id(&c, &["z1"]).dehomogenize().is_unit());
        let d = id(&c, &["y1*z2 - y2*z1"]).dehomogenize();
        let dc = c.dehomogenized();
        assert!(d.equal(&id(&dc, &["y1 - y2"])).unwrap());
        assert_eq!(homogenize(&p(&dc, "y1 - y2")).unwrap(), p(&c, "y1*z2 - y2*z1"));
        assert_eq!(homogenize(&p(&dc, "x1")).unwrap(), p(&c, "x1"));
        let c1 = ctx(1);
        let d1 = c1.dehomogenized();
        assert_eq!(homogenize(&p(&d1, "x1*y1 + 1")).unwrap(), p(&c1, "x1*y1 + z1^2"));
    }

    #[test]
    fn irrelevant_ideal_is_the_intersection_of_blocks() {
        for n in [2, 3] {
            let c = ctx(n);
            let m = IrrelevantIdeal::new(&c);
            assert_eq!(m.generators().len(), 3usize.pow(n as u32));
            let meet = IrrelevantIdeal::as_intersection(&c).unwrap();
            assert!(meet.equal(m.ideal()).unwrap());
        }
    }

    #[test]
    fn colon_by_the_irrelevant_ideal_matches_the_general_route() {
        let c = ctx(2);
        let i = id(&c, &["x1*x2", "x1*y2*z1", "y1^2*z2 - x1*y1*x2"]);
        let fast = i.colon_irrelevant().unwrap();
        let slow = i.colon(IrrelevantIdeal::new(&c).ideal()).unwrap();
        assert!(fast.equal(&slow).unwrap());
    }

    #[test]
    fn exact_division() {
        let c = ctx(1);
        let f = p(&c, "x1^2 - y1^2");
        assert_eq!(f.div_exact(&p(&c, "x1 - y1")).unwrap(), p(&c, "x1 + y1"));
        assert!(f.div_exact(&p(&c, "x1 - z1")).is_none());
    }
}
