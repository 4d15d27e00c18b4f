//! Buchberger's algorithm with the Gebauer-Moeller pair update.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::poly::context::VariableContext;
use crate::poly::monomial::Monomial;
use crate::poly::order::{Comparator, MonomialOrder};
use crate::poly::polynomial::Polynomial;
use crate::poly::rational::Rational;

pub(crate) type Term = (Monomial, Rational);

/// Terms of `p` sorted descending under `cmp`.
pub(crate) fn sorted_terms(p: &Polynomial, cmp: &Comparator) -> Vec<Term> {
    let mut t = p.terms().to_vec();
    if cmp.order() != MonomialOrder::DegRevLex {
        t.sort_unstable_by(|a, b| cmp.cmp(&b.0, &a.0));
    }
    t
}

fn make_monic(t: &mut [Term]) {
    if let Some((_, c)) = t.first() {
        if !c.is_one() {
            let inv = c.recip();
            for (_, d) in t.iter_mut() {
                *d = &*d * &inv;
            }
        }
    }
}

/// `a - c*m*b`, both inputs descending; returns a descending vector.
fn sub_mul(a: &[Term], c: &Rational, m: &Monomial, b: &[Term], cmp: &Comparator) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let bm = b[j].0 * *m;
        match cmp.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, -&(c * &b[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &a[i].1 - &(c * &b[j].1);
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0 * *m, -&(c * &t.1)));
    }
    out
}

pub(crate) struct Elem {
    pub terms: Vec<Term>,
    sugar: u32,
}

impl Elem {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }
}

/// Picks the shortest element whose leading monomial divides `m`.
fn find_reducer<'a>(m: &Monomial, basis: &'a [Elem], skip: Option<usize>) -> Option<&'a Elem> {
    let mut best: Option<&Elem> = None;
    for (k, e) in basis.iter().enumerate() {
        if Some(k) == skip {
            continue;
        }
        if e.lm().divides(m) && best.map_or(true, |b| e.terms.len() < b.terms.len()) {
            best = Some(e);
        }
    }
    best
}

/// Full reduction of `f` modulo monic `basis`.
pub(crate) fn reduce(f: Vec<Term>, basis: &[Elem], skip: Option<usize>, cmp: &Comparator) -> Vec<Term> {
    let mut rem: Vec<Term> = Vec::new();
    let mut f = f;
    let mut start = 0;
    while start < f.len() {
        let (lm, lc) = (f[start].0, f[start].1.clone());
        match find_reducer(&lm, basis, skip) {
            Some(g) => {
                let q = lm.div_exact(g.lm());
                f = sub_mul(&f[start + 1..], &lc, &q, &g.terms[1..], cmp);
                start = 0;
            }
            None => {
                rem.push(f[start].clone());
                start += 1;
            }
        }
    }
    rem
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    cmp: Comparator,
    basis: Vec<Elem>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn pair(&self, i: usize, j: usize) -> Pair {
        let (a, b) = (&self.basis[i], &self.basis[j]);
        let lcm = a.lm().lcm(b.lm());
        let sugar = (a.sugar + lcm.degree() - a.lm().degree()).max(b.sugar + lcm.degree() - b.lm().degree());
        Pair { i, j, lcm, sugar }
    }

    fn update(&mut self, h: usize) {
        let lh = *self.basis[h].lm();
        let cands: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Monomial> = cands.iter().map(|&g| lh.lcm(self.basis[g].lm())).collect();
        let mut kept: Vec<usize> = Vec::new();
        for k in 0..cands.len() {
            let g1 = cands[k];
            let coprime = lh.is_coprime(self.basis[g1].lm());
            let dominated = || {
                lcms[k + 1..].iter().any(|l| l.divides(&lcms[k])) || kept.iter().any(|&d| lcms[d].divides(&lcms[k]))
            };
            if coprime || !dominated() {
                kept.push(k);
            }
        }
        let new_pairs: Vec<Pair> = kept
            .iter()
            .filter(|&&k| !lh.is_coprime(self.basis[cands[k]].lm()))
            .map(|&k| self.pair(cands[k], h))
            .collect();
        let basis = &self.basis;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm)
                && basis[p.i].lm().lcm(&lh) != p.lcm
                && basis[p.j].lm().lcm(&lh) != p.lcm)
        });
        self.pairs.extend(new_pairs);
        for g in 0..h {
            if self.active[g] && lh.divides(self.basis[g].lm()) {
                self.active[g] = false;
            }
        }
        self.active.push(true);
    }

    fn insert(&mut self, terms: Vec<Term>, sugar: u32) -> bool {
        let mut terms = terms;
        make_monic(&mut terms);
        let unit = terms[0].0.is_one();
        self.basis.push(Elem { terms, sugar });
        let h = self.basis.len() - 1;
        self.update(h);
        unit
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let cmp = self.cmp;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = a.sugar < b.sugar || (a.sugar == b.sugar && cmp.cmp(&a.lcm, &b.lcm) == Ordering::Less);
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Vec<Term> {
        let (a, b) = (&self.basis[p.i], &self.basis[p.j]);
        let ma = p.lcm.div_exact(a.lm());
        let mb = p.lcm.div_exact(b.lm());
        let left: Vec<Term> = a.terms[1..].iter().map(|(m, c)| (*m * ma, c.clone())).collect();
        sub_mul(&left, &Rational::one(), &mb, &b.terms[1..], &self.cmp)
    }
}

/// Reduced Groebner basis of the given generators, each sorted descending
/// under `cmp`. The result is sorted by ascending leading monomial.
pub(crate) fn buchberger(gens: Vec<Vec<Term>>, cmp: Comparator) -> Vec<Vec<Term>> {
    let mut gens: Vec<Vec<Term>> = gens.into_iter().filter(|g| !g.is_empty()).collect();
    gens.sort_by(|a, b| cmp.cmp(&a[0].0, &b[0].0).then(a.len().cmp(&b.len())));
    let mut eng = Engine {
        cmp,
        basis: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let unit = || vec![vec![(Monomial::one(), Rational::one())]];
    for g in gens {
        let sugar = g.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let r = reduce(g, &eng.basis, None, &cmp);
        if r.is_empty() {
            continue;
        }
        if eng.insert(r, sugar) {
            return unit();
        }
    }
    while let Some(p) = eng.select() {
        let s = eng.spoly(&p);
        if s.is_empty() {
            continue;
        }
        let r = reduce(s, &eng.basis, None, &cmp);
        if r.is_empty() {
            continue;
        }
        if eng.insert(r, p.sugar) {
            return unit();
        }
    }
    // The active elements form a minimal basis; interreduce their tails.
    let mut minimal: Vec<Elem> = eng
        .basis
        .into_iter()
        .zip(eng.active)
        .filter(|(_, a)| *a)
        .map(|(e, _)| e)
        .collect();
    minimal.sort_by(|a, b| cmp.cmp(a.lm(), b.lm()));
    for k in 0..minimal.len() {
        let terms = std::mem::take(&mut minimal[k].terms);
        let head = terms[0].clone();
        let tail = reduce(terms[1..].to_vec(), &minimal, Some(k), &cmp);
        let mut t = Vec::with_capacity(tail.len() + 1);
        t.push(head);
        t.extend(tail);
        minimal[k].terms = t;
    }
    minimal.into_iter().map(|e| e.terms).collect()
}

/// A reduced Groebner basis for a fixed order.
#[derive(Debug)]
pub struct GroebnerBasis {
    ctx: Arc<VariableContext>,
    order: MonomialOrder,
    sorted: Vec<Vec<Term>>,
    polys: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub(crate) fn compute(ctx: &Arc<VariableContext>, gens: &[Polynomial], order: MonomialOrder) -> Self {
        let cmp = order.comparator();
        let input: Vec<Vec<Term>> = gens.iter().map(|g| sorted_terms(g, &cmp)).collect();
        let sorted = buchberger(input, cmp);
        let polys = sorted
            .iter()
            .map(|t| Polynomial::from_terms(ctx, t.iter().cloned()))
            .collect();
        GroebnerBasis {
            ctx: ctx.clone(),
            order,
            sorted,
            polys,
        }
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn ctx(&self) -> &Arc<VariableContext> {
        &self.ctx
    }

    /// Basis elements, monic under the basis order, by ascending leading term.
    pub fn elements(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|t| t[0].0).collect()
    }

    /// Whether the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.sorted.len() == 1 && self.sorted[0][0].0.is_one()
    }

    fn elems(&self) -> Vec<Elem> {
        self.sorted
            .iter()
            .map(|t| Elem {
                terms: t.clone(),
                sugar: 0,
            })
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let cmp = self.order.comparator();
        let basis = self.elems();
        let r = reduce(sorted_terms(f, &cmp), &basis, None, &cmp);
        Polynomial::from_terms(&self.ctx, r)
    }

    pub fn reduces_to_zero(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Checks that the basis is reduced: monic, and no term of any element
    /// divisible by the leading term of another.
    pub fn is_reduced(&self) -> bool {
        let leads = self.leading_monomials();
        self.sorted.iter().enumerate().all(|(k, t)| {
            t[0].1.is_one()
                && t.iter()
                    .all(|(m, _)| leads.iter().enumerate().all(|(l, lm)| l == k || !lm.divides(m)))
        })
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let cmp = self.order.comparator();
        let basis = self.elems();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let (a, b) = (&basis[i], &basis[j]);
                let lcm = a.lm().lcm(b.lm());
                let ma = lcm.div_exact(a.lm());
                let mb = lcm.div_exact(b.lm());
                let left: Vec<Term> = a.terms[1..].iter().map(|(m, c)| (*m * ma, c.clone())).collect();
                let s = sub_mul(&left, &Rational::one(), &mb, &b.terms[1..], &cmp);
                if !reduce(s, &basis, None, &cmp).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
