//! The theorem suite.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;

use crate::camera::{rng_from_seed, Arrangement};
use crate::error::{Error, Result};
use crate::focal::{faugeras_ideal, k_focal_ideal, ma_ideal};
use crate::ideal::{Ideal, IrrelevantIdeal};
use crate::multiview::report::{Check, Expectation, VerificationReport, Witness};
use crate::multiview::witness::{limit_point_check, witness_coplanar};
use crate::multiview::{multiview_ideal, Method};
use crate::poly::{Rational, VariableContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    Thm3_6,
    Cor3_3,
    Lem4_8,
    Thm4_9,
    Thm4_11,
    Thm4_7c,
    Thm5_6,
    Cor6_1,
    Cor6_3,
    Cor6_4,
    Cor3_8,
}

impl TheoremId {
    pub const ALL: [TheoremId; 11] = [
        TheoremId::Thm3_6,
        TheoremId::Cor3_3,
        TheoremId::Lem4_8,
        TheoremId::Thm4_9,
        TheoremId::Thm4_11,
        TheoremId::Thm4_7c,
        TheoremId::Thm5_6,
        TheoremId::Cor6_1,
        TheoremId::Cor6_3,
        TheoremId::Cor6_4,
        TheoremId::Cor3_8,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::Thm3_6 => "thm_3_6",
            TheoremId::Cor3_3 => "cor_3_3",
            TheoremId::Lem4_8 => "lem_4_8",
            TheoremId::Thm4_9 => "thm_4_9",
            TheoremId::Thm4_11 => "thm_4_11",
            TheoremId::Thm4_7c => "thm_4_7c",
            TheoremId::Thm5_6 => "thm_5_6",
            TheoremId::Cor6_1 => "cor_6_1",
            TheoremId::Cor6_3 => "cor_6_3",
            TheoremId::Cor6_4 => "cor_6_4",
            TheoremId::Cor3_8 => "cor_3_8",
        }
    }

    fn statement(self) -> &'static str {
        match self {
            TheoremId::Thm3_6 => "M = H^2 + H^3",
            TheoremId::Cor3_3 => "H^4 ⊆ H^3",
            TheoremId::Lem4_8 => "H^n = M ∩ m",
            TheoremId::Thm4_9 => "H^n : m = M",
            TheoremId::Thm4_11 => "F : m = M",
            TheoremId::Thm4_7c => "g u ∈ √Y for every generator g of M and u of m",
            TheoremId::Thm5_6 => "(a) foci not coplanar, (b) H^n ⊆ H^2, (c) H^2 : m = M are equivalent",
            TheoremId::Cor6_1 => "π(M) = π(H^2) + π(H^3)",
            TheoremId::Cor6_3 => "π(M) = π(H^n) = π(F)",
            TheoremId::Cor6_4 => "π(M) = π(H^2)",
            TheoremId::Cor3_8 => "epipoles of one focus together with any point in its own image lie on the multiview variety",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "thm_4_7c_gen" {
            return Ok(TheoremId::Thm4_7c);
        }
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown theorem `{s}`")))
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    /// Seeds every random choice.
    pub seed: u64,
    /// Record wall-clock timings per stage.
    pub timings: bool,
    /// How to compute M; focal sum for distinct foci and elimination
    /// otherwise when unset.
    pub method: Option<Method>,
}

struct Run<'a> {
    arr: &'a Arrangement,
    ctx: Arc<VariableContext>,
    opts: &'a VerifyOptions,
    rep: VerificationReport,
}

impl<'a> Run<'a> {
    fn timed<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = self.opts.timings.then(Instant::now);
        let out = f();
        if let Some(start) = start {
            *self.rep.timings_ms.entry(stage.into()).or_default() += start.elapsed().as_millis() as u64;
        }
        out
    }

    fn size(&mut self, name: &str, i: &Ideal) {
        let n = i.gb().len();
        self.rep.gb_sizes.insert(name.into(), n);
    }

    fn multiview(&mut self) -> Result<Ideal> {
        let method = self.opts.method.unwrap_or(if self.arr.distinct_foci() {
            Method::FocalSum
        } else {
            Method::Elimination
        });
        let (arr, ctx) = (self.arr, self.ctx.clone());
        let m = self.timed("multiview", || multiview_ideal(arr, &ctx, method))?.ideal;
        self.rep.note.get_or_insert_with(|| format!("M computed by {method}"));
        self.size("M", &m);
        Ok(m)
    }

    fn focal(&mut self, k: usize) -> Result<Ideal> {
        let (arr, ctx) = (self.arr, self.ctx.clone());
        let h = self.timed(&format!("H^{k}"), || k_focal_ideal(arr, &ctx, k))?.ideal;
        self.size(&format!("H^{k}"), &h);
        Ok(h)
    }

    fn push(&mut self, c: Check) {
        self.rep.checks.push(c);
    }
}

/// `inner ⊆ outer`, witnessed by a generator of `inner` outside `outer`.
fn subset(name: &str, inner: &Ideal, outer: &Ideal, expected: Expectation) -> Result<Check> {
    let missing = outer.non_members(inner)?;
    Ok(Check::new(name, missing.is_empty(), expected)
        .with_all(missing.first().map(|g| Witness::polynomial("generator outside the larger ideal", g))))
}

fn equality(name: &str, a: &Ideal, b: &Ideal, expected: Expectation) -> Result<Check> {
    let a_not_b = b.non_members(a)?;
    let b_not_a = a.non_members(b)?;
    let mut c = Check::new(name, a_not_b.is_empty() && b_not_a.is_empty(), expected);
    if let Some(g) = a_not_b.first() {
        c = c.with(Witness::polynomial("in the left ideal only", g));
    }
    if let Some(g) = b_not_a.first() {
        c = c.with(Witness::polynomial("in the right ideal only", g));
    }
    Ok(c)
}

fn predicted(hyp: bool) -> Expectation {
    if hyp {
        Expectation::Holds
    } else {
        Expectation::Unknown
    }
}

pub fn verify(arr: &Arrangement, id: TheoremId, opts: &VerifyOptions) -> VerificationReport {
    let rep = VerificationReport::start(id.as_str(), id.statement(), arr);
    let ctx = match arr.context() {
        Ok(c) => c,
        Err(e) => return rep.violated(e.to_string()),
    };
    let mut run = Run { arr, ctx, opts, rep };
    let total = opts.timings.then(Instant::now);
    let res = match id {
        TheoremId::Thm3_6 => thm_3_6(&mut run),
        TheoremId::Cor3_3 => cor_3_3(&mut run),
        TheoremId::Lem4_8 => lem_4_8(&mut run),
        TheoremId::Thm4_9 => thm_4_9(&mut run),
        TheoremId::Thm4_11 => thm_4_11(&mut run),
        TheoremId::Thm4_7c => thm_4_7c(&mut run),
        TheoremId::Thm5_6 => thm_5_6(&mut run),
        TheoremId::Cor6_1 => cor_6_1(&mut run),
        TheoremId::Cor6_3 => cor_6_3(&mut run),
        TheoremId::Cor6_4 => cor_6_4(&mut run),
        TheoremId::Cor3_8 => cor_3_8(&mut run),
    };
    let mut rep = match res {
        Ok(()) => {
            run.rep.finish();
            run.rep
        }
        Err(Error::Precondition(why)) => run.rep.violated(why),
        Err(e) => run.rep.violated(e.to_string()),
    };
    if let Some(total) = total {
        rep.timings_ms.insert("total".into(), total.elapsed().as_millis() as u64);
    }
    rep
}

/// Every theorem in parallel, reported in id order.
pub fn verify_all(arr: &Arrangement, opts: &VerifyOptions) -> Vec<VerificationReport> {
    TheoremId::ALL.par_iter().map(|&id| verify(arr, id, opts)).collect()
}

fn require(cond: bool, why: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(why.into()))
    }
}

fn thm_3_6(run: &mut Run) -> Result<()> {
    let distinct = run.rep.hypothesis("distinct_foci", run.arr.distinct_foci());
    let (arr, ctx) = (run.arr, run.ctx.clone());
    let m = run.timed("multiview", || multiview_ideal(arr, &ctx, Method::Elimination))?.ideal;
    run.size("M", &m);
    run.rep.note = Some("M computed by elimination".into());
    let mut f = run.focal(2)?;
    if arr.n() >= 3 {
        f = f.sum(&run.focal(3)?)?;
    }
    run.size("H^2 + H^3", &f);
    let c = run.timed("compare", || subset("H^2 + H^3 ⊆ M", &f, &m, Expectation::Holds))?;
    run.push(c);
    // Coincident foci kill the bifocal of that pair while M keeps a
    // bidegree (1, 1) relation, so equality is expected to break.
    let c = run.timed("compare", || equality("M = H^2 + H^3", &m, &f, Expectation::from_bool(distinct)))?;
    run.push(c);
    Ok(())
}

fn cor_3_3(run: &mut Run) -> Result<()> {
    require(run.rep.hypothesis("at_least_4_cameras", run.arr.n() >= 4), "H^4 needs at least 4 cameras")?;
    let h4 = run.focal(4)?;
    let h3 = run.focal(3)?;
    let c = run.timed("compare", || subset("H^4 ⊆ H^3", &h4, &h3, Expectation::Holds))?;
    run.push(c);
    Ok(())
}

fn lem_4_8(run: &mut Run) -> Result<()> {
    let exp = predicted(run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()));
    let m = run.multiview()?;
    let hn = run.focal(run.arr.n())?;
    let irr = IrrelevantIdeal::new(&run.ctx);
    let cap = run.timed("intersect", || m.intersect(irr.ideal()))?;
    run.size("M ∩ m", &cap);
    let c = run.timed("compare", || equality("H^n = M ∩ m", &hn, &cap, exp))?;
    run.push(c);
    Ok(())
}

fn thm_4_9(run: &mut Run) -> Result<()> {
    let exp = predicted(run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()));
    let m = run.multiview()?;
    let hn = run.focal(run.arr.n())?;
    let col = run.timed("colon", || hn.colon_irrelevant())?;
    run.size("H^n : m", &col);
    let c = run.timed("compare", || equality("H^n : m = M", &col, &m, exp))?;
    run.push(c);
    Ok(())
}

fn thm_4_11(run: &mut Run) -> Result<()> {
    let exp = predicted(run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()));
    let m = run.multiview()?;
    let (arr, ctx) = (run.arr, run.ctx.clone());
    let f = run.timed("F", || faugeras_ideal(arr, &ctx))?.full;
    run.size("F", &f);
    let col = run.timed("colon", || f.colon_irrelevant())?;
    run.size("F : m", &col);
    let c = run.timed("compare", || equality("F : m = M", &col, &m, exp))?;
    run.push(c);
    Ok(())
}

fn thm_4_7c(run: &mut Run) -> Result<()> {
    require(
        run.rep.hypothesis("first_normalized", run.arr.first_normalized()),
        "the first camera must be [I|0]",
    )?;
    let exp = predicted(run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()));
    let m = run.multiview()?;
    let (arr, ctx) = (run.arr, run.ctx.clone());
    let y = run.timed("Y", || ma_ideal(arr, &ctx))?;
    run.size("Y", &y);
    let gens = run.timed("minimal generators", || m.minimal_generators());
    let irr = IrrelevantIdeal::new(&run.ctx);
    let products: Vec<_> = gens
        .iter()
        .flat_map(|g| irr.generators().iter().map(move |u| g * u))
        .collect();
    let results: Vec<Result<bool>> =
        run.timed("radical", || products.par_iter().map(|p| y.radical_member(p)).collect());
    let mut bad = None;
    for (p, r) in products.iter().zip(results) {
        if !r? && bad.is_none() {
            bad = Some(p.clone());
        }
    }
    let c = Check::new(
        &format!("g u ∈ √Y for all {} products", products.len()),
        bad.is_none(),
        exp,
    )
    .with_all(bad.map(|p| Witness::polynomial("product outside the radical", &p)));
    run.push(c);
    let c = run.timed("compare", || subset("Y ⊆ M", &y, &m, Expectation::Holds))?;
    run.push(c);
    let c = run.timed("compare", || equality("Y = M", &y, &m, Expectation::Unknown))?;
    run.push(c);
    Ok(())
}

fn thm_5_6(run: &mut Run) -> Result<()> {
    let n = run.arr.n();
    require(run.rep.hypothesis("at_least_4_cameras", n >= 4), "the equivalence needs at least 4 cameras")?;
    require(
        run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()),
        "the equivalence needs pairwise distinct foci",
    )?;
    let a = !run.arr.coplanar();
    let exp = Expectation::from_bool(a);
    run.push(Check::new("(a) foci are not coplanar", a, Expectation::Unknown));
    let m = run.multiview()?;
    let h2 = run.focal(2)?;
    let hn = run.focal(n)?;
    let b = run.timed("compare", || subset("(b) H^n ⊆ H^2", &hn, &h2, exp))?;
    let col = run.timed("colon", || h2.colon_irrelevant())?;
    run.size("H^2 : m", &col);
    let mut c = run.timed("compare", || equality("(c) H^2 : m = M", &col, &m, exp))?;
    if !c.holds {
        if let Ok(w) = witness_coplanar(run.arr) {
            c = c.with(Witness::point("bifocals vanish", &w.points));
            let g = m.generators().iter().find(|g| !g.evaluate_image(&w.points).map(|v| v.is_zero()).unwrap_or(true));
            if let Some(g) = g {
                c = c.with(Witness::polynomial("multiview generator nonzero at the point", g));
            }
        }
    }
    let agree = a == b.holds && b.holds == c.holds;
    if agree {
        let summary = format!("(a)(b)(c) {}", if a { "hold" } else { "fail" });
        run.rep.note = Some(match run.rep.note.take() {
            Some(n) => format!("{summary}; {n}"),
            None => summary,
        });
    }
    run.push(b);
    run.push(c);
    run.push(Check::new("(a), (b), (c) agree", agree, Expectation::Holds));
    Ok(())
}

fn cor_6_1(run: &mut Run) -> Result<()> {
    let exp = predicted(run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()));
    let m = run.multiview()?.dehomogenize();
    let mut s = run.focal(2)?.dehomogenize();
    if run.arr.n() >= 3 {
        s = s.sum(&run.focal(3)?.dehomogenize())?;
    }
    run.size("π(M)", &m);
    let c = run.timed("compare", || equality("π(M) = π(H^2) + π(H^3)", &m, &s, exp))?;
    run.push(c);
    Ok(())
}

fn cor_6_3(run: &mut Run) -> Result<()> {
    let exp = predicted(run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()));
    let normalized = run.rep.hypothesis("first_normalized", run.arr.first_normalized());
    let m = run.multiview()?;
    let pm = m.dehomogenize();
    run.size("π(M)", &pm);
    let hn = run.focal(run.arr.n())?.dehomogenize();
    let c = run.timed("compare", || equality("π(M) = π(H^n)", &pm, &hn, exp))?;
    run.push(c);
    let (arr, ctx) = (run.arr, run.ctx.clone());
    let f = run.timed("F", || faugeras_ideal(arr, &ctx))?.full.dehomogenize();
    let c = run.timed("compare", || equality("π(M) = π(F)", &pm, &f, exp))?;
    run.push(c);
    if normalized {
        let y = run.timed("Y", || ma_ideal(arr, &ctx))?.dehomogenize();
        run.size("π(Y)", &y);
        let c = run.timed("compare", || subset("π(Y) ⊆ π(M)", &y, &pm, Expectation::Holds))?;
        run.push(c);
        let gens = run.timed("minimal generators", || m.minimal_generators());
        let pgens: Vec<_> = gens
            .iter()
            .map(|g| crate::ideal::dehomogenize(g, pm.ctx()))
            .collect();
        let results: Vec<Result<bool>> =
            run.timed("radical", || pgens.par_iter().map(|g| y.radical_member(g)).collect());
        let mut bad = None;
        for (g, r) in pgens.iter().zip(results) {
            if !r? && bad.is_none() {
                bad = Some(g.clone());
            }
        }
        let c = Check::new("π(M) ⊆ √π(Y)", bad.is_none(), exp)
            .with_all(bad.map(|g| Witness::polynomial("generator outside the radical", &g)));
        run.push(c);
    }
    Ok(())
}

fn cor_6_4(run: &mut Run) -> Result<()> {
    let four = run.rep.hypothesis("at_least_4_cameras", run.arr.n() >= 4);
    let distinct = run.rep.hypothesis("distinct_foci", run.arr.distinct_foci());
    let noncoplanar = run.rep.hypothesis("noncoplanar", !run.arr.coplanar());
    let exp = predicted(four && distinct && noncoplanar);
    let m = run.multiview()?.dehomogenize();
    let h2 = run.focal(2)?.dehomogenize();
    run.size("π(M)", &m);
    let c = run.timed("compare", || equality("π(M) = π(H^2)", &m, &h2, exp))?;
    run.push(c);
    Ok(())
}

const LIMIT_SAMPLES: usize = 3;

fn cor_3_8(run: &mut Run) -> Result<()> {
    require(
        run.rep.hypothesis("distinct_foci", run.arr.distinct_foci()),
        "epipoles are undefined for coincident foci",
    )?;
    let m = run.multiview()?;
    let mut rng = rng_from_seed(run.opts.seed);
    for i in 0..run.arr.n() {
        for _ in 0..LIMIT_SAMPLES {
            let p: Vec<Rational> = loop {
                let v: Vec<i64> = (0..3).map(|_| rng.gen_range(-10..=10)).collect();
                if v.iter().any(|&x| x != 0) {
                    break v.into_iter().map(Rational::from_int).collect();
                }
            };
            let arr = run.arr;
            let sub = run.timed("evaluate", || limit_point_check(arr, &m, i, &p))?;
            run.rep.checks.extend(sub.checks);
        }
    }
    Ok(())
}
