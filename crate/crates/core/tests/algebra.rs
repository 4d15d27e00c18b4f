use std::cmp::Ordering;
use std::sync::Arc;

use mvideal::ideal::dehomogenize;
use mvideal::poly::subsets;
use mvideal::{Ideal, IrrelevantIdeal, Monomial, MonomialOrder, Polynomial, QMatrix, Rational, SymbolicMatrix, Var, VarSet, VariableContext};
use proptest::prelude::*;

fn ctx2() -> Arc<VariableContext> {
    VariableContext::new(2).unwrap()
}

fn image_monomial(ctx: &Arc<VariableContext>, exps: &[u32]) -> Monomial {
    let pairs: Vec<(Var, u32)> = ctx.image_vars().zip(exps.iter().copied()).collect();
    Monomial::from_exponents(&pairs)
}

prop_compose! {
    fn monomial()(exps in prop::collection::vec(0u32..3, 6)) -> Vec<u32> { exps }
}

prop_compose! {
    fn poly_terms()(terms in prop::collection::vec((-5i64..=5, monomial()), 0..5)) -> Vec<(i64, Vec<u32>)> { terms }
}

fn build(ctx: &Arc<VariableContext>, terms: &[(i64, Vec<u32>)]) -> Polynomial {
    Polynomial::from_terms(
        ctx,
        terms.iter().map(|(c, e)| (image_monomial(ctx, e), Rational::from_int(*c))),
    )
}

/// A bihomogeneous polynomial of the given bidegree with small coefficients.
fn bihomogeneous(ctx: &Arc<VariableContext>, deg: (u32, u32), coefs: &[i64]) -> Polynomial {
    let mut mons = Vec::new();
    for a in 0..=deg.0 {
        for b in 0..=deg.0 - a {
            for c in 0..=deg.1 {
                for d in 0..=deg.1 - c {
                    mons.push(vec![a, b, deg.0 - a - b, c, d, deg.1 - c - d]);
                }
            }
        }
    }
    Polynomial::from_terms(
        ctx,
        mons.iter().zip(coefs.iter().cycle()).map(|(e, c)| (image_monomial(ctx, e), Rational::from_int(*c))),
    )
}

fn orders(ctx: &Arc<VariableContext>) -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::Lex,
        MonomialOrder::DegRevLex,
        MonomialOrder::Elimination(VarSet::empty().with(ctx.x(0)).with(ctx.z(1))),
        MonomialOrder::DegRevLexLast(ctx.y(0)),
    ]
}

fn qmatrix(rows: usize, cols: usize, v: &[i64]) -> QMatrix {
    QMatrix::from_fn(rows, cols, |r, c| Rational::new(v[r * cols + c], 1 + (r + c) as i64 % 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly_terms(), b in poly_terms(), c in poly_terms()) {
        let ctx = ctx2();
        let (a, b, c) = (build(&ctx, &a), build(&ctx, &b), build(&ctx, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Polynomial::one(&ctx), a.clone());
    }

    #[test]
    fn orders_are_total_multiplicative_and_one_minimal(a in monomial(), b in monomial(), c in monomial()) {
        let ctx = ctx2();
        let (a, b, c) = (image_monomial(&ctx, &a), image_monomial(&ctx, &b), image_monomial(&ctx, &c));
        for o in orders(&ctx) {
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            if o.cmp(&a, &b) == Ordering::Less && o.cmp(&b, &c) == Ordering::Less {
                prop_assert_eq!(o.cmp(&a, &c), Ordering::Less);
            }
            prop_assert_eq!(o.cmp(&(a * c), &(b * c)), o.cmp(&a, &b));
            prop_assert_ne!(o.cmp(&Monomial::one(), &a), Ordering::Greater);
        }
    }

    #[test]
    fn elimination_order_ranks_front_variables_first(a in monomial(), b in monomial()) {
        let ctx = ctx2();
        let front = VarSet::empty().with(ctx.x(0)).with(ctx.y(0)).with(ctx.z(0));
        let o = MonomialOrder::Elimination(front);
        let (ma, mb) = (image_monomial(&ctx, &a), image_monomial(&ctx, &b));
        let has = |m: &Monomial| m.vars().any(|v| front.contains(v));
        if has(&ma) && !has(&mb) {
            prop_assert_eq!(o.cmp(&ma, &mb), Ordering::Greater);
        }
    }

    #[test]
    fn det_is_multilinear_in_rows(v in prop::collection::vec(-6i64..=6, 16), r in 0usize..4, s in -4i64..=4) {
        let a = qmatrix(4, 4, &v);
        let mut b = a.clone();
        for c in 0..4 {
            b.set(r, c, a.get(r, c) * &Rational::from_int(s));
        }
        prop_assert_eq!(b.det().unwrap(), &a.det().unwrap() * &Rational::from_int(s));
        let ctx = ctx2();
        let sa = SymbolicMatrix::from_constant(&ctx, &a);
        prop_assert_eq!(sa.det().unwrap().as_constant().unwrap(), a.det().unwrap());
    }

    #[test]
    fn normal_form_is_idempotent_and_linear(f in poly_terms(), g in poly_terms(), s in -3i64..=3) {
        let ctx = ctx2();
        let i = Ideal::parse(&ctx, &["x1*y2 - y1*x2", "z1^2 - x2*z2"]).unwrap();
        let (f, g) = (build(&ctx, &f), build(&ctx, &g));
        let o = MonomialOrder::DegRevLex;
        let nf = i.normal_form(&f, o).unwrap();
        prop_assert_eq!(i.normal_form(&nf, o).unwrap(), nf.clone());
        let c = Rational::from_int(s);
        let lhs = i.normal_form(&(&f.scale(&c) + &g), o).unwrap();
        prop_assert_eq!(lhs, &nf.scale(&c) + &i.normal_form(&g, o).unwrap());
    }

    #[test]
    fn groebner_bases_are_correct(coefs in prop::collection::vec(-3i64..=3, 12)) {
        let ctx = ctx2();
        let f = bihomogeneous(&ctx, (1, 1), &coefs[..6]);
        let g = bihomogeneous(&ctx, (1, 1), &coefs[6..]);
        let h = bihomogeneous(&ctx, (2, 0), &coefs[3..9]);
        let i = Ideal::new(&ctx, vec![f.clone(), g.clone(), h.clone()]).unwrap();
        for o in [MonomialOrder::DegRevLex, MonomialOrder::Lex] {
            let gb = i.groebner(o);
            prop_assert!(gb.satisfies_buchberger_criterion());
            prop_assert!(gb.is_reduced());
            for p in [&f, &g, &h] {
                prop_assert!(gb.reduces_to_zero(p));
            }
        }
    }

    #[test]
    fn colon_generators_multiply_into_the_ideal(coefs in prop::collection::vec(-3i64..=3, 12)) {
        let ctx = ctx2();
        let f = bihomogeneous(&ctx, (1, 1), &coefs[..6]);
        let g = bihomogeneous(&ctx, (1, 1), &coefs[6..]);
        let x = Polynomial::var(&ctx, ctx.x(0));
        let i = Ideal::new(&ctx, vec![&x * &f, &Polynomial::var(&ctx, ctx.y(1)) * &g]).unwrap();
        let j = Ideal::of_vars(&ctx, &[ctx.x(0), ctx.y(1)]);
        let col = i.colon(&j).unwrap();
        for h in col.generators() {
            for u in j.generators() {
                prop_assert!(i.member(&(h * u)).unwrap());
            }
        }
        // x1 (f g) and y2 (f g) both lie in I.
        prop_assert!(col.member(&(&f * &g)).unwrap());
    }

    #[test]
    fn dehomogenization_commutes_with_colon(coefs in prop::collection::vec(-3i64..=3, 12)) {
        let ctx = ctx2();
        let f = bihomogeneous(&ctx, (1, 1), &coefs[..6]);
        let g = bihomogeneous(&ctx, (1, 0), &coefs[6..]);
        let i = Ideal::new(&ctx, vec![&f * &g, &g * &Polynomial::var(&ctx, ctx.x(1))]).unwrap();
        let j = Ideal::new(&ctx, vec![g.clone()]).unwrap();
        if !j.is_zero() {
            let lhs = i.colon(&j).unwrap().dehomogenize();
            let rhs = i.dehomogenize().colon(&j.dehomogenize()).unwrap();
            prop_assert!(lhs.equal(&rhs).unwrap());
        }
    }

    #[test]
    fn elimination_stays_in_the_ideal(coefs in prop::collection::vec(-3i64..=3, 12)) {
        let ctx = ctx2();
        let f = bihomogeneous(&ctx, (1, 1), &coefs[..6]);
        let g = bihomogeneous(&ctx, (1, 1), &coefs[6..]);
        let i = Ideal::new(&ctx, vec![f, g, Polynomial::parse(&ctx, "x1 - y1").unwrap()]).unwrap();
        let front = VarSet::empty().with(ctx.x(0));
        let e = i.eliminate(front);
        for h in e.generators() {
            prop_assert!(h.is_free_of(front));
            prop_assert!(i.member(h).unwrap());
        }
    }
}

#[test]
fn cauchy_binet_on_random_matrices() {
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(100));
    let strat = (prop::collection::vec(-9i64..=9, 24), prop::collection::vec(-9i64..=9, 24));
    runner
        .run(&strat, |(a, b)| {
            let a = qmatrix(4, 6, &a);
            let b = qmatrix(6, 4, &b);
            let lhs = (&a * &b).det().unwrap();
            let all: Vec<usize> = (0..4).collect();
            let rhs = subsets(6, 4).into_iter().fold(Rational::zero(), |acc, s| {
                &acc + &(&a.select(&all, &s).det().unwrap() * &b.select(&s, &all).det().unwrap())
            });
            prop_assert_eq!(lhs, rhs);
            Ok(())
        })
        .unwrap();
}

#[test]
fn irrelevant_ideal_is_the_intersection_of_blocks() {
    for n in [2, 3] {
        let ctx = VariableContext::new(n).unwrap();
        let m = IrrelevantIdeal::new(&ctx);
        assert_eq!(m.generators().len(), 3usize.pow(n as u32));
        assert!(m.ideal().equal(&IrrelevantIdeal::as_intersection(&ctx).unwrap()).unwrap());
    }
}

#[test]
fn dehomogenize_sets_z_to_one() {
    let ctx = ctx2();
    let f = Polynomial::parse(&ctx, "x1*z2 - z1*y2 + z1*z2").unwrap();
    let d = ctx.dehomogenized();
    assert_eq!(dehomogenize(&f, &d), Polynomial::parse(&d, "x1 - y2 + 1").unwrap());
}
