use proptest::prelude::*;

use integen::algebra::{
    int, partial_fractions, poly_gcd, rat, resultant, squarefree_factorize, sylvester_resultant,
    Field, Poly, Rational,
};
use integen::dataset::{const_canonicalize, dataset_stats, from_prefix, to_prefix};
use integen::generator::{generate_item, GenConfig};
use integen::kernel::{hermite_reduce, tr_resultant, LiouvilleForm};
use integen::tower::{Expr, ExtensionKind, Tower, TowerElem};
use integen::verifier::verify_pair;

fn qpoly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec((-9i64..=9, 1i64..=4), 1..=max_deg + 1)
        .prop_map(|cs| Poly::new(cs.into_iter().map(|(n, d)| rat(n, d)).collect()))
}

fn nonzero_qpoly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    qpoly(max_deg).prop_filter("nonzero", |p| !p.is_zero())
}

fn towers() -> Vec<Tower> {
    let x = TowerElem::x();
    let x2p1 = x.mul(&x).add(&TowerElem::one());
    let mut two = Tower::log(x.clone()).unwrap();
    two.push(ExtensionKind::Exp, TowerElem::theta(1).add(&x)).unwrap();
    let mut two_b = Tower::exp(x.clone()).unwrap();
    two_b.push(ExtensionKind::Log, TowerElem::theta(1).add(&TowerElem::one())).unwrap();
    vec![
        Tower::base(),
        Tower::log(x.clone()).unwrap(),
        Tower::exp(x.clone()).unwrap(),
        Tower::log(x2p1.clone()).unwrap(),
        Tower::exp(x.try_inv().unwrap()).unwrap(),
        two,
        two_b,
    ]
}

/// Small expression over `x` and the tower variables.
#[derive(Clone, Debug)]
enum Tree {
    X,
    Theta(usize),
    Int(i64),
    Add(Box<Tree>, Box<Tree>),
    Mul(Box<Tree>, Box<Tree>),
    Div(Box<Tree>, Box<Tree>),
}

fn tree() -> impl Strategy<Value = Tree> {
    let leaf = prop_oneof![
        Just(Tree::X),
        (1usize..=2).prop_map(Tree::Theta),
        (-4i64..=4).prop_map(Tree::Int),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Tree::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| Tree::Div(Box::new(a), Box::new(b))),
        ]
    })
}

fn eval(t: &Tree, height: usize) -> Option<TowerElem> {
    Some(match t {
        Tree::X => TowerElem::x(),
        Tree::Theta(l) if *l <= height => TowerElem::theta(*l),
        Tree::Theta(_) => TowerElem::x().add(&TowerElem::one()),
        Tree::Int(n) => TowerElem::integer(*n),
        Tree::Add(a, b) => eval(a, height)?.add(&eval(b, height)?),
        Tree::Mul(a, b) => eval(a, height)?.mul(&eval(b, height)?),
        Tree::Div(a, b) => eval(a, height)?.try_div(&eval(b, height)?).ok()?,
    })
}

fn tower_and_elems(n: usize) -> impl Strategy<Value = (Tower, Vec<TowerElem>)> {
    (0..towers().len(), prop::collection::vec(tree(), n)).prop_filter_map("division by zero", |(i, ts)| {
        let tower = towers().swap_remove(i);
        let h = tower.height();
        let elems = ts.iter().map(|t| eval(t, h)).collect::<Option<Vec<_>>>()?;
        Some((tower, elems))
    })
}

fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![Just(Expr::X), Just(Expr::Const), (-500i64..=500).prop_map(Expr::int)];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Expr::neg),
            inner.clone().prop_map(Expr::ln),
            inner.clone().prop_map(Expr::exp),
            inner.clone().prop_map(Expr::arctan),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::div(a, b)),
            (inner, -5i64..=5).prop_map(|(a, k)| Expr::pow(a, k)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn divmod_reconstructs(g in qpoly(6), b in nonzero_qpoly(6)) {
        let (q, r) = g.divmod(&b).unwrap();
        prop_assert_eq!(q.mul(&b).add(&r), g);
        prop_assert!(r.deg() < b.deg());
    }

    #[test]
    fn resultant_agrees_with_sylvester(a in nonzero_qpoly(5), b in nonzero_qpoly(5)) {
        prop_assert_eq!(resultant(&a, &b).unwrap(), sylvester_resultant(&a, &b).unwrap());
    }

    #[test]
    fn resultant_is_multiplicative(a in nonzero_qpoly(4), b in nonzero_qpoly(4), c in nonzero_qpoly(3)) {
        let lhs = resultant(&a, &b.mul(&c)).unwrap();
        prop_assert_eq!(lhs, resultant(&a, &b).unwrap().mul(&resultant(&a, &c).unwrap()));
    }

    #[test]
    fn squarefree_factorization_invariants(
        unit in (1i64..=5, 1i64..=3),
        parts in prop::collection::vec((nonzero_qpoly(2), 1u32..=3), 1..=3),
    ) {
        let p = parts
            .iter()
            .fold(Poly::constant(rat(unit.0, unit.1)), |acc, (f, m)| acc.mul(&f.pow(*m)));
        let sqf = squarefree_factorize(&p).unwrap();
        prop_assert_eq!(sqf.expand(), p);
        for (i, (f, _)) in sqf.factors.iter().enumerate() {
            prop_assert!(f.is_monic());
            prop_assert!(poly_gcd(f, &f.derivative()).unwrap().is_one());
            for (g, _) in &sqf.factors[i + 1..] {
                prop_assert!(poly_gcd(f, g).unwrap().is_one());
            }
        }
    }

    #[test]
    fn partial_fractions_recombine(
        roots in prop::collection::btree_set(-6i64..=6, 1..=3),
        mults in prop::collection::vec(1u32..=3, 3),
        r in qpoly(7),
    ) {
        let factors: Vec<_> = roots
            .iter()
            .zip(&mults)
            .map(|(a, m)| (Poly::new(vec![int(-a), int(1)]), *m))
            .collect();
        let pf = partial_fractions(&r, &factors).unwrap();
        for t in &pf.terms {
            prop_assert!(t.numerator.deg() < t.factor.deg());
        }
        let (num, den) = pf.recombine();
        let b = factors.iter().fold(Poly::one(), |acc, (f, m)| acc.mul(&f.pow(*m)));
        // num/den = r/b
        prop_assert_eq!(num.mul(&b), r.mul(&den));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn derivation_axioms((t, es) in tower_and_elems(2), k in -5i64..=5) {
        let (a, b) = (&es[0], &es[1]);
        prop_assert_eq!(t.derive(&a.add(b)), t.derive(a).add(&t.derive(b)));
        prop_assert_eq!(t.derive(&a.mul(b)), a.mul(&t.derive(b)).add(&b.mul(&t.derive(a))));
        prop_assert!(t.derive(&TowerElem::rational(rat(k, 7))).is_zero());
        if !a.is_zero() {
            let lhs = t.derive(&a.try_inv().unwrap());
            let rhs = t.derive(a).try_div(&a.mul(a)).unwrap().neg();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn extension_rules(i in 1..7usize) {
        let t = towers().swap_remove(i);
        for (level, ext) in t.extensions().iter().enumerate().map(|(j, e)| (j + 1, e)) {
            let dtheta = t.derive(&TowerElem::theta(level));
            let du = t.derive(&ext.argument);
            match ext.kind {
                ExtensionKind::Log => prop_assert_eq!(dtheta.mul(&ext.argument), du),
                ExtensionKind::Exp => prop_assert_eq!(dtheta, du.mul(&TowerElem::theta(level))),
            }
        }
    }

    #[test]
    fn canonicalize_is_idempotent((_t, es) in tower_and_elems(1)) {
        let once = es[0].canonicalize().unwrap();
        prop_assert_eq!(&once, &es[0]);
        prop_assert_eq!(once.canonicalize().unwrap(), once);
    }

    #[test]
    fn verifier_closure_and_constant_shift(
        (t, es) in tower_and_elems(3),
        c1 in (-5i64..=5, 1i64..=4),
        c2 in (-5i64..=5, 1i64..=4),
        shift in -9i64..=9,
    ) {
        prop_assume!(!es[1].is_zero() && !es[1].is_constant());
        let mut form = LiouvilleForm::rational(es[0].clone());
        form.logs.push((rat(c1.0, c1.1), es[1].clone()));
        // 1 + w² is nonzero for transcendental w
        prop_assume!(!es[2].is_constant());
        form.arctans.push((rat(c2.0, c2.1), es[2].clone()));
        let f = form.derivative(&t).unwrap();
        prop_assert!(verify_pair(&f, &form, &t).unwrap().passed);
        form.v0 = form.v0.add(&TowerElem::integer(shift));
        prop_assert!(verify_pair(&f, &form, &t).unwrap().passed);
    }

    #[test]
    fn hermite_identity_and_termination(
        v in (-4i64..=4, -3i64..=3),
        w in (-4i64..=4, -3i64..=3),
        k in 2u32..=4,
        nums in prop::collection::vec((-5i64..=5, -2i64..=2), 6),
    ) {
        let t = Tower::log(TowerElem::x()).unwrap();
        let lin = |(a, b): (i64, i64)| {
            Poly::new(vec![TowerElem::x_poly(&[int(a), int(b)]), TowerElem::one()])
        };
        let b = lin(v).pow(k).mul(&lin(w));
        let deg = b.degree().unwrap();
        let r = Poly::new(
            nums.iter().take(deg).map(|&(a, c)| TowerElem::x_poly(&[int(a), int(c)])).collect(),
        );
        prop_assume!(!r.is_zero());
        let steps = hermite_reduce(&r, &b, &t).unwrap();
        let (mut num, mut den) = (r, b);
        let mut top = squarefree_factorize(&den).unwrap().max_multiplicity();
        for s in &steps {
            let input = TowerElem::from_parts(1, num, den).unwrap();
            let rem = TowerElem::from_parts(1, s.remaining_num.clone(), s.remaining_den.clone()).unwrap();
            prop_assert_eq!(t.derive(&s.extracted).add(&rem), input);
            num = s.remaining_num.clone();
            den = s.remaining_den.clone();
            let m = squarefree_factorize(&den).unwrap().max_multiplicity();
            prop_assert!(m < top || m <= 1);
            top = m;
        }
        prop_assert!(squarefree_factorize(&den).unwrap().is_squarefree());
    }

    #[test]
    fn resultant_degree_matches_denominator(
        roots in prop::collection::btree_set(-5i64..=5, 1..=3),
        nums in prop::collection::vec(-4i64..=4, 3),
    ) {
        let t = Tower::log(TowerElem::x()).unwrap();
        let b = roots.iter().fold(Poly::one(), |acc, a| {
            acc.mul(&Poly::new(vec![TowerElem::integer(-a), TowerElem::one()]))
        });
        let deg = b.degree().unwrap();
        let r = Poly::new(nums.iter().take(deg).map(|n| TowerElem::integer(*n)).collect());
        prop_assume!(!r.is_zero() && poly_gcd(&r, &b).unwrap().is_one());
        prop_assert_eq!(tr_resultant(&r, &b, &t).unwrap().degree(), Some(deg));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn prefix_round_trip(e in expr()) {
        let tokens = to_prefix(&e);
        prop_assert_eq!(tokens.len(), e.size());
        prop_assert_eq!(from_prefix(&tokens).unwrap(), e);
    }

    #[test]
    fn const_canonicalize_idempotent_and_shrinking(e in expr()) {
        let once = const_canonicalize(&e);
        prop_assert!(once.size() <= e.size());
        prop_assert_eq!(const_canonicalize(&once), once);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generated_items_verify(seed in any::<u64>(), index in 0u64..1000) {
        let cfg = GenConfig::new(seed, None);
        let pair = generate_item(&cfg, index).unwrap();
        prop_assert!(pair.verified);
        prop_assert!(verify_pair(&pair.integrand_elem, &pair.integral_form, &pair.tower).unwrap().passed);
        prop_assert_eq!(generate_item(&cfg, index).unwrap(), pair);
    }

    #[test]
    fn stats_ignore_record_order(
        pairs in prop::collection::vec((expr(), expr()), 1..40),
        perm_seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut shuffled = pairs.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
        prop_assert_eq!(dataset_stats(&pairs, 10).unwrap(), dataset_stats(&shuffled, 10).unwrap());
    }
}
