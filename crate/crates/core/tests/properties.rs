use froblab_core::fsing::{cover_add, cover_frobenius, cover_mul, CoverContext, CoverElement};
use froblab_core::quotients::{artinian_membership_oracle, QuotientPresentation};
use froblab_core::{buchberger, parse, Ideal, Monomial, MonomialOrder, PolyRing, Polynomial, Ring};
use proptest::prelude::*;

const NVARS: usize = 3;

fn ring(p: u64, order: MonomialOrder) -> Ring {
    PolyRing::new(p, &["x", "y", "z"], order).unwrap()
}

type Terms = Vec<(Vec<u16>, u32)>;

fn terms(max_exp: u16, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_exp, NVARS), 0u32..1000),
        0..=max_terms,
    )
}

fn build(ring: &Ring, t: &Terms) -> Polynomial {
    Polynomial::from_terms(
        ring,
        t.iter().map(|(e, c)| (Monomial::from_exponents(e), *c)).collect(),
    )
}

fn ideal(ring: &Ring, gens: &[Terms]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| build(ring, g)).collect()).unwrap()
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn freshmans_dream(p in prime(), g in terms(3, 4), h in terms(3, 4)) {
        let r = ring(p, MonomialOrder::Grevlex);
        let (g, h) = (build(&r, &g), build(&r, &h));
        let lhs = g.add(&h).unwrap().pow(p).unwrap();
        let rhs = g.pow(p).unwrap().add(&h.pow(p).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_matches_repeated_multiplication(p in prime(), e in 1u32..=2, g in terms(2, 3)) {
        let r = ring(p, MonomialOrder::Grevlex);
        let g = build(&r, &g);
        let mut power = Polynomial::one(&r);
        for _ in 0..p.pow(e) {
            power = power.mul(&g).unwrap();
        }
        prop_assert_eq!(g.frobenius_pow(e).unwrap(), power);
    }

    #[test]
    fn groebner_basis_ignores_generator_order(
        gens in prop::collection::vec(terms(2, 3), 1..=3),
        lex in any::<bool>(),
    ) {
        let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
        let r = ring(5, order);
        let polys: Vec<Polynomial> = gens.iter().map(|g| build(&r, g)).collect();
        let mut reversed = polys.clone();
        reversed.reverse();
        let a = buchberger(&r, &polys, order).unwrap();
        let b = buchberger(&r, &reversed, order).unwrap();
        prop_assert_eq!(a.polys(), b.polys());
        prop_assert!(a.satisfies_buchberger_criterion());
    }

    #[test]
    fn normal_form_is_idempotent_and_congruent(
        gens in prop::collection::vec(terms(2, 3), 1..=3),
        g in terms(3, 5),
    ) {
        let r = ring(3, MonomialOrder::Grevlex);
        let a = ideal(&r, &gens);
        let g = build(&r, &g);
        let nf = a.normal_form(&g).unwrap();
        prop_assert_eq!(a.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(a.contains(&g.sub(&nf).unwrap()).unwrap());
    }

    #[test]
    fn bracket_powers_compose(gens in prop::collection::vec(terms(2, 2), 1..=2), p in prime()) {
        let r = ring(p, MonomialOrder::Grevlex);
        let a = ideal(&r, &gens);
        let two = a.bracket_power(2).unwrap();
        let one_one = a.bracket_power(1).unwrap().bracket_power(1).unwrap();
        prop_assert!(two.equals(&one_one).unwrap());
    }

    #[test]
    fn bracket_power_ignores_generating_set(
        gens in prop::collection::vec(terms(2, 2), 1..=2),
        mix in terms(1, 2),
        p in prime(),
    ) {
        let r = ring(p, MonomialOrder::Grevlex);
        let a = ideal(&r, &gens);
        // add a redundant generator: mix·g₀ + g_last
        let extra = build(&r, &mix)
            .mul(&a.generators()[0])
            .unwrap()
            .add(a.generators().last().unwrap())
            .unwrap();
        let b = a.add_generators(&[extra]).unwrap();
        prop_assert!(a.bracket_power(1).unwrap().equals(&b.bracket_power(1).unwrap()).unwrap());
    }

    #[test]
    fn colon_properties(
        a in prop::collection::vec(terms(2, 2), 1..=2),
        b in prop::collection::vec(terms(2, 2), 1..=2),
    ) {
        let r = ring(3, MonomialOrder::Grevlex);
        let a = ideal(&r, &a);
        let b = ideal(&r, &b);
        prop_assume!(!b.is_zero());
        let c = a.colon(&b).unwrap();
        prop_assert!(c.contains_ideal(&a).unwrap());
        prop_assert!(a.contains_ideal(&c.product(&b).unwrap()).unwrap());
    }

    #[test]
    fn membership_agrees_with_truncated_oracle(
        pows in prop::collection::vec(1u16..=3, NVARS),
        extra in prop::collection::vec(terms(2, 3), 0..=2),
        g in terms(4, 5),
        p in prime(),
    ) {
        let r = ring(p, MonomialOrder::Grevlex);
        let mut gens: Vec<Polynomial> = pows
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let mut e = vec![0u16; NVARS];
                e[i] = k;
                Polynomial::monomial(&r, Monomial::from_exponents(&e), 1)
            })
            .collect();
        gens.extend(extra.iter().map(|t| build(&r, t)));
        let a = Ideal::new(&r, gens).unwrap();
        let g = build(&r, &g);
        prop_assert_eq!(a.contains(&g).unwrap(), artinian_membership_oracle(&a, &g).unwrap());
    }
}

fn cover(p: u64, f: &Terms) -> (Ring, CoverContext) {
    let r = ring(p, MonomialOrder::Grevlex);
    let q = QuotientPresentation::new(Ideal::parse(&r, &["z^2 - x*y"]).unwrap()).unwrap();
    let ctx = CoverContext::new(q, Ideal::parse(&r, &["x", "z"]).unwrap(), build(&r, f)).unwrap();
    (r, ctx)
}

fn element(r: &Ring, ctx: &CoverContext, a: &Terms, b: &(Terms, Terms)) -> CoverElement {
    let b = build(r, &b.0)
        .mul(&parse("x", r).unwrap())
        .unwrap()
        .add(&build(r, &b.1).mul(&parse("z", r).unwrap()).unwrap())
        .unwrap();
    ctx.element(&build(r, a), &b).unwrap()
}

fn cover_elem() -> impl Strategy<Value = (Terms, (Terms, Terms))> {
    (terms(2, 3), (terms(1, 2), terms(1, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cover_is_a_commutative_ring(
        p in prop::sample::select(vec![3u64, 5]),
        f in terms(1, 2),
        u in cover_elem(), v in cover_elem(), w in cover_elem(),
    ) {
        let (r, ctx) = cover(p, &f);
        let u = element(&r, &ctx, &u.0, &u.1);
        let v = element(&r, &ctx, &v.0, &v.1);
        let w = element(&r, &ctx, &w.0, &w.1);
        let mul = |a: &CoverElement, b: &CoverElement| cover_mul(&ctx, a, b).unwrap();
        let add = |a: &CoverElement, b: &CoverElement| cover_add(&ctx, a, b).unwrap();
        prop_assert_eq!(mul(&u, &v), mul(&v, &u));
        prop_assert_eq!(mul(&mul(&u, &v), &w), mul(&u, &mul(&v, &w)));
        prop_assert_eq!(mul(&u, &add(&v, &w)), add(&mul(&u, &v), &mul(&u, &w)));
        prop_assert_eq!(mul(&ctx.one(), &u), u.clone());
    }

    #[test]
    fn cover_frobenius_matches_repeated_multiplication(
        p in prop::sample::select(vec![3u64, 5]),
        f in terms(1, 2),
        u in cover_elem(),
    ) {
        let (r, ctx) = cover(p, &f);
        let u = element(&r, &ctx, &u.0, &u.1);
        let mut power = ctx.one();
        for _ in 0..p {
            power = cover_mul(&ctx, &power, &u).unwrap();
        }
        prop_assert_eq!(cover_frobenius(&ctx, &u, 1).unwrap(), power);
    }

    #[test]
    fn frobenius_is_well_defined_on_the_quotient(
        g in terms(2, 3),
        h in terms(1, 2),
    ) {
        let r = ring(3, MonomialOrder::Grevlex);
        let q = QuotientPresentation::new(Ideal::parse(&r, &["z^2 - x*y"]).unwrap()).unwrap();
        let g = build(&r, &g);
        let shifted = g.add(&build(&r, &h).mul(&parse("z^2 - x*y", &r).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(q.frobenius(&g, 1).unwrap(), q.frobenius(&shifted, 1).unwrap());
    }
}
