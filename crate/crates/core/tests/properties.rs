use galoiskit::exactnum::{Int, Rat};
use galoiskit::factor::{factor_mod_p, factor_over_q, is_irreducible};
use galoiskit::field::{PrimeField, Rationals};
use galoiskit::galois::{automorphism_group, correspondence_table, norm, trace};
use galoiskit::numfield::{adjoin_root, splitting_field, NumberField};
use galoiskit::perm::{generate, Perm};
use galoiskit::poly::{FpPoly, Poly, QPoly};
use proptest::prelude::*;

fn qpoly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    (prop::collection::vec(-9i64..=9, 0..=max_deg), 1i64..=4, any::<bool>()).prop_map(|(mut c, lead, neg)| {
        c.push(if neg { -lead } else { lead });
        QPoly::from_i64(&c)
    })
}

fn f5poly(max_deg: usize) -> impl Strategy<Value = FpPoly> {
    let f5 = PrimeField::new(5).unwrap();
    (prop::collection::vec(0i64..5, 0..=max_deg), 1i64..5).prop_map(move |(mut c, lead)| {
        c.push(lead);
        Poly::from_ints(f5, &c)
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((1..=n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(&v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sign_is_multiplicative((a, b) in (1usize..=8).prop_flat_map(|n| (perm(n), perm(n)))) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(ab.sign(), a.sign() * b.sign());
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), Perm::identity(a.degree()));
    }

    #[test]
    fn cycles_rebuild_the_permutation(p in (1usize..=9).prop_flat_map(perm)) {
        prop_assert_eq!(p.cycles().to_perm(p.degree()).unwrap(), p.clone());
        let len: usize = p.cycle_type().iter().sum();
        prop_assert_eq!(len, p.degree());
        prop_assert!(p.pow(p.order()).is_identity());
    }

    #[test]
    fn division_over_q(f in qpoly(7), g in qpoly(4)) {
        let (quo, rem) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&quo * &g) + &rem, f.clone());
        prop_assert!(rem.is_zero() || rem.deg() < g.deg());
        let (d, s, t) = f.xgcd(&g).unwrap();
        prop_assert_eq!(&(&s * &f) + &(&t * &g), d.clone());
        prop_assert!(d.divides(&f).unwrap() && d.divides(&g).unwrap());
    }

    #[test]
    fn division_over_f5(f in f5poly(8), g in f5poly(4)) {
        let (quo, rem) = f.div_rem(&g).unwrap();
        prop_assert_eq!(&(&quo * &g) + &rem, f.clone());
        let (d, s, t) = f.xgcd(&g).unwrap();
        prop_assert_eq!(&(&s * &f) + &(&t * &g), d);
    }

    #[test]
    fn factorization_over_q_reassembles(f in qpoly(4), g in qpoly(3)) {
        let h = &f * &g;
        let fac = factor_over_q(&h).unwrap();
        prop_assert_eq!(fac.expand(), h);
        for (p, _) in &fac.factors {
            prop_assert!(p.is_monic());
            prop_assert!(is_irreducible(p).unwrap());
        }
    }

    #[test]
    fn factorization_over_f5_reassembles(f in f5poly(9)) {
        let fac = factor_mod_p(&f).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (p, _) in &fac.factors {
            prop_assert!(is_irreducible(p).unwrap());
        }
    }

    #[test]
    fn orbit_stabilizer((gens, x) in (2usize..=6).prop_flat_map(|n| (prop::collection::vec(perm(n), 1..=3), 1..=n))) {
        let g = generate(&gens, 1000).unwrap();
        let (orbit, stab) = g.orbit_stabilizer(x).unwrap();
        prop_assert_eq!(orbit.len() * stab.order(), g.order());
        if g.order() <= 120 {
            for h in g.subgroups(200).unwrap() {
                prop_assert_eq!(g.order() % h.order(), 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn tower_law(c in -40i64..=40, d in 2usize..=3, base in 0usize..3) {
        let k = match base {
            0 => NumberField::rationals(),
            1 => NumberField::new(&QPoly::from_i64(&[-2, 0, 1])).unwrap(),
            _ => NumberField::new(&QPoly::from_i64(&[1, 1, 1])).unwrap(),
        };
        let mut v = vec![0i64; d + 1];
        v[0] = c;
        v[d] = 1;
        let p = k.lift_poly(&QPoly::from_i64(&v));
        prop_assume!(is_irreducible(&p).unwrap());
        let adj = adjoin_root(&p).unwrap();
        prop_assert_eq!(adj.field.degree(), k.degree() * d);
        let image = p.map(&adj.field, |a| adj.embed.apply(a));
        prop_assert!(image.eval(&adj.new_root).is_zero());
    }

    #[test]
    fn automorphisms_match_degree(f in qpoly(3)) {
        prop_assume!(f.deg() >= 1);
        let sf = splitting_field(&f).unwrap();
        let g = automorphism_group(&sf).unwrap();
        prop_assert_eq!(g.order(), sf.degree());
        // irreducible f: the group is transitive on the roots
        if is_irreducible(&f).unwrap() {
            let (orbit, _) = g.group().orbit_stabilizer(1).unwrap();
            prop_assert_eq!(orbit.len(), sf.roots().len());
        }
    }

    #[test]
    fn trace_and_norm(a in (-20i64..=20, -20i64..=20, -20i64..=20, -20i64..=20), b in (-20i64..=20, -20i64..=20, -20i64..=20, -20i64..=20)) {
        let f = &QPoly::from_i64(&[-2, 0, 1]) * &QPoly::from_i64(&[-3, 0, 1]);
        let g = automorphism_group(&splitting_field(&f).unwrap()).unwrap();
        let k = g.field().clone();
        let to = |(w, x, y, z): (i64, i64, i64, i64)| {
            k.elem([w, x, y, z].iter().map(|&v| Rat::from_integer(Int::from(v))).collect())
        };
        let (x, y) = (to(a), to(b));
        prop_assert_eq!(trace(&g, &(&x + &y)).unwrap(), trace(&g, &x).unwrap() + trace(&g, &y).unwrap());
        prop_assert_eq!(norm(&g, &(&x * &y)).unwrap(), norm(&g, &x).unwrap() * norm(&g, &y).unwrap());
        // full-degree elements: N = (-1)^d a_0 of the minimal polynomial
        let m = x.minpoly();
        if m.deg() == 4 {
            prop_assert_eq!(norm(&g, &x).unwrap(), m.coeff(0));
        }
    }
}

/// Artin's theorem, the index formula and the antitone property on a few
/// fixed groups.
#[test]
fn correspondence_properties() {
    let polys = [
        QPoly::from_i64(&[-2, 0, 0, 1]),
        &QPoly::from_i64(&[-2, 0, 1]) * &QPoly::from_i64(&[-3, 0, 1]),
        QPoly::from_i64(&[-2, 0, 0, 0, 1]),
        galoiskit::poly::cyclotomic(7),
    ];
    for f in &polys {
        let g = automorphism_group(&splitting_field(f).unwrap()).unwrap();
        let d = g.field().degree();
        let rows = correspondence_table(&g).unwrap();
        for r in &rows {
            assert_eq!(d / r.fixed.degree, r.order());
            assert_eq!(r.degree_over_q, g.order() / r.order());
        }
        for small in &rows {
            for large in &rows {
                if small.subgroup.is_subset_of(&large.subgroup) {
                    // K^large ⊆ K^small
                    assert_eq!(small.degree_over_q % large.degree_over_q, 0);
                    assert!(small.elements.iter().all(|p| {
                        let a = g.automorphism_of(p).unwrap();
                        a.apply(&large.fixed.primitive) == large.fixed.primitive
                    }));
                }
            }
        }
    }
}

/// Counts of monic irreducibles of degree `d` over `F_p` agree with the
/// necklace formula.
#[test]
fn irreducible_counts() {
    fn mobius(n: u64) -> i64 {
        let f = galoiskit::exactnum::factor_u64(n);
        if f.iter().any(|&(_, e)| e > 1) {
            0
        } else if f.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
    for p in [2u64, 3] {
        let fp = PrimeField::new(p).unwrap();
        for d in 1..=4usize {
            let mut count = 0;
            for k in 0..p.pow(d as u32) {
                let mut c: Vec<i64> = (0..d).map(|i| ((k / p.pow(i as u32)) % p) as i64).collect();
                c.push(1);
                if is_irreducible(&Poly::from_ints(fp, &c)).unwrap() {
                    count += 1;
                }
            }
            let expected: i64 = (1..=d as u64)
                .filter(|e| (d as u64).is_multiple_of(*e))
                .map(|e| mobius(d as u64 / e) * (p as i64).pow(e as u32))
                .sum::<i64>()
                / d as i64;
            assert_eq!(count, expected, "p = {p}, d = {d}");
        }
    }
}

#[test]
fn rationals_field_is_exact() {
    let x = galoiskit::cli::parse_poly("1/3*x + 1/6", &Rationals).unwrap();
    assert_eq!(x.coeff(0), Rat::new(Int::from(1), Int::from(6)));
}
