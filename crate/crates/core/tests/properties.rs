use brauer::admissible::{check_admissible, check_u_admissible_series, check_weakly_admissible, omega_from_u};
use brauer::diagram::{enumerate_matchings, slice_matching_with, SliceStrategy};
use brauer::lie_oracle::{build_lie, psi, psi_word, Family};
use brauer::Scalar;
use brauer::scalar::{frac, int};
use brauer::{CategoryConfig, Engine, Gen, GeneratorWord};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn word(seed: u64, source: usize, len: usize, max_width: usize, dots: bool) -> GeneratorWord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = GeneratorWord::new(source);
    for _ in 0..len {
        let width = w.target();
        let gen = match rng.gen_range(0..4) {
            0 if width + 2 <= max_width => Gen::Cup(rng.gen_range(1..=width + 1)),
            1 if width >= 2 => Gen::Cap(rng.gen_range(1..width)),
            2 if width >= 2 => Gen::Cross(rng.gen_range(1..width)),
            3 if dots && width >= 1 => Gen::Dot(rng.gen_range(1..=width)),
            _ => continue,
        };
        w.push(gen).unwrap();
    }
    w
}

fn roots() -> impl Strategy<Value = Vec<Scalar>> {
    prop::collection::vec((-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d)), 1..=4)
}

fn affine() -> Engine {
    Engine::new(CategoryConfig::affine())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_is_associative(s1: u64, s2: u64, s3: u64, m in 0usize..3) {
        let e = affine();
        let f = e.normal_form(&word(s1, m, 5, 4, true)).unwrap();
        let g = e.normal_form(&word(s2, f.target(), 5, 4, true)).unwrap();
        let h = e.normal_form(&word(s3, g.target(), 5, 4, true)).unwrap();
        let left = e.compose(&e.compose(&h, &g).unwrap(), &f).unwrap();
        let right = e.compose(&h, &e.compose(&g, &f).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn interchange_law(s1: u64, s2: u64, s3: u64, s4: u64, a in 0usize..3, b in 0usize..3) {
        for cfg in [CategoryConfig::affine(), CategoryConfig::affine_omega0(frac(-3, 2))] {
            let e = Engine::new(cfg);
            let f1 = e.normal_form(&word(s1, a, 4, 3, true)).unwrap();
            let f2 = e.normal_form(&word(s2, f1.target(), 4, 3, true)).unwrap();
            let g1 = e.normal_form(&word(s3, b, 4, 3, true)).unwrap();
            let g2 = e.normal_form(&word(s4, g1.target(), 4, 3, true)).unwrap();
            let lhs = e.tensor(&e.compose(&f2, &f1).unwrap(), &e.compose(&g2, &g1).unwrap()).unwrap();
            let rhs = e.compose(&e.tensor(&f2, &g2).unwrap(), &e.tensor(&f1, &g1).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn undotted_interchange_in_brauer(s1: u64, s2: u64, s3: u64, s4: u64, a in 0usize..4, b in 0usize..4) {
        for cfg in [CategoryConfig::brauer(), CategoryConfig::brauer_omega0(int(4))] {
            let e = Engine::new(cfg);
            let f1 = e.normal_form(&word(s1, a, 6, 4, false)).unwrap();
            let f2 = e.normal_form(&word(s2, f1.target(), 6, 4, false)).unwrap();
            let g1 = e.normal_form(&word(s3, b, 6, 4, false)).unwrap();
            let g2 = e.normal_form(&word(s4, g1.target(), 6, 4, false)).unwrap();
            let lhs = e.tensor(&e.compose(&f2, &f1).unwrap(), &e.compose(&g2, &g1).unwrap()).unwrap();
            let rhs = e.compose(&e.tensor(&f2, &g2).unwrap(), &e.tensor(&f1, &g1).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn tensor_is_associative(s1: u64, s2: u64, s3: u64) {
        let e = affine();
        let f = e.normal_form(&word(s1, 1, 4, 3, true)).unwrap();
        let g = e.normal_form(&word(s2, 2, 4, 3, true)).unwrap();
        let h = e.normal_form(&word(s3, 1, 4, 3, true)).unwrap();
        let left = e.tensor(&e.tensor(&f, &g).unwrap(), &h).unwrap();
        let right = e.tensor(&f, &e.tensor(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn quotient_maps_preserve_composition(s1: u64, s2: u64, m in 0usize..3) {
        let ab = affine();
        let f = ab.normal_form(&word(s1, m, 6, 4, true)).unwrap();
        let g = ab.normal_form(&word(s2, f.target(), 6, 4, true)).unwrap();
        let gf = ab.compose(&g, &f).unwrap();
        let u = vec![int(1), int(2)];
        let quotients = [
            CategoryConfig::cyclotomic_omega(u.clone(), None).unwrap(),
            CategoryConfig::cyclotomic_omega(vec![frac(1, 2), int(-1), int(3)], None).unwrap(),
            CategoryConfig::affine_omega(brauer::admissible::omega_from_u(&u), 12).unwrap(),
            CategoryConfig::affine_omega0(int(7)),
        ];
        for cfg in quotients {
            let q = Engine::new(cfg);
            let (pf, pg) = (q.project(&f).unwrap(), q.project(&g).unwrap());
            prop_assert_eq!(q.compose(&pg, &pf).unwrap(), q.project(&gf).unwrap(), "{}", q.config());
        }
    }

    // Formal cyclotomic bubbles reduce path-dependently; the two routes
    // agree once Δ_0 takes its u-determined value.
    #[test]
    fn formal_cyclotomic_agrees_after_specialization(s1: u64, s2: u64, m in 0usize..3) {
        let ab = affine();
        let f = ab.normal_form(&word(s1, m, 6, 4, true)).unwrap();
        let g = ab.normal_form(&word(s2, f.target(), 6, 4, true)).unwrap();
        let gf = ab.compose(&g, &f).unwrap();
        let u = vec![int(1), int(2)];
        let formal = Engine::new(CategoryConfig::cyclotomic(u.clone()).unwrap());
        let special = Engine::new(CategoryConfig::cyclotomic_omega(u, None).unwrap());
        let via_formal = formal.compose(&formal.project(&g).unwrap(), &formal.project(&f).unwrap()).unwrap();
        prop_assert_eq!(special.project(&via_formal).unwrap(), special.project(&gf).unwrap());
    }

    #[test]
    fn outputs_are_normally_ordered(s: u64, m in 0usize..4) {
        let configs = [
            CategoryConfig::affine(),
            CategoryConfig::cyclotomic(vec![int(0), int(1)]).unwrap(),
            CategoryConfig::cyclotomic_omega(vec![int(2), int(-1), frac(1, 3)], None).unwrap(),
        ];
        for cfg in configs {
            let a = cfg.a();
            let e = Engine::new(cfg);
            let f = e.normal_form(&word(s, m, 8, 5, true)).unwrap();
            for (d, _) in f.terms() {
                prop_assert!(d.is_normal());
                if let Some(a) = a {
                    prop_assert!((d.max_dots() as usize) < a);
                }
            }
        }
    }

    #[test]
    fn bending_round_trips(s: u64, m in 0usize..3) {
        let e = affine();
        let f = e.normal_form(&word(s, m, 5, 4, true)).unwrap();
        let up = e.bend_up(&f).unwrap();
        prop_assert_eq!(up.source(), 0);
        prop_assert_eq!(e.bend_down(&up, f.source()).unwrap(), f);
    }

    #[test]
    fn normalization_commutes_with_the_oracle(s: u64, m in 0usize..3) {
        let l = build_lie(Family::Sp, 2).unwrap();
        let w = word(s, m, 7, 4, true);
        let nf = affine().normal_form(&w).unwrap();
        prop_assert_eq!(psi(&nf, &l).unwrap(), psi_word(&w, &l).unwrap());
    }

    #[test]
    fn slicing_strategies_agree(m in 0usize..6, half_s in 0usize..3, pick: prop::sample::Index) {
        let all = enumerate_matchings(m, m % 2 + 2 * half_s);
        prop_assume!(!all.is_empty());
        let matching = &all[pick.index(all.len())];
        let e = affine();
        let left = e.normal_form(&slice_matching_with(matching, SliceStrategy::LeftFirst)).unwrap();
        let right = e.normal_form(&slice_matching_with(matching, SliceStrategy::RightFirst)).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(left.terms().count(), 1);
    }

    #[test]
    fn sequences_from_roots_are_admissible(u in roots()) {
        let omega = omega_from_u(&u);
        let depth = brauer::admissible::default_depth(u.len());
        prop_assert!(check_admissible(&omega, depth));
        prop_assert!(check_weakly_admissible(&omega, &u, depth));
        prop_assert!(check_u_admissible_series(&u, &omega, depth));
    }

    #[test]
    fn perturbations_break_u_admissibility(u in roots(), k in 0usize..8, n in 1i64..5) {
        let omega = omega_from_u(&u).perturbed(k, frac(n, 3));
        prop_assert!(!check_u_admissible_series(&u, &omega, 12));
    }

    #[test]
    fn normalization_never_raises_degree(s: u64, m in 0usize..4) {
        let w = word(s, m, 10, 5, true);
        let dots = w.gens().iter().filter(|g| matches!(g, Gen::Dot(_))).count() as u32;
        for cfg in [CategoryConfig::affine(), CategoryConfig::cyclotomic_omega(vec![int(1), int(2)], None).unwrap()] {
            let f = Engine::new(cfg).normal_form(&w).unwrap();
            for (d, _) in f.terms() {
                let bubble_dots: u32 = d.bubbles.iter().map(|(k, e)| k * e).sum();
                prop_assert!(d.degree() + bubble_dots <= dots, "{d} from {dots} dots");
            }
        }
    }
}
