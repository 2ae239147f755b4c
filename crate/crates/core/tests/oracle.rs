use brauer::lie_oracle::{build_lie, functor_check, psi, psi_word, Family, LieData};
use brauer::{CategoryConfig, Engine, Gen, GeneratorWord};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn algebras() -> Vec<LieData> {
    [(Family::So, 3), (Family::So, 4), (Family::So, 5), (Family::Sp, 2), (Family::Sp, 4)]
        .into_iter()
        .map(|(f, n)| build_lie(f, n).unwrap())
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, source: usize, len: usize, max_width: usize, dots: bool) -> GeneratorWord {
    let mut w = GeneratorWord::new(source);
    for _ in 0..len {
        let width = w.target();
        let choice = rng.gen_range(0..4);
        let gen = match choice {
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

#[test]
fn normalization_is_invariant_under_the_functor() {
    let engine = Engine::new(CategoryConfig::affine());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for l in algebras() {
        let mut done = 0;
        while done < 200 {
            let source = rng.gen_range(0..=3);
            let word = random_word(&mut rng, source, 7, 4, true);
            if word.source + word.target() > 6 {
                continue;
            }
            let nf = engine.normal_form(&word).unwrap();
            assert_eq!(psi(&nf, &l).unwrap(), psi_word(&word, &l).unwrap(), "{l}: {:?}", word.gens());
            done += 1;
        }
    }
}

#[test]
fn composition_and_tensor_are_preserved() {
    let engine = Engine::new(CategoryConfig::affine());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for l in algebras() {
        let mut done = 0;
        while done < 30 {
            let a = rng.gen_range(0..=2);
            let f = random_word(&mut rng, a, 5, 4, true);
            let g = random_word(&mut rng, f.target(), 5, 4, true);
            if f.source + 2 * f.target() + g.target() > 7 {
                continue;
            }
            let fm = engine.normal_form(&f).unwrap();
            let gm = engine.normal_form(&g).unwrap();
            let report = functor_check(&engine, &fm, &gm, &l).unwrap();
            assert!(report.ok(), "{l}: f={:?} g={:?} {report:?}", f.gens(), g.gens());
            done += 1;
        }
    }
}
