//! Acceptance criteria, one line per criterion. Exits non-zero on any failure.

use std::process::Command;
use std::time::{Duration, Instant};

use brauer::admissible::{
    check_admissible, check_lie_weight_identity, check_u_admissible_series, check_weakly_admissible, lie_parameters,
    omega_from_u, IndexSet, LieKind,
};
use brauer::diagram::{double_factorial_odd, slice_matching_with, SliceStrategy};
use brauer::engine::poly::{self, Poly};
use brauer::lie_oracle::{build_lie, psi, psi_word, relation_matrices, Family, LieData};
use brauer::nw::{multiplication_table, verify_nw_relations};
use brauer::scalar::{self, frac, int, Scalar};
use brauer::{
    enumerate_matchings, enumerate_nd_basis, CategoryConfig, Engine, Gen, GeneratorWord, Matching, Morphism,
    NormalDiagram, OmegaSequence, Provenance,
};
use brauer_cli::expr;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
/// Weighted sum of expressions.
type Criterion = (&'static str, fn() -> Check);
type Side<'a> = Vec<(i64, &'a str)>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, format!("{what} took {t:?}, limit {limit:?}"))
}

fn c1() -> Check {
    let start = Instant::now();
    let expect = [1u128, 3, 15, 105, 945, 10395];
    for (r, &e) in (1..=6).zip(expect.iter()) {
        let n = enumerate_matchings(0, 2 * r).len() as u128;
        ensure(n == e && n == double_factorial_odd(r), format!("r={r}: {n} matchings"))?;
    }
    within(start, Duration::from_secs(5), "matching enumeration")?;
    Ok("(2r-1)!! matchings for r = 1..6".into())
}

fn c2() -> Check {
    let start = Instant::now();
    for (a, r, e) in [(1u32, 3usize, 15usize), (2, 2, 12), (2, 3, 120), (3, 2, 27), (4, 2, 48)] {
        let n = enumerate_nd_basis(r, r, Some(a), false, None).map_err(|e| e.to_string())?.len();
        ensure(n == e, format!("(a,r)=({a},{r}): {n} != {e}"))?;
    }
    within(start, Duration::from_secs(5), "basis enumeration")?;
    Ok("a^r(2r-1)!! cyclotomic basis sizes".into())
}

fn ev(engine: &Engine, text: &str) -> Result<Morphism, String> {
    let e = expr::parse(text).map_err(|e| format!("{text}: {e}"))?;
    e.eval(engine).map_err(|e| format!("{text}: {e:#}"))
}

/// `Σ c_i · expr_i`.
fn combo(engine: &Engine, terms: &[(i64, &str)]) -> Result<Morphism, String> {
    let mut acc: Option<Morphism> = None;
    for (c, t) in terms {
        let m = ev(engine, t)?.scale(&int(*c));
        acc = Some(match acc {
            None => m,
            Some(a) => a.add(&m).map_err(|e| e.to_string())?,
        });
    }
    acc.ok_or_else(|| "empty side".to_string())
}

fn c3() -> Check {
    let ab = Engine::new(CategoryConfig::affine());
    let rels: Vec<(&str, Side, Side)> = vec![
        ("S∘S = 1", vec![(1, "S ; S")], vec![(1, "id(2)")]),
        ("braid", vec![(1, "S * id(1) ; id(1) * S ; S * id(1)")], vec![(1, "id(1) * S ; S * id(1) ; id(1) * S")]),
        ("zigzag", vec![(1, "U * id(1) ; id(1) * A")], vec![(1, "id(1)")]),
        ("zigzag mirrored", vec![(1, "id(1) * U ; A * id(1)")], vec![(1, "id(1)")]),
        ("SU = U", vec![(1, "U ; S")], vec![(1, "U")]),
        ("AS = A", vec![(1, "S ; A")], vec![(1, "A")]),
        ("cap slide", vec![(1, "id(1) * S ; A * id(1)")], vec![(1, "S * id(1) ; id(1) * A")]),
        ("cup slide", vec![(1, "id(1) * U ; S * id(1)")], vec![(1, "U * id(1) ; id(1) * S")]),
        (
            "dot-crossing",
            vec![(1, "S ; X * id(1)"), (-1, "id(1) * X ; S")],
            vec![(1, "A ; U"), (-1, "id(2)")],
        ),
        ("bent dot", vec![(1, "U * id(1) ; id(1) * X * id(1) ; id(1) * A")], vec![(-1, "X")]),
        ("cap sign rule", vec![(1, "X * id(1) ; A")], vec![(-1, "id(1) * X ; A")]),
        ("cup sign rule", vec![(1, "U ; X * id(1)")], vec![(-1, "U ; id(1) * X")]),
        ("slide, left dot", vec![(1, "X * id(1) ; S"), (-1, "S ; id(1) * X")], vec![(1, "A ; U"), (-1, "id(2)")]),
        ("slide, right dot", vec![(1, "id(1) * X ; S"), (-1, "S ; X * id(1)")], vec![(1, "id(2)"), (-1, "A ; U")]),
        (
            "dot-crossing on three strands",
            vec![(1, "id(1) * S ; id(1) * X * id(1)"), (-1, "id(2) * X ; id(1) * S")],
            vec![(1, "id(1) * A ; id(1) * U"), (-1, "id(3)")],
        ),
    ];
    for (name, lhs, rhs) in &rels {
        let l = combo(&ab, lhs)?;
        let r = combo(&ab, rhs)?;
        ensure(l == r, format!("{name}: {} vs {}", l, r))?;
    }
    for m in 1..=3usize {
        let eta = ab.diagram(&NormalDiagram::undotted(Matching::nested_cups(m))).map_err(|e| e.to_string())?;
        let eps = ab.diagram(&NormalDiagram::undotted(Matching::nested_caps(m))).map_err(|e| e.to_string())?;
        let id = ab.identity(m);
        let t = |a: &Morphism, b: &Morphism| ab.tensor(a, b).map_err(|e| e.to_string());
        let left = ab.compose(&t(&id, &eps)?, &t(&eta, &id)?).map_err(|e| e.to_string())?;
        let right = ab.compose(&t(&eps, &id)?, &t(&id, &eta)?).map_err(|e| e.to_string())?;
        ensure(left == id && right == id, format!("zig-zag for m={m}"))?;
    }
    Ok(format!("{} relations and zig-zags for m <= 3 in formal AB", rels.len()))
}

fn loop_word(k: u32) -> String {
    if k == 0 {
        "U ; A".into()
    } else {
        format!("U ; X^{k} * id(1) ; A")
    }
}

fn c4() -> Check {
    let ab = Engine::new(CategoryConfig::affine());
    // Independent recursion on formal even generators.
    let mut values: Vec<Poly> = Vec::new();
    for k in 0..=9u32 {
        let v = if k % 2 == 0 {
            poly::var(k)
        } else {
            let mut acc = Poly::new();
            poly::add_scaled(&mut acc, &values[k as usize - 1], &frac(-1, 2));
            for j in 1..=k {
                let prod = poly::mul(&values[j as usize - 1], &values[(k - j) as usize]);
                poly::add_scaled(&mut acc, &prod, &(scalar::sign(j - 1) * frac(1, 2)));
            }
            acc
        };
        values.push(v);
    }
    for k in [1u32, 3, 5, 7, 9] {
        let m = ev(&ab, &loop_word(k))?;
        let p = ab.as_poly(&m).ok_or("loop is not in End(0)")?;
        ensure(p == values[k as usize], format!("Δ_{k}: {} vs {}", poly::format(&p), poly::format(&values[k as usize])))?;
    }
    let u = vec![int(1), int(2)];
    let cfg = CategoryConfig::affine_omega(omega_from_u(&u), 20).map_err(|e| e.to_string())?;
    let abw = Engine::new(cfg);
    let mut w: Vec<Scalar> = Vec::new();
    for k in 0..=9u32 {
        let m = ev(&abw, &loop_word(k))?;
        let p = abw.as_poly(&m).and_then(|p| poly::as_constant(&p)).ok_or("loop is not a scalar")?;
        w.push(p);
    }
    for k in [1usize, 3, 5, 7, 9] {
        let mut rec = -&w[k - 1];
        for j in 1..=k {
            rec += scalar::sign(j as u32 - 1) * &w[j - 1] * &w[k - j];
        }
        ensure(int(2) * &w[k] == rec, format!("numeric Δ_{k} = {}", scalar::format(&w[k])))?;
    }
    Ok("odd loops k = 1..9 match the recursion, formally and at u = (1,2)".into())
}

fn c5() -> Check {
    let mut engines: Vec<Engine> = [int(0), int(1), frac(5, 2)]
        .into_iter()
        .map(|w| Engine::new(CategoryConfig::affine_omega0(w)))
        .collect();
    engines.push(Engine::new(
        CategoryConfig::cyclotomic_omega(vec![int(1), int(2)], None).map_err(|e| e.to_string())?,
    ));
    for e in &engines {
        let rep = verify_nw_relations(3, e).map_err(|e| e.to_string())?;
        let failed: Vec<&str> =
            rep.results.iter().filter(|r| !r.holds && !r.variant).map(|r| r.label.as_str()).collect();
        ensure(failed.is_empty(), format!("{}: {failed:?}", e.config()))?;
        ensure(rep.standard_triple_forms() == Some(true), format!("{}: standard triple form fails", e.config()))?;
        ensure(rep.swapped_triple_forms() == Some(false), format!("{}: swapped triple form holds", e.config()))?;
    }
    Ok("r = 3 relations in AB(ω0) for ω0 = 0, 1, 5/2 and CBf(ω) at u = (1,2); e_i e_(i±1) e_i = e_i".into())
}

fn c6() -> Check {
    let e = Engine::new(CategoryConfig::cyclotomic_omega(vec![int(1), int(2)], None).map_err(|e| e.to_string())?);
    let t = multiplication_table(2, &e).map_err(|e| e.to_string())?;
    ensure(t.len() == 12 && t.closed, "12x12 table")?;
    let start = Instant::now();
    let t = multiplication_table(3, &e).map_err(|e| e.to_string())?;
    ensure(t.len() == 120 && t.closed, "120x120 table does not close")?;
    within(start, Duration::from_secs(120), "120x120 table")?;
    Ok(format!("12x12 and 120x120 tables close ({:.1?} for the latter)", start.elapsed()))
}

fn random_roots(rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let a = rng.gen_range(1..=4);
    (0..a).map(|_| frac(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect()
}

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let u = random_roots(&mut rng);
        let w = omega_from_u(&u);
        ensure(check_admissible(&w, 20), format!("admissible fails at u={u:?}"))?;
        ensure(check_weakly_admissible(&w, &u, 20), format!("weakly admissible fails at u={u:?}"))?;
        ensure(check_u_admissible_series(&u, &w, 20), format!("series fails at u={u:?}"))?;
        for k in 0..=12 {
            let bad = w.perturbed(k, frac(1, 3));
            ensure(!check_u_admissible_series(&u, &bad, 20), format!("perturbing ω_{k} at u={u:?} goes unnoticed"))?;
        }
    }
    Ok("50 random root lists pass all three checks; every single perturbation of ω_0..ω_12 is caught".into())
}

fn algebras() -> Result<Vec<LieData>, String> {
    [(Family::So, 3), (Family::So, 4), (Family::So, 5), (Family::Sp, 2), (Family::Sp, 4)]
        .into_iter()
        .map(|(f, n)| build_lie(f, n).map_err(|e| e.to_string()))
        .collect()
}

fn random_word(rng: &mut ChaCha8Rng, source: usize, len: usize, max_width: usize, dots: bool) -> GeneratorWord {
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
        w.push(gen).expect("fits");
    }
    w
}

fn c8() -> Check {
    let start = Instant::now();
    let ab = Engine::new(CategoryConfig::affine());
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    for l in algebras()? {
        for r in relation_matrices(&l).map_err(|e| e.to_string())? {
            ensure(r.holds, format!("{l}: relation {}", r.name))?;
        }
        let mut done = 0;
        while done < 200 {
            let a = rng.gen_range(0..=3);
            let f = random_word(&mut rng, a, 6, 4, true);
            let g = random_word(&mut rng, f.target(), 6, 4, true);
            if f.source + f.target() > 6 || g.source + g.target() > 6 {
                continue;
            }
            let fm = ab.normal_form(&f).map_err(|e| e.to_string())?;
            let gm = ab.normal_form(&g).map_err(|e| e.to_string())?;
            let gf = ab.compose(&gm, &fm).map_err(|e| e.to_string())?;
            let lhs = psi(&gf, &l).map_err(|e| e.to_string())?;
            let rhs = psi(&gm, &l).and_then(|a| a.mul(&psi(&fm, &l)?)).map_err(|e| e.to_string())?;
            ensure(lhs == rhs, format!("{l}: f={:?} g={:?}", f.gens(), g.gens()))?;
            let raw = psi_word(&f, &l).map_err(|e| e.to_string())?;
            ensure(raw == psi(&fm, &l).map_err(|e| e.to_string())?, format!("{l}: word {:?}", f.gens()))?;
            done += 1;
            pairs += 1;
        }
        let lc = l.clone();
        let w = OmegaSequence::from_fn(Provenance::FunctorSpecialized, move |k| lc.delta_specialization(k as u32));
        ensure(check_admissible(&w, 15), format!("{l}: specialized loop values not admissible"))?;
    }
    within(start, Duration::from_secs(180), "functor oracle")?;
    Ok(format!("relation matrices and {pairs} composable pairs over 5 algebras ({:.1?})", start.elapsed()))
}

/// Moves one dot slice below its predecessor when they touch disjoint strands.
fn shuffle_dots(word: &GeneratorWord, rng: &mut ChaCha8Rng) -> GeneratorWord {
    let mut gens = word.gens();
    for _ in 0..3 * gens.len() {
        if gens.len() < 2 {
            break;
        }
        let i = rng.gen_range(1..gens.len());
        let Gen::Dot(p) = gens[i] else { continue };
        let moved = match gens[i - 1] {
            Gen::Cup(q) if p < q => Some(p),
            Gen::Cup(q) if p > q + 1 => Some(p - 2),
            Gen::Cap(q) if p < q => Some(p),
            Gen::Cap(q) if p >= q => Some(p + 2),
            Gen::Cross(q) if p != q && p != q + 1 => Some(p),
            Gen::Dot(_) | Gen::Id => Some(p),
            _ => None,
        };
        if let Some(np) = moved {
            let prev = gens[i - 1];
            gens[i - 1] = Gen::Dot(np);
            gens[i] = prev;
        }
    }
    GeneratorWord::from_gens(word.source, &gens).expect("valid shuffle")
}

fn c9() -> Check {
    let ab = Engine::new(CategoryConfig::affine());
    let mut count = 0;
    for total in (0..=6usize).step_by(2) {
        for m in 0..=total {
            for mt in enumerate_matchings(m, total - m) {
                let a = ab.normal_form(&slice_matching_with(&mt, SliceStrategy::LeftFirst));
                let b = ab.normal_form(&slice_matching_with(&mt, SliceStrategy::RightFirst));
                let d = ab.diagram(&NormalDiagram::undotted(mt.clone()));
                let (a, b, d) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?, d.map_err(|e| e.to_string())?);
                ensure(a == b && a == d, format!("slicings of {mt} disagree"))?;
                count += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..500 {
        let a = rng.gen_range(0..=3);
        let w = random_word(&mut rng, a, 8, 5, true);
        let v = shuffle_dots(&w, &mut rng);
        let (a, b) = (ab.normal_form(&w).map_err(|e| e.to_string())?, ab.normal_form(&v).map_err(|e| e.to_string())?);
        ensure(a == b, format!("{:?} vs {:?}", w.gens(), v.gens()))?;
    }
    Ok(format!("{count} matchings sliced two ways; 500 words with relocated dot slices"))
}

fn c10() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut done = 0;
    for kind in [LieKind::SoEven, LieKind::SoOdd, LieKind::Sp] {
        for which in [IndexSet::I1, IndexSet::I2] {
            for _ in 0..10 {
                let k = rng.gen_range(1..=3);
                let q: Vec<u64> = (0..k).map(|_| rng.gen_range(1..=3)).collect();
                let mut c: Vec<Scalar> = (0..k).map(|_| frac(rng.gen_range(-6..=6), rng.gen_range(1..=2))).collect();
                if which == IndexSet::I2 {
                    c[k - 1] = int(0);
                }
                let u = lie_parameters(kind, &q, &c, which).map_err(|e| e.to_string())?;
                let w = omega_from_u(&u);
                ensure(
                    check_u_admissible_series(&u, &w, 2 * u.len() + 8),
                    format!("{kind:?} {which:?} q={q:?}: series identity fails"),
                )?;
                ensure(check_lie_weight_identity(kind, &q, &c), format!("{kind:?} q={q:?}: weight identity fails"))?;
                done += 1;
            }
        }
    }
    Ok(format!("{done} parameter instances over six (algebra, index set) combinations"))
}

fn cli(args: &[&str]) -> Result<(i32, String, String), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_brauer")).args(args).output().map_err(|e| e.to_string())?;
    Ok((
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    ))
}

fn c11() -> Check {
    let cases: [(&[&str], &str); 3] = [
        (&["normalize", "--category", "ab", "U ; A"], "1 * [bub {0:1}]\n"),
        (&["count-basis", "--category", "cbfw", "--u", "1,2", "2", "2"], "12\n"),
        (&["check-omega", "--u", "1,2", "--depth", "15"], "u-admissible: true\n"),
    ];
    for (args, expect) in cases {
        let (code, out, err) = cli(args)?;
        ensure(code == 0 && out == expect, format!("{args:?}: status {code}, stdout {out:?}, stderr {err:?}"))?;
    }
    let (code, _, err) = cli(&["normalize", "U ; Q"])?;
    ensure(code == 2 && err.contains("position 5"), format!("malformed input: status {code}, stderr {err:?}"))?;
    let (code, _, err) = cli(&["normalize", "id(1) * A ; A"])?;
    ensure(code == 2 && err.contains("arity"), format!("arity error: status {code}, stderr {err:?}"))?;
    Ok("documented outputs byte-for-byte; malformed input exits 2 with a position".into())
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("matching counts", c1),
        ("cyclotomic basis counts", c2),
        ("relation suite", c3),
        ("loop recursion", c4),
        ("Nazarov-Wenzl relations", c5),
        ("cyclotomic closure", c6),
        ("admissibility", c7),
        ("matrix functor", c8),
        ("slicing independence", c9),
        ("parameter families", c10),
        ("command line", c11),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{t:.1?}]", i + 1),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{t:.1?}]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
