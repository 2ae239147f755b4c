//! Words in the Nazarov-Wenzl generators `e_i`, `s_i`, `x_j`, evaluated in
//! `End(r)` of an affine or cyclotomic Brauer category.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{enumerate_nd_basis, EndpointRole, NormalDiagram};
use crate::engine::{Engine, Kind, Morphism};
use crate::scalar::{self, Scalar};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letter {
    E(usize),
    S(usize),
    X(usize),
    Scalar(Scalar),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::E(i) => write!(f, "e{i}"),
            Letter::S(i) => write!(f, "s{i}"),
            Letter::X(j) => write!(f, "x{j}"),
            Letter::Scalar(c) => write!(f, "({})", scalar::format(c)),
        }
    }
}

/// A word read bottom to top: the first letter is applied first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NWWord {
    r: usize,
    letters: Vec<Letter>,
}

impl fmt::Display for NWWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl NWWord {
    pub fn new(r: usize, letters: Vec<Letter>) -> Result<Self, Error> {
        for l in &letters {
            let ok = match l {
                Letter::E(i) | Letter::S(i) => *i >= 1 && *i < r,
                Letter::X(j) => *j >= 1 && *j <= r,
                Letter::Scalar(_) => true,
            };
            if !ok {
                return Err(Error::Arity(format!("letter {l} is out of range for r = {r}")));
            }
        }
        Ok(NWWord { r, letters })
    }

    pub fn identity(r: usize) -> Self {
        NWWord { r, letters: Vec::new() }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation: `self` first, then `other` on top.
    pub fn then(&self, other: &NWWord) -> Result<NWWord, Error> {
        if self.r != other.r {
            return Err(Error::Arity(format!("words on {} and {} strands", self.r, other.r)));
        }
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        Ok(NWWord { r: self.r, letters })
    }
}

/// Evaluates a word in `End(r)`.
pub fn nw_element(word: &NWWord, engine: &Engine) -> Result<Morphism, Error> {
    let r = word.r;
    let mut acc = engine.identity(r);
    for l in &word.letters {
        let g = match l {
            Letter::E(i) => engine.e_i(*i, r)?,
            Letter::S(i) => engine.s_i(*i, r)?,
            Letter::X(j) => engine.x(*j, r)?,
            Letter::Scalar(c) => {
                acc = acc.scale(c);
                continue;
            }
        };
        acc = engine.compose(&g, &acc)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationResult {
    pub label: String,
    pub holds: bool,
    /// Normal form of `lhs - rhs` when the relation fails.
    pub difference: Option<String>,
    /// A swapped triple-product form, reported but not required.
    pub variant: bool,
}

/// Outcome of [`verify_nw_relations`].
#[derive(Clone, Debug)]
pub struct NwReport {
    pub r: usize,
    pub config: String,
    pub results: Vec<RelationResult>,
}

impl NwReport {
    fn group(&self, variant: bool) -> Option<bool> {
        let mut seen = false;
        let mut all = true;
        for res in self.results.iter().filter(|res| res.label.starts_with("triple") && res.variant == variant) {
            seen = true;
            all &= res.holds;
        }
        seen.then_some(all)
    }

    /// Whether the swapped forms `e_i e_{i+1} e_i = e_{i+1}` and
    /// `e_{i+1} e_i e_{i+1} = e_i` hold; `None` when `r < 3`.
    pub fn swapped_triple_forms(&self) -> Option<bool> {
        self.group(true)
    }

    /// Whether `e_i e_{i±1} e_i = e_i` holds; `None` when `r < 3`.
    pub fn standard_triple_forms(&self) -> Option<bool> {
        self.group(false)
    }

    /// Every relation except the swapped variants holds.
    pub fn passed(&self) -> bool {
        self.results.iter().filter(|res| !res.variant).all(|res| res.holds)
    }

    pub fn resolution(&self) -> String {
        match (self.swapped_triple_forms(), self.standard_triple_forms()) {
            (Some(p), Some(s)) => format!(
                "triple products: swapped form {}, standard form e_i e_(i±1) e_i = e_i {}",
                if p { "holds" } else { "fails" },
                if s { "holds" } else { "fails" }
            ),
            _ => "triple products: not applicable for r < 3".into(),
        }
    }
}

impl fmt::Display for NwReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "relations in End({}) of {}", self.r, self.config)?;
        for res in &self.results {
            let status = match (res.variant, res.holds) {
                (false, true) => "PASS",
                (false, false) => "FAIL",
                (true, true) => "VARIANT HOLDS",
                (true, false) => "VARIANT FAILS",
            };
            write!(f, "{status} {}", res.label)?;
            if let Some(d) = &res.difference {
                write!(f, "  difference: {d}")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", self.resolution())
    }
}

fn allows_nw(engine: &Engine) -> Result<(), Error> {
    if engine.config().allows_dots() {
        Ok(())
    } else {
        Err(Error::Config(format!("{} has no dots", engine.config())))
    }
}

struct Checker<'a> {
    engine: &'a Engine,
    r: usize,
    cache: HashMap<String, Morphism>,
    results: Vec<RelationResult>,
}

/// One side of a relation: signed word terms plus an optional bubble factor
/// `ω̂_k` multiplying a word.
type Side = Vec<(i64, Option<u32>, Vec<Letter>)>;

impl<'a> Checker<'a> {
    fn eval(&mut self, letters: &[Letter]) -> Result<Morphism, Error> {
        let key = letters.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
        if let Some(m) = self.cache.get(&key) {
            return Ok(m.clone());
        }
        let m = nw_element(&NWWord::new(self.r, letters.to_vec())?, self.engine)?;
        self.cache.insert(key, m.clone());
        Ok(m)
    }

    fn side(&mut self, side: &Side) -> Result<Morphism, Error> {
        let mut acc = self.engine.zero(self.r, self.r);
        for (c, bubble, letters) in side {
            let mut m = self.eval(letters)?;
            if let Some(k) = bubble {
                m = self.engine.compose(&self.engine.bubble(*k, self.r), &m)?;
            }
            acc = acc.add(&m.scale(&scalar::int(*c)))?;
        }
        Ok(acc)
    }

    fn check(&mut self, label: String, lhs: Side, rhs: Side) -> Result<(), Error> {
        self.check_with(label, lhs, rhs, false)
    }

    fn check_with(&mut self, label: String, lhs: Side, rhs: Side, variant: bool) -> Result<(), Error> {
        let diff = self.side(&lhs)?.sub(&self.side(&rhs)?)?;
        self.push(label, diff, variant);
        Ok(())
    }

    fn push(&mut self, label: String, diff: Morphism, variant: bool) {
        let holds = diff.is_zero();
        self.results.push(RelationResult { label, holds, difference: (!holds).then(|| diff.to_text()), variant });
    }
}

fn t(letters: Vec<Letter>) -> Side {
    vec![(1, None, letters)]
}

/// Evaluates every defining relation of the affine Nazarov-Wenzl algebra in
/// `End(r)`, with `ω̂_k` realized as `Δ_k · 1_r`.
pub fn verify_nw_relations(r: usize, engine: &Engine) -> Result<NwReport, Error> {
    use Letter::{E, S, X};
    allows_nw(engine)?;
    if r < 2 {
        return Err(Error::Invalid("relations need r >= 2".into()));
    }
    let mut c = Checker { engine, r, cache: HashMap::new(), results: Vec::new() };
    let far = |i: usize, j: usize| i.abs_diff(j) > 1;
    for i in 1..r {
        c.check(format!("s_i^2 = 1, i={i}"), t(vec![S(i), S(i)]), t(vec![]))?;
    }
    for i in 1..r {
        for j in 1..r {
            if far(i, j) && i < j {
                c.check(format!("s_i s_j = s_j s_i, i={i} j={j}"), t(vec![S(i), S(j)]), t(vec![S(j), S(i)]))?;
            }
        }
    }
    for i in 1..r.saturating_sub(1) {
        c.check(format!("s_i s_(i+1) s_i = s_(i+1) s_i s_(i+1), i={i}"), t(vec![S(i), S(i + 1), S(i)]), t(vec![S(i + 1), S(i), S(i + 1)]))?;
    }
    for i in 1..r {
        c.check(format!("e_i s_i = e_i, i={i}"), t(vec![E(i), S(i)]), t(vec![E(i)]))?;
        c.check(format!("s_i e_i = e_i, i={i}"), t(vec![S(i), E(i)]), t(vec![E(i)]))?;
    }
    c.check("e_1^2 = Δ0 e_1".into(), t(vec![E(1), E(1)]), vec![(1, Some(0), vec![E(1)])])?;
    for i in 1..r {
        for j in 1..r {
            if far(i, j) {
                c.check(format!("s_i e_j = e_j s_i, i={i} j={j}"), t(vec![S(i), E(j)]), t(vec![E(j), S(i)]))?;
                if i < j {
                    c.check(format!("e_i e_j = e_j e_i, i={i} j={j}"), t(vec![E(i), E(j)]), t(vec![E(j), E(i)]))?;
                }
            }
        }
    }
    for i in 1..r.saturating_sub(1) {
        c.check(format!("s_i e_(i+1) e_i = s_(i+1) e_i, i={i}"), t(vec![S(i), E(i + 1), E(i)]), t(vec![S(i + 1), E(i)]))?;
        c.check(format!("e_i e_(i+1) s_i = e_i s_(i+1), i={i}"), t(vec![E(i), E(i + 1), S(i)]), t(vec![E(i), S(i + 1)]))?;
        c.check_with(format!("triple e_i e_(i+1) e_i = e_(i+1), i={i}"), t(vec![E(i), E(i + 1), E(i)]), t(vec![E(i + 1)]), true)?;
        c.check(format!("triple e_i e_(i+1) e_i = e_i, i={i}"), t(vec![E(i), E(i + 1), E(i)]), t(vec![E(i)]))?;
        c.check_with(format!("triple e_(i+1) e_i e_(i+1) = e_i, i={i}"), t(vec![E(i + 1), E(i), E(i + 1)]), t(vec![E(i)]), true)?;
        c.check(format!("triple e_(i+1) e_i e_(i+1) = e_(i+1), i={i}"), t(vec![E(i + 1), E(i), E(i + 1)]), t(vec![E(i + 1)]))?;
    }
    for k in 1..=4u32 {
        let mut w = vec![E(1)];
        w.extend(std::iter::repeat_n(X(1), k as usize));
        w.push(E(1));
        c.check(format!("e_1 x_1^k e_1 = Δk e_1, k={k}"), t(w), vec![(1, Some(k), vec![E(1)])])?;
    }
    for i in 1..r {
        for j in 1..=r {
            if j != i && j != i + 1 {
                c.check(format!("s_i x_j = x_j s_i, i={i} j={j}"), t(vec![S(i), X(j)]), t(vec![X(j), S(i)]))?;
                c.check(format!("e_i x_j = x_j e_i, i={i} j={j}"), t(vec![E(i), X(j)]), t(vec![X(j), E(i)]))?;
            }
        }
    }
    for i in 1..=r {
        for j in i + 1..=r {
            c.check(format!("x_i x_j = x_j x_i, i={i} j={j}"), t(vec![X(i), X(j)]), t(vec![X(j), X(i)]))?;
        }
    }
    for i in 1..r {
        c.check(
            format!("s_i x_i - x_(i+1) s_i = e_i - 1, i={i}"),
            vec![(1, None, vec![S(i), X(i)]), (-1, None, vec![X(i + 1), S(i)])],
            vec![(1, None, vec![E(i)]), (-1, None, vec![])],
        )?;
        c.check(
            format!("x_i s_i - s_i x_(i+1) = e_i - 1, i={i}"),
            vec![(1, None, vec![X(i), S(i)]), (-1, None, vec![S(i), X(i + 1)])],
            vec![(1, None, vec![E(i)]), (-1, None, vec![])],
        )?;
        c.check(
            format!("e_i (x_i + x_(i+1)) = 0, i={i}"),
            vec![(1, None, vec![E(i), X(i)]), (1, None, vec![E(i), X(i + 1)])],
            vec![],
        )?;
        c.check(
            format!("(x_i + x_(i+1)) e_i = 0, i={i}"),
            vec![(1, None, vec![X(i), E(i)]), (1, None, vec![X(i + 1), E(i)])],
            vec![],
        )?;
    }
    // Admissibility at the level of extracted loop values.
    for k in (1..=7u32).step_by(2) {
        let mut w = vec![E(1)];
        w.extend(std::iter::repeat_n(X(1), k as usize));
        w.push(E(1));
        let lhs = c.side(&vec![(2, None, w)])?;
        let e1 = c.eval(&[E(1)])?;
        let bub = |j: u32| engine.bubble(j, r);
        let mut rhs = engine.compose(&bub(k - 1), &e1)?.scale(&-Scalar::one());
        for j in 1..=k {
            let term = engine.compose(&bub(j - 1), &engine.compose(&bub(k - j), &e1)?)?;
            rhs = rhs.add(&term.scale(&scalar::sign(j - 1)))?;
        }
        c.push(format!("loop recursion, k={k}"), lhs.sub(&rhs)?, false);
    }
    let mut gens: Vec<Letter> = (1..r).flat_map(|i| [E(i), S(i)]).collect();
    gens.extend((1..=r).map(X));
    for k in 0..=3u32 {
        for g in &gens {
            let m = c.eval(std::slice::from_ref(g))?;
            let z = engine.bubble(k, r);
            let diff = engine.compose(&z, &m)?.sub(&engine.compose(&m, &z)?)?;
            c.push(format!("Δ{k} central, with {g}"), diff, false);
        }
    }
    Ok(NwReport { r, config: engine.config().to_string(), results: c.results })
}

/// A permutation word: strand at position `i` ends at `target[i]` (0-based).
fn permutation_letters(target: &[usize]) -> Vec<Letter> {
    let mut cur = target.to_vec();
    let mut out = Vec::new();
    let n = cur.len();
    for pass in 0..n {
        for k in 0..n.saturating_sub(1 + pass) {
            if cur[k] > cur[k + 1] {
                cur.swap(k, k + 1);
                out.push(Letter::S(k + 1));
            }
        }
    }
    out
}

/// A word `x^β · (S_w E_1 E_3 ⋯ S_w') · x^α` whose evaluation is exactly `d`.
pub fn word_for_diagram(d: &NormalDiagram) -> Result<NWWord, Error> {
    let r = d.m();
    if d.s() != r {
        return Err(Error::Arity(format!("{} is not an endomorphism", d.to_text())));
    }
    if !d.bubbles.is_empty() {
        return Err(Error::Invalid("bubbles have no word form".into()));
    }
    let mt = &d.matching;
    let (mut caps, mut cups, mut verticals) = (Vec::new(), Vec::new(), Vec::new());
    for j in 1..=r {
        match mt.bot_role(j) {
            EndpointRole::CapLeft => caps.push((j, mt.bot_partner(j).1)),
            EndpointRole::VerticalBottom => verticals.push((j, mt.bot_partner(j).1)),
            _ => {}
        }
    }
    for p in 1..=r {
        if mt.top_role(p) == EndpointRole::CupLeft {
            cups.push((p, mt.top_partner(p).1));
        }
    }
    let t = caps.len();
    let mut bottom = vec![0usize; r];
    let mut top = vec![0usize; r];
    for (k, &(a, b)) in caps.iter().enumerate() {
        bottom[a - 1] = 2 * k;
        bottom[b - 1] = 2 * k + 1;
    }
    for (k, &(c, e)) in cups.iter().enumerate() {
        top[2 * k] = c - 1;
        top[2 * k + 1] = e - 1;
    }
    for (l, &(v, p)) in verticals.iter().enumerate() {
        bottom[v - 1] = 2 * t + l;
        top[2 * t + l] = p - 1;
    }
    let mut letters = Vec::new();
    for (j, &e) in d.bot.iter().enumerate() {
        letters.extend(std::iter::repeat_n(Letter::X(j + 1), e as usize));
    }
    letters.extend(permutation_letters(&bottom));
    letters.extend((0..t).map(|k| Letter::E(2 * k + 1)));
    letters.extend(permutation_letters(&top));
    for (p, &e) in d.top.iter().enumerate() {
        letters.extend(std::iter::repeat_n(Letter::X(p + 1), e as usize));
    }
    NWWord::new(r, letters)
}

/// One regular monomial per basis diagram of `End(r)` with fewer than `a`
/// dots on every dot slot.
pub fn regular_monomials(a: u32, r: usize) -> Result<Vec<NWWord>, Error> {
    if a == 0 {
        return Err(Error::Invalid("a must be at least 1".into()));
    }
    enumerate_nd_basis(r, r, Some(a), false, None)?.iter().map(word_for_diagram).collect()
}

/// Structure constants of `End(r)` in the cyclotomic diagram basis.
/// `products[i][j]` expands `basis[i] ∘ basis[j]`.
#[derive(Clone, Debug)]
pub struct MultiplicationTable {
    pub a: u32,
    pub r: usize,
    pub basis: Vec<NormalDiagram>,
    pub products: Vec<Vec<Vec<(usize, Scalar)>>>,
    /// Every product expanded inside the basis.
    pub closed: bool,
    pub warnings: Vec<String>,
}

impl MultiplicationTable {
    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficient of `basis[k]` in `basis[i] ∘ basis[j]`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.products[i][j].iter().find(|(x, _)| *x == k).map_or_else(Scalar::zero, |(_, c)| c.clone())
    }
}

/// Builds the full table for a cyclotomic configuration with specialized
/// loop values. Products with a term outside the basis clear `closed`.
pub fn multiplication_table(r: usize, engine: &Engine) -> Result<MultiplicationTable, Error> {
    let cfg = engine.config();
    if cfg.kind() != Kind::CBfw {
        return Err(Error::Config(format!("{cfg} is not a cyclotomic category with specialized loops")));
    }
    let a = cfg.a().expect("cyclotomic level") as u32;
    let basis = enumerate_nd_basis(r, r, Some(a), false, None)?;
    let index: HashMap<&NormalDiagram, usize> = basis.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let elems: Vec<Morphism> = basis.iter().map(|d| engine.diagram(d)).collect::<Result<_, _>>()?;
    let mut closed = true;
    let mut products = Vec::with_capacity(basis.len());
    for x in &elems {
        let mut row = Vec::with_capacity(basis.len());
        for y in &elems {
            let p = engine.compose(x, y)?;
            let mut entry = Vec::new();
            for (d, c) in p.terms() {
                match index.get(d) {
                    Some(&k) => entry.push((k, c.clone())),
                    None => closed = false,
                }
            }
            entry.sort_by_key(|(k, _)| *k);
            row.push(entry);
        }
        products.push(row);
    }
    Ok(MultiplicationTable { a, r, basis, products, closed, warnings: cfg.warnings().to_vec() })
}

/// `true` when the regular monomials evaluate to exactly the basis diagrams.
pub fn monomials_match_basis(a: u32, r: usize, engine: &Engine) -> Result<bool, Error> {
    let basis = enumerate_nd_basis(r, r, Some(a), false, None)?;
    for d in &basis {
        let word = word_for_diagram(d)?;
        let m = nw_element(&word, engine)?;
        if m.len() != 1 || !m.coefficient(d).is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::CategoryConfig;
    use crate::scalar::int;

    #[test]
    fn word_evaluation() {
        let ab = Engine::new(CategoryConfig::affine());
        let e = nw_element(&NWWord::new(2, vec![Letter::E(1)]).unwrap(), &ab).unwrap();
        assert_eq!(e.to_text(), "1 * [pairs [(1,2),(3,4)]]");
        let ss = nw_element(&NWWord::new(2, vec![Letter::S(1), Letter::S(1)]).unwrap(), &ab).unwrap();
        assert_eq!(ss, ab.identity(2));
        let exe = nw_element(&NWWord::new(2, vec![Letter::E(1), Letter::X(1), Letter::E(1)]).unwrap(), &ab).unwrap();
        assert_eq!(exe.to_text(), "-1/2 * [pairs [(1,2),(3,4)] bub {0:1}] + 1/2 * [pairs [(1,2),(3,4)] bub {0:2}]");
        assert!(NWWord::new(2, vec![Letter::E(2)]).is_err());
        assert!(NWWord::new(2, vec![Letter::X(3)]).is_err());
        let two = nw_element(&NWWord::new(1, vec![Letter::Scalar(int(2))]).unwrap(), &ab).unwrap();
        assert_eq!(two.to_text(), "2 * [pairs [(1,2)]]");
    }

    #[test]
    fn relation_report() {
        let e = Engine::new(CategoryConfig::affine_omega0(int(5)));
        let rep = verify_nw_relations(2, &e).unwrap();
        assert!(rep.passed(), "{rep}");
        let ee = nw_element(&NWWord::new(2, vec![Letter::E(1), Letter::E(1)]).unwrap(), &e).unwrap();
        assert_eq!(ee.to_text(), "5 * [pairs [(1,2),(3,4)]]");
        let e3 = Engine::new(CategoryConfig::affine_omega0(int(2)));
        let rep = verify_nw_relations(3, &e3).unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.standard_triple_forms(), Some(true));
        assert_eq!(rep.swapped_triple_forms(), Some(false));
    }

    #[test]
    fn regular_monomial_counts() {
        assert_eq!(regular_monomials(1, 1).unwrap(), vec![NWWord::identity(1)]);
        assert_eq!(regular_monomials(2, 2).unwrap().len(), 12);
        assert_eq!(regular_monomials(3, 2).unwrap().len(), 27);
        let ab = Engine::new(CategoryConfig::affine());
        assert!(monomials_match_basis(3, 2, &ab).unwrap());
        assert!(monomials_match_basis(2, 3, &ab).unwrap());
        assert!(monomials_match_basis(1, 4, &ab).unwrap());
    }

    #[test]
    fn small_tables() {
        let e = Engine::new(CategoryConfig::cyclotomic_omega(vec![int(3)], None).unwrap());
        let t = multiplication_table(1, &e).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.products[0][0], vec![(0, int(1))]);
        let x = e.x(1, 1).unwrap();
        assert_eq!(e.compose(&x, &x).unwrap(), e.identity(1).scale(&int(9)));
        let e = Engine::new(CategoryConfig::cyclotomic_omega(vec![int(1), int(2)], None).unwrap());
        let t = multiplication_table(2, &e).unwrap();
        assert_eq!(t.len(), 12);
        assert!(t.closed);
        let e1 = t.basis.iter().position(|d| d.to_text() == NormalDiagram::undotted(crate::Matching::new(&[(1, 2), (3, 4)], 2, 2).unwrap()).to_text()).unwrap();
        let omega0 = e.config().bubble_scalar(0).unwrap();
        assert_eq!(t.products[e1][e1], vec![(e1, omega0)]);
        assert!(multiplication_table(2, &Engine::new(CategoryConfig::affine())).is_err());
    }
}
