//! Exact composition, tensor product and normalization of morphisms.
//!
//! A [`Morphism`] is a finite combination of [`NormalDiagram`]s. All
//! rewriting happens in the basis of normally ordered diagrams: a
//! composite `g ∘ f` is computed by slicing `g` into elementary layers and
//! applying each layer to every term of `f`, carrying every correction term
//! of the dot-sliding relations exactly.

mod config;
pub mod poly;
mod rewrite;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

pub use config::{CategoryConfig, Kind};
pub use poly::Poly;
use rewrite::{lin_add_scaled, single, Lin};

use crate::diagram::{EndpointRole, Gen, GeneratorWord, Matching, NormalDiagram};
use crate::scalar::{self, Scalar};
use crate::Error;

/// Value of a closed dotted loop.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BubbleValue {
    Formal(Poly),
    Scalar(Scalar),
}

impl fmt::Display for BubbleValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BubbleValue::Formal(p) => f.write_str(&poly::format(p)),
            BubbleValue::Scalar(s) => f.write_str(&scalar::format(s)),
        }
    }
}

/// The generators of the affine Brauer category.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Cup,
    Cap,
    Cross,
    Dot,
    Id(usize),
}

#[derive(Default)]
struct Caches {
    bubble: HashMap<u32, Poly>,
    slices: HashMap<Matching, Arc<Vec<Gen>>>,
    power: HashMap<(usize, usize), Arc<Lin>>,
    z: HashMap<(usize, u32), Arc<Lin>>,
    memo: HashMap<(u8, NormalDiagram, usize), Lin>,
}

const MEMO_LIMIT: usize = 1 << 18;

/// A rewriting engine bound to one configuration. Internally memoizes
/// bubble values, slicings, cyclotomic reductions and elementary steps.
pub struct Engine {
    cfg: Arc<CategoryConfig>,
    caches: Mutex<Caches>,
}

impl fmt::Debug for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Engine({})", self.cfg)
    }
}

/// Engine for the affine category with formal bubbles, shared by every
/// configuration that needs to slide dotted bubbles past strands.
pub(crate) fn affine_engine() -> &'static Engine {
    static AB: OnceLock<Engine> = OnceLock::new();
    AB.get_or_init(|| Engine::new(CategoryConfig::affine()))
}

/// `f ⊗ 1_n` termwise.
pub(crate) fn tensor_identity(f: Arc<Lin>, n: usize) -> Lin {
    if n == 0 {
        return (*f).clone();
    }
    let id = Matching::identity(n);
    f.iter()
        .map(|(d, c)| {
            let mut t = d.clone();
            t.matching = d.matching.tensor(&id);
            t.top.extend(std::iter::repeat_n(0, n));
            t.bot.extend(std::iter::repeat_n(0, n));
            (t, c.clone())
        })
        .collect()
}

/// A morphism `Hom(source, target)` as a combination of normal diagrams.
#[derive(Clone)]
pub struct Morphism {
    source: usize,
    target: usize,
    terms: Lin,
    config: Arc<CategoryConfig>,
}

impl PartialEq for Morphism {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.terms == other.terms
            && (Arc::ptr_eq(&self.config, &other.config) || *self.config == *other.config)
    }
}

impl Eq for Morphism {}

impl fmt::Debug for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hom({},{}) {}", self.source, self.target, self.to_text())
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Compact human form of one diagram: only non-trivial components appear.
pub fn term_text(d: &NormalDiagram) -> String {
    let list = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
    let mut parts = Vec::new();
    if d.m() + d.s() > 0 {
        parts.push(format!("pairs {}", d.matching));
    }
    if d.top.iter().any(|&x| x > 0) {
        parts.push(format!("top [{}]", list(&d.top)));
    }
    if d.bot.iter().any(|&x| x > 0) {
        parts.push(format!("bot [{}]", list(&d.bot)));
    }
    if !d.bubbles.is_empty() {
        let b: Vec<String> = d.bubbles.iter().map(|(k, e)| format!("{k}:{e}")).collect();
        parts.push(format!("bub {{{}}}", b.join(",")));
    }
    format!("[{}]", parts.join(" "))
}

impl Morphism {
    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn config(&self) -> &CategoryConfig {
        &self.config
    }

    pub fn terms(&self) -> impl Iterator<Item = (&NormalDiagram, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &NormalDiagram) -> Scalar {
        self.terms.get(d).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest total dot count among the terms.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|d| d.degree()).max().unwrap_or(0)
    }

    fn same_shape(&self, other: &Morphism, what: &str) -> Result<(), Error> {
        if !Arc::ptr_eq(&self.config, &other.config) && *self.config != *other.config {
            return Err(Error::Config(format!("{what}: {} vs {}", self.config, other.config)));
        }
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::Arity(format!(
                "{what}: Hom({},{}) vs Hom({},{})",
                self.source, self.target, other.source, other.target
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism, Error> {
        self.same_shape(other, "sum")?;
        let mut out = self.clone();
        lin_add_scaled(&mut out.terms, other.terms.clone(), &Scalar::one());
        Ok(out)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism, Error> {
        self.same_shape(other, "difference")?;
        let mut out = self.clone();
        lin_add_scaled(&mut out.terms, other.terms.clone(), &-Scalar::one());
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Morphism {
        let mut out = self.clone();
        out.terms = Lin::new();
        lin_add_scaled(&mut out.terms, self.terms.clone(), c);
        out
    }

    /// `coef * [diagram] + …`, `0` for the zero morphism.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(d, c)| format!("{} * {}", scalar::format(c), term_text(d)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Engine {
    pub fn new(config: CategoryConfig) -> Self {
        Engine { cfg: Arc::new(config), caches: Mutex::new(Caches::default()) }
    }

    pub fn config(&self) -> &CategoryConfig {
        &self.cfg
    }

    fn wrap(&self, source: usize, target: usize, terms: Lin) -> Morphism {
        Morphism { source, target, terms, config: self.cfg.clone() }
    }

    fn own(&self, f: &Morphism) -> Result<(), Error> {
        if Arc::ptr_eq(&f.config, &self.cfg) || *f.config == *self.cfg {
            Ok(())
        } else {
            Err(Error::Config(format!("morphism over {} used with {}", f.config, self.cfg)))
        }
    }

    pub(crate) fn memo_get(&self, op: u8, d: &NormalDiagram, p: usize) -> Option<Lin> {
        self.caches.lock().unwrap().memo.get(&(op, d.clone(), p)).cloned()
    }

    pub(crate) fn memo_put(&self, op: u8, d: &NormalDiagram, p: usize, v: &Lin) {
        let mut c = self.caches.lock().unwrap();
        if c.memo.len() >= MEMO_LIMIT {
            c.memo.clear();
        }
        c.memo.insert((op, d.clone(), p), v.clone());
    }

    pub fn zero(&self, source: usize, target: usize) -> Morphism {
        self.wrap(source, target, Lin::new())
    }

    pub fn identity(&self, n: usize) -> Morphism {
        self.wrap(n, n, single(NormalDiagram::undotted(Matching::identity(n))))
    }

    /// `c · 1_n`.
    pub fn scalar(&self, n: usize, c: Scalar) -> Morphism {
        self.identity(n).scale(&c)
    }

    pub fn generator(&self, kind: GenKind) -> Result<Morphism, Error> {
        let d = match kind {
            GenKind::Cup => NormalDiagram::undotted(Matching::cup()),
            GenKind::Cap => NormalDiagram::undotted(Matching::cap()),
            GenKind::Cross => NormalDiagram::undotted(Matching::cross()),
            GenKind::Id(n) => return Ok(self.identity(n)),
            GenKind::Dot => {
                if !self.cfg.allows_dots() {
                    return Err(Error::Config(format!("{} has no dot generator", self.cfg)));
                }
                return self.x(1, 1);
            }
        };
        let (m, s) = (d.m(), d.s());
        Ok(self.wrap(m, s, single(d)))
    }

    /// The morphism represented by an arbitrary (possibly non-reduced for this
    /// configuration) normal diagram: dots are re-applied and bubbles
    /// evaluated through the configuration's rules.
    pub fn diagram(&self, d: &NormalDiagram) -> Result<Morphism, Error> {
        if !d.is_normal() {
            return Err(Error::Invalid(format!("{d} is not normally ordered")));
        }
        if !self.cfg.allows_dots() && d.degree() > 0 {
            return Err(Error::Config(format!("{} has no dots", self.cfg)));
        }
        let mut p = poly::one();
        for (&k, &e) in &d.bubbles {
            p = poly::mul(&p, &poly::pow(&self.bubble_value(k), e));
        }
        let base = NormalDiagram::undotted(d.matching.clone());
        let lin = self.lin_mul_poly(single(base), &p);
        Ok(self.wrap(d.m(), d.s(), self.readd(lin, &d.top, &d.bot)))
    }

    /// A combination of diagrams, each normalized via [`Engine::diagram`].
    pub fn from_terms<'a>(
        &self,
        source: usize,
        target: usize,
        terms: impl IntoIterator<Item = (&'a NormalDiagram, Scalar)>,
    ) -> Result<Morphism, Error> {
        let mut acc = self.zero(source, target);
        for (d, c) in terms {
            if (d.m(), d.s()) != (source, target) {
                return Err(Error::Arity(format!("{d} is not in Hom({source},{target})")));
            }
            acc = acc.add(&self.diagram(d)?.scale(&c))?;
        }
        Ok(acc)
    }

    /// Image of a morphism of another configuration under the quotient
    /// map onto this one.
    pub fn project(&self, f: &Morphism) -> Result<Morphism, Error> {
        self.from_terms(f.source, f.target, f.terms.iter().map(|(d, c)| (d, c.clone())))
    }

    /// `g ∘ f`.
    pub fn compose(&self, g: &Morphism, f: &Morphism) -> Result<Morphism, Error> {
        self.own(g)?;
        self.own(f)?;
        if f.target != g.source {
            return Err(Error::Arity(format!(
                "cannot compose Hom({},{}) after Hom({},{})",
                g.source, g.target, f.source, f.target
            )));
        }
        let mut acc = Lin::new();
        for (gt, gc) in &g.terms {
            for (ft, fc) in &f.terms {
                lin_add_scaled(&mut acc, self.compose_terms(gt, ft), &(gc * fc));
            }
        }
        Ok(self.wrap(f.source, g.target, acc))
    }

    /// `f ⊗ g`. In the cyclotomic and fully specialized quotients the result
    /// is computed on representatives, which is meaningful when it is then
    /// only composed or tensored on the right.
    pub fn tensor(&self, f: &Morphism, g: &Morphism) -> Result<Morphism, Error> {
        self.own(f)?;
        self.own(g)?;
        let terms = self.tensor_lin(&f.terms, &g.terms);
        Ok(self.wrap(f.source + g.source, f.target + g.target, terms))
    }

    /// Applies one elementary layer on top of `f`.
    pub fn apply_slice(&self, f: &Morphism, gen: Gen) -> Result<Morphism, Error> {
        self.own(f)?;
        let w = f.target;
        let target = match gen {
            Gen::Cup(p) if p >= 1 && p <= w + 1 => w + 2,
            Gen::Cap(p) if p >= 1 && p < w => w - 2,
            Gen::Cross(p) if p >= 1 && p < w => w,
            Gen::Dot(p) if p >= 1 && p <= w => {
                if !self.cfg.allows_dots() {
                    return Err(Error::Config(format!("{} has no dots", self.cfg)));
                }
                w
            }
            Gen::Id => w,
            _ => return Err(Error::Arity(format!("{gen:?} does not fit width {w}"))),
        };
        let terms = self.lin_map(f.terms.clone(), |d| self.apply_gen(d, gen));
        Ok(self.wrap(f.source, target, terms))
    }

    /// Folds [`Engine::apply_slice`] over a word, starting from the identity.
    pub fn normal_form(&self, word: &GeneratorWord) -> Result<Morphism, Error> {
        word.validate()?;
        let mut f = self.identity(word.source);
        for s in &word.slices {
            f = self.apply_slice(&f, s.gen)?;
        }
        Ok(f)
    }

    /// The closed loop with `c` dots.
    pub fn reduce_bubble(&self, c: u32) -> Result<BubbleValue, Error> {
        if c > 0 && !self.cfg.allows_dots() {
            return Err(Error::Config(format!("{} has no dots", self.cfg)));
        }
        let p = self.bubble_value(c);
        Ok(match (self.cfg.specialized() || matches!(self.cfg.kind(), Kind::B0), poly::as_constant(&p)) {
            (true, Some(s)) => BubbleValue::Scalar(s),
            _ => BubbleValue::Formal(p),
        })
    }

    /// A normal diagram with one extra dot at top position `p`, normalized.
    pub fn relocate_top_dot(&self, d: &NormalDiagram, p: usize) -> Result<Morphism, Error> {
        if p == 0 || p > d.s() {
            return Err(Error::Arity(format!("top position {p} outside 1..={}", d.s())));
        }
        let f = self.diagram(d)?;
        self.apply_slice(&f, Gen::Dot(p))
    }

    /// A normal diagram precomposed with one dot at bottom position `j`.
    pub fn relocate_bottom_dot(&self, d: &NormalDiagram, j: usize) -> Result<Morphism, Error> {
        if j == 0 || j > d.m() {
            return Err(Error::Arity(format!("bottom position {j} outside 1..={}", d.m())));
        }
        if !self.cfg.allows_dots() {
            return Err(Error::Config(format!("{} has no dots", self.cfg)));
        }
        let f = self.diagram(d)?;
        let terms = self.lin_map(f.terms, |t| self.bot_dot(t, j));
        Ok(self.wrap(d.m(), d.s(), terms))
    }

    /// Reduces a diagram in which one endpoint carries `a` or more dots in a
    /// cyclotomic configuration.
    pub fn dot_overflow(&self, d: &NormalDiagram, top: bool, pos: usize) -> Result<Morphism, Error> {
        if self.cfg.a().is_none() {
            return Err(Error::Config(format!("{} is not cyclotomic", self.cfg)));
        }
        let n = if top { d.s() } else { d.m() };
        if pos == 0 || pos > n {
            return Err(Error::Arity(format!("position {pos} outside 1..={n}")));
        }
        let mut base = d.clone();
        let count = if top {
            std::mem::take(&mut base.top[pos - 1])
        } else {
            std::mem::take(&mut base.bot[pos - 1])
        };
        let role = if top { d.matching.top_role(pos) } else { d.matching.bot_role(pos) };
        let ok = if top {
            matches!(role, EndpointRole::VerticalTop | EndpointRole::CupRight)
        } else {
            role == EndpointRole::CapLeft
        };
        if !ok {
            return Err(Error::Invalid(format!("position {pos} is not where the strand keeps its dots")));
        }
        let mut f = self.diagram(&base)?;
        for _ in 0..count {
            f = if top {
                self.apply_slice(&f, Gen::Dot(pos))?
            } else {
                let terms = self.lin_map(f.terms.clone(), |t| self.bot_dot(t, pos));
                self.wrap(f.source, f.target, terms)
            };
        }
        Ok(f)
    }

    /// `(f ⊗ 1_m) ∘ η_m` in `Hom(0, m + s)`.
    pub fn bend_up(&self, f: &Morphism) -> Result<Morphism, Error> {
        self.own(f)?;
        let m = f.source;
        let eta = self.wrap(0, 2 * m, single(NormalDiagram::undotted(Matching::nested_cups(m))));
        let lifted = self.tensor(f, &self.identity(m))?;
        self.compose(&lifted, &eta)
    }

    /// `(1_{2r-m} ⊗ ε_m) ∘ (g ⊗ 1_m)` in `Hom(m, 2r - m)`.
    pub fn bend_down(&self, g: &Morphism, m: usize) -> Result<Morphism, Error> {
        self.own(g)?;
        if g.source != 0 || m > g.target {
            return Err(Error::Arity(format!("cannot bend Hom({},{}) down by {m}", g.source, g.target)));
        }
        let eps = self.wrap(2 * m, 0, single(NormalDiagram::undotted(Matching::nested_caps(m))));
        let cap = self.tensor(&self.identity(g.target - m), &eps)?;
        let lifted = self.tensor(g, &self.identity(m))?;
        self.compose(&cap, &lifted)
    }

    /// `x_k` in `End(r)`.
    pub fn x(&self, k: usize, r: usize) -> Result<Morphism, Error> {
        self.apply_slice(&self.identity(r), Gen::Dot(k))
    }

    /// `S_i`, `E_i` in `End(r)`.
    pub fn s_i(&self, i: usize, r: usize) -> Result<Morphism, Error> {
        self.apply_slice(&self.identity(r), Gen::Cross(i))
    }

    pub fn e_i(&self, i: usize, r: usize) -> Result<Morphism, Error> {
        let a = self.apply_slice(&self.identity(r), Gen::Cap(i))?;
        self.apply_slice(&a, Gen::Cup(i))
    }

    /// `Δ_k · 1_r` with the bubble on the left.
    pub fn bubble(&self, k: u32, r: usize) -> Morphism {
        let l = self.lin_mul_poly(single(NormalDiagram::undotted(Matching::identity(r))), &self.bubble_value(k));
        self.wrap(r, r, l)
    }

    /// Embeds a bubble polynomial as an element of `End(r)`.
    pub fn poly_morphism(&self, p: &Poly, r: usize) -> Morphism {
        let l = self.lin_mul_poly(single(NormalDiagram::undotted(Matching::identity(r))), p);
        self.wrap(r, r, l)
    }

    /// Splits an `End(0)` element into its bubble polynomial.
    pub fn as_poly(&self, f: &Morphism) -> Option<Poly> {
        if f.source != 0 || f.target != 0 {
            return None;
        }
        let mut p = Poly::new();
        for (d, c) in &f.terms {
            poly::add_term(&mut p, d.bubbles.clone(), c.clone());
        }
        Some(p)
    }
}
