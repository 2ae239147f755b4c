//! Brauer diagram combinatorics: matchings, endpoint roles, normally ordered
//! dotted diagrams, basis enumeration and slicing into generator layers.
//!
//! Endpoints are numbered `1..=m` along the bottom row and `m+1..=m+s` along
//! the top row, both left to right.

use std::collections::BTreeMap;
use std::fmt;

use crate::Error;

/// A fixed-point-free pairing of the `m + s` endpoints of an `(m, s)` diagram.
///
/// Stored as a partner table over 0-based endpoints, which is canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Matching {
    m: usize,
    s: usize,
    partner: Vec<u16>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum EndpointRole {
    VerticalBottom,
    VerticalTop,
    CupLeft,
    CupRight,
    CapLeft,
    CapRight,
}

impl Matching {
    /// Canonicalizes a raw list of 1-based endpoint pairs.
    pub fn new(raw_pairs: &[(usize, usize)], m: usize, s: usize) -> Result<Self, Error> {
        let n = m + s;
        if n % 2 == 1 {
            return Err(Error::Invalid(format!("odd endpoint count {n}")));
        }
        let mut partner = vec![u16::MAX; n];
        for &(a, b) in raw_pairs {
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::Invalid(format!("endpoint out of range in ({a},{b})")));
            }
            if a == b {
                return Err(Error::Invalid(format!("endpoint {a} paired with itself")));
            }
            for e in [a, b] {
                if partner[e - 1] != u16::MAX {
                    return Err(Error::Invalid(format!("endpoint {e} occurs twice")));
                }
            }
            partner[a - 1] = (b - 1) as u16;
            partner[b - 1] = (a - 1) as u16;
        }
        if let Some(e) = partner.iter().position(|&p| p == u16::MAX) {
            return Err(Error::Invalid(format!("endpoint {} is unmatched", e + 1)));
        }
        Ok(Matching { m, s, partner })
    }

    pub(crate) fn from_partner(m: usize, s: usize, partner: Vec<u16>) -> Self {
        debug_assert_eq!(partner.len(), m + s);
        Matching { m, s, partner }
    }

    pub fn identity(n: usize) -> Self {
        let mut partner = vec![0u16; 2 * n];
        for i in 0..n {
            partner[i] = (n + i) as u16;
            partner[n + i] = i as u16;
        }
        Matching { m: n, s: n, partner }
    }

    /// `U`, the cup in `Hom(0, 2)`.
    pub fn cup() -> Self {
        Matching { m: 0, s: 2, partner: vec![1, 0] }
    }

    /// `A`, the cap in `Hom(2, 0)`.
    pub fn cap() -> Self {
        Matching { m: 2, s: 0, partner: vec![1, 0] }
    }

    /// `S`, the crossing in `Hom(2, 2)`.
    pub fn cross() -> Self {
        Matching { m: 2, s: 2, partner: vec![3, 2, 1, 0] }
    }

    /// Nested cups `η_n` in `Hom(0, 2n)`: top `i` is joined to top `2n+1-i`.
    pub fn nested_cups(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| (2 * n - 1 - i) as u16).collect();
        Matching { m: 0, s: 2 * n, partner }
    }

    /// Nested caps `ε_n` in `Hom(2n, 0)`.
    pub fn nested_caps(n: usize) -> Self {
        let partner = (0..2 * n).map(|i| (2 * n - 1 - i) as u16).collect();
        Matching { m: 2 * n, s: 0, partner }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// Canonical 1-based pair list, each pair `(lesser, greater)`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.partner.len())
            .filter(|&e| (self.partner[e] as usize) > e)
            .map(|e| (e + 1, self.partner[e] as usize + 1))
            .collect()
    }

    /// Partner of a 1-based endpoint.
    pub fn partner_of(&self, endpoint: usize) -> Result<usize, Error> {
        self.check_endpoint(endpoint)?;
        Ok(self.partner[endpoint - 1] as usize + 1)
    }

    fn check_endpoint(&self, endpoint: usize) -> Result<(), Error> {
        if endpoint == 0 || endpoint > self.m + self.s {
            return Err(Error::Invalid(format!(
                "endpoint {endpoint} outside 1..={}",
                self.m + self.s
            )));
        }
        Ok(())
    }

    /// Role of a 1-based endpoint.
    pub fn role(&self, endpoint: usize) -> Result<EndpointRole, Error> {
        self.check_endpoint(endpoint)?;
        Ok(self.role0(endpoint - 1))
    }

    pub(crate) fn role0(&self, e: usize) -> EndpointRole {
        let q = self.partner[e] as usize;
        let (eb, qb) = (e < self.m, q < self.m);
        match (eb, qb) {
            (true, true) if e < q => EndpointRole::CapLeft,
            (true, true) => EndpointRole::CapRight,
            (false, false) if e < q => EndpointRole::CupLeft,
            (false, false) => EndpointRole::CupRight,
            (true, false) => EndpointRole::VerticalBottom,
            (false, true) => EndpointRole::VerticalTop,
        }
    }

    /// Role of top position `p` (1-based).
    pub(crate) fn top_role(&self, p: usize) -> EndpointRole {
        self.role0(self.m + p - 1)
    }

    pub(crate) fn bot_role(&self, j: usize) -> EndpointRole {
        self.role0(j - 1)
    }

    /// Partner of top position `p`, as (is_top, 1-based position in its row).
    pub(crate) fn top_partner(&self, p: usize) -> (bool, usize) {
        self.locate(self.partner[self.m + p - 1] as usize)
    }

    pub(crate) fn bot_partner(&self, j: usize) -> (bool, usize) {
        self.locate(self.partner[j - 1] as usize)
    }

    fn locate(&self, e: usize) -> (bool, usize) {
        if e < self.m {
            (false, e + 1)
        } else {
            (true, e - self.m + 1)
        }
    }

    pub fn num_cups(&self) -> usize {
        (self.m..self.m + self.s)
            .filter(|&e| self.role0(e) == EndpointRole::CupLeft)
            .count()
    }

    /// `S_p ∘ self`: swaps the top positions `p` and `p+1`.
    pub(crate) fn top_cross(&self, p: usize) -> Matching {
        let (x, y) = (self.m + p - 1, self.m + p);
        self.swap_endpoints(x, y)
    }

    /// `self ∘ S_j`: swaps the bottom positions `j` and `j+1`.
    pub(crate) fn bot_cross(&self, j: usize) -> Matching {
        self.swap_endpoints(j - 1, j)
    }

    fn swap_endpoints(&self, x: usize, y: usize) -> Matching {
        let mut partner = self.partner.clone();
        let (px, py) = (partner[x] as usize, partner[y] as usize);
        if px == y {
            return self.clone();
        }
        partner[x] = py as u16;
        partner[y] = px as u16;
        partner[py] = x as u16;
        partner[px] = y as u16;
        Matching { m: self.m, s: self.s, partner }
    }

    /// `A_p ∘ self`: joins top positions `p`, `p+1`. Returns the new matching and
    /// whether a closed loop was removed.
    pub(crate) fn top_cap(&self, p: usize) -> (Matching, bool) {
        let (x, y) = (self.m + p - 1, self.m + p);
        self.join(x, y, self.m, self.s - 2)
    }

    /// `self ∘ U_j`: joins bottom positions `j`, `j+1`.
    pub(crate) fn bot_join(&self, j: usize) -> (Matching, bool) {
        self.join(j - 1, j, self.m - 2, self.s)
    }

    fn join(&self, x: usize, y: usize, nm: usize, ns: usize) -> (Matching, bool) {
        let mut partner = self.partner.clone();
        let (px, py) = (partner[x] as usize, partner[y] as usize);
        let looped = px == y;
        if !looped {
            partner[px] = py as u16;
            partner[py] = px as u16;
        }
        // x < y are adjacent, so removing them shifts everything above by 2.
        let map = |e: usize| if e > y { e - 2 } else { e };
        let mut out = Vec::with_capacity(partner.len() - 2);
        for (e, &q) in partner.iter().enumerate() {
            if e == x || e == y {
                continue;
            }
            out.push(map(q as usize) as u16);
        }
        (Matching { m: nm, s: ns, partner: out }, looped)
    }

    /// `U_p ∘ self`: inserts a cup at top positions `p`, `p+1`.
    pub(crate) fn top_cup(&self, p: usize) -> Matching {
        let x = self.m + p - 1;
        self.insert_pair(x, self.m, self.s + 2)
    }

    /// `self ∘ A_j`: inserts a cap at bottom positions `j`, `j+1`.
    pub(crate) fn bot_cap(&self, j: usize) -> Matching {
        self.insert_pair(j - 1, self.m + 2, self.s)
    }

    fn insert_pair(&self, x: usize, nm: usize, ns: usize) -> Matching {
        let map = |e: usize| if e >= x { e + 2 } else { e };
        let mut partner = Vec::with_capacity(self.partner.len() + 2);
        for (e, &q) in self.partner.iter().enumerate() {
            if e == x {
                partner.push((x + 1) as u16);
                partner.push(x as u16);
            }
            partner.push(map(q as usize) as u16);
        }
        if x == self.partner.len() {
            partner.push((x + 1) as u16);
            partner.push(x as u16);
        }
        Matching { m: nm, s: ns, partner }
    }

    /// Vertical juxtaposition `g ∘ self`. Returns the matching and the number of
    /// closed loops formed in the middle.
    pub fn compose_with(&self, g: &Matching) -> Result<(Matching, usize), Error> {
        let f = self;
        if f.s != g.m {
            return Err(Error::Arity(format!(
                "cannot compose Hom({},{}) after Hom({},{})",
                g.m, g.s, f.m, f.s
            )));
        }
        let (m, k, s) = (f.m, f.s, g.s);
        let mut out = vec![u16::MAX; m + s];
        let mut seen = vec![false; k];
        // Walk from an outer endpoint; outer ids: 0..m bottom of f, m..m+s top of g.
        let walk = |start: usize, seen: &mut Vec<bool>| -> usize {
            // (in_f, endpoint within that diagram)
            let (mut in_f, mut e) = if start < m { (true, start) } else { (false, k + start - m) };
            loop {
                if in_f {
                    let q = f.partner[e] as usize;
                    if q < m {
                        return q;
                    }
                    let t = q - m;
                    seen[t] = true;
                    in_f = false;
                    e = t;
                } else {
                    let q = g.partner[e] as usize;
                    if q >= k {
                        return m + q - k;
                    }
                    seen[q] = true;
                    in_f = true;
                    e = m + q;
                }
            }
        };
        for start in 0..m + s {
            if out[start] == u16::MAX {
                let end = walk(start, &mut seen);
                out[start] = end as u16;
                out[end] = start as u16;
            }
        }
        let mut loops = 0;
        for t0 in 0..k {
            if seen[t0] {
                continue;
            }
            loops += 1;
            let mut t = t0;
            loop {
                seen[t] = true;
                let a = f.partner[m + t] as usize - m;
                seen[a] = true;
                let b = g.partner[a] as usize;
                if b == t0 {
                    break;
                }
                t = b;
            }
        }
        Ok((Matching { m, s, partner: out }, loops))
    }

    /// Horizontal juxtaposition `self ⊗ g`.
    pub fn tensor(&self, g: &Matching) -> Matching {
        let (m1, s1, m2, s2) = (self.m, self.s, g.m, g.s);
        let mf = |e: usize| if e < m1 { e } else { m1 + m2 + (e - m1) };
        let mg = |e: usize| if e < m2 { m1 + e } else { m1 + m2 + s1 + (e - m2) };
        let mut partner = vec![0u16; m1 + m2 + s1 + s2];
        for e in 0..m1 + s1 {
            partner[mf(e)] = mf(self.partner[e] as usize) as u16;
        }
        for e in 0..m2 + s2 {
            partner[mg(e)] = mg(g.partner[e] as usize) as u16;
        }
        Matching { m: m1 + m2, s: s1 + s2, partner }
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (a, b)) in self.pairs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "]")
    }
}

/// Bubble monomial: exponent of `Δ_k` keyed by `k`.
pub type Bubbles = BTreeMap<u32, u32>;

/// A normally ordered dotted diagram `Δ-monomial · x^α ∘ d̂ ∘ x^β`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormalDiagram {
    pub matching: Matching,
    /// Dots at top positions `1..=s`.
    pub top: Vec<u32>,
    /// Dots at bottom positions `1..=m`.
    pub bot: Vec<u32>,
    pub bubbles: Bubbles,
}

impl NormalDiagram {
    /// Validates the normal-order invariants shared by every configuration.
    pub fn new(matching: Matching, top: Vec<u32>, bot: Vec<u32>, bubbles: Bubbles) -> Result<Self, Error> {
        if top.len() != matching.s || bot.len() != matching.m {
            return Err(Error::Invalid("dot vector lengths do not match (m,s)".into()));
        }
        let d = NormalDiagram { matching, top, bot, bubbles };
        d.check()?;
        Ok(d)
    }

    pub fn undotted(matching: Matching) -> Self {
        NormalDiagram {
            top: vec![0; matching.s],
            bot: vec![0; matching.m],
            matching,
            bubbles: Bubbles::new(),
        }
    }

    pub fn empty() -> Self {
        Self::undotted(Matching::from_partner(0, 0, vec![]))
    }

    pub fn m(&self) -> usize {
        self.matching.m
    }

    pub fn s(&self) -> usize {
        self.matching.s
    }

    fn check(&self) -> Result<(), Error> {
        for p in 1..=self.s() {
            if self.top[p - 1] > 0 && self.matching.top_role(p) == EndpointRole::CupLeft {
                return Err(Error::Invalid(format!("dot on the left end of a cup at top {p}")));
            }
        }
        for j in 1..=self.m() {
            if self.bot[j - 1] > 0 && self.matching.bot_role(j) != EndpointRole::CapLeft {
                return Err(Error::Invalid(format!("bottom dot at {j} is not on a cap's left end")));
            }
        }
        if let Some(k) = self.bubbles.keys().find(|k| *k % 2 == 1) {
            return Err(Error::Invalid(format!("odd bubble Δ_{k} in a normal diagram")));
        }
        if self.bubbles.values().any(|&e| e == 0) {
            return Err(Error::Invalid("zero bubble exponent".into()));
        }
        Ok(())
    }

    pub fn is_normal(&self) -> bool {
        self.check().is_ok()
    }

    /// Total number of dots.
    pub fn degree(&self) -> u32 {
        self.top.iter().sum::<u32>() + self.bot.iter().sum::<u32>()
    }

    pub fn max_dots(&self) -> u32 {
        self.top.iter().chain(self.bot.iter()).copied().max().unwrap_or(0)
    }

    /// Canonical text form `pairs=[...] top=[...] bot=[...] bub={...}`.
    pub fn to_text(&self) -> String {
        let list = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        let bub = self
            .bubbles
            .iter()
            .map(|(k, e)| format!("{k}:{e}"))
            .collect::<Vec<_>>()
            .join(",");
        format!(
            "pairs={} top=[{}] bot=[{}] bub={{{}}}",
            self.matching,
            list(&self.top),
            list(&self.bot),
            bub
        )
    }

    pub fn parse_text(text: &str) -> Result<Self, Error> {
        let bad = |what: &str| Error::Parse(format!("{what} in `{text}`"));
        let field = |name: &str, open: char, close: char| -> Result<String, Error> {
            let key = format!("{name}={open}");
            let start = text.find(&key).ok_or_else(|| bad(&format!("missing `{name}`")))? + key.len();
            let len = text[start..].find(close).ok_or_else(|| bad("unclosed bracket"))?;
            Ok(text[start..start + len].to_string())
        };
        let nums = |body: &str| -> Result<Vec<u32>, Error> {
            body.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u32>().map_err(|_| bad("bad number")))
                .collect()
        };
        let pairs_start = text.find("pairs=[").ok_or_else(|| bad("missing `pairs`"))? + 7;
        let pairs_end = text[pairs_start..].find(']').ok_or_else(|| bad("unclosed pairs"))? + pairs_start;
        let raw: Vec<u32> = text[pairs_start..pairs_end]
            .split(['(', ')', ','])
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u32>().map_err(|_| bad("bad pair entry")))
            .collect::<Result<_, _>>()?;
        if raw.len() % 2 == 1 {
            return Err(bad("unpaired endpoint"));
        }
        let pairs: Vec<(usize, usize)> = raw.chunks(2).map(|c| (c[0] as usize, c[1] as usize)).collect();
        let top = nums(&field("top", '[', ']')?)?;
        let bot = nums(&field("bot", '[', ']')?)?;
        let mut bubbles = Bubbles::new();
        for item in field("bub", '{', '}')?.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, e) = item.split_once(':').ok_or_else(|| bad("bad bubble entry"))?;
            let k: u32 = k.trim().parse().map_err(|_| bad("bad bubble key"))?;
            let e: u32 = e.trim().parse().map_err(|_| bad("bad bubble exponent"))?;
            if e > 0 {
                *bubbles.entry(k).or_insert(0) += e;
            }
        }
        let matching = Matching::new(&pairs, bot.len(), top.len())?;
        Self::new(matching, top, bot, bubbles)
    }
}

impl fmt::Display for NormalDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Equality of normal diagrams as basis elements.
pub fn equivalent(d1: &NormalDiagram, d2: &NormalDiagram) -> Result<bool, Error> {
    if d1.m() != d2.m() || d1.s() != d2.s() {
        return Err(Error::Arity(format!(
            "comparing Hom({},{}) with Hom({},{})",
            d1.m(),
            d1.s(),
            d2.m(),
            d2.s()
        )));
    }
    Ok(d1 == d2)
}

/// All perfect matchings of an `(m, s)` diagram, in lexicographic order of
/// their canonical pair lists.
pub fn enumerate_matchings(m: usize, s: usize) -> Vec<Matching> {
    let n = m + s;
    if n % 2 == 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut partner = vec![u16::MAX; n];
    fn rec(partner: &mut Vec<u16>, out: &mut Vec<Matching>, m: usize, s: usize) {
        let Some(a) = partner.iter().position(|&p| p == u16::MAX) else {
            out.push(Matching::from_partner(m, s, partner.clone()));
            return;
        };
        for b in a + 1..partner.len() {
            if partner[b] == u16::MAX {
                partner[a] = b as u16;
                partner[b] = a as u16;
                rec(partner, out, m, s);
                partner[a] = u16::MAX;
                partner[b] = u16::MAX;
            }
        }
    }
    rec(&mut partner, &mut out, m, s);
    out
}

/// `(2r-1)!!`, with `(-1)!! = 1`.
pub fn double_factorial_odd(r: usize) -> u128 {
    (1..=r as u128).map(|i| 2 * i - 1).product()
}

/// Endpoints allowed to carry dots: top endpoints that are vertical or cup
/// right ends, and bottom endpoints that are cap left ends. One per strand.
pub fn dot_slots(matching: &Matching) -> (Vec<usize>, Vec<usize>) {
    let tops = (1..=matching.s)
        .filter(|&p| matches!(matching.top_role(p), EndpointRole::VerticalTop | EndpointRole::CupRight))
        .collect();
    let bots = (1..=matching.m)
        .filter(|&j| matching.bot_role(j) == EndpointRole::CapLeft)
        .collect();
    (tops, bots)
}

/// Enumerates normally ordered diagrams in `Hom(m, s)`.
///
/// With `dot_bound = Some(a)` every dot slot carries `0..a` dots. Without a
/// bound, `degree_cutoff` limits the total dot count. Bubble monomials in
/// even `Δ_k` are included when `with_bubbles` is set; a monomial
/// `∏ Δ_k^{e_k}` has weight `∑ (k+1) e_k`, and the cutoff bounds dots plus
/// bubble weight.
pub fn enumerate_nd_basis(
    m: usize,
    s: usize,
    dot_bound: Option<u32>,
    with_bubbles: bool,
    degree_cutoff: Option<u32>,
) -> Result<Vec<NormalDiagram>, Error> {
    if dot_bound == Some(0) {
        return Err(Error::Invalid("dot bound must be at least 1".into()));
    }
    if (dot_bound.is_none() || with_bubbles) && degree_cutoff.is_none() {
        return Err(Error::Invalid("unbounded enumeration needs a degree cutoff".into()));
    }
    let cutoff = degree_cutoff.unwrap_or(u32::MAX);
    let bubble_monos = if with_bubbles { bubble_monomials(cutoff) } else { vec![(Bubbles::new(), 0)] };
    let mut out = Vec::new();
    for matching in enumerate_matchings(m, s) {
        let (tops, bots) = dot_slots(&matching);
        let slots: Vec<(bool, usize)> =
            tops.iter().map(|&p| (true, p)).chain(bots.iter().map(|&j| (false, j))).collect();
        let mut counts = vec![0u32; slots.len()];
        loop {
            let deg: u32 = counts.iter().sum();
            if deg <= cutoff {
                let mut top = vec![0; s];
                let mut bot = vec![0; m];
                for (&(is_top, pos), &c) in slots.iter().zip(&counts) {
                    if is_top {
                        top[pos - 1] = c;
                    } else {
                        bot[pos - 1] = c;
                    }
                }
                for (mono, w) in &bubble_monos {
                    if deg.saturating_add(*w) <= cutoff {
                        out.push(NormalDiagram {
                            matching: matching.clone(),
                            top: top.clone(),
                            bot: bot.clone(),
                            bubbles: mono.clone(),
                        });
                    }
                }
            }
            // Odometer over the slot counts.
            let mut i = 0;
            loop {
                if i == counts.len() {
                    break;
                }
                counts[i] += 1;
                let deg: u32 = counts.iter().sum();
                let ok = match dot_bound {
                    Some(a) => counts[i] < a,
                    None => deg <= cutoff,
                };
                if ok {
                    break;
                }
                counts[i] = 0;
                i += 1;
            }
            if i == counts.len() {
                break;
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Monomials in even `Δ_k` of weight `∑ (k+1) e_k ≤ cutoff`.
fn bubble_monomials(cutoff: u32) -> Vec<(Bubbles, u32)> {
    let mut out = vec![(Bubbles::new(), 0)];
    let mut k = 0;
    while k < cutoff {
        let mut next = Vec::new();
        for (mono, w) in &out {
            let mut e = 1;
            while w + e * (k + 1) <= cutoff {
                let mut m2 = mono.clone();
                m2.insert(k, e);
                next.push((m2, w + e * (k + 1)));
                e += 1;
            }
        }
        out.extend(next);
        k += 2;
    }
    out
}

/// An elementary generator layer. Positions are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Gen {
    Cup(usize),
    Cap(usize),
    Cross(usize),
    Dot(usize),
    Id,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Slice {
    pub gen: Gen,
    pub before: usize,
    pub after: usize,
}

/// Slices applied bottom to top, starting from the identity on `source` strands.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GeneratorWord {
    pub source: usize,
    pub slices: Vec<Slice>,
}

impl GeneratorWord {
    pub fn new(source: usize) -> Self {
        GeneratorWord { source, slices: Vec::new() }
    }

    pub fn target(&self) -> usize {
        self.slices.last().map_or(self.source, |s| s.after)
    }

    /// Appends a generator on top, checking that its position fits the width.
    pub fn push(&mut self, gen: Gen) -> Result<(), Error> {
        let w = self.target();
        let after = match gen {
            Gen::Cup(p) if p >= 1 && p <= w + 1 => w + 2,
            Gen::Cap(p) | Gen::Cross(p) if p >= 1 && p < w => {
                if matches!(gen, Gen::Cap(_)) {
                    w - 2
                } else {
                    w
                }
            }
            Gen::Dot(p) if p >= 1 && p <= w => w,
            Gen::Id => w,
            _ => return Err(Error::Arity(format!("{gen:?} does not fit width {w}"))),
        };
        self.slices.push(Slice { gen, before: w, after });
        Ok(())
    }

    pub fn from_gens(source: usize, gens: &[Gen]) -> Result<Self, Error> {
        let mut w = GeneratorWord::new(source);
        for &g in gens {
            w.push(g)?;
        }
        Ok(w)
    }

    pub fn gens(&self) -> Vec<Gen> {
        self.slices.iter().map(|s| s.gen).collect()
    }

    /// Checks that recorded widths form a consistent chain.
    pub fn validate(&self) -> Result<(), Error> {
        let mut rebuilt = GeneratorWord::new(self.source);
        for s in &self.slices {
            if s.before != rebuilt.target() {
                return Err(Error::Arity("inconsistent slice widths".into()));
            }
            rebuilt.push(s.gen)?;
            if rebuilt.target() != s.after {
                return Err(Error::Arity("inconsistent slice widths".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum SliceStrategy {
    /// Leftmost cap pairs first, moving right ends leftwards.
    #[default]
    LeftFirst,
    /// Rightmost cap pairs first, moving left ends rightwards.
    RightFirst,
}

/// Decomposes an undotted matching into Cap, Cross and Cup slices.
pub fn slice_matching(matching: &Matching) -> GeneratorWord {
    slice_matching_with(matching, SliceStrategy::LeftFirst)
}

pub fn slice_matching_with(matching: &Matching, strategy: SliceStrategy) -> GeneratorWord {
    let (m, s) = (matching.m, matching.s);
    let partner = |e: usize| matching.partner[e] as usize;
    // Phase A: strip caps from the bottom row.
    let mut gens = Vec::new();
    let mut wires: Vec<usize> = (0..m).collect();
    strip_pairs(&mut wires, &partner, strategy, |g| gens.push(g), false);
    // Phase C, computed top-down on the top row and replayed in reverse.
    let mut top_ops = Vec::new();
    let mut twires: Vec<usize> = (m..m + s).collect();
    strip_pairs(&mut twires, &partner, strategy, |g| top_ops.push(g), true);
    // Phase B: permute the remaining verticals.
    let mut order: Vec<usize> = wires
        .iter()
        .map(|&b| twires.iter().position(|&t| t == partner(b)).expect("vertical strand"))
        .collect();
    match strategy {
        SliceStrategy::LeftFirst => {
            let n = order.len();
            for pass in 0..n {
                for i in 0..n.saturating_sub(1 + pass) {
                    if order[i] > order[i + 1] {
                        order.swap(i, i + 1);
                        gens.push(Gen::Cross(i + 1));
                    }
                }
            }
        }
        SliceStrategy::RightFirst => {
            // Insertion from the right end.
            let n = order.len();
            for i in (0..n).rev() {
                let mut j = i;
                while j + 1 < n && order[j] > order[j + 1] {
                    order.swap(j, j + 1);
                    gens.push(Gen::Cross(j + 1));
                    j += 1;
                }
            }
        }
    }
    gens.extend(top_ops.into_iter().rev());
    GeneratorWord::from_gens(m, &gens).expect("slicing produces consistent widths")
}

/// Removes all pairs internal to `wires` using adjacent removals and crossings.
fn strip_pairs(
    wires: &mut Vec<usize>,
    partner: &dyn Fn(usize) -> usize,
    strategy: SliceStrategy,
    mut emit: impl FnMut(Gen),
    as_cups: bool,
) {
    loop {
        let pos = |e: usize, w: &Vec<usize>| w.iter().position(|&x| x == e);
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (x, &e) in wires.iter().enumerate() {
            if let Some(y) = pos(partner(e), wires) {
                if y > x {
                    pairs.push((x, y));
                }
            }
        }
        if pairs.is_empty() {
            return;
        }
        let chosen = match strategy {
            SliceStrategy::LeftFirst => pairs.iter().find(|(x, y)| y == &(x + 1)).copied().unwrap_or(pairs[0]),
            SliceStrategy::RightFirst => pairs
                .iter()
                .rev()
                .find(|(x, y)| y == &(x + 1))
                .copied()
                .unwrap_or(*pairs.last().unwrap()),
        };
        let (x, y) = chosen;
        if y == x + 1 {
            emit(if as_cups { Gen::Cup(x + 1) } else { Gen::Cap(x + 1) });
            wires.drain(x..=y);
        } else if strategy == SliceStrategy::LeftFirst {
            wires.swap(y - 1, y);
            emit(Gen::Cross(y));
        } else {
            wires.swap(x, x + 1);
            emit(Gen::Cross(x + 1));
        }
    }
}
