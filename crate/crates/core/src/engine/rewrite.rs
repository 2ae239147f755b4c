//! Term-level rewriting rules. Every function takes a normal diagram and
//! returns an exact linear combination of normal diagrams.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::config::Kind;
use super::poly::{self, Poly};
use super::Engine;
use crate::diagram::{slice_matching, Bubbles, EndpointRole, Gen, Matching, NormalDiagram};
use crate::scalar::{int, sign, Scalar};

pub(crate) type Lin = BTreeMap<NormalDiagram, Scalar>;

pub(crate) fn lin_add(acc: &mut Lin, d: NormalDiagram, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match acc.entry(d) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

pub(crate) fn lin_add_scaled(acc: &mut Lin, other: Lin, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let unit = c.is_one();
    for (d, x) in other {
        lin_add(acc, d, if unit { x } else { x * c });
    }
}

pub(crate) fn single(d: NormalDiagram) -> Lin {
    let mut l = Lin::new();
    l.insert(d, Scalar::one());
    l
}

/// `S_{hi-1} … S_{k+1} X S_k … S_{hi-1} ∘ d`, with `X` either `E_k` or `1`.
fn pattern_top(d: &Matching, hi: usize, k: usize, with_e: bool) -> (Matching, u32) {
    let mut m = d.clone();
    let mut loops = 0;
    for q in (k..hi).rev() {
        m = m.top_cross(q);
    }
    if with_e {
        let (c, looped) = m.top_cap(k);
        loops += looped as u32;
        m = c.top_cup(k);
    }
    for q in k + 1..hi {
        m = m.top_cross(q);
    }
    (m, loops)
}

/// `d ∘ S_{hi-1} … S_k X S_{k+1} … S_{hi-1}`.
fn pattern_bot(d: &Matching, hi: usize, k: usize, with_e: bool) -> (Matching, u32) {
    let mut m = d.clone();
    let mut loops = 0;
    for q in (k..hi).rev() {
        m = m.bot_cross(q);
    }
    if with_e {
        let (c, looped) = m.bot_join(k);
        loops += looped as u32;
        m = c.bot_cap(k);
    }
    for q in k + 1..hi {
        m = m.bot_cross(q);
    }
    (m, loops)
}

fn strip_top(d: &NormalDiagram, p: usize) -> NormalDiagram {
    let mut t = d.clone();
    t.top[p - 1] = 0;
    t
}

fn cup_term(d: &NormalDiagram, p: usize) -> NormalDiagram {
    let mut top = d.top.clone();
    top.insert(p - 1, 0);
    top.insert(p - 1, 0);
    NormalDiagram { matching: d.matching.top_cup(p), top, bot: d.bot.clone(), bubbles: d.bubbles.clone() }
}

impl Engine {
    pub(crate) fn lin_map(&self, lin: Lin, mut f: impl FnMut(&NormalDiagram) -> Lin) -> Lin {
        let mut acc = Lin::new();
        for (d, c) in lin {
            lin_add_scaled(&mut acc, f(&d), &c);
        }
        acc
    }

    pub(crate) fn lin_top_dot(&self, lin: Lin, p: usize) -> Lin {
        self.lin_map(lin, |d| self.top_dot(d, p))
    }

    pub(crate) fn lin_bot_dot(&self, lin: Lin, j: usize) -> Lin {
        self.lin_map(lin, |d| self.bot_dot(d, j))
    }

    /// Multiplies every term by a bubble polynomial.
    pub(crate) fn lin_mul_poly(&self, lin: Lin, p: &Poly) -> Lin {
        if p.len() == 1 {
            if let Some(c) = p.get(&Bubbles::new()) {
                let mut out = Lin::new();
                lin_add_scaled(&mut out, lin, c);
                return out;
            }
        }
        let mut acc = Lin::new();
        for (d, c) in lin {
            for (mono, pc) in p {
                let mut t = d.clone();
                t.bubbles = poly::mono_mul(&d.bubbles, mono);
                lin_add(&mut acc, t, &c * pc);
            }
        }
        acc
    }

    /// Value of a closed loop carrying `k` dots, as a polynomial in the bubbles
    /// left formal by this configuration.
    pub(crate) fn bubble_value(&self, k: u32) -> Poly {
        if let Some(p) = self.caches.lock().unwrap().bubble.get(&k) {
            return p.clone();
        }
        let cfg = &self.cfg;
        let v = if let Some(w) = cfg.bubble_scalar(k as usize).filter(|_| cfg.specialized() || k == 0) {
            poly::constant(w)
        } else if cfg.kind() == Kind::CBf && k as usize >= cfg.u().len() {
            let a = cfg.u().len();
            let mut acc = Poly::new();
            for j in 1..=a {
                let b = &cfg.b()[a - j];
                poly::add_scaled(&mut acc, &self.bubble_value(k - j as u32), &-b);
            }
            acc
        } else if k % 2 == 1 {
            // 2Δ_k = -Δ_{k-1} + ∑_{j=1}^k (-1)^{j-1} Δ_{j-1} Δ_{k-j}
            let mut acc = Poly::new();
            poly::add_scaled(&mut acc, &self.bubble_value(k - 1), &-Scalar::one());
            for j in 1..=k {
                let prod = poly::mul(&self.bubble_value(j - 1), &self.bubble_value(k - j));
                poly::add_scaled(&mut acc, &prod, &sign(j - 1));
            }
            let half = crate::scalar::half();
            acc.values_mut().for_each(|c| *c *= &half);
            acc
        } else {
            poly::var(k)
        };
        self.caches.lock().unwrap().bubble.insert(k, v.clone());
        v
    }

    /// Adds an undotted matching carrying the bubbles of `like` and `loops`
    /// extra undotted loops.
    fn push_undotted(&self, acc: &mut Lin, m: Matching, loops: u32, like: &Bubbles, c: Scalar) {
        let d = NormalDiagram {
            top: vec![0; m.s()],
            bot: vec![0; m.m()],
            matching: m,
            bubbles: like.clone(),
        };
        if loops == 0 {
            lin_add(acc, d, c);
        } else {
            let p = poly::pow(&self.bubble_value(0), loops);
            let mut one = Lin::new();
            one.insert(d, c);
            let l = self.lin_mul_poly(one, &p);
            lin_add_scaled(acc, l, &Scalar::one());
        }
    }

    /// Puts the dot vectors of a term back onto each term of `lin`.
    pub(crate) fn readd(&self, mut lin: Lin, top: &[u32], bot: &[u32]) -> Lin {
        for (i, &c) in top.iter().enumerate() {
            for _ in 0..c {
                lin = self.lin_top_dot(lin, i + 1);
            }
        }
        for (j, &c) in bot.iter().enumerate() {
            for _ in 0..c {
                lin = self.lin_bot_dot(lin, j + 1);
            }
        }
        lin
    }

    fn home_top(&self, mut d: NormalDiagram, p: usize) -> Lin {
        d.top[p - 1] += 1;
        match self.cfg.a() {
            Some(a) if d.top[p - 1] as usize >= a => self.memoized(5, d, p, Self::overflow_top),
            _ => single(d),
        }
    }

    fn home_bot(&self, mut d: NormalDiagram, j: usize) -> Lin {
        d.bot[j - 1] += 1;
        match self.cfg.a() {
            Some(a) if d.bot[j - 1] as usize >= a => self.memoized(6, d, j, Self::overflow_bot),
            _ => single(d),
        }
    }

    fn memoized(&self, op: u8, d: NormalDiagram, p: usize, f: fn(&Self, NormalDiagram, usize) -> Lin) -> Lin {
        if let Some(l) = self.memo_get(op, &d, p) {
            return l;
        }
        let out = f(self, d.clone(), p);
        self.memo_put(op, &d, p, &out);
        out
    }

    /// `x_p ∘ d`.
    pub(crate) fn top_dot(&self, d: &NormalDiagram, p: usize) -> Lin {
        match d.matching.top_role(p) {
            EndpointRole::VerticalTop | EndpointRole::CupRight => self.home_top(d.clone(), p),
            _ => {
                // Left end of a cup ending at j.
                let (_, j) = d.matching.top_partner(p);
                let mut acc = Lin::new();
                lin_add_scaled(&mut acc, self.home_top(d.clone(), j), &-Scalar::one());
                let corr = self.top_cup_corrections(&d.matching, p, j, &d.bubbles);
                lin_add_scaled(&mut acc, self.readd(corr, &d.top, &d.bot), &Scalar::one());
                acc
            }
        }
    }

    /// `-∑_{k=i+1}^{j-1} [T_k(E) - T_k(1)]`, the correction in
    /// `x_i d = -x_j d + …` for a cup `(i, j)`.
    fn top_cup_corrections(&self, m: &Matching, i: usize, j: usize, bub: &Bubbles) -> Lin {
        let mut corr = Lin::new();
        for k in i + 1..j {
            let (me, le) = pattern_top(m, j, k, true);
            self.push_undotted(&mut corr, me, le, bub, -Scalar::one());
            let (m1, l1) = pattern_top(m, j, k, false);
            self.push_undotted(&mut corr, m1, l1, bub, Scalar::one());
        }
        corr
    }

    /// `∑_{k<t} [T_k(E) - T_k(1)] + ∑_{k<j} [B_k(1) - B_k(E)]`, the correction
    /// in `d ∘ x_j = x_t ∘ d + …` for a vertical strand from bottom `j` to top `t`.
    fn vertical_corrections(&self, m: &Matching, j: usize, t: usize, bub: &Bubbles) -> Lin {
        let mut corr = Lin::new();
        for k in 1..t {
            let (me, le) = pattern_top(m, t, k, true);
            self.push_undotted(&mut corr, me, le, bub, Scalar::one());
            let (m1, l1) = pattern_top(m, t, k, false);
            self.push_undotted(&mut corr, m1, l1, bub, -Scalar::one());
        }
        for k in 1..j {
            let (m1, l1) = pattern_bot(m, j, k, false);
            self.push_undotted(&mut corr, m1, l1, bub, Scalar::one());
            let (me, le) = pattern_bot(m, j, k, true);
            self.push_undotted(&mut corr, me, le, bub, -Scalar::one());
        }
        corr
    }

    /// `d ∘ x_j`.
    pub(crate) fn bot_dot(&self, d: &NormalDiagram, j: usize) -> Lin {
        match d.matching.bot_role(j) {
            EndpointRole::CapLeft => self.home_bot(d.clone(), j),
            EndpointRole::CapRight => {
                let (_, i) = d.matching.bot_partner(j);
                let mut acc = Lin::new();
                lin_add_scaled(&mut acc, self.home_bot(d.clone(), i), &-Scalar::one());
                let mut corr = Lin::new();
                for k in i + 1..j {
                    let (m1, l1) = pattern_bot(&d.matching, j, k, false);
                    self.push_undotted(&mut corr, m1, l1, &d.bubbles, Scalar::one());
                    let (me, le) = pattern_bot(&d.matching, j, k, true);
                    self.push_undotted(&mut corr, me, le, &d.bubbles, -Scalar::one());
                }
                lin_add_scaled(&mut acc, self.readd(corr, &d.top, &d.bot), &Scalar::one());
                acc
            }
            _ => {
                let (_, t) = d.matching.bot_partner(j);
                let mut acc = self.top_dot(d, t);
                let corr = self.vertical_corrections(&d.matching, j, t, &d.bubbles);
                lin_add_scaled(&mut acc, self.readd(corr, &d.top, &d.bot), &Scalar::one());
                acc
            }
        }
    }

    /// `S_p ∘ d`.
    pub(crate) fn cross(&self, d: &NormalDiagram, p: usize) -> Lin {
        if let Some(k) = self.memo_get(2, d, p) {
            return k;
        }
        let out = if d.top[p - 1] > 0 || d.top[p] > 0 {
            // S x_p = x_{p+1} S + E - 1 and S x_{p+1} = x_p S - E + 1.
            let (at, other, s) = if d.top[p - 1] > 0 { (p, p + 1, 1) } else { (p + 1, p, -1) };
            let mut t = d.clone();
            t.top[at - 1] -= 1;
            let mut acc = self.lin_top_dot(self.cross(&t, p), other);
            let e = self.lin_map(self.cap(&t, p), |x| single(cup_term(x, p)));
            lin_add_scaled(&mut acc, e, &int(s));
            lin_add(&mut acc, t, int(-s));
            acc
        } else {
            let mut t = d.clone();
            t.matching = d.matching.top_cross(p);
            single(t)
        };
        self.memo_put(2, d, p, &out);
        out
    }

    /// `A_p ∘ d`.
    pub(crate) fn cap(&self, d: &NormalDiagram, p: usize) -> Lin {
        if let Some(k) = self.memo_get(3, d, p) {
            return k;
        }
        let out = self.cap_uncached(d, p);
        self.memo_put(3, d, p, &out);
        out
    }

    fn cap_uncached(&self, d: &NormalDiagram, p: usize) -> Lin {
        let (a1, a2) = (d.top[p - 1], d.top[p]);
        let c = a1 + a2;
        // A (x ⊗ 1) = -A (1 ⊗ x): pool the dots on the right leg.
        let pool_sign = sign(a1);
        let mut u = d.clone();
        u.top[p - 1] = 0;
        u.top[p] = 0;
        let (is_top, q) = u.matching.top_partner(p + 1);
        if is_top && q == p {
            let (m, _) = u.matching.top_cap(p);
            let mut top = u.top.clone();
            top.drain(p - 1..=p);
            let base = NormalDiagram { matching: m, top, bot: u.bot.clone(), bubbles: u.bubbles.clone() };
            // A x_2^c U = (-1)^c Δ_c.
            let s = &pool_sign * sign(c);
            if p == 1 || c == 0 {
                let mut l = self.lin_mul_poly(single(base), &self.bubble_value(c));
                l.values_mut().for_each(|x| *x *= &s);
                return l;
            }
            let rest = u.matching.s() - p - 1;
            let z = self.z_slide(p - 1, c);
            let z = super::tensor_identity(z, rest);
            let mut acc = Lin::new();
            for (g, gc) in z {
                lin_add_scaled(&mut acc, self.compose_terms(&g, &base), &(&gc * &s));
            }
            return acc;
        }
        if c == 0 {
            return self.contract(&u, p, None);
        }
        // x_{p+1} d̂ = σ P d̂ + K, where P is a dot at the far end of the strand.
        let (sigma, pending, corr) = if is_top {
            let (i, j) = if q > p + 1 { (p + 1, q) } else { (q, p + 1) };
            (-1, (true, q), self.top_cup_corrections(&u.matching, i, j, &u.bubbles))
        } else {
            let mut k = self.vertical_corrections(&u.matching, q, p + 1, &u.bubbles);
            k.values_mut().for_each(|x| *x = -x.clone());
            (1, (false, q), k)
        };
        let sig = |i: u32| if sigma == 1 { Scalar::one() } else { sign(i) };
        let mut acc = Lin::new();
        lin_add_scaled(&mut acc, self.contract(&u, p, Some((pending, c))), &(&pool_sign * sig(c)));
        let base = self.readd(corr, &u.top, &u.bot);
        for i in 0..c {
            let mut l = base.clone();
            for _ in 0..i {
                l = if pending.0 { self.lin_top_dot(l, pending.1) } else { self.lin_bot_dot(l, pending.1) };
            }
            for _ in 0..c - 1 - i {
                l = self.lin_top_dot(l, p + 1);
            }
            let l = self.lin_map(l, |x| self.cap(x, p));
            lin_add_scaled(&mut acc, l, &(&pool_sign * sig(i)));
        }
        acc
    }

    /// Caps top positions `p`, `p+1` of `u` (no dots there, different strands),
    /// then re-homes the dots on the merged strand's endpoints together with
    /// `pending` extra dots at the far end of the right strand.
    fn contract(&self, u: &NormalDiagram, p: usize, pending: Option<((bool, usize), u32)>) -> Lin {
        let ends = [u.matching.top_partner(p), u.matching.top_partner(p + 1)];
        let (m, looped) = u.matching.top_cap(p);
        debug_assert!(!looped);
        let mut top = u.top.clone();
        top.drain(p - 1..=p);
        let mut bot = u.bot.clone();
        let renum = |(is_top, q): (bool, usize)| (is_top, if is_top && q > p + 1 { q - 2 } else { q });
        let mut extra: Vec<((bool, usize), u32)> = Vec::new();
        for (idx, &e) in ends.iter().enumerate() {
            let (is_top, q) = renum(e);
            let slot = if is_top { &mut top[q - 1] } else { &mut bot[q - 1] };
            let mut n = std::mem::take(slot);
            if idx == 1 {
                if let Some((_, k)) = pending {
                    n += k;
                }
            }
            if n > 0 {
                extra.push(((is_top, q), n));
            }
        }
        let base = NormalDiagram { matching: m, top, bot, bubbles: u.bubbles.clone() };
        let mut lin = single(base);
        for ((is_top, q), n) in extra {
            for _ in 0..n {
                lin = if is_top { self.lin_top_dot(lin, q) } else { self.lin_bot_dot(lin, q) };
            }
        }
        lin
    }

    pub(crate) fn apply_gen(&self, d: &NormalDiagram, gen: Gen) -> Lin {
        match gen {
            Gen::Cup(p) => single(cup_term(d, p)),
            Gen::Cap(p) => self.cap(d, p),
            Gen::Cross(p) => self.cross(d, p),
            Gen::Dot(p) => self.top_dot(d, p),
            Gen::Id => single(d.clone()),
        }
    }

    pub(crate) fn slices(&self, m: &Matching) -> Arc<Vec<Gen>> {
        if let Some(w) = self.caches.lock().unwrap().slices.get(m) {
            return w.clone();
        }
        let w = Arc::new(slice_matching(m).gens());
        self.caches.lock().unwrap().slices.insert(m.clone(), w.clone());
        w
    }

    /// `g ∘ f` for single normal diagrams.
    pub(crate) fn compose_terms(&self, g: &NormalDiagram, f: &NormalDiagram) -> Lin {
        debug_assert_eq!(g.m(), f.s());
        let mut lin = single(f.clone());
        for (j, &c) in g.bot.iter().enumerate() {
            for _ in 0..c {
                lin = self.lin_top_dot(lin, j + 1);
            }
        }
        for &gen in self.slices(&g.matching).iter() {
            lin = self.lin_map(lin, |d| self.apply_gen(d, gen));
        }
        for (p, &c) in g.top.iter().enumerate() {
            for _ in 0..c {
                lin = self.lin_top_dot(lin, p + 1);
            }
        }
        if !g.bubbles.is_empty() {
            let mut mono = Poly::new();
            mono.insert(g.bubbles.clone(), Scalar::one());
            lin = self.lin_mul_poly(lin, &mono);
        }
        lin
    }

    /// `x_p^a ∘ t0`, where `d` is `t0` with `a` dots at the top position `p`.
    fn overflow_top(&self, d: NormalDiagram, p: usize) -> Lin {
        let t0 = strip_top(&d, p);
        let nf = self.power_nf(d.s(), p);
        let mut acc = Lin::new();
        for (g, c) in nf.iter() {
            lin_add_scaled(&mut acc, self.compose_terms(g, &t0), c);
        }
        acc
    }

    /// `t0 ∘ x_j^a`.
    fn overflow_bot(&self, d: NormalDiagram, j: usize) -> Lin {
        let mut t0 = d.clone();
        t0.bot[j - 1] = 0;
        let nf = self.power_nf(d.m(), j);
        let mut acc = Lin::new();
        for (f, c) in nf.iter() {
            lin_add_scaled(&mut acc, self.compose_terms(&t0, f), c);
        }
        acc
    }

    /// Normal form of `x_p^a` in `End(r)` of a cyclotomic configuration.
    ///
    /// With `P = S_{p-1} ∘ … ∘ S_1` we have `x_p P = P x_1 - K` for an undotted
    /// correction `K`, so
    /// `x_p^a P = P x_1^a - ∑_{i<a} x_p^{a-1-i} K x_1^i` and `x_1^a = -∑ b_l x_1^l`.
    pub(crate) fn power_nf(&self, r: usize, p: usize) -> Arc<Lin> {
        if let Some(l) = self.caches.lock().unwrap().power.get(&(r, p)) {
            return l.clone();
        }
        let a = self.cfg.u().len();
        let b = self.cfg.b().to_vec();
        let id = NormalDiagram::undotted(Matching::identity(r));
        let out = if p == 1 {
            let mut acc = Lin::new();
            for (l, bl) in b.iter().enumerate() {
                let mut t = id.clone();
                t.top[0] = l as u32;
                lin_add(&mut acc, t, -bl);
            }
            acc
        } else {
            let mut pm = Matching::identity(r);
            for q in 1..p {
                pm = pm.top_cross(q);
            }
            let pd = NormalDiagram::undotted(pm.clone());
            let mut m = Lin::new();
            for (l, bl) in b.iter().enumerate() {
                let mut x = single(pd.clone());
                for _ in 0..l {
                    x = self.lin_bot_dot(x, 1);
                }
                lin_add_scaled(&mut m, x, &-bl);
            }
            // K = ∑_{l=1}^{p-1} [T_l(E) - T_l(1)].
            let mut k = Lin::new();
            for l in 1..p {
                let (me, le) = pattern_top(&pm, p, l, true);
                self.push_undotted(&mut k, me, le, &Bubbles::new(), Scalar::one());
                let (m1, l1) = pattern_top(&pm, p, l, false);
                self.push_undotted(&mut k, m1, l1, &Bubbles::new(), -Scalar::one());
            }
            for i in 0..a {
                let mut x = k.clone();
                for _ in 0..i {
                    x = self.lin_bot_dot(x, 1);
                }
                for _ in 0..a - 1 - i {
                    x = self.lin_top_dot(x, p);
                }
                lin_add_scaled(&mut m, x, &-Scalar::one());
            }
            // Right-multiply by P^{-1} = S_1 ∘ … ∘ S_{p-1}.
            let mut inv = Matching::identity(r);
            for q in (1..p).rev() {
                inv = inv.top_cross(q);
            }
            let inv = NormalDiagram::undotted(inv);
            let mut acc = Lin::new();
            for (g, c) in m {
                lin_add_scaled(&mut acc, self.compose_terms(&g, &inv), &c);
            }
            acc
        };
        let out = Arc::new(out);
        self.caches.lock().unwrap().power.insert((r, p), out.clone());
        out
    }

    /// `1_a ⊗ Δ_k` in `End(a)`, normalized in this configuration.
    pub(crate) fn z_slide(&self, a: usize, k: u32) -> Arc<Lin> {
        if let Some(l) = self.caches.lock().unwrap().z.get(&(a, k)) {
            return l.clone();
        }
        let out = if self.cfg.kind() == Kind::AB {
            self.z_slide_affine(a, k)
        } else {
            let ab = super::affine_engine();
            let formal = ab.z_slide(a, k);
            self.convert_from_affine(&formal)
        };
        let out = Arc::new(out);
        self.caches.lock().unwrap().z.insert((a, k), out.clone());
        out
    }

    fn z_slide_affine(&self, a: usize, k: u32) -> Lin {
        let id = NormalDiagram::undotted(Matching::identity(a));
        if a == 0 || k == 0 {
            return self.lin_mul_poly(single(id), &self.bubble_value(k));
        }
        if a > 1 {
            let left = single(NormalDiagram::undotted(Matching::identity(a - 1)));
            return self.tensor_lin(&left, &self.z_slide(1, k));
        }
        // 1 ⊗ U = S_1 W_0 with W_0 = S_2 (U ⊗ 1), and x_2 S_1 = S_1 (x_1 - E_1 + S_1),
        // so x_2^k (1 ⊗ U) = S_1 W_k. Then 1 ⊗ Δ_k = A_2 S_1 W_k = A_1 S_2 W_k.
        let w0 = Matching::cup().tensor(&Matching::identity(1)).top_cross(2);
        let mut w = single(NormalDiagram::undotted(w0));
        for _ in 0..k {
            let mut next = self.lin_top_dot(w.clone(), 1);
            let e = self.lin_map(self.lin_map(w.clone(), |d| self.cap(d, 1)), |d| single(cup_term(d, 1)));
            lin_add_scaled(&mut next, e, &-Scalar::one());
            lin_add_scaled(&mut next, self.lin_map(w, |d| self.cross(d, 1)), &Scalar::one());
            w = next;
        }
        let w = self.lin_map(w, |d| self.cross(d, 2));
        self.lin_map(w, |d| self.cap(d, 1))
    }

    /// Re-expresses an affine normal form in this configuration.
    pub(crate) fn convert_from_affine(&self, lin: &Lin) -> Lin {
        let mut acc = Lin::new();
        for (d, c) in lin {
            let mut p = poly::one();
            for (&k, &e) in &d.bubbles {
                p = poly::mul(&p, &poly::pow(&self.bubble_value(k), e));
            }
            let base = NormalDiagram::undotted(d.matching.clone());
            let l = self.lin_mul_poly(single(base), &p);
            lin_add_scaled(&mut acc, self.readd(l, &d.top, &d.bot), c);
        }
        acc
    }

    /// Tensor product of linear combinations: `f ⊗ g = (1 ⊗ β_g ⊗ 1) ∘ (f ⊗ ĝ)`,
    /// where the bubbles `β_g` of `g` are slid in from the right of `f`.
    pub(crate) fn tensor_lin(&self, f: &Lin, g: &Lin) -> Lin {
        let mut acc = Lin::new();
        for (tf, cf) in f {
            for (tg, cg) in g {
                let juxt = NormalDiagram {
                    matching: tf.matching.tensor(&tg.matching),
                    top: tf.top.iter().chain(&tg.top).copied().collect(),
                    bot: tf.bot.iter().chain(&tg.bot).copied().collect(),
                    bubbles: tf.bubbles.clone(),
                };
                let coef = cf * cg;
                let mut lin = single(juxt);
                let sf = tf.s();
                for (&k, &e) in &tg.bubbles {
                    if sf == 0 || k == 0 {
                        lin = self.lin_mul_poly(lin, &poly::pow(&self.bubble_value(k), e));
                        continue;
                    }
                    let z = super::tensor_identity(self.z_slide(sf, k), tg.s());
                    for _ in 0..e {
                        let mut next = Lin::new();
                        for (d, c) in &lin {
                            for (zg, zc) in &z {
                                lin_add_scaled(&mut next, self.compose_terms(zg, d), &(c * zc));
                            }
                        }
                        lin = next;
                    }
                }
                lin_add_scaled(&mut acc, lin, &coef);
            }
        }
        acc
    }
}
