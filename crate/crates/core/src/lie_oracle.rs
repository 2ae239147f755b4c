//! Exact matrix realization of the affine Brauer category on tensor powers
//! of the natural representation of `so_N` or `sp_N`.
//!
//! The base module is trivial, so `X_1` acts as the scalar `ε(N-ε)/2` and
//! `X_k` adds the Casimir tensor `Ω` between strand `k` and every strand to
//! its left. All arithmetic is exact.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};

use crate::diagram::{slice_matching, Gen, GeneratorWord, Matching};
use crate::engine::{Engine, Morphism};
use crate::scalar::{self, Scalar};
use crate::Error;

/// Largest matrix side the oracle will build.
pub const MAX_SIDE: usize = 1 << 17;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    So,
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::So => "so",
            Family::Sp => "sp",
        })
    }
}

/// Sparse exact matrix; zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {{", self.rows, self.cols)?;
        for ((r, c), v) in &self.entries {
            write!(f, " ({r},{c}):{}", scalar::format(v))?;
        }
        write!(f, " }}")
    }
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Scalar::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: &Scalar) {
        assert!(r < self.rows && c < self.cols, "entry out of range");
        let e = self.entries.entry((r, c)).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&(r, c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.rows, self.cols);
        }
        let entries = self.entries.iter().map(|(k, v)| (*k, v * c)).collect();
        ExactMatrix { rows: self.rows, cols: self.cols, entries }
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            out.add_entry(*r, *c, v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&-Scalar::one()))
    }

    fn same_shape(&self, other: &Self) -> Result<(), Error> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Arity(format!(
                "matrix shapes {}x{} and {}x{} differ",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    /// `self · other`.
    pub fn mul(&self, other: &Self) -> Result<Self, Error> {
        if self.cols != other.rows {
            return Err(Error::Arity(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: HashMap<usize, Vec<(usize, &Scalar)>> = HashMap::new();
        for ((r, c), v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut out = Self::zero(self.rows, other.cols);
        for ((r, k), a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    out.add_entry(*r, *c, &(a * *b));
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with the left factor most significant.
    pub fn kron(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.rows * other.rows, self.cols * other.cols);
        for ((r1, c1), a) in &self.entries {
            for ((r2, c2), b) in &other.entries {
                out.entries.insert((r1 * other.rows + r2, c1 * other.cols + c2), a * b);
            }
        }
        out
    }
}

/// Basis data and structure constants of `so_N` or `sp_N` acting on `V = C^N`.
///
/// Basis positions `0..N` carry the labels `1..n`, then `0` when `N` is odd,
/// then `-n..-1`.
#[derive(Clone, Debug)]
pub struct LieData {
    family: Family,
    dim: usize,
    eps: i64,
    labels: Vec<i64>,
    f: BTreeMap<(i64, i64), ExactMatrix>,
    omega: Vec<Vec<(u8, u8, Scalar)>>,
}

impl fmt::Display for LieData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.dim)
    }
}

fn sgn(i: i64) -> i64 {
    i.signum()
}

fn e_unit(n: usize, r: usize, c: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zero(n, n);
    m.add_entry(r, c, &Scalar::one());
    m
}

/// Builds the data for `(family, N)` and verifies skew-invariance of every
/// `F_{i,j}` against the bilinear form.
pub fn build_lie(family: Family, dim: usize) -> Result<LieData, Error> {
    if dim < 2 {
        return Err(Error::Invalid(format!("dimension {dim} is below 2")));
    }
    if family == Family::Sp && dim % 2 == 1 {
        return Err(Error::Invalid(format!("sp needs an even dimension, got {dim}")));
    }
    if dim > 64 {
        return Err(Error::TooLarge(format!("dimension {dim} exceeds 64")));
    }
    let n = (dim / 2) as i64;
    let mut labels: Vec<i64> = (1..=n).collect();
    if dim % 2 == 1 {
        labels.push(0);
    }
    labels.extend((1..=n).rev().map(|i| -i));
    let eps = if family == Family::So { 1 } else { -1 };
    let mut data = LieData { family, dim, eps, labels, f: BTreeMap::new(), omega: Vec::new() };
    for a in 0..dim {
        for b in 0..dim {
            let (i, j) = (data.labels[a], data.labels[b]);
            let mut m = e_unit(dim, a, b);
            let t = scalar::int(-data.theta(i, j));
            m.add_entry(data.pos(-j), data.pos(-i), &t);
            data.f.insert((i, j), m);
        }
    }
    data.check_skew()?;
    data.omega = data.build_omega();
    Ok(data)
}

impl LieData {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn epsilon(&self) -> i64 {
        self.eps
    }

    pub fn rank(&self) -> usize {
        self.dim / 2
    }

    /// Labels in basis order.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn theta(&self, i: i64, j: i64) -> i64 {
        match self.family {
            Family::So => 1,
            Family::Sp => sgn(i) * sgn(j),
        }
    }

    /// Basis position of the label `i`.
    pub fn pos(&self, i: i64) -> usize {
        let n = (self.dim / 2) as i64;
        if i > 0 {
            (i - 1) as usize
        } else if i == 0 {
            n as usize
        } else {
            (self.dim as i64 + i) as usize
        }
    }

    fn neg(&self, p: usize) -> usize {
        self.dim - 1 - p
    }

    /// `F_{i,j}` as an `N×N` matrix.
    pub fn f(&self, i: i64, j: i64) -> Result<&ExactMatrix, Error> {
        self.f.get(&(i, j)).ok_or_else(|| Error::Invalid(format!("no index pair ({i},{j}) for {self}")))
    }

    /// `(v_a, v_b)` on basis positions.
    pub fn form(&self, a: usize, b: usize) -> Scalar {
        if b != self.neg(a) {
            return Scalar::zero();
        }
        if self.labels[a] >= 0 {
            Scalar::one()
        } else {
            scalar::int(self.eps)
        }
    }

    /// Coefficient of `v_a ⊗ v_{-a}` in the image of the cup.
    fn dual_coeff(&self, a: usize) -> Scalar {
        if self.labels[a] > 0 {
            scalar::int(self.eps)
        } else {
            Scalar::one()
        }
    }

    /// The scalar `ε(N-ε)/2` by which `X_1` acts.
    pub fn x1_scalar(&self) -> Scalar {
        scalar::frac(self.eps * (self.dim as i64 - self.eps), 2)
    }

    fn check_skew(&self) -> Result<(), Error> {
        for ((i, j), m) in &self.f {
            for x in 0..self.dim {
                for y in 0..self.dim {
                    let mut total = Scalar::zero();
                    for z in 0..self.dim {
                        total += m.get(z, x) * self.form(z, y) + self.form(x, z) * m.get(z, y);
                    }
                    if !total.is_zero() {
                        return Err(Error::Invalid(format!("F_({i},{j}) is not skew for the form")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `Ω(v_x ⊗ v_y) = ½ Σ F_{i,j} v_x ⊗ F_{j,i} v_y`, tabulated by `x·N + y`.
    fn build_omega(&self) -> Vec<Vec<(u8, u8, Scalar)>> {
        let n = self.dim;
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let mut acc: BTreeMap<(u8, u8), Scalar> = BTreeMap::new();
                for &i in &self.labels {
                    for &j in &self.labels {
                        let a = &self.f[&(i, j)];
                        let b = &self.f[&(j, i)];
                        for x2 in 0..n {
                            let ax = a.get(x2, x);
                            if ax.is_zero() {
                                continue;
                            }
                            for y2 in 0..n {
                                let by = b.get(y2, y);
                                if by.is_zero() {
                                    continue;
                                }
                                *acc.entry((x2 as u8, y2 as u8)).or_insert_with(Scalar::zero) += &ax * &by;
                            }
                        }
                    }
                }
                let h = scalar::half();
                table.push(
                    acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((a, b), v)| (a, b, v * &h)).collect(),
                );
            }
        }
        table
    }

    /// The Casimir tensor on `V ⊗ V`.
    pub fn omega_matrix(&self) -> ExactMatrix {
        let n = self.dim;
        let mut m = ExactMatrix::zero(n * n, n * n);
        for x in 0..n {
            for y in 0..n {
                for (a, b, v) in &self.omega[x * n + y] {
                    m.add_entry(*a as usize * n + *b as usize, x * n + y, v);
                }
            }
        }
        m
    }

    /// Checks `[F_{i,j}, F_{k,l}]` against the closed commutator formula for
    /// every quadruple. For `so` the formula is also compared in the form
    /// without `θ` factors.
    pub fn check_commutators(&self) -> bool {
        let zero = ExactMatrix::zero(self.dim, self.dim);
        let d = |a: i64, b: i64| if a == b { Scalar::one() } else { Scalar::zero() };
        for &i in &self.labels {
            for &j in &self.labels {
                for &k in &self.labels {
                    for &l in &self.labels {
                        let a = &self.f[&(i, j)];
                        let b = &self.f[&(k, l)];
                        let lhs = a.mul(b).and_then(|ab| ab.sub(&b.mul(a)?)).expect("square");
                        let t = scalar::int(self.theta(k, l));
                        let rhs = zero
                            .add(&self.f[&(i, l)].scale(&d(k, j)))
                            .and_then(|r| r.sub(&self.f[&(k, j)].scale(&d(i, l))))
                            .and_then(|r| r.sub(&self.f[&(i, -k)].scale(&(d(j, -l) * &t))))
                            .and_then(|r| r.add(&self.f[&(-l, j)].scale(&(d(-k, i) * &t))))
                            .expect("square");
                        if lhs != rhs {
                            return false;
                        }
                        if self.family == Family::So {
                            let alt = zero
                                .add(&self.f[&(i, l)].scale(&d(k, j)))
                                .and_then(|r| r.sub(&self.f[&(k, j)].scale(&d(i, l))))
                                .and_then(|r| r.add(&self.f[&(-l, j)].scale(&d(k, -i))))
                                .and_then(|r| r.add(&self.f[&(k, -i)].scale(&d(l, -j))))
                                .expect("square");
                            if lhs != alt {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// The scalar of `Δ_k` on the trivial module: `εN(ε(N-ε)/2)^k`.
    pub fn delta_specialization(&self, k: u32) -> Scalar {
        scalar::int(self.eps * self.dim as i64) * scalar::pow(&self.x1_scalar(), k)
    }

    /// `Δ_k` evaluated as the closed loop `cap ∘ X_1^k ∘ cup` on `V^{⊗0}`.
    pub fn delta_by_loop(&self, k: u32) -> Result<Scalar, Error> {
        let mut gens = vec![Gen::Cup(1)];
        gens.extend(std::iter::repeat_n(Gen::Dot(1), k as usize));
        gens.push(Gen::Cap(1));
        let m = psi_word(&GeneratorWord::from_gens(0, &gens)?, self)?;
        Ok(m.get(0, 0))
    }
}

/// A vector in `V^{⊗w}` keyed by basis tuples.
type Vector = HashMap<Vec<u8>, Scalar>;

fn push(v: &mut Vector, key: Vec<u8>, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match v.entry(key) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

impl LieData {
    /// Applies one generator at the 1-based position `p` (already offset).
    fn apply(&self, v: Vector, gen: Gen) -> Vector {
        let mut out = Vector::with_capacity(v.len());
        match gen {
            Gen::Id => return v,
            Gen::Cup(p) => {
                for (t, c) in v {
                    for a in 0..self.dim {
                        let mut key = Vec::with_capacity(t.len() + 2);
                        key.extend_from_slice(&t[..p - 1]);
                        key.push(a as u8);
                        key.push(self.neg(a) as u8);
                        key.extend_from_slice(&t[p - 1..]);
                        push(&mut out, key, &c * self.dual_coeff(a));
                    }
                }
            }
            Gen::Cap(p) => {
                for (t, c) in v {
                    let f = self.form(t[p - 1] as usize, t[p] as usize);
                    if f.is_zero() {
                        continue;
                    }
                    let mut key = t[..p - 1].to_vec();
                    key.extend_from_slice(&t[p + 1..]);
                    push(&mut out, key, c * f);
                }
            }
            Gen::Cross(p) => {
                let e = scalar::int(self.eps);
                for (mut t, c) in v {
                    t.swap(p - 1, p);
                    push(&mut out, t, c * &e);
                }
            }
            Gen::Dot(p) => {
                let x1 = self.x1_scalar();
                let e = scalar::int(self.eps);
                let n = self.dim;
                for (t, c) in v {
                    push(&mut out, t.clone(), &c * &x1);
                    let ce = &c * &e;
                    let y = t[p - 1] as usize;
                    for a in 0..p - 1 {
                        for (x2, y2, w) in &self.omega[t[a] as usize * n + y] {
                            let mut key = t.clone();
                            key[a] = *x2;
                            key[p - 1] = *y2;
                            push(&mut out, key, &ce * w);
                        }
                    }
                }
            }
        }
        out
    }

    fn decode(&self, mut idx: usize, w: usize) -> Vec<u8> {
        let mut t = vec![0u8; w];
        for slot in t.iter_mut().rev() {
            *slot = (idx % self.dim) as u8;
            idx /= self.dim;
        }
        t
    }

    fn encode(&self, t: &[u8]) -> usize {
        t.iter().fold(0, |acc, &d| acc * self.dim + d as usize)
    }

    fn side(&self, w: usize) -> Result<usize, Error> {
        let mut s: usize = 1;
        for _ in 0..w {
            s = s.checked_mul(self.dim).filter(|&x| x <= MAX_SIDE).ok_or_else(|| {
                Error::TooLarge(format!("V^⊗{w} for {self} exceeds {MAX_SIDE} basis vectors"))
            })?;
        }
        Ok(s)
    }

    /// Matrix of a layer sequence acting on `V^{⊗source}`.
    fn eval_columns<F>(&self, source: usize, target: usize, mut column: F) -> Result<ExactMatrix, Error>
    where
        F: FnMut(Vec<u8>) -> Vector,
    {
        let cols = self.side(source)?;
        let rows = self.side(target)?;
        let mut m = ExactMatrix::zero(rows, cols);
        for c in 0..cols {
            for (t, v) in column(self.decode(c, source)) {
                m.add_entry(self.encode(&t), c, &v);
            }
        }
        Ok(m)
    }
}

fn check_width(word: &GeneratorWord, l: &LieData, offset: usize) -> Result<(), Error> {
    let mut w = word.source;
    for s in &word.slices {
        w = w.max(s.after);
    }
    l.side(w + offset).map(|_| ())
}

fn shift(gen: Gen, o: usize) -> Gen {
    match gen {
        Gen::Cup(p) => Gen::Cup(p + o),
        Gen::Cap(p) => Gen::Cap(p + o),
        Gen::Cross(p) => Gen::Cross(p + o),
        Gen::Dot(p) => Gen::Dot(p + o),
        Gen::Id => Gen::Id,
    }
}

/// Matrix of a single generator at position `p` on `V^{⊗r}`.
pub fn phi_matrix(gen: Gen, r: usize, l: &LieData) -> Result<ExactMatrix, Error> {
    let word = GeneratorWord::from_gens(r, &[gen])?;
    psi_word(&word, l)
}

/// `X_k` on `V^{⊗r}`.
pub fn x_matrix(k: usize, r: usize, l: &LieData) -> Result<ExactMatrix, Error> {
    if k == 0 || k > r {
        return Err(Error::Arity(format!("X_{k} on {r} strands")));
    }
    phi_matrix(Gen::Dot(k), r, l)
}

/// Evaluates a word layer by layer.
pub fn psi_word(word: &GeneratorWord, l: &LieData) -> Result<ExactMatrix, Error> {
    psi_word_offset(word, 0, l)
}

/// Evaluates `1_offset ⊗ word` on the trivial base module.
pub fn psi_word_offset(word: &GeneratorWord, offset: usize, l: &LieData) -> Result<ExactMatrix, Error> {
    word.validate()?;
    check_width(word, l, offset)?;
    l.eval_columns(word.source + offset, word.target() + offset, |t| {
        let mut v = Vector::new();
        v.insert(t, Scalar::one());
        for s in &word.slices {
            v = l.apply(v, shift(s.gen, offset));
        }
        v
    })
}

/// Matrix of a morphism from `V^{⊗m}` to `V^{⊗s}`.
pub fn psi(f: &Morphism, l: &LieData) -> Result<ExactMatrix, Error> {
    psi_offset(f, 0, l)
}

/// Matrix of `1_offset ⊗ f`. Dots of `f` interact with the `offset`
/// strands, so this is not `Id ⊗ psi(f)` in general.
pub fn psi_offset(f: &Morphism, offset: usize, l: &LieData) -> Result<ExactMatrix, Error> {
    let mut plans: Vec<(Vec<Gen>, Scalar)> = Vec::new();
    let mut slicings: HashMap<Matching, Vec<Gen>> = HashMap::new();
    let mut widest = f.source().max(f.target());
    for (d, c) in f.terms() {
        let mut gens = Vec::new();
        for (j, &e) in d.bot.iter().enumerate() {
            gens.extend(std::iter::repeat_n(Gen::Dot(j + 1), e as usize));
        }
        let word = slicings.entry(d.matching.clone()).or_insert_with(|| slice_matching(&d.matching).gens());
        let mut w = d.m();
        for g in word.iter() {
            w = match g {
                Gen::Cup(_) => w + 2,
                Gen::Cap(_) => w - 2,
                _ => w,
            };
            widest = widest.max(w);
        }
        gens.extend(word.iter().copied());
        for (p, &e) in d.top.iter().enumerate() {
            gens.extend(std::iter::repeat_n(Gen::Dot(p + 1), e as usize));
        }
        let mut coeff = c.clone();
        if offset == 0 {
            for (&k, &e) in &d.bubbles {
                coeff *= scalar::pow(&l.delta_specialization(k), e);
            }
        } else {
            for (&k, &e) in &d.bubbles {
                for _ in 0..e {
                    gens.push(Gen::Cup(1));
                    gens.extend(std::iter::repeat_n(Gen::Dot(1), k as usize));
                    gens.push(Gen::Cap(1));
                }
            }
            widest = widest.max(d.s() + 2);
        }
        plans.push((gens.into_iter().map(|g| shift(g, offset)).collect(), coeff));
    }
    l.side(widest + offset)?;
    l.eval_columns(f.source() + offset, f.target() + offset, |t| {
        let mut total = Vector::new();
        for (gens, c) in &plans {
            let mut v = Vector::new();
            v.insert(t.clone(), c.clone());
            for &g in gens {
                v = l.apply(v, g);
            }
            for (k, x) in v {
                push(&mut total, k, x);
            }
        }
        total
    })
}

/// Outcome of [`functor_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorReport {
    pub compose: bool,
    pub tensor: bool,
}

impl FunctorReport {
    pub fn ok(&self) -> bool {
        self.compose && self.tensor
    }
}

/// Compares `psi(g ∘ f)` with `psi(g)·psi(f)` and `psi(f ⊗ g)` with
/// `(1_{s_f} ⊗ g)·(f ⊗ 1_{m_g})`, the latter factor evaluated with `g`
/// sitting to the right of the `s_f` output strands of `f`.
pub fn functor_check(engine: &Engine, f: &Morphism, g: &Morphism, l: &LieData) -> Result<FunctorReport, Error> {
    if f.target() != g.source() {
        return Err(Error::Arity(format!(
            "cannot compose Hom({},{}) after Hom({},{})",
            g.source(),
            g.target(),
            f.source(),
            f.target()
        )));
    }
    let pf = psi(f, l)?;
    let pg = psi(g, l)?;
    let gf = engine.compose(g, f)?;
    let compose = psi(&gf, l)? == pg.mul(&pf)?;
    let fg = engine.tensor(f, g)?;
    let id_m = ExactMatrix::identity(l.side(g.source())?);
    let right = psi_offset(g, f.target(), l)?;
    let tensor = psi(&fg, l)? == right.mul(&pf.kron(&id_m))?;
    Ok(FunctorReport { compose, tensor })
}

/// One named relation and whether it holds as a matrix identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCheck {
    pub name: String,
    pub holds: bool,
}

fn w(source: usize, gens: &[Gen]) -> GeneratorWord {
    GeneratorWord::from_gens(source, gens).expect("fixed relation word")
}

/// Checks the defining relations of the affine Brauer category as matrix
/// identities, including their translates on up to three strands.
pub fn relation_matrices(l: &LieData) -> Result<Vec<RelationCheck>, Error> {
    use Gen::*;
    let mut out = Vec::new();
    let mut check = |name: &str, lhs: Vec<(i64, GeneratorWord)>, rhs: Vec<(i64, GeneratorWord)>| -> Result<(), Error> {
        let eval = |terms: &[(i64, GeneratorWord)]| -> Result<ExactMatrix, Error> {
            let mut acc: Option<ExactMatrix> = None;
            for (c, word) in terms {
                let m = psi_word(word, l)?.scale(&scalar::int(*c));
                acc = Some(match acc {
                    None => m,
                    Some(a) => a.add(&m)?,
                });
            }
            Ok(acc.expect("non-empty side"))
        };
        let holds = eval(&lhs)? == eval(&rhs)?;
        out.push(RelationCheck { name: name.to_string(), holds });
        Ok(())
    };
    for extra in 0..=1usize {
        let sfx = if extra == 0 { String::new() } else { format!(" ⊗ 1_{extra}") };
        let id2 = w(2 + extra, &[Id]);
        check(&format!("S∘S = 1{sfx}"), vec![(1, w(2 + extra, &[Cross(1), Cross(1)]))], vec![(1, id2.clone())])?;
        check(&format!("AS = A{sfx}"), vec![(1, w(2 + extra, &[Cross(1), Cap(1)]))], vec![(1, w(2 + extra, &[Cap(1)]))])?;
        check(&format!("SU = U{sfx}"), vec![(1, w(extra, &[Cup(1), Cross(1)]))], vec![(1, w(extra, &[Cup(1)]))])?;
        check(
            &format!("dot-crossing{sfx}"),
            vec![(1, w(2 + extra, &[Cross(1), Dot(1)])), (-1, w(2 + extra, &[Dot(2), Cross(1)]))],
            vec![(1, w(2 + extra, &[Cap(1), Cup(1)])), (-1, id2.clone())],
        )?;
        check(
            &format!("A(X⊗1) = -A(1⊗X){sfx}"),
            vec![(1, w(2 + extra, &[Dot(1), Cap(1)]))],
            vec![(-1, w(2 + extra, &[Dot(2), Cap(1)]))],
        )?;
        check(
            &format!("(X⊗1)U = -(1⊗X)U{sfx}"),
            vec![(1, w(extra, &[Cup(1), Dot(1)]))],
            vec![(-1, w(extra, &[Cup(1), Dot(2)]))],
        )?;
    }
    check("braid", vec![(1, w(3, &[Cross(1), Cross(2), Cross(1)]))], vec![(1, w(3, &[Cross(2), Cross(1), Cross(2)]))])?;
    check("zigzag left", vec![(1, w(1, &[Cup(1), Cap(2)]))], vec![(1, w(1, &[Id]))])?;
    check("zigzag right", vec![(1, w(1, &[Cup(2), Cap(1)]))], vec![(1, w(1, &[Id]))])?;
    check(
        "cap slide",
        vec![(1, w(3, &[Cross(2), Cap(1)]))],
        vec![(1, w(3, &[Cross(1), Cap(2)]))],
    )?;
    check(
        "cup slide",
        vec![(1, w(1, &[Cup(2), Cross(1)]))],
        vec![(1, w(1, &[Cup(1), Cross(2)]))],
    )?;
    check("bent dot", vec![(1, w(1, &[Cup(2), Dot(2), Cap(1)]))], vec![(-1, w(1, &[Dot(1)]))])?;
    check(
        "dots commute",
        vec![(1, w(3, &[Dot(1), Dot(3)]))],
        vec![(1, w(3, &[Dot(3), Dot(1)]))],
    )?;
    check(
        "dot-crossing 2",
        vec![(1, w(3, &[Cross(2), Dot(2)])), (-1, w(3, &[Dot(3), Cross(2)]))],
        vec![(1, w(3, &[Cap(2), Cup(2)])), (-1, w(3, &[Id]))],
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all() -> Vec<LieData> {
        [(Family::So, 3), (Family::So, 4), (Family::So, 5), (Family::Sp, 2), (Family::Sp, 4)]
            .into_iter()
            .map(|(f, n)| build_lie(f, n).unwrap())
            .collect()
    }

    #[test]
    fn construction_rules() {
        assert!(build_lie(Family::Sp, 3).is_err());
        assert!(build_lie(Family::So, 1).is_err());
        let so3 = build_lie(Family::So, 3).unwrap();
        assert_eq!(so3.labels(), &[1, 0, -1]);
        assert_eq!(so3.epsilon(), 1);
        let sp2 = build_lie(Family::Sp, 2).unwrap();
        assert_eq!(sp2.f(1, -1).unwrap(), &e_unit(2, 0, 1).scale(&scalar::int(2)));
        let so4 = build_lie(Family::So, 4).unwrap();
        for &i in so4.labels() {
            let m = so4.f(i, i).unwrap();
            assert_eq!(m.nnz(), 2);
            assert_eq!(m.get(so4.pos(i), so4.pos(i)), scalar::int(1));
            assert_eq!(m.get(so4.pos(-i), so4.pos(-i)), scalar::int(-1));
        }
    }

    #[test]
    fn commutators() {
        for l in all() {
            assert!(l.check_commutators(), "{l}");
        }
    }

    #[test]
    fn generator_matrices() {
        let so3 = build_lie(Family::So, 3).unwrap();
        let s = phi_matrix(Gen::Cross(1), 2, &so3).unwrap();
        assert_eq!(s.nnz(), 9);
        assert_eq!(s.get(1, 3), scalar::int(1));
        let sp2 = build_lie(Family::Sp, 2).unwrap();
        let s = phi_matrix(Gen::Cross(1), 2, &sp2).unwrap();
        assert_eq!(s.get(1, 2), scalar::int(-1));
        let loop0 = psi_word(&w(0, &[Gen::Cup(1), Gen::Cap(1)]), &sp2).unwrap();
        assert_eq!(loop0.get(0, 0), scalar::int(-2));
        assert_eq!(x_matrix(1, 1, &so3).unwrap(), ExactMatrix::identity(3));
        assert_eq!(x_matrix(1, 1, &sp2).unwrap(), ExactMatrix::identity(2).scale(&scalar::frac(-3, 2)));
        assert!(x_matrix(0, 1, &so3).is_err());
        let ss = psi_word(&w(2, &[Gen::Cross(1), Gen::Cross(1)]), &sp2).unwrap();
        assert_eq!(ss, ExactMatrix::identity(4));
    }

    #[test]
    fn relations_hold() {
        for l in all() {
            for r in relation_matrices(&l).unwrap() {
                assert!(r.holds, "{l}: {}", r.name);
            }
        }
    }

    #[test]
    fn casimir_relation() {
        let so3 = build_lie(Family::So, 3).unwrap();
        let x1 = x_matrix(1, 2, &so3).unwrap();
        let x2 = x_matrix(2, 2, &so3).unwrap();
        let s = phi_matrix(Gen::Cross(1), 2, &so3).unwrap();
        let ua = psi_word(&w(2, &[Gen::Cap(1), Gen::Cup(1)]), &so3).unwrap();
        let lhs = x1.mul(&s).unwrap().sub(&s.mul(&x2).unwrap()).unwrap();
        assert_eq!(lhs, ua.sub(&ExactMatrix::identity(9)).unwrap());
        let om = so3.omega_matrix();
        let expect = ExactMatrix::identity(9).scale(&so3.x1_scalar()).add(&om).unwrap();
        assert_eq!(x2, expect);
    }

    #[test]
    fn delta_values() {
        let so3 = build_lie(Family::So, 3).unwrap();
        let sp2 = build_lie(Family::Sp, 2).unwrap();
        assert_eq!(so3.delta_specialization(0), scalar::int(3));
        assert_eq!(so3.delta_specialization(7), scalar::int(3));
        assert_eq!(sp2.delta_specialization(0), scalar::int(-2));
        assert_eq!(sp2.delta_specialization(2), scalar::frac(-9, 2));
        for l in all() {
            for k in 0..5 {
                assert_eq!(l.delta_by_loop(k).unwrap(), l.delta_specialization(k), "{l} k={k}");
            }
        }
    }

    #[test]
    fn size_bound() {
        let so5 = build_lie(Family::So, 5).unwrap();
        let word = GeneratorWord::from_gens(8, &[Gen::Id]).unwrap();
        assert!(matches!(psi_word(&word, &so5), Err(Error::TooLarge(_))));
    }
}
