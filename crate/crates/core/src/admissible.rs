//! Parameter calculus for cyclotomic quotients: the coefficients of
//! `f(t) = ∏ (t - u_i)`, Schur q-functions of the roots, `ω` sequences and
//! their admissibility conditions, and root families coming from
//! orthogonal and symplectic Lie algebras.

use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::scalar::{frac, half, int, sign, Scalar};
use crate::Error;

/// Where an `ω` sequence came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    FromU,
    Explicit,
    FunctorSpecialized,
}

type Generator = dyn Fn(usize) -> Scalar + Send + Sync;

/// A lazily evaluated, memoized sequence `k ↦ ω_k`.
#[derive(Clone)]
pub struct OmegaSequence {
    provenance: Provenance,
    gen: Arc<Generator>,
    cache: Arc<Mutex<Vec<Scalar>>>,
}

impl fmt::Debug for OmegaSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head: Vec<String> = (0..4).map(|k| crate::scalar::format(&self.get(k))).collect();
        write!(f, "OmegaSequence({:?}, [{}, ...])", self.provenance, head.join(", "))
    }
}

impl OmegaSequence {
    pub fn from_fn(provenance: Provenance, f: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> Self {
        OmegaSequence { provenance, gen: Arc::new(f), cache: Arc::new(Mutex::new(Vec::new())) }
    }

    /// A finite prefix, zero beyond its end.
    pub fn explicit(values: Vec<Scalar>) -> Self {
        Self::from_fn(Provenance::Explicit, move |k| values.get(k).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn get(&self, k: usize) -> Scalar {
        {
            let cache = self.cache.lock().unwrap();
            if let Some(v) = cache.get(k) {
                return v.clone();
            }
        }
        let start = self.cache.lock().unwrap().len();
        let fresh: Vec<Scalar> = (start..=k).map(|i| (self.gen)(i)).collect();
        let mut cache = self.cache.lock().unwrap();
        if cache.len() == start {
            cache.extend(fresh);
        }
        cache[k].clone()
    }

    /// The sequence with `ω_k` replaced by `ω_k + delta`.
    pub fn perturbed(&self, k: usize, delta: Scalar) -> Self {
        let base = self.clone();
        Self::from_fn(Provenance::Explicit, move |i| if i == k { base.get(i) + &delta } else { base.get(i) })
    }
}

/// Coefficients of a polynomial, lowest degree first.
fn poly_from_roots(u: &[Scalar]) -> Vec<Scalar> {
    let mut c = vec![Scalar::one()];
    for r in u {
        let mut next = vec![Scalar::zero(); c.len() + 1];
        for (i, ci) in c.iter().enumerate() {
            next[i + 1] += ci;
            next[i] -= ci * r;
        }
        c = next;
    }
    c
}

fn poly_mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Scalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Truncated power-series product modulo `t^len`.
fn series_mul(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `b_0..b_{a-1}` with `f(t) = t^a + ∑ b_j t^j`.
pub fn f_coefficients(u: &[Scalar]) -> Vec<Scalar> {
    let mut c = poly_from_roots(u);
    c.pop();
    c
}

/// Elementary symmetric function `e_k(u)`.
pub fn elementary(u: &[Scalar], k: usize) -> Scalar {
    let c = poly_from_roots(u);
    let a = u.len();
    if k > a {
        return Scalar::zero();
    }
    sign(k as u32) * &c[a - k]
}

/// `q_0..q_{len-1}`, the coefficients of `∏ (1 + u_i t) / (1 - u_i t)`.
pub fn schur_q_series(u: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut acc = vec![Scalar::zero(); len];
    if len == 0 {
        return acc;
    }
    acc[0] = Scalar::one();
    for r in u {
        // (1 + r t) / (1 - r t) = 1 + 2 ∑_{k≥1} r^k t^k
        let mut factor = vec![Scalar::zero(); len];
        factor[0] = Scalar::one();
        let mut p = Scalar::one();
        for f in factor.iter_mut().skip(1) {
            p *= r;
            *f = int(2) * &p;
        }
        acc = series_mul(&acc, &factor, len);
    }
    acc
}

pub fn schur_q(u: &[Scalar], k: usize) -> Scalar {
    schur_q_series(u, k + 1).pop().unwrap()
}

/// `ω_k = q_{k+1}(u) - ½(-1)^a q_k(u) + ½δ_{k,0}`.
pub fn omega_from_u(u: &[Scalar]) -> OmegaSequence {
    let u = u.to_vec();
    let a = u.len() as u32;
    OmegaSequence::from_fn(Provenance::FromU, move |k| {
        let q = schur_q_series(&u, k + 2);
        let mut w = &q[k + 1] - half() * sign(a) * &q[k];
        if k == 0 {
            w += half();
        }
        w
    })
}

/// The odd-index recursion `2ω_k = -ω_{k-1} + ∑_{j=1}^k (-1)^{j-1} ω_{j-1} ω_{k-j}`
/// for odd `k ≤ depth`.
pub fn check_admissible(omega: &OmegaSequence, depth: usize) -> bool {
    (1..=depth).step_by(2).all(|k| {
        let mut rhs = -omega.get(k - 1);
        for j in 1..=k {
            rhs += sign(j as u32 - 1) * omega.get(j - 1) * omega.get(k - j);
        }
        int(2) * omega.get(k) == rhs
    })
}

/// Admissibility plus `ω_k = -∑_{j=1}^a b_{a-j} ω_{k-j}` for `a ≤ k ≤ depth`.
pub fn check_weakly_admissible(omega: &OmegaSequence, u: &[Scalar], depth: usize) -> bool {
    if !check_admissible(omega, depth) {
        return false;
    }
    let a = u.len();
    let b = f_coefficients(u);
    (a..=depth).all(|k| {
        let mut rhs = Scalar::zero();
        for j in 1..=a {
            rhs -= &b[a - j] * omega.get(k - j);
        }
        omega.get(k) == rhs
    })
}

/// Compares `(u - ½ + ∑_{i≥0} ω_i u^{-i}) ∏ (u - u_i)` with
/// `(u - ½(-1)^a) ∏ (u + u_i)` coefficientwise, using `ω_0..ω_order`.
///
/// Cross-multiplying avoids dividing series; every coefficient down to
/// `u^{a-order}` is determined by the supplied prefix.
pub fn check_u_admissible_series(u: &[Scalar], omega: &OmegaSequence, order: usize) -> bool {
    let a = u.len() as i64;
    let denom = poly_from_roots(u);
    let neg: Vec<Scalar> = u.iter().map(|x| -x).collect();
    let numer = poly_from_roots(&neg);
    // Right side as a polynomial in u, lowest degree first.
    let lead = vec![-half() * sign(a as u32), Scalar::one()];
    let rhs = poly_mul(&lead, &numer);
    // Left series: coefficient of u^e for e = 1, 0, -1, ..., -order.
    let left = |e: i64| -> Scalar {
        match e {
            1 => Scalar::one(),
            e if e <= 0 && (-e) as usize <= order => {
                let mut w = omega.get((-e) as usize);
                if e == 0 {
                    w -= half();
                }
                w
            }
            _ => Scalar::zero(),
        }
    };
    let lowest = a - order as i64;
    (lowest..=a + 1).all(|e| {
        let mut lhs = Scalar::zero();
        for (j, dj) in denom.iter().enumerate() {
            lhs += dj * left(e - j as i64);
        }
        let r = if e >= 0 { rhs.get(e as usize).cloned().unwrap_or_else(Scalar::zero) } else { Scalar::zero() };
        lhs == r
    })
}

/// Default validation depth `2a + 8`.
pub fn default_depth(a: usize) -> usize {
    2 * a + 8
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LieKind {
    SoEven,
    SoOdd,
    Sp,
}

impl LieKind {
    pub fn epsilon(self) -> i64 {
        match self {
            LieKind::Sp => -1,
            _ => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexSet {
    I1,
    I2,
}

/// All `u_j` of the family attached to a parabolic block structure `q` with
/// shifts `c`, before restricting to an index set.
fn all_lie_roots(kind: LieKind, q: &[u64], c: &[Scalar]) -> Vec<Scalar> {
    let k = q.len();
    let mut p = vec![0i64; k + 1];
    for j in 0..k {
        p[j + 1] = p[j] + q[j] as i64;
    }
    let n = p[k];
    match kind {
        LieKind::SoEven | LieKind::Sp => {
            let eps = kind.epsilon();
            let shift = frac(2 * n - eps, 2);
            let e = int(eps);
            let mut u = Vec::with_capacity(2 * k);
            for j in 1..=k {
                u.push(&e * (&c[j - 1] - int(p[j - 1]) + &shift));
            }
            for j in k + 1..=2 * k {
                let i = 2 * k + 1 - j;
                u.push(&e * (-&c[i - 1] + int(p[i]) - &shift));
            }
            u
        }
        LieKind::SoOdd => {
            let mut u = Vec::with_capacity(2 * k + 1);
            for j in 1..=k {
                u.push(&c[j - 1] - int(p[j - 1]) + int(n));
            }
            u.push(Scalar::zero());
            for j in k + 2..=2 * k + 1 {
                let i = 2 * k + 2 - j;
                u.push(-&c[i - 1] + int(p[i]) - int(n));
            }
            u
        }
    }
}

/// 1-based indices kept by an index set.
fn kept_indices(kind: LieKind, k: usize, which: IndexSet) -> Vec<usize> {
    let total = if kind == LieKind::SoOdd { 2 * k + 1 } else { 2 * k };
    let dropped: Vec<usize> = match (kind, which) {
        (_, IndexSet::I1) => vec![],
        (LieKind::SoOdd, IndexSet::I2) => vec![k + 1, k + 2],
        (_, IndexSet::I2) => vec![k + 1],
    };
    (1..=total).filter(|j| !dropped.contains(j)).collect()
}

/// The root list of the cyclotomic polynomial attached to `(kind, q, c, which)`.
pub fn lie_parameters(kind: LieKind, q: &[u64], c: &[Scalar], which: IndexSet) -> Result<Vec<Scalar>, Error> {
    if q.len() != c.len() {
        return Err(Error::Invalid(format!("q has {} blocks but c has {} entries", q.len(), c.len())));
    }
    if q.is_empty() || q.contains(&0) {
        return Err(Error::Invalid("q must be a non-empty list of positive integers".into()));
    }
    if which == IndexSet::I2 && !c[c.len() - 1].is_zero() {
        return Err(Error::Invalid("the last shift must vanish for the second index set".into()));
    }
    let all = all_lie_roots(kind, q, c);
    Ok(kept_indices(kind, q.len(), which).into_iter().map(|j| all[j - 1].clone()).collect())
}

/// The roots discarded by `which`, in index order.
pub fn dropped_lie_parameters(kind: LieKind, q: &[u64], c: &[Scalar], which: IndexSet) -> Result<Vec<Scalar>, Error> {
    lie_parameters(kind, q, c, which)?;
    let all = all_lie_roots(kind, q, c);
    let kept = kept_indices(kind, q.len(), which);
    Ok((1..=all.len()).filter(|j| !kept.contains(j)).map(|j| all[j - 1].clone()).collect())
}

/// Harish-Chandra check of the full root family.
///
/// With `ℓ_j = λ_j + ρ_j` for the weight `λ = ∑ c_i (ε_{p_{i-1}+1} + … + ε_{p_i})`,
/// `ℓ_{-j} = -ℓ_j` and `ℓ_0 = 0` in odd rank, the product
/// `∏_j (u + ℓ_j + ½)/(u + ℓ_j - ½)` must equal
/// `A(u) ∏_i (u + ε u_i)/(u - ε u_i)` with `A = (u+½)/(u-½)` for odd `N`
/// and `A = 1` otherwise. Both sides are compared as cross-multiplied
/// polynomials.
pub fn check_lie_weight_identity(kind: LieKind, q: &[u64], c: &[Scalar]) -> bool {
    let k = q.len();
    let n: u64 = q.iter().sum();
    let n = n as i64;
    let eps = int(kind.epsilon());
    let rho = |j: i64| -> Scalar {
        match kind {
            LieKind::SoEven => int(n - j),
            LieKind::SoOdd => int(n - j) + half(),
            LieKind::Sp => int(n - j + 1),
        }
    };
    let mut ell = Vec::new();
    let mut pos = 1i64;
    for i in 0..k {
        for _ in 0..q[i] {
            let l = &c[i] + rho(pos);
            ell.push(-&l);
            ell.push(l);
            pos += 1;
        }
    }
    if kind == LieKind::SoOdd {
        ell.push(Scalar::zero());
    }
    let lin = |shift: Scalar| vec![shift, Scalar::one()];
    let mut num_l = vec![Scalar::one()];
    let mut den_l = vec![Scalar::one()];
    for l in &ell {
        num_l = poly_mul(&num_l, &lin(l + half()));
        den_l = poly_mul(&den_l, &lin(l - half()));
    }
    let mut num_r = vec![Scalar::one()];
    let mut den_r = vec![Scalar::one()];
    if kind == LieKind::SoOdd {
        num_r = lin(half());
        den_r = lin(-half());
    }
    for r in all_lie_roots(kind, q, c) {
        num_r = poly_mul(&num_r, &lin(&eps * &r));
        den_r = poly_mul(&den_r, &lin(-(&eps * &r)));
    }
    poly_mul(&num_l, &den_r) == poly_mul(&num_r, &den_l)
}
