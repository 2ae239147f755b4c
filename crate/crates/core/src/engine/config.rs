//! Which quotient of the affine Brauer category is in force.

use std::fmt;

use crate::admissible::{self, OmegaSequence};
use crate::scalar::{self, Scalar};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// The Brauer category with formal `Δ_0`.
    B,
    /// The Brauer category with `Δ_0 = ω_0`.
    B0,
    /// The affine Brauer category with formal even bubbles.
    AB,
    /// Affine, with `Δ_0 = ω_0` and the other bubbles formal.
    AB0,
    /// Affine, with every `Δ_k = ω_k`.
    ABw,
    /// Cyclotomic quotient by `f(X)`, bubbles formal.
    CBf,
    /// Cyclotomic quotient by `f(X)` with `Δ_k = ω_k`.
    CBfw,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::B => "b",
            Kind::B0 => "b0",
            Kind::AB => "ab",
            Kind::AB0 => "ab0",
            Kind::ABw => "abw",
            Kind::CBf => "cbf",
            Kind::CBfw => "cbfw",
        }
    }
}

/// A category together with its parameters.
#[derive(Clone)]
pub struct CategoryConfig {
    kind: Kind,
    omega0: Option<Scalar>,
    omega: Option<OmegaSequence>,
    u: Vec<Scalar>,
    b: Vec<Scalar>,
    warnings: Vec<String>,
    label: String,
}

impl fmt::Debug for CategoryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl fmt::Display for CategoryConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

fn join(u: &[Scalar]) -> String {
    u.iter().map(scalar::format).collect::<Vec<_>>().join(",")
}

impl CategoryConfig {
    fn plain(kind: Kind, label: String) -> Self {
        CategoryConfig { kind, omega0: None, omega: None, u: vec![], b: vec![], warnings: vec![], label }
    }

    pub fn brauer() -> Self {
        Self::plain(Kind::B, "B".into())
    }

    pub fn brauer_omega0(omega0: Scalar) -> Self {
        let mut c = Self::plain(Kind::B0, format!("B(ω0={})", scalar::format(&omega0)));
        c.omega0 = Some(omega0);
        c
    }

    pub fn affine() -> Self {
        Self::plain(Kind::AB, "AB".into())
    }

    pub fn affine_omega0(omega0: Scalar) -> Self {
        let mut c = Self::plain(Kind::AB0, format!("AB(ω0={})", scalar::format(&omega0)));
        c.omega0 = Some(omega0);
        c
    }

    /// Every bubble specialized. The sequence must satisfy the odd-index
    /// recursion up to `depth`.
    pub fn affine_omega(omega: OmegaSequence, depth: usize) -> Result<Self, Error> {
        if !admissible::check_admissible(&omega, depth) {
            return Err(Error::Config(format!("ω fails the bubble recursion below depth {depth}")));
        }
        let head: Vec<Scalar> = (0..3).map(|k| omega.get(k)).collect();
        let mut c = Self::plain(Kind::ABw, format!("AB(ω=[{},...])", join(&head)));
        c.omega0 = Some(omega.get(0));
        c.omega = Some(omega);
        Ok(c)
    }

    /// The cyclotomic quotient by `f(X) = ∏ (X - u_i)` with formal bubbles.
    pub fn cyclotomic(u: Vec<Scalar>) -> Result<Self, Error> {
        if u.is_empty() {
            return Err(Error::Config("the cyclotomic quotient needs at least one root".into()));
        }
        let mut c = Self::plain(Kind::CBf, format!("CBf(u=[{}])", join(&u)));
        c.b = admissible::f_coefficients(&u);
        c.u = u;
        Ok(c)
    }

    /// The cyclotomic quotient with `Δ_k = ω_k`. Without an explicit `ω` the
    /// sequence determined by `u` is used. A sequence that is not
    /// `u`-admissible is accepted with a warning; normal forms then still
    /// span but need not be independent.
    pub fn cyclotomic_omega(u: Vec<Scalar>, omega: Option<OmegaSequence>) -> Result<Self, Error> {
        let mut c = Self::cyclotomic(u)?;
        let omega = omega.unwrap_or_else(|| admissible::omega_from_u(&c.u));
        let depth = admissible::default_depth(c.u.len());
        if !admissible::check_u_admissible_series(&c.u, &omega, depth) {
            c.warnings.push(format!("ω is not u-admissible (checked to order {depth}); only spanning is guaranteed"));
        }
        c.kind = Kind::CBfw;
        c.label = format!("CBf(u=[{}],ω)", join(&c.u));
        c.omega0 = Some(omega.get(0));
        c.omega = Some(omega);
        Ok(c)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Degree of `f` in cyclotomic configurations.
    pub fn a(&self) -> Option<usize> {
        match self.kind {
            Kind::CBf | Kind::CBfw => Some(self.u.len()),
            _ => None,
        }
    }

    pub fn allows_dots(&self) -> bool {
        !matches!(self.kind, Kind::B | Kind::B0)
    }

    /// Whether every bubble is a scalar.
    pub fn specialized(&self) -> bool {
        matches!(self.kind, Kind::ABw | Kind::CBfw)
    }

    /// Quotients by ideals that are closed under tensoring on both sides.
    pub fn is_monoidal(&self) -> bool {
        matches!(self.kind, Kind::B | Kind::B0 | Kind::AB | Kind::AB0)
    }

    /// The monoidal category this configuration is a quotient of.
    pub fn monoidal_lift(&self) -> CategoryConfig {
        if self.is_monoidal() {
            self.clone()
        } else {
            CategoryConfig::affine()
        }
    }

    pub fn u(&self) -> &[Scalar] {
        &self.u
    }

    pub fn b(&self) -> &[Scalar] {
        &self.b
    }

    pub fn omega0(&self) -> Option<&Scalar> {
        self.omega0.as_ref()
    }

    pub fn omega(&self) -> Option<&OmegaSequence> {
        self.omega.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `ω̂_k`: the scalar value of `Δ_k` when this configuration fixes it.
    pub fn bubble_scalar(&self, k: usize) -> Option<Scalar> {
        match self.kind {
            Kind::ABw | Kind::CBfw => self.omega.as_ref().map(|w| w.get(k)),
            Kind::B0 | Kind::AB0 if k == 0 => self.omega0.clone(),
            _ => None,
        }
    }
}

impl PartialEq for CategoryConfig {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.label == other.label && self.omega0 == other.omega0 && self.u == other.u
    }
}
